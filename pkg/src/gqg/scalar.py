"""Exact arithmetic in the multiplicative group generated by a root of unity
and the free parameters q, r.

Every scalar handled by this package is a monomial ``zeta_K^a * q^e * r^f``
where ``zeta_K`` is a fixed primitive K-th root of unity and q, r are
multiplicatively independent of each other and of all roots of unity (unless
an explicit substitution for r is applied at construction time).  Under that
assumption equality, finite order, and the vanishing of the q-numbers

    (m)_t   = 1 + t + ... + t^{m-1}
    (m; t1, t2) = 1 - t1^{m-1} t2

are all decidable by integer arithmetic on exponents, which is what this
module implements.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class TorsionMismatchError(ValueError):
    """Two monomials from different torsion-order contexts were combined."""


@dataclass(frozen=True, slots=True)
class Monomial:
    """zeta_K^zeta * q^q * r^r, with the torsion order K carried along.

    The zeta exponent is normalised mod K; q and r exponents are arbitrary
    integers.  Values are immutable and hashable.
    """

    torsion: int
    zeta: int = 0
    q: int = 0
    r: int = 0

    def __post_init__(self) -> None:
        if self.torsion < 1:
            raise ValueError(f"torsion order must be >= 1, got {self.torsion}")
        object.__setattr__(self, "zeta", self.zeta % self.torsion)

    # -- group operations --------------------------------------------------

    def __mul__(self, other: "Monomial") -> "Monomial":
        if self.torsion != other.torsion:
            raise TorsionMismatchError(
                f"torsion orders differ: {self.torsion} vs {other.torsion}")
        return Monomial(self.torsion, self.zeta + other.zeta,
                        self.q + other.q, self.r + other.r)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(self.torsion, self.zeta * n, self.q * n, self.r * n)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inv()

    def inv(self) -> "Monomial":
        return Monomial(self.torsion, -self.zeta, -self.q, -self.r)

    # -- predicates ---------------------------------------------------------

    def is_one(self) -> bool:
        return self.zeta == 0 and self.q == 0 and self.r == 0

    def is_torsion(self) -> bool:
        """True when the monomial is a root of unity (no free part)."""
        return self.q == 0 and self.r == 0

    def finite_order(self) -> int | None:
        """The exact multiplicative order, or None for infinite order.

        A nonzero q or r exponent forces infinite order (the generic
        parameters are not roots of unity); otherwise the order is
        K / gcd(K, zeta).
        """
        if not self.is_torsion():
            return None
        return self.torsion // gcd(self.torsion, self.zeta)

    # -- substitution hook ----------------------------------------------------

    def substitute_r(self, zeta_exp: int, q_exp: int) -> "Monomial":
        """Replace r by zeta_K^zeta_exp * q^q_exp, folding the r exponent in."""
        return Monomial(self.torsion,
                        self.zeta + self.r * zeta_exp,
                        self.q + self.r * q_exp, 0)

    # -- text and JSON forms --------------------------------------------------

    def to_text(self) -> str:
        """Canonical text form, e.g. "q^-2", "-q r^-1", "z^2 q", "1".

        When K is even the factor zeta^{K/2} = -1 is rendered as a leading
        minus sign; remaining torsion appears as "z^a".
        """
        z = self.zeta
        sign = ""
        if self.torsion % 2 == 0 and z >= self.torsion // 2:
            sign = "-"
            z -= self.torsion // 2
        parts = []
        if z:
            parts.append(f"z^{z}")
        for sym, e in (("q", self.q), ("r", self.r)):
            if e == 1:
                parts.append(sym)
            elif e:
                parts.append(f"{sym}^{e}")
        if not parts:
            return sign + "1"
        return sign + " ".join(parts)

    def to_json(self) -> dict:
        return {"zeta": self.zeta, "q": self.q, "r": self.r}

    def __str__(self) -> str:
        return self.to_text()


# -- constructors -------------------------------------------------------------

def one(torsion: int) -> Monomial:
    return Monomial(torsion)


def neg_one(torsion: int) -> Monomial:
    if torsion % 2:
        raise ValueError(f"-1 needs an even torsion order, got {torsion}")
    return Monomial(torsion, torsion // 2)


def q_power(torsion: int, e: int = 1) -> Monomial:
    return Monomial(torsion, 0, e, 0)


def r_power(torsion: int, f: int = 1) -> Monomial:
    return Monomial(torsion, 0, 0, f)


def primitive_root(torsion: int, order: int) -> Monomial:
    """The canonical element of order `order` inside <zeta_K>."""
    if order < 1 or torsion % order:
        raise ValueError(f"order {order} does not divide torsion order {torsion}")
    return Monomial(torsion, torsion // order)


def monomial_from_json(obj: dict, torsion: int) -> Monomial:
    return Monomial(torsion, int(obj.get("zeta", 0)),
                    int(obj.get("q", 0)), int(obj.get("r", 0)))


def parse_monomial(text: str, torsion: int) -> Monomial:
    """Parse the text form produced by Monomial.to_text (also accepts '*')."""
    s = text.strip().replace("*", " ")
    m = one(torsion)
    if s.startswith("-"):
        m = m * neg_one(torsion)
        s = s[1:]
    for tok in s.split():
        if tok == "1":
            continue
        if "^" in tok:
            sym, _, exp = tok.partition("^")
            e = int(exp)
        else:
            sym, e = tok, 1
        if sym in ("z", "zeta"):
            m = m * Monomial(torsion, e)
        elif sym == "q":
            m = m * q_power(torsion, e)
        elif sym == "r":
            m = m * r_power(torsion, f=e)
        else:
            raise ValueError(f"cannot parse monomial token {tok!r} in {text!r}")
    return m


# -- q-numbers ---------------------------------------------------------------

def qnum_is_zero(m: int, t: Monomial) -> bool:
    """Whether (m)_t = 1 + t + ... + t^{m-1} vanishes.

    The empty sum (m=0) is zero; for m >= 1 the geometric sum vanishes
    exactly when t != 1 and t^m = 1.
    """
    if m < 0:
        raise ValueError("q-number index must be nonnegative")
    if m == 0:
        return True
    return (not t.is_one()) and (t ** m).is_one()


def qfact_is_zero(m: int, t: Monomial) -> bool:
    """Whether the factorial (m)_t! = (1)_t (2)_t ... (m)_t vanishes."""
    if m < 0:
        raise ValueError("factorial index must be nonnegative")
    d = t.finite_order()
    return d is not None and d > 1 and d <= m


def qfact_max_nonzero(t: Monomial) -> int | None:
    """Largest m with (m)_t! != 0, or None when no factorial vanishes.

    This is ord(t) - 1 for a torsion t != 1 and infinite otherwise.
    """
    d = t.finite_order()
    if d is None or d == 1:
        return None
    return d - 1


def pairnum_is_zero(m: int, t1: Monomial, t2: Monomial) -> bool:
    """Whether (m; t1, t2) = 1 - t1^{m-1} t2 vanishes.  Requires m >= 1."""
    if m < 1:
        raise ValueError("pair number index must be >= 1")
    return ((t1 ** (m - 1)) * t2).is_one()


# -- exact exponent solving ----------------------------------------------------

def pair_vanishing_index(t: Monomial, e: Monomial) -> int | None:
    """Smallest m >= 0 with t^m * e = 1, or None when no such m exists.

    Solved exactly on exponents: a free (q or r) exponent of t pins m by a
    linear equation; a pure-torsion t reduces to a congruence mod K.
    """
    if t.torsion != e.torsion:
        raise TorsionMismatchError("mixed torsion orders")
    k = t.torsion
    if t.q == 0 and t.r == 0:
        if e.q or e.r:
            return None
        g = gcd(t.zeta, k)
        if (-e.zeta) % g:
            return None
        # minimal nonnegative solution of t.zeta * m = -e.zeta (mod K)
        step = t.zeta // g
        mod = k // g
        target = (-e.zeta // g) % mod
        # step is invertible mod `mod`
        m = (target * pow(step, -1, mod)) % mod if mod > 1 else 0
        return m
    if t.q != 0:
        if (-e.q) % t.q:
            return None
        m = -e.q // t.q
    else:
        if (-e.r) % t.r:
            return None
        m = -e.r // t.r
    if m < 0:
        return None
    if t.q * m + e.q or t.r * m + e.r or (t.zeta * m + e.zeta) % k:
        return None
    return m


def solve_power(base: Monomial, value: Monomial) -> int | None:
    """An integer n with base^n = value, or None.

    Unique when base has a free part; for a pure-torsion base the minimal
    nonnegative solution is returned.
    """
    if base.torsion != value.torsion:
        raise TorsionMismatchError("mixed torsion orders")
    if base.is_torsion():
        if not value.is_torsion():
            return None
        return pair_vanishing_index(base, value.inv())
    n = pair_vanishing_index(base, value.inv())
    if n is not None:
        return n
    # negative exponents: solve with the inverse base
    n = pair_vanishing_index(base.inv(), value.inv())
    return -n if n is not None else None
