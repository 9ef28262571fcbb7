"""Cartan integers of a braiding, the simple reflections they induce, and the
reflection of the braiding itself.

The off-diagonal Cartan integer is minus the largest m for which the product
(m)_{q_ii}! (m; q_ii, q_ij q_ji)! stays nonzero, i.e. minus the smallest m at
which either factor chain first vanishes; it is decided exactly on monomial
exponents, with no search cutoff.  The sentinel None stands for minus
infinity (the braiding is then outside the reflectable class at that entry).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .bihom import BiHom
from .scalar import Monomial, pair_vanishing_index, qfact_max_nonzero


class CartanUndefinedError(ValueError):
    """A reflection was requested along a row with an infinite Cartan entry."""


def cartan_entry(chi: BiHom, i: int, j: int) -> int | None:
    """c_ij: 2 on the diagonal, else -(first vanishing index), None if no
    factor ever vanishes."""
    if i == j:
        return 2
    d = chi.diagonal(i)
    candidates = []
    cap = qfact_max_nonzero(d)  # (m+1)_{q_ii} = 0 first at m = ord - 1
    if cap is not None:
        candidates.append(cap)
    m = pair_vanishing_index(d, chi.edge_product(i, j))
    if m is not None:
        candidates.append(m)
    if not candidates:
        return None
    return -min(candidates)


@lru_cache(maxsize=None)
def cartan_row(chi: BiHom, i: int) -> tuple[int | None, ...]:
    return tuple(cartan_entry(chi, i, j) for j in range(chi.rank))


def cartan_matrix(chi: BiHom) -> tuple[tuple[int | None, ...], ...]:
    return tuple(cartan_row(chi, i) for i in range(chi.rank))


def reflection_matrix(chi: BiHom, i: int) -> tuple[tuple[int, ...], ...]:
    """The integer matrix of s_i, columns = images s_i(alpha_j) = alpha_j - c_ij alpha_i."""
    row = cartan_row(chi, i)
    if any(c is None for c in row):
        bad = [j for j, c in enumerate(row) if c is None]
        raise CartanUndefinedError(
            f"c[{i}][{bad[0]}] is -infinity; vertex {i} cannot be reflected")
    n = chi.rank
    mat = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
    for j in range(n):
        mat[i][j] -= row[j]
    return tuple(tuple(r) for r in mat)


@lru_cache(maxsize=None)
def reflect_bihom(chi: BiHom, i: int) -> BiHom:
    """The pullback of chi along s_i: value at (j, k) is
    chi(s_i alpha_j, s_i alpha_k), expanded by bi-multiplicativity."""
    row = cartan_row(chi, i)
    if any(c is None for c in row):
        raise CartanUndefinedError(f"row {i} of the Cartan matrix is not finite")
    n = chi.rank
    e = chi.entries
    rows = []
    for j in range(n):
        out = []
        for k in range(n):
            v = e[j][k]
            v = v * e[j][i] ** (-row[k])
            v = v * e[i][k] ** (-row[j])
            v = v * e[i][i] ** (row[j] * row[k])
            out.append(v)
        rows.append(tuple(out))
    return BiHom(tuple(rows))


def height_bound(chi: BiHom, alpha: Sequence[int]) -> int | None:
    """Largest m with the factorial (m)_{chi(alpha,alpha)}! nonzero, or None
    when the chain never vanishes (value 1 or non-torsion)."""
    return qfact_max_nonzero(chi.pairing(alpha, alpha))
