"""Traversal of the reflection groupoid: greedy longest words, positive root
systems read off their prefixes, object enumeration, and the classified
families' explicit reduced words.

A word f(1..n) drives the chain chi_0 -> chi_1 -> ... with
chi_t = f(t) |> chi_{t-1}, and accumulates the integer automorphism
w_t = w_{t-1} s_{f(t)} (the reflection taken in the current object; the
relevant Cartan row is preserved by the step, so either endpoint gives the
same matrix).  A word is reduced and longest exactly when every prefix sends
the next simple root to a nonnegative vector and the end condition
w(Pi) = -Pi holds; its prefixes then enumerate the positive roots
w_{t-1}(alpha_{f(t)}) without repetition.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bihom import BiHom, FamilySpec
from .cartan import CartanUndefinedError, reflect_bihom, reflection_matrix

IntMatrix = tuple[tuple[int, ...], ...]


class NotFiniteTypeError(RuntimeError):
    """The greedy walk exceeded its cutoff without closing the word."""

    def __init__(self, msg: str, partial_length: int):
        super().__init__(msg)
        self.partial_length = partial_length


def _identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if a == b else 0 for b in range(n)) for a in range(n))


def _matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    return tuple(tuple(sum(a[x][k] * b[k][y] for k in range(n))
                       for y in range(n)) for x in range(n))


def _column(m: IntMatrix, j: int) -> tuple[int, ...]:
    return tuple(m[x][j] for x in range(len(m)))


def _is_positive(v: tuple[int, ...]) -> bool:
    return all(x >= 0 for x in v) and any(x > 0 for x in v)


def _end_permutation(w: IntMatrix) -> tuple[int, ...] | None:
    """If w(Pi) = -Pi, the permutation pi with w(alpha_j) = -alpha_{pi(j)}."""
    n = len(w)
    pi = []
    for j in range(n):
        col = _column(w, j)
        neg = [x for x in range(n) if col[x] == -1]
        if len(neg) != 1 or any(col[x] != 0 for x in range(n) if x != neg[0]):
            return None
        pi.append(neg[0])
    return tuple(pi) if sorted(pi) == list(range(n)) else None


@dataclass(frozen=True)
class ReducedWord:
    """A verified word: its letters, the object chain, and the accumulated
    integer matrix (columns are the images of the simple roots)."""

    source: BiHom
    letters: tuple[int, ...]
    objects: tuple[BiHom, ...]
    matrix: IntMatrix

    @property
    def length(self) -> int:
        return len(self.letters)

    def end_permutation(self) -> tuple[int, ...] | None:
        return _end_permutation(self.matrix)


@dataclass(frozen=True)
class RootSystem:
    chi: BiHom
    positive_roots: tuple[tuple[int, ...], ...]
    word: ReducedWord

    @property
    def count(self) -> int:
        return len(self.positive_roots)


def default_max_len(chi: BiHom) -> int:
    return 10 * chi.rank * chi.rank


@lru_cache(maxsize=None)
def greedy_longest_word(chi: BiHom, max_len: int | None = None) -> ReducedWord:
    """Extend by the smallest index whose simple root is still sent to a
    nonnegative vector; stops exactly when w(Pi) = -Pi.

    Raises NotFiniteTypeError past the cutoff and CartanUndefinedError when a
    step's reflection does not exist.
    """
    n = chi.rank
    cutoff = max_len if max_len is not None else default_max_len(chi)
    w = _identity(n)
    letters: list[int] = []
    objects = [chi]
    cur = chi
    while True:
        pick = None
        for i in range(n):
            if _is_positive(_column(w, i)):
                pick = i
                break
        if pick is None:
            if _end_permutation(w) is None:
                raise RuntimeError(
                    "walk stalled without reaching w(Pi) = -Pi; "
                    "the input is outside the supported class")
            return ReducedWord(chi, tuple(letters), tuple(objects), w)
        if len(letters) >= cutoff:
            raise NotFiniteTypeError(
                f"no longest word within {cutoff} letters", len(letters))
        s = reflection_matrix(cur, pick)
        w = _matmul(w, s)
        cur = reflect_bihom(cur, pick)
        letters.append(pick)
        objects.append(cur)


def root_system(chi: BiHom, max_len: int | None = None) -> RootSystem:
    """Positive roots in word order: the prefix images w_{t-1}(alpha_{f(t)})."""
    word = greedy_longest_word(chi, max_len)
    n = chi.rank
    w = _identity(n)
    roots = []
    cur = chi
    for i in word.letters:
        roots.append(_column(w, i))
        w = _matmul(w, reflection_matrix(cur, i))
        cur = reflect_bihom(cur, i)
    return RootSystem(chi, tuple(roots), word)


def is_finite_type(chi: BiHom, max_len: int | None = None) -> bool:
    """Whether the greedy walk closes within the cutoff.

    False only reports failure to close within the bound; with the default
    generous cutoff this coincides with finite type for the classified
    inputs.
    """
    try:
        greedy_longest_word(chi, max_len)
        return True
    except (NotFiniteTypeError, CartanUndefinedError):
        return False


def enumerate_objects(chi: BiHom, max_objects: int = 4096) -> list[BiHom]:
    """Closure of the equivalence class of chi under all reflections,
    breadth-first; one canonically gauged representative per class."""
    start = chi.canonical_gauge()
    seen = {start.equiv_key(): start}
    queue = [start]
    while queue:
        cur = queue.pop(0)
        for i in range(chi.rank):
            nxt = reflect_bihom(cur, i).canonical_gauge()
            key = nxt.equiv_key()
            if key not in seen:
                if len(seen) >= max_objects:
                    raise NotFiniteTypeError(
                        f"more than {max_objects} objects", len(seen))
                seen[key] = nxt
                queue.append(nxt)
    return list(seen.values())


# -- the classified families' explicit words -----------------------------------

_LITERAL_WORDS = {
    6: (2, 3, 4, 2, 3, 4, 2, 3, 4, 1, 2, 3, 4, 1, 4, 3, 2, 1),
    7: (2, 3, 2, 3, 2, 3, 1, 2, 3, 1, 3, 2, 1),
    8: (1, 3, 2, 1, 3, 1, 2),
    9: (2, 1, 2, 1),
    10: (1, 2, 1, 4, 3, 4, 2, 1, 4, 3, 1, 2, 4, 2, 1),
}


def builtin_word(spec: FamilySpec) -> tuple[int, ...]:
    """The classical reduced word for families 2..10, as 0-based indices.

    Families 2, 3, 5 use the staircase decompositions of the longest element
    of the underlying classical Weyl group; family 4 uses the shortened
    variant whose tail folds through the diagram flip (its set-level end
    condition w(Pi) = -Pi still holds); families 6..10 are fixed tuples.
    """
    b, n, m = spec.family, spec.rank, spec.m
    if b in _LITERAL_WORDS:
        return tuple(x - 1 for x in _LITERAL_WORDS[b])
    if b == 2:
        w: list[int] = []
        for a in range(m, 0, -1):
            w += list(range(1, a + 1))
        for a in range(n, m + 1, -1):
            w += list(range(m + 2, a + 1))
        for k in range(0, m + 1):
            w += list(range(m + 1 - k, n - k + 1))
        return tuple(x - 1 for x in w)
    if b == 3:
        w = list(range(n - m + 1, n + 1)) * m
        block = list(range(1, n + 1)) + list(range(n - 1, n - m - 1, -1))
        w += block * (n - m)
        return tuple(x - 1 for x in w)
    if b == 4:
        w = list(range(2, n + 1)) * (n - 1)
        w += list(range(1, n)) + [n] + list(range(n - 2, 0, -1))
        return tuple(x - 1 for x in w)
    if b == 5:
        w = []
        for z in range(1, m + 1):
            w += list(range(n - m + 1, n - 1)) + [n - 1 if z % 2 else n]
        block = list(range(1, n)) + [n] + list(range(n - 1, n - m - 1, -1))
        w += block * (n - m)
        return tuple(x - 1 for x in w)
    raise ValueError(f"no built-in word for family {b}")


def expected_root_count(spec: FamilySpec) -> int | None:
    """|R+| for families 2..10 (family 4 runs one short of the naive N^2)."""
    b, n, m = spec.family, spec.rank, spec.m
    if b == 2:
        return n * (n + 1) // 2
    if b == 3:
        return n * n
    if b == 4:
        return n * n - 1
    if b == 5:
        return n * n - m
    if b in (6, 7, 8, 9, 10):
        return (18, 13, 7, 4, 15)[b - 6]
    return None


@dataclass(frozen=True)
class WordReport:
    """Outcome of checking a word against a braiding."""

    ok: bool
    length: int
    failure_position: int | None          # 1-based step that failed, if any
    reason: str
    diagonal: tuple  # chi_{t-1}(alpha_{f(t)}, alpha_{f(t)}) fingerprints
    roots: tuple[tuple[int, ...], ...]
    end_permutation: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "length": self.length,
            "failure_position": self.failure_position,
            "reason": self.reason,
            "diagonal_sequence": [m.to_text() for m in self.diagonal],
            "roots": [list(r) for r in self.roots],
            "end_permutation": (None if self.end_permutation is None
                                else [p + 1 for p in self.end_permutation]),
        }


def verify_word(chi: BiHom, letters, expect_end_permutation=None) -> WordReport:
    """Walk the word, checking each prefix lengthens (next simple root maps
    to a nonnegative vector) and the end condition w(Pi) = -Pi; records the
    diagonal fingerprint at every step."""
    n = chi.rank
    w = _identity(n)
    cur = chi
    diag = []
    roots = []
    for t, i in enumerate(letters, start=1):
        if not 0 <= i < n:
            return WordReport(False, len(letters), t, f"letter {i} out of range",
                              tuple(diag), tuple(roots), None)
        col = _column(w, i)
        if not _is_positive(col):
            return WordReport(False, len(letters), t,
                              f"prefix sends alpha_{i + 1} to {list(col)}",
                              tuple(diag), tuple(roots), None)
        diag.append(cur.diagonal(i))
        roots.append(col)
        try:
            s = reflection_matrix(cur, i)
        except CartanUndefinedError as exc:
            return WordReport(False, len(letters), t, str(exc),
                              tuple(diag), tuple(roots), None)
        w = _matmul(w, s)
        cur = reflect_bihom(cur, i)
    pi = _end_permutation(w)
    if pi is None:
        return WordReport(False, len(letters), None, "end condition w(Pi) = -Pi fails",
                          tuple(diag), tuple(roots), None)
    if expect_end_permutation is not None and tuple(expect_end_permutation) != pi:
        return WordReport(False, len(letters), None,
                          f"end permutation {pi} differs from expected",
                          tuple(diag), tuple(roots), pi)
    if len(set(roots)) != len(roots):
        return WordReport(False, len(letters), None, "repeated root among prefixes",
                          tuple(diag), tuple(roots), pi)
    return WordReport(True, len(letters), None, "ok", tuple(diag), tuple(roots), pi)
