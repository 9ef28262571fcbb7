"""The weight-level finite-dimensionality algorithm.

A weight enters only through its kappa-vector: the N scalars
lambda_i = Lambda(K_{alpha_i} L_{-alpha_i}).  For a vertex i the step bound

    h = smallest h >= 0 with (h+1)_{q_ii} = 0 or q_ii^{-h} lambda_i = 1

is the largest power of the lowering operator that survives; when it is
finite the weight reflects along i to

    lambda'_i = lambda_i^{-1} q_ii^{2h}
    lambda'_j = lambda_j lambda_i^{-c_ij} (q_ij q_ji q_ii^{-2 c_ij})^{-h}

obtained by commuting the reflected torus element through the h-th lowering
power.  Walking a longest word and counting consecutive finite bounds
decides finite-dimensionality: the module is finite-dimensional exactly when
the whole word is consumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bihom import BiHom
from .cartan import cartan_row, reflect_bihom
from .groupoid import greedy_longest_word
from .scalar import Monomial, pair_vanishing_index, qfact_max_nonzero

WeightVector = tuple[Monomial, ...]


class InfiniteReflectionError(ValueError):
    """Weight reflection requested at a vertex with an infinite step bound."""


def _step_bound(q_ii: Monomial, lam_i: Monomial) -> int | None:
    candidates = []
    cap = qfact_max_nonzero(q_ii)
    if cap is not None:
        candidates.append(cap)
    m = pair_vanishing_index(q_ii.inv(), lam_i)
    if m is not None:
        candidates.append(m)
    return min(candidates) if candidates else None


def h_value(chi: BiHom, lam: WeightVector, i: int) -> int | None:
    """The step bound h at vertex i, or None when it is infinite."""
    return _step_bound(chi.diagonal(i), lam[i])


def reflect_weight(chi: BiHom, lam: WeightVector, i: int) -> WeightVector:
    """The reflected kappa-vector; requires a finite step bound at i."""
    h = h_value(chi, lam, i)
    if h is None:
        raise InfiniteReflectionError(
            f"infinite step bound at vertex {i}; the weight does not reflect")
    row = cartan_row(chi, i)
    d = chi.diagonal(i)
    out = []
    for j in range(chi.rank):
        if j == i:
            out.append(lam[i].inv() * d ** (2 * h))
        else:
            base = chi.edge_product(i, j) * d ** (-2 * row[j])
            out.append(lam[j] * lam[i] ** (-row[j]) * base ** (-h))
    return tuple(out)


# -- chains along words ----------------------------------------------------------

@dataclass(frozen=True)
class _PlanStep:
    letter: int
    q_ii: Monomial
    c_row: tuple[int, ...]
    bases: tuple[Monomial, ...]  # per j != letter: (q_ij q_ji q_ii^{-2c})^{-1}; at j = letter: q_ii^2


@lru_cache(maxsize=None)
def _chain_plan(chi: BiHom, letters: tuple[int, ...]) -> tuple[_PlanStep, ...]:
    steps = []
    cur = chi
    for i in letters:
        row = cartan_row(cur, i)
        d = cur.diagonal(i)
        bases = []
        for j in range(cur.rank):
            if j == i:
                bases.append(d ** 2)
            else:
                bases.append((cur.edge_product(i, j) * d ** (-2 * row[j])).inv())
        steps.append(_PlanStep(i, d, row, tuple(bases)))
        cur = reflect_bihom(cur, i)
    return tuple(steps)


@dataclass(frozen=True)
class WeightChain:
    """Walk record: per-step bounds, the number of completed steps, and the
    kappa-vectors along the way (weights[t] is the state before step t+1)."""

    letters: tuple[int, ...]
    h_values: tuple[int, ...]
    completed: int
    weights: tuple[WeightVector, ...]

    @property
    def finished(self) -> bool:
        return self.completed == len(self.letters)

    @property
    def final_weight(self) -> WeightVector:
        return self.weights[-1]


def chain(chi: BiHom, lam: WeightVector, letters) -> WeightChain:
    """Reflect the weight along the word until an infinite bound stops it."""
    letters = tuple(letters)
    if len(lam) != chi.rank:
        raise ValueError("weight length differs from rank")
    plan = _chain_plan(chi, letters)
    weights = [tuple(lam)]
    hs = []
    cur = tuple(lam)
    for step in plan:
        i = step.letter
        h = _step_bound(step.q_ii, cur[i])
        if h is None:
            break
        hs.append(h)
        nxt = []
        for j in range(chi.rank):
            if j == i:
                nxt.append(cur[i].inv() * step.bases[i] ** h)
            else:
                nxt.append(cur[j] * cur[i] ** (-step.c_row[j]) * step.bases[j] ** h)
        cur = tuple(nxt)
        weights.append(cur)
    return WeightChain(letters, tuple(hs), len(hs), tuple(weights))


def is_finite_dimensional(chi: BiHom, lam: WeightVector,
                          max_len: int | None = None) -> bool:
    """Whether the irreducible highest-weight module with this kappa-vector
    is finite-dimensional: the chain must survive a full longest word."""
    word = greedy_longest_word(chi, max_len)
    return chain(chi, lam, word.letters).finished


def weight_from_json(doc, torsion: int) -> WeightVector:
    from .scalar import monomial_from_json
    return tuple(monomial_from_json(m, torsion) for m in doc)


def weight_to_json(lam: WeightVector) -> list:
    return [m.to_json() for m in lam]
