"""Closed-form membership tests for the finite-dimensionality sets of the ten
families, and the grid harness comparing them against the step-by-step
reflection algorithm.

For families 1, 2, 4 (and family 8 when q*r is a root of unity) membership
is simply dominance at the generic vertices: every such component must be a
nonnegative power of the corresponding diagonal entry.  The remaining
families add one closed-form condition expressed through a monomial function
g(lambda), a base value v, and a threshold: g(lambda) = v^z with z at least
the threshold, together with a short list of boundary cases below the
threshold.

Family 9's printed condition (g = lambda_1 lambda_2 against zeta q^{-1} with
threshold 2) is inconsistent with the reflection algorithm; the form used
here, validated against an independent Verma-quotient computation, is

    lambda in S  iff  lambda = (1, 1), or
                      lambda_2 = q^n and
                      lambda_1^2 lambda_2 q^2 zeta = (zeta q^{-1})^c, c >= 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .bihom import BiHom, FamilySpec, make_family
from .groupoid import builtin_word, greedy_longest_word
from .highestweight import WeightVector, chain, is_finite_dimensional
from .scalar import (Monomial, neg_one, one, q_power, r_power, solve_power)


def generic_vertices(chi: BiHom) -> tuple[int, ...]:
    """Vertices whose diagonal entry has infinite order."""
    return tuple(i for i in range(chi.rank)
                 if chi.diagonal(i).finite_order() is None)


def in_S_prime(chi: BiHom, lam: WeightVector) -> tuple[bool, dict[int, int]]:
    """Dominance at generic vertices: lambda_j = q_jj^{n_j} with n_j >= 0.

    Returns the verdict and the witness exponents for the vertices that
    admit one.
    """
    witnesses: dict[int, int] = {}
    ok = True
    for j in generic_vertices(chi):
        n = solve_power(chi.diagonal(j), lam[j])
        if n is None or n < 0:
            ok = False
        else:
            witnesses[j] = n
    return ok, witnesses


@dataclass(frozen=True)
class ClassificationConstants:
    g_exponents: tuple[int, ...]
    base_value: Monomial
    threshold: int


def classification_constants(spec: FamilySpec) -> ClassificationConstants | None:
    """The (g, v, n) triple for families 3, 5, 6, 7, 8, 10; None elsewhere.

    Family 9 is handled separately (see the module docstring).
    """
    b, n, m, k = spec.family, spec.rank, spec.m, spec.torsion
    if b == 3:
        exps = tuple(1 if j >= n - m - 1 else 0 for j in range(n))
        return ClassificationConstants(exps, neg_one(k) * q_power(k, -1), 2 * m)
    if b == 5:
        exps = tuple(2 if n - m - 1 <= j <= n - 3 else (1 if j >= n - 2 else 0)
                     for j in range(n))
        return ClassificationConstants(exps, q_power(k, -4), m)
    if b == 6:
        return ClassificationConstants((2, 3, 2, 1), q_power(k, -6), 4)
    if b == 7:
        return ClassificationConstants((1, 2, 1), neg_one(k) * q_power(k, -2), 6)
    if b == 8:
        v = (q_power(k, 1) * r_power(k, 1)).inv()
        if spec.r_subst is not None:
            v = v.substitute_r(*spec.r_subst)
        return ClassificationConstants((1, 2, 1), v, 2)
    if b == 10:
        return ClassificationConstants((1, 2, 3, 1), neg_one(k) * q_power(k, -1), 3)
    return None


def _g_value(consts: ClassificationConstants, lam: WeightVector) -> Monomial:
    acc = one(lam[0].torsion)
    for e, x in zip(consts.g_exponents, lam):
        if e:
            acc = acc * x ** e
    return acc


def _all_ones(lam: WeightVector) -> bool:
    return all(x.is_one() for x in lam)


def _in_boundary_cases(spec: FamilySpec, chi: BiHom, lam: WeightVector,
                       z: int | None) -> bool:
    """The family-specific lists below the threshold (the sets written out
    case by case in the classification)."""
    b, n, m, k = spec.family, spec.rank, spec.m, spec.torsion
    q = lambda e: q_power(k, e)
    unit = one(k)
    if b == 3:
        if z is None or z % 2 or not 0 <= z <= 2 * (m - 1):
            return False
        x = z // 2
        return all(lam[j].is_one() for j in range(n - m + x, n))
    if b == 5:
        if z is None:
            return False
        g5p = unit
        for j in range(n - m - 1, n - 1):
            g5p = g5p * lam[j]
        if 0 <= z <= m - 2:
            return (g5p == q(-2 * z)
                    and all(lam[j].is_one() for j in range(n - m + z, n)))
        if z == m - 1:
            return g5p == q(-2 * (m - 1)) and lam[n - 2] == lam[n - 1]
        return False
    if b == 6:
        if _all_ones(lam):
            return True
        if z == 2 and lam[1].is_one() and lam[3].is_one():
            return lam[0] == q(-6) * lam[2].inv()
        if z == 3:
            return (lam[0] == q(-12) * lam[2].inv() * lam[3].inv() ** 2
                    and lam[1] == q(2) * lam[3])
        return False
    if b == 7:
        if _all_ones(lam):
            return True
        return z == 4 and lam[1].is_one() and lam[0] == q(-8) * lam[2].inv()
    if b == 8:
        if _all_ones(lam):
            return True
        return z == 1 and (lam[1].is_one() or lam[1] == q(-1) * lam[0].inv())
    if b == 10:
        if _all_ones(lam):
            return True
        # z = 1 branch: the printed subscript 2 contradicts its own product
        # condition; the case analysis of the step pattern forces z = 1.
        if z == 1 and lam[1].is_one() and lam[2].is_one():
            return lam[0] * lam[3] == neg_one(k) * q(-1)
        if z == 2:
            return lam[2].is_one() or lam[2] == q(-1) * lam[1].inv()
        return False
    return False


def _family9_extra(chi: BiHom, lam: WeightVector) -> int | None:
    """The corrected power condition for family 9: solve
    lambda_1^2 lambda_2 q^2 zeta = (zeta q^{-1})^c with c >= 0."""
    zeta = chi.diagonal(0)
    q = chi.diagonal(1)
    target = lam[0] ** 2 * lam[1] * q ** 2 * zeta
    c = solve_power(zeta * q.inv(), target)
    if c is not None and c >= 0:
        return c
    return None


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    branch: str | None          # "S'", "S''", "S'''"
    z: int | None
    in_s_prime: bool
    witnesses: dict[int, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "branch": self.branch,
            "z": self.z,
            "in_s_prime": self.in_s_prime,
            "witnesses": {str(j + 1): n for j, n in sorted(self.witnesses.items())},
        }


def _uses_simple_branch(spec: FamilySpec, chi: BiHom) -> bool:
    if spec.family in (1, 2, 4):
        return True
    if spec.family == 8:
        qr = chi.diagonal(0) * chi.diagonal(2)
        return qr.finite_order() is not None
    return False


def classify(spec: FamilySpec, chi: BiHom, lam: WeightVector) -> MembershipReport:
    """Closed-form membership for the kappa-vector, with witnesses."""
    if len(lam) != chi.rank:
        raise ValueError("weight length differs from rank")
    sp, wit = in_S_prime(chi, lam)
    if _uses_simple_branch(spec, chi):
        return MembershipReport(sp, "S'" if sp else None, None, sp, wit)
    if not sp:
        return MembershipReport(False, None, None, False, wit)
    if spec.family == 9:
        if _all_ones(lam):
            return MembershipReport(True, "S''", None, True, wit)
        c = _family9_extra(chi, lam)
        if c is not None:
            return MembershipReport(True, "S'''", c, True, wit)
        return MembershipReport(False, None, None, True, wit)
    consts = classification_constants(spec)
    z = solve_power(consts.base_value, _g_value(consts, lam))
    if z is not None and z >= consts.threshold:
        return MembershipReport(True, "S'''", z, True, wit)
    if _in_boundary_cases(spec, chi, lam, z):
        return MembershipReport(True, "S''", z, True, wit)
    return MembershipReport(False, None, z, True, wit)


# -- the verification harness ------------------------------------------------------

@dataclass(frozen=True)
class Mismatch:
    lam: WeightVector
    closed_form: bool
    algorithm: bool
    branch: str | None

    def to_json(self) -> dict:
        return {
            "lambda": [m.to_text() for m in self.lam],
            "closed_form": self.closed_form,
            "algorithm": self.algorithm,
            "branch": self.branch,
        }


@dataclass(frozen=True)
class VerificationReport:
    spec: FamilySpec
    bound: int
    evaluated: int
    members: int
    mismatches: tuple[Mismatch, ...]
    branch_counts: dict[str, int]
    overlap_violations: int      # weights firing both the threshold and a boundary case
    step_pattern_failures: int   # family 10 case-table cross-check

    @property
    def ok(self) -> bool:
        return (not self.mismatches and not self.overlap_violations
                and not self.step_pattern_failures)

    def to_json(self) -> dict:
        return {
            "family": self.spec.to_json(),
            "bound": self.bound,
            "evaluated": self.evaluated,
            "members": self.members,
            "mismatch_count": len(self.mismatches),
            "mismatches": [m.to_json() for m in self.mismatches],
            "branch_counts": dict(sorted(self.branch_counts.items())),
            "overlap_violations": self.overlap_violations,
            "step_pattern_failures": self.step_pattern_failures,
            "ok": self.ok,
        }


def _nongeneric_values(spec: FamilySpec, chi: BiHom, bound: int,
                       compact: bool) -> list[Monomial]:
    """Sample values for a vertex without a dominance constraint: all torsion
    points, torsion-dressed powers of q (and of r for family 8), deep enough
    to reach every branch threshold."""
    k = spec.torsion
    values = [Monomial(k, a) for a in range(k)]
    consts = classification_constants(spec)
    if compact:
        depth = bound + 2
    else:
        depth = max(bound + 4, 3 * ((consts.threshold if consts else 2) + 3))
    if spec.family == 8 and spec.r_subst is None:
        lo = -(bound + 4)
        for sign in (0, k // 2):
            for e in range(lo, 3):
                for f in range(lo, 3):
                    if e or f:
                        values.append(Monomial(k, sign, e, f))
    else:
        for sign in (0, k // 2):
            for e in range(-depth, bound + 2):
                if e:
                    values.append(Monomial(k, sign, e, 0))
        if spec.family == 9:
            # torsion-dressed powers beyond the sign flips
            for a in (k // 3, 2 * k // 3):
                for e in range(-depth, bound + 2):
                    if e:
                        values.append(Monomial(k, a, e, 0))
    return values


def _directed_samples(spec: FamilySpec, chi: BiHom, bound: int) -> list[WeightVector]:
    """Members constructed branch by branch, plus one-step perturbations of
    each (exponent bumps and torsion flips) to probe the branch boundaries."""
    k = spec.torsion
    n = chi.rank
    unit = one(k)
    base: list[WeightVector] = [tuple(unit for _ in range(n))]
    consts = classification_constants(spec)
    gen = generic_vertices(chi)
    free = [j for j in range(n) if j not in gen]
    if consts is not None and len(free) == 1:
        j0 = free[0]
        e0 = consts.g_exponents[j0]
        for z in range(0, consts.threshold + 3):
            for picks in iproduct(range(0, bound + 1, 2), repeat=len(gen)):
                lam = [unit] * n
                rest = unit
                for j, p in zip(gen, picks):
                    lam[j] = chi.diagonal(j) ** p
                    if consts.g_exponents[j]:
                        rest = rest * lam[j] ** consts.g_exponents[j]
                target = consts.base_value ** z * rest.inv()
                # solve lam[j0]^e0 = target on exponents
                if (target.q % e0 or target.r % e0):
                    continue
                cand = Monomial(k, 0, target.q // e0, target.r // e0)
                for a in range(k):
                    t = Monomial(k, a) * cand
                    if t ** e0 == target:
                        lam[j0] = t
                        base.append(tuple(lam))
        # coupled boundary branches
        if spec.family == 8:
            for p in range(bound + 1):
                l0 = chi.diagonal(0) ** p
                for l2 in (unit, chi.diagonal(2) ** 1, chi.diagonal(2) ** 3):
                    base.append((l0, q_power(k, -1) * l0.inv(), l2))
        if spec.family == 10:
            for p1 in range(bound + 1):
                l1 = chi.diagonal(1) ** p1
                for p0 in range(0, bound + 1, 2):
                    for p3 in range(0, bound + 1, 2):
                        lam = [chi.diagonal(0) ** p0, l1,
                               q_power(k, -1) * l1.inv(), chi.diagonal(3) ** p3]
                        base.append(tuple(lam))
        if spec.family == 6:
            for p2 in range(bound + 1):
                for p3 in range(bound + 1):
                    l2 = chi.diagonal(2) ** p2
                    l3 = chi.diagonal(3) ** p3
                    base.append((q_power(k, -12) * l2.inv() * l3.inv() ** 2,
                                 q_power(k, 2) * l3, l2, l3))
    out = list(base)
    bumps = [q_power(k, 1), q_power(k, -1), neg_one(k)]
    for lam in base:
        for j in range(n):
            for b in bumps:
                out.append(tuple(x * b if jj == j else x
                                 for jj, x in enumerate(lam)))
    return out


def sample_weights(spec: FamilySpec, chi: BiHom, bound: int) -> list[WeightVector]:
    """The evaluation grid: dominance powers at generic vertices crossed with
    structured values elsewhere, plus the directed branch samples."""
    gen = generic_vertices(chi)
    free = [j for j in range(chi.rank) if j not in gen]
    compact = len(free) > 1
    axes: list[list[Monomial]] = []
    for j in range(chi.rank):
        if j in gen:
            axes.append([chi.diagonal(j) ** p for p in range(bound + 1)])
        else:
            axes.append(_nongeneric_values(spec, chi, bound, compact))
    grid = [tuple(vals) for vals in iproduct(*axes)]
    seen = set(grid)
    for lam in _directed_samples(spec, chi, bound):
        if lam not in seen:
            seen.add(lam)
            grid.append(lam)
    return grid


def _step_pattern_failures_10(spec: FamilySpec, chi: BiHom,
                              members: list[tuple[WeightVector, MembershipReport]]) -> int:
    """Family 10 carries an independent case table: the pattern of step
    bounds at positions 5..8 of the classified word is determined by the
    closed-form branch.  Returns the number of members violating it."""
    k = spec.torsion
    q = lambda e: q_power(k, e)
    word = builtin_word(spec)
    bad = 0
    for lam, rep in members:
        wc = chain(chi, lam, word)
        if not wc.finished:
            bad += 1
            continue
        nu = wc.h_values[4:8]
        prod = lam[0] * lam[1] * lam[2] ** 2 * lam[3]
        matches = []
        if _all_ones(lam):
            matches.append((0, 0, 0, 0))
        if rep.z == 1 and lam[1].is_one() and lam[2].is_one():
            matches.append((0, 1, 1, 0))
        if lam[2].is_one() and rep.z is not None and rep.z >= 2:
            matches.append((0, 1, 1, 1))
        if prod == q(-1) and rep.z is not None and rep.z >= 2:
            matches.append((1, 1, 1, 0))
        if (not lam[2].is_one() and prod != q(-1)
                and rep.z is not None and rep.z >= 3):
            matches.append((1, 1, 1, 1))
        if len(matches) != 1 or matches[0] != tuple(nu):
            bad += 1
    return bad


def evaluate_batch(spec: FamilySpec, lams: list[WeightVector]):
    """Per-weight (closed-form report, algorithmic verdict) triples; also the
    picklable entry point for worker processes."""
    chi = make_family(spec)
    greedy_longest_word(chi)  # build caches once
    out = []
    for lam in lams:
        rep = classify(spec, chi, lam)
        fd = is_finite_dimensional(chi, lam)
        out.append((lam, rep, fd))
    return out


def run_grid(spec: FamilySpec, bound: int = 5,
             extra_samples: tuple[WeightVector, ...] = (), jobs: int = 1):
    """Evaluate the whole sample grid, optionally across worker processes.
    Order of the result list is independent of the worker split."""
    chi = make_family(spec)
    samples = sample_weights(spec, chi, bound)
    samples.extend(extra_samples)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        chunks = [samples[i::jobs] for i in range(jobs)]
        parts = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(evaluate_batch, [spec] * jobs, chunks))
        merged = []
        for part in parts:
            merged.extend(part)
        merged.sort(key=lambda row: tuple((x.zeta, x.q, x.r) for x in row[0]))
        return merged
    return evaluate_batch(spec, samples)


def summarize_grid(spec: FamilySpec, bound: int, results) -> VerificationReport:
    chi = make_family(spec)
    consts = classification_constants(spec)
    mismatches = []
    members = 0
    branch_counts: dict[str, int] = {}
    overlap = 0
    member_reports = []
    for lam, rep, fd in results:
        if rep.member != fd:
            mismatches.append(Mismatch(lam, rep.member, fd, rep.branch))
        if rep.member:
            members += 1
            branch_counts[rep.branch] = branch_counts.get(rep.branch, 0) + 1
            member_reports.append((lam, rep))
            if (consts is not None and rep.z is not None
                    and rep.z >= consts.threshold
                    and _in_boundary_cases(spec, chi, lam, rep.z)):
                overlap += 1
    nu_failures = 0
    if spec.family == 10:
        nu_failures = _step_pattern_failures_10(spec, chi, member_reports)
    return VerificationReport(spec, bound, len(results), members,
                              tuple(mismatches), branch_counts, overlap,
                              nu_failures)


def verify_theorem(spec: FamilySpec, bound: int = 5,
                   extra_samples: tuple[WeightVector, ...] = (),
                   jobs: int = 1) -> VerificationReport:
    """Compare the closed forms against the reflection algorithm over the
    whole sample grid; any disagreement is reported, never patched."""
    results = run_grid(spec, bound, extra_samples, jobs)
    return summarize_grid(spec, bound, results)
