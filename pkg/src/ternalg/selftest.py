"""Acceptance checks, runnable in-process.

Each criterion function draws its own seeded data, evaluates one family of
checks at fixed tolerances, and returns a :class:`CriterionResult`.
``run_all`` executes the whole suite; the CLI ``selftest`` command and
``tests/test_acceptance.py`` are thin wrappers around it.

Two checks accept deliberate-fault hooks (a sign flip in the tau symbol, an
operand swap in the middle bracket) so the suite can prove it is able to
fail; criterion 13 exercises them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import core, decomp, qcyclic, rotation, ternary
from ._rng import PortableRng
from .core import Q, QBAR
from .ternary import ProductKind

_KINDS = (ProductKind.P1, ProductKind.P2, ProductKind.P3_DIAMOND,
          ProductKind.P4_BULLET)


@dataclass(frozen=True)
class Check:
    """One named check; ``passed`` is explicit because a few checks require
    the observed value to exceed the threshold rather than stay below it."""

    name: str
    residual: float
    tol: float
    passed: bool

    @staticmethod
    def below(name: str, residual: float, tol: float) -> "Check":
        return Check(name, float(residual), tol, float(residual) <= tol)

    @staticmethod
    def above(name: str, value: float, tol: float) -> "Check":
        return Check(name, float(value), tol, float(value) > tol)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    checks: tuple[Check, ...]
    details: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def worst(self) -> Check:
        return max(self.checks, key=lambda c: (not c.passed, c.residual / c.tol
                                               if c.tol > 0 else c.residual))


def _draw_cube(rng: PortableRng, dim: int) -> np.ndarray:
    data = np.fromiter((rng.complex_signed() for _ in range(dim**3)),
                       dtype=np.complex128, count=dim**3)
    return data.reshape(dim, dim, dim)


def _draw_coords(rng: PortableRng) -> np.ndarray:
    return np.array([rng.complex_signed() for _ in range(5)],
                    dtype=np.complex128)


def _shift(t: np.ndarray) -> np.ndarray:
    return np.einsum("jki->ijk", t)


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def criterion_1(seed: int = 0, trials: int = 200, dims: tuple[int, ...] = (2, 3, 4),
                swap_middle: bool = True) -> CriterionResult:
    """Generalized associativity for all four kinds, relative 1e-10."""
    tol = 1e-10
    checks = []
    for kind in _KINDS:
        for dim in dims:
            rng = PortableRng(seed + 101 * dim + 7)
            worst = 0.0
            for _ in range(trials):
                quint = [_draw_cube(rng, dim) for _ in range(5)]
                scale = float(np.prod([core.norm(x) for x in quint]))
                r = ternary.associativity_residual(kind, *quint,
                                                   _swap_middle=swap_middle)
                worst = max(worst, r / max(scale, 1e-30))
            checks.append(Check.below(f"assoc-{kind.name}-dim{dim}", worst, tol))
    return CriterionResult(1, "generalized-associativity", tuple(checks))


def criterion_2(seed: int = 0, triples_per_kind: int = 100) -> CriterionResult:
    """Fast factorized products match the naive index-sum oracle, 1e-12."""
    tol = 1e-12
    checks = []
    dims_cycle = (2, 3, 4)
    for kind in _KINDS:
        rng = PortableRng(seed + 211)
        worst = 0.0
        for t in range(triples_per_kind):
            dim = dims_cycle[t % 3]
            a, b, c = (_draw_cube(rng, dim) for _ in range(3))
            fast = ternary.ternary_product(kind, a, b, c)
            slow = ternary.ternary_product_naive(kind, a, b, c)
            worst = max(worst, float(np.abs(fast - slow).max()))
        checks.append(Check.below(f"oracle-{kind.name}", worst, tol))
    return CriterionResult(2, "product-vs-oracle", tuple(checks))


def criterion_3(seed: int = 0, dim: int = 3, trials: int = 20) -> CriterionResult:
    """Scheme survivors within the named free patterns are exactly P1..P4."""
    survey = ternary.enumerate_schemes(dim=dim, trials=trials, seed=seed + 300)
    named = survey.named_pattern_survivors()
    labels = sorted(r.label for r in named if r.label is not None)
    unlabeled_in_pattern = [r for r in named if r.label is None]
    checks = [
        Check("named-patterns-yield-P1-P2-P3-P4",
              float(len(unlabeled_in_pattern) + (4 - len(set(labels)))), 0.5,
              labels == ["P1", "P2", "P3", "P4"] and not unlabeled_in_pattern),
        Check.below("named-survivor-worst-residual",
                    max((r.max_residual for r in named), default=0.0),
                    survey.tolerance),
    ]
    details = [f"schemes evaluated: {survey.total_schemes}",
               f"survivors: {len(survey.survivors)}"]
    for r in survey.flagged_survivors():
        details.append(f"flagged survivor (outside the four): {r.scheme.encode()} "
                       f"worst={r.max_residual:.12g}")
    return CriterionResult(3, "scheme-enumeration", tuple(checks), tuple(details))


def criterion_4(seed: int = 0, n_random: int = 100) -> CriterionResult:
    """Weight decomposition: residuals, Gram ranks 1/9/10/7, equivariance."""
    tol = 1e-12
    tol_equi = 1e-10
    rng = PortableRng(seed + 400)

    inputs = []
    for m in range(27):
        e = np.zeros(27)
        e[m] = 1.0
        inputs.append(e.reshape(3, 3, 3).astype(np.complex128))
    inputs += [_draw_cube(rng, 3) for _ in range(n_random)]

    worst_res = 0.0
    worst_equi = 0.0
    flat_parts = [[] for _ in range(4)]
    for t_idx, x in enumerate(inputs):
        parts = decomp.weight_decompose(x)
        res = decomp.weight_residuals(x, parts)
        worst_res = max(worst_res, max(res.values()))
        for w, p in enumerate(parts.parts()):
            flat_parts[w].append(p.ravel())
        g = rotation.random_rotation(seed + 440 + t_idx)
        after = decomp.weight_decompose(rotation.rotate(g, x)).parts()
        scale = max(1.0, core.norm(x))
        for w, p in enumerate(parts.parts()):
            worst_equi = max(worst_equi, core.norm(
                after[w] - rotation.rotate(g, p)) / scale)

    ranks = []
    for w in range(4):
        mat = np.array(flat_parts[w][:27])
        gram = mat @ np.conj(mat).T
        ev = np.linalg.eigvalsh(gram)
        ranks.append(int(np.sum(ev > 1e-8 * max(ev.max(), 1.0))))

    checks = [
        Check.below("decomposition-residuals", worst_res, tol),
        Check.below("part-equivariance", worst_equi, tol_equi),
    ]
    for w, expect in enumerate((1, 9, 10, 7)):
        checks.append(Check(f"gram-rank-t{w}", float(abs(ranks[w] - expect)), 0.5,
                            ranks[w] == expect))
    return CriterionResult(4, "weight-decomposition", tuple(checks),
                           (f"gram ranks: {ranks}",))


def criterion_5(seed: int = 0, n_random: int = 100) -> CriterionResult:
    """Projector algebra of the cyclic shift, 1e-14."""
    tol = 1e-14
    rng = PortableRng(seed + 500)
    eigs = ("1", "q", "qbar")
    factors = {"1": 1.0, "q": Q, "qbar": QBAR}
    worst = {"idempotent": 0.0, "complete": 0.0, "annihilate": 0.0,
             "eigenrelation": 0.0}
    for _ in range(n_random):
        t = _draw_cube(rng, 3)
        proj = {e: decomp.xi_project(t, e) for e in eigs}
        worst["complete"] = max(worst["complete"], float(np.abs(
            proj["1"] + proj["q"] + proj["qbar"] - t).max()))
        for e in eigs:
            worst["idempotent"] = max(worst["idempotent"], float(np.abs(
                decomp.xi_project(proj[e], e) - proj[e]).max()))
            worst["eigenrelation"] = max(worst["eigenrelation"], float(np.abs(
                _shift(proj[e]) - factors[e] * proj[e]).max()))
            for other in eigs:
                if other != e:
                    worst["annihilate"] = max(worst["annihilate"], float(np.abs(
                        decomp.xi_project(proj[e], other)).max()))
    checks = [Check.below(f"xi-{name}", value, tol)
              for name, value in sorted(worst.items())]
    return CriterionResult(5, "xi-projector-algebra", tuple(checks))


def criterion_6(seed: int = 0, n_inputs: int = 20, n_rotations: int = 50) -> CriterionResult:
    """All 23 invariants, the metric, and the products respect rotations."""
    tol_inv = 1e-9
    tol_equi = 1e-10
    rng = PortableRng(seed + 600)
    rotations = [rotation.random_rotation(seed + 660 + r) for r in range(n_rotations)]

    worst_inv = 0.0
    worst_h = 0.0
    for _ in range(n_inputs):
        t = _draw_cube(rng, 3)
        u = _draw_cube(rng, 3)
        base = rotation.invariants(t).as_pairs()
        h_base = core.hermitian_inner(t, u)
        scale2 = max(1.0, core.norm(t) ** 2)
        scale_h = max(1.0, core.norm(t) * core.norm(u))
        for g in rotations:
            rotated = rotation.invariants(rotation.rotate(g, t)).as_pairs()
            worst_inv = max(worst_inv, max(
                abs(x - y) for (_, x), (_, y) in zip(base, rotated)) / scale2)
            worst_h = max(worst_h, abs(core.hermitian_inner(
                rotation.rotate(g, t), rotation.rotate(g, u)) - h_base) / scale_h)

    worst_equi = 0.0
    for k, kind in enumerate(_KINDS):
        for t in range(10):
            a, b, c = (_draw_cube(rng, 3) for _ in range(3))
            g = rotation.random_rotation(seed + 690 + 10 * k + t)
            scale = max(1.0, core.norm(a) * core.norm(b) * core.norm(c))
            lhs = ternary.ternary_product(kind, rotation.rotate(g, a),
                                          rotation.rotate(g, b),
                                          rotation.rotate(g, c))
            rhs = rotation.rotate(g, ternary.ternary_product(kind, a, b, c))
            worst_equi = max(worst_equi, core.norm(lhs - rhs) / scale)

    checks = [
        Check.below("invariants-under-rotation", worst_inv, tol_inv),
        Check.below("metric-under-rotation", worst_h, tol_inv),
        Check.below("product-equivariance", worst_equi, tol_equi),
    ]
    return CriterionResult(6, "rotation-invariance", tuple(checks))


def criterion_7(seed: int = 0, n_vectors: int = 100) -> CriterionResult:
    """Closed forms of the invariants on the q-cyclic space, 1e-12."""
    tol = 1e-12
    rng = PortableRng(seed + 700)
    worst = 0.0
    for _ in range(n_vectors):
        z = _draw_coords(rng)
        report = qcyclic.restricted_invariants_check(qcyclic.from_coords(z))
        worst = max(worst, report.max_residual)
    return CriterionResult(7, "restricted-invariants",
                           (Check.below("identity-residual", worst, tol),))


def criterion_8(seed: int = 0) -> CriterionResult:
    """The five matrix properties of the K-form."""
    k = qcyclic.k_matrix()
    sym = float(np.abs(k - k.T).max())
    unitary = float(np.abs(k @ np.conj(k).T - np.eye(5)).max())
    det = complex(np.linalg.det(k))
    sixth = float(np.abs(np.linalg.matrix_power(k, 6) - np.eye(5)).max())
    eig = np.sort_complex(np.linalg.eigvals(k))
    expected = np.sort_complex(np.array([1.0, 1.0, 1.0, Q, -Q]))
    checks = [
        Check("symmetric-exact", sym, 0.0, sym == 0.0),
        Check.below("unitary", unitary, 1e-14),
        Check.below("determinant-sixth-root", abs(det - core.EPS6), 1e-12),
        Check.below("sixth-power-identity", sixth, 1e-12),
        Check.below("eigenvalues", float(np.abs(eig - expected).max()), 1e-10),
    ]
    return CriterionResult(8, "k-matrix-properties", tuple(checks))


def criterion_9(seed: int = 0, pairs: int = 200, diag_pairs: int = 50,
                tau_override: np.ndarray | None = None) -> CriterionResult:
    """Closed form of the auxiliary matrix equals the direct trace form."""
    tol = 1e-12
    tol_diag = 1e-13
    rng = PortableRng(seed + 900)
    worst = 0.0
    for _ in range(pairs):
        u = _draw_coords(rng)
        v = _draw_coords(rng)
        direct = qcyclic.h_matrix_direct(qcyclic.from_coords(u),
                                         qcyclic.from_coords(v))
        closed = qcyclic.h_matrix_closed(u, v, _tau=tau_override)
        worst = max(worst, float(np.abs(direct - closed).max()))
    off = np.ones((3, 3)) - np.eye(3)
    worst_diag = 0.0
    for _ in range(diag_pairs):
        u = _draw_coords(rng)
        closed = qcyclic.h_matrix_closed(u, u, _tau=tau_override)
        direct = qcyclic.h_matrix_direct(qcyclic.from_coords(u),
                                         qcyclic.from_coords(u))
        worst_diag = max(worst_diag,
                         float(np.abs(closed * off).max()),
                         float(np.abs(direct * off).max()))
    checks = [
        Check.below("closed-vs-direct", worst, tol),
        Check.below("equal-arguments-off-diagonal", worst_diag, tol_diag),
    ]
    return CriterionResult(9, "h-matrix-cross-check", tuple(checks))


def criterion_10(seed: int = 0, n_pairs: int = 100) -> CriterionResult:
    """Right biunits: rescaled regular members act as identities."""
    tol_biunit = 1e-9
    tol_scaling = 1e-10
    rng = PortableRng(seed + 1000)
    diamond = ProductKind.P3_DIAMOND

    worst_biunit = 0.0
    for t in range(n_pairs):
        u_hm = qcyclic.random_member(seed + 1013 + t, regular=True)
        x = _draw_cube(rng, 3)
        u_hat = qcyclic.make_biunit(u_hm)
        r = core.norm(ternary.ternary_product(diamond, x, u_hat, u_hat) - x)
        worst_biunit = max(worst_biunit, r / max(core.norm(x), 1e-30))

    # scaling identity, including members where the construction is barred
    singular = [
        qcyclic.from_coords([0, 0, 0, 1, 0]),            # lone E4
        qcyclic.from_coords([0, 0, 0, 0, 1]),            # lone E5
        qcyclic.from_coords([1.0, 1.0j, 0, 0, 0]),       # K(z,z) = 0
    ]
    members = [qcyclic.random_member(seed + 1500 + t) for t in range(n_pairs)]
    worst_scaling = 0.0
    for t, u_hm in enumerate(members + singular):
        x = _draw_cube(rng, 3)
        i2 = qcyclic.i2_invariant(u_hm)
        lhs = ternary.ternary_product(diamond, x, u_hm, u_hm)
        r = core.norm(lhs - (Q * i2 / 3.0) * x)
        scale = max(core.norm(x) * core.norm(u_hm) ** 2, 1e-30)
        worst_scaling = max(worst_scaling, r / scale)

    checks = [
        Check.below("biunit-identity", worst_biunit, tol_biunit),
        Check.below("double-action-scaling", worst_scaling, tol_scaling),
    ]
    return CriterionResult(10, "right-biunit", tuple(checks))


def criterion_11(seed: int = 0, n_vectors: int = 100) -> CriterionResult:
    """Orthonormality and membership of the basis; coordinate round trip."""
    e = qcyclic.basis()
    gram = np.array([[core.hermitian_inner(e[i], e[j]) for j in range(5)]
                     for i in range(5)])
    gram_res = float(np.abs(gram - np.eye(5)).max())
    member = 0.0
    for t in e:
        res = qcyclic.membership_residuals(t)
        member = max(member, res["trace"], res["cyclic"])
    rng = PortableRng(seed + 1100)
    worst_rt = 0.0
    for _ in range(n_vectors):
        z = _draw_coords(rng)
        worst_rt = max(worst_rt, float(np.abs(
            qcyclic.to_coords(qcyclic.from_coords(z)) - z).max()))
    checks = [
        Check.below("basis-orthonormal", gram_res, 1e-15),
        Check.below("basis-membership", member, 1e-15),
        Check.below("coordinate-round-trip", worst_rt, 1e-14),
    ]
    return CriterionResult(11, "qcyclic-basis", tuple(checks))


def criterion_12(seed: int = 0, n_inputs: int = 100) -> CriterionResult:
    """Permutation-sum residual: zero on weights 0 and 2, large generically."""
    tol = 1e-13
    rng = PortableRng(seed + 1200)

    def perm_sum(t):
        return decomp.exclusion_residuals(t).perm_sum_residual

    worst_parts = 0.0
    min_generic = float("inf")
    for _ in range(n_inputs):
        t = _draw_cube(rng, 3)
        parts = decomp.weight_decompose(t)
        worst_parts = max(worst_parts, perm_sum(parts.t0), perm_sum(parts.t2))
        min_generic = min(min_generic, perm_sum(t / core.norm(t)))
    checks = [
        Check.below("weight-0-and-2-perm-sum", worst_parts, tol),
        Check.above("generic-unit-norm-perm-sum-min", min_generic, 0.1),
    ]
    return CriterionResult(12, "exclusion-residuals", tuple(checks))


def criterion_13(seed: int = 0) -> CriterionResult:
    """The suite can fail: injected faults must break their target checks."""
    flipped = -core.tau()
    mutated_h = criterion_9(seed, pairs=20, diag_pairs=5, tau_override=flipped)
    mutated_assoc = criterion_1(seed, trials=5, dims=(3,), swap_middle=False)
    n_broken = sum(1 for c in mutated_assoc.checks if not c.passed)
    checks = [
        Check("tau-sign-flip-breaks-h-cross-check",
              mutated_h.worst.residual, mutated_h.worst.tol,
              not mutated_h.passed),
        Check("middle-swap-breaks-associativity",
              float(n_broken), 0.5, n_broken >= 1),
    ]
    details = (
        f"mutated h-matrix worst residual: {mutated_h.worst.residual:.12g}",
        f"kinds broken by middle swap: {n_broken}/{len(mutated_assoc.checks)}",
    )
    return CriterionResult(13, "mutation-sensitivity", tuple(checks), details)


_CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
             criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
             criterion_11, criterion_12, criterion_13)


def run_all(seed: int = 0) -> list[CriterionResult]:
    """Run the full acceptance suite with deterministic seeded data."""
    return [fn(seed) for fn in _CRITERIA]
