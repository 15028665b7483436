"""Associative triple products of hypermatrices and the scheme search.

Four contraction patterns turn the space of order-3 hypermatrices into a
ternary algebra satisfying the three-way bracket identity

    (a.b.c).f.g  ==  a.(f.c.b).g  ==  a.b.(c.f.g)

(note the operand swap in the middle form).  ``enumerate_schemes`` searches
the full space of candidate contraction patterns and classifies the ones
that survive a numerical associativity filter.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from . import core
from ._backend import kernels
from ._rng import PortableRng


class ProductKind(enum.Enum):
    """The four associative triple products; values match the CLI names."""

    P1 = "1"
    P2 = "2"
    P3_DIAMOND = "diamond"
    P4_BULLET = "bullet"


_KERNELS = {
    ProductKind.P1: kernels.product_p1,
    ProductKind.P2: kernels.product_p2,
    ProductKind.P3_DIAMOND: kernels.product_p3,
    ProductKind.P4_BULLET: kernels.product_p4,
}


def _cube3(*ts):
    ts = [core._check_cube(t) for t in ts]
    core._check_same_dim(*ts)
    return [np.ascontiguousarray(t) for t in ts]


def ternary_product(kind: ProductKind, a: np.ndarray, b: np.ndarray,
                    c: np.ndarray) -> np.ndarray:
    """Evaluate one of the four triple products.

    Index forms (all sums over repeated indices):

    * P1:         out_ijk = a_ilm b_nlm c_njk
    * P2:         out_ijk = a_ilm b_nml c_njk
    * P3_DIAMOND: out_ijk = a_ijp b_rsp c_srk
    * P4_BULLET:  out_ijk = a_ijp b_rsp c_rsk

    Cost is O(n^4) per call: the two contracted factors collapse to an n x n
    matrix which then multiplies the remaining factor slice-wise.
    """
    a, b, c = _cube3(a, b, c)
    return _KERNELS[ProductKind(kind)](a, b, c)


def ternary_product_naive(kind: ProductKind, a: np.ndarray, b: np.ndarray,
                          c: np.ndarray) -> np.ndarray:
    """Direct index-sum evaluation of the same products.

    Deliberately written as bare loops over scalar entries, sharing no code
    with the fast kernels; this is the oracle the kernels are tested
    against.
    """
    a, b, c = _cube3(a, b, c)
    n = a.shape[0]
    out = np.zeros((n, n, n), dtype=np.complex128)
    kind = ProductKind(kind)
    rng = range(n)
    if kind is ProductKind.P1:
        for i, j, k in itertools.product(rng, rng, rng):
            s = 0j
            for l, m, t in itertools.product(rng, rng, rng):
                s += a[i, l, m] * b[t, l, m] * c[t, j, k]
            out[i, j, k] = s
    elif kind is ProductKind.P2:
        for i, j, k in itertools.product(rng, rng, rng):
            s = 0j
            for l, m, t in itertools.product(rng, rng, rng):
                s += a[i, l, m] * b[t, m, l] * c[t, j, k]
            out[i, j, k] = s
    elif kind is ProductKind.P3_DIAMOND:
        for i, j, k in itertools.product(rng, rng, rng):
            s = 0j
            for p, r, t in itertools.product(rng, rng, rng):
                s += a[i, j, p] * b[r, t, p] * c[t, r, k]
            out[i, j, k] = s
    else:
        for i, j, k in itertools.product(rng, rng, rng):
            s = 0j
            for p, r, t in itertools.product(rng, rng, rng):
                s += a[i, j, p] * b[r, t, p] * c[r, t, k]
            out[i, j, k] = s
    return out


def associativity_residual(kind: ProductKind, a, b, c, f, g, *,
                           _swap_middle: bool = True) -> float:
    """Worst deviation among the three bracketings of a.b.c.f.g.

    Returns max(|(abc)fg - a(fcb)g|, |(abc)fg - ab(cfg)|) in the Hermitian
    norm.  ``_swap_middle=False`` is a test-only hook that evaluates the
    (wrong) middle bracket a(bcf)g instead, used to confirm the check can
    fail.
    """
    kind = ProductKind(kind)
    prod = _KERNELS[kind]
    a, b, c, f, g = _cube3(a, b, c, f, g)
    left = prod(prod(a, b, c), f, g)
    if _swap_middle:
        middle = prod(a, prod(f, c, b), g)
    else:
        middle = prod(a, prod(b, c, f), g)
    right = prod(a, b, prod(c, f, g))
    return max(core.norm(left - middle), core.norm(left - right))


def biunit_residual(kind: ProductKind, e: np.ndarray, t: np.ndarray,
                    side: str = "right") -> float:
    """How far e is from acting as a one-sided unit on t.

    right: |t.e.e - t|, left: |e.e.t - t|.
    """
    e, t = _cube3(e, t)
    if side == "right":
        return core.norm(ternary_product(kind, t, e, e) - t)
    if side == "left":
        return core.norm(ternary_product(kind, e, e, t) - t)
    raise core.InputError(f"side must be 'right' or 'left', got {side!r}")


# ---------------------------------------------------------------------------
# Contraction-scheme enumeration
# ---------------------------------------------------------------------------

SLOT_NAMES = ("A1", "A2", "A3", "B1", "B2", "B3", "C1", "C2", "C3")
_SLOT_FACTOR = (0, 0, 0, 1, 1, 1, 2, 2, 2)
_FREE_LABELS = ("i", "j", "k")

#: The two free-slot patterns appearing in the four named products.
NAMED_FREE_PATTERNS = ((0, 7, 8), (0, 1, 8))


@dataclass(frozen=True)
class ContractionScheme:
    """One candidate triple product: which slots stay free, which pair up.

    ``free_slots`` lists three slot ids (0..8 = A1..C3) in ascending order;
    they carry the output labels i, j, k in that order.  ``pairs`` is a
    perfect matching of the remaining six slots into cross-factor pairs,
    each pair sorted, pairs sorted lexicographically.
    """

    free_slots: tuple[int, int, int]
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        slots = list(self.free_slots) + [s for p in self.pairs for s in p]
        if sorted(slots) != list(range(9)):
            raise core.InputError(
                f"scheme must partition the 9 slots, got free={self.free_slots} "
                f"pairs={self.pairs}")
        if tuple(sorted(self.free_slots)) != self.free_slots:
            raise core.InputError("free_slots must be in ascending slot order")
        for s1, s2 in self.pairs:
            if _SLOT_FACTOR[s1] == _SLOT_FACTOR[s2]:
                raise core.InputError(
                    f"pair ({SLOT_NAMES[s1]},{SLOT_NAMES[s2]}) joins two slots "
                    f"of the same factor")
        if self.pairs != tuple(sorted(tuple(sorted(p)) for p in self.pairs)):
            raise core.InputError("pairs must be sorted canonically")

    def spec(self) -> tuple[int, ...]:
        """Per-slot loop-variable ids for the contraction kernels."""
        assign = {}
        for label, slot in enumerate(self.free_slots):
            assign[slot] = label
        for bound, (s1, s2) in enumerate(self.pairs, start=3):
            assign[s1] = bound
            assign[s2] = bound
        return tuple(assign[s] for s in range(9))

    def encode(self) -> str:
        """Canonical display string, e.g.
        ``"A1=i A2=j | (A3,B3)(B1,C1)(B2,C2) | C3=k"``."""
        free = {slot: _FREE_LABELS[pos] for pos, slot in enumerate(self.free_slots)}
        head = " ".join(f"{SLOT_NAMES[s]}={free[s]}" for s in sorted(free) if s < 6)
        mid = "".join(f"({SLOT_NAMES[a]},{SLOT_NAMES[b]})" for a, b in self.pairs)
        tail = " ".join(f"{SLOT_NAMES[s]}={free[s]}" for s in sorted(free) if s >= 6)
        return f"{head} | {mid} | {tail}".strip()

    def product(self, a, b, c) -> np.ndarray:
        a, b, c = _cube3(a, b, c)
        return kernels.scheme_product(a, b, c, self.spec())


def _scheme(free, pairs) -> ContractionScheme:
    return ContractionScheme(tuple(sorted(free)),
                             tuple(sorted(tuple(sorted(p)) for p in pairs)))


#: Canonical schemes of the four named products.
CANONICAL_SCHEMES = {
    "P1": _scheme((0, 7, 8), [(1, 4), (2, 5), (3, 6)]),
    "P2": _scheme((0, 7, 8), [(1, 5), (2, 4), (3, 6)]),
    "P3": _scheme((0, 1, 8), [(2, 5), (4, 6), (3, 7)]),
    "P4": _scheme((0, 1, 8), [(2, 5), (3, 6), (4, 7)]),
}

KIND_TO_LABEL = {
    ProductKind.P1: "P1",
    ProductKind.P2: "P2",
    ProductKind.P3_DIAMOND: "P3",
    ProductKind.P4_BULLET: "P4",
}


def _cross_factor_matchings(slots: tuple[int, ...]):
    if not slots:
        yield ()
        return
    first, rest = slots[0], slots[1:]
    for idx, other in enumerate(rest):
        if _SLOT_FACTOR[first] == _SLOT_FACTOR[other]:
            continue
        for sub in _cross_factor_matchings(rest[:idx] + rest[idx + 1:]):
            yield ((first, other),) + sub


def all_schemes() -> list[ContractionScheme]:
    """Every free-slot choice combined with every cross-factor matching."""
    out = []
    for free in itertools.combinations(range(9), 3):
        remaining = tuple(s for s in range(9) if s not in free)
        for pairing in _cross_factor_matchings(remaining):
            out.append(_scheme(free, pairing))
    return out


@dataclass(frozen=True)
class SchemeResult:
    """One associativity survivor from the enumeration."""

    scheme: ContractionScheme
    label: str | None          # "P1".."P4" for the named products, else None
    in_named_pattern: bool     # free slots match one of the two named patterns
    max_residual: float

    @property
    def flagged(self) -> bool:
        return self.label is None


@dataclass(frozen=True)
class SchemeSurvey:
    """Full enumeration report."""

    dim: int
    trials: int
    seed: int
    tolerance: float
    total_schemes: int
    survivors: tuple[SchemeResult, ...]

    def named_pattern_survivors(self) -> tuple[SchemeResult, ...]:
        return tuple(r for r in self.survivors if r.in_named_pattern)

    def flagged_survivors(self) -> tuple[SchemeResult, ...]:
        return tuple(r for r in self.survivors if r.flagged)


def enumerate_schemes(dim: int, trials: int, seed: int,
                      tolerance: float = 1e-8) -> SchemeSurvey:
    """Filter all candidate schemes by the three-way associativity identity.

    Each scheme is evaluated on ``trials`` seeded random quintuples with
    entries in [-1, 1); a scheme survives only if the worst residual over
    every trial stays within ``tolerance`` (rejection short-circuits at the
    first failing trial).  Survivors are labeled P1..P4 when they coincide
    with a named product and flagged otherwise.
    """
    if dim < 2:
        raise core.InputError(f"dim must be >= 2, got {dim}")
    if trials < 1:
        raise core.InputError(f"trials must be positive, got {trials}")
    rng = PortableRng(seed)

    def draw():
        data = np.fromiter((rng.complex_signed() for _ in range(dim**3)),
                           dtype=np.complex128, count=dim**3)
        return data.reshape(dim, dim, dim)

    quintuples = [tuple(draw() for _ in range(5)) for _ in range(trials)]

    by_scheme_key = {(s.free_slots, s.pairs): lab
                     for lab, s in CANONICAL_SCHEMES.items()}
    schemes = all_schemes()
    survivors = []
    for scheme in schemes:
        spec = scheme.spec()
        worst = 0.0
        ok = True
        for a, b, c, f, g in quintuples:
            prod = kernels.scheme_product
            left = prod(prod(a, b, c, spec), f, g, spec)
            middle = prod(a, prod(f, c, b, spec), g, spec)
            right = prod(a, b, prod(c, f, g, spec), spec)
            r = max(float(np.abs(left - middle).max()),
                    float(np.abs(left - right).max()))
            worst = max(worst, r)
            if r > tolerance:
                ok = False
                break
        if ok:
            survivors.append(SchemeResult(
                scheme=scheme,
                label=by_scheme_key.get((scheme.free_slots, scheme.pairs)),
                in_named_pattern=scheme.free_slots in NAMED_FREE_PATTERNS,
                max_residual=worst,
            ))
    survivors.sort(key=lambda r: r.scheme.encode())
    return SchemeSurvey(dim=dim, trials=trials, seed=seed, tolerance=tolerance,
                        total_schemes=len(schemes), survivors=tuple(survivors))
