"""The 5-dimensional space of traceless q-cyclic hypermatrices.

"q-cyclic" throughout this package means T_ijk = q * T_jki with q the
primitive cube root of unity; equivalently, eigenvector of the cyclic index
shift with eigenvalue qbar.  (The shift eigenvalue is the conjugate of the
cyclic factor - fixed here once, never re-derived.)

The module provides the orthonormal basis E1..E5 of that space, the
coordinate isomorphism with C^5, the symmetric bilinear K-form whose
quadratic values equal the invariant T_ijk T_ikj, the auxiliary matrix that
factorizes the diamond product, and the right-biunit construction: any
member U with nonzero quadratic invariant rescales to a hypermatrix whose
double diamond action is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import core, decomp, rotation
from .core import Q, QBAR
from ._rng import PortableRng

_SQRT6 = np.sqrt(6.0)
_SQRT3 = np.sqrt(3.0)
_SQRT2 = np.sqrt(2.0)

#: Default membership tolerance (relative to the input norm).
MEMBERSHIP_TOL = 1e-10
#: Default regularity threshold, relative to |U|^2.
REGULARITY_THRESHOLD = 1e-9


@lru_cache(maxsize=1)
def basis() -> tuple[np.ndarray, ...]:
    """Orthonormal basis E1..E5 of the traceless q-cyclic space.

    Entries are 1-based positions; each element is traceless and satisfies
    E_ijk = q E_jki exactly (up to roundoff in q itself).
    """
    e = np.zeros((5, 3, 3, 3), dtype=np.complex128)
    # E1: (122)=1, (133)=-1, (212)=q, (221)=qbar, (313)=-q, (331)=-qbar, /sqrt6
    e[0, 0, 1, 1] = 1.0
    e[0, 0, 2, 2] = -1.0
    e[0, 1, 0, 1] = Q
    e[0, 1, 1, 0] = QBAR
    e[0, 2, 0, 2] = -Q
    e[0, 2, 2, 0] = -QBAR
    e[0] /= _SQRT6
    # E2: (112)=-qbar, (121)=-q, (211)=-1, (233)=1, (323)=q, (332)=qbar, /sqrt6
    e[1, 0, 0, 1] = -QBAR
    e[1, 0, 1, 0] = -Q
    e[1, 1, 0, 0] = -1.0
    e[1, 1, 2, 2] = 1.0
    e[1, 2, 1, 2] = Q
    e[1, 2, 2, 1] = QBAR
    e[1] /= _SQRT6
    # E3: (113)=qbar, (131)=q, (223)=-qbar, (232)=-q, (311)=1, (322)=-1, /sqrt6
    e[2, 0, 0, 2] = QBAR
    e[2, 0, 2, 0] = Q
    e[2, 1, 1, 2] = -QBAR
    e[2, 1, 2, 1] = -Q
    e[2, 2, 0, 0] = 1.0
    e[2, 2, 1, 1] = -1.0
    e[2] /= _SQRT6
    # E4: (123)=1, (231)=qbar, (312)=q, /sqrt3
    e[3, 0, 1, 2] = 1.0
    e[3, 1, 2, 0] = QBAR
    e[3, 2, 0, 1] = Q
    e[3] /= _SQRT3
    # E5: (132)=q, (213)=qbar, (321)=1, /sqrt3
    e[4, 0, 2, 1] = Q
    e[4, 1, 0, 2] = QBAR
    e[4, 2, 1, 0] = 1.0
    e[4] /= _SQRT3
    out = tuple(np.ascontiguousarray(e[i]) for i in range(5))
    for arr in out:
        arr.setflags(write=False)
    return out


def _check_coords(z) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    if z.shape != (5,):
        raise core.InputError(f"coordinates must have shape (5,), got {z.shape}")
    if not np.all(np.isfinite(z)):
        raise core.InputError("coordinates must be finite")
    return z


def membership_residuals(t: np.ndarray) -> dict[str, float]:
    """Distance of t from the traceless q-cyclic space, per condition."""
    t = core._check_cube(t)
    if t.shape[0] != 3:
        raise core.InputError(f"expected dim 3, got dim {t.shape[0]}")
    a, b, c = decomp.trace_vectors(t)
    shifted = np.einsum("jki->ijk", t)
    return {
        "trace": float(max(np.abs(a).max(), np.abs(b).max(), np.abs(c).max())),
        "cyclic": float(np.abs(t - Q * shifted).max()),
    }


def require_member(t: np.ndarray, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """Raise MembershipError unless t is traceless q-cyclic within tol."""
    res = membership_residuals(t)
    scale = max(1.0, core.norm(t))
    for name, value in res.items():
        if value > tol * scale:
            raise core.MembershipError(
                f"not a traceless q-cyclic hypermatrix: {name} residual "
                f"{value:.3e} exceeds tolerance {tol:.1e} (norm {scale:.3g})")
    return np.asarray(t, dtype=np.complex128)


def from_coords(z) -> np.ndarray:
    """Hypermatrix sum(z^A E_A) identified with the coordinate vector z."""
    z = _check_coords(z)
    e = basis()
    out = sum(z[i] * e[i] for i in range(5))
    return np.ascontiguousarray(out)


def to_coords(t: np.ndarray, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """Coordinates of a traceless q-cyclic hypermatrix in the basis E1..E5."""
    t = require_member(t, tol)
    e = basis()
    return np.array([core.hermitian_inner(t, e[i]) for i in range(5)],
                    dtype=np.complex128)


def k_form(u, v) -> complex:
    """Symmetric bilinear form K(u,v) = u1 v1 + u2 v2 + u3 v3 + q(u4 v5 + u5 v4).

    Its quadratic values reproduce the invariant I2: K(z,z) equals
    T_ijk T_ikj for T = from_coords(z).
    """
    u = _check_coords(u)
    v = _check_coords(v)
    return complex(u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
                   + Q * (u[3] * v[4] + u[4] * v[3]))


def k_matrix() -> np.ndarray:
    """Matrix of the K-form in the basis E1..E5.

    Symmetric, unitary, determinant exp(i*pi/3), sixth power the identity,
    eigenvalues {1, 1, 1, q, -q}.
    """
    k = np.zeros((5, 5), dtype=np.complex128)
    k[0, 0] = k[1, 1] = k[2, 2] = 1.0
    k[3, 4] = k[4, 3] = Q
    k.setflags(write=False)
    return k


def i2_invariant(t: np.ndarray) -> complex:
    """The quadratic invariant I2 = T_ijk T_ikj."""
    t = core._check_cube(t)
    return complex(np.einsum("ijk,ikj->", t, t))


@dataclass(frozen=True)
class RestrictedInvariantReport:
    """Residuals of the invariant identities on the q-cyclic space."""

    residuals: dict[str, float]
    max_residual: float


def restricted_invariants_check(t: np.ndarray,
                                tol: float = MEMBERSHIP_TOL) -> RestrictedInvariantReport:
    """Check the closed forms every invariant takes on q-cyclic members.

    With z the coordinates of t: I1 = 0, I1* = sum |z|^2, I2 = K(z,z),
    I2* = 0, I3 = q I2, I3* = 0, I4 = qbar I2, I4* = 0, I5 = 0, I5* = -I1*,
    and all trace-built invariants (I6..I11, starred and not) vanish.
    """
    z = to_coords(t, tol)
    inv = rotation.invariants(t)
    kzz = k_form(z, z)
    i1s = complex(np.sum(z * np.conj(z)))
    res = {
        "I1": abs(inv.I1),
        "I1*": abs(inv.I1s - i1s),
        "I2": abs(inv.I2 - kzz),
        "I2*": abs(inv.I2s),
        "I3": abs(inv.I3 - Q * kzz),
        "I3*": abs(inv.I3s),
        "I4": abs(inv.I4 - QBAR * kzz),
        "I4*": abs(inv.I4s),
        "I5": abs(inv.I5),
        "I5*": abs(inv.I5s + i1s),
    }
    for name, value in inv.as_pairs():
        if name.rstrip("*") in ("I6", "I7", "I8", "I9", "I10", "I11"):
            res[name] = abs(value)
    return RestrictedInvariantReport(residuals=res,
                                     max_residual=max(res.values()))


def h_matrix_direct(u_hm: np.ndarray, v_hm: np.ndarray) -> np.ndarray:
    """Auxiliary matrix H_pk = sum_rs U_rsp V_srk (trace of slice products).

    This is the two-factor core of the diamond product: for any t,
    (t <> U <> V)_ijk = t_ijp H_pk.  Defined for arbitrary dim-3
    hypermatrices.
    """
    u_hm = core._check_cube(u_hm)
    v_hm = core._check_cube(v_hm)
    core._check_same_dim(u_hm, v_hm)
    return np.einsum("rsp,srk->pk", u_hm, v_hm)


def h_matrix_closed(u, v, _tau: np.ndarray | None = None) -> np.ndarray:
    """Closed form of the auxiliary matrix from coordinates.

    Diagonal: (q/3) K(u,v).  Off-diagonal entries combine three 2x2
    determinants of coordinate pairs weighted by the tau symbol; the result
    is antisymmetric off the diagonal and vanishes there entirely for
    u = v.  Agrees entrywise with :func:`h_matrix_direct` applied to
    ``from_coords(u)``, ``from_coords(v)``.

    ``_tau`` is a test-only hook replacing the built-in tau symbol.
    """
    u = _check_coords(u)
    v = _check_coords(v)
    tau = core.tau() if _tau is None else np.asarray(_tau, dtype=np.complex128)
    tau_c = np.conj(tau)
    h = np.zeros((3, 3), dtype=np.complex128)
    diag = (Q / 3.0) * k_form(u, v)
    for p in range(3):
        h[p, p] = diag

    def det2(x1, x2, y1, y2):
        return x1 * y2 - x2 * y1

    for p in range(3):
        for k in range(3):
            if p == k:
                continue
            val = (Q / 6.0) * det2(u[k], u[p], v[k], v[p])
            for r in range(3):
                if tau[p, k, r] != 0:
                    val += tau[p, k, r] / (3.0 * _SQRT2) * det2(u[r], u[3], v[r], v[3])
                if tau_c[p, k, r] != 0:
                    val += tau_c[p, k, r] / (3.0 * _SQRT2) * det2(u[r], u[4], v[r], v[4])
            h[p, k] = val
    return h


def regularity(t: np.ndarray) -> tuple[complex, float]:
    """(I2 value, |I2| relative to |t|^2); the relative value decides
    whether the biunit construction applies."""
    i2 = i2_invariant(t)
    nrm2 = core.norm(t) ** 2
    return i2, (abs(i2) / nrm2 if nrm2 > 0 else 0.0)


def make_biunit(u_hm: np.ndarray, tol: float = MEMBERSHIP_TOL,
                threshold: float = REGULARITY_THRESHOLD) -> np.ndarray:
    """Rescale a traceless q-cyclic hypermatrix into a right biunit.

    Returns sqrt(3 / (q I2(U))) * U using the principal square root; the
    result satisfies t <> result <> result == t for every hypermatrix t
    under the diamond product.  Raises MembershipError for inputs outside
    the space and RegularityError when |I2| falls below
    ``threshold * |U|^2`` (either square-root branch would work, since the
    result enters the product twice; the principal branch is chosen for
    determinism).
    """
    u_hm = require_member(u_hm, tol)
    i2, rel = regularity(u_hm)
    if rel <= threshold:
        raise core.RegularityError(
            f"not I2-regular: |I2| = {abs(i2):.3e} is below "
            f"{threshold:.1e} * |U|^2 = {threshold * core.norm(u_hm)**2:.3e}")
    factor = core.principal_sqrt(3.0 / (Q * i2))
    return factor * u_hm


def random_coords(seed: int) -> np.ndarray:
    """Seeded coordinate vector with re/im parts uniform on [-1, 1)."""
    rng = PortableRng(seed)
    return np.array([rng.complex_signed() for _ in range(5)],
                    dtype=np.complex128)


def random_member(seed: int, regular: bool = False,
                  threshold: float = 0.05) -> np.ndarray:
    """Seeded traceless q-cyclic hypermatrix.

    With ``regular=True``, coordinate draws are rejected (moving to the
    next derived seed) until |K(z,z)| >= threshold * |z|^2, so the result
    supports the biunit construction comfortably.
    """
    attempt = seed
    while True:
        z = random_coords(attempt)
        if not regular:
            return from_coords(z)
        kzz = abs(k_form(z, z))
        if kzz >= threshold * float(np.sum(np.abs(z) ** 2)):
            return from_coords(z)
        attempt += 7_777_777
