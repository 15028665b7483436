"""Cyclic-shift projectors and the four-part weight decomposition.

Every dim-3 hypermatrix splits uniquely into four mutually orthogonal,
rotation-invariant pieces:

* weight 0 - multiples of the totally antisymmetric symbol (dim 1),
* weight 1 - the Kronecker-delta form d_ij A_k + d_ik B_j + d_jk C_i (dim 9),
* weight 2 - traceless with vanishing cyclic sum (dim 10),
* weight 3 - traceless totally symmetric (dim 7).

The weight-2 part further splits into two 5-dimensional eigenspaces of the
cyclic index shift, extracted by the ``xi_project`` projectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import core
from .core import Q, QBAR

_EIGS = ("1", "q", "qbar")

#: Default threshold for membership checks and classification.
DEFAULT_CLASS_TOL = 1e-10


def substitute(t: np.ndarray) -> np.ndarray:
    """Cyclic index shift: out_ijk = T_jki.  Applying it three times is the
    identity, exactly (entries are only moved, never combined)."""
    t = _dim3(t)
    return np.einsum("jki->ijk", t)


def _dim3(t: np.ndarray) -> np.ndarray:
    t = core._check_cube(t)
    if t.shape[0] != 3:
        raise core.InputError(f"expected dim 3, got dim {t.shape[0]}")
    return t


def xi_project(t: np.ndarray, eig: Literal["1", "q", "qbar"]) -> np.ndarray:
    """Project onto one eigenspace of the cyclic shift.

    The shift L satisfies L^3 = Id, so its eigenvalues are 1, q, qbar and

        xi_1    = (Id + L + L^2) / 3
        xi_q    = (Id + qbar L + q L^2) / 3
        xi_qbar = (Id + q L + qbar L^2) / 3

    are the three spectral projectors (idempotent, mutually annihilating,
    summing to the identity).
    """
    t = _dim3(t)
    l1 = np.einsum("jki->ijk", t)
    l2 = np.einsum("jki->ijk", l1)
    if eig == "1":
        return (t + l1 + l2) / 3.0
    if eig == "q":
        return (t + QBAR * l1 + Q * l2) / 3.0
    if eig == "qbar":
        return (t + Q * l1 + QBAR * l2) / 3.0
    raise core.InputError(f"eig must be one of {_EIGS}, got {eig!r}")


def trace_vectors(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three pairwise contractions a_k = T_iik, b_j = T_iji, c_i = T_ijj."""
    t = _dim3(t)
    return (np.einsum("iik->k", t), np.einsum("iji->j", t),
            np.einsum("ijj->i", t))


def delta_form(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Weight-1 hypermatrix d_ij a_k + d_ik b_j + d_jk c_i."""
    d = np.eye(3)
    return (np.einsum("ij,k->ijk", d, a) + np.einsum("ik,j->ijk", d, b)
            + np.einsum("jk,i->ijk", d, c))


@dataclass(frozen=True)
class WeightParts:
    """Weight components; ``t0 + t1 + t2 + t3`` reconstructs the input."""

    t0: np.ndarray
    t1: np.ndarray
    t2: np.ndarray
    t3: np.ndarray

    def parts(self) -> tuple[np.ndarray, ...]:
        return (self.t0, self.t1, self.t2, self.t3)


def weight_decompose(t: np.ndarray) -> WeightParts:
    """Split a hypermatrix into its four weight components.

    The weight-1 part is fixed first by matching the three trace vectors:
    the delta form has traces (3A+B+C, A+3B+C, A+B+3C), a linear system
    with matrix 2I + J whose inverse is (I - J/5)/2.  What remains is
    traceless and splits by the cyclic-shift projector: the invariant part
    carries weights 0 and 3 (separated by the antisymmetric component), the
    rest is weight 2.
    """
    t = _dim3(t)
    a, b, c = trace_vectors(t)
    minv = 0.5 * (np.eye(3) - np.ones((3, 3)) / 5.0)
    va, vb, vc = minv @ np.vstack([a, b, c])
    t1 = delta_form(va, vb, vc)
    traceless = t - t1
    eps = core.levi_civita()
    t0 = (np.einsum("ijk,ijk->", eps, traceless) / 6.0) * eps
    fixed = xi_project(traceless, "1")
    t2 = traceless - fixed
    t3 = fixed - t0
    return WeightParts(t0=t0, t1=t1, t2=t2, t3=t3)


def weight_residuals(t: np.ndarray, parts: WeightParts) -> dict[str, float]:
    """Membership and consistency residuals for a computed decomposition."""
    t0, t1, t2, t3 = parts.parts()
    eps = core.levi_civita()
    out = {
        "reconstruction": core.norm(t - (t0 + t1 + t2 + t3)),
        "t0_span_eps": core.norm(
            t0 - (np.einsum("ijk,ijk->", eps, t0) / 6.0) * eps),
        "t1_delta_form": _delta_form_residual(t1),
        "t2_traceless": _trace_residual(t2),
        "t2_cyclic_sum": float(np.abs(
            t2 + np.einsum("jki->ijk", t2) + np.einsum("kij->ijk", t2)).max()),
        "t3_traceless": _trace_residual(t3),
        "t3_symmetric": max(
            float(np.abs(t3 - np.einsum("jik->ijk", t3)).max()),
            float(np.abs(t3 - np.einsum("ikj->ijk", t3)).max())),
    }
    labels = ("t0", "t1", "t2", "t3")
    plist = parts.parts()
    for x in range(4):
        for y in range(x + 1, 4):
            out[f"orth_{labels[x]}_{labels[y]}"] = abs(
                core.hermitian_inner(plist[x], plist[y]))
    return out


def _trace_residual(t: np.ndarray) -> float:
    a, b, c = trace_vectors(t)
    return float(max(np.abs(a).max(), np.abs(b).max(), np.abs(c).max()))


def _delta_form_residual(t1: np.ndarray) -> float:
    a, b, c = trace_vectors(t1)
    minv = 0.5 * (np.eye(3) - np.ones((3, 3)) / 5.0)
    va, vb, vc = minv @ np.vstack([a, b, c])
    return core.norm(t1 - delta_form(va, vb, vc))


@dataclass(frozen=True)
class CyclicParts:
    """Eigencomponents of the cyclic shift; they sum to the input."""

    fixed: np.ndarray
    eig_q: np.ndarray
    eig_qbar: np.ndarray


def cyclic_decompose(t: np.ndarray) -> CyclicParts:
    """Split into the three eigenspaces of the cyclic index shift."""
    t = _dim3(t)
    return CyclicParts(fixed=xi_project(t, "1"),
                       eig_q=xi_project(t, "q"),
                       eig_qbar=xi_project(t, "qbar"))


def weight2_residual(t: np.ndarray) -> float:
    """Distance of t from the weight-2 space (traces + fixed-part norm)."""
    t = _dim3(t)
    return max(_trace_residual(t), core.norm(xi_project(t, "1")))


def cyclic_split_weight2(t2: np.ndarray,
                         tol: float = DEFAULT_CLASS_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Split a weight-2 hypermatrix into its two 5-dimensional halves.

    Returns (xi_q part, xi_qbar part): the first satisfies
    T_ijk = qbar T_jki, the second T_ijk = q T_jki; both stay traceless.
    Inputs failing the weight-2 membership residual are rejected.
    """
    t2 = _dim3(t2)
    res = weight2_residual(t2)
    if res > tol * max(1.0, core.norm(t2)):
        raise core.MembershipError(
            f"not a weight-2 hypermatrix: membership residual {res:.3e} "
            f"exceeds tolerance {tol:.1e}")
    return xi_project(t2, "q"), xi_project(t2, "qbar")


_CLASSIFICATIONS = ("skew", "q_cyclic", "qbar_cyclic", "cyclic_sum_only", "none")


@dataclass(frozen=True)
class ExclusionReport:
    """Symmetry residuals of a hypermatrix and the matching class.

    ``perm_sum_residual`` is the worst absolute value of the sum over all
    six index permutations; ``cyclic_sum_residual`` covers the three cyclic
    shifts only; ``trace_residuals`` are the max-norms of the three trace
    vectors.  ``classification`` is decided on the input scaled to unit
    norm (zero input classifies as ``skew`` by convention).
    """

    perm_sum_residual: float
    cyclic_sum_residual: float
    trace_residuals: tuple[float, float, float]
    classification: str


def exclusion_residuals(t: np.ndarray,
                        tol: float = DEFAULT_CLASS_TOL) -> ExclusionReport:
    """Evaluate the permutation/cyclic/trace residuals and classify."""
    t = _dim3(t)
    cyc1 = np.einsum("jki->ijk", t)
    cyc2 = np.einsum("jki->ijk", cyc1)
    swap12 = np.einsum("jik->ijk", t)
    swap23 = np.einsum("ikj->ijk", t)
    swap13 = np.einsum("kji->ijk", t)
    perm_sum = t + cyc1 + cyc2 + swap12 + swap23 + swap13
    cyc_sum = t + cyc1 + cyc2
    a, b, c = trace_vectors(t)
    traces = (float(np.abs(a).max()), float(np.abs(b).max()),
              float(np.abs(c).max()))

    nrm = core.norm(t)
    if nrm == 0.0:
        cls = "skew"
    else:
        u = t / nrm
        u1 = cyc1 / nrm
        tr = _trace_residual(u)
        if (np.abs(u + swap12 / nrm).max() <= tol
                and np.abs(u + swap23 / nrm).max() <= tol):
            cls = "skew"
        elif tr <= tol and np.abs(u - Q * u1).max() <= tol:
            cls = "q_cyclic"
        elif tr <= tol and np.abs(u - QBAR * u1).max() <= tol:
            cls = "qbar_cyclic"
        elif np.abs(cyc_sum / nrm).max() <= tol:
            cls = "cyclic_sum_only"
        else:
            cls = "none"
    return ExclusionReport(
        perm_sum_residual=float(np.abs(perm_sum).max()),
        cyclic_sum_residual=float(np.abs(cyc_sum).max()),
        trace_residuals=traces,
        classification=cls,
    )
