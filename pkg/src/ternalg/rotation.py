"""Rotation-group action on hypermatrices and the scalar invariants.

A rotation acts on all three indices at once,
(g.T)_prs = g_pi g_rj g_sk T_ijk, and :func:`invariants` evaluates the one
linear and twenty-two quadratic scalars that this action leaves fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from . import core
from ._rng import PortableRng

_ROTATION_TOL = 1e-12


def rotation_from_euler(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """Proper rotation from z-y-z Euler angles: Rz(alpha) Ry(beta) Rz(gamma)."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    cb, sb = math.cos(beta), math.sin(beta)
    cg, sg = math.cos(gamma), math.sin(gamma)
    rz1 = np.array([[ca, -sa, 0.0], [sa, ca, 0.0], [0.0, 0.0, 1.0]])
    ry = np.array([[cb, 0.0, sb], [0.0, 1.0, 0.0], [-sb, 0.0, cb]])
    rz2 = np.array([[cg, -sg, 0.0], [sg, cg, 0.0], [0.0, 0.0, 1.0]])
    g = rz1 @ ry @ rz2
    g.setflags(write=False)
    return g


def random_rotation(seed: int) -> np.ndarray:
    """Seeded rotation: three z-y-z Euler angles uniform on [0, 2*pi)."""
    rng = PortableRng(seed)
    angles = [2.0 * math.pi * rng.uniform() for _ in range(3)]
    return rotation_from_euler(*angles)


def check_rotation(g: np.ndarray, tol: float = _ROTATION_TOL) -> np.ndarray:
    """Validate a 3x3 proper rotation matrix (orthogonal, det +1)."""
    g = np.asarray(g, dtype=np.float64)
    if g.shape != (3, 3):
        raise core.InputError(f"rotation must be 3x3, got shape {g.shape}")
    ortho = float(np.abs(g.T @ g - np.eye(3)).max())
    det = float(np.linalg.det(g))
    if ortho > tol or abs(det - 1.0) > tol:
        raise core.InputError(
            f"not a rotation: |g^T g - I| = {ortho:.3e}, det = {det:.15g}")
    return g


def rotate(g: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Apply a rotation to a dim-3 hypermatrix on all three indices."""
    g = check_rotation(g)
    t = core._check_cube(t)
    if t.shape[0] != 3:
        raise core.InputError(f"rotation action needs dim 3, got dim {t.shape[0]}")
    out = np.einsum("pi,ijk->pjk", g, t)
    out = np.einsum("rj,pjk->prk", g, out)
    out = np.einsum("sk,prk->prs", g, out)
    return out


@dataclass(frozen=True)
class InvariantRecord:
    """The complete set of linear and quadratic rotation invariants.

    Starred fields (suffix ``s``) pair the hypermatrix with its complex
    conjugate; unstarred ones use the hypermatrix twice.
    """

    I: complex
    I1: complex
    I1s: complex
    I2: complex
    I2s: complex
    I3: complex
    I3s: complex
    I4: complex
    I4s: complex
    I5: complex
    I5s: complex
    I6: complex
    I6s: complex
    I7: complex
    I7s: complex
    I8: complex
    I8s: complex
    I9: complex
    I9s: complex
    I10: complex
    I10s: complex
    I11: complex
    I11s: complex

    def as_pairs(self) -> list[tuple[str, complex]]:
        """(display name, value) rows; starred names end in ``*``."""
        out = []
        for f in fields(self):
            name = f.name[:-1] + "*" if f.name.endswith("s") else f.name
            out.append((name, getattr(self, f.name)))
        return out


def _pair_sum(t: np.ndarray, u: np.ndarray, pattern: str) -> complex:
    return complex(np.einsum(f"ijk,{pattern}->", t, u))


def invariants(t: np.ndarray) -> InvariantRecord:
    """Evaluate all 23 invariant scalars of a dim-3 hypermatrix."""
    t = core._check_cube(t)
    if t.shape[0] != 3:
        raise core.InputError(f"invariants need dim 3, got dim {t.shape[0]}")
    tc = np.conj(t)
    eps = core.levi_civita()

    # trace vectors over the three index pairs
    a = np.einsum("iik->k", t)
    b = np.einsum("iji->j", t)
    c = np.einsum("ijj->i", t)
    ac, bc, cc = np.conj(a), np.conj(b), np.conj(c)

    def dot(x, y):
        return complex(np.sum(x * y))

    return InvariantRecord(
        I=complex(np.einsum("ijk,ijk->", eps, t)),
        I1=_pair_sum(t, t, "ijk"), I1s=_pair_sum(t, tc, "ijk"),
        I2=_pair_sum(t, t, "ikj"), I2s=_pair_sum(t, tc, "ikj"),
        I3=_pair_sum(t, t, "jik"), I3s=_pair_sum(t, tc, "jik"),
        I4=_pair_sum(t, t, "kji"), I4s=_pair_sum(t, tc, "kji"),
        I5=_pair_sum(t, t, "kij") + _pair_sum(t, t, "jki"),
        I5s=_pair_sum(t, tc, "kij") + _pair_sum(t, tc, "jki"),
        I6=dot(a, a), I6s=dot(a, ac),
        I7=dot(b, b), I7s=dot(b, bc),
        I8=dot(c, c), I8s=dot(c, cc),
        I9=dot(a, c), I9s=dot(a, cc),
        I10=0.5 * (dot(a, b) + dot(b, a)),
        I10s=0.5 * (dot(a, bc) + dot(b, ac)),
        I11=0.5 * (dot(b, c) + dot(c, b)),
        I11s=0.5 * (dot(b, cc) + dot(c, bc)),
    )
