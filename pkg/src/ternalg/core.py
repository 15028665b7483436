"""Hypermatrix storage, the Hermitian metric, permutation symbols, and I/O.

A hypermatrix of dimension n is a complex cube: a C-contiguous
``numpy.ndarray`` of shape (n, n, n) and dtype complex128.  Entry order is
row-major with the first index slowest, so ``T[i-1, j-1, k-1]`` is the entry
written T_ijk in 1-based notation (documentation and the CLI use 1-based
indices throughout).  Arrays returned by the constructors here are marked
read-only; every operation in the package treats its inputs as immutable
values and returns fresh arrays.
"""

from __future__ import annotations

import cmath
import json
import math
import os
from typing import Sequence

import numpy as np

from ._rng import PortableRng

#: Primitive cube root of unity, q = exp(2*pi*i/3).
Q = complex(-0.5, math.sqrt(3.0) / 2.0)
#: Complex conjugate of Q.
QBAR = Q.conjugate()
#: Primitive sixth root of unity, exp(i*pi/3).
EPS6 = complex(0.5, math.sqrt(3.0) / 2.0)

#: Default absolute / relative tolerances for complex comparisons.
DEFAULT_ATOL = 1e-12
DEFAULT_RTOL = 1e-10


class InputError(ValueError):
    """Invalid argument: bad shape, non-finite data, failed precondition."""


class CodecError(InputError):
    """Hypermatrix file failed to parse or validate."""


class MembershipError(InputError):
    """Hypermatrix is outside the subspace an operation requires."""


class RegularityError(InputError):
    """Quadratic invariant too close to zero for the biunit construction."""


def isclose_cx(a: complex, b: complex, atol: float = DEFAULT_ATOL,
               rtol: float = DEFAULT_RTOL) -> bool:
    """Complex closeness: |a - b| <= atol + rtol * |b|."""
    return abs(a - b) <= atol + rtol * abs(b)


def allclose_cx(a, b, atol: float = DEFAULT_ATOL, rtol: float = DEFAULT_RTOL) -> bool:
    """Entrywise :func:`isclose_cx` over arrays."""
    a = np.asarray(a)
    b = np.asarray(b)
    return bool(np.all(np.abs(a - b) <= atol + rtol * np.abs(b)))


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _check_cube(t: np.ndarray, name: str = "hypermatrix") -> np.ndarray:
    t = np.asarray(t, dtype=np.complex128)
    if t.ndim != 3 or len(set(t.shape)) != 1:
        raise InputError(f"{name}: expected an (n, n, n) array, got shape {t.shape}")
    return t


def _check_same_dim(*ts: np.ndarray) -> int:
    dims = {t.shape[0] for t in ts}
    if len(dims) != 1:
        raise InputError(f"dimension mismatch: operands have dims {sorted(dims)}")
    return dims.pop()


def new_hypermatrix(dim: int, entries: Sequence[complex]) -> np.ndarray:
    """Build a hypermatrix from a flat entry sequence in canonical order.

    Canonical order is row-major with the first index slowest (the flat
    position of T_ijk is (i-1)*dim^2 + (j-1)*dim + (k-1)).
    """
    if dim < 1:
        raise InputError(f"dim must be positive, got {dim}")
    data = np.asarray(list(entries), dtype=np.complex128)
    if data.size != dim**3:
        raise InputError(
            f"expected {dim**3} entries for dim {dim}, got {data.size}")
    finite = np.isfinite(data)
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0])
        raise InputError(f"entry {bad + 1}: non-finite value {data[bad]}")
    return _freeze(data.reshape(dim, dim, dim))


def slice_matrix(t: np.ndarray, direction: int, m: int) -> np.ndarray:
    """Cut the cube with a plane orthogonal to one index direction.

    ``direction`` picks which index is fixed (1, 2 or 3) and ``m`` is the
    1-based value it is fixed to.  Direction 1 gives (jk) -> T_mjk,
    direction 2 gives (ik) -> T_imk, direction 3 gives (rs) -> T_rsm.
    """
    t = _check_cube(t)
    n = t.shape[0]
    if direction not in (1, 2, 3):
        raise InputError(f"direction must be 1, 2 or 3, got {direction}")
    if not 1 <= m <= n:
        raise InputError(f"slice index {m} out of range 1..{n}")
    if direction == 1:
        out = t[m - 1, :, :]
    elif direction == 2:
        out = t[:, m - 1, :]
    else:
        out = t[:, :, m - 1]
    return _freeze(np.ascontiguousarray(out))


def assemble_slices(direction: int, slices: Sequence[np.ndarray]) -> np.ndarray:
    """Inverse of :func:`slice_matrix`: rebuild the cube from its n sections."""
    mats = [np.asarray(s, dtype=np.complex128) for s in slices]
    n = len(mats)
    out = np.zeros((n, n, n), dtype=np.complex128)
    for m, mat in enumerate(mats):
        if mat.shape != (n, n):
            raise InputError(f"slice {m + 1}: expected shape {(n, n)}, got {mat.shape}")
        if direction == 1:
            out[m, :, :] = mat
        elif direction == 2:
            out[:, m, :] = mat
        elif direction == 3:
            out[:, :, m] = mat
        else:
            raise InputError(f"direction must be 1, 2 or 3, got {direction}")
    return _freeze(out)


def hermitian_inner(t: np.ndarray, u: np.ndarray) -> complex:
    """Hermitian scalar product: sum_ijk T_ijk * conj(U_ijk)."""
    t = _check_cube(t)
    u = _check_cube(u)
    _check_same_dim(t, u)
    return complex(np.sum(t * np.conj(u)))


def norm(t: np.ndarray) -> float:
    """Hermitian norm, sqrt(<T, T>)."""
    t = np.asarray(t, dtype=np.complex128)
    return float(np.sqrt(np.sum(np.abs(t) ** 2)))


def levi_civita() -> np.ndarray:
    """Totally antisymmetric unit symbol on three indices."""
    e = np.zeros((3, 3, 3), dtype=np.complex128)
    e[0, 1, 2] = e[1, 2, 0] = e[2, 0, 1] = 1.0
    e[2, 1, 0] = e[1, 0, 2] = e[0, 2, 1] = -1.0
    return _freeze(e)


def tau() -> np.ndarray:
    """Signed permutation symbol weighted by cube roots of unity.

    Nonzero only on distinct indices; skew in the first two indices; a
    cyclic shift multiplies entries by Q on even permutations of (1,2,3)
    and by QBAR on odd ones, anchored at tau_312 = 1.
    """
    t = np.zeros((3, 3, 3), dtype=np.complex128)
    t[0, 1, 2] = QBAR
    t[1, 2, 0] = Q
    t[2, 0, 1] = 1.0
    t[1, 0, 2] = -QBAR
    t[2, 1, 0] = -Q
    t[0, 2, 1] = -1.0
    return _freeze(t)


def random_hypermatrix(dim: int, seed: int) -> np.ndarray:
    """Seeded hypermatrix with re/im parts uniform on [-1, 1).

    Entries are drawn in canonical order (real part first) from the
    portable xorshift64* stream, so a (dim, seed) pair names the same
    hypermatrix on every platform.
    """
    if dim < 1:
        raise InputError(f"dim must be positive, got {dim}")
    rng = PortableRng(seed)
    data = np.fromiter(
        (rng.complex_signed() for _ in range(dim**3)),
        dtype=np.complex128, count=dim**3)
    return _freeze(data.reshape(dim, dim, dim))


# ---------------------------------------------------------------------------
# JSON codec.  Format: {"dim": n, "entries": [[re, im], ...]} with n^3 pairs
# in canonical order; floats are written in full round-trip precision.
# ---------------------------------------------------------------------------

def _reject_constant(token: str) -> float:
    raise CodecError(f"non-finite number {token!r} is not allowed")


def read_hypermatrix(path: str | os.PathLike) -> np.ndarray:
    """Read a hypermatrix from a JSON file; raises CodecError with the
    offending field on malformed input."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh, parse_constant=_reject_constant)
        except json.JSONDecodeError as exc:
            raise CodecError(
                f"{path}: bad JSON at line {exc.lineno} column {exc.colno}: "
                f"{exc.msg}") from exc
    if not isinstance(doc, dict):
        raise CodecError(f"{path}: expected a JSON object at top level")
    if "dim" not in doc or "entries" not in doc:
        raise CodecError(f"{path}: missing required field 'dim' or 'entries'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise CodecError(f"{path}: field 'dim' must be a positive integer, got {dim!r}")
    entries = doc["entries"]
    if not isinstance(entries, list):
        raise CodecError(f"{path}: field 'entries' must be a list")
    if len(entries) != dim**3:
        raise CodecError(
            f"{path}: expected {dim**3} entries for dim {dim}, got {len(entries)}")
    data = np.empty(dim**3, dtype=np.complex128)
    for pos, pair in enumerate(entries):
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, (int, float)) for x in pair)):
            raise CodecError(f"{path}: entry {pos + 1}: expected a [re, im] pair, "
                             f"got {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise CodecError(f"{path}: entry {pos + 1}: non-finite component")
        data[pos] = complex(re, im)
    return _freeze(data.reshape(dim, dim, dim))


def write_hypermatrix(path: str | os.PathLike, t: np.ndarray) -> None:
    """Write a hypermatrix as JSON; round-trips bit-exactly through
    :func:`read_hypermatrix`."""
    t = _check_cube(t)
    doc = {
        "dim": int(t.shape[0]),
        "entries": [[z.real, z.imag] for z in t.ravel()],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def principal_sqrt(z: complex) -> complex:
    """Principal branch square root (result argument in (-pi/2, pi/2])."""
    return cmath.sqrt(z)
