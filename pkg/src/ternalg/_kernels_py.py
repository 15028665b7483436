"""NumPy contraction kernels.

Fallback implementation of the hot kernels, selected by ``ternalg._backend``
when the compiled extension is unavailable.  Both implementations expose the
same five functions with identical semantics; ``tests/test_backends.py``
checks them against each other.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "numpy"

_LETTERS = "ijklmn"


def product_p1(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    # out[i,j,k] = sum_{l,m,n} a[i,l,m] b[n,l,m] c[n,j,k]
    n = a.shape[0]
    m = a.reshape(n, n * n) @ b.reshape(n, n * n).T
    return (m @ c.reshape(n, n * n)).reshape(n, n, n)


def product_p2(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    # out[i,j,k] = sum_{l,m,n} a[i,l,m] b[n,m,l] c[n,j,k]
    n = a.shape[0]
    bt = np.ascontiguousarray(b.transpose(0, 2, 1)).reshape(n, n * n)
    m = a.reshape(n, n * n) @ bt.T
    return (m @ c.reshape(n, n * n)).reshape(n, n, n)


def product_p3(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    # out[i,j,k] = sum_{p,r,s} a[i,j,p] b[r,s,p] c[s,r,k]
    n = a.shape[0]
    ct = np.ascontiguousarray(c.transpose(1, 0, 2)).reshape(n * n, n)
    h = b.reshape(n * n, n).T @ ct
    return (a.reshape(n * n, n) @ h).reshape(n, n, n)


def product_p4(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    # out[i,j,k] = sum_{p,r,s} a[i,j,p] b[r,s,p] c[r,s,k]
    n = a.shape[0]
    h = b.reshape(n * n, n).T @ c.reshape(n * n, n)
    return (a.reshape(n * n, n) @ h).reshape(n, n, n)


def scheme_product(a: np.ndarray, b: np.ndarray, c: np.ndarray,
                   spec: tuple[int, ...]) -> np.ndarray:
    """Contract three cubes by a 9-slot assignment.

    ``spec`` holds one integer per index slot (A1..A3, B1..B3, C1..C3 in
    order): values 0..2 select the output axes i, j, k and values 3..5 name
    the three summed indices.
    """
    subs = ["".join(_LETTERS[v] for v in spec[f * 3:f * 3 + 3]) for f in range(3)]
    return np.einsum(f"{subs[0]},{subs[1]},{subs[2]}->ijk", a, b, c)
