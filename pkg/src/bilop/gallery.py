"""Small benchmark operators used throughout the tests and scripts.

Each builder returns a named Tensor3. The first two live on the same
3 x 2 x 4 space pair but sit at opposite ends of the difficulty scale:
diagonal_pair is orthogonally decomposable, overlapping_slices has no
ordered singular value at all. orthonormal_triad is a 3 x 3 x 3 operator
with a known three-term orthonormal decomposition, and signed_diagonal
produces self-adjoint cubic diagonals for the eigenvalue round trips.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .tensor_core import Tensor3, from_schmidt

__all__ = [
    "diagonal_pair",
    "overlapping_slices",
    "orthonormal_triad",
    "signed_diagonal",
]


def diagonal_pair() -> Tensor3:
    """3 x 2 x 4 operator with two orthogonal rank-one terms of weight 3 and 2.

    T = 3 (e2 x f2 x g2) + 2 (e1 x f1 x g1) in 1-based basis labels; only
    two entries of the coordinate tensor are nonzero. Its largest two
    singular values are ordered, and the Schmidt decomposition recovers
    both terms exactly. A third singular value 6/sqrt(13) sits at a saddle.
    """
    arr = np.zeros((3, 2, 4))
    arr[1, 1, 1] = 3.0
    arr[0, 0, 0] = 2.0
    return Tensor3.from_array(arr, name="diagonal-pair")


def overlapping_slices() -> Tensor3:
    """3 x 2 x 4 operator whose rank-one pieces share coordinates.

    T(a, b) = (a1 b1, (a1 + a2) b1, a1 b1, (a1 + a3) b2) componentwise.
    Every singular triple of this operator fails the ordered-singular-value
    slice test, so Schmidt decomposition fails at the first step. It is the
    standard counterexample for the ordered property in the test suite.
    """
    arr = np.zeros((3, 2, 4))
    arr[0, 0, 0] = 1.0
    arr[0, 0, 1] = 1.0
    arr[1, 0, 1] = 1.0
    arr[0, 0, 2] = 1.0
    arr[0, 1, 3] = 1.0
    arr[2, 1, 3] = 1.0
    return Tensor3.from_array(arr, name="overlapping-slices")


def orthonormal_triad() -> Tensor3:
    """3 x 3 x 3 operator with a complete three-term orthonormal decomposition.

    Built as sum tau_i (x_i x y_i x z_i) with tau = (1, 2, 3), orthonormal
    x_i = e_i, planar rotations for y_i, and a Fourier-like frame for z_i.
    Schmidt decomposition returns the terms in descending order (3, 2, 1).
    """
    s2 = 1.0 / np.sqrt(2.0)
    s3 = 1.0 / np.sqrt(3.0)
    s6 = 1.0 / np.sqrt(6.0)
    terms = [
        (1.0, [1.0, 0.0, 0.0], [s2, 0.0, s2], [s3, s3, s3]),
        (2.0, [0.0, 1.0, 0.0], [0.0, 1.0, 0.0], [-s2, s2, 0.0]),
        (3.0, [0.0, 0.0, 1.0], [s2, 0.0, -s2], [s6, s6, -2.0 * s6]),
    ]
    return from_schmidt(terms, name="orthonormal-triad")


def signed_diagonal(weights: Sequence[float] = (3.0, -2.0, 1.0)) -> Tensor3:
    """Cubic diagonal operator sum_i w_i (e_i x e_i x e_i).

    Symmetric and self-adjoint for any real weights; the Schur form
    recovers the signed weights from the unsigned singular values.
    """
    w = np.asarray(list(weights), dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weights must be a nonempty 1-D sequence")
    n = w.size
    arr = np.zeros((n, n, n))
    for i in range(n):
        arr[i, i, i] = w[i]
    return Tensor3.from_array(arr, name=f"signed-diagonal-{n}")
