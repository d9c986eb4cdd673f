"""Shared brute-force oracles and random-input builders for the test suite.

The oracles deliberately use the dumbest correct algorithms available
(subset enumeration, cofactor expansion) so they share no code path with the
implementations they check.
"""

import math
import random
from itertools import combinations

import numpy as np

from sigmak.symfunc import SymmetricMatrix


def e_brute(values, k):
    """e_k by explicit enumeration of all k-subsets."""
    vals = list(values)
    if k == 0:
        return 1
    total = 0
    for idx in combinations(range(len(vals)), k):
        prod = 1
        for i in idx:
            prod = prod * vals[i]
        total = total + prod
    return total


def det_cofactor(rows):
    """Determinant by first-row cofactor expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        sub = [row[:j] + row[j + 1 :] for row in rows[1:]]
        term = rows[0][j] * det_cofactor(sub)
        total = total + (term if j % 2 == 0 else -term)
    return total


def sigma_brute(matrix_rows, k):
    """sigma_k as a sum of principal minors, each by cofactor expansion."""
    n = len(matrix_rows)
    total = 0
    for idx in combinations(range(n), k):
        sub = [[matrix_rows[i][j] for j in idx] for i in idx]
        total = total + det_cofactor(sub)
    return total


def random_symmetric(rng: random.Random, dim: int, scale: float = 5.0) -> SymmetricMatrix:
    a = np.empty((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            v = rng.uniform(-scale, scale)
            a[i, j] = v
            a[j, i] = v
    return SymmetricMatrix(a)


def random_rotation(rng: random.Random, dim: int, rotations: int | None = None) -> np.ndarray:
    """Orthogonal matrix assembled from random Jacobi (Givens) rotations."""
    q = np.eye(dim)
    if rotations is None:
        rotations = 2 * dim
    for _ in range(rotations):
        p_idx = rng.randrange(dim)
        q_idx = rng.randrange(dim)
        if p_idx == q_idx:
            continue
        angle = rng.uniform(0.0, 2.0 * math.pi)
        c, s = math.cos(angle), math.sin(angle)
        giv = np.eye(dim)
        giv[p_idx, p_idx] = c
        giv[q_idx, q_idx] = c
        giv[p_idx, q_idx] = s
        giv[q_idx, p_idx] = -s
        q = q @ giv
    return q


def rotate_exactly_symmetric(m: SymmetricMatrix, q: np.ndarray) -> SymmetricMatrix:
    b = q.T @ m.entries @ q
    return SymmetricMatrix((b + b.T) / 2.0)
