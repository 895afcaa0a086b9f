"""Shared generators for randomized exact-arithmetic checks."""

import random

import pytest

from hamca.gaussian import GaussianInt, GIVector, GIMatrix, HermitianIntMatrix


def random_gaussian_int(rng: random.Random, bound: int = 3) -> GaussianInt:
    return GaussianInt(rng.randint(-bound, bound), rng.randint(-bound, bound))


def random_vector(rng: random.Random, dim: int, bound: int = 3) -> GIVector:
    return GIVector(random_gaussian_int(rng, bound) for _ in range(dim))


def random_hermitian(rng: random.Random, dim: int, bound: int = 3) -> HermitianIntMatrix:
    rows = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        rows[i][i] = GaussianInt(rng.randint(-bound, bound), 0)
        for j in range(i + 1, dim):
            z = random_gaussian_int(rng, bound)
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return HermitianIntMatrix(GIMatrix(rows))


def random_matrix(rng: random.Random, dim: int, bound: int = 3) -> GIMatrix:
    return GIMatrix([[random_gaussian_int(rng, bound) for _ in range(dim)]
                     for _ in range(dim)])


@pytest.fixture
def rng():
    return random.Random(20240817)
