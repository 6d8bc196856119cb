"""Shared fixtures: the randomized matrix corpus used by the
acceptance criteria.

The corpus is seeded (override with CRYSTOR_TEST_SEED) and built once
per session.  Strict diagonal dominance with positive diagonal keeps
every draw symmetric positive definite without a definiteness search.
"""

import os
import random

import pytest

from crystor.abelian import IntMatrix
from crystor.degen import DegenerationData

DEFAULT_SEED = 20260821
MAX_ENTRY = 20

# how many matrices of each rank; 210 total
RANK_COUNTS = {1: 50, 2: 60, 3: 60, 4: 40}
PRIMES = (2, 3, 5)


def _random_spd(rng: random.Random, t: int) -> IntMatrix:
    rows = [[0] * t for _ in range(t)]
    for i in range(t):
        for j in range(i + 1, t):
            rows[i][j] = rows[j][i] = rng.randint(-2, 2)
    for i in range(t):
        slack = sum(abs(rows[i][j]) for j in range(t) if j != i)
        rows[i][i] = slack + rng.randint(1, MAX_ENTRY - slack)
    return IntMatrix.from_rows(rows)


@pytest.fixture(scope="session")
def matrix_corpus() -> list[DegenerationData]:
    seed = int(os.environ.get("CRYSTOR_TEST_SEED", DEFAULT_SEED))
    rng = random.Random(seed)
    corpus = []
    for t, count in RANK_COUNTS.items():
        for k in range(count):
            p = PRIMES[k % len(PRIMES)]
            if t == 1:
                # sweep small valuations deliberately, then random ones
                v = k % MAX_ENTRY + 1
                mu = IntMatrix.from_rows([[v]])
            else:
                mu = _random_spd(rng, t)
            data = DegenerationData(p, mu)
            data.validate()
            corpus.append(data)
    return corpus
