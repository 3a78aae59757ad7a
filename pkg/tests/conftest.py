from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from binres.systems import BinomialSystem, make_system

REPO = Path(__file__).resolve().parent.parent
SYSTEMS = REPO / "systems"


def random_system(n: int, rng: random.Random) -> BinomialSystem:
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return make_system(n, [rng.choice(pairs) for _ in range(n)])


def random_specialization(system: BinomialSystem, rng: random.Random,
                          lo: int = -5, hi: int = 5) -> BinomialSystem:
    values = {}
    for i in range(1, system.n + 1):
        a = 0
        while a == 0:
            a = rng.randint(1, hi)
        values[f"a{i}"] = Fraction(a, rng.randint(1, 3))
        values[f"b{i}"] = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
    return system.specialize(values)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240811)
