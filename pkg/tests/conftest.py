"""Shared helpers for the test suite."""

import random

from predipd.core import OUTCOMES
from predipd.predictor import OpponentModel


def random_model(rng: random.Random, max_obs: int = 40) -> OpponentModel:
    """Counter-backed model with random observation histories per state."""
    counts = []
    for _ in OUTCOMES:
        n = rng.randint(0, max_obs)
        c = rng.randint(0, n)
        counts.append((n, c))
    return OpponentModel(tuple(counts))


def random_state(rng: random.Random):
    return rng.choice(OUTCOMES)
