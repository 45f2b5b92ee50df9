"""Memory-one strategy library and the deterministic random-number stream.

A memory-one strategy is a four-vector of cooperation probabilities indexed
by the previous joint outcome *in the strategy owner's own orientation*
(own previous move first), plus a policy for the opening move.

Orientation is the classic silent-bug site: a model of an opponent held by
the focal player indexes the same four probabilities with the focal
player's move first, which swaps the CD and DC entries.  Use
:func:`as_model_view` for that conversion and nothing else.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .core import Action, JointOutcome, OUTCOMES


class InitialPolicy(Enum):
    ALWAYS_COOPERATE = "C"
    ALWAYS_DEFECT = "D"
    UNIFORM_RANDOM = "R"

    @property
    def coop_prob(self) -> Fraction:
        return {
            InitialPolicy.ALWAYS_COOPERATE: Fraction(1),
            InitialPolicy.ALWAYS_DEFECT: Fraction(0),
            InitialPolicy.UNIFORM_RANDOM: Fraction(1, 2),
        }[self]


class UnknownStrategyError(ValueError):
    """Raised for a strategy name not present in the registry."""


class RngStream:
    """Seeded uniform stream: identical seed, identical draws, everywhere.

    Every stochastic decision point consumes exactly one draw, even when
    the probability is 0 or 1, so that editing a probability never shifts
    the draws seen by later decisions.
    """

    def __init__(self, seed: int):
        self.seed = seed
        self.position = 0
        self._rng = random.Random(seed)

    def uniform(self) -> float:
        self.position += 1
        return self._rng.random()

    def bernoulli(self, coop_prob) -> bool:
        # float < Fraction compares exactly
        return self.uniform() < coop_prob


@dataclass(frozen=True)
class MemoryOneStrategy:
    """Four cooperation probabilities (own orientation) + opening policy."""

    name: str
    coop_prob: Mapping[JointOutcome, Fraction]
    initial_policy: InitialPolicy = InitialPolicy.ALWAYS_COOPERATE

    def __post_init__(self):
        probs = {o: Fraction(self.coop_prob[o]) for o in OUTCOMES}
        for o, p in probs.items():
            if not 0 <= p <= 1:
                raise ValueError(f"{self.name}: p(C|{o}) = {p} outside [0, 1]")
        object.__setattr__(self, "coop_prob", probs)

    def vector(self) -> tuple[Fraction, ...]:
        """(p(C|CC), p(C|CD), p(C|DC), p(C|DD))."""
        return tuple(self.coop_prob[o] for o in OUTCOMES)


def _make(name, vec, initial) -> MemoryOneStrategy:
    return MemoryOneStrategy(
        name=name,
        coop_prob=dict(zip(OUTCOMES, (Fraction(v) for v in vec))),
        initial_policy=initial,
    )


_C = InitialPolicy.ALWAYS_COOPERATE
_D = InitialPolicy.ALWAYS_DEFECT
_R = InitialPolicy.UNIFORM_RANDOM

# The nine tournament strategies.  JOSS and ZDEXTORT-2 open with defection:
# that is the only opening under which their pairings against ALLD are exact
# ties (both lock into mutual defection from turn one), which the reference
# tournament results require.
BUILTIN_STRATEGIES: dict[str, MemoryOneStrategy] = {
    s.name: s
    for s in (
        _make("TFT", (1, 0, 1, 0), _C),
        _make("GTFT", (1, Fraction(1, 3), 1, Fraction(1, 3)), _C),
        _make("WSLS", (1, 0, 0, 1), _C),
        _make("ALLD", (0, 0, 0, 0), _D),
        _make("ALLC", (1, 1, 1, 1), _C),
        _make("JOSS", (Fraction(9, 10), 0, Fraction(9, 10), 0), _D),
        _make("ZDGTFT-2", (1, Fraction(1, 8), 1, Fraction(1, 4)), _C),
        _make("ZDEXTORT-2", (Fraction(8, 9), Fraction(1, 2), Fraction(1, 3), 0), _D),
        _make("RANDOM", (Fraction(1, 2),) * 4, _R),
    )
}

#: Alternate spellings accepted by lookup.
_ALIASES = {"ZD-GTFT-2": "ZDGTFT-2", "ZD-EXTORT-2": "ZDEXTORT-2"}


def builtin(name: str) -> MemoryOneStrategy:
    """Look up a registry strategy by name."""
    key = _ALIASES.get(name, name)
    try:
        return BUILTIN_STRATEGIES[key]
    except KeyError:
        valid = ", ".join(sorted(BUILTIN_STRATEGIES))
        raise UnknownStrategyError(f"unknown strategy {name!r}; valid names: {valid}") from None


def next_action(strategy: MemoryOneStrategy, prev: JointOutcome, rng: RngStream) -> Action:
    """Sample the strategy's move given the previous outcome (own orientation)."""
    return Action.C if rng.bernoulli(strategy.coop_prob[prev]) else Action.D


def initial_action(
    strategy: MemoryOneStrategy, rng: RngStream, randomize_override: bool = False
) -> Action:
    """Opening move; the override forces a uniformly random opening."""
    p = Fraction(1, 2) if randomize_override else strategy.initial_policy.coop_prob
    return Action.C if rng.bernoulli(p) else Action.D


def as_model_view(strategy: MemoryOneStrategy) -> dict[JointOutcome, Fraction]:
    """The strategy's four-vector re-indexed in the opposing player's orientation.

    Swaps the CD and DC entries; CC and DD are fixed points.  Applying the
    swap twice is the identity.
    """
    return {o: strategy.coop_prob[o.mirror] for o in OUTCOMES}
