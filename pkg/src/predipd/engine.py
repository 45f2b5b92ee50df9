"""Match execution and the round-robin tournament harness.

Matches are fully deterministic given their seed: each player owns one
seeded draw stream, both players are queried against the previous joint
outcome before either current move is revealed, and per-match seeds are a
fixed 64-bit mix of (master seed, pair indices, iteration), so results
survive refactors and may be recomputed match by match in any order.
"""

from __future__ import annotations

import hashlib
import math
import random
import struct
from dataclasses import dataclass, replace
from typing import Optional, Protocol, Sequence, Union

from . import predictor
from .core import Action, DEFAULT_PAYOFFS, JointOutcome, PayoffMatrix
from .strategies import MemoryOneStrategy, RngStream, initial_action, next_action

PREDICTOR_NAME = "PREDICTOR"


def mix_seed(*values: int) -> int:
    """Stable 64-bit hash of a tuple of integers (order-sensitive)."""
    packed = struct.pack(f"<{len(values)}Q", *(v & (2**64 - 1) for v in values))
    return int.from_bytes(hashlib.blake2b(packed, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class MatchConfig:
    n_turns: int = 200
    payoff: PayoffMatrix = DEFAULT_PAYOFFS
    randomize_opponent_initial: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.n_turns < 1:
            raise ValueError("n_turns must be at least 1")


class Player(Protocol):
    name: str

    def act(self, turn: int) -> Action: ...

    def observe(self, own: Action, opp: Action) -> None: ...


class MemoryOnePlayer:
    def __init__(self, strategy: MemoryOneStrategy, rng: RngStream, randomize_initial: bool = False):
        self.name = strategy.name
        self.strategy = strategy
        self.rng = rng
        self.randomize_initial = randomize_initial
        self.prev: Optional[JointOutcome] = None

    def act(self, turn: int) -> Action:
        if turn == 0:
            return initial_action(self.strategy, self.rng, self.randomize_initial)
        assert self.prev is not None
        return next_action(self.strategy, self.prev, self.rng)

    def observe(self, own: Action, opp: Action) -> None:
        self.prev = JointOutcome.from_actions(own, opp)


class PredictorPlayer:
    def __init__(self, p_exp: float, n_turns: int, payoff: PayoffMatrix, rng: RngStream,
                 name: str = PREDICTOR_NAME):
        self.name = name
        self.payoff = payoff
        self.rng = rng
        self.state = predictor.PredictorState.fresh(n_turns, p_exp)

    def act(self, turn: int) -> Action:
        return predictor.act(self.state, self.rng, self.payoff)

    def observe(self, own: Action, opp: Action) -> None:
        self.state = predictor.observe(self.state, own, opp)


@dataclass(frozen=True)
class MemoryOneSpec:
    """Roster entry backed by a fixed memory-one strategy."""

    strategy: MemoryOneStrategy

    @property
    def name(self) -> str:
        return self.strategy.name

    def make_player(self, rng: RngStream, cfg: MatchConfig, vs_predictor: bool) -> Player:
        randomize = cfg.randomize_opponent_initial and vs_predictor
        return MemoryOnePlayer(self.strategy, rng, randomize)


@dataclass(frozen=True)
class PredictorSpec:
    """Roster entry for the learning agent; state is rebuilt every match."""

    p_exp: float = 0.1
    name: str = PREDICTOR_NAME

    def make_player(self, rng: RngStream, cfg: MatchConfig, vs_predictor: bool) -> Player:
        return PredictorPlayer(self.p_exp, cfg.n_turns, cfg.payoff, rng)


PlayerSpec = Union[MemoryOneSpec, PredictorSpec]


@dataclass(frozen=True)
class MatchRecord:
    """Complete turn-by-turn trace of one match."""

    player_a: str
    player_b: str
    actions: tuple[tuple[Action, Action], ...]
    payoffs: tuple[tuple[float, float], ...]
    mean_a: float
    mean_b: float

    @property
    def n_turns(self) -> int:
        return len(self.actions)

    def cumulative_means(self, role: int, window: int = 5) -> list[tuple[int, float]]:
        """(turn, mean payoff through that turn) at every `window` turns."""
        series = []
        total = 0.0
        for t, pair in enumerate(self.payoffs, start=1):
            total += pair[role]
            if t % window == 0:
                series.append((t, total / t))
        return series


def play_match(spec_a: PlayerSpec, spec_b: PlayerSpec, cfg: MatchConfig) -> MatchRecord:
    """Run one match; fully deterministic given cfg.seed."""
    a_is_pred = isinstance(spec_a, PredictorSpec)
    b_is_pred = isinstance(spec_b, PredictorSpec)
    player_a = spec_a.make_player(RngStream(mix_seed(cfg.seed, 0)), cfg, vs_predictor=b_is_pred)
    player_b = spec_b.make_player(RngStream(mix_seed(cfg.seed, 1)), cfg, vs_predictor=a_is_pred)

    actions: list[tuple[Action, Action]] = []
    payoffs: list[tuple[float, float]] = []
    total_a = 0.0
    total_b = 0.0
    for turn in range(cfg.n_turns):
        # both moves are fixed before either is revealed
        move_a = player_a.act(turn)
        move_b = player_b.act(turn)
        player_a.observe(move_a, move_b)
        player_b.observe(move_b, move_a)
        pay_a, pay_b = cfg.payoff.payoff(JointOutcome.from_actions(move_a, move_b))
        actions.append((move_a, move_b))
        payoffs.append((float(pay_a), float(pay_b)))
        total_a += float(pay_a)
        total_b += float(pay_b)

    return MatchRecord(
        player_a=player_a.name,
        player_b=player_b.name,
        actions=tuple(actions),
        payoffs=tuple(payoffs),
        mean_a=total_a / cfg.n_turns,
        mean_b=total_b / cfg.n_turns,
    )


@dataclass(frozen=True)
class TournamentResult:
    roster: tuple[str, ...]
    pair_means: dict[tuple[str, str], float]  # aggregated mean of row player vs column player
    averages: dict[str, float]
    standard_errors: dict[str, float]
    wins: dict[str, int]
    ties: dict[str, int]
    ranking: tuple[str, ...]
    records: tuple[MatchRecord, ...]
    n_iter: int
    master_seed: int
    config: MatchConfig


def run_round_robin(
    roster: Sequence[PlayerSpec],
    cfg: MatchConfig,
    n_iter: int = 5,
    master_seed: int = 0,
) -> TournamentResult:
    """Every unordered pair (self-pairings included) plays n_iter matches.

    A strategy's average payoff is the mean of its per-match mean payoffs;
    a self-play match contributes the average of its two role means once.
    A pairing counts as a win when the aggregated mean payoff strictly
    exceeds the opponent's.
    """
    if not roster:
        raise ValueError("roster must not be empty")
    names = [spec.name for spec in roster]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate player names in roster: {names}")

    order = list(roster)
    random.Random(mix_seed(master_seed, 0x5348)).shuffle(order)

    per_match_means: dict[str, list[float]] = {spec.name: [] for spec in order}
    pair_totals: dict[tuple[str, str], float] = {}
    records: list[MatchRecord] = []

    for i, spec_i in enumerate(order):
        for j in range(i, len(order)):
            spec_j = order[j]
            sum_i = 0.0
            sum_j = 0.0
            for it in range(n_iter):
                seed = mix_seed(master_seed, i, j, it)
                rec = play_match(spec_i, spec_j, replace(cfg, seed=seed))
                records.append(rec)
                sum_i += rec.mean_a
                sum_j += rec.mean_b
                if i == j:
                    per_match_means[spec_i.name].append((rec.mean_a + rec.mean_b) / 2)
                else:
                    per_match_means[spec_i.name].append(rec.mean_a)
                    per_match_means[spec_j.name].append(rec.mean_b)
            if i == j:
                # symmetrized diagonal
                pair_totals[(spec_i.name, spec_i.name)] = (sum_i + sum_j) / (2 * n_iter)
            else:
                pair_totals[(spec_i.name, spec_j.name)] = sum_i / n_iter
                pair_totals[(spec_j.name, spec_i.name)] = sum_j / n_iter

    averages = {}
    stderrs = {}
    for name, means in per_match_means.items():
        avg = sum(means) / len(means)
        averages[name] = avg
        if len(means) > 1:
            var = sum((m - avg) ** 2 for m in means) / (len(means) - 1)
            stderrs[name] = math.sqrt(var) / math.sqrt(len(means))
        else:
            stderrs[name] = 0.0

    wins = {spec.name: 0 for spec in order}
    ties = {spec.name: 0 for spec in order}
    for i, spec_i in enumerate(order):
        for j in range(i + 1, len(order)):
            spec_j = order[j]
            mine = pair_totals[(spec_i.name, spec_j.name)]
            theirs = pair_totals[(spec_j.name, spec_i.name)]
            if mine > theirs:
                wins[spec_i.name] += 1
            elif theirs > mine:
                wins[spec_j.name] += 1
            else:
                ties[spec_i.name] += 1
                ties[spec_j.name] += 1

    ranking = tuple(sorted(averages, key=lambda n: (-averages[n], n)))
    return TournamentResult(
        roster=tuple(spec.name for spec in order),
        pair_means=pair_totals,
        averages=averages,
        standard_errors=stderrs,
        wins=wins,
        ties=ties,
        ranking=ranking,
        records=tuple(records),
        n_iter=n_iter,
        master_seed=master_seed,
        config=cfg,
    )


class UnknownPlayerError(ValueError):
    """Raised when a requested player did not take part in the tournament."""


def time_series(result: TournamentResult, subject: str, window: int = 5) -> list[tuple[int, float]]:
    """Cumulative mean payoff of `subject`, averaged across all its matches,
    sampled every `window` turns."""
    if subject not in result.roster:
        raise UnknownPlayerError(f"{subject!r} did not play; roster: {list(result.roster)}")
    per_match: list[list[tuple[int, float]]] = []
    for rec in result.records:
        if rec.player_a == subject:
            per_match.append(rec.cumulative_means(0, window))
        if rec.player_b == subject:
            per_match.append(rec.cumulative_means(1, window))
    points = []
    for k in range(len(per_match[0])):
        turn = per_match[0][k][0]
        points.append((turn, sum(series[k][1] for series in per_match) / len(per_match)))
    return points


def default_roster(p_exp: float = 0.1) -> list[PlayerSpec]:
    """The nine registry strategies plus the learning agent."""
    from .strategies import BUILTIN_STRATEGIES

    specs: list[PlayerSpec] = [MemoryOneSpec(s) for s in BUILTIN_STRATEGIES.values()]
    specs.append(PredictorSpec(p_exp=p_exp))
    return specs
