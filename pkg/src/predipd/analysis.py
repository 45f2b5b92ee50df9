"""Exact long-run analysis of memory-one pairs and tournament-level sweeps.

A pair of memory-one strategies induces a 4-state Markov chain over the
joint outcomes (CC, CD, DC, DD) in the first player's orientation.  When
the chain has a unique stationary distribution we solve for it directly;
otherwise we fall back to seeded simulation from a uniform random initial
state, and say so in the result.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace as dc_replace
from typing import Sequence

import numpy as np

from .core import Action, OUTCOMES, PayoffMatrix, DEFAULT_PAYOFFS
from .engine import MatchConfig, PlayerSpec, PredictorSpec, run_round_robin
from .strategies import MemoryOneStrategy

_RANK_TOL = 1e-10

DIRECT_SOLVE = "direct-solve"
SIMULATION_FALLBACK = "simulation-fallback"


@dataclass(frozen=True)
class JointChain:
    """Row-stochastic 4x4 transition matrix over joint outcomes."""

    transition: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.transition, dtype=float)
        if t.shape != (4, 4):
            raise ValueError(f"transition matrix must be 4x4, got {t.shape}")
        if np.any(t < 0) or np.any(t > 1):
            raise ValueError("transition entries must lie in [0, 1]")
        if np.max(np.abs(t.sum(axis=1) - 1.0)) > 1e-12:
            raise ValueError("transition rows must sum to 1")
        t.setflags(write=False)
        object.__setattr__(self, "transition", t)


@dataclass(frozen=True)
class StationaryResult:
    distribution: np.ndarray
    method: str  # DIRECT_SOLVE or SIMULATION_FALLBACK
    ergodic: bool


@dataclass(frozen=True)
class LongRunPayoffs:
    payoff_x: float
    payoff_y: float
    method: str
    ergodic: bool


@dataclass(frozen=True)
class ZdCheck:
    """Residual of a candidate linear payoff relation Px = slope*Py + intercept."""

    residual: float
    payoff_x: float
    payoff_y: float
    method: str
    ergodic: bool

    @property
    def approximate(self) -> bool:
        return self.method == SIMULATION_FALLBACK


def build_chain(x: MemoryOneStrategy, y: MemoryOneStrategy) -> JointChain:
    """Joint transition matrix of the pair, in x's orientation."""
    t = np.zeros((4, 4))
    for i, state in enumerate(OUTCOMES):
        px = float(x.coop_prob[state])
        py = float(y.coop_prob[state.mirror])
        for j, nxt in enumerate(OUTCOMES):
            pa = px if nxt.self_action is Action.C else 1.0 - px
            pb = py if nxt.opponent_action is Action.C else 1.0 - py
            t[i, j] = pa * pb
    return JointChain(t)


def _null_space_dimension(transition: np.ndarray) -> int:
    singular = np.linalg.svd(transition.T - np.eye(4), compute_uv=False)
    return int(np.sum(singular < _RANK_TOL))


def _simulate_frequencies(
    transition: np.ndarray, steps: int, replicas: int, seed: int
) -> np.ndarray:
    """Empirical state frequencies, all replicas pooled, uniform random starts."""
    rng = np.random.default_rng(seed)
    cumulative = np.cumsum(transition, axis=1)
    states = rng.integers(0, 4, size=replicas)
    counts = np.zeros(4, dtype=np.int64)
    for _ in range(steps):
        u = rng.random(replicas)
        states = (u[:, None] > cumulative[states]).sum(axis=1)
        counts += np.bincount(states, minlength=4)
    return counts / counts.sum()


def stationary(
    chain: JointChain,
    *,
    fallback_steps: int = 10**6,
    fallback_replicas: int = 100,
    fallback_seed: int = 0,
) -> StationaryResult:
    """Stationary distribution: rank-revealing solve, or simulation if not unique."""
    t = chain.transition
    if _null_space_dimension(t) == 1:
        a = np.vstack([t.T - np.eye(4), np.ones(4)])
        b = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
        dist, *_ = np.linalg.lstsq(a, b, rcond=None)
        dist = np.clip(dist, 0.0, None)
        dist = dist / dist.sum()
        return StationaryResult(distribution=dist, method=DIRECT_SOLVE, ergodic=True)
    dist = _simulate_frequencies(t, fallback_steps, fallback_replicas, fallback_seed)
    return StationaryResult(distribution=dist, method=SIMULATION_FALLBACK, ergodic=False)


def long_run_payoffs(
    x: MemoryOneStrategy,
    y: MemoryOneStrategy,
    pm: PayoffMatrix = DEFAULT_PAYOFFS,
    **stationary_kwargs,
) -> LongRunPayoffs:
    """Per-turn payoffs of both players under the chain's long-run distribution."""
    result = stationary(build_chain(x, y), **stationary_kwargs)
    r, s, t, p = (float(pm.reward), float(pm.sucker), float(pm.temptation), float(pm.punishment))
    px = float(result.distribution @ np.array([r, s, t, p]))
    py = float(result.distribution @ np.array([r, t, s, p]))
    return LongRunPayoffs(payoff_x=px, payoff_y=py, method=result.method, ergodic=result.ergodic)


def zd_residual(
    x: MemoryOneStrategy,
    y: MemoryOneStrategy,
    slope: float,
    intercept: float,
    pm: PayoffMatrix = DEFAULT_PAYOFFS,
    **stationary_kwargs,
) -> ZdCheck:
    """How far the pair's long-run payoffs sit from Px = slope*Py + intercept."""
    lr = long_run_payoffs(x, y, pm, **stationary_kwargs)
    residual = lr.payoff_x - (slope * lr.payoff_y + intercept)
    return ZdCheck(
        residual=residual,
        payoff_x=lr.payoff_x,
        payoff_y=lr.payoff_y,
        method=lr.method,
        ergodic=lr.ergodic,
    )


def simulate_long_run(
    x: MemoryOneStrategy,
    y: MemoryOneStrategy,
    pm: PayoffMatrix = DEFAULT_PAYOFFS,
    steps: int = 10**6,
    seed: int = 0,
) -> tuple[float, float]:
    """Single-trajectory empirical payoffs; independent check on the solver."""
    chain = build_chain(x, y)
    thresholds = np.cumsum(chain.transition, axis=1)[:, :3].tolist()
    pay_x = [float(pm.payoff(o)[0]) for o in OUTCOMES]
    pay_y = [float(pm.payoff(o)[1]) for o in OUTCOMES]
    rng = random.Random(seed)
    state = rng.randrange(4)
    total_x = 0.0
    total_y = 0.0
    rnd = rng.random
    for _ in range(steps):
        u = rnd()
        t0, t1, t2 = thresholds[state]
        state = (u > t0) + (u > t1) + (u > t2)
        total_x += pay_x[state]
        total_y += pay_y[state]
    return total_x / steps, total_y / steps


@dataclass(frozen=True)
class SweepRow:
    p_exp: float
    average: float
    delta_vs_zdgtft2: float
    place: int
    wins: int


def exploration_sweep(
    roster: Sequence[PlayerSpec],
    cfg: MatchConfig,
    n_iter: int,
    p_exp_grid: Sequence[float],
    master_seed: int,
) -> list[SweepRow]:
    """One full round robin per grid point, identical seeds throughout;
    only the learning agent's exploration window changes."""
    if not any(isinstance(spec, PredictorSpec) for spec in roster):
        raise ValueError("exploration sweep needs a learning-agent roster entry")
    rows = []
    for p_exp in p_exp_grid:
        if not 0 <= p_exp <= 1:
            raise ValueError(f"p_exp grid value {p_exp} outside [0, 1]")
        point_roster = [
            dc_replace(spec, p_exp=p_exp) if isinstance(spec, PredictorSpec) else spec
            for spec in roster
        ]
        result = run_round_robin(point_roster, cfg, n_iter, master_seed)
        predictor_names = [s.name for s in point_roster if isinstance(s, PredictorSpec)]
        name = predictor_names[0]
        avg = result.averages[name]
        zd = result.averages.get("ZDGTFT-2", float("nan"))
        rows.append(
            SweepRow(
                p_exp=p_exp,
                average=avg,
                delta_vs_zdgtft2=avg - zd,
                place=result.ranking.index(name) + 1,
                wins=result.wins[name],
            )
        )
    return rows


def fit_inverse_sqrt(series: Sequence[tuple[float, float]]) -> tuple[float, float, float]:
    """Least squares fit of value ~ a + b / sqrt(n); returns (a, b, rms residual)."""
    if not series:
        raise ValueError("series must not be empty")
    n = np.array([pt[0] for pt in series], dtype=float)
    v = np.array([pt[1] for pt in series], dtype=float)
    if np.any(n < 1):
        raise ValueError("all n values must be >= 1")
    if len(series) == 1:
        return float(v[0]), 0.0, 0.0
    basis = np.column_stack([np.ones_like(n), 1.0 / np.sqrt(n)])
    coeffs, *_ = np.linalg.lstsq(basis, v, rcond=None)
    residuals = v - basis @ coeffs
    rms = float(np.sqrt(np.mean(residuals**2)))
    return float(coeffs[0]), float(coeffs[1]), rms
