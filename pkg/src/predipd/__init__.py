"""Iterated prisoner's dilemma engine with an opponent-modeling lookahead agent.

Library layers:

- :mod:`predipd.core` -- actions, joint outcomes, payoff matrix
- :mod:`predipd.strategies` -- memory-one strategy library and seeded RNG streams
- :mod:`predipd.predictor` -- opponent model, two-turn lookahead, decision rule
- :mod:`predipd.engine` -- matches and round-robin tournaments
- :mod:`predipd.analysis` -- Markov-chain payoffs, ZD relations, sweeps, fits
- :mod:`predipd.cli` -- command-line front end
"""

from .core import Action, DEFAULT_PAYOFFS, JointOutcome, OUTCOMES, PayoffMatrix
from .strategies import (
    BUILTIN_STRATEGIES,
    InitialPolicy,
    MemoryOneStrategy,
    RngStream,
    UnknownStrategyError,
    as_model_view,
    builtin,
    initial_action,
    next_action,
)
from .predictor import (
    FixedModel,
    OpponentModel,
    PredictorState,
    course_value,
    decide,
    decide_at_depth,
    expected_payoff_coop,
    expected_payoff_defect,
)
from .engine import (
    MatchConfig,
    MatchRecord,
    MemoryOneSpec,
    PredictorSpec,
    TournamentResult,
    default_roster,
    play_match,
    run_round_robin,
    time_series,
)
from .analysis import (
    JointChain,
    LongRunPayoffs,
    StationaryResult,
    ZdCheck,
    build_chain,
    exploration_sweep,
    fit_inverse_sqrt,
    long_run_payoffs,
    simulate_long_run,
    stationary,
    zd_residual,
)

__version__ = "0.1.0"
