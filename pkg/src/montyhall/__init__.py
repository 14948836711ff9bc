"""Exact game-theoretic analysis of the n-door Monty Hall problem."""

from .bayes import Prior, RevealKernel, bayes_optimal, verify_bayes_optimality, win_probability
from .core import Action, AdversaryState, Strategy, host_reveal_target, payoff, play
from .dominance import (
    DominanceCertificate,
    TheoremViolation,
    construct_dominator,
    strictness_report,
    verify_dominance_theorem,
    weakly_dominates,
)
from .minimax import (
    AdversaryMix,
    MixedStrategy,
    fictitious_play,
    game_value,
    security_level_col,
    security_level_row,
    uniform_switch_mix,
    uniform_theta_mix,
    verify_saddle_point,
)
from .montecarlo import SimulationResult, SimulationSpec, simulate, sweep
from .space import (
    PayoffTable,
    build_payoff_table,
    enumerate_adversary_states,
    enumerate_strategies,
)

__version__ = "0.1.0"
