"""Algorithmic information of interacting players, at desk scale.

Submodules:

refmachine   the fixed reference machine and prefix-free encoders
complexity   bounded plain/Levin complexity, algorithmic mass, LZ78 estimate
players      players as sets of n-bit strings, games, Nash players
cybernetic   agents, environments, expectimax, agent/environment sets
measures     knowledge, deficiency and exchanged information
theoremlab   exhaustive existence checks over explicit families
aixi         Bayes mixtures and the universality experiment
"""

__version__ = "0.1.0"

from .complexity import (Budget, ComplexityResult, ExactBounded, LevinBounded, LZ78Estimator,
                         WitnessTable, algorithmic_mass, joint_complexity, levin_complexity,
                         lz_estimate, plain_complexity, witness_bound)
from .cybernetic import (Environment, Expectimax, HistoryCodec, Policy, ScaleLimitError, agent_set,
                         env_set_B, env_set_D, interacts_at, optimal_policy, optimal_value, value)
from .logreal import LogReal
from .measures import exchange_report
from .players import GameCodec, NormalFormGame, Player, capacity, interacts, intersect, nash_players
from .refmachine import MACHINE_VERSION, RunOutcome, encode_pair, encode_set, run

__all__ = [
    "Budget", "ComplexityResult", "ExactBounded", "LevinBounded", "LZ78Estimator", "WitnessTable",
    "algorithmic_mass", "joint_complexity", "levin_complexity", "lz_estimate", "plain_complexity",
    "witness_bound", "Environment", "Expectimax", "HistoryCodec", "Policy", "ScaleLimitError",
    "agent_set", "env_set_B", "env_set_D", "interacts_at", "optimal_policy", "optimal_value", "value",
    "LogReal", "exchange_report", "GameCodec", "NormalFormGame", "Player", "capacity", "interacts",
    "intersect", "nash_players", "MACHINE_VERSION", "RunOutcome", "encode_pair", "encode_set", "run",
]
