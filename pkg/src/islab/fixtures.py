"""Small named games and environments used across tests, configs and demos."""

from __future__ import annotations

from fractions import Fraction

from .cybernetic import Environment, MAX_HORIZON
from .players import GameCodec, NondetStrategy, Player, from_strategy

BITS = ("0", "1")
BIT_REWARD = {"0": 0, "1": 1}


def echo(horizon: int = MAX_HORIZON) -> Environment:
    """Percept repeats the action; reward is the percept bit."""
    return Environment(BITS, BITS, BIT_REWARD, lambda h, y: {y: Fraction(1)}, horizon, "echo")


def anti(horizon: int = MAX_HORIZON) -> Environment:
    """Percept is the negated action; reward is the percept bit."""
    return Environment(BITS, BITS, BIT_REWARD,
                       lambda h, y: {"1" if y == "0" else "0": Fraction(1)}, horizon, "anti")


def fair_coin(horizon: int = MAX_HORIZON) -> Environment:
    half = Fraction(1, 2)
    return Environment(BITS, BITS, BIT_REWARD, lambda h, y: {"0": half, "1": half}, horizon, "coin")


def biased_copy(p_one=Fraction(3, 4), horizon: int = MAX_HORIZON) -> Environment:
    """Action 1 pays off with probability p_one, action 0 never."""
    p_one = Fraction(p_one)

    def cond(h, y):
        if y == "1":
            return {"1": p_one, "0": 1 - p_one}
        return {"0": Fraction(1)}

    return Environment(BITS, BITS, BIT_REWARD, cond, horizon, f"biased({p_one})")


ENVIRONMENTS = {"echo": echo, "anti": anti, "coin": fair_coin, "biased": biased_copy}


RPS_CODEC = GameCodec(("R", "P", "S"), plies=2)


def rps_alpha() -> NondetStrategy:
    """First mover who only plays rock."""
    return NondetStrategy("first", lambda history: {"R"})


def rps_beta() -> NondetStrategy:
    """Second mover: paper first, then copy the opponent's first move."""
    return NondetStrategy("second", lambda history: {"P"} if len(history) == 1 else {history[0]})


def rps_players() -> tuple[Player, Player]:
    return from_strategy(rps_alpha(), RPS_CODEC), from_strategy(rps_beta(), RPS_CODEC)


RPS_INTERACTION = RPS_CODEC.encode_rounds([("R", "P"), ("R", "R")])
