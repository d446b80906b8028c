"""Agent/environment cycles with exact rational arithmetic.

A history is a tuple of (action, percept) pairs; actions and percepts are
fixed-width bit strings so a history of m cycles encodes as the
concatenation y1 x1 y2 x2 ... ym xm.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .players import Player

History = tuple[tuple[str, str], ...]

MAX_ALPHABET = 4
MAX_HORIZON = 6


class ScaleLimitError(ValueError):
    """Request exceeds the desk-scale limits of full-enumeration expectimax."""


def check_scale(n_actions: int, n_percepts: int, m: int) -> None:
    if n_actions > MAX_ALPHABET or n_percepts > MAX_ALPHABET or m > MAX_HORIZON:
        raise ScaleLimitError(
            f"|Y|={n_actions}, |X|={n_percepts}, m={m} exceeds "
            f"|Y|,|X| <= {MAX_ALPHABET}, m <= {MAX_HORIZON}")


def _check_alphabet(symbols, what) -> tuple[str, ...]:
    symbols = tuple(sorted(symbols))
    if not symbols:
        raise ValueError(f"empty {what} alphabet")
    widths = {len(s) for s in symbols}
    if len(widths) != 1 or len(set(symbols)) != len(symbols) or any(set(s) - {"0", "1"} for s in symbols):
        raise ValueError(f"{what} alphabet must be distinct bit strings of one width")
    return symbols


def _key(history: History, action: str | None = None) -> str:
    return "".join(y + x for y, x in history) + (action or "")


class Environment:
    """Chronological (semi)measure given by conditionals mu(x_k | yx_<k y_k).

    `conditional(history, action)` returns {percept: probability}; entries
    that are absent have probability zero.
    """

    def __init__(self, actions: Iterable[str], percepts: Iterable[str], reward: Mapping[str, int],
                 conditional: Callable[[History, str], Mapping[str, Fraction]],
                 horizon: int = MAX_HORIZON, name: str = "env", c: int | None = None):
        self.actions = _check_alphabet(actions, "action")
        self.percepts = _check_alphabet(percepts, "percept")
        self.reward = {x: int(reward[x]) for x in self.percepts}
        self.c = max(self.reward.values()) if c is None else int(c)
        if any(not 0 <= r <= self.c for r in self.reward.values()):
            raise ValueError(f"rewards must lie in [0, {self.c}]")
        self._conditional = conditional
        self.horizon = horizon
        self.name = name
        self._cond_memo: dict[str, dict[str, Fraction]] = {}
        self._prob_memo: dict[History, Fraction] = {(): Fraction(1)}

    @property
    def w_y(self) -> int:
        return len(self.actions[0])

    @property
    def w_x(self) -> int:
        return len(self.percepts[0])

    def conditional(self, history: History, action: str) -> dict[str, Fraction]:
        key = _key(history, action)
        got = self._cond_memo.get(key)
        if got is None:
            raw = self._conditional(history, action)
            got = {x: Fraction(p) for x, p in raw.items() if Fraction(p) != 0}
            if set(got) - set(self.percepts):
                raise ValueError(f"{self.name}: unknown percepts {sorted(set(got) - set(self.percepts))}")
            if any(p < 0 for p in got.values()) or sum(got.values()) > 1:
                raise ValueError(f"{self.name}: conditional at {key!r} is not a semimeasure")
            self._cond_memo[key] = got
        return got

    def prob(self, history: History) -> Fraction:
        """Joint mu(y x_{1:k}) with the actions taken as given."""
        got = self._prob_memo.get(history)
        if got is None:
            head, (y, x) = history[:-1], history[-1]
            got = self.prob(head) * self.conditional(head, y).get(x, Fraction(0))
            self._prob_memo[history] = got
        return got

    def r(self, history: History) -> int:
        return sum(self.reward[x] for _, x in history)

    def is_proper(self, depth: int | None = None) -> bool:
        """True when every conditional up to `depth` cycles sums to exactly 1."""
        depth = self.horizon if depth is None else depth
        for h in all_histories(self.actions, self.percepts, depth - 1, prefixes=True):
            for y in self.actions:
                if sum(self.conditional(h, y).values()) != 1:
                    return False
        return True

    def to_table(self, depth: int | None = None) -> dict[str, dict[str, Fraction]]:
        depth = self.horizon if depth is None else depth
        table = {}
        for h in all_histories(self.actions, self.percepts, depth - 1, prefixes=True):
            for y in self.actions:
                table[_key(h, y)] = dict(sorted(self.conditional(h, y).items()))
        return table

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "actions": list(self.actions),
            "percepts": list(self.percepts),
            "reward": dict(self.reward),
            "c": self.c,
            "horizon": self.horizon,
            "table": {k: {x: str(p) for x, p in v.items()} for k, v in self.to_table().items()},
        }

    def serialize(self) -> str:
        """Canonical text form; equal environments give equal strings."""
        return json.dumps(self.to_json() | {"name": ""}, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_table(cls, actions, percepts, reward, table: Mapping[str, Mapping[str, object]],
                   horizon: int, name: str = "env", c: int | None = None) -> "Environment":
        actions = _check_alphabet(actions, "action")
        percepts = _check_alphabet(percepts, "percept")
        wy, wx = len(actions[0]), len(percepts[0])
        parsed = {}
        for key, row in table.items():
            k, rem = divmod(len(key) - wy, wy + wx)
            if rem or k < 0 or k >= horizon or set(key) - {"0", "1"}:
                raise ValueError(f"table key {key!r} is not a history ending in an action")
            parsed[key] = {x: Fraction(p) for x, p in row.items()}

        def conditional(history, action):
            return parsed.get(_key(history, action), {})

        env = cls(actions, percepts, reward, conditional, horizon, name, c)
        env.to_table()  # validates every row
        return env

    @classmethod
    def from_json(cls, data: Mapping) -> "Environment":
        return cls.from_table(data["actions"], data["percepts"], data["reward"], data["table"],
                              int(data["horizon"]), data.get("name", "env"), data.get("c"))

    def __repr__(self):
        return f"Environment({self.name!r}, |Y|={len(self.actions)}, |X|={len(self.percepts)})"


class Policy:
    """Deterministic map from the percept history x_<k to the next action."""

    def __init__(self, decide: Callable[[tuple[str, ...]], str], actions: Iterable[str],
                 percepts: Iterable[str], horizon: int, name: str = "policy"):
        self._decide = decide
        self.actions = _check_alphabet(actions, "action")
        self.percepts = _check_alphabet(percepts, "percept")
        self.horizon = horizon
        self.name = name

    def __call__(self, percepts_so_far: tuple[str, ...]) -> str:
        y = self._decide(tuple(percepts_so_far))
        if y not in self.actions:
            raise ValueError(f"policy {self.name} returned unknown action {y!r}")
        return y

    def actions_for(self, percepts: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(self(percepts[:k]) for k in range(len(percepts) + 1))

    def to_table(self) -> dict[str, str]:
        out = {}
        for k in range(self.horizon):
            for xs in itertools.product(self.percepts, repeat=k):
                out["".join(xs)] = self(xs)
        return out

    def to_json(self) -> dict:
        return {"name": self.name, "actions": list(self.actions), "percepts": list(self.percepts),
                "horizon": self.horizon, "table": self.to_table()}

    @classmethod
    def from_json(cls, data: Mapping) -> "Policy":
        percepts = _check_alphabet(data["percepts"], "percept")
        w = len(percepts[0])
        table = dict(data["table"])

        def decide(xs):
            key = "".join(xs)
            if key not in table:
                raise ValueError(f"policy table has no entry for percepts {key!r}")
            return table[key]

        p = cls(decide, data["actions"], percepts, int(data["horizon"]), data.get("name", "policy"))
        for key in table:
            if len(key) % w or len(key) // w >= p.horizon:
                raise ValueError(f"policy table key {key!r} is not a percept history")
        p.to_table()
        return p

    @classmethod
    def constant(cls, action: str, actions, percepts, horizon: int) -> "Policy":
        return cls(lambda xs: action, actions, percepts, horizon, name=f"always-{action}")


@dataclass(frozen=True)
class HistoryCodec:
    w_y: int
    w_x: int
    m: int

    @property
    def n(self) -> int:
        return self.m * (self.w_y + self.w_x)

    def encode(self, history: History) -> str:
        if len(history) != self.m:
            raise ValueError(f"expected {self.m} cycles, got {len(history)}")
        return _key(history)

    def decode(self, bits: str) -> History:
        if len(bits) != self.n:
            raise ValueError("wrong history length")
        step = self.w_y + self.w_x
        return tuple((bits[i:i + self.w_y], bits[i + self.w_y:i + step]) for i in range(0, len(bits), step))

    @classmethod
    def for_env(cls, env: Environment, m: int) -> "HistoryCodec":
        return cls(env.w_y, env.w_x, m)


def all_histories(actions, percepts, m: int, prefixes: bool = False) -> Iterator[History]:
    """Every action/percept history of exactly m cycles (or of 0..m cycles)."""
    lengths = range(m + 1) if prefixes else (m,)
    for k in lengths:
        for combo in itertools.product(itertools.product(actions, percepts), repeat=k):
            yield tuple(combo)


def support(env: Environment, m: int, prefix: History = ()) -> Iterator[History]:
    """Histories of m cycles extending `prefix` with positive probability, in canonical order."""
    if len(prefix) == m:
        yield prefix
        return
    for y in env.actions:
        for x, p in sorted(env.conditional(prefix, y).items()):
            if p > 0:
                yield from support(env, m, prefix + ((y, x),))


def _check_compatible(p: Policy, env: Environment):
    if p.actions != env.actions or p.percepts != env.percepts:
        raise ValueError(f"policy {p.name} and environment {env.name} use different alphabets")


def value(p: Policy, env: Environment, m: int) -> Fraction:
    """Expected reward sum of `p` in `env` over m cycles."""
    _check_compatible(p, env)
    if m > p.horizon:
        raise ValueError(f"horizon {m} exceeds policy horizon {p.horizon}")

    def go(history: History, xs: tuple[str, ...]) -> Fraction:
        if len(history) == m:
            return Fraction(0)
        y = p(xs)
        total = Fraction(0)
        for x, q in env.conditional(history, y).items():
            total += q * (env.reward[x] + go(history + ((y, x),), xs + (x,)))
        return total

    return go((), ())


class Expectimax:
    """Backward-induction values for one environment and horizon."""

    def __init__(self, env: Environment, m: int):
        self.env = env
        self.m = m
        self._memo: dict[History, tuple[Fraction, str]] = {}

    def q(self, history: History, y: str) -> Fraction:
        total = Fraction(0)
        for x, p in self.env.conditional(history, y).items():
            total += p * (self.env.reward[x] + self.future(history + ((y, x),)))
        return total

    def _solve(self, history: History) -> tuple[Fraction, str]:
        got = self._memo.get(history)
        if got is None:
            best_v, best_y = None, self.env.actions[0]
            if len(history) < self.m:
                for y in self.env.actions:  # sorted, so ties keep the smallest action
                    v = self.q(history, y)
                    if best_v is None or v > best_v:
                        best_v, best_y = v, y
            got = (best_v or Fraction(0), best_y)
            self._memo[history] = got
        return got

    def future(self, history: History) -> Fraction:
        """Optimal expected reward over cycles len(history)+1 .. m."""
        return self._solve(history)[0]

    def best_action(self, history: History) -> str:
        return self._solve(history)[1]

    def policy(self, name: str | None = None) -> Policy:
        env = self.env

        def decide(xs: tuple[str, ...]) -> str:
            history: History = ()
            for x in xs:
                history += ((self.best_action(history), x),)
            return self.best_action(history)

        return Policy(decide, env.actions, env.percepts, self.m, name or f"p^{env.name}_{self.m}")


def optimal_value(env: Environment, m: int, history: History = ()) -> Fraction:
    """Realized reward of `history` plus the optimal expected reward of the remaining cycles."""
    if len(history) > m:
        raise ValueError("history longer than the horizon")
    if history and env.prob(history) == 0:
        raise ValueError(f"history {_key(history)!r} is outside the support of {env.name}")
    return env.r(history) + Expectimax(env, m).future(history)


def optimal_policy(env: Environment, m: int) -> Policy:
    """Arg-max policy with ties broken toward the lexicographically smallest action."""
    return Expectimax(env, m).policy()


def agent_set(p: Policy, codec: HistoryCodec) -> Player:
    """All histories whose actions follow `p`; percepts are unconstrained."""
    members = []
    for xs in itertools.product(p.percepts, repeat=codec.m):
        ys = p.actions_for(xs[:-1]) if codec.m else ()
        members.append(codec.encode(tuple(zip(ys, xs))))
    return Player(codec.n, members)


def env_set_B(env: Environment, codec: HistoryCodec, tau) -> Player:
    """Supported histories whose total reward is at least tau."""
    tau = Fraction(tau)
    return Player(codec.n, (codec.encode(h) for h in support(env, codec.m) if env.r(h) >= tau))


def env_set_D(env: Environment, codec: HistoryCodec, tau) -> Player:
    """Supported histories where every prefix keeps V*(prefix) >= tau * V*."""
    tau = Fraction(tau)
    solver = Expectimax(env, codec.m)
    v_star = solver.future(())
    if v_star == 0:
        raise ValueError(f"optimal value of {env.name} at m={codec.m} is 0; ratio undefined")
    members = []
    for h in support(env, codec.m):
        if all((env.r(h[:k]) + solver.future(h[:k])) / v_star >= tau for k in range(1, codec.m + 1)):
            members.append(codec.encode(h))
    return Player(codec.n, members)


def interacts_at(p: Policy, env: Environment, m: int, tau, variant: str = "B") -> tuple[bool, str | None]:
    """Whether A^p_m meets B (or D); returns one witness history when it does."""
    _check_compatible(p, env)
    codec = HistoryCodec.for_env(env, m)
    builder = {"B": env_set_B, "D": env_set_D}[variant]
    common = agent_set(p, codec) & builder(env, codec, tau)
    first = next(iter(common), None)
    return first is not None, first
