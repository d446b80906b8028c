"""Bayes mixtures over small environment families and expectimax agents against them."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .complexity import lz_estimate
from .refmachine import encode_pair
from .cybernetic import (Environment, Expectimax, History, HistoryCodec, Policy, agent_set,
                         check_scale, env_set_D, optimal_value, value)


def table_bits(env: Environment) -> str:
    """Canonical bit serialization: rewards, then every conditional row in key order.

    Each probability num/den is written as the pair <bin(num), bin(den)>.
    """
    parts = [encode_pair(format(env.reward[x], "b"), x) for x in env.percepts]
    table = env.to_table()
    for key in sorted(table, key=lambda k: (len(k), k)):
        row = table[key]
        for x in env.percepts:
            p = row.get(x, Fraction(0))
            parts.append(encode_pair(format(p.numerator, "b"), format(p.denominator, "b")))
    return "".join(parts)


def description_length(env: Environment) -> int:
    """LZ78 code length of the environment's canonical table serialization."""
    return lz_estimate(table_bits(env))


def simplicity_weights(envs: Sequence[Environment]) -> list[Fraction]:
    """w_i proportional to 2^-len_i, normalized to sum to one."""
    lengths = [description_length(e) for e in envs]
    base = min(lengths)
    raw = [Fraction(1, 2 ** (l - base)) for l in lengths]
    total = sum(raw)
    return [w / total for w in raw]


@dataclass
class WeightedFamily:
    environments: list[Environment]
    weights: list[Fraction] | None = None
    name: str = "family"
    normalized: list[Fraction] = field(init=False, repr=False)

    def __post_init__(self):
        if not self.environments:
            raise ValueError("empty environment family")
        first = self.environments[0]
        for env in self.environments[1:]:
            if env.actions != first.actions or env.percepts != first.percepts:
                raise ValueError(f"{env.name} does not share alphabets with {first.name}")
        if self.weights is None:
            self.weights = simplicity_weights(self.environments)
        self.weights = [Fraction(w) for w in self.weights]
        if len(self.weights) != len(self.environments):
            raise ValueError("one weight per environment required")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        total = sum(self.weights)
        self.normalized = [w / total for w in self.weights]

    def check_proper(self, depth: int) -> None:
        for env in self.environments:
            if not env.is_proper(depth):
                raise ValueError(f"{env.name} is not a proper measure up to {depth} cycles")


class Mixture(Environment):
    """xi(h) = sum_i w_i rho_i(h), exposed through its conditionals."""

    def __init__(self, family: WeightedFamily):
        self.family = family
        first = family.environments[0]
        super().__init__(first.actions, first.percepts, first.reward, self._cond,
                         min(e.horizon for e in family.environments), f"xi[{family.name}]",
                         max(e.c for e in family.environments))
        for env in family.environments:
            if env.reward != first.reward:
                raise ValueError("family members must share the reward map")

    def _cond(self, history: History, action: str) -> dict[str, Fraction]:
        prior = [w * e.prob(history) for w, e in zip(self.family.normalized, self.family.environments)]
        total = sum(prior)
        if total == 0:
            # unreachable under every member: no evidence, so fall back to the prior
            prior, total = list(self.family.normalized), Fraction(1)
        out: dict[str, Fraction] = {}
        for w, env in zip(prior, self.family.environments):
            if w:
                for x, p in env.conditional(history, action).items():
                    out[x] = out.get(x, 0) + w * p
        return {x: p / total for x, p in out.items()}

    def posterior(self, history: History) -> list[Fraction]:
        prior = [w * e.prob(history) for w, e in zip(self.family.normalized, self.family.environments)]
        total = sum(prior)
        if total == 0:
            raise ValueError("history has zero probability under every member")
        return [p / total for p in prior]


def mixture(family: WeightedFamily) -> Mixture:
    return Mixture(family)


def aixi_policy(family: WeightedFamily, m: int) -> Policy:
    """Expectimax-optimal policy against the mixture, smallest action on ties."""
    xi = family if isinstance(family, Mixture) else mixture(family)
    check_scale(len(xi.actions), len(xi.percepts), m)
    return Expectimax(xi, m).policy(name=f"p^xi_{m}")


@dataclass
class UniversalityRow:
    environment: str
    tau: Fraction
    interacts: dict[int, bool | None]
    witness: dict[int, str | None]

    @property
    def first_m(self) -> int | None:
        hits = [m for m, ok in sorted(self.interacts.items()) if ok]
        return hits[0] if hits else None


def universality_experiment(family: WeightedFamily, taus: Sequence, m_range: Sequence[int]) -> list[UniversalityRow]:
    """For each member and threshold, does A^{p^xi_m}_m meet D^nu_{m,tau}?"""
    xi = mixture(family)
    family.check_proper(max(m_range))
    policies = {m: aixi_policy(xi, m) for m in m_range}
    rows = []
    for env in family.environments:
        for tau in taus:
            tau = Fraction(tau)
            row = UniversalityRow(env.name, tau, {}, {})
            for m in m_range:
                codec = HistoryCodec.for_env(env, m)
                try:
                    d_set = env_set_D(env, codec, tau)
                except ValueError:
                    row.interacts[m], row.witness[m] = None, None
                    continue
                common = agent_set(policies[m], codec) & d_set
                w = next(iter(common), None)
                row.interacts[m], row.witness[m] = w is not None, w
            rows.append(row)
    return rows


def value_gaps(family: WeightedFamily, m_range: Sequence[int]) -> dict[str, dict[int, Fraction]]:
    """V*_{1:m}(nu) - V^{p^xi_m, nu}_{1:m} per member and horizon."""
    xi = mixture(family)
    out: dict[str, dict[int, Fraction]] = {}
    for m in m_range:
        p = aixi_policy(xi, m)
        for env in family.environments:
            out.setdefault(env.name, {})[m] = optimal_value(env, m) - value(p, env, m)
    return out


def universality_csv(rows: list[UniversalityRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["environment", "tau", "m", "interacts", "witness"])
    for row in rows:
        for m in sorted(row.interacts):
            ok = row.interacts[m]
            w.writerow([row.environment, str(row.tau), m,
                        "undefined" if ok is None else str(ok).lower(), row.witness[m] or ""])
    return buf.getvalue()
