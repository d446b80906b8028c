"""Information exchanged between players, for any complexity model.

Quantities are exact ``LogReal`` values.  ``math.inf`` is the definitional
infinity (e.g. a deficiency outside the set); ``None`` marks an undefined
quantity, which is what any arithmetic involving infinity produces.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .complexity import ComplexityModel
from .logreal import LogReal, exact_json, render
from .players import Player, intersect

log = logging.getLogger(__name__)


class IdentityViolation(RuntimeError):
    pass


def _undefined(v) -> bool:
    return v is None or (isinstance(v, float) and math.isinf(v))


def add(*terms):
    if any(_undefined(t) for t in terms):
        return None
    total = LogReal()
    for t in terms:
        total = total + t
    return total


def sub(a, b):
    if _undefined(a) or _undefined(b):
        return None
    return LogReal.coerce(a) - b


def log2(n) -> LogReal:
    return LogReal.log2(n)


def _same_n(a: Player, b: Player):
    if a.n != b.n:
        raise ValueError(f"players over different lengths ({a.n} vs {b.n})")


def knowledge(a: Player, b: Player, model: ComplexityModel):
    """R(B|A) = C(A ∩ B | A)."""
    _same_n(a, b)
    return model(intersect(a, b).encode(), {a.encode()})


def deficiency_subset(s: Player, a: Player, model: ComplexityModel):
    """|A| - C(S|A) for S ⊆ A, infinite otherwise."""
    if not s.issubset(a):
        return math.inf
    return sub(len(a), model(s.encode(), {a.encode()}))


def _context(players) -> set[str]:
    return {p.encode() for p in players}


def deficiency_single(x: str, s, model: ComplexityModel):
    """log|S| - C(x|S) for x in S; `s` may be a Player or a pair (A, B) meaning S = A ∩ B."""
    if isinstance(s, Player):
        members, ctx = s, _context([s])
    else:
        a, b = s
        members, ctx = intersect(a, b), _context([a, b])
    if x not in members or len(members) == 0:
        return math.inf
    return sub(log2(len(members)), model(x, ctx))


def info_single(x: str, a: Player, b: Player, model: ComplexityModel):
    """I(x : B|A) = C(x|A) - C(x|A, B)."""
    return sub(model(x, _context([a])), model(x, _context([a, b])))


def mutual_info(x: str, y: str, model: ComplexityModel):
    """I(x : y) = C(y) - C(y|x)."""
    return sub(model(y, set()), model(y, {x}))


def mutual_info_cond(x: str, y: str, z: str, model: ComplexityModel):
    """I(x : y|z) = C(y|z) - C(y|x, z)."""
    return sub(model(y, {z}), model(y, {x, z}))


@dataclass
class ExchangeReport:
    model: str
    size_a: int
    size_b: int
    size_ab: int
    knowledge: object                 # R(B|A)
    deficiency_ab: object             # δ(A∩B|A)
    info_x_b_given_a: object          # I(x:B|A)
    deficiency_x_a: object            # δ(x|A)
    deficiency_x_ab: object           # δ(x|A,B)
    info_x_a_given_b: object = None   # I(x:A|B)
    deficiency_x_b: object = None     # δ(x|B)
    eq2_residual: object = None
    eq5_residual: object = None
    eq6_residual: object = None
    corollary: dict | None = None
    extra: dict = field(default_factory=dict)

    _EXACT = ("knowledge", "deficiency_ab", "info_x_b_given_a", "deficiency_x_a", "deficiency_x_ab",
              "info_x_a_given_b", "deficiency_x_b", "eq2_residual", "eq5_residual", "eq6_residual")

    def to_json(self) -> dict:
        out = {"model": self.model, "size_a": self.size_a, "size_b": self.size_b, "size_ab": self.size_ab}
        for name in self._EXACT:
            v = getattr(self, name)
            out[name] = exact_json(v)
        if self.corollary is not None:
            out["corollary"] = {k: exact_json(v) for k, v in self.corollary.items()}
        out.update(self.extra)
        return out


def _check_zero(name, residual):
    if residual is not None and not LogReal.coerce(residual).is_zero():
        raise IdentityViolation(f"{name} residual is {render(residual)}, expected 0")


def exchange_report(a: Player, b: Player, x: str, model: ComplexityModel) -> ExchangeReport:
    """All single-interaction quantities for x ∈ A ∩ B, with identity residuals.

    The knowledge identity R(B|A) + δ(A∩B|A) = |A| and the single-interaction
    identity hold for any model; the equal-capacity exchange identity holds
    exactly here because conditioning on {A, B} is order-free.
    """
    _same_n(a, b)
    ab = intersect(a, b)
    if x not in ab:
        raise ValueError(f"{x!r} is not in A ∩ B")
    r = knowledge(a, b, model)
    d_ab = deficiency_subset(ab, a, model)
    i_b = info_single(x, a, b, model)
    d_xa = deficiency_single(x, a, model)
    d_xab = deficiency_single(x, (a, b), model)
    rep = ExchangeReport(model.name, len(a), len(b), len(ab), r, d_ab, i_b, d_xa, d_xab)

    rep.eq2_residual = sub(add(r, d_ab), len(a))
    rep.eq5_residual = sub(add(i_b, d_xa), add(log2(len(a)) - log2(len(ab)), d_xab))
    _check_zero("knowledge identity", rep.eq2_residual)
    _check_zero("single-interaction identity", rep.eq5_residual)

    rep.info_x_a_given_b = info_single(x, b, a, model)
    rep.deficiency_x_b = deficiency_single(x, b, model)
    if len(a) == len(b):
        rep.eq6_residual = sub(add(i_b, d_xa), add(rep.info_x_a_given_b, rep.deficiency_x_b))
        _check_zero("equal-capacity exchange identity", rep.eq6_residual)

    if len(ab) == 1:
        lhs = sub(log2(len(a)), model(x, _context([a, b])))
        resid = sub(lhs, log2(len(a)))
        rep.corollary = {"lhs": lhs, "residual_vs_log_a": resid}
        log.info("deterministic interaction: I + δ = %s, residual vs log|A| = %s", render(lhs), render(resid))
    return rep
