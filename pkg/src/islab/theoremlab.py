"""Existence checks for the covering, approximation, information and simplification theorems.

Each checker scans an explicit family exhaustively, returns the witness the
theorem promises (or a no-claim report when its hypothesis is empty) and
measures the additive slack between the witness complexity and the bound's
leading terms.  The hidden constants of the bounds are not asserted.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .complexity import (ComplexityModel, ExactBounded, LevinBounded, LZ78Estimator, levin_complexity,
                         lz_estimate)
from .logreal import LogReal, exact_json, render
from .measures import info_single, sub
from .players import Player, intersect
from .refmachine import encode_set


@dataclass
class PlayerFamily:
    name: str
    members: list[Player]

    def __post_init__(self):
        if not self.members:
            raise ValueError("player family must be non-empty")
        ns = {p.n for p in self.members}
        if len(ns) != 1:
            raise ValueError(f"family members use different lengths {sorted(ns)}")

    @property
    def n(self) -> int:
        return self.members[0].n

    def encoding(self) -> str:
        return encode_set(p.encode() for p in self.members)

    def index(self, player: Player) -> int:
        try:
            return self.members.index(player)
        except ValueError:
            raise ValueError(f"{player!r} is not in family {self.name}") from None


@dataclass
class TheoremReport:
    theorem: str
    inputs_digest: str
    claim: bool
    quantities: dict = field(default_factory=dict)
    witness: Player | None = None
    witness_index: int | None = None
    witness_complexity: object = None
    witness_program: str | None = None
    target: object = None
    slack: object = None
    exhaustive: bool = True
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        def num(v):
            if isinstance(v, (bool, str, int)):
                return v
            return exact_json(v)

        return {
            "theorem": self.theorem,
            "inputs_digest": self.inputs_digest,
            "claim": self.claim,
            "quantities": {k: num(v) for k, v in self.quantities.items()},
            "witness": None if self.witness is None else self.witness.members(),
            "witness_index": self.witness_index,
            "witness_complexity": num(self.witness_complexity),
            "witness_program": self.witness_program,
            "target": num(self.target),
            "slack": num(self.slack),
            "exhaustive": self.exhaustive,
            "notes": self.notes,
        }


def _digest(*parts) -> str:
    blob = json.dumps([p if isinstance(p, (str, int, dict, list)) else str(p) for p in parts], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _value(model: ComplexityModel, target: str, context):
    return model(target, context)


def _scan(model: ComplexityModel, targets: list[str], context, workers: int) -> list:
    if workers <= 1 or len(targets) < 2:
        return [model(t, context) for t in targets]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_value, [model] * len(targets), targets, [context] * len(targets)))


def _finite(v) -> bool:
    return not (v is None or (isinstance(v, float) and math.isinf(v)))


def _le(a, b) -> bool:
    if not _finite(a):
        return False
    if not _finite(b):
        return b > 0
    return LogReal.coerce(a) <= b


def _argmin(indices: list[int], values: dict[int, object]) -> int | None:
    """First index (family order) with the least finite value."""
    best = None
    for i in indices:
        v = values[i]
        if not _finite(v):
            continue
        if best is None or LogReal.coerce(v) < values[best]:
            best = i
    return best


def _floor_log2(n: int) -> int:
    return n.bit_length() - 1


def _record_witness(report: TheoremReport, model, context) -> None:
    res = model.result(report.witness.encode(), context)
    report.witness_program = res.witness if res.finite else None
    if not isinstance(model, LZ78Estimator):
        report.quantities["witness_exact"] = res.exact


def _common(report: TheoremReport, family: PlayerFamily, model: ComplexityModel, a: Player | None):
    report.quantities["family_size"] = len(family.members)
    report.quantities["family_lz"] = lz_estimate(family.encoding())
    if a is not None and isinstance(model, ExactBounded) and not isinstance(model, LevinBounded):
        report.quantities["levin_A"] = levin_complexity(a.encode(), (), model.budget).value


def check_covering(family: PlayerFamily, x: str, r, model: ComplexityModel, workers: int = 1) -> TheoremReport:
    """A string in many sets of complexity <= r lies in a set of complexity about r - k."""
    if len(x) != family.n:
        raise ValueError(f"x must have length {family.n}")
    digest = _digest("covering", family.encoding(), x, render(LogReal.coerce(r) if _finite(r) else r), model.describe())
    report = TheoremReport("covering", digest, claim=False)
    _common(report, family, model, None)
    holders = [i for i, f in enumerate(family.members) if x in f]
    values = dict(zip(holders, _scan(model, [family.members[i].encode() for i in holders], (), workers)))
    qualifying = [i for i in holders if _le(values[i], r)]
    report.quantities.update(r=r, N=len(qualifying), holders=len(holders))
    if not qualifying:
        report.notes.append("no family member of complexity <= r contains x; no claim")
        return report
    k = _floor_log2(len(qualifying))
    best = _argmin(holders, values)
    report.claim = True
    report.quantities["k"] = k
    report.witness, report.witness_index = family.members[best], best
    report.witness_complexity = values[best]
    _record_witness(report, model, ())
    report.target = sub(r, k)
    report.slack = sub(values[best], report.target)
    # reading where the bound must hold for all holders: r is their largest complexity
    finite = [values[i] for i in holders if _finite(values[i])]
    if len(finite) == len(holders):
        r_max = max(finite, key=LogReal.coerce)
        k_all = _floor_log2(len(holders))
        report.quantities.update(r_max=r_max, k_all=k_all, slack_all=sub(values[best], sub(r_max, k_all)))
    return report


def check_approximation(family: PlayerFamily, a: Player, b: Player, x: str, model: ComplexityModel,
                        workers: int = 1) -> TheoremReport:
    """A player B' ∋ x with C(B'|A) bounded by what x reveals about B."""
    b_index = family.index(b)
    if x not in intersect(a, b):
        raise ValueError(f"{x!r} is not in A ∩ B")
    enc_a, enc_b = a.encode(), b.encode()
    digest = _digest("approximation", family.encoding(), enc_a, enc_b, x, model.describe())
    report = TheoremReport("approximation", digest, claim=True)
    _common(report, family, model, a)
    r = model(enc_b, {enc_a})
    info = info_single(x, a, b, model)
    holders = [i for i, s in enumerate(family.members) if x in s]
    values = dict(zip(holders, _scan(model, [family.members[i].encode() for i in holders], {enc_a}, workers)))
    n_count = sum(1 for i in holders if _le(values[i], r))
    c_b_ax = model(enc_b, {enc_a, x})
    report.quantities.update(r=r, I=info, N=n_count, C_B_given_A_x=c_b_ax,
                             counting_residual=sub(c_b_ax, LogReal.log2(n_count)) if n_count else None,
                             slack_ceiling=sub(r, info))
    best = _argmin(holders, values)
    if best is None:
        report.claim = False
        report.notes.append("no candidate has finite conditional complexity under this model")
        return report
    report.witness, report.witness_index = family.members[best], best
    report.witness_complexity = values[best]
    _record_witness(report, model, {enc_a})
    report.quantities["C_Bprime_given_A_x"] = model(report.witness.encode(), {enc_a, x})
    report.target = info
    report.slack = sub(values[best], info)
    if b_index not in holders:
        raise AssertionError("B must contain x")
    return report


def check_info_bound(family: PlayerFamily, a: Player, b: Player, model: ComplexityModel,
                     workers: int = 1) -> TheoremReport:
    """An interacting player B' whose complexity is bounded by I(A : B)."""
    family.index(b)
    if len(intersect(a, b)) == 0:
        raise ValueError("A and B do not interact")
    enc_a, enc_b = a.encode(), b.encode()
    digest = _digest("information", family.encoding(), enc_a, enc_b, model.describe())
    report = TheoremReport("information", digest, claim=True)
    _common(report, family, model, a)
    c_b = model(enc_b, set())
    info = sub(c_b, model(enc_b, {enc_a}))
    meeting = [i for i, s in enumerate(family.members) if len(intersect(a, s)) > 0]
    values = dict(zip(meeting, _scan(model, [family.members[i].encode() for i in meeting], (), workers)))
    report.quantities.update(C_B=c_b, I_A_B=info, candidates=len(meeting))
    best = _argmin(meeting, values)
    if best is None:
        report.claim = False
        report.notes.append("no interacting member has finite complexity under this model")
        return report
    report.witness, report.witness_index = family.members[best], best
    report.witness_complexity = values[best]
    _record_witness(report, model, ())
    report.target = info
    report.slack = sub(values[best], info)
    return report


def check_simplification(family: PlayerFamily, a: Player, c: int, r, model: ComplexityModel,
                         workers: int = 1) -> TheoremReport:
    """Many players meeting A in 1..c strings imply a simpler one that does too."""
    if c < 1:
        raise ValueError("c must be >= 1")
    digest = _digest("simplification", family.encoding(), a.encode(), c,
                     render(LogReal.coerce(r) if _finite(r) else r), model.describe())
    report = TheoremReport("simplification", digest, claim=False)
    _common(report, family, model, a)
    bounded = [i for i, s in enumerate(family.members) if 0 < len(intersect(a, s)) <= c]
    values = dict(zip(bounded, _scan(model, [family.members[i].encode() for i in bounded], (), workers)))
    q = [i for i in bounded if _le(values[i], r)]
    report.quantities.update(r=r, c=c, Q=len(q), bounded=len(bounded))
    if not q:
        report.notes.append("no member meets A in 1..c strings with complexity <= r; no claim")
        return report
    k = _floor_log2(len(q))
    best = _argmin(bounded, values)
    if best is None:
        raise AssertionError("a qualifying member exists but no minimizer was found")
    report.claim = True
    report.quantities["k"] = k
    report.witness, report.witness_index = family.members[best], best
    report.witness_complexity = values[best]
    _record_witness(report, model, ())
    report.target = sub(r, k) if _finite(r) else None
    report.slack = sub(values[best], report.target) if report.target is not None else None
    return report


def reports_csv(rows: list[tuple[str, TheoremReport]]) -> str:
    """One line per (family, report) for slack-trend plots."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "theorem", "claim", "family_size", "N_or_Q", "k", "witness_index",
                "witness_complexity", "target", "slack"])
    for fam, rep in rows:
        q = rep.quantities
        w.writerow([fam, rep.theorem, str(rep.claim).lower(), q.get("family_size"),
                    q.get("N", q.get("Q", q.get("candidates"))), q.get("k", ""),
                    "" if rep.witness_index is None else rep.witness_index,
                    render(rep.witness_complexity) if rep.claim else "",
                    render(rep.target) if rep.claim else "", render(rep.slack) if rep.claim else ""])
    return buf.getvalue()
