"""Experiment configs: JSON schema, loading, and execution into report dicts."""

from __future__ import annotations

import hashlib
import itertools
import json
from fractions import Fraction
from pathlib import Path

import jsonschema

from . import aixi, cybernetic, fixtures, measures, theoremlab
from .complexity import (Budget, ExactBounded, LevinBounded, LZ78Estimator, algorithmic_mass,
                         levin_complexity, lz_estimate, plain_complexity)
from .logreal import exact_json, render
from .players import NormalFormGame, Player, intersect, nash_players, pure_nash
from .refmachine import MACHINE_VERSION


class ConfigError(ValueError):
    """Config does not match the schema."""


class MissingInput(FileNotFoundError):
    pass


BITS = {"type": "string", "pattern": "^[01]*$"}
RATIONAL = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}

PLAYER = {"oneOf": [
    {"type": "object", "additionalProperties": False, "required": ["n", "members"],
     "properties": {"n": {"type": "integer", "minimum": 0}, "members": {"type": "array", "items": BITS}}},
    {"type": "object", "additionalProperties": False, "required": ["file"],
     "properties": {"file": {"type": "string"}}},
    {"type": "object", "additionalProperties": False, "required": ["fixture"],
     "properties": {"fixture": {"enum": ["rps_A", "rps_B"]}}},
]}

FAMILY = {"oneOf": [
    {"type": "array", "minItems": 1, "items": PLAYER},
    {"type": "object", "additionalProperties": False, "required": ["generate", "n"],
     "properties": {"generate": {"enum": ["subsets", "singletons"]},
                    "n": {"type": "integer", "minimum": 0, "maximum": 8},
                    "size": {"type": "integer", "minimum": 0},
                    "extra": {"type": "array", "items": PLAYER}}},
]}

MODEL = {"type": "object", "additionalProperties": False, "required": ["name"],
         "properties": {"name": {"enum": ["ExactBounded", "LevinBounded", "LZ78"]},
                        "L": {"type": "integer", "minimum": 0, "maximum": 24},
                        "T": {"type": "integer", "minimum": 1}}}

ENVIRONMENT = {"oneOf": [
    {"type": "object", "additionalProperties": False, "required": ["fixture"],
     "properties": {"fixture": {"enum": sorted(fixtures.ENVIRONMENTS)},
                    "horizon": {"type": "integer", "minimum": 1}}},
    {"type": "object", "additionalProperties": False, "required": ["file"],
     "properties": {"file": {"type": "string"}}},
    {"type": "object", "additionalProperties": False,
     "required": ["actions", "percepts", "reward", "horizon", "table"],
     "properties": {"name": {"type": "string"}, "actions": {"type": "array", "items": BITS},
                    "percepts": {"type": "array", "items": BITS},
                    "reward": {"type": "object", "additionalProperties": {"type": "integer", "minimum": 0}},
                    "c": {"type": "integer", "minimum": 0}, "horizon": {"type": "integer", "minimum": 1},
                    "table": {"type": "object", "additionalProperties": {
                        "type": "object", "additionalProperties": RATIONAL}}}},
]}

POLICY = {"oneOf": [
    {"type": "object", "additionalProperties": False, "required": ["constant"],
     "properties": {"constant": BITS}},
    {"type": "object", "additionalProperties": False, "required": ["optimal"],
     "properties": {"optimal": {"const": True}}},
    {"type": "object", "additionalProperties": False, "required": ["file"],
     "properties": {"file": {"type": "string"}}},
    {"type": "object", "additionalProperties": False, "required": ["actions", "percepts", "horizon", "table"],
     "properties": {"name": {"type": "string"}, "actions": {"type": "array", "items": BITS},
                    "percepts": {"type": "array", "items": BITS}, "horizon": {"type": "integer"},
                    "table": {"type": "object", "additionalProperties": BITS}}},
]}

PAYOFF = {"type": "object", "additionalProperties": RATIONAL, "propertyNames": {"pattern": "^[01]*,[01]*$"}}

COMMON = {"kind": {"type": "string"}, "output": {"type": "string"}, "csv": {"type": "string"}}


def _kind(name, props, required=()):
    return {"type": "object", "additionalProperties": False,
            "required": ["kind", *required],
            "properties": {**COMMON, **props, "kind": {"const": name}}}


SCHEMA = {"oneOf": [
    _kind("complexity", {"target": BITS, "context": {"type": "array", "items": BITS},
                         "measures": {"type": "array", "items": {"enum": ["plain", "levin", "mass", "lz"]}},
                         "L": MODEL["properties"]["L"], "T": MODEL["properties"]["T"]}, ["target"]),
    _kind("measures", {"A": PLAYER, "B": PLAYER, "x": BITS, "models": {"type": "array", "items": MODEL}},
          ["A", "B", "x"]),
    _kind("game", {"fixture": {"enum": ["rps"]}, "n": {"type": "integer", "minimum": 1, "maximum": 4},
                   "p": PAYOFF, "q": PAYOFF}),
    _kind("cybernetic", {"environment": ENVIRONMENT, "policy": POLICY, "m": {"type": "integer", "minimum": 1},
                         "tau": RATIONAL, "variant": {"enum": ["B", "D"]}}, ["environment", "policy", "m"]),
    _kind("theorem1", {"family": FAMILY, "x": BITS, "r": {"oneOf": [RATIONAL, {"const": "max"}]},
                       "model": MODEL}, ["family", "x"]),
    _kind("theorem2", {"family": FAMILY, "A": PLAYER, "B": PLAYER, "x": BITS, "model": MODEL},
          ["family", "A", "B", "x"]),
    _kind("theorem3", {"family": FAMILY, "A": PLAYER, "B": PLAYER, "model": MODEL}, ["family", "A", "B"]),
    _kind("theorem4", {"family": FAMILY, "A": PLAYER, "c": {"type": "integer", "minimum": 1},
                       "r": {"oneOf": [RATIONAL, {"const": "max"}]}, "model": MODEL}, ["family", "A", "c"]),
    _kind("aixi", {"environments": {"type": "array", "minItems": 1, "items": ENVIRONMENT},
                   "weights": {"type": "array", "items": RATIONAL},
                   "taus": {"type": "array", "items": RATIONAL},
                   "m_range": {"type": "array", "items": {"type": "integer", "minimum": 1}}},
          ["environments"]),
]}


def validate(config: dict) -> None:
    if not isinstance(config, dict) or "kind" not in config:
        raise ConfigError("config must be an object with a 'kind' field")
    kinds = [s["properties"]["kind"]["const"] for s in SCHEMA["oneOf"]]
    if config["kind"] not in kinds:
        raise ConfigError(f"unknown kind {config['kind']!r}; expected one of {kinds}")
    schema = SCHEMA["oneOf"][kinds.index(config["kind"])]
    try:
        jsonschema.validate(config, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"{where}: {exc.message}") from None


def load_config(path: str | Path) -> tuple[dict, Path]:
    path = Path(path)
    if not path.exists():
        raise MissingInput(f"config file not found: {path}")
    try:
        config = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    validate(config)
    return config, path.parent


def digest(config: dict) -> str:
    return hashlib.sha256(json.dumps(config, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


# -- object loading ---------------------------------------------------------

class Loader:
    def __init__(self, base: Path, workers: int = 1, cache=None):
        self.base = base
        self.workers = workers
        self.cache = cache

    def _read(self, name: str) -> str:
        path = self.base / name
        if not path.exists():
            raise MissingInput(f"referenced file not found: {path}")
        return path.read_text()

    def player(self, spec) -> Player:
        if "fixture" in spec:
            a, b = fixtures.rps_players()
            return a if spec["fixture"] == "rps_A" else b
        if "file" in spec:
            return Player.from_text(self._read(spec["file"]))
        return Player(spec["n"], spec["members"])

    def family(self, spec, name="family") -> theoremlab.PlayerFamily:
        if isinstance(spec, list):
            return theoremlab.PlayerFamily(name, [self.player(p) for p in spec])
        universe = ["".join(b) for b in itertools.product("01", repeat=spec["n"])]
        size = 1 if spec["generate"] == "singletons" else spec.get("size", 2)
        members = [Player(spec["n"], combo) for combo in itertools.combinations(universe, size)]
        members += [self.player(p) for p in spec.get("extra", [])]
        return theoremlab.PlayerFamily(f"{spec['generate']}(n={spec['n']},size={size})", members)

    def model(self, spec):
        spec = spec or {"name": "LZ78"}
        if spec["name"] == "LZ78":
            return LZ78Estimator()
        budget = Budget(spec.get("L", 20), spec.get("T", 10_000))
        cls = ExactBounded if spec["name"] == "ExactBounded" else LevinBounded
        return cls(budget, workers=self.workers, cache=self.cache)

    def environment(self, spec, horizon=None):
        if "fixture" in spec:
            return fixtures.ENVIRONMENTS[spec["fixture"]](horizon=spec.get("horizon", horizon or cybernetic.MAX_HORIZON))
        if "file" in spec:
            data = json.loads(self._read(spec["file"]))
            return cybernetic.Environment.from_json(data)
        return cybernetic.Environment.from_json(spec)

    def policy(self, spec, env, m):
        if "constant" in spec:
            return cybernetic.Policy.constant(spec["constant"], env.actions, env.percepts, m)
        if "optimal" in spec:
            return cybernetic.optimal_policy(env, m)
        data = json.loads(self._read(spec["file"])) if "file" in spec else spec
        return cybernetic.Policy.from_json(data)


def _r_value(spec, family, model, select):
    if spec is None or spec == "max":
        values = [model(p.encode(), ()) for p in family.members if select(p)]
        finite = [v for v in values if not isinstance(v, float)]
        return max(finite) if finite else 0
    return Fraction(spec)


def _payoff(table: dict, n: int) -> NormalFormGame:
    parsed = {tuple(k.split(",")): Fraction(v) for k, v in table.items()}
    return NormalFormGame(n, lambda x, y: parsed.get((x, y), Fraction(0)))


# -- execution --------------------------------------------------------------

def execute(config: dict, base: Path, workers: int = 1, cache=None) -> tuple[dict, str | None]:
    """Run one experiment; returns (report body, optional CSV text)."""
    ld = Loader(base, workers, cache)
    kind = config["kind"]
    csv_text = None

    if kind == "complexity":
        budget = Budget(config.get("L", 20), config.get("T", 10_000))
        x, ctx = config["target"], config.get("context", [])
        body = {"target": x, "context": ctx, "budget": {"L": budget.L, "T": budget.T}}
        for m in config.get("measures", ["plain", "levin", "lz"]):
            if m == "plain":
                r = plain_complexity(x, ctx, budget, workers, cache)
                body["plain"] = {"value": exact_json(r.value), "exact": r.exact, "witness": r.witness}
            elif m == "levin":
                r = levin_complexity(x, ctx, budget, workers, cache)
                body["levin"] = {"value": exact_json(r.value), "exact": r.exact, "witness": r.witness}
            elif m == "mass":
                body["mass"] = str(algorithmic_mass(x, budget, ctx, workers))
            else:
                body["lz"] = lz_estimate(x, ctx)

    elif kind == "measures":
        a, b, x = ld.player(config["A"]), ld.player(config["B"]), config["x"]
        reports = []
        for spec in config.get("models", [{"name": "LZ78"}]):
            model = ld.model(spec)
            rep = measures.exchange_report(a, b, x, model).to_json()
            rep["model"] = model.describe()
            reports.append(rep)
        body = {"x": x, "reports": reports}

    elif kind == "game":
        if "p" in config:
            n = config.get("n", 1)
            g, h = _payoff(config["p"], n), _payoff(config.get("q", config["p"]), n)
            a, b = nash_players(g, h)
            body = {"pure_nash": [list(e) for e in pure_nash(g, h)]}
        else:
            a, b = fixtures.rps_players()
            body = {"codec": {"alphabet": list(fixtures.RPS_CODEC.alphabet), "width": fixtures.RPS_CODEC.width,
                              "plies": fixtures.RPS_CODEC.plies}}
        ab = intersect(a, b)
        body.update(A=a.members(), B=b.members(), intersection=ab.members(),
                    capacity_A=len(a), capacity_B=len(b), interacts=len(ab) > 0)

    elif kind == "cybernetic":
        m = config["m"]
        env = ld.environment(config["environment"], m)
        pol = ld.policy(config["policy"], env, m)
        tau = Fraction(config.get("tau", 0))
        variant = config.get("variant", "B")
        codec = cybernetic.HistoryCodec.for_env(env, m)
        builder = cybernetic.env_set_B if variant == "B" else cybernetic.env_set_D
        env_set = builder(env, codec, tau)
        ok, wit = cybernetic.interacts_at(pol, env, m, tau, variant)
        body = {"environment": env.name, "policy": pol.name, "m": m, "tau": str(tau), "variant": variant,
                "value": str(cybernetic.value(pol, env, m)),
                "optimal_value": str(cybernetic.optimal_value(env, m)),
                "agent_set": cybernetic.agent_set(pol, codec).members(),
                "environment_set": env_set.members(), "interacts": ok, "witness": wit}

    elif kind.startswith("theorem"):
        family = ld.family(config["family"])
        model = ld.model(config.get("model"))
        if kind == "theorem1":
            x = config["x"]
            r = _r_value(config.get("r"), family, model, lambda p: x in p)
            rep = theoremlab.check_covering(family, x, r, model, workers)
        elif kind == "theorem2":
            rep = theoremlab.check_approximation(family, ld.player(config["A"]), ld.player(config["B"]),
                                                 config["x"], model, workers)
        elif kind == "theorem3":
            rep = theoremlab.check_info_bound(family, ld.player(config["A"]), ld.player(config["B"]),
                                              model, workers)
        else:
            a, c = ld.player(config["A"]), config["c"]
            r = _r_value(config.get("r"), family, model, lambda p: 0 < len(intersect(a, p)) <= c)
            rep = theoremlab.check_simplification(family, a, c, r, model, workers)
        body = {"family": family.name, "model": model.describe(), "report": rep.to_json()}
        csv_text = theoremlab.reports_csv([(family.name, rep)])

    elif kind == "aixi":
        m_range = config.get("m_range", list(range(1, 7)))
        envs = [ld.environment(e, max(m_range)) for e in config["environments"]]
        weights = [Fraction(w) for w in config["weights"]] if "weights" in config else None
        family = aixi.WeightedFamily(envs, weights, "+".join(e.name for e in envs))
        for m in m_range:
            cybernetic.check_scale(len(envs[0].actions), len(envs[0].percepts), m)
        taus = [Fraction(t) for t in config.get("taus", ["1/2"])]
        rows = aixi.universality_experiment(family, taus, m_range)
        gaps = aixi.value_gaps(family, m_range)
        xi = aixi.mixture(family)
        body = {
            "weights": [str(w) for w in family.normalized],
            "values": {str(m): str(cybernetic.value(aixi.aixi_policy(xi, m), xi, m)) for m in m_range},
            "gaps": {name: {str(m): str(g) for m, g in per.items()} for name, per in gaps.items()},
            "rows": [{"environment": r.environment, "tau": str(r.tau), "first_m": r.first_m,
                      "interacts": {str(m): v for m, v in r.interacts.items()},
                      "witness": {str(m): w for m, w in r.witness.items()}} for r in rows],
        }
        csv_text = aixi.universality_csv(rows)
    else:  # pragma: no cover - schema rejects it
        raise ConfigError(f"unknown kind {kind}")

    return {"kind": kind, "machine": MACHINE_VERSION, "config_digest": digest(config), "result": body}, csv_text


__all__ = ["ConfigError", "MissingInput", "SCHEMA", "validate", "load_config", "execute", "digest", "render"]
