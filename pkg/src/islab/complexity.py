"""Resource-bounded complexity over the reference machine.

Every search walks programs in one fixed total order, length first and then
the numeric value of the program bits, so results do not depend on how the
program space is partitioned across workers.

A program's behaviour depends only on its complete opcodes: the trailing
``l mod 3`` bits are never executed and only cause the final fetch to fail,
which an opcode-only program does anyway.  The searches therefore execute
each opcode sequence once and account for the 2**r programs of length
``3k + r`` that share it.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .logreal import INF, LogReal
from .refmachine import Kind, execute, match_brackets, encode_set, run, is_valid


@dataclass(frozen=True)
class Budget:
    max_program_bits: int = 20
    max_steps: int = 10_000

    def __post_init__(self):
        if self.max_program_bits < 0:
            raise ValueError("max_program_bits must be >= 0")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")

    @property
    def L(self) -> int:
        return self.max_program_bits

    @property
    def T(self) -> int:
        return self.max_steps


DEFAULT_BUDGET = Budget()


@dataclass(frozen=True)
class ComplexityResult:
    value: object  # int, LogReal or INF
    exact: bool
    witness: str | None = None

    @property
    def finite(self) -> bool:
        return not (isinstance(self.value, float) and math.isinf(self.value))


def context_encoding(context: Iterable[str] | str | None) -> str:
    """Canonical aux string for an unordered context set."""
    if context is None:
        return ""
    if isinstance(context, str):
        context = (context,)
    return encode_set(context)


def _ops_bits(ops) -> str:
    return "".join(format(op, "03b") for op in ops)


# -- exhaustive enumeration -------------------------------------------------

@dataclass
class ProducerTable:
    """Halting behaviour of every program of length <= L under one aux/T."""

    L: int
    T: int
    first: dict[str, str]          # output -> least program producing it
    mass: dict[str, Fraction]      # output -> sum of 2^-l(p) over producers
    first_timeout: int | None      # shortest program length that ran out of steps

    def lookup(self, x: str) -> ComplexityResult:
        w = self.first.get(x)
        if w is not None:
            v = len(w)
            exact = self.first_timeout is None or self.first_timeout >= v
            return ComplexityResult(v, exact, w)
        return ComplexityResult(INF, self.first_timeout is None, None)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(i, min(i + step, total)) for i in range(0, total, step)]


def _sequences(k: int, start: int, stop: int):
    """Opcode tuples of length k with index in [start, stop), in numeric order."""
    if k == 0:
        if start == 0 < stop:
            yield 0, ()
        return
    for idx in range(start, stop):
        yield idx, tuple((idx >> (3 * (k - 1 - j))) & 7 for j in range(k))


def _scan_halting(k: int, start: int, stop: int, aux: str, T: int):
    """Halted outputs and whether anything timed out, for one slice of length-3k programs."""
    halted: list[tuple[int, str]] = []
    timed_out = False
    for idx, ops in _sequences(k, start, stop):
        jumps = match_brackets(ops)
        if jumps is None:
            continue
        o = execute(ops, jumps, aux, T)
        if o.kind is Kind.HALTED:
            halted.append((idx, o.output))
        elif o.kind is Kind.OUT_OF_BUDGET:
            timed_out = True
    return halted, timed_out


def _map_slices(fn, k: int, args: tuple, workers: int):
    slices = _chunks(8 ** k, workers)
    if workers <= 1 or len(slices) == 1:
        return [fn(k, a, b, *args) for a, b in slices]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*[(k, a, b, *args) for a, b in slices])))


def build_table(aux: str, L: int, T: int, workers: int = 1) -> ProducerTable:
    first: dict[str, str] = {}
    mass: dict[str, Fraction] = {}
    first_timeout = None
    for k in range(L // 3 + 1):
        # lengths 3k, 3k+1, 3k+2 that fit in the budget share this opcode sequence
        copies = sum(1 for r in range(3) if 3 * k + r <= L)
        weight = Fraction(copies, 2 ** (3 * k))
        for halted, timed_out in _map_slices(_scan_halting, k, (aux, T), workers):
            if timed_out and first_timeout is None:
                first_timeout = 3 * k
            for idx, out in halted:
                if out not in first:
                    first[out] = format(idx, f"0{3 * k}b") if k else ""
                mass[out] = mass.get(out, 0) + weight
    return ProducerTable(L, T, first, mass, first_timeout)


@lru_cache(maxsize=256)
def _cached_table(aux: str, L: int, T: int) -> ProducerTable:
    return build_table(aux, L, T)


def producer_table(aux: str, budget: Budget, workers: int = 1) -> ProducerTable:
    if workers > 1:
        return build_table(aux, budget.L, budget.T, workers)
    return _cached_table(aux, budget.L, budget.T)


# -- operations -------------------------------------------------------------

def plain_complexity(x: str, context=(), budget: Budget = DEFAULT_BUDGET,
                     workers: int = 1, cache=None) -> ComplexityResult:
    """Shortest program (length <= L) that halts within T steps printing `x`.

    The value is an upper bound on the machine complexity.  ``exact`` is set
    when no program shorter than the result (or any program at all, when
    nothing was found) ran out of steps.
    """
    aux = context_encoding(context)
    if cache is not None:
        hit = cache.get("plain", x, aux, budget)
        if hit is not None:
            return hit
    res = producer_table(aux, budget, workers).lookup(x)
    if cache is not None:
        cache.put("plain", x, aux, budget, res)
    return res


def joint_complexity(x: str, y: str, budget: Budget = DEFAULT_BUDGET, **kw) -> ComplexityResult:
    from .refmachine import encode_pair
    return plain_complexity(encode_pair(x, y), (), budget, **kw)


def algorithmic_mass(x: str, budget: Budget = DEFAULT_BUDGET, context=(), workers: int = 1) -> Fraction:
    """Sum of 2^-l(p) over programs of length <= L halting with output `x` within T."""
    table = producer_table(context_encoding(context), budget, workers)
    return Fraction(table.mass.get(x, 0))


def levin_score(length: int, t: int) -> LogReal:
    return LogReal(length) + LogReal.log2(max(1, t))


def _scan_levin(k: int, start: int, stop: int, x: str, aux: str, T: int, bound):
    """Best (t * 2^l, idx, t) in a slice; `bound` is the best key found so far."""
    best = None
    l = 3 * k
    for idx, ops in _sequences(k, start, stop):
        cur = bound if best is None else best[0]
        if cur is None:
            cap = T
        else:
            # need t * 2^l < cur
            cap = min(T, -(-cur // 2 ** l) - 1)
            if cap < 1:
                break
        jumps = match_brackets(ops)
        if jumps is None:
            continue
        if not x:
            t = 1
        else:
            o = execute(ops, jumps, aux, cap, stop_at_output=len(x))
            t = o.print_times.get(len(x))
            if t is None or o.output[:len(x)] != x:
                continue
            t = max(1, t)
        key = t * 2 ** l
        if cur is None or key < cur:
            best = (key, idx, t)
    return best


def levin_complexity(x: str, context=(), budget: Budget = DEFAULT_BUDGET,
                     workers: int = 1, cache=None) -> ComplexityResult:
    """min over programs of l(p) + log2 t, t the step at which the output first equals `x`.

    Halting is not required.  Scores are compared exactly as integers t * 2^l.
    """
    aux = context_encoding(context)
    if cache is not None:
        hit = cache.get("levin", x, aux, budget)
        if hit is not None:
            return hit
    best = None  # (key, k, idx, t)
    for k in range(budget.L // 3 + 1):
        bound = None if best is None else best[0]
        if bound is not None and bound <= 2 ** (3 * k):
            break
        found = [b for b in _map_slices(_scan_levin, k, (x, aux, budget.T, bound), workers) if b]
        if found:
            key, idx, t = min(found, key=lambda b: (b[0], b[1]))
            if best is None or key < best[0]:
                best = (key, k, idx, t)
    if best is None:
        res = ComplexityResult(INF, False, None)
    else:
        key, k, idx, t = best
        witness = format(idx, f"0{3 * k}b") if k else ""
        value = levin_score(3 * k, t)
        exact = key <= budget.T and value <= budget.L
        res = ComplexityResult(value, bool(exact), witness)
    if cache is not None:
        cache.put("levin", x, aux, budget, res)
    return res


def lz_estimate(x: str, context=()) -> int:
    """LZ78 code length of `x` after priming the dictionary with the context.

    Phrase j (1-based, numbered across both passes) costs ceil(log2 j) + 1
    bits; a trailing partial phrase costs only its index bits.  The context
    pass is free and its trailing partial phrase is dropped.
    """
    phrases = {""}
    count = 0

    def parse(s: str, charge: bool) -> int:
        nonlocal count
        cost = 0
        cur = ""
        for ch in s:
            nxt = cur + ch
            if nxt in phrases:
                cur = nxt
                continue
            phrases.add(nxt)
            count += 1
            if charge:
                cost += math.ceil(math.log2(count)) + 1
            cur = ""
        if cur and charge:
            cost += math.ceil(math.log2(count + 1))
        return cost

    parse(context_encoding(context), charge=False)
    return parse(x, charge=True)


def witness_bound(program: str, x: str, context=(), max_steps: int = DEFAULT_BUDGET.T) -> ComplexityResult:
    """Upper bound l(p) from a hand-supplied program, when it prints `x` and halts."""
    if not is_valid(program):
        raise ValueError(f"program {program!r} has unbalanced brackets")
    o = run(program, context_encoding(context), max_steps)
    if o.halted and o.output == x:
        return ComplexityResult(len(program), False, program)
    return ComplexityResult(INF, False, None)


# -- pluggable models -------------------------------------------------------

class ComplexityModel:
    """Code-length functional (target, unordered context set) -> bits."""

    name = "model"

    def result(self, target: str, context=()) -> ComplexityResult:
        raise NotImplementedError

    def __call__(self, target: str, context=()):
        v = self.result(target, context).value
        return v if isinstance(v, float) else LogReal.coerce(v)

    def describe(self) -> dict:
        return {"name": self.name}


class ExactBounded(ComplexityModel):
    name = "ExactBounded"

    def __init__(self, budget: Budget = DEFAULT_BUDGET, workers: int = 1, cache=None):
        self.budget = budget
        self.workers = workers
        self.cache = cache

    def result(self, target, context=()):
        return plain_complexity(target, context, self.budget, self.workers, self.cache)

    def describe(self):
        return {"name": self.name, "L": self.budget.L, "T": self.budget.T}


class LevinBounded(ExactBounded):
    name = "LevinBounded"

    def result(self, target, context=()):
        return levin_complexity(target, context, self.budget, self.workers, self.cache)


class LZ78Estimator(ComplexityModel):
    name = "LZ78"

    def result(self, target, context=()):
        return ComplexityResult(lz_estimate(target, context), False, None)


class WitnessTable(ComplexityModel):
    """Upper bounds from a table of known programs keyed by (target, context)."""

    name = "WitnessTable"

    def __init__(self, programs: dict[tuple[str, frozenset], str] | None = None,
                 max_steps: int = DEFAULT_BUDGET.T):
        self.max_steps = max_steps
        self.programs: dict[tuple[str, str], list[str]] = {}
        for (target, ctx), prog in (programs or {}).items():
            self.add(prog, target, ctx)

    def add(self, program: str, target: str, context=()) -> None:
        if not is_valid(program):
            raise ValueError(f"program {program!r} has unbalanced brackets")
        key = (target, context_encoding(context))
        self.programs.setdefault(key, []).append(program)

    def result(self, target, context=()):
        best = ComplexityResult(INF, False, None)
        for prog in self.programs.get((target, context_encoding(context)), ()):
            r = witness_bound(prog, target, context, self.max_steps)
            if r.finite and (not best.finite or r.value < best.value):
                best = r
        return best
