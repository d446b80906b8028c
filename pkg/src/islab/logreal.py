"""Exact reals of the form  q + sum_p c_p * log2(p)  with rational q, c_p.

Logs of distinct odd primes are linearly independent over the rationals, so
with every log2(n) factored into prime logs an expression is zero iff all of
its coefficients are.  This lets identity residuals be checked exactly.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

INF = math.inf


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


class LogReal:
    __slots__ = ("const", "logs")

    def __init__(self, const=0, logs=None):
        self.const = Fraction(const)
        self.logs: dict[int, Fraction] = {p: Fraction(c) for p, c in (logs or {}).items() if c}

    @classmethod
    def log2(cls, n) -> "LogReal":
        """Exact log2 of a positive rational."""
        q = Fraction(n)
        if q <= 0:
            raise ValueError(f"log2 of non-positive value {n}")
        const = Fraction(0)
        logs: dict[int, Fraction] = {}
        for part, sign in ((q.numerator, 1), (q.denominator, -1)):
            for p, e in _factor(part):
                if p == 2:
                    const += sign * e
                else:
                    logs[p] = logs.get(p, 0) + sign * e
        return cls(const, logs)

    @classmethod
    def coerce(cls, v) -> "LogReal":
        if isinstance(v, LogReal):
            return v
        if isinstance(v, (int, Rational)):
            return cls(v)
        if isinstance(v, float) and v.is_integer():
            return cls(int(v))
        raise TypeError(f"cannot represent {v!r} exactly")

    @property
    def is_rational(self) -> bool:
        return not self.logs

    def __add__(self, other):
        if isinstance(other, float) and math.isinf(other):
            return other
        o = LogReal.coerce(other)
        logs = dict(self.logs)
        for p, c in o.logs.items():
            logs[p] = logs.get(p, 0) + c
        return LogReal(self.const + o.const, logs)

    __radd__ = __add__

    def __neg__(self):
        return LogReal(-self.const, {p: -c for p, c in self.logs.items()})

    def __sub__(self, other):
        if isinstance(other, float) and math.isinf(other):
            return -other
        return self + (-LogReal.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        k = Fraction(k)
        return LogReal(self.const * k, {p: c * k for p, c in self.logs.items()})

    __rmul__ = __mul__

    def __float__(self):
        return float(self.const) + math.fsum(float(c) * math.log2(p) for p, c in self.logs.items())

    def is_zero(self) -> bool:
        return self.const == 0 and not self.logs

    def __eq__(self, other):
        try:
            return (self - LogReal.coerce(other)).is_zero()
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if not self.logs:
            return hash(self.const)
        return hash((self.const, tuple(sorted(self.logs.items()))))

    def _cmp(self, other) -> int:
        if isinstance(other, float) and math.isinf(other):
            return -1 if other > 0 else 1
        d = self - LogReal.coerce(other)
        if d.is_zero():
            return 0
        return -1 if float(d) < 0 else 1

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self):
        parts = []
        if self.const or not self.logs:
            parts.append(str(self.const))
        for p in sorted(self.logs):
            c = self.logs[p]
            term = f"log2({p})" if abs(c) == 1 else f"{abs(c)}*log2({p})"
            if parts:
                parts.append(("- " if c < 0 else "+ ") + term)
            else:
                parts.append(("-" if c < 0 else "") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"LogReal({str(self)!r})"


_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\*?)?\s*(log2\((\d+)\))?")


def parse(text: str) -> LogReal | float:
    """Inverse of ``str(LogReal)``; also accepts 'inf'."""
    text = text.strip()
    if text == "inf":
        return INF
    acc = LogReal()
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            acc = acc + LogReal.log2(int(m.group(4))) * (sign * coef)
        else:
            acc = acc + sign * coef
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return acc


def render(v) -> str:
    """Exact string for a number, LogReal, infinity or undefined (None)."""
    if v is None:
        return "undefined"
    if isinstance(v, float) and math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return str(LogReal.coerce(v))


def to_float(v) -> float | None:
    if v is None:
        return None
    return float(v)


def exact_json(v) -> dict:
    """{"exact": ..., "float": ...}; the float is null when infinite or undefined."""
    f = to_float(v)
    return {"exact": render(v), "float": None if f is None or math.isinf(f) else f}
