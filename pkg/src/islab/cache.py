"""Append-only on-disk memo of complexity searches.

One directory of ``*.tsv`` record files.  Each line is::

    hex(key) TAB value TAB exact-flag TAB witness-bits

where the key joins (machine version, kind, target, context encoding, L, T)
with '|'.  A missing witness is written as '-'.  Corrupt lines are skipped
with a warning when loading.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path

from .complexity import Budget, ComplexityResult, levin_score
from .logreal import parse, render
from .refmachine import MACHINE_VERSION, run

log = logging.getLogger(__name__)

KINDS = ("plain", "levin")


def default_cache_dir() -> Path:
    env = os.environ.get("ISLAB_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "islab"


@dataclass(frozen=True)
class Key:
    version: str
    kind: str
    target: str
    context: str
    L: int
    T: int

    def hex(self) -> str:
        raw = "|".join([self.version, self.kind, self.target, self.context, str(self.L), str(self.T)])
        return raw.encode("ascii").hex()

    @classmethod
    def from_hex(cls, h: str) -> "Key":
        version, kind, target, context, L, T = bytes.fromhex(h).decode("ascii").split("|")
        if kind not in KINDS or set(target + context) - {"0", "1"}:
            raise ValueError("bad key fields")
        return cls(version, kind, target, context, int(L), int(T))


def format_record(key: Key, res: ComplexityResult) -> str:
    witness = "-" if res.witness is None else res.witness
    return f"{key.hex()}\t{render(res.value)}\t{int(res.exact)}\t{witness}\n"


def parse_record(line: str) -> tuple[Key, ComplexityResult]:
    fields = line.rstrip("\n").split("\t")
    if len(fields) != 4:
        raise ValueError(f"expected 4 fields, got {len(fields)}")
    h, value, exact, witness = fields
    key = Key.from_hex(h)
    if exact not in ("0", "1"):
        raise ValueError("bad exact flag")
    if witness != "-" and set(witness) - {"0", "1"}:
        raise ValueError("bad witness bits")
    v = parse(value)
    if key.kind == "plain" and not isinstance(v, float):
        v = int(v.const)
    return key, ComplexityResult(v, exact == "1", None if witness == "-" else witness)


class ComplexityCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.directory.mkdir(parents=True, exist_ok=True)
        self._entries: dict[Key, ComplexityResult] | None = None

    @property
    def path(self) -> Path:
        return self.directory / f"{MACHINE_VERSION}.tsv"

    def _files(self):
        return sorted(self.directory.glob("*.tsv"))

    def _lines(self):
        for f in self._files():
            with open(f, encoding="ascii", errors="replace") as fh:
                for lineno, line in enumerate(fh, 1):
                    if line.strip():
                        yield f, lineno, line

    def load(self) -> dict[Key, ComplexityResult]:
        entries = {}
        for f, lineno, line in self._lines():
            try:
                key, res = parse_record(line)
            except (ValueError, UnicodeDecodeError) as exc:
                log.warning("skipping corrupt cache line %s:%d (%s)", f.name, lineno, exc)
                continue
            entries[key] = res
        self._entries = entries
        return entries

    def _key(self, kind, target, context, budget: Budget) -> Key:
        return Key(MACHINE_VERSION, kind, target, context, budget.L, budget.T)

    def get(self, kind, target, context, budget: Budget) -> ComplexityResult | None:
        if self._entries is None:
            self.load()
        return self._entries.get(self._key(kind, target, context, budget))

    def put(self, kind, target, context, budget: Budget, res: ComplexityResult) -> None:
        key = self._key(kind, target, context, budget)
        if self._entries is None:
            self.load()
        if key in self._entries:
            return
        self._entries[key] = res
        # one write per record so concurrent appenders never interleave a line
        fd = os.open(self.path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            os.write(fd, format_record(key, res).encode("ascii"))
        finally:
            os.close(fd)

    def stats(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for key in self.load():
            label = key.kind if key.version == MACHINE_VERSION else f"{key.kind}@{key.version}"
            counts[label] = counts.get(label, 0) + 1
        return dict(sorted(counts.items()))

    def verify(self) -> list[str]:
        """Re-run every witness; return one message per bad record."""
        problems = []
        for f, lineno, line in self._lines():
            where = f"{f.name}:{lineno}"
            try:
                key, res = parse_record(line)
            except (ValueError, UnicodeDecodeError) as exc:
                problems.append(f"{where}: corrupt record ({exc})")
                continue
            if res.witness is None:
                if res.finite:
                    problems.append(f"{where}: finite value without witness")
                continue
            msg = check_witness(key, res)
            if msg:
                problems.append(f"{where}: {msg}")
        return problems

    def clear(self) -> int:
        """Drop records of other machine versions; returns how many were removed."""
        removed = 0
        for f in self._files():
            keep = []
            with open(f, encoding="ascii", errors="replace") as fh:
                for line in fh:
                    try:
                        key, _ = parse_record(line)
                    except (ValueError, UnicodeDecodeError):
                        keep.append(line)
                        continue
                    if key.version == MACHINE_VERSION:
                        keep.append(line)
                    else:
                        removed += 1
            if keep:
                f.write_text("".join(keep), encoding="ascii")
            else:
                f.unlink()
        self._entries = None
        return removed


def check_witness(key: Key, res: ComplexityResult) -> str | None:
    if key.version != MACHINE_VERSION:
        return None
    w = res.witness
    if key.kind == "plain":
        o = run(w, key.context, key.T)
        if not (o.halted and o.output == key.target):
            return "witness does not reproduce target"
        if res.value != len(w) or len(w) > key.L:
            return "value does not match witness length"
        return None
    o = run(w, key.context, key.T)
    t = o.print_times.get(len(key.target))
    if t is None or o.output[:len(key.target)] != key.target:
        return "witness never prints target"
    if res.value != levin_score(len(w), t):
        return "value does not match witness score"
    return None
