"""Bit-tape reference machine plus the pairing and set-listing encoders.

Programs are strings of ASCII '0'/'1' read as consecutive 3-bit opcodes::

    000 >  head right          100 ]  if cell=1 jump just after matching [
    001 <  head left           101 .  append current cell to output
    010 ~  flip current cell   110 ,  read next aux bit into cell (0 when exhausted)
    011 [  if cell=0 jump past matching ]
                               111 HALT

The tape is binary, unbounded both ways and zero-initialised.  One executed
opcode is one step.  Only HALT produces a ``Halted`` outcome; fetching with
fewer than 3 bits left is a failure, as is a program whose complete opcodes
have unbalanced brackets (rejected before execution).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

MACHINE_VERSION = "ISLAB-M1"

RIGHT, LEFT, FLIP, OPEN, CLOSE, PRINT, READ, HALT = range(8)
MNEMONICS = "><~[].,H"


class Kind(str, Enum):
    HALTED = "Halted"
    FAILED = "Failed"
    OUT_OF_BUDGET = "OutOfBudget"


@dataclass(frozen=True)
class RunOutcome:
    kind: Kind
    output: str
    steps: int
    # output length -> step at which the output buffer first had that length
    print_times: dict[int, int] = field(default_factory=dict)

    @property
    def halted(self) -> bool:
        return self.kind is Kind.HALTED


def check_bits(s: str, what: str = "bit string") -> str:
    if any(ch not in "01" for ch in s):
        raise ValueError(f"{what} must contain only '0'/'1', got {s!r}")
    return s


def opcodes(program: str) -> tuple[int, ...]:
    """Complete 3-bit opcodes of `program`; trailing partial bits are dropped."""
    return tuple(int(program[i:i + 3], 2) for i in range(0, len(program) - 2, 3))


def match_brackets(ops: tuple[int, ...] | list[int]) -> dict[int, int] | None:
    """Map each bracket index to its partner, or None if unbalanced."""
    stack: list[int] = []
    jumps: dict[int, int] = {}
    for i, op in enumerate(ops):
        if op == OPEN:
            stack.append(i)
        elif op == CLOSE:
            if not stack:
                return None
            j = stack.pop()
            jumps[i] = j
            jumps[j] = i
    if stack:
        return None
    return jumps


def is_valid(program: str) -> bool:
    return match_brackets(opcodes(program)) is not None


def disassemble(program: str) -> str:
    ops = opcodes(program)
    tail = program[3 * len(ops):]
    return "".join(MNEMONICS[op] for op in ops) + (f"|{tail}" if tail else "")


def assemble(source: str) -> str:
    """Inverse of the mnemonic listing, e.g. ``assemble("~.H") == "010101111"``."""
    return "".join(format(MNEMONICS.index(ch), "03b") for ch in source)


def execute(ops, jumps, aux: str, max_steps: int,
            stop_at_output: int | None = None) -> RunOutcome:
    """Run pre-decoded opcodes.  Hot path of every exhaustive search.

    `stop_at_output` ends the run early (reported as OutOfBudget) once the
    output reaches that length; Levin search only needs the first print time.
    """
    ones: set[int] = set()
    head = 0
    pc = 0
    steps = 0
    aux_pos = 0
    out: list[str] = []
    print_times = {0: 0}
    n = len(ops)
    while True:
        if pc >= n:
            # no complete opcode left to fetch
            return RunOutcome(Kind.FAILED, "".join(out), steps, print_times)
        if steps >= max_steps:
            return RunOutcome(Kind.OUT_OF_BUDGET, "".join(out), steps, print_times)
        op = ops[pc]
        steps += 1
        if op == RIGHT:
            head += 1
        elif op == LEFT:
            head -= 1
        elif op == FLIP:
            if head in ones:
                ones.discard(head)
            else:
                ones.add(head)
        elif op == OPEN:
            if head not in ones:
                pc = jumps[pc]
        elif op == CLOSE:
            if head in ones:
                pc = jumps[pc]
        elif op == PRINT:
            out.append("1" if head in ones else "0")
            print_times[len(out)] = steps
            if stop_at_output is not None and len(out) >= stop_at_output:
                return RunOutcome(Kind.OUT_OF_BUDGET, "".join(out), steps, print_times)
        elif op == READ:
            bit = aux[aux_pos] if aux_pos < len(aux) else "0"
            aux_pos += 1
            if bit == "1":
                ones.add(head)
            else:
                ones.discard(head)
        else:
            return RunOutcome(Kind.HALTED, "".join(out), steps, print_times)
        pc += 1


def run(program: str, aux: str = "", max_steps: int = 10_000) -> RunOutcome:
    """Execute `program` on the reference machine with auxiliary input `aux`."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    check_bits(program, "program")
    check_bits(aux, "aux")
    ops = opcodes(program)
    jumps = match_brackets(ops)
    if jumps is None:
        return RunOutcome(Kind.FAILED, "", 0, {0: 0})
    return execute(ops, jumps, aux, max_steps)


# -- encoders ---------------------------------------------------------------

def binary_length(x: str) -> str:
    """Minimal binary numeral of l(x); empty for l(x) = 0."""
    return format(len(x), "b") if x else ""


def encode_pair(x: str, y: str) -> str:
    """Self-delimiting pair ``1^{l(b)} 0 b x y`` with b the binary numeral of l(x).

    Length is l(y) + l(x) + 2 l(l(x)) + 1.
    """
    b = binary_length(x)
    return "1" * len(b) + "0" + b + x + y


def decode_pair(z: str) -> tuple[str, str]:
    k = z.find("0")
    if k < 0:
        raise ValueError(f"not a pair encoding: {z!r}")
    b = z[k + 1:k + 1 + k]
    if len(b) != k:
        raise ValueError(f"truncated pair header: {z!r}")
    lx = int(b, 2) if b else 0
    start = 2 * k + 1
    if start + lx > len(z):
        raise ValueError(f"truncated pair body: {z!r}")
    return z[start:start + lx], z[start + lx:]


def canonical_order(strings: Iterable[str]) -> list[str]:
    """Distinct strings sorted by (length, lexicographic)."""
    return sorted(set(strings), key=lambda s: (len(s), s))


def encode_list(items: list[str]) -> str:
    """Right-nested pairing <x1, <x2, ... <x_{n-1}, x_n>...>> of an ordered list."""
    if not items:
        return ""
    acc = items[-1]
    for item in reversed(items[:-1]):
        acc = encode_pair(item, acc)
    return acc


def encode_set(strings: Iterable[str]) -> str:
    """Canonical listing of a finite set; {x} -> x and the empty set -> ''."""
    return encode_list(canonical_order(strings))


def decode_set(z: str, count: int) -> list[str]:
    if count == 0:
        if z:
            raise ValueError("non-empty encoding for an empty set")
        return []
    items = []
    for _ in range(count - 1):
        head, z = decode_pair(z)
        items.append(head)
    items.append(z)
    return items
