"""Players as sets of n-bit strings, and constructions from games."""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .refmachine import canonical_order, check_bits, encode_pair, encode_set

DENSE_MAX_N = 24


class Player:
    """Immutable set of n-bit strings.

    Members are stored by their integer value: as one int bitmask when
    n <= 24 (bit i set <=> the string with value i is a member), otherwise
    as a sorted tuple of ints.
    """

    __slots__ = ("n", "_mask", "_items")

    def __init__(self, n: int, members: Iterable[str] = (), backend: str | None = None):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        values = set()
        for s in members:
            check_bits(s, "member")
            if len(s) != n:
                raise ValueError(f"member {s!r} has length {len(s)}, expected {n}")
            values.add(int(s, 2) if s else 0)
        backend = backend or ("dense" if n <= DENSE_MAX_N else "sorted")
        self._set_values(values, backend)

    def _set_values(self, values, backend):
        if backend == "dense":
            if self.n > DENSE_MAX_N:
                raise ValueError(f"dense backend needs n <= {DENSE_MAX_N}")
            mask = 0
            for v in values:
                mask |= 1 << v
            self._mask, self._items = mask, None
        elif backend == "sorted":
            self._mask, self._items = None, tuple(sorted(values))
        else:
            raise ValueError(f"unknown backend {backend!r}")

    @classmethod
    def _from_values(cls, n, values, backend) -> "Player":
        p = cls.__new__(cls)
        p.n = n
        p._set_values(values, backend)
        return p

    @classmethod
    def full(cls, n: int) -> "Player":
        return cls._from_values(n, range(2 ** n), "dense" if n <= DENSE_MAX_N else "sorted")

    @property
    def backend(self) -> str:
        return "dense" if self._mask is not None else "sorted"

    def values(self) -> Iterator[int]:
        if self._items is not None:
            yield from self._items
            return
        mask = self._mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def _str(self, v: int) -> str:
        return format(v, f"0{self.n}b") if self.n else ""

    def __iter__(self) -> Iterator[str]:
        return (self._str(v) for v in self.values())

    def members(self) -> list[str]:
        return list(self)

    def __len__(self) -> int:
        if self._mask is not None:
            return self._mask.bit_count()
        return len(self._items)

    def __contains__(self, s) -> bool:
        if not isinstance(s, str) or len(s) != self.n:
            return False
        v = int(s, 2) if s else 0
        if self._mask is not None:
            return bool(self._mask >> v & 1)
        i = bisect.bisect_left(self._items, v)
        return i < len(self._items) and self._items[i] == v

    def __eq__(self, other):
        if not isinstance(other, Player):
            return NotImplemented
        return self.n == other.n and list(self.values()) == list(other.values())

    def __hash__(self):
        return hash((self.n, tuple(self.values())))

    def __repr__(self):
        shown = ", ".join(itertools.islice(self, 6))
        more = ", ..." if len(self) > 6 else ""
        return f"Player(n={self.n}, |A|={len(self)}, {{{shown}{more}}})"

    def __and__(self, other: "Player") -> "Player":
        return intersect(self, other)

    def issubset(self, other: "Player") -> bool:
        return self.n == other.n and len(intersect(self, other)) == len(self)

    def encode(self) -> str:
        """Canonical listing encoding of the member set."""
        return encode_set(self)

    def to_text(self) -> str:
        return "\n".join([f"n={self.n}", *self]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Player":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("player text must start with 'n=<int>'")
        return cls(int(lines[0][2:]), lines[1:])


def intersect(a: Player, b: Player) -> Player:
    if a.n != b.n:
        raise ValueError(f"cannot intersect players over different lengths ({a.n} vs {b.n})")
    if a._mask is not None and b._mask is not None:
        p = Player.__new__(Player)
        p.n, p._mask, p._items = a.n, a._mask & b._mask, None
        return p
    common = set(a.values()).intersection(b.values())
    return Player._from_values(a.n, common, "sorted" if a.n > DENSE_MAX_N else "dense")


def interacts(a: Player, b: Player) -> bool:
    return len(intersect(a, b)) > 0


def capacity(a: Player) -> int:
    """log 2^|A| = |A|: bits needed to single out one subset of A."""
    return len(a)


# -- sequential games -------------------------------------------------------

@dataclass(frozen=True)
class GameCodec:
    """Fixed-width binary codes for a move alphabet; games interleave a1 b1 a2 b2 ..."""

    alphabet: tuple[str, ...]
    plies: int
    width: int | None = None

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet) or not self.alphabet:
            raise ValueError("alphabet must be non-empty with distinct moves")
        w = self.width if self.width is not None else max(1, (len(self.alphabet) - 1).bit_length())
        if len(self.alphabet) > 2 ** w:
            raise ValueError(f"{len(self.alphabet)} moves do not fit in {w} bits")
        object.__setattr__(self, "width", w)

    @property
    def n(self) -> int:
        return 2 * self.plies * self.width

    def code(self, move: str) -> str:
        return format(self.alphabet.index(move), f"0{self.width}b")

    def encode(self, moves: Sequence[str]) -> str:
        if len(moves) != 2 * self.plies:
            raise ValueError(f"expected {2 * self.plies} moves, got {len(moves)}")
        return "".join(self.code(m) for m in moves)

    def decode(self, bits: str) -> tuple[str, ...]:
        w = self.width
        if len(bits) != self.n:
            raise ValueError("wrong game length")
        moves = []
        for i in range(0, len(bits), w):
            idx = int(bits[i:i + w], 2)
            if idx >= len(self.alphabet):
                raise ValueError(f"unused move code {bits[i:i + w]}")
            moves.append(self.alphabet[idx])
        return tuple(moves)

    def encode_rounds(self, rounds: Sequence[tuple[str, str]]) -> str:
        """Encode "(a1,b1)(a2,b2)..." given as pairs."""
        return self.encode([m for pair in rounds for m in pair])


@dataclass(frozen=True)
class NondetStrategy:
    """A side plus f: move history -> nonempty set of allowed moves."""

    side: str  # "first" or "second"
    f: Callable[[tuple[str, ...]], Iterable[str]]

    def __post_init__(self):
        if self.side not in ("first", "second"):
            raise ValueError("side must be 'first' or 'second'")


def _games(strategy: NondetStrategy | None, codec: GameCodec):
    owner = None if strategy is None else (0 if strategy.side == "first" else 1)
    alphabet = codec.alphabet

    def extend(history):
        if len(history) == 2 * codec.plies:
            yield history
            return
        if len(history) % 2 == owner:
            allowed = set(strategy.f(history))
            if not allowed:
                raise ValueError(f"strategy allows no move after {history}")
            if allowed - set(alphabet):
                raise ValueError(f"strategy moves {sorted(allowed - set(alphabet))} not in alphabet")
            moves = [m for m in alphabet if m in allowed]
        else:
            moves = alphabet
        for m in moves:
            yield from extend(history + (m,))

    yield from extend(())


def from_strategy(strategy: NondetStrategy, codec: GameCodec) -> Player:
    """All m-round games where the owner's moves follow `strategy` and the opponent is free."""
    return Player(codec.n, (codec.encode(g) for g in _games(strategy, codec)))


def all_games(codec: GameCodec) -> list[tuple[str, ...]]:
    return list(_games(None, codec))


# -- normal-form games ------------------------------------------------------

@dataclass(frozen=True)
class NormalFormGame:
    """Payoff p(x, y) in [0, 1] over pairs of n-bit actions (own action first)."""

    n: int
    payoff: Callable[[str, str], Fraction] | dict

    def __call__(self, x: str, y: str) -> Fraction:
        v = self.payoff[(x, y)] if isinstance(self.payoff, dict) else self.payoff(x, y)
        v = Fraction(v)
        if not 0 <= v <= 1:
            raise ValueError(f"payoff {v} outside [0, 1]")
        return v

    def actions(self) -> list[str]:
        return ["".join(bits) for bits in itertools.product("01", repeat=self.n)]


def best_response_player(g: NormalFormGame, *, swap: bool = False) -> Player:
    """{<x, y> : p(x, y) = 1}; with swap, the condition reads p(y, x) = 1."""
    acts = g.actions()
    n = len(encode_pair(acts[0], acts[0]))
    members = []
    for x in acts:
        for y in acts:
            if (g(y, x) if swap else g(x, y)) == 1:
                members.append(encode_pair(x, y))
    return Player(n, members)


def nash_players(g: NormalFormGame, h: NormalFormGame) -> tuple[Player, Player]:
    """Players whose intersection is the set of pure equilibria p(x,y) = q(y,x) = 1."""
    if g.n != h.n:
        raise ValueError("games must share the action width")
    return best_response_player(g), best_response_player(h, swap=True)


def pure_nash(g: NormalFormGame, h: NormalFormGame) -> list[tuple[str, str]]:
    acts = g.actions()
    return [(x, y) for x in acts for y in acts if g(x, y) == 1 and h(y, x) == 1]


def player_from_members(members: Iterable[str]) -> Player:
    members = canonical_order(members)
    if not members:
        raise ValueError("cannot infer n from an empty member list")
    return Player(len(members[0]), members)
