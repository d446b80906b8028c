import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from islab.fixtures import RPS_CODEC, RPS_INTERACTION, rps_alpha, rps_players
from islab.players import (GameCodec, NondetStrategy, NormalFormGame, Player, capacity, from_strategy,
                           interacts, intersect, nash_players, pure_nash)
from islab.refmachine import encode_pair
from oracles import nash_by_definition


def strings(n):
    return ["".join(b) for b in itertools.product("01", repeat=n)]


def player_sets(n):
    return st.sets(st.sampled_from(strings(n)))


# -- set algebra ---------------------------------------------------------------

def test_disjoint_and_idempotent():
    a = Player(2, ["00"])
    assert len(intersect(a, Player(2, ["11"]))) == 0
    assert not interacts(a, Player(2, ["11"]))
    assert intersect(a, a) == a


def test_mismatched_lengths_rejected():
    with pytest.raises(ValueError):
        intersect(Player(2, ["00"]), Player(3, ["000"]))


def test_members_validated():
    with pytest.raises(ValueError):
        Player(2, ["0"])
    with pytest.raises(ValueError):
        Player(2, ["0a"])


def test_capacity():
    assert capacity(Player(3)) == 0
    assert capacity(Player.full(4)) == 16


@given(player_sets(4), player_sets(4), player_sets(4))
def test_intersection_algebra(x, y, z):
    a, b, c = Player(4, x), Player(4, y), Player(4, z)
    assert a & b == b & a
    assert (a & b) & c == a & (b & c)
    assert len(a & b) <= min(len(a), len(b))
    assert set(a & b) == x & y


@given(st.sets(st.integers(0, 2 ** 26 - 1), max_size=20), st.sets(st.integers(0, 2 ** 26 - 1), max_size=20))
def test_backends_agree(xs, ys):
    n = 26
    sx = [format(v, f"0{n}b") for v in xs]
    sy = [format(v, f"0{n}b") for v in ys]
    sparse = Player(n, sx) & Player(n, sy)
    assert Player(n, sx).backend == "sorted"
    assert set(sparse) == set(sx) & set(sy)
    small = [s[-6:] for s in sx], [s[-6:] for s in sy]
    dense = Player(6, small[0]) & Player(6, small[1])
    forced = Player(6, small[0], backend="sorted") & Player(6, small[1], backend="sorted")
    assert dense.members() == forced.members()
    for s in strings(6):
        assert (s in dense) == (s in forced)


@given(player_sets(3))
def test_text_round_trip_in_canonical_order(x):
    p = Player(3, x)
    assert Player.from_text(p.to_text()) == p
    assert p.members() == sorted(x)


# -- sequential games -------------------------------------------------------------

def test_rps_fixture():
    a, b = rps_players()
    assert len(a) == 9 and len(b) == 9
    assert (a & b).members() == [RPS_INTERACTION]
    assert RPS_CODEC.decode(RPS_INTERACTION) == ("R", "P", "R", "R")
    assert RPS_INTERACTION == "00010000"


def test_unrestricted_strategy_gives_everything():
    s = NondetStrategy("first", lambda h: {"R", "P", "S"})
    assert len(from_strategy(s, RPS_CODEC)) == 81


def test_bad_strategies_rejected():
    with pytest.raises(ValueError):
        from_strategy(NondetStrategy("first", lambda h: set()), RPS_CODEC)
    with pytest.raises(ValueError):
        from_strategy(NondetStrategy("first", lambda h: {"X"}), RPS_CODEC)


@pytest.mark.parametrize("plies", [1, 2, 3])
@pytest.mark.parametrize("side", ["first", "second"])
def test_from_strategy_against_full_enumeration(plies, side):
    codec = GameCodec(("R", "P", "S"), plies=plies)
    rng = random.Random(plies * 7 + len(side))
    table = {}

    def f(h):
        if h not in table:
            table[h] = set(rng.sample("RPS", rng.randint(1, 3)))
        return table[h]

    player = from_strategy(NondetStrategy(side, f), codec)
    owner = 0 if side == "first" else 1
    expected = set()
    for game in itertools.product("RPS", repeat=2 * plies):
        if all(game[k] in f(game[:k]) for k in range(owner, 2 * plies, 2)):
            expected.add(codec.encode(game))
    assert set(player) == expected


# -- normal-form games ----------------------------------------------------------

def test_coordination_game():
    coord = NormalFormGame(1, lambda x, y: int(x == y))
    a, b = nash_players(coord, coord)
    assert (a & b).members() == ["10100", "10111"]
    assert (a & b).members() == sorted([encode_pair("0", "0"), encode_pair("1", "1")])


def test_matching_pennies():
    p = NormalFormGame(1, lambda x, y: int(x == y))
    q = NormalFormGame(1, lambda x, y: int(x != y))
    a, b = nash_players(p, q)
    assert len(a & b) == 0


def test_all_ones():
    one = NormalFormGame(1, lambda x, y: 1)
    a, b = nash_players(one, one)
    assert len(a & b) == 4


def test_payoff_range_checked():
    with pytest.raises(ValueError):
        NormalFormGame(1, lambda x, y: 2)("0", "0")


@given(st.integers(1, 2), st.randoms())
def test_nash_players_match_definition(n, rnd):
    vals = [Fraction(0), Fraction(1, 2), Fraction(1)]
    acts = strings(n)
    p = {(x, y): rnd.choice(vals) for x in acts for y in acts}
    q = {(x, y): rnd.choice(vals) for x in acts for y in acts}
    g, h = NormalFormGame(n, p), NormalFormGame(n, q)
    a, b = nash_players(g, h)
    want = {encode_pair(x, y) for x, y in nash_by_definition(n, lambda x, y: p[(x, y)], lambda x, y: q[(x, y)])}
    assert set(a & b) == want
    assert {encode_pair(x, y) for x, y in pure_nash(g, h)} == want
