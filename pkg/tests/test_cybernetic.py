import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from islab.cybernetic import (Environment, HistoryCodec, Policy, ScaleLimitError, agent_set,
                              all_histories, check_scale, env_set_B, env_set_D, interacts_at,
                              optimal_policy, optimal_value, value)
from islab.fixtures import anti, biased_copy, echo, fair_coin
from envgen import random_env
from oracles import policy_tables, policy_value

BITS = ("0", "1")


def always(y, m=6):
    return Policy.constant(y, BITS, BITS, m)


def codec(m):
    return HistoryCodec(1, 1, m)


def table_policy(table, m):
    return Policy(lambda xs: table[tuple(xs)], BITS, BITS, m)


def naive_vstar(env, m, history):
    """Unmemoized expectimax written from the definition."""
    if len(history) == m:
        return Fraction(0)
    return max(sum(p * (env.reward[x] + naive_vstar(env, m, history + ((y, x),)))
                   for x, p in env.conditional(history, y).items()) for y in env.actions)


# -- pinned examples -------------------------------------------------------------

def test_values():
    assert value(always("1"), echo(), 2) == 2
    assert value(always("0"), echo(), 2) == 0
    assert value(always("0"), fair_coin(), 2) == value(always("1"), fair_coin(), 2) == 1


def test_optimal_values():
    e = echo()
    assert optimal_value(e, 2) == 2
    assert optimal_value(e, 2, (("0", "0"),)) == 1
    assert optimal_value(fair_coin(), 2) == 1


def test_optimal_value_rejects_unsupported_history():
    with pytest.raises(ValueError):
        optimal_value(echo(), 2, (("0", "1"),))


def test_agent_sets():
    assert agent_set(always("1"), codec(2)).members() == ["1010", "1011", "1110", "1111"]
    assert agent_set(always("0"), codec(2)).members() == ["0000", "0001", "0100", "0101"]


def test_env_sets():
    e, c = echo(), codec(2)
    assert env_set_B(e, c, 2).members() == ["1111"]
    assert env_set_B(e, c, 1).members() == ["0011", "1100", "1111"]
    assert env_set_B(e, c, 0).members() == ["0000", "0011", "1100", "1111"]
    assert env_set_D(e, c, 1).members() == ["1111"]
    assert env_set_D(e, c, Fraction(1, 2)).members() == ["0011", "1100", "1111"]
    assert env_set_D(e, c, 0) == env_set_B(e, c, 0)


def test_d_set_needs_positive_optimum():
    zero = Environment(BITS, BITS, {"0": 0, "1": 0}, lambda h, y: {"0": 1}, 3, "zero")
    with pytest.raises(ValueError):
        env_set_D(zero, codec(2), Fraction(1, 2))


def test_interacts_at():
    assert interacts_at(always("1"), echo(), 2, 2, "B") == (True, "1111")
    assert interacts_at(always("0"), echo(), 2, 2, "B") == (False, None)
    assert interacts_at(always("0"), anti(), 2, 0, "B")[0]


def test_alphabet_mismatch_rejected():
    wide = Policy.constant("00", ("00", "01"), BITS, 3)
    with pytest.raises(ValueError):
        value(wide, echo(), 2)


def test_scale_limits():
    check_scale(4, 4, 6)
    with pytest.raises(ScaleLimitError):
        check_scale(5, 2, 2)
    with pytest.raises(ScaleLimitError):
        check_scale(2, 2, 7)


def test_bad_conditionals_rejected():
    over = Environment(BITS, BITS, {"0": 0, "1": 1}, lambda h, y: {"0": Fraction(2, 3), "1": Fraction(2, 3)})
    with pytest.raises(ValueError):
        over.conditional((), "0")
    with pytest.raises(ValueError):
        Environment(BITS, BITS, {"0": 0, "1": 1}, lambda h, y: {"2": 1}).conditional((), "0")


def test_environment_json_round_trip():
    env = biased_copy(Fraction(3, 4), horizon=3)
    back = Environment.from_json(json.loads(json.dumps(env.to_json())))
    assert back.serialize() == env.serialize()
    assert value(always("1"), back, 3) == Fraction(9, 4)


def test_environment_table_keys_validated():
    with pytest.raises(ValueError):
        Environment.from_table(BITS, BITS, {"0": 0, "1": 1}, {"01": {"0": "1"}}, 2)


def test_policy_json_round_trip():
    p = optimal_policy(random_env(3), 3)
    q = Policy.from_json(json.loads(json.dumps(p.to_json())))
    assert q.to_table() == p.to_table()


# -- oracle equivalence ------------------------------------------------------------

@pytest.mark.parametrize("seed", range(12))
@pytest.mark.parametrize("m", [1, 2, 3])
def test_optimal_value_is_max_over_all_policies(seed, m):
    env = random_env(seed)
    values = [policy_value(t, env, m) for t in policy_tables(BITS, BITS, m)]
    assert optimal_value(env, m) == max(values)
    for t in policy_tables(BITS, BITS, m):
        assert value(table_policy(t, m), env, m) == policy_value(t, env, m)
    assert value(optimal_policy(env, m), env, m) == max(values)


@pytest.mark.parametrize("seed", range(8))
def test_sets_match_direct_enumeration(seed):
    m = 3
    env = random_env(seed)
    c = codec(m)
    histories = list(all_histories(BITS, BITS, m))
    support = [h for h in histories if env.prob(h) > 0]
    enc = c.encode
    for t in itertools.islice(policy_tables(BITS, BITS, m), 0, None, 17):
        p = table_policy(t, m)
        follows = {enc(h) for h in histories
                   if all(h[k][0] == t[tuple(x for _, x in h[:k])] for k in range(m))}
        assert set(agent_set(p, c)) == follows
    vstar = naive_vstar(env, m, ())
    for tau in [0, Fraction(1, 2), 1, 2, Fraction(7, 3)]:
        b = {enc(h) for h in support if sum(env.reward[x] for _, x in h) >= tau}
        assert set(env_set_B(env, c, tau)) == b
        if vstar > 0:
            d = {enc(h) for h in support
                 if all(env.r(h[:k]) + naive_vstar(env, m, h[:k]) >= tau * vstar for k in range(1, m + 1))}
            assert set(env_set_D(env, c, tau)) == d


@given(st.integers(0, 10 ** 6), st.fractions(0, 3, max_denominator=4), st.fractions(0, 3, max_denominator=4))
def test_threshold_monotonicity(seed, t1, t2):
    lo, hi = sorted((t1, t2))
    env, c = random_env(seed), codec(2)
    assert env_set_B(env, c, hi).issubset(env_set_B(env, c, lo))
    if optimal_value(env, 2) > 0:
        assert env_set_D(env, c, hi).issubset(env_set_D(env, c, lo))


@given(st.integers(0, 10 ** 6), st.integers(0, 7), st.integers(0, 4))
def test_interaction_iff_rewarding_history_follows_policy(seed, choice, tau):
    m = 2
    env = random_env(seed)
    t = list(policy_tables(BITS, BITS, m))[choice]
    ok, w = interacts_at(table_policy(t, m), env, m, tau, "B")
    direct = [h for h in all_histories(BITS, BITS, m) if env.prob(h) > 0 and env.r(h) >= tau
              and all(h[k][0] == t[tuple(x for _, x in h[:k])] for k in range(m))]
    assert ok == bool(direct)
    if ok:
        assert codec(m).decode(w) in direct


def test_agent_set_size_is_percepts_to_the_m():
    for m in range(1, 4):
        assert len(agent_set(always("1"), codec(m))) == 2 ** m
