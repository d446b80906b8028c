import itertools

import pytest

from islab.complexity import Budget, ExactBounded, LZ78Estimator
from islab.logreal import LogReal
from islab.players import Player, intersect
from islab.refmachine import run
from islab.complexity import context_encoding
from islab.theoremlab import (PlayerFamily, check_approximation, check_covering, check_info_bound,
                              check_simplification, reports_csv)

LZ = LZ78Estimator()
U2 = ["00", "01", "10", "11"]
U4 = ["".join(b) for b in itertools.product("01", repeat=4)]


def pairs_family():
    return PlayerFamily("pairs", [Player(2, c) for c in itertools.combinations(U2, 2)])


def singles_plus(extra):
    return PlayerFamily("singles+", [Player(2, [s]) for s in U2] + [extra])


def brute_min(family, ok, model, ctx=()):
    vals = [(model(p.encode(), ctx), i) for i, p in enumerate(family.members) if ok(p)]
    return min(v for v, _ in vals)


def test_covering_six_subsets():
    fam = pairs_family()
    r = max(LZ(p.encode()) for p in fam.members if "00" in p)
    rep = check_covering(fam, "00", r, LZ)
    assert rep.claim and rep.quantities["N"] == 3 and rep.quantities["k"] == 1
    assert "00" in rep.witness
    assert rep.witness_complexity == brute_min(fam, lambda p: "00" in p, LZ)
    assert rep.slack == rep.witness_complexity - (r - 1)
    assert rep.quantities["k_all"] == 1


def test_covering_no_claim_and_single():
    fam = PlayerFamily("one", [Player(2, ["01", "10"])])
    assert not check_covering(fam, "00", 100, LZ).claim
    r = LZ(fam.members[0].encode())
    rep = check_covering(fam, "01", r, LZ)
    assert rep.quantities["N"] == 1 and rep.quantities["k"] == 0 and rep.slack == 0


def test_approximation_pairs():
    fam = pairs_family()
    a, b = Player(2, ["00", "01"]), Player(2, ["01", "11"])
    rep = check_approximation(fam, a, b, "01", LZ)
    assert rep.claim and "01" in rep.witness
    assert rep.witness_complexity == brute_min(fam, lambda p: "01" in p, LZ, {a.encode()})
    # B itself is a candidate, so the slack never exceeds C(B|A) - I
    assert rep.slack <= rep.quantities["slack_ceiling"]
    assert rep.quantities["counting_residual"] is not None


def test_approximation_single_candidate():
    a, b = Player(2, ["00", "01"]), Player(2, ["01", "11"])
    rep = check_approximation(PlayerFamily("b", [b]), a, b, "01", LZ)
    assert rep.witness == b and rep.slack == rep.quantities["slack_ceiling"]


def test_approximation_rejects_x_outside():
    a, b = Player(2, ["00"]), Player(2, ["01", "11"])
    with pytest.raises(ValueError):
        check_approximation(PlayerFamily("b", [b]), a, b, "01", LZ)


def test_approximation_micro_exact_witness_runs():
    a, b = Player(2, ["00", "01"]), Player(2, ["00", "10"])
    fam = PlayerFamily("m", [Player(2, ["00"]), b])
    model = ExactBounded(Budget(9, 200))
    rep = check_approximation(fam, a, b, "00", model)
    assert rep.witness == Player(2, ["00"])
    o = run(rep.witness_program, context_encoding({a.encode()}), 200)
    assert o.halted and o.output == rep.witness.encode()
    assert rep.quantities["witness_exact"] is True


def test_family_growth_never_lowers_n():
    a, b = Player(2, ["00", "01"]), Player(2, ["01", "11"])
    small = PlayerFamily("s", [b, Player(2, ["01", "10"])])
    big = PlayerFamily("b", small.members + [Player(2, ["00", "01"]), Player(2, ["01"])])
    n1 = check_approximation(small, a, b, "01", LZ).quantities["N"]
    n2 = check_approximation(big, a, b, "01", LZ).quantities["N"]
    assert n2 >= n1


def test_info_bound():
    b = Player(2, ["01", "11"])
    a = Player(2, ["01"])
    fam = singles_plus(b)
    rep = check_info_bound(fam, a, b, LZ)
    assert len(intersect(a, rep.witness)) > 0
    assert rep.witness_complexity == brute_min(fam, lambda p: len(intersect(a, p)) > 0, LZ)
    only = PlayerFamily("only", [b, Player(2, ["10"])])
    assert check_info_bound(only, a, b, LZ).witness == b
    with pytest.raises(ValueError):
        check_info_bound(fam, Player(2, ["00"]), b, LZ)


def test_info_bound_self_case():
    a = Player(2, ["01", "10"])
    fam = PlayerFamily("self", [a, Player(2, ["01"])])
    rep = check_info_bound(fam, a, a, LZ)
    assert rep.witness_complexity <= LZ(a.encode())
    assert rep.target == LZ(a.encode()) - LZ(a.encode(), {a.encode()})


def test_simplification_sixteen_singletons():
    fam = PlayerFamily("singles4", [Player(4, [s]) for s in U4])
    a = Player.full(4)
    r = max(LZ(p.encode()) for p in fam.members)
    rep = check_simplification(fam, a, 1, r, LZ)
    assert rep.quantities["Q"] == 16 and rep.quantities["k"] == 4
    best = min(LZ(s) for s in U4)
    assert rep.witness_complexity == best
    assert rep.witness == Player(4, [min((s for s in U4 if LZ(s) == best))])
    assert rep.slack == best - (r - 4)


def test_simplification_vacuous_and_no_claim():
    fam = pairs_family()
    a = Player.full(2)
    rep = check_simplification(fam, a, 4, 10 ** 6, LZ)
    assert rep.witness_complexity == min(LZ(p.encode()) for p in fam.members)
    assert not check_simplification(PlayerFamily("d", [Player(2, ["11"])]), Player(2, ["00"]), 1, 50, LZ).claim
    with pytest.raises(ValueError):
        check_simplification(fam, a, 0, 5, LZ)


def test_reports_are_deterministic_across_workers():
    fam = pairs_family()
    r = LogReal(20)
    one = check_covering(fam, "00", r, LZ, workers=1).to_json()
    two = check_covering(fam, "00", r, LZ, workers=2).to_json()
    assert one == two == check_covering(fam, "00", r, LZ).to_json()


def test_csv_rows():
    fam = pairs_family()
    rep = check_covering(fam, "00", 30, LZ)
    lines = reports_csv([("pairs", rep)]).splitlines()
    assert lines[0].startswith("family,theorem,claim")
    assert lines[1].startswith("pairs,covering,true,6,3,1,")


def test_family_validation():
    with pytest.raises(ValueError):
        PlayerFamily("empty", [])
    with pytest.raises(ValueError):
        PlayerFamily("mixed", [Player(1, ["0"]), Player(2, ["00"])])
