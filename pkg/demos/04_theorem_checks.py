"""
Existence checks over explicit families
=======================================
"""

import itertools

from islab.complexity import LZ78Estimator
from islab.logreal import render
from islab.players import Player
from islab.theoremlab import (PlayerFamily, check_approximation, check_covering, check_info_bound,
                              check_simplification, reports_csv)

lz = LZ78Estimator()
u2 = ["00", "01", "10", "11"]
pairs = PlayerFamily("pairs", [Player(2, c) for c in itertools.combinations(u2, 2)])

# Covering: "00" lies in three of the six two-element sets.

r = max(lz(p.encode()) for p in pairs.members if "00" in p)
cov = check_covering(pairs, "00", r, lz)
print("covering", cov.quantities["N"], cov.quantities["k"], cov.witness, render(cov.slack))

a, b = Player(2, ["00", "01"]), Player(2, ["01", "11"])
approx = check_approximation(pairs, a, b, "01", lz)
info = check_info_bound(pairs, a, b, lz)

# Sixteen singletons inside the full 4-bit cube: 2^4 of them qualify, and
# the simplest is found by scanning all of them.

cube = [Player(4, ["".join(t)]) for t in itertools.product("01", repeat=4)]
singles = PlayerFamily("singles4", cube)
r4 = max(lz(p.encode()) for p in cube)
simp = check_simplification(singles, Player.full(4), 1, r4, lz)

print(reports_csv([("pairs", cov), ("pairs", approx), ("pairs", info), ("singles4", simp)]))
