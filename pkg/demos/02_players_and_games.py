"""
Players, games and equilibria
=============================
"""

import itertools
from fractions import Fraction

from islab.players import NormalFormGame, Player, intersect, nash_players, pure_nash
from islab.fixtures import RPS_CODEC, rps_players

# A player is a set of n-bit strings: every interaction it can take part in.

a, b = rps_players()
print(a)
print(b)

# Rock-paper-scissors over two rounds.  One side only ever plays rock,
# the other opens with paper and then repeats its opponent's first move.
# Only one game is compatible with both.

common = intersect(a, b)
for g in common:
    print(g, RPS_CODEC.decode(g))

# ## Normal-form games
#
# Each payoff table gives a player made of the profiles where it scores 1;
# their intersection is the set of pure equilibria.

coord = NormalFormGame(1, lambda x, y: int(x == y))
A, B = nash_players(coord, coord)
print("coordination:", (A & B).members(), pure_nash(coord, coord))

pennies_p = NormalFormGame(1, lambda x, y: int(x == y))
pennies_q = NormalFormGame(1, lambda x, y: int(x != y))
A, B = nash_players(pennies_p, pennies_q)
print("matching pennies:", len(A & B), "equilibria")

# Something with fractional payoffs over 2-bit actions.

acts = ["".join(t) for t in itertools.product("01", repeat=2)]
p = {(x, y): Fraction(int(x <= y)) for x in acts for y in acts}
q = {(x, y): Fraction(x.count("1"), 2) for x in acts for y in acts}
print(pure_nash(NormalFormGame(2, p), NormalFormGame(2, q)))

# Large n switches to a sorted backend automatically.

wide = Player(30, ["0" * 30, "1" * 30])
print(wide.backend, len(wide))
