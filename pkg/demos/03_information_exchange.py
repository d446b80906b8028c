"""
How much do two players learn from each other?
==============================================

Knowledge, deficiency and exchanged information, evaluated under two
complexity models.  The identities connecting them hold exactly, so the
residuals printed below are symbolic zeros rather than rounding noise.
"""

from islab.complexity import Budget, ExactBounded, LZ78Estimator
from islab.fixtures import RPS_INTERACTION, rps_players
from islab.logreal import render
from islab.measures import exchange_report
from islab.players import Player

a, b = rps_players()
rep = exchange_report(a, b, RPS_INTERACTION, LZ78Estimator())

for name in ("knowledge", "deficiency_ab", "info_x_b_given_a", "deficiency_x_a", "deficiency_x_ab",
             "eq2_residual", "eq5_residual", "eq6_residual"):
    print(f"{name:18} {render(getattr(rep, name))}")

# A single shared game means the players interact deterministically.

print(rep.corollary)

# The same report with exhaustive search on a one-bit toy: constants of
# the machine dominate at this scale, which is the point of looking.

small = exchange_report(Player(1, ["0", "1"]), Player(1, ["0"]), "0", ExactBounded(Budget(6, 100)))
print(small.to_json())
