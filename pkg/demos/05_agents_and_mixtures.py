"""
Agents, environments and a Bayes mixture
========================================
"""

from fractions import Fraction

from islab.aixi import WeightedFamily, aixi_policy, mixture, universality_csv, universality_experiment, value_gaps
from islab.cybernetic import HistoryCodec, Policy, agent_set, env_set_B, env_set_D, optimal_value, value
from islab.fixtures import anti, echo

# In `echo` the percept repeats the action and the reward is the percept
# bit; `anti` negates it.

e = echo()
always1 = Policy.constant("1", e.actions, e.percepts, 6)
print(value(always1, e, 2), optimal_value(e, 2))

codec = HistoryCodec.for_env(e, 2)
print(agent_set(always1, codec).members())
print(env_set_B(e, codec, 1).members())
print(env_set_D(e, codec, Fraction(1, 2)).members())

# ## Mixing the two
#
# Equal prior weight: the first action is a coin flip the agent resolves
# toward 0, after which one percept tells it which world it lives in.

fam = WeightedFamily([echo(), anti()], [1, 1], "echo+anti")
xi = mixture(fam)
p2 = aixi_policy(fam, 2)
print(p2.to_table(), value(p2, xi, 2))

print(value_gaps(fam, range(1, 7)))
rows = universality_experiment(fam, [Fraction(1, 2), Fraction(1)], range(1, 7))
print(universality_csv(rows))

# Default weights fall off as 2^-length of each table's LZ78 code, so a
# few bits of difference already dominate the prior.

print(WeightedFamily([echo(), anti()]).normalized)
