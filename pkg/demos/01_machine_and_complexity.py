"""
The reference machine and bounded complexity
============================================

A short tour: run a few programs, then ask for the shortest ones.
"""

from islab.refmachine import assemble, disassemble, run, encode_pair, encode_set
from islab.complexity import Budget, plain_complexity, levin_complexity, algorithmic_mass, lz_estimate

# Programs are bit strings read three bits at a time.  `assemble` turns
# mnemonics into bits, which is easier on the eyes.

prog = assemble(".H")
print(prog, disassemble(prog))
print(run(prog))

# Reading from the auxiliary tape: `,` loads the next aux bit.

print(run(assemble(",.H"), aux="1"))

# A loop that never ends just runs out of budget.

print(run(assemble("~[]"), max_steps=25).kind)

# ## Shortest programs
#
# Search enumerates every program up to L bits.  The `exact` flag says
# whether anything shorter timed out (in which case a shorter producer
# could still be hiding).

budget = Budget(12, 500)
for x in ["", "0", "1", "01"]:
    r = plain_complexity(x, budget=budget)
    print(f"C({x!r:5}) = {r.value!s:4} exact={r.exact}  witness={r.witness}")

# Levin's variant charges log2 of the time until the output appears, but
# does not require halting, so it can be smaller.

for x in ["", "0", "1"]:
    r = levin_complexity(x, budget=budget)
    print(f"Ct({x!r}) = {r.value}  via {r.witness!r}")

# Algorithmic mass adds 2^-l(p) over all halting producers.

print("m(eps) at L=6:", algorithmic_mass("", Budget(6, 100)))

# When search is out of reach the LZ78 estimate stands in.  Conditioning
# on a context primes its dictionary.

x = "0" * 16
print(lz_estimate(x), lz_estimate(x, {x}))

# Pairs and sets are serialized with a self-delimiting length header.

print(encode_pair("01", "1"), encode_set({"11", "0", "10"}))
