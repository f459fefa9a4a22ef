"""Computing interleaving distances between persistence modules.

Walks through the full decision pipeline on interval modules: candidate
values, individual eps-decisions via quadratic-system solvability, and the
binary-searched distance, cross-checked against the bottleneck distance of
the corresponding diagrams.
"""

from fractions import Fraction as F

from permod import (PrimeField, candidate_set, decide_interleaving,
                    interleaving_distance, interval_presentation)
from permod.interleave import assemble_system
from permod.onedim import bottleneck, diagram_of
from permod.presentation import MonotoneAffineMap

field = PrimeField(2)

# Two interval modules: alive on [0, 4) and on [1, 3).
m = interval_presentation(field, 0, 4)
n = interval_presentation(field, 1, 3)

print("M =", m)
print("N =", n)

# The distance can only take finitely many values: pairwise grade
# differences and half-differences of the minimal presentations.
cands = candidate_set(m, n)
print("candidate values:", cands)

# Each decision is the solvability of a quadratic system over Z/2.
j = MonotoneAffineMap.translation(1, F(1, 2))
system = assemble_system(m, n, j, j)
print(f"eps=1/2 system: {system.free_variable_count} variables, "
      f"{system.equation_count} equations")
for eps in (F(1, 2), F(1)):
    print(f"  {eps}-interleaved?", decide_interleaving(m, n, eps))

d = interleaving_distance(m, n)
print("interleaving distance:", d)

# For one-parameter modules this equals the bottleneck distance.
db = bottleneck(diagram_of(m), diagram_of(n))
print("bottleneck distance:  ", db)
assert d == db
