"""Persistence diagrams of one-parameter modules and bottleneck matching.

Builds a module from a diagram, recovers the diagram through the rank
multiplicity formula, and compares two diagrams with both the matching-based
bottleneck distance and the brute-force multibijection oracle.
"""

from fractions import Fraction as F

from permod import PrimeField
from permod.exactnum import INF, ext
from permod.onedim import (PersistenceDiagram, bottleneck,
                           bottleneck_bruteforce, diagram_of, presentation_of)

field = PrimeField(2)

d1 = PersistenceDiagram([(ext(0), ext(2), 1), (ext(1), INF, 1)])
print("diagram 1:", d1)

# Realize it as a direct sum of interval modules and read it back.
p = presentation_of(d1, field)
print("module:", p)
print("recovered:", diagram_of(p))
assert diagram_of(p) == d1

d2 = PersistenceDiagram([(ext(F(1, 2)), ext(2), 1), (ext(1), INF, 1)])
print("diagram 2:", d2)

print("bottleneck:", bottleneck(d1, d2))
print("brute force:", bottleneck_bruteforce(d1, d2))

# Deleting a short class costs half its lifetime.
d3 = PersistenceDiagram([(ext(0), ext(1), 1)])
print("delete-only distance:", bottleneck(d3, PersistenceDiagram([])))
