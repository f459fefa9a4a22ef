"""From a point cloud to presentations of bifiltered homology.

Builds the sublevelset-Rips and sublevelset-Cech bifiltrations of a small
planar cloud, extracts presentations of their degree-1 homology, and checks
the scale-doubling interleaving relation between them with the generalized
decision procedure.
"""

from fractions import Fraction as F

from permod import PrimeField, PointCloud
from permod.filtration import cech_bifiltration, rips_bifiltration
from permod.homology import grid_module_of, present_homology
from permod.interleave import decide_generalized
from permod.presentation import MonotoneAffineMap

field = PrimeField(2)

# An acute triangle with rational circumradius (25/8), so the Cech scale
# differs from the Rips scale (3) while staying rational.
cloud = PointCloud([(-3, 0), (3, 0), (0, 4)])
height = [(F(0),)] * 3

rips = rips_bifiltration(cloud, 2, height, max_dim=2, scale_cap=F(100))
cech = cech_bifiltration(cloud, 2, height, max_dim=2, scale_cap=F(100))
print("Rips complex:")
print(rips.to_text())
print("Cech complex:")
print(cech.to_text())

h1_rips = present_homology(rips, 1, field)
h1_cech = present_homology(cech, 1, field)
print("H1(Rips):", h1_rips)
print("H1(Cech):", h1_cech, "alive on scale [3, 25/8)")

# Rips and Cech persistence are interleaved after doubling the scale axis.
doubling = MonotoneAffineMap.scale_last(2, 2)
identity = MonotoneAffineMap.identity(2)
print("(doubling, id)-interleaved:",
      decide_generalized(h1_rips, h1_cech, doubling, identity))

# Grid modules expose pointwise dimensions and transition ranks.
gm = grid_module_of(h1_cech, [[F(0)], [F(0), F(3), F(25, 8)]])
print("H1(Cech) dims on the scale axis:", [gm.dims[(0, k)] for k in range(3)])
