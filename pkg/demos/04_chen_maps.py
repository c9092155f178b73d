"""
Chen maps and road networks
===========================

Region generators rewritten as conjugates of meridians, and tables that
do not depend on the chosen roads.
"""

from cutdiagrams import corpus
from cutdiagrams.chen import ChenMap, canonical_network, road_network
from cutdiagrams.core import RegionRef
from cutdiagrams.group import FreeWord, longitude, presentation
from cutdiagrams.magnus import expand, milnor_table

trefoil = corpus.load("trefoil")
for rel in presentation(trefoil).relations:
    print(rel)

# on a knot every region maps to the one meridian
eta = ChenMap(trefoil, canonical_network(trefoil))
print(eta(3, FreeWord.gen(RegionRef(1, 2))))

# on a link the image of a region grows with the nilpotency level
borromean = corpus.load("borromean")
eta = ChenMap(borromean)
for q in (1, 2, 3):
    print(q, eta(q, FreeWord.gen(RegionRef(1, 1))))

# Magnus expansion of a longitude
series = expand(eta(3, longitude(borromean, 3)), 3, 3)
print({k: v for k, v in series.coefficients.items() if k})

# moving a basepoint does not change the table
net = road_network(borromean, {1: 1, 2: 1})
print(milnor_table(borromean, 3, net).agrees_with(milnor_table(borromean, 3)))
