"""
Milnor numbers of the bundled links
===================================

Parse a few diagrams, then print their Milnor tables.
"""

from cutdiagrams import corpus
from cutdiagrams.core import linking_matrix
from cutdiagrams.magnus import milnor_table, reduced_milnor_table
from cutdiagrams.parse_io import parse_gauss, write_cut

# the Hopf link from its Gauss code; each component passes under the other once
hopf = parse_gauss("O1+ U2+; O2+ U1+", name="hopf")
print(write_cut(hopf))

# length-2 entries are linking numbers
print("hopf:", milnor_table(hopf, 2).lines())
print(linking_matrix(hopf))

# the Borromean rings are pairwise unlinked, yet mu(123) is nonzero
borromean = corpus.load("borromean")
print("borromean lk:\n", linking_matrix(borromean))
for line in milnor_table(borromean, 3).lines():
    print("  ", line)

# the Whitehead link needs length 4 to be seen
whitehead = corpus.load("whitehead")
for line in milnor_table(whitehead, 4).lines():
    print("  ", line)

# its non-repeating part vanishes entirely
print("whitehead reduced:", reduced_milnor_table(whitehead, 4).lines())
