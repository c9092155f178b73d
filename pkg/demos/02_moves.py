"""
Moves and invariance
====================

Random move sequences leave Milnor tables alone; self-virtual moves only
keep the non-repeating ones.
"""

from cutdiagrams import corpus
from cutdiagrams.magnus import milnor_table, reduced_milnor_table
from cutdiagrams.moves import KIND_ORDER, apply_move, enumerate_moves, parse_move, random_walk_trace

hopf = corpus.load("hopf")

# every applicable R-move on the Hopf diagram, in a fixed order
moves = enumerate_moves(hopf)
print(len(moves), "moves, e.g.", [str(m) for m in moves[:4]])

# thirty random moves, reproducible from the seed
final, applied = random_walk_trace(hopf, 30, seed=7)
print("cut-points:", hopf.num_cutpoints(), "->", final.num_cutpoints())
print("same table:", milnor_table(final, 4).agrees_with(milnor_table(hopf, 4)))

# mixing in self-virtual moves can change the full table
whitehead = corpus.load("whitehead")
final, applied = random_walk_trace(whitehead, 30, seed=3, kinds=KIND_ORDER)
print("reduced same:", reduced_milnor_table(final, 2).agrees_with(reduced_milnor_table(whitehead, 2)))

# a short route from the Whitehead link to the 2-component unlink
d = whitehead
for text in corpus.WHITEHEAD_TO_UNLINK:
    d = apply_move(d, parse_move(text))
    print(f"{text:24s} {d.num_cutpoints()} cut-points")
print("first difference:", milnor_table(whitehead, 4).first_difference(milnor_table(d, 4)))
