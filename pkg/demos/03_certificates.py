"""
Concordance certificates
========================

Replay movies of slices and see which ones are accepted.
"""

from cutdiagrams import corpus
from cutdiagrams.concordance import Certificate, build_slice, build_sv_trace, verify
from cutdiagrams.moves import parse_move
from cutdiagrams.parse_io import write_certificate

# the trefoil: three vertex deaths reach the empty diagram
trefoil_slice = corpus.load_certificate("trefoil-slice")
print(write_certificate(trefoil_slice))
print(verify(trefoil_slice).summary())

# the same recipe on the Hopf link breaks the labeling rule at once
print(verify(build_slice(corpus.load("hopf"))).summary())

# a reduced certificate from the Whitehead link to the unlink
whitehead = corpus.load("whitehead")
cert = build_sv_trace(whitehead, [parse_move(t) for t in corpus.WHITEHEAD_TO_UNLINK])
print(write_certificate(cert, "unlink2"))
print("reduced:", verify(cert).summary())

# forcing strict mode rejects the first self-virtual event
strict = Certificate(cert.initial, cert.events, "strict", cert.final)
print("strict:", verify(strict).summary())
