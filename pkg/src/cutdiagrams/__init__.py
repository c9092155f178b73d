"""Cut-diagrams: moves, groups, Chen maps, Milnor invariants and
concordance certificates."""

from .concordance import Certificate, Event, Report, boundaries, build_slice, build_sv_trace, build_trace, verify
from .core import CutDiagram, CutPoint, RegionRef, Skeleton, linking_matrix, region_count, validate_diagram
from .group import FreeWord, longitude, meridian, path_word, presentation
from .chen import RoadNetwork, canonical_network, chen_map, nilpotent_presentation, rewrite_network, road_network
from .magnus import MilnorTable, TruncatedSeries, expand, in_lcs, milnor_table, reduced_expand, reduced_milnor_table
from .moves import MoveInstance, apply_move, enumerate_moves, inverse_move, random_walk
from .parse_io import GaussCode, ParseError, parse_certificate, parse_cut, parse_gauss, write_certificate, write_cut
from .peripheral import peripheral_system, reduced_peripheral, same_invariants

__version__ = "0.1.0"
