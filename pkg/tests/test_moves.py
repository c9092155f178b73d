import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cutdiagrams import corpus
from cutdiagrams.core import CutDiagram, RegionRef, Skeleton, validate_diagram
from cutdiagrams.magnus import milnor_table, reduced_milnor_table
from cutdiagrams.moves import (
    KIND_ORDER,
    R1_MINUS,
    R1_PLUS,
    R2_MINUS,
    R2_PLUS,
    R3,
    SELF_VIRTUAL,
    SV_MINUS,
    SV_PLUS,
    TOPOLOGICAL,
    MoveError,
    MoveInstance,
    apply_move,
    enumerate_moves,
    format_move,
    inverse_move,
    moves_by_kind,
    parse_move,
    r3_targets,
    random_move,
    random_walk,
    random_walk_trace,
)

from strategies import diagrams

UNKNOT = CutDiagram.build(["circle"], [[]])


def test_kink_insertion_and_removal(kink):
    d = apply_move(UNKNOT, MoveInstance(R1_PLUS, 1, 0, 1, side="before"))
    assert d == kink
    assert apply_move(kink, MoveInstance(R1_MINUS, 1, 0)) == UNKNOT


def test_r2_on_unlink(unlink2):
    d = apply_move(unlink2, MoveInstance(R2_PLUS, 1, 0, 1, RegionRef(2, 0)))
    assert [tuple(cp) for cp in d.points(1)] == [(1, RegionRef(2, 0)), (-1, RegionRef(2, 0))]
    assert d.points(2) == ()
    assert apply_move(d, MoveInstance(R2_MINUS, 1, 0)) == unlink2


def test_sv_needs_a_self_label(hopf, kink):
    assert moves_by_kind(hopf, (SV_MINUS,))[SV_MINUS] == []
    with pytest.raises(MoveError):
        apply_move(hopf, MoveInstance(SV_MINUS, 1, 0))
    assert apply_move(kink, MoveInstance(SV_MINUS, 1, 0)) == UNKNOT


def test_side_conditions_are_enforced(hopf, trefoil):
    with pytest.raises(MoveError):
        apply_move(hopf, MoveInstance(R1_MINUS, 1, 0))
    with pytest.raises(MoveError):
        apply_move(trefoil, MoveInstance(R2_MINUS, 1, 0))
    with pytest.raises(MoveError):
        apply_move(hopf, MoveInstance(R2_PLUS, 1, 0, 1, RegionRef(2, 7)))
    with pytest.raises(MoveError):
        apply_move(hopf, MoveInstance(R2_PLUS, 3, 0, 1, RegionRef(2, 0)))


def test_whitehead_unknots_through_self_virtual_moves(whitehead, unlink2):
    d = whitehead
    for text in corpus.WHITEHEAD_TO_UNLINK:
        d = apply_move(d, parse_move(text))
    assert d == unlink2


def test_whitehead_route_uses_r3(whitehead):
    m = parse_move(corpus.WHITEHEAD_TO_UNLINK[0])
    d = apply_move(whitehead, m)
    r3 = parse_move(corpus.WHITEHEAD_TO_UNLINK[1])
    assert r3.label in r3_targets(d, r3.component, r3.position, r3.mover)


def test_enumeration_is_sorted_and_applicable(hopf):
    ms = enumerate_moves(hopf)
    assert ms == sorted(ms, key=MoveInstance.sort_key)
    assert {m.kind for m in ms} <= set(TOPOLOGICAL)
    for m in ms:
        assert validate_diagram(apply_move(hopf, m)).ok


def test_empty_circle_moves():
    ms = enumerate_moves(UNKNOT)
    r1 = [m for m in ms if m.kind == R1_PLUS]
    assert {m.sign for m in r1} == {1, -1} and all(m.side == "before" for m in r1)
    assert not any(m.kind in (R1_MINUS, R2_MINUS, R3) for m in ms)


@pytest.mark.parametrize(
    "text",
    ["R1+@1:0:+:before", "R2+@2:1:-:1.0", "R3@1:0:second:2.0", "SV-@1:1", "R2+@1:0:+:1.0:after:{1.1,2.0}"],
)
def test_move_text_round_trip(text):
    assert format_move(parse_move(text)) == text


@pytest.mark.parametrize("bad", ["R5@1:0", "R1+@1:0", "R3@1:0", "R1+"])
def test_bad_move_text(bad):
    with pytest.raises(ValueError):
        parse_move(bad)


def test_random_walk_is_reproducible(hopf):
    a, ma = random_walk_trace(hopf, 12, 7)
    b, mb = random_walk_trace(hopf, 12, 7)
    assert a == b and ma == mb and len(ma) == 12
    assert random_walk(hopf, 12, 7) == a
    assert all(m.kind in TOPOLOGICAL for m in ma)


def test_random_move_covers_every_kind():
    d = CutDiagram.build(["circle", "interval"], [[(1, (1, 0)), (-1, (2, 1))], [(1, (1, 1)), (1, (1, 1))]])
    rng = random.Random(0)
    seen = {random_move(d, rng, KIND_ORDER).kind for _ in range(400)}
    assert seen >= {R1_PLUS, R1_MINUS, R2_PLUS, SV_PLUS, SV_MINUS}


@given(diagrams(max_points=6), st.integers(0, 10**6))
def test_moves_preserve_milnor_tables(d, seed):
    m = random_move(d, random.Random(seed))
    e = apply_move(d, m)
    assert validate_diagram(e).ok
    assert milnor_table(e, 4).agrees_with(milnor_table(d, 4)), str(m)


@given(diagrams(max_points=6), st.integers(0, 10**6))
def test_self_virtual_moves_preserve_reduced_tables(d, seed):
    m = random_move(d, random.Random(seed), SELF_VIRTUAL)
    if m is None:
        return
    e = apply_move(d, m)
    assert reduced_milnor_table(e, 3).agrees_with(reduced_milnor_table(d, 3)), str(m)


@given(diagrams(max_points=6), st.integers(0, 10**6))
def test_inverse_move_undoes(d, seed):
    m = random_move(d, random.Random(seed), KIND_ORDER)
    e = apply_move(d, m)
    back = inverse_move(d, m)
    assert apply_move(e, back) == d, f"{m} then {back}"


@given(diagrams(max_points=5))
def test_every_enumerated_move_round_trips_as_text(d):
    for m in enumerate_moves(d, KIND_ORDER, relabel_limit=2):
        assert parse_move(format_move(m)) == m


@given(diagrams(max_points=5, max_components=2))
def test_every_enumerated_move_gives_a_valid_diagram(d):
    for m in enumerate_moves(d, KIND_ORDER, relabel_limit=1):
        assert validate_diagram(apply_move(d, m)).ok


@given(diagrams(max_points=6), st.integers(0, 10**6))
def test_long_walks_keep_tables(d, seed):
    e = random_walk(d, 8, seed)
    assert milnor_table(e, 3).agrees_with(milnor_table(d, 3))


def test_skeleton_is_never_changed(borromean):
    e = random_walk(borromean, 20, 3, KIND_ORDER)
    assert e.skeleton == borromean.skeleton == Skeleton(("circle",) * 3)
