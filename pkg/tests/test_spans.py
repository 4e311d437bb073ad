import random

import pytest

from gpdact.catalog import cyclic
from gpdact.errors import NaturalityViolation, TypeMismatch
from gpdact.groupoids import TRIVIAL_OBJECT
from gpdact.profunctors import (
    boundary_left,
    boundary_right,
    free_system,
    hom_profunctor,
    path,
)
from gpdact.spans import (
    Span2,
    apply_span,
    dagger,
    equals,
    horizontal_compose,
    identity_span,
    is_unitary,
    make_span,
    random_natural_span,
    unit_intro,
    vertical_compose,
    whisker,
    zero_span,
)
from gpdact.structures import canonical_cells

ST1 = (TRIVIAL_OBJECT, TRIVIAL_OBJECT)


def hom_stage(g):
    o = g.objects[0]
    return (o, o)


def test_make_span_identity_ok():
    h = hom_profunctor(cyclic(2))
    st = hom_stage(cyclic(2))
    s = make_span(h, h, {(st, 0, 0): 1, (st, 1, 1): 1})
    assert s.entry(st, 0, 0) == 1


def test_make_span_naturality_violation():
    z2 = cyclic(2)
    h = hom_profunctor(z2)
    st = hom_stage(z2)
    # acting with the swap on one side forces the mirrored entry too
    with pytest.raises(NaturalityViolation):
        make_span(h, h, {(st, 0, 1): 1})
    s = make_span(h, h, {(st, 0, 1): 1, (st, 1, 0): 1})
    assert s.entry(st, 1, 0) == 1


def test_zero_span_is_valid():
    h = hom_profunctor(cyclic(2))
    z = zero_span(h, h)
    assert not z.entries
    ok, witness = equals(z, identity_span(h))
    assert not ok
    assert witness is not None


def test_identity_span_sizes():
    one = free_system(1)
    assert len(identity_span(one).entries) == 1
    h = hom_profunctor(cyclic(2))
    assert len(identity_span(h).entries) == 2
    empty = free_system(0)
    assert len(identity_span(empty).entries) == 0


def test_vertical_identity_and_permutations():
    z3 = cyclic(3)
    h = hom_profunctor(z3)
    st = hom_stage(z3)
    ident = identity_span(h)
    perm = make_span(h, h, {(st, m, z3.compose(m, 1)): 1 for m in z3.morphisms})
    assert equals(vertical_compose(perm, ident), perm)[0]
    assert equals(vertical_compose(ident, perm), perm)[0]
    twice = vertical_compose(perm, perm)
    expect = make_span(h, h, {(st, m, z3.compose(m, 2)): 1 for m in z3.morphisms})
    assert equals(twice, expect)[0]


def test_vertical_multiplicity_sum():
    s = free_system(2)
    t = free_system(2)
    a = Span2(s, t, {(ST1, "s0", "s0"): 1, (ST1, "s0", "s1"): 1})
    b = Span2(t, s, {(ST1, "s0", "s1"): 1, (ST1, "s1", "s1"): 1})
    c = vertical_compose(a, b)
    assert c.entry(ST1, "s0", "s1") == 2


def test_dagger_involution_and_reversal():
    z2 = cyclic(2)
    h = hom_profunctor(z2)
    rng = random.Random(7)
    a = random_natural_span(h, h, rng)
    b = random_natural_span(h, h, rng)
    assert equals(dagger(dagger(a)), a)[0]
    lhs = dagger(vertical_compose(a, b))
    rhs = vertical_compose(dagger(b), dagger(a))
    assert equals(lhs, rhs)[0]


def test_dagger_of_glue_is_split():
    cells = canonical_cells(cyclic(2))
    assert equals(dagger(cells.mu), cells.mu_dagger)[0]
    assert equals(dagger(cells.mu_dagger), cells.mu)[0]


def test_horizontal_trivial_middle_is_entrywise_product():
    s = free_system(2)
    a = Span2(s, s, {(ST1, "s0", "s0"): 2, (ST1, "s1", "s0"): 1})
    b = Span2(s, s, {(ST1, "s0", "s1"): 3})
    c = horizontal_compose(a, b)
    src = path(s, s)
    st = ST1
    k00 = src.canonical(("s0", "s0"))
    t01 = src.canonical(("s0", "s1"))
    assert c.entry(st, k00, t01) == 6
    k10 = src.canonical(("s1", "s0"))
    assert c.entry(st, k10, t01) == 3
    assert len(c.entries) == 2


def test_horizontal_identities_compose_to_identity():
    z3 = cyclic(3)
    bl, br = boundary_left(z3), boundary_right(z3)
    c = horizontal_compose(identity_span(bl), identity_span(br))
    assert equals(c, identity_span(path(bl, br)))[0]


def test_glue_then_destroy_roundtrip_value():
    # split then destroy on the right boundary: the engine evaluation
    # reproduces the hand computation: one surviving branch per input
    z2 = cyclic(2)
    cells = canonical_cells(z2)
    br = cells.right
    step1 = vertical_compose(
        unit_intro(br, 0), horizontal_compose(cells.mu_dagger, identity_span(br))
    )
    step2 = vertical_compose(
        horizontal_compose(identity_span(br), cells.epsilon),
        dagger(unit_intro(br, 1)),
    )
    total = vertical_compose(step1, step2)
    assert equals(total, identity_span(br))[0]


def test_interchange_on_random_small_instances():
    z2 = cyclic(2)
    h = hom_profunctor(z2)
    rng = random.Random(11)
    for _ in range(8):
        a = random_natural_span(h, h, rng)
        a2 = random_natural_span(h, h, rng)
        b = random_natural_span(h, h, rng)
        b2 = random_natural_span(h, h, rng)
        lhs = horizontal_compose(vertical_compose(a, a2), vertical_compose(b, b2))
        rhs = vertical_compose(horizontal_compose(a, b), horizontal_compose(a2, b2))
        assert equals(lhs, rhs)[0]


def test_dagger_distributes_over_horizontal():
    z2 = cyclic(2)
    h = hom_profunctor(z2)
    rng = random.Random(3)
    a = random_natural_span(h, h, rng)
    b = random_natural_span(h, h, rng)
    assert equals(dagger(horizontal_compose(a, b)),
                  horizontal_compose(dagger(a), dagger(b)))[0]


def test_equals_reports_witness():
    h = hom_profunctor(cyclic(2))
    st = hom_stage(cyclic(2))
    ident = identity_span(h)
    ok, witness = equals(ident, zero_span(h, h))
    assert not ok
    assert witness[0] == st and witness[1] == witness[2]
    with pytest.raises(TypeMismatch):
        equals(ident, identity_span(boundary_left(cyclic(2))))


def test_split_then_glue_not_identity_z3():
    cells = canonical_cells(cyclic(3))
    back = vertical_compose(cells.mu_dagger, cells.mu)
    ok, witness = equals(back, identity_span(back.src))
    assert not ok
    # every diagonal entry counts the three splittings
    assert witness[3] == 3 or witness[4] == 3


def test_unitary_examples():
    z4 = cyclic(4)
    h = hom_profunctor(z4)
    st = hom_stage(z4)
    ident = identity_span(h)
    assert is_unitary(ident)[0]
    shift = make_span(h, h, {(st, m, z4.compose(m, 1)): 1 for m in z4.morphisms})
    assert is_unitary(shift)[0]
    doubled = Span2(h, h, {(st, m, m): 2 for m in z4.morphisms})
    ok, witness = is_unitary(doubled)
    assert not ok
    assert witness[4] == 4  # the self-product puts 4 on the diagonal


def test_apply_span():
    z2 = cyclic(2)
    h = hom_profunctor(z2)
    st = hom_stage(z2)
    swap = make_span(h, h, {(st, 0, 1): 1, (st, 1, 0): 1})
    assert apply_span(swap, st, 0) == [(1, 1)]


def test_whisker_and_unitors():
    z2 = cyclic(2)
    bl = boundary_left(z2)
    u = unit_intro(bl, 0)
    assert is_unitary(u)[0]
    v = unit_intro(bl, 1)
    assert is_unitary(v)[0]
    w = whisker(identity_span(bl), right=boundary_right(z2))
    assert equals(w, identity_span(path(bl, boundary_right(z2))))[0]


def test_naturality_of_engine_outputs():
    from gpdact.spans import check_naturality

    z3 = cyclic(3)
    cells = canonical_cells(z3)
    assert check_naturality(cells.mu)
    assert check_naturality(cells.epsilon)
    comp = horizontal_compose(cells.mu_dagger, identity_span(cells.right))
    assert check_naturality(comp)
