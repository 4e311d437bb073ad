import json

import pytest

from gpdact.catalog import (
    catalog_groupoids,
    cyclic,
    dihedral_4,
    klein_four,
    named_group,
    quaternion_8,
    symmetric_3,
)
from gpdact.errors import (
    AssociativityViolation,
    EmptySet,
    MissingComposite,
    MissingInverse,
    NotAGroup,
    ParseError,
)
from gpdact.groupoids import (
    discrete_groupoid,
    disjoint_union,
    group_as_groupoid,
    groupoid_from_dict,
    load_groupoid,
    product,
    skeletalize,
)

TWO_STATE_BITS = {
    "objects": [0, 1],
    "morphisms": [["00", 0, 0], ["11", 0, 0], ["01", 1, 1], ["10", 1, 1]],
    "compose": [
        ["00", "00", "00"], ["00", "11", "11"], ["11", "00", "11"], ["11", "11", "00"],
        ["01", "01", "01"], ["01", "10", "10"], ["10", "01", "10"], ["10", "10", "01"],
    ],
}


def test_shorthand_z2():
    g = named_group("Z/2")
    assert len(g.objects) == 1
    assert set(g.morphisms) == {0, 1}
    assert g.identity[g.objects[0]] == 0
    assert g.inverse(1) == 1


def test_two_state_bit_groupoid_parses():
    g = groupoid_from_dict(TWO_STATE_BITS)
    assert len(g.objects) == 2
    assert g.mor_count() == 4
    assert g.is_skeletal


def test_missing_inverse_detected():
    data = {
        "objects": ["*"],
        "morphisms": [["e", "*", "*"], ["a", "*", "*"]],
        # a * a = a makes a idempotent and non-invertible
        "compose": [["e", "e", "e"], ["e", "a", "a"], ["a", "e", "a"], ["a", "a", "a"]],
    }
    with pytest.raises(MissingInverse):
        groupoid_from_dict(data)


def test_missing_composite_detected():
    data = {
        "objects": ["*"],
        "morphisms": [["e", "*", "*"], ["a", "*", "*"]],
        "compose": [["e", "e", "e"], ["e", "a", "a"], ["a", "e", "a"]],
    }
    with pytest.raises(MissingComposite):
        groupoid_from_dict(data)


def test_associativity_violation_detected():
    # a 3-element "table" that is a Latin square but not associative
    table = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    table[1][1] = 0
    table[1][2] = 2
    with pytest.raises((NotAGroup, AssociativityViolation)):
        group_as_groupoid(table)


def test_s3_from_table_is_a_group():
    g = symmetric_3()
    assert g.mor_count() == 6
    assert not g.is_abelian
    # verify the group axioms independently of the validator
    e = g.identity[g.objects[0]]
    for a in g.morphisms:
        assert g.compose(a, g.inverse(a)) == e
        for b in g.morphisms:
            assert g.compose(a, b) in g.morphisms


def test_non_latin_table_rejected():
    with pytest.raises(NotAGroup):
        group_as_groupoid([[0, 0], [0, 0]])


def test_discrete_groupoid():
    g = discrete_groupoid([0, 1])
    assert len(g.objects) == 2
    assert g.mor_count() == 2
    z4 = cyclic(4)
    d = discrete_groupoid(z4.morphisms)
    assert len(d.objects) == 4
    assert d.mor_count() == 4
    with pytest.raises(EmptySet):
        discrete_groupoid([])


def test_product_counts_and_klein_table():
    z2 = cyclic(2)
    p = product(z2, z2)
    assert len(p.objects) == 1
    assert p.mor_count() == 4
    # Klein four table: every element self-inverse
    for m in p.morphisms:
        assert p.inverse(m) == m
    k = klein_four()
    assert k.mor_count() == 4
    assert all(k.inverse(m) == m for m in k.morphisms)


def test_product_with_trivial_keeps_counts():
    g = symmetric_3()
    one = cyclic(1)
    p = product(g, one)
    assert len(p.objects) == len(g.objects)
    assert p.mor_count() == g.mor_count()


def test_product_of_two_object_groupoid():
    bits = groupoid_from_dict(TWO_STATE_BITS)
    p = product(bits, cyclic(2))
    assert len(p.objects) == 2
    assert p.mor_count() == 8
    assert p.mor_count() == bits.mor_count() * cyclic(2).mor_count()


def test_disjoint_union_is_two_state_bits():
    z2 = cyclic(2)
    u = disjoint_union(z2, z2)
    bits = groupoid_from_dict(TWO_STATE_BITS)
    assert len(u.objects) == len(bits.objects) == 2
    assert u.mor_count() == bits.mor_count() == 4
    assert u.is_skeletal


def test_disjoint_union_counts():
    u = disjoint_union(cyclic(2), cyclic(3))
    assert len(u.objects) == 2
    assert u.mor_count() == 5


def test_skeletalize_idempotent_and_witness():
    z2 = cyclic(2)
    s, witness, connectors = skeletalize(z2)
    assert s == z2
    assert witness == {z2.objects[0]: z2.objects[0]}
    u = disjoint_union(z2, z2)
    s2, w2, _ = skeletalize(u)
    assert s2.mor_count() == u.mor_count()
    again, _, _ = skeletalize(s2)
    assert again.mor_count() == s2.mor_count()
    assert len(again.objects) == len(s2.objects)


def test_skeletalize_collapses_connected_pair():
    data = {
        "objects": ["a", "b"],
        "morphisms": [["ea", "a", "a"], ["eb", "b", "b"], ["f", "a", "b"], ["g", "b", "a"]],
        "compose": [
            ["ea", "ea", "ea"], ["eb", "eb", "eb"],
            ["ea", "f", "f"], ["f", "eb", "f"],
            ["eb", "g", "g"], ["g", "ea", "g"],
            ["f", "g", "ea"], ["g", "f", "eb"],
        ],
    }
    g = groupoid_from_dict(data)
    assert not g.is_skeletal
    s, witness, connectors = skeletalize(g)
    assert len(s.objects) == 1
    assert s.mor_count() == 1
    assert witness["b"] == "a"
    assert connectors["b"] == "f"


def test_associativity_holds_everywhere_on_catalog():
    for g in catalog_groupoids():
        for f in g.morphisms:
            for h in g.morphisms:
                if g.tgt[f] != g.src[h]:
                    continue
                fh = g.compose(f, h)
                for k in g.morphisms:
                    if g.tgt[h] != g.src[k]:
                        continue
                    assert g.compose(fh, k) == g.compose(f, g.compose(h, k))
        for m in g.morphisms:
            assert g.inverse(g.inverse(m)) == m


def test_counts_multiply_and_add():
    for a, b in [(cyclic(2), cyclic(3)), (symmetric_3(), cyclic(2))]:
        assert product(a, b).mor_count() == a.mor_count() * b.mor_count()
        assert disjoint_union(a, b).mor_count() == a.mor_count() + b.mor_count()


def test_named_catalog():
    assert named_group("Z16").mor_count() == 16
    assert named_group("Z2xZ2").mor_count() == 4
    assert dihedral_4().mor_count() == 8
    assert quaternion_8().mor_count() == 8
    q8 = quaternion_8()
    assert q8.compose("i", "j") == "k"
    assert q8.compose("j", "i") == "-k"
    with pytest.raises(ParseError):
        named_group("Z99")


def test_file_roundtrip(tmp_path):
    p = tmp_path / "bits.json"
    p.write_text(json.dumps(TWO_STATE_BITS), encoding="utf-8")
    g = load_groupoid(str(p))
    assert g.mor_count() == 4


def test_unknown_keys_rejected():
    with pytest.raises(ParseError):
        groupoid_from_dict({"group": "Z2", "extra": 1})


def test_groupoid_equality_by_content():
    assert cyclic(3) == cyclic(3)
    assert cyclic(3) != cyclic(4)
    assert isinstance(hash(cyclic(3)), int)
