import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from groupsemi.errors import DomainMismatch
from groupsemi.groups import IntGroup, IntVecGroup, parse_group

Z = IntGroup()
Z2 = IntVecGroup(2)
ints = st.integers(-10**6, 10**6)
vecs = st.tuples(ints, ints)


def test_int_examples():
    assert Z.add(3, -5) == -2
    assert Z.double(3) == 6
    assert Z.double(0) == 0


def test_lex_examples():
    assert Z2.cmp((0, -7), (1, -100)) < 0
    assert Z2.double((1, -2)) == (2, -4)
    chain = [(0, -m) for m in range(6)]
    assert all(Z2.cmp(a, b) > 0 for a, b in zip(chain, chain[1:]))
    assert all(Z2.cmp(a, (-1, 0)) > 0 for a in chain)  # bounded below, no least element


@pytest.mark.parametrize("grp, gen", [(Z, ints), (Z2, vecs)])
@given(data=st.data())
def test_torsion_free(grp, gen, data):
    a, b = data.draw(gen), data.draw(gen)
    n = data.draw(st.integers(1, 10))
    assume(a != b)
    assert grp.scale(n, a) != grp.scale(n, b)


@pytest.mark.parametrize("grp, gen", [(Z, ints), (Z2, vecs)])
@given(data=st.data())
def test_translation_invariance(grp, gen, data):
    a, b, d = (data.draw(gen) for _ in range(3))
    assert grp.cmp(a, b) == grp.cmp(grp.add(a, d), grp.add(b, d))


@pytest.mark.parametrize("grp, gen", [(Z, ints), (Z2, vecs)])
@given(data=st.data())
def test_group_laws(grp, gen, data):
    a, b, c = (data.draw(gen) for _ in range(3))
    assert grp.add(a, grp.add(b, c)) == grp.add(grp.add(a, b), c)
    assert grp.add(a, b) == grp.add(b, a)
    assert grp.add(a, grp.zero) == a
    assert grp.add(a, grp.neg(a)) == grp.zero
    assert grp.sub(a, b) == grp.add(a, grp.neg(b))


def test_dimension_mismatch():
    with pytest.raises(DomainMismatch):
        Z2.add((1, 2), (1, 2, 3))


@pytest.mark.parametrize("spec, expected", [("z", Z), ("zvec:2", Z2), ("zvec:3", IntVecGroup(3))])
def test_parse_group(spec, expected):
    assert parse_group(spec) == expected


@pytest.mark.parametrize("spec", ["q", "zvec:0", "zvec:x"])
def test_parse_group_rejects(spec):
    with pytest.raises(ValueError):
        parse_group(spec)


@pytest.mark.parametrize("grp, e, text", [(Z, -3, "(-3)"), (Z, 4, "4"), (Z2, (1, -2), "(1,-2)")])
def test_fmt(grp, e, text):
    assert grp.fmt(e) == text
