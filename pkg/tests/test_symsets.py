import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tangles.builtin import load
from tangles.schema import vertex_text
from tangles.semilinear import SemilinearSet
from tangles.symsets import SymVertexSet

FAN = load("fan")  # core c, ray R, family T attached to c and along R

sls = st.builds(
    SemilinearSet.make,
    st.frozensets(st.integers(0, 12), max_size=4),
    st.lists(st.tuples(st.integers(0, 8), st.integers(1, 3)), max_size=2).map(tuple),
)


@st.composite
def symsets(draw):
    core = draw(st.frozensets(st.sampled_from(["c"]), max_size=1))
    ray = draw(sls)
    whole = draw(sls)
    loose = draw(st.frozensets(st.tuples(st.integers(0, 9)), max_size=3))
    plus = frozenset(("fam", "T", i, "t") for (i,) in loose if i not in whole)
    return SymVertexSet.make(
        FAN, core=core, ray_pos={"R": ray}, fam_whole={"T": whole}, fam_plus=plus
    )


def members_below(s, n=20):
    return {vertex_text(v) for v in s.explicit_below(n)}


def test_examples_from_ray_positions():
    evens = SymVertexSet.make(FAN, ray_pos={"R": SemilinearSet.progression(0, 2)})
    odds = SymVertexSet.make(FAN, ray_pos={"R": SemilinearSet.progression(1, 2)})
    union = evens | odds
    assert union.ray_set("R") == SemilinearSet.naturals()
    assert not union.is_finite
    assert (evens & odds).is_empty
    prefix = SymVertexSet.make(FAN, ray_pos={"R": SemilinearSet.range_set(0, 10)})
    assert prefix.complement().ray_set("R") == SemilinearSet.from_(10)


def test_finiteness_rules():
    star = load("star")
    finite_leaves = SymVertexSet.whole_copies(star, "L", SemilinearSet.of(1, 2))
    assert finite_leaves.is_finite
    assert len(finite_leaves.to_explicit()) == 2
    all_leaves = SymVertexSet.whole_copies(star, "L", SemilinearSet.naturals())
    assert not all_leaves.is_finite
    spider = load("spider")
    one_leg = SymVertexSet.whole_copies(spider, "L", SemilinearSet.of(3))
    assert not one_leg.is_finite  # a whole ray copy is infinite
    tail = SymVertexSet.copy_tail(spider, "L", 3, 5)
    assert not tail.is_finite
    assert ("fam", "L", 3, 4) not in tail and ("fam", "L", 3, 5) in tail


def test_full_copy_indices_ignores_holed_copies():
    spider = load("spider")
    s = SymVertexSet.make(
        spider,
        fam_whole={"L": SemilinearSet.range_set(0, 4)},
        fam_minus={("fam", "L", 2, 0)},
    )
    assert s.full_copy_indices("L") == SemilinearSet.of(0, 1, 3)
    assert s.copy_cofinitely_in("L", 2)


def test_finite_pattern_partial_copies_canonicalise_to_plus():
    star = load("star")
    a = SymVertexSet.make(
        star,
        fam_whole={"L": SemilinearSet.of(0, 1)},
        fam_minus={("fam", "L", 1, "p")},
    )
    b = SymVertexSet.make(star, fam_whole={"L": SemilinearSet.of(0)})
    assert a == b  # the leaf family pattern has one vertex, so the hole kills copy 1
    c = SymVertexSet.make(star, fam_plus={("fam", "L", 5, "p")})
    assert c.whole_set("L") == SemilinearSet.of(5)  # promoted to a whole copy


def test_mismatched_schema_rejected():
    with pytest.raises(ValueError):
        SymVertexSet.empty(FAN).union(SymVertexSet.empty(load("star")))


def test_of_and_some_vertex():
    vs = [("core", "c"), ("ray", "R", 4), ("fam", "T", 2, "t")]
    s = SymVertexSet.of(FAN, vs)
    assert all(v in s for v in vs)
    assert s.some_vertex() == ("core", "c")
    assert sorted(s.to_explicit()) == sorted(vs)


@given(symsets(), symsets())
@settings(max_examples=80, deadline=None)
def test_ops_match_pointwise_oracle(a, b):
    n = 16
    assert members_below(a | b, n) == members_below(a, n) | members_below(b, n)
    assert members_below(a & b, n) == members_below(a, n) & members_below(b, n)
    assert members_below(a - b, n) == members_below(a, n) - members_below(b, n)


@given(symsets(), symsets())
@settings(max_examples=80, deadline=None)
def test_algebra_identities(a, b):
    assert a.complement().complement() == a
    assert (a | b).complement() == a.complement() & b.complement()
    assert (a - b) == (a & b.complement())
    assert a.issubset(a | b)
    assert (a & b).issubset(a)


@given(symsets())
@settings(max_examples=60, deadline=None)
def test_complement_partitions_universe(a):
    full = SymVertexSet.all_vertices(FAN)
    assert (a | a.complement()) == full
    assert (a & a.complement()).is_empty
