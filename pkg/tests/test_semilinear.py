import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tangles.semilinear import SemilinearSet

sls = st.builds(
    SemilinearSet.make,
    st.frozensets(st.integers(0, 20), max_size=6),
    st.lists(
        st.tuples(st.integers(0, 12), st.integers(1, 4)), max_size=3
    ).map(tuple),
)


def members(s, n=200):
    return {x for x in range(n) if x in s}


def test_basic_examples():
    evens = SemilinearSet.progression(0, 2)
    odds = SemilinearSet.progression(1, 2)
    assert (evens | odds) == SemilinearSet.naturals()
    assert not (evens | odds).is_finite
    assert (evens & odds).is_empty
    assert (evens & odds).is_finite
    assert SemilinearSet.range_set(0, 10).complement() == SemilinearSet.from_(10)


def test_canonical_form_is_minimal():
    # {10+3t} u {11+3t} u {12+3t} is just everything from 10
    s = SemilinearSet.make((), [(10, 3), (11, 3), (12, 3)])
    assert s == SemilinearSet.from_(10)
    assert s.progressions == ((10, 1),)
    # a progression fully shadowed by explicit elements collapses
    t = SemilinearSet.make([0, 2, 4], [(0, 2)])
    assert t == SemilinearSet.progression(0, 2)


def test_finite_iff_no_progressions():
    assert SemilinearSet.of(1, 5, 9).is_finite
    assert not SemilinearSet.progression(3, 5).is_finite
    cof = SemilinearSet.naturals() - SemilinearSet.of(4)
    assert not cof.is_finite
    assert (cof & SemilinearSet.range_set(0, 6)).is_finite


def test_membership_and_min():
    s = SemilinearSet.make([3], [(10, 4)])
    assert 3 in s and 10 in s and 14 in s
    assert 11 not in s and 0 not in s
    assert s.min_value() == 3
    assert s.elements_below(15) == [3, 10, 14]
    assert s.first(4) == [3, 10, 14, 18]


def test_parse_roundtrip():
    for text in ("{}", "{0,2,4}", "{1+2t}", "{0,5,7+3t,8+3t}"):
        s = SemilinearSet.parse(text)
        assert SemilinearSet.parse(s.text()) == s
    with pytest.raises(ValueError):
        SemilinearSet.parse("0,1")


def test_bad_inputs():
    with pytest.raises(ValueError):
        SemilinearSet.make([-1])
    with pytest.raises(ValueError):
        SemilinearSet.make((), [(0, 0)])


@given(sls, sls)
@settings(max_examples=120, deadline=None)
def test_ops_match_set_oracle(a, b):
    n = max(a.bound, b.bound) + 30
    assert members(a | b, n) == members(a, n) | members(b, n)
    assert members(a & b, n) == members(a, n) & members(b, n)
    assert members(a - b, n) == members(a, n) - members(b, n)


@given(sls, sls)
@settings(max_examples=120, deadline=None)
def test_boolean_algebra_identities(a, b):
    assert (a | a) == a
    assert (a & a) == a
    assert a.complement().complement() == a
    assert (a | b).complement() == a.complement() & b.complement()
    assert (a & b).complement() == a.complement() | b.complement()


@given(sls)
@settings(max_examples=100, deadline=None)
def test_finiteness_matches_sampling_bound(s):
    # finite exactly when nothing appears at or beyond the periodic bound
    has_large = any(x in s for x in range(s.bound, s.bound + 8))
    assert s.is_finite == (not has_large)


@given(sls, sls)
@settings(max_examples=60, deadline=None)
def test_subset_and_disjoint(a, b):
    n = max(a.bound, b.bound) + 30
    assert a.issubset(b) == (members(a, n) <= members(b, n))
    assert a.isdisjoint(b) == (not members(a, n) & members(b, n))
