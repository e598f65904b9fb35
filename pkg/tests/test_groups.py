import pytest
from hypothesis import given, settings, strategies as st

from endoring.errors import EnumerationGuardExceeded, ParentMismatch
from endoring.groups import (
    PGroup,
    all_subgroups,
    elem_add,
    elem_scale,
    intersection,
    is_essential,
    multiple_subgroup,
    socle,
    span,
)
from endoring.howell import howell_form, span_order

from .conftest import closure, elements, group_with_elements, pgroups


def els(A, *coords):
    return frozenset(A.element(c) for c in coords)


# -- PGroup construction and literals ----------------------------------------


def test_literal_round_trip():
    A = PGroup.parse("2^1+2^2+2^3")
    assert A == PGroup(2, (1, 2, 3))
    assert A.literal == "2^1+2^2+2^3"
    assert A.order == 2**6


@pytest.mark.parametrize("bad", ["2^1+3^1", "4^1", "2^0", "2", "", "2^1+"])
def test_bad_literals(bad):
    with pytest.raises(ValueError):
        PGroup.parse(bad)


def test_rejects_composite_and_overflow():
    with pytest.raises(ValueError):
        PGroup(6, (1,))
    with pytest.raises(ValueError):
        PGroup(2, (63,))
    PGroup(2, (62,))


# -- element arithmetic -------------------------------------------------------


def test_elem_add_examples():
    A = PGroup(2, (2, 1))
    assert elem_add(A.element((3, 1)), A.element((1, 1))) == A.zero()
    a = A.element((3, 0))
    assert elem_add(a, A.zero()) == a
    assert elem_add(PGroup(2, (3,)).element((5,)), PGroup(2, (3,)).element((7,))).coords == (4,)


def test_elem_add_parent_mismatch():
    with pytest.raises(ParentMismatch):
        PGroup(2, (1,)).zero() + PGroup(2, (2,)).zero()


def test_elem_scale_examples():
    A = PGroup(3, (1, 2, 3))
    for i, m in enumerate(A.moduli):
        assert elem_scale(m, A.theta(i)).is_zero()
    a = A.element((1, 4, 20))
    assert elem_scale(1, a) == a
    assert elem_scale(2, PGroup(2, (2,)).element((3,))).coords == (2,)


@given(group_with_elements(n=1))
def test_exponent_kills_everything(data):
    A, a = data
    assert (A.p**A.top * a).is_zero()


# -- socles and multiples -----------------------------------------------------


def test_socle_examples():
    Z8 = PGroup(2, (3,))
    assert set(socle(Z8, 1).elements()) == els(Z8, (0,), (4,))
    A = PGroup(2, (1, 2, 3))
    assert socle(A, A.top) == A.whole()
    B = PGroup(2, (1, 2))
    # enumeration oracle: all 8 elements filtered by 2a = 0
    oracle = frozenset(a for a in B.elements() if (2 * a).is_zero())
    assert frozenset(socle(B, 1).elements()) == oracle == els(B, (0, 0), (1, 0), (0, 2), (1, 2))
    assert socle(B, 1) == span(B, [B.element((1, 0)), B.element((0, 2))])
    assert socle(B, 0).is_zero()


def test_multiple_subgroup_examples():
    Z4 = PGroup(2, (2,))
    assert set(multiple_subgroup(Z4, 1).elements()) == els(Z4, (0,), (2,))
    A = PGroup(2, (1, 3))
    assert multiple_subgroup(A, 0) == A.whole()
    oracle = frozenset(2 * a for a in A.elements())
    assert frozenset(multiple_subgroup(A, 1).elements()) == oracle == els(A, (0, 0), (0, 2), (0, 4), (0, 6))


@given(pgroups(), st.integers(0, 4), st.integers(0, 4))
def test_socle_and_multiple_chains(A, m, n):
    m, n = min(m, n), max(m, n)
    assert socle(A, m) <= socle(A, n)
    assert multiple_subgroup(A, n) <= multiple_subgroup(A, m)


@given(pgroups(), st.integers(0, 4))
def test_exact_sequence_of_multiplication(A, n):
    assert socle(A, n).order * multiple_subgroup(A, n).order == A.order


# -- span and membership ------------------------------------------------------


def test_span_examples():
    A = PGroup(2, (2, 1))
    assert span(A, []).is_zero()
    assert set(span(A, [A.theta(0)]).elements()) == els(A, (0, 0), (1, 0), (2, 0), (3, 0))
    S = span(A, [A.element((2, 1))])
    # direct iteration of multiples of (2,1): (2,1), (0,0)
    assert frozenset(S.elements()) == closure(A, [A.element((2, 1))]) == els(A, (0, 0), (2, 1))
    assert not S.contains(A.element((1, 1)))
    assert S.contains(A.zero())
    assert socle(PGroup(2, (3,)), 1).contains(PGroup(2, (3,)).element((4,)))


def test_span_parent_mismatch():
    with pytest.raises(ParentMismatch):
        span(PGroup(2, (1,)), [PGroup(2, (2,)).theta(0)])
    with pytest.raises(ParentMismatch):
        PGroup(2, (1,)).whole().contains(PGroup(3, (1,)).zero())


@st.composite
def group_and_gens(draw):
    A = draw(pgroups(max_exp=3))
    gens = draw(st.lists(elements(A), max_size=3))
    return A, gens


@settings(max_examples=150)
@given(group_and_gens())
def test_span_matches_enumeration(data):
    A, gens = data
    S = span(A, gens)
    cl = closure(A, gens)
    assert S.order == len(cl)
    assert frozenset(S.elements()) == cl
    for a in A.elements():
        assert S.contains(a) == (a in cl)


@settings(max_examples=100)
@given(group_and_gens(), st.data())
def test_span_is_closure_operator(data, draw):
    A, gens = data
    S = span(A, gens)
    assert span(A, S.basis) == S  # idempotent
    assert all(S.contains(g) for g in gens)  # extensive
    more = gens + draw.draw(st.lists(elements(A), max_size=2))
    assert S <= span(A, more)  # monotone
    assert A.order % S.order == 0


def test_canonical_equality_is_set_equality_exhaustively():
    # two-generator spans: Howell equality must coincide with set equality
    for A in [PGroup(2, (1, 2)), PGroup(2, (2, 2)), PGroup(3, (1, 2)), PGroup(2, (1, 1, 2))]:
        by_set = {}
        elems = list(A.elements())
        for a in elems:
            for b in elems:
                S = span(A, [a, b])
                key = closure(A, [a, b])
                assert by_set.setdefault(key, S) == S


def test_subgroup_counts():
    # known subgroup counts
    assert len(all_subgroups(PGroup(2, (1, 2)))) == 8
    assert len(all_subgroups(PGroup(2, (1, 1, 1)))) == 16
    assert len(all_subgroups(PGroup(3, (1, 1)))) == 6


@given(group_and_gens(), st.data())
def test_intersection_matches_sets(data, draw):
    A, gens = data
    other = draw.draw(st.lists(elements(A), max_size=3))
    S, T = span(A, gens), span(A, other)
    assert frozenset(intersection(S, T).elements()) == frozenset(S.elements()) & frozenset(T.elements())


def test_howell_pivots_and_order():
    form = howell_form([(2, 4), (0, 6)], 2, 3, 2)
    for row in form:
        piv = next(x for x in row if x)
        assert piv & (piv - 1) == 0  # a power of two
    assert span_order(form, 2, 3) == len(closure_rows([(2, 4), (0, 6)], 8))


def closure_rows(rows, N):
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        x = frontier.pop()
        for r in rows:
            y = tuple((a + b) % N for a, b in zip(x, r))
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


# -- essential subgroups ------------------------------------------------------


def test_is_essential_examples():
    Z8 = PGroup(2, (3,))
    for S in all_subgroups(Z8):
        assert is_essential(S) == (not S.is_zero())
    F = PGroup(2, (1, 1))
    assert not is_essential(span(F, [F.theta(0)]))
    B = PGroup(2, (1, 2))
    assert not is_essential(span(B, [B.element((0, 2))]))


def test_is_essential_matches_definition():
    for A in [PGroup(2, (1, 2)), PGroup(3, (1, 1)), PGroup(2, (1, 1, 2))]:
        cyclics = {span(A, [a]) for a in A.elements() if a}
        for S in all_subgroups(A):
            expected = all(not intersection(S, C).is_zero() for C in cyclics)
            assert is_essential(S) == expected


@given(pgroups())
def test_essential_extremes(A):
    assert is_essential(A.whole())
    assert not is_essential(A.trivial())


def test_enumeration_guard(monkeypatch):
    monkeypatch.setenv("ENDORING_ENUM_CAP", "16")
    with pytest.raises(EnumerationGuardExceeded) as exc:
        list(PGroup(2, (1, 2, 3)).elements())
    assert exc.value.cap == 16
    with pytest.raises(EnumerationGuardExceeded):
        is_essential(PGroup(2, (1, 2, 3)).whole())
