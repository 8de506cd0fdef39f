from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exotori.abgroups import (
    FiniteAbelianGroup,
    GroupElement,
    abelianize_presentation,
    is_divisible_by_2,
    preset_presentation,
    quotient_by_element,
    structure_from_relations,
)
from exotori.errors import DomainError
from oracles import coset_count, element_order, halvable


def G(*factors):
    return FiniteAbelianGroup(factors)


def test_structure_examples():
    assert structure_from_relations(1, []).factors == (0,)
    assert structure_from_relations(2, [(2, 0), (0, 3)]).factors == (6,)
    assert structure_from_relations(2, [(1, 1)]).factors == (0,)
    assert str(structure_from_relations(2, [(1, 1)])) == "Z"


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), max_size=5)
    .map(lambda rels: (n, rels))))
def test_structure_is_in_invariant_factor_form(data):
    n, rels = data
    H = structure_from_relations(n, rels)
    finite = [x for x in H.factors if x]
    assert H.factors == tuple(finite) + (0,) * H.free_rank()
    assert all(b % a == 0 for a, b in zip(finite, finite[1:]))


def test_quotient_examples():
    assert quotient_by_element(G(4), G(4).element((2,))).factors == (2,)
    assert quotient_by_element(G(2, 2), G(2, 2).element((1, 1))).factors == (2,)
    assert quotient_by_element(G(28), G(28).element((14,))).factors == (14,)
    with pytest.raises(DomainError):
        G(4).element((5,))


groups = st.lists(st.integers(2, 8), min_size=1, max_size=3).filter(
    lambda fs: eval("*".join(map(str, fs))) <= 64)


@settings(max_examples=100, deadline=None)
@given(groups, st.data())
def test_quotient_order_times_element_order(factors, data):
    H = FiniteAbelianGroup(tuple(factors))
    coords = tuple(data.draw(st.integers(0, n - 1)) for n in factors)
    x = H.element(coords)
    Q = quotient_by_element(H, x)
    assert Q.order() * x.order() == H.order()
    assert Q.order() == coset_count(factors, coords)
    assert x.order() == element_order(coords, factors)


@given(groups)
def test_quotient_by_zero_is_isomorphic(factors):
    H = FiniteAbelianGroup(tuple(factors))
    assert quotient_by_element(H, H.zero()).is_isomorphic(H)


def test_divisibility_examples():
    assert not is_divisible_by_2(G(2), G(2).element((1,)))
    assert is_divisible_by_2(G(4), G(4).element((2,)))
    assert not is_divisible_by_2(G(2, 4), G(2, 4).element((1, 2)))


@pytest.mark.parametrize("factors", [(2,), (3,), (4,), (6,), (2, 4), (2, 2, 2), (8, 2), (3, 6), (4, 4, 2), (2, 8, 16)])
def test_divisibility_matches_brute_force(factors):
    H = FiniteAbelianGroup(factors)
    for coords in product(*(range(n) for n in factors)):
        assert is_divisible_by_2(H, H.element(coords)) == halvable(coords, factors)


def test_abelianize_examples():
    assert str(abelianize_presentation(*preset_presentation("sl2"))) == "Z/12"
    assert str(abelianize_presentation(["a"], [])) == "Z"
    assert abelianize_presentation(*preset_presentation("sl3")).is_trivial
    assert str(abelianize_presentation(["a", "b"], ["a^2", "b^3"])) == "Z/6"
    assert str(abelianize_presentation(["a", "b"], ["a^4", "b^6", "a^2 b^-3"])) == "Z/12"
    with pytest.raises(DomainError):
        abelianize_presentation(["a"], ["b"])


def test_render_blocks():
    H = FiniteAbelianGroup((2, 2, 2), blocks=(2, 1))
    assert H.render() == "(Z/2)^2 (+) Z/2"
    assert H.render(killed_blocks=[1]) == "(Z/2)^2 (+) 0"
    assert H.render(killed_blocks=[0, 1]) == "0"
    assert FiniteAbelianGroup.trivial().render() == "0"
    assert G(2, 8128).invariant_factors() == (2, 8128)
    assert G(2, 3).invariant_factors() == (6,)


def test_element_arithmetic():
    H = G(2, 4)
    x = H.element((1, 3))
    assert (x + x).coords == (0, 2)
    assert (-x).coords == (1, 1)
    assert x.order() == 4
    assert GroupElement(FiniteAbelianGroup((0,)), (5,)).order() == 0
