from math import comb, prod

import pytest

from exotori.errors import DomainError, InputContradictsTableError, UnsupportedDimensionError
from exotori.mcg import (
    ConnectedSum,
    NotConnectedSum,
    default_eta_sigma,
    extension_data,
    h1_by_abelianization,
    mcg_structure,
    omega,
    orbit_count,
    splitting_decision,
    torelli_invariant_group,
    torelli_invariants,
)
from exotori.spheres import theta_group, theta_record
from oracles import orbit_count_by_enumeration, wedge_fixed_vector_count


def test_omega_d7():
    o = omega(7)
    assert [str(s.factor) for s in o.wedge_summands[:2]] == ["Z/2", "Z/28"]
    assert [s.multiplicity for s in o.wedge_summands] == [comb(7, j) for j in range(8)]
    assert o.two_torsion_multiplicity == 21
    assert o.finite_order() == 2 * 28**7 * 2**21


@pytest.mark.parametrize("d", range(6, 19))
def test_omega_orders(d):
    o = omega(d)
    expected = prod(theta_group(d - j + 1).order() ** comb(d, j) for j in range(d + 1))
    assert o.finite_order() == expected * 2 ** comb(d, 2)


def test_omega_range():
    with pytest.raises(UnsupportedDimensionError):
        omega(5)
    with pytest.raises(UnsupportedDimensionError):
        omega(19)


@pytest.mark.parametrize("d,N", [(2, 1), (3, 1), (2, 3), (4, 1)])
def test_orbit_count(d, N):
    assert orbit_count(d, N) == orbit_count_by_enumeration(d, N)


def test_orbit_count_d7():
    assert omega(7).orbit_count(1) == 1093 == orbit_count_by_enumeration(7, 1)


def test_mcg_d7_generator():
    m = mcg_structure(7, (1,))
    assert m.extension == "SL" and m.splitting
    assert m.quotient.summand(1).factor.is_trivial
    assert m.quotient.summand(0).factor.render() == "Z/2"
    assert m.killed_order == 28**7


def test_mcg_d8_nontrivial():
    m = mcg_structure(8, (1,))
    assert m.extension == "SLbar" and not m.splitting
    assert m.eta_sigma.coords == (0, 0, 1)
    assert m.quotient.summand(0).factor.factors == (2, 2)
    assert m.quotient.summand(1).factor.is_trivial
    assert m.killed_order == 2**8 * 2
    assert omega(8).finite_order() == m.quotient.finite_order() * m.killed_order


def test_mcg_standard_sphere_is_omega():
    m = mcg_structure(9, (0, 0, 0))
    assert m.extension == "SL"
    base = omega(9)
    assert m.quotient.finite_order() == base.finite_order()
    for a, b in zip(m.quotient.wedge_summands, base.wedge_summands):
        assert a.factor.is_isomorphic(b.factor)


def test_mcg_input_checks():
    with pytest.raises(InputContradictsTableError):
        mcg_structure(8, (1,), eta_sigma=(0, 0, 0))
    with pytest.raises(InputContradictsTableError):
        mcg_structure(7, (1,), eta_sigma=(1,))
    with pytest.raises(InputContradictsTableError):
        mcg_structure(8, (0,), eta_sigma=(0, 0, 1))
    with pytest.raises(DomainError):
        mcg_structure(10, (1,), eta_sigma=(1,))  # order 992 in Theta_11
    with pytest.raises(UnsupportedDimensionError):
        mcg_structure(6, ())


def _generators_plus_zero(d):
    G = theta_record(d).theta
    return [G.zero()] + G.generators()


@pytest.mark.parametrize("d", range(7, 19))
def test_extension_matches_splitting(d):
    for sigma in _generators_plus_zero(d):
        m = mcg_structure(d, sigma)
        verdict = splitting_decision(d, ConnectedSum(sigma))
        assert (m.extension == "SL") == verdict.split == m.splitting
        # the killed part accounts for the whole drop in order
        assert omega(d).finite_order() == m.quotient.finite_order() * m.killed_order


@pytest.mark.parametrize("d", range(7, 19))
def test_default_eta_is_consistent(d):
    for sigma in _generators_plus_zero(d):
        eta = default_eta_sigma(d, sigma)
        assert eta.order() <= 2
        if sigma.is_zero():
            assert eta.is_zero()


def test_splitting_decision_examples():
    assert splitting_decision(7, ConnectedSum((1,))).split
    assert not splitting_decision(8, ConnectedSum((1,))).split
    assert splitting_decision(8, NotConnectedSum()).reason == "not surjective"
    with pytest.raises(UnsupportedDimensionError):
        splitting_decision(4, ConnectedSum(()))


@pytest.mark.parametrize("d,r,n,expected", [(3, 1, 2, 0), (3, 3, 5, 1), (4, 2, 3, 0), (3, 0, 4, 1)])
def test_invariants_examples(d, r, n, expected):
    assert torelli_invariants(d, r, n) == expected


@pytest.mark.parametrize("d,r,n", [(3, 1, 2), (3, 1, 6), (3, 2, 4), (3, 3, 6), (4, 2, 2), (4, 1, 3), (4, 3, 2), (2, 1, 4)])
def test_invariants_match_brute_force(d, r, n):
    assert torelli_invariant_group(d, r, n).order() == wedge_fixed_vector_count(d, r, n)


def test_invariant_errors():
    with pytest.raises(DomainError):
        torelli_invariants(3, 4, 2)
    with pytest.raises(DomainError):
        torelli_invariants(3, 1, 1)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_extension_data_h1(d):
    assert extension_data(d).H1.is_isomorphic(h1_by_abelianization(d))


def test_extension_data_h2():
    assert str(extension_data(3).H2) == "Z/2 (+) Z/2"
    assert str(extension_data(7).H2) == "Z/2"
