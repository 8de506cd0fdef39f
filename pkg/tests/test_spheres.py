from fractions import Fraction

import pytest

from exotori.errors import DomainError, UnsupportedDimensionError
from exotori.scalars import bernoulli
from exotori.spheres import (
    ReductionCase,
    bp_order,
    is_split_sphere,
    reduction_case,
    supported_dimensions,
    theta_group,
    theta_record,
)
from oracles import bernoulli_by_recurrence, halvable

# Table values transcribed by hand: (Theta_d, split subgroup)
TABLE = {
    1: ("0", "0"), 2: ("0", "0"), 3: ("0", "0"), 5: ("0", "0"), 6: ("0", "0"),
    7: ("Z/28", "Z/28"),
    8: ("Z/2", "0"),
    9: ("(Z/2)^2 (+) Z/2", "(Z/2)^2 (+) 0"),
    10: ("Z/6", "Z/6"),
    11: ("Z/992", "Z/992"),
    12: ("0", "0"),
    13: ("Z/3", "Z/3"),
    14: ("Z/2", "0"),
    15: ("Z/2 (+) Z/8128", "Z/2 (+) Z/8128"),
    16: ("Z/2", "0"),
    17: ("(Z/2)^3 (+) Z/2", "(Z/2)^3 (+) 0"),
    18: ("Z/8 (+) Z/2", "Z/8 (+) Z/2"),
    19: ("Z/2 (+) Z/523264", "Z/2 (+) Z/523264"),
}


def test_supported_dimensions():
    assert supported_dimensions() == sorted(TABLE)


@pytest.mark.parametrize("d", sorted(TABLE))
def test_table_rendering(d):
    rec = theta_record(d)
    assert (rec.render_theta(), rec.render_split()) == TABLE[d]


def test_theta_four_and_out_of_range():
    assert theta_group(4).is_trivial
    with pytest.raises(UnsupportedDimensionError):
        theta_record(4)
    with pytest.raises(UnsupportedDimensionError):
        theta_record(20)


def test_split_examples():
    assert is_split_sphere(7, (1,))
    assert not is_split_sphere(8, (1,))
    assert is_split_sphere(8, (0,))
    assert is_split_sphere(9, (1, 0, 0))
    assert not is_split_sphere(9, (0, 0, 1))
    assert not is_split_sphere(9, (1, 1, 1))
    assert is_split_sphere(17, (1, 1, 0, 0))


@pytest.mark.parametrize("d", [8, 9, 14, 16, 17])
def test_split_elements_form_the_tabulated_subgroup(d):
    # split spheres are closed under addition and have the tabulated count
    rec = theta_record(d)
    G = rec.theta
    split = [x for x in G.elements() if is_split_sphere(d, x)]
    assert all(is_split_sphere(d, x + y) for x in split for y in split)
    killed = [b for b, ok in enumerate(rec.split_blocks) if not ok]
    expected = G.order()
    for b in killed:
        expected //= 2 ** G.blocks[b]
    assert len(split) == expected


@pytest.mark.parametrize("d,value", [(5, 1), (7, 28), (9, 2), (11, 992), (13, 1), (15, 8128), (17, 2), (19, 261632)])
def test_bp_values(d, value):
    assert bp_order(d).value == value


def test_bp_special_cases():
    assert all(bp_order(d).is_trivial for d in range(6, 19, 2))
    assert bp_order(125).value is None and bp_order(125).render() == "unknown"
    assert bp_order(61).value == 1
    assert bp_order(29).value == 1
    assert bp_order(21).value == 2
    big = bp_order(23)
    assert big.formula_only and big.value == 1448424448
    with pytest.raises(DomainError):
        bp_order(3)


def _bp_independent(k):
    B = abs(bernoulli_by_recurrence(2 * k))
    return 2 ** (2 * k - 2) * (2 ** (2 * k - 1) - 1) * (Fraction(4) * B / k).numerator


@pytest.mark.parametrize("k", range(2, 9))
def test_bp_formula_against_recurrence(k):
    assert bp_order(4 * k - 1).value == _bp_independent(k)


@pytest.mark.parametrize("d", [7, 11, 15, 19])
def test_bp_divides_theta(d):
    assert theta_record(d).theta.order() % bp_order(d).value == 0


def test_bernoulli_up_to_30():
    for n in range(0, 31, 2):
        assert bernoulli(n) == bernoulli_by_recurrence(n)


@pytest.mark.parametrize("d,case", [(7, "ConverseHolds"), (12, "ConverseHolds"), (13, "ConverseHolds"),
                                    (20, "ForwardOnly"), (28, "ConverseHolds"), (125, "ForwardOnly"),
                                    (60, "ConverseHolds"), (124, "ForwardOnly")])
def test_reduction_case(d, case):
    assert str(reduction_case(d)) == case
    assert reduction_case(d) in ReductionCase


def test_divisibility_oracle_on_theta_next():
    # the eta-images used by the mcg module are nondivisible order-2 elements
    G = theta_record(9).theta
    x = G.element((0, 0, 1))
    assert not halvable(x.coords, G.factors)
