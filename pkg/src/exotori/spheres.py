"""Groups of homotopy spheres in low dimensions.

Tabulated data: the groups ``Theta_d`` for ``d <= 19`` (``d != 4``) in the
customary summand order, together with the subgroup of split spheres, those
``Sigma`` with ``eta * Sigma`` divisible by 2 in ``Theta_{d+1}``.

Computed data: the order of the cyclic subgroup ``bP_{d+1}`` from Bernoulli
numbers, and which of the known reduction cases applies in dimension ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .abgroups import FiniteAbelianGroup, GroupElement, structure_from_relations
from .errors import DomainError, ExotoriError, UnsupportedDimensionError
from .scalars import bernoulli

__all__ = [
    "BPOrder",
    "ThetaRecord",
    "ReductionCase",
    "bp_order",
    "theta_record",
    "theta_group",
    "is_split_sphere",
    "reduction_case",
    "supported_dimensions",
    "TABLE_MAX_DIM",
]

TABLE_MAX_DIM = 19

# Each row: tuple of display blocks (order, multiplicity, split?).
# Kervaire-Milnor groups; split column from the eta-divisibility analysis.
_TABLE = {
    7: ((28, 1, True),),
    8: ((2, 1, False),),
    9: ((2, 2, True), (2, 1, False)),
    10: ((6, 1, True),),
    11: ((992, 1, True),),
    12: (),
    13: ((3, 1, True),),
    14: ((2, 1, False),),
    15: ((2, 1, True), (8128, 1, True)),
    16: ((2, 1, False),),
    17: ((2, 3, True), (2, 1, False)),
    18: ((8, 1, True), (2, 1, True)),
    19: ((2, 1, True), (523264, 1, True)),
}
for _d in (1, 2, 3, 5, 6):
    _TABLE[_d] = ()


class ReductionCase(Enum):
    CONVERSE_HOLDS = "ConverseHolds"
    FORWARD_ONLY = "ForwardOnly"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BPOrder:
    """Order of ``bP_{d+1}``; ``value`` is ``None`` when it is not known."""

    d: int
    value: int | None
    formula_only: bool = False

    @property
    def is_trivial(self) -> bool:
        return self.value == 1

    def render(self) -> str:
        if self.value is None:
            return "unknown"
        text = str(self.value)
        if self.formula_only:
            text += " (formula-only)"
        return text


@dataclass(frozen=True)
class ThetaRecord:
    d: int
    theta: FiniteAbelianGroup
    split_generators: tuple
    split_blocks: tuple

    def render_theta(self) -> str:
        return self.theta.render()

    def render_split(self) -> str:
        killed = [b for b, split in enumerate(self.split_blocks) if not split]
        return self.theta.render(killed_blocks=killed)

    @property
    def fully_split(self) -> bool:
        return all(self.split_blocks)

    def contains_split(self, sigma: GroupElement) -> bool:
        """Membership in the subgroup generated by ``split_generators``."""
        G = self.theta
        if sigma.group.factors != G.factors:
            raise DomainError("element does not belong to Theta_%d" % self.d)
        if G.is_trivial:
            return True
        rows = [tuple(n if k == i else 0 for k in range(G.rank)) for i, n in enumerate(G.factors)]
        rows += [g.coords for g in self.split_generators]
        base = structure_from_relations(G.rank, rows).order()
        with_sigma = structure_from_relations(G.rank, rows + [sigma.coords]).order()
        return base == with_sigma


def supported_dimensions() -> list:
    return sorted(_TABLE)


def theta_record(d: int) -> ThetaRecord:
    if d not in _TABLE:
        raise UnsupportedDimensionError(
            f"no sphere data for d={d}; supported are 1..{TABLE_MAX_DIM} except 4"
        )
    factors, blocks, split_flags = [], [], []
    for order, mult, split in _TABLE[d]:
        factors += [order] * mult
        blocks.append(mult)
        split_flags.append(split)
    G = FiniteAbelianGroup(tuple(factors), blocks=tuple(blocks))
    gens = []
    start = 0
    for mult, split in zip(blocks, split_flags):
        if split:
            gens += [G.unit(start + k) for k in range(mult)]
        start += mult
    return ThetaRecord(d, G, tuple(gens), tuple(split_flags))


def theta_group(d: int) -> FiniteAbelianGroup:
    """``Theta_d``, with ``Theta_4`` taken as trivial (homotopy 4-spheres up to h-cobordism)."""
    if d == 4:
        return FiniteAbelianGroup.trivial()
    return theta_record(d).theta


def is_split_sphere(d: int, sigma) -> bool:
    """Whether ``eta * sigma`` is divisible by 2 in ``Theta_{d+1}``."""
    rec = theta_record(d)
    if not isinstance(sigma, GroupElement):
        sigma = GroupElement(rec.theta, tuple(sigma))
    return rec.contains_split(sigma)


def _num(x) -> int:
    return x.numerator


def _is_two_power_minus(d: int, offset: int, max_k: int) -> bool:
    return any(d == 2**k - offset for k in range(1, max_k + 1))


def bp_order(d: int) -> BPOrder:
    """Order of the cyclic group ``bP_{d+1}`` of spheres bounding parallelizable manifolds.

    ``d = 4k - 1``: ``2^(2k-2) (2^(2k-1) - 1) num(4 |B_2k| / k)``.
    ``d = 4k + 1``: 2, except trivial for ``d = 2^k - 3`` with ``k <= 6``;
    unknown for ``d = 125``.  Even ``d``: trivial.
    """
    if d < 5:
        raise DomainError(f"bP orders are defined here for d >= 5, got {d}")
    if d % 2 == 0:
        return BPOrder(d, 1)
    if d % 4 == 3:
        k = (d + 1) // 4
        b = abs(bernoulli(2 * k))
        value = 2 ** (2 * k - 2) * (2 ** (2 * k - 1) - 1) * _num(4 * b / k)
        return BPOrder(d, value, formula_only=d > TABLE_MAX_DIM)
    if d == 2**7 - 3:
        return BPOrder(d, None)
    if _is_two_power_minus(d, 3, 6):
        return BPOrder(d, 1)
    return BPOrder(d, 2)


def reduction_case(d: int) -> ReductionCase:
    """Whether divisibility of ``eta * Sigma`` is equivalent to the reduced problem.

    The converse direction is known for ``d`` not 4 or 5 mod 8, for
    ``d = 5 mod 8`` except 125, and for ``d = 2^k - 4`` with ``k <= 6``.
    """
    if d < 5:
        raise DomainError(f"reduction cases apply for d >= 5, got {d}")
    r = d % 8
    if r not in (4, 5):
        return ReductionCase.CONVERSE_HOLDS
    if r == 5:
        return ReductionCase.CONVERSE_HOLDS if d != 125 else ReductionCase.FORWARD_ONLY
    if _is_two_power_minus(d, 4, 6):
        return ReductionCase.CONVERSE_HOLDS
    return ReductionCase.FORWARD_ONLY


def _self_check():
    # bP_{d+1} is a subgroup of Theta_d
    for d in range(7, TABLE_MAX_DIM + 1, 4):
        order = theta_record(d).theta.order()
        bp = bp_order(d).value
        if order % bp:
            raise ExotoriError(f"sphere table inconsistent: |bP_{d + 1}| = {bp} does not divide {order}")


_self_check()
