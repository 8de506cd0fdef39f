"""Mapping class groups of the tori ``T^d # Sigma``.

The Torelli part of the standard torus is the module ``Omega``:

* for each ``0 <= j <= d``, ``C(d, j)`` copies of ``Theta_{d-j+1}``
  (``SL_d(Z)`` acting through ``Lambda^j Z^d``),
* ``C(d, d-2)`` copies of ``Z/2``,
* an infinitely generated 2-torsion summand, the ``C_2``-coinvariants of
  ``(Z/2)[Z^d] / (Z/2)[1]`` under negation.

Connected sum with ``Sigma`` divides ``Omega`` by ``Z^d (x) <Sigma>`` and, when
``eta * Sigma`` is not divisible by 2, also by ``<eta * Sigma>``; in that case
the acting group becomes the nontrivial central extension ``SLbar_d(Z)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, prod

from .abgroups import (
    FiniteAbelianGroup,
    GroupElement,
    abelianize_presentation,
    is_divisible_by_2,
    preset_presentation,
    quotient_by_element,
)
from .errors import DomainError, InputContradictsTableError, UnsupportedDimensionError
from .matrices import Matrix, exterior_power, solve_homogeneous_mod
from .spheres import TABLE_MAX_DIM, is_split_sphere, theta_group, theta_record

__all__ = [
    "OmegaSummand",
    "OmegaDescription",
    "MCGStructure",
    "SplittingVerdict",
    "NotConnectedSum",
    "ConnectedSum",
    "ExtensionData",
    "omega",
    "mcg_structure",
    "splitting_decision",
    "default_eta_sigma",
    "torelli_invariant_group",
    "torelli_invariants",
    "extension_data",
    "h1_by_abelianization",
    "orbit_count",
]

OMEGA_MIN_DIM = 6
MCG_MIN_DIM = 7
MCG_MAX_DIM = TABLE_MAX_DIM - 1


def orbit_count(d: int, N: int) -> int:
    """Number of ``{+-1}``-orbits of nonzero vectors in ``Z^d`` with sup-norm at most ``N``."""
    return ((2 * N + 1) ** d - 1) // 2


@dataclass(frozen=True)
class OmegaSummand:
    j: int
    multiplicity: int
    factor: FiniteAbelianGroup
    label: str

    def order(self) -> int:
        return self.factor.order() ** self.multiplicity

    def render(self) -> str:
        return f"j={self.j}: {self.multiplicity} x {self.label} = {self.factor}"


@dataclass(frozen=True)
class OmegaDescription:
    d: int
    wedge_summands: tuple
    two_torsion_multiplicity: int
    infinite_part: str = "((Z/2)[Z^d]/(Z/2)[1])_C2"

    def finite_order(self) -> int:
        return prod(s.order() for s in self.wedge_summands) * 2**self.two_torsion_multiplicity

    def orbit_count(self, N: int) -> int:
        return orbit_count(self.d, N)

    def summand(self, j: int) -> OmegaSummand:
        return self.wedge_summands[j]

    def render_lines(self) -> list:
        lines = [s.render() for s in self.wedge_summands]
        lines.append(f"Lambda^{self.d - 2}: {self.two_torsion_multiplicity} x Z/2")
        lines.append(f"infinite: {self.infinite_part} (infinitely generated)")
        return lines


def _check_omega_dim(d: int, low: int):
    if not (low <= d <= MCG_MAX_DIM):
        raise UnsupportedDimensionError(
            f"d={d} outside {low}..{MCG_MAX_DIM}: the description holds for d >= {OMEGA_MIN_DIM}"
            f" and needs Theta_(d+1) data, available up to {TABLE_MAX_DIM}"
        )


def omega(d: int) -> OmegaDescription:
    _check_omega_dim(d, OMEGA_MIN_DIM)
    summands = tuple(
        OmegaSummand(j, comb(d, j), theta_group(d - j + 1), f"Theta_{d - j + 1}")
        for j in range(d + 1)
    )
    return OmegaDescription(d, summands, comb(d, d - 2))


@dataclass(frozen=True)
class MCGStructure:
    d: int
    sigma: GroupElement
    eta_sigma: GroupElement
    extension: str
    quotient: OmegaDescription
    splitting: bool
    killed_order: int

    @property
    def extension_text(self) -> str:
        if self.extension == "SL":
            return f"SL_{self.d}(Z)"
        return f"SLbar_{self.d}(Z), central Z/2 by t_{self.d}"

    def render_lines(self) -> list:
        lines = [f"extension: {self.extension_text}"]
        lines += self.quotient.render_lines()
        verdict = "split" if self.splitting else "not split"
        why = "divisible" if self.splitting else "not divisible"
        lines.append(
            f"splitting: {verdict} (eta.Sigma {why} by 2 in Theta_{self.d + 1})"
        )
        return lines


def _as_element(G: FiniteAbelianGroup, x) -> GroupElement:
    if isinstance(x, GroupElement):
        if x.group.factors != G.factors:
            raise DomainError(f"element {x} does not belong to {G}")
        return x
    return GroupElement(G, tuple(x))


def default_eta_sigma(d: int, sigma) -> GroupElement:
    """An ``eta * Sigma`` consistent with the split column of the sphere table.

    Zero for split spheres; otherwise the first element of order 2 in
    ``Theta_{d+1}`` that is not divisible by 2.
    """
    T = theta_record(d + 1).theta
    if is_split_sphere(d, sigma):
        return T.zero()
    for x in T.elements():
        if x.order() == 2 and not is_divisible_by_2(T, x):
            return x
    raise InputContradictsTableError(f"Theta_{d + 1} has no element that is not divisible by 2")


def mcg_structure(d: int, sigma, eta_sigma=None) -> MCGStructure:
    """Structure of the mapping class group of ``T^d # Sigma``.

    ``eta_sigma`` is the element ``eta * Sigma`` of ``Theta_{d+1}``; it must
    have order at most 2, vanish when ``Sigma`` does, and be divisible by 2
    exactly when ``Sigma`` is split.
    """
    _check_omega_dim(d, MCG_MIN_DIM)
    rec = theta_record(d)
    sigma = _as_element(rec.theta, sigma)
    T_next = theta_record(d + 1).theta
    eta = default_eta_sigma(d, sigma) if eta_sigma is None else _as_element(T_next, eta_sigma)
    if eta.order() > 2:
        raise DomainError(f"eta.Sigma = {eta} has order {eta.order()}, but eta has order 2")
    if sigma.is_zero() and not eta.is_zero():
        raise InputContradictsTableError("eta.Sigma must vanish for the standard sphere")
    divisible = is_divisible_by_2(T_next, eta)
    split = is_split_sphere(d, sigma)
    if divisible != split:
        raise InputContradictsTableError(
            f"eta.Sigma = {eta} is {'' if divisible else 'not '}divisible by 2, but Sigma = {sigma}"
            f" is {'' if split else 'not '}a split sphere in dimension {d}"
        )
    base = omega(d)
    summands = list(base.wedge_summands)
    killed = sigma.order() ** d
    if not divisible:
        summands[0] = OmegaSummand(
            0, 1, quotient_by_element(T_next, eta), f"Theta_{d + 1}/<eta.Sigma>"
        )
        killed *= eta.order()
    summands[1] = OmegaSummand(
        1, d, quotient_by_element(rec.theta, sigma), f"Theta_{d}/<Sigma>"
    )
    quotient = OmegaDescription(d, tuple(summands), base.two_torsion_multiplicity)
    return MCGStructure(
        d, sigma, eta, "SL" if divisible else "SLbar", quotient, divisible, killed
    )


class NotConnectedSum:
    """A homotopy torus that is not of the form ``T^d # Sigma``."""

    def __repr__(self):
        return "NotConnectedSum()"


@dataclass(frozen=True)
class ConnectedSum:
    sigma: tuple


@dataclass(frozen=True)
class SplittingVerdict:
    split: bool
    reason: str


def splitting_decision(d: int, torus) -> SplittingVerdict:
    """Whether the homology action of the mapping class group splits."""
    if d == 4:
        raise UnsupportedDimensionError("dimension 4 is not covered")
    if isinstance(torus, NotConnectedSum):
        return SplittingVerdict(False, "not surjective")
    sigma = torus.sigma if isinstance(torus, ConnectedSum) else torus
    split = is_split_sphere(d, sigma)
    why = "divisible" if split else "not divisible"
    return SplittingVerdict(split, f"eta.Sigma {why} by 2 in Theta_{d + 1}")


def _stacked_wedge_system(d: int, r: int) -> Matrix:
    rows = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i == j:
                continue
            W = exterior_power(Matrix.elementary(d, i, j), r)
            rows += (W - Matrix.identity(W.nrows)).rows
    return Matrix(rows)


def torelli_invariant_group(d: int, r: int, n: int) -> FiniteAbelianGroup:
    """Vectors of ``Lambda^r (Z/n)^d`` fixed by every elementary matrix, as a group."""
    if d < 2 or not (0 <= r <= d):
        raise DomainError(f"need d >= 2 and 0 <= r <= d, got d={d}, r={r}")
    if n < 2:
        raise DomainError(f"modulus must be at least 2, got {n}")
    solutions = solve_homogeneous_mod(_stacked_wedge_system(d, r), n)
    return FiniteAbelianGroup(tuple(order for _, order in solutions))


def torelli_invariants(d: int, r: int, n: int) -> int:
    """Number of independent invariants: cyclic summands of the fixed submodule."""
    return torelli_invariant_group(d, r, n).rank


@dataclass(frozen=True)
class ExtensionData:
    d: int
    H1: FiniteAbelianGroup
    H2: FiniteAbelianGroup
    slbar_nontrivial: bool = True


def extension_data(d: int) -> ExtensionData:
    """Low-degree integral homology of ``SL_d(Z)``; ``H_2`` is tabulated, not computed."""
    if d < 2:
        raise DomainError(f"need d >= 2, got {d}")
    if d == 2:
        return ExtensionData(d, FiniteAbelianGroup((12,)), FiniteAbelianGroup.trivial())
    if d in (3, 4):
        return ExtensionData(d, FiniteAbelianGroup.trivial(), FiniteAbelianGroup((2, 2)))
    return ExtensionData(d, FiniteAbelianGroup.trivial(), FiniteAbelianGroup((2,)))


def h1_by_abelianization(d: int) -> FiniteAbelianGroup:
    """``H_1(SL_d(Z))`` computed from a presentation (``2 <= d <= 5``)."""
    if not (2 <= d <= 5):
        raise DomainError(f"built-in presentations cover 2 <= d <= 5, got {d}")
    return abelianize_presentation(*preset_presentation(f"sl{d}"))
