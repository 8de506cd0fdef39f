"""Finitely generated abelian groups given by cyclic factors.

A group is a direct sum of cyclic factors ``Z/n`` (``n >= 2``) or ``Z``
(stored as ``0``), kept in the order the caller supplied.  That order is the
coordinate system for elements, so two groups with the same invariant
factors may still print differently.  Use :meth:`FiniteAbelianGroup.is_isomorphic`
for structural comparison.

Display blocks group repeated factors for rendering, e.g. ``(Z/2)^2 (+) Z/2``
keeps the first two coordinates together as one block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod

from .errors import DomainError
from .matrices import Matrix, smith_normal_form

__all__ = [
    "FiniteAbelianGroup",
    "GroupElement",
    "structure_from_relations",
    "quotient_by_element",
    "is_divisible_by_2",
    "abelianize_presentation",
    "parse_word",
    "preset_presentation",
    "PRESETS",
]


def _render_cyclic(n: int) -> str:
    return "Z" if n == 0 else f"Z/{n}"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of cyclic groups; ``0`` in ``factors`` means ``Z``.

    ``blocks`` optionally partitions the coordinates into display blocks of
    equal factors; by default every coordinate is its own block.
    """

    factors: tuple = ()
    labels: tuple | None = None
    blocks: tuple | None = None

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if any(n < 0 for n in factors):
            raise DomainError(f"negative factor order in {factors}")
        # Z/1 factors carry no information
        if any(n == 1 for n in factors) and self.blocks is None:
            keep = [i for i, n in enumerate(factors) if n != 1]
            factors = tuple(factors[i] for i in keep)
            if self.labels is not None:
                object.__setattr__(self, "labels", tuple(self.labels[i] for i in keep))
        object.__setattr__(self, "factors", factors)
        if self.labels is not None and len(self.labels) != len(factors):
            raise DomainError("one label per factor required")
        if self.blocks is not None:
            if sum(self.blocks) != len(factors):
                raise DomainError("display blocks must cover every factor")
            start = 0
            for size in self.blocks:
                if len(set(factors[start:start + size])) > 1:
                    raise DomainError("display blocks must contain equal factors")
                start += size

    @classmethod
    def trivial(cls) -> FiniteAbelianGroup:
        return cls(())

    @classmethod
    def cyclic(cls, n: int) -> FiniteAbelianGroup:
        return cls((n,))

    @property
    def rank(self) -> int:
        """Number of cyclic coordinates."""
        return len(self.factors)

    @property
    def is_finite(self) -> bool:
        return 0 not in self.factors

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def order(self) -> int:
        if not self.is_finite:
            raise DomainError("infinite group has no finite order")
        return prod(self.factors)

    def free_rank(self) -> int:
        return self.factors.count(0)

    def invariant_factors(self) -> tuple:
        """Canonical form ``d_1 | d_2 | ... | d_k`` followed by free factors."""
        if not self.factors:
            return ()
        n = len(self.factors)
        M = Matrix([[self.factors[i] if i == j else 0 for j in range(n)] for i in range(n)])
        diag = smith_normal_form(M).diagonal
        finite = tuple(x for x in diag if x > 1)
        return finite + (0,) * diag.count(0)

    def is_isomorphic(self, other: FiniteAbelianGroup) -> bool:
        return self.invariant_factors() == other.invariant_factors()

    def _block_sizes(self) -> tuple:
        return self.blocks if self.blocks is not None else (1,) * len(self.factors)

    def render(self, killed_blocks=()) -> str:
        """Render as e.g. ``"Z/2 (+) Z/8128"``; blocks in ``killed_blocks`` show as ``0``."""
        if not self.factors:
            return "0"
        parts = []
        start = 0
        for b, size in enumerate(self._block_sizes()):
            if b in killed_blocks:
                parts.append("0")
            else:
                base = _render_cyclic(self.factors[start])
                parts.append(base if size == 1 else f"({base})^{size}")
            start += size
        if all(p == "0" for p in parts):
            return "0"
        return " (+) ".join(parts)

    def __str__(self):
        return self.render()

    def element(self, coords) -> GroupElement:
        return GroupElement(self, coords)

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * self.rank)

    def unit(self, i: int) -> GroupElement:
        return GroupElement(self, tuple(int(k == i) for k in range(self.rank)))

    def generators(self) -> list:
        return [self.unit(i) for i in range(self.rank)]

    def elements(self):
        """Iterate over all elements of a finite group."""
        if not self.is_finite:
            raise DomainError("cannot enumerate an infinite group")
        for coords in product(*(range(n) for n in self.factors)):
            yield GroupElement(self, coords)


@dataclass(frozen=True)
class GroupElement:
    group: FiniteAbelianGroup
    coords: tuple = field(default=())

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if len(coords) != self.group.rank:
            raise DomainError(
                f"element needs {self.group.rank} coordinates, got {len(coords)}"
            )
        for c, n in zip(coords, self.group.factors):
            if n and not (0 <= c < n):
                raise DomainError(f"coordinate {c} out of range for Z/{n}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def reduced(cls, group: FiniteAbelianGroup, coords) -> GroupElement:
        return cls(group, tuple(c % n if n else c for c, n in zip(coords, group.factors)))

    def __add__(self, other: GroupElement) -> GroupElement:
        if other.group.factors != self.group.factors:
            raise DomainError("elements of different groups")
        return GroupElement.reduced(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return GroupElement.reduced(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, k: int) -> GroupElement:
        return GroupElement.reduced(self.group, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int:
        """Order of the element; ``0`` when it has infinite order."""
        result = 1
        for c, n in zip(self.coords, self.group.factors):
            if n == 0:
                if c:
                    return 0
                continue
            k = n // gcd(n, c)
            result = result * k // gcd(result, k)
        return result

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(map(str, self.coords)) + ")"


def structure_from_relations(n_generators: int, relations) -> FiniteAbelianGroup:
    """Invariant-factor structure of ``Z^n / <relations>``."""
    relations = [tuple(r) for r in relations]
    for r in relations:
        if len(r) != n_generators:
            raise DomainError(f"relation {r} does not have {n_generators} entries")
    if n_generators == 0:
        return FiniteAbelianGroup.trivial()
    if not relations:
        return FiniteAbelianGroup((0,) * n_generators)
    diag = smith_normal_form(Matrix(relations)).diagonal
    diag = diag + [0] * (n_generators - len(diag))
    finite = tuple(x for x in diag if x > 1)
    return FiniteAbelianGroup(finite + (0,) * diag.count(0))


def _relation_rows(G: FiniteAbelianGroup) -> list:
    rows = []
    for i, n in enumerate(G.factors):
        if n:
            rows.append(tuple(n if k == i else 0 for k in range(G.rank)))
    return rows


def quotient_by_element(G: FiniteAbelianGroup, x: GroupElement) -> FiniteAbelianGroup:
    """Structure of ``G / <x>`` in invariant-factor form."""
    if x.group.factors != G.factors:
        raise DomainError("element does not belong to the group")
    if G.is_trivial:
        return G
    rows = _relation_rows(G) + [x.coords]
    return structure_from_relations(G.rank, rows)


def is_divisible_by_2(G: FiniteAbelianGroup, x: GroupElement) -> bool:
    """Whether ``x = 2y`` for some ``y`` in ``G``.

    Works coordinate-wise: in ``Z/n`` every element is divisible by 2 when
    ``n`` is odd, and exactly the even residues are when ``n`` is even.
    """
    if x.group.factors != G.factors:
        raise DomainError("element does not belong to the group")
    for c, n in zip(x.coords, G.factors):
        if n % 2 == 0 and c % 2:  # n == 0 is Z, where only even integers halve
            return False
    return True


def parse_word(text: str) -> list:
    """Parse a relator such as ``"a^4 b^-6"`` or ``"a a b^-1"`` into ``(name, exp)`` pairs."""
    out = []
    for token in text.replace("*", " ").split():
        name, _, exp = token.partition("^")
        try:
            out.append((name, int(exp) if exp else 1))
        except ValueError:
            raise DomainError(f"bad exponent in {token!r}") from None
    return out


def abelianize_presentation(generators, relator_words) -> FiniteAbelianGroup:
    """Abelianization of ``<generators | relators>``.

    Each relator is a list of ``(generator, exponent)`` pairs or a string
    accepted by :func:`parse_word`.
    """
    generators = list(generators)
    index = {g: k for k, g in enumerate(generators)}
    if len(index) != len(generators):
        raise DomainError("duplicate generator names")
    rows = []
    for w in relator_words:
        letters = parse_word(w) if isinstance(w, str) else w
        row = [0] * len(generators)
        for name, exp in letters:
            if name not in index:
                raise DomainError(f"relator uses undeclared generator {name!r}")
            row[index[name]] += exp
        rows.append(tuple(row))
    return structure_from_relations(len(generators), rows)


def _steinberg_preset(d: int):
    from .steinberg import steinberg_relations

    gens = [f"E{i}{j}" for i in range(1, d + 1) for j in range(1, d + 1) if i != j]
    words = [
        [(f"E{s.i}{s.j}", e) for s, e in w.letters] for w in steinberg_relations(d)
    ]
    return gens, words


def preset_presentation(name: str):
    """Generators and relators of a built-in presentation.

    ``sl2`` is the amalgam ``Z/4 *_{Z/2} Z/6``, written with ``a`` of order 4
    and ``b`` of order 6 sharing their involution ``a^2 = b^3``.  ``slN`` for
    ``N >= 3`` is the Steinberg presentation.
    """
    if name == "sl2":
        return ["a", "b"], ["a^4", "a^2 b^-3"]
    if name in ("sl3", "sl4", "sl5"):
        return _steinberg_preset(int(name[2:]))
    raise DomainError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


PRESETS = ("sl2", "sl3", "sl4", "sl5")
