"""Steinberg presentation of SL_d(Z) and homomorphisms given on generators.

Commutators follow ``[a, b] = a b a^-1 b^-1``; with this convention
``[E_12, E_23] = E_13`` holds for the standard elementary matrices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, FormatError
from .matrices import Matrix, matrix_order
from .scalars import QuadScalar

__all__ = [
    "GenSymbol",
    "Word",
    "HomCandidate",
    "VerificationReport",
    "steinberg_relations",
    "relator_count",
    "evaluate_word",
    "inverse_images",
    "verify_hom",
    "identity_candidate",
    "inverse_transpose_candidate",
    "trivial_candidate",
    "conjugated_candidate",
    "build_counterexample_rep",
    "closure_order",
    "closure_order_of_matrices",
    "generator_orders",
    "all_symbols",
    "commutator",
    "u3_exceptional_rep",
    "U3_SYMBOLS",
    "parse_candidate",
    "dump_candidate",
    "load_candidate",
]


@dataclass(frozen=True, order=True)
class GenSymbol:
    """The elementary generator ``E_ij`` (1-based)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j or self.i < 1 or self.j < 1:
            raise DomainError(f"invalid generator E_{self.i}{self.j}")

    def check_dim(self, d: int):
        if self.i > d or self.j > d:
            raise DomainError(f"generator {self} does not exist for d={d}")

    def matrix(self, d: int) -> Matrix:
        return Matrix.elementary(d, self.i, self.j)

    def transposed(self) -> GenSymbol:
        return GenSymbol(self.j, self.i)

    def __str__(self):
        return f"E{self.i},{self.j}" if max(self.i, self.j) > 9 else f"E{self.i}{self.j}"


def all_symbols(d: int) -> list:
    return [GenSymbol(i, j) for i in range(1, d + 1) for j in range(1, d + 1) if i != j]


U3_SYMBOLS = (GenSymbol(1, 2), GenSymbol(2, 3), GenSymbol(1, 3))


@dataclass(frozen=True)
class Word:
    """A word in the generators; letters are ``(GenSymbol, +1 or -1)``."""

    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((s, int(e)) for s, e in self.letters)
        for s, e in letters:
            if not isinstance(s, GenSymbol) or e not in (1, -1):
                raise DomainError(f"bad letter ({s!r}, {e!r})")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def gen(cls, i: int, j: int, exp: int = 1) -> Word:
        s = GenSymbol(i, j)
        sign = 1 if exp >= 0 else -1
        return cls(((s, sign),) * abs(exp))

    def inverse(self) -> Word:
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __len__(self):
        return len(self.letters)

    def symbols(self) -> set:
        return {s for s, _ in self.letters}

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(str(s) if e == 1 else f"{s}^-1" for s, e in self.letters)


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


def steinberg_relations(d: int) -> list:
    """All relators of the Steinberg presentation of SL_d(Z), ``d >= 3``.

    Order: commutators of non-interacting pairs, then the
    ``[E_ij, E_jl] E_il^-1`` relators, then ``(E_12 E_21^-1 E_12)^4``.
    """
    if d < 3:
        raise DomainError(f"the Steinberg presentation needs d >= 3, got {d}")
    syms = all_symbols(d)
    out = []
    for a in syms:
        for b in syms:
            if a != b and a.j != b.i and a.i != b.j:
                out.append(commutator(Word(((a, 1),)), Word(((b, 1),))))
    for i, j, l in ((i, j, l) for i in range(1, d + 1) for j in range(1, d + 1)
                    for l in range(1, d + 1)):
        if len({i, j, l}) == 3:
            out.append(commutator(Word.gen(i, j), Word.gen(j, l)) * Word.gen(i, l, -1))
    w = Word.gen(1, 2) * Word.gen(2, 1, -1) * Word.gen(1, 2)
    out.append(w ** 4)
    return out


def relator_count(d: int) -> int:
    """Closed form for ``len(steinberg_relations(d))``."""
    return d * d * (d - 1) * (d - 2) + 1


@dataclass(frozen=True)
class HomCandidate:
    """Images of elementary generators under a proposed homomorphism.

    ``domain`` is ``None`` for rational/integer entries or the ``D`` of
    ``Q(sqrt(D))``.  Partial candidates (only some generators) are allowed
    for restriction to subgroups such as U_3.
    """

    d: int
    images: dict = field(default_factory=dict)
    domain: int | None = None

    def __post_init__(self):
        if self.d < 2:
            raise DomainError(f"d must be at least 2, got {self.d}")
        sizes = set()
        for s, M in self.images.items():
            s.check_dim(self.d)
            if not M.is_square:
                raise DomainError(f"image of {s} is not square")
            sizes.add(M.nrows)
        if len(sizes) > 1:
            raise DomainError("generator images have different sizes")

    @property
    def size(self) -> int:
        """Size ``m`` of the image matrices."""
        return next(iter(self.images.values())).nrows

    @property
    def is_complete(self) -> bool:
        return all(s in self.images for s in all_symbols(self.d))

    @property
    def domain_name(self) -> str:
        return "Z" if self.domain is None else f"Q(sqrt({self.domain}))"

    @property
    def is_integral(self) -> bool:
        return all(M.is_integral for M in self.images.values())

    def image(self, i: int, j: int) -> Matrix:
        s = GenSymbol(i, j)
        if s not in self.images:
            raise DomainError(f"candidate has no image for {s}")
        return self.images[s]

    def is_trivial(self) -> bool:
        return all(M.is_identity() for M in self.images.values())

    def precompose_inverse_transpose(self) -> HomCandidate:
        """The candidate ``A -> image((A^-1)^T)``, i.e. ``E_ij -> image(E_ji)^-1``."""
        return HomCandidate(
            self.d,
            {s: self.images[s.transposed()].inverse() for s in self.images},
            self.domain,
        )

    def with_image(self, s: GenSymbol, M: Matrix) -> HomCandidate:
        images = dict(self.images)
        images[s] = M
        return HomCandidate(self.d, images, self.domain)


def identity_candidate(d: int) -> HomCandidate:
    return HomCandidate(d, {s: s.matrix(d) for s in all_symbols(d)})


def trivial_candidate(d: int, m: int | None = None) -> HomCandidate:
    I = Matrix.identity(d if m is None else m)
    return HomCandidate(d, {s: I for s in all_symbols(d)})


def inverse_transpose_candidate(d: int) -> HomCandidate:
    """``A -> (A^-1)^T`` on generators: ``E_ij -> E_ji^-1``."""
    return HomCandidate(d, {s: s.transposed().matrix(d).inverse() for s in all_symbols(d)})


def conjugated_candidate(H: HomCandidate, C: Matrix) -> HomCandidate:
    """Postcompose with conjugation ``X -> C X C^-1``."""
    Ci = C.inverse()
    return HomCandidate(H.d, {s: C * M * Ci for s, M in H.images.items()}, H.domain)


def inverse_images(H: HomCandidate) -> dict:
    """Inverses of all generator images, for repeated word evaluation."""
    return {s: M.inverse() for s, M in H.images.items()}


def evaluate_word(H: HomCandidate, w: Word, inverses: dict | None = None) -> Matrix:
    """Ordered product of the images of the letters of ``w``.

    ``inverses`` may carry precomputed inverse images (see :func:`inverse_images`).
    """
    if not H.images:
        raise DomainError("candidate has no images")
    if inverses is None:
        inverses = {}
    result = None
    for s, e in w.letters:
        if s not in H.images:
            raise DomainError(f"candidate has no image for {s}")
        if e == 1:
            M = H.images[s]
        else:
            if s not in inverses:
                inverses[s] = H.images[s].inverse()
            M = inverses[s]
        result = M if result is None else result * M
    return Matrix.identity(H.size) if result is None else result


@dataclass(frozen=True)
class VerificationReport:
    d: int
    relators_checked: int
    failed: tuple = ()
    non_unit_determinants: tuple = ()
    singular: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failed

    def summary(self) -> str:
        if self.passed:
            return f"pass relators={self.relators_checked}"
        first = self.failed[0]
        return f"fail failed={len(self.failed)}/{self.relators_checked} first={first}"


def verify_hom(H: HomCandidate) -> VerificationReport:
    """Evaluate every Steinberg relator; failures are reported, not raised.

    Determinants different from 1 are listed separately and do not count as
    relator failures.  A relator involving a singular image fails, since its
    value has determinant 0 or is undefined.
    """
    if not H.is_complete:
        missing = [str(s) for s in all_symbols(H.d) if s not in H.images]
        raise DomainError(f"candidate is missing images for {', '.join(missing)}")
    relators = steinberg_relations(H.d)
    dets = {s: M.det() for s, M in H.images.items()}
    singular = tuple(sorted(s for s, det in dets.items() if det == 0))
    inverses = {s: M.inverse() for s, M in H.images.items() if s not in singular}

    def holds(w):
        if any(s in singular for s, _ in w.letters):
            return False
        return evaluate_word(H, w, inverses).is_identity()

    failed = tuple(w for w in relators if not holds(w))
    bad_det = tuple(sorted(s for s, det in dets.items() if det != 1))
    return VerificationReport(H.d, len(relators), failed, bad_det, singular)


def _q7(a, b) -> QuadScalar:
    return QuadScalar(Fraction(a), Fraction(b), -7)


def build_counterexample_rep() -> HomCandidate:
    """A finite-image representation of SL_3(Z) into SL_3(Q(sqrt(-7))).

    Four generators get explicit matrices; ``E_13`` and ``E_31`` are the
    commutators forced by the Steinberg relations.
    """
    z, one = _q7(0, 0), _q7(1, 0)
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    e12 = Matrix([[one, z, z], [z, -one, z], [z, z, -one]])
    e23 = Matrix([[z, one, z], [one, z, z], [z, z, -one]])
    e32 = Matrix([[-one, z, z], [z, z, one], [z, one, z]])
    e21 = Matrix([
        [_q7(-half, 0), _q7(-half, 0), _q7(-quarter, -quarter)],
        [_q7(-half, 0), _q7(-half, 0), _q7(quarter, quarter)],
        [_q7(-quarter, quarter), _q7(quarter, -quarter), z],
    ])

    def comm(a, b):
        return a * b * a.inverse() * b.inverse()

    images = {
        GenSymbol(1, 2): e12,
        GenSymbol(2, 3): e23,
        GenSymbol(3, 2): e32,
        GenSymbol(2, 1): e21,
        GenSymbol(1, 3): comm(e12, e23),
        GenSymbol(3, 1): comm(e32, e21),
    }
    return HomCandidate(3, images, -7)


def closure_order_of_matrices(generators, cap: int):
    """Order of the group generated by invertible ``generators``, or ``None`` past ``cap``.

    Breadth-first search from the identity, multiplying by generators and
    their inverses; matrices hash on their exact entries.
    """
    if cap < 1:
        raise DomainError("cap must be positive")
    generators = list(generators)
    steps = generators + [g.inverse() for g in generators]
    start = Matrix.identity(generators[0].nrows, generators[0].modulus)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for g in steps:
            y = x * g
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return None
                queue.append(y)
    return len(seen)


def closure_order(H: HomCandidate, cap: int = 10**6):
    """Order of the image of ``H``; ``None`` when it exceeds ``cap``."""
    return closure_order_of_matrices(list(H.images.values()), cap)


def u3_exceptional_rep(case: str, mu=1, nu=1) -> HomCandidate:
    """Non-unipotent representations of the Heisenberg group U_3.

    ``case="m2"``: 2x2 images with ``E_13 -> -id``.
    ``case="m3"``: 3x3 images over ``Q(sqrt(-3))`` with ``E_13 -> lambda id``,
    ``lambda`` a primitive cube root of unity.  Scalars ``mu`` and ``nu`` must
    be nonzero.
    """
    if mu == 0 or nu == 0:
        raise DomainError("mu and nu must be nonzero")
    e12, e23, e13 = U3_SYMBOLS
    if case == "m2":
        images = {
            e12: Matrix([[mu, 0], [0, -mu]]),
            e23: Matrix([[0, nu], [1, 0]]),
            e13: Matrix([[-1, 0], [0, -1]]),
        }
        D = mu.D if isinstance(mu, QuadScalar) else nu.D if isinstance(nu, QuadScalar) else None
        return HomCandidate(3, images, D)
    if case == "m3":
        lam = QuadScalar(Fraction(-1, 2), Fraction(1, 2), -3)
        one, z = QuadScalar(1, 0, -3), QuadScalar(0, 0, -3)
        mu, nu = one * mu, one * nu
        images = {
            e12: Matrix([[mu, z, z], [z, mu * lam, z], [z, z, mu * lam * lam]]),
            e23: Matrix([[z, z, nu], [one, z, z], [z, one, z]]),
            e13: Matrix([[lam, z, z], [z, lam, z], [z, z, lam]]),
        }
        return HomCandidate(3, images, -3)
    raise DomainError(f"unknown case {case!r}; expected 'm2' or 'm3'")


def generator_orders(H: HomCandidate, cap: int = 1000) -> dict:
    return {s: matrix_order(M, cap) for s, M in H.images.items()}


# candidate file format


def dump_candidate(H: HomCandidate) -> str:
    lines = [f"d = {H.d}", f"domain = {H.domain_name}"]
    for s in sorted(H.images):
        lines.append(f"E {s.i} {s.j} = {H.images[s].to_text()}")
    return "\n".join(lines) + "\n"


def _parse_domain(value: str, line: int):
    value = value.replace(" ", "")
    if value == "Z":
        return None
    if value.startswith("Q(sqrt(") and value.endswith("))"):
        try:
            D = int(value[7:-2])
            QuadScalar(0, 0, D)
            return D
        except (ValueError, DomainError):
            pass
    raise FormatError(f"bad domain {value!r}; expected Z or Q(sqrt(D))", line)


def parse_candidate(text: str) -> HomCandidate:
    """Parse the candidate text format.

    Lines are ``d = N``, ``domain = Z`` or ``domain = Q(sqrt(D))``, and
    ``E i j = <matrix>``.  Blank lines and ``#`` comments are ignored.
    """
    d = None
    domain = None
    images = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise FormatError(f"expected 'key = value', got {line!r}", lineno)
        key, value = key.strip(), value.strip()
        if key == "d":
            try:
                d = int(value)
            except ValueError:
                raise FormatError(f"d must be an integer, got {value!r}", lineno) from None
        elif key == "domain":
            domain = _parse_domain(value, lineno)
        elif key.startswith("E"):
            parts = key[1:].split()
            try:
                s = GenSymbol(int(parts[0]), int(parts[1]))
            except (IndexError, ValueError, DomainError):
                raise FormatError(f"bad generator {key!r}; expected 'E i j'", lineno) from None
            if s in images:
                raise FormatError(f"duplicate image for {s}", lineno)
            try:
                M = Matrix.from_text(value)
            except (FormatError, DomainError) as exc:
                raise FormatError(str(exc), lineno) from None
            for x in M.entries():
                if isinstance(x, QuadScalar) and x.D != domain:
                    raise FormatError(f"entry {x} is outside domain", lineno)
            images[s] = M
        else:
            raise FormatError(f"unknown key {key!r}", lineno)
    if d is None:
        raise FormatError("missing 'd = N' line")
    try:
        return HomCandidate(d, images, domain)
    except DomainError as exc:
        raise FormatError(str(exc)) from None


def load_candidate(path) -> HomCandidate:
    with open(path, encoding="utf-8") as fh:
        return parse_candidate(fh.read())
