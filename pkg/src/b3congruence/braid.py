"""Irreducible B3 representations of dimension 2 and 3 in Tuba-Wenzl form.

Eigenvalues are always exact roots of unity written as reduced fractions
k/n, meaning e^(2 pi i k/n).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycNum, root_of_unity
from .errors import (
    BraidRelationViolated,
    DimensionMismatch,
    NonScalarCenter,
    ReducibleSpec,
    SpecSyntaxError,
)
from .linalg import CycMatrix, diag_spectrum, is_lower_triangular, is_scalar, is_upper_triangular


@dataclass(frozen=True)
class RootFraction:
    """e^(2 pi i k/n) with 0 <= k < n and gcd(k, n) = 1 (zero is 0/1)."""

    k: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("denominator must be positive")
        k, n = self.k % self.n, self.n
        g = math.gcd(k, n)
        k, n = (0, 1) if k == 0 else (k // g, n // g)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)

    @classmethod
    def parse(cls, text: str) -> "RootFraction":
        try:
            num, _, den = text.strip().partition("/")
            return cls(int(num), int(den) if den else 1)
        except ValueError as exc:
            raise SpecSyntaxError(f"cannot parse eigenvalue {text!r}; expected k/n") from exc

    @classmethod
    def of(cls, q: Fraction) -> "RootFraction":
        q = Fraction(q)
        return cls(q.numerator, q.denominator)

    @classmethod
    def from_cyc(cls, a: CycNum) -> "RootFraction | None":
        root = a.as_root_of_unity()
        return None if root is None else cls(*root)

    @property
    def value(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def order(self) -> int:
        return self.n

    def __mul__(self, other: "RootFraction") -> "RootFraction":
        return RootFraction.of(self.value + other.value)

    def __str__(self):
        return f"{self.k}/{self.n}"

    def to_cyc(self) -> CycNum:
        return root_of_unity(self.k, self.n)


@dataclass(frozen=True)
class RepSpec:
    dim: int
    eigs: tuple[RootFraction, ...]

    def __post_init__(self):
        eigs = tuple(e if isinstance(e, RootFraction) else RootFraction.parse(str(e)) for e in self.eigs)
        object.__setattr__(self, "eigs", eigs)
        if self.dim not in (2, 3):
            raise SpecSyntaxError("only dimensions 2 and 3 are supported")
        if len(eigs) != self.dim:
            raise SpecSyntaxError(f"dimension {self.dim} needs {self.dim} eigenvalues, got {len(eigs)}")

    @classmethod
    def parse(cls, dim: int, eigs: Sequence[str]) -> "RepSpec":
        return cls(dim, tuple(RootFraction.parse(e) for e in eigs))

    @classmethod
    def from_json(cls, data: dict) -> "RepSpec":
        return cls.parse(int(data["dim"]), data["eigs"])

    def to_json(self) -> dict:
        return {"dim": self.dim, "eigs": [str(e) for e in self.eigs]}

    @property
    def conductor(self) -> int:
        return math.lcm(*(e.n for e in self.eigs))

    def eigenvalues(self) -> list[CycNum]:
        n = self.conductor
        return [e.to_cyc().promote(n) for e in self.eigs]

    def __str__(self):
        return f"dim={self.dim} eigs=({', '.join(str(e) for e in self.eigs)})"


@dataclass(frozen=True, eq=False)
class BraidRep:
    """Images A of sigma_1 and B of sigma_2; the braid relation is checked."""

    A: CycMatrix
    B: CycMatrix
    spec: RepSpec | None = None

    def __post_init__(self):
        if self.A.dim != self.B.dim:
            raise DimensionMismatch("generator images must have equal dimension")
        if not braid_relation_holds(self.A, self.B):
            raise BraidRelationViolated("A B A != B A B")

    @property
    def dim(self) -> int:
        return self.A.dim

    def scaled(self, theta: CycNum) -> "BraidRep":
        return BraidRep(self.A * theta, self.B * theta, None)

    def sigma1_spectrum(self) -> list[CycNum] | None:
        if is_upper_triangular(self.A) or is_lower_triangular(self.A):
            return diag_spectrum(self.A)
        return None

    def eigen_spec(self) -> RepSpec | None:
        """RepSpec read off a triangular sigma_1 image, when all eigenvalues are roots of unity."""
        eigs = self.sigma1_spectrum()
        if eigs is None:
            return None
        fr = [RootFraction.from_cyc(e) for e in eigs]
        if any(f is None for f in fr):
            return None
        return RepSpec(self.dim, tuple(fr))


def braid_relation_holds(A: CycMatrix, B: CycMatrix) -> bool:
    return A @ B @ A == B @ A @ B


def is_irreducible(spec: RepSpec) -> bool:
    """Tuba-Wenzl irreducibility test on the eigenvalues of sigma_1.

    d=2: l1^2 - l1 l2 + l2^2 != 0.  d=3: l_j^2 + l_k l_m != 0 for {j,k,m} = {1,2,3}.
    """
    ls = spec.eigenvalues()
    if spec.dim == 2:
        l1, l2 = ls
        return not (l1 * l1 - l1 * l2 + l2 * l2).is_zero()
    l1, l2, l3 = ls
    return not any((a * a + b * c).is_zero() for a, b, c in ((l1, l2, l3), (l2, l1, l3), (l3, l1, l2)))


def tw_matrices(eigs: Sequence[CycNum]) -> tuple[CycMatrix, CycMatrix]:
    """Tuba-Wenzl normal form pair for the given ordered eigenvalues."""
    if len(eigs) == 2:
        l1, l2 = eigs
        A = CycMatrix.from_rows([[l1, l1], [0, l2]])
        B = CycMatrix.from_rows([[l2, 0], [-l2, l1]])
        return A, B
    if len(eigs) == 3:
        l1, l2, l3 = eigs
        a = l1 * l3 / l2 + l2
        A = CycMatrix.from_rows([[l1, a, l2], [0, l2, l2], [0, 0, l3]])
        B = CycMatrix.from_rows([[l3, 0, 0], [-l2, l2, 0], [l2, -a, l1]])
        return A, B
    raise DimensionMismatch("Tuba-Wenzl forms are implemented for d = 2, 3 only")


def tw_construct(spec: RepSpec) -> BraidRep:
    if not is_irreducible(spec):
        raise ReducibleSpec(f"eigenvalues {spec} lie on the reducibility locus")
    A, B = tw_matrices(spec.eigenvalues())
    return BraidRep(A, B, spec)


def predicted_central_scalar(eigs: Sequence[CycNum]) -> CycNum:
    """Scalar by which (sigma_1 sigma_2)^3 acts, from the eigenvalues alone."""
    p = eigs[0]
    for e in eigs[1:]:
        p = p * e
    if len(eigs) == 2:
        return -(p ** 3)
    if len(eigs) == 3:
        return p * p
    raise DimensionMismatch("only d = 2, 3")


def central_scalar(rep: BraidRep) -> CycNum:
    """(AB)^3 as a scalar, cross-checked against the eigenvalue formula."""
    AB = rep.A @ rep.B
    c = is_scalar(AB @ AB @ AB)
    if c is None:
        raise NonScalarCenter("(AB)^3 is not scalar; the representation is not irreducible B3 data")
    eigs = rep.sigma1_spectrum()
    if eigs is not None and predicted_central_scalar(eigs) != c:
        raise NonScalarCenter(f"central scalar {c} disagrees with the eigenvalue formula")
    return c


def factors_through_modular(rep: BraidRep) -> bool:
    c = central_scalar(rep)
    direct = c == 1
    eigs = rep.sigma1_spectrum()
    if eigs is not None:
        p = eigs[0]
        for e in eigs[1:]:
            p = p * e
        printed = (-(p ** 3) == 1) if rep.dim == 2 else (p * p == 1)
        if printed != direct:
            raise NonScalarCenter("factoring criterion disagrees with the direct computation")
    return direct


def scaling_choices(rep: BraidRep) -> list[RootFraction]:
    """The six roots of x^6 - conj(c) for the central scalar c, sorted by angle."""
    c = central_scalar(rep)
    root = c.as_root_of_unity()
    if root is None:
        raise ValueError(f"central scalar {c} is not a root of unity")
    k, n = root
    return sorted((RootFraction.of((Fraction(-k, n) + s) / 6) for s in range(6)), key=lambda r: r.value)


def scale_to_modular(rep: BraidRep, theta: RootFraction | None = None) -> tuple[BraidRep, RootFraction]:
    """theta * rep with trivial central scalar.

    With theta=None the root with the smallest angle in [0, 1) is chosen.
    An explicit theta must satisfy theta^6 * c = 1.
    """
    choices = scaling_choices(rep)
    if theta is None:
        theta = choices[0]
    elif theta not in choices:
        raise ValueError(f"theta={theta} does not make the central scalar trivial; valid: {', '.join(map(str, choices))}")
    if theta == RootFraction(0, 1):
        return rep, theta
    return rep.scaled(theta.to_cyc()), theta


def projective_order(eigs: Sequence[CycNum]) -> int | None:
    """Least t >= 1 with all eig^t equal; None if some ratio is not a root of unity."""
    t = 1
    first = eigs[0]
    for e in eigs[1:]:
        root = (e / first).as_root_of_unity()
        if root is None:
            return None
        t = math.lcm(t, root[1])
    return t


class Finiteness(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"
    INDETERMINATE = "indeterminate"


def rowell_tuba(spec: RepSpec) -> tuple[Finiteness, str]:
    """Finiteness of the image from the eigenvalues, with the rule that decided it.

    An eigenvalue that is not a root of unity would force an infinite image,
    but a RepSpec only holds roots of unity.
    """
    vals = [e.value for e in spec.eigs]
    if len(set(vals)) < len(vals):
        return Finiteness.INFINITE, "repeated eigenvalue"
    po = projective_order(spec.eigenvalues())
    if 2 <= po <= 5:
        return Finiteness.FINITE, f"distinct roots of unity with po={po} in [2, 5]"
    if spec.dim == 2:
        return Finiteness.INFINITE, f"d=2 with po={po} outside [2, 5]"
    half = Fraction(1, 2)
    for i in range(3):
        for j in range(3):
            if i != j and (vals[i] - vals[j] - half) % 1 == 0:
                return Finiteness.FINITE, "spectrum of shape {x, -x, y}"
    return Finiteness.INDETERMINATE, f"no Rowell-Tuba rule applies (d=3, po={po})"


def rowell_tuba_classify(spec: RepSpec) -> Finiteness:
    return rowell_tuba(spec)[0]
