"""The rank-2 Picard lattice ZH + ZC of a K3 surface S in P^r of degree 2r-2.

Intersection numbers: H^2 = 2r-2, C^2 = 2g-2, H.C = d.  Effectiveness follows the
numeric criterion D^2 >= 0 and D.H > 2, which is only valid when S carries no
(-2)-curves; lattices therefore carry certificates computed from the associated
quadratic form, and the effectiveness predicates refuse to run without them.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import UncertifiedLattice
from .invariants import Params
from .qform import DEFAULT_BOUND, BinaryQuadForm, ReprResult, represents, represents_zero


class DivClass(NamedTuple):
    """The class m H + n C."""

    m: int
    n: int

    def __add__(self, other):
        return DivClass(self.m + other.m, self.n + other.n)

    def __sub__(self, other):
        return DivClass(self.m - other.m, self.n - other.n)

    def __neg__(self):
        return DivClass(-self.m, -self.n)

    def __rmul__(self, k: int):
        return DivClass(k * self.m, k * self.n)

    def __str__(self):
        return f"({self.m} {self.n})"


H = DivClass(1, 0)
C = DivClass(0, 1)
ZERO = DivClass(0, 0)


@dataclass(frozen=True)
class K3Lattice:
    """Lattice built from ``params``.

    With ``certify=True`` (the default) the no-(-2)-curve and no-elliptic-pencil
    certificates are computed at construction; ``certified`` is true only when both
    representability questions come back as a definite NO.
    """

    params: Params
    certify: bool = True
    bound: int = DEFAULT_BOUND
    form: BinaryQuadForm = field(init=False, repr=False, compare=False)
    minus_two: ReprResult | None = field(init=False, repr=False, compare=False)
    zero: ReprResult | None = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        f = BinaryQuadForm.from_params(self.params)
        object.__setattr__(self, "form", f)
        minus_two = zero = None
        if self.certify:
            minus_two = represents(f, -1, self.bound)
            zero = represents_zero(f) if f.a != 0 else None
        object.__setattr__(self, "minus_two", minus_two)
        object.__setattr__(self, "zero", zero)

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        p = self.params
        return ((2 * p.r - 2, p.d), (p.d, 2 * p.g - 2))

    @property
    def no_minus_two_curves(self) -> bool:
        return self.minus_two is not None and self.minus_two.is_no

    @property
    def no_elliptic_pencils(self) -> bool:
        return self.zero is not None and self.zero.is_no

    @property
    def certified(self) -> bool:
        return self.no_minus_two_curves and self.no_elliptic_pencils

    def require_certified(self) -> None:
        if not self.certified:
            raise UncertifiedLattice(
                f"lattice {self.params} lacks certificates: "
                f"-1 -> {self.minus_two}, 0 -> {self.zero}"
            )


def intersect(L: K3Lattice, D1: DivClass, D2: DivClass) -> int:
    p = L.params
    return (
        (2 * p.r - 2) * D1.m * D2.m
        + p.d * (D1.m * D2.n + D2.m * D1.n)
        + (2 * p.g - 2) * D1.n * D2.n
    )


def self_int(L: K3Lattice, D: DivClass) -> int:
    return intersect(L, D, D)


def is_effective(L: K3Lattice, D: DivClass, *, check: bool = True) -> bool:
    """Nonzero effective: D^2 >= 0 and D.H > 2.

    ``check=False`` skips the certificate requirement and just evaluates the numeric
    criterion; the answer is then meaningless geometrically if S has (-2)-curves.
    """
    if check:
        L.require_certified()
    return self_int(L, D) >= 0 and intersect(L, D, H) > 2


def is_q_effective(L: K3Lattice, D: DivClass, *, check: bool = True) -> bool:
    """Some positive multiple of D is effective (the zero class counts)."""
    if check:
        L.require_certified()
    if D == ZERO:
        return True
    return self_int(L, D) >= 0 and intersect(L, D, H) > 0


class Ampleness(str, enum.Enum):
    YES = "yes"
    UNKNOWN = "unknown"


def c_is_ample(L: K3Lattice) -> Ampleness:
    """Sufficient test for ampleness of C: d^2 > 4 g (r - 1).  Never a disproof."""
    p = L.params
    return Ampleness.YES if p.d * p.d > 4 * p.g * (p.r - 1) else Ampleness.UNKNOWN
