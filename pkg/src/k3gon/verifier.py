"""Constrained integer minimization behind the gonality formula, plus hypothesis bundles.

For a curve C of degree d and genus g on a K3 surface S in P^r with Pic(S) = ZH + ZC,
the divisors D = mH + nC that could compute the gonality satisfy

    (i)   (r-1) m^2 + m n d + (g-1) n^2 > 0           (D^2 > 0)
    (ii)  2 < (2r-2) m + n d < d - 2                   (2 < D.H < d-2)
    (iii) m d + (2n-1)(g-1) <= 0                       (C.D <= g-1)

and the gonality is bounded below by the minimum of f(D) = D.C - D^2 over that set.
Everything here is exact integer arithmetic; the enumeration is provably complete.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import isqrt

from .errors import EnumerationError, HypothesisViolation, InternalInvariantViolation
from .invariants import Params, brill_noether_number, is_perfect_square
from .k3lattice import C, H, DivClass, K3Lattice, intersect, is_effective, is_q_effective, self_int
from .qform import DEFAULT_BOUND, BinaryQuadForm, represents, represents_zero


def f_value(p: Params, D: DivClass) -> int:
    m, n = D
    return -(2 * p.r - 2) * m * m + m * (p.d - 2 * n * p.d) + (n - n * n) * (2 * p.g - 2)


@dataclass(frozen=True)
class ConstraintA:
    params: Params
    strict_mode: bool = False


def in_A(c: ConstraintA, D: DivClass) -> bool:
    p = c.params
    m, n = D
    f = BinaryQuadForm.from_params(p)
    if f(m, n) <= 0:
        return False
    dh = (2 * p.r - 2) * m + n * p.d
    if not 2 < dh < p.d - 2:
        return False
    if m * p.d + (2 * n - 1) * (p.g - 1) > 0:
        return False
    if c.strict_mode and f(-m, 1 - n) <= 0:
        return False
    return True


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _strip_n_limit(disc: int, top: int, strict: bool) -> int:
    """Largest N >= 0 with N^2 * disc < top^2 (or <= when not strict)."""
    N = isqrt(top * top // disc) + 1
    while N >= 0 and (N * N * disc >= top * top if strict else N * N * disc > top * top):
        N -= 1
    return N


def a_n_range(p: Params) -> tuple[int, int]:
    """Exact range of n outside which (i) and (ii) are incompatible.

    On the strip (ii), Q is convex in m, so its maximum sits at an endpoint where
    (2r-2) m + n d = k; there Q = (k^2 - disc n^2) / (4(r-1)).  Hence (i) needs
    disc n^2 < (d-2)^2.
    """
    disc = BinaryQuadForm.from_params(p).disc
    if p.d < 5 or disc <= 0:
        raise EnumerationError(
            f"enumeration of A needs d >= 5 and d^2 > 4(r-1)(g-1); got {p}, disc={disc}"
        )
    N = _strip_n_limit(disc, p.d - 2, strict=True)
    return (-N, N)


def enumerate_A(c: ConstraintA) -> list[DivClass]:
    """All integer classes satisfying (i)-(iii), sorted by (n, m)."""
    p = c.params
    if p.r < 2:
        raise EnumerationError(f"enumeration of A needs r >= 2, got {p}")
    lo, hi = a_n_range(p)
    w = 2 * p.r - 2
    out = []
    for n in range(lo, hi + 1):
        # open strip 2 < w m + n d < d - 2
        m_lo = (2 - n * p.d) // w + 1
        m_hi = _ceil_div(p.d - 2 - n * p.d, w) - 1
        for m in range(m_lo, m_hi + 1):
            D = DivClass(m, n)
            if in_A(c, D):
                out.append(D)
    return out


@dataclass
class HypothesisReport:
    """Named boolean checks with the numbers they were computed from."""

    name: str
    flags: dict[str, bool]
    quantities: dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.flags.values())

    def failing(self) -> list[str]:
        return [k for k, v in self.flags.items() if not v]

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "flags": dict(self.flags),
                "quantities": dict(self.quantities)}


# Short labels used when a gonality hypothesis flag fails.
THM3_VIOLATIONS = {
    "r_ge_3": "r-too-small",
    "d_ge_r2_plus_r": "degree-too-small",
    "rho_negative": "rho-nonnegative",
    "discriminant_bound": "discriminant-bound",
    "minus_one_not_represented": "minus-one-not-excluded",
    "zero_not_represented": "zero-represented",
}


def theorem3_applicable(p: Params, bound: int = DEFAULT_BOUND) -> HypothesisReport:
    """Numeric hypotheses of the K3 gonality theorem for (d, g, r)."""
    d, g, r = p.d, p.g, p.r
    f = BinaryQuadForm.from_params(p)
    rho = brill_noether_number(p)
    if r >= 4:
        disc_rhs = 4 * (r - 1) * (g + r - 2)
    else:
        disc_rhs = 8 * g
    minus_one = represents(f, -1, bound)
    zero = represents_zero(f) if f.a != 0 else represents(f, 0, bound)
    flags = {
        "r_ge_3": r >= 3,
        "d_ge_r2_plus_r": d >= r * r + r,
        "rho_negative": rho < 0,
        "discriminant_bound": d * d > disc_rhs,
        "minus_one_not_represented": minus_one.is_no,
        "zero_not_represented": zero.is_no,
    }
    return HypothesisReport(
        "theorem3",
        flags,
        {"rho": rho, "d2": d * d, "disc_rhs": disc_rhs, "disc": f.disc,
         "minus_one": str(minus_one), "zero": str(zero)},
    )


@dataclass
class AlphaReport:
    params: Params
    alpha: int | None
    minimizers: list[DivClass]
    enumerated: list[DivClass]
    n_range: tuple[int, int]
    strict_mode: bool
    hypotheses: HypothesisReport

    @property
    def guaranteed(self) -> bool:
        """Whether the theorem's hypotheses hold, so alpha = d - 2r + 2 is proven."""
        return self.hypotheses.ok

    def to_dict(self) -> dict:
        return {
            "d": self.params.d, "g": self.params.g, "r": self.params.r,
            "alpha": self.alpha,
            "minimizers": [list(D) for D in self.minimizers],
            "enumerated": [[D.m, D.n, f_value(self.params, D)] for D in self.enumerated],
            "n_range": list(self.n_range),
            "strict_mode": self.strict_mode,
            "guaranteed": self.guaranteed,
            "hypotheses": self.hypotheses.to_dict(),
        }


def expected_minimizers(p: Params) -> list[DivClass]:
    """H, plus C - H when d = g - 1 (where f(C - D) = f(D) puts C - H in A as well)."""
    out = [H]
    if p.d == p.g - 1:
        out.append(C - H)
    return sorted(out, key=lambda D: (D.n, D.m))


def compute_alpha(p: Params, strict: bool = False, *, strict_a: bool = False,
                  bound: int = DEFAULT_BOUND) -> AlphaReport:
    """Minimum of f over A and its argmin.

    ``strict`` raises HypothesisViolation when the theorem's hypotheses fail; otherwise
    the report is returned with ``guaranteed`` false.  When they hold, the result is
    checked against alpha = d - 2r + 2 and the expected minimizers, and a mismatch
    raises InternalInvariantViolation.
    """
    hyp = theorem3_applicable(p, bound)
    if strict and not hyp.ok:
        raise HypothesisViolation(",".join(THM3_VIOLATIONS[k] for k in hyp.failing()))
    c = ConstraintA(p, strict_a)
    enumerated = enumerate_A(c)
    values = {D: f_value(p, D) for D in enumerated}
    alpha = min(values.values()) if values else None
    minimizers = [D for D in enumerated if values[D] == alpha]
    report = AlphaReport(p, alpha, minimizers, enumerated, a_n_range(p), strict_a, hyp)
    if hyp.ok:
        want_alpha = p.d - 2 * p.r + 2
        want_min = expected_minimizers(p)
        if alpha != want_alpha or minimizers != want_min:
            raise InternalInvariantViolation(
                f"{p}: alpha={alpha}, minimizers={minimizers}; "
                f"expected alpha={want_alpha}, minimizers={want_min}"
            )
    return report


def h1_normal_vanishes(d: int, g: int) -> bool:
    """Regularity of the normal bundle for C on a quartic: d <= 18 or g < 4d - 31."""
    return d <= 18 or g < 4 * d - 31


class VeryAmpleVerdict(str, enum.Enum):
    NO_VIOLATOR = "NoViolatorFound"
    VIOLATOR = "ViolatorFound"


@dataclass
class VeryAmpleResult:
    """Outcome of the violator search for k-very-ampleness of |C|.

    NO_VIOLATOR certifies k-very-ampleness.  VIOLATOR only reports a divisor
    satisfying the numerical chain; it does not prove failure.
    """

    verdict: VeryAmpleVerdict
    k: int
    violators: list[DivClass]
    n_range: tuple[int, int]

    @property
    def witness(self) -> DivClass | None:
        return self.violators[0] if self.violators else None

    def __str__(self):
        if self.witness is None:
            return self.verdict.value
        return f"{self.verdict.value}{self.witness}"


def violates_very_ample_chain(L: K3Lattice, D: DivClass, k: int) -> bool:
    """Effective D with C - 2D Q-effective and C.D - k - 1 <= D^2 <= C.D / 2 < k + 1."""
    dd = self_int(L, D)
    cd = intersect(L, C, D)
    return (
        is_effective(L, D)
        and is_q_effective(L, C - 2 * D)
        and 2 * dd <= cd
        and cd < 2 * (k + 1)
        and cd - k - 1 <= dd
    )


def check_very_ample_order(p: Params, k: int, lattice: K3Lattice | None = None) -> VeryAmpleResult:
    """Search every candidate divisor that could stop |C| from being k-very ample.

    Candidates satisfy 3 <= D.H <= floor(d/2) (effectiveness of D and of a multiple
    of C - 2D).  On that strip D^2 >= 0 forces disc * n^2 <= floor(d/2)^2.
    """
    L = lattice if lattice is not None else K3Lattice(p)
    L.require_certified()
    disc = L.form.disc
    if disc <= 0:
        raise EnumerationError(f"very-ampleness search needs d^2 > 4(r-1)(g-1); got {p}")
    top = p.d // 2
    w = 2 * p.r - 2
    N = _strip_n_limit(disc, top, strict=False) if top >= 3 else -1
    violators = []
    for n in range(-N, N + 1):
        for m in range(_ceil_div(3 - n * p.d, w), (top - n * p.d) // w + 1):
            D = DivClass(m, n)
            if violates_very_ample_chain(L, D, k):
                violators.append(D)
    verdict = VeryAmpleVerdict.VIOLATOR if violators else VeryAmpleVerdict.NO_VIOLATOR
    return VeryAmpleResult(verdict, k, violators, (-N, N) if N >= 0 else (0, -1))


class MoriCase(str, enum.Enum):
    BOUNDARY = "boundary"
    INTERIOR = "interior"
    NOT_EXISTS = "not-exists"


def mori_exists(d: int, g: int) -> MoriCase:
    """Smooth degree-d genus-g curves on a smooth quartic surface.

    BOUNDARY (8(g-1) = d^2) is the complete intersection of type (4, d/4); its
    gonality formula lies outside the K3 lattice machinery.
    """
    if d <= 0 or g < 0:
        raise ValueError(f"need d > 0 and g >= 0, got d={d}, g={g}")
    if 8 * (g - 1) == d * d:
        return MoriCase.BOUNDARY
    if 8 * g < d * d and (d, g) != (5, 3):
        return MoriCase.INTERIOR
    return MoriCase.NOT_EXISTS


def rathmann_exists(p: Params) -> bool:
    """d^2 >= 4g(r-1) + (r-1)^2: a K3 of degree 2r-2 in P^r contains such a curve."""
    if p.g <= 0 or p.r < 3:
        raise ValueError(f"Rathmann's condition needs g > 0 and r >= 3, got {p}")
    return p.d * p.d >= 4 * p.g * (p.r - 1) + (p.r - 1) ** 2


@dataclass
class Theorem1Report(HypothesisReport):
    derived_pairs: list[tuple[int, int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["derived_pairs"] = [list(t) for t in self.derived_pairs]
        return out


def theorem1_applicable(d: int, g: int) -> Theorem1Report:
    """Hypotheses for space curves of expected gonality, and the four (d', g') they yield."""
    shifted = d * d - 8 * g + 8
    flags = {
        "g_ge_15_odd": g >= 15 and g % 2 == 1,
        "d_ge_14_even": d >= 14 and d % 2 == 0,
        "d2_gt_8g": d * d > 8 * g,
        "rho3_negative": 4 * d < 3 * g + 12,
        "shifted_disc_not_square": not is_perfect_square(shifted),
        "h1_vanishes": h1_normal_vanishes(d, g),
    }
    report = Theorem1Report("theorem1", flags, {"d2": d * d, "8g": 8 * g, "shifted_disc": shifted})
    if report.ok:
        for dp, gp in ((d, g), (d + 1, g + 1), (d + 1, g + 2), (d + 2, g + 3)):
            report.derived_pairs.append((dp, gp, min(dp - 4, (gp + 3) // 2)))
    return report


def bn_divisor_solutions(g: int) -> list[tuple[int, int]]:
    """All (r, d) with r >= 1, r + 1 <= d <= g - 1 and rho(g, r, d) = -1.

    rho = -1 is equivalent to (r + 1)(g - d + r) = g + 1, so r + 1 runs over divisors
    of g + 1.
    """
    if g < 2:
        raise ValueError(f"need g >= 2, got {g}")
    divisors = set()
    for i in range(1, isqrt(g + 1) + 1):
        if (g + 1) % i == 0:
            divisors.update((i, (g + 1) // i))
    out = []
    for q in sorted(divisors - {1}):
        r = q - 1
        d = g + r - (g + 1) // q
        if r + 1 <= d <= g - 1:
            out.append((r, d))
    return out
