"""Closed-form Brill-Noether invariants and exact integer helpers.

Everything here works on Python ints, so results are exact for any input size.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


@dataclass(frozen=True, order=True)
class Params:
    """Degree ``d``, genus ``g`` and ambient dimension ``r`` of a curve in P^r."""

    d: int
    g: int
    r: int

    def __post_init__(self):
        for name in ("d", "g", "r"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{name} must be an int, got {value!r}")
        if self.d < 1:
            raise ValueError(f"degree d must be >= 1, got {self.d}")
        if self.g < 0:
            raise ValueError(f"genus g must be >= 0, got {self.g}")
        if self.r < 1:
            raise ValueError(f"ambient dimension r must be >= 1, got {self.r}")


def brill_noether_number(p: Params) -> int:
    """rho(g, r, d) = g - (r+1)(g-d+r)."""
    return p.g - (p.r + 1) * (p.g - p.d + p.r)


def generic_gonality(g: int) -> int:
    if g < 2:
        raise ValueError(f"generic gonality needs g >= 2, got {g}")
    return (g + 3) // 2


def expected_gonality(p: Params) -> int:
    """min(d - 2r + 2, floor((g+3)/2))."""
    return min(p.d - 2 * p.r + 2, (p.g + 3) // 2)


def gonal_locus_dim(g: int, k: int) -> int:
    """Dimension 2g + 2k - 5 of the k-gonal locus in M_g.

    Only valid for 2 <= k with 2k <= g + 2; anything else raises ``ValueError``.
    """
    if k < 2 or 2 * k > g + 2:
        raise ValueError(f"gonal locus dimension formula needs 2 <= k <= (g+2)/2, got g={g}, k={k}")
    return 2 * g + 2 * k - 5


def hilbert_expected_dim(p: Params) -> int:
    """Expected dimension (r+1)d - (r-3)(g-1) of the Hilbert scheme of curves."""
    if p.r < 3:
        raise ValueError(f"Hilbert scheme dimension formula needs r >= 3, got r={p.r}")
    return (p.r + 1) * p.d - (p.r - 3) * (p.g - 1)


def secant_expected_dim(r: int, e: int) -> int:
    """Expected dimension 2r - 2 - e of e-secant (r-2)-plane divisors; negative means expected empty."""
    if r < 2 or e < 1:
        raise ValueError(f"need r >= 2 and e >= 1, got r={r}, e={e}")
    return 2 * r - 2 - e


def clifford_of_divisor(deg: int, h0: int) -> int:
    if h0 < 1 or deg < 0:
        raise ValueError(f"need h0 >= 1 and deg >= 0, got deg={deg}, h0={h0}")
    return deg - 2 * (h0 - 1)


def generic_clifford_index(g: int) -> int:
    """floor((g-1)/2), the Clifford index of a general curve of genus g."""
    if g < 2:
        raise ValueError(f"Clifford index needs g >= 2, got {g}")
    return (g - 1) // 2


def exact_sqrt(x: int) -> int | None:
    """Return the non-negative integer root of ``x`` if it is a perfect square, else None."""
    if x < 0:
        return None
    s = isqrt(x)
    return s if s * s == x else None


def is_perfect_square(x: int) -> bool:
    return exact_sqrt(x) is not None
