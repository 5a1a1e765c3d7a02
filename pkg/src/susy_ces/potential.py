"""The partner pair of inverse-power-law potentials.

Both members derive from the superpotential W(x) = -m / sqrt(x) on
x in (0, inf):

    V_pm(x) = W(x)^2 +- W'(x) = m^2 / x +- (m / 2) x^(-3/2)

The coefficient lock between the 1/x and x^(-3/2) terms (the square of
the second equals a quarter of the first) is exactly what makes the
spectral problem solvable in closed form; :func:`ces_residual` measures
it and is identically zero here by construction.

The pair is shape invariant in the strong sense that V_plus at
parameter m equals V_minus at parameter -m.  :func:`V` is written so
that both evaluations run through one expression tree and the identity
holds bit-for-bit, not merely to rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, InvalidParams


class Sector(Enum):
    """Which partner: PLUS carries +W', MINUS carries -W'."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sign(self) -> float:
        return 1.0 if self is Sector.PLUS else -1.0


def _check_m(m: float, *, allow_negative: bool = True) -> float:
    m = float(m)
    if not math.isfinite(m) or m == 0.0:
        raise InvalidParams(f"m={m!r} must be finite and non-zero")
    if m < 0.0 and not allow_negative:
        raise InvalidParams(f"m={m!r} must be positive")
    return m


def _check_x(x) -> np.ndarray:
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise DomainError("x contains non-finite values")
    if np.any(xa <= 0.0):
        raise DomainError("potentials are defined on x > 0 only")
    return xa


def superpotential(x, m: float):
    """W(x) = -m / sqrt(x)."""
    m = _check_m(m)
    xa = _check_x(x)
    return -m / np.sqrt(xa)


def superpotential_deriv(x, m: float):
    """W'(x) = (m / 2) x^(-3/2)."""
    m = _check_m(m)
    xa = _check_x(x)
    return (0.5 * m) / (xa * np.sqrt(xa))


def V(x, m: float, sector: Sector):
    """Partner potential V_pm(x) = m^2/x +- (m/2) x^(-3/2).

    The sector enters only through a sign constant, so V(x, m, PLUS) and
    V(x, -m, MINUS) evaluate the same floating-point expression and agree
    to the last bit.
    """
    m = _check_m(m)
    xa = _check_x(x)
    s = sector.sign
    return (m * m) / xa + s * (0.5 * m) / (xa * np.sqrt(xa))


def V_from_superpotential(x, m: float, sector: Sector):
    """Same potential assembled as W^2 +- W', kept as an independent route."""
    return superpotential(x, m) ** 2 + sector.sign * superpotential_deriv(x, m)


def V_deriv(x, m: float, sector: Sector):
    """dV_pm/dx = -(m/x^2) (m +- (3/4) x^(-1/2))."""
    m = _check_m(m)
    xa = _check_x(x)
    return -(m / (xa * xa)) * (m + sector.sign * 0.75 / np.sqrt(xa))


def ces_residual(m: float) -> float:
    """Coefficient-lock defect of the pair, identically 0.0.

    For a general two-term potential A/x + B x^(-3/2) closed-form
    solvability requires B^2 = A/4.  Here A = m^2, B = m/2, and the
    expression below is exactly zero in floating point as well (halving
    and squaring commute with the rounding of m*m).
    """
    m = _check_m(m)
    return (0.5 * m) ** 2 - (m * m) / 4.0


def shape_invariance_gap(x, m: float):
    """V_plus(x, m) - V_minus(x, -m), elementwise; exactly zero."""
    return V(x, m, Sector.PLUS) - V(x, -m, Sector.MINUS)


@dataclass(frozen=True)
class CriticalStructure:
    """Landmarks of the MINUS-sector potential for m > 0.

    V_minus rises from -inf, crosses zero at ``zero_x`` = 1/(4 m^2),
    peaks at ``max_x`` = 9/(16 m^2) with height ``max_value`` =
    16 m^4 / 27, then decays like m^2/x.
    """

    zero_x: float
    max_x: float
    max_value: float


def critical_structure(m: float) -> CriticalStructure:
    """Zero and maximum of V_minus; requires m > 0."""
    m = _check_m(m, allow_negative=False)
    m2 = m * m
    return CriticalStructure(
        zero_x=0.25 / m2,
        max_x=0.5625 / m2,
        max_value=(16.0 / 27.0) * m2 * m2,
    )


@dataclass(frozen=True)
class PotentialSpec:
    """A concrete physical potential: positive coupling m plus a sector."""

    m: float
    sector: Sector

    def __post_init__(self):
        object.__setattr__(self, "m", _check_m(self.m, allow_negative=False))
        if not isinstance(self.sector, Sector):
            raise InvalidParams(f"sector={self.sector!r} is not a Sector")

    def __call__(self, x):
        return V(x, self.m, self.sector)

    def derivative(self, x):
        return V_deriv(x, self.m, self.sector)

    def superpotential(self, x):
        return superpotential(x, self.m)

    def partner(self) -> "PotentialSpec":
        other = Sector.MINUS if self.sector is Sector.PLUS else Sector.PLUS
        return PotentialSpec(self.m, other)
