"""Closed-form scattering solutions of the partner potentials.

For energy E = omega^2 > 0 the Schrodinger equation
-Z'' + V_pm Z = E Z admits solutions built from two confluent
hypergeometric pieces in the variable y = -2 i omega x:

    a1 = i m^2 / (2 omega),   a2 = a1 + 1/2,
    rtilde_1, rtilde_2  =  the 1/2-type and 3/2-type components
    Z_pm = e^{-i pi/4} ( rtilde_1 +- i rtilde_2 )

with the PLUS combination solving V_plus and MINUS solving V_minus.
Two independent branches (different component parameterisations) give
linearly independent solutions whose Wronskian is an exact constant.

All square roots of y follow one fixed convention,
y^{1/2} = sqrt(2 omega x) e^{-i pi/4}, consistent with principal powers
of i (i^{1/2} = e^{i pi/4}); mixing conventions flips relative signs
between the components, which is the single easiest way to break every
identity downstream, so the convention lives in exactly one place here.

Derivatives are analytic (chain rule through dy/dx = -2 i omega), never
finite differences.  Closed-form evaluation is viable for
|y| = 2 omega x <= the series bound; beyond that use ODE propagation
(:mod:`susy_ces.oracle`).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvalidParams
from .potential import Sector, superpotential
from .specfun import CHFParams, SeriesConfig, chf_1f1, chf_1f1_deriv

#: e^{-i pi/4}: global prefactor of Z; also the phase of y^{1/2} for x > 0
PHASE_M4 = cmath.exp(-0.25j * math.pi)
#: i^{1/2} (principal)
PHASE_P4 = cmath.exp(0.25j * math.pi)


class Branch(Enum):
    """Which of the two independent closed-form solutions."""

    I = "I"
    II = "II"


class RtildeCase(Enum):
    """Component index of the coupled first-order system."""

    ONE = 1
    TWO = 2


@dataclass(frozen=True)
class SolutionParams:
    """Derived constants for one (m, omega) solution family.

    ``a1``/``a2`` are the hypergeometric parameters; ``hermite lambda``
    values are recoverable as -4 a_j (see :func:`hermite_lambda`).
    """

    m: float
    omega: float
    a1: complex
    a2: complex
    b: float
    energy: float

    @property
    def sqrt_2w(self) -> float:
        return math.sqrt(2.0 * self.omega)


def solution_params(m: float, omega: float) -> SolutionParams:
    """Validate (m, omega) and assemble the solution constants."""
    m = float(m)
    omega = float(omega)
    if not (math.isfinite(m) and m > 0.0):
        raise InvalidParams(f"m={m!r} must be a positive finite real")
    if not (math.isfinite(omega) and omega > 0.0):
        raise InvalidParams(f"omega={omega!r} must be a positive finite real")
    a1 = complex(0.0, (0.5 * (m * m)) / omega)
    return SolutionParams(m=m, omega=omega, a1=a1, a2=a1 + 0.5, b=0.5,
                          energy=omega * omega)


def y_of_x(x, omega: float):
    """The hypergeometric argument y = -2 i omega x."""
    return -2j * omega * np.asarray(x, dtype=float)


class CouplingConstants(NamedTuple):
    """Coefficients (c1, c2) of the two components rtilde_1, rtilde_2."""

    c1: complex
    c2: complex


def coupling_constants(p: SolutionParams, branch: Branch) -> CouplingConstants:
    """Relative normalisation locking the two components of a branch.

    Any common rescaling of (c1, c2) is immaterial, but their *ratio* is
    fixed by requiring that the pair satisfies the coupled first-order
    system (equivalently, that Z_pm obey the intertwining relations).
    """
    if branch is Branch.I:
        return CouplingConstants(1.0 + 0j,
                                 2.0 * p.sqrt_2w * PHASE_P4 * p.a1 / p.m)
    if branch is Branch.II:
        return CouplingConstants(1.0 + 0j,
                                 p.sqrt_2w * PHASE_P4 / (2.0 * p.m))
    raise InvalidParams(f"branch={branch!r} is not a Branch")


def _check_x(x) -> np.ndarray:
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)) or np.any(xa <= 0.0):
        raise DomainError("solutions are defined on finite x > 0 only")
    return xa


def _components(p: SolutionParams, branch: Branch, x, cfg: SeriesConfig | None):
    """rtilde_1, rtilde_2 and x-derivatives, shape of ``x``.

    Component recipe (h = e^{-y/2}, s = y^{1/2} = sqrt(2 omega x) e^{-i pi/4}):

        branch I :  r1 = h M(a1, 1/2; y)           r2 = c2 h s M(a1+1, 3/2; y)
        branch II:  r1 = h s M(a1+1/2, 3/2; y)     r2 = c2 h M(a2, 1/2; y)
    """
    xa = _check_x(x)
    w = p.omega
    y = y_of_x(xa, w)
    dy = -2j * w  # dy/dx
    h = np.exp(-0.5 * y)
    s = np.sqrt(2.0 * w * xa) * PHASE_M4
    c = coupling_constants(p, branch)

    def plain(a: complex):
        # f = h M(a, 1/2; y);  f' = dy h (M' - M/2)
        par = CHFParams(a, 0.5)
        M = chf_1f1(par, y, cfg)
        dM = chf_1f1_deriv(par, y, cfg)
        return h * M, dy * h * (dM - 0.5 * M)

    def halfpow(a: complex):
        # f = h s M(a, 3/2; y);  f' = dy h s (M/(2y) - M/2 + M')
        par = CHFParams(a, 1.5)
        M = chf_1f1(par, y, cfg)
        dM = chf_1f1_deriv(par, y, cfg)
        return h * s * M, dy * h * s * (M / (2.0 * y) - 0.5 * M + dM)

    if branch is Branch.I:
        r1, dr1 = plain(p.a1)
        f2, df2 = halfpow(p.a1 + 1.0)
    else:
        r1, dr1 = halfpow(p.a1 + 0.5)
        f2, df2 = plain(p.a2)
    return r1, c.c2 * f2, dr1, c.c2 * df2


def rtilde(p: SolutionParams, branch: Branch, case: RtildeCase, x,
           cfg: SeriesConfig | None = None):
    """Component rtilde_j(x) of the coupled system, j in {1, 2}."""
    r1, r2, _, _ = _components(p, branch, x, cfg)
    return r1 if case is RtildeCase.ONE else r2


def rtilde_deriv(p: SolutionParams, branch: Branch, case: RtildeCase, x,
                 cfg: SeriesConfig | None = None):
    """d rtilde_j / dx, analytic."""
    _, _, dr1, dr2 = _components(p, branch, x, cfg)
    return dr1 if case is RtildeCase.ONE else dr2


class SolutionSample(NamedTuple):
    """A solution evaluated together with its first derivative."""

    x: np.ndarray
    value: np.ndarray
    derivative: np.ndarray


def solution_Z(p: SolutionParams, branch: Branch, sector: Sector, x,
               cfg: SeriesConfig | None = None) -> SolutionSample:
    """Closed-form solution Z and dZ/dx at the points ``x``.

    Z_pm = e^{-i pi/4} (rtilde_1 +- i rtilde_2); PLUS solves V_plus,
    MINUS solves V_minus, at energy omega^2.
    """
    if not isinstance(sector, Sector):
        raise InvalidParams(f"sector={sector!r} is not a Sector")
    r1, r2, dr1, dr2 = _components(p, branch, x, cfg)
    sg = 1j * sector.sign
    xa = _check_x(x)
    return SolutionSample(xa, PHASE_M4 * (r1 + sg * r2), PHASE_M4 * (dr1 + sg * dr2))


def wronskian_Z(p: SolutionParams, sector: Sector, x,
                cfg: SeriesConfig | None = None):
    """W_x[Z^I, Z^II] = Z^I dZ^II/dx - Z^II dZ^I/dx, evaluated pointwise."""
    zi = solution_Z(p, Branch.I, sector, x, cfg)
    zii = solution_Z(p, Branch.II, sector, x, cfg)
    return zi.value * zii.derivative - zii.value * zi.derivative


def wronskian_exact(p: SolutionParams, sector: Sector) -> complex:
    """The constant the Wronskian must equal: -+ omega i^{3/2} sqrt(2 omega)/m."""
    return -sector.sign * p.omega * (1j * PHASE_P4) * p.sqrt_2w / p.m


def hermite_lambda(p: SolutionParams, j: int) -> complex:
    """Eigenvalue parameter of the equivalent Hermite-type equation.

    lambda_j = -(1 - eps_j) - 2 i m^2 / omega with eps_1 = +1,
    eps_2 = -1; algebraically lambda_j = -4 a_j, and the floating-point
    evaluations here match that product bit for bit (both routes scale
    the one rounded quotient m^2/omega by powers of two).
    """
    if j not in (1, 2):
        raise InvalidParams(f"j={j!r} must be 1 or 2")
    eps = 1.0 if j == 1 else -1.0
    return complex(-(1.0 - eps), -(2.0 * (p.m * p.m)) / p.omega)


def susy_map(p: SolutionParams, sample: SolutionSample,
             from_sector: Sector) -> SolutionSample:
    """Map a solution of one sector to its partner via the first-order ladder.

    From MINUS:  Z_+ = (Z_-' + W Z_-) / (i omega),  Z_+' = i omega Z_- + W Z_+
    From PLUS :  Z_- = (Z_+' - W Z_+) / (i omega),  Z_-' = i omega Z_+ - W Z_-

    The derivative formulas use the Schrodinger equation once, so the
    mapped sample is again a (value, derivative) pair on the same grid
    and the map is an exact involution up to rounding.
    """
    if not isinstance(from_sector, Sector):
        raise InvalidParams(f"from_sector={from_sector!r} is not a Sector")
    wx = superpotential(sample.x, p.m)
    iw = 1j * p.omega
    if from_sector is Sector.MINUS:
        val = (sample.derivative + wx * sample.value) / iw
        der = iw * sample.value + wx * val
    else:
        val = (sample.derivative - wx * sample.value) / iw
        der = iw * sample.value - wx * val
    return SolutionSample(sample.x, val, der)
