"""Confluent hypergeometric machinery for complex arguments.

Everything the closed-form solutions need: the Kummer function
1F1(a, b; z) for complex ``a``/``z`` and real ``b``, its derivative, the
Kummer transformation, a principal-branch complex log-gamma, and a
large-|z| asymptotic expansion kept solely as a cross-check path.

The primary evaluator sums the defining series.  On the physically
relevant ray (purely imaginary z) the series loses roughly
log10(e^|z|) digits to cancellation, so plain double precision is dead
by |z| ~ 30.  The evaluator therefore runs in double-double up to
``|z| = 40`` and in exact integer fixed point beyond, and refuses
|z| > ``SERIES_ZMAX`` outright — callers needing the far region must
switch to ODE propagation (see :mod:`susy_ces.oracle`).
"""
from __future__ import annotations

import cmath
import csv
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import (ArgumentTooSmall, InvalidParams, NonConvergence,
                     PoleAtNonPositiveInteger, SeriesRangeExceeded)
from .highprec import chf_series_dd, chf_series_fixed

#: refusal bound for the series evaluator.  At |z| = 60 the cancellation
#: ratio reaches ~1e26, which the fixed-point ladder absorbs with tens of
#: digits to spare; past it the contract sends callers to ODE propagation.
SERIES_ZMAX = 60.0

#: largest |z| handled by the vectorised double-double path (~32 digits);
#: beyond it each point falls back to the scalar fixed-point ladder.
_DD_ZMAX = 40.0

_GOLDEN_ENV = "SUSY_CES_GOLDEN_DIR"


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0.0 and float(x).is_integer()


@dataclass(frozen=True)
class CHFParams:
    """Parameters (a, b) of 1F1(a, b; z); ``b`` must avoid the poles at 0, -1, -2, ..."""

    a: complex
    b: float

    def __post_init__(self):
        a = complex(self.a)
        b = float(self.b)
        if not (cmath.isfinite(a) and math.isfinite(b)):
            raise InvalidParams(f"non-finite CHF parameters a={self.a!r}, b={self.b!r}")
        if _is_nonpositive_integer(b):
            raise InvalidParams(f"b={b} is a non-positive integer (series pole)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class SeriesConfig:
    """Tuning knobs for the series evaluator.

    ``kummer_threshold``: the transformation 1F1(a,b;z) =
    e^z 1F1(b-a,b;-z) is applied whenever re(z) < kummer_threshold, which
    moves decaying-exponential arguments to the well-conditioned side.
    Use -inf to disable, +inf to force.
    """

    rel_tol: float = 1e-14
    max_terms: int = 10000
    kummer_threshold: float = 0.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and math.isfinite(self.rel_tol)):
            raise InvalidParams(f"rel_tol={self.rel_tol!r} must be a positive finite real")
        if self.max_terms < 1:
            raise InvalidParams(f"max_terms={self.max_terms!r} must be >= 1")


_DEFAULT_CFG = SeriesConfig()


def _series(a: complex, b: float, z: np.ndarray, cfg: SeriesConfig) -> np.ndarray:
    """Direct series over a flat complex array, routed by magnitude."""
    out = np.empty(z.shape, dtype=complex)
    az = np.abs(z)
    small = az <= _DD_ZMAX
    if np.any(small):
        out[small] = chf_series_dd(a, b, z[small], rel_tol=cfg.rel_tol,
                                   max_terms=cfg.max_terms)
    if not np.all(small):
        for i in np.flatnonzero(~small):
            out[i] = chf_series_fixed(a, b, complex(z[i]))
    return out


def _validate_z(z) -> tuple[np.ndarray, bool]:
    zarr = np.asarray(z, dtype=complex)
    scalar = zarr.ndim == 0
    zf = np.atleast_1d(zarr)
    if not np.all(np.isfinite(zf)):
        raise InvalidParams("z contains non-finite values")
    if np.any(np.abs(zf) > SERIES_ZMAX):
        raise SeriesRangeExceeded(
            f"max|z| = {float(np.max(np.abs(zf))):.4g} exceeds the series bound "
            f"{SERIES_ZMAX:g}; use ODE propagation for the far region")
    return zf if scalar else zf.reshape(zarr.shape), scalar


def chf_1f1(p: CHFParams, z, cfg: SeriesConfig | None = None):
    """Kummer's function 1F1(a, b; z) for complex a, z and real b.

    Accepts a complex scalar or ndarray ``z`` with |z| <= SERIES_ZMAX.
    Arguments with re(z) below ``cfg.kummer_threshold`` are evaluated
    through the Kummer transformation for conditioning.

    Raises
    ------
    SeriesRangeExceeded
        if any |z| exceeds the series viability bound.
    NonConvergence
        if the series fails to meet its tolerance within the term budget.
    """
    cfg = cfg or _DEFAULT_CFG
    zn, scalar = _validate_z(z)
    zf = np.atleast_1d(zn).ravel()
    out = np.empty(zf.shape, dtype=complex)
    transform = zf.real < cfg.kummer_threshold
    if np.any(~transform):
        out[~transform] = _series(p.a, p.b, zf[~transform], cfg)
    if np.any(transform):
        zt = zf[transform]
        out[transform] = np.exp(zt) * _series(p.b - p.a, p.b, -zt, cfg)
    if not np.all(np.isfinite(out)):
        raise NonConvergence(f"series produced non-finite values for a={p.a!r}, b={p.b!r}")
    if scalar:
        return complex(out[0])
    return out.reshape(np.asarray(z).shape)


def kummer_transform(p: CHFParams, z, cfg: SeriesConfig | None = None):
    """Evaluate 1F1(a, b; z) as e^z 1F1(b-a, b; -z).

    Always takes the transformed route, regardless of configuration, so
    it provides a genuinely independent value to compare against
    :func:`chf_1f1` wherever that one sums directly.
    """
    cfg = cfg or _DEFAULT_CFG
    zn, scalar = _validate_z(z)
    zf = np.atleast_1d(zn).ravel()
    out = np.exp(zf) * _series(p.b - p.a, p.b, -zf, cfg)
    if not np.all(np.isfinite(out)):
        raise NonConvergence(f"transformed series produced non-finite values for a={p.a!r}")
    if scalar:
        return complex(out[0])
    return out.reshape(np.asarray(z).shape)


def chf_1f1_deriv(p: CHFParams, z, cfg: SeriesConfig | None = None):
    """d/dz 1F1(a, b; z) = (a/b) 1F1(a+1, b+1; z)."""
    if p.a == 0:
        zn, scalar = _validate_z(z)
        return 0j if scalar else np.zeros(np.asarray(z).shape, dtype=complex)
    shifted = CHFParams(p.a + 1, p.b + 1)
    val = chf_1f1(shifted, z, cfg)
    return (p.a / p.b) * val


# ---------------------------------------------------------------------------
# complex log-gamma (Stirling class)

# Bernoulli numbers B_2 .. B_20 for the Stirling tail
_BERNOULLI = (
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0,
)
_LOG_2PI = math.log(2.0 * math.pi)
_STIRLING_RADIUS = 12.0


def _stirling(w: complex) -> complex:
    # requires |w| >= _STIRLING_RADIUS and re(w) > 0
    s = (w - 0.5) * cmath.log(w) - w + 0.5 * _LOG_2PI
    w2 = w * w
    p = w
    for j, b2j in enumerate(_BERNOULLI, start=1):
        s += b2j / (2 * j * (2 * j - 1)) / p
        p *= w2
    return s


def _logsinpi(z: complex) -> complex:
    """A logarithm of sin(pi z), overflow-safe, continuous off the real axis."""
    if z.imag >= 0:
        # sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z})
        return (1j * math.pi / 2 - math.log(2.0) - 1j * math.pi * z
                + cmath.log(1.0 - cmath.exp(2j * math.pi * z)))
    return (-1j * math.pi / 2 - math.log(2.0) + 1j * math.pi * z
            + cmath.log(1.0 - cmath.exp(-2j * math.pi * z)))


def log_gamma(z) -> complex:
    """Principal-branch log Gamma(z) for complex z.

    Stirling's series after an upward shift to |z| >= 12, with the
    reflection formula for re(z) < 1/2.  Relative accuracy is better than
    1e-12 for |z| <= 100 (in practice near machine precision).

    Raises
    ------
    PoleAtNonPositiveInteger
        at z = 0, -1, -2, ...
    """
    z = complex(z)
    if not cmath.isfinite(z):
        raise InvalidParams(f"non-finite argument {z!r}")
    if z.imag == 0.0 and _is_nonpositive_integer(z.real):
        raise PoleAtNonPositiveInteger(f"log_gamma pole at z={z.real}")
    if z.real < 0.5:
        return math.log(math.pi) - _logsinpi(z) - log_gamma(1.0 - z)
    w = z
    acc = 0j
    while abs(w) < _STIRLING_RADIUS:
        acc += cmath.log(w)
        w += 1.0
    return _stirling(w) - acc


def _rgamma_is_zero(z: complex) -> bool:
    # 1/Gamma vanishes exactly at the poles of Gamma
    return z.imag == 0.0 and _is_nonpositive_integer(z.real)


class AsymptoticResult(NamedTuple):
    """Truncated asymptotic value plus an absolute error estimate."""

    value: complex
    error_estimate: float


def chf_asymptotic(p: CHFParams, z: complex, *, min_abs_z: float = 25.0) -> AsymptoticResult:
    """Large-|z| two-branch expansion of 1F1(a, b; z), cross-check only.

    Sums both formal series to their optimal truncation.  The recessive
    z^{-a} branch carries the factor e^{+i pi a} for arg z > -pi/2 and
    e^{-i pi a} otherwise (the boundary ray arg z = -pi/2 belongs to the
    lower sector).  Never used by the primary evaluator: its role is to
    corroborate series and ODE values in the overlap region.

    Raises
    ------
    ArgumentTooSmall
        if |z| < min_abs_z, where optimal truncation is too loose.
    """
    z = complex(z)
    if abs(z) < min_abs_z:
        raise ArgumentTooSmall(f"|z| = {abs(z):.4g} < {min_abs_z:g}")
    a, b = p.a, p.b

    def opt_sum(p1: complex, p2: complex, zz: complex) -> tuple[complex, float]:
        t = 1.0 + 0j
        s = t
        best = abs(t)
        for k in range(2 * int(abs(zz)) + 30):
            t = t * (p1 + k) * (p2 + k) / ((k + 1) * zz)
            if abs(t) >= best:
                break
            s += t
            best = abs(t)
        return s, best

    sgn = 1.0 if cmath.phase(z) > -math.pi / 2 else -1.0
    logz = cmath.log(z)
    value = 0j
    err = 0.0
    if not _rgamma_is_zero(b - a):
        s1, e1 = opt_sum(a, a - b + 1.0, -z)
        c1 = cmath.exp(log_gamma(b) - log_gamma(b - a) + sgn * 1j * math.pi * a - a * logz)
        value += c1 * s1
        err += abs(c1) * (e1 + 16 * np.finfo(float).eps * abs(s1))
    if not _rgamma_is_zero(a):
        s2, e2 = opt_sum(b - a, 1.0 - a, z)
        c2 = cmath.exp(log_gamma(b) - log_gamma(a) + z + (a - b) * logz)
        value += c2 * s2
        err += abs(c2) * (e2 + 16 * np.finfo(float).eps * abs(s2))
    return AsymptoticResult(value, err)


# ---------------------------------------------------------------------------
# golden reference table


class GoldenRow(NamedTuple):
    a: complex
    b: float
    z: complex
    f: complex


def golden_dir() -> Path:
    """Directory holding the golden reference tables.

    Defaults to the ``golden/`` data directory shipped with the package;
    the environment variable ``SUSY_CES_GOLDEN_DIR`` overrides it.
    """
    env = os.environ.get(_GOLDEN_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("susy_ces") / "golden"))


def load_golden_chf(path: Path | None = None) -> list[GoldenRow]:
    """Read the frozen 1F1 reference values (columns a_re,a_im,b,z_re,z_im,f_re,f_im)."""
    path = path or golden_dir() / "chf.csv"
    rows = []
    with open(path, newline="") as fh:
        for rec in csv.DictReader(fh):
            rows.append(GoldenRow(
                a=complex(float(rec["a_re"]), float(rec["a_im"])),
                b=float(rec["b"]),
                z=complex(float(rec["z_re"]), float(rec["z_im"])),
                f=complex(float(rec["f_re"]), float(rec["f_im"])),
            ))
    if not rows:
        raise InvalidParams(f"golden table {path} is empty")
    return rows
