#!/usr/bin/env python3
"""Regenerate the frozen confluent-hypergeometric reference table.

Values are produced by the exact integer fixed-point series
(``chf_series_fixed`` at 500 bits, ~150 decimal digits of working
precision), which shares no code path with the double-double evaluator
under test.  Two independent checks gate the output:

* the contiguous relation M(a,b;z) - M(a-1,b;z) = (z/b) M(a,b+1;z),
  evaluated from three separate fixed-point runs;
* a cross-check against mpmath at 50 digits, when mpmath is importable
  (development convenience only -- not a package dependency).

Run from the repository root:

    python3 scripts/make_golden.py
"""
from __future__ import annotations

import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from susy_ces.highprec import chf_series_fixed  # noqa: E402

BITS = 500
STOP = 220

# (a, b, z) triples: the solution families at assorted (m, omega), both
# imaginary-axis signs, the transformed (re z < 0) side, real arguments,
# and generic parameters with non-representable real parts.
ROWS = [
    (0.5j, 0.5, -2j),
    (0.5j, 0.5, -4j),
    (1 + 0.5j, 1.5, -4j),
    (0.5 + 0.5j, 1.5, -4j),
    (0.5 + 0.5j, 0.5, -4j),
    (1 + 1j, 2.5, -5j),
    (1 + 1j, 1.5, -1j),
    (0.5j, 0.5, -40j),
    (0.5 + 0.5j, 1.5, -40j),
    (0.5j, 0.5, -59j),
    (0.5j, 0.5, 40j),
    (2j, 0.5, 55j),
    (0.5 + 0.5j, 1.5, -15 + 5j),
    (1 + 1j, 2.5, -30 - 30j),
    (0.5j, 0.5, 7.0),
    (-0.3 + 0.2j, 0.5, -12.0),
    (0.7 + 0.3j, 1.2, 10 - 3j),
    (2j, 0.5, -55j),
    (0.25j, 0.5, -10j),
    (0.5 + 0.25j, 1.5, -10j),
    (1j, 0.5, -20j),
    (0.5 + 1j, 0.5, -20j),
    (1e-3j, 0.5, -3j),
    (0.5j, 0.5, 0.0),
]

# spot-check triples for the contiguous relation
CONTIG = [
    (0.5 + 0.5j, 0.5, -4j),
    (1 + 1j, 1.5, -25j),
    (0.7 + 0.3j, 1.2, 10 - 3j),
    (2j, 0.5, 40j),
]


def hp(a, b, z):
    return chf_series_fixed(complex(a), float(b), complex(z),
                            bits=BITS, stop_bits=STOP, max_terms=40000)


def main() -> int:
    for a, b, z in CONTIG:
        lhs = hp(a, b, z) - hp(a - 1, b, z)
        rhs = (z / b) * hp(a, b + 1, z)
        scale = max(abs(hp(a, b, z)), abs(rhs), 1.0)
        rel = abs(lhs - rhs) / scale
        assert rel < 1e-13, f"contiguous relation violated at {(a, b, z)}: {rel:.3e}"
    print(f"contiguous relation ok on {len(CONTIG)} triples")

    try:
        import mpmath as mp
    except ImportError:
        mp = None
        print("mpmath not available; skipping cross-check")

    lines = ["a_re,a_im,b,z_re,z_im,f_re,f_im"]
    worst = 0.0
    for a, b, z in ROWS:
        f = hp(a, b, z)
        if mp is not None:
            mp.mp.dps = 50
            r = complex(mp.hyp1f1(mp.mpc(a), mp.mpf(b), mp.mpc(z)))
            rel = abs(f - r) / max(1.0, abs(r))
            worst = max(worst, rel)
            assert rel < 1e-14, f"mpmath disagrees at {(a, b, z)}: {rel:.3e}"
        a, z = complex(a), complex(z)
        lines.append(",".join("%.17g" % v for v in
                              (a.real, a.imag, float(b), z.real, z.imag, f.real, f.imag)))
    if mp is not None:
        print(f"mpmath cross-check ok, worst rel diff {worst:.3e}")

    out = ROOT / "src" / "susy_ces" / "golden" / "chf.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(ROWS)} rows -> {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
