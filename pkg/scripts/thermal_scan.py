#!/usr/bin/env python3
"""Thermal-noise robustness of the antibunching point.

Sweeps g2(0) against the magnon and qubit thermal occupations at the
blockade operating point, bisects the g2 = 1 crossing on each channel, and
converts the magnon-channel crossing to an equivalent temperature.
"""

import argparse
from pathlib import Path

from magnonsim import (
    AxisSpec,
    SystemParams,
    run_sweep,
    temperature_for_occupation,
    thermal_threshold,
    write_csv,
)

TWO_PI = 6.283185307179586


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--points", type=int, default=121)
    parser.add_argument("--m-th-max", type=float, default=0.05)
    parser.add_argument("--n-th-max", type=float, default=20.0)
    parser.add_argument("--omega-m", type=float, default=8500.0,
                        help="magnon frequency in units of gamma (for the temperature conversion)")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    base = SystemParams()  # blockade point: chi_qm = 20, delta_m = 0

    for channel, top in (("m_th", args.m_th_max), ("n_th", args.n_th_max)):
        sweep = run_sweep(base, [AxisSpec(channel, 0.0, top, args.points)], workers=args.workers)
        path = out_dir / f"g2_vs_{channel}.csv"
        write_csv(sweep, path)
        print(f"{channel} cut -> {path}")

        threshold = thermal_threshold(base, channel, hi=top)
        line = (
            f"{channel}: g2 = 1 at occupation {threshold.crossing:.5g} "
            f"({threshold.iterations} bisection steps)"
        )
        if channel == "m_th":
            freq_hz = args.omega_m * base.gamma_ref_hz / TWO_PI
            kelvin = temperature_for_occupation(freq_hz, threshold.crossing)
            line += f", equivalent temperature {1e3 * kelvin:.1f} mK at {freq_hz / 1e9:.2f} GHz"
        print(line)


if __name__ == "__main__":
    main()
