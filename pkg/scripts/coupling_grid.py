#!/usr/bin/env python3
"""Two-dimensional map of log10 g2(0) over drive detuning and dispersive coupling.

The g2 = 1 level set separates the bunched and antibunched regions; the CSV
carries log10_g2 per grid point so a contour plot is a direct pivot of the
output.  A 201 x 201 grid takes a few minutes single-threaded; use --workers.
"""

import argparse
from pathlib import Path

from magnonsim import AxisSpec, SystemParams, run_sweep, write_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results", help="output directory")
    parser.add_argument("--detuning-points", type=int, default=201)
    parser.add_argument("--coupling-points", type=int, default=201)
    parser.add_argument("--detuning-span", type=float, default=60.0)
    parser.add_argument("--coupling-max", type=float, default=50.0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--plot", action="store_true", help="also render a PNG contour map")
    args = parser.parse_args()

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    base = SystemParams()
    axes = [
        AxisSpec("delta_m", -args.detuning_span, args.detuning_span, args.detuning_points),
        AxisSpec("chi_qm", 0.0, args.coupling_max, args.coupling_points),
    ]
    sweep = run_sweep(base, axes, workers=args.workers)
    path = out_dir / "g2_grid_detuning_coupling.csv"
    write_csv(sweep, path)
    print(f"{len(sweep.records)} grid points -> {path}")

    if args.plot:
        import matplotlib
        import numpy as np

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        shape = (args.detuning_points, args.coupling_points)
        log_g2 = np.array(
            [r.log10_g2 if r.log10_g2 is not None else np.nan for r in sweep.records]
        ).reshape(shape)
        detuning = np.linspace(-args.detuning_span, args.detuning_span, args.detuning_points)
        coupling = np.linspace(0.0, args.coupling_max, args.coupling_points)
        fig, ax = plt.subplots(figsize=(6.5, 5))
        mesh = ax.pcolormesh(detuning, coupling, log_g2.T, shading="auto", cmap="RdBu_r",
                             vmin=-2.0, vmax=2.0)
        ax.contour(detuning, coupling, log_g2.T, levels=[0.0], colors="k", linewidths=0.8)
        fig.colorbar(mesh, ax=ax, label=r"$\log_{10} g^{(2)}(0)$")
        ax.set_xlabel(r"drive detuning $\Delta_m/\gamma$")
        ax.set_ylabel(r"dispersive coupling $\chi_{qm}/\gamma$")
        fig.tight_layout()
        png = out_dir / "g2_grid_detuning_coupling.png"
        fig.savefig(png, dpi=160)
        print(f"plot -> {png}")


if __name__ == "__main__":
    main()
