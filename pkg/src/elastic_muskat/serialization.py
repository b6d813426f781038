"""CSV and JSON output.

All numbers are written in decimal with 17 significant digits so that
round-tripping through text is exact for doubles and reruns are
byte-identical.
"""

import csv
import json
import os

import numpy as np

from .grid import Field, PeriodicGrid, Spectrum


def fmt(x) -> str:
    return format(float(x), ".17g")


def write_field_csv(path, f: Field):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "value"])
        for x, v in zip(f.grid.nodes, f.values):
            w.writerow([fmt(x), fmt(v)])


def read_field_csv(path, grid: PeriodicGrid) -> Field:
    vals = []
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        next(r)
        for row in r:
            vals.append(float(row[1]))
    return Field(grid, np.asarray(vals))


def write_spectrum_csv(path, s: Spectrum):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "re", "im"])
        for k, c in zip(s.grid.wavenumbers, s.coeffs):
            w.writerow([fmt(k), fmt(c.real), fmt(c.imag)])


def write_extension_csv(path, state, grid: PeriodicGrid):
    """ExtensionState: columns x, z, v over the vertical-by-horizontal grid."""
    xs = grid.nodes
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "z", "v"])
        for i, z in enumerate(state.zgrid.levels):
            for j, x in enumerate(xs):
                w.writerow([fmt(x), fmt(z), fmt(state.v[i, j])])


def write_report_csv(path, rows):
    """Verification report: (check, expected, measured, tolerance, pass)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["check", "expected", "measured", "tolerance", "pass"])
        for r in rows:
            w.writerow([r["check"], fmt(r["expected"]), fmt(r["measured"]),
                        fmt(r["tolerance"]), "true" if r["passed"] else "false"])


def write_trajectory(outdir, traj, config: dict, version: str,
                     stride: int = 1):
    os.makedirs(outdir, exist_ok=True)
    manifest = {"config": config, "version": version}
    manifest.update({k: v for k, v in traj.manifest.items()})
    with open(os.path.join(outdir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    keys = list(traj.monitors[0].keys())
    with open(os.path.join(outdir, "monitors.csv"), "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(keys)
        for mon in traj.monitors:
            w.writerow([fmt(mon[k]) if np.isfinite(mon[k]) else "inf"
                        for k in keys])
    for i in range(0, len(traj.states), stride):
        write_field_csv(os.path.join(outdir, "state_%06d.csv" % i),
                        traj.states[i])
