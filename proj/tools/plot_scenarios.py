#!/usr/bin/env python3
"""Render quick-look figures from nhqsim scenario output directories.

Usage: plot_scenarios.py <scenario-dir> [...]

Recognizes the files written by `nhqsim reproduce` (map.csv, trace and
fidelity tables, spectrum sweeps) and drops PNGs next to them. Purely a
convenience viewer; all quantitative checks live in the manifests.
"""
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load(path):
    data = np.genfromtxt(path, delimiter=",", names=True)
    return data


def plot_map(path):
    d = load(path)
    times = np.unique(d["time"])
    couplings = np.unique(d["coupling"])
    tau = d["tau123"].reshape(len(times), len(couplings))
    fig, ax = plt.subplots(figsize=(6, 4))
    mesh = ax.pcolormesh(times, couplings, tau.T, shading="nearest", cmap="magma")
    ax.set_yscale("log")
    ax.set_xlabel("t (us)")
    ax.set_ylabel("J (rad/us)")
    fig.colorbar(mesh, label="three-tangle")
    out = path.with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def plot_traces(path):
    d = load(path)
    abs_cols = [n for n in d.dtype.names if n.startswith("abs_")]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 5), sharex=True)
    for name in abs_cols:
        label = name[4:]
        top.plot(d["time"], d[name], lw=0.8, label=label)
        bottom.plot(d["time"], d["arg_" + label], lw=0.8)
    top.set_ylabel("|amplitude|")
    bottom.set_ylabel("phase (rad)")
    bottom.set_xlabel("t (us)")
    if len(abs_cols) <= 8:
        top.legend(fontsize=6, ncol=4)
    out = path.with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def plot_columns(path, prefix, ylabel):
    d = load(path)
    cols = [n for n in d.dtype.names if n.startswith(prefix)]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for name in cols:
        ax.plot(d["time"], d[name], lw=0.9, label=name)
    ax.set_xlabel("t (us)")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=7)
    out = path.with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


def plot_spectrum(path):
    d = load(path)
    param = d.dtype.names[0]
    re_cols = [n for n in d.dtype.names if n.endswith("_re")]
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 5), sharex=True)
    for name in re_cols:
        stem = name[:-3]
        top.plot(d[param], d[name], ".", ms=1.5)
        bottom.plot(d[param], d[stem + "_im"], ".", ms=1.5)
    top.set_ylabel("Re E (rad/us)")
    bottom.set_ylabel("Im E (rad/us)")
    bottom.set_xlabel(param)
    out = path.with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


HANDLERS = [
    ("map.csv", plot_map),
    ("traces_", plot_traces),
    ("trajectory.csv", plot_traces),
    ("fourqubit_", lambda p: plot_columns(p, "S_", "entropy (nats)")),
    ("fidelities", lambda p: plot_columns(p, "fid_", "fidelity")),
    ("spectrum_", plot_spectrum),
]


def main(argv):
    if len(argv) < 2:
        print(__doc__)
        return 1
    for arg in argv[1:]:
        root = Path(arg)
        for path in sorted(root.rglob("*.csv")):
            for key, handler in HANDLERS:
                if path.name.startswith(key) or path.name == key:
                    try:
                        print("wrote", handler(path))
                    except Exception as err:  # keep going over partial dirs
                        print(f"skipping {path}: {err}", file=sys.stderr)
                    break
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
