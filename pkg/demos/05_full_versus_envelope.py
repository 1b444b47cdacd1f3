"""Full Euler solver against the envelope model, through the command line.

Runs the ``compare`` subcommand for a short span, then reads the series
CSV back and summarises the relative L2 error and the conserved quantities.
The reference-scale run is ``shearwaves compare --gamma -2 --k0 10 --B0 0.002
--t-end 1000 --out out/g-2`` and takes about a quarter of an hour.
"""

import tempfile
from pathlib import Path

import numpy as np

from shearwaves.harness.cli import main as cli
from shearwaves.harness.io import read_series


def main():
    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp) / "g-2"
        cli(["compare", "--gamma", "-2", "--k0", "10", "--B0", "0.002", "--t-end", "50", "--output-interval", "10", "--out", str(out)])
        d = read_series(out / "compare_series.csv")
        print("\n   t    l2_rel_err   max_eta")
        for t, e, m in zip(d["t"], d["l2_rel_err"], d["max_eta"]):
            print(f"{t:5g}  {e:11.4e}  {m:.5e}")
        for key in ("H_full", "I", "M", "H_reduced"):
            v = d[key]
            print(f"relative drift of {key}: {np.max(np.abs(v - v[0])) / abs(v[0]):.1e}")


if __name__ == "__main__":
    main()
