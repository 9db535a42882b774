"""Measure the rate maps (full 1/30 grid and 1/50 corner zoom) and print summary stats.

    python3 scripts/run_grids.py --out results/
"""

import argparse
from pathlib import Path

from fouriersub.empirics import default_threads, grid_csv, rate_grid


def summarize(name, cells):
    meas = [c for c in cells if c.measurable]
    ratios = [c.ratio for c in meas]
    below = sum(c.accuracy_est is not None and c.ratio < 1 - c.accuracy_est for c in meas)
    print(f"{name}: {len(meas)}/{len(cells)} measurable, "
          f"ratio<1.2 on {sum(r < 1.2 for r in ratios) / len(meas):.3f}, "
          f"ratio range [{min(ratios):.3f}, {max(ratios):.3f}], {below} below 1-acc")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results"))
    ap.add_argument("--threads", type=int, default=default_threads())
    ap.add_argument("--max-N", type=int, default=1 << 13)
    a = ap.parse_args()
    a.out.mkdir(parents=True, exist_ok=True)
    for d, region in ((30, "full"), (50, "corner")):
        cells = rate_grid(d, region, a.threads, max_N=a.max_N)
        (a.out / f"rates_{region}_1-{d}.csv").write_text(grid_csv(cells))
        summarize(f"{region} 1/{d}", cells)


if __name__ == "__main__":
    main()
