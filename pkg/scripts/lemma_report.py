"""Write the sinc-sum lemma evaluations as CSV and print the tightest ratio per lemma."""

import sys

from fouriersub.sincsums import lemma_grid, lemma_report_csv, verify_lemma_bounds

checks = verify_lemma_bounds(lemma_grid())
out = sys.argv[1] if len(sys.argv) > 1 else "lemma_report.csv"
with open(out, "w") as fh:
    fh.write(lemma_report_csv(checks))
for lid in sorted({c.lemma_id for c in checks}):
    worst = max(c.ratio for c in checks if c.lemma_id == lid)
    print(f"{lid:10s} max observed/bound {worst:.4f}")
print(f"{sum(not c.ok for c in checks)} violations; wrote {out}")
