"""Computed cond next to every lower bound along the family (N, N/2, N/4), in log10."""

from fouriersub.bounds import bound_report

print(f"{'N':>5} {'cond':>9}  lower bounds")
for N in (16, 32, 64, 128, 256):
    r = bound_report(N, N // 2, N // 4).to_dict()
    cond = r["cond_computed_log10"]
    lbs = {k[3:-6]: v for k, v in r.items() if k.startswith("lb_") and k.endswith("_log10") and v is not None}
    shown = "overflow" if cond is None else f"{cond:.3f}"
    print(f"{N:>5} {shown:>9}  " + "  ".join(f"{k}={v:.2f}" for k, v in lbs.items()))
