"""Print the near-symmetry defect max|log cond(p,q) - log cond(N-p,N-q)| per N."""

import sys

from fouriersub.symmetry import near_symmetry_map


def main(Ns=(8, 16, 32, 64)):
    print(f"{'N':>4} {'max defect':>12} {'max log10 cond':>15}")
    for N in Ns:
        cells = near_symmetry_map(N)
        defects = [c.delta_inversion for c in cells if c.delta_inversion is not None]
        print(f"{N:>4} {max(defects):12.4f} {max(c.cond_log10 for c in cells):15.2f}")


if __name__ == "__main__":
    main(tuple(int(x) for x in sys.argv[1:]) or (8, 16, 32, 64))
