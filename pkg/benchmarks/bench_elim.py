"""Compare the compiled and pure-Python integer elimination backends.

    python3 benchmarks/bench_elim.py [--repeat N] [--seed S]

Each workload is reduced by both backends; the results must agree, and the
best of ``--repeat`` wall-clock timings is reported.  The ``int64`` column
says whether the compiled kernel finished without overflowing; when it did
not, the compiled timing includes the failed attempt plus the fallback.
"""

import argparse
import math
import random
import time

from hlts.exact import elim


def sparse_rows(rng, nrows, ncols, density, lo=-3, hi=3):
    return [[rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(ncols)]
            for _ in range(nrows)]


def low_rank_rows(rng, nrows, ncols, rank):
    basis = sparse_rows(rng, rank, ncols, 0.5)
    return [[sum(c * b[j] for c, b in zip(coef, basis)) for j in range(ncols)]
            for coef in ([rng.randint(-2, 2) for _ in range(rank)] for _ in range(nrows))]


def coboundary_rows(op, degree):
    """Integer rows of the coboundary matrix of ``op`` on its cochain space."""
    from hlts.cohomology import Coboundary, cochain_space_basis

    d = Coboundary(op)
    rows = []
    for f in cochain_space_basis(op, degree):
        flat = d(f.tensor).flat()
        den = math.lcm(*(x.denominator for x in flat))
        rows.append([int(x * den) for x in flat])
    return rows, len(rows[0])


def fits(rows, ncols):
    try:
        elim._elim_c.rref_int(rows, ncols)
    except OverflowError:
        return False
    return True


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    workloads = [
        ("sparse 60x60", sparse_rows(rng, 60, 60, 0.15), 60),
        ("sparse 200x120", sparse_rows(rng, 200, 120, 0.05), 120),
        ("dense 40x40", sparse_rows(rng, 40, 40, 1.0), 40),
        ("rank 20, 300x80", low_rank_rows(rng, 300, 80, 20), 80),
    ]
    for k in range(3):
        workloads.append((f"sparse 40x40 #{k}", sparse_rows(rng, 40, 40, 0.06, -1, 1), 40))
    from hlts.samples import e4_operator

    for degree in (1, 2):
        rows, ncols = coboundary_rows(e4_operator(1), degree)
        workloads.append((f"coboundary deg {degree} {len(rows)}x{ncols}", rows, ncols))

    compiled = elim._elim_c is not None
    print(f"compiled kernel available: {compiled}")
    print(f"{'workload':<28}{'rank':>6}{'python s':>12}{'compiled s':>12}{'speedup':>9}{'int64':>7}")
    for name, rows, ncols in workloads:
        tp, (basis_p, piv_p) = best_time(lambda: elim.rref_int(rows, ncols, "python"), args.repeat)
        if compiled:
            tc, (basis_c, piv_c) = best_time(lambda: elim.rref_int(rows, ncols, "compiled"), args.repeat)
            if (basis_c, piv_c) != (basis_p, piv_p):
                raise SystemExit(f"backends disagree on {name}")
            print(f"{name:<28}{len(piv_p):>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>8.1f}x"
                  f"{'yes' if fits(rows, ncols) else 'no':>7}")
        else:
            print(f"{name:<28}{len(piv_p):>6}{tp:>12.4f}{'-':>12}{'-':>9}{'-':>7}")


if __name__ == "__main__":
    main()
