#!/usr/bin/env python3
"""Print homology and Euler characteristic for every fixture diagram."""

import argparse
import time

from foamcalc import fixtures
from foamcalc.complex import build_complex, euler_characteristic, homology
from foamcalc.skein import p2


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", default="0")
    p.add_argument("--h", default="0")
    p.add_argument("--max-crossings", type=int, default=8)
    p.add_argument("--threads", type=int)
    args = p.parse_args()

    from foamcalc.coeff import parse_gauss_rat

    a, h = parse_gauss_rat(args.a), parse_gauss_rat(args.h)
    for name in fixtures.DIAGRAMS:
        d = fixtures.get(name)
        if d.n_crossings > args.max_crossings:
            continue
        t0 = time.perf_counter()
        cx = build_complex(d, threads=args.threads)
        chi = euler_characteristic(cx)
        table = homology(cx, a, h)
        dt = time.perf_counter() - t0
        flag = "" if chi == p2(d) else "  (chi != p2!)"
        print(f"{name:16s} c={d.n_crossings} dim={table.total_dim():3d} {dt:5.2f}s  chi={chi.render_terms()}{flag}")
        print(f"{'':16s} {table.poincare}")


if __name__ == "__main__":
    main()
