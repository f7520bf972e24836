#!/usr/bin/env python3
"""Time cube build, simplification and homology on the larger fixtures."""

import argparse
import time

from foamcalc import fixtures
from foamcalc.complex import build_complex, homology, homology_bruteforce, simplify


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("names", nargs="*", default=["torus_2_5", "knot_8_18", "torus_2_8", "torus_3_4"])
    p.add_argument("--threads", type=int, nargs="+", default=[1, 4])
    p.add_argument("--brute", action="store_true", help="also time the unsimplified rank computation")
    args = p.parse_args()
    for name in args.names:
        d = fixtures.get(name)
        builds = {t: timed(build_complex, d, threads=t) for t in args.threads}
        (cx, _), *rest = builds.values()
        same = all(c.groups == cx.groups and c.diffs == cx.diffs for c, _ in rest)
        s, t_simp = timed(simplify, cx)
        table, t_hom = timed(homology, s, 0, 0)
        build_s = " ".join(f"t{t}={dt:.2f}s" for t, (_, dt) in builds.items())
        line = (
            f"{name:12s} gens={cx.n_generators():5d} -> {s.n_generators():4d}  build {build_s}  "
            f"simplify {t_simp:.2f}s  homology {t_hom:.2f}s  dim={table.total_dim()}  deterministic={same}"
        )
        if args.brute:
            _, t_b = timed(homology_bruteforce, cx, 0, 0)
            line += f"  brute {t_b:.2f}s"
        print(line)


if __name__ == "__main__":
    main()
