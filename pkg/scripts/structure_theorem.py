#!/usr/bin/env python3
"""Compare computed homology with the canonical-coloring degree prediction.

For each link the ordered-pair and unordered-pair readings of the degree
sum are both shown; ``reading`` names the one that agrees with the
computation.
"""

import argparse
import json

from foamcalc import fixtures
from foamcalc.analysis import verify_structure
from foamcalc.coeff import parse_gauss_rat

DEFAULT = ["unknot", "unlink2", "hopf", "trefoil", "figure8", "whitehead_like", "hopf_r2", "torus_2_8"]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("names", nargs="*", default=DEFAULT)
    p.add_argument("--a", default="1")
    p.add_argument("--h", default="0")
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    a, h = parse_gauss_rat(args.a), parse_gauss_rat(args.h)
    for name in args.names:
        rep = verify_structure(fixtures.get(name), a, h)
        if args.json:
            print(json.dumps({"name": name, **rep.to_json()}, sort_keys=True))
        else:
            print(
                f"{name:16s} n={rep.n} dim={rep.total_dim} computed={list(rep.computed)} "
                f"ordered={list(rep.predicted)} unordered={list(rep.predicted_unordered)} "
                f"reading={rep.reading} pass={rep.passed}"
            )


if __name__ == "__main__":
    main()
