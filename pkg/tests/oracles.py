"""Independent Khovanov-style cube over Q for cross-checking homology ranks.

No twists, no vertex units, plain (-1)^{#earlier 1s} signs and dense
Fraction elimination.  Gradings follow the usual convention where the
0-smoothing of a positive crossing is oriented; the foam complex places
positive crossings in degrees {-1, 0}, so ranks are compared with i -> -i.
"""

from fractions import Fraction
from itertools import product


def _circles(d, bits):
    parent = {}

    def find(e):
        while parent.setdefault(e, e) != e:
            e = parent[e]
        return e

    def union(x, y):
        parent[find(x)] = find(y)

    for k, cr in enumerate(d.crossings):
        a, b, c, dd = cr.pd
        if (bits >> k) & 1:
            union(a, dd)
            union(b, c)
        else:
            union(a, b)
            union(c, dd)
    for e in d.loops:
        find(e)
    roots = sorted({find(e) for e in parent}, key=lambda r: min(e for e in parent if find(e) == r))
    index = {r: i for i, r in enumerate(roots)}
    return len(roots), {e: index[find(e)] for e in parent}


def _mul(x, y, a, h):
    # basis 0 = 1, 1 = X ; returns {bit: coeff}
    if x == 0:
        return {y: Fraction(1)}
    if y == 0:
        return {1: Fraction(1)}
    return {1: h, 0: a}


def _comul(x, a, h):
    if x == 0:
        return {(0, 1): Fraction(1), (1, 0): Fraction(1), (0, 0): -h}
    return {(1, 1): Fraction(1), (0, 0): a}


def _rank(rows):
    rows = [dict(r) for r in rows if r]
    rk = 0
    while rows:
        piv = rows.pop()
        if not piv:
            continue
        col, val = next(iter(piv.items()))
        rk += 1
        nxt = []
        for r in rows:
            if col in r:
                f = r[col] / val
                for c2, v2 in piv.items():
                    nv = r.get(c2, 0) - f * v2
                    if nv:
                        r[c2] = nv
                    else:
                        r.pop(c2, None)
            if r:
                nxt.append(r)
        rows = nxt
    return rk


def khovanov_ranks(d, a=0, h=0):
    """Dict (i, j) -> rank when a = h = 0, else i -> dimension."""
    a, h = Fraction(a), Fraction(h)
    n = d.n_crossings
    n_plus = sum(1 for c in d.crossings if c.sign > 0)
    n_minus = n - n_plus
    # bit k set = 1-smoothing of crossing k, which joins a-d and b-c of X[a,b,c,d]
    states = {r: _circles(d, r) for r in range(1 << n)}
    gens = {}
    for r, (m, _) in states.items():
        i = bin(r).count("1") - n_minus
        for w in range(1 << m):
            ones = m - bin(w).count("1")
            j = ones - bin(w).count("1") + bin(r).count("1") + n_plus - 2 * n_minus
            gens.setdefault(i, []).append((r, w, j))
    index = {i: {(r, w): k for k, (r, w, _) in enumerate(g)} for i, g in gens.items()}

    def image(r, w, k):
        m, cmap = states[r]
        m2, cmap2 = states[r | (1 << k)]
        cr = d.crossings[k]
        ends = cr.pd
        src = sorted({cmap[e] for e in ends})
        # untouched circles keep their bits
        rest = {}
        for e, c in cmap.items():
            if c not in src:
                rest[c] = cmap2[e]
        base = 0
        for c, c2 in rest.items():
            if (w >> c) & 1:
                base |= 1 << c2
        tgt = sorted({cmap2[e] for e in ends})
        out = {}
        if len(src) == 2:
            for bit, v in _mul((w >> src[0]) & 1, (w >> src[1]) & 1, a, h).items():
                out[base | (bit << tgt[0])] = v
        else:
            for (b0, b1), v in _comul((w >> src[0]) & 1, a, h).items():
                out[base | (b0 << tgt[0]) | (b1 << tgt[1])] = v
        return out

    ranks = {}
    for i, glist in gens.items():
        if i + 1 not in gens:
            continue
        blocks = {}
        for r, w, j in glist:
            row = {}
            for k in range(n):
                if (r >> k) & 1:
                    continue
                sign = -1 if bin(r & ((1 << k) - 1)).count("1") % 2 else 1
                r2 = r | (1 << k)
                for w2, v in image(r, w, k).items():
                    col = index[i + 1][(r2, w2)]
                    row[col] = row.get(col, 0) + sign * v
            key = j if (a == 0 and h == 0) else 0
            blocks.setdefault(key, []).append({c: v for c, v in row.items() if v})
        for key, rows in blocks.items():
            ranks[(i, key)] = _rank(rows)
    out = {}
    graded = a == 0 and h == 0
    for i, glist in gens.items():
        sizes = {}
        for _, _, j in glist:
            key = j if graded else 0
            sizes[key] = sizes.get(key, 0) + 1
        for key, s in sizes.items():
            dim = s - ranks.get((i, key), 0) - ranks.get((i - 1, key), 0)
            if dim:
                k2 = (-i, key) if graded else -i
                out[k2] = out.get(k2, 0) + dim
    return out
