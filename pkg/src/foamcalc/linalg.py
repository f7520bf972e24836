"""Sparse exact elimination shared by the homology routines.

Entries are ring elements supporting ``+ - *``, truth testing, ``is_unit()``
and either ``inverse()`` (``GaussRat``) or a constant unit value
(``GaussPoly``).  Vectors and matrix columns are plain dicts ``index -> entry``
with no stored zeros.
"""

from __future__ import annotations

import heapq
from typing import Any, Callable, Dict, Iterable, List, Mapping, Tuple

from .coeff import GaussPoly, GaussRat

__all__ = ["inverse", "rank", "CancellationComplex"]


def inverse(x):
    if isinstance(x, GaussPoly):
        if not x.is_constant():
            raise ZeroDivisionError(f"{x} is not invertible in the polynomial ring")
        return GaussPoly.const(x.constant_value().inverse())
    return x.inverse()


def _unit_key(x) -> int:
    return 0 if x.is_unit() else 1


def rank(vectors: Iterable[Mapping[int, Any]]) -> int:
    """Rank of a family of sparse vectors over a field.

    Markowitz-style greedy pivoting: vectors containing a unit entry are
    used first, then the sparsest ones, which keeps fill-in and coefficient
    growth small on cube complexes.
    """
    vecs: Dict[int, Dict[int, Any]] = {}
    where: Dict[int, set] = {}
    for k, v in enumerate(vectors):
        v = {r: c for r, c in v.items() if c}
        if not v:
            continue
        vecs[k] = v
        for r in v:
            where.setdefault(r, set()).add(k)

    def prio(k):
        v = vecs[k]
        return (min(_unit_key(c) for c in v.values()), len(v), k)

    heap = [prio(k) + (0,) for k in vecs]
    heapq.heapify(heap)
    version = {k: 0 for k in vecs}
    result = 0
    while heap:
        *p, k, ver = heapq.heappop(heap)
        if k not in vecs or ver != version[k]:
            continue
        v = vecs.pop(k)
        for r in v:
            where[r].discard(k)
        piv = min(v, key=lambda r: (_unit_key(v[r]), len(where[r]), r))
        pinv = inverse(v[piv])
        for k2 in sorted(where[piv]):
            v2 = vecs[k2]
            f = v2[piv] * pinv
            for r, c in v.items():
                new = v2.get(r)
                new = -(f * c) if new is None else new - f * c
                if new:
                    if r not in v2:
                        where.setdefault(r, set()).add(k2)
                    v2[r] = new
                else:
                    v2.pop(r, None)
                    where[r].discard(k2)
            version[k2] += 1
            if v2:
                heapq.heappush(heap, prio(k2) + (version[k2],))
            else:
                del vecs[k2]
        result += 1
    return result


class CancellationComplex:
    """Mutable sparse cochain complex for Gaussian cancellation.

    ``degree[g]`` is the cohomological degree of generator g, ``out[g]`` the
    column of the differential at g and ``inc[h]`` the matching row.
    """

    def __init__(self, degree: Dict[int, int], out: Dict[int, Dict[int, Any]]):
        self.degree = dict(degree)
        self.out: Dict[int, Dict[int, Any]] = {g: {} for g in degree}
        self.inc: Dict[int, Dict[int, Any]] = {g: {} for g in degree}
        for g, col in out.items():
            for h, c in col.items():
                if c:
                    self.out[g][h] = c
                    self.inc[h][g] = c

    def _set(self, g: int, h: int, c) -> None:
        if c:
            self.out[g][h] = c
            self.inc[h][g] = c
        else:
            self.out[g].pop(h, None)
            self.inc[h].pop(g, None)

    def _remove(self, g: int) -> None:
        for f in self.inc.pop(g):
            del self.out[f][g]
        for h in self.out.pop(g):
            del self.inc[h][g]
        del self.degree[g]

    def cancel(self, g: int, h: int) -> None:
        """Cancel the invertible entry ``d[h][g]``."""
        u = self.out[g][h]
        uinv = inverse(u)
        srcs = [(g2, c) for g2, c in self.inc[h].items() if g2 != g]
        tgts = [(h2, c * uinv) for h2, c in self.out[g].items() if h2 != h]
        self._remove(g)
        self._remove(h)
        for g2, beta in srcs:
            col = self.out[g2]
            for h2, gu in tgts:
                old = col.get(h2)
                self._set(g2, h2, -(gu * beta) if old is None else old - gu * beta)

    def reduce(self, can_cancel: Callable[[Any], bool], order: List[int]) -> int:
        """Greedily cancel entries allowed by ``can_cancel``; returns the count."""
        done = 0
        changed = True
        while changed:
            changed = False
            for g in order:
                while g in self.out and self.out[g]:
                    col = self.out[g]
                    cands = [h for h, c in col.items() if can_cancel(c)]
                    if not cands:
                        break
                    h = min(cands, key=lambda h: (_unit_key(col[h]), len(self.inc[h]), h))
                    self.cancel(g, h)
                    done += 1
                    changed = True
        return done

    def alive(self) -> List[int]:
        return sorted(self.degree)

    def entries(self) -> List[Tuple[int, int, Any]]:
        return [(g, h, c) for g in sorted(self.out) for h, c in sorted(self.out[g].items())]
