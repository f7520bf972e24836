"""Cube-of-resolutions complex, its simplification and homology.

Model
-----
A cube vertex is a full resolution of the diagram; its chain group is
A^{(x)n} with one tensor factor per traced circle (circles ordered by their
smallest edge id).  On a circle, a dot placed next to PD edge p acts as X or
as h - X depending on whether p runs with or against the circle's reference
edge (see ``diagram.resolve``).  This is how singular arcs and vertex pairs
enter: they only ever change which of the two identifications a facet uses.

Each cube edge changes one crossing between its singular and oriented
resolution (zip: singular -> oriented, unzip: oriented -> singular) and is a
merge or a split.  Its foam map is the unique-up-to-unit degree-one map that
commutes with every dot operator.  ``derive_edge_maps`` tabulates these maps
for every local twist pattern, expresses each one as a word in the
generating foams, fixes the units with the (CN) neck-cutting relation and
then checks (RSC) and the remaining local relations independently.

Units around faces of the cube are not forced to agree by the local table,
so ``build_complex`` gauge-fixes them along a spanning tree of faces before
applying the Koszul sign and verifies d∘d = 0 at the end.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from .coeff import I, ONE, UNITS, GaussPoly, GaussRat, LaurentBi, LaurentQ
from .diagram import NE, NW, SE, SW, LinkDiagram, ResolutionState, resolve
from .frobenius import (
    UFO_VALUES,
    AlgElem,
    FoamGen,
    LinearMap,
    TensorVec,
    closed_value,
    compile_word,
    map_degree,
    twist,
    ufo_word,
)
from .linalg import CancellationComplex, rank

__all__ = [
    "EdgeRule",
    "EdgeTable",
    "EdgeMapError",
    "ComplexError",
    "Generator",
    "ChainComplex",
    "HomologyTable",
    "derive_edge_maps",
    "build_complex",
    "specialize",
    "simplify",
    "homology",
    "homology_bruteforce",
    "euler_characteristic",
    "resolve_threads",
]

_ZERO = GaussPoly()
_ONE = GaussPoly.const(1)
_H = GaussPoly.monomial(0, 1)
_A = GaussPoly.monomial(1, 0)
_PI = GaussPoly.const(I)

PORTS = (SW, SE, NW, NE)

# local tensor factor of each port (SW, SE, NW, NE) on the source / target side
_LAYOUT = {
    ("zip", "merge"): ((0, 0, 1, 1), (0, 0, 0, 0)),
    ("zip", "split"): ((0, 0, 0, 0), (0, 1, 0, 1)),
    ("unzip", "merge"): ((0, 1, 0, 1), (0, 0, 0, 0)),
    ("unzip", "split"): ((0, 0, 0, 0), (0, 0, 1, 1)),
}
_OTHER = {"merge": "split", "split": "merge"}


class EdgeMapError(RuntimeError):
    """A local relation failed while deriving the edge-map table."""

    def __init__(self, relation: str, key=None, detail: str = ""):
        self.relation = relation
        self.key = key
        super().__init__(f"relation ({relation}) fails for {key}: {detail}".rstrip(": "))


class ComplexError(RuntimeError):
    """Computation-level failure: d∘d ≠ 0 or a non-unit face ratio."""

    def __init__(self, message: str, square=None):
        self.square = square
        super().__init__(message if square is None else f"{message} (square {square})")


# ---------------------------------------------------------------------------
# Local model


def _n_factors(layout: Sequence[int]) -> int:
    return max(layout) + 1


def _dot_op(n: int, f: int, twisted: bool) -> LinearMap:
    """Multiplication by X (or by h - X) on tensor factor f."""
    dot = compile_word([FoamGen("dot", (f,))], n)
    if twisted:
        return LinearMap.identity(n).scale(_H) - dot
    return dot


def _twist_gen(f: int) -> FoamGen:
    # X -> h - X on one factor; the left singular annulus is -i times it
    return FoamGen("sing_annulus_left", (f,), I)


def _canonical(direction: str, topology: str, s_tw, t_tw) -> LinearMap:
    src_f, tgt_f = _LAYOUT[(direction, topology)]
    if topology == "merge":
        gens = [
            _twist_gen(f)
            for f in (0, 1)
            if s_tw[src_f.index(f)] != t_tw[src_f.index(f)]
        ]
        return compile_word(gens + [FoamGen("merge", (0, 1))], 2)
    a, b = (SE, SW) if direction == "zip" else (SW, NE)
    one = TensorVec.basis((0, 0))
    w = _dot_op(2, tgt_f[a], t_tw[a]).apply(one) + _dot_op(2, tgt_f[b], t_tw[b]).apply(one).scale(-1)
    flip = s_tw[SW] != t_tw[SW]
    dot_w = _dot_op(2, tgt_f[SW], False).apply(w)

    def fn(v: TensorVec) -> TensorVec:
        (word, c), = v.entries.items()
        x = AlgElem.basis(word[0])
        if flip:
            x = twist(x)
        return (w.scale(x.c0) + dot_w.scale(x.c1)).scale(c)

    return LinearMap.from_function(1, 2, fn)


def _port_ops(layout, tw) -> List[LinearMap]:
    n = _n_factors(layout)
    return [_dot_op(n, layout[p], tw[p]) for p in PORTS]


def _intertwines(f: LinearMap, direction, topology, s_tw, t_tw) -> bool:
    src_f, tgt_f = _LAYOUT[(direction, topology)]
    for xs, xt in zip(_port_ops(src_f, s_tw), _port_ops(tgt_f, t_tw)):
        if f.compose(xs) != xt.compose(f):
            return False
    return True


def _plausible(side: str, same_circle: bool, tw) -> bool:
    """Twist patterns a planar resolution can produce at one crossing.

    Across a bivalent vertex the orientation flips; the two strands of an
    oriented resolution are parallel, so a circle through both of them
    travels them in opposite directions.
    """
    if side == "singular":
        return tw[SW] != tw[SE] and tw[NW] != tw[NE]
    if tw[SW] != tw[NW] or tw[SE] != tw[NE]:
        return False
    return not same_circle or tw[SW] != tw[SE]


def _sides(direction: str, topology: str):
    """(side, same_circle) for the source and the target of a saddle."""
    src_same = topology == "split"
    sides = ("singular", "oriented") if direction == "zip" else ("oriented", "singular")
    return (sides[0], src_same), (sides[1], not src_same)


def _proportional(target: LinearMap, cand: LinearMap) -> Optional[GaussRat]:
    """The unit u with ``target == u * cand``, if any."""
    for u in UNITS:
        if cand.scale(GaussPoly.const(u)) == target:
            return u
    return None


def _cn_rhs(layout, tw) -> LinearMap:
    # (CN): -i dot(SE) - i dot(NE) + h i id on the singular web
    n = _n_factors(layout)
    ops = _port_ops(layout, tw)
    return ops[SE].scale(-_PI) - ops[NE].scale(_PI) + LinearMap.identity(n).scale(_H * _PI)


def _rsc_rhs(layout, tw) -> LinearMap:
    # (RSC): i dot(left strand) - i dot(right strand) on the oriented web
    ops = _port_ops(layout, tw)
    return ops[SW].scale(_PI) - ops[SE].scale(_PI)


def _find_word(direction, topology, matrix: LinearMap) -> Tuple[FoamGen, ...]:
    """Express ``matrix`` as left singular annuli around a merge or split."""
    sl = lambda f: FoamGen("sing_annulus_left", (f,))
    for bits in product((0, 1), repeat=3):
        if topology == "merge":
            pre = [sl(f) for f in (0, 1) if bits[f]]
            core = "merge", (0, 1)
            post = [sl(0)] if bits[2] else []
            n_in = 2
        else:
            pre = [sl(0)] if bits[0] else []
            core = "split", (0,)
            post = [sl(f) for f in (0, 1) if bits[1 + f]]
            n_in = 1
        cand = compile_word(pre + [FoamGen(*core)] + post, n_in)
        u = _proportional(matrix, cand)
        if u is not None:
            return tuple(pre + [FoamGen(core[0], core[1], u)] + post)
    raise EdgeMapError("word", (direction, topology), "no annulus/saddle word matches")


@dataclass(frozen=True)
class EdgeRule:
    """Foam map of one local saddle type.

    ``src_twist``/``tgt_twist`` give, for the ports SW, SE, NW, NE, whether
    a dot there acts as h - X; ``word`` acts on the local factor layout.
    """

    direction: str
    topology: str
    src_twist: Tuple[bool, bool, bool, bool]
    tgt_twist: Tuple[bool, bool, bool, bool]
    unit: GaussRat
    word: Tuple[FoamGen, ...]
    matrix: LinearMap = field(compare=False, repr=False)

    @property
    def key(self):
        return (self.direction, self.topology, self.src_twist, self.tgt_twist)

    def word_text(self) -> str:
        return " ".join(str(g) for g in self.word)


@dataclass(frozen=True)
class EdgeTable:
    rules: Mapping[tuple, EdgeRule]
    checks: Mapping[str, int]

    def __getitem__(self, key) -> EdgeRule:
        return self.rules[key]

    def __len__(self) -> int:
        return len(self.rules)

    def units(self) -> Dict[Tuple[str, str], List[GaussRat]]:
        out: Dict[Tuple[str, str], set] = {}
        for r in self.rules.values():
            out.setdefault((r.direction, r.topology), set()).add(r.unit)
        return {k: sorted(v, key=str) for k, v in sorted(out.items())}


def frobenius_relations() -> Dict[str, bool]:
    """The TQFT-level relations the edge table relies on, as exact checks."""
    n1 = LinearMap.identity(1)
    dot = compile_word([FoamGen("dot", (0,))], 1)
    m_then_d = compile_word([FoamGen("merge", (0, 1)), FoamGen("split", (0,))], 2)
    sf_rhs = (
        compile_word([FoamGen("dot", (0,))], 2)
        + compile_word([FoamGen("dot", (1,))], 2)
        - LinearMap.identity(2).scale(_H)
    )
    sl = compile_word([FoamGen("sing_annulus_left", (0,))], 1)
    sr = compile_word([FoamGen("sing_annulus_right", (0,))], 1)
    res = {
        "2D": dot.compose(dot) == dot.scale(_H) + n1.scale(_A),
        "SF": m_then_d == sf_rhs,
        "SR": sl.compose(sr) == n1 and sr.compose(sl) == n1,
        "UFO": all(
            closed_value(ufo_word(dots, ordering)) == GaussPoly.const(v)
            for (dots, ordering), v in UFO_VALUES.items()
        ),
    }
    res["CI"] = all(
        compile_word([FoamGen("vpair_remove", (0,), u, t), FoamGen("vpair_create", (0,), u.inverse(), t)], 1) == n1
        for u in (I, -I)
        for t in (False, True)
    )
    return res


@lru_cache(maxsize=None)
def derive_edge_maps() -> EdgeTable:
    """Derive and certify the local edge-map table.

    For every saddle type and every twist pattern admitting a degree-one
    dot-equivariant map, the canonical map is computed.  Zip maps keep unit
    1; each unzip unit is solved from (CN) on the singular side of the same
    crossing.  (RSC), (ED), the degree, and the word decomposition are then
    checked independently.  Any failure raises ``EdgeMapError``.
    """
    for name, ok in frobenius_relations().items():
        if not ok:
            raise EdgeMapError(name, None, "TQFT relation")
    bools = (False, True)
    canon: Dict[tuple, LinearMap] = {}
    for (direction, topology) in _LAYOUT:
        src_side, tgt_side = _sides(direction, topology)
        for s_tw in product(bools, repeat=4):
            if not _plausible(*src_side, s_tw):
                continue
            for t_tw in product(bools, repeat=4):
                if not _plausible(*tgt_side, t_tw):
                    continue
                f = _canonical(direction, topology, s_tw, t_tw)
                if _intertwines(f, direction, topology, s_tw, t_tw):
                    canon[(direction, topology, s_tw, t_tw)] = f

    checks = {"CN": 0, "RSC": 0, "ED": 0, "degree": 0, "word": 0}
    units: Dict[tuple, GaussRat] = {}
    for key, zf in canon.items():
        direction, topology, s_tw, t_tw = key
        if direction != "zip":
            continue
        ukey = ("unzip", _OTHER[topology], t_tw, s_tw)
        if ukey not in canon:
            raise EdgeMapError("CN", key, "no unzip partner")
        uf = canon[ukey]
        sing_layout = _LAYOUT[("zip", topology)][0]
        or_layout = _LAYOUT[("zip", topology)][1]
        c = _proportional(_cn_rhs(sing_layout, s_tw), uf.compose(zf))
        if c is None:
            raise EdgeMapError("CN", key, "unzip∘zip is not a unit multiple")
        checks["CN"] += 1
        if zf.compose(uf).scale(GaussPoly.const(c)) != _rsc_rhs(or_layout, t_tw):
            raise EdgeMapError("RSC", key, "zip∘unzip disagrees")
        checks["RSC"] += 1
        ops = _port_ops(sing_layout, s_tw)
        n = _n_factors(sing_layout)
        if ops[SW] + ops[SE] != LinearMap.identity(n).scale(_H) or ops[SW].compose(ops[SE]) != LinearMap.identity(n).scale(-_A):
            raise EdgeMapError("ED", key, "dots do not exchange across the vertex")
        checks["ED"] += 1
        units[key] = ONE
        units[ukey] = c

    rules = {}
    for key, f in sorted(canon.items()):
        if key not in units:
            continue  # unpaired patterns cannot occur in a planar diagram
        u = units[key]
        m = f.scale(GaussPoly.const(u))
        if map_degree(m) != 1:
            raise EdgeMapError("degree", key, f"map degree {map_degree(m)}")
        checks["degree"] += 1
        word = _find_word(key[0], key[1], m)
        n_in = 2 if key[1] == "merge" else 1
        if compile_word(word, n_in) != m:
            raise EdgeMapError("word", key)
        checks["word"] += 1
        rules[key] = EdgeRule(key[0], key[1], key[2], key[3], u, word, m)
    return EdgeTable(rules, checks)


# ---------------------------------------------------------------------------
# Cube


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        env = os.environ.get("FOAMCALC_THREADS", "").strip()
        threads = int(env) if env else 1
    return max(1, int(threads))


def _pmap(fn, items, threads: int) -> list:
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _choice(d: LinkDiagram, bits: int) -> Tuple[int, ...]:
    # internal bit 1 is the target side of the crossing's two-term complex
    return tuple(
        (1 - ((bits >> k) & 1)) if c.sign > 0 else ((bits >> k) & 1)
        for k, c in enumerate(d.crossings)
    )


def _shift(d: LinkDiagram, bits: int) -> int:
    s = 0
    for k, c in enumerate(d.crossings):
        b = (bits >> k) & 1
        if c.sign > 0:
            s += 1 if b else 2
        else:
            s += -2 if b else -1
    return s


@dataclass(frozen=True)
class _Vertex:
    bits: int
    state: ResolutionState
    degree: int
    shift: int

    @property
    def n(self) -> int:
        return self.state.n_circles


class _Edge:
    """Uncorrected foam map along one cube edge, acting on bitmask words."""

    __slots__ = ("src", "tgt", "k", "rule", "src_local", "tgt_local", "perm", "local")

    def __init__(self, d: LinkDiagram, src: _Vertex, tgt: _Vertex, k: int, table: EdgeTable):
        ports = d.crossings[k].ports
        s, t = src.state, tgt.state
        direction = "zip" if d.crossings[k].sign > 0 else "unzip"
        topology = "merge" if len({s.circle_of[e] for e in ports}) == 2 else "split"
        key = (
            direction,
            topology,
            tuple(s.twisted[e] for e in ports),
            tuple(t.twisted[e] for e in ports),
        )
        try:
            rule = table[key]
        except KeyError:
            raise ComplexError(f"no edge rule for local pattern {key}", (src.bits, k)) from None
        src_f, tgt_f = _LAYOUT[(direction, topology)]
        self.src, self.tgt, self.k, self.rule = src, tgt, k, rule
        self.src_local = [s.circle_of[ports[src_f.index(f)]] for f in range(_n_factors(src_f))]
        self.tgt_local = [t.circle_of[ports[tgt_f.index(f)]] for f in range(_n_factors(tgt_f))]
        self.perm = [
            (ci, t.circle_of[c.key])
            for ci, c in enumerate(s.circles)
            if ci not in self.src_local
        ]
        self.local = {
            w: sorted(col.items()) for w, col in rule.matrix.cols.items()
        }

    def apply_word(self, w: int) -> List[Tuple[int, GaussPoly]]:
        lin = tuple((w >> c) & 1 for c in self.src_local)
        base = 0
        for s, t in self.perm:
            if (w >> s) & 1:
                base |= 1 << t
        out = []
        for word, coeff in self.local.get(lin, ()):
            tw = base
            for bit, c in zip(word, self.tgt_local):
                if bit:
                    tw |= 1 << c
            out.append((tw, coeff))
        return out

    def apply(self, vec: Dict[int, GaussPoly]) -> Dict[int, GaussPoly]:
        out: Dict[int, GaussPoly] = {}
        for w, c in vec.items():
            for tw, coeff in self.apply_word(w):
                v = out.get(tw, _ZERO) + c * coeff
                if v:
                    out[tw] = v
                else:
                    out.pop(tw, None)
        return out


@dataclass(frozen=True)
class Generator:
    """A basis element: cube vertex bits and circle word (bit c set = X on circle c)."""

    i: int
    j: int
    vertex: int
    word: int


@dataclass
class ChainComplex:
    """Cochain complex with sparse differentials.

    ``diffs[i][col][row]`` is the entry of d^i from generator ``groups[i][col]``
    to ``groups[i + 1][row]``.  ``ring`` is None for the symbolic complex
    over Z[i][a, h], else the specialization ``(a, h)``.
    """

    groups: Dict[int, List[Generator]]
    diffs: Dict[int, Dict[int, Dict[int, Any]]]
    ring: Optional[Tuple[GaussRat, GaussRat]] = None
    diagram: Optional[LinkDiagram] = None

    @property
    def symbolic(self) -> bool:
        return self.ring is None

    def degrees(self) -> List[int]:
        return sorted(i for i, g in self.groups.items() if g)

    def n_generators(self) -> int:
        return sum(len(g) for g in self.groups.values())

    def n_entries(self) -> int:
        return sum(len(col) for di in self.diffs.values() for col in di.values())

    def rank_profile(self) -> Dict[int, int]:
        return {i: len(self.groups[i]) for i in self.degrees()}

    def d_squared(self) -> List[Tuple[int, int, int, Any]]:
        """Nonzero entries ``(i, col, row, value)`` of d^{i+1}∘d^i."""
        bad = []
        for i in sorted(self.diffs):
            nxt = self.diffs.get(i + 1, {})
            for col, entries in sorted(self.diffs[i].items()):
                acc: Dict[int, Any] = {}
                for mid, c in entries.items():
                    for row, c2 in nxt.get(mid, {}).items():
                        acc[row] = acc[row] + c2 * c if row in acc else c2 * c
                for row, v in sorted(acc.items()):
                    if v:
                        bad.append((i, col, row, v))
        return bad

    def check_d_squared(self) -> None:
        bad = self.d_squared()
        if bad:
            i, col, row, v = bad[0]
            g, h = self.groups[i][col], self.groups[i + 2][row]
            flipped = tuple(k for k in range(64) if ((g.vertex ^ h.vertex) >> k) & 1)
            raise ComplexError(
                f"d∘d ≠ 0: entry {v} from degree {i}",
                {"vertex": g.vertex, "crossings": flipped, "word_in": g.word, "word_out": h.word},
            )


def build_complex(
    d: LinkDiagram,
    threads: Optional[int] = None,
    table: Optional[EdgeTable] = None,
    check: bool = True,
) -> ChainComplex:
    """Symbolic cube complex of a closed diagram over Z[i][a, h]."""
    threads = resolve_threads(threads)
    table = table or derive_edge_maps()
    c = d.n_crossings
    n_plus = d.n_positive()
    all_bits = list(range(1 << c))

    def make_vertex(bits):
        return _Vertex(bits, resolve(d, _choice(d, bits)), _popcount(bits) - n_plus, _shift(d, bits))

    vertices = _pmap(make_vertex, all_bits, threads)
    edge_keys = [(v, k) for v in all_bits for k in range(c) if not (v >> k) & 1]
    edges_list = _pmap(
        lambda vk: _Edge(d, vertices[vk[0]], vertices[vk[0] | (1 << vk[1])], vk[1], table),
        edge_keys,
        threads,
    )
    edges = dict(zip(edge_keys, edges_list))
    corr = _gauge(edges, all_bits, c)

    groups: Dict[int, List[Generator]] = {}
    offset: Dict[int, int] = {}
    for v in sorted(all_bits, key=lambda b: (_popcount(b), b)):
        vx = vertices[v]
        grp = groups.setdefault(vx.degree, [])
        offset[v] = len(grp)
        for w in range(1 << vx.n):
            grp.append(Generator(vx.degree, 2 * _popcount(w) - vx.n + vx.shift, v, w))

    def columns(v):
        vx = vertices[v]
        cols: Dict[int, Dict[int, GaussPoly]] = {}
        outs = []
        for k in range(c):
            if (v >> k) & 1:
                continue
            sign = -1 if _popcount(v & ((1 << k) - 1)) % 2 else 1
            scale = GaussPoly.const(corr[(v, k)] * sign)
            outs.append((edges[(v, k)], scale, offset[v | (1 << k)]))
        for w in range(1 << vx.n):
            col: Dict[int, GaussPoly] = {}
            for e, scale, off in outs:
                for tw, coeff in e.apply_word(w):
                    row = off + tw
                    val = col.get(row, _ZERO) + coeff * scale
                    if val:
                        col[row] = val
                    else:
                        col.pop(row, None)
            if col:
                cols[offset[v] + w] = col
        return vx.degree, cols

    diffs: Dict[int, Dict[int, Dict[int, GaussPoly]]] = {i: {} for i in groups}
    for deg, cols in _pmap(columns, all_bits, threads):
        diffs[deg].update(cols)
    diffs = {i: dict(sorted(cols.items())) for i, cols in diffs.items()}
    cx = ChainComplex(groups, diffs, None, d)
    if check:
        cx.check_d_squared()
    return cx


def _gauge(edges: Dict[Tuple[int, int], _Edge], all_bits, c: int) -> Dict[Tuple[int, int], GaussRat]:
    """Unit corrections making every square of the cube commute.

    The correction on edge (v, k) is propagated from (v - e_j, k) across the
    face spanned by k and j, the highest set bit of v above k.  Faces whose
    two composites both vanish impose nothing; for those the next lower set
    bit above k is tried.
    """
    corr: Dict[Tuple[int, int], GaussRat] = {}
    for v in sorted(all_bits, key=lambda b: (_popcount(b), b)):
        for k in range(c):
            if (v >> k) & 1:
                continue
            above = [j for j in range(c - 1, k, -1) if (v >> j) & 1]
            if not above:
                corr[(v, k)] = ONE
                continue
            val = None
            for j in above:
                u = v ^ (1 << j)
                if any((u >> jj) & 1 for jj in range(j + 1, c)):
                    # faces through a non-top bit need corrections on the
                    # j-edges too; those are known for lower levels only
                    cj1 = corr.get((u, j))
                    cj2 = corr.get((u | (1 << k), j))
                    if cj1 is None or cj2 is None:
                        continue
                else:
                    cj1 = cj2 = ONE
                one = {0: _ONE}
                ma = edges[(u | (1 << k), j)].apply(edges[(u, k)].apply(one))
                mb = edges[(v, k)].apply(edges[(u, j)].apply(one))
                if not ma and not mb:
                    continue
                if not ma or not mb:
                    raise ComplexError("face with exactly one vanishing composite", (u, k, j))
                ratio = None
                for unit in UNITS:
                    pu = GaussPoly.const(unit)
                    if {w: x * pu for w, x in mb.items()} == ma:
                        ratio = unit
                        break
                if ratio is None:
                    raise ComplexError("face composites are not unit multiples", (u, k, j))
                # c(u,k) c(u+e_k,j) M_A = c(u,j) c(v,k) M_B
                val = corr[(u, k)] * cj2 * ratio / cj1
                break
            if val is None:
                raise ComplexError("no non-degenerate face to fix the unit", (v, k))
            corr[(v, k)] = val
    return corr


# ---------------------------------------------------------------------------
# Specialization, simplification, homology


def _coerce_param(x) -> GaussRat:
    return GaussRat.coerce(x)


def specialize(cx: ChainComplex, a_val, h_val) -> ChainComplex:
    """Evaluate a symbolic complex at exact Gaussian-rational (a, h)."""
    a_val, h_val = _coerce_param(a_val), _coerce_param(h_val)
    if not cx.symbolic:
        if cx.ring == (a_val, h_val):
            return cx
        raise ValueError("complex is already specialized to different parameters")
    diffs = {}
    for i, cols in cx.diffs.items():
        new = {}
        for col, entries in cols.items():
            e = {}
            for row, c in entries.items():
                v = c.specialize(a_val, h_val)
                if v:
                    e[row] = v
            if e:
                new[col] = e
        diffs[i] = new
    return ChainComplex(cx.groups, diffs, (a_val, h_val), cx.diagram)


def _to_cancellation(cx: ChainComplex):
    ids: Dict[Tuple[int, int], int] = {}
    degree: Dict[int, int] = {}
    for i in cx.degrees():
        for col in range(len(cx.groups[i])):
            ids[(i, col)] = len(ids)
            degree[ids[(i, col)]] = i
    out = {}
    for i, cols in cx.diffs.items():
        for col, entries in cols.items():
            out[ids[(i, col)]] = {ids[(i + 1, row)]: c for row, c in entries.items()}
    inv = {v: k for k, v in ids.items()}
    return CancellationComplex(degree, out), ids, inv


def simplify(cx: ChainComplex) -> ChainComplex:
    """Gaussian cancellation.

    Symbolic complexes cancel only constant unit entries (±1, ±i), so the
    graded Euler characteristic is untouched; specialized complexes cancel
    every nonzero entry, leaving a complex with zero differential.  The
    chain groups are already free on the {1, X} basis of each circle, so no
    separate delooping pass is needed.
    """
    cc, ids, inv = _to_cancellation(cx)
    if cx.symbolic:
        allowed = lambda c: c.is_unit()
    else:
        allowed = lambda c: bool(c)
    cc.reduce(allowed, sorted(cc.degree))
    alive = cc.alive()
    groups: Dict[int, List[Generator]] = {}
    new_index: Dict[int, int] = {}
    for g in alive:
        i, col = inv[g]
        grp = groups.setdefault(i, [])
        new_index[g] = len(grp)
        grp.append(cx.groups[i][col])
    diffs: Dict[int, Dict[int, Dict[int, Any]]] = {i: {} for i in groups}
    for g, h, c in cc.entries():
        i = inv[g][0]
        diffs[i].setdefault(new_index[g], {})[new_index[h]] = c
    return ChainComplex(groups, diffs, cx.ring, cx.diagram)


@dataclass(frozen=True)
class HomologyTable:
    """Ranks of homology: keys (i, j) in graded mode, i in filtered mode."""

    mode: str
    entries: Tuple[Tuple[Any, int], ...]

    @classmethod
    def from_counts(cls, mode: str, counts: Mapping[Any, int]) -> "HomologyTable":
        return cls(mode, tuple(sorted((k, r) for k, r in counts.items() if r)))

    def as_dict(self) -> Dict[Any, int]:
        return dict(self.entries)

    def total_dim(self) -> int:
        return sum(r for _, r in self.entries)

    def by_degree(self) -> Dict[int, int]:
        out: Dict[int, int] = {}
        for k, r in self.entries:
            i = k[0] if self.mode == "graded" else k
            out[i] = out.get(i, 0) + r
        return out

    @property
    def poincare(self) -> LaurentBi:
        p = LaurentBi()
        for k, r in self.entries:
            i, j = k if self.mode == "graded" else (k, 0)
            p = p + LaurentBi.monomial(j, i, r)
        return p

    def euler(self) -> LaurentQ:
        return self.poincare.at_t(-1)

    def to_json(self) -> dict:
        if self.mode == "graded":
            entries = [{"i": i, "j": j, "rank": r} for (i, j), r in self.entries]
        else:
            entries = [{"i": i, "rank": r} for i, r in self.entries]
        return {"mode": self.mode, "entries": entries, "poincare": str(self.poincare)}

    @classmethod
    def from_json(cls, data: dict) -> "HomologyTable":
        mode = data["mode"]
        if mode == "graded":
            counts = {(e["i"], e["j"]): e["rank"] for e in data["entries"]}
        else:
            counts = {e["i"]: e["rank"] for e in data["entries"]}
        return cls.from_counts(mode, counts)

    def render(self) -> str:
        if not self.entries:
            return "0"
        if self.mode == "filtered":
            return "\n".join(f"H^{i}: {r}" for i, r in self.entries)
        return "\n".join(f"H^{i},{j}: {r}" for (i, j), r in self.entries)


def _mode(a_val: GaussRat, h_val: GaussRat) -> str:
    return "graded" if not a_val and not h_val else "filtered"


def homology(cx: ChainComplex, a_val=0, h_val=0) -> HomologyTable:
    """Homology at (a, h) through full Gaussian cancellation."""
    a_val, h_val = _coerce_param(a_val), _coerce_param(h_val)
    red = simplify(specialize(cx, a_val, h_val))
    if red.n_entries():
        raise ComplexError("cancellation left a nonzero differential")
    mode = _mode(a_val, h_val)
    counts: Dict[Any, int] = {}
    for i, gens in red.groups.items():
        for g in gens:
            k = (i, g.j) if mode == "graded" else i
            counts[k] = counts.get(k, 0) + 1
    return HomologyTable.from_counts(mode, counts)


def homology_bruteforce(cx: ChainComplex, a_val=0, h_val=0) -> HomologyTable:
    """Homology from ranks of the unsimplified differentials (oracle path)."""
    a_val, h_val = _coerce_param(a_val), _coerce_param(h_val)
    sp = specialize(cx, a_val, h_val)
    mode = _mode(a_val, h_val)
    degs = sp.degrees()

    def block_key(g: Generator):
        return g.j if mode == "graded" else 0

    ranks: Dict[Tuple[int, int], int] = {}
    for i in degs:
        blocks: Dict[int, List[Dict[int, Any]]] = {}
        for col, g in enumerate(sp.groups[i]):
            blocks.setdefault(block_key(g), []).append(sp.diffs.get(i, {}).get(col, {}))
        for b, vecs in blocks.items():
            ranks[(i, b)] = rank(vecs)
    counts: Dict[Any, int] = {}
    for i in degs:
        sizes: Dict[int, int] = {}
        for g in sp.groups[i]:
            sizes[block_key(g)] = sizes.get(block_key(g), 0) + 1
        for b, n in sizes.items():
            dim = n - ranks.get((i, b), 0) - ranks.get((i - 1, b), 0)
            if dim:
                counts[(i, b) if mode == "graded" else i] = dim
    return HomologyTable.from_counts(mode, counts)


def euler_characteristic(cx: ChainComplex) -> LaurentQ:
    """Σ (-1)^i q^j over generators."""
    terms: Dict[int, int] = {}
    for i, gens in cx.groups.items():
        s = -1 if i % 2 else 1
        for g in gens:
            terms[g.j] = terms.get(g.j, 0) + s
    return LaurentQ(terms)
