"""Oriented link diagrams, their resolutions and classical invariants.

A crossing is stored through its four ports.  Rotating the crossing so that
both strands point "north", the incoming ports are SW and SE and the
outgoing ports NW and NE.  Planar-diagram input follows the usual
convention: ``X[a,b,c,d]`` lists the edges counter-clockwise starting from
the incoming under-strand ``a``; the explicit sign says whether the
over-strand runs d -> b (positive) or b -> d (negative).

Resolutions: bit 0 joins SW-NW and SE-NE (oriented resolution), bit 1 joins
SW-SE and NW-NE through a sink and a source bivalent vertex (singular
resolution).  The preferred edge of both new vertices is on their right,
i.e. the SE and NE edges.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import ParseError

__all__ = [
    "Crossing",
    "LinkDiagram",
    "Circle",
    "ResolutionState",
    "DiagramError",
    "parse_pd",
    "parse_braid",
    "parse_input",
    "resolve",
    "linking_matrix",
    "SW",
    "SE",
    "NW",
    "NE",
]

SW, SE, NW, NE = range(4)
PORT_NAMES = ("SW", "SE", "NW", "NE")
_IN_PORTS = (SW, SE)
_OR_PAIR = {SW: NW, NW: SW, SE: NE, NE: SE}
_SING_PAIR = {SW: SE, SE: SW, NW: NE, NE: NW}


class DiagramError(ValueError):
    """Structurally invalid diagram (edge multiplicity, orientation, range)."""


@dataclass(frozen=True)
class Crossing:
    sign: int
    ports: Tuple[int, int, int, int]  # edge ids at SW, SE, NW, NE

    @classmethod
    def from_pd(cls, sign: int, pd: Sequence[int]) -> "Crossing":
        a, b, c, d = pd
        if sign > 0:
            return cls(1, (d, a, c, b))
        return cls(-1, (a, b, d, c))

    @property
    def pd(self) -> Tuple[int, int, int, int]:
        sw, se, nw, ne = self.ports
        if self.sign > 0:
            return (se, ne, nw, sw)
        return (sw, se, ne, nw)

    def switched(self) -> "Crossing":
        return Crossing(-self.sign, self.ports)

    def __str__(self) -> str:
        return f"X{'+' if self.sign > 0 else '-'}({','.join(map(str, self.pd))})"


@dataclass(frozen=True)
class LinkDiagram:
    """Closed oriented link diagram.

    ``loops`` holds edge ids of crossingless unknotted components.
    ``components`` lists, for every link component, its edges in order of
    travel; ``edge_component`` maps an edge id to its component index.
    """

    crossings: Tuple[Crossing, ...]
    loops: Tuple[int, ...] = ()
    components: Tuple[Tuple[int, ...], ...] = field(default=(), compare=False)
    edge_component: Dict[int, int] = field(default_factory=dict, compare=False, repr=False)
    head: Dict[int, Tuple[int, int]] = field(default_factory=dict, compare=False, repr=False)
    tail: Dict[int, Tuple[int, int]] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(cls, crossings: Sequence[Crossing], n_loops: int = 0, loop_ids=None) -> "LinkDiagram":
        crossings = tuple(crossings)
        head: Dict[int, Tuple[int, int]] = {}
        tail: Dict[int, Tuple[int, int]] = {}
        seen: Dict[int, int] = {}
        for x, cr in enumerate(crossings):
            if cr.sign not in (1, -1):
                raise DiagramError(f"crossing {x} has sign {cr.sign}")
            for e in cr.ports:
                seen[e] = seen.get(e, 0) + 1
        bad = sorted(e for e, k in seen.items() if k != 2)
        if bad:
            raise DiagramError(f"edge {bad[0]} appears {seen[bad[0]]} time(s), expected 2")
        for x, cr in enumerate(crossings):
            for p, e in enumerate(cr.ports):
                slot = head if p in _IN_PORTS else tail
                if e in slot:
                    kind = "incoming" if p in _IN_PORTS else "outgoing"
                    raise DiagramError(
                        f"orientation inconsistency: edge {e} is {kind} at two crossings"
                    )
                slot[e] = (x, p)
        if loop_ids is None:
            top = max(seen, default=0)
            loop_ids = tuple(top + 1 + k for k in range(n_loops))
        loop_ids = tuple(loop_ids)
        if set(loop_ids) & set(seen):
            raise DiagramError("loop ids collide with crossing edges")

        components: List[Tuple[int, ...]] = []
        edge_component: Dict[int, int] = {}
        for start in sorted(seen):
            if start in edge_component:
                continue
            comp = []
            e = start
            while e not in edge_component:
                edge_component[e] = len(components)
                comp.append(e)
                x, p = head[e]
                # strands pass straight through: SW -> NE, SE -> NW
                e = crossings[x].ports[NE if p == SW else NW]
            components.append(tuple(comp))
        for e in loop_ids:
            edge_component[e] = len(components)
            components.append((e,))
        return cls(crossings, loop_ids, tuple(components), edge_component, head, tail)

    # -- classical data
    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(sorted(self.edge_component))

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def n_positive(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    def n_negative(self) -> int:
        return sum(1 for c in self.crossings if c.sign < 0)

    def crossing_components(self, x: int) -> Tuple[int, int]:
        """Components of the SW->NE strand and of the SE->NW strand at crossing x."""
        sw, se, _, _ = self.crossings[x].ports
        return self.edge_component[sw], self.edge_component[se]

    # -- modifications used by skein checks
    def switch(self, x: int) -> "LinkDiagram":
        cr = list(self.crossings)
        cr[x] = cr[x].switched()
        return LinkDiagram.build(cr, loop_ids=self.loops)

    def smooth(self, x: int) -> "LinkDiagram":
        """Oriented smoothing of crossing x (SW joins NW, SE joins NE)."""
        sw, se, nw, ne = self.crossings[x].ports
        alias = {}

        def find(e):
            while e in alias:
                e = alias[e]
            return e

        for a, b in ((nw, sw), (ne, se)):
            ra, rb = find(a), find(b)
            if ra != rb:
                alias[ra] = rb
        rest = [
            Crossing(c.sign, tuple(find(e) for e in c.ports))
            for k, c in enumerate(self.crossings)
            if k != x
        ]
        used = {e for c in rest for e in c.ports}
        new_loops = sorted({find(e) for e in (sw, se)} - used)
        return LinkDiagram.build(rest, loop_ids=self.loops + tuple(new_loops))

    def to_pd_text(self) -> str:
        parts = [str(c) for c in self.crossings]
        if self.loops:
            parts.append(f"U{len(self.loops)}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_pd_text() or "U0"


# ---------------------------------------------------------------------------
# Parsing

_PD_TERM = re.compile(r"X\s*\[?\s*([+-])\s*\]?\s*\(([^)]*)\)")
_U_TERM = re.compile(r"U(\d+)")
_WS = re.compile(r"[\s,;]+")


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text such as ``"X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)"``.

    ``U<n>`` adds n crossingless unknot components.  Malformed input raises
    ``ParseError`` with line/column; structural problems raise
    ``DiagramError``.
    """
    pos = 0
    crossings: List[Crossing] = []
    n_loops = 0
    while True:
        m = _WS.match(text, pos)
        if m:
            pos = m.end()
        if pos >= len(text):
            break
        m = _PD_TERM.match(text, pos)
        if m:
            sign = 1 if m.group(1) == "+" else -1
            fields = [s.strip() for s in m.group(2).split(",")]
            if len(fields) != 4 or not all(re.fullmatch(r"\d+", f) for f in fields):
                raise ParseError(
                    "crossing needs four non-negative integer edge labels", text, m.start(2)
                )
            crossings.append(Crossing.from_pd(sign, [int(f) for f in fields]))
            pos = m.end()
            continue
        m = _U_TERM.match(text, pos)
        if m:
            n_loops += int(m.group(1))
            pos = m.end()
            continue
        raise ParseError(f"expected 'X+(...)', 'X-(...)' or 'U<n>' at {text[pos:pos + 12]!r}", text, pos)
    if not crossings and not n_loops:
        raise ParseError("empty diagram", text, 0)
    return LinkDiagram.build(crossings, n_loops)


_BRAID_TOKEN = re.compile(r"s(\d+)(\^(-?1))?$")


def parse_braid(word: str, strands: int) -> LinkDiagram:
    """Diagram of the closure of a braid word like ``"s1 s2^-1 s1"``.

    ``s_k`` is a positive crossing between strands k and k+1.
    """
    if strands < 1:
        raise DiagramError("a braid needs at least one strand")
    gens: List[Tuple[int, int]] = []
    pos = 0
    for tok in word.replace(",", " ").split():
        start = word.index(tok, pos)
        pos = start + len(tok)
        m = _BRAID_TOKEN.match(tok)
        if not m:
            raise ParseError(f"bad braid generator {tok!r}", word, start)
        k = int(m.group(1))
        if not 1 <= k < strands:
            raise ParseError(f"generator s{k} out of range for {strands} strands", word, start)
        gens.append((k - 1, -1 if m.group(3) == "-1" else 1))

    labels = list(range(1, strands + 1))
    nxt = strands + 1
    raw: List[Tuple[int, Tuple[int, int, int, int]]] = []
    for k, sign in gens:
        in_l, in_r = labels[k], labels[k + 1]
        out_l, out_r = nxt, nxt + 1
        nxt += 2
        raw.append((sign, (in_l, in_r, out_l, out_r)))
        labels[k], labels[k + 1] = out_l, out_r
    # closure: last label at each position is glued to the first one
    glue = {labels[k]: k + 1 for k in range(strands) if labels[k] != k + 1}
    untouched = [k + 1 for k in range(strands) if labels[k] == k + 1]
    crossings = []
    for sign, ports in raw:
        ports = tuple(glue.get(e, e) for e in ports)
        crossings.append(Crossing(sign, ports))
    # renumber edges compactly 1..E in order of first appearance
    order: Dict[int, int] = {}
    for c in crossings:
        for e in c.ports:
            order.setdefault(e, len(order) + 1)
    crossings = [Crossing(c.sign, tuple(order[e] for e in c.ports)) for c in crossings]
    loops = tuple(len(order) + 1 + j for j in range(len(untouched)))
    return LinkDiagram.build(crossings, loop_ids=loops)


def parse_input(pd: Optional[str] = None, braid: Optional[str] = None, strands: Optional[int] = None) -> LinkDiagram:
    if (pd is None) == (braid is None):
        raise ValueError("give exactly one of a PD code or a braid word")
    if pd is not None:
        return parse_pd(pd)
    if strands is None:
        raise ValueError("a braid word needs a strand count")
    return parse_braid(braid, strands)


# ---------------------------------------------------------------------------
# Resolutions


@dataclass(frozen=True)
class Circle:
    """One closed component of a resolution.

    ``edges`` lists ``(edge_id, agrees)`` in order of travel, where
    ``agrees`` records whether the edge's orientation matches the direction
    of travel.  ``vertices`` lists the bivalent vertices met on the way as
    ``(crossing, "sink"|"source", preferred_edge, preferred_on_left_of_travel)``.
    """

    edges: Tuple[Tuple[int, bool], ...]
    vertices: Tuple[Tuple[int, str, int, bool], ...] = ()

    @property
    def key(self) -> int:
        return min(e for e, _ in self.edges)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(e for e, _ in self.edges)


@dataclass(frozen=True)
class ResolutionState:
    """A full resolution: ``choice[x]`` is 0 (oriented) or 1 (singular)."""

    choice: Tuple[int, ...]
    circles: Tuple[Circle, ...]
    circle_of: Dict[int, int] = field(compare=False, repr=False, default_factory=dict)
    twisted: Dict[int, bool] = field(compare=False, repr=False, default_factory=dict)

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    def vertex_counts(self) -> Tuple[int, ...]:
        return tuple(c.vertex_count for c in self.circles)


def resolve(d: LinkDiagram, choice: Sequence[int]) -> ResolutionState:
    """Trace the circles of the resolution selected by ``choice``.

    Circles are sorted by their smallest edge id.  ``twisted[e]`` tells
    whether edge e runs against the orientation of its circle's smallest
    edge (an odd number of bivalent vertices separates them); a dot on such
    an edge acts as ``h - X`` in the circle's copy of A.
    """
    choice = tuple(int(b) for b in choice)
    if len(choice) != d.n_crossings:
        raise ValueError(f"need {d.n_crossings} resolution bits, got {len(choice)}")
    crossings = d.crossings
    visited = set()
    circles: List[Circle] = []
    for start in sorted(d.edge_component):
        if start in visited:
            continue
        if start in d.loops:
            visited.add(start)
            circles.append(Circle(((start, True),)))
            continue
        edges: List[Tuple[int, bool]] = []
        vertices = []
        e, agree = start, True
        while True:
            visited.add(e)
            edges.append((e, agree))
            x, p = d.head[e] if agree else d.tail[e]
            sing = choice[x]
            q = (_SING_PAIR if sing else _OR_PAIR)[p]
            ports = crossings[x].ports
            nxt = ports[q]
            nxt_agree = q not in _IN_PORTS
            if sing:
                kind = "sink" if p in _IN_PORTS else "source"
                pref_port = SE if kind == "sink" else NE
                # preferred edge lies on the right of a sink approached from SW,
                # i.e. ahead of us when we travel SW -> SE or NW -> NE
                vertices.append((x, kind, ports[pref_port], q == pref_port))
            e, agree = nxt, nxt_agree
            if e == start and agree:
                break
            if e in visited and (e, agree) in edges:
                raise DiagramError("circle tracing did not close up")
        circles.append(Circle(tuple(edges), tuple(vertices)))
    circles.sort(key=lambda c: c.key)
    circle_of: Dict[int, int] = {}
    twisted: Dict[int, bool] = {}
    for idx, c in enumerate(circles):
        ref_agree = dict(c.edges)[c.key]
        for e, ag in c.edges:
            circle_of[e] = idx
            twisted[e] = ag != ref_agree
    return ResolutionState(choice, tuple(circles), circle_of, twisted)


def linking_matrix(d: LinkDiagram) -> List[List[Fraction]]:
    """Pairwise linking numbers: half the signed count of inter-component crossings."""
    n = d.n_components
    lk = [[Fraction(0)] * n for _ in range(n)]
    for x, cr in enumerate(d.crossings):
        c1, c2 = d.crossing_components(x)
        if c1 != c2:
            lk[c1][c2] += Fraction(cr.sign, 2)
            lk[c2][c1] += Fraction(cr.sign, 2)
    return lk
