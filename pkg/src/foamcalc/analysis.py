"""Closed-form predictions: surface-knot invariants and canonical colorings."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from .coeff import GaussPoly, GaussRat
from .complex import HomologyTable, build_complex, homology
from .diagram import LinkDiagram, linking_matrix
from .frobenius import FoamGen, TensorVec, compile_word

__all__ = [
    "SurfaceKnot",
    "CanonicalColoring",
    "RepeatedRootError",
    "surface_invariant",
    "trivial_surface_pairing",
    "predict_colorings",
    "coloring_degree_from_resolution",
    "StructureReport",
    "verify_structure",
    "discriminant",
    "root_shift",
    "repeated_root_homology",
]

_H = GaussPoly.monomial(0, 1)
_A = GaussPoly.monomial(1, 0)
_DISC = _H * _H + _A.scale(4)


class RepeatedRootError(ValueError):
    """X^2 - hX - a has a double root; the coloring theorem does not apply."""


@dataclass(frozen=True)
class SurfaceKnot:
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")


def surface_invariant(s: SurfaceKnot) -> GaussPoly:
    """0 for even genus, 2 (h^2 + 4a)^((g-1)/2) for odd genus."""
    if s.genus % 2 == 0:
        return GaussPoly()
    return _DISC ** ((s.genus - 1) // 2) * GaussPoly.const(2)


def trivial_surface_pairing(genus: int, gen: str) -> GaussPoly:
    """A genus-2k surface with one boundary circle, evaluated on 1 or X."""
    if genus < 0 or genus % 2:
        raise ValueError(f"genus must be even and non-negative, got {genus}")
    if gen not in ("one", "X"):
        raise ValueError("generator must be 'one' or 'X'")
    if gen == "one":
        return GaussPoly()
    return _DISC ** (genus // 2)


def handle_cap_word(genus: int) -> List[FoamGen]:
    """Generator word for a capped surface of the given genus with one input circle."""
    return [FoamGen("split", (0,)), FoamGen("merge", (0, 1))] * genus + [FoamGen("cap", (0,))]


def evaluate_pairing(genus: int, gen: str) -> GaussPoly:
    """Compile ``handle_cap_word`` and apply it to 1 or X (foam-level oracle)."""
    m = compile_word(handle_cap_word(genus), 1)
    img = m.apply(TensorVec.basis((1 if gen == "X" else 0,)))
    return img.entries.get((), GaussPoly())


# ---------------------------------------------------------------------------
# Canonical colorings


def discriminant(a_val, h_val) -> GaussRat:
    a_val, h_val = GaussRat.coerce(a_val), GaussRat.coerce(h_val)
    return h_val * h_val + a_val * 4


@dataclass(frozen=True)
class CanonicalColoring:
    """One root label ('alpha' or 'beta') per link component."""

    assignment: Tuple[str, ...]

    def __str__(self) -> str:
        return "".join("a" if c == "alpha" else "b" for c in self.assignment)

    def colored(self, label: str) -> List[int]:
        return [k for k, c in enumerate(self.assignment) if c == label]


def _sublink_lk(lk, A: List[int], B: List[int]) -> Fraction:
    return sum((lk[x][y] for x in A for y in B), Fraction(0))


def predict_colorings(
    d: LinkDiagram, a_val, h_val, pair_reading: str = "ordered"
) -> List[Tuple[CanonicalColoring, int]]:
    """All 2^n canonical colorings with their predicted cohomological degree.

    The default reads the degree sum over ordered pairs (u1, u2) of distinct
    colors exactly as printed, i.e. -2 (lk(A, B) + lk(B, A)).  With
    ``pair_reading="unordered"`` each pair of colors is counted once.
    """
    if pair_reading not in ("ordered", "unordered"):
        raise ValueError("pair_reading must be 'ordered' or 'unordered'")
    if not discriminant(a_val, h_val):
        raise RepeatedRootError("h^2 + 4a = 0: use repeated_root_homology instead")
    lk = linking_matrix(d)
    out = []
    for assignment in product(("alpha", "beta"), repeat=d.n_components):
        col = CanonicalColoring(assignment)
        A, B = col.colored("alpha"), col.colored("beta")
        pairs = [(A, B), (B, A)] if pair_reading == "ordered" else [(A, B)]
        deg = -2 * sum(_sublink_lk(lk, X, Y) for X, Y in pairs)
        if deg.denominator != 1:
            raise ValueError("non-integral linking number")
        out.append((col, int(deg)))
    return out


def coloring_degree_from_resolution(d: LinkDiagram, col: CanonicalColoring) -> int:
    """Degree of the resolution selected by a coloring.

    Crossings between differently colored strands go singular, contributing
    -1 (positive) or +1 (negative); others stay oriented.
    """
    deg = 0
    for x, cr in enumerate(d.crossings):
        c1, c2 = d.crossing_components(x)
        if col.assignment[c1] != col.assignment[c2]:
            deg -= cr.sign
    return deg


@dataclass(frozen=True)
class StructureReport:
    n: int
    predicted: Tuple[int, ...]
    predicted_unordered: Tuple[int, ...]
    computed: Tuple[int, ...]
    total_dim: int

    @property
    def dim_ok(self) -> bool:
        return self.total_dim == 2 ** self.n

    @property
    def reading(self) -> Optional[str]:
        """Which pair reading reproduces the computed degrees (ordered preferred)."""
        if self.computed == self.predicted:
            return "ordered"
        if self.computed == self.predicted_unordered:
            return "unordered"
        return None

    @property
    def erratum(self) -> bool:
        """True when only the unordered reading matches (factor-two discrepancy)."""
        return self.reading == "unordered"

    @property
    def passed(self) -> bool:
        return self.dim_ok and self.reading is not None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "predicted": list(self.predicted),
            "predicted_unordered": list(self.predicted_unordered),
            "computed": list(self.computed),
            "total_dim": self.total_dim,
            "reading": self.reading,
            "erratum": self.erratum,
            "pass": self.passed,
        }


def _degree_multiset(table: HomologyTable) -> Tuple[int, ...]:
    c = Counter()
    for i, r in table.by_degree().items():
        c[i] += r
    return tuple(sorted(c.elements()))


def verify_structure(
    d: LinkDiagram, a_val, h_val, threads: Optional[int] = None
) -> StructureReport:
    """Compare computed homology at (a, h) with the coloring predictions."""
    pred = tuple(sorted(deg for _, deg in predict_colorings(d, a_val, h_val, "ordered")))
    pred_u = tuple(sorted(deg for _, deg in predict_colorings(d, a_val, h_val, "unordered")))
    table = homology(build_complex(d, threads=threads), a_val, h_val)
    return StructureReport(d.n_components, pred, pred_u, _degree_multiset(table), table.total_dim())


# ---------------------------------------------------------------------------
# Repeated roots


def root_shift(a_val, h_val) -> GaussRat:
    """The double root alpha = h/2 when h^2 + 4a = 0.

    Substituting X = Y + alpha turns X^2 - hX - a into Y^2, so the theory at
    (a, h) is isomorphic to the one at (0, 0) as filtered complexes.
    """
    if discriminant(a_val, h_val):
        raise ValueError("roots are distinct; no shift to the (0, 0) theory")
    return GaussRat.coerce(h_val) * GaussRat(Fraction(1, 2))


def repeated_root_homology(d: LinkDiagram, a_val, h_val, threads: Optional[int] = None) -> HomologyTable:
    """Filtered homology at a repeated-root point via the (0, 0) graded theory."""
    root_shift(a_val, h_val)
    graded = homology(build_complex(d, threads=threads), 0, 0)
    return HomologyTable.from_counts("filtered", graded.by_degree())
