"""The rank-two Frobenius algebra A = Z[i][a,h][X]/(X^2 - hX - a) and the
dotted (1+1)-dimensional TQFT built from it.

Foams between unions of circles are represented as words of generating
morphisms (``FoamGen``) acting on tensor powers of A.  A word is compiled
into an explicit ``LinearMap`` whose entries are ``GaussPoly`` values.

Basis words are tuples of 0/1, where 0 stands for ``1`` and 1 for ``X``.
The quantum degree of a basis word is ``#X - #1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

from .coeff import I, ONE, GaussPoly, GaussRat, gp_degree

__all__ = [
    "AlgElem",
    "TensorVec",
    "LinearMap",
    "FoamGen",
    "alg_mul",
    "alg_comul",
    "alg_counit",
    "alg_unit",
    "twist",
    "sing_annulus",
    "apply_gen",
    "compile_word",
    "closed_value",
    "gen_degree",
    "word_degree",
    "map_degree",
    "eval_closed_surface",
    "UFO_VALUES",
    "ufo_word",
    "load_golden",
    "parse_word",
    "GENERATOR_KINDS",
]

Word = Tuple[int, ...]

_ZERO = GaussPoly()
_ONE = GaussPoly.const(1)
_H = GaussPoly.monomial(0, 1)
_A = GaussPoly.monomial(1, 0)


@dataclass(frozen=True)
class AlgElem:
    """``c0*1 + c1*X`` in A, always kept in the reduced basis {1, X}."""

    c0: GaussPoly = _ZERO
    c1: GaussPoly = _ZERO

    @classmethod
    def one(cls) -> "AlgElem":
        return cls(_ONE, _ZERO)

    @classmethod
    def x(cls) -> "AlgElem":
        return cls(_ZERO, _ONE)

    @classmethod
    def basis(cls, bit: int) -> "AlgElem":
        return cls.x() if bit else cls.one()

    def coeff(self, bit: int) -> GaussPoly:
        return self.c1 if bit else self.c0

    def __add__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return AlgElem(self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self) -> "AlgElem":
        return AlgElem(-self.c0, -self.c1)

    def scale(self, c) -> "AlgElem":
        c = GaussPoly.coerce(c)
        return AlgElem(self.c0 * c, self.c1 * c)

    def __mul__(self, other: "AlgElem") -> "AlgElem":
        return alg_mul(self, other)

    def is_zero(self) -> bool:
        return not self.c0 and not self.c1

    def __str__(self) -> str:
        parts = []
        if self.c0:
            parts.append(f"({self.c0})")
        if self.c1:
            parts.append(f"({self.c1})*X")
        return " + ".join(parts) or "0"


def alg_mul(x: AlgElem, y: AlgElem) -> AlgElem:
    # X^2 = hX + a
    x0y0 = x.c0 * y.c0
    cross = x.c0 * y.c1 + x.c1 * y.c0
    x1y1 = x.c1 * y.c1
    return AlgElem(x0y0 + x1y1 * _A, cross + x1y1 * _H)


def alg_unit() -> AlgElem:
    return AlgElem.one()


def alg_counit(x: AlgElem) -> GaussPoly:
    return x.c1


def twist(x: AlgElem) -> AlgElem:
    """The involution X -> h - X; an algebra automorphism with counit -counit."""
    return AlgElem(x.c0 + x.c1 * _H, -x.c1)


def sing_annulus(x: AlgElem, ordering: str) -> AlgElem:
    """Annulus with one singular circle: ``-i*twist`` (left) or ``i*twist`` (right)."""
    if ordering == "left":
        u = -I
    elif ordering == "right":
        u = I
    else:
        raise ValueError(f"ordering must be 'left' or 'right', not {ordering!r}")
    return twist(x).scale(GaussPoly.const(u))


@dataclass
class TensorVec:
    """Sparse vector in A^{(x)n}, keyed by basis words."""

    n: int
    entries: Dict[Word, GaussPoly] = field(default_factory=dict)

    def __post_init__(self):
        for w in self.entries:
            if len(w) != self.n:
                raise ValueError(f"word {w} does not have length {self.n}")
        self.entries = {w: c for w, c in self.entries.items() if c}

    @classmethod
    def basis(cls, word: Sequence[int]) -> "TensorVec":
        word = tuple(word)
        return cls(len(word), {word: _ONE})

    def add_term(self, word: Word, c: GaussPoly) -> None:
        s = self.entries.get(word)
        v = c if s is None else s + c
        if v:
            self.entries[word] = v
        else:
            self.entries.pop(word, None)

    def __add__(self, other: "TensorVec") -> "TensorVec":
        if other.n != self.n:
            raise ValueError("tensor length mismatch")
        out = TensorVec(self.n, dict(self.entries))
        for w, c in other.entries.items():
            out.add_term(w, c)
        return out

    def scale(self, c) -> "TensorVec":
        c = GaussPoly.coerce(c)
        return TensorVec(self.n, {w: v * c for w, v in self.entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorVec) and self.n == other.n and self.entries == other.entries

    def __str__(self) -> str:
        if not self.entries:
            return "0"
        return " + ".join(
            f"({c})*" + "⊗".join("X" if b else "1" for b in w)
            for w, c in sorted(self.entries.items())
        )


@dataclass
class LinearMap:
    """Sparse matrix A^{(x)n_in} -> A^{(x)n_out}: ``cols[w_in][w_out] = coefficient``."""

    n_in: int
    n_out: int
    cols: Dict[Word, Dict[Word, GaussPoly]] = field(default_factory=dict)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, {w: {w: _ONE} for w in product((0, 1), repeat=n)})

    @classmethod
    def from_function(cls, n_in: int, n_out: int, fn) -> "LinearMap":
        cols = {}
        for w in product((0, 1), repeat=n_in):
            img = fn(TensorVec.basis(w))
            if img.n != n_out:
                raise ValueError("function output has the wrong length")
            if img.entries:
                cols[w] = dict(img.entries)
        return cls(n_in, n_out, cols)

    def apply(self, v: TensorVec) -> TensorVec:
        if v.n != self.n_in:
            raise ValueError(f"map expects {self.n_in} factors, got {v.n}")
        out = TensorVec(self.n_out)
        for w, c in v.entries.items():
            for w2, c2 in self.cols.get(w, {}).items():
                out.add_term(w2, c * c2)
        return out

    def compose(self, first: "LinearMap") -> "LinearMap":
        """``self ∘ first``."""
        if first.n_out != self.n_in:
            raise ValueError("maps are not composable")
        return LinearMap.from_function(first.n_in, self.n_out, lambda v: self.apply(first.apply(v)))

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._check_shape(other)
        return LinearMap.from_function(
            self.n_in, self.n_out, lambda v: self.apply(v) + other.apply(v)
        )

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(-1)

    def scale(self, c) -> "LinearMap":
        c = GaussPoly.coerce(c)
        return LinearMap(
            self.n_in,
            self.n_out,
            {w: {w2: v * c for w2, v in col.items() if v * c} for w, col in self.cols.items()},
        )

    def _check_shape(self, other):
        if (self.n_in, self.n_out) != (other.n_in, other.n_out):
            raise ValueError("shape mismatch")

    def entry(self, w_out: Word, w_in: Word) -> GaussPoly:
        return self.cols.get(w_in, {}).get(w_out, _ZERO)

    def is_zero(self) -> bool:
        return not any(self.cols.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        if (self.n_in, self.n_out) != (other.n_in, other.n_out):
            return False
        keys = set(self.cols) | set(other.cols)
        return all(self.cols.get(k, {}) == other.cols.get(k, {}) for k in keys)

    def scalar(self) -> GaussPoly:
        """The value of a 0 -> 0 map (a closed foam)."""
        if self.n_in or self.n_out:
            raise ValueError("not a closed evaluation")
        return self.entry((), ())

    def __str__(self) -> str:
        rows = []
        for w in sorted(self.cols):
            img = TensorVec(self.n_out, self.cols[w])
            rows.append(f"{''.join('X' if b else '1' for b in w) or '∅'} -> {img}")
        return "\n".join(rows) or "0"


def alg_comul(x: AlgElem) -> TensorVec:
    """Comultiplication, extended linearly from Δ(1) and Δ(X)."""
    # Δ(1) = 1⊗X + X⊗1 - h 1⊗1 ;  Δ(X) = X⊗X + a 1⊗1
    out = TensorVec(2)
    if x.c0:
        out.add_term((0, 1), x.c0)
        out.add_term((1, 0), x.c0)
        out.add_term((0, 0), -x.c0 * _H)
    if x.c1:
        out.add_term((1, 1), x.c1)
        out.add_term((0, 0), x.c1 * _A)
    return out


# ---------------------------------------------------------------------------
# Generating foams

GENERATOR_KINDS = (
    "cup",
    "cap",
    "merge",
    "split",
    "dot",
    "sing_annulus_left",
    "sing_annulus_right",
    "vpair_create",
    "vpair_remove",
)

_GEN_DEGREE = {
    "cup": -1,
    "cap": -1,
    "merge": 1,
    "split": 1,
    "dot": 2,
    "sing_annulus_left": 0,
    "sing_annulus_right": 0,
    "vpair_create": 0,
    "vpair_remove": 0,
}


@dataclass(frozen=True)
class FoamGen:
    """One generating foam acting on the listed tensor factors.

    ``merge`` takes two factor indices ``(k, l)`` and leaves the product in
    position ``min(k, l)``; ``split`` and ``cup`` insert new factors right
    after / at the given index.  ``unit`` multiplies the whole generator.
    Vertex-pair generators may also carry the X -> h - X identification.
    """

    kind: str
    factors: Tuple[int, ...] = ()
    unit: GaussRat = ONE
    twist: bool = False

    def __post_init__(self):
        if self.kind not in _GEN_DEGREE:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        arity = 2 if self.kind == "merge" else 1
        if len(self.factors) != arity:
            raise ValueError(f"{self.kind} acts on {arity} factor(s), got {self.factors}")
        if self.kind == "merge" and self.factors[0] == self.factors[1]:
            raise ValueError("merge needs two distinct factors")
        if not GaussRat.coerce(self.unit).is_unit():
            raise ValueError(f"unit {self.unit} is not a power of i")
        if self.kind in ("vpair_create", "vpair_remove") and GaussRat.coerce(self.unit) not in (I, -I):
            raise ValueError("vertex-pair generators carry the unit ±i")
        if self.twist and self.kind not in ("vpair_create", "vpair_remove"):
            raise ValueError(f"only vertex-pair generators can be twisted, not {self.kind}")

    def __str__(self) -> str:
        u = GaussRat.coerce(self.unit)
        pre = "" if u == ONE else f"{u}·"
        tw = "~" if self.twist else ""
        return f"{pre}{self.kind}{tw}{list(self.factors)}"


def vpair_pair(factor: int, unit: GaussRat = I, twist_: bool = False):
    """A (remove, create) pair of vertex-pair generators that compose to the identity."""
    return (
        FoamGen("vpair_remove", (factor,), unit, twist_),
        FoamGen("vpair_create", (factor,), GaussRat.coerce(unit).inverse(), twist_),
    )


def gen_degree(g: FoamGen) -> int:
    return _GEN_DEGREE[g.kind]


def word_degree(word: Iterable[FoamGen]) -> int:
    """Quantum degree ``-χ + 2·dots`` of a word, summed generator by generator."""
    return sum(gen_degree(g) for g in word)


def _one_factor_image(g: FoamGen, bit: int) -> AlgElem:
    x = AlgElem.basis(bit)
    if g.kind == "dot":
        return alg_mul(AlgElem.x(), x)
    if g.kind == "sing_annulus_left":
        return sing_annulus(x, "left")
    if g.kind == "sing_annulus_right":
        return sing_annulus(x, "right")
    if g.kind in ("vpair_create", "vpair_remove"):
        return twist(x) if g.twist else x
    raise AssertionError(g.kind)


def apply_gen(g: FoamGen, v: TensorVec) -> TensorVec:
    """Apply one generator factor-wise to a tensor vector."""
    n = v.n
    k = g.factors[0]
    unit = GaussPoly.const(g.unit)
    if g.kind == "cup":
        if not 0 <= k <= n:
            raise IndexError(f"cup position {k} out of range for {n} factors")
    elif g.kind == "merge":
        if not all(0 <= f < n for f in g.factors):
            raise IndexError(f"merge factors {g.factors} out of range for {n} factors")
    elif not 0 <= k < n:
        raise IndexError(f"{g.kind} factor {k} out of range for {n} factors")

    if g.kind == "cup":
        out = TensorVec(n + 1)
        for w, c in v.entries.items():
            out.add_term(w[:k] + (0,) + w[k:], c * unit)
        return out

    if g.kind == "cap":
        out = TensorVec(n - 1)
        for w, c in v.entries.items():
            e = alg_counit(AlgElem.basis(w[k]))
            if e:
                out.add_term(w[:k] + w[k + 1:], c * e * unit)
        return out

    if g.kind == "merge":
        k, l = g.factors
        lo, hi = min(k, l), max(k, l)
        out = TensorVec(n - 1)
        for w, c in v.entries.items():
            prod_ = alg_mul(AlgElem.basis(w[k]), AlgElem.basis(w[l]))
            rest = list(w)
            del rest[hi]
            for bit in (0, 1):
                coeff = prod_.coeff(bit)
                if coeff:
                    rest[lo] = bit
                    out.add_term(tuple(rest), c * coeff * unit)
        return out

    if g.kind == "split":
        out = TensorVec(n + 1)
        for w, c in v.entries.items():
            img = alg_comul(AlgElem.basis(w[k]))
            for pair, coeff in img.entries.items():
                out.add_term(w[:k] + pair + w[k + 1:], c * coeff * unit)
        return out

    out = TensorVec(n)
    for w, c in v.entries.items():
        img = _one_factor_image(g, w[k])
        for bit in (0, 1):
            coeff = img.coeff(bit)
            if coeff:
                out.add_term(w[:k] + (bit,) + w[k + 1:], c * coeff * unit)
    return out


def _arity_change(g: FoamGen) -> int:
    return {"cup": 1, "split": 1, "cap": -1, "merge": -1}.get(g.kind, 0)


def compile_word(word: Sequence[FoamGen], n_in: int) -> LinearMap:
    """Compile a composable word (applied left to right) into a matrix."""
    n = n_in
    for pos, g in enumerate(word):
        need = g.factors[0] if g.kind == "cup" else max(g.factors) + 1
        if need > n or (g.kind == "cup" and g.factors[0] > n):
            raise ValueError(f"word not composable at position {pos}: {g} on {n} factors")
        n += _arity_change(g)

    def run(v: TensorVec) -> TensorVec:
        for g in word:
            v = apply_gen(g, v)
        return v

    return LinearMap.from_function(n_in, n, run)


def closed_value(word: Sequence[FoamGen]) -> GaussPoly:
    """Evaluate a closed foam word (0 -> 0)."""
    return compile_word(word, 0).scalar()


def _word_qdeg(w: Word) -> int:
    return 2 * sum(w) - len(w)


def map_degree(m: LinearMap):
    """Common quantum degree of all entries, or None if inhomogeneous / zero."""
    degs = set()
    for w_in, col in m.cols.items():
        for w_out, c in col.items():
            kind, d = gp_degree(c)
            if kind != "homogeneous":
                return None
            degs.add(_word_qdeg(w_out) + d - _word_qdeg(w_in))
    return degs.pop() if len(degs) == 1 else None


# ---------------------------------------------------------------------------
# Closed surfaces and the ufo table


def eval_closed_surface(genus: int, dots: int = 0) -> GaussPoly:
    """Evaluate a connected closed dotted surface by genus reduction.

    A handle is traded for ``2·dot - h·id``; the remaining dotted sphere is
    evaluated by reducing ``X^dots`` with ``X^2 = hX + a``.
    """
    if genus < 0 or dots < 0:
        raise ValueError("genus and dots must be non-negative")
    memo: Dict[Tuple[int, int], GaussPoly] = {}

    def ev(g: int, d: int) -> GaussPoly:
        key = (g, d)
        if key not in memo:
            if g == 0:
                x = AlgElem.one()
                for _ in range(d):
                    x = alg_mul(AlgElem.x(), x)
                memo[key] = alg_counit(x)
            else:
                memo[key] = ev(g - 1, d + 1).scale(2) - _H * ev(g - 1, d)
        return memo[key]

    return ev(genus, dots)


#: Closed ufo-foam values keyed by (dot placement, facet ordering).  The
#: ordering "left" is the fixed reference ordering; "right" reverses it.
UFO_VALUES: Dict[Tuple[str, str], GaussRat] = {
    ("none", "left"): GaussRat(0),
    ("both", "left"): GaussRat(0),
    ("bottom", "left"): I,
    ("top", "left"): -I,
    ("none", "right"): GaussRat(0),
    ("both", "right"): GaussRat(0),
    ("bottom", "right"): -I,
    ("top", "right"): I,
}


def ufo_word(dots: str, ordering: str) -> List[FoamGen]:
    """Word for the ufo: a cup and a cap glued along one singular circle."""
    word = [FoamGen("cup", (0,))]
    if dots in ("bottom", "both"):
        word.append(FoamGen("dot", (0,)))
    word.append(FoamGen(f"sing_annulus_{ordering}", (0,)))
    if dots in ("top", "both"):
        word.append(FoamGen("dot", (0,)))
    word.append(FoamGen("cap", (0,)))
    return word


_GOLDEN = Path(__file__).with_name("data") / "closed_foams.txt"


def parse_word(text: str) -> List[FoamGen]:
    word = []
    for tok in text.split():
        unit = ONE
        if "·" in tok:
            u, tok = tok.split("·", 1)
            unit = GaussRat.coerce(u)
        kind, _, rest = tok.partition("[")
        tw = kind.endswith("~")
        kind = kind.rstrip("~")
        idx = tuple(int(s) for s in rest.rstrip("]").split(",") if s.strip())
        word.append(FoamGen(kind, idx, unit, tw))
    return word


def load_golden(path: Path | None = None) -> List[Tuple[str, List[FoamGen], GaussPoly]]:
    """Read the regression file of closed-foam evaluations.

    Each non-comment line is ``name | word | value`` with the word written as
    space-separated generators such as ``cup[0] dot[0] cap[0]``.
    """
    out = []
    for line in (path or _GOLDEN).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, word, value = (s.strip() for s in line.split("|"))
        out.append((name, parse_word(word), GaussPoly.coerce(value)))
    return out
