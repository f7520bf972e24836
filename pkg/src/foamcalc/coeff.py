"""Exact coefficient arithmetic.

Three rings are used throughout the package:

* ``GaussRat``  -- Gaussian rationals ``re + im*i`` (the field Q(i)),
* ``GaussPoly`` -- polynomials in ``a`` and ``h`` over Q(i), graded by
  ``deg(a) = 4`` and ``deg(h) = 2``,
* ``LaurentBi`` / ``LaurentQ`` -- integer Laurent polynomials in ``q, t``
  (resp. ``q`` alone) used for Poincare polynomials and Euler
  characteristics.

All values are immutable.  Rational parts are kept as ``int`` whenever the
denominator is 1, which keeps the common unit-coefficient case fast.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

__all__ = [
    "GaussRat",
    "GaussPoly",
    "LaurentBi",
    "LaurentQ",
    "ParseError",
    "ZERO",
    "ONE",
    "I",
    "UNITS",
    "gp_arith",
    "gp_specialize",
    "gp_degree",
    "parse_gauss_rat",
    "parse_gauss_poly",
    "parse_laurent",
]

Rational = Union[int, Fraction]


def _norm(x) -> Rational:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


def _fmt_rat(x: Rational) -> str:
    if isinstance(x, int) or x.denominator == 1:
        return str(int(x))
    return f"{x.numerator}/{x.denominator}"


class ParseError(ValueError):
    """Raised by the text parsers; carries a 1-based line and column."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.column = col


# ---------------------------------------------------------------------------
# Gaussian rationals


class GaussRat:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = _norm(re)
        self.im = _norm(im)

    @classmethod
    def coerce(cls, x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, complex):
            if x.real != int(x.real) or x.imag != int(x.imag):
                raise TypeError("only integral complex literals are accepted")
            return cls(int(x.real), int(x.imag))
        if isinstance(x, str):
            return parse_gauss_rat(x)
        raise TypeError(f"cannot coerce {x!r} to GaussRat")

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_zero(self) -> bool:
        return not self

    def is_unit(self) -> bool:
        """True for the four units of Z[i]: 1, -1, i, -i."""
        return (self.re in (1, -1) and self.im == 0) or (
            self.re == 0 and self.im in (1, -1)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except TypeError:
                return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __add__(self, other) -> "GaussRat":
        other = GaussRat.coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other) -> "GaussRat":
        other = GaussRat.coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussRat":
        return GaussRat.coerce(other) - self

    def __mul__(self, other) -> "GaussRat":
        if not isinstance(other, GaussRat):
            if isinstance(other, GaussPoly):
                return NotImplemented
            other = GaussRat.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat(a * c, 0)
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Rational:
        return _norm(self.re * self.re + self.im * self.im)

    def inverse(self) -> "GaussRat":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        if not self.im:
            return GaussRat(Fraction(1) / self.re if self.re not in (1, -1) else self.re, 0)
        n = Fraction(self.norm())
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "GaussRat":
        return self * GaussRat.coerce(other).inverse()

    def __rtruediv__(self, other) -> "GaussRat":
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "GaussRat":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self) -> str:
        return f"GaussRat({self})"

    def __str__(self) -> str:
        re_, im_ = self.re, self.im
        if not im_:
            return _fmt_rat(re_)
        if im_ == 1:
            ims = "i"
        elif im_ == -1:
            ims = "-i"
        else:
            ims = f"{_fmt_rat(im_)}*i"
        if not re_:
            return ims
        sep = "" if ims.startswith("-") else "+"
        return f"{_fmt_rat(re_)}{sep}{ims}"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)
UNITS = (ONE, I, -ONE, -I)


# ---------------------------------------------------------------------------
# Polynomials in a, h

Monomial = Tuple[int, int]


class GaussPoly:
    """A polynomial ``sum c[p,q] a^p h^q`` with Q(i) coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Dict[Monomial, GaussRat] | None = None):
        clean: Dict[Monomial, GaussRat] = {}
        if terms:
            for mono, c in terms.items():
                c = GaussRat.coerce(c)
                if c:
                    pa, ph = mono
                    if pa < 0 or ph < 0:
                        raise ValueError(f"negative exponent in {mono}")
                    clean[(int(pa), int(ph))] = c
        self.terms = clean
        self._hash = None

    # -- constructors
    @classmethod
    def const(cls, c) -> "GaussPoly":
        return cls({(0, 0): GaussRat.coerce(c)})

    @classmethod
    def coerce(cls, x) -> "GaussPoly":
        if isinstance(x, GaussPoly):
            return x
        if isinstance(x, str):
            return parse_gauss_poly(x)
        return cls.const(x)

    @classmethod
    def monomial(cls, pa: int, ph: int, c=1) -> "GaussPoly":
        return cls({(pa, ph): GaussRat.coerce(c)})

    # -- queries
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0)}

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((0, 0), ZERO)

    def is_unit(self) -> bool:
        return self.is_constant() and bool(self.terms) and self.terms[(0, 0)].is_unit()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussPoly):
            try:
                other = GaussPoly.coerce(other)
            except (TypeError, ParseError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic
    def __add__(self, other) -> "GaussPoly":
        other = GaussPoly.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            out[m] = c if s is None else s + c
        return GaussPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "GaussPoly":
        return GaussPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "GaussPoly":
        return self + (-GaussPoly.coerce(other))

    def __rsub__(self, other) -> "GaussPoly":
        return GaussPoly.coerce(other) - self

    def __mul__(self, other) -> "GaussPoly":
        if isinstance(other, (GaussRat, int, Fraction)):
            c = GaussRat.coerce(other)
            return GaussPoly({m: v * c for m, v in self.terms.items()})
        other = GaussPoly.coerce(other)
        out: Dict[Monomial, GaussRat] = {}
        for (p1, q1), c1 in self.terms.items():
            for (p2, q2), c2 in other.terms.items():
                m = (p1 + p2, q1 + q2)
                v = c1 * c2
                s = out.get(m)
                out[m] = v if s is None else s + v
        return GaussPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "GaussPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = GaussPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "GaussPoly":
        return self * GaussRat.coerce(c)

    # -- grading and evaluation
    def degree(self):
        return gp_degree(self)

    def specialize(self, a_val, h_val) -> GaussRat:
        return gp_specialize(self, a_val, h_val)

    def __repr__(self) -> str:
        return f"GaussPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        # descending graded degree, then by power of a
        for (pa, ph) in sorted(self.terms, key=lambda m: (-(4 * m[0] + 2 * m[1]), -m[0])):
            c = self.terms[(pa, ph)]
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("a", pa), ("h", ph)) if e
            )
            pieces.append(_signed_term(c, mono))
        return _join_terms(pieces)


def _signed_term(c: GaussRat, mono: str) -> str:
    """Render ``c*mono``; returns a string that may start with '-'."""
    if not mono:
        return str(c)
    if c == ONE:
        return mono
    if c == -ONE:
        return "-" + mono
    if c.im and c.re:
        return f"({c})*{mono}"
    return f"{c}*{mono}"


def _join_terms(pieces) -> str:
    out = pieces[0]
    for p in pieces[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def gp_arith(x: GaussPoly, y: GaussPoly, op: str) -> GaussPoly:
    """Ring operation ``op`` in {'add', 'sub', 'mul'} on two polynomials."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


def gp_specialize(x: GaussPoly, a_val, h_val) -> GaussRat:
    """Evaluate at ``a = a_val``, ``h = h_val``."""
    a_val = GaussRat.coerce(a_val)
    h_val = GaussRat.coerce(h_val)
    out = ZERO
    apow: Dict[int, GaussRat] = {}
    hpow: Dict[int, GaussRat] = {}
    for (pa, ph), c in x.terms.items():
        if pa not in apow:
            apow[pa] = a_val ** pa
        if ph not in hpow:
            hpow[ph] = h_val ** ph
        out = out + c * apow[pa] * hpow[ph]
    return out


def gp_degree(x: GaussPoly):
    """Return ``("homogeneous", d)``, ``("inhomogeneous", None)`` or ``("zero", None)``."""
    if not x.terms:
        return ("zero", None)
    degs = {4 * pa + 2 * ph for pa, ph in x.terms}
    if len(degs) == 1:
        return ("homogeneous", degs.pop())
    return ("inhomogeneous", None)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentBi:
    """Integer Laurent polynomial in ``q`` and ``t``; keys are ``(exp_q, exp_t)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Tuple[int, int], int] | None = None):
        self.terms = {
            (int(j), int(i)): int(c) for (j, i), c in (terms or {}).items() if c
        }

    @classmethod
    def monomial(cls, j: int, i: int = 0, c: int = 1) -> "LaurentBi":
        return cls({(j, i): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentBi):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == LaurentBi({(0, 0): other}).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "LaurentBi":
        out = dict(self.terms)
        for k, c in _as_laurent(other, type(self)).terms.items():
            out[k] = out.get(k, 0) + c
        return type(self)._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other, type(self)))

    def __rsub__(self, other):
        return _as_laurent(other, type(self)) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)._wrap({k: c * other for k, c in self.terms.items()})
        other = _as_laurent(other, type(self))
        out: Dict[Tuple[int, int], int] = {}
        for (j1, i1), c1 in self.terms.items():
            for (j2, i2), c2 in other.terms.items():
                k = (j1 + j2, i1 + i2)
                out[k] = out.get(k, 0) + c1 * c2
        return type(self)._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((j, i), c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials can be inverted")
            return type(self)._wrap({(j * k, i * k): c ** (-k)})
        out = type(self)._wrap({(0, 0): 1})
        for _ in range(k):
            out = out * self
        return out

    @classmethod
    def _wrap(cls, terms):
        return LaurentBi(terms)

    def at_t(self, t_val: int) -> "LaurentQ":
        """Specialize ``t``; ``t = -1`` is the Euler-characteristic map."""
        out: Dict[int, int] = {}
        for (j, i), c in self.terms.items():
            if i < 0 and t_val not in (1, -1):
                raise ValueError("negative t power at a non-unit value")
            v = c * (t_val ** i if i >= 0 else t_val ** (-i))
            out[j] = out.get(j, 0) + v
        return LaurentQ(out)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (j, i) in sorted(self.terms, key=lambda k: (k[1], k[0])):
            c = self.terms[(j, i)]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("q", j), ("t", i)) if e
            )
            pieces.append(_int_term(c, mono))
        return _join_terms(pieces)


class LaurentQ(LaurentBi):
    """Integer Laurent polynomial in ``q`` alone (stored with ``exp_t = 0``)."""

    __slots__ = ()

    def __init__(self, terms=None):
        if terms and not isinstance(next(iter(terms)), tuple):
            terms = {(j, 0): c for j, c in terms.items()}
        super().__init__(terms)
        if any(i for _, i in self.terms):
            raise ValueError("LaurentQ cannot carry powers of t")

    @classmethod
    def _wrap(cls, terms):
        return LaurentQ(terms)

    @classmethod
    def q(cls, j: int = 1, c: int = 1) -> "LaurentQ":
        return cls({j: c})

    def coefficients(self) -> Dict[int, int]:
        return {j: c for (j, _), c in sorted(self.terms.items())}

    def render_terms(self) -> str:
        """Sorted ``c*q^j`` terms, e.g. ``1*q^-1 + 1*q^1``."""
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*q^{j}" for j, c in self.coefficients().items())


def _as_laurent(x, cls):
    if isinstance(x, LaurentBi):
        return x
    if isinstance(x, int):
        return cls._wrap({(0, 0): x})
    raise TypeError(f"cannot combine {cls.__name__} with {x!r}")


def _int_term(c: int, mono: str) -> str:
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


# ---------------------------------------------------------------------------
# Parsing
#
# One small recursive-descent expression parser serves every ring: sums,
# differences, products (explicit '*' or juxtaposition), integer powers,
# parentheses, integer/decimal-free rational literals and named symbols.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z])|(\^|\*|\+|-|/|\(|\)))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        out.append((m.group(m.lastindex), m.lastindex, start))
        pos = m.end()
    out.append(("", 0, len(text)))
    return out


class _Parser:
    def __init__(self, text, symbols, make_int, allow_neg_pow):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        self.symbols = symbols
        self.make_int = make_int
        self.allow_neg_pow = allow_neg_pow

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.text, self.peek()[2])

    def parse(self):
        if self.peek()[1] == 0:
            self.fail("empty expression")
        val = self.expr()
        if self.peek()[1] != 0:
            self.fail(f"unexpected token {self.peek()[0]!r}")
        return val

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[1] == 3:
            sign = -1 if self.take()[0] == "-" else 1
        val = self.term()
        if sign < 0:
            val = -val
        while self.peek()[0] in ("+", "-") and self.peek()[1] == 3:
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.power()
        while True:
            tok, kind, _ = self.peek()
            if kind == 3 and tok == "*":
                self.take()
                val = val * self.power()
            elif kind == 3 and tok == "/":
                self.take()
                pos = self.peek()[2]
                den = self.power()
                val = self.divide(val, den, pos)
            elif kind in (1, 2) or (kind == 3 and tok == "("):
                val = val * self.power()
            else:
                return val

    def divide(self, num, den, pos):
        try:
            inv = self.invert(den)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), self.text, pos) from None
        return num * inv

    def invert(self, den):
        raise ValueError("division is not supported here")

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] in ("-", "+") and self.peek()[1] == 3:
                neg = self.take()[0] == "-"
            tok, kind, pos = self.take()
            if kind != 1:
                raise ParseError("expected integer exponent", self.text, pos)
            e = int(tok)
            if neg:
                if not self.allow_neg_pow:
                    raise ParseError("negative exponent not allowed", self.text, pos)
                try:
                    return base ** (-e)
                except ValueError as exc:
                    raise ParseError(str(exc), self.text, pos) from None
            return base ** e
        return base

    def atom(self):
        tok, kind, pos = self.take()
        if kind == 1:
            return self.make_int(int(tok))
        if kind == 2:
            if tok not in self.symbols:
                raise ParseError(f"unknown symbol {tok!r}", self.text, pos)
            return self.symbols[tok]
        if tok == "(":
            val = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return val
        if tok in ("-", "+"):
            val = self.power()
            return -val if tok == "-" else val
        raise ParseError(f"unexpected token {tok!r}" if tok else "unexpected end of input", self.text, pos)


class _PolyParser(_Parser):
    def invert(self, den):
        if not den.is_constant() or not den:
            raise ValueError("can only divide by a nonzero constant")
        return GaussPoly.const(den.constant_value().inverse())


def parse_gauss_poly(text: str) -> GaussPoly:
    """Parse e.g. ``"2*a + h^2"``, ``"(1+2i)*a*h"``, ``"1/2 - i*h"``."""
    symbols = {
        "a": GaussPoly.monomial(1, 0),
        "h": GaussPoly.monomial(0, 1),
        "i": GaussPoly.const(I),
    }
    return _PolyParser(text, symbols, GaussPoly.const, False).parse()


def parse_gauss_rat(text: str) -> GaussRat:
    """Parse a Gaussian rational literal such as ``"1/2"``, ``"-i"``, ``"2+3i"``."""
    poly = parse_gauss_poly(text)
    if not poly.is_constant():
        raise ParseError(f"{text!r} is not a constant", text, 0)
    return poly.constant_value()


def parse_laurent(text: str, allow_t: bool = True) -> LaurentBi:
    """Parse an integer Laurent polynomial in ``q`` (and ``t``)."""
    symbols = {"q": LaurentBi.monomial(1, 0)}
    if allow_t:
        symbols["t"] = LaurentBi.monomial(0, 1)
    val = _Parser(text, symbols, lambda n: LaurentBi({(0, 0): n}), True).parse()
    return val if allow_t else LaurentQ(val.terms)


def iter_units() -> Iterable[GaussRat]:
    return iter(UNITS)
