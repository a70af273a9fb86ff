"""Sparse exact polynomials over a bigraded ring K[x1..xm, y1..yn].

Every x variable has bidegree (1,0) and every y variable (0,1).  A polynomial
is a map from exponent tuples to nonzero field elements; the zero polynomial
is the empty map, so equality is term-order independent.  Values are
immutable after construction and safe to share across threads.

Rings may carry ``aux`` leading slots (t1, t2, ...) used internally for
elimination; user-facing rings always have ``aux == 0`` and the text syntax
only knows x and y variables.

Text syntax: terms joined by ``+``/``-``, ``*`` for products, ``^`` for
powers, variables ``x1..xm``/``y1..yn``, integer or ``p/q`` coefficients,
parentheses allowed.  Printing is canonical: terms in descending default
order, exact coefficients, so printing then parsing is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import (
    NotBihomogeneousError,
    ParseError,
    RingMismatchError,
    ZeroPolynomialError,
)
from .fields import QQ, RationalField
from .orders import MonomialOrder

Monomial = tuple  # exponent tuple, one nonnegative int per ring variable


def mono_mul(u: Monomial, v: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(u, v))


def mono_div(u: Monomial, v: Monomial) -> Monomial:
    """u / v, assuming v divides u."""
    return tuple(a - b for a, b in zip(u, v))


def mono_divides(u: Monomial, v: Monomial) -> bool:
    return all(a <= b for a, b in zip(u, v))


def mono_lcm(u: Monomial, v: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(u, v))


def mono_gcd(u: Monomial, v: Monomial) -> Monomial:
    return tuple(min(a, b) for a, b in zip(u, v))


def mono_degree(u: Monomial) -> int:
    return sum(u)


def mono_support(u: Monomial) -> frozenset:
    return frozenset(i for i, e in enumerate(u) if e)


class BiDegree(NamedTuple):
    a: int  # x-degree
    b: int  # y-degree

    def __add__(self, other):
        return BiDegree(self.a + other.a, self.b + other.b)

    def __str__(self):
        return f"({self.a}, {self.b})"


@dataclass(frozen=True)
class BigradedRing:
    """K[x1..xm, y1..yn] with an optional block of internal aux variables.

    Variable layout is fixed: aux block first, then the x block, then the
    y block.  The default order is grevlex on that layout.
    """

    m: int
    n: int
    field: object = QQ
    order: MonomialOrder = MonomialOrder()
    aux: int = 0

    def __post_init__(self):
        if self.m < 0 or self.n < 1 or self.aux < 0:
            raise ValueError("need m >= 0, n >= 1, aux >= 0")

    @property
    def nvars(self) -> int:
        return self.aux + self.m + self.n

    @property
    def x_range(self) -> range:
        return range(self.aux, self.aux + self.m)

    @property
    def y_range(self) -> range:
        return range(self.aux + self.m, self.nvars)

    def variable_name(self, index: int) -> str:
        if index < self.aux:
            return f"t{index + 1}"
        if index < self.aux + self.m:
            return f"x{index - self.aux + 1}"
        return f"y{index - self.aux - self.m + 1}"

    def variable_index(self, name: str) -> int | None:
        """Index of ``x<i>``/``y<j>`` or None if out of range / unknown."""
        if len(name) < 2 or name[0] not in "xy" or not name[1:].isdigit():
            return None
        i = int(name[1:])
        if name[0] == "x":
            return self.aux + i - 1 if 1 <= i <= self.m else None
        return self.aux + self.m + i - 1 if 1 <= i <= self.n else None

    def sort_key(self):
        return self.order.sort_key(self.nvars)

    # ---- element constructors -------------------------------------------------

    def constant(self, value) -> "Polynomial":
        c = self.field.of(value)
        if not c:
            return self.zero()
        return Polynomial._raw(self, {(0,) * self.nvars: c})

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def gen(self, index: int) -> "Polynomial":
        if not (0 <= index < self.nvars):
            raise IndexError("variable index out of range")
        exps = tuple(1 if i == index else 0 for i in range(self.nvars))
        return Polynomial._raw(self, {exps: self.field.one})

    def x(self, i: int) -> "Polynomial":
        """x_i, 1-based."""
        if not (1 <= i <= self.m):
            raise IndexError(f"x{i} not in ring with m={self.m}")
        return self.gen(self.aux + i - 1)

    def y(self, j: int) -> "Polynomial":
        """y_j, 1-based."""
        if not (1 <= j <= self.n):
            raise IndexError(f"y{j} not in ring with n={self.n}")
        return self.gen(self.aux + self.m + j - 1)

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError("bad exponent tuple")
        c = self.field.of(coeff)
        return Polynomial._raw(self, {exps: c}) if c else self.zero()

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    # ---- derived rings ---------------------------------------------------------

    def extended(self, extra: int = 1) -> "BigradedRing":
        """Same ring with ``extra`` more aux slots prepended (for elimination)."""
        return BigradedRing(self.m, self.n, self.field, self.order, self.aux + extra)

    def swapped(self) -> "BigradedRing":
        """The ring with the x and y blocks exchanged (needs m >= 1, aux == 0)."""
        if self.aux or self.m < 1:
            raise ValueError("block swap needs aux == 0 and m >= 1")
        return BigradedRing(self.n, self.m, self.field, self.order)

    def key(self):
        return (self.m, self.n, self.aux, self.field.name, self.order)

    def __str__(self):
        return f"{self.field}[x1..x{self.m}, y1..y{self.n}]" + (
            f"+{self.aux}aux" if self.aux else ""
        )


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: BigradedRing, terms):
        cleaned = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != ring.nvars or any(e < 0 for e in exps):
                raise ValueError("bad exponent tuple")
            c = ring.field.of(coeff)
            if c:
                cleaned[exps] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", cleaned)

    @staticmethod
    def _raw(ring: BigradedRing, terms: dict) -> "Polynomial":
        """Trusted constructor: terms already canonical (no zeros, right width)."""
        p = object.__new__(Polynomial)
        object.__setattr__(p, "ring", ring)
        object.__setattr__(p, "terms", terms)
        return p

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # ---- predicates ------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def is_homogeneous(self) -> bool:
        degs = {mono_degree(e) for e in self.terms}
        return len(degs) <= 1

    def is_bihomogeneous(self) -> bool:
        return len({self._term_bidegree(e) for e in self.terms}) <= 1

    def _term_bidegree(self, exps) -> BiDegree:
        r = self.ring
        return BiDegree(
            sum(exps[i] for i in r.x_range), sum(exps[j] for j in r.y_range)
        )

    def bidegree(self) -> BiDegree:
        """The common bidegree of all terms; needs a nonzero bihomogeneous input."""
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no bidegree")
        degs = {self._term_bidegree(e) for e in self.terms}
        if len(degs) > 1:
            raise NotBihomogeneousError(
                f"terms of distinct bidegrees {sorted(degs)} in {self}"
            )
        return degs.pop()

    def total_degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no degree")
        return max(mono_degree(e) for e in self.terms)

    def support_variables(self) -> frozenset:
        out = set()
        for e in self.terms:
            out.update(mono_support(e))
        return frozenset(out)

    # ---- arithmetic ------------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return Polynomial._raw(self.ring, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_ring(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = mono_mul(e1, e2)
                s = out.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Polynomial._raw(self.ring, out)

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, coeff) -> "Polynomial":
        c = self.ring.field.of(coeff)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, coeff, mono: Monomial) -> "Polynomial":
        c = self.ring.field.of(coeff)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring, {mono_mul(e, mono): v * c for e, v in self.terms.items()}
        )

    # ---- leading data ----------------------------------------------------------

    def leading_monomial(self, keyfn=None) -> Monomial:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading monomial")
        return max(self.terms, key=keyfn or self.ring.sort_key())

    def leading_coefficient(self, keyfn=None):
        return self.terms[self.leading_monomial(keyfn)]

    def monic(self, keyfn=None) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient(keyfn)
        one = self.ring.field.one
        if lc == one:
            return self
        return self.scale(one / lc)

    def sorted_terms(self) -> list:
        """(monomial, coefficient) pairs in descending default order."""
        keyfn = self.ring.sort_key()
        return [(e, self.terms[e]) for e in sorted(self.terms, key=keyfn, reverse=True)]

    # ---- structural maps -------------------------------------------------------

    def substitute_variable(self, index: int, replacement: "Polynomial") -> "Polynomial":
        """Substitute ``replacement`` for the variable at ``index``."""
        self._check_ring(replacement)
        powers = {0: self.ring.one()}

        def power(k):
            if k not in powers:
                powers[k] = power(k - 1) * replacement
            return powers[k]

        out = self.ring.zero()
        for e, c in self.terms.items():
            k = e[index]
            base = e[:index] + (0,) + e[index + 1 :]
            out = out + power(k).mul_term(c, base)
        return out

    def embedded(self, target: BigradedRing) -> "Polynomial":
        """Reinterpret in a ring with more aux slots (exponents shifted right)."""
        extra = target.aux - self.ring.aux
        if extra < 0 or (target.m, target.n) != (self.ring.m, self.ring.n):
            raise RingMismatchError("embedding target must add aux slots only")
        pad = (0,) * extra
        return Polynomial._raw(target, {pad + e: c for e, c in self.terms.items()})

    def aux_stripped(self, target: BigradedRing) -> "Polynomial":
        """Inverse of :meth:`embedded`; every aux exponent being removed must be 0."""
        drop = self.ring.aux - target.aux
        if drop < 0:
            raise RingMismatchError("target has more aux slots")
        terms = {}
        for e, c in self.terms.items():
            if any(e[:drop]):
                raise ValueError("polynomial still involves aux variables")
            terms[e[drop:]] = c
        return Polynomial._raw(target, terms)

    def block_swapped(self, target: BigradedRing) -> "Polynomial":
        """Image under the ring isomorphism exchanging the x and y blocks."""
        r = self.ring
        if (target.m, target.n) != (r.n, r.m) or r.aux or target.aux:
            raise RingMismatchError("target must be the swapped ring")
        terms = {}
        for e, c in self.terms.items():
            terms[e[r.m :] + e[: r.m]] = c
        return Polynomial._raw(target, terms)

    # ---- equality / hashing / printing -----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.key(), frozenset(self.terms.items())))

    def canonical_key(self):
        """Hashable, order-deterministic identity (for memo tables)."""
        return tuple(sorted(self.terms.items(), key=lambda item: item[0]))

    def _format_monomial(self, exps) -> str:
        parts = []
        for i, e in enumerate(exps):
            if e == 0:
                continue
            name = self.ring.variable_name(i)
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        one = self.ring.field.one
        rational = isinstance(self.ring.field, RationalField)
        chunks = []
        for e, c in self.sorted_terms():
            negative = rational and c < 0
            mag = -c if negative else c
            mono = self._format_monomial(e)
            if not mono:
                body = str(mag)
            elif mag == one:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not chunks:
                chunks.append(f"-{body}" if negative else body)
            else:
                chunks.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(chunks)

    def __repr__(self):
        return f"<{self} over {self.ring}>"


# ---- parsing -------------------------------------------------------------------


class _Tokenizer:
    """Tokens with 1-based line/column positions."""

    def __init__(self, text: str, line: int = 1, column: int = 1):
        self.tokens = []
        i, ln, col = 0, line, column
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                ln, col = ln + 1, 1
                i += 1
                continue
            if ch.isspace():
                i += 1
                col += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], ln, col))
                col += j - i
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("name", text[i:j], ln, col))
                col += j - i
                i = j
                continue
            if ch in "+-*/^()":
                self.tokens.append(("op", ch, ln, col))
                i += 1
                col += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", ln, col)
        self.tokens.append(("end", "", ln, col))
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val, ln, col = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val!r}", ln, col)


def parse_polynomial(
    ring: BigradedRing, text: str, line: int = 1, column: int = 1
) -> Polynomial:
    """Parse the textual polynomial syntax; raises :class:`ParseError` with position."""
    tz = _Tokenizer(text, line, column)

    def parse_expr() -> Polynomial:
        kind, val, _, _ = tz.peek()
        negate = False
        if kind == "op" and val in "+-":
            tz.next()
            negate = val == "-"
        acc = parse_term()
        if negate:
            acc = -acc
        while True:
            kind, val, _, _ = tz.peek()
            if kind == "op" and val in "+-":
                tz.next()
                rhs = parse_term()
                acc = acc - rhs if val == "-" else acc + rhs
            else:
                return acc

    def parse_term() -> Polynomial:
        acc = parse_factor()
        while True:
            kind, val, _, _ = tz.peek()
            if kind == "op" and val == "*":
                tz.next()
                acc = acc * parse_factor()
            else:
                return acc

    def parse_factor() -> Polynomial:
        base = parse_atom()
        kind, val, _, _ = tz.peek()
        if kind == "op" and val == "^":
            tz.next()
            kind, val, ln, col = tz.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", ln, col)
            return base ** int(val)
        return base

    def parse_atom() -> Polynomial:
        kind, val, ln, col = tz.next()
        if kind == "int":
            num = int(val)
            kind2, val2, _, _ = tz.peek()
            if kind2 == "op" and val2 == "/":
                tz.next()
                kind3, val3, ln3, col3 = tz.next()
                if kind3 != "int" or int(val3) == 0:
                    raise ParseError("denominator must be a nonzero integer", ln3, col3)
                return ring.constant(Fraction(num, int(val3)))
            return ring.constant(num)
        if kind == "name":
            idx = ring.variable_index(val)
            if idx is None:
                raise ParseError(
                    f"unknown variable {val!r} in ring with m={ring.m}, n={ring.n}",
                    ln,
                    col,
                )
            return ring.gen(idx)
        if kind == "op" and val == "(":
            inner = parse_expr()
            tz.expect_op(")")
            return inner
        raise ParseError(f"expected a coefficient, variable, or '(', found {val!r}", ln, col)

    result = parse_expr()
    kind, val, ln, col = tz.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", ln, col)
    return result
