"""Groebner engine and ideal calculus.

Buchberger's algorithm with Gebauer-Moller pair pruning and normal (minimal
lcm) selection, returning the unique reduced basis.  On top of it: ideal
membership, intersection (one auxiliary variable plus a block elimination
order), ideal quotient, saturation, and Krull dimension via maximal
independent variable sets of the leading-term ideal.

Monomial ideals take combinatorial shortcuts everywhere (their reduced basis
is the minimal generator set, intersections are pairwise lcms, colons divide
exponents), and colons by a single variable of a homogeneous ideal are read
off a grevlex basis with that variable rotated last.  Each shortcut computes
the same ideal as the general elimination route; the test suite compares the
two on random inputs.

Reduced bases are memoized per process, keyed by ring, order, and the
canonical generator list.  The memo is guarded by a lock so ideals can be
shared across threads.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .errors import RingMismatchError, ZeroPolynomialError
from .orders import MonomialOrder
from .poly import (
    BigradedRing,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    mono_support,
)

# ---- division ------------------------------------------------------------------


def _reduce_terms(terms: dict, reducers: list, keyfn, zero) -> dict:
    """Fully reduce a term dict by monic reducers [(lm, terms), ...]."""
    p = dict(terms)
    remainder = {}
    while p:
        m = max(p, key=keyfn)
        c = p.pop(m)
        hit = None
        for lm, body in reducers:
            if mono_divides(lm, m):
                hit = (lm, body)
                break
        if hit is None:
            remainder[m] = c
            continue
        lm, body = hit
        shift = mono_div(m, lm)
        for bm, bc in body.items():
            if bm == lm:
                continue
            e = mono_mul(bm, shift)
            s = p.get(e, zero) - c * bc
            if s:
                p[e] = s
            elif e in p:
                del p[e]
    return remainder


def normal_form(
    f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder | None = None
) -> Polynomial:
    """Remainder of ``f`` on division by a Groebner basis.

    No term of the result is divisible by a leading term of the basis, and
    the map is idempotent.  The basis is trusted to be a Groebner basis for
    its ideal under ``order``.
    """
    ring = f.ring
    keyfn = (order or ring.order).sort_key(ring.nvars)
    reducers = []
    for g in basis:
        if g.ring != ring:
            raise RingMismatchError("basis element from a different ring")
        if g:
            lm = g.leading_monomial(keyfn)
            lc = g.terms[lm]
            body = g.terms if lc == ring.field.one else g.scale(ring.field.one / lc).terms
            reducers.append((lm, body))
    out = _reduce_terms(f.terms, reducers, keyfn, ring.field.zero)
    return Polynomial._raw(ring, out)


def exact_div(g: Polynomial, f: Polynomial) -> Polynomial:
    """The quotient g/f when f divides g exactly."""
    if not f:
        raise ZeroPolynomialError("division by the zero polynomial")
    ring = g.ring
    keyfn = ring.sort_key()
    lmf = f.leading_monomial(keyfn)
    lcf = f.terms[lmf]
    p = dict(g.terms)
    quotient = {}
    while p:
        m = max(p, key=keyfn)
        c = p.pop(m)
        if not mono_divides(lmf, m):
            raise ValueError(f"{f} does not divide {g}")
        shift = mono_div(m, lmf)
        q = c / lcf
        quotient[shift] = q
        for bm, bc in f.terms.items():
            if bm == lmf:
                continue
            e = mono_mul(bm, shift)
            s = p.get(e, ring.field.zero) - q * bc
            if s:
                p[e] = s
            elif e in p:
                del p[e]
    return Polynomial._raw(ring, quotient)


# ---- Buchberger ------------------------------------------------------------------


def _spoly_terms(f: Polynomial, g: Polynomial, keyfn) -> dict:
    """S-polynomial term dict for monic f, g."""
    lf = f.leading_monomial(keyfn)
    lg = g.leading_monomial(keyfn)
    lcm = mono_lcm(lf, lg)
    sf = mono_div(lcm, lf)
    sg = mono_div(lcm, lg)
    out = {}
    for e, c in f.terms.items():
        out[mono_mul(e, sf)] = c
    for e, c in g.terms.items():
        e2 = mono_mul(e, sg)
        s = out.get(e2)
        s = -c if s is None else s - c
        if s:
            out[e2] = s
        elif e2 in out:
            del out[e2]
    return out


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    ring = f.ring
    keyfn = (order or ring.order).sort_key(ring.nvars)
    return Polynomial._raw(ring, _spoly_terms(f.monic(keyfn), g.monic(keyfn), keyfn))


def _update_pairs(G: list, lms: list, B: list, h: Polynomial, keyfn):
    """Gebauer-Moller pair update: append h to G, prune and extend B.

    B holds (lcm, i, j) with i < j indices into G.  The three classic
    criteria are applied: new pairs whose lcm is a multiple of another new
    pair's lcm are dropped, coprime lead pairs are dropped, and old pairs
    strictly superseded by the new element are dropped.
    """
    t = len(G)
    lmh = h.leading_monomial(keyfn)

    candidates = list(range(t))
    lcms = {i: mono_lcm(lms[i], lmh) for i in candidates}
    kept: list[int] = []
    while candidates:
        i = candidates.pop()
        li = lcms[i]
        coprime = li == mono_mul(lms[i], lmh)
        dominated = any(mono_divides(lcms[j], li) for j in candidates) or any(
            mono_divides(lcms[j], li) for j in kept
        )
        if coprime or not dominated:
            kept.append(i)
    new_pairs = [
        (lcms[i], i, t) for i in kept if lcms[i] != mono_mul(lms[i], lmh)
    ]

    surviving = []
    for lcm_ij, i, j in B:
        if (
            not mono_divides(lmh, lcm_ij)
            or mono_lcm(lms[i], lmh) == lcm_ij
            or mono_lcm(lms[j], lmh) == lcm_ij
        ):
            surviving.append((lcm_ij, i, j))
    B[:] = surviving + new_pairs
    G.append(h)
    lms.append(lmh)


def _autoreduce(polys: list, keyfn) -> tuple:
    """Interreduce a generating set into the reduced (monic) basis."""
    current = [p.monic(keyfn) for p in polys if p]
    # Drop elements whose leading monomial another element's divides.
    current.sort(key=lambda p: keyfn(p.leading_monomial(keyfn)))
    minimal = []
    for p in current:
        lm = p.leading_monomial(keyfn)
        if not any(mono_divides(q.leading_monomial(keyfn), lm) for q in minimal):
            minimal.append(p)
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(minimal):
            others = [
                (q.leading_monomial(keyfn), q.terms)
                for j, q in enumerate(minimal)
                if j != i
            ]
            reduced = _reduce_terms(p.terms, others, keyfn, p.ring.field.zero)
            q = Polynomial._raw(p.ring, reduced).monic(keyfn)
            if q.terms != p.terms:
                minimal[i] = q
                changed = True
    minimal.sort(key=lambda p: keyfn(p.leading_monomial(keyfn)), reverse=True)
    return tuple(minimal)


def _minimal_monomials(monos: Iterable[tuple]) -> tuple:
    """Minimal elements of a set of monomials under divisibility."""
    uniq = sorted(set(monos), key=lambda e: (sum(e), e))
    out = []
    for m in uniq:
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return tuple(out)


def buchberger(
    gens: Sequence[Polynomial], order: MonomialOrder | None = None
) -> tuple:
    """The reduced Groebner basis of the ideal generated by ``gens``."""
    polys = [g for g in gens if g]
    if not polys:
        return ()
    ring = polys[0].ring
    for g in polys:
        if g.ring != ring:
            raise RingMismatchError("generators from different rings")
    order = order or ring.order
    keyfn = order.sort_key(ring.nvars)

    if all(p.is_monomial() for p in polys):
        # Monomial ideals: the reduced basis is the minimal generator set,
        # independent of the order.
        one = ring.field.one
        monos = _minimal_monomials(e for p in polys for e in p.terms)
        basis = [Polynomial._raw(ring, {m: one}) for m in monos]
        basis.sort(key=lambda p: keyfn(p.leading_monomial(keyfn)), reverse=True)
        return tuple(basis)

    G: list[Polynomial] = []
    lms: list[tuple] = []
    B: list[tuple] = []

    def reducers():
        return [(lms[i], G[i].terms) for i in range(len(G))]

    for f in sorted(polys, key=lambda p: keyfn(p.leading_monomial(keyfn))):
        r = _reduce_terms(f.terms, reducers(), keyfn, ring.field.zero)
        if r:
            h = Polynomial._raw(ring, r).monic(keyfn)
            _update_pairs(G, lms, B, h, keyfn)

    while B:
        best = min(range(len(B)), key=lambda k: keyfn(B[k][0]))
        _, i, j = B.pop(best)
        s = _spoly_terms(G[i], G[j], keyfn)
        r = _reduce_terms(s, reducers(), keyfn, ring.field.zero)
        if r:
            h = Polynomial._raw(ring, r).monic(keyfn)
            _update_pairs(G, lms, B, h, keyfn)

    return _autoreduce(G, keyfn)


# ---- ideals ----------------------------------------------------------------------

_GB_MEMO: dict = {}
_GB_LOCK = threading.Lock()


class Ideal:
    """An ideal given by generators, with cached reduced Groebner bases."""

    __slots__ = ("ring", "gens", "_bases")

    def __init__(self, ring: BigradedRing, gens: Iterable[Polynomial] = ()):
        kept = []
        for g in gens:
            if g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if g:
                kept.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "gens", tuple(kept))
        object.__setattr__(self, "_bases", {})

    def __setattr__(self, *_):
        raise AttributeError("Ideal is immutable")

    @classmethod
    def unit(cls, ring: BigradedRing) -> "Ideal":
        return cls(ring, (ring.one(),))

    @classmethod
    def zero(cls, ring: BigradedRing) -> "Ideal":
        return cls(ring, ())

    def _memo_key(self, order: MonomialOrder):
        return (self.ring.key(), order, tuple(g.canonical_key() for g in self.gens))

    def groebner_basis(self, order: MonomialOrder | None = None) -> tuple:
        order = order or self.ring.order
        cached = self._bases.get(order)
        if cached is not None:
            return cached
        key = self._memo_key(order)
        with _GB_LOCK:
            cached = _GB_MEMO.get(key)
        if cached is None:
            cached = buchberger(self.gens, order)
            with _GB_LOCK:
                _GB_MEMO[key] = cached
        self._bases[order] = cached
        return cached

    def leading_monomials(self, order: MonomialOrder | None = None) -> tuple:
        order = order or self.ring.order
        keyfn = order.sort_key(self.ring.nvars)
        return tuple(g.leading_monomial(keyfn) for g in self.groebner_basis(order))

    # ---- predicates ----------------------------------------------------------

    def is_zero_ideal(self) -> bool:
        return not self.gens

    def is_unit_ideal(self) -> bool:
        if not self.gens:
            return False
        if any(g.is_constant() for g in self.gens):
            return True
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_monomial_ideal(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def minimal_monomial_generators(self) -> tuple:
        """Exponent tuples of the unique minimal monomial generators."""
        from .errors import NotMonomialError

        if not self.is_monomial_ideal():
            raise NotMonomialError(f"{self} is not a monomial ideal")
        return _minimal_monomials(e for g in self.gens for e in g.terms)

    # ---- membership and comparisons -------------------------------------------

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError("element from a different ring")
        if not f:
            return True
        if self.is_monomial_ideal():
            monos = self.minimal_monomial_generators()
            return all(
                any(mono_divides(m, e) for m in monos) for e in f.terms
            )
        return not normal_form(f, self.groebner_basis(), self.ring.order)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        if self.ring != other.ring:
            return False
        if self.is_monomial_ideal() and other.is_monomial_ideal():
            return self.minimal_monomial_generators() == other.minimal_monomial_generators()
        return self.groebner_basis() == other.groebner_basis()

    # ---- algebra ----------------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        if self.ring != other.ring:
            raise RingMismatchError("ideals from different rings")
        return Ideal(self.ring, self.gens + other.gens)

    def scaled_by(self, f: Polynomial) -> "Ideal":
        """The product ideal f * I."""
        return Ideal(self.ring, tuple(f * g for g in self.gens))

    def generator_strings(self) -> tuple:
        if not self.gens:
            return ("0",)
        return tuple(str(g) for g in self.gens)

    def __repr__(self):
        inside = ", ".join(self.generator_strings())
        return f"Ideal({inside})"


def ideal_membership(f: Polynomial, I: Ideal) -> bool:
    """True iff the normal form of f against the reduced basis of I vanishes."""
    return I.contains(f)


# ---- elimination-based calculus ---------------------------------------------------


def _eliminate_first_aux(ring_ext: BigradedRing, gens: list, ring: BigradedRing) -> Ideal:
    """GB under an order eliminating the first aux slot; keep aux-free elements."""
    order = MonomialOrder.eliminate(1)
    basis = buchberger(gens, order)
    kept = []
    for g in basis:
        if all(e[0] == 0 for e in g.terms):
            kept.append(g.aux_stripped(ring))
    return Ideal(ring, kept)


def _monomial_intersect(I: Ideal, J: Ideal) -> Ideal:
    a = I.minimal_monomial_generators()
    b = J.minimal_monomial_generators()
    one = I.ring.field.one
    monos = _minimal_monomials(mono_lcm(u, v) for u in a for v in b)
    return Ideal(I.ring, tuple(Polynomial._raw(I.ring, {m: one}) for m in monos))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J via t*I + (1-t)*J and elimination of the auxiliary t."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals from different rings")
    if I.is_unit_ideal():
        return J
    if J.is_unit_ideal():
        return I
    if I.is_zero_ideal() or J.is_zero_ideal():
        return Ideal.zero(I.ring)
    if I.is_monomial_ideal() and J.is_monomial_ideal():
        return _monomial_intersect(I, J)
    ring = I.ring
    ext = ring.extended(1)
    t = ext.gen(0)
    one_minus_t = ext.one() - t
    gens = [t * g.embedded(ext) for g in I.gens]
    gens += [one_minus_t * g.embedded(ext) for g in J.gens]
    return _eliminate_first_aux(ext, gens, ring)


def colon_by_variable(I: Ideal, var_index: int) -> Ideal:
    """(I : v) for a single variable v, assuming I is homogeneous.

    With v rotated to the smallest grevlex position, the initial ideal of a
    homogeneous ideal satisfies in(I : v) = in(I) : v, and every basis
    element whose lead is divisible by v is divisible by v outright; dividing
    those gives a basis of the colon.
    """
    ring = I.ring
    order = MonomialOrder.grevlex_last(var_index)
    keyfn = order.sort_key(ring.nvars)
    out = []
    for g in I.groebner_basis(order):
        lm = g.leading_monomial(keyfn)
        if lm[var_index] > 0:
            if any(e[var_index] == 0 for e in g.terms):
                raise ValueError("colon_by_variable needs a homogeneous ideal")
            shift = tuple(-1 if i == var_index else 0 for i in range(ring.nvars))
            out.append(
                Polynomial._raw(
                    ring, {mono_mul(e, shift): c for e, c in g.terms.items()}
                )
            )
        else:
            out.append(g)
    return Ideal(ring, out)


def _as_variable_index(f: Polynomial) -> int | None:
    if len(f.terms) != 1:
        return None
    (exps,) = f.terms
    if sum(exps) != 1:
        return None
    return exps.index(1)


def ideal_quotient(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) = {g : g*f in I}, via (I ∩ (f)) / f."""
    if not f:
        raise ZeroPolynomialError("colon by zero")
    if f.ring != I.ring:
        raise RingMismatchError("operands from different rings")
    if f.is_constant():
        return I
    if I.is_zero_ideal():
        return I
    if I.is_unit_ideal():
        return Ideal.unit(I.ring)
    if I.is_monomial_ideal() and f.is_monomial():
        (fe,) = f.terms
        one = I.ring.field.one
        monos = _minimal_monomials(
            tuple(max(a - b, 0) for a, b in zip(m, fe))
            for m in I.minimal_monomial_generators()
        )
        return Ideal(I.ring, tuple(Polynomial._raw(I.ring, {m: one}) for m in monos))
    v = _as_variable_index(f)
    if v is not None and I.is_homogeneous():
        return colon_by_variable(I, v)
    inter = intersect(I, Ideal(I.ring, (f,)))
    return Ideal(I.ring, tuple(exact_div(g, f) for g in inter.gens))


def saturation(I: Ideal, J: Ideal) -> Ideal:
    """(I : J^infinity): iterate I <- ∩_g (I : g) over the generators of J."""
    if J.is_zero_ideal():
        raise ZeroPolynomialError("saturation by the zero ideal")
    current = I
    while True:
        step = None
        for g in J.gens:
            q = ideal_quotient(current, g)
            step = q if step is None else intersect(step, q)
        # step always contains current, so one containment decides equality
        if current.contains_ideal(step):
            return current
        current = step


def krull_dim(I: Ideal) -> int:
    """dim S/I as the maximum size of an independent set of variables.

    A set U is independent when no leading monomial of the reduced basis is
    supported inside U.  For the unit ideal (the zero ring) the sentinel -1
    is returned.
    """
    ring = I.ring
    nv = ring.nvars
    supports = [mono_support(m) for m in I.leading_monomials()]
    if frozenset() in supports:
        return -1  # unit ideal: the zero ring
    supports = [s for s in supports if s]
    if not supports:
        return nv
    from itertools import combinations

    variables = range(nv)
    for size in range(nv, 0, -1):
        for combo in combinations(variables, size):
            u = frozenset(combo)
            if not any(s <= u for s in supports):
                return size
    return 0
