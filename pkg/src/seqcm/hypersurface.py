"""Classification of hypersurface rings S/fS.

A bihomogeneous f of bidegree (a, b) expands as sum c_{alpha,beta} x^alpha
y^beta, which is a matrix over the occurring x monomials and y monomials.
S/fS is sequentially Cohen-Macaulay with respect to Q (equivalently P) iff f
factors as h1(x) * h2(y), which happens exactly when that matrix has rank at
most one; the split, when it exists, is read off a nonzero row and column
and re-verified by exact expansion.  A returned None is backed by a
fraction-free rank computation certifying rank >= 2.

When a, b > 0 and f = h1*h2, the two-level chain (f) ⊂ (h_i) ⊂ (1) is a
Cohen-Macaulay filtration; which factor sits in the middle depends on the
block.  Rather than fixing the assignment by symmetry, both candidates are
verified through the cd/grade machinery (using the cyclic isomorphisms
(h)/(f) ≅ S/(cofactor)) and the one with strictly increasing level cds is
emitted; if neither verifies, something is inconsistent and we raise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (
    CMFiltration,
    FiltrationLevel,
    Route,
    SeqCMVerdict,
    VerifySpec,
)
from .errors import (
    CertificateVerificationError,
    UnitIdealError,
    ZeroPolynomialError,
)
from .groebner import Ideal
from .poly import BigradedRing, Polynomial
from .relcm import IdealPair, VariableBlock, is_relative_cm


@dataclass(frozen=True)
class CoefficientMatrix:
    """c_{alpha,beta} over the x monomials (rows) and y monomials (columns)
    occurring in f, in descending monomial order; zero entries where the
    product monomial is absent."""

    ring: BigradedRing
    rows: tuple  # x-part exponent tuples
    cols: tuple  # y-part exponent tuples
    entries: tuple  # tuple of row tuples of field elements

    def reconstruct(self) -> Polynomial:
        from .poly import mono_mul

        terms = {}
        for i, alpha in enumerate(self.rows):
            for j, beta in enumerate(self.cols):
                c = self.entries[i][j]
                if c:
                    terms[mono_mul(alpha, beta)] = c
        return Polynomial._raw(self.ring, terms)


def _split_exponents(ring: BigradedRing, exps):
    x_part = tuple(
        e if i in ring.x_range else 0 for i, e in enumerate(exps)
    )
    y_part = tuple(
        e if i in ring.y_range else 0 for i, e in enumerate(exps)
    )
    return x_part, y_part


def coefficient_matrix(f: Polynomial) -> CoefficientMatrix:
    """The (x monomial) x (y monomial) coefficient matrix of a nonzero
    bihomogeneous polynomial; lossless."""
    f.bidegree()  # raises on zero / non-bihomogeneous input
    ring = f.ring
    keyfn = ring.sort_key()
    table = {}
    for exps, c in f.terms.items():
        alpha, beta = _split_exponents(ring, exps)
        table[(alpha, beta)] = c
    rows = sorted({ab[0] for ab in table}, key=keyfn, reverse=True)
    cols = sorted({ab[1] for ab in table}, key=keyfn, reverse=True)
    zero = ring.field.zero
    entries = tuple(
        tuple(table.get((alpha, beta), zero) for beta in cols) for alpha in rows
    )
    return CoefficientMatrix(ring, tuple(rows), tuple(cols), entries)


def exact_rank(entries, field) -> int:
    """Rank by fraction-free (Bareiss) elimination; exact over any field."""
    matrix = [list(row) for row in entries]
    if not matrix or not matrix[0]:
        return 0
    nrows, ncols = len(matrix), len(matrix[0])
    rank = 0
    prev = field.one
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, nrows):
            if matrix[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        p = matrix[row][col]
        for r in range(row + 1, nrows):
            for c in range(col + 1, ncols):
                matrix[r][c] = (p * matrix[r][c] - matrix[r][col] * matrix[row][c]) / prev
            matrix[r][col] = field.zero
        prev = p
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


@dataclass(frozen=True)
class SplitWitness:
    """f = h1(x) * h2(y) with h2 monic; ``verified`` records the expansion check."""

    h1: Polynomial
    h2: Polynomial
    verified: bool


def rank_one_split(f: Polynomial):
    """The split f = h1(x)*h2(y) when the coefficient matrix has rank <= 1.

    Built from the first nonzero entry in canonical order, verified by exact
    expansion, and normalized with h2 monic.  Returns None when no split
    exists, in which case fraction-free elimination certifies rank >= 2.
    """
    matrix = coefficient_matrix(f)
    ring = f.ring
    pivot = None
    for i, row in enumerate(matrix.entries):
        for j, c in enumerate(row):
            if c:
                pivot = (i, j)
                break
        if pivot:
            break
    i0, j0 = pivot  # f != 0 guarantees a nonzero entry
    h2_terms = {
        matrix.cols[j]: c for j, c in enumerate(matrix.entries[i0]) if c
    }
    inv = ring.field.one / matrix.entries[i0][j0]
    h1_terms = {}
    for i, row in enumerate(matrix.entries):
        if row[j0]:
            h1_terms[matrix.rows[i]] = row[j0] * inv
    h1 = Polynomial._raw(ring, h1_terms)
    h2 = Polynomial._raw(ring, h2_terms)
    if h1 * h2 == f:
        lc = h2.leading_coefficient()
        one = ring.field.one
        if lc != one:
            h1 = h1.scale(lc)
            h2 = h2.scale(one / lc)
        return SplitWitness(h1, h2, True)
    if exact_rank(matrix.entries, ring.field) <= 1:
        raise CertificateVerificationError(
            "rank <= 1 but the reconstructed split failed to expand"
        )
    return None


@dataclass(frozen=True)
class HypersurfaceReport:
    a: int
    b: int
    grade_p: int
    cd_p: int
    grade_q: int
    cd_q: int


def _proper_principal(f: Polynomial) -> Ideal:
    if not f:
        raise ZeroPolynomialError("hypersurface needs a nonzero polynomial")
    if f.is_constant():
        raise UnitIdealError("(f) is the unit ideal for a nonzero constant")
    return Ideal(f.ring, (f,))


def hypersurface_stats(f: Polynomial, seed: int = 0) -> HypersurfaceReport:
    """Bidegree plus grade/cd for both blocks of S/fS.

    For a nonzero bihomogeneous f of bidegree (a, b): a = 0 gives
    (cd_P, cd_Q) = (m, n-1) with both blocks relative CM, b = 0 the mirror,
    and a, b > 0 gives grade exactly one below cd on both sides.
    """
    a, b = f.bidegree()
    I = _proper_principal(f)
    pair = IdealPair.cyclic(I)
    rep_p = is_relative_cm(pair, VariableBlock.P, seed)
    rep_q = is_relative_cm(pair, VariableBlock.Q, seed)
    return HypersurfaceReport(
        a=a,
        b=b,
        grade_p=rep_p.grade,
        cd_p=rep_p.cd,
        grade_q=rep_q.grade,
        cd_q=rep_q.cd,
    )


def _two_level_certificate(
    f: Polynomial,
    middle: Polynomial,
    cofactor: Polynomial,
    block: VariableBlock,
    seed: int,
):
    """Verify the chain (f) ⊂ (middle) ⊂ (1); None if the cds do not increase.

    Level one is (middle)/(f) ≅ S/(cofactor) via multiplication by middle,
    level two is S/(middle); both must be relative CM with strictly
    increasing cd.
    """
    ring = f.ring
    bottom = is_relative_cm(IdealPair.cyclic(Ideal(ring, (cofactor,))), block, seed)
    top = is_relative_cm(IdealPair.cyclic(Ideal(ring, (middle,))), block, seed)
    if not (bottom.relative_cm and top.relative_cm and bottom.cd < top.cd):
        return None
    middle_ideal = Ideal(ring, (middle,))
    level1 = FiltrationLevel(
        ideal=middle_ideal,
        cd=bottom.cd,
        grade=bottom.grade,
        relative_cm=True,
        regular_sequence=bottom.regular_sequence,
        verify=VerifySpec.cyclic(Ideal(ring, (cofactor,))),
    )
    level2 = FiltrationLevel(
        ideal=Ideal.unit(ring),
        cd=top.cd,
        grade=top.grade,
        relative_cm=True,
        regular_sequence=top.regular_sequence,
        verify=VerifySpec.cyclic(middle_ideal),
    )
    return CMFiltration(block=block, base=Ideal(ring, (f,)), levels=(level1, level2))


def classify_hypersurface(
    f: Polynomial, block: VariableBlock, seed: int = 0
) -> SeqCMVerdict:
    """Sequential Cohen-Macaulayness of S/fS with respect to P or Q.

    True exactly when f = h1(x)*h2(y).  Degenerate bidegrees (a = 0 or
    b = 0) yield a one-level certificate (the ring is relative CM); a mixed
    split yields the verified two-level chain; no split yields a negative
    verdict whose single level records grade < cd of the ring itself.
    """
    if block is VariableBlock.M:
        raise ValueError("classification applies to the P and Q blocks")
    a, b = f.bidegree()
    I = _proper_principal(f)
    split = rank_one_split(f)
    if split is None:
        report = is_relative_cm(IdealPair.cyclic(I), block, seed)
        if report.relative_cm:
            raise CertificateVerificationError(
                "rank >= 2 hypersurface measured as relative CM"
            )
        ring = f.ring
        level = FiltrationLevel(
            ideal=Ideal.unit(ring),
            cd=report.cd,
            grade=report.grade,
            relative_cm=False,
            regular_sequence=report.regular_sequence,
            verify=VerifySpec.cyclic(I),
        )
        filtration = CMFiltration(block=block, base=I, levels=(level,))
        return SeqCMVerdict(
            decision=False,
            filtration=filtration,
            route=Route.HYPERSURFACE_RANK1,
            offending_level=1,
        )
    if a == 0 or b == 0:
        report = is_relative_cm(IdealPair.cyclic(I), block, seed)
        if not report.relative_cm:
            raise CertificateVerificationError(
                "one-sided hypersurface must be relative CM"
            )
        level = FiltrationLevel(
            ideal=Ideal.unit(f.ring),
            cd=report.cd,
            grade=report.grade,
            relative_cm=True,
            regular_sequence=report.regular_sequence,
            verify=VerifySpec.cyclic(I),
        )
        filtration = CMFiltration(block=block, base=I, levels=(level,))
        return SeqCMVerdict(
            decision=True, filtration=filtration, route=Route.HYPERSURFACE_RANK1
        )
    candidates = (
        ((split.h1, split.h2), (split.h2, split.h1))
        if block is VariableBlock.Q
        else ((split.h2, split.h1), (split.h1, split.h2))
    )
    for middle, cofactor in candidates:
        filtration = _two_level_certificate(f, middle, cofactor, block, seed)
        if filtration is not None:
            return SeqCMVerdict(
                decision=True, filtration=filtration, route=Route.HYPERSURFACE_RANK1
            )
    raise CertificateVerificationError(
        "split found but neither two-level chain verified"
    )
