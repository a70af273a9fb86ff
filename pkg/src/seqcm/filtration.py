"""Monomial primary decomposition, dimension filtrations, and the sequential
Cohen-Macaulay decision.

A monomial ideal splits into primary components by the classic coprime-
generator recursion; components are labeled with the cd of S modulo their
radical (a variable count for the chosen block).  Sorting the distinct cd
values c_1 < ... < c_r, the chain

    D_i = intersection of the components with cd > c_i

interpolates from D_0 = I to D_r = (1); its quotients D_i/D_{i-1} are
isomorphic to (D_i + E_i)/E_i where E_i intersects the level-i components.
That chain is taken as the dimension filtration with respect to the block
(its maximality is validated by a brute-force oracle in the test suite, not
assumed), and the module is sequentially Cohen-Macaulay iff every quotient
has grade equal to its cd.

Inputs outside the supported classes (monomial, principal bihomogeneous, or
cd <= 1) are rejected loudly: a wrong verdict is worse than no verdict.
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
    NotMonomialError,
    UnitIdealError,
    UnsupportedIdealClassError,
)
from .groebner import Ideal, _minimal_monomials, saturation
from .poly import Polynomial, mono_divides, mono_lcm, mono_support
from .relcm import (
    CdGradeReport,
    IdealPair,
    VariableBlock,
    cd_subquotient,
    grade_wrt,
    is_relative_cm,
)

# ---- monomial primary decomposition ------------------------------------------------


@dataclass(frozen=True)
class PrimaryComponent:
    """A primary monomial ideal, its radical prime, and the block cd of S/radical."""

    primary: Ideal
    radical: Ideal
    cd_value: int

    @property
    def variables(self) -> frozenset:
        return frozenset(
            e.index(1) for g in self.radical.gens for e in g.terms
        )


@dataclass(frozen=True)
class PrimaryDecomposition:
    ideal: Ideal
    block: VariableBlock
    components: tuple

    def cd_values(self) -> tuple:
        return tuple(sorted({c.cd_value for c in self.components}))

    def is_unmixed(self) -> bool:
        return len(self.cd_values()) == 1


def _monomials_of(I: Ideal) -> tuple:
    return I.minimal_monomial_generators()


def _ideal_from_monomials(ring, monos) -> Ideal:
    one = ring.field.one
    return Ideal(ring, tuple(Polynomial._raw(ring, {m: one}) for m in monos))


def _intersect_monomials(a: tuple, b: tuple) -> tuple:
    return _minimal_monomials(mono_lcm(u, v) for u in a for v in b)


def _variable_prime(ring, variables) -> Ideal:
    return Ideal(ring, tuple(ring.gen(i) for i in sorted(variables)))


def cd_of_prime(radical: Ideal, block: VariableBlock) -> int:
    """cd(block, S/p) for a variable-generated prime p: the block variables
    missing from p.  Must agree with :func:`seqcm.relcm.cd_wrt`."""
    used = set()
    for g in radical.gens:
        for e in g.terms:
            if sum(e) != 1:
                raise NotMonomialError("radical is not generated by variables")
            used.add(e.index(1))
    return sum(1 for i in block.variable_indices(radical.ring) if i not in used)


def _split_pure_power_families(gen_sets) -> list:
    """Recursively split coprime-product generators until all are pure powers."""
    out = []
    seen = set()
    stack = list(gen_sets)
    while stack:
        monos = stack.pop()
        key = frozenset(monos)
        if key in seen:
            continue
        seen.add(key)
        target = None
        for m in monos:
            support = [i for i, e in enumerate(m) if e]
            if len(support) > 1:
                target = (m, support[0])
                break
        if target is None:
            out.append(monos)
            continue
        m, v = target
        u = tuple(m[i] if i == v else 0 for i in range(len(m)))
        w = tuple(0 if i == v else m[i] for i in range(len(m)))
        rest = [k for k in monos if k != m]
        stack.append(_minimal_monomials(rest + [u]))
        stack.append(_minimal_monomials(rest + [w]))
    return out


def monomial_primary_decomposition(
    I: Ideal, block: VariableBlock = VariableBlock.Q
) -> PrimaryDecomposition:
    """Irredundant primary decomposition of a proper monomial ideal.

    Same-radical components are merged by intersection first, then redundant
    components (those containing the intersection of the others) are dropped,
    so distinct components have distinct radicals and the component radicals
    are exactly the associated primes.
    """
    if not I.is_monomial_ideal():
        raise NotMonomialError("primary decomposition implemented for monomial ideals")
    if I.is_unit_ideal():
        raise UnitIdealError("the unit ideal has no primary decomposition")
    ring = I.ring
    if I.is_zero_ideal():
        zero = Ideal.zero(ring)
        comp = PrimaryComponent(zero, zero, cd_of_prime(zero, block))
        return PrimaryDecomposition(I, block, (comp,))

    families = _split_pure_power_families([_minimal_monomials(
        e for g in I.gens for e in g.terms
    )])

    by_radical: dict = {}
    for monos in families:
        variables = frozenset(i for m in monos for i in mono_support(m))
        prev = by_radical.get(variables)
        by_radical[variables] = (
            monos if prev is None else _intersect_monomials(prev, monos)
        )

    radicals = sorted(by_radical, key=lambda vs: (len(vs), sorted(vs)))
    # Drop components containing the intersection of all the others.
    while True:
        dropped = False
        for k, rad in enumerate(radicals):
            others = None
            for j, rad2 in enumerate(radicals):
                if j == k:
                    continue
                others = (
                    by_radical[rad2]
                    if others is None
                    else _intersect_monomials(others, by_radical[rad2])
                )
            if others is not None and _contains_monomials(by_radical[rad], others):
                del radicals[k]
                dropped = True
                break
        if not dropped:
            break

    components = []
    for rad in radicals:
        primary = _ideal_from_monomials(ring, by_radical[rad])
        radical = _variable_prime(ring, rad)
        components.append(
            PrimaryComponent(primary, radical, cd_of_prime(radical, block))
        )
    components.sort(
        key=lambda c: (c.cd_value, sorted(c.variables), _monomials_of(c.primary))
    )

    # The intersection of the components must reproduce the input exactly.
    total = None
    for comp in components:
        monos = _monomials_of(comp.primary)
        total = monos if total is None else _intersect_monomials(total, monos)
    if tuple(total) != tuple(_minimal_monomials(e for g in I.gens for e in g.terms)):
        raise CertificateVerificationError(
            "primary decomposition does not intersect back to the input"
        )
    return PrimaryDecomposition(I, block, tuple(components))


def _divides_into(monos: tuple, m: tuple) -> bool:
    return any(mono_divides(g, m) for g in monos)


def _contains_monomials(container: tuple, members: tuple) -> bool:
    """Whether the monomial ideal spanned by ``container`` contains every member."""
    return all(_divides_into(container, m) for m in members)


# ---- dimension filtration ------------------------------------------------------------


@dataclass(frozen=True)
class FiltrationSlice:
    """Level data: the cd value, E_i (intersection of level components), components."""

    cd_value: int
    unmixed_part: Ideal
    components: tuple


@dataclass(frozen=True)
class DimensionFiltration:
    ideal: Ideal
    block: VariableBlock
    chain: tuple  # D_0 = I ⊊ D_1 ⊊ ... ⊊ D_r = (1)
    slices: tuple

    def __len__(self):
        return len(self.slices)


def dimension_filtration(I: Ideal, block: VariableBlock) -> DimensionFiltration:
    """The chain D_i = ∩ {q_k : cd(q_k) > c_i} from the primary decomposition.

    Strictness of the inclusions follows from irredundancy and is re-checked
    here; each quotient D_i/D_{i-1} is nonzero with cd equal to c_i.
    """
    decomposition = monomial_primary_decomposition(I, block)
    ring = I.ring
    values = decomposition.cd_values()
    slices = []
    chain = [I]
    previous = None
    for c in values:
        level_comps = tuple(
            comp for comp in decomposition.components if comp.cd_value == c
        )
        e_monos = None
        for comp in level_comps:
            monos = _monomials_of(comp.primary)
            e_monos = monos if e_monos is None else _intersect_monomials(e_monos, monos)
        slices.append(
            FiltrationSlice(c, _ideal_from_monomials(ring, e_monos), level_comps)
        )
    for idx in range(len(values)):
        above = [
            comp for comp in decomposition.components if comp.cd_value > values[idx]
        ]
        if not above:
            d_ideal = Ideal.unit(ring)
        else:
            monos = None
            for comp in above:
                mm = _monomials_of(comp.primary)
                monos = mm if monos is None else _intersect_monomials(monos, mm)
            d_ideal = _ideal_from_monomials(ring, monos)
        chain.append(d_ideal)
    for lower, upper in zip(chain, chain[1:]):
        if not upper.contains_ideal(lower) or upper.equals(lower):
            raise CertificateVerificationError("dimension filtration chain not strict")
    return DimensionFiltration(I, block, tuple(chain), tuple(slices))


# ---- sequential Cohen-Macaulay decision ----------------------------------------------


def _level_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index) & 0x7FFFFFFF


def _cyclic_report(I: Ideal, block: VariableBlock, seed: int) -> CdGradeReport:
    return is_relative_cm(IdealPair.cyclic(I), block, seed)


def _single_level_verdict(
    I: Ideal, block: VariableBlock, report: CdGradeReport, route: Route
) -> SeqCMVerdict:
    ring = I.ring
    level = FiltrationLevel(
        ideal=Ideal.unit(ring),
        cd=report.cd,
        grade=report.grade,
        relative_cm=report.relative_cm,
        regular_sequence=report.regular_sequence,
        verify=VerifySpec.cyclic(I),
    )
    filtration = CMFiltration(block=block, base=I, levels=(level,))
    return SeqCMVerdict(
        decision=report.relative_cm,
        filtration=filtration,
        route=route,
        offending_level=None if report.relative_cm else 1,
    )


def _cd_le_1_verdict(
    I: Ideal, block: VariableBlock, seed: int, report: CdGradeReport
) -> SeqCMVerdict:
    """cd <= 1 always admits the chain I ⊊ sat(I) ⊊ (1) with level cds (0, 1)."""
    ring = I.ring
    sat = saturation(I, block.ideal(ring))
    if sat.is_unit_ideal() or I.contains_ideal(sat):
        raise CertificateVerificationError(
            "cd<=1 route expects a proper, strictly larger saturation"
        )
    top_report = _cyclic_report(sat, block, _level_seed(seed, 2))
    if top_report.cd != 1 or top_report.grade != 1:
        raise CertificateVerificationError(
            "saturation quotient is not Cohen-Macaulay of cd 1"
        )
    torsion = FiltrationLevel(
        ideal=sat,
        cd=0,
        grade=0,
        relative_cm=True,
        regular_sequence=(),
        verify=VerifySpec.h0(I),
    )
    free_part = FiltrationLevel(
        ideal=Ideal.unit(ring),
        cd=1,
        grade=1,
        relative_cm=True,
        regular_sequence=top_report.regular_sequence,
        verify=VerifySpec.cyclic(sat),
    )
    filtration = CMFiltration(block=block, base=I, levels=(torsion, free_part))
    return SeqCMVerdict(decision=True, filtration=filtration, route=Route.CD_LE_1)


def _monomial_verdict(
    I: Ideal, block: VariableBlock, seed: int, report: CdGradeReport
) -> SeqCMVerdict:
    df = dimension_filtration(I, block)
    ring = I.ring
    levels = []
    offending = None
    for index, piece in enumerate(df.slices):
        d_ideal = df.chain[index + 1]
        e_ideal = piece.unmixed_part
        if index == 0 and len(df.slices) == 1:
            # Unmixed: the single quotient is S/I itself, already measured.
            level_report = report
            verify = VerifySpec.cyclic(I)
            witness = report.regular_sequence
        else:
            pair = IdealPair(d_ideal + e_ideal, e_ideal, _trusted=True)
            cd = cd_subquotient(pair, block, quotient_unmixed=True)
            if cd != piece.cd_value:
                raise CertificateVerificationError(
                    f"level cd {cd} disagrees with component cd {piece.cd_value}"
                )
            witness_data = grade_wrt(pair, block, _level_seed(seed, index))
            level_report = CdGradeReport(
                cd=cd,
                grade=witness_data.grade,
                relative_cm=witness_data.grade == cd,
                regular_sequence=witness_data.regular_sequence,
            )
            verify = VerifySpec.pair(d_ideal + e_ideal, e_ideal)
            witness = witness_data.regular_sequence
        if not level_report.relative_cm and offending is None:
            offending = index + 1
        levels.append(
            FiltrationLevel(
                ideal=d_ideal,
                cd=piece.cd_value,
                grade=level_report.grade,
                relative_cm=level_report.relative_cm,
                regular_sequence=witness,
                verify=verify,
                associated_primes=tuple(c.radical for c in piece.components),
            )
        )
    decision = offending is None
    route = (
        Route.UNMIXED_SHORTCUT
        if len(df.slices) == 1 and not decision
        else Route.MONOMIAL_FILTRATION
    )
    filtration = CMFiltration(block=block, base=I, levels=tuple(levels))
    return SeqCMVerdict(
        decision=decision,
        filtration=filtration,
        route=route,
        offending_level=offending,
    )


def is_seq_cm(I: Ideal, block: VariableBlock, seed: int = 0) -> SeqCMVerdict:
    """Decide sequential Cohen-Macaulayness of S/I with respect to the block.

    Routing: relative CM modules are trivially sequentially CM; cd <= 1
    always is (torsion-then-top chain); monomial ideals go through the
    dimension filtration; principal bihomogeneous ideals go to the
    hypersurface classifier.  Everything else raises
    :class:`UnsupportedIdealClassError` instead of guessing.
    """
    if I.is_unit_ideal():
        raise UnitIdealError("S/I is the zero module")
    report = _cyclic_report(I, block, _level_seed(seed, 0))
    if report.relative_cm:
        return _single_level_verdict(I, block, report, Route.RELATIVE_CM)
    if report.cd <= 1:
        return _cd_le_1_verdict(I, block, seed, report)
    if I.is_monomial_ideal():
        return _monomial_verdict(I, block, seed, report)
    gens = I.gens
    if len(gens) == 1 and gens[0].is_bihomogeneous():
        if block is VariableBlock.M:
            # A hypersurface ring is Cohen-Macaulay, so the classical case
            # never reaches this branch; be loud if it somehow does.
            raise UnsupportedIdealClassError(
                "principal ideals with block m should be relative CM"
            )
        from .hypersurface import classify_hypersurface

        return classify_hypersurface(gens[0], block, seed)
    raise UnsupportedIdealClassError(
        "supported classes: monomial ideals, principal bihomogeneous ideals, "
        "or any ideal with cd <= 1"
    )


def quotient_associated_primes(verdict: SeqCMVerdict, level: int) -> tuple:
    """Associated primes of the level-th filtration quotient (1-based level).

    Available on the monomial route, where they are the radicals of the
    level's primary components.
    """
    filtration = verdict.filtration
    if not 1 <= level <= len(filtration.levels):
        raise IndexError("level out of range")
    primes = filtration.levels[level - 1].associated_primes
    if primes is None:
        raise UnsupportedIdealClassError(
            "associated primes are recorded on the monomial route only"
        )
    return primes


def tensor_split_check(I_x: Ideal, I_y: Ideal, seed: int = 0) -> tuple:
    """Compare seq-CM of S/(I_x + I_y) w.r.t. Q with the ordinary seq-CM of K[y]/I_y.

    ``I_x`` must involve only x variables and ``I_y`` only y variables.  The
    two verdicts agree for every valid input; the pair is returned so callers
    and tests can assert the agreement.
    """
    ring = I_x.ring
    if I_y.ring != ring:
        raise ValueError("both ideals must live in the same ring")
    for g in I_x.gens:
        if any(i in ring.y_range for i in g.support_variables()):
            raise UnsupportedIdealClassError("I_x must use x variables only")
    for g in I_y.gens:
        if any(i in ring.x_range for i in g.support_variables()):
            raise UnsupportedIdealClassError("I_y must use y variables only")
    lhs = is_seq_cm(I_x + I_y, VariableBlock.Q, seed).decision

    from .poly import BigradedRing

    ordinary = BigradedRing(0, ring.n, ring.field, ring.order)
    mapped = []
    for g in I_y.gens:
        terms = {e[ring.m :]: c for e, c in g.terms.items()}
        mapped.append(Polynomial._raw(ordinary, terms))
    rhs = is_seq_cm(Ideal(ordinary, tuple(mapped)), VariableBlock.Q, seed).decision
    return lhs, rhs
