"""Batch command line front end.

Problem files describe a ring and an ideal:

    # comment lines start with '#'
    ring m=2 n=2 field=QQ
    ideal x1*y1 + x2*y2
    options seed=0 block=Q

Statements may also be packed on one line separated by '/'.  Every command
emits a machine-readable result document (deterministic for a fixed input
and seed) and uses the exit codes

    0  the computation finished (negative mathematical verdicts included)
    2  the ideal class is not supported by the requested command
    3  the problem file failed to parse

``--verify`` replays each certificate level from the emitted document alone
and fails loudly on any disagreement.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass

from .certificates import SeqCMVerdict
from .errors import (
    CertificateVerificationError,
    NotBihomogeneousError,
    NotMonomialError,
    ParseError,
    SeqcmError,
    UnitIdealError,
    UnsupportedIdealClassError,
    ZeroModuleError,
    ZeroPolynomialError,
)
from .fields import field_from_name
from .filtration import (
    dimension_filtration,
    is_seq_cm,
    monomial_primary_decomposition,
    tensor_split_check,
)
from .groebner import Ideal, krull_dim, saturation
from .hypersurface import classify_hypersurface, hypersurface_stats, rank_one_split
from .poly import BigradedRing, parse_polynomial
from .relcm import (
    IdealPair,
    VariableBlock,
    cd_wrt,
    grade_wrt,
    is_relative_cm,
)

COMMANDS = (
    "gb",
    "dim",
    "cd",
    "grade",
    "depth",
    "relcm",
    "primdec",
    "filtration",
    "seqcm",
    "hypersurface",
    "tensorcheck",
)

_UNSUPPORTED = (
    UnsupportedIdealClassError,
    NotMonomialError,
    NotBihomogeneousError,
    UnitIdealError,
    ZeroModuleError,
    ZeroPolynomialError,
)


# ---- problem files ---------------------------------------------------------------


@dataclass
class ProblemFile:
    ring: BigradedRing
    ideal: Ideal
    seed: int | None
    block: VariableBlock | None
    text: str


def _statements(text: str):
    """Yield (statement, line, column) with '#' comments stripped.

    A '/' separates statements only when flanked by whitespace, so fraction
    coefficients like 1/2 inside ideal statements survive.
    """
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        start = 0
        cuts = [
            i
            for i in range(1, len(line) - 1)
            if line[i] == "/" and line[i - 1].isspace() and line[i + 1].isspace()
        ]
        for cut in cuts + [len(line)]:
            chunk = line[start:cut]
            stripped = chunk.strip()
            if stripped:
                yield stripped, lineno, start + 1 + len(chunk) - len(chunk.lstrip())
            start = cut + 1


def _parse_assignments(body: str, line: int, col: int) -> dict:
    out = {}
    cursor = col
    for token in body.split():
        if "=" not in token:
            raise ParseError(f"expected key=value, found {token!r}", line, cursor)
        key, _, value = token.partition("=")
        out[key] = (value, line, cursor)
        cursor += len(token) + 1
    return out


def parse_problem(text: str) -> ProblemFile:
    ring = None
    ideal_gens = None
    seed = None
    block = None
    for statement, line, col in _statements(text):
        keyword, _, body = statement.partition(" ")
        body_col = col + len(keyword) + 1
        if keyword == "ring":
            if ring is not None:
                raise ParseError("duplicate ring statement", line, col)
            fields = _parse_assignments(body, line, body_col)
            try:
                m = int(fields["m"][0])
                n = int(fields["n"][0])
            except KeyError as missing:
                raise ParseError(f"ring needs {missing.args[0]}=...", line, col)
            except ValueError:
                raise ParseError("ring sizes must be integers", line, body_col)
            field_name = fields.get("field", ("QQ", line, body_col))[0]
            try:
                field = field_from_name(field_name)
            except ValueError as exc:
                raise ParseError(str(exc), line, fields["field"][2])
            try:
                ring = BigradedRing(m, n, field)
            except ValueError as exc:
                raise ParseError(str(exc), line, body_col)
        elif keyword == "ideal":
            if ring is None:
                raise ParseError("ideal statement before ring statement", line, col)
            if ideal_gens is not None:
                raise ParseError("duplicate ideal statement", line, col)
            ideal_gens = []
            cursor = body_col
            for chunk in body.split(","):
                if chunk.strip():
                    ideal_gens.append(
                        parse_polynomial(ring, chunk, line, cursor)
                    )
                cursor += len(chunk) + 1
        elif keyword == "options":
            fields = _parse_assignments(body, line, body_col)
            if "seed" in fields:
                value, ln, cl = fields["seed"]
                try:
                    seed = int(value)
                except ValueError:
                    raise ParseError("seed must be an integer", ln, cl)
            if "block" in fields:
                value, ln, cl = fields["block"]
                try:
                    block = VariableBlock.from_tag(value)
                except ValueError as exc:
                    raise ParseError(str(exc), ln, cl)
        else:
            raise ParseError(f"unknown statement {keyword!r}", line, col)
    if ring is None:
        raise ParseError("missing ring statement", 1, 1)
    if ideal_gens is None:
        raise ParseError("missing ideal statement", 1, 1)
    return ProblemFile(
        ring=ring,
        ideal=Ideal(ring, ideal_gens),
        seed=seed,
        block=block,
        text=text,
    )


# ---- result documents --------------------------------------------------------------


def _ideal_doc(ideal: Ideal) -> list:
    return list(ideal.generator_strings())


def _verify_doc(spec) -> dict:
    if spec.kind == "cyclic":
        return {"kind": "cyclic", "quotient": _ideal_doc(spec.quotient)}
    if spec.kind == "pair":
        return {
            "kind": "pair",
            "a": _ideal_doc(spec.pair_a),
            "b": _ideal_doc(spec.pair_b),
        }
    return {"kind": "h0", "of": _ideal_doc(spec.h0_of)}


def _filtration_doc(filtration) -> dict:
    levels = []
    for index, level in enumerate(filtration.levels, start=1):
        entry = {
            "level": index,
            "ideal": _ideal_doc(level.ideal),
            "cd": level.cd,
            "grade": level.grade,
            "relative_cm": level.relative_cm,
            "regular_sequence": [str(p) for p in level.regular_sequence],
            "verify": _verify_doc(level.verify),
        }
        if level.associated_primes is not None:
            entry["associated_primes"] = [
                _ideal_doc(p) for p in level.associated_primes
            ]
        levels.append(entry)
    return {
        "base": _ideal_doc(filtration.base),
        "levels": levels,
    }


def _verdict_doc(verdict: SeqCMVerdict) -> dict:
    return {
        "decision": verdict.decision,
        "route": verdict.route.value,
        "offending_level": verdict.offending_level,
        "filtration": _filtration_doc(verdict.filtration),
    }


def run(command: str, problem: ProblemFile, block: VariableBlock, seed: int) -> dict:
    """Execute one command against a parsed problem; returns the document."""
    ring = problem.ring
    ideal = problem.ideal
    doc = {
        "command": command,
        "input_sha256": hashlib.sha256(problem.text.encode()).hexdigest(),
        "ring": {"m": ring.m, "n": ring.n, "field": ring.field.name},
        "generators": _ideal_doc(ideal),
        "block": block.value,
        "seed": seed,
        "invariants": {},
    }
    pair = IdealPair.cyclic(ideal)
    if command == "gb":
        doc["basis"] = [str(g) for g in ideal.groebner_basis()]
    elif command == "dim":
        dim = krull_dim(ideal)
        doc["invariants"]["dim"] = dim
        if dim < 0:
            doc["note"] = "zero module"
    elif command == "cd":
        doc["invariants"]["cd"] = cd_wrt(ideal, block)
    elif command == "grade":
        witness = grade_wrt(pair, block, seed)
        doc["invariants"]["grade"] = witness.grade
        doc["witness"] = {
            "regular_sequence": [str(p) for p in witness.regular_sequence]
        }
    elif command == "depth":
        witness = grade_wrt(pair, VariableBlock.M, seed)
        doc["invariants"]["depth"] = witness.grade
        doc["witness"] = {
            "regular_sequence": [str(p) for p in witness.regular_sequence]
        }
    elif command == "relcm":
        report = is_relative_cm(pair, block, seed)
        doc["invariants"].update(
            {"cd": report.cd, "grade": report.grade, "relative_cm": report.relative_cm}
        )
        doc["witness"] = {
            "regular_sequence": [str(p) for p in report.regular_sequence]
        }
    elif command == "primdec":
        decomposition = monomial_primary_decomposition(ideal, block)
        doc["components"] = [
            {
                "primary": _ideal_doc(c.primary),
                "radical": _ideal_doc(c.radical),
                "cd": c.cd_value,
            }
            for c in decomposition.components
        ]
    elif command == "filtration":
        df = dimension_filtration(ideal, block)
        doc["chain"] = [_ideal_doc(d) for d in df.chain]
        doc["slices"] = [
            {
                "cd": piece.cd_value,
                "unmixed_part": _ideal_doc(piece.unmixed_part),
                "radicals": [_ideal_doc(c.radical) for c in piece.components],
            }
            for piece in df.slices
        ]
    elif command == "seqcm":
        verdict = is_seq_cm(ideal, block, seed)
        report = is_relative_cm(pair, block, seed)
        doc["invariants"].update(
            {"cd": report.cd, "grade": report.grade, "relative_cm": report.relative_cm}
        )
        doc["verdict"] = _verdict_doc(verdict)
    elif command == "hypersurface":
        if block is VariableBlock.M:
            raise UnsupportedIdealClassError(
                "hypersurface classification applies to blocks P and Q"
            )
        if len(ideal.gens) != 1:
            raise UnsupportedIdealClassError(
                "hypersurface command needs exactly one nonzero generator"
            )
        f = ideal.gens[0]
        stats = hypersurface_stats(f, seed)
        verdict = classify_hypersurface(f, block, seed)
        split = rank_one_split(f)
        doc["invariants"].update(
            {
                "a": stats.a,
                "b": stats.b,
                "grade_P": stats.grade_p,
                "cd_P": stats.cd_p,
                "grade_Q": stats.grade_q,
                "cd_Q": stats.cd_q,
            }
        )
        doc["split"] = (
            {"h1": str(split.h1), "h2": str(split.h2)} if split is not None else None
        )
        doc["verdict"] = _verdict_doc(verdict)
    elif command == "tensorcheck":
        ring_x = set(ring.x_range)
        ring_y = set(ring.y_range)
        gens_x, gens_y = [], []
        for g in ideal.gens:
            support = g.support_variables()
            if support <= ring_x:
                gens_x.append(g)
            elif support <= ring_y:
                gens_y.append(g)
            else:
                raise UnsupportedIdealClassError(
                    f"generator {g} mixes x and y variables"
                )
        lhs, rhs = tensor_split_check(
            Ideal(ring, gens_x), Ideal(ring, gens_y), seed
        )
        doc["tensor"] = {"lhs": lhs, "rhs": rhs, "agree": lhs == rhs}
    else:
        raise ValueError(f"unknown command {command!r}")
    return doc


# ---- certificate re-verification ----------------------------------------------------


def _ring_from_doc(doc) -> BigradedRing:
    info = doc["ring"]
    return BigradedRing(info["m"], info["n"], field_from_name(info["field"]))


def _parse_ideal(ring, gens) -> Ideal:
    return Ideal(ring, [parse_polynomial(ring, g) for g in gens])


def verify_certificate(doc: dict) -> list:
    """Recompute each certificate level from the document alone.

    Returns a list of human-readable disagreements (empty when everything
    checks out).  Only documents carrying a verdict are verified.
    """
    if "verdict" not in doc or doc["verdict"] is None:
        return []
    ring = _ring_from_doc(doc)
    block = VariableBlock.from_tag(doc["block"])
    seed = doc["seed"]
    problems = []
    verdict = doc["verdict"]
    levels = verdict["filtration"]["levels"]
    cds = [level["cd"] for level in levels]
    if any(c2 <= c1 for c1, c2 in zip(cds, cds[1:])):
        problems.append(f"level cds {cds} not strictly increasing")
    for level in levels:
        spec = level["verify"]
        tag = f"level {level['level']}"
        try:
            if spec["kind"] == "cyclic":
                J = _parse_ideal(ring, spec["quotient"])
                report = is_relative_cm(IdealPair.cyclic(J), block, seed)
                got = (report.cd, report.grade, report.relative_cm)
            elif spec["kind"] == "pair":
                a = _parse_ideal(ring, spec["a"])
                b = _parse_ideal(ring, spec["b"])
                decomposition = monomial_primary_decomposition(b, block)
                if not decomposition.is_unmixed():
                    problems.append(f"{tag}: pair denominator is mixed")
                    continue
                cd = decomposition.components[0].cd_value
                witness = grade_wrt(IdealPair(a, b), block, seed)
                got = (cd, witness.grade, witness.grade == cd)
            elif spec["kind"] == "h0":
                base = _parse_ideal(ring, spec["of"])
                sat = saturation(base, block.ideal(ring))
                stored = _parse_ideal(ring, level["ideal"])
                if not (sat.contains_ideal(stored) and stored.contains_ideal(sat)):
                    problems.append(f"{tag}: stored ideal is not the saturation")
                    continue
                got = (0, 0, True)
            else:
                problems.append(f"{tag}: unknown verify kind {spec['kind']!r}")
                continue
        except (SeqcmError, ValueError) as exc:
            problems.append(f"{tag}: recheck raised {exc}")
            continue
        want = (level["cd"], level["grade"], level["relative_cm"])
        if got != want:
            problems.append(f"{tag}: recomputed {got}, document says {want}")
    all_cm = all(level["relative_cm"] for level in levels)
    if verdict["decision"] != (all_cm and verdict["offending_level"] is None):
        problems.append("decision inconsistent with level records")
    return problems


# ---- rendering -----------------------------------------------------------------------


def _render_text(value, indent: int = 0, label: str | None = None) -> list:
    pad = "  " * indent
    lines = []
    head = f"{pad}{label}:" if label is not None else None
    if isinstance(value, dict):
        if head:
            lines.append(head)
        for key in sorted(value):
            lines.extend(_render_text(value[key], indent + (1 if head else 0), key))
    elif isinstance(value, list):
        if head:
            lines.append(head)
        for item in value:
            lines.extend(_render_text(item, indent + (1 if head else 0), None))
    else:
        text = json.dumps(value) if not isinstance(value, str) else value
        if label is not None:
            lines.append(f"{pad}{label}: {text}")
        else:
            lines.append(f"{pad}{text}")
    return lines


def render_document(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    return "\n".join(_render_text(doc)) + "\n"


# ---- entry point -----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqcm",
        description="Exact sequential Cohen-Macaulayness decisions over bigraded rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("files", nargs="+", help="problem files")
        p.add_argument("--wrt", choices=["P", "Q", "m"], default=None,
                       help="variable block (default Q, or the file's options)")
        p.add_argument("--seed", type=int, default=None,
                       help="seed for randomized searches (default 0)")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--verify", action="store_true",
                       help="re-check certificate levels from the emitted document")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    exit_code = 0
    for path in sorted(args.files):
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
        try:
            problem = parse_problem(text)
            block = (
                VariableBlock.from_tag(args.wrt)
                if args.wrt is not None
                else (problem.block or VariableBlock.Q)
            )
            seed = args.seed if args.seed is not None else (problem.seed or 0)
            doc = run(args.command, problem, block, seed)
            doc["file"] = path
        except ParseError as exc:
            print(f"{path}: parse error: {exc}", file=sys.stderr)
            return 3
        except _UNSUPPORTED as exc:
            print(f"{path}: unsupported input: {exc}", file=sys.stderr)
            return 2
        sys.stdout.write(render_document(doc, args.format))
        if args.verify:
            problems = verify_certificate(doc)
            if problems:
                for problem_line in problems:
                    print(f"{path}: verify: {problem_line}", file=sys.stderr)
                raise CertificateVerificationError(
                    f"{len(problems)} certificate disagreement(s) in {path}"
                )
            sys.stdout.write("verified: certificate levels recomputed and agree\n")
    return exit_code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
