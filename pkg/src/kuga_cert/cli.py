"""``kuga-cert`` command line front end.

Exit codes: 0 pass, 1 fail, 2 diagnostics / unreadable input, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

import jsonschema

from . import __version__
from .chow_calculus import FactorProfile
from .errors import KugaCertError, LatticeDiagnostic
from .filtration_engine import SubobjectLattice, hn_filtration, random_modular_lattice, weak_jh
from .higgs_model import Certificate, HiggsData, certify, length_bound, theta_injectivity_obstruction
from .rationals import as_fraction, fraction_str
from .rep_catalog import (
    DomainFactor,
    LinearFamily,
    admissible_reps,
    diophantine_solutions,
    length_condition_status,
    low_rank_table,
)

EXIT_PASS, EXIT_FAIL, EXIT_DIAG, EXIT_USAGE = 0, 1, 2, 64
SCHEMA_VERSION = 1

_RATIONAL = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"},
    ]
}
_PIECE = {
    "type": "object",
    "properties": {
        "rank": {"type": "integer", "minimum": 0},
        "c1": {"type": "array", "items": _RATIONAL, "minItems": 1},
    },
    "required": ["rank", "c1"],
    "additionalProperties": False,
}
FAMILY_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "profile": {
            "type": "object",
            "properties": {
                "dims": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                "types": {"type": "array", "items": {"enum": ["A", "B", "C"]}, "minItems": 1},
                "c2_ratios": {
                    "type": "object",
                    "patternProperties": {r"^[1-9]\d*$": _RATIONAL},
                    "additionalProperties": False,
                },
            },
            "required": ["dims", "types"],
            "additionalProperties": False,
        },
        "summands": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "p10": _PIECE,
                    "p01": _PIECE,
                    "support": {"type": "array", "items": {"type": "integer", "minimum": 1}, "uniqueItems": True},
                    "unitary": {"type": "boolean"},
                    "observed_length": {"type": "integer", "minimum": 0},
                    "label": {"type": "string"},
                },
                "required": ["p10", "p01"],
                "additionalProperties": False,
            },
        },
        "metadata": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "required": ["schema_version", "profile", "summands"],
    "additionalProperties": False,
}
LATTICE_SCHEMA = {
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "nodes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {
                    "id": {"type": "string", "minLength": 1},
                    "rank": {"type": "integer", "minimum": 1},
                    "degrees": {"type": "array", "items": _RATIONAL, "minItems": 1},
                },
                "required": ["id", "rank", "degrees"],
                "additionalProperties": False,
            },
        },
        "edges": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2},
        },
        "top": {"type": "string"},
        "functionals": {"type": "array", "items": {"type": "array", "items": _RATIONAL}},
        "metadata": {"type": "object", "additionalProperties": {"type": "string"}},
    },
    "required": ["schema_version", "nodes", "top"],
    "additionalProperties": False,
}


class InputError(Exception):
    """Unreadable or inconsistent input file; carries every message found."""

    def __init__(self, messages: Sequence[str]):
        super().__init__("; ".join(messages))
        self.messages = list(messages)


@dataclass
class FamilyDescription:
    profile: FactorProfile
    summands: list
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "profile": self.profile.to_dict(),
            "summands": [v.to_dict() for v in self.summands],
        }
        if self.metadata:
            out["metadata"] = dict(sorted(self.metadata.items()))
        return out

    @classmethod
    def from_dict(cls, data: Mapping) -> "FamilyDescription":
        _validate(data, FAMILY_SCHEMA)
        errors = []
        try:
            profile = FactorProfile.from_dict(data["profile"])
        except KugaCertError as exc:
            raise InputError([f"profile: {exc}"]) from None
        summands = []
        for k, raw in enumerate(data["summands"]):
            try:
                v = HiggsData.from_dict(raw)
            except KugaCertError as exc:
                errors.append(f"summands/{k}: {exc}")
                continue
            if len(v.p10.c1) != profile.s:
                errors.append(f"summands/{k}: Chern vectors have length {len(v.p10.c1)}, profile has {profile.s} factors")
            bad = sorted(i for i in v.support if i > profile.s)
            if bad:
                errors.append(f"summands/{k}/support: factor indices {bad} out of range 1..{profile.s}")
            summands.append(v)
        if errors:
            raise InputError(errors)
        return cls(profile, summands, dict(data.get("metadata", {})))


def _validate(data, schema) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(data), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise InputError(
            [f"{'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}" for e in errors]
        )


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError([f"{path}: {exc.strerror}"]) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError([f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"]) from None


def load_family(path: str) -> FamilyDescription:
    return FamilyDescription.from_dict(load_json(path))


def load_lattice(path: str) -> SubobjectLattice:
    data = load_json(path)
    _validate(data, LATTICE_SCHEMA)
    try:
        return SubobjectLattice.from_dict(data)
    except KugaCertError as exc:
        raise InputError([str(exc)]) from None


# --- output helpers -------------------------------------------------------------


class _Style:
    def __init__(self, enabled: bool):
        self.enabled = enabled

    def verdict(self, ok) -> str:
        if ok is None:
            return "n/a"
        word = "pass" if ok else "FAIL"
        if not self.enabled:
            return word
        return f"\x1b[{32 if ok else 31}m{word}\x1b[0m"


def _style(stream) -> _Style:
    mode = os.environ.get("KUGA_CERT_COLOR", "auto")
    if mode not in ("never", "auto"):
        raise _UsageError(f"KUGA_CERT_COLOR must be 'never' or 'auto', got {mode!r}")
    return _Style(mode == "auto" and hasattr(stream, "isatty") and stream.isatty())


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def _table(header: Sequence[str], rows: Sequence[Sequence], fmt: str) -> str:
    rows = [[str(x) for x in row] for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max([len(h)] + [len(r[k]) for r in rows]) for k, h in enumerate(header)]
    lines = ["| " + " | ".join(h.ljust(w) for h, w in zip(header, widths)) + " |",
             "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
    lines += ["| " + " | ".join(c.ljust(w) for c, w in zip(r, widths)) + " |" for r in rows]
    return "\n".join(lines) + "\n"


# --- commands -------------------------------------------------------------------------


def certificate_text(family: FamilyDescription, cert: Certificate, style: _Style) -> str:
    p = family.profile
    lines = [
        f"profile: dims={list(p.dims)} types={list(p.types)}",
    ]
    for key, value in sorted(family.metadata.items()):
        lines.append(f"{key}: {value}")
    for s in cert.summands:
        name = f" [{s.label}]" if s.label else ""
        lines.append(f"summand {s.index}{name}: hodge numbers (l, l') = ({s.hodge_numbers[0]}, {s.hodge_numbers[1]})")
        if s.unitary:
            lines.append("  unitary")
        if s.arakelov_defect is not None:
            lines.append(f"  Arakelov defect: {fraction_str(s.arakelov_defect)}")
        lines.append(f"  condition 1 (unitary or Arakelov equality): {style.verdict(s.condition1)}")
        if s.purity_index is not None:
            lines.append(f"  pure of type {s.purity_type} on factor {s.purity_index}")
        if s.length_bound is not None:
            observed = "unknown" if s.observed_length is None else str(s.observed_length)
            lines.append(f"  length bound: {fraction_str(s.length_bound)} (observed {observed})")
        lines.append(f"  condition 2 (length): {style.verdict(s.condition2)}")
        for note in s.notes:
            lines.append(f"    - {note}")
        for diag in s.diagnostics:
            lines.append(f"    ! {diag}")
    lines.append(f"condition 1: {style.verdict(cert.condition1)}")
    lines.append(f"condition 2: {style.verdict(cert.condition2)}")
    if cert.diagnostics:
        lines.append(f"diagnostics: {len(cert.diagnostics)}")
    lines.append(f"certificate: {style.verdict(cert.passed)}")
    return "\n".join(lines) + "\n"


def cmd_certify(args, out) -> int:
    family = load_family(args.path)
    cert = certify(family.profile, family.summands)
    if cert.diagnostics:
        status = EXIT_FAIL if args.strict else EXIT_DIAG
    else:
        status = EXIT_PASS if cert.passed else EXIT_FAIL
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, **cert.to_dict(), "exit_status": status}
        out.write(_dump_json(payload))
    else:
        out.write(certificate_text(family, cert, _style(out)))
    return status


def cmd_hn(args, out) -> int:
    if args.path is None and args.seed is None:
        raise _UsageError("hn-filtration needs a lattice file or --seed")
    if args.path is not None and args.seed is not None:
        raise _UsageError("give either a lattice file or --seed, not both")
    if args.weak_jh and args.epsilon is not None:
        raise _UsageError("--weak-jh does not take --epsilon")
    if args.path is not None:
        lattice = load_lattice(args.path)
    else:
        lattice = random_modular_lattice(random.Random(args.seed), max_nodes=args.max_nodes)
    try:
        if args.weak_jh:
            result = weak_jh(lattice)
        else:
            eps = None if args.epsilon is None else as_fraction(args.epsilon)
            result = hn_filtration(lattice, eps)
    except LatticeDiagnostic as exc:
        sys.stderr.write(f"diagnostic: {exc}\n")
        return EXIT_DIAG
    if args.json:
        payload = {"schema_version": SCHEMA_VERSION, **result.to_dict()}
        if args.seed is not None:
            payload["lattice"] = lattice.to_dict()
        out.write(_dump_json(payload))
        return EXIT_PASS
    if result.epsilon is not None:
        where = f"at epsilon = {fraction_str(result.epsilon)}"
    else:
        where = f"for every epsilon in (0, {fraction_str(result.epsilon0)}]"
    lines = [f"{result.kind} filtration {where}, {len(result.chain)} step(s)"]
    for k, (g, poly) in enumerate(zip(result.chain, result.slopes), start=1):
        lines.append(f"  G{k} = {g}  rank {lattice.rank(g)}  quotient slope {poly}")
    out.write("\n".join(lines) + "\n")
    return EXIT_PASS


def cmd_enumerate(args, out) -> int:
    if args.family == "a":
        if args.p is None or args.q is None or args.n is not None:
            raise _UsageError("family a needs --p and --q")
        factor = DomainFactor("a", args.p, args.q)
    else:
        if args.n is None or args.p is not None or args.q is not None:
            raise _UsageError(f"family {args.family} needs --n only")
        factor = DomainFactor(args.family, args.n)
    entries = admissible_reps(factor)
    if args.convention != "weight-space":
        entries = [e.swapped() for e in entries]
    rows = [
        (e.label, e.hodge[0], e.hodge[1], e.convention, "derived" if e.derived else "classified")
        for e in entries
    ]
    out.write(_table(("label", "l", "l_prime", "convention", "source"), rows, args.format))
    return EXIT_PASS


def cmd_diophantine(args, out) -> int:
    sols = diophantine_solutions(args.l, args.sigma)
    header = ("l_prime", "n", "length", "obstruction", "status")
    if isinstance(sols, LinearFamily):
        rows = [(f"{sols.slope}*n", "n", args.sigma, "none", "family")]
    else:
        rows = []
        for lp, n in sols:
            hit = next(
                (m for m in range(1, min(args.l, lp, args.sigma) + 1)
                 if theta_injectivity_obstruction(args.l, lp, n, m)),
                None,
            )
            if hit is None:
                rows.append((lp, n, args.sigma, "none", "admissible"))
            else:
                rows.append((lp, n, args.sigma,
                             f"m={hit}: {comb(n + hit - 1, hit)} > {comb(args.l, hit) * comb(lp, hit)}",
                             "excluded"))
    out.write(_table(header, rows, args.format))
    return EXIT_PASS


def cmd_length(args, out) -> int:
    bound = length_bound(args.l, args.lp, args.n)
    if args.json:
        out.write(_dump_json({"schema_version": SCHEMA_VERSION, "length_bound": fraction_str(bound)}))
    else:
        out.write(fraction_str(bound) + "\n")
    return EXIT_PASS


def cmd_low_rank(args, out) -> int:
    rows = [
        (l, lp, n, fraction_str(bound), length_condition_status(l, lp, n), verdict.value)
        for l, lp, n, bound, verdict in low_rank_table(args.max_l, args.max_n, args.max_lp)
    ]
    out.write(_table(("l", "l_prime", "n", "length_bound", "numeric", "verdict"), rows, args.format))
    return EXIT_PASS


# --- argument parsing -------------------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kuga-cert", description="Numerical certificates for weight-one VHS on Shimura varieties.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", help="certify a family description file")
    p.add_argument("path")
    p.add_argument("--json", action="store_true", help="machine-readable certificate")
    p.add_argument("--strict", action="store_true", help="treat diagnostics as failures (exit 1)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("hn-filtration", help="HN filtration of a subobject lattice")
    p.add_argument("path", nargs="?")
    p.add_argument("--epsilon", help="fixed rational epsilon (default: all small epsilon > 0)")
    p.add_argument("--weak-jh", action="store_true", help="weak Jordan-Hoelder filtration instead")
    p.add_argument("--seed", type=int, help="use a random lattice generated from this seed")
    p.add_argument("--max-nodes", type=_positive, default=20)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hn)

    p = sub.add_parser("enumerate-reps", help="admissible representations of a domain factor")
    p.add_argument("--family", required=True, choices=["a", "b", "c", "d_fork", "d_end"])
    p.add_argument("--p", type=_positive)
    p.add_argument("--q", type=_positive)
    p.add_argument("--n", type=_positive)
    p.add_argument("--convention", choices=["weight-space", "wedge-target"], default="weight-space")
    p.add_argument("--format", choices=["csv", "md"], default="md")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("diophantine", help="solve the length equation for (l', n)")
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--sigma", type=_positive, required=True)
    p.add_argument("--format", choices=["csv", "md"], default="md")
    p.set_defaults(func=cmd_diophantine)

    p = sub.add_parser("length", help="length bound l l'(n+1) / ((l+l') n)")
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--lp", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_length)

    p = sub.add_parser("low-rank-table", help="which low-rank cases force the length condition")
    p.add_argument("--max-l", type=_positive, required=True)
    p.add_argument("--max-n", type=_positive, required=True)
    p.add_argument("--max-lp", type=_positive, default=20)
    p.add_argument("--format", choices=["csv", "md"], default="md")
    p.set_defaults(func=cmd_low_rank)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"kuga-cert: error: {exc}\n")
        return EXIT_USAGE
    except InputError as exc:
        for msg in exc.messages:
            sys.stderr.write(f"error: {msg}\n")
        return EXIT_DIAG
    except KugaCertError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DIAG


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
