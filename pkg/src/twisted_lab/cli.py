"""twisted-lab command line: validate, verify, proof-replay, radical-raw, info.

Exit codes: 0 pass, 1 usage or parse error, 2 mathematical failure,
3 resource cap exceeded.  JSON reports never contain timings, so two runs
with the same file, seed and flags produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Any, Callable, Optional

from . import SCHEMA, __version__
from .conv_algebra import conv_algebra
from .errors import ParseError, TwistedLabError
from .ideal_lab import (
    algebra_of,
    center_dim,
    enumerate_ideals,
    generate_two_sided_ideal,
    is_left_ideal,
    is_star_closed,
    is_translation_invariant,
    quotient,
    radical,
    random_ideal_scan,
    raw_quotient,
    sample_subspaces,
)
from .instances import load_generators, load_instance, load_raw_algebra, read_json, resolve, shipped_names
from .proof_replay import DEFAULT_CAP, DEFAULT_WGEN, replay, wgen_unitaries
from .twisted_action import TwistedSystem, validate_automorphism, validate_axioms

EXIT_PASS, EXIT_PARSE, EXIT_MATH, EXIT_CAP = 0, 1, 2, 3

DEFAULT_SEED = 20240611
DEFAULT_COUNT = 200
INVARIANCE_SAMPLES = 50
ENUMERATION_MAX_DIM = 8


class Report:
    """Ordered per-check verdicts.  Timings go to the text rendering only."""

    def __init__(self, command: str, subject: dict):
        self.command = command
        self.subject = subject
        self.checks: dict[str, dict] = {}
        self.timings: dict[str, float] = {}
        self.notes: list[str] = []
        self.error: Optional[dict] = None
        self.exit_code = EXIT_PASS

    def run(self, name: str, fn: Callable[[], dict]) -> dict:
        start = time.perf_counter()
        result = fn()
        self.timings[name] = time.perf_counter() - start
        self.checks[name] = result
        if not result["passed"] and self.exit_code == EXIT_PASS:
            self.exit_code = EXIT_MATH
        return result

    def fail(self, exc: TwistedLabError) -> None:
        self.error = exc.as_dict()
        self.exit_code = exc.exit_code

    @property
    def passed(self) -> bool:
        return self.exit_code == EXIT_PASS

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "subject": self.subject,
            "checks": self.checks,
            "passed": self.passed,
            "exit_code": self.exit_code,
        }
        if self.notes:
            out["notes"] = self.notes
        if self.error:
            out["error"] = self.error
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    def render(self) -> str:
        title = self.subject.get("name", "")
        lines = [f"{self.command} {title}".rstrip()]
        for key in ("seed", "count", "w_gen", "cap"):
            if key in self.subject:
                lines[0] += f"  {key}={self.subject[key]}"
        for name, result in self.checks.items():
            flag = "PASS" if result["passed"] else "FAIL"
            detail = ", ".join(
                f"{k}={_short(v)}" for k, v in result.items() if k != "passed"
            )
            lines.append(f"  {flag} {name:<22} {detail}  [{self.timings.get(name, 0.0):.2f}s]")
        for note in self.notes:
            lines.append(f"  note: {note}")
        if self.error:
            lines.append(f"  ERROR {self.error['error']}: {self.error['message']}")
        lines.append("PASS" if self.passed else f"FAIL (exit {self.exit_code})")
        return "\n".join(lines)


def _short(value: Any) -> str:
    text = json.dumps(value, sort_keys=True)
    return text if len(text) <= 60 else text[:57] + "..."


# -- pipelines --

def _axiom_checks(report: Report, system: TwistedSystem) -> bool:
    def automorphisms() -> dict:
        for x, a_map in enumerate(system.alphas):
            try:
                validate_automorphism(a_map, system.shape)
            except TwistedLabError as exc:
                return {"passed": False, "element": x, "witness": exc.as_dict()}
        return {"passed": True, "checked": len(system.alphas)}

    def axioms() -> dict:
        ax = validate_axioms(system)
        out = {"passed": ax.passed, "checked": ax.checked}
        if ax.violations:
            out["violations"] = [v.as_dict() for v in ax.violations]
        return out

    ok = report.run("automorphisms", automorphisms)["passed"]
    return report.run("axioms", axioms)["passed"] and ok


def cmd_validate(path: str) -> Report:
    spec = load_instance(path)
    report = Report("validate", {"name": spec.name, "instance": spec.to_json()})
    _axiom_checks(report, spec.build_system())
    return report


def cmd_verify(path: str, seed: Optional[int] = None, count: Optional[int] = None) -> Report:
    spec = load_instance(path)
    seed = int(spec.options.get("seed", DEFAULT_SEED)) if seed is None else seed
    count = int(spec.options.get("count", DEFAULT_COUNT)) if count is None else count
    report = Report("verify", {"name": spec.name, "instance": spec.to_json(), "seed": seed, "count": count})
    system = spec.build_system()
    if not _axiom_checks(report, system):
        return report

    def radical_of_b() -> dict:
        rad = radical(algebra_of(system))
        return {"passed": rad.dim == 0, "dim_B": system.dim, "radical_dim": rad.dim}

    report.run("radical_B", radical_of_b)
    scan = random_ideal_scan(system, seed, count)

    def ideal_scan() -> dict:
        bad = [r.to_json() for r in scan.ideals if not (r.star_closed and r.radical_dim == 0)]
        out = {"passed": not bad, "ideals": [r.to_json() for r in scan.ideals]}
        if bad:
            out["failures"] = bad
        return out

    report.run("ideal_scan", ideal_scan)

    def idempotence() -> dict:
        bad = [r.ideal.dim for r in scan.ideals if not r.idempotent]
        return {"passed": not bad, "probed": len(scan.ideals), "failing_dims": bad}

    report.run("ideal_square", idempotence)

    def translation_invariance() -> dict:
        subspaces = sample_subspaces(system, seed, INVARIANCE_SAMPLES) + [r.ideal for r in scan.ideals]
        ideals = 0
        for idx, s in enumerate(subspaces):
            left = is_left_ideal(system, s)
            inv = is_translation_invariant(system, s)
            if bool(left) != bool(inv):
                return {
                    "passed": False,
                    "subspace": idx,
                    "left_ideal": bool(left),
                    "translation_invariant": bool(inv),
                    "witness": left.witness or inv.witness,
                }
            ideals += bool(left)
        return {"passed": True, "sampled": len(subspaces), "left_ideals": ideals, "non_ideals": len(subspaces) - ideals}

    report.run("translation_invariance", translation_invariance)
    report.run("center", lambda: {"passed": True, "center_dim": center_dim(algebra_of(system))})

    alg = conv_algebra(system)
    if alg.is_commutative() and alg.dim <= ENUMERATION_MAX_DIM:
        def enumeration() -> dict:
            ideals = enumerate_ideals(system)
            bad = [
                s.dim for s in ideals
                if not (is_star_closed(system, s) and radical(quotient(system, s)).dim == 0)
            ]
            return {"passed": not bad, "ideal_count": len(ideals), "failing_dims": bad}

        report.run("enumeration", enumeration)
    else:
        report.notes.append("exhaustive enumeration skipped (noncommutative or dim > %d)" % ENUMERATION_MAX_DIM)
    return report


def cmd_proof_replay(
    path: str,
    generators_path: Optional[str] = None,
    w_gen: Optional[str] = None,
    cap: int = DEFAULT_CAP,
) -> Report:
    spec = load_instance(path)
    w_gen = w_gen or str(spec.options.get("wgen", DEFAULT_WGEN))
    subject = {"name": spec.name, "instance": spec.to_json(), "w_gen": w_gen, "cap": cap}
    subject["generators"] = Path(generators_path).stem if generators_path else None
    report = Report("proof-replay", subject)
    system = spec.build_system()
    if not _axiom_checks(report, system):
        return report
    gens = load_generators(system, generators_path)
    ideal = generate_two_sided_ideal(system, gens)
    try:
        unitaries = wgen_unitaries(system, w_gen)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

    def run_replay() -> dict:
        rep = replay(system, ideal, unitaries, cap)
        return {"passed": rep.passed, **rep.to_json()}

    result = report.run("replay", run_replay)
    if result["codim"] == 0:
        report.notes.append("I = B, so q = 0 and the replay holds vacuously")
    return report


def cmd_radical_raw(path: str) -> Report:
    file = resolve(path, "raw")
    data = read_json(file)
    name = data.get("name", file.stem) if isinstance(data, dict) else file.stem
    report = Report("radical-raw", {"name": name})
    q = load_raw_algebra(path)

    def radical_check() -> dict:
        rad = radical(q)
        semisimple = radical(raw_quotient(q, rad)).dim == 0
        return {
            "passed": semisimple,
            "dim": q.dim,
            "radical_dim": rad.dim,
            "radical_basis": [[c.to_json() for c in v] for v in rad.basis],
            "quotient_semisimple": semisimple,
        }

    report.run("radical", radical_check)
    return report


def cmd_info(path: Optional[str]) -> Report:
    if path is None:
        report = Report("info", {"name": "shipped"})
        report.run("shipped", lambda: {
            "passed": True,
            "instances": shipped_names("instances"),
            "generators": shipped_names("generators"),
            "raw": shipped_names("raw"),
        })
        return report
    spec = load_instance(path)
    system = spec.build_system()
    report = Report("info", {"name": spec.name, "instance": spec.to_json()})

    def summary() -> dict:
        g = system.group
        return {
            "passed": True,
            "conductor": system.conductor,
            "group_order": g.order,
            "group_abelian": g.is_abelian(),
            "blocks": list(system.shape.blocks),
            "dim_A": system.shape.dim,
            "dim_B": system.dim,
            "cocycle_scalar_valued": system.omega.is_scalar_valued(),
            "distinct_cocycle_values": len(system.omega.values()),
            "B_commutative": conv_algebra(system).is_commutative(),
        }

    report.run("summary", summary)
    return report


# -- argument handling --

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twisted-lab", description="Exact checks on twisted convolution algebras of finite groups.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report here ('-' for stdout)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="exhaustive axiom check of an instance")
    p.add_argument("instance", help="instance file or shipped instance name")

    p = sub.add_parser("verify", parents=[common], help="radical, ideal scan, translation invariance and enumeration checks")
    p.add_argument("instance")
    p.add_argument("--seed", type=_u64, help=f"scan seed (default: instance option or {DEFAULT_SEED})")
    p.add_argument("--count", type=_positive, help=f"scan size (default: instance option or {DEFAULT_COUNT})")

    p = sub.add_parser("proof-replay", parents=[common], help="replay the *-representation argument on B/I")
    p.add_argument("instance")
    p.add_argument("generators", nargs="?", help="ideal generators file; omitted means I = {0}")
    p.add_argument("--wgen", help=f"generating unitaries, comma separated (default {DEFAULT_WGEN!r})")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP, help="bound on the multiplier group order")

    p = sub.add_parser("radical-raw", parents=[common], help="radical of an algebra given by structure constants")
    p.add_argument("algebra", help="raw algebra file or shipped name")

    p = sub.add_parser("info", parents=[common], help="summarize an instance, or list shipped files")
    p.add_argument("instance", nargs="?")
    return parser


def dispatch(args: argparse.Namespace) -> Report:
    if args.command == "validate":
        return cmd_validate(args.instance)
    if args.command == "verify":
        return cmd_verify(args.instance, args.seed, args.count)
    if args.command == "proof-replay":
        return cmd_proof_replay(args.instance, args.generators, args.wgen, args.cap)
    if args.command == "radical-raw":
        return cmd_radical_raw(args.algebra)
    return cmd_info(args.instance)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = dispatch(args)
    except TwistedLabError as exc:
        report = Report(args.command, {"name": getattr(args, "instance", None) or getattr(args, "algebra", "")})
        report.fail(exc)
    print(report.render())
    if args.json:
        text = report.dumps()
        if args.json == "-":
            sys.stdout.write(text)
        else:
            Path(args.json).write_text(text, encoding="utf-8")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
