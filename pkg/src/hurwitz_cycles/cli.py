"""Command-line front end: `hurwitz {number,classical,tropical,wallcross,verify}`."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import serialize
from .classical import double_hurwitz_number, hurwitz_cycle, wall_crossing_direct, wall_crossing_formula
from .errors import HurwitzError, InvalidInputError, VerificationError
from .oracle import oracle_count
from .trees import RamificationVector, chamber_of, opposite_chamber
from .tropical import BranchPoints, TropicalHurwitzCycle
from .verify import SUITES, run_suite
from .wallcross import tropical_wall_crossing


@dataclass
class JobSpec:
    command: str
    x: Optional[RamificationVector] = None
    k: int = 0
    wall: Optional[Tuple[int, ...]] = None
    points: Optional[BranchPoints] = None
    output: Optional[str] = None
    fmt: str = "text"


def _ints(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidInputError(f"expected comma-separated integers, got {text!r}") from None


def _fractions(text: str) -> List[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InvalidInputError(f"expected comma-separated rationals, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hurwitz", description="Rational double Hurwitz cycles, classical and tropical.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k=True):
        sp.add_argument("-x", required=True, help="ramification vector, e.g. 3,1,-2,-2")
        if k:
            sp.add_argument("-k", type=int, default=0, help="cycle dimension")
        sp.add_argument("--format", dest="fmt", choices=["json", "dot", "text"], default="text")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    common(sub.add_parser("number", help="H0(x) with the oracle cross-check"), k=False)
    common(sub.add_parser("classical", help="the classical cycle H_k(x)"))
    sp = sub.add_parser("tropical", help="the tropical cycle H^trop_k(x)")
    common(sp)
    sp.add_argument("-p", help="branch points, comma-separated, distinct from 0")
    sp = sub.add_parser("wallcross", help="classical and tropical wall crossing across W_I")
    common(sp)
    sp.add_argument("-I", dest="wall", required=True, help="wall subset, e.g. 1,4,5")
    sp.add_argument("--minus", help="a point of the chamber on the other side (default: found automatically)")
    sp.add_argument("-p", help="branch points")
    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    sp.add_argument("-n", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--format", dest="fmt", choices=["json", "text"], default="text")
    sp.add_argument("-o", "--output")
    return p


def job_from_args(args: argparse.Namespace) -> JobSpec:
    job = JobSpec(args.command, output=args.output, fmt=args.fmt)
    if getattr(args, "x", None) is not None:
        job.x = RamificationVector.of(_ints(args.x))
    job.k = getattr(args, "k", 0)
    if getattr(args, "wall", None):
        job.wall = tuple(_ints(args.wall))
    if getattr(args, "p", None):
        job.points = BranchPoints(tuple(_fractions(args.p)))
    return job


def cmd_number(job: JobSpec) -> Tuple[str, int]:
    chamber_of(job.x)
    h = double_hurwitz_number(job.x)
    o = oracle_count(job.x)
    if h != o:
        return f"H0 = {h} [oracle: MISMATCH {o}]\n", VerificationError.exit_code
    return f"H0 = {h} [oracle: OK]\n", 0


def cmd_classical(job: JobSpec) -> Tuple[str, int]:
    cyc = hurwitz_cycle(chamber_of(job.x), job.k)
    if job.fmt == "json":
        return serialize.dumps(serialize.classical_to_json(cyc)) + "\n", 0
    if job.fmt == "dot":
        return serialize.classical_dot(cyc, job.x), 0
    return str(cyc) + "\n", 0


def cmd_tropical(job: JobSpec) -> Tuple[str, int]:
    cyc = TropicalHurwitzCycle(job.x, job.k, job.points)
    if job.fmt == "json":
        return serialize.dumps(serialize.tropical_to_json(cyc)) + "\n", 0
    if job.fmt == "dot":
        return serialize.tropical_dot(cyc), 0
    lines = [f"H^trop_{job.k}({','.join(map(str, job.x.entries))}): {len(cyc.cells)} cells"]
    for rec in serialize.tropical_to_json(cyc):
        lines.append(f"  {rec['type']:<14} weight {rec['weight']:<4} splits {rec['splits']} moving {rec['moving']}")
    return "\n".join(lines) + "\n", 0


def cmd_wallcross(job: JobSpec, minus: Optional[str]) -> Tuple[str, int]:
    if job.wall is None:
        raise InvalidInputError("wallcross needs -I")
    plus = chamber_of(job.x)
    minus_ch = chamber_of(_ints(minus)) if minus else opposite_chamber(plus, job.wall)
    classical_ok = wall_crossing_direct(job.wall, job.k, plus, minus_ch).same_terms(
        wall_crossing_formula(job.wall, job.k, plus))
    rep = tropical_wall_crossing(job.wall, job.k, job.x, minus=minus_ch.sample, points=job.points)
    code = 0 if classical_ok and rep.ok else VerificationError.exit_code
    if job.fmt == "json":
        data = serialize.wallcross_to_json(rep)
        data["classical_equal"] = classical_ok
        return serialize.dumps(data) + "\n", code
    lines = [
        f"wall W{{{','.join(map(str, rep.wall))}}}, k={job.k}, x+={list(rep.plus.entries)}, x-={list(rep.minus.entries)}",
        f"classical: direct {'=' if classical_ok else '!='} formula",
        f"tropical: {len(rep.lhs)} signed cells, LHS {'=' if rep.equal else '!='} RHS",
    ]
    for j, g in sorted(rep.grouping.items()):
        lines.append(f"  j={j}: {g['subsets']} position subsets, binomial {g['binomial']}, uniform {g['uniform']}")
    return "\n".join(lines) + "\n", code


def cmd_verify(suite: str, n: int, seed: int, fmt: str) -> Tuple[str, int]:
    results = run_suite(suite, n, seed)
    code = 0 if all(r.passed for r in results) else VerificationError.exit_code
    if fmt == "json":
        data = [{"suite": r.suite, "case": r.case, "passed": r.passed, "detail": r.detail} for r in results]
        return serialize.dumps(data) + "\n", code
    passed = sum(r.passed for r in results)
    lines = [r.line() for r in results] + [f"{passed}/{len(results)} passed"]
    return "\n".join(lines) + "\n", code


def run(argv: Optional[Sequence[str]] = None) -> Tuple[str, int]:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args.suite, args.n, args.seed, args.fmt)
    job = job_from_args(args)
    if job.command == "number":
        return cmd_number(job)
    if job.command == "classical":
        return cmd_classical(job)
    if job.command == "tropical":
        return cmd_tropical(job)
    return cmd_wallcross(job, args.minus)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        text, code = run(argv)
    except HurwitzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    args_output = _output_path(argv)
    if args_output:
        with open(args_output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _output_path(argv) -> Optional[str]:
    args, _ = build_parser().parse_known_args(argv)
    return getattr(args, "output", None)
