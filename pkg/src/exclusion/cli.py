"""Command-line front end.

Subcommands: check (decide an implication), eval (measure one atom
against a CSV team), counterexample (emit a separating team), derive
(emit a checked derivation), oracle-check (compare the decision with the
bounded brute-force oracle).

Exit codes: 0 decided, 1 internal error, 2 parse error, 3 unsupported
degree, 4 wrong-direction command, 5 capacity.  JSON outputs carry
"format": 1 and no timing, so repeated runs print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .calculus import derivation_to_json_str, synthesize
from .counterexample import domain_size_bound, verified_counterexample
from .decision import (
    ContradictionWitness,
    CoverWitness,
    MembershipWitness,
    SubsetWitness,
    VacuousDegreeWitness,
    decide,
)
from .errors import EXIT_OK, EXIT_WRONG_DIRECTION, ExclusionError
from .oracle import default_bounds, oracle_implies
from .parsing import (
    parse_atom,
    read_sigma_file,
    read_team_csv,
    render_human,
    team_csv_text,
    write_team_csv,
)
from .semantics import min_degree, min_removal, satisfies


def _witness_kind(witness) -> str:
    if isinstance(witness, VacuousDegreeWitness):
        return "vacuous-degree"
    if isinstance(witness, MembershipWitness):
        return "membership"
    if isinstance(witness, ContradictionWitness):
        return "contradiction"
    if isinstance(witness, SubsetWitness):
        return "subset"
    if isinstance(witness, CoverWitness):
        return "a6-cover"
    return "unknown"


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def cmd_check(args) -> int:
    sigma = read_sigma_file(args.sigma_file)
    goal = parse_atom(args.goal)
    started = time.perf_counter()
    verdict = decide(sigma, goal)
    elapsed = time.perf_counter() - started
    kind = _witness_kind(verdict.witness) if verdict.holds else verdict.plan.kind
    certificate_path = None
    if args.certificate:
        certificate_path = args.certificate
        if verdict.holds:
            derivation = synthesize(sigma, goal, verdict.witness)
            with open(certificate_path, "w", encoding="utf-8") as handle:
                handle.write(derivation_to_json_str(derivation) + "\n")
        else:
            team = verified_counterexample(verdict.plan)
            write_team_csv(team, certificate_path)
    if args.json:
        payload = {
            "format": 1,
            "holds": verdict.holds,
            "witness": kind,
            "goal": render_human(goal),
        }
        if certificate_path:
            payload["certificate"] = certificate_path
        _print_json(payload)
    else:
        print(f"holds: {'true' if verdict.holds else 'false'}")
        print(f"witness: {kind}")
        print(f"time: {elapsed * 1000:.2f} ms")
        if certificate_path:
            print(f"certificate: {certificate_path}")
    return EXIT_OK


def cmd_eval(args) -> int:
    team, duplicates = read_team_csv(args.team_csv)
    atom = parse_atom(args.atom)
    if duplicates:
        print(f"warning: {duplicates} duplicate rows collapsed", file=sys.stderr)
    satisfied = satisfies(team, atom)
    removal = min_removal(team, atom)
    degree = None if team.is_empty() else min_degree(team, atom)
    if args.json:
        payload = {
            "format": 1,
            "atom": render_human(atom),
            "satisfied": satisfied,
            "min_removal": removal,
        }
        if degree is not None:
            payload["min_degree"] = str(degree)
        _print_json(payload)
    else:
        print(f"atom: {render_human(atom)}")
        print(f"satisfied: {'true' if satisfied else 'false'}")
        print(f"min_removal: {removal}")
        if degree is not None:
            print(f"min_degree: {degree}")
    return EXIT_OK


def cmd_counterexample(args) -> int:
    sigma = read_sigma_file(args.sigma_file)
    goal = parse_atom(args.goal)
    verdict = decide(sigma, goal)
    if verdict.holds:
        print("implication holds; no counterexample exists")
        return EXIT_WRONG_DIRECTION
    plan = verdict.plan
    team = verified_counterexample(plan)
    write_team_csv(team, args.out_csv)
    print(f"l={plan.l} k={plan.k} domain-bound={domain_size_bound(plan)}")
    print(f"wrote {args.out_csv} ({team.size} rows)")
    return EXIT_OK


def cmd_derive(args) -> int:
    sigma = read_sigma_file(args.sigma_file)
    goal = parse_atom(args.goal)
    verdict = decide(sigma, goal)
    if not verdict.holds:
        print(
            "implication does not hold; "
            "the counterexample command produces a separating team"
        )
        return EXIT_WRONG_DIRECTION
    derivation = synthesize(sigma, goal, verdict.witness)
    with open(args.out_json, "w", encoding="utf-8") as handle:
        handle.write(derivation_to_json_str(derivation) + "\n")
    print(f"wrote {args.out_json} ({len(derivation.steps)} steps)")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    sigma = read_sigma_file(args.sigma_file)
    goal = parse_atom(args.goal)
    verdict = decide(sigma, goal)
    if args.max_rows is not None and args.domain is not None:
        max_rows, domain = args.max_rows, args.domain
    else:
        planned_rows, planned_domain = default_bounds(sigma, goal)
        max_rows = args.max_rows if args.max_rows is not None else planned_rows
        domain = args.domain if args.domain is not None else planned_domain
    result = oracle_implies(
        sigma, goal, max_rows=max_rows, max_values=domain, budget=args.budget
    )
    print(f"decision: holds={'true' if verdict.holds else 'false'}")
    print(
        f"oracle:   holds={'true' if result.implied else 'false'} "
        f"(max_rows={max_rows}, domain={domain}, teams={result.teams_checked})"
    )
    if result.implied == verdict.holds:
        print("agree")
        return EXIT_OK
    print("DISAGREEMENT between decision and oracle")
    if result.counterexample is not None:
        print("separating team:")
        print(team_csv_text(result.counterexample), end="")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="excl",
        description="Decide and audit implication of approximate exclusion atoms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide whether assumptions imply a goal")
    check.add_argument("sigma_file", help="file with one assumption atom per line")
    check.add_argument("goal", help="goal atom, e.g. 'excl[1/4](x ; y)'")
    check.add_argument("--json", action="store_true", help="machine-readable report")
    check.add_argument(
        "--certificate",
        metavar="PATH",
        help="write a derivation (holds) or counterexample CSV (fails) here",
    )
    check.set_defaults(func=cmd_check)

    evaluate = sub.add_parser("eval", help="measure one atom against a CSV team")
    evaluate.add_argument("team_csv", help="CSV file, header row names the variables")
    evaluate.add_argument("atom", help="atom to evaluate")
    evaluate.add_argument("--json", action="store_true", help="machine-readable report")
    evaluate.set_defaults(func=cmd_eval)

    counter = sub.add_parser(
        "counterexample", help="write a team separating assumptions from a goal"
    )
    counter.add_argument("sigma_file")
    counter.add_argument("goal")
    counter.add_argument("out_csv", help="where to write the team")
    counter.set_defaults(func=cmd_counterexample)

    derive = sub.add_parser("derive", help="write a checked derivation of the goal")
    derive.add_argument("sigma_file")
    derive.add_argument("goal")
    derive.add_argument("out_json", help="where to write the derivation")
    derive.set_defaults(func=cmd_derive)

    oracle = sub.add_parser(
        "oracle-check", help="compare the decision with the bounded oracle"
    )
    oracle.add_argument("sigma_file")
    oracle.add_argument("goal")
    oracle.add_argument(
        "--max-rows", type=int, default=None, help="team size bound (default: planned)"
    )
    oracle.add_argument(
        "--domain", type=int, default=None, help="value count bound (default: planned)"
    )
    oracle.add_argument(
        "--budget", type=int, default=10_000_000, help="max teams to enumerate"
    )
    oracle.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ExclusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
