"""towerlab command line.

Exit status: 0 when everything checked out, 1 when a mathematical check
failed, 2 for usage, format and precondition errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .autgroup import automorphism_group
from .catalog import build_catalog
from .errors import FormatError, GroupError, TowerlabError, UnknownSuite
from .groups import center, desk_cap, subgroup_generated
from .io import (
    format_perms,
    format_structure,
    parse_index_list,
    read_cayley,
    read_structure,
    write_cayley,
)
from .special import equivalence_classes, is_weakly_special, weak_equivalence_classes
from .structures import orbit_structure, structure_aut_group
from .suites import run_suite, suite_encoding
from .towers import automorphism_tower, check_norm_tower_identities, normalizer_tower, rank_image_ok

OK, CHECK_FAILED, USAGE = 0, 1, 2


def _write_json(data: dict, path: str) -> None:
    Path(path).write_text(json.dumps(data, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def cmd_validate(args) -> int:
    try:
        G = read_cayley(args.file)
    except FormatError:
        raise
    except GroupError as exc:
        print(f"not a group: {exc}")
        return CHECK_FAILED
    tag = "centerless" if center(G).order == 1 else f"center of order {center(G).order}"
    print(f"{G.name}: group of order {G.order}, {tag}")
    return OK


def cmd_aut(args) -> int:
    G = read_cayley(args.file)
    aut = automorphism_group(G)
    inn = aut.inner.image().order
    print(f"|Aut({G.name})| = {aut.order}")
    print(f"|Inn({G.name})| = {inn}")
    print(f"|Out({G.name})| = {aut.order // inn}")
    if args.out:
        Path(args.out).write_text(format_perms(aut.group.name, aut.perms, G.order), encoding="utf-8")
    return OK


def cmd_tower(args) -> int:
    G = read_cayley(args.file)
    T = automorphism_tower(G, cap=args.cap)
    rep = check_norm_tower_identities(T)
    print(f"tau = {T.tau}")
    print("level  order")
    for b, L in enumerate(T.levels):
        print(f"{b:5d}  {L.order}")
    for key, value in rep.to_json()["identities"].items():
        print(f"{key}: {'ok' if value else 'FAILED'}")
    if args.json:
        _write_json(rep.to_json(), args.json)
    return OK if rep.passed else CHECK_FAILED


def cmd_nortower(args) -> int:
    G = read_cayley(args.file)
    H = subgroup_generated(G, G.check_index(parse_index_list(args.subgroup)))
    chain = normalizer_tower(G, H)
    print(f"tau = {chain.tau}")
    print("level  order")
    for b, S in enumerate(chain.levels[: chain.tau + 1]):
        print(f"{b:5d}  {S.order}")
    ok = rank_image_ok(chain)
    print(f"rank surjective: {'ok' if ok else 'FAILED'}")
    return OK if ok else CHECK_FAILED


def cmd_special(args) -> int:
    G = read_cayley(args.file)
    A = G.check_index(parse_index_list(args.subset))
    if args.weak:
        classes = weak_equivalence_classes(G, A)
        verdict = is_weakly_special(G, A)
        label = "weakly special"
    else:
        classes = equivalence_classes(G, A)
        verdict = all(len(c) == 1 for c in classes)
        label = "special"
    print(f"({G.name}, A) {label}: {'yes' if verdict else 'no'}")
    for c in classes:
        if len(c) > 1:
            print("class: " + " ".join(map(str, c)))
    return OK


def cmd_struct(args) -> int:
    S = read_structure(args.file)
    if args.action == "aut":
        aut = structure_aut_group(S)
        print(f"|Aut({S.name})| = {aut.group.order}")
        for p in aut.perms:
            print(" ".join(map(str, p)))
    else:
        sys.stdout.write(format_structure(orbit_structure(S, args.max_arity)))
    return OK


def cmd_catalog(args) -> int:
    entries = build_catalog(args.max_order)
    if args.action == "list":
        print(f"{'name':10} {'order':>5}  centerless  recipe")
        for e in entries:
            print(f"{e.name:10} {e.order:5d}  {'yes' if e.centerless else 'no':10}  {e.recipe}")
        return OK
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for e in entries:
        write_cayley(e.group, out / f"{e.name}.cay")
    print(f"wrote {len(entries)} tables to {out}")
    return OK


def cmd_verify(args) -> int:
    command = f"verify --suite {args.suite} --seed {args.seed}"
    report = run_suite(args.suite, args.seed, command)
    for r in report.results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.suite:12} {r.check}")
    for r in report.results:
        if r.suite == "example4" and r.check == "summary":
            print(f"example4: {r.detail['outcome']}")
    total = len(report.results)
    failed = sum(not r.passed for r in report.results)
    print(f"{total - failed}/{total} checks passed")
    if args.json:
        Path(args.json).write_text(report.dumps() + "\n", encoding="utf-8")
    return OK if report.passed else CHECK_FAILED


def cmd_encode(args) -> int:
    if not args.selftest:
        print("encode: only --selftest is available", file=sys.stderr)
        return USAGE
    results = suite_encoding(args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.check}")
    return OK if all(r.passed for r in results) else CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="towerlab", description="Automorphism and normalizer towers of finite groups.")
    p.add_argument("--version", action="version", version=f"towerlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("validate", help="check a Cayley table against the group axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("aut", help="compute the automorphism group")
    s.add_argument("file")
    s.add_argument("--out", help="write the automorphisms as permutations")
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("tower", help="automorphism tower of a centerless group")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=10, help="maximum tower height (default 10)")
    s.add_argument("--json", help="write the identity report here")
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("nortower", help="normalizer tower of a subgroup")
    s.add_argument("file")
    s.add_argument("--subgroup", required=True, help="comma-separated generators of H")
    s.set_defaults(func=cmd_nortower)

    s = sub.add_parser("special", help="is (G, A) a special pair?")
    s.add_argument("file")
    s.add_argument("--subset", required=True, help="comma-separated elements of A")
    s.add_argument("--weak", action="store_true", help="test weak specialness instead")
    s.set_defaults(func=cmd_special)

    s = sub.add_parser("struct", help="relational structures")
    s.add_argument("action", choices=["aut", "orbitize"])
    s.add_argument("file")
    s.add_argument("--max-arity", type=int, default=None)
    s.set_defaults(func=cmd_struct)

    s = sub.add_parser("catalog", help="the built-in group catalog")
    s.add_argument("action", choices=["list", "build"])
    s.add_argument("--max-order", type=int, default=desk_cap())
    s.add_argument("--out-dir", default="catalog", help="where build writes .cay files")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", help="write the run report here")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("encode")  # hidden: self-test of the codings
    s.add_argument("--selftest", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_encode)
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "encode"]
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuite as exc:
        print(f"towerlab: {exc}", file=sys.stderr)
        return USAGE
    except TowerlabError as exc:
        print(f"towerlab: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
