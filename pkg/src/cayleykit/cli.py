"""Command-line surface: construct groups, take closures, run CI checks,
search block towers, and reproduce named claims.

Exit codes: 0 pass, 1 fail, 2 usage error, 3 cap or budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from .blocks import BlockSystem
from .ci import (are_conjugate_subgroups, babai_check, block_tower_search,
                 TowerResult, holomorph_witness)
from .closures import BudgetExceededError, k_closure
from .perm import BRUTE_FORCE_CAP, CapExceededError, PermGroup, Permutation
from .repro import CLAIMS, run_claim
from .zoo import GroupSpec, inner_holomorph, regular_representation

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

_NAME_RE = re.compile(r"^\s*([a-z0-9_]+)\s*(?:\(\s*([0-9,\s]*)\s*\))?\s*$")


def parse_spec(text):
    """A GroupSpec from JSON or from name syntax like 'frobenius(7,3)'."""
    text = text.strip()
    if text.startswith("{"):
        return GroupSpec.from_json(json.loads(text))
    m = _NAME_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse spec {text!r}")
    kind, args = m.group(1), m.group(2)
    args = [int(a) for a in args.split(",") if a.strip()] if args else []
    simple = {"cyclic": GroupSpec.cyclic,
              "elementary_abelian_2": GroupSpec.elementary_abelian_2,
              "dihedral": GroupSpec.dihedral,
              "dicyclic": GroupSpec.dicyclic,
              "frobenius": GroupSpec.frobenius,
              "zn_semidirect_y": GroupSpec.zn_semidirect_y}
    if kind in simple:
        return simple[kind](*args)
    if kind in ("z4", "z8", "q8") and not args:
        return getattr(GroupSpec, kind)()
    raise ValueError(f"unknown spec kind {kind!r}")


def _load_group(path):
    with open(path) as fh:
        data = json.load(fh)
    return PermGroup(data["degree"],
                     [Permutation(images) for images in data["generators"]])


def _group_json(G):
    return {"degree": G.degree, "order": G.order,
            "generators": [list(g.images) for g in G.generators]}


def _emit(payload, out_path):
    text = json.dumps(payload, indent=1, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    print(text)


def cmd_construct(args):
    spec = parse_spec(args.spec)
    if args.holomorph:
        G = inner_holomorph(spec)
        label = "inner_holomorph"
    else:
        G = regular_representation(spec, args.side).group
        label = f"{args.side}_regular"
    _emit({"spec": spec.to_json(), "construction": label,
           "group": _group_json(G)}, args.out)
    return EXIT_PASS


def cmd_closure(args):
    if args.fixture:
        G = _load_group(args.fixture)
        source = {"fixture": args.fixture}
    else:
        spec = parse_spec(args.spec)
        G = regular_representation(spec, "left").group
        source = {"spec": spec.to_json()}
    C = k_closure(G, args.k, args.budget)
    _emit({"source": source, "k": args.k,
           "closure": _group_json(C),
           "is_k_closed": C.order == G.order}, args.out)
    return EXIT_PASS


def cmd_ci_check(args):
    target = parse_spec(args.target_spec)
    if args.fixture:
        A = _load_group(args.fixture)
    else:
        A = inner_holomorph(parse_spec(args.spec))
    verdict = babai_check(A, target, args.cap)
    _emit({"ambient_order": A.order, "target": target.to_json(),
           "verdict": verdict.to_json()}, args.out)
    return EXIT_PASS if verdict.status != "not_ci_witness" else EXIT_FAIL


def cmd_tower(args):
    R = _load_group(args.groups[0])
    T = _load_group(args.groups[1])
    result = block_tower_search(R, T, args.cap)
    if isinstance(result, TowerResult):
        _emit(result.to_json(), args.out)
        return EXIT_PASS
    _emit(result, args.out)
    return EXIT_FAIL


def cmd_reproduce(args):
    start = time.perf_counter()
    body = run_claim(args.claim, seed=args.seed)
    elapsed = time.perf_counter() - start
    _emit({"report": body, "wall_time_seconds": round(elapsed, 3)}, args.out)
    return EXIT_PASS if body["pass"] else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cayleykit",
        description="group constructions, k-closures and Cayley-isomorphism "
                    "checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a permutation group as JSON")
    p.add_argument("--spec", required=True)
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--holomorph", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("closure", help="k-closure of a group")
    p.add_argument("--spec")
    p.add_argument("--fixture", help="path to a PermGroup JSON file")
    p.add_argument("--k", type=int, choices=[1, 2, 3], default=2)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("ci-check",
                       help="conjugacy classes of regular subgroups")
    p.add_argument("--spec", help="ambient = inner holomorph of this spec")
    p.add_argument("--fixture", help="ambient from a PermGroup JSON file")
    p.add_argument("--target-spec", required=True)
    p.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_ci_check)

    p = sub.add_parser("tower", help="block tower search for two regular "
                                     "groups from JSON files")
    p.add_argument("groups", nargs=2, metavar="GROUP_JSON")
    p.add_argument("--cap", type=int, default=BRUTE_FORCE_CAP)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_tower)

    p = sub.add_parser("reproduce", help="run a named claim pipeline")
    p.add_argument("claim", choices=sorted(CLAIMS))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_reproduce)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        if args.command == "closure" and not (args.spec or args.fixture):
            parser.error("closure needs --spec or --fixture")
        if args.command == "ci-check" and not (args.spec or args.fixture):
            parser.error("ci-check needs --spec or --fixture")
        return args.fn(args)
    except (CapExceededError, BudgetExceededError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_BUDGET
    except SystemExit:
        return EXIT_USAGE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
