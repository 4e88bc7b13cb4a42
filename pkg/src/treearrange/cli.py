"""Command-line front end.

Every command is deterministic byte for byte for fixed inputs and flags.
Exit codes: 0 ok, 2 usage error, 3 invalid input, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bounds as bounds_mod
from .approx import approx_arrangement
from .arrangement import (
    Arrangement,
    GuestTree,
    arrangement_from_json,
    arrangement_to_json,
    distance_profile,
    objective_value,
    validate,
)
from .errors import BudgetExceededError, InvalidInputError
from .gadgets import build_reduction, nmts_from_json, reduction_to_json, witness_arrangement
from .oracle import DEFAULT_BUDGET, exact_dapt, exact_kbpp
from .partition import (
    component_count_profile,
    construct_optimal,
    cut_count,
    partition_to_json,
)

BUDGET_ENV_VAR = "TREEARRANGE_ORACLE_BUDGET"


class _UsageError(Exception):
    """Bad flag values: reported like argparse errors, exit code 2."""


def _leaf_sequence_text(arr: Arrangement) -> str:
    return " ".join(
        "-" if v is None else str(v) for v in arr.leaf_sequence()
    )


def _profile_lines(arr: Arrangement) -> list[str]:
    profile = distance_profile(arr)
    return [
        "a " + " ".join(str(v) for v in profile.a),
        "s " + " ".join(str(v) for v in profile.s),
    ]


def _cmd_arrange(args) -> int:
    if args.height < 0:
        raise _UsageError("--height must be >= 0")
    arr = approx_arrangement(args.height)
    print(f"height {args.height}")
    print("leaves " + _leaf_sequence_text(arr))
    print(f"OV {objective_value(arr)}")
    for line in _profile_lines(arr):
        print(line)
    if args.emit_json:
        with open(args.emit_json, "w") as handle:
            handle.write(arrangement_to_json(arr))
    return 0


def _cmd_evaluate(args) -> int:
    with open(args.arrangement) as handle:
        arr = arrangement_from_json(handle.read())
    violations = validate(arr)
    if violations:
        for violation in violations:
            print(f"invalid: {violation}", file=sys.stderr)
        return 3
    print(f"OV {objective_value(arr)}")
    for line in _profile_lines(arr):
        print(line)
    return 0


def _cmd_kbpp(args) -> int:
    if args.height < 1:
        raise _UsageError("--height must be >= 1")
    if not 1 <= args.kprime <= args.height:
        raise _UsageError(f"--kprime must satisfy 1 <= k' <= height, got {args.kprime}")
    part = construct_optimal(args.height, args.kprime)
    profile = component_count_profile(part)
    sizes: dict[int, int] = {}
    for count in part.block_sizes().values():
        sizes[count] = sizes.get(count, 0) + 1
    print(f"height {args.height}")
    print(f"k_prime {args.kprime}")
    print(f"cuts {cut_count(part)}")
    print("components " + " ".join(f"{i}:{profile[i]}" for i in sorted(profile)))
    print("sizes " + " ".join(f"{s}:{sizes[s]}" for s in sorted(sizes)))
    if args.emit_json:
        with open(args.emit_json, "w") as handle:
            handle.write(partition_to_json(part, args.kprime))
    return 0


def _cmd_bound(args) -> int:
    if args.height < 1:
        raise _UsageError("--height must be >= 1")
    table = bounds_mod.lower_bound_table(args.height)
    values = list(reversed(table.s_lower))
    indexes = list(range(args.height + 1, 0, -1))
    print(f"h_G {args.height}")
    print("i       " + " ".join(str(i) for i in indexes))
    print("s_lower " + " ".join(str(v) for v in values))
    print(f"bound {table.bound()}")
    return 0


def _cmd_ratio(args) -> int:
    if args.height < 1:
        raise _UsageError("--height must be >= 1")
    certificate = bounds_mod.ratio_certificate(args.height)
    print(f"h_G {args.height}")
    if args.height >= 4:
        print(f"rho {bounds_mod.approximation_ratio(args.height):#.9g}")
    else:
        print("rho -")
    print(f"empirical {certificate.objective}/{certificate.lower_bound}")
    return 0


def _cmd_tables(args) -> int:
    if args.max_height < 1:
        raise _UsageError("--max-height must be >= 1")
    heights = range(1, min(args.max_height, 5) + 1)
    if args.format == "csv":
        print("h_G,i,s_alg,s_lower")
        for h in heights:
            for i, s, l in bounds_mod.comparison_rows(h):
                print(f"{h},{i},{s},{l}")
        return 0
    blocks = [bounds_mod.comparison_text(h) for h in heights]
    print("\n".join(blocks), end="")
    return 0


def _resolve_budget(args) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidInputError(f"{BUDGET_ENV_VAR} must be an integer") from exc
    return DEFAULT_BUDGET


def _cmd_exact(args) -> int:
    if args.threads < 1:
        raise _UsageError("--threads must be >= 1")
    if args.budget is not None and args.budget < 1:
        raise _UsageError("--budget must be >= 1")
    budget = _resolve_budget(args)
    if args.mode == "dapt":
        if args.star is None and args.height is None:
            raise _UsageError("exact --mode dapt needs --height or --star")
        if args.star is not None:
            guest = GuestTree.star(args.star)
        else:
            guest = GuestTree.complete_binary(args.height)
        value, witness = exact_dapt(
            guest, args.degree, budget=budget, threads=args.threads
        )
        print("mode dapt")
        print(f"degree {args.degree}")
        print(f"optimum {value}")
        print("witness " + _leaf_sequence_text(witness))
        if args.emit_json:
            with open(args.emit_json, "w") as handle:
                handle.write(arrangement_to_json(witness))
        return 0
    if args.height is None or args.kprime is None:
        raise _UsageError("exact --mode kbpp needs --height and --kprime")
    if not 1 <= args.kprime <= args.height:
        raise _UsageError(f"--kprime must satisfy 1 <= k' <= height, got {args.kprime}")
    guest = GuestTree.complete_binary(args.height)
    value, witness = exact_kbpp(
        guest, 2**args.kprime, budget=budget, threads=args.threads
    )
    print("mode kbpp")
    print(f"k {2 ** args.kprime}")
    print(f"optimum {value}")
    print("witness " + " ".join(str(b) for b in witness.block_of))
    if args.emit_json:
        with open(args.emit_json, "w") as handle:
            handle.write(partition_to_json(witness, args.kprime))
    return 0


def _parse_permutation(text: str, name: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"{name} must be a comma-separated permutation") from exc


def _cmd_reduce_nmts(args) -> int:
    with open(args.input) as handle:
        inst = nmts_from_json(handle.read())
    red = build_reduction(inst, args.degree)
    print(f"degree {red.degree}")
    print(f"n {inst.n}")
    print(f"l {red.l}")
    print(f"L {red.L}")
    print(f"vertices {red.guest.n}")
    print(f"plain {red.plain_count}")
    print(f"fillers {red.filler_count}")
    print("x_sizes " + " ".join(str(s) for s in red.x_sizes))
    print("y_sizes " + " ".join(str(s) for s in red.y_sizes))
    print("z_sizes " + " ".join(str(s) for s in red.z_sizes))
    print(f"target {red.target}")
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(reduction_to_json(red))
    if (args.witness_j is None) != (args.witness_k is None):
        raise _UsageError("--witness-j and --witness-k must be given together")
    if args.witness_j is not None:
        perm_j = _parse_permutation(args.witness_j, "--witness-j")
        perm_k = _parse_permutation(args.witness_k, "--witness-k")
        witness = witness_arrangement(red, perm_j, perm_k)
        ov = objective_value(witness)
        print(f"witness_ov {ov}")
        print(f"witness_matches_target {'yes' if ov == red.target else 'no'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treearrange",
        description="Arrangements of tree data on regular-tree leaves: "
        "solver, bounds, exact oracles and reduction gadgets.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("arrange", help="run the recursive solver")
    cmd.add_argument("--height", type=int, required=True)
    cmd.add_argument("--emit-json", metavar="PATH")
    cmd.set_defaults(handler=_cmd_arrange)

    cmd = commands.add_parser("evaluate", help="evaluate an arrangement document")
    cmd.add_argument("--arrangement", metavar="PATH", required=True)
    cmd.set_defaults(handler=_cmd_evaluate)

    cmd = commands.add_parser("kbpp", help="build the optimal balanced partition")
    cmd.add_argument("--height", type=int, required=True)
    cmd.add_argument("--kprime", type=int, required=True)
    cmd.add_argument("--emit-json", metavar="PATH")
    cmd.set_defaults(handler=_cmd_kbpp)

    cmd = commands.add_parser("bound", help="print the lower-bound table")
    cmd.add_argument("--height", type=int, required=True)
    cmd.set_defaults(handler=_cmd_bound)

    cmd = commands.add_parser("ratio", help="print ratio guarantee and empirical ratio")
    cmd.add_argument("--height", type=int, required=True)
    cmd.set_defaults(handler=_cmd_ratio)

    cmd = commands.add_parser("tables", help="solver-versus-bound tables")
    cmd.add_argument("--max-height", type=int, required=True)
    cmd.add_argument("--format", choices=("text", "csv"), default="text")
    cmd.set_defaults(handler=_cmd_tables)

    cmd = commands.add_parser("exact", help="exhaustive search for small instances")
    cmd.add_argument("--mode", choices=("dapt", "kbpp"), required=True)
    cmd.add_argument("--height", type=int)
    cmd.add_argument("--kprime", type=int)
    cmd.add_argument("--star", type=int, help="star guest with this many vertices")
    cmd.add_argument("--degree", type=int, default=2)
    cmd.add_argument("--threads", type=int, default=1)
    cmd.add_argument("--budget", type=int, help=f"visit budget (or ${BUDGET_ENV_VAR})")
    cmd.add_argument("--emit-json", metavar="PATH")
    cmd.set_defaults(handler=_cmd_exact)

    cmd = commands.add_parser("reduce-nmts", help="build a reduction gadget")
    cmd.add_argument("--input", metavar="PATH", required=True)
    cmd.add_argument("--degree", type=int, required=True)
    cmd.add_argument("--output", metavar="PATH")
    cmd.add_argument("--witness-j", metavar="PERM")
    cmd.add_argument("--witness-k", metavar="PERM")
    cmd.set_defaults(handler=_cmd_reduce_nmts)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: search budget exceeded (limit {exc.budget})", file=sys.stderr)
        return 4
    except (InvalidInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
