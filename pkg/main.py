# File: main.py
# Description: Command-line entry point tying the design, rank, closure, trade and
# census modules together. Results go to stdout; status and errors go to stderr.
#
# Exit codes: 0 success, 1 a checked property fails, 2 usage or I/O error.

import argparse
import sys
from dataclasses import dataclass
from math import comb
from pathlib import Path

import config
from analysis.census import prime_agreement, rank_spectrum, write_census, enumerate_ts
from analysis.trades import (find_quadrilateral_trades, gram_f3_witness, pencil_matrix,
                             pencil_vector, repeated_block_witnesses, repeated_blocks,
                             trade_to_kernel)
from construct.closure import compose, exception_status
from construct.seeds import SEED_ORDERS, affine_plane, seed, seed_catalog, steiner_triple_system
from design.errors import DesignError
from design.fileio import read_design, serialize_design, write_design
from design.model import admissible, validate_pbd
from linalg.incidence import build_ns, export_matrix, gram, parse_matrix
from linalg.rank import format_rank_report, rank_certified, rank_mod_p, verify_kernel_vector
from utils.console import fail, status, success


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    report: str


class _UsageError(Exception):
    pass


def _parse_field(text):
    if text.lower() in ("q", "rational"):
        return "q"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be 'q' or a prime, got {text!r}")


def _csv_ints(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=config.DEFAULT_SEED,
                        help="seed for every random choice (echoed in output)")
    common.add_argument("--quiet", action="store_true", help="suppress status lines on stderr")

    parser = argparse.ArgumentParser(prog="main.py", description="Triple systems, PBDs and ranks of N_2")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check pair coverage of a design")
    p.add_argument("--design", required=True)

    p = sub.add_parser("admissible", parents=[common], help="global and local divisibility conditions")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--k", type=_csv_ints, default=[3])

    p = sub.add_parser("n2", parents=[common], help="emit N_s in sparse triple format")
    p.add_argument("--design", required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--out")

    p = sub.add_parser("rank", parents=[common], help="certified rank of N_2 (or of a matrix file)")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--design")
    source.add_argument("--matrix")
    p.add_argument("--field", type=_parse_field, action="append",
                   help="q or a prime; repeat for several fields (default q)")
    p.add_argument("--require-nonsingular", action="store_true")

    p = sub.add_parser("compose", parents=[common], help="break every PBD block into a seed")
    p.add_argument("--design", required=True, help="frame PBD with index 1")
    p.add_argument("--seeds", default="builtin", help="'builtin' or a directory of seed designs")
    p.add_argument("--out")

    p = sub.add_parser("seeds", parents=[common], help="print the built-in seeds")
    p.add_argument("--u", type=int, choices=SEED_ORDERS)
    p.add_argument("--out")

    p = sub.add_parser("fixture", parents=[common], help="generate fixture designs")
    p.add_argument("kind", choices=["affine-plane", "sts"])
    p.add_argument("--q", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--out")

    p = sub.add_parser("trades", parents=[common], help="quadrilateral trades and repeated blocks")
    p.add_argument("--design", required=True)

    p = sub.add_parser("pencil-check", parents=[common], help="F2 pencil and F3 Gram kernel witnesses")
    p.add_argument("--design", required=True)

    for name in ("enumerate", "spectrum"):
        p = sub.add_parser(name, parents=[common], help=f"{name} TS_lambda(v) up to isomorphism")
        p.add_argument("--v", type=int, required=True)
        p.add_argument("--lambda", dest="lam", type=int, default=3)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--checkpoint")
        if name == "enumerate":
            p.add_argument("--out", required=True)

    p = sub.add_parser("agreement", parents=[common], help="compare Q-rank with p-ranks over a census")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, default=3)
    p.add_argument("--primes", type=_csv_ints, default=list(config.AGREEMENT_PRIMES))

    p = sub.add_parser("status", parents=[common], help="is v a possible exception of the 5,7,9 closure")
    p.add_argument("--v", type=int, required=True)
    return parser


def _emit_design(d, out):
    if out:
        write_design(out, d)
        success(f"Wrote {out}")
        return ""
    return serialize_design(d)


def cmd_validate(args):
    d = read_design(args.design)
    report = validate_pbd(d)
    lines = [f"valid={str(report.is_valid).lower()} v={d.v} lambda={d.lam} blocks={d.num_blocks}"]
    lines.extend(f"pair {a} {b} multiplicity={count}" for (a, b), count in report.deviations)
    return (0 if report.is_valid else 1), "\n".join(lines) + "\n"


def cmd_admissible(args):
    report = admissible(args.v, args.lam, args.k)
    text = (f"alpha={report.alpha} beta={report.beta} "
            f"global={str(report.global_ok).lower()} local={str(report.local_ok).lower()}\n")
    return (0 if report.ok else 1), text


def cmd_n2(args):
    text = export_matrix(build_ns(read_design(args.design), args.s))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        success(f"Wrote {args.out}")
        return 0, ""
    return 0, text


def cmd_rank(args):
    if args.design:
        matrix = build_ns(read_design(args.design), 2)
    else:
        matrix = parse_matrix(Path(args.matrix).read_text(encoding="utf-8"))
    fields = args.field or ["q"]
    primes = [f for f in fields if f != "q"]
    report = rank_certified(matrix, primes, args.seed)
    if args.require_nonsingular and not report.nonsingular:
        fail(f"N_2 is singular: rank {report.q_rank} of {report.rows}x{report.cols}")
        return 1, format_rank_report(report)
    return 0, format_rank_report(report)


def _load_seeds(where):
    if where == "builtin":
        return seed_catalog()
    seeds = {}
    for path in sorted(Path(where).glob(f"*{config.DESIGN_SUFFIX}")):
        d = read_design(path)
        seeds[d.v] = d
    if not seeds:
        raise _UsageError(f"no {config.DESIGN_SUFFIX} seed files in {where}")
    return seeds


def cmd_compose(args):
    composed = compose(read_design(args.design), _load_seeds(args.seeds))
    status(f"Composed a PBD_{composed.lam}({composed.v}) with {composed.num_blocks} blocks")
    return 0, _emit_design(composed, args.out)


def cmd_seeds(args):
    orders = [args.u] if args.u else list(SEED_ORDERS)
    if args.out:
        for u in orders:
            write_design(Path(args.out) / f"seed{u}{config.DESIGN_SUFFIX}", seed(u))
        success(f"Wrote {len(orders)} seeds to {args.out}")
        return 0, ""
    return 0, "\n".join(serialize_design(seed(u)) for u in orders)


def cmd_fixture(args):
    if args.kind == "affine-plane":
        if args.q is None:
            raise _UsageError("fixture affine-plane needs --q")
        d = affine_plane(args.q)
    else:
        if args.v is None:
            raise _UsageError("fixture sts needs --v")
        d = steiner_triple_system(args.v)
    return 0, _emit_design(d, args.out)


def cmd_trades(args):
    d = read_design(args.design)
    lines = []
    for block, m in repeated_blocks(d):
        lines.append(f"repeated {' '.join(map(str, block))} x{m}")
    trades = find_quadrilateral_trades(d)
    for i, t in enumerate(trades, start=1):
        lines.append(f"trade {i}")
        lines.append("  A: " + ", ".join(" ".join(map(str, b)) for b in t.side_a))
        lines.append("  B: " + ", ".join(" ".join(map(str, b)) for b in t.side_b))
        lines.append("  kernel: " + trade_to_kernel(t, d).sparse())
    lines.append(f"quadrilateral_trades={len(trades)} repeated_pairs={len(repeated_block_witnesses(d))}")
    return 0, "\n".join(lines) + "\n"


def cmd_pencil_check(args):
    d = read_design(args.design)
    n2 = build_ns(d, 2)
    pencils_ok = all(verify_kernel_vector(pencil_vector(x, d.v).vector, n2, "left", 2)
                     for x in range(d.v))
    pencil_rank = rank_mod_p(pencil_matrix(d.v), 2)
    witness = gram_f3_witness(d)
    gram_ok = verify_kernel_vector(witness.vector, gram(n2), "right", 3)
    ok = pencils_ok and pencil_rank == d.v - 1 and gram_ok
    text = (f"pencils_in_left_kernel_f2={str(pencils_ok).lower()} "
            f"pencil_rank_f2={pencil_rank} expected={d.v - 1}\n"
            f"all_ones_in_gram_kernel_f3={str(gram_ok).lower()}\n")
    return (0 if ok else 1), text


def cmd_enumerate(args):
    records = enumerate_ts(args.v, args.lam, args.threads, args.checkpoint, seed=args.seed)
    write_census(records, args.out)
    return 0, f"classes={len(records)} out={args.out} prng_seed={args.seed}\n"


def cmd_spectrum(args):
    report = rank_spectrum(args.v, args.lam, args.threads, args.checkpoint, seed=args.seed)
    text = (f"classes={report.class_count}\n"
            f"rank_multiset={','.join(map(str, report.rank_multiset))}\n"
            f"distinct_ranks={','.join(map(str, report.distinct_ranks))}\n"
            f"nonsingular_count={report.nonsingular_count} order={comb(args.v, 2)}\n"
            f"prng_seed={args.seed}\n")
    return 0, text


def cmd_agreement(args):
    records = enumerate_ts(args.v, args.lam, seed=args.seed)
    found = prime_agreement(records, args.primes)
    lines = [f"class {c} p={p} p_rank={pr} q_rank={qr}" for c, p, pr, qr in found]
    lines.append(f"classes={len(records)} primes={','.join(map(str, args.primes))} "
                 f"disagreements={len(found)}")
    return 0, "\n".join(lines) + "\n"


def cmd_status(args):
    return 0, f"v={args.v} status={exception_status(args.v)}\n"


COMMANDS = {
    "validate": cmd_validate,
    "admissible": cmd_admissible,
    "n2": cmd_n2,
    "rank": cmd_rank,
    "compose": cmd_compose,
    "seeds": cmd_seeds,
    "fixture": cmd_fixture,
    "trades": cmd_trades,
    "pencil-check": cmd_pencil_check,
    "enumerate": cmd_enumerate,
    "spectrum": cmd_spectrum,
    "agreement": cmd_agreement,
    "status": cmd_status,
}


def run(argv) -> CommandOutcome:
    """
    Parses argv and dispatches to one subcommand.

    Args:
        argv (list): Arguments without the program name

    Returns:
        CommandOutcome: exit code and the text meant for stdout
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return CommandOutcome(exit_code=0 if e.code == 0 else 2, report="")

    if args.quiet:
        config.VERBOSE = False
    try:
        code, report = COMMANDS[args.command](args)
    except (DesignError, _UsageError, OSError) as e:
        fail(str(e))
        return CommandOutcome(exit_code=2, report="")
    return CommandOutcome(exit_code=code, report=report)


def main():
    outcome = run(sys.argv[1:])
    sys.stdout.write(outcome.report)
    sys.exit(outcome.exit_code)


if __name__ == "__main__":
    main()
