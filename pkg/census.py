#!/usr/bin/env python3
"""
Chamber, stratum and threshold-function census.
Classifies length vectors, realizes genetic codes, synthesizes threshold
functions and recomputes the published count tables with exact arithmetic.

Usage:
    uv run census.py classify --lengths 1,1,2,3,3,5 [--allow-strata]
    uv run census.py realize --code "6,3;6,2,1" [--n N] [--integral]
    uv run census.py synthesize --table e8 --n 3 [--self-dual-at-half] [--integral]
    uv run census.py count --what codes|chambers|strata|total-strata --n N [--from-cache FILE]
    uv run census.py tables --max-n N [--format csv|json] [--check]
    uv run census.py orbit --lengths=-2,0,1
    uv run census.py game --lengths 1,1,1,5 [--dummies | --equiv L2 | --weights]
    uv run census.py enumerate (--codes | --strata) --n N [--out FILE] [--resume FILE] [--list]
    uv run census.py oeis --what codes|chambers|strata|total-strata --max-n N
"""

import argparse
import os
import sys

import requests

from lib.boolfn import BoolFunc
from lib.cachefile import read_codes, read_codes_header, write_codes
from lib.config import (
    CENSUS_CACHE_DIR,
    default_parallel, progress_enabled, validate_config,
    parse_code_arg, parse_hex_arg, parse_lengths_arg, parse_positive_int,
)
from lib.errors import CensusError, NonGenericError
from lib.games import dummies, game_from_lengths, is_decisive, is_weighted_majority, strategically_equivalent
from lib.genetic import (
    MAX_CHAMBER_N, MAX_VIRTUAL_N,
    GeneticCode, NonGeneric, chamber_witnesses, count_chambers, count_virtual_codes, enumerate_virtual_codes,
    genetic_code_of, realize_code, short_family,
)
from lib.group import canonical_real_with_witness
from lib.oeis import search_terms
from lib.report import (
    build_table_rows, classify_document, group_element_json, members_text, realize_document,
    render_json, render_table_csv, render_table_json, synthesize_document, table_mismatches, vector_json,
)
from lib.strata import MAX_STRATA_N, canonical_signature, enumerate_strata_positive, tk_recursion
from lib.threshold import synthesize

WHAT_CHOICES = ["codes", "chambers", "strata", "total-strata"]
LIMITS = {"codes": MAX_VIRTUAL_N, "chambers": MAX_CHAMBER_N, "strata": MAX_STRATA_N, "total-strata": MAX_STRATA_N}
OEIS_FIRST_N = {"codes": 3, "chambers": 3, "strata": 1, "total-strata": 1}


# ---------------------------------------------------------------------------
# Counting helpers
# ---------------------------------------------------------------------------

def chamber_census(last: int, parallel: int, progress: bool) -> dict[int, list]:
    """Chamber witnesses for n = 1..last; c(n) is their number and they seed the strata search."""
    return {n: chamber_witnesses(n, parallel=parallel, progress=progress) for n in range(1, last + 1)}


def strata_counts(witnesses: dict[int, list], parallel: int, progress: bool) -> dict[int, int]:
    return {
        n: len(enumerate_strata_positive(n, parallel=parallel, progress=progress, witnesses=found))
        for n, found in witnesses.items()
    }


def compute_sequence(what: str, first: int, last: int, parallel: int, progress: bool) -> dict[int, int]:
    if what == "codes":
        return {n: count_virtual_codes(n, parallel=parallel, progress=progress) for n in range(first, last + 1)}
    if what == "chambers":
        return {n: count_chambers(n, parallel=parallel, progress=progress) for n in range(first, last + 1)}
    witnesses = chamber_census(last, parallel, progress)
    k_values = strata_counts(witnesses, parallel, progress)
    if what == "strata":
        return {n: k_values[n] for n in range(first, last + 1)}
    c_values = {n: len(found) for n, found in witnesses.items() if n < last}
    tk = tk_recursion(k_values, c_values)
    return {n: tk[n] for n in range(first, last + 1)}


def check_n(parser: argparse.ArgumentParser, flag: str, n: int, what: str) -> None:
    if n > LIMITS[what]:
        parser.error(f"argument {flag}: {n} is outside 1..{LIMITS[what]} for {what}")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_classify(args: argparse.Namespace) -> None:
    canonical, g = canonical_real_with_witness(args.lengths)
    family = short_family(canonical)
    if isinstance(family, NonGeneric):
        if not args.allow_strata:
            raise NonGenericError(family.wall)
        signature = canonical_signature(canonical) if all(v > 0 for v in canonical) else None
        print(render_json(classify_document(args.lengths, canonical, g, wall=family.wall, signature=signature)))
        return
    code = genetic_code_of(canonical)
    print(render_json(classify_document(args.lengths, canonical, g, code=code)))


def cmd_realize(args: argparse.Namespace) -> None:
    code = GeneticCode.from_text(args.code, args.n)
    print(render_json(realize_document(code, realize_code(code, integral=args.integral))))


def cmd_synthesize(args: argparse.Namespace, f: BoolFunc) -> None:
    found = synthesize(f, at_half=args.self_dual_at_half, integral=args.integral)
    print(render_json(synthesize_document(f.to_hex(), f.n, found)))


def cmd_count(args: argparse.Namespace) -> None:
    if args.from_cache:
        n, declared = read_codes_header(args.from_cache)
        if args.n is not None and args.n != n:
            raise CensusError(f"cache {args.from_cache} holds codes of type {n}, not {args.n}")
        print(f"Counting cached codes of type {n} (header says {declared})", file=sys.stderr)
        print(sum(1 for _ in read_codes(args.from_cache)))
        return
    values = compute_sequence(args.what, args.n, args.n, args.parallel, args.progress)
    print(values[args.n])


def cmd_tables(args: argparse.Namespace) -> int:
    max_n = args.max_n
    strata_n = min(max_n, MAX_STRATA_N)
    witnesses = chamber_census(strata_n, args.parallel, args.progress)
    chambers = {n: len(found) for n, found in witnesses.items()}
    chambers.update(compute_sequence("chambers", strata_n + 1, min(max_n, MAX_CHAMBER_N), args.parallel, args.progress))
    columns = {
        "c": chambers,
        "v": compute_sequence("codes", 1, min(max_n, MAX_VIRTUAL_N), args.parallel, args.progress),
        "k": strata_counts(witnesses, args.parallel, args.progress),
    }
    columns["tk"] = tk_recursion(columns["k"], {n: c for n, c in chambers.items() if n < strata_n})
    rows = build_table_rows(columns, max_n)
    print(render_table_csv(rows) if args.format == "csv" else render_table_json(rows))
    if args.check:
        problems = table_mismatches(rows)
        for problem in problems:
            print(f"[ERROR] {problem}", file=sys.stderr)
        if problems:
            return 1
        print("All computed values match the published tables.", file=sys.stderr)
    return 0


def cmd_orbit(args: argparse.Namespace) -> None:
    canonical, g = canonical_real_with_witness(args.lengths)
    print(render_json({
        "lengths": vector_json(args.lengths),
        "canonical": vector_json(canonical),
        "group_element": group_element_json(g),
    }))


def cmd_game(args: argparse.Namespace) -> None:
    game = game_from_lengths(args.lengths)
    doc = {"n": game.n, "winning_table_hex": game.winning.to_hex(), "decisive": is_decisive(game)}
    if args.dummies:
        doc["dummies"] = dummies(game)
    elif args.equiv is not None:
        doc["equivalent"] = strategically_equivalent(game, game_from_lengths(args.equiv))
    elif args.weights:
        weights = is_weighted_majority(game, integral=True)
        if weights is None:
            doc["result"] = "not-weighted"
        else:
            doc["weights"] = vector_json(weights)
    print(render_json(doc))


def default_cache_path(kind: str, n: int) -> str:
    os.makedirs(CENSUS_CACHE_DIR, exist_ok=True)
    return os.path.join(CENSUS_CACHE_DIR, f"{kind}-n{n}.bin")


def cmd_enumerate(args: argparse.Namespace) -> None:
    if args.codes:
        path = args.out or default_cache_path("codes", args.n)
        codes = enumerate_virtual_codes(args.n)
        if args.list:
            codes = _echo(codes, lambda c: c.to_text())
        count = write_codes(path, args.n, codes)
        print(f"Wrote {count} codes to {path}", file=sys.stderr)
        print(count)
        return
    path = args.out or default_cache_path("strata", args.n)
    strata = enumerate_strata_positive(
        args.n, parallel=args.parallel, progress=args.progress, checkpoint=path, resume=args.resume,
    )
    if args.list:
        for sig in strata:
            print(f"{sig.to_text()} {sig.dimension}")
    print(f"Checkpoint written to {path}", file=sys.stderr)
    print(len(strata))


def _echo(items, text):
    for item in items:
        print(text(item))
        yield item


def cmd_oeis(args: argparse.Namespace) -> None:
    first = OEIS_FIRST_N[args.what]
    values = compute_sequence(args.what, first, args.max_n, args.parallel, args.progress)
    terms = [values[n] for n in range(first, args.max_n + 1)]
    print(f"Searching OEIS for {','.join(str(t) for t in terms)}", file=sys.stderr)
    matches = search_terms(terms)
    print(render_json({
        "what": args.what,
        "terms": terms,
        "matches": [{"id": a_number, "name": name} for a_number, name in matches],
    }))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Exact census of chambers, strata, genetic codes and threshold functions.")
    parser.add_argument(
        "--parallel",
        metavar="K",
        type=parse_positive_int,
        default=None,
        help="Worker processes for long counts. Default: CENSUS_PARALLEL or one per core.",
    )
    parser.add_argument(
        "--quiet",
        action="store_true",
        default=False,
        help="Hide progress bars on stderr.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="Canonical form and genetic code of a length vector.")
    p.add_argument("--lengths", required=True, type=parse_lengths_arg, metavar="L")
    p.add_argument(
        "--allow-strata",
        action="store_true",
        default=False,
        help="Report the wall and stratum of a non-generic vector instead of failing.",
    )

    p = sub.add_parser("realize", help="Length vector inducing a genetic code.")
    p.add_argument("--code", required=True, type=parse_code_arg, metavar="C", help='e.g. "6,3;6,2,1"; "-" is the empty code.')
    p.add_argument("--n", type=parse_positive_int, default=None, help="Type of the code. Default: its largest element.")
    p.add_argument("--integral", action="store_true", default=False, help="Clear denominators of the witness.")

    p = sub.add_parser("synthesize", help="Weights and threshold of a Boolean function.")
    p.add_argument("--table", required=True, type=parse_hex_arg, metavar="HEX")
    p.add_argument("--n", required=True, type=parse_positive_int)
    p.add_argument(
        "--self-dual-at-half",
        action="store_true",
        default=False,
        help="Pin the threshold to the half-perimeter of the weights.",
    )
    p.add_argument("--integral", action="store_true", default=False, help="Clear denominators of the weights.")

    p = sub.add_parser("count", help="A single census number.")
    p.add_argument("--what", required=True, choices=WHAT_CHOICES)
    p.add_argument("--n", type=parse_positive_int, default=None)
    p.add_argument("--from-cache", metavar="FILE", default=None, help="Count the codes stored in a VGC1 file.")

    p = sub.add_parser("tables", help="c(n), v(n), k(n), tk(n) up to a bound.")
    p.add_argument("--max-n", required=True, type=parse_positive_int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--check", action="store_true", default=False, help="Exit 1 when a value differs from the published tables.")

    p = sub.add_parser("orbit", help="Canonical orbit representative and a group element reaching it.")
    p.add_argument("--lengths", required=True, type=parse_lengths_arg, metavar="L")

    p = sub.add_parser("game", help="The weighted game of a length vector.")
    p.add_argument("--lengths", required=True, type=parse_lengths_arg, metavar="L")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--dummies", action="store_true", default=False)
    mode.add_argument("--equiv", type=parse_lengths_arg, metavar="L2", default=None)
    mode.add_argument("--weights", action="store_true", default=False)

    p = sub.add_parser("enumerate", help="Write all virtual codes or all strata to a file.")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--codes", action="store_true", default=False)
    kind.add_argument("--strata", action="store_true", default=False)
    p.add_argument("--n", required=True, type=parse_positive_int)
    p.add_argument("--out", metavar="FILE", default=None, help="Output file. Default: under CENSUS_CACHE_DIR.")
    p.add_argument("--resume", metavar="FILE", default=None, help="Resume a strata run from an STR1 checkpoint.")
    p.add_argument("--list", action="store_true", default=False, help="Also print every item on stdout.")

    p = sub.add_parser("oeis", help="Look a computed sequence up in the OEIS.")
    p.add_argument("--what", required=True, choices=WHAT_CHOICES)
    p.add_argument("--max-n", required=True, type=parse_positive_int)
    return parser


def main() -> None:
    parser = build_parser()
    args = parser.parse_args()

    if not validate_config():
        sys.exit(1)
    args.parallel = args.parallel or default_parallel()
    args.progress = progress_enabled() and not args.quiet

    # checks that depend on more than one flag
    f = None
    if args.command == "synthesize":
        try:
            f = BoolFunc.from_hex(args.n, args.table)
        except CensusError as exc:
            parser.error(f"argument --table: {exc}")
    elif args.command == "count":
        if args.from_cache:
            if args.what != "codes":
                parser.error("argument --from-cache: only valid with --what codes")
        elif args.n is None:
            parser.error("argument --n: required unless --from-cache is given")
        else:
            check_n(parser, "--n", args.n, args.what)
    elif args.command == "enumerate":
        if args.resume and not args.strata:
            parser.error("argument --resume: only valid with --strata")
        check_n(parser, "--n", args.n, "codes" if args.codes else "strata")
    elif args.command == "oeis":
        check_n(parser, "--max-n", args.max_n, args.what)
        if args.max_n < OEIS_FIRST_N[args.what] + 2:
            parser.error(f"argument --max-n: need at least three terms, i.e. --max-n >= {OEIS_FIRST_N[args.what] + 2}")

    try:
        if args.command == "classify":
            cmd_classify(args)
        elif args.command == "realize":
            cmd_realize(args)
        elif args.command == "synthesize":
            cmd_synthesize(args, f)
        elif args.command == "count":
            cmd_count(args)
        elif args.command == "tables":
            if cmd_tables(args):
                sys.exit(1)
        elif args.command == "orbit":
            cmd_orbit(args)
        elif args.command == "game":
            cmd_game(args)
        elif args.command == "enumerate":
            cmd_enumerate(args)
        elif args.command == "oeis":
            cmd_oeis(args)
    except NonGenericError as exc:
        print(f"[ERROR] non-generic: {exc} (wall {members_text(exc.wall)})", file=sys.stderr)
        sys.exit(1)
    except CensusError as exc:
        print(f"[ERROR] {exc}", file=sys.stderr)
        sys.exit(1)
    except requests.RequestException as exc:
        print(f"[ERROR] OEIS request failed: {exc}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
