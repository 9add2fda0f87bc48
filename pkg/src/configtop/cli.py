"""Command-line interface.

Each subcommand prints a human-readable summary by default and a stable
JSON document with --json. Exit codes: 0 for success, 1 for a verified
negative on a decision subcommand (a map shown not to exist, a system
shown unsolvable), 2 for usage or domain errors.

Results can be cached with --cache-dir (or the CONFIGTOP_CACHE_DIR
environment variable); a cache hit reproduces the exact bytes of the
original run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .arith import prime_power_parts
from .cache import ResultCache
from .errors import DomainError, OrderError, ParseError, SizeLimitError
from .partitions import DEFAULT_MAX_BELL

SCHEMA_VERSION = 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="configtop",
        description="Exact invariants of configuration-space arrangements.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document")
    common.add_argument(
        "--cache-dir",
        default=None,
        help="cache results here (default: $CONFIGTOP_CACHE_DIR if set)",
    )
    common.add_argument(
        "--max-bell",
        type=int,
        default=DEFAULT_MAX_BELL,
        help="cap on partition-lattice size",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("partitions", parents=[common], help="partition lattice summary")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser(
        "homology", parents=[common], help="homology of the proper-part order complex"
    )
    sp.add_argument("--pi", "--n", dest="n", type=int, required=True, metavar="N")
    sp.add_argument("--coeff", choices=["Z", "Fp"], default="Z")
    sp.add_argument("--p", type=int, default=None, help="prime for Fp coefficients")

    sp = sub.add_parser(
        "pi-module", parents=[common], help="module structure of the p-cycle action"
    )
    sp.add_argument("--p", type=int, required=True)

    sp = sub.add_parser("gm", parents=[common], help="complement cohomology ranks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument(
        "--brute",
        action="store_true",
        help="also run the interval-homology path and compare",
    )

    sp = sub.add_parser("whitney", parents=[common], help="bigraded strand rank table")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--face-range", choices=["full", "printed"], default="full")

    sp = sub.add_parser("index", parents=[common], help="index truncation or bounds")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--k", type=int, default=None, help="rank; omit for the prime case")

    sp = sub.add_parser("zeta", parents=[common], help="Euler classes")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument(
        "--subgroup",
        default=None,
        help='vectors like "1,0;1,1" for the partial class',
    )

    sp = sub.add_parser("dual-sw", parents=[common], help="dual class expansion mod 2")
    sp.add_argument("--d", type=int, required=True, help="a power of 2")
    sp.add_argument("--k", type=int, required=True, help="a power of 2")

    sp = sub.add_parser("obstruction", parents=[common], help="systems and verdicts")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--builtin", default=None, help='named system, e.g. "n4"')
    group.add_argument("--file", default=None, help="parse a system from a file")
    group.add_argument("--zn", type=int, default=None, help="cyclic verdict for n")
    group.add_argument("--symn", type=int, default=None, help="symmetric verdict for n")
    sp.add_argument("--strict-labels", action="store_true")

    sp = sub.add_parser("stab-degree", parents=[common], help="full-stabilizer scan")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)

    return parser


def _coeff_of(args) -> str | tuple[str, int]:
    if args.coeff == "Z":
        return "Z"
    if args.p is None:
        raise DomainError("--coeff Fp needs --p")
    return ("Fp", args.p)


def _cmd_partitions(args):
    from .partitions import bell_number, build_partition_lattice

    lat = build_partition_lattice(args.n, max_bell=args.max_bell)
    sizes: dict[int, int] = {}
    for p in lat.elements:
        sizes[p.size] = sizes.get(p.size, 0) + 1
    payload = {
        "n": args.n,
        "count": len(lat.elements),
        "bell": bell_number(args.n),
        "by_block_count": {str(k): v for k, v in sorted(sizes.items())},
    }
    if len(lat.elements) <= 1000:
        payload["elements"] = [p.to_string() for p in lat.elements]
    lines = [
        f"partition lattice on {args.n} elements: {payload['count']} partitions",
        "blocks  count",
    ] + [f"{k:>6}  {v}" for k, v in sorted(sizes.items())]
    return payload, lines, 0


def _cmd_homology(args):
    from .complexes import chain_complex, order_complex
    from .exact import homology
    from .partitions import build_partition_lattice

    coeff = _coeff_of(args)
    lat = build_partition_lattice(args.n, max_bell=args.max_bell)
    sc = order_complex(lat, "proper")
    summary = homology(chain_complex(sc, coeff))
    payload = {
        "n": args.n,
        "f_vector": list(sc.f_vector()),
        **summary.to_doc(),
    }
    lines = [f"order complex of the proper part, n = {args.n}: f = {sc.f_vector()}"]
    for d in sorted(summary.betti):
        tor = summary.torsion_at(d)
        tor_txt = f" torsion {list(tor)}" if tor else ""
        lines.append(f"H~_{d}: rank {summary.betti[d]}{tor_txt}")
    return payload, lines, 0


def _cmd_pi_module(args):
    from .modrep import partition_homology_descriptor

    desc = partition_homology_descriptor(args.p)
    payload = {
        "p": args.p,
        "free_rank": desc.free_rank,
        "k_multiplicity": desc.k_multiplicity,
        "trivial_rank": desc.trivial_rank,
        "other_blocks": list(desc.other_blocks),
        "is_free_module": desc.k_multiplicity == 0
        and desc.trivial_rank == 0
        and not desc.other_blocks,
    }
    lines = [
        f"p = {args.p}: free rank {desc.free_rank}, K multiplicity "
        f"{desc.k_multiplicity}, trivial rank {desc.trivial_rank}"
    ]
    if desc.other_blocks:
        lines.append(f"unexpected blocks: {list(desc.other_blocks)}")
    return payload, lines, 0


def _cmd_gm(args):
    from .arrangements import config_rank_formula, configuration_arrangement, gm_cohomology

    report = config_rank_formula(args.n, args.d, max_bell=args.max_bell)
    payload = {
        "n": args.n,
        "d": args.d,
        "ranks": {str(k): v for k, v in report.ranks.items()},
        "total_rank": report.total_rank(),
        "cross_checked": False,
    }
    if args.brute:
        lat = configuration_arrangement(args.n, args.d, max_bell=args.max_bell)
        brute = gm_cohomology(lat, "Z")
        if brute.ranks != report.ranks:
            raise DomainError(
                f"closed form {report.ranks} disagrees with interval path {brute.ranks}"
            )
        payload["cross_checked"] = True
    lines = [f"complement cohomology ranks for n = {args.n}, d = {args.d}:"]
    lines += [f"H^{k}: {v}" for k, v in report.ranks.items()]
    lines.append(f"total {report.total_rank()}")
    if args.brute:
        lines.append("interval-homology cross-check passed")
    return payload, lines, 0


def _cmd_whitney(args):
    from .arrangements import whitney_e2

    report = whitney_e2(args.n, args.d, args.p, face_range=args.face_range)
    payload = report.to_doc()
    lines = [
        f"strand table for n = {args.n}, d = {args.d}, p = {args.p} "
        f"({args.face_range} faces):"
    ]
    lines += [f"(r={r}, s={s}): {v}" for (r, s), v in sorted(report.table.items())]
    lines.append(f"matches interval decomposition: {report.matches}")
    return payload, lines, 0


def _cmd_index(args):
    if args.k is None or args.k == 1:
        from .group_cohomology import fh_index_prime

        report = fh_index_prime(args.p, args.d)
        payload = report.to_doc()
        lines = [
            f"index for p = {args.p}, d = {args.d}: everything of degree "
            f">= {report.truncation_degree}",
            f"generators: {', '.join(str(g) for g in report.generators)}",
            f"certificate {report.certificate} has degree {report.certificate_degree}; "
            f"in the index: {report.certificate_in_ideal}",
            f"map to the test sphere exists: {report.map_to_test_sphere_exists}",
        ]
        return payload, lines, 0
    from .group_cohomology import fh_index_bounds

    report = fh_index_bounds(args.p, args.k, args.d, max_bell=args.max_bell)
    payload = report.to_doc()
    lines = [
        f"index bounds for p = {args.p}, k = {args.k}, d = {args.d}:",
        f"smallest invariant degree {report.full_stab_degree}; the index is "
        f"trivial through degree {report.index_trivial_through}",
        f"scan cross-check: {report.cross_checked}",
    ]
    if report.note:
        lines.append(report.note)
    return payload, lines, 0


def _parse_vectors(text: str) -> list[tuple[int, ...]]:
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        vectors.append(tuple(int(x) for x in chunk.split(",")))
    if not vectors:
        raise DomainError("no subgroup vectors given")
    return vectors


def _cmd_zeta(args):
    from .group_cohomology import euler_class_zeta, euler_class_zeta_H

    if args.subgroup is None:
        z = euler_class_zeta(args.p, args.k)
        which = "full"
    else:
        z = euler_class_zeta_H(args.p, args.k, _parse_vectors(args.subgroup))
        which = "partial"
    payload = {
        "p": args.p,
        "k": args.k,
        "which": which,
        "subgroup": args.subgroup,
        "degree": (z.min_degree() or 0),
        "element": str(z),
        "doc": z.to_doc(),
    }
    lines = [f"{which} Euler class, degree {payload['degree']}:", f"  {z}"]
    return payload, lines, 0


def _cmd_dual_sw(args):
    from .group_cohomology import dual_sw_expansion

    lm = prime_power_parts(args.d)
    km = prime_power_parts(args.k)
    if lm is None or lm[0] != 2 or km is None or km[0] != 2:
        raise DomainError("--d and --k must both be powers of 2")
    report = dual_sw_expansion(lm[1], km[1])
    payload = report.to_doc()
    lines = [
        f"dual class expansion for d = {args.d}, k = {args.k} "
        f"(target degree {report.target_degree}):"
    ]
    lines += [
        f"{'kept' if c else 'dropped'}: exponents {list(i)}"
        for i, c in report.candidates
    ]
    lines.append(f"survivors match the single expected power: {report.matches_expected}")
    return payload, lines, 0


def _cmd_obstruction(args):
    from .obstruction import (
        builtin_system,
        integer_solvable,
        parse_bracket_system,
        symn_map_exists,
        zn_map_exists,
    )

    if args.zn is not None:
        verdict = zn_map_exists(args.zn)
    elif args.symn is not None:
        verdict = symn_map_exists(args.symn)
    else:
        if args.builtin is not None:
            system = builtin_system(args.builtin)
        else:
            with open(args.file, encoding="utf-8") as fh:
                system = parse_bracket_system(fh.read(), strict_labels=args.strict_labels)
        result = integer_solvable(system)
        payload = result.to_doc()
        lines = [
            f"system: {system.matrix.rows} equations, {len(system.labels)} variables",
            f"solvable over the integers: {result.solvable}",
        ]
        if result.solvable:
            nonzero = {k: v for k, v in result.witness_by_label().items() if v}
            lines.append(f"witness (nonzero entries): {nonzero}")
        else:
            lines.append(f"certificate: {result.certificate}")
        return payload, lines, 0 if result.solvable else 1
    payload = verdict.to_doc()
    lines = [
        f"n = {verdict.n} ({verdict.group_kind}): map exists: {verdict.exists} "
        f"[{verdict.rationale}]"
    ]
    lines += list(verdict.notes)
    return payload, lines, 0 if verdict.exists else 1


def _cmd_stab_degree(args):
    from .arrangements import full_stabilizer_scan

    scan = full_stabilizer_scan(args.p, args.k, args.d, max_bell=args.max_bell)
    closed = (args.d - 1) * (args.p**args.k - args.p ** (args.k - 1))
    payload = {
        "p": args.p,
        "k": args.k,
        "d": args.d,
        "degree": scan.degree,
        "closed_form": closed,
        "matches_closed_form": scan.degree == closed,
        "witness": scan.witness,
        "witness_block_count": scan.witness_block_count,
        "invariant_block_counts": list(scan.invariant_block_counts),
    }
    lines = [
        f"smallest positive invariant degree for p = {args.p}, k = {args.k}, "
        f"d = {args.d}: {scan.degree}",
        f"witness partition {scan.witness} with {scan.witness_block_count} blocks",
        f"closed form {closed}: match {payload['matches_closed_form']}",
    ]
    return payload, lines, 0


_HANDLERS = {
    "partitions": _cmd_partitions,
    "homology": _cmd_homology,
    "pi-module": _cmd_pi_module,
    "gm": _cmd_gm,
    "whitney": _cmd_whitney,
    "index": _cmd_index,
    "zeta": _cmd_zeta,
    "dual-sw": _cmd_dual_sw,
    "obstruction": _cmd_obstruction,
    "stab-degree": _cmd_stab_degree,
}


def run(argv=None) -> int:
    """Parse arguments, dispatch, print, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    cache_dir = args.cache_dir or os.environ.get("CONFIGTOP_CACHE_DIR")
    params = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("json", "cache_dir") and not callable(v)
    }
    try:
        cached = None
        cache = key = None
        if cache_dir:
            cache = ResultCache(cache_dir)
            key = cache.key(args.command, params)
            cached = cache.load(key)
        if cached is not None:
            payload, lines, code = (
                cached["payload"],
                cached["lines"],
                cached["exit_code"],
            )
        else:
            payload, lines, code = _HANDLERS[args.command](args)
            payload = {"schema_version": SCHEMA_VERSION, "subcommand": args.command, **payload}
            if cache is not None:
                cache.store(
                    key, {"payload": payload, "lines": lines, "exit_code": code}
                )
    except (DomainError, OrderError, ParseError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return code


def main() -> None:
    sys.exit(run())
