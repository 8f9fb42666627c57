"""Command-line entry point.

Verb subcommands: generate, extract, evaluate, curve, randomize, tree. Every
run emits exactly one manifest ("key TAB value" lines) recording the resolved
parameters, inputs, outputs, toolkit version and wall-clock duration; the
stored argv line lets `hiertag --manifest FILE` replay the run. Seeded
subcommands are byte-reproducible; `--threads` (or the HIERTAG_THREADS
environment variable) never changes results, only wall time.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
import time

from . import __version__
from .baselines import (
    CENTRALITY_KINDS,
    SYNTHETIC_ROOT,
    HeymannParams,
    SchmitzParams,
    extract_heymann,
    extract_schmitz,
    strip_synthetic_root,
)
from .benchmark import (
    BenchmarkConfig,
    iter_object_tags,
    parse_count_distribution,
    parse_profile,
    parse_walk_length,
)
from .corpus import build_cooccurrence, load_corpus
from .extract_a import AlgoAParams, extract_a
from .extract_b import AlgoBParams, extract_b
from .hierarchy import (
    REWIRING_ORDERS,
    binary_tree,
    hierarchy_to_text,
    load_hierarchy,
    rewire,
)
from .metrics import decay_curve, evaluate_hierarchies


def _resolve_threads(value: int | None) -> int:
    if value is not None:
        if value < 1:
            raise ValueError("--threads must be >= 1")
        return value
    env = os.environ.get("HIERTAG_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"invalid HIERTAG_THREADS value {env!r}") from None
        if n < 1:
            raise ValueError(f"invalid HIERTAG_THREADS value {env!r}")
        return n
    return 1


def _write_text(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_manifest_argv(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            key, _, value = line.rstrip("\n").partition("\t")
            if key == "argv":
                return value.split("\t")
    raise ValueError(f"manifest {path!r} has no argv line to replay")


def _grid_from_step(step: float) -> tuple[float, ...]:
    if not 0.0 < step <= 1.0:
        raise ValueError("--grid-step must be in (0, 1]")
    points = round(1.0 / step)
    if abs(points * step - 1.0) > 1e-9:
        raise ValueError("--grid-step must divide 1 evenly")
    return tuple(i / points for i in range(points + 1))


def _cmd_generate(args: argparse.Namespace) -> list[tuple[str, str]]:
    threads = _resolve_threads(args.threads)
    h = load_hierarchy(args.hierarchy)
    config = BenchmarkConfig(
        object_count=args.objects,
        p_random_walk=args.p_rw,
        tags_per_object=parse_count_distribution(args.tags_per_object),
        walk_length=parse_walk_length(args.walk),
        frequency_profile=parse_profile(args.profile),
        seed=args.seed,
    )
    lines = (
        "\t".join(tags) + "\n" for tags in iter_object_tags(h, config, threads=threads)
    )
    if args.out == "-":
        for line in lines:
            sys.stdout.write(line)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
    return [
        ("hierarchy", args.hierarchy),
        ("objects", str(args.objects)),
        ("tags_per_object", args.tags_per_object),
        ("p_rw", str(args.p_rw)),
        ("walk", args.walk),
        ("profile", args.profile),
        ("seed", str(args.seed)),
        ("threads", str(threads)),
        ("out", args.out),
    ]


def _cmd_extract(args: argparse.Namespace) -> list[tuple[str, str]]:
    threads = _resolve_threads(args.threads)
    corpus = load_corpus(args.input, with_ids=args.with_ids)
    network = build_cooccurrence(corpus, threads=threads)
    entries = [
        ("input", args.input),
        ("with_ids", str(args.with_ids).lower()),
        ("algorithm", args.algorithm),
        ("threads", str(threads)),
    ]
    if args.algorithm == "a":
        h = extract_a(network, AlgoAParams(omega=args.omega))
        entries.append(("omega", str(args.omega)))
    elif args.algorithm == "b":
        h = extract_b(
            network,
            AlgoBParams(
                z_threshold=args.z_threshold, force_single_root=args.force_single_root
            ),
        )
        entries.append(("z_threshold", str(args.z_threshold)))
        entries.append(("force_single_root", str(args.force_single_root).lower()))
    elif args.algorithm == "heymann":
        h = extract_heymann(
            network,
            HeymannParams(
                similarity_threshold=args.similarity_threshold,
                centrality_kind=args.centrality,
            ),
        )
        entries.append(("similarity_threshold", str(args.similarity_threshold)))
        entries.append(("centrality", args.centrality))
    else:
        h = extract_schmitz(
            network,
            SchmitzParams(
                t_subsume=args.t_subsume, min_cooccurrence=args.min_cooccurrence
            ),
        )
        entries.append(("t_subsume", str(args.t_subsume)))
        entries.append(("min_cooccurrence", str(args.min_cooccurrence)))
    _write_text(args.out, hierarchy_to_text(h))
    entries.append(("out", args.out))
    return entries


def _cmd_evaluate(args: argparse.Namespace) -> list[tuple[str, str]]:
    threads = _resolve_threads(args.threads)
    exact = load_hierarchy(args.exact)
    recon = load_hierarchy(args.recon)
    if SYNTHETIC_ROOT in recon.tags and SYNTHETIC_ROOT not in exact.tags:
        recon = strip_synthetic_root(recon)
    report = evaluate_hierarchies(
        exact,
        recon,
        with_lmi=args.lmi,
        curve_order=args.curve_order,
        curve_runs=args.curve_runs,
        curve_grid=_grid_from_step(args.curve_grid_step),
        seed=args.seed,
        threads=threads,
    )
    _write_text(args.out, report.to_text())
    entries = [
        ("exact", args.exact),
        ("recon", args.recon),
        ("lmi", str(args.lmi).lower()),
        ("seed", str(args.seed)),
        ("threads", str(threads)),
        ("out", args.out),
    ]
    if args.lmi:
        entries.insert(3, ("curve_order", args.curve_order))
        entries.insert(4, ("curve_runs", str(args.curve_runs)))
        entries.insert(5, ("curve_grid_step", str(args.curve_grid_step)))
    return entries


def _cmd_curve(args: argparse.Namespace) -> list[tuple[str, str]]:
    threads = _resolve_threads(args.threads)
    h = load_hierarchy(args.input)
    curve = decay_curve(
        h,
        order=args.order,
        runs=args.runs,
        grid=_grid_from_step(args.grid_step),
        seed=args.seed,
        threads=threads,
    )
    _write_text(args.out, curve.to_text())
    return [
        ("input", args.input),
        ("order", args.order),
        ("runs", str(args.runs)),
        ("grid_step", str(args.grid_step)),
        ("seed", str(args.seed)),
        ("threads", str(threads)),
        ("out", args.out),
    ]


def _cmd_randomize(args: argparse.Namespace) -> list[tuple[str, str]]:
    h = load_hierarchy(args.input)
    rewired = rewire(h, args.fraction, args.order, random.Random(args.seed))
    _write_text(args.out, hierarchy_to_text(rewired))
    return [
        ("input", args.input),
        ("fraction", str(args.fraction)),
        ("order", args.order),
        ("seed", str(args.seed)),
        ("out", args.out),
    ]


def _cmd_tree(args: argparse.Namespace) -> list[tuple[str, str]]:
    _write_text(args.out, hierarchy_to_text(binary_tree(args.levels)))
    return [("levels", str(args.levels)), ("out", args.out)]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hiertag",
        description="Extract, evaluate and benchmark directed tag hierarchies "
        "from tag co-occurrence data.",
    )
    parser.add_argument("--version", action="version", version=f"hiertag {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p: argparse.ArgumentParser, threads: bool = True) -> None:
        p.add_argument("--out", default="-", help="output file ('-' for stdout)")
        p.add_argument(
            "--manifest-out",
            default=None,
            help="manifest file (default: OUT.manifest, or stderr when writing to stdout)",
        )
        if threads:
            p.add_argument(
                "--threads",
                type=int,
                default=None,
                help="worker threads (default: HIERTAG_THREADS or 1; never changes results)",
            )

    p = sub.add_parser("generate", help="generate a benchmark corpus from a hierarchy")
    p.add_argument("--hierarchy", required=True, help="edge-list file of the source hierarchy")
    p.add_argument("--objects", type=int, required=True, help="number of objects to generate")
    p.add_argument(
        "--tags-per-object",
        default="poisson:3",
        help="tags-per-object distribution: fixed:K or poisson:MEAN (truncated >= 1)",
    )
    p.add_argument("--p-rw", type=float, default=0.5, help="probability a tag comes from a random walk")
    p.add_argument("--walk", default="uniform:1:3", help="walk-length distribution: uniform:LO:HI")
    p.add_argument(
        "--profile",
        default="linear-depth",
        help="frequency profile: linear-depth or power-law:EXPONENT",
    )
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(handler=_cmd_generate)

    p = sub.add_parser("extract", help="extract a hierarchy from an objects file")
    p.add_argument("input", help="objects file (one object per line, TAB-separated tags)")
    p.add_argument(
        "--algorithm", required=True, choices=("a", "b", "heymann", "schmitz")
    )
    p.add_argument("--with-ids", action="store_true", help="first field of each line is an object id")
    p.add_argument("--omega", type=float, default=0.4, help="algorithm a: incoming-link threshold factor")
    p.add_argument("--z-threshold", type=float, default=10.0, help="algorithm b: z-score pruning threshold")
    p.add_argument(
        "--force-single-root",
        action="store_true",
        help="algorithm b: attach secondary roots under the most central root",
    )
    p.add_argument("--similarity-threshold", type=float, default=0.1, help="heymann: minimal cosine similarity")
    p.add_argument("--centrality", choices=CENTRALITY_KINDS, default="degree-strength", help="heymann: insertion order")
    p.add_argument("--t-subsume", type=float, default=0.8, help="schmitz: subsumption probability threshold")
    p.add_argument("--min-cooccurrence", type=int, default=10, help="schmitz: minimal pair count")
    common(p)
    p.set_defaults(handler=_cmd_extract)

    p = sub.add_parser("evaluate", help="score a reconstructed hierarchy against the exact one")
    p.add_argument("exact", help="exact hierarchy edge list")
    p.add_argument("recon", help="reconstructed hierarchy edge list")
    p.add_argument("--lmi", action="store_true", help="also calibrate the level of meaningful information")
    p.add_argument("--curve-order", choices=REWIRING_ORDERS, default="random")
    p.add_argument("--curve-runs", type=int, default=10)
    p.add_argument("--curve-grid-step", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(handler=_cmd_evaluate)

    p = sub.add_parser("curve", help="rewiring decay curve of a hierarchy")
    p.add_argument("input", help="hierarchy edge list")
    p.add_argument("--order", choices=REWIRING_ORDERS, default="random")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--grid-step", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(handler=_cmd_curve)

    p = sub.add_parser("randomize", help="rewire a fraction of a hierarchy's links")
    p.add_argument("input", help="hierarchy edge list")
    p.add_argument("--fraction", type=float, required=True)
    p.add_argument("--order", choices=REWIRING_ORDERS, default="random")
    p.add_argument("--seed", type=int, default=0)
    common(p, threads=False)
    p.set_defaults(handler=_cmd_randomize)

    p = sub.add_parser("tree", help="write a balanced binary tree edge list")
    p.add_argument("--levels", type=int, required=True)
    common(p, threads=False)
    p.set_defaults(handler=_cmd_tree)

    return parser


def _write_manifest(args: argparse.Namespace, argv: list[str], entries: list[tuple[str, str]], started: float) -> None:
    rows = [("subcommand", args.cmd)]
    rows.extend(entries)
    rows.append(("version", __version__))
    rows.append(("duration_s", f"{time.perf_counter() - started:.3f}"))
    rows.append(("argv", "\t".join(argv)))
    text = "".join(f"{k}\t{v}\n" for k, v in rows)
    path = args.manifest_out
    if path is None:
        out = getattr(args, "out", "-")
        path = f"{out}.manifest" if out != "-" else "-"
    if path == "-":
        sys.stderr.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    raw_argv = list(sys.argv[1:]) if argv is None else list(argv)
    if raw_argv[:1] == ["--manifest"]:
        if len(raw_argv) != 2:
            print("error: --manifest takes exactly one manifest file", file=sys.stderr)
            return 2
        try:
            stored = _read_manifest_argv(raw_argv[1])
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        return main(stored)
    parser = build_parser()
    args = parser.parse_args(raw_argv)
    started = time.perf_counter()
    try:
        entries = args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_manifest(args, raw_argv, entries, started)
    return 0


if __name__ == "__main__":
    sys.exit(main())
