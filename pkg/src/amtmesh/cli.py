"""Command line front end.

Subcommands: tokenize, detokenize, gen, bench, verify, plot.
Exit codes: 0 success, 1 I/O or parse failure, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import amt_codec, encoding, naive_codec
from .bench import (
    BenchConfig,
    collect_sources,
    plot_ratio_histogram,
    run_corpus,
    run_roundtrip_suite,
)
from .canonical import canonicalize
from .errors import AmtError
from .mesh_io import QuantizationSpec, parse_obj, quantize, write_obj
from .synthetic import KINDS, generate_synthetic

EXIT_OK = 0
EXIT_IO = 1
EXIT_VERIFY = 2


def _add_pipeline_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bins", type=int, default=128, help="quantization bins per axis")
    p.add_argument("--up-axis", choices=("y", "z"), default="y", help="vertical model axis")
    p.add_argument(
        "--bbox-mode",
        choices=("per_mesh_tight", "unit_cube_centered"),
        default="per_mesh_tight",
        help="bounding box used for quantization",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amt", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tokenize", help="OBJ -> token stream")
    p.add_argument("input", help="input OBJ file")
    p.add_argument("--codec", choices=("amt", "naive"), default="amt")
    p.add_argument("--out", help="output token file (.bin); stdout summary if omitted")
    p.add_argument("--json", action="store_true", help="write the JSON mirror instead of binary")
    _add_pipeline_args(p)

    p = sub.add_parser("detokenize", help="token stream -> OBJ")
    p.add_argument("input", help="input token file (.bin or JSON mirror)")
    p.add_argument("--out", required=True, help="output OBJ file")
    p.add_argument("--up-axis", choices=("y", "z"), default="y")

    p = sub.add_parser("gen", help="write a synthetic mesh")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int, default=10, help="face count (strip/fan/soup)")
    p.add_argument("--w", type=int, default=4, help="grid cells across")
    p.add_argument("--h", type=int, default=4, help="grid cells down")
    p.add_argument("--subdiv", type=int, default=1, help="icosphere subdivisions")
    p.add_argument("--vertices", type=int, default=20, help="random mesh vertex count")
    p.add_argument("--faces", type=int, default=30, help="random mesh face count")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output OBJ file")

    p = sub.add_parser("bench", help="sequence-length ratios over a corpus")
    p.add_argument("target", help="directory of .obj files or a manifest file")
    p.add_argument("--max-faces", type=int, default=1600, help="skip meshes above this")
    p.add_argument("--csv", help="write per-mesh records as CSV")
    p.add_argument("--json", dest="json_out", help="write the full report as JSON")
    p.add_argument("--plot", help="write ratio/face histograms as SVG")
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    _add_pipeline_args(p)

    p = sub.add_parser("verify", help="round-trip every mesh in a corpus")
    p.add_argument("target", help="directory of .obj files or a manifest file")
    p.add_argument("--json", dest="json_out", help="write the report as JSON")
    _add_pipeline_args(p)

    p = sub.add_parser("plot", help="render histograms from a bench JSON report")
    p.add_argument("report", help="JSON report from `amt bench --json`")
    p.add_argument("--out", required=True, help="output SVG file")
    return parser


def _cmd_tokenize(args) -> int:
    data = Path(args.input).read_bytes()
    mesh = parse_obj(data)
    spec = QuantizationSpec(bins=args.bins, bbox_mode=args.bbox_mode)
    canon = canonicalize(quantize(mesh, spec), args.up_axis)
    vocab = encoding.Vocabulary(args.bins)
    if args.codec == "amt":
        seq = amt_codec.tokenize(canon)
        restarts = seq.restart_items()
    else:
        seq = naive_codec.tokenize_naive(canon)
        restarts = 0
    tokens = encoding.encode(seq, canon.vertices, vocab)
    if args.out:
        out = Path(args.out)
        if args.json:
            out.write_text(encoding.to_json(tokens))
        else:
            out.write_bytes(encoding.serialize(tokens))
    print(
        f"{args.input}: {canon.n_faces} faces, {len(tokens)} tokens "
        f"({tokens.payload_length()} payload, {restarts} restarts)"
    )
    return EXIT_OK


def _cmd_detokenize(args) -> int:
    raw = Path(args.input).read_bytes()
    if raw[:1] == b"{":
        tokens = encoding.from_json(raw.decode("utf-8"))
    else:
        tokens = encoding.deserialize(raw)
    vocab = encoding.Vocabulary(tokens.coord_bins)
    seq, vertices = encoding.decode(tokens, vocab)
    if isinstance(seq, amt_codec.AmtSequence):
        canon = amt_codec.detokenize(seq, vertices)
    else:
        canon = naive_codec.detokenize_naive(seq, vertices)
    Path(args.out).write_bytes(write_obj(canon, up_axis=args.up_axis))
    print(f"{args.out}: {canon.n_vertices} vertices, {canon.n_faces} faces")
    return EXIT_OK


def _cmd_gen(args) -> int:
    params = {
        "n": args.n,
        "w": args.w,
        "h": args.h,
        "s": args.subdiv,
        "vertices": args.vertices,
        "faces": args.faces,
        "seed": args.seed,
    }
    mesh = generate_synthetic(args.kind, params)
    Path(args.out).write_bytes(write_obj(mesh))
    print(f"{args.out}: {mesh.n_vertices} vertices, {mesh.n_faces} faces")
    return EXIT_OK


def _bench_config(args) -> BenchConfig:
    return BenchConfig(
        bins=args.bins,
        up_axis=args.up_axis,
        bbox_mode=args.bbox_mode,
        max_faces=getattr(args, "max_faces", None),
        jobs=getattr(args, "jobs", 1),
    )


def _cmd_bench(args) -> int:
    sources = collect_sources(args.target)
    report = run_corpus(sources, _bench_config(args))
    if args.csv:
        Path(args.csv).write_text(report.to_csv())
    if args.json_out:
        Path(args.json_out).write_text(report.to_json())
    if args.plot:
        plot_ratio_histogram(report, args.plot)
    t = report.totals
    print(f"meshes: {t.get('meshes', 0)}  skipped: {t.get('skipped', 0)}  failed: {t.get('failed', 0)}")
    if report.macro_avg_ratio is not None:
        print(f"macro-average ratio (AMT/naive): {report.macro_avg_ratio:.4f}")
        print(f"micro ratio (total/total):       {report.micro_ratio:.4f}")
    if report.records:
        return EXIT_OK
    return EXIT_IO


def _cmd_verify(args) -> int:
    sources = collect_sources(args.target)
    config = _bench_config(args)
    config.max_faces = None
    report = run_roundtrip_suite(sources, config)
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(report.to_dict(), indent=2))
    print(f"round trips: {report.passed}/{report.total} passed")
    for failure in report.failures:
        print(f"  FAIL {failure['source']}: {failure['error']}")
    return EXIT_OK if report.ok else EXIT_VERIFY


def _cmd_plot(args) -> int:
    from .bench import CorpusReport, MeshRecord

    obj = json.loads(Path(args.report).read_text())
    report = CorpusReport(
        records=[MeshRecord(**r) for r in obj["records"]],
        macro_avg_ratio=obj.get("macro_avg_ratio"),
    )
    plot_ratio_histogram(report, args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


_COMMANDS = {
    "tokenize": _cmd_tokenize,
    "detokenize": _cmd_detokenize,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
    "verify": _cmd_verify,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (AmtError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
