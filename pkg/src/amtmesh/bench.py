"""Corpus benchmark: per-mesh sequence-length ratios and round-trip checks.

Each source runs through quantize -> canonicalize -> both tokenizers ->
token encoding; the per-mesh ratio is AMT payload length over naive payload
length (always 9 * faces), and the headline number is the macro average:
ratio first per mesh, then the plain mean.  Per-mesh failures never abort a
run; they are recorded and reported.

Sources are OBJ paths or generator URIs like ``gen:strip?n=50`` and
``gen:soup?n=10&seed=7`` (see ``synthetic.KINDS`` for kinds and parameters).
A manifest file is one source per line, ``#`` comments allowed.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from urllib.parse import parse_qsl

import numpy as np

from . import amt_codec, encoding, naive_codec
from .canonical import CanonicalMesh, canonicalize
from .errors import AmtError
from .mesh_io import QuantizationSpec, RawMesh, parse_obj
from .synthetic import generate_synthetic


@dataclass
class BenchConfig:
    bins: int = 128
    up_axis: str = "y"
    bbox_mode: str = "per_mesh_tight"
    max_faces: int | None = 1600
    jobs: int = 1

    def quantization_spec(self) -> QuantizationSpec:
        return QuantizationSpec(bins=self.bins, bbox_mode=self.bbox_mode)


@dataclass
class MeshRecord:
    source: str
    faces: int
    amt_payload: int
    naive_payload: int
    ratio: float
    restarts: int
    tokenize_seconds: float


@dataclass
class CorpusReport:
    records: list[MeshRecord]
    skipped: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    macro_avg_ratio: float | None = None
    micro_ratio: float | None = None
    ratio_histogram: dict = field(default_factory=dict)
    face_histogram: dict = field(default_factory=dict)
    totals: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["source", "faces", "amt_payload", "naive_payload", "ratio", "restarts", "tokenize_seconds"]
        )
        for r in self.records:
            writer.writerow(
                [r.source, r.faces, r.amt_payload, r.naive_payload,
                 repr(r.ratio), r.restarts, repr(r.tokenize_seconds)]
            )
        return buf.getvalue()


def load_source(source) -> RawMesh:
    """Resolve one corpus source: a RawMesh, an OBJ path, or a gen: URI."""
    if isinstance(source, RawMesh):
        return source
    text = str(source)
    if text.startswith("gen:"):
        spec = text[len("gen:"):]
        kind, _, query = spec.partition("?")
        params = dict(parse_qsl(query))
        return generate_synthetic(kind, params)
    return parse_obj(Path(text).read_bytes())


def read_manifest(path) -> list[str]:
    sources = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            sources.append(line)
    return sources


def collect_sources(target) -> list[str]:
    """Expand a directory (all *.obj, sorted) or manifest file into sources."""
    p = Path(target)
    if p.is_dir():
        return sorted(str(f) for f in p.glob("*.obj"))
    return read_manifest(p)


def measure_mesh(mesh: RawMesh | CanonicalMesh, config: BenchConfig) -> dict:
    """Run both codecs over one mesh and account for their payload lengths."""
    if isinstance(mesh, CanonicalMesh):
        canon = mesh
    else:
        canon = canonicalize(quantized(mesh, config), config.up_axis)
    if canon.n_faces == 0:
        raise AmtError("mesh has no faces after canonicalization")
    vocab = encoding.Vocabulary(config.bins)

    t0 = time.perf_counter()
    amt_seq = amt_codec.tokenize(canon)
    tokenize_seconds = time.perf_counter() - t0
    amt_tokens = encoding.encode(amt_seq, canon.vertices, vocab)

    naive_seq = naive_codec.tokenize_naive(canon)
    naive_tokens = encoding.encode(naive_seq, canon.vertices, vocab)

    amt_payload = amt_tokens.payload_length()
    naive_payload = naive_tokens.payload_length()
    restarts = amt_seq.restart_items()
    faces = canon.n_faces
    if amt_payload != 3 * (faces + 2 * (restarts + 1)) + restarts:
        raise AmtError("token-length identity violated for the strip codec")
    if naive_payload != 9 * faces:
        raise AmtError("token-length identity violated for the naive codec")
    return {
        "faces": faces,
        "amt_payload": amt_payload,
        "naive_payload": naive_payload,
        "ratio": amt_payload / naive_payload,
        "restarts": restarts,
        "tokenize_seconds": tokenize_seconds,
    }


def quantized(mesh: RawMesh, config: BenchConfig) -> RawMesh:
    from .mesh_io import quantize

    return quantize(mesh, config.quantization_spec())


def _run_one(args) -> tuple[str, str, object]:
    """Worker: ("ok", source, record) | ("skip", source, reason) | ("fail", source, err)."""
    source, config = args
    label = source if isinstance(source, str) else "<mesh>"
    try:
        mesh = load_source(source)
        if config.max_faces is not None and mesh.n_faces > config.max_faces:
            return ("skip", label, f"{mesh.n_faces} faces over cap {config.max_faces}")
        stats = measure_mesh(mesh, config)
        return ("ok", label, MeshRecord(source=label, **stats))
    except Exception as exc:  # noqa: BLE001 - one bad mesh must not kill the run
        return ("fail", label, f"{type(exc).__name__}: {exc}")


def run_corpus(sources, config: BenchConfig | None = None) -> CorpusReport:
    """Measure every source and aggregate ratios, histograms and totals."""
    config = config or BenchConfig()
    tasks = [(s, config) for s in sources]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            outcomes = list(pool.map(_run_one, tasks, chunksize=32))
    else:
        outcomes = [_run_one(t) for t in tasks]

    records: list[MeshRecord] = []
    skipped: list[dict] = []
    failures: list[dict] = []
    for status, label, payload in outcomes:
        if status == "ok":
            records.append(payload)
        elif status == "skip":
            skipped.append({"source": label, "reason": payload})
        else:
            failures.append({"source": label, "error": payload})
    records.sort(key=lambda r: r.source)

    ratios = [r.ratio for r in records]
    report = CorpusReport(records=records, skipped=skipped, failures=failures)
    if records:
        report.macro_avg_ratio = math.fsum(ratios) / len(ratios)
        total_amt = sum(r.amt_payload for r in records)
        total_naive = sum(r.naive_payload for r in records)
        report.micro_ratio = total_amt / total_naive
        report.ratio_histogram = _histogram(ratios, 20)
        report.face_histogram = _histogram([r.faces for r in records], 20)
        report.totals = {
            "meshes": len(records),
            "skipped": len(skipped),
            "failed": len(failures),
            "faces": int(sum(r.faces for r in records)),
            "amt_payload": int(total_amt),
            "naive_payload": int(total_naive),
            "restarts": int(sum(r.restarts for r in records)),
            "tokenize_seconds": math.fsum(r.tokenize_seconds for r in records),
        }
    else:
        report.totals = {"meshes": 0, "skipped": len(skipped), "failed": len(failures)}
    report.config = asdict(config)
    return report


def _histogram(values, bins: int) -> dict:
    counts, edges = np.histogram(np.asarray(values, dtype=np.float64), bins=bins)
    return {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]}


@dataclass
class RoundtripReport:
    total: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return asdict(self)


def run_roundtrip_suite(sources, config: BenchConfig | None = None) -> RoundtripReport:
    """Assert both inversion layers on every source.

    Checks detokenize(tokenize(m)) == m, decode(encode(s)) identity on ids
    and types, and bit-exact binary serialization.  Failures become report
    entries carrying the offending serialized sequence; the suite always
    runs to completion.
    """
    config = config or BenchConfig()
    vocab = encoding.Vocabulary(config.bins)
    report = RoundtripReport()
    for source in sources:
        label = source if isinstance(source, str) else "<mesh>"
        report.total += 1
        seq_text = ""
        try:
            mesh = load_source(source)
            canon = canonicalize(quantized(mesh, config), config.up_axis)
            if canon.n_faces == 0:
                raise AmtError("mesh has no faces after canonicalization")
            seq = amt_codec.tokenize(canon)
            seq_text = seq.to_text()
            rebuilt = amt_codec.detokenize(seq, canon.vertices)
            if rebuilt != canon:
                raise AmtError("detokenize(tokenize(m)) != m")

            tokens = encoding.encode(seq, canon.vertices, vocab)
            decoded_seq, decoded_vertices = encoding.decode(tokens, vocab)
            retokens = encoding.encode(decoded_seq, decoded_vertices, vocab)
            if retokens.ids != tokens.ids or retokens.types != tokens.types:
                raise AmtError("encode(decode(t)) != t")

            blob = encoding.serialize(tokens)
            if encoding.serialize(encoding.deserialize(blob)) != blob:
                raise AmtError("binary round trip not bit-exact")

            naive_seq = naive_codec.tokenize_naive(canon)
            if naive_codec.detokenize_naive(naive_seq, canon.vertices) != canon:
                raise AmtError("naive round trip failed")
            report.passed += 1
        except Exception as exc:  # noqa: BLE001 - failures are report content
            report.failures.append(
                {"source": label, "error": f"{type(exc).__name__}: {exc}", "sequence": seq_text}
            )
    return report


def plot_ratio_histogram(report: CorpusReport, out_path) -> None:
    """Render the ratio histogram of a corpus report to SVG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ratios = [r.ratio for r in report.records]
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    axes[0].hist(ratios, bins=20, color="#4878d0", edgecolor="black")
    axes[0].set_xlabel("AMT / naive payload ratio")
    axes[0].set_ylabel("meshes")
    if report.macro_avg_ratio is not None:
        axes[0].axvline(report.macro_avg_ratio, color="crimson", linestyle="--",
                        label=f"macro avg {report.macro_avg_ratio:.4f}")
        axes[0].legend()
    axes[1].hist([r.faces for r in report.records], bins=20, color="#6acc64", edgecolor="black")
    axes[1].set_xlabel("face count")
    axes[1].set_ylabel("meshes")
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)
