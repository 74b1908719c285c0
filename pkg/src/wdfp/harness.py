"""Batch experiment driver: per-camera dataset tree in, reports out.

The dataset convention is one directory per camera under a root, images
inside. All C(n, 2) image pairs are scored; a pair is labeled
same-source when both images sit in the same camera directory.

For each method the run extracts every fingerprint (timed), writes it in
the store format, scores all pairs from the stored float32 payloads
(timing the cosine call alone), then builds the ROC and both operating
points. Decode plus crop time is measured separately from extraction so
method timings compare algorithm cost, not JPEG decoding.

Outputs per method: a per-pair CSV, a ROC CSV, fingerprint files; plus
one summary JSON for the run. Scores are independent of the worker
count and of result arrival order.
"""

from __future__ import annotations

import csv
import json
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np

from .errors import EmptyDatasetError, SingleCameraError
from .image_io import center_crop, load_image
from .matcher import RocCurve, ScoredPair, ThresholdReport, build_roc, cosine, threshold_report
from .pipelines import ExtractConfig, ExtractionTiming, Method, extract
from .store import read_fingerprint, write_fingerprint

IMAGE_SUFFIXES = {".jpg", ".jpeg", ".png"}

# CLI-facing method names, matching the benchmark tables.
METHOD_NAMES = {
    "law": Method.LAW,
    "gray-wdlaw": Method.GRAY_WDLAW,
    "rgb-wdlaw": Method.RGB_WDLAW,
    "wdlaw-gray": Method.WDLAW_GRAY,
    "dtcwt": Method.DTCWT_RES,
    "dtcwt-ar": Method.DTCWT_RES_AR,
    "law-dtcwt": Method.LAW_DTCWT,
    "gray-wdlaw-dtcwt": Method.GRAY_WDLAW_DTCWT,
}
METHOD_LABELS = {m: name for name, m in METHOD_NAMES.items()}


@dataclass(frozen=True)
class DatasetEntry:
    path: Path
    camera: str

    @property
    def image_id(self) -> str:
        return f"{self.camera}/{self.path.name}"


@dataclass
class DatasetManifest:
    root: Path
    entries: list[DatasetEntry]

    @property
    def cameras(self) -> list[str]:
        return sorted({e.camera for e in self.entries})

    def __len__(self) -> int:
        return len(self.entries)


def scan_dataset(root: str | Path) -> DatasetManifest:
    """Walk root/<camera>/<image> into a deterministic manifest."""
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset root {root} is not a directory")
    entries = [
        DatasetEntry(path=p, camera=p.parent.name)
        for p in root.glob("*/*")
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    ]
    entries.sort(key=lambda e: (e.camera, e.path.name))
    if not entries:
        raise EmptyDatasetError(f"no images under {root} (looked for */<image>)")
    manifest = DatasetManifest(root=root, entries=entries)
    if len(manifest.cameras) < 2:
        warnings.warn(
            f"dataset has a single camera label {manifest.cameras[0]!r}; "
            "ROC analysis will fail",
            stacklevel=2,
        )
    return manifest


@dataclass
class MethodReport:
    method: Method
    roc: RocCurve
    thresholds: ThresholdReport
    pairs: list[ScoredPair]
    n_images: int
    mean_decode_s: float
    mean_extract_s: float
    mean_compare_s: float
    total_s: float
    failures: list[str] = field(default_factory=list)
    extraction_timings: list[ExtractionTiming] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "method": METHOD_LABELS[self.method],
            "images": self.n_images,
            "pairs": len(self.pairs),
            "tpr_youden": self.thresholds.tpr_youden,
            "tnr_youden": self.thresholds.tnr_youden,
            "lambda_youden": self.thresholds.lambda_youden,
            "tpr_at_tnr": self.thresholds.tpr_at_tnr,
            "lambda_at_tnr": self.thresholds.lambda_at_tnr,
            "tnr_target": self.thresholds.tnr_target,
            "auc": self.roc.auc,
            "mean_decode_s": self.mean_decode_s,
            "mean_extract_s": self.mean_extract_s,
            "mean_compare_s": self.mean_compare_s,
            "total_s": self.total_s,
            "failures": self.failures,
        }


@dataclass
class RunReport:
    methods: list[MethodReport]
    output_dir: Path

    def summary(self) -> dict:
        return {"methods": [m.summary() for m in self.methods]}


def _fingerprint_path(out_dir: Path, method: Method, entry: DatasetEntry) -> Path:
    # Keep the original filename (extension included) so pair ids rebuilt
    # from stored fingerprints match the ones written by run_experiment.
    return out_dir / "fingerprints" / METHOD_LABELS[method] / (
        f"{entry.camera}__{entry.path.name}.wdfp"
    )


def _extract_one(args) -> tuple[int, float, float, str | None]:
    """Worker: decode, crop, extract, store. Returns timings or the error."""
    index, entry, method, cfg, crop_size, fp_path = args
    try:
        t0 = time.perf_counter()
        img = load_image(entry.path)
        img = center_crop(img, crop_size)
        t1 = time.perf_counter()
        fingerprint = extract(method, img, cfg)
        t2 = time.perf_counter()
        fp_path.parent.mkdir(parents=True, exist_ok=True)
        write_fingerprint(fingerprint, fp_path)
        return index, t1 - t0, t2 - t1, None
    except Exception as exc:  # noqa: BLE001 - failures must not kill the batch
        return index, 0.0, 0.0, f"{entry.image_id}: {exc}"


def run_method(
    manifest: DatasetManifest,
    method: Method,
    cfg: ExtractConfig,
    output_dir: Path,
    crop_size: int,
    tnr_target: float,
    workers: int = 1,
) -> MethodReport:
    """Extract, store, score and analyze one method over the dataset."""
    t_start = time.perf_counter()
    tasks = [
        (i, entry, method, cfg, crop_size, _fingerprint_path(output_dir, method, entry))
        for i, entry in enumerate(manifest.entries)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_extract_one, tasks))
    else:
        results = [_extract_one(t) for t in tasks]
    results.sort(key=lambda r: r[0])

    decode_times, extract_times, failures = [], [], []
    extracted: list[tuple[DatasetEntry, Path]] = []
    for index, t_decode, t_extract, error in results:
        if error is not None:
            failures.append(error)
            continue
        decode_times.append(t_decode)
        extract_times.append(t_extract)
        extracted.append((manifest.entries[index], tasks[index][5]))

    if not extracted:
        raise EmptyDatasetError(
            "every extraction failed; first failures: " + "; ".join(failures[:3])
        )
    cameras = {entry.camera for entry, _ in extracted}
    if len(cameras) < 2:
        raise SingleCameraError(
            f"{len(cameras)} camera label(s) survived extraction; need >= 2"
        )

    loaded = [(entry, read_fingerprint(path).values) for entry, path in extracted]
    pairs: list[ScoredPair] = []
    compare_times = []
    for (entry_a, values_a), (entry_b, values_b) in combinations(loaded, 2):
        t0 = time.perf_counter()
        score = cosine(values_a, values_b)
        compare_times.append(time.perf_counter() - t0)
        pairs.append(
            ScoredPair(
                id_a=entry_a.image_id,
                id_b=entry_b.image_id,
                same_source=entry_a.camera == entry_b.camera,
                score=score,
            )
        )

    roc = build_roc(pairs)
    report = MethodReport(
        method=method,
        roc=roc,
        thresholds=threshold_report(roc, tnr_target),
        pairs=pairs,
        n_images=len(extracted),
        mean_decode_s=float(np.mean(decode_times)),
        mean_extract_s=float(np.mean(extract_times)),
        mean_compare_s=float(np.mean(compare_times)),
        total_s=time.perf_counter() - t_start,
        failures=failures,
        extraction_timings=[ExtractionTiming(method, s) for s in extract_times],
    )
    write_pairs_csv(report, output_dir / f"pairs_{METHOD_LABELS[method]}.csv")
    emit_roc_data(roc, output_dir / f"roc_{METHOD_LABELS[method]}.csv")
    return report


def run_experiment(
    manifest: DatasetManifest,
    methods: list[Method],
    cfg: ExtractConfig,
    output_dir: str | Path,
    crop_size: int = 1024,
    tnr_target: float = 0.99,
    workers: int = 1,
) -> RunReport:
    """Run several methods over one dataset and write all reports."""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    reports = [
        run_method(manifest, method, cfg, output_dir, crop_size, tnr_target, workers)
        for method in methods
    ]
    run = RunReport(methods=reports, output_dir=output_dir)
    with open(output_dir / "summary.json", "w") as fh:
        json.dump(run.summary(), fh, indent=2)
    return run


def write_pairs_csv(report: MethodReport, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "image_a", "image_b", "same_source", "score"])
        label = METHOD_LABELS[report.method]
        for pair in report.pairs:
            writer.writerow(
                [label, pair.id_a, pair.id_b, int(pair.same_source), repr(pair.score)]
            )


def emit_roc_data(roc: RocCurve, path: str | Path) -> None:
    """Write the swept (lambda, TPR, FPR) points for external plotting."""
    tpr, fpr = roc.tpr, roc.fpr
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lambda", "tpr", "fpr"])
        for i in range(len(roc.thresholds)):
            writer.writerow([repr(float(roc.thresholds[i])), repr(float(tpr[i])), repr(float(fpr[i]))])
