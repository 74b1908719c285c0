"""Command-line driver for extraction, comparison and benchmarking.

Subcommands:

    extract   decode a dataset tree and write fingerprint files
    compare   score all pairs of stored fingerprints into a CSV
    roc       ROC curves and operating points from a pairs CSV
    bench     time the cosine comparison for two methods' vector lengths
    run-all   the full experiment: extract, compare, ROC, summary JSON
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path

import numpy as np

from .harness import (
    METHOD_LABELS,
    METHOD_NAMES,
    emit_roc_data,
    run_experiment,
    scan_dataset,
)
from .matcher import ScoredPair, build_roc, cosine, threshold_report
from .pipelines import ExtractConfig, expected_length
from .store import read_fingerprint


def _parse_methods(spec: str):
    if spec == "all":
        return list(METHOD_NAMES.values())
    methods = []
    for name in spec.split(","):
        name = name.strip()
        if name not in METHOD_NAMES:
            raise SystemExit(
                f"unknown method {name!r}; choose from {', '.join(METHOD_NAMES)} or 'all'"
            )
        methods.append(METHOD_NAMES[name])
    return methods


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--levels", type=int, default=4, help="decomposition levels J")
    parser.add_argument("--wavelet", default="db4", help="wavelet for the DWT methods")
    parser.add_argument("--sigma-n2", type=float, default=3.24, help="noise variance")
    parser.add_argument("--crop", type=int, default=1024, help="center-crop side in pixels")
    parser.add_argument("--workers", type=int, default=1, help="parallel extraction workers")


def _config(args) -> ExtractConfig:
    return ExtractConfig(levels=args.levels, wavelet=args.wavelet, sigma_n2=args.sigma_n2)


def _cmd_run_all(args) -> int:
    manifest = scan_dataset(args.dataset)
    methods = _parse_methods(args.methods)
    print(f"[info] {len(manifest)} images, {len(manifest.cameras)} cameras -> {args.out}")
    report = run_experiment(
        manifest,
        methods,
        _config(args),
        args.out,
        crop_size=args.crop,
        tnr_target=args.tnr_target,
        workers=args.workers,
    )
    for method_report in report.methods:
        s = method_report.summary()
        print(
            f"[{s['method']}] auc={s['auc']:.4f} "
            f"youden={s['tpr_youden']:.3f}/{s['tnr_youden']:.3f} "
            f"tpr@tnr{s['tnr_target']:.2f}={s['tpr_at_tnr']:.3f} "
            f"extract={s['mean_extract_s']:.3f}s compare={s['mean_compare_s']:.6f}s "
            f"total={s['total_s']:.1f}s"
        )
        for failure in s["failures"]:
            print(f"  [skip] {failure}", file=sys.stderr)
    print(f"[info] summary: {Path(args.out) / 'summary.json'}")
    return 0


def _cmd_extract(args) -> int:
    manifest = scan_dataset(args.dataset)
    methods = _parse_methods(args.methods)
    cfg = _config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    # Reuse the experiment machinery without comparison by extracting alone.
    from .harness import _extract_one, _fingerprint_path

    timings = {}
    for method in methods:
        label = METHOD_LABELS[method]
        times = []
        for i, entry in enumerate(manifest.entries):
            fp_path = _fingerprint_path(out, method, entry)
            _, t_decode, t_extract, error = _extract_one(
                (i, entry, method, cfg, args.crop, fp_path)
            )
            if error is not None:
                print(f"[skip] {error}", file=sys.stderr)
                continue
            times.append(t_extract)
        timings[label] = {
            "images": len(times),
            "mean_extract_s": float(np.mean(times)) if times else None,
        }
        print(f"[{label}] extracted {len(times)} fingerprints")
    with open(out / "extract_timings.json", "w") as fh:
        json.dump(timings, fh, indent=2)
    return 0


def _load_fingerprint_dir(directory: Path):
    files = sorted(directory.glob("*.wdfp"))
    if not files:
        raise SystemExit(f"no .wdfp files in {directory}")
    loaded = []
    for path in files:
        camera, _, stem = path.stem.partition("__")
        loaded.append((f"{camera}/{stem}", camera, read_fingerprint(path)))
    return loaded


def _cmd_compare(args) -> int:
    loaded = _load_fingerprint_dir(Path(args.fingerprints))
    label = METHOD_LABELS[loaded[0][2].method]
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "image_a", "image_b", "same_source", "score"])
        n = 0
        for i in range(len(loaded)):
            id_a, cam_a, fp_a = loaded[i]
            for j in range(i + 1, len(loaded)):
                id_b, cam_b, fp_b = loaded[j]
                score = cosine(fp_a, fp_b)
                writer.writerow([label, id_a, id_b, int(cam_a == cam_b), repr(score)])
                n += 1
    print(f"[{label}] wrote {n} pair scores to {args.out}")
    return 0


def _cmd_roc(args) -> int:
    by_method: dict[str, list[ScoredPair]] = {}
    with open(args.pairs, newline="") as fh:
        for row in csv.DictReader(fh):
            by_method.setdefault(row["method"], []).append(
                ScoredPair(
                    id_a=row["image_a"],
                    id_b=row["image_b"],
                    same_source=bool(int(row["same_source"])),
                    score=float(row["score"]),
                )
            )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    for label, pairs in sorted(by_method.items()):
        roc = build_roc(pairs)
        report = threshold_report(roc, args.tnr_target)
        emit_roc_data(roc, out / f"roc_{label}.csv")
        summary[label] = {
            "auc": roc.auc,
            "tpr_youden": report.tpr_youden,
            "tnr_youden": report.tnr_youden,
            "lambda_youden": report.lambda_youden,
            "tpr_at_tnr": report.tpr_at_tnr,
            "lambda_at_tnr": report.lambda_at_tnr,
            "tnr_target": report.tnr_target,
        }
        print(
            f"[{label}] auc={roc.auc:.4f} youden={report.tpr_youden:.3f}/"
            f"{report.tnr_youden:.3f} tpr@tnr={report.tpr_at_tnr:.3f}"
        )
    with open(out / "thresholds.json", "w") as fh:
        json.dump(summary, fh, indent=2)
    return 0


def bench_cosine(
    m: int,
    levels: int,
    methods=("law", "gray-wdlaw"),
    rounds: int = 11,
    pairs_per_round: int = 20,
    seed: int = 0,
) -> dict:
    """Median per-pair cosine time for each method's vector length.

    Vectors are random float32 of exactly the lengths the methods
    produce at (m, J); measurements interleave methods per round so
    machine drift hits both equally.
    """
    rng = np.random.default_rng(seed)
    vectors = {
        name: (
            rng.standard_normal(expected_length(METHOD_NAMES[name], m, levels)).astype(
                np.float32
            ),
            rng.standard_normal(expected_length(METHOD_NAMES[name], m, levels)).astype(
                np.float32
            ),
        )
        for name in methods
    }
    per_round = {name: [] for name in methods}
    for _ in range(rounds):
        for name in methods:
            a, b = vectors[name]
            t0 = time.perf_counter()
            for _ in range(pairs_per_round):
                cosine(a, b)
            per_round[name].append((time.perf_counter() - t0) / pairs_per_round)
    result = {
        name: {
            "length": int(vectors[name][0].size),
            "median_s": float(np.median(per_round[name])),
            "mean_s": float(np.mean(per_round[name])),
        }
        for name in methods
    }
    if len(methods) == 2:
        first, second = methods
        result["ratio_median"] = (
            result[second]["median_s"] / result[first]["median_s"]
        )
    return result


def _cmd_bench(args) -> int:
    result = bench_cosine(
        args.m,
        args.levels,
        methods=tuple(args.methods.split(",")),
        rounds=args.rounds,
        pairs_per_round=args.pairs_per_round,
    )
    print(json.dumps(result, indent=2))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(result, fh, indent=2)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wdfp",
        description="Wavelet-domain camera fingerprints: extraction, matching, benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run-all", help="full experiment over a dataset tree")
    p_run.add_argument("--dataset", required=True, help="root of <camera>/<image> tree")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--method", default="all", dest="methods", help="comma list or 'all'")
    p_run.add_argument("--tnr-target", type=float, default=0.99)
    _add_config_flags(p_run)
    p_run.set_defaults(func=_cmd_run_all)

    p_ext = sub.add_parser("extract", help="extract and store fingerprints")
    p_ext.add_argument("--dataset", required=True)
    p_ext.add_argument("--out", required=True)
    p_ext.add_argument("--method", default="gray-wdlaw", dest="methods")
    _add_config_flags(p_ext)
    p_ext.set_defaults(func=_cmd_extract)

    p_cmp = sub.add_parser("compare", help="score stored fingerprints pairwise")
    p_cmp.add_argument("--fingerprints", required=True, help="directory of .wdfp files")
    p_cmp.add_argument("--out", required=True, help="pairs CSV path")
    p_cmp.set_defaults(func=_cmd_compare)

    p_roc = sub.add_parser("roc", help="ROC curves and thresholds from a pairs CSV")
    p_roc.add_argument("--pairs", required=True)
    p_roc.add_argument("--out", required=True)
    p_roc.add_argument("--tnr-target", type=float, default=0.99)
    p_roc.set_defaults(func=_cmd_roc)

    p_bench = sub.add_parser("bench", help="cosine comparison timing by method length")
    p_bench.add_argument("--m", type=int, default=1024)
    p_bench.add_argument("--levels", type=int, default=4)
    p_bench.add_argument("--method", default="law,gray-wdlaw", dest="methods",
                         help="two methods to time against each other")
    p_bench.add_argument("--rounds", type=int, default=11)
    p_bench.add_argument("--pairs-per-round", type=int, default=20)
    p_bench.add_argument("--out", default=None)
    p_bench.set_defaults(func=_cmd_bench)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
