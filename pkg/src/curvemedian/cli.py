"""Command-line front end.

Subcommands
-----------
simulate   draw a panel or point cloud from one of the bundled models
distances  run the geodesic-distance pipeline over points or curves
template   pick the representative (intrinsic-median) curve of a panel
classify   nearest-template or k-NN classification of labeled panels

Exit codes: 0 success, 2 usage error, 3 data/parse/I-O error, 4 numeric
failure.  All output files are decimal text with '.' separators regardless
of locale, and every seeded run is bit-identical across invocations.  The
environment variable CURVEMEDIAN_THREADS sets the default worker count for
the shortest-path sweep (default 1; results do not depend on it).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import panel_io
from .classify import (
    ClassifierConfig,
    KnnClassifier,
    confusion_from_predictions,
    extract_templates,
    predict_labels,
)
from .errors import DataFormatError, NumericError, UsageError
from .graphs import geodesic_pipeline, pipeline_diagnostics
from .models import (
    ShiftConfig,
    Sim1Config,
    Sim2Config,
    generate_shift_sample,
    generate_sim1,
    generate_sim2,
    sim1_truth,
)
from .stats import intrinsic_estimate


def _workers() -> int:
    raw = os.environ.get("CURVEMEDIAN_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError:
        raise UsageError(f"CURVEMEDIAN_THREADS must be an integer, got {raw!r}") from None
    if workers < 1:
        raise UsageError(f"CURVEMEDIAN_THREADS must be >= 1, got {workers}")
    return workers


def cmd_simulate(args) -> int:
    prefix = Path(args.out)
    if prefix.parent and not prefix.parent.exists():
        prefix.parent.mkdir(parents=True, exist_ok=True)
    data_path = prefix.with_name(prefix.name + ".csv")
    truth_path = prefix.with_name(prefix.name + ".truth.csv")
    if args.model == "sim1":
        cfg = Sim1Config(
            n=args.n, noise_sd=args.noise_sd, seed=args.seed, noiseless=args.noiseless
        )
        cloud = generate_sim1(cfg)
        panel_io.write_cloud(data_path, cloud)
        panel_io.write_cloud(truth_path, sim1_truth(args.n))
    elif args.model == "shift":
        shift_range = tuple(args.shift_range) if args.shift_range else (-2.0, 2.0)
        cfg = ShiftConfig(
            target=args.target,
            n=args.n,
            m=args.m,
            t_range=tuple(args.t_range),
            shift_range=shift_range,
            seed=args.seed,
        )
        panel = generate_shift_sample(cfg)
        panel_io.write_panel(data_path, panel)
        panel_io.write_shifts(truth_path, panel.shifts)
    else:  # sim2
        shift_range = tuple(args.shift_range) if args.shift_range else (-10.0, 10.0)
        cfg = Sim2Config(
            target=args.target,
            n=args.n,
            m=args.m,
            t_range=tuple(args.t_range),
            amp_range=tuple(args.amp_range),
            scale_range=tuple(args.scale_range),
            shift_range=shift_range,
            seed=args.seed,
        )
        panel = generate_sim2(cfg)
        panel_io.write_panel(data_path, panel)
        panel_io.write_warp_params(truth_path, panel.warp_params)
    print(f"model: {args.model}")
    print(f"seed: {args.seed}")
    print(f"wrote {data_path} and {truth_path}")
    return 0


def _load_points(path):
    kind, loaded = panel_io.read_points_auto(path)
    if kind == "panel":
        return loaded.values, loaded
    return loaded, None


def cmd_distances(args) -> int:
    points, _ = _load_points(args.input)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    result = geodesic_pipeline(points, tol=args.tol, workers=_workers())
    panel_io.write_edges(outdir / "graph.emst.csv", result.tree)
    panel_io.write_edges(outdir / "graph.csv", result.graph)
    panel_io.write_matrix(outdir / "distances.csv", result.distances)
    diag = pipeline_diagnostics(points, result, tol=args.tol)
    panel_io.write_json(outdir / "diagnostics.json", diag)
    print(
        f"n={diag['n']} tree_edges={diag['tree_edges']} "
        f"graph_edges={diag['graph_edges']} diameter={panel_io.fmt(diag['diameter'])}"
    )
    print(f"wrote {outdir}/distances.csv")
    return 0


def cmd_template(args) -> int:
    panel = panel_io.read_panel(args.input)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    result = geodesic_pipeline(panel.values, tol=args.tol, workers=_workers())
    est = intrinsic_estimate(result.distances, alpha=args.alpha)
    panel_io.write_json(
        outdir / "estimate.json",
        {"index": est.index, "objective": est.objective, "alpha": est.alpha},
    )
    panel_io.write_curve(outdir / "template.csv", panel.grid, panel.values[est.index])
    panel_io.write_json(
        outdir / "plotdata.json",
        {
            "grid": [panel_io.fmt(t) for t in panel.grid],
            "curves": [[panel_io.fmt(v) for v in row] for row in panel.values],
            "template_index": est.index,
            "template": [panel_io.fmt(v) for v in panel.values[est.index]],
        },
    )
    print(f"template index: {est.index}")
    print(f"objective: {panel_io.fmt(est.objective)} (alpha={panel_io.fmt(est.alpha)})")
    print(f"wrote {outdir}/template.csv")
    return 0


def cmd_classify(args) -> int:
    cfg = ClassifierConfig()
    if args.config:
        cfg = panel_io.read_classifier_config(args.config)
    if args.method is not None:
        cfg.method = args.method
    if args.alpha is not None:
        cfg.alpha = args.alpha
    if args.k is not None:
        cfg.k = args.k
    if args.truncate_at is not None:
        cfg.truncate_at = args.truncate_at
    if args.tol is not None:
        cfg.tol = args.tol
    if cfg.method not in ("manifold", "mean", "medoid", "knn"):
        raise UsageError(f"unknown method {cfg.method!r}")
    if cfg.method == "knn" and cfg.k < 1:
        raise UsageError(f"k must be >= 1, got {cfg.k}")
    if not cfg.alpha > 0:
        raise UsageError(f"alpha must be positive, got {cfg.alpha}")

    train = panel_io.read_panel(args.train)
    test = panel_io.read_panel(args.test)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    if cfg.method == "knn":
        classifier = KnnClassifier(train=train, k=cfg.k)
        order = sorted(set(train.labels or []))
    else:
        classifier = extract_templates(train, method=cfg.method, alpha=cfg.alpha, tol=cfg.tol)
        order = classifier.labels
        panel_io.write_templates(outdir / "templates.csv", classifier)
    if test.labels is None:
        raise UsageError("test panel carries no class labels")
    preds = predict_labels(classifier, test, truncate_at=cfg.truncate_at)
    cm = confusion_from_predictions(order, test.labels, preds)
    panel_io.write_predictions(outdir / "predictions.csv", test.labels, preds)
    panel_io.write_confusion(outdir / "confusion.csv", cm)
    panel_io.write_json(outdir / "classifier.json", cfg.to_dict())
    print(f"method: {cfg.method}")
    print(f"accuracy: {panel_io.fmt(cm.accuracy())}")
    print(f"wrote {outdir}/confusion.csv")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvemedian",
        description="Representative-curve estimation over warped curves via graph geodesics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="draw a panel or point cloud from a bundled model")
    p.add_argument("--model", required=True, choices=["shift", "sim1", "sim2"])
    p.add_argument("--n", type=int, required=True, help="number of curves/points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output path prefix (gets .csv and .truth.csv)")
    p.add_argument("--target", default="tsin", help="target function name")
    p.add_argument("--m", type=int, default=100, help="grid size (shift/sim2)")
    p.add_argument("--t-range", nargs=2, type=float, default=[-10.0, 10.0], metavar=("LO", "HI"))
    p.add_argument("--shift-range", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    p.add_argument("--amp-range", nargs=2, type=float, default=[-10.0, 10.0], metavar=("LO", "HI"))
    p.add_argument("--scale-range", nargs=2, type=float, default=[-1.0, 1.0], metavar=("LO", "HI"))
    p.add_argument("--noise-sd", type=float, default=0.1, help="sim1 coordinate noise")
    p.add_argument("--noiseless", action="store_true", help="sim1: exact parabola")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("distances", help="estimate geodesic distances over points or curves")
    p.add_argument("--input", required=True, help="panel or cloud CSV")
    p.add_argument("--tol", type=float, default=None, help="coverage tolerance (default 1e-9 x diameter)")
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_distances)

    p = sub.add_parser("template", help="select the representative curve of a panel")
    p.add_argument("--input", required=True, help="panel CSV")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_template)

    p = sub.add_parser("classify", help="nearest-template / k-NN classification")
    p.add_argument("--train", required=True, help="labeled panel CSV")
    p.add_argument("--test", required=True, help="labeled panel CSV")
    p.add_argument("--method", choices=["manifold", "mean", "medoid", "knn"], default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--k", type=int, default=None, help="neighbors for knn")
    p.add_argument("--truncate-at", type=float, default=None, help="keep grid points with t < cutoff")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--config", default=None, help="classifier config JSON")
    p.add_argument("--outdir", required=True)
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except DataFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
