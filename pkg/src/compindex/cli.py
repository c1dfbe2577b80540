"""
Command line front end.

    compindex evaluate --data d.csv --config c.json --out report.json
    compindex weights  --data d.csv [--format csv]
    compindex normalize --data d.csv --format csv
    compindex pca    --data d.csv --threshold 0.85
    compindex factor --data d.csv --retain 4

Exit codes: 0 success, 1 invalid input or config, 2 numerical failure.
Diagnostics go to stderr only; output files are written atomically.
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .components import fit_factors, fit_pca_scores, normalized_eigenvectors
from .dataio import config_from_dict, load_config, load_dataset, read_table, resolve_path
from .entropy import percentages, weights_from_normalized
from .errors import InputError, NumericalError
from .preprocess import drop_constant_columns, minmax_normalize, zscore_standardize
from .scoring import score_cards

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2
COMMANDS = ("evaluate", "weights", "normalize", "pca", "factor")


def num(x):
    """Fixed six-decimal float for serialized output (no negative zero)."""
    v = round(float(x), 6)
    return 0.0 if v == 0.0 else v


def nums(a):
    return [num(v) for v in np.ravel(a)]


def rows(a):
    return [nums(r) for r in np.atleast_2d(a)]


def sha256(path):
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- report sections ---------------------------------------------------------


def weights_table(names, weights, entropies):
    pct = percentages(weights)
    return [
        {
            "indicator": name,
            "entropy": num(h),
            "weight": num(w),
            "percentage": f"{p:.2f}",
        }
        for name, w, h, p in zip(names, weights, entropies, pct)
    ]


def score_table(cards):
    return [
        {
            "object": c.object,
            "raw_score": num(c.raw_score),
            "scaled_score": f"{c.display_score:.2f}",
            "grade": c.grade,
            "rank": c.rank,
        }
        for c in cards
    ]


def component_summary(x, threshold, retain=None, rotation="none"):
    """PCA (and optionally varimax) summary; constant indicators are left out."""
    reduced, dropped = drop_constant_columns(x)
    zx = zscore_standardize(reduced)
    model, y, composite = fit_pca_scores(zx, threshold, retain)
    k = model.retained
    summary = {
        "indicators": list(reduced.names),
        "excluded_indicators": dropped,
        "retention_threshold": threshold if retain is None else None,
        "retained": k,
        "retained_cumulative": num(model.cumulative_ratios[k - 1]),
        "scree": [
            {"component": i, "eigenvalue": num(lam), "explained": num(r), "cumulative": num(c)}
            for i, lam, r, c in model.scree()
        ],
        "loadings": rows(model.loadings),
        "normalized_eigenvectors": rows(normalized_eigenvectors(model.loadings, model.eigenvalues)),
        "pca_composite": {
            "shares": nums(model.retained_ratios),
            "scores": [
                {"object": o, "score": num(s)} for o, s in zip(reduced.objects, composite)
            ],
        },
        "rotation": None,
    }
    if rotation == "varimax":
        fm = fit_factors(zx, threshold, retain)
        rot = fm.rotation
        summary["rotation"] = {
            "method": "varimax",
            "kaiser_normalization": True,
            "rotated_loadings": rows(rot.rotated_loadings),
            "rotation_matrix": rows(rot.rotation),
            "variance_shares": nums(rot.rotated_variance_shares),
            "variance_shares_total": num(np.sum(rot.rotated_variance_shares)),
            "sweeps": rot.sweeps,
            "factor_composite": [
                {"object": o, "score": num(s)} for o, s in zip(reduced.objects, fm.composite)
            ],
        }
    return summary


# -- serialization -----------------------------------------------------------


def dump_json(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def dump_csv(header, body):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(body)
    return buf.getvalue()


def write_output(text, out):
    """Write ``text`` to ``out`` atomically, or to stdout when ``out`` is None."""
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    fd, tmp = tempfile.mkstemp(dir=out.parent or ".", prefix=f".{out.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- commands ----------------------------------------------------------------


def _setup(args):
    data_path = resolve_path(args.data)
    if args.config is not None:
        config_path = resolve_path(args.config)
        config = load_config(config_path)
    else:
        config_path = None
        config = config_from_dict({}, headers=read_table(data_path).headers)
    x = load_dataset(data_path, config.indicators)
    fmt = args.format or config.output_format
    provenance = {
        "tool": "compindex",
        "version": __version__,
        "command": args.command,
        "data_file": data_path.name,
        "data_sha256": sha256(data_path),
        "config_file": config_path.name if config_path else None,
        "config_sha256": sha256(config_path) if config_path else None,
        "config": config.to_dict(),
    }
    return x, config, fmt, provenance


def _retention(args, config):
    threshold = config.retention_threshold
    retain = config.retain
    if getattr(args, "threshold", None) is not None:
        threshold, retain = args.threshold, None
    if getattr(args, "retain", None) is not None:
        retain = args.retain
    return threshold, retain


def cmd_evaluate(args):
    x, config, fmt, provenance = _setup(args)
    r = minmax_normalize(x)
    w, h = weights_from_normalized(r)
    cards = score_cards(r, w, x.objects, config.grade_scale)
    if fmt == "csv":
        body = [[c["object"], c["raw_score"], c["scaled_score"], c["grade"], c["rank"]]
                for c in score_table(cards)]
        return dump_csv(["object", "raw_score", "scaled_score", "grade", "rank"], body)
    threshold, retain = _retention(args, config)
    report = {
        "provenance": provenance,
        "grade_scale": config.grade_scale.to_dict(),
        "weights": weights_table(x.names, w, h),
        "scores": score_table(cards),
        "components": component_summary(x, threshold, retain, config.rotation),
    }
    return dump_json(report)


def cmd_weights(args):
    x, config, fmt, provenance = _setup(args)
    w, h = weights_from_normalized(minmax_normalize(x))
    table = weights_table(x.names, w, h)
    if fmt == "csv":
        return dump_csv(
            ["indicator", "weight", "percentage", "entropy"],
            [[t["indicator"], t["weight"], t["percentage"], t["entropy"]] for t in table],
        )
    return dump_json({"provenance": provenance, "weights": table})


def cmd_normalize(args):
    x, config, fmt, provenance = _setup(args)
    r = minmax_normalize(x)
    if fmt == "csv":
        body = [[o, *[repr(float(v)) for v in row]] for o, row in zip(r.objects, r.values)]
        return dump_csv(["object", *r.names], body)
    return dump_json(
        {
            "provenance": provenance,
            "indicators": [
                {"name": s.name, "direction": s.direction} for s in r.indicators
            ],
            "objects": list(r.objects),
            "values": rows(r.values),
        }
    )


def _components(args, rotation):
    x, config, fmt, provenance = _setup(args)
    threshold, retain = _retention(args, config)
    summary = component_summary(x, threshold, retain, rotation)
    if fmt == "csv":
        return dump_csv(
            ["component_index", "eigenvalue", "explained_ratio", "cumulative_ratio"],
            [[s["component"], s["eigenvalue"], s["explained"], s["cumulative"]]
             for s in summary["scree"]],
        )
    return dump_json({"provenance": provenance, "components": summary})


def cmd_pca(args):
    return _components(args, "none")


def cmd_factor(args):
    return _components(args, "varimax")


HANDLERS = {
    "evaluate": cmd_evaluate,
    "weights": cmd_weights,
    "normalize": cmd_normalize,
    "pca": cmd_pca,
    "factor": cmd_factor,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _fraction(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError("threshold must be in (0, 1]")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("retain must be >= 1")
    return value


def build_parser():
    parser = _Parser(prog="compindex", description="Entropy-weighted composite index evaluation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "evaluate": "weights, scores, grades, ranks and component summary",
        "weights": "entropy weight table",
        "normalize": "min-max normalized matrix",
        "pca": "principal component summary and scree data",
        "factor": "varimax-rotated factor summary and scree data",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--data", required=True, help="CSV dataset (or a bundled dataset name)")
        p.add_argument("--config", help="JSON config (or a bundled config name)")
        p.add_argument("--out", help="output file; stdout when omitted")
        p.add_argument("--format", choices=("json", "csv"), default=None)
        if name in ("pca", "factor", "evaluate"):
            group = p.add_mutually_exclusive_group()
            group.add_argument("--threshold", type=_fraction, help="cumulative variance target")
            group.add_argument("--retain", type=_positive_int, help="explicit component count")
    return parser


def _fail(exc):
    print(f"compindex: error: {exc}", file=sys.stderr)


def run(argv=None):
    """Parse ``argv`` and execute; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = HANDLERS[args.command](args)
        write_output(text, args.out)
    except (InputError, OSError) as exc:
        _fail(exc)
        return EXIT_INPUT
    except NumericalError as exc:
        _fail(exc)
        return EXIT_NUMERICAL
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
