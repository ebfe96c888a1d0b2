"""Command-line entry point.

Each subcommand runs one experiment and writes its curves as CSV::

    peaking curve --p 50 --delta 4 --n-labeled-per-class 10 --seed 42 --output curve.csv
    peaking benchmark --dataset spect --seed 1

Parameters can also come from a flat JSON object passed with ``--config``;
flags override file values. The fully resolved configuration is echoed to
standard error as one JSON line, which is itself a valid ``--config`` file.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .approximation import GammaSpec
from .data import BUNDLED_DATASETS, GaussianProblem, bundled_dataset_path, load_csv_dataset
from .exceptions import PeakingError
from .experiments import (
    run_approximation,
    run_benchmark,
    run_contributions,
    run_infinite_unlabeled,
    run_synthetic_curves,
)

__all__ = ["RunConfig", "parse_config", "emit_csv", "main", "OUTPUT_DIR_ENV"]

OUTPUT_DIR_ENV = "PEAKING_OUTPUT_DIR"
CSV_HEADER = ["curve_id", "n_labeled", "n_unlabeled", "mean_error", "std_error", "repetitions"]
REQUIRED = object()


class _Usage(Exception):
    pass


def _integer(v):
    if isinstance(v, bool):
        raise _Usage(f"expected an integer, got {v!r}")
    if isinstance(v, float) and v.is_integer():
        return int(v)
    if isinstance(v, int):
        return v
    try:
        return int(str(v).strip())
    except ValueError:
        raise _Usage(f"expected an integer, got {v!r}") from None


def _real(v):
    if isinstance(v, bool):
        raise _Usage(f"expected a number, got {v!r}")
    try:
        x = float(v)
    except (TypeError, ValueError):
        raise _Usage(f"expected a number, got {v!r}") from None
    if not math.isfinite(x):
        raise _Usage(f"expected a finite number, got {v!r}")
    return x


def positive_int(v):
    x = _integer(v)
    if x < 1:
        raise _Usage(f"expected a positive integer, got {x}")
    return x


def even_int(v):
    x = positive_int(v)
    if x % 2:
        raise _Usage(f"expected a positive even integer, got {x}")
    return x


def seed_int(v):
    x = _integer(v)
    if not 0 <= x < 2**64:
        raise _Usage(f"seed must be a 64-bit unsigned integer, got {x}")
    return x


def positive_real(v):
    x = _real(v)
    if x <= 0:
        raise _Usage(f"expected a positive number, got {x}")
    return x


def nonnegative_real(v):
    x = _real(v)
    if x < 0:
        raise _Usage(f"expected a non-negative number, got {x}")
    return x


def fraction(v):
    x = _real(v)
    if not 0 < x <= 1:
        raise _Usage(f"expected a number in (0, 1], got {x}")
    return x


def _listed(item):
    def convert(v):
        parts = v if isinstance(v, list) else str(v).split(",")
        out = [item(x) for x in parts if str(x).strip() != ""]
        if not out:
            raise _Usage("expected a non-empty comma-separated list")
        return out

    return convert


def text(v):
    if not isinstance(v, (str, int)) or isinstance(v, bool):
        raise _Usage(f"expected a string, got {v!r}")
    return str(v)


def optional(convert):
    def wrapped(v):
        return None if v is None else convert(v)

    return wrapped


_COMMON = {
    "seed": (seed_int, 0, "master random seed (unused by approx)"),
    "output": (optional(text), None, f"output CSV path (default: ${OUTPUT_DIR_ENV} or cwd, <subcommand>.csv)"),
    "n_jobs": (positive_int, 1, "worker processes for repetitions"),
}

SCHEMAS = {
    "curve": {
        "p": (positive_int, 50, "dimensionality"),
        "delta": (positive_real, 4.0, "distance between the class means"),
        "n_labeled_per_class": (positive_int, 10, "labeled objects per class"),
        "max_total": (positive_int, 150, "largest training-set size"),
        "step": (even_int, 2, "grid step in objects"),
        "repetitions": (positive_int, 500, "Monte Carlo repetitions"),
    },
    "contributions": {
        "p": (positive_int, 50, "dimensionality"),
        "delta": (positive_real, 4.0, "distance between the class means"),
        "n_min": (even_int, 2, "smallest base training-set size"),
        "n_max": (even_int, 80, "largest base training-set size"),
        "step": (even_int, 2, "grid step in objects"),
        "repetitions": (positive_int, 500, "Monte Carlo repetitions"),
    },
    "infinite": {
        "p": (_listed(positive_int), [50, 100, 200], "comma-separated dimensionalities"),
        "delta": (_listed(positive_real), [2.0, 4.0, 6.0], "comma-separated mean distances"),
        "n_min": (even_int, 10, "smallest labeled-set size"),
        "n_max": (even_int, 300, "largest labeled-set size"),
        "step": (even_int, 10, "grid step in objects"),
        "repetitions": (positive_int, 500, "Monte Carlo repetitions"),
    },
    "benchmark": {
        "dataset": (text, REQUIRED, f"CSV path or bundled name ({', '.join(sorted(BUNDLED_DATASETS))})"),
        "label_column": (text, "0", "label column name or zero-based index"),
        "repetitions": (positive_int, 100, "resampling repetitions"),
        "test_size": (positive_int, 1000, "test objects drawn per repetition"),
        "max_extra": (optional(positive_int), None, "additional objects (default 100, or 1000 for >= 1000 rows)"),
        "step": (optional(positive_int), None, "grid step (default max_extra / 50)"),
        "variance_fraction": (fraction, 0.99, "PCA variance to retain"),
    },
    "approx": {
        "p": (positive_int, 50, "dimensionality"),
        "delta": (positive_real, 4.65, "distance between the class means"),
        "n_labeled_per_class": (positive_int, 5, "labeled objects per class, semi-supervised curve"),
        "n_max_per_class": (positive_int, 100, "largest objects per class"),
        "gamma": (nonnegative_real, 0.0, "constant eigenvalue-estimation term"),
    },
}
for _schema in SCHEMAS.values():
    _schema.update(_COMMON)


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    parameters: dict

    def to_json(self):
        return json.dumps({"subcommand": self.subcommand, **self.parameters}, sort_keys=True)


def build_parser():
    return _build()[0]


def _build():
    parser = argparse.ArgumentParser(
        prog="peaking",
        description="Learning curves of supervised and semi-supervised least squares classifiers.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="SUBCOMMAND")
    by_name = {}
    for name, schema in SCHEMAS.items():
        sp = by_name[name] = sub.add_parser(name, help=f"run the {name} experiment")
        sp.add_argument("--config", help="flat JSON file with parameters (flags take precedence)")
        for key, (_, default, helptext) in schema.items():
            shown = "required" if default is REQUIRED else f"default: {default}"
            # SUPPRESS keeps unset flags out of the namespace so file values survive.
            sp.add_argument(
                "--" + key.replace("_", "-"),
                dest=key,
                default=argparse.SUPPRESS,
                help=f"{helptext} ({shown})",
            )
    return parser, by_name


def _read_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise _Usage(f"cannot read config file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise _Usage(f"config file {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise _Usage("config file must hold a flat JSON object")
    return {str(k).replace("-", "_"): v for k, v in data.items()}


def _default_output(subcommand):
    return str(Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / f"{subcommand}.csv")


def parse_config(argv=None):
    """Resolve defaults, config file and flags into a validated RunConfig.

    Problems are reported as argparse usage errors (``SystemExit(2)``).
    """
    parser, subparsers = _build()
    ns = vars(parser.parse_args(argv))
    subcommand = ns.pop("subcommand")
    config_path = ns.pop("config", None)
    schema = SCHEMAS[subcommand]
    subparser = subparsers[subcommand]

    try:
        from_file = _read_config_file(config_path) if config_path else {}
        file_sub = from_file.pop("subcommand", subcommand)
        if file_sub != subcommand:
            raise _Usage(f"config file is for subcommand {file_sub!r}, not {subcommand!r}")
        unknown = sorted(set(from_file) - set(schema))
        if unknown:
            raise _Usage(f"unknown parameter(s) in config file: {', '.join(unknown)}")

        resolved = {}
        for key, (convert, default, _) in schema.items():
            if key in ns:
                raw = ns[key]
            elif key in from_file:
                raw = from_file[key]
            elif default is REQUIRED:
                raise _Usage(f"missing required parameter --{key.replace('_', '-')}")
            else:
                resolved[key] = default
                continue
            try:
                resolved[key] = convert(raw)
            except _Usage as exc:
                raise _Usage(f"--{key.replace('_', '-')}: {exc}") from None
        if resolved["output"] is None:
            resolved["output"] = _default_output(subcommand)
    except _Usage as exc:
        subparser.error(str(exc))
    return RunConfig(subcommand, resolved)


def _format(v):
    return f"{v:.10g}"


def emit_csv(curves, path):
    """Write curves as CSV sorted by curve id then training-set size.

    Approximation curves, whose points carry a regime, get an extra
    trailing ``regime`` column. The last line is ``# config: <digest>``.
    """
    curves = list(curves)
    if not curves:
        raise ValueError("no curves to write")
    points = [pt for c in curves for pt in c.points]
    points.sort(key=lambda pt: (pt.curve_id, pt.n_total, pt.n_labeled))
    with_regime = any(pt.regime for pt in points)
    header = CSV_HEADER + (["regime"] if with_regime else [])
    digests = sorted({c.config_digest for c in curves})
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for pt in points:
            row = [
                pt.curve_id,
                pt.n_labeled,
                pt.n_unlabeled,
                _format(pt.error.mean_error),
                _format(pt.error.std_error),
                pt.error.repetitions,
            ]
            if with_regime:
                row.append(pt.regime)
            writer.writerow(row)
        for digest in digests:
            fh.write(f"# config: {digest}\n")
    return Path(path)


def _grid(lo, hi, step):
    if hi < lo:
        raise _Usage(f"--n-max ({hi}) is below --n-min ({lo})")
    return list(range(lo, hi + 1, step))


def execute(config):
    """Run the experiment named by ``config`` and return its curves."""
    a = config.parameters
    common = {"seed": a["seed"], "n_jobs": a["n_jobs"]}
    if config.subcommand == "curve":
        return run_synthetic_curves(
            GaussianProblem(a["p"], a["delta"]),
            n_labeled_per_class=a["n_labeled_per_class"],
            max_total=a["max_total"],
            step=a["step"],
            repetitions=a["repetitions"],
            **common,
        )
    if config.subcommand == "contributions":
        return run_contributions(
            GaussianProblem(a["p"], a["delta"]),
            _grid(a["n_min"], a["n_max"], a["step"]),
            repetitions=a["repetitions"],
            **common,
        )
    if config.subcommand == "infinite":
        return run_infinite_unlabeled(
            a["p"], a["delta"], _grid(a["n_min"], a["n_max"], a["step"]), repetitions=a["repetitions"], **common
        )
    if config.subcommand == "benchmark":
        source = a["dataset"]
        if source.lower() in BUNDLED_DATASETS and not Path(source).is_file():
            path, name = bundled_dataset_path(source), source.lower()
        else:
            path, name = Path(source), Path(source).name
        label = a["label_column"]
        dataset = load_csv_dataset(path, int(label) if label.isdigit() else label)
        return run_benchmark(
            dataset,
            repetitions=a["repetitions"],
            test_size=a["test_size"],
            max_extra=a["max_extra"],
            step=a["step"],
            variance_fraction=a["variance_fraction"],
            name=name,
            **common,
        )
    if config.subcommand == "approx":
        return run_approximation(
            a["p"],
            a["delta"],
            n_labeled_per_class=a["n_labeled_per_class"],
            n_max_per_class=a["n_max_per_class"],
            gamma=GammaSpec(a["gamma"]),
        )
    raise ValueError(f"unknown subcommand {config.subcommand!r}")


def main(argv=None):
    config = parse_config(argv)
    print(config.to_json(), file=sys.stderr)
    try:
        curves = execute(config)
        out = emit_csv(curves, config.parameters["output"])
    except _Usage as exc:
        print(f"peaking {config.subcommand}: error: {exc}", file=sys.stderr)
        return 2
    except (PeakingError, OSError) as exc:
        print(f"peaking {config.subcommand}: error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
