"""Command-line front end: run experiment configs, validate them, list them.

    catlab run <config.json> [--out DIR] [--workers K] [--budget-mb M]
    catlab validate <config.json>
    catlab list-experiments

Exit status: 0 on success, 1 when any sweep point failed mid-run, 2 on a
rejected config or missing file.
"""

import argparse
import json
import os
import sys
from dataclasses import replace

from . import harness
from ._version import __version__
from .errors import ConfigInvalid


def _load_config(path):
    if not os.path.exists(path):
        print(f"no such config file: {path}", file=sys.stderr)
        raise SystemExit(2)
    try:
        return harness.ExperimentConfig.from_file(path)
    except ConfigInvalid as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _cmd_run(args):
    cfg = _load_config(args.config)
    if args.workers is not None:
        cfg = replace(cfg, workers=args.workers)
    if args.budget_mb is not None:
        cfg = replace(cfg, memory_mb=args.budget_mb)
    try:
        rs = harness.run(cfg, out_dir=args.out)
    except ConfigInvalid as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    harness.emit_plot_data(rs)
    for path in rs.outputs:
        print(path)
    print(rs.summary_path())
    if rs.errors:
        for failure in rs.errors:
            print(f"point failed: {failure['point']} -> {failure['error']}",
                  file=sys.stderr)
        return 1
    return 0


def _cmd_validate(args):
    cfg = _load_config(args.config)
    try:
        points = harness.validate(cfg)
    except ConfigInvalid as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 2
    print(f"ok: kind={cfg.kind} prefix={cfg.prefix} points={len(points)}")
    return 0


def _experiments_dir():
    """Nearest experiments/ directory from the working directory upward."""
    here = os.getcwd()
    while True:
        candidate = os.path.join(here, "experiments")
        if os.path.isdir(candidate):
            return candidate
        parent = os.path.dirname(here)
        if parent == here:
            return None
        here = parent


def _cmd_list_experiments(_args):
    directory = _experiments_dir()
    if directory is None:
        print("no experiments/ directory found from the current directory up")
        return 0
    names = sorted(f for f in os.listdir(directory) if f.endswith(".json"))
    if not names:
        print(f"no configs in {directory}")
        return 0
    for name in names:
        path = os.path.join(directory, name)
        try:
            with open(path) as fh:
                doc = json.load(fh)
            kind = doc.get("kind", "?")
        except (OSError, json.JSONDecodeError):
            kind = "unreadable"
        print(f"{os.path.join(directory, name)}  [{kind}]")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="catlab",
        description="experiments on a quantized chaotic map under measurement")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment config")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=".", help="output directory")
    p_run.add_argument("--workers", type=int, default=None,
                       help="parallel sweep points")
    p_run.add_argument("--budget-mb", type=int, default=None,
                       help="memory ceiling per point, in MiB")
    p_run.set_defaults(func=_cmd_run)

    p_val = sub.add_parser("validate", help="check a config without running it")
    p_val.add_argument("config")
    p_val.set_defaults(func=_cmd_validate)

    p_list = sub.add_parser("list-experiments",
                            help="list bundled experiment configs")
    p_list.set_defaults(func=_cmd_list_experiments)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
