"""Command line entry point: ``sparsehard learn|transform|recover|selftest``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import fields
from typing import List, Optional

from .experiments import COMMANDS, ConfigError, ExperimentConfig, run
from .report import default_out_dir, emit_report, summary_text
from .world import WorldError

log = logging.getLogger("sparsehard")

CONFIG_KEYS = {f.name for f in fields(ExperimentConfig)} - {"command"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--worlds", type=int, default=None, help="number of generated worlds (learn)")
    common.add_argument("--k", type=int, default=None, help="largest arity bound; worlds cycle through 1..k")
    common.add_argument("--n-max", dest="n_max", type=int, default=None, help="input length horizon per world")
    common.add_argument("--density", default=None, help="fraction of the census budget to fill, e.g. 3/4")
    common.add_argument("--formulas", type=int, default=None, help="instances for transform/recover")
    common.add_argument("--vars", type=int, default=None, help="largest variable count (recover)")
    common.add_argument("--m", type=int, default=None, help="force the field degree (recover)")
    common.add_argument("--out", default=None, help="report directory (default $SPARSEHARD_OUT_DIR or ./sparsehard-out)")
    common.add_argument("--jobs", type=int, default=None, help="worker processes")
    common.add_argument("--config", default=None, help="JSON file whose keys override the flags")
    common.add_argument("--figures", action="store_true", default=None, help="also render PNG figures")
    common.add_argument("-v", "--verbose", dest="verbosity", action="count", default=None)

    parser = argparse.ArgumentParser(prog="sparsehard", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "learn": "run learn_sat/learn_all over generated worlds and check every claim",
        "transform": "check the bounded-CNF to anti-Horn transform and the DNF negation",
        "recover": "recover unique assignments through the finite-field pipeline",
        "selftest": "run the whole acceptance suite with fixed seeds",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "learn":
            p.add_argument("--scenario", action="append", default=[], help="also check this world file (repeatable)")
    return parser


def make_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = ExperimentConfig(command=args.command)
    for key in CONFIG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            setattr(cfg, key, val)
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            overrides = json.load(fh)
        unknown = set(overrides) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, val in overrides.items():
            setattr(cfg, key, val)
    if cfg.out is None:
        cfg.out = default_out_dir()
    cfg.density = str(cfg.density)
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        cfg.validate()
    except (ConfigError, OSError, ValueError) as exc:
        print(f"sparsehard: error: {exc}", file=sys.stderr)
        return 2
    logging.basicConfig(level=logging.WARNING, format="%(message)s")
    log.setLevel(logging.INFO if cfg.verbosity else logging.WARNING)
    try:
        report = run(cfg, getattr(args, "scenario", []))
    except WorldError as exc:
        print(f"sparsehard: rejected world: {exc}", file=sys.stderr)
        return 2
    written = emit_report(report, cfg.out, figures=cfg.figures)
    sys.stdout.write(summary_text(report))
    for path in written:
        log.info("wrote %s", path)
    log.info("wall time %.1fs", report.wall_time)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
