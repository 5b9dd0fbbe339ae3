"""Command line interface: ``shiftlab <command> [options]``.

Records are written one JSON object per line (``--out json``, the default)
or as an aligned table.  Every record starts with the command, the config
hash and the tool version, so identical inputs give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

from . import __version__
from .cellspace import CellSet, get_space
from .config import (
    ExperimentConfig,
    build_domain,
    build_map,
    build_space,
    bundled_example_names,
    bundled_example_text,
    load,
    loads,
)
from .entropy import EMPTY, FolnerPrefix, entropy_estimate, parse_base, parse_windows
from .errors import ConfigError, ShiftlabError
from .goe import goe_experiment
from .localmap import validate_rule
from .subshift import (
    Pattern,
    check_bounded_propagation,
    check_kappa_step,
    check_strong_irreducibility,
    enumerate_patterns,
    glue,
)
from .tiling import greedy_tiling, verify_tiling

COMMANDS = ("enumerate", "check-step", "check-bp", "check-si", "tile", "entropy", "goe", "glue",
            "validate", "run", "examples")


class Emitter:
    """Collects records and writes them as JSON lines or a table."""

    def __init__(self, command: str, cfg: ExperimentConfig | None, fmt: str, stream=None):
        self.command = command
        self.hash = cfg.hash() if cfg is not None else None
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.rows: list[dict] = []

    def emit(self, payload: dict) -> None:
        record = {"command": self.command, "config_hash": self.hash, "tool_version": __version__}
        record.update(payload)
        if self.fmt == "json":
            self.stream.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")
        else:
            self.rows.append(record)

    def close(self) -> None:
        if self.fmt != "table" or not self.rows:
            return
        keys: list[str] = []
        for row in self.rows:
            for k in row:
                if k not in keys and k not in ("command", "config_hash", "tool_version"):
                    keys.append(k)
        cells = [[_cell(row.get(k)) for k in keys] for row in self.rows]
        widths = [max(len(k), *(len(r[i]) for r in cells)) for i, k in enumerate(keys)]
        self.stream.write("  ".join(k.ljust(w) for k, w in zip(keys, widths)).rstrip() + "\n")
        for r in cells:
            self.stream.write("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, separators=(",", ":"))
    return str(value)


def _param(args, cfg: ExperimentConfig | None, name: str, default=None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    if cfg is not None and name in cfg.params:
        return cfg.params[name]
    return default


def _cert_radius(args, cfg) -> int | str:
    value = _param(args, cfg, "cert_radius", "auto")
    if value in ("auto", None):
        return "auto"
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"bad certification radius {value!r}", "cert_radius") from None


def parse_cells(space, text: str | list) -> CellSet:
    """``a..b`` (inclusive, integer spaces) or cells separated by ``;``."""
    if isinstance(text, list):
        return CellSet(space, (space.parse_cell(c) for c in text))
    text = str(text).strip()
    if ".." in text and space.one_dimensional:
        a, b = text.split("..")
        return CellSet(space, range(int(a), int(b) + 1))
    parts = [t for t in text.split(";") if t.strip()]
    if len(parts) == 1 and space.one_dimensional and "," in parts[0]:
        parts = parts[0].split(",")
    return CellSet(space, (space.parse_cell(t.strip()) for t in parts))


def _symbols(word: str) -> list[str]:
    """Split a pattern word; commas separate multi-character symbols."""
    return word.split(",") if "," in word else list(word)


def _need_config(args, cfg):
    if cfg is None:
        raise ConfigError(f"'{args.command}' needs --config or --example")
    return cfg


# -- commands -----------------------------------------------------------------

def cmd_enumerate(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    spec = build_domain(cfg)
    space = spec.space
    window = _param(args, cfg, "window")
    radius = _param(args, cfg, "radius")
    if window is not None:
        F = parse_cells(space, window)
    elif radius is not None:
        F = space.ball(space.origin, int(radius))
    else:
        raise ConfigError("give --window or --radius", "window")
    ps = enumerate_patterns(spec, F, _cert_radius(args, cfg))
    h = ps.domain_hash()
    for p in ps:
        out.emit({"domain_hash": h, "pattern": p.word(), "exactness": str(ps.exactness)})
    out.emit({"summary": True, "domain_hash": h, "cells": [space.cell_json(c) for c in F],
              "count": len(ps), "exactness": str(ps.exactness)})
    return 0


def _verdict_record(spec, verdict) -> dict:
    return {"shift": spec.name, "finite_type": spec.finite_type, **verdict.to_json()}


def cmd_check_step(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    spec = build_domain(cfg)
    kappa = _param(args, cfg, "kappa", spec.derived_memory)
    if kappa is None:
        raise ConfigError("give --kappa (the shift has no derived memory)", "kappa")
    R = int(_param(args, cfg, "radius", int(kappa) + 3))
    out.emit(_verdict_record(spec, check_kappa_step(spec, int(kappa), R, _cert_radius(args, cfg))))
    return 0


def cmd_check_bp(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    spec = build_domain(cfg)
    rho = int(_param(args, cfg, "rho", spec.derived_memory or 1))
    out.emit(_verdict_record(spec, check_bounded_propagation(spec, rho, r=_cert_radius(args, cfg))))
    return 0


def cmd_check_si(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    spec = build_domain(cfg)
    kappa = int(_param(args, cfg, "kappa", spec.derived_memory or 1))
    radius = _param(args, cfg, "radius")
    verdict = check_strong_irreducibility(spec, kappa, R=int(radius) if radius is not None else None,
                                          r=_cert_radius(args, cfg))
    out.emit(_verdict_record(spec, verdict))
    return 0


def cmd_tile(args, cfg, out: Emitter) -> int:
    if args.space is not None:
        space = get_space(args.space)
    elif cfg is not None:
        space = build_space(cfg)
    else:
        space = get_space("Z")
    theta = int(_param(args, cfg, "theta", 1))
    kappa = int(_param(args, cfg, "kappa", 2))
    R = int(_param(args, cfg, "radius", 20))
    t = greedy_tiling(space, theta, kappa, R)
    for c in t.points:
        out.emit({"point": space.cell_json(c)})
    verdict = verify_tiling(space, t.points, theta, kappa, t.theta_prime, R)
    out.emit({"space": space.name, "theta": theta, "kappa": kappa, "theta_prime": t.theta_prime,
              "spacing": t.spacing, **verdict.to_json()})
    return 0


def cmd_entropy(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    spec = build_domain(cfg)
    windows = parse_windows(_param(args, cfg, "windows", "1..20"))
    base = _param(args, cfg, "log_base", 2)
    parse_base(base)
    balls = bool(args.balls or (cfg.params.get("balls", False)))
    if balls or not spec.space.one_dimensional:
        prefix = FolnerPrefix.balls(spec.space, windows)
    else:
        prefix = FolnerPrefix.intervals(spec.space, windows)
    est = entropy_estimate(spec, prefix, _cert_radius(args, cfg), base)
    oracle = est.oracle_value
    oracle = "empty" if oracle is EMPTY else oracle
    for rec in est.records():
        rec["oracle"] = oracle
        rec["log_base"] = str(base)
        out.emit(rec)
    return 0


def cmd_goe(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    lmap = build_map(cfg)
    r = _cert_radius(args, cfg)
    check = validate_rule(lmap.space, lmap.rule, lmap.domain, r)
    if not check.holds:
        out.emit({"rule": check.to_json(), "status": "invalid-rule"})
        return 1
    si_kappa = _param(args, cfg, "si_kappa")
    report = goe_experiment(
        lmap,
        int(_param(args, cfg, "rho_max", 8)),
        int(_param(args, cfg, "r_max", 6)),
        si_kappa=int(si_kappa) if si_kappa is not None else None,
        r=r,
    )
    out.emit({"rule": check.to_json(), **report.to_json()})
    return report.exit_code


def cmd_validate(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    lmap = build_map(cfg)
    verdict = validate_rule(lmap.space, lmap.rule, lmap.domain, _cert_radius(args, cfg))
    out.emit({"map": lmap.name, **verdict.to_json()})
    return 0 if verdict.holds else 1


def cmd_glue(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    if cfg.glue is None:
        raise ConfigError("missing [glue] section", "glue")
    spec = build_domain(cfg)
    space = spec.space
    g = cfg.glue
    W = parse_cells(space, g["window"])
    x = Pattern.from_word(space, _symbols(g["x"]), cells=W.ordered)
    pieces = []
    for i, piece in enumerate(g["pieces"]):
        if not isinstance(piece, dict) or set(piece) != {"cells", "pattern"}:
            raise ConfigError("each piece needs 'cells' and 'pattern'", f"glue.pieces[{i}]")
        A = parse_cells(space, piece["cells"])
        pieces.append((A, Pattern.from_word(space, _symbols(piece["pattern"]), cells=W.ordered)))
    kappa = int(g.get("kappa", spec.derived_memory or 0))
    result = glue(spec, kappa, x, pieces)
    out.emit({"kappa": kappa, "result": result.word(), "admissible": True})
    return 0


def cmd_examples(args, cfg, out: Emitter) -> int:
    if args.name:
        sys.stdout.write(bundled_example_text(args.name))
        return 0
    for name in bundled_example_names():
        ex = loads(bundled_example_text(name))
        spec = build_domain(ex)
        out.emit({"name": name, "description": ex.description, "default_command": ex.command,
                  "finite_type": spec.finite_type})
    return 0


HANDLERS: dict[str, Callable] = {
    "enumerate": cmd_enumerate,
    "check-step": cmd_check_step,
    "check-bp": cmd_check_bp,
    "check-si": cmd_check_si,
    "tile": cmd_tile,
    "entropy": cmd_entropy,
    "goe": cmd_goe,
    "glue": cmd_glue,
    "validate": cmd_validate,
    "examples": cmd_examples,
}


def cmd_run(args, cfg, out: Emitter) -> int:
    cfg = _need_config(args, cfg)
    if not cfg.command or cfg.command not in HANDLERS or cfg.command == "examples":
        raise ConfigError("config has no runnable 'command'", "command")
    out.command = cfg.command
    return HANDLERS[cfg.command](args, cfg, out)


HANDLERS["run"] = cmd_run


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shiftlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"shiftlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="experiment TOML file")
        p.add_argument("--example", help="name of a bundled example config")
        p.add_argument("--out", choices=("json", "table"), default="json")
        p.add_argument("--cert-radius", dest="cert_radius", help="certification radius or 'auto'")
        if name in ("enumerate",):
            p.add_argument("--window", help="cells: 'a..b' or 'c1;c2;...'")
        if name in ("enumerate", "check-step", "check-si", "tile"):
            p.add_argument("--radius", type=int)
        if name in ("check-step", "check-si", "tile"):
            p.add_argument("--kappa", type=int)
        if name == "check-bp":
            p.add_argument("--rho", type=int)
        if name == "tile":
            p.add_argument("--space")
            p.add_argument("--theta", type=int)
        if name in ("entropy", "run"):
            p.add_argument("--windows", help="'a..b' or a comma list")
            p.add_argument("--log-base", dest="log_base")
            p.add_argument("--balls", action="store_true", help="use balls instead of intervals")
        if name in ("goe", "run"):
            p.add_argument("--rho-max", dest="rho_max", type=int)
            p.add_argument("--r-max", dest="r_max", type=int)
        if name == "examples":
            p.add_argument("--name", help="print the TOML text of one example")
    return parser


def _load_config(args) -> ExperimentConfig | None:
    if getattr(args, "config", None) and getattr(args, "example", None):
        raise ConfigError("give either --config or --example, not both")
    if getattr(args, "config", None):
        return load(args.config)
    if getattr(args, "example", None):
        return loads(bundled_example_text(args.example))
    return None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for attr in ("radius", "kappa", "rho", "space", "theta", "windows", "log_base", "balls", "rho_max",
                 "r_max", "window", "name"):
        if not hasattr(args, attr):
            setattr(args, attr, None)
    try:
        cfg = _load_config(args)
        out = Emitter(args.command, cfg, args.out)
        code = HANDLERS[args.command](args, cfg, out)
        out.close()
        return code
    except ShiftlabError as exc:
        print(f"shiftlab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
