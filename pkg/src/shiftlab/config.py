"""Experiment configuration files (TOML).

A configuration names a space, a domain shift (named or by alphabet and
forbidden blocks), optionally a local rule and a codomain, and command
parameters::

    name = "paper_map"
    space = "Z"
    shift = "golden_mean"
    command = "goe"

    [codomain]
    shift = "even"

    [rule]
    kappa = 1
    neighbourhood = ["0", "+1"]
    table = [{ in = "00", out = "1" }, { in = "01", out = "0" }, { in = "10", out = "0" }]

    [params]
    rho_max = 8
    r_max = 6
"""
from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10 only
    import tomli as tomllib

from .cellspace import CellSpace, get_space
from .errors import ConfigError, ShiftlabError
from .localmap import LocalMap, LocalRule
from .subshift import Pattern, SubshiftSpec, gg_mean, named_shift

TOP_KEYS = {"name", "description", "space", "shift", "q", "sets", "alphabet", "forbidden", "codomain", "rule",
            "params", "glue", "command", "expected"}
SHIFT_KEYS = {"shift", "alphabet", "forbidden", "q", "sets", "name"}
RULE_KEYS = {"kappa", "neighbourhood", "table", "default", "name"}
PARAM_KEYS = {"windows", "cert_radius", "log_base", "rho_max", "r_max", "kappa", "radius", "rho",
              "theta", "seed", "window", "balls", "si_kappa"}
GLUE_KEYS = {"window", "x", "pieces", "kappa"}


@dataclass
class ExperimentConfig:
    name: str
    space: str
    shift: dict
    codomain: dict | None = None
    rule: dict | None = None
    params: dict = field(default_factory=dict)
    glue: dict | None = None
    command: str | None = None
    description: str = ""
    expected: dict | None = None

    def to_dict(self) -> dict:
        """Canonical nested-dict form (the inverse of ``from_dict``)."""
        out: dict[str, Any] = {"name": self.name, "space": self.space}
        if self.description:
            out["description"] = self.description
        if self.command:
            out["command"] = self.command
        out.update(_shift_out(self.shift))
        if self.codomain is not None:
            out["codomain"] = _shift_out(self.codomain)
        if self.rule is not None:
            out["rule"] = dict(self.rule)
        if self.params:
            out["params"] = dict(self.params)
        if self.glue is not None:
            out["glue"] = dict(self.glue)
        if self.expected is not None:
            out["expected"] = dict(self.expected)
        return out

    def dumps(self) -> str:
        return tomli_w.dumps(self.to_dict())

    def hash(self) -> str:
        body = {k: v for k, v in self.to_dict().items() if k != "expected"}
        text = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


def _shift_out(shift: dict) -> dict:
    out = {}
    for key in ("same", "shift", "q", "sets", "alphabet", "forbidden"):
        if key in shift:
            out[key] = shift[key]
    return out


def _check_keys(table: dict, allowed: set, where: str) -> None:
    extra = sorted(set(table) - allowed)
    if extra:
        raise ConfigError(f"unknown key(s) {', '.join(extra)}", where)


def _str_list(value, where: str) -> list[str]:
    if not isinstance(value, list):
        raise ConfigError("expected a list", where)
    return [str(v) for v in value]


def _parse_shift(table: dict, where: str) -> dict:
    _check_keys(table, SHIFT_KEYS | ({"same"} if where == "codomain" else set()), where)
    out: dict = {}
    if table.get("same"):
        return {"same": True}
    if "shift" in table:
        if not isinstance(table["shift"], str):
            raise ConfigError("expected a string", f"{where}.shift" if where != "<root>" else "shift")
        out["shift"] = table["shift"]
        if "q" in table:
            out["q"] = int(table["q"])
        if "sets" in table:
            out["sets"] = [_str_list(s, f"{where}.sets") for s in table["sets"]]
        return out
    if "alphabet" not in table:
        raise ConfigError("missing 'shift' or 'alphabet'", where)
    out["alphabet"] = _str_list(table["alphabet"], f"{where}.alphabet" if where != "<root>" else "alphabet")
    blocks = []
    for i, block in enumerate(table.get("forbidden", [])):
        loc = f"forbidden[{i}]"
        if not isinstance(block, dict):
            raise ConfigError("expected a table with cells and values", loc)
        _check_keys(block, {"cells", "values"}, loc)
        cells = _str_list(block.get("cells", []), f"{loc}.cells")
        values = _str_list(block.get("values", []), f"{loc}.values")
        if len(cells) != len(values):
            raise ConfigError("cells and values differ in length", loc)
        blocks.append({"cells": cells, "values": values})
    out["forbidden"] = blocks
    return out


def from_dict(data: dict) -> ExperimentConfig:
    if not isinstance(data, dict) or not data:
        raise ConfigError("empty configuration")
    _check_keys(data, TOP_KEYS, "<root>")
    if "space" not in data:
        raise ConfigError("missing required key", "space")
    space = data["space"]
    if not isinstance(space, str):
        raise ConfigError("expected a string", "space")
    try:
        get_space(space)
    except ShiftlabError as exc:
        raise ConfigError(str(exc), "space") from None
    root = {k: data[k] for k in SHIFT_KEYS & set(data) if k != "name"}
    shift = _parse_shift(root, "<root>")
    codomain = None
    if "codomain" in data:
        if not isinstance(data["codomain"], dict):
            raise ConfigError("expected a table", "codomain")
        codomain = _parse_shift(data["codomain"], "codomain")
    rule = None
    if "rule" in data:
        rule = _parse_rule(data["rule"])
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("expected a table", "params")
    _check_keys(params, PARAM_KEYS, "params")
    glue = data.get("glue")
    if glue is not None:
        if not isinstance(glue, dict):
            raise ConfigError("expected a table", "glue")
        _check_keys(glue, GLUE_KEYS, "glue")
        for key in ("window", "x", "pieces"):
            if key not in glue:
                raise ConfigError("missing required key", f"glue.{key}")
    return ExperimentConfig(
        name=str(data.get("name", "unnamed")),
        space=space,
        shift=shift,
        codomain=codomain,
        rule=rule,
        params=dict(params),
        glue=dict(glue) if glue is not None else None,
        command=data.get("command"),
        description=str(data.get("description", "")),
        expected=data.get("expected"),
    )


def _parse_rule(table) -> dict:
    if not isinstance(table, dict):
        raise ConfigError("expected a table", "rule")
    _check_keys(table, RULE_KEYS, "rule")
    if "neighbourhood" not in table:
        raise ConfigError("missing required key", "rule.neighbourhood")
    if "table" not in table:
        raise ConfigError("missing required key", "rule.table")
    out: dict = {"neighbourhood": _str_list(table["neighbourhood"], "rule.neighbourhood")}
    entries = []
    for i, row in enumerate(table["table"]):
        loc = f"rule.table[{i}]"
        if not isinstance(row, dict) or set(row) != {"in", "out"}:
            raise ConfigError("each entry needs exactly 'in' and 'out'", loc)
        entries.append({"in": str(row["in"]), "out": str(row["out"])})
    out["table"] = entries
    if "kappa" in table:
        out["kappa"] = int(table["kappa"])
    if "default" in table:
        out["default"] = str(table["default"])
    if "name" in table:
        out["name"] = str(table["name"])
    return out


def loads(text: str) -> ExperimentConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML syntax error: {exc}") from None
    return from_dict(data)


def load(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


# -- building library objects -------------------------------------------------------

def build_space(cfg: ExperimentConfig) -> CellSpace:
    return get_space(cfg.space)


def build_shift(shift: dict, space: CellSpace, where: str = "shift") -> SubshiftSpec:
    try:
        if "shift" in shift:
            name = shift["shift"]
            if name == "gg_mean" and ("q" in shift or "sets" in shift):
                return gg_mean(shift.get("q", 1), shift.get("sets", [["0", "+1"]]), space)
            if name in ("golden_mean", "full") and space.name != "Z":
                from .subshift import full_shift, golden_mean

                return golden_mean(space) if name == "golden_mean" else full_shift(space=space)
            spec = named_shift(name)
            if spec.space is not space:
                raise ConfigError(f"named shift {name!r} is defined over Z only", where)
            return spec
        forbidden = [
            Pattern(space, zip((space.parse_cell(c) for c in b["cells"]), b["values"]))
            for b in shift["forbidden"]
        ]
        return SubshiftSpec(space, shift["alphabet"], forbidden, name="custom")
    except ConfigError:
        raise
    except ShiftlabError as exc:
        raise ConfigError(str(exc), where) from None


def build_domain(cfg: ExperimentConfig) -> SubshiftSpec:
    return build_shift(cfg.shift, build_space(cfg), "shift")


def build_map(cfg: ExperimentConfig, domain: SubshiftSpec | None = None) -> LocalMap:
    if cfg.rule is None:
        raise ConfigError("this command needs a [rule] section", "rule")
    space = build_space(cfg)
    domain = domain or build_domain(cfg)
    if cfg.codomain is None or cfg.codomain.get("same"):
        codomain = domain
    else:
        codomain = build_shift(cfg.codomain, space, "codomain")
    try:
        rule = LocalRule.from_words(
            space,
            cfg.rule["neighbourhood"],
            {row["in"]: row["out"] for row in cfg.rule["table"]},
            cfg.rule.get("kappa"),
            cfg.rule.get("default"),
        )
    except ShiftlabError as exc:
        raise ConfigError(str(exc), "rule") from None
    return LocalMap(rule, domain, codomain, cfg.rule.get("name", cfg.name))


# -- bundled examples ---------------------------------------------------------------

def bundled_example_names() -> list[str]:
    root = resources.files("shiftlab") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".toml"))


def bundled_example_text(name: str) -> str:
    root = resources.files("shiftlab") / "data"
    path = root / f"{name}.toml"
    if not path.is_file():
        raise ConfigError(f"no bundled example named {name!r}")
    return path.read_text(encoding="utf-8")


def bundled_examples() -> list[ExperimentConfig]:
    return [loads(bundled_example_text(n)) for n in bundled_example_names()]
