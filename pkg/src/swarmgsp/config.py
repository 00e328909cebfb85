"""Flat key-value configuration: parsing, environment overrides, defaults.

Config files are INI-style with one section per concern ([model], [couzin]
or [swarmalator], [anomaly], [detection], [experiment], [sweep],
[validate]). Every reconstructed model constant lives in these files, never
in code. Any key can be overridden through the environment as
``SWARMGSP_<SECTION>__<KEY>`` (uppercase section and key, double underscore
between them).
"""

from __future__ import annotations

import configparser
import os
from dataclasses import replace
from importlib import resources
from math import radians
from typing import Optional

from .detection import CASE_LGS_DIRECTION, CASE_MODEL, CASE_SIGNAL, CaseSpec, case_filter_spec
from .errors import ConfigError
from .experiment import ExperimentConfig
from .models.couzin import CouzinParams
from .models.swarmalator import SwarmalatorParams
from .spectral import FilterSpec

ENV_PREFIX = "SWARMGSP_"

CASE_CONFIG_FILES = {case_id: f"case{case_id}.cfg" for case_id in range(1, 6)}
STATE_CONFIG_FILES = {
    ("couzin", "swarming"): "couzin_swarming.cfg",
    ("couzin", "torus"): "couzin_torus.cfg",
    ("swarmalator", "wave"): "swarmalator_wave.cfg",
}

# config key -> (params field, converter)
_COUZIN_KEYS = {
    "r_repulsion": ("r_repulsion", float),
    "r_orientation": ("r_orientation", float),
    "r_attraction": ("r_attraction", float),
    "perception_deg": ("perception_angle", lambda v: radians(float(v))),
    "turn_rate_deg": ("max_turn_rate", lambda v: radians(float(v))),
    "speed": ("speed", float),
    "noise_sd": ("noise_sd", float),
    "dt": ("dt", float),
}
_SWARMALATOR_KEYS = {
    "attraction": ("attraction", float),
    "repulsion": ("repulsion", float),
    "phase_attraction": ("phase_attraction", float),
    "sync_coupling": ("sync_coupling", float),
    "natural_freq": ("natural_freq", float),
    "dt": ("dt", float),
}


def packaged_config_path(name: str):
    return resources.files("swarmgsp.configs").joinpath(name)


def read_config(source=None, overrides: Optional[dict] = None) -> configparser.ConfigParser:
    """Read a config file, then apply environment and explicit overrides.

    ``source`` is a filesystem path or a packaged-resource path; explicit
    overrides are {(section, key): value} and win over the environment.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if source is not None:
        try:
            text = (
                source.read_text()
                if hasattr(source, "read_text")
                else open(source).read()
            )
        except (OSError, FileNotFoundError) as exc:
            raise ConfigError(f"cannot read config {source}: {exc}") from exc
        parser.read_string(text)

    for name, value in os.environ.items():
        if not name.startswith(ENV_PREFIX) or "__" not in name:
            continue
        section, _, key = name[len(ENV_PREFIX):].partition("__")
        _set(parser, section.lower(), key.lower(), value)
    for (section, key), value in (overrides or {}).items():
        _set(parser, section, key, str(value))
    return parser


def _set(parser, section, key, value):
    if not parser.has_section(section):
        parser.add_section(section)
    parser.set(section, key, value)


def config_echo(parser: configparser.ConfigParser) -> dict:
    """Fully resolved configuration as plain nested dicts (for manifests)."""
    return {section: dict(parser.items(section)) for section in parser.sections()}


def parse_index_set(text: str, n: int) -> frozenset:
    """Parse a 1-based spectral index set like ``1,4..N`` (N = graph size)."""
    indices: set[int] = set()
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ".." in token:
            lo_text, _, hi_text = token.partition("..")
            lo = _index_value(lo_text, n)
            hi = _index_value(hi_text, n)
            if lo > hi:
                raise ConfigError(f"empty index range {token!r}")
            indices.update(range(lo, hi + 1))
        else:
            indices.add(_index_value(token, n))
    if not indices:
        raise ConfigError(f"index set {text!r} is empty")
    if min(indices) < 1 or max(indices) > n:
        raise ConfigError(f"index set {text!r} leaves 1..{n}")
    return frozenset(indices)


def _index_value(token: str, n: int) -> int:
    token = token.strip()
    if token.upper() == "N":
        return n
    try:
        return int(token)
    except ValueError as exc:
        raise ConfigError(f"bad spectral index {token!r}") from exc


def _params_from_section(parser, section_name, key_table, params_cls):
    if not parser.has_section(section_name):
        raise ConfigError(f"config is missing the [{section_name}] section")
    section = parser[section_name]
    kwargs = {}
    for key in section:
        if key not in key_table:
            raise ConfigError(f"unknown key {key!r} in [{section_name}]")
        field_name, convert = key_table[key]
        kwargs[field_name] = convert(section[key])
    try:
        return params_cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [{section_name}] parameters: {exc}") from exc


def _apply_overrides(params, parser, section_name, key_table):
    if not parser.has_section(section_name):
        return params
    updates = {}
    for key in parser[section_name]:
        if key not in key_table:
            raise ConfigError(f"unknown key {key!r} in [{section_name}]")
        field_name, convert = key_table[key]
        updates[field_name] = convert(parser[section_name][key])
    try:
        return replace(params, **updates)
    except ValueError as exc:
        raise ConfigError(f"bad [{section_name}] parameters: {exc}") from exc


def load_model(parser):
    """Build (model_kind, n_agents, extent, nominal_params) from [model]."""
    if not parser.has_section("model"):
        raise ConfigError("config is missing the [model] section")
    model = parser["model"]
    kind = model.get("kind", fallback=None)
    if kind not in ("couzin", "swarmalator"):
        raise ConfigError(f"model kind must be couzin or swarmalator, got {kind!r}")
    try:
        n_agents = model.getint("n_agents")
        extent = model.getfloat("extent")
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [model] section: {exc}") from exc
    if n_agents is None or extent is None:
        raise ConfigError("[model] needs n_agents and extent")
    if kind == "couzin":
        nominal = _params_from_section(parser, "couzin", _COUZIN_KEYS, CouzinParams)
    else:
        nominal = _params_from_section(
            parser, "swarmalator", _SWARMALATOR_KEYS, SwarmalatorParams
        )
    return kind, n_agents, extent, nominal


def _anomaly_params(parser, kind, nominal):
    table = _COUZIN_KEYS if kind == "couzin" else _SWARMALATOR_KEYS
    return _apply_overrides(nominal, parser, "anomaly", table)


def _sweep(parser, kind):
    if not parser.has_section("sweep"):
        return None
    keys = list(parser["sweep"])
    if len(keys) != 1:
        raise ConfigError("[sweep] must hold exactly one swept key")
    key = keys[0]
    table = _COUZIN_KEYS if kind == "couzin" else _SWARMALATOR_KEYS
    if key not in table:
        raise ConfigError(f"unknown sweep key {key!r}")
    field_name, convert = table[key]
    try:
        values = tuple(
            float(convert(tok.strip()))
            for tok in parser["sweep"][key].split(",")
            if tok.strip()
        )
    except ValueError as exc:
        raise ConfigError(f"bad sweep values: {exc}") from exc
    if not values:
        raise ConfigError("[sweep] value list is empty")
    return field_name, values


def load_case(source=None, case_id: Optional[int] = None,
              overrides: Optional[dict] = None):
    """Assemble a (CaseSpec, ExperimentConfig, parser) triple.

    With no explicit ``source``, the packaged default config for ``case_id``
    is used. An explicit config must agree with ``case_id`` when both are
    given.
    """
    if source is None:
        if case_id is None:
            raise ConfigError("need a case id or a config file")
        if case_id not in CASE_CONFIG_FILES:
            raise ConfigError(f"case {case_id} is not one of 1..5")
        source = packaged_config_path(CASE_CONFIG_FILES[case_id])
    parser = read_config(source, overrides)

    if not parser.has_section("detection"):
        raise ConfigError("config is missing the [detection] section")
    det = parser["detection"]
    try:
        config_case = det.getint("case_id")
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad detection.case_id: {exc}") from exc
    if config_case is None:
        raise ConfigError("[detection] needs case_id")
    if case_id is not None and case_id != config_case:
        raise ConfigError(
            f"requested case {case_id} but config declares case {config_case}"
        )
    case_id = config_case
    if case_id not in CASE_MODEL:
        raise ConfigError(f"case {case_id} is not one of 1..5")

    kind, n_agents, extent, nominal = load_model(parser)
    if kind != CASE_MODEL[case_id]:
        raise ConfigError(f"case {case_id} runs on the {CASE_MODEL[case_id]} model")
    signal_kind = _signal_kind(det.get("signal", fallback=None), case_id)

    if det.get("oobp_pass", fallback=None):
        oobp = FilterSpec(
            variant="indicator",
            pass_indices=parse_index_set(det["oobp_pass"], n_agents),
        )
    else:
        oobp = case_filter_spec(case_id, "oobp", n_agents)
    lgs_direction = det.getint("lgs_direction", fallback=CASE_LGS_DIRECTION[case_id])

    if not parser.has_section("experiment"):
        raise ConfigError("config is missing the [experiment] section")
    exp = parser["experiment"]
    try:
        cfg = ExperimentConfig(
            runs=exp.getint("runs"),
            burn_in_steps=exp.getint("burn_in_steps"),
            snapshot_interval=exp.getint("snapshot_interval"),
            max_snapshots=exp.getint("max_snapshots"),
            n_agents=n_agents,
            anomalous_index=exp.getint("anomalous_index", fallback=0),
            base_seed=exp.getint("base_seed"),
            workers=exp.getint("workers", fallback=1),
            anomaly_sweep=_sweep(parser, kind),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [experiment] section: {exc}") from exc

    try:
        case = CaseSpec(
            case_id=case_id,
            model_kind=kind,
            nominal_params=nominal,
            anomaly_params=_anomaly_params(parser, kind, nominal),
            signal_kind=signal_kind,
            oobp_filter=oobp,
            lgs_direction=lgs_direction,
            spatial_extent=extent,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return case, cfg, parser


_SIGNAL_ALIASES = {
    "r": "adjusted_position",
    "u": "normalized_velocity",
    "h": "phase_complex",
    "adjusted_position": "adjusted_position",
    "normalized_velocity": "normalized_velocity",
    "phase_complex": "phase_complex",
}


def _signal_kind(text, case_id):
    if text is None:
        return CASE_SIGNAL[case_id]
    kind = _SIGNAL_ALIASES.get(text.strip().lower())
    if kind is None:
        raise ConfigError(f"unknown signal {text!r}")
    if kind != CASE_SIGNAL[case_id]:
        raise ConfigError(
            f"case {case_id} uses signal {CASE_SIGNAL[case_id]!r}, not {kind!r}"
        )
    return kind


def signal_kind_from_alias(text: str) -> str:
    kind = _SIGNAL_ALIASES.get(text.strip().lower())
    if kind is None:
        raise ConfigError(f"unknown signal {text!r}")
    return kind


def validate_thresholds(parser) -> dict:
    """The min_*/max_* bounds (and steps) in a [validate] section."""
    if not parser.has_section("validate"):
        raise ConfigError("config is missing the [validate] section")
    thresholds = {}
    steps = None
    for key in parser["validate"]:
        if key == "steps":
            steps = parser["validate"].getint(key)
        elif key.startswith(("min_", "max_")):
            thresholds[key] = parser["validate"].getfloat(key)
        else:
            raise ConfigError(f"unknown key {key!r} in [validate]")
    if steps is None:
        raise ConfigError("[validate] needs steps")
    return {"steps": steps, "thresholds": thresholds}
