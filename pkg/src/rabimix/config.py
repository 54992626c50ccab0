"""Run-configuration parsing, validation and emission.

Configs are JSON documents with a ``system`` section (modes, qubits,
couplings, interaction model) and one optional section per command. Parsing
validates the whole document and reports every violation with its field
path, not just the first; syntax errors carry line and column.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError, RabimixError
from .hilbert import BasisState
from .system import (
    CouplingSpec,
    InteractionModel,
    ModeSpec,
    QubitSpec,
    SystemSpec,
    default_n_max,
)

_SECTIONS = ("system", "geff", "spectrum", "evolve", "catalog", "classical", "verify")


@dataclass
class RunConfig:
    """Validated configuration: the system plus per-command sections."""

    raw: dict
    system: SystemSpec | None
    sections: dict = field(default_factory=dict)

    def section(self, name: str) -> dict:
        if name not in self.sections:
            raise ConfigError(f"config has no {name!r} section")
        return self.sections[name]


class _Collector:
    def __init__(self):
        self.errors = []

    def add(self, path, message):
        self.errors.append(f"{path}: {message}")

    def raise_if_any(self):
        if self.errors:
            raise ConfigError(self.errors)


def _check_keys(obj, path, allowed, errs):
    for k in obj:
        if k not in allowed:
            errs.add(f"{path}.{k}", f"unknown key (allowed: {sorted(allowed)})")


def _get_number(obj, path, key, errs, required=True, default=None, positive=False):
    if key not in obj:
        if required:
            errs.add(f"{path}.{key}", "missing required field")
        return default
    v = obj[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        errs.add(f"{path}.{key}", f"expected a number, got {v!r}")
        return default
    if positive and not v > 0:
        errs.add(f"{path}.{key}", f"must be > 0, got {v}")
        return default
    return float(v)


def _get_int(obj, path, key, errs, required=True, default=None, minimum=None):
    if key not in obj:
        if required:
            errs.add(f"{path}.{key}", "missing required field")
        return default
    v = obj[key]
    if not isinstance(v, int) or isinstance(v, bool):
        errs.add(f"{path}.{key}", f"expected an integer, got {v!r}")
        return default
    if minimum is not None and v < minimum:
        errs.add(f"{path}.{key}", f"must be >= {minimum}, got {v}")
        return default
    return v


def _get_str(obj, path, key, errs, required=True, default=None):
    if key not in obj:
        if required:
            errs.add(f"{path}.{key}", "missing required field")
        return default
    v = obj[key]
    if not isinstance(v, str):
        errs.add(f"{path}.{key}", f"expected a string, got {v!r}")
        return default
    return v


def _parse_state(text, path, errs):
    try:
        return BasisState.parse(text)
    except RabimixError as e:
        errs.add(path, str(e))
        return None


def _referenced_occupations(raw):
    """Largest occupation mentioned per mode position, across all sections."""
    occ = {}
    labels = []
    for s in raw.get("system", {}).get("modes", []):
        if isinstance(s, dict) and isinstance(s.get("label"), str):
            labels.append(s["label"])
    texts = []
    for sec, keys in (("geff", ("initial", "final")), ("evolve", ("initial",))):
        for k in keys:
            v = raw.get(sec, {}).get(k)
            if isinstance(v, str):
                texts.append(v)
    for v in raw.get("evolve", {}).get("targets", []) or []:
        if isinstance(v, str):
            texts.append(v)
    for v in raw.get("spectrum", {}).get("tracked", []) or []:
        if isinstance(v, str):
            texts.append(v)
    for t in texts:
        try:
            st = BasisState.parse(t)
        except RabimixError:
            continue
        for k, n in enumerate(st.occupations):
            occ[k] = max(occ.get(k, 0), n)
    return occ


def _parse_system(raw, errs) -> SystemSpec | None:
    sec = raw.get("system")
    if sec is None:
        errs.add("system", "missing required section")
        return None
    if not isinstance(sec, dict):
        errs.add("system", "must be an object")
        return None
    _check_keys(sec, "system", {"modes", "qubits", "couplings", "model"}, errs)
    occ_hints = _referenced_occupations(raw)

    modes = []
    for k, m in enumerate(sec.get("modes", [])):
        p = f"system.modes[{k}]"
        if not isinstance(m, dict):
            errs.add(p, "must be an object")
            continue
        _check_keys(m, p, {"label", "frequency", "n_max"}, errs)
        label = _get_str(m, p, "label", errs)
        freq = _get_number(m, p, "frequency", errs, positive=True)
        n_max = _get_int(m, p, "n_max", errs, required=False, minimum=1)
        if n_max is None:
            n_max = default_n_max(occ_hints.get(k, 1))
        if label is not None and freq is not None:
            try:
                modes.append(ModeSpec(label, freq, n_max))
            except ConfigError as e:
                errs.add(p, str(e))

    qubits = []
    for k, q in enumerate(sec.get("qubits", [])):
        p = f"system.qubits[{k}]"
        if not isinstance(q, dict):
            errs.add(p, "must be an object")
            continue
        _check_keys(q, p, {"label", "frequency"}, errs)
        label = _get_str(q, p, "label", errs)
        freq = _get_number(q, p, "frequency", errs, positive=True)
        if label is not None and freq is not None:
            try:
                qubits.append(QubitSpec(label, freq))
            except ConfigError as e:
                errs.add(p, str(e))

    couplings = []
    for k, c in enumerate(sec.get("couplings", [])):
        p = f"system.couplings[{k}]"
        if not isinstance(c, dict):
            errs.add(p, "must be an object")
            continue
        _check_keys(c, p, {"mode", "qubit", "strength", "mixing_angle"}, errs)
        mode = _get_str(c, p, "mode", errs)
        qubit = _get_str(c, p, "qubit", errs)
        g = _get_number(c, p, "strength", errs)
        theta = _get_number(c, p, "mixing_angle", errs, required=False, default=0.0)
        if mode is not None and qubit is not None and g is not None:
            try:
                couplings.append(CouplingSpec(mode, qubit, g, theta))
            except ConfigError as e:
                errs.add(p, str(e))

    model = sec.get("model", "rabi")
    try:
        model = InteractionModel.parse(model)
    except ConfigError as e:
        errs.add("system.model", str(e))
        model = InteractionModel.RABI

    if errs.errors:
        return None
    try:
        return SystemSpec(tuple(modes), tuple(qubits), tuple(couplings), model)
    except ConfigError as e:
        for m in e.messages:
            errs.add("system", m)
        return None


def _validate_section(name, sec, errs):
    if not isinstance(sec, dict):
        errs.add(name, "must be an object")
        return {}
    out = dict(sec)
    if name == "geff":
        _check_keys(sec, name, {"initial", "final", "order"}, errs)
        for key in ("initial", "final"):
            t = _get_str(sec, name, key, errs)
            if t is not None:
                out[key] = _parse_state(t, f"{name}.{key}", errs)
        _get_int(sec, name, "order", errs, required=False, minimum=1)
    elif name == "spectrum":
        _check_keys(sec, name, {"parameter", "lo", "hi", "points", "tracked",
                                "models", "output"}, errs)
        _get_str(sec, name, "parameter", errs)
        lo = _get_number(sec, name, "lo", errs)
        hi = _get_number(sec, name, "hi", errs)
        if lo is not None and hi is not None and not lo < hi:
            errs.add(f"{name}.lo", f"must satisfy lo < hi, got [{lo}, {hi}]")
        _get_int(sec, name, "points", errs, minimum=3)
        tracked = sec.get("tracked")
        if not isinstance(tracked, list) or len(tracked) < 2:
            errs.add(f"{name}.tracked", "expected a list of at least 2 states")
        else:
            out["tracked"] = [
                _parse_state(t, f"{name}.tracked[{k}]", errs) for k, t in enumerate(tracked)
            ]
        models = sec.get("models")
        if models is not None:
            if not isinstance(models, list):
                errs.add(f"{name}.models", "expected a list of model names")
            else:
                parsed = []
                for k, m in enumerate(models):
                    try:
                        parsed.append(InteractionModel.parse(m))
                    except ConfigError as e:
                        errs.add(f"{name}.models[{k}]", str(e))
                out["models"] = parsed
        _get_str(sec, name, "output", errs, required=False, default="spectrum")
    elif name == "evolve":
        _check_keys(sec, name, {"initial", "total_time", "samples", "targets", "output"}, errs)
        t = _get_str(sec, name, "initial", errs)
        if t is not None:
            out["initial"] = _parse_state(t, f"{name}.initial", errs)
        _get_number(sec, name, "total_time", errs, positive=True)
        _get_int(sec, name, "samples", errs, minimum=16)
        targets = sec.get("targets")
        if not isinstance(targets, list) or not targets:
            errs.add(f"{name}.targets", "expected a non-empty list of states")
        else:
            out["targets"] = [
                _parse_state(x, f"{name}.targets[{k}]", errs) for k, x in enumerate(targets)
            ]
        _get_str(sec, name, "output", errs, required=False)
    elif name == "catalog":
        _check_keys(sec, name, {"category", "table", "degenerate", "model",
                                "distinct_only"}, errs)
        cat = _get_str(sec, name, "category", errs, required=False)
        if cat is not None and cat not in ("three-wave", "four-wave", "higher", "other"):
            errs.add(f"{name}.category", f"unknown category {cat!r}")
        _get_int(sec, name, "table", errs, required=False)
        for key in ("degenerate", "distinct_only"):
            if key in sec and not isinstance(sec[key], bool):
                errs.add(f"{name}.{key}", "expected true or false")
        if "model" in sec:
            try:
                InteractionModel.parse(sec["model"])
            except ConfigError as e:
                errs.add(f"{name}.model", str(e))
    elif name == "classical":
        _check_keys(sec, name, {"tones", "chi1", "chi2", "chi3", "epsilon0", "output"}, errs)
        tones = sec.get("tones")
        if not isinstance(tones, list) or not tones:
            errs.add(f"{name}.tones", "expected a non-empty list of tones")
        else:
            if len(tones) > 3:
                errs.add(f"{name}.tones", f"at most 3 tones supported, got {len(tones)}")
            for k, tone in enumerate(tones):
                p = f"{name}.tones[{k}]"
                if not isinstance(tone, dict):
                    errs.add(p, "must be an object")
                    continue
                _check_keys(tone, p, {"amplitude", "frequency"}, errs)
                _get_number(tone, p, "amplitude", errs)
                f = _get_number(tone, p, "frequency", errs)
                if f is not None and f < 0:
                    errs.add(f"{p}.frequency", f"must be >= 0, got {f}")
        for key in ("chi1", "chi2", "chi3", "epsilon0"):
            _get_number(sec, name, key, errs, required=False, default=0.0)
        _get_str(sec, name, "output", errs, required=False)
    elif name == "verify":
        _check_keys(sec, name, {"processes", "all_closed_forms"}, errs)
        procs = sec.get("processes")
        if procs is not None and (
            not isinstance(procs, list) or not all(isinstance(x, str) for x in procs)
        ):
            errs.add(f"{name}.processes", "expected a list of process ids")
        if "all_closed_forms" in sec and not isinstance(sec["all_closed_forms"], bool):
            errs.add(f"{name}.all_closed_forms", "expected true or false")
        if procs is None and not sec.get("all_closed_forms"):
            errs.add(name, "give either 'processes' or 'all_closed_forms': true")
    return out


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    if not isinstance(raw, dict):
        raise ConfigError("top-level config must be an object")

    errs = _Collector()
    for k in raw:
        if k not in _SECTIONS:
            errs.add(k, f"unknown section (allowed: {list(_SECTIONS)})")

    # a system section is required for the computational commands but not for
    # purely tabular ones (catalog, classical)
    needs_system = any(k in raw for k in ("geff", "spectrum", "evolve")) or "system" in raw
    system = _parse_system(raw, errs) if needs_system else None

    sections = {}
    for name in _SECTIONS[1:]:
        if name in raw:
            sections[name] = _validate_section(name, raw[name], errs)
    errs.raise_if_any()
    return RunConfig(raw=raw, system=system, sections=sections)


def emit_config(config: RunConfig) -> str:
    """Serialize a config back to canonical JSON (round-trips with parse)."""
    return json.dumps(config.raw, indent=2, sort_keys=True) + "\n"


def apply_override(raw: dict, assignment: str) -> None:
    """Apply one ``path=value`` override in place.

    Paths are dot-separated; numeric segments index into lists
    (``system.modes.0.frequency=2.1``). Values are parsed as JSON when
    possible, else taken as strings.
    """
    path, sep, value = assignment.partition("=")
    if not sep:
        raise ConfigError(f"override {assignment!r} is not of the form path=value")
    try:
        parsed = json.loads(value)
    except json.JSONDecodeError:
        parsed = value
    parts = path.strip().split(".")
    target = raw
    for k, part in enumerate(parts[:-1]):
        key = int(part) if part.isdigit() else part
        try:
            target = target[key]
        except (KeyError, IndexError, TypeError):
            raise ConfigError(
                f"override path {path!r} does not exist at segment {part!r}"
            ) from None
    last = parts[-1]
    key = int(last) if last.isdigit() else last
    if isinstance(target, list):
        if not isinstance(key, int) or not 0 <= key < len(target):
            raise ConfigError(f"override path {path!r}: bad list index {last!r}")
        target[key] = parsed
    elif isinstance(target, dict):
        target[key] = parsed
    else:
        raise ConfigError(f"override path {path!r} points inside a scalar")
