"""Command-line interface.

Subcommands: geff, spectrum, evolve, catalog, classical, verify. All take a
JSON config (see :mod:`rabimix.config`); values can be overridden with
repeated ``--set path=value`` flags or environment variables prefixed with
``RABIMIX_`` (double underscores standing in for dots, e.g.
``RABIMIX_system__model=jc``). Flags win over environment variables.

Exit codes: 0 success, 1 computation failure, 2 configuration error,
3 capacity exceeded. Output files are written atomically (temp file plus
rename), so an interrupted run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor

from . import catalog as cat
from .classical import Susceptibilities, Tone, polarization_spectrum, write_spectrum_csv
from .config import RunConfig, apply_override, parse_config
from .dynamics import EvolutionSpec, evolve, extract_oscillation, write_trace_csv
from .errors import CapacityError, ConfigError, FlatTraceError, RabimixError
from .hamiltonian import build_hamiltonian
from .hilbert import build_space
from .perturbation import effective_coupling, interaction_for
from .spectra import SweepSpec, track_levels, write_sweep_csv

ENV_PREFIX = "RABIMIX_"


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".rabimix-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _atomic_writer(write_fn, path: str) -> None:
    """Run a path-taking writer against a temp file, then rename into place."""
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".rabimix-", suffix=".tmp")
    os.close(fd)
    try:
        write_fn(tmp)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _parallel_map(fn, items, threads: int):
    """Order-preserving map, optionally over a thread pool. Results are
    assembled by index, so the reduction is deterministic regardless of
    completion order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _env_overrides():
    out = []
    for key, value in sorted(os.environ.items()):
        if not key.startswith(ENV_PREFIX):
            continue
        rest = key[len(ENV_PREFIX):]
        if rest.upper() in ("THREADS",):
            continue
        out.append(rest.replace("__", ".") + "=" + value)
    return out


def _load_config(args) -> RunConfig:
    if args.config is None:
        raise ConfigError("this command requires --config FILE")
    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"cannot read config {args.config!r}: {e.strerror}") from None
    overrides = _env_overrides() + list(args.set or [])
    if not overrides:
        return parse_config(text)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(
            f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}"
        ) from None
    for assignment in overrides:
        apply_override(raw, assignment)
    return parse_config(json.dumps(raw))


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        _atomic_write(path, text)
        print(f"wrote {path}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_geff(args) -> int:
    config = _load_config(args)
    sec = config.section("geff")
    space, hint = interaction_for(config.system)
    result = effective_coupling(
        space, hint, sec["initial"], sec["final"], order=sec.get("order")
    )
    g = result.value
    lines = [
        f"initial: {sec['initial'].label()}",
        f"final: {sec['final'].label()}",
        f"order: {result.order}",
        f"paths: {len(result.paths)}",
        f"g_eff: {_fmt(g.real)} {'+' if g.imag >= 0 else '-'} {_fmt(abs(g.imag))}j",
        f"|g_eff|: {_fmt(abs(g))}",
        f"2|g_eff|: {_fmt(2 * abs(g))}",
    ]
    if args.explain:
        lines.append("contributions:")
        for p in result.paths:
            lines.append("  " + p.describe(space))
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_spectrum(args) -> int:
    config = _load_config(args)
    sec = config.section("spectrum")
    models = sec.get("models") or [config.system.model]
    stem = args.output or sec.get("output", "spectrum")

    def run_one(model):
        sweep = SweepSpec(
            base=config.system.with_model(model),
            parameter=sec["parameter"],
            lo=sec["lo"],
            hi=sec["hi"],
            points=sec["points"],
            tracked=tuple(sec["tracked"]),
        )
        result = track_levels(sweep)
        path = f"{stem}_{model.value}.csv" if len(models) > 1 else f"{stem}.csv"
        _atomic_writer(lambda tmp: write_sweep_csv(result, tmp), path)
        return path

    for path in _parallel_map(run_one, models, args.threads):
        print(f"wrote {path}")
    return 0


def cmd_evolve(args) -> int:
    config = _load_config(args)
    sec = config.section("evolve")
    spec = EvolutionSpec(
        initial=sec["initial"],
        total_time=sec["total_time"],
        samples=sec["samples"],
        targets=tuple(sec["targets"]),
    )
    space = build_space(config.system)
    h = build_hamiltonian(space)
    trace = evolve(space, h, spec)
    path = args.output or sec.get("output", "trace.csv")
    _atomic_writer(lambda tmp: write_trace_csv(trace, tmp), path)
    print(f"wrote {path}")
    try:
        freq, pmax = extract_oscillation(trace)
        print(f"oscillation_frequency: {_fmt(freq)}")
        print(f"max_population: {_fmt(pmax)}")
    except FlatTraceError:
        print("oscillation_frequency: none (trace is flat)")
    return 0


def cmd_catalog(args) -> int:
    sec = {}
    if args.config is not None:
        config = _load_config(args)
        sec = config.sections.get("catalog", {})
    entries = cat.list_processes(
        category=sec.get("category"),
        table=sec.get("table"),
        degenerate=sec.get("degenerate"),
        model=sec.get("model"),
        distinct_only=sec.get("distinct_only", False),
    )
    blocks = [cat.format_entry(e) for e in entries]
    text = "\n\n".join(blocks) + ("\n" if blocks else "")
    text += f"\ntotal: {len(entries)}\n"
    _emit(text, args.output)
    return 0


def cmd_classical(args) -> int:
    config = _load_config(args)
    sec = config.section("classical")
    tones = [Tone(t["amplitude"], t["frequency"]) for t in sec["tones"]]
    chi = Susceptibilities(
        chi1=sec.get("chi1", 0.0),
        chi2=sec.get("chi2", 0.0),
        chi3=sec.get("chi3", 0.0),
        epsilon0=sec.get("epsilon0", 1.0),
    )
    components = polarization_spectrum(tones, chi)
    path = args.output or sec.get("output")
    if path is None:
        print("frequency,amplitude")
        for f, a in components:
            print(f"{float(f):.17g},{a:.17g}")
    else:
        _atomic_writer(lambda tmp: write_spectrum_csv(components, tmp), path)
        print(f"wrote {path}")
    return 0


def cmd_verify(args) -> int:
    ids = list(args.process or [])
    all_closed = args.all_closed_forms
    if args.config is not None:
        config = _load_config(args)
        sec = config.sections.get("verify", {})
        ids += sec.get("processes") or []
        all_closed = all_closed or sec.get("all_closed_forms", False)
    if all_closed:
        ids += [
            e.id for e in cat.CATALOG
            if e.closed_form is not None and e.id not in ids
        ]
    if not ids:
        raise ConfigError(
            "nothing to verify: give --process, --all-closed-forms or a "
            "'verify' config section"
        )
    entries = [cat.get_process(pid) for pid in ids]

    reports = _parallel_map(cat.verify_entry, entries, args.threads)
    failures = 0
    lines = []
    for report in reports:
        if report.passed:
            rel = report.relative_error
            detail = f" rel={rel:.3g}" if rel is not None else ""
            lines.append(f"PASS {report.entry_id}{detail}")
        else:
            failures += 1
            reason = "; ".join(report.messages) or "check failed"
            lines.append(f"FAIL {report.entry_id}: {reason}")
    lines.append(f"verified {len(reports)} processes, {failures} failures")
    _emit("\n".join(lines) + "\n", args.output)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabimix",
        description="Effective couplings, spectra and dynamics of "
        "qubit-resonator systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", "-c", help="JSON config file")
        p.add_argument(
            "--set", action="append", metavar="PATH=VALUE",
            help="override a config value (repeatable)",
        )
        p.add_argument("--output", "-o", help="output file (default depends on command)")
        p.add_argument(
            "--threads", type=int,
            default=int(os.environ.get(ENV_PREFIX + "THREADS", "1")),
            help="worker threads for independent work items (default 1)",
        )
        p.set_defaults(fn=fn)
        return p

    p = add("geff", cmd_geff, "path-sum effective coupling between two bare states")
    p.add_argument(
        "--explain", action="store_true",
        help="list every contributing transition path",
    )
    add("spectrum", cmd_spectrum, "sweep a parameter and track levels to CSV")
    add("evolve", cmd_evolve, "time-evolve a bare state and record populations")
    add("catalog", cmd_catalog, "list the catalogued mixing processes")
    add("classical", cmd_classical, "classical nonlinear polarization spectrum")
    p = add("verify", cmd_verify, "check catalog entries against the numerics")
    p.add_argument(
        "--process", action="append", metavar="ID", help="process id (repeatable)"
    )
    p.add_argument(
        "--all-closed-forms", action="store_true",
        help="verify every entry that has a registered closed form",
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as e:
        for msg in e.messages:
            print(f"config error: {msg}", file=sys.stderr)
        return 2
    except CapacityError as e:
        print(f"capacity error: {e}", file=sys.stderr)
        return 3
    except RabimixError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
