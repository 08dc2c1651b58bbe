"""``ghzlu`` command-line tool.

Exit codes: 0 ok / equivalent, 1 input error, 2 not GHZ class,
3 inequivalent, 4 self-test failure.
"""
from __future__ import annotations

import json
import sys
from typing import Optional, Sequence

import click

from . import __version__
from .acceptance import run_all
from .asd import ASDState
from .classify import FamilyLabel, classify, decide_lu_equivalence
from .config import DEFAULT_TOLERANCES, tolerance_scope
from .errors import GhzluError, NotGHZClassError
from .invariants import compute_invariants, rho_iota_transform
from .io import (
    ReportFile,
    StateRecord,
    asd_to_dict,
    dumps_record,
    invariants_to_dict,
    load_records,
    triple_to_dict,
)
from .oracle import brute_force_lu_equivalent, sample_subfamily
from .qstate import three_tangle

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_GHZ = 2
EXIT_INEQUIVALENT = 3
EXIT_SELFTEST = 4


class _Options:
    def __init__(self, json_out: bool, seed: Optional[int]):
        self.json = json_out
        self.seed = seed


def _emit(ctx: click.Context, payload: dict, human: str) -> None:
    click.echo(json.dumps(payload) if ctx.obj.json else human)


def _fmt_asd(d: dict) -> str:
    return "lambda = (" + ", ".join(repr(x) for x in d["lambda"]) + f"), phi = {d['phi']!r}"


def _human_report(r: ReportFile) -> str:
    head = f"{r.name}: " if r.name else ""
    if not r.ghz_class:
        return f"{head}not GHZ class (three-tangle {r.three_tangle!r})\n  ASD: {_fmt_asd(r.asd)}"
    inv = r.invariants
    lines = [
        f"{head}family {r.family}, subfamily {r.subfamily} ({r.label})",
        f"  ASD:           {_fmt_asd(r.asd)}",
        f"  canonical ASD: {_fmt_asd(r.canonical_asd)}",
        f"  gamma = {complex(*inv['gamma'])!r}",
        f"  J1 = {inv['j1']!r}, J4 = {inv['j4']!r}",
        f"  rho = {inv['rho']!r}, iota = {complex(*inv['iota'])!r}",
        f"  |ln rho| = {inv['ln_rho_abs']!r}, measure = {inv['measure']!r}",
        f"  LBPS = {r.lbps}, unique ASD = {r.unique_asd} ({r.uniqueness_modality})",
    ]
    return "\n".join(lines)


def _report(rec: StateRecord) -> tuple[ReportFile, int]:
    asd, _ = rec.resolve()
    try:
        rep = classify(asd)
    except NotGHZClassError:
        return ReportFile.not_ghz(asd, three_tangle(rec.pure_state()), rec.name), EXIT_NOT_GHZ
    return ReportFile.from_classification(asd, rep, rec.name), EXIT_OK


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(__version__, prog_name="ghzlu")
@click.option("--tolerance", type=float, default=1.0, show_default=True, help="Scale every tolerance by this factor.")
@click.option("--seed", type=int, envvar="GHZLU_SEED", default=None, help="Seed for random choices (falls back to GHZLU_SEED).")
@click.option("--json", "json_out", is_flag=True, help="Machine-readable JSON output.")
@click.pass_context
def cli(ctx: click.Context, tolerance: float, seed: Optional[int], json_out: bool):
    """Classify three-qubit GHZ-class states under local unitaries."""
    try:
        tol = DEFAULT_TOLERANCES.scaled(tolerance)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--tolerance") from None
    ctx.obj = _Options(json_out, seed)
    ctx.with_resource(tolerance_scope(tol))


@cli.command("classify")
@click.argument("input", type=click.Path(dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="Write JSON reports here instead of stdout.")
@click.pass_context
def cmd_classify(ctx: click.Context, input: str, out: Optional[str]):
    """Classification report for each state in INPUT."""
    code = EXIT_OK
    reports = []
    for rec in load_records(input):
        rep, rc = _report(rec)
        code = max(code, rc)
        reports.append(rep)
    if out:
        with open(out, "w") as fh:
            for r in reports:
                fh.write(r.to_json() + "\n")
    else:
        for r in reports:
            _emit(ctx, r.to_dict(), _human_report(r))
    return code


def _first_ghz(path: str) -> tuple[StateRecord, ASDState]:
    rec = load_records(path)[0]
    asd, _ = rec.resolve()
    classify(asd)  # raises for non-GHZ input
    return rec, asd


@cli.command("equiv")
@click.argument("a", type=click.Path(dir_okay=False))
@click.argument("b", type=click.Path(dir_okay=False))
@click.option("--oracle", is_flag=True, help="Also run the brute-force search.")
@click.option("--budget", type=click.IntRange(min=1), default=64, show_default=True, help="Random restarts for --oracle.")
@click.pass_context
def cmd_equiv(ctx: click.Context, a: str, b: str, oracle: bool, budget: int):
    """Decide whether the first states of A and B are LU-equivalent."""
    rec_a, asd_a = _first_ghz(a)
    rec_b, asd_b = _first_ghz(b)
    decision = decide_lu_equivalence(asd_a, asd_b)
    payload = {
        "equivalent": decision.equivalent,
        "reason": decision.reason,
        "witness": triple_to_dict(decision.witness) if decision.witness is not None else None,
        "witness_via_oracle": decision.witness_via_oracle,
    }
    lines = [f"{'equivalent' if decision.equivalent else 'inequivalent'}: {decision.reason}"]
    if oracle:
        v = brute_force_lu_equivalent(rec_a.pure_state(), rec_b.pure_state(), budget=budget, seed=ctx.obj.seed or 0)
        payload["oracle"] = {
            "equivalent": v.equivalent,
            "best_fidelity": v.best_fidelity,
            "restarts_used": v.restarts_used,
            "witness": triple_to_dict(v.witness),
        }
        lines.append(
            f"oracle: {'equivalent' if v.equivalent else 'no witness found'} "
            f"(best fidelity {v.best_fidelity!r}, {v.restarts_used} restarts)"
        )
    _emit(ctx, payload, "\n".join(lines))
    return EXIT_OK if decision.equivalent else EXIT_INEQUIVALENT


@cli.command("transform")
@click.argument("input", type=click.Path(dir_okay=False))
def cmd_transform(input: str):
    """Rho-iota partner of each state in INPUT, as state-file records."""
    for rec in load_records(input):
        asd, _ = rec.resolve()
        click.echo(dumps_record(StateRecord(asd=rho_iota_transform(asd), name=rec.name)))
    return EXIT_OK


@cli.command("asd")
@click.argument("input", type=click.Path(dir_okay=False))
@click.pass_context
def cmd_asd(ctx: click.Context, input: str):
    """Schmidt form of each state in INPUT and local unitaries reaching it."""
    from .qstate import LocalUnitaryTriple

    for rec in load_records(input):
        asd, witness = rec.resolve()
        witness = witness if witness is not None else LocalUnitaryTriple.identity()
        d = asd_to_dict(asd)
        payload = {"asd": d, "witness": triple_to_dict(witness)}
        if rec.name is not None:
            payload["name"] = rec.name
        human = [_fmt_asd(d)] + [f"  U_{k} = {u.round(15).tolist()!r}" for k, u in zip("ABC", witness)]
        _emit(ctx, payload, "\n".join(human))
    return EXIT_OK


@cli.command("invariants")
@click.argument("input", type=click.Path(dir_okay=False))
@click.pass_context
def cmd_invariants(ctx: click.Context, input: str):
    """LU invariants of each state in INPUT."""
    for rec in load_records(input):
        asd, _ = rec.resolve()
        d = invariants_to_dict(compute_invariants(asd))
        human = ", ".join(f"{k} = {complex(*v)!r}" if isinstance(v, list) else f"{k} = {v!r}" for k, v in d.items())
        _emit(ctx, d, human)
    return EXIT_OK


@cli.command("sample")
@click.option("--family", "label", required=True, help="Subfamily label such as P1' or C4''.")
@click.option("--count", type=click.IntRange(min=0), default=1, show_default=True)
@click.option("--seed", type=int, default=None, help="Overrides the global seed.")
@click.pass_context
def cmd_sample(ctx: click.Context, label: str, count: int, seed: Optional[int]):
    """Random members of a subfamily, one state-file record per line."""
    import numpy as np

    try:
        parsed = FamilyLabel.parse(label)
    except ValueError as exc:
        raise click.BadParameter(str(exc), param_hint="--family") from None
    seed = seed if seed is not None else (ctx.obj.seed or 0)
    rng = np.random.default_rng(seed)
    for i in range(count):
        asd = sample_subfamily(parsed, rng)
        click.echo(dumps_record(StateRecord(asd=asd, name=f"{parsed}#{i}")))
    return EXIT_OK


@cli.command("selftest")
@click.option("--quick/--full", default=True, show_default=True, help="Reduced or full sample counts.")
@click.option("--only", type=click.IntRange(1, 10), multiple=True, help="Run only these criteria.")
@click.pass_context
def cmd_selftest(ctx: click.Context, quick: bool, only: tuple[int, ...]):
    """Run the acceptance criteria."""
    results = run_all(quick=quick, only=list(only) or None)
    if ctx.obj.json:
        click.echo(json.dumps([r.__dict__ for r in results]))
    else:
        for r in results:
            click.echo(r.line())
    failed = [f"{r.number} ({r.name})" for r in results if not r.passed]
    if failed:
        click.echo(f"failed criteria: {', '.join(failed)}", err=True)
        return EXIT_SELFTEST
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code instead of exiting."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="ghzlu", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_INPUT
    except NotGHZClassError as exc:
        click.echo(f"error: not GHZ class: {exc}", err=True)
        return EXIT_NOT_GHZ
    except (GhzluError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT
    return rv if isinstance(rv, int) else EXIT_OK


def run() -> None:
    sys.exit(main())
