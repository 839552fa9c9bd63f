"""
workprobe CLI - measure and verify work characteristic functions.

Commands:
    workprobe sweep  --preset fig2c --out chi.csv    - χ(u) readout over the u-grid
    workprobe verify --preset fig2c                  - fluctuation-relation checks
    workprobe pw     --config run.json --out pw.csv  - two-point work distribution
    workprobe presets                                - List named scenarios
    workprobe version                                - Show version
"""

import functools
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Tuple

import click

from workprobe.checks import CHECKS, CheckContext, build_checks
from workprobe.cli.output import sweep_rows, write_chi_csv, write_report, write_work_csv
from workprobe.config import PRESETS, ConfigError, RunConfig, get_preset, load_config
from workprobe.core.verifier import Verifier
from workprobe.logging import get_probe_logger, reset_logging, setup_logging
from workprobe.protocol.runner import Protocol, Variant
from workprobe.work.process import forward_process
from workprobe.work.stats import tpm_distribution

logger = get_probe_logger(__name__)

DEFAULT_CHI_OUT = "chi.csv"
DEFAULT_PW_OUT = "pw.csv"


@click.group(invoke_without_command=True)
@click.option('--debug', is_flag=True, help='Enable debug logging')
@click.option('--quiet', is_flag=True, help='Suppress non-error output')
@click.pass_context
def cli(ctx, debug, quiet):
    """workprobe - interferometric work statistics of a driven oscillator."""
    reset_logging()
    if debug:
        setup_logging(level="DEBUG")
    elif quiet:
        setup_logging(level="ERROR", show_time=False)
    else:
        setup_logging(level="INFO", show_time=False)

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


def run_options(f):
    """Options shared by sweep, verify and pw."""

    @click.option('--config', 'config_file', type=click.Path(exists=True, dir_okay=False),
                  help='JSON run configuration')
    @click.option('--preset', help=f"Named scenario ({', '.join(PRESETS)})")
    @click.option('--out', 'out', type=click.Path(dir_okay=False), help='Output file')
    @click.option('--cutoff', type=int, help='Override the Fock cutoff N')
    @click.option('--variant', type=click.Choice([v.value for v in Variant]),
                  help='Override the protocol variant')
    @click.option('--workers', type=int, help='Threads for u-grid sweeps')
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        return f(*args, **kwargs)

    return wrapper


def _resolve_config(
    config_file: Optional[str],
    preset: Optional[str],
    out: Optional[str],
    cutoff: Optional[int],
    variant: Optional[str],
    workers: Optional[int],
) -> RunConfig:
    """Load the config or preset and apply overrides; exits on config errors."""
    if config_file and preset:
        raise click.UsageError("Use either --config or --preset, not both")
    if not config_file and not preset:
        raise click.UsageError("Provide --config <path> or --preset <name>")

    try:
        config = load_config(config_file) if config_file else get_preset(preset).run_config()
        config = config.with_overrides(
            cutoff=cutoff,
            variant=Variant(variant) if variant else None,
            output_path=Path(out) if out else None,
        )
        if workers is not None:
            config = replace(config, workers=workers)
    except ConfigError as e:
        click.secho(f"Error loading config: {e}", fg="red", err=True)
        sys.exit(1)

    logger.debug(
        f"Scenario: N={config.scenario.cutoff}, β={config.scenario.beta:.6g}, "
        f"τ={config.scenario.tau}, variant={config.variant.value}"
    )
    return config


@cli.command()
@run_options
def sweep(config_file, preset, out, cutoff, variant, workers):
    """
    Run the interferometer over the u-grid and write χ(u) as CSV.

    Columns: u, omega_u, re_chi, im_chi, re_chi_damped, im_chi_damped, abs_chi.

    Example:
        workprobe sweep --preset fig2c --out chi.csv
        workprobe sweep --config run.json --cutoff 96 --variant general
    """
    config = _resolve_config(config_file, preset, out, cutoff, variant, workers)
    grid = config.scenario.u_grid
    if not grid:
        raise click.UsageError("The scenario's u_grid is empty; nothing to sweep")
    path = config.output_path or Path(DEFAULT_CHI_OUT)
    logger.info(
        f"Sweeping {len(grid)} u-values with the {config.variant.value} variant "
        f"(N={config.scenario.cutoff}, workers={config.workers})"
    )

    try:
        undamped = Protocol(config.scenario, config.variant)
        damped = Protocol(
            config.scenario, config.variant, dephasing=config.dephasing, process=undamped.process
        )
        rows = sweep_rows(
            config.scenario.omega,
            undamped.sweep(grid, workers=config.workers),
            damped.sweep(grid, workers=config.workers),
        )
    except (ValueError, RuntimeError) as e:
        click.secho(f"Error: {e}", fg="red", err=True)
        sys.exit(1)

    write_chi_csv(path, rows)
    logger.success(f"Wrote {len(rows)} rows to {path}")


@cli.command()
@run_options
@click.option('--report', 'report', type=click.Path(dir_okay=False),
              help='Write the JSON report here (default: print to stdout)')
@click.option('--check', 'only', multiple=True, type=click.Choice(list(CHECKS)),
              help='Run only this check (repeatable)')
@click.option('--steps', type=int, help='Override the stepped-propagator step count')
def verify(config_file, preset, out, cutoff, variant, workers,
           report: Optional[str], only: Tuple[str, ...], steps: Optional[int]):
    """
    Verify fluctuation relations and numerical routes.

    Exits non-zero iff any check fails. The JSON report goes to --report
    (or its alias --out), else to report_path from the config, else to stdout.

    Example:
        workprobe verify --preset fig2c
        workprobe verify --preset fig2c --cutoff 4 --check cutoff_doubling
    """
    if report and out:
        raise click.UsageError("Use either --report or --out, not both")
    config = _resolve_config(config_file, preset, out, cutoff, variant, workers)
    names = only or config.checks

    context = CheckContext(
        scenario=config.scenario,
        variant=config.variant,
        propagator_steps=steps or config.propagator_steps,
        workers=config.workers,
        dephasing=config.dephasing,
    )
    verifier = Verifier()
    for check in build_checks(names):
        verifier.add(check)

    logger.info(f"Running {len(verifier.checks)} check(s)")
    result = verifier.verify(context)

    for outcome in result.results.values():
        logger.check_result(
            outcome.name, outcome.residual, outcome.tolerance, outcome.passed, outcome.duration
        )
    for name, error in result.errors.items():
        click.secho(f"  ! {name}: {type(error).__name__}: {error}", fg="red", err=True)

    report_path = report or out or config.report_path
    if report_path:
        write_report(report_path, result, config.to_dict())
        click.echo(f"\nReport written to {report_path}", err=True)
    else:
        click.echo(json.dumps(result.to_dict(), indent=2))

    if not result.passed:
        click.secho(f"\n{result.failed_count} check(s) failed ({result.duration:.2f}s)", fg="red", err=True)
        sys.exit(1)

    click.secho(f"\nAll checks passed ({result.duration:.2f}s)", fg="green", err=True)


@cli.command()
@run_options
def pw(config_file, preset, out, cutoff, variant, workers):
    """
    Write the two-point-measurement work distribution as CSV (W,probability).

    Example:
        workprobe pw --preset fig2c --out pw.csv
    """
    config = _resolve_config(config_file, preset, out, cutoff, variant, workers)
    path = config.output_path or Path(DEFAULT_PW_OUT)

    try:
        process = forward_process(config.scenario)
        dist = tpm_distribution(
            process.initial_spectrum, process.final_spectrum, process.unitary, process.rho0
        )
        write_work_csv(path, dist)
    except (ValueError, RuntimeError) as e:
        click.secho(f"Error: {e}", fg="red", err=True)
        sys.exit(1)

    logger.success(f"Wrote {len(dist)} work values to {path}")


@cli.command()
@click.option('--show', 'show', type=click.Choice(list(PRESETS)),
              help='Print the preset as a JSON run configuration')
def presets(show: Optional[str]):
    """List named scenarios."""
    if show:
        click.echo(json.dumps(PRESETS[show].run_config().to_dict(), indent=2))
        return

    for preset in PRESETS.values():
        click.echo(f"  {preset.name:<10} {preset.description}  [variant: {preset.variant.value}]")


@cli.command()
def version():
    """Show workprobe version."""
    from workprobe import __version__
    click.echo(f"workprobe version {__version__}")


def main():
    """Entry point for CLI."""
    cli()


if __name__ == "__main__":
    main()
