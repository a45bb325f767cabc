import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import click
from pydantic import ValidationError

from app.config import settings
from app.core.errors import RandomModeExhausted
from app.schemas import SUITE_NAMES, CliConfigFile, Report, SuiteConfig
from app.suites import SUITES
from app.suites.runner import UnknownMutation

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURES = 1
EXIT_INTERNAL = 3


# ----------------------------
# Report output
# ----------------------------
def text_line(report: Report) -> str:
    (key, value), = report.window.items()
    verdict = "PASS" if report.passed else "FAIL"
    return (
        f"{report.suite} n={report.n} {key}={value} {report.mode}: "
        f"{verdict} ({report.instances} instances, {report.elapsed_ms} ms)"
    )


def emit_report(reports: List[Report], fmt: str = "text", dest: Optional[str] = None):
    """Write reports to stdout in the chosen format and, with dest, as JSON to a file."""
    payload = [json.loads(r.to_json()) for r in reports]
    document = payload[0] if len(payload) == 1 else payload
    if fmt == "json":
        click.echo(json.dumps(document, indent=2))
    else:
        for report in reports:
            click.echo(text_line(report))
            for failure in report.failures:
                click.echo(f"  {failure.family} {json.dumps(failure.params, sort_keys=True)}: {failure.residual}")
            for note in report.diagnostics:
                click.echo(f"  note: {note}")
    if dest:
        Path(dest).write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


# ----------------------------
# Configuration
# ----------------------------
def _load_config_file(path: Optional[str]) -> CliConfigFile:
    if path is None:
        return CliConfigFile()
    try:
        return CliConfigFile.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as exc:
        raise click.UsageError(f"invalid config file {path}: {exc}")


def _parse_specialize(items) -> dict:
    values = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise click.UsageError(f"--specialize expects NAME=VALUE, got '{item}'")
        try:
            values[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise click.UsageError(f"--specialize value '{value}' is not a rational number")
    return values


def _pick(flag, file_value, default):
    if flag is not None:
        return flag
    if file_value is not None:
        return file_value
    return default


# ----------------------------
# Commands
# ----------------------------
@click.group()
@click.version_option(settings.PROJECT_VERSION, prog_name=settings.PROJECT_NAME)
def cli():
    """Verify the classical limits of quantum toroidal algebras and affine Yangians."""
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.argument("suite_name", required=False, type=click.Choice(list(SUITE_NAMES) + ["all"]))
@click.option("--n", "n", type=click.IntRange(min=1), help="Matrix size / rank parameter.")
@click.option("--window", type=click.IntRange(min=0), help="Index window K (toroidal side) or R (Yangian side).")
@click.option("--mode", type=click.Choice(["exact", "random"]), help="Exact symbolic or randomized evaluation.")
@click.option("--seed", type=int, help="Seed for random mode.")
@click.option("--points", type=click.IntRange(min=1), help="Random points per identity.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the JSON report here.")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="JSON config file.")
@click.option("--jobs", type=click.IntRange(min=1), help="Worker processes.")
@click.option("--mutation", help="Run a suite against one of its documented mutations.")
@click.option("--specialize", multiple=True, help="Fix a parameter, e.g. a1=1.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
def verify(suite_name, n, window, mode, seed, points, out, config_path, jobs, mutation, specialize, fmt):
    """Run SUITE (or all suites) and report."""
    file_cfg = _load_config_file(config_path)
    names = [suite_name] if suite_name else (file_cfg.suites or [])
    if not names:
        raise click.UsageError("name a suite or list suites in the config file")
    if "all" in names:
        names = list(SUITE_NAMES)
    n = _pick(n, file_cfg.n, None)
    if n is None:
        raise click.UsageError("--n is required")

    try:
        cfg = SuiteConfig(
            n=n,
            window=_pick(window, file_cfg.window, settings.VERIFY_WINDOW),
            mode=_pick(mode, file_cfg.mode, "exact"),
            seed=_pick(seed, file_cfg.seed, None),
            points=_pick(points, file_cfg.points, settings.VERIFY_RANDOM_POINTS),
            jobs=_pick(jobs, file_cfg.jobs, settings.VERIFY_JOBS),
            mutation=mutation,
            specialize=_parse_specialize(specialize),
        )
    except ValidationError as exc:
        raise click.UsageError(str(exc))

    reports = []
    try:
        for name in names:
            reports.append(SUITES[name].run(cfg))
    except UnknownMutation as exc:
        raise click.UsageError(str(exc))
    except RandomModeExhausted as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    except Exception as exc:
        logger.exception("suite run crashed")
        click.echo(f"internal error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)

    try:
        emit_report(reports, fmt, _pick(out, file_cfg.out, None))
    except OSError as exc:
        click.echo(f"cannot write report: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    sys.exit(EXIT_PASS if all(r.passed for r in reports) else EXIT_FAILURES)


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on argv and return the exit code instead of exiting."""
    try:
        cli.main(args=argv, prog_name="verify", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INTERNAL
    return EXIT_PASS


if __name__ == "__main__":
    cli()
