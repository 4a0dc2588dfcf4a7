import logging
import sys
from collections.abc import Callable

import click
from pydantic import ValidationError

from quantum_clifford.exceptions import QuantumCliffordError
from quantum_clifford.models.config import RunConfig
from quantum_clifford.models.documents import ReportDocument
from quantum_clifford.reports import run
from quantum_clifford.utils.helpers import canonical_json, format_error_message, to_csv, to_pretty

logger = logging.getLogger(__name__)

MAX_MESSAGE_LENGTH = 500
LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def render_report(report: ReportDocument, output_format: str) -> str:
    """The report as canonical JSON, CSV (results table or audit list) or indented text."""
    payload = report.payload()
    if output_format == "csv":
        table = payload["results"].get("table")
        if table:
            return to_csv(table["header"], table["rows"])
        rows = [[v["name"], v["passed"], v["detail"] or ""] for v in payload["verifications"]]
        return to_csv(["name", "passed", "detail"], rows)
    if output_format == "pretty":
        return to_pretty(payload)
    return canonical_json(payload, indent=2)


def failure_record(error: Exception) -> dict:
    """Machine-readable record of a failed run."""
    if isinstance(error, QuantumCliffordError):
        record = error.to_record()
    elif isinstance(error, click.BadParameter):
        name = error.param.name if error.param is not None else "option"
        record = {
            "status": "failed",
            "invariant": "config",
            "inputs": {name: error.param_hint or name},
            "message": error.format_message(),
        }
    else:
        record = {
            "status": "failed",
            "invariant": "config",
            "inputs": {
                ".".join(map(str, e["loc"])): str(e.get("input")) for e in error.errors()
            },
            "message": str(error),
        }
    record["message"] = format_error_message(record["message"], MAX_MESSAGE_LENGTH)
    return record


def execute(command: str, build_config: Callable[[], RunConfig]) -> None:
    """Validate the config, build the report, print it and exit with its status."""
    try:
        config = build_config()
        report = run(command, config)
    except (QuantumCliffordError, ValidationError) as e:
        click.echo(canonical_json(failure_record(e), indent=2))
        sys.exit(1)
    click.echo(render_report(report, config.output_format))
    sys.exit(0 if report.passed else 1)


class ReportCommand(click.Command):
    """Command whose option errors are reported as config failure records."""

    def parse_args(self, ctx: click.Context, args: list[str]) -> list[str]:
        try:
            return super().parse_args(ctx, args)
        except click.BadParameter as e:
            click.echo(canonical_json(failure_record(e), indent=2))
            ctx.exit(1)


def config_options(required: bool = True):
    """Options shared by every subcommand."""

    def decorate(func):
        options = [
            click.option(
                "--type",
                "-t",
                "root_type",
                required=required,
                default=None if required else "A",
                help="Cartan type A-G",
            ),
            click.option(
                "--rank", "-r", type=int, required=required, default=None if required else 2
            ),
            click.option("--s", "node", type=int, default=None, help="Cominuscule node (1-based)"),
            click.option("--weight", "-w", default=None, help="Highest weight, e.g. 1,0"),
            click.option("--denominator", type=int, default=None, help="D with u = q^(1/D)"),
            click.option(
                "--degree", "-d", type=int, default=4, show_default=True, help="Degree cutoff"
            ),
            click.option("--max-tensor-dim", type=int, default=20000, show_default=True),
            click.option(
                "--probe-degree", type=click.Choice(["1", "2"]), default="2", show_default=True
            ),
            click.option(
                "--star-preset",
                type=click.Choice(["standard", "rescaled"]),
                default="standard",
                show_default=True,
            ),
            click.option(
                "--q0", type=float, multiple=True, help="Parameter value for numeric sweeps"
            ),
            click.option(
                "--format",
                "output_format",
                type=click.Choice(["json", "csv", "pretty"]),
                default="json",
                show_default=True,
            ),
            click.option("--cache-dir", type=click.Path(file_okay=False), default=None),
            click.option("--no-cache", is_flag=True, help="Neither read nor write the cache"),
        ]
        for option in reversed(options):
            func = option(func)
        return func

    return decorate


def _config_factory(options: dict) -> Callable[[], RunConfig]:
    options = dict(options)
    options["probe_degree"] = int(options["probe_degree"])
    return lambda: RunConfig.from_cli_options(**options)


@click.group()
@click.option("--verbose", "-v", count=True, help="-v for progress, -vv for linear algebra details")
def cli(verbose: int) -> None:
    """Exact computations with quantum groups, quantum Clifford algebras and Dirac elements."""
    logging.basicConfig(
        level=LOG_LEVELS[min(verbose, len(LOG_LEVELS) - 1)],
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _register(name: str, summary: str) -> None:
    @cli.command(name=name, help=summary, cls=ReportCommand)
    @config_options()
    def command(**options) -> None:
        execute(name, _config_factory(options))


_register("roots", "Cartan data, positive roots and the longest word.")
_register("cominuscule", "Cominuscule nodes with their radical roots.")
_register("rep", "The simple module V(lambda) with its generator matrices.")
_register("braiding", "Braiding and commutor on V (x) V.")
_register("qsym", "Rewriting relations of S_q(V) and Lambda_q(V).")
_register("hilbert", "Graded dimensions of S_q(V) and Lambda_q(V).")
_register("flatness", "Flatness of S_q(V) and Lambda_q(V).")
_register("collapse3", "Degree-3 Grothendieck comparison of S_q(V) and Lambda_q(V).")
_register("clifford", "Exterior algebras of u_+ and u_-, the gamma maps and the star structure.")
_register("dirac", "The Koszul boundary and the Dolbeault-Dirac element on W (x) Lambda_q(u_+).")


@cli.command(name="report", cls=ReportCommand)
@click.argument("suite", type=click.Choice(["examples", "paper-examples"]))
@config_options(required=False)
def report_command(suite: str, **options) -> None:
    """Regenerate the reference examples with all their identities."""
    logger.debug("running the %s suite", suite)
    execute("report", _config_factory(options))


if __name__ == "__main__":
    cli()
