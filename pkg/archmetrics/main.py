import csv
import importlib
import logging
import logging.config
import os
import pathlib
import sys
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

import click
from click.core import Context
from rich.console import Console
from rich.table import Table

from archmetrics import __version__, settings
from archmetrics.algebra.propagation import (
    ComplexityMode,
    PowerMerge,
    PropagationConfig,
)
from archmetrics.algebra.summary import CURVE_HEADER, cumulative_curves, global_metrics
from archmetrics.analysis.compare import COMPARE_HEADER, compare_models
from archmetrics.analysis.fitting import (
    XMetric,
    YMetric,
    fit_manifest,
    fit_power_law,
    spearman,
)
from archmetrics.analysis.reports import (
    check_rows,
    dump_json,
    export_csv,
    format_value,
)
from archmetrics.analysis.vc import VC_HEADER, vc_bound, vc_sweep
from archmetrics.errors import ArchMetricsError, FitError, GraphValidationError
from archmetrics.estimators.activations import (
    activation_variance_sweep,
    estimate_activation_power,
)
from archmetrics.estimators.boxfilter import CURVE_HEADER as BOXFILTER_HEADER
from archmetrics.estimators.boxfilter import boxfilter_experiment
from archmetrics.estimators.functions import ELEMENTWISE
from archmetrics.estimators.oracles import (
    activation_power_oracle,
    softmax_power_oracle,
)
from archmetrics.estimators.sampling import Distribution, Statistic
from archmetrics.estimators.softmax import softmax_power_estimate
from archmetrics.graph.models import ActivationFn
from archmetrics.graph.serialization import parse_graph, serialize_graph
from archmetrics.metrics.constants import DEFAULT_CONSTANTS, load_constants
from archmetrics.metrics.local import KernelScope, MetricsConfig
from archmetrics.settings import routing as settings_routing
from archmetrics.strings import translation
from archmetrics.zoo.builders import model_names, resolve_model
from archmetrics.zoo.manifest import MANIFEST_HEADER, load_manifest, zoo_key

logger = logging.getLogger(__name__)

i18n = translation()

SWEEP_HEADER = ("input_var", "output_var")
POINTS_HEADER = ("model", "source", "key", "log2_x", "y")


@dataclass(frozen=True)
class RunOptions:
    """What the top-level flags resolved to; shared with every subcommand."""

    config: PropagationConfig
    seed: int


class ArchMetricsGroup(click.Group):
    """Report our own errors as a message on stderr and a typed exit code."""

    def invoke(self, ctx: Context) -> Any:
        try:
            return super().invoke(ctx)
        except GraphValidationError as e:
            click.echo(i18n["cli"]["validation_failed"], err=True)
            for violation in e.report.violations:
                click.echo(
                    i18n["cli"]["violation_line"].format(
                        code=violation.code, message=violation.message
                    ),
                    err=True,
                )
            ctx.exit(e.exit_code)
        except ArchMetricsError as e:
            click.echo(f"Error: {e}", err=True)
            ctx.exit(e.exit_code)


def _choices(enum: Any) -> click.Choice:
    return click.Choice([member.value for member in enum])


def _write_csv(
    rows: Sequence[Sequence[Any]], header: Sequence[str], out: Optional[str]
) -> None:
    check_rows(rows, header)
    with click.open_file(out or "-", "w", encoding="utf-8") as stream:
        export_csv(rows, header, stream)
    if out:
        logger.info(i18n["cli"]["wrote"].format(what=f"{len(rows)} rows", path=out))


@click.group(
    cls=ArchMetricsGroup,
    context_settings=dict(help_option_names=["-h", "--help", "--halp"]),
)
@click.pass_context
@click.option(
    "--complexity-mode",
    type=_choices(ComplexityMode),
    default=settings.DEFAULT_COMPLEXITY_MODE,
    show_default=True,
    help="Multiply complexities along paths (log2) or add them up.",
)
@click.option(
    "--power-merge",
    type=_choices(PowerMerge),
    default=settings.DEFAULT_POWER_MERGE,
    show_default=True,
    help="How merge nodes combine incoming intrinsic power.",
)
@click.option(
    "--kernel-scope",
    type=_choices(KernelScope),
    default=settings.DEFAULT_KERNEL_SCOPE,
    show_default=True,
    help="Whether a convolution kernel spans the input channels.",
)
@click.option(
    "--constants",
    type=click.Path(exists=True, dir_okay=False),
    default=settings.CONSTANTS_FILE,
    help="JSON file overriding the activation constants.",
)
@click.option(
    "--seed",
    type=click.IntRange(min=0),
    default=settings.DEFAULT_SEED,
    show_default=True,
    help="Seed for every Monte-Carlo estimate.",
)
@click.version_option(version=__version__, prog_name="archmetrics")
def main(
    ctx: Context,
    complexity_mode: str,
    power_merge: str,
    kernel_scope: str,
    constants: Optional[str],
    seed: int,
) -> None:
    """Measure the intrinsic power and complexity of network architectures."""
    logging.config.dictConfig(settings.LOGGING)
    table = load_constants(constants) if constants else DEFAULT_CONSTANTS
    ctx.obj = RunOptions(
        config=PropagationConfig(
            complexity_mode=complexity_mode,
            power_merge=power_merge,
            metrics=MetricsConfig(constants=table, kernel_scope=kernel_scope),
        ),
        seed=seed,
    )


@main.command()
@click.pass_obj
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "-o", "--out", type=click.Path(dir_okay=False), help="Write the curve CSV here."
)
def analyze(options: RunOptions, path: str, out: Optional[str]) -> None:
    """Print the global metrics of a graph file as JSON."""
    with open(path, "r", encoding="utf-8") as f:
        graph = parse_graph(f.read())
    metrics = global_metrics(graph, options.config)
    if out:
        curves = cumulative_curves(graph, options.config)
        _write_csv([row.as_tuple() for row in curves], CURVE_HEADER, out)
    click.echo(dump_json(metrics.to_json()), nl=False)


@main.command()
@click.pass_obj
@click.argument("names", nargs=-1, required=True)
@click.option(
    "-f",
    "--format",
    "output_format",
    type=click.Choice(["csv", "text", "json"]),
    default="csv",
    show_default=True,
)
@click.option(
    "-w",
    "--workers",
    type=click.IntRange(min=1),
    default=settings.WORKERS,
    show_default=True,
    help="Models analyzed at the same time.",
)
def compare(
    options: RunOptions, names: Tuple[str, ...], output_format: str, workers: int
) -> None:
    """Global metrics of zoo models, one row per model in the order given."""
    rows = compare_models(names, options.config, workers)
    if output_format == "json":
        click.echo(dump_json([row.to_json() for row in rows]), nl=False)
    elif output_format == "text":
        table = Table(show_header=True, header_style="bold")
        for column in COMPARE_HEADER:
            table.add_column(column, justify="left" if column == "model" else "right")
        for row in rows:
            table.add_row(
                *(
                    f"{value:.6g}" if isinstance(value, float) else format_value(value)
                    for value in row.as_tuple()
                )
            )
        console = Console(width=120, color_system=None)
        with console.capture() as capture:
            console.print(table)
        click.echo(capture.get(), nl=False)
    else:
        _write_csv([row.as_tuple() for row in rows], COMPARE_HEADER, None)


@main.group()
def zoo() -> None:
    """Reference architectures and their published results."""


@zoo.command("build")
@click.argument("name")
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="Output file.")
def zoo_build(name: str, out: Optional[str]) -> None:
    """Write the JSON graph of a zoo model."""
    graph = resolve_model(name)
    with click.open_file(out or "-", "w", encoding="utf-8") as stream:
        stream.write(serialize_graph(graph))
    if out:
        logger.info(i18n["cli"]["wrote"].format(what=graph.name, path=out))


@zoo.command("list")
def zoo_list() -> None:
    """Names accepted by `zoo build` and `compare`."""
    for name in model_names():
        click.echo(name)


@zoo.command("manifest")
@click.option(
    "--built-only",
    is_flag=True,
    default=False,
    help="Only rows whose name maps onto a zoo builder.",
)
def zoo_manifest(built_only: bool) -> None:
    """Published accuracies and parameter counts as CSV."""
    records = load_manifest()
    if built_only:
        records = tuple(record for record in records if zoo_key(record))
    rows = [
        (r.name, r.family, r.source, r.top1, r.top5, r.params) for r in records
    ]
    _write_csv(rows, MANIFEST_HEADER, None)


@main.group()
def estimate() -> None:
    """Data-driven estimates behind the activation and convolution constants."""


ELEMENTWISE_NAMES = click.Choice([fn.value for fn in ELEMENTWISE])


@estimate.command("activation")
@click.pass_obj
@click.option("--fn", "fn", type=ELEMENTWISE_NAMES, default="relu", show_default=True)
@click.option(
    "--distribution",
    type=_choices(Distribution),
    default=Distribution.STANDARD_NORMAL.value,
    show_default=True,
)
@click.option(
    "--statistic",
    type=_choices(Statistic),
    default=Statistic.STD_RATIO.value,
    show_default=True,
)
@click.option("-n", "--n", "--samples", "n_samples", type=int, help="Sample size.")
@click.option("--replicates", type=click.IntRange(min=1), default=None)
@click.option("-w", "--workers", type=click.IntRange(min=1), default=1)
def estimate_activation(
    options: RunOptions,
    fn: str,
    distribution: str,
    statistic: str,
    n_samples: Optional[int],
    replicates: Optional[int],
    workers: int,
) -> None:
    """Monte-Carlo output/input spread ratio of an activation, as JSON."""
    result = estimate_activation_power(
        ActivationFn(fn),
        distribution=distribution,
        statistic=statistic,
        n_samples=n_samples,
        seed=options.seed,
        replicates=replicates,
        workers=workers,
    )
    document = result.to_json()
    document["fn"] = fn
    document["oracle"] = activation_power_oracle(
        ActivationFn(fn), statistic=statistic, distribution=distribution
    )
    click.echo(dump_json(document), nl=False)


@estimate.command("boxfilter")
@click.pass_obj
@click.option("--len", "vector_len", type=click.IntRange(min=1), default=None)
@click.option("--vectors", "n_vectors", type=click.IntRange(min=1), default=None)
@click.option("--k-max", type=click.IntRange(min=1), default=None)
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="Output file.")
def estimate_boxfilter(
    options: RunOptions,
    vector_len: Optional[int],
    n_vectors: Optional[int],
    k_max: Optional[int],
    out: Optional[str],
) -> None:
    """Variance surviving a mean filter of every width K, as CSV."""
    curve = boxfilter_experiment(vector_len, n_vectors, k_max, seed=options.seed)
    logger.info(f"Reference variance of the first vector: {curve.reference_variance}")
    _write_csv([row.as_tuple() for row in curve.rows], BOXFILTER_HEADER, out)


@estimate.command("softmax")
@click.pass_obj
@click.option("--len", "vector_len", type=int, default=None)
@click.option("--trials", "n_trials", type=int, default=None)
def estimate_softmax(
    options: RunOptions, vector_len: Optional[int], n_trials: Optional[int]
) -> None:
    """Spread ratio of softmax over random normal vectors, as JSON."""
    result = softmax_power_estimate(vector_len, n_trials, seed=options.seed)
    document = result.to_json()
    document["vector_len"] = vector_len or settings.SOFTMAX_VECTOR_LEN
    document["oracle"] = softmax_power_oracle(document["vector_len"])
    click.echo(dump_json(document), nl=False)


@estimate.command("sweep")
@click.pass_obj
@click.option("--fn", "fn", type=ELEMENTWISE_NAMES, default="relu", show_default=True)
@click.option(
    "--distribution",
    type=_choices(Distribution),
    default=Distribution.STANDARD_NORMAL.value,
    show_default=True,
)
@click.option("-n", "--n", "--samples", "n_samples", type=int, help="Sample size.")
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="Output file.")
def estimate_sweep(
    options: RunOptions,
    fn: str,
    distribution: str,
    n_samples: Optional[int],
    out: Optional[str],
) -> None:
    """Output variance of an activation against its input variance, as CSV."""
    rows = activation_variance_sweep(
        ActivationFn(fn),
        distribution=distribution,
        n_samples=n_samples,
        seed=options.seed,
    )
    _write_csv(rows, SWEEP_HEADER, out)


def _read_points(path: str) -> List[Tuple[float, float]]:
    with open(path, "r", newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if not {"x", "y"} <= set(reader.fieldnames or ()):
            raise FitError(i18n["cli"]["points_header"].format(path=path))
        points = []
        for row in reader:
            try:
                points.append((float(row["x"]), float(row["y"])))
            except (TypeError, ValueError) as e:
                raise FitError(
                    i18n["cli"]["points_row"].format(
                        path=path, line=reader.line_num, error=e
                    )
                )
    return points


@main.command()
@click.pass_obj
@click.option(
    "--points",
    type=click.Path(exists=True, dir_okay=False),
    help="CSV with x and y columns; the zoo manifest is used when omitted.",
)
@click.option(
    "--x-metric",
    type=_choices(XMetric),
    default=XMetric.LOG2_GWC.value,
    show_default=True,
)
@click.option(
    "--y-metric", type=_choices(YMetric), default=YMetric.TOP1.value, show_default=True
)
@click.option(
    "-o", "--out", type=click.Path(dir_okay=False), help="Write the fitted points here."
)
@click.option("-w", "--workers", type=click.IntRange(min=1), default=settings.WORKERS)
def fit(
    options: RunOptions,
    points: Optional[str],
    x_metric: str,
    y_metric: str,
    out: Optional[str],
    workers: int,
) -> None:
    """Fit accuracy = a * complexity**b and report it as JSON."""
    if points:
        values = _read_points(points)
        result = fit_power_law(values)
        rho = spearman([x for x, _ in values], [y for _, y in values])
    else:
        result, rho, fitted = fit_manifest(
            x_metric, y_metric, options.config, workers=workers
        )
        if out:
            rows = [(p.model, p.source, p.key, p.log2_x, p.y) for p in fitted]
            _write_csv(rows, POINTS_HEADER, out)
    document = result.to_json()
    document["spearman"] = rho
    click.echo(dump_json(document), nl=False)


@main.command()
@click.pass_obj
@click.option("--weights", type=int, default=None, help="Number of weights W.")
@click.option("--layers", type=int, default=None, help="Number of layers L.")
@click.option(
    "--sweep",
    is_flag=True,
    default=False,
    help="Compare the bound with log2 GCC over a family of square MLPs.",
)
@click.option("-o", "--out", type=click.Path(dir_okay=False), help="Output file.")
def vc(
    options: RunOptions,
    weights: Optional[int],
    layers: Optional[int],
    sweep: bool,
    out: Optional[str],
) -> None:
    """VC-dimension bound W * L * log2(W), alone or against log2 GCC."""
    if sweep:
        rows = vc_sweep(config=options.config)
        _write_csv([row.as_tuple() for row in rows], VC_HEADER, out)
        return
    if weights is None or layers is None:
        raise click.UsageError("--weights and --layers are required without --sweep")
    document = {
        "weights": weights,
        "layers": layers,
        "vc_bound": vc_bound(weights, layers),
    }
    click.echo(dump_json(document), nl=False)


def use_testing_settings() -> None:
    """Route `archmetrics.settings` to the testing environment in place."""
    # settings were already routed when this module was imported
    os.environ["ARCHMETRICS_ENVIRONMENT"] = "testing"
    importlib.reload(settings_routing)
    importlib.reload(settings)


@main.command()
@click.option(
    "-v",
    "--verbose",
    is_flag=True,
    default=False,
    help="Show Pytest output instead of running quietly.",
)
def selfcheck(verbose: bool) -> None:
    """
    Verify the binary passes all tests internally.

    Add any other self-check related code here.
    """
    import pytest

    import archmetrics

    use_testing_settings()
    # -x is 'exit immediately if a test fails'
    # We need to get the path because the file is actually inside the extracted
    # environment maintained by shiv, not physically inside the archive at the
    # time of running.
    args = ["-x", str(pathlib.Path(archmetrics.__file__).parent)]
    if not verbose:
        args.append("-qq")
    # pytest will return an exit code that we can check on the command line
    sys.exit(pytest.main(args))


BANNER = r"""
                    _                    _        _
  __ _ _ __ ___| |__  _ __ ___   ___| |_ _ __(_) ___ ___
 / _` | '__/ __| '_ \| '_ ` _ \ / _ \ __| '__| |/ __/ __|
| (_| | | | (__| | | | | | | | |  __/ |_| |  | | (__\__ \
 \__,_|_|  \___|_| |_|_| |_| |_|\___|\__|_|  |_|\___|___/
"""


@main.command()
def shell() -> None:
    """Create a Python REPL inside the environment."""
    import code

    code.interact(local=globals(), banner=BANNER)


if __name__ == "__main__":
    main()
