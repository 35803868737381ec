import sys
from fractions import Fraction

import click

from config import DEBUG_MODE, DEFAULT_C, ORACLE_BUDGET_SECS, SWEEP_WORKERS
from models.errors import BudgetExceeded, ExtractionError, InvalidInput
from models.graph_model import TwoColoring, complement, is_eps_balanced, majority_graph, min_color_edges
from models.witness_model import verify_witness
from services.bounds import validate_params
from services.extractor import extract
from services.generators import GenKind, GenSpec, generate
from services.oracle import max_clique_cpsat, max_clique_exact, max_independent_set_exact
from services.sweep_service import run_sweep
from utils.graph_io import (
    format_coloring,
    format_csv,
    format_graph,
    format_trace,
    format_witness,
    read_coloring,
    read_graph,
    read_instance,
    read_witness,
)
from utils.log_utils import get_logger

logger = get_logger("cli")

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_INPUT = 2
EXIT_UNBALANCED = 3
EXIT_BUDGET = 4


class FractionParam(click.ParamType):
    """Exact rational such as ``1/4`` or ``0.25``."""

    name = "fraction"

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            self.fail(f"{value!r} is not a rational number", param, ctx)


class ListParam(click.ParamType):
    """Comma separated values, each converted with ``cast``."""

    name = "list"

    def __init__(self, cast):
        self.cast = cast

    def convert(self, value, param, ctx):
        if isinstance(value, list):
            return value
        try:
            return [self.cast(item) for item in value.split(",") if item.strip()]
        except ValueError:
            self.fail(f"{value!r} is not a comma separated list of {self.cast.__name__}", param, ctx)


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        try:
            with click.open_file(out, "w", encoding="utf-8") as handle:
                handle.write(text)
        except OSError as exc:
            raise InvalidInput(f"cannot write {out}: {exc.strerror}") from exc


def _as_graph(instance):
    if isinstance(instance, TwoColoring):
        graph, _ = majority_graph(instance)
        return graph
    return instance


def _parse_initial_clique(value):
    if value is None:
        return None
    vertices = ListParam(int).convert(value, None, None)
    if any(v < 1 for v in vertices):
        raise click.BadParameter("vertex indices are 1-based", param_hint="--initial-clique")
    return [v - 1 for v in vertices]


@click.group()
def cli():
    """Certified extraction of cliques and independent sets from dense graphs."""


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Number of vertices.")
@click.option("--m", "m", type=int, default=None, help="Exact edge count of a uniform random graph.")
@click.option("--eps", type=FractionParam(), default=None, help="Coloring whose minority color just misses eps.")
@click.option("--turan-r", type=int, default=None, help="Turán graph with r parts.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tightness-iterations", type=int, default=0, show_default=True,
              help="With --m, hill-climb this many steps towards a small max(clique, independent set).")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def gen(n, m, eps, turan_r, seed, tightness_iterations, out):
    """Write a generated graph or coloring file."""
    chosen = [flag for flag, value in (("--m", m), ("--eps", eps), ("--turan-r", turan_r)) if value is not None]
    if len(chosen) != 1:
        raise click.UsageError("give exactly one of --m, --eps, --turan-r")
    if tightness_iterations and m is None:
        raise click.UsageError("--tightness-iterations needs --m")

    if eps is not None:
        _emit(format_coloring(generate(GenSpec(GenKind.UNBALANCED_COLORING, n, seed=seed, eps=eps))), out)
    elif turan_r is not None:
        _emit(format_graph(generate(GenSpec(GenKind.TURAN_GRAPH, n, r=turan_r))), out)
    elif tightness_iterations:
        graph, hom = generate(GenSpec(GenKind.TIGHTNESS_SEARCH, n, seed=seed, m=m, iterations=tightness_iterations))
        _emit(f"c hom {hom}\n" + format_graph(graph), out)
    else:
        _emit(format_graph(generate(GenSpec(GenKind.RANDOM_EXACT, n, seed=seed, m=m))), out)
    return EXIT_OK


@cli.command()
@click.argument("coloring", type=click.Path(dir_okay=False))
@click.option("--eps", type=FractionParam(), required=True)
def balance(coloring, eps):
    """Exit 0 if every color covers an eps-fraction of the edges, 3 otherwise."""
    c = read_coloring(coloring)
    balanced = is_eps_balanced(c, eps)
    floor = min_color_edges(eps, c.red.pair_count)
    verdict = "balanced" if balanced else "unbalanced"
    click.echo(f"{verdict} red={c.red_count} blue={c.blue_count} min_required={floor}")
    return EXIT_OK if balanced else EXIT_UNBALANCED


@cli.command(name="extract")
@click.argument("instance", type=click.Path(dir_okay=False))
@click.option("--k", "k", type=float, required=True)
@click.option("--C", "c", type=float, default=DEFAULT_C, show_default=True)
@click.option("--initial-clique", default=None, help="Comma separated 1-based vertices seeding the case 3 loop.")
@click.option("--trace", "with_trace", is_flag=True, help="Append the extraction trace as comment lines.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def extract_command(instance, k, c, initial_clique, with_trace, out):
    """Print a certified clique or independent set of the graph (or the majority graph of a coloring)."""
    g = _as_graph(read_instance(instance))
    p = validate_params(g.n, k, c)
    witness, trace = extract(g, p, initial_clique=_parse_initial_clique(initial_clique))
    text = format_witness(witness)
    if with_trace:
        text += format_trace(trace)
    _emit(text, out)
    return EXIT_OK


@cli.command()
@click.argument("instance", type=click.Path(dir_okay=False))
@click.argument("witness", type=click.Path(dir_okay=False))
@click.option("--k", "k", type=float, required=True)
@click.option("--C", "c", type=float, default=DEFAULT_C, show_default=True)
def verify(instance, witness, k, c):
    """Exit 0 if the witness is homogeneous and reaches the target size, 1 otherwise."""
    g = _as_graph(read_instance(instance))
    w = read_witness(witness)
    ok = verify_witness(g, w, validate_params(g.n, k, c))
    click.echo("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_UNVERIFIED


@cli.command()
@click.argument("graph", type=click.Path(dir_okay=False))
@click.option("--stop-at", type=int, default=None)
@click.option("--budget-secs", type=float, default=ORACLE_BUDGET_SECS, show_default=True)
@click.option("--backend", type=click.Choice(["bnb", "cpsat"]), default="bnb", show_default=True)
def oracle(graph, stop_at, budget_secs, backend):
    """Exact clique and independence numbers."""
    g = read_graph(graph)
    if backend == "cpsat":
        if stop_at is not None:
            logger.warning("⚠️ --stop-at is ignored by the cpsat backend")
        clique = max_clique_cpsat(g, time_limit=budget_secs)
        independent = max_clique_cpsat(complement(g), time_limit=budget_secs)
    else:
        clique = max_clique_exact(g, stop_at=stop_at, budget_secs=budget_secs)
        independent = max_independent_set_exact(g, stop_at=stop_at, budget_secs=budget_secs)
    for label, result in (("clique", clique), ("independent_set", independent)):
        vertices = " ".join(str(v + 1) for v in result.witness)
        click.echo(f"{label} {result.best_size} {'exact' if result.exhausted else 'bound'} {vertices}".rstrip())
    return EXIT_OK


@cli.command()
@click.option("--n-list", type=ListParam(int), required=True)
@click.option("--k-list", type=ListParam(float), required=True)
@click.option("--C", "c", type=float, default=DEFAULT_C, show_default=True)
@click.option("--reps", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.option("--workers", type=int, default=SWEEP_WORKERS, show_default=True)
@click.option("--timing/--no-timing", default=True, show_default=True)
def sweep(n_list, k_list, c, reps, seed, out, workers, timing):
    """Extract and verify on seeded random graphs over an (n, k) grid; writes CSV."""
    if reps < 0:
        raise click.BadParameter("must be >= 0", param_hint="--reps")
    rows = run_sweep(n_list, k_list, c, reps, seed, workers=workers, timing=timing)
    _emit(format_csv(rows), out)
    failed = sum(not row.verified for row in rows)
    if failed:
        logger.warning("⚠️ %d of %d sweep rows did not verify", failed, len(rows))
        return EXIT_UNVERIFIED
    return EXIT_OK


def run(argv=None):
    """Run the CLI and return its exit status instead of exiting."""
    try:
        result = cli.main(args=argv, prog_name="homset", standalone_mode=False)
    except click.ClickException as exc:
        click.echo(f"ERROR usage: {exc.format_message()}", err=True)
        return EXIT_INPUT
    except click.Abort:
        click.echo("ERROR aborted: interrupted", err=True)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        click.echo(f"ERROR {exc.code}: {exc}", err=True)
        return EXIT_BUDGET
    except ExtractionError as exc:
        if DEBUG_MODE:
            logger.exception("command failed")
        click.echo(f"ERROR {exc.code}: {exc}", err=True)
        return EXIT_INPUT
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
