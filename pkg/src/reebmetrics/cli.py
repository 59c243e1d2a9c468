"""Command-line interface.

Subcommands operate on graph/diagram text files and print exact rational
values. `experiment` runs the named verification suites and exits nonzero
when any assertion fails.
"""

from __future__ import annotations

import sys
from pathlib import Path
from typing import Optional

import click

from . import __version__
from .bottleneck import bottleneck
from .diagram import Diagram
from .distortion import (
    best_structure_shift,
    certify_fd_upper,
    fd_lower,
    projection_correspondence,
)
from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment
from .fileio import (
    diagram_to_text,
    graph_to_json,
    graph_to_text,
    load_graph_or_diagram,
    parse_graph_text,
)
from .generators import generate
from .graph import ReebGraph, canonicalize, critical_values, stats, validate
from .isomorphism import level_isomorphism
from .operators import MergeParams, TransformParams, full_transform, merge, simplify
from .paths import GraphPath, intrinsic_upper, path_length
from .persistence import extended_diagram
from .rationals import format_value, parse_value


def _read(path: str) -> str:
    return Path(path).read_text()


def _load_graph(path: str) -> ReebGraph:
    obj = load_graph_or_diagram(_read(path))
    if not isinstance(obj, ReebGraph):
        raise click.ClickException(f"{path} is a diagram, expected a graph")
    return obj


def _load_any(path: str):
    return load_graph_or_diagram(_read(path))


def _as_diagram(obj) -> Diagram:
    if isinstance(obj, Diagram):
        return obj
    return extended_diagram(obj)


def _emit_graph(g: ReebGraph, output: Optional[str], as_json: bool = False) -> None:
    text = graph_to_json(g) if as_json else graph_to_text(g)
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(version=__version__, prog_name="reeb")
def main() -> None:
    """Reeb graph metrics: diagrams, distances, operators, experiments."""


@main.command()
@click.argument("path")
def diagram(path: str) -> None:
    """Print the extended persistence diagram of a graph file."""
    g = _load_graph(path)
    click.echo(diagram_to_text(extended_diagram(g)), nl=False)


@main.command(name="bottleneck")
@click.argument("file_a")
@click.argument("file_b")
@click.option("--witness", is_flag=True, help="also print the optimal matching")
def bottleneck_cmd(file_a: str, file_b: str, witness: bool) -> None:
    """Exact bottleneck distance between two graph or diagram files."""
    d1 = _as_diagram(_load_any(file_a))
    d2 = _as_diagram(_load_any(file_b))
    result = bottleneck(d1, d2)
    click.echo(format_value(result.value))
    if witness:
        for i, j in result.witness.pairs:
            click.echo(f"match {d1.points[i]} -- {d2.points[j]}")
        for i in result.witness.unmatched_left:
            click.echo(f"diagonal left {d1.points[i]}")
        for j in result.witness.unmatched_right:
            click.echo(f"diagonal right {d2.points[j]}")


def _diagram_delta(before: Diagram, after: Diagram) -> str:
    gone = [p for p in before.points if p not in after.points]
    new = [p for p in after.points if p not in before.points]
    lines = [f"- {p}" for p in gone] + [f"+ {p}" for p in new]
    return "\n".join(lines) if lines else "(diagram unchanged)"


@main.command(name="merge")
@click.argument("path")
@click.argument("a")
@click.argument("b")
@click.option("-o", "--output", default=None, help="write the merged graph here")
def merge_cmd(path: str, a: str, b: str, output: Optional[str]) -> None:
    """Contract the band [a, b] of a graph."""
    g = _load_graph(path)
    merged = merge(g, MergeParams(parse_value(a), parse_value(b)))
    _emit_graph(merged, output)
    click.echo("# diagram delta")
    click.echo(_diagram_delta(extended_diagram(g), extended_diagram(merged)))


@main.command(name="simplify")
@click.argument("path")
@click.argument("alpha")
@click.option("-o", "--output", default=None, help="write the simplified graph here")
def simplify_cmd(path: str, alpha: str, output: Optional[str]) -> None:
    """Remove all diagram points within alpha/2 of the diagonal."""
    g = _load_graph(path)
    result = simplify(g, parse_value(alpha))
    _emit_graph(result.graph, output)
    click.echo(f"# distortion certificate {format_value(result.certificate)}")
    click.echo("# diagram delta")
    click.echo(_diagram_delta(extended_diagram(g), extended_diagram(result.graph)))


@main.command(name="transform")
@click.argument("path")
@click.option("--anchors", required=True, help="graph file providing the anchor critical values")
@click.option("--alpha", required=True, help="transform scale")
@click.option("-o", "--output", default=None)
def transform_cmd(path: str, anchors: str, alpha: str, output: Optional[str]) -> None:
    """Apply the full transform: simplify at 2*alpha, merge 9*alpha anchor bands."""
    g = _load_graph(path)
    anchor_graph = _load_graph(anchors)
    params = TransformParams(parse_value(alpha), critical_values(anchor_graph))
    result = full_transform(g, params)
    _emit_graph(result.graph, output)
    click.echo(f"# distortion certificate {format_value(result.certificate)}")
    click.echo("# diagram delta")
    click.echo(_diagram_delta(extended_diagram(g), extended_diagram(result.graph)))


@main.command(name="iso")
@click.argument("file_a")
@click.argument("file_b")
def iso_cmd(file_a: str, file_b: str) -> None:
    """Level-preserving isomorphism test; exit 0 iff isomorphic."""
    g1, g2 = _load_graph(file_a), _load_graph(file_b)
    mapping = level_isomorphism(g1, g2)
    if mapping is None:
        click.echo("not isomorphic")
        sys.exit(1)
    click.echo("isomorphic")
    for v, w in sorted(mapping.items()):
        click.echo(f"{v} -> {w}")


@main.command(name="fdbound")
@click.argument("file_a")
@click.argument("file_b")
@click.option(
    "--witness",
    type=click.Choice(["natural", "collapse", "file"]),
    default="natural",
    show_default=True,
)
@click.option("--witness-file", default=None, help="correspondence JSON (witness=file)")
def fdbound_cmd(file_a: str, file_b: str, witness: str, witness_file: Optional[str]) -> None:
    """Certified lower/upper bounds on the functional distortion distance."""
    from .fileio import correspondence_from_json

    g1, g2 = _load_graph(file_a), _load_graph(file_b)
    lower = fd_lower(g1, g2)
    source = witness
    if witness == "natural":
        upper = best_structure_shift(g1, g2)
        if upper is None:
            upper = intrinsic_upper(g1, g2)
            source = "contraction-join"
    elif witness == "collapse":
        if len(g2.vertex_ids) <= 2:
            cert = certify_fd_upper(g1, g2, projection_correspondence(g1, g2))
        elif len(g1.vertex_ids) <= 2:
            cert = certify_fd_upper(g2, g1, projection_correspondence(g2, g1))
        else:
            raise click.ClickException(
                "the collapse witness needs a segment on one side"
            )
        upper = cert.upper
    else:
        if witness_file is None:
            raise click.ClickException("--witness file needs --witness-file <path>")
        c = correspondence_from_json(g1, g2, _read(witness_file))
        cert = certify_fd_upper(g1, g2, c)
        upper = cert.upper
    click.echo(f"lower {format_value(lower)}")
    click.echo(f"upper {format_value(upper)} ({source})")


@main.command(name="pathlen")
@click.argument("manifest")
@click.option("--metric", type=click.Choice(["db", "fd"]), default="db", show_default=True)
def pathlen_cmd(manifest: str, metric: str) -> None:
    """Length of a discretized path; manifest lines: '<t> <graph-file>'."""
    steps = []
    base = Path(manifest).parent
    for lineno, raw in enumerate(Path(manifest).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(maxsplit=1)
        if len(parts) != 2:
            raise click.ClickException(f"manifest line {lineno}: expected '<t> <file>'")
        t = parse_value(parts[0])
        g = parse_graph_text(_read(str(base / parts[1])), name=parts[1])
        steps.append((t, g))
    if len(steps) < 2:
        raise click.ClickException("manifest needs at least two steps")

    from .distortion import FDBoundCertificate

    certs = []
    for (t0, a), (t1, b) in zip(steps, steps[1:]):
        upper = best_structure_shift(a, b)
        if upper is None:
            upper = intrinsic_upper(a, b)
        certs.append(
            FDBoundCertificate(fd_lower(a, b), upper, "manifest step", "bottleneck")
        )
    path = GraphPath(tuple(steps), tuple(certs))
    result = path_length(path, "bottleneck" if metric == "db" else "fd_upper")
    for k, value in enumerate(result.per_step):
        click.echo(f"step {k}: {format_value(value)}")
    click.echo(f"total {format_value(result.total)}")


@main.command(name="intrinsic")
@click.argument("file_a")
@click.argument("file_b")
def intrinsic_cmd(file_a: str, file_b: str) -> None:
    """Certified upper bound on the intrinsic distortion metric."""
    g1, g2 = _load_graph(file_a), _load_graph(file_b)
    click.echo(f"upper bound {format_value(intrinsic_upper(g1, g2))}")


@main.command(name="gen")
@click.argument("spec")
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--n", type=int, default=None, help="figure5 index / random critical count")
@click.option("-o", "--output", default=None)
@click.option("--json", "as_json", is_flag=True, help="emit the structured object format")
def gen_cmd(spec: str, seed: int, n: Optional[int], output: Optional[str], as_json: bool) -> None:
    """Generate a built-in or random graph (segment, cycle, Y, figure1_left,
    figure1_right, figure5, random)."""
    kwargs = {}
    if spec == "figure5":
        kwargs["n"] = n if n is not None else 3
    elif spec == "random":
        kwargs["seed"] = seed
        if n is not None:
            kwargs["n_critical"] = n
    g = generate(spec, **kwargs)
    _emit_graph(g, output, as_json)


@main.command(name="stats")
@click.argument("path")
def stats_cmd(path: str) -> None:
    """|V|, |E|, first Betti number, critical values, minimal gap."""
    g = _load_graph(path)
    info = stats(g)
    click.echo(f"vertices {info.vertices}")
    click.echo(f"edges {info.edges}")
    click.echo(f"betti1 {info.betti1}")
    click.echo(
        "critical_values " + " ".join(format_value(v) for v in info.critical_values)
    )
    if info.min_gap is not None:
        click.echo(f"min_gap {format_value(info.min_gap)}")


@main.command(name="convert")
@click.argument("path")
@click.option("--to", "target", type=click.Choice(["text", "json", "canonical"]), default="text")
@click.option("-o", "--output", default=None)
def convert_cmd(path: str, target: str, output: Optional[str]) -> None:
    """Re-emit a graph file (text, json, or canonicalized text)."""
    g = _load_graph(path)
    if target == "canonical":
        g = canonicalize(g)
        target = "text"
    _emit_graph(g, output, as_json=(target == "json"))


@main.command(name="validate")
@click.argument("path")
def validate_cmd(path: str) -> None:
    """Check the graph invariants; exit 0 iff valid."""
    g = _load_graph(path)
    report = validate(g)
    click.echo(str(report))
    if not report.ok:
        sys.exit(1)


@main.command(name="experiment")
@click.argument("name")
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--trials", type=int, default=None, help="override the trial count")
@click.option("--K", "k_value", default="1/22", show_default=True)
@click.option("--eps-frac", default="1/2", show_default=True)
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["text", "records"]),
    default="text",
    show_default=True,
)
def experiment_cmd(
    name: str, seed: int, trials: Optional[int], k_value: str, eps_frac: str, fmt: str
) -> None:
    """Run a named experiment suite, or 'all'. Exit 0 iff everything passes."""
    defaults = {
        "stability": 200,
        "snapping": 100,
        "simplify-contract": 100,
        "recovery": 50,
        "figure1": 1,
        "figure5": 1,
        "lowerbound-consistency": 100,
        "path-equivalence": 100,
    }
    names = list(EXPERIMENTS) if name == "all" else [name]
    ok = True
    for exp_name in names:
        config = ExperimentConfig(
            seed=seed,
            trials=trials if trials is not None else defaults.get(exp_name, 100),
            K=parse_value(k_value),
            epsilon_fraction=parse_value(eps_frac),
        )
        report = run_experiment(exp_name, config)
        if fmt == "records":
            click.echo(report.to_records_text(), nl=False)
        else:
            click.echo(report.to_text(), nl=False)
        ok = ok and report.passed
    if not ok:
        sys.exit(1)
