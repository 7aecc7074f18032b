"""Command-line interface.

Subcommands: pairing (verify, sweep), tensor (contract, qmfmc),
dw (z, basis, heegaard-bound, c1), jsj (c-s, gn, reflective, c2, compare).

Exit codes: 0 all checks passed, 1 a mathematical check failed (the
report carries the counterexample), 2 input error.
"""

from __future__ import annotations

import json
import random
import sys
from dataclasses import asdict, dataclass, is_dataclass
from fractions import Fraction

import click

from . import __version__
from .config import ConfigError, RunConfig, load_config
from .scalars import Poly, format_rational


@dataclass
class Report:
    command: str
    config: dict
    records: list
    summary: str
    status: str  # "pass" | "fail"


def _render_value(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, Poly):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): _render_value(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_render_value(v) for v in x]
    if is_dataclass(x) and not isinstance(x, type):
        return _render_value(asdict(x))
    if hasattr(x, "values") and type(x).__name__ == "LexTuple":
        return _render_value(tuple(x.values))
    return x


def emit(report: Report, fmt: str):
    if fmt == "json":
        click.echo(json.dumps(_render_value(asdict(report)), sort_keys=True, indent=2))
    else:
        click.echo(f"# {report.command}")
        for rec in report.records:
            click.echo(json.dumps(_render_value(rec), sort_keys=True))
        click.echo(f"summary: {report.summary}")
        click.echo(f"status: {report.status}")
    sys.exit(0 if report.status == "pass" else 1)


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        click.echo(f"input error: no such file: {path}", err=True)
        sys.exit(2)
    except json.JSONDecodeError as exc:
        click.echo(f"input error: {path}:{exc.lineno}:{exc.colno}: {exc.msg}", err=True)
        sys.exit(2)


def _input_error(msg):
    click.echo(f"input error: {msg}", err=True)
    sys.exit(2)


def _config(ctx) -> RunConfig:
    return ctx.obj


@click.group()
@click.version_option(__version__)
@click.option("--config", "config_path", type=str, default=None,
              help="JSON config file (default: $DIAGDOM_CONFIG).")
@click.option("--format", "output_format", type=click.Choice(["text", "json"]), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--dmax", type=int, default=None)
@click.option("--prime", type=int, default=None)
@click.option("--base", "coincidence_base", type=int, default=None)
@click.option("--mode", type=click.Choice(["symbolic", "randomized"]), default=None)
@click.pass_context
def main(ctx, config_path, output_format, seed, dmax, prime, coincidence_base, mode):
    """Exact positivity verification for gluing pairings."""
    try:
        ctx.obj = load_config(config_path, {
            "output_format": output_format, "seed": seed, "dmax": dmax,
            "prime": prime, "coincidence_base": coincidence_base, "mode": mode,
        })
    except ConfigError as exc:
        _input_error(exc)


# ---------------------------------------------------------------------------
# pairing
# ---------------------------------------------------------------------------


@main.group()
def pairing():
    """Dominance verdicts for graph pairs and corpus sweeps."""


@pairing.command("verify")
@click.argument("graph_a", type=str)
@click.argument("graph_b", type=str)
@click.pass_context
def pairing_verify(ctx, graph_a, graph_b):
    """Dominance verdict for two boundary graphs (JSON files)."""
    from .graphs import GraphError, LabeledGraph
    from .pairing import diagonal_dominance

    cfg = _config(ctx)
    try:
        a = LabeledGraph.from_json_obj(_load_json(graph_a))
        b = LabeledGraph.from_json_obj(_load_json(graph_b))
        verdict = diagonal_dominance(a, b, cfg.dmax, cfg.seed)
    except GraphError as exc:
        _input_error(exc)
    rec = {"a": graph_a, "b": graph_b, "verdict": verdict.kind, "detail": verdict.detail}
    status = "pass" if verdict.kind in ("STRICT", "EQUAL_ISO") else "fail"
    emit(Report("pairing verify", cfg.to_dict(), [rec], verdict.kind, status),
         cfg.output_format)


@pairing.command("sweep")
@click.option("--max-vertices", type=int, default=None)
@click.option("--max-edges", type=int, default=None)
@click.option("--max-boundary", type=int, default=None)
@click.option("--labels", type=str, default="v3:full",
              help="Comma list id:valence-or-kind, e.g. 'v3:full,w2:identity'.")
@click.pass_context
def pairing_sweep(ctx, max_vertices, max_edges, max_boundary, labels):
    """Exhaustive dominance sweep over the enumerated corpus."""
    from .pairing import positivity_sweep

    cfg = _config(ctx)
    try:
        label_set = _parse_labels(labels)
    except ValueError as exc:
        _input_error(exc)
    mv = max_vertices if max_vertices is not None else cfg.max_vertices
    me = max_edges if max_edges is not None else cfg.max_edges
    mb = max_boundary if max_boundary is not None else cfg.max_boundary
    report = positivity_sweep(label_set, mv, me, tuple(range(mb + 1)),
                              cfg.dmax, cfg.seed)
    recs = [asdict(r) for r in report.records]
    summary = (f"corpora {report.corpus_sizes}; failures {report.failures}")
    emit(Report("pairing sweep", cfg.to_dict(), recs, summary,
                "pass" if report.ok() else "fail"), cfg.output_format)


def _parse_labels(spec: str):
    from .graphs import FULL, IDENTITY, VertexLabel

    out = []
    for part in spec.split(","):
        name, _, kind = part.strip().partition(":")
        valence = int("".join(ch for ch in name if ch.isdigit()))
        sym = FULL if kind in ("full", "") else IDENTITY
        out.append(VertexLabel(name, valence, sym))
    return out


# ---------------------------------------------------------------------------
# tensor
# ---------------------------------------------------------------------------


@main.group()
def tensor():
    """Direct contraction and the quantum maxflow probe."""


@tensor.command("contract")
@click.argument("graph_file", type=str)
@click.option("--d", "dim", type=int, default=2)
@click.pass_context
def tensor_contract(ctx, graph_file, dim):
    """Contract a graph with a generic assignment at one dimension."""
    from .graphs import GraphError, LabeledGraph
    from .tensors import generic_assignment
    from .contraction import contract

    cfg = _config(ctx)
    try:
        g = LabeledGraph.from_json_obj(_load_json(graph_file))
        assignment = generic_assignment(tuple(g.labels.values()), dim,
                                        mode=cfg.mode, seed=cfg.seed, p=cfg.prime)
        value = contract(g, assignment, p=cfg.prime if cfg.mode == "randomized" else None)
    except GraphError as exc:
        _input_error(exc)
    if hasattr(value, "data"):
        rec = {"dims": list(value.dims),
               "entries": [_render_value(x) for x in value.data.reshape(-1)]}
    else:
        rec = {"value": _render_value(value)}
    emit(Report("tensor contract", cfg.to_dict(), [rec], "contracted", "pass"),
         cfg.output_format)


@tensor.command("qmfmc")
@click.option("--networks", type=int, default=20)
@click.option("--trials", type=int, default=4)
@click.option("--d", "dim", type=int, default=2)
@click.pass_context
def tensor_qmfmc(ctx, networks, trials, dim):
    """Probe random and monotone networks against the flow bounds."""
    from .qmfmc import layered_monotone_network, qmfmc_probe, random_network

    cfg = _config(ctx)
    rng = random.Random(cfg.seed)
    records = []
    ok = True
    for k in range(networks):
        net = random_network(random.Random(cfg.seed * 1_000_003 + k))
        rep = qmfmc_probe(net, dim, trials, seed=cfg.seed + k, p=cfg.prime)
        bound_ok = all(r <= rep.mincut_rank_bound for r in rep.ranks)
        ok &= bound_ok
        records.append({"network": k, "maxflow": rep.maxflow, "ranks": rep.ranks,
                        "bound_respected": bound_ok, "verdict": rep.verdict})
    mono = layered_monotone_network(3, 3, rng)
    rep = qmfmc_probe(mono, dim, trials, seed=cfg.seed, p=cfg.prime)
    mono_ok = all(r == dim ** rep.k for r in rep.ranks)
    ok &= mono_ok
    records.append({"network": "monotone", "maxflow": rep.maxflow, "ranks": rep.ranks,
                    "injective": mono_ok, "verdict": rep.verdict})
    emit(Report("tensor qmfmc", cfg.to_dict(), records,
                "statistical evidence only; no proof claim",
                "pass" if ok else "fail"), cfg.output_format)


# ---------------------------------------------------------------------------
# dw
# ---------------------------------------------------------------------------


@main.group()
def dw():
    """Finite-group partition functions."""


def _find_group(name: str):
    from .dw import catalog

    for g in catalog():
        if g.name.lower() == name.lower():
            return g
    _input_error(f"no catalog group named {name!r}")


def _load_presentation(path):
    from .dw import GroupError, GroupPresentation

    try:
        return GroupPresentation.from_json_obj(_load_json(path))
    except (GroupError, KeyError) as exc:
        _input_error(f"bad presentation: {exc}")


@dw.command("z")
@click.option("--presentation", "pres_file", required=True, type=str)
@click.option("--group", "group_name", required=True, type=str)
@click.pass_context
def dw_z(ctx, pres_file, group_name):
    """Partition function of a closed manifold presentation."""
    from .dw import GuardExceeded, z_closed

    cfg = _config(ctx)
    pres = _load_presentation(pres_file)
    group = _find_group(group_name)
    try:
        value = z_closed(pres, group)
    except GuardExceeded as exc:
        _input_error(exc)
    emit(Report("dw z", cfg.to_dict(),
                [{"group": group.name, "z": format_rational(value)}],
                f"Z = {format_rational(value)}", "pass"), cfg.output_format)


@dw.command("basis")
@click.option("--genus", type=int, required=True)
@click.option("--group", "group_name", required=True, type=str)
@click.pass_context
def dw_basis(ctx, genus, group_name):
    """Orthogonal basis of the surface state space, with norms."""
    from .dw import GuardExceeded, surface_basis

    cfg = _config(ctx)
    group = _find_group(group_name)
    try:
        basis = surface_basis(genus, group)
    except GuardExceeded as exc:
        _input_error(exc)
    recs = [{"representative": list(c.representative),
             "stabilizer": c.stabilizer_order,
             "norm_squared": format_rational(c.norm_squared())} for c in basis]
    emit(Report("dw basis", cfg.to_dict(), recs,
                f"{len(basis)} classes", "pass"), cfg.output_format)


@dw.command("heegaard-bound")
@click.option("--presentation", "pres_file", required=True, type=str)
@click.pass_context
def dw_heegaard(ctx, pres_file):
    """Genus lower bound maximized over the catalog."""
    from .dw import heegaard_lower_bound

    cfg = _config(ctx)
    pres = _load_presentation(pres_file)
    bound = heegaard_lower_bound(pres)
    emit(Report("dw heegaard-bound", cfg.to_dict(), [{"bound": bound}],
                f"genus >= {bound}", "pass"), cfg.output_format)


@dw.command("c1")
@click.option("--presentation", "pres_file", required=True, type=str)
@click.pass_context
def dw_c1(ctx, pres_file):
    """Partition-function string over the catalog."""
    from .dw import c1_string, catalog

    cfg = _config(ctx)
    pres = _load_presentation(pres_file)
    string = c1_string(pres)
    recs = [{"group": g.name, "z": format_rational(v)}
            for g, v in zip(catalog(), string.values)]
    emit(Report("dw c1", cfg.to_dict(), recs, f"catalog {string.version}", "pass"),
         cfg.output_format)


# ---------------------------------------------------------------------------
# jsj
# ---------------------------------------------------------------------------


@main.group()
def jsj():
    """Decomposition complexities: fibered tuples, gluing numbers,
    reflective tori, sum graphs."""


def _load_assembly(path):
    from .assembly import AssemblyError, assembly_from_json_obj
    from .seifert import SeifertError

    try:
        return assembly_from_json_obj(_load_json(path))
    except (AssemblyError, SeifertError) as exc:
        _input_error(exc)


@jsj.command("c-s")
@click.argument("assembly_file", type=str)
@click.pass_context
def jsj_cs(ctx, assembly_file):
    """Fibered complexity tuple of an assembly."""
    from .assembly import SF
    from .seifert import c_s

    cfg = _config(ctx)
    asm = _load_assembly(assembly_file)
    sf = [p.seifert for p in asm.pieces if p.kind == SF and p.seifert is not None]
    tup = c_s(asm.independent_tori(), asm.m_prime(), sf)
    emit(Report("jsj c-s", cfg.to_dict(), [{"c_s": _render_value(tup)}],
                "computed", "pass"), cfg.output_format)


@jsj.command("gn")
@click.argument("assembly_file", type=str)
@click.option("--piece", type=int, required=True)
@click.pass_context
def jsj_gn(ctx, assembly_file, piece):
    """Gluing number of one fibered piece."""
    from .assembly import AssemblyError, gluing_number

    cfg = _config(ctx)
    asm = _load_assembly(assembly_file)
    try:
        value = gluing_number(asm, piece)
    except (AssemblyError, IndexError) as exc:
        _input_error(exc)
    emit(Report("jsj gn", cfg.to_dict(),
                [{"piece": piece, "gn": format_rational(value)}],
                f"gn = {format_rational(value)}", "pass"), cfg.output_format)


@jsj.command("reflective")
@click.argument("assembly_file", type=str)
@click.pass_context
def jsj_reflective(ctx, assembly_file):
    """Count gluings passing the reflective-torus check."""
    from .assembly import AssemblyError, count_reflective, is_reflective

    cfg = _config(ctx)
    asm = _load_assembly(assembly_file)
    try:
        total = count_reflective(asm)
    except AssemblyError as exc:
        _input_error(exc)
    emit(Report("jsj reflective", cfg.to_dict(), [{"reflective": total}],
                f"{total} reflective tori", "pass"), cfg.output_format)


@jsj.command("c2")
@click.argument("sum_graph_file", type=str)
@click.pass_context
def jsj_c2(ctx, sum_graph_file):
    """Prime/sphere complexity of a sum graph."""
    from .prime_decomp import SumGraphError, c2_of_graph, sum_graph_from_json_obj

    cfg = _config(ctx)
    try:
        g = sum_graph_from_json_obj(_load_json(sum_graph_file))
        tup = c2_of_graph(g)
    except SumGraphError as exc:
        _input_error(exc)
    emit(Report("jsj c2", cfg.to_dict(), [{"c2": _render_value(tup)}],
                "computed", "pass"), cfg.output_format)


@jsj.command("compare")
@click.argument("assembly_a", type=str)
@click.argument("assembly_b", type=str)
@click.pass_context
def jsj_compare(ctx, assembly_a, assembly_b):
    """Order the fibered complexity tuples of two assemblies."""
    from .assembly import SF
    from .lex import lex_compare
    from .seifert import c_s

    cfg = _config(ctx)
    tups = []
    for path in (assembly_a, assembly_b):
        asm = _load_assembly(path)
        sf = [p.seifert for p in asm.pieces if p.kind == SF and p.seifert is not None]
        tups.append(c_s(asm.independent_tori(), asm.m_prime(), sf))
    try:
        c = lex_compare(tups[0], tups[1])
    except TypeError as exc:
        _input_error(exc)
    word = {-1: "less", 0: "equal", 1: "greater"}[c]
    emit(Report("jsj compare", cfg.to_dict(),
                [{"comparison": c, "a": _render_value(tups[0]), "b": _render_value(tups[1])}],
                f"first is {word}", "pass"), cfg.output_format)


if __name__ == "__main__":
    main()
