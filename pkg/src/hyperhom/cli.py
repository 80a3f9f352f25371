"""Command-line front end: ``hyperhom <subcommand> [options]``.

Exit status is 0 on success, 1 when an internal check fails and 2 for user
errors (bad input, bad flags, unmet preconditions).  Output is written once
at the end and depends only on the inputs and flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .acyclicity import is_acyclic
from .chainalg import ring_from_flag
from .core import Hypergraph, associated_complex, format_hypergraph, parse_hypergraph
from .embedded import embedded_homology, homology_report, sup_homology
from .errors import InternalError, UserError
from .indices import (DEFAULT_SAMPLES, connectivity_index, correlation_index, differentiation_index,
                      parse_vals)
from .mayer_vietoris import verify_long_exact
from .persistence import barcodes, metric_filtration, parse_number, read_distance_matrix, read_point_cloud


@dataclass
class Output:
    data: object                  # JSON document
    rows: list                    # CSV rows, header first
    text: str
    status: int = 0


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UserError(f"{path}: file not found") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise UserError(f"{path}: cannot read ({exc})") from None


def load(path: str) -> Hypergraph:
    return parse_hypergraph(read_text(path))


def _edges(h: Hypergraph) -> list:
    return [list(e) for e in h.sorted_edges()]


# -- subcommands ---------------------------------------------------------------

def cmd_closure(args) -> Output:
    k = associated_complex(load(args.input))
    return Output({"edges": _edges(k)}, [list(e) for e in k.sorted_edges()], format_hypergraph(k))


def _homology(groups, ring) -> Output:
    rows = [["degree", "rank", "torsion"]]
    rows += [[g.degree, g.rank, ";".join(map(str, g.torsion))] for g in groups]
    text = "".join(f"H_{g.degree} = {g}\n" for g in groups)
    return Output(homology_report(groups, ring), rows, text)


def cmd_homology(args) -> Output:
    ring = ring_from_flag(args.coeff, args.p)
    return _homology(embedded_homology(load(args.input), ring), ring)


def cmd_suphomology(args) -> Output:
    ring = ring_from_flag(args.coeff, args.p)
    return _homology(sup_homology(load(args.input), ring), ring)


def cmd_acyclic(args) -> Output:
    verdict, trace = is_acyclic(load(args.input))
    data = {"acyclic": verdict}
    rows = [["acyclic", verdict]]
    text = ("acyclic" if verdict else "not acyclic") + "\n"
    if args.trace:
        data["trace"] = trace.to_dict()
        rows = [["step", "op", "vertex", "edge"]]
        for n, s in enumerate(trace.steps, 1):
            if s.op == "O2":
                rows.append([n, s.op, "", " ".join(s.detail)])
                text += f"{n}: O2 remove {{{', '.join(s.detail)}}}\n"
            else:
                rows.append([n, s.op, s.detail, " ".join(s.from_edge)])
                text += f"{n}: {s.op} remove {s.detail} from {{{', '.join(s.from_edge)}}}\n"
    return Output(data, rows, text)


def cmd_mv(args) -> Output:
    ring = ring_from_flag(args.coeff, args.p)
    if args.first == "-" and args.second == "-":
        raise UserError("only one input may come from stdin")
    rep = verify_long_exact(load(args.first), load(args.second), ring)
    rows = [["degree", "spot", "dim", "ker_rank", "im_rank", "exact"]]
    rows += [[p.degree, p.spot, p.dim, p.ker_rank, p.im_rank, p.exact] for p in rep.positions]
    text = "".join(f"H_{p.degree}({p.spot}) dim {p.dim}: ker {p.ker_rank}, im {p.im_rank}, "
                   f"{'exact' if p.exact else 'NOT exact'}\n" for p in rep.positions)
    text += "sequence is exact\n" if rep.all_exact else "sequence is NOT exact\n"
    return Output(rep.to_dict(), rows, text, 0 if rep.all_exact else 1)


def cmd_persist(args) -> Output:
    h = load(args.input)
    dist = read_point_cloud(read_text(args.points)) if args.points else read_distance_matrix(read_text(args.distmat))
    if not dist.covers(h.universe):
        raise UserError("the metric does not cover every vertex")
    if args.auto_radii:
        radii = dist.auto_radii()
    else:
        radii = [parse_number(r) for r in args.radii.split(",") if r.strip()]
    f = metric_filtration(h, dist, radii)
    diagrams = barcodes(f)
    rows = [["degree", "birth", "death"]]
    text = ""
    for d in diagrams:
        for iv in d.intervals:
            death = "inf" if iv.death is None else str(iv.death)
            rows += [[d.degree, str(iv.birth), death]] * iv.multiplicity
            text += f"H_{d.degree}: [{iv.birth}, {death})" + (f" x{iv.multiplicity}" if iv.multiplicity > 1 else "") + "\n"
    data = {"radii": [str(r) for r in f.parameters], "diagrams": [d.to_dict() for d in diagrams]}
    return Output(data, rows, text or "no intervals\n")


def _index(rep) -> Output:
    d = rep.to_dict()
    rows = [["term", "value", "decimal"]] + [[t["term"], t["value"], t["decimal"]] for t in d["terms"]]
    rows.append(["total", d["value"], d["decimal"]])
    text = f"{rep.kind} = {d['value']} ({d['decimal']})\n"
    return Output(d, rows, text)


def cmd_conn(args) -> Output:
    return _index(connectivity_index(load(args.input)))


def cmd_diff(args) -> Output:
    h = load(args.input)
    return _index(differentiation_index(h, parse_vals(read_text(args.vals)), args.samples, args.seed))


def cmd_corr(args) -> Output:
    if [args.input, args.vals, args.vals2].count("-") > 1:
        raise UserError("only one input may come from stdin")
    h = load(args.input)
    phi, psi = parse_vals(read_text(args.vals)), parse_vals(read_text(args.vals2))
    return _index(correlation_index(h, phi, psi, args.samples, args.seed))


def cmd_info(args) -> Output:
    h = load(args.input)
    counts = h.counts()
    data = {"vertices": len(h.universe), "edges": len(h), "dim": h.dim,
            "counts": counts, "simplicial": h.is_simplicial()}
    rows = [["degree", "count"]] + [[n, c] for n, c in enumerate(counts)]
    text = (f"vertices: {len(h.universe)}\nedges: {len(h)}\ndim: {h.dim}\n"
            + "".join(f"{n}-edges: {c}\n" for n, c in enumerate(counts)))
    return Output(data, rows, text)


# -- parser --------------------------------------------------------------------

def _int_at_least(low: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < low:
            raise argparse.ArgumentTypeError(f"must be at least {low}")
        return v
    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    coeff = argparse.ArgumentParser(add_help=False)
    coeff.add_argument("--coeff", choices=["z", "q", "zp"], default="z")
    coeff.add_argument("--p", type=int, default=None, help="prime for --coeff zp")
    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--samples", type=_int_at_least(1), default=DEFAULT_SAMPLES)
    sampling.add_argument("--seed", type=_int_at_least(0), default=0)

    p = argparse.ArgumentParser(prog="hyperhom", description="Embedded homology of hypergraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help, parents=()):
        sp = sub.add_parser(name, help=help, parents=[common, *parents])
        sp.set_defaults(func=func)
        return sp

    add("closure", cmd_closure, "associated simplicial complex").add_argument("input")
    add("homology", cmd_homology, "embedded homology", [coeff]).add_argument("input")
    add("suphomology", cmd_suphomology, "homology of the supremum complex", [coeff]).add_argument("input")
    sp = add("acyclic", cmd_acyclic, "acyclicity by O1/O2 reduction")
    sp.add_argument("input")
    sp.add_argument("--trace", action="store_true")
    sp = add("mv", cmd_mv, "verify the Mayer-Vietoris sequence", [coeff])
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(coeff="q")
    sp = add("persist", cmd_persist, "barcodes of a metric filtration")
    sp.add_argument("input")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--points")
    src.add_argument("--distmat")
    rad = sp.add_mutually_exclusive_group(required=True)
    rad.add_argument("--radii", help="comma-separated increasing radii")
    rad.add_argument("--auto-radii", action="store_true")
    add("conn", cmd_conn, "connectivity index").add_argument("input")
    sp = add("diff", cmd_diff, "differentiation index", [sampling])
    sp.add_argument("input")
    sp.add_argument("--vals", required=True)
    sp = add("corr", cmd_corr, "correlation index", [sampling])
    sp.add_argument("input")
    sp.add_argument("--vals", required=True)
    sp.add_argument("--vals2", required=True)
    add("info", cmd_info, "dimension and edge counts").add_argument("input")
    return p


def render(out: Output, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out.data, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(out.rows)
        return buf.getvalue()
    return out.text


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except UserError as exc:
        print(f"hyperhom: error: {exc}", file=stderr)
        return 2
    except (InternalError, RecursionError, ArithmeticError) as exc:
        print(f"hyperhom: internal error: {exc}", file=stderr)
        return 1
    stdout.write(render(out, args.format))
    return out.status


def main() -> None:
    sys.exit(run())
