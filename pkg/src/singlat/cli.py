"""Command-line front end. Results go to stdout, diagnostics to stderr.

Exit codes: 0 success, 1 user or input error, 2 precondition unmet,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import dsl, jsonio, oracle
from .classify import (flat_annotation, full_sheaf_classes_min_elliptic,
                       full_sheaf_classes_rational, special_full_sheaves, wunram_table)
from .cycles import RatCycle
from .errors import InputError, InternalError, PreconditionError, SinglatError
from .graph import (ResolutionGraph, blow_up, canonical_cycle, chi, dual_basis,
                    extend_graph, intersection_matrix, is_negative_definite,
                    lattice_determinant, total_transform)
from .lattice import class_group, class_of, reduced_rep
from .laufer import (antinef_closure, classify_singularity, fundamental_cycle,
                     laufer_rational, minimal_antinef_rep)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are user errors, not preconditions
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def format_cycle(g: ResolutionGraph, cycle: RatCycle) -> str:
    if not cycle:
        return "0"
    terms = []
    for vid in g.ids:
        q = cycle.coefficient(vid)
        if q:
            terms.append(vid if q == 1 else f"{q}*{vid}")
    return " + ".join(terms)


def _load_graph(args) -> ResolutionGraph:
    sources = [s for s in (args.input, args.catalog) if s is not None]
    if len(sources) != 1:
        raise InputError("exactly one input source is required: a path, '-', or --catalog")
    if args.catalog is not None:
        return dsl.catalog(args.catalog)
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.input!r}: {exc}") from None
    return dsl.parse(text).graph()


def _box_scale(args) -> int:
    if args.box is not None:
        return args.box
    env = os.environ.get("SINGLAT_BOX")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"SINGLAT_BOX must be an integer, got {env!r}") from None
    return 3


def _emit(args, doc_type: str, payload: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(jsonio.dumps(jsonio.document(doc_type, payload)))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _maybe_verify(args, g: ResolutionGraph) -> None:
    if getattr(args, "run_verify", False):
        transcript = oracle.verify_all(g, scale=_box_scale(args))
        if not transcript.passed:
            sys.stderr.write(transcript.to_text() + "\n")
            raise InternalError("oracle cross-checks failed")


def cmd_check(args) -> int:
    g = _load_graph(args)
    negdef = is_negative_definite(intersection_matrix(g))
    payload = {"well_formed": True, "negative_definite": negdef}
    lines = ["well-formed: yes", f"negative definite: {'yes' if negdef else 'no'}"]
    if negdef:
        st = classify_singularity(g)
        payload["singularity"] = jsonio.encode_singularity(st)
        lines.append(f"type: {st.kind}")
        lines.append(f"minimal resolution: {'yes' if st.minimal_resolution else 'no'}")
        lines.append(f"numerically Gorenstein: {'yes' if st.numerically_gorenstein else 'no'}")
        for w in st.warnings:
            lines.append(f"note: {w}")
        _maybe_verify(args, g)
    _emit(args, "check", payload, "\n".join(lines))
    return 0


def cmd_invariants(args) -> int:
    g = _load_graph(args)
    cg = class_group(g)
    z_min = fundamental_cycle(g).end
    z_k = canonical_cycle(g)
    duals = dual_basis(g)
    payload = {
        "graph": jsonio.encode_graph(g),
        "determinant": str(lattice_determinant(g)),
        "class_group": jsonio.encode_class_group(cg),
        "fundamental_cycle": jsonio.encode_cycle(g, z_min),
        "canonical_cycle": jsonio.encode_cycle(g, z_k),
        "canonical_is_integral": z_k.is_integral,
        "chi_fundamental": jsonio.encode_rational(chi(g, z_min)),
        "dual_cycles": {vid: jsonio.encode_cycle(g, duals[vid]) for vid in g.ids},
    }
    factors = " x ".join(f"Z/{f}" for f in cg.factors) or "trivial"
    lines = [
        f"determinant: {lattice_determinant(g)}",
        f"class group: {factors} (order {cg.order})",
        f"graph betti_1: {g.betti1}",
        f"fundamental cycle: {format_cycle(g, z_min)}",
        f"canonical cycle: {format_cycle(g, z_k)}"
        + (" (integral)" if z_k.is_integral else " (not integral)"),
        f"chi(fundamental cycle): {chi(g, z_min)}",
        "dual cycles:",
    ]
    lines += [f"  {vid}*: {format_cycle(g, duals[vid])}" for vid in g.ids]
    _maybe_verify(args, g)
    _emit(args, "invariants", payload, "\n".join(lines))
    return 0


def cmd_sh(args) -> int:
    g = _load_graph(args)
    cg = class_group(g)
    rows = []
    lines = [f"classes: {cg.order}"]
    for h in cg.elements():
        rep = reduced_rep(cg, h)
        seq = antinef_closure(g, rep)
        rows.append({
            "class": [str(c) for c in h.coords],
            "reduced_rep": jsonio.encode_cycle(g, rep),
            "min_rep": jsonio.encode_cycle(g, seq.end),
            "steps": str(len(seq)),
        })
        lines.append(f"h={h.coords}: r = {format_cycle(g, rep)}; "
                     f"s = {format_cycle(g, seq.end)}; steps = {len(seq)}")
    _maybe_verify(args, g)
    _emit(args, "sh-table", {"graph": jsonio.encode_graph(g), "rows": rows}, "\n".join(lines))
    return 0


def cmd_classify(args) -> int:
    g = _load_graph(args)
    st = classify_singularity(g)
    if st.rational:
        report = full_sheaf_classes_rational(g)
    elif st.minimally_elliptic:
        report = full_sheaf_classes_min_elliptic(g)
    else:
        raise PreconditionError(
            f"graph is neither rational nor minimally elliptic (classified as {st.kind}; "
            f"chi of the fundamental cycle is {chi(g, fundamental_cycle(g).end)})")
    report = flat_annotation(g, report)
    lines = [f"type: {report.singularity.kind}",
             f"classes: {report.class_order}",
             f"families: {len(report.families)}"]
    if report.inclusion_only:
        lines.append("inclusion-only: the family list is an upper bound")
    for fam in report.families:
        desc = [f"h={fam.class_coords}",
                f"-c1 = {format_cycle(g, fam.chern_class)}",
                f"dim {fam.family_dim}",
                f"flat: {fam.flat_count}"]
        if fam.special is not None:
            desc.append("special" if fam.special else "not special")
        if fam.exceptions:
            desc.append("; ".join(fam.exceptions))
        lines.append("  " + " | ".join(desc))
    for note in report.notes:
        lines.append(f"note: {note}")
    _maybe_verify(args, g)
    _emit(args, "classification", jsonio.encode_report(report), "\n".join(lines))
    return 0


def cmd_special(args) -> int:
    g = _load_graph(args)
    records = special_full_sheaves(g)
    table = wunram_table(g)
    rows = [jsonio.encode_vertex_record(g, rec) for rec in table]
    lines = ["vertex | mult | dual is minimal | extension rational | special"]
    for rec in table:
        lines.append(f"{rec.vertex} | {rec.multiplicity} | {rec.dual_is_min_rep} | "
                     f"{rec.extended_rational} | {rec.special}")
    specials = [r for r in records if r.special]
    lines.append(f"special nonzero classes: {[r.class_coords for r in specials]}")
    payload = {
        "graph": jsonio.encode_graph(g),
        "rows": rows,
        "classes": [jsonio.encode_specialness(g, r) for r in records],
    }
    _maybe_verify(args, g)
    _emit(args, "special-table", payload, "\n".join(lines))
    return 0


def cmd_extend(args) -> int:
    g = _load_graph(args)
    ext = extend_graph(g, args.vertex, args.euler)
    new_id = ext.ids[-1]
    text_doc = dsl.serialize(dsl.GraphDocument(None, ext.vertices, ext.edges))
    mult = fundamental_cycle(ext).end.coefficient(new_id)
    payload = {
        "graph": jsonio.encode_graph(ext),
        "source_text": text_doc,
        "new_vertex": new_id,
        "euler": str(ext.vertex(new_id).euler),
        "extension_rational": laufer_rational(ext),
        "new_vertex_multiplicity": str(mult),
    }
    lines = [text_doc.rstrip("\n"),
             f"# new vertex {new_id} with euler {ext.vertex(new_id).euler}; "
             f"rational: {laufer_rational(ext)}; multiplicity in fundamental cycle: {mult}"]
    _maybe_verify(args, ext)
    _emit(args, "extend", payload, "\n".join(lines))
    return 0


def cmd_blowup(args) -> int:
    g = _load_graph(args)
    if (args.vertex is None) == (args.edge is None):
        raise InputError("choose exactly one of --vertex or --edge")
    locus = args.vertex if args.vertex is not None else tuple(args.edge)
    target, bmap = blow_up(g, locus)
    cg = class_group(g)
    cg_new = class_group(target)
    rows = []
    lines = [dsl.serialize(dsl.GraphDocument(None, target.vertices, target.edges)).rstrip("\n")]
    lines.append("class | s | total transform | s of transformed class | equal")
    for h in cg.elements():
        rep = minimal_antinef_rep(g, cg, h)
        pushed = total_transform(bmap, rep)
        h_new = class_of(cg_new, pushed)
        rep_new = minimal_antinef_rep(target, cg_new, h_new)
        rows.append({
            "class": [str(c) for c in h.coords],
            "min_rep": jsonio.encode_cycle(g, rep),
            "transform": jsonio.encode_cycle(target, pushed),
            "target_class": [str(c) for c in h_new.coords],
            "target_min_rep": jsonio.encode_cycle(target, rep_new),
            "transform_is_min": pushed == rep_new,
        })
        lines.append(f"{h.coords} | {format_cycle(g, rep)} | {format_cycle(target, pushed)} | "
                     f"{format_cycle(target, rep_new)} | {pushed == rep_new}")
    payload = {
        "graph": jsonio.encode_graph(target),
        "source_text": dsl.serialize(dsl.GraphDocument(None, target.vertices, target.edges)),
        "new_vertex": bmap.new_id,
        "transform_table": rows,
    }
    _maybe_verify(args, target)
    _emit(args, "blowup", payload, "\n".join(lines))
    return 0


def cmd_catalog(args) -> int:
    if args.name is None:
        names = dsl.catalog_names()
        _emit(args, "catalog-list", {"names": list(names)}, "\n".join(names))
        return 0
    source = dsl.catalog_source(args.name)
    _emit(args, "catalog-source", {"name": args.name, "source_text": source}, source)
    return 0


def cmd_verify(args) -> int:
    g = _load_graph(args)
    transcript = oracle.verify_all(g, scale=_box_scale(args))
    _emit(args, "verification", jsonio.encode_transcript(transcript), transcript.to_text())
    return 0 if transcript.passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="singlat",
                     description="Lattice invariants and rank-one full-sheaf "
                                 "classification for resolution graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, with_input=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if with_input:
            p.add_argument("input", nargs="?", default=None,
                           help="path to a graph file, or - for stdin")
            p.add_argument("--catalog", metavar="NAME", help="use a built-in graph")
            p.add_argument("--verify", dest="run_verify", action="store_true",
                           help="run the oracle cross-checks after computing")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--box", type=int, default=None,
                       help="enumeration box scale (default 3, env SINGLAT_BOX)")
        return p

    add("check", cmd_check, "well-formedness, definiteness, singularity type")
    add("invariants", cmd_invariants, "determinant, class group, key cycles")
    add("sh", cmd_sh, "minimal anti-nef cycle of every class")
    add("classify", cmd_classify, "full-sheaf families with flat annotations")
    add("special", cmd_special, "per-vertex specialness table (rational graphs)")
    p_ext = add("extend", cmd_extend, "glue a test vertex onto the graph")
    p_ext.add_argument("--vertex", required=True, help="vertex to extend at")
    p_ext.add_argument("--euler", type=int, default=None,
                       help="Euler number of the new vertex (default: searched)")
    p_blow = add("blowup", cmd_blowup, "blow up a vertex or an edge")
    p_blow.add_argument("--vertex", default=None, help="blow up a generic point of this vertex")
    p_blow.add_argument("--edge", nargs=2, metavar=("U", "V"), default=None,
                        help="blow up the intersection point on this edge")
    p_cat = add("catalog", cmd_catalog, "list built-in graphs or print one", with_input=False)
    p_cat.add_argument("name", nargs="?", default=None)
    add("verify", cmd_verify, "run every oracle cross-check")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except PreconditionError as exc:
        sys.stderr.write(f"precondition not met: {exc}\n")
        return 2
    except InternalError as exc:
        sys.stderr.write(f"internal consistency failure: {exc}\n")
        return 3
    except SinglatError as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
