"""Stable JSON encoding for graphs, cycles, groups, reports and transcripts.

Integers are serialised as strings so consumers never face 64-bit overflow;
rationals are {"num", "den"} string pairs with positive denominator; cycle
coefficients are arrays ordered like the graph's vertex list. Every
top-level document carries the schema version.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .classify import ClassificationReport, FullSheafFamily, SpecialnessRecord, VertexRecord
from .cycles import RatCycle
from .dsl import GraphDocument
from .errors import InputError
from .graph import ResolutionGraph
from .lattice import ClassGroup
from .laufer import ComputationSequence, SingularityType
from .oracle import VerificationTranscript

SCHEMA_VERSION = "singlat/1"


def encode_rational(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def encode_cycle(g: ResolutionGraph, cycle: RatCycle) -> list[dict]:
    return [encode_rational(cycle.coefficient(vid)) for vid in g.ids]


def encode_graph(g: ResolutionGraph, name: str | None = None) -> dict:
    doc = {
        "vertices": [{"id": v.id, "euler": str(v.euler), "genus": str(v.genus)}
                     for v in g.vertices],
        "edges": [[u, v] for u, v in g.edges],
    }
    if name is not None:
        doc["name"] = name
    return doc


def encode_class_group(cg: ClassGroup) -> dict:
    return {
        "order": str(cg.order),
        "factors": [str(f) for f in cg.factors],
        "generators": [encode_cycle(cg.graph, gen) for gen in cg.generators],
        "graph_betti1": str(cg.graph.betti1),
    }


def encode_singularity(st: SingularityType) -> dict:
    return {
        "kind": st.kind,
        "rational": st.rational,
        "elliptic": st.elliptic,
        "minimally_elliptic": st.minimally_elliptic,
        "cusp": st.cusp,
        "minimal_resolution": st.minimal_resolution,
        "numerically_gorenstein": st.numerically_gorenstein,
        "tree_all_genus_zero": st.tree_all_genus_zero,
        "elliptic_cycle_support_is_all": st.elliptic_cycle_support_is_all,
        "geometric_genus": None if st.geometric_genus is None else str(st.geometric_genus),
        "warnings": list(st.warnings),
    }


def encode_sequence(g: ResolutionGraph, seq: ComputationSequence) -> dict:
    return {
        "start": encode_cycle(g, seq.start),
        "steps": [{"vertex": s.vertex, "value": encode_rational(s.value)} for s in seq.steps],
        "end": encode_cycle(g, seq.end),
    }


def encode_family(g: ResolutionGraph, fam: FullSheafFamily) -> dict:
    return {
        "class": [str(c) for c in fam.class_coords],
        "chern_class_negated": encode_cycle(g, fam.chern_class),
        "family_dim": str(fam.family_dim),
        "exceptions": list(fam.exceptions),
        "special": fam.special,
        "flat_count": fam.flat_count,
    }


def encode_vertex_record(g: ResolutionGraph, rec: VertexRecord) -> dict:
    return {
        "vertex": rec.vertex,
        "multiplicity": str(rec.multiplicity),
        "dual_cycle": encode_cycle(g, rec.dual),
        "class": [str(c) for c in rec.class_coords],
        "min_rep": None if rec.min_rep is None else encode_cycle(g, rec.min_rep),
        "dual_is_min_rep": rec.dual_is_min_rep,
        "special": rec.special,
        "extended_rational": rec.extended_rational,
    }


def encode_specialness(g: ResolutionGraph, rec: SpecialnessRecord) -> dict:
    return {
        "class": [str(c) for c in rec.class_coords],
        "min_rep": encode_cycle(g, rec.min_rep),
        "pairing_with_fundamental": str(rec.pairing_with_fundamental),
        "witness_vertex": rec.witness_vertex,
        "h1": str(rec.h1_value),
        "special": rec.special,
    }


def encode_report(report: ClassificationReport) -> dict:
    g = report.graph
    return {
        "graph": encode_graph(g),
        "singularity": encode_singularity(report.singularity),
        "class_group": {"order": str(report.class_order),
                        "factors": [str(f) for f in report.class_factors]},
        "families": [encode_family(g, fam) for fam in report.families],
        "vertex_table": [encode_vertex_record(g, rec) for rec in report.vertex_table],
        "notes": list(report.notes),
        "inclusion_only": report.inclusion_only,
    }


def encode_transcript(t: VerificationTranscript) -> dict:
    return {
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in t.checks],
        "passed": t.passed,
    }


def document(doc_type: str, payload: dict) -> dict:
    return {"schema": SCHEMA_VERSION, "type": doc_type, **payload}


def to_json(obj, graph: ResolutionGraph | None = None, indent: int = 2) -> str:
    """Serialise a supported object as a versioned JSON document."""
    if isinstance(obj, ClassificationReport):
        doc = document("classification", encode_report(obj))
    elif isinstance(obj, ClassGroup):
        doc = document("class-group", encode_class_group(obj))
    elif isinstance(obj, VerificationTranscript):
        doc = document("verification", encode_transcript(obj))
    elif isinstance(obj, SingularityType):
        doc = document("singularity", encode_singularity(obj))
    elif isinstance(obj, ResolutionGraph):
        doc = document("graph", encode_graph(obj))
    elif isinstance(obj, GraphDocument):
        doc = document("graph", encode_graph(obj.graph(), name=obj.name))
    elif isinstance(obj, RatCycle):
        if graph is None:
            raise InputError("serialising a bare cycle needs the graph for vertex order")
        doc = document("cycle", {"vertices": list(graph.ids),
                                 "coefficients": encode_cycle(graph, obj)})
    elif isinstance(obj, ComputationSequence):
        if graph is None:
            raise InputError("serialising a sequence needs the graph for vertex order")
        doc = document("sequence", encode_sequence(graph, obj))
    else:
        raise InputError(f"cannot serialise objects of type {type(obj).__name__}")
    return dumps(doc)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
