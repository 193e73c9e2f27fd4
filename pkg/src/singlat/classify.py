"""Classification of rank-one full sheaves at the Chern-class level.

On a rational graph the full sheaves of rank one are exactly the bundles
whose negated first Chern class is the minimal anti-nef cycle of its class,
and every one of them is flat. On a minimally elliptic graph whose elliptic
cycle is supported everywhere, the nonzero classes each contribute a
one-dimensional family, the zero class contributes the family over the
fundamental cycle minus one analytically distinguished bundle, plus the
trivial sheaf. Flat counts are annotated per family; the excluded bundle is
recorded symbolically and never computed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .cycles import RatCycle
from .errors import InternalError, PreconditionError
from .graph import ResolutionGraph, dual_basis, extend_graph, pairing
from .lattice import ClassElement, class_group, class_of
from .laufer import (SingularityType, classify_singularity, fundamental_cycle,
                     h1_rational, laufer_rational, minimal_antinef_rep)

FLAT_ALL = "all"
FLAT_EXACTLY_ONE = "exactly-one"
FLAT_ZERO_KNOWN = "zero-known"
FLAT_UNKNOWN = "unknown"


@dataclass(frozen=True)
class FullSheafFamily:
    class_coords: tuple[int, ...]
    chern_class: RatCycle          # the negated first Chern class, an anti-nef cycle
    family_dim: int
    exceptions: tuple[str, ...] = ()
    special: Optional[bool] = None
    flat_count: str = FLAT_UNKNOWN


@dataclass(frozen=True)
class SpecialnessRecord:
    class_coords: tuple[int, ...]
    min_rep: RatCycle
    pairing_with_fundamental: int   # value of (-min_rep, Z_min)
    witness_vertex: Optional[str]   # vertex whose dual cycle equals min_rep with multiplicity one
    h1_value: int
    special: bool


@dataclass(frozen=True)
class VertexRecord:
    vertex: str
    multiplicity: int
    dual: RatCycle
    class_coords: tuple[int, ...]
    min_rep: Optional[RatCycle]
    dual_is_min_rep: Optional[bool]
    special: Optional[bool]
    extended_rational: Optional[bool]


@dataclass(frozen=True)
class ClassificationReport:
    graph: ResolutionGraph
    singularity: SingularityType
    class_order: int
    class_factors: tuple[int, ...]
    families: tuple[FullSheafFamily, ...]
    vertex_table: tuple[VertexRecord, ...]
    notes: tuple[str, ...] = ()
    inclusion_only: bool = False


def _flag_notes(g: ResolutionGraph, st: SingularityType) -> tuple[str, ...]:
    notes = [
        f"minimal resolution: {'yes' if st.minimal_resolution else 'no'}",
        f"all genera zero: {'yes' if g.all_genus_zero else 'no'}",
    ]
    if st.elliptic_cycle_support_is_all is not None:
        notes.append("elliptic cycle supported on every vertex: "
                     f"{'yes' if st.elliptic_cycle_support_is_all else 'no'}")
    notes.extend(st.warnings)
    return tuple(notes)


def special_full_sheaves(g: ResolutionGraph) -> tuple[SpecialnessRecord, ...]:
    """Specialness of every nonzero-class family, triple-checked.

    Three verdicts must agree for each class: the minimal cycle pairs to one
    against the fundamental cycle; the minimal cycle is the dual of a vertex
    of multiplicity one; and the cohomology sum along the computation
    sequence vanishes. Disagreement is an internal bug, never user error.
    """
    if not laufer_rational(g):
        raise PreconditionError("specialness is defined here for rational graphs only")
    cg = class_group(g)
    z_min = fundamental_cycle(g).end
    duals = dual_basis(g)
    records = []
    for h in cg.elements():
        if h.is_zero:
            continue
        rep = minimal_antinef_rep(g, cg, h)
        value = -pairing(g, rep, z_min)
        if value.denominator != 1:  # pragma: no cover - rep is in the dual lattice
            raise InternalError("minimal cycle pairs fractionally with the fundamental cycle")
        value = int(value)
        witness = next((vid for vid, dual in duals.items()
                        if dual == rep and z_min.coefficient(vid) == 1), None)
        h1 = h1_rational(g, rep)
        verdicts = (value == 1, witness is not None, h1 == 0)
        if len(set(verdicts)) != 1:
            raise InternalError(
                f"specialness tests disagree for class {h.coords}: pairing={value}, "
                f"witness={witness!r}, h1={h1}")
        records.append(SpecialnessRecord(h.coords, rep, value, witness, h1, verdicts[0]))
    return tuple(records)


def wunram_table(g: ResolutionGraph) -> tuple[VertexRecord, ...]:
    """Per-vertex correspondence data for a rational graph.

    On a minimal resolution the three statements "multiplicity one",
    "extension stays rational" and "the dual cycle is minimal in its class
    with multiplicity one" are equivalent and checked against each other.
    On non-minimal resolutions only the last is tied to the existence of a
    nontrivial special full sheaf with that Chern class.
    """
    if not laufer_rational(g):
        raise PreconditionError("the per-vertex table is defined for rational graphs only")
    cg = class_group(g)
    z_min = fundamental_cycle(g).end
    minimal = g.is_minimal_resolution
    duals = dual_basis(g)
    rows = []
    for vid in g.ids:
        dual = duals[vid]
        h = class_of(cg, dual)
        rep = minimal_antinef_rep(g, cg, h)
        dual_is_min = rep == dual
        mult = int(z_min.coefficient(vid))
        ext_rational = laufer_rational(extend_graph(g, vid))
        is_special_full = dual_is_min and mult == 1
        if minimal:
            if not ((mult == 1) == ext_rational == is_special_full):
                raise InternalError(
                    f"vertex {vid!r}: minimal-resolution equivalences disagree "
                    f"(multiplicity {mult}, extension rational {ext_rational}, "
                    f"special full {is_special_full})")
        else:
            sheaf_exists = dual_is_min and h1_rational(g, dual) == 0 and not h.is_zero
            if is_special_full != sheaf_exists:
                raise InternalError(
                    f"vertex {vid!r}: special-full criteria disagree off the minimal resolution")
        rows.append(VertexRecord(
            vertex=vid,
            multiplicity=mult,
            dual=dual,
            class_coords=h.coords,
            min_rep=rep,
            dual_is_min_rep=dual_is_min,
            special=is_special_full,
            extended_rational=ext_rational,
        ))
    return tuple(rows)


def full_sheaf_classes_rational(g: ResolutionGraph) -> ClassificationReport:
    """One family per class, carried by its minimal anti-nef cycle.

    Families are zero-dimensional and all flat; the trivial class carries
    the trivial sheaf, which is special.
    """
    st = classify_singularity(g)
    if not st.rational:
        raise PreconditionError(f"graph is not rational (classified as {st.kind})")
    cg = class_group(g)
    specials = {rec.class_coords: rec for rec in special_full_sheaves(g)}
    families = []
    for h in cg.elements():
        if h.is_zero:
            families.append(FullSheafFamily(h.coords, RatCycle.zero(), 0,
                                            special=True, flat_count=FLAT_ALL))
        else:
            rec = specials[h.coords]
            families.append(FullSheafFamily(h.coords, rec.min_rep, 0,
                                            special=rec.special, flat_count=FLAT_ALL))
    cherns = {fam.chern_class for fam in families}
    if len(cherns) != cg.order:  # pragma: no cover - cross-check
        raise InternalError("duplicate Chern classes across distinct classes")
    return ClassificationReport(
        graph=g,
        singularity=st,
        class_order=cg.order,
        class_factors=cg.factors,
        families=tuple(families),
        vertex_table=wunram_table(g),
        notes=_flag_notes(g, st),
    )


def full_sheaf_classes_min_elliptic(g: ResolutionGraph) -> ClassificationReport:
    """Families for a minimally elliptic graph with fully supported elliptic cycle.

    Each nonzero class contributes a one-dimensional family over its minimal
    cycle; the zero class contributes the family over the fundamental cycle
    minus one analytically distinguished member (recorded symbolically),
    plus the trivial sheaf. With a positive-genus vertex the equality is not
    available and the report is marked as an inclusion only.
    """
    st = classify_singularity(g)
    if not st.minimally_elliptic:
        raise PreconditionError(f"graph is not minimally elliptic (classified as {st.kind})")
    if st.elliptic_cycle_support_is_all is not True:
        raise PreconditionError(
            "the elliptic cycle is not supported on every vertex; "
            "this classifier requires full support (as in the minimal resolution)")
    cg = class_group(g)
    z_min = fundamental_cycle(g).end
    families = []
    for h in cg.elements():
        if h.is_zero:
            continue
        rep = minimal_antinef_rep(g, cg, h)
        families.append(FullSheafFamily(h.coords, rep, 1))
    zero = cg.zero()
    families.append(FullSheafFamily(
        zero.coords, z_min, 1,
        exceptions=("one analytically distinguished bundle with this Chern class "
                    "is excluded; which one is not a lattice question",)))
    families.append(FullSheafFamily(zero.coords, RatCycle.zero(), 0))
    inclusion_only = not g.all_genus_zero
    notes = _flag_notes(g, st)
    if inclusion_only:
        notes = notes + ("a positive-genus curve is present: the family list is an "
                         "upper bound (inclusion), not an equality",)
    duals = dual_basis(g)
    table = tuple(VertexRecord(
        vertex=vid,
        multiplicity=int(z_min.coefficient(vid)),
        dual=duals[vid],
        class_coords=class_of(cg, duals[vid]).coords,
        min_rep=minimal_antinef_rep(g, cg, class_of(cg, duals[vid])),
        dual_is_min_rep=None,
        special=None,
        extended_rational=None,
    ) for vid in g.ids)
    return ClassificationReport(
        graph=g,
        singularity=st,
        class_order=cg.order,
        class_factors=cg.factors,
        families=tuple(families),
        vertex_table=table,
        notes=notes,
        inclusion_only=inclusion_only,
    )


def flat_annotation(g: ResolutionGraph, report: ClassificationReport) -> ClassificationReport:
    """Fill in how many members of each family carry a flat connection.

    Rational: every family. Cusps: every family. Minimally elliptic with a
    rational-homology-sphere link (a tree of genus-zero curves): exactly one
    member per nonzero class, none known in the fundamental-cycle family,
    and the trivial sheaf itself. Anything else stays unknown.
    """
    st = report.singularity
    z_min = fundamental_cycle(g).end

    def annotate(fam: FullSheafFamily) -> FullSheafFamily:
        if st.rational or st.cusp:
            return replace(fam, flat_count=FLAT_ALL)
        if st.minimally_elliptic and st.tree_all_genus_zero:
            if not fam.chern_class:
                return replace(fam, flat_count=FLAT_ALL)
            if fam.chern_class == z_min and ClassElement(fam.class_coords).is_zero:
                return replace(fam, flat_count=FLAT_ZERO_KNOWN)
            return replace(fam, flat_count=FLAT_EXACTLY_ONE)
        return replace(fam, flat_count=FLAT_UNKNOWN)

    return replace(report, families=tuple(annotate(fam) for fam in report.families))
