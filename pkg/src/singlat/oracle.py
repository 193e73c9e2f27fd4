"""Brute-force verifiers, independent of the algorithmic paths they check.

Everything here is box-bounded: claims are certified inside an explicit
per-vertex coefficient box (by default three times the fundamental cycle)
and labelled as such. Anti-nef points are enumerated as nonnegative
integer combinations of the dual cycles, which is exactly the anti-nef
part of the dual lattice; minima per class therefore never consult the
computation-sequence machinery they are meant to audit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cycles import RatCycle, cycle_min
from .errors import InternalError, PreconditionError
from .graph import (ResolutionGraph, blow_up, canonical_cycle, chi, dual_basis,
                    extend_graph, intersection_matrix, lattice_determinant, pairing,
                    pairing_vector, total_transform, require_negative_definite)
from .lattice import ClassElement, class_group, class_of, in_lipman_cone, reduced_rep
from .laufer import (antinef_closure, fundamental_cycle, h1_rational,
                     laufer_rational, minimal_antinef_rep)


@dataclass(frozen=True)
class Box:
    """Per-vertex nonnegative coefficient bounds for bounded enumeration."""

    bounds: tuple[tuple[str, int], ...]

    @classmethod
    def for_graph(cls, g: ResolutionGraph, scale: int = 3) -> "Box":
        z_min = fundamental_cycle(g).end
        return cls(tuple((vid, scale * int(z_min.coefficient(vid))) for vid in g.ids))

    def bound(self, vid: str) -> int:
        for v, b in self.bounds:
            if v == vid:
                return b
        raise InternalError(f"box has no bound for vertex {vid!r}")

    def contains(self, cycle: RatCycle) -> bool:
        return all(0 <= cycle.coefficient(vid) <= b for vid, b in self.bounds)


def _resolve_box(g: ResolutionGraph, box: Optional[Box]) -> Box:
    return box if box is not None else Box.for_graph(g)


def grid_size(box: Box) -> int:
    size = 1
    for _vid, b in box.bounds:
        size *= b + 1
    return size


def affordable_chi_box(g: ResolutionGraph, scale: int = 3,
                       budget: int = 300_000) -> tuple[Box, int]:
    """Largest scale <= the requested one whose full coefficient grid fits
    the budget. Exhaustive chi scans walk the whole grid, so unlike the
    anti-nef enumeration they cannot prune; large fundamental cycles force
    a smaller box, which is recorded alongside the result."""
    for s in range(scale, 0, -1):
        box = Box.for_graph(g, s)
        if grid_size(box) <= budget:
            return box, s
    raise PreconditionError(
        "even the scale-1 coefficient grid exceeds the enumeration budget; "
        "this graph is too large for the exhaustive chi scan")


def antinef_points(g: ResolutionGraph, box: Optional[Box] = None) -> list[tuple[ClassElement, RatCycle]]:
    """Every anti-nef dual-lattice point inside the box, with its class.

    Enumerates nonnegative combinations of the dual cycles depth-first in
    lexicographic order; partial sums only grow, so pruning against the box
    is sound. Integer arithmetic throughout (coefficients are scaled by the
    lattice determinant).
    """
    require_negative_definite(g)
    box = _resolve_box(g, box)
    det = lattice_determinant(g)
    ids = g.ids
    n = len(ids)
    duals = dual_basis(g)
    # scaled integer coordinates: dual_num[v][w] = det * (E_v^* coefficient at w)
    dual_num = []
    for vid in ids:
        row = []
        for wid in ids:
            q = duals[vid].coefficient(wid) * det
            if q.denominator != 1:  # pragma: no cover - determinant clears denominators
                raise InternalError("dual cycle denominator does not divide the determinant")
            row.append(int(q))
        dual_num.append(row)
    limits = [box.bound(vid) * det for vid in ids]
    cg = class_group(g)
    dual_classes = [class_of(cg, duals[vid]) for vid in ids]

    out: list[tuple[ClassElement, RatCycle]] = []
    partial = [[0] * n for _ in range(n + 1)]  # partial[k] = sum over first k generators

    def rec(v: int, cls: ClassElement):
        if v == n:
            coeffs = {ids[w]: Fraction(partial[n][w], det) for w in range(n)}
            out.append((cls, RatCycle(coeffs)))
            return
        base = partial[v]
        count = 0
        current = cls
        while True:
            row = [base[w] + count * dual_num[v][w] for w in range(n)]
            if any(row[w] > limits[w] for w in range(n)):
                break
            partial[v + 1] = row
            rec(v + 1, current)
            count += 1
            current = cg.add(current, dual_classes[v])

    rec(0, cg.zero())
    return out


def brute_lipman_minima(g: ResolutionGraph, box: Optional[Box] = None) -> dict[ClassElement, RatCycle]:
    """Coefficient-wise minimum of the boxed anti-nef points, per class."""
    minima: dict[ClassElement, RatCycle] = {}
    for cls, point in antinef_points(g, box):
        if cls in minima:
            minima[cls] = cycle_min(minima[cls], point)
        else:
            minima[cls] = point
    return minima


def brute_lipman_min(g: ResolutionGraph, h: ClassElement,
                     box: Optional[Box] = None) -> Optional[RatCycle]:
    """Coefficient-wise minimum over the anti-nef representatives of one
    class inside the box; absent when the box contains none."""
    cg = class_group(g)
    cg.validate(h)
    return brute_lipman_minima(g, box).get(h)


def brute_min_chi(g: ResolutionGraph, box: Optional[Box] = None) -> tuple[int, RatCycle]:
    """Minimum of chi over nonzero effective integral cycles in the box.

    Walks the coefficient grid odometer-style, maintaining the quadratic
    form incrementally, so every candidate costs O(1) big-int work. The
    witness returned is the first minimiser in odometer order.
    """
    require_negative_definite(g)
    box = _resolve_box(g, box)
    ids = g.ids
    n = len(ids)
    rows = intersection_matrix(g).rows
    targets = [v.euler + 2 - 2 * v.genus for v in g.vertices]
    limits = [box.bound(vid) for vid in ids]
    if all(b == 0 for b in limits):
        raise PreconditionError("empty box: no nonzero cycles to scan")

    coeffs = [0] * n
    q = 0                      # l^T M l
    p = [0] * n                # (M l)_v
    tau = 0                    # l . targets
    best: Optional[int] = None
    witness: Optional[list[int]] = None
    while True:
        # advance the odometer by one in the last coordinate that has room
        pos = n - 1
        while pos >= 0 and coeffs[pos] == limits[pos]:
            # roll this coordinate back to zero
            c = coeffs[pos]
            q -= 2 * c * p[pos] - c * c * rows[pos][pos]
            for j in range(n):
                p[j] -= c * rows[pos][j]
            tau -= c * targets[pos]
            coeffs[pos] = 0
            pos -= 1
        if pos < 0:
            break
        q += 2 * p[pos] + rows[pos][pos]
        for j in range(n):
            p[j] += rows[pos][j]
        tau += targets[pos]
        coeffs[pos] += 1
        value2 = -(q - tau)  # 2 * chi
        if best is None or value2 < best:
            best = value2
            witness = list(coeffs)
    assert best is not None and witness is not None
    if best % 2:  # pragma: no cover - chi is integral on integral cycles
        raise InternalError("chi evaluated to a half-integer on an integral cycle")
    return best // 2, RatCycle({ids[i]: witness[i] for i in range(n)})


def brute_fundamental_cycle(g: ResolutionGraph, box: Optional[Box] = None) -> Optional[RatCycle]:
    """Minimal nonzero integral anti-nef cycle found inside the box."""
    cg = class_group(g)
    zero = cg.zero()
    candidates = [point for cls, point in antinef_points(g, box)
                  if cls == zero and point and point.is_integral]
    if not candidates:
        return None
    minimum = candidates[0]
    for c in candidates[1:]:
        minimum = cycle_min(minimum, c)
    if minimum not in candidates:  # pragma: no cover - monoid closure under min
        raise InternalError("integral anti-nef points are not closed under minimum")
    return minimum


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationTranscript:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}" for c in self.checks]
        lines.append(f"{'PASS' if self.passed else 'FAIL'}  overall")
        return "\n".join(lines)


def verify_all(g: ResolutionGraph, scale: int = 3, size_limit: int = 8,
               seed: int = 0) -> VerificationTranscript:
    """Run the cross-module consistency checks at enumeration scale.

    Refuses graphs that are not negative definite or are too large for the
    boxed enumerations. Every check reports pass/fail with a witness in the
    failure message; the transcript order is fixed.
    """
    require_negative_definite(g)
    if len(g.vertices) > size_limit:
        raise PreconditionError(
            f"graph has {len(g.vertices)} vertices; the bounded verifier accepts at most "
            f"{size_limit}. Raise the limit only with a corresponding time budget.")
    box = Box.for_graph(g, scale)
    checks: list[CheckResult] = []

    def run(name: str, fn):
        try:
            detail = fn()
            checks.append(CheckResult(name, True, detail or "ok"))
        except InternalError as exc:
            checks.append(CheckResult(name, False, str(exc)))
        except AssertionError as exc:
            checks.append(CheckResult(name, False, str(exc) or "assertion failed"))

    ids = g.ids
    duals = dual_basis(g)
    cg = class_group(g)
    z_min = fundamental_cycle(g).end
    z_k = canonical_cycle(g)

    def check_dual_basis():
        for u in ids:
            for v in ids:
                expected = Fraction(-1 if u == v else 0)
                got = pairing(g, duals[u], RatCycle.unit(v))
                assert got == expected, f"(dual {u}, {v}) = {got}, expected {expected}"
        return f"{len(ids)}^2 pairings exact"

    def check_canonical():
        values = pairing_vector(g, z_k)
        for vert, got in zip(g.vertices, values):
            expected = vert.euler + 2 - 2 * vert.genus
            assert got == expected, f"(K, {vert.id}) = {got}, expected {expected}"
        return "adjunction residuals all zero"

    def check_chi_quadratic():
        rng = random.Random(seed)
        sample = [RatCycle.unit(v) for v in ids] + [duals[v] for v in ids] + [z_min, z_k]
        for _ in range(10):
            a = rng.choice(sample)
            b = rng.choice(sample)
            lhs = chi(g, a + b)
            rhs = chi(g, a) + chi(g, b) - pairing(g, a, b)
            assert lhs == rhs, f"chi not quadratic at {a} + {b}"
        return "quadratic identity holds on sampled pairs"

    def check_class_order():
        det = lattice_determinant(g)
        assert cg.order == det, f"order {cg.order} != determinant {det}"
        product = 1
        for f in cg.factors:
            product *= f
        assert product == det, f"factor product {product} != determinant {det}"
        return f"order {det}, factors {list(cg.factors)}"

    def check_generator_orders():
        for k, gen in enumerate(cg.generators):
            expected = cg.factors[k]
            assert cg.element_order(class_of(cg, gen)) == expected, \
                f"generator {k} has wrong order"
        return f"{len(cg.generators)} generator orders match"

    def check_homomorphism():
        rng = random.Random(seed + 1)
        sample = [duals[v] for v in ids]
        for _ in range(10):
            a = rng.choice(sample)
            b = rng.choice(sample)
            assert class_of(cg, a + b) == cg.add(class_of(cg, a), class_of(cg, b)), \
                "class map is not additive"
        return "class map additive on sampled pairs"

    def check_reduced_reps():
        for h in cg.elements():
            rep = reduced_rep(cg, h)
            assert all(0 <= rep.coefficient(v) < 1 for v in ids), \
                f"reduced representative of {h.coords} leaves [0,1)"
            assert class_of(cg, rep) == h, f"reduced representative of {h.coords} misclassified"
        for v in ids:
            diff = duals[v] - reduced_rep(cg, class_of(cg, duals[v]))
            assert diff.is_integral, f"dual {v} minus its reduced representative is not integral"
        return f"{cg.order} classes reduced"

    minima = brute_lipman_minima(g, box)

    def check_minimal_reps():
        for h in cg.elements():
            rep = minimal_antinef_rep(g, cg, h)
            brute = minima.get(h)
            assert brute is not None, f"box missed class {h.coords} entirely"
            assert rep == brute, \
                f"class {h.coords}: sequence gives {rep}, enumeration gives {brute}"
        return f"agreement on all {cg.order} classes"

    def check_cone_vertex():
        # The reverse inclusion (every anti-nef representative = minimal cycle
        # + an anti-nef integral cycle) fails in general; see the ledgered
        # counterexamples. What is asserted: the shifted monoid stays inside
        # the class, and the minimal cycle sits below everything.
        by_class: dict[ClassElement, set[RatCycle]] = {}
        for cls, point in antinef_points(g, box):
            by_class.setdefault(cls, set()).add(point)
        zero_part = by_class.get(cg.zero(), set())
        for h in cg.elements():
            rep = minimal_antinef_rep(g, cg, h)
            actual = by_class.get(h, set())
            for s in zero_part:
                shifted = rep + s
                if box.contains(shifted):
                    assert shifted in actual, \
                        f"{rep} + {s} escaped the anti-nef part of class {h.coords}"
            for p in actual:
                assert rep <= p, f"{p} in class {h.coords} is not above the minimal cycle"
        return "minimal cycle + monoid stays in each class; minimality confirmed"

    def check_closure_endpoints():
        # the closure endpoint from a general start is the least enumerated
        # anti-nef point above the start in its congruence class
        points = antinef_points(g, box)
        starts = [RatCycle.unit(ids[0]), -duals[ids[0]], duals[ids[-1]].frac()]
        if len(ids) > 1:
            starts.append(duals[ids[0]].frac() - RatCycle.unit(ids[1]))
        for start in starts:
            end = antinef_closure(g, start).end
            eligible = [p for cls, p in points if p >= start and (p - start).is_integral]
            assert end in eligible, f"closure endpoint of {start} escaped the box"
            best = eligible[0]
            for p in eligible[1:]:
                best = cycle_min(best, p)
            assert best == end, \
                f"closure from {start} gave {end}, enumeration minimum is {best}"
        return f"{len(starts)} starts confirmed against the enumeration"

    def check_fundamental():
        brute = brute_fundamental_cycle(g, box)
        assert brute is not None, "box missed every nonzero integral anti-nef cycle"
        assert brute == z_min, f"sequence gives {z_min}, enumeration gives {brute}"
        assert all(z_min.coefficient(v) >= 1 for v in ids), "a coefficient is below one"
        return f"fundamental cycle confirmed: {z_min}"

    def check_path_independence():
        rng = random.Random(seed + 2)
        for trial in range(5):
            policy = (lambda r: (lambda cands: r.choice(cands)))(random.Random(rng.randrange(10 ** 6)))
            for v in ids:
                assert fundamental_cycle(g, start_vertex=v, tie_break=policy).end == z_min, \
                    f"fundamental cycle changed from start {v}"
            for h in cg.elements():
                assert minimal_antinef_rep(g, cg, h, tie_break=policy) == \
                    minimal_antinef_rep(g, cg, h), f"minimal cycle of {h.coords} changed"
        return "endpoints stable under randomized tie-breaking"

    def check_rationality_chi():
        chi_box, used_scale = affordable_chi_box(g, scale)
        value, witness = brute_min_chi(g, chi_box)
        rational = laufer_rational(g)
        if rational:
            assert value == 1, f"rational graph but bounded min chi = {value} at {witness}"
        else:
            assert value <= 0, f"non-rational graph but bounded min chi = {value}"
            elliptic = chi(g, z_min) == 0
            assert elliptic == (value == 0), \
                f"chi(Z_min) = {chi(g, z_min)} but bounded min chi = {value}"
        return f"bounded min chi = {value} at {witness} (box scale {used_scale})"

    def check_specialness():
        if not laufer_rational(g):
            return "skipped: graph is not rational"
        from .classify import special_full_sheaves
        records = special_full_sheaves(g)  # raises InternalError on disagreement
        specials = [r.class_coords for r in records if r.special]
        return f"triple agreement on {len(records)} classes; special: {specials}"

    def check_h1_chi_formula():
        if not laufer_rational(g):
            return "skipped: graph is not rational"
        for h in cg.elements():
            rep = minimal_antinef_rep(g, cg, h)
            neg_class = cg.neg(h)
            end = minima.get(neg_class)
            assert end is not None, f"box missed class {neg_class.coords}"
            expected = chi(g, -rep) - chi(g, end)
            got = h1_rational(g, rep)
            assert got == expected, \
                f"class {h.coords}: h1 sequence value {got}, chi difference {expected}"
        return "sequence h1 equals the chi difference on every class"

    def check_min_closure():
        by_class: dict[ClassElement, list[RatCycle]] = {}
        for cls, point in antinef_points(g, box):
            by_class.setdefault(cls, []).append(point)
        rng = random.Random(seed + 3)
        for h, points in by_class.items():
            for _ in range(min(10, len(points))):
                a, b = rng.choice(points), rng.choice(points)
                m = cycle_min(a, b)
                assert in_lipman_cone(g, m), f"min of two anti-nef cycles of {h.coords} is not anti-nef"
                assert (a - b).is_integral, "two points of one class differ non-integrally"
        return "sampled minima stay anti-nef within each class"

    def check_monoid():
        integral = [p for cls, p in antinef_points(g, box) if cls == cg.zero() and p.is_integral]
        for p in integral:
            if p:
                assert all(p.coefficient(v) > 0 for v in ids), \
                    f"nonzero integral anti-nef cycle {p} has a zero coefficient"
        rng = random.Random(seed + 4)
        for _ in range(10):
            a, b = rng.choice(integral), rng.choice(integral)
            assert in_lipman_cone(g, a + b), "sum of integral anti-nef cycles is not anti-nef"
        return f"{len(integral)} integral points checked"

    def check_blow_up():
        det = lattice_determinant(g)
        loci = [ids[0]]
        if g.edges:
            loci.append(g.edges[0])
        for locus in loci:
            target, bmap = blow_up(g, locus)
            assert lattice_determinant(target) == det, f"determinant changed at locus {locus!r}"
            sample = [RatCycle.unit(v) for v in ids] + [z_min, z_k] + [duals[v] for v in ids]
            for a in sample[:6]:
                for b in sample[:6]:
                    assert pairing(target, total_transform(bmap, a), total_transform(bmap, b)) \
                        == pairing(g, a, b), f"pairing not preserved at locus {locus!r}"
        return f"{len(loci)} loci: determinant and pairings preserved"

    def check_extension():
        ext = extend_graph(g, ids[0])
        new_id = ext.ids[-1]
        mult = fundamental_cycle(ext).end.coefficient(new_id)
        assert mult == 1, f"extension vertex has multiplicity {mult}"
        return f"stable extension at {ids[0]!r} with Euler number {ext.vertex(new_id).euler}"

    run("dual-basis-pairings", check_dual_basis)
    run("canonical-cycle-adjunction", check_canonical)
    run("chi-quadratic", check_chi_quadratic)
    run("class-group-order", check_class_order)
    run("class-generator-orders", check_generator_orders)
    run("class-homomorphism", check_homomorphism)
    run("reduced-representatives", check_reduced_reps)
    run("minimal-cycles-vs-enumeration", check_minimal_reps)
    run("class-cone-vertex", check_cone_vertex)
    run("closure-endpoints-vs-enumeration", check_closure_endpoints)
    run("fundamental-cycle-vs-enumeration", check_fundamental)
    run("sequence-path-independence", check_path_independence)
    run("rationality-chi-criterion", check_rationality_chi)
    run("specialness-triple-agreement", check_specialness)
    run("h1-chi-formula", check_h1_chi_formula)
    run("lipman-min-closure", check_min_closure)
    run("monoid-positivity", check_monoid)
    run("blow-up-invariance", check_blow_up)
    run("extension-stability", check_extension)
    return VerificationTranscript(tuple(checks))
