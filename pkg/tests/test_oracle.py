from fractions import Fraction

import pytest

from singlat import (PreconditionError, RatCycle, catalog, class_group, class_of,
                     dual_basis, fundamental_cycle, verify_all)
from singlat.oracle import (Box, affordable_chi_box, antinef_points,
                            brute_fundamental_cycle, brute_lipman_min,
                            brute_lipman_minima, brute_min_chi, grid_size)

from conftest import graph


@pytest.fixture(scope="module")
def z7():
    return catalog("paper-z7")


def test_box_default(z7):
    box = Box.for_graph(z7, 3)
    z_min = fundamental_cycle(z7).end
    for vid, bound in box.bounds:
        assert bound == 3 * z_min.coefficient(vid)
    assert grid_size(box) > 0


def test_antinef_points_are_antinef(z7):
    from singlat import in_lipman_cone
    pts = antinef_points(z7, Box.for_graph(z7, 1))
    assert pts
    for cls, p in pts:
        assert in_lipman_cone(z7, p)
        assert class_of(class_group(z7), p) == cls


def test_brute_min_zero_class(z7):
    cg = class_group(z7)
    assert brute_lipman_min(z7, cg.zero()) == RatCycle.zero()


def test_brute_min_case_c(z7):
    cg = class_group(z7)
    duals = dual_basis(z7)
    h = class_of(cg, duals["E2"])
    assert brute_lipman_min(z7, h) == duals["E4"]


def test_brute_min_a1():
    g = graph([("v", -2)])
    cg = class_group(g)
    nonzero = next(h for h in cg.elements() if not h.is_zero)
    assert brute_lipman_min(g, nonzero) == RatCycle({"v": Fraction(1, 2)})


def test_brute_min_absent_for_tiny_box(z7):
    cg = class_group(z7)
    duals = dual_basis(z7)
    h = class_of(cg, duals["E1"])
    tiny = Box(tuple((vid, 0) for vid in z7.ids))
    assert brute_lipman_min(z7, h, tiny) is None


def test_brute_min_chi_examples(z7):
    a1 = graph([("v", -2)])
    value, witness = brute_min_chi(a1)
    assert (value, witness) == (1, RatCycle.unit("v"))
    value, _ = brute_min_chi(z7)
    assert value == 1
    cusp = catalog("cusp-3x3")
    value, witness = brute_min_chi(cusp)
    assert value == 0
    assert witness == RatCycle({"E1": 1, "E2": 1, "E3": 1})


def test_brute_fundamental(z7):
    assert brute_fundamental_cycle(z7) == fundamental_cycle(z7).end


def test_affordable_chi_box_shrinks():
    e8 = catalog("E8")
    box, scale = affordable_chi_box(e8, 3)
    assert scale < 3
    assert grid_size(box) <= 300_000


def test_verify_all_passes(z7):
    for g in (z7, graph([("v", -2)])):
        transcript = verify_all(g)
        assert transcript.passed, transcript.to_text()
        assert len(transcript.checks) >= 15


def test_verify_all_refuses_indefinite():
    g = graph([("v", 0)])
    with pytest.raises(PreconditionError):
        verify_all(g)


def test_verify_all_refuses_oversize():
    verts = [(f"v{i}", -2) for i in range(9)]
    edges = [(f"v{i}", f"v{i+1}") for i in range(8)]
    with pytest.raises(PreconditionError, match="at most"):
        verify_all(graph(verts, edges))


def test_verify_all_corpus_samples(rational_corpus, negdef_corpus):
    for g in rational_corpus[:5] + negdef_corpus[:5]:
        transcript = verify_all(g)
        assert transcript.passed, transcript.to_text()


def test_transcript_text_format(z7):
    text = verify_all(z7).to_text()
    assert "PASS" in text and "overall" in text


def test_minima_cover_all_classes(rational_corpus):
    for g in rational_corpus[:10]:
        cg = class_group(g)
        minima = brute_lipman_minima(g)
        assert set(minima) == set(cg.elements())
