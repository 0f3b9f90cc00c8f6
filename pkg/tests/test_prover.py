"""The inductive construction: case fixtures, soundness, and refusals.

Most of the interesting branches only activate on graphs larger than the
exhaustive sweep range (two bad components need n >= 11 with the spine they
hang from), so each branch gets a hand-built fixture known to land on it.
The fixtures pin the dispatched case label, the certificate size, and the
bound, so any change to the dispatch order or the tie-breaking shows up here.
"""

from __future__ import annotations

import pytest

from isolation_lab.bounds import theorem_bound
from isolation_lab.families import edge_family, exact_iota, is_isolating
from isolation_lab.graphs import Graph, graph6_decode, mask_of, named_graph
from isolation_lab.prover import (
    Certificate,
    InternalConsistencyError,
    TraceEntry,
    classify_bad_component_k2,
    classify_bad_component_k3,
    isolate_k2,
    isolate_k3,
    residual_set_for_bad,
    serialize_trace,
)

E2, E3 = edge_family(2), edge_family(3)


def _prove(k: int, g: Graph) -> Certificate:
    return isolate_k2(g) if k == 2 else isolate_k3(g)


# ===== engineered case fixtures ==============================================
#
# (k, expected top-level case, |d|, bound, edges); the vertex counts are the
# smallest that make the case reachable.  v = 0 is always the max-degree
# vertex the induction pivots on.

CASE_FIXTURES = [
    # one anchor shared by two bad components
    (2, "shared-anchor", 2, 2, 10,
     [(0, 1), (0, 2), (0, 3), (1, 4), (1, 7), (4, 5), (5, 6), (7, 8), (8, 9)]),
    # two bad components on distinct anchors: a triangle carves off
    (2, "pair-carve", 2, 3, 11,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (5, 7), (8, 9), (9, 10),
      (1, 5), (3, 5), (2, 9), (4, 9)]),
    # ... or both components are 6-cycles
    (2, "pair-carve", 4, 4, 17,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
      (10, 5), (11, 12), (12, 13), (13, 14), (14, 15), (15, 16), (16, 11),
      (1, 5), (3, 5), (2, 11), (4, 11)]),
    # ... or a midpoint-linked 3-path whose ends are both true leaves
    (2, "pair-carve", 3, 3, 14,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (8, 9), (9, 10),
      (10, 11), (11, 12), (12, 13), (13, 8), (1, 6), (3, 6), (2, 8), (4, 11)]),
    # 3-path + 6-cycle pair, no true leaf on the path ends
    (2, "pair-p3-unleafed", 4, 4, 14,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (8, 9), (9, 10),
      (10, 11), (11, 12), (12, 13), (13, 8), (1, 5), (3, 7), (2, 8), (4, 11)]),
    # ... exactly one true leaf end
    (2, "pair-p3-halfleaf", 3, 3, 14,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (8, 9), (9, 10),
      (10, 11), (11, 12), (12, 13), (13, 8), (1, 5), (3, 5), (2, 8), (4, 11)]),
    # two 3-paths, at most two true leaf ends: dominate both midpoints
    (2, "pair-p3p3-dominate", 3, 3, 11,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (8, 9), (9, 10),
      (1, 5), (3, 7), (2, 8), (4, 10)]),
    # two 3-paths, three or more leaf ends: shed a leafy path
    (2, "pair-p3p3-shedleaf", 2, 2, 11,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (8, 9), (9, 10),
      (1, 6), (3, 6), (2, 9), (4, 9)]),
    # lone bad component that is a pendant 6-cycle
    (2, "single-attached", 3, 3, 11,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4),
      (4, 10), (1, 5), (2, 8)]),
    # lone bad 6-cycle spanning the whole graph: I connected
    (2, "single-c6-whole", 2, 2, 10,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4),
      (1, 4), (2, 7)]),
    # ... I disconnected
    (2, "single-c6-whole", 2, 2, 10,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4),
      (1, 4), (2, 5)]),
    # ... I another 6-cycle
    (2, "single-c6-whole", 2, 2, 10,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4),
      (1, 4), (2, 6), (3, 8)]),
    # lone bad 6-cycle with more graph hanging off the frontier
    (2, "single-c6-carve", 2, 3, 11,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4),
      (1, 4), (2, 7), (3, 10)]),
    (2, "single-c6-split", 3, 3, 12,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 4),
      (1, 4), (2, 5), (3, 10), (10, 11)]),
    # singly-linked bad component whose removal leaves a small exception
    (2, "lone-anchor-small-rescue", 1, 2, 9,
     [(0, 1), (0, 2), (0, 3), (1, 4), (4, 5), (5, 6), (1, 7), (7, 8)]),
    (2, "lone-anchor-cycle-rescue", 2, 2, 10,
     [(0, 1), (0, 2), (0, 3), (2, 4), (4, 5), (5, 6), (6, 3), (1, 7), (7, 8),
      (8, 9)]),

    (3, "shared-anchor", 2, 2, 10,
     [(0, 1), (0, 2), (0, 3), (1, 4), (1, 7), (4, 5), (5, 6), (6, 4), (7, 8),
      (8, 9), (9, 7)]),
    (3, "pair-carve", 2, 2, 11,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (7, 5), (8, 9), (9, 10),
      (10, 8), (1, 5), (3, 5), (2, 8), (4, 8)]),
    # carving a triangle can strand part of a 7-cycle as a 4-path
    (3, "pair-carve", 3, 3, 15,
     [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
      (10, 11), (11, 5), (12, 13), (13, 14), (14, 12), (1, 5), (3, 5),
      (2, 12), (4, 12)]),
    # lone bad 7-cycle spanning the whole graph: I connected
    (3, "single-c7-whole", 2, 2, 11,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
      (10, 4), (1, 4), (2, 6)]),
    # ... I another 7-cycle
    (3, "single-c7-whole", 2, 2, 11,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
      (10, 4), (1, 4), (2, 6), (3, 9)]),
    (3, "single-c7-carve", 2, 3, 12,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
      (10, 4), (1, 4), (2, 6), (3, 11)]),
    (3, "single-c7-split", 2, 3, 12,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
      (10, 4), (1, 4), (2, 5), (3, 11)]),
    # lone bad triangle whose removal leaves a 7-cycle through v
    (3, "single-k3-cyclepatch", 2, 2, 11,
     [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 4), (1, 4), (2, 5), (2, 7),
      (7, 8), (8, 9), (9, 10), (10, 3)]),
    (3, "lone-anchor-small-rescue", 1, 2, 9,
     [(0, 1), (0, 2), (0, 3), (2, 3), (1, 4), (4, 5), (5, 6), (6, 4), (1, 7),
      (7, 8)]),
    (3, "lone-anchor-cycle-rescue", 2, 2, 11,
     [(0, 1), (0, 2), (0, 3), (2, 4), (4, 5), (5, 6), (6, 7), (7, 3), (1, 8),
      (8, 9), (9, 10), (10, 8)]),
]


@pytest.mark.parametrize(
    "k,case,d_size,bound,n,edges", CASE_FIXTURES,
    ids=[f"k{k}-{case}-n{n}" for k, case, _, _, n, edges in CASE_FIXTURES])
def test_case_fixture(k, case, d_size, bound, n, edges):
    g = Graph(n, edges)
    cert = _prove(k, g)
    assert cert.trace[-1].case == case
    assert cert.d.bit_count() == d_size
    assert cert.bound == bound == theorem_bound(g, f"k{k}")
    fam = E2 if k == 2 else E3
    assert is_isolating(g, cert.d, fam)
    assert exact_iota(g, fam).value <= d_size <= bound


# Cases that the exhaustive range does reach, pinned to one 8-vertex witness
# each (first builtin graph in enumeration order that lands on the case).

SWEEP_WITNESSES = [
    (2, "path-pattern", "GqGOOG", 2, 2),
    (2, "cycle-pattern", "GqGOOK", 2, 2),
    (2, "dominated", "GsaCC?", 1, 1),
    (2, "no-bad", "GsaCA?", 1, 1),
    (2, "wide-frontier", "Gs`A@K", 2, 2),
    (2, "wide-frontier-all-leaves", "Gs`A?K", 1, 2),
    (2, "lone-anchor", "GsP@?W", 2, 2),
    (2, "single-small-dominate", "GsP@?w", 2, 2),
    (2, "single-small-wleaf", "GsP@@W", 2, 2),
    (2, "single-small-splitattach", "GsO_Oo", 2, 2),
    (2, "single-small-sharedattach", "GsOoGC", 2, 2),
    (3, "path-pattern", "GqGOOG", 1, 2),
    (3, "cycle-pattern", "GqGOOK", 2, 2),
    (3, "dominated", "GsaCC?", 1, 2),
    (3, "no-bad", "GsaCA?", 1, 2),
    (3, "wide-frontier", "Gs`?GK", 2, 2),
    (3, "lone-anchor", "GsO_OS", 2, 2),
    (3, "single-k3-carve", "GsP@PS", 2, 2),
]


@pytest.mark.parametrize(
    "k,case,g6,d_size,bound", SWEEP_WITNESSES,
    ids=[f"k{k}-{case}" for k, case, *_ in SWEEP_WITNESSES])
def test_sweep_witness(k, case, g6, d_size, bound):
    g = graph6_decode(g6)
    cert = _prove(k, g)
    assert cert.trace[-1].case == case
    assert cert.d.bit_count() == d_size and cert.bound == bound
    assert is_isolating(g, cert.d, E2 if k == 2 else E3)


def test_exact_base_below_eight():
    cert = isolate_k2(graph6_decode("@"))
    assert cert.trace[-1].case == "exact-base" and cert.d == 0


# ===== soundness and shape ===================================================


def test_sandwich_all_small_graphs(connected_upto):
    for g in connected_upto(1, 6):
        for k, fam in ((2, E2), (3, E3)):
            try:
                cert = _prove(k, g)
            except ValueError:
                continue  # exception graph
            value = exact_iota(g, fam).value
            assert is_isolating(g, cert.d, fam)
            assert value <= cert.d.bit_count() <= cert.bound
            assert cert.bound == theorem_bound(g, f"k{k}")


def test_refuses_exception_graphs():
    for tag in ("P3", "K3", "K13", "C6", "C6P", "C6PP"):
        with pytest.raises(ValueError, match=tag):
            isolate_k2(named_graph(tag))
    for tag in ("K3", "C7"):
        with pytest.raises(ValueError, match=tag):
            isolate_k3(named_graph(tag))
    # non-exceptional small graphs go through fine
    assert isolate_k3(named_graph("C6")).d.bit_count() <= 1
    assert isolate_k2(named_graph("C7")).d.bit_count() <= 2


def test_refuses_disconnected_input():
    g = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    with pytest.raises(ValueError, match="connected"):
        isolate_k2(g)


def test_certificate_is_deterministic():
    g = Graph(14, [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (8, 9),
                   (9, 10), (10, 11), (11, 12), (12, 13), (13, 8), (1, 5),
                   (3, 7), (2, 8), (4, 11)])
    a, b = isolate_k2(g), isolate_k2(g)
    assert a.d == b.d and a.bound == b.bound and a.trace == b.trace


def test_trace_structure_and_serialization():
    # a 17-vertex pair fixture recurses on the carved remainder, so the
    # sub-case precedes the top-level entry
    g = Graph(17, [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (6, 7), (7, 8),
                   (8, 9), (9, 10), (10, 5), (11, 12), (12, 13), (13, 14),
                   (14, 15), (15, 16), (16, 11), (1, 5), (3, 5), (2, 11),
                   (4, 11)])
    cert = isolate_k2(g)
    assert len(cert.trace) == 2
    assert cert.trace[-1].case == "pair-carve"
    assert cert.trace[-1].n == 17
    entry = cert.trace[-1]
    assert isinstance(entry, TraceEntry)
    assert entry.line() == f"case=pair-carve n=17 v={entry.v} |d|={entry.d_size}"
    text = serialize_trace(cert.trace)
    assert text.count("case=") == 2 and "\n" in text


def test_internal_consistency_error_type():
    assert issubclass(InternalConsistencyError, RuntimeError)


# ===== bad-component classification ==========================================


def test_classify_bad_components_standalone():
    for tag, expect in (("P3", "p3"), ("K3", "k3"), ("K13", "k13"),
                        ("C6", "c6"), ("C6P", "c6p"), ("C6PP", "c6pp")):
        g = named_graph(tag)
        assert classify_bad_component_k2(g, g.vertex_mask) == expect
    assert classify_bad_component_k3(named_graph("K3"), 0b111) == "k3"
    c7 = named_graph("C7")
    assert classify_bad_component_k3(c7, c7.vertex_mask) == "c7"
    for tag in ("P3", "C6", "C6P"):
        g = named_graph(tag)
        assert classify_bad_component_k3(g, g.vertex_mask) is None


def test_classification_matches_its_meaning(connected_upto):
    # a component is bad exactly when its isolation number exceeds its share
    # of the bound: 14 iota_2 > 4n - leaves for k=2, 4 iota_3 > n for k=3
    for h in connected_upto(1, 7):
        full = h.vertex_mask
        i2 = exact_iota(h, E2).value
        i3 = exact_iota(h, E3).value
        leaf = sum(1 for v in range(h.n) if h.degree(v) == 1)
        assert (classify_bad_component_k2(h, full) is not None) == \
            (14 * i2 > 4 * h.n - leaf)
        assert (classify_bad_component_k3(h, full) is not None) == \
            (4 * i3 > h.n)


def test_pendant_attachment_classification():
    # a 7-vertex pendant 6-cycle whose pendant vertex is linked onward is not
    # counted bad: the link robs it of its leaf, and with no leaf its share
    # 28/14 covers the 2 isolating vertices it needs
    g = Graph(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1),
                  (0, 7), (7, 8)])
    assert classify_bad_component_k2(g, mask_of(range(7))) is None


def test_residual_sets():
    p3 = named_graph("P3")
    assert residual_set_for_bad(p3, p3.vertex_mask, "p3", 1) == 0
    k3 = named_graph("K3")
    assert residual_set_for_bad(k3, k3.vertex_mask, "k3", 0) == 0
    c6 = named_graph("C6")
    y4 = residual_set_for_bad(c6, c6.vertex_mask, "c6", 0)
    assert y4.bit_count() == 1
    # the residual vertex sits three steps around the cycle from the attach
    g = named_graph("C6")
    step3 = 3
    assert y4 == 1 << step3
    k13 = named_graph("K13")
    with pytest.raises(ValueError):
        residual_set_for_bad(k13, k13.vertex_mask, "k13", 1)  # leaf attach
    assert residual_set_for_bad(k13, k13.vertex_mask, "k13", 0) == 0
