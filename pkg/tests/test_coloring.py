import random

import pytest
from conftest import certificate, multi_corpus
from hypothesis import given, settings
from hypothesis import strategies as st

from deltacolor.coloring import (
    BadColors,
    ChainKind,
    ColoringError,
    Improvement,
    PartialColoring,
    StaleChain,
    UncoloredCycle,
    flip_chain,
    is_proper,
    kempe_chain,
    missing_colors,
    shift_cycle,
    uncolored_cycle,
)
from deltacolor.generators import cycle, gen_figure1
from deltacolor.multigraph import Multigraph

TRIANGLE = Multigraph(3, [(0, 1), (1, 2), (2, 0)])


def c5_minus_edge():
    """C_5 with edges 0..3 colored 1,2,1,2 and edge 4 = (4, 0) uncolored."""
    g = cycle(5)
    return g, PartialColoring(g, 2, [1, 2, 1, 2, None])


def test_missing_colors_examples():
    g, c = gen_figure1()
    assert missing_colors(c, 0) == {4}
    assert c.missing_colors(1) == {3}
    assert c.missing_colors(2) == {1, 2}
    lonely = PartialColoring.empty(Multigraph(2, []), 3)
    assert lonely.missing_colors(0) == {1, 2, 3}
    full = PartialColoring(TRIANGLE, 2, [1, 2, None])
    assert full.missing_colors(1) == set()


def test_is_proper_examples():
    assert is_proper(PartialColoring(TRIANGLE, 3, [1, 2, 3]), TRIANGLE)
    assert not PartialColoring(TRIANGLE, 3, [1, 1, 2]).is_proper()
    assert PartialColoring.empty(TRIANGLE, 3).is_proper()


def test_color_out_of_range_rejected():
    with pytest.raises(ColoringError):
        PartialColoring(TRIANGLE, 2, [1, 3, None])


def test_kempe_path():
    g = Multigraph(3, [(0, 1), (1, 2)])
    c = PartialColoring(g, 2, [1, 2])
    chain = kempe_chain(c, 0, 1, 2)
    assert chain.kind is ChainKind.PATH
    assert len(chain) == 2
    assert chain.endpoints == (0, 2)


def test_kempe_even_cycle():
    g = cycle(4)
    c = PartialColoring(g, 2, [1, 2, 1, 2])
    for start in range(4):
        chain = kempe_chain(c, start, 1, 2)
        assert chain.kind is ChainKind.EVEN_CYCLE
        assert sorted(chain.edges) == [0, 1, 2, 3]


def test_kempe_from_vertex_missing_both():
    g = Multigraph(3, [(0, 1)])
    c = PartialColoring(g, 3, [1])
    chain = kempe_chain(c, 2, 1, 2)
    assert len(chain) == 0 and chain.vertices == (2,)


def test_kempe_c5_path_ends_at_other_end():
    g, c = c5_minus_edge()
    assert c.missing_colors(4) == {1} and c.missing_colors(0) == {2}
    chain = kempe_chain(c, 0, 1, 2)
    assert chain.kind is ChainKind.PATH
    assert set(chain.endpoints) == {0, 4}


def test_flip_single_edge():
    g = Multigraph(2, [(0, 1)])
    c = PartialColoring(g, 2, [1])
    assert flip_chain(c, kempe_chain(c, 0, 1, 2)).colors == (2,)


def test_flip_c5_path():
    g, c = c5_minus_edge()
    flipped = flip_chain(c, kempe_chain(c, 0, 1, 2))
    assert flipped.colors == (2, 1, 2, 1, None)
    assert flipped.is_proper()


def test_flip_stale_chain():
    g, c = c5_minus_edge()
    chain = kempe_chain(c, 0, 1, 2)
    changed = c.recolor({1: None})
    with pytest.raises(StaleChain):
        flip_chain(changed, chain)


def test_kempe_bad_colors():
    g, c = c5_minus_edge()
    with pytest.raises(BadColors):
        kempe_chain(c, 0, 1, 1)
    with pytest.raises(BadColors):
        kempe_chain(c, 0, 1, 3)


def test_uncolored_cycle_c5():
    g, c = c5_minus_edge()
    uc = uncolored_cycle(c, g, 4, 1, 2)
    assert isinstance(uc, UncoloredCycle)
    assert len(uc) == 5
    assert uc.cycle[0] == 4
    assert sorted(uc.cycle) == [0, 1, 2, 3, 4]


def test_uncolored_cycle_figure1():
    g, c = gen_figure1()
    e_bc = 5
    uc = uncolored_cycle(c, g, e_bc, 1, 3)
    assert isinstance(uc, UncoloredCycle)
    assert len(uc) % 2 == 1
    assert any(c[f] == 1 for f in uc.cycle[1:])


def test_uncolored_cycle_improvement():
    # e = (0, 3) uncolored; 2 is missing at 0, 1 at 3, and the 2/1 path from 3
    # stops at 4 instead of returning to 0
    g = Multigraph(5, [(0, 1), (1, 2), (3, 4), (0, 3)])
    c = PartialColoring(g, 2, [1, 2, 2, None])
    res = uncolored_cycle(c, g, 3, 2, 1)
    assert isinstance(res, Improvement)
    assert res.chain is not None
    better = res.apply(c)
    assert better.is_proper() and better.size == c.size + 1


def test_uncolored_cycle_wrong_colors():
    g, c = c5_minus_edge()
    with pytest.raises(BadColors):
        uncolored_cycle(c, g, 4, 1, 1)
    with pytest.raises(BadColors):
        uncolored_cycle(c, g, 0, 1, 2)


def test_shift_identity():
    g, c = c5_minus_edge()
    uc = uncolored_cycle(c, g, 4, 1, 2)
    same = shift_cycle(c, uc, 4)
    assert same.uncolored_edges() == [4]
    assert same.is_proper()


def test_shift_c5_one_step():
    g, c = c5_minus_edge()
    uc = uncolored_cycle(c, g, 4, 1, 2)
    f = uc.cycle[1]
    shifted = shift_cycle(c, uc, f)
    assert shifted.uncolored_edges() == [f]
    assert shifted.size == 4 and shifted.is_proper()


def test_shift_figure1_interior_edge():
    g, c = gen_figure1()
    uc = uncolored_cycle(c, g, 5, 1, 3)
    for f in uc.cycle[1:]:
        shifted = shift_cycle(c, uc, f)
        assert shifted.size == c.size
        assert shifted.is_proper()
        assert shifted[f] is None and shifted[5] is not None


def test_coloring_text_round_trip():
    g, c = gen_figure1()
    back = PartialColoring.from_text(g, c.to_text())
    assert back == c
    with pytest.raises(ColoringError):
        PartialColoring.from_text(g, "x 0 1\n")


def _random_proper(g, t, rng):
    colors = [None] * g.m
    order = list(range(g.m))
    rng.shuffle(order)
    c = PartialColoring(g, t, colors)
    for e in order:
        u, v = g.edges[e]
        free = sorted(c.missing_colors(u) & c.missing_colors(v))
        if free:
            c = c.recolor({e: rng.choice(free)})
    return c


@st.composite
def colored_graphs(draw):
    n = draw(st.integers(2, 7))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    g = Multigraph(n, draw(st.lists(pair, min_size=1, max_size=14)))
    t = draw(st.integers(2, max(2, g.max_degree + 1)))
    return _random_proper(g, t, random.Random(draw(st.integers(0, 10**6))))


@settings(max_examples=150, deadline=None)
@given(colored_graphs())
def test_kempe_chains_partition_two_colored_edges(c):
    for a in range(1, c.t + 1):
        for b in range(a + 1, c.t + 1):
            owner = {}
            for v in range(c.graph.n):
                chain = kempe_chain(c, v, a, b)
                for e in chain.edges:
                    owner.setdefault(e, set()).add(frozenset(chain.edges))
            ab = {e for e in range(c.graph.m) if c[e] in (a, b)}
            assert set(owner) == ab
            assert all(len(chains) == 1 for chains in owner.values())


@settings(max_examples=150, deadline=None)
@given(colored_graphs(), st.data())
def test_flip_is_size_preserving_involution(c, data):
    v = data.draw(st.integers(0, c.graph.n - 1))
    a, b = data.draw(st.sampled_from([(x, y) for x in range(1, c.t + 1) for y in range(1, c.t + 1) if x != y]))
    chain = kempe_chain(c, v, a, b)
    flipped = flip_chain(c, chain)
    assert flipped.is_proper()
    assert flipped.size == c.size
    assert flip_chain(flipped, kempe_chain(flipped, v, a, b)) == c


def test_maximum_certificates_never_yield_improvements():
    checked = 0
    for name, g in multi_corpus():
        if g.m > 9:
            continue
        c = certificate(name, g).coloring
        for e in c.uncolored_edges():
            u, v = g.edges[e]
            for a in c.missing_colors(u):
                for b in c.missing_colors(v):
                    uc = uncolored_cycle(c, g, e, a, b)
                    assert isinstance(uc, UncoloredCycle), name
                    assert len(uc) % 2 == 1 and len(uc) >= g.odd_girth()
                    checked += 1
    assert checked > 100
