import pytest

from deltacolor.exact import chromatic_index, is_t_edge_colorable, max_delta_subgraph
from deltacolor.generators import (
    FamilySpec,
    fat_cycle_extremal_subgraph,
    gen_fat_cycle,
    gen_figure1,
    gen_flower,
    gen_hr_chain,
    gen_random_class2,
    petersen,
)
from deltacolor.multigraph import Multigraph


@pytest.mark.parametrize("k,n,m,delta", [(1, 3, 6, 4), (2, 5, 20, 8), (3, 7, 42, 12)])
def test_fat_cycle_shape(k, n, m, delta):
    g = gen_fat_cycle(k)
    assert (g.n, g.m, g.max_degree, g.max_multiplicity) == (n, m, delta, 2 * k)


def test_fat_cycle_k3_maximum():
    g = gen_fat_cycle(3)
    assert max_delta_subgraph(g).size == 36


@pytest.mark.parametrize("k", [1, 2, 3])
def test_fat_cycle_extremal_subgraph_colorable(k):
    g = gen_fat_cycle(k)
    keep = fat_cycle_extremal_subgraph(k)
    assert len(keep) == 4 * k * k
    assert is_t_edge_colorable(g.edge_subgraph(keep), 4 * k)


def test_hr_chain_r1():
    g = gen_hr_chain(1)
    assert (g.n, g.m) == (14, 21)
    assert set(g.degrees()) == {3}
    assert g.is_simple() and g.is_connected()
    cert = max_delta_subgraph(g)
    assert cert.subgraph().min_degree == 2


def test_hr_chain_r2_shape():
    g = gen_hr_chain(2)
    assert set(g.degrees()) == {5}
    assert g.is_simple() and g.is_connected()
    # two hubs plus 2r blocks of K_{5,5} vertices
    assert g.n == 2 + 2 * 2 * 10
    assert g.m == 2 * 2 * 26 + 1


def test_flower_shapes():
    g = gen_flower(2)
    assert (g.n, g.m, g.max_multiplicity) == (5, 10, 3)
    assert set(g.degrees()) == {4}
    g = gen_flower(3)
    assert (g.n, g.m) == (7, 21)
    assert set(g.degrees()) == {6}


def test_figure1():
    g, c = gen_figure1()
    assert g.max_degree == 4 and g.max_multiplicity == 2
    assert c.missing_colors(0) == {4}
    assert c.missing_colors(1) == {3}
    assert c.missing_colors(2) == {1, 2}
    assert sorted(g.edges[e] for e in c.uncolored_edges()) == [(0, 2), (1, 2)]
    assert c.size == 4 == max_delta_subgraph(g).size


def test_petersen():
    g = petersen()
    assert (g.n, g.m) == (10, 15) and set(g.degrees()) == {3}
    assert g.girth() == 5


def test_random_class2():
    g = gen_random_class2(1, 5, 1)
    assert g.is_simple() and g.is_connected()
    assert chromatic_index(g).graph_class == 2
    assert gen_random_class2(1, 5, 1) == g
    h = gen_random_class2(2, 4, 3)
    assert chromatic_index(h).chi > h.max_degree


def test_random_class2_bad_parameters():
    with pytest.raises(ValueError):
        gen_random_class2(0, 11, 1)


def test_family_spec():
    spec = FamilySpec("fat-cycle", {"k": 2})
    assert spec.describe() == "family fat-cycle k=2"
    g = spec.build()
    assert Multigraph.from_text(g.to_text([spec.describe()])) == g
    with pytest.raises(ValueError):
        FamilySpec("nope")
    with pytest.raises(ValueError):
        FamilySpec("flower", {"k": 0})
