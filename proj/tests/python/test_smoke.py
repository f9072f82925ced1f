from fractions import Fraction

import networkx as nx
import pytest

import souvlaki


def as_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.num_vertices))
    h.add_edges_from(g.edges())
    return h


@pytest.mark.parametrize("k", [1, 2, 3])
def test_volume_matches_left_piece(k):
    expected = (6 ** (k + 1) - 1) // 5 * (k**4 + k**2)
    assert souvlaki.volume(k) == expected
    assert len(souvlaki.meatball(k, left_only=True)) == expected


def test_root_level_probability_is_exact():
    p = souvlaki.root_level_prob(1, 2, 7)
    assert isinstance(p, Fraction)
    assert p == Fraction(686, 6706)
    lo, hi = souvlaki.limit_level_prob(1)
    assert lo <= hi and hi - lo <= Fraction(1, 10**9)


def test_tree_counts():
    t = souvlaki.tree(2)
    assert t.graph.num_vertices == 8470
    assert t.graph.num_edges == 16611
    assert t.components == nx.number_connected_components(as_nx(t.graph))
    assert t.graph.max_degree() == 15


def test_energy_exact_equals_analytic():
    for k in (1, 2):
        assert souvlaki.energy_exact(k) == souvlaki.energy_analytic(k)
    assert souvlaki.energy_analytic(1)["total"] == Fraction(37, 3)


def test_resistance_against_networkx():
    m1 = souvlaki.meatball(1)
    h = as_nx(m1)
    r, residual, _ = souvlaki.effective_resistance(m1, [0], [m1.num_vertices - 1])
    assert residual <= 1e-10
    assert r == pytest.approx(nx.resistance_distance(h, 0, m1.num_vertices - 1), rel=1e-8)
    exact = souvlaki.exact_effective_resistance(m1, [0], [m1.num_vertices - 1])
    assert float(exact) == pytest.approx(r, rel=1e-9)


def test_spine_resistance_below_flow_energy():
    s = souvlaki.spine(2)
    r, _, _ = souvlaki.effective_resistance(s.graph, [s.source], s.frontier())
    assert 0 < r <= float(souvlaki.concatenated_energy(2))
    escape, via = souvlaki.escape_probability(s)
    assert escape == pytest.approx(via, abs=1e-6)


def test_walk_is_seeded():
    t = souvlaki.tree(2)
    start = souvlaki.bush_starts(t.graph, 1, 3)[0]
    a = souvlaki.spine_hitting(t.graph, start, 200, 10000, 5)
    b = souvlaki.spine_hitting(t.graph, start, 200, 10000, 5)
    assert a == b
    assert a["frequency"] >= 0.99


def test_mtp_and_delta():
    lhs, rhs = souvlaki.mtp_random(2, 7, 1, 4)
    assert lhs == rhs
    path = souvlaki.meatball(1, left_only=True)
    assert souvlaki.gromov_delta(path) >= 0
    assert souvlaki.radial_symmetry_deviation(1) <= 1e-9


def test_cli_entry_point():
    code, out, _ = souvlaki.run(["census", "--n", "2"])
    assert code == 0
    assert "49/479" in out
    code, _, err = souvlaki.run(["walk", "--n", "2"])
    assert code == 2 and err


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        souvlaki.root_level_prob(1, 2, 6)
