import math
from pathlib import Path

import pytest

import qdcolor

DATA = Path(__file__).resolve().parents[2] / "data"


def test_graph_loading():
    g = qdcolor.load_graph(str(DATA / "myciel5.col"))
    assert (g.num_nodes, g.num_edges) == (47, 236)
    assert g.degrees[g.j_max()] == g.max_degree


def test_parse_errors_are_value_errors():
    with pytest.raises(ValueError):
        qdcolor.parse_dimacs("p edge 3 1\ne 1 9\n")
    with pytest.raises(qdcolor.ParseError):
        qdcolor.parse_edge_list("a b\n")


def test_state_helpers():
    psi = qdcolor.lx_ground_state(3)
    assert psi == pytest.approx([0.5, math.sqrt(0.5), 0.5])
    back = qdcolor.spherical_to_amplitudes(qdcolor.amplitudes_to_angles(psi))
    assert back == pytest.approx(psi)


def test_potts_energy():
    tri = qdcolor.Graph.from_pairs([(0, 1), (1, 2), (0, 2)])
    assert qdcolor.potts_energy(tri, [0, 0, 0]) == 3
    assert qdcolor.potts_energy(tri, [0, 1, 2]) == 0


def test_single_run_solves_queen5():
    g = qdcolor.load_graph(str(DATA / "queen5-5.col"))
    hp = qdcolor.Hyperparameters()
    hp.num_colors = 5
    rec = qdcolor.run_single(g, hp, 0, trajectory=True)
    assert rec["best_energy"] == 0
    assert qdcolor.potts_energy(g, rec["best_coloring"]) == 0
    assert len(rec["trajectory"]) == rec["steps"]


def test_batch_is_reproducible():
    g = qdcolor.load_graph(str(DATA / "myciel4.col"))
    hp = qdcolor.Hyperparameters()
    hp.num_colors = 4
    hp.num_runs = 4
    hp.num_steps = 100
    hp.method = qdcolor.Method.QdGD
    a = qdcolor.run_batch(g, hp, timing=False)
    b = qdcolor.run_batch(g, hp, workers=2, timing=False)
    assert a == b
    assert a["runs"] == 4


def test_invalid_hyperparameters():
    hp = qdcolor.Hyperparameters()
    hp.num_colors = 1
    with pytest.raises(ValueError, match="colors must be"):
        hp.validate()
    with pytest.raises(ValueError):
        hp.alpha = "exp:2"


def test_gradient_check():
    g = qdcolor.load_graph(str(DATA / "queen5-5.col"))
    report = qdcolor.check_gradient(g, 5, t=0.4, seed=3)
    assert report["passed"]
