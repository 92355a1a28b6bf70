import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirtda import (
    DistanceMatrix,
    betti_at,
    load_diagram,
    persistence,
    rips_filtration,
    save_diagram,
    total_persistence,
)
from dirtda.homology import diagram_from_dict, diagram_to_dict

from naive_homology import naive_persistence


def dm(entries):
    d = np.array(entries, dtype=float)
    return DistanceMatrix(d, tuple(f"n{i}" for i in range(d.shape[0])))


UNIT_TRIANGLE = dm([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
# 4-cycle: adjacent nodes at 1, diagonals at 2
SQUARE = dm(
    [
        [0, 1, 2, 1],
        [1, 0, 1, 2],
        [2, 1, 0, 1],
        [1, 2, 1, 0],
    ]
)


def random_distance_matrix(rng, n, values=(0.2, 0.4, 0.6, 0.8, 1.0)):
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = rng.choice(values)
    return dm(d)


class TestRipsFiltration:
    def test_unit_triangle_enumeration(self):
        f = rips_filtration(UNIT_TRIANGLE, max_dim=1)
        by_dim = {}
        for s in f.simplices:
            by_dim.setdefault(s.dim, []).append(s)
        assert len(by_dim[0]) == 3 and all(s.value == 0.0 for s in by_dim[0])
        assert len(by_dim[1]) == 3 and all(s.value == 1.0 for s in by_dim[1])
        assert len(by_dim[2]) == 1 and by_dim[2][0].value == 1.0

    def test_single_node(self):
        f = rips_filtration(dm([[0.0]]), max_dim=1)
        assert len(f.simplices) == 1
        assert f.simplices[0].vertices == (0,)

    def test_all_zero_distances(self):
        f = rips_filtration(dm(np.zeros((4, 4))), max_dim=2)
        assert all(s.value == 0.0 for s in f.simplices)

    def test_face_before_coface(self):
        f = rips_filtration(SQUARE, max_dim=2)
        position = {s.vertices: i for i, s in enumerate(f.simplices)}
        for s in f.simplices:
            if s.dim == 0:
                continue
            for drop in range(len(s.vertices)):
                face = s.vertices[:drop] + s.vertices[drop + 1 :]
                assert position[face] < position[s.vertices]

    def test_simplex_count_includes_cofaces(self):
        # killing dim-2 features needs 3-simplices: sizes 1..4 of 5 nodes
        f = rips_filtration(random_distance_matrix(np.random.default_rng(0), 5), 2)
        assert len(f.simplices) == 5 + 10 + 10 + 5

    @pytest.mark.parametrize("bad", [0, 3, -1])
    def test_max_dim_domain(self, bad):
        with pytest.raises(ValueError):
            rips_filtration(UNIT_TRIANGLE, max_dim=bad)


class TestPersistenceHandComputed:
    def test_unit_triangle(self):
        dia = persistence(rips_filtration(UNIT_TRIANGLE, max_dim=2))
        assert dia.pairs == (
            (0, 0.0, 1.0),
            (0, 0.0, 1.0),
            (0, 0.0, math.inf),
        )

    def test_square_cycle(self):
        dia = persistence(rips_filtration(SQUARE, max_dim=2))
        assert dia.pairs == (
            (0, 0.0, 1.0),
            (0, 0.0, 1.0),
            (0, 0.0, 1.0),
            (0, 0.0, math.inf),
            (1, 1.0, 2.0),
        )

    def test_isolated_nodes_single_merge_scale(self):
        n, dist = 5, 0.7
        mat = np.full((n, n), dist)
        np.fill_diagonal(mat, 0.0)
        dia = persistence(rips_filtration(dm(mat), max_dim=2))
        finite = [p for p in dia.pairs if p[0] == 0 and math.isfinite(p[2])]
        assert len(finite) == n - 1
        assert all(p == (0, 0.0, dist) for p in finite)
        assert (0, 0.0, math.inf) in dia.pairs


class TestPersistenceInvariants:
    def test_dim0_count_equals_nodes(self):
        rng = np.random.default_rng(3)
        for n in (1, 2, 5, 7):
            dia = persistence(rips_filtration(random_distance_matrix(rng, n), 1))
            assert len(dia.in_dim(0)) == n

    def test_no_zero_persistence_pairs(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            dia = persistence(rips_filtration(random_distance_matrix(rng, 6), 2))
            for _, birth, death in dia.pairs:
                assert death > birth

    def test_single_infinite_dim0_pair(self):
        rng = np.random.default_rng(5)
        dia = persistence(rips_filtration(random_distance_matrix(rng, 6), 2))
        essential = [p for p in dia.pairs if math.isinf(p[2])]
        assert essential == [(0, 0.0, math.inf)]

    def test_deterministic(self):
        mat = random_distance_matrix(np.random.default_rng(6), 6)
        assert persistence(rips_filtration(mat, 2)).pairs == persistence(
            rips_filtration(mat, 2)
        ).pairs


class TestOracleEquivalence:
    """The reduction must agree exactly with the rank-based oracle."""

    @pytest.mark.parametrize("max_dim", [1, 2])
    def test_small_random_matrices(self, max_dim):
        rng = np.random.default_rng(7)
        for _ in range(30):
            n = int(rng.integers(1, 7))
            mat = random_distance_matrix(rng, n)
            got = list(persistence(rips_filtration(mat, max_dim)).pairs)
            assert got == naive_persistence(mat.dist, max_dim)

    def test_heavy_ties(self):
        # only two distinct positive distances force many simultaneous events
        rng = np.random.default_rng(8)
        for _ in range(20):
            mat = random_distance_matrix(rng, 6, values=(0.5, 1.0))
            got = list(persistence(rips_filtration(mat, 2)).pairs)
            assert got == naive_persistence(mat.dist, 2)

    def test_continuous_distances(self):
        rng = np.random.default_rng(9)
        for _ in range(15):
            n = int(rng.integers(2, 7))
            raw = rng.uniform(0.1, 1.0, size=(n, n))
            mat = dm(np.triu(raw, 1) + np.triu(raw, 1).T)
            got = list(persistence(rips_filtration(mat, 2)).pairs)
            assert got == naive_persistence(mat.dist, 2)


class TestStability:
    def test_bottleneck_under_perturbation(self):
        # matched births/deaths move by at most the entrywise perturbation
        from dirtda import bottleneck

        rng = np.random.default_rng(10)
        delta = 0.01
        for _ in range(10):
            raw = rng.uniform(0.2, 1.0, size=(8, 8))
            base = np.triu(raw, 1) + np.triu(raw, 1).T
            noise = rng.uniform(-delta, delta, size=(8, 8))
            noise = np.triu(noise, 1) + np.triu(noise, 1).T
            a = persistence(rips_filtration(dm(base), 2))
            b = persistence(rips_filtration(dm(np.clip(base + noise, 0, None)), 2))
            for dim in (0, 1, 2):
                assert bottleneck(a, b, dim) <= delta + 1e-12


class TestBettiAt:
    def test_unit_triangle_before_merge(self):
        dia = persistence(rips_filtration(UNIT_TRIANGLE, 2))
        assert betti_at(dia, 0.5, 0) == 3

    def test_unit_triangle_after_merge(self):
        dia = persistence(rips_filtration(UNIT_TRIANGLE, 2))
        assert betti_at(dia, 1.0, 0) == 1

    def test_square_cycle_alive(self):
        dia = persistence(rips_filtration(SQUARE, 2))
        assert betti_at(dia, 1.5, 1) == 1

    def test_negative_epsilon_rejected(self):
        dia = persistence(rips_filtration(SQUARE, 2))
        with pytest.raises(ValueError):
            betti_at(dia, -0.1, 0)


class TestTotalPersistence:
    def test_square_h1(self):
        dia = persistence(rips_filtration(SQUARE, 2))
        assert total_persistence(dia, 1) == 1.0

    def test_ignores_infinite(self):
        dia = persistence(rips_filtration(UNIT_TRIANGLE, 2))
        assert total_persistence(dia, 0) == 2.0


class TestSerialization:
    def test_round_trip(self, tmp_path):
        dia = persistence(rips_filtration(SQUARE, 2))
        path = tmp_path / "dia.json"
        save_diagram(dia, str(path))
        assert load_diagram(str(path)).pairs == dia.pairs

    def test_infinite_encoded_as_string(self):
        dia = persistence(rips_filtration(UNIT_TRIANGLE, 2))
        doc = diagram_to_dict(dia)
        deaths = [p["death"] for p in doc["pairs"]]
        assert "inf" in deaths
        assert json.loads(json.dumps(doc)) == doc
        assert diagram_from_dict(doc).pairs == dia.pairs


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=0, max_value=2**32 - 1))
def test_oracle_equivalence_property(n, seed):
    rng = np.random.default_rng(seed)
    mat = random_distance_matrix(rng, n)
    assert list(persistence(rips_filtration(mat, 2)).pairs) == naive_persistence(
        mat.dist, 2
    )
