import numpy as np
import pytest

import netphi
from netphi.errors import ConfigError, NetworkFormatError
from netphi.netmodel import (
    AdjacencyMatrix,
    NoiseCovariance,
    build_complete,
    build_cycle,
    load_network,
    paper_network,
)

from conftest import ALL_IDS, TABLE2


def spectrum(template):
    return np.sort(np.linalg.eigvalsh(template.weights))


class TestBuildComplete:
    def test_k10_spectrum(self):
        ev = spectrum(build_complete(10))
        assert np.allclose(ev, [-1] * 9 + [9], atol=1e-12)

    def test_two_nodes(self):
        assert np.array_equal(build_complete(2).weights, [[0, 1], [1, 0]])

    def test_k3_spectrum_matches_brute_force(self):
        # independent oracle: eigensolve of the explicit J - I matrix
        oracle = np.sort(np.linalg.eigvalsh(np.ones((3, 3)) - np.eye(3)))
        assert np.allclose(spectrum(build_complete(3)), oracle, atol=0)
        assert np.allclose(oracle, [-1, -1, 2], atol=1e-12)

    def test_too_small(self):
        with pytest.raises(ConfigError):
            build_complete(1)


class TestBuildCycle:
    def test_c10_spectrum(self):
        # circulant eigenvalues 2cos(2*pi*k/n)
        oracle = np.sort(2 * np.cos(2 * np.pi * np.arange(10) / 10))
        assert np.allclose(spectrum(build_cycle(10)), oracle, atol=1e-12)

    def test_c4_spectrum(self):
        assert np.allclose(spectrum(build_cycle(4)), [-2, 0, 0, 2], atol=1e-12)

    def test_c3_equals_k3(self):
        assert np.array_equal(build_cycle(3).weights, build_complete(3).weights)

    def test_too_small(self):
        with pytest.raises(ConfigError):
            build_cycle(2)


class TestPaperNetworks:
    def test_network1_is_complete(self):
        assert np.array_equal(paper_network(1).weights, build_complete(10).weights)

    def test_network6_is_cycle(self):
        assert np.array_equal(paper_network(6).weights, build_cycle(10).weights)

    def test_network3_is_cycle_plus_antipodal_matching(self):
        expected = build_cycle(10).weights.copy()
        for i in range(5):
            expected[i, i + 5] = expected[i + 5, i] = 1.0
        assert np.array_equal(paper_network(3).weights, expected)

    @pytest.mark.parametrize("network_id", ALL_IDS)
    def test_unit_spectrum_matches_published_table(self, network_id):
        ev = spectrum(paper_network(network_id))
        expected = np.sort(np.array(TABLE2[network_id], dtype=float))
        rel = np.abs(ev - expected) / np.maximum(np.abs(expected), 1.0)
        assert np.max(rel) <= 1e-5

    @pytest.mark.parametrize("network_id", ALL_IDS)
    def test_templates_are_unit_weight_no_self_loops(self, network_id):
        t = paper_network(network_id)
        assert not t.has_self_loops
        assert set(np.unique(t.weights)) <= {0.0, 1.0}
        assert t.symmetric

    def test_unknown_id(self):
        with pytest.raises(ConfigError):
            paper_network(7)

    @pytest.mark.parametrize("g", [0.0, 0.3, 1.7])
    def test_spectrum_scales_linearly_in_coupling(self, g):
        t = paper_network(4)
        assert np.allclose(
            np.linalg.eigvalsh(g * t.weights), g * np.linalg.eigvalsh(t.weights),
            atol=1e-12,
        )

    def test_builders_deterministic(self):
        assert np.array_equal(paper_network(2).weights, paper_network(2).weights)
        assert np.array_equal(build_complete(7).weights, build_complete(7).weights)


class TestLoadNetwork:
    def _write_k10(self, path, g=None):
        lines = ["n 10 symmetric true noise 1.0" + (f" g {g}" if g is not None else "")]
        for i in range(10):
            for j in range(i + 1, 10):
                lines.append(f"{i} {j} 1")
        path.write_text("\n".join(lines) + "\n")

    def test_k10_with_coupling(self, tmp_path):
        f = tmp_path / "k10.txt"
        self._write_k10(f)
        model = load_network(f, coupling=0.05)
        radius = np.max(np.abs(np.linalg.eigvalsh(model.effective_weights)))
        assert abs(radius - 0.45) < 1e-12

    def test_header_coupling(self, tmp_path):
        f = tmp_path / "k10.txt"
        self._write_k10(f, g=0.05)
        assert load_network(f).coupling == 0.05

    def test_isolated_node(self, tmp_path):
        f = tmp_path / "one.txt"
        f.write_text("n 1 symmetric true noise 2.0\n")
        model = load_network(f)
        assert model.n == 1
        assert model.adjacency.weights[0, 0] == 0.0
        assert model.noise.matrix[0, 0] == 2.0

    def test_asymmetric_under_symmetric_flag(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("n 3 symmetric true noise 1.0\n0 1 1\n1 0 2\n")
        with pytest.raises(NetworkFormatError):
            load_network(f)

    def test_asymmetric_allowed_when_flag_false(self, tmp_path):
        f = tmp_path / "dir.txt"
        f.write_text("n 2 symmetric false noise 1.0\n0 1 0.5\n")
        model = load_network(f)
        assert model.adjacency.weights[0, 1] == 0.5
        assert model.adjacency.weights[1, 0] == 0.0

    def test_noise_from_file(self, tmp_path):
        noise = tmp_path / "noise.txt"
        noise.write_text("2.0 0.5\n0.5 1.0\n")
        f = tmp_path / "net.txt"
        f.write_text("n 2 symmetric true noise noise.txt\n0 1 1\n")
        model = load_network(f)
        assert np.allclose(model.noise.matrix, [[2.0, 0.5], [0.5, 1.0]])

    def test_non_pd_noise(self, tmp_path):
        noise = tmp_path / "noise.txt"
        noise.write_text("1.0 2.0\n2.0 1.0\n")
        f = tmp_path / "net.txt"
        f.write_text("n 2 symmetric true noise noise.txt\n0 1 1\n")
        with pytest.raises(NetworkFormatError):
            load_network(f)

    def test_missing_file(self, tmp_path):
        with pytest.raises(NetworkFormatError):
            load_network(tmp_path / "nope.txt")

    def test_malformed_edge(self, tmp_path):
        f = tmp_path / "bad.txt"
        f.write_text("n 2 symmetric true noise 1.0\n0 1\n")
        with pytest.raises(NetworkFormatError):
            load_network(f)


class TestTypes:
    def test_negative_coupling_rejected(self):
        with pytest.raises(ConfigError):
            netphi.NetworkModel(build_cycle(3), -0.1, NoiseCovariance.isotropic(3))

    def test_asymmetric_matrix_with_symmetric_flag(self):
        with pytest.raises(NetworkFormatError):
            AdjacencyMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]), symmetric=True)

    def test_non_finite_rejected(self):
        with pytest.raises(ConfigError):
            AdjacencyMatrix(np.array([[0.0, np.inf], [np.inf, 0.0]]))

    def test_weights_immutable(self):
        t = build_cycle(4)
        with pytest.raises(ValueError):
            t.weights[0, 0] = 5.0
