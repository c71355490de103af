import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threshsync.errors import DimensionMismatch, IsolatedVertex, NotUnitVectors
from threshsync.graphs import Graph, build_threshold, complete, cycle, star
from threshsync.landscape import (
    Classification,
    TwinCaseId,
    block_descent_value,
    circular_diameter,
    classify,
    energy,
    gradient,
    hessian,
    is_synchronous,
    local_order,
    mu_all,
    twin_case,
    wrap,
)

SPLAY3 = np.array([0.0, 2 * np.pi / 3, 4 * np.pi / 3])
SPLAY5 = 2 * np.pi * np.arange(5) / 5


def fd_gradient(g, th, h=1e-5):
    out = np.zeros_like(th)
    for i in range(th.size):
        e = np.zeros_like(th)
        e[i] = h
        out[i] = (energy(g, th + e) - energy(g, th - e)) / (2 * h)
    return out


def brute_diameter(th):
    d = 0.0
    for a, b in itertools.combinations(th, 2):
        x = abs((a - b) % (2 * np.pi))
        d = max(d, min(x, 2 * np.pi - x))
    return d


def random_code(rng, n):
    return "".join(rng.choice(["0", "1"], size=n - 2)) + "1"


class TestEnergy:
    def test_synchronous_is_zero(self):
        g = build_threshold("01101")
        assert energy(g, np.full(g.n, 0.7)) == pytest.approx(0.0, abs=1e-15)

    def test_k3_splay(self):
        # three edges, each 1 - cos(2 pi / 3) = 1.5
        assert energy(complete(3), SPLAY3) == pytest.approx(4.5, abs=1e-12)

    def test_k2_antipodal(self):
        assert energy(complete(2), [0.0, np.pi]) == pytest.approx(2.0)

    def test_dimension(self):
        with pytest.raises(DimensionMismatch):
            energy(complete(3), [0.0, 1.0])

    def test_rotation_invariance(self):
        rng = np.random.default_rng(1)
        g = build_threshold("0101101")
        for _ in range(20):
            th = rng.uniform(-np.pi, np.pi, g.n)
            c = rng.uniform(-10, 10)
            assert abs(energy(g, th) - energy(g, th + c)) < 1e-12


class TestGradient:
    def test_synchronous(self):
        assert np.all(gradient(star(4), np.zeros(5)) == 0)

    def test_k3_splay(self):
        assert np.max(np.abs(gradient(complete(3), SPLAY3))) < 1e-14

    def test_k2(self):
        # -sin(pi/2) and -sin(-pi/2)
        assert np.allclose(gradient(complete(2), [0.0, np.pi / 2]), [-1.0, 1.0])

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            n = int(rng.integers(2, 15))
            g = build_threshold(random_code(rng, n))
            th = rng.uniform(-np.pi, np.pi, n)
            assert np.allclose(gradient(g, th), fd_gradient(g, th), rtol=1e-6, atol=1e-8)

    def test_sums_to_zero(self):
        rng = np.random.default_rng(3)
        g = cycle(7)
        th = rng.uniform(-np.pi, np.pi, 7)
        assert abs(gradient(g, th).sum()) < 1e-13


class TestHessian:
    def test_synchronous_is_laplacian(self):
        g = build_threshold("0110101")
        assert np.max(np.abs(hessian(g, np.zeros(g.n)) - g.laplacian())) < 1e-12

    def test_k3_splay(self):
        H = hessian(complete(3), SPLAY3)
        assert np.allclose(np.diag(H), -1.0)
        assert np.allclose(H[~np.eye(3, dtype=bool)], 0.5)

    def test_single_vertex(self):
        assert hessian(Graph(1), [0.3]).tolist() == [[0.0]]

    def test_matches_finite_difference_of_gradient(self):
        rng = np.random.default_rng(4)
        g = build_threshold("01101011")
        th = rng.uniform(-np.pi, np.pi, g.n)
        h = 1e-6
        fd = np.column_stack([
            (gradient(g, th + h * e) - gradient(g, th - h * e)) / (2 * h)
            for e in np.eye(g.n)])
        assert np.allclose(hessian(g, th), fd, atol=1e-8)

    def test_rows_sum_to_zero_and_symmetric(self):
        rng = np.random.default_rng(5)
        g = build_threshold("0011011")
        H = hessian(g, rng.uniform(-np.pi, np.pi, g.n))
        assert np.max(np.abs(H.sum(axis=1))) < 1e-12
        assert np.array_equal(H, H.T)


class TestMu:
    def test_synchronous_is_degree(self):
        g = build_threshold("01011")
        assert np.allclose(mu_all(g, np.zeros(g.n)), g.degrees)

    def test_c5_splay(self):
        assert np.allclose(mu_all(cycle(5), SPLAY5), 2 * np.cos(2 * np.pi / 5), atol=1e-12)
        assert 2 * np.cos(2 * np.pi / 5) == pytest.approx(0.6180, abs=1e-4)

    def test_k3_splay(self):
        assert np.allclose(mu_all(complete(3), SPLAY3), -1.0)

    def test_alignment_identity_at_equilibrium(self):
        # at an equilibrium the neighbour phasor sum has length |mu_i|
        g = cycle(5)
        A = g.adjacency()
        s = np.stack([A @ np.cos(SPLAY5), A @ np.sin(SPLAY5)], axis=1)
        assert np.allclose(np.linalg.norm(s, axis=1), np.abs(mu_all(g, SPLAY5)))


class TestLocalOrder:
    def test_synchronous(self):
        assert local_order(star(3), np.zeros(4), 1) == pytest.approx(1.0)

    def test_star_cancellation(self):
        assert local_order(star(2), [0.0, 0.0, np.pi], 1) == pytest.approx(0.0, abs=1e-15)

    def test_c5_splay(self):
        assert local_order(cycle(5), SPLAY5, 3) == pytest.approx(np.cos(2 * np.pi / 5))

    def test_isolated(self):
        with pytest.raises(IsolatedVertex):
            local_order(Graph(2), np.zeros(2), 1)

    def test_bounds(self):
        rng = np.random.default_rng(6)
        g = build_threshold("0101101")
        th = rng.uniform(-np.pi, np.pi, g.n)
        for i in g.vertices:
            assert 0.0 <= local_order(g, th, i) <= 1.0

    def test_degree_times_order_is_abs_mu_at_equilibrium(self):
        g = cycle(5)
        mu = mu_all(g, SPLAY5)
        for i in g.vertices:
            assert g.degree(i) * local_order(g, SPLAY5, i) == pytest.approx(abs(mu[i - 1]))


class TestClassify:
    def test_synchronous_minimum(self):
        g = build_threshold("0101")
        assert classify(g, np.full(g.n, 1.0)).classification == Classification.SYNCHRONOUS_MINIMUM

    def test_k3_splay_saddle(self):
        rep = classify(complete(3), SPLAY3)
        assert rep.classification == Classification.SADDLE
        H = hessian(complete(3), SPLAY3)
        assert rep.witness @ H @ rep.witness < 0

    def test_c5_splay_nonsync_sosp(self):
        rep = classify(cycle(5), SPLAY5)
        assert rep.classification == Classification.NON_SYNC_SOSP
        assert rep.min_hessian_eigenvalue >= -1e-8
        # circulant spectrum 2cos(2pi/5)(1 - cos(2 pi k / 5))
        k = np.arange(5)
        expected = np.sort(2 * np.cos(2 * np.pi / 5) * (1 - np.cos(2 * np.pi * k / 5)))
        assert np.allclose(np.linalg.eigvalsh(hessian(cycle(5), SPLAY5)), expected)

    def test_not_equilibrium(self):
        rep = classify(complete(2), [0.0, 1.0])
        assert rep.classification == Classification.NOT_EQUILIBRIUM
        assert rep.witness is None

    def test_coordinate_witness(self):
        # star with one leaf antipodal: that leaf has mu = -1
        th = [0.0, 0.0, np.pi, 0.0]
        rep = classify(star(3), th)
        assert rep.classification == Classification.SADDLE
        assert rep.witness @ hessian(star(3), th) @ rep.witness < 0

    def test_eigenvector_witness(self):
        # four edges with gap pi/3 and one with gap 2pi/3: every sine equal, so an
        # equilibrium; mu = (0, 1, 1, 1, 0) is never negative, yet the Hessian is a
        # cycle Laplacian with one edge weight -1/2 and is indefinite
        th = np.pi / 3 * np.arange(5)
        g = cycle(5)
        assert np.allclose(mu_all(g, th), [0, 1, 1, 1, 0], atol=1e-12)
        rep = classify(g, th)
        assert rep.classification == Classification.SADDLE
        assert rep.min_hessian_eigenvalue < -1e-3
        assert rep.witness @ hessian(g, th) @ rep.witness < 0

    def test_report_json_keys(self):
        d = classify(complete(3), SPLAY3).to_dict()
        assert list(d) == ["energy", "gradient_norm", "mu", "min_eig", "class", "witness"]

    def test_witness_soundness_random_equilibria(self):
        # antipodal splits of a star are equilibria; all non-sync ones are saddles
        g = star(4)
        for mask in range(1, 2 ** 5):
            th = np.array([np.pi if mask >> i & 1 else 0.0 for i in range(5)])
            rep = classify(g, th)
            if rep.classification == Classification.SADDLE:
                assert rep.witness @ hessian(g, th) @ rep.witness < 0
            else:
                assert rep.classification == Classification.SYNCHRONOUS_MINIMUM


class TestBlockDescent:
    def test_synchronous_nonnegative(self):
        g = build_threshold("01011")
        for r in range(1, g.n + 1):
            for block in itertools.combinations(g.vertices, r):
                assert block_descent_value(g, np.zeros(g.n), block) >= 0

    def test_k2_antipodal(self):
        assert block_descent_value(complete(2), [0.0, np.pi], [1]) == pytest.approx(-1.0)

    def test_whole_vertex_set(self):
        rng = np.random.default_rng(7)
        g = build_threshold("0110")
        assert block_descent_value(g, rng.normal(size=g.n), g.vertices) == 0.0

    def test_matches_quadratic_form(self):
        rng = np.random.default_rng(8)
        g = build_threshold("0101101")
        th = rng.uniform(-np.pi, np.pi, g.n)
        H = hessian(g, th)
        for block in ([1, 3], [2, 4, 6, 8], [5]):
            x = np.zeros(g.n)
            x[np.array(block) - 1] = 1
            assert block_descent_value(g, th, block) == pytest.approx(x @ H @ x)


class TestTwinCase:
    def test_equal(self):
        tc = twin_case([1, 0], [1, 0], [2, 0])
        assert tc.case_id == TwinCaseId.EQUAL and tc.mu_a == tc.mu_b == 3

    def test_antipodal(self):
        tc = twin_case([1, 0], [-1, 0], [-1.5, 0])
        assert tc.case_id == TwinCaseId.ANTIPODAL
        assert (tc.mu_a, tc.mu_b) == pytest.approx((-2.5, 0.5))

    def test_free_at_minus_one(self):
        tc = twin_case([1, 0], [0, 1], [-1, -1])
        assert tc.case_id == TwinCaseId.FREE_AT_MINUS_ONE
        assert (tc.mu_a, tc.mu_b) == pytest.approx((-1, -1))

    def test_not_twins(self):
        assert twin_case([1, 0], [0, 1], [3, 0]).case_id == TwinCaseId.NOT_GEOMETRIC_TWINS

    def test_not_unit(self):
        with pytest.raises(NotUnitVectors):
            twin_case([2, 0], [1, 0], [0, 0])

    @given(st.integers(0, 2), st.floats(0, 2 * np.pi), st.floats(0, 2 * np.pi),
           st.floats(-5, 5))
    @settings(max_examples=300)
    def test_exhaustive_trichotomy(self, branch, a, b, mu):
        va = np.array([np.cos(a), np.sin(a)])
        if branch == 0:
            vb = va.copy()
            q = mu * va - vb
        elif branch == 1:
            vb = -va
            q = (mu + 1) * va
        else:
            vb = np.array([np.cos(b), np.sin(b)])
            q = -va - vb
        tc = twin_case(va, vb, q)
        assert tc.case_id != TwinCaseId.NOT_GEOMETRIC_TWINS
        tol = 1e-8 * (1 + np.linalg.norm(q))
        assert np.linalg.norm(vb + q - tc.mu_a * va) < tol
        assert np.linalg.norm(va + q - tc.mu_b * vb) < tol
        if tc.case_id == TwinCaseId.EQUAL:
            assert np.allclose(va, vb, atol=1e-8) and abs(tc.mu_a - tc.mu_b) < tol
        elif tc.case_id == TwinCaseId.ANTIPODAL:
            assert np.allclose(va, -vb, atol=1e-8) and abs(tc.mu_a + tc.mu_b + 2) < tol
        else:
            assert abs(tc.mu_a + 1) < tol and abs(tc.mu_b + 1) < tol
            assert np.linalg.norm(va + vb + q) < tol

    def test_ten_thousand_constructed_triples(self):
        rng = np.random.default_rng(10_000)
        for _ in range(10_000):
            branch = rng.integers(3)
            a, b = rng.uniform(0, 2 * np.pi, 2)
            mu = rng.uniform(-5, 5)
            va = np.array([np.cos(a), np.sin(a)])
            if branch == 0:
                vb, q = va, mu * va - va
            elif branch == 1:
                vb, q = -va, (mu + 1) * va
            else:
                vb = np.array([np.cos(b), np.sin(b)])
                q = -va - vb
            tc = twin_case(va, vb, q)
            assert tc.case_id != TwinCaseId.NOT_GEOMETRIC_TWINS
            tol = 1e-8 * (1 + np.linalg.norm(q))
            assert np.linalg.norm(vb + q - tc.mu_a * va) < tol
            assert np.linalg.norm(va + q - tc.mu_b * vb) < tol


class TestSynchrony:
    def test_examples(self):
        assert is_synchronous([0.1, 0.1, 0.1], 1e-6)
        assert not is_synchronous([0.0, np.pi], 1e-6)
        assert is_synchronous([-np.pi + 1e-9, np.pi - 1e-9], 1e-6)

    def test_wrap_range(self):
        w = wrap([-np.pi, np.pi, 3 * np.pi, 0.0, -3.5])
        assert np.all(w > -np.pi) and np.all(w <= np.pi)
        assert w[0] == np.pi

    @given(st.lists(st.floats(-20, 20), min_size=1, max_size=12))
    def test_diameter_matches_brute_force(self, xs):
        assert circular_diameter(xs) == pytest.approx(brute_diameter(xs), abs=1e-9)
