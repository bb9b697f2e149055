import numpy as np
import pytest

from laborflow import (
    DegenerateHiring,
    DegreeTooLarge,
    HiringVector,
    InvalidDegree,
    aggregate_unemployment,
    build_from_edge_list,
    compute_varphi,
    degree_distribution,
    exact_chain_oracle,
    firm_unemployment_rate,
    generate_regular,
    neighbor_means,
    steady_state,
)
from laborflow.steady_state import as_hiring_array

from conftest import random_connected_net


class TestHiringVector:
    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            HiringVector([0.5, 1.2])
        with pytest.raises(ValueError):
            HiringVector([-0.1])

    def test_immutable(self):
        hv = HiringVector([0.5, 0.5])
        with pytest.raises(ValueError):
            hv.h[0] = 0.9

    def test_scalar_broadcast(self):
        arr = as_hiring_array(0.3, 4)
        assert arr.shape == (4,) and np.all(arr == 0.3)

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            as_hiring_array([0.5, 0.5], 3)

    def test_neighbor_means_path3(self, path3_net):
        hbar = neighbor_means(path3_net, [0.2, 0.4, 0.6])
        assert np.allclose(hbar, [0.4, 0.4, 0.4], atol=1e-15)


class TestVarphi:
    def test_two_node_hand_value(self, fig2_params, edge_net):
        # symmetric pair, h=1: denominator = 2/lambda + 2/theta(1)
        #   = 2/0.05 + 2/0.8 = 42.5; varphi = 4000/42.5
        varphi = compute_varphi(edge_net, 1.0, fig2_params)
        assert abs(varphi - 4000.0 / 42.5) < 1e-12 * varphi

    def test_linear_in_population(self, fig2_params, edge_net):
        small = compute_varphi(edge_net, 0.7, fig2_params.replace(H=100))
        large = compute_varphi(edge_net, 0.7, fig2_params.replace(H=700))
        assert abs(large - 7 * small) < 1e-9 * large

    def test_all_zero_hiring_degenerate(self, fig2_params, edge_net):
        with pytest.raises(DegenerateHiring):
            compute_varphi(edge_net, 0.0, fig2_params)

    def test_isolated_hirer_degenerate(self, fig2_params, path3_net):
        # middle firm hires but both its neighbors never do: its unemployment
        # pool has no outflow, so no stationary normalization exists
        with pytest.raises(DegenerateHiring) as err:
            compute_varphi(path3_net, [0.0, 1.0, 0.0], fig2_params)
        assert err.value.details["nodes"] == [1]

    def test_zero_separation_degenerate(self, fig2_params, edge_net):
        with pytest.raises(DegenerateHiring):
            compute_varphi(edge_net, 1.0, fig2_params.replace(lam=0.0))

    def test_zero_vacancy_degenerate(self, fig2_params, edge_net):
        with pytest.raises(DegenerateHiring):
            compute_varphi(edge_net, 1.0, fig2_params.replace(v=0.0))


class TestSteadyStateIdentities:
    def test_two_node_hand_values(self, fig2_params, edge_net):
        sol = steady_state(edge_net, 1.0, fig2_params)
        varphi = 4000.0 / 42.5
        assert np.allclose(sol.L, varphi / 0.05, rtol=1e-12)
        assert np.allclose(sol.U, varphi / 0.8, rtol=1e-12)
        # employment/unemployment odds are hbar*theta/lambda = 0.8/0.05
        assert np.allclose(sol.L / sol.U, 16.0, rtol=1e-12)
        assert np.allclose(sol.u_firm, 0.05 / 0.85, rtol=1e-12)
        assert np.allclose(sol.t_u, 1.0 / 0.8, rtol=1e-12)

    def test_conservation_random(self, fig2_params):
        rng = np.random.default_rng(42)
        for _ in range(20):
            net = random_connected_net(rng)
            h = rng.uniform(0.05, 1.0, size=net.n)
            sol = steady_state(net, h, fig2_params)
            total = sol.L.sum() + sol.U.sum()
            assert abs(total - fig2_params.H) < 1e-8 * fig2_params.H
            assert abs(sol.p.sum() + sol.q.sum() - 1.0) < 1e-12

    def test_flow_balance(self, fig2_params):
        rng = np.random.default_rng(7)
        net = random_connected_net(rng)
        h = rng.uniform(0.05, 1.0, size=net.n)
        sol = steady_state(net, h, fig2_params)
        # hires = h * applications, exactly the same float expression
        assert np.array_equal(sol.O, h * sol.A)
        # outflow equals separation inflow
        assert np.allclose(sol.O, fig2_params.lam * sol.L, rtol=1e-12)

    def test_unemployment_stock_ratio(self, fig2_params, path3_net):
        # with uniform h, U_i proportional to k_i / theta(k_i)
        sol = steady_state(path3_net, 0.6, fig2_params)
        th1 = fig2_params.theta(1)
        th2 = fig2_params.theta(2)
        assert abs(sol.U[1] / sol.U[0] - (2 / th2) / (1 / th1)) < 1e-12

    def test_zero_hiring_firm_has_empty_stocks(self, fig2_params, path3_net):
        sol = steady_state(path3_net, [1.0, 1.0, 0.0], fig2_params)
        assert sol.L[2] == 0 and sol.U[2] == 0 and sol.O[2] == 0
        assert sol.u_firm[2] == 0.0
        assert sol.L[0] > 0 and sol.U[0] > 0

    def test_u_half_when_rates_balance(self, fig2_params):
        # u = lam/(lam + h*theta): equals 1/2 exactly when lam = h*theta
        net = generate_regular(4, 2, seed=0)
        p = fig2_params.replace(v=0.5, lam=0.2 * 0.75)
        sol = steady_state(net, 0.2, p)
        assert np.allclose(sol.u_firm, 0.5, rtol=1e-12)
        assert abs(sol.u_agg - 0.5) < 1e-12

    def test_always_open_always_hire(self, fig2_params):
        # v=1, h=1: every unemployed worker is hired next period,
        # so u = lam/(lam+1) on any network
        rng = np.random.default_rng(3)
        net = random_connected_net(rng)
        sol = steady_state(net, 1.0, fig2_params.replace(v=1.0))
        assert np.allclose(sol.u_firm, 0.05 / 1.05, rtol=1e-12)
        assert np.allclose(sol.t_u, 1.0, rtol=1e-12)

    def test_u_agg_is_population_share(self, fig2_params):
        rng = np.random.default_rng(9)
        net = random_connected_net(rng)
        sol = steady_state(net, 0.4, fig2_params)
        assert abs(sol.u_agg - sol.U.sum() / fig2_params.H) < 1e-15


class TestFirmUnemploymentRate:
    def test_matches_formula(self, fig2_params):
        u = firm_unemployment_rate(3, 0.5, fig2_params)
        th = fig2_params.theta(3)
        assert abs(u - 0.05 / (0.05 + 0.5 * th)) < 1e-15

    def test_decreasing_convex_in_k(self, fig2_params):
        p = fig2_params.replace(v=0.3)
        ks = np.arange(1, 25, dtype=float)
        u = firm_unemployment_rate(ks, 0.5, p)
        d1 = np.diff(u)
        assert np.all(d1 < 0)
        assert np.all(np.diff(d1) > 0)

    def test_decreasing_in_h(self, fig2_params):
        u_lo = firm_unemployment_rate(4, 0.2, fig2_params)
        u_hi = firm_unemployment_rate(4, 0.9, fig2_params)
        assert u_hi < u_lo

    def test_accepts_real_k(self, fig2_params):
        u = firm_unemployment_rate(2.5, 0.5, fig2_params)
        assert firm_unemployment_rate(3, 0.5, fig2_params) < u \
            < firm_unemployment_rate(2, 0.5, fig2_params)

    def test_rejects_k_below_one(self, fig2_params):
        with pytest.raises(InvalidDegree):
            firm_unemployment_rate(0.5, 0.5, fig2_params)


class TestAggregateUnemployment:
    def test_weighted_sum(self, fig2_params, path3_net):
        dist = degree_distribution(path3_net)
        u = aggregate_unemployment(dist, 0.5, fig2_params)
        expected = (2 / 3) * firm_unemployment_rate(1, 0.5, fig2_params) \
            + (1 / 3) * firm_unemployment_rate(2, 0.5, fig2_params)
        assert abs(u - expected) < 1e-15

    def test_degenerate_distribution(self, fig2_params):
        dist = degree_distribution(generate_regular(10, 4, seed=0))
        u = aggregate_unemployment(dist, 0.7, fig2_params)
        assert abs(u - firm_unemployment_rate(4, 0.7, fig2_params)) < 1e-15


class TestExactChainOracle:
    def test_path3_many_draws(self, fig2_params, path3_net):
        rng = np.random.default_rng(2024)
        worst = 0.0
        for _ in range(100):
            p = fig2_params.replace(lam=rng.uniform(0.05, 0.95),
                                    v=rng.uniform(0.05, 0.95), H=1)
            h = rng.uniform(0.05, 1.0, size=3)
            sol = steady_state(path3_net, h, p)
            po, qo = exact_chain_oracle(path3_net, h, p)
            worst = max(worst, np.abs(sol.p - po).max(),
                        np.abs(sol.q - qo).max())
        assert worst < 1e-10

    def test_random_networks(self, fig2_params):
        rng = np.random.default_rng(99)
        for _ in range(30):
            net = random_connected_net(rng)
            p = fig2_params.replace(lam=rng.uniform(0.05, 0.95),
                                    v=rng.uniform(0.05, 0.95))
            h = rng.uniform(0.05, 1.0, size=net.n)
            sol = steady_state(net, h, p)
            po, qo = exact_chain_oracle(net, h, p)
            assert np.abs(sol.p - po).max() < 1e-10
            assert np.abs(sol.q - qo).max() < 1e-10

    def test_alternating_regime(self, edge_net):
        # lam=1, v=1, h=1: employment and unemployment alternate, so the
        # chain spends equal stationary mass in each state
        from laborflow import EconomyParams
        p = EconomyParams(lam=1.0, v=1.0, c=0.1, kappa=0.5, y=1.0, b=1.0, H=2)
        po, qo = exact_chain_oracle(edge_net, 1.0, p)
        assert np.allclose(po, qo, atol=1e-12)
        sol = steady_state(edge_net, 1.0, p)
        assert np.allclose(sol.p, po, atol=1e-12)

    def test_degree_cap(self, fig2_params):
        edges = [(0, i) for i in range(1, 14)]
        star = build_from_edge_list(edges, 14)
        with pytest.raises(DegreeTooLarge):
            exact_chain_oracle(star, 0.5, fig2_params)

    def test_column_stochastic_internals(self, fig2_params, path3_net):
        from laborflow.steady_state import _transition_matrix
        h = np.array([0.3, 0.8, 0.5])
        M = _transition_matrix(path3_net, h, fig2_params)
        assert np.allclose(M.sum(axis=0), 1.0, atol=1e-12)
        assert np.all(M >= 0)
