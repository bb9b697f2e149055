import json
import math

import numpy as np
import pytest

from laborflow import EconomyParams, load_params, save_params


class TestValidation:
    def test_fig2_values_accepted(self, fig2_params):
        assert fig2_params.lam == 0.05
        assert fig2_params.H == 4000

    @pytest.mark.parametrize("field,value", [
        ("lam", -0.1), ("lam", 1.1),
        ("v", -0.01), ("v", 1.5),
        ("c", 0.0), ("c", 1.0), ("c", -0.3),
        ("kappa", -0.1), ("kappa", 1.01),
        ("y", 0.0), ("y", -1.0),
        ("b", 0.0), ("b", -2.0),
        ("H", 0),
    ])
    def test_out_of_range_rejected(self, fig2_params, field, value):
        with pytest.raises(ValueError):
            fig2_params.replace(**{field: value})

    def test_boundary_rates_allowed(self, fig2_params):
        p = fig2_params.replace(lam=0.0, v=0.0)
        assert p.lam == 0.0 and p.v == 0.0
        p = fig2_params.replace(lam=1.0, v=1.0)
        assert p.lam == 1.0 and p.v == 1.0

    def test_h_must_be_integral(self, fig2_params):
        with pytest.raises((ValueError, TypeError)):
            fig2_params.replace(H=3.5)

    def test_frozen(self, fig2_params):
        with pytest.raises(AttributeError):
            fig2_params.lam = 0.2


class TestDerivedQuantities:
    def test_psi_fig2(self, fig2_params):
        # 1 - 0.05 + 0.8 * 0.05
        assert abs(fig2_params.psi - 0.99) < 1e-15

    def test_phi_cost_fig2(self, fig2_params):
        # 0.1 * (0.8 + 0.5 - 0.8 * 0.5)
        assert abs(fig2_params.phi_cost - 0.09) < 1e-15

    def test_psi_boundaries(self, fig2_params):
        assert fig2_params.replace(lam=0.0).psi == 1.0
        assert fig2_params.replace(v=1.0).psi == 1.0
        assert fig2_params.replace(lam=1.0, v=0.0).psi == 0.0

    def test_theta_scalar(self, fig2_params):
        th = fig2_params.theta(3)
        assert abs(th - (1 - 0.2 ** 3)) < 1e-15

    def test_theta_array(self, fig2_params):
        ks = np.array([1.0, 2.0, 5.0])
        expected = 1 - (1 - 0.8) ** ks
        assert np.allclose(fig2_params.theta(ks), expected, atol=1e-15)

    def test_theta_increasing_and_bounded(self, fig2_params):
        # moderate v so the tail has not yet saturated to 1.0 in floats
        p = fig2_params.replace(v=0.3)
        ks = np.arange(1, 40, dtype=float)
        th = p.theta(ks)
        assert np.all(np.diff(th) > 0)
        assert np.all((th > 0) & (th <= 1))

    def test_theta_at_v_one_saturates(self, fig2_params):
        p = fig2_params.replace(v=1.0)
        assert p.theta(1) == 1.0
        assert np.all(p.theta(np.array([1.0, 7.0])) == 1.0)

    def test_theta_at_v_zero(self, fig2_params):
        assert fig2_params.replace(v=0.0).theta(5) == 0.0

    def test_theta_tiny_v_accuracy(self, fig2_params):
        # naive 1-(1-v)**k loses precision for tiny v; expm1 form does not
        p = fig2_params.replace(v=1e-12)
        assert abs(p.theta(2) / 2e-12 - 1.0) < 1e-9

    def test_theta_rejects_nonpositive_degree(self, fig2_params):
        with pytest.raises(ValueError):
            fig2_params.theta(0)
        with pytest.raises(ValueError):
            fig2_params.theta(np.array([1.0, -2.0]))


class TestSerialization:
    def test_round_trip(self, tmp_path, fig2_params):
        path = tmp_path / "params.json"
        save_params(fig2_params, path)
        loaded, extras = load_params(path)
        assert loaded == fig2_params
        assert extras == {}

    def test_json_uses_lambda_key(self, tmp_path, fig2_params):
        path = tmp_path / "params.json"
        save_params(fig2_params, path)
        raw = json.loads(path.read_text())
        assert "lambda" in raw and "lam" not in raw

    def test_optional_extras_preserved(self, tmp_path):
        path = tmp_path / "params.json"
        path.write_text(json.dumps({
            "lambda": 0.05, "v": 0.8, "c": 0.1, "kappa": 0.5,
            "y": 1.0, "b": 1.0, "H": 4000,
            "w": 0.97, "tol": 1e-8, "max_iter": 200, "damping": 0.5,
        }))
        params, extras = load_params(path)
        assert params.lam == 0.05
        assert extras == {"w": 0.97, "tol": 1e-8, "max_iter": 200,
                          "damping": 0.5}

    def test_missing_key_raises(self, tmp_path):
        path = tmp_path / "params.json"
        path.write_text(json.dumps({"lambda": 0.05, "v": 0.8}))
        with pytest.raises(ValueError, match="missing"):
            load_params(path)

    def test_unknown_key_raises(self, tmp_path):
        path = tmp_path / "params.json"
        path.write_text(json.dumps({
            "lambda": 0.05, "v": 0.8, "c": 0.1, "kappa": 0.5,
            "y": 1.0, "b": 1.0, "H": 4000, "bogus": 3,
        }))
        with pytest.raises(ValueError):
            load_params(path)

    def test_from_dict_to_dict_inverse(self, fig2_params):
        assert EconomyParams.from_dict(fig2_params.to_dict()) == fig2_params

    def test_replace_returns_new_instance(self, fig2_params):
        p2 = fig2_params.replace(v=0.5)
        assert p2.v == 0.5 and fig2_params.v == 0.8
        assert math.isclose(p2.psi, 1 - 0.05 + 0.5 * 0.05)
