import numpy as np
import pytest
from scipy.stats import kendalltau, kstest

from factorkde import (CopulaFamily, OneFactorModel, density, h_function,
                       h_inverse, sample_one_factor, true_factor_density)
from factorkde.exceptions import DomainError, ParameterError
from factorkde.quadrature import gauss_legendre


# closed-form copula CDFs, kept separate from the package as the
# finite-difference oracle
def copula_cdf(fam, u, v):
    if fam.family == "independence":
        return u * v
    if fam.family == "gumbel":
        th = fam.theta
        return np.exp(-(((-np.log(u)) ** th + (-np.log(v)) ** th) ** (1 / th)))
    th = fam.theta
    return (u ** -th + v ** -th - 1.0) ** (-1 / th)


def fd_density(fam, u, v, h=1e-4):
    return (copula_cdf(fam, u + h, v + h) - copula_cdf(fam, u + h, v - h)
            - copula_cdf(fam, u - h, v + h) + copula_cdf(fam, u - h, v - h)) / (4 * h * h)


def fd_h(fam, u, v, h=1e-4):
    return (copula_cdf(fam, u, v + h) - copula_cdf(fam, u, v - h)) / (2 * h)


class TestParameterValidation:
    def test_gumbel_range(self):
        CopulaFamily.gumbel(1.0)
        with pytest.raises(ParameterError):
            CopulaFamily.gumbel(0.9)

    def test_clayton_range(self):
        CopulaFamily.clayton(0.1)
        with pytest.raises(ParameterError):
            CopulaFamily.clayton(0.0)

    def test_unknown_family(self):
        with pytest.raises(ParameterError):
            CopulaFamily("frank", 2.0)

    def test_from_config(self):
        fam = CopulaFamily.from_config({"family": "gumbel", "theta": 1.4})
        assert fam.family == "gumbel" and fam.theta == 1.4
        assert CopulaFamily.from_config({"family": "independence"}).family == \
            "independence"

    def test_model_needs_two_links(self):
        with pytest.raises(ParameterError):
            OneFactorModel((CopulaFamily.gumbel(1.4),))


class TestDensity:
    def test_gumbel_theta_one_is_independence(self):
        fam = CopulaFamily.gumbel(1.0)
        assert density(fam, 0.5, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_clayton_frozen_value(self, clayton2):
        # central second difference of the closed-form CDF, step 1e-4
        val = density(clayton2, 0.5, 0.5)
        assert val == pytest.approx(1.4810036493, abs=1e-9)
        assert abs(val - fd_density(clayton2, 0.5, 0.5)) < 1e-5

    def test_gumbel_frozen_value(self, gumbel14):
        val = density(gumbel14, 0.9, 0.9)
        assert val == pytest.approx(2.3161970360, abs=1e-9)
        assert abs(val - fd_density(gumbel14, 0.9, 0.9)) < 1e-5

    def test_nonnegative(self, gumbel14, clayton2):
        rng = np.random.default_rng(10)
        u, v = rng.uniform(0.01, 0.99, (2, 500))
        for fam in (gumbel14, clayton2):
            assert np.all(density(fam, u, v) >= 0.0)

    def test_domain_error(self, gumbel14):
        with pytest.raises(DomainError):
            density(gumbel14, 0.0, 0.5)
        with pytest.raises(DomainError):
            density(gumbel14, 0.5, 1.0)

    @pytest.mark.parametrize("famname", ["gumbel", "clayton", "independence"])
    def test_integrates_to_one(self, famname, gumbel14, clayton2, indep):
        fam = {"gumbel": gumbel14, "clayton": clayton2, "independence": indep}[famname]
        rule = gauss_legendre(50, flatten=1)
        grid = density(fam, rule.points[:, None], rule.points[None, :])
        total = rule.weights @ grid @ rule.weights
        assert total == pytest.approx(1.0, abs=1e-4)


class TestHFunction:
    def test_independence_identity(self, indep):
        assert h_function(indep, 0.3, 0.7) == pytest.approx(0.3, abs=1e-15)

    def test_clayton_frozen_value(self, clayton2):
        val = h_function(clayton2, 0.5, 0.5)
        assert val == pytest.approx(0.4319593977, abs=1e-9)
        assert abs(val - fd_h(clayton2, 0.5, 0.5)) < 1e-5

    def test_boundary_limit(self, gumbel14, clayton2, indep):
        for fam in (gumbel14, clayton2, indep):
            assert h_function(fam, 1 - 1e-12, 0.5) == pytest.approx(1.0, abs=1e-6)

    def test_matches_finite_difference(self, gumbel14, clayton2, indep):
        rng = np.random.default_rng(11)
        u = rng.uniform(0.05, 0.95, size=1000)
        v = rng.uniform(0.05, 0.95, size=1000)
        for fam in (gumbel14, clayton2, indep):
            err = np.abs(h_function(fam, u, v) - fd_h(fam, u, v))
            assert err.max() < 1e-5

    def test_nondecreasing_in_u(self, gumbel14, clayton2):
        u = np.linspace(0.01, 0.99, 200)
        for fam in (gumbel14, clayton2):
            for v in (0.2, 0.5, 0.8):
                hv = h_function(fam, u, v)
                assert np.all(np.diff(hv) >= -1e-12)
                assert np.all((hv >= 0) & (hv <= 1 + 1e-12))


class TestHInverse:
    def test_independence(self, indep):
        assert h_inverse(indep, 0.42, 0.9) == pytest.approx(0.42, abs=1e-15)

    def test_clayton_frozen_value(self, clayton2):
        val = h_inverse(clayton2, 0.5, 0.5)
        assert val == pytest.approx(0.5463906428, abs=1e-9)

    def test_clayton_closed_form_matches_bisection(self, clayton2):
        # bisection oracle on h_function
        w, v = 0.5, 0.5
        lo, hi = 1e-12, 1 - 1e-12
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if h_function(clayton2, mid, v) < w:
                lo = mid
            else:
                hi = mid
        assert h_inverse(clayton2, w, v) == pytest.approx(0.5 * (lo + hi), abs=1e-9)

    def test_round_trip(self, gumbel14, clayton2):
        rng = np.random.default_rng(12)
        w = rng.uniform(0.001, 0.999, size=1000)
        v = rng.uniform(0.001, 0.999, size=1000)
        for fam in (gumbel14, clayton2):
            u = h_inverse(fam, w, v)
            back = h_function(fam, u, v)
            assert np.max(np.abs(back - w)) < 1e-9


class TestSampler:
    def test_deterministic(self, gumbel14):
        model = OneFactorModel.homogeneous(gumbel14, 5)
        u1, v1 = sample_one_factor(model, 200, seed=42)
        u2, v2 = sample_one_factor(model, 200, seed=42)
        np.testing.assert_array_equal(u1, u2)
        np.testing.assert_array_equal(v1, v2)

    def test_independence_links(self, indep):
        model = OneFactorModel.homogeneous(indep, 3)
        u, _ = sample_one_factor(model, 20000, seed=1)
        for j in range(3):
            assert kstest(u[:, j], "uniform").pvalue > 0.01
        corr = np.corrcoef(u, rowvar=False)
        off = corr[~np.eye(3, dtype=bool)]
        assert np.max(np.abs(off)) < 0.03

    def test_gumbel_kendall_tau(self, gumbel14):
        model = OneFactorModel.homogeneous(gumbel14, 2)
        u, v0 = sample_one_factor(model, 20000, seed=3)
        tau = kendalltau(u[:, 0], v0).statistic
        assert tau == pytest.approx(1 - 1 / 1.4, abs=0.02)

    def test_clayton_kendall_tau(self, clayton2):
        model = OneFactorModel.homogeneous(clayton2, 2)
        u, v0 = sample_one_factor(model, 20000, seed=3)
        tau = kendalltau(u[:, 0], v0).statistic
        assert tau == pytest.approx(0.5, abs=0.02)


class TestTrueFactorDensity:
    def test_independence_is_one(self, indep):
        model = OneFactorModel.homogeneous(indep, 4)
        rng = np.random.default_rng(13)
        pts = rng.uniform(0.05, 0.95, size=(20, 3))
        np.testing.assert_allclose(true_factor_density(model, pts), 1.0, atol=1e-10)

    def test_permutation_symmetry(self, clayton2):
        model = OneFactorModel.homogeneous(clayton2, 4)
        a = true_factor_density(model, np.array([0.3, 0.7]))
        b = true_factor_density(model, np.array([0.7, 0.3]))
        assert a == b  # two identical links: products commute exactly
        pts = np.array([0.2, 0.5, 0.8, 0.4])
        c = true_factor_density(model, pts)
        d = true_factor_density(model, pts[::-1].copy())
        assert c == pytest.approx(d, rel=1e-12)

    def test_clayton_frozen_value(self, clayton2):
        # Riemann oracle: 1e5 midpoints
        model = OneFactorModel.homogeneous(clayton2, 2)
        val = true_factor_density(model, np.array([0.5, 0.5]))
        assert val == pytest.approx(1.1881496821, rel=1e-8)
        vr = (np.arange(100000) + 0.5) / 100000
        riemann = np.mean(density(clayton2, 0.5, vr) ** 2)
        assert val == pytest.approx(riemann, rel=1e-6)

    def test_k_exceeds_d(self, gumbel14):
        model = OneFactorModel.homogeneous(gumbel14, 2)
        with pytest.raises(DomainError):
            true_factor_density(model, np.array([0.5, 0.5, 0.5]))
