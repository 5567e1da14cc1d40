import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from invsub.errors import BranchCutError, ClassificationError, DomainError
from invsub.kernels import (
    C1,
    C2,
    C3,
    AdmissibilityReport,
    ConstantWeight,
    DistributedOrder,
    GammaSub,
    InverseGaussian,
    PolynomialWeight,
    PowerWeight,
    Stable,
    StieltjesDensity,
    TabulatedWeight,
    check_admissible,
    classify,
    eval_kernel,
    integral_kernel,
    kernel_from_json,
    kernel_to_json,
    laplace_K,
    phi,
)
from invsub.laplace import forward_laplace, talbot

ALL_KERNELS = [
    Stable(0.5),
    Stable(0.8),
    GammaSub(1.0, 1.0),
    InverseGaussian(1.0, 1.0),
    InverseGaussian(0.0, 1.0),
    DistributedOrder(ConstantWeight(1.0)),
    DistributedOrder(PowerWeight(2.0, 1.0)),
    StieltjesDensity(1.0, 0.5),
]

CLOSED_FORM = ALL_KERNELS[:5]  # variants whose transform is a finite formula


class TestEvalKernel:
    def test_stable_half_at_one(self):
        assert eval_kernel(Stable(0.5), 1.0) == pytest.approx(
            1.0 / math.sqrt(math.pi), rel=1e-12
        )

    def test_stable_half_scaling(self):
        assert eval_kernel(Stable(0.5), 4.0) == pytest.approx(
            0.5 * eval_kernel(Stable(0.5), 1.0), rel=1e-12
        )

    def test_gamma_is_exponential_integral(self):
        oracle, _ = quad(lambda u: math.exp(-u) / u, 1.0, np.inf, limit=200)
        assert oracle == pytest.approx(0.2193839, abs=5e-8)
        assert eval_kernel(GammaSub(1.0, 1.0), 1.0) == pytest.approx(oracle, rel=1e-9)

    def test_rejects_nonpositive_t(self):
        for k in ALL_KERNELS:
            with pytest.raises(DomainError):
                eval_kernel(k, 0.0)

    @given(t=st.floats(min_value=1e-3, max_value=1e3))
    @settings(max_examples=40, deadline=None)
    def test_nonnegative(self, t):
        for k in ALL_KERNELS:
            assert eval_kernel(k, t) >= 0.0


class TestLaplaceK:
    def test_stable_power(self):
        assert laplace_K(Stable(0.5), 4.0) == pytest.approx(0.5, rel=1e-14)

    def test_gamma_log(self):
        assert laplace_K(GammaSub(1.0, 1.0), 1.0) == pytest.approx(math.log(2.0), rel=1e-14)

    def test_inverse_gaussian_zero_drift(self):
        # (sqrt(b)/lam)(sqrt(2 lam + a) - sqrt(a)) at a=0, b=1, lam=2
        assert laplace_K(InverseGaussian(0.0, 1.0), 2.0) == pytest.approx(1.0, rel=1e-14)

    def test_branch_cut_rejected(self):
        for k in ALL_KERNELS:
            with pytest.raises(BranchCutError):
                laplace_K(k, -1.0)
            with pytest.raises(BranchCutError):
                laplace_K(k, np.array([1.0 + 1j, -2.0 + 0j]))

    def test_complex_conjugate_symmetry(self):
        for k in ALL_KERNELS:
            v1 = laplace_K(k, 1.0 + 2.0j)
            v2 = laplace_K(k, 1.0 - 2.0j)
            assert v1 == pytest.approx(np.conj(v2), rel=1e-12)

    @pytest.mark.parametrize("k", CLOSED_FORM, ids=str)
    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0, 5.0])
    def test_forward_transform_consistency(self, k, lam):
        numeric = forward_laplace(lambda t: eval_kernel(k, t), lam, tol=1e-12)
        assert numeric == pytest.approx(laplace_K(k, lam).real, rel=1e-6)

    @pytest.mark.parametrize(
        "k",
        [
            DistributedOrder(ConstantWeight(1.0)),
            DistributedOrder(PowerWeight(2.0, 1.0)),
            StieltjesDensity(1.0, 0.5),
        ],
        ids=str,
    )
    def test_quadrature_variants_match_inversion(self, k):
        # dual route: pointwise kernel against Talbot inversion of the transform
        for t in (0.1, 1.0, 10.0):
            inverted = talbot(lambda lam: laplace_K(k, lam), t, 32)
            assert inverted == pytest.approx(eval_kernel(k, t), rel=1e-8)

    def test_complete_monotonicity_proxy(self):
        grid = np.geomspace(1e-4, 1e4, 50)
        for k in ALL_KERNELS:
            vals = np.real(laplace_K(k, grid.astype(complex)))
            assert np.all(vals > 0)
            assert np.all(np.diff(vals) < 0)
            first = np.diff(vals) / np.diff(grid)
            second = np.diff(first) / (grid[2:] - grid[:-2])
            assert np.all(second >= -1e-12)


class TestPhi:
    def test_stable_root(self):
        assert phi(Stable(0.5), 9.0) == pytest.approx(3.0, rel=1e-14)

    def test_gamma_at_one(self):
        assert phi(GammaSub(1.0, 1.0), 1.0) == pytest.approx(math.log(2.0), rel=1e-14)

    def test_vanishes_at_zero_monotonically(self):
        # logarithmic-class kernels reach 0 only like 1/log(1/lam), so the
        # trend check uses a decade-scale drop rather than a hard limit
        grid = np.geomspace(1e-8, 1.0, 33)
        for k in ALL_KERNELS:
            vals = np.real(phi(k, grid.astype(complex)))
            assert np.all(np.diff(vals) > 0)
            assert vals[0] < 0.1 * vals[-1]


class TestIntegralKernel:
    @pytest.mark.parametrize(
        "k",
        [k for k in ALL_KERNELS if not isinstance(k, DistributedOrder)],
        ids=str,
    )
    @pytest.mark.parametrize("T", [0.3, 2.0, 50.0])
    def test_against_quadrature(self, k, T):
        # substitute u = sqrt(t) to tame the origin singularity
        oracle, _ = quad(
            lambda u: 2.0 * u * eval_kernel(k, u * u), 0.0, math.sqrt(T), limit=300
        )
        assert integral_kernel(k, T) == pytest.approx(oracle, rel=2e-4)

    @pytest.mark.parametrize(
        "k",
        [k for k in ALL_KERNELS if isinstance(k, DistributedOrder)],
        ids=str,
    )
    @pytest.mark.parametrize("T", [0.3, 2.0, 50.0])
    def test_distributed_order_against_adaptive(self, k, T):
        # the t-integral reduces exactly to an order-side integral; compare the
        # fixed 64-point rule against adaptive quadrature of that reduction
        # (the raw t-side integrand ~ 1/(t log^2 t) defeats adaptive rules)
        oracle, _ = quad(
            lambda a: float(k.mu(a)) * T ** (1.0 - a) / math.gamma(2.0 - a),
            0.0,
            1.0,
            epsabs=0.0,
            epsrel=1e-11,
            limit=200,
        )
        assert integral_kernel(k, T) == pytest.approx(oracle, rel=1e-10)

    def test_stable_closed_form(self):
        assert integral_kernel(Stable(0.5), 4.0) == pytest.approx(
            2.0 / math.gamma(1.5), rel=1e-12
        )

    def test_levy_tail_consistency_stable(self):
        # k(t) equals the Levy measure tail: integral of alpha u^(-1-alpha)/Gamma(1-alpha)
        alpha = 0.6
        k = Stable(alpha)
        for t in (0.5, 1.0, 3.0):
            tail, _ = quad(
                lambda u: alpha * u ** (-1.0 - alpha) / math.gamma(1.0 - alpha),
                t,
                np.inf,
                epsabs=0.0,
                epsrel=1e-12,
                limit=200,
            )
            assert tail == pytest.approx(eval_kernel(k, t), rel=1e-8)


class TestClassify:
    @pytest.mark.parametrize("alpha", np.linspace(0.1, 0.9, 9))
    def test_stable_exact(self, alpha):
        got = classify(Stable(float(alpha)))
        assert got == C1(float(alpha), origin="exact")

    def test_distributed_constant(self):
        assert classify(DistributedOrder(ConstantWeight(1.0))) == C2(1.0)

    def test_distributed_linear(self):
        got = classify(DistributedOrder(PowerWeight(2.0, 1.0)))
        assert got == C3(1.0, 2.0 * math.gamma(2.0))

    def test_polynomial_weights(self):
        assert classify(DistributedOrder(PolynomialWeight((0.5, 1.0)))) == C2(0.5)
        got = classify(DistributedOrder(PolynomialWeight((0.0, 0.0, 3.0))))
        assert got == C3(2.0, 3.0 * math.gamma(3.0))

    def test_tabulated_weight(self):
        mu = TabulatedWeight((0.0, 0.5, 1.0), (2.0, 1.0, 1.0))
        assert classify(DistributedOrder(mu)) == C2(2.0)

    def test_stieltjes_asymptotic(self):
        assert classify(StieltjesDensity(1.0, 0.4)) == C1(0.4, origin="asymptotic")

    @pytest.mark.parametrize("k", [GammaSub(1.0, 1.0), InverseGaussian(1.0, 1.0)], ids=str)
    def test_rejected_kernels_report_behavior(self, k):
        with pytest.raises(ClassificationError) as err:
            classify(k)
        # transform tends to a nonzero constant: estimated exponent near 0
        assert abs(err.value.estimated_exponent) < 0.05


class TestAdmissibility:
    def test_stable_half_liminf(self):
        report = check_admissible(Stable(0.5), s0=1.0)
        assert isinstance(report, AdmissibilityReport)
        assert report.verdict
        assert report.a1_liminf == pytest.approx(1.0 / math.gamma(1.5), rel=1e-3)
        assert report.a1_s0 == 1.0

    def test_a2_identical_arguments(self):
        k = Stable(0.5)
        pairs = [(float(t), float(t)) for t in np.geomspace(10.0, 1e4, 8)]
        report = check_admissible(k, t_pairs=pairs)
        assert report.a2_max_ratio_dev == 0.0

    @pytest.mark.parametrize("k", ALL_KERNELS, ids=str)
    def test_all_test_kernels_admissible(self, k):
        report = check_admissible(k)
        assert report.verdict, report

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            check_admissible(Stable(0.5), lambda_grid=np.geomspace(1e-2, 1e-3, 20))
        with pytest.raises(DomainError):
            check_admissible(Stable(0.5), t_pairs=[(1.0, 1.0), (10.0, 10.0)])


class TestWireFormat:
    @pytest.mark.parametrize("k", ALL_KERNELS, ids=str)
    def test_round_trip(self, k):
        obj = kernel_to_json(k)
        assert set(obj) == {"variant", "params"}
        assert kernel_from_json(obj) == k

    def test_variant_names_fixed(self):
        assert kernel_to_json(Stable(0.5))["variant"] == "stable"
        assert kernel_to_json(GammaSub(1, 1))["variant"] == "gamma"
        assert kernel_to_json(InverseGaussian(1, 1))["variant"] == "inverse_gaussian"
        assert (
            kernel_to_json(DistributedOrder(ConstantWeight(1.0)))["variant"]
            == "distributed_order"
        )
        assert kernel_to_json(StieltjesDensity(1, 0.5))["variant"] == "stieltjes"

    def test_tabulated_round_trip(self):
        k = DistributedOrder(TabulatedWeight((0.0, 1.0), (1.0, 2.0)))
        assert kernel_from_json(kernel_to_json(k)) == k

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            kernel_from_json({"variant": "nope", "params": {}})
        with pytest.raises(ValueError):
            kernel_from_json({"variant": "stable", "params": {}})
        with pytest.raises(ValueError):
            kernel_from_json({"params": {"alpha": 0.5}})


class TestConstruction:
    def test_parameter_ranges(self):
        with pytest.raises(ValueError):
            Stable(1.0)
        with pytest.raises(ValueError):
            Stable(0.0)
        with pytest.raises(ValueError):
            GammaSub(0.0, 1.0)
        with pytest.raises(ValueError):
            InverseGaussian(-1.0, 1.0)
        with pytest.raises(ValueError):
            StieltjesDensity(1.0, 1.5)
        with pytest.raises(ValueError):
            ConstantWeight(0.0)
        with pytest.raises(ValueError):
            PolynomialWeight((0.0, 0.0))
        with pytest.raises(ValueError):
            TabulatedWeight((0.0, 1.0), (0.0, 0.0))
        with pytest.raises(ValueError):
            TabulatedWeight((1.0, 0.0), (1.0, 1.0))
