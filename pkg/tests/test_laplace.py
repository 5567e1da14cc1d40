import math

import numpy as np
import pytest

from invsub.errors import DomainError, InversionInstabilityError
from invsub.laplace import (
    InversionConfig,
    forward_laplace,
    gaver_stehfest,
    invert,
    invert_checked,
    talbot,
)

# closed-form (transform, inverse) pairs used throughout
PAIRS = [
    (lambda l: 1.0 / (l + 1.0), lambda t: math.exp(-t)),
    (lambda l: 1.0 / (l + 1.0) ** 2, lambda t: t * math.exp(-t)),
    (lambda l: l ** -0.5, lambda t: t ** -0.5 / math.sqrt(math.pi)),
]


def test_config_validation():
    InversionConfig("talbot", 32, 1e-8)
    InversionConfig("gaver_stehfest", 16, 1e-6)
    with pytest.raises(ValueError):
        InversionConfig("bromwich", 32, 1e-8)
    with pytest.raises(ValueError):
        InversionConfig("talbot", 8, 1e-8)
    with pytest.raises(ValueError):
        InversionConfig("gaver_stehfest", 15, 1e-8)
    with pytest.raises(ValueError):
        InversionConfig("gaver_stehfest", 22, 1e-8)
    with pytest.raises(ValueError):
        InversionConfig("talbot", 32, 0.0)


def test_invert_simple_pole():
    assert invert(lambda l: 1.0 / (l + 1.0), 1.0) == pytest.approx(math.exp(-1), rel=1e-9)


def test_invert_sqrt_branch():
    assert invert(lambda l: l ** -0.5, 1.0) == pytest.approx(1.0 / math.sqrt(math.pi), rel=1e-9)


def test_invert_ramp():
    assert invert(lambda l: l ** -2.0, 3.0) == pytest.approx(3.0, rel=1e-9)


def test_invert_rejects_nonpositive_time():
    with pytest.raises(DomainError):
        invert(lambda l: 1.0 / l, 0.0)
    with pytest.raises(DomainError):
        gaver_stehfest(lambda l: 1.0 / l, -1.0)


def test_forward_laplace_constant():
    assert forward_laplace(lambda t: 1.0, 2.0) == pytest.approx(0.5, rel=1e-9)


def test_forward_laplace_exponential():
    assert forward_laplace(lambda t: math.exp(-t), 1.0) == pytest.approx(0.5, rel=1e-9)


def test_forward_laplace_singular_origin():
    f = lambda t: t ** -0.5 / math.sqrt(math.pi)
    assert forward_laplace(f, 4.0) == pytest.approx(0.5, rel=1e-8)


def test_forward_laplace_rejects_nonpositive_lambda():
    with pytest.raises(DomainError):
        forward_laplace(lambda t: 1.0, 0.0)


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("pair", PAIRS, ids=["exp", "texp", "invsqrt"])
def test_round_trip(pair, t):
    # numeric forward transforms are real-valued, so the round trip runs
    # through gaver_stehfest; its weights (|V| ~ 3.6e9 at N=16) put an
    # absolute cancellation floor ~1e-5 under exponentially small targets
    transform, f = pair
    numeric = lambda l: forward_laplace(f, l, tol=1e-12)
    got = invert(numeric, t, InversionConfig("gaver_stehfest", 16))
    assert abs(got - f(t)) <= max(1e-6 * abs(f(t)), 3e-5)


@pytest.mark.parametrize("t", np.geomspace(0.1, 10.0, 7))
@pytest.mark.parametrize("pair", PAIRS, ids=["exp", "texp", "invsqrt"])
def test_method_cross_check(pair, t):
    transform, f = pair
    a = talbot(transform, t, 32)
    b = gaver_stehfest(transform, t, 16)
    assert abs(a - b) <= max(1e-6 * abs(a), 5e-5)
    if abs(a - b) <= 1e-6 * abs(a):
        assert invert_checked(transform, t, InversionConfig(target_rel_tol=1e-6)) == a


def test_round_trip_analytic_tight():
    # with noise-free transform evaluations talbot reaches 1e-9 easily
    for transform, f in PAIRS:
        for t in (0.5, 1.0, 2.0, 5.0):
            assert talbot(transform, t, 32) == pytest.approx(f(t), rel=1e-8)


def test_invert_checked_flags_disagreement():
    # transform with a pole off the negative axis breaks both methods differently
    bad = lambda l: 1.0 / (l - 4.0)
    with pytest.raises(InversionInstabilityError):
        invert_checked(bad, 6.0, InversionConfig(target_rel_tol=1e-10))


def test_linearity_same_nodes():
    F = lambda l: 1.0 / (l + 1.0)
    G = lambda l: l ** -0.5
    a, b = 0.7, -2.3
    combo = lambda l: a * F(l) + b * G(l)
    t = 1.3
    lhs = talbot(combo, t, 32)
    rhs = a * talbot(F, t, 32) + b * talbot(G, t, 32)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_talbot_deterministic():
    F = lambda l: l ** -0.5 * np.exp(-np.sqrt(l))
    vals = {talbot(F, 1.0, 32) for _ in range(5)}
    assert len(vals) == 1
