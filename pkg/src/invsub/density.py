"""The inverse-subordinator density G_t(tau) and its integral transforms.

G is never touched through the underlying measure family; everything is
computed by inverting its t-Laplace transform K(lam) exp(-tau lam K(lam)).
For a fixed t the contour data is shared across tau, so a prepared "slice"
evaluates the whole tau-profile with one complex dot product per point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, InversionInstabilityError, TruncationError
from .kernels import KernelSpec, laplace_K, phi
from .laplace import InversionConfig, _stehfest_weights, forward_laplace

__all__ = [
    "g_hat",
    "density_G",
    "density_slice",
    "integrated_G",
    "normalization",
    "double_laplace_check",
    "tau_tail_bound",
    "tau_cutoff",
    "DensityGrid",
    "build_density_grid",
]

_CLAMP_FLOOR = -1e-10


def g_hat(k: KernelSpec, lam, tau: float):
    """t-Laplace transform of G_t(tau): K(lam) exp(-tau lam K(lam))."""
    if tau < 0:
        raise DomainError("g_hat requires tau >= 0")
    K = laplace_K(k, lam)
    return K * np.exp(-tau * np.asarray(lam) * K)


class _Slice:
    """Evaluator of tau -> G_t(tau) (or its t-integral) at one fixed t."""

    def __init__(self, k: KernelSpec, t: float, cfg: InversionConfig, integrated: bool):
        if t <= 0:
            raise DomainError("density evaluation requires t > 0")
        self.t = t
        if cfg.method == "talbot":
            m = cfg.order
            r = 2.0 * m / (5.0 * t)
            theta = np.arange(1, m) * (np.pi / m)
            cot = 1.0 / np.tan(theta)
            nodes = np.empty(m, dtype=complex)
            nodes[0] = r
            nodes[1:] = r * theta * (cot + 1j)
            coeff = np.empty(m, dtype=complex)
            coeff[0] = 0.5
            sigma = theta + (theta * cot - 1.0) * cot
            coeff[1:] = 1.0 + 1j * sigma
            log_coeff = np.log(coeff.astype(complex)) + t * nodes + math.log(2.0 / (5.0 * t))
        else:
            n = cfg.order
            ln2_t = math.log(2.0) / t
            nodes = (ln2_t * np.arange(1, n + 1)).astype(complex)
            log_coeff = np.log(
                ln2_t * np.array(_stehfest_weights(n), dtype=complex)
            )
        K = laplace_K(k, nodes)
        if integrated:
            self.log_weights = log_coeff + np.log(K / nodes)
        else:
            self.log_weights = log_coeff + np.log(K)
        self.exponents = nodes * K
        # decay rate of the certified tail bound e^{1 - tau * rate}
        self.tail_rate = float(np.real(phi(k, 1.0 / t)))

    def raw(self, tau):
        """Unclamped values; tail points past the overflow horizon return 0.

        Far in the tau-tail the contour terms overflow while the true value is
        certified negligible by the Chernoff bound; those points return 0.
        """
        arr = np.atleast_1d(np.asarray(tau, dtype=float))
        if np.any(arr < 0):
            raise DomainError("density evaluation requires tau >= 0")
        z = self.log_weights[None, :] - np.outer(arr, self.exponents)
        peak = z.real.max(axis=1)
        safe = peak < 500.0
        vals = np.zeros(len(arr))
        if np.any(safe):
            vals[safe] = np.exp(z[safe]).sum(axis=1).real
        if not np.all(safe):
            bounds = np.exp(np.minimum(1.0 - arr[~safe] * self.tail_rate, 700.0))
            if np.any(bounds > 1e-12):
                raise InversionInstabilityError(
                    f"contour terms overflow at t={self.t!r} before the tail "
                    f"certificate holds (worst bound {bounds.max():.3e})"
                )
        return vals

    def __call__(self, tau):
        """Density values at tau (scalar or array), clamped at tiny negatives."""
        vals = self.raw(tau)
        clamped = np.where((vals < 0) & (vals > _CLAMP_FLOOR), 0.0, vals)
        if np.isscalar(tau) or np.ndim(tau) == 0:
            return float(clamped[0])
        return clamped


def density_slice(k: KernelSpec, t: float, cfg: InversionConfig = InversionConfig()):
    """Prepared evaluator of tau -> G_t(tau) for one t."""
    return _Slice(k, t, cfg, integrated=False)


def density_G(
    k: KernelSpec, t: float, tau: float, cfg: InversionConfig = InversionConfig()
) -> float:
    """Inverse-subordinator density G_t(tau) >= 0."""
    return max(_Slice(k, t, cfg, integrated=False)(tau), 0.0)


def integrated_G(
    k: KernelSpec, tau: float, t: float, cfg: InversionConfig = InversionConfig()
) -> float:
    """Running integral of s -> G_s(tau) over (0, t], via the transform /lam."""
    return _Slice(k, t, cfg, integrated=True)(tau)


def tau_tail_bound(k: KernelSpec, t: float, tau: float) -> float:
    """Chernoff bound on the mass of G_t beyond tau, evaluated at lam = 1/t."""
    rate = float(np.real(phi(k, 1.0 / t)))
    return math.exp(min(1.0 - tau * rate, 700.0))


def tau_cutoff(k: KernelSpec, t: float, tol: float, tau_max: float = 1e7) -> float:
    """Smallest tau with certified tail mass below ``tol``."""
    rate = float(np.real(phi(k, 1.0 / t)))
    cutoff = (1.0 - math.log(tol)) / rate
    if cutoff > tau_max:
        raise TruncationError(
            f"tail certificate needs tau={cutoff:.3e} > tau_max={tau_max:.3e} at t={t!r}"
        )
    return cutoff


def normalization(
    k: KernelSpec,
    t: float,
    cfg: InversionConfig = InversionConfig(),
    tol: float = 1e-7,
    tau_max: float = 1e7,
) -> float:
    """Total mass of G_t, integrated adaptively up to the certified cutoff."""
    cutoff = tau_cutoff(k, t, tol, tau_max)
    slice_ = density_slice(k, t, cfg)
    rate = float(np.real(phi(k, 1.0 / t)))
    total = 0.0
    edges = np.geomspace(cutoff * 1e-6, cutoff, 13)
    pieces = np.concatenate(([0.0], edges))
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        val, _ = quad(slice_, lo, hi, epsabs=1e-12, epsrel=1e-10, limit=200)
        total += val
        # remaining mass past hi is certified below the bound; stop early
        if math.exp(min(1.0 - hi * rate, 700.0)) < 0.01 * tol:
            break
    return total


def double_laplace_check(
    k: KernelSpec, lam: float, p: float, cfg: InversionConfig = InversionConfig()
) -> tuple:
    """Numerical vs closed-form double (t, tau)-Laplace transform of G.

    Returns (lhs, rhs): lhs integrates e^{-p tau} g(lam, tau) numerically,
    rhs is K(lam)/(lam K(lam) + p).
    """
    if lam <= 0 or p <= 0:
        raise DomainError("double_laplace_check requires lam > 0 and p > 0")
    K = complex(laplace_K(k, lam)).real
    lhs = forward_laplace(lambda tau: float(np.real(g_hat(k, lam, tau))), p, tol=1e-12)
    rhs = K / (lam * K + p)
    return lhs, rhs


@dataclass
class DensityGrid:
    """G sampled on a (t, tau) product grid, with quadrature metadata."""

    kernel: KernelSpec
    t_values: np.ndarray
    tau_values: np.ndarray
    values: np.ndarray
    cfg: InversionConfig
    max_clamp: float = 0.0
    mass_tol: float = 0.01

    def row_masses(self):
        tails = np.array(
            [tau_tail_bound(self.kernel, t, self.tau_values[-1]) for t in self.t_values]
        )
        trapz = np.trapz(self.values, self.tau_values, axis=1)
        return trapz, tails

    def to_csv(self) -> str:
        lines = ["t,tau,G"]
        for i, t in enumerate(self.t_values):
            for j, tau in enumerate(self.tau_values):
                lines.append(f"{t:.17g},{tau:.17g},{self.values[i, j]:.17g}")
        return "\n".join(lines) + "\n"


def build_density_grid(
    k: KernelSpec,
    t_values,
    tau_values,
    cfg: InversionConfig = InversionConfig(),
    mass_tol: float = 0.01,
) -> DensityGrid:
    """Fill a density grid and validate positivity and per-row mass.

    Rows violating the mass window (trapezoid plus certified tail bound within
    ``mass_tol`` of 1) or showing clamped noise beyond 1e-6 raise.
    """
    t_values = np.asarray(t_values, dtype=float)
    tau_values = np.asarray(tau_values, dtype=float)
    if np.any(t_values <= 0) or np.any(np.diff(t_values) <= 0):
        raise DomainError("t_values must be positive and increasing")
    if np.any(tau_values < 0) or np.any(np.diff(tau_values) <= 0):
        raise DomainError("tau_values must be nonnegative and increasing")
    raw = np.empty((len(t_values), len(tau_values)))
    for i, t in enumerate(t_values):
        raw[i] = _Slice(k, float(t), cfg, integrated=False).raw(tau_values)
    max_clamp = float(max(0.0, -(raw.min()))) if raw.min() < 0 else 0.0
    if max_clamp > 1e-6:
        raise DomainError(f"inversion noise {max_clamp:.3e} exceeds the clamp budget")
    grid = DensityGrid(
        kernel=k,
        t_values=t_values,
        tau_values=tau_values,
        values=np.clip(raw, 0.0, None),
        cfg=cfg,
        max_clamp=max_clamp,
        mass_tol=mass_tol,
    )
    trapz, tails = grid.row_masses()
    low = trapz + tails < 1.0 - mass_tol
    high = trapz > 1.0 + mass_tol
    if np.any(low | high):
        i = int(np.argmax(low | high))
        raise DomainError(
            f"row t={t_values[i]!r} mass {trapz[i]:.6f} (+tail {tails[i]:.2e}) "
            f"outside [1 - {mass_tol}, 1 + {mass_tol}]"
        )
    return grid
