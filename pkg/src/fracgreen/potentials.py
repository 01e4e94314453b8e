"""Green potentials and the structural checks built on them.

A potential is psi(x) = int K(x, y) phi(y) dy for a compactly supported
density phi and one of three kernels: the exact zero-coupling kernel
a(N,s)|x-y|^(2s-N), the closed-form comparison surrogate, or the
exponentially weighted resolvent surrogate.

Everything reduces to 1D radial integrals against kernel sphere means
(bipolar reduction) when the density is centered at the origin or the kernel
depends on |x-y| alone; the remaining case (off-center density, coupling-
dependent kernel, arbitrary x) uses the two-angle product reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DomainError
from .fields import RadialField
from .params import ProblemParams
from .quadrature import (QuadratureSpec, adaptive_panel_integral, axis_point,
                         frac_laplacian_at_detailed, log_edges, panel_nodes,
                         sphere_area, sphere_mean_power, sphere_pair_integral)
from .reports import VerificationReport

KERNEL_KINDS = ("riesz_exact", "surrogate", "resolvent_surrogate")


class _RieszKernel:
    """a(N,s) d^(2s-N): exact inverse kernel at zero coupling."""

    distance_only = True

    def __init__(self, params: ProblemParams):
        self.p = params
        self.lam = params.dim - 2.0 * params.order
        self.const = params.riesz_constant

    def pair_value(self, d, rho, r):
        return self.const * np.asarray(d, float) ** (-self.lam)

    def sphere_mean(self, rho, r):
        return self.const * sphere_mean_power(self.lam, rho, r, self.p.dim)


class _SurrogateKernel:
    """Expanded comparison form: three power terms in d with radial weights."""

    distance_only = False

    def __init__(self, params: ProblemParams):
        self.p = params
        N, s, g = params.dim, params.order, params.exponent_gamma
        self.lams = (N - 2.0 * s, N - 2.0 * s - g, N - 2.0 * s - 2.0 * g)
        self.g = g

    def pair_value(self, d, rho, r):
        d = np.asarray(d, float)
        g = self.g
        w = (1.0, rho ** (-g) + np.asarray(r, float) ** (-g),
             (rho * np.asarray(r, float)) ** (-g))
        return sum(wi * d ** (-lam) for wi, lam in zip(w, self.lams))

    def sphere_mean(self, rho, r):
        r = np.asarray(r, float)
        g = self.g
        w = (1.0, rho ** (-g) + r ** (-g), (rho * r) ** (-g))
        return sum(wi * sphere_mean_power(lam, rho, r, self.p.dim)
                   for wi, lam in zip(w, self.lams))


class _ResolventKernel:
    """Exponentially weighted time integral of the heat comparison profile."""

    distance_only = False

    def __init__(self, params: ProblemParams, alpha: float,
                 quad: QuadratureSpec):
        if alpha is None or alpha <= 0.0:
            raise DomainError("resolvent kernel needs alpha > 0")
        self.p = params
        self.alpha = float(alpha)
        self.quad = quad

    def pair_value(self, d, rho, r):
        p, alpha = self.p, self.alpha
        N, s, g = p.dim, p.order, p.exponent_gamma
        d = np.atleast_1d(np.asarray(d, float))
        r = np.broadcast_to(np.asarray(r, float), d.shape)
        T = d ** (2.0 * s)
        c = g / (2.0 * s)
        # tau = t / T puts the min-branch switch at tau = 1 for every row
        q_min = N / (2.0 * s) - 2.0 * c
        decades = (10.0 / (q_min - 1.0) + 10.0)
        tau_hi_pow = 10.0 ** decades
        # exponential truncation: alpha T tau ~ 40 suffices
        tau_hi = min(tau_hi_pow, max(10.0, 45.0 / (alpha * float(T.min()))))
        edges = log_edges(2.0 ** -30, max(tau_hi, 10.0), 3, splits=(1.0,))
        tau, w = panel_nodes(edges, 8)
        t = T[:, None] * tau[None, :]
        tpow = t ** c
        weight = ((1.0 + tpow * rho ** (-g))
                  * (1.0 + tpow * r[:, None] ** (-g)))
        branch = np.minimum(t ** (-N / (2.0 * s)),
                            t * d[:, None] ** (-(N + 2.0 * s)))
        vals = np.exp(-alpha * t) * weight * branch
        return T * (vals @ w)

    def sphere_mean(self, rho, r):
        p = self.p
        N = p.dim
        r = np.atleast_1d(np.asarray(r, float))
        if N == 1:
            out = np.empty_like(r)
            for i, ri in enumerate(r):
                dd = np.array([abs(rho - ri), rho + ri])
                out[i] = self.pair_value(dd, rho, ri).sum()
            return out
        edges = np.linspace(0.0, math.pi / 2.0, 13)
        psi, w = panel_nodes(edges, 12)
        meas = (np.sin(psi) * np.cos(psi)) ** (N - 2)
        front = 2.0 ** (N - 1) * sphere_area(N - 1)
        out = np.empty_like(r)
        for i, ri in enumerate(r):
            a, b = abs(rho - ri), rho + ri
            d = np.sqrt((a * np.cos(psi)) ** 2 + (b * np.sin(psi)) ** 2)
            out[i] = front * np.dot(self.pair_value(d, rho, ri) * meas, w)
        return out


def _make_kernel(kind: str, params: ProblemParams, quad: QuadratureSpec,
                 alpha: float | None):
    if kind == "riesz_exact":
        return _RieszKernel(params)
    if kind == "surrogate":
        return _SurrogateKernel(params)
    if kind == "resolvent_surrogate":
        return _ResolventKernel(params, alpha, quad)
    raise DomainError(f"unknown kernel kind {kind!r}; choose from "
                      f"{KERNEL_KINDS}")


def _density_range(phi: RadialField, quad: QuadratureSpec):
    sup = phi.support_radius()
    if sup is None:
        raise DomainError("potential densities must be compactly supported")
    c = abs(phi.center_norm)
    return max(c - sup, 0.0), c + sup


def _edges_with_diagonal(lo, hi, rho, splits):
    pieces = []
    a_floor = 1e-9 * max(rho, 1e-30)
    lo = max(lo, 1e-12 * hi)
    if lo >= hi:
        return None
    base = log_edges(lo, hi, 4, splits=[p for p in splits if lo < p < hi])
    pieces.append(base)
    if lo < rho < hi:
        span_l = min(0.4 * rho, rho - lo)
        span_r = min(0.4 * rho, hi - rho)
        if span_l > a_floor:
            pieces.append(rho - np.geomspace(a_floor, span_l, 20))
        if span_r > a_floor:
            pieces.append(rho + np.geomspace(a_floor, span_r, 20))
        pieces.append(np.array([rho]))
    edges = np.unique(np.concatenate(pieces))
    return edges[(edges >= lo) & (edges <= hi)]


def green_potential_detailed(phi: RadialField, x, params: ProblemParams,
                             quad: QuadratureSpec,
                             kernel_kind: str = "surrogate",
                             alpha: float | None = None):
    """psi(x) = int K(x,y) phi(y) dy with an error estimate."""
    x = np.asarray(x, dtype=float)
    rho = float(np.linalg.norm(x))
    if rho == 0.0:
        raise DomainError("potentials are evaluated away from the origin")
    kern = _make_kernel(kernel_kind, params, quad, alpha)
    N, s = params.dim, params.order
    lo, hi = _density_range(phi, quad)
    c = phi.center_norm

    if kern.distance_only:
        # only |x - y| matters: bipolar about the density center
        rho_c = float(np.linalg.norm(x - phi.center(N)))
        return _potential_1d(kern, phi, rho_c, 0.0, phi.support_radius(),
                             params, quad, about_center=True)
    if c == 0.0:
        return _potential_1d(kern, phi, rho, lo, hi, params, quad,
                             about_center=False)
    return _potential_pair(kern, phi, x, rho, lo, hi, params, quad)


def _potential_1d(kern, phi, rho, lo, hi, params, quad, about_center):
    N, s = params.dim, params.order

    def integrand(r):
        return phi.profile(r) * r ** (N - 1.0) * kern.sphere_mean(rho, r)

    lo_eff = max(lo, 1e-10 * hi)
    edges = _edges_with_diagonal(lo_eff, hi, rho,
                                 splits=phi.breakpoints())
    if edges is None:
        return 0.0, 0.0
    val, err = adaptive_panel_integral(integrand, edges, quad,
                                       label="potential-1d")
    # head below lo_eff (only when the density reaches the origin)
    if lo == 0.0 and lo_eff > 0:
        head = (float(phi.profile(np.array([lo_eff]))[0])
                * lo_eff ** N / N
                * float(kern.sphere_mean(rho, np.array([lo_eff]))[0]))
        val += head
        err += abs(head) * 0.1
    # diagonal band completion when the density covers |y| = rho
    if lo_eff < rho < hi:
        a_c = 1e-9 * rho
        mean_band = 0.5 * (
            float(kern.sphere_mean(rho, np.array([rho - a_c]))[0])
            + float(kern.sphere_mean(rho, np.array([rho + a_c]))[0]))
        band = (2.0 * float(phi.profile(np.array([rho]))[0])
                * rho ** (N - 1.0) * mean_band * a_c / (2.0 * s))
        val += band
        err += abs(band)
    return float(val), float(err)


def _potential_pair(kern, phi, x, rho, lo, hi, params, quad):
    """Off-center density with a coupling-dependent kernel: two-angle rule.

    The fixed angular rule puts a ~1e-6 floor under the reachable relative
    accuracy, so the radial refinement target is capped there.
    """
    from dataclasses import replace
    quad = replace(quad, rel_tol=max(quad.rel_tol, 3e-6))
    N = params.dim
    c = abs(phi.center_norm)
    cos_beta = float(np.clip(x[0] / rho, -1.0, 1.0))
    if phi.center_norm < 0:
        cos_beta = -cos_beta
    beta = math.acos(cos_beta)

    def integrand(r_nodes):
        r_nodes = np.atleast_1d(r_nodes)
        out = np.empty_like(r_nodes)
        for i, r in enumerate(r_nodes):
            # kernel boundary layer in the polar angle, at most O(1)
            layer = min(max(abs(rho - r) / rho, 1e-8), 0.3)

            def two_cos(mu1, mu2, vers1):
                d = np.sqrt(np.maximum(
                    (rho - r) ** 2 + 2.0 * rho * r * vers1, 1e-300))
                t = np.sqrt(np.maximum(
                    c * c + r * r - 2.0 * c * r * mu2, 0.0))
                return kern.pair_value(d.ravel(), rho, r).reshape(d.shape) \
                    * phi.profile(t)

            theta_edges = np.unique(np.concatenate(
                [[0.0], np.geomspace(0.01 * layer, math.pi, 24),
                 np.linspace(0.0, math.pi, 13)]))
            out[i] = sphere_pair_integral(two_cos, beta, N, order=10,
                                          theta_edges=theta_edges)
        return out * r_nodes ** (N - 1.0)

    edges = _edges_with_diagonal(max(lo, 1e-10 * hi), hi, rho,
                                 splits=phi.breakpoints())
    if edges is None:
        return 0.0, 0.0
    val, err = adaptive_panel_integral(integrand, edges, quad, order=8,
                                       label="potential-pair")
    return float(val), float(err)


def green_potential(phi: RadialField, x, params: ProblemParams,
                    quad: QuadratureSpec, kernel_kind: str = "surrogate",
                    alpha: float | None = None) -> float:
    return green_potential_detailed(phi, x, params, quad,
                                    kernel_kind, alpha)[0]


@dataclass
class PotentialField:
    """A potential with memoized point evaluations.

    The cache is filled by whoever evaluates first; concurrent readers are
    fine once populated (single-writer contract).
    """

    kernel_kind: str
    density: RadialField
    params: ProblemParams
    quad: QuadratureSpec
    alpha: float | None = None
    eval_cache: dict = dc_field(default_factory=dict)

    def evaluate(self, x) -> tuple[float, float]:
        key = tuple(np.round(np.asarray(x, dtype=float), 14))
        if key not in self.eval_cache:
            self.eval_cache[key] = green_potential_detailed(
                self.density, x, self.params, self.quad,
                self.kernel_kind, self.alpha)
        return self.eval_cache[key]

    def __call__(self, x) -> float:
        return self.evaluate(x)[0]


# ---------------------------------------------------------------------------
# Near-origin slope, integrability, and the delta identity
# ---------------------------------------------------------------------------

def _directions(dim: int, n: int):
    if dim == 1:
        return [np.array([1.0]), np.array([-1.0])][:max(1, n)]
    dirs = [axis_point(1.0, dim), -axis_point(1.0, dim)]
    e2 = np.zeros(dim)
    e2[1] = 1.0
    dirs.append(e2)
    diag = (axis_point(1.0, dim) + e2) / math.sqrt(2.0)
    dirs.append(diag)
    return dirs[:max(1, n)]


def origin_slope_fit(phi: RadialField, params: ProblemParams,
                     quad: QuadratureSpec, kernel_kind: str = "surrogate",
                     alpha: float | None = None,
                     window: tuple[float, float] = (1e-3, 1e-2),
                     n_radii: int = 8, n_directions: int = 4):
    """Least-squares slope of log psi against log |x| near the origin.

    psi is averaged over a few directions at each radius. For the surrogate
    kernel the leading term forces the slope toward -gamma (contaminated by
    O(|x|^gamma) from the next kernel term on any finite window).
    """
    if n_radii < 3:
        raise DomainError("slope fit needs at least 3 radii")
    radii = np.geomspace(window[0], window[1], n_radii)
    n_dir = 1 if phi.center_norm == 0.0 else n_directions
    dirs = _directions(params.dim, n_dir)
    means = []
    for rho in radii:
        vals = [green_potential(phi, rho * d, params, quad, kernel_kind,
                                alpha) for d in dirs]
        means.append(float(np.mean(vals)))
    ylog = np.log(np.asarray(means))
    xlog = np.log(radii)
    A = np.vstack([xlog, np.ones_like(xlog)]).T
    (slope, intercept), res, *_ = np.linalg.lstsq(A, ylog, rcond=None)
    rms = math.sqrt(float(res[0]) / n_radii) if res.size else 0.0
    return float(slope), float(intercept), rms


def hardy_integrability_check(phi: RadialField, params: ProblemParams,
                              quad: QuadratureSpec,
                              kernel_kind: str = "surrogate",
                              alpha: float | None = None,
                              n_interior: int = 17,
                              n_exterior: int = 13) -> VerificationReport:
    """Check int psi^2 |x|^(-2s) dx is finite and refinement-stable.

    Split at a ball containing the density support well inside; interior and
    exterior pieces are integrated on nested log grids (trapezoid) and must
    agree across one refinement within 5%. The near-origin and far-field
    remainders are completed by locally fitted power laws; the fitted
    far-field integrand slope is reported.
    """
    N, s, g = params.dim, params.order, params.exponent_gamma
    omega = sphere_area(N)
    lo_sup, hi_sup = _density_range(phi, quad)
    R = 2.0 * max(hi_sup, 1.0)
    R_far = 100.0 * R
    pot = PotentialField(kernel_kind, phi, params, quad, alpha)
    n_dir = 1 if phi.center_norm == 0.0 else 4
    dirs = _directions(N, n_dir)

    def mean_sq(rho):
        return float(np.mean([pot(rho * d) ** 2 for d in dirs]))

    def log_trapz(radii, vals):
        # int j(rho) rho^(N-1) drho on a log grid
        y = vals * radii ** N  # extra rho from the log measure
        return float(np.trapezoid(y, np.log(radii)))

    def piece(radii):
        vals = np.array([mean_sq(r) * r ** (-2.0 * s) for r in radii])
        return radii, vals

    results = {}
    ratios = {}
    for name, lo, hi, n in (("interior", 1e-3 * R, R, n_interior),
                            ("exterior", R, R_far, n_exterior)):
        r_coarse = np.geomspace(lo, hi, n)
        r_fine = np.geomspace(lo, hi, 2 * n - 1)
        _, v_c = piece(r_coarse)
        rf, v_f = piece(r_fine)
        val_c = log_trapz(r_coarse, v_c)
        val_f = log_trapz(rf, v_f)
        results[name] = (val_c, val_f, rf, v_f)
        ratios[name] = val_c / val_f if val_f != 0 else math.inf

    if results["interior"][1] == 0.0 and results["exterior"][1] == 0.0:
        return VerificationReport(
            name="hardy-integrability", computed=0.0, reference=0.0,
            tolerance=0.05, residual=0.0, passed=True,
            details={"interior": 0.0, "exterior": 0.0})

    # near-origin completion from the locally fitted power
    r_in, v_in = results["interior"][2][:2], results["interior"][3][:2]
    sigma0 = math.log(v_in[1] / v_in[0]) / math.log(r_in[1] / r_in[0])
    head = v_in[0] * r_in[0] ** N / (N + sigma0) if N + sigma0 > 0 else math.inf
    # far-field slope of the integrand psi^2 |x|^(-2s)
    r_out, v_out = results["exterior"][2][-4:], results["exterior"][3][-4:]
    fit = np.polyfit(np.log(r_out), np.log(v_out), 1)
    sigma_far = float(fit[0])
    tail = (v_out[-1] * r_out[-1] ** N / (-sigma_far - N)
            if sigma_far + N < 0 else math.inf)

    total = omega * (results["interior"][1] + results["exterior"][1]
                     + head + tail)
    worst_ratio = max(abs(ratios["interior"] - 1.0),
                      abs(ratios["exterior"] - 1.0))
    passed = bool(worst_ratio <= 0.05 and math.isfinite(total))
    return VerificationReport(
        name="hardy-integrability",
        computed=float(total),
        reference=float(omega * (results["interior"][0]
                                 + results["exterior"][0] + head + tail)),
        tolerance=0.05, residual=float(worst_ratio), passed=passed,
        details={
            "interior": results["interior"][1] * omega,
            "exterior": results["exterior"][1] * omega,
            "head": head * omega, "tail": tail * omega,
            "far_slope": sigma_far,
            "far_slope_bound": -2.0 * (N - s - g),
            "ratio_interior": ratios["interior"],
            "ratio_exterior": ratios["exterior"],
        })


# ---------------------------------------------------------------------------
# The delta identity
# ---------------------------------------------------------------------------

class FlapProfile:
    """Radial profile of (-Delta)^s f about the center of a compact field f.

    Spline of pointwise quadrature values inside the support; the exact
    convolution formula (no principal value needed) outside, where f itself
    vanishes. Decays like -c (int f) r^(-N-2s).
    """

    def __init__(self, f: RadialField, params: ProblemParams,
                 quad: QuadratureSpec, n_inside: int = 40):
        from scipy.interpolate import CubicSpline
        sup = f.support_radius()
        if sup is None:
            raise DomainError("delta-identity test functions must be compact")
        self.f = f
        self.p = params
        self.quad = quad
        self.sup = sup
        N = params.dim
        center = f.center(N)
        # Chebyshev-type clustering: the profile varies fastest near the
        # support edge (and the kernel checks probe near the center)
        k = np.arange(n_inside)
        grid = 0.5 * (1.0 - np.cos(math.pi * k / (n_inside - 1))) \
            * sup * 0.999
        vals = [frac_laplacian_at_detailed(
            f, center + axis_point(r, N), params, quad)[0] for r in grid]
        self._spline = CubicSpline(grid, vals, bc_type=(
            (1, 0.0), "not-a-knot"))
        # nodes of the direct convolution formula used outside the support
        edges = log_edges(1e-8 * sup, sup, 6)
        self._q_nodes, self._q_w = panel_nodes(edges, 12)
        self._q_f = f.profile(self._q_nodes) * self._q_nodes ** (N - 1.0)
        self.mass = float(np.dot(self._q_f, self._q_w)) * sphere_area(N)

    def outside(self, r):
        """-c int f(y) |r e1 - y|^(-N-2s) dy, exact for r > support."""
        r = np.atleast_1d(np.asarray(r, float))
        N, s = self.p.dim, self.p.order
        out = np.empty_like(r)
        for i, ri in enumerate(r):
            mean = sphere_mean_power(N + 2.0 * s, ri, self._q_nodes, N)
            out[i] = -self.p.normalizer * float(
                np.dot(self._q_f * mean, self._q_w))
        return out

    def __call__(self, r):
        r = np.atleast_1d(np.asarray(r, float))
        out = np.empty_like(r)
        inside = r < self.sup * 0.999
        if np.any(inside):
            out[inside] = self._spline(r[inside])
        if np.any(~inside):
            out[~inside] = self.outside(r[~inside])
        return out


def delta_identity_check(f: RadialField, x0, params: ProblemParams,
                         quad: QuadratureSpec, mode: str = "strict",
                         kernel_kind: str | None = None,
                         n_inside: int = 40) -> VerificationReport:
    """Weak delta identity: int K(x0, z) (P f)(z) dz should return f(x0).

    mode="strict": zero-coupling case with the exact kernel; P reduces to
    (-Delta)^s and the pass tolerance is 1e-3 (relative where f(x0) is away
    from zero, absolute in the peak otherwise).
    mode="comparability": coupling > 0 with the surrogate kernel; only the
    ratio to f(x0) and its refinement stability are reported (the surrogate
    matches the true kernel up to unknown two-sided constants).
    """
    if mode not in ("strict", "comparability"):
        raise DomainError("mode must be 'strict' or 'comparability'")
    if mode == "strict" and kernel_kind not in (None, "riesz_exact"):
        raise DomainError("a strict pass exists only for the exact "
                          "zero-coupling kernel; use comparability mode "
                          "for the surrogate")
    if mode == "comparability" and kernel_kind not in (None, "surrogate"):
        raise DomainError("comparability mode uses the surrogate kernel")
    x0 = np.asarray(x0, dtype=float)
    rho0 = float(np.linalg.norm(x0))
    if rho0 == 0.0:
        raise DomainError("the identity is checked away from the origin")
    N, s = params.dim, params.order
    flap = FlapProfile(f, params, quad, n_inside=n_inside)
    f_x0 = float(f(x0))
    peak = float(np.max(f.profile(
        np.linspace(0.0, f.support_radius(), 512))))

    if mode == "strict":
        computed = _delta_strict_value(flap, f, x0, params, quad)
        scale = abs(f_x0) if abs(f_x0) > 0.1 * peak else peak
        residual = abs(computed - f_x0) / scale
        return VerificationReport(
            name="delta-identity-zero-coupling",
            computed=computed, reference=f_x0, tolerance=1e-3,
            residual=residual, passed=bool(residual <= 1e-3),
            details={"mode": mode, "relative_scale": scale})

    # comparability mode: collinear geometry, surrogate kernel, full operator
    if abs(float(np.linalg.norm(x0[1:]))) > 1e-12 * rho0:
        raise DomainError("comparability mode expects x0 on the first axis")
    v1 = _delta_surrogate_value(flap, f, x0, params, quad, order=10)
    v2 = _delta_surrogate_value(flap, f, x0, params, quad, order=14)
    ratio = v1 / f_x0 if f_x0 != 0 else math.inf
    stability = abs(v2 - v1) / max(abs(v2), 1e-300)
    return VerificationReport(
        name="delta-identity-comparability",
        computed=v2 / f_x0 if f_x0 != 0 else math.inf,
        reference=1.0, tolerance=math.inf,
        residual=stability,
        passed=bool(math.isfinite(ratio) and stability < 0.05),
        details={"mode": mode, "ratio": ratio,
                 "refinement_stability": stability})


def _delta_strict_value(flap: FlapProfile, f, x0, params, quad) -> float:
    """int Phi(x0 - z) (-Delta)^s f(z) dz via the bipolar reduction."""
    N, s = params.dim, params.order
    rho_c = float(np.linalg.norm(np.asarray(x0, float) - f.center(N)))
    a_const = params.riesz_constant
    lam = N - 2.0 * s
    sup = flap.sup
    r_hi = max(quad.outer_radius, 50.0 * sup, 8.0 * max(rho_c, 1e-3))

    def integrand(t):
        return flap(t) * t ** (N - 1.0) * sphere_mean_power(lam, rho_c, t, N)

    edges = _edges_with_diagonal(1e-9 * sup, r_hi, rho_c,
                                 splits=(sup, 0.999 * sup))
    val, err = adaptive_panel_integral(integrand, edges, quad,
                                       scale_hint=abs(flap.mass),
                                       label="delta-strict")
    # analytic tail: flap ~ -c M r^(-N-2s), kernel mean ~ omega r^(-lam)
    tail = (-params.normalizer * flap.mass * sphere_area(N)
            * r_hi ** (-N) / N)
    return a_const * (val + tail)


def _delta_surrogate_value(flap: FlapProfile, f, x0, params, quad,
                           order: int = 10) -> float:
    """int K_surrogate(x0, z) (P f)(z) dz on collinear geometry."""
    N, s, g = params.dim, params.order, params.exponent_gamma
    theta = params.hardy_strength
    kern = _SurrogateKernel(params)
    c = f.center_norm
    x0 = np.asarray(x0, float)
    rho0 = x0[0] if N > 1 else float(x0)
    sup = flap.sup
    r_hi = max(quad.outer_radius, 50.0 * sup, 8.0 * abs(rho0), 8.0 * abs(c))

    q = rho0 - c  # displacement of x0 from the density center, signed
    sign = 1.0 if q >= 0 else -1.0

    def integrand(t_nodes):
        t_nodes = np.atleast_1d(t_nodes)
        out = np.empty_like(t_nodes)
        fp = flap(t_nodes)
        fv = f.profile(t_nodes)
        for i, t in enumerate(t_nodes):
            # z = c e1 + t nu, th = angle(nu, sign(q) e1): the kernel
            # diagonal sits at th = 0; both distance squares are assembled
            # from versines so no catastrophic cancellation occurs
            def fn_theta(th):
                vers = 2.0 * np.sin(0.5 * th) ** 2    # 1 - cos(th)
                covers = 2.0 * np.cos(0.5 * th) ** 2  # 1 + cos(th)
                d0_sq = (t - abs(q)) ** 2 + 2.0 * abs(q) * t * vers
                z_vers = covers if sign > 0 else vers
                z2 = np.maximum((t - c) ** 2 + 2.0 * c * t * z_vers, 1e-300)
                d0 = np.sqrt(np.maximum(d0_sq, 1e-300))
                kv = kern.pair_value(d0, abs(rho0), np.sqrt(z2))
                return kv * (fp[i] - theta * fv[i] * z2 ** (-s))

            t_sing = abs(q)
            layer = min(max(abs(t - t_sing) / max(t_sing, 1e-3), 1e-7), 0.3)
            edges = np.unique(np.concatenate([
                [0.0], np.geomspace(0.005 * layer, math.pi * 0.5, 14),
                math.pi - np.geomspace(1e-7, math.pi * 0.49, 14),
                np.linspace(0.0, math.pi, 13), [math.pi]]))
            out[i] = _axis_sphere_integral_theta(fn_theta, N, edges, order)
        return out * t_nodes ** (N - 1.0)

    splits = [abs(rho0 - c), abs(c), sup, 0.999 * sup]
    edges = _edges_with_diagonal(1e-9 * sup, r_hi, abs(rho0 - c),
                                 splits=splits)
    val, _ = adaptive_panel_integral(integrand, edges, quad, order=8,
                                     label="delta-surrogate")
    return float(val)


def _axis_sphere_integral_theta(fn_theta, dim, theta_edges, order):
    """int_{S^(N-1)} F(theta(w)) dsigma(w) with custom polar panels,
    theta the angle from the reduction axis."""
    if dim == 1:
        return float(fn_theta(np.array([0.0]))
                     + fn_theta(np.array([math.pi])))
    theta, w = panel_nodes(np.asarray(theta_edges), order)
    vals = fn_theta(theta) * np.sin(theta) ** (dim - 2)
    return float(sphere_area(dim - 1) * np.dot(vals, w))
