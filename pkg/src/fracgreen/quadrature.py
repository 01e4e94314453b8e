"""Singular quadrature engine.

Pointwise evaluation of the fractional Laplacian by its principal-value
integral, weighted radial integrals, and the spherical reductions they need.

Geometry conventions: integrals over R^N are reduced to the radius r = |y|
and the bipolar angle psi with d(psi)^2 = a^2 cos^2 psi + b^2 sin^2 psi,
a = |rho - r|, b = rho + r, which maps the sphere integral of any function of
d = |x - y| (|x| = rho, |y| = r) onto a smooth integral over [0, pi/2]:

    int_{S^{N-1}} K(|rho e1 - r w|) dsigma(w)
        = 2^(N-1) |S^(N-2)| int_0^(pi/2) K(d(psi)) (sin psi cos psi)^(N-2) dpsi.

For pure powers K(d) = d^(-lam) the same integral has the hypergeometric
closed form |S^(N-1)| max^(-lam) 2F1(lam/2, (lam-N)/2+1; N/2; (min/max)^2),
used as the fast path everywhere a power kernel appears.

The principal value of the fractional Laplacian is removed by symmetrized
pairing (2u(x) - u(x+z) - u(x-z)) on a ball where u is smooth; the remaining
far region is integrated in origin-centered coordinates so that power-law
mass near the origin is carried explicitly by the 1D radial integrand, and
truncation beyond the outer radius is completed by analytic power tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, hyp2f1

from .errors import (DivergenceError, DomainError, SingularityError,
                     ToleranceError)
from .fields import RadialField, TruncatedPowerLaw
from .params import ProblemParams, power_multiplier

_MAX_DOUBLINGS = 7
_DEFAULT_ORDER = 12


@dataclass(frozen=True)
class QuadratureSpec:
    """Knobs shared by every singular integral in the package.

    inner_radius is a fraction of the local smoothness scale below which the
    symmetrized integrand is completed by its Taylor limit; outer_radius is
    the absolute far-field truncation radius beyond which analytic power
    tails take over; max_depth bounds panel-refinement rounds; angular_order
    is the Gauss-Legendre order of the spherical panels.
    """

    inner_radius: float = 1e-3
    outer_radius: float = 1e3
    max_depth: int = 30
    rel_tol: float = 1e-7
    angular_order: int = 16

    def __post_init__(self):
        if not self.inner_radius < self.outer_radius:
            raise DomainError("need inner_radius < outer_radius")
        if not 0.0 < self.rel_tol <= 1e-2:
            raise DomainError("rel_tol must lie in (0, 1e-2]")
        if self.max_depth < 4:
            raise DomainError("max_depth must be >= 4")
        if self.angular_order < 4:
            raise DomainError("angular_order must be >= 4")


def axis_point(rho: float, dim: int) -> np.ndarray:
    """The point rho * e1 of R^dim."""
    x = np.zeros(dim)
    x[0] = rho
    return x


def sphere_area(dim: int) -> float:
    """Surface measure of the unit sphere S^(dim-1); |S^0| = 2."""
    if dim < 1:
        raise DomainError("dim must be >= 1")
    return 2.0 * math.pi ** (dim / 2.0) / math.exp(gammaln(dim / 2.0))


# ---------------------------------------------------------------------------
# Gauss-Legendre panel machinery
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def _gl(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def panel_nodes(edges: np.ndarray, order: int):
    """Nodes/weights of composite Gauss-Legendre over consecutive panels."""
    x, w = _gl(order)
    edges = np.asarray(edges, dtype=float)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def _refine_edges(edges: np.ndarray) -> np.ndarray:
    lo, hi = edges[:-1], edges[1:]
    geo = (lo > 0) & (hi > 2.0 * lo)
    mid = np.where(geo, np.sqrt(np.maximum(lo, 1e-300) * hi),
                   0.5 * (lo + hi))
    out = np.empty(edges.size * 2 - 1)
    out[0::2] = edges
    out[1::2] = mid
    return out


def adaptive_panel_integral(fn, edges, quad: QuadratureSpec, order=None,
                            scale_hint: float = 0.0, label: str = ""):
    """Integrate a vectorized integrand over the given panel edges,
    doubling the panels until two refinements agree to rel_tol.

    Returns (value, error_estimate); raises ToleranceError if the doubling
    budget runs out while the defect is still well above tolerance.
    """
    order = order or _DEFAULT_ORDER
    edges = np.unique(np.asarray(edges, dtype=float))
    if edges.size < 2:
        return 0.0, 0.0
    rounds = max(2, min(quad.max_depth, _MAX_DOUBLINGS))
    prev = None
    val, err = 0.0, math.inf
    for _ in range(rounds):
        nodes, weights = panel_nodes(edges, order)
        val = float(np.dot(np.asarray(fn(nodes), dtype=float), weights))
        if prev is not None:
            err = abs(val - prev)
            if err <= quad.rel_tol * max(abs(val), scale_hint, 1e-300):
                return val, err
        prev = val
        edges = _refine_edges(edges)
    if err > 5.0 * quad.rel_tol * max(abs(val), scale_hint, 1e-300):
        raise ToleranceError(
            f"panel integral {label or 'anonymous'}: defect {err:.3e} "
            f"at value {val:.6e} after {rounds} refinements")
    return val, err


def log_edges(lo: float, hi: float, per_decade: int = 4,
              splits=()) -> np.ndarray:
    """Geometric panel edges on [lo, hi] with extra split points inserted."""
    if not 0 < lo < hi:
        raise DomainError("log_edges needs 0 < lo < hi")
    n = max(2, int(math.ceil(per_decade * math.log10(hi / lo))) + 1)
    edges = np.geomspace(lo, hi, n)
    extra = [p for p in splits if lo < p < hi]
    if extra:
        edges = np.unique(np.concatenate([edges, np.asarray(extra)]))
    return edges


# ---------------------------------------------------------------------------
# Spherical reductions
# ---------------------------------------------------------------------------

def sphere_mean_power(lam: float, rho: float, r, dim: int):
    """int_{S^(N-1)} |rho e1 - r w|^(-lam) dsigma(w), vectorized in r.

    Hypergeometric closed form; diverges logarithmically only as r -> rho
    when lam >= N - 1 (never evaluated at r = rho exactly).
    """
    r = np.asarray(r, dtype=float)
    if dim == 1:
        return np.abs(rho - r) ** (-lam) + (rho + r) ** (-lam)
    mx = np.maximum(rho, r)
    mn = np.minimum(rho, r)
    # scipy's hyp2f1 overflows in the logarithmic case (lam = N-1) within
    # ~1e-14 of z = 1; the clip moves such nodes by a negligible sliver
    t2 = np.clip((mn / mx) ** 2, 0.0, 1.0 - 1e-12)
    return (sphere_area(dim) * mx ** (-lam)
            * hyp2f1(lam / 2.0, (lam - dim) / 2.0 + 1.0, dim / 2.0, t2))


def _bipolar_weight(dim: int) -> float:
    return 2.0 ** (dim - 1) * sphere_area(dim - 1)


def sphere_profile_means(profile_fn, rho: float, r, dim: int,
                         order: int = 16, n_panels: int = 12):
    """int_{S^(N-1)} profile(|rho e1 + r w|) dsigma(w) for a batch of radii r.

    Bipolar-angle composite Gauss-Legendre; intended for radii whose shell
    [|rho-r|, rho+r] stays clear of profile breakpoints (the caller splits
    elsewhere), so uniform psi-panels converge spectrally.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if dim == 1:
        return profile_fn(np.abs(rho - r)) + profile_fn(rho + r)
    a = np.abs(rho - r)[:, None]
    b = (rho + r)[:, None]
    edges = np.linspace(0.0, math.pi / 2.0, n_panels + 1)
    psi, w = panel_nodes(edges, order)
    d = np.sqrt((a * np.cos(psi)) ** 2 + (b * np.sin(psi)) ** 2)
    vals = profile_fn(d) * (np.sin(psi) * np.cos(psi)) ** (dim - 2)
    return _bipolar_weight(dim) * vals @ w


def sphere_power_cut(lam: float, rho: float, r, dim: int, d_min: float,
                     order: int = 16, n_panels: int = 12):
    """Partial sphere integral of d^(-lam) restricted to d > d_min.

    Equals sphere_mean_power wherever the whole shell satisfies d > d_min;
    on straddling shells the bipolar angle is integrated from the cut.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if dim == 1:
        a, b = np.abs(rho - r), rho + r
        out = np.where(a > d_min, a ** (-lam), 0.0)
        out = out + np.where(b > d_min, b ** (-lam), 0.0)
        return out
    a = np.abs(rho - r)
    b = rho + r
    out = np.empty_like(a)
    full = a >= d_min
    if np.any(full):
        out[full] = sphere_mean_power(lam, rho, r[full], dim)
    part = ~full
    if np.any(part):
        ap, bp = a[part], b[part]
        s2 = np.clip((d_min ** 2 - ap ** 2) / (bp ** 2 - ap ** 2), 0.0, 1.0)
        psi_star = np.arcsin(np.sqrt(s2))
        unit = np.linspace(0.0, 1.0, n_panels + 1)
        u_nodes, u_w = panel_nodes(unit, order)
        span = (math.pi / 2.0 - psi_star)[:, None]
        psi = psi_star[:, None] + span * u_nodes[None, :]
        w = span * u_w[None, :]
        d = np.sqrt((ap[:, None] * np.cos(psi)) ** 2
                    + (bp[:, None] * np.sin(psi)) ** 2)
        vals = d ** (-lam) * (np.sin(psi) * np.cos(psi)) ** (dim - 2)
        out[part] = _bipolar_weight(dim) * np.sum(vals * w, axis=1)
    return out


def sphere_pair_integral(fn_two_cos, beta: float, dim: int,
                         order: int = 16, theta_edges=None):
    """int_{S^(N-1)} F(<w, e_a>, <w, e_b>) dsigma(w), angle(e_a, e_b) = beta.

    Used for integrands combining a kernel centered on one axis with a
    density centered on another. `theta_edges` refines the polar panels
    (the kernel direction); the second reduction angle is always smooth.
    The integrand is called as F(mu1, mu2, vers1) where vers1 = 1 - mu1 is
    supplied in cancellation-free form (2 sin^2(theta/2)) so near-diagonal
    kernel distances can be assembled stably.
    """
    if dim == 1:
        cb = math.cos(beta)
        return fn_two_cos(np.array([1.0, -1.0]), np.array([cb, -cb]),
                          np.array([0.0, 2.0])).sum()
    if theta_edges is None:
        theta_edges = np.linspace(0.0, math.pi, 13)
    if dim == 2:
        # full circle: w at angle phi from e_a, e_b at angle beta
        phi, w = panel_nodes(np.asarray(theta_edges), order)
        both = np.concatenate([phi, -phi])
        wts = np.concatenate([w, w])
        vers = 2.0 * np.sin(0.5 * both) ** 2
        return float(np.dot(fn_two_cos(np.cos(both), np.cos(both - beta),
                                       vers), wts))
    theta, wt = panel_nodes(np.asarray(theta_edges), order)
    chi, wc = panel_nodes(np.linspace(0.0, math.pi, 9), order)
    ct, st = np.cos(theta)[:, None], np.sin(theta)[:, None]
    cchi = np.cos(chi)[None, :]
    mu2 = ct * math.cos(beta) + st * math.sin(beta) * cchi
    mu1 = np.broadcast_to(ct, mu2.shape)
    vers1 = np.broadcast_to((2.0 * np.sin(0.5 * theta) ** 2)[:, None],
                            mu2.shape)
    vals = fn_two_cos(mu1, mu2, vers1)
    vals = vals * st ** (dim - 2) * np.sin(chi)[None, :] ** (dim - 3)
    inner = vals @ wc
    return float(sphere_area(dim - 2) * np.dot(inner, wt))


# ---------------------------------------------------------------------------
# Weighted radial integrals
# ---------------------------------------------------------------------------

def integrate_radial_singular(field: RadialField, weight_exponent: float,
                              dim: int, quad: QuadratureSpec) -> float:
    """int_{R^N} f(|z - c|) |z - c|^(-beta) dz by exact radial reduction.

    The weight is taken about the field's own center. Requires beta < N,
    integrability at the center (origin exponent + beta < N) and at
    infinity (compact support, or tail decay p with p + beta > N).
    """
    beta = weight_exponent
    if beta >= dim:
        raise DivergenceError(f"weight exponent {beta} >= dim {dim}")
    if field.origin_exponent + beta >= dim:
        raise DivergenceError(
            f"profile blowup {field.origin_exponent} + weight {beta} "
            f"not integrable in dim {dim}")
    sup = field.support_radius()
    tail = field.tail_power()
    if sup is None:
        if tail is None:
            raise DivergenceError("unbounded field without a tail model")
        coef, p = tail
        if p + beta <= dim:
            raise DivergenceError(
                f"tail decay {p} + weight {beta} <= dim {dim}: divergent")
    power = dim - 1.0 - beta + (-field.origin_exponent)
    # power of the integrand near 0 is dim-1-beta-origin_exponent > -1
    scale = max(field.tail_start(), 1.0)
    r_hi = sup if sup is not None else max(quad.outer_radius, 4.0 * scale)
    r_lo = min(1e-10, 1e-10 * r_hi)
    # remainder below r_lo is a pure power integral, add it analytically
    head = (field.profile(np.array([r_lo]))[0] * r_lo ** (dim - beta)
            / (power + 1.0)) if power + 1.0 > 0 else 0.0
    edges = log_edges(r_lo, r_hi, per_decade=4, splits=field.breakpoints())

    def integrand(r):
        return field.profile(r) * r ** (dim - 1.0 - beta)

    val, err = adaptive_panel_integral(integrand, edges, quad,
                                       label="radial-singular")
    total = val + head
    if sup is None:
        coef, p = tail
        total += coef * r_hi ** (dim - p - beta) / (p + beta - dim)
    return sphere_area(dim) * total


# ---------------------------------------------------------------------------
# Fractional Laplacian, pointwise
# ---------------------------------------------------------------------------

def frac_laplacian_power_law(alpha: float, x, params: ProblemParams) -> float:
    """(-Delta)^s |x|^(-alpha) in closed form via the power multiplier.

    Exact for 0 < alpha < N - 2s; serves as the oracle for quadrature
    validation on smoothly truncated powers.
    """
    x = np.asarray(x, dtype=float)
    rho = float(np.linalg.norm(x))
    if rho == 0.0:
        raise SingularityError("power profile is singular at the origin")
    lam = power_multiplier(alpha, params.dim, params.order)
    return lam * rho ** (-alpha - 2.0 * params.order)


def _smooth_ball_radius(field: RadialField, rho: float) -> float:
    gaps = [abs(rho - b) for b in field.breakpoints()]
    if field.singular_at_origin:
        gaps.append(rho)
    gap = min(gaps) if gaps else math.inf
    r_split = 0.5 * min(rho, gap)
    return max(r_split, 0.025 * rho)


def _flap_at_center(field: RadialField, params: ProblemParams,
                    quad: QuadratureSpec):
    """(-Delta)^s u at the field's own center (smooth profiles only)."""
    N, s = params.dim, params.order
    c_ns = params.normalizer
    omega = sphere_area(N)
    u0 = float(field.profile(np.array([0.0]))[0])
    sup = field.support_radius()
    tail = field.tail_power()
    r_hi = sup if sup is not None else max(quad.outer_radius,
                                           4.0 * field.tail_start())
    r_c = quad.inner_radius * min(1.0, r_hi) * 1e-1
    diff_c = u0 - float(field.profile(np.array([r_c]))[0])
    head = diff_c * r_c ** (-2.0 * s) / (2.0 - 2.0 * s)

    def integrand(r):
        return (u0 - field.profile(r)) * r ** (-1.0 - 2.0 * s)

    edges = log_edges(r_c, r_hi, per_decade=4, splits=field.breakpoints())
    val, err = adaptive_panel_integral(integrand, edges, quad,
                                       scale_hint=abs(u0) * r_c ** (-2 * s),
                                       label="flap-center")
    # beyond r_hi the u0 part integrates exactly; the tail part analytically
    far = u0 * r_hi ** (-2.0 * s) / (2.0 * s)
    if sup is None and tail is not None:
        coef, p = tail
        far -= coef * r_hi ** (-p - 2.0 * s) / (p + 2.0 * s)
    total = c_ns * omega * (head + val + far)
    return total, c_ns * omega * (err + abs(head) * (r_c / r_hi) ** 2)


def frac_laplacian_at_detailed(field: RadialField, x,
                               params: ProblemParams,
                               quad: QuadratureSpec):
    """(-Delta)^s u(x) with an error estimate.

    Symmetrized shells on the largest ball around x where u is smooth,
    closed-form far-field mass of u(x), and the remaining convolution of u
    against the kernel in origin-centered coordinates with analytic tails.
    """
    N, s = params.dim, params.order
    c_ns = params.normalizer
    omega = sphere_area(N)
    x = np.asarray(x, dtype=float)
    center = field.center(N)
    rho = float(np.linalg.norm(x - center))
    if field.origin_exponent >= N:
        raise DivergenceError(
            f"profile blowup r^-{field.origin_exponent} is not locally "
            f"integrable in dimension {N}")
    if field.singular_at_origin and rho == 0.0:
        raise SingularityError(
            "evaluation point coincides with the profile singularity")
    if rho == 0.0:
        return _flap_at_center(field, params, quad)

    u_x = float(field.profile(np.array([rho]))[0])
    r_split = _smooth_ball_radius(field, rho)

    # inner symmetrized shells: -c int_0^R r^(-1-2s) S_diff(r) dr with
    # S_diff(r) = int_S [u(x + r w) - u(x)] dsigma(w)
    def sphere_diff(r):
        return sphere_profile_means(
            lambda d: field.profile(d) - u_x, rho, r, N,
            order=quad.angular_order)

    r_c = quad.inner_radius * r_split
    diff_c = float(sphere_diff(np.array([r_c]))[0])
    inner_head = -c_ns * diff_c * r_c ** (-2.0 * s) / (2.0 - 2.0 * s)

    def inner_integrand(r):
        return sphere_diff(r) * r ** (-1.0 - 2.0 * s)

    splits = [abs(rho - b) for b in field.breakpoints()
              if 0 < abs(rho - b) < r_split]
    inner_val, inner_err = adaptive_panel_integral(
        inner_integrand, log_edges(r_c, r_split, 4, splits=splits), quad,
        scale_hint=abs(diff_c) * r_c ** (-2.0 * s),
        label="flap-inner")
    inner = inner_head - c_ns * inner_val

    # far-field mass of u(x): closed form
    far_ux = c_ns * u_x * omega * r_split ** (-2.0 * s) / (2.0 * s)

    # convolution of u against the kernel outside the ball, polar at center
    lam = N + 2.0 * s
    sup = field.support_radius()
    tail = field.tail_power()
    r_hi = sup if sup is not None else max(quad.outer_radius,
                                           8.0 * rho,
                                           4.0 * field.tail_start())
    alpha0 = field.origin_exponent
    r_lo = rho * (1e-3 * quad.rel_tol) ** (1.0 / (N - alpha0)) \
        if alpha0 > 0 else 1e-10 * rho
    r_lo = min(r_lo, 1e-6 * rho)

    def outer_integrand(r):
        cut = sphere_power_cut(lam, rho, r, N, r_split,
                               order=quad.angular_order)
        return field.profile(r) * r ** (N - 1.0) * cut

    edges = log_edges(r_lo, r_hi, per_decade=4,
                      splits=tuple(field.breakpoints())
                      + (rho - r_split, rho, rho + r_split))
    scale = abs(u_x) * omega * rho ** (-2.0 * s)
    outer_val, outer_err = adaptive_panel_integral(
        outer_integrand, edges, quad, scale_hint=scale, label="flap-outer")
    # head remainder below r_lo and analytic power tail beyond r_hi
    # below r_lo: u(r) r^(N-1) integrates like a pure power against the
    # (there) constant kernel mean
    head_rem = (float(field.profile(np.array([r_lo]))[0])
                * r_lo ** N / (N - alpha0)
                * float(sphere_power_cut(lam, rho, np.array([r_lo]), N,
                                         r_split)[0]))
    tail_val = 0.0
    tail_err = 0.0
    if sup is None and tail is not None:
        coef, p = tail
        tail_val = coef * omega * r_hi ** (-p - 2.0 * s) / (p + 2.0 * s)
        tail_err = tail_val * (rho / r_hi) ** 2 * lam
    conv = c_ns * (outer_val + head_rem + tail_val)

    value = inner + far_ux - conv
    error = (inner_err * c_ns + outer_err * c_ns
             + c_ns * (abs(head_rem) + tail_err)
             + abs(inner_head) * (r_c / r_split) ** 2)
    return value, error


def frac_laplacian_at(field: RadialField, x, params: ProblemParams,
                      quad: QuadratureSpec) -> float:
    """(-Delta)^s u(x) by singular quadrature (see detailed variant)."""
    return frac_laplacian_at_detailed(field, x, params, quad)[0]


def truncation_correction_detailed(field: TruncatedPowerLaw, x,
                                   params: ProblemParams,
                                   quad: QuadratureSpec):
    """Exact effect of the inner/outer truncation on (-Delta)^s at x.

    For x in the field's clean window,
        (-Delta)^s u(x) = multiplier * |x|^(-alpha-2s) + correction,
    correction = c int (pure - u)(y) |x - y|^(-N-2s) dy  (> 0),
    computed here by 1D radial quadrature against kernel sphere means.
    """
    if not isinstance(field, TruncatedPowerLaw):
        raise DomainError("truncation correction needs a TruncatedPowerLaw")
    N, s = params.dim, params.order
    lam = N + 2.0 * s
    x = np.asarray(x, dtype=float)
    rho = float(np.linalg.norm(x - field.center(N)))
    lo_w, hi_w = field.clean_window()
    if not lo_w < rho < hi_w:
        raise DomainError(
            f"|x|={rho} outside the clean window ({lo_w}, {hi_w})")

    def err_profile(r):
        return field.pure(r) - field.profile(r)

    alpha = field.exponent

    def integrand(r):
        return (err_profile(r) * r ** (N - 1.0)
                * sphere_mean_power(lam, rho, r, N))

    # inner truncated zone (0, 2 r1]
    r1 = field.inner_cut
    r_lo = r1 * (1e-3 * quad.rel_tol) ** (1.0 / (N - alpha))
    inner_val, inner_err = adaptive_panel_integral(
        integrand, log_edges(r_lo, 2.0 * r1, 4, splits=(r1,)), quad,
        scale_hint=0.0, label="trunc-inner")
    head = (field.pure(np.array([r_lo]))[0] * r_lo ** N / (N - alpha)
            * float(sphere_mean_power(lam, rho, np.array([r_lo]), N)[0]))

    # outer truncated zone [r2/2, inf)
    r2 = field.outer_cut
    r_ext = max(8.0 * r2, 64.0 * rho)
    outer_val, outer_err = adaptive_panel_integral(
        integrand, log_edges(0.5 * r2, r_ext, 4, splits=(r2,)), quad,
        scale_hint=0.0, label="trunc-outer")
    omega = sphere_area(N)
    tail = (field.amplitude * omega * r_ext ** (-alpha - 2.0 * s)
            / (alpha + 2.0 * s))
    tail_err = tail * (rho / r_ext) ** 2 * lam

    c_ns = params.normalizer
    corr = c_ns * (inner_val + head + outer_val + tail)
    err = c_ns * (inner_err + outer_err + tail_err + abs(head) * 1e-3)
    return corr, err


def truncation_correction(field: TruncatedPowerLaw, x,
                          params: ProblemParams,
                          quad: QuadratureSpec) -> float:
    return truncation_correction_detailed(field, x, params, quad)[0]
