"""Non-commutative Fourier transform, its inverse, and the property checks.

Conventions: ``F(psi)(X) = int dg E_g(X) psi(g)`` and
``F^-1(psit)(g) = sigma(g) (2 pi)^-d int d^dX conj(E_g(X)) psit(X)``.
Group integrals run over the map's chart with the Haar weight folded into
the node weights (FLM integrates over the upper hemisphere, i.e. SO(3)).
"""
from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..groups import PI, SU2, U1, quat_mul
from ..maps import MapKind
from ..planewave import (
    eta,
    evaluate,
    make_plane_wave,
    sigma_of_zeta,
    star_p_multiply,
    zeta_from_group,
)
from .functions import AlgebraFunction, GroupFunction, PointMassFunction
from .quadrature import (
    AliasingWarning,
    CutoffWarning,
    QuadratureSpec,
    QuadratureWarning,
    algebra_tensor_grid,
    gauss_legendre,
    group_grid,
    radial_algebra_nodes,
    uniform_axis,
)

#: complex entries per block of the node-by-point phase matrix
BLOCK_ELEMENTS = 1 << 21
#: direction along which radial transforms are sampled with the full 3-D rule
RADIAL_DIRECTION = np.array([1.0, 2.0, 2.0]) / 3.0


def _spec(kind: MapKind, quad):
    return QuadratureSpec.default(kind) if quad is None else quad


def _as_points(kind: MapKind, X):
    X = np.asarray(X, dtype=float)
    if kind.group == "u1":
        return X.reshape(-1), X.shape
    if X.shape[-1] != 3:
        raise ValueError("su(2)* points must have 3 components")
    return X.reshape(-1, 3), X.shape[:-1]


def _group_points(kind: MapKind, g):
    """Stacked group data from an element, a list of elements, or an array."""
    if isinstance(g, (SU2, U1)):
        g = [g]
    if isinstance(g, (list, tuple)) and g and isinstance(g[0], (SU2, U1)):
        return np.array([x.theta if isinstance(x, U1) else x.quaternion for x in g])
    data = np.asarray(g, dtype=float)
    return data.reshape(-1) if kind.group == "u1" else data.reshape(-1, 4)


def kernel_sum(nodes, coeffs, points, sign: float = 1.0, workers: int | None = None):
    """``out[m] = sum_n coeffs[n] exp(i sign nodes[n].points[m])``.

    Sums run along contiguous rows with numpy's pairwise summation, so the
    result does not depend on the blocking or on the number of workers.
    """
    nodes = np.asarray(nodes, dtype=float)
    points = np.asarray(points, dtype=float)
    coeffs = np.asarray(coeffs, dtype=complex)
    keep = coeffs != 0
    nodes, coeffs = nodes[keep], coeffs[keep]
    m = len(points)
    out = np.zeros(m, dtype=complex)
    if m == 0 or len(coeffs) == 0:
        return out
    rows = max(1, BLOCK_ELEMENTS // len(coeffs))
    one_dim = nodes.ndim == 1

    def block(start):
        p = points[start : start + rows]
        phase = np.multiply.outer(p, nodes) if one_dim else p @ nodes.T
        out[start : start + rows] = np.sum(np.exp((1j * sign) * phase) * coeffs, axis=1)

    starts = range(0, m, rows)
    if workers and workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(block, starts))
    else:
        for s in starts:
            block(s)
    return out


# ---------------------------------------------------------------- forward


def forward(kind, psi: GroupFunction, X, quad: QuadratureSpec | None = None, workers=None, check: bool = False):
    """Quadrature value of ``int dg E_g(X) psi(g)`` at one or many points ``X``."""
    kind = MapKind.parse(kind)
    quad = _spec(kind, quad)
    pts, shape = _as_points(kind, X)
    grid = group_grid(kind, quad)
    coeffs = psi(grid.data) * grid.weights * eta(kind, grid.zeta)
    out = kernel_sum(grid.zeta, coeffs, pts, 1.0, workers)
    if check:
        coarse = group_grid(kind, quad.coarsened())
        c2 = psi(coarse.data) * coarse.weights * eta(kind, coarse.zeta)
        diff = float(np.max(np.abs(kernel_sum(coarse.zeta, c2, pts, 1.0, workers) - out), initial=0.0))
        if diff > quad.tolerance:
            warnings.warn(
                f"forward transform changed by {diff:.3g} between refinements (tolerance {quad.tolerance:.3g})",
                QuadratureWarning,
                stacklevel=2,
            )
    return out.reshape(shape)


def forward_pointmass(kind, m: PointMassFunction, X):
    """Exact ``sum_a c_a E_{g_a}(X)``."""
    kind = MapKind.parse(kind)
    X = np.asarray(X, dtype=float)
    total = 0.0
    for g, c in m:
        total = total + c * evaluate(make_plane_wave(kind, g), X)
    return total


def forward_radial(kind, psi: GroupFunction, rho, quad: QuadratureSpec | None = None, workers=None):
    """Forward transform of a radial function at ``X = rho * n`` with the full 3-D group rule."""
    kind = MapKind.parse(kind)
    rho = np.asarray(rho, dtype=float)
    return forward(kind, psi, rho[:, None] * RADIAL_DIRECTION[None, :], quad, workers)


def sample_forward(kind, psi: GroupFunction, quad: QuadratureSpec | None = None, workers=None) -> AlgebraFunction:
    """``F(psi)`` sampled on the uniform algebra grid of ``quad``."""
    kind = MapKind.parse(kind)
    quad = _spec(kind, quad)
    axis, h = uniform_axis(quad)
    if kind.group == "u1":
        pts, shape = axis, (quad.nodes,)
    else:
        mesh = np.meshgrid(axis, axis, axis, indexing="ij")
        pts = np.stack([m.reshape(-1) for m in mesh], axis=-1)
        shape = (quad.nodes,) * 3
    vals = forward(kind, psi, pts, quad, workers)
    return AlgebraFunction(dim=kind.dim, points=pts, values=vals, cutoff=quad.cutoff, spacing=h, shape=shape)


# ---------------------------------------------------------------- inverse


def _warn_cutoff(kind, pts, weights, vals, quad):
    d = kind.dim
    r = np.abs(pts) if pts.ndim == 1 else np.linalg.norm(pts, axis=-1)
    shell = r > 0.9 * quad.cutoff
    contrib = float(np.sum(np.abs(weights * vals)[shell])) / (2.0 * PI) ** d
    if contrib > quad.tolerance:
        warnings.warn(
            f"algebra integrand carries {contrib:.3g} in the outer 10% of the cutoff {quad.cutoff}",
            CutoffWarning,
            stacklevel=3,
        )


def inverse(kind, psit: AlgebraFunction, g, quad: QuadratureSpec | None = None, workers=None, check: bool = True):
    """``sigma(g) (2 pi)^-d int_{box} conj(E_g(X)) psit(X) d^dX`` by quadrature.

    U(1) maps use the uniform midpoint rule on ``[-R, R]``; su(2) maps use the
    tensor Gauss-Legendre rule on ``[-R, R]^3``.  Sampled ``psit`` must live on
    the matching grid.
    """
    kind = MapKind.parse(kind)
    quad = _spec(kind, quad)
    data = _group_points(kind, g)
    zeta = zeta_from_group(kind, data)
    if kind.group == "u1":
        pts, h = uniform_axis(quad)
        weights = np.full(len(pts), h)
    else:
        pts, weights = algebra_tensor_grid(3, quad)
    if psit.is_sampled:
        if psit.points.shape != pts.shape or not np.allclose(psit.points, pts):
            raise ValueError("sampled function does not live on the quadrature grid")
        vals = psit.values
    else:
        vals = psit(pts)
    if check:
        _warn_cutoff(kind, pts, weights, vals, quad)
    integral = kernel_sum(pts, weights * vals, zeta, -1.0, workers)
    out = sigma_of_zeta(kind, zeta) * eta(kind, zeta) * integral / (2.0 * PI) ** kind.dim
    return out if not isinstance(g, (SU2, U1)) else complex(out[0])


def spherical_j0(x):
    return np.sinc(np.asarray(x, dtype=float) / PI)


def inverse_radial(kind, rho, weights, values, g):
    """Inverse transform of a radial ``psit`` given on radial nodes ``rho``.

    The angular integral of ``conj(E_g)`` is done in closed form, leaving
    ``sigma eta (2 pi)^-3 4 pi int rho^2 j0(|zeta| rho) psit(rho) d rho``.
    """
    kind = MapKind.parse(kind)
    if kind.group != "su2":
        raise ValueError("the radial path is for su(2) maps")
    data = _group_points(kind, g)
    zeta = zeta_from_group(kind, data)
    s = np.linalg.norm(zeta, axis=-1)
    rho = np.asarray(rho, dtype=float)
    kernel = spherical_j0(np.multiply.outer(s, rho))
    integral = kernel @ (np.asarray(weights) * rho * rho * np.asarray(values, dtype=complex))
    out = sigma_of_zeta(kind, zeta) * eta(kind, zeta) * 4.0 * PI * integral / (2.0 * PI) ** 3
    return out if not isinstance(g, (SU2, U1)) else complex(out[0])


# ---------------------------------------------------------------- round trip and isometry


def roundtrip_values(kind, psi: GroupFunction, quad: QuadratureSpec | None, samples, workers=None):
    """``(psi, F^-1 F psi)`` at the sample points.

    Radial functions on SU(2) go through the radial fast path: the forward
    transform is taken with the full 3-D group rule along one ray, the inverse
    by the one-dimensional radial integral.
    """
    kind = MapKind.parse(kind)
    quad = _spec(kind, quad)
    data = _group_points(kind, samples)
    exact = psi(data)
    if kind.group == "u1":
        psit = sample_forward(kind, psi, quad, workers)
        back = inverse(kind, psit, data, quad, workers)
    elif psi.radial is not None:
        rho, w = radial_algebra_nodes(quad)
        vals = forward_radial(kind, psi, rho, quad, workers)
        back = inverse_radial(kind, rho, w, vals, data)
    else:
        pts, _ = algebra_tensor_grid(3, quad)
        vals = forward(kind, psi, pts, quad, workers)
        psit = AlgebraFunction(dim=3, points=pts, values=vals, cutoff=quad.cutoff)
        back = inverse(kind, psit, data, quad, workers)
    return exact, back


def roundtrip_error(kind, psi: GroupFunction, quad: QuadratureSpec | None, samples, workers=None) -> float:
    """``max |F^-1 F psi - psi| / max |psi|`` over the sample points."""
    exact, back = roundtrip_values(kind, psi, quad, samples, workers)
    err = float(np.max(np.abs(back - exact), initial=0.0))
    scale = float(np.max(np.abs(exact), initial=0.0))
    return err / scale if scale > 0 else err


def group_inner_product(kind, psi1: GroupFunction, psi2: GroupFunction, quad: QuadratureSpec | None = None):
    """``<psi1, psi2>_G`` with the same group rule as the transform."""
    kind = MapKind.parse(kind)
    grid = group_grid(kind, _spec(kind, quad))
    return complex(np.sum(grid.weights * np.conj(psi1(grid.data)) * psi2(grid.data)))


def _frequencies(n: int, h: float):
    return 2.0 * PI * np.fft.fftfreq(n, d=h)


def sigma_multiplier(kind, freq):
    """``sigma`` on spectral points, set to zero outside the chart image."""
    kind = MapKind.parse(kind)
    freq = np.asarray(freq, dtype=float)
    r = np.abs(freq) if kind.group == "u1" else np.linalg.norm(freq, axis=-1)
    limit = kind.chart_radius
    inside = r < limit
    safe = np.where(inside[..., None], freq, 0.0) if kind.group == "su2" else np.where(inside, freq, 0.0)
    return np.where(inside, sigma_of_zeta(kind, safe), 0.0)


def apply_sigma(kind, f: AlgebraFunction) -> np.ndarray:
    """``sigma(-i d)`` applied spectrally to samples on a uniform grid."""
    kind = MapKind.parse(kind)
    if not f.is_sampled or f.spacing is None:
        raise ValueError("sigma(-i d) needs samples on a uniform grid")
    grid = f.grid_values()
    n = grid.shape[0]
    if PI / f.spacing < kind.chart_radius:
        warnings.warn(
            f"grid Nyquist frequency {PI / f.spacing:.3g} is below the chart radius {kind.chart_radius:.3g}",
            AliasingWarning,
            stacklevel=3,
        )
    freq = _frequencies(n, f.spacing)
    if kind.group == "u1":
        mult = sigma_multiplier(kind, freq)
    else:
        mesh = np.meshgrid(freq, freq, freq, indexing="ij")
        mult = sigma_multiplier(kind, np.stack(mesh, axis=-1))
    # a midpoint grid is the FFT grid shifted by h/2; the shift cancels between fftn and ifftn
    return np.fft.ifftn(mult * np.fft.fftn(grid)).reshape(-1)


def algebra_inner_product(kind, f: AlgebraFunction, h: AlgebraFunction, quad: QuadratureSpec | None = None):
    """``(2 pi)^-d int conj(f) sigma(-i d) h d^dX`` on a common uniform grid."""
    kind = MapKind.parse(kind)
    if f.points.shape != h.points.shape or f.spacing != h.spacing:
        raise ValueError("inner product needs both functions on one grid")
    sh = apply_sigma(kind, h)
    vol = f.spacing ** kind.dim
    return complex(np.sum(np.conj(f.values) * sh) * vol / (2.0 * PI) ** kind.dim)


def plain_inner_product(f: AlgebraFunction, h: AlgebraFunction):
    """``(2 pi)^-d int conj(f) h d^dX`` on a uniform grid, no sigma."""
    return complex(np.sum(np.conj(f.values) * h.values) * f.spacing ** f.dim / (2.0 * PI) ** f.dim)


SPECTRAL_EDGE = 0.95


def spectral_density_radial(rho, weights, values, s):
    """``a(s) = (2 pi)^-3 4 pi int rho^2 j0(s rho) psit(rho) d rho`` for radial ``psit``."""
    kernel = spherical_j0(np.multiply.outer(np.asarray(s, dtype=float), rho))
    return 4.0 * PI * (kernel @ (weights * rho * rho * values)) / (2.0 * PI) ** 3


def algebra_inner_product_radial(kind, rho, weights, f_vals, h_vals, spectral_nodes: int = 128):
    """The sigma inner product for radial functions, evaluated in the spectral domain.

    With ``psit(X) = int d^3 zeta a(zeta) exp(i zeta.X)`` the inner product is
    ``int d^3 zeta conj(a_f) sigma a_h``; ``a`` is recovered from the radial
    samples by a one-dimensional Hankel-type integral.
    """
    kind = MapKind.parse(kind)
    if kind is MapKind.DUFLO:
        return complex(4.0 * PI * np.sum(weights * rho * rho * np.conj(f_vals) * h_vals) / (2.0 * PI) ** 3)
    # 1/sinc^2 is not integrable at the chart edge, so truncation ringing there would dominate
    edge = SPECTRAL_EDGE if kind is MapKind.SYMMETRIC else 1.0 - 1e-9
    s, ws = gauss_legendre(spectral_nodes, 0.0, kind.chart_radius * edge)
    af = spectral_density_radial(rho, weights, np.asarray(f_vals, dtype=complex), s)
    ah = spectral_density_radial(rho, weights, np.asarray(h_vals, dtype=complex), s)
    sig = sigma_of_zeta(kind, s[:, None] * np.array([0.0, 0.0, 1.0]))
    return complex(4.0 * PI * np.sum(ws * s * s * np.conj(af) * sig * ah))


def parseval_check(kind, psi1: GroupFunction, psi2: GroupFunction, quad: QuadratureSpec | None = None, workers=None):
    """``|<F psi1, F psi2>_g* - <psi1, psi2>_G|``."""
    kind = MapKind.parse(kind)
    quad = _spec(kind, quad)
    rhs = group_inner_product(kind, psi1, psi2, quad)
    if kind.group == "su2" and psi1.radial is not None and psi2.radial is not None:
        rho, w = radial_algebra_nodes(quad)
        f = forward_radial(kind, psi1, rho, quad, workers)
        h = forward_radial(kind, psi2, rho, quad, workers)
        lhs = algebra_inner_product_radial(kind, rho, w, f, h, spectral_nodes=max(quad.radial, 64))
    else:
        f = sample_forward(kind, psi1, quad, workers)
        h = sample_forward(kind, psi2, quad, workers)
        lhs = algebra_inner_product(kind, f, h, quad)
    return abs(lhs - rhs)


# ---------------------------------------------------------------- distributional identities


def _ball_kernel(s, R):
    """``(2 pi)^-3 int_{|X|<=R} exp(i zeta.X) d^3X`` as a function of ``s = |zeta|``."""
    x = np.asarray(s, dtype=float) * R
    small = x < 1e-3
    safe = np.where(small, 1.0, x)
    g = np.where(small, 1.0 / 3.0 - x * x / 30.0, (np.sin(safe) - safe * np.cos(safe)) / safe**3)
    return 4.0 * PI * R**3 * g / (2.0 * PI) ** 3


def _interval_kernel(z, R):
    """``(2 pi)^-1 int_{-R}^{R} exp(i zeta X) dX = sin(R zeta)/(pi zeta)``."""
    z = np.asarray(z, dtype=float)
    return R / PI * np.sinc(R * z / PI)


def smeared_delta(kind, g0, psi: GroupFunction, quad: QuadratureSpec | None = None) -> complex:
    """``int dh psi(g0 h) K_R(h)`` with ``K_R(h) = (2 pi)^-d int_{|X|<=R} E_h(X) d^dX``."""
    kind = MapKind.parse(kind)
    quad = _spec(kind, quad)
    grid = group_grid(kind, quad)
    if kind.group == "u1":
        vals = psi(grid.data + g0.theta)
        kern = _interval_kernel(grid.zeta, quad.cutoff)
    else:
        moved = quat_mul(g0.quaternion, grid.data)
        if kind is MapKind.FLM:
            moved = np.where(moved[:, :1] < 0.0, -moved, moved)
        vals = psi(moved)
        kern = _ball_kernel(np.linalg.norm(grid.zeta, axis=-1), quad.cutoff)
    return complex(np.sum(grid.weights * vals * eta(kind, grid.zeta) * kern))


def smeared_delta_check(kind, g0, psi: GroupFunction, quad: QuadratureSpec | None = None) -> float:
    """``|int dg psi(g) delta_R(g0^-1 g) - psi(g0)|``."""
    kind = MapKind.parse(kind)
    ref = psi.at(g0.upper() if kind is MapKind.FLM else g0)
    return abs(smeared_delta(kind, g0, psi, quad) - ref)


def delta_star_kernel(kind, X, Y, quad: QuadratureSpec | None = None):
    """``int dg E_g(X) E_g(-Y)`` by group quadrature."""
    kind = MapKind.parse(kind)
    grid = group_grid(kind, _spec(kind, quad))
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    diff, shape = _as_points(kind, X - Y)
    coeffs = grid.weights * eta(kind, grid.zeta) ** 2
    return kernel_sum(grid.zeta, coeffs, diff, 1.0).reshape(shape)


def convolution_duality_check(kind, m1: PointMassFunction, m2: PointMassFunction, X) -> float:
    """``|F(m1 * m2)(X) - sum c_a c_b (E_ga *_p E_gb)(X)|`` maximised over ``X``."""
    kind = MapKind.parse(kind)
    conv = m1.convolve(m2, upper=kind is MapKind.FLM)
    lhs = forward_pointmass(kind, conv, X)
    rhs = 0.0
    for g, c in m1:
        wg = make_plane_wave(kind, g)
        for h, d in m2:
            rhs = rhs + c * d * evaluate(star_p_multiply(wg, make_plane_wave(kind, h)), X)
    return float(np.max(np.abs(lhs - rhs)))


def translation_duality_check(kind, m: PointMassFunction, g, X) -> float:
    """``|F(R_g m)(X) - (E_{g^-1} *_p F(m))(X)|`` with ``(R_g psi)(h) = psi(g h)``."""
    kind = MapKind.parse(kind)
    moved = m.translated(g)
    if kind is MapKind.FLM:
        moved = PointMassFunction(tuple((a.upper(), c) for a, c in moved))
    lhs = forward_pointmass(kind, moved, X)
    winv = make_plane_wave(kind, g.inverse())
    rhs = 0.0
    for a, c in m:
        rhs = rhs + c * evaluate(star_p_multiply(winv, make_plane_wave(kind, a)), X)
    return float(np.max(np.abs(lhs - rhs)))


def u1_fourier_of_constant(X):
    """``int_{-pi}^{pi} exp(i theta X) d theta = 2 sin(pi X)/X``."""
    X = np.asarray(X, dtype=float)
    return 2.0 * PI * np.sinc(X)


__all__ = [
    "AliasingWarning",
    "CutoffWarning",
    "QuadratureWarning",
    "algebra_inner_product",
    "algebra_inner_product_radial",
    "apply_sigma",
    "convolution_duality_check",
    "delta_star_kernel",
    "forward",
    "forward_pointmass",
    "forward_radial",
    "group_inner_product",
    "inverse",
    "inverse_radial",
    "kernel_sum",
    "parseval_check",
    "plain_inner_product",
    "roundtrip_error",
    "roundtrip_values",
    "sample_forward",
    "smeared_delta",
    "smeared_delta_check",
    "translation_duality_check",
]
