import json
import warnings

import numpy as np
import pytest
from scipy.integrate import quad

from ncft.groups import PI, SU2, U1
from ncft.maps import MapKind
from ncft.planewave import evaluate, make_plane_wave, star_p_multiply
from ncft.xform import (
    AlgebraFunction,
    AliasingWarning,
    ConfigError,
    CutoffWarning,
    GroupFunction,
    PointMassFunction,
    QuadratureSpec,
    QuadratureWarning,
    algebra_inner_product,
    apply_sigma,
    bump,
    convolution_duality_check,
    delta_star_kernel,
    forward,
    forward_pointmass,
    group_grid,
    group_inner_product,
    inverse,
    parseval_check,
    plain_inner_product,
    radial_bump,
    roundtrip_error,
    sample_forward,
    smeared_delta_check,
    translation_duality_check,
    u1_fourier_of_constant,
    zero_function,
)
from ncft.xform.transform import kernel_sum

from conftest import ALL_MAPS, SU2_MAPS, U1_MAPS

SMALL_SU2 = QuadratureSpec(radial=32, theta=16, phi=32, cutoff=20.0, nodes=32)
SMALL_U1 = QuadratureSpec(radial=2, theta=512, phi=2, cutoff=100.0, nodes=8192, tolerance=1e-6)


def constant(group):
    if group == "u1":
        return GroupFunction(lambda d: np.ones(np.shape(d)), "u1")
    return GroupFunction(lambda d: np.ones(np.shape(d)[:-1]), "su2")


# ---------------------------------------------------------------- configuration


def test_spec_defaults():
    assert QuadratureSpec.default(MapKind.DUFLO) == QuadratureSpec()
    u = QuadratureSpec.default("u1-standard")
    assert (u.theta, u.cutoff, u.nodes, u.tolerance) == (2048, 200.0, 65536, 1e-6)


@pytest.mark.parametrize(
    "kwargs", [{"radial": 1}, {"theta": 2.5}, {"phi": True}, {"cutoff": -1.0}, {"cutoff": float("inf")}, {"tolerance": 0}]
)
def test_spec_validation(kwargs):
    with pytest.raises(ConfigError):
        QuadratureSpec(**kwargs)


def test_spec_json_roundtrip(tmp_path):
    spec = QuadratureSpec(radial=10, theta=6, phi=12, cutoff=7.5, nodes=20, tolerance=1e-3)
    path = tmp_path / "q.json"
    path.write_text(json.dumps(spec.to_dict()))
    assert QuadratureSpec.from_json(path) == spec


def test_spec_partial_dict_keeps_defaults():
    spec = QuadratureSpec.from_dict({"algebra_grid": {"cutoff": 5}}, MapKind.SYMMETRIC)
    assert spec.cutoff == 5 and spec.radial == 64


@pytest.mark.parametrize("payload", ["[1, 2]", '{"group_grid": 3}', "not json"])
def test_spec_bad_json(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    with pytest.raises(ConfigError):
        QuadratureSpec.from_json(path)


def test_spec_refine_coarsen():
    s = QuadratureSpec(radial=8, theta=4, phi=8, nodes=16)
    assert s.refined().coarsened() == s


# ---------------------------------------------------------------- group quadrature


@pytest.mark.parametrize(
    "kind,volume", [(MapKind.SYMMETRIC, 2 * PI**2), (MapKind.DUFLO, 2 * PI**2), (MapKind.FLM, PI**2), (MapKind.U1_SINE, 2 * PI)]
)
def test_group_volume(kind, volume):
    grid = group_grid(kind, QuadratureSpec.default(kind) if kind.group == "u1" else SMALL_SU2)
    assert grid.weights.sum() == pytest.approx(volume, rel=1e-5)


def test_bump_profile():
    assert float(bump(0.0, 1.0)) == pytest.approx(np.exp(-1.0))
    assert float(bump(1.0, 1.0)) == 0.0 and float(bump(2.0, 1.0)) == 0.0


# ---------------------------------------------------------------- forward transform


def test_u1_forward_of_constant():
    """Exact at integer X; second order in the step elsewhere (the integrand is not periodic)."""
    n = np.arange(-6.0, 7.0)
    assert np.allclose(forward(MapKind.U1_STANDARD, constant("u1"), n), u1_fourier_of_constant(n), atol=1e-12)
    X = np.array([0.5, 2.3, 7.7])
    errs = []
    for m in (512, 1024):
        spec = QuadratureSpec(radial=2, theta=m, phi=2)
        errs.append(np.max(np.abs(forward(MapKind.U1_STANDARD, constant("u1"), X, spec) - u1_fourier_of_constant(X))))
    assert errs[1] < 1e-4 and 3.5 < errs[0] / errs[1] < 4.5


@pytest.mark.parametrize("s", [0.0, 1.5, 4.0])
@pytest.mark.parametrize("kind", [MapKind.SYMMETRIC, MapKind.DUFLO])
def test_su2_forward_against_radial_oracle(kind, s):
    """Angular integral done analytically, radial one by adaptive scipy quadrature."""

    def eta(r):
        return r / np.sin(r) if kind is MapKind.DUFLO and r > 0 else 1.0

    ref = quad(lambda r: 4 * PI * np.sin(r) ** 2 * eta(r) * float(bump(r, 2.0)) * np.sinc(r * s / PI), 0, 2.0, epsabs=1e-13, limit=200)[0]
    got = forward(kind, radial_bump(2.0), np.array([[0.0, 0.0, s]]))[0]
    assert abs(got - ref) < 1e-5


def test_u1_forward_against_oracle():
    ref = quad(lambda t: 2 * np.cos(3.3 * t) * float(bump(t, 2.5)), 0, 2.5, epsabs=1e-14, limit=200)[0]
    assert forward(MapKind.U1_STANDARD, radial_bump(2.5, "u1"), np.array([3.3]))[0] == pytest.approx(ref, abs=1e-12)


@pytest.mark.parametrize("kind", ALL_MAPS)
def test_forward_is_linear(kind, rng):
    spec = SMALL_SU2 if kind.group == "su2" else SMALL_U1
    f1, f2 = radial_bump(1.0, kind.group), radial_bump(0.7, kind.group)
    X = rng.normal(size=(5, 3)) if kind.group == "su2" else rng.normal(size=5)
    a, b = 0.3 - 1.2j, 2.0
    lhs = forward(kind, f1.combine(f2, a, b), X, spec)
    rhs = a * forward(kind, f1, X, spec) + b * forward(kind, f2, X, spec)
    assert np.allclose(lhs, rhs, atol=1e-13)


def test_forward_quadrature_warning():
    coarse = QuadratureSpec(radial=4, theta=4, phi=4, tolerance=1e-8)
    with pytest.warns(QuadratureWarning):
        forward(MapKind.SYMMETRIC, radial_bump(2.0), np.zeros((1, 3)), coarse, check=True)


def test_kernel_sum_independent_of_workers(rng):
    nodes = rng.normal(size=(3000, 3))
    coeffs = rng.normal(size=3000) + 0j
    pts = rng.normal(size=(2000, 3))
    import ncft.xform.transform as tr

    old = tr.BLOCK_ELEMENTS
    tr.BLOCK_ELEMENTS = 1 << 16
    try:
        a = kernel_sum(nodes, coeffs, pts, workers=1)
        b = kernel_sum(nodes, coeffs, pts, workers=4)
    finally:
        tr.BLOCK_ELEMENTS = old
    assert np.array_equal(a, b)


# ---------------------------------------------------------------- round trip


@pytest.mark.parametrize("kind", U1_MAPS)
def test_u1_roundtrip(kind):
    pts = np.linspace(-2.3, 2.3, 15)
    spec = SMALL_U1 if kind is MapKind.U1_STANDARD else QuadratureSpec.default(kind)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CutoffWarning)
        assert roundtrip_error(kind, radial_bump(2.5, "u1"), spec, pts) < 1e-5


@pytest.mark.parametrize("kind", [MapKind.SYMMETRIC, MapKind.DUFLO])
def test_su2_radial_roundtrip_small(kind):
    pts = [SU2.from_k([0.0, 0.0, r]) for r in (0.0, 0.6, 1.3, 1.8)]
    assert roundtrip_error(kind, radial_bump(2.0), QuadratureSpec(), pts) < 1e-2


def test_su2_tensor_roundtrip_non_radial():
    c = SU2.from_k([0.3, 0.1, -0.2])
    f = radial_bump(1.5, "su2", center=c)
    spec = QuadratureSpec(radial=24, theta=12, phi=24, cutoff=12.0, nodes=24)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CutoffWarning)
        err = roundtrip_error(MapKind.DUFLO, f, spec, [c])
    assert err < 2e-2


@pytest.mark.parametrize("kind", ALL_MAPS)
def test_zero_function_roundtrip(kind):
    pts = np.zeros(3) if kind.group == "u1" else [SU2.identity()]
    spec = SMALL_SU2 if kind.group == "su2" else SMALL_U1
    assert roundtrip_error(kind, zero_function(kind.group), spec, pts) == 0.0


def test_inverse_rejects_wrong_grid():
    f = AlgebraFunction(dim=1, points=np.zeros(3), values=np.zeros(3), cutoff=1.0)
    with pytest.raises(ValueError):
        inverse(MapKind.U1_STANDARD, f, U1(0.0), SMALL_U1)


def test_cutoff_warning():
    spec = QuadratureSpec(radial=2, theta=256, phi=2, cutoff=3.0, nodes=64, tolerance=1e-6)
    psit = sample_forward(MapKind.U1_STANDARD, radial_bump(0.5, "u1"), spec)
    with pytest.warns(CutoffWarning):
        inverse(MapKind.U1_STANDARD, psit, U1(0.0), spec)


# ---------------------------------------------------------------- inner products


def test_parseval_u1():
    f, h = radial_bump(2.5, "u1"), radial_bump(2.0, "u1")
    spec = QuadratureSpec(radial=2, theta=1024, phi=2, cutoff=200.0, nodes=16384)
    assert parseval_check(MapKind.U1_STANDARD, f, h, spec) < 1e-10
    assert parseval_check(MapKind.U1_SINE, f, h, spec) < 1e-8


@pytest.mark.parametrize("kind", SU2_MAPS)
def test_parseval_su2_radial(kind):
    f, h = radial_bump(1.0, "su2"), radial_bump(0.8, "su2")
    assert parseval_check(kind, f, h) < 1e-2 * abs(group_inner_product(kind, f, h))


@pytest.mark.filterwarnings("ignore::ncft.xform.AliasingWarning")
def test_duflo_sigma_inner_product_is_plain(rng):
    """Duflo sigma is 1 on the chart; a grid step of 2 keeps every mode inside it."""
    n = 8
    axis = 2.0 * (np.arange(n) - n // 2)
    mesh = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), -1).reshape(-1, 3)
    vals = rng.normal(size=n**3) + 1j * rng.normal(size=n**3)
    vals2 = rng.normal(size=n**3) + 0j
    f = AlgebraFunction(3, points=mesh, values=vals, cutoff=8.0, spacing=2.0, shape=(n, n, n))
    h = AlgebraFunction(3, points=mesh, values=vals2, cutoff=8.0, spacing=2.0, shape=(n, n, n))
    assert algebra_inner_product(MapKind.DUFLO, f, h) == pytest.approx(plain_inner_product(f, h), rel=1e-14)


def test_aliasing_warning():
    f = AlgebraFunction(1, points=np.arange(8.0), values=np.ones(8), cutoff=4.0, spacing=2.0, shape=(8,))
    with pytest.warns(AliasingWarning):
        apply_sigma(MapKind.U1_SINE, f)


# ---------------------------------------------------------------- distributional identities


@pytest.mark.parametrize(
    "kind,g0,r0,spec",
    [
        (MapKind.U1_STANDARD, U1(0.4), 2.0, QuadratureSpec.default("u1-standard")),
        (MapKind.U1_SINE, U1(-0.3), 2.0, QuadratureSpec.default("u1-sine")),
        (MapKind.SYMMETRIC, SU2.from_k([0.3, -0.2, 0.5]), 1.4, None),
        (MapKind.DUFLO, SU2.from_k([0.3, -0.2, 0.5]), 1.4, None),
        (MapKind.FLM, SU2.from_k([0.1, -0.05, 0.05]), 1.0, QuadratureSpec(cutoff=40.0)),
    ],
)
def test_smeared_delta(kind, g0, r0, spec):
    tol = 1e-5 if kind.group == "u1" else 1e-2
    assert smeared_delta_check(kind, g0, radial_bump(r0, kind.group), spec) < tol


def test_delta_star_u1_closed_form():
    X = np.array([0.3, 1.7, -2.2])
    Y = np.array([0.1, -0.4, 0.9])
    got = delta_star_kernel(MapKind.U1_STANDARD, X, Y)
    d = X - Y
    assert np.allclose(got, 2 * np.sin(PI * d) / d, atol=1e-5)


@pytest.mark.parametrize("kind", [MapKind.DUFLO, MapKind.U1_SINE])
def test_delta_star_hermitian(kind, rng):
    shape = (4, 3) if kind.group == "su2" else (4,)
    X, Y = rng.normal(size=shape), rng.normal(size=shape)
    spec = SMALL_SU2 if kind.group == "su2" else None
    assert np.allclose(delta_star_kernel(kind, X, Y, spec), np.conj(delta_star_kernel(kind, Y, X, spec)))


def test_delta_star_reproduces_u1():
    spec = QuadratureSpec(radial=2, theta=1024, phi=2, cutoff=100.0, nodes=2000)
    psit = sample_forward(MapKind.U1_STANDARD, radial_bump(2.5, "u1"), spec)
    X = np.array([0.0, 1.3, -4.1])
    h = psit.spacing
    approx = np.array(
        [np.sum(delta_star_kernel(MapKind.U1_STANDARD, x, psit.points, spec) * psit.values) * h / (2 * PI) for x in X]
    )
    exact = forward(MapKind.U1_STANDARD, radial_bump(2.5, "u1"), X, spec)
    assert np.max(np.abs(approx - exact)) < 1e-2


def test_u1_periodicity_class():
    """A plane wave at theta = 2 pi n acts as the identity under the projected product."""
    w = make_plane_wave(MapKind.U1_STANDARD, U1(0.8))
    for n in (1, 2, -3):
        e = make_plane_wave(MapKind.U1_STANDARD, U1(2 * PI * n))
        X = np.linspace(-5, 5, 11)
        assert np.allclose(evaluate(star_p_multiply(e, w), X), evaluate(w, X), atol=1e-12)


# ---------------------------------------------------------------- point masses


def masses(kind, rng, n=5):
    if kind.group == "u1":
        gs = [U1(t) for t in rng.uniform(-PI, PI, n)]
    else:
        gs = []
        for k in rng.normal(scale=0.6, size=(n, 3)):
            g = SU2.from_k(k)
            gs.append(g.upper() if kind is MapKind.FLM else g)
    return PointMassFunction(tuple(zip(gs, rng.normal(size=n) + 1j * rng.normal(size=n))))


@pytest.mark.parametrize("kind", ALL_MAPS)
def test_convolution_duality(kind, rng):
    X = rng.normal(scale=2, size=(10, 3)) if kind.group == "su2" else rng.normal(scale=2, size=10)
    assert convolution_duality_check(kind, masses(kind, rng), masses(kind, rng), X) < 1e-11


@pytest.mark.parametrize("kind", ALL_MAPS)
def test_translation_duality(kind, rng):
    X = rng.normal(scale=2, size=(10, 3)) if kind.group == "su2" else rng.normal(scale=2, size=10)
    g = masses(kind, rng, 1).masses[0][0]
    assert translation_duality_check(kind, masses(kind, rng), g, X) < 1e-11


def test_pointmass_forward_value():
    m = PointMassFunction(((U1(0.5), 2.0), (U1(-1.0), 1j)))
    assert forward_pointmass(MapKind.U1_STANDARD, m, 2.0) == pytest.approx(2 * np.exp(1j) + 1j * np.exp(-2j))


def test_pointmass_validation():
    with pytest.raises(ValueError):
        PointMassFunction(())
    with pytest.raises(TypeError):
        PointMassFunction(((U1(0.0), 1.0), (SU2.identity(), 1.0)))
    with pytest.raises(ValueError):
        PointMassFunction(((U1(0.0), float("nan")),))


def test_translated_group_function():
    f = radial_bump(1.0, "su2")
    g0 = SU2.from_k([0.2, 0.0, 0.0])
    h = SU2.from_k([-0.2, 0.0, 0.0])
    assert f.translated(g0).at(h) == pytest.approx(f.at(SU2.identity()))


# ---------------------------------------------------------------- export


def test_csv_export(tmp_path):
    spec = QuadratureSpec(radial=2, theta=64, phi=2, cutoff=10.0, nodes=16)
    psit = sample_forward(MapKind.U1_STANDARD, radial_bump(1.0, "u1"), spec)
    path = tmp_path / "f.csv"
    psit.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "X1,re,im" and len(lines) == 17
    x, re, im = map(float, lines[1].split(","))
    assert x == pytest.approx(psit.points[0]) and complex(re, im) == pytest.approx(psit.values[0])


def test_algebra_function_requires_data():
    with pytest.raises(ValueError):
        AlgebraFunction(dim=3)
    with pytest.raises(TypeError):
        AlgebraFunction.from_callable(lambda x: x, 1).to_csv("unused")
