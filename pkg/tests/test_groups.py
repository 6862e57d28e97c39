import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm, logm

from ncft.groups import (
    PI,
    SU2,
    SU2_STRUCTURE,
    U1,
    U1_STRUCTURE,
    BranchAmbiguityError,
    ChartError,
    SingularPointError,
    StructureConstants,
    bch,
    bch_p,
    exp_su2,
    haar_weight,
    k_to_p,
    log_su2,
    multiply,
    oplus_p,
    oplus_zeta_u1,
    project_principal,
    quat_inv,
    quat_mul,
    random_su2,
    reduce_angle,
    sinc,
)

PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])

vec = st.lists(st.floats(-3.0, 3.0, allow_nan=False), min_size=3, max_size=3).map(np.array)
small_vec = st.lists(st.floats(-1.0, 1.0, allow_nan=False), min_size=3, max_size=3).map(np.array)


def matrix_oracle(k1, k2):
    """Principal log of expm(i k1.s) expm(i k2.s) via scipy."""
    u = expm(1j * np.einsum("i,ijk->jk", k1, PAULI)) @ expm(1j * np.einsum("i,ijk->jk", k2, PAULI))
    L = logm(u)
    return np.array([np.trace(L @ s).imag / 2.0 for s in PAULI])


# ---------------------------------------------------------------- structure constants


def test_su2_structure_is_twice_levi_civita():
    c = SU2_STRUCTURE.as_array()
    assert c[0, 1, 2] == 2 and c[1, 0, 2] == -2 and c[0, 0, 0] == 0
    assert SU2_STRUCTURE.is_antisymmetric()
    assert not np.any(SU2_STRUCTURE.jacobi_defect())


def test_u1_structure_is_abelian():
    assert U1_STRUCTURE.dim == 1
    assert U1_STRUCTURE.as_array().tolist() == [[[0]]]


def test_structure_shape_validation():
    with pytest.raises(ValueError):
        StructureConstants(2, (((0,),),))
    assert not StructureConstants(1, (((1,),),)).is_antisymmetric()


def test_pauli_commutators_match_structure():
    c = SU2_STRUCTURE.as_array()
    for i in range(3):
        for j in range(3):
            comm = PAULI[i] @ PAULI[j] - PAULI[j] @ PAULI[i]
            rhs = sum(1j * c[i, j, k] * PAULI[k] for k in range(3))
            assert np.allclose(comm, rhs)


# ---------------------------------------------------------------- helpers


@pytest.mark.parametrize("r,expected", [(0.0, 1.0), (1e-9, 1.0), (PI / 2, 2 / PI), (PI, 0.0)])
def test_sinc(r, expected):
    assert sinc(r) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "theta,expected", [(0.0, 0.0), (PI, PI), (-PI, PI), (3 * PI, PI), (2 * PI + 0.5, 0.5), (-4.0, 2 * PI - 4.0)]
)
def test_reduce_angle_branch(theta, expected):
    assert reduce_angle(theta) == pytest.approx(expected, abs=1e-14)


def test_quaternion_product_matches_matrices(rng):
    k = random_su2(rng, 20, PI)
    for a, b in zip(k[:10], k[10:]):
        ga, gb = SU2.from_k(a), SU2.from_k(b)
        prod = SU2.from_quaternion(quat_mul(ga.quaternion, gb.quaternion))
        assert np.allclose(prod.matrix(), ga.matrix() @ gb.matrix(), atol=1e-14)


def test_quat_inv():
    q = exp_su2([0.3, -0.1, 0.7])
    assert np.allclose(quat_mul(q, quat_inv(q)), [1, 0, 0, 0], atol=1e-15)


# ---------------------------------------------------------------- exp / log


def test_exp_matches_matrix_exponential(rng):
    for k in random_su2(rng, 25, PI):
        assert np.allclose(SU2.from_k(k).matrix(), expm(1j * np.einsum("i,ijk->jk", k, PAULI)), atol=1e-13)


@given(vec)
def test_log_inverts_exp_on_principal_ball(k):
    if np.linalg.norm(k) >= PI - 1e-6:
        return
    assert np.allclose(log_su2(exp_su2(k)), k, atol=1e-12)


def test_log_at_minus_one_raises():
    with pytest.raises(SingularPointError):
        log_su2([-1.0, 0.0, 0.0, 0.0])
    with pytest.raises(SingularPointError):
        SU2(-1.0, (0.0, 0.0, 0.0)).k


def test_log_near_identity_uses_series():
    k = np.array([1e-9, -2e-9, 3e-10])
    assert np.allclose(log_su2(exp_su2(k)), k, rtol=1e-12, atol=0)


def test_project_principal():
    k = np.array([0.0, 0.0, 4.0])
    assert np.allclose(project_principal(k), [0.0, 0.0, 4.0 - 2 * PI])
    with pytest.raises(SingularPointError):
        project_principal([0.0, PI, 0.0])


# ---------------------------------------------------------------- BCH


def test_bch_identity_argument():
    k = np.array([0.4, -1.1, 2.0])
    assert np.allclose(bch(k, np.zeros(3)), k, atol=1e-15)
    assert np.allclose(bch(np.zeros(3), k), k, atol=1e-15)


def test_bch_projected_example():
    k = np.array([0.0, 0.0, 2 * PI / 3])
    out = bch_p(k, k)
    assert np.allclose(out, [0.0, 0.0, -2.0943951023931953], atol=1e-14)


def test_bch_frozen_value():
    # frozen from scipy.linalg.logm of the 2x2 product
    out = bch([0.3, 0.0, 0.0], [0.0, 0.4, 0.0])
    assert np.allclose(out, [0.2836385180792813, 0.3876701879207466, -0.1199204420168617], atol=1e-14)
    assert np.allclose(out, matrix_oracle(np.array([0.3, 0, 0]), np.array([0, 0.4, 0])), atol=1e-12)


def test_bch_matches_matrix_oracle(rng):
    k1 = random_su2(rng, 300, PI * 0.99)
    k2 = random_su2(rng, 300, PI * 0.99)
    ours = bch(k1, k2)
    for a, b, c in zip(k1, k2, ours):
        assert np.allclose(c, matrix_oracle(a, b), atol=1e-10)


def test_bch_second_order_series():
    a, b = np.array([1e-3, 2e-3, -1e-3]), np.array([-2e-3, 1e-3, 3e-3])
    # [i a.s, i b.s] / 2 = i (-(a x b)).s
    approx = a + b - np.cross(a, b)
    assert np.allclose(bch(a, b), approx, atol=1e-8)


def test_bch_singular():
    with pytest.raises(SingularPointError):
        bch([0.0, 0.0, PI / 2], [0.0, 0.0, PI / 2])


@given(small_vec, small_vec, small_vec)
@settings(max_examples=50)
def test_bch_associative_near_identity(a, b, c):
    assert np.allclose(bch(bch(a, b), c), bch(a, bch(b, c)), atol=1e-11)


@given(vec)
def test_bch_inverse(k):
    if np.linalg.norm(k) >= PI - 1e-6:
        return
    assert np.allclose(bch(k, -k), 0.0, atol=1e-12)


# ---------------------------------------------------------------- p and zeta compositions


def test_oplus_p_matches_group_product(rng):
    for a, b in zip(random_su2(rng, 50, PI / 2), random_su2(rng, 50, PI / 2)):
        g = (SU2.from_k(a) * SU2.from_k(b)).upper()
        if abs(g.p0) < 1e-9:
            continue
        assert np.allclose(oplus_p(k_to_p(a), k_to_p(b)), g.p, atol=1e-13)


def test_oplus_p_frozen():
    p = np.array([0.1, 0.0, 0.0])
    q = np.array([0.0, 0.1, 0.0])
    s = math.sqrt(0.99)
    assert np.allclose(oplus_p(p, q), [0.1 * s, 0.1 * s, -0.01], atol=1e-15)


def test_oplus_p_equator_is_ambiguous():
    with pytest.raises(BranchAmbiguityError):
        oplus_p([0.0, 0.0, 1.0], [0.0, 0.0, 0.0])


def test_oplus_p_chart_error():
    with pytest.raises(ChartError):
        oplus_p([1.2, 0.0, 0.0], [0.0, 0.0, 0.0])


# sqrt(1 - zeta^2/4) is ill-conditioned at |theta| = pi, so stay 1e-3 away from it
@given(st.floats(-PI + 1e-3, PI - 1e-3), st.floats(-PI + 1e-3, PI - 1e-3))
def test_oplus_zeta_u1_is_angle_addition(a, b):
    z = oplus_zeta_u1(2 * math.sin(a / 2), 2 * math.sin(b / 2))
    t = reduce_angle(a + b)
    if abs(abs(t) - PI) < 1e-7:
        return
    assert float(z) == pytest.approx(2 * math.sin(t / 2), abs=1e-12)


def test_oplus_zeta_u1_chart_error():
    with pytest.raises(ChartError):
        oplus_zeta_u1(2.5, 0.0)


# ---------------------------------------------------------------- Haar weights


@pytest.mark.parametrize(
    "chart,coords,expected",
    [
        ("k", [0.0, 0.0, 0.0], 1.0),
        ("k", [PI / 2, 0.0, 0.0], 4 / PI**2),
        ("p", [0.6, 0.0, 0.0], 1.25),
        ("theta", 1.0, 1.0),
        ("zeta-u1", 1.2, 1.25),
    ],
)
def test_haar_weight_values(chart, coords, expected):
    assert float(haar_weight(chart, coords)) == pytest.approx(expected, rel=1e-14)


def test_haar_k_volume():
    # int_{|k|<pi} sinc^2 d^3k = 4 pi int sin^2 r dr = 2 pi^2
    x, w = np.polynomial.legendre.leggauss(200)
    r = PI * (x + 1) / 2
    vol = 4 * PI * np.sum(w * PI / 2 * r * r * haar_weight("k", np.stack([r, 0 * r, 0 * r], -1)))
    assert vol == pytest.approx(2 * PI**2, rel=1e-12)


@pytest.mark.parametrize("chart,coords", [("p", [1.0, 0.0, 0.0]), ("zeta-u1", 2.0)])
def test_haar_weight_boundary(chart, coords):
    with pytest.raises(ChartError):
        haar_weight(chart, coords)


def test_haar_unknown_chart():
    with pytest.raises(ValueError):
        haar_weight("q", 0.0)


# ---------------------------------------------------------------- element types


def test_su2_rejects_non_unit():
    with pytest.raises(ValueError):
        SU2(1.0, (1.0, 0.0, 0.0))


def test_su2_renormalises_drift():
    g = SU2(1.0 + 1e-11, (0.0, 0.0, 0.0))
    assert g.p0 == 1.0


def test_su2_matrix_roundtrip(rng):
    g = SU2.from_k(random_su2(rng, 1)[0])
    assert np.allclose(SU2.from_matrix(g.matrix()).quaternion, g.quaternion)


def test_su2_inverse_and_upper():
    g = SU2.from_k([0.0, 0.0, 2.5])
    assert np.allclose((g * g.inverse()).quaternion, [1, 0, 0, 0], atol=1e-15)
    assert g.upper().p0 > 0 and np.allclose(g.upper().quaternion, -g.quaternion)


def test_u1_branch_and_product():
    assert U1(3 * PI).theta == pytest.approx(PI)
    assert (U1(2.0) * U1(2.0)).theta == pytest.approx(4.0 - 2 * PI)
    assert U1(0.7).inverse().theta == pytest.approx(-0.7)


def test_multiply_mixed_groups():
    with pytest.raises(TypeError):
        multiply(U1(0.1), SU2.identity())


def test_random_su2_inside_ball(rng):
    k = random_su2(rng, 1000, 0.5)
    assert np.all(np.linalg.norm(k, axis=-1) <= 0.5)


def test_oplus_p_uses_supplied_scalar_parts():
    g1 = SU2(6.106230270183784e-05, (-0.2574603881010961, 0.44543546835292946, 0.8574971652218069))
    g2 = SU2.from_k([0.3, -0.2, 0.4])
    exact = (g1 * g2).upper().p
    assert np.allclose(oplus_p(g1.p, g2.p, g1.p0, g2.p0), exact, atol=1e-15, rtol=0)
