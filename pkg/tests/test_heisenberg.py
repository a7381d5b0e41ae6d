import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import iv

from hkernel.config import DEFAULT_QUADRATURE
from hkernel.errors import (DimensionMismatchError, DomainError, LambdaZeroError,
                            QuadratureFailError)
from hkernel.heisenberg import (GroupPoint, SphericalIndex, average_A, cc_norm, dilation,
                                gauge_norm, group_inv, group_mul, mul_arrays, sphere_area,
                                sphere_rule, spherical_phi, spherical_phi_array)

coord = st.floats(-5, 5)


@st.composite
def points(draw, n=None):
    n = draw(st.integers(1, 3)) if n is None else n
    x = [draw(coord) for _ in range(n)]
    y = [draw(coord) for _ in range(n)]
    return GroupPoint.from_real(x, y, draw(coord))


@st.composite
def triples(draw):
    n = draw(st.integers(1, 3))
    return tuple(draw(points(n)) for _ in range(3))


@given(triples())
def test_associativity(gs):
    a, b, c = gs
    assert group_mul(group_mul(a, b), c).allclose(group_mul(a, group_mul(b, c)), 1e-12, 1e-12)


@given(points())
def test_inverse_and_identity(g):
    e = GroupPoint.identity(g.n)
    assert group_mul(g, group_inv(g)).allclose(e)
    assert group_mul(group_inv(g), g).allclose(e)
    assert group_mul(g, e) == g


@given(triples(), st.floats(0.1, 4.0))
def test_dilation_is_automorphism(gs, r):
    a, b, _ = gs
    lhs = dilation(group_mul(a, b), r)
    rhs = group_mul(dilation(a, r), dilation(b, r))
    assert lhs.allclose(rhs, 1e-12, 1e-10)


@given(points(), st.floats(0.1, 4.0))
def test_norm_homogeneity(g, r):
    # cc_norm is homogeneous of degree two; its square root is the degree-one gauge
    assert cc_norm(dilation(g, r)) == pytest.approx(r * r * cc_norm(g), rel=1e-12, abs=1e-300)
    assert gauge_norm(dilation(g, r)) == pytest.approx(r * gauge_norm(g), rel=1e-12,
                                                       abs=1e-300)


@given(points())
def test_norm_symmetric_under_inverse(g):
    assert cc_norm(group_inv(g)) == cc_norm(g)


def test_cc_norm_values_and_arrays():
    assert cc_norm(GroupPoint([1.0], 0.0)) == 1.0
    assert cc_norm(GroupPoint([0.0], 1.0)) == 4.0
    assert cc_norm(GroupPoint([3j], 0.0)) == 9.0
    z = np.array([[1.0 + 0j], [0.0]])
    np.testing.assert_allclose(cc_norm((z, np.array([0.0, 1.0]))), [1.0, 4.0])


def test_mul_arrays_matches_group_mul():
    rng = np.random.default_rng(3)
    z1, z2 = rng.normal(size=(2, 5, 2)) + 1j * rng.normal(size=(2, 5, 2))
    t1, t2 = rng.normal(size=(2, 5))
    z, t = mul_arrays(z1, t1, z2, t2)
    for i in range(5):
        g = group_mul(GroupPoint(z1[i], t1[i]), GroupPoint(z2[i], t2[i]))
        assert g.allclose(GroupPoint(z[i], t[i]))


def test_twist_sign():
    # (1, 0)(i, 0) = (1 + i, Im(conj(1) i)/2) = (1 + i, 1/2)
    g = group_mul(GroupPoint([1.0], 0.0), GroupPoint([1j], 0.0))
    assert g.t == 0.5


def test_errors():
    with pytest.raises(DimensionMismatchError):
        group_mul(GroupPoint([1.0], 0.0), GroupPoint([1.0, 2.0], 0.0))
    with pytest.raises(DomainError):
        dilation(GroupPoint([1.0], 0.0), 0.0)
    with pytest.raises(LambdaZeroError):
        SphericalIndex(0.0, 1)
    with pytest.raises(DomainError):
        SphericalIndex(1.0, -1)
    with pytest.raises(LambdaZeroError):
        spherical_phi_array(0.0, 0, 1, 1.0, 0.0)


def test_group_point_is_immutable():
    g = GroupPoint([1.0, 2.0], 0.5)
    with pytest.raises(ValueError):
        g.z[0] = 3.0


@given(st.floats(-3, 3).filter(lambda v: abs(v) > 1e-3), st.integers(0, 6), st.integers(1, 3))
def test_spherical_at_origin_and_bounded(lam, k, n):
    assert spherical_phi(SphericalIndex(lam, k), GroupPoint.identity(n)) == pytest.approx(1.0)
    z2 = np.linspace(0, 40, 81)
    assert np.all(np.abs(spherical_phi_array(lam, k, n, z2, 0.3)) <= 1.0 + 1e-12)


def test_spherical_character_in_t():
    idx = SphericalIndex(1.5, 2)
    g = GroupPoint([0.3 + 0.4j], 0.0)
    h = GroupPoint([0.3 + 0.4j], 0.7)
    assert spherical_phi(idx, h) == pytest.approx(np.exp(1.05j) * spherical_phi(idx, g))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sphere_rule_weights(n):
    xi, w = sphere_rule(n)
    assert w.sum() == pytest.approx(1.0, abs=1e-13)
    np.testing.assert_allclose(np.linalg.norm(xi, axis=1), 1.0, atol=1e-13)


@pytest.mark.parametrize("n,R", [(1, 0.5), (1, 2.0), (1, 4.0), (2, 0.5), (2, 2.0), (2, 4.0),
                                 (3, 0.5)])
def test_sphere_average_exponential(n, R):
    # mean of exp(R Re xi_1) over S^{2n-1} in R^{2n} is Gamma(n) (2/R)^{n-1} I_{n-1}(R)
    exact = math.gamma(n) * (2.0 / R) ** (n - 1) * iv(n - 1, R)
    rule = DEFAULT_QUADRATURE.with_updates(sphere_points=160)
    got = average_A(lambda z, t: np.exp(z[..., 0].real) + 0 * t, R, 0.0, rule, n=n)
    assert complex(got).real == pytest.approx(exact, rel=1e-10)


def test_sphere_average_unresolved_raises():
    with pytest.raises(QuadratureFailError):
        average_A(lambda z, t: np.exp(z[..., 0].real) + 0 * t, 4.0, 0.0, n=3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sphere_average_second_moment(n):
    got = average_A(lambda z, t: np.abs(z[..., 0]) ** 2 + 0 * t, 1.7, 0.0, n=n)
    assert float(np.real(got)) == pytest.approx(1.7 ** 2 / n, rel=1e-12)


def test_sphere_average_high_dimension_is_rough():
    rule = DEFAULT_QUADRATURE.with_updates(sphere_points=16)
    got = average_A(lambda z, t: np.abs(z[..., 0]) ** 2 + 0 * t, 1.0, 0.0, rule, n=4)
    assert float(np.real(got)) == pytest.approx(0.25, rel=2e-2)


def test_sphere_average_requires_dimension():
    with pytest.raises(DomainError):
        average_A(lambda z, t: z[..., 0], 1.0, 0.0)
    with pytest.raises(DomainError):
        average_A(lambda z, t: z[..., 0], -1.0, 0.0, n=1)


def test_sphere_area():
    assert sphere_area(1) == pytest.approx(2 * math.pi)
    assert sphere_area(2) == pytest.approx(2 * math.pi ** 2)
