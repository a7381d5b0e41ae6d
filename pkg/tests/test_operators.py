import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.special import dawsn

from hkernel.errors import (DomainError, GridTooSmallError, PoleParameterError,
                            TailNotDecayedWarning)
from hkernel.heisenberg import spherical_phi_array
from hkernel.harness.suites import eigen_errors, eigen_grid
from hkernel.operators import (STENCILS, Grid, OperatorParams, SampledField, apply_absT, apply_L,
                               apply_L_alpha, apply_vector_field, sample)


def small_grid(n=1, h=0.25, t_count=16):
    return Grid.symmetric(n, 1.0, h, 2.0, t_count)


@pytest.mark.parametrize("order", sorted(STENCILS))
def test_stencils_are_consistent(order):
    d1, d2 = STENCILS[order]
    k = np.arange(len(d1)) - len(d1) // 2
    assert d1.sum() == pytest.approx(0, abs=1e-15)
    assert (d1 * k).sum() == pytest.approx(1, abs=1e-14)
    assert (d2 * k ** 2).sum() == pytest.approx(2, abs=1e-13)


@pytest.mark.parametrize("order", sorted(STENCILS))
def test_L_exact_on_quadratics(order):
    g = small_grid()
    # L (x^2 + y^2 + t) = 4 and L t^2 = |z|^2 / 2
    f = sample(lambda z, t: np.abs(z[..., 0]) ** 2 + t, g)
    assert apply_L(f, order).interior_max(4.0) < 1e-10
    f = sample(lambda z, t: t * t + 0 * z[..., 0].real, g)
    c = g.coords()
    assert apply_L(f, order).interior_max((c[0] ** 2 + c[1] ** 2) / 2) < 1e-10


def test_vector_fields_on_coordinates():
    g = small_grid()
    c = g.coords()
    t = sample(lambda z, t: t + 0 * z[..., 0].real, g)
    assert apply_vector_field("X1", t).interior_max(-c[1] / 2) < 1e-12
    assert apply_vector_field("Y1", t).interior_max(c[0] / 2) < 1e-12
    assert apply_vector_field("T", t).interior_max(1.0) < 1e-12
    x = sample(lambda z, t: z[..., 0].real + 0 * t, g)
    assert apply_vector_field("X1", x).interior_max(1.0) < 1e-12
    assert apply_vector_field("Y1", x).interior_max(0.0) < 1e-12


def test_vector_field_names():
    g = small_grid(n=2)
    f = sample(lambda z, t: z[..., 1].imag + 0 * t, g)
    assert apply_vector_field("Y2", f).interior_max(1.0) < 1e-12
    for bad in ("X3", "Z1", "X", "Y0"):
        with pytest.raises(DomainError):
            apply_vector_field(bad, f)


def gaussian_bump(z, t):
    return np.exp(-np.sum(np.abs(z) ** 2, axis=-1) - (t - 0.3) ** 2) * (1 + 0.5 * z[..., 0].real)


def test_commutator_is_T():
    g = Grid.symmetric(1, 1.5, 0.0625, 2.0, 64)
    f = sample(gaussian_bump, g)
    xy = apply_vector_field("X1", apply_vector_field("Y1", f, 6), 6).values
    yx = apply_vector_field("Y1", apply_vector_field("X1", f, 6), 6).values
    tf = apply_vector_field("T", f, 6).values
    assert SampledField(xy - yx, g).interior_max(tf) < 1e-6


def test_sum_of_squares_is_L():
    g = Grid.symmetric(2, 0.75, 0.125, 2.0, 32)
    f = sample(gaussian_bump, g)
    total = 0
    for j in (1, 2):
        for v in ("X", "Y"):
            once = apply_vector_field(f"{v}{j}", f, 6)
            total = total + apply_vector_field(f"{v}{j}", once, 6).values
    # composed first-derivative stencils differ from the direct ones at O(h^6)
    assert SampledField(total, g).interior_max(apply_L(f, 6).values) < 1e-3


@given(st.sampled_from([0.5, 1.0, 2.0]), st.integers(0, 3))
def test_second_order_convergence(lam, k):
    e1 = eigen_errors(lam, k, 1, 0.25, 2, (0.0,), xy_half=1.5)[0.0]
    e2 = eigen_errors(lam, k, 1, 0.125, 2, (0.0,), xy_half=1.5)[0.0]
    assert 3.5 <= e1 / e2 <= 4.5


def test_eigen_relation_n2():
    g = eigen_grid(2, 0.25, 1.0)
    z2 = sum(c ** 2 for c in g.coords()[:4])
    phi = spherical_phi_array(1.0, 1, 2, z2, g.coords()[-1])
    f = SampledField(phi, g)
    out = apply_L_alpha(OperatorParams(2, 0.5), f, order=6)
    assert out.interior_max(-1.0 * (2 + 2 - 0.5) * phi) < 1e-3


@given(st.integers(-10, 10), st.floats(0.2, 2.0))
def test_absT_on_lattice_frequencies(m, width):
    g = Grid.symmetric(1, 1.0, 0.25, 4.0, 64)
    c = g.coords()
    lam0 = 2 * math.pi * m / 8.0
    v = np.exp(-(c[0] ** 2 + c[1] ** 2) / width) * np.exp(1j * lam0 * c[2])
    out = apply_absT(SampledField(v, g)).values
    assert np.max(np.abs(out - abs(lam0) * v)) < 1e-9


def test_absT_real_field_stays_real_and_even():
    g = Grid.symmetric(1, 1.0, 0.25, 8.0, 128)
    f = sample(lambda z, t: np.exp(-t * t) + 0 * z[..., 0].real, g)
    out = apply_absT(f).values
    assert not np.iscomplexobj(out)
    # on the real line |T| e^{-t^2} = (2 - 4t D(t)) / sqrt(pi), D the Dawson integral;
    # the FFT sees its periodisation, which decays only like 1/t^2
    t = g.axis(2)[[64, 70, 90]]
    images = t[:, None] + 16.0 * np.arange(-40000, 40001)[None, :]
    exact = np.sum((2 - 4 * images * dawsn(images)) / math.sqrt(math.pi), axis=1)
    np.testing.assert_allclose(out[0, 0, [64, 70, 90]], exact, rtol=1e-5)
    np.testing.assert_allclose(out[0, 0, 1:], out[0, 0, 1:][::-1], atol=1e-14)


def test_absT_warns_on_truncated_tail():
    g = Grid.symmetric(1, 1.0, 0.25, 4.0, 64)
    slow = sample(lambda z, t: 1.0 / (1.0 + t * t) + t / 10 + 0 * z[..., 0].real, g)
    with pytest.warns(TailNotDecayedWarning):
        apply_absT(slow)
    fast = sample(lambda z, t: np.exp(-t * t) + 0 * z[..., 0].real, g)
    with warnings.catch_warnings():
        warnings.simplefilter("error", TailNotDecayedWarning)
        apply_absT(fast)


def test_absT_skips_incomplete_lines():
    g = small_grid()
    v = np.ones(g.count)
    v[0, 0, 3] = np.nan
    out = apply_absT(SampledField(v, g)).values
    assert np.all(np.isnan(out[0, 0]))
    assert np.all(np.isfinite(out[1, 1]))


def test_L_alpha_zero_is_L():
    g = small_grid()
    f = sample(gaussian_bump, g)
    a = apply_L_alpha(OperatorParams(1, 0.0), f, order=4).values
    b = apply_L(f, order=4).values
    np.testing.assert_array_equal(a, b)


def test_errors():
    with pytest.raises(GridTooSmallError):
        apply_L(SampledField(np.zeros((2, 2, 16)), Grid(1, (0, 0, 0), (1, 1, 1), (2, 2, 16))))
    with pytest.raises(DomainError):
        Grid(1, (0, 0, 0), (1, 1, 1), (3, 3, 5))
    with pytest.raises(DomainError):
        Grid(1, (0, 0), (1, 1), (3, 3))
    with pytest.raises(DomainError):
        SampledField(np.zeros((3, 3, 4)), small_grid())
    with pytest.raises(PoleParameterError):
        OperatorParams(1, 3.0)
    with pytest.raises(DomainError):
        apply_L(sample(gaussian_bump, small_grid()), order=3)
    with pytest.raises(DomainError):
        apply_L_alpha(OperatorParams(2, 0.0), sample(gaussian_bump, small_grid()))
