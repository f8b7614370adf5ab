import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from ahlab.configurations import random_general, rational_normal_curve_points
from ahlab.errors import RangeError
from ahlab.fields import DEFAULT_FIELD, binomial
from ahlab.interpolation import hilbert_value
from ahlab.monomials import enumerate_basis
from ahlab.secant import secant_dimension, tangent_rows, terracini_span_rank, veronese_embed, waring_G


def test_veronese_examples():
    assert veronese_embed((1, 1), 2) == [1, 1, 1]
    v = veronese_embed((1, 0, 0), 3)
    assert v[0] == 1 and sum(v) == 1
    with pytest.raises(ValueError):
        veronese_embed((0, 0), 2)


def test_veronese_rational_curve_order():
    t = 7
    assert veronese_embed((1, t), 3) == [1, t, t**2, t**3]


def test_tangent_rows_are_products_with_power_of_linear_form():
    # l^(d-1) * x_j for l = x0 + 2 x1 in P^1, d = 3: l^2 = x0^2 + 4 x0 x1 + 4 x1^2
    rows = tangent_rows((1, 2), 3, DEFAULT_FIELD)
    assert rows[0] == [1, 4, 4, 0]
    assert rows[1] == [0, 1, 4, 4]


def test_span_rank_examples():
    for n in (1, 2, 3):
        for d in (2, 3, 4):
            p = random_general(n, 1, 1, 3).points[0].coords
            assert terracini_span_rank([p], d) == n + 1
    curve = rational_normal_curve_points(4, 7, 1, 5)
    assert terracini_span_rank([pt.coords for pt in curve.points], 3) == 34
    six = random_general(2, 6, 1, 2)
    assert terracini_span_rank([pt.coords for pt in six.points], 4) == 15
    with pytest.raises(RangeError):
        terracini_span_rank([(1, 0)], 1)


def test_secant_dimension_examples():
    r = secant_dimension(4, 3, 7)
    assert (r.expected_dim, r.actual_dim, r.defect) == (34, 33, 1)
    r = secant_dimension(2, 2, 2)
    assert (r.expected_dim, r.actual_dim, r.defect) == (5, 4, 1)
    r = secant_dimension(2, 3, 3)
    assert (r.expected_dim, r.actual_dim, r.defect, r.fills_ambient) == (8, 8, 0, False)
    assert secant_dimension(2, 4, 6).fills_ambient


@pytest.mark.parametrize("n,d", [(2, 3), (2, 4), (3, 3), (3, 4), (4, 3)])
def test_secant_dimension_monotone(n, d):
    N = binomial(n + d, n) - 1
    dims = []
    r = 1
    while True:
        dims.append(secant_dimension(n, d, r).actual_dim)
        if dims[-1] == N:
            break
        r += 1
    assert all(a < b for a, b in zip(dims, dims[1:]))
    assert secant_dimension(n, d, r + 1).actual_dim == N


@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(1, 4), st.integers(2, 5), st.data())
def test_span_rank_equals_double_point_hilbert_function(n, d, data):
    r = data.draw(st.integers(1, -(-binomial(n + d, n) // (n + 1)) + 2))
    config = random_general(n, r, 1, data.draw(st.integers(0, 2**32)))
    span = terracini_span_rank([pt.coords for pt in config.points], d)
    assert span == hilbert_value(config.with_multiplicity(2), d)


def test_waring_examples():
    assert waring_G(2, 4).G == 6
    assert waring_G(4, 3).G == 8
    assert waring_G(3, 4).G == 10
    for d in range(1, 13):
        assert waring_G(1, d).G == -(-(d + 1) // 2)


def test_waring_bump_on_grid():
    bumps = {}
    for n in range(1, 5):
        for d in range(2, 7):
            rep = waring_G(n, d)
            assert rep.G >= rep.naive
            if d > 2:
                assert rep.exceptional_bump in (0, 1)
                if rep.exceptional_bump:
                    bumps[(n, d)] = 1
            else:
                assert rep.G == n + 1
    assert set(bumps) == {(2, 4), (3, 4), (4, 4), (4, 3)}


def test_waring_json():
    data = waring_G(2, 4).to_json()
    assert data == {**data, "G": 6, "naive": 5, "exceptional_bump": 1, "schema": 1}
