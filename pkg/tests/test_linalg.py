import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from linecurrents.errors import SingularSystemError
from linecurrents.linalg import is_clustered, roots_of_monic, solve_dense

TABLE1_KERNEL_VALUES = np.exp(np.array([(1j * x + 0.5) for x in (-0.5, 0.0, 0.5)]))


def _residual_ok(c, roots):
    p = np.polynomial.polynomial.polyval(roots, np.concatenate([c, [1.0]]))
    return np.all(np.abs(p) <= 1e-8 * max(1.0, np.max(np.abs(c))))


def test_quadratic():
    r = roots_of_monic([-1.0, 0.0])
    np.testing.assert_allclose(sorted(r.values.real), [-1.0, 1.0], atol=1e-14)
    assert not r.clustered


def test_table1_cubic_round_trip():
    c = np.polynomial.polynomial.polyfromroots(TABLE1_KERNEL_VALUES)[:-1]
    r = roots_of_monic(c)
    for z in TABLE1_KERNEL_VALUES:
        assert np.min(np.abs(r.values - z)) < 1e-9
    assert r.method == "aberth"


def test_triple_zero_is_clustered():
    r = roots_of_monic([0.0, 0.0, 0.0])
    assert len(r.values) == 3
    np.testing.assert_array_equal(r.values, 0)
    assert r.clustered


def test_triple_nonzero_root_meets_residual():
    c = np.polynomial.polynomial.polyfromroots([2.0, 2.0, 2.0])[:-1]
    r = roots_of_monic(c)
    assert _residual_ok(c, r.values)
    np.testing.assert_allclose(r.values, 2.0, atol=1e-4)


def test_linear():
    r = roots_of_monic([-1.6487])
    assert r.values[0] == pytest.approx(1.6487)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=8))
def test_residual_postcondition(roots):
    c = np.polynomial.polynomial.polyfromroots(roots)[:-1]
    r = roots_of_monic(c)
    assert len(r.values) == len(roots)
    assert _residual_ok(c, r.values)


def test_dense_solve_condition():
    a = np.array([[2.0, 1.0], [1.0, 3.0]], dtype=complex)
    sol = solve_dense(a, [1.0, 2.0])
    np.testing.assert_allclose(a @ sol.x, [1.0, 2.0])
    assert 1.0 <= sol.cond < 10


def test_dense_solve_singular():
    with pytest.raises(SingularSystemError):
        solve_dense(np.zeros((3, 3)), np.ones(3))
    with pytest.raises(SingularSystemError):
        solve_dense([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0])


def test_is_clustered():
    assert is_clustered([1.0, 1.0 + 1e-12])
    assert not is_clustered([1.0, 1.1])
    assert not is_clustered([1.0])
