import pytest
from hypothesis import given, strategies as st

from partlab import qseries
from partlab.errors import DomainError, OrderMismatchError, UnsupportedFamilyError
from partlab.numtheory import sigma0
from partlab.qseries import (
    Series,
    add,
    cube_series,
    gf_family,
    inverse,
    lambert,
    mul,
    negate,
    pentagonal_series,
    pochhammer,
    pochhammer_plus,
    scale,
)

coeff_lists = st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=12)


def test_mul_telescopes_geometric():
    one_minus_q = Series([1, -1] + [0] * 9)
    geometric = Series([1] * 11)
    assert mul(one_minus_q, geometric) == Series.one(10)


def test_add_negate_cancels():
    s = pochhammer(1, 1, 12)
    assert add(s, negate(s)) == Series.zero(12)


def test_product_with_inverse_is_one():
    s = pochhammer(1, 1, 30)
    assert mul(s, inverse(s)) == Series.one(30)


def test_inverse_of_geometric_factor():
    assert inverse(Series([1, -1, 0, 0])) == Series([1, 1, 1, 1])


def test_inverse_gives_partition_numbers():
    # Frozen against the exhaustive enumeration oracle.
    assert inverse(pochhammer(1, 1, 8)).coeffs == (1, 1, 2, 3, 5, 7, 11, 15, 22)


def test_inverse_of_one():
    assert inverse(Series.one(5)) == Series.one(5)


def test_inverse_requires_unit_constant():
    with pytest.raises(DomainError):
        inverse(Series([2, 1]))
    with pytest.raises(DomainError):
        inverse(Series([0, 1]))


def test_order_mismatch_rejected():
    with pytest.raises(OrderMismatchError):
        add(Series.one(3), Series.one(4))
    with pytest.raises(OrderMismatchError):
        mul(Series.one(3), Series.one(4))


def test_pochhammer_pentagonal_prefix():
    assert pochhammer(1, 1, 7).coeffs == (1, -1, -1, 0, 0, 1, 0, 1)


def test_pochhammer_two_surviving_factors():
    assert pochhammer(4, 4, 8).coeffs == (1, 0, 0, 0, -1, 0, 0, 0, -1)


def test_pochhammer_residue_interleaving():
    assert mul(pochhammer(2, 2, 6), pochhammer(1, 2, 6)) == pochhammer(1, 1, 6)


def test_pochhammer_validation():
    with pytest.raises(DomainError):
        pochhammer(0, 1, 5)
    with pytest.raises(DomainError):
        pochhammer_plus(1, 0, 5)


def test_lambert_divisor_counts():
    series = lambert(1, 1, 1, 30)
    assert series.coeffs[1:7] == (1, 2, 2, 3, 2, 4)
    for n in range(1, 31):
        assert series.coeffs[n] == sigma0(n)


def test_lambert_strided_divisor_counts():
    series = lambert(4, 4, 1, 40)
    assert series.coeffs[8] == 2
    for m in range(1, 11):
        assert series.coeffs[4 * m] == sigma0(m)
    assert all(series.coeffs[n] == 0 for n in range(41) if n % 4)


def test_lambert_signed_cancellation():
    assert lambert(2, 2, -1, 4).coeffs == (0, 0, 1, 0, 0)


def test_lambert_validation():
    with pytest.raises(DomainError):
        lambert(1, 1, 2, 5)
    with pytest.raises(DomainError):
        lambert(0, 1, 1, 5)


@pytest.mark.parametrize("order", [7, 50, 200])
def test_pentagonal_series_matches_product(order):
    assert pentagonal_series(order) == pochhammer(1, 1, order)


def test_cube_series_prefix():
    assert cube_series(6).coeffs == (1, -3, 0, 5, 0, 0, -7)


@pytest.mark.parametrize("order", [30, 200])
def test_cube_series_matches_product_cube(order):
    product = pochhammer(1, 1, order)
    assert mul(mul(product, product), product) == cube_series(order)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_weighted_geometric_sum_closed_form(p, n):
    # Finite sum of k*x^k for k = 1..p-1 with x = q^(p*n), against
    # (x(1 - x^p) - p(1 - x)x^p) / (1 - x)^2 expanded as a series.
    order = 100
    step = p * n
    finite = [0] * (order + 1)
    for k in range(1, p):
        if k * step <= order:
            finite[k * step] = k
    finite_series = Series(finite)

    def power(exponent):
        c = [0] * (order + 1)
        if exponent <= order:
            c[exponent] = 1
        return Series(c)

    x = power(step)
    x_p = power(step * p)
    numerator = add(mul(x, add(Series.one(order), negate(x_p))),
                    scale(mul(add(Series.one(order), negate(x)), x_p), -p))
    denominator = mul(add(Series.one(order), negate(x)), add(Series.one(order), negate(x)))
    assert mul(numerator, inverse(denominator)) == finite_series


def test_gf_family_values():
    assert gf_family("d_e", {}, 8).coeffs[8] == 6
    assert gf_family("o_p", {"p": 2}, 4).coeffs[4] == 3
    assert gf_family("a_r", {"p": 2, "r": 0}, 3).coeffs[3] == 1


def test_gf_family_unsupported():
    with pytest.raises(UnsupportedFamilyError):
        gf_family("b_prime", {}, 10)
    with pytest.raises(UnsupportedFamilyError):
        gf_family("d_k", {"k": 3}, 10)


def test_gf_family_bad_params():
    with pytest.raises(DomainError):
        gf_family("a_r", {"p": 2}, 10)
    with pytest.raises(DomainError):
        gf_family("h", {"p": 3, "i": 1}, 10)


@given(coeff_lists, coeff_lists)
def test_mul_commutative(xs, ys):
    order = max(len(xs), len(ys)) - 1
    a = Series(xs + [0] * (order + 1 - len(xs)))
    b = Series(ys + [0] * (order + 1 - len(ys)))
    assert mul(a, b) == mul(b, a)


@given(coeff_lists)
def test_inverse_round_trip(xs):
    coeffs = [1] + xs
    s = Series(coeffs)
    assert mul(s, inverse(s)) == Series.one(s.order)


def test_coefficient_indexing():
    s = Series([5, 6, 7])
    assert s[0] == 5 and s[2] == 7
    with pytest.raises(IndexError):
        s[3]
