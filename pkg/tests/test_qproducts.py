import pytest

from qcong.qproducts import (
    EtaExpansion,
    cubic_partition_series,
    eta_expansion,
    jacobi_cube_series,
    naive_qpochhammer_inf,
    partition_series,
    qpochhammer_inf,
    triangular_series,
)
from qcong.series import TruncatedSeries, extract_progression, invert, mul, power, reduce_mod

from oracles import convolution_cubic, euler_partitions, naive_product


def test_pochhammer_first_terms():
    expected = naive_product(range(1, 13), 13)
    assert expected == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
    assert list(qpochhammer_inf(1, 13).coeffs) == expected


@pytest.mark.parametrize("n", [1, 2, 7, 100, 1000])
def test_pentagonal_equals_naive_product(n):
    assert qpochhammer_inf(1, n) == naive_qpochhammer_inf(1, n)
    assert list(qpochhammer_inf(1, n).coeffs) == naive_product(range(1, n), n)


@pytest.mark.parametrize("d", [2, 3, 5, 25, 49, 98])
def test_pochhammer_substitution(d):
    base = qpochhammer_inf(1, 400)
    scaled = qpochhammer_inf(d, 400)
    for n in range(400):
        assert scaled[n] == (base[n // d] if n % d == 0 else 0)
    assert scaled == naive_qpochhammer_inf(d, 400)


def test_pochhammer_inverse():
    qp = qpochhammer_inf(1, 200)
    assert mul(qp, invert(qp)) == TruncatedSeries.one(200)


def test_pochhammer_rejects_bad_d():
    with pytest.raises(ValueError):
        qpochhammer_inf(0, 10)


def test_partition_numbers():
    assert list(partition_series(10).coeffs) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


def test_partition_ramanujan_values():
    p = partition_series(10)
    assert p[4] == 5
    assert p[9] == 30 and p[9] % 5 == 0


def test_cubic_first_terms():
    a = cubic_partition_series(9)
    assert a[0] == 1
    assert list(a.coeffs) == convolution_cubic(8) == [1, 1, 3, 4, 9, 12, 23, 31, 54]
    assert a[2] % 3 == 0


def test_cubic_modular_matches_exact():
    exact = cubic_partition_series(1200)
    for m in (2, 3, 5, 7, 27, 243):
        assert cubic_partition_series(1200, modulus=m) == reduce_mod(exact, m)


def test_cubic_against_convolution_oracle():
    n = 600
    assert list(cubic_partition_series(n + 1).coeffs) == convolution_cubic(n)


def test_cubic_progression_3n2():
    a3 = extract_progression(cubic_partition_series(9), 3, 2)
    # a(2), a(5), a(8)
    assert list(a3.coeffs) == [3, 12, 54]
    assert all(c % 3 == 0 for c in a3)


def test_eta_expansion():
    e = eta_expansion(1, 6)
    assert e.offset24 == 1 and list(e.series.coeffs) == [1, -1, -1, 0, 0, 1]
    assert eta_expansion(24, 5).offset24 // 24 == 1
    assert eta_expansion(50, 10).offset24 == 50
    with pytest.raises(ValueError):
        EtaExpansion(2, 3, qpochhammer_inf(2, 4))


def test_jacobi_cube_terms():
    j = jacobi_cube_series(13)
    assert (j[0], j[2], j[6], j[12]) == (1, -3, 5, -7)
    pronic = {0, 2, 6, 12}
    assert all(j[n] == 0 for n in range(13) if n not in pronic)


def test_jacobi_cube_identity():
    assert jacobi_cube_series(500) == power(qpochhammer_inf(2, 500), 3)


def test_triangular_terms():
    t = triangular_series(11)
    assert [n for n in range(11) if t[n]] == [0, 1, 3, 6, 10]
    assert t[4] == 0


def test_gauss_identity():
    rhs = mul(power(qpochhammer_inf(2, 500), 2), invert(qpochhammer_inf(1, 500)))
    assert triangular_series(500) == rhs


def test_partition_series_long():
    p = euler_partitions(3000)
    assert list(partition_series(3001).coeffs) == p
