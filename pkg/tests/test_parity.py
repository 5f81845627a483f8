import numpy as np
import pytest

from qcong.parity import (
    bits_csv,
    delta_triangular,
    euler_parity_p,
    pack_bits,
    parity_census,
    parity_recurrence,
    unpack_bits,
)
from qcong.qproducts import cubic_partition_series, partition_series

from oracles import convolution_cubic, euler_partitions


@pytest.mark.parametrize("n", [0, 1, 3, 6, 10, 4950])
def test_delta_triangular_hits(n):
    assert delta_triangular(n) == 1


@pytest.mark.parametrize("n", [2, 4, 5, 7, 4949, 4951])
def test_delta_triangular_misses(n):
    assert delta_triangular(n) == 0


def test_delta_matches_enumeration():
    tri = {s * (s + 1) // 2 for s in range(200)}
    assert all(delta_triangular(n) == (n in tri) for n in range(10000))


def test_recurrence_small_values():
    a = convolution_cubic(40)
    bits = parity_recurrence(40)
    assert bits[0] == 1
    assert bits[2] == 1 and a[2] == 3
    assert bits[3] == 0 and a[3] == 4
    assert list(bits) == [x % 2 for x in a]


def test_recurrence_matches_series_parity():
    n = 20000
    assert list(parity_recurrence(n)) == list(cubic_partition_series(n + 1, modulus=2).coeffs)


def test_recurrence_restated_identity():
    bits = parity_recurrence(3000)
    for n in range(3001):
        total = 0
        k = 0
        while k * k + k <= n:
            total += bits[n - k - k * k]
            k += 1
        assert total % 2 == delta_triangular(n)


def test_euler_parity_small():
    p = euler_partitions(30)
    bits = euler_parity_p(30)
    assert p[5] == p[4] + p[3] - p[0] == 7 and bits[5] == 1
    assert bits[0] == 1
    assert list(bits) == [x % 2 for x in p]


def test_euler_parity_matches_series():
    n = 10000
    assert list(euler_parity_p(n)) == list(partition_series(n + 1, modulus=2).coeffs)


def test_census_small():
    c = parity_census(8, [0])
    assert (c.even_count, c.odd_count) == (3, 6)
    assert c.first_even_after[0] == 3 and c.first_odd_after[0] == 0
    assert c.even_count + c.odd_count == c.n_max + 1


def test_census_positive_counts():
    bits = parity_recurrence(2000)
    for n in range(3, 2001, 97):
        c = parity_census(n, [], bits)
        assert c.even_count > 0 and c.odd_count > 0


def test_census_witnesses_sweep():
    n_max = 10**5
    bits = parity_recurrence(n_max)
    thresholds = list(range(0, n_max // 2 + 1, 500))
    c = parity_census(n_max, thresholds, bits)
    for m in thresholds:
        e, o = c.first_even_after[m], c.first_odd_after[m]
        assert e is not None and e >= m and bits[e] == 0
        assert o is not None and o >= m and bits[o] == 1


def test_census_missing_witness_is_none():
    c = parity_census(10, [11])
    assert c.first_even_after[11] is None


def test_census_json():
    d = parity_census(8, [0]).to_dict()
    assert d["odd_fraction"] == "2/3"
    assert d["first_even_after"] == {"0": 3}


def test_pack_roundtrip():
    bits = parity_recurrence(1001)
    packed = pack_bits(bits)
    assert len(packed) == (len(bits) + 7) // 8
    assert np.array_equal(unpack_bits(packed, len(bits)), bits)


def test_bits_csv():
    assert bits_csv([1, 0, 1]) == "0,1\n1,0\n2,1\n"
