import numpy as np
import pytest

from quadsat.field import FieldError, build_field, field_of_order, parse_header, poly_mul, prime_power

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32]


def test_modulus_examples():
    assert build_field(2, 2).modulus == (1, 1)  # x^2 + x + 1
    assert build_field(3, 2).modulus == (1, 0)  # x^2 + 1
    assert build_field(7, 1).modulus == (0,)


def test_rejects_bad_parameters():
    with pytest.raises(FieldError):
        build_field(4, 1)
    with pytest.raises(FieldError):
        build_field(2, 0)
    with pytest.raises(FieldError):
        build_field(2, 8)
    with pytest.raises(FieldError):
        field_of_order(6)


def test_small_products_and_inverses():
    F4, F7 = build_field(2, 2), build_field(7)
    assert F4.mul(2, 2) == 3
    assert F7.mul(3, 5) == 1
    assert F7.inv(3) == 5
    assert F4.inv(2) == 3
    for F in (F4, F7, build_field(3, 2)):
        assert F.inv(1) == 1
        for a in F.elements():
            assert F.mul(a, 1) == a
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


def _brute_modulus(p, h):
    """First monic irreducible in (c_{h-1},...,c_0) order, by root/product search."""
    from itertools import product

    def polymul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    reducible = set()
    for d in range(1, h // 2 + 1):
        for lo in product(range(p), repeat=d):
            for lo2 in product(range(p), repeat=h - d):
                reducible.add(tuple(polymul(list(lo) + [1], list(lo2) + [1])))
    for hi in product(range(p), repeat=h):
        cand = tuple(reversed(hi)) + (1,)
        if cand not in reducible:
            return cand[:-1]


@pytest.mark.parametrize("p,h", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)])
def test_modulus_is_smallest_irreducible(p, h):
    assert build_field(p, h).modulus == _brute_modulus(p, h)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_random(q):
    F = field_of_order(q)
    rng = np.random.default_rng(q)
    a, b, c = rng.integers(0, q, size=(3, 10_000))
    assert np.array_equal(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)))
    assert np.array_equal(F.add(F.add(a, b), c), F.add(a, F.add(b, c)))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.add(a, F.neg(a)), np.zeros_like(a))
    nz = a[a != 0]
    assert np.all(F.mul(nz, F.inv(nz)) == 1)


@pytest.mark.parametrize("q", ORDERS)
def test_multiplicative_group_order(q):
    F = field_of_order(q)
    assert all(F.pow(a, q - 1) == 1 for a in range(1, q))


@pytest.mark.parametrize("q", [q for q in ORDERS if q <= 32])
def test_tables_match_polynomial_product(q):
    F = field_of_order(q)
    for a in range(q):
        for b in range(q):
            assert F.mul(a, b) == poly_mul(F, a, b)


def test_large_field_without_full_tables():
    F = field_of_order(2187)
    assert F._mul_tab is None
    rng = np.random.default_rng(0)
    a, b = rng.integers(1, 2187, size=(2, 200))
    for x, y, z in zip(a, b, F.mul(a, b)):
        assert z == poly_mul(F, int(x), int(y))
    assert np.all(F.mul(a, F.inv(a)) == 1)


def test_header_round_trip():
    F = build_field(2, 3)
    line = F.header()
    assert line == "q 8 p 2 h 3 modulus 1,1,0"
    assert parse_header(line) is F
    with pytest.raises(FieldError):
        parse_header("q 8 p 2 h 3 modulus 1,0,1")


def test_prime_power():
    assert prime_power(49) == (7, 2)
    assert prime_power(2) == (2, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None
