import pytest

from tlcalc.diagram import catalan
from tlcalc.numerology import (
    bratteli_row,
    bratteli_table,
    critical,
    curious_identity,
    dimL,
    dimP_expected,
    dimR,
    dimV,
    hom_dim_expected,
    is_semisimple,
    kr,
    left_partner,
    orbit,
    right_partner,
    wedderburn_sum,
)

# rows list p from floor(n/2) down to 0
FIG_R = {
    1: [0], 2: [0, 0], 3: [0, 0], 4: [0, 1, 0], 5: [1, 0, 0], 6: [1, 5, 0, 0],
    7: [6, 0, 0, 0], 8: [6, 20, 0, 1, 0], 9: [26, 0, 1, 0, 0],
    10: [26, 74, 1, 9, 0, 0], 11: [100, 0, 10, 0, 0, 0],
    12: [100, 265, 10, 54, 0, 1, 0],
}
FIG_L = {
    1: [1], 2: [1, 1], 3: [2, 1], 4: [2, 2, 1], 5: [4, 4, 1], 6: [4, 4, 5, 1],
    7: [8, 14, 6, 1], 8: [8, 8, 20, 6, 1], 9: [16, 48, 26, 8, 1],
    10: [16, 16, 74, 26, 9, 1], 11: [32, 165, 100, 44, 10, 1],
    12: [32, 32, 265, 100, 54, 10, 1],
}


def test_dimV():
    assert [dimV(6, p) for p in range(4)] == [1, 5, 9, 5]
    assert dimV(3, 2) == 0 and dimV(3, -1) == 0
    for n in range(1, 12):
        assert sum(dimV(n, p) ** 2 for p in range(n // 2 + 1)) == catalan(n)


@pytest.mark.parametrize("n", sorted(FIG_R))
def test_ising_tables(n):
    ps = range(n // 2, -1, -1)
    assert [dimR(n, p, 4) for p in ps] == FIG_R[n]
    assert [dimL(n, p, 4) for p in ps] == FIG_L[n]


def test_generic_and_ell1():
    for n in range(1, 10):
        assert is_semisimple(None, n)
        assert is_semisimple(1, n)


def test_beta_zero_odd_rows_semisimple():
    assert all(is_semisimple(2, n) for n in (1, 3, 5, 7, 9))
    assert not is_semisimple(2, 4)


def test_critical_and_kr():
    assert kr(5, 0, 4) == (1, 2)
    assert critical(7, 0, 4) and not critical(7, 1, 4)
    assert not critical(7, 0, None)


def test_partners_and_orbits():
    assert right_partner(6, 2, 4) == 1
    assert left_partner(6, 1, 4) == 2
    assert right_partner(7, 0, 4) is None  # critical
    # m = 13, 11, 5, 3 all give the same f at ell = 4
    assert orbit(12, 0, 4) == [5, 4, 1, 0]
    assert orbit(12, 5, 4) == [5, 4, 1, 0]
    assert orbit(12, 2, 4) == [6, 3, 2]


def test_hom_dims_expected():
    assert hom_dim_expected(6, 1, 2, 4) == 1
    assert hom_dim_expected(6, 2, 1, 4) == 0
    assert hom_dim_expected(2, 1, 0, 2, beta_zero=True) == 1
    assert hom_dim_expected(2, 1, 0, 2) == 0


def test_bratteli_rows():
    row = bratteli_row(8, 4)
    assert [c.dimR for c in row.cells] == [0, 1, 0, 20, 6]
    assert not any(c.critical for c in row.cells)  # n - 2p + 1 is odd
    assert [c.critical for c in bratteli_row(7, 4).cells] == [True, False, True, False]
    d = row.as_dict()
    assert d["n"] == 8 and d["cells"][3]["dimL"] == 8
    assert len(bratteli_table(5, 3)) == 5


def test_curious_identity():
    for n in range(1, 13):
        a, b = curious_identity(n)
        assert a == b


@pytest.mark.parametrize("ell", [None, 2, 3, 4, 5])
def test_wedderburn_numerology(ell):
    for n in range(1, 11):
        assert wedderburn_sum(n, ell) == catalan(n)


def test_dimP_expected_examples():
    assert dimP_expected(5, 0, 4) == 6
    assert dimP_expected(5, 1, 4) == dimV(5, 1)
    assert dimP_expected(4, 1, 2) == dimV(4, 1) + dimV(4, 2)
