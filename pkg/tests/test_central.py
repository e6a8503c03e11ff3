import pytest

from tlcalc import linalg
from tlcalc.central import (
    action_on_standard,
    build_Cn,
    build_Fn,
    build_Fn_beta,
    c_eigen,
    fn_beta,
    fn_element,
    is_central,
    scalar_of,
)
from tlcalc.diagram import AlgebraElement, Word, word_to_element
from tlcalc.scalar import Generic, ModeUnsupported, RationalBeta, RootOfUnity, f_eigen, q_elem, root_for_ell


def _combo(n, mode, terms):
    out = AlgebraElement(n, mode, {})
    for word, c in terms:
        out = out + word_to_element(Word.parse(n, word), mode).scale(c)
    return out


@pytest.fixture
def g():
    return Generic()


def test_F_golden(g):
    q = q_elem(g)
    qi = q.inverse()
    assert build_Fn(1, g) == _combo(1, g, [("1", q * q + qi * qi)])
    assert build_Fn(2, g) == _combo(2, g, [("1", q**3 + qi**3), ("u1", -((q - qi) ** 2))])
    a = -(q - qi) * (q * q - qi * qi)
    b = (q - qi) ** 2
    want = _combo(3, g, [("1", q**4 + qi**4), ("u1", a), ("u2", a), ("u1 u2", b), ("u2 u1", b)])
    assert build_Fn(3, g) == want


def test_C_golden(g):
    q = q_elem(g)
    qi = q.inverse()
    assert build_Cn(1, g) == AlgebraElement.unit(1, g)
    assert build_Cn(2, g) == _combo(2, g, [("1", g.one()), ("u1", q * q * (q - qi))])
    a = q**3 * (q * q - qi * qi)
    b = -(q**3) * (q - qi)
    want = _combo(3, g, [("1", g.one()), ("u1", a), ("u2", a), ("u1 u2", b), ("u2 u1", b)])
    assert build_Cn(3, g) == want


def test_F_beta_polynomials_agree(g):
    for n in range(1, 6):
        assert build_Fn_beta(n, g) == build_Fn(n, g)
    # F_1 = q^2 + q^-2 = beta^2 - 2
    assert list(fn_beta(1).values()) == [(-2, 0, 1)]


def test_F_self_adjoint(g):
    for n in range(1, 6):
        F = build_Fn(n, g)
        assert F.adjoint() == F


@pytest.mark.parametrize("n", range(1, 6))
def test_centrality(n):
    mode = root_for_ell(3)
    assert is_central(fn_element(n, mode))
    assert is_central(build_Cn(n, mode))
    assert not is_central(AlgebraElement.gen(3, 1, mode))


@pytest.mark.parametrize("mode", [Generic(), root_for_ell(2), root_for_ell(3), RationalBeta(1)], ids=str)
def test_F_eigenvalues(mode):
    for n in range(1, 6):
        F = fn_element(n, mode)
        for p in range(n // 2 + 1):
            assert scalar_of(action_on_standard(F, n, p)) == f_eigen(mode, n, p)


def test_C_eigenvalues():
    mode = root_for_ell(5)
    for n in range(1, 5):
        C = build_Cn(n, mode)
        for p in range(n // 2 + 1):
            assert scalar_of(action_on_standard(C, n, p)) == c_eigen(mode, n, p)


def test_block_separation_example():
    mode = RootOfUnity(24)
    F = fn_element(4, mode)
    C = build_Cn(4, mode)
    f = [scalar_of(action_on_standard(F, 4, p)) for p in range(3)]
    c = [scalar_of(action_on_standard(C, 4, p)) for p in range(3)]
    assert c == [mode.one(), q_elem(mode, 8), mode.one()]
    r3 = q_elem(mode) + q_elem(mode, -1)
    assert f == [-r3, mode.zero(), r3]
    assert r3 * r3 == mode.from_int(3)


def test_C_needs_q():
    with pytest.raises(ModeUnsupported):
        build_Cn(2, RationalBeta(0))
    with pytest.raises(ModeUnsupported):
        build_Fn(2, RationalBeta(0))
    assert not linalg.is_zero(action_on_standard(fn_element(3, RationalBeta(0)), 3, 1))
