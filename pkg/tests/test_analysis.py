import pytest

from tlcalc import linalg
from tlcalc.analysis import (
    ExcludedCase,
    NoSymmetricPartner,
    composition_series,
    element_matrix,
    find_isomorphism,
    hom_dim,
    hom_space,
    induce_presentation,
    induced_presentation,
    irreducible_presentation,
    is_isomorphic,
    is_module_map,
    iterated_induction,
    projective,
    projective_kind,
    projective_verify,
    radical_structure,
    standard_presentation,
    symmetric_hom,
)
from tlcalc.central import fn_element
from tlcalc.diagram import catalan
from tlcalc.numerology import dimL, dimR, dimV, hom_dim_expected
from tlcalc.presentation import ModulePresentation, RelationError, quotient_presentation, subspace_presentation
from tlcalc.scalar import Generic, RationalBeta, root_for_ell
from tlcalc.tower import fn_on_induced


def test_presentation_rejects_bad_relations():
    mode = RationalBeta(2)
    one, zero = mode.one(), mode.zero()
    ModulePresentation(2, mode, [[[mode.from_int(2)]]])
    with pytest.raises(RelationError):
        ModulePresentation(2, mode, [[[one]]])  # u^2 = u, not 2u
    with pytest.raises(ValueError):
        ModulePresentation(3, mode, [[[zero]]])


def test_presentation_subquotient():
    mode = root_for_ell(3)
    V = standard_presentation(6, 1, mode)
    from tlcalc.stdmod import radical_basis

    rad = [v.coeffs for v in radical_basis(6, 1, mode)]
    R = subspace_presentation(V, rad)
    L = quotient_presentation(V, rad)
    assert R.dim + L.dim == V.dim
    assert L.dim == dimL(6, 1, 3)
    L.verify_relations()


@pytest.mark.parametrize("mode", [Generic(), root_for_ell(2), root_for_ell(3)], ids=str)
def test_honest_induction_matches_tower(mode):
    for n in range(1, 5):
        for p in range(n // 2 + 1):
            honest = induce_presentation(standard_presentation(n, p, mode))
            assert is_isomorphic(honest, induced_presentation(n, p, mode))


def test_iterated_induction_fast_path():
    mode = root_for_ell(3)
    # (2,0) is critical at ell = 3
    two = induce_presentation(induce_presentation(standard_presentation(2, 0, mode)))
    assert is_isomorphic(two, iterated_induction(2, 0, 2, mode))


def test_element_matrix_on_induced():
    mode = root_for_ell(3)
    pres = induced_presentation(2, 0, mode)
    assert linalg.equal(element_matrix(pres, fn_element(3, mode)), fn_on_induced(2, 0, mode))


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_hom_table(ell):
    mode = root_for_ell(ell)
    for n in range(1, 7):
        for p in range(n // 2 + 1):
            for p2 in range(n // 2 + 1):
                got = hom_dim(standard_presentation(n, p, mode), standard_presentation(n, p2, mode))
                assert got == hom_dim_expected(n, p, p2, ell, mode.beta_is_zero)


def test_hom_maps_are_equivariant():
    mode = root_for_ell(4)
    src, tgt = standard_presentation(6, 1, mode), standard_presentation(6, 2, mode)
    homs = hom_space(src, tgt, verify=True)
    assert homs.dim == 1 and is_module_map(src, tgt, homs.maps[0])


def test_hom_with_noncyclic_source():
    mode = root_for_ell(2)
    # V_{4,2} at beta = 0 has zero form, so no single state need generate it
    V = standard_presentation(4, 2, mode)
    assert hom_dim(V, V) >= 1
    P = projective(4, 1, mode)
    assert hom_dim(P, P) == 2


def test_symmetric_hom_kernel_image():
    mode = root_for_ell(4)
    sh = symmetric_hom(6, 1, mode)
    assert sh.p2 == 2
    assert sh.kernel_is_radical and sh.image_is_radical
    assert sh.image_dim == dimR(6, 2, 4) == dimL(6, 1, 4)
    with pytest.raises(NoSymmetricPartner):
        symmetric_hom(7, 0, mode)  # critical


def test_radical_structure_and_series():
    mode = root_for_ell(4)
    rep = radical_structure(6, 2, mode)
    assert rep.verified and rep.partner == 1
    assert rep.describe() == "R(6,2) ~ L(6,1)"
    assert composition_series(6, 2, mode) == [(6, 1), (6, 2)]
    assert composition_series(6, 1, mode) == [(6, 1)]
    assert composition_series(4, 1, Generic()) == [(4, 1)]
    # beta = 0, n = 2p: the whole module is the radical
    assert composition_series(4, 2, root_for_ell(2)) == [(4, 1)]


def test_irreducible_presentation():
    mode = root_for_ell(4)
    L = irreducible_presentation(8, 3, mode)
    assert L.dim == dimL(8, 3, 4)
    assert hom_dim(L, L) == 1


def test_projective_examples():
    mode = root_for_ell(4)
    assert projective_kind(5, 0, mode) == "eigenspace"
    P = projective(5, 0, mode)
    assert P.dim == 6
    rep = projective_verify(5, 0, mode)
    assert rep.ok and rep.top == 2
    assert projective_kind(7, 0, mode) == "standard"
    with pytest.raises(ExcludedCase):
        projective(4, 2, root_for_ell(2))


def test_projective_methods_agree():
    mode = root_for_ell(3)
    a = projective(5, 1, mode)
    b = projective(5, 1, mode, method="induction")
    assert find_isomorphism(a, b) is not None


@pytest.mark.parametrize("ell", [2, 3, 4])
def test_wedderburn_with_computed_projectives(ell):
    mode = root_for_ell(ell)
    for n in range(1, 7):
        total = 0
        for p in range(n // 2 + 1):
            if dimL(n, p, ell):
                total += dimL(n, p, ell) * projective(n, p, mode).dim
        assert total == catalan(n)


def test_beta_zero_projective_is_induced():
    mode = root_for_ell(2)
    for n in (2, 4, 6):
        for p in range(n // 2):
            assert is_isomorphic(projective(n, p, mode), induced_presentation(n - 1, p, mode))


def test_generic_projective_is_standard():
    P = projective(4, 1, Generic())
    assert P.dim == dimV(4, 1)
