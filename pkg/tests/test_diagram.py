import random

import pytest

from tlcalc.diagram import (
    AlgebraElement,
    Diagram,
    Word,
    adjoint,
    catalan,
    diagram_to_word,
    elem_multiply,
    enumerate_diagrams,
    generator,
    identity,
    jones_normal_form,
    multiply,
    normal_form_blocks,
    normal_words,
    word_diagram,
    word_to_element,
)
from tlcalc.scalar import Generic, beta, root_for_ell


def test_catalan_counts():
    assert [catalan(n) for n in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]
    for n in range(1, 8):
        assert len(enumerate_diagrams(n)) == catalan(n)


def test_invalid_diagrams_rejected():
    with pytest.raises(ValueError):
        Diagram(2, (2, 3, 0, 1))  # crossing
    with pytest.raises(ValueError):
        Diagram(2, (1, 0, 2, 2))


def test_serialize_parse():
    d = generator(3, 2)
    assert Diagram.parse(d.serialize()) == d
    assert identity(2).serialize() == "n=2:[4,3,2,1]"


@pytest.mark.parametrize("n", range(2, 7))
def test_generator_relations(n):
    for i in range(1, n):
        u = generator(n, i)
        d, loops = multiply(u, u)
        assert (d, loops) == (u, 1)
        for j in range(1, n):
            v = generator(n, j)
            if abs(i - j) == 1:
                d, loops = multiply(multiply(u, v)[0], u)
                assert (d, loops) == (u, 0)
            elif abs(i - j) > 1:
                assert multiply(u, v) == multiply(v, u)


def test_associativity_random():
    rng = random.Random(7)
    for n in (3, 4, 5, 6):
        ds = enumerate_diagrams(n)
        for _ in range(200):
            a, b, c = (rng.choice(ds) for _ in range(3))
            ab, l1 = multiply(a, b)
            abc, l2 = multiply(ab, c)
            bc, l3 = multiply(b, c)
            abc2, l4 = multiply(a, bc)
            assert abc == abc2 and l1 + l2 == l3 + l4


def test_adjoint_reverses_products():
    rng = random.Random(3)
    ds = enumerate_diagrams(5)
    for _ in range(100):
        a, b = rng.choice(ds), rng.choice(ds)
        d, k = multiply(a, b)
        assert multiply(adjoint(b), adjoint(a)) == (adjoint(d), k)


def test_words():
    w = Word.parse(4, "u1 u3 u2")
    assert w.serialize() == "u1 u3 u2"
    assert Word.parse(4, "1").letters == ()
    assert Word(4, ()).serialize() == "1"
    with pytest.raises(ValueError):
        Word.parse(3, "u3")


def test_algebra_element_ops():
    g = Generic()
    u1 = AlgebraElement.gen(3, 1, g)
    one = AlgebraElement.unit(3, g)
    assert elem_multiply(u1, u1) == u1.scale(beta(g))
    x = one + u1
    assert elem_multiply(x, x) == one + u1.scale(beta(g) + g.from_int(2))
    assert (x - x) == AlgebraElement(3, g, {})


def test_normal_form_counts():
    for n in range(1, 8):
        words = normal_words(n)
        assert len(words) == catalan(n)
        for w in words:
            js = [j for j, _ in normal_form_blocks(w)]
            ks = [k for _, k in normal_form_blocks(w)]
            assert js == sorted(set(js)) and ks == sorted(set(ks))
            assert all(j >= k for j, k in normal_form_blocks(w))


def test_jones_normal_form_examples():
    nf = jones_normal_form(Word.parse(3, "u2 u1 u2"))
    assert nf.word.serialize() == "u2" and nf.exponent == 0
    nf = jones_normal_form(Word.parse(3, "u1 u1 u2"))
    assert str(nf) == "beta u1 u2"
    assert jones_normal_form(Word.parse(3, "u1 u1"), root_for_ell(2)).zero


def test_normal_form_random_words():
    rng = random.Random(11)
    g = Generic()
    for _ in range(300):
        n = rng.randint(2, 5)
        w = Word(n, tuple(rng.randint(1, n - 1) for _ in range(rng.randint(0, 12))))
        nf = jones_normal_form(w)
        lhs = word_to_element(w, g)
        rhs = word_to_element(nf.word, g).scale(beta(g) ** nf.exponent)
        assert lhs == rhs


def test_diagram_to_word_roundtrip():
    for n in range(1, 8):
        for d in enumerate_diagrams(n):
            assert word_diagram(diagram_to_word(d)) == (d, 0)


def test_worked_example_word():
    w = Word.parse(10, "u6 u3 u5 u7 u2 u4 u6 u8 u1 u3 u5 u7 u4 u6 u8 u9 u5")
    d, loops = word_diagram(w)
    assert loops == 0
    assert diagram_to_word(d) == w
