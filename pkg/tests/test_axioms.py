import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from cfree.axioms import InsufficientData, convolve_axiomatic, expectation_of_word, normalize_word
from cfree.fock import haagerup_operator
from cfree.series import Poly, TwoStateLaw
from cfree.twolevel import Pi, construct_model, state_pair_moments
from cfree.verify import random_poly

from conftest import laws

X = Poly([0, 1])
X2 = Poly([0, 0, 1])


def psi(law, n):
    return law.psi[n - 1]


@settings(max_examples=30, deadline=None)
@given(laws(order=3), laws(order=3))
def test_psi_of_XY(a, b):
    assert expectation_of_word("psi", [(1, X), (2, X)], a, b) == psi(a, 1) * psi(b, 1)


@settings(max_examples=30, deadline=None)
@given(laws(order=3), laws(order=3))
def test_phi_of_XY(a, b):
    assert expectation_of_word("phi", [(1, X), (2, X)], a, b) == a.phi[0] * b.phi[0]


@settings(max_examples=30, deadline=None)
@given(laws(order=3), laws(order=3))
def test_psi_of_XYXY(a, b):
    got = expectation_of_word("psi", [(1, X), (2, X), (1, X), (2, X)], a, b)
    x1, x2, y1, y2 = psi(a, 1), psi(a, 2), psi(b, 1), psi(b, 2)
    assert got == x2 * y1**2 + x1**2 * y2 - x1**2 * y1**2


@settings(max_examples=30, deadline=None)
@given(laws(order=3), laws(order=3))
def test_phi_of_centered_alternating_word_factorises(a, b):
    cx = Poly([-psi(a, 1), 1])
    cy = Poly([-psi(b, 1), 1])
    word = [(1, cx), (2, cy), (1, cx)]
    assert expectation_of_word("psi", word, a, b) == 0
    expected = (a.phi[0] - a.psi[0]) ** 2 * (b.phi[0] - b.psi[0])
    assert expectation_of_word("phi", word, a, b) == expected


def test_single_letter_is_marginal():
    a = TwoStateLaw([1, 2, 3], [4, 5, 6])
    b = TwoStateLaw([0, 0, 0], [0, 0, 0])
    assert expectation_of_word("phi", [(1, X2)], a, b) == 5
    assert expectation_of_word("psi", [(1, X), (1, X)], a, b) == 2


def test_multilinear_in_a_letter():
    rng = random.Random(4)
    a = TwoStateLaw([1, 2, 3, 4], [2, -1, 0, 3])
    b = TwoStateLaw([Fraction(1, 2), 1, 0, 2], [1, 1, 1, 1])
    p, q = random_poly(rng, 2), random_poly(rng, 2)
    for state in ("psi", "phi"):
        lhs = expectation_of_word(state, [(1, X), (2, p + q), (1, X)], a, b)
        rhs = expectation_of_word(state, [(1, X), (2, p), (1, X)], a, b) + expectation_of_word(
            state, [(1, X), (2, q), (1, X)], a, b
        )
        assert lhs == rhs


def test_insufficient_data():
    a = TwoStateLaw([1], [1])
    with pytest.raises(InsufficientData):
        expectation_of_word("psi", [(1, X2)], a, a)
    with pytest.raises(InsufficientData):
        convolve_axiomatic("add", a, a, 2)


def test_normalize_word():
    c, w = normalize_word([(1, Poly([2])), (1, X), (1, X), (2, X)])
    assert c == 2 and w == ((1, X2), (2, X))
    assert normalize_word([(1, X), (2, Poly([]))]) == (0, ())
    with pytest.raises(ValueError):
        normalize_word([(3, X)])


class TestConvolveAxiomatic:
    def test_zero_laws(self):
        z = TwoStateLaw([0] * 4, [0] * 4)
        assert convolve_axiomatic("add", z, z, 4) == z

    def test_add_geometric(self):
        a, c = Fraction(1, 2), Fraction(-1, 3)
        lx = TwoStateLaw([0] * 5, [a**n for n in range(1, 6)])
        ly = TwoStateLaw([0] * 5, [c**n for n in range(1, 6)])
        out = convolve_axiomatic("add", lx, ly, 5)
        assert out.phi == tuple((a + c) ** n for n in range(1, 6)) and out.psi == (0,) * 5

    def test_mul_geometric(self):
        a, c = Fraction(2), Fraction(-3, 4)
        lx = TwoStateLaw([1] * 5, [a**n for n in range(1, 6)])
        ly = TwoStateLaw([1] * 5, [c**n for n in range(1, 6)])
        out = convolve_axiomatic("mul", lx, ly, 5)
        assert out.phi == tuple((a * c) ** n for n in range(1, 6)) and out.psi == (1,) * 5

    def test_agrees_with_operator_model(self):
        # moments of the sum of two c-free model operators, computed independently
        rng = random.Random(5)
        f = [random_poly(rng) for _ in range(2)]
        F = [random_poly(rng) for _ in range(2)]
        ops = [construct_model("additive", Pi(haagerup_operator("additive", f[i], i)), i, F[i]) for i in range(2)]
        lx, ly = (state_pair_moments(o, 5) for o in ops)
        assert convolve_axiomatic("add", lx, ly, 5) == state_pair_moments(ops[0] + ops[1], 5)

    def test_unknown_kind(self):
        z = TwoStateLaw([0], [0])
        with pytest.raises(ValueError):
            convolve_axiomatic("max", z, z, 1)
