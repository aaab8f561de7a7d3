import random
from fractions import Fraction

import pytest

from tamedeg import (
    Budget,
    BudgetExceededError,
    DomainError,
    ElementaryAut,
    Endo,
    Polynomial,
    TameWord,
    compose,
    deg_w_total,
    ge,
    intro_family,
    invert,
    jacobian_det,
    leading_form,
    mdeg,
    mdeg_w,
    nagata,
    permutation_word,
    power_dependence,
    realize,
    semigroup_witness,
    shear,
    transposition_word,
    wedge3_degree,
)
from oracles import triple_semigroup_member

X1, X2, X3 = (Polynomial.variable(i, 3) for i in range(3))


def mono3(e1, e2, e3, c=1):
    return Polynomial.monomial((e1, e2, e3), c)


def random_word(rng, length, nvars=3, exp_cap=3):
    steps = []
    for _ in range(length):
        target = rng.randrange(nvars)
        if rng.random() < 0.2:
            steps.append(
                ElementaryAut(
                    target, Fraction(rng.choice([-1, 2, 3])), Polynomial.zero(nvars)
                )
            )
            continue
        expo = [0] * nvars
        for i in range(nvars):
            if i != target:
                expo[i] = rng.randint(0, exp_cap)
        coeff = rng.choice([-2, -1, 1, 2])
        steps.append(ElementaryAut(target, Fraction(1), Polynomial.monomial(expo, coeff)))
    return TameWord(tuple(steps), nvars)


class TestElementarySteps:
    def test_shift_must_avoid_target(self):
        with pytest.raises(DomainError):
            ElementaryAut(0, Fraction(1), X1 * X2)

    def test_zero_scale_rejected(self):
        with pytest.raises(DomainError):
            ElementaryAut(0, Fraction(0), X2)

    def test_inverse_examples(self):
        step = shear(2, mono3(2, 0, 0))
        inv = step.inverse()
        assert inv.target == 2 and inv.scale == 1 and inv.shift == -mono3(2, 0, 0)
        step = ElementaryAut(0, Fraction(2), Polynomial.zero(3))
        assert step.inverse().scale == Fraction(1, 2)


class TestRealize:
    def test_empty_word(self):
        assert realize(TameWord((), 3)) == Endo.identity(3)

    def test_single_step(self):
        word = TameWord((shear(2, mono3(2, 0, 0)),), 3)
        assert realize(word) == Endo((X1, X2, X3 + X1 ** 2))

    def test_composition_convention_golden(self):
        # step (l=1, p=x3^2) then (l=2, p=x1^3): the second component picks
        # up the already-sheared first component
        word = TameWord((shear(0, mono3(0, 0, 2)), shear(1, mono3(3, 0, 0))), 3)
        f1 = X1 + X3 ** 2
        assert realize(word) == Endo((f1, X2 + f1 ** 3, X3))

    def test_concat_is_composition(self):
        rng = random.Random(41)
        for _ in range(20):
            w1 = random_word(rng, rng.randint(0, 3))
            w2 = random_word(rng, rng.randint(0, 3))
            assert realize(w1 + w2) == compose(realize(w1), realize(w2))

    def test_invert_round_trip(self):
        rng = random.Random(43)
        for _ in range(25):
            word = random_word(rng, rng.randint(1, 6), exp_cap=2)
            assert realize(word + invert(word)) == Endo.identity(3)
            assert realize(invert(word) + word) == Endo.identity(3)

    def test_budget_abort(self):
        steps = []
        for i in range(8):
            target = i % 3
            expo = [4] * 3
            expo[target] = 0
            steps.append(shear(target, Polynomial.monomial(expo)))
        with pytest.raises(BudgetExceededError):
            realize(TameWord(tuple(steps), 3), Budget(term_cap=50))

    def test_jacobian_is_product_of_scales(self):
        rng = random.Random(47)
        for _ in range(25):
            word = random_word(rng, rng.randint(0, 5), exp_cap=2)
            expected = Fraction(1)
            for s in word.steps:
                expected *= s.scale
            jac = jacobian_det(realize(word).components)
            assert jac == Polynomial.constant(expected, 3)


class TestPermutationHelpers:
    def test_transposition(self):
        endo = realize(transposition_word(0, 2, 3))
        assert endo == Endo((X3, X2, X1))

    def test_permutation(self):
        endo = realize(permutation_word((2, 0, 1), 3))
        assert endo.components == (X3, X1, X2)


class TestMultidegrees:
    def test_identity(self):
        ident = Endo.identity(3)
        assert mdeg_w(ident, (1, 2, 3)) == (ge(1), ge(2), ge(3))
        assert deg_w_total(ident, (1, 2, 3)) == ge(6)

    def test_engine_example(self):
        word = TameWord(
            (shear(0, mono3(0, 0, 2)), shear(1, mono3(0, 0, 3)), shear(2, mono3(2, 0, 0))),
            3,
        )
        assert mdeg(realize(word)) == (2, 3, 4)

    def test_nagata(self):
        n = nagata()
        assert mdeg(n) == (5, 3, 1)
        assert jacobian_det(n.components) == Polynomial.constant(1, 3)
        assert wedge3_degree(*n.components, (1, 1, 1)) == ge(3)


class TestSemigroupWitness:
    def test_template_one(self):
        word = semigroup_witness(2, 3, 4)
        endo = realize(word)
        assert mdeg(endo) == (2, 3, 4)
        # third step shears x3 by x1^2 (witness (a, b) = (2, 0))
        assert word.steps[2].shift == mono3(2, 0, 0)

    def test_template_two(self):
        word = semigroup_witness(3, 6, 7)
        endo = realize(word)
        assert mdeg(endo) == (3, 6, 7)
        assert leading_form(endo.components[1]) == X2 ** 6

    def test_no_witness(self):
        for triple in ((3, 4, 5), (3, 5, 7), (4, 5, 7), (4, 5, 11)):
            assert semigroup_witness(*triple) is None

    def test_unsorted_rejected(self):
        with pytest.raises(DomainError):
            semigroup_witness(3, 2, 4)

    def test_exhaustive_small(self):
        for d1 in range(1, 9):
            for d2 in range(d1, 9):
                for d3 in range(d2, 9):
                    word = semigroup_witness(d1, d2, d3)
                    expected = d2 % d1 == 0 or triple_semigroup_member(d3, (d1, d2))
                    if expected:
                        assert word is not None
                        assert mdeg(realize(word)) == (d1, d2, d3)
                    else:
                        assert word is None


class TestIntroFamily:
    def test_primes_2_3(self):
        degrees, word = intro_family((2, 3))
        assert degrees == (6, 9, 49)
        endo = realize(word)
        assert mdeg(endo) == (6, 9, 49)
        # top-degree cancellation: x3^54 terms from f1^9 and f2^6 cancel
        f3 = endo.components[2]
        assert (0, 0, 54) not in f3.terms
        assert max(sum(m) for m in f3.terms) == 49

    def test_primes_2_5(self):
        degrees, _ = intro_family((2, 5))
        assert degrees == (10, 25, 241)

    def test_membership_gaps(self):
        degrees, _ = intro_family((2, 3))
        d1, d2, d3 = degrees
        assert d2 % d1 != 0
        assert not triple_semigroup_member(d3, (d1, d2))

    def test_four_variables(self):
        degrees, word = intro_family((2, 3, 5))
        assert degrees == (30, 45, 125, 5581)
        endo = realize(word)
        got = tuple(d.coords[0] for d in mdeg_w(endo))
        assert got == degrees
        assert not triple_semigroup_member(degrees[3], degrees[:3])

    def test_bad_primes(self):
        with pytest.raises(DomainError):
            intro_family((4, 5))
        with pytest.raises(DomainError):
            intro_family((3, 2))


class TestDegreeFloorAndWedgeTotal:
    def test_sorted_mdeg_dominates_sorted_weights(self):
        rng = random.Random(53)
        for _ in range(40):
            word = random_word(rng, rng.randint(0, 5), exp_cap=2)
            endo = realize(word)
            for w in ((1, 1, 1), (1, 2, 3), (2, 3, 5)):
                degs = sorted(mdeg_w(endo, w))
                for d, wi in zip(degs, sorted(ge(x) for x in w)):
                    assert d >= wi

    def test_wedge3_equals_weight_total(self):
        rng = random.Random(59)
        for _ in range(30):
            word = random_word(rng, rng.randint(0, 4), exp_cap=2)
            endo = realize(word)
            for w in ((1, 1, 1), (1, 2, 3), (2, 3, 5)):
                assert wedge3_degree(*endo.components, w) == ge(sum(w))


class TestTwoVariableLeadingForms:
    def test_power_dependence_of_leading_forms(self):
        rng = random.Random(61)
        hits = 0
        while hits < 60:
            word = random_word(rng, rng.randint(1, 5), nvars=2, exp_cap=3)
            endo = realize(word)
            w = (1, rng.randint(1, 3))
            total = deg_w_total(endo, w)
            if not total > ge(w[0] + w[1]):
                continue
            h1 = leading_form(endo.components[0], w)
            h2 = leading_form(endo.components[1], w)
            assert (
                power_dependence(h1, h2) is not None
                or power_dependence(h2, h1) is not None
            )
            hits += 1
