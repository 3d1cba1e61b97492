import random
from fractions import Fraction

import pytest

from weylkit.root_system import AffineRoot, affinize, build_finite, finite_coxeter
from weylkit.weyl import (
    DifferentComponents,
    ExtAffineWeylElement,
    NotAReflection,
    act_on_affine_root,
    automorphism_part,
    bruhat_leq,
    canonical_reflection_key,
    coxeter_order,
    double_coset_min_rep,
    element_from_json,
    element_to_json,
    enumerate_ball,
    eta,
    has_left_descent,
    has_right_descent,
    length,
    min_coset_rep,
    reduced_word,
    reflection_root_of,
    reflections_T,
)


@pytest.fixture(scope="module")
def aff_a1():
    return affinize(build_finite("A", 1))


@pytest.fixture(scope="module")
def aff_a2():
    return affinize(build_finite("A", 2))


@pytest.fixture(scope="module")
def fin_b2():
    return finite_coxeter(build_finite("B", 2))


def s(ambient, label):
    return ExtAffineWeylElement.simple(ambient, label)


def test_simple_reflections_are_involutions(aff_a2):
    for l in aff_a2.labels:
        g = s(aff_a2, l)
        assert (g * g).is_identity()
        assert length(g) == 1


def test_translation_action(aff_a1):
    # [PAPER] X^mu a = a - <da, mu>
    x = ExtAffineWeylElement.translation(aff_a1, (Fraction(2),))  # theta-check
    a = aff_a1.root((1,), 0)
    assert act_on_affine_root(x, a) == AffineRoot(aff_a1.finite_base, (1,), -2)
    assert length(x) == 2
    assert reduced_word(x).letters == (0, 1)


def test_affine_reflection_formula(aff_a1):
    # [DERIVED] s0 = s_{1-theta} maps theta to -theta + 2
    s0 = s(aff_a1, 0)
    assert act_on_affine_root(s0, aff_a1.root((1,), 0)) == AffineRoot(
        aff_a1.finite_base, (-1,), 2
    )


def test_lengths_affine_a1(aff_a1):
    # [DERIVED] the infinite dihedral group: alternating words are reduced
    g = ExtAffineWeylElement.identity(aff_a1)
    for k, label in enumerate([0, 1, 0, 1, 0]):
        g = g * s(aff_a1, label)
        assert length(g) == k + 1


def test_ball_sizes_affine_a1(aff_a1):
    ball = enumerate_ball(aff_a1, 5)
    # 1 + 2 per length level
    assert len(ball) == 11


def test_longest_element_a2():
    a2 = finite_coxeter(build_finite("A", 2))
    w0 = s(a2, 1) * s(a2, 2) * s(a2, 1)
    assert length(w0) == 3
    assert reduced_word(w0).letters == (1, 2, 1)
    assert len(reflections_T(w0)) == 3
    ball = enumerate_ball(a2, 10)
    assert len(ball) == 6  # |W(A2)|


def test_b2_weyl_group(fin_b2):
    ball = enumerate_ball(fin_b2, 10)
    assert len(ball) == 8
    w0 = max(ball, key=length)
    assert length(w0) == 4
    assert len(reflections_T(w0)) == 4


def test_length_is_card_T(aff_a2):
    # [PAPER] l(w) = #T(w)
    for g in enumerate_ball(aff_a2, 4):
        assert length(g) == len(reflections_T(g))


def test_descents(fin_b2):
    g = s(fin_b2, 1) * s(fin_b2, 2)
    assert has_right_descent(g, 2) and not has_right_descent(g, 1)
    assert has_left_descent(g, 1) and not has_left_descent(g, 2)


def test_reduced_word_roundtrip(aff_a2):
    rng = random.Random(7)
    labels = list(aff_a2.labels)
    for _ in range(25):
        g = ExtAffineWeylElement.identity(aff_a2)
        for _ in range(rng.randrange(8)):
            g = g * s(aff_a2, rng.choice(labels))
        rw = reduced_word(g)
        assert rw.evaluate() == g
        assert len(rw) == length(g)


def test_automorphism_part_of_lattice_translation(aff_a2):
    # X^{coweight_1} lies outside W_S: its length-0 part is a diagram rotation
    x = ExtAffineWeylElement.translation(aff_a2, (Fraction(1), Fraction(0)))
    pi = automorphism_part(x)
    assert not pi.is_identity()
    assert length(pi) == 0
    rw = reduced_word(x)
    assert rw.pi == pi and rw.evaluate() == x


def test_reflection_recovery(aff_a2):
    for direction, level in [((1, 0), 0), ((1, 1), 0), ((1, 1), -3), ((-1, 0), 2)]:
        a = aff_a2.root(direction, level)
        g = ExtAffineWeylElement.reflection(aff_a2, a)
        assert (g * g).is_identity()
        assert reflection_root_of(g) == canonical_reflection_key(a)
    with pytest.raises(NotAReflection):
        reflection_root_of(s(aff_a2, 0) * s(aff_a2, 1))


def test_eta_sign(fin_b2):
    w0 = s(fin_b2, 1) * s(fin_b2, 2) * s(fin_b2, 1) * s(fin_b2, 2)
    t = fin_b2.root((1, 0), 0)
    assert eta(w0, t) == -1
    assert eta(ExtAffineWeylElement.identity(fin_b2), t) == 1


def test_T_multiplicativity(aff_a2):
    # [PAPER] T(wy) is contained in T(w) union w T(y) w^{-1}
    rng = random.Random(11)
    ball = sorted(enumerate_ball(aff_a2, 3), key=lambda g: (g.mu, g.matrix))
    for _ in range(50):
        w, y = rng.choice(ball), rng.choice(ball)
        tw = reflections_T(w)
        conj = {
            reflection_root_of(
                w * ExtAffineWeylElement.reflection(aff_a2, t) * w.inverse()
            )
            for t in reflections_T(y)
        }
        assert reflections_T(w * y) <= tw | conj


def test_bruhat_order(fin_b2):
    s1, s2 = s(fin_b2, 1), s(fin_b2, 2)
    assert bruhat_leq(s1, s1 * s2)
    assert not bruhat_leq(s2, s1)
    assert bruhat_leq(s1, s1 * s2 * s1 * s2)


def test_bruhat_different_components(aff_a2):
    x = ExtAffineWeylElement.translation(aff_a2, (Fraction(1), Fraction(0)))
    with pytest.raises(DifferentComponents):
        bruhat_leq(x, ExtAffineWeylElement.identity(aff_a2))


def test_min_coset_rep(fin_b2):
    g = s(fin_b2, 2) * s(fin_b2, 1)
    assert min_coset_rep(g, {1}, "right") == s(fin_b2, 2)
    assert min_coset_rep(g, {2}, "left") == s(fin_b2, 1)
    assert double_coset_min_rep(g, {2}, {1}).is_identity()


def test_coxeter_order(fin_b2):
    assert coxeter_order(s(fin_b2, 1), s(fin_b2, 2)) == 4
    aff = affinize(build_finite("A", 1))
    assert coxeter_order(s(aff, 0), s(aff, 1), cap=20) is None


def test_element_json_roundtrip(aff_a2):
    g = s(aff_a2, 0) * s(aff_a2, 2) * s(aff_a2, 1)
    data = element_to_json(g)
    assert element_from_json(aff_a2, data) == g
    bad = dict(data)
    bad["w"] = [["1", "1"], ["0", "1"]]
    with pytest.raises(ValueError):
        element_from_json(aff_a2, bad)
