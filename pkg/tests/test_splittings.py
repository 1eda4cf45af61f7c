import random

import pytest

from freegroups.splittings import (
    AmalgamPresentation,
    HnnPresentation,
    amalgam_equal,
    amalgam_reduce,
    britton_reduce,
    classify_base_conjugacy,
    dehn_twist,
    hnn_equal,
    hnn_length,
    parse_presentation,
    validate_presentation,
)
from freegroups.words import Alphabet, identity, parse_word

from conftest import random_reduced, w


@pytest.fixture
def edge_pres(h_rank4):
    return HnnPresentation(
        h_rank4,
        "t",
        w(h_rank4, "u"),
        w(h_rank4, "a y b y a y^-1 b y^-1"),
    )


@pytest.fixture
def amalgam():
    f1 = Alphabet("p q")
    f2 = Alphabet("r s")
    return AmalgamPresentation(f1, f2, parse_word(f1, "p"), parse_word(f2, "r"))


def test_presentation_construction(h_rank4):
    with pytest.raises(ValueError):
        HnnPresentation(h_rank4, "y", w(h_rank4, "u"), w(h_rank4, "a"))
    with pytest.raises(ValueError):
        HnnPresentation(h_rank4, "t", identity(h_rank4), w(h_rank4, "a"))


def test_validate_examples(edge_pres, f2, h_rank4):
    report = validate_presentation(edge_pres)
    assert report.ok
    assert [c.name for c in report.checks] == [
        "u_root_free",
        "v_root_free",
        "u_v_not_conjugate",
    ]

    bad1 = HnnPresentation(f2, "t", w(f2, "x^2"), w(f2, "y"))
    report1 = validate_presentation(bad1)
    assert not report1.ok
    assert not report1.check("u_root_free").passed
    assert report1.check("v_root_free").passed

    f3 = Alphabet("x y z")
    bad2 = HnnPresentation(f3, "t", parse_word(f3, "x"), parse_word(f3, "z x z^-1"))
    report2 = validate_presentation(bad2)
    assert not report2.check("u_v_not_conjugate").passed


def test_britton_examples(edge_pres):
    pres = edge_pres
    v_lift = pres.lift(pres.v)

    form = britton_reduce(pres, pres.word("t^-1 u t"))
    assert hnn_length(form) == 0
    assert form.to_word(pres) == v_lift

    form2 = britton_reduce(pres, pres.word("t^-1 u^2 t"))
    assert hnn_length(form2) == 0
    assert form2.to_word(pres) == pres.lift(pres.v**2)

    form3 = britton_reduce(pres, pres.word("t^-1 a t"))
    assert hnn_length(form3) == 2
    assert form3.to_word(pres) == pres.word("t^-1 a t")

    assert hnn_length(britton_reduce(pres, pres.word("t"))) == 1
    assert hnn_length(britton_reduce(pres, pres.word("t a t^-1 b t"))) == 3


def test_britton_reverse_pinch(edge_pres):
    pres = edge_pres
    form = britton_reduce(pres, pres.word("t a y b y a y^-1 b y^-1 t^-1"))
    assert hnn_length(form) == 0
    assert form.to_word(pres) == pres.word("u")


def test_hnn_equal_examples(edge_pres):
    pres = edge_pres
    assert hnn_equal(pres, pres.word("t^-1 u t"), pres.lift(pres.v))
    assert not hnn_equal(pres, pres.word("t"), pres.word("t u"))
    # The explicit automorphism: g(t)^-1 u g(t) = g(v).
    gt = pres.word("t y b^-1 y a^-1")
    gv = pres.word("a y^-1 b y^-1 a y b y")
    assert hnn_equal(pres, ~gt * pres.word("u") * gt, gv)


def test_britton_lemma_trivial_form(edge_pres):
    pres = edge_pres
    rng = random.Random(61)
    for _ in range(60):
        word_ = random_reduced(rng, pres.extended, 10)
        assert hnn_equal(pres, word_, identity(pres.extended)) == britton_reduce(
            pres, word_
        ).is_trivial()
    # On t-free words equality is free equality.
    for _ in range(40):
        a = pres.lift(random_reduced(rng, pres.base, 8))
        b = pres.lift(random_reduced(rng, pres.base, 8))
        assert hnn_equal(pres, a, b) == (a == b)


def test_hnn_length_invariance_under_planted_pinches(edge_pres):
    pres = edge_pres
    rng = random.Random(67)
    for _ in range(16):
        word_ = random_reduced(rng, pres.extended, 8)
        base_length = hnn_length(britton_reduce(pres, word_))
        cut = rng.randint(0, len(word_.letters))
        p = rng.randint(-2, 2)
        if rng.random() < 0.5:
            filler = pres.word("t^-1") * pres.lift(pres.u**p) * pres.word("t") * pres.lift(
                pres.v**-p
            )
        else:
            filler = pres.word("t") * pres.lift(pres.v**p) * pres.word("t^-1") * pres.lift(
                pres.u**-p
            )
        from freegroups.words import Word

        rebuilt = (
            Word(pres.extended, word_.letters[:cut], _reduced=True)
            * filler
            * Word(pres.extended, word_.letters[cut:], _reduced=True)
        )
        assert hnn_equal(pres, rebuilt, word_)
        assert hnn_length(britton_reduce(pres, rebuilt)) == base_length


def test_hnn_equal_congruence(edge_pres):
    pres = edge_pres
    rng = random.Random(71)
    for _ in range(20):
        w1 = random_reduced(rng, pres.extended, 6)
        pinch = pres.word("t^-1") * pres.lift(pres.u) * pres.word("t") * pres.lift(~pres.v)
        w2 = w1 * pinch
        assert hnn_equal(pres, w1, w2)
        g = random_reduced(rng, pres.extended, 4)
        h = random_reduced(rng, pres.extended, 4)
        assert hnn_equal(pres, g * w1 * h, g * w2 * h)


def test_classify_examples(edge_pres):
    pres = edge_pres
    result = classify_base_conjugacy(pres, pres.u, pres.v)
    assert result.solvable and result.case == 1 and result.p == 1
    assert result.gamma == identity(pres.base)
    assert result.delta == identity(pres.base)
    assert result.s == pres.word("t")

    result2 = classify_base_conjugacy(pres, pres.u**2, pres.v**2)
    assert result2.solvable and result2.case == 1 and result2.p == 2

    result3 = classify_base_conjugacy(pres, pres.base_word("a"), pres.base_word("b"))
    assert not result3.solvable

    # Case 2: conjugating in the reverse direction.
    result4 = classify_base_conjugacy(pres, pres.v, pres.u)
    assert result4.solvable and result4.case == 2 and result4.p == 1


def test_classify_witness_property(edge_pres):
    pres = edge_pres
    rng = random.Random(73)
    for _ in range(12):
        gamma = random_reduced(rng, pres.base, 3)
        delta = random_reduced(rng, pres.base, 3)
        p = rng.choice([-2, -1, 1, 2])
        alpha = ~gamma * pres.u**p * gamma
        beta = ~delta * pres.v**p * delta
        result = classify_base_conjugacy(pres, alpha, beta)
        assert result.solvable
        s = result.s
        assert hnn_equal(pres, ~s * pres.lift(alpha) * s, pres.lift(beta))


def test_classify_preconditions(edge_pres, f2):
    with pytest.raises(ValueError):
        classify_base_conjugacy(edge_pres, identity(edge_pres.base), edge_pres.v)
    bad = HnnPresentation(f2, "t", w(f2, "x^2"), w(f2, "y"))
    with pytest.raises(ValueError):
        classify_base_conjugacy(bad, w(f2, "x"), w(f2, "y"))


def test_amalgam_examples(amalgam):
    am = amalgam
    assert amalgam_reduce(am, am.word("p r^-1")).is_trivial()

    form = amalgam_reduce(am, am.word("p^2 s"))
    assert [(side, str(word_)) for side, word_ in form.syllables] == [(2, "r^2 s")]

    form2 = amalgam_reduce(am, am.word("q s"))
    assert [(side, str(word_)) for side, word_ in form2.syllables] == [(1, "q"), (2, "s")]


def test_amalgam_validation():
    f1 = Alphabet("p q")
    f2 = Alphabet("q r")
    with pytest.raises(ValueError):
        AmalgamPresentation(f1, f2, parse_word(f1, "p"), parse_word(f2, "r"))
    f2b = Alphabet("r s")
    with pytest.raises(ValueError):
        AmalgamPresentation(f1, f2b, identity(f1), parse_word(f2b, "r"))


def test_amalgam_equal(amalgam):
    am = amalgam
    assert amalgam_equal(am, am.word("p"), am.word("r"))
    assert amalgam_equal(am, am.word("q p s"), am.word("q r s"))
    assert not amalgam_equal(am, am.word("q"), am.word("s"))
    assert not amalgam_equal(am, am.word("p"), am.word("r^2"))


def test_amalgam_malformed_rejected(amalgam):
    with pytest.raises(ValueError):
        amalgam_reduce(amalgam, parse_word(Alphabet("p q"), "p"))


def test_dehn_twist_hnn(edge_pres):
    pres = edge_pres
    twist = dehn_twist(pres, 1)
    assert twist.images["t"] == pres.word("u t")
    assert twist.is_homomorphism
    assert dehn_twist(pres, 0).is_identity()
    twist3 = dehn_twist(pres, 3)
    assert twist3.images["t"] == pres.word("u^3 t")


def test_dehn_twist_amalgam(amalgam):
    twist = dehn_twist(amalgam, 1)
    assert twist.images["s"] == amalgam.word("r s r^-1")
    assert twist.images["p"] == amalgam.word("p")
    assert twist.is_homomorphism
    assert dehn_twist(amalgam, 0).is_identity()


def test_dehn_twist_inverse_pair(edge_pres, amalgam):
    from freegroups.endos import compose

    for splitting, n in ((edge_pres, 2), (amalgam, 3)):
        forward = dehn_twist(splitting, n)
        backward = dehn_twist(splitting, -n)
        assert compose(forward, backward).is_identity()
        assert compose(backward, forward).is_identity()


def test_parse_presentation_hnn(h_rank4):
    text = "gens a b u y\nhnn t : u -> a y b y a y^-1 b y^-1\n"
    pres = parse_presentation(text)
    assert isinstance(pres, HnnPresentation)
    assert pres.stable == "t"
    assert pres.u == w(h_rank4, "u")
    assert pres.v == w(h_rank4, "a y b y a y^-1 b y^-1")


def test_parse_presentation_amalgam():
    text = "gens p q\ngens r s\namalgam : p = r\n"
    pres = parse_presentation(text)
    assert isinstance(pres, AmalgamPresentation)
    assert str(pres.c1) == "p" and str(pres.c2) == "r"


def test_parse_presentation_errors():
    with pytest.raises(ValueError):
        parse_presentation("gens x y\n")
    with pytest.raises(ValueError):
        parse_presentation("gens x\nhnn t : x\n")
    with pytest.raises(ValueError):
        parse_presentation("gens p\namalgam : p = p\n")
