from pathlib import Path

import pytest

from conftest import make_random_endomorphism
from polyop import polytope as pt
from polyop.ncseries import (
    LaurentPoly, NCSeries, SignTwist, dump_endomorphism, hilbert_endomorphism,
    identity_endomorphism, involution_check, parse_twist, substitute,
    twist_endomorphism,
)

DATA = Path(__file__).parent / "data"


def test_laurent_basics():
    a = LaurentPoly({0: 1, 2: 3}, -2, 4)
    b = LaurentPoly({-1: 2}, -2, 4)
    assert str(a) == "1*t^0+3*t^2"
    assert (a * b).coeffs == {-1: 2, 1: 6}
    assert (a + a).coeffs == {0: 2, 2: 6}
    assert (a - a).is_zero()
    assert a.twist_t().coeffs == {0: 1, 2: 3}
    assert b.twist_t().coeffs == {-1: -2}
    # window truncation
    c = LaurentPoly({5: 1}, -2, 4)
    assert c.is_zero()
    # mod-2 reduction
    d = LaurentPoly({0: 2, 1: 3}, -2, 4, mod2=True)
    assert d.coeffs == {1: 1}


def test_point_closed_form():
    p = pt.point()
    for mode in ("int", "f2"):
        f = hilbert_endomorphism(p, 5, (0, 8), mode)
        img = f.images["x"]
        expected = {("x",) * (k + 1): LaurentPoly({k: 1}, 0, 8, mode == "f2")
                    for k in range(5)}
        assert img.terms == expected


def test_interval_chain_coefficients():
    p = pt.interval()
    f = hilbert_endomorphism(p, 4, (0, 8), "int")
    s = f.images["s"]
    assert s.terms[("x", "s")] == LaurentPoly({1: 1}, 0, 8)
    assert s.terms[("x", "y")] == LaurentPoly({2: 1}, 0, 8)
    assert s.terms[("s", "y")] == LaurentPoly({1: 1}, 0, 8)
    assert s.terms[("s",)] == LaurentPoly({0: 1}, 0, 8)
    assert ("s", "s") not in s.terms
    assert ("y", "x") not in s.terms


def test_identity_coefficient_on_every_builtin():
    for p in (pt.simplex(2), pt.cube(2), pt.polygon(1, 1)):
        f = hilbert_endomorphism(p, 3, (0, 8), "f2")
        for c in f.colors():
            assert f.images[c].terms[(c,)].is_one()


def test_hilbert_coefficients_are_excess_monomials():
    from polyop import chains as ch
    p = pt.simplex(2)
    f = hilbert_endomorphism(p, 3, (0, 8), "int")
    for c in f.colors():
        for w, coeff in f.images[c].terms.items():
            d = ch.op_dim(p, w, c)
            assert d.present
            assert coeff.coeffs == {d.excess: 1}


def test_truncation_warning_recorded():
    p = pt.point()
    f = hilbert_endomorphism(p, 5, (0, 2), "int")
    assert f.warnings  # excess 3 and 4 chains fall outside the window
    assert all("outside window" in w for w in f.warnings)


def test_truncation_coherence():
    p = pt.simplex(2)
    big = hilbert_endomorphism(p, 5, (-2, 8), "int")
    small = hilbert_endomorphism(p, 3, (0, 4), "int")
    assert big.restricted(3, 0, 4) == small
    # coherence through substitution as well
    fb = substitute(big, big).restricted(3, 0, 4)
    fs = substitute(small, small)
    assert fb == fs


def test_point_f2_self_inverse():
    p = pt.point()
    f = hilbert_endomorphism(p, 5, (0, 8), "f2")
    ff = substitute(f, f)
    ident = identity_endomorphism(["x"], 5, (0, 8), "f2")
    assert ff == ident


def test_twist_identities():
    colors = ["a", "b"]
    ident = identity_endomorphism(colors, 3, (-2, 4), "int")
    assert twist_endomorphism(colors, SignTwist(False, False), 3, (-2, 4), "int") == ident
    both = twist_endomorphism(colors, SignTwist(True, True), 3, (-2, 4), "int")
    assert substitute(both, both) == ident
    # in mode f2 every twist is the identity
    for name in ("t", "colors", "both", "none"):
        tw = twist_endomorphism(colors, parse_twist(name), 3, (0, 4), "f2")
        assert tw == identity_endomorphism(colors, 3, (0, 4), "f2")


def test_twist_action_on_terms():
    lo, hi = -2, 4
    g_terms = {("x", "y"): LaurentPoly({2: 1}, lo, hi)}
    g = identity_endomorphism(["x", "y"], 3, (lo, hi), "int")
    g.images["x"] = g.images["x"] + NCSeries(g_terms, 3, lo, hi)
    both = twist_endomorphism(["x", "y"], SignTwist(True, True), 3, (lo, hi), "int")
    res = substitute(both, g)
    # t^2 * xy picks up (-1)^2 from t and (-1)^2 from the two letters
    assert res.images["x"].terms[("x", "y")] == LaurentPoly({2: 1}, lo, hi)
    flip_t = twist_endomorphism(["x", "y"], SignTwist(False, True), 3, (lo, hi), "int")
    h_terms = {("x",): LaurentPoly({1: 1}, lo, hi)}
    h = identity_endomorphism(["x", "y"], 3, (lo, hi), "int")
    h.images["y"] = NCSeries(h_terms, 3, lo, hi)
    res2 = substitute(flip_t, h)
    assert res2.images["y"].terms[("x",)] == LaurentPoly({1: -1}, lo, hi)


def test_substitute_unit_and_associativity():
    for seed in range(6):
        e = make_random_endomorphism(seed)
        ident = identity_endomorphism(e.colors(), e.n_max, (e.lo, e.hi), e.mode())
        assert substitute(ident, e) == e
        assert substitute(e, ident) == e
    for seed in range(4):
        a = make_random_endomorphism(seed * 3 + 1)
        b = make_random_endomorphism(seed * 3 + 2)
        c = make_random_endomorphism(seed * 3 + 3)
        assert substitute(substitute(a, b), c) == substitute(a, substitute(b, c))


def test_substitute_rejects_mismatched_colors():
    a = make_random_endomorphism(1, colors=("a", "b"))
    b = make_random_endomorphism(1, colors=("a", "c"))
    with pytest.raises(ValueError):
        substitute(a, b)


def test_involution_point_int_flip_t():
    assert involution_check(pt.point(), 6, (0, 10), "int", SignTwist(False, True)) == []


def test_involution_interval_int_flip_t():
    assert involution_check(pt.interval(), 4, (0, 8), "int", SignTwist(False, True)) == []


def test_involution_f2_small_builtins():
    assert involution_check(pt.simplex(3), 5, (0, 8), "f2") == []
    assert involution_check(pt.polygon(2, 2), 5, (0, 8), "f2") == []


def test_involution_fails_on_nonshort_witness():
    p = pt.load(DATA / "nonshort_cube3.json")
    residual = involution_check(p, 5, (-4, 8), "f2")
    assert residual != []


def test_dump_format():
    f = hilbert_endomorphism(pt.interval(), 2, (0, 4), "int")
    lines = dump_endomorphism(f)
    assert "s\tx,s\t1*t^1" in lines
    assert "s\tx,y\t1*t^2" in lines
    assert lines == sorted(lines, key=lambda l: (l.split("\t")[0],
                                                 len(l.split("\t")[1].split(",")),
                                                 l.split("\t")[1]))


def test_images_must_not_have_constant_term():
    from polyop.ncseries import NCEndomorphism
    lo, hi = 0, 4
    bad = NCSeries({(): LaurentPoly({0: 1}, lo, hi)}, 3, lo, hi)
    with pytest.raises(ValueError):
        NCEndomorphism({"a": bad}, 1, 3, lo, hi)
