import itertools

import pytest

from polyop import treealg as ta
from polyop.treealg import (
    PolygonOperad, SimplexOperad, compare, count_for_arity,
    count_normal_forms, enumerate_monomials, is_normal_form, leaf,
    monomial_key, node, normal_form, quadratic_relations, reduce_to_normal,
)

S = frozenset


def test_simplex1_generator_order_frozen():
    fam = SimplexOperad(1)
    u10 = fam.u_gen({0}, 1)
    u01 = fam.u_gen({1}, 0)
    b00 = fam.b_gen({0}, {0})
    b11 = fam.b_gen({1}, {1})
    b0_01 = fam.b_gen({0}, {0, 1})
    b01_1 = fam.b_gen({0, 1}, {1})
    expected = [u10, u01, b00, b11, b0_01, b01_1]
    assert sorted(expected, key=fam.generator_key) == expected
    assert sorted(fam.generators(), key=fam.generator_key) == expected


def test_compare_equal_and_cross_family():
    fam = SimplexOperad(1)
    t = node(fam.b_gen({0}, {0, 1}), (leaf(S({0})), leaf(S({0, 1}))))
    assert compare(fam, t, t) == 0
    other = PolygonOperad(1, 1)
    s = node(other.b0(), (leaf("0"), leaf("P")))
    with pytest.raises(ValueError):
        compare(fam, t, s)


def test_left_comb_exceeds_right_comb():
    fam = SimplexOperad(2)
    i, j, k = S({0}), S({0, 1}), S({1, 2})
    inner_l = node(fam.b_gen(i, j), (leaf(i), leaf(j)))
    left = node(fam.b_gen(inner_l.color, k), (inner_l, leaf(k)))
    inner_r = node(fam.b_gen(j, k), (leaf(j), leaf(k)))
    right = node(fam.b_gen(i, inner_r.color), (leaf(i), inner_r))
    assert left.leaves() == right.leaves() and left.color == right.color
    assert compare(fam, left, right) > 0


@pytest.mark.parametrize("fam", [SimplexOperad(1), SimplexOperad(2), PolygonOperad(1, 1)])
def test_relations_are_quadratic_with_lead_first(fam):
    rels = quadratic_relations(fam)
    assert rels
    for r in rels:
        assert r.lead.inner_vertices() == 2
        assert r.trail.inner_vertices() == 2
        assert r.lead.leaves() == r.trail.leaves()
        assert r.lead.color == r.trail.color
        assert compare(fam, r.lead, r.trail) > 0


def test_simplex_worked_example():
    fam = SimplexOperad(6)
    inputs = (S({1, 3}), S({6}), S({6}))
    output = S({1, 2, 3, 4, 6})
    got = normal_form(fam, inputs, output)
    stem1 = node(fam.u_gen({1, 3}, 2), (leaf(S({1, 3})),))
    stem2 = node(fam.u_gen({4, 6}, 3), (node(fam.u_gen({6}, 4), (leaf(S({6})),)),))
    inner = node(fam.b_gen({3, 4, 6}, {6}), (stem2, leaf(S({6}))))
    expected = node(fam.b_gen({1, 2, 3}, {3, 4, 6}), (stem1, inner))
    assert got == expected
    # the constructive procedure already lands on the normal form
    assert fam.procedural_normal_form(inputs, output) == expected
    assert is_normal_form(fam, got)


def test_polygon_worked_example():
    fam = PolygonOperad(2, 1)
    sigma = ("0", "0", "e(0)", "x(1)", "x(1)", "x(2)", "e(2)", "1")
    got = normal_form(fam, sigma, "P")
    t1 = node(fam.bve("e", 1),
              (leaf("x(1)"), node(fam.ul("e", 1), (leaf("x(1)"),))))
    t2 = node(fam.bve("e", 2),
              (leaf("x(2)"), node(fam.bev("e", 3), (leaf("e(2)"), leaf("1")))))
    m = node(fam.m_gen(("e(0)", "e(1)", "e(2)")), (leaf("e(0)"), t1, t2))
    expected = node(fam.b0(), (leaf("0"), node(fam.b0(), (leaf("0"), m))))
    assert got == expected
    assert is_normal_form(fam, got)


def test_normal_form_identity_and_absent():
    fam = SimplexOperad(2)
    assert normal_form(fam, (S({0, 1}),), S({0, 1})) == leaf(S({0, 1}))
    assert normal_form(fam, (S({0, 2}), S({1, 2})), S({0, 1, 2})) is None


def test_non_chain_arity_has_no_monomials():
    fam = SimplexOperad(2)
    assert count_for_arity(fam, (S({0, 2}), S({1, 2})), S({0, 1, 2})) == 0


@pytest.mark.parametrize("fam,max_inputs", [
    (SimplexOperad(2), 3),
    (PolygonOperad(1, 1), 3),
])
def test_normal_form_is_unique_survivor(fam, max_inputs):
    from polyop import chains as ch
    p = fam.polytope()
    label_of = {fam.color_label(c): c for c in fam.colors()}
    for f in p.all_faces():
        for n in range(1, max_inputs + 1):
            for chain in ch.enumerate_chains(p, f, n):
                inputs = tuple(label_of[m] for m in chain.members)
                output = label_of[f]
                survivors = [t for t in enumerate_monomials(fam, output, n)
                             if t.leaves() == inputs and is_normal_form(fam, t)]
                assert len(survivors) == 1, (inputs, output)
                assert normal_form(fam, inputs, output) == survivors[0]


def _all_rewrites(fam, t):
    """All one-step rewrites of ``t`` using the relations in either
    direction."""
    rels = fam.relations()
    both = {}
    for r in rels:
        both[ta._pattern_of(r.lead)] = r
        both[ta._pattern_of(r.trail)] = ta.Relation(lead=r.trail, trail=r.lead)

    out = []

    def scan(sub, path):
        if sub.is_leaf():
            return
        for i, child in enumerate(sub.children):
            if not child.is_leaf():
                rel = both.get((sub.gen, i, child.gen))
                if rel is not None:
                    out.append(ta._rewrite_at(t, path, i, rel))
        for i, child in enumerate(sub.children):
            scan(child, path + (i,))

    scan(t, ())
    return out


@pytest.mark.parametrize("fam,inputs,output", [
    (SimplexOperad(2), (S({0}), S({0, 2})), S({0, 1, 2})),
    (SimplexOperad(2), (S({0}), S({0}), S({0, 1})), S({0, 1, 2})),
    (PolygonOperad(1, 1), ("0", "1"), "P"),
    (PolygonOperad(1, 1), ("x(1)", "x(1)"), "P"),
])
def test_rewriting_closure_minimality(fam, inputs, output):
    nf = normal_form(fam, inputs, output)
    seen = {nf}
    frontier = [nf]
    while frontier:
        nxt = []
        for t in frontier:
            for r in _all_rewrites(fam, t):
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    assert all(t.leaves() == inputs and t.color == output for t in seen)
    normals = [t for t in seen if is_normal_form(fam, t)]
    assert normals == [nf]
    key_nf = monomial_key(fam, nf)
    assert all(key_nf <= monomial_key(fam, t) for t in seen)
    for t in seen:
        assert reduce_to_normal(fam, t) == nf


def test_reduction_strictly_decreases():
    fam = PolygonOperad(1, 1)
    t = fam.procedural_normal_form(("x(1)", "x(1)"), "P")
    k0 = monomial_key(fam, t)
    r = reduce_to_normal(fam, t)
    assert monomial_key(fam, r) <= k0


@pytest.mark.parametrize("fam,max_inputs", [
    (SimplexOperad(1), 4),
    (SimplexOperad(2), 3),
    (PolygonOperad(1, 1), 3),
])
def test_counts_match_dimensions(fam, max_inputs):
    records = count_normal_forms(fam, max_inputs)
    assert records
    for inputs, output, count, dim, match in records:
        assert count in (0, 1)
        assert match, (inputs, output, count, dim)


@pytest.mark.parametrize("fam,bound", [
    (SimplexOperad(1), 3),
    (SimplexOperad(2), 2),
    (PolygonOperad(1, 1), 2),
])
def test_admissibility(fam, bound):
    assert ta.admissibility_check(fam, bound) == []
