"""Tree monomials, path-lexicographic orders, and normal-form counting for
the simplex and polygon operads.

Generators and their order are family data.  Relations are derived rather
than listed: whenever a colored arity carries exactly two quadratic tree
monomials, their difference is a relation and the path-lex-greater side is
the leading term.  A tree monomial is a normal form when no inner edge
matches a leading two-vertex pattern; counting normal forms against the
chain-derived dimensions certifies the rewriting system.
"""

from dataclasses import dataclass
from itertools import combinations

from . import chains as _chains
from . import polytope as _polytope

__all__ = [
    "Generator", "TreeMonomial", "OperadStructureError", "SimplexOperad",
    "PolygonOperad", "leaf", "node", "compare", "monomial_key",
    "quadratic_relations", "leading_patterns", "is_normal_form",
    "reduce_to_normal", "enumerate_monomials", "normal_form",
    "count_normal_forms", "count_for_arity", "admissibility_check",
]


class OperadStructureError(RuntimeError):
    """A structural expectation of the presentation failed (diagnostic)."""


@dataclass(frozen=True)
class Generator:
    family: str
    kind: str
    inputs: tuple
    output: object

    @property
    def arity(self):
        return len(self.inputs)

    def __repr__(self):
        return f"{self.kind}{self.inputs}->{self.output}"


@dataclass(frozen=True)
class TreeMonomial:
    """Planar tree with generator-labelled inner vertices; ``gen`` is None
    for a bare leaf.  ``color`` is the root/output color."""

    gen: object
    children: tuple
    color: object

    def is_leaf(self):
        return self.gen is None

    def leaves(self):
        if self.is_leaf():
            return (self.color,)
        out = ()
        for c in self.children:
            out += c.leaves()
        return out

    def inner_vertices(self):
        if self.is_leaf():
            return 0
        return 1 + sum(c.inner_vertices() for c in self.children)

    def words(self):
        """Per leaf, the generators met walking from that leaf to the root."""
        if self.is_leaf():
            return ((),)
        out = []
        for c in self.children:
            out.extend(w + (self.gen,) for w in c.words())
        return tuple(out)


def leaf(color):
    return TreeMonomial(None, (), color)


def node(gen, children):
    children = tuple(children)
    if len(children) != gen.arity:
        raise ValueError(f"{gen} expects {gen.arity} children")
    for child, want in zip(children, gen.inputs):
        if child.color != want:
            raise ValueError(f"{gen} child color {child.color} != {want}")
    return TreeMonomial(gen, children, gen.output)


def monomial_key(family, t):
    """Path-lexicographic sort key: leaf count, word-length vector, then the
    generator words compared by the family's generator order."""
    words = t.words()
    gk = family.generator_key
    return (len(words), tuple(len(w) for w in words),
            tuple(tuple(gk(g) for g in w) for w in words))


def compare(family, t1, t2):
    """-1, 0 or +1 in the family's monomial order."""
    for t in (t1, t2):
        _check_family(family, t)
    k1, k2 = monomial_key(family, t1), monomial_key(family, t2)
    return (k1 > k2) - (k1 < k2)


def _check_family(family, t):
    if t.is_leaf():
        return
    if t.gen.family != family.tag:
        raise ValueError(
            f"monomial from family {t.gen.family} compared under {family.tag}")
    for c in t.children:
        _check_family(family, c)


# -- families -----------------------------------------------------------------


class _Family:
    """Shared machinery; subclasses provide colors, generators and keys."""

    def __init__(self):
        self._generators = None
        self._by_output = None
        self._relations = None
        self._patterns = None
        self._polytope = None
        self._enum_memo = {}

    def generators(self):
        if self._generators is None:
            self._generators = tuple(self._make_generators())
        return self._generators

    def generators_by_output(self):
        if self._by_output is None:
            table = {}
            for g in self.generators():
                table.setdefault(g.output, []).append(g)
            self._by_output = table
        return self._by_output

    def polytope(self):
        if self._polytope is None:
            self._polytope = self._make_polytope()
        return self._polytope

    def op_dim(self, inputs, output):
        return _chains.op_dim(self.polytope(),
                              [self.color_label(c) for c in inputs],
                              self.color_label(output))

    def relations(self):
        if self._relations is None:
            self._relations = quadratic_relations(self)
        return self._relations

    def patterns(self):
        if self._patterns is None:
            self._patterns = leading_patterns(self)
        return self._patterns


class SimplexOperad(_Family):
    """Operad of the standard simplex on vertices 0..n.

    Colors are nonempty subsets of {0..n}; generators append one index
    (unary) or merge two subsets sharing max = min (binary).
    """

    def __init__(self, n):
        if not 0 <= n <= 9:
            raise ValueError("simplex operad supported for 0 <= n <= 9")
        super().__init__()
        self.n = n
        self.tag = f"simplex({n})"

    def colors(self):
        out = []
        for k in range(1, self.n + 2):
            out.extend(frozenset(s) for s in combinations(range(self.n + 1), k))
        return out

    def color_label(self, color):
        return "".join(str(i) for i in sorted(color))

    def color_key(self, color):
        return (len(color), tuple(sorted(color)))

    def _make_polytope(self):
        return _polytope.simplex(self.n)

    def u_gen(self, subset, i):
        subset = frozenset(subset)
        if i in subset:
            raise ValueError("appended index must be outside the subset")
        return Generator(self.tag, "U", (subset,), subset | {i})

    def b_gen(self, left, right):
        left, right = frozenset(left), frozenset(right)
        if max(left) != min(right):
            raise ValueError("binary generator needs max(left) = min(right)")
        return Generator(self.tag, "B", (left, right), left | right)

    def _make_generators(self):
        gens = []
        for c in self.colors():
            for i in range(self.n + 1):
                if i not in c:
                    gens.append(self.u_gen(c, i))
        for left in self.colors():
            for right in self.colors():
                if max(left) == min(right):
                    gens.append(self.b_gen(left, right))
        return gens

    def generator_key(self, g):
        if g.kind == "U":
            (subset,) = g.inputs
            (i,) = tuple(g.output - subset)
            # larger appended index is smaller
            return (1, len(subset), tuple(sorted(subset)), -i)
        left, right = g.inputs
        union = g.output
        return (2, len(union), tuple(sorted(union)), len(left))

    # normal-form construction: descending stems over segment colors, then
    # a right-leaning comb of binary merges
    def procedural_normal_form(self, inputs, output):
        k = len(inputs)
        if k == 1 and inputs[0] == output:
            return leaf(output)
        maxes = [max(s) for s in inputs]
        segments = []
        for s in range(k):
            extra = set()
            lower = None if s == 0 else maxes[s - 1]
            for j in output:
                if j in inputs[s]:
                    continue
                if (lower is None or j >= lower) and j < maxes[s]:
                    extra.add(j)
                if s == k - 1 and j > maxes[s]:
                    extra.add(j)
            segments.append(extra)

        def stem(base, extra):
            t = leaf(base)
            cur = base
            for j in sorted(extra, reverse=True):
                g = self.u_gen(cur, j)
                t = node(g, (t,))
                cur = g.output
            return t

        towers = [stem(inputs[s], segments[s]) for s in range(k)]
        acc = towers[-1]
        for s in range(k - 2, -1, -1):
            acc = node(self.b_gen(towers[s].color, acc.color), (towers[s], acc))
        return acc


class PolygonOperad(_Family):
    """Operad of the polygon with n upper and m lower inner vertices.

    Colors are the face labels of the builtin polygon.  Vertex tokens x(0)
    and y(0) both mean the source 0; x(n+1) and y(m+1) mean the sink 1.
    """

    def __init__(self, n, m):
        if n < 0 or m < 0 or n + m < 1:
            raise ValueError("polygon operad needs n, m >= 0 with n + m >= 1")
        super().__init__()
        self.n = n
        self.m = m
        self.tag = f"polygon({n},{m})"
        self.upper = ["0"] + [f"x({i})" for i in range(1, n + 1)] + ["1"]
        self.lower = ["0"] + [f"y({i})" for i in range(1, m + 1)] + ["1"]
        self.e_edges = [f"e({i})" for i in range(n + 1)]
        self.f_edges = [f"f({i})" for i in range(m + 1)]

    def colors(self):
        verts = ["0"] + self.upper[1:-1] + self.lower[1:-1] + ["1"]
        return verts + self.e_edges + self.f_edges + ["P"]

    def color_label(self, color):
        return color

    def color_key(self, color):
        if color == "0":
            return (0, 0, 0)
        if color == "1":
            return (0, 3, 0)
        if color.startswith("x("):
            return (0, 1, int(color[2:-1]))
        if color.startswith("y("):
            return (0, 2, int(color[2:-1]))
        if color.startswith("e("):
            return (1, 0, int(color[2:-1]))
        if color.startswith("f("):
            return (1, 1, int(color[2:-1]))
        if color == "P":
            return (2, 0, 0)
        raise ValueError(f"unknown color {color!r}")

    def _make_polytope(self):
        return _polytope.polygon(self.n, self.m)

    # tokens along one path: verts[i] is x(i) resp. y(i)
    def _path(self, side):
        return (self.upper, self.e_edges) if side == "e" else (self.lower, self.f_edges)

    def ul(self, side, i):
        verts, edges = self._path(side)
        return Generator(self.tag, "U_left", (verts[i],), edges[i])

    def ur(self, side, i):
        verts, edges = self._path(side)
        return Generator(self.tag, "U_right", (verts[i],), edges[i - 1])

    def bvv(self, v):
        return Generator(self.tag, "B", (v, v), v)

    def bve(self, side, i):
        verts, edges = self._path(side)
        return Generator(self.tag, "B", (verts[i], edges[i]), edges[i])

    def bev(self, side, i):
        verts, edges = self._path(side)
        return Generator(self.tag, "B", (edges[i - 1], verts[i]), edges[i - 1])

    def b0(self):
        return Generator(self.tag, "B", ("0", "P"), "P")

    def b1(self):
        return Generator(self.tag, "B", ("P", "1"), "P")

    def m_gen(self, edges):
        edges = tuple(edges)
        letter = edges[0][0]
        idx = [int(e[2:-1]) for e in edges]
        if any(e[0] != letter for e in edges) or idx != sorted(set(idx)):
            raise ValueError("edge sequence must be ascending on one path")
        return Generator(self.tag, "M", edges, "P")

    def _make_generators(self):
        gens = []
        seen = set()

        def add(g):
            if g not in seen:
                seen.add(g)
                gens.append(g)

        for side in ("e", "f"):
            verts, edges = self._path(side)
            top = len(edges)  # = n + 1 resp. m + 1
            for i in range(top):
                add(self.ul(side, i))
            for i in range(1, top + 1):
                add(self.ur(side, i))
            for v in verts:
                add(self.bvv(v))
            for i in range(top):
                add(self.bve(side, i))
            for i in range(1, top + 1):
                add(self.bev(side, i))
            for k in range(1, top + 1):
                for combo in combinations(edges, k):
                    add(self.m_gen(combo))
        add(self.b0())
        add(self.b1())
        return gens

    def generator_key(self, g):
        if g.arity == 1:
            rank = {"U_right": 0, "U_left": 1, "M": 2}[g.kind]
            return (1, rank, self.color_key(g.inputs[0]), self.color_key(g.output))
        return (g.arity, 0, self.color_key(g.output),
                tuple(self.color_key(c) for c in g.inputs))

    # -- normal-form construction ------------------------------------------

    def procedural_normal_form(self, inputs, output):
        if len(inputs) == 1 and inputs[0] == output:
            return leaf(output)
        if output != "P":
            return self._tower_for_non_top(inputs, output)
        zeros = 0
        while zeros < len(inputs) and inputs[zeros] == "0":
            zeros += 1
        ones = 0
        while ones < len(inputs) - zeros and inputs[len(inputs) - 1 - ones] == "1":
            ones += 1
        core = inputs[zeros:len(inputs) - ones]
        if core == ("P",):
            t = leaf("P")
            if ones:
                t = node(self.b1(), (t, _right_comb(self.bvv("1"), ones)))
        elif "P" in core:
            raise ValueError("P may only appear between source and sink copies")
        elif core or ones:
            side = "f" if any(c.startswith(("y(", "f(")) for c in core) else "e"
            t = self._top_core(side, core, ones)
        else:
            # source copies only: the last one is routed up the first edge
            zeros -= 1
            t = node(self.m_gen((self.e_edges[0],)),
                     (node(self.ul("e", 0), (leaf("0"),)),))
        for _ in range(zeros):
            t = node(self.b0(), (leaf("0"), t))
        return t

    def _top_core(self, side, core, ones):
        """Edge towers joined by one merge vertex.  Trailing sink copies are
        folded into the tower on the last edge, creating that tower when the
        core does not reach it."""
        verts, edges = self._path(side)
        top = len(edges)
        groups = []  # (edge index, vertex copies, edge present in the word)
        i = 0
        while i < len(core):
            tok = core[i]
            if tok in verts:
                j = verts.index(tok)
                copies = 0
                while i < len(core) and core[i] == tok:
                    copies += 1
                    i += 1
                has_edge = i < len(core) and core[i] == edges[j]
                if has_edge:
                    i += 1
                groups.append((j, copies, has_edge))
            else:
                groups.append((edges.index(tok), 0, True))
                i += 1
        fold = bool(ones) and bool(groups) and groups[-1][0] == top - 1
        towers = []
        for gi, (j, copies, has_edge) in enumerate(groups):
            trailing = ones if (fold and gi == len(groups) - 1) else 0
            towers.append((j, self._edge_tower(side, j, copies, has_edge, trailing)))
        if ones and not fold:
            towers.append((top - 1, self._edge_tower(side, top - 1, 0, False, ones)))
        m = self.m_gen(tuple(edges[j] for j, _ in towers))
        return node(m, tuple(t for _, t in towers))

    def _edge_tower(self, side, j, copies, has_edge, trailing):
        """Tower with output edges[j]: left-vertex actions wrapped around a
        base built from the edge leaf, a created edge, and sink copies."""
        verts, edges = self._path(side)
        if has_edge:
            base = leaf(edges[j])
            if trailing:
                ones = _right_comb(self.bvv("1"), trailing)
                base = node(self.bev(side, j + 1), (base, ones))
        elif trailing:
            base = node(self.ur(side, j + 1), (leaf(verts[j + 1]),))
            if trailing > 1:
                ones = _right_comb(self.bvv("1"), trailing - 1)
                base = node(self.bev(side, j + 1), (base, ones))
        else:
            if copies < 1:
                raise ValueError("empty tower")
            base = node(self.ul(side, j), (leaf(verts[j]),))
            copies -= 1
        for _ in range(copies):
            base = node(self.bve(side, j), (leaf(verts[j]), base))
        return base

    def _tower_for_non_top(self, inputs, output):
        if self.color_key(output)[0] == 0:  # vertex output: all inputs equal it
            if any(c != output for c in inputs):
                raise ValueError("vertex output accepts only its own copies")
            return _right_comb(self.bvv(output), len(inputs))
        side = "f" if output.startswith("f(") else "e"
        verts, edges = self._path(side)
        j = edges.index(output)
        left_tok, right_tok = verts[j], verts[j + 1]
        i = 0
        left = 0
        while i < len(inputs) and inputs[i] == left_tok:
            left += 1
            i += 1
        has_edge = i < len(inputs) and inputs[i] == output
        if has_edge:
            i += 1
        right = len(inputs) - i
        if any(c != right_tok for c in inputs[i:]):
            raise ValueError(f"inputs do not form a chain in {output}")
        if has_edge:
            base = leaf(output)
            if right:
                base = node(self.bev(side, j + 1),
                            (base, _right_comb(self.bvv(right_tok), right)))
        elif right:
            base = node(self.ur(side, j + 1), (leaf(right_tok),))
            if right > 1:
                base = node(self.bev(side, j + 1),
                            (base, _right_comb(self.bvv(right_tok), right - 1)))
        else:
            base = node(self.ul(side, j), (leaf(left_tok),))
            left -= 1
        for _ in range(left):
            base = node(self.bve(side, j), (leaf(left_tok), base))
        return base


def _right_comb(gen, count):
    """Right-leaning comb of a binary vertex-action over ``count`` copies."""
    t = leaf(gen.inputs[0])
    for _ in range(count - 1):
        t = node(gen, (leaf(gen.inputs[0]), t))
    return t


# -- relations and rewriting --------------------------------------------------


@dataclass(frozen=True)
class Relation:
    lead: TreeMonomial
    trail: TreeMonomial


def _quadratic_monomials(family):
    """All two-vertex monomials, grouped by (input word, output)."""
    by_output = family.generators_by_output()
    groups = {}
    for parent in family.generators():
        for slot, color in enumerate(parent.inputs):
            for child in by_output.get(color, ()):
                children = [leaf(c) for c in parent.inputs]
                children[slot] = node(child, tuple(leaf(c) for c in child.inputs))
                t = node(parent, tuple(children))
                groups.setdefault((t.leaves(), t.color), []).append(t)
    return groups


def quadratic_relations(family):
    """One relation per colored arity carrying exactly two quadratic
    monomials; more than two in one arity is a structural diagnostic."""
    def arity_key(arity):
        word, output = arity
        return (len(word), family.color_label(output),
                tuple(family.color_label(c) for c in word))

    relations = []
    for arity, monos in sorted(_quadratic_monomials(family).items(),
                               key=lambda kv: arity_key(kv[0])):
        if len(monos) == 1:
            continue
        if len(monos) > 2:
            raise OperadStructureError(
                f"arity {arity} carries {len(monos)} quadratic monomials")
        a, b = monos
        c = compare(family, a, b)
        if c == 0:
            raise OperadStructureError(f"order cannot separate monomials in {arity}")
        lead, trail = (a, b) if c > 0 else (b, a)
        relations.append(Relation(lead, trail))
    return relations


def _pattern_of(quadratic):
    slot = next(i for i, c in enumerate(quadratic.children) if not c.is_leaf())
    return (quadratic.gen, slot, quadratic.children[slot].gen)


def leading_patterns(family):
    """(parent gen, slot, child gen) -> Relation for every leading term."""
    return {_pattern_of(r.lead): r for r in family.relations()}


def _find_redex(t, patterns, path=()):
    """Deterministic scan for the first inner edge matching a leading
    pattern; returns (path to parent node, slot, relation)."""
    if t.is_leaf():
        return None
    for i, child in enumerate(t.children):
        if not child.is_leaf():
            rel = patterns.get((t.gen, i, child.gen))
            if rel is not None:
                return path, i, rel
    for i, child in enumerate(t.children):
        hit = _find_redex(child, patterns, path + (i,))
        if hit is not None:
            return hit
    return None


def _graft(template, subtrees):
    """Replace the leaves of a (quadratic) template by the given subtrees,
    in planar order."""
    it = iter(subtrees)

    def rec(t):
        if t.is_leaf():
            sub = next(it)
            if sub.color != t.color:
                raise ValueError("graft color mismatch")
            return sub
        return node(t.gen, tuple(rec(c) for c in t.children))

    out = rec(template)
    return out


def _rewrite_at(t, path, slot, rel):
    if path:
        i = path[0]
        children = list(t.children)
        children[i] = _rewrite_at(children[i], path[1:], slot, rel)
        return node(t.gen, tuple(children))
    child = t.children[slot]
    fragments = (list(t.children[:slot]) + list(child.children)
                 + list(t.children[slot + 1:]))
    return _graft(rel.trail, fragments)


def is_normal_form(family, t):
    return _find_redex(t, family.patterns()) is None


def reduce_to_normal(family, t):
    """Lead-reduce until no leading pattern matches.  Each step strictly
    decreases the monomial, so this terminates."""
    patterns = family.patterns()
    key = monomial_key(family, t)
    while True:
        hit = _find_redex(t, patterns)
        if hit is None:
            return t
        path, slot, rel = hit
        t = _rewrite_at(t, path, slot, rel)
        new_key = monomial_key(family, t)
        if not new_key < key:
            raise OperadStructureError("rewriting failed to decrease the order")
        key = new_key


def enumerate_monomials(family, output, exact_leaves):
    """All tree monomials with the given output color and leaf count."""
    memo = family._enum_memo
    key = (output, exact_leaves)
    if key in memo:
        return memo[key]
    out = []
    if exact_leaves == 1:
        out.append(leaf(output))
    for g in family.generators_by_output().get(output, ()):
        if g.arity > exact_leaves:
            continue
        for parts in _compositions(exact_leaves, g.arity):
            child_lists = [enumerate_monomials(family, c, p)
                           for c, p in zip(g.inputs, parts)]
            combos = [()]
            for options in child_lists:
                if not options:
                    combos = []
                    break
                combos = [c + (t,) for c in combos for t in options]
            out.extend(node(g, combo) for combo in combos)
    memo[key] = tuple(out)
    return memo[key]


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def normal_form(family, inputs, output):
    """The normal-form monomial for a present arity, or None.

    Built by the constructive segment/tower procedure and lead-reduced to
    a fixpoint (the construction is already normal in the simplex case).
    """
    inputs = tuple(inputs)
    if not family.op_dim(inputs, output).present:
        return None
    t = family.procedural_normal_form(inputs, output)
    if t.leaves() != inputs or t.color != output:
        raise OperadStructureError("constructed monomial has wrong arity")
    return reduce_to_normal(family, t)


def count_for_arity(family, inputs, output):
    """Number of normal forms with the given colored arity."""
    inputs = tuple(inputs)
    total = 0
    for t in enumerate_monomials(family, output, len(inputs)):
        if t.leaves() == inputs and is_normal_form(family, t):
            total += 1
    return total


def count_normal_forms(family, max_inputs):
    """Per colored arity with <= max_inputs inputs: the normal-form count,
    the chain-derived dimension, and whether they agree.

    Covers every arity that carries a monomial and every arity whose
    operation space is nonzero; all remaining arities are 0 = 0.
    """
    counts = {}
    for output in family.colors():
        for k in range(1, max_inputs + 1):
            for t in enumerate_monomials(family, output, k):
                key = (t.leaves(), output)
                if is_normal_form(family, t):
                    counts[key] = counts.get(key, 0) + 1
                else:
                    counts.setdefault(key, 0)
    p = family.polytope()
    label_of = {family.color_label(c): c for c in family.colors()}
    for f in p.all_faces():
        for n in range(1, max_inputs + 1):
            for chain in _chains.enumerate_chains(p, f, n):
                key = (tuple(label_of[m] for m in chain.members), label_of[f])
                counts.setdefault(key, 0)
    records = []
    for (inputs, output), count in counts.items():
        dim = 1 if family.op_dim(inputs, output).present else 0
        records.append((inputs, output, count, dim, count == dim))
    records.sort(key=lambda r: (len(r[0]), family.color_label(r[1]),
                                tuple(family.color_label(c) for c in r[0])))
    return records


# -- admissibility ------------------------------------------------------------


def _monomials_by_vertices(family, output, vertices, memo):
    key = (output, vertices)
    if key in memo:
        return memo[key]
    out = []
    if vertices == 0:
        out.append(leaf(output))
    else:
        for g in family.generators_by_output().get(output, ()):
            for parts in _weak_compositions(vertices - 1, g.arity):
                child_lists = [_monomials_by_vertices(family, c, p, memo)
                               for c, p in zip(g.inputs, parts)]
                combos = [()]
                for options in child_lists:
                    if not options:
                        combos = []
                        break
                    combos = [c + (t,) for c in combos for t in options]
                out.extend(node(g, combo) for combo in combos)
    memo[key] = tuple(out)
    return memo[key]


def _weak_compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _weak_compositions(n - first, k - 1):
            yield (first,) + rest


def _compose_at_leaf(alpha, i, beta):
    """Plug ``beta`` into the i-th leaf of ``alpha``."""
    counter = [0]

    def rec(t):
        if t.is_leaf():
            idx = counter[0]
            counter[0] += 1
            return beta if idx == i else t
        return node(t.gen, tuple(rec(c) for c in t.children))

    return rec(alpha)


def admissibility_check(family, bound):
    """Verify both admissibility clauses on all monomials with up to
    ``bound`` inner vertices.

    The composition clause is checked against consecutive pairs in sorted
    order (transitivity yields the general statement).  Returns the list of
    violations; expected empty.
    """
    memo = {}
    monos = []
    for c in family.colors():
        for v in range(bound + 1):
            monos.extend(_monomials_by_vertices(family, c, v, memo))
    keyed = sorted(monos, key=lambda t: monomial_key(family, t))
    violations = []
    # clause 1: fewer inputs comes first
    for a, b in zip(keyed, keyed[1:]):
        if len(a.leaves()) > len(b.leaves()):
            violations.append(("arity", a, b))
    # clause 2a: alpha <= alpha' implies alpha o_i beta <= alpha' o_i beta
    by_slot = {}
    for t in keyed:
        for i, color in enumerate(t.leaves()):
            by_slot.setdefault((i, color), []).append(t)
    by_output = {}
    for t in keyed:
        by_output.setdefault(t.color, []).append(t)
    slot_key = lambda kv: (kv[0][0], family.color_label(kv[0][1]))
    for (i, color), alphas in sorted(by_slot.items(), key=slot_key):
        betas = by_output.get(color, ())
        for a1, a2 in zip(alphas, alphas[1:]):
            for b in betas:
                c1 = _compose_at_leaf(a1, i, b)
                c2 = _compose_at_leaf(a2, i, b)
                if monomial_key(family, c1) > monomial_key(family, c2):
                    violations.append(("composition-left", a1, a2, b, i))
    # clause 2b: beta <= beta' implies alpha o_i beta <= alpha o_i beta'
    for (i, color), alphas in sorted(by_slot.items(), key=slot_key):
        betas = by_output.get(color, ())
        for b1, b2 in zip(betas, betas[1:]):
            for a in alphas:
                c1 = _compose_at_leaf(a, i, b1)
                c2 = _compose_at_leaf(a, i, b2)
                if monomial_key(family, c1) > monomial_key(family, c2):
                    violations.append(("composition-right", a, b1, b2, i))
    return violations
