"""Compositional inversion of truncated series endomorphisms.

Two independent routes are provided.  ``invert_endo`` evaluates the signed
marked-tree formula bottom-up over (root color, input word), with root
stems handled by the alternating geometric series of the linear part.
``solve_inverse_oracle`` instead determines coefficients degree by degree
from the vanishing of composite coefficients, driving the forward
substitution engine; it is used as the oracle in tests and diagnostics.

Sign convention: a tree contributes (-1)^(number of inner vertices) times
the product of its vertex coefficients.  This is the convention validated
by the compose-to-identity property in integer mode.
"""

from dataclasses import dataclass
from functools import lru_cache

from .ncseries import LaurentPoly, NCEndomorphism, NCSeries, substitute

__all__ = [
    "LinearSplitError", "LinearPart", "enumerate_planar_trees",
    "count_planar_trees", "invert_single", "invert_linear", "invert_endo",
    "solve_inverse_oracle", "diff_algorithms",
]


class LinearSplitError(ValueError):
    """The linear part is not identity plus strictly positive t powers."""


# -- planar trees (single-variable case) ------------------------------------

LEAF = "leaf"


@lru_cache(maxsize=None)
def enumerate_planar_trees(n):
    """Planar rooted trees with n leaves, all inner vertices of arity >= 2.

    A tree is either the bare leaf or a tuple of subtrees (the root corolla).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return (LEAF,)
    out = []
    for k in range(2, n + 1):
        for parts in _compositions(n, k):
            stack = [enumerate_planar_trees(p) for p in parts]
            combos = [()]
            for options in stack:
                combos = [c + (t,) for c in combos for t in options]
            out.extend(combos)
    return tuple(out)


def _compositions(n, k):
    """Ordered compositions of n into k positive parts."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def count_planar_trees(n):
    return len(enumerate_planar_trees(n))


def _tree_vertices_and_factor(tree, coeffs):
    """(#inner vertices, product of per-vertex coefficients)."""
    if tree == LEAF:
        return 0, None
    count = 1
    factor = coeffs[len(tree)]
    for sub in tree:
        c, f = _tree_vertices_and_factor(sub, coeffs)
        count += c
        if f is not None:
            factor = factor * f
    return count, factor


def invert_single(f_coeffs, n_max):
    """Inverse of a single-variable series x + f_2 x^2 + ... by the signed
    tree sum.  ``f_coeffs[k]`` is the coefficient of x^(k+1); the linear
    coefficient must be 1."""
    if not f_coeffs or not f_coeffs[0].is_one():
        raise LinearSplitError("linear coefficient must be 1")
    one = f_coeffs[0]
    by_arity = {i + 1: c for i, c in enumerate(f_coeffs)}
    zero = one - one
    g = [one]
    for n in range(2, n_max + 1):
        total = zero
        for tree in enumerate_planar_trees(n):
            vertices, factor = _tree_vertices_and_factor(
                tree, _ArityCoeffs(by_arity, zero))
            if factor is None or factor.is_zero():
                continue
            total = total + (factor if vertices % 2 == 0 else -factor)
        g.append(total)
    return g


class _ArityCoeffs:
    """Arity lookup that treats missing arities as zero."""

    def __init__(self, by_arity, zero):
        self.by_arity = by_arity
        self.zero = zero

    def __getitem__(self, k):
        return self.by_arity.get(k, self.zero)


# -- linear parts ------------------------------------------------------------


@dataclass(frozen=True)
class LinearPart:
    """Matrix of linear coefficients, entries[(out_color, in_color)]."""

    colors: tuple
    entries: dict
    lo: int
    hi: int
    mod2: bool

    @classmethod
    def from_endomorphism(cls, f):
        entries = {}
        for c in f.colors():
            for d in f.colors():
                entries[(c, d)] = f.linear_coefficient(d, c)
        return cls(tuple(f.colors()), entries, f.lo, f.hi, f.mod2)

    def check_split(self):
        """Raise unless the matrix is E plus strictly positive t powers."""
        for c in self.colors:
            for d in self.colors:
                entry = self.entries[(c, d)]
                off = dict(entry.coeffs)
                if c == d:
                    if off.get(0) != 1:
                        raise LinearSplitError(
                            f"diagonal entry ({c},{d}) has t^0 coefficient "
                            f"{off.get(0, 0)}, expected 1")
                    off.pop(0, None)
                bad = [k for k in off if k <= 0]
                if bad:
                    raise LinearSplitError(
                        f"entry ({c},{d}) has nonpositive t powers {sorted(bad)}")

    def tilde(self):
        """The strictly positive part F - E."""
        out = {}
        one = LaurentPoly.one(self.lo, self.hi, self.mod2)
        for key, entry in self.entries.items():
            out[key] = entry - one if key[0] == key[1] else entry
        return out


def _mat_mul(colors, a, b, zero):
    out = {}
    for c in colors:
        for e in colors:
            acc = zero
            for d in colors:
                x = a[(c, d)]
                y = b[(d, e)]
                if x.is_zero() or y.is_zero():
                    continue
                acc = acc + x * y
            out[(c, e)] = acc
    return out


def invert_linear(linear, t_window=None):
    """G = E - F~ + F~^2 - ..., truncated; verified to satisfy GF = FG = E."""
    lo, hi = t_window if t_window is not None else (linear.lo, linear.hi)
    if (lo, hi) != (linear.lo, linear.hi):
        linear = LinearPart(
            linear.colors,
            {k: v.restricted(lo, hi) for k, v in linear.entries.items()},
            lo, hi, linear.mod2)
    linear.check_split()
    colors = linear.colors
    zero = LaurentPoly.zero(lo, hi, linear.mod2)
    one = LaurentPoly.one(lo, hi, linear.mod2)
    ident = {(c, d): (one if c == d else zero) for c in colors for d in colors}
    tilde = linear.tilde()
    g = dict(ident)
    power = dict(ident)
    sign = 1
    for _ in range(max(0, hi) + 1):
        power = _mat_mul(colors, power, tilde, zero)
        if all(v.is_zero() for v in power.values()):
            break
        sign = -sign
        for key, v in power.items():
            g[key] = g[key] + (v if sign > 0 else -v)
    for prod in (_mat_mul(colors, g, linear.entries, zero),
                 _mat_mul(colors, linear.entries, g, zero)):
        if prod != ident:
            raise ArithmeticError("linear-part inversion failed verification")
    return g


# -- colored inversion: marked-tree route ------------------------------------


def _split_products(g_terms, letters, total_len, lo, hi, mod2):
    """Yield (word, coeff) for products g(letters[0]) ... g(letters[-1])
    restricted to combined word length exactly ``total_len``."""
    k = len(letters)

    def rec(i, remaining):
        if i == k:
            if remaining == 0:
                yield (), LaurentPoly.one(lo, hi, mod2)
            return
        min_rest = k - i - 1
        support = g_terms[letters[i]]
        for w, c in support.items():
            room = remaining - len(w)
            if room < min_rest:
                continue
            for w2, c2 in rec(i + 1, room):
                prod = c * c2
                if not prod.is_zero():
                    yield w + w2, prod

    yield from rec(0, total_len)


def invert_endo(f, n_max=None, t_window=None):
    """Compositional inverse by the signed marked-tree formula, aggregated
    bottom-up over (root color, input word)."""
    f = _prepared(f, n_max, t_window)
    n_max, lo, hi, mod2 = f.params()
    colors = f.colors()
    g_mat = invert_linear(LinearPart.from_endomorphism(f))
    zero = LaurentPoly.zero(lo, hi, mod2)
    g_terms = {c: {} for c in colors}
    for c in colors:
        for d in colors:
            entry = g_mat[(c, d)]
            if not entry.is_zero():
                g_terms[c][(d,)] = entry
    higher = {c: [(w, coeff) for w, coeff in f.images[c].terms.items() if len(w) >= 2]
              for c in colors}
    for n in range(2, n_max + 1):
        base = {c: {} for c in colors}
        for c2 in colors:
            for u, lam in higher[c2]:
                if len(u) > n:
                    continue
                for w, prod in _split_products(g_terms, u, n, lo, hi, mod2):
                    term = lam * prod
                    if term.is_zero():
                        continue
                    acc = base[c2]
                    acc[w] = acc[w] - term if w in acc else -term
        words = set()
        for c2 in colors:
            words.update(base[c2])
        for w in words:
            for c in colors:
                total = zero
                for c2 in colors:
                    coeff = base[c2].get(w)
                    if coeff is None or coeff.is_zero():
                        continue
                    entry = g_mat[(c, c2)]
                    if entry.is_zero():
                        continue
                    total = total + entry * coeff
                if not total.is_zero():
                    g_terms[c][w] = total
    images = {c: NCSeries(terms, n_max, lo, hi, mod2)
              for c, terms in g_terms.items()}
    return NCEndomorphism(images, 1, n_max, lo, hi, mod2)


# -- colored inversion: degree-by-degree oracle ------------------------------


def solve_inverse_oracle(f, n_max=None, t_window=None):
    """Inverse computed degree by degree from the vanishing of composite
    coefficients, using the forward substitution engine."""
    f = _prepared(f, n_max, t_window)
    n_max, lo, hi, mod2 = f.params()
    colors = f.colors()
    zero = LaurentPoly.zero(lo, hi, mod2)
    one = LaurentPoly.one(lo, hi, mod2)
    fmat = {(c, d): f.linear_coefficient(d, c) for c in colors for d in colors}
    ident = {(c, d): (one if c == d else zero) for c in colors for d in colors}
    for (c, d), entry in fmat.items():
        residual = entry - ident[(c, d)]
        if any(k <= 0 for k in residual.coeffs):
            raise LinearSplitError(f"entry ({c},{d}) blocks the E + positive split")
    # Neumann iteration for the inverse linear part: G <- E - F~ G.
    tilde = {key: fmat[key] - ident[key] for key in fmat}
    g_mat = dict(ident)
    for _ in range(max(0, hi) + 1):
        nxt = _mat_mul(colors, tilde, g_mat, zero)
        g_mat = {key: ident[key] - nxt[key] for key in fmat}
    g_images = {c: {} for c in colors}
    for c in colors:
        for d in colors:
            if not g_mat[(c, d)].is_zero():
                g_images[c][(d,)] = g_mat[(c, d)]

    def current():
        return NCEndomorphism(
            {c: NCSeries(terms, n_max, lo, hi, mod2)
             for c, terms in g_images.items()},
            1, n_max, lo, hi, mod2)

    for n in range(2, n_max + 1):
        comp = substitute(current(), f)
        for w in {w for c in colors for w in comp.images[c].terms if len(w) == n}:
            k_vec = {c: comp.images[c].terms.get(w, zero) for c in colors}
            for c in colors:
                total = zero
                for c2 in colors:
                    if k_vec[c2].is_zero() or g_mat[(c, c2)].is_zero():
                        continue
                    total = total + g_mat[(c, c2)] * k_vec[c2]
                if not total.is_zero():
                    g_images[c][w] = -total
    return current()


def diff_algorithms(f, n_max=None, t_window=None):
    """Disagreement set between the two inversion algorithms."""
    a = invert_endo(f, n_max, t_window)
    b = solve_inverse_oracle(f, n_max, t_window)
    out = []
    for c in a.colors():
        words = set(a.images[c].terms) | set(b.images[c].terms)
        zero = LaurentPoly.zero(a.lo, a.hi, a.mod2)
        for w in sorted(words, key=lambda w: (len(w), w)):
            ca = a.images[c].terms.get(w, zero)
            cb = b.images[c].terms.get(w, zero)
            if ca != cb:
                out.append((c, w, ca, cb))
    return out


def _prepared(f, n_max, t_window):
    if f.t_sign != 1:
        raise ValueError("inversion requires t_sign = +1")
    n_max = f.n_max if n_max is None else n_max
    lo, hi = (f.lo, f.hi) if t_window is None else t_window
    if (n_max, lo, hi) != (f.n_max, f.lo, f.hi):
        f = f.restricted(n_max, lo, hi)
    return f
