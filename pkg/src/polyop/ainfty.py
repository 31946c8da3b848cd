"""Diagonal maps on cellular chains over F2 and the coalgebra relations.

``delta(p, n, k)`` sends a face to the sum of the length-n, excess-k chains
it contains; arity 1/degree 1 is the cellular boundary mod 2, and arity
2/degree 1 reproduces the classical diagonals.  All computations here are
over F2: a term is present iff its multiplicity is odd.
"""

from dataclasses import dataclass

from . import chains as _chains
from .ncseries import involution_check

__all__ = [
    "DiagonalTerm", "DeltaMap", "delta", "magic_diagonal", "boundary",
    "leibniz_check", "ainfty_check", "compare_with_involution",
]


@dataclass(frozen=True)
class DiagonalTerm:
    source: str
    targets: tuple
    k: int

    def __str__(self):
        return f"{self.source}\t{'⊗'.join(self.targets)}\t{self.k}"


@dataclass(frozen=True)
class DeltaMap:
    n: int
    k: int
    terms: frozenset

    def apply(self, face):
        """Target tuples produced from one face, sorted."""
        return sorted(t.targets for t in self.terms if t.source == face)

    def sorted_terms(self):
        return sorted(self.terms, key=lambda t: (t.source, t.targets))


def delta(p, n, k):
    """All length-n, excess-k chains, organized per source face (F2)."""
    terms = set()
    for f in p.all_faces():
        for chain in _chains.enumerate_chains(p, f, n):
            if chain.excess == k:
                terms.add(DiagonalTerm(f, chain.members, k))
    return DeltaMap(n, k, frozenset(terms))


def magic_diagonal(p):
    """The comparable-pairs diagonal: F -> sum of F1 (x) F2 over pairs with
    F1 <= F2 and dim F1 + dim F2 = dim F.  Computed by a direct pair scan,
    independently of chain enumeration."""
    terms = set()
    for f in p.all_faces():
        subs = p.faces_in(f)
        target = p.dim(f)
        for f1 in subs:
            for f2 in subs:
                if p.dim(f1) + p.dim(f2) == target and p.face_leq(f1, f2):
                    terms.add(DiagonalTerm(f, (f1, f2), 1))
    return DeltaMap(2, 1, frozenset(terms))


def boundary(p):
    """Cellular differential mod 2: arity 1, degree 1."""
    return delta(p, 1, 1)


def _toggle(counter, key):
    if key in counter:
        counter.discard(key)
    else:
        counter.add(key)


def leibniz_check(p):
    """Residual of (d (x) id + id (x) d) o Delta + Delta o d over F2.

    Returns the list of (face, pair) terms with odd multiplicity; empty
    means the degree-1 diagonal is a chain map.
    """
    diag = delta(p, 2, 1)
    bd = boundary(p)
    bd_of = {f: [t.targets[0] for t in bd.terms if t.source == f]
             for f in p.all_faces()}
    residual = []
    for f in p.all_faces():
        odd = set()
        for pair in diag.apply(f):
            f1, f2 = pair
            for g in bd_of[f1]:
                _toggle(odd, (g, f2))
            for g in bd_of[f2]:
                _toggle(odd, (f1, g))
        for g in bd_of[f]:
            for pair in diag.apply(g):
                _toggle(odd, pair)
        residual.extend((f, pair) for pair in sorted(odd))
    return residual


def ainfty_check(p, max_len):
    """Coalgebra relations for the degree-1 diagonals: for every output
    length m <= max_len, the F2 sum over i + j = m + 1 and insertion slots
    of (id^p (x) Delta_i (x) id^(j-1-p)) o Delta_j vanishes.

    Returns the violating (face, m, tuple) triples; empty means the maps
    assemble into a coalgebra up to the stated length.
    """
    deltas = {j: delta(p, j, 1) for j in range(1, max_len + 1)}
    apply_cache = {}

    def applied(j, face):
        key = (j, face)
        if key not in apply_cache:
            apply_cache[key] = deltas[j].apply(face)
        return apply_cache[key]

    violations = []
    for f in p.all_faces():
        for m in range(1, max_len + 1):
            odd = set()
            for j in range(1, m + 1):
                i = m + 1 - j
                for outer in applied(j, f):
                    for slot in range(j):
                        for inner in applied(i, outer[slot]):
                            word = outer[:slot] + inner + outer[slot + 1:]
                            _toggle(odd, word)
            violations.extend((f, m, word) for word in sorted(odd))
    return violations


def compare_with_involution(p, max_len, t_window=(-4, 8)):
    """Run the coalgebra relations and the mod-2 involution residual through
    the same word length; both reports are returned for comparison."""
    return ainfty_check(p, max_len), involution_check(p, max_len, t_window, "f2")
