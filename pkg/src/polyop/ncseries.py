"""Truncated noncommutative power series with exact Laurent coefficients.

Series live in the free associative algebra on the faces of a polytope,
with coefficients that are Laurent polynomials in a central variable t,
truncated to a word-length bound N and a t-exponent window [lo, hi].
Coefficients are exact integers, optionally reduced mod 2.

An endomorphism is given by its images on the generators plus the sign it
gives to t; it extends multiplicatively.  Images must have no constant
term, so substitution never shortens words and every coefficient of a
composite at word length <= N is fully determined by the truncated data.
"""

from dataclasses import dataclass

from . import chains as _chains

__all__ = [
    "LaurentPoly", "NCSeries", "NCEndomorphism", "SignTwist",
    "hilbert_endomorphism", "identity_endomorphism", "twist_endomorphism",
    "substitute", "involution_check", "parse_twist", "dump_endomorphism",
]


class LaurentPoly:
    """Sparse Laurent polynomial in t, truncated to the window [lo, hi]."""

    __slots__ = ("coeffs", "lo", "hi", "mod2")

    def __init__(self, coeffs, lo, hi, mod2=False):
        self.lo = lo
        self.hi = hi
        self.mod2 = mod2
        clean = {}
        for k, c in coeffs.items():
            if lo <= k <= hi:
                if mod2:
                    c %= 2
                if c:
                    clean[k] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, lo, hi, mod2=False):
        return cls({}, lo, hi, mod2)

    @classmethod
    def monomial(cls, k, lo, hi, mod2=False, coeff=1):
        return cls({k: coeff}, lo, hi, mod2)

    @classmethod
    def one(cls, lo, hi, mod2=False):
        return cls({0: 1}, lo, hi, mod2)

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == {0: 1}

    def _like(self, coeffs):
        return LaurentPoly(coeffs, self.lo, self.hi, self.mod2)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return self._like(out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) - c
        return self._like(out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        self._check(other)
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                if self.lo <= k <= self.hi:
                    out[k] = out.get(k, 0) + c1 * c2
        return self._like(out)

    def scaled(self, n):
        return self._like({k: n * c for k, c in self.coeffs.items()})

    def twist_t(self):
        """Substitute t -> -t."""
        return self._like({k: (-c if k % 2 else c) for k, c in self.coeffs.items()})

    def restricted(self, lo, hi):
        return LaurentPoly(self.coeffs, lo, hi, self.mod2)

    def min_degree(self):
        return min(self.coeffs) if self.coeffs else None

    def _check(self, other):
        if (self.lo, self.hi, self.mod2) != (other.lo, other.hi, other.mod2):
            raise ValueError("LaurentPoly window/mode mismatch")

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly)
                and (self.lo, self.hi, self.mod2) == (other.lo, other.hi, other.mod2)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((tuple(sorted(self.coeffs.items())), self.lo, self.hi, self.mod2))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*t^{k}" for k, c in sorted(self.coeffs.items())]
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"LaurentPoly({self})"


def _word_sort_key(word):
    return (len(word), word)


class NCSeries:
    """Finite sum of words with LaurentPoly coefficients."""

    __slots__ = ("terms", "n_max", "lo", "hi", "mod2")

    def __init__(self, terms, n_max, lo, hi, mod2=False):
        self.n_max = n_max
        self.lo = lo
        self.hi = hi
        self.mod2 = mod2
        self.terms = {w: c for w, c in terms.items()
                      if len(w) <= n_max and not c.is_zero()}

    @classmethod
    def zero(cls, n_max, lo, hi, mod2=False):
        return cls({}, n_max, lo, hi, mod2)

    @classmethod
    def letter(cls, color, n_max, lo, hi, mod2=False, coeff=1, t_power=0):
        lp = LaurentPoly({t_power: coeff}, lo, hi, mod2)
        return cls({(color,): lp}, n_max, lo, hi, mod2)

    def params(self):
        return (self.n_max, self.lo, self.hi, self.mod2)

    def __add__(self, other):
        if self.params() != other.params():
            raise ValueError("series parameter mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return NCSeries(out, *self.params())

    def __sub__(self, other):
        if self.params() != other.params():
            raise ValueError("series parameter mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] - c if w in out else -c
        return NCSeries(out, *self.params())

    def __eq__(self, other):
        return (isinstance(other, NCSeries) and self.params() == other.params()
                and self.terms == other.terms)

    def __hash__(self):
        return hash((tuple(sorted(self.terms.items(), key=lambda t: _word_sort_key(t[0]))),
                     self.params()))

    def is_zero(self):
        return not self.terms

    def restricted(self, n_max, lo, hi):
        if n_max > self.n_max or lo < self.lo or hi > self.hi:
            raise ValueError("can only restrict, not extend, a truncated series")
        return NCSeries({w: c.restricted(lo, hi) for w, c in self.terms.items()},
                        n_max, lo, hi, self.mod2)

    def sorted_terms(self):
        """Terms in canonical order: word length, then labels, then t-degree
        inside each coefficient."""
        return sorted(self.terms.items(), key=lambda t: _word_sort_key(t[0]))

    def __repr__(self):
        inner = " + ".join(f"({c})*{','.join(w) or '1'}" for w, c in self.sorted_terms())
        return f"NCSeries[{inner or '0'}]"


@dataclass(frozen=True)
class SignTwist:
    """The endomorphism sending each color to +-color and t to +-t."""

    flip_colors: bool = False
    flip_t: bool = False


def parse_twist(name):
    try:
        return {"none": SignTwist(False, False), "t": SignTwist(False, True),
                "colors": SignTwist(True, False), "both": SignTwist(True, True)}[name]
    except KeyError:
        raise ValueError(f"unknown twist {name!r}; expected t|colors|both|none") from None


class NCEndomorphism:
    """Multiplicative endomorphism of the truncated free algebra.

    ``images[c]`` is the series the generator c maps to (no constant term);
    t maps to ``t_sign * t``.
    """

    __slots__ = ("images", "t_sign", "n_max", "lo", "hi", "mod2", "warnings")

    def __init__(self, images, t_sign, n_max, lo, hi, mod2=False, warnings=()):
        if t_sign not in (1, -1):
            raise ValueError("t_sign must be +1 or -1")
        self.images = dict(images)
        self.t_sign = 1 if (mod2 and t_sign == -1) else t_sign
        self.n_max = n_max
        self.lo = lo
        self.hi = hi
        self.mod2 = mod2
        self.warnings = tuple(warnings)
        for c, s in self.images.items():
            if s.params() != (n_max, lo, hi, mod2):
                raise ValueError(f"image of {c} has mismatched parameters")
            if () in s.terms:
                raise ValueError(f"image of {c} has a constant term")

    def colors(self):
        return sorted(self.images)

    def mode(self):
        return "f2" if self.mod2 else "int"

    def params(self):
        return (self.n_max, self.lo, self.hi, self.mod2)

    def __eq__(self, other):
        return (isinstance(other, NCEndomorphism)
                and self.params() == other.params()
                and self.t_sign == other.t_sign
                and self.images == other.images)

    def restricted(self, n_max, lo, hi):
        return NCEndomorphism(
            {c: s.restricted(n_max, lo, hi) for c, s in self.images.items()},
            self.t_sign, n_max, lo, hi, self.mod2, self.warnings)

    def linear_coefficient(self, source, target):
        """Coefficient of the one-letter word (source) in the image of target."""
        s = self.images[target]
        return s.terms.get((source,), LaurentPoly.zero(self.lo, self.hi, self.mod2))

    def __repr__(self):
        return (f"NCEndomorphism({len(self.images)} colors, t_sign={self.t_sign}, "
                f"N={self.n_max}, window=[{self.lo},{self.hi}], mode={self.mode()})")


def _mode_flag(mode):
    if mode not in ("f2", "int"):
        raise ValueError(f"unknown mode {mode!r}; expected f2 or int")
    return mode == "f2"


def identity_endomorphism(colors, n_max, t_window, mode="f2"):
    lo, hi = t_window
    mod2 = _mode_flag(mode)
    images = {c: NCSeries.letter(c, n_max, lo, hi, mod2) for c in colors}
    return NCEndomorphism(images, 1, n_max, lo, hi, mod2)


def twist_endomorphism(colors, twist, n_max, t_window, mode="f2"):
    lo, hi = t_window
    mod2 = _mode_flag(mode)
    coeff = -1 if (twist.flip_colors and not mod2) else 1
    images = {c: NCSeries.letter(c, n_max, lo, hi, mod2, coeff=coeff) for c in colors}
    t_sign = -1 if (twist.flip_t and not mod2) else 1
    return NCEndomorphism(images, t_sign, n_max, lo, hi, mod2)


def hilbert_endomorphism(p, n_max, t_window, mode="f2"):
    """Image of each face F = sum over chains u in F (length <= n_max) of
    t^excess(u) * u.  Chains whose excess falls outside the t-window are
    dropped with a warning recorded on the result."""
    lo, hi = t_window
    mod2 = _mode_flag(mode)
    images = {}
    warnings = set()
    for f in p.all_faces():
        terms = {}
        for chain in _chains.iter_chains_upto(p, f, n_max):
            if not lo <= chain.excess <= hi:
                warnings.add(f"color {f}: excess {chain.excess} outside window")
                continue
            w = chain.members
            if w in terms:
                terms[w] = terms[w] + LaurentPoly.monomial(chain.excess, lo, hi, mod2)
            else:
                terms[w] = LaurentPoly.monomial(chain.excess, lo, hi, mod2)
        images[f] = NCSeries(terms, n_max, lo, hi, mod2)
    return NCEndomorphism(images, 1, n_max, lo, hi, mod2, sorted(warnings))


def _product_over_word(images, word, budget, memo, lo, hi, mod2):
    """Product of the images of the letters of ``word``, keeping words of
    length <= budget.  Returns a raw dict word -> LaurentPoly."""
    if not word:
        return {(): LaurentPoly.one(lo, hi, mod2)}
    key = (word, budget)
    hit = memo.get(key)
    if hit is not None:
        return hit
    head = images[word[0]].terms
    if len(word) == 1:
        out = {w: c for w, c in head.items() if len(w) <= budget}
    else:
        rest = _product_over_word(images, word[1:], budget - 1, memo, lo, hi, mod2)
        out = {}
        for w1, c1 in head.items():
            room = budget - len(w1)
            if room < len(word) - 1:
                continue
            for w2, c2 in rest.items():
                if len(w2) > room:
                    continue
                w = w1 + w2
                prod = c1 * c2
                if prod.is_zero():
                    continue
                if w in out:
                    out[w] = out[w] + prod
                else:
                    out[w] = prod
        out = {w: c for w, c in out.items() if not c.is_zero()}
    memo[key] = out
    return out


def substitute(outer, inner):
    """Composite endomorphism: apply ``inner`` first, then ``outer``.

    ``result(c) = outer(inner(c))``; t_sign values multiply.
    """
    if outer.params() != inner.params():
        raise ValueError("endomorphism parameter mismatch")
    if set(outer.images) != set(inner.images):
        raise ValueError("endomorphism color-set mismatch")
    n_max, lo, hi, mod2 = outer.params()
    memo = {}
    images = {}
    for c, series in inner.images.items():
        acc = {}
        for word, coeff in series.terms.items():
            if outer.t_sign == -1:
                coeff = coeff.twist_t()
            prod = _product_over_word(outer.images, word, n_max, memo, lo, hi, mod2)
            for w, pc in prod.items():
                term = pc * coeff
                if term.is_zero():
                    continue
                if w in acc:
                    acc[w] = acc[w] + term
                else:
                    acc[w] = term
        images[c] = NCSeries(acc, n_max, lo, hi, mod2)
    return NCEndomorphism(images, outer.t_sign * inner.t_sign, n_max, lo, hi, mod2,
                          outer.warnings + inner.warnings)


def endomorphism_residual(e):
    """Nonzero terms of ``e - identity`` per color, in canonical order."""
    out = []
    for c in e.colors():
        series = e.images[c]
        ident = NCSeries.letter(c, e.n_max, e.lo, e.hi, e.mod2)
        diff = series - ident
        for w, coeff in diff.sorted_terms():
            out.append((c, w, coeff))
    out.sort(key=lambda t: (t[0], _word_sort_key(t[1])))
    return out


def involution_check(p, n_max, t_window, mode="f2", twist=SignTwist(False, True)):
    """Residual of (f_P o I)^2 - identity, truncated; empty report means the
    involution holds up to the stated truncation."""
    if isinstance(twist, str):
        twist = parse_twist(twist)
    f = hilbert_endomorphism(p, n_max, t_window, mode)
    tw = twist_endomorphism(f.colors(), twist, n_max, t_window, mode)
    h = substitute(f, tw)
    square = substitute(h, h)
    residual = endomorphism_residual(square)
    if square.t_sign != 1:
        residual.append(("<t>", ("t",), LaurentPoly.one(f.lo, f.hi, f.mod2)))
    return residual


def dump_endomorphism(e):
    """Canonical text dump: ``color <TAB> word <TAB> laurent`` lines."""
    lines = []
    for c in e.colors():
        for w, coeff in e.images[c].sorted_terms():
            lines.append(f"{c}\t{','.join(w)}\t{coeff}")
    return lines
