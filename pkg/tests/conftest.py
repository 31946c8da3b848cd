import random

from polyop.ncseries import LaurentPoly, NCSeries, NCEndomorphism


def make_random_endomorphism(seed, colors=("a", "b", "c"), n_max=4,
                             t_window=(0, 6), mode="int"):
    """Random sparse endomorphism with a valid E + F-tilde split: diagonal
    linear coefficients 1 (+ higher t terms), off-diagonal linear
    coefficients in strictly positive t powers."""
    rng = random.Random(seed)
    lo, hi = t_window
    mod2 = mode == "f2"
    images = {}
    for c in colors:
        terms = {}
        diag = {0: 1}
        if rng.random() < 0.5:
            diag[rng.randint(1, 2)] = rng.choice([-2, -1, 1, 2])
        terms[(c,)] = LaurentPoly(diag, lo, hi, mod2)
        for d in colors:
            if d != c and rng.random() < 0.5:
                terms[(d,)] = LaurentPoly(
                    {rng.randint(1, 2): rng.choice([-2, -1, 1, 2])}, lo, hi, mod2)
        n_higher = rng.randint(1, 4)
        for _ in range(n_higher):
            length = rng.randint(2, min(3, n_max))
            word = tuple(rng.choice(colors) for _ in range(length))
            coeff = LaurentPoly({rng.randint(0, 2): rng.choice([-2, -1, 1, 2])},
                                lo, hi, mod2)
            terms[word] = terms[word] + coeff if word in terms else coeff
        images[c] = NCSeries(terms, n_max, lo, hi, mod2)
    return NCEndomorphism(images, 1, n_max, lo, hi, mod2)
