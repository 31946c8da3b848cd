"""Face chains of a directed polytope and the dimensions they encode.

A face chain in an ambient face F is a sequence of faces of F that is
weakly increasing in the face order (only vertices may repeat).  Each chain
carries its excess, the total grading of the corresponding operation; a
colored-arity operation space is 1-dimensional exactly when the input list
is a chain in the output face.
"""

from dataclasses import dataclass

__all__ = [
    "FaceChain", "OpSpaceDim", "excess_of", "enumerate_chains",
    "iter_chains_upto", "op_dim", "composition_closure_check", "is_short",
]


@dataclass(frozen=True)
class FaceChain:
    ambient: str
    members: tuple
    excess: int

    def __str__(self):
        return f"{self.ambient}\t{','.join(self.members)}\t{self.excess}"


@dataclass(frozen=True)
class OpSpaceDim:
    inputs: tuple
    output: str
    present: bool
    excess: int | None
    inner_degree: int | None


def excess_of(p, ambient, members):
    """(dim F - 1) - sum over members of (dim m - 1)."""
    return (p.dim(ambient) - 1) - sum(p.dim(m) - 1 for m in members)


def _is_chain(p, ambient, members):
    vs = p.faces[ambient]
    for m in members:
        if m not in p.faces or not (p.faces[m] <= vs):
            return False
    return all(p.face_leq(a, b) for a, b in zip(members, members[1:]))


def enumerate_chains(p, face, n):
    """All chains of exactly length n in ``face``, in lexicographic order
    of their member labels."""
    if n < 1:
        raise ValueError("chain length must be >= 1")
    members_pool = sorted(p.faces_in(face))
    out = []

    def extend(prefix):
        if len(prefix) == n:
            out.append(FaceChain(face, prefix, excess_of(p, face, prefix)))
            return
        for m in members_pool:
            if not prefix or p.face_leq(prefix[-1], m):
                extend(prefix + (m,))

    extend(())
    return out


def iter_chains_upto(p, face, n_max):
    """All chains in ``face`` of length 1..n_max (lexicographic within each
    length, by increasing length)."""
    members_pool = sorted(p.faces_in(face))
    frontier = [(m,) for m in members_pool]
    for _ in range(n_max):
        nxt = []
        for prefix in frontier:
            yield FaceChain(face, prefix, excess_of(p, face, prefix))
            for m in members_pool:
                if p.face_leq(prefix[-1], m):
                    nxt.append(prefix + (m,))
        frontier = nxt


def op_dim(p, inputs, output):
    """Dimension data of the operation space with the given colored arity."""
    inputs = tuple(inputs)
    if output not in p.faces:
        raise KeyError(f"unknown face {output}")
    for m in inputs:
        if m not in p.faces:
            raise KeyError(f"unknown face {m}")
    if inputs and _is_chain(p, output, inputs):
        exc = excess_of(p, output, inputs)
        return OpSpaceDim(inputs, output, True, exc, exc - len(inputs) + 1)
    return OpSpaceDim(inputs, output, False, None, None)


def composition_closure_check(p, bound_n, bound_m):
    """Exercise all elementary compositions among chains up to the given
    lengths; report any composite that fails to be a chain or whose excess
    is not the sum of the factors' excesses.  Expected empty."""
    problems = []
    cases = 0
    for g in p.all_faces():
        for outer in iter_chains_upto(p, g, bound_m):
            for i, gi in enumerate(outer.members):
                for inner in iter_chains_upto(p, gi, bound_n):
                    cases += 1
                    spliced = (outer.members[:i] + inner.members
                               + outer.members[i + 1:])
                    if not _is_chain(p, g, spliced):
                        problems.append((outer, i, inner, "composite not a chain"))
                        continue
                    if excess_of(p, g, spliced) != outer.excess + inner.excess:
                        problems.append((outer, i, inner, "excess not additive"))
    return problems, cases


def is_short(p, max_len=None):
    """Decide shortness: every chain other than the identity chain (F) in F
    has excess >= 1.

    Returns ``(short, witness)`` where the witness is a minimal-excess
    nontrivial chain when not short (ties broken lexicographically).

    With ``max_len`` set, decides by brute force over all chains up to that
    length instead of the structural argument; useful as a cross-check.
    """
    if max_len is not None:
        return _is_short_bounded(p, max_len)
    best = None
    # Single proper chains have excess = codim >= 1 and chains containing
    # vertices exceed their vertex-free subchain by one per vertex, so the
    # minimum over nontrivial chains is attained on a strictly increasing
    # chain of faces of dim >= 1 (length >= 2), or is >= 1.
    for f in p.all_faces():
        pool = [g for g in p.faces_in(f) if p.dim(g) >= 1]

        def extend(prefix, f=f, pool=pool):
            nonlocal best
            if len(prefix) >= 2:
                exc = excess_of(p, f, prefix)
                cand = FaceChain(f, prefix, exc)
                if exc <= 0 and (best is None or (exc, f, prefix)
                                 < (best.excess, best.ambient, best.members)):
                    best = cand
            for g in pool:
                if not prefix or (p.face_leq(prefix[-1], g) and prefix[-1] != g):
                    extend(prefix + (g,))

        extend(())
    if best is None:
        return True, None
    return False, best


def _is_short_bounded(p, max_len):
    best = None
    for f in p.all_faces():
        for ch in iter_chains_upto(p, f, max_len):
            if ch.members == (f,):
                continue
            if ch.excess <= 0 and (best is None or (ch.excess, ch.ambient, ch.members)
                                   < (best.excess, best.ambient, best.members)):
                best = ch
    if best is None:
        return True, None
    return False, best
