"""Directed polytopes as abstract face lattices with directed 1-skeletons.

A polytope is stored combinatorially: a set of vertex labels, a set of
directed edges, and a family of faces identified with their vertex sets
(containment of faces is containment of vertex sets).  Dimensions are never
trusted from input; they are recomputed as the rank in the containment
order.  An instance is immutable after construction and all operations on
it are pure reads.
"""

import json
from dataclasses import dataclass
from itertools import combinations


class PolytopeFormatError(ValueError):
    """Malformed input: unresolved ids, duplicate labels, empty polytope."""


class ParameterError(ValueError):
    """Invalid parameters passed to a builtin constructor."""


@dataclass(frozen=True)
class Violation:
    """One failed structural condition, attributed to a face."""

    face: str
    kind: str
    detail: str = ""

    def __str__(self):
        if self.detail:
            return f"face {self.face}: {self.kind} ({self.detail})"
        return f"face {self.face}: {self.kind}"


@dataclass(frozen=True)
class FaceEnds:
    """The unique source and sink of a face's directed 1-skeleton."""

    face: str
    min: str
    max: str


class DirectedPolytope:
    """Face lattice with a directed 1-skeleton.

    Faces are keyed by opaque string labels and identified with their
    vertex sets.  ``dim`` is the rank in the containment order.  Do not
    mutate instances; share freely across threads.
    """

    def __init__(self, name, vertices, edges, faces):
        """Build from resolved data.  Use :func:`make_polytope` or the
        builtins instead of calling this directly."""
        self.name = name
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self.faces = dict(faces)  # label -> frozenset of vertex labels
        self._vertex_set = frozenset(self.vertices)
        if not self.vertices:
            raise PolytopeFormatError("empty polytope")
        self._check_resolved()
        self.top = self._find_top()
        self.dims = self._compute_ranks()
        self._succ = {v: set() for v in self.vertices}
        for u, v in self.edges:
            self._succ[u].add(v)
        self._reach = self._transitive_closure()
        self._edge_face = {}
        for label, vs in self.faces.items():
            if len(vs) == 2 and self._is_edge_set(vs):
                self._edge_face[vs] = label
        self._ends_cache = {}

    # -- construction helpers -------------------------------------------

    def _check_resolved(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise PolytopeFormatError("duplicate vertex labels")
        for u, v in self.edges:
            if u not in self._vertex_set or v not in self._vertex_set:
                raise PolytopeFormatError(f"edge ({u},{v}) references unknown vertex")
            if u == v:
                raise PolytopeFormatError(f"loop edge at {u}")
        if len(set(self.edges)) != len(self.edges):
            raise PolytopeFormatError("duplicate edges")
        for label, vs in self.faces.items():
            if not vs:
                raise PolytopeFormatError(f"face {label} has empty vertex set")
            for v in vs:
                if v not in self._vertex_set:
                    raise PolytopeFormatError(f"face {label} references unknown vertex {v}")

    def _find_top(self):
        for label, vs in self.faces.items():
            if vs == self._vertex_set:
                return label
        raise PolytopeFormatError("no top face (face whose vertex set is all vertices)")

    def _compute_ranks(self):
        """Rank of each face in the containment order (longest proper chain below)."""
        order = sorted(self.faces, key=lambda f: (len(self.faces[f]), f))
        ranks = {}
        for f in order:
            vs = self.faces[f]
            below = [ranks[g] for g in order if self.faces[g] < vs and g in ranks]
            ranks[f] = max(below) + 1 if below else 0
        return ranks

    def _transitive_closure(self):
        reach = {}
        for v in sorted(self.vertices):
            seen = {v}
            stack = [v]
            while stack:
                for w in self._succ[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            reach[v] = frozenset(seen)
        return reach

    def _is_edge_set(self, vs):
        a, b = sorted(vs)
        return (a, b) in set(self.edges) or (b, a) in set(self.edges)

    # -- basic queries ----------------------------------------------------

    def all_faces(self):
        """Face labels in deterministic order (by dimension, then label)."""
        return sorted(self.faces, key=lambda f: (self.dims[f], f))

    def dim(self, face):
        return self.dims[face]

    def face_vertices(self, face):
        return self.faces[face]

    def contains(self, inner, outer):
        """True iff face ``inner`` is contained in face ``outer``."""
        return self.faces[inner] <= self.faces[outer]

    def faces_in(self, face):
        """All faces contained in ``face``, sorted by (dim, label)."""
        vs = self.faces[face]
        return sorted((g for g in self.faces if self.faces[g] <= vs),
                      key=lambda f: (self.dims[f], f))

    def edges_in(self, face):
        vs = self.faces[face]
        return [(u, v) for (u, v) in self.edges if u in vs and v in vs]

    def face_ends(self, face):
        """Unique source and sink of the face's directed 1-skeleton."""
        if face in self._ends_cache:
            return self._ends_cache[face]
        sources, sinks = self._sources_sinks(face)
        if len(sources) != 1 or len(sinks) != 1:
            raise ValueError(f"face {face} does not have a unique source and sink")
        ends = FaceEnds(face, sources[0], sinks[0])
        self._ends_cache[face] = ends
        return ends

    def _sources_sinks(self, face):
        vs = self.faces[face]
        arcs = self.edges_in(face)
        has_in = {v for _, v in arcs}
        has_out = {u for u, _ in arcs}
        sources = sorted(v for v in vs if v not in has_in)
        sinks = sorted(v for v in vs if v not in has_out)
        return sources, sinks

    def reaches(self, u, v):
        """True iff there is a directed edge-path (possibly empty) from u to v."""
        return v in self._reach[u]

    def face_leq(self, f1, f2):
        """Face order: the sink of ``f1`` reaches the source of ``f2``."""
        return self.reaches(self.face_ends(f1).max, self.face_ends(f2).min)

    # -- validation -------------------------------------------------------

    def validate(self):
        """Return the list of structural violations (empty iff valid)."""
        report = []
        by_vs = {}
        for label, vs in self.faces.items():
            if vs in by_vs:
                report.append(Violation(label, "duplicate vertex set",
                                        f"same vertices as face {by_vs[vs]}"))
            else:
                by_vs[vs] = label
        for v in self.vertices:
            if frozenset({v}) not in by_vs:
                report.append(Violation(self.top, "missing sub-face", f"vertex {v}"))
        for u, v in self.edges:
            if frozenset({u, v}) not in by_vs:
                report.append(Violation(self.top, "missing sub-face", f"edge {u}->{v}"))
        for label in self.all_faces():
            vs = self.faces[label]
            if self.dims[label] == 0 and len(vs) != 1:
                report.append(Violation(label, "non-graded dim", "dim-0 face not a vertex"))
            if self.dims[label] == 1 and not self._is_edge_set(vs):
                report.append(Violation(label, "non-graded dim", "dim-1 face is not an edge"))
            report.extend(self._check_face_graph(label))
        return report

    def _check_face_graph(self, face):
        out = []
        vs = self.faces[face]
        arcs = self.edges_in(face)
        succ = {v: [] for v in vs}
        for u, v in arcs:
            succ[u].append(v)
        # cycle detection by iterative DFS coloring
        color = {v: 0 for v in vs}
        for start in sorted(vs):
            if color[start]:
                continue
            stack = [(start, iter(sorted(succ[start])))]
            color[start] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for w in it:
                    if color[w] == 1:
                        out.append(Violation(face, "cycle", f"through {w}"))
                        color[w] = 2
                    elif color[w] == 0:
                        color[w] = 1
                        stack.append((w, iter(sorted(succ[w]))))
                        advanced = True
                        break
                if not advanced:
                    color[node] = 2
                    stack.pop()
        sources, sinks = self._sources_sinks(face)
        if len(sources) == 0:
            out.append(Violation(face, "no source"))
        elif len(sources) > 1:
            out.append(Violation(face, "two sources" if len(sources) == 2 else "multiple sources",
                                 ",".join(sources)))
        if len(sinks) == 0:
            out.append(Violation(face, "no sink"))
        elif len(sinks) > 1:
            out.append(Violation(face, "two sinks" if len(sinks) == 2 else "multiple sinks",
                                 ",".join(sinks)))
        return out

    def require_valid(self):
        report = self.validate()
        if report:
            raise ValueError("invalid polytope: " + "; ".join(str(v) for v in report))
        return self

    # -- serialization ----------------------------------------------------

    def to_json_dict(self):
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "edges": [{"from": u, "to": v} for u, v in self.edges],
            "faces": [{"id": f, "vertices": sorted(self.faces[f])}
                      for f in self.all_faces()],
        }

    def __repr__(self):
        return (f"DirectedPolytope({self.name!r}, {len(self.vertices)} vertices, "
                f"{len(self.edges)} edges, {len(self.faces)} faces)")


def make_polytope(name, vertices, edges, faces):
    """Assemble a polytope, synthesizing missing vertex and edge faces.

    ``faces`` maps labels to vertex iterables.  A dim-0 face is synthesized
    for every vertex (label = the vertex label) and a dim-1 face for every
    edge (label ``u->v``) unless a face with the same vertex set is already
    present.
    """
    faces = {label: frozenset(vs) for label, vs in faces.items()}
    present = set(faces.values())
    for v in vertices:
        s = frozenset({v})
        if s not in present:
            if v in faces:
                raise PolytopeFormatError(f"label {v} already used by a non-vertex face")
            faces[v] = s
            present.add(s)
    for u, v in edges:
        s = frozenset({u, v})
        if s not in present:
            label = f"{u}->{v}"
            if label in faces:
                raise PolytopeFormatError(f"label {label} already in use")
            faces[label] = s
            present.add(s)
    return DirectedPolytope(name, vertices, edges, faces)


# -- builtins --------------------------------------------------------------


def point():
    """A single vertex, labelled x."""
    return make_polytope("point", ["x"], [], {})


def interval():
    """The directed interval s with endpoints x -> y."""
    return make_polytope("interval", ["x", "y"], [("x", "y")], {"s": {"x", "y"}})


def _simplex_label(subset, n):
    sep = "" if n <= 9 else ","
    return sep.join(str(i) for i in sorted(subset))


def simplex(n):
    """The standard simplex on vertices 0..n; edge i -> j iff i < j."""
    if n < 0:
        raise ParameterError("simplex: n must be >= 0")
    verts = [str(i) for i in range(n + 1)]
    edges = [(str(i), str(j)) for i in range(n + 1) for j in range(i + 1, n + 1)]
    faces = {}
    for k in range(1, n + 2):
        for sub in combinations(range(n + 1), k):
            faces[_simplex_label(sub, n)] = {str(i) for i in sub}
    return make_polytope(f"simplex({n})", verts, edges, faces)


def cube(n):
    """The n-cube; faces are words over {0,1,*}, coordinates directed 0 -> 1."""
    if n < 0:
        raise ParameterError("cube: n must be >= 0")
    if n == 0:
        return point()
    verts = []
    for k in range(2 ** n):
        verts.append(format(k, f"0{n}b"))
    edges = []
    for w in verts:
        for i in range(n):
            if w[i] == "0":
                edges.append((w, w[:i] + "1" + w[i + 1:]))
    faces = {}

    def expand(word):
        outs = [""]
        for ch in word:
            if ch == "*":
                outs = [o + b for o in outs for b in "01"]
            else:
                outs = [o + ch for o in outs]
        return outs

    for k in range(3 ** n):
        word = ""
        kk = k
        for _ in range(n):
            word = "01*"[kk % 3] + word
            kk //= 3
        faces[word] = set(expand(word))
    return make_polytope(f"cube({n})", verts, edges, faces)


def polygon(n, m):
    """Polygon with upper path 0 -> x(1) -> .. -> x(n) -> 1 (edges e(0..n))
    and lower path 0 -> y(1) -> .. -> y(m) -> 1 (edges f(0..m))."""
    if n < 0 or m < 0 or n + m < 1:
        raise ParameterError("polygon: need n, m >= 0 with n + m + 2 >= 3 vertices")
    xs = [f"x({i})" for i in range(1, n + 1)]
    ys = [f"y({i})" for i in range(1, m + 1)]
    verts = ["0"] + xs + ys + ["1"]
    upper = ["0"] + xs + ["1"]
    lower = ["0"] + ys + ["1"]
    edges = []
    faces = {"P": set(verts)}
    for i in range(n + 1):
        edges.append((upper[i], upper[i + 1]))
        faces[f"e({i})"] = {upper[i], upper[i + 1]}
    for i in range(m + 1):
        edges.append((lower[i], lower[i + 1]))
        faces[f"f({i})"] = {lower[i], lower[i + 1]}
    return make_polytope(f"polygon({n},{m})", verts, edges, faces)


def product(p, q):
    """Product polytope: faces are pairs of faces, labels ``A|B``."""
    verts = [f"{u}|{v}" for u in p.vertices for v in q.vertices]
    edges = []
    for (u1, u2) in p.edges:
        for v in q.vertices:
            edges.append((f"{u1}|{v}", f"{u2}|{v}"))
    for u in p.vertices:
        for (v1, v2) in q.edges:
            edges.append((f"{u}|{v1}", f"{u}|{v2}"))
    faces = {}
    for a, avs in p.faces.items():
        for b, bvs in q.faces.items():
            faces[f"{a}|{b}"] = {f"{u}|{v}" for u in avs for v in bvs}
    return make_polytope(f"{p.name}x{q.name}", verts, edges, faces)


BUILTIN_KINDS = ("point", "interval", "simplex", "cube", "polygon", "product")


def builtin(spec):
    """Construct a builtin from an inline spec string.

    Accepted forms: ``point``, ``interval``, ``simplex:N``, ``cube:N``,
    ``polygon:N,M``, ``product:SPEC,SPEC[,SPEC...]``.
    """
    if spec == "point":
        return point()
    if spec == "interval":
        return interval()
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise ParameterError(f"unknown builtin {spec!r}")
    if kind == "simplex":
        return simplex(_int_arg(rest, spec))
    if kind == "cube":
        return cube(_int_arg(rest, spec))
    if kind == "polygon":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ParameterError(f"polygon spec needs two parameters: {spec!r}")
        return polygon(_int_arg(parts[0], spec), _int_arg(parts[1], spec))
    if kind == "product":
        factor_specs = _split_product_args(rest)
        if len(factor_specs) < 2:
            raise ParameterError(f"product spec needs at least two factors: {spec!r}")
        result = builtin(factor_specs[0])
        for fs in factor_specs[1:]:
            result = product(result, builtin(fs))
        return result
    raise ParameterError(f"unknown builtin kind {kind!r}")


def _int_arg(text, spec):
    try:
        return int(text)
    except ValueError:
        raise ParameterError(f"bad integer in builtin spec {spec!r}") from None


def _split_product_args(rest):
    """Split ``simplex:1,simplex:2`` into factor specs on kind boundaries."""
    parts = rest.split(",")
    out = []
    for part in parts:
        if out and part.isdigit() and out[-1].startswith("polygon:") and "," not in out[-1][8:]:
            out[-1] += "," + part  # reattach polygon's second parameter
        else:
            out.append(part)
    return out


# -- JSON file format -------------------------------------------------------


def loads(text):
    """Load a polytope from its canonical JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise PolytopeFormatError("top-level JSON value must be an object")
    for key in ("name", "vertices", "edges", "faces"):
        if key not in data:
            raise PolytopeFormatError(f"missing key {key!r}")
    try:
        name = data["name"]
        vertices = [str(v) for v in data["vertices"]]
        edges = [(str(e["from"]), str(e["to"])) for e in data["edges"]]
        faces = {str(f["id"]): {str(v) for v in f["vertices"]} for f in data["faces"]}
    except (TypeError, KeyError) as exc:
        raise PolytopeFormatError(f"malformed field: {exc}") from None
    return make_polytope(name, vertices, edges, faces)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(p):
    """Canonical JSON text: keys sorted, arrays in deterministic order."""
    return json.dumps(p.to_json_dict(), sort_keys=True, separators=(",", ":"))


def save(p, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(p) + "\n")
