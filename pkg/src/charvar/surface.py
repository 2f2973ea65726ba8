"""Combinatorial model of the balanced triangulation of the thrice-punctured
projective plane N_{1,3}, the tree of balanced triangulations, and curves in
standard position.

The model is the antipodal quotient of the octahedron.  Puncture ``v{i+1}`` is
the image of the pair of octahedron vertices ``+e_i`` and ``-e_i``; a face with
vertex signs ``(s0, s1, s2)`` and its antipode give one triangle.  All tables
below were read off that cover once and frozen; the test-suite re-derives them.
"""
from dataclasses import dataclass, field
from typing import NamedTuple

VERTICES = ("v1", "v2", "v3")
EDGES = ("a", "b", "c", "d", "e", "f")
TRIANGLES = ("t1", "t2", "t3", "t4")
SWITCHES = (1, 2, 3, 4)

EDGE_ENDPOINTS = {
    "a": ("v1", "v2"), "d": ("v1", "v2"),
    "b": ("v2", "v3"), "e": ("v2", "v3"),
    "c": ("v3", "v1"), "f": ("v3", "v1"),
}

TRIANGLE_EDGES = {
    "t1": ("b", "d", "f"),
    "t2": ("c", "d", "e"),
    "t3": ("a", "e", "f"),
    "t4": ("a", "b", "c"),
}

# corner cycle of each puncture: (triangle, edge in, edge out)
VERTEX_LINKS = {
    "v1": (("t4", "a", "c"), ("t2", "c", "d"), ("t1", "d", "f"), ("t3", "f", "a")),
    "v2": (("t3", "a", "e"), ("t2", "e", "d"), ("t1", "d", "b"), ("t4", "b", "a")),
    "v3": (("t4", "c", "b"), ("t1", "b", "f"), ("t3", "f", "e"), ("t2", "e", "c")),
}

# Oriented (counter-clockwise) faces of the octahedral double cover.  An edge
# lift is (label, 0 or 1); antipodal faces carry opposite orientations.
COVER_FACES = (
    (("a", 0), ("b", 0), ("c", 0)),
    (("f", 1), ("e", 0), ("a", 0)),
    (("c", 0), ("e", 1), ("d", 0)),
    (("d", 0), ("b", 1), ("f", 1)),
    (("f", 0), ("b", 0), ("d", 1)),
    (("d", 1), ("e", 0), ("c", 1)),
    (("a", 1), ("e", 1), ("f", 0)),
    (("c", 1), ("b", 1), ("a", 1)),
)


def triangle_index(t):
    return TRIANGLES.index(t) + 1


def dual_pair(edge):
    """The two triangle indices (i < j) adjacent to ``edge``."""
    return tuple(i + 1 for i, t in enumerate(TRIANGLES) if edge in TRIANGLE_EDGES[t])


def edge_of_pair(i, j):
    """Inverse of ``dual_pair``: the edge shared by t_i and t_j."""
    (e,) = set(TRIANGLE_EDGES[f"t{i}"]) & set(TRIANGLE_EDGES[f"t{j}"])
    return e


def third_edge(t, e1, e2):
    rest = [e for e in TRIANGLE_EDGES[t] if e not in (e1, e2)]
    if len(rest) != 1 or e1 == e2:
        return None
    return rest[0]


@dataclass(frozen=True)
class TriangulationModel:
    vertices: tuple
    edges: dict
    triangles: dict
    links: dict

    def euler_characteristic(self):
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "edges": {e: {"endpoints": list(ep), "triangles": [f"t{i}" for i in tp]}
                      for e, (ep, tp) in self.edges.items()},
            "triangles": {t: list(es) for t, es in self.triangles.items()},
            "links": {v: [list(c) for c in cyc] for v, cyc in self.links.items()},
        }


_MODEL = TriangulationModel(
    vertices=VERTICES,
    edges={e: (EDGE_ENDPOINTS[e], dual_pair(e)) for e in EDGES},
    triangles=dict(TRIANGLE_EDGES),
    links=dict(VERTEX_LINKS),
)


def canonical_model():
    return _MODEL


# ---------------------------------------------------------------- tree

def reduce_word(word):
    """Cancel adjacent repeated switches (each switch is an involution)."""
    out = []
    for s in word:
        s = int(s)
        if s not in SWITCHES:
            raise ValueError(f"bad switch index {s}")
        if out and out[-1] == s:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


def neighbors(addr):
    addr = reduce_word(addr)
    return [reduce_word(addr + (s,)) for s in SWITCHES]


def tree_distance(u, w):
    u, w = reduce_word(u), reduce_word(w)
    p = 0
    while p < min(len(u), len(w)) and u[p] == w[p]:
        p += 1
    return len(u) + len(w) - 2 * p


def words(depth):
    """All reduced words of length <= depth, in breadth-first order."""
    level = [()]
    for _ in range(depth + 1):
        yield from level
        level = [w + (s,) for w in level for s in SWITCHES if not w or w[-1] != s]


def format_address(addr):
    return "[" + ",".join(f"S{s}" for s in addr) + "]"


# ---------------------------------------------------------------- curves

class Step(NamedTuple):
    triangle: str
    enter: str
    exit: str
    turn: str  # "L" or "R"


@dataclass(frozen=True)
class CurveDescriptor:
    steps: tuple
    two_sided: bool = True
    name: str = field(default="", compare=False)

    def __post_init__(self):
        steps = tuple(Step(*s) for s in self.steps)
        object.__setattr__(self, "steps", steps)
        if not steps:
            raise ValueError("empty curve")
        for k, st in enumerate(steps):
            if st.turn not in ("L", "R"):
                raise ValueError(f"bad turn {st.turn!r}")
            if third_edge(st.triangle, st.enter, st.exit) is None:
                raise ValueError(f"step {k}: edges {st.enter},{st.exit} not distinct edges of {st.triangle}")
            nxt = steps[(k + 1) % len(steps)]
            if st.exit != nxt.enter:
                raise ValueError(f"step {k}: exit {st.exit} does not match next entry {nxt.enter}")

    def __len__(self):
        return len(self.steps)

    def triangles_visited(self):
        return [s.triangle for s in self.steps]

    def mirror(self):
        """Same curve read in the mirrored model: every turn swapped."""
        flip = {"L": "R", "R": "L"}
        return CurveDescriptor(tuple(s._replace(turn=flip[s.turn]) for s in self.steps),
                               self.two_sided, self.name)

    def to_json(self):
        return {"name": self.name, "two_sided": self.two_sided,
                "steps": [list(s) for s in self.steps]}


def _desc(name, rows, two_sided=True):
    return CurveDescriptor(tuple(Step(*r) for r in rows), two_sided, name)


# Link of the lift pair of each edge in the cover.  Each curve passes once
# through each of the two triangles along the edge and twice through each of
# the two others.
EDGE_CURVES = {
    "a": _desc("gamma_a", [("t4", "c", "b", "L"), ("t1", "b", "d", "R"), ("t2", "d", "e", "R"),
                           ("t3", "e", "f", "L"), ("t1", "f", "d", "R"), ("t2", "d", "c", "R")]),
    "b": _desc("gamma_b", [("t4", "a", "c", "L"), ("t2", "c", "e", "R"), ("t3", "e", "f", "R"),
                           ("t1", "f", "d", "L"), ("t2", "d", "e", "R"), ("t3", "e", "a", "R")]),
    "c": _desc("gamma_c", [("t4", "a", "b", "R"), ("t1", "b", "f", "L"), ("t3", "f", "e", "L"),
                           ("t2", "e", "d", "R"), ("t1", "d", "f", "L"), ("t3", "f", "a", "L")]),
    "d": _desc("gamma_d", [("t4", "a", "c", "L"), ("t2", "c", "e", "R"), ("t3", "e", "a", "L"),
                           ("t4", "a", "b", "L"), ("t1", "b", "f", "R"), ("t3", "f", "a", "L")]),
    "e": _desc("gamma_e", [("t4", "a", "b", "R"), ("t1", "b", "d", "R"), ("t2", "d", "c", "L"),
                           ("t4", "c", "b", "R"), ("t1", "b", "f", "R"), ("t3", "f", "a", "L")]),
    "f": _desc("gamma_f", [("t4", "c", "b", "L"), ("t1", "b", "d", "R"), ("t2", "d", "c", "L"),
                           ("t4", "c", "a", "L"), ("t3", "a", "e", "R"), ("t2", "e", "c", "L")]),
}

PERIPHERAL_CURVES = {
    v: _desc(f"peripheral_{v}", [c + ("L",) for c in VERTEX_LINKS[v]]) for v in VERTICES
}

# Squares of the 1-sided curves; the curve keyed by t_i crosses exactly the
# three edges not in t_i.
ONE_SIDED_SQUARES = {
    "t1": _desc("gamma_t1^2", [("t3", "a", "e", "L"), ("t2", "e", "c", "R"), ("t4", "c", "a", "L"),
                               ("t3", "a", "e", "R"), ("t2", "e", "c", "L"), ("t4", "c", "a", "R")]),
    "t2": _desc("gamma_t2^2", [("t4", "a", "b", "R"), ("t1", "b", "f", "L"), ("t3", "f", "a", "R"),
                               ("t4", "a", "b", "L"), ("t1", "b", "f", "R"), ("t3", "f", "a", "L")]),
    "t3": _desc("gamma_t3^2", [("t1", "d", "b", "R"), ("t4", "b", "c", "L"), ("t2", "c", "d", "R"),
                               ("t1", "d", "b", "L"), ("t4", "b", "c", "R"), ("t2", "c", "d", "L")]),
    "t4": _desc("gamma_t4^2", [("t2", "d", "e", "L"), ("t3", "e", "f", "R"), ("t1", "f", "d", "L"),
                               ("t2", "d", "e", "R"), ("t3", "e", "f", "L"), ("t1", "f", "d", "R")]),
}


def edge_curve(model, edge):
    if edge not in model.edges:
        raise KeyError(edge)
    return EDGE_CURVES[edge]


def peripheral_curve(model, vertex):
    if vertex not in model.vertices:
        raise KeyError(vertex)
    return PERIPHERAL_CURVES[vertex]


def one_sided_square(model, triangle):
    if triangle not in model.triangles:
        raise KeyError(triangle)
    return ONE_SIDED_SQUARES[triangle]
