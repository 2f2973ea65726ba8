"""Diagonal flips and triangle switches.

A triangle switch along t_l flips the three edges of t_l and one auxiliary
edge (four flips in the hexagon around t_l).  The closed formulas act on
triangle coordinates directly; ``switch_via_flips`` performs the four flips on
the octahedral double cover and is used as an independent oracle.
"""
from dataclasses import dataclass

from .coords import check_signs, complement, dominant_index, euler_class, triangle_coords
from .errors import Inadmissible, Unsupported
from .scalars import DEFAULT_TOL, lift, lift_all, sign
from .surface import COVER_FACES, TRIANGLE_EDGES, TRIANGLES, edge_of_pair


# ---------------------------------------------------------------- flips

@dataclass(frozen=True)
class FlipConfig:
    """Quadrilateral t1 = (e, e1, e2), t2 = (e, e3, e4), both counter-clockwise.

    ``edges`` = (e1, e2, e3, e4); ``lam`` holds the five lambda lengths;
    ``signs`` = (eps(t1), eps(t2)).
    """
    diagonal: str
    edges: tuple
    lam: dict
    signs: tuple

    def __post_init__(self):
        labels = (self.diagonal,) + tuple(self.edges)
        if len(set(labels)) != 5:
            raise ValueError("flip labels must be distinct")
        if any(not self.lam[x] > 0 for x in labels):
            raise ValueError("lambda lengths must be positive")


def flip_values(lam_e, l1, l2, l3, l4, s1, s2, tol=DEFAULT_TOL):
    """New diagonal length and signs of (e', e4, e1), (e', e2, e3)."""
    P, Q = l1 * l3, l2 * l4
    if s1 == s2:
        return (P + Q) / lam_e, s1, s2
    d = sign(P - Q, tol)
    if d == 0:
        raise Inadmissible("opposite signs and lam1*lam3 == lam2*lam4")
    new = abs(P - Q) / lam_e
    return (new, s1, s2) if d < 0 else (new, s2, s1)


def diagonal_flip(cfg, new_label=None, tol=DEFAULT_TOL):
    """Replace the diagonal e by e'.  The result is again a FlipConfig with
    t1' = (e', e4, e1) and t2' = (e', e2, e3), so flipping twice returns the
    starting quadrilateral."""
    e1, e2, e3, e4 = cfg.edges
    L = {z: lift(v) for z, v in cfg.lam.items()}
    new_label = new_label or cfg.diagonal + "'"
    val, s1, s2 = flip_values(L[cfg.diagonal], L[e1], L[e2], L[e3], L[e4], *cfg.signs, tol=tol)
    lam = {k: v for k, v in L.items() if k != cfg.diagonal}
    lam[new_label] = val
    return FlipConfig(new_label, (e4, e1, e2, e3), lam, (s1, s2))


# ---------------------------------------------------------------- closed-form switches

@dataclass(frozen=True)
class SwitchResult:
    X: tuple
    eps: tuple
    admissible: bool = True

    def to_json(self):
        from .scalars import to_json
        return {"X": [to_json(x) for x in self.X], "signs": list(self.eps),
                "admissible": self.admissible}


def _e0_roles(eps, l):
    """k: the other triangle with the sign of t_l; (i, j): the remaining pair."""
    (k,) = [m for m in complement(l) if eps[m - 1] == eps[l - 1]]
    i, j = complement(k, l)
    return i, j, k


def admissibility_quantities(X, eps, l):
    """Values whose vanishing makes the switch along t_l non-admissible.

    Returns a list of (edge label, value).  The edge is the one of t_l whose
    replacement degenerates.
    """
    eps = check_signs(eps)
    e = euler_class(eps)
    if e == 0:
        i, j, k = _e0_roles(eps, l)
        return [(edge_of_pair(k, l), X[i - 1] + X[j - 1] - X[k - 1])]
    if abs(e) == 1:
        out = []
        for i in complement(l):
            j, k = complement(i, l)
            f = -eps[i - 1] * X[i - 1] + eps[j - 1] * X[j - 1] + eps[k - 1] * X[k - 1]
            out.append((edge_of_pair(i, l), f))
        return out
    raise Unsupported("closed-form switches exist for Euler class 0 and +-1")


def triangle_switch_e0(X, eps, l, tol=DEFAULT_TOL):
    eps = check_signs(eps)
    if euler_class(eps) != 0:
        raise ValueError("Euler class must be 0")
    X = lift_all(X)
    i, j, k = _e0_roles(eps, l)
    q = X[i - 1] + X[j - 1] - X[k - 1]
    if sign(q, tol) == 0:
        raise Inadmissible(f"X_{k} = X_{i} + X_{j}", edge=edge_of_pair(k, l), quantity=q)
    Xl = X[l - 1]
    new = [abs(q) * x / Xl for x in X]
    new[l - 1] = abs(q) ** 3 / (Xl * Xl)
    keep = sign(X[k - 1] - X[i - 1] - X[j - 1], tol) > 0
    new_eps = eps if keep else tuple(-s for s in eps)
    return SwitchResult(tuple(new), new_eps)


def _e1_new_negative(X, neg, l, tol):
    """Index of the negative triangle after switching along t_l, for the
    sign vector eps_neg (Euler class +1)."""
    dom = dominant_index(X, complement(l), tol)
    if neg == l:
        return dom if dom is not None else l
    if dom is not None and dom != neg:
        (j,) = [m for m in complement(l) if m not in (dom, neg)]
        return j
    return l


def triangle_switch_e1(X, eps, l, tol=DEFAULT_TOL):
    eps = check_signs(eps)
    e = euler_class(eps)
    if abs(e) != 1:
        raise ValueError("Euler class must be +-1")
    X = lift_all(X)
    facs = {}
    for (edge, f), i in zip(admissibility_quantities(X, eps, l), complement(l)):
        if sign(f, tol) == 0:
            raise Inadmissible(f"switch quantity for t_{i} vanishes", edge=edge, quantity=f)
        facs[i] = f
    Xl = X[l - 1]
    new = list(X)
    prod = 1
    for i, f in facs.items():
        new[i - 1] = abs(f) * X[i - 1] / Xl
        prod *= f
    new[l - 1] = abs(prod) / (Xl * Xl)
    # odd-one-out triangle (negative for e=+1, positive for e=-1)
    (odd,) = [m for m in (1, 2, 3, 4) if eps[m - 1] == -e]
    new_odd = _e1_new_negative(X, odd, l, tol)
    new_eps = [e] * 4
    new_eps[new_odd - 1] = -e
    return SwitchResult(tuple(new), tuple(new_eps))


def triangle_switch(X, eps, l, tol=DEFAULT_TOL):
    e = euler_class(eps)
    if e == 0:
        return triangle_switch_e0(X, eps, l, tol)
    if abs(e) == 1:
        return triangle_switch_e1(X, eps, l, tol)
    raise Unsupported("use switch_via_flips for Euler class +-2")


def switch_path(X, eps, word, tol=DEFAULT_TOL):
    """Apply the switches of a reduced word in order; returns the final result."""
    r = SwitchResult(tuple(X), tuple(eps))
    for l in word:
        r = triangle_switch(r.X, r.eps, l, tol)
    return r


# ---------------------------------------------------------------- cover flips

def _rot(face, lift):
    k = face.index(lift)
    return face[k:] + face[:k]


def _flip_cover(faces, lam, eps, x, new, tol):
    """Flip both lifts of edge ``x`` on the cover.  ``eps`` is keyed by the
    frozenset of edge labels of a triangle of the quotient."""
    created = {}
    for k in (0, 1):
        t1, t2 = [_rot(f, (x, k)) for f in faces if (x, k) in f]
        faces = [f for f in faces if (x, k) not in f]
        _, e1, e2 = t1
        _, e3, e4 = t2
        n = (new, k)
        faces = faces + [(n, e2, e3), (n, e4, e1)]
        created[k] = (t1, t2)
    t1, t2 = created[0]
    _, e1, e2 = t1
    _, e3, e4 = t2
    key = lambda f: frozenset(z for z, _ in f)
    s1, s2 = eps[key(t1)], eps[key(t2)]
    val, sa, sb = flip_values(lam[x], lam[e1[0]], lam[e2[0]], lam[e3[0]], lam[e4[0]], s1, s2, tol)
    lam = {z: v for z, v in lam.items() if z != x}
    lam[new] = val
    eps = {t: s for t, s in eps.items() if t not in (key(t1), key(t2))}
    eps[frozenset((new, e4[0], e1[0]))] = sa
    eps[frozenset((new, e2[0], e3[0]))] = sb
    return faces, lam, eps


def switch_via_flips(lam, eps, l, tol=DEFAULT_TOL):
    """Switch along t_l by four flips on the cover.

    Flips the edges x0, x1, x2 of t_l (x0 first becomes an auxiliary edge,
    which is flipped last).  New edges are relabelled so that the new triangle
    t_i' keeps the two edges of t_i not in t_l.  Returns (lam', eps').
    """
    eps = check_signs(eps)
    tl = TRIANGLE_EDGES[TRIANGLES[l - 1]]
    faces = list(COVER_FACES)
    cur_eps = {frozenset(TRIANGLE_EDGES[t]): eps[m] for m, t in enumerate(TRIANGLES)}
    cur_lam = {z: lift(v) for z, v in lam.items()}
    x0, x1, x2 = tl
    for old, new in ((x0, "*"), (x1, "n1"), (x2, "n2"), ("*", "n0")):
        faces, cur_lam, cur_eps = _flip_cover(faces, cur_lam, cur_eps, old, new, tol)
    relabel = {}
    for m, t in enumerate(TRIANGLES, start=1):
        if m == l:
            continue
        keep = set(TRIANGLE_EDGES[t]) - set(tl)
        (tri,) = [s for s in cur_eps if keep <= s]
        (new_edge,) = tri - keep
        (old_edge,) = set(TRIANGLE_EDGES[t]) & set(tl)
        relabel[new_edge] = old_edge
    out_lam = {relabel.get(z, z): v for z, v in cur_lam.items()}
    out_eps = [0] * 4
    for tri, s in cur_eps.items():
        labels = frozenset(relabel.get(z, z) for z in tri)
        (m,) = [m for m, t in enumerate(TRIANGLES) if frozenset(TRIANGLE_EDGES[t]) == labels]
        out_eps[m] = s
    return out_lam, tuple(out_eps)


def switch_coords_via_flips(lam, eps, l, tol=DEFAULT_TOL):
    lam2, eps2 = switch_via_flips(lam, eps, l, tol)
    return SwitchResult(triangle_coords(lam2), eps2)


_OTHERS = {l: tuple((i,) + tuple(m for m in (1, 2, 3, 4) if m not in (i, l))
                   for i in (1, 2, 3, 4) if i != l) for l in (1, 2, 3, 4)}


def projective_switch(X, eps, l):
    """Switch along t_l up to a positive scale, staying polynomial in X.

    Integer input gives integer output, which keeps deep tree walks cheap.
    Returns (X', eps', None), or (None, None, edge) when the switch is not
    admissible.
    """
    e = sum(eps) // 2
    Xl = X[l - 1]
    if e == 0:
        i, j, k = _e0_roles(eps, l)
        q = X[i - 1] + X[j - 1] - X[k - 1]
        if q == 0:
            return None, None, edge_of_pair(k, l)
        new = [x * Xl for x in X]
        new[l - 1] = q * q
        new_eps = eps if X[k - 1] > X[i - 1] + X[j - 1] else tuple(-s for s in eps)
        return tuple(new), new_eps, None
    new = list(X)
    prod = 1
    dom = None
    for i, j, k in _OTHERS[l]:
        Xi, Xj, Xk = X[i - 1], X[j - 1], X[k - 1]
        f = -eps[i - 1] * Xi + eps[j - 1] * Xj + eps[k - 1] * Xk
        if f == 0:
            return None, None, edge_of_pair(i, l)
        new[i - 1] = abs(f) * Xi * Xl
        prod *= f
        if Xi > Xj + Xk:
            dom = i
    new[l - 1] = abs(prod)
    (odd,) = [m for m in (1, 2, 3, 4) if eps[m - 1] == -e]
    if odd == l:
        new_odd = dom if dom is not None else l
    elif dom is not None and dom != odd:
        (new_odd,) = [m for m in (1, 2, 3, 4) if m not in (l, dom, odd)]
    else:
        new_odd = l
    new_eps = [e] * 4
    new_eps[new_odd - 1] = -e
    return tuple(new), tuple(new_eps), None
