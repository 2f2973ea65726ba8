"""Lambda lengths, triangle coordinates, gauge action, Euler class, cusp signs
and the component classification.

Conventions used throughout the package:

* ``lam`` is a dict ``edge label -> positive number``;
* ``eps`` is a 4-tuple of +-1, the signs of ``(t1, t2, t3, t4)``;
* ``X`` is a 4-tuple of positive numbers, the triangle coordinates.

Exact inputs (``int``/``Fraction``) give exact answers.  Floats are compared
with a tolerance.
"""
import itertools
import math
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import DegenerateCusp
from .scalars import DEFAULT_TOL, cmp, lift_all, sign
from .surface import EDGE_ENDPOINTS, EDGES, TRIANGLE_EDGES, TRIANGLES, VERTICES, dual_pair

# cusp_entries()[p] is the off-diagonal holonomy entry of this puncture of the
# frozen model (checked against the peripheral curves by the trace engine).
CUSP_PUNCTURES = ("v3", "v2", "v1")


# ---------------------------------------------------------------- sign vectors

def eps_single(n, e=1):
    """The sign vector eps_n (only t_n negative); ``e=-1`` gives -eps_n."""
    v = [e] * 4
    v[n - 1] = -e
    return tuple(v)


def eps_pair(i, j):
    """eps_{i,j}: t_i and t_j negative, the others positive."""
    v = [1] * 4
    v[i - 1] = v[j - 1] = -1
    return tuple(v)


def sign_patterns(e=None):
    """All 16 sign vectors, or those with the given Euler class."""
    pats = [tuple(p) for p in itertools.product((1, -1), repeat=4)]
    return [p for p in pats if e is None or euler_class(p) == e]


def check_signs(eps):
    eps = tuple(int(x) for x in eps)
    if len(eps) != 4 or any(x not in (1, -1) for x in eps):
        raise ValueError(f"sign vector must be four entries of +-1, got {eps}")
    return eps


def euler_class(eps):
    return sum(check_signs(eps)) // 2


# ---------------------------------------------------------------- coordinates

def check_coords(X):
    X = tuple(X)
    if len(X) != 4 or any(not x > 0 for x in X):
        raise ValueError(f"triangle coordinates must be four positive numbers, got {X}")
    return X


def triangle_coords(lam):
    out = []
    for t in TRIANGLES:
        p = 1
        for e in TRIANGLE_EDGES[t]:
            p *= lam[e]
        out.append(p)
    return tuple(out)


def normalize(X):
    X = lift_all(X)
    s = sum(X)
    return tuple(x / s for x in X)


def projectively_equal(X, Y, tol=DEFAULT_TOL):
    """Equality of positive 4-vectors up to scale (relative tolerance for floats)."""
    nx, ny = normalize(X), normalize(Y)
    return all(cmp(a, b, tol) == 0 for a, b in zip(nx, ny))


def gauge_act(mu, lam):
    """(mu . lam)(e) = mu(v) lam(e) mu(w) for the endpoints v, w of e."""
    if not isinstance(mu, dict):
        mu = dict(zip(VERTICES, mu))
    return {e: mu[EDGE_ENDPOINTS[e][0]] * lam[e] * mu[EDGE_ENDPOINTS[e][1]] for e in lam}


def section(X):
    """Lambda lengths whose triangle coordinates are exactly X (float).

    lam(edge between t_i and t_j) = sqrt(X_i X_j) / (X_1 X_2 X_3 X_4)^(1/6).
    """
    X = [float(x) for x in check_coords(X)]
    scale = math.prod(X) ** (1.0 / 6.0)
    out = {}
    for e in EDGES:
        i, j = dual_pair(e)
        out[e] = math.sqrt(X[i - 1] * X[j - 1]) / scale
    return out


# ---------------------------------------------------------------- cusps & GTI

def cusp_entries(X, eps):
    x1, x2, x3, x4 = X
    e1, e2, e3, e4 = check_signs(eps)
    return (e2 * x1 + e1 * x2 + e4 * x3 + e3 * x4,
            e3 * x1 + e4 * x2 + e1 * x3 + e2 * x4,
            e4 * x1 + e3 * x2 + e2 * x3 + e1 * x4)


def signs_at_cusps(X, eps, tol=DEFAULT_TOL):
    out = []
    for p, c in enumerate(cusp_entries(X, eps)):
        s = sign(c, tol)
        if s == 0:
            raise DegenerateCusp(f"cusp entry {p + 1} vanishes")
        out.append(s)
    return tuple(out)


def gti_satisfied(X, tol=DEFAULT_TOL):
    s = sum(X)
    return all(cmp(2 * x, s, tol) <= 0 for x in X)


def dominant_index(X, among=(1, 2, 3, 4), tol=DEFAULT_TOL):
    """Index i in ``among`` with X_i strictly larger than the sum of the other
    coordinates in ``among``, or None."""
    for i in among:
        rest = sum(X[m - 1] for m in among if m != i)
        if cmp(X[i - 1], rest, tol) > 0:
            return i
    return None


def complement(*idx):
    return tuple(m for m in (1, 2, 3, 4) if m not in idx)


def sq_gti_satisfied(X, pair, tol=DEFAULT_TOL):
    i, j = pair
    k, l = complement(i, j)
    Xi, Xj, Xk, Xl = X[i - 1], X[j - 1], X[k - 1], X[l - 1]
    return cmp((Xk + Xl - Xi - Xj) ** 2, 4 * Xk * Xl, tol) <= 0


# ---------------------------------------------------------------- components

S_NAMES = {
    (1, 1, 1): "s+", (-1, -1, -1): "s-",
    (1, -1, -1): "s1+", (-1, 1, -1): "s2+", (-1, -1, 1): "s3+",
    (-1, 1, 1): "s1-", (1, -1, 1): "s2-", (1, 1, -1): "s3-",
}
S_BY_NAME = {v: k for k, v in S_NAMES.items()}


def allowed_signs(e):
    """Cusp-sign vectors realised with Euler class e."""
    if e == 0:
        return [s for s in S_NAMES if s.count(1) in (1, 2)]
    if e == 1:
        return [(1, 1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, -1)]
    if e == -1:
        return [(-1, -1, -1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    if e == 2:
        return [(1, 1, 1)]
    if e == -2:
        return [(-1, -1, -1)]
    return []


class ComponentLabel(NamedTuple):
    euler: int
    signs: tuple
    subregion: Optional[str] = None

    @property
    def name(self):
        return S_NAMES[self.signs]

    def to_json(self):
        out = {"euler": self.euler, "signs": list(self.signs)}
        if self.subregion is not None:
            out["subregion"] = self.subregion
        return out


def classify(X, eps, tol=DEFAULT_TOL):
    X = check_coords(X)
    e = euler_class(eps)
    s = signs_at_cusps(X, eps, tol)
    sub = None
    if abs(e) == 1:
        i = dominant_index(X, tol=tol)
        sub = "gti" if i is None else f"Delta^{{{i},+}}"
    return ComponentLabel(e, s, sub)


def parse_signs_name(text):
    """'+--' style or 's1-' style to a sign tuple."""
    text = text.strip()
    if text in S_BY_NAME:
        return S_BY_NAME[text]
    if len(text) == 3 and set(text) <= {"+", "-"}:
        return tuple(1 if c == "+" else -1 for c in text)
    raise ValueError(f"bad cusp sign spec {text!r}")


def exact_coords(X):
    return tuple(Fraction(x) for x in X)
