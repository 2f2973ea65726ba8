"""Trace engine for curves in standard position and closed-form traces of the
six edge-curves.

The engine multiplies one 2x2 matrix per triangle crossed.  For a step that
enters along e1, leaves along e2 and has third edge e3:

    left turn   [[lam(e1), eps(t) lam(e3)], [0, lam(e2)]]
    right turn  [[lam(e2), 0], [eps(t) lam(e3), lam(e1)]]

and |tr| of the curve is |tr(M_1 ... M_m)| divided by the product of the
lambda lengths of the edges crossed.
"""
from typing import NamedTuple, Optional

from .coords import CUSP_PUNCTURES, check_coords, check_signs, complement, euler_class
from .errors import BadStep, DegenerateCusp, NegativeSquare, NotParabolic, Unsupported
from .scalars import DEFAULT_TOL, cmp, lift, lift_all, sign
from .surface import TRIANGLES, third_edge

KINDS = ("hyperbolic", "parabolic", "elliptic")


class HolonomyResult(NamedTuple):
    abs_trace: object
    kind: str
    parabolic_sign: Optional[int] = None

    @property
    def hyperbolic(self):
        return self.kind == "hyperbolic"


def kind_of(abs_trace, tol=DEFAULT_TOL):
    c = cmp(abs_trace, 2, tol)
    return "hyperbolic" if c > 0 else ("parabolic" if c == 0 else "elliptic")


def _eps_of(eps, t):
    return eps[TRIANGLES.index(t)]


def turn_matrix(t, enter, exit, lam, eps, turn="L"):
    e3 = third_edge(t, enter, exit)
    if e3 is None:
        raise BadStep(f"{enter},{exit} are not two distinct edges of {t}")
    s = _eps_of(eps, t)
    if turn == "L":
        return ((lam[enter], s * lam[e3]), (0, lam[exit]))
    if turn == "R":
        return ((lam[exit], 0), (s * lam[e3], lam[enter]))
    raise BadStep(f"bad turn {turn!r}")


def _mul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _scaled(M, den):
    return tuple(tuple(x / den for x in row) for row in M)


def holonomy_product(desc, lam, eps):
    """(M, den): the ordered product of turn matrices and the product of the
    entry-edge lambda lengths.  M/den has determinant +-1."""
    lam = {z: lift(v) for z, v in lam.items()}
    M = ((1, 0), (0, 1))
    den = 1
    for st in desc.steps:
        M = _mul(M, turn_matrix(st.triangle, st.enter, st.exit, lam, eps, st.turn))
        den *= lam[st.enter]
    return M, den


def parabolic_sign(M, tol=DEFAULT_TOL):
    """Sign of the parabolic conjugacy class of M (|tr M| = 2 det-normalised).

    After scaling M to have positive trace, the class is read off as
    sign(M12 - M21); [[1, x], [0, 1]] has sign(x).
    """
    tr = M[0][0] + M[1][1]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if sign(det, tol) <= 0 or cmp(tr * tr, 4 * det, tol) != 0:
        raise NotParabolic("matrix is not parabolic")
    s = sign(tr, tol)
    v = sign(s * (M[0][1] - M[1][0]), tol)
    if v == 0:
        raise NotParabolic("matrix is +-identity")
    return v


def curve_trace(desc, lam, eps, tol=DEFAULT_TOL):
    if not desc.two_sided:
        raise Unsupported("1-sided curves: use one_sided_trace_sq on the square")
    M, den = holonomy_product(desc, lam, eps)
    t = abs(M[0][0] + M[1][1]) / den
    k = kind_of(t, tol)
    ps = None
    if k == "parabolic":
        try:
            ps = parabolic_sign(_scaled(M, den), tol)
        except NotParabolic:
            ps = None
    return HolonomyResult(t, k, ps)


def one_sided_trace_sq(desc_sq, lam, eps, tol=DEFAULT_TOL):
    """(tr gamma)^2 = |tr gamma^2| - 2, for ``desc_sq`` the square of a
    1-sided curve gamma."""
    M, den = holonomy_product(desc_sq, lam, eps)
    v = abs(M[0][0] + M[1][1]) / den - 2
    if cmp(v, 0, tol) < 0:
        raise NegativeSquare(f"|tr gamma^2| - 2 = {v} < 0")
    return v if cmp(v, 0, tol) != 0 else 0 * v


def one_sided_trace_sq_value(abs_trace_sq, tol=DEFAULT_TOL):
    v = abs_trace_sq - 2
    if cmp(v, 0, tol) < 0:
        raise NegativeSquare(f"|tr gamma^2| = {abs_trace_sq} < 2")
    return v


def peripheral_sign(desc, lam, eps, tol=DEFAULT_TOL):
    M, den = holonomy_product(desc, lam, eps)
    return parabolic_sign(_scaled(M, den), tol)


# ---------------------------------------------------------------- closed forms

CONVENTIONS = ("engine", "swapped")


def edge_curve_trace(X, eps, pair, convention="engine", tol=DEFAULT_TOL):
    """|tr| of the curve of the edge between t_i and t_j, from the triangle
    coordinates.

    e = +-1:  |X_k^2 + X_l^2 - (X_i + X_j)^2| / (X_k X_l) when eps_i != eps_j,
              |X_k^2 + X_l^2 - (X_i - X_j)^2| / (X_k X_l) when eps_i == eps_j.
    ``convention="swapped"`` exchanges the two cases; it disagrees with the
    engine and exists only as a regression control.

    e = 0:    with S = sum eps_m X_m,
              (S^2 + 2 X_k X_l) / (X_k X_l)     when eps_i != eps_j,
              |S^2 - 2 X_k X_l| / (X_k X_l)     when eps_i == eps_j.
    """
    if convention not in CONVENTIONS:
        raise ValueError(convention)
    eps = check_signs(eps)
    X = lift_all(X)
    e = euler_class(eps)
    i, j = sorted(pair)
    k, l = complement(i, j)
    Xi, Xj, Xk, Xl = X[i - 1], X[j - 1], X[k - 1], X[l - 1]
    same = eps[i - 1] == eps[j - 1]
    if e == 0:
        S = sum(s * x for s, x in zip(eps, X))
        if sign(S, tol) == 0:
            raise DegenerateCusp("sum of signed coordinates vanishes")
        if same:
            t = abs(S * S - 2 * Xk * Xl) / (Xk * Xl)
        else:
            t = (S * S + 2 * Xk * Xl) / (Xk * Xl)
    elif abs(e) == 1:
        if convention == "swapped":
            same = not same
        m = Xi - Xj if same else Xi + Xj
        t = abs(Xk * Xk + Xl * Xl - m * m) / (Xk * Xl)
    else:
        raise Unsupported("closed forms exist only for Euler class 0 and +-1; "
                          "see fuchsian_edge_trace")
    return HolonomyResult(t, kind_of(t, tol))


def fuchsian_edge_trace(X, pair, tol=DEFAULT_TOL):
    """|tr| of the curve of the edge between t_i and t_j when all triangles
    carry the same sign: (X_1 + X_2 + X_3 + X_4)^2 / (X_k X_l) - 2."""
    X = lift_all(check_coords(X))
    k, l = complement(*pair)
    t = sum(X) ** 2 / (X[k - 1] * X[l - 1]) - 2
    return HolonomyResult(t, kind_of(t, tol))


PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def all_edge_traces(X, eps, convention="engine", tol=DEFAULT_TOL):
    return {p: edge_curve_trace(X, eps, p, convention, tol) for p in PAIRS}


def all_hyperbolic(X, eps, convention="engine", tol=DEFAULT_TOL):
    return all(r.hyperbolic for r in all_edge_traces(X, eps, convention, tol).values())


def dominate_compare(lam, eps, desc, tol=DEFAULT_TOL):
    """(|tr| under eps, |tr| under all-positive signs, crosses a negative triangle)."""
    eps = check_signs(eps)
    t_eps = curve_trace(desc, lam, eps, tol).abs_trace
    t_pos = curve_trace(desc, lam, (1, 1, 1, 1), tol).abs_trace
    strict = any(_eps_of(eps, st.triangle) < 0 for st in desc.steps)
    return t_eps, t_pos, strict


def crossed_signs_mixed(eps, desc):
    """True when ``desc`` crosses triangles of both signs.  This, not merely
    meeting a negative triangle, is when the domination is strict: a curve
    whose triangles all carry the same sign sees a (mirror) Fuchsian chart."""
    seen = {_eps_of(check_signs(eps), st.triangle) for st in desc.steps}
    return len(seen) == 2


def cusp_puncture(p):
    """Model puncture whose peripheral holonomy has off-diagonal entry number p."""
    return CUSP_PUNCTURES[p]
