"""Twist dynamics.

Two settings:

* the slice {(a, 1 - a, c, d)} of triangle coordinates for Euler class 0,
  where the switches S3, S4 act by c -> (d - 1)^2 / c and d -> (c - 1)^2 / d
  and preserve the conics (c + d - 1)^2 = (k + 2) c d;
* trace coordinates (a, b, c, d; x, y, z) on the relation variety, where the
  involutions are Vieta flips of one variable.
"""
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DivByZero, NoRealSolution, ShortOrbit
from .scalars import lift, sign, sqrt


# ---------------------------------------------------------------- omega slice

class OmegaPoint(NamedTuple):
    a: object
    c: object
    d: object


def s3(p):
    if p.c == 0:
        raise DivByZero("c = 0")
    return OmegaPoint(p.a, (lift(p.d) - 1) ** 2 / p.c, p.d)


def s4(p):
    if p.d == 0:
        raise DivByZero("d = 0")
    return OmegaPoint(p.a, p.c, (lift(p.c) - 1) ** 2 / p.d)


def twist34(p):
    return s3(s4(p))


def ellipse_k(p):
    c, d = lift(p.c), lift(p.d)
    return (c + d - 1) ** 2 / (c * d) - 2


def twist34_orbit(p, n):
    out = [p]
    for _ in range(n):
        out.append(twist34(out[-1]))
    return out


def ellipse_bounding_box(k):
    """c and d range over [0, 4 / (2 - k)] on E_k for k in (-2, 2)."""
    return 0.0, 4.0 / (2.0 - float(k))


def omega_conic(k):
    """Coefficients (A, B, C, D, E, F) of c^2 + d^2 - k c d - 2c - 2d + 1 = 0."""
    return (1.0, -float(k), 1.0, -2.0, -2.0, 1.0)


def omega_point_on(k, t, a=0.5):
    """Point of E_k at parameter angle t (k in (-2, 2))."""
    c0 = 2.0 / (2.0 - k)
    lam1, lam2 = 1 - k / 2.0, 1 + k / 2.0  # along (1,1)/sqrt2 and (1,-1)/sqrt2
    # c^2 + d^2 - k c d - 2c - 2d + 1 at the centre
    r2 = -(2 * c0 * c0 - k * c0 * c0 - 4 * c0 + 1)
    y1 = math.sqrt(r2 / lam1) * math.cos(t)
    y2 = math.sqrt(r2 / lam2) * math.sin(t)
    c = c0 + (y1 + y2) / math.sqrt(2)
    d = c0 + (y1 - y2) / math.sqrt(2)
    return OmegaPoint(a, c, d)


def rotation_angle_exact(k):
    """Rotation number (in turns) of the twist on E_k, from the pencil
    geometry of the two Vieta involutions: cos(pi * rho) = k / 2, measured
    counter-clockwise in the (c, d) plane."""
    return math.acos(float(k) / 2.0) / math.pi


# ---------------------------------------------------------------- trace variety

class TraceCoords(NamedTuple):
    a: object
    b: object
    c: object
    d: object
    x: object = 2
    y: object = 2
    z: object = 2


def relation_residual(tc):
    a, b, c, d, x, y, z = tc
    return (-a * a - b * b - c * c - d * d + x * x + y * y + z * z
            + (a * b + c * d) * x + (a * d + b * c) * y + (a * c + b * d) * z
            + a * b * c * d + x * y * z - 4)


def solve_d(a, b, c, branch=0):
    """Solve for d with x = y = z = 2:
    d^2 - d [2(a + b - c) + (ab + 4) c] + (a + b - c)^2 - 4(ab + 4) = 0."""
    a, b, c = lift(a), lift(b), lift(c)
    s = a + b - c
    B = 2 * s + (a * b + 4) * c
    C = s * s - 4 * (a * b + 4)
    disc = B * B - 4 * C
    if sign(disc) < 0:
        raise NoRealSolution(f"discriminant {disc} < 0")
    r = sqrt(disc)
    d = (B + r) / 2 if branch == 0 else (B - r) / 2
    return TraceCoords(a, b, c, d, 2, 2, 2)


def vieta_flip(tc, var):
    """Replace one of a, b, c, d by the other root of the relation viewed as
    a quadratic in that variable."""
    a, b, c, d, x, y, z = (lift(v) for v in tc)
    if var == "a":
        return tc._replace(a=b * x + c * z + d * y + b * c * d - a)
    if var == "b":
        return tc._replace(b=a * x + c * y + d * z + a * c * d - b)
    if var == "c":
        return tc._replace(c=d * x + b * y + a * z + a * b * d - c)
    if var == "d":
        return tc._replace(d=c * x + a * y + b * z + a * b * c - d)
    raise ValueError(f"unknown variable {var!r}")


def twist_ab(tc):
    return vieta_flip(vieta_flip(tc, "b"), "a")


def twist_ab_orbit(tc, n):
    out = [tc]
    for _ in range(n):
        out.append(twist_ab(out[-1]))
    return out


def trace_conic(tc):
    """The conic E_{c,d} in the (a, b) plane: (a + b - s)^2 = (ab + 4) m
    with s = c + d and m = cd + 4."""
    s = float(tc.c + tc.d)
    m = float(tc.c * tc.d + 4)
    return (1.0, 2.0 - m, 1.0, -2.0 * s, -2.0 * s, s * s - 4.0 * m)


# negate the image of one generator: (a, d, x, z) for A, (b, d, x, y) for B,
# (c, d, y, z) for C
CENTRAL_PATTERNS = {"A": "adxz", "B": "bdxy", "C": "cdyz"}


def central_character(tc, generator="A"):
    flip = CENTRAL_PATTERNS[generator]
    return TraceCoords(*(-v if name in flip else v for name, v in zip("abcdxyz", tc)))


def _mul2(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def character_from_matrices(A, B, C):
    """Trace coordinates of the lift (iA, iB, iC) with A, B, C of determinant -1.

    D = (ABC)^-1 closes the relation; x, y, z are the traces of AB, BC, CA in
    SL(2), i.e. minus the traces of the real products.
    """
    A, B, C = (tuple(tuple(lift(v) for v in row) for row in M) for M in (A, B, C))
    for M in (A, B, C):
        if M[0][0] * M[1][1] - M[0][1] * M[1][0] != -1:
            raise ValueError("matrices must have determinant -1")
    P = _mul2(_mul2(A, B), C)
    det = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    tr = lambda M: M[0][0] + M[1][1]
    return TraceCoords(tr(A), tr(B), tr(C), tr(P) / det,
                       -tr(_mul2(A, B)), -tr(_mul2(B, C)), -tr(_mul2(C, A)))


def random_character(rng, height=6):
    """Exact point of the relation variety from random rational matrices."""
    def mat():
        while True:
            a, b, c = (Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, height)))
                       for _ in range(3))
            if a != 0:
                return ((a, b), (c, (b * c - 1) / a))
    return character_from_matrices(mat(), mat(), mat())


def euler_sign_bg(tc):
    if any(abs(v) != 2 for v in (tc.x, tc.y, tc.z)):
        raise ValueError("x, y, z must be +-2")
    return 1 if tc.x * tc.y * tc.z > 0 else -1


def trace_interval_values(tc):
    a, b, c, d = tc.a, tc.b, tc.c, tc.d
    return (-(a * b + 2), -(c * d + 2), -(b * c + 2), -(a * d + 2), -(a * c + 2), -(b * d + 2))


def ellipse_path_enabled(tc):
    return any(-2 < v < 2 for v in trace_interval_values(tc))


# ---------------------------------------------------------------- rotation numbers

def _conic_frame(conic):
    A, B, C, D, E, F = conic
    Q = np.array([[A, B / 2.0], [B / 2.0, C]])
    centre = np.linalg.solve(2 * Q, -np.array([D, E]))
    w, R = np.linalg.eigh(Q)
    if np.linalg.det(R) < 0:  # keep the orientation of the plane
        R[:, 1] = -R[:, 1]
    if np.all(w < 0):
        w = -w
    if not np.all(w > 0):
        raise ValueError("conic is not an ellipse")
    return centre, R, np.sqrt(w)


def ellipse_angles(points, conic):
    """Angles of 2-d points after the affine map taking the conic to a circle."""
    centre, R, scale = _conic_frame(conic)
    P = np.asarray(points, dtype=float) - centre
    Y = (P @ R) * scale
    return np.arctan2(Y[:, 1], Y[:, 0])


def rotation_number_estimate(orbit, conic=None):
    """Mean angular increment (in turns, in [0, 1)) along an orbit lying on an
    ellipse.  Accepts OmegaPoints, TraceCoords (the (a, b) plane) or 2-d
    points together with an explicit conic."""
    if len(orbit) < 16:
        raise ShortOrbit(f"need at least 16 points, got {len(orbit)}")
    first = orbit[0]
    if isinstance(first, OmegaPoint):
        pts = [(float(p.c), float(p.d)) for p in orbit]
        conic = conic or omega_conic(ellipse_k(first))
    elif isinstance(first, TraceCoords):
        pts = [(float(p.a), float(p.b)) for p in orbit]
        conic = conic or trace_conic(first)
    else:
        pts = orbit
    th = ellipse_angles(pts, conic)
    inc = np.mod(np.diff(th), 2 * np.pi)
    return float(inc.mean() / (2 * np.pi))
