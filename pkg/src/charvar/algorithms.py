"""Trace reduction, component sampling, and walks over the tree of balanced
triangulations.

Deep walks run on integer representatives of the projective triangle
coordinates (see ``switches.projective_switch``); every hyperbolicity
decision is an exact integer comparison.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import gmpy2
import numpy as np

from .coords import (S_NAMES, allowed_signs, check_coords, check_signs, classify, complement,
                     euler_class, gti_satisfied, sign_patterns, signs_at_cusps)
from .errors import CharvarError, EmptyComponent, Unsupported
from .switches import projective_switch
from .surface import SWITCHES, edge_of_pair, format_address
from .traces import PAIRS, edge_curve_trace

SAMPLE_DENOMINATOR = 2 ** 32
MAX_BITS = 1 << 16

OUTCOMES = ("FoundNonAdmissibleEdge", "FoundGTIWitness", "FoundSqGTIWitness",
            "StepLimit", "StepLimit-Tie")


# ---------------------------------------------------------------- helpers

def integer_coords(X):
    """Positive integers proportional to X (exact)."""
    fr = [Fraction(x) for x in check_coords(X)]
    den = math.lcm(*(f.denominator for f in fr))
    ints = [f.numerator * (den // f.denominator) for f in fr]
    g = math.gcd(*ints)
    return tuple(n // g for n in ints)


def normalized_fractions(X):
    X = tuple(int(x) for x in X)
    s = sum(X)
    return tuple(Fraction(x, s) for x in X)


def pair_hyperbolic(X, eps, pair):
    """Exact test |tr| > 2 for the curve of the edge between t_i and t_j.

    For e = +-1 with m = X_i -+ X_j,
    |X_k^2 + X_l^2 - m^2| > 2 X_k X_l  iff  |X_k - X_l| > |m| or X_k + X_l < |m|.
    For e = 0 a same-sign pair is hyperbolic iff S^2 > 4 X_k X_l, S = sum eps X.
    """
    i, j = pair
    k, l = complement(i, j)
    Xk, Xl = X[k - 1], X[l - 1]
    e = euler_class(eps)
    same = eps[i - 1] == eps[j - 1]
    if e == 0:
        if not same:
            return True
        S = sum(s * x for s, x in zip(eps, X))
        return S * S > 4 * Xk * Xl
    m = abs(X[i - 1] - X[j - 1]) if same else X[i - 1] + X[j - 1]
    return abs(Xk - Xl) > m or Xk + Xl < m


def _to_floats(X):
    """Floats proportional to big integers X, scaled so the largest is O(1)."""
    bits = [x.bit_length() for x in X]
    top = max(bits)
    return tuple(math.ldexp(float(x >> max(0, b - 60)), max(0, b - 60) - top)
                 for x, b in zip(X, bits))


def _node_traces(X, eps, e):
    """Non-hyperbolic pairs (exact) and the minimum |tr| (float) at one chart."""
    bad = []
    xf = _to_floats(X)
    best = math.inf
    S = sum(s * x for s, x in zip(eps, X)) if e == 0 else None
    Sf = sum(s * x for s, x in zip(eps, xf)) if e == 0 else None
    for (i, j), (k, l) in _PAIR_SPLITS:
        Xk, Xl = X[k - 1], X[l - 1]
        same = eps[i - 1] == eps[j - 1]
        fk, fl = xf[k - 1], xf[l - 1]
        if e == 0:
            if same:
                m, mf = abs(S), abs(Sf)
                t = abs(mf * mf - 2 * fk * fl) / (fk * fl)
            else:
                m, mf = None, Sf
                t = (mf * mf + 2 * fk * fl) / (fk * fl)
        else:
            if same:
                m, mf = abs(X[i - 1] - X[j - 1]), abs(xf[i - 1] - xf[j - 1])
            else:
                m, mf = X[i - 1] + X[j - 1], xf[i - 1] + xf[j - 1]
            t = abs(fk * fk + fl * fl - mf * mf) / (fk * fl)
        if e == 0:
            if same and not m * m > 4 * Xk * Xl:
                bad.append((i, j))
        elif not (abs(Xk - Xl) > m or Xk + Xl < m):
            bad.append((i, j))
        best = min(best, t)
    return bad, best


_PAIR_SPLITS = tuple((p, complement(*p)) for p in PAIRS)


def unique_max(X):
    m = max(X)
    idx = [i + 1 for i, x in enumerate(X) if x == m]
    return idx[0] if len(idx) == 1 else None


# ---------------------------------------------------------------- reduction

@dataclass
class ReductionStep:
    """One chart of a reduction run; X holds coprime integers proportional
    to the triangle coordinates (normalised to sum 1 in JSON)."""
    address: tuple
    X: Optional[tuple]
    eps: Optional[tuple]
    action: object  # switch index, or a stop reason string


@dataclass
class ReductionLog:
    steps: list = field(default_factory=list)
    outcome: str = "StepLimit"
    witness: Optional[tuple] = None  # ((i, j), HolonomyResult) or ("edge", label, value)

    def to_json(self):
        from .scalars import to_json
        out = {
            "outcome": self.outcome,
            "steps": [{"address": format_address(s.address),
                       "X": None if s.X is None else [to_json(x) for x in normalized_fractions(s.X)],
                       "signs": None if s.eps is None else list(s.eps),
                       "action": s.action if isinstance(s.action, str) else f"S{s.action}"}
                      for s in self.steps],
        }
        if self.witness is not None:
            if self.witness[0] == "edge":
                out["witness"] = {"edge": self.witness[1], "quantity": to_json(self.witness[2])}
            else:
                pair, res = self.witness
                out["witness"] = {"pair": list(pair), "abs_trace": to_json(res.abs_trace),
                                  "kind": res.kind}
        return out


@dataclass
class ReductionDiagnostics:
    rows: list = field(default_factory=list)

    CSV_COLUMNS = ("step", "a", "b", "c", "region", "u", "h", "k")

    def column(self, name):
        return [r.get(name) for r in self.rows]


def _region_row(X, frame):
    """(a, b, c) = normalised (sum of the two smallest, X_p, X_q) where (p, q)
    is the frame of the current stretch, with membership in
    L = {c > a + b, b > a} or R = {b > a + c, c > a}.  X are integers."""
    p, q = frame
    s = sum(X)
    rest = sum(X[m - 1] for m in complement(p, q))
    A, B, C = rest, X[p - 1], X[q - 1]
    region = ""
    if C > A + B and B > A:
        region = "L"
    elif B > A + C and C > A:
        region = "R"
    a, b, c = (float(gmpy2.mpq(v, s)) for v in (A, B, C))
    return {"a": a, "b": b, "c": c, "region": region}


def _e0_row(X, eps):
    X = tuple(int(x) for x in X)
    neg = [m for m in (1, 2, 3, 4) if eps[m - 1] < 0]
    pos = [m for m in (1, 2, 3, 4) if eps[m - 1] > 0]
    s = sum(X)
    a, b = (X[m - 1] / s for m in neg)
    c, d = (X[m - 1] / s for m in pos)
    r = math.sqrt
    u = abs(Fraction(X[neg[0] - 1] + X[neg[1] - 1], s) - Fraction(1, 2))
    h = max(r(a) - r(b) - r(c + d), r(b) - r(a) - r(c + d), -r(a) - r(b) + r(c + d))
    k = max(r(c) - r(d) - r(a + b), r(d) - r(c) - r(a + b), -r(c) - r(d) + r(a + b))
    return {"u": float(u), "u_exact": u, "h": h, "k": k}


def _witness(X, eps):
    """First edge pair (in PAIRS order) whose curve is not hyperbolic."""
    for p in PAIRS:
        if not pair_hyperbolic(X, eps, p):
            Xf = normalized_fractions(X)
            return p, edge_curve_trace(Xf, eps, p)
    return None


def trace_reduce(X, eps, max_steps=1000, max_bits=MAX_BITS):
    """Greedy reduction: switch along the unique largest coordinate until some
    edge-curve of the current triangulation is not hyperbolic, or the next
    triangulation is not admissible.

    The state is kept as coprime integers.  On components with no witness the
    run never stops by itself and the integers grow by thousands of bits per
    switch, so besides ``max_steps`` the run is cut (still reported as
    StepLimit, with action "size-limit") once a coordinate exceeds
    ``max_bits`` bits.  Terminating runs stay far below the default.
    """
    eps = check_signs(eps)
    e = euler_class(eps)
    if abs(e) > 1:
        raise Unsupported("trace reduction is defined for Euler class 0 and +-1")
    signs_at_cusps(X, eps)  # raises DegenerateCusp on excluded charts
    Xi = tuple(gmpy2.mpz(n) for n in integer_coords(X))
    log, diag = ReductionLog(), ReductionDiagnostics()
    addr = ()
    frame = None
    for n in range(max_steps + 1):
        Xn = tuple(int(x) for x in Xi)
        row = {"step": n}
        if e == 0:
            row.update(_e0_row(Xi, eps))
        else:
            srt = sorted((1, 2, 3, 4), key=lambda m: Xi[m - 1])
            top2 = (srt[2], srt[3])
            if frame is None or set(frame) != set(top2):
                frame = top2
            row.update(_region_row(Xi, frame))
            row["gti"] = gti_satisfied(Xi)
        diag.rows.append(row)
        w = _witness(Xi, eps)
        if w is not None:
            log.steps.append(ReductionStep(addr, Xn, eps, "witness"))
            log.outcome = "FoundSqGTIWitness" if e == 0 else "FoundGTIWitness"
            log.witness = w
            return log, diag
        if n == max_steps:
            log.steps.append(ReductionStep(addr, Xn, eps, "step-limit"))
            return log, diag
        if max(x.bit_length() for x in Xi) > max_bits:
            log.steps.append(ReductionStep(addr, Xn, eps, "size-limit"))
            return log, diag
        l = unique_max(Xi)
        if l is None:
            log.steps.append(ReductionStep(addr, Xn, eps, "tie"))
            log.outcome = "StepLimit-Tie"
            return log, diag
        log.steps.append(ReductionStep(addr, Xn, eps, l))
        new, new_eps, bad_edge = projective_switch(Xi, eps, l)
        addr = addr + (l,)
        if new is None:
            log.steps.append(ReductionStep(addr, None, None, "non-admissible"))
            log.outcome = "FoundNonAdmissibleEdge"
            log.witness = ("edge", bad_edge, 0)
            return log, diag
        g = gmpy2.gcd(gmpy2.gcd(new[0], new[1]), gmpy2.gcd(new[2], new[3]))
        Xi, eps = tuple(x // g for x in new), new_eps
    return log, diag


def witness_valid(log):
    """Exact check of the reported witness (used by tests and suites)."""
    if log.outcome == "FoundNonAdmissibleEdge":
        return log.witness is not None and log.witness[2] == 0
    if log.outcome in ("FoundGTIWitness", "FoundSqGTIWitness"):
        pair, res = log.witness
        last = log.steps[-1]
        again = edge_curve_trace(last.X, last.eps, pair).abs_trace
        return again == res.abs_trace and again <= 2
    return False


def escape_check(diag):
    """Alternating L/R transitions of an e = +-1 run and those violating
    a_{n+1} (1 - 2 a_n) >= a_n.  Returns (checked, [step indices])."""
    rows = diag.rows
    checked, bad = 0, []
    for r0, r1 in zip(rows, rows[1:]):
        if {r0.get("region"), r1.get("region")} == {"L", "R"}:
            checked += 1
            if r1["a"] * (1 - 2 * r0["a"]) < r0["a"]:
                bad.append(r0["step"])
    return checked, bad


# ---------------------------------------------------------------- sampling

def sample_coords(rng, denominator=SAMPLE_DENOMINATOR):
    x = rng.dirichlet(np.ones(4))
    n = np.maximum(np.rint(x * denominator).astype(np.int64), 1)
    return tuple(Fraction(int(v), denominator) for v in n)


def sample_component(e, s, rng, max_tries=100000):
    """Rejection sample (X, eps) in the component with Euler class e and cusp
    signs s.  ``rng`` is a ``numpy.random.Generator``."""
    s = tuple(s)
    if s not in allowed_signs(e):
        raise EmptyComponent(f"no representations with e={e}, s={S_NAMES.get(s, s)}")
    pats = sign_patterns(e)
    for _ in range(max_tries):
        X = sample_coords(rng)
        eps = pats[int(rng.integers(len(pats)))]
        try:
            if classify(X, eps).signs == s:
                return X, eps
        except CharvarError:
            continue
    raise EmptyComponent(f"no sample found for e={e}, s={s} in {max_tries} tries")


def component_census(n_per_pattern, rng, eulers=(0, 1, -1)):
    """Classify n random X for every sign vector with the given Euler classes.
    Returns {(e, s): count} plus the number of degenerate draws."""
    counts, degenerate = {}, 0
    for e in eulers:
        for eps in sign_patterns(e):
            for _ in range(n_per_pattern):
                x = rng.dirichlet(np.ones(4))
                X = tuple(int(v) for v in np.maximum(np.rint(x * SAMPLE_DENOMINATOR), 1))
                try:
                    lab = classify(X, eps)
                except CharvarError:
                    degenerate += 1
                    continue
                counts[(lab.euler, lab.signs)] = counts.get((lab.euler, lab.signs), 0) + 1
    return counts, degenerate


# ---------------------------------------------------------------- tree walks

def _walk(X, eps, depth, visit):
    """Depth-first walk over reduced words of length <= depth.  ``visit`` is
    called as visit(address, X, eps) on admissible triangulations; returns the
    list of non-admissible addresses as (address, edge)."""
    zeros = []
    stack = [((), tuple(gmpy2.mpz(n) for n in integer_coords(X)), check_signs(eps))]
    while stack:
        addr, Xi, ep = stack.pop()
        visit(addr, Xi, ep)
        if len(addr) == depth:
            continue
        for l in reversed(SWITCHES):
            if addr and addr[-1] == l:
                continue
            new, new_eps, bad = projective_switch(Xi, ep, l)
            if new is None:
                zeros.append((addr + (l,), bad))
                continue
            if len(addr) + 1 < depth:
                # drop the common content; without this the integers triple in
                # size at every level instead of roughly doubling
                g = gmpy2.gcd(gmpy2.gcd(gmpy2.gcd(new[0], new[1]), new[2]), new[3])
                new = tuple(x // g for x in new)
            stack.append((addr + (l,), new, new_eps))
    zeros.sort(key=lambda z: (len(z[0]), z[0]))
    return zeros


def admissibility_walk(X, eps, depth):
    e = euler_class(eps)
    if abs(e) > 1:
        raise Unsupported("admissibility quantities are defined for Euler class 0 and +-1")
    count = [0]

    def visit(addr, Xi, ep):
        count[0] += 1

    zeros = _walk(X, eps, depth, visit)
    return {"depth": depth, "triangulations": count[0],
            "zeros": [{"address": format_address(a), "edge": edge} for a, edge in zeros]}


def hyperbolicity_scan(X, eps, depth, stop_at_first=False):
    eps = check_signs(eps)
    if abs(euler_class(eps)) != 1:
        raise Unsupported("hyperbolicity_scan needs Euler class +-1; use trace_reduce for e = 0")
    state = {"count": 0, "min": math.inf, "min_at": None, "witnesses": []}

    e = euler_class(eps)

    def visit(addr, Xi, ep):
        state["count"] += 1
        bad, m = _node_traces(Xi, ep, e)
        for p in bad:
            t = edge_curve_trace(normalized_fractions(Xi), ep, p).abs_trace
            state["witnesses"].append({"address": format_address(addr), "pair": list(p),
                                       "abs_trace": t})
        if m < state["min"]:
            state["min"], state["min_at"] = m, format_address(addr)

    zeros = _walk(X, eps, depth, visit)
    return {"depth": depth, "triangulations": state["count"], "curves": 6 * state["count"],
            "min_abs_trace": state["min"], "min_at": state["min_at"],
            "non_hyperbolic": state["witnesses"],
            "non_admissible": [{"address": format_address(a), "edge": e} for a, e in zeros]}


def e0_separation_check(X, eps):
    eps = check_signs(eps)
    if euler_class(eps) != 0:
        raise Unsupported("e0_separation_check needs Euler class 0")
    label = classify(X, eps)
    opposite, same = {}, {}
    for p in PAIRS:
        res = edge_curve_trace(X, eps, p)
        (opposite if eps[p[0] - 1] != eps[p[1] - 1] else same)[p] = res
    return {"label": label, "opposite": opposite, "same": same,
            "opposite_all_hyperbolic": all(r.hyperbolic for r in opposite.values()),
            "same_non_hyperbolic": [p for p, r in same.items() if not r.hyperbolic],
            "edges": {p: edge_of_pair(*p) for p in PAIRS}}
