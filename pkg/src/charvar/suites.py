"""Batch verification suites.

Each suite takes a sample ``count`` and a ``numpy.random.Generator`` and
returns a JSON-ready dict with a ``passed`` flag and the counts behind it.
Output depends only on the inputs (no timings), so equal seeds give identical
reports.
"""
import math
from fractions import Fraction

import numpy as np

from . import algorithms as alg
from .coords import (CUSP_PUNCTURES, allowed_signs, classify, gti_satisfied,
                     projectively_equal, section, sign_patterns, signs_at_cusps, triangle_coords)
from .dynamics import (OmegaPoint, central_character, ellipse_k, omega_point_on, random_character,
                       relation_residual, rotation_angle_exact, rotation_number_estimate, s3, s4,
                       twist34, twist34_orbit, vieta_flip)
from .errors import CharvarError
from .scalars import to_json
from .surface import (EDGE_CURVES, EDGES, ONE_SIDED_SQUARES, PERIPHERAL_CURVES, canonical_model,
                      dual_pair, peripheral_curve)
from .switches import switch_coords_via_flips, triangle_switch
from .traces import (PAIRS, all_hyperbolic, crossed_signs_mixed, curve_trace, dominate_compare,
                     edge_curve_trace, fuchsian_edge_trace)


# ---------------------------------------------------------------- shared helpers

def _random_lam(rng, top=64):
    return {e: Fraction(int(rng.integers(1, top + 1)), int(rng.integers(1, top + 1))) for e in EDGES}


def admissible_charts(e, count, rng):
    """``count`` triples (X, eps, l): exact X, class-e signs, an admissible
    switch index, on charts with no vanishing cusp entry."""
    pats = sign_patterns(e)
    out = []
    while len(out) < count:
        X = alg.sample_coords(rng)
        eps = pats[int(rng.integers(len(pats)))]
        l = int(rng.integers(1, 5))
        try:
            classify(X, eps)
            triangle_switch(X, eps, l)
        except CharvarError:
            continue
        out.append((X, eps, l))
    return out


# ---------------------------------------------------------------- suites

def peripheral_check(count, rng):
    """Peripheral curves are parabolic with the sign predicted by the cusp
    entries, on random exact lambda lengths and all sign vectors."""
    model = canonical_model()
    pats = sign_patterns()
    charts = bad = 0
    while charts < count:
        lam = _random_lam(rng)
        eps = pats[int(rng.integers(len(pats)))]
        X = triangle_coords(lam)
        try:
            predicted = signs_at_cusps(X, eps)
        except CharvarError:
            continue
        charts += 1
        for p, v in enumerate(CUSP_PUNCTURES):
            res = curve_trace(peripheral_curve(model, v), lam, eps)
            if res.abs_trace != 2 or res.kind != "parabolic" or res.parabolic_sign != predicted[p]:
                bad += 1
    return {"charts": charts, "mismatches": bad, "passed": bad == 0}


def suite_components(count, rng):
    counts, degenerate = alg.component_census(count, rng)
    allowed = {(e, s) for e in (0, 1, -1) for s in allowed_signs(e)}
    violations = sum(n for key, n in counts.items() if key not in allowed)
    missing = sorted(allowed - set(counts))
    per = peripheral_check(max(1, count // 10), rng)
    return {
        "draws_per_pattern": count,
        "pairs": [{"euler": e, "signs": list(s), "count": counts[(e, s)]} for e, s in sorted(counts)],
        "allowed_pairs": len(allowed), "violations": violations,
        "missing": [{"euler": e, "signs": list(s)} for e, s in missing],
        "degenerate": degenerate, "peripheral": per,
        "passed": violations == 0 and not missing and per["passed"],
    }


def flip_oracle_check(count, rng, tol=1e-9):
    """Closed-form switches against four flips on the cover, from the float section."""
    report = {}
    ok = True
    for e in (0, 1, -1):
        bad = 0
        for X, eps, l in admissible_charts(e, count, rng):
            closed = triangle_switch(X, eps, l)
            try:
                flips = switch_coords_via_flips(section(X), eps, l, tol)
            except CharvarError:
                bad += 1
                continue
            lx = tuple(float(x) for x in closed.X)
            if flips.eps != closed.eps or not projectively_equal(flips.X, lx, tol):
                bad += 1
        report[str(e)] = {"samples": count, "mismatches": bad}
        ok &= bad == 0
    report["passed"] = ok
    return report


def involution_check(count, rng):
    """Switching twice along the same triangle returns the chart exactly."""
    report = {}
    ok = True
    for e in (0, 1, -1):
        bad = 0
        for X, eps, l in admissible_charts(e, count, rng):
            r = triangle_switch(X, eps, l)
            back = triangle_switch(r.X, r.eps, l)
            if back.eps != eps or not projectively_equal(back.X, X):
                bad += 1
        report[str(e)] = {"samples": count, "failures": bad}
        ok &= bad == 0
    report["passed"] = ok
    return report


def suite_switch_involution(count, rng):
    report = involution_check(count, rng)
    flips = flip_oracle_check(count, rng)
    report["flip_oracle"] = flips
    report["passed"] = report["passed"] and flips["passed"]
    return report


def anchor_check():
    """X = (1,1,1,2), t_1 and t_2 negative: the edge-d curve keeps trace 3/2
    across the switch along t_4."""
    X, eps = (1, 1, 1, 2), (-1, -1, 1, 1)
    pair = dual_pair("d")
    before = edge_curve_trace(X, eps, pair).abs_trace
    r = triangle_switch(X, eps, 4)
    after = edge_curve_trace(r.X, r.eps, pair).abs_trace
    return {"before": to_json(before), "after": to_json(after),
            "passed": before == after == Fraction(3, 2)}


def suite_invariance(count, rng, convention="engine"):
    report = {}
    ok = True
    for e in (0, 1, -1):
        bad_label = bad_trace = 0
        for X, eps, l in admissible_charts(e, count, rng):
            lab = classify(X, eps)
            r = triangle_switch(X, eps, l)
            lab2 = classify(r.X, r.eps)
            if (lab.euler, lab.signs) != (lab2.euler, lab2.signs):
                bad_label += 1
            for p in PAIRS:
                if l in p:
                    continue
                t0 = edge_curve_trace(X, eps, p, convention).abs_trace
                t1 = edge_curve_trace(r.X, r.eps, p, convention).abs_trace
                if t0 != t1:
                    bad_trace += 1
        report[str(e)] = {"samples": count, "label_changes": bad_label, "trace_changes": bad_trace}
        ok &= bad_label == bad_trace == 0
    report["anchor"] = anchor_check()
    report["passed"] = ok and report["anchor"]["passed"]
    return report


def _boundary_sample(rng):
    """X on the GTI boundary X_i = sum of the others, nudged by a tiny amount."""
    X = list(alg.sample_coords(rng))
    i = int(rng.integers(4))
    rest = sum(X) - X[i]
    nudge = rest / 2 ** 40 * (1 if rng.integers(2) else -1)
    X[i] = rest + nudge
    return tuple(X)


def suite_gti_equivalence(count, rng, convention="engine", boundary=100):
    """All six edge-curves hyperbolic iff GTI fails (Euler class +-1)."""
    pats = sign_patterns(1) + sign_patterns(-1)
    mismatches, first = 0, None
    total = count + boundary
    for n in range(total):
        X = alg.sample_coords(rng) if n < count else _boundary_sample(rng)
        eps = pats[n % len(pats)]
        if all_hyperbolic(X, eps, convention) == gti_satisfied(X):
            mismatches += 1
            if first is None:
                first = {"X": [to_json(x) for x in X], "signs": list(eps),
                         "gti": gti_satisfied(X)}
    return {"convention": convention, "samples": count, "boundary_samples": boundary,
            "mismatches": mismatches, "first_mismatch": first, "passed": mismatches == 0}


REDUCTION_COMPONENTS = [(1, (1, 1, 1)), (-1, (-1, -1, -1))] + [(0, s) for s in allowed_signs(0)]


def suite_reduction_termination(count, rng, max_steps=1000):
    rows = []
    ok = True
    for e, s in REDUCTION_COMPONENTS:
        outcomes, invalid, u_bad, label_bad, longest = {}, 0, 0, 0, 0
        escape_checked, escape_bad = 0, 0
        for _ in range(count):
            X, eps = alg.sample_component(e, s, rng)
            log, diag = alg.trace_reduce(X, eps, max_steps)
            outcomes[log.outcome] = outcomes.get(log.outcome, 0) + 1
            invalid += not alg.witness_valid(log)
            longest = max(longest, len(log.steps) - 1)
            if any(st.X is not None and classify(st.X, st.eps)[:2] != (e, s) for st in log.steps):
                label_bad += 1
            if e == 0:
                u = [r["u_exact"] for r in diag.rows]
                u_bad += any(b >= a for a, b in zip(u, u[1:]))
            else:
                c, bad = alg.escape_check(diag)
                escape_checked += c
                escape_bad += len(bad)
        row = {"euler": e, "signs": list(s), "runs": count, "outcomes": dict(sorted(outcomes.items())),
               "invalid_witnesses": invalid, "longest_run": longest, "label_changes": label_bad}
        if e == 0:
            row["u_not_decreasing"] = u_bad
        else:
            row["escape_transitions"] = escape_checked
            row["escape_violations"] = escape_bad
        rows.append(row)
        ok &= invalid == 0 and u_bad == 0 and label_bad == 0
    return {"components": rows, "passed": ok}


HYPERBOLIC_COMPONENTS = [(e, s) for e in (1, -1) for s in allowed_signs(e) if s.count(e) == 2]


def suite_hyperbolicity_scan(count, rng, depth=6):
    rows = []
    ok = True
    for e, s in HYPERBOLIC_COMPONENTS:
        found, smallest, fewest = 0, math.inf, math.inf
        for _ in range(count):
            X, eps = alg.sample_component(e, s, rng)
            rep = alg.hyperbolicity_scan(X, eps, depth)
            found += len(rep["non_hyperbolic"])
            smallest = min(smallest, rep["min_abs_trace"])
            fewest = min(fewest, rep["triangulations"])
        rows.append({"euler": e, "signs": list(s), "samples": count, "non_hyperbolic": found,
                     "fewest_triangulations": fewest, "min_abs_trace": round(smallest, 9)})
        ok &= found == 0 and fewest >= 1000
    return {"depth": depth, "components": rows, "passed": ok}


def suite_e0_dichotomy(count, rng):
    pats = sign_patterns(0)
    opposite_bad = no_witness = degenerate = 0
    n = 0
    while n < count:
        X = alg.sample_coords(rng)
        eps = pats[int(rng.integers(len(pats)))]
        try:
            signs_at_cusps(X, eps)
        except CharvarError:
            degenerate += 1
            continue
        n += 1
        for p in PAIRS:
            if eps[p[0] - 1] != eps[p[1] - 1] and not edge_curve_trace(X, eps, p).hyperbolic:
                opposite_bad += 1
        log, _ = alg.trace_reduce(X, eps)
        if log.outcome != "FoundSqGTIWitness" or not alg.witness_valid(log):
            no_witness += 1
        else:
            i, j = log.witness[0]
            last = log.steps[-1].eps
            no_witness += last[i - 1] != last[j - 1]
    return {"samples": count, "opposite_non_hyperbolic": opposite_bad,
            "missing_same_sign_witness": no_witness, "degenerate_skipped": degenerate,
            "passed": opposite_bad == 0 and no_witness == 0}


DOMINATION_CURVES = (list(EDGE_CURVES.values()) + list(ONE_SIDED_SQUARES.values())
                     + list(PERIPHERAL_CURVES.values()))


def suite_domination(count, rng, tol=1e-9):
    """|tr| under eps never exceeds |tr| under all-positive signs; strictness
    is compared with the rule 'strict iff the curve meets a negative triangle'
    and with the rule 'strict iff it crosses triangles of both signs'."""
    pats = [p for p in sign_patterns() if abs(sum(p)) != 4]  # non-Fuchsian
    exceed = exceed_float = negative_rule = mixed_rule = 0
    closed_exceed = closed_not_strict = 0
    first = None
    for _ in range(count):
        lam = _random_lam(rng)
        eps = pats[int(rng.integers(len(pats)))]
        desc = DOMINATION_CURVES[int(rng.integers(len(DOMINATION_CURVES)))]
        t_eps, t_pos, meets_negative = dominate_compare(lam, eps, desc)
        if t_eps > t_pos:
            exceed += 1
        if meets_negative != (t_eps < t_pos):
            negative_rule += 1
            if first is None:
                first = {"curve": desc.name, "signs": list(eps),
                         "abs_trace": to_json(t_eps), "fuchsian_abs_trace": to_json(t_pos)}
        if crossed_signs_mixed(eps, desc) != (t_eps < t_pos):
            mixed_rule += 1
        lam_f = {e: float(v) for e, v in lam.items()}
        f_eps, f_pos, _ = dominate_compare(lam_f, eps, desc, tol)
        if f_eps > f_pos * (1 + tol):
            exceed_float += 1
        # closed forms on the same chart: every edge-curve
        X = triangle_coords(lam)
        try:
            signs_at_cusps(X, eps)
        except CharvarError:
            continue
        for p in PAIRS:
            a = edge_curve_trace(X, eps, p).abs_trace
            b = fuchsian_edge_trace(X, p).abs_trace
            closed_exceed += a > b
            closed_not_strict += not a < b
    return {"samples": count, "exceed_exact": exceed, "exceed_float": exceed_float,
            "closed_form_exceed": closed_exceed, "closed_form_not_strict": closed_not_strict,
            "negative_triangle_rule_violations": negative_rule,
            "mixed_sign_rule_violations": mixed_rule, "first_rule_violation": first,
            "passed": exceed == exceed_float == closed_exceed == closed_not_strict == negative_rule == 0}


def _random_omega(rng):
    """Exact slice point with c, d positive and != 1 (so no switch divides by 0)."""
    a = Fraction(int(rng.integers(1, 100)), 100)
    while True:
        c = Fraction(int(rng.integers(1, 1000)), int(rng.integers(1, 1000)))
        d = Fraction(int(rng.integers(1, 1000)), int(rng.integers(1, 1000)))
        if c != 1 and d != 1:
            return OmegaPoint(a, c, d)


ROTATION_KS = (-1.5, -0.5, 0.3, 1.2, 1.8)


def rotation_check(k, starts=10, steps=20000):
    ests = []
    for j in range(starts):
        p = omega_point_on(k, 2 * math.pi * j / starts + 0.1)
        ests.append(rotation_number_estimate(twist34_orbit(p, steps)))
    return {"k": k, "spread": max(ests) - min(ests), "mean": sum(ests) / len(ests),
            "predicted": rotation_angle_exact(k)}


def suite_omega_dynamics(count, rng):
    bad = 0
    for _ in range(count):
        p = _random_omega(rng)
        k = ellipse_k(p)
        for f in (s3, s4, twist34):
            if ellipse_k(f(p)) != k:
                bad += 1
    rot = [rotation_check(k) for k in ROTATION_KS]
    rot_ok = all(r["spread"] < 1e-4 and abs(r["mean"] - r["predicted"]) < 1e-4 for r in rot)
    for r in rot:
        for key in ("spread", "mean", "predicted"):
            r[key] = round(r[key], 9)
    return {"points": count, "k_changes": bad, "rotation": rot, "passed": bad == 0 and rot_ok}


def suite_trace_variety(count, rng):
    bad_flip = bad_central = off = 0
    for _ in range(count):
        tc = random_character(rng)
        off += relation_residual(tc) != 0
        for v in "abcd":
            bad_flip += relation_residual(vieta_flip(tc, v)) != 0
            bad_flip += vieta_flip(vieta_flip(tc, v), v) != tc
        for g in "ABC":
            bad_central += relation_residual(central_character(tc, g)) != 0
    per = peripheral_check(count, rng)
    return {"points": count, "off_variety": off, "vieta_failures": bad_flip,
            "central_failures": bad_central, "peripheral": per,
            "passed": off == bad_flip == bad_central == 0 and per["passed"]}


# name -> (function, default count)
SUITES = {
    "components": (suite_components, 10 ** 4),
    "switch-involution": (suite_switch_involution, 10 ** 3),
    "invariance": (suite_invariance, 10 ** 3),
    "gti-equivalence": (suite_gti_equivalence, 10 ** 4),
    "reduction-termination": (suite_reduction_termination, 10 ** 3),
    "hyperbolicity-scan": (suite_hyperbolicity_scan, 10 ** 2),
    "e0-dichotomy": (suite_e0_dichotomy, 10 ** 4),
    "domination": (suite_domination, 10 ** 3),
    "omega-dynamics": (suite_omega_dynamics, 10 ** 3),
    "trace-variety": (suite_trace_variety, 10 ** 3),
}


def run_suite(name, count=None, seed=0, convention="engine"):
    fn, default = SUITES[name]
    rng = np.random.default_rng(seed)
    kwargs = {"convention": convention} if name in ("gti-equivalence", "invariance") else {}
    report = fn(default if count is None else count, rng, **kwargs)
    return {"suite": name, "seed": seed, **report}
