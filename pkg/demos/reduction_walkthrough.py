"""Follow the trace reduction on a few charts and print what it does.

    python demos/reduction_walkthrough.py
"""
from charvar.algorithms import trace_reduce
from charvar.coords import classify, eps_pair, eps_single, gti_satisfied
from charvar.traces import all_edge_traces

CHARTS = [
    ("e = 1, X_4 dominant", (1, 1, 1, 4), eps_single(4)),
    ("e = 1, GTI holds", (1, 1, 1, 2), eps_single(4)),
    ("e = 0, t_1 and t_2 negative", (1, 1, 1, 2), eps_pair(1, 2)),
    ("e = 1, blocked switch", (1, 1, 2, 3), eps_single(4)),
]


def show(title, X, eps):
    lab = classify(X, eps)
    print(f"== {title}: X={X} eps={eps}")
    print(f"   euler={lab.euler} cusp signs={lab.signs} GTI={gti_satisfied(X)}")
    for pair, r in all_edge_traces(X, eps).items():
        print(f"   pair {pair}: |tr| = {r.abs_trace} ({r.kind})")
    log, _ = trace_reduce(X, eps)
    for n, st in enumerate(log.steps):
        print(f"   step {n}: {st.action} at X ~ {st.X}")
    print(f"   -> {log.outcome} {log.witness}\n")


if __name__ == "__main__":
    for chart in CHARTS:
        show(*chart)
