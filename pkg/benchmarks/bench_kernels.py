"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from flexigraph import _backend
from flexigraph.cosetenum import p_presentation_text, parse_presentation, todd_coxeter
from flexigraph.graphs import build_delta, edge_girth_profile, girth, split, two_factor
from flexigraph.nilq import build_machine


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    try:
        from flexigraph import _ckernels  # noqa: F401
    except ImportError:
        print("compiled extension not built; only the Python backend is available")
        backends = ["python"]
    else:
        backends = ["cython", "python"]

    p3 = parse_presentation(p_presentation_text(3))
    m = build_machine(3)
    d = build_delta(m)
    gam = split(d.graph, two_factor(m, d)).graph
    g = girth(gam)

    cases = {
        "todd_coxeter P(l=3), 5832 cosets": lambda: todd_coxeter(p3),
        "girth Gamma_3, 5832 vertices": lambda: girth(gam),
        "girth-cycle counts Gamma_3": lambda: edge_girth_profile(gam, g),
    }
    original = _backend.name
    results = {}
    for b in backends:
        _backend.use(b)
        for name, fn in cases.items():
            results[name, b] = _time(fn, args.repeat)
    _backend.use(original)

    print(f"{'kernel':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name in cases:
        row = [results[name, b] for b in backends]
        speed = f"{row[1] / row[0]:8.1f}x" if len(row) == 2 else ""
        print(f"{name:40s} " + " ".join(f"{t:9.3f}s" for t in row) + "  " + speed)


if __name__ == "__main__":
    main()
