"""Compare the compiled and pure-Python search kernels on the same inputs.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from ihamilton import _pykernels
from ihamilton.euler import _kernel_inputs, grid_transitions
from ihamilton.families import IParams, XParams, i_graph, x_graph

try:
    from ihamilton import _ckernels
except ImportError:
    _ckernels = None

HAM_CASES = [IParams(11, 1, 2), IParams(17, 1, 2), IParams(12, 2, 3), IParams(20, 3, 7)]
EULER_CASES = [XParams(5, 1, 2), XParams(11, 1, 2), XParams(6, 4, 2), XParams(5, 4, 3)]


def _ham_args(params: IParams):
    g = i_graph(params)
    ptr, adj = [0], []
    for v in range(g.vertex_count):
        adj.extend(w for w in g.neighbors(v) if w != v)
        ptr.append(len(adj))
    return g.vertex_count, ptr, adj


def _euler_args(params: XParams):
    x = x_graph(params)
    slot_vertex, vslots = _kernel_inputs(x, grid_transitions(params))
    # count every solution so both backends explore the full tree
    return x.vertex_count, slot_vertex, vslots, [-1] * x.edge_count, lambda _: False


def _time(fn, args, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, out


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'kernel':8} {'instance':12} {'python s':>10} {'cython s':>10} {'speedup':>8}  agree")
    rows = [("ham", str(p), _ham_args(p)) for p in HAM_CASES]
    rows += [("euler", str(p), _euler_args(p)) for p in EULER_CASES]
    for kind, name, call in rows:
        py_fn = _pykernels.ham_search if kind == "ham" else _pykernels.euler_search
        py_t, py_out = _time(py_fn, call, args.repeat)
        if _ckernels is None:
            print(f"{kind:8} {name:12} {py_t:10.4f} {'-':>10} {'-':>8}  -")
            continue
        c_fn = _ckernels.ham_search if kind == "ham" else _ckernels.euler_search
        c_t, c_out = _time(c_fn, call, args.repeat)
        # compare search statistics: (cycle, nodes, completed) or (_, nodes, completed, count)
        agree = py_out[1:] == c_out[1:]
        print(f"{kind:8} {name:12} {py_t:10.4f} {c_t:10.4f} {py_t / max(c_t, 1e-9):8.1f}  {agree}")


if __name__ == "__main__":
    main()
