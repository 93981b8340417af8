import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ihamilton import _pykernels, kernels
from ihamilton.euler import _kernel_inputs, grid_transitions
from ihamilton.families import IParams, XParams, i_graph, x_graph

_ckernels = pytest.importorskip("ihamilton._ckernels")


def _ham_args(g):
    ptr, adj = [0], []
    for v in range(g.vertex_count):
        adj.extend(w for w in g.neighbors(v) if w != v)
        ptr.append(len(adj))
    return g.vertex_count, ptr, adj


def _euler_args(p):
    x = x_graph(p)
    slot_vertex, vslots = _kernel_inputs(x, grid_transitions(p))
    return x.vertex_count, slot_vertex, vslots, [-1] * x.edge_count


def test_compiled_backend_selected_by_default():
    if os.environ.get("IHAMILTON_PURE_PYTHON"):
        pytest.skip("fallback forced by the environment")
    assert kernels.BACKEND == "cython"


def test_environment_forces_python_fallback():
    code = "from ihamilton import kernels; print(kernels.BACKEND)"
    env = {**os.environ, "IHAMILTON_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@settings(max_examples=60, deadline=None)
@given(n=st.integers(3, 11), data=st.data())
def test_ham_search_parity(n, data):
    p = data.draw(st.integers(1, n - 1))
    q = data.draw(st.integers(1, n - 1).filter(lambda q: 2 * q != n))
    if 2 * p == n:
        p = 1
    args = _ham_args(i_graph(IParams(n, p, q)))
    assert _pykernels.ham_search(*args) == _ckernels.ham_search(*args)


@settings(max_examples=40, deadline=None)
@given(s=st.integers(2, 6), t=st.integers(1, 4), data=st.data())
def test_euler_search_parity(s, t, data):
    p = XParams(s, t, data.draw(st.integers(0, s - 1)))
    args = _euler_args(p)
    found_py, found_c = [], []
    out_py = _pykernels.euler_search(*args, lambda e: found_py.append(tuple(e)) or False)
    out_c = _ckernels.euler_search(*args, lambda e: found_c.append(tuple(e)) or False)
    assert out_py[1:] == out_c[1:]
    assert found_py == found_c


def test_node_limit_parity():
    args = _ham_args(i_graph(IParams(11, 1, 2)))
    py, c = _pykernels.ham_search(*args, 100), _ckernels.ham_search(*args, 100)
    assert py == c and py[2] is False
