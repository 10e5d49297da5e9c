"""The compiled kernels and the pure-Python reference must agree bit for bit."""
import os
import subprocess
import sys

import numpy as np
import pytest

from parorb import _pykernels as py
from parorb import kernels
from parorb.corpus import corpus_groups

try:
    from parorb import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_c = pytest.mark.skipif(cy is None, reason="compiled extension not built")
rng = np.random.default_rng(2024)


def random_perms(n, degree):
    return np.array([rng.permutation(degree) for _ in range(n)], dtype=np.int64)


def test_backend_selected():
    assert kernels.BACKEND in {"cython", "python"}
    if cy is not None:
        assert kernels.BACKEND == "cython"


def test_pure_python_override():
    code = "from parorb import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, PARORB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_c
@pytest.mark.parametrize("name", ["S4", "D6", "A4", "C8"])
def test_perm_mul_table(name):
    G = corpus_groups()[name]
    elems = np.array(G.descriptors, dtype=np.int64)
    assert np.array_equal(py.perm_mul_table(elems), cy.perm_mul_table(elems))
    assert np.array_equal(py.perm_mul_table(elems), G.table)


@needs_c
@pytest.mark.parametrize("na, nh", [(3, 2), (7, 3), (4, 4), (1, 5)])
def test_semidirect_mul_table(na, nh):
    a_add = np.array([[(i + j) % na for j in range(na)] for i in range(na)], dtype=np.int64)
    H = corpus_groups()[f"C{nh}"] if nh in (2, 3, 4, 5) else None
    h_mul = H.table
    act = np.array([[(a * pow(-1, h)) % na for a in range(na)] for h in range(nh)], dtype=np.int64)
    assert np.array_equal(py.semidirect_mul_table(a_add, act, h_mul), cy.semidirect_mul_table(a_add, act, h_mul))


@needs_c
@pytest.mark.parametrize("name", ["S4", "Z7:Z3", "D5"])
def test_expand_and_traces(name):
    G = corpus_groups()[name]
    order, parent, via = G.bfs_tree
    ngen = len(G.generators)
    for dim, level in [(1, 1), (3, 6), (5, 12)]:
        gp = random_perms(ngen, dim)
        gt = rng.integers(0, level, size=(ngen, dim), dtype=np.int64)
        a = py.expand_monomial(order, parent, via, gp, gt, level)
        b = cy.expand_monomial(order, parent, via, gp, gt, level)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))
        assert np.array_equal(py.monomial_traces(*a, level), cy.monomial_traces(*b, level))


@needs_c
def test_kron_monomial():
    n, d1, d2, level = 20, 3, 4, 12
    p1, p2 = random_perms(n, d1), random_perms(n, d2)
    t1 = rng.integers(0, level, size=(n, d1), dtype=np.int64)
    t2 = rng.integers(0, level, size=(n, d2), dtype=np.int64)
    a = py.kron_monomial(p1, t1, p2, t2, level)
    b = cy.kron_monomial(p1, t1, p2, t2, level)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))


def test_kron_matches_dense_kron():
    n, d1, d2, level = 5, 2, 3, 6
    p1, p2 = random_perms(n, d1), random_perms(n, d2)
    t1 = rng.integers(0, level, size=(n, d1), dtype=np.int64)
    t2 = rng.integers(0, level, size=(n, d2), dtype=np.int64)
    perm, twist = kernels.kron_monomial(p1, t1, p2, t2, level)
    z = np.exp(2j * np.pi / level)

    def dense(p, t):
        M = np.zeros((len(p), len(p)), dtype=complex)
        for k, pk in enumerate(p):
            M[pk, k] = z ** t[pk]
        return M

    for g in range(n):
        assert np.allclose(dense(perm[g], twist[g]), np.kron(dense(p1[g], t1[g]), dense(p2[g], t2[g])))
