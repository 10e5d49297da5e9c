"""Pure-Python reference versions of the batch kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same signature and
results; ``parorb.kernels`` picks one at import time.
"""
import numpy as np


def perm_mul_table(perms):
    """Table ``T[i, j] = index of perms[i] o perms[j]`` (apply ``perms[j]`` first)."""
    rows = [tuple(p) for p in np.asarray(perms, dtype=np.int64).tolist()]
    index = {p: i for i, p in enumerate(rows)}
    n = len(rows)
    table = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(rows):
        out = table[i]
        for j, q in enumerate(rows):
            out[j] = index[tuple(p[k] for k in q)]
    return table


def semidirect_mul_table(a_add, act, h_mul):
    """Multiplication of pairs ``(a, h)(a', h') = (a + h.a', h h')``, index ``a * |H| + h``."""
    a_add = np.asarray(a_add, dtype=np.int64).tolist()
    act = np.asarray(act, dtype=np.int64).tolist()
    h_mul = np.asarray(h_mul, dtype=np.int64).tolist()
    na, nh = len(a_add), len(h_mul)
    n = na * nh
    table = np.empty((n, n), dtype=np.int64)
    for a in range(na):
        row_a = a_add[a]
        for h in range(nh):
            out = table[a * nh + h]
            act_h = act[h]
            hm = h_mul[h]
            for a2 in range(na):
                base = row_a[act_h[a2]] * nh
                for h2 in range(nh):
                    out[a2 * nh + h2] = base + hm[h2]
    return table


def expand_monomial(order, parent, via, gen_perm, gen_twist, level):
    """Monomial matrices of every element from generator images.

    ``order`` lists elements breadth first from the identity; element ``x``
    equals ``parent[x] * gens[via[x]]``.  Twists are indexed by target basis
    vector and stored modulo ``level``.
    """
    order = np.asarray(order, dtype=np.int64).tolist()
    parent = np.asarray(parent, dtype=np.int64).tolist()
    via = np.asarray(via, dtype=np.int64).tolist()
    gp = np.asarray(gen_perm, dtype=np.int64).tolist()
    gt = np.asarray(gen_twist, dtype=np.int64).tolist()
    n = len(order)
    dim = len(gp[0]) if gp else 0
    perm = [None] * n
    twist = [None] * n
    e = order[0]
    perm[e] = list(range(dim))
    twist[e] = [0] * dim
    for x in order[1:]:
        p, s = parent[x], via[x]
        sp, st = gp[s], gt[s]
        pp, pt = perm[p], twist[p]
        xp = [0] * dim
        xt = [0] * dim
        for k in range(dim):
            mid = sp[k]
            tgt = pp[mid]
            xp[k] = tgt
            xt[tgt] = (st[mid] + pt[tgt]) % level
        perm[x] = xp
        twist[x] = xt
    return np.array(perm, dtype=np.int64).reshape(n, dim), np.array(twist, dtype=np.int64).reshape(n, dim)


def monomial_traces(perm, twist, level):
    """Trace of each monomial matrix as a coefficient vector in powers of a primitive root."""
    perm = np.asarray(perm, dtype=np.int64).tolist()
    twist = np.asarray(twist, dtype=np.int64).tolist()
    out = np.zeros((len(perm), level), dtype=np.int64)
    for g, (p, t) in enumerate(zip(perm, twist)):
        row = out[g]
        for k, pk in enumerate(p):
            if pk == k:
                row[t[k]] += 1
    return out


def kron_monomial(p1, t1, p2, t2, level):
    """Kronecker product of two families of monomial matrices; basis ``(i, j) -> i * dim2 + j``."""
    p1 = np.asarray(p1, dtype=np.int64).tolist()
    t1 = np.asarray(t1, dtype=np.int64).tolist()
    p2 = np.asarray(p2, dtype=np.int64).tolist()
    t2 = np.asarray(t2, dtype=np.int64).tolist()
    n = len(p1)
    d1 = len(p1[0]) if n else 0
    d2 = len(p2[0]) if n else 0
    perm = np.empty((n, d1 * d2), dtype=np.int64)
    twist = np.empty((n, d1 * d2), dtype=np.int64)
    for g in range(n):
        a, ta, b, tb = p1[g], t1[g], p2[g], t2[g]
        prow, trow = perm[g], twist[g]
        for i in range(d1):
            ai = a[i] * d2
            for j in range(d2):
                prow[i * d2 + j] = ai + b[j]
        for i in range(d1):
            for j in range(d2):
                trow[i * d2 + j] = (ta[i] + tb[j]) % level
    return perm, twist
