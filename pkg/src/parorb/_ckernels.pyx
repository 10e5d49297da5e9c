# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels; same contracts as ``parorb._pykernels``."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def perm_mul_table(perms):
    cdef i64[:, ::1] P = np.ascontiguousarray(perms, dtype=np.int64)
    cdef Py_ssize_t n = P.shape[0], deg = P.shape[1], i, j, k
    index = {np.asarray(P[i]).tobytes(): i for i in range(n)}
    out_arr = np.empty((n, n), dtype=np.int64)
    cdef i64[:, ::1] T = out_arr
    buf_arr = np.empty(deg, dtype=np.int64)
    cdef i64[::1] buf = buf_arr
    for i in range(n):
        for j in range(n):
            for k in range(deg):
                buf[k] = P[i, P[j, k]]
            T[i, j] = index[buf_arr.tobytes()]
    return out_arr


def semidirect_mul_table(a_add, act, h_mul):
    cdef i64[:, ::1] AA = np.ascontiguousarray(a_add, dtype=np.int64)
    cdef i64[:, ::1] ACT = np.ascontiguousarray(act, dtype=np.int64)
    cdef i64[:, ::1] HM = np.ascontiguousarray(h_mul, dtype=np.int64)
    cdef Py_ssize_t na = AA.shape[0], nh = HM.shape[0], a, h, a2, h2
    cdef i64 base
    out_arr = np.empty((na * nh, na * nh), dtype=np.int64)
    cdef i64[:, ::1] T = out_arr
    for a in range(na):
        for h in range(nh):
            for a2 in range(na):
                base = AA[a, ACT[h, a2]] * nh
                for h2 in range(nh):
                    T[a * nh + h, a2 * nh + h2] = base + HM[h, h2]
    return out_arr


def expand_monomial(order, parent, via, gen_perm, gen_twist, i64 level):
    cdef i64[::1] O = np.ascontiguousarray(order, dtype=np.int64)
    cdef i64[::1] PA = np.ascontiguousarray(parent, dtype=np.int64)
    cdef i64[::1] VI = np.ascontiguousarray(via, dtype=np.int64)
    gp_arr = np.ascontiguousarray(gen_perm, dtype=np.int64)
    gt_arr = np.ascontiguousarray(gen_twist, dtype=np.int64)
    cdef Py_ssize_t n = O.shape[0]
    cdef Py_ssize_t dim = gp_arr.shape[1] if gp_arr.ndim == 2 else 0
    perm_arr = np.empty((n, dim), dtype=np.int64)
    twist_arr = np.empty((n, dim), dtype=np.int64)
    if n == 0 or dim == 0:
        return perm_arr, twist_arr
    cdef i64[:, ::1] GP = gp_arr
    cdef i64[:, ::1] GT = gt_arr
    cdef i64[:, ::1] XP = perm_arr
    cdef i64[:, ::1] XT = twist_arr
    cdef Py_ssize_t idx, k, x, p, s, e = O[0]
    cdef i64 mid, tgt
    for k in range(dim):
        XP[e, k] = k
        XT[e, k] = 0
    for idx in range(1, n):
        x = O[idx]
        p = PA[x]
        s = VI[x]
        for k in range(dim):
            mid = GP[s, k]
            tgt = XP[p, mid]
            XP[x, k] = tgt
            XT[x, tgt] = (GT[s, mid] + XT[p, tgt]) % level
    return perm_arr, twist_arr


def monomial_traces(perm, twist, i64 level):
    cdef i64[:, ::1] P = np.ascontiguousarray(perm, dtype=np.int64)
    cdef i64[:, ::1] T = np.ascontiguousarray(twist, dtype=np.int64)
    cdef Py_ssize_t n = P.shape[0], dim = P.shape[1], g, k
    out_arr = np.zeros((n, level), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    for g in range(n):
        for k in range(dim):
            if P[g, k] == k:
                out[g, T[g, k]] += 1
    return out_arr


def kron_monomial(p1, t1, p2, t2, i64 level):
    cdef i64[:, ::1] A = np.ascontiguousarray(p1, dtype=np.int64)
    cdef i64[:, ::1] TA = np.ascontiguousarray(t1, dtype=np.int64)
    cdef i64[:, ::1] B = np.ascontiguousarray(p2, dtype=np.int64)
    cdef i64[:, ::1] TB = np.ascontiguousarray(t2, dtype=np.int64)
    cdef Py_ssize_t n = A.shape[0], d1 = A.shape[1], d2 = B.shape[1], g, i, j
    perm_arr = np.empty((n, d1 * d2), dtype=np.int64)
    twist_arr = np.empty((n, d1 * d2), dtype=np.int64)
    cdef i64[:, ::1] XP = perm_arr
    cdef i64[:, ::1] XT = twist_arr
    for g in range(n):
        for i in range(d1):
            for j in range(d2):
                XP[g, i * d2 + j] = A[g, i] * d2 + B[g, j]
                XT[g, i * d2 + j] = (TA[g, i] + TB[g, j]) % level
    return perm_arr, twist_arr
