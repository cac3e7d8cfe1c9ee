# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hot kernels; drop-in twin of ``hookdet._purekernels``."""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_ITEM
from cpython.ref cimport Py_INCREF

from hookdet.errors import ExplosionGuard

BACKEND = "cython"


cdef inline tuple _mono_mul(tuple a, tuple b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0:
        return b
    if nb == 0:
        return a
    cdef Py_ssize_t i = 0, j = 0, k = 0
    cdef long long ca, cb
    cdef object obj
    # worst case: no shared variables
    cdef list buf = [None] * (na + nb)
    while i < na and j < nb:
        ca = <object>PyTuple_GET_ITEM(a, i)
        cb = <object>PyTuple_GET_ITEM(b, j)
        if ca < cb:
            buf[k] = <object>PyTuple_GET_ITEM(a, i)
            buf[k + 1] = <object>PyTuple_GET_ITEM(a, i + 1)
            i += 2
        elif cb < ca:
            buf[k] = <object>PyTuple_GET_ITEM(b, j)
            buf[k + 1] = <object>PyTuple_GET_ITEM(b, j + 1)
            j += 2
        else:
            buf[k] = <object>PyTuple_GET_ITEM(a, i)
            buf[k + 1] = <long long>(<object>PyTuple_GET_ITEM(a, i + 1)) + \
                <long long>(<object>PyTuple_GET_ITEM(b, j + 1))
            i += 2
            j += 2
        k += 2
    while i < na:
        buf[k] = <object>PyTuple_GET_ITEM(a, i)
        i += 1
        k += 1
    while j < nb:
        buf[k] = <object>PyTuple_GET_ITEM(b, j)
        j += 1
        k += 1
    cdef tuple out = PyTuple_New(k)
    for i in range(k):
        obj = buf[i]
        Py_INCREF(obj)
        PyTuple_SET_ITEM(out, i, obj)
    return out


def mono_mul(tuple a, tuple b):
    return _mono_mul(a, b)


def add_terms(dict a, dict b, scale=1):
    cdef dict out = dict(a)
    cdef object m, c, v
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        elif m in out:
            del out[m]
    return out


cdef void _addmul(dict acc, dict a, dict b, object scale) except *:
    cdef object ma, ca, mb, cb, m
    cdef list bl = list(b.items())
    cdef Py_ssize_t nb = len(bl), t
    cdef tuple pair
    for ma, ca in a.items():
        ca = ca * scale
        for t in range(nb):
            pair = <tuple>bl[t]
            m = _mono_mul(<tuple>ma, <tuple>pair[0])
            acc[m] = acc.get(m, 0) + ca * pair[1]


def addmul_into(dict acc, dict a, dict b, scale=1):
    _addmul(acc, a, b, scale)


def mul_terms(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict acc = {}
    _addmul(acc, a, b, 1)
    return {m: c for m, c in acc.items() if c}


def strip_zeros(dict terms):
    return {m: c for m, c in terms.items() if c}


def bareiss_det(rows):
    cdef Py_ssize_t n = len(rows), k, r, i, j
    if n == 0:
        return 1
    cdef list a = [list(row) for row in rows]
    cdef list rk, ri
    cdef object pivot, prev = 1, f
    cdef int sign = 1
    for k in range(n - 1):
        if (<list>a[k])[k] == 0:
            for r in range(k + 1, n):
                if (<list>a[r])[k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rk = <list>a[k]
        pivot = rk[k]
        for i in range(k + 1, n):
            ri = <list>a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * (<list>a[n - 1])[n - 1]


cdef class _VDSearch:
    cdef Py_ssize_t n
    cdef list masks
    cdef list out
    cdef long long nodes, max_nodes
    cdef list sigma, choice
    cdef list used

    def __init__(self, masks, long long max_nodes):
        self.n = len(masks)
        self.masks = [[list(cell) for cell in row] for row in masks]
        self.out = []
        self.nodes = 0
        self.max_nodes = max_nodes
        self.sigma = [0] * self.n
        self.choice = [0] * self.n
        self.used = [False] * self.n

    cdef void place(self, Py_ssize_t i, object occupied) except *:
        cdef list row = <list>self.masks[i]
        cdef list cell
        cdef Py_ssize_t j, p, ncell
        cdef object mask
        for j in range(self.n):
            if self.used[j]:
                continue
            cell = <list>row[j]
            ncell = len(cell)
            for p in range(ncell):
                self.nodes += 1
                if self.nodes > self.max_nodes:
                    raise ExplosionGuard(
                        f"vertex-disjoint search exceeded {self.max_nodes} candidates")
                mask = cell[p]
                if mask & occupied:
                    continue
                self.sigma[i] = j
                self.choice[i] = p
                if i + 1 == self.n:
                    self.out.append((tuple(self.sigma), tuple(self.choice)))
                else:
                    self.used[j] = True
                    self.place(i + 1, occupied | mask)
                    self.used[j] = False


def vd_search(masks, max_nodes):
    if len(masks) == 0:
        return [((), ())]
    cdef _VDSearch s = _VDSearch(masks, max_nodes)
    s.place(0, 0)
    return s.out


def eval_terms(dict terms, dict values):
    cdef object total = 0, c, v
    cdef tuple m
    cdef Py_ssize_t t, nm
    cdef long e
    for key, coeff in terms.items():
        m = <tuple>key
        c = coeff
        nm = len(m)
        for t in range(0, nm, 2):
            v = values[<object>PyTuple_GET_ITEM(m, t)]
            e = <object>PyTuple_GET_ITEM(m, t + 1)
            c = c * v if e == 1 else c * v ** e
        total = total + c
    return total
