# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops in ``_pykernels``."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


def canonical_encoding(a, b):
    cdef Py_ssize_t d = len(a)
    cdef Py_ssize_t i, j, start, head, nxt, u, v, w, x
    cdef int state, have_best = 0
    cdef long *pa = <long *> PyMem_Malloc(d * sizeof(long))
    cdef long *pb = <long *> PyMem_Malloc(d * sizeof(long))
    cdef long *label = <long *> PyMem_Malloc(d * sizeof(long))
    cdef long *order = <long *> PyMem_Malloc(d * sizeof(long))
    cdef long *cand = <long *> PyMem_Malloc(2 * d * sizeof(long))
    cdef long *best = <long *> PyMem_Malloc(2 * d * sizeof(long))
    cdef long *best_label = <long *> PyMem_Malloc(d * sizeof(long))
    if not (pa and pb and label and order and cand and best and best_label):
        raise MemoryError()
    try:
        for i in range(d):
            pa[i] = a[i]
            pb[i] = b[i]
        for start in range(d):
            for i in range(d):
                label[i] = -1
            order[0] = start
            label[start] = 0
            nxt = 1
            head = 0
            state = 0 if have_best else -1
            while head < nxt:
                u = order[head]
                v = pa[u]
                if label[v] < 0:
                    label[v] = nxt
                    order[nxt] = v
                    nxt += 1
                w = pb[u]
                if label[w] < 0:
                    label[w] = nxt
                    order[nxt] = w
                    nxt += 1
                x = label[v]
                cand[head] = x
                if state == 0:
                    if x < best[head]:
                        state = -1
                    elif x > best[head]:
                        state = 1
                        break
                head += 1
            if state == 1:
                continue
            if nxt != d:
                raise ValueError("permutation pair is not transitive")
            for j in range(d):
                cand[d + j] = label[pb[order[j]]]
            if state == 0:
                for j in range(d, 2 * d):
                    if cand[j] != best[j]:
                        break
                else:
                    continue
                if cand[j] > best[j]:
                    continue
            for j in range(2 * d):
                best[j] = cand[j]
            for j in range(d):
                best_label[j] = label[j]
            have_best = 1
        return (tuple([best[j] for j in range(2 * d)]),
                tuple([best_label[j] for j in range(d)]))
    finally:
        PyMem_Free(pa)
        PyMem_Free(pb)
        PyMem_Free(label)
        PyMem_Free(order)
        PyMem_Free(cand)
        PyMem_Free(best)
        PyMem_Free(best_label)


def closure_mod(gens, long long n, Py_ssize_t cap):
    cdef long long a, b, c, d, e, f, g, h, p, q, r, s, code
    cdef long long n2 = n * n
    cdef long long n3 = n2 * n
    cdef long long one = 1 % n
    cdef Py_ssize_t k, m, ngen = len(gens)
    cdef long long *gv = <long long *> PyMem_Malloc(4 * (ngen + 1) * sizeof(long long))
    if not gv:
        raise MemoryError()
    try:
        for k in range(ngen):
            for m in range(4):
                gv[4 * k + m] = gens[k][m] % n
        seen = {one * n3 + one}
        frontier = [one * n3 + one]
        while frontier:
            new = []
            for code in frontier:
                a = code // n3
                b = (code // n2) % n
                c = (code // n) % n
                d = code % n
                for k in range(ngen):
                    e = gv[4 * k]
                    f = gv[4 * k + 1]
                    g = gv[4 * k + 2]
                    h = gv[4 * k + 3]
                    p = (a * e + b * g) % n
                    q = (a * f + b * h) % n
                    r = (c * e + d * g) % n
                    s = (c * f + d * h) % n
                    code2 = p * n3 + q * n2 + r * n + s
                    if code2 not in seen:
                        seen.add(code2)
                        if len(seen) > cap:
                            raise OverflowError(f"closure exceeded cap of {cap} elements")
                        new.append(code2)
            frontier = new
        return seen
    finally:
        PyMem_Free(gv)
