# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph and string kernels over CSR adjacency arrays.

Hot loops behind the citation-graph queries: bounded-hop closures, BFS
distance histograms, sorted-set intersection, and edit distance for fuzzy
title search. The pure-Python twin lives in ``_fallback``.
"""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint8_t


def khop_closure(const int64_t[::1] indptr, const int32_t[::1] indices,
                 int src, int k):
    """Nodes reachable from ``src`` by directed paths of length 1..k (sorted)."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef uint8_t[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef int32_t[::1] frontier = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] nxt = np.empty(n, dtype=np.int32)
    out_arr = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] out = out_arr
    cdef Py_ssize_t fsize = 1, nsize, osize = 0
    cdef Py_ssize_t i, depth
    cdef int64_t j
    cdef int32_t u, v

    seen[src] = 1
    frontier[0] = src
    for depth in range(k):
        nsize = 0
        for i in range(fsize):
            u = frontier[i]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if not seen[v]:
                    seen[v] = 1
                    nxt[nsize] = v
                    nsize += 1
                    out[osize] = v
                    osize += 1
        frontier, nxt = nxt, frontier
        fsize = nsize
        if fsize == 0:
            break
    result = out_arr[:osize]
    result.sort()
    return result


def distance_histogram(const int64_t[::1] indptr, const int32_t[::1] indices,
                       int src):
    """BFS level sizes from ``src``: result[d] = node count at distance d."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef uint8_t[::1] seen = np.zeros(n, dtype=np.uint8)
    cdef int32_t[::1] frontier = np.empty(n, dtype=np.int32)
    cdef int32_t[::1] nxt = np.empty(n, dtype=np.int32)
    counts = [0]
    cdef Py_ssize_t fsize = 1, nsize
    cdef Py_ssize_t i
    cdef int64_t j
    cdef int32_t u, v

    seen[src] = 1
    frontier[0] = src
    while fsize > 0:
        nsize = 0
        for i in range(fsize):
            u = frontier[i]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if not seen[v]:
                    seen[v] = 1
                    nxt[nsize] = v
                    nsize += 1
        if nsize > 0:
            counts.append(nsize)
        frontier, nxt = nxt, frontier
        fsize = nsize
    return np.array(counts, dtype=np.int64)


def intersection_size(const int32_t[::1] a, const int32_t[::1] b):
    """Size of the intersection of two sorted arrays of unique ids."""
    cdef Py_ssize_t i = 0, j = 0, count = 0
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    while i < la and j < lb:
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            count += 1
            i += 1
            j += 1
    return count


def levenshtein(const int32_t[::1] a, const int32_t[::1] b):
    """Edit distance between two int32 codepoint arrays."""
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    if la == 0:
        return lb
    if lb == 0:
        return la
    cdef int64_t[::1] prev = np.arange(lb + 1, dtype=np.int64)
    cdef int64_t[::1] cur = np.empty(lb + 1, dtype=np.int64)
    cdef int64_t[::1] tmp
    cdef Py_ssize_t i, j
    cdef int64_t cost, best
    cdef int32_t ai

    for i in range(1, la + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, lb + 1):
            cost = 0 if ai == b[j - 1] else 1
            best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            if prev[j - 1] + cost < best:
                best = prev[j - 1] + cost
            cur[j] = best
        tmp = prev
        prev = cur
        cur = tmp
    return int(prev[lb])
