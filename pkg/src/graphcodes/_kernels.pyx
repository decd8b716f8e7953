# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled implementations of the two hot kernels.

Must return exactly the same values as _kernels_py (the numpy reference);
test_kernels.py checks the agreement.
"""

import numpy as np


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil


def find_even_k4_quadruple(object colors_obj):
    """First quadruple a<b<c<d (lexicographic) whose six pairwise colors all
    occur an even number of times, or None."""
    colors_arr = np.ascontiguousarray(colors_obj, dtype=np.int32)
    cdef int[:, ::1] colors = colors_arr
    cdef Py_ssize_t n = colors.shape[0]
    cdef Py_ssize_t a, b, c, d
    cdef int cab, cac, cad, cbc, cbd, ccd
    cdef int v[6]
    cdef int key
    cdef Py_ssize_t i, j
    for a in range(n - 3):
        for b in range(a + 1, n - 2):
            cab = colors[a, b]
            for c in range(b + 1, n - 1):
                cac = colors[a, c]
                cbc = colors[b, c]
                for d in range(c + 1, n):
                    cad = colors[a, d]
                    cbd = colors[b, d]
                    ccd = colors[c, d]
                    # A color seen exactly once can never pair up.
                    if cab != cac and cab != cad and cab != cbc and cab != cbd and cab != ccd:
                        continue
                    v[0] = cab; v[1] = cac; v[2] = cad
                    v[3] = cbc; v[4] = cbd; v[5] = ccd
                    # Insertion sort of the six values.
                    for i in range(1, 6):
                        key = v[i]
                        j = i
                        while j > 0 and v[j - 1] > key:
                            v[j] = v[j - 1]
                            j -= 1
                        v[j] = key
                    if v[0] == v[1] and v[2] == v[3] and v[4] == v[5]:
                        return (a, b, c, d)
    return None


def decomposability_step(int k, object dec1_obj, object dec2_obj):
    """Decomposability table for all graphs on k >= 2 vertices, from the
    tables for k-1 and k-2 vertices.  Returns a boolean array."""
    dec1_arr = np.ascontiguousarray(np.asarray(dec1_obj, dtype=bool).view(np.uint8))
    dec2_arr = np.ascontiguousarray(np.asarray(dec2_obj, dtype=bool).view(np.uint8))
    cdef unsigned char[::1] dec1 = dec1_arr
    cdef unsigned char[::1] dec2 = dec2_arr

    cdef int num_edges = k * (k - 1) // 2
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << num_edges
    out = np.zeros(size, dtype=bool)
    cdef unsigned char[::1] res = out.view(np.uint8)

    # Per-vertex incident-edge masks and degree parities.
    cdef unsigned int[64] incident
    cdef int v, w, u, i, j
    for v in range(k):
        incident[v] = 0
        for w in range(k):
            if w != v:
                if v < w:
                    incident[v] |= (<unsigned int> 1) << (w * (w - 1) // 2 + v)
                else:
                    incident[v] |= (<unsigned int> 1) << (v * (v - 1) // 2 + w)

    # Edge-index relabeling tables for deleting one vertex / one pair.
    single_moves_arr = np.zeros((k, max(1, (k - 1) * (k - 2) // 2), 2), dtype=np.int32)
    cdef int[:, :, ::1] single_moves = single_moves_arr
    cdef int n_single = (k - 1) * (k - 2) // 2
    for v in range(k):
        keep = [x for x in range(k) if x != v]
        idx = 0
        for i in range(k - 1):
            for j in range(i + 1, k - 1):
                a, b = keep[i], keep[j]
                single_moves[v, idx, 0] = b * (b - 1) // 2 + a
                single_moves[v, idx, 1] = j * (j - 1) // 2 + i
                idx += 1

    cdef int n_pairs = k * (k - 1) // 2
    cdef int n_double = max(0, (k - 2) * (k - 3) // 2)
    pair_moves_arr = np.zeros((n_pairs, max(1, n_double), 2), dtype=np.int32)
    cdef int[:, :, ::1] pair_moves = pair_moves_arr
    pair_edge_arr = np.zeros((n_pairs, 2), dtype=np.int32)
    cdef int[:, ::1] pair_uv = pair_edge_arr
    cdef int pi = 0
    for u in range(k):
        for w in range(u + 1, k):
            pair_uv[pi, 0] = u
            pair_uv[pi, 1] = w
            keep = [x for x in range(k) if x != u and x != w]
            idx = 0
            for i in range(k - 2):
                for j in range(i + 1, k - 2):
                    a, b = keep[i], keep[j]
                    pair_moves[pi, idx, 0] = b * (b - 1) // 2 + a
                    pair_moves[pi, idx, 1] = j * (j - 1) // 2 + i
                    idx += 1
            pi += 1

    cdef Py_ssize_t mask
    cdef unsigned int m32, reduced
    cdef int par_u, par_w, e_uw
    cdef bint done
    for mask in range(size):
        m32 = <unsigned int> mask
        done = False
        for v in range(k):
            if __builtin_popcount(m32 & incident[v]) & 1:
                continue
            reduced = 0
            for i in range(n_single):
                reduced |= ((m32 >> single_moves[v, i, 0]) & 1) << single_moves[v, i, 1]
            if dec1[reduced]:
                res[mask] = 1
                done = True
                break
        if done:
            continue
        for pi in range(n_pairs):
            u = pair_uv[pi, 0]
            w = pair_uv[pi, 1]
            e_uw = w * (w - 1) // 2 + u
            if (m32 >> e_uw) & 1:
                continue
            par_u = __builtin_popcount(m32 & incident[u]) & 1
            par_w = __builtin_popcount(m32 & incident[w]) & 1
            if par_u != par_w:
                continue
            reduced = 0
            for i in range(n_double):
                reduced |= ((m32 >> pair_moves[pi, i, 0]) & 1) << pair_moves[pi, i, 1]
            if dec2[reduced]:
                res[mask] = 1
                break
    return out
