# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled BM25 accumulation kernel.

Bit-identical twin of ``pure.accumulate_scores``: same expression grouping
``idf * ((tf * (k1 + 1)) / (tf + norm))`` and the same per-term accumulation
order, so rankings never depend on which backend is active.
"""

import numpy as np

cimport numpy as cnp


def accumulate_scores(double[::1] scores, double[::1] norms, terms, double k1):
    cdef double k1p1 = k1 + 1.0
    cdef double idf
    cdef Py_ssize_t i, m
    cdef cnp.int32_t[::1] idxs
    cdef double[::1] tfs
    cdef cnp.int32_t doc
    for idxs_obj, tfs_obj, idf_obj in terms:
        idxs = idxs_obj
        tfs = tfs_obj
        idf = idf_obj
        m = idxs.shape[0]
        for i in range(m):
            doc = idxs[i]
            scores[doc] += idf * ((tfs[i] * k1p1) / (tfs[i] + norms[doc]))
