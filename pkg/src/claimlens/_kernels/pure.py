"""Pure-Python (numpy) scoring kernel, the fallback when the compiled
extension is unavailable.

Must stay bit-for-bit equivalent to ``_native``: both evaluate the per-doc
term contribution as ``idf * ((tf * (k1 + 1)) / (tf + norm))`` and add terms
in query order, so partial sums are IEEE-identical across backends.
"""

from __future__ import annotations


def accumulate_scores(scores, norms, terms, k1):
    """Add BM25 contributions for each query term into ``scores``.

    scores: float64[n_docs], zero-initialized by the caller.
    norms:  float64[n_docs], the per-doc length normalizer k1*(1 - b + b*dl/avgdl).
    terms:  sequence of (doc_index int32 array, tf float64 array, idf float),
            one entry per query-token occurrence with a posting list.
    """
    k1p1 = k1 + 1.0
    for idxs, tfs, idf in terms:
        scores[idxs] += idf * ((tfs * k1p1) / (tfs + norms[idxs]))
