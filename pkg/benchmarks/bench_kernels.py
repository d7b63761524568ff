#!/usr/bin/env python3
"""Compare the compiled scoring kernel against the pure-Python fallback.

Builds a synthetic 10k-document index, runs the same query batch through
both accumulate_scores implementations, verifies the outputs are identical
bit-for-bit, and reports per-query timings.

Usage: python benchmarks/bench_kernels.py [--docs 10000] [--queries 200]
"""

import argparse
import random
import statistics
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from claimlens._kernels import native_available, pure
from claimlens.retrieval import build_index

K1, B = 1.2, 0.75


def build_synthetic_index(n_docs: int, seed: int = 7):
    rng = random.Random(seed)
    vocab = [f"word{i:04d}" for i in range(2000)]
    weights = [1.0 / (i + 1) for i in range(len(vocab))]
    docs = [
        (f"d{i:05d}", " ".join(rng.choices(vocab, weights=weights,
                                           k=rng.randint(8, 18))))
        for i in range(n_docs)
    ]
    queries = [
        " ".join(rng.choices(vocab, weights=weights, k=rng.randint(3, 8)))
        for _ in range(10_000)
    ]
    return build_index(docs), vocab, queries


def run_backend(accumulate, index, term_batches):
    norms = K1 * (1.0 - B + B * (index._lengths / index.avg_doc_length))
    timings = []
    outputs = []
    for terms in term_batches:
        scores = np.zeros(index.doc_count)
        t0 = time.perf_counter()
        accumulate(scores, norms, terms, K1)
        timings.append(time.perf_counter() - t0)
        outputs.append(scores)
    return timings, outputs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=10_000)
    parser.add_argument("--queries", type=int, default=200)
    args = parser.parse_args()

    print(f"building index over {args.docs} synthetic documents ...")
    index, _, queries = build_synthetic_index(args.docs)

    from claimlens.retrieval import tokenize

    term_batches = []
    for query in queries[: args.queries]:
        terms = []
        for token in tokenize(query):
            posting = index._postings.get(token)
            if posting is not None:
                terms.append((posting[0], posting[1], index.idf(token)))
        if terms:
            term_batches.append(terms)

    pure_times, pure_out = run_backend(pure.accumulate_scores, index, term_batches)
    print(f"pure python : {statistics.median(pure_times) * 1e3:8.3f} ms/query (median), "
          f"{sum(pure_times):6.3f} s total over {len(term_batches)} queries")

    if not native_available:
        print("native      : extension not built; skipping comparison")
        return 0

    from claimlens._kernels import _native

    native_times, native_out = run_backend(_native.accumulate_scores, index,
                                           term_batches)
    print(f"native      : {statistics.median(native_times) * 1e3:8.3f} ms/query (median), "
          f"{sum(native_times):6.3f} s total")

    for a, b in zip(pure_out, native_out):
        if not np.array_equal(a, b):
            print("MISMATCH: kernels disagree")
            return 1
    print("outputs     : identical bit-for-bit across all queries")
    speedup = statistics.median(pure_times) / statistics.median(native_times)
    print(f"speedup     : {speedup:.1f}x (median per-query)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
