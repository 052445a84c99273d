#!/usr/bin/env python3
"""Benchmark the compiled alignment kernel against the pure-Python fallback.

The Levenshtein backtrace is the hot loop of vocabulary building, baseline
training, span voting, and scoring, so this is the number that decides
whether the extension pays off on your machine.

Usage::

    python benchmarks/bench_alignment.py [--pairs 2000] [--max-len 30] [--seed 0]
"""

from __future__ import annotations

import argparse
import random
import time

from gec_editkit import _levenshtein
from gec_editkit.align import alignment_backend, extract_edits

try:
    from gec_editkit import _levenshtein_cy
except ImportError:
    _levenshtein_cy = None

WORDS = ["the", "a", "dog", "cat", "he", "she", "go", "goes", "to", "school", "home", "very"]


def make_pairs(n: int, max_len: int, seed: int) -> list[tuple[list[int], list[int]]]:
    rng = random.Random(seed)
    pairs = []
    for _ in range(n):
        src = [rng.randrange(len(WORDS)) for _ in range(rng.randint(0, max_len))]
        tgt = list(src)
        for i in range(len(tgt)):
            if rng.random() < 0.2:
                tgt[i] = rng.randrange(len(WORDS))
        pairs.append((src, tgt))
    return pairs


def time_kernel(kernel, pairs, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for src, tgt in pairs:
            kernel.backtrace_ops(src, tgt)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=2000)
    parser.add_argument("--max-len", type=int, default=30)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    pairs = make_pairs(args.pairs, args.max_len, args.seed)
    print(f"{args.pairs} pairs, tokens/sentence <= {args.max_len}, active backend: {alignment_backend()}")

    py_time = time_kernel(_levenshtein, pairs)
    print(f"pure python : {py_time:.3f}s  ({args.pairs / py_time:,.0f} pairs/s)")
    if _levenshtein_cy is None:
        print("compiled    : not built (pip install -e . builds it; GEC_EDITKIT_SKIP_EXT skips)")
        return
    cy_time = time_kernel(_levenshtein_cy, pairs)
    print(f"compiled    : {cy_time:.3f}s  ({args.pairs / cy_time:,.0f} pairs/s)")
    print(f"speedup     : {py_time / cy_time:.1f}x")

    # sanity: both kernels agree on this workload
    for src, tgt in pairs[:200]:
        assert _levenshtein.backtrace_ops(src, tgt) == _levenshtein_cy.backtrace_ops(src, tgt)

    word_pairs = [
        ([WORDS[i] for i in src], [WORDS[i] for i in tgt]) for src, tgt in pairs[:500]
    ]
    start = time.perf_counter()
    for src, tgt in word_pairs:
        extract_edits(src, tgt)
    took = time.perf_counter() - start
    print(f"end-to-end extract_edits ({alignment_backend()}): {500 / took:,.0f} sentences/s")


if __name__ == "__main__":
    main()
