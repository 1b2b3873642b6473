"""Symbolic dynamics of the classical cat map.

The torus automorphism (x, y) -> (x + y, x + 2y) mod 1 is coded by
vertical strips: cell l is the strip l/L <= x < (l+1)/L with L = 2**p.
A length-n word records which strip the orbit visits at each step, and
the measure of a word is the area of the corresponding cylinder set.

This script tabulates word measures, shows that the per-step entropy
production approaches the Kolmogorov-Sinai rate log((3+sqrt(5))/2),
and looks at a single sector (words with fixed first and last symbol).
"""

import numpy as np

from catlab import classical


def main():
    p = 2
    print("strips per side:", 2 ** p)
    print("KS rate: %.6f" % classical.ks_entropy_rate())
    print()

    print("word-length scan (grid %d per axis):" % classical.DEFAULT_GRID)
    print("%4s %10s %12s %10s" % ("n", "words", "S_cl", "slope"))
    prev = None
    for n in range(1, 7):
        table = classical.word_measures(p, n)
        s = classical.classical_entropy(table)
        slope = "" if prev is None else "%10.6f" % (s - prev)
        print("%4d %10d %12.6f %10s" % (n, 4 ** n, s, slope))
        prev = s
    print()
    print("the slope creeps down toward the KS rate; the strip partition")
    print("is a generator but not Markov, so convergence is slow.")
    print()

    n = 3
    table = classical.word_measures(p, n)
    print("largest length-%d cylinders:" % n)
    order = np.argsort(table.probs)[::-1]
    for i in order[:6]:
        word = table.word(i)
        print("  %s  measure %.6f" % (classical.word_string(word), table.probs[i]))
    print()

    first = last = 0
    probs = table.sector_probs(first, last)
    print("sector (first=%d, last=%d): %d words, total measure %.6f"
          % (first, last, probs.size, probs.sum()))
    print("sector entropy %.6f" % classical.sector_entropy(table, first, last))


if __name__ == "__main__":
    main()
