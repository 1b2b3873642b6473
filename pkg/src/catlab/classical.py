"""Classical cat dynamics on the unit torus and cylinder-set entropies.

The map is the hyperbolic automorphism (x, y) -> (x + y, x + 2y) mod 1.
Phase space is partitioned into 2^p vertical strips, trajectories are read
off as symbol sequences (words), and the Shannon entropy of the resulting
cylinder measures is the classical yardstick every quantum entropy in this
package is compared against.

Words of length n over the L-symbol alphabet are globally ordered
lexicographically: word (s_0, ..., s_{n-1}) has index
sum_i s_i * L^(n-1-i).  Every matrix or table indexed by words in this
package uses that ordering.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ResolutionTooCoarse, SymbolOutOfRange

# Linear part of the torus automorphism, acting on column vectors (x, y).
CAT_MATRIX = np.array([[1, 1], [1, 2]])

DEFAULT_GRID = 2048


def cat_step(x, y):
    """One application of the cat map; accepts scalars or numpy arrays."""
    return np.mod(x + y, 1.0), np.mod(x + 2.0 * y, 1.0)


def ks_entropy_rate():
    """Asymptotic per-step information rate: log of the leading eigenvalue
    of CAT_MATRIX, log((3 + sqrt(5))/2) ~ 0.9624."""
    return float(np.log((3.0 + np.sqrt(5.0)) / 2.0))


# ---------------------------------------------------------------------------
# Word bookkeeping
# ---------------------------------------------------------------------------

def word_index(word, n_symbols):
    """Lexicographic index of a word; first symbol is most significant."""
    idx = 0
    for s in word:
        s = int(s)
        if not 0 <= s < n_symbols:
            raise SymbolOutOfRange(f"symbol {s} outside alphabet 0..{n_symbols - 1}")
        idx = idx * n_symbols + s
    return idx


def index_word(idx, n_symbols, length):
    """Inverse of word_index."""
    out = []
    for _ in range(length):
        idx, s = divmod(idx, n_symbols)
        out.append(s)
    return tuple(reversed(out))


def word_string(word):
    """Render a word as a digit string, e.g. (0, 1, 2, 0) -> "0120".

    Symbols >= 10 (alphabets larger than ten strips) fall back to a
    dash-separated rendering to stay unambiguous.
    """
    if all(s < 10 for s in word):
        return "".join(str(int(s)) for s in word)
    return "-".join(str(int(s)) for s in word)


def sector_indices(n_symbols, length, first, last):
    """Lexicographic indices of all words with fixed first and last symbol."""
    if not (0 <= first < n_symbols and 0 <= last < n_symbols):
        raise SymbolOutOfRange(f"sector ({first},{last}) outside alphabet")
    if length == 1:
        if first != last:
            return np.empty(0, dtype=np.int64)
        return np.array([first], dtype=np.int64)
    middles = np.arange(n_symbols ** (length - 2), dtype=np.int64)
    return first * n_symbols ** (length - 1) + middles * n_symbols + last


# ---------------------------------------------------------------------------
# Cylinder measures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MeasureTable:
    """Cylinder probabilities of all words of one length.

    probs[i] is the measure of the word with lexicographic index i; words of
    zero measure are kept so classical and quantum indexing stay aligned.
    """

    p: int
    n: int
    grid: int
    probs: np.ndarray

    @property
    def n_symbols(self):
        return 2 ** self.p

    def word(self, idx):
        return index_word(idx, self.n_symbols, self.n)

    def sector_probs(self, first, last):
        """Measures of the words in one (first, last) sector, in word order."""
        return self.probs[sector_indices(self.n_symbols, self.n, first, last)]

    def to_csv(self, path):
        """Write columns word,measure with the word as a digit string."""
        with open(path, "w", newline="\n") as fh:
            fh.write("word,measure\n")
            for idx in range(self.probs.shape[0]):
                fh.write(f"{word_string(self.word(idx))},{self.probs[idx]:.15g}\n")


def word_measures(p, n, grid=DEFAULT_GRID):
    """Cylinder measures of all words of length n for the 2^p-strip partition.

    A deterministic grid x grid lattice of cell midpoints is iterated n-1
    times; the symbol at each instant is the strip index floor(x * 2^p), read
    before each map application.  The measure of a word is the fraction of
    lattice points realizing it.  Midpoints of a power-of-two lattice stay
    dyadic rationals under the map, so the computation is exact in binary
    floating point and bitwise reproducible.
    """
    if p < 1 or n < 1:
        raise ValueError("need p >= 1 and n >= 1")
    n_sym = 2 ** p
    if grid < n_sym:
        raise ResolutionTooCoarse(f"grid {grid} coarser than {n_sym} strips")
    if grid & (grid - 1):
        raise ValueError("grid must be a power of two")

    centers = (np.arange(grid, dtype=np.float64) + 0.5) / grid
    x = np.repeat(centers, grid)
    y = np.tile(centers, grid)
    codes = np.zeros(grid * grid, dtype=np.int64)
    for t in range(n):
        codes *= n_sym
        codes += (x * n_sym).astype(np.int64)
        if t < n - 1:
            x, y = cat_step(x, y)
    counts = np.bincount(codes, minlength=n_sym ** n)
    return MeasureTable(p=p, n=n, grid=grid, probs=counts / float(grid * grid))


def classical_entropy(table):
    """Shannon entropy -sum(mu log mu) of a measure table, in nats."""
    mu = table.probs
    nz = mu[mu > 0.0]
    return float(-(nz * np.log(nz)).sum())


def sector_entropy(table, first, last):
    """Entropy contribution -sum(mu log mu) of one (first, last) sector.

    The sector is not renormalized: summing over all sectors recovers the
    full entropy.
    """
    mu = table.sector_probs(first, last)
    nz = mu[mu > 0.0]
    return float(-(nz * np.log(nz)).sum())
