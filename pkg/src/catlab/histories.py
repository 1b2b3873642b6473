"""Measurement histories of the quantized map and their decoherence matrix.

A history of length n is a word of strip symbols read off by projective
position measurements at consecutive periods.  Its operator is the
alternating product

    P(word) = P_{w[n-1]} U P_{w[n-2]} U ... P_{w[1]} U P_{w[0]},

and the decoherence matrix collects the normalized Frobenius inner products

    D[theta, sigma] = Tr(P(theta)^dag P(sigma)) / dim.

D is Hermitian, positive semidefinite and of unit trace over the full word
set, so its spectrum is a probability distribution; the entropy of that
distribution quantifies how fast the measured dynamics generates
information, and its diagonal alone gives the record of history weights.

Two computation paths are provided and cross-validated in the tests:

* an explicit word tree that propagates history blocks and assembles D
  entry by entry (exact sector support, cost grows with the word count);
* a recursion on the second-moment operator of the vectorized history
  operators, whose nonzero spectrum equals the spectrum of D at every
  length while the cost is independent of the word count.

Words are ordered lexicographically with the first (earliest) symbol most
significant, matching the classical cylinder tables, and words whose
operator vanishes keep their slot so indices stay aligned.
"""

from dataclasses import dataclass

import numpy as np

from . import classical, numerics
from .errors import BudgetExceeded, ShapeMismatch

WORD_BUDGET = 4096
MEMORY_BUDGET = 8 << 30
PRUNE_TOL = 1e-14
OMEGA_MAX_DIM2 = 4096


def word_operator(u, projectors, word):
    """Dense history operator of one word, built by direct multiplication.

    Deliberately naive (full matrix products, no pruning); this is the
    reference implementation the faster paths are tested against.
    """
    word = tuple(int(s) for s in word)
    if not word:
        raise ValueError("empty history word")
    u_dense = u.to_dense()
    m = projectors.matrix(word[0])
    for s in word[1:]:
        m = u_dense @ m
        lo, hi = projectors.cell_range(s)
        kept = np.zeros_like(m)
        kept[lo:hi] = m[lo:hi]
        m = kept
    return m


@dataclass
class DecoherenceMatrix:
    """Normalized Gram matrix of the history operators of one length.

    entries[i, j] corresponds to the word pair (words[i], words[j]) where
    words holds full-word lexicographic codes; for a sector matrix these
    are the codes within the full alphabet, restricted to words with the
    given first and last symbol.
    """

    n: int
    n_symbols: int
    dim: int
    sector: tuple | None
    entries: np.ndarray
    words: np.ndarray

    def word(self, i):
        return classical.index_word(int(self.words[i]), self.n_symbols, self.n)

    def trace(self):
        return float(np.real(np.trace(self.entries)))

    def diagonal(self):
        return np.real(np.diag(self.entries)).copy()

    def offdiag_mass(self):
        """Sum of |entries| off the diagonal, a scalar coherence witness."""
        a = np.abs(self.entries)
        return float(a.sum() - np.trace(a))

    def spectrum(self):
        """Eigenvalues in decreasing order (Hermiticity is checked)."""
        return numerics.eigvalsh_desc(self.entries)


def _sector_codes(n_symbols, n, sector):
    if sector is None:
        return np.arange(n_symbols ** n, dtype=np.int64)
    first, last = sector
    return classical.sector_indices(n_symbols, n, first, last)


def decoherence_matrix(u, projectors, n, sector=None,
                       word_budget=WORD_BUDGET, memory_budget=MEMORY_BUDGET):
    """Decoherence matrix of all length-n words, or of one (first, last) sector.

    The words are propagated as a tree: each node carries the nonzero block
    of its history operator (rows restricted to the strip of the latest
    symbol, columns to the strip of the first), one period of evolution
    extends a node to its children, and branches whose block drops below
    PRUNE_TOL in Frobenius norm are dropped together with all descendants.
    Sector restriction fixes the root symbol and the symbol of the final
    extension instead of filtering afterwards.

    Raises BudgetExceeded when the word count exceeds word_budget or the
    live tree blocks would exceed memory_budget bytes.
    """
    if n < 1:
        raise ValueError("history length must be >= 1")
    n_sym = projectors.n_cells
    dim = projectors.dim
    if sector is not None:
        first, last = (int(sector[0]), int(sector[1]))
        projectors.cell_range(first)
        projectors.cell_range(last)
        sector = (first, last)
    codes = _sector_codes(n_sym, n, sector)
    count = codes.shape[0]
    if count > word_budget:
        raise BudgetExceeded(
            f"{count} history words exceed the word budget of {word_budget}")
    entries = np.zeros((count, count), dtype=complex)
    result = DecoherenceMatrix(n=n, n_symbols=n_sym, dim=dim, sector=sector,
                               entries=entries, words=codes)
    if count == 0:
        return result

    u_dense = u.to_dense() if n > 1 else None
    groups = {}
    live = [0]

    def position_of(word):
        if sector is None:
            return classical.word_index(word, n_sym)
        return classical.word_index(word[1:-1], n_sym)

    def extend(word, block):
        if len(word) == n:
            key = (word[0], word[-1])
            pos_list, blk_list = groups.setdefault(key, ([], []))
            pos_list.append(position_of(word))
            blk_list.append(block.ravel())
            return
        lo, hi = projectors.cell_range(word[-1])
        prop = u_dense[:, lo:hi] @ block
        live[0] += prop.nbytes
        if live[0] > memory_budget:
            raise BudgetExceeded("history tree exceeds the memory budget")
        if sector is not None and len(word) == n - 1:
            symbols = (sector[1],)
        else:
            symbols = range(n_sym)
        for s in symbols:
            slo, shi = projectors.cell_range(s)
            child = prop[slo:shi]
            if np.linalg.norm(child) <= PRUNE_TOL:
                continue
            child = np.ascontiguousarray(child)
            live[0] += child.nbytes
            if live[0] > memory_budget:
                raise BudgetExceeded("history tree exceeds the memory budget")
            extend(word + (s,), child)
            live[0] -= child.nbytes
        live[0] -= prop.nbytes

    roots = range(n_sym) if sector is None else (sector[0],)
    for a in roots:
        lo, hi = projectors.cell_range(a)
        extend((a,), np.eye(hi - lo, dtype=complex))

    for (_, _), (pos_list, blk_list) in groups.items():
        a = np.array(blk_list)
        gram = (a.conj() @ a.T) / dim
        idx = np.array(pos_list)
        entries[np.ix_(idx, idx)] = gram
    return result


# ---------------------------------------------------------------------------
# Second-moment recursion
# ---------------------------------------------------------------------------

@dataclass
class OmegaMatrix:
    """Second moment of the vectorized history operators of one length.

    entries is the dim^2 x dim^2 operator sum_words vec(P) vec(P)^dag / dim
    (row-major vec).  Its nonzero eigenvalues coincide with those of the
    decoherence matrix of the same length, its trace is 1, and one period
    of evolution advances it without ever enumerating words.
    """

    n: int
    n_symbols: int
    dim: int
    entries: np.ndarray

    def trace(self):
        return float(np.real(np.trace(self.entries)))

    def spectrum(self):
        return numerics.eigvalsh_desc(self.entries)


def _omega_start(projectors):
    dim = projectors.dim
    om = np.zeros((dim * dim, dim * dim), dtype=complex)
    for l in range(projectors.n_cells):
        lo, hi = projectors.cell_range(l)
        v = np.zeros(dim * dim)
        v[np.arange(lo, hi) * (dim + 1)] = 1.0
        om += np.outer(v, v) / dim
    return om


def _omega_step(om, u_dense, projectors):
    # One extension step: om <- sum_l (B_l x I) om (B_l x I)^dag with
    # B_l = P_l U, carried out per strip on the 4-index reshape so only
    # the strip's rows are ever touched.
    dim = projectors.dim
    t = om.reshape(dim, dim, dim, dim)
    new = np.zeros_like(t)
    for l in range(projectors.n_cells):
        lo, hi = projectors.cell_range(l)
        b = u_dense[lo:hi, :]
        o1 = np.tensordot(b, t, axes=([1], [0]))
        o2 = np.tensordot(o1, b.conj(), axes=([2], [1]))
        new[lo:hi, :, lo:hi, :] += o2.transpose(0, 1, 3, 2)
    return new.reshape(dim * dim, dim * dim)


def omega_recursion(u, projectors, n, max_dim2=OMEGA_MAX_DIM2):
    """Second-moment operator after n measurements, by recursion.

    Cost per step scales as dim^5 regardless of the word count, so this is
    the path of choice whenever dim^2 stays within max_dim2 and the full
    spectrum at large n is wanted.
    """
    for om in omega_sequence(u, projectors, n, max_dim2=max_dim2):
        pass
    return om


def omega_sequence(u, projectors, n, max_dim2=OMEGA_MAX_DIM2):
    """Yield OmegaMatrix records for lengths 1..n in order."""
    if n < 1:
        raise ValueError("history length must be >= 1")
    dim = projectors.dim
    if dim * dim > max_dim2:
        raise BudgetExceeded(
            f"dim^2 = {dim * dim} exceeds the recursion ceiling {max_dim2}")
    om = _omega_start(projectors)
    yield OmegaMatrix(n=1, n_symbols=projectors.n_cells, dim=dim, entries=om)
    if n == 1:
        return
    u_dense = u.to_dense()
    for k in range(2, n + 1):
        om = _omega_step(om, u_dense, projectors)
        yield OmegaMatrix(n=k, n_symbols=projectors.n_cells, dim=dim, entries=om)


# ---------------------------------------------------------------------------
# Entropies
# ---------------------------------------------------------------------------

@dataclass
class EntropyRecord:
    """Entropy bundle of one history length.

    s_af      entropy of the eigenvalue distribution of D (or of the
              second-moment operator, which shares it)
    s_diag    entropy of the diagonal of D; None on the recursion path
    s_cl      entropy of the matching classical cylinder measures
    d_symb    l1 distance between the diagonal and the classical measures
    offdiag   summed modulus of the off-diagonal entries
    bound     2 log dim, the ceiling the eigenvalue entropy saturates at
    """

    n: int
    s_af: float
    s_diag: float | None
    s_cl: float
    d_symb: float | None
    offdiag: float | None
    bound: float


def entropies(source, table):
    """Entropy record of a DecoherenceMatrix or OmegaMatrix.

    table is the classical MeasureTable of the same word length and
    alphabet; for a sector matrix the comparison uses the measures of the
    same sector, without renormalizing either side.
    """
    if table.n != source.n or table.n_symbols != source.n_symbols:
        raise ShapeMismatch(
            f"classical table is for ({table.n_symbols} symbols, length {table.n}), "
            f"matrix for ({source.n_symbols}, {source.n})")
    bound = 2.0 * np.log(source.dim)
    spectrum = source.spectrum()
    s_af = numerics.spectral_entropy(spectrum)
    if isinstance(source, OmegaMatrix):
        s_cl = float(numerics.entropy_terms(table.probs).sum())
        return EntropyRecord(n=source.n, s_af=s_af, s_diag=None, s_cl=s_cl,
                             d_symb=None, offdiag=None, bound=bound)
    if source.sector is None:
        mu = table.probs
    else:
        mu = table.sector_probs(*source.sector)
    diag = source.diagonal()
    s_diag = float(numerics.entropy_terms(diag).sum())
    s_cl = float(numerics.entropy_terms(mu).sum())
    d_symb = float(np.abs(diag - mu).sum())
    return EntropyRecord(n=source.n, s_af=s_af, s_diag=s_diag, s_cl=s_cl,
                         d_symb=d_symb, offdiag=source.offdiag_mass(), bound=bound)


def partial_entropy_profile(source, table=None):
    """Cumulative entropy versus number of contributions kept.

    For each available series (eigenvalues, diagonal weights, classical
    measures) the values are sorted in decreasing order and the partial
    sums of -v log v are accumulated, showing how many contributions carry
    the entropy.  Returns a dict of cumulative arrays.
    """
    profiles = {}
    spectrum = source.spectrum()
    profiles["eigen"] = np.cumsum(numerics.entropy_terms(spectrum))
    if isinstance(source, DecoherenceMatrix):
        diag = np.sort(source.diagonal())[::-1]
        profiles["diag"] = np.cumsum(numerics.entropy_terms(diag))
    if table is not None:
        if isinstance(source, DecoherenceMatrix) and source.sector is not None:
            mu = table.sector_probs(*source.sector)
        else:
            mu = table.probs
        mu = np.sort(np.asarray(mu))[::-1]
        profiles["classical"] = np.cumsum(numerics.entropy_terms(mu))
    return profiles
