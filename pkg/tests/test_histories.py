"""Checks for history operators, decoherence matrices, and entropies."""

import numpy as np
import pytest

from catlab import classical, histories, numerics, quantum
from catlab.errors import BudgetExceeded, ShapeMismatch


def setup(q, p):
    params = quantum.CatParams(q, p=p)
    u = quantum.build_cat_unitary(params)
    projs = quantum.build_projectors(params)
    return u, projs


def brute_matrix(u, projs, n, indices=None):
    """Gram matrix from explicit word operators; the slow reference."""
    n_sym = projs.n_cells
    if indices is None:
        indices = np.arange(n_sym ** n)
    ops = []
    for idx in indices:
        word = classical.index_word(idx, n_sym, n)
        ops.append(histories.word_operator(u, projs, word))
    dim = projs.dim
    m = np.zeros((len(ops), len(ops)), dtype=complex)
    for a, wa in enumerate(ops):
        for b, wb in enumerate(ops):
            m[a, b] = np.trace(wa.conj().T @ wb) / dim
    return m


def test_single_symbol_words_are_projectors():
    u, projs = setup(3, 2)
    for l in range(4):
        w = histories.word_operator(u, projs, (l,))
        assert np.abs(w - projs.matrix(l)).max() < 1e-14


def test_words_resolve_identity():
    # summing W^dag W over all words of one length gives the identity
    u, projs = setup(3, 2)
    for n in (1, 2, 3):
        total = np.zeros((8, 8), dtype=complex)
        for idx in range(4 ** n):
            w = histories.word_operator(u, projs, classical.index_word(idx, 4, n))
            total += w.conj().T @ w
        assert np.abs(total - np.eye(8)).max() < 1e-12


def test_length_one_matrix_is_uniform_diagonal():
    for q, p in ((2, 1), (3, 2), (4, 2)):
        u, projs = setup(q, p)
        d = histories.decoherence_matrix(u, projs, 1)
        n_sym = projs.n_cells
        assert np.abs(d.entries - np.eye(n_sym) / n_sym).max() < 1e-14


def test_tree_matches_brute_force():
    for q, p, n in ((2, 1, 3), (2, 2, 2), (3, 2, 3), (3, 1, 4)):
        u, projs = setup(q, p)
        d = histories.decoherence_matrix(u, projs, n)
        ref = brute_matrix(u, projs, n)
        assert np.abs(d.entries - ref).max() < 1e-13
        assert d.trace() == pytest.approx(1.0, abs=1e-12)


def test_matrix_is_hermitian_psd():
    u, projs = setup(3, 2)
    d = histories.decoherence_matrix(u, projs, 3)
    assert np.abs(d.entries - d.entries.conj().T).max() < 1e-13
    spec = d.spectrum()
    assert spec.min() > -1e-12
    assert spec.sum() == pytest.approx(1.0, abs=1e-12)


def test_classical_permutation_dynamics_decoheres_exactly():
    # a permutation unitary keeps histories classical: no interference terms
    dim = 8
    shift = np.roll(np.eye(dim), 1, axis=0)
    u = quantum.UnitaryOperator(dim, matrix=shift.astype(complex))
    projs = quantum.build_projectors(quantum.CatParams(3, p=2))
    d = histories.decoherence_matrix(u, projs, 3)
    off = d.entries - np.diag(np.diag(d.entries))
    assert np.abs(off).max() < 1e-12
    assert d.offdiag_mass() < 1e-12


def test_sector_blocks_restrict_full_matrix():
    u, projs = setup(3, 2)
    n = 3
    full = histories.decoherence_matrix(u, projs, n)
    total = 0.0
    for a in range(4):
        for b in range(4):
            sec = histories.decoherence_matrix(u, projs, n, sector=(a, b))
            idx = classical.sector_indices(4, n, a, b)
            sub = full.entries[np.ix_(idx, idx)]
            assert np.abs(sec.entries - sub).max() < 1e-13
            assert np.array_equal(sec.words, full.words[idx])
            total += sec.trace()
    assert total == pytest.approx(1.0, abs=1e-12)


def test_omega_spectra_match_tree():
    # the compressed recursion and the word tree describe the same state
    for q, p in ((2, 1), (2, 2), (3, 2)):
        u, projs = setup(q, p)
        for n, omega in zip(range(1, 5), histories.omega_sequence(u, projs, 4)):
            d = histories.decoherence_matrix(u, projs, n)
            sd = np.sort(d.spectrum())[::-1]
            so = np.sort(omega.spectrum())[::-1]
            k = min(sd.size, so.size)
            assert np.abs(sd[:k] - so[:k]).max() < 1e-10
            assert max(np.abs(sd[k:]).max(initial=0.0),
                       np.abs(so[k:]).max(initial=0.0)) < 1e-10
            assert omega.trace() == pytest.approx(1.0, abs=1e-12)


def test_omega_recursion_returns_last_element():
    u, projs = setup(2, 2)
    last = histories.omega_recursion(u, projs, 5)
    seq = list(histories.omega_sequence(u, projs, 5))
    assert len(seq) == 5
    assert np.abs(last.entries - seq[-1].entries).max() == 0.0


def test_entropies_length_one_all_agree():
    u, projs = setup(3, 2)
    d = histories.decoherence_matrix(u, projs, 1)
    table = classical.word_measures(2, 1, grid=256)
    rec = histories.entropies(d, table)
    assert rec.s_af == pytest.approx(np.log(4.0), abs=1e-10)
    assert rec.s_diag == pytest.approx(np.log(4.0), abs=1e-10)
    assert rec.s_cl == pytest.approx(np.log(4.0), abs=1e-12)
    assert rec.d_symb == pytest.approx(0.0, abs=1e-12)
    assert rec.offdiag == pytest.approx(0.0, abs=1e-12)
    assert rec.bound == pytest.approx(2.0 * np.log(8.0), abs=1e-12)


def test_entropies_omega_path_leaves_word_fields_empty():
    u, projs = setup(2, 2)
    omega = histories.omega_recursion(u, projs, 3)
    table = classical.word_measures(2, 3, grid=512)
    rec = histories.entropies(omega, table)
    assert rec.s_diag is None and rec.d_symb is None and rec.offdiag is None
    assert rec.s_af > 0.0


def test_entropies_rejects_mismatched_table():
    u, projs = setup(2, 2)
    d = histories.decoherence_matrix(u, projs, 2)
    with pytest.raises(ShapeMismatch):
        histories.entropies(d, classical.word_measures(2, 3, grid=512))
    with pytest.raises(ShapeMismatch):
        histories.entropies(d, classical.word_measures(1, 2, grid=256))


def test_partial_profile_uniform_spectrum():
    m = 16
    d = histories.DecoherenceMatrix(n=2, n_symbols=4, dim=4, sector=None,
                                    entries=np.eye(m, dtype=complex) / m,
                                    words=np.arange(m))
    prof = histories.partial_entropy_profile(d)
    expect = (np.arange(m) + 1) * np.log(m) / m
    assert np.allclose(prof["eigen"], expect, atol=1e-12)
    assert np.allclose(prof["diag"], expect, atol=1e-12)
    assert "classical" not in prof


def test_partial_profile_ends_at_totals():
    u, projs = setup(3, 2)
    n = 3
    d = histories.decoherence_matrix(u, projs, n)
    table = classical.word_measures(2, n)
    rec = histories.entropies(d, table)
    prof = histories.partial_entropy_profile(d, table)
    assert prof["eigen"][-1] == pytest.approx(rec.s_af, abs=1e-10)
    assert prof["diag"][-1] == pytest.approx(rec.s_diag, abs=1e-10)
    assert prof["classical"][-1] == pytest.approx(rec.s_cl, abs=1e-10)
    for series in prof.values():
        assert np.all(np.diff(series) > -1e-12)  # cumulative, nondecreasing


def test_word_budget_guard():
    u, projs = setup(2, 2)
    with pytest.raises(BudgetExceeded):
        histories.decoherence_matrix(u, projs, 3, word_budget=10)
    with pytest.raises(BudgetExceeded):
        histories.decoherence_matrix(u, projs, 3, memory_budget=64)
