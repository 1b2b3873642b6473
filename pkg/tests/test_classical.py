"""Checks for the classical map, word coding, and cylinder measures."""

import numpy as np
import pytest

from catlab import classical
from catlab.errors import ResolutionTooCoarse


def test_cat_matrix_and_step_agree():
    rng = np.random.default_rng(21)
    x = rng.random(50)
    y = rng.random(50)
    xn, yn = classical.cat_step(x, y)
    m = np.array(classical.CAT_MATRIX, dtype=float)
    ref = (m @ np.vstack([x, y])) % 1.0
    assert np.allclose(xn, ref[0], atol=1e-12)
    assert np.allclose(yn, ref[1], atol=1e-12)


def test_cat_step_invertible():
    # inverse matrix [[2, -1], [-1, 1]] undoes the step mod 1
    rng = np.random.default_rng(9)
    x = rng.random(200)
    y = rng.random(200)
    xn, yn = classical.cat_step(x, y)
    xb = (2.0 * xn - yn) % 1.0
    yb = (-xn + yn) % 1.0
    assert np.allclose(xb, x, atol=1e-9)
    assert np.allclose(yb, y, atol=1e-9)


def test_word_index_roundtrip():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n_sym = int(rng.integers(2, 9))
        length = int(rng.integers(1, 7))
        word = rng.integers(0, n_sym, size=length)
        idx = classical.word_index(word, n_sym)
        back = classical.index_word(idx, n_sym, length)
        assert np.array_equal(back, word)


def test_word_string():
    assert classical.word_string([3, 0, 2]) == "302"
    assert classical.word_string([10, 2]) == "10-2"


def test_sector_indices_match_filter():
    n_sym, length = 4, 4
    idx = classical.sector_indices(n_sym, length, 1, 3)
    words = np.array([classical.index_word(i, n_sym, length) for i in range(n_sym ** length)])
    expect = np.nonzero((words[:, 0] == 1) & (words[:, -1] == 3))[0]
    assert np.array_equal(idx, expect)
    assert idx.size == n_sym ** (length - 2)


def test_measures_normalized_and_uniform_at_short_lengths():
    # one- and two-step cylinders of the 4-strip coding all have equal area
    for n in (1, 2):
        table = classical.word_measures(2, n, grid=256)
        assert table.probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(table.probs, 1.0 / table.probs.size, atol=1e-12)


def test_three_step_measures_basic_properties():
    table = classical.word_measures(2, 3, grid=512)
    assert table.probs.min() >= 0.0
    assert table.probs.sum() == pytest.approx(1.0, abs=1e-12)
    # mixing spreads mass: no 3-cylinder keeps more than a 2-cylinder's area
    assert table.probs.max() < 1.0 / 16.0


def test_measures_converge_with_grid():
    # cylinder boundaries cut lattice cells, so counts carry O(1/grid) error
    a = classical.word_measures(2, 4, grid=512)
    b = classical.word_measures(2, 4, grid=1024)
    c = classical.word_measures(2, 4, grid=2048)
    da = np.abs(a.probs - c.probs).max()
    db = np.abs(b.probs - c.probs).max()
    assert da < 1e-3
    assert db <= da


def test_entropy_values():
    t1 = classical.word_measures(2, 1, grid=256)
    assert classical.classical_entropy(t1) == pytest.approx(np.log(4.0), abs=1e-12)
    t2 = classical.word_measures(2, 2, grid=256)
    assert classical.classical_entropy(t2) == pytest.approx(np.log(16.0), abs=1e-12)


def test_sector_probs_partition_total():
    table = classical.word_measures(2, 3, grid=512)
    total = 0.0
    for a in range(4):
        for b in range(4):
            total += table.sector_probs(a, b).sum()
    assert total == pytest.approx(1.0, abs=1e-12)
    probs = table.sector_probs(0, 0)
    assert probs.size == 4
    s = classical.sector_entropy(table, 0, 0)
    assert 0.0 <= s <= np.log(4.0)


def test_ks_rate_closed_form():
    lam = (3.0 + np.sqrt(5.0)) / 2.0
    assert classical.ks_entropy_rate() == pytest.approx(np.log(lam), abs=1e-15)
    assert classical.ks_entropy_rate() == pytest.approx(0.9624236501192069, abs=1e-15)


def test_resolution_guard():
    with pytest.raises(ResolutionTooCoarse):
        classical.word_measures(3, 2, grid=4)
    with pytest.raises(ValueError):
        classical.word_measures(2, 2, grid=100)  # not a power of two
    with pytest.raises(ValueError):
        classical.word_measures(0, 2)


def test_to_csv_layout(tmp_path):
    table = classical.word_measures(1, 2, grid=64)
    path = tmp_path / "measures.csv"
    table.to_csv(path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "word,measure"
    assert len(lines) == 1 + 4
    word, measure = lines[1].split(",")
    assert word == "00"
    float(measure)
