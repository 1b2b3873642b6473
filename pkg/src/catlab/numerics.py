"""Dense complex linear algebra and entropy primitives.

Everything downstream works with plain numpy arrays: complex vectors are
1-d arrays, matrices are 2-d arrays indexed (row, column), and a spectrum
is a real 1-d array sorted in descending order.  All entropies are in nats.
"""

import numpy as np

from .errors import NegativeEigenvalue, NotHermitian

HERMITICITY_TOL = 1e-10
EIGENVALUE_CLAMP = 1e-10


def dft(v, direction=+1):
    """Unitary discrete Fourier transform of a complex vector.

    Kernel is exp(direction * 2j*pi*k*j/d) / sqrt(d), so direction=+1 maps
    the position representation to the momentum representation and
    direction=-1 is its inverse.
    """
    v = np.asarray(v, dtype=complex)
    d = v.shape[0]
    if direction > 0:
        return np.fft.ifft(v) * np.sqrt(d)
    return np.fft.fft(v) / np.sqrt(d)


def idft(v):
    """Inverse of dft(v, +1)."""
    return dft(v, direction=-1)


def eigh(m, tol=HERMITICITY_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues real and sorted in
    descending order; eigenvectors[:, i] belongs to eigenvalues[i].
    Raises NotHermitian when max|m - m^dagger| exceeds tol.
    """
    m = np.asarray(m, dtype=complex)
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise NotHermitian(f"max |m - m^dagger| = {dev:.3e} exceeds {tol:.1e}")
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def eigvalsh_desc(m, tol=HERMITICITY_TOL):
    """Descending eigenvalues of a Hermitian matrix (no eigenvectors)."""
    m = np.asarray(m, dtype=complex)
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise NotHermitian(f"max |m - m^dagger| = {dev:.3e} exceeds {tol:.1e}")
    return np.sort(np.linalg.eigvalsh(m))[::-1]


def entropy_terms(values, clamp=EIGENVALUE_CLAMP):
    """Per-entry contributions -v*log(v) with 0*log(0) := 0.

    Entries in [-clamp, 0) are rounding artifacts of a PSD spectrum and are
    clamped to zero; anything more negative raises NegativeEigenvalue.
    """
    values = np.asarray(values, dtype=float)
    if values.size and values.min() < -clamp:
        raise NegativeEigenvalue(
            f"eigenvalue {values.min():.3e} below clamp window -{clamp:.1e}"
        )
    values = np.where(values < 0.0, 0.0, values)
    terms = np.zeros_like(values)
    pos = values > 0.0
    terms[pos] = -values[pos] * np.log(values[pos])
    return terms


def spectral_entropy(spectrum, clamp=EIGENVALUE_CLAMP):
    """Shannon entropy -sum(lam * log(lam)) of a nonnegative spectrum, in nats."""
    return float(entropy_terms(spectrum, clamp=clamp).sum())
