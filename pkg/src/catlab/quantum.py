"""Quantization of the kicked particle on a ring whose period map is the cat map.

Periodicity in both position and rescaled momentum forces a finite Hilbert
space of dimension dim = 2^q, with the dimension playing the role of the
particle mass (units are fixed so that the ring length, the kick period and
Planck's constant are all 1).  One period of the motion is the product of a
free-rotation unitary and a diagonal kick unitary; measuring which of 2^p
position strips the particle occupies defines an orthogonal projector
family, the quantum counterpart of the classical strip partition.
"""

from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import SymbolOutOfRange

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class CatParams:
    """Physical and discretization parameters of the single-particle system.

    q       log2 of the Hilbert dimension (equivalently of the mass)
    p       log2 of the number of position strips; needed only when
            projectors are built, so it may be omitted for pure propagation
    shift   origin of the position lattice, in [0, 1/2^q)
    """

    q: int
    p: int | None = None
    shift: float = 0.0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.p is not None and not 1 <= self.p <= self.q:
            raise ValueError("need 1 <= p <= q")
        if not 0.0 <= self.shift < 1.0 / self.dim:
            raise ValueError("shift must lie in [0, 1/dim)")

    @property
    def dim(self):
        return 2 ** self.q

    @property
    def n_cells(self):
        if self.p is None:
            raise ValueError("partition exponent p was not set")
        return 2 ** self.p

    def lattice(self):
        """Position lattice x_j = j/dim + shift."""
        return np.arange(self.dim) / self.dim + self.shift


class UnitaryOperator:
    """A unitary on C^dim, stored dense and/or as a matrix-free applier.

    The dense matrix is the source of truth; the matrix-free path exists
    for fast application and is validated against the dense one in tests.
    Unitarity is checked on construction: exactly for dense storage,
    by inner-product preservation on seeded random vectors otherwise.
    """

    def __init__(self, dim, matrix=None, apply_fn=None, tol=UNITARITY_TOL, check=True):
        if matrix is None and apply_fn is None:
            raise ValueError("need a dense matrix or an apply function")
        self._dim = int(dim)
        self._mat = None if matrix is None else np.asarray(matrix, dtype=complex)
        self._apply_fn = apply_fn
        self.tol = tol
        if check:
            self._check_unitary()

    def _check_unitary(self):
        if self._mat is not None:
            dev = np.max(np.abs(self._mat.conj().T @ self._mat - np.eye(self._dim)))
            if dev > self.tol:
                raise ValueError(f"not unitary: max|U^dag U - I| = {dev:.3e}")
        else:
            rng = np.random.default_rng(1234)
            probes = rng.standard_normal((4, self._dim)) + 1j * rng.standard_normal((4, self._dim))
            images = np.array([self._apply_fn(v) for v in probes])
            dev = np.max(np.abs(images.conj() @ images.T - probes.conj() @ probes.T))
            if dev > 100 * self.tol * self._dim:
                raise ValueError(f"apply function does not preserve inner products ({dev:.3e})")

    @property
    def dim(self):
        return self._dim

    def apply(self, v):
        """U @ v, via the matrix-free path when one is available."""
        v = np.asarray(v, dtype=complex)
        if self._apply_fn is not None:
            return self._apply_fn(v)
        return self._mat @ v

    def to_dense(self):
        """Materialize (and cache) the dense matrix."""
        if self._mat is None:
            cols = [self._apply_fn(e) for e in np.eye(self._dim, dtype=complex)]
            self._mat = np.array(cols).T
        return self._mat

    def export_entries(self, path):
        """Write entries as text rows `row col re im` (debugging aid only)."""
        m = self.to_dense()
        with open(path, "w", newline="\n") as fh:
            for k in range(self._dim):
                for l in range(self._dim):
                    z = m[k, l]
                    fh.write(f"{k} {l} {z.real:.17g} {z.imag:.17g}\n")


def free_phases(dim):
    """Quadratic phases exp(-i*pi*l^2/dim) the free rotation applies in the
    momentum representation.

    l^2 is reduced mod 2*dim (the phase period) before exponentiating to
    keep the argument small and the phases accurate to machine precision.
    """
    l = np.arange(dim, dtype=np.int64)
    return np.exp(-1j * np.pi * ((l * l) % (2 * dim)) / dim)


def kick_phases(dim):
    """Diagonal phases exp(+i*pi*l^2/dim) of the impulsive kick."""
    l = np.arange(dim, dtype=np.int64)
    return np.exp(1j * np.pi * ((l * l) % (2 * dim)) / dim)


def free_rotation_matrix(dim):
    """Dense one-period free-rotation unitary in the position representation.

    The operator is diagonal in momentum with phases exp(-i*pi*l^2/dim);
    conjugating back to the position basis gives a circulant whose entries
    have the Fresnel closed form

        U0[j, k] = w * exp(i*pi*(j-k)^2/dim),

    where w = mean_l exp(-i*pi*l^2/dim) is the Gauss-sum weight with
    |w| = 1/sqrt(dim) for even dim.  A wave packet at (x, y) is carried to
    (x + y, y): free flight at constant momentum.
    """
    j = np.arange(dim, dtype=np.int64)
    diff = j[:, None] - j[None, :]
    gauss = free_phases(dim).mean()
    return gauss * np.exp(1j * np.pi * ((diff * diff) % (2 * dim)) / dim)


def build_u0(params):
    """Free-rotation unitary of one period, with a matrix-free FFT path."""
    dim = params.dim
    phases = free_phases(dim)

    def apply_fn(v):
        return numerics.dft(phases * numerics.dft(v, direction=-1), direction=+1)

    return UnitaryOperator(dim, matrix=free_rotation_matrix(dim), apply_fn=apply_fn)


def build_kick(params):
    """Kick unitary: diagonal quadratic phases in the position representation.

    The operator must be unitary and diagonal, so its entries are pure
    phases with no normalization prefactor.
    """
    dim = params.dim
    phases = kick_phases(dim)
    return UnitaryOperator(dim, matrix=np.diag(phases), apply_fn=lambda v: phases * v)


def build_cat_unitary(params):
    """One-period evolution operator: kick composed after free rotation.

    Semiclassically one period carries a wave packet at torus point (x, y)
    to (x + y, x + 2y), the hyperbolic cat map, so iterating U is the
    quantum counterpart of the chaotic classical dynamics.
    """
    dim = params.dim
    kphases = kick_phases(dim)
    fphases = free_phases(dim)
    dense = kphases[:, None] * free_rotation_matrix(dim)

    def apply_fn(v):
        return kphases * numerics.dft(fphases * numerics.dft(v, direction=-1),
                                      direction=+1)

    return UnitaryOperator(dim, matrix=dense, apply_fn=apply_fn)


@dataclass(frozen=True)
class ProjectorFamily:
    """Orthogonal projectors onto consecutive equal blocks of basis states.

    Cell l projects onto indices [l*block, (l+1)*block); the cells are
    disjoint and sum to the identity.
    """

    dim: int
    n_cells: int

    def __post_init__(self):
        if self.dim % self.n_cells:
            raise ValueError("dim must be divisible by the number of cells")

    @property
    def block(self):
        return self.dim // self.n_cells

    def cell_range(self, l):
        if not 0 <= l < self.n_cells:
            raise SymbolOutOfRange(f"cell {l} outside 0..{self.n_cells - 1}")
        return l * self.block, (l + 1) * self.block

    def matrix(self, l):
        lo, hi = self.cell_range(l)
        m = np.zeros((self.dim, self.dim), dtype=complex)
        m[lo:hi, lo:hi] = np.eye(hi - lo)
        return m

    def apply(self, l, v):
        lo, hi = self.cell_range(l)
        out = np.zeros_like(np.asarray(v, dtype=complex))
        out[lo:hi] = v[lo:hi]
        return out


def build_projectors(params):
    """Position-strip projector family for CatParams with p set."""
    return ProjectorFamily(dim=params.dim, n_cells=params.n_cells)
