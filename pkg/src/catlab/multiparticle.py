"""A heavy particle on the ring coupled to light partners by contact collisions.

The heavy particle carries the kicked dynamics; each of the n_small light
particles lives on a coarser lattice of the same ring (dimension 2^r versus
2^q, with 2^r dividing 2^q) and evolves freely.  Once per period every
coincidence of the heavy particle with a light one contributes a phase
kick of strength kappa, so one period reads

    U = kick(heavy) . free(heavy x lights) . collision(kappa),

with all three factors diagonal or block-factorized in the position basis.
Basis states are indexed heavy-major: flat = j0 * nu^I + sum_i j_i * nu^(I-i).

Tracing the light particles out of the evolved state gives the heavy
particle's reduced density matrix; its entanglement entropy measures how
much the collisions decohere the heavy dynamics.  Strip measurements of
the heavy position reuse the history machinery unchanged, because the
strip projectors stay contiguous in the flat index.
"""

from dataclasses import dataclass, field

import numpy as np

from . import histories, numerics
from .errors import BudgetExceeded, ShapeMismatch
from .quantum import (CatParams, ProjectorFamily, UnitaryOperator,
                      free_rotation_matrix, kick_phases)

MULTI_UNITARITY_TOL = 1e-11
MAX_DENSE_DIM = 1024
DEFAULT_ORDER = ("kick", "free", "collision")


@dataclass(frozen=True)
class MultiParams:
    """Parameters of the heavy particle plus its light collision partners.

    q        log2 dimension of the heavy particle
    r        log2 dimension of each light particle, 0 <= r <= q
    n_small  number of light particles
    kappa    collision phase strength
    p        log2 of the heavy-position strip count (only for measurements)
    shifts   per-light lattice offsets in [0, 2^(q-r)), default all zero
    """

    q: int
    r: int
    n_small: int
    kappa: float = 0.0
    p: int | None = None
    shifts: tuple = None

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if not 0 <= self.r <= self.q:
            raise ValueError("need 0 <= r <= q")
        if self.n_small < 0:
            raise ValueError("n_small must be >= 0")
        if self.p is not None and not 1 <= self.p <= self.q:
            raise ValueError("need 1 <= p <= q")
        shifts = self.shifts
        if shifts is None:
            shifts = (0,) * self.n_small
        shifts = tuple(int(s) for s in shifts)
        if len(shifts) != self.n_small:
            raise ValueError("need one lattice shift per light particle")
        ratio = 2 ** (self.q - self.r)
        if any(not 0 <= s < ratio for s in shifts):
            raise ValueError(f"lattice shifts must lie in [0, {ratio})")
        object.__setattr__(self, "shifts", shifts)

    @property
    def big_dim(self):
        return 2 ** self.q

    @property
    def small_dim(self):
        return 2 ** self.r

    @property
    def env_dim(self):
        return self.small_dim ** self.n_small

    @property
    def dim(self):
        return self.big_dim * self.env_dim

    def single_params(self):
        """The bare heavy-particle parameters, for reduction checks."""
        return CatParams(q=self.q, p=self.p)


def collision_counts(params):
    """Number of heavy-light coincidences at every flat basis index.

    Light site j_i sits under heavy site (2^(q-r)) * j_i + shift_i, so the
    count at (j0, j_1..j_I) is how many lights satisfy that relation.
    """
    big, nu, ni = params.big_dim, params.small_dim, params.n_small
    ratio = big // nu
    counts = np.zeros((big,) + (nu,) * ni, dtype=np.int64)
    j0 = np.arange(big)
    ji = np.arange(nu)
    for i in range(ni):
        match = j0[:, None] == ratio * ji[None, :] + params.shifts[i]
        shape = [big] + [1] * ni
        shape[1 + i] = nu
        counts += match.astype(np.int64).reshape(shape)
    return counts.ravel()


def _fold(acc, factor):
    # Running operator product; diagonals stay vectors until a dense
    # factor forces materialized rows or columns.
    akind, aval = acc
    fkind, fval = factor
    if akind == "diag" and fkind == "diag":
        return ("diag", aval * fval)
    if akind == "diag":
        return ("dense", aval[:, None] * fval)
    if fkind == "diag":
        return ("dense", aval * fval[None, :])
    return ("dense", aval @ fval)


def build_period_propagator(params, cat_kick=True, order=DEFAULT_ORDER,
                            max_dim=MAX_DENSE_DIM):
    """One-period unitary of the coupled system, as a dense operator.

    order lists the factors left to right in operator-product order (the
    rightmost acts first on the state).  cat_kick=False drops the heavy
    kick, leaving free rotation plus collisions.
    """
    if sorted(order) != sorted(DEFAULT_ORDER):
        raise ValueError(f"order must be a permutation of {DEFAULT_ORDER}")
    dim = params.dim
    if dim > max_dim:
        raise BudgetExceeded(
            f"dense propagator of dimension {dim} exceeds the ceiling {max_dim}")
    free = free_rotation_matrix(params.big_dim)
    small_free = free_rotation_matrix(params.small_dim)
    for _ in range(params.n_small):
        free = np.kron(free, small_free)
    factors = {
        "kick": ("diag", np.repeat(kick_phases(params.big_dim), params.env_dim)),
        "free": ("dense", free),
        "collision": ("diag", np.exp(-1j * params.kappa * collision_counts(params))),
    }
    acc = ("diag", np.ones(dim, dtype=complex))
    for name in order:
        if name == "kick" and not cat_kick:
            continue
        acc = _fold(acc, factors[name])
    dense = acc[1] if acc[0] == "dense" else np.diag(acc[1])
    return UnitaryOperator(dim, matrix=dense, tol=MULTI_UNITARITY_TOL)


def big_projectors(params):
    """Heavy-position strip projectors on the full coupled space.

    The heavy index is most significant, so each strip is a contiguous
    block of (2^(q-p)) * env_dim flat indices.
    """
    if params.p is None:
        raise ValueError("partition exponent p was not set")
    return ProjectorFamily(dim=params.dim, n_cells=2 ** params.p)


def multiparticle_histories(params, n, sector=None, cat_kick=True,
                            order=DEFAULT_ORDER,
                            word_budget=histories.WORD_BUDGET,
                            memory_budget=histories.MEMORY_BUDGET):
    """Decoherence matrix of heavy-position strip histories."""
    u = build_period_propagator(params, cat_kick=cat_kick, order=order)
    return histories.decoherence_matrix(u, big_projectors(params), n,
                                        sector=sector, word_budget=word_budget,
                                        memory_budget=memory_budget)


# ---------------------------------------------------------------------------
# Reduced density matrix and entanglement entropy
# ---------------------------------------------------------------------------

def partial_trace(rho, params):
    """Trace the light particles out of a full density matrix."""
    dim = params.dim
    rho = np.asarray(rho)
    if rho.shape != (dim, dim):
        raise ShapeMismatch(f"expected a {dim} x {dim} density matrix")
    big, env = params.big_dim, params.env_dim
    return np.einsum("aebe->ab", rho.reshape(big, env, big, env))


def reduced_from_state(psi, params):
    """Heavy-particle reduced density matrix of a pure state."""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (params.dim,):
        raise ShapeMismatch(f"expected a state vector of length {params.dim}")
    a = psi.reshape(params.big_dim, params.env_dim)
    return a @ a.conj().T


def von_neumann_entropy(rho):
    """Spectral entropy of a density matrix, in nats."""
    return numerics.spectral_entropy(numerics.eigvalsh_desc(rho))


# ---------------------------------------------------------------------------
# Initial states
# ---------------------------------------------------------------------------

def gaussian_packet(dim, center=0.25, width=None, momentum=None):
    """Normalized periodic Gaussian packet with a momentum boost.

    center is a ring fraction; width is the position spread in lattice
    sites (default dim/16); momentum is the integer boost (default dim/4).
    The envelope is wrapped over neighbouring periods so the state is
    exactly periodic.
    """
    if width is None:
        width = dim / 16
    if momentum is None:
        momentum = dim // 4
    j = np.arange(dim)
    c = center * dim
    envelope = np.zeros(dim)
    for m in range(-3, 4):
        d = j - c + m * dim
        envelope += np.exp(-d * d / (4.0 * width * width))
    psi = envelope * np.exp(2j * np.pi * momentum * j / dim)
    return psi / np.linalg.norm(psi)


def two_packet_state(dim, centers=(0.25, 0.75), width=None, momentum=None):
    """Equal superposition of two packets sharing one momentum boost."""
    psi = sum(gaussian_packet(dim, center=c, width=width, momentum=momentum)
              for c in centers)
    return psi / np.linalg.norm(psi)


def uniform_state(dim):
    return np.ones(dim, dtype=complex) / np.sqrt(dim)


def product_state(params, big_state=None):
    """big_state (default a Gaussian packet) times uniform light states."""
    if big_state is None:
        big_state = gaussian_packet(params.big_dim)
    big_state = np.asarray(big_state, dtype=complex)
    if big_state.shape != (params.big_dim,):
        raise ShapeMismatch(f"expected a heavy state of length {params.big_dim}")
    return np.kron(big_state, uniform_state(params.env_dim))


@dataclass
class VonNeumannRun:
    """Entanglement entropy of the heavy particle along one evolution."""

    params: MultiParams
    times: np.ndarray
    entropy: np.ndarray
    snapshots: dict = field(default_factory=dict)


def von_neumann_run(params, n_steps, initial=None, cat_kick=True,
                    order=DEFAULT_ORDER, snapshot_times=()):
    """Evolve an initial state and record the entanglement entropy.

    Records S at times 0..n_steps inclusive; snapshot_times selects times
    whose reduced density matrix is kept.  The initial state must be
    normalized (default: Gaussian packet times uniform lights).
    """
    u = build_period_propagator(params, cat_kick=cat_kick, order=order)
    psi = product_state(params) if initial is None else np.asarray(initial, dtype=complex)
    if psi.shape != (params.dim,):
        raise ShapeMismatch(f"expected a state vector of length {params.dim}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-8:
        raise ValueError("initial state is not normalized")
    wanted = set(int(t) for t in snapshot_times)
    times = np.arange(n_steps + 1)
    entropy = np.zeros(n_steps + 1)
    snapshots = {}
    for t in range(n_steps + 1):
        rho = reduced_from_state(psi, params)
        entropy[t] = von_neumann_entropy(rho)
        if t in wanted:
            snapshots[t] = rho
        if t < n_steps:
            psi = u.apply(psi)
    return VonNeumannRun(params=params, times=times, entropy=entropy,
                        snapshots=snapshots)
