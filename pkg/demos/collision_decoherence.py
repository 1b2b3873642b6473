"""A heavy cat-map particle decohered by light spectator particles.

The heavy particle lives on a 2**q dimensional space, each of the i
light particles on a 2**r dimensional one.  Between periods every light
particle picks up a phase kappa whenever its (coarse) position matches
the heavy particle's, which entangles the subsystems and suppresses
interference between the heavy particle's histories.

The script checks the two exact limits (no spectators, zero coupling),
then shows entanglement growth and the drop in off-diagonal mass.
"""

import numpy as np

from catlab import histories, multiparticle, numerics, quantum


def main():
    q, r, i = 4, 1, 2
    p, n = 2, 4
    sector = (0, 0)

    single = quantum.build_cat_unitary(quantum.CatParams(q, p=p))
    projs = quantum.build_projectors(quantum.CatParams(q, p=p))
    d_single = histories.decoherence_matrix(single, projs, n, sector=sector)

    free = multiparticle.MultiParams(q, r, 0, 0.0, p=p)
    d_free = multiparticle.multiparticle_histories(free, n, sector=sector)
    print("no spectators: matches the single-particle matrix to %.1e"
          % np.abs(d_free.entries - d_single.entries).max())

    uncoupled = multiparticle.MultiParams(q, r, i, 0.0, p=p)
    d_uncoupled = multiparticle.multiparticle_histories(uncoupled, n,
                                                        sector=sector)
    print("zero coupling: matches to %.1e"
          % np.abs(d_uncoupled.entries - d_single.entries).max())
    print()

    print("off-diagonal suppression, sector %s, n = %d:" % (sector, n))
    print("%8s %12s %12s" % ("kappa", "offdiag", "S_af"))
    for kappa in (0.0, 5.0, 10.0, 20.0):
        mp = multiparticle.MultiParams(q, r, i, kappa, p=p)
        d = multiparticle.multiparticle_histories(mp, n, sector=sector)
        s_af = numerics.spectral_entropy(d.spectrum())
        print("%8.1f %12.6f %12.6f" % (kappa, d.offdiag_mass(), s_af))
    print()

    mp = multiparticle.MultiParams(q, r, i, 10.0, p=p)
    run = multiparticle.von_neumann_run(mp, 8)
    print("entanglement entropy of the heavy particle, kappa = 10:")
    for t, s in zip(run.times, run.entropy):
        print("  t = %2d   S_vn = %.6f" % (t, s))
    print()
    print("a single collision strength already drives the reduced state")
    print("away from purity; the entropy then fluctuates below log(dim).")


if __name__ == "__main__":
    main()
