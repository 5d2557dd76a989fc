#!/usr/bin/env python3
# Copyright 2026 The vqemit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/h2_coefficients.csv.

H2 / STO-3G, Bravyi-Kitaev mapping, qubits 1 and 3 tapered to their
Hartree-Fock eigenvalues. The remaining pair (0, 2) is relabelled so that
the Hartree-Fock reference is |00> and the Hamiltonian reads
g0 + g1 Z1 + g2 Z2 + g3 Z1Z2 + g4 Y1Y2 + g5 X1X2.

Requires pyscf (not needed to build or test the C++ code).
"""
import argparse
import itertools

import numpy as np
from pyscf import ao2mo, fci, gto, scf

PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]).astype(complex),
}


def annihilator(j, n):
    """Jordan-Wigner a_j on n modes; basis index bit j = occupation of mode j."""
    dim = 2**n
    a = np.zeros((dim, dim))
    for s in range(dim):
        if (s >> j) & 1:
            sign = (-1) ** bin(s & ((1 << j) - 1)).count("1")
            a[s ^ (1 << j), s] = sign
    return a


def fermionic_hamiltonian(r):
    mol = gto.M(atom=f"H 0 0 0; H 0 0 {r}", basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), c.shape[1])  # chemist (pq|rs)
    n = 4  # spin orbitals, interleaved alpha/beta
    a = [annihilator(j, n) for j in range(n)]
    ad = [m.T for m in a]
    ham = mol.energy_nuc() * np.eye(2**n)
    spatial = lambda p: p // 2
    spin = lambda p: p % 2
    for p, q in itertools.product(range(n), repeat=2):
        if spin(p) == spin(q):
            ham += h1[spatial(p), spatial(q)] * ad[p] @ a[q]
    for p, q, r_, s in itertools.product(range(n), repeat=4):
        if spin(p) == spin(s) and spin(q) == spin(r_):
            v = eri[spatial(p), spatial(s), spatial(q), spatial(r_)]
            if v != 0.0:
                ham += 0.5 * v * ad[p] @ ad[q] @ a[r_] @ a[s]
    e_fci = fci.FCI(mf).kernel()[0]
    return ham, e_fci


def reduce_to_two_qubits(ham):
    # Bravyi-Kitaev parity bits for four modes.
    def bk(occ):
        n0, n1, n2, n3 = ((occ >> k) & 1 for k in range(4))
        b = [n0, n0 ^ n1, n2, n0 ^ n1 ^ n2 ^ n3]
        return sum(bit << k for k, bit in enumerate(b))

    perm = np.zeros((16, 16))
    for occ in range(16):
        perm[bk(occ), occ] = 1.0
    hbk = perm @ ham @ perm.T
    # Qubits 1 and 3 carry only Z; Hartree-Fock (modes 0,1 filled) has both at 0.
    keep = [s for s in range(16) if not (s >> 1) & 1 and not (s >> 3) & 1]
    block = hbk[np.ix_(keep, keep)]
    assert np.allclose(hbk[np.ix_(keep, [s for s in range(16) if s not in keep])], 0)
    # keep[] order: index = b0 + 2*b2. Hartree-Fock has b0 = 1; relabel to |00>.
    flip = np.kron(np.eye(2), PAULI["X"].real)
    block = flip @ block @ flip
    g = []
    for word in ("II", "IZ", "ZI", "ZZ", "YY", "XX"):
        # word is written qubit2 qubit1 (qubit 1 rightmost)
        op = np.kron(PAULI[word[0]], PAULI[word[1]])
        g.append(np.real(np.trace(op @ block)) / 4.0)
    recon = sum(
        gi * np.kron(PAULI[w[0]], PAULI[w[1]])
        for gi, w in zip(g, ("II", "IZ", "ZI", "ZZ", "YY", "XX"))
    )
    assert np.allclose(recon, block, atol=1e-12)
    return g, block


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/h2_coefficients.csv")
    args = ap.parse_args()
    rows = []
    for k in range(78):
        r = round(0.1 + 0.05 * k, 2)
        ham, e_fci = fermionic_hamiltonian(r)
        g, block = reduce_to_two_qubits(ham)
        assert abs(np.linalg.eigvalsh(block)[0] - e_fci) < 1e-9, (r, e_fci)
        rows.append((r, g))
    with open(args.out, "w") as f:
        f.write("# H2 / STO-3G reduced two-qubit Hamiltonian coefficients (Hartree).\n")
        f.write("# Bravyi-Kitaev mapping with two qubits tapered; reference state |00>.\n")
        f.write("# Regenerate with tools/scripts/gen_coefficients.py.\n")
        f.write("r_angstrom,g0,g1,g2,g3,g4,g5\n")
        for r, g in rows:
            f.write(f"{r:.2f}," + ",".join(f"{v:.15g}" for v in g) + "\n")


if __name__ == "__main__":
    main()
