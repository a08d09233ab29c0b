"""Independent dense oracles shared by the test modules.

Everything here is built from first principles with numpy kron products so
the package's sparse algebra is checked against a separate code path. Basis
states are indexed with qubit/mode 1 as the fastest (least significant) bit.
"""

import numpy as np

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|


def dense_pauli(n, factors):
    """Dense matrix of a Pauli-letter assignment {index: letter}."""
    out = np.eye(1, dtype=complex)
    for j in range(n, 0, -1):
        out = np.kron(out, PAULI[factors.get(j, "I")])
    return out


def dense_operator(op):
    """Dense matrix of a QubitOperator via per-term kron products."""
    dim = 1 << op.n
    out = np.zeros((dim, dim), dtype=complex)
    for s, c in op.terms.items():
        out += c * dense_pauli(op.n, s.factors)
    return out


def dense_annihilator(n_modes, j):
    """Fermionic annihilator as a dense matrix over occupation bit-strings.

    Standard realization: parity Z-string below mode j times |0><1| on j.
    """
    factors = {i: "Z" for i in range(1, j)}
    out = np.eye(1, dtype=complex)
    for m in range(n_modes, 0, -1):
        if m == j:
            out = np.kron(out, LOWER)
        else:
            out = np.kron(out, PAULI[factors.get(m, "I")])
    return out


def dense_creator(n_modes, j):
    return dense_annihilator(n_modes, j).conj().T


def dense_fermion_term(n_modes, term):
    """Dense matrix of a FermionTerm (leftmost operator applied last)."""
    dim = 1 << n_modes
    out = np.eye(dim, dtype=complex) * term.coeff
    for mode, dagger in term.ops:
        out = out @ (dense_creator(n_modes, mode) if dagger else dense_annihilator(n_modes, mode))
    return out


def dense_fermion_hamiltonian(h):
    dim = 1 << h.n_modes
    out = np.zeros((dim, dim), dtype=complex)
    for t in h.terms:
        out += dense_fermion_term(h.n_modes, t)
    return out


def random_boolpoly(rng, num_vars, max_monomials=6):
    from fermicode.bitmath import BoolPoly

    k = rng.randrange(0, max_monomials + 1)
    masks = [rng.randrange(0, 1 << num_vars) for _ in range(k)]
    return BoolPoly(num_vars, masks)


def random_invertible_bitmat(rng, n):
    from fermicode.bitmath import BitMat
    from fermicode.errors import SingularMatrixError

    while True:
        rows = [rng.randrange(0, 1 << n) for _ in range(n)]
        m = BitMat.from_int_rows(rows, n)
        try:
            m.inverse()
            return m
        except SingularMatrixError:
            continue
