"""Ground-truth fermionic semantics and transform verification.

Operator sequences act on occupation bit-vectors with exact anticommutation
signs; qubit operators act on sparse basis-state superpositions. Verification
encodes each fermionic image and compares it amplitude by amplitude with the
qubit-side action, flagging Hamiltonians whose image leaves the encoded basis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .bitmath import BitVec
from .codes import Code
from .errors import DimensionError, UnsupportedCodeError
from .pauli import QubitOperator
from .transform import FermionHamiltonian, FermionTerm, transform_op_linear


@dataclass(frozen=True)
class FockStateVector:
    """Sparse amplitudes over occupation vectors."""

    n_modes: int
    amplitudes: dict[BitVec, complex] = field(default_factory=dict)

    @classmethod
    def basis_state(cls, nu: BitVec) -> "FockStateVector":
        return cls(nu.n, {nu: 1.0 + 0.0j})

    def isclose(self, other: "FockStateVector", atol: float = 1e-9) -> bool:
        keys = self.amplitudes.keys() | other.amplitudes.keys()
        return all(
            abs(self.amplitudes.get(k, 0.0) - other.amplitudes.get(k, 0.0)) <= atol
            for k in keys
        )


@dataclass(frozen=True)
class QubitStateVector:
    """Sparse amplitudes over computational basis words."""

    n_qubits: int
    amplitudes: dict[BitVec, complex] = field(default_factory=dict)

    @classmethod
    def basis_state(cls, omega: BitVec) -> "QubitStateVector":
        return cls(omega.n, {omega: 1.0 + 0.0j})

    def isclose(self, other: "QubitStateVector", atol: float = 1e-9) -> bool:
        keys = self.amplitudes.keys() | other.amplitudes.keys()
        return all(
            abs(self.amplitudes.get(k, 0.0) - other.amplitudes.get(k, 0.0)) <= atol
            for k in keys
        )


def apply_fermion_term(
    term: FermionTerm, nu: BitVec
) -> tuple[complex, BitVec] | None:
    """Image of one basis state under a ladder-operator product.

    Operators act right to left; each one contributes the parity sign of the
    occupied modes below it and flips its mode, or annihilates the state.
    Returns None when annihilated.
    """
    occ = nu.value
    sign = 1
    for mode, dagger in reversed(term.ops):
        bit = 1 << (mode - 1)
        occupied = occ & bit
        if dagger == bool(occupied):
            return None
        if (occ & (bit - 1)).bit_count() & 1:
            sign = -sign
        occ ^= bit
    return sign * term.coeff, BitVec.from_int(occ, nu.n)


def apply_hamiltonian_fock(h: FermionHamiltonian, state: FockStateVector) -> FockStateVector:
    if h.n_modes != state.n_modes:
        raise DimensionError("mode count mismatch")
    out: dict[BitVec, complex] = {}
    for nu, amp in state.amplitudes.items():
        for term in h.terms:
            hit = apply_fermion_term(term, nu)
            if hit is None:
                continue
            coeff, image = hit
            v = out.get(image, 0.0) + amp * coeff
            if v == 0:
                out.pop(image, None)
            else:
                out[image] = v
    return FockStateVector(h.n_modes, {k: v for k, v in out.items() if abs(v) > 1e-15})


def apply_qubit_operator(op: QubitOperator, state: QubitStateVector) -> QubitStateVector:
    """Linear action: X flips, Z signs, Y contributes i times sign-then-flip."""
    if op.n != state.n_qubits:
        raise DimensionError("qubit count mismatch")
    out: dict[int, complex] = {}
    strings = [(s.x, s.z, 1j ** s.y_count(), c) for s, c in op.terms.items()]
    for key, amp in state.amplitudes.items():
        b = key.value
        for x, z, unit, coeff in strings:
            phase = unit * (-1.0 if (b & z).bit_count() & 1 else 1.0)
            nb = b ^ x
            out[nb] = out.get(nb, 0.0) + amp * coeff * phase
    kept = {
        BitVec.from_int(b, op.n): v for b, v in out.items() if abs(v) > 1e-15
    }
    return QubitStateVector(op.n, kept)


@dataclass
class EquivalenceReport:
    """Per-basis-state comparison of fermionic and qubit-side actions."""

    status: str  # "pass" | "fail" | "incompatible"
    max_deviation: float
    failures: list[dict]
    states_checked: int

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> str:
        return json.dumps(
            {
                "status": self.status,
                "max_deviation": self.max_deviation,
                "failures": self.failures,
            },
            indent=2,
        )

    def summary(self) -> str:
        return (
            f"status={self.status} states={self.states_checked} "
            f"max_deviation={self.max_deviation:.3g} failures={len(self.failures)}"
        )


def verify_equivalence(
    code: Code,
    h: FermionHamiltonian,
    hq: QubitOperator,
    basis: list[BitVec],
    tol: float = 1e-9,
) -> EquivalenceReport:
    """Check that the qubit operator replicates the Hamiltonian on the basis.

    For every basis vector v the fermionic image of |v> is computed exactly;
    if any component falls outside the code's encoded set the Hamiltonian is
    incompatible with the code (its action cannot be represented). Otherwise
    the encoded image is compared with the qubit operator applied to |e(v)>.
    """
    if h.n_modes != code.n_modes or hq.n != code.n_qubits:
        raise DimensionError("code, Hamiltonian, and operator sizes must agree")
    strings = [(s.x, s.z, 1j ** s.y_count(), c) for s, c in hq.terms.items()]
    term_ops = [
        (t.coeff, [(1 << (m - 1), d) for m, d in reversed(t.ops)]) for t in h.terms
    ]
    encode_cache: dict[int, int] = {}
    in_basis_cache: dict[int, bool] = {}

    def encoded(value: int) -> int:
        w = encode_cache.get(value)
        if w is None:
            w = code.encode_vec(BitVec.from_int(value, code.n_modes)).value
            encode_cache[value] = w
        return w

    def in_basis(value: int) -> bool:
        flag = in_basis_cache.get(value)
        if flag is None:
            nu = BitVec.from_int(value, code.n_modes)
            flag = code.decode_vec(BitVec.from_int(encoded(value), code.n_qubits)) == nu
            in_basis_cache[value] = flag
        return flag

    max_dev = 0.0
    failures: list[dict] = []
    escapes: list[dict] = []
    for nu in basis:
        occ0 = nu.value
        expected: dict[int, complex] = {}
        for coeff, ops in term_ops:
            occ = occ0
            sign = 1
            dead = False
            for bit, dagger in ops:
                if dagger == bool(occ & bit):
                    dead = True
                    break
                if (occ & (bit - 1)).bit_count() & 1:
                    sign = -sign
                occ ^= bit
            if dead:
                continue
            expected[occ] = expected.get(occ, 0.0) + sign * coeff
        expected = {k: v for k, v in expected.items() if abs(v) > 1e-13}
        bad = [k for k in expected if not in_basis(k)]
        if bad:
            escapes.append(
                {
                    "nu": str(nu),
                    "detail": "image leaves the encoded basis at "
                    + ", ".join(str(BitVec.from_int(k, code.n_modes)) for k in bad[:4]),
                }
            )
            continue
        expected_q: dict[int, complex] = {}
        for k, v in expected.items():
            ek = encoded(k)
            expected_q[ek] = expected_q.get(ek, 0.0) + v
        w0 = encoded(occ0)
        actual: dict[int, complex] = {}
        for x, z, unit, coeff in strings:
            phase = unit * (-1.0 if (w0 & z).bit_count() & 1 else 1.0)
            nb = w0 ^ x
            actual[nb] = actual.get(nb, 0.0) + coeff * phase
        dev = 0.0
        for k in expected_q.keys() | actual.keys():
            dev = max(dev, abs(expected_q.get(k, 0.0) - actual.get(k, 0.0)))
        max_dev = max(max_dev, dev)
        if dev > tol:
            failures.append(
                {"nu": str(nu), "detail": f"amplitude deviation {dev:.3g}"}
            )
    if escapes:
        return EquivalenceReport("incompatible", max_dev, escapes + failures, len(basis))
    status = "pass" if not failures else "fail"
    return EquivalenceReport(status, max_dev, failures, len(basis))


@dataclass
class AnticommutationReport:
    ok: bool
    failures: list[str]

    def summary(self) -> str:
        return "all anticommutation relations hold" if self.ok else (
            f"{len(self.failures)} violations, first: {self.failures[0]}"
        )


def verify_anticommutation(code: Code, atol: float = 1e-12) -> AnticommutationReport:
    """Check the transformed ladder operators' anticommutation relations.

    Builds every single operator through the index-set form (full-Fock
    linear codes only) and verifies {c_i, c_j^dag} = delta_ij, {c_i, c_j} = 0,
    and {c_i^dag, c_j^dag} = 0 as operator identities.
    """
    if code.matrix is None:
        raise UnsupportedCodeError("anticommutation check needs a linear n = N code")
    n = code.n_modes
    annihilate = [transform_op_linear(code, j, dagger=False) for j in range(1, n + 1)]
    create = [transform_op_linear(code, j, dagger=True) for j in range(1, n + 1)]
    failures = []
    zero = QubitOperator.zero(code.n_qubits)
    for i in range(n):
        for j in range(n):
            anti = annihilate[i] * create[j] + create[j] * annihilate[i]
            target = (
                QubitOperator.identity(code.n_qubits) if i == j else zero
            )
            if not anti.isclose(target, atol):
                failures.append(f"{{c_{i + 1}, c_{j + 1}^dag}} != {'I' if i == j else '0'}")
            if j >= i:
                if not (
                    annihilate[i] * annihilate[j] + annihilate[j] * annihilate[i]
                ).isclose(zero, atol):
                    failures.append(f"{{c_{i + 1}, c_{j + 1}}} != 0")
                if not (create[i] * create[j] + create[j] * create[i]).isclose(
                    zero, atol
                ):
                    failures.append(f"{{c_{i + 1}^dag, c_{j + 1}^dag}} != 0")
    return AnticommutationReport(not failures, failures)


def fock_matrix(h: FermionHamiltonian, basis: list[BitVec]) -> np.ndarray:
    """Dense matrix of the Hamiltonian over an occupation basis list."""
    index = {nu: i for i, nu in enumerate(basis)}
    out = np.zeros((len(basis), len(basis)), dtype=complex)
    for col, nu in enumerate(basis):
        image = apply_hamiltonian_fock(h, FockStateVector.basis_state(nu))
        for mu, amp in image.amplitudes.items():
            row = index.get(mu)
            if row is None:
                raise ValueError(
                    f"Hamiltonian maps {nu} outside the given basis (to {mu})"
                )
            out[row, col] = amp
    return out
