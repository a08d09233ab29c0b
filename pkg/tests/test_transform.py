import itertools
import random

import numpy as np
import pytest

from fermicode.bitmath import BitVec, BoolPoly
from fermicode.codes import (
    bravyi_kitaev,
    checksum_code,
    jordan_wigner,
    linear_code,
    parity_code,
    segment_code,
)
from fermicode.cli import h2_code, h2_hamiltonian, hubbard_hamiltonian
from fermicode.errors import (
    InputFormatError,
    NonHermitianError,
    UnsupportedCodeError,
)
from fermicode.fock_oracle import QubitStateVector, apply_qubit_operator
from fermicode.pauli import PauliString, QubitOperator
from fermicode.transform import (
    FermionHamiltonian,
    FermionTerm,
    adjust_for_segments,
    format_fermion_file,
    linear_sets,
    normal_order_blocks,
    parity_function,
    parse_fermion_file,
    transform_hamiltonian,
    transform_op_linear,
    transform_pair,
    transform_single_two_codes,
    transform_term,
    update_epsilon,
    update_operator,
)

from helpers import (
    dense_fermion_hamiltonian,
    dense_fermion_term,
    dense_operator,
    random_invertible_bitmat,
)


class TestParityFunction:
    def test_jw_examples(self):
        jw = jordan_wigner(4)
        assert parity_function(jw, 1).is_zero()
        assert parity_function(jw, 3) == BoolPoly.from_text(4, "x1 + x2")

    def test_checksum_example(self):
        c = checksum_code(4, "even")
        assert parity_function(c, 4) == BoolPoly.from_text(3, "x1 + x2 + x3")


class TestUpdateEpsilon:
    def test_jw_constant(self):
        jw = jordan_wigner(3)
        q = BitVec("110")
        eps = update_epsilon(jw, q)
        assert [e.to_text() for e in eps] == ["1", "1", "0"]

    def test_linear_code_constant_equals_aq(self):
        rng = random.Random(5)
        a = random_invertible_bitmat(rng, 5)
        c = linear_code(a)
        q = BitVec.from_int(rng.randrange(1 << 5), 5)
        eps = update_epsilon(c, q)
        aq = a @ q
        for j, e in enumerate(eps, start=1):
            assert e == BoolPoly.constant(5, aq[j])

    def test_binary_addressing_example(self):
        from fermicode.codes import binary_addressing_k1

        c = binary_addressing_k1(2)
        q = BitVec("1100")  # u1 + u2
        eps = update_epsilon(c, q)
        at_00 = BitVec([e.evaluate(0) for e in eps])
        assert at_00 == BitVec("10")


class TestUpdateOperator:
    def test_jw_x_string(self):
        jw = jordan_wigner(4)
        u = update_operator(jw, BitVec("1100"))
        assert u == QubitOperator.x_string(4, 0b0011)

    def test_parity_code_column(self):
        c = parity_code(4)
        u = update_operator(c, BitVec("0100"))
        assert u == QubitOperator.x_string(4, 0b1110)

    def test_nonlinear_demand_binary_addressing(self):
        from fermicode.codes import binary_addressing_k1

        c = binary_addressing_k1(2)
        q = BitVec("1010")  # u1 + u3
        u = update_operator(c, q)
        for mode in (1, 3):
            nu = BitVec.unit(4, mode)
            got = apply_qubit_operator(u, QubitStateVector.basis_state(c.encode_vec(nu)))
            want = QubitStateVector.basis_state(c.encode_vec(nu + q))
            assert got.isclose(want, 1e-12)


class TestTransformTerm:
    def test_jw_number_operator(self):
        jw = jordan_wigner(3)
        op = transform_term(jw, FermionTerm.of(1.0, (2, True), (2, False)))
        want = QubitOperator.identity(3, 0.5) + QubitOperator.z_string(3, 0b010, -0.5)
        assert op.isclose(want, 1e-12)

    def test_jw_singles_formula(self):
        # 1/2 (X_j + i(-1)^b Y_j) Z_{<j}
        jw = jordan_wigner(3)
        for j in range(1, 4):
            for dagger in (False, True):
                op = transform_term(jw, FermionTerm.of(1.0, (j, dagger)))
                zmask = (1 << (j - 1)) - 1
                sign = -1j if dagger else 1j
                want = QubitOperator(
                    3,
                    {
                        PauliString.from_masks(3, 1 << (j - 1), zmask): 0.5,
                        PauliString.from_masks(3, 1 << (j - 1), zmask | (1 << (j - 1))): 0.5 * sign,
                    },
                )
                assert op.isclose(want, 1e-12), (j, dagger)

    def test_identity_term(self):
        jw = jordan_wigner(2)
        op = transform_term(jw, FermionTerm.of(2.5))
        assert op == QubitOperator.identity(2, 2.5)

    def test_term_matches_dense_fermion_matrix(self):
        rng = random.Random(13)
        jw = jordan_wigner(4)
        for _ in range(30):
            length = rng.choice([1, 2, 3, 4])
            ops = tuple((rng.randrange(1, 5), rng.random() < 0.5) for _ in range(length))
            term = FermionTerm(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), ops)
            got = dense_operator(transform_term(jw, term))
            want = dense_fermion_term(4, term)
            assert np.allclose(got, want, atol=1e-12)

    def test_h2_support(self):
        code = h2_code()
        h = h2_hamiltonian(1.0, 0.5, 0.2, 0.2, 0.3, 0.1)
        total = transform_hamiltonian(code, h)
        support = {s.text() for s in total.terms}
        assert support == {"I", "X1*X2", "Z1", "Z2", "Z1*Z2"}


class TestLinearSets:
    def test_jw_sets(self):
        jw = jordan_wigner(4)
        s = linear_sets(jw, 3)
        assert s.parity_set == {1, 2}
        assert s.flip_set == {3}
        assert s.update_set == {3}

    def test_parity_sets(self):
        c = parity_code(4)
        s2 = linear_sets(c, 2)
        assert s2.flip_set == {1, 2}
        assert s2.update_set == {2, 3, 4}
        assert linear_sets(c, 1).parity_set == frozenset()

    def test_requires_linear_code(self):
        with pytest.raises(UnsupportedCodeError):
            linear_sets(checksum_code(4, "even"), 1)


class TestLinearFastPath:
    def test_jw_creation_formula(self):
        jw = jordan_wigner(3)
        op = transform_op_linear(jw, 2, dagger=True)
        want = QubitOperator(
            3,
            {
                PauliString(3, {1: "Z", 2: "X"}): 0.5,
                PauliString(3, {1: "Z", 2: "Y"}): -0.5j,
            },
        )
        assert op.isclose(want, 1e-12)

    def test_parity_transform_formula(self):
        # 1/2 (Z_{j-1} X_j + i(-1)^b Y_j) X_{>j}
        c = parity_code(4)
        for j in range(2, 5):
            for dagger in (True, False):
                op = transform_op_linear(c, j, dagger)
                tail = ((1 << 4) - 1) & ~((1 << j) - 1)
                sign = -1j if dagger else 1j
                want = QubitOperator(
                    4,
                    {
                        PauliString.from_masks(
                            4, (1 << (j - 1)) | tail, 1 << (j - 2)
                        ): 0.5,
                        PauliString.from_masks(
                            4, (1 << (j - 1)) | tail, 1 << (j - 1)
                        ): 0.5 * sign,
                    },
                )
                assert op.isclose(want, 1e-12), (j, dagger)

    @pytest.mark.parametrize("make", [jordan_wigner, parity_code, bravyi_kitaev])
    def test_equals_general_map(self, make):
        for n in (2, 3, 5):
            code = make(n)
            for j in range(1, n + 1):
                for dagger in (False, True):
                    fast = transform_op_linear(code, j, dagger)
                    general = transform_term(code, FermionTerm.of(1.0, (j, dagger)))
                    assert fast.isclose(general, 1e-12)
            # composed two-operator products agree as well
            for i, j in itertools.product(range(1, n + 1), repeat=2):
                composed = transform_op_linear(code, i, True) * transform_op_linear(
                    code, j, False
                )
                general = transform_term(
                    code, FermionTerm.of(1.0, (i, True), (j, False))
                )
                assert composed.isclose(general, 1e-12)


class TestTwoCodeSingles:
    def setup_method(self):
        self.even = checksum_code(4, "even")
        self.odd = checksum_code(4, "odd")
        self.even_states = [
            BitVec.from_int(v, 4) for v in range(16) if bin(v).count("1") % 2 == 0
        ]

    def _matches_on_even_basis(self, op, ref):
        for nu in self.even_states:
            w = QubitStateVector.basis_state(self.even.encode_vec(nu))
            if not apply_qubit_operator(op, w).isclose(apply_qubit_operator(ref, w), 1e-9):
                return False
        return True

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_number_operator_product(self, j):
        prod = transform_single_two_codes(
            self.even, self.odd, j, True
        ) * transform_single_two_codes(self.even, self.odd, j, False)
        ref = transform_term(self.even, FermionTerm.of(1.0, (j, True), (j, False)))
        assert self._matches_on_even_basis(prod, ref)

    def test_hops_match_pair_recipe(self):
        for i, j in itertools.permutations(range(1, 5), 2):
            prod = transform_single_two_codes(
                self.even, self.odd, i, True
            ) * transform_single_two_codes(self.even, self.odd, j, False)
            ref = transform_pair(self.even, i, j)
            assert self._matches_on_even_basis(prod, ref), (i, j)

    def test_annihilates_unencodable_images(self):
        even = checksum_code(2, "even")
        odd = checksum_code(2, "odd")
        # creation on an occupied mode must vanish
        op = transform_single_two_codes(even, odd, 1, True)
        w = QubitStateVector.basis_state(odd.encode_vec(BitVec("10")))
        assert not apply_qubit_operator(op, w).amplitudes


class TestTransformPair:
    def test_diagonal_case(self):
        jw = jordan_wigner(3)
        got = transform_pair(jw, 2, 2)
        want = QubitOperator.identity(3, 0.5) + QubitOperator.z_string(3, 0b010, -0.5)
        assert got.isclose(want, 1e-12)

    def test_matches_general_map_under_jw(self):
        jw = jordan_wigner(4)
        for i, j in itertools.permutations(range(1, 5), 2):
            assert transform_pair(jw, i, j).isclose(
                transform_term(jw, FermionTerm.of(1.0, (i, True), (j, False))), 1e-12
            )

    def test_h2_code_pairs_against_oracle(self):
        code = h2_code()
        basis = [BitVec("0101"), BitVec("0110"), BitVec("1001"), BitVec("1010")]
        for i, j in [(1, 2), (2, 1), (3, 4), (4, 3)]:
            op = transform_pair(code, i, j)
            term = FermionTerm.of(1.0, (i, True), (j, False))
            for nu in basis:
                from fermicode.fock_oracle import apply_fermion_term

                hit = apply_fermion_term(term, nu)
                want = (
                    QubitStateVector(code.n_qubits, {})
                    if hit is None or not code.in_basis(hit[1])
                    else QubitStateVector(
                        code.n_qubits, {code.encode_vec(hit[1]): hit[0]}
                    )
                )
                got = apply_qubit_operator(
                    op, QubitStateVector.basis_state(code.encode_vec(nu))
                )
                assert got.isclose(want, 1e-9), (i, j, str(nu))


class TestNormalOrdering:
    def test_already_blocked_unchanged(self):
        h = FermionHamiltonian(2, (FermionTerm.of(1.0, (1, True), (2, False)),))
        out = normal_order_blocks(h)
        assert out.terms == h.terms

    def test_printed_rewrite(self):
        h = FermionHamiltonian(
            2, (FermionTerm.of(1.0, (1, True), (2, True), (2, False), (1, False)),)
        )
        out = normal_order_blocks(h)
        assert len(out.terms) == 1
        assert out.terms[0].ops == ((1, True), (1, False), (2, True), (2, False))
        assert out.terms[0].coeff == 1.0

    def test_action_preserved_on_all_occupations(self):
        h = FermionHamiltonian(
            2, (FermionTerm.of(1.0, (1, True), (2, True), (1, False), (2, False)),)
        )
        out = normal_order_blocks(h)
        assert np.allclose(
            dense_fermion_hamiltonian(h), dense_fermion_hamiltonian(out), atol=1e-12
        )

    def test_random_sequences_preserved(self):
        rng = random.Random(19)
        for _ in range(40):
            n = 4
            length = rng.choice([2, 4, 6])
            modes = [rng.randrange(1, n + 1) for _ in range(length)]
            daggers = [True] * (length // 2) + [False] * (length // 2)
            rng.shuffle(daggers)
            term = FermionTerm(1.0, tuple(zip(modes, daggers)))
            h = FermionHamiltonian(n, (term,))
            out = normal_order_blocks(h)
            for t in out.terms:
                assert all(d == (idx % 2 == 0) for idx, (_, d) in enumerate(t.ops))
            assert np.allclose(
                dense_fermion_hamiltonian(h), dense_fermion_hamiltonian(out), atol=1e-12
            )

    def test_rejects_non_conserving(self):
        h = FermionHamiltonian(2, (FermionTerm.of(1.0, (1, True)),))
        with pytest.raises(UnsupportedCodeError):
            normal_order_blocks(h)


class TestSegmentAdjustment:
    SEGMENTS = ((1, 2, 3, 4, 5), (6, 7, 8, 9, 10))

    def test_same_segment_untouched(self):
        h = FermionHamiltonian(10, (FermionTerm.of(1.0, (1, True), (2, False)),))
        out = adjust_for_segments(h, self.SEGMENTS, 2)
        assert out.terms == h.terms

    def test_full_target_segment_annihilates(self):
        # two particles in segment A plus one at j in B: the dressed hop
        # must send the state to zero instead of overfilling A
        hop = FermionHamiltonian(10, (FermionTerm.of(1.0, (5, True), (6, False)),))
        dressed = adjust_for_segments(hop, self.SEGMENTS, 2)
        from fermicode.fock_oracle import FockStateVector, apply_hamiltonian_fock

        state = FockStateVector.basis_state(BitVec("1100010000"))
        out = apply_hamiltonian_fock(dressed, state)
        assert not out.amplitudes
        # with only one particle in A the hop goes through unchanged
        state2 = FockStateVector.basis_state(BitVec("1000010000"))
        out2 = apply_hamiltonian_fock(dressed, state2)
        assert out2.amplitudes == {BitVec("1000100000"): 1.0}

    def test_action_preserved_on_capped_states(self):
        hop = FermionHamiltonian(
            10,
            (
                FermionTerm.of(1.0, (5, True), (6, False)),
                FermionTerm.of(1.0, (6, True), (5, False)),
            ),
        )
        dressed = adjust_for_segments(hop, self.SEGMENTS, 2)
        from fermicode.fock_oracle import FockStateVector, apply_hamiltonian_fock

        rng = random.Random(3)
        for _ in range(40):
            a = rng.sample(range(1, 6), rng.randrange(0, 3))
            b = rng.sample(range(6, 11), rng.randrange(0, 3))
            occ = sum(1 << (m - 1) for m in a + b)
            nu = BitVec.from_int(occ, 10)
            s = FockStateVector.basis_state(nu)
            raw = apply_hamiltonian_fock(hop, s)
            adj = apply_hamiltonian_fock(dressed, s)
            raw_capped = {
                k: v
                for k, v in raw.amplitudes.items()
                if all(
                    sum(k[m] for m in seg) <= 2 for seg in self.SEGMENTS
                )
            }
            assert adj.amplitudes == raw_capped

    def test_dressed_pair_hermitian_dense(self):
        # reduced-size lattice: 8 modes, segments of two, dense check
        h = hubbard_hamiltonian(2, 2, 1.0, 1.0, periodic_lateral=False)
        segments = ((1, 2), (3, 4), (5, 6), (7, 8))
        for weight in (1, 2):
            dressed = adjust_for_segments(normal_order_blocks(h), segments, weight)
            m = dense_fermion_hamiltonian(dressed)
            assert np.max(np.abs(m - m.conj().T)) < 1e-12

    def test_requires_blocked_input(self):
        h = FermionHamiltonian(
            10, (FermionTerm.of(1.0, (1, True), (6, True), (6, False), (1, False)),)
        )
        with pytest.raises(UnsupportedCodeError):
            adjust_for_segments(h, self.SEGMENTS, 2)


class TestHamiltonianTransform:
    def test_empty_hamiltonian(self):
        jw = jordan_wigner(3)
        out = transform_hamiltonian(jw, FermionHamiltonian(3, ()))
        assert out.is_zero()

    def test_h2_five_terms(self):
        code = h2_code()
        hq = transform_hamiltonian(code, h2_hamiltonian(1.0, 0.5, 0.2, 0.2, 0.3, 0.1))
        assert hq.num_terms == 5
        ok, _ = hq.check_hermitian()
        assert ok

    def test_non_hermitian_flagged(self):
        code = segment_code(2, 2)
        hop = FermionHamiltonian(
            10,
            (
                FermionTerm.of(1.0, (6, True), (1, False)),
                FermionTerm.of(1.0, (1, True), (6, False)),
            ),
        )
        with pytest.raises(NonHermitianError):
            transform_hamiltonian(code, hop)


class TestFermionFiles:
    def test_round_trip(self):
        h = hubbard_hamiltonian(1, 2, 1.0, 2.0, periodic_lateral=False)
        text = format_fermion_file(h)
        back = parse_fermion_file(text)
        assert back.n_modes == h.n_modes
        assert back.terms == h.terms

    def test_comments_and_blanks(self):
        text = "# a comment\n\n1 0 : +1 -2  # inline\n"
        h = parse_fermion_file(text)
        assert h.terms == (FermionTerm.of(1.0, (1, True), (2, False)),)

    def test_errors_carry_line_numbers(self):
        with pytest.raises(InputFormatError, match="line 2"):
            parse_fermion_file("1 0 : +1 -1\n1 0 +2\n")
        with pytest.raises(InputFormatError, match="line 1"):
            parse_fermion_file("1 0 : ++1\n")
