"""Mapping of second-quantized fermionic operators to qubit operators.

The general weight-l operator map composes, per operator in the sequence,
a projector onto the correct occupation and a parity-sign operator (both
diagonal, built by extracting decode and parity functions), followed by a
single update operator that flips the code word. Linear encodings reduce
the update operator to an X-string; for classical n = N codes the whole
construction collapses to Pauli strings over parity/flip/update index sets.

Also here: reordering of particle-conserving Hamiltonians into creation/
annihilation pair blocks, the pair-block and two-code single-operator
recipes, and the occupation-capping dressing that makes segment codes
compatible with hopping terms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bitmath import DEFAULT_BUDGET, BitVec, BoolPoly, poly_sum
from .codes import Code
from .errors import (
    DimensionError,
    InputFormatError,
    NonHermitianError,
    UnsupportedCodeError,
)
from .pauli import (
    PauliString,
    QubitOperator,
    _diagonal_from_values,
    extract,
    poly_table,
)


@dataclass(frozen=True)
class FermionTerm:
    """Weighted product of ladder operators, leftmost factor first.

    ``ops`` entries are (mode, is_creation); an empty sequence is a scalar
    multiple of the identity.
    """

    coeff: complex
    ops: tuple[tuple[int, bool], ...]

    @classmethod
    def of(cls, coeff: complex, *ops: tuple[int, bool]) -> "FermionTerm":
        return cls(complex(coeff), tuple((int(m), bool(d)) for m, d in ops))

    def max_mode(self) -> int:
        return max((m for m, _ in self.ops), default=0)

    def scaled(self, factor: complex) -> "FermionTerm":
        return FermionTerm(self.coeff * factor, self.ops)

    def __str__(self) -> str:
        body = " ".join(("+" if d else "-") + str(m) for m, d in self.ops)
        return f"({self.coeff}) {body or '1'}"


@dataclass(frozen=True)
class FermionHamiltonian:
    """Sum of fermionic terms over modes 1..N."""

    n_modes: int
    terms: tuple[FermionTerm, ...]

    def __post_init__(self):
        for t in self.terms:
            for m, _ in t.ops:
                if not 1 <= m <= self.n_modes:
                    raise DimensionError(f"mode {m} outside 1..{self.n_modes}")

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def merged(self, drop_below: float = 0.0) -> "FermionHamiltonian":
        """Combine identical operator sequences and drop vanished terms."""
        acc: dict[tuple, complex] = {}
        for t in self.terms:
            acc[t.ops] = acc.get(t.ops, 0.0) + t.coeff
        kept = tuple(
            FermionTerm(c, ops) for ops, c in acc.items() if abs(c) > drop_below
        )
        return FermionHamiltonian(self.n_modes, kept)


# -- Hamiltonian files --------------------------------------------------------


def parse_fermion_file(text: str, n_modes: int | None = None) -> FermionHamiltonian:
    """Parse ``<re> <im> : +i -j ...`` lines; '#' comments and blanks ignored."""
    terms = []
    max_mode = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InputFormatError(f"line {lineno}: missing ':' separator")
        head, tail = line.split(":", 1)
        parts = head.split()
        if len(parts) != 2:
            raise InputFormatError(f"line {lineno}: expected '<re> <im> :'")
        try:
            coeff = complex(float(parts[0]), float(parts[1]))
        except ValueError as exc:
            raise InputFormatError(f"line {lineno}: bad coefficient: {exc}") from exc
        ops = []
        for tok in tail.split():
            if tok[0] not in "+-" or not tok[1:].isdigit():
                raise InputFormatError(f"line {lineno}: bad operator token {tok!r}")
            mode = int(tok[1:])
            if mode < 1:
                raise InputFormatError(f"line {lineno}: modes are 1-based")
            ops.append((mode, tok[0] == "+"))
            max_mode = max(max_mode, mode)
        terms.append(FermionTerm(coeff, tuple(ops)))
    n = n_modes if n_modes is not None else max_mode
    if max_mode > n:
        raise InputFormatError(f"mode {max_mode} exceeds declared mode count {n}")
    return FermionHamiltonian(n, tuple(terms))


def format_fermion_file(h: FermionHamiltonian) -> str:
    lines = [f"# modes: {h.n_modes}"]
    for t in h.terms:
        body = " ".join(("+" if d else "-") + str(m) for m, d in t.ops)
        lines.append(f"{t.coeff.real:.15g} {t.coeff.imag:.15g} : {body}".rstrip())
    return "\n".join(lines) + "\n"


# -- parity / update machinery ------------------------------------------------


def parity_function(code: Code, j: int) -> BoolPoly:
    """Mod-2 sum of the decode components below mode j."""
    if not 1 <= j <= code.n_modes:
        raise IndexError(f"mode {j} outside 1..{code.n_modes}")
    cache = code._cache.setdefault("parity", {})
    if j not in cache:
        cache[j] = poly_sum(code.decode[: j - 1], code.n_qubits)
    return cache[j]


def _epsilon_polys(
    decode: tuple[BoolPoly, ...],
    encode: tuple[BoolPoly, ...],
    q: BitVec,
    budget: int | None,
) -> list[BoolPoly]:
    """Components of w -> encode(decode(w) + q) + w."""
    n = decode[0].num_vars if decode else 0
    shifted = [d + BoolPoly.constant(n, q[i + 1]) for i, d in enumerate(decode)]
    out = []
    for j, e_j in enumerate(encode, start=1):
        eps = e_j.compose(shifted, budget) + BoolPoly.variable(n, j)
        out.append(eps)
    return out


def update_epsilon(code: Code, q: BitVec, budget: int | None = None) -> list[BoolPoly]:
    """Flip pattern carrying |e(v)> to |e(v + q)>, one component per qubit."""
    if q.n != code.n_modes:
        raise DimensionError(f"q has length {q.n}, expected {code.n_modes}")
    return _epsilon_polys(code.decode, code.encode, q, budget)


def _update_from_epsilon(
    n: int,
    eps: list[BoolPoly],
    budget: int,
    prune_epsilon: float,
) -> QubitOperator:
    """Sum over flip patterns t of X^t times the projector onto eps(w) = t.

    Expands the projector product branch by branch, dropping branches whose
    partial product has already vanished; constant components keep exactly
    one branch alive, so linear cases degenerate to a single X-string.
    """
    out = QubitOperator.zero(n, prune_epsilon)
    start = QubitOperator.identity(n, 1.0, prune_epsilon)

    def walk(j: int, partial: QubitOperator, tmask: int):
        nonlocal out
        if j == len(eps):
            out = out + QubitOperator.x_string(n, tmask, 1.0, prune_epsilon).mul(
                partial, budget=budget
            )
            return
        xop = extract(eps[j], n, prune_epsilon, budget)
        for t_j in (0, 1):
            sign = -1.0 if t_j else 1.0
            factor = QubitOperator.identity(n, 0.5, prune_epsilon) + (0.5 * sign) * xop
            nxt = partial.mul(factor, budget=budget)
            if nxt.is_zero():
                continue
            walk(j + 1, nxt, tmask | (t_j << j))

    walk(0, start, 0)
    return out


def update_operator(
    code: Code,
    q: BitVec,
    budget: int | None = None,
    prune_epsilon: float = 1e-12,
) -> QubitOperator:
    """Operator satisfying U |e(v)> = |e(v + q)> for every encoded v."""
    if q.n != code.n_modes:
        raise DimensionError(f"q has length {q.n}, expected {code.n_modes}")
    budget = DEFAULT_BUDGET if budget is None else budget
    if code.encode_is_linear:
        mask = code.encode_linear_action(q).value
        return QubitOperator.x_string(code.n_qubits, mask, 1.0, prune_epsilon)
    eps = update_epsilon(code, q, budget)
    return _update_from_epsilon(code.n_qubits, eps, budget, prune_epsilon)


# -- the general operator map --------------------------------------------------


def _term_signs(ops: tuple[tuple[int, bool], ...]) -> tuple[float, list[float]]:
    """Global anticommutation sign and per-factor projector signs.

    The global sign counts mode-index inversions in the sequence; each
    factor's sign additionally flips once per later occurrence of the same
    mode (its occupation has changed by the time that factor acts).
    """
    modes = [m for m, _ in ops]
    inversions = sum(
        1
        for v in range(len(modes))
        for w in range(v + 1, len(modes))
        if modes[v] > modes[w]
    )
    signs = []
    for x, (mode, dagger) in enumerate(ops):
        repeats = sum(1 for y in range(x + 1, len(modes)) if modes[y] == mode)
        s = -1.0 if (repeats & 1) else 1.0
        if dagger:
            s = -s
        signs.append(s)
    return (-1.0 if inversions & 1 else 1.0), signs


def _diagonal_part(
    code: Code,
    ops: tuple[tuple[int, bool], ...],
    signs: list[float],
    budget: int,
    prune_epsilon: float,
) -> QubitOperator:
    """Product of occupation projectors and parity extractions for one term."""
    n = code.n_qubits
    parity = poly_sum((parity_function(code, m) for m, _ in ops), n)
    decodes = [code.decode[m - 1] for m, _ in ops]

    if parity.is_linear() and all(d.is_linear() for d in decodes):
        op = extract(parity, n, prune_epsilon, budget)
        for d, s in zip(decodes, signs):
            proj = QubitOperator.identity(n, 0.5, prune_epsilon) + (-0.5 * s) * extract(
                d, n, prune_epsilon, budget
            )
            op = proj.mul(op, budget=budget)
        return op

    support_mask = parity.support()
    for d in decodes:
        support_mask |= d.support()
    support = [j + 1 for j in range(n) if (support_mask >> j) & 1]
    if len(support) <= 16:
        values = (1.0 - 2.0 * poly_table(parity, support)).astype(float)
        for d, s in zip(decodes, signs):
            values = values * 0.5 * (1.0 - s * (1.0 - 2.0 * poly_table(d, support)))
        return _diagonal_from_values(n, support, values, prune_epsilon, budget)

    op = extract(parity, n, prune_epsilon, budget)
    for d, s in zip(decodes, signs):
        proj = QubitOperator.identity(n, 0.5, prune_epsilon) + (-0.5 * s) * extract(
            d, n, prune_epsilon, budget
        )
        op = proj.mul(op, budget=budget)
    return op


def transform_term(
    code: Code,
    term: FermionTerm,
    budget: int | None = None,
    prune_epsilon: float = 1e-12,
) -> QubitOperator:
    """Qubit image of one fermionic term under the code's operator map."""
    budget = DEFAULT_BUDGET if budget is None else budget
    n = code.n_qubits
    if term.max_mode() > code.n_modes:
        raise DimensionError(
            f"term touches mode {term.max_mode()}, code has {code.n_modes}"
        )
    if not term.ops:
        # Scalar term: the map's empty product acts as the identity on the
        # encoded space; emit the identity itself to stay hermitian.
        return QubitOperator.identity(n, term.coeff, prune_epsilon)
    global_sign, signs = _term_signs(term.ops)
    diag = _diagonal_part(code, term.ops, signs, budget, prune_epsilon)
    q_value = 0
    for m, _ in term.ops:
        q_value ^= 1 << (m - 1)
    q = BitVec.from_int(q_value, code.n_modes)
    update = update_operator(code, q, budget, prune_epsilon)
    return (term.coeff * global_sign) * update.mul(diag, budget=budget)


def transform_hamiltonian(
    code: Code,
    h: FermionHamiltonian,
    budget: int | None = None,
    prune_epsilon: float = 1e-12,
    check_hermiticity: bool = True,
    hermiticity_tol: float = 1e-9,
) -> QubitOperator:
    """Transform and sum all terms; flags non-hermitian results.

    A non-hermitian outcome means the code does not keep this Hamiltonian's
    action inside the encoded basis (for example unadjusted hops between
    segments, or a not-one-to-one code without balanced degenerate states).
    """
    if h.n_modes != code.n_modes:
        raise DimensionError(
            f"Hamiltonian has {h.n_modes} modes, code encodes {code.n_modes}"
        )
    acc: dict[PauliString, complex] = {}
    for term in h.terms:
        top = transform_term(code, term, budget, prune_epsilon)
        for s, c in top.terms.items():
            acc[s] = acc.get(s, 0.0) + c
    out = QubitOperator(code.n_qubits, acc, prune_epsilon)
    if check_hermiticity:
        ok, witness = out.check_hermitian(hermiticity_tol)
        if not ok:
            raise NonHermitianError(
                "transformed Hamiltonian is not hermitian (witness "
                f"{witness.text()}, coefficient {out.coefficient(witness):.3g}); "
                "the code cannot represent this Hamiltonian's action on its "
                "encoded basis - occupation-capped segments need the dressed "
                "Hamiltonian, and degenerate code words need terms that "
                "annihilate them",
                witness=witness,
            )
    return out


# -- linear-code fast path ------------------------------------------------------


@dataclass(frozen=True)
class LinearSets:
    """Qubit index sets for the Pauli-string form of a linear transform."""

    parity_set: frozenset[int]
    flip_set: frozenset[int]
    update_set: frozenset[int]


def linear_sets(code: Code, j: int) -> LinearSets:
    """Index sets from the parity matrix R, A^-1 rows, and A columns."""
    if code.matrix is None or code.matrix_inv is None:
        raise UnsupportedCodeError("parity/flip/update sets need a linear n = N code")
    if not 1 <= j <= code.n_modes:
        raise IndexError(f"mode {j} outside 1..{code.n_modes}")
    n = code.n_modes
    a, a_inv = code.matrix, code.matrix_inv
    # Row j of (R A^-1) is the mod-2 sum of rows 1..j-1 of A^-1.
    p_value = 0
    for i in range(1, j):
        p_value ^= a_inv.row(i).value
    return LinearSets(
        parity_set=frozenset(BitVec.from_int(p_value, n).ones()),
        flip_set=frozenset(a_inv.row(j).ones()),
        update_set=frozenset(a.col(j).ones()),
    )


def transform_op_linear(
    code: Code,
    j: int,
    dagger: bool,
    prune_epsilon: float = 1e-12,
) -> QubitOperator:
    """Single ladder operator on a full-Fock linear code, via index sets."""
    sets = linear_sets(code, j)
    n = code.n_qubits

    def mask(indices):
        v = 0
        for i in indices:
            v |= 1 << (i - 1)
        return v

    x_part = QubitOperator.x_string(n, mask(sets.update_set), 0.5, prune_epsilon)
    flip = QubitOperator.z_string(
        n, mask(sets.flip_set), -1.0 if dagger else 1.0, prune_epsilon
    )
    projector = QubitOperator.identity(n, 1.0, prune_epsilon) + (-1.0) * flip
    parity = QubitOperator.z_string(n, mask(sets.parity_set), 1.0, prune_epsilon)
    return x_part * projector * parity


def transform_single_two_codes(
    code_even: Code,
    code_odd: Code,
    j: int,
    dagger: bool,
    budget: int | None = None,
    prune_epsilon: float = 1e-12,
) -> QubitOperator:
    """Single ladder operator using separate codes for the two particle sectors.

    Annihilators read an even-sector word and update it into the odd
    encoding; creators do the reverse. The projector and parity functions
    therefore come from the incoming sector's code while the update pattern
    re-encodes through the outgoing code.
    """
    if code_even.n_qubits != code_odd.n_qubits or code_even.n_modes != code_odd.n_modes:
        raise DimensionError("sector codes must share mode and qubit counts")
    budget = DEFAULT_BUDGET if budget is None else budget
    n = code_even.n_qubits
    incoming, outgoing = (code_odd, code_even) if dagger else (code_even, code_odd)
    sign = -1.0 if dagger else 1.0  # projector selects d_j = 0 for creation
    proj = QubitOperator.identity(n, 0.5, prune_epsilon) + (-0.5 * sign) * extract(
        incoming.decode[j - 1], n, prune_epsilon, budget
    )
    parity = extract(parity_function(incoming, j), n, prune_epsilon, budget)
    q = BitVec.unit(code_even.n_modes, j)
    eps = _epsilon_polys(incoming.decode, outgoing.encode, q, budget)
    if all(e.degree() == 0 for e in eps):
        mask = 0
        for i, e in enumerate(eps):
            mask |= e.constant_part() << i
        update = QubitOperator.x_string(n, mask, 1.0, prune_epsilon)
    else:
        update = _update_from_epsilon(n, eps, budget, prune_epsilon)
    return update.mul(proj.mul(parity, budget=budget), budget=budget)


def transform_pair(
    code: Code,
    i: int,
    j: int,
    budget: int | None = None,
    prune_epsilon: float = 1e-12,
) -> QubitOperator:
    """Hopping block c_i^dag c_j for particle-conserving Hamiltonians."""
    budget = DEFAULT_BUDGET if budget is None else budget
    n = code.n_qubits
    if i == j:
        return QubitOperator.identity(n, 0.5, prune_epsilon) + (-0.5) * extract(
            code.decode[j - 1], n, prune_epsilon, budget
        )
    parity = extract(
        parity_function(code, i) + parity_function(code, j), n, prune_epsilon, budget
    )
    proj_i = QubitOperator.identity(n, 1.0, prune_epsilon) + extract(
        code.decode[i - 1], n, prune_epsilon, budget
    )
    proj_j = QubitOperator.identity(n, 1.0, prune_epsilon) + (-1.0) * extract(
        code.decode[j - 1], n, prune_epsilon, budget
    )
    q = BitVec.unit(code.n_modes, i) + BitVec.unit(code.n_modes, j)
    update = update_operator(code, q, budget, prune_epsilon)
    sign = -1.0 if i > j else 1.0
    diag = parity.mul(proj_i, budget=budget).mul(proj_j, budget=budget)
    return (0.25 * sign) * update.mul(diag, budget=budget)


# -- reordering and segment dressing --------------------------------------------


def _is_blocked(ops: tuple[tuple[int, bool], ...]) -> bool:
    return all(d == (idx % 2 == 0) for idx, (_, d) in enumerate(ops))


def normal_order_blocks(h: FermionHamiltonian) -> FermionHamiltonian:
    """Rewrite every term into creation/annihilation pair blocks.

    Uses the anticommutation relations, so the action on every occupation
    state is unchanged; contraction terms from same-mode swaps drop two
    operators and may leave pure scalars. Requires particle-conserving
    terms (equal creation and annihilation counts).
    """
    out: list[FermionTerm] = []
    for term in h.terms:
        daggers = sum(1 for _, d in term.ops if d)
        if 2 * daggers != len(term.ops):
            raise UnsupportedCodeError(
                f"term {term} does not conserve particle number"
            )
        stack = [(term.coeff, list(term.ops))]
        while stack:
            coeff, ops = stack.pop()
            pos = next(
                (idx for idx, (_, d) in enumerate(ops) if d != (idx % 2 == 0)), None
            )
            if pos is None:
                out.append(FermionTerm(coeff, tuple(ops)))
                continue
            want = pos % 2 == 0
            k = max(idx for idx in range(pos + 1, len(ops)) if ops[idx][1] == want)
            cur = list(ops)
            c = coeff
            for m in range(k, pos, -1):
                left, right = cur[m - 1], cur[m]
                if left[0] == right[0] and left[1] != right[1]:
                    stack.append((c, cur[: m - 1] + cur[m + 1 :]))
                cur[m - 1], cur[m] = right, left
                c = -c
            stack.append((c, cur))
    return FermionHamiltonian(h.n_modes, tuple(out)).merged()


def _capping_factor(segment: tuple[int, ...], weight: int) -> list[tuple[float, tuple]]:
    """Terms of 1 - sum over weight-sized mode subsets of their number operators."""
    terms: list[tuple[float, tuple]] = [(1.0, ())]
    for subset in itertools.combinations(sorted(segment), weight):
        ops = tuple(op for m in subset for op in ((m, True), (m, False)))
        terms.append((-1.0, ops))
    return terms


def adjust_for_segments(
    h: FermionHamiltonian,
    segments: tuple[tuple[int, ...], ...],
    weight: int,
) -> FermionHamiltonian:
    """Dress hops between occupation-capped segments so they cannot overfill.

    Each c_i^dag c_j block whose modes sit in different segments is wrapped
    as (1 - sum of weight-K number products over j's segment) on the left
    and the analogous factor for i's segment on the right; on states with
    at most K particles per segment this exactly switches off transitions
    that would exceed the cap, and the dressed pair stays hermitian.
    """
    seg_of: dict[int, int] = {}
    for idx, seg in enumerate(segments):
        for m in seg:
            if m in seg_of:
                raise DimensionError(f"mode {m} assigned to two segments")
            seg_of[m] = idx
    out: list[FermionTerm] = []
    for term in h.terms:
        if not _is_blocked(term.ops):
            raise UnsupportedCodeError(
                f"term {term} is not in creation/annihilation block form; "
                "normal-order first"
            )
        factor_terms: list[list[tuple[float, tuple]]] = []
        for b in range(0, len(term.ops), 2):
            (i, _), (j, _) = term.ops[b], term.ops[b + 1]
            block = ((i, True), (j, False))
            si, sj = seg_of.get(i), seg_of.get(j)
            if i != j and si != sj:
                left = _capping_factor(segments[sj], weight) if sj is not None else [(1.0, ())]
                right = _capping_factor(segments[si], weight) if si is not None else [(1.0, ())]
                dressed = [
                    (cl * cr, ol + block + orr)
                    for cl, ol in left
                    for cr, orr in right
                ]
                factor_terms.append(dressed)
            else:
                factor_terms.append([(1.0, block)])
        for combo in itertools.product(*factor_terms):
            coeff = term.coeff
            ops: tuple = ()
            for c, o in combo:
                coeff *= c
                ops += o
            out.append(FermionTerm(coeff, ops))
    return FermionHamiltonian(h.n_modes, tuple(out)).merged()
