"""Exact GF(2) arithmetic: bit vectors, bit matrices, boolean polynomials.

Component indices are 1-based everywhere, so component 1 of a vector is the
first orbital or qubit. Internally a vector is packed into an int whose bit
``i - 1`` holds component ``i``; the same packing is used for matrix rows and
for polynomial monomials.

Boolean polynomials are kept in algebraic normal form: a set of AND-monomials
combined by XOR. Each monomial is stored as an int mask of the participating
variables, the empty mask being the constant monomial 1 and an empty monomial
set the zero polynomial. ANF is canonical, so equality of polynomials is
equality of their monomial sets.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import BudgetError, DimensionError, SingularMatrixError

# Cap on the number of monomials (or operator terms) an operation may create;
# composing nonlinear functions can blow up exponentially, and silently
# truncating would corrupt results, so we abort instead.
DEFAULT_BUDGET = 1 << 20


def _parse_bits(bits) -> tuple[int, int]:
    """Return (packed value, length) for an iterable or string of bits."""
    if isinstance(bits, str):
        bits = [int(c) for c in bits]
    value = 0
    n = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bit components must be 0 or 1, got {b!r}")
        value |= b << n
        n += 1
    return value, n


class BitVec:
    """Immutable bit vector over GF(2) with 1-based component access."""

    __slots__ = ("n", "value")

    def __init__(self, bits):
        value, n = _parse_bits(bits)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "n", n)

    @classmethod
    def from_int(cls, value: int, n: int) -> "BitVec":
        if value < 0 or value >> n:
            raise ValueError(f"value {value} does not fit in {n} bits")
        v = object.__new__(cls)
        object.__setattr__(v, "value", value)
        object.__setattr__(v, "n", n)
        return v

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls.from_int(0, n)

    @classmethod
    def unit(cls, n: int, j: int) -> "BitVec":
        """Unit vector with component ``j`` set."""
        if not 1 <= j <= n:
            raise IndexError(f"component {j} outside 1..{n}")
        return cls.from_int(1 << (j - 1), n)

    def __setattr__(self, *_):
        raise AttributeError("BitVec is immutable")

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, j: int) -> int:
        if not 1 <= j <= self.n:
            raise IndexError(f"component {j} outside 1..{self.n}")
        return (self.value >> (j - 1)) & 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.n != other.n:
            raise DimensionError(f"length mismatch: {self.n} vs {other.n}")
        return BitVec.from_int(self.value ^ other.value, self.n)

    __add__ = __xor__  # mod-2 addition

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVec)
            and self.n == other.n
            and self.value == other.value
        )

    def __hash__(self) -> int:
        return hash((self.n, self.value))

    def weight(self) -> int:
        return self.value.bit_count()

    def ones(self) -> list[int]:
        """1-based indices of the set components, ascending."""
        return [j + 1 for j in range(self.n) if (self.value >> j) & 1]

    def concat(self, other: "BitVec") -> "BitVec":
        return BitVec.from_int(
            self.value | (other.value << self.n), self.n + other.n
        )

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.value >> j) & 1 for j in range(self.n))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_tuple())

    def __repr__(self) -> str:
        return f"BitVec('{self}')"


class BitMat:
    """Immutable GF(2) matrix; row ``i``, column ``j`` are 1-based."""

    __slots__ = ("rows", "cols", "_rows")

    def __init__(self, rows: Iterable):
        packed = []
        cols = None
        for row in rows:
            value, n = _parse_bits(row)
            if cols is None:
                cols = n
            elif n != cols:
                raise DimensionError("ragged rows in BitMat")
            packed.append(value)
        if cols is None:
            raise ValueError("BitMat needs at least one row")
        object.__setattr__(self, "_rows", tuple(packed))
        object.__setattr__(self, "rows", len(packed))
        object.__setattr__(self, "cols", cols)

    @classmethod
    def from_int_rows(cls, row_values: Sequence[int], cols: int) -> "BitMat":
        m = object.__new__(cls)
        object.__setattr__(m, "_rows", tuple(row_values))
        object.__setattr__(m, "rows", len(row_values))
        object.__setattr__(m, "cols", cols)
        return m

    @classmethod
    def identity(cls, n: int) -> "BitMat":
        return cls.from_int_rows([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMat":
        return cls.from_int_rows([0] * rows, cols)

    def __setattr__(self, *_):
        raise AttributeError("BitMat is immutable")

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"entry ({i},{j}) outside matrix")
        return (self._rows[i - 1] >> (j - 1)) & 1

    def row(self, i: int) -> BitVec:
        return BitVec.from_int(self._rows[i - 1], self.cols)

    def col(self, j: int) -> BitVec:
        value = 0
        for i, r in enumerate(self._rows):
            value |= ((r >> (j - 1)) & 1) << i
        return BitVec.from_int(value, self.rows)

    def transpose(self) -> "BitMat":
        return BitMat.from_int_rows(
            [self.col(j).value for j in range(1, self.cols + 1)], self.rows
        )

    def __matmul__(self, other):
        if isinstance(other, BitVec):
            if other.n != self.cols:
                raise DimensionError(
                    f"matrix with {self.cols} columns times length-{other.n} vector"
                )
            value = 0
            for i, r in enumerate(self._rows):
                value |= ((r & other.value).bit_count() & 1) << i
            return BitVec.from_int(value, self.rows)
        if isinstance(other, BitMat):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            bt = other.transpose()._rows
            out = []
            for r in self._rows:
                v = 0
                for k, c in enumerate(bt):
                    v |= ((r & c).bit_count() & 1) << k
                out.append(v)
            return BitMat.from_int_rows(out, other.cols)
        return NotImplemented

    def inverse(self) -> "BitMat":
        """Gauss-Jordan inverse mod 2; raises SingularMatrixError if none."""
        if self.rows != self.cols:
            raise SingularMatrixError("only square matrices can be inverted")
        n = self.rows
        work = list(self._rows)
        aug = [1 << i for i in range(n)]
        for col in range(n):
            pivot = next(
                (r for r in range(col, n) if (work[r] >> col) & 1), None
            )
            if pivot is None:
                raise SingularMatrixError(f"matrix is singular at column {col + 1}")
            work[col], work[pivot] = work[pivot], work[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            for r in range(n):
                if r != col and (work[r] >> col) & 1:
                    work[r] ^= work[col]
                    aug[r] ^= aug[col]
        return BitMat.from_int_rows(aug, n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMat)
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self) -> int:
        return hash((self.cols, self._rows))

    def __repr__(self) -> str:
        body = ", ".join(f"'{self.row(i)}'" for i in range(1, self.rows + 1))
        return f"BitMat([{body}])"


def _reduce_mod2(masks: Iterable[int]) -> frozenset:
    """XOR-reduce a monomial multiset: keep masks occurring an odd number of times."""
    seen = set()
    for m in masks:
        if m in seen:
            seen.discard(m)
        else:
            seen.add(m)
    return frozenset(seen)


class BoolPoly:
    """Boolean polynomial in canonical algebraic normal form.

    ``masks`` is a frozenset of int monomial masks over ``num_vars``
    variables; two polynomials over the same variable count are equal iff
    their monomial sets are equal.
    """

    __slots__ = ("num_vars", "masks", "_hash")

    def __init__(self, num_vars: int, masks: Iterable[int] = ()):
        masks = _reduce_mod2(masks)
        for m in masks:
            if m < 0 or m >> num_vars:
                raise DimensionError(
                    f"monomial mask {m:#x} uses variables beyond {num_vars}"
                )
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "masks", masks)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        if name == "_hash" and getattr(self, "_hash", None) is None:
            object.__setattr__(self, name, value)
            return
        raise AttributeError("BoolPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "BoolPoly":
        return cls(num_vars)

    @classmethod
    def one(cls, num_vars: int) -> "BoolPoly":
        return cls(num_vars, (0,))

    @classmethod
    def constant(cls, num_vars: int, bit: int) -> "BoolPoly":
        return cls.one(num_vars) if bit & 1 else cls.zero(num_vars)

    @classmethod
    def variable(cls, num_vars: int, j: int) -> "BoolPoly":
        if not 1 <= j <= num_vars:
            raise IndexError(f"variable {j} outside 1..{num_vars}")
        return cls(num_vars, (1 << (j - 1),))

    @classmethod
    def from_monomials(cls, num_vars: int, monomials: Iterable[Iterable[int]]) -> "BoolPoly":
        """Build from monomials given as collections of 1-based variable indices."""
        masks = []
        for mono in monomials:
            m = 0
            for j in mono:
                if not 1 <= j <= num_vars:
                    raise IndexError(f"variable {j} outside 1..{num_vars}")
                m |= 1 << (j - 1)
            masks.append(m)
        return cls(num_vars, masks)

    @classmethod
    def linear(cls, coeffs: BitVec, constant: int = 0) -> "BoolPoly":
        """Affine function ``constant + sum_j coeffs_j x_j``."""
        masks = [1 << j for j in range(coeffs.n) if (coeffs.value >> j) & 1]
        if constant & 1:
            masks.append(0)
        return cls(coeffs.n, masks)

    @classmethod
    def from_truth_table(cls, num_vars: int, values: Sequence[int]) -> "BoolPoly":
        """ANF of a function given by its ``2**num_vars`` truth-table values.

        ``values[x]`` is f at the assignment packed into int ``x``. Uses the
        Moebius transform over the subset lattice.
        """
        size = 1 << num_vars
        if len(values) != size:
            raise DimensionError(f"need {size} truth-table entries, got {len(values)}")
        coeffs = [v & 1 for v in values]
        for i in range(num_vars):
            bit = 1 << i
            for x in range(size):
                if x & bit:
                    coeffs[x] ^= coeffs[x ^ bit]
        return cls(num_vars, (x for x in range(size) if coeffs[x]))

    # -- text form -----------------------------------------------------

    @classmethod
    def from_text(cls, num_vars: int, text: str) -> "BoolPoly":
        """Parse the serialized form, e.g. ``"1 + x1 + x1*x2"`` or ``"0"``."""
        text = text.strip()
        if text == "0":
            return cls.zero(num_vars)
        masks = []
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if chunk == "1":
                masks.append(0)
                continue
            m = 0
            for factor in chunk.split("*"):
                factor = factor.strip()
                if not factor.startswith("x"):
                    raise ValueError(f"bad monomial factor {factor!r}")
                j = int(factor[1:])
                if not 1 <= j <= num_vars:
                    raise IndexError(f"variable {j} outside 1..{num_vars}")
                m |= 1 << (j - 1)
            masks.append(m)
        return cls(num_vars, masks)

    def to_text(self) -> str:
        if not self.masks:
            return "0"
        parts = []
        for m in sorted(self.masks, key=lambda m: (m.bit_count(), m)):
            if m == 0:
                parts.append("1")
            else:
                parts.append(
                    "*".join(f"x{j + 1}" for j in range(self.num_vars) if (m >> j) & 1)
                )
        return " + ".join(parts)

    # -- queries --------------------------------------------------------

    @property
    def monomials(self) -> frozenset:
        """Monomials as frozensets of 1-based variable indices."""
        return frozenset(
            frozenset(j + 1 for j in range(self.num_vars) if (m >> j) & 1)
            for m in self.masks
        )

    def degree(self) -> int:
        return max((m.bit_count() for m in self.masks), default=0)

    def is_linear(self) -> bool:
        """Degree at most 1 (affine functions included)."""
        return self.degree() <= 1

    def is_zero(self) -> bool:
        return not self.masks

    def constant_part(self) -> int:
        return 1 if 0 in self.masks else 0

    def linear_mask(self) -> int:
        """Packed coefficients of the degree-1 monomials."""
        mask = 0
        for m in self.masks:
            if m.bit_count() == 1:
                mask |= m
        return mask

    def support(self) -> int:
        """Mask of all variables occurring in any monomial."""
        s = 0
        for m in self.masks:
            s |= m
        return s

    def evaluate(self, x) -> int:
        """Evaluate at a BitVec or packed-int assignment."""
        if isinstance(x, BitVec):
            if x.n != self.num_vars:
                raise DimensionError(
                    f"assignment of length {x.n} for {self.num_vars} variables"
                )
            x = x.value
        acc = 0
        for m in self.masks:
            if (x & m) == m:
                acc ^= 1
        return acc

    # -- ring operations -------------------------------------------------

    def _check_vars(self, other: "BoolPoly"):
        if self.num_vars != other.num_vars:
            raise DimensionError(
                f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
            )

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        self._check_vars(other)
        out = object.__new__(BoolPoly)
        object.__setattr__(out, "num_vars", self.num_vars)
        object.__setattr__(out, "masks", self.masks ^ other.masks)
        object.__setattr__(out, "_hash", None)
        return out

    def mul(self, other: "BoolPoly", budget: int | None = None) -> "BoolPoly":
        self._check_vars(other)
        budget = DEFAULT_BUDGET if budget is None else budget
        if len(self.masks) * len(other.masks) > 4 * budget:
            raise BudgetError(
                f"product of {len(self.masks)} x {len(other.masks)} monomials "
                f"exceeds budget {budget}"
            )
        counts: dict[int, int] = {}
        for a in self.masks:
            for b in other.masks:
                m = a | b
                counts[m] = counts.get(m, 0) ^ 1
        masks = frozenset(m for m, c in counts.items() if c)
        if len(masks) > budget:
            raise BudgetError(f"{len(masks)} monomials exceed budget {budget}")
        out = object.__new__(BoolPoly)
        object.__setattr__(out, "num_vars", self.num_vars)
        object.__setattr__(out, "masks", masks)
        object.__setattr__(out, "_hash", None)
        return out

    def __mul__(self, other: "BoolPoly") -> "BoolPoly":
        return self.mul(other)

    def compose(self, subs: Sequence["BoolPoly"], budget: int | None = None) -> "BoolPoly":
        """Substitute ``subs[i]`` (all over k variables) for variable ``i+1``."""
        if len(subs) != self.num_vars:
            raise DimensionError(
                f"need {self.num_vars} substitutions, got {len(subs)}"
            )
        k = subs[0].num_vars if subs else 0
        for s in subs:
            if s.num_vars != k:
                raise DimensionError("substitutions must share a variable count")
        budget = DEFAULT_BUDGET if budget is None else budget
        acc = BoolPoly.zero(k)
        one = BoolPoly.one(k)
        for m in self.masks:
            prod = one
            mm = m
            while mm:
                j = (mm & -mm).bit_length() - 1
                prod = prod.mul(subs[j], budget)
                mm &= mm - 1
            acc = acc + prod
            if len(acc.masks) > budget:
                raise BudgetError(f"{len(acc.masks)} monomials exceed budget {budget}")
        return acc

    def shift_vars(self, offset: int, num_vars: int) -> "BoolPoly":
        """Re-index variables by ``offset`` into a wider variable space."""
        if offset < 0 or self.support() << offset >> num_vars:
            raise DimensionError("shifted monomials do not fit the variable space")
        return BoolPoly(num_vars, (m << offset for m in self.masks))

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BoolPoly)
            and self.num_vars == other.num_vars
            and self.masks == other.masks
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.num_vars, self.masks))
            self._hash = h
        return h

    def __repr__(self) -> str:
        return f"BoolPoly({self.num_vars}, '{self.to_text()}')"


def poly_sum(polys: Iterable[BoolPoly], num_vars: int) -> BoolPoly:
    """Mod-2 sum of polynomials over a shared variable count."""
    masks: set[int] = set()
    for p in polys:
        if p.num_vars != num_vars:
            raise DimensionError("variable count mismatch in poly_sum")
        masks ^= p.masks
    return BoolPoly(num_vars, masks)
