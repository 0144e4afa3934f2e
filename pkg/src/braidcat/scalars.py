"""Exact field arithmetic, dense and sparse exact linear algebra, seeded sampling.

Two field contexts are supported: the rationals (backed by
:class:`fractions.Fraction`) and a prime field GF(p) whose elements are
:class:`Residue` values.  Nothing in the package ever rounds.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence


class MixedFieldContext(TypeError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for p < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Residue:
    """An element of GF(p), stored as its representative in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.p != self.p:
                raise MixedFieldContext(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            raise MixedFieldContext(f"GF({self.p}) vs rationals")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.v, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise DivisionByZero("division by zero in GF(%d)" % self.p)
        return Residue(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise DivisionByZero("division by zero in GF(%d)" % self.p)
        return Residue(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return Residue(-self.v, self.p)

    def __pos__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class Field:
    """A field context: coercion, parsing, formatting and sampling."""

    name: str

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def sample(self, word: int):
        """Map a 64-bit integer to a field element (see :func:`seeded_random_vector`)."""
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError


class RationalField(Field):
    name = "rational"

    def __call__(self, x):
        if isinstance(x, Residue):
            raise MixedFieldContext("residue used in a rational context")
        return Fraction(x)

    def sample(self, word: int):
        return Fraction(word % 20001 - 10000)

    def format(self, x) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def parse(self, text: str):
        return Fraction(text.strip())

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    def __init__(self, p: int = 32003):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"

    def __call__(self, x):
        if isinstance(x, Residue):
            if x.p != self.p:
                raise MixedFieldContext(f"GF({x.p}) element used in GF({self.p})")
            return x
        if isinstance(x, Fraction):
            num = Residue(x.numerator, self.p)
            return num / Residue(x.denominator, self.p)
        return Residue(int(x), self.p)

    def sample(self, word: int):
        return Residue(word % self.p, self.p)

    def format(self, x) -> str:
        return f"{self(x).v}/1"

    def parse(self, text: str):
        return self(Fraction(text.strip()))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_name(name: str) -> Field:
    """``"rational"`` or ``"fp:<prime>"``."""
    if name in ("rational", "QQ", "Q"):
        return QQ
    if name.startswith("fp:"):
        return PrimeField(int(name[3:]))
    if name == "fp":
        return PrimeField()
    raise ValueError(f"unknown field {name!r}")


def field_of(x) -> Field:
    if isinstance(x, Residue):
        return PrimeField(x.p)
    return QQ


def field_arithmetic(a, b, op: str):
    if isinstance(a, Residue) != isinstance(b, Residue) or (
        isinstance(a, Residue) and a.p != b.p
    ):
        raise MixedFieldContext(f"{a!r} and {b!r} live in different fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero")
        return a / b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# PRNG

_MASK = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014).

    State advances by the golden-ratio increment 0x9E3779B97F4A7C15 and each
    output is the state passed through the two-multiply xor-shift finalizer.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound

    def scalar(self, field: Field):
        return field.sample(self.next_u64())


def derive_seed(seed: int, *labels: int) -> int:
    """Deterministically split a seed into a child seed for each label tuple."""
    rng = SplitMix64(seed)
    s = rng.next_u64()
    for lab in labels:
        s = SplitMix64(s ^ (lab & _MASK)).next_u64()
    return s


def seeded_random_vector(seed: int, dims: int, field: Field = QQ) -> list:
    """Return ``dims`` field elements drawn from SplitMix64 seeded with ``seed``.

    Rationals are integers ``u % 20001 - 10000`` in [-10^4, 10^4]; prime-field
    entries are ``u % p``.  Here ``u`` is the next 64-bit output.
    """
    if dims < 0:
        raise ValueError("dims must be non-negative")
    rng = SplitMix64(seed)
    return [rng.scalar(field) for _ in range(dims)]


# ---------------------------------------------------------------------------
# Dense matrices


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: Field = QQ, cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), ncols, tuple(field(x) for r in rows for x in r))

    @classmethod
    def zero(cls, rows: int, cols: int, field: Field = QQ) -> "Matrix":
        return cls(rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, size: int, field: Field = QQ) -> "Matrix":
        z, o = field.zero, field.one
        return cls(size, size, tuple(o if r == c else z for r in range(size) for c in range(size)))

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> list:
        return list(self.entries[r * self.cols:(r + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(r) for r in range(self.rows)]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for r in range(self.rows):
            row = self.row(r)
            for c in range(other.cols):
                s = 0
                for k, a in enumerate(row):
                    if a:
                        s = s + a * other.entries[k * other.cols + c]
                out.append(s)
        fld = field_of(self.entries[0]) if self.entries else QQ
        return Matrix(self.rows, other.cols, tuple(fld(x) for x in out))

    def apply(self, vec: Sequence) -> list:
        return [sum((self[r, c] * vec[c] for c in range(self.cols)), 0) for r in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self[r, c] for c in range(self.cols) for r in range(self.rows)))

    def rank(self) -> int:
        return solve_linear(self).rank

    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class LinearSolution:
    particular: list | None
    nullspace_basis: list[list]
    rank: int
    consistent: bool = True


def rref(rows: list[list]) -> tuple[list[list], list[int]]:
    """In-place reduced row echelon form of a list of rows; returns (rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def solve_linear(M: Matrix, rhs: Sequence | None = None) -> LinearSolution:
    """Exact row reduction of ``M x = rhs`` (or of ``M`` alone when ``rhs`` is None)."""
    if rhs is not None and len(rhs) != M.rows:
        raise ValueError("rhs length must equal the number of rows")
    fld = field_of(M.entries[0]) if M.entries else QQ
    aug = [M.row(r) + ([fld(rhs[r])] if rhs is not None else []) for r in range(M.rows)]
    if M.rows == 0:
        basis = [[fld.one if i == j else fld.zero for i in range(M.cols)] for j in range(M.cols)]
        return LinearSolution([fld.zero] * M.cols if rhs is not None else None, basis, 0)
    red, pivots = rref(aug)
    consistent = True
    if rhs is not None and M.cols in pivots:
        consistent = False
        pivots = [p for p in pivots if p != M.cols]
    rank = len(pivots)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [fld.zero] * M.cols
        v[f] = fld.one
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    particular = None
    if rhs is not None and consistent:
        particular = [fld.zero] * M.cols
        for r, p in enumerate(pivots):
            particular[p] = red[r][M.cols]
    return LinearSolution(particular, basis, rank, consistent)


# ---------------------------------------------------------------------------
# Sparse incremental elimination


class SparseSystem:
    """Incremental exact elimination over rows given as ``{variable: coeff}``.

    Rows are reduced against existing pivots as they arrive, so a system
    with many redundant equations never materialises as a dense matrix.
    Variables are arbitrary hashable keys.
    """

    def __init__(self, field: Field = QQ):
        self.field = field
        self.pivots: dict[Hashable, tuple[dict, object]] = {}
        self.order: dict[Hashable, int] = {}
        self.consistent = True
        self.variables: dict[Hashable, None] = {}

    def declare(self, variables: Iterable[Hashable]) -> None:
        for v in variables:
            self.variables.setdefault(v, None)

    def add_row(self, row: dict, rhs=0) -> bool:
        """Add ``sum(row[v] * v) == rhs``; return True if it raised the rank."""
        fld = self.field
        row = {v: fld(c) for v, c in row.items() if c}
        for v in row:
            self.variables.setdefault(v, None)
        rhs = fld(rhs)
        pivots, order = self.pivots, self.order
        while True:
            hits = [v for v in row if v in pivots]
            if not hits:
                break
            v = min(hits, key=order.__getitem__)
            prow, prhs = pivots[v]
            f = row[v]
            for w, c in prow.items():
                nc = row.get(w, 0) - f * c
                if nc:
                    row[w] = nc
                else:
                    row.pop(w, None)
            rhs = rhs - f * prhs
        if not row:
            if rhs:
                self.consistent = False
            return False
        p = next(iter(row))
        inv = 1 / row[p]
        row = {w: c * inv for w, c in row.items()}
        self.pivots[p] = (row, rhs * inv)
        self.order[p] = len(self.order)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_variables(self) -> list:
        return [v for v in self.variables if v not in self.pivots]

    def _solve(self, free_values: dict) -> dict:
        sol = dict(free_values)
        for p in sorted(self.pivots, key=self.order.__getitem__, reverse=True):
            prow, prhs = self.pivots[p]
            val = prhs
            for w, c in prow.items():
                if w != p:
                    x = sol.get(w)
                    if x:
                        val = val - c * x
            sol[p] = val
        return sol

    def particular(self) -> dict | None:
        if not self.consistent:
            return None
        return self._solve({})

    def homogeneous_solution(self, free_values: dict) -> dict:
        """The solution of the homogeneous system with the given free values."""
        real = self.pivots
        self.pivots = {p: (row, self.field.zero) for p, (row, _) in real.items()}
        try:
            sol = self._solve(free_values)
        finally:
            self.pivots = real
        return {v: c for v, c in sol.items() if c}

    def nullspace(self) -> list[dict]:
        """Basis of the homogeneous solution space, one vector per free variable."""
        one = self.field.one
        return [self.homogeneous_solution({f: one}) for f in self.free_variables()]
