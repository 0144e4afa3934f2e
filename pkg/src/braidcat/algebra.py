"""Basis-path algebras: the symmetric Nakayama algebra and the zigzag algebra.

Paths compose left to right: ``x * y`` is "first x, then y" and is nonzero
only when ``x`` ends where ``y`` starts.  The indecomposable projective
``P_v = A e_v`` is spanned by the paths ending at ``v``, and a morphism
``P_v -> P_w`` is right multiplication by an element of ``e_v A e_w``.
Vertices are 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .scalars import QQ, Field, Matrix


class InvalidSize(ValueError):
    pass


class AlgebraMismatch(ValueError):
    pass


class InvalidKindArgs(ValueError):
    pass


@dataclass(frozen=True)
class BasisPath:
    start: int
    length: int
    end: int
    label: str


class AlgebraSpec:
    """A finite-dimensional algebra given by a path basis and structure constants.

    ``mult[a][b]`` is the basis index of the product of basis paths ``a`` and
    ``b``, or ``-1`` when the product vanishes.  Every product of two basis
    paths is a basis path or zero for both algebras in this package.
    """

    def __init__(self, kind: str, n: int, basis: list[BasisPath], mult: list[list[int]], field: Field = QQ):
        self.kind = kind
        self.n = n
        self.field = field
        self.basis = tuple(basis)
        self.mult = tuple(tuple(r) for r in mult)
        self.index = {(p.start, p.length, p.end): k for k, p in enumerate(self.basis)}
        self.by_label = {p.label: k for k, p in enumerate(self.basis)}
        self.vertex_idempotents = {p.start: k for k, p in enumerate(self.basis) if p.length == 0}
        self.vertices = tuple(range(1, n + 1))
        paths = {(i, j): [] for i in self.vertices for j in self.vertices}
        for k, p in enumerate(self.basis):
            paths[p.start, p.end].append(k)
        self._paths = {key: tuple(v) for key, v in paths.items()}
        self.ending_at = {v: tuple(k for k, p in enumerate(self.basis) if p.end == v) for v in self.vertices}
        self.starting_at = {v: tuple(k for k, p in enumerate(self.basis) if p.start == v) for v in self.vertices}
        top = max(p.length for p in self.basis)
        # socle path at each vertex; the symmetrizing trace reads off its coefficient
        self.socle = {v: next(k for k in self._paths[v, v] if self.basis[k].length == top) for v in self.vertices}
        self.arrows = tuple(k for k, p in enumerate(self.basis) if p.length == 1)
        self._dual = {}
        for i in self.vertices:
            for v in self.vertices:
                for b in self._paths[i, v]:
                    self._dual[b] = self._find_dual(b)

    @property
    def key(self) -> tuple:
        return (self.kind, self.n, self.field)

    def __eq__(self, other):
        return isinstance(other, AlgebraSpec) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{self.kind}({self.n})"

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def paths(self, i: int, j: int) -> tuple[int, ...]:
        """Basis indices of the paths from ``i`` to ``j`` (a basis of e_i A e_j)."""
        return self._paths[i, j]

    def prod(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def trace(self, k: int) -> int:
        return 1 if k == self.socle[self.basis[k].start] and self.basis[k].start == self.basis[k].end else 0

    def _find_dual(self, b: int) -> int:
        p = self.basis[b]
        for c in self._paths[p.end, p.start]:
            if self.mult[b][c] == self.socle[p.start]:
                others = [b2 for b2 in self._paths[p.start, p.end] if b2 != b]
                if all(self.mult[b2][c] != self.socle[p.start] for b2 in others):
                    return c
        raise ArithmeticError(f"no dual for {p.label}")

    def dual(self, b: int) -> int:
        """The path ``b*`` from end(b) to start(b) with ``b b*`` the socle and
        ``b' b*`` non-socle for the other paths ``b'`` parallel to ``b``."""
        return self._dual[b]

    def element(self, terms: dict | None = None) -> "AlgebraElement":
        return AlgebraElement(self, terms or {})

    def basis_element(self, k: int, coeff=1) -> "AlgebraElement":
        return AlgebraElement(self, {k: self.field(coeff)})

    def idempotent(self, v: int) -> "AlgebraElement":
        return self.basis_element(self.vertex_idempotents[v])

    def path(self, label: str) -> "AlgebraElement":
        return self.basis_element(self.by_label[label])

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {k: self.field.one for k in self.vertex_idempotents.values()})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def find_path(self, start: int, length: int, end: int | None = None) -> int:
        if end is None:
            hits = [k for k, p in enumerate(self.basis) if p.start == start and p.length == length]
            if len(hits) != 1:
                raise KeyError(f"path (start={start}, length={length}) is ambiguous or missing")
            return hits[0]
        return self.index[start, length, end]


class AlgebraElement:
    """Immutable linear combination of basis paths; zero coefficients are never stored."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: AlgebraSpec, terms: dict):
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if c}

    def _check(self, other: "AlgebraElement"):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return AlgebraElement(self.algebra, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgebraElement(self.algebra, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            c0 = self.algebra.field(other)
            return AlgebraElement(self.algebra, {k: c * c0 for k, c in self.terms.items()})
        self._check(other)
        mult = self.algebra.mult
        out: dict = {}
        for a, ca in self.terms.items():
            row = mult[a]
            for b, cb in other.terms.items():
                k = row[b]
                if k >= 0:
                    out[k] = out.get(k, 0) + ca * cb
        return AlgebraElement(self.algebra, out)

    def __rmul__(self, scalar):
        return self * scalar

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, k: int):
        return self.terms.get(k, self.algebra.field.zero)

    def unit_part(self):
        """Sum of the idempotent coefficients (the image modulo the radical)."""
        alg = self.algebra
        return sum((c for k, c in self.terms.items() if alg.basis[k].length == 0), alg.field.zero)

    def __repr__(self):
        if not self.terms:
            return "0"
        f = self.algebra.field
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            lab = self.algebra.basis[k].label
            parts.append(lab if c == 1 else f"{f.format(c)}*{lab}")
        return " + ".join(parts)


def multiply(a: AlgebraSpec, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    if x.algebra != a or y.algebra != a:
        raise AlgebraMismatch("operands are not over the given algebra")
    return x * y


def inverse_in_local_ring(x: AlgebraElement) -> AlgebraElement:
    """Inverse of an element of e_v A e_v with nonzero idempotent part."""
    alg = x.algebra
    u = x.unit_part()
    if not u:
        raise ZeroDivisionError("element lies in the radical")
    v = next(alg.basis[k].start for k in x.terms)
    e = alg.idempotent(v)
    r = x * (1 / u) - e  # nilpotent
    out, power, sign = e, e, 1
    while True:
        power = power * r
        if power.is_zero():
            break
        sign = -sign
        out = out + power * sign
    return out * (1 / u)


# ---------------------------------------------------------------------------
# builders


def _cyc(v: int, n: int) -> int:
    return (v - 1) % n + 1


@lru_cache(maxsize=None)
def build_nakayama(n: int, field: Field = QQ) -> AlgebraSpec:
    """The symmetric Nakayama algebra on the cyclic quiver with n vertices,
    modulo all paths of n+1 arrows."""
    if n < 2:
        raise InvalidSize("n must be at least 2")
    basis = []
    for s in range(1, n + 1):
        for length in range(n + 1):
            verts = [_cyc(s + k, n) for k in range(length + 1)]
            basis.append(BasisPath(s, length, verts[-1], "(" + " ".join(map(str, verts)) + ")"))
    index = {(p.start, p.length): k for k, p in enumerate(basis)}
    mult = []
    for p in basis:
        row = []
        for q in basis:
            if p.end == q.start and p.length + q.length <= n:
                row.append(index[p.start, p.length + q.length])
            else:
                row.append(-1)
        mult.append(row)
    return AlgebraSpec("nakayama", n, basis, mult, field)


@lru_cache(maxsize=None)
def build_zigzag(n: int, field: Field = QQ) -> AlgebraSpec:
    """The Brauer-line (zigzag) algebra of the doubled A_n quiver.

    Same-direction composites vanish, the two loops at a vertex coincide with
    the basis loop ``w_i``, and loops are killed by every arrow.
    """
    if n < 2:
        raise InvalidSize("n must be at least 2")
    basis = [BasisPath(i, 0, i, f"({i})") for i in range(1, n + 1)]
    for i in range(1, n):
        basis.append(BasisPath(i, 1, i + 1, f"({i} {i + 1})"))
        basis.append(BasisPath(i + 1, 1, i, f"({i + 1} {i})"))
    basis += [BasisPath(i, 2, i, f"w{i}") for i in range(1, n + 1)]
    index = {(p.start, p.length, p.end): k for k, p in enumerate(basis)}
    mult = []
    for p in basis:
        row = []
        for q in basis:
            k = -1
            if p.end == q.start:
                if p.length == 0:
                    k = index[q.start, q.length, q.end]
                elif q.length == 0:
                    k = index[p.start, p.length, p.end]
                elif p.length == 1 and q.length == 1 and q.end == p.start:
                    k = index[p.start, 2, p.start]
            row.append(k)
        mult.append(row)
    return AlgebraSpec("zigzag", n, basis, mult, field)


def build_algebra(kind: str, n: int, field: Field = QQ) -> AlgebraSpec:
    if kind == "nakayama":
        return build_nakayama(n, field)
    if kind == "zigzag":
        return build_zigzag(n, field)
    raise ValueError(f"unknown algebra kind {kind!r}")


def hom_space(a: AlgebraSpec, i: int, j: int) -> list[BasisPath]:
    """Basis of Hom(P_i, P_j) = e_i A e_j as paths from i to j."""
    return [a.basis[k] for k in a.paths(i, j)]


# ---------------------------------------------------------------------------
# morphisms between sums of projectives


class ModuleMorphism:
    """A map ``P_{source[0]} + ... -> P_{target[0]} + ...`` stored as sparse cells.

    Cell ``(s, t)`` lies in ``e_{source[s]} A e_{target[t]}``; an element
    ``(x_s)`` is sent to ``(sum_s x_s * cell(s, t))_t``.
    """

    __slots__ = ("algebra", "source", "target", "cells")

    def __init__(self, algebra: AlgebraSpec, source, target, cells: dict | None = None):
        self.algebra = algebra
        self.source = tuple(source)
        self.target = tuple(target)
        self.cells = {st: c for st, c in (cells or {}).items() if not c.is_zero()}

    def cell(self, s: int, t: int) -> AlgebraElement:
        c = self.cells.get((s, t))
        return c if c is not None else self.algebra.zero()

    def then(self, other: "ModuleMorphism") -> "ModuleMorphism":
        """Composite "self, then other" (the matrix product self * other)."""
        if self.target != other.source:
            raise ValueError("morphisms are not composable")
        by_row: dict[int, list] = {}
        for (u, t), c in other.cells.items():
            by_row.setdefault(u, []).append((t, c))
        out: dict = {}
        for (s, u), a in self.cells.items():
            for t, b in by_row.get(u, ()):
                p = a * b
                if p:
                    out[s, t] = out[s, t] + p if (s, t) in out else p
        return ModuleMorphism(self.algebra, self.source, other.target, out)

    def __add__(self, other):
        cells = dict(self.cells)
        for k, c in other.cells.items():
            cells[k] = cells[k] + c if k in cells else c
        return ModuleMorphism(self.algebra, self.source, self.target, cells)

    def __neg__(self):
        return ModuleMorphism(self.algebra, self.source, self.target, {k: -c for k, c in self.cells.items()})

    def scale(self, c) -> "ModuleMorphism":
        return ModuleMorphism(self.algebra, self.source, self.target, {k: v * c for k, v in self.cells.items()})

    def is_zero(self) -> bool:
        return not self.cells

    def support_violations(self) -> list[tuple[int, int]]:
        bad = []
        for (s, t), c in self.cells.items():
            for k in c.terms:
                p = self.algebra.basis[k]
                if p.start != self.source[s] or p.end != self.target[t]:
                    bad.append((s, t))
                    break
        return bad

    def __eq__(self, other):
        if not isinstance(other, ModuleMorphism):
            return NotImplemented
        return (self.algebra == other.algebra and self.source == other.source
                and self.target == other.target and self.cells == other.cells)

    def __repr__(self):
        return f"ModuleMorphism({list(self.source)} -> {list(self.target)}, {self.cells})"


def compose(f: ModuleMorphism, g: ModuleMorphism) -> ModuleMorphism:
    """``f`` then ``g``; realizes to ``realize(f) @ realize(g)``."""
    return f.then(g)


def identity_morphism(a: AlgebraSpec, summands: Iterable[int]) -> ModuleMorphism:
    summands = tuple(summands)
    return ModuleMorphism(a, summands, summands, {(s, s): a.idempotent(v) for s, v in enumerate(summands)})


def named_morphism(a: AlgebraSpec, kind: str, i: int, j: int | None = None) -> ModuleMorphism:
    """The elementary maps between indecomposable projectives.

    ``mu`` (i != j, Nakayama): right multiplication by the path i..j.
    ``nu`` (|i-j| = 1, zigzag): right multiplication by the arrow.
    ``delta_socle``: right multiplication by the socle path at i.
    ``identity`` / ``rho_identity``: the identity of P_i.
    """
    j = i if j is None else j
    if not (1 <= i <= a.n and 1 <= j <= a.n):
        raise InvalidKindArgs("vertex out of range")
    if kind in ("identity", "rho_identity"):
        if i != j:
            raise InvalidKindArgs(f"{kind} needs i == j")
        elem = a.idempotent(i)
    elif kind == "delta_socle":
        if i != j:
            raise InvalidKindArgs("delta_socle needs i == j")
        elem = a.basis_element(a.socle[i])
    elif kind == "mu":
        if a.kind != "nakayama" or i == j:
            raise InvalidKindArgs("mu needs i != j over the Nakayama algebra")
        elem = a.basis_element(a.paths(i, j)[0])
    elif kind == "nu":
        if a.kind != "zigzag" or abs(i - j) != 1:
            raise InvalidKindArgs("nu needs |i-j| = 1 over the zigzag algebra")
        elem = a.basis_element(a.paths(i, j)[0])
    else:
        raise InvalidKindArgs(f"unknown morphism kind {kind!r}")
    return ModuleMorphism(a, (i,), (j,), {(0, 0): elem})


def module_basis(a: AlgebraSpec, summands) -> list[tuple[int, int]]:
    """Concatenated K-basis ``(summand, path)`` of a sum of projectives."""
    return [(s, k) for s, v in enumerate(summands) for k in a.ending_at[v]]


def module_dimension(a: AlgebraSpec, summands) -> int:
    return sum(len(a.ending_at[v]) for v in summands)


def morphism_matrix_realize(m: ModuleMorphism) -> Matrix:
    """K-linear matrix of ``m`` acting on row vectors (rows: source basis).

    With this convention ``realize(compose(f, g)) == realize(f) @ realize(g)``.
    """
    a = m.algebra
    src = module_basis(a, m.source)
    tgt = module_basis(a, m.target)
    col = {b: c for c, b in enumerate(tgt)}
    fld = a.field
    rows = [[fld.zero] * len(tgt) for _ in src]
    for r, (s, x) in enumerate(src):
        for (s2, t), cell in m.cells.items():
            if s2 != s:
                continue
            for k, c in cell.terms.items():
                y = a.mult[x][k]
                if y >= 0:
                    rows[r][col[t, y]] += c
    return Matrix(len(src), len(tgt), tuple(fld(x) for row in rows for x in row))
