"""Bimodule-level check that the two twist complexes at a vertex are mutually inverse.

Over the Nakayama algebra ``A`` with vertex ``i`` write ``N = A e_i (x) e_i A``
(a free bimodule of rank one) and ``U = e_i A (x)_A A e_i``.  The tensor
product of the two twist complexes is

    N  --d1-->  A + (A e_i (x) U (x) e_i A)  --d0-->  N

with ``d1 = multiplication + t`` and ``d0 = (b, -c)``, where ``b`` is the
coevaluation and ``t``, ``c`` move the cycle at ``i`` across ``U``.  The
check confirms exactly, by linear algebra, that ``d1`` is split injective and
``d0`` split surjective as bimodule maps, and that the middle homology is
isomorphic to ``A`` as a left module.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraSpec, build_nakayama
from .scalars import QQ, Field, SparseSystem, SplitMix64

DEFAULT_BOUND = 5


class SizeBound(ValueError):
    pass


@dataclass
class BimoduleComplexCheck:
    i: int
    n: int
    d1_split_injective: bool
    d0_split_surjective: bool
    middle_complement_is_A: bool
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.d1_split_injective and self.d0_split_surjective and self.middle_complement_is_A


def _add(out: dict, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class _Bimodules:
    """Basis bookkeeping for A, N and the middle term.

    Basis keys: ``("A", x)``, ``("N", p, q)`` and ``("W", p, k, q)`` with
    ``k`` in {1, 2} naming ``u_1``, ``u_2``.
    """

    def __init__(self, a: AlgebraSpec, i: int):
        self.a, self.i = a, i
        self.left = a.ending_at[i]  # basis of A e_i
        self.right = a.starting_at[i]  # basis of e_i A
        self.cycle = a.socle[i]
        self.e = a.vertex_idempotents[i]
        self.A_basis = [("A", x) for x in range(a.dimension)]
        self.N_basis = [("N", p, q) for p in self.left for q in self.right]
        self.W_basis = [("W", p, k, q) for p in self.left for k in (1, 2) for q in self.right]
        self.M_basis = self.A_basis + self.W_basis

    def act(self, a_idx: int, vec: dict, side: str) -> dict:
        m = self.a.mult
        out: dict = {}
        for key, c in vec.items():
            tag = key[0]
            if tag == "A":
                y = m[a_idx][key[1]] if side == "left" else m[key[1]][a_idx]
                if y >= 0:
                    _add(out, ("A", y), c)
                continue
            if side == "left":
                p = m[a_idx][key[1]]
                if p >= 0:
                    _add(out, (tag, p) + key[2:], c)
            else:
                q = m[key[-1]][a_idx]
                if q >= 0:
                    _add(out, key[:-1] + (q,), c)
        return out

    # the differentials, on basis elements
    def d1(self, p: int, q: int) -> dict:
        m = self.a.mult
        out: dict = {}
        pq = m[p][q]
        if pq >= 0:
            _add(out, ("A", pq), 1)
        cq = m[self.cycle][q]
        if cq >= 0:
            _add(out, ("W", p, 1, cq), 1)
        _add(out, ("W", p, 2, q), 1)
        return out

    def coevaluation(self, x: int) -> dict:
        """``x * sum_b b* (x) b`` over paths ``b`` starting at ``i``."""
        a = self.a
        out: dict = {}
        for b in self.right:
            left = a.mult[x][a.dual(b)]
            if left >= 0:
                _add(out, ("N", left, b), 1)
        return out

    def coevaluation_right(self, x: int) -> dict:
        """``sum_b b* (x) b * x``; agrees with :meth:`coevaluation` for a bimodule map."""
        a = self.a
        out: dict = {}
        for b in self.right:
            right = a.mult[b][x]
            if right >= 0:
                _add(out, ("N", a.dual(b), right), 1)
        return out

    def d0(self, key) -> dict:
        if key[0] == "A":
            return self.coevaluation(key[1])
        _, p, k, q = key
        if k == 1:
            return {("N", p, q): -1}
        pc = self.a.mult[p][self.cycle]
        return {("N", pc, q): -1} if pc >= 0 else {}

    def apply(self, f, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            for k2, c2 in f(key).items():
                _add(out, k2, c * c2)
        return out


def _is_bimodule_map(B: _Bimodules, f, domain: list) -> bool:
    gens = list(B.a.vertex_idempotents.values()) + list(B.a.arrows)
    for key in domain:
        for g in gens:
            for side in ("left", "right"):
                lhs = B.apply(f, B.act(g, {key: 1}, side))
                rhs = B.act(g, f(key), side)
                if lhs != rhs:
                    return False
    return True


def _rank(vectors, fld) -> int:
    sys = SparseSystem(fld)
    for v in vectors:
        sys.add_row(v)
    return sys.rank


def tensor_u_dimension(a: AlgebraSpec, i: int) -> tuple[int, bool]:
    """Dimension of ``e_i A (x)_A A e_i`` and whether ``u_1``, ``u_2`` are independent in it.

    Computed as ``e_i A (x)_K A e_i`` modulo the balancing relations
    ``x c (x) y - x (x) c y``.
    """
    m = a.mult
    xs, ys = a.starting_at[i], a.ending_at[i]
    relations = []
    for x in xs:
        for y in ys:
            for c in range(a.dimension):
                row: dict = {}
                xc, cy = m[x][c], m[c][y]
                if xc >= 0:
                    _add(row, (xc, y), 1)
                if cy >= 0:
                    _add(row, (x, cy), -1)
                if row:
                    relations.append(row)
    r = _rank(relations, a.field)
    dim = len(xs) * len(ys) - r
    e, cyc = a.vertex_idempotents[i], a.socle[i]
    u1, u2 = {(e, e): 1}, {(cyc, e): 1}
    independent = _rank(relations + [u1, u2], a.field) == r + 2
    return dim, independent


def verify_inverse_bimodule(i: int, n: int, field: Field = QQ, seed: int = 0,
                            bound: int = DEFAULT_BOUND) -> BimoduleComplexCheck:
    if n > bound:
        raise SizeBound(f"n={n} exceeds the bimodule bound {bound}")
    a = build_nakayama(n, field)
    if not 1 <= i <= n:
        raise ValueError(f"vertex {i} out of range")
    B = _Bimodules(a, i)
    fld = a.field
    details: dict = {}

    d1 = lambda key: B.d1(key[1], key[2])
    # complex and bimodule-map sanity
    details["coevaluation_two_sided"] = all(B.coevaluation(x) == B.coevaluation_right(x) for x in range(a.dimension))
    details["d0_d1_zero"] = all(not B.apply(B.d0, d1(k)) for k in B.N_basis)
    details["d1_bimodule_map"] = _is_bimodule_map(B, d1, B.N_basis)
    details["d0_bimodule_map"] = _is_bimodule_map(B, B.d0, B.M_basis)

    # left inverse of d1: r(1) = z with a z = z a, r(generator of W_k) = n_k in e_i N e_i
    sys = SparseSystem(fld)
    z_vars = [("z",) + k for k in B.N_basis]
    corner = [k for k in B.N_basis if a.basis[k[1]].start == i and a.basis[k[2]].end == i]
    n_vars = [("n", kk) + k for kk in (1, 2) for k in corner]
    sys.declare(z_vars + n_vars)
    gens = list(a.vertex_idempotents.values()) + list(a.arrows)
    z_vec = {k: 1 for k in B.N_basis}
    for g in gens:
        rows: dict = {}
        for k in B.N_basis:
            for k2, c in B.act(g, {k: 1}, "left").items():
                _add(rows.setdefault(k2, {}), ("z",) + k, c)
            for k2, c in B.act(g, {k: 1}, "right").items():
                _add(rows.setdefault(k2, {}), ("z",) + k, -c)
        for row in rows.values():
            sys.add_row(row)
    # r(d1(e_i (x) e_i)) = e_i (x) e_i
    target = ("N", B.e, B.e)
    image = B.d1(B.e, B.e)
    rows = {}
    for key, c in image.items():
        if key[0] == "A":
            for k in B.N_basis:  # e_i z e_i picks the corner coefficients
                for k2, c2 in B.act(B.e, B.act(key[1], {k: 1}, "left"), "right").items():
                    _add(rows.setdefault(k2, {}), ("z",) + k, c * c2)
        else:
            _, p, kk, q = key
            for k in corner:
                for k2, c2 in B.act(q, B.act(p, {k: 1}, "left"), "right").items():
                    _add(rows.setdefault(k2, {}), ("n", kk) + k, c * c2)
    for key in set(rows) | {target}:
        sys.add_row(rows.get(key, {}), 1 if key == target else 0)
    sol = sys.particular() if sys.consistent else None
    d1_ok = False
    if sol is not None:
        z = {k: sol.get(("z",) + k, 0) for k in B.N_basis}
        z = {k: c for k, c in z.items() if c}
        ns = {kk: {k: sol.get(("n", kk) + k, 0) for k in corner} for kk in (1, 2)}

        def r(key):
            if key[0] == "A":
                return B.act(key[1], z, "left")
            _, p, kk, q = key
            return B.act(q, B.act(p, {k: c for k, c in ns[kk].items() if c}, "left"), "right")

        d1_ok = (all(B.apply(r, d1(k)) == {k: 1} for k in B.N_basis)
                 and _is_bimodule_map(B, r, B.M_basis))
        details["left_inverse_generator_image"] = {
            "from_A": len(z), "from_u1": sum(1 for c in ns[1].values() if c), "from_u2": sum(1 for c in ns[2].values() if c)}

    # right inverse of d0: s(e_i (x) e_i) = m in e_i M e_i with d0(m) = e_i (x) e_i
    sys = SparseSystem(fld)
    cornerM = [k for k in B.M_basis
               if (k[0] == "A" and a.basis[k[1]].start == i and a.basis[k[1]].end == i)
               or (k[0] == "W" and a.basis[k[1]].start == i and a.basis[k[3]].end == i)]
    sys.declare(cornerM)
    rows = {}
    for k in cornerM:
        for k2, c in B.d0(k).items():
            _add(rows.setdefault(k2, {}), k, c)
    for key in set(rows) | {target}:
        sys.add_row(rows.get(key, {}), 1 if key == target else 0)
    d0_ok = False
    if sys.consistent:
        m0 = {k: c for k, c in sys.particular().items() if c}

        def s(key):
            _, p, q = key
            return B.act(q, B.act(p, m0, "left"), "right")

        d0_ok = (all(B.apply(B.d0, s(k)) == {k: 1} for k in B.N_basis)
                 and _is_bimodule_map(B, s, B.N_basis))

    # middle homology as a left module
    kernel = SparseSystem(fld)
    kernel.declare(B.M_basis)
    rows = {}
    for k in B.M_basis:
        for k2, c in B.d0(k).items():
            _add(rows.setdefault(k2, {}), k, c)
    for row in rows.values():
        kernel.add_row(row)
    ker_basis = kernel.nullspace()
    boundary = [d1(k) for k in B.N_basis]
    rank_d1 = _rank(boundary, fld)
    homology_dim = len(ker_basis) - rank_d1
    details.update(dim_A=a.dimension, dim_N=len(B.N_basis), dim_middle=len(B.M_basis),
                   rank_d1=rank_d1, rank_d0=len(B.M_basis) - len(ker_basis), homology_dim=homology_dim)
    iso = False
    if homology_dim == a.dimension:
        for trial in range(4):
            rng = SplitMix64(seed + 104729 * trial)
            images = []
            for v in a.vertices:
                k_rand: dict = {}
                for vec in ker_basis:
                    c = rng.scalar(fld)
                    for key, x in vec.items():
                        _add(k_rand, key, c * x)
                h_v = B.act(a.vertex_idempotents[v], k_rand, "left")
                images += [B.act(x, h_v, "left") for x in a.ending_at[v]]
            if _rank(boundary + images, fld) == rank_d1 + a.dimension:
                iso = True
                details["iso_trials"] = trial + 1
                break
    u_dim, u_indep = tensor_u_dimension(a, i)
    details.update(u_dimension=u_dim, u_basis_independent=u_indep,
                   double_tensor_dimension=len(B.left) * u_dim * len(B.right))
    bookkeeping = 2 * len(B.N_basis) + homology_dim == details["double_tensor_dimension"] + a.dimension
    details["dimension_bookkeeping"] = bookkeeping
    sane = details["d0_d1_zero"] and details["d1_bimodule_map"] and details["d0_bimodule_map"] and details["coevaluation_two_sided"]
    return BimoduleComplexCheck(i, n, d1_ok and sane, d0_ok and sane, iso and sane and u_dim == 2 and u_indep, details)
