"""Named verification suites and their reports."""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import braids as br
from .algebra import (
    build_nakayama,
    build_zigzag,
    hom_space,
    morphism_matrix_realize,
    named_morphism,
    ModuleMorphism,
)
from .bimodule import DEFAULT_BOUND, SizeBound, verify_inverse_bimodule
from .complexes import (
    cone,
    format_complex,
    homotopy_equivalent,
    homotopy_hom_dim,
    shift,
    stalk,
)
from .fixtures import expected_first_chain, expected_second_chain, r_table, refolded_table, single_twist
from .scalars import QQ, Field, SplitMix64, derive_seed
from .twists import (
    DEFAULT_MAX_SUMMANDS,
    SummandCapExceeded,
    TwistLetter,
    cone_to_next_step,
    h_generator_word,
    image_table,
    socle_step_map,
    staircase_complex,
    staircase_maps,
    staircase_sum,
    twist_apply,
    word_of,
    word_trace,
)

SUITE_NAMES = ("algebra", "twists", "braid_relations", "eta", "staircase", "affine", "bn_action")
REPORT_VERSION = "1"


class InvalidRank(ValueError):
    pass


def max_rank() -> int:
    return int(os.environ.get("BRAIDCAT_MAX_N", "6"))


@dataclass
class Check:
    id: str
    description: str
    anchor: str
    run: Callable[[], tuple]  # -> (status, certificate)


@dataclass
class Context:
    n: int
    seed: int
    field: Field
    max_summands: int | None


def _verdict(ok: bool, cert=None) -> tuple:
    return ("pass" if ok else "fail"), cert


def _equiv(X, Y, seed) -> tuple:
    v = homotopy_equivalent(X, Y, seed=seed)
    status = {"Equivalent": "pass", "Distinct": "fail", "Undetermined": "undetermined"}[v.status]
    cert = {"got": format_complex(v.source_min), "expected": format_complex(v.target_min)}
    return status, cert


def _combine(results: list[tuple]) -> tuple:
    statuses = [s for s, _ in results]
    status = "fail" if "fail" in statuses else "undetermined" if "undetermined" in statuses else "pass"
    bad = [c for s, c in results if s != "pass"]
    return status, ({"mismatches": bad} if bad else None)


def _oracle(group, w1, w2, ctx, expect="ImagesAgree", **kw) -> tuple:
    try:
        v = br.oracle_compare(group, w1, w2, ctx.n, seed=ctx.seed, field=ctx.field,
                              max_summands=ctx.max_summands, **kw)
    except br.UndeterminedEntry as exc:
        return "undetermined", {"error": str(exc)}
    cert = {"verdict": v.status, "words": [str(w1), str(w2)]}
    if v.status == "ProvenDistinct":
        cert["distinguishing"] = v.certificate
    return _verdict(v.status == expect, cert)


# ---------------------------------------------------------------------------
# algebra


def _algebra_checks(ctx: Context) -> list[Check]:
    n, fld = ctx.n, ctx.field
    A, B = build_nakayama(n, fld), build_zigzag(n, fld)
    out = []

    def assoc(alg):
        m = alg.mult
        rng = range(alg.dimension)
        bad = [(x, y, z) for x in rng for y in rng for z in rng
               if (m[m[x][y]][z] if m[x][y] >= 0 else -1) != (m[x][m[y][z]] if m[y][z] >= 0 else -1)]
        return _verdict(not bad, {"violations": bad[:5]} if bad else None)

    def unit(alg):
        one = alg.one()
        return _verdict(all(one * alg.basis_element(k) == alg.basis_element(k) == alg.basis_element(k) * one
                            for k in range(alg.dimension)))

    out.append(Check("algebra.nakayama.dimension", "Nakayama algebra has dimension n(n+1)",
                     "basis of paths of length 0..n from each vertex",
                     lambda: _verdict(A.dimension == n * (n + 1), {"dimension": A.dimension})))
    out.append(Check("algebra.zigzag.dimension", "zigzag algebra has dimension 4n-2",
                     "idempotents, arrows both ways, one loop per vertex",
                     lambda: _verdict(B.dimension == 4 * n - 2, {"dimension": B.dimension})))
    for alg in (A, B):
        out.append(Check(f"algebra.{alg.kind}.associative", f"{alg.kind} multiplication is associative on the basis",
                         "structure constants", lambda alg=alg: assoc(alg)))
        out.append(Check(f"algebra.{alg.kind}.unit", f"{alg.kind} idempotents sum to a two-sided unit",
                         "mutually orthogonal idempotents", lambda alg=alg: unit(alg)))

    def hom_table():
        bad = [(i, j) for i in A.vertices for j in A.vertices
               if len(hom_space(A, i, j)) != (2 if i == j else 1)]
        return _verdict(not bad, {"violations": bad} if bad else None)

    def zig_table():
        want = lambda i, j: 2 if i == j else 1 if abs(i - j) == 1 else 0
        bad = [(i, j) for i in B.vertices for j in B.vertices if len(hom_space(B, i, j)) != want(i, j)]
        return _verdict(not bad, {"violations": bad} if bad else None)

    out.append(Check("algebra.nakayama.hom_table", "dim Hom(P_i, P_j) is 2 if i = j and 1 otherwise",
                     "Hom dimensions between indecomposable projectives", hom_table))
    out.append(Check("algebra.zigzag.hom_table", "dim Hom(Q_i, Q_j) is 2, 1 or 0 by distance",
                     "zigzag Hom dimensions", zig_table))

    def named():
        ok = True
        for i in A.vertices:
            d = named_morphism(A, "delta_socle", i)
            ok &= d.then(d).is_zero()
            ok &= morphism_matrix_realize(d).rank() == 1
            ok &= morphism_matrix_realize(named_morphism(A, "identity", i)).rank() == n + 1
            for j in A.vertices:
                if i == j:
                    continue
                mij, mji = named_morphism(A, "mu", i, j), named_morphism(A, "mu", j, i)
                ok &= mij.then(mji) == d
                ok &= mji.then(d).is_zero()
                ok &= morphism_matrix_realize(mij).rank() == n + 1 - (j - i) % n
        return _verdict(ok)

    out.append(Check("algebra.nakayama.named_maps", "mu, socle and identity maps compose and realize as expected",
                     "the maps between indecomposable projectives", named))

    def functor():
        rng = SplitMix64(derive_seed(ctx.seed, 11))
        for _ in range(40):
            u, v, w = (1 + rng.below(n) for _ in range(3))
            f = ModuleMorphism(A, (u,), (v,), {(0, 0): A.element({k: rng.scalar(fld) for k in A.paths(u, v)})})
            g = ModuleMorphism(A, (v,), (w,), {(0, 0): A.element({k: rng.scalar(fld) for k in A.paths(v, w)})})
            if morphism_matrix_realize(f.then(g)) != morphism_matrix_realize(f) @ morphism_matrix_realize(g):
                return _verdict(False, {"pair": [u, v, w]})
        return _verdict(True)

    out.append(Check("algebra.nakayama.realize_functor", "realizing a composite equals the matrix product",
                     "K-linear realization of module maps", functor))
    return out


# ---------------------------------------------------------------------------
# twists


def _twist_checks(ctx: Context) -> list[Check]:
    n, fld, cap = ctx.n, ctx.field, ctx.max_summands
    A = build_nakayama(n, fld)
    out = []
    for sign, tag in ((1, "F"), (-1, "Finv")):
        for i in A.vertices:
            for j in A.vertices:
                out.append(Check(
                    f"twists.{tag}.{i}.{j}", f"{'F' if sign > 0 else 'F^-1'}_{i}(P_{j}) matches the image table",
                    "images of projectives under one twist",
                    lambda i=i, j=j, sign=sign: _equiv(twist_apply(TwistLetter("F", i, sign), stalk(A, j), cap),
                                                       single_twist(i, j, n, sign, field=fld), ctx.seed)))
    for i in A.vertices:
        def inverse(i=i):
            res = []
            for j in A.vertices:
                for w in (word_of(("F", i, -1), ("F", i)), word_of(("F", i), ("F", i, -1))):
                    res.append(_equiv(word_trace(w, stalk(A, j), cap)[-1], stalk(A, j), ctx.seed))
            return _combine(res)
        out.append(Check(f"twists.inverse.{i}", f"F_{i} and F_{i}^-1 undo each other on every projective",
                         "mutually inverse twist complexes", inverse))
    for i in A.vertices:
        for j in A.vertices:
            if i >= j:
                continue

            def braid(i=i, j=j):
                t1 = image_table(word_of(("F", i), ("F", j), ("F", i)), n, fld, max_summands=cap)
                t2 = image_table(word_of(("F", j), ("F", i), ("F", j)), n, fld, max_summands=cap)
                return _combine([_equiv(t1[k], t2[k], ctx.seed) for k in A.vertices])

            out.append(Check(f"twists.braid.{i}.{j}", f"F_{i}F_{j}F_{i} and F_{j}F_{i}F_{j} agree on every projective",
                             "braid relation of the complete-graph action", braid))
    for i in A.vertices:
        for j in A.vertices:
            if i == j:
                continue

            def mixed(i=i, j=j):
                t1 = image_table(word_of(("F", i, -1), ("F", j), ("F", i)), n, fld, max_summands=cap)
                t2 = image_table(word_of(("F", j), ("F", i), ("F", j, -1)), n, fld, max_summands=cap)
                return _combine([_equiv(t1[k], t2[k], ctx.seed) for k in A.vertices])

            def chains(i=i, j=j):
                res = []
                for k in A.vertices:
                    got1 = word_trace(word_of(("F", i, -1), ("F", j), ("F", i)), stalk(A, k), cap)[1:]
                    got2 = word_trace(word_of(("F", j), ("F", i), ("F", j, -1)), stalk(A, k), cap)[1:]
                    for col, (g, e) in enumerate(zip(got1, expected_first_chain(i, j, k, n, fld))):
                        s, c = _equiv(g, e, ctx.seed)
                        res.append((s, c and dict(c, entry=f"chain 1, column {col + 1}, P_{k}")))
                    for col, (g, e) in enumerate(zip(got2, expected_second_chain(i, j, k, n, fld))):
                        s, c = _equiv(g, e, ctx.seed)
                        res.append((s, c and dict(c, entry=f"chain 2, column {col + 1}, P_{k}")))
                return _combine(res)

            out.append(Check(f"twists.mixed.{i}.{j}", f"F_{i}^-1F_{j}F_{i} and F_{j}F_{i}F_{j}^-1 agree on every projective",
                             "mixed form of the braid relation", mixed))
            out.append(Check(f"twists.mixed_chains.{i}.{j}", f"both three-column chains for (i, j) = ({i}, {j}) match the expected complexes",
                             "three-column cone computation", chains))
    if n <= DEFAULT_BOUND:
        for i in A.vertices:
            def bim(i=i):
                c = verify_inverse_bimodule(i, n, fld, seed=ctx.seed)
                cert = {"d1_split_injective": c.d1_split_injective, "d0_split_surjective": c.d0_split_surjective,
                        "middle_complement_is_A": c.middle_complement_is_A,
                        "homology_dim": c.details["homology_dim"], "u_dimension": c.details["u_dimension"]}
                return _verdict(c.passed, cert)
            out.append(Check(f"twists.bimodule.{i}", f"the two twist complexes at {i} are inverse as bimodule complexes",
                             "split outer differentials and middle homology A", bim))
    return out


# ---------------------------------------------------------------------------
# type A relations over the zigzag algebra


def _braid_relation_checks(ctx: Context) -> list[Check]:
    n, fld, cap = ctx.n, ctx.field, ctx.max_summands
    B = build_zigzag(n, fld)
    out = []
    for i in B.vertices:
        for j in B.vertices:
            out.append(Check(f"braid_relations.R.{i}.{j}", f"R_{i}(Q_{j}) matches the image table",
                             "images of projectives under zigzag twists",
                             lambda i=i, j=j: _equiv(twist_apply(TwistLetter("R", i), stalk(B, j), cap),
                                                     r_table(i, j, n, fld), ctx.seed)))
    for i in B.vertices:
        def inverse(i=i):
            return _combine([_equiv(word_trace(word_of(("R", i, -1), ("R", i)), stalk(B, j), cap)[-1], stalk(B, j), ctx.seed)
                             for j in B.vertices])
        out.append(Check(f"braid_relations.R_inverse.{i}", f"R_{i}^-1 R_{i} fixes every projective",
                         "zigzag twists are invertible", inverse))
    for lhs, rhs, label in br.presentation("An", n).relations:
        out.append(Check(f"braid_relations.An.{label}", f"{lhs} = {rhs} on zigzag projectives",
                         "type A braid and commuting relations",
                         lambda lhs=lhs, rhs=rhs: _oracle("An", lhs, rhs, ctx)))
    for lhs, rhs, label in br.presentation("Kn", n).relations:
        out.append(Check(f"braid_relations.Kn.{label}", f"{lhs} = {rhs} on Nakayama projectives",
                         "complete-graph braid relations",
                         lambda lhs=lhs, rhs=rhs: _oracle("Kn", lhs, rhs, ctx)))
    out.append(Check("braid_relations.An.distinct", "s1 and s2 act differently",
                     "inequality certificates from minimal forms",
                     lambda: _oracle("An", br.gen("An", n, 1), br.gen("An", n, 2), ctx, expect="ProvenDistinct")))
    return out


# ---------------------------------------------------------------------------
# eta and the reflection representation


def _eta_checks(ctx: Context) -> list[Check]:
    n = ctx.n
    out = []

    def involutions():
        ident = [[int(r == c) for c in range(n)] for r in range(n)]
        ok = all(br.geometric_rep(br.gen("Kn", n, i, i)) == ident for i in range(1, n + 1))
        ok &= all(br.geometric_rep(br.gen("Kn", n, i, j, i)) == br.geometric_rep(br.gen("Kn", n, j, i, j))
                  for i in range(1, n + 1) for j in range(1, n + 1) if i != j)
        return _verdict(ok)

    out.append(Check("eta.coxeter", "reflections are involutions and satisfy every triple relation",
                     "reflection representation of the complete-graph Coxeter group", involutions))
    if n >= 3:
        def geometric():
            w = br.eta_witness(n)
            got = br.apply_rep(w, br.basis_vector(f"v{n}", n))
            want = [0] * n
            want[0], want[1], want[n - 1] = -4, -4, -3
            return _verdict(got == want, {"image_of_vn": got})
        out.append(Check("eta.witness.geometric", "the commutator word sends v_n to -4v_1 - 4v_2 - 3v_n",
                         "non-faithfulness witness in the reflection representation", geometric))
    if n >= 3:
        out.append(Check("eta.witness.images", "the eta-image of the commutator word fixes every zigzag projective",
                         "eta kills the commutator",
                         lambda: _oracle("An", br.map_eta(br.eta_witness(n)), br.BraidWord("An", n), ctx)))
    for k in range(1, n + 1):
        out.append(Check(f"eta.c.{k}.recursive", f"recursive c_{k} reduces to the left closed form",
                         "the c_k recursion",
                         lambda k=k: _verdict(br.free_reduce(br.word_c(k, n)) == br.word_c(k, n, "left_closed"))))
        out.append(Check(f"eta.c.{k}.closed_forms", f"the two closed forms of c_{k} act identically",
                         "two expressions for the same braid",
                         lambda k=k: _oracle("An", br.word_c(k, n, "left_closed"), br.word_c(k, n, "right_closed"), ctx)))
    for lhs, rhs, label in br.presentation("Kn", n).relations:
        out.append(Check(f"eta.relation.{label}", f"eta respects {lhs} = {rhs}",
                         "eta is a homomorphism",
                         lambda lhs=lhs, rhs=rhs: _oracle("An", br.map_eta(lhs), br.map_eta(rhs), ctx)))
    for k in range(1, n):
        c = lambda m: br.word_c(m, n)
        out.append(Check(f"eta.conjugate.{k}", f"c_{k} c_{k + 1} c_{k}^-1 acts as s{k}",
                         "conjugation identity behind surjectivity",
                         lambda k=k: _oracle("An", c(k) * c(k + 1) * c(k).inverse(), br.gen("An", n, k), ctx)))
    for j in range(1, n):
        for i in range(1, n):
            if i in (j - 1, j):
                continue
            out.append(Check(f"eta.commute.{i}.{j}", f"c_{j} s{i}^-1 = s{i}^-1 c_{j}",
                             "c_j commutes with s_i^-1",
                             lambda i=i, j=j: _oracle("An", br.word_c(j, n) * br.gen("An", n, -i),
                                                      br.gen("An", n, -i) * br.word_c(j, n), ctx)))
    return out


# ---------------------------------------------------------------------------
# staircase complexes


def _staircase_checks(ctx: Context) -> list[Check]:
    n, fld, cap, seed = ctx.n, ctx.field, ctx.max_summands, ctx.seed
    B = build_zigzag(n, fld)
    T = {j: staircase_complex(j, n, fld) for j in B.vertices}
    out = [Check("staircase.top", "T_n is Q_n in degree n-1", "the staircase complexes",
                 lambda: _verdict(T[n] == shift(stalk(B, n), n - 1)))]
    for j in range(1, n):
        out.append(Check(f"staircase.cone_f.{j}", f"Cone(T_{j} -> T_{j + 1}) is Q_{j}[{j}]", "the staircase triangle",
                         lambda j=j: _equiv(cone(staircase_maps(j, n, fld)[0]), stalk(B, j, j), seed)))
        out.append(Check(f"staircase.cone_g.{j}", f"Cone(T_{j + 1} -> Q_{j}[{j}]) is T_{j}[1]", "the staircase triangle",
                         lambda j=j: _equiv(cone(staircase_maps(j, n, fld)[1]), shift(T[j], 1), seed)))
    for j in B.vertices:
        out.append(Check(f"staircase.end.{j}", f"End(T_{j}) has dimension 2", "endomorphisms of staircase summands",
                         lambda j=j: _verdict(homotopy_hom_dim(T[j], T[j]) == 2)))
    for i in range(1, n):
        for j in B.vertices:
            if abs(i - j) > 1 or j == i - 1:
                exp, what = T[j], f"T_{j}"
            elif j == i:
                exp, what = T[i + 1], f"T_{i + 1}"
            else:
                exp, what = None, f"Cone(Cone(T_{i} -> T_{i + 1}) -> T_{i + 1})"

            def step(i=i, j=j, exp=exp):
                target = exp if exp is not None else cone(cone_to_next_step(i, n, fld))
                return _equiv(twist_apply(TwistLetter("R", i), T[j], cap), target, seed)

            out.append(Check(f"staircase.R{i}.T{j}", f"R_{i}(T_{j}) is {what}", "zigzag twists on staircase complexes", step))
    for j in B.vertices:
        what = f"T_{n}[1]" if j == n else f"Cone(T_{n} -> T_{j})"

        def last(j=j):
            target = shift(T[n], 1) if j == n else cone(socle_step_map(j, n, fld))
            return _equiv(twist_apply(TwistLetter("R", n), T[j], cap), target, seed)

        out.append(Check(f"staircase.R{n}.T{j}", f"R_{n}(T_{j}) is {what}", "the last zigzag twist on staircase complexes", last))

    def tilting():
        S = staircase_sum(n, fld)
        dims = {m: homotopy_hom_dim(S, shift(S, m)) for m in range(-n, n + 1)}
        ok = dims[0] == n * (n + 1) and all(v == 0 for m, v in dims.items() if m)
        return _verdict(ok, {"hom_dims": {str(m): v for m, v in dims.items()}})

    out.append(Check("staircase.tilting", "Hom(T, T[m]) vanishes for 0 < |m| <= n and has dimension n(n+1) at m = 0",
                     "the sum of staircase complexes is tilting with the Nakayama algebra as endomorphisms", tilting))
    return out


# ---------------------------------------------------------------------------
# affine generators


def _affine_checks(ctx: Context) -> list[Check]:
    n, fld, cap, seed = ctx.n, ctx.field, ctx.max_summands, ctx.seed
    A = build_nakayama(n, fld)
    out = []
    for i in A.vertices:
        def htable(i=i):
            t = image_table(h_generator_word(i, n), n, fld, max_summands=cap)
            return _combine([_equiv(t[j], refolded_table(i, j, n, fld), seed) for j in A.vertices])

        out.append(Check(f"affine.H.{i}", f"H_{i} = F_{i}F_{i % n + 1}F_{i}^-1 matches the image table (indices mod n)",
                         "images of projectives under the refolded generators", htable))

        def own(i=i):
            E = twist_apply(TwistLetter("F", i), stalk(A, i % n + 1), cap)
            got = word_trace(h_generator_word(i, n), E, cap)[-1]
            return _equiv(got, shift(E, 1), seed)

        out.append(Check(f"affine.H.{i}.own_object", f"H_{i} shifts F_{i}(P_{i % n + 1}) by one",
                         "a conjugated twist shifts its own spherical object", own))
    for lhs, rhs, label in br.presentation("Affine", n).relations:
        out.append(Check(f"affine.rho.{label}", f"{lhs} = {rhs} through H-words on Nakayama projectives",
                         "affine braid relations through the refolded generators",
                         lambda lhs=lhs, rhs=rhs: _oracle("Affine", lhs, rhs, ctx)))
        out.append(Check(f"affine.chi_mu.{label}", f"{lhs} = {rhs} through chi o mu on zigzag projectives",
                         "affine braid group inside the classical braid group",
                         lambda lhs=lhs, rhs=rhs: _oracle("An", br.map_chi_mu(lhs), br.map_chi_mu(rhs), ctx)))

    def generator_images():
        got = br.map_chi_mu(br.gen("Affine", n, n))
        want = br.free_reduce(br.gen("An", n, n, *range(n, 0, -1), *[-m for m in range(2, n + 1)], -n))
        gens_ok = all(br.map_mu(br.gen("Affine", n, i)) == br.gen("Bn", n, i) for i in range(1, n))
        gens_ok &= all(br.map_chi(br.gen("Bn", n, i)) == br.gen("An", n, i) for i in range(1, n))
        return _verdict(got == want and gens_ok, {"chi_mu_hn": str(got)})

    out.append(Check("affine.maps", "mu and chi send generators to the expected words, including the image of h_n",
                     "the embedding of the affine braid group", generator_images))
    return out


# ---------------------------------------------------------------------------
# the closing type B action


def _bn_checks(ctx: Context) -> list[Check]:
    n = ctx.n
    out = []
    for lhs, rhs, label in br.presentation("Bn", n).relations:
        out.append(Check(f"bn_action.literal.{label}",
                         f"{lhs} = {rhs} with b_i -> F_iF_(i+1)F_i and b_n -> F_nF_n",
                         "type B action with the uninverted middle letter",
                         lambda lhs=lhs, rhs=rhs: _oracle("Bn", lhs, rhs, ctx, bn_variant="literal")))
        out.append(Check(f"bn_action.conjugate.{label}",
                         f"{lhs} = {rhs} with b_i -> F_iF_(i+1)F_i^-1 and b_n -> F_nF_n",
                         "type B action with the refolded generators",
                         lambda lhs=lhs, rhs=rhs: _oracle("Bn", lhs, rhs, ctx, bn_variant="conjugate")))
        out.append(Check(f"bn_action.chi.{label}", f"chi respects {lhs} = {rhs}",
                         "type B braid group inside the classical braid group",
                         lambda lhs=lhs, rhs=rhs: _oracle("An", br.map_chi(lhs), br.map_chi(rhs), ctx)))
    return out


_BUILDERS = {
    "algebra": _algebra_checks,
    "twists": _twist_checks,
    "braid_relations": _braid_relation_checks,
    "eta": _eta_checks,
    "staircase": _staircase_checks,
    "affine": _affine_checks,
    "bn_action": _bn_checks,
}


def suite_checks(name: str, ctx: Context) -> list[Check]:
    if name == "all":
        return [c for s in SUITE_NAMES for c in _BUILDERS[s](ctx)]
    if name not in _BUILDERS:
        raise ValueError(f"unknown suite {name!r}")
    return _BUILDERS[name](ctx)


# ---------------------------------------------------------------------------
# reports


@dataclass
class SuiteReport:
    suite: str
    n: int
    seed: int
    checks: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "undetermined": 0}
        for c in self.checks:
            out[c["status"]] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 0 if all(c["status"] == "pass" for c in self.checks) else 1

    def to_dict(self) -> dict:
        return {"version": REPORT_VERSION, "suite": self.suite, "n": self.n, "seed": self.seed,
                "checks": self.checks, "summary": self.summary}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  n={self.n}  seed={self.seed}"]
        for c in self.checks:
            lines.append(f"  [{c['status'].upper():>12}] {c['id']}: {c['description']} ({c['elapsed_ms']} ms)")
            if c["status"] != "pass" and c["certificate"]:
                lines.append(f"                 {json.dumps(c['certificate'])}")
        s = self.summary
        lines.append(f"{s['pass']} passed, {s['fail']} failed, {s['undetermined']} undetermined")
        return "\n".join(lines)


def _run_check(check: Check) -> dict:
    start = time.perf_counter()
    try:
        status, cert = check.run()
    except (SummandCapExceeded, SizeBound) as exc:
        status, cert = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = int((time.perf_counter() - start) * 1000)
    return {"id": check.id, "description": check.description, "anchor": check.anchor,
            "status": status, "elapsed_ms": elapsed, "certificate": cert}


def run_suite(name: str, n: int, seed: int = 0, field: Field = QQ, jobs: int = 1,
              max_summands: int | None = DEFAULT_MAX_SUMMANDS) -> SuiteReport:
    if not 2 <= n <= max_rank():
        raise InvalidRank(f"n must lie in 2..{max_rank()} (set BRAIDCAT_MAX_N to raise the cap)")
    ctx = Context(n, seed, field, max_summands)
    checks = suite_checks(name, ctx)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_check, checks))
    else:
        results = [_run_check(c) for c in checks]
    results.sort(key=lambda r: r["id"])
    return SuiteReport(name, n, seed, results)
