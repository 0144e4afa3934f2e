"""Expected complexes for the image tables, written out by hand.

These are built directly from projectives and the elementary maps between
them, never through the twist construction, so comparing them with computed
images is an independent check.
"""
from __future__ import annotations

from .algebra import AlgebraSpec, ModuleMorphism, build_algebra
from .complexes import ProjComplex, stalk
from .scalars import QQ, Field


def strand(a: AlgebraSpec, top: int, vertices: list[int], maps: list[str]) -> ProjComplex:
    """``P_{v0} -> P_{v1} -> ...`` with ``P_{v0}`` in degree ``top``.

    ``maps[m]`` names the map between consecutive terms: ``"path"`` for the
    unique shortest path (``mu``/``nu``) and ``"socle"`` for the socle loop.
    """
    terms = {top - m: (v,) for m, v in enumerate(vertices)}
    diffs = {}
    for m, kind in enumerate(maps):
        u, v = vertices[m], vertices[m + 1]
        if kind == "socle":
            elem = a.basis_element(a.socle[u])
        else:
            elem = a.basis_element(a.paths(u, v)[0])
        diffs[top - m] = ModuleMorphism(a, (u,), (v,), {(0, 0): elem})
    return ProjComplex(a, terms, diffs)


def single_twist(i: int, j: int, n: int, sign: int = 1, kind: str = "nakayama", field: Field = QQ) -> ProjComplex:
    """Images of a projective under one twist or its inverse."""
    a = build_algebra(kind, n, field)
    if sign > 0:
        if i == j:
            return stalk(a, i, 1)
        return strand(a, 1, [i, j], ["path"])
    if i == j:
        return stalk(a, i, -1)
    return strand(a, 0, [j, i], ["path"])


def r_table(i: int, j: int, n: int, field: Field = QQ) -> ProjComplex:
    """The zigzag twist at ``i`` applied to ``Q_j``."""
    a = build_algebra("zigzag", n, field)
    if i == j:
        return stalk(a, i, 1)
    if abs(i - j) == 1:
        return strand(a, 1, [i, j], ["path"])
    return stalk(a, j)


def refolded_table(i: int, j: int, n: int, field: Field = QQ) -> ProjComplex:
    """``F_i F_{i+1} F_i^-1`` on ``P_j`` with indices read cyclically."""
    a = build_algebra("nakayama", n, field)
    nxt = i % n + 1
    if j == i:
        return stalk(a, nxt)
    if j == nxt:
        return strand(a, 2, [i, nxt, nxt], ["path", "socle"])
    return stalk(a, j)


def expected_first_chain(i: int, j: int, k: int, n: int, field: Field = QQ) -> list[ProjComplex]:
    """``F_i P_k``, ``F_j F_i P_k``, ``F_i^-1 F_j F_i P_k`` for ``i != j``."""
    a = build_algebra("nakayama", n, field)
    if k == i:
        return [stalk(a, i, 1), strand(a, 2, [j, i], ["path"]), strand(a, 2, [j, i, i], ["path", "socle"])]
    if k == j:
        return [strand(a, 1, [i, j], ["path"]), stalk(a, i, 1), stalk(a, i, 0)]
    return [strand(a, 1, [i, k], ["path"]), strand(a, 1, [i, k], ["path"]), stalk(a, k)]


def expected_second_chain(i: int, j: int, k: int, n: int, field: Field = QQ) -> list[ProjComplex]:
    """``F_j^-1 P_k``, ``F_i F_j^-1 P_k``, ``F_j F_i F_j^-1 P_k`` for ``i != j``."""
    a = build_algebra("nakayama", n, field)
    last = expected_first_chain(i, j, k, n, field)[-1]
    if k == j:
        return [stalk(a, j, -1), strand(a, 0, [i, j], ["path"]), last]
    if k == i:
        return [strand(a, 0, [i, j], ["path"]), strand(a, 1, [i, i, j], ["socle", "path"]), last]
    return [strand(a, 0, [k, j], ["path"]), strand(a, 0, [k, j], ["path"]), last]
