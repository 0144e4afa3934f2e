"""Twist functors on complexes of projectives, word evaluation and staircase complexes.

For an indecomposable projective ``P_i`` the twist is

    F_i(X)    = Cone(P_i (x) e_i X  --ev-->  X)
    F_i^-1(X) = Cone(X  --coev-->  P_i (x) (e_i X)^dual)[-1]

where ``e_i X`` is the complex of vector spaces ``Hom(P_i, X)``.  The same
construction over the zigzag algebra gives ``R_i``.  Words are applied right
to left and every intermediate result is minimized.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass

from .algebra import AlgebraMismatch, AlgebraSpec, ModuleMorphism, build_algebra
from .complexes import (
    ChainMap,
    ProjComplex,
    cone,
    homotopy_equivalent,
    minimize,
    shift,
    stalk,
)
from .scalars import QQ, Field

DEFAULT_MAX_SUMMANDS = 1000

_FAMILY_KIND = {"F": "nakayama", "R": "zigzag"}


class SummandCapExceeded(RuntimeError):
    pass


class WordParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class TwistLetter:
    family: str  # "F" (Nakayama) or "R" (zigzag)
    index: int
    sign: int = 1

    def __post_init__(self):
        if self.family not in _FAMILY_KIND:
            raise ValueError(f"unknown twist family {self.family!r}")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.index < 1:
            raise ValueError("twist index must be positive")

    @property
    def kind(self) -> str:
        return _FAMILY_KIND[self.family]

    def inverse(self) -> "TwistLetter":
        return TwistLetter(self.family, self.index, -self.sign)

    def __str__(self):
        return f"{self.family}{self.index}" + ("^-1" if self.sign < 0 else "")


@dataclass(frozen=True)
class FunctorWord:
    """Letters in composition order: the last letter acts first."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        kinds = {l.kind for l in self.letters}
        if len(kinds) > 1:
            raise AlgebraMismatch("a functor word mixes Nakayama and zigzag twists")

    @property
    def kind(self) -> str | None:
        return self.letters[0].kind if self.letters else None

    def inverse(self) -> "FunctorWord":
        return FunctorWord(tuple(l.inverse() for l in reversed(self.letters)))

    def __mul__(self, other: "FunctorWord") -> "FunctorWord":
        """Composite ``self o other`` (``other`` acts first)."""
        return FunctorWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(map(str, self.letters))


def word_of(*tokens) -> FunctorWord:
    """``word_of(("F", 1), ("F", 2, -1))`` style constructor."""
    return FunctorWord(tuple(TwistLetter(*t) for t in tokens))


def h_generator_word(i: int, n: int) -> FunctorWord:
    """``F_i F_{i+1} F_i^-1``, with ``F_n F_1 F_n^-1`` closing the cycle."""
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    nxt = i % n + 1
    return word_of(("F", i), ("F", nxt), ("F", i, -1))


_TOKEN = re.compile(r"([FRH])(\d+)(\^-1)?")


def parse_functor_word(text: str, n: int | None = None) -> FunctorWord:
    """Parse whitespace-separated tokens ``F3``, ``F3^-1``, ``R2``, ``H4``."""
    letters: list[TwistLetter] = []
    pos = 0
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        pos = m.start()
        got = _TOKEN.fullmatch(tok)
        if not got:
            raise WordParseError(f"bad token {tok!r}", pos)
        fam, idx, inv = got.group(1), int(got.group(2)), bool(got.group(3))
        if idx < 1 or (n is not None and idx > n):
            raise WordParseError(f"index {idx} out of range", pos)
        if fam == "H":
            if n is None:
                raise WordParseError("H letters need the rank", pos)
            w = h_generator_word(idx, n)
            letters.extend((w.inverse() if inv else w).letters)
        else:
            letters.append(TwistLetter(fam, idx, -1 if inv else 1))
    try:
        return FunctorWord(tuple(letters))
    except AlgebraMismatch as exc:
        raise WordParseError(str(exc), pos) from exc


# ---------------------------------------------------------------------------
# the twists themselves


def _hom_copies(a: AlgebraSpec, i: int, X: ProjComplex) -> dict[int, list]:
    """Basis of ``e_i X_k``: pairs ``(summand, path from i)``."""
    return {k: [(s, p) for s, v in enumerate(vs) for p in a.paths(i, v)] for k, vs in X.terms.items()}


def _evaluation(a: AlgebraSpec, i: int, X: ProjComplex) -> ChainMap:
    copies = _hom_copies(a, i, X)
    e = a.idempotent(i)
    terms = {k: (i,) * len(c) for k, c in copies.items()}
    diffs = {}
    for k, d in X.diffs.items():
        pos = {c: r for r, c in enumerate(copies[k - 1])}
        cells = {}
        for r, (s, p) in enumerate(copies[k]):
            for t in range(len(X.term(k - 1))):
                c = d.cells.get((s, t))
                if c is None:
                    continue
                for q, coeff in (a.basis_element(p) * c).terms.items():
                    cells[r, pos[t, q]] = e * coeff
        diffs[k] = ModuleMorphism(a, terms[k], terms[k - 1], cells)
    Z = ProjComplex(a, terms, diffs)
    comps = {
        k: ModuleMorphism(a, terms[k], X.term(k), {(r, s): a.basis_element(p) for r, (s, p) in enumerate(c)})
        for k, c in copies.items()
    }
    return ChainMap(Z, X, comps)


def _coevaluation(a: AlgebraSpec, i: int, X: ProjComplex) -> ChainMap:
    copies = _hom_copies(a, i, X)
    e = a.idempotent(i)
    terms = {k: (i,) * len(c) for k, c in copies.items()}
    # the duals p* of paths p from i to v form a basis of e_v A e_i
    dual_pos = {}
    for k, c in copies.items():
        for r, (s, p) in enumerate(c):
            dual_pos[k, s, a.dual(p)] = r
    diffs = {}
    for k, d in X.diffs.items():
        cells = {}
        for (s, t), c in d.cells.items():
            for q_row, (t2, q) in enumerate(copies[k - 1]):
                if t2 != t:
                    continue
                for b, coeff in (c * a.basis_element(a.dual(q))).terms.items():
                    r = dual_pos[k, s, b]
                    cur = cells.get((r, q_row))
                    cells[r, q_row] = cur + e * coeff if cur is not None else e * coeff
        diffs[k] = ModuleMorphism(a, terms[k], terms[k - 1], cells)
    Z = ProjComplex(a, terms, diffs)
    comps = {
        k: ModuleMorphism(a, X.term(k), terms[k], {(s, r): a.basis_element(a.dual(p)) for r, (s, p) in enumerate(c)})
        for k, c in copies.items()
    }
    return ChainMap(X, Z, comps)


def twist_raw(letter: TwistLetter, X: ProjComplex) -> ProjComplex:
    """The unminimized total complex of a single twist."""
    a = X.algebra
    if letter.kind != a.kind:
        raise AlgebraMismatch(f"{letter} does not act on the {a.kind} algebra")
    if letter.index > a.n:
        raise ValueError(f"{letter} out of range for n={a.n}")
    if letter.sign > 0:
        return cone(_evaluation(a, letter.index, X))
    return shift(cone(_coevaluation(a, letter.index, X)), -1)


def _cap(X: ProjComplex, cap: int | None, letter) -> ProjComplex:
    if cap is not None and X.total_summands() > cap:
        raise SummandCapExceeded(f"{X.total_summands()} summands after {letter} exceeds the cap {cap}")
    return X


def twist_apply(letter: TwistLetter, X: ProjComplex, max_summands: int | None = DEFAULT_MAX_SUMMANDS) -> ProjComplex:
    return _cap(minimize(twist_raw(letter, X)), max_summands, letter)


def word_trace(word: FunctorWord, X: ProjComplex, max_summands: int | None = DEFAULT_MAX_SUMMANDS) -> list[ProjComplex]:
    """Every intermediate minimal complex, starting with ``minimize(X)``."""
    if word.kind is not None and word.kind != X.algebra.kind:
        raise AlgebraMismatch(f"word over {word.kind} applied to a {X.algebra.kind} complex")
    out = [minimize(X)]
    for letter in reversed(word.letters):
        out.append(twist_apply(letter, out[-1], max_summands))
    return out


def word_apply(word: FunctorWord, X: ProjComplex, max_summands: int | None = DEFAULT_MAX_SUMMANDS) -> ProjComplex:
    return word_trace(word, X, max_summands)[-1]


# ---------------------------------------------------------------------------
# image tables


@dataclass
class ImageTable:
    n: int
    kind: str
    entries: dict  # vertex -> minimal ProjComplex

    def __getitem__(self, v: int) -> ProjComplex:
        return self.entries[v]


_cache: dict = {}
_cache_lock = threading.Lock()


def clear_image_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _image_of_stalk(a: AlgebraSpec, letters: tuple, v: int, cap: int | None) -> ProjComplex:
    # cache every suffix so words sharing a tail share work
    start = len(letters)
    X = None
    with _cache_lock:
        for cut in range(len(letters) + 1):
            got = _cache.get((a.key, letters[cut:], v))
            if got is not None:
                start, X = cut, got
                break
    if X is None:
        X = minimize(stalk(a, v))
        with _cache_lock:
            _cache[a.key, (), v] = X
    for cut in range(start - 1, -1, -1):
        X = twist_apply(letters[cut], X, cap)
        with _cache_lock:
            _cache.setdefault((a.key, letters[cut:], v), X)
    return X


def image_table(word: FunctorWord, n: int, field: Field = QQ, kind: str | None = None,
                max_summands: int | None = DEFAULT_MAX_SUMMANDS) -> ImageTable:
    """Images of all indecomposable projectives under ``word``."""
    kind = word.kind or kind or "nakayama"
    if word.kind is not None and kind != word.kind:
        raise AlgebraMismatch(f"word over {word.kind} evaluated over {kind}")
    a = build_algebra(kind, n, field)
    for l in word.letters:
        if l.index > n:
            raise ValueError(f"{l} out of range for n={n}")
    return ImageTable(n, kind, {v: _image_of_stalk(a, word.letters, v, max_summands) for v in a.vertices})


# ---------------------------------------------------------------------------
# staircase complexes over the zigzag algebra


class IndexOutOfRange(IndexError):
    pass


def _arrow(a: AlgebraSpec, u: int, v: int):
    return a.basis_element(a.paths(u, v)[0])


def staircase_complex(j: int, n: int, field: Field = QQ) -> ProjComplex:
    """``T_j = Q_n -> ... -> Q_j`` with ``Q_k`` in degree ``k-1``."""
    if not 1 <= j <= n:
        raise IndexOutOfRange(f"j={j} outside 1..{n}")
    a = build_algebra("zigzag", n, field)
    terms = {k - 1: (k,) for k in range(j, n + 1)}
    diffs = {k: ModuleMorphism(a, (k + 1,), (k,), {(0, 0): _arrow(a, k + 1, k)}) for k in range(j, n)}
    return ProjComplex(a, terms, diffs)


def staircase_maps(j: int, n: int, field: Field = QQ) -> tuple[ChainMap, ChainMap]:
    """The triangle ``T_j -f-> T_{j+1} -g-> Q_j[j]``; only for ``j < n``."""
    if not 1 <= j < n:
        raise IndexOutOfRange(f"triangle maps need 1 <= j < n, got j={j}, n={n}")
    a = build_algebra("zigzag", n, field)
    Tj, Tj1 = staircase_complex(j, n, field), staircase_complex(j + 1, n, field)
    f = ChainMap(Tj, Tj1, {k - 1: ModuleMorphism(a, (k,), (k,), {(0, 0): a.idempotent(k)}) for k in range(j + 1, n + 1)})
    Qj = stalk(a, j, j)
    g = ChainMap(Tj1, Qj, {j: ModuleMorphism(a, (j + 1,), (j,), {(0, 0): _arrow(a, j + 1, j)})})
    return f, g


def staircase(j: int, n: int, field: Field = QQ):
    """``(T_j, f_j, g_j)``; the maps are ``None`` for ``j = n``."""
    T = staircase_complex(j, n, field)
    if j == n:
        return T, None, None
    f, g = staircase_maps(j, n, field)
    return T, f, g


def staircase_sum(n: int, field: Field = QQ) -> ProjComplex:
    from .complexes import direct_sum

    out = staircase_complex(1, n, field)
    for j in range(2, n + 1):
        out = direct_sum(out, staircase_complex(j, n, field))
    return out


def cone_to_next_step(i: int, n: int, field: Field = QQ) -> ChainMap:
    """The map ``Cone(f_i) -> T_{i+1}`` through which ``R_i(T_{i+1})`` is a cone.

    In degree ``i`` it sends the ``Q_i`` coming from ``T_i`` along the arrow
    and acts on ``Q_{i+1}`` by the loop; it vanishes elsewhere.
    """
    if not 1 <= i < n:
        raise IndexOutOfRange(f"need 1 <= i < n, got i={i}, n={n}")
    a = build_algebra("zigzag", n, field)
    f, _ = staircase_maps(i, n, field)
    C = cone(f)
    T = staircase_complex(i + 1, n, field)
    src = C.term(i)
    cells = {}
    for s, v in enumerate(src):
        if v == i:
            cells[s, 0] = _arrow(a, i, i + 1)
        elif v == i + 1:
            cells[s, 0] = a.basis_element(a.socle[i + 1])
    u = ChainMap(C, T, {i: ModuleMorphism(a, src, T.term(i), cells)})
    if not u.validate():
        raise ArithmeticError("the map Cone(f_i) -> T_{i+1} failed the chain condition")
    return u


def socle_step_map(j: int, n: int, field: Field = QQ) -> ChainMap:
    """``T_n -> T_j``: the loop on ``Q_n`` in degree ``n-1`` (the identity is not a chain map)."""
    if not 1 <= j < n:
        raise IndexOutOfRange(f"need 1 <= j < n, got j={j}, n={n}")
    a = build_algebra("zigzag", n, field)
    Tn, Tj = staircase_complex(n, n, field), staircase_complex(j, n, field)
    m = ChainMap(Tn, Tj, {n - 1: ModuleMorphism(a, (n,), (n,), {(0, 0): a.basis_element(a.socle[n])})})
    if not m.validate():
        raise ArithmeticError("the loop map T_n -> T_j failed the chain condition")
    return m


def equivalent(X: ProjComplex, Y: ProjComplex, seed: int = 0) -> bool:
    return homotopy_equivalent(X, Y, seed=seed).status == "Equivalent"
