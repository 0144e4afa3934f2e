"""Braid words, group presentations, the homomorphisms between them, and word oracles.

Groups are named ``Kn`` (complete-graph type, letter ``a``), ``An`` (classical,
letter ``s``), ``Affine`` (cyclic affine type, letter ``h``) and ``Bn``
(letter ``b``).  Words read left to right as products; acting on objects, the
rightmost letter acts first.
"""
from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .complexes import homotopy_equivalent, format_complex
from .twists import FunctorWord, TwistLetter, h_generator_word, image_table, word_of
from .scalars import QQ, Field, derive_seed

GROUP_LETTER = {"Kn": "a", "An": "s", "Affine": "h", "Bn": "b"}
GROUP_ALIASES = {
    "Kn": "Kn", "K": "Kn",
    "An": "An", "A": "An",
    "Affine": "Affine", "AffineAn_minus1": "Affine", "affine": "Affine",
    "Bn": "Bn", "B": "Bn",
}


class RankMismatch(ValueError):
    pass


class BraidParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UndeterminedEntry(RuntimeError):
    pass


def canonical_group(name: str) -> str:
    try:
        return GROUP_ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown group {name!r}") from None


@dataclass(frozen=True)
class BraidWord:
    group: str
    n: int
    letters: tuple = ()  # (generator index, +1 or -1)

    def __post_init__(self):
        object.__setattr__(self, "group", canonical_group(self.group))
        object.__setattr__(self, "letters", tuple((int(i), int(e)) for i, e in self.letters))
        for i, e in self.letters:
            if not 1 <= i <= self.n or e not in (1, -1):
                raise ValueError(f"bad letter {(i, e)} for rank {self.n}")

    def inverse(self) -> "BraidWord":
        return BraidWord(self.group, self.n, tuple((i, -e) for i, e in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if (self.group, self.n) != (other.group, other.n):
            raise RankMismatch("product of words from different groups")
        return BraidWord(self.group, self.n, self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        g = GROUP_LETTER[self.group]
        return " ".join(f"{g}{i}" + ("^-1" if e < 0 else "") for i, e in self.letters)


def gen(group: str, n: int, *indices: int) -> BraidWord:
    """Positive word in the given generators; negative indices give inverses."""
    return BraidWord(group, n, tuple((abs(i), 1 if i > 0 else -1) for i in indices))


_TOKEN = re.compile(r"([a-z])(\d+)(\^-1)?")


def parse_braid_word(text: str, group: str, n: int) -> BraidWord:
    """Tokens like ``a1 a2^-1``; the letter must match the group."""
    group = canonical_group(group)
    want = GROUP_LETTER[group]
    letters = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        got = _TOKEN.fullmatch(tok)
        if not got:
            raise BraidParseError(f"bad token {tok!r}", m.start())
        if got.group(1) != want:
            raise BraidParseError(f"letter {got.group(1)!r} does not belong to {group} (use {want!r})", m.start())
        idx = int(got.group(2))
        if not 1 <= idx <= n:
            raise BraidParseError(f"index {idx} out of range 1..{n}", m.start())
        letters.append((idx, -1 if got.group(3) else 1))
    return BraidWord(group, n, tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    stack: list = []
    for i, e in w.letters:
        if stack and stack[-1] == (i, -e):
            stack.pop()
        else:
            stack.append((i, e))
    return BraidWord(w.group, w.n, tuple(stack))


# ---------------------------------------------------------------------------
# presentations


@dataclass
class GroupPresentation:
    group: str
    n: int
    relations: list = field(default_factory=list)  # (lhs, rhs, label)


def presentation(group: str, n: int) -> GroupPresentation:
    group = canonical_group(group)
    rels = []

    seen = set()

    def add(lhs, rhs, label):
        if (lhs, rhs) not in seen and (rhs, lhs) not in seen:
            seen.add((lhs, rhs))
            rels.append((gen(group, n, *lhs), gen(group, n, *rhs), label))

    if group == "Kn":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                add((i, j, i), (j, i, j), f"braid({i},{j})")
    elif group == "An":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if j == i + 1:
                    add((i, j, i), (j, i, j), f"braid({i},{j})")
                else:
                    add((i, j), (j, i), f"commute({i},{j})")
    elif group == "Affine" and n >= 3:
        # at n = 2 the two generators are joined by a double edge: no relations
        for i in range(1, n):
            add((i, i + 1, i), (i + 1, i, i + 1), f"braid({i},{i + 1})")
        add((n, 1, n), (1, n, 1), f"braid({n},1)")
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if j - i not in (1, n - 1):
                    add((i, j), (j, i), f"commute({i},{j})")
    elif group == "Bn":
        for i in range(1, n - 1):
            add((i, i + 1, i), (i + 1, i, i + 1), f"braid({i},{i + 1})")
        for i in range(1, n + 1):
            for j in range(i + 2, n + 1):
                add((i, j), (j, i), f"commute({i},{j})")
        add((n - 1, n, n - 1, n), (n, n - 1, n, n - 1), f"length4({n - 1},{n})")
    return GroupPresentation(group, n, rels)


# ---------------------------------------------------------------------------
# word families and homomorphisms


def word_c(k: int, n: int, variant: str = "recursive") -> BraidWord:
    """The classical-braid words c_k used for the complete-graph generators."""
    if not 1 <= k <= n:
        raise IndexError(f"k={k} outside 1..{n}")
    if variant == "recursive":
        w = gen("An", n, n)
        for m in range(n - 1, k - 1, -1):
            w = gen("An", n, -m) * w * gen("An", n, m)
        return w
    if variant == "left_closed":
        down = [-m for m in range(k, n)]
        return gen("An", n, *down, n, *range(n - 1, k - 1, -1))
    if variant == "right_closed":
        return gen("An", n, *range(n, k - 1, -1), *[-m for m in range(k + 1, n + 1)])
    raise ValueError(f"unknown variant {variant!r}")


def _substitute(w: BraidWord, target: str, images: dict) -> BraidWord:
    out = BraidWord(target, w.n)
    for i, e in w.letters:
        img = images[i]
        out = out * (img if e > 0 else img.inverse())
    return free_reduce(out)


def _expect(w: BraidWord, group: str) -> None:
    if w.group != group:
        raise RankMismatch(f"expected a {group} word, got {w.group}")


def map_eta(w: BraidWord) -> BraidWord:
    _expect(w, "Kn")
    return _substitute(w, "An", {i: word_c(i, w.n) for i in range(1, w.n + 1)})


def map_chi(w: BraidWord) -> BraidWord:
    _expect(w, "Bn")
    n = w.n
    images = {i: gen("An", n, i) for i in range(1, n)}
    images[n] = gen("An", n, n, n)
    return _substitute(w, "An", images)


def map_mu(w: BraidWord) -> BraidWord:
    _expect(w, "Affine")
    n = w.n
    images = {i: gen("Bn", n, i) for i in range(1, n)}
    images[n] = gen("Bn", n, *range(n, 0, -1), *[-m for m in range(2, n + 1)])
    return _substitute(w, "Bn", images)


def map_chi_mu(w: BraidWord) -> BraidWord:
    return free_reduce(map_chi(map_mu(w)))


# ---------------------------------------------------------------------------
# reflection representation of the complete-graph Coxeter group


def generator_matrix(i: int, n: int) -> list[list[int]]:
    """Column ``j`` holds the coordinates of ``f_i(v_j)``."""
    m = [[int(r == c) for c in range(n)] for r in range(n)]
    for j in range(n):
        if j == i - 1:
            m[i - 1][j] = -1
        else:
            m[i - 1][j] += 1
    return m


def _matmul(x, y):
    return [[sum(x[r][k] * y[k][c] for k in range(len(y))) for c in range(len(y[0]))] for r in range(len(x))]


def geometric_rep(w: BraidWord, n: int | None = None) -> list[list[int]]:
    """Integer matrix of ``w`` acting on column vectors; inverse letters use the same involution."""
    _expect(w, "Kn")
    n = w.n if n is None else n
    out = [[int(r == c) for c in range(n)] for r in range(n)]
    for i, _ in w.letters:
        out = _matmul(out, generator_matrix(i, n))
    return out


def apply_rep(w: BraidWord, vector: list[int]) -> list[int]:
    m = geometric_rep(w)
    return [sum(m[r][c] * vector[c] for c in range(len(vector))) for r in range(len(m))]


def basis_vector(label: str, n: int) -> list[int]:
    got = re.fullmatch(r"v(\d+)", label.strip())
    if not got or not 1 <= int(got.group(1)) <= n:
        raise ValueError(f"bad basis label {label!r}")
    k = int(got.group(1))
    return [int(j == k) for j in range(1, n + 1)]


# ---------------------------------------------------------------------------
# categorical oracle


def closing_bn_word(i: int, n: int, variant: str = "literal") -> FunctorWord:
    """Twist word attached to ``b_i``.

    ``literal``: ``F_i F_{i+1} F_i`` and ``F_n F_n``.  ``conjugate``: the
    middle-conjugate ``F_i F_{i+1} F_i^-1`` (the refolded generator) and ``F_n F_n``.
    """
    if i == n:
        return word_of(("F", n), ("F", n))
    last = 1 if variant == "literal" else -1
    if variant not in ("literal", "conjugate"):
        raise ValueError(f"unknown variant {variant!r}")
    return word_of(("F", i), ("F", i + 1), ("F", i, last))


def functor_word(w: BraidWord, bn_variant: str = "literal") -> FunctorWord:
    """The twist word through which ``w`` acts on a homotopy category."""
    n = w.n
    out = FunctorWord()
    for i, e in w.letters:
        if w.group == "An":
            piece = FunctorWord((TwistLetter("R", i, e),))
        elif w.group == "Kn":
            piece = FunctorWord((TwistLetter("F", i, e),))
        elif w.group == "Affine":
            piece = h_generator_word(i, n)
            piece = piece if e > 0 else piece.inverse()
        else:
            piece = closing_bn_word(i, n, bn_variant)
            piece = piece if e > 0 else piece.inverse()
        out = out * piece
    return out


def algebra_kind(group: str) -> str:
    return "zigzag" if canonical_group(group) == "An" else "nakayama"


EVIDENCE = {
    "An": "ImagesAgree means equal images of every indecomposable projective: evidence of equality in TrPic, not a proof of equality in the braid group",
    "Kn": "ImagesAgree does not imply equality in B(K_n): this action is not faithful",
    "Affine": "ImagesAgree means equal images of every indecomposable projective: evidence of equality in TrPic, not a proof of equality in the braid group",
    "Bn": "ImagesAgree means equal images of every indecomposable projective: evidence of equality in TrPic, not a proof of equality in the braid group",
}


@dataclass
class OracleVerdict:
    status: str  # "ProvenDistinct" | "ImagesAgree"
    certificate: dict
    evidence: str

    def __bool__(self):
        return self.status == "ImagesAgree"


def oracle_compare(group: str, w1: BraidWord, w2: BraidWord, n: int | None = None, seed: int = 0,
                   field: Field = QQ, jobs: int = 1, bn_variant: str = "literal",
                   max_summands: int | None = None) -> OracleVerdict:
    """Compare the images of every indecomposable projective under both words."""
    group = canonical_group(group)
    n = w1.n if n is None else n
    if w1.group != group or w2.group != group:
        raise RankMismatch("words do not belong to the requested group")
    if w1.n != n or w2.n != n:
        raise RankMismatch(f"rank mismatch: {w1.n}, {w2.n} vs {n}")
    kind = algebra_kind(group)
    kw = {} if max_summands is None else {"max_summands": max_summands}
    t1 = image_table(functor_word(w1, bn_variant), n, field, kind, **kw)
    t2 = image_table(functor_word(w2, bn_variant), n, field, kind, **kw)

    def compare(v):
        return v, homotopy_equivalent(t1[v], t2[v], seed=derive_seed(seed, v))

    vertices = list(range(1, n + 1))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            verdicts = dict(pool.map(compare, vertices))
    else:
        verdicts = dict(map(compare, vertices))
    letter = "Q" if kind == "zigzag" else "P"
    for v in vertices:
        ver = verdicts[v]
        if ver.status == "Distinct":
            cert = {
                "projective": f"{letter}{v}",
                "image_1": format_complex(ver.source_min),
                "image_2": format_complex(ver.target_min),
                "multisets": ver.certificate,
            }
            return OracleVerdict("ProvenDistinct", cert, "images of an indecomposable projective differ, so the words act differently")
    bad = [v for v in vertices if verdicts[v].status != "Equivalent"]
    if bad:
        raise UndeterminedEntry(f"undetermined comparison at {letter}{bad[0]}")
    cert = {"images": {f"{letter}{v}": format_complex(t1[v]) for v in vertices}}
    return OracleVerdict("ImagesAgree", cert, EVIDENCE[group])


def is_identity_table(w: BraidWord, seed: int = 0, bn_variant: str = "literal") -> bool:
    return bool(oracle_compare(w.group, w, BraidWord(w.group, w.n), seed=seed, bn_variant=bn_variant))


ETA_WITNESS = "a1 a2 a1^-1 a{n} a1 a2^-1 a1^-1 a{n}^-1"


def eta_witness(n: int) -> BraidWord:
    """The commutator whose image under eta acts trivially while its reflection matrix does not."""
    return parse_braid_word(ETA_WITNESS.format(n=n), "Kn", n)
