"""Mapping classes of the closed genus-2 surface as automorphisms of pi_1.

A mapping class is stored by the images of a1, b1, a2, b2; two automorphisms
represent the same class iff they differ by an inner automorphism.

Twist letters: ``1..5`` are right-handed twists along the chain c1..c5 and
``6`` (written ``s``) is the twist along the separating curve s0 cut out by
c1 and c2.  A negative letter is the inverse twist.  Words compose like
functions: the rightmost letter acts first, so ``(4, 1)`` means t4 o t1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .words import (
    A1,
    B1,
    A2,
    B2,
    DEFAULT_MAX_LENGTH,
    GENERATORS,
    RELATOR,
    concat_reduce,
    conjugacy_witness,
    cyclic_reduce,
    dehn_reduce,
    free_reduce,
    invert,
    same_curve,
    words_equal,
)

C1, C2, C3, C4, C5, S0 = 1, 2, 3, 4, 5, 6
BASES = (C1, C2, C3, C4, C5, S0)
BASE_NAMES = {C1: "c1", C2: "c2", C3: "c3", C4: "c4", C5: "c5", S0: "s0"}
_BASE_BY_NAME = {v: k for k, v in BASE_NAMES.items()}
LETTER_NAMES = {1: "1", 2: "2", 3: "3", 4: "4", 5: "5", 6: "s"}
_LETTER_BY_NAME = {v: k for k, v in LETTER_NAMES.items()}

#: A loop representing each base curve.
BASE_WORDS = {
    C1: (B1,),
    C2: (A1,),
    C3: (B2, B1),
    C4: (A2,),
    C5: (B2,),
    S0: (A1, B1, -A1, -B1),
}

Images = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def _imgs(d: dict) -> Images:
    return tuple(tuple(d.get(g, (g,))) for g in GENERATORS)  # type: ignore[return-value]


# Right-handed twists along the chain; generators not listed are fixed.
# c1 ~ b1, c2 ~ a1, c3 ~ b2 b1, c4 ~ a2, c5 ~ b2.
_CHAIN = {
    1: _imgs({A1: (A1, -B1)}),
    2: _imgs({B1: (B1, A1)}),
    3: _imgs({A1: (-B1, -B2, A1), A2: (-B2, -B1, A2)}),
    4: _imgs({B2: (B2, A2)}),
    5: _imgs({A2: (A2, -B2)}),
}
_CHAIN_INV = {
    1: _imgs({A1: (A1, B1)}),
    2: _imgs({B1: (B1, -A1)}),
    3: _imgs({A1: (B2, B1, A1), A2: (B1, B2, A2)}),
    4: _imgs({B2: (B2, -A2)}),
    5: _imgs({A2: (A2, B2)}),
}

IDENTITY_IMAGES: Images = _imgs({})


def apply_images(images: Images, w: Iterable[int], max_length: int = DEFAULT_MAX_LENGTH) -> tuple[int, ...]:
    """Substitute generator images into w and reduce."""
    inv: dict[int, tuple[int, ...]] = {}
    parts = []
    for x in w:
        if x > 0:
            parts.append(images[x - 1])
        else:
            if x not in inv:
                inv[x] = invert(images[-x - 1])
            parts.append(inv[x])
    return concat_reduce(parts, max_length)


def _compose_images(m1: Images, m2: Images, max_length: int = DEFAULT_MAX_LENGTH) -> Images:
    # (m1 o m2)(g) = m1(m2(g))
    return tuple(apply_images(m1, m2[g - 1], max_length) for g in GENERATORS)  # type: ignore[return-value]


def _power(m: Images, k: int) -> Images:
    out = IDENTITY_IMAGES
    for _ in range(k):
        out = _compose_images(m, out)
    return out


# s0 is *defined* as the curve whose twist is (t1 t2)^6.
_T12 = _compose_images(_CHAIN[1], _CHAIN[2])
_T12_INV = _compose_images(_CHAIN_INV[2], _CHAIN_INV[1])
GENERATOR_IMAGES: dict[int, Images] = dict(_CHAIN)
GENERATOR_IMAGES[6] = _power(_T12, 6)
for _i, _m in _CHAIN_INV.items():
    GENERATOR_IMAGES[-_i] = _m
GENERATOR_IMAGES[-6] = _power(_T12_INV, 6)


# --- words in the twist generators -------------------------------------------------

McgWord = tuple[int, ...]


def parse_mcg_word(text: str) -> McgWord:
    text = text.strip()
    if text in ("", "e"):
        return ()
    out = []
    for tok in text.split():
        inv = tok.endswith("'")
        name = tok[:-1] if inv else tok
        if name not in _LETTER_BY_NAME:
            raise ValueError(f"unknown twist letter {tok!r}")
        g = _LETTER_BY_NAME[name]
        out.append(-g if inv else g)
    return tuple(out)


def render_mcg_word(w: Sequence[int]) -> str:
    if not w:
        return "e"
    return " ".join(LETTER_NAMES[abs(x)] + ("'" if x < 0 else "") for x in w)


def invert_word(w: Sequence[int]) -> McgWord:
    return tuple(-x for x in reversed(w))


def parse_base(text: str) -> int:
    try:
        return _BASE_BY_NAME[text.strip()]
    except KeyError:
        raise ValueError(f"unknown base curve {text!r}") from None


# --- mapping classes ---------------------------------------------------------------


@dataclass(frozen=True)
class MappingClass:
    """An automorphism of pi_1, possibly remembering a defining twist word."""

    images: Images
    word: McgWord | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.images) != 4:
            raise ValueError("need images of a1, b1, a2, b2")
        if apply_images(self.images, RELATOR):
            raise ValueError("images do not respect the surface relator")

    def __call__(self, w: Sequence[int]) -> tuple[int, ...]:
        return apply_images(self.images, w)

    def __matmul__(self, other: "MappingClass") -> "MappingClass":
        return compose(self, other)

    def size(self) -> int:
        return sum(len(x) for x in self.images)


IDENTITY = MappingClass(IDENTITY_IMAGES, ())


def conjugation(w: Sequence[int]) -> MappingClass:
    """The inner automorphism g -> w g w^-1."""
    wi = invert(w)
    return MappingClass(tuple(dehn_reduce(tuple(w) + (g,) + wi) for g in GENERATORS))  # type: ignore[arg-type]


# generators each twist letter actually moves
_MOVED = {
    x: tuple(i for i in range(4) if img[i] != (GENERATORS[i],)) for x, img in GENERATOR_IMAGES.items()
}


@lru_cache(maxsize=4096)
def _evaluate(w: McgWord, max_length: int) -> Images:
    if not w:
        return IDENTITY_IMAGES
    if len(w) == 1:
        return GENERATOR_IMAGES[w[0]]
    # left to right, m <- m o g: only the images g moves change, and each new
    # image is a short product of old ones
    m = GENERATOR_IMAGES[w[0]]
    for x in w[1:]:
        g = GENERATOR_IMAGES[x]
        new = list(m)
        for i in _MOVED[x]:
            new[i] = apply_images(m, g[i], max_length)
        m = tuple(new)  # type: ignore[assignment]
    return m


def evaluate(w: Sequence[int], max_length: int = DEFAULT_MAX_LENGTH) -> MappingClass:
    w = free_reduce(w)
    for x in w:
        if x not in GENERATOR_IMAGES:
            raise ValueError(f"bad twist letter {x}")
    return MappingClass(_evaluate(w, max_length), w)


def compose(m1: MappingClass, m2: MappingClass, max_length: int = DEFAULT_MAX_LENGTH) -> MappingClass:
    """m1 o m2 (m2 acts first)."""
    word = None
    if m1.word is not None and m2.word is not None:
        word = free_reduce(m1.word + m2.word)
    return MappingClass(_compose_images(m1.images, m2.images, max_length), word)


def invert_class(m: MappingClass) -> MappingClass:
    if m.word is None:
        raise ValueError("cannot invert a mapping class without its twist word")
    return evaluate(invert_word(m.word))


def apply(m: MappingClass, w: Sequence[int]) -> tuple[int, ...]:
    return apply_images(m.images, w)


def conjugator_between(m1: MappingClass, m2: MappingClass) -> tuple[int, ...] | None:
    """Some c with c m2(g) c^-1 = m1(g) for every generator, else None.

    c is pinned down on a1 up to the centralizer of m2(a1), which is the
    cyclic group it generates (a1 is primitive and not a proper power, and
    automorphisms preserve both properties), so only a power k is left.
    Conjugating by z^k grows length linearly in |k|, which bounds the search.
    """
    z = m2.images[0]
    w0 = conjugacy_witness(z, m1.images[0])
    if w0 is None:
        return None
    # now need z^k m2(b1) z^-k = y with y = w0^-1 m1(b1) w0
    target = dehn_reduce(invert(w0) + m1.images[1] + w0)
    src = m2.images[1]
    bound = len(m1.images[1]) + len(src) + 2 * len(w0) + 2
    zi = invert(z)
    pos = neg = src
    for k in range(bound + 1):
        if k:
            pos = dehn_reduce(z + pos + zi)
            neg = dehn_reduce(zi + neg + z)
        for kk, cur in ((k, pos), (-k, neg)):
            if words_equal(cur, target):
                zk = z * kk if kk >= 0 else zi * (-kk)
                c = dehn_reduce(w0 + zk)
                ci = invert(c)
                if all(
                    words_equal(c + m2.images[g - 1] + ci, m1.images[g - 1])
                    for g in GENERATORS
                ):
                    return c
            if k == 0:
                break
    return None


def is_isotopically_trivial(m: MappingClass) -> tuple[int, ...] | None:
    """Witness w with m = conjugation by w, or None if m is not inner."""
    return conjugator_between(m, IDENTITY)


def mapping_classes_equal(m1: MappingClass, m2: MappingClass) -> bool:
    return conjugator_between(m1, m2) is not None


# --- curves -------------------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    """The simple closed curve phi(base), phi given by a twist word."""

    conjugator: McgWord
    base: int

    def __post_init__(self) -> None:
        if self.base not in BASES:
            raise ValueError(f"bad base curve {self.base}")
        object.__setattr__(self, "conjugator", tuple(self.conjugator))

    @classmethod
    def parse(cls, text: str) -> "Curve":
        """``<mcg-word> : <base>``, e.g. ``4 1' : c3``."""
        word, _, base = text.rpartition(":")
        return cls(parse_mcg_word(word), parse_base(base))

    def __str__(self) -> str:
        return f"{render_mcg_word(self.conjugator)} : {BASE_NAMES[self.base]}"

    def conjugate(self, phi: Sequence[int]) -> "Curve":
        """The curve phi(self)."""
        return Curve(free_reduce(tuple(phi) + self.conjugator), self.base)

    @property
    def separating_base(self) -> bool:
        return self.base == S0


def curve_word(c: Curve) -> tuple[int, ...]:
    """A cyclically reduced loop freely homotopic to the curve."""
    return _curve_word(c.conjugator, c.base)


@lru_cache(maxsize=8192)
def _curve_word(conj: McgWord, base: int) -> tuple[int, ...]:
    phi = evaluate(conj)
    return cyclic_reduce(phi(BASE_WORDS[base]))[1]


@lru_cache(maxsize=8192)
def _twist(conj: McgWord, base: int, sign: int) -> Images:
    if not conj:
        return GENERATOR_IMAGES[sign * base]
    return evaluate(conj + (sign * base,) + invert_word(conj)).images


def twist_of(c: Curve) -> MappingClass:
    """The right-handed twist along c, i.e. phi o T_base o phi^-1."""
    return MappingClass(
        _twist(c.conjugator, c.base, 1), c.conjugator + (c.base,) + invert_word(c.conjugator)
    )


def inverse_twist_of(c: Curve) -> MappingClass:
    return MappingClass(
        _twist(c.conjugator, c.base, -1), c.conjugator + (-c.base,) + invert_word(c.conjugator)
    )


def curves_isotopic(x: Curve, y: Curve) -> bool:
    """Freely homotopic simple closed curves are isotopic, and twists along
    distinct isotopy classes differ, so comparing loops is enough."""
    return same_curve(curve_word(x), curve_word(y))


def curve_fixed_by(m: MappingClass, c: Curve) -> bool:
    w = curve_word(c)
    return same_curve(m(w), w)


# --- the relation suite -------------------------------------------------------------


def relation_suite() -> list[tuple[str, bool]]:
    """Defining relations of Mod(S_2) in the chain twists, checked on pi_1."""
    out = []
    for i in range(1, 5):
        lhs = evaluate((i, i + 1, i))
        rhs = evaluate((i + 1, i, i + 1))
        out.append((f"braid {i}{i + 1}{i} = {i + 1}{i}{i + 1}", mapping_classes_equal(lhs, rhs)))
    for i in range(1, 6):
        for j in range(i + 2, 6):
            out.append(
                (f"commute {i}{j} = {j}{i}", mapping_classes_equal(evaluate((i, j)), evaluate((j, i))))
            )
    out.append(("(12345)^6 = 1", is_isotopically_trivial(evaluate((1, 2, 3, 4, 5) * 6)) is not None))
    out.append(
        (
            "(1234554321)^2 = 1",
            is_isotopically_trivial(evaluate((1, 2, 3, 4, 5, 5, 4, 3, 2, 1) * 2)) is not None,
        )
    )
    out.append(("(12)^6 = s", mapping_classes_equal(evaluate((1, 2) * 6), evaluate((6,)))))
    return out
