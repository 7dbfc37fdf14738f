"""Integral first homology of the genus-2 surface and of fibration total spaces.

Classes are integer 4-tuples in the basis (a1, b1, a2, b2).  Matrices are
tuples of rows acting on column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .mcg import BASE_WORDS, BASES, Curve, McgWord
from .words import abelianize

Vec = tuple[int, int, int, int]
Matrix = tuple[Vec, Vec, Vec, Vec]

ZERO: Vec = (0, 0, 0, 0)
IDENTITY: Matrix = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
# <x, y> = x^T J y with <a_i, b_i> = +1
J: Matrix = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    return x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]


def matmul(m: Matrix, n: Matrix) -> Matrix:
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(4)) for j in range(4)) for i in range(4)
    )  # type: ignore[return-value]


def matvec(m: Matrix, x: Sequence[int]) -> Vec:
    return tuple(sum(m[i][k] * x[k] for k in range(4)) for i in range(4))  # type: ignore[return-value]


def transpose(m: Matrix) -> Matrix:
    return tuple(tuple(m[j][i] for j in range(4)) for i in range(4))  # type: ignore[return-value]


def is_symplectic(m: Matrix) -> bool:
    return matmul(matmul(transpose(m), J), m) == J


def transvection(c: Sequence[int]) -> Matrix:
    """x -> x + <x, c> c."""
    # column j is the image of e_j
    cols = []
    for j in range(4):
        e = [0, 0, 0, 0]
        e[j] = 1
        k = pairing(e, c)
        cols.append([e[i] + k * c[i] for i in range(4)])
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))  # type: ignore[return-value]


def twist_action(c: Sequence[int]) -> Matrix:
    """Homology action of the right-handed twist along a curve of class c.

    With the twist table in use, this is x -> x - <x, c> c, the inverse of
    ``transvection(c)``.  Sign of c does not matter.
    """
    cols = []
    for j in range(4):
        e = [0, 0, 0, 0]
        e[j] = 1
        k = pairing(e, c)
        cols.append([e[i] - k * c[i] for i in range(4)])
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))  # type: ignore[return-value]


BASE_CLASSES: dict[int, Vec] = {b: abelianize(BASE_WORDS[b]) for b in BASES}

_LETTER_MATRIX: dict[int, Matrix] = {}
for _b in BASES:
    _LETTER_MATRIX[_b] = twist_action(BASE_CLASSES[_b])
    _LETTER_MATRIX[-_b] = transvection(BASE_CLASSES[_b])


@lru_cache(maxsize=8192)
def _word_matrix(w: McgWord) -> Matrix:
    m = IDENTITY
    for x in w:
        m = matmul(m, _LETTER_MATRIX[x])
    return m


def homology_of_mcg_word(w: Iterable[int]) -> Matrix:
    """The action on H_1 of the mapping class of w (rightmost letter first)."""
    return _word_matrix(tuple(w))


def class_of_curve(x: Curve) -> Vec:
    return matvec(homology_of_mcg_word(x.conjugator), BASE_CLASSES[x.base])


def is_separating(x: Curve) -> bool:
    return class_of_curve(x) == ZERO


def normalize_sign(c: Sequence[int]) -> Vec:
    """Representative of +-c whose first nonzero entry is positive."""
    for v in c:
        if v:
            return tuple(c) if v > 0 else tuple(-u for u in c)  # type: ignore[return-value]
    return ZERO


def render_class(c: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in c) + ")"


# --- Smith normal form ---------------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroupShape:
    """Z^rank + Z/d1 + ... with d1 | d2 | ..."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0 or any(d <= 1 for d in self.torsion):
            raise ValueError("bad abelian group shape")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError("torsion divisors must form a divisibility chain")

    @property
    def trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def smith_diagonal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (fraction-free)."""
    a = [list(r) for r in rows if any(r)]
    diag: list[int] = []
    while a and any(any(r) for r in a):
        a = [r for r in a if any(r)]
        # pivot: smallest nonzero absolute entry
        _, pi, pj = min((abs(v), i, j) for i, r in enumerate(a) for j, v in enumerate(r) if v)
        a[0], a[pi] = a[pi], a[0]
        for r in a:
            r[0], r[pj] = r[pj], r[0]
        p = a[0][0]
        done = True
        for i in range(1, len(a)):
            q = a[i][0] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[0])]
            if a[i][0]:
                done = False
        for j in range(1, len(a[0])):
            q = a[0][j] // p
            if q:
                for r in a:
                    r[j] -= q * r[0]
            if a[0][j]:
                done = False
        if not done:
            continue
        # pivot isolated; enforce divisibility of the remaining block
        bad = next(((i, j) for i in range(1, len(a)) for j in range(1, len(a[0])) if a[i][j] % p), None)
        if bad is not None:
            i, _ = bad
            a[0] = [x + y for x, y in zip(a[0], a[i])]
            continue
        diag.append(abs(p))
        a = [r[1:] for r in a[1:]]
    return diag


def h1_of_total_space(classes: Iterable[Sequence[int]]) -> AbelianGroupShape:
    """Z^4 modulo the span of the given vanishing-cycle classes."""
    diag = smith_diagonal([tuple(c) for c in classes])
    return AbelianGroupShape(4 - len(diag), tuple(d for d in diag if d > 1))
