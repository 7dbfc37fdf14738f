"""Words in the genus-2 surface group.

    pi_1(S_2) = < a1, b1, a2, b2 | a1 b1 a1' b1' a2 b2 a2' b2' >

Letters are stored as nonzero ints: ``1 = a1, 2 = b1, 3 = a2, 4 = b2`` and the
negative of a letter is its inverse.  The relator has length 8 and every piece
has length 1, so Dehn's algorithm (replace more than half of a cyclic relator
by the inverse of the rest) solves the word problem.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

A1, B1, A2, B2 = 1, 2, 3, 4
GENERATORS = (A1, B1, A2, B2)
NAMES = {A1: "a1", B1: "b1", A2: "a2", B2: "b2"}
_BY_NAME = {v: k for k, v in NAMES.items()}

RELATOR = (A1, B1, -A1, -B1, A2, B2, -A2, -B2)
RELATOR_INV = tuple(-x for x in reversed(RELATOR))

#: Default hard cap on word length; composing many twists with a bad script
#: can blow up, and we would rather fail loudly than thrash.
DEFAULT_MAX_LENGTH = 1 << 20


class WordLengthError(RuntimeError):
    """Raised when a word grows past the configured length cap."""


class RelatorTable:
    """The 16 cyclic rotations of R and R^-1, indexed for subword search.

    Because pieces have length 1, every letter has exactly one successor in
    R and one in R^-1, so a subword of a rotation is determined by its first
    letter and its orientation.
    """

    def __init__(self) -> None:
        self.rotations = tuple(
            r[i:] + r[:i] for r in (RELATOR, RELATOR_INV) for i in range(8)
        )
        self._pos = []
        self._next = []
        for cyc in (RELATOR, RELATOR_INV):
            pos = {x: i for i, x in enumerate(cyc)}
            self._pos.append(pos)
            self._next.append({x: cyc[(i + 1) % 8] for x, i in pos.items()})
        self._cyc = (RELATOR, RELATOR_INV)

    def successor(self, orient: int, x: int) -> int:
        return self._next[orient][x]

    def complement_inverse(self, orient: int, first: int, length: int) -> tuple[int, ...]:
        """Inverse of the complement of the piece of `length` starting at `first`.

        If ``p`` is that piece and ``q`` the rest of the rotation, ``p q = 1`` so
        ``p = q^-1``.
        """
        cyc = self._cyc[orient]
        i = self._pos[orient][first]
        rest = [cyc[(i + length + j) % 8] for j in range(8 - length)]
        return tuple(-x for x in reversed(rest))

    def find_piece(self, w: Sequence[int], length: int) -> list[tuple[int, int]]:
        """All (start, orient) where w[start:start+length] is a relator piece."""
        hits = []
        n = len(w)
        for orient in (0, 1):
            nxt = self._next[orient]
            run = 0
            for i in range(n):
                if run and w[i] == nxt[w[i - 1]]:
                    run += 1
                else:
                    run = 1
                if run >= length:
                    hits.append((i - length + 1, orient))
        return hits


TABLE = RelatorTable()
_NEXT_R = TABLE._next[0]
_NEXT_RI = TABLE._next[1]


def free_reduce(w: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(w: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(w))


def dehn_reduce(w: Iterable[int], max_length: int = DEFAULT_MAX_LENGTH) -> tuple[int, ...]:
    """Free and Dehn reduction in one left-to-right stack pass.

    A stack holds a word with no cancellation and no relator piece of length
    >= 5; for each orientation we track the length of the relator run ending
    at each stack position.  When a run reaches 5 the piece is popped and the
    inverse of its length-3 complement is pushed back through the same
    routine.  Each replacement shortens the total by 2, so this terminates,
    and the output is empty iff the input is trivial in the group.
    """
    stack: list[int] = []
    run_r: list[int] = []
    run_ri: list[int] = []
    pending: deque[int] = deque()
    src = iter(w)
    complement = TABLE.complement_inverse
    while True:
        if pending:
            x = pending.popleft()
        else:
            x = next(src, 0)
            if x == 0:
                break
        if stack and stack[-1] == -x:
            stack.pop()
            run_r.pop()
            run_ri.pop()
            continue
        if stack:
            top = stack[-1]
            rr = run_r[-1] + 1 if _NEXT_R[top] == x else 1
            ri = run_ri[-1] + 1 if _NEXT_RI[top] == x else 1
        else:
            rr = ri = 1
        if rr >= 5 or ri >= 5:
            orient = 0 if rr >= 5 else 1
            first = stack[-4]
            del stack[-4:], run_r[-4:], run_ri[-4:]
            pending.extendleft(reversed(complement(orient, first, 5)))
            continue
        stack.append(x)
        run_r.append(rr)
        run_ri.append(ri)
        if len(stack) > max_length:
            raise WordLengthError(
                f"word length exceeded cap of {max_length} letters during reduction"
            )
    return tuple(stack)


def _run(stack: list[int], x: int, nxt: dict) -> int:
    """Length of the relator run that pushing x would end (capped at 5)."""
    r = 1
    prev = x
    k = len(stack)
    while r < 5 and k and nxt[stack[k - 1]] == prev:
        prev = stack[k - 1]
        k -= 1
        r += 1
    return r


def concat_reduce(parts: Iterable[Sequence[int]], max_length: int = DEFAULT_MAX_LENGTH) -> tuple[int, ...]:
    """Dehn-reduced product of Dehn-reduced words.

    Same stack discipline as dehn_reduce, but a part is only fed letter by
    letter until four of its letters have gone through untouched: from then
    on a length-5 relator piece would have to sit inside the part itself, so
    the remainder is appended in one go.  Work is proportional to the
    cancellation at each junction rather than to the total length.
    """
    stack: list[int] = []
    complement = TABLE.complement_inverse
    for v in parts:
        if not stack:
            stack.extend(v)
            continue
        pending: deque[int] = deque()
        i, n, clean = 0, len(v), 0
        while True:
            if pending:
                x = pending.popleft()
                own = False
            elif i < n:
                if clean >= 4:
                    stack.extend(v[i:])
                    break
                x = v[i]
                i += 1
                own = True
            else:
                break
            if stack and stack[-1] == -x:
                stack.pop()
                clean = 0
                continue
            if _run(stack, x, _NEXT_R) >= 5:
                orient = 0
            elif _run(stack, x, _NEXT_RI) >= 5:
                orient = 1
            else:
                stack.append(x)
                clean = clean + 1 if own else 0
                continue
            first = stack[-4]
            del stack[-4:]
            pending.extendleft(reversed(complement(orient, first, 5)))
            clean = 0
        if len(stack) > max_length:
            raise WordLengthError(f"word length exceeded cap of {max_length} letters during reduction")
    return tuple(stack)


def is_dehn_reduced(w: Sequence[int]) -> bool:
    if free_reduce(w) != tuple(w):
        return False
    return not TABLE.find_piece(w, 5)


def _cyclic_pieces(w: Sequence[int], length: int) -> list[tuple[int, int]]:
    n = len(w)
    if n < length:
        return []
    ext = list(w) + list(w[: length - 1])
    return [(s, o) for s, o in TABLE.find_piece(ext, length) if s < n]


def cyclic_reduce(w: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Return (c, u) with u = c w c^-1 cyclically free- and Dehn-reduced.

    "Cyclically Dehn-reduced" means no cyclic subword of length >= 5 is a
    relator piece, and the word is cyclically freely reduced.
    """
    u = dehn_reduce(w)
    conj: list[int] = []  # c as a list; u = c w c^-1
    while True:
        # strip x ... x^-1
        i, n = 0, len(u)
        while i < n - 1 - i and u[i] == -u[n - 1 - i]:
            i += 1
        if i:
            conj = list(invert(u[:i])) + conj
            u = u[i : n - i]
        hits = _cyclic_pieces(u, 5) if len(u) >= 5 else []
        if not hits:
            return free_reduce(conj), u
        s = hits[0][0]
        # rotate u = x y -> y x = x^-1 (x y) x
        conj = list(invert(u[:s])) + conj
        u = dehn_reduce(u[s:] + u[:s])


_REGION_CACHE: dict = {}


def region_moves(p: tuple[int, ...], e: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """All (e2, q) with p e2 q^-1 e^-1 a rotation of R or R^-1.

    Here p is an outer arc (2..4 letters), e the incoming side edge (0 for
    none) and e2 the outgoing one.  Since p has at least two letters, the
    relator cycle is fixed by p, so the answer is tiny and cached.
    """
    key = (p, e)
    hit = _REGION_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    k = len(p)
    for nxt in (_NEXT_R, _NEXT_RI):
        if any(nxt[p[t]] != p[t + 1] for t in range(k - 1)):
            continue
        cont = []
        x = p[-1]
        for _ in range(8 - k):
            x = nxt[x]
            cont.append(x)
        if e:
            if cont[-1] != -e:
                continue
            mid = cont[:-1]
        else:
            mid = cont
        for lead in (0, 1):
            qi = mid[lead:]
            if 2 <= len(qi) <= 4:
                e2 = mid[0] if lead else 0
                out.append((e2, invert(qi)))
    hit = _REGION_CACHE[key] = tuple(out)
    return hit


def _one_layer(u: Sequence[int], v: Sequence[int], s: int, j0: int, e0: int) -> bool:
    """Can u (from offset s) and v (from offset j0) bound a one-layer annulus?

    States are (letters of u used, letters of v used, current side edge).
    A step either matches a common letter (only with no side edge) or lays
    down one region whose outer arc is 2..4 letters of u and inner arc 2..4
    letters of v.
    """
    n, m = len(u), len(v)
    start = (0, 0, e0)
    stack = [start]
    seen = {start}
    while stack:
        i, j, e = stack.pop()
        if i == n and j == m:
            if e == e0:
                return True
            continue
        if e == 0 and i < n and j < m and u[(s + i) % n] == v[(j0 + j) % m]:
            st = (i + 1, j + 1, 0)
            if st not in seen:
                seen.add(st)
                stack.append(st)
        for k in range(2, 5):
            if i + k > n:
                break
            p = tuple(u[(s + i + t) % n] for t in range(k))
            for e2, q in region_moves(p, e):
                l = len(q)
                if j + l > m:
                    continue
                if all(v[(j0 + j + t) % m] == q[t] for t in range(l)):
                    st = (i + k, j + l, e2)
                    if st not in seen:
                        seen.add(st)
                        stack.append(st)
    return False


def _occurrences(v: Sequence[int]) -> dict:
    m = len(v)
    occ: dict = {}
    for j in range(m):
        for l in range(1, min(4, m) + 1):
            occ.setdefault(tuple(v[(j + t) % m] for t in range(l)), []).append(j)
    return occ


_SIDE_EDGES = (0, 1, -1, 2, -2, 3, -3, 4, -4)


def conjugacy_witness(u: Sequence[int], v: Sequence[int]) -> tuple[int, ...] | None:
    """Some w with w u w^-1 = v, or None when u and v are not conjugate.

    Both words are cyclically Dehn-reduced first.  For this presentation a
    reduced annular diagram between two such words has a single layer of
    regions, each meeting both boundaries in at most 4 letters, with side
    edges of length <= 1.  Some point among the first four of u is a region
    junction, so we try those offsets, every compatible offset of v, and
    every side edge, walking the layer with a small DFS.
    """
    cu, uc = cyclic_reduce(u)
    cv, vc = cyclic_reduce(v)
    if min(len(uc), len(vc)) <= 1:
        # a region would need >= 5 letters on the longer side
        return dehn_reduce(invert(cv) + cu) if uc == vc else None
    n = len(uc)
    occ = _occurrences(vc)
    for s in range(min(4, n)):
        starts = [(j, 0) for j in occ.get((uc[s],), ())]
        for e0 in _SIDE_EDGES:
            for k in range(2, min(4, n) + 1):
                p = tuple(uc[(s + t) % n] for t in range(k))
                for _, q in region_moves(p, e0):
                    starts.extend((j, e0) for j in occ.get(q, ()))
        for j0, e0 in dict.fromkeys(starts):
            if _one_layer(uc, vc, s, j0, e0):
                # uc[s:]+uc[:s] = x (vc[j0:]+vc[:j0]) x^-1 with x = e0
                x = (e0,) if e0 else ()
                return dehn_reduce(
                    invert(cv) + tuple(vc[:j0]) + invert(x) + invert(uc[:s]) + cu
                )
    return None


def are_conjugate(u: Sequence[int], v: Sequence[int]) -> bool:
    return conjugacy_witness(u, v) is not None


def same_curve(u: Sequence[int], v: Sequence[int]) -> bool:
    """Free homotopy of unoriented loops: u conjugate to v or to v^-1."""
    return are_conjugate(u, v) or are_conjugate(u, invert(v))


def words_equal(u: Sequence[int], v: Sequence[int]) -> bool:
    return not dehn_reduce(tuple(u) + invert(v))


def abelianize(w: Iterable[int]) -> tuple[int, int, int, int]:
    """Image in H_1 = Z^4, basis (a1, b1, a2, b2)."""
    out = [0, 0, 0, 0]
    for x in w:
        out[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(out)  # type: ignore[return-value]


def parse_letters(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    out = []
    for tok in text.split():
        inv = tok.endswith("'")
        name = tok[:-1] if inv else tok
        if name not in _BY_NAME:
            raise ValueError(f"unknown surface generator {tok!r}")
        g = _BY_NAME[name]
        out.append(-g if inv else g)
    return tuple(out)


def render_letters(w: Sequence[int]) -> str:
    if not w:
        return "e"
    return " ".join(NAMES[abs(x)] + ("'" if x < 0 else "") for x in w)


@dataclass(frozen=True)
class SurfaceWord:
    """A Dehn-reduced word; construction always reduces."""

    letters: tuple[int, ...]

    def __init__(self, letters: Iterable[int] = ()) -> None:
        object.__setattr__(self, "letters", dehn_reduce(letters))

    @classmethod
    def parse(cls, text: str) -> "SurfaceWord":
        return cls(parse_letters(text))

    def __str__(self) -> str:
        return render_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "SurfaceWord") -> "SurfaceWord":
        return SurfaceWord(self.letters + other.letters)

    def inverse(self) -> "SurfaceWord":
        return SurfaceWord(invert(self.letters))

    def is_identity(self) -> bool:
        return not self.letters

    def equals(self, other: "SurfaceWord") -> bool:
        return words_equal(self.letters, other.letters)

    def conjugacy_witness(self, other: "SurfaceWord") -> "SurfaceWord | None":
        w = conjugacy_witness(self.letters, other.letters)
        return None if w is None else SurfaceWord(w)
