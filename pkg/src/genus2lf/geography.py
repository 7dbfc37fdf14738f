"""Invariants of genus-2 Lefschetz fibrations from their type, geography
regions, a construction planner, and pi_1 presentations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .factorization import Factorization, FibrationType
from .mcg import curve_word
from .words import NAMES, RELATOR, cyclic_reduce, free_reduce, invert


class GeographyError(ValueError):
    pass


def _type(t) -> FibrationType:
    return t if isinstance(t, FibrationType) else FibrationType(*t)


def admissible(t) -> bool:
    t = _type(t)
    return (t.n + 2 * t.s) % 10 == 0


@dataclass(frozen=True)
class InvariantSet:
    e: int
    sigma: int
    chi_h: int
    c1sq: int
    m: int
    betti1: int | None = None

    def __post_init__(self) -> None:
        assert self.c1sq == 2 * self.e + 3 * self.sigma
        assert 4 * self.chi_h == self.e + self.sigma

    @property
    def point(self) -> tuple[int, int]:
        return (self.chi_h, self.c1sq)


def invariants_from_type(t, betti1: int | None = None) -> InvariantSet:
    t = _type(t)
    if not admissible(t):
        raise GeographyError(f"type {t} is not admissible: n + 2s must be divisible by 10")
    n, s = t.n, t.s
    return InvariantSet(
        e=n + s - 4,
        sigma=-(3 * n + s) // 5,
        chi_h=(n + 2 * s) // 10 - 1,
        c1sq=(n + 7 * s) // 5 - 8,
        m=(n + 2 * s) // 10,
        betti1=betti1,
    )


def slope(t) -> Fraction:
    """(c1^2 + 3) / chi_h."""
    t = _type(t)
    den = t.n + 2 * t.s - 10
    if den == 0:
        raise GeographyError(f"slope undefined for type {t}: chi_h = 0")
    return 2 + Fraction(10 * t.s - 30, den)


# --- lines and regions -------------------------------------------------------------


@dataclass(frozen=True)
class Line:
    """y = a x + b."""

    a: Fraction
    b: int

    def __call__(self, x) -> Fraction:
        return self.a * x + self.b

    def contains(self, x: int, y: int) -> bool:
        return self(x) == y

    def __str__(self) -> str:
        a = str(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"y = {a}x {sign} {abs(self.b)}" if self.b else f"y = {a}x"


NOETHER = Line(Fraction(2), -6)
BK = Line(Fraction(5), -3)
FIVE_AND_HALF = Line(Fraction(11, 2), -3)
UPPER = Line(Fraction(6), -3)
UPPER_SIMPLY_CONNECTED = Line(Fraction(6), -4)


def s_line(s: int) -> Line:
    if s < 0:
        raise GeographyError("s must be non-negative")
    return Line(Fraction(2), -6 + s)


def bk_t_line(t: int) -> Line:
    if t < 0:
        raise GeographyError("t must be non-negative")
    return Line(Fraction(5), -3 + t)


VIOLATES_NOETHER = "violates-Noether"
VIOLATES_UPPER = "violates-upper"
BELOW_BK = "admissible-below-BK"
ON_BK = "on-BK"
BK_TO_55 = "strictly-between-BK-and-5.5"
BETWEEN_55_AND_6 = "between-5.5-and-6"
REGIONS = (VIOLATES_NOETHER, VIOLATES_UPPER, BELOW_BK, ON_BK, BK_TO_55, BETWEEN_55_AND_6)


@dataclass(frozen=True)
class Classification:
    region: str
    checks: tuple[tuple[str, bool], ...]

    def __str__(self) -> str:
        return self.region


def region_check(x: int, y: int, simply_connected: bool = False) -> Classification:
    """Place (chi_h, c1^2) = (x, y) relative to the geography lines.

    ``strictly-between-BK-and-5.5`` means 5x - 3 < y <= 5.5x - 3.
    """
    upper = UPPER_SIMPLY_CONNECTED if simply_connected else UPPER
    checks = (
        (f"y >= 2x - 6 ({2 * x - 6})", y >= NOETHER(x)),
        (f"y <= {upper.a}x {upper.b:+d} ({upper(x)})", y <= upper(x)),
        (f"y <= 5x - 3 ({BK(x)})", y <= BK(x)),
        (f"y <= 5.5x - 3 ({FIVE_AND_HALF(x)})", y <= FIVE_AND_HALF(x)),
    )
    if y < NOETHER(x):
        region = VIOLATES_NOETHER
    elif y > upper(x):
        region = VIOLATES_UPPER
    elif y < BK(x):
        region = BELOW_BK
    elif y == BK(x):
        region = ON_BK
    elif y <= FIVE_AND_HALF(x):
        region = BK_TO_55
    else:
        region = BETWEEN_55_AND_6
    return Classification(region, checks)


def region_table(xmax: int, simply_connected: bool = False) -> list[tuple[int, int, str]]:
    rows = []
    for x in range(1, xmax + 1):
        for y in range(min(0, 2 * x - 7), 6 * x - 1):
            rows.append((x, y, region_check(x, y, simply_connected).region))
    return rows


def region_tsv(rows) -> str:
    out = ["chi_h\tc1sq\tregion"]
    out += [f"{x}\t{y}\t{r}" for x, y, r in rows]
    return "\n".join(out) + "\n"


_COLORS = {
    VIOLATES_NOETHER: "#bbbbbb",
    VIOLATES_UPPER: "#bbbbbb",
    BELOW_BK: "#4477aa",
    ON_BK: "#228833",
    BK_TO_55: "#ee6677",
    BETWEEN_55_AND_6: "#ccbb44",
}


def region_svg(rows, scale: int = 12) -> str:
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = (x1 - x0 + 2) * scale * 4
    h = (y1 - y0 + 2) * scale
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h + 20 * len(_COLORS)}">',
    ]
    for x, y, r in rows:
        cx = (x - x0 + 1) * scale * 4
        cy = h - (y - y0 + 1) * scale
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="{scale // 3}" fill="{_COLORS[r]}"><title>({x},{y}) {r}</title></circle>')
    for k, (name, col) in enumerate(_COLORS.items()):
        yy = h + 15 + 20 * k
        parts.append(f'<circle cx="10" cy="{yy - 4}" r="5" fill="{col}"/>')
        parts.append(f'<text x="20" y="{yy}" font-size="12">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --- recipes -----------------------------------------------------------------------


@dataclass(frozen=True)
class Recipe:
    def predicted_type(self) -> FibrationType:
        raise NotImplementedError

    def predicted_point(self) -> tuple[int, int]:
        return invariants_from_type(self.predicted_type()).point

    def leaves(self) -> list["Recipe"]:
        return [self]


@dataclass(frozen=True)
class CatalogRef(Recipe):
    name: str
    type: FibrationType
    stub: bool = False

    def predicted_type(self) -> FibrationType:
        return self.type

    def render(self) -> str:
        return f"(catalog {self.name})"


@dataclass(frozen=True)
class FiberSum(Recipe):
    left: Recipe
    right: Recipe
    twist: str = "e"

    def predicted_type(self) -> FibrationType:
        return self.left.predicted_type() + self.right.predicted_type()

    def render(self) -> str:
        tw = f' twist "{self.twist}"' if self.twist != "e" else ""
        return f"(fibersum {self.left.render()} {self.right.render()}{tw})"

    def leaves(self) -> list[Recipe]:
        return self.left.leaves() + self.right.leaves()


@dataclass(frozen=True)
class LanternStep(Recipe):
    child: Recipe

    def predicted_type(self) -> FibrationType:
        t = self.child.predicted_type()
        return FibrationType(t.n - 2, t.s + 1)

    def render(self) -> str:
        return f"(lantern {self.child.render()})"

    def leaves(self) -> list[Recipe]:
        return self.child.leaves()


@dataclass(frozen=True)
class ChainStep(Recipe):
    child: Recipe

    def predicted_type(self) -> FibrationType:
        t = self.child.predicted_type()
        return FibrationType(t.n - 12, t.s + 1)

    def render(self) -> str:
        return f"(chain {self.child.render()})"

    def leaves(self) -> list[Recipe]:
        return self.child.leaves()


@dataclass(frozen=True)
class BuildX(Recipe):
    t: int

    def predicted_type(self) -> FibrationType:
        return FibrationType(4 + 6 * self.t, 3 + 7 * self.t)

    def render(self) -> str:
        return f"(buildX {self.t})"


@dataclass(frozen=True)
class BuildM(Recipe):
    t: int

    def predicted_type(self) -> FibrationType:
        return FibrationType(4 + 24 * self.t, 3 + 38 * self.t)

    def render(self) -> str:
        return f"(buildM {self.t})"


CHAIN10 = CatalogRef("chain10", FibrationType(20, 0))
CHAIN6 = CatalogRef("chain6", FibrationType(30, 0))
W43 = CatalogRef("W", FibrationType(4, 3))
MATSUMOTO = CatalogRef("matsumoto", FibrationType(6, 2))


def _stub(name: str, n: int, s: int) -> CatalogRef:
    return CatalogRef(name, FibrationType(n, s), stub=True)


# (first, second) seeds on each s-Noether line for s = 0..6; the second has
# ten more non-separating cycles
SEEDS: dict[int, tuple[Recipe, Recipe]] = {
    0: (FiberSum(CHAIN10, CHAIN10), FiberSum(CHAIN10, CHAIN6)),
    1: (FiberSum(_stub("BK_W4", 18, 1), CHAIN10), FiberSum(_stub("BK_W4", 18, 1), CHAIN6)),
    2: (FiberSum(MATSUMOTO, CHAIN10), FiberSum(MATSUMOTO, CHAIN6)),
    3: (FiberSum(W43, CHAIN10), FiberSum(W43, CHAIN6)),
    4: (_stub("BK_12_4", 12, 4), _stub("BK_22_4", 22, 4)),
    5: (_stub("BK_10_5", 10, 5), _stub("BK_20_5", 20, 5)),
    6: (_stub("BK_8_6", 8, 6), _stub("BK_18_6", 18, 6)),
}


def _sum_all(parts: Sequence[Recipe]) -> Recipe:
    out = parts[0]
    for p in parts[1:]:
        out = FiberSum(out, p)
    return out


class OutsideRegion(GeographyError):
    def __init__(self, bound: str, message: str) -> None:
        super().__init__(message)
        self.bound = bound


def plan(x: int, y: int) -> Recipe:
    """A construction for (chi_h, c1^2) = (x, y) with y >= 0 and
    2x - 6 <= y <= 5.5x - 3."""
    if y < 0:
        raise OutsideRegion("nonnegative", f"({x},{y}): the constructions only cover c1^2 >= 0")
    if y < NOETHER(x):
        raise OutsideRegion("noether", f"({x},{y}) violates the Noether inequality y >= 2x - 6")
    if y > UPPER(x):
        raise OutsideRegion("upper", f"({x},{y}) violates the upper bound y <= 6x - 3")
    if y > FIVE_AND_HALF(x):
        raise OutsideRegion(
            "constructive", f"({x},{y}) lies above y = 5.5x - 3, beyond the constructions"
        )
    if y > BK(x):
        t = y - 5 * x + 3
        k = x - 2 * t
        return _sum_all([BuildX(t)] + [W43] * k)
    s = y - 2 * x + 6
    n = 10 * (x + 1) - 2 * s
    j = max(0, ceil((s - 6) / 3))
    s0, n0 = s - 3 * j, n - 4 * j
    first, second = SEEDS[s0]
    e = (n0 - first.predicted_type().n) // 10
    if e < 0 or (n0 - first.predicted_type().n) % 10:
        raise GeographyError(f"no seed reaches type ({n0},{s0})")
    seed, pad = (first, e // 2) if e % 2 == 0 else (second, (e - 1) // 2)
    return _sum_all([seed] + [CHAIN10] * pad + [W43] * j)


def describe(r: Recipe) -> str:
    """Compact product form, e.g. ``(1234554321)^4`` or ``X(2) W W``."""
    words = {"chain10": "(1234554321)^2", "chain6": "(12345)^6"}
    parts: list[str] = []
    for leaf in r.leaves():
        if isinstance(leaf, CatalogRef):
            parts.append(words.get(leaf.name, leaf.name))
        elif isinstance(leaf, BuildX):
            parts.append(f"X({leaf.t})")
        elif isinstance(leaf, BuildM):
            parts.append(f"M({leaf.t})")
    # merge runs of the chain word
    out: list[str] = []
    k = 0
    for p in parts + [None]:  # type: ignore[list-item]
        if p == "(1234554321)^2":
            k += 2
            continue
        if k:
            out.append(f"(1234554321)^{k}")
            k = 0
        if p is not None:
            out.append(p)
    return " ".join(out)


class StubLeaf(RuntimeError):
    pass


def materialize(r: Recipe) -> Factorization:
    """Build the factorization a recipe describes; stub leaves raise StubLeaf."""
    from . import catalog
    from .factorization import fiber_sum
    from .mcg import parse_mcg_word

    stubs = [leaf.name for leaf in r.leaves() if isinstance(leaf, CatalogRef) and leaf.stub]
    if stubs:
        raise StubLeaf(f"recipe uses stub leaves without published words: {', '.join(stubs)}")
    if isinstance(r, CatalogRef):
        f = catalog.factorization(r.name)
        return Factorization(f.tokens, f.ledger, False, r.name)
    if isinstance(r, FiberSum):
        return fiber_sum(materialize(r.left), materialize(r.right), parse_mcg_word(r.twist))
    if isinstance(r, BuildX):
        return catalog.build_Xt(r.t)
    if isinstance(r, BuildM):
        return catalog.build_Mt(r.t)
    # lantern and chain nodes carry no positions; apply those with rewrite moves
    raise GeographyError(f"cannot materialize {type(r).__name__} nodes directly")


# --- fundamental group -----------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    generators: tuple[int, ...]
    relators: tuple[tuple[int, ...], ...]

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def render(self) -> str:
        gens = ", ".join(NAMES.get(g, f"x{g}") for g in self.generators)
        rels = ", ".join(_render(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def _render(w) -> str:
    if not w:
        return "e"
    return " ".join(NAMES.get(abs(x), f"x{abs(x)}") + ("'" if x < 0 else "") for x in w)


def pi1_presentation(f: Factorization) -> Presentation:
    """Surface relator plus one loop per vanishing cycle."""
    rels = [RELATOR] + [curve_word(c) for c in f.curves]
    return Presentation((1, 2, 3, 4), tuple(rels))


@dataclass
class TietzeResult:
    presentation: Presentation
    moves: int
    exhausted: bool


def _cyc(w) -> tuple[int, ...]:
    return cyclic_reduce(free_reduce(w))[1]


def _canon(w) -> tuple[int, ...]:
    """Shortlex-least rotation of w or w^-1 (cyclic words up to inversion)."""
    if not w:
        return ()
    best = None
    for v in (w, invert(w)):
        for i in range(len(v)):
            r = v[i:] + v[:i]
            if best is None or r < best:
                best = r
    return best  # type: ignore[return-value]


def _key(w) -> tuple[int, tuple[int, ...]]:
    return (len(w), _canon(w))


def _substitute(w, g: int, val) -> tuple[int, ...]:
    inv = invert(val)
    out: list[int] = []
    for x in w:
        if x == g:
            out.extend(val)
        elif x == -g:
            out.extend(inv)
        else:
            out.append(x)
    return _cyc(out)


def _eliminate(gens, rels):
    """Drop a generator that occurs exactly once in some relator."""
    best = None
    for i, r in enumerate(rels):
        for g in gens:
            if sum(1 for x in r if abs(x) == g) == 1:
                cand = (len(r), i, g)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    _, i, g = best
    r = rels[i]
    k = next(j for j, x in enumerate(r) if abs(x) == g)
    rot = r[k:] + r[:k]  # g^e rest = 1
    val = invert(rot[1:]) if rot[0] == g else rot[1:]
    rest = [_substitute(s, g, val) for j, s in enumerate(rels) if j != i]
    return tuple(x for x in gens if x != g), rest


def _rewrite_once(rels, max_rule: int):
    """One shortlex-decreasing replacement of a relator subword by a shorter
    (or equal length, smaller) equivalent, using another relator as a rule."""
    rules = sorted({_canon(r) for r in rels if 0 < len(r) <= max_rule}, key=lambda r: (len(r), r))
    for ti, target in sorted(enumerate(rels), key=lambda p: (-len(p[1]), p[0])):
        n = len(target)
        if n == 0:
            continue
        old_key = _key(target)
        for rule in rules:
            if rule == _canon(target):
                continue
            L = len(rule)
            for rv in (rule, invert(rule)):
                rots = [rv[i:] + rv[:i] for i in range(L)]
                for k in range(L // 2 + (1 if L % 2 else 0), L + 1):
                    if k > n:
                        break
                    for rot in rots:
                        piece = rot[:k]
                        repl = invert(rot[k:])
                        if len(repl) > k:
                            continue
                        tt = target + target[: k - 1]
                        idx = _find(tt, piece)
                        while idx is not None and idx < n:
                            cand = _cyc(target[idx:] + target[:idx])
                            cand = _cyc(repl + cand[k:]) if cand[:k] == piece else None
                            if cand is not None and _key(cand) < old_key:
                                new = list(rels)
                                new[ti] = cand
                                return new
                            idx = _find(tt, piece, idx + 1)
    return None


def _find(hay, needle, start: int = 0):
    k = len(needle)
    for i in range(start, len(hay) - k + 1):
        if hay[i : i + k] == needle:
            return i
    return None


def _tidy(rels):
    seen = set()
    out = []
    for r in rels:
        r = _cyc(r)
        c = _canon(r)
        if not r or c in seen:
            continue
        seen.add(c)
        out.append(r)
    out.sort(key=lambda r: (len(r), _canon(r)))
    return out


def tietze_simplify(p: Presentation, budget: int = 10_000, max_rule: int = 8) -> TietzeResult:
    """Greedy Tietze simplification.

    Moves, in order of preference: eliminate a generator that occurs once in
    some relator; otherwise rewrite a relator with another short relator so
    that it gets shortlex smaller.  Each move costs one unit of budget.
    Failure to reach the trivial presentation proves nothing.
    """
    gens = tuple(p.generators)
    rels = _tidy(p.relators)
    moves = 0
    while moves < budget:
        if any(len(r) == 0 for r in rels):
            rels = _tidy(rels)
        step = _eliminate(gens, rels)
        if step is not None:
            gens, rels = step
            rels = _tidy(rels)
            moves += 1
            continue
        new = _rewrite_once(rels, max_rule)
        if new is None:
            return TietzeResult(Presentation(gens, tuple(rels)), moves, False)
        rels = _tidy(new)
        moves += 1
    return TietzeResult(Presentation(gens, tuple(rels)), moves, True)
