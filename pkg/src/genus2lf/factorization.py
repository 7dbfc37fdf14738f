"""Positive factorizations: verification, rewriting moves and substitutions."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterable, Sequence

from .homology import AbelianGroupShape, class_of_curve, h1_of_total_space, is_separating
from .mcg import (
    BASE_NAMES,
    BASES,
    Curve,
    McgWord,
    curves_isotopic,
    evaluate,
    invert_word,
    is_isotopically_trivial,
    mapping_classes_equal,
    render_mcg_word,
)
from .words import DEFAULT_MAX_LENGTH, WordLengthError, free_reduce

MINIMAL_BY_FIBER_SUM = "minimal_by_fiber_sum"
MINIMAL_BY_BLOWDOWN = "minimal_by_blowdown_of_minimal"
H1_TRIVIAL = "h1_trivial"
MINIMALITY_FLAGS = frozenset({MINIMAL_BY_FIBER_SUM, MINIMAL_BY_BLOWDOWN})


class FactorizationError(ValueError):
    pass


def twist_word(c: Curve) -> McgWord:
    """McgWord of the right-handed twist along c."""
    return c.conjugator + (c.base,) + invert_word(c.conjugator)


@dataclass(frozen=True)
class TwistToken:
    curve: Curve
    label: str | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return self.label or str(self.curve)


@dataclass(frozen=True)
class ProvenanceLedger:
    steps: tuple[str, ...] = ()
    flags: frozenset[str] = frozenset()

    def log(self, step: str) -> "ProvenanceLedger":
        return ProvenanceLedger(self.steps + (step,), self.flags)

    def flag(self, name: str) -> "ProvenanceLedger":
        return ProvenanceLedger(self.steps, self.flags | {name})

    def drop(self, names: Iterable[str]) -> "ProvenanceLedger":
        return ProvenanceLedger(self.steps, self.flags - frozenset(names))

    @property
    def minimal(self) -> bool:
        return bool(self.flags & MINIMALITY_FLAGS)


@dataclass(frozen=True)
class FibrationType:
    n: int
    s: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.s < 0:
            raise ValueError("type entries must be non-negative")

    def __add__(self, other: "FibrationType") -> "FibrationType":
        return FibrationType(self.n + other.n, self.s + other.s)

    def __iter__(self):
        return iter((self.n, self.s))

    def __str__(self) -> str:
        return f"({self.n},{self.s})"


@dataclass(frozen=True)
class Factorization:
    """Tokens written left to right; the rightmost twist acts first."""

    tokens: tuple[TwistToken, ...]
    ledger: ProvenanceLedger = ProvenanceLedger()
    verified: bool = field(default=False, compare=False)
    name: str | None = field(default=None, compare=False)

    @classmethod
    def of(cls, curves: Iterable[Curve | TwistToken], name: str | None = None) -> "Factorization":
        toks = tuple(c if isinstance(c, TwistToken) else TwistToken(c) for c in curves)
        return cls(toks, name=name)

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def curves(self) -> tuple[Curve, ...]:
        return tuple(t.curve for t in self.tokens)

    def mcg_word(self) -> McgWord:
        out: list[int] = []
        for t in self.tokens:
            out.extend(twist_word(t.curve))
        return free_reduce(out)

    def _derive(self, tokens, step: str, keep_verified: bool = True, ledger=None) -> "Factorization":
        led = (ledger or self.ledger).log(step)
        return Factorization(tuple(tokens), led, self.verified and keep_verified, self.name)

    def render(self) -> str:
        return " ".join(str(t) for t in self.tokens)


# --- verification ----------------------------------------------------------------------


@dataclass
class VerificationReport:
    ok: bool
    type: FibrationType
    witness: tuple[int, ...] | None = None
    mcg_word_length: int = 0
    diagnostic: str = ""

    def lines(self) -> list[tuple[str, str]]:
        out = [
            ("identity", "yes" if self.ok else "no"),
            ("type", str(self.type)),
            ("mcg_word_length", str(self.mcg_word_length)),
        ]
        if self.witness is not None:
            out.append(("witness_length", str(len(self.witness))))
        if self.diagnostic:
            out.append(("diagnostic", self.diagnostic))
        return out


def type_of(f: Factorization) -> FibrationType:
    s = sum(1 for c in f.curves if is_separating(c))
    return FibrationType(len(f) - s, s)


def verify_identity(f: Factorization, max_length: int = DEFAULT_MAX_LENGTH) -> tuple[Factorization, VerificationReport]:
    """Check that the composite of the twists is inner; returns f marked verified."""
    t = type_of(f)
    word = f.mcg_word()
    rep = VerificationReport(False, t, mcg_word_length=len(word))
    try:
        m = evaluate(word, max_length)
    except WordLengthError as exc:
        rep.diagnostic = f"word length cap exceeded: {exc}"
        return f, rep
    w = is_isotopically_trivial(m)
    if w is None:
        from .homology import homology_of_mcg_word, IDENTITY

        if homology_of_mcg_word(word) != IDENTITY:
            rep.diagnostic = "not inner: homology action is nontrivial"
        else:
            rep.diagnostic = "not inner: acts trivially on homology but is not conjugation"
        return f, rep
    if (t.n + 2 * t.s) % 10:
        rep.diagnostic = f"inner, but n + 2s = {t.n + 2 * t.s} is not divisible by 10"
        return f, rep
    rep.ok = True
    rep.witness = w
    return replace(f, verified=True), rep


def require_verified(f: Factorization, what: str) -> Factorization:
    if f.verified:
        return f
    g, rep = verify_identity(f)
    if not rep.ok:
        raise FactorizationError(f"{what}: factorization is not the identity ({rep.diagnostic})")
    return g


def h1(f: Factorization) -> AbelianGroupShape:
    return h1_of_total_space(class_of_curve(c) for c in f.curves)


def check_h1(f: Factorization) -> tuple[Factorization, AbelianGroupShape]:
    g = h1(f)
    if g.trivial and H1_TRIVIAL not in f.ledger.flags:
        f = replace(f, ledger=f.ledger.flag(H1_TRIVIAL).log("h1 computed: trivial"))
    return f, g


# --- rewriting moves ----------------------------------------------------------------------


def _join(a: str | None, b: str | None) -> str | None:
    return f"{a}_{b}" if a and b else None


def hurwitz_move(f: Factorization, i: int, direction: int = 1) -> Factorization:
    """direction +1: (x, y) -> (x(y), x); direction -1: (x, y) -> (y, y^-1(x))."""
    if not 0 <= i < len(f) - 1:
        raise FactorizationError(f"no adjacent pair at position {i}")
    x, y = f.tokens[i], f.tokens[i + 1]
    if direction == 1:
        new = (TwistToken(y.curve.conjugate(twist_word(x.curve)), _join(x.label, y.label)), x)
    elif direction == -1:
        inv = invert_word(twist_word(y.curve))
        new = (y, TwistToken(x.curve.conjugate(inv), _join(y.label and y.label + "i", x.label)))
    else:
        raise FactorizationError("direction must be +1 or -1")
    toks = f.tokens[:i] + new + f.tokens[i + 2 :]
    return f._derive(toks, f"hurwitz {i} {direction:+d}")


def move_token(f: Factorization, i: int, j: int) -> Factorization:
    """Carry token i to position j by Hurwitz moves."""
    while i < j:
        f = hurwitz_move(f, i, 1)
        i += 1
    while i > j:
        f = hurwitz_move(f, i - 1, -1)
        i -= 1
    return f


def cyclic_rotate(f: Factorization, k: int) -> Factorization:
    """Move the first k tokens to the end (global conjugation by their product)."""
    f = require_verified(f, "cyclic_rotate")
    if not f.tokens:
        return f
    k %= len(f)
    return f._derive(f.tokens[k:] + f.tokens[:k], f"rotate {k}")


def rotate_by_hurwitz(f: Factorization, k: int) -> Factorization:
    """Same effect on the monodromy as cyclic_rotate, but through Hurwitz moves,
    so the fibration itself is preserved; moved tokens' neighbours get conjugated."""
    f = require_verified(f, "rotate_by_hurwitz")
    for _ in range(k % max(len(f), 1)):
        f = move_token(f, 0, len(f) - 1)
    return f


def global_conjugate(f: Factorization, phi: Sequence[int]) -> Factorization:
    phi = tuple(phi)
    tag = render_mcg_word(phi).replace(" ", "").replace("'", "i")
    toks = tuple(
        TwistToken(t.curve.conjugate(phi), f"{tag}_{t.label}" if t.label and phi else t.label)
        for t in f.tokens
    )
    return f._derive(toks, f"conjugate {render_mcg_word(phi)}")


def fiber_sum(f1: Factorization, f2: Factorization, phi: Sequence[int] = ()) -> Factorization:
    """f1^phi f2."""
    if not f1.tokens or not f2.tokens:
        raise FactorizationError("fiber sum needs two nonempty factorizations")
    f1 = require_verified(f1, "fiber_sum")
    f2 = require_verified(f2, "fiber_sum")
    g = global_conjugate(f1, phi)
    led = ProvenanceLedger(
        f1.ledger.steps + f2.ledger.steps
        + (f"fibersum {f1.name or '?'} {f2.name or '?'} twist {render_mcg_word(tuple(phi))}",),
        frozenset({MINIMAL_BY_FIBER_SUM}),
    )
    return Factorization(g.tokens + f2.tokens, led, True)


def insert(f: Factorization, i: int, g: Factorization) -> Factorization:
    """Splice a verified factorization g in front of position i of f."""
    f = require_verified(f, "insert")
    g = require_verified(g, "insert")
    led = f.ledger.drop([H1_TRIVIAL]).log(f"insert {g.name or '?'} at {i}")
    return Factorization(f.tokens[:i] + g.tokens + f.tokens[i:], led, True, f.name)


def _simpler_candidates(c: Curve, depth: int = 2):
    conj = free_reduce(c.conjugator)
    # suffixes, shortest first, ending with the whole free-reduced word
    for k in range(len(conj), -1, -1):
        yield Curve(conj[k:], c.base)
    letters = (1, 2, 3, 4, 5, -1, -2, -3, -4, -5)
    for d in range(depth + 1):
        for w in product(letters, repeat=d):
            if free_reduce(w) != w:
                continue
            for b in BASES:
                yield Curve(w, b)


def simplify_token(f: Factorization, i: int, candidate: Curve | None = None, label: str | None = None) -> Factorization:
    """Replace token i's curve by a shorter isotopic representative, if one is found."""
    tok = f.tokens[i]
    c = tok.curve
    cands = [candidate] if candidate is not None else _simpler_candidates(c)
    for cand in cands:
        if len(cand.conjugator) > len(c.conjugator):
            continue
        if (cand.base == 6) != (c.base == 6):
            continue
        if cand == c:
            if candidate is None:
                continue
            break
        if curves_isotopic(cand, c):
            new = TwistToken(cand, label if label is not None else (tok.label if candidate is None else None))
            toks = f.tokens[:i] + (new,) + f.tokens[i + 1 :]
            return f._derive(toks, f"simplify {i} -> {cand}")
    return f._derive(f.tokens, f"simplify {i}: no simpler representative")


def _product_word(curves: Sequence[Curve]) -> McgWord:
    out: list[int] = []
    for c in curves:
        out.extend(twist_word(c))
    return free_reduce(out)


def relation_holds(lhs: Sequence[Curve], rhs: Sequence[Curve]) -> bool:
    """Do the twist products agree as mapping classes?"""
    return mapping_classes_equal(evaluate(_product_word(lhs)), evaluate(_product_word(rhs)))


def _consecutive(positions: Sequence[int], count: int, f: Factorization) -> int:
    ps = list(positions)
    if len(ps) != count or ps != list(range(ps[0], ps[0] + count)) or ps[0] < 0 or ps[-1] >= len(f):
        raise FactorizationError(f"need {count} adjacent positions, got {ps}")
    return ps[0]


def lantern_substitute(
    f: Factorization,
    positions: Sequence[int],
    replacement: Sequence[Curve | TwistToken],
) -> Factorization:
    i = _consecutive(positions, 4, f)
    rep = [r if isinstance(r, TwistToken) else TwistToken(r) for r in replacement]
    if len(rep) != 3:
        raise FactorizationError("a lantern replacement has three curves")
    old = [t.curve for t in f.tokens[i : i + 4]]
    new = [t.curve for t in rep]
    if not relation_holds(old, new):
        raise FactorizationError(
            "lantern relation fails: "
            f"{render_mcg_word(_product_word(old))} != {render_mcg_word(_product_word(new))}"
        )
    seps_in = sum(map(is_separating, old))
    seps_out = sum(map(is_separating, new))
    led = f.ledger.drop(MINIMALITY_FLAGS | {H1_TRIVIAL})
    if f.ledger.minimal:
        led = led.flag(MINIMAL_BY_BLOWDOWN)
    toks = f.tokens[:i] + tuple(rep) + f.tokens[i + 4 :]
    return f._derive(toks, f"lantern at {i}: separating {seps_in} -> {seps_out}", ledger=led)


def chain_substitute(f: Factorization, start: int, delta: Curve | TwistToken) -> Factorization:
    """Replace a block (T_a T_b)^6 by the twist along the separating curve delta."""
    i = _consecutive(range(start, start + 12), 12, f)
    tok = delta if isinstance(delta, TwistToken) else TwistToken(delta)
    block = [t.curve for t in f.tokens[i : i + 12]]
    a, b = block[0], block[1]
    for k in range(2, 12):
        ref = a if k % 2 == 0 else b
        if block[k] != ref and not curves_isotopic(block[k], ref):
            raise FactorizationError(f"token {i + k} does not continue the (ab)^6 pattern")
    if not is_separating(tok.curve):
        raise FactorizationError("2-chain replacement curve must be separating")
    if not relation_holds([a, b] * 6, [tok.curve]):
        raise FactorizationError("2-chain relation fails for this block")
    led = f.ledger.drop(MINIMALITY_FLAGS | {H1_TRIVIAL})
    toks = f.tokens[:i] + (tok,) + f.tokens[i + 12 :]
    return f._derive(toks, f"chain at {i}", ledger=led)


def find_token(f: Factorization, target: Curve) -> list[int]:
    return [i for i, t in enumerate(f.tokens) if t.curve == target or curves_isotopic(t.curve, target)]


# --- text format -------------------------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass
class Document:
    """A factorization file: named curves and named factorizations, in order.

    ``lines`` keeps comments and blank lines so that rendering is exact.
    """

    curves: dict[str, Curve] = field(default_factory=dict)
    facts: dict[str, tuple[str, ...]] = field(default_factory=dict)
    lines: list[tuple[str, str]] = field(default_factory=list)

    def add_curve(self, name: str, c: Curve) -> None:
        if not _IDENT.match(name):
            raise ValueError(f"bad curve name {name!r}")
        if name in self.curves:
            if self.curves[name] != c:
                raise ValueError(f"curve {name} redefined")
            return
        self.curves[name] = c
        self.lines.append(("curve", name))

    def add_fact(self, name: str, names: Sequence[str]) -> None:
        if not _IDENT.match(name):
            raise ValueError(f"bad factorization name {name!r}")
        for n in names:
            if n not in self.curves:
                raise ValueError(f"factorization {name} uses undefined curve {n}")
        self.facts[name] = tuple(names)
        self.lines.append(("fact", name))

    def factorization(self, name: str) -> Factorization:
        try:
            names = self.facts[name]
        except KeyError:
            raise KeyError(f"no factorization named {name!r}") from None
        return Factorization(tuple(TwistToken(self.curves[n], n) for n in names), name=name)

    def add_factorization(self, name: str, f: Factorization) -> None:
        """Register f's curves under fresh names where needed."""
        by_curve = {c: n for n, c in self.curves.items()}
        names = []
        for k, t in enumerate(f.tokens):
            n = by_curve.get(t.curve)
            if n is None:
                base = t.label if t.label and _IDENT.match(t.label) else f"{name}_{k}"
                n, j = base, 1
                while n in self.curves:
                    j += 1
                    n = f"{base}_{j}"
                self.add_curve(n, t.curve)
                by_curve[t.curve] = n
            names.append(n)
        self.add_fact(name, names)

    def render(self) -> str:
        out = []
        for kind, val in self.lines:
            if kind == "curve":
                c = self.curves[val]
                out.append(f"curve {val} = {render_mcg_word(c.conjugator)} : {BASE_NAMES[c.base]}")
            elif kind == "fact":
                out.append(f"fact {val} = " + " ".join(self.facts[val]))
            else:
                out.append(val)
        return "\n".join(out) + "\n"


def parse_document(text: str) -> Document:
    doc = Document()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            doc.lines.append(("raw", raw))
            continue
        kind, _, rest = line.partition(" ")
        name, eq, body = rest.partition("=")
        name = name.strip()
        try:
            if not eq:
                raise ValueError("missing '='")
            if kind == "curve":
                doc.add_curve(name, Curve.parse(body))
            elif kind == "fact":
                doc.add_fact(name, body.split())
            else:
                raise ValueError(f"unknown line kind {kind!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return doc


def load_document(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())
