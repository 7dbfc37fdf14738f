"""Catalog of named curves and factorizations, and the build scripts on top of it."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .factorization import (
    Document,
    Factorization,
    FibrationType,
    TwistToken,
    chain_substitute,
    check_h1,
    cyclic_rotate,
    fiber_sum,
    find_token,
    global_conjugate,
    h1,
    hurwitz_move,
    insert,
    lantern_substitute,
    move_token,
    parse_document,
    relation_holds,
    ProvenanceLedger,
    twist_word,
    simplify_token,
    type_of,
    verify_identity,
)
from .config import CATALOG_ENV, WorkbenchConfig  # noqa: F401
from .homology import AbelianGroupShape, is_separating
from .mcg import Curve, curves_isotopic, invert_word, parse_mcg_word, relation_suite

def catalog_text() -> str:
    override = WorkbenchConfig.from_env().catalog_dir
    if override:
        return (Path(override) / "catalog.txt").read_text(encoding="utf-8")
    return resources.files("genus2lf.data").joinpath("catalog.txt").read_text(encoding="utf-8")


@lru_cache(maxsize=4)
def _document(text: str) -> Document:
    return parse_document(text)


def document() -> Document:
    return _document(catalog_text())


def curve(name: str) -> Curve:
    return document().curves[name]


def token(name: str) -> TwistToken:
    return TwistToken(curve(name), name)


def factorization(name: str) -> Factorization:
    return document().factorization(name)


@dataclass
class CatalogEntry:
    id: str
    claimed_type: FibrationType
    source: str
    word: str | None = None  # name of a factorization in the data file
    claimed_h1: AbelianGroupShape | None = None
    status: str = "unverified"
    notes: list[str] = field(default_factory=list)

    @property
    def is_stub(self) -> bool:
        return self.word is None


# Types of published words that are not reproduced here; the planner may still
# reference them symbolically.
STUB_TYPES = {
    "BK_8_6": (8, 6),
    "BK_10_5": (10, 5),
    "BK_12_4": (12, 4),
    "BK_14_8": (14, 8),
    "BK_16_7": (16, 7),
    "BK_18_6": (18, 6),
    "BK_20_5": (20, 5),
    "BK_22_4": (22, 4),
    "BK_26_2": (26, 2),
    "BK_W4": (18, 1),
}


def _entries() -> list[CatalogEntry]:
    out = [
        CatalogEntry("W", FibrationType(4, 3), "separating (4,3) word", "W", AbelianGroupShape(2)),
        CatalogEntry("matsumoto", FibrationType(6, 2), "(B C D sigma)^2", "matsumoto", AbelianGroupShape(2)),
        CatalogEntry("chain10", FibrationType(20, 0), "(1234554321)^2", "chain10", AbelianGroupShape(0)),
        CatalogEntry("chain6", FibrationType(30, 0), "(12345)^6", "chain6", AbelianGroupShape(0)),
    ]
    out += [CatalogEntry(k, FibrationType(*t), "cited, word not reprinted") for k, t in STUB_TYPES.items()]
    return out


def load_catalog() -> dict[str, CatalogEntry]:
    """Every entry with word data is verified (identity, type, H_1) on load."""
    entries = {}
    for e in _entries():
        if e.is_stub:
            e.status = "stub"
        else:
            f, rep = verify_identity(factorization(e.word))
            problems = []
            if not rep.ok:
                problems.append(rep.diagnostic)
            if rep.type != e.claimed_type:
                problems.append(f"type {rep.type} != claimed {e.claimed_type}")
            if e.claimed_h1 is not None and h1(f) != e.claimed_h1:
                problems.append(f"H1 {h1(f)} != claimed {e.claimed_h1}")
            e.status = "verified" if not problems else "blocked"
            e.notes = problems
        entries[e.id] = e
    return entries


def full_relation_suite() -> list[tuple[str, bool]]:
    """Generator relations plus the lantern and 2-chain relations the builds use."""
    c = curve
    d4 = c("D").conjugate((4,))
    f1 = c("F").conjugate((-1,))
    out = relation_suite()
    out.append(("lantern 4 4 F F = B theta H", relation_holds([c("c4"), c("c4"), c("F"), c("F")], [c("B"), c("theta"), c("H")])))
    out.append(("(4D D)^6 = delta", relation_holds([d4, c("D")] * 6, [c("delta")])))
    out.append(("(F 1iF)^6 = omega", relation_holds([c("F"), f1] * 6, [c("omega")])))
    return out


# --- build scripts -------------------------------------------------------------------


class BuildError(RuntimeError):
    pass


@dataclass
class BuildLog:
    steps: list[tuple[str, FibrationType]] = field(default_factory=list)
    intermediates: dict[str, Factorization] = field(default_factory=dict)

    def check(self, label: str, f: Factorization, expected: tuple[int, int] | None = None, reverify: bool = True) -> Factorization:
        if reverify:
            f, rep = verify_identity(f)
            if not rep.ok:
                raise BuildError(f"step {len(self.steps)} ({label}): {rep.diagnostic}")
        t = type_of(f)
        if expected is not None and tuple(t) != tuple(expected):
            raise BuildError(f"step {len(self.steps)} ({label}): type {t}, expected {expected}")
        self.steps.append((label, t))
        self.intermediates[label] = f
        return f


def _named(f: Factorization, name: str) -> Factorization:
    return Factorization(f.tokens, f.ledger, f.verified, name)


def _simplify_to(f: Factorization, i: int, target: str) -> Factorization:
    g = simplify_token(f, i, curve(target), target)
    if g.tokens[i].curve != curve(target):
        raise BuildError(f"token {i} is not isotopic to {target}")
    return g


def _tidy(f: Factorization) -> Factorization:
    """Shorten conjugators wherever a leading letter fixes the curve."""
    names = {c: n for n, c in document().curves.items()}
    for i in range(len(f)):
        f = simplify_token(f, i)
        c = f.tokens[i].curve
        if c in names and f.tokens[i].label != names[c]:
            f = Factorization(
                f.tokens[:i] + (TwistToken(c, names[c]),) + f.tokens[i + 1 :], f.ledger, f.verified, f.name
            )
    return f


def build_V(log: BuildLog | None = None) -> Factorization:
    """The (8,6) word: W conjugated by t4 spliced into a rotated W,
    braid-simplified, with the two F twists carried to the front."""
    log = log or BuildLog()
    W = log.check("W", factorization("W"), (4, 3))
    W4 = global_conjugate(W, parse_mcg_word("4"))
    W4r = _tidy(cyclic_rotate(W4, 1))  # 4D sigma 4E gamma F 4G 4alpha
    Wr = cyclic_rotate(W, 1)  # D sigma E gamma F G alpha
    f = insert(Wr, 1, _named(W4r, "W4"))
    f = log.check("D (4W) sigma E gamma F G alpha", f, (8, 6))
    f = hurwitz_move(f, 0, 1)  # D past 4D
    f = _simplify_to(f, 0, "c4")
    # carry both F twists to the end, then bring them round to the front
    pos = find_token(f, curve("F"))
    if len(pos) != 2:
        raise BuildError(f"expected two F tokens, found {pos}")
    f = move_token(f, pos[1], len(f) - 1)
    f = move_token(f, pos[0], len(f) - 2)
    f = cyclic_rotate(f, len(f) - 2)
    f = _named(f, "V")
    return log.check("V", f, (8, 6))


def build_U(log: BuildLog | None = None) -> Factorization:
    log = log or BuildLog()
    Wr = cyclic_rotate(factorization("W"), 1)
    U = _tidy(global_conjugate(Wr, parse_mcg_word("1' 4")))
    return log.check("U", _named(U, "U"), (4, 3))


def build_X(log: BuildLog | None = None) -> Factorization:
    """The (10,10) word."""
    log = log or BuildLog()
    V = build_V(log)
    U = build_U(log)
    f = log.check("U+V", fiber_sum(U, V), (12, 9))
    # carry the U block past F F 4 D; U acts trivially, so those come back unchanged
    nU = len(U)
    for j in reversed(range(nU)):
        f = move_token(f, j, j + 4)
    for k, name in enumerate(("F", "F", "c4", "D")):
        f = _simplify_to(f, k, name)
    f = log.check("X'", f, (12, 9))
    # D past 4D, which is the twist along c4
    f = hurwitz_move(f, 3, 1)
    f = _simplify_to(f, 3, "c4")
    f = lantern_substitute(f, range(0, 4), [token("B"), token("theta"), token("H")])
    f = _named(f, "X")
    f = log.check("X", f, (10, 10))
    f, g = check_h1(f)
    if not g.trivial:
        raise BuildError(f"H1 of X is {g}")
    return f


# Tokens that kill pi_1 of every X(t); see the H_1 computation in build_X.
MARKERS = {
    "B": ("B", ()),
    "D": ("D", ()),
    "sigma": ("sigma", ()),
    "1i_F": ("F", (-1,)),
    "1i4_G": ("G", (-1, 4)),
}


def marker_curves() -> dict[str, Curve]:
    return {k: curve(n).conjugate(phi) for k, (n, phi) in MARKERS.items()}


def find_markers(f: Factorization) -> dict[str, list[int]]:
    return {k: find_token(f, c) for k, c in marker_curves().items()}


# L(c4) = c_k, built from T_a T_b (a) = b along the chain
LADDER = {
    1: (2, 1, 3, 2, 4, 3),
    2: (3, 2, 4, 3),
    3: (4, 3),
    4: (),
    5: (4, 5),
}


def carrier(j: Curve) -> tuple[int, ...]:
    """A twist word phi with phi(c4) isotopic to the non-separating curve j."""
    if j.base not in LADDER:
        raise BuildError("carrier needs a non-separating base curve")
    phi = j.conjugator + LADDER[j.base]
    if not curves_isotopic(Curve(phi, 4), j):
        raise BuildError(f"ladder word does not carry c4 to {j}")
    return phi


def xt_step(f: Factorization, V: Factorization) -> Factorization:
    """X(t) -> X(t+1): bring a non-separating twist J to the end, append V^phi
    with phi(c4) = J, then do the lantern J phiF phiF phi4 -> phiB phitheta phiH."""
    found = find_markers(f)
    missing = [k for k, v in found.items() if not v]
    if missing:
        raise BuildError(f"marker tokens missing: {', '.join(missing)}")
    # J is consumed by the lantern, so it must not be the only copy of a marker
    keep = {v[0] for v in found.values()}
    cands = [
        (len(t.curve.conjugator), i)
        for i, t in enumerate(f.tokens)
        if i not in keep and not is_separating(t.curve)
    ]
    if not cands:
        raise BuildError("no non-separating token available to carry V")
    _, j = min(cands)
    f = cyclic_rotate(f, j + 1)
    J = f.tokens[-1].curve
    phi = carrier(J)
    n = len(f)
    g = fiber_sum(f, _named(global_conjugate(V, phi), "V"))
    for k, name in enumerate(("F", "F", "c4")):
        if not curves_isotopic(g.tokens[n + k].curve, curve(name).conjugate(phi)):
            raise BuildError(f"V^phi does not start with phi({name})")
    rep = [TwistToken(curve(x).conjugate(phi), f"phi_{x}") for x in ("B", "theta", "H")]
    return lantern_substitute(g, range(n - 1, n + 3), rep)


def build_Xt(t: int, log: BuildLog | None = None) -> Factorization:
    if t < 1:
        raise ValueError("t must be at least 1")
    log = log or BuildLog()
    f = build_X(log)
    V = log.intermediates["V"]
    for k in range(2, t + 1):
        f = xt_step(f, V)
        f = log.check(f"X({k})", _named(f, f"X{k}"), (4 + 6 * k, 3 + 7 * k))
        f, g = check_h1(f)
        if not g.trivial:
            raise BuildError(f"H1 of X({k}) is {g}")
    return f


def _chain_block_ok(f: Factorization, start: int, a: Curve, b: Curve) -> bool:
    return all(f.tokens[start + k].curve == (a if k % 2 == 0 else b) for k in range(12))


def build_block(log: BuildLog | None = None) -> Factorization:
    """4D D Z' F 1iF: a copy of W spliced into U, with F and 1iF carried to the end."""
    log = log or BuildLog()
    U = build_U(log)
    Wr = _named(cyclic_rotate(factorization("W"), 1), "W")
    f = insert(U, 1, Wr)
    f = log.check("U with W inserted", f, (8, 6))
    F = curve("F")
    F1 = F.conjugate((-1,))
    pos_f1 = find_token(f, F1)
    pos_f = [i for i in find_token(f, F) if i not in pos_f1]
    if len(pos_f) != 1 or len(pos_f1) != 1:
        raise BuildError("expected exactly one F and one 1iF token")
    f = move_token(f, pos_f1[0], len(f) - 1)
    f = move_token(f, pos_f[0], len(f) - 2)
    f = simplify_token(f, len(f) - 2, F, "F")
    f = simplify_token(f, len(f) - 1, F1, "1i_F")
    if not (curves_isotopic(f.tokens[0].curve, curve("D").conjugate((4,))) and f.tokens[1].curve == curve("D")):
        raise BuildError("block does not start with 4D D")
    return log.check("4D D Z' F 1iF", _named(f, "Y"), (8, 6))


def build_2438(log: BuildLog | None = None) -> Factorization:
    """(4D D)^6 Z (F 1iF)^6 followed by two 2-chain substitutions.

    Regrouping six copies of 4D D Z' F 1iF by Hurwitz moves does not keep the
    F pairs fixed: each 4D D pair carried leftwards conjugates what it passes
    by P^-1, P = T_4D T_D.  Instead Z is assembled from the identity
    P^-6 Q^-6 = prod_{k=5..0} P^-k Z' P^k  (Q = T_F T_1iF, Z' = P^-1 Q^-1),
    and the whole word is verified from scratch.
    """
    log = log or BuildLog()
    Y = build_block(log)
    A, Zp, B = Y.tokens[:2], Y.tokens[2:-2], Y.tokens[-2:]
    p_inv = invert_word(twist_word(A[0].curve) + twist_word(A[1].curve))
    Z: list[TwistToken] = []
    for k in range(5, -1, -1):
        phi = p_inv * k
        Z += [TwistToken(t.curve.conjugate(phi), f"P{k}_{t.label}" if k and t.label else t.label) for t in Zp]
    f = Factorization(A * 6 + tuple(Z) + B * 6, ProvenanceLedger(("assembled (4D D)^6 Z (F 1iF)^6",)))
    f = log.check("(4D D)^6 Z (F 1iF)^6", f, (48, 36))
    f = chain_substitute(f, 0, token("delta"))
    f = log.check("first 2-chain", f, (36, 37))
    f = chain_substitute(f, len(f) - 12, token("omega"))
    return log.check("(24,38)", _named(f, "Y2438"), (24, 38))


def build_Mt(t: int, log: BuildLog | None = None) -> Factorization:
    """W (delta Z omega)^t."""
    if t < 1:
        raise ValueError("t must be at least 1")
    log = log or BuildLog()
    Z = build_2438(log)
    f = log.check("W", factorization("W"), (4, 3))
    for k in range(t):
        f = fiber_sum(f, Z)
    return log.check(f"M({t})", _named(f, f"M{t}"), (4 + 24 * t, 3 + 38 * t))
