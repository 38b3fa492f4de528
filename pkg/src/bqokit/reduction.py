"""From a code of a Σ¹₁ matrix to the pair (Q_x, R_x).

A code is a finite set of equal-length triples (x-prefix, y-prefix, s) with
y-prefixes binary and s increasing.  For a point x (given by a long enough
prefix) we compute

    C_x   = {(σ, s) : (x[lh σ], σ, s) in code}
    D_x   = {(σ, s) : lh σ = lh s and every t ⪻ s has some i <= lh s
                      with (σ[i], t[i]) in C_x}
    Q_x   = {(σ, s) in D_x : no proper initial pair (σ[i], s[i]) is in D_x}
    R_x   : (σ, s) R_x (τ, t)  iff  σ is not ⊑ τ  or  s is not ◁ t

and, for a binary y, the family C_{x,y} = {s : (y[lh s], s) in C_x}.

Whether x lies in the coded Π¹₂ set is never decided here.  Everything below
is a finite computation whose inputs are the code, a prefix of x of length
at least the longest triple, and (for C_{x,y}) a prefix of y of length L.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from .arrays import BlockArray, find_good_pair, shift_pairs
from .errors import (
    Check,
    InsufficientPrefix,
    InvalidCode,
    InvariantViolation,
    NotABlock,
    WindowExhausted,
)
from .families import SeqFamily, Window, block_check, in_Cstar, star
from .seqcore import Seq, binseq, finseq, freeseq, increasing_sequences, is_initial_segment, iter_dominated, shift_rel

Triple = Tuple[Seq, Seq, Seq]
Pair = Tuple[Seq, Seq]


def _below(a: Triple, b: Triple) -> bool:
    """a ⊏ b in all three coordinates at once."""
    n = len(a[2])
    return n < len(b[2]) and all(b[k][:n] == a[k] for k in range(3))


@dataclass(frozen=True)
class SigmaCode:
    triples: Tuple[Triple, ...]
    window: Window

    def __post_init__(self):
        ts = []
        for xs, ys, s in self.triples:
            xs, ys, s = freeseq(xs), binseq(ys), finseq(s)
            if not (len(xs) == len(ys) == len(s)):
                raise InvalidCode(f"triple with unequal lengths: {xs}, {ys}, {s}")
            if not s:
                raise InvalidCode("the empty triple may not belong to a code")
            if not self.window.admits(s) or any(v >= self.window.N for v in xs):
                raise InvalidCode(f"triple {xs}, {ys}, {s} does not fit the window")
            ts.append((xs, ys, s))
        ts = sorted(set(ts), key=lambda t: (len(t[2]), t[0], t[1], t[2]))
        for a in ts:
            for b in ts:
                if _below(a, b):
                    raise InvalidCode(f"comparable triples {a} and {b}")
        object.__setattr__(self, "triples", tuple(ts))

    @classmethod
    def of(cls, triples: Iterable, N: int, L: int) -> "SigmaCode":
        return cls(tuple(tuple(tuple(c) for c in t) for t in triples), Window(N, L))

    @property
    def depth(self) -> int:
        """Length of the x-prefix the reduction actually reads."""
        return max((len(t[2]) for t in self.triples), default=0)

    def to_json(self):
        return {
            "window": self.window.to_json(),
            "triples": [{"x": list(a), "y": list(b), "s": list(c)} for a, b, c in self.triples],
        }

    @classmethod
    def from_json(cls, obj) -> "SigmaCode":
        w = obj["window"]
        return cls.of(((t["x"], t["y"], t["s"]) for t in obj["triples"]), int(w["N"]), int(w["L"]))


def _prefix(code: SigmaCode, x) -> Seq:
    x = freeseq(x)
    if len(x) < code.depth:
        raise InsufficientPrefix(f"need at least {code.depth} entries of x, got {len(x)}")
    return x[: code.depth]


class _Section:
    """C_x for one code and x-prefix, with a memo for D_x membership."""

    def __init__(self, code: SigmaCode, xp: Seq):
        self.cx: FrozenSet[Pair] = frozenset((ys, s) for xs, ys, s in code.triples if xp[: len(xs)] == xs)
        self._dx: Dict[Pair, bool] = {}

    def in_Dx(self, sigma: Seq, s: Seq) -> bool:
        key = (sigma, s)
        hit = self._dx.get(key)
        if hit is None:
            hit = self._dx[key] = self._eval_Dx(sigma, s)
        return hit

    def _eval_Dx(self, sigma, s):
        if len(sigma) != len(s):
            return False
        cx = self.cx
        n = len(s)
        for t in iter_dominated(s):
            if not any((sigma[:i], t[:i]) in cx for i in range(n + 1)):
                return False
        return True

    def in_Qx(self, sigma: Seq, s: Seq) -> bool:
        return self.in_Dx(sigma, s) and not any(self.in_Dx(sigma[:i], s[:i]) for i in range(len(s)))


@lru_cache(maxsize=256)
def _section(code: SigmaCode, xp: Seq) -> _Section:
    return _Section(code, xp)


def cx(code: SigmaCode, x) -> FrozenSet[Pair]:
    return _section(code, _prefix(code, x)).cx


def in_Dx(code: SigmaCode, x, sigma, s) -> bool:
    return _section(code, _prefix(code, x)).in_Dx(tuple(sigma), tuple(s))


def in_Qx(code: SigmaCode, x, sigma, s) -> bool:
    return _section(code, _prefix(code, x)).in_Qx(tuple(sigma), tuple(s))


def rx(p: Pair, q: Pair) -> bool:
    (sigma, s), (tau, t) = p, q
    return not is_initial_segment(sigma, tau) or not shift_rel(s, t)


@dataclass(frozen=True)
class ReducedRelation:
    """Q_x inside the window, in canonical order, with R_x on indices."""

    carrier: Tuple[Pair, ...]
    index: Dict[Pair, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {p: i for i, p in enumerate(self.carrier)})

    def __len__(self):
        return len(self.carrier)

    def __call__(self, i: int, j: int) -> bool:
        return rx(self.carrier[i], self.carrier[j])

    def reflexivity_check(self) -> Check:
        for i, p in enumerate(self.carrier):
            if not rx(p, p):
                return Check.failed(p, "R_x fails to be reflexive")
        return Check.passed()

    def to_json(self):
        return {"carrier": [{"y": list(sig), "s": list(s)} for sig, s in self.carrier]}


def _pair_key(p):
    return (len(p[0]), p[0], p[1])


def enumerate_Qx(code: SigmaCode, x) -> ReducedRelation:
    sec = _section(code, _prefix(code, x))
    w = code.window
    found = []
    for s in increasing_sequences(w.N, w.L):
        for sigma in product((0, 1), repeat=len(s)):
            if sec.in_Qx(sigma, s):
                found.append((sigma, s))
    return ReducedRelation(tuple(sorted(found, key=_pair_key)))


def _yprefix(code: SigmaCode, y) -> Seq:
    y = binseq(y)
    if len(y) < code.window.L:
        raise InsufficientPrefix(f"need at least L={code.window.L} entries of y, got {len(y)}")
    return y


def cxy(code: SigmaCode, x, y) -> SeqFamily:
    c = cx(code, x)
    y = _yprefix(code, y)
    w = code.window
    fam = SeqFamily(tuple(s for sigma, s in c if y[: len(s)] == sigma), w)
    for t in fam.members:
        for i in range(len(t)):
            if t[:i] in fam:
                raise InvariantViolation(f"C_xy has comparable members {t[:i]} and {t}")
    return fam


def sublemma_verify(code: SigmaCode, x, y) -> Check:
    """(y[lh s], s) in Q_x  iff  s in C*_{x,y}, for every s in the window.

    The witness is the first s (length-lex) where the two sides differ.
    """
    sec = _section(code, _prefix(code, x))
    y = _yprefix(code, y)
    C = cxy(code, x, y)
    w = code.window
    universe = range(w.N)
    for s in increasing_sequences(w.N, w.L):
        left = sec.in_Qx(y[: len(s)], s)
        right = in_Cstar(C, s, universe)
        if left != right:
            return Check.failed(s, f"Q_x side {left}, C* side {right}")
    return Check.passed()


@dataclass(frozen=True)
class BadArrayReport:
    array: BlockArray
    relation: ReducedRelation
    pairs_checked: int
    good_pair: Optional[Tuple[Seq, Seq]]

    @property
    def ok(self) -> bool:
        return self.good_pair is None

    def to_json(self):
        return {
            "block": self.array.family.to_json(),
            "pairs_checked": self.pairs_checked,
            "good_pair": None if self.good_pair is None else [list(s) for s in self.good_pair],
        }


def bad_array_witness(code: SigmaCode, x, y) -> BadArrayReport:
    """The array X -> (y[lh s_X], s_X) over the block C*_{x,y}, where s_X is
    the member of C*_{x,y} below X, checked for good pairs against R_x."""
    y = _yprefix(code, y)
    C = cxy(code, x, y)
    try:
        S = star(C, range(C.window.N))
    except WindowExhausted as exc:
        raise NotABlock(f"C*_xy does not close inside the window: {exc}") from exc
    verdict = block_check(S)
    if not verdict.is_block:
        raise NotABlock(f"C*_xy is not a block in its window ({verdict.status})", witness=verdict.witness)
    Q = enumerate_Qx(code, x)
    vals = {}
    for s in S.members:
        p = (y[: len(s)], s)
        if p not in Q.index:
            raise InvariantViolation(f"{p} is in C*_xy but its pair is not in Q_x")
        vals[s] = Q.index[p]
    arr = BlockArray(S, vals)
    pairs = sum(1 for _ in shift_pairs(S))
    return BadArrayReport(arr, Q, pairs, find_good_pair(arr, Q))
