"""Finite families of increasing sequences viewed through a window.

A window (N, L) bounds entries (exclusive) and lengths (inclusive).  Blocks
in the infinitary sense have infinite base, so everything here works on the
part of a family visible below N and says so when the edge of the window
gets in the way.

The trees of the smoothing construction are never materialised: membership
in T(C) and T*(C) is decided per sequence, and only C* is enumerated.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Tuple

from .errors import (
    Check,
    InvariantViolation,
    NotABlock,
    PreconditionFailed,
    WindowError,
    WindowExhausted,
)
from .seqcore import Seq, finseq, increasing_sequences, is_dominated, lenlex


@dataclass(frozen=True)
class Window:
    N: int
    L: int

    def __post_init__(self):
        if self.N < 0 or self.L < 0:
            raise WindowError(f"window bounds must be non-negative: N={self.N}, L={self.L}")

    def admits(self, s: Seq) -> bool:
        return len(s) <= self.L and all(v < self.N for v in s)

    def to_json(self):
        return {"N": self.N, "L": self.L}


@dataclass(frozen=True)
class SeqFamily:
    """A finite set of increasing sequences living inside a window.

    ``members`` is kept in canonical length-lex order without duplicates.
    """

    members: Tuple[Seq, ...]
    window: Window
    _set: FrozenSet[Seq] = field(init=False, repr=False, compare=False)
    _base: FrozenSet[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ms = sorted({tuple(m) for m in self.members}, key=lenlex)
        for m in ms:
            if not self.window.admits(m):
                raise WindowError(f"{list(m)} does not fit window N={self.window.N}, L={self.window.L}")
        object.__setattr__(self, "members", tuple(ms))
        object.__setattr__(self, "_set", frozenset(ms))
        object.__setattr__(self, "_base", frozenset(v for m in ms for v in m))

    @classmethod
    def of(cls, members: Iterable[Iterable[int]], N: int, L: int) -> "SeqFamily":
        return cls(tuple(finseq(m) for m in members), Window(N, L))

    def __contains__(self, s) -> bool:
        return tuple(s) in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def maxlen(self) -> int:
        return max((len(m) for m in self.members), default=0)

    def to_json(self):
        return {"window": self.window.to_json(), "members": [list(m) for m in self.members]}

    @classmethod
    def from_json(cls, obj) -> "SeqFamily":
        w = obj["window"]
        return cls.of(obj["members"], int(w["N"]), int(w["L"]))


def uniform(N: int, n: int, L: Optional[int] = None) -> SeqFamily:
    """[N]^n: every increasing sequence of length n with entries < N."""
    return SeqFamily(tuple(increasing_sequences(N, n, min_len=n)), Window(N, n if L is None else L))


def base(C: SeqFamily) -> FrozenSet[int]:
    return C._base


def smooth_check(C: SeqFamily) -> Check:
    """Passes iff no longer member, cut to the length of a shorter one, is
    pointwise dominated by it.  The witness is (shorter, longer)."""
    by_len = {}
    for m in C.members:
        by_len.setdefault(len(m), []).append(m)
    lengths = sorted(by_len)
    for i, a in enumerate(lengths):
        for s in by_len[a]:
            for b in lengths[i + 1 :]:
                for t in by_len[b]:
                    if is_dominated(t[:a], s):
                        return Check.failed((s, t), "longer member dominated by a shorter one")
    return Check.passed()


def _universe(C: SeqFamily, universe) -> FrozenSet[int]:
    return C._base if universe is None else frozenset(universe)


def in_TC(C: SeqFamily, s: Seq, universe: Optional[Iterable[int]] = None) -> bool:
    """s ∈ T(C): entries from the universe and no initial segment of s in C.

    The universe defaults to base(C).  Passing ``range(C.window.N)`` gives the
    trees over all of N, which is exact for every question about sequences
    inside the window.
    """
    s = tuple(s)
    A = _universe(C, universe)
    if any(v not in A for v in s):
        return False
    return all(s[:i] not in C._set for i in range(len(s) + 1))


def in_Tstar(C: SeqFamily, s: Seq, universe: Optional[Iterable[int]] = None) -> bool:
    """s ∈ T*(C): some t ⪻ s lies in T(C).

    Depth-first over the t ⪻ s, pruning as soon as a prefix of t hits C.
    """
    s = tuple(s)
    A = _universe(C, universe)
    members = C._set
    if any(v not in A for v in s) or () in members:
        return False
    n = len(s)

    def rec(prefix, i, lo):
        if i == n:
            return True
        for v in range(lo, s[i] + 1):
            if v in A:
                p = prefix + (v,)
                if p not in members and rec(p, i + 1, v + 1):
                    return True
        return False

    return rec((), 0, 0)


def in_Cstar(C: SeqFamily, s: Seq, universe: Optional[Iterable[int]] = None) -> bool:
    """s ∈ C*: s leaves T*(C) while every proper initial segment is inside."""
    s = tuple(s)
    A = _universe(C, universe)
    if any(v not in A for v in s):
        return False
    if in_Tstar(C, s, A):
        return False
    return all(in_Tstar(C, s[:i], A) for i in range(len(s)))


def star(C: SeqFamily, universe: Optional[Iterable[int]] = None) -> SeqFamily:
    """The smoothing C* restricted to the window of C.

    Breadth first over T*(C): a child that leaves T*(C) is a member of C*, a
    child that stays is expanded.  Staying inside T*(C) at length L raises
    WindowExhausted, as does finding nothing at all while the empty sequence
    is still in T*(C).  The result is checked for smoothness.
    """
    w = C.window
    A = _universe(C, universe)
    if not in_Tstar(C, (), A):
        return SeqFamily(((),), w)
    pool = sorted(v for v in A if v < w.N)
    out = []
    stuck = []
    frontier = [()]
    while frontier:
        nxt = []
        for p in frontier:
            lo = p[-1] + 1 if p else 0
            for a in pool:
                if a < lo:
                    continue
                q = p + (a,)
                if not in_Tstar(C, q, A):
                    out.append(q)
                elif len(q) >= w.L:
                    stuck.append(q)
                else:
                    nxt.append(q)
        frontier = nxt
    result = SeqFamily(tuple(out), w)
    if stuck:
        raise WindowExhausted(
            f"{len(stuck)} branch(es) of T*(C) reach length L={w.L}, first {list(stuck[0])}",
            partial=result,
        )
    if not out:
        raise WindowExhausted("T*(C) is not closed off anywhere inside the window", partial=result)
    chk = smooth_check(result)
    if not chk:
        raise InvariantViolation(f"C* is not smooth: {chk.witness}")
    return result


BLOCK = "block-in-window"
NOT_BLOCK = "not-block"
INDETERMINATE = "indeterminate-at-boundary"


@dataclass(frozen=True)
class BlockVerdict:
    status: str
    witness: object = None
    reason: str = ""

    @property
    def is_block(self) -> bool:
        return self.status == BLOCK

    def to_json(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.reason:
            out["reason"] = self.reason
        return out


def _jsonable(w):
    if isinstance(w, tuple) and w and isinstance(w[0], tuple):
        return [list(x) for x in w]
    return list(w)


def block_check(C: SeqFamily) -> BlockVerdict:
    """Windowed block test.

    (a) members pairwise incomparable under proper initial segment (exact);
    (b) coverage: walk the increasing sequences over base(C) that avoid C, up
        to length maxlen(C).  An avoiding sequence of that length which could
        still be extended inside the window is a hard failure.  An avoiding
        sequence that cannot be extended at all has run into the top of the
        base; that is accepted when the base reaches the window edge N-1 and
        reported as indeterminate otherwise.
    """
    members = C._set
    for t in C.members:
        for i in range(len(t)):
            if t[:i] in members:
                return BlockVerdict(NOT_BLOCK, (t[:i], t), "comparable members")
    if not members:
        return BlockVerdict(NOT_BLOCK, (), "empty family covers nothing")
    if () in members:
        return BlockVerdict(INDETERMINATE, (), "empty base")
    A = sorted(C._base)
    m = C.maxlen
    leaves = []
    stack = [()]
    # depth first in reverse so the first failure found is the lex-least one
    while stack:
        p = stack.pop()
        if p in members:
            continue
        lo = p[-1] + 1 if p else 0
        children = [p + (a,) for a in A if a >= lo]
        if not children:
            leaves.append(p)
            continue
        if len(p) >= m:
            return BlockVerdict(NOT_BLOCK, p, "sequence over the base with no initial segment in C")
        stack.extend(reversed(children))
    if leaves and A[-1] < C.window.N - 1:
        return BlockVerdict(INDETERMINATE, leaves[0], "uncovered sequence stops below the window edge")
    return BlockVerdict(BLOCK)


def extension_to_star(C: SeqFamily, t: Seq) -> Seq:
    """Length-lex least s in C* with t ⊑ s."""
    t = tuple(t)
    if t not in C:
        raise PreconditionFailed(f"{list(t)} is not a member of the family", witness=t)
    verdict = block_check(C)
    if not verdict.is_block:
        raise NotABlock(f"family is not a block in its window ({verdict.status})", witness=verdict.witness)
    try:
        S = star(C)
        exhausted = None
    except WindowExhausted as exc:
        S, exhausted = exc.partial, exc
    for s in S.members:
        if s[: len(t)] == t:
            return s
    msg = f"no member of C* inside the window extends {list(t)}"
    raise WindowExhausted(msg if exhausted is None else f"{msg}; {exhausted}", partial=S)
