"""Finite strictly increasing sequences of naturals.

A finite subset of N is identified with the tuple listing it in increasing
order, so sequences here are plain ``tuple[int, ...]``.  ``finseq`` is the
validating constructor used at every trust boundary (JSON, CLI, public
builders); internal code passes tuples around freely.

Free sequences (prefixes of points of Baire or Cantor space) are tuples too,
with no monotonicity requirement.
"""

from itertools import combinations, product
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import InvalidConcatenation, InvalidSequence, OutOfRange

Seq = Tuple[int, ...]

EMPTY: Seq = ()


def _naturals(entries) -> Seq:
    out = tuple(entries)
    for v in out:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InvalidSequence(f"entries must be natural numbers, got {v!r}")
    return out


def finseq(entries: Iterable[int] = ()) -> Seq:
    """Validate and return a strictly increasing sequence."""
    out = _naturals(entries)
    for i in range(len(out) - 1):
        if out[i] >= out[i + 1]:
            raise InvalidSequence(f"not strictly increasing at index {i}: {list(out)}")
    return out


def freeseq(entries: Iterable[int] = ()) -> Seq:
    return _naturals(entries)


def binseq(entries: Iterable[int] = ()) -> Seq:
    out = _naturals(entries)
    if any(v > 1 for v in out):
        raise InvalidSequence(f"binary sequence has an entry > 1: {list(out)}")
    return out


def is_increasing(s: Sequence[int]) -> bool:
    return all(s[i] < s[i + 1] for i in range(len(s) - 1))


def lenlex(s: Sequence[int]):
    """Sort key for the canonical length-lexicographic order."""
    return (len(s), tuple(s))


def is_initial_segment(s: Sequence[int], t: Sequence[int], strict: bool = False) -> bool:
    """s ⊑ t (or s ⊏ t when ``strict``)."""
    if len(s) > len(t) or (strict and len(s) == len(t)):
        return False
    return tuple(t[: len(s)]) == tuple(s)


def comparable(s: Sequence[int], t: Sequence[int]) -> bool:
    """True iff one of s, t is a proper initial segment of the other."""
    return is_initial_segment(s, t, strict=True) or is_initial_segment(t, s, strict=True)


def restrict(s: Sequence[int], i: int) -> Seq:
    """s[i], the initial segment of length i."""
    if i < 0 or i > len(s):
        raise OutOfRange(f"cannot restrict a sequence of length {len(s)} to length {i}")
    return tuple(s[:i])


def concat(s: Sequence[int], t: Sequence[int]) -> Seq:
    if s and t and s[-1] >= t[0]:
        raise InvalidConcatenation(f"junction {s[-1]} >= {t[0]} breaks monotonicity")
    return tuple(s) + tuple(t)


def shift(u: Sequence[int]) -> Seq:
    """Drop the least element."""
    if not u:
        raise InvalidSequence("cannot drop the least element of the empty sequence")
    return tuple(u[1:])


def is_dominated(t: Sequence[int], s: Sequence[int]) -> bool:
    """t ⪻ s: same length and t(i) <= s(i) everywhere."""
    return len(t) == len(s) and all(a <= b for a, b in zip(t, s))


def iter_dominated(s: Sequence[int]) -> Iterator[Seq]:
    """Increasing t with t ⪻ s, in lexicographic order."""
    n = len(s)
    if n == 0:
        yield ()
        return
    buf = [0] * n

    def rec(i, lo):
        for v in range(lo, s[i] + 1):
            buf[i] = v
            if i + 1 == n:
                yield tuple(buf)
            else:
                yield from rec(i + 1, v + 1)

    yield from rec(0, 0)


def dominated_below(s: Sequence[int]) -> Tuple[Seq, ...]:
    """All increasing t with t ⪻ s, length-lex ordered (always contains s)."""
    return tuple(iter_dominated(s))


def dominated_below_oracle(s: Sequence[int]) -> Tuple[Seq, ...]:
    """Brute force: filter the full box of tuples pointwise below s."""
    box = product(*(range(v + 1) for v in s))
    return tuple(sorted(t for t in box if is_increasing(t)))


def shift_rel(s: Sequence[int], t: Sequence[int]) -> bool:
    """s ◁ t: some increasing u has s ⊑ u and t ⊑ u minus its least element.

    Decided directly: the entries of s past the first must agree with t, and
    gluing the rest of t onto s must stay increasing.
    """
    ls, lt = len(s), len(t)
    if ls == 0:
        # u(0) is free, so only u(0) < t(0) matters
        return lt == 0 or t[0] >= 1
    k = min(ls - 1, lt)
    for j in range(1, k + 1):
        if s[j] != t[j - 1]:
            return False
    if lt >= ls:
        return s[-1] < t[ls - 1]
    return True


def shift_rel_oracle(s: Sequence[int], t: Sequence[int], bound: Optional[int] = None) -> bool:
    """Brute force for ◁: search every increasing u extending s.

    u has length max(lh(s), lh(t)+1) and entries below ``bound`` (default
    max entry + lh(s) + lh(t) + 2, which leaves room for any witness).
    """
    ls, lt = len(s), len(t)
    if bound is None:
        bound = max(tuple(s) + tuple(t), default=0) + 1 + ls + lt + 2
    need = max(ls, lt + 1) - ls
    if not is_increasing(s):
        return False
    lo = s[-1] + 1 if s else 0
    s = tuple(s)
    t = tuple(t)
    for tail in combinations(range(lo, bound), need):
        u = s + tail
        if u[1 : 1 + lt] == t:
            return True
    return False


def increasing_sequences(
    bound: int, max_len: int, base: Optional[Iterable[int]] = None, min_len: int = 0
) -> Iterator[Seq]:
    """All increasing sequences over ``base`` (default range(bound)) with
    entries < bound and min_len <= length <= max_len, in length-lex order."""
    pool = sorted(v for v in (range(bound) if base is None else base) if 0 <= v < bound)
    for n in range(min_len, max_len + 1):
        yield from combinations(pool, n)
