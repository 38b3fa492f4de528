"""Arrays that are constant on the cells N_s of a block, stored as the
finite map s -> value over the block's members.

For X in N_s with the shifted set in N_t we have s ◁ t, so goodness and
perfection of the underlying array come down to the ◁-pairs of the family.
Only window pairs are visible, which makes "bad" here mean "no good pair
among the pairs in the window": sound for goodness, an under-approximation
of badness.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, Tuple, Union

from .errors import Check, NotPerfect, NotSmooth, OutOfRange, ValuesOutsideCodomain
from .families import SeqFamily, smooth_check
from .pouzet import RelationMatrix
from .seqcore import Seq, finseq, is_dominated, shift_rel

Value = Union[int, Seq]
Relation = Callable[[Value, Value], bool]

INDEX = "index"
SEQ = "seq"


@dataclass(frozen=True)
class BlockArray:
    family: SeqFamily
    values: Dict[Seq, Value]
    kind: str = field(init=False)

    def __post_init__(self):
        vals = {tuple(s): (tuple(v) if isinstance(v, (tuple, list)) else v) for s, v in self.values.items()}
        missing = [s for s in self.family.members if s not in vals]
        if missing:
            raise ValueError(f"array is undefined on {list(missing[0])}")
        extra = [s for s in vals if s not in self.family]
        if extra:
            raise ValueError(f"array defined off its block at {list(extra[0])}")
        kinds = {SEQ if isinstance(v, tuple) else INDEX for v in vals.values()}
        if len(kinds) > 1:
            raise ValueError("array mixes index values and sequence values")
        for v in vals.values():
            if isinstance(v, bool) or (not isinstance(v, tuple) and (not isinstance(v, int) or v < 0)):
                raise ValueError(f"bad array value {v!r}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "kind", kinds.pop() if kinds else INDEX)

    def __call__(self, s) -> Value:
        return self.values[tuple(s)]

    @classmethod
    def build(cls, family: SeqFamily, fn: Callable[[Seq], Value]) -> "BlockArray":
        return cls(family, {s: fn(s) for s in family.members})

    def to_json(self):
        return {
            "family": self.family.to_json(),
            "values": [
                {"s": list(s), "q": list(self.values[s]) if self.kind == SEQ else self.values[s]}
                for s in self.family.members
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "BlockArray":
        fam = SeqFamily.from_json(obj["family"])
        vals = {}
        for item in obj["values"]:
            q = item["q"]
            vals[finseq(item["s"])] = finseq(q) if isinstance(q, list) else q
        return cls(fam, vals)


def projection_array(B: SeqFamily, k: int, offset: int = 0) -> BlockArray:
    """s -> s[k] with every entry moved up by ``offset``.  Perfect for ◁."""
    return BlockArray.build(B, lambda s: tuple(v + offset for v in s[:k]))


def shift_pairs(family: SeqFamily) -> Iterator[Tuple[Seq, Seq]]:
    """All (s, t) in the family with s ◁ t, in length-lex order of (s, t)."""
    ms = family.members
    for s in ms:
        for t in ms:
            if shift_rel(s, t):
                yield s, t


def _checked_relation(arr: BlockArray, rel) -> Relation:
    if isinstance(rel, RelationMatrix):
        if arr.kind != INDEX:
            raise ValueError("a relation matrix needs an index-valued array")
        for s, q in arr.values.items():
            if q >= rel.n:
                raise OutOfRange(f"value {q} at {list(s)} is outside a carrier of size {rel.n}")
    return rel


def find_good_pair(arr: BlockArray, rel) -> Union[Tuple[Seq, Seq], None]:
    """Length-lex least (s, t) with s ◁ t and arr(s) rel arr(t), or None if
    the array is bad within the window."""
    rel = _checked_relation(arr, rel)
    for s, t in shift_pairs(arr.family):
        if rel(arr(s), arr(t)):
            return s, t
    return None


def perfect_check(arr: BlockArray, rel) -> Check:
    rel = _checked_relation(arr, rel)
    for s, t in shift_pairs(arr.family):
        if not rel(arr(s), arr(t)):
            return Check.failed((s, t), "shift pair whose values are unrelated")
    return Check.passed()


def tri_pres_check(C: SeqFamily, arr: BlockArray) -> Check:
    """Both conclusions for a ◁-perfect C-valued array over a block:

    (1) lh(arr(s)) <= lh(s);  (2) s[lh(arr(s))] ⪻ arr(s).

    Hypotheses are checked first and raise NotSmooth, ValuesOutsideCodomain or
    NotPerfect with a witness.  A failed conclusion comes back as a Check whose
    witness is the offending member s.
    """
    if arr.kind != SEQ:
        raise ValueError("tri_pres_check needs a sequence-valued array")
    chk = smooth_check(C)
    if not chk:
        raise NotSmooth("codomain family is not smooth", witness=chk.witness)
    for s in arr.family.members:
        if arr(s) not in C:
            raise ValuesOutsideCodomain(f"value at {list(s)} is not in the codomain", witness=s)
    chk = perfect_check(arr, shift_rel)
    if not chk:
        raise NotPerfect("array is not perfect for ◁", witness=chk.witness)
    for s in arr.family.members:
        v = arr(s)
        if len(v) > len(s):
            return Check.failed(s, "value longer than its cell")
        if not is_dominated(s[: len(v)], v):
            return Check.failed(s, "cell not pointwise below its value")
    return Check.passed()
