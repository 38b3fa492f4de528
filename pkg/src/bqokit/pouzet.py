"""Pouzet's order: a partial order inside an arbitrary reflexive relation.

The carrier is always q_0, ..., q_{n-1} in that enumeration.  For m <= n,

    q_m ⪯ q_n  iff  q_m R q_n  and  every q_i ⪯ q_m with i < m has q_i ⪯ q_n,

and q_m ⪯ q_n never holds for m > n.  Row m only reads rows i < m, so rows
are filled strictly in increasing order.  Entry (m, n) depends on nothing
with index above max(m, n), which is why the construction commutes with
cutting the carrier down to an initial segment.
"""

from dataclasses import dataclass

import numpy as np

from .errors import Check, InvalidRelation, SizeMismatch


def _as_bits(bits) -> np.ndarray:
    arr = np.array(bits, dtype=bool)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise SizeMismatch(f"expected a square matrix, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RelationMatrix:
    """bits[m, k] means q_m R q_k."""

    bits: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bits", _as_bits(self.bits))

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    def __call__(self, m: int, k: int) -> bool:
        return bool(self.bits[m, k])

    def __eq__(self, other):
        return isinstance(other, RelationMatrix) and np.array_equal(self.bits, other.bits)

    def is_reflexive(self) -> bool:
        return bool(self.bits.diagonal().all())

    def restrict(self, k: int) -> "RelationMatrix":
        return type(self)(self.bits[:k, :k])

    @classmethod
    def identity(cls, n: int):
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def full(cls, n: int):
        return cls(np.ones((n, n), dtype=bool))

    def to_json(self):
        return {"n": self.n, "bits": self.bits.tolist()}

    @classmethod
    def from_json(cls, obj):
        bits = obj["bits"]
        n = int(obj["n"])
        if len(bits) != n or any(len(row) != n for row in bits):
            raise SizeMismatch(f"declared n={n} does not match the bit matrix")
        if any(not isinstance(b, bool) for row in bits for b in row):
            raise InvalidRelation("bits must be JSON booleans")
        return cls(np.array(bits, dtype=bool).reshape(n, n))


class OrderMatrix(RelationMatrix):
    """bits[m, k] means q_m ⪯ q_k."""


def pouzet_order(R: RelationMatrix) -> OrderMatrix:
    if not R.is_reflexive():
        i = int(np.flatnonzero(~R.bits.diagonal())[0])
        raise InvalidRelation(f"relation is not reflexive at q_{i}")
    n = R.n
    P = np.zeros((n, n), dtype=bool)
    for m in range(n):
        below = P[:m, m]
        row = R.bits[m, m:].copy()
        if below.any():
            row &= P[:m, m:][below].all(axis=0)
        P[m, m:] = row
    return OrderMatrix(P)


def verify_order_axioms(M: RelationMatrix) -> Check:
    """Partial order axioms.  A failure carries the first offending index
    (reflexivity), pair (antisymmetry) or triple (transitivity)."""
    B = M.bits
    n = M.n
    for i in range(n):
        if not B[i, i]:
            return Check.failed((i,), "not reflexive")
    both = B & B.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = map(int, np.argwhere(both)[0])
        return Check.failed((i, j), "not antisymmetric")
    Bi = B.astype(np.int64)
    gaps = ((Bi @ Bi) > 0) & ~B
    if gaps.any():
        i, k = map(int, np.argwhere(gaps)[0])
        j = int(np.flatnonzero(B[i] & B[:, k])[0])
        return Check.failed((i, j, k), "not transitive")
    return Check.passed()


def verify_contained(M: RelationMatrix, R: RelationMatrix) -> Check:
    if M.n != R.n:
        raise SizeMismatch(f"carrier sizes differ: {M.n} vs {R.n}")
    extra = M.bits & ~R.bits
    if extra.any():
        i, j = map(int, np.argwhere(extra)[0])
        return Check.failed((i, j), "order pair missing from the relation")
    return Check.passed()


def respects_enumeration(M: RelationMatrix) -> Check:
    """No pair q_m ⪯ q_k with m > k."""
    low = np.tril(M.bits, k=-1)
    if low.any():
        i, j = map(int, np.argwhere(low)[0])
        return Check.failed((i, j), "pair against the enumeration")
    return Check.passed()
