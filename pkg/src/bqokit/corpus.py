"""Seeded generators for families, blocks, arrays and codes.

Everything takes a ``random.Random`` so corpora are reproducible from a seed.
The schematic families (uniform, split, nonuniform, ...) are materialised
inside a window.
"""

import random
from typing import List, Optional, Sequence, Tuple

from .families import SeqFamily, Window, uniform
from .reduction import SigmaCode, _below
from .seqcore import Seq, increasing_sequences


def nonuniform_block(N: int, L: int) -> SeqFamily:
    """{<n> : 1 <= n} ∪ {<0, m> : 1 <= m}; its smoothing is [N]^2."""
    return SeqFamily.of([(n,) for n in range(1, N)] + [(0, m) for m in range(1, N)], N, L)


def split_block(N: int, L: int) -> SeqFamily:
    """{<0>} ∪ [N \\ {0}]^2, already smooth."""
    return SeqFamily.of([(0,)] + [(n, m) for n in range(1, N) for m in range(n + 1, N)], N, L)


def schreier_block(N: int, L: int) -> SeqFamily:
    """Sequences s with lh(s) = s(0) + 1, the Schreier barrier, cut to the window."""
    return SeqFamily(tuple(s for s in increasing_sequences(N, L, min_len=1) if len(s) == s[0] + 1), Window(N, L))


def fixture_blocks(N: int = 8, L: int = 3):
    """Named schematic blocks used by tests and the CLI fixtures."""
    return {
        "uniform1": uniform(N, 1, L),
        "uniform2": uniform(N, 2, L),
        "uniform3": uniform(N, 3, L),
        "nonuniform": nonuniform_block(N, L),
        "split": split_block(N, L),
        "schreier": schreier_block(N, N // 2 + 1),
    }


def random_block(rng: random.Random, N: int, L: int, base: Optional[Sequence[int]] = None, stop: float = 0.45) -> SeqFamily:
    """A random family that covers every increasing sequence over ``base``.

    Grown as a tree from the empty sequence: each nonempty node becomes a
    member with probability ``stop`` (always at length L or when it has no
    children left in the base), otherwise all its one-step extensions are
    grown.
    """
    A = sorted(set(range(N) if base is None else base))
    members = []

    def grow(p):
        lo = p[-1] + 1 if p else 0
        children = [a for a in A if a >= lo]
        if p and (len(p) >= L or not children or rng.random() < stop):
            members.append(p)
            return
        for a in children:
            grow(p + (a,))

    grow(())
    return SeqFamily(tuple(members), Window(N, L))


def random_family(rng: random.Random, N: int, L: int, size: Optional[int] = None) -> SeqFamily:
    """Arbitrary members, no structure."""
    pool = list(increasing_sequences(N, L, min_len=1))
    k = size if size is not None else rng.randint(1, min(len(pool), 12))
    return SeqFamily(tuple(rng.sample(pool, min(k, len(pool)))), Window(N, L))


def _random_seq(rng, N, n) -> Seq:
    return tuple(sorted(rng.sample(range(N), n)))


def random_code(rng: random.Random, N: int, L: int, max_triples: int = 40) -> Tuple[SigmaCode, Seq, List[Seq]]:
    """A code with some structure plus noise, an x-prefix, and four y-prefixes.

    The structured part is a random block spanning the whole window, attached
    to (x, y0); with probability 1/2 a few of its triples get a perturbed x or
    y coordinate.  Noise triples fill the rest; any comparable to an earlier
    triple is dropped.
    """
    x = tuple(rng.randrange(2) for _ in range(L))
    y0 = tuple(rng.randrange(2) for _ in range(L))
    budget = max(1, (3 * max_triples) // 4)
    for _ in range(20):
        B = random_block(rng, N, L, stop=rng.uniform(0.6, 0.95))
        if len(B) <= budget:
            break
    else:
        B = uniform(N, 1, L)
    perturb = rng.random() < 0.5
    cand = []
    for s in B.members:
        n = len(s)
        xs, ys = x[:n], y0[:n]
        if perturb and rng.random() < 0.15:
            if rng.random() < 0.5:
                ys = tuple(rng.randrange(2) for _ in range(n))
            else:
                xs = tuple(rng.randrange(2) for _ in range(n))
        cand.append((xs, ys, s))
    for _ in range(rng.randint(0, max_triples - len(cand))):
        n = rng.randint(1, min(L, N))
        cand.append(
            (
                tuple(rng.randrange(2) for _ in range(n)),
                tuple(rng.randrange(2) for _ in range(n)),
                _random_seq(rng, N, n),
            )
        )
    kept = []
    for t in cand:
        if len(kept) >= max_triples:
            break
        if t in kept or any(_below(t, u) or _below(u, t) for u in kept):
            continue
        kept.append(t)
    ys = [y0, tuple(1 - b for b in y0), (0,) * L, tuple(rng.randrange(2) for _ in range(L))]
    return SigmaCode(tuple(kept), Window(N, L)), x, ys


def single_digit_code(N: int, L: int) -> SigmaCode:
    """{(<a>, <0>, <k>) : a, k < N}: C_{x,y} is [N]^1 when y(0) = 0, else empty."""
    return SigmaCode.of((((a,), (0,), (k,)) for a in range(N) for k in range(N)), N, L)


def pair_code(N: int, L: int) -> SigmaCode:
    """{(<0,0>, <0,0>, s) : s in [N]^2}: C_{x,y} is [N]^2 when x and y start 0,0."""
    return SigmaCode.of((((0, 0), (0, 0), s) for s in increasing_sequences(N, 2, min_len=2)), N, L)
