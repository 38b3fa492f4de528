"""The ten acceptance criteria, one test each.

A PASS/FAIL line per criterion is printed in the terminal summary (and
immediately with ``-s``).  Run directly with ``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time

import numpy as np
import pytest

from bqokit.arrays import BlockArray, perfect_check, projection_array, tri_pres_check
from bqokit.corpus import (
    fixture_blocks,
    nonuniform_block,
    random_block,
    random_code,
    random_family,
    schreier_block,
    split_block,
)
from bqokit.errors import NotABlock, NotPerfect, WindowExhausted
from bqokit.families import BLOCK, block_check, extension_to_star, smooth_check, star, uniform
from bqokit.pouzet import RelationMatrix, pouzet_order, respects_enumeration, verify_contained, verify_order_axioms
from bqokit.reduction import bad_array_witness, cxy, enumerate_Qx, sublemma_verify
from bqokit.seqcore import increasing_sequences, is_dominated, shift, shift_rel, shift_rel_oracle

from acceptance_log import criterion, lines
from cli_cases import CASES, GOLD, run
from oracles import pouzet_brute

SEED = 20240611


def _say(n):
    for line in lines():
        if line.startswith(f"criterion {n:>2} "):
            print(line)


def _shift_pairs_all():
    seqs = list(increasing_sequences(8, 4))
    out = []
    for s in seqs:
        for t in seqs:
            bound = 8 + len(s) + len(t) + 2
            out.append((s, t, shift_rel(s, t), shift_rel_oracle(s, t, bound)))
    return out


_PAIRS = {}


def _pairs():
    if "v" not in _PAIRS:
        t0 = time.perf_counter()
        _PAIRS["v"] = _shift_pairs_all()
        _PAIRS["t"] = time.perf_counter() - t0
    return _PAIRS["v"], _PAIRS["t"]


def test_criterion_01_shift_oracle():
    with criterion(1, "shift relation agrees with the u-search") as info:
        pairs, dt = _pairs()
        bad = [(s, t) for s, t, a, b in pairs if a != b]
        info.update(pairs=len(pairs), true=sum(a for *_, a, _ in pairs), mismatches=len(bad), seconds=round(dt, 2))
        assert len(pairs) >= 10_000
        assert not bad, bad[:5]
        assert dt < 10
    _say(1)


def test_criterion_02_tri_filter():
    with criterion(2, "s(i) < t(i) and s(i+1) = t(i) on every shift pair") as info:
        pairs, _ = _pairs()
        violations = 0
        checked = 0
        for s, t, rel, _ in pairs:
            if not rel:
                continue
            checked += 1
            for i in range(min(len(s), len(t))):
                if not s[i] < t[i] or (i + 1 < len(s) and s[i + 1] != t[i]):
                    violations += 1
                    break
        info.update(shift_pairs=checked, violations=violations)
        assert checked > 0 and violations == 0
    _say(2)


def test_criterion_03_star_smooth():
    with criterion(3, "star(C) is smooth") as info:
        rng = random.Random(SEED)
        fams = []
        for _ in range(200):
            N = rng.randint(2, 10)
            L = rng.randint(1, min(3, N))
            fams.append(random_family(rng, N, L) if rng.random() < 0.5 else random_block(rng, N, L))
        fams += list(fixture_blocks().values()) + list(fixture_blocks(10, 3).values())
        done = exhausted = failures = 0
        for C in fams:
            try:
                S = star(C)
                done += 1
            except WindowExhausted as exc:
                S = exc.partial
                exhausted += 1
            failures += not smooth_check(S)
        info.update(families=len(fams), completed=done, exhausted_partial_checked=exhausted, failures=failures)
        assert failures == 0 and done >= 100
    _say(3)


_SCHEMATIC = {
    "nonuniform": lambda N, L: nonuniform_block(N, L),
    "split": lambda N, L: split_block(N, L),
    "schreier": lambda N, L: schreier_block(N, N // 2 + 1),
    "uniform1": lambda N, L: uniform(N, 1, L),
    "uniform2": lambda N, L: uniform(N, 2, L),
    "uniform3": lambda N, L: uniform(N, 3, L),
}


def test_criterion_04_partition():
    with criterion(4, "star of a window block is a window block; extensions exist") as info:
        members = edge = 0
        for N in (8, 10):
            L = 3
            blocks = fixture_blocks(N, L)
            for name, C in blocks.items():
                assert block_check(C).status == BLOCK, name
                S = star(C)
                assert block_check(S).status == BLOCK, name
                big = _SCHEMATIC[name](N + C.window.L, L)
                for t in C:
                    members += 1
                    try:
                        s = extension_to_star(C, t)
                        assert s[: len(t)] == t and s in S
                    except WindowExhausted:
                        # the window cut the extension off: it must exist one
                        # window up and must not fit the original window
                        s = extension_to_star(big, t)
                        assert not C.window.admits(s), (name, t, s)
                        edge += 1
        for n in (1, 2, 3):
            U = uniform(10, n)
            assert star(U) == U
        info.update(members=members, cut_by_window=edge, uniform_fixed_points="n=1,2,3")
    _say(4)


def test_criterion_05_pouzet():
    with criterion(5, "Pouzet order: axioms, containment, enumeration, prefix stability") as info:
        rng = np.random.default_rng(SEED)
        t0 = time.perf_counter()
        small = 0
        for _ in range(1000):
            n = int(rng.integers(0, 51))
            M = rng.random((n, n)) < rng.random()
            np.fill_diagonal(M, True)
            R = RelationMatrix(M)
            P = pouzet_order(R)
            assert verify_order_axioms(P)
            assert verify_contained(P, R)
            assert respects_enumeration(P)
            for k in range(n + 1):
                assert pouzet_order(R.restrict(k)) == P.restrict(k)
            if n <= 4:
                small += 1
                assert P.bits.tolist() == pouzet_brute(M.tolist())
        dt = time.perf_counter() - t0
        exhaustive = 0
        for n in range(5):
            off = [(i, j) for i in range(n) for j in range(n) if i != j]
            for bits in itertools.product((False, True), repeat=len(off)):
                M = np.eye(n, dtype=bool)
                for (i, j), b in zip(off, bits):
                    M[i, j] = b
                exhaustive += 1
                assert pouzet_order(RelationMatrix(M)).bits.tolist() == pouzet_brute(M.tolist())
        info.update(random=1000, random_small=small, exhaustive_small=exhaustive, seconds=round(dt, 2))
        assert dt < 60
    _say(5)


def _breaks_conclusion(s, v):
    return len(v) > len(s) or not is_dominated(s[: len(v)], v)


def test_criterion_06_tri_pres():
    with criterion(6, "tri-pres on perfect arrays; corrupted arrays caught") as info:
        rng = random.Random(SEED)
        cases = []
        for N in range(3, 10):
            for n in (1, 2, 3):
                B = uniform(N, n)
                for k in range(1, n + 1):
                    for off in (0, 1, 2):
                        cases.append((uniform(N + off, k), projection_array(B, k, off)))
                if n >= 2:
                    cases.append((uniform(N, n - 1), BlockArray.build(B, shift)))
        for _ in range(60):
            N = rng.randint(3, 9)
            B = random_block(rng, N, 3)
            off = rng.randint(0, 2)
            cases.append((uniform(N + off, 1), projection_array(B, 1, off)))
        for name, B in fixture_blocks().items():
            cases.append((uniform(8, 1), projection_array(B, 1)))
        held = 0
        for C, arr in cases:
            assert smooth_check(C)
            assert block_check(arr.family).status == BLOCK
            assert perfect_check(arr, shift_rel)
            assert tri_pres_check(C, arr)
            held += 1
        caught = by_perfection = 0
        pool = [(C, arr) for C, arr in cases if len(arr.family) > 1]
        while caught < 50:
            C, arr = rng.choice(pool)
            s = rng.choice(arr.family.members)
            wrong = [v for v in C if _breaks_conclusion(s, v)]
            if not wrong:
                continue
            v = rng.choice(wrong)
            bad = BlockArray(arr.family, {**arr.values, s: v})
            try:
                chk = tri_pres_check(C, bad)
            except NotPerfect as exc:
                assert exc.witness is not None
                caught += 1
                by_perfection += 1
                continue
            assert not chk and chk.witness is not None
            caught += 1
        info.update(perfect_arrays=held, corrupted_caught=caught, caught_as_not_perfect=by_perfection)
    _say(6)


_CORPUS = {}


def _corpus():
    if "v" not in _CORPUS:
        rng = random.Random(SEED)
        out = []
        for _ in range(100):
            N = rng.randint(2, 12)
            L = rng.randint(1, min(4, N))
            out.append(random_code(rng, N, L, 40))
        _CORPUS["v"] = out
    return _CORPUS["v"]


def test_criterion_07_sublemma():
    with criterion(7, "sublemma: Q_x side equals C*_xy side") as info:
        t0 = time.perf_counter()
        runs = fails = 0
        for code, x, ys in _corpus():
            assert len(code.triples) <= 40
            for y in ys:
                runs += 1
                fails += not sublemma_verify(code, x, y)
        dt = time.perf_counter() - t0
        info.update(codes=len(_corpus()), runs=runs, counterexamples=fails, seconds=round(dt, 2))
        assert runs == 400 and fails == 0 and dt < 120
    _say(7)


def test_criterion_08_bad_array():
    with criterion(8, "bad array has no good pair whenever C*_xy is a window block") as info:
        blocks = pairs = good = skipped = 0
        for code, x, ys in _corpus():
            for y in ys:
                try:
                    rep = bad_array_witness(code, x, y)
                except NotABlock:
                    skipped += 1
                    continue
                blocks += 1
                pairs += rep.pairs_checked
                good += not rep.ok
        info.update(window_blocks=blocks, shift_pairs=pairs, good_pairs=good, not_blocks=skipped)
        assert blocks > 0 and good == 0
    _say(8)


def test_criterion_09_continuity():
    with criterion(9, "outputs depend only on the consulted prefix") as info:
        qx = ys_checked = 0
        for code, x, ys in _corpus():
            d = code.depth
            ref = enumerate_Qx(code, x)
            head = x[:d]
            for tail in itertools.product(range(3), repeat=2):
                assert enumerate_Qx(code, head + tail) == ref
                qx += 1
            for y in ys:
                L = code.window.L
                refC = cxy(code, x, y)
                for tail in itertools.product((0, 1), repeat=2):
                    assert cxy(code, x, y[:L] + tail) == refC
                    ys_checked += 1
        rng = np.random.default_rng(SEED)
        pz = 0
        for _ in range(100):
            n = int(rng.integers(1, 16))
            M = rng.random((n, n)) < 0.5
            np.fill_diagonal(M, True)
            P = pouzet_order(RelationMatrix(M))
            for k in range(n + 1):
                M2 = rng.random((n, n)) < 0.5
                M2[:k, :k] = M[:k, :k]
                np.fill_diagonal(M2, True)
                assert pouzet_order(RelationMatrix(M2)).restrict(k) == P.restrict(k)
                pz += 1
        info.update(qx_variants=qx, y_variants=ys_checked, pouzet_variants=pz)
    _say(9)


def test_criterion_10_cli_determinism(tmp_path):
    with criterion(10, "CLI golden files byte-identical over two runs") as info:
        import json

        codes = json.loads((GOLD / "exit-codes.json").read_text())
        for name in sorted(CASES):
            want = (GOLD / f"{name}.json").read_bytes()
            for i in range(2):
                d = tmp_path / f"{name}-{i}"
                d.mkdir()
                code, data = run(name, d)
                assert code == codes[name], name
                assert data == want, name
        info.update(cases=len(CASES), runs=2 * len(CASES))
    _say(10)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
