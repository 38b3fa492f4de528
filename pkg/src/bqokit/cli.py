"""Command line front end.

JSON reports go to stdout (or --out), a one-line summary to stderr.

Exit codes:
    0  success
    2  usage error
    3  input does not match its schema (includes non-reflexive relations)
    4  x or y prefix too short for the code
    5  window exhausted (L too small for the requested construction)
    6  a verification found a counterexample (always an implementation bug)
    7  block verdict indeterminate at the window boundary under --boundary-policy strict
"""

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .arrays import INDEX, SEQ, BlockArray, find_good_pair, perfect_check, tri_pres_check
from .corpus import random_block, random_code, random_family
from .errors import (
    InsufficientPrefix,
    InvalidRelation,
    NotABlock,
    PreconditionFailed,
    WindowError,
    WindowExhausted,
)
from .families import INDETERMINATE, SeqFamily, Window, block_check, smooth_check, star
from .pouzet import RelationMatrix, pouzet_order, respects_enumeration, verify_contained, verify_order_axioms
from .reduction import SigmaCode, bad_array_witness, enumerate_Qx, sublemma_verify
from .seqcore import binseq, freeseq, increasing_sequences, shift_rel, shift_rel_oracle

EXIT_OK = 0
EXIT_SCHEMA = 3
EXIT_PREFIX = 4
EXIT_EXHAUSTED = 5
EXIT_COUNTEREXAMPLE = 6
EXIT_BOUNDARY = 7


class SchemaError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    N: Optional[int]
    L: Optional[int]
    boundary_policy: str
    seed: int
    out: Optional[str]

    def window_for(self, w: Window) -> Window:
        N = w.N if self.N is None else self.N
        L = w.L if self.L is None else self.L
        if not N >= L >= 1:
            raise SchemaError(f"window must satisfy N >= L >= 1, got N={N}, L={L}")
        return Window(N, L)


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def _parse(what, fn, obj):
    try:
        return fn(obj)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, InsufficientPrefix):
            raise
        raise SchemaError(f"bad {what}: {exc}") from exc


def _rewindow(fam: SeqFamily, cfg: RunConfig) -> SeqFamily:
    w = cfg.window_for(fam.window)
    if w == fam.window:
        return fam
    return _parse("family", lambda f: SeqFamily(f.members, w), fam)


def _check_json(chk):
    out = {"ok": chk.ok}
    if not chk.ok:
        out["witness"] = _plain(chk.witness)
        out["reason"] = chk.reason
    return out


def _plain(obj):
    if isinstance(obj, tuple):
        return [_plain(v) for v in obj]
    return obj


class Report:
    def __init__(self, command):
        self.data = {"command": command}
        self.code = EXIT_OK
        self.notes = []

    def fail(self, code, note):
        if self.code == EXIT_OK:
            self.code = code
        self.notes.append(note)


def cmd_smooth(args, cfg: RunConfig, rep: Report):
    fam = _rewindow(_parse("family", SeqFamily.from_json, _load(args.family)), cfg)
    rep.data["input"] = fam.to_json()
    rep.data["input_smooth"] = _check_json(smooth_check(fam))
    try:
        S = star(fam)
    except WindowExhausted as exc:
        rep.data["star"] = None
        rep.data["partial_star"] = exc.partial.to_json()
        rep.fail(EXIT_EXHAUSTED, f"window exhausted: {exc}")
        return
    rep.data["star"] = S.to_json()
    sm = smooth_check(S)
    rep.data["star_smooth"] = _check_json(sm)
    rep.notes.append(f"|C|={len(fam)} |C*|={len(S)} smooth(C*)={sm.ok}")
    if not sm:
        rep.fail(EXIT_COUNTEREXAMPLE, "C* is not smooth")


def cmd_pouzet(args, cfg: RunConfig, rep: Report):
    R = _parse("relation", RelationMatrix.from_json, _load(args.relation))
    try:
        P = pouzet_order(R)
    except InvalidRelation as exc:
        raise SchemaError(str(exc)) from exc
    checks = {
        "order_axioms": verify_order_axioms(P),
        "contained": verify_contained(P, R),
        "respects_enumeration": respects_enumeration(P),
    }
    rep.data["order"] = P.to_json()
    rep.data["checks"] = {k: _check_json(v) for k, v in checks.items()}
    rep.notes.append(f"n={P.n} pairs={int(P.bits.sum())}")
    for k, v in checks.items():
        if not v:
            rep.fail(EXIT_COUNTEREXAMPLE, f"{k} failed at {v.witness}")


def cmd_reduce(args, cfg: RunConfig, rep: Report):
    code = _parse("code", SigmaCode.from_json, _load(args.code))
    w = cfg.window_for(code.window)
    if w != code.window:
        code = _parse("code", lambda c: SigmaCode(c.triples, w), code)
    x = _parse("x prefix", freeseq, _load(args.x))
    Q = enumerate_Qx(code, x)
    rep.data["carrier"] = Q.to_json()["carrier"]
    refl = Q.reflexivity_check()
    rep.data["reflexive"] = _check_json(refl)
    if not refl:
        rep.fail(EXIT_COUNTEREXAMPLE, "R_x is not reflexive")
    if args.query:
        answers = []
        for i, j in args.query:
            if not (0 <= i < len(Q) and 0 <= j < len(Q)):
                raise SchemaError(f"query ({i}, {j}) outside a carrier of size {len(Q)}")
            answers.append({"p": i, "q": j, "rx": Q(i, j)})
        rep.data["queries"] = answers
    rep.notes.append(f"|Q_x|={len(Q)}")
    if args.y is None:
        return
    y = _parse("y prefix", binseq, _load(args.y))
    sub = sublemma_verify(code, x, y)
    rep.data["sublemma"] = _check_json(sub)
    if not sub:
        rep.fail(EXIT_COUNTEREXAMPLE, f"sublemma fails at {sub.witness}")
    try:
        bad = bad_array_witness(code, x, y)
    except NotABlock as exc:
        rep.data["bad_array"] = {"status": "precondition-failed", "reason": str(exc)}
        rep.notes.append("C*_xy is not a window block; bad array skipped")
        return
    rep.data["bad_array"] = dict(status="checked", **bad.to_json())
    rep.notes.append(f"bad array: {bad.pairs_checked} shift pairs, good pair {bad.good_pair}")
    if not bad.ok:
        rep.fail(EXIT_COUNTEREXAMPLE, f"bad array has a good pair {bad.good_pair}")


def cmd_check(args, cfg: RunConfig, rep: Report):
    if not (args.family or args.array):
        raise SchemaError("check needs --family and/or --array")
    verdicts = []
    if args.family:
        fam = _rewindow(_parse("family", SeqFamily.from_json, _load(args.family)), cfg)
        v = block_check(fam)
        rep.data["block"] = v.to_json()
        verdicts.append(v)
    if args.array:
        arr = _parse("array", BlockArray.from_json, _load(args.array))
        v = block_check(arr.family)
        rep.data["array_block"] = v.to_json()
        verdicts.append(v)
        if args.relation:
            if arr.kind != INDEX:
                raise SchemaError("--relation needs an index-valued array")
            R = _parse("relation", RelationMatrix.from_json, _load(args.relation))
            try:
                gp = find_good_pair(arr, R)
                pc = perfect_check(arr, R)
            except IndexError as exc:
                raise SchemaError(str(exc)) from exc
            rep.data["good_pair"] = None if gp is None else _plain(gp)
            rep.data["perfect"] = _check_json(pc)
            rep.notes.append(f"good pair {gp}, perfect={pc.ok}")
        if args.codomain:
            if arr.kind != SEQ:
                raise SchemaError("--codomain needs a sequence-valued array")
            C = _parse("codomain", SeqFamily.from_json, _load(args.codomain))
            try:
                tp = tri_pres_check(C, arr)
            except PreconditionFailed as exc:
                rep.data["tri_pres"] = {"ok": None, "precondition": exc.kind, "witness": _plain(exc.witness)}
                rep.notes.append(f"tri-pres precondition failed: {exc.kind}")
            else:
                rep.data["tri_pres"] = _check_json(tp)
                rep.notes.append(f"tri-pres ok={tp.ok}")
                if not tp:
                    rep.fail(EXIT_COUNTEREXAMPLE, f"tri-pres conclusion fails at {tp.witness}")
    for v in verdicts:
        rep.notes.append(f"block verdict: {v.status}")
        if v.status == INDETERMINATE:
            if cfg.boundary_policy == "strict":
                rep.fail(EXIT_BOUNDARY, "indeterminate block verdict under strict boundary policy")
            else:
                rep.notes.append("warning: block verdict indeterminate at the window boundary")


def cmd_selftest(args, cfg: RunConfig, rep: Report):
    rng = random.Random(cfg.seed)
    counts = {}

    def tally(name, ok):
        c = counts.setdefault(name, {"checked": 0, "failed": 0})
        c["checked"] += 1
        c["failed"] += not ok

    seqs = list(increasing_sequences(6, 3))
    for s in seqs:
        for t in seqs:
            tally("shift_oracle", shift_rel(s, t) == shift_rel_oracle(s, t))
    for _ in range(args.count):
        N, L = rng.randint(3, 8), rng.randint(1, 3)
        fam = rng.choice((random_family, random_block))(rng, N, L)
        try:
            S = star(fam)
        except WindowExhausted as exc:
            S = exc.partial
        tally("star_smooth", bool(smooth_check(S)))
        n = rng.randint(1, 20)
        R = RelationMatrix([[i == j or rng.random() < 0.5 for j in range(n)] for i in range(n)])
        P = pouzet_order(R)
        tally("pouzet", bool(verify_order_axioms(P) and verify_contained(P, R) and respects_enumeration(P)))
        code, x, ys = random_code(rng, rng.randint(3, 8), rng.randint(1, 3), 20)
        for y in ys[:2]:
            tally("sublemma", bool(sublemma_verify(code, x, y)))
            try:
                tally("bad_array", bad_array_witness(code, x, y).ok)
            except NotABlock:
                pass
    rep.data["seed"] = cfg.seed
    rep.data["counts"] = counts
    failed = sum(c["failed"] for c in counts.values())
    rep.notes.append(f"selftest seed={cfg.seed}: {sum(c['checked'] for c in counts.values())} checks, {failed} failed")
    if failed:
        rep.fail(EXIT_COUNTEREXAMPLE, "selftest found counterexamples")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window-n", type=int, help="override the window's entry bound N")
    common.add_argument("--window-l", type=int, help="override the window's length bound L")
    common.add_argument("--boundary-policy", choices=("strict", "warn"), default="warn")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    p = argparse.ArgumentParser(prog="bqokit", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("smooth", parents=[common], help="compute C* and check smoothness")
    s.add_argument("family")
    s.set_defaults(func=cmd_smooth)

    s = sub.add_parser("pouzet", parents=[common], help="partial order inside a reflexive relation")
    s.add_argument("relation")
    s.set_defaults(func=cmd_pouzet)

    s = sub.add_parser("reduce", parents=[common], help="Q_x and R_x; with --y the sublemma and bad array")
    s.add_argument("code")
    s.add_argument("x")
    s.add_argument("--y")
    s.add_argument("--query", nargs=2, type=int, action="append", metavar=("I", "J"), help="evaluate R_x on carrier indices")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("check", parents=[common], help="block verdicts, good pairs, perfection, tri-pres")
    s.add_argument("--family")
    s.add_argument("--array")
    s.add_argument("--relation")
    s.add_argument("--codomain")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("selftest", parents=[common], help="seeded randomized run of the main properties")
    s.add_argument("--count", type=int, default=30)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.window_n, args.window_l, args.boundary_policy, args.seed, args.out)
    rep = Report(args.command)
    t0 = time.perf_counter()
    try:
        args.func(args, cfg, rep)
    except SchemaError as exc:
        print(f"bqokit {args.command}: schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except InsufficientPrefix as exc:
        print(f"bqokit {args.command}: insufficient prefix: {exc}", file=sys.stderr)
        return EXIT_PREFIX
    except WindowError as exc:
        print(f"bqokit {args.command}: schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except WindowExhausted as exc:
        print(f"bqokit {args.command}: window exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    rep.data["exit_code"] = rep.code
    text = json.dumps(rep.data, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for note in rep.notes:
        print(f"bqokit {args.command}: {note}", file=sys.stderr)
    print(f"bqokit {args.command}: exit {rep.code} ({time.perf_counter() - t0:.2f}s)", file=sys.stderr)
    return rep.code


if __name__ == "__main__":
    sys.exit(main())
