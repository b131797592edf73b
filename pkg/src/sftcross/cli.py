"""Command line entry point.

Exit status: 0 on success, 1 when a verification fails or compared elements
differ, 2 on bad input.  Reports go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import random
import sys as _sys
from typing import Optional, Sequence

from . import groupoid
from .crossed import (
    PreconditionError,
    SearchFailure,
    adjoint,
    equals,
    expectation_F,
    expectation_G,
    func,
    grande_h,
    normal_form,
    restriction_hom,
    S,
    S_star,
    scalar,
)
from .cylfun import indicator
from .expr import ExprError, format_element, format_function, parse_expression
from .measure import solve_invariant, uniform_weights
from .randgen import random_element
from .sft import EvPerPoint, analyze, topfree_bruteforce
from .sysfile import SystemFileError, load_system
from .verify import SUITES, run_suites


class InputError(Exception):
    pass


def _out(line: str = "") -> None:
    print(line)


def _set_name(sy, s) -> str:
    return "{" + ", ".join(sy.symbols[c] for c in sorted(s)) + "}"


# -- analyze --------------------------------------------------------------------


def cmd_analyze(sy, args) -> int:
    A = sy.matrix
    rep = analyze(A)
    name = lambda w: "[" + sy.word_name(w) + "]"
    _out(f"symbols: {' '.join(sy.symbols)}")
    _out(f"column sums: {' '.join(map(str, rep.column_sums))}")
    _out(f"constant p: {rep.constant_p if rep.constant_p is not None else 'none'}")
    _out(f"strongly connected: {'yes' if rep.strongly_connected else 'no'}")
    if rep.predecessor_closed:
        for s, valid in rep.predecessor_closed:
            _out(f"predecessor-closed: {_set_name(sy, s)} ({'valid sub-shift' if valid else 'restriction has a zero row or column'})")
    else:
        _out("predecessor-closed: none")
    _out(f"symbol-level irreducible: {'yes' if rep.irreducible_symbol_level else 'no'}")
    _out("exitless cycles: " + (", ".join(name(c) for c in rep.exitless_cycles) or "none"))
    if rep.topologically_free:
        verdict = "topologically free"
    else:
        c = rep.exitless_cycles[0]
        verdict = f"not topologically free; witness cylinder [{sy.symbols[c[0]]}] for (n,m)=({len(c)},0)"
    if rep.predecessor_closed:
        verdict += "; predecessor-closed " + ", ".join(_set_name(sy, s) for s, _ in rep.predecessor_closed)
    _out(f"verdict: {verdict}")

    bound = 3
    found = {}
    for n in range(bound + 1):
        for m in range(n):
            w = topfree_bruteforce(A, n, m, args.depth)
            if w is not None:
                found[(n, m)] = w
    for (n, m), w in sorted(found.items()):
        _out(f"brute force: cylinder {name(w)} inside {{s^{n} x = s^{m} x}}")
    brute_free = not found
    # an exitless cycle of length q <= bound gives a witness of length <= 1
    comparable = rep.topologically_free or any(len(c) <= bound for c in rep.exitless_cycles)
    if not comparable:
        _out(f"brute force: inconclusive (shortest exitless cycle is longer than {bound})")
        return 0
    agree = brute_free == rep.topologically_free
    _out(f"brute force (n,m <= {bound}, depth <= {args.depth}): {'agrees' if agree else 'DISAGREES'}")
    return 0 if agree else 1


# -- measure --------------------------------------------------------------------


def cmd_measure(sy, args) -> int:
    w = sy.weights
    source = "file" if w is not None else "uniform"
    mu = solve_invariant(w if w is not None else uniform_weights(sy.matrix))
    _out(f"fiber weights: {source}")
    for (b, c), q in sorted(mu.weights.w.items()):
        _out(f"  w({sy.symbols[b]} -> {sy.symbols[c]}) = {q}")
    _out("invariant masses:")
    for c, q in enumerate(mu.m):
        _out(f"  m[{sy.symbols[c]}] = {q}")
    _out(f"fully supported: {'yes' if mu.fully_supported else 'no'}")
    return 0


# -- verify ---------------------------------------------------------------------


def cmd_verify(sy, args) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = run_suites(sy, names, seed=args.seed, depth=args.depth)
    ok = True
    for rep in reports:
        _out(rep.render())
        _out()
        ok &= rep.ok
    _out(f"verify: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


# -- eval -----------------------------------------------------------------------


def _print_normal_form(sy, x) -> None:
    nf = normal_form(x)
    if nf.is_zero():
        _out("0")
        return
    for d in sorted(nf.components):
        comp = nf.components[d]
        _out(f"degree {d}: N={comp.N} M={comp.M} r={comp.r}")
        for (w, wp), c in sorted(comp.coeffs.items()):
            _out(f"  [{sy.word_name(w)}] S^{comp.N} S^{comp.M}' [{sy.word_name(wp)}]: {c.to_literal()}")


def cmd_eval(sy, args) -> int:
    exprs = args.expr or []
    need = 2 if args.op in ("equals", "product") else 1
    if len(exprs) != need:
        raise InputError(f"--op {args.op} takes {need} --expr argument(s), got {len(exprs)}")
    xs = []
    for text in exprs:
        try:
            xs.append(parse_expression(text, sy))
        except ExprError as e:
            raise InputError(f"expression {text!r}: {e}") from None
    x = xs[0]
    if args.op == "normal-form":
        _print_normal_form(sy, x)
    elif args.op == "equals":
        same = equals(xs[0], xs[1])
        _out("true" if same else "false")
        return 0 if same else 1
    elif args.op == "F":
        _out(format_element(expectation_F(x), sy.symbols))
    elif args.op == "G":
        _out(format_function(expectation_G(x), sy.symbols))
    elif args.op == "adjoint":
        _out(format_element(adjoint(x), sy.symbols))
    elif args.op == "product":
        _out(format_element(xs[0] * xs[1], sy.symbols))
    return 0


# -- quotient -------------------------------------------------------------------


def _symbols_arg(sy, text: str) -> list:
    index = {s: j for j, s in enumerate(sy.symbols)}
    parts = [p.strip() for p in text.split(",")] if "," in text or not all(len(s) == 1 for s in sy.symbols) else list(text)
    out = []
    for p in parts:
        if p not in index:
            raise InputError(f"unknown symbol {p!r}")
        out.append(index[p])
    return out


def cmd_quotient(sy, args) -> int:
    A = sy.matrix
    keep = set(_symbols_arg(sy, args.keep))
    _, sub, index = restriction_hom(keep, scalar(A, 1))
    names = [None] * sub.n_symbols
    for old, new in index.items():
        names[new] = sy.symbols[old]
    _out(f"kept symbols: {_set_name(sy, keep)}")
    _out("restricted matrix: " + " ".join("".join(map(str, row)) for row in sub.entries))
    psi = lambda x: restriction_hom(keep, x)[0]
    witnesses = []
    for k in (1, 2):
        for w in A.words(k):
            if any(c not in keep for c in w):
                img = psi(func(indicator(A, w)))
                witnesses.append((w, equals(img, scalar(sub, 0))))
    for w, zero in witnesses:
        _out(f"kernel witness: 1_[{sy.word_name(w)}] -> {'0' if zero else 'NONZERO'}")
    unit_ok = equals(psi(S_star(A) * S(A)), scalar(sub, 1))
    _out(f"psi(S* S) = 1: {'yes' if unit_ok else 'no'}")
    rng = random.Random(args.seed)
    cases = 20
    bad = 0
    for _ in range(cases):
        x, y = random_element(rng, A, 2), random_element(rng, A, 2)
        bad += not (
            equals(psi(x * y), psi(x) * psi(y)) and equals(psi(x + y), psi(x) + psi(y)) and equals(psi(adjoint(x)), adjoint(psi(x)))
        )
    _out(f"*-homomorphism on random pairs: {cases - bad}/{cases}")
    proper = not equals(func(indicator(A, next(w for w, _ in witnesses))), scalar(A, 0)) if witnesses else False
    _out(f"nonzero element in the kernel: {'yes' if proper else 'no'}")
    ok = all(z for _, z in witnesses) and unit_ok and bad == 0
    return 0 if ok else 1


# -- grandeh --------------------------------------------------------------------


def cmd_grandeh(sy, args) -> int:
    if ":" not in args.point:
        raise InputError("--point must be PREPERIOD:CYCLE, e.g. ':01' or '1:0'")
    pre_text, cyc_text = args.point.split(":", 1)
    pre = _symbols_arg(sy, pre_text) if pre_text else []
    cyc = _symbols_arg(sy, cyc_text) if cyc_text else []
    if not cyc:
        raise InputError("the cycle of --point must be nonempty")
    x0 = EvPerPoint(pre, cyc)
    try:
        x0.check(sy.matrix)
    except ValueError as e:
        raise InputError(f"point {args.point}: {e}") from None
    try:
        h = grande_h(sy.matrix, x0, args.n, args.m, max_depth=args.depth)
    except SearchFailure as e:
        print(f"error: {e}", file=_sys.stderr)
        return 1
    w = next(iter(w for w, _ in h.items()))
    _out(f"point: {sy.word_name(x0.preperiod)}:{sy.word_name(x0.cycle)}")
    _out(f"h = 1_[{sy.word_name(w)}]")
    _out(f"h S^{args.n} S^{args.m}' h = 0: verified")
    return 0


# -- entry ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sftcross", description="Exact computations in crossed products of shift spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="topological freeness and irreducibility")
    a.add_argument("file")
    a.add_argument("--depth", type=int, default=4, help="brute-force cylinder depth")

    m = sub.add_parser("measure", help="exact invariant measure")
    m.add_argument("file")

    v = sub.add_parser("verify", help="run identity suites")
    v.add_argument("file")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--depth", type=int, default=3)

    e = sub.add_parser("eval", help="evaluate element expressions")
    e.add_argument("file")
    e.add_argument("--expr", action="append")
    e.add_argument("--op", choices=("normal-form", "equals", "F", "G", "adjoint", "product"), required=True)

    q = sub.add_parser("quotient", help="restriction to an invariant sub-shift")
    q.add_argument("file")
    q.add_argument("--keep", required=True, help="kept symbols, e.g. 0 or a,b")
    q.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("grandeh", help="cylinder h with h S^n S*^m h = 0 around a point")
    g.add_argument("file")
    g.add_argument("--point", required=True, help="PREPERIOD:CYCLE")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--depth", type=int, default=8, help="maximal cylinder depth")
    return p


_COMMANDS = {
    "analyze": cmd_analyze,
    "measure": cmd_measure,
    "verify": cmd_verify,
    "eval": cmd_eval,
    "quotient": cmd_quotient,
    "grandeh": cmd_grandeh,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    if getattr(args, "depth", 0) is not None and getattr(args, "depth", 0) < 0:
        print("error: --depth must be nonnegative", file=_sys.stderr)
        return 2
    try:
        sy = load_system(args.file)
        return _COMMANDS[args.command](sy, args)
    except OSError as e:
        print(f"error: cannot read {args.file}: {e.strerror}", file=_sys.stderr)
    except (SystemFileError, InputError, PreconditionError, groupoid.UnsupportedMatrixError) as e:
        print(f"error: {e}", file=_sys.stderr)
    return 2


if __name__ == "__main__":
    _sys.exit(main())
