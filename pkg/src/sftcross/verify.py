"""Identity suites run by ``sftcross verify``.

Each suite takes a system, a seed and a maximal random-function depth and
returns a :class:`~sftcross.report.Report`.  Case counts are fixed, so a
report depends only on its inputs.
"""
from __future__ import annotations

import random

from . import groupoid
from .crossed import (
    S,
    S_star,
    adjoint,
    equals,
    expectation_F,
    expectation_G,
    func,
    main_k0,
    raise_level,
    scalar,
    toeplitz_redundancy_witness,
    v_partition_check,
    verify_finite_index_identities,
    CrossedElement,
)
from .cylfun import alpha, constant, expectation_En, indicator, quasi_basis, quasi_basis_check, transfer
from .gns import act, av_relation_checks, equality_oracle, GnsVector
from .measure import invariance_checks, solve_invariant, uniform_weights
from .randgen import random_cylfun, random_element
from .report import Report

SUITES = ("transfer", "quasibasis", "redundancy", "ck", "gns", "groupoid")


def _count(rep: Report, name: str, results) -> None:
    results = list(results)
    bad = sum(not r for r in results)
    rep.add(name, bad == 0, f"{len(results) - bad}/{len(results)}")


def suite_transfer(sys, seed: int = 0, depth: int = 3, cases: int = 30) -> Report:
    A = sys.matrix
    rng = random.Random(seed)
    rep = Report("transfer")
    weight_sets = [("uniform", uniform_weights(A))]
    if sys.weights is not None:
        weight_sets.append(("file", sys.weights))
    for label, w in weight_sets:
        pairs = [(random_cylfun(rng, A, depth), random_cylfun(rng, A, depth)) for _ in range(cases)]
        _count(rep, f"L(f alpha(g)) = L(f) g [{label}]", (transfer(f * alpha(g), w) == transfer(f, w) * g for f, g in pairs))
        rep.add(f"L(1) = 1 [{label}]", transfer(constant(A, 1), w) == 1)
        _count(
            rep,
            f"L positive on |f|^2 [{label}]",
            (all(v.is_nonneg_real() for _, v in transfer(f.conj() * f, w).items()) for f, _ in pairs),
        )
        for n in range(1, min(depth, 3) + 1):
            fs = [random_cylfun(rng, A, depth) for _ in range(cases // 3)]
            gs = [alpha(random_cylfun(rng, A, depth), n) for _ in range(cases // 3)]
            _count(
                rep,
                f"E_{n} idempotent, bimodular, unital [{label}]",
                (
                    expectation_En(expectation_En(f, n, w), n, w) == expectation_En(f, n, w)
                    and expectation_En(g * f * h, n, w) == g * expectation_En(f, n, w) * h
                    and expectation_En(constant(A, 1), n, w) == 1
                    for f, g, h in zip(fs, gs, reversed(gs))
                ),
            )
        mu = solve_invariant(w)
        rep.extend(_relabel(invariance_checks(mu, depth=depth, cases=cases // 2, seed=seed), f" [{label}]"))
    return rep


def _relabel(rep: Report, suffix: str) -> Report:
    out = Report(rep.title)
    for c in rep.checks:
        if c.skipped:
            out.skip(c.name + suffix, c.detail)
        else:
            out.add(c.name + suffix, c.passed, c.detail)
    return out


def suite_quasibasis(sys, seed: int = 0, depth: int = 3, cases: int = 30) -> Report:
    A = sys.matrix
    rng = random.Random(seed)
    qb = quasi_basis(A)
    rep = Report("quasi-basis")
    _count(rep, "f = sum u_c E(u_c* f)", (quasi_basis_check(random_cylfun(rng, A, depth)) for _ in range(cases)))
    rep.add("ind(E) = Lam", qb.indE == qb.Lam)
    rep.add("Lam = number of preimages", all(qb.Lam((b, c)) == A.column_sums[c] for b, c in A.words(2)))
    for n in range(1, min(depth, 3) + 1):
        rep.add(f"sum v_(i) v_(i)* = 1 at level {n}", v_partition_check(A, n))
    xs = []
    for _ in range(cases // 3):
        x = random_element(rng, A, 2, max_depth=min(depth, 2))
        xs.append(expectation_F(x) if expectation_F(x).terms else func(random_cylfun(rng, A, depth)))
    ok = []
    for x in xs:
        try:
            expectation_G(x, check_vform=True)
            ok.append(True)
        except ArithmeticError:
            ok.append(False)
    _count(rep, "G formula = sum v_(i) F(x) v_(i)*", ok)
    xs = [random_element(rng, A, 2, max_depth=min(depth, 2)) for _ in range(cases // 3)]
    _count(rep, "G o F = G", (expectation_G(expectation_F(x)) == expectation_G(x) for x in xs))
    _count(rep, "F idempotent", (equals(expectation_F(expectation_F(x)), expectation_F(x)) for x in xs))
    return rep


def suite_redundancy(sys, seed: int = 0, depth: int = 3, cases: int = 20) -> Report:
    A = sys.matrix
    rng = random.Random(seed)
    rep = Report("redundancy")
    one = scalar(A, 1)
    rep.add("1 = sum u_c S S* u_c*", equals(one, main_k0(A)))
    _count(
        rep,
        f"(1 - k0) e_w S = 0 in raw arithmetic, |w| <= {depth}",
        (toeplitz_redundancy_witness(indicator(A, w)) for k in range(depth + 1) for w in A.words(k)),
    )
    _count(
        rep,
        "(1 - k0) b S = 0 for random b",
        (toeplitz_redundancy_witness(random_cylfun(rng, A, depth)) for _ in range(cases)),
    )
    xs = [random_element(rng, A, 2, max_depth=min(depth, 2)) for _ in range(cases)]
    _count(
        rep,
        "raise_level preserves the element",
        (equals(x, CrossedElement(A, [t for m in x.terms for t in raise_level(m).terms])) for x in xs),
    )
    fs = [random_cylfun(rng, A, depth) for _ in range(cases)]
    _count(rep, "S a = alpha(a) S", (equals(S(A) * func(f), func(alpha(f)) * S(A)) for f in fs))
    _count(rep, "S* a S = L(a)", (equals(S_star(A) * func(f) * S(A), func(transfer(f))) for f in fs))
    rep.add("S* S = 1", equals(S_star(A) * S(A), one))
    triples = [tuple(random_element(rng, A, 1, max_depth=min(depth, 2)) for _ in range(3)) for _ in range(cases)]
    _count(rep, "associativity", (equals((x * y) * z, x * (y * z)) for x, y, z in triples))
    _count(rep, "(xy)* = y* x*", (equals(adjoint(x * y), adjoint(y) * adjoint(x)) for x, y, _ in triples))
    return rep


def suite_ck(sys, seed: int = 0, depth: int = 3) -> Report:
    return verify_finite_index_identities(sys.matrix, n_max=min(depth, 3))


def _oracle_pairs(rng, A, cases, depth):
    pairs = []
    for k in range(cases):
        x = random_element(rng, A, 2, max_depth=min(depth, 2))
        if k % 2:
            y = CrossedElement(A, [t for m in x.terms for t in raise_level(m).terms])
            if k % 4 == 3:
                y = y + func(random_cylfun(rng, A, 1, nonzero=True)) * S(A)
        else:
            y = random_element(rng, A, 2, max_depth=min(depth, 2))
        pairs.append((x, y))
    return pairs


def suite_gns(sys, seed: int = 0, depth: int = 3, cases: int = 20) -> Report:
    A = sys.matrix
    rng = random.Random(seed)
    rep = Report("gns")
    if sys.weights is not None:
        mu = solve_invariant(sys.weights)
        if mu.fully_supported:
            rep.extend(_relabel(av_relation_checks(mu, depth=depth, cases=cases, seed=seed), " [file]"))
        else:
            rep.skip("relations [file]", "invariant measure of the file weights is not fully supported")
    # products in the crossed product use the uniform transfer, so the
    # representation property and the oracle need the uniform measure
    umu = solve_invariant(uniform_weights(A))
    if not umu.fully_supported:
        rep.skip("representation checks [uniform]", "uniform invariant measure is not fully supported")
        return rep
    rep.extend(_relabel(av_relation_checks(umu, depth=depth, cases=cases, seed=seed), " [uniform]"))
    triples = [
        (random_element(rng, A, 1, max_depth=2), random_element(rng, A, 1, max_depth=2), random_cylfun(rng, A, depth))
        for _ in range(cases // 2)
    ]
    _count(
        rep,
        "pi~(xy) = pi~(x) pi~(y)",
        (
            act(x * y, GnsVector(A, [(f, 0)]), umu) == act(x, act(y, GnsVector(A, [(f, 0)]), umu), umu)
            for x, y, f in triples
        ),
    )
    pairs = _oracle_pairs(rng, A, cases, depth)
    _count(rep, "equality oracle agrees with equals", (equals(x, y) == equality_oracle(x, y, umu) for x, y in pairs))
    return rep


def suite_groupoid(sys, seed: int = 0, depth: int = 3, cases: int = 20) -> Report:
    A = sys.matrix
    rep = Report("groupoid")
    if A.constant_p is None:
        rep.skip("groupoid relations", f"column sums {A.column_sums} are not constant")
        return rep
    rep.extend(groupoid.verify_groupoid_relations(A, cases=cases // 2, seed=seed, depth=depth))
    rng = random.Random(seed)
    xs = [(random_element(rng, A, 2, max_depth=2), random_element(rng, A, 2, max_depth=2)) for _ in range(cases // 2)]
    phi = groupoid.phi_iso
    _count(rep, "phi(xy) = phi(x) phi(y)", (groupoid.normalize_equals(phi(x * y), phi(x) * phi(y)) for x, y in xs))
    _count(rep, "phi(x*) = phi(x)*", (groupoid.normalize_equals(phi(adjoint(x)), phi(x).star()) for x, _ in xs))
    pairs = _oracle_pairs(rng, A, cases, depth)
    _count(
        rep,
        "groupoid equality agrees with equals",
        (equals(x, y) == groupoid.normalize_equals(phi(x), phi(y)) for x, y in pairs),
    )
    return rep


_RUNNERS = {
    "transfer": suite_transfer,
    "quasibasis": suite_quasibasis,
    "redundancy": suite_redundancy,
    "ck": suite_ck,
    "gns": suite_gns,
    "groupoid": suite_groupoid,
}


def run_suites(sys, names, seed: int = 0, depth: int = 3) -> list:
    """Reports in the order of ``names``; each suite gets its own seeded stream."""
    return [_RUNNERS[n](sys, seed=seed, depth=depth) for n in names]
