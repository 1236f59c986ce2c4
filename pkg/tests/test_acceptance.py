"""Acceptance criteria 1-9, each at its stated tolerance.

Every test appends one PASS/FAIL line to the acceptance summary printed at
the end of the pytest run, then asserts.
"""
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from corpus import family_corpus, full_corpus, random_corpus
from graphpinv import (
    adjacency_matrix,
    gen_complete,
    gen_erdos_renyi,
    gen_path,
    gen_star,
    mp_check,
    nonsingularity_test,
    pinv,
    rational_pinv,
    resolvent_identity_check,
    spectral_pinv,
    stationarity_residual,
    tikhonov_objective,
    trace_path,
)
from graphpinv.cli import main
from graphpinv.engine import tikhonov_solution
from graphpinv.oracle import rational_to_float, spectral_rank

pytestmark = pytest.mark.acceptance


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def max_diff(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


def test_criterion_1_star_golden():
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(3, 13):
        a = adjacency_matrix(gen_star(n))
        worst = max(worst, max_diff(pinv(gen_star(n)).pinv, a / (n - 1)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 1.0
    assert record(1, "star golden", ok, f"max error {worst:.2e} <= 1e-8, {elapsed:.3f}s < 1s")


def test_criterion_2_k4_golden():
    expected = np.full((4, 4), 1 / 3) - np.eye(4)
    t0 = time.perf_counter()
    x = pinv(gen_complete(4)).pinv
    elapsed = time.perf_counter() - t0
    err = max_diff(x, expected)
    ok = err <= 1e-8 and elapsed < 0.1
    assert record(2, "K4 golden", ok, f"max error {err:.2e} <= 1e-8, {elapsed:.4f}s < 0.1s")


def test_criterion_3_rank_test_agreement():
    t0 = time.perf_counter()
    mismatches = []
    if not nonsingularity_test(gen_complete(4)).nonsingular:
        mismatches.append("K4")
    for n in range(3, 13):
        if nonsingularity_test(gen_star(n)).nonsingular:
            mismatches.append(f"star-{n}")
    for name, g in random_corpus():
        full_rank = spectral_rank(adjacency_matrix(g)) == g.order
        if nonsingularity_test(g).nonsingular != full_rank:
            mismatches.append(name)
    elapsed = time.perf_counter() - t0
    ok = not mismatches and elapsed < 30
    detail = f"{len(mismatches)} mismatches {mismatches[:5]}, {elapsed:.2f}s < 30s"
    assert record(3, "rank test vs spectral rank", ok, detail)


def test_criterion_4_mp_axioms():
    t0 = time.perf_counter()
    worst, worst_name = 0.0, ""
    corpus = family_corpus(max_order=30) + random_corpus()
    for name, g in corpus:
        x = pinv(g).pinv
        r = max(mp_check(adjacency_matrix(g), x).residuals)
        if r > worst:
            worst, worst_name = r, name
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-6 and elapsed < 60
    detail = f"{len(corpus)} graphs, worst residual {worst:.2e} ({worst_name}) <= 1e-6, {elapsed:.2f}s < 60s"
    assert record(4, "Moore-Penrose axioms", ok, detail)


def test_criterion_5_oracle_triangulation():
    worst, worst_name = 0.0, ""
    corpus = full_corpus(max_order=20)
    for name, g in corpus:
        path = pinv(g).pinv
        spectral = spectral_pinv(adjacency_matrix(g))
        rat = rational_to_float(rational_pinv(g))
        d = max(max_diff(path, spectral), max_diff(path, rat), max_diff(spectral, rat))
        if d > worst:
            worst, worst_name = d, name
    ok = worst <= 1e-7
    detail = f"{len(corpus)} graphs, worst pairwise gap {worst:.2e} ({worst_name}) <= 1e-7"
    assert record(5, "oracle triangulation", ok, detail)


def test_criterion_6_convergence_rate():
    problems = []
    ratios = []
    for label, g in (("K4", gen_complete(4)), ("P3", gen_path(3))):
        a = adjacency_matrix(g)
        ref = spectral_pinv(a)
        pts = [p for p in trace_path(g, reference=ref) if p.lam >= 100]
        for lo, hi in zip(pts, pts[1:]):
            ratio = lo.error / hi.error
            ratios.append(ratio)
            if not 5 <= ratio <= 20:
                problems.append(f"{label} {lo.lam:g}->{hi.lam:g} ratio {ratio:.2f}")
        res = pinv(g)
        final = max_diff(res.pinv, ref)
        plain = max_diff(res.last_iterate, ref)
        if not final <= plain / 100:
            problems.append(f"{label} extrapolated {final:.2e} vs plain {plain:.2e}")
    ok = not problems
    detail = f"ratios in [{min(ratios):.2f}, {max(ratios):.2f}]" + (f"; {problems}" if problems else "")
    assert record(6, "convergence rate and extrapolation gain", ok, detail)


def _fd_gradient(g, lam, x, y, h):
    return np.array(
        [
            (tikhonov_objective(g, lam, x + h * e, y) - tikhonov_objective(g, lam, x - h * e, y)) / (2 * h)
            for e in np.eye(g.order)
        ]
    )


def test_criterion_7_stationarity_and_gradient():
    rng = np.random.default_rng(7)
    problems = []
    worst_stat = worst_rel = 0.0
    for trial in range(20):
        n = int(rng.integers(2, 21))
        g = gen_erdos_renyi(n, float(rng.choice([0.2, 0.5, 0.8])), seed=1000 + trial)
        lam = 10.0 ** rng.uniform(0, 8)
        y = rng.standard_normal(n)
        x = tikhonov_solution(g, lam, y)
        yinf = np.max(np.abs(y))

        stat = stationarity_residual(g, lam, x, y)
        worst_stat = max(worst_stat, stat / yinf)
        if stat > 1e-9 * yinf:
            problems.append(f"trial {trial}: stationarity {stat:.2e}")

        # the objective is quadratic, so central differences carry no
        # truncation error and a wide step keeps rounding noise eps |f| / h low.
        # At x_lam the gradient vanishes and the FD gradient must sit at that floor.
        h = 1e-2 * max(1.0, np.max(np.abs(x)))
        floor = 10 * np.finfo(float).eps * max(1.0, tikhonov_objective(g, lam, x, y)) / h
        fd0 = _fd_gradient(g, lam, x, y, h)
        if np.max(np.abs(fd0)) > floor + 2 * stat:
            problems.append(f"trial {trial}: FD gradient {np.max(np.abs(fd0)):.2e} at x_lam")

        # away from x_lam, analytic gradient 2 (R x - A y) vs central differences
        a = adjacency_matrix(g)
        xp = x + rng.standard_normal(n)
        grad = 2 * (xp / lam + a @ (a @ xp - y))
        fd = _fd_gradient(g, lam, xp, y, 1e-2 * max(1.0, np.max(np.abs(xp))))
        rel = np.max(np.abs(fd - grad)) / max(np.max(np.abs(grad)), 1e-300)
        worst_rel = max(worst_rel, rel)
        if rel > 1e-5:
            problems.append(f"trial {trial}: FD relative error {rel:.2e}")
    ok = not problems
    detail = f"worst stationarity/||y|| {worst_stat:.2e} <= 1e-9, worst FD rel {worst_rel:.2e} <= 1e-5"
    assert record(7, "stationarity and gradient", ok, detail + (f"; {problems[:3]}" if problems else ""))


def test_criterion_8_resolvent_identity():
    worst = 0.0
    corpus = full_corpus()
    for _, g in corpus:
        for lam in (1.0, 10.0, 1e3, 1e6):
            worst = max(worst, resolvent_identity_check(g, lam))
    ok = worst <= 1e-12
    assert record(8, "resolvent identity", ok, f"{len(corpus)} graphs x 4 lambdas, worst {worst:.2e} <= 1e-12")


def _cli(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "graphpinv.cli", *args], input=stdin, capture_output=True, text=True
    )


def _gen_pipe(gen_args, cmd):
    gen = _cli("gen", *gen_args)
    return _cli(*cmd, "/dev/stdin", stdin=gen.stdout)


def _pipeline_cases():
    cases = [["petersen"]]
    for n in range(1, 31):
        cases += [["star", str(n)], ["complete", str(n)], ["path", str(n)]]
        if n >= 3:
            cases.append(["cycle", str(n)])
    for n in (1, 3, 8, 30):
        cases.append(["empty", str(n)])
    for n, p in ((10, "0.2"), (20, "0.5"), (30, "0.8")):
        cases.append(["erdos-renyi", str(n), p, "--seed", "5"])
    return cases


def test_criterion_9_cli_contract(tmp_path, capsys):
    problems = []

    out = _gen_pipe(["star", "5"], ["pinv"])
    expected = np.zeros((5, 5))
    expected[0, 1:] = expected[1:, 0] = 0.25
    try:
        x = np.array([[float(v) for v in ln.split("\t")] for ln in out.stdout.splitlines()])
        err = max_diff(x, expected)
    except ValueError:
        err = np.inf
    if out.returncode != 0 or not err <= 1e-8:
        problems.append(f"star 5 pinv: exit {out.returncode}, error {err:.2e}")

    for family, n, label in (("complete", "4", "nonsingular"), ("star", "6", "singular")):
        out = _gen_pipe([family, n], ["rank-test"])
        if out.returncode != 0 or out.stdout.split()[:1] != [label]:
            problems.append(f"{family} {n} rank-test: exit {out.returncode}, output {out.stdout!r}")

    cases = _pipeline_cases()
    for k, case in enumerate(cases):
        gfile, xfile = tmp_path / f"g{k}.txt", tmp_path / f"x{k}.tsv"
        codes = (
            main(["gen", *case, "-o", str(gfile)]),
            main(["pinv", str(gfile), "-o", str(xfile)]),
            main(["verify", str(gfile), str(xfile)]),
        )
        if codes != (0, 0, 0):
            problems.append(f"{' '.join(case)}: exit codes {codes}")
    capsys.readouterr()

    ok = not problems
    detail = f"3 examples + {len(cases)} gen->pinv->verify pipelines" + (f"; {problems[:3]}" if problems else "")
    assert record(9, "CLI contract", ok, detail)
