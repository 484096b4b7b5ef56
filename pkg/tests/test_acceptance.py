"""Acceptance criteria 1 to 10, one test each.

Every test records a single PASS/FAIL line that is printed in the pytest
terminal summary.  Running this file directly prints the same lines.
"""

from __future__ import annotations

import time
from collections import Counter

import pytest

from acceptance_registry import record
from arrowkh.atoms import (
    Verdict,
    atom_characteristics,
    minimality_certificate,
    span_bound_check,
    thickness_bound_check,
    virtual_crossing_lower_bound,
)
from arrowkh.calibration import CalibrationError, self_test
from arrowkh.corpus import bundled, classical_corpus, corpus
from arrowkh.cube import EdgeKind, build_cube
from arrowkh.homology import betti_table, euler_reconstruct
from arrowkh.khovanov import GradingSystem, build_complex, dprime_complement_check, verify_d_squared
from arrowkh.moves import random_equivalent
from arrowkh.poly import D, ArrowPolynomial, LaurentPoly
from arrowkh.statesum import (
    arrow_polynomial,
    bracket_polynomial,
    flat_specialization,
    normalized_arrow_polynomial,
)

from oracles import bracket_oracle

WALKS_PER_DIAGRAM = 50
WALK_LENGTH = 10


def _corpus():
    seen = {}
    for e in corpus() + classical_corpus():
        seen.setdefault(e.name, e)
    return list(seen.values())


CORPUS = _corpus()
CLASSICAL = [e for e in CORPUS if e.classical]


def _kishino_expected() -> ArrowPolynomial:
    return (ArrowPolynomial.from_laurent(LaurentPoly({0: 1, 4: 1, -4: 1}))
            - ArrowPolynomial.k(1, 2) * (D * D) + ArrowPolynomial.k(2) * 2)


def test_criterion_01_kishino_golden():
    t0 = time.perf_counter()
    got = arrow_polynomial(bundled("kishino"))
    dt = time.perf_counter() - t0
    ok = got == _kishino_expected() and dt < 1.0
    record(1, "Kishino arrow polynomial", ok, str(got), dt)
    assert ok


def test_criterion_02_flat_kishino():
    t0 = time.perf_counter()
    got = flat_specialization(bundled("kishino"))
    expected = ArrowPolynomial.from_laurent(LaurentPoly({0: 3})) + ArrowPolynomial.k(2) * 2 \
        - ArrowPolynomial.k(1, 2) * 4
    ok = got == expected
    record(2, "flat Kishino", ok, str(got), time.perf_counter() - t0)
    assert ok


def test_criterion_03_bracket_consistency():
    t0 = time.perf_counter()
    bad = [e.name for e in CORPUS
           if e.diagram.n <= 14 and bracket_polynomial(e.diagram) != bracket_oracle(e.diagram)]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    record(3, "bracket consistency", ok, f"{len(CORPUS) - len(bad)}/{len(CORPUS)} diagrams agree", dt)
    assert ok, bad


def test_criterion_04_differential_laws():
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for e in CORPUS:
        if e.diagram.n > 12:
            continue
        cube = build_cube(e.diagram)
        for system in GradingSystem:
            c = build_complex(cube, system)
            checked += 1
            sq = verify_d_squared(c)
            if not sq.ok:
                bad.append(f"{e.name}/{system.value}: {sq.first_offense}")
            if system is not GradingSystem.PLAIN and not dprime_complement_check(c).ok:
                bad.append(f"{e.name}/{system.value}: complement")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    record(4, "differential laws", ok, f"{checked - len(bad)}/{checked} complexes clean", dt)
    assert ok, bad


def test_criterion_05_euler_reconstruction():
    t0 = time.perf_counter()
    bad = [e.name for e in CORPUS if e.diagram.n <= 12 and euler_reconstruct(build_complex(e.diagram, "full"))
           != ArrowPolynomial.from_laurent(D) * arrow_polynomial(e.diagram)]
    ok = not bad
    record(5, "Euler reconstruction", ok, f"{len(CORPUS) - len(bad)}/{len(CORPUS)} diagrams", time.perf_counter() - t0)
    assert ok, bad


def _fingerprint(d, cube_limit=14):
    cube = build_cube(d)
    tables = {}
    for system in GradingSystem:
        c = build_complex(cube, system, cube_limit)
        tables[system] = betti_table(c, True) if verify_d_squared(c).ok else None
    return normalized_arrow_polynomial(d), tables


def test_criterion_06_move_invariance():
    t0 = time.perf_counter()
    agree = Counter()
    ill = Counter()
    total = 0
    offenders: list[str] = []
    for e in CORPUS:
        if e.diagram.n > 10:
            continue
        base_w, base_t = _fingerprint(e.diagram)
        for seed in range(WALKS_PER_DIAGRAM):
            walked, trace = random_equivalent(e.diagram, WALK_LENGTH, seed=seed,
                                              max_crossings=min(14, e.diagram.n + 4))
            w, tables = _fingerprint(walked)
            total += 1
            agree["W"] += w == base_w
            for system in GradingSystem:
                if tables[system] is None or base_t[system] is None:
                    ill[system.value] += 1
                    if len(offenders) < 3:
                        offenders.append(f"{e.name} seed {seed}: {system.value} complex ill-formed")
                else:
                    agree[system.value] += tables[system] == base_t[system]
    dt = time.perf_counter() - t0
    parts = [f"W {agree['W']}/{total}"]
    for system in GradingSystem:
        s = system.value
        parts.append(f"{s} {agree[s]}/{total}" + (f" ({ill[s]} ill-formed)" if ill[s] else ""))
    ok = all(agree[k] == total for k in ["W"] + [s.value for s in GradingSystem]) and dt < 600
    record(6, "move invariance", ok, ", ".join(parts), dt)
    assert ok, "; ".join(offenders)


def test_criterion_07_additivity():
    t0 = time.perf_counter()
    edges = 0
    bad = []
    for e in CORPUS:
        if e.diagram.n > 12:
            continue
        cube = build_cube(e.diagram)
        for edge in cube.edges:
            src = [cube.states[edge.source].loops[k].arrow for k in edge.source_loops]
            tgt = [cube.states[edge.target].loops[k].arrow for k in edge.target_loops]
            if edge.kind is EdgeKind.MERGE21:
                (p, q), r = src, tgt[0]
            elif edge.kind is EdgeKind.SPLIT12:
                (p, q), r = tgt, src[0]
            else:
                continue
            edges += 1
            if r not in (abs(p - q), p + q) or (r - p - q) % 2:
                bad.append(f"{e.name} {edge}")
    ok = not bad
    record(7, "additivity laws", ok, f"{edges - len(bad)}/{edges} merge/split edges", time.perf_counter() - t0)
    assert ok, bad[:3]


def _full(d):
    c = build_complex(d, "full")
    return betti_table(c) if verify_d_squared(c).ok else None


def test_criterion_08_bounds():
    t0 = time.perf_counter()
    problems = []
    vc_k = virtual_crossing_lower_bound(_full(bundled("kishino")))
    vc_v = virtual_crossing_lower_bound(_full(bundled("vtrefoil")))
    if (vc_k, vc_v) != (2, 1):
        problems.append(f"vc bounds {vc_k}, {vc_v}")
    applicable = 0
    for e in CORPUS:
        atom = atom_characteristics(e.diagram)
        if atom.genus is None:
            continue
        applicable += 1
        if span_bound_check(e.diagram, atom).verdict is not Verdict.HOLDS:
            problems.append(f"{e.name}: span")
        if thickness_bound_check(e.diagram, _full(e.diagram), atom).verdict is not Verdict.HOLDS:
            problems.append(f"{e.name}: thickness")
    minimal = minimality_certificate(bundled("trefoil")).verdict is Verdict.MINIMAL
    if not minimal:
        problems.append("trefoil not Minimal")
    ok = not problems
    detail = f"vc kishino={vc_k} vtrefoil={vc_v}, bounds on {applicable} orientable diagrams, trefoil Minimal={minimal}"
    record(8, "bounds", ok, detail, time.perf_counter() - t0)
    assert ok, problems


def test_criterion_09_classical_degeneration():
    t0 = time.perf_counter()
    bad = []
    for e in CLASSICAL:
        cube = build_cube(e.diagram)
        if any(loop.arrow for st in cube.states for loop in st.loops):
            bad.append(f"{e.name}: nonzero arrow")
        plain = betti_table(build_complex(cube, "plain"))
        full = betti_table(build_complex(cube, "full"))
        if any(k.multi or k.vect for k in full.entries) or full.entries != plain.entries:
            bad.append(f"{e.name}: full differs from plain")
    ok = not bad
    record(9, "classical degeneration", ok, f"{len(CLASSICAL) - len(bad)}/{len(CLASSICAL)} classical diagrams",
           time.perf_counter() - t0)
    assert ok, bad


def test_criterion_10_calibration_self_test():
    t0 = time.perf_counter()
    try:
        result = self_test()
        ok, detail = True, f"survivors {', '.join(result.survivors)} of {len(result.flags)}"
    except CalibrationError as exc:
        ok, detail = False, str(exc).splitlines()[0]
    record(10, "calibration self-test", ok, detail, time.perf_counter() - t0)
    assert ok


if __name__ == "__main__":  # pragma: no cover
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider", *sys.argv[1:]]))
