from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from arrowkh.atoms import (
    Verdict,
    atom_characteristics,
    faces_orientable,
    minimality_certificate,
    span_bound_check,
    thickness_bound_check,
    virtual_crossing_lower_bound,
)
from arrowkh.corpus import bundled, classical_corpus, corpus, random_code
from arrowkh.homology import betti_table
from arrowkh.khovanov import build_complex, verify_d_squared
from arrowkh.knotio import parse_gauss_code

random_diagrams = st.builds(random_code, st.integers(1, 6), st.integers(0, 2**32), st.integers(1, 2))


def test_trefoil_atom():
    a = atom_characteristics(bundled("trefoil"))
    assert (a.n, a.euler_characteristic, a.genus, a.orientable) == (3, 2, 0, True)


def test_virtual_trefoil_nonorientable():
    a = atom_characteristics(bundled("vtrefoil"))
    assert not a.orientable and a.genus is None and "non-orientable" in a.reason


def test_kink_atom():
    a = atom_characteristics(bundled("unknot-kink"))
    assert a.euler_characteristic == 2 and a.genus == 0


def test_disconnected_shadow():
    a = atom_characteristics(parse_gauss_code("O1+ U1+\nO2+ U2+"))
    assert a.genus is None and "not connected" in a.reason
    assert span_bound_check(parse_gauss_code("()")).verdict is Verdict.NOT_APPLICABLE


@given(random_diagrams)
def test_orientability_matches_face_orientation(d):
    a = atom_characteristics(d)
    assert a.orientable == faces_orientable(d)
    if a.genus is not None:
        assert a.euler_characteristic % 2 == 0 and a.genus >= 0


def _full_table(d):
    c = build_complex(d, "full")
    return betti_table(c) if verify_d_squared(c).ok else None


def test_virtual_crossing_bounds():
    assert virtual_crossing_lower_bound(_full_table(bundled("kishino"))) == 2
    assert virtual_crossing_lower_bound(_full_table(bundled("vtrefoil"))) == 1
    for e in classical_corpus():
        assert virtual_crossing_lower_bound(_full_table(e.diagram)) == 0
    with pytest.raises(ValueError):
        virtual_crossing_lower_bound(betti_table(build_complex(bundled("kishino"), "plain")))


def test_span_examples():
    r = span_bound_check(bundled("trefoil"))
    assert r.verdict is Verdict.HOLDS and r.values["span"] == 12 and r.values["bound"] == 12 and r.values["tight"]
    r = span_bound_check(bundled("unknot-kink"))
    assert r.values["span"] == 0 and r.values["bound"] == 4
    assert span_bound_check(bundled("vtrefoil")).verdict is Verdict.NOT_APPLICABLE


def test_thickness_examples():
    u = thickness_bound_check(bundled("unknot-kink"))
    assert u.values["thickness"] == 2 and u.values["bound"] == 2
    t = thickness_bound_check(bundled("trefoil"))
    assert t.verdict is Verdict.HOLDS


def test_minimality_examples():
    assert minimality_certificate(bundled("trefoil")).verdict is Verdict.MINIMAL
    k = minimality_certificate(bundled("unknot-kink"))
    assert k.verdict is Verdict.INCONCLUSIVE and "span 0 < 4" in k.reason
    n = minimality_certificate(bundled("kishino"))
    assert n.verdict is Verdict.NOT_APPLICABLE and "non-orientable" in n.reason
    assert "Minimal" in minimality_certificate(bundled("trefoil")).render()


def _orientable_connected(limit=40):
    found = []
    seed = 0
    while len(found) < limit and seed < 4000:
        d = random_code(3 + seed % 4, seed, 1 + seed % 2)
        a = atom_characteristics(d)
        if a.genus is not None:
            found.append((d, a))
        seed += 1
    return found


def test_bounds_hold_on_orientable_diagrams():
    genera = set()
    for d, a in _orientable_connected():
        genera.add(a.genus)
        assert span_bound_check(d, a).verdict is Verdict.HOLDS
        plain = betti_table(build_complex(d, "plain"))
        assert thickness_bound_check(d, plain, a).verdict is Verdict.HOLDS
    assert 1 in genera


def test_bounds_hold_on_corpus():
    for e in corpus(random_count=4):
        a = atom_characteristics(e.diagram)
        if a.genus is None:
            continue
        assert span_bound_check(e.diagram, a).verdict is Verdict.HOLDS, e.name
        assert thickness_bound_check(e.diagram, atom=a).verdict is Verdict.HOLDS, e.name


def test_projected_thickness_can_exceed_bound_after_virtualization():
    # genus-0 atom but the arrow polynomial sees the virtualized crossing;
    # the plain table stays on two diagonals while the full one spreads to three
    d = parse_gauss_code("U1+ O1+ O2- O3-\nU3- U2-")
    a = atom_characteristics(d)
    assert a.genus == 0
    assert thickness_bound_check(d, betti_table(build_complex(d, "plain")), a).verdict is Verdict.HOLDS
    r = thickness_bound_check(d, atom=a)
    assert r.verdict is Verdict.FAILS and r.values["thickness"] == 3
    assert "thickness 3 > 2" in minimality_certificate(d, atom=a).reason


def test_report_dicts():
    r = span_bound_check(bundled("trefoil"))
    assert r.to_dict()["verdict"] == "holds"
    assert atom_characteristics(bundled("trefoil")).to_dict()["genus"] == 0
