from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from foamcalc import fixtures
from foamcalc.coeff import ParseError
from foamcalc.diagram import (
    DiagramError,
    LinkDiagram,
    linking_matrix,
    parse_braid,
    parse_pd,
    resolve,
)


def test_parse_unknot():
    d = parse_pd("U1")
    assert d.n_crossings == 0 and d.n_components == 1


def test_parse_hopf_and_trefoil_pd():
    hopf = fixtures.get("hopf_pd")
    assert hopf.n_components == 2 and hopf.writhe() == 2
    tref = fixtures.get("trefoil_pd")
    assert tref.n_components == 1 and tref.writhe() == 3


def test_pd_roundtrip():
    d = fixtures.get("figure8")
    assert parse_pd(d.to_pd_text()) == d


@pytest.mark.parametrize(
    "text",
    ["", "X+(1,2,3)", "X*(1,2,3,4)", "Y+(1,1,2,2)", "X+(1,2,3,a)"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pd(text)


def test_parse_error_reports_column():
    with pytest.raises(ParseError) as ei:
        parse_pd("X+(2,4,3,1)\n  X+(4,2,1,3) junk")
    assert (ei.value.line, ei.value.column) == (2, 15)


def test_edge_multiplicity_error():
    with pytest.raises(DiagramError, match="appears"):
        parse_pd("X+(1,2,3,4) X+(4,2,1,5)")


def test_orientation_error():
    # right signs would be +,+; flipping one makes an edge incoming twice
    with pytest.raises(DiagramError, match="orientation"):
        parse_pd("X+(2,4,3,1) X-(4,2,1,3)")


def test_braids():
    assert parse_braid("s1 s1", 2).n_components == 2
    t = parse_braid("s1 s1 s1", 2)
    assert t.n_components == 1 and t.writhe() == 3
    u = parse_braid("", 1)
    assert u.n_crossings == 0 and u.n_components == 1
    assert parse_braid("", 3).n_components == 3
    with pytest.raises(ParseError):
        parse_braid("s2", 2)
    with pytest.raises(ParseError):
        parse_braid("s1^2", 2)


def test_braid_and_pd_agree():
    for a, b in (("hopf", "hopf_pd"), ("trefoil", "trefoil_pd")):
        da, db = fixtures.get(a), fixtures.get(b)
        assert (da.writhe(), da.n_components) == (db.writhe(), db.n_components)
        assert linking_matrix(da) == linking_matrix(db)


def test_resolve_examples():
    r = resolve(parse_pd("U1"), ())
    assert r.n_circles == 1 and r.vertex_counts() == (0,)
    hopf = fixtures.get("hopf")
    assert resolve(hopf, (0, 0)).vertex_counts() == (0, 0)
    assert resolve(hopf, (1, 1)).vertex_counts() == (2, 2)
    with pytest.raises(ValueError):
        resolve(hopf, (0,))


def test_linking_matrix_examples():
    assert linking_matrix(parse_pd("U1")) == [[0]]
    assert linking_matrix(fixtures.get("hopf")) == [[0, 1], [1, 0]]
    assert linking_matrix(parse_pd("U2")) == [[0, 0], [0, 0]]
    assert linking_matrix(fixtures.get("torus_2_8"))[0][1] == 4
    assert linking_matrix(fixtures.get("whitehead_like")) == [[0, 0], [0, 0]]


braid_words = st.integers(2, 4).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from([1, -1])), max_size=6),
    )
)


def _word(gens):
    return " ".join(f"s{k}" + ("^-1" if e < 0 else "") for k, e in gens)


@given(braid_words, st.data())
def test_resolution_invariants(bw, data):
    n, gens = bw
    d = parse_braid(_word(gens), n)
    choice = tuple(data.draw(st.lists(st.integers(0, 1), min_size=d.n_crossings, max_size=d.n_crossings)))
    r = resolve(d, choice)
    assert all(v % 2 == 0 for v in r.vertex_counts())
    seen = sorted(e for c in r.circles for e in c.edge_ids())
    assert seen == list(d.edges)
    for k in range(d.n_crossings):
        flipped = list(choice)
        flipped[k] ^= 1
        assert abs(resolve(d, flipped).n_circles - r.n_circles) == 1


@given(braid_words)
def test_writhe_and_linking(bw):
    n, gens = bw
    d = parse_braid(_word(gens), n)
    assert d.writhe() == sum(e for _, e in gens)
    lk = linking_matrix(d)
    assert all(lk[i][j] == lk[j][i] for i in range(len(lk)) for j in range(len(lk)))
    assert parse_pd(d.to_pd_text()).writhe() == d.writhe()


def test_switch_and_smooth():
    t = fixtures.get("trefoil")
    s = t.switch(0)
    assert s.writhe() == 1 and s.n_components == 1
    sm = t.smooth(0)
    assert sm.n_crossings == 2 and sm.n_components == 2
    kink = fixtures.get("unknot_kink_pos").smooth(0)
    assert kink.n_crossings == 0 and kink.n_components == 2
