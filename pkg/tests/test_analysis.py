import json

import pytest
from hypothesis import given, strategies as st

from foamcalc import fixtures
from foamcalc.analysis import (
    CanonicalColoring,
    RepeatedRootError,
    SurfaceKnot,
    coloring_degree_from_resolution,
    evaluate_pairing,
    predict_colorings,
    repeated_root_homology,
    root_shift,
    surface_invariant,
    trivial_surface_pairing,
    verify_structure,
)
from foamcalc.coeff import GaussPoly, GaussRat, I, gp_degree
from foamcalc.complex import build_complex, homology

h = GaussPoly.monomial(0, 1)
a = GaussPoly.monomial(1, 0)
disc = h * h + a.scale(4)


def test_surface_invariants():
    for g in (0, 2, 4):
        assert surface_invariant(SurfaceKnot(g)) == GaussPoly()
    assert surface_invariant(SurfaceKnot(1)) == GaussPoly.const(2)
    assert surface_invariant(SurfaceKnot(3)) == disc.scale(2)
    with pytest.raises(ValueError):
        SurfaceKnot(-1)


@pytest.mark.parametrize("g", [1, 3, 5, 7])
def test_surface_invariant_degree(g):
    assert gp_degree(surface_invariant(SurfaceKnot(g))) == ("homogeneous", 2 * (g - 1))


@pytest.mark.parametrize("genus", [0, 2, 4, 6])
@pytest.mark.parametrize("gen", ["one", "X"])
def test_pairing_matches_foam_evaluation(genus, gen):
    assert trivial_surface_pairing(genus, gen) == evaluate_pairing(genus, gen)


def test_pairing_table():
    assert trivial_surface_pairing(0, "X") == GaussPoly.const(1)
    assert trivial_surface_pairing(0, "one") == GaussPoly()
    assert trivial_surface_pairing(2, "X") == disc
    with pytest.raises(ValueError):
        trivial_surface_pairing(3, "X")
    with pytest.raises(ValueError):
        trivial_surface_pairing(2, "Y")


def _degrees(name, reading="ordered"):
    return sorted(deg for _, deg in predict_colorings(fixtures.get(name), 1, 0, reading))


def test_prediction_examples():
    assert _degrees("unknot") == [0, 0]
    assert _degrees("hopf") == [-4, -4, 0, 0]
    assert _degrees("hopf", "unordered") == [-2, -2, 0, 0]
    assert _degrees("unlink2") == [0, 0, 0, 0]
    with pytest.raises(RepeatedRootError):
        predict_colorings(fixtures.get("hopf"), 0, 0)
    with pytest.raises(ValueError):
        predict_colorings(fixtures.get("hopf"), 1, 0, "both")


@pytest.mark.parametrize("name", ["hopf", "whitehead_like", "unlink2", "torus_2_8", "hopf_r2"])
def test_prediction_properties(name):
    d = fixtures.get(name)
    preds = predict_colorings(d, 1, 0)
    assert len(preds) == 2 ** d.n_components
    for col, deg in preds:
        assert deg % 2 == 0
        if len(set(col.assignment)) == 1:
            assert deg == 0
    swap = {"alpha": "beta", "beta": "alpha"}
    table = {col.assignment: deg for col, deg in preds}
    for col, deg in preds:
        assert table[tuple(swap[c] for c in col.assignment)] == deg


@pytest.mark.parametrize("name", ["hopf", "whitehead_like", "torus_2_8", "hopf_r2"])
def test_unordered_reading_matches_resolution_degree(name):
    d = fixtures.get(name)
    for col, deg in predict_colorings(d, 1, 0, "unordered"):
        assert coloring_degree_from_resolution(d, col) == deg


@pytest.mark.parametrize("name", ["unknot", "unlink2", "hopf", "trefoil", "figure8"])
def test_verify_structure(name):
    d = fixtures.get(name)
    rep = verify_structure(d, 1, 0)
    assert rep.passed and rep.total_dim == 2 ** d.n_components
    data = json.loads(json.dumps(rep.to_json()))
    assert data["pass"] is True and data["n"] == d.n_components


def test_hopf_needs_unordered_reading():
    rep = verify_structure(fixtures.get("hopf"), 1, 0)
    assert rep.computed == (-2, -2, 0, 0)
    assert rep.predicted == (-4, -4, 0, 0)
    assert rep.reading == "unordered" and rep.erratum


def test_other_distinct_roots():
    rep = verify_structure(fixtures.get("hopf"), GaussRat(2), GaussRat(1))  # roots 2, -1
    assert rep.passed
    rep = verify_structure(fixtures.get("trefoil"), 0, 1)  # roots 0, 1
    assert rep.passed and rep.computed == (0, 0)


def test_repeated_root():
    assert root_shift(-1, 2) == GaussRat(1)
    assert root_shift(GaussRat(0, 0), 0) == GaussRat(0)
    with pytest.raises(ValueError):
        root_shift(1, 0)
    for name in ("hopf", "trefoil"):
        d = fixtures.get(name)
        assert repeated_root_homology(d, -1, 2) == homology(build_complex(d), -1, 2)
        # h = 2i, a = 1 also has a double root
        assert repeated_root_homology(d, 1, GaussRat(0, 2)) == homology(build_complex(d), 1, GaussRat(0, 2))


@given(st.lists(st.sampled_from(["alpha", "beta"]), min_size=1, max_size=4))
def test_coloring_str(assignment):
    col = CanonicalColoring(tuple(assignment))
    assert len(str(col)) == len(assignment)
    assert sorted(col.colored("alpha") + col.colored("beta")) == list(range(len(assignment)))
