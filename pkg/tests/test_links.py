import warnings

import pytest
import sympy

from infdihedral.fixtures import NAMES, fixture_text, load_fixture
from infdihedral.links import (
    PDError,
    analyze,
    branched_double_cover_h1,
    build_diagram,
    class_verdict,
    corollary_1_2,
    linking_matrix,
    meridian_character,
    parse_pd,
    wirtinger,
)
from infdihedral.presentations import b1, evaluate_character
from infdihedral.schreier import b1_of_subgroup, reidemeister_schreier

from oracles import coloring_determinant, fox_alexander_polynomial

# crossing signs in listing order, cross-checked against spherogram
SIGNS = {
    "unknot": (1,),
    "trefoil": (-1, -1, -1),
    "figure_eight": (-1, -1, 1, 1),
    "hopf": (1, 1),
    "whitehead": (1, 1, -1, -1, -1),
    "borromean": (1, 1, -1, -1, 1, -1),
    "unlink2": (),
    "unlink3": (),
}

COMPONENTS = {
    "unknot": 1, "trefoil": 1, "figure_eight": 1, "hopf": 2,
    "whitehead": 2, "borromean": 3, "unlink2": 2, "unlink3": 3,
}

KINKED_TREFOIL = "X(1,4,2,5) X(3,8,4,1) X(5,2,6,3) X(6,8,7,7)"


@pytest.mark.parametrize(
    "text, message",
    [
        ("X(1,2,3)", "need four labels"),
        ("X(1,1,2,3)", "do not appear exactly twice"),
        ("X(1,2,3,4) foo", "unexpected text"),
        ("X(0,1,1,0)", "not positive"),
        ("", "empty diagram"),
        ("X(1,a,2,2)", "malformed tuple"),
        ("X(1,2,2,1) X(5,3,3,5)", "contiguous"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(PDError, match=message):
        parse_pd(text)


def test_inconsistent_orientation():
    with pytest.raises(PDError, match="under-strand"):
        build_diagram(parse_pd("X(1,3,2,4) X(1,3,2,4)"))


def test_parse_variants_agree():
    a = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
    b = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    assert a == b
    assert parse_pd(a.render()) == a
    assert parse_pd("O(2)").free_loops == 2


@pytest.mark.parametrize("name", NAMES)
def test_signs_and_components(name, diagrams):
    D = diagrams[name]
    assert D.signs == SIGNS[name]
    assert D.n_components == COMPONENTS[name]


@pytest.mark.parametrize("name", [n for n in NAMES if not n.startswith("unlink")])
def test_signs_match_spherogram(name, diagrams):
    spherogram = pytest.importorskip("spherogram")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        L = spherogram.Link([list(c) for c in parse_pd(fixture_text(name)).crossings])
    assert tuple(c.sign for c in L.crossings) == diagrams[name].signs
    assert [list(r) for r in L.linking_matrix()] == linking_matrix(diagrams[name]).to_rows()


@pytest.mark.parametrize(
    "name, lk",
    [("hopf", 1), ("whitehead", 0), ("unlink2", 0)],
)
def test_two_component_linking(name, lk, diagrams):
    M = linking_matrix(diagrams[name])
    assert M[0, 1] == M[1, 0] == lk


def test_borromean_pairwise_unlinked(diagrams):
    assert linking_matrix(diagrams["borromean"]).is_zero()


@pytest.mark.parametrize("name", NAMES)
def test_wirtinger_shape(name, diagrams, wirtingers):
    D, W = diagrams[name], wirtingers[name]
    P = W.presentation
    assert b1(P) == D.n_components
    assert len(P.relators) == len(D.pd.crossings)
    assert len(W.meridians) == len(W.longitudes) == D.n_components
    n = P.n_generators
    # longitudes are null-homologous in their own component's torus
    for i, lon in enumerate(W.longitudes):
        sums = lon.exponent_sums(n)
        own = sum(sums[a] for a in range(n) if _component_of_generator(D, W, a) == i)
        assert own == 0


def _component_of_generator(D, W, a):
    for lab, arc in W.arc_of_edge.items():
        if arc == a:
            return D.component_of(lab)
    return len(D.components) + (a - (W.presentation.n_generators - D.pd.free_loops))


def test_trefoil_relator_redundancy(wirtingers):
    P = wirtingers["trefoil"].presentation
    # any one Wirtinger relator follows from the others
    from infdihedral.presentations import Presentation
    Q = Presentation(P.generator_names, P.relators[:-1])
    assert b1(Q) == b1(P) == 1


@pytest.mark.parametrize(
    "name, poly",
    [("trefoil", [1, -1, 1]), ("figure_eight", [1, -3, 1])],
)
def test_fox_alexander(name, poly, wirtingers):
    t = sympy.symbols("t")
    got = fox_alexander_polynomial(wirtingers[name].presentation)
    assert got == sympy.Poly(poly, t)


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure_eight", "hopf", "whitehead", "borromean"])
def test_branched_cover_order_matches_coloring_determinant(name, diagrams, wirtingers):
    D, W = diagrams[name], wirtingers[name]
    bc = branched_double_cover_h1(D, W)
    assert bc.b1 == 0
    assert bc.order == coloring_determinant(D, W)


@pytest.mark.parametrize("name, b1_hat", [("unlink2", 1), ("unlink3", 2)])
def test_branched_cover_of_unlinks(name, b1_hat, diagrams):
    bc = branched_double_cover_h1(diagrams[name])
    assert bc.b1 == b1_hat
    assert bc.order is None
    assert bc.alexander_at_minus_one == 0


@pytest.mark.parametrize(
    "name, factors",
    [("trefoil", (3,)), ("figure_eight", (5,)), ("hopf", (2,)),
     ("whitehead", (8,)), ("borromean", (4, 4)), ("unknot", ())],
)
def test_branched_cover_invariant_factors(name, factors, diagrams):
    assert branched_double_cover_h1(diagrams[name]).invariant_factors == factors


def test_alexander_at_minus_one_torres(diagrams):
    assert branched_double_cover_h1(diagrams["trefoil"]).alexander_at_minus_one == 3
    assert branched_double_cover_h1(diagrams["hopf"]).alexander_at_minus_one == 1
    assert branched_double_cover_h1(diagrams["whitehead"]).alexander_at_minus_one == 4


def test_meridian_characters(diagrams, wirtingers):
    D, W = diagrams["whitehead"], wirtingers["whitehead"]
    chi = meridian_character(D, {1}, W)
    for lab in D.components[1]:
        assert chi.values[W.arc_of_edge[lab]] == 1
    for lab in D.components[0]:
        assert chi.values[W.arc_of_edge[lab]] == 0
    assert all(evaluate_character(chi, r) == 0 for r in W.presentation.relators)
    with pytest.raises(ValueError):
        meridian_character(D, set(), W)
    with pytest.raises(ValueError):
        meridian_character(D, {2}, W)


@pytest.mark.parametrize(
    "name, b1s",
    [
        ("whitehead", {(0,): 3, (1,): 3, (0, 1): 2}),
        ("hopf", {(0,): 2, (1,): 2, (0, 1): 2}),
        ("borromean", {(0,): 5, (1,): 5, (2,): 5, (0, 1): 4, (0, 2): 4, (1, 2): 4, (0, 1, 2): 3}),
        ("unlink2", {(0,): 3, (1,): 3, (0, 1): 3}),
    ],
)
def test_class_cover_betti(name, b1s, diagrams, wirtingers):
    D, W = diagrams[name], wirtingers[name]
    for comps, expected in b1s.items():
        S = reidemeister_schreier(W.presentation, meridian_character(D, comps, W))
        assert b1_of_subgroup(S) == expected


@pytest.mark.parametrize(
    "name, expected",
    [("unknot", False), ("trefoil", False), ("figure_eight", False), ("hopf", False),
     ("whitehead", True), ("borromean", True), ("unlink2", True), ("unlink3", True)],
)
def test_corollary_and_group_agree(name, expected, diagrams):
    A = analyze(diagrams[name])
    assert corollary_1_2(diagrams[name]).answer == expected
    assert A.group_verdict.answer == expected
    assert all(A.consistency_flags.values()), A.consistency_flags


def test_lifted_tori(diagrams):
    A = analyze(diagrams["unlink2"])
    assert A.class_report((0, 1)).lifted_tori == 2
    assert A.class_report((0,)).lifted_tori == 3
    W = analyze(diagrams["whitehead"])
    assert W.class_report((0,)).lifted_tori == 3
    assert W.class_report((0, 1)).lifted_tori == 2
    H = analyze(diagrams["hopf"])
    assert H.class_report((0,)).lifted_tori == 2


def test_whitehead_class_verdicts(diagrams):
    assert class_verdict(diagrams["whitehead"], {1}).answer
    assert class_verdict(diagrams["whitehead"], {0}).answer
    assert not class_verdict(diagrams["whitehead"], {0, 1}).answer


def test_kinked_trefoil_matches_trefoil(diagrams):
    D = build_diagram(parse_pd(KINKED_TREFOIL))
    A, B = analyze(D), analyze(diagrams["trefoil"])
    strip = lambda a: [{k: v for k, v in c.items() if k != "character"} for c in a.to_json()["classes"]]
    assert strip(A) == strip(B)
    assert A.branched_cover == B.branched_cover
    assert A.group_verdict.answer == B.group_verdict.answer
    assert sum(D.signs) == sum(diagrams["trefoil"].signs) + 1


def test_fixture_loader():
    assert set(NAMES) == set(COMPONENTS)
    with pytest.raises(KeyError):
        load_fixture("no_such_link")
