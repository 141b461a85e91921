import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infdihedral.dihedral import (
    A_GEN,
    AB,
    B_GEN,
    IDENTITY,
    DInfElement,
    InvariantError,
    admits_pair_dual_to,
    construct_surjection,
    decide,
    evaluate_word,
    find_psi,
    generates,
    images_from_json,
    psi_value,
    tau_action,
    verify_surjection,
)
from infdihedral.intlinalg import IntMatrix
from infdihedral.presentations import (
    Mod2Character,
    Word,
    b1,
    enumerate_characters,
    parse_presentation,
)
from infdihedral.schreier import b1_of_subgroup, reidemeister_schreier

from conftest import MODEL_GROUPS, corpus_presentations
from oracles import finite_group_order, generated_subgroup_bfs

elements = st.builds(DInfElement, st.integers(0, 1), st.integers(-20, 20))


@given(elements, elements, elements)
def test_group_law(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * IDENTITY == x == IDENTITY * x
    assert (x * x.inverse()).is_identity()


def test_presentation_relations_hold():
    assert (A_GEN * A_GEN).is_identity()
    assert (B_GEN * B_GEN).is_identity()
    assert A_GEN * B_GEN == AB
    # reflections invert translations
    assert A_GEN * AB * A_GEN == AB.inverse()


@given(elements)
def test_reflections_are_involutions(x):
    if x.flip:
        assert (x * x).is_identity()
    elif x.shift:
        assert not (x * x).is_identity()


@pytest.mark.parametrize(
    "images, expected",
    [
        ([A_GEN, B_GEN], True),
        ([A_GEN, DInfElement(1, 2)], False),
        ([A_GEN, DInfElement(0, 3), DInfElement(0, 2)], True),
        ([AB, AB], False),
        ([DInfElement(1, 5), DInfElement(1, 6)], True),
    ],
)
def test_generates(images, expected):
    assert generates(images) == expected


@settings(max_examples=150, deadline=None)
@given(st.lists(elements, min_size=1, max_size=3))
def test_generates_matches_bfs(images):
    # both generators of the whole group show up within a small shift window
    found = generated_subgroup_bfs(images, bound=45)
    assert generates(images) == (A_GEN in found and B_GEN in found)


def test_evaluate_word():
    P = parse_presentation("<a,b|a^2,b^2>")
    w = P.relators[0]
    assert evaluate_word(w, [A_GEN, B_GEN]).is_identity()
    assert evaluate_word(Word.of([(0, 1), (1, 1)] * 3), [A_GEN, B_GEN]) == DInfElement(0, 3)


def test_tau_free_group_swap():
    F2 = parse_presentation("<x,y|>")
    T = tau_action(reidemeister_schreier(F2, Mod2Character((1, 0))))
    assert T.free_rank == 3
    assert T.torsion == ()
    A = T.A.to_rows()
    # an involution whose +1 eigenspace has rank b1(F2) = 2
    assert sum(A[i][i] for i in range(3)) == 1
    assert all(sorted(map(abs, r)) == [0, 0, 1] for r in A)


def test_find_psi_on_swap():
    class Stub:
        free_rank = 2
        A = IntMatrix.from_rows([[0, 1], [1, 0]])

    assert find_psi(Stub()) == (1, -1)


def test_find_psi_identity_is_absent():
    class Stub:
        free_rank = 2
        A = IntMatrix.identity(2)

    assert find_psi(Stub()) is None
    with pytest.raises(InvariantError):
        find_psi(Stub(), b1_parent=1)


def test_construct_free_group():
    F2 = parse_presentation("<x,y|>")
    s = construct_surjection(F2, Mod2Character((1, 0)))
    assert s is not None and s.verified
    assert s.images[0].flip == 1 and s.images[1].flip == 0
    assert verify_surjection(F2, s.images)


def test_dihedral_identity_surjection():
    P = parse_presentation("<a,b|a^2,b^2>")
    v = decide(P)
    assert v.answer
    s = v.surjection
    assert s.chi.values == (1, 1)
    # a -> a, b -> a(ab)^{+-1}; the map is an automorphism
    assert s.images[0] == A_GEN
    assert s.images[1].flip == 1 and abs(s.images[1].shift) == 1


@pytest.mark.parametrize(
    "name, expected",
    [
        ("Z", False), ("F2", True), ("F3", True), ("ZxZ", False), ("D_inf", True),
        ("trefoil_group", False), ("Z4", False), ("S3", False), ("Q8", False),
        ("D_inf_x_Z2", True), ("Z2_free_Z", True), ("BS12", False), ("klein_bottle", True),
    ],
)
def test_model_verdicts(name, expected):
    assert decide(parse_presentation(MODEL_GROUPS[name])).answer == expected


@pytest.mark.parametrize("name", ["Z4", "S3", "Q8"])
def test_finite_groups_never_surject(name):
    P = parse_presentation(MODEL_GROUPS[name])
    assert finite_group_order(P) in {4, 6, 8}
    v = decide(P)
    assert not v.answer
    assert all(e.b1_subgroup == 0 for e in v.table)


@pytest.mark.parametrize("name, P", sorted(corpus_presentations().items()))
def test_construction_iff_betti_growth(name, P):
    bG = b1(P)
    for chi in enumerate_characters(P):
        S = reidemeister_schreier(P, chi)
        T = tau_action(S)
        psi = find_psi(T)
        grows = b1_of_subgroup(S) > bG
        assert (psi is not None) == grows
        assert T.free_rank == b1_of_subgroup(S)
        if psi is None:
            continue
        assert (IntMatrix.from_rows([psi]) @ T.A).row(0) == tuple(-c for c in psi)
        assert psi_value(T, psi, S.g * S.g) == 0
        s = construct_surjection(P, chi)
        assert verify_surjection(P, s.images)
        assert tuple(e.flip for e in s.images) == chi.values
        # independent generation check
        found = generated_subgroup_bfs(s.images, bound=30)
        assert A_GEN in found and B_GEN in found


@pytest.mark.parametrize("name", ["F2", "klein_bottle", "D_inf_x_Z2"])
def test_json_round_trip(name):
    P = parse_presentation(MODEL_GROUPS[name])
    v = decide(P)
    data = v.to_json(P)
    assert data["verdict"] == "YES"
    images = images_from_json(P, data["surjection"])
    assert verify_surjection(P, images)


def test_verify_rejects_bad_maps():
    P = parse_presentation("<a,b|a^2,b^2>")
    assert not verify_surjection(P, [AB, B_GEN])  # a^2 -> (ab)^2
    assert not verify_surjection(P, [A_GEN, A_GEN])  # not onto
    with pytest.raises(ValueError):
        verify_surjection(P, [A_GEN])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=6))
def test_verdict_invariant_under_conjugating_a_relator(ls):
    # replacing a relator by a conjugate gives the same group
    base = parse_presentation(MODEL_GROUPS["klein_bottle"])
    w = Word.of(ls)
    r = w * base.relators[0] * w.inverse()
    P = type(base)(base.generator_names, (r,))
    assert decide(P).answer == decide(base).answer


def test_admits_pair_rejects_bad_class():
    P = parse_presentation("<x,y|x y x = y x y>")
    with pytest.raises(ValueError, match="not a character"):
        admits_pair_dual_to(P, Mod2Character((1, 0)))
    with pytest.raises(ValueError):
        admits_pair_dual_to(P, Mod2Character((0, 0)))


@pytest.mark.parametrize("n", [2, 3])
def test_free_groups_every_class(n):
    P = parse_presentation("<" + ",".join(f"x{i}" for i in range(n)) + "|>")
    for chi in enumerate_characters(P):
        assert admits_pair_dual_to(P, chi).answer
