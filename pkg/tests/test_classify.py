"""Existence deciders, structure rows, centralizer reports."""

import pytest

from cartanext import catalog, classify
from cartanext.catalog import build_pair, direct_sum_pairs
from cartanext.extension import curvature, is_flat, torsion_free, validate
from cartanext.linalg import Mat


def test_decide_projective_group_type():
    pair = build_pair("group_type", {"base": "sl(2,R)"})
    v = classify.decide_projective(pair)
    assert v.verdict == classify.EXISTS
    assert v.equivalence == {"classes": "unique"}
    assert validate(v.witness).passed
    assert torsion_free(v.witness)
    assert not v.witness.b2_matrix().is_zero()


def test_decide_projective_block_pair():
    pair = build_pair("so_block", {"a": 1, "b": 1, "c": 1, "d": 1})
    v = classify.decide_projective(pair)
    assert v.verdict == classify.EXISTS and validate(v.witness).passed


def test_decide_projective_needs_semisimple():
    # a solvable pair: upper triangular 2x2 with the diagonal involution
    from cartanext.catalog import SymmetricPair, _assemble_pair

    h = Mat.diag([1, -1])
    m = Mat.from_rows([[0, 1], [0, 0]])
    pair = _assemble_pair("borel-pair", "custom", {}, [h], [m])
    v = classify.decide_projective(pair)
    assert v.verdict == classify.UNDECIDED


def test_normalized_projective_flatness_matches_constant_curvature():
    # the 3-dimensional group manifolds carry constant-curvature metrics, so
    # their normalized projective structures are flat; sl(3,R) is not
    from cartanext.extension import is_flat

    for base, expect_flat in (("sl(2,R)", True), ("so(3)", True), ("sl(3,R)", False)):
        pair = build_pair("group_type", {"base": base})
        v = classify.decide_projective(pair)
        assert is_flat(v.witness) == expect_flat, base


def test_decide_conformal_single_factor():
    pair = build_pair("group_type", {"base": "sl(2,R)"})
    rep = classify.decide_conformal(pair)
    assert rep.verdict.verdict == classify.EXISTS
    assert rep.form_space_dim == 1
    assert rep.signatures == [(1, 2), (2, 1)]
    assert rep.killing_is_member
    assert rep.circle_parameters == 0


def test_decide_conformal_two_compact_factors():
    base = build_pair("group_type", {"base": "so(3)"})
    pair = direct_sum_pairs([base, base])
    rep = classify.decide_conformal(pair)
    assert rep.form_space_dim == 2
    assert rep.factor_form_dims == [1, 1]
    assert rep.cross_blocks_zero
    assert rep.signatures == [(0, 6), (3, 3), (6, 0)]


def test_decide_conformal_complex_factor():
    pair = build_pair("group_type", {"base": "sl(2,C)"})
    rep = classify.decide_conformal(pair)
    assert rep.form_space_dim == 2
    assert rep.circle_parameters == 1
    assert rep.signatures == [(3, 3)]


def test_decide_conformal_mixed_sum():
    pair = direct_sum_pairs([
        build_pair("group_type", {"base": "sl(2,C)"}),
        build_pair("group_type", {"base": "so(3)"}),
    ])
    rep = classify.decide_conformal(pair)
    assert rep.form_space_dim == 3
    assert rep.circle_parameters == 1
    assert rep.verdict.equivalence["sign_choices"] == 1
    assert rep.signatures == [(3, 6), (6, 3)]


def test_decide_h_projective_complex_pair():
    pair = build_pair("group_type", {"base": "sl(2,C)"})
    v = classify.decide_h_projective(pair)
    assert v.verdict == classify.EXISTS
    assert v.conjugate_witness is not None
    assert validate(v.witness).passed and validate(v.conjugate_witness).passed
    j = v.complex_structure
    assert j @ j == Mat.identity(pair.dim).scale(-1)


def test_decide_h_projective_real_pair():
    pair = build_pair("group_type", {"base": "sl(2,R)"})
    v = classify.decide_h_projective(pair)
    assert v.verdict == classify.NOT_EXISTS


def test_decide_h_projective_odd_dimension():
    pair = build_pair("group_type", {"base": "so(2,1)"})
    v = classify.decide_h_projective(pair)
    assert v.verdict == classify.NOT_EXISTS


FLAT_ROWS = [
    ("grassmannian", "so_block", {"a": 1, "b": 1, "c": 1, "d": 1}),
    ("grassmannian", "so_block", {"a": 2, "b": 1, "c": 1, "d": 1}),
    ("grassmannian", "sp_block", {"p": 1, "q": 1}),
    ("para_quaternionic", "sp_block", {"p": 1, "q": 1}),
    ("para_quaternionic", "so_block", {"a": 2, "b": 2, "c": 0, "d": 1}),
    ("para_quaternionic", "conformal_model", {"k": 1, "l": 1}),
    ("quaternionic", "so_star", {"n": 2}),
    ("quaternionic", "sp1_block", {"p": 1, "q": 1}),
    ("lagrangean", "group_type", {"base": "sp(2,R)"}),
    ("spinorial", "group_type", {"base": "so(2,1)"}),
    ("su_pp", "so_complex", {"n": 2}),
]


@pytest.mark.parametrize("family,pair_family,params", FLAT_ROWS)
def test_verify_family_rows(family, pair_family, params):
    pair = build_pair(pair_family, params)
    v = classify.verify_family_row(family, pair)
    assert v.verdict == classify.EXISTS
    assert validate(v.witness).passed
    kappa = curvature(v.witness)
    assert torsion_free(v.witness, kappa)
    assert is_flat(v.witness, kappa)


def test_quaternion_certificates():
    pair = build_pair("sp1_block", {"p": 1, "q": 1})
    cert = classify.quaternion_relation_certificate(pair)
    assert cert == {"type": "quaternion", "verified": True, "algebra_dim": 4}
    pair2 = build_pair("sp_block", {"p": 1, "q": 1})
    cert2 = classify.quaternion_relation_certificate(pair2)
    assert cert2 == {"type": "split", "verified": True, "algebra_dim": 4}


def test_unregistered_row_is_undecided():
    pair = build_pair("group_type", {"base": "sl(2,R)"})
    v = classify.verify_family_row("grassmannian", pair)
    assert v.verdict == classify.UNDECIDED


EXPECTED_FACTOR_LABELS = {
    ("group_type", "sl(2,R)"): ["R"],
    ("group_type", "sl(3,R)"): ["R"],
    ("group_type", "so(3)"): ["R"],
    ("group_type", "so(2,1)"): ["R"],
    ("group_type", "sl(2,C)"): ["C"],
    ("group_type", "su(2)"): ["R"],
    ("group_type", "sp(2,R)"): ["R"],
}


def test_centralizer_report_labels():
    seen = set()
    for family, params in catalog.default_pair_grid():
        pair = build_pair(family, params)
        report = classify.centralizer_report(pair)
        assert report.labels_in_contract, (pair.name, report.factor_labels)
        seen.add(pair.name)
        key = (family, params.get("base"))
        if key in EXPECTED_FACTOR_LABELS:
            assert report.factor_labels == EXPECTED_FACTOR_LABELS[key]
    assert len(seen) >= 8


def test_centralizer_report_weight_line_split():
    pair = build_pair("sl_block", {"p": 1, "q": 1})
    report = classify.centralizer_report(pair)
    assert report.factor_labels == ["RxR"]


def test_centralizer_report_block_pair_factors():
    pair = build_pair("so_block", {"a": 1, "b": 1, "c": 1, "d": 1})
    report = classify.centralizer_report(pair)
    assert sorted(report.factor_labels) == ["RxR", "RxR"]
    assert report.total_dim == 4
