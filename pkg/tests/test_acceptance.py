"""Acceptance criteria, one test per criterion, all exact (zero tolerance).

Each test prints a single PASS line when its criterion holds; any failure
surfaces through the assertions themselves.
"""

import random
from fractions import Fraction

from cartanext import catalog, classify, io
from cartanext.catalog import (
    build_graded,
    build_pair,
    direct_sum_pairs,
    factor_decomposition,
    verify_graded,
)
from cartanext.cli import run_verify_catalog
from cartanext.equivalence import EQUIVALENT, NOT_EQUIVALENT, frames_equivalent
from cartanext.extension import (
    Extension,
    dstar_projective,
    is_flat,
    is_holomorphic,
    projective_normalization_operator,
    torsion_free,
    validate,
)
from cartanext.lie import is_semisimple, killing_form, make_algebra
from cartanext.linalg import Mat, commutator, matrix_rank

F = Fraction


def _passed(n, name):
    print(f"ACCEPTANCE {n:02d} {name}: PASS")


def _all_catalog_pairs():
    return [build_pair(f, p) for f, p in catalog.default_pair_grid()]


def test_criterion_01_structural_exactness():
    """Jacobi, grading relations, no-ideal, flip signs: exact on the grid."""
    grid = catalog.default_graded_grid()
    assert len(grid) >= 20
    for family, params in grid:
        g = build_graded(family, params)
        assert verify_graded(g) == [], (family, params)
        e_mat = g.algebra.element(g.grading_element)
        for idx, b in enumerate(g.algebra.basis):
            k = g.grade_of(idx)
            assert commutator(e_mat, b) == b.scale(k)
            sign = 1 if k == 0 else -1
            assert g.flip_element @ b @ g.flip_element == b.scale(sign)
    _passed(1, "structural exactness on the default grid")


def test_criterion_02_killing_and_semisimplicity(sl2_basis):
    """Cartan criterion everywhere; hand-derived sl(2,R) Gram matrix."""
    for family, params in catalog.default_graded_grid():
        assert is_semisimple(build_graded(family, params).algebra), (family, params)
    for pair in _all_catalog_pairs():
        assert is_semisimple(pair.k_algebra), pair.name
    e, h, f = sl2_basis
    gram = killing_form(make_algebra([e, h, f], "sl2"))
    assert gram[1, 1] == 8
    assert gram[0, 2] == 4 and gram[2, 0] == 4
    assert gram == Mat.from_rows([[0, 0, 4], [0, 8, 0], [4, 0, 0]])
    _passed(2, "Cartan criterion and Killing values")


def test_criterion_03_commutant_contract():
    """Every simple-factor commutant lands in {R, C, RxR, CxC}."""
    required = {
        "group(sl(2,R))",
        "group(so(3))",
        "group(sl(2,C))",
        "(so(2,2),so(1,1)+so(1,1))",
        "(sp(4,R),sp(2,R)+sp(2,R))",
    }
    seen = set()
    for pair in _all_catalog_pairs():
        report = classify.centralizer_report(pair)
        assert report.labels_in_contract, (pair.name, report.factor_labels)
        seen.add(pair.name)
    assert required <= seen
    assert len(seen) >= 8
    _passed(3, "commutant labels within the classification contract")


def test_criterion_04_projective_reproduction():
    """Unique normalized projective witness for every catalog pair."""
    for pair in _all_catalog_pairs():
        verdict = classify.decide_projective(pair)
        assert verdict.verdict == classify.EXISTS, pair.name
        witness = verdict.witness
        assert validate(witness).passed
        assert torsion_free(witness)
        if pair.dim_m >= 2:
            contraction = dstar_projective(witness)
            assert all(all(x == 0 for x in vec) for vec in contraction)
    for n in range(2, 7):
        target = build_graded("projective", {"n": n})
        op, meta = projective_normalization_operator(target)
        assert meta["unknowns"] == n * n
        assert matrix_rank(op) == n * n, f"kernel not trivial at n={n}"
    _passed(4, "projective witnesses normalized with unique b2")


def test_criterion_05_conformal_reproduction():
    """Form-space dimensions, orthogonal factors, Killing membership,
    signature menus under per-factor sign flips."""
    gt = lambda base: build_pair("group_type", {"base": base})
    cases = [
        (direct_sum_pairs([gt("sl(2,R)"), gt("sl(2,R)")]),
         2, [(2, 4), (3, 3), (4, 2)], 0),
        (direct_sum_pairs([gt("so(3)"), gt("so(3)")]),
         2, [(0, 6), (3, 3), (6, 0)], 0),
        (direct_sum_pairs([gt("sl(2,R)"), gt("so(3)")]),
         2, [(1, 5), (2, 4), (4, 2), (5, 1)], 0),
        (direct_sum_pairs([gt("sl(2,C)"), gt("so(3)")]),
         3, [(3, 6), (6, 3)], 1),
    ]
    for pair, expected_dim, expected_sigs, expected_circle in cases:
        report = classify.decide_conformal(pair)
        factors = factor_decomposition(pair)
        real_count = sum(1 for d in report.factor_form_dims if d == 1)
        complex_count = sum(1 for d in report.factor_form_dims if d == 2)
        assert real_count + complex_count == len(factors)
        assert report.form_space_dim == real_count + 2 * complex_count
        assert report.form_space_dim == expected_dim
        assert report.cross_blocks_zero
        assert report.killing_is_member
        assert report.signatures == expected_sigs
        assert report.circle_parameters == expected_circle
    single = classify.decide_conformal(gt("sl(2,R)"))
    assert single.form_space_dim == 1 and single.signatures == [(1, 2), (2, 1)]
    _passed(5, "conformal form spaces, orthogonality and signature menus")


def test_criterion_06_flat_inclusion_rows():
    """Every inclusion-based witness in the grid has exactly zero curvature."""
    rows = [
        ("grassmannian", "so_block", {"a": 1, "b": 1, "c": 1, "d": 1}),
        ("grassmannian", "sp_block", {"p": 1, "q": 1}),
        ("para_quaternionic", "conformal_model", {"k": 1, "l": 1}),
        ("para_quaternionic", "sp_block", {"p": 1, "q": 1}),
        ("quaternionic", "so_star", {"n": 2}),
        ("quaternionic", "sp1_block", {"p": 1, "q": 1}),
        ("lagrangean", "group_type", {"base": "sp(2,R)"}),
        ("spinorial", "group_type", {"base": "so(2,1)"}),
        ("su_pp", "so_complex", {"n": 2}),
    ]
    families = set()
    for family, pair_family, params in rows:
        pair = build_pair(pair_family, params)
        verdict = classify.verify_family_row(family, pair)
        assert verdict.verdict == classify.EXISTS, (family, pair.name)
        assert is_flat(verdict.witness), (family, pair.name)
        families.add(family)
        for cert in verdict.certificates:
            if cert.get("type") in ("quaternion", "split"):
                assert cert["verified"] and cert["algebra_dim"] == 4
    assert len(rows) >= 6 and len(families) >= 4
    _passed(6, "flat inclusion rows across families")


def test_criterion_07_torsion_freeness():
    """All validated witnesses are torsion-free; corruption is caught."""
    witnesses = []
    for pair in _all_catalog_pairs():
        witnesses.append(classify.decide_projective(pair).witness)
    hp = classify.decide_h_projective(build_pair("group_type", {"base": "sl(2,C)"}))
    witnesses += [hp.witness, hp.conjugate_witness]
    for family, pair_family, params in [
        ("grassmannian", "so_block", {"a": 1, "b": 1, "c": 1, "d": 1}),
        ("quaternionic", "sp1_block", {"p": 1, "q": 1}),
        ("su_pp", "so_complex", {"n": 2}),
    ]:
        witnesses.append(
            classify.verify_family_row(family, build_pair(pair_family, params)).witness
        )
    for ext in witnesses:
        assert validate(ext).passed
        assert torsion_free(ext), ext.label
    # negative control: a single mutated alpha entry must be caught
    rng = random.Random(99)
    caught = 0
    for trial in range(10):
        ext = witnesses[rng.randrange(len(witnesses))]
        rows = ext.alpha.to_rows()
        r = rng.randrange(ext.target.dim)
        c = rng.randrange(ext.pair.dim)
        rows[r][c] += F(1)
        bad = Extension(ext.pair, ext.target, Mat.from_rows(rows))
        try:
            broken = not validate(bad).passed or not torsion_free(bad)
        except Exception:
            broken = True
        caught += broken
    assert caught == 10
    _passed(7, "torsion-freeness plus corrupted-alpha negative control")


def test_criterion_08_equivalence_predicates():
    """Conformal rescales, the per-factor counterexample, and symmetry."""
    from test_equivalence import with_frame

    base_pair = build_pair("so_block", {"a": 1, "b": 2, "c": 0, "d": 0})
    target = build_graded("conformal", {"p": 0, "q": 2})
    ext = classify.standard_witness(base_pair, target)
    for s in (F(2), F(3), F(-5)):
        other = with_frame(ext, Mat.identity(2).scale(s))
        assert frames_equivalent(ext, other).status == EQUIVALENT
    two = direct_sum_pairs([base_pair, base_pair])
    t4 = build_graded("conformal", {"p": 0, "q": 4})
    ext4 = classify.standard_witness(two, t4)
    bad = with_frame(ext4, Mat.diag([1, 1, 2, 2]))
    assert frames_equivalent(ext4, bad, autos=()).status == NOT_EQUIVALENT
    rng = random.Random(23)
    samples = []
    for _ in range(10):
        s = F(rng.randint(1, 9))
        samples.append((ext, with_frame(ext, Mat.identity(2).scale(s))))
    gpair = build_pair("so_block", {"a": 1, "b": 1, "c": 1, "d": 1})
    gt = build_graded("grassmannian", {"p": 2, "q": 2})
    gext = classify.inclusion_witness(gpair, gt)
    for _ in range(10):
        while True:
            frame = Mat.from_rows(
                [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
            )
            if matrix_rank(frame) == 4:
                break
        samples.append((gext, with_frame(gext, frame)))
    assert len(samples) == 20
    for e1, e2 in samples:
        assert frames_equivalent(e1, e1).status == EQUIVALENT
        assert frames_equivalent(e1, e2).status == frames_equivalent(e2, e1).status
    _passed(8, "equivalence predicates with reflexivity and symmetry")


def test_criterion_09_holomorphy():
    """Exactly two holomorphy-compatible witnesses, matched by J and -J."""
    pair = build_pair("group_type", {"base": "sl(2,C)"})
    verdict = classify.decide_h_projective(pair)
    assert verdict.verdict == classify.EXISTS
    j = verdict.complex_structure
    j_target = classify.coordinate_complex_structure(verdict.witness.target)
    w_plus, w_minus = verdict.witness, verdict.conjugate_witness
    table = {
        ("w+", "+J"): is_holomorphic(w_plus, j, j_target).holomorphic,
        ("w+", "-J"): is_holomorphic(w_plus, -j, j_target).holomorphic,
        ("w-", "+J"): is_holomorphic(w_minus, j, j_target).holomorphic,
        ("w-", "-J"): is_holomorphic(w_minus, -j, j_target).holomorphic,
    }
    assert table[("w+", "+J")] and table[("w-", "-J")]
    assert not table[("w+", "-J")] and not table[("w-", "+J")]
    assert sum(table.values()) == 2
    conj = is_holomorphic(w_plus, j, j_target).conjugate
    assert is_holomorphic(conj, -j, j_target).holomorphic
    _passed(9, "two conjugate holomorphic witnesses detected")


SMALL_MANIFEST = [
    {"kind": "graded", "family": "projective", "params": {"n": 2}},
    {"kind": "graded", "family": "su_pp", "params": {"p": 2}},
    {"kind": "pair", "family": "group_type", "params": {"base": "sl(2,R)"}},
    {"kind": "pair", "family": "so_complex", "params": {"n": 2}},
    {"kind": "row", "family": "quaternionic",
     "pair": {"family": "sp1_block", "params": {"p": 1, "q": 1}}},
]


def test_criterion_10_determinism_and_round_trip():
    """Same-seed runs agree byte-for-byte (timings aside); files round-trip."""
    run1 = run_verify_catalog(SMALL_MANIFEST, seed=5)
    run2 = run_verify_catalog(SMALL_MANIFEST, seed=5)
    assert run1["overall"] == "PASS"
    run1.pop("timings_ms")
    run2.pop("timings_ms")
    assert io.canonical_dumps(run1) == io.canonical_dumps(run2)
    for family, params in (("conformal", {"p": 1, "q": 2}), ("quaternionic", {"n": 2})):
        g = build_graded(family, params)
        text1 = io.canonical_dumps(io.graded_to_json(g))
        reloaded = io.graded_from_json(io.load_json_text(text1))
        assert io.canonical_dumps(io.graded_to_json(reloaded)) == text1
    p = build_pair("sp_block", {"p": 1, "q": 1})
    text1 = io.canonical_dumps(io.pair_to_json(p))
    reloaded = io.pair_from_json(io.load_json_text(text1))
    assert io.canonical_dumps(io.pair_to_json(reloaded)) == text1
    _passed(10, "deterministic runs and byte-identical round-trips")
