"""Frame-transition equivalence across target families."""

import random
from fractions import Fraction

import pytest

from cartanext import catalog, classify
from cartanext.catalog import build_graded, build_pair, direct_sum_pairs
from cartanext.equivalence import (
    EQUIVALENT,
    NOT_EQUIVALENT,
    UNDECIDED,
    frames_equivalent,
)
from cartanext.extension import Extension, validate
from cartanext.linalg import Mat, invert, matrix_rank

F = Fraction


def with_frame(ext, frame):
    rows = ext.alpha.to_rows()
    for rl, r in enumerate(ext.target.minus_one):
        for cl, c in enumerate(ext.pair.m_indices):
            rows[r][c] = frame[rl, cl]
    return Extension(ext.pair, ext.target, Mat.from_rows(rows), ext.label + "*")


@pytest.fixture(scope="module")
def conformal_witness():
    pair = build_pair("so_block", {"a": 1, "b": 2, "c": 0, "d": 0})
    target = build_graded("conformal", {"p": 0, "q": 2})
    ext = classify.standard_witness(pair, target)
    assert validate(ext).passed
    return ext


@pytest.fixture(scope="module")
def two_factor_conformal_witness():
    base = build_pair("so_block", {"a": 1, "b": 2, "c": 0, "d": 0})
    pair = direct_sum_pairs([base, base])
    target = build_graded("conformal", {"p": 0, "q": 4})
    ext = classify.standard_witness(pair, target)
    assert validate(ext).passed
    return ext


def test_identity_is_equivalent(conformal_witness):
    res = frames_equivalent(conformal_witness, conformal_witness)
    assert res.status == EQUIVALENT and res.sigma_index is None


def test_conformal_scalar_rescale(conformal_witness):
    for s in (F(2), F(-3), F(5, 7)):
        other = with_frame(conformal_witness, Mat.identity(2).scale(s))
        assert frames_equivalent(conformal_witness, other).status == EQUIVALENT


def test_conformal_per_factor_scaling_fails(two_factor_conformal_witness):
    ext = two_factor_conformal_witness
    other = with_frame(ext, Mat.diag([1, 1, 2, 2]))
    assert frames_equivalent(ext, other, autos=()).status == NOT_EQUIVALENT
    uniform = with_frame(ext, Mat.diag([2, 2, 2, 2]))
    assert frames_equivalent(ext, uniform).status == EQUIVALENT


def test_projective_always_equivalent():
    pair = build_pair("group_type", {"base": "sl(2,R)"})
    target = build_graded("projective", {"n": 3})
    ext = classify.standard_witness(pair, target)
    rng = random.Random(5)
    while True:
        frame = Mat.from_rows(
            [[F(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
        )
        if matrix_rank(frame) == 3:
            break
    assert frames_equivalent(ext, with_frame(ext, frame)).status == EQUIVALENT


def test_grassmannian_tensor_frames():
    pair = build_pair("so_block", {"a": 1, "b": 1, "c": 1, "d": 1})
    target = build_graded("grassmannian", {"p": 2, "q": 2})
    ext = classify.inclusion_witness(pair, target)
    a = Mat.from_rows([[1, 1], [0, 1]])
    b = Mat.from_rows([[2, 0], [1, 1]])
    ainv = invert(a)
    t = Mat.from_rows(
        [[b[r, rp] * ainv[cp, c] for rp in range(2) for cp in range(2)]
         for r in range(2) for c in range(2)]
    )
    good = with_frame(ext, t @ ext.frame())
    assert frames_equivalent(ext, good).status == EQUIVALENT
    rows = Mat.identity(4).to_rows()
    rows[0][3], rows[3][0], rows[0][0] = F(1), F(1), F(2)
    bad = with_frame(ext, Mat.from_rows(rows) @ ext.frame())
    assert frames_equivalent(ext, bad).status == NOT_EQUIVALENT


def test_su_pp_family_is_undecided():
    pair = build_pair("so_complex", {"n": 2})
    v = classify.verify_family_row("su_pp", pair)
    ext = v.witness
    res = frames_equivalent(ext, ext)
    assert res.status == UNDECIDED


def test_automorphism_twist_recovers_equivalence():
    # swapping the two sp(2,R) factors acts on the tangent block by a
    # transpose-type map, which is not a pure tensor; only the twist saves it
    pair = build_pair("sp_block", {"p": 1, "q": 1})
    target = build_graded("grassmannian", {"p": 2, "q": 2})
    ext = classify.inclusion_witness(pair, target)
    amb = pair.k_algebra.ambient_size
    perm = [F(0)] * (amb * amb)
    for new, old in enumerate([2, 3, 0, 1]):
        perm[new * amb + old] = F(1)
    u = Mat(amb, amb, perm)
    cols = []
    for b in pair.k_algebra.basis:
        coords = pair.k_algebra.coordinates(u @ b @ invert(u))
        assert coords is not None
        cols.append(coords)
    sigma = Mat.from_rows(
        [[cols[c][r] for c in range(pair.dim)] for r in range(pair.dim)]
    )
    sigma_m = Mat.from_rows(
        [[sigma[r, c] for c in pair.m_indices] for r in pair.m_indices]
    )
    swapped = with_frame(ext, sigma_m @ ext.frame())
    res_plain = frames_equivalent(ext, swapped, autos=())
    assert res_plain.status == NOT_EQUIVALENT
    res_twist = frames_equivalent(ext, swapped, autos=(sigma,))
    assert res_twist.status == EQUIVALENT and res_twist.sigma_index == 0


def test_reflexive_and_symmetric_on_samples():
    rng = random.Random(17)
    samples = []
    pair = build_pair("so_block", {"a": 1, "b": 2, "c": 0, "d": 0})
    target = build_graded("conformal", {"p": 0, "q": 2})
    base = classify.standard_witness(pair, target)
    for _ in range(8):
        s = F(rng.randint(1, 5))
        samples.append((base, with_frame(base, Mat.identity(2).scale(s))))
    gpair = build_pair("so_block", {"a": 1, "b": 1, "c": 1, "d": 1})
    gtarget = build_graded("grassmannian", {"p": 2, "q": 2})
    gext = classify.inclusion_witness(gpair, gtarget)
    for _ in range(6):
        while True:
            frame = Mat.from_rows(
                [[F(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
            )
            if matrix_rank(frame) == 4:
                break
        samples.append((gext, with_frame(gext, frame)))
    ppair = build_pair("group_type", {"base": "sl(2,R)"})
    ptarget = build_graded("projective", {"n": 3})
    pext = classify.standard_witness(ppair, ptarget)
    for _ in range(6):
        while True:
            frame = Mat.from_rows(
                [[F(rng.randint(-2, 2)) for _ in range(3)] for _ in range(3)]
            )
            if matrix_rank(frame) == 3:
                break
        samples.append((pext, with_frame(pext, frame)))
    assert len(samples) >= 20
    for e1, e2 in samples:
        assert frames_equivalent(e1, e1).status == EQUIVALENT
        assert frames_equivalent(e2, e2).status == EQUIVALENT
        fwd = frames_equivalent(e1, e2)
        bwd = frames_equivalent(e2, e1)
        assert fwd.status == bwd.status
