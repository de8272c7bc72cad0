"""Identity verification: lattice bilinear check, differential check,
weighted determinant identity, closed-form crosschecks, Bethe-type products.
"""

import numpy as np
import pytest

from kp_rankone.cases import (
    CalogeroMoserData,
    IntertwiningData,
    from_calogero_moser,
    random_calogero_moser,
    random_intertwining,
    random_kdv_pair,
)
from kp_rankone.errors import DegenerateSpectrumError, InadmissibleTripleError
from kp_rankone.tau import TimeVector
from kp_rankone.triple import RankOneTriple, make_triple, random_admissible
from kp_rankone.verify import (
    VerificationReport,
    bethe_check,
    crosscheck_intertwining,
    crosscheck_wilson,
    h3_residual,
    hbde_residual,
    kp_residual,
)


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------


def test_report_pass_fail_threshold():
    r = VerificationReport.make("x", 1e-9, 1e-8)
    assert r.passed
    r = VerificationReport.make("x", 1e-7, 1e-8)
    assert not r.passed


def test_report_rejects_nan():
    with pytest.raises(ValueError):
        VerificationReport.make("x", float("nan"), 1e-8)
    with pytest.raises(ValueError):
        VerificationReport.make("x", -1.0, 1e-8)


# ---------------------------------------------------------------------------
# lattice bilinear identity
# ---------------------------------------------------------------------------


def test_hbde_scalar_example_tight():
    # n=1 data evaluates through short products; residual is near eps
    tr = make_triple(
        np.array([[1.0, 1.0]]), np.diag([1.0, 0.0]), np.array([[1.0, 1.0]])
    )
    rep = hbde_residual(tr, TimeVector([0.3]), 2.0, 3.0, -1.5)
    assert rep.residual < 1e-13


@pytest.mark.parametrize("seed", range(6))
def test_hbde_random_triples(seed):
    tr = random_admissible(2 + seed % 2, 6 + seed % 3, seed=seed)
    t = TimeVector([0.2, -0.1, 0.15])
    rep = hbde_residual(tr, t, 1.8, 2.2 + 0.7j, -2.4, l=seed % 2, m=(seed // 2) % 2)
    assert rep.passed, rep
    assert rep.residual < 1e-10


def test_hbde_rejects_coincident_parameters():
    tr = random_admissible(1, 3, seed=0)
    with pytest.raises(ValueError):
        hbde_residual(tr, TimeVector([0.0]), 2.0, 2.0, 3.0)
    with pytest.raises(ValueError):
        hbde_residual(tr, TimeVector([0.0]), 0.0, 2.0, 3.0)


def test_hbde_negative_control_rank_two():
    # breaking the coupling rank must break the identity by a wide margin
    rng = np.random.default_rng(5)
    tr = random_admissible(2, 6, seed=5)
    P = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    u, s, vh = np.linalg.svd(P)
    bump = u[:, :2] @ np.diag([1.0, 0.5]) @ vh[:2, :]  # rank 2, norm 1
    bad = RankOneTriple(tr.A, tr.B + bump, tr.C)
    rep = hbde_residual(bad, TimeVector([0.2]), 1.8, 2.3, -2.6)
    assert rep.residual > 1e-3


def test_hbde_context_records_site():
    tr = random_admissible(1, 4, seed=9)
    rep = hbde_residual(tr, TimeVector([0.1]), 1.5, 2.5, -1.5, l=1, m=0, n_index=1)
    assert tuple(rep.context["site"]) == (1, 0, 1)


# ---------------------------------------------------------------------------
# differential identity
# ---------------------------------------------------------------------------


def test_kp_residual_soliton():
    d = random_kdv_pair(2, seed=3)
    from kp_rankone.cases import from_kdv_pair

    tr = from_kdv_pair(d)
    rep = kp_residual(tr, TimeVector([0.3, 0.2, -0.1]))
    assert rep.passed, rep.residual


@pytest.mark.parametrize("seed", range(4))
def test_kp_residual_random(seed):
    tr = random_admissible(2, 5 + seed, seed=40 + seed)
    t = TimeVector([0.25, -0.15, 0.1])
    rep = kp_residual(tr, t)
    assert rep.passed, (seed, rep.residual)


def test_kp_residual_negative_control():
    # same perturbation style as the lattice control
    rng = np.random.default_rng(6)
    tr = random_admissible(2, 6, seed=6)
    P = rng.standard_normal((6, 6))
    u, s, vh = np.linalg.svd(P)
    bump = u[:, :2] @ np.diag([1.0, 1.0]) @ vh[:2, :]
    bad = RankOneTriple(tr.A, tr.B + bump, tr.C)
    rep = kp_residual(bad, TimeVector([0.2, 0.1, 0.05]))
    assert rep.residual > 1e-3


# ---------------------------------------------------------------------------
# weighted determinant identity
# ---------------------------------------------------------------------------


def test_h3_weighted_vanishes_rank_one():
    rng = np.random.default_rng(50)
    for n in (1, 2, 3):
        P = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a = rng.standard_normal((n, 1))
        b = rng.standard_normal((1, n))
        rep = h3_residual(P, a @ b, 1.1, 2.7 + 0.4j, -1.9)
        assert rep.passed, (n, rep.residual)


def test_h3_printed_value_frozen():
    # the three-term form *without* the parameter-difference weights does
    # not vanish: at P=0, Q=1 (scalars), c=(1,2,3) it equals exactly 8
    rep = h3_residual(np.array([[0.0]]), np.array([[1.0]]), 1.0, 2.0, 3.0)
    assert rep.context["printed_value"] == pytest.approx(8.0, abs=1e-12)
    assert rep.residual < 1e-14  # while the weighted combination vanishes


def test_h3_rank_two_rejected():
    with pytest.raises(InadmissibleTripleError):
        h3_residual(np.zeros((2, 2)), np.eye(2), 1.0, 2.0, 3.0)


def test_h3_negative_control_weights_matter():
    # with generic data the unweighted sum stays O(1) while the weighted
    # combination cancels: the weights are what make the identity true
    rng = np.random.default_rng(51)
    P = rng.standard_normal((3, 3))
    a = rng.standard_normal((3, 1))
    b = rng.standard_normal((1, 3))
    rep = h3_residual(P, a @ b, 1.3, 2.1, -0.8)
    assert rep.residual < 1e-10
    assert abs(rep.context["printed_value"]) > 1e-3


# ---------------------------------------------------------------------------
# closed-form crosschecks
# ---------------------------------------------------------------------------


def test_crosscheck_wilson_scalar_4e():
    d = CalogeroMoserData(np.array([[3.0]]), np.array([[1.0]]))
    rep = crosscheck_wilson(d, TimeVector([1.0]))
    assert rep.passed
    assert rep.residual < 1e-13


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_crosscheck_wilson_random(n):
    t = TimeVector([0.3, -0.2, 0.1])
    for seed in range(3):
        d = random_calogero_moser(n, seed=seed)
        rep = crosscheck_wilson(d, t)
        assert rep.passed, (n, seed, rep.residual)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_crosscheck_intertwining_random(n):
    t = TimeVector([0.2, 0.1, -0.05])
    for seed in range(3):
        d = random_intertwining(n, seed=seed)
        rep = crosscheck_intertwining(d, t)
        assert rep.passed, (n, seed, rep.residual)


def test_crosscheck_intertwining_scalar():
    # X=1, Y=0, Z=1: determinant route vs e^{g(1)} + 1 directly
    d = IntertwiningData(np.array([[1.0]]), np.array([[0.0]]), np.array([[1.0]]))
    rep = crosscheck_intertwining(d, TimeVector([1.0]))
    assert rep.residual < 1e-14


# ---------------------------------------------------------------------------
# Bethe-type products
# ---------------------------------------------------------------------------


def test_bethe_scalar_exact():
    # n=1: a single root, and the product telescopes to -1 identically
    d = random_calogero_moser(1, seed=1)
    rep = bethe_check(d, 0.8, 1.3, -2.0, m=1)
    assert rep.residual <= 1e-12


@pytest.mark.parametrize("n,m", [(1, 0), (2, 1), (3, 1), (2, 2), (3, 2)])
def test_bethe_random(n, m):
    for seed in range(3):
        d = random_calogero_moser(n, seed=60 + seed)
        rep = bethe_check(d, 0.9 + 0.1j, 1.7, -2.2, m=m)
        assert rep.passed, (n, m, seed, rep.residual)


def test_bethe_conjugation_invariant():
    # the roots are eigenvalues, so a similarity transform changes nothing
    d = random_calogero_moser(3, seed=62)
    rng = np.random.default_rng(62)
    G = np.eye(3) + 0.2 * rng.standard_normal((3, 3))
    Gi = np.linalg.inv(G)
    d2 = CalogeroMoserData(G @ d.X @ Gi, G @ d.Z @ Gi)
    r1 = bethe_check(d, 0.9, 1.7, -2.2, m=1)
    r2 = bethe_check(d2, 0.9, 1.7, -2.2, m=1)
    assert r1.residual < 1e-8 and r2.residual < 1e-8


def test_bethe_refuses_broken_structure():
    # doubling X breaks the rank-one commutator condition; the checker
    # must refuse rather than report a residual for structurally invalid
    # data (the identity is only claimed for valid pairs)
    d = random_calogero_moser(3, seed=63)
    bad = CalogeroMoserData(2.0 * d.X, d.Z)
    with pytest.raises(InadmissibleTripleError):
        bethe_check(bad, 0.9, 1.7, -2.2, m=1)


def test_bethe_spectrum_collision_raises():
    d = random_calogero_moser(2, seed=64, conjugate=False)
    lam = np.diag(d.Z)[0]
    with pytest.raises(DegenerateSpectrumError):
        bethe_check(d, 0.9, 1.7, complex(lam), m=1)
