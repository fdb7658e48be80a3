"""Release gate: the guarantees the package ships with, one test each.

Every test here pins an end-to-end behavior with explicit tolerances:
the benchmark operators' spectra, ordered classification, Schmidt and
Schur representations, norms and their invariances, planted round
trips at scale, stationarity of everything we emit, and deterministic
CLI reports. `pytest -v tests/test_acceptance.py` prints one line per
guarantee.
"""

import json
import subprocess
import sys

import numpy as np
import pytest

from bilop import (
    FailureReason,
    GridSpec,
    SchmidtStatus,
    SearchConfig,
    SingularTriple,
    Tensor3,
    change_basis,
    gallery,
    grid_norm_oracle,
    hs_norm,
    is_ordered,
    operator_norm,
    schmidt_decompose,
    schmidt_sum_sq,
    schur_from_schmidt,
    stationarity_fd_check,
    tensor_to_json_dict,
    verify_schur,
)

S13 = np.sqrt(13.0)
TAU_SADDLE = 6.0 / S13
A, B = 3.0 / S13, 2.0 / S13


def orbit_matches(got, want, atol):
    gx, gy, gz = (np.asarray(v, dtype=float) for v in got)
    for sx, sy in ((1, 1), (-1, -1), (-1, 1), (1, -1)):
        if (
            np.allclose(gx, sx * np.asarray(want[0], dtype=float), atol=atol)
            and np.allclose(gy, sy * np.asarray(want[1], dtype=float), atol=atol)
            and np.allclose(gz, sx * sy * np.asarray(want[2], dtype=float), atol=atol)
        ):
            return True
    return False


def match_bijectively(triples, expected, tau_tol, vec_tol):
    """Assert a one-to-one orbit correspondence between found and expected."""
    assert len(triples) == len(expected)
    used = set()
    for tau, x, y, z in expected:
        hits = [
            i
            for i, tr in enumerate(triples)
            if i not in used
            and abs(tr.tau - tau) <= tau_tol
            and orbit_matches((tr.x, tr.y, tr.z), (x, y, z), atol=vec_tol)
        ]
        assert hits, f"no unmatched triple for tau={tau}"
        used.add(hits[0])
    assert len(used) == len(expected)


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "bilop", *args],
        capture_output=True,
        text=True,
        timeout=120,
    )


@pytest.fixture(scope="module")
def overlap_schmidt(overlap):
    return schmidt_decompose(overlap, SearchConfig(starts=64))


@pytest.fixture(scope="module")
def triad_schmidt(triad):
    return schmidt_decompose(triad, SearchConfig(starts=128))


def test_benchmark_spectrum_matches_the_known_triples(diag_pair_spectrum):
    expected = [
        (3.0, [0, 1, 0], [0, 1], [0, 1, 0, 0]),
        (2.0, [1, 0, 0], [1, 0], [1, 0, 0, 0]),
        (TAU_SADDLE, [A, -B, 0], [A, -B], [A, B, 0, 0]),
        (TAU_SADDLE, [A, -B, 0], [A, B], [A, -B, 0, 0]),
        (TAU_SADDLE, [A, B, 0], [A, B], [A, B, 0, 0]),
        (TAU_SADDLE, [A, B, 0], [A, -B], [A, -B, 0, 0]),
    ]
    taus = sorted((tr.tau for tr in diag_pair_spectrum.triples), reverse=True)
    want = sorted((e[0] for e in expected), reverse=True)
    np.testing.assert_allclose(taus, want, atol=1e-9)
    match_bijectively(
        diag_pair_spectrum.triples, expected, tau_tol=1e-9, vec_tol=1e-8
    )


def test_ordered_classification_separates_attractors_from_saddles(
    diag_pair, diag_pair_spectrum
):
    flags = []
    for tr in diag_pair_spectrum.triples:
        check = is_ordered(diag_pair, tr, 1e-9)
        flags.append(check.ordered)
        if not check.ordered:
            assert max(check.slice_residuals) >= 0.1
    assert flags == [True, True, False, False, False, False]


def test_benchmark_schmidt_representation_is_exact(diag_pair, deep_cfg):
    rep, _ = schmidt_decompose(diag_pair, deep_cfg)
    assert rep.status is SchmidtStatus.COMPLETE
    expected = [
        (3.0, [0, 1, 0], [0, 1], [0, 1, 0, 0]),
        (2.0, [1, 0, 0], [1, 0], [1, 0, 0, 0]),
    ]
    assert len(rep.terms) == 2
    for term, (tau, x, y, z) in zip(rep.terms, expected):
        assert term.tau == pytest.approx(tau, abs=1e-9)
        assert orbit_matches((term.x, term.y, term.z), (x, y, z), atol=1e-8)
    assert rep.reconstruction_residual <= 1e-10
    assert schmidt_sum_sq(rep) == pytest.approx(13.0, abs=1e-9)
    assert schmidt_sum_sq(rep) == pytest.approx(hs_norm(diag_pair) ** 2, abs=1e-9)


def test_non_orderable_operator_fails_loudly_everywhere(
    overlap, overlap_spectrum, overlap_schmidt, tmp_path
):
    known = [
        np.sqrt(2.0 + np.sqrt(2.0)),
        np.sqrt(2.0),
        np.sqrt(2.0 - np.sqrt(2.0)),
        np.sqrt(2.0) / 2.0,
    ]
    for value in known:
        hits = [
            tr for tr in overlap_spectrum.triples if abs(tr.tau - value) <= 1e-9
        ]
        assert hits, f"tau={value} missing from the spectrum"
        for tr in hits:
            assert not is_ordered(overlap, tr, 1e-9).ordered

    rep, report = overlap_schmidt
    assert rep.status is SchmidtStatus.FAILED
    assert report.failure.step == 1
    assert report.failure.reason is FailureReason.NOT_ORDERED

    path = tmp_path / "overlap.json"
    path.write_text(json.dumps(tensor_to_json_dict(overlap)))
    proc = run_cli("schmidt", str(path), "--starts", "48")
    assert proc.returncode == 3


def test_cubic_benchmark_decomposes_into_planted_terms(triad_schmidt):
    rep, _ = triad_schmidt
    assert rep.status is SchmidtStatus.COMPLETE
    s2 = 1.0 / np.sqrt(2.0)
    s3 = 1.0 / np.sqrt(3.0)
    s6 = 1.0 / np.sqrt(6.0)
    expected = [
        (3.0, [0, 0, 1], [s2, 0, -s2], [s6, s6, -2 * s6]),
        (2.0, [0, 1, 0], [0, 1, 0], [-s2, s2, 0]),
        (1.0, [1, 0, 0], [s2, 0, s2], [s3, s3, s3]),
    ]
    assert len(rep.terms) == 3
    for term, (tau, x, y, z) in zip(rep.terms, expected):
        assert term.tau == pytest.approx(tau, abs=1e-9)
        assert orbit_matches((term.x, term.y, term.z), (x, y, z), atol=1e-6)
    assert rep.reconstruction_residual <= 1e-9


def test_operator_norms_match_theory_and_the_grid_oracle(
    diag_pair, overlap, deep_cfg
):
    for T, want in [(diag_pair, 3.0), (overlap, np.sqrt(2.0 + np.sqrt(2.0)))]:
        value, attained = operator_norm(T, deep_cfg)
        assert value == pytest.approx(want, abs=1e-9)
        assert attained is not None and attained.max_residual <= 1e-9
        assert value == pytest.approx(grid_norm_oracle(T, GridSpec()), abs=1e-3)


def test_hs_norm_values_invariance_and_the_norm_bound(diag_pair, overlap):
    assert hs_norm(diag_pair) == pytest.approx(np.sqrt(13.0), abs=1e-12)
    assert hs_norm(overlap) == pytest.approx(np.sqrt(6.0), abs=1e-12)

    want = hs_norm(diag_pair)
    n1, n2, n3 = diag_pair.dims
    for k in range(100):
        rng = np.random.default_rng([17, k])
        U = np.linalg.qr(rng.standard_normal((n1, n1)))[0]
        V = np.linalg.qr(rng.standard_normal((n2, n2)))[0]
        W = np.linalg.qr(rng.standard_normal((n3, n3)))[0]
        assert abs(hs_norm(change_basis(diag_pair, U, V, W)) - want) <= 1e-10

    cfg = SearchConfig(starts=8)
    for k in range(100):
        rng = np.random.default_rng([31, k])
        dims = tuple(int(d) for d in rng.integers(1, 7, size=3))
        T = Tensor3.from_array(rng.standard_normal(dims))
        value, _ = operator_norm(T, cfg)
        assert value <= hs_norm(T) + 1e-9


def test_planted_monotone_representations_are_recovered_at_scale(
    planted_schmidt_factory,
):
    cfg = SearchConfig(starts=16)
    for seed in range(100):
        T, planted = planted_schmidt_factory(seed)
        rep, report = schmidt_decompose(T, cfg)
        assert rep.status is SchmidtStatus.COMPLETE, (seed, report.failure)
        assert len(rep.terms) == len(planted)
        for term, (tau, x, y, z) in zip(rep.terms, planted):
            assert term.tau == pytest.approx(tau, abs=1e-8)
            assert orbit_matches((term.x, term.y, term.z), (x, y, z), atol=1e-6)
        for tau, x, y, z in planted:
            triple = SingularTriple(
                tau=tau, x=x, y=y, z=z, residuals=(0.0, 0.0, 0.0)
            )
            assert is_ordered(T, triple, 1e-8).ordered, seed


def test_every_reported_triple_is_stationary(
    diag_pair,
    overlap,
    triad,
    diag_pair_spectrum,
    overlap_spectrum,
    triad_spectrum,
):
    pairs = [
        (diag_pair, diag_pair_spectrum),
        (overlap, overlap_spectrum),
        (triad, triad_spectrum),
    ]
    for T, spectrum in pairs:
        assert spectrum.triples
        for tr in spectrum.triples:
            assert stationarity_fd_check(T, tr, 1e-5) <= 1e-6


def test_signed_spectral_weights_round_trip(planted_schur_factory):
    cfg = SearchConfig(starts=16)
    T = gallery.signed_diagonal((3.0, -2.0, 1.0))
    rep, _ = schmidt_decompose(T, cfg)
    schur = schur_from_schmidt(T, rep, 1e-9)
    assert [t.lam for t in schur.terms] == pytest.approx(
        [3.0, -2.0, 1.0], abs=1e-8
    )
    assert verify_schur(T, schur, 1e-9).reconstruction_residual <= 1e-9

    for seed in range(50):
        T, lams, _ = planted_schur_factory(seed)
        rep, report = schmidt_decompose(T, cfg)
        assert rep.status is SchmidtStatus.COMPLETE, (seed, report.failure)
        schur = schur_from_schmidt(T, rep, 1e-9)
        assert [abs(t.lam) for t in schur.terms] == pytest.approx(
            [t.tau for t in rep.terms], abs=0.0
        )
        assert [t.lam for t in schur.terms] == pytest.approx(
            list(lams), abs=1e-8
        ), seed
        assert verify_schur(T, schur, 1e-9).reconstruction_residual <= 1e-9


def test_cli_reports_are_byte_identical_across_runs(diag_pair, tmp_path):
    path = tmp_path / "diag_pair.json"
    path.write_text(json.dumps(tensor_to_json_dict(diag_pair)))
    args = ("spectrum", str(path), "--starts", "48", "--seed", "11", "--json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == second.returncode == 0
    assert first.stdout and first.stdout == second.stdout
