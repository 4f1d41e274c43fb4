import random
from fractions import Fraction

import numpy as np
import pytest

from linepack.chartab import GaussianScaled
from linepack.etf import (
    FrameMatrix,
    closed_form_entry,
    frame_dimensions,
    gram_character,
    gram_closed_form,
    gram_from_frame,
    parseval_defect,
    read_matrix_file,
    synthesize_frame,
    three_way_agreement,
    three_way_sampled,
    verify_etf,
    verify_frame,
    verify_gram,
    welch_bound_sq,
    write_frame_file,
    write_gram_file,
    MatrixParseError,
)
from linepack.scheme import GaussianRationalMatrix


def test_frame_dimensions():
    assert frame_dimensions(3) == (28, 64)
    assert frame_dimensions(5) == (496, 1024)
    assert frame_dimensions(7) == (8128, 16384)


def test_welch_bound_values():
    assert welch_bound_sq(28, 64) == (Fraction(1, 49), Fraction(1, 256))
    assert welch_bound_sq(6, 16)[1] == Fraction(1, 64)
    for m in (2, 5, 11):
        assert welch_bound_sq(m, m + 1)[0] == Fraction(1, m * m)
    with pytest.raises(ValueError):
        welch_bound_sq(16, 16)
    with pytest.raises(ValueError):
        welch_bound_sq(0, 4)


# ---------------------------------------------------------------------------
# synthesis
# ---------------------------------------------------------------------------

def test_frame_shape_and_scale_n3(group3, rep3):
    frame = synthesize_frame(group3, rep3)
    assert (frame.rows, frame.cols) == (28, 64)
    assert frame.log2_scale_sq == 1 - 6


def test_parseval_identity_n3(group3, rep3):
    frame = synthesize_frame(group3, rep3)
    assert parseval_defect(frame) is None
    # explicitly: integer row Gram is 2^(2n-k) I
    re = frame.re @ frame.re.T + frame.im @ frame.im.T
    im = frame.im @ frame.re.T - frame.re @ frame.im.T
    assert np.array_equal(re, 32 * np.eye(28, dtype=np.int64))
    assert not im.any()


def test_column_norms_and_identity_column(group3, rep3):
    frame = synthesize_frame(group3, rep3)
    norms = (frame.re ** 2 + frame.im ** 2).sum(axis=0)
    assert (norms == 14).all()  # 14 * 2^(-5) = 7/16 = m/N
    col0 = frame.re[:, 0].reshape(7, 2, 2)
    assert all(np.array_equal(b, np.eye(2, dtype=np.int64)) for b in col0)
    assert not frame.im[:, 0].any()


def test_entries_are_unit_gaussian_integers(group5, rep5):
    frame = synthesize_frame(group5, rep5)
    mags = frame.re ** 2 + frame.im ** 2
    assert set(np.unique(mags)) <= {0, 1}


# ---------------------------------------------------------------------------
# closed form
# ---------------------------------------------------------------------------

def test_closed_form_cases_n3(field3):
    diag = closed_form_entry(field3, (1, 3), (1, 3))
    assert diag.as_fraction_pair() == (Fraction(7, 16), Fraction(0))
    same_x = closed_form_entry(field3, (1, 3), (1, 5))
    assert same_x.as_fraction_pair() == (Fraction(-1, 16), Fraction(0))
    # first-coordinate difference 1 with trace argument 1
    entry = closed_form_entry(field3, (0, 0), (1, 0))
    assert entry == GaussianScaled.make(0, 1, -4)


def test_closed_form_conjugate_variant(field3, field5):
    # replacing x^3 by a^3 in the argument conjugates every off-center
    # entry: tr applied to the shifted argument always flips
    for field, trials in ((field3, None), (field5, 400)):
        q = field.order
        rng = random.Random(60)
        pairs = ([(g, h) for g in range(q * q) for h in range(q * q)]
                 if trials is None else
                 [(rng.randrange(q * q), rng.randrange(q * q)) for _ in range(trials)])
        for gi, hi in pairs:
            g = (gi >> field.n, gi & (q - 1))
            h = (hi >> field.n, hi & (q - 1))
            if g[0] == h[0]:
                continue
            w = g[0] ^ h[0]
            arg_mine = g[1] ^ h[1] ^ field.cube(g[0]) ^ field.mul(g[0], field.square(h[0]))
            arg_other = g[1] ^ h[1] ^ field.cube(h[0]) ^ field.mul(g[0], field.square(h[0]))
            w3inv = field.inv(field.cube(w))
            t_mine = field.trace(field.mul(w3inv, arg_mine))
            t_other = field.trace(field.mul(w3inv, arg_other))
            assert t_mine ^ t_other == 1
            variant = GaussianScaled.make(0, -(1 - 2 * t_other), -(field.n + 1))
            assert closed_form_entry(field, g, h) == variant


def test_sign_bridge_identity(field3, field5):
    # tr(x a / (x + a)^2) = 0 whenever x != a: the quotient is in the
    # image of the Artin-Schreier map
    for field, trials in ((field3, None), (field5, 500)):
        rng = random.Random(61)
        q = field.order
        pairs = ([(x, a) for x in range(q) for a in range(q) if x != a]
                 if trials is None else
                 [(rng.randrange(q), rng.randrange(q)) for _ in range(trials)])
        for x, a in pairs:
            if x == a:
                continue
            u = field.mul(field.mul(x, a), field.inv(field.square(x ^ a)))
            assert field.trace(u) == 0


# ---------------------------------------------------------------------------
# Gram routes
# ---------------------------------------------------------------------------

def test_three_way_full_n3(group3, table3, rep3):
    report = three_way_agreement(group3, table3, rep3)
    assert report["agree"]
    assert report["entries"] == 4096
    assert all(v is None for v in report["mismatches"].values())


def test_gram_properties_n3(group3, table3):
    gram = gram_character(group3, table3)
    assert gram.is_hermitian()
    assert gram.is_idempotent()
    assert gram.trace() == (Fraction(28), Fraction(0))
    e = group3.index((0, 0))
    f = group3.index((1, 0))
    assert gram.entry(e, e) == (Fraction(7, 16), Fraction(0))
    assert gram.entry(e, f) == (Fraction(0), Fraction(1, 16))


def test_three_way_sampled_n3(group3, table3, rep3):
    report = three_way_sampled(group3, table3, rep3, min_entries=900, seed=2)
    assert report["agree"] and report["pattern_ok"]
    assert report["entries"] >= 900


def test_sampled_grid_matches_full_gram_n3(group3, table3):
    full = gram_closed_form(group3)
    sel = np.array([0, 3, 17, 40, 63], dtype=np.int64)
    block = gram_closed_form(group3, sel, sel)
    for i, a in enumerate(sel):
        for j, b in enumerate(sel):
            assert block.entry(i, j) == full.entry(int(a), int(b))
    block_c = gram_character(group3, table3, sel, sel)
    for i in range(len(sel)):
        for j in range(len(sel)):
            assert block_c.entry(i, j) == block.entry(i, j)


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

def test_certificate_optimal_n3(group3, rep3):
    cert = verify_frame(synthesize_frame(group3, rep3))
    assert cert.verdict == "OPTIMAL"
    assert cert.parseval
    assert cert.m == 28 and cert.num_vectors == 64
    assert cert.diagonal_value == Fraction(7, 16)
    assert cert.off_diag_modulus_sq == Fraction(1, 256)
    assert cert.welch_sq_parseval == Fraction(1, 256)
    assert cert.welch_sq_unit == Fraction(1, 49)
    js = cert.to_json_dict()
    assert js["offDiagModulusSquared"] == "1/256"


def test_identity_gram_is_degenerate():
    cert = verify_gram(GaussianRationalMatrix.identity(8))
    assert cert.verdict == "NOT_ETF"
    assert "degenerate" in cert.failure


def test_non_projection_gram_rejected():
    bad = GaussianRationalMatrix(np.eye(4, dtype=np.int64) * 2)
    cert = verify_gram(bad)
    assert cert.verdict == "NOT_ETF"
    assert cert.failure == "parseval identity fails"


def test_tampered_frame_detected(group3, rep3):
    frame = synthesize_frame(group3, rep3)
    re = frame.re.copy()
    flat = np.flatnonzero(re)
    re.flat[flat[0]] = -re.flat[flat[0]]
    cert = verify_frame(FrameMatrix(re, frame.im, frame.log2_scale_sq))
    assert cert.verdict == "NOT_ETF"
    assert not cert.parseval
    assert cert.cross_checks["parsevalDefect"] is not None


def test_wrong_modulus_gram_fails_welch(group3, table3):
    # zero out one off-diagonal pair: stays Hermitian but no longer flat
    gram = gram_character(group3, table3)
    re, im = gram.re.copy(), gram.im.copy()
    re[0, 1] = im[0, 1] = re[1, 0] = im[1, 0] = 0
    cert = verify_gram(GaussianRationalMatrix(re, im, gram.den))
    assert cert.verdict == "NOT_ETF"


def test_verify_etf_dispatch(group3, rep3, table3):
    assert verify_etf(synthesize_frame(group3, rep3)).verdict == "OPTIMAL"
    assert verify_etf(gram_character(group3, table3)).verdict == "OPTIMAL"
    with pytest.raises(TypeError):
        verify_etf(np.eye(3))


def test_srg_gram_certifies(scheme3):
    from linepack.scheme import srg_scheme, gram_projector
    desc, report = srg_scheme(16, 6, 2, 2)
    cert = verify_gram(gram_projector(desc, report.d_subset))
    assert cert.verdict == "OPTIMAL"
    assert cert.m == 6 and cert.num_vectors == 16
    assert cert.off_diag_modulus_sq == Fraction(1, 64)


def test_threads_do_not_change_results(group3, rep3):
    frame = synthesize_frame(group3, rep3)
    g1 = gram_from_frame(frame, threads=1)
    g2 = gram_from_frame(frame, threads=3)
    assert g1 == g2
    assert np.array_equal(g1.re, g2.re) and np.array_equal(g1.im, g2.im)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def test_frame_file_roundtrip(tmp_path, group3, rep3):
    frame = synthesize_frame(group3, rep3)
    path = tmp_path / "frame.mat"
    write_frame_file(path, frame)
    back = read_matrix_file(path)
    assert isinstance(back, FrameMatrix)
    assert back.log2_scale_sq == frame.log2_scale_sq
    assert np.array_equal(back.re, frame.re) and np.array_equal(back.im, frame.im)
    write_frame_file(tmp_path / "frame2.mat", frame)
    assert (tmp_path / "frame.mat").read_bytes() == (tmp_path / "frame2.mat").read_bytes()


def test_gram_file_roundtrip(tmp_path, group3, table3):
    gram = gram_character(group3, table3)
    path = tmp_path / "gram.mat"
    write_gram_file(path, gram)
    back = read_matrix_file(path)
    assert isinstance(back, GaussianRationalMatrix)
    assert back == gram
    first_line = path.read_text().splitlines()[1].split(" ")[0]
    assert first_line == "7/16;0/1"


def test_streamed_frame_file_matches_dense(tmp_path, group3, rep3):
    from linepack.etf import write_frame_file_streaming
    dense_path = tmp_path / "a.mat"
    stream_path = tmp_path / "b.mat"
    write_frame_file(dense_path, synthesize_frame(group3, rep3))
    write_frame_file_streaming(stream_path, group3, rep3)
    assert dense_path.read_bytes() == stream_path.read_bytes()


def test_parse_errors(tmp_path):
    bad = tmp_path / "bad.mat"
    bad.write_text("not a matrix\n")
    with pytest.raises(MatrixParseError):
        read_matrix_file(bad)
    short = tmp_path / "short.mat"
    short.write_text("LINEPACK-MATRIX v1 rows=2 cols=2 scale_log2_num=0 scale_log2_den=1\n1;0 0;0\n")
    with pytest.raises(MatrixParseError):
        read_matrix_file(short)


def test_float_export_rounds(group3, rep3):
    frame = synthesize_frame(group3, rep3)
    dense = frame.to_complex()
    assert dense.shape == (28, 64)
    assert np.allclose((dense @ dense.conj().T), np.eye(28), atol=1e-12)
