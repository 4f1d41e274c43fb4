"""Frame synthesis, exact Gram matrices, and Welch-bound certification.

The frame attached to the hyperdifference set of a Suzuki 2-group of
order N = 2^(2n) stacks, for each nonzero field element gamma in
ascending order, the degree-2^k monomial representation twisted by
gamma: column g is the row-major flattening of those matrices, and the
whole matrix carries the single irrational scale 2^((k-2n)/2).  That
scale is never evaluated; the integer part is stored and every certified
quantity is squared, hence rational.

The Gram matrix of the frame is computed three independent ways:

* frame route: conjugate-transpose product of the synthesized matrix,
  in pure int64 arithmetic;
* character route: (1/N) sum over the hyperdifference family of
  degree-weighted character values at inv(g) h, read from the exact
  character table;
* closed form: a three-case formula in the field.  With g = (x, y) and
  h = (a, b) the argument inv(g) h has first coordinate w = x + a and
  second coordinate z = y + b + x^3 + x a^2, and the entry is

      (2^n - 1) / 2^(n+1)                   g = h
      -1 / 2^(n+1)                          w = 0, z != 0
      i (-1)^tr(w^-3 z) / 2^(n+1)           w != 0.

All three agree entrywise; verification is exact, with a sampled mode
for sizes whose full Gram would not fit in memory.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .bgroup import GroupContext
from .chartab import CharacterTable, GaussianScaled
from .gf2n import FieldContext
from .heis import RepContext
from .scheme import GaussianRationalMatrix

__all__ = [
    "EtfCertificate",
    "FrameMatrix",
    "closed_form_entry",
    "frame_dimensions",
    "gram_character",
    "gram_closed_form",
    "gram_from_frame",
    "read_matrix_file",
    "synthesize_frame",
    "three_way_agreement",
    "three_way_sampled",
    "verify_etf",
    "verify_frame",
    "verify_gram",
    "welch_bound_sq",
    "write_frame_file",
    "write_gram_file",
]


@dataclass(frozen=True)
class FrameMatrix:
    """Gaussian-integer frame entries with a global scale 2^(log2_scale_sq / 2)."""

    re: np.ndarray
    im: np.ndarray
    log2_scale_sq: int

    @property
    def rows(self) -> int:
        return self.re.shape[0]

    @property
    def cols(self) -> int:
        return self.re.shape[1]

    def to_complex(self) -> np.ndarray:
        """Double-precision export; rounds the exact scale, never used to certify."""
        return (self.re + 1j * self.im) * 2.0 ** (self.log2_scale_sq / 2)


def frame_dimensions(n: int) -> tuple[int, int]:
    """(m, N) = (2^(n-1) (2^n - 1), 2^(2n))."""
    return (1 << (n - 1)) * ((1 << n) - 1), 1 << (2 * n)


def _synthesize_columns(group: GroupContext, rep: RepContext,
                        col_indices: np.ndarray) -> FrameMatrix:
    f = group.field
    n, k = f.n, f.k
    dim = 1 << k
    block = dim * dim
    m = block * (f.order - 1)
    ncols = len(col_indices)
    re = np.zeros((m, ncols), dtype=np.int64)
    im = np.zeros((m, ncols), dtype=np.int64)
    xs = col_indices >> n
    ys = col_indices & (f.order - 1)
    for bi, gamma in enumerate(f.nonzero_elements()):
        ginv = f.inv(gamma)
        ginv3 = f.inv(f.cube(gamma))
        signs = 1 - 2 * f.trace_table[f.mul_table[ginv3, ys]].astype(np.int64)
        rows = slice(bi * block, (bi + 1) * block)
        flat_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        for ci, x in enumerate(xs):
            x = int(x)
            if x not in flat_cache:
                dre, dim_ = rep._rep_x0[f.mul(ginv, x)].dense()
                flat_cache[x] = (dre.ravel(), dim_.ravel())
            fre, fim = flat_cache[x]
            re[rows, ci] = fre * signs[ci]
            im[rows, ci] = fim * signs[ci]
    return FrameMatrix(re, im, k - 2 * n)


def synthesize_frame(group: GroupContext, rep: RepContext | None = None) -> FrameMatrix:
    """The m x N frame, columns in canonical element order."""
    if rep is None:
        rep = RepContext(group)
    cols = np.arange(group.order, dtype=np.int64)
    return _synthesize_columns(group, rep, cols)


def _blocked_matmul(a: np.ndarray, b: np.ndarray, threads: int) -> np.ndarray:
    if threads <= 1 or b.shape[1] < 2 * threads:
        return a @ b
    blocks = np.array_split(np.arange(b.shape[1]), threads)
    out = np.empty((a.shape[0], b.shape[1]), dtype=np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [(idx, pool.submit(np.matmul, a, b[:, idx])) for idx in blocks]
        for idx, fut in futures:
            out[:, idx] = fut.result()
    return out


def parseval_defect(frame: FrameMatrix, threads: int = 1) -> tuple[int, int] | None:
    """None when frame frame^H equals 2^(-log2_scale_sq) I exactly, else a bad index."""
    scale_inv = 1 << -frame.log2_scale_sq
    re = _blocked_matmul(frame.re, frame.re.T, threads) \
        + _blocked_matmul(frame.im, frame.im.T, threads)
    im = _blocked_matmul(frame.im, frame.re.T, threads) \
        - _blocked_matmul(frame.re, frame.im.T, threads)
    target = scale_inv * np.eye(frame.rows, dtype=np.int64)
    bad = np.argwhere((re != target) | (im != 0))
    if len(bad):
        return int(bad[0][0]), int(bad[0][1])
    return None


def gram_from_frame(frame: FrameMatrix, threads: int = 1) -> GaussianRationalMatrix:
    """frame^H frame as an exact Gaussian rational matrix."""
    re = _blocked_matmul(frame.re.T, frame.re, threads) \
        + _blocked_matmul(frame.im.T, frame.im, threads)
    im = _blocked_matmul(frame.re.T, frame.im, threads) \
        - _blocked_matmul(frame.im.T, frame.re, threads)
    return GaussianRationalMatrix(re, im, 1 << -frame.log2_scale_sq).canonical()


def gram_character(group: GroupContext, table: CharacterTable,
                   rows: np.ndarray | None = None,
                   cols: np.ndarray | None = None) -> GaussianRationalMatrix:
    """Gram entries (1/N) sum_{chi in D} d_chi chi(inv(g) h) via table lookup."""
    ncls = len(table.classes)
    vals_re = np.zeros(ncls, dtype=np.int64)
    vals_im = np.zeros(ncls, dtype=np.int64)
    for ci in range(ncls):
        vals_re[ci], vals_im[ci] = table.d_set_sum(ci, weighted=True).as_gaussian_int()
    if rows is None:
        w = group.inverse_product_index_matrix
    else:
        w = group.inverse_product_index_grid(rows, cols)
    cls = group.class_of_element[w]
    return GaussianRationalMatrix(vals_re[cls], vals_im[cls], group.order).canonical()


def gram_closed_form(group: GroupContext,
                     rows: np.ndarray | None = None,
                     cols: np.ndarray | None = None) -> GaussianRationalMatrix:
    """Gram entries straight from the three-case field formula, vectorized."""
    f = group.field
    n, mask = f.n, f.order - 1
    if rows is None:
        rows = np.arange(group.order, dtype=np.int64)
        cols = rows
    gx, gy = rows >> n, rows & mask
    hx, hy = cols >> n, cols & mask
    wx = gx[:, None] ^ hx[None, :]
    z = (gy ^ f.cube_table[gx])[:, None] ^ hy[None, :]
    z ^= f.mul_table[gx[:, None], f.square_table[hx][None, :]]
    noncentral = wx != 0
    t = f.trace_table[f.mul_table[f.inverse_cube_table[wx], z]].astype(np.int64)
    re = np.where(noncentral, 0, np.where(z == 0, f.order - 1, -1))
    im = np.where(noncentral, 1 - 2 * t, 0)
    return GaussianRationalMatrix(re, im, f.order * 2)


def closed_form_entry(field: FieldContext, g, h) -> GaussianScaled:
    """Single Gram entry in O(1) field operations."""
    x, y = g
    a, b = h
    scale = -(field.n + 1)
    w = x ^ a
    if w == 0:
        if y == b:
            return GaussianScaled.make(field.order - 1, 0, scale)
        return GaussianScaled.make(-1, 0, scale)
    z = y ^ b ^ field.cube(x) ^ field.mul(x, field.square(a))
    t = field.trace(field.mul(field.inv(field.cube(w)), z))
    return GaussianScaled.make(0, 1 - 2 * t, scale)


def welch_bound_sq(m: int, num_vectors: int) -> tuple[Fraction, Fraction]:
    """Squared Welch bounds: (unit-norm version, Parseval-scaled version)."""
    if not 1 <= m < num_vectors:
        raise ValueError(f"need 1 <= m < N, got m={m}, N={num_vectors}")
    unit = Fraction(num_vectors - m, m * (num_vectors - 1))
    parseval = Fraction(m * (num_vectors - m), num_vectors ** 2 * (num_vectors - 1))
    return unit, parseval


@dataclass(frozen=True)
class EtfCertificate:
    m: int
    num_vectors: int
    parseval: bool
    verdict: str                      # "OPTIMAL" | "NOT_ETF"
    method: str                       # "frame" | "characterSum" | "closedForm" | "gram"
    diagonal_value: Fraction | None = None
    off_diag_modulus_sq: Fraction | None = None
    welch_sq_parseval: Fraction | None = None
    welch_sq_unit: Fraction | None = None
    failure: str | None = None
    cross_checks: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        def frac(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"
        return {
            "m": self.m,
            "numVectors": self.num_vectors,
            "parseval": self.parseval,
            "verdict": self.verdict,
            "method": self.method,
            "diagonalValue": frac(self.diagonal_value),
            "offDiagModulusSquared": frac(self.off_diag_modulus_sq),
            "welchSquaredParseval": frac(self.welch_sq_parseval),
            "welchSquaredUnitNorm": frac(self.welch_sq_unit),
            "failure": self.failure,
            "crossChecks": dict(self.cross_checks),
        }


def _certify_gram(gram: GaussianRationalMatrix, m: int, parseval: bool,
                  method: str, cross_checks: dict) -> EtfCertificate:
    n = gram.shape[0]
    fail = None
    if not parseval:
        fail = "parseval identity fails"
    diag = gram.entry(0, 0)
    diag_ok = parseval and not gram.im.diagonal().any() \
        and (gram.re.diagonal() == gram.re[0, 0]).all()
    if fail is None and not diag_ok:
        fail = "diagonal is not constant"
    if fail is None and diag[0] != Fraction(m, n):
        fail = "diagonal disagrees with m/N"
    if fail is None and m >= n:
        fail = "degenerate: m = N leaves no off-diagonal angle"
    off_sq = None
    welch_unit = welch_par = None
    if fail is None:
        sq, den = gram.abs_sq_int()
        off = sq[~np.eye(n, dtype=bool)]
        if off.min() != off.max():
            fail = "off-diagonal modulus is not constant"
        else:
            off_sq = Fraction(int(off[0]), den)
            welch_unit, welch_par = welch_bound_sq(m, n)
            if off_sq != welch_par:
                fail = "off-diagonal modulus misses the Welch value"
    return EtfCertificate(
        m=m, num_vectors=n, parseval=parseval,
        verdict="OPTIMAL" if fail is None else "NOT_ETF",
        method=method,
        diagonal_value=diag[0] if parseval else None,
        off_diag_modulus_sq=off_sq,
        welch_sq_parseval=welch_par,
        welch_sq_unit=welch_unit,
        failure=fail,
        cross_checks=cross_checks,
    )


def verify_frame(frame: FrameMatrix, threads: int = 1,
                 gram: GaussianRationalMatrix | None = None) -> EtfCertificate:
    """Exact certification of a synthesized frame.

    A precomputed frame^H frame may be passed to avoid repeating the
    large product when the caller also exports it.
    """
    defect = parseval_defect(frame, threads)
    cross = {"parsevalDefect": None if defect is None else list(defect)}
    if gram is None:
        gram = gram_from_frame(frame, threads)
    return _certify_gram(gram, frame.rows, defect is None, "frame", cross)


def verify_gram(gram: GaussianRationalMatrix, method: str = "gram") -> EtfCertificate:
    """Exact certification of an N x N Gram matrix claimed to be a projection."""
    if gram.shape[0] != gram.shape[1]:
        raise ValueError("gram matrix must be square")
    defect = None if not gram.is_hermitian() else first_mismatch(gram @ gram, gram)
    projection = gram.is_hermitian() and defect is None
    cross = {"projectionDefect": None if defect is None else list(defect)}
    tr_re, tr_im = gram.trace()
    if tr_im != 0 or tr_re.denominator != 1:
        projection = False
        m = 0
    else:
        m = int(tr_re)
    return _certify_gram(gram, m, projection, method, cross)


def verify_etf(obj, threads: int = 1) -> EtfCertificate:
    if isinstance(obj, FrameMatrix):
        return verify_frame(obj, threads)
    if isinstance(obj, GaussianRationalMatrix):
        return verify_gram(obj)
    raise TypeError(f"cannot certify {type(obj).__name__}")


# ---------------------------------------------------------------------------
# route agreement
# ---------------------------------------------------------------------------

def first_mismatch(a: GaussianRationalMatrix, b: GaussianRationalMatrix):
    ac, bc = a.canonical(), b.canonical()
    if ac.den == bc.den:
        bad = np.argwhere((ac.re != bc.re) | (ac.im != bc.im))
    else:
        bad = np.argwhere(
            (ac.re * bc.den != bc.re * ac.den) | (ac.im * bc.den != bc.im * ac.den))
    return None if len(bad) == 0 else (int(bad[0][0]), int(bad[0][1]))


def three_way_agreement(group: GroupContext, table: CharacterTable,
                        rep: RepContext | None = None, threads: int = 1) -> dict:
    """Full entrywise comparison of the three Gram routes."""
    if rep is None:
        rep = RepContext(group)
    g_frame = gram_from_frame(synthesize_frame(group, rep), threads)
    g_char = gram_character(group, table)
    g_closed = gram_closed_form(group)
    mismatches = {
        "frame_vs_character": first_mismatch(g_frame, g_char),
        "frame_vs_closedForm": first_mismatch(g_frame, g_closed),
        "character_vs_closedForm": first_mismatch(g_char, g_closed),
    }
    return {
        "entries": group.order ** 2,
        "agree": all(v is None for v in mismatches.values()),
        "mismatches": mismatches,
    }


def _isqrt_ceil(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r >= x else r + 1


def three_way_sampled(group: GroupContext, table: CharacterTable,
                      rep: RepContext | None = None, min_entries: int = 100_000,
                      seed: int = 1, threads: int = 1) -> dict:
    """Sampled comparison: a random block of columns, all pairs among them.

    The frame route builds only the sampled columns (honest monomial
    matrices); the character and closed-form routes are evaluated on the
    same index grid.  Also checks the diagonal / off-diagonal modulus
    pattern on every sampled entry.
    """
    if rep is None:
        rep = RepContext(group)
    rng = random.Random(seed)
    ncols = min(group.order, _isqrt_ceil(min_entries))
    sel = np.array(sorted(rng.sample(range(group.order), ncols)), dtype=np.int64)

    g_frame = gram_from_frame(_synthesize_columns(group, rep, sel), threads)
    g_char = gram_character(group, table, sel, sel)
    g_closed = gram_closed_form(group, sel, sel)
    mismatches = {
        "frame_vs_character": first_mismatch(g_frame, g_char),
        "frame_vs_closedForm": first_mismatch(g_frame, g_closed),
        "character_vs_closedForm": first_mismatch(g_char, g_closed),
    }

    m, num = frame_dimensions(group.field.n)
    _, welch_par = welch_bound_sq(m, num)
    sq, den = g_closed.abs_sq_int()
    diag_mask = sel[:, None] == sel[None, :]
    diag_ok = (g_closed.re[diag_mask] == g_closed.re[0, 0]).all() \
        and not g_closed.im[diag_mask].any() \
        and g_closed.entry(0, 0)[0] == Fraction(m, num)
    off = sq[~diag_mask]
    off_ok = bool(off.size == 0
                  or (off.min() == off.max() and Fraction(int(off[0]), den) == welch_par))
    return {
        "entries": int(ncols) ** 2,
        "columns": int(ncols),
        "seed": seed,
        "agree": all(v is None for v in mismatches.values()),
        "pattern_ok": bool(diag_ok and off_ok),
        "mismatches": mismatches,
    }


# ---------------------------------------------------------------------------
# bit-exact file formats
# ---------------------------------------------------------------------------

_HEADER = "LINEPACK-MATRIX v1"


def write_frame_file(path, frame: FrameMatrix) -> None:
    """Scaled Gaussian-integer matrix: entries `re;im`, scale 2^(num/den)."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{_HEADER} rows={frame.rows} cols={frame.cols} "
                 f"scale_log2_num={frame.log2_scale_sq} scale_log2_den=2\n")
        for r in range(frame.rows):
            row_re, row_im = frame.re[r], frame.im[r]
            fh.write(" ".join(f"{row_re[c]};{row_im[c]}" for c in range(frame.cols)))
            fh.write("\n")


def write_gram_file(path, gram: GaussianRationalMatrix) -> None:
    """Exact rational matrix: entries `p/q;r/s`, each fraction reduced."""
    g = gram.canonical()
    rows, cols = g.shape
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{_HEADER} rows={rows} cols={cols} scale_log2_num=0 scale_log2_den=1\n")
        for r in range(rows):
            parts = []
            for c in range(cols):
                re, im = int(g.re[r, c]), int(g.im[r, c])
                gr = math.gcd(abs(re), g.den)
                gi = math.gcd(abs(im), g.den)
                parts.append(f"{re // gr}/{g.den // gr};{im // gi}/{g.den // gi}")
            fh.write(" ".join(parts))
            fh.write("\n")


def iter_frame_row_blocks(group: GroupContext, rep: RepContext):
    """Yield the frame's row blocks (one per gamma) without materializing it.

    Each block is a (2^(2k), N) pair of int64 arrays; memory stays
    bounded for degrees whose full frame would not fit.
    """
    f = group.field
    n, k = f.n, f.k
    dim = 1 << k
    block = dim * dim
    q = f.order
    ys = np.arange(q, dtype=np.int64)
    for gamma in f.nonzero_elements():
        ginv = f.inv(gamma)
        ginv3 = f.inv(f.cube(gamma))
        signs = 1 - 2 * f.trace_table[f.mul_table[ginv3, ys]].astype(np.int64)
        re = np.empty((block, q * q), dtype=np.int64)
        im = np.empty((block, q * q), dtype=np.int64)
        for x in range(q):
            dre, dim_ = rep._rep_x0[f.mul(ginv, x)].dense()
            cols = slice(x * q, (x + 1) * q)
            re[:, cols] = dre.reshape(block, 1) * signs[None, :]
            im[:, cols] = dim_.reshape(block, 1) * signs[None, :]
        yield re, im


def write_frame_file_streaming(path, group: GroupContext, rep: RepContext) -> None:
    """Row-block streaming variant of write_frame_file; identical bytes."""
    f = group.field
    m, num = frame_dimensions(f.n)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{_HEADER} rows={m} cols={num} "
                 f"scale_log2_num={f.k - 2 * f.n} scale_log2_den=2\n")
        for re, im in iter_frame_row_blocks(group, rep):
            for r in range(re.shape[0]):
                row_re, row_im = re[r], im[r]
                fh.write(" ".join(f"{row_re[c]};{row_im[c]}" for c in range(num)))
                fh.write("\n")


class MatrixParseError(ValueError):
    pass


def read_matrix_file(path):
    """Parse a v1 matrix file; returns a FrameMatrix or GaussianRationalMatrix."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if header[:2] != _HEADER.split():
            raise MatrixParseError("missing LINEPACK-MATRIX v1 header")
        try:
            fields = dict(tok.split("=", 1) for tok in header[2:])
            rows, cols = int(fields["rows"]), int(fields["cols"])
            snum, sden = int(fields["scale_log2_num"]), int(fields["scale_log2_den"])
        except (KeyError, ValueError) as exc:
            raise MatrixParseError(f"malformed header: {exc}") from exc
        body = fh.read().split("\n")
    lines = [ln for ln in body if ln]
    if len(lines) != rows:
        raise MatrixParseError(f"expected {rows} rows, found {len(lines)}")
    rational = "/" in lines[0].split(" ", 1)[0]
    re = np.zeros((rows, cols), dtype=np.int64)
    im = np.zeros((rows, cols), dtype=np.int64)
    if not rational:
        for r, ln in enumerate(lines):
            toks = ln.split(" ")
            if len(toks) != cols:
                raise MatrixParseError(f"row {r} has {len(toks)} entries, expected {cols}")
            try:
                for c, tok in enumerate(toks):
                    a, b = tok.split(";")
                    re[r, c], im[r, c] = int(a), int(b)
            except ValueError as exc:
                raise MatrixParseError(f"bad entry in row {r}: {exc}") from exc
        if sden not in (1, 2):
            raise MatrixParseError("unsupported scale denominator")
        return FrameMatrix(re, im, snum * 2 // sden)
    dens: set[int] = set()
    entries = []
    for r, ln in enumerate(lines):
        toks = ln.split(" ")
        if len(toks) != cols:
            raise MatrixParseError(f"row {r} has {len(toks)} entries, expected {cols}")
        row = []
        try:
            for tok in toks:
                a, b = tok.split(";")
                rp, rq = a.split("/")
                ip, iq = b.split("/")
                fr = Fraction(int(rp), int(rq))
                fi = Fraction(int(ip), int(iq))
                dens.add(fr.denominator)
                dens.add(fi.denominator)
                row.append((fr, fi))
        except (ValueError, ZeroDivisionError) as exc:
            raise MatrixParseError(f"bad entry in row {r}: {exc}") from exc
        entries.append(row)
    den = 1
    for d in dens:
        den = den * d // math.gcd(den, d)
    for r in range(rows):
        for c in range(cols):
            fr, fi = entries[r][c]
            re[r, c] = fr.numerator * (den // fr.denominator)
            im[r, c] = fi.numerator * (den // fi.denominator)
    return GaussianRationalMatrix(re, im, den)
