"""Finite Heisenberg group over Z_2^k and the degree-2^k representations.

The Heisenberg group here is generated by translation and modulation
operators on the 2^k-point function space over Z_2^k:

    (T_s f)(x) = f(x - e_s)          (M_t f)(x) = (-1)^(x . e_t) f(x)

They satisfy T_s^2 = M_t^2 = I, translations commute, modulations
commute, and T_s M_t = (-1)^(delta_st) M_t T_s; the group they generate
has order 2^(2k+1) and acts irreducibly.  Adjoining the scalar iI gives
the extended group of order 2^(2k+2) in which the Suzuki 2-group of
order 2^(2n), n = 2k+1, has its degree-2^k representations.

All operators are monomial (one nonzero entry per row and column, a
fourth root of unity), so they are stored as a permutation plus a vector
of powers of i and multiplied in O(2^k).  Dense Gaussian-integer forms
are materialized only for frame assembly.

A RepContext carries the distinguished representation pi of the Suzuki
group: a symplectic basis (x_s, y_t) of the trace-zero subspace is
pushed through the section of the Artin-Schreier map to field elements
a_s, b_t, and pi sends

    (a_s, y) -> (-1)^tr(y) i^tr(a_s^3) T_s
    (b_t, y) -> (-1)^tr(y) i^tr(b_t^3) M_t
    (1,   y) -> (-1)^tr(y) i I.

On an arbitrary element (x, y) the value is fixed by decomposing x over
the basis {a_s} + {b_t} + {1}, multiplying the generator images in that
fixed order, and correcting by the central character (-1)^tr(c + y),
where (x, c) is the same generator product taken inside the group.  The
family realizing the hyperdifference set is obtained by precomposing pi
with the cube-scaling automorphisms, one per nonzero field element.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .bgroup import Element, GroupContext

__all__ = [
    "MonomialMatrix",
    "RepContext",
    "heisenberg_generators",
    "modulation_matrices",
    "translation_matrices",
]


@dataclass(frozen=True)
class MonomialMatrix:
    """Unitary monomial matrix: row r has entry i^iexp[r] in column perm[r]."""

    perm: tuple[int, ...]
    iexp: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.perm)

    @staticmethod
    def identity(size: int) -> "MonomialMatrix":
        return MonomialMatrix(tuple(range(size)), (0,) * size)

    @staticmethod
    def scalar(size: int, iexp: int) -> "MonomialMatrix":
        return MonomialMatrix(tuple(range(size)), (iexp % 4,) * size)

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        perm = tuple(other.perm[p] for p in self.perm)
        iexp = tuple((self.iexp[r] + other.iexp[self.perm[r]]) % 4 for r in range(self.size))
        return MonomialMatrix(perm, iexp)

    def times_i_power(self, e: int) -> "MonomialMatrix":
        return MonomialMatrix(self.perm, tuple((p + e) % 4 for p in self.iexp))

    def inverse(self) -> "MonomialMatrix":
        """Conjugate transpose, which is the inverse for unitary monomials."""
        perm = [0] * self.size
        iexp = [0] * self.size
        for r, c in enumerate(self.perm):
            perm[c] = r
            iexp[c] = (-self.iexp[r]) % 4
        return MonomialMatrix(tuple(perm), tuple(iexp))

    def trace(self) -> tuple[int, int]:
        """Trace as a Gaussian integer (re, im)."""
        re = im = 0
        for r in range(self.size):
            if self.perm[r] == r:
                e = self.iexp[r]
                if e == 0:
                    re += 1
                elif e == 1:
                    im += 1
                elif e == 2:
                    re -= 1
                else:
                    im -= 1
        return re, im

    def dense(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense Gaussian-integer form as (re, im) int64 arrays."""
        re = np.zeros((self.size, self.size), dtype=np.int64)
        im = np.zeros((self.size, self.size), dtype=np.int64)
        rows = np.arange(self.size)
        cols = np.array(self.perm)
        e = np.array(self.iexp)
        re[rows, cols] = np.where(e == 0, 1, 0) - np.where(e == 2, 1, 0)
        im[rows, cols] = np.where(e == 1, 1, 0) - np.where(e == 3, 1, 0)
        return re, im


def translation_matrices(k: int) -> list[MonomialMatrix]:
    """T_s: permutation by XOR with the s-th basis bit of the index."""
    size = 1 << k
    return [MonomialMatrix(tuple(x ^ (1 << s) for x in range(size)), (0,) * size)
            for s in range(k)]


def modulation_matrices(k: int) -> list[MonomialMatrix]:
    """M_t: diagonal of signs read off bit t of the index."""
    size = 1 << k
    return [MonomialMatrix(tuple(range(size)),
                           tuple(2 * ((x >> t) & 1) for x in range(size)))
            for t in range(k)]


def heisenberg_generators(k: int) -> tuple[list[MonomialMatrix], list[MonomialMatrix]]:
    if k < 1:
        raise ValueError("k must be >= 1")
    return translation_matrices(k), modulation_matrices(k)


def _echelonize(basis: list[int]) -> list[tuple[int, int]]:
    """Row echelon form of GF(2) vectors with combination masks attached."""
    rows: list[tuple[int, int]] = []
    for pos, vec in enumerate(basis):
        v, m = vec, 1 << pos
        for ev, em in rows:
            if v & (1 << (ev.bit_length() - 1)):
                v ^= ev
                m ^= em
        if v == 0:
            raise ValueError("generator field elements are linearly dependent")
        rows.append((v, m))
        rows.sort(key=lambda r: -r[0])
    return rows


class RepContext:
    """The distinguished degree-2^k representation of a Suzuki 2-group."""

    def __init__(self, group: GroupContext, xs: list[int] | None = None,
                 ys: list[int] | None = None):
        field = group.field
        self.group = group
        self.field = field
        self.k = field.k
        self.dim = 1 << self.k
        if xs is None or ys is None:
            xs, ys = field.symplectic_basis()
        field.validate_symplectic_basis(xs, ys)
        self.sympl_x = list(xs)
        self.sympl_y = list(ys)
        self.alphas = [field.artin_schreier_section(x) for x in xs]
        self.betas = [field.artin_schreier_section(y) for y in ys]
        self.basis = self.alphas + self.betas + [1]
        self._echelon = _echelonize(self.basis)

        ts, ms = heisenberg_generators(self.k)
        images = [t.times_i_power(field.trace(field.cube(a)))
                  for t, a in zip(ts, self.alphas)]
        images += [m.times_i_power(field.trace(field.cube(b)))
                   for m, b in zip(ms, self.betas)]
        images.append(MonomialMatrix.scalar(self.dim, 1))
        self.generator_images = images
        self.generator_elements = [(b, 0) for b in self.basis]

    def decompose(self, x: int) -> int:
        """Bitmask over the generator basis whose XOR is x."""
        v, m = x, 0
        for ev, em in self._echelon:
            if v & (1 << (ev.bit_length() - 1)):
                v ^= ev
                m ^= em
        if v != 0:
            raise AssertionError("basis decomposition failed")
        return m

    @cached_property
    def _rep_x0(self) -> list[MonomialMatrix]:
        """Images of (x, 0) for every field element x, in the fixed product order."""
        field = self.field
        out = []
        for x in range(field.order):
            mask = self.decompose(x)
            mat = MonomialMatrix.identity(self.dim)
            acc = self.group.identity
            for pos in range(len(self.basis)):
                if mask & (1 << pos):
                    mat = mat @ self.generator_images[pos]
                    acc = self.group.mul(acc, self.generator_elements[pos])
            if acc[0] != x:
                raise AssertionError("generator product landed on the wrong element")
            # the product reaches (x, c); correct by the central character at c
            mat = mat.times_i_power(2 * field.trace(acc[1]))
            out.append(mat)
        return out

    def rep(self, g: Element) -> MonomialMatrix:
        """pi(x, y) = pi(x, 0) (-1)^tr(y)."""
        return self._rep_x0[g[0]].times_i_power(2 * self.field.trace(g[1]))

    def rep_twisted(self, gamma: int, g: Element) -> MonomialMatrix:
        """Member gamma of the hyperdifference family: pi after inverse scaling."""
        ginv = self.field.inv(gamma)
        return self.rep(self.group.scaling_automorphism(ginv, g))

    def twisted_evaluators(self):
        """One representation evaluator per nonzero gamma, ascending."""
        def make(gamma):
            return lambda g: self.rep_twisted(gamma, g)
        return [make(gamma) for gamma in self.field.nonzero_elements()]
