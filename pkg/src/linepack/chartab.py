"""Exact complex character table of the Suzuki 2-group.

The group of order 2^(2n) has 2^n linear characters and 2(2^n - 1)
characters of degree 2^k, k = (n-1)/2, and nothing else:

* linear, one per field element c:  (x, y) -> (-1)^tr(cx); these are
  exactly the characters trivial on the commutator subgroup {0} x F.
* nonlinear, one conjugate pair per nonzero gamma:

      (x, y) -> 0                                   x not in {0, gamma}
      (0, y) -> 2^k (-1)^tr(gamma^-3 y)
      (gamma, y) -> +/- i 2^k (-1)^tr(gamma^-3 y)

The "+" family is pinned as the orbit of the Heisenberg-model character
under the cube-scaling automorphisms and forms the hyperdifference set;
the "-" family consists of its complex conjugates.  Values in the "+"
family are cross-checked against traces of the monomial representation
during construction.

All values are Gaussian integers scaled by powers of two and every
computation in this module is exact; no floating point appears anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .bgroup import ConjugacyClass, Element, GroupContext
from .heis import RepContext

__all__ = [
    "Character",
    "CharacterTable",
    "GaussianScaled",
    "build_character_table",
    "linear_characters",
    "nonlinear_characters",
]


@dataclass(frozen=True)
class GaussianScaled:
    """Exact value (re + i im) * 2^log2 with re, im not both even unless zero."""

    re: int
    im: int
    log2: int

    @staticmethod
    def make(re: int, im: int = 0, log2: int = 0) -> "GaussianScaled":
        if re == 0 and im == 0:
            return GaussianScaled(0, 0, 0)
        while re % 2 == 0 and im % 2 == 0:
            re //= 2
            im //= 2
            log2 += 1
        return GaussianScaled(re, im, log2)

    def __add__(self, other: "GaussianScaled") -> "GaussianScaled":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        s = min(self.log2, other.log2)
        return GaussianScaled.make(
            (self.re << (self.log2 - s)) + (other.re << (other.log2 - s)),
            (self.im << (self.log2 - s)) + (other.im << (other.log2 - s)),
            s,
        )

    def __neg__(self) -> "GaussianScaled":
        return GaussianScaled(-self.re, -self.im, self.log2) if not self.is_zero() else self

    def __sub__(self, other: "GaussianScaled") -> "GaussianScaled":
        return self + (-other)

    def __mul__(self, other: "GaussianScaled") -> "GaussianScaled":
        return GaussianScaled.make(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.log2 + other.log2,
        )

    def conjugate(self) -> "GaussianScaled":
        return GaussianScaled(self.re, -self.im, self.log2)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def abs_sq(self) -> Fraction:
        mag = self.re * self.re + self.im * self.im
        return Fraction(mag) * _pow2_fraction(2 * self.log2)

    def as_fraction_pair(self) -> tuple[Fraction, Fraction]:
        scale = _pow2_fraction(self.log2)
        return Fraction(self.re) * scale, Fraction(self.im) * scale

    def as_gaussian_int(self) -> tuple[int, int]:
        """(re, im) as plain integers; requires a nonnegative scale."""
        if self.log2 < 0:
            raise ValueError(f"{self} is not a Gaussian integer")
        return self.re << self.log2, self.im << self.log2


GaussianScaled.ZERO = GaussianScaled(0, 0, 0)
GaussianScaled.ONE = GaussianScaled(1, 0, 0)


def _pow2_fraction(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


@dataclass(frozen=True)
class Character:
    """Exact class function; `values` aligns with the group's class list."""

    kind: str           # "linear" | "nonlinear"
    parameter: int      # c for linear, gamma for nonlinear
    sign: int           # 0 for linear, +1 / -1 for the conjugate pair
    degree: int
    values: tuple[GaussianScaled, ...]

    @property
    def label(self) -> str:
        if self.kind == "linear":
            return f"lin[{self.parameter}]"
        return f"nl{'+' if self.sign > 0 else '-'}[{self.parameter}]"

    def value_on_class(self, class_index: int) -> GaussianScaled:
        return self.values[class_index]


def linear_characters(group: GroupContext) -> list[Character]:
    """(x, y) -> (-1)^tr(cx) for every field element c, ascending."""
    field = group.field
    classes = group.conjugacy_classes
    out = []
    for c in range(field.order):
        vals = tuple(
            GaussianScaled.make(1 - 2 * field.trace(field.mul(c, cls.representative[0])))
            for cls in classes
        )
        out.append(Character("linear", c, 0, 1, vals))
    return out


def _nonlinear_value(group: GroupContext, gamma: int, sign: int, g: Element) -> GaussianScaled:
    field = group.field
    x, y = g
    if x not in (0, gamma):
        return GaussianScaled.ZERO
    parity = field.hyperplane_quotient(gamma, y)
    if x == 0:
        return GaussianScaled.make(1 - 2 * parity, 0, field.k)
    return GaussianScaled.make(0, sign * (1 - 2 * parity), field.k)


def nonlinear_characters(group: GroupContext, rep: RepContext | None = None,
                         cross_check: bool = True) -> tuple[list[Character], list[Character]]:
    """The conjugate pair of degree-2^k characters for each nonzero gamma.

    Returns (plus_family, minus_family), each ordered by gamma ascending.
    When cross-checking, the "+" values must match the traces of the
    twisted monomial representations on every class representative.
    """
    field = group.field
    classes = group.conjugacy_classes
    if cross_check and rep is None:
        rep = RepContext(group)
    plus: list[Character] = []
    minus: list[Character] = []
    for gamma in field.nonzero_elements():
        vp = tuple(_nonlinear_value(group, gamma, +1, cls.representative) for cls in classes)
        vm = tuple(v.conjugate() for v in vp)
        if cross_check:
            for cls, val in zip(classes, vp):
                tr_re, tr_im = rep.rep_twisted(gamma, cls.representative).trace()
                if (tr_re, tr_im) != val.as_gaussian_int():
                    raise AssertionError(
                        f"character value disagrees with representation trace at "
                        f"gamma={gamma}, class rep {cls.representative}"
                    )
        plus.append(Character("nonlinear", gamma, +1, 1 << field.k, vp))
        minus.append(Character("nonlinear", gamma, -1, 1 << field.k, vm))
    return plus, minus


@dataclass(frozen=True)
class CharacterTable:
    group: GroupContext
    classes: tuple[ConjugacyClass, ...]
    characters: tuple[Character, ...]
    d_set: tuple[int, ...]      # indices of the "+" family, gamma ascending

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(ch.degree for ch in self.characters)

    @cached_property
    def value_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(re, im) int64 arrays of shape (characters, classes); exact."""
        nchar, ncls = len(self.characters), len(self.classes)
        re = np.zeros((nchar, ncls), dtype=np.int64)
        im = np.zeros((nchar, ncls), dtype=np.int64)
        for i, ch in enumerate(self.characters):
            for j, v in enumerate(ch.values):
                re[i, j], im[i, j] = v.as_gaussian_int()
        return re, im

    @cached_property
    def conjugate_index(self) -> tuple[int, ...]:
        """For each character, the index of its complex conjugate in the table."""
        re, im = self.value_arrays
        out = []
        for i in range(len(self.characters)):
            match = np.where((re == re[i]).all(axis=1) & (im == -im[i]).all(axis=1))[0]
            if len(match) != 1:
                raise AssertionError("conjugate character is not unique")
            out.append(int(match[0]))
        return tuple(out)

    def character_index(self, kind: str, parameter: int, sign: int = 0) -> int:
        for i, ch in enumerate(self.characters):
            if (ch.kind, ch.parameter, ch.sign) == (kind, parameter, sign):
                return i
        raise KeyError((kind, parameter, sign))

    def verify(self) -> None:
        """Exact structural checks: square table, degree sum, orthogonality."""
        nchar, ncls = len(self.characters), len(self.classes)
        if nchar != ncls:
            raise AssertionError(f"table is not square: {nchar} characters, {ncls} classes")
        order = self.group.order
        if sum(d * d for d in self.degrees) != order:
            raise AssertionError("squared degrees do not sum to the group order")
        re, im = self.value_arrays
        w = np.array(self.class_sizes, dtype=np.int64)
        # first orthogonality: sum_g chi(g) conj(chi'(g)) = |G| delta
        gram_re = (re * w) @ re.T + (im * w) @ im.T
        gram_im = (im * w) @ re.T - (re * w) @ im.T
        if not (np.array_equal(gram_re, order * np.eye(nchar, dtype=np.int64))
                and not gram_im.any()):
            raise AssertionError("row orthogonality fails")
        # second orthogonality: sum_chi chi(g) conj(chi(h)) = |G|/|class| delta
        col_re = re.T @ re + im.T @ im
        col_im = re.T @ im - im.T @ re
        expect = np.diag(order // w)
        if not (np.array_equal(col_re, expect) and not col_im.any()):
            raise AssertionError("column orthogonality fails")
        # degree column at the identity class
        if not np.array_equal(re[:, 0], np.array(self.degrees)) or im[:, 0].any():
            raise AssertionError("identity-class column disagrees with the degrees")

    def d_set_sum(self, class_index: int, weighted: bool = False) -> GaussianScaled:
        """Sum of the hyperdifference-family values on one class."""
        total = GaussianScaled.ZERO
        for j in self.d_set:
            ch = self.characters[j]
            v = ch.values[class_index]
            if weighted:
                v = v * GaussianScaled.make(ch.degree)
            total = total + v
        return total

    def to_json_dict(self) -> dict:
        return {
            "order": self.group.order,
            "modulus": self.group.field.modulus,
            "classes": [
                {"representative": list(c.representative), "size": c.size}
                for c in self.classes
            ],
            "characters": [
                {
                    "label": ch.label,
                    "degree": ch.degree,
                    "values": [
                        {"re": v.re, "im": v.im, "log2": v.log2} for v in ch.values
                    ],
                }
                for ch in self.characters
            ],
            "d_set": [self.characters[j].label for j in self.d_set],
        }


def build_character_table(group: GroupContext, rep: RepContext | None = None,
                          cross_check: bool = True) -> CharacterTable:
    """Assemble and verify the full table: linear block, then "+", then "-"."""
    lin = linear_characters(group)
    plus, minus = nonlinear_characters(group, rep, cross_check=cross_check)
    chars = tuple(lin + plus + minus)
    d_set = tuple(range(len(lin), len(lin) + len(plus)))
    table = CharacterTable(group, group.conjugacy_classes, chars, d_set)
    table.verify()
    return table
