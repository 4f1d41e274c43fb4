"""B-product groups over GF(2^n), specialized to the Suzuki 2-group.

The B-product of the additive group of GF(2^n) with itself twists the
second coordinate by a bilinear 2-cocycle B:

    (u, v) * (x, y) = (u + x, v + y + B(u, x))

The shipped cocycle is B(a, b) = a b^2, which makes the product the
Suzuki 2-group of order 2^(2n).  Its structure is driven entirely by the
antisymmetrized map Bhat(u, x) = B(u, x) + B(x, u): the center is
(ker of u -> Bhat(u, .)) x F, the commutator subgroup is {0} x span(Bhat),
and the conjugacy class of (u, v) is {u} x (v + range of Bhat(u, .)).
For the Suzuki cocycle the range of Bhat(u, .) is the hyperplane attached
to u^3, so noncentral classes have size 2^(n-1).

A custom bilinear cocycle may be supplied for experimentation, but only
the default is exercised by the rest of the package; the cube-scaling
automorphisms in particular exist only for the Suzuki cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .gf2n import FieldContext

__all__ = ["ConjugacyClass", "GroupContext"]

Element = tuple[int, int]


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Element
    members: tuple[Element, ...]

    @property
    def size(self) -> int:
        return len(self.members)


class GroupContext:
    """The group GF(2^n) x_B GF(2^n) with the canonical element order.

    Elements are (x, y) int pairs; the canonical enumeration is x outer,
    y inner, both ascending, and every matrix in the package indexes its
    rows and columns in this order.  Immutable once the class partition
    is computed.
    """

    def __init__(self, field: FieldContext, bilinear: Callable[[int, int], int] | None = None):
        self.field = field
        self.order = field.order ** 2
        self._default_cocycle = bilinear is None
        if bilinear is None:
            bilinear = lambda u, x: field.mul(u, field.square(x))
        self._B = bilinear
        self.identity: Element = (0, 0)

    # ------------------------------------------------------------------
    # group law
    # ------------------------------------------------------------------

    def cocycle(self, u: int, x: int) -> int:
        return self._B(u, x)

    def cocycle_hat(self, u: int, x: int) -> int:
        """Antisymmetrized cocycle, the commutator map on first coordinates."""
        return self._B(u, x) ^ self._B(x, u)

    def mul(self, a: Element, b: Element) -> Element:
        return (a[0] ^ b[0], a[1] ^ b[1] ^ self._B(a[0], b[0]))

    def inv(self, a: Element) -> Element:
        # characteristic 2: -(u, v) has second coordinate v + B(u, u)
        return (a[0], a[1] ^ self._B(a[0], a[0]))

    def conjugate(self, g: Element, h: Element) -> Element:
        """h^-1 g h."""
        return self.mul(self.mul(self.inv(h), g), h)

    def commutator(self, g: Element, h: Element) -> Element:
        return self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))

    # ------------------------------------------------------------------
    # canonical enumeration
    # ------------------------------------------------------------------

    def index(self, g: Element) -> int:
        return (g[0] << self.field.n) | g[1]

    def element(self, idx: int) -> Element:
        return (idx >> self.field.n, idx & (self.field.order - 1))

    def elements(self):
        q = self.field.order
        for x in range(q):
            for y in range(q):
                yield (x, y)

    # ------------------------------------------------------------------
    # conjugacy classes
    # ------------------------------------------------------------------

    @cached_property
    def conjugacy_classes(self) -> tuple[ConjugacyClass, ...]:
        """Class partition in canonical order: central singletons first
        (y ascending), then for each x ascending the two classes on the
        cosets of the commutator range, ordered by least member."""
        field = self.field
        classes: list[ConjugacyClass] = []
        for u in range(field.order):
            rng = sorted({self.cocycle_hat(u, w) for w in range(field.order)})
            rng_set = set(rng)
            seen: set[int] = set()
            for v in range(field.order):
                if v in seen:
                    continue
                coset = sorted(v ^ r for r in rng_set)
                seen.update(coset)
                members = tuple((u, w) for w in coset)
                classes.append(ConjugacyClass(members[0], members))
        if sum(c.size for c in classes) != self.order:
            raise AssertionError("class sizes do not sum to the group order")
        return tuple(classes)

    @cached_property
    def class_of_element(self) -> np.ndarray:
        """Element index -> conjugacy class index."""
        arr = np.full(self.order, -1, dtype=np.int32)
        for ci, cls in enumerate(self.conjugacy_classes):
            for g in cls.members:
                arr[self.index(g)] = ci
        if (arr < 0).any():
            raise AssertionError("class partition is not a partition")
        return arr

    def class_sizes(self) -> list[int]:
        return [c.size for c in self.conjugacy_classes]

    # ------------------------------------------------------------------
    # center and commutator subgroup
    # ------------------------------------------------------------------

    @cached_property
    def center(self) -> tuple[Element, ...]:
        """(ker of u -> Bhat(u, .)) x F, computed from the cocycle on a basis."""
        field = self.field
        basis = [1 << j for j in range(field.n)]
        kernel = [u for u in range(field.order)
                  if all(self.cocycle_hat(u, w) == 0 for w in basis)]
        return tuple((u, v) for u in kernel for v in range(field.order))

    @cached_property
    def commutator_subgroup(self) -> tuple[Element, ...]:
        """{0} x span of the antisymmetrized cocycle values."""
        field = self.field
        basis = [1 << j for j in range(field.n)]
        span = {0}
        for u in basis:
            for w in basis:
                b = self.cocycle_hat(u, w)
                if b and b not in span:
                    span |= {s ^ b for s in span}
        return tuple((0, v) for v in sorted(span))

    # ------------------------------------------------------------------
    # hyperplane quotients and scaling automorphisms (Suzuki cocycle)
    # ------------------------------------------------------------------

    def quotient_epimorphism(self, gamma: int, g: Element) -> tuple[int, int]:
        """Projection onto the order-2^(n+1) quotient attached to gamma != 0.

        Sends (x, y) to (x, tr(gamma^-3 y)); the kernel is {0} x (the
        hyperplane attached to gamma).
        """
        return (g[0], self.field.hyperplane_quotient(gamma, g[1]))

    def quotient_law(self, gamma: int, a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
        """Multiplication in the quotient group: the cocycle becomes a bit."""
        bit = self.field.hyperplane_quotient(gamma, self._B(a[0], b[0]))
        return (a[0] ^ b[0], a[1] ^ b[1] ^ bit)

    def scaling_automorphism(self, gamma: int, g: Element) -> Element:
        """(x, y) -> (gamma x, gamma^3 y); an automorphism for the Suzuki cocycle."""
        if gamma == 0:
            raise ZeroDivisionError("scaling automorphism requires gamma != 0")
        if not self._default_cocycle:
            raise ValueError("scaling automorphisms require the default cocycle")
        f = self.field
        return (f.mul(gamma, g[0]), f.mul(f.cube(gamma), g[1]))

    # ------------------------------------------------------------------
    # vectorized index machinery (default cocycle only)
    # ------------------------------------------------------------------

    def _require_default(self) -> None:
        if not self._default_cocycle:
            raise ValueError("vectorized paths require the default cocycle")

    @cached_property
    def element_xy_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        idx = np.arange(self.order, dtype=np.int64)
        return idx >> self.field.n, idx & (self.field.order - 1)

    @cached_property
    def inverse_index_array(self) -> np.ndarray:
        """Element index -> index of the inverse element."""
        self._require_default()
        f = self.field
        xs, ys = self.element_xy_arrays
        return (xs << f.n) | (ys ^ f.cube_table[xs])

    def inverse_product_index_grid(self, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
        """Index of inv(g) * h on the grid rows x cols of element indices.

        This is the argument on which every group-scheme matrix entry
        depends: the (g, h) entry of any matrix in the adjacency algebra
        is a function of the class of inv(g) * h.
        """
        self._require_default()
        f = self.field
        n, mask = f.n, f.order - 1
        gx, gy = rows >> n, rows & mask
        hx, hy = cols >> n, cols & mask
        wx = gx[:, None] ^ hx[None, :]
        wy = (gy ^ f.cube_table[gx])[:, None] ^ hy[None, :]
        wy ^= f.mul_table[gx[:, None], f.square_table[hx][None, :]]
        return (wx << n) | wy

    @cached_property
    def inverse_product_index_matrix(self) -> np.ndarray:
        """Full order x order grid of inv(g) * h indices (n <= 5 only)."""
        if self.order > 1 << 10:
            raise ValueError("full index matrix is too large; use inverse_product_index_grid")
        idx = np.arange(self.order, dtype=np.int64)
        return self.inverse_product_index_grid(idx, idx)

    def __repr__(self) -> str:
        return f"GroupContext(order={self.order}, field={self.field!r})"
