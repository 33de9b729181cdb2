"""Complex tori presented by lattices and complex structures.

A torus is (Z^{2g}, J) with J a 2g x 2g matrix over Q(sqrt(d)) satisfying
J^2 = -Id; a morphism is an integer matrix T that intertwines the complex
structures (J_B T = T J_A).  The same integer matrix serves as both the
lattice-level and the real-analytic representation of the morphism, read
over different rings.  Duals are (Z^{2g}, -J^T) with the double dual
identified with the torus itself (both name and matrix round-trip).
"""

from __future__ import annotations

import itertools
from typing import Optional

from .errors import InvariantError, NotAnIsogenyError, UsageError
from .matrices import IntMatrix, ScalarMatrix, integer_kernel, invariant_factors
from .scalars import Scalar


class ComplexTorus:
    """A g-dimensional complex torus (Z^{2g}, J) with a display name.

    Equality is structural: same name and exactly the same J.  Sessions are
    small catalogs, so identity-by-presentation replaces isomorphism testing.
    """

    __slots__ = ("name", "J", "g")

    def __init__(self, name: str, J: ScalarMatrix):
        if J.rows != J.cols or J.rows % 2 != 0:
            raise InvariantError(f"J must be square of even size at torus {name}")
        n = J.rows
        if (J @ J) != ScalarMatrix.identity(n) * Scalar(-1):
            raise InvariantError(f"J^2 != -I at torus {name}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "g", n // 2)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexTorus is immutable")

    def __eq__(self, other):
        return (isinstance(other, ComplexTorus)
                and self.name == other.name and self.J == other.J)

    def __hash__(self):
        return hash((self.name, self.J))

    def __repr__(self):
        return f"ComplexTorus({self.name!r}, g={self.g})"

    def dual(self) -> "ComplexTorus":
        """The dual torus (Z^{2g}, -J^T); dual of the dual is this torus."""
        name = self.name[:-1] if self.name.endswith("^") else self.name + "^"
        return ComplexTorus(name, -(self.J.T))

    def identity_hom(self) -> "TorusHom":
        return TorusHom(self, self, IntMatrix.identity(2 * self.g))

    def mult_by(self, n: int) -> "TorusHom":
        return TorusHom(self, self, IntMatrix.identity(2 * self.g) * n)

    def extension_tags(self) -> set[int]:
        return {x.d for row in self.J.entries for x in row if x.d != 1}


def product_torus(name: str, a: ComplexTorus, b: ComplexTorus) -> ComplexTorus:
    """The product torus with block-diagonal complex structure."""
    za = ScalarMatrix.zero(2 * a.g, 2 * b.g)
    zb = ScalarMatrix.zero(2 * b.g, 2 * a.g)
    return ComplexTorus(name, ScalarMatrix.from_blocks([[a.J, za], [zb, b.J]]))


class TorusHom:
    """A morphism of complex tori, stored as its integer matrix.

    The intertwining identity J_B T = T J_A is verified exactly at
    construction; invalid matrices never become morphisms.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: ComplexTorus, target: ComplexTorus, matrix: IntMatrix):
        if matrix.shape() != (2 * target.g, 2 * source.g):
            raise UsageError(
                f"morphism matrix must be {2 * target.g}x{2 * source.g}, "
                f"got {matrix.shape()[0]}x{matrix.shape()[1]}")
        t = matrix.to_scalar()
        if target.J @ t != t @ source.J:
            raise InvariantError(
                f"matrix does not intertwine complex structures "
                f"({source.name} -> {target.name})")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("TorusHom is immutable")

    def __eq__(self, other):
        return (isinstance(other, TorusHom) and self.source == other.source
                and self.target == other.target and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"TorusHom({self.source.name} -> {self.target.name}, {self.matrix.entries})"

    # Morphisms add within a hom space and compose across them.

    def __add__(self, other: "TorusHom") -> "TorusHom":
        self._same_space(other)
        return TorusHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "TorusHom") -> "TorusHom":
        self._same_space(other)
        return TorusHom(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "TorusHom":
        return TorusHom(self.source, self.target, -self.matrix)

    def __mul__(self, k: int) -> "TorusHom":
        return TorusHom(self.source, self.target, self.matrix * k)

    __rmul__ = __mul__

    def __matmul__(self, other: "TorusHom") -> "TorusHom":
        """Composition self o other."""
        if other.target != self.source:
            raise UsageError(
                f"cannot compose {self.source.name}->{self.target.name} "
                f"after {other.source.name}->{other.target.name}")
        return TorusHom(other.source, self.target, self.matrix @ other.matrix)

    def _same_space(self, other: "TorusHom"):
        if self.source != other.source or self.target != other.target:
            raise UsageError("morphisms live in different hom spaces")

    def transpose(self) -> "TorusHom":
        """The transposed morphism between the dual tori (matrix T^T)."""
        return TorusHom(self.target.dual(), self.source.dual(), self.matrix.T)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def degree(self) -> Optional[int]:
        """Degree [lattice : image] when this is an isogeny, else None."""
        return is_isogeny(self)


def dual(a: ComplexTorus) -> ComplexTorus:
    return a.dual()


def hom_lattice(a: ComplexTorus, b: ComplexTorus) -> list[TorusHom]:
    """Saturated Z-basis of {T integer : J_B T = T J_A}.

    The intertwining condition is linear in the entries of T; with row-major
    vectorization it reads (J_B kron I - I kron J_A^T) vec(T) = 0, and the
    integer kernel of that operator is the hom lattice.  The basis order is
    deterministic (lexicographic on the vectorized output).
    """
    na, nb = 2 * a.g, 2 * b.g
    rows = []
    for i in range(nb):
        for j in range(na):
            row = []
            for k in range(nb):
                for l in range(na):
                    val = Scalar(0)
                    if l == j:
                        val = val + b.J.entries[i][k]
                    if k == i:
                        val = val - a.J.entries[l][j]
                    row.append(val)
            rows.append(row)
    kernel = integer_kernel(ScalarMatrix(rows))
    return [TorusHom(a, b, IntMatrix.from_vec(vec, nb, na)) for vec in kernel]


def transpose_hom(f: TorusHom) -> TorusHom:
    return f.transpose()


def is_isogeny(f: TorusHom) -> Optional[int]:
    """The degree |det T| = [target lattice : image], or None if det T = 0."""
    if f.source.g != f.target.g:
        raise UsageError("isogenies need equal dimensions")
    d = f.matrix.det()
    return abs(d) if d != 0 else None


def degree_via_snf(f: TorusHom) -> Optional[int]:
    """Same degree computed as the product of invariant factors."""
    if f.source.g != f.target.g:
        raise UsageError("isogenies need equal dimensions")
    factors = invariant_factors(f.matrix)
    deg = 1
    for x in factors:
        if x == 0:
            return None
        deg *= x
    return deg


def quasi_inverse(f: TorusHom) -> tuple[int, TorusHom]:
    """Minimal n with n * T^{-1} integral, and psi = n * T^{-1} : B -> A.

    psi o f = n_A and f o psi = n_B hold exactly.
    """
    if is_isogeny(f) is None:
        raise NotAnIsogenyError(
            f"{f.source.name} -> {f.target.name} has determinant 0")
    inv = f.matrix.to_scalar().inverse()
    n = 1
    for row in inv.entries:
        for x in row:
            q = x.as_fraction().denominator
            n = n * q // _gcd(n, q)
    psi_matrix = (inv * Scalar(n)).to_int()
    psi = TorusHom(f.target, f.source, psi_matrix)
    n_src = f.source.mult_by(n)
    n_dst = f.target.mult_by(n)
    if (psi @ f) != n_src or (f @ psi) != n_dst:
        raise InvariantError("quasi-inverse failed to invert up to n")
    return n, psi


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _coefficient_box(rank: int, bound: int):
    """Coefficient tuples in product order with each coordinate running
    0, 1, -1, 2, -2, ...; deterministic, small values first."""
    ordering = [0]
    for k in range(1, bound + 1):
        ordering.extend((k, -k))
    for combo in itertools.product(ordering, repeat=rank):
        yield combo


def isogeny_witness(a: ComplexTorus, b: ComplexTorus, bound: int = 3) -> Optional[TorusHom]:
    """First integer combination of the hom basis with nonzero determinant.

    None means "none at this bound"; it proves non-isogeny only when the hom
    lattice itself is zero.
    """
    if a.g != b.g:
        raise UsageError("isogeny witness needs equal dimensions")
    basis = hom_lattice(a, b)
    if not basis:
        return None
    for coeffs in _coefficient_box(len(basis), bound):
        if all(c == 0 for c in coeffs):
            continue
        total = basis[0].matrix * coeffs[0]
        for c, h in zip(coeffs[1:], basis[1:]):
            total = total + h.matrix * c
        if total.det() != 0:
            return TorusHom(a, b, total)
    return None
