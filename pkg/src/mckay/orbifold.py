"""Twisted-sector data and the local orbifold ring of an SL2 quotient point.

Each nonidentity group element contributes a one-dimensional twisted sector
placed in degree 1 by its age; products between sectors are weighted by the
top Chern class of the virtual obstruction bundle, which on an isolated
fixed point is 1 exactly when the bundle has rank zero.  The ring is built
before invariants are taken, and the invariant subalgebra (basis of class
sums) is derived from it by actually multiplying class sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import GradedAlgebra
from .groups import FiniteGroup

__all__ = [
    "ObstructionEntry",
    "OrbifoldError",
    "age",
    "obstruction_class",
    "local_orbifold_algebra",
    "invariant_subalgebra",
]


class OrbifoldError(RuntimeError):
    pass


@dataclass(frozen=True)
class ObstructionEntry:
    """Rank of the virtual obstruction bundle at a pair, and its top Chern class."""

    rank: int
    c: int


def _element_age(group: FiniteGroup, element: int) -> Fraction:
    r, k = group.rotation_data[element]
    if r == 1:
        return Fraction(0)
    # eigenvalue exponents k and r-k, each weighted by 1/r
    value = Fraction(k, r) + Fraction(r - k, r)
    if value not in (Fraction(0), Fraction(1)):
        raise OrbifoldError(f"age {value} outside the SL2 surface range")
    return value


def age(group: FiniteGroup, class_index: int) -> Fraction:
    """Age of a conjugacy class from the eigenvalue weights of its representative."""
    rep = group.conjugacy.representatives[class_index]
    return _element_age(group, rep)


def obstruction_class(group: FiniteGroup, g: int, h: int) -> ObstructionEntry:
    """Obstruction rank and class for the ordered pair of elements (g, h).

    rank = age(g) + age(h) + age((gh)^-1) + dim(joint fixed locus) - 2.
    The joint fixed locus is the whole surface for (id, id) and an isolated
    point otherwise.
    """
    gh = group.cayley[g][h]
    total = (
        _element_age(group, g)
        + _element_age(group, h)
        + _element_age(group, group.inverse[gh])
    )
    fixed_dim = 2 if g == 0 and h == 0 else 0
    rank = total + fixed_dim - 2
    if rank.denominator != 1 or rank < 0:
        raise OrbifoldError(f"impossible obstruction rank {rank} at pair ({g}, {h})")
    rank = int(rank)
    return ObstructionEntry(rank=rank, c=1 if rank == 0 else 0)


def sector_label(element: int) -> str:
    return f"e{element}"


def class_label(class_index: int) -> str:
    return f"f{class_index}"


def local_orbifold_algebra(group: FiniteGroup) -> GradedAlgebra:
    """The pre-invariant orbifold ring: unit, one sector per g != id, point class.

    Sector products are derived from the obstruction classes: a pair with a
    rank-zero obstruction bundle multiplies to the point class of the
    (necessarily identity) target sector; every positive rank kills the
    product.
    """
    n = group.order
    labels = ["1"] + [sector_label(i) for i in range(1, n)] + ["[pt]"]
    degrees = [0] + [1] * (n - 1) + [2]
    products = {}
    for g in range(1, n):
        for h in range(1, n):
            entry = obstruction_class(group, g, h)
            if entry.c == 1:
                if group.cayley[g][h] != 0:
                    raise OrbifoldError(
                        "rank-zero obstruction outside the identity sector"
                    )
                products[(sector_label(g), sector_label(h))] = [("[pt]", 1)]
    return GradedAlgebra.build(labels, degrees, products)


def invariant_subalgebra(algebra: GradedAlgebra, group: FiniteGroup) -> GradedAlgebra:
    """Subalgebra of conjugation invariants, on the basis of class sums.

    The degree-1 basis of ``algebra`` must consist of the sectors of the
    nonidentity elements of ``group`` (as produced by
    :func:`local_orbifold_algebra`); conjugation permutes those labels, so
    the class sums span the invariants.  Their products are computed inside
    ``algebra``, not assumed.
    """
    conj = group.conjugacy
    sector_index = {}
    for i in algebra.degree_one:
        label = algebra.labels[i]
        if not label.startswith("e"):
            raise OrbifoldError(f"unexpected degree-1 label {label!r}")
        sector_index[int(label[1:])] = i
    if set(sector_index) != set(range(1, group.order)):
        raise OrbifoldError("algebra sectors do not match the group elements")
    nclasses = len(conj.classes)
    labels = ["1"] + [class_label(c) for c in range(1, nclasses)] + ["[pt]"]
    degrees = [0] + [1] * (nclasses - 1) + [2]
    one = algebra.structure[(0, 0)][0][1]  # exact 1 with the right scalar type
    sums = {
        c: {sector_index[g]: one for g in conj.classes[c]}
        for c in range(1, nclasses)
    }
    products = {}
    for c in range(1, nclasses):
        for d in range(1, nclasses):
            vec = algebra.mult_vec(sums[c], sums[d])
            coeff = algebra.point_coefficient(vec)
            if not coeff.is_zero():
                products[(class_label(c), class_label(d))] = [("[pt]", coeff)]
    return GradedAlgebra.build(labels, degrees, products)
