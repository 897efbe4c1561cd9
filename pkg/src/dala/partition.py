"""Root partition functionals, the induced closed subsets, and dominance.

Roots of the extended algebra are stored as (finite part, m, n) with
m, n the delta1 / delta2 degrees.  Conversion to coordinates over the
simple roots a_{-1}, a_0, a_1..a_s uses delta1 = a_0 + theta and
delta2 = a_{-1} + theta and is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import DoubleAffine, LatticeVector
from .rootsys import RootSystem

IMAGINARY = "imaginary"
PARABOLIC = "parabolic"
LEVEL_ZERO = "levelzero"


def affine_height(rs: RootSystem, v: LatticeVector) -> int:
    """Height of the horizontal affine part: ht(finite) + m*(1 + ht(theta)).

    This is the level functional that carves out the imaginary positive
    system; it kills delta2 and takes the value 1 + ht(theta) on delta1.
    """
    return rs.height(v.finite) + v.m * (1 + rs.theta_height)


def parabolic_value(rs: RootSystem, subset: frozenset, v: LatticeVector) -> int:
    """Parabolic partition functional for a subset of the node set {0..s}."""
    theta = rs.highest_root
    val = v.m if 0 not in subset else 0
    for i in range(rs.rank):
        if (i + 1) not in subset:
            val += v.finite[i] + v.m * theta[i]
    return val


def _check_subset(rs: RootSystem, subset) -> frozenset:
    subset = frozenset(subset)
    if not subset <= set(range(rs.rank + 1)):
        raise ValueError("parabolic subset must lie in {0..%d}" % rs.rank)
    return subset


@dataclass(frozen=True)
class Decomposition:
    """Which triangular decomposition is active, with its functional."""

    kind: str
    parabolic: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in (IMAGINARY, PARABOLIC, LEVEL_ZERO):
            raise ValueError("unknown decomposition kind %r" % self.kind)

    def functional(self, rs: RootSystem, v: LatticeVector) -> int:
        if self.kind == PARABOLIC:
            return parabolic_value(rs, _check_subset(rs, self.parabolic), v)
        return affine_height(rs, v)

    def side(self, rs: RootSystem, v: LatticeVector) -> int:
        """+1 on the positive set, -1 on its negative, 0 on the symmetric part."""
        val = self.functional(rs, v)
        if val:
            return 1 if val > 0 else -1
        if self.kind == IMAGINARY:
            # the only functional-zero roots are the pure delta2 ones
            return 1 if v.n > 0 else (-1 if v.n < 0 else 0)
        return 0


def _require_root(alg: DoubleAffine, v: LatticeVector):
    if not alg.is_t_root(v):
        raise ValueError("%r is not a root of the extended algebra" % (v,))


def in_imaginary_set(alg: DoubleAffine, v: LatticeVector) -> bool:
    """Membership in the closed set {affine_height > 0} + N*delta2."""
    _require_root(alg, v)
    h = affine_height(alg.rs, v)
    if h > 0:
        return True
    return h == 0 and not any(v.finite) and v.m == 0 and v.n > 0


def in_parabolic_cone(alg: DoubleAffine, subset, v: LatticeVector) -> bool:
    _require_root(alg, v)
    return parabolic_value(alg.rs, _check_subset(alg.rs, subset), v) >= 0


def in_level_plus(alg: DoubleAffine, v: LatticeVector) -> bool:
    """Real-direction positive set: imaginary set minus the delta2 line."""
    _require_root(alg, v)
    return affine_height(alg.rs, v) > 0


def roots_in_box(alg: DoubleAffine, m_box, n_box):
    """All roots with delta1, delta2 degrees in the given closed intervals."""
    rs = alg.rs
    zero = (0,) * rs.rank
    for m in range(m_box[0], m_box[1] + 1):
        for n in range(n_box[0], n_box[1] + 1):
            for root in sorted(rs.roots):
                yield LatticeVector(root, m, n)
            if m or n:
                yield LatticeVector(zero, m, n)


def symmetric_span_member(rs: RootSystem, subset, v: LatticeVector) -> bool:
    """Closed form for membership in Z{a_i : i in subset} + Z*delta2."""
    subset = _check_subset(rs, subset)
    if v.m != 0 and 0 not in subset:
        return False
    theta = rs.highest_root
    for i in range(rs.rank):
        if (i + 1) not in subset and v.finite[i] + v.m * theta[i] != 0:
            return False
    return True


def symmetric_part(alg: DoubleAffine, subset, m_box, n_box):
    """Roots in the box on which the parabolic functional vanishes."""
    subset = _check_subset(alg.rs, subset)
    return sorted(
        v
        for v in roots_in_box(alg, m_box, n_box)
        if parabolic_value(alg.rs, subset, v) == 0
    )


def affine_coordinates(rs: RootSystem, v: LatticeVector):
    """Coordinates (n_0..n_s, k) with v = sum n_i a_i + k delta2."""
    theta = rs.highest_root
    n0 = v.m
    coeffs = tuple(v.finite[i] + v.m * theta[i] for i in range(rs.rank))
    return (n0,) + coeffs, v.n


def from_affine_coordinates(rs: RootSystem, n_coeffs, k: int) -> LatticeVector:
    """Inverse of affine_coordinates: build (finite, m, n) from n_i and k."""
    if len(n_coeffs) != rs.rank + 1:
        raise ValueError("need %d coefficients n_0..n_s" % (rs.rank + 1))
    n0 = n_coeffs[0]
    theta = rs.highest_root
    finite = tuple(
        n_coeffs[i + 1] - n0 * theta[i] for i in range(rs.rank)
    )
    return LatticeVector(finite, n0, k)


def dominates(rs: RootSystem, v: LatticeVector) -> bool:
    """Whether v lies in the Z+ span of the imaginary positive set.

    Closed form: all affine coordinates n_0..n_s are nonnegative, and the
    delta2 coefficient is nonnegative when every n_i vanishes (a positive
    real generator absorbs any delta2 shift).
    """
    if not all(
        isinstance(c, int) for c in (*v.finite, v.m, v.n)
    ):
        raise ValueError("dominance is defined on integer lattice vectors")
    coeffs, k = affine_coordinates(rs, v)
    if any(c < 0 for c in coeffs):
        return False
    return any(coeffs) or k >= 0
