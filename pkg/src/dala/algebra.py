"""Elements and the bracket of the extended double affine Lie algebra.

Basis symbols are x_a(m,n) for roots a, h_i(m,n) for Cartan directions,
two centers c1, c2 and two degree derivations d1, d2.  The bracket is

    [x(m1,n1), y(m2,n2)] = [x,y](m1+m2, n1+n2)
                           + (x|y) d(m1+m2) d(n1+n2) (m1 c1 + n1 c2)

with [d1, z(m,n)] = m z(m,n) and [d2, z(m,n)] = n z(m,n).  Coefficients
are exact rationals throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .rootsys import RootSystem


class Sym(NamedTuple):
    kind: str  # 'x', 'h', 'c1', 'c2', 'd1', 'd2'
    tag: tuple  # root coords for 'x', (index,) for 'h', () otherwise
    m: int
    n: int


def x_(root, m, n) -> Sym:
    return Sym("x", tuple(root), m, n)


def h_(i, m, n) -> Sym:
    return Sym("h", (i,), m, n)


C1 = Sym("c1", (), 0, 0)
C2 = Sym("c2", (), 0, 0)
D1 = Sym("d1", (), 0, 0)
D2 = Sym("d2", (), 0, 0)

_KIND_RANK = {"x": 0, "h": 1, "c1": 2, "c2": 3, "d1": 4, "d2": 5}


class LatticeVector(NamedTuple):
    """Element of the root lattice of T: finite part + m*delta1 + n*delta2."""

    finite: tuple
    m: int
    n: int

    def plus(self, other: "LatticeVector") -> "LatticeVector":
        return LatticeVector(
            tuple(a + b for a, b in zip(self.finite, other.finite)),
            self.m + other.m,
            self.n + other.n,
        )

    def negate(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.finite), -self.m, -self.n)

    def is_zero(self) -> bool:
        return self.m == 0 and self.n == 0 and not any(self.finite)


def canonical_key(s: Sym):
    """Total order on symbols: height of finite part, t1, t2, kind, tag."""
    ht = sum(s.tag) if s.kind == "x" else 0
    return (ht, s.m, s.n, _KIND_RANK[s.kind], s.tag)


class DoubleAffine:
    """Bracket engine for g tensor C[t1^+-, t2^+-] + centers + derivations."""

    def __init__(self, rootsys: RootSystem, corrupt: str | None = None):
        self.rs = rootsys
        self.rank = rootsys.rank
        self._zero = (0,) * self.rank
        # corrupt='coroot-sign' flips the Cartan term of [x_a, x_{-a}];
        # used only as a negative-control hook for failure wiring.
        self._coroot_sign = -1 if corrupt == "coroot-sign" else 1
        if corrupt not in (None, "coroot-sign"):
            raise ValueError("unknown corruption mode %r" % corrupt)

    @classmethod
    def from_label(cls, label: str, corrupt: str | None = None):
        return cls(RootSystem.from_label(label), corrupt=corrupt)

    def zero_vector(self) -> LatticeVector:
        return LatticeVector(self._zero, 0, 0)

    def weight_of(self, s: Sym) -> LatticeVector:
        """Root-space grading; the zero vector for h_i(0,0), c's and d's."""
        if s.kind == "x":
            return LatticeVector(s.tag, s.m, s.n)
        if s.kind == "h":
            return LatticeVector(self._zero, s.m, s.n)
        return self.zero_vector()

    def is_t_root(self, v: LatticeVector) -> bool:
        if any(v.finite):
            return self.rs.is_root(v.finite)
        return v.m != 0 or v.n != 0

    def sym_bracket(self, s: Sym, t: Sym) -> dict:
        """Bracket of two basis symbols as a sparse symbol->coefficient map."""
        k1, k2 = s.kind, t.kind
        if k1 in ("c1", "c2") or k2 in ("c1", "c2"):
            return {}
        if k1 in ("d1", "d2"):
            if k2 in ("d1", "d2"):
                return {}
            deg = t.m if k1 == "d1" else t.n
            return {t: Fraction(deg)} if deg else {}
        if k2 in ("d1", "d2"):
            deg = s.m if k2 == "d1" else s.n
            return {s: Fraction(-deg)} if deg else {}

        m, n = s.m + t.m, s.n + t.n
        out = {}
        pairing = 0
        if k1 == "x" and k2 == "x":
            res = self.rs.bracket_roots(s.tag, t.tag)
            if res is None:
                pass
            elif res[0] == "x":
                out[x_(res[1], m, n)] = Fraction(res[2])
            else:
                for i, c in enumerate(res[1]):
                    if c:
                        out[h_(i + 1, m, n)] = Fraction(self._coroot_sign * c)
                pairing = 1
        elif k1 == "h" and k2 == "x":
            coeff = self._cartan_pair(s.tag[0], t.tag)
            if coeff:
                out[x_(t.tag, m, n)] = Fraction(coeff)
        elif k1 == "x" and k2 == "h":
            coeff = self._cartan_pair(t.tag[0], s.tag)
            if coeff:
                out[x_(s.tag, m, n)] = Fraction(-coeff)
        else:  # h, h
            pairing = self.rs.cartan.entries[s.tag[0] - 1][t.tag[0] - 1]

        if pairing and m == 0 and n == 0:
            if s.m:
                out[C1] = out.get(C1, Fraction(0)) + pairing * s.m
            if s.n:
                out[C2] = out.get(C2, Fraction(0)) + pairing * s.n
        return {k: v for k, v in out.items() if v}

    def _cartan_pair(self, i: int, root) -> int:
        row = self.rs.cartan.entries[i - 1]
        return sum(row[j] * c for j, c in enumerate(root))

    def element(self, terms=None) -> "Element":
        return Element(self, terms or {})

    def symbol(self, s: Sym, coeff=1) -> "Element":
        return Element(self, {s: Fraction(coeff)})


class Element:
    """Sparse exact-rational combination of basis symbols in normal form."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: DoubleAffine, terms: dict):
        self.alg = alg
        self.terms = {s: Fraction(c) for s, c in terms.items() if c}

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, Fraction(0)) + c
        return Element(self.alg, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __neg__(self) -> "Element":
        return Element(self.alg, {s: -c for s, c in self.terms.items()})

    def __mul__(self, scalar) -> "Element":
        scalar = Fraction(scalar)
        return Element(self.alg, {s: c * scalar for s, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def bracket(self, other: "Element") -> "Element":
        out = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                for u, c in self.alg.sym_bracket(s, t).items():
                    out[u] = out.get(u, Fraction(0)) + a * b * c
        return Element(self.alg, out)

    def weight(self):
        """Common grading of all terms; raises for inhomogeneous elements."""
        weights = {self.alg.weight_of(s) for s in self.terms}
        if len(weights) != 1:
            raise ValueError("element is not weight homogeneous")
        return weights.pop()

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: canonical_key(kv[0]))

    def __repr__(self):
        from .syntax import format_element

        return format_element(self)


def _bracket_maps(alg: DoubleAffine, left: dict, t: Sym) -> dict:
    out = {}
    for s, a in left.items():
        for u, c in alg.sym_bracket(s, t).items():
            out[u] = out.get(u, Fraction(0)) + a * c
    return {k: v for k, v in out.items() if v}


def jacobiator(alg: DoubleAffine, a: Sym, b: Sym, c: Sym) -> dict:
    """[[a,b],c] + [[b,c],a] + [[c,a],b] as a sparse map (zero iff Jacobi)."""
    out = {}
    for left, right, third in ((a, b, c), (b, c, a), (c, a, b)):
        for term, coeff in _bracket_maps(
            alg, alg.sym_bracket(left, right), third
        ).items():
            out[term] = out.get(term, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    trials: int
    witness: tuple | None


def symbol_table(alg: DoubleAffine, degree: int, include_cd: bool = True):
    """All basis symbols with t1, t2 degrees in [-degree, degree]."""
    syms = []
    span = range(-degree, degree + 1)
    for root in sorted(alg.rs.roots):
        for m in span:
            for n in span:
                syms.append(x_(root, m, n))
    for i in range(1, alg.rank + 1):
        for m in span:
            for n in span:
                syms.append(h_(i, m, n))
    if include_cd:
        syms.extend([C1, C2, D1, D2])
    return syms


def jacobi_sample_check(
    alg: DoubleAffine, trials: int, seed: int, degree: int = 5
) -> JacobiReport:
    """Seeded random Jacobi test over basis symbol triples."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    table = symbol_table(alg, degree)
    for _ in range(trials):
        a, b, c = (table[rng.randrange(len(table))] for _ in range(3))
        if jacobiator(alg, a, b, c):
            return JacobiReport(False, trials, (a, b, c))
    return JacobiReport(True, trials, None)


def jacobi_exhaustive(alg: DoubleAffine, degree: int) -> JacobiReport:
    """Exhaustive Jacobi test over unordered symbol triples in a degree box."""
    table = symbol_table(alg, degree)
    k = len(table)
    count = 0
    for i in range(k):
        a = table[i]
        for j in range(i, k):
            b = table[j]
            ab = alg.sym_bracket(a, b)
            for l in range(j, k):
                c = table[l]
                count += 1
                out = _bracket_maps(alg, ab, c)
                for u, coeff in _bracket_maps(
                    alg, alg.sym_bracket(b, c), a
                ).items():
                    out[u] = out.get(u, Fraction(0)) + coeff
                for u, coeff in _bracket_maps(
                    alg, alg.sym_bracket(c, a), b
                ).items():
                    out[u] = out.get(u, Fraction(0)) + coeff
                if any(out.values()):
                    return JacobiReport(False, count, (a, b, c))
    return JacobiReport(True, count, None)
