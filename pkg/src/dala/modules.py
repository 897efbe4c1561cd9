"""Induced modules in truncated PBW coordinates with exact straightening.

A module vector is a sparse rational combination of PBW monomials; a
monomial is a tuple of lowering symbols sorted nonincreasingly in the
canonical symbol order, the empty tuple being the highest weight vector.
Straightening commutes an element rightward past the factors, kills
raising symbols on the vacuum and evaluates Cartan-like symbols through
the weight functional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import DoubleAffine, Element, LatticeVector, Sym, canonical_key, h_, x_
from .partition import (
    IMAGINARY,
    LEVEL_ZERO,
    PARABOLIC,
    Decomposition,
    affine_height,
)


class TruncationOverflow(RuntimeError):
    """A lowering factor left the configured truncation window."""


class InsufficientTruncation(ValueError):
    """The requested computation is not truncation independent."""


@dataclass(frozen=True)
class Truncation:
    """Finite bounds making every computed weight space finite."""

    max_len: int
    t1_window: tuple = (-3, 3)
    t2_window: tuple = (-3, 3)
    height_cut: int | None = None

    def __post_init__(self):
        if self.max_len < 0:
            raise ValueError("max_len must be >= 0")
        for lo, hi in (self.t1_window, self.t2_window):
            if lo > hi:
                raise ValueError("empty degree window")

    def admits_degrees(self, m: int, n: int) -> bool:
        return (
            self.t1_window[0] <= m <= self.t1_window[1]
            and self.t2_window[0] <= n <= self.t2_window[1]
        )

    def within(self, other: "Truncation") -> bool:
        return (
            self.max_len <= other.max_len
            and self.t1_window[0] >= other.t1_window[0]
            and self.t1_window[1] <= other.t1_window[1]
            and self.t2_window[0] >= other.t2_window[0]
            and self.t2_window[1] <= other.t2_window[1]
        )


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass
class Weight:
    """Weight functional: values on h_1..h_s, the centers and derivations,
    optionally extended by evaluation data (points and integer weights per
    node) or by explicit loop values for the Cartan currents h_i(0,n)."""

    h: tuple
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)
    d1: Fraction = Fraction(0)
    d2: Fraction = Fraction(0)
    eval_points: dict = field(default_factory=dict)
    loop_values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.h = tuple(_frac(v) for v in self.h)
        self.c1 = _frac(self.c1)
        self.c2 = _frac(self.c2)
        self.d1 = _frac(self.d1)
        self.d2 = _frac(self.d2)
        self.eval_points = {
            int(p): tuple((_frac(a), int(w)) for a, w in pts)
            for p, pts in self.eval_points.items()
        }
        self.loop_values = {
            (int(i), int(n)): _frac(v) for (i, n), v in self.loop_values.items()
        }
        if self.eval_points and self.loop_values:
            raise ValueError("evaluation data and explicit loop values clash")
        for p, pts in self.eval_points.items():
            if not 1 <= p <= len(self.h):
                raise ValueError("evaluation node %d out of range" % p)
            points = [a for a, _ in pts]
            if len(set(points)) != len(points):
                raise ValueError("evaluation points must be distinct per node")
            if any(a == 0 for a in points):
                raise ValueError("evaluation points must be nonzero")
            if any(w < 0 for _, w in pts):
                raise ValueError("evaluation weights must be nonnegative")
            if self.h[p - 1] != sum(w for _, w in pts):
                raise ValueError(
                    "value on h_%d must equal the total evaluation weight" % p
                )
        if self.eval_points and (self.c1 or self.c2):
            raise ValueError("evaluation weights require c1 = c2 = 0")
        for (i, n) in self.loop_values:
            if not 1 <= i <= len(self.h):
                raise ValueError("loop value node %d out of range" % i)
            if n == 0:
                raise ValueError("loop values are for nonzero t2 degrees")

    @property
    def rank(self) -> int:
        return len(self.h)

    @property
    def has_loop_part(self) -> bool:
        if self.eval_points:
            return True
        return any(self.loop_values.values())

    def cartan_value(self, i: int, n: int) -> Fraction:
        """Value on the Cartan current h_i(0, n)."""
        if n == 0:
            return self.h[i - 1]
        pts = self.eval_points.get(i)
        if pts is not None:
            return sum((w * a ** n for a, w in pts), Fraction(0))
        return self.loop_values.get((i, n), Fraction(0))

    def coroot_value(self, coords, n: int) -> Fraction:
        return sum(
            (c * self.cartan_value(i + 1, n) for i, c in enumerate(coords) if c),
            Fraction(0),
        )

    def symbol_value(self, s: Sym) -> Fraction:
        if s.kind == "h":
            return self.h[s.tag[0] - 1]
        return {"c1": self.c1, "c2": self.c2, "d1": self.d1, "d2": self.d2}[
            s.kind
        ]


Monomial = tuple  # tuple of Sym, sorted nonincreasingly by canonical_key


class ModuleVector:
    """Sparse rational combination of PBW monomials of one module."""

    __slots__ = ("module", "terms")

    def __init__(self, module: "InducedModule", terms: dict):
        self.module = module
        self.terms = {m: _frac(c) for m, c in terms.items() if c}

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ModuleVector(self.module, out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + (-other)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(self.module, {m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar) -> "ModuleVector":
        scalar = _frac(scalar)
        return ModuleVector(
            self.module, {m: c * scalar for m, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModuleVector)
            and self.module is other.module
            and self.terms == other.terms
        )

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def vacuum_coefficient(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def weight_offset(self) -> LatticeVector:
        """Offset mu with the vector living in the weight space at -mu."""
        offsets = {
            _monomial_weight(self.module.alg, m).negate() for m in self.terms
        }
        if len(offsets) > 1:
            raise ValueError("vector is not weight homogeneous")
        return offsets.pop() if offsets else self.module.alg.zero_vector()

    def horizontal_offset(self) -> LatticeVector:
        """Offset in the finite and delta1 directions only; evaluation in a
        loop-charged level-zero module erases the delta2 grading."""
        offsets = set()
        for m in self.terms:
            w = _monomial_weight(self.module.alg, m)
            offsets.add((tuple(-c for c in w.finite), -w.m))
        if len(offsets) > 1:
            raise ValueError("vector is not horizontally homogeneous")
        if not offsets:
            return self.module.alg.zero_vector()
        finite, m = offsets.pop()
        return LatticeVector(finite, m, 0)

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0]), tuple(canonical_key(s) for s in kv[0])),
        )

    def __repr__(self):
        from .syntax import format_vector

        return format_vector(self)


def _monomial_weight(alg: DoubleAffine, mono: Monomial) -> LatticeVector:
    w = alg.zero_vector()
    for s in mono:
        w = w.plus(alg.weight_of(s))
    return w


class InducedModule:
    """Truncated PBW realization of an induced module of the chosen variant."""

    def __init__(
        self,
        alg: DoubleAffine,
        decomp: Decomposition,
        weight: Weight,
        trunc: Truncation,
    ):
        if weight.rank != alg.rank:
            raise ValueError("weight rank does not match the algebra")
        self.alg = alg
        self.rs = alg.rs
        self.decomp = decomp
        self.weight = weight
        self.trunc = trunc
        self._cache: dict = {}
        self._validate_weight()

    def _validate_weight(self):
        w, kind = self.weight, self.decomp.kind
        if kind == PARABOLIC:
            if w.c2:
                raise ValueError("parabolic module requires c2 value 0")
            theta = self.rs.highest_root
            for i in sorted(self.decomp.parabolic):
                if i == 0:
                    val = w.c1 - sum(
                        k * w.h[j] for j, k in enumerate(theta)
                    )
                else:
                    val = w.h[i - 1]
                if val:
                    raise ValueError(
                        "parabolic module requires the weight to vanish on "
                        "the coroot of node %d" % i
                    )
            if w.has_loop_part:
                raise ValueError("loop data is unused in parabolic modules")
        elif kind == LEVEL_ZERO:
            if w.c2:
                raise ValueError(
                    "level-zero module requires c2 value 0 (the Cartan loop "
                    "brackets act by multiples of c2)"
                )
        else:
            if w.has_loop_part:
                raise ValueError("loop data is unused in imaginary modules")

    # -- symbol classification ------------------------------------------

    def _sym_side(self, s: Sym):
        """Side of the symbol weight; None for zero-weight symbols."""
        if s.kind in ("c1", "c2", "d1", "d2"):
            return None
        if s.kind == "h" and s.m == 0 and s.n == 0:
            return None
        return self.decomp.side(self.rs, self.alg.weight_of(s))

    def _require_factor_window(self, s: Sym, trunc: Truncation | None = None):
        trunc = trunc or self.trunc
        if not trunc.admits_degrees(s.m, s.n):
            raise TruncationOverflow(
                "factor %r leaves the degree window" % (s,)
            )
        cut = trunc.height_cut
        if cut is not None and s.kind == "x" and abs(sum(s.tag)) > cut:
            raise TruncationOverflow("factor %r exceeds the height cut" % (s,))

    # -- straightening ---------------------------------------------------

    def vacuum(self) -> ModuleVector:
        return ModuleVector(self, {(): Fraction(1)})

    def act(self, a, v: ModuleVector) -> ModuleVector:
        """Straightened action of an element (or symbol) on a vector."""
        if isinstance(a, Sym):
            terms = {a: Fraction(1)}
        elif isinstance(a, Element):
            terms = a.terms
        else:
            raise TypeError("act expects a Sym or an Element")
        if (
            self.decomp.kind == LEVEL_ZERO
            and self.weight.has_loop_part
            and any(s.kind == "d2" for s in terms)
        ):
            raise ValueError(
                "d2 does not act on a level-zero module with nonzero "
                "Cartan loop values (the weight is not delta2 graded)"
            )
        out: dict = {}
        for s, c in terms.items():
            for mono, cv in v.terms.items():
                coeff = c * cv
                for m2, c2 in self._act_sym(s, mono).items():
                    out[m2] = out.get(m2, Fraction(0)) + coeff * c2
        return ModuleVector(self, out)

    def apply_monomial(self, mono: Monomial, v: ModuleVector) -> ModuleVector:
        for s in reversed(mono):
            v = self.act(s, v)
        return v

    def monomial_vector(self, mono: Monomial) -> ModuleVector:
        return self.apply_monomial(mono, self.vacuum())

    def _act_sym(self, s: Sym, mono: Monomial) -> dict:
        key = (s, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if not mono:
            res = self._vacuum_apply(s)
        else:
            head = mono[0]
            if self._sym_side(s) == -1 and canonical_key(s) >= canonical_key(
                head
            ):
                self._require_factor_window(s)
                if len(mono) + 1 > self.trunc.max_len:
                    raise TruncationOverflow(
                        "monomial length exceeds max_len=%d" % self.trunc.max_len
                    )
                res = {(s,) + mono: Fraction(1)}
            else:
                tail = mono[1:]
                acc: dict = {}
                for mu, c in self._act_sym(s, tail).items():
                    for mu2, c2 in self._act_sym(head, mu).items():
                        acc[mu2] = acc.get(mu2, Fraction(0)) + c * c2
                for t, c in self.alg.sym_bracket(s, head).items():
                    for mu2, c2 in self._act_sym(t, tail).items():
                        acc[mu2] = acc.get(mu2, Fraction(0)) + c * c2
                res = {k: v for k, v in acc.items() if v}
        self._cache[key] = res
        return res

    def _vacuum_apply(self, s: Sym) -> dict:
        side = self._sym_side(s)
        if side is None:
            val = self.weight.symbol_value(s)
            return {(): val} if val else {}
        if side > 0:
            return {}
        if side < 0:
            self._require_factor_window(s)
            if self.trunc.max_len < 1:
                raise TruncationOverflow("max_len=0 admits no factors")
            return {(s,): Fraction(1)}
        if self.decomp.kind == PARABOLIC:
            return {}
        if self.decomp.kind == LEVEL_ZERO:
            val = self.weight.cartan_value(s.tag[0], s.n)
            return {(): val} if val else {}
        raise AssertionError("the imaginary partition has no symmetric roots")

    # -- weight space enumeration ----------------------------------------

    def factor_symbols(self, trunc: Truncation | None = None):
        """All lowering symbols admitted by the truncation, canonically sorted."""
        trunc = trunc or self.trunc
        cut = trunc.height_cut
        syms = []
        t1lo, t1hi = trunc.t1_window
        t2lo, t2hi = trunc.t2_window
        for root in sorted(self.rs.roots):
            if cut is not None and abs(sum(root)) > cut:
                continue
            for m in range(t1lo, t1hi + 1):
                for n in range(t2lo, t2hi + 1):
                    s = x_(root, m, n)
                    if self._sym_side(s) == -1:
                        syms.append(s)
        for i in range(1, self.rank + 1):
            for m in range(t1lo, t1hi + 1):
                for n in range(t2lo, t2hi + 1):
                    if m == 0 and n == 0:
                        continue
                    s = h_(i, m, n)
                    if self._sym_side(s) == -1:
                        syms.append(s)
        syms.sort(key=canonical_key, reverse=True)
        return syms

    def raising_symbols(self, trunc: Truncation | None = None):
        trunc = trunc or self.trunc
        cut = trunc.height_cut
        syms = []
        t1lo, t1hi = trunc.t1_window
        t2lo, t2hi = trunc.t2_window
        for root in sorted(self.rs.roots):
            if cut is not None and abs(sum(root)) > cut:
                continue
            for m in range(t1lo, t1hi + 1):
                for n in range(t2lo, t2hi + 1):
                    s = x_(root, m, n)
                    if self._sym_side(s) == 1:
                        syms.append(s)
        for i in range(1, self.rank + 1):
            for m in range(t1lo, t1hi + 1):
                for n in range(t2lo, t2hi + 1):
                    if m == 0 and n == 0:
                        continue
                    s = h_(i, m, n)
                    if self._sym_side(s) == 1:
                        syms.append(s)
        syms.sort(key=canonical_key, reverse=True)
        return syms

    @property
    def rank(self) -> int:
        return self.alg.rank

    def weight_space(
        self, offset: LatticeVector, trunc: Truncation | None = None
    ):
        """All PBW monomials of weight (highest weight - offset), sorted."""
        trunc = trunc or self.trunc
        if not trunc.within(self.trunc):
            raise ValueError("sub-truncation exceeds the module truncation")
        symbols = self.factor_symbols(trunc)
        target = offset.negate()
        return tuple(
            _multisets_with_weight(
                self.alg, self.rs, symbols, target, trunc.max_len
            )
        )

    def truncated_dim(
        self, offset: LatticeVector, trunc: Truncation | None = None
    ) -> int:
        return len(self.weight_space(offset, trunc))

    def delta2_dims(self, kmax: int):
        """Dimensions of the weight spaces at offsets k*delta2, k = 0..kmax."""
        if self.decomp.kind != IMAGINARY:
            raise ValueError("delta2 dimension table requires the imaginary variant")
        if self.trunc.t2_window[0] > -kmax or self.trunc.max_len < kmax:
            raise InsufficientTruncation(
                "need t2 window reaching -%d and max_len >= %d" % (kmax, kmax)
            )
        zero = self.alg.zero_vector()
        dims = []
        for k in range(kmax + 1):
            off = LatticeVector(zero.finite, 0, k)
            dims.append(len(self.weight_space(off)))
        return dims


def _multisets_with_weight(alg, rs, symbols, target, max_len, ignore_n=False):
    """Nonincreasing tuples of symbols with total weight equal to target.

    Prunes with per-axis suffix bounds; axes are the finite coordinates,
    the torus degrees and the level functional.  With ignore_n the delta2
    degree is unconstrained (modules whose evaluation erases it).
    """
    axes = alg.rank + (2 if ignore_n else 3)

    def axis_vec(v: LatticeVector):
        tail = (v.m,) if ignore_n else (v.m, v.n)
        return tuple(v.finite) + tail + (affine_height(rs, v),)

    goal = axis_vec(target)
    out = []
    if all(g == 0 for g in goal):
        out.append(())
    if not symbols or max_len == 0:
        return out

    weights = [axis_vec(alg.weight_of(s)) for s in symbols]
    count = len(symbols)
    suffix_lo = [[0] * axes for _ in range(count)]
    suffix_hi = [[0] * axes for _ in range(count)]
    for a in range(axes):
        suffix_lo[count - 1][a] = min(0, weights[count - 1][a])
        suffix_hi[count - 1][a] = max(0, weights[count - 1][a])
    for i in range(count - 2, -1, -1):
        for a in range(axes):
            suffix_lo[i][a] = min(suffix_lo[i + 1][a], weights[i][a])
            suffix_hi[i][a] = max(suffix_hi[i + 1][a], weights[i][a])

    chosen = []

    def extend(idx, rem, budget):
        if budget == 0 or idx >= count:
            return
        for a in range(axes):
            if not suffix_lo[idx][a] * budget <= rem[a] <= suffix_hi[idx][a] * budget:
                return
        for i in range(idx, count):
            w = weights[i]
            nxt = tuple(r - wa for r, wa in zip(rem, w))
            chosen.append(symbols[i])
            if all(r == 0 for r in nxt):
                out.append(tuple(chosen))
            extend(i, nxt, budget - 1)
            chosen.pop()

    extend(0, goal, max_len)
    out.sort(key=lambda mono: (len(mono), tuple(canonical_key(s) for s in mono)))
    return out


def enumerate_monomials(module: InducedModule, trunc: Truncation):
    """All PBW monomials within a truncation, any weight, sorted."""
    symbols = module.factor_symbols(trunc)
    out = [()]

    def grow(idx, current, budget):
        if budget == 0:
            return
        for i in range(idx, len(symbols)):
            mono = current + (symbols[i],)
            out.append(mono)
            grow(i, mono, budget - 1)

    grow(0, (), trunc.max_len)
    out.sort(key=lambda mono: (len(mono), tuple(canonical_key(s) for s in mono)))
    return out


def create_module(
    alg: DoubleAffine, decomp: Decomposition, weight: Weight, trunc: Truncation
) -> InducedModule:
    return InducedModule(alg, decomp, weight, trunc)


def chain_dims(alg, weight, small_subset, big_subset, offsets, trunc):
    """Truncated weight-space dimensions along the surjection chain.

    Builds the imaginary module, the level-zero module and the parabolic
    modules for small_subset inside big_subset, and tabulates the monomial
    counts at each offset; counts are monotone along the chain.
    """
    small = frozenset(small_subset)
    big = frozenset(big_subset)
    if not small <= big:
        raise ValueError("the smaller parabolic set must lie inside the bigger")
    modules = [
        ("imaginary", InducedModule(alg, Decomposition(IMAGINARY), weight, trunc)),
        ("levelzero", InducedModule(alg, Decomposition(LEVEL_ZERO), weight, trunc)),
        (
            "parabolic-small",
            InducedModule(
                alg, Decomposition(PARABOLIC, small), weight, trunc
            ),
        ),
        (
            "parabolic-big",
            InducedModule(alg, Decomposition(PARABOLIC, big), weight, trunc),
        ),
    ]
    rows = []
    for off in offsets:
        dims = [mod.truncated_dim(off) for _, mod in modules]
        rows.append({"offset": off, "dims": dims})
    names = [name for name, _ in modules]
    monotone = all(
        row["dims"][i] >= row["dims"][i + 1]
        for row in rows
        for i in range(len(names) - 1)
    )
    return {"modules": names, "rows": rows, "monotone": monotone}
