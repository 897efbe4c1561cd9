"""Finite cyclic modules for the loop sl2 defined by point evaluations.

The cyclic generator w satisfies e(m) w = 0, h(m) w = (sum_j w_j a_j^m) w
and f(0)^(T+1) w = 0 with T the total weight.  Lowering degrees are
reduced modulo the monic polynomial with the prescribed roots, which
makes the spanning set finite; the quotient is then computed by closing
the commutation identities under exact row reduction, and the result is
revalidated by verify_cyclic_relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class WeylSpec:
    """Distinct nonzero evaluation points with positive integer weights."""

    points: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "points", tuple(_frac(a) for a in self.points)
        )
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.points) != len(self.weights):
            raise ValueError("points and weights must have equal length")
        if len(set(self.points)) != len(self.points):
            raise ValueError("evaluation points must be pairwise distinct")
        if any(a == 0 for a in self.points):
            raise ValueError("evaluation points must be nonzero")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")

    @property
    def total(self) -> int:
        return sum(self.weights)

    def h_value(self, m: int) -> Fraction:
        return sum(
            (w * a ** m for a, w in zip(self.points, self.weights)),
            Fraction(0),
        )

    def annihilator(self):
        """Monic product of (t - a_j)^(w_j), ascending coefficients."""
        coeffs = [Fraction(1)]
        for a, w in zip(self.points, self.weights):
            for _ in range(w):
                nxt = [Fraction(0)] * (len(coeffs) + 1)
                for i, c in enumerate(coeffs):
                    nxt[i] += -a * c
                    nxt[i + 1] += c
                coeffs = nxt
        return tuple(coeffs)


def _monomial_keys(deg_count: int, max_len: int):
    keys = []
    for ln in range(max_len + 1):
        keys.extend(combinations_with_replacement(range(deg_count), ln))
    return keys


class _FreeModel:
    """Operators on the free span of reduced lowering monomials."""

    def __init__(self, spec: WeylSpec):
        self.spec = spec
        self.total = spec.total
        ann = spec.annihilator()
        self._ann = ann
        self._red_cache = {}
        for r in range(self.total):
            unit = [Fraction(0)] * self.total
            unit[r] = Fraction(1)
            self._red_cache[r] = tuple(unit)

    def red(self, m: int):
        """Representation of t^m modulo the annihilator polynomial."""
        if m < 0:
            raise ValueError("model degrees are nonnegative")
        if self.total == 0:
            return ()
        cached = self._red_cache.get(m)
        if cached is not None:
            return cached
        D = self.total
        prev = self.red(m - 1)
        shifted = [Fraction(0)] * (D + 1)
        for i, c in enumerate(prev):
            shifted[i + 1] = c
        top = shifted[D]
        out = shifted[:D]
        if top:
            for r in range(D):
                out[r] -= top * self._ann[r]
        out = tuple(out)
        self._red_cache[m] = out
        return out

    def f_insert(self, key, vec):
        """Multiply by the f current smeared against a reduced polynomial."""
        if len(key) >= self.total:
            return {}
        out = {}
        for r, c in enumerate(vec):
            if c:
                new = tuple(sorted(key + (r,)))
                out[new] = out.get(new, Fraction(0)) + c
        return out

    def h_apply(self, key, m: int):
        out = {key: self.spec.h_value(m)}
        for pos in range(len(key)):
            rest = key[:pos] + key[pos + 1 :]
            for new, c in self.f_insert(rest, self.red(m + key[pos])).items():
                out[new] = out.get(new, Fraction(0)) - 2 * c
        return {k: v for k, v in out.items() if v}

    def e_apply(self, key, m: int):
        out = {}
        ln = len(key)
        for pos in range(ln):
            rest = key[:pos] + key[pos + 1 :]
            val = self.spec.h_value(m + key[pos])
            if val:
                out[rest] = out.get(rest, Fraction(0)) + val
        for i in range(ln):
            for j in range(i + 1, ln):
                rest = tuple(
                    key[l] for l in range(ln) if l != i and l != j
                )
                for new, c in self.f_insert(
                    rest, self.red(m + key[i] + key[j])
                ).items():
                    out[new] = out.get(new, Fraction(0)) - 2 * c
        return {k: v for k, v in out.items() if v}

    def apply(self, kind: str, m: int, vec: dict) -> dict:
        out = {}
        for key, c in vec.items():
            if kind == "f":
                img = self.f_insert(key, self.red(m))
            elif kind == "h":
                img = self.h_apply(key, m)
            else:
                img = self.e_apply(key, m)
            for k2, c2 in img.items():
                out[k2] = out.get(k2, Fraction(0)) + c * c2
        return {k: v for k, v in out.items() if v}


class _Rref:
    """Growing reduced row echelon basis over monomial indices."""

    def __init__(self):
        self.rows = {}  # pivot index -> row dict with unit pivot

    def reduce(self, vec: dict) -> dict:
        # rows are mutually reduced, so one pass over the pivot components
        # present in vec eliminates them all
        vec = dict(vec)
        for piv in [k for k in list(vec) if k in self.rows]:
            coeff = vec.get(piv)
            if not coeff:
                continue
            for j, v in self.rows[piv].items():
                cur = vec.get(j, Fraction(0)) - coeff * v
                if cur:
                    vec[j] = cur
                else:
                    vec.pop(j, None)
        return vec

    def insert(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec)
        inv = vec[piv]
        vec = {j: v / inv for j, v in vec.items()}
        for row in self.rows.values():
            coeff = row.get(piv)
            if coeff:
                for j, v in vec.items():
                    cur = row.get(j, Fraction(0)) - coeff * v
                    if cur:
                        row[j] = cur
                    else:
                        row.pop(j, None)
        self.rows[piv] = vec
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


@dataclass
class FiniteModule:
    """Explicit basis and operator matrices for one cyclic module."""

    spec: WeylSpec
    dimension: int
    basis_keys: tuple
    matrices: dict  # (kind, degree) -> list of column dicts
    generator: dict  # coordinates of the generator image
    reduction: tuple  # red(m) rows for m = 0..3*total
    h_values: tuple  # h eigenvalue scalars for m = 0..3*total

    def matrix_apply(self, kind: str, m: int, coords: dict) -> dict:
        """Apply a current of possibly unreduced degree via the reduction."""
        D = self.spec.total
        if D == 0:
            return {}
        out = {}
        for r, c in enumerate(self.reduction[m]):
            if not c:
                continue
            cols = self.matrices[(kind, r)]
            for j, v in coords.items():
                for i, entry in cols[j].items():
                    cur = out.get(i, Fraction(0)) + c * v * entry
                    if cur:
                        out[i] = cur
                    else:
                        out.pop(i, None)
        return {k: v for k, v in out.items() if v}


def build_weyl_module(spec: WeylSpec) -> FiniteModule:
    """Span-and-reduce construction closed under the commutation identities."""
    D = spec.total
    model = _FreeModel(spec)
    keys = _monomial_keys(D, D)
    key_index = {k: i for i, k in enumerate(keys)}

    def vec_to_idx(vec: dict) -> dict:
        return {key_index[k]: c for k, c in vec.items()}

    rref = _Rref()
    degs = range(D)
    changed = True
    while changed:
        changed = False
        for key in keys:
            base = {key: Fraction(1)}
            for a in degs:
                ea = model.apply("e", a, base)
                ha = model.apply("h", a, base)
                fa = model.apply("f", a, base)
                for b in degs:
                    com_ef = _sub(
                        model.apply("e", a, model.apply("f", b, base)),
                        model.apply("f", b, ea),
                    )
                    if rref.insert(vec_to_idx(_sub(com_ef, model.apply("h", a + b, base)))):
                        changed = True
                    com_hf = _sub(
                        model.apply("h", a, model.apply("f", b, base)),
                        model.apply("f", b, ha),
                    )
                    if rref.insert(
                        vec_to_idx(_add(com_hf, _scale(model.apply("f", a + b, base), 2)))
                    ):
                        changed = True
                    com_he = _sub(
                        model.apply("h", a, model.apply("e", b, base)),
                        model.apply("e", b, ha),
                    )
                    if rref.insert(
                        vec_to_idx(_sub(com_he, _scale(model.apply("e", a + b, base), 2)))
                    ):
                        changed = True
                    com_ee = _sub(
                        model.apply("e", a, model.apply("e", b, base)),
                        model.apply("e", b, ea),
                    )
                    if rref.insert(vec_to_idx(com_ee)):
                        changed = True
                    com_hh = _sub(
                        model.apply("h", a, model.apply("h", b, base)),
                        model.apply("h", b, ha),
                    )
                    if rref.insert(vec_to_idx(com_hh)):
                        changed = True
        # relations form a submodule: close the span under the operators
        for row in list(rref.rows.values()):
            vec = {keys[i]: c for i, c in row.items()}
            for kind in ("e", "h", "f"):
                for a in degs:
                    if rref.insert(vec_to_idx(model.apply(kind, a, vec))):
                        changed = True

    pivot_set = set(rref.rows)
    basis_idx = [i for i in range(len(keys)) if i not in pivot_set]
    basis_pos = {i: p for p, i in enumerate(basis_idx)}

    def coords_of(vec: dict) -> dict:
        reduced = rref.reduce(vec_to_idx(vec))
        return {basis_pos[i]: c for i, c in reduced.items()}

    matrices = {}
    for kind in ("e", "h", "f"):
        for a in degs:
            cols = []
            for i in basis_idx:
                cols.append(coords_of(model.apply(kind, a, {keys[i]: Fraction(1)})))
            matrices[(kind, a)] = cols
    generator = coords_of({(): Fraction(1)})
    if not generator:
        raise AssertionError("the generator image collapsed to zero")
    reduction = tuple(model.red(m) for m in range(3 * max(D, 1)))
    h_values = tuple(spec.h_value(m) for m in range(3 * max(D, 1)))
    return FiniteModule(
        spec=spec,
        dimension=len(basis_idx),
        basis_keys=tuple(keys[i] for i in basis_idx),
        matrices=matrices,
        generator=generator,
        reduction=reduction,
        h_values=h_values,
    )


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k, Fraction(0)) + v
        if cur:
            out[k] = cur
        else:
            out.pop(k, None)
    return out


def _scale(a: dict, s) -> dict:
    s = Fraction(s)
    return {k: v * s for k, v in a.items() if v * s}


def _sub(a: dict, b: dict) -> dict:
    return _add(a, _scale(b, -1))


def verify_cyclic_relations(mod: FiniteModule):
    """Recheck the defining relations and current commutators on the basis."""
    D = mod.spec.total
    dim = mod.dimension
    failures = []

    def apply(kind, m, coords):
        return mod.matrix_apply(kind, m, coords)

    unit_cols = [{p: Fraction(1)} for p in range(dim)]
    if D:
        for a in range(D):
            for b in range(D):
                for col in unit_cols:
                    ef = _sub(
                        apply("e", a, apply("f", b, col)),
                        apply("f", b, apply("e", a, col)),
                    )
                    if _sub(ef, apply("h", a + b, col)):
                        failures.append(("[e,f]", a, b))
                    hf = _sub(
                        apply("h", a, apply("f", b, col)),
                        apply("f", b, apply("h", a, col)),
                    )
                    if _add(hf, _scale(apply("f", a + b, col), 2)):
                        failures.append(("[h,f]", a, b))
                    he = _sub(
                        apply("h", a, apply("e", b, col)),
                        apply("e", b, apply("h", a, col)),
                    )
                    if _sub(he, _scale(apply("e", a + b, col), 2)):
                        failures.append(("[h,e]", a, b))
    gen = mod.generator
    if D:
        for a in range(D):
            if apply("e", a, gen):
                failures.append(("e-kills-generator", a))
            if _sub(apply("h", a, gen), _scale(gen, mod.h_values[a])):
                failures.append(("h-eigenvalue", a))
        power = dict(gen)
        for _ in range(D + 1):
            power = apply("f", 0, power)
        if power:
            failures.append(("f-power",))
    return not failures, failures


def highest_h_line_dim(mod: FiniteModule) -> int:
    """Dimension of the span of Cartan current monomials on the generator."""
    D = mod.spec.total
    rref = _Rref()
    frontier = [mod.generator]
    rref.insert(dict(mod.generator))
    while frontier:
        nxt = []
        for vec in frontier:
            for a in range(D):
                img = mod.matrix_apply("h", a, vec)
                if rref.insert(dict(img)):
                    nxt.append(img)
        frontier = nxt
    return rref.rank
