"""Loop-current exponential series and module identity checks.

The series coefficients live in the commutative polynomial ring generated
by the Cartan currents beta^vee(0, +-i), i >= 1; a monomial is stored as
the sorted tuple of its current degrees.  All identity checks are run as
statements about vectors in a level-zero module acting on the highest
weight vector, where the left-ideal tails vanish by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import LatticeVector, h_, x_
from .modules import InducedModule, ModuleVector, Truncation
from .partition import LEVEL_ZERO, affine_height
from .extremal import vanishes_in_truncated_quotient

Poly = dict  # monomial (sorted tuple of degrees) -> Fraction


def _partitions(j: int, largest: int | None = None):
    if j == 0:
        yield ()
        return
    if largest is None:
        largest = j
    for part in range(min(j, largest), 0, -1):
        for rest in _partitions(j - part, part):
            yield (part,) + rest


def lambda_coefficient(j: int) -> Poly:
    """Coefficient of u^j in exp(-sum_i beta_i u^i / i) as a polynomial
    in the commuting currents beta_i, via an explicit sum over partitions."""
    if j < 0:
        raise ValueError("order must be >= 0")
    out: Poly = {}
    for mu in _partitions(j):
        coeff = Fraction(1)
        mult: dict = {}
        for part in mu:
            coeff *= Fraction(-1, part)
            mult[part] = mult.get(part, 0) + 1
        for m in mult.values():
            coeff /= factorial(m)
        key = tuple(sorted(mu))
        out[key] = out.get(key, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class LambdaSeries:
    """Truncated exponential series for one coroot and one sign."""

    coroot: tuple
    sign: int
    order: int
    coefficients: tuple

    @classmethod
    def build(cls, coroot, sign: int, order: int) -> "LambdaSeries":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        coeffs = tuple(lambda_coefficient(j) for j in range(order + 1))
        return cls(tuple(coroot), sign, order, coeffs)

    def value(self, weight, j: int) -> Fraction:
        """Evaluate the u^j coefficient through the weight functional."""
        total = Fraction(0)
        for mono, c in self.coefficients[j].items():
            term = c
            for deg in mono:
                term *= weight.coroot_value(self.coroot, self.sign * deg)
            total += term
        return total


def _require_level_zero(module: InducedModule):
    if module.decomp.kind != LEVEL_ZERO:
        raise ValueError("this check runs in a level-zero module")


def _affine_root_symbol(beta: LatticeVector, n: int):
    """x(beta, n) for beta = finite + r1*delta1: the symbol x_finite(r1, n)."""
    return x_(beta.finite, beta.m, n)


@dataclass(frozen=True)
class GarlandResult:
    beta: LatticeVector
    t: int
    sign: int
    ok_lower: bool
    ok_full: bool
    residual_lower: ModuleVector
    residual_full: ModuleVector

    @property
    def ok(self) -> bool:
        return self.ok_lower and self.ok_full


def garland_check(
    module: InducedModule, beta: LatticeVector, t: int, sign: int
) -> GarlandResult:
    """Verify both current power identities on the highest weight vector.

    With divided powers restored and the global alternating sign fixed by
    straightening, the exact statements are

      x(b,s)^t   x(-b,0)^(t+1) v = (-1)^t t! (t+1)! sum_m x(-b,s m) L(b,t-m) v
      x(b,s)^(t+1) x(-b,0)^(t+1) v = (-1)^(t+1) ((t+1)!)^2 L(b,t+1) v

    where L(b,j) is the u^j series coefficient evaluated through the weight.
    """
    _require_level_zero(module)
    if t < 1:
        raise ValueError("t must be >= 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if beta.n != 0 or not any(beta.finite):
        raise ValueError("beta must be a real affine root of the first loop")
    if affine_height(module.rs, beta) <= 0:
        raise ValueError("beta must be positive for the first loop")
    if beta.m and module.weight.c1:
        raise ValueError(
            "a nonzero t1 part needs c1 to act by zero (the pairing "
            "contributes m*c1 to the Cartan brackets)"
        )
    neg = LatticeVector(
        tuple(-c for c in beta.finite), -beta.m, 0
    )
    series = LambdaSeries.build(beta.finite, sign, t + 1)

    lowered = module.vacuum()
    for _ in range(t + 1):
        lowered = module.act(_affine_root_symbol(neg, 0), lowered)

    lhs_lower = lowered
    for _ in range(t):
        lhs_lower = module.act(_affine_root_symbol(beta, sign), lhs_lower)
    scale = Fraction((-1) ** t * factorial(t) * factorial(t + 1))
    rhs_lower = ModuleVector(module, {})
    for m in range(t + 1):
        lam = series.value(module.weight, t - m)
        if lam:
            rhs_lower = rhs_lower + lam * module.act(
                _affine_root_symbol(neg, sign * m), module.vacuum()
            )
    residual_lower = lhs_lower - scale * rhs_lower

    lhs_full = module.act(_affine_root_symbol(beta, sign), lhs_lower)
    full_scale = Fraction((-1) ** (t + 1) * factorial(t + 1) ** 2)
    rhs_full = full_scale * series.value(module.weight, t + 1) * module.vacuum()
    residual_full = lhs_full - rhs_full

    return GarlandResult(
        beta,
        t,
        sign,
        residual_lower.is_zero(),
        residual_full.is_zero(),
        residual_lower,
        residual_full,
    )


def lambda_top_nonvanishing(module: InducedModule, node: int, order: int) -> bool:
    """Whether the order-j series coefficient of the node coroot evaluates
    to a nonzero scalar on the highest weight vector."""
    coroot = tuple(
        1 if i + 1 == node else 0 for i in range(module.rank)
    )
    series = LambdaSeries.build(coroot, 1, order)
    return series.value(module.weight, order) != 0


# -- nilpotency ------------------------------------------------------------


def _node_lowering(module: InducedModule, i: int, n: int):
    if i == 0:
        return x_(module.rs.highest_root, -1, n)
    root = tuple(-1 if j + 1 == i else 0 for j in range(module.rank))
    return x_(root, 0, n)


def _node_raising(module: InducedModule, j: int, m: int):
    if j == 0:
        theta = module.rs.highest_root
        return x_(tuple(-c for c in theta), 1, m)
    root = tuple(1 if l + 1 == j else 0 for l in range(module.rank))
    return x_(root, 0, m)


def nilpotency_index(
    module: InducedModule,
    node: int,
    n: int,
    nmax: int,
    m_window: tuple | None = None,
    budget: Truncation | None = None,
):
    """Smallest N <= nmax with x(a_j, m) x(-a_node, n)^N v zero in the
    irreducible quotient for every node j and every m in the window,
    certified by the bounded highest-line criterion; None when no N
    qualifies.  The module truncation must leave room for the commutators
    of the certificate monomials (roughly window + 2 * budget reach)."""
    _require_level_zero(module)
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    if m_window is None:
        lo, hi = module.trunc.t2_window
        m_window = (max(lo // 3, -2), min(hi // 3, 2))
    if budget is None:
        budget = Truncation(
            max_len=nmax,
            t1_window=module.trunc.t1_window,
            t2_window=m_window,
        )
    low = _node_lowering(module, node, n)
    word = module.vacuum()
    for power in range(1, nmax + 1):
        word = module.act(low, word)
        ok = True
        for j in range(module.rank + 1):
            for m in range(m_window[0], m_window[1] + 1):
                image = module.act(_node_raising(module, j, m), word)
                if j != node and not image.is_zero():
                    ok = False
                    break
                if not vanishes_in_truncated_quotient(module, image, budget):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return power
    return None


# -- evaluation relations ----------------------------------------------------


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


@dataclass(frozen=True)
class AnnihilatorPolynomial:
    """Monic polynomial in the second torus variable vanishing on the
    evaluation points; its coefficients drive the evaluation relations."""

    coefficients: tuple
    points: tuple

    def __post_init__(self):
        if not self.coefficients or self.coefficients[0] == 0:
            raise ValueError("constant term must be nonzero (nonzero points)")
        if self.coefficients[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def from_weight(cls, weight) -> "AnnihilatorPolynomial":
        if not weight.eval_points:
            raise ValueError("the weight carries no evaluation data")
        coeffs = [Fraction(1)]
        points = []
        for p in sorted(weight.eval_points):
            for a, _ in weight.eval_points[p]:
                coeffs = _poly_mul(coeffs, [-a, Fraction(1)])
                points.append(a)
        return cls(tuple(coeffs), tuple(points))


@dataclass
class RelationReport:
    ok: bool
    failures: list


def _relation_vector(module, handle, m, eps) -> ModuleVector:
    kind = handle[0]
    vec = ModuleVector(module, {})
    for i, e in enumerate(eps):
        if not e:
            continue
        if kind == "x":
            _, finite, r1 = handle
            step = module.act(x_(finite, r1, m + i), module.vacuum())
        else:
            _, coroot, r1 = handle
            step = ModuleVector(module, {})
            for l, c in enumerate(coroot):
                if c:
                    step = step + c * module.act(
                        h_(l + 1, r1, m + i), module.vacuum()
                    )
        vec = vec + Fraction(e) * step
    return vec


def _proportional(u: ModuleVector, v: ModuleVector):
    """Scalar c with u == c*v, or None."""
    if v.is_zero():
        return Fraction(0) if u.is_zero() else None
    mono, coeff = next(iter(v.terms.items()))
    c = u.terms.get(mono, Fraction(0)) / coeff
    return c if (u - c * v).is_zero() else None


def _raising_generators(module, window):
    gens = []
    for j in range(module.rank + 1):
        for n in range(window[0], window[1] + 1):
            gens.append((j, n, _node_raising(module, j, n)))
    return gens


def check_evaluation_relation(
    module: InducedModule,
    handle,
    m: int,
    eps=None,
    window=None,
    _seen=None,
) -> RelationReport:
    """Mechanical replay of the height induction for the single-factor
    evaluation relations: every raising generator either annihilates the
    relation vector exactly or maps it onto a lower-height relation vector
    with the same coefficient pattern, which is then certified recursively.
    """
    _require_level_zero(module)
    if module.weight.c1 or module.weight.c2:
        raise ValueError("evaluation relations need c1 and c2 acting by zero")
    if eps is None:
        eps = AnnihilatorPolynomial.from_weight(module.weight).coefficients
    window = window or module.trunc.t2_window
    seen = _seen if _seen is not None else set()
    key = (handle, m, tuple(eps))
    if key in seen:
        return RelationReport(True, [])
    seen.add(key)

    rs = module.rs
    failures = []
    rel = _relation_vector(module, handle, m, eps)
    for j, n, gen in _raising_generators(module, window):
        image = module.act(gen, rel)
        if image.is_zero():
            continue
        rho = module.alg.weight_of(gen)
        if handle[0] == "x":
            _, finite, r1 = handle
            new_fin = tuple(a + b for a, b in zip(finite, rho.finite))
            new_r1 = r1 + rho.m
            if not any(new_fin):
                if new_r1 == 0:
                    failures.append((handle, m, j, n, image))
                    continue
                cand = ("h", rho.finite, new_r1)
            elif rs.is_root(new_fin):
                cand = ("x", new_fin, new_r1)
            else:
                failures.append((handle, m, j, n, image))
                continue
        else:
            _, coroot, r1 = handle
            cand = ("x", rho.finite, r1 + rho.m)
        cand_vec = _relation_vector(module, cand, m + n, eps)
        c = _proportional(image, cand_vec)
        if c is None:
            failures.append((handle, m, j, n, image))
            continue
        if c:
            sub = check_evaluation_relation(
                module, cand, m + n, eps, window, seen
            )
            failures.extend(sub.failures)
    return RelationReport(not failures, failures)


def check_two_factor_relation(
    module: InducedModule,
    p: int,
    n1: int,
    q: int,
    m: int,
    eps=None,
    window=None,
) -> RelationReport:
    """Two-factor form of the evaluation relations for simple lowering
    factors x(-a_p, n1) x(-a_q, m+i): raising generators reduce the vector
    to an explicit combination of single-factor relation instances."""
    _require_level_zero(module)
    if not (1 <= p <= module.rank and 1 <= q <= module.rank):
        raise ValueError("two-factor instances use finite simple nodes")
    if eps is None:
        eps = AnnihilatorPolynomial.from_weight(module.weight).coefficients
    window = window or module.trunc.t2_window
    seen: set = set()

    inner = ("x", tuple(-1 if l + 1 == q else 0 for l in range(module.rank)), 0)
    outer_sym = _node_lowering(module, p, n1)
    rel = module.act(outer_sym, _relation_vector(module, inner, m, eps))

    a_pq = module.rs.cartan.entries[p - 1][q - 1]
    failures = []
    for j, n, gen in _raising_generators(module, window):
        image = module.act(gen, rel)
        if j != p:
            if not image.is_zero():
                failures.append(((p, n1, q), m, j, n, image))
            continue
        shift = n + n1
        lam = module.weight.cartan_value(p, shift)
        predicted = lam * _relation_vector(module, inner, m, eps) - Fraction(
            a_pq
        ) * _relation_vector(module, inner, m + shift, eps)
        if not (image - predicted).is_zero():
            failures.append(((p, n1, q), m, j, n, image - predicted))
            continue
        for mm in (m, m + shift):
            sub = check_evaluation_relation(
                module, inner, mm, eps, window, seen
            )
            failures.extend(sub.failures)
    return RelationReport(not failures, failures)


def annihilator_check(
    module: InducedModule, poly: AnnihilatorPolynomial, window=None
) -> RelationReport:
    """Generator-level annihilator verification: currents smeared against
    the polynomial kill the highest weight vector for raising and Cartan
    directions, and land on raising-invisible vectors for lowering ones."""
    _require_level_zero(module)
    window = window or module.trunc.t2_window
    g = poly.coefficients
    failures = []
    for i in range(module.rank + 1):
        for m in range(window[0], window[1] + 1):
            raised = ModuleVector(module, {})
            for jdx, c in enumerate(g):
                if c:
                    raised = raised + Fraction(c) * module.act(
                        _node_raising(module, i, m + jdx), module.vacuum()
                    )
            if not raised.is_zero():
                failures.append(("raising", i, m, raised))
            if i >= 1:
                val = sum(
                    (
                        Fraction(c) * module.weight.cartan_value(i, m + jdx)
                        for jdx, c in enumerate(g)
                    ),
                    Fraction(0),
                )
                if val:
                    failures.append(("cartan", i, m, val))
            lowered = ModuleVector(module, {})
            for jdx, c in enumerate(g):
                if c:
                    lowered = lowered + Fraction(c) * module.act(
                        _node_lowering(module, i, m + jdx), module.vacuum()
                    )
            for j, n, gen in _raising_generators(module, window):
                image = module.act(gen, lowered)
                if not image.is_zero():
                    failures.append(("lowering", i, m, j, n, image))
    return RelationReport(not failures, failures)
