"""Extremal vector computations and bounded submodule certificates.

Extremal vectors in the imaginary module are kernels of the stacked
Cartan raising currents on a pure delta2 weight space; by the support
argument these are the only raising directions landing in nonzero weight
spaces there.  All verdicts are certificates at the configured bounds,
never claims about the untruncated module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LatticeVector, h_
from .linalg import SparseMatrix
from .modules import (
    IMAGINARY,
    InducedModule,
    ModuleVector,
    Truncation,
    enumerate_monomials,
)
from .partition import dominates


@dataclass(frozen=True)
class ExtremalReport:
    k: int
    weight_dim: int
    extremal_dim: int
    basis: tuple


def _vectors_from_kernel(module, basis_monomials, kernel_vectors):
    out = []
    for vec in kernel_vectors:
        out.append(
            ModuleVector(
                module, {basis_monomials[j]: c for j, c in vec.items()}
            )
        )
    return out


def extremal_space(
    module: InducedModule, k: int, check_real_raisings: bool = False
) -> ExtremalReport:
    """Kernel of the raising currents h_i(0, n), n = 1..k, on the space
    at offset k*delta2 of an imaginary module."""
    if module.decomp.kind != IMAGINARY:
        raise ValueError("extremal_space expects an imaginary module")
    if k < 0:
        raise ValueError("k must be >= 0")
    zero = module.alg.zero_vector()
    offset = LatticeVector(zero.finite, 0, k)
    basis = module.weight_space(offset)
    index = {mono: j for j, mono in enumerate(basis)}
    rows = []
    for i in range(1, module.rank + 1):
        for n in range(1, k + 1):
            target_off = LatticeVector(zero.finite, 0, k - n)
            target = module.weight_space(target_off)
            tindex = {mono: j for j, mono in enumerate(target)}
            block = [dict() for _ in target]
            for j, mono in enumerate(basis):
                image = module.act(h_(i, 0, n), module.monomial_vector(mono))
                for m2, c in image.terms.items():
                    block[tindex[m2]][j] = c
            rows.extend(block)
    mat = SparseMatrix.from_rows(rows, len(basis))
    kern = mat.kernel() if basis else []
    vectors = _vectors_from_kernel(module, basis, kern)
    if check_real_raisings:
        for sym in module.raising_symbols():
            if sym.kind != "x":
                continue
            for v in vectors:
                if not module.act(sym, v).is_zero():
                    raise AssertionError(
                        "real raising %r does not annihilate an extremal "
                        "vector at offset %d*delta2" % (sym, k)
                    )
    return ExtremalReport(k, len(basis), len(vectors), tuple(vectors))


def extremal_dim_general(module: InducedModule, offset: LatticeVector) -> int:
    """Extremal subspace dimension at an arbitrary offset, using every
    raising symbol whose target weight space can be nonzero."""
    basis = module.weight_space(offset)
    if not basis:
        return 0
    rows = []
    for sym in module.raising_symbols():
        w = module.alg.weight_of(sym)
        target_off = offset.plus(w.negate())
        if not dominates(module.rs, target_off):
            continue
        target = module.weight_space(target_off)
        tindex = {mono: j for j, mono in enumerate(target)}
        block = [dict() for _ in target]
        for j, mono in enumerate(basis):
            image = module.act(sym, module.monomial_vector(mono))
            for m2, c in image.terms.items():
                block[tindex[m2]][j] = c
        rows.extend(block)
    return len(SparseMatrix.from_rows(rows, len(basis)).kernel())


@dataclass(frozen=True)
class ProbeVerdict:
    reducible: bool
    kmax: int
    k: int | None = None
    witness: ModuleVector | None = None

    @property
    def label(self) -> str:
        if self.reducible:
            return "REDUCIBLE"
        return "CONSISTENT_WITH_IRREDUCIBLE(kmax=%d)" % self.kmax


def irreducibility_probe(module: InducedModule, kmax: int) -> ProbeVerdict:
    """Bounded reducibility certificate from extremal spaces at k <= kmax."""
    for k in range(1, kmax + 1):
        report = extremal_space(module, k)
        if report.extremal_dim:
            return ProbeVerdict(True, kmax, k, report.basis[0])
    return ProbeVerdict(False, kmax)


def embedding_check(
    module: InducedModule, w: ModuleVector, depth: Truncation
) -> bool:
    """Certify that the PBW monomials within depth act freely on w."""
    if w.is_zero():
        return False
    monomials = enumerate_monomials(module, depth)
    images = [module.apply_monomial(mono, w) for mono in monomials]
    support = sorted(
        {m for vec in images for m in vec.terms},
        key=lambda m: (len(m), m),
    )
    index = {m: j for j, m in enumerate(support)}
    rows = [
        {index[m]: c for m, c in vec.terms.items()} for vec in images
    ]
    mat = SparseMatrix.from_rows(rows, len(support))
    return mat.rank() == len(monomials)


def raising_monomials(
    module: InducedModule,
    offset: LatticeVector,
    budget: Truncation,
    ignore_n: bool = False,
):
    """Multisets of raising symbols with total weight equal to offset."""
    from .modules import _multisets_with_weight

    symbols = module.raising_symbols(budget)
    return _multisets_with_weight(
        module.alg, module.rs, symbols, offset, budget.max_len, ignore_n
    )


def vanishes_in_truncated_quotient(
    module: InducedModule, v: ModuleVector, budget: Truncation
) -> bool:
    """Bounded certificate that v maps to zero in the irreducible quotient:
    every raising monomial within budget sends v to a vector with zero
    coefficient on the highest weight line.

    In a loop-charged level-zero module the delta2 grading is erased by
    evaluation, so the monomials are matched on the horizontal grading only.
    """
    if v.is_zero():
        return True
    loopy = module.decomp.kind == "levelzero" and module.weight.has_loop_part
    offset = v.horizontal_offset() if loopy else v.weight_offset()
    for mono in raising_monomials(module, offset, budget, ignore_n=loopy):
        image = module.apply_monomial(mono, v)
        if image.vacuum_coefficient():
            return False
    return True


def truncated_maximal_component(
    module: InducedModule, offset: LatticeVector, budget: Truncation
):
    """Vectors in the weight space at offset killed into the complement of
    the highest weight line by every raising monomial within budget."""
    basis = module.weight_space(offset)
    monos = raising_monomials(module, offset, budget)
    rows = []
    for mono in monos:
        row = {}
        for j, bmono in enumerate(basis):
            coeff = module.apply_monomial(
                mono, module.monomial_vector(bmono)
            ).vacuum_coefficient()
            if coeff:
                row[j] = coeff
        rows.append(row)
    kern = SparseMatrix.from_rows(rows, len(basis)).kernel()
    vectors = _vectors_from_kernel(module, basis, kern)
    return len(vectors), vectors
