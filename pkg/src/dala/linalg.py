"""Exact sparse rational linear algebra: elimination, rank, kernel."""

from __future__ import annotations

from fractions import Fraction


class SparseMatrix:
    """Sparse matrix with exact rational entries."""

    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        self.entries: dict = {}

    def set(self, r: int, c: int, val):
        if not 0 <= r < self.rows or not 0 <= c < self.cols:
            raise IndexError("entry out of range")
        val = Fraction(val)
        if val:
            self.entries[(r, c)] = val
        else:
            self.entries.pop((r, c), None)

    def add(self, r: int, c: int, val):
        cur = self.entries.get((r, c), Fraction(0)) + Fraction(val)
        self.set(r, c, cur)

    @classmethod
    def from_rows(cls, rows, cols: int) -> "SparseMatrix":
        m = cls(len(rows), cols)
        for r, row in enumerate(rows):
            if isinstance(row, dict):
                for c, v in row.items():
                    m.set(r, c, v)
            else:
                for c, v in enumerate(row):
                    m.set(r, c, v)
        return m

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def _eliminate(self):
        """Reduced row echelon pivots as sorted (col, unit pivot row) pairs.

        Divisions are confined to one normalization per pivot row; rows are
        otherwise combined by multiply and subtract, all exact.
        """
        pivots = []
        for row in self.row_dicts():
            row = dict(row)
            for col, prow in pivots:
                coeff = row.get(col)
                if coeff:
                    for j, v in prow.items():
                        cur = row.get(j, Fraction(0)) - coeff * v
                        if cur:
                            row[j] = cur
                        else:
                            row.pop(j, None)
            if not row:
                continue
            col = min(row)
            piv = row[col]
            if piv != 1:
                row = {j: v / piv for j, v in row.items()}
            for _, prow in pivots:
                coeff = prow.get(col)
                if coeff:
                    for j, v in row.items():
                        cur = prow.get(j, Fraction(0)) - coeff * v
                        if cur:
                            prow[j] = cur
                        else:
                            prow.pop(j, None)
            pivots.append((col, row))
        pivots.sort(key=lambda cv: cv[0])
        return pivots

    def rank(self) -> int:
        return len(self._eliminate())

    def kernel(self):
        """Basis of the right kernel as sparse column-index maps."""
        pivots = self._eliminate()
        pivot_cols = {col for col, _ in pivots}
        basis = []
        for free in range(self.cols):
            if free in pivot_cols:
                continue
            vec = {free: Fraction(1)}
            for col, prow in pivots:
                coeff = prow.get(free)
                if coeff:
                    vec[col] = -coeff
            basis.append(vec)
        return basis


def kernel_of_rows(rows, cols: int):
    return SparseMatrix.from_rows(rows, cols).kernel()


def rank_of_rows(rows, cols: int) -> int:
    return SparseMatrix.from_rows(rows, cols).rank()
