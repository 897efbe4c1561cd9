"""Finite simply laced root systems and their Chevalley structure constants."""

from __future__ import annotations

from dataclasses import dataclass

Coords = tuple  # integer coefficient vector over the simple roots


def _det_int(rows):
    """Fraction-free determinant of a small integer matrix (Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _edges_for_label(family: str, n: int):
    if family == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        return [(i, i + 1) for i in range(1, n)]
    if family == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")
        return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]
    raise ValueError("unsupported type %r (simply laced A, D, E only)" % family)


@dataclass(frozen=True)
class CartanMatrix:
    """Symmetric positive definite Cartan matrix of simply laced type."""

    entries: tuple
    label: str = ""

    def __post_init__(self):
        a = self.entries
        n = len(a)
        if any(len(row) != n for row in a):
            raise ValueError("Cartan matrix must be square")
        for i in range(n):
            if a[i][i] != 2:
                raise ValueError("diagonal entries must be 2")
            for j in range(n):
                if i != j and a[i][j] not in (0, -1):
                    raise ValueError("off-diagonal entries must be 0 or -1")
                if a[i][j] != a[j][i]:
                    raise ValueError("matrix must be symmetric (simply laced)")
        for k in range(1, n + 1):
            minor = [row[:k] for row in a[:k]]
            if _det_int(minor) <= 0:
                raise ValueError("matrix is not positive definite")

    @property
    def rank(self):
        return len(self.entries)

    @classmethod
    def from_label(cls, label: str) -> "CartanMatrix":
        label = label.strip()
        if len(label) < 2 or label[0].upper() not in "ADE":
            raise ValueError("algebra label must look like A1, D4, E6, ...")
        family = label[0].upper()
        n = int(label[1:])
        edges = _edges_for_label(family, n)
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in edges:
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return cls(tuple(tuple(row) for row in a), label="%s%d" % (family, n))


class RootSystem:
    """All roots of a finite simply laced system, heights, invariant form,
    and signed structure constants built from a bimultiplicative cocycle.

    The cocycle uses the orientation with Dynkin edges pointing from the
    lower to the higher node index; root vectors are rescaled so that
    [x_a, x_{-a}] = +h_a for every root a.
    """

    def __init__(self, cartan: CartanMatrix):
        self.cartan = cartan
        self.rank = cartan.rank
        s = self.rank
        self.simple = tuple(
            tuple(1 if j == i else 0 for j in range(s)) for i in range(s)
        )
        self.roots = self._generate_roots()
        self.positive_roots = tuple(
            sorted(r for r in self.roots if self.height(r) > 0)
        )
        ht_max = max(self.height(r) for r in self.positive_roots)
        highest = [r for r in self.positive_roots if self.height(r) == ht_max]
        if len(highest) != 1:
            raise AssertionError("highest root is not unique")
        self.highest_root = highest[0]
        self.theta_height = ht_max
        # cocycle parity bits: b[i][j] = 1 on the diagonal and on edges i -> j
        a = cartan.entries
        self._bits = tuple(
            tuple(
                1 if (i == j or (a[i][j] == -1 and i < j)) else 0
                for j in range(s)
            )
            for i in range(s)
        )

    @classmethod
    def from_label(cls, label: str) -> "RootSystem":
        return cls(CartanMatrix.from_label(label))

    def _generate_roots(self):
        found = set(self.simple)
        found.update(tuple(-c for c in r) for r in self.simple)
        queue = list(found)
        while queue:
            beta = queue.pop()
            for alpha in self.simple:
                for sgn in (1, -1):
                    gamma = tuple(b + sgn * a for b, a in zip(beta, alpha))
                    if gamma in found or all(c == 0 for c in gamma):
                        continue
                    if self.form(gamma, gamma) == 2:
                        found.add(gamma)
                        queue.append(gamma)
        for r in found:
            if not (all(c >= 0 for c in r) or all(c <= 0 for c in r)):
                raise AssertionError("mixed-sign root coordinates: %r" % (r,))
        return frozenset(found)

    def form(self, a: Coords, b: Coords) -> int:
        """Invariant bilinear form on the root lattice, (theta|theta) = 2."""
        cm = self.cartan.entries
        return sum(
            ai * sum(cm[i][j] * bj for j, bj in enumerate(b))
            for i, ai in enumerate(a)
        )

    def height(self, r: Coords) -> int:
        return sum(r)

    def is_root(self, r: Coords) -> bool:
        return tuple(r) in self.roots

    def epsilon(self, a: Coords, b: Coords) -> int:
        """Bimultiplicative sign with eps(a,b)*eps(b,a) = (-1)^(a|b)."""
        bits = self._bits
        par = 0
        for i, ai in enumerate(a):
            if ai:
                row = bits[i]
                for j, bj in enumerate(b):
                    if bj and row[j]:
                        par += ai * bj
        return -1 if par % 2 else 1

    def _eta(self, r: Coords) -> int:
        return 1 if self.height(r) > 0 else -1

    def structure_constant(self, a: Coords, b: Coords) -> int:
        """Coefficient of x_{a+b} in [x_a, x_b]; 0 when a+b is not a root."""
        g = tuple(x + y for x, y in zip(a, b))
        if g not in self.roots:
            return 0
        return self._eta(a) * self._eta(b) * self._eta(g) * self.epsilon(a, b)

    def bracket_roots(self, a: Coords, b: Coords):
        """Chevalley bracket of root vectors.

        Returns ('x', a+b, sign) when a+b is a root, ('h', coroot coords of a)
        when b == -a, and None otherwise.
        """
        g = tuple(x + y for x, y in zip(a, b))
        if all(c == 0 for c in g):
            return ("h", tuple(a))
        if g in self.roots:
            return ("x", g, self.structure_constant(a, b))
        return None

    def chevalley_form(self, sym1, sym2):
        """Form on Chevalley basis symbols ('x', root) / ('h', index 1..s)."""
        k1, t1 = sym1
        k2, t2 = sym2
        if k1 == "h" and k2 == "h":
            return self.cartan.entries[t1 - 1][t2 - 1]
        if k1 == "x" and k2 == "x":
            return 1 if all(x + y == 0 for x, y in zip(t1, t2)) else 0
        return 0
