"""Root systems, weights and the finite Weyl group in exact integer arithmetic.

Weights are tuples of ints holding coordinates in the basis of fundamental
weights, so the pairing with the i-th simple coroot is simply ``weight[i]``.
"""
from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from .errors import InvalidRootError, StructureError

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wscale(k: int, a: Weight) -> Weight:
    return tuple(k * x for x in a)


def mat_vec(m: Matrix, v: Weight) -> Weight:
    return tuple(sum(r * x for r, x in zip(row, v)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _inverse(m: Matrix) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _det(m: Matrix) -> int:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return int(det)


class WeylElement:
    """Element of the finite Weyl group, stored as its matrix on weight coordinates."""

    __slots__ = ("matrix", "length")

    def __init__(self, matrix: Matrix, length: int):
        self.matrix = matrix
        self.length = length

    def act(self, lam: Weight) -> Weight:
        return mat_vec(self.matrix, lam)

    @property
    def det(self) -> int:
        return -1 if self.length % 2 else 1

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement({self.matrix}, length={self.length})"


class Dominated(NamedTuple):
    """Result of normalizing a weight under the finite dot action."""

    weight: Weight
    element: WeylElement
    parity: int | None  # None when the weight is singular under the rho-shift

    @property
    def singular(self) -> bool:
        return self.parity is None


class RootSystem:
    """A reduced irreducible root system given by its Cartan matrix.

    Convention: ``cartan[i][j] = (alpha_j, alpha_i^vee)``, so the fundamental
    coordinates of the simple root alpha_j form column j.

    Attributes
    ----------
    positive_roots : list of Weight
        Positive roots in fundamental coordinates.
    root_coeffs : list of tuple
        The same roots in the basis of simple roots.
    coroot_coeffs : list of tuple
        Matching coroots in the basis of simple coroots; the pairing
        ``(lam, beta^vee)`` is the dot product with ``lam``.
    highest_short : int
        Index of the highest short root alpha_h (its coroot is the highest coroot).
    """

    def __init__(self, cartan: Sequence[Sequence[int]], label: str | None = None):
        cm = tuple(tuple(int(x) for x in row) for row in cartan)
        n = len(cm)
        if n == 0 or any(len(row) != n for row in cm):
            raise StructureError("Cartan matrix must be square and non-empty")
        for i in range(n):
            if cm[i][i] != 2:
                raise StructureError("Cartan matrix needs 2 on the diagonal")
            for j in range(n):
                if i != j and (cm[i][j] > 0 or (cm[i][j] == 0) != (cm[j][i] == 0)):
                    raise StructureError("invalid off-diagonal Cartan entries")
        self.cartan = cm
        self.rank = n
        self.label = label or "generic"
        self._cinv = _inverse(cm)
        self.fundamental_group_order = _det(cm)
        if self.fundamental_group_order <= 0:
            raise StructureError("Cartan matrix is not of finite type")
        self.norms = self._symmetrizer()
        self.simple_roots = [tuple(cm[k][j] for k in range(n)) for j in range(n)]
        self.rho: Weight = (1,) * n
        self.zero: Weight = (0,) * n
        self._build_roots()
        self.identity = WeylElement(identity_matrix(n), 0)
        self._simple_mats = [self._reflection_matrix(self.simple_roots[i], _unit(n, i))
                             for i in range(n)]

    # construction helpers

    def _symmetrizer(self) -> list[Fraction]:
        n = self.rank
        norms: list[Fraction | None] = [None] * n
        norms[0] = Fraction(1)
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and self.cartan[i][j] != 0 and norms[j] is None:
                    norms[j] = norms[i] * self.cartan[i][j] / self.cartan[j][i]
                    queue.append(j)
        if any(x is None for x in norms):
            raise StructureError("Dynkin diagram is not connected")
        return norms  # type: ignore[return-value]

    def _build_roots(self):
        n, cm = self.rank, self.cartan
        seen = {}
        queue = deque()
        for i in range(n):
            pair = (_unit(n, i), _unit(n, i))
            seen[pair[0]] = pair[1]
            queue.append(pair)
        while queue:
            c, d = queue.popleft()
            for j in range(n):
                pj = sum(cm[j][k] * c[k] for k in range(n))
                qj = sum(d[k] * cm[k][j] for k in range(n))
                c2 = tuple(c[k] - (pj if k == j else 0) for k in range(n))
                d2 = tuple(d[k] - (qj if k == j else 0) for k in range(n))
                if c2 not in seen:
                    seen[c2] = d2
                    queue.append((c2, d2))
        pos = sorted((c for c in seen if all(x >= 0 for x in c)),
                     key=lambda c: (sum(c), c))
        self.root_coeffs = pos
        self.coroot_coeffs = [seen[c] for c in pos]
        self.positive_roots = [tuple(sum(cm[i][j] * c[j] for j in range(n)) for i in range(n))
                               for c in pos]
        heights = [sum(d) for d in self.coroot_coeffs]
        self.highest_short = max(range(len(pos)), key=lambda k: heights[k])
        self.coxeter_number = heights[self.highest_short] + 1

    def _reflection_matrix(self, root: Weight, coroot: tuple[int, ...]) -> Matrix:
        n = self.rank
        return tuple(tuple(int(k == j) - root[k] * coroot[j] for j in range(n))
                     for k in range(n))

    # basic data

    @property
    def highest_short_root(self) -> Weight:
        return self.positive_roots[self.highest_short]

    @property
    def highest_short_coroot(self) -> tuple[int, ...]:
        return self.coroot_coeffs[self.highest_short]

    def pairing(self, lam: Weight, beta: int) -> int:
        """(lam, beta^vee) for the positive root with index ``beta``."""
        if not 0 <= beta < len(self.positive_roots):
            raise InvalidRootError(f"no positive root with index {beta}")
        return sum(a * b for a, b in zip(lam, self.coroot_coeffs[beta]))

    def pairings(self, lam: Weight) -> list[int]:
        return [sum(a * b for a, b in zip(lam, d)) for d in self.coroot_coeffs]

    def rho_check_pairing2(self, lam: Weight) -> int:
        """2(lam, rho^vee), i.e. the sum of (lam, beta^vee) over positive roots."""
        return sum(self.pairings(lam))

    def root_coords(self, lam: Weight) -> tuple[Fraction, ...]:
        return tuple(sum(r * x for r, x in zip(row, lam)) for row in self._cinv)

    def in_root_lattice(self, lam: Weight) -> bool:
        return all(c.denominator == 1 for c in self.root_coords(lam))

    def is_dominant(self, lam: Weight) -> bool:
        return all(x >= 0 for x in lam)

    def dominates(self, lam: Weight, mu: Weight) -> bool:
        """True when lam - mu is a non-negative integer combination of simple roots."""
        return all(c.denominator == 1 and c >= 0 for c in self.root_coords(wsub(lam, mu)))

    def inner(self, lam: Weight, mu: Weight) -> Fraction:
        """W-invariant form normalized by the symmetrizer of the Cartan matrix."""
        c = self.root_coords(mu)
        return sum(Fraction(lam[i]) * self.norms[i] * c[i] for i in range(self.rank))

    # Weyl group

    def reflect(self, lam: Weight, i: int) -> Weight:
        a = self.simple_roots[i]
        k = lam[i]
        return tuple(x - k * y for x, y in zip(lam, a))

    def simple_reflection(self, i: int) -> WeylElement:
        return WeylElement(self._simple_mats[i], 1)

    def root_reflection(self, beta: int) -> WeylElement:
        m = self._reflection_matrix(self.positive_roots[beta], self.coroot_coeffs[beta])
        return self.weyl_from_matrix(m)

    def weyl_from_matrix(self, m: Matrix) -> WeylElement:
        v = mat_vec(m, self.rho)
        return WeylElement(m, sum(1 for p in self.pairings(v) if p < 0))

    def weyl_mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.weyl_from_matrix(mat_mul(a.matrix, b.matrix))

    def weyl_inverse(self, a: WeylElement) -> WeylElement:
        inv = _inverse(a.matrix)
        return WeylElement(tuple(tuple(int(x) for x in row) for row in inv), a.length)

    def weyl_from_word(self, word: Sequence[int]) -> WeylElement:
        m = self.identity.matrix
        for i in word:
            m = mat_mul(m, self._simple_mats[i])
        return self.weyl_from_matrix(m)

    def reduced_word(self, w: WeylElement) -> tuple[int, ...]:
        """Lexicographically first reduced word, built from left descents."""
        word = []
        m = w.matrix
        while True:
            v = mat_vec(m, self.rho)
            i = next((k for k in range(self.rank) if v[k] < 0), None)
            if i is None:
                return tuple(word)
            word.append(i)
            m = mat_mul(self._simple_mats[i], m)

    def finite_weyl_elements(self) -> list[WeylElement]:
        return list(_weyl_elements(self))

    def longest_element(self) -> WeylElement:
        return max(_weyl_elements(self), key=lambda w: w.length)

    def dual_weight(self, lam: Weight) -> Weight:
        """-w_0(lam), the highest weight of the dual module."""
        return tuple(-x for x in self.longest_element().act(lam))

    def dominate(self, lam: Weight) -> Dominated:
        """Move ``lam`` into the dominant region under the dot action ``w(lam+rho)-rho``."""
        v = list(wadd(lam, self.rho))
        m = self.identity.matrix
        while True:
            i = next((k for k in range(self.rank) if v[k] < 0), None)
            if i is None:
                break
            k = v[i]
            a = self.simple_roots[i]
            v = [x - k * y for x, y in zip(v, a)]
            m = mat_mul(self._simple_mats[i], m)
        w = self.weyl_from_matrix(m)
        parity = None if any(x == 0 for x in v) else w.det
        return Dominated(wsub(tuple(v), self.rho), w, parity)

    def dominant_conjugate(self, lam: Weight) -> Weight:
        """Dominant element of the linear W-orbit of ``lam``."""
        v = list(lam)
        while True:
            i = next((k for k in range(self.rank) if v[k] < 0), None)
            if i is None:
                return tuple(v)
            k = v[i]
            v = [x - k * y for x, y in zip(v, self.simple_roots[i])]

    def orbit(self, lam: Weight) -> list[Weight]:
        seen = {tuple(lam)}
        queue = deque([tuple(lam)])
        while queue:
            v = queue.popleft()
            for i in range(self.rank):
                if v[i] != 0:
                    r = self.reflect(v, i)
                    if r not in seen:
                        seen.add(r)
                        queue.append(r)
        return sorted(seen)

    def weyl_dimension(self, lam: Weight) -> int:
        num, den = 1, 1
        shifted = wadd(lam, self.rho)
        for d in self.coroot_coeffs:
            num *= sum(a * b for a, b in zip(shifted, d))
            den *= sum(d)
        return num // den

    # identity

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.cartan == other.cartan

    def __hash__(self):
        return hash(self.cartan)

    def __repr__(self):
        return f"RootSystem({self.label})"


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i) for k in range(n))


@lru_cache(maxsize=None)
def _weyl_elements(rs: RootSystem) -> tuple[WeylElement, ...]:
    found = {rs.identity.matrix: rs.identity}
    queue = deque([rs.identity])
    while queue:
        w = queue.popleft()
        for s in rs._simple_mats:
            m = mat_mul(w.matrix, s)
            if m not in found:
                found[m] = rs.weyl_from_matrix(m)
                queue.append(found[m])
    return tuple(sorted(found.values(), key=lambda w: (w.length, rs.reduced_word(w))))


def cartan_matrix(series: str, rank: int) -> Matrix:
    """Cartan matrix of a classical or exceptional type in Bourbaki numbering."""
    n = rank
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    if series in "ABCD":
        for i in range(n - 1):
            m[i][i + 1] = m[i + 1][i] = -1
        if series == "B" and n >= 2:
            m[n - 1][n - 2] = -2
        elif series == "C" and n >= 2:
            m[n - 2][n - 1] = -2
        elif series == "D":
            if n < 4:
                raise StructureError("type D needs rank >= 4")
            m[n - 2][n - 1] = m[n - 1][n - 2] = 0
            m[n - 3][n - 1] = m[n - 1][n - 3] = -1
    elif series == "G" and n == 2:
        m = [[2, -1], [-3, 2]]
    elif series == "F" and n == 4:
        m = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    elif series == "E" and n in (6, 7, 8):
        for i in range(1, n - 1):
            if i != 1:
                m[i][i + 1] = m[i + 1][i] = -1
        m[0][2] = m[2][0] = -1
        m[1][3] = m[3][1] = -1
    else:
        raise StructureError(f"unknown type {series}{rank}")
    return tuple(tuple(r) for r in m)


@lru_cache(maxsize=None)
def root_system(name: str) -> RootSystem:
    """Root system for a type name such as ``"A1"`` or ``"B2"``."""
    name = name.strip().upper()
    try:
        series, rank = name[0], int(name[1:])
    except (IndexError, ValueError):
        raise StructureError(f"cannot parse type {name!r}") from None
    return RootSystem(cartan_matrix(series, rank), label=name)
