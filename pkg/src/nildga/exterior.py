"""Exterior algebra over a based space of dimension <= 8, with exact linear algebra.

Monomials are encoded as bitmasks of basis subsets; a Multivector is a sparse
map mask -> GaussianRational with no zero entries.  Signs are inversion counts.
All elimination runs over the Gaussian rationals, so ranks and kernels are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .scalars import GaussianRational, ZERO, ONE, _coerce


@dataclass(frozen=True)
class BasisSpace:
    dim: int
    names: tuple = ()

    def __post_init__(self):
        if not (1 <= self.dim <= 8):
            raise ValueError(f"dimension {self.dim} out of range 1..8")
        names = self.names or tuple(f"e{i + 1}" for i in range(self.dim))
        if len(names) != self.dim or len(set(names)) != self.dim:
            raise ValueError("names must be distinct and match dim")
        object.__setattr__(self, "names", tuple(names))


def bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@lru_cache(maxsize=None)
def wedge_sign(a: int, b: int) -> int:
    """Sign of e_A ^ e_B for disjoint masks: parity of inversions."""
    inv = 0
    for j in bits(b):
        inv += bin(a >> (j + 1)).count("1")
    return -1 if inv & 1 else 1


def masks_of_degree(dim: int, k: int):
    return [sum(1 << i for i in c) for c in combinations(range(dim), k)]


class Multivector:
    __slots__ = ("space", "coeffs")

    def __init__(self, space: BasisSpace, coeffs=None):
        self.space = space
        cleaned = {}
        for mask, c in (coeffs or {}).items():
            c = _as_scalar(c)
            if c:
                cleaned[mask] = c
        self.coeffs = cleaned

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def mono(cls, space, indices, coeff=1):
        """Basis monomial from 0-based indices, e.g. (0,1) -> e12."""
        mask = 0
        sign = 1
        seq = list(indices)
        for i in seq:
            if not 0 <= i < space.dim:
                raise ValueError(f"index {i} outside space of dim {space.dim}")
        # sort with sign
        arr = seq[:]
        for a in range(len(arr)):
            for b in range(len(arr) - 1 - a):
                if arr[b] > arr[b + 1]:
                    arr[b], arr[b + 1] = arr[b + 1], arr[b]
                    sign = -sign
                elif arr[b] == arr[b + 1]:
                    return cls.zero(space)
        for i in arr:
            mask |= 1 << i
        return cls(space, {mask: _as_scalar(coeff) * sign})

    @classmethod
    def scalar(cls, space, c):
        return cls(space, {0: _as_scalar(c)})

    # -- structure -------------------------------------------------------

    def degrees(self):
        return sorted({bin(m).count("1") for m in self.coeffs})

    def degree(self):
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"mixed degrees {degs}")
        return degs[0] if degs else 0

    def is_zero(self):
        return not self.coeffs

    def homogeneous_part(self, k):
        return Multivector(
            self.space,
            {m: c for m, c in self.coeffs.items() if bin(m).count("1") == k},
        )

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Multivector)
            and self.space == other.space
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.space, frozenset(self.coeffs.items())))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, ZERO) + c
        return Multivector(self.space, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Multivector(self.space, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, c):
        c = _as_scalar(c)
        return Multivector(self.space, {m: v * c for m, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def _check(self, other):
        if self.space != other.space:
            raise ValueError("space mismatch")

    # -- text --------------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for mask in sorted(self.coeffs, key=lambda m: (bin(m).count("1"), m)):
            c = self.coeffs[mask]
            idx = list(bits(mask))
            if bin(mask).count("1") == 2 and self.space.dim <= 9:
                body = "".join(str(i + 1) for i in idx)
            elif mask == 0:
                body = "1"
            else:
                body = "^".join(self.space.names[i] for i in idx)
            if c == ONE:
                term = body
            elif c == -ONE:
                term = f"-{body}"
            else:
                cs = str(c)
                if ("+" in cs[1:]) or ("-" in cs[1:]):
                    cs = f"({cs})"
                term = f"{cs}*{body}" if mask else cs
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts)

    __repr__ = __str__


def _as_scalar(c):
    z = _coerce(c)
    if z is None:
        raise TypeError(f"cannot use {c!r} as a scalar")
    return z


def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out = {}
    for ma, ca in a.coeffs.items():
        for mb, cb in b.coeffs.items():
            if ma & mb:
                continue
            m = ma | mb
            term = ca * cb * wedge_sign(ma, mb)
            acc = out.get(m)
            out[m] = term if acc is None else acc + term
    return Multivector(a.space, out)


def wedge_all(factors):
    factors = list(factors)
    if not factors:
        raise ValueError("empty wedge")
    out = factors[0]
    for f in factors[1:]:
        out = wedge(out, f)
    return out


def contract(x: int, a: Multivector) -> Multivector:
    """Interior product by the x-th dual basis vector (0-based)."""
    out = {}
    bit = 1 << x
    for mask, c in a.coeffs.items():
        if not mask & bit:
            continue
        below = bin(mask & (bit - 1)).count("1")
        sign = -1 if below & 1 else 1
        out[mask ^ bit] = out.get(mask ^ bit, ZERO) + c * sign
    return Multivector(a.space, out)


# -- coordinates -----------------------------------------------------------


def coords(mv: Multivector, masks) -> list:
    return [mv.coeffs.get(m, ZERO) for m in masks]


def from_coords(space, masks, vec) -> Multivector:
    return Multivector(space, dict(zip(masks, map(_as_scalar, vec))))


# -- exact linear algebra ----------------------------------------------------


@dataclass
class LinearMap:
    """Matrix over the Gaussian rationals; rows index the codomain."""

    matrix: list = field(default_factory=list)

    def __post_init__(self):
        self.matrix = [[_as_scalar(c) for c in row] for row in self.matrix]

    @property
    def nrows(self):
        return len(self.matrix)

    @property
    def ncols(self):
        return len(self.matrix[0]) if self.matrix else 0

    def rank(self) -> int:
        rows, pivots = rref(self.matrix)
        return len(pivots)

    def kernel(self) -> list:
        """Basis of the null space, as coordinate lists."""
        n = self.ncols
        rows, pivots = rref(self.matrix)
        free = [j for j in range(n) if j not in pivots]
        basis = []
        for f in free:
            v = [ZERO] * n
            v[f] = ONE
            for i, p in enumerate(pivots):
                v[p] = -rows[i][f]
            basis.append(v)
        return basis

    def apply(self, vec) -> list:
        vec = [_as_scalar(c) for c in vec]
        return [
            sum((row[j] * vec[j] for j in range(len(vec))), ZERO)
            for row in self.matrix
        ]

    def solve(self, target):
        """One exact solution of M v = target, or None."""
        target = [_as_scalar(c) for c in target]
        aug = [row[:] + [target[i]] for i, row in enumerate(self.matrix)]
        rows, pivots = rref(aug)
        n = self.ncols
        for i, row in enumerate(rows):
            if all(not row[j] for j in range(n)) and row[n]:
                return None
        v = [ZERO] * n
        for i, p in enumerate(pivots):
            if p < n:
                v[p] = rows[i][n]
        return v


def rref(matrix):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    rows = [row[:] for row in matrix]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a
                           for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def det(matrix) -> GaussianRational:
    rows = [[_as_scalar(c) for c in row] for row in matrix]
    n = len(rows)
    out = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            out = -out
        out = out * rows[c][c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return out


def invert(matrix):
    """Exact inverse of a square matrix, or None if singular."""
    n = len(matrix)
    aug = [
        [_as_scalar(c) for c in row] + [ONE if i == j else ZERO for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in rows[:n]]


def mat_mul(a, b):
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


class Subspace:
    """Span of coordinate vectors, kept in reduced echelon form."""

    def __init__(self, ambient_dim: int):
        self.ambient = ambient_dim
        self.rows = []
        self.pivots = []

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        s = cls(ambient_dim)
        for v in vectors:
            s.add(v)
        return s

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        v = [_as_scalar(c) for c in v]
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b if b else a for a, b in zip(v, row)]
        return v

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        """Insert a vector; returns True if it enlarged the span."""
        v = self.reduce(v)
        p = next((i for i, c in enumerate(v) if c), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [c * inv if c else c for c in v]
        self.rows = [
            [a - row[p] * b if b and row[p] else a for a, b in zip(row, v)]
            for row in self.rows
        ]
        k = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(k, v)
        self.pivots.insert(k, p)
        return True

    def quotient_coords(self, v):
        """Coordinates of v mod this subspace (entries at non-pivot positions)."""
        red = self.reduce(v)
        return [red[i] for i in range(self.ambient) if i not in self.pivots]


def substitute(mv: Multivector, images, target_space: BasisSpace) -> Multivector:
    """Algebra morphism sending generator i to images[i], applied to mv."""
    out = Multivector.zero(target_space)
    for mask, c in mv.coeffs.items():
        term = Multivector.scalar(target_space, c)
        for i in bits(mask):
            term = wedge(term, images[i])
            if term.is_zero():
                break
        out = out + term
    return out
