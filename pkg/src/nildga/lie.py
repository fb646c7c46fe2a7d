"""Lie algebras by structure constants: differential, series, fingerprint, catalog lookup.

An algebra is stored through its coframe differentials de^1..de^n (each a
degree-2 multivector); brackets are recovered via d a (x,y) = -a([x,y]).
Everything runs exactly over the Gaussian rationals.  The `field` tag only
matters for the fingerprint: real algebras (over Q) carry a signature for the
wedge-square pencil, complexified ones only its rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .exterior import (
    BasisSpace,
    LinearMap,
    Multivector,
    Subspace,
    bits,
    coords,
    from_coords,
    invert,
    masks_of_degree,
    substitute,
    wedge,
)
from .scalars import GaussianRational, ONE, ZERO


class NotNilpotent(ValueError):
    pass


class NoMatch(ValueError):
    pass


class Ambiguous(ValueError):
    def __init__(self, candidates):
        super().__init__(f"fingerprint matches several catalog entries: {candidates}")
        self.candidates = list(candidates)


class LieAlgebra:
    """dim, coframe differentials, and a scalar-field tag ("Q" or "Qi")."""

    def __init__(self, space: BasisSpace, d1, field="Q", malcev=False):
        self.space = space
        self.field = field
        d1 = list(d1)
        if len(d1) != space.dim:
            raise ValueError("need one differential per generator")
        for k, mv in enumerate(d1):
            if mv.space != space:
                raise ValueError("differential lives in the wrong space")
            if any(deg != 2 for deg in mv.degrees()):
                raise ValueError(f"de^{k + 1} must be a two-form")
            if malcev:
                for mask in mv.coeffs:
                    if max(bits(mask)) >= k:
                        raise ValueError(
                            f"de^{k + 1} cites index {max(bits(mask)) + 1} "
                            "(not Malcev-filtered)"
                        )
        self.d1 = tuple(d1)

    @property
    def dim(self):
        return self.space.dim

    @classmethod
    def from_brackets(cls, dim, brackets, field="Q", names=()):
        """brackets: {(i, j) i<j (0-based) -> coefficient list of [e_i, e_j]}."""
        space = BasisSpace(dim, tuple(names) or ())
        d1 = []
        for k in range(dim):
            mv = Multivector.zero(space)
            for (i, j), vec in brackets.items():
                c = vec[k]
                if c:
                    mv = mv + Multivector.mono(space, (i, j), -c)
            d1.append(mv)
        return cls(space, d1, field=field)

    def brackets(self):
        """{(i, j) -> coordinate vector of [e_i, e_j]} for i < j."""
        out = {}
        for i, j in combinations(range(self.dim), 2):
            mask = (1 << i) | (1 << j)
            vec = [-self.d1[k].coeffs.get(mask, ZERO) for k in range(self.dim)]
            if any(vec):
                out[(i, j)] = vec
        return out

    def bracket(self, u, v):
        """[u, v] for coordinate vectors u, v."""
        w = [ZERO] * self.dim
        for (i, j), vec in self._bracket_cache().items():
            c = u[i] * v[j] - u[j] * v[i]
            if c:
                w = [a + c * b for a, b in zip(w, vec)]
        return w

    def _bracket_cache(self):
        if not hasattr(self, "_brk"):
            self._brk = self.brackets()
        return self._brk

    def __eq__(self, other):
        return (
            isinstance(other, LieAlgebra)
            and self.space == other.space
            and self.d1 == other.d1
            and self.field == other.field
        )


# -- Chevalley-Eilenberg differential ----------------------------------------


def ce_d(g: LieAlgebra, mv: Multivector) -> Multivector:
    """Derivation extending de^k by the Leibniz rule."""
    out = Multivector.zero(g.space)
    for mask, c in mv.coeffs.items():
        sign = 1
        for i in bits(mask):
            rest = Multivector(g.space, {mask ^ (1 << i): c * sign})
            out = out + wedge(g.d1[i], rest)
            sign = -sign
    return out


def ce_differential(g: LieAlgebra):
    return lambda mv: ce_d(g, mv)


def d_matrix(g: LieAlgebra, k: int) -> LinearMap:
    """Matrix of d: degree k -> degree k+1 in monomial coordinates."""
    dom = masks_of_degree(g.dim, k)
    cod = masks_of_degree(g.dim, k + 1)
    cols = []
    for m in dom:
        img = ce_d(g, Multivector(g.space, {m: ONE}))
        cols.append(coords(img, cod))
    return LinearMap([[cols[j][i] for j in range(len(dom))] for i in range(len(cod))])


def check_jacobi(g: LieAlgebra) -> bool:
    return all(ce_d(g, dk).is_zero() for dk in g.d1)


# -- series invariants --------------------------------------------------------


def dual_sequence(g: LieAlgebra):
    """dims of V_p = {a : da in Lambda^2 V_{p-1}}, up to and including dim."""
    n = g.dim
    two = masks_of_degree(n, 2)
    v = Subspace(n)
    dims = []
    while True:
        basis1 = [from_coords(g.space, [1 << i for i in range(n)], row) for row in v.rows]
        w2 = Subspace.from_vectors(
            len(two),
            [coords(wedge(a, b), two) for a, b in combinations(basis1, 2)],
        )
        rows = []
        for i in range(n):
            rows.append(w2.quotient_coords(coords(g.d1[i], two)))
        m = LinearMap([[rows[i][r] for i in range(n)] for r in range(len(rows[0]))]) \
            if rows[0] else LinearMap([[ZERO] * n])
        nxt = Subspace.from_vectors(n, m.kernel())
        if nxt.dim == v.dim:
            raise NotNilpotent(f"dual sequence stabilizes at {v.dim} < {n}")
        v = nxt
        dims.append(v.dim)
        if v.dim == n:
            return tuple(dims)


def lower_central(g: LieAlgebra):
    """dims of g = g_0, g_1 = [g_0, g], ..., down to 0."""
    n = g.dim
    basis = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    cur = Subspace.from_vectors(n, basis)
    dims = [cur.dim]
    while dims[-1]:
        nxt = Subspace(n)
        for u in cur.rows:
            for e in basis:
                nxt.add(g.bracket(u, e))
        if nxt.dim == cur.dim:
            raise NotNilpotent(f"lower central series stabilizes at dim {cur.dim}")
        cur = nxt
        dims.append(cur.dim)
    return tuple(dims)


def ascending_series(g: LieAlgebra):
    """dims of the upper central series D^1 c D^2 c ..., up to dim."""
    n = g.dim
    basis = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    center = Subspace(n)
    dims = []
    while True:
        rows = []
        for e in basis:
            cols = [center.quotient_coords(g.bracket(x, e)) for x in basis]
            for r in range(len(cols[0])):
                rows.append([cols[i][r] for i in range(n)])
        nxt = Subspace.from_vectors(
            n, LinearMap(rows).kernel() if rows else basis
        )
        if nxt.dim == center.dim:
            raise NotNilpotent(f"ascending series stabilizes at {center.dim} < {n}")
        center = nxt
        dims.append(center.dim)
        if center.dim == n:
            return tuple(dims)


def derived_series(g: LieAlgebra):
    """dims of g, [g,g], [[g,g],[g,g]], ... until 0 or stabilization."""
    n = g.dim
    cur = Subspace.from_vectors(
        n, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    )
    dims = [cur.dim]
    while dims[-1]:
        nxt = Subspace(n)
        for a, b in combinations(cur.rows, 2):
            nxt.add(g.bracket(a, b))
        dims.append(nxt.dim)
        if nxt.dim == cur.dim:
            break
        cur = nxt
    return tuple(dims)


def betti(g: LieAlgebra, k: int) -> int:
    from math import comb

    if not 0 <= k <= g.dim:
        raise ValueError("degree out of range")
    rank_k = d_matrix(g, k).rank()
    rank_km1 = d_matrix(g, k - 1).rank() if k >= 1 else 0
    return comb(g.dim, k) - rank_k - rank_km1


# -- wedge pencil -------------------------------------------------------------


def _d1_image(g: LieAlgebra):
    two = masks_of_degree(g.dim, 2)
    img = Subspace.from_vectors(len(two), [coords(dk, two) for dk in g.d1])
    return [from_coords(g.space, two, row) for row in img.rows]


def wedge_pencil_rank(g: LieAlgebra) -> int:
    """Rank of Sym^2(d Lambda^1) -> Lambda^4."""
    return _pencil(g)[0]


def _pencil(g: LieAlgebra):
    """(rank of the Sym^2 map, signature tag or None)."""
    four = masks_of_degree(g.dim, 4)
    bs = _d1_image(g)
    prods = {}
    img = Subspace(len(four))
    for i in range(len(bs)):
        for j in range(i, len(bs)):
            v = coords(wedge(bs[i], bs[j]), four)
            prods[(i, j)] = v
            img.add(v)
    rank = img.dim
    if rank > 1:
        return rank, None
    if rank == 0 and not bs:
        return 0, ((0, 0) if g.field == "Q" else (0,))
    # products lie on a line (or vanish): a scalar quadratic form on the image of d
    if rank == 1:
        w = img.rows[0]
        p = img.pivots[0]
        lam = {k: v[p] for k, v in prods.items()}
    else:
        lam = {k: ZERO for k in prods}
    m = len(bs)
    q = [[ZERO] * m for _ in range(m)]
    for (i, j), c in lam.items():
        if i == j:
            q[i][i] = c
        else:
            q[i][j] = c
            q[j][i] = c
    if g.field == "Q":
        return rank, _inertia(q)
    qrank = LinearMap(q).rank() if m else 0
    return rank, (qrank,)


def _inertia(q):
    """Unordered inertia {pos, neg} of a rational symmetric matrix."""
    m = len(q)
    q = [row[:] for row in q]
    pos = neg = 0
    idx = list(range(m))
    while idx:
        k = next((i for i in idx if q[i][i]), None)
        if k is None:
            i, j = next(
                ((i, j) for i in idx for j in idx if q[i][j]), (None, None)
            )
            if i is None:
                break
            # e_i <- e_i + e_j creates a nonzero diagonal entry
            for t in range(m):
                q[i][t] = q[i][t] + q[j][t]
            for t in range(m):
                q[t][i] = q[t][i] + q[t][j]
            k = i
        d = q[k][k]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(k)
        for i in idx:
            if q[i][k]:
                f = q[i][k] / d
                for t in range(m):
                    q[i][t] = q[i][t] - f * q[k][t]
                for t in range(m):
                    q[t][i] = q[t][i] - q[t][k] * f
    return tuple(sorted((pos, neg)))


# -- fingerprint and classification -------------------------------------------


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    dual: tuple
    lcs: tuple
    asc: tuple
    derived: tuple
    b1: int
    b2: int
    b3: int
    dim_d1: int
    pencil: tuple

    def to_json(self):
        return {
            "dim": self.dim,
            "dual_sequence": list(self.dual),
            "lower_central": list(self.lcs),
            "ascending": list(self.asc),
            "derived": list(self.derived),
            "betti": [self.b1, self.b2, self.b3],
            "dim_d_lambda1": self.dim_d1,
            "pencil": [self.pencil[0], list(self.pencil[1]) if self.pencil[1] else None],
        }


def fingerprint(g: LieAlgebra) -> Fingerprint:
    if not check_jacobi(g):
        raise ValueError("d^2 != 0: not a Lie algebra")
    return Fingerprint(
        dim=g.dim,
        dual=dual_sequence(g),
        lcs=lower_central(g),
        asc=ascending_series(g),
        derived=derived_series(g),
        b1=betti(g, 1),
        b2=betti(g, 2),
        b3=betti(g, 3),
        dim_d1=d_matrix(g, 1).rank(),
        pencil=_pencil(g),
    )


_CATALOG_FP = {}


def _catalog_fingerprints(field):
    if field not in _CATALOG_FP:
        from .notation import catalog

        fps = {}
        for name, g in catalog().items():
            h = g if field == "Q" else LieAlgebra(g.space, g.d1, field=field)
            fps[name] = fingerprint(h)
        if field == "Q":
            seen = {}
            for name, fp in fps.items():
                if fp in seen:
                    raise AssertionError(
                        f"catalog fingerprints collide: {seen[fp]} vs {name}"
                    )
                seen[fp] = name
        _CATALOG_FP[field] = fps
    return _CATALOG_FP[field]


def classify(g: LieAlgebra) -> str:
    """Catalog name with the same fingerprint; NoMatch / Ambiguous otherwise."""
    if g.dim != 6:
        raise NoMatch(f"catalog covers dim 6 only, got {g.dim}")
    fp = fingerprint(g)
    names = [n for n, c in _catalog_fingerprints(g.field).items() if c == fp]
    if not names:
        raise NoMatch(f"no catalog algebra has fingerprint {fp}")
    if len(names) > 1:
        raise Ambiguous(names)
    return names[0]


# -- basis change --------------------------------------------------------------


def change_basis(g: LieAlgebra, p) -> LieAlgebra:
    """New coframe f^k = sum_j p[k][j] e^j; returns the algebra in the f basis."""
    inv = invert(p)
    if inv is None:
        raise ValueError("basis change matrix is singular")
    n = g.dim
    images = [
        from_coords(g.space, [1 << k for k in range(n)], [inv[j][k] for k in range(n)])
        for j in range(n)
    ]
    d1 = []
    for k in range(n):
        mv = Multivector.zero(g.space)
        for j in range(n):
            if p[k][j]:
                mv = mv + p[k][j] * substitute(g.d1[j], images, g.space)
        d1.append(mv)
    return LieAlgebra(g.space, d1, field=g.field)
