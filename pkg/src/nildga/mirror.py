"""Symplectic structures and the self-mirror question.

A closed non-degenerate 2-form turns the dual of a Lie algebra into a
differential Gerstenhaber algebra through contraction; this module builds
those algebras, searches for isomorphisms onto the complex-side algebra of
the same underlying Lie algebra, and carries the symbolic elimination that
rules such an isomorphism out on the one parametrized family where the
answer is negative.  Everything is exact; the only randomness is in picking
sample points, never in deciding a verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cplx import (
    CSPACE,
    ComplexStructureEq,
    complex_algebra,
    conj_form,
    eq_c,
    realify,
)
from .dga import (
    DGAlgebra,
    F1_NAMES,
    build_f1,
    check_dga_morphism,
    classify_f1,
    dga_from_O,
)
from .exterior import (
    LinearMap,
    Multivector,
    Subspace,
    coords,
    from_coords,
    invert,
    masks_of_degree,
    wedge,
    wedge_sign,
)
from .lie import LieAlgebra, NotNilpotent, ce_d, d_matrix, fingerprint
from .notation import catalog_lookup, parse
from .scalars import GaussianRational, I, ONE, ZERO, conj, format_scalar, gq, pythagorean_unit
from .tables import GF1_CHECKMARKS, TABF1_ROWS, TABLE1_ROWS, sample_table1_row


class Degenerate(ValueError):
    pass


class EmptyFamily(ValueError):
    pass


class ParamsDegenerate(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


# -- polynomials over the Gaussian rationals ----------------------------------
#
# Monomials are sorted tuples of variable indices (with repetition), so the
# ring is commutative and substitution is plain re-multiplication.  Degrees
# stay tiny here (bracket identities are quadratic, determinants degree 6),
# which keeps the dict representation comfortably fast.


def _as_coeff(c):
    if isinstance(c, GaussianRational):
        return c
    if isinstance(c, tuple):
        return gq(*c)
    return gq(c)


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = coeffs if coeffs is not None else {}

    @classmethod
    def const(cls, c):
        c = _as_coeff(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, i: int):
        return cls({(i,): ONE})

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return Poly(out)

    def __neg__(self):
        return Poly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = _as_coeff(other)
            if not c:
                return Poly()
            return Poly({k: v * c for k, v in self.coeffs.items()})
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = tuple(sorted(k1 + k2))
                c = c1 * c2
                s = out.get(k)
                s = c if s is None else s + c
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return Poly(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(k == () for k in self.coeffs)

    def constant_value(self) -> GaussianRational:
        return self.coeffs.get((), ZERO)

    def variables(self):
        out = set()
        for k in self.coeffs:
            out.update(k)
        return out

    def degree(self) -> int:
        return max((len(k) for k in self.coeffs), default=0)

    def subs(self, env: dict) -> "Poly":
        """Replace variables by polynomials (missing ones stay themselves)."""
        if not env or not any(v in env for k in self.coeffs for v in k):
            return self
        out = Poly()
        for k, c in self.coeffs.items():
            term = Poly.const(c)
            for v in k:
                term = term * env.get(v, Poly.var(v))
            out = out + term
        return out

    def eval(self, values: dict) -> GaussianRational:
        total = ZERO
        for k, c in self.coeffs.items():
            for v in k:
                c = c * values[v]
            total = total + c
        return total

    def solve_linear(self, v: int):
        """Express v from `self == 0` when its coefficient is a constant.

        Returns the solution polynomial, or None when v is absent, appears
        nonlinearly, or carries a non-constant coefficient.
        """
        a = None
        b = {}
        for k, c in self.coeffs.items():
            cnt = k.count(v)
            if cnt == 0:
                b[k] = c
            elif cnt == 1 and k == (v,):
                a = c
            else:
                return None
        if a is None or not a:
            return None
        inv = -a.inverse()
        return Poly({k: c * inv for k, c in b.items()})

    def to_str(self, name=None) -> str:
        if not self.coeffs:
            return "0"
        name = name or (lambda i: f"x{i}")
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            mono = "*".join(name(i) for i in k)
            cs = format_scalar(c)
            if any(ch in cs for ch in "+-") and len(cs) > 2:
                cs = f"({cs})"
            parts.append(cs if not mono else (mono if cs == "1" else
                                              f"-{mono}" if cs == "-1" else
                                              f"{cs}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.to_str()})"


def _sym_wedge11(u, v, n):
    """Wedge of two 1-forms with Poly coordinates; dict mask -> Poly."""
    out = {}
    for a in range(n):
        pa = u[a]
        if pa.is_zero():
            continue
        for b in range(n):
            if a == b:
                continue
            pb = v[b]
            if pb.is_zero():
                continue
            mask = (1 << a) | (1 << b)
            term = pa * pb
            if wedge_sign(1 << a, 1 << b) < 0:
                term = -term
            s = out.get(mask)
            out[mask] = term if s is None else s + term
    return {m: p for m, p in out.items() if not p.is_zero()}


def _poly_det(matrix):
    """Determinant of a square Poly matrix by column-mask recursion."""
    n = len(matrix)
    memo = {}

    def minor(r, colmask):
        if r == n:
            return Poly.const(1)
        key = colmask
        if key in memo:
            return memo[key]
        total = Poly()
        sign = 1
        for c in range(n):
            bit = 1 << c
            if colmask & bit:
                continue
            e = matrix[r][c]
            if not e.is_zero():
                term = e * minor(r + 1, colmask | bit)
                total = total + (term if sign > 0 else -term)
            sign = -sign
        memo[key] = total
        return total

    return minor(0, 0)


# -- closed 2-forms and non-degeneracy -----------------------------------------


def _resolve(g):
    return catalog_lookup(g) if isinstance(g, str) else g


def closed_two_forms(g) -> list:
    """Basis of the closed 2-forms, as Multivectors."""
    g = _resolve(g)
    two = masks_of_degree(g.dim, 2)
    ker = d_matrix(g, 2).kernel()
    return [from_coords(g.space, two, v) for v in ker]


def _cube_poly(forms):
    """Top-degree coefficient of (sum t_i forms_i)^3 as a Poly in the t_i."""
    if not forms:
        return Poly()
    space = forms[0].space
    n = space.dim
    two = masks_of_degree(n, 2)
    sym = {}
    for i, f in enumerate(forms):
        for m, c in f.coeffs.items():
            sym[m] = sym.get(m, Poly()) + Poly.var(i) * c
    # square
    sq = {}
    items = list(sym.items())
    for ma, pa in items:
        for mb, pb in items:
            if ma & mb:
                continue
            m = ma | mb
            term = pa * pb
            if wedge_sign(ma, mb) < 0:
                term = -term
            sq[m] = sq.get(m, Poly()) + term
    top = (1 << n) - 1
    out = Poly()
    for ma, pa in sq.items():
        mb = top ^ ma
        pb = sym.get(mb)
        if pb is None:
            continue
        term = pa * pb
        if wedge_sign(ma, mb) < 0:
            term = -term
        out = out + term
    return out


def symplectic_exists(g) -> bool:
    """Whether some closed 2-form has nonzero cube, decided symbolically."""
    return not _cube_poly(closed_two_forms(g)).is_zero()


def find_symplectic(g, seed: int = 0) -> "SymplecticForm":
    """A closed 2-form with nonzero cube and small integer coefficients.

    Raises Degenerate when no closed form is non-degenerate.
    """
    g = _resolve(g)
    basis = closed_two_forms(g)
    cubic = _cube_poly(basis)
    if cubic.is_zero():
        raise Degenerate("every closed 2-form on this algebra is degenerate")
    m = len(basis)
    rng = random.Random(seed)

    def attempt(vals):
        if cubic.eval({i: gq(v) for i, v in enumerate(vals)}):
            w = Multivector.zero(g.space)
            for c, f in zip(vals, basis):
                if c:
                    w = w + f * gq(c)
            return SymplecticForm(g, w)
        return None

    for i in range(m):
        got = attempt([1 if j == i else 0 for j in range(m)])
        if got:
            return got
    got = attempt([1] * m)
    if got:
        return got
    for bound in (1, 2, 3):
        for _ in range(400):
            got = attempt([rng.randint(-bound, bound) for _ in range(m)])
            if got:
                return got
    raise RuntimeError("non-degenerate form exists but sampling missed it")


@dataclass(frozen=True)
class SymplecticForm:
    """A closed, non-degenerate, real 2-form on a Lie algebra."""

    algebra: LieAlgebra
    omega: Multivector

    def check(self):
        w = self.omega
        if w.degrees() not in ([2], []):
            raise Degenerate("not homogeneous of degree 2")
        if any(c.im for c in w.coeffs.values()):
            raise Degenerate("coefficients are not real")
        if not ce_d(self.algebra, w).is_zero():
            raise Degenerate("form is not closed")
        if wedge(wedge(w, w), w).is_zero():
            raise Degenerate("form is degenerate")

    def to_json(self):
        return {"omega": str(self.omega)}


# -- the contraction algebra ---------------------------------------------------


def _contraction_matrix(w: Multivector):
    from .exterior import contract

    n = w.space.dim
    one = [1 << i for i in range(n)]
    cols = [coords(contract(j, w), one) for j in range(n)]
    return [[cols[j][m] for j in range(n)] for m in range(n)]


def dga_from_symplectic(h, omega) -> DGAlgebra:
    """Differential Gerstenhaber algebra on h* from contraction with omega.

    omega may be a SymplecticForm or a bare Multivector; either way the
    closedness and non-degeneracy invariants are re-checked exactly and a
    failure raises Degenerate.
    """
    h = _resolve(h)
    if isinstance(omega, SymplecticForm):
        sf = SymplecticForm(h, omega.omega)
    else:
        sf = SymplecticForm(h, omega)
    sf.check()
    return dga_from_O(h, _contraction_matrix(sf.omega))


def _complex_contraction_dga(eq: ComplexStructureEq, w: Multivector) -> DGAlgebra:
    """Contraction algebra of a (1,1)-form written on the complex coframe."""
    gc = complex_algebra(eq)
    if not ce_d(gc, w).is_zero():
        raise Degenerate("form is not closed")
    if wedge(wedge(w, w), w).is_zero():
        raise Degenerate("form is degenerate")
    if conj_form(w) != w:
        raise Degenerate("form is not real")
    return dga_from_O(gc, _contraction_matrix(w))


# -- compatible (1,1)-forms ----------------------------------------------------

# hermitian-antisymmetric generators of the real (1,1)-forms on the w-coframe:
# i w_k wb_k, (w_k wb_j - w_j wb_k), i (w_k wb_j + w_j wb_k)
_ANTIHERMITIAN = []
for _k in range(3):
    _ANTIHERMITIAN.append(((_k, _k + 3, I),))
for _k, _j in ((0, 1), (0, 2), (1, 2)):
    _ANTIHERMITIAN.append(((_k, _j + 3, ONE), (_j, _k + 3, -ONE)))
    _ANTIHERMITIAN.append(((_k, _j + 3, I), (_j, _k + 3, I)))


def _antihermitian_basis():
    out = []
    for spec in _ANTIHERMITIAN:
        mv = Multivector.zero(CSPACE)
        for a, b, c in spec:
            mv = mv + Multivector.mono(CSPACE, (a, b), c)
        out.append(mv)
    return out


@dataclass(frozen=True)
class PKFamily:
    """All real closed (1,1)-forms of one complex structure equation.

    forms is a basis whose real spans exhaust the family; cubic is the
    top coefficient of a generic member's cube, a polynomial in the real
    coordinates, so non-degeneracy questions are decided symbolically.
    """

    eq: ComplexStructureEq
    forms: tuple
    cubic: Poly

    @property
    def dim(self) -> int:
        return len(self.forms)

    def specialize(self, values) -> Multivector:
        if len(values) != len(self.forms):
            raise ValueError("wrong number of parameters")
        w = Multivector.zero(CSPACE)
        for v, f in zip(values, self.forms):
            fv = Fraction(v)
            if fv:
                w = w + f * gq(fv)
        return w

    def has_nondegenerate(self) -> bool:
        return not self.cubic.is_zero()

    def nondegenerate_member(self, seed: int = 0) -> Multivector:
        if not self.has_nondegenerate():
            raise Degenerate("every member of the family is degenerate")
        rng = random.Random(seed)
        m = self.dim
        for bound in (1, 2, 3):
            for _ in range(500):
                vals = [Fraction(rng.randint(-bound, bound)) for _ in range(m)]
                if self.cubic.eval({i: gq(v) for i, v in enumerate(vals)}):
                    return self.specialize(vals)
        raise RuntimeError("non-degenerate member exists but sampling missed it")

    def to_json(self):
        return {
            "dim": self.dim,
            "forms": [str(f) for f in self.forms],
            "cubic": self.cubic.to_str(lambda i: f"t{i + 1}"),
            "has_nondegenerate": self.has_nondegenerate(),
        }


def compatible_11_family(eq: ComplexStructureEq) -> PKFamily:
    """Solve d(omega) = 0 over the real (1,1)-forms of the coframe.

    Raises EmptyFamily when only the zero form is closed.
    """
    gc = complex_algebra(eq)
    gens = _antihermitian_basis()
    three = masks_of_degree(6, 3)
    cols = [coords(ce_d(gc, f), three) for f in gens]
    rows = []
    for m in range(len(three)):
        rows.append([gq(cols[r][m].re) for r in range(len(gens))])
        rows.append([gq(cols[r][m].im) for r in range(len(gens))])
    ker = LinearMap(rows).kernel()
    if not ker:
        raise EmptyFamily("no nonzero closed (1,1)-form")
    forms = []
    for v in ker:
        w = Multivector.zero(CSPACE)
        for c, f in zip(v, gens):
            if c:
                w = w + f * c
        forms.append(w)
    return PKFamily(eq, tuple(forms), _cube_poly(forms))


# -- chain subspaces of a degree-one algebra ------------------------------------


def _full_subspace(n):
    rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    return Subspace.from_vectors(n, rows)


def _intersect(s1: Subspace, s2: Subspace) -> Subspace:
    n = s1.ambient
    if s1.dim == 0 or s2.dim == 0:
        return Subspace(n)
    cols = [s2.reduce(r) for r in s1.rows]
    m = LinearMap([[cols[a][i] for a in range(len(cols))] for i in range(n)])
    out = []
    for x in m.kernel():
        v = [ZERO] * n
        for a, r in enumerate(s1.rows):
            if x[a]:
                v = [vi + x[a] * ri for vi, ri in zip(v, r)]
        out.append(v)
    return Subspace.from_vectors(n, out)


def _d_chain(dga: DGAlgebra) -> list:
    """Increasing chain V_1 < V_2 < ... : dv lands in the square of the
    previous level.  Stops when stable."""
    n = dga.space.dim
    two = masks_of_degree(n, 2)
    levels = []
    prev = Subspace(n)
    one = [1 << i for i in range(n)]
    for _ in range(n + 1):
        basis1 = [from_coords(dga.space, one, r) for r in prev.rows]
        w2 = Subspace.from_vectors(
            len(two),
            [coords(wedge(a, b), two) for a, b in combinations(basis1, 2)],
        )
        cols = [w2.quotient_coords(coords(dga.d1[i], two)) for i in range(n)]
        width = len(cols[0])
        m = LinearMap([[cols[i][r] for i in range(n)] for r in range(width)]) \
            if width else LinearMap([[ZERO] * n])
        cur = Subspace.from_vectors(n, m.kernel())
        if cur.dim == prev.dim:
            break
        levels.append(cur)
        prev = cur
        if cur.dim == n:
            break
    return levels


def _bracket_coords(dga: DGAlgebra):
    n = dga.space.dim
    one = [1 << i for i in range(n)]
    return [[coords(dga.bracket1(i, j), one) for j in range(n)] for i in range(n)]


def _lcs_chain(dga: DGAlgebra) -> list:
    """Decreasing chain of iterated bracket spans, from the second level on."""
    n = dga.space.dim
    bc = _bracket_coords(dga)
    levels = []
    cur = _full_subspace(n)
    for _ in range(n + 1):
        vecs = []
        for u in cur.rows:
            for j in range(n):
                v = [ZERO] * n
                for i in range(n):
                    if u[i]:
                        v = [a + u[i] * b for a, b in zip(v, bc[i][j])]
                if any(v):
                    vecs.append(v)
        nxt = Subspace.from_vectors(n, vecs)
        levels.append(nxt)
        if nxt.dim == 0 or nxt.dim == cur.dim:
            break
        cur = nxt
    return levels


def _center_chain(dga: DGAlgebra) -> list:
    """Increasing chain of iterated centers of the degree-one bracket."""
    n = dga.space.dim
    bc = _bracket_coords(dga)
    levels = []
    prev = Subspace(n)
    for _ in range(n + 1):
        rows = []
        for j in range(n):
            col = []
            for i in range(n):
                col.extend(prev.quotient_coords(bc[j][i]))
            rows.append(col)
        width = len(rows[0])
        m = LinearMap([[rows[j][r] for j in range(n)] for r in range(width)]) \
            if width else LinearMap([[ZERO] * n])
        cur = Subspace.from_vectors(n, m.kernel())
        if cur.dim == prev.dim:
            break
        levels.append(cur)
        prev = cur
        if cur.dim == n:
            break
    return levels


def _chain_triplet(dga: DGAlgebra):
    return (_d_chain(dga), _lcs_chain(dga), _center_chain(dga))


def _generator_constraints(src: DGAlgebra, dst: DGAlgebra):
    """Per-generator target subspaces for any isomorphism src -> dst.

    Returns (list of Subspace, None) or (None, reason) when the chain
    dimensions already rule an isomorphism out.
    """
    n = src.space.dim
    cs = _chain_triplet(src)
    cd = _chain_triplet(dst)
    for name, a, b in zip(("d-chain", "bracket chain", "center chain"), cs, cd):
        if [s.dim for s in a] != [s.dim for s in b]:
            return None, (f"{name} dimensions differ: "
                          f"{[s.dim for s in a]} vs {[s.dim for s in b]}")
    out = []
    for i in range(n):
        unit = [ONE if t == i else ZERO for t in range(n)]
        target = _full_subspace(n)
        for a, b in zip(cs, cd):
            for sl, dl in zip(a, b):
                if sl.contains(unit):
                    target = _intersect(target, dl)
        if target.dim == 0:
            return None, f"generator {src.space.names[i]} is forced to zero"
        out.append(target)
    return out, None


# -- morphism constraints as polynomials ----------------------------------------


def _morphism_system(src: DGAlgebra, dst: DGAlgebra, bases):
    """Polynomial system for a degree-one map respecting d and brackets.

    bases[k] lists Multivectors in dst spanning the allowed image space of
    source generator k; the unknowns are the coordinates in those bases.
    Returns (constraints, images, names) where images[k] is the symbolic
    coordinate vector of the k-th image and names renders variables.
    """
    n = src.space.dim
    one = [1 << i for i in range(n)]
    two = masks_of_degree(n, 2)
    img = []
    names = []
    vid = 0
    for k, basis in enumerate(bases):
        vec = [Poly() for _ in range(n)]
        for r, bmv in enumerate(basis):
            cv = coords(bmv, one)
            for t in range(n):
                if cv[t]:
                    vec[t] = vec[t] + Poly.var(vid) * cv[t]
            names.append(f"{src.space.names[k]}.{r + 1}")
            vid += 1
        img.append(vec)

    dd = [coords(dst.d1[t], two) for t in range(n)]
    bc = _bracket_coords(dst)
    cons = []
    for k in range(n):
        lin = {}
        for t in range(n):
            if img[k][t].is_zero():
                continue
            for m_i, m in enumerate(two):
                if dd[t][m_i]:
                    lin[m] = lin.get(m, Poly()) + img[k][t] * dd[t][m_i]
        quad = {}
        for mask, c in src.d1[k].coeffs.items():
            i, j = [b for b in range(n) if mask & (1 << b)]
            w = _sym_wedge11(img[i], img[j], n)
            for m, p in w.items():
                quad[m] = quad.get(m, Poly()) + p * c
        for m in two:
            p = quad.get(m, Poly()) - lin.get(m, Poly())
            if not p.is_zero():
                cons.append(p)
    for i, j in combinations(range(n), 2):
        left = [Poly() for _ in range(n)]
        for a in range(n):
            if img[i][a].is_zero():
                continue
            for b in range(n):
                if img[j][b].is_zero():
                    continue
                cv = bc[a][b]
                pab = img[i][a] * img[j][b]
                for t in range(n):
                    if cv[t]:
                        left[t] = left[t] + pab * cv[t]
        right = [Poly() for _ in range(n)]
        w = src.bracket1(i, j)
        for mask, c in w.coeffs.items():
            k = mask.bit_length() - 1
            for t in range(n):
                if not img[k][t].is_zero():
                    right[t] = right[t] + img[k][t] * c
        for t in range(n):
            p = left[t] - right[t]
            if not p.is_zero():
                cons.append(p)
    return cons, img, names


def _eliminate(cons, env):
    """Exhaust substitutions that solve one variable with constant
    coefficient.  Returns (remaining constraints, env, contradiction)."""
    cons = list(cons)
    while True:
        nxt = []
        contradiction = None
        for c in cons:
            c = c.subs(env)
            if c.is_zero():
                continue
            if c.is_constant():
                contradiction = c
                break
            nxt.append(c)
        if contradiction is not None:
            return [], env, contradiction
        cons = nxt
        best = None
        for c in cons:
            for v in sorted(c.variables()):
                sol = c.solve_linear(v)
                if sol is not None:
                    best = (v, sol)
                    break
            if best:
                break
        if best is None:
            return cons, env, None
        v, sol = best
        env = {k: p.subs({v: sol}) for k, p in env.items()}
        env[v] = sol


# -- isomorphism search ----------------------------------------------------------


@dataclass
class IsoSearchResult:
    found: bool
    images: tuple | None
    matrix: tuple | None
    proven_impossible: bool
    residuals: tuple
    note: str

    def to_json(self):
        out = {
            "found": self.found,
            "proven_impossible": self.proven_impossible,
            "note": self.note,
        }
        if self.found:
            out["images"] = [str(mv) for mv in self.images]
        else:
            out["residuals"] = list(self.residuals)
        return out


_CAND = (
    gq(1), gq(-1), I, ZERO, gq(2), -I, gq(Fraction(1, 2)), gq(-2),
    gq(Fraction(-1, 2)),
)


def _matrix_polys(bases, env, n):
    one = [1 << i for i in range(n)]
    cols = []
    vid = 0
    for basis in bases:
        col = [Poly() for _ in range(n)]
        for bmv in basis:
            cv = coords(bmv, one)
            for t in range(n):
                if cv[t]:
                    col[t] = col[t] + Poly.var(vid) * cv[t]
            vid += 1
        cols.append([p.subs(env) for p in col])
    return [[cols[k][t] for k in range(n)] for t in range(n)]


def _finish_solution(src, dst, bases, env, rng):
    """Assign leftover free variables so the map is invertible; verify."""
    n = src.space.dim
    detp = _poly_det(_matrix_polys(bases, env, n))
    if detp.is_zero():
        return None
    total = sum(len(b) for b in bases)
    assign = {v: ZERO for v in range(total) if v not in env}
    detvars = sorted(detp.variables())
    if not detp.eval(assign):
        pool = list(_CAND) + [gq(rng.randint(-3, 3)) for _ in range(6)]
        for _ in range(800):
            for v in detvars:
                assign[v] = rng.choice(pool)
            if detp.eval(assign):
                break
        else:
            return None
    values = {v: env[v].eval(assign) if v in env else assign[v]
              for v in range(total)}
    one = [1 << i for i in range(n)]
    images = []
    vid = 0
    for basis in bases:
        vec = [ZERO] * n
        for bmv in basis:
            c = values[vid]
            if c:
                cv = coords(bmv, one)
                vec = [a + c * b for a, b in zip(vec, cv)]
            vid += 1
        images.append(from_coords(dst.space, one, vec))
    matrix = [[coords(images[k], one)[t] for k in range(n)] for t in range(n)]
    if invert(matrix) is None:
        return None
    if not check_dga_morphism(src, dst, images):
        return None
    return tuple(images), tuple(tuple(r) for r in matrix)


def _dfs(src, dst, bases, cons, env, rng, budget):
    cons, env, contradiction = _eliminate(cons, env)
    if contradiction is not None:
        return None, budget
    if not cons:
        got = _finish_solution(src, dst, bases, env, rng)
        return got, budget
    if budget <= 0:
        return None, 0
    smallest = min(cons, key=lambda c: (len(c.coeffs), c.degree()))
    counts = {}
    for c in cons:
        for v in c.variables():
            counts[v] = counts.get(v, 0) + 1
    v = max(smallest.variables(), key=lambda x: counts[x])
    pool = list(_CAND) + [gq(Fraction(rng.randint(-4, 4),
                                      rng.choice((1, 2, 3)))) for _ in range(2)]
    for val in pool:
        budget -= 1
        if budget <= 0:
            return None, 0
        vsub = {v: Poly.const(val)}
        e2 = {k: q.subs(vsub) for k, q in env.items()}
        e2[v] = Poly.const(val)
        got, budget = _dfs(src, dst, bases, cons, e2, rng, budget)
        if got:
            return got, budget
    return None, budget


def mirror_iso_search(dgaA: DGAlgebra, dgaB: DGAlgebra, seed: int = 0,
                      budget: int = 30000) -> IsoSearchResult:
    """Search for a DGA isomorphism respecting the canonical chains.

    A found result is verified exactly before being returned.  NotFound
    comes in two strengths: proven_impossible when an invariant (chain
    dimensions, degree-one fingerprint) separates the algebras or the
    constraints are contradictory, otherwise a budget-limited failure with
    the residual constraint set attached.
    """
    n = dgaA.space.dim
    rng = random.Random(seed)
    try:
        fa = fingerprint(dgaA.degree1_algebra())
        fb = fingerprint(dgaB.degree1_algebra())
        if fa != fb:
            return IsoSearchResult(
                False, None, None, True, (),
                "degree-one fingerprints differ")
    except NotNilpotent:
        pass
    # cheap identity attempt
    ident = [Multivector.mono(dgaB.space, (k,)) for k in range(n)]
    if check_dga_morphism(dgaA, dgaB, ident):
        mat = tuple(tuple(ONE if i == j else ZERO for j in range(n))
                    for i in range(n))
        return IsoSearchResult(True, tuple(ident), mat, False, (),
                               "identity map")
    bases_sub, reason = _generator_constraints(dgaA, dgaB)
    if bases_sub is None:
        return IsoSearchResult(False, None, None, True, (), reason)
    one = [1 << i for i in range(n)]
    bases = [
        [from_coords(dgaB.space, one, r) for r in sub.rows]
        for sub in bases_sub
    ]
    cons, _img, names = _morphism_system(dgaA, dgaB, bases)
    namefn = lambda i: names[i]
    cons0, env0, contradiction = _eliminate(cons, {})
    if contradiction is not None:
        return IsoSearchResult(
            False, None, None, True,
            (contradiction.to_str(namefn),),
            "constraints are contradictory")
    got, left = _dfs(dgaA, dgaB, bases, cons0, env0, rng, budget)
    if got:
        images, matrix = got
        return IsoSearchResult(True, images, matrix, False, (), "search")
    note = "search budget exhausted" if left <= 0 else \
        "no invertible solution in the candidate grid"
    return IsoSearchResult(
        False, None, None, False,
        tuple(c.to_str(namefn) for c in cons0[:12]),
        note)


# -- the verified mirror cases ---------------------------------------------------

_H6_EQ = eq_c(rho=gq(1), B=gq(1))
_H8_EQ = eq_c(A=gq(1))
_H9_EQ = eq_c(epsilon=gq(Fraction(-1, 2)), B=gq(Fraction(1, 2)),
              C=gq(Fraction(1, 2)))
_H10_EQ = eq_c(epsilon=gq(1), rho=gq(1), C=gq(1))

# coframes realizing the four equations on their real algebras
H6_COFRAME = "(0,0,0,0,12,13)"
H8_COFRAME = "(0,0,0,0,0,12)"
H9_ALGEBRA = "(0,0,24+51,0,12,0)"


def _e(space, *pairs):
    mv = Multivector.zero(space)
    for idx, c in pairs:
        mv = mv + Multivector.mono(space, tuple(i - 1 for i in idx), _as_coeff(c))
    return mv


def h6_symplectic(a=0, b=1, c=0, k=0, l=1) -> SymplecticForm:
    """The five-parameter symplectic family on (0,0,0,0,12,13)."""
    a, b, c, k, l = (Fraction(x) for x in (a, b, c, k, l))
    if b == 0 or l == 0:
        raise ParamsDegenerate("need b != 0 and l != 0")
    h = catalog_lookup("h6")
    w = _e(h.space,
           ((2, 3), a), ((1, 4), b), ((1, 2), c), ((3, 4), -c),
           ((1, 3), -k), ((2, 4), -k), ((2, 5), l), ((3, 6), l))
    return SymplecticForm(h, w)


def h8_symplectic(a=0, b=1, x=0, y=0, u=0, v=1) -> SymplecticForm:
    """The six-parameter symplectic family on (0,0,0,0,0,12)."""
    a, b, x, y, u, v = (Fraction(t) for t in (a, b, x, y, u, v))
    if b == 0 or (u == 0 and v == 0):
        raise ParamsDegenerate("need b != 0 and (u, v) != (0, 0)")
    h = catalog_lookup("h8")
    w = _e(h.space,
           ((1, 2), a), ((3, 4), b), ((1, 3), x), ((2, 4), x),
           ((2, 3), -y), ((1, 4), y), ((1, 5), -u), ((2, 6), -u),
           ((2, 5), v), ((1, 6), -v))
    return SymplecticForm(h, w)


def h9_symplectic() -> SymplecticForm:
    h = parse(H9_ALGEBRA)
    return SymplecticForm(h, _e(h.space, ((1, 3), 1), ((2, 6), -1), ((4, 5), -1)))


def h10_symplectic() -> SymplecticForm:
    h = realify(_H10_EQ)
    return SymplecticForm(h, _e(h.space, ((1, 6), 1), ((2, 5), -1), ((3, 4), 1)))


@dataclass
class MirrorIso:
    """A verified isomorphism from a complex-side algebra onto a
    contraction algebra over the same real Lie algebra."""

    case: str
    src: DGAlgebra
    dst: DGAlgebra
    omega: Multivector
    images: tuple

    def matrix(self):
        n = self.src.space.dim
        one = [1 << i for i in range(n)]
        return [[coords(self.images[k], one)[t] for k in range(n)]
                for t in range(n)]

    def to_json(self):
        return {
            "case": self.case,
            "omega": str(self.omega),
            "images": {
                F1_NAMES[k]: str(self.images[k])
                for k in range(len(self.images))
            },
            "verified": True,
        }


def _verified(case, eq, sf: SymplecticForm, images) -> MirrorIso:
    src = build_f1(eq)
    dst = dga_from_symplectic(sf.algebra, sf)
    if not check_dga_morphism(src, dst, images):
        raise RuntimeError(f"{case}: the stored map is not a morphism")
    n = src.space.dim
    one = [1 << i for i in range(n)]
    mat = [[coords(images[k], one)[t] for k in range(n)] for t in range(n)]
    if invert(mat) is None:
        raise RuntimeError(f"{case}: the stored map is singular")
    return MirrorIso(case, src, dst, sf.omega, tuple(images))


def explicit_mirror_iso(case: str, params: dict | None = None) -> MirrorIso:
    """The stored degree-one isomorphism for one of the mirror cases.

    case is one of h6, h8, h9, h10.  params carries the symplectic family
    coefficients where there is a family (h6: a,b,c,k,l; h8: a,b,x,y,u,v);
    degenerate parameters raise ParamsDegenerate.  The returned map has
    been re-verified exactly on every generator and generator pair.
    """
    params = dict(params or {})
    if case == "h6":
        sf = h6_symplectic(**params)
        b = Fraction(params.get("b", 1))
        c = Fraction(params.get("c", 0))
        k = Fraction(params.get("k", 0))
        l = Fraction(params.get("l", 1))
        sp = sf.algebra.space
        images = (
            _e(sp, ((5,), 1), ((4,), -k / l)),
            _e(sp, ((4,), b)),
            _e(sp, ((2,), 1)),
            _e(sp, ((3,), -1)),
            _e(sp, ((1,), 1)),
            _e(sp, ((6,), 1), ((4,), -c / l)),
        )
        return _verified(case, _H6_EQ, sf, images)
    if case == "h8":
        sf = h8_symplectic(**params)
        u = Fraction(params.get("u", 0))
        v = Fraction(params.get("v", 1))
        n2 = u * u + v * v
        sp = sf.algebra.space
        t3 = _e(sp, ((2,), -n2 / v)) if v else _e(sp, ((1,), n2 / u))
        images = (
            _e(sp, ((5,), -u), ((6,), -n2)),
            _e(sp, ((3,), 1)),
            t3,
            _e(sp, ((1,), v), ((2,), u)),
            _e(sp, ((4,), 1)),
            _e(sp, ((5,), 1)),
        )
        return _verified(case, _H8_EQ, sf, images)
    if case == "h9":
        if params:
            raise ValueError("this case takes no parameters")
        sf = h9_symplectic()
        sp = sf.algebra.space
        images = _H9_IMAGES(sp)
        return _verified(case, _H9_EQ, sf, images)
    if case == "h10":
        if params:
            raise ValueError("this case takes no parameters")
        sf = h10_symplectic()
        sp = sf.algebra.space
        images = _H10_IMAGES(sp)
        return _verified(case, _H10_EQ, sf, images)
    raise ValueError(f"unknown case {case!r}")


def _H9_IMAGES(sp):
    # frozen from mirror_iso_search on the pair; re-verified on every call
    half = Fraction(1, 2)
    return (
        _e(sp, ((3,), half)),
        _e(sp, ((5,), half)),
        _e(sp, ((2,), half)),
        _e(sp, ((1,), 2)),
        _e(sp, ((4,), -2)),
        _e(sp, ((6,), 2)),
    )


def _H10_IMAGES(sp):
    # frozen from mirror_iso_search on the pair; re-verified on every call
    half = Fraction(1, 2)
    return (
        _e(sp, ((5,), -half)),
        _e(sp, ((4,), -half)),
        _e(sp, ((1,), half)),
        _e(sp, ((2,), -2)),
        _e(sp, ((3,), -2)),
        _e(sp, ((6,), 2)),
    )


def _h1_iso() -> MirrorIso:
    h = catalog_lookup("h1")
    sf = SymplecticForm(h, _e(h.space, ((1, 4), 1), ((2, 5), 1), ((3, 6), 1)))
    src = build_f1(eq_c())
    dst = dga_from_symplectic(h, sf)
    images = tuple(Multivector.mono(dst.space, (k,)) for k in range(6))
    if not check_dga_morphism(src, dst, images):
        raise RuntimeError("h1: identity map failed")
    return MirrorIso("h1", src, dst, sf.omega, images)


# -- the h11-type obstruction -----------------------------------------------------


@dataclass
class ObstructionReport:
    """Outcome of the elimination chain on an admissible h11-type pair."""

    B: GaussianRational
    C: GaussianRational
    a1: GaussianRational
    a2: GaussianRational
    a3: GaussianRational
    residuals: dict
    substitutions: tuple
    forced_scalar: GaussianRational
    certificate: str
    verdict: str

    def to_json(self):
        return {
            "B": format_scalar(self.B),
            "C": format_scalar(self.C),
            "a1": format_scalar(self.a1),
            "a2": format_scalar(self.a2),
            "a3": format_scalar(self.a3),
            "residuals": dict(self.residuals),
            "substitutions": list(self.substitutions),
            "forced_scalar": format_scalar(self.forced_scalar),
            "certificate": self.certificate,
            "verdict": self.verdict,
        }


def h11_family_form(B, C, a1, a2, a3) -> Multivector:
    """The closed (1,1)-form of the admissible family, on the coframe."""
    one = gq(1)
    return (
        Multivector.mono(CSPACE, (0, 3), a1)
        + Multivector.mono(CSPACE, (1, 4), a3 * (B + one))
        + Multivector.mono(CSPACE, (0, 4), a2)
        + Multivector.mono(CSPACE, (1, 3), -conj(a2))
        + Multivector.mono(CSPACE, (0, 5), a3)
        + Multivector.mono(CSPACE, (2, 3), a3)
    )


def _check_h11_preconditions(B, C, a1, a2, a3):
    one = gq(1)
    if B.im:
        raise PreconditionViolated("B must be real")
    if not B or not C:
        raise PreconditionViolated("need B*C != 0")
    d = B - one
    if C.abs2() != d.abs2():
        raise PreconditionViolated("need |C|^2 = (B-1)^2")
    if a1 + conj(a1) != ZERO or a3 + conj(a3) != ZERO:
        raise PreconditionViolated("a1 and a3 must be imaginary")
    if B == -one:
        raise PreconditionViolated(
            "B = -1: the family has no non-degenerate member")
    if not a1 or not a3:
        raise PreconditionViolated("need a1 != 0 and a3 != 0")


def h11_obstruction(B, C, a1=I, a2=ZERO, a3=I) -> ObstructionReport:
    """Run the elimination chain proving no isomorphism exists.

    The two algebras are rebuilt from scratch, the image ansatz is
    re-derived from their canonical chains, and the named equations are
    extracted from the resulting polynomial system, so nothing here trusts
    a transcription.  The output certificate is an exact polynomial
    identity whose nonzero scalar forces the leading ansatz coefficient to
    vanish, contradicting invertibility.
    """
    B, C, a1, a2, a3 = (_as_coeff(t) for t in (B, C, a1, a2, a3))
    _check_h11_preconditions(B, C, a1, a2, a3)
    one = gq(1)
    eq = eq_c(epsilon=one, rho=one, B=B, C=C)
    src = build_f1(eq)
    w = h11_family_form(B, C, a1, a2, a3)
    dst = _complex_contraction_dga(eq, w)

    # image ansatz from the canonical chains, in a pinned basis
    bases_sub, reason = _generator_constraints(src, dst)
    if bases_sub is None:
        raise RuntimeError(f"chain comparison failed unexpectedly: {reason}")
    n = 6
    one_masks = [1 << i for i in range(n)]

    def mv(*pairs):
        out = Multivector.zero(CSPACE)
        for idx, c in pairs:
            out = out + Multivector.mono(CSPACE, (idx,), _as_coeff(c))
        return out

    d1 = B - one
    pinned = [
        [mv((0, 1)), mv((3, 1)), mv((1, 1)), mv((4, 1)), mv((2, 1)),
         mv((5, 1))],                                       # T1: unconstrained
        [mv((0, 1)), mv((3, 1)), mv((1, 1)), mv((4, 1))],   # T2
        [mv((0, 1)), mv((3, 1))],                           # T3
        [mv((0, d1), (3, C))],                              # ob1
        [mv((0, 1)), mv((3, 1)), mv((1, 1), (4, 1))],       # ob2
        [mv((0, 1)), mv((3, 1)), mv((1, 1)), mv((4, 1)),
         mv((2, d1), (5, C))],                              # ob3
    ]
    for k, (sub, basis) in enumerate(zip(bases_sub, pinned)):
        if sub.dim != len(basis) or any(
            not sub.contains(coords(b, one_masks)) for b in basis
        ):
            raise RuntimeError(
                f"chain constraints for {F1_NAMES[k]} differ from the "
                "pinned ansatz")

    cons, img, names = _morphism_system(src, dst, pinned)
    # variable layout: T1 -> 0..5, T2 -> 6..9, T3 -> 10,11, ob1 -> 12,
    # ob2 -> 13..15, ob3 -> 16..20
    p = {
        "p61": 0, "p62": 1, "p63": 2, "p64": 3, "p65": 4, "p66": 5,
        "p41": 6, "p42": 7, "p43": 8, "p44": 9,
        "p21": 10, "p22": 11,
        "p11": 12,
        "p31": 13, "p32": 14, "p33": 15,
        "p51": 16, "p52": 17, "p53": 18, "p54": 19, "p55": 20,
    }
    rev = {v: k for k, v in p.items()}
    namefn = lambda i: rev[i]

    two = masks_of_degree(n, 2)

    def d_residual(k):
        """Components of the d-intertwining defect of generator k."""
        lin = {}
        dd = [coords(dst.d1[t], two) for t in range(n)]
        for t in range(n):
            if img[k][t].is_zero():
                continue
            for m_i, m in enumerate(two):
                if dd[t][m_i]:
                    lin[m] = lin.get(m, Poly()) + img[k][t] * dd[t][m_i]
        quad = {}
        for mask, c in src.d1[k].coeffs.items():
            i, j = [b for b in range(n) if mask & (1 << b)]
            ww = _sym_wedge11(img[i], img[j], n)
            for m, q in ww.items():
                quad[m] = quad.get(m, Poly()) + q * c
        return {m: quad.get(m, Poly()) - lin.get(m, Poly()) for m in two}

    def bracket_residual(i, j):
        bc = _bracket_coords(dst)
        left = [Poly() for _ in range(n)]
        for a in range(n):
            if img[i][a].is_zero():
                continue
            for b in range(n):
                if img[j][b].is_zero():
                    continue
                pab = img[i][a] * img[j][b]
                for t in range(n):
                    if bc[a][b][t]:
                        left[t] = left[t] + pab * bc[a][b][t]
        right = [Poly() for _ in range(n)]
        for mask, c in src.bracket1(i, j).coeffs.items():
            kk = mask.bit_length() - 1
            for t in range(n):
                if not img[kk][t].is_zero():
                    right[t] = right[t] + img[kk][t] * c
        return [l - r for l, r in zip(left, right)]

    m_w1wb1 = (1 << 0) | (1 << 3)
    m_wb1wb2 = (1 << 3) | (1 << 4)
    m_w1w2 = (1 << 0) | (1 << 1)
    m_w2wb1 = (1 << 1) | (1 << 3)

    env = {}
    subs_log = []
    residuals = {}

    def record(name, poly):
        residuals[name] = poly.to_str(namefn)

    def assign(var, sol, label):
        nonlocal env
        env = {k: q.subs({var: sol}) for k, q in env.items()}
        env[var] = sol
        subs_log.append(f"{rev[var]} = {sol.to_str(namefn)}  [{label}]")

    # step 1: the ob3 defect on wb1^wb2 ties p55 to p11*p33
    r_ob3 = d_residual(5)
    eq_a = r_ob3[m_wb1wb2].subs(env)
    record("eq9", eq_a)
    sol = eq_a.solve_linear(p["p55"])
    if sol is None:
        raise RuntimeError("p55 is not linearly exposed")
    assign(p["p55"], sol, "from eq9")

    # step 2: the T2 defect on w1^wb1 ties p44 to p43 and the pair (T3, ob1)
    r_t2 = d_residual(1)
    eq_b = r_t2[m_w1wb1].subs(env)
    record("eq8", eq_b)
    sol = eq_b.solve_linear(p["p44"])
    if sol is None:
        raise RuntimeError("p44 is not linearly exposed")
    assign(p["p44"], sol, "from eq8")

    # step 3: the T1 defect determines p65, p66, then forces p33
    r_t1 = d_residual(0)
    for var, mask in ((p["p65"], m_w1w2), (p["p66"], m_wb1wb2)):
        c = r_t1[mask].subs(env)
        sol = c.solve_linear(var)
        if sol is None:
            raise RuntimeError(f"{rev[var]} is not linearly exposed")
        assign(var, sol, "from the T1 defect")
    eq_c10 = r_t1[m_w2wb1].subs(env)
    record("eq10", eq_c10)
    s_pol = Poly.var(p["p22"]) * d1 - Poly.var(p["p21"]) * C
    p11 = Poly.var(p["p11"])
    expected = (s_pol * (p11 * p11 * (C * C) + Poly.var(p["p33"]))) * B
    if not (eq_c10 - expected).is_zero() and not (eq_c10 + expected).is_zero():
        raise RuntimeError("the p33 constraint does not factor as expected")
    # invertibility on span(T3, ob1) requires p11 != 0 and the factor
    # s = (B-1)p22 - C p21 != 0, so the remaining factor must vanish
    assign(p["p33"], -(p11 * p11) * (C * C), "from eq10, using s != 0")

    # step 4: two bracket defects combine into a scalar multiple of p11^2.
    # The multiplier is recovered by monomial matching, then the whole
    # identity is rescaled onto the display shape of the forced scalar.
    r4 = [c.subs(env) for c in bracket_residual(0, 4)]
    r5 = [c.subs(env) for c in bracket_residual(0, 5)]
    forced = a3 * C * gq(C.abs2() + ((B + one) * (B + one)).re)
    if not forced:
        raise RuntimeError("forced scalar vanished despite the preconditions")
    target_key = tuple(sorted((p["p11"], p["p11"])))
    found = None
    for c4 in r4:
        if c4.is_zero():
            continue
        pc4 = p11 * c4
        for c5 in r5:
            if c5.is_zero():
                continue
            seen = set()
            for key, coeff in c5.coeffs.items():
                if key == target_key:
                    continue
                d = pc4.coeffs.get(key)
                if not d:
                    continue
                mu = coeff * d.inverse()
                if mu in seen:
                    continue
                seen.add(mu)
                comb = (pc4 * mu) - c5
                if set(comb.coeffs) == {target_key} and comb.coeffs[target_key]:
                    found = (c4, c5, mu, comb.coeffs[target_key])
                    break
            if found:
                break
        if found:
            break
    if found is None:
        raise RuntimeError("certificate identity not found in the bracket defects")
    c4, c5, mu, raw = found
    scale = forced * raw.inverse()
    record("eq4", c4)
    record("eq5", c5)
    certificate = (
        f"({format_scalar(scale * mu)})*p11*eq4 - "
        f"({format_scalar(scale)})*eq5 = ({format_scalar(forced)})*p11^2"
    )
    return ObstructionReport(
        B=B, C=C, a1=a1, a2=a2, a3=a3,
        residuals=residuals,
        substitutions=tuple(subs_log),
        forced_scalar=forced,
        certificate=certificate + " == 0, so p11 = 0: not injective",
        verdict="Contradiction",
    )


def sample_admissible_h11(rng: random.Random):
    """Random parameters meeting the obstruction preconditions exactly."""
    while True:
        b = Fraction(rng.randint(-12, 12), rng.choice((1, 2, 3, 5)))
        if b not in (0, 1, -1):
            break
    pq = [(p, q) for p in range(-3, 4) for q in range(-3, 4) if p or q]
    u = pythagorean_unit(*rng.choice(pq))
    B = gq(b)
    C = (B - gq(1)) * u
    a1 = gq(0, Fraction(rng.choice((1, -1, 2, -2, 3))))
    a3 = gq(0, Fraction(rng.choice((1, -1, 2, -2, 3))))
    a2 = gq(Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)))
    return B, C, a1, a2, a3


# -- the main verification --------------------------------------------------------


_EXPECTED_VERDICT = {
    "h1": "self-mirror", "h6": "self-mirror", "h8": "self-mirror",
    "h9": "self-mirror", "h10": "self-mirror",
    "h11": "obstructed",
    "h17": "no complex structure",
}
for _name in ("h2", "h3", "h4", "h5", "h7", "h12", "h13", "h14", "h15", "h16"):
    _EXPECTED_VERDICT[_name] = "excluded"


def _complex_class(name: str) -> frozenset:
    for cls in (frozenset({"h2", "h5"}), frozenset({"h13", "h15"})):
        if name in cls:
            return cls
    return frozenset({name})


def _sample_h6_params(rng):
    nz = lambda: Fraction(rng.choice([x for x in range(-4, 5) if x]),
                          rng.choice((1, 2, 3)))
    any_ = lambda: Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3)))
    return {"a": any_(), "b": nz(), "c": any_(), "k": any_(), "l": nz()}


def _sample_h8_params(rng, k):
    nz = lambda: Fraction(rng.choice([x for x in range(-4, 5) if x]),
                          rng.choice((1, 2, 3)))
    any_ = lambda: Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3)))
    out = {"a": any_(), "b": nz(), "x": any_(), "y": any_()}
    if k % 3 == 0:
        out["u"], out["v"] = nz(), Fraction(0)   # the v = 0 branch
    elif k % 3 == 1:
        out["u"], out["v"] = Fraction(0), nz()
    else:
        out["u"], out["v"] = nz(), nz()
    return out


def verify_theorem_main(seed: int = 0, samples: int = 50,
                        h11_samples: int = 100) -> dict:
    """Check the self-mirror shortlist end to end.

    Positive cases get explicit verified isomorphisms (sampled over their
    symplectic families where there is one); the h11-type family gets the
    obstruction chain on sampled admissible parameters; every other
    algebra is excluded because its degree-one mirror classes, read off
    the frozen table and re-derived from sampled structure equations,
    never contain the algebra itself.
    """
    rng = random.Random(seed)
    rows = []

    def row(name, verdict, method, count, ok, detail=""):
        rows.append({
            "name": name, "verdict": verdict, "method": method,
            "samples": count, "ok": bool(ok), "detail": detail,
        })

    _h1_iso()
    row("h1", "self-mirror", "identity on the zero-bracket pair", 1, True)

    for name in ("h2", "h3", "h4", "h5"):
        rows.append(_excluded_row(name, rng, samples))
    ok6 = True
    for k in range(samples):
        explicit_mirror_iso("h6", _sample_h6_params(rng))
    row("h6", "self-mirror", "stored map over the symplectic family",
        samples, ok6)
    rows.append(_excluded_row("h7", rng, samples))
    for k in range(samples):
        explicit_mirror_iso("h8", _sample_h8_params(rng, k))
    row("h8", "self-mirror", "stored map over the symplectic family",
        samples, True)
    explicit_mirror_iso("h9")
    row("h9", "self-mirror", "stored map", 1, True)
    explicit_mirror_iso("h10")
    row("h10", "self-mirror", "stored map", 1, True)
    bad = 0
    for _ in range(h11_samples):
        rep = h11_obstruction(*sample_admissible_h11(rng))
        if rep.verdict != "Contradiction":
            bad += 1
    row("h11", "obstructed", "elimination chain on admissible samples",
        h11_samples, bad == 0,
        "" if bad == 0 else f"{bad} samples escaped the obstruction")
    for name in ("h12", "h13", "h14", "h15", "h16"):
        rows.append(_excluded_row(name, rng, samples))
    in_table = any("h17" in r.g_set for r in TABF1_ROWS)
    row("h17", "no complex structure",
        "absent from every mirror-class row", 0, not in_table)

    rows.sort(key=lambda r: int(r["name"][1:]))
    report = {
        "seed": seed,
        "rows": rows,
        "ok": all(r["ok"] for r in rows),
    }
    return report


def _excluded_row(name, rng, samples):
    cls = _complex_class(name)
    table_ok = not (GF1_CHECKMARKS[name] & cls)
    row = next(r for r in TABLE1_ROWS if r.name == name)
    bad = 0
    for k in range(samples):
        eq = sample_table1_row(row, rng, k)
        if classify_f1(eq) in cls:
            bad += 1
    return {
        "name": name,
        "verdict": "excluded",
        "method": "mirror class never matches the algebra",
        "samples": samples,
        "ok": table_ok and bad == 0,
        "detail": "" if table_ok and bad == 0 else
        f"table_ok={table_ok}, {bad} colliding samples",
    }
