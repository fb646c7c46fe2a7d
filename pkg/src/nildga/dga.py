"""Differential Gerstenhaber algebras on six odd generators.

A DGAlgebra is the exterior algebra over six degree-1 generators together
with a degree +1 differential d (square zero, derivation over the wedge)
and a degree -1 odd bracket extending a Lie bracket on the generators.
Both are stored as tables on the generators and extended by the graded
Leibniz rules.

Two constructions are provided: build_f1 derives the algebra attached to a
nilpotent complex structure (generators T1,T2,T3 spanning the (1,0) vectors
and ob1,ob2,ob3 the conjugate coframe) from the Courant bracket, and
dga_from_O transports the bracket of a Lie algebra h through a linear map
O: h -> h* onto the Chevalley-Eilenberg complex of h.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .cplx import ComplexStructureEq, complex_algebra
from .exterior import (
    BasisSpace,
    Multivector,
    bits,
    contract,
    from_coords,
    invert,
    masks_of_degree,
    substitute,
    wedge,
)
from .lie import LieAlgebra, ce_d, check_jacobi, classify
from .scalars import GaussianRational, ONE, ZERO, conj, format_scalar


class AxiomViolation(ValueError):
    pass


class NotCompatible(ValueError):
    pass


class Incompatible(ValueError):
    pass


F1_NAMES = ("T1", "T2", "T3", "ob1", "ob2", "ob3")

# eta_1..eta_6 = (ob1, T3, ob2, T2, ob3, T1) as positions in F1_NAMES
ETA_ORDER = (3, 2, 4, 1, 5, 0)
ETA_NAMES = ("n1", "n2", "n3", "n4", "n5", "n6")


@dataclass
class DGAlgebra:
    """Generator tables of a differential Gerstenhaber algebra.

    d1[k] is the differential of generator k (a degree-2 Multivector or
    zero); brk[(i, j)] with i < j is the degree-1 bracket of generators
    i and j, stored sparsely.  No axioms are enforced at construction so
    that deliberately broken tables can be fed to check_axioms.
    """

    space: BasisSpace
    d1: tuple
    brk: dict

    def d(self, mv: Multivector) -> Multivector:
        out = Multivector.zero(self.space)
        for mask, c in mv.coeffs.items():
            sign = 1
            for i in bits(mask):
                rest = Multivector(self.space, {mask ^ (1 << i): c * sign})
                out = out + wedge(self.d1[i], rest)
                sign = -sign
        return out

    def bracket1(self, i: int, j: int) -> Multivector:
        if i == j:
            return Multivector.zero(self.space)
        if i < j:
            return self.brk.get((i, j), Multivector.zero(self.space))
        return -self.brk.get((j, i), Multivector.zero(self.space))

    def bracket(self, a: Multivector, b: Multivector) -> Multivector:
        return schouten_extend(self, a, b)

    def degree1_algebra(self, field="Qi") -> LieAlgebra:
        table = {}
        for (i, j), mv in self.brk.items():
            vec = [mv.coeffs.get(1 << k, ZERO) for k in range(self.space.dim)]
            if any(vec):
                table[(i, j)] = vec
        return LieAlgebra.from_brackets(
            self.space.dim, table, field=field, names=self.space.names
        )

    def relabel(self, order, names) -> "DGAlgebra":
        """Present the same algebra on generators new_k = old order[k]."""
        n = self.space.dim
        nsp = BasisSpace(n, tuple(names))
        pos = [0] * n
        for k, old in enumerate(order):
            pos[old] = k
        imgs = [Multivector.mono(nsp, (pos[i],)) for i in range(n)]
        conv = lambda mv: substitute(mv, imgs, nsp)
        d1 = tuple(conv(self.d1[order[k]]) for k in range(n))
        brk = {}
        for i, j in combinations(range(n), 2):
            mv = conv(self.bracket1(order[i], order[j]))
            if mv:
                brk[(i, j)] = mv
        return DGAlgebra(nsp, d1, brk)


def _mv_json(mv: Multivector) -> dict:
    names = mv.space.names
    out = {}
    for mask, c in mv.coeffs.items():
        key = "^".join(names[i] for i in bits(mask)) or "1"
        out[key] = format_scalar(c)
    return out


def dga_report(dga: DGAlgebra, axioms=None, classification=None) -> dict:
    rep = {
        "generators": list(dga.space.names),
        "d": {dga.space.names[k]: _mv_json(dga.d1[k]) for k in range(dga.space.dim)},
        "brackets": {
            "[%s,%s]" % (dga.space.names[i], dga.space.names[j]): _mv_json(mv)
            for (i, j), mv in sorted(dga.brk.items())
        },
    }
    if axioms is not None:
        rep["axioms"] = axioms
    if classification is not None:
        rep["degree1_class"] = classification
    return rep


# -- Courant bracket ---------------------------------------------------------


def _contract_vec(x, mv: Multivector) -> Multivector:
    out = Multivector.zero(mv.space)
    for i, c in enumerate(x):
        if c:
            out = out + contract(i, mv) * c
    return out


def courant_bracket(xa, yb, g: LieAlgebra):
    """Bracket of x + alpha and y + beta on g + g*.

    Arguments are pairs (coordinate vector, degree-1 Multivector); the
    result is the pair ([x,y], i_x d(beta) - i_y d(alpha)).
    """
    x, alpha = xa
    y, beta = yb
    vec = g.bracket(x, y)
    form = _contract_vec(x, ce_d(g, beta)) - _contract_vec(y, ce_d(g, alpha))
    return vec, form


# -- construction from a complex structure -----------------------------------


def _f1_generator_pair(gc: LieAlgebra, k: int):
    if k < 3:
        vec = [ZERO] * 6
        vec[k] = ONE
        return vec, Multivector.zero(gc.space)
    return [ZERO] * 6, Multivector.mono(gc.space, (k,))


def build_f1(eq: ComplexStructureEq) -> DGAlgebra:
    """DGA of a nilpotent complex structure on generators (T, ob).

    Brackets come from the Courant bracket of the complexified algebra;
    the differential of a coframe generator is the (0,2) part of its
    exterior derivative, and on a vector generator it is
    sum_l ob_l ^ [Tbar_l, T]^(1,0).
    """
    gc = complex_algebra(eq)
    fsp = BasisSpace(6, F1_NAMES)
    gen_masks = [1 << m for m in range(6)]

    brk = {}
    for i, j in combinations(range(6), 2):
        vec, form = courant_bracket(
            _f1_generator_pair(gc, i), _f1_generator_pair(gc, j), gc
        )
        if any(vec[3:]):
            raise AxiomViolation("bracket leaves the (1,0) vectors")
        cvec = list(vec[:3])
        for k in range(3, 6):
            c = form.coeffs.get(1 << k, ZERO)
            cvec.append(c)
        if set(form.coeffs) - {1 << k for k in range(3, 6)}:
            raise AxiomViolation("bracket leaves the (0,1) coframe")
        mv = from_coords(fsp, gen_masks, cvec)
        if mv:
            brk[(i, j)] = mv

    d1 = []
    for j in range(3):
        out = Multivector.zero(fsp)
        for ell in range(3):
            tbar = [ZERO] * 6
            tbar[3 + ell] = ONE
            tj = [ZERO] * 6
            tj[j] = ONE
            v = gc.bracket(tbar, tj)
            for m in range(3):
                if v[m]:
                    out = out + Multivector.mono(fsp, (3 + ell, m), v[m])
        d1.append(out)
    for k in range(3, 6):
        dk = ce_d(gc, Multivector.mono(gc.space, (k,)))
        part = {m: c for m, c in dk.coeffs.items() if not m & 0b000111}
        d1.append(Multivector(fsp, part))

    dga = DGAlgebra(fsp, tuple(d1), brk)
    validate(dga)
    return dga


def validate(dga: DGAlgebra) -> None:
    """Raise AxiomViolation unless the generator tables are consistent."""
    n = dga.space.dim
    if not check_jacobi(dga.degree1_algebra()):
        raise AxiomViolation("degree-1 Jacobi identity fails")
    for k in range(n):
        if dga.d(dga.d1[k]):
            raise AxiomViolation("d squared is nonzero on generator %d" % k)
    for i, j in combinations(range(n), 2):
        a = Multivector.mono(dga.space, (i,))
        b = Multivector.mono(dga.space, (j,))
        lhs = dga.d(dga.bracket1(i, j))
        rhs = schouten_extend(dga, dga.d1[i], b) + schouten_extend(
            dga, a, dga.d1[j]
        )
        if lhs != rhs:
            raise AxiomViolation(
                "d does not respect the bracket on (%d, %d)" % (i, j)
            )


# -- Schouten extension ------------------------------------------------------


def _schouten_mono(dga: DGAlgebra, am: int, bm: int) -> Multivector:
    cache = dga.__dict__.setdefault("_scache", {})
    hit = cache.get((am, bm))
    if hit is not None:
        return hit
    out = _schouten_mono_raw(dga, am, bm)
    cache[(am, bm)] = out
    return out


def _schouten_mono_raw(dga: DGAlgebra, am: int, bm: int) -> Multivector:
    ka = bin(am).count("1")
    kb = bin(bm).count("1")
    if ka == 0 or kb == 0:
        return Multivector.zero(dga.space)
    if ka == 1 and kb == 1:
        return dga.bracket1(am.bit_length() - 1, bm.bit_length() - 1)
    if kb > 1:
        # [a . e_j^rest] = [a . e_j]^rest + (-1)^(ka+1) e_j^[a . rest]
        j = (bm & -bm).bit_length() - 1
        rest = bm ^ (1 << j)
        t1 = wedge(_schouten_mono(dga, am, 1 << j), Multivector(dga.space, {rest: ONE}))
        t2 = wedge(
            Multivector.mono(dga.space, (j,)), _schouten_mono(dga, am, rest)
        )
        if ka % 2 == 0:
            t2 = -t2
        return t1 + t2
    # kb == 1 < ka: swap, [a . b] = -(-1)^((ka+1)(kb+1)) [b . a] = -[b . a]
    return -_schouten_mono(dga, bm, am)


def schouten_extend(dga: DGAlgebra, a: Multivector, b: Multivector) -> Multivector:
    """Biderivation extension of the generator bracket to the whole algebra."""
    out = Multivector.zero(dga.space)
    for am, ac in a.coeffs.items():
        for bm, bc in b.coeffs.items():
            term = _schouten_mono(dga, am, bm)
            if term:
                out = out + term * (ac * bc)
    return out


# -- axiom checking ----------------------------------------------------------


def _random_homogeneous(dga: DGAlgebra, rng, degree: int) -> Multivector:
    masks = list(masks_of_degree(dga.space.dim, degree))
    out = Multivector.zero(dga.space)
    for m in rng.sample(masks, min(2, len(masks))):
        c = GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2))
        out = out + Multivector(dga.space, {m: c} if c else {})
    return out


def check_axioms(dga: DGAlgebra, seed=0, samples=24) -> dict:
    """Boolean report per axiom.

    Degree-1 checks are exhaustive over generator pairs and triples;
    higher degrees are sampled (deterministically for a fixed seed).
    """
    sp = dga.space
    n = sp.dim
    gens = [Multivector.mono(sp, (i,)) for i in range(n)]
    br = lambda a, b: schouten_extend(dga, a, b)

    def sgn(k):
        return -ONE if k % 2 else ONE

    commutative = True
    jacobi = True
    leibniz = True
    compat = True
    distrib = True
    dsq = all(not dga.d(dga.d(g)) for g in gens)

    for i, j in product(range(n), repeat=2):
        if br(gens[i], gens[j]) + br(gens[j], gens[i]):
            commutative = False
    for i, j, k in product(range(n), repeat=3):
        t = br(br(gens[i], gens[j]), gens[k])
        t = t + br(br(gens[j], gens[k]), gens[i])
        t = t + br(br(gens[k], gens[i]), gens[j])
        if t:
            jacobi = False
            break
    for i, j in combinations(range(n), 2):
        lhs = dga.d(br(gens[i], gens[j]))
        rhs = br(dga.d1[i], gens[j]) + br(gens[i], dga.d1[j])
        if lhs != rhs:
            compat = False

    rng = random.Random(seed)
    for _ in range(samples):
        da, db, dc = (rng.choice((1, 1, 2, 2, 3)) for _ in range(3))
        a = _random_homogeneous(dga, rng, da)
        b = _random_homogeneous(dga, rng, db)
        c = _random_homogeneous(dga, rng, dc)
        if br(a, b) + br(b, a) * sgn((da + 1) * (db + 1)):
            commutative = False
        t = br(br(a, b), c) * sgn((da + 1) * (dc + 1))
        t = t + br(br(b, c), a) * sgn((db + 1) * (da + 1))
        t = t + br(br(c, a), b) * sgn((dc + 1) * (db + 1))
        if t:
            jacobi = False
        if dga.d(wedge(a, b)) != wedge(dga.d(a), b) + wedge(a, dga.d(b)) * sgn(da):
            leibniz = False
        if dga.d(br(a, b)) != br(dga.d(a), b) + br(a, dga.d(b)) * sgn(da + 1):
            compat = False
        # distributive law on the sampled triple
        lhs = br(a, wedge(b, c))
        rhs = wedge(br(a, b), c) + wedge(b, br(a, c)) * sgn((da + 1) * db)
        if lhs != rhs:
            distrib = False
        if dga.d(dga.d(a)):
            dsq = False

    return {
        "graded_commutativity": commutative,
        "graded_jacobi": jacobi,
        "leibniz_wedge": leibniz,
        "bracket_wedge": distrib,
        "d_bracket": compat,
        "d_squared": dsq,
    }


def axioms_ok(report: dict) -> bool:
    return all(report.values())


# -- classification and eta presentation -------------------------------------


def classify_f1(eq: ComplexStructureEq) -> str:
    """Catalog name of the degree-1 complex Lie algebra of build_f1."""
    return classify(build_f1(eq).degree1_algebra())


@dataclass
class F1Presentation:
    """The f1 tables rewritten on the filtration-ordered eta generators."""

    eq: ComplexStructureEq
    dga: DGAlgebra

    @property
    def labels(self):
        return self.dga.space.names

    def to_json(self) -> dict:
        rep = dga_report(self.dga)
        rep["eq"] = self.eq.to_json()
        rep["order"] = {
            ETA_NAMES[k]: F1_NAMES[ETA_ORDER[k]] for k in range(6)
        }
        return rep


def f1_presentation(eq: ComplexStructureEq) -> F1Presentation:
    dga = build_f1(eq).relabel(ETA_ORDER, ETA_NAMES)
    return F1Presentation(eq, dga)


# -- duality reconstruction --------------------------------------------------


def dual_differentials(dga: DGAlgebra) -> tuple:
    """Differential table reconstructed from the bracket table alone.

    The dual basis of (T, ob) is (omega, Tbar); conjugation carries it back
    to (ob, T).  So the Chevalley-Eilenberg differential of the degree-1
    algebra, with indices rotated by three and coefficients conjugated,
    must reproduce d1 exactly.
    """
    L = dga.degree1_algebra()
    n = dga.space.dim
    half = n // 2
    out = [None] * n
    for k in range(n):
        target = (k + half) % n
        mv = Multivector.zero(dga.space)
        for mask, c in L.d1[k].coeffs.items():
            i, j = tuple(bits(mask))
            mv = mv + Multivector.mono(
                dga.space, ((i + half) % n, (j + half) % n), conj(c)
            )
        out[target] = mv
    return tuple(out)


# -- transport through a linear map O: h -> h* -------------------------------


def _column(matrix, j):
    return [row[j] for row in matrix]


def build_O(h: LieAlgebra, phi, f1: DGAlgebra) -> list:
    """Linear map h -> h* built from an isomorphism phi onto the f1 algebra.

    phi is a 6x6 matrix over GaussianRational, columns giving the images of
    the basis of h in the (T, ob) generator order of f1.  The result O is
    the matrix of psi* . phi where psi conjugates phi on both sides and
    reads the outcome through the pairing that dualizes (T, ob) to (ob, T).
    Requires real structure constants on h and phi a bracket isomorphism
    onto the degree-1 part of f1.
    """
    n = h.dim
    for mv in h.d1:
        if any(c.im for c in mv.coeffs.values()):
            raise NotCompatible("structure constants of h are not real")
    if invert(phi) is None:
        raise NotCompatible("phi is singular")
    masks = [1 << m for m in range(n)]
    fimg = [from_coords(f1.space, masks, _column(phi, j)) for j in range(n)]
    for i, j in combinations(range(n), 2):
        ui = [ZERO] * n
        ui[i] = ONE
        uj = [ZERO] * n
        uj[j] = ONE
        w = h.bracket(ui, uj)
        rhs = Multivector.zero(f1.space)
        for k in range(n):
            if w[k]:
                rhs = rhs + fimg[k] * w[k]
        if schouten_extend(f1, fimg[i], fimg[j]) != rhs:
            raise NotCompatible("phi does not carry the bracket of h")
    psi = _psi_matrix(phi, n)
    # O = psi^T . phi  (psi* acts by the transposed matrix)
    O = [
        [
            sum((psi[m][i] * phi[m][j] for m in range(n)), ZERO)
            for j in range(n)
        ]
        for i in range(n)
    ]
    try:
        dga_from_O(h, O)
    except Incompatible as bad:
        raise NotCompatible(str(bad))
    return O


def _psi_matrix(phi, n):
    """Conjugate phi entrywise and read it through the (T, ob) duality."""
    half = n // 2
    psi = [[ZERO] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            psi[(k + half) % n][j] = conj(phi[k][j])
    return psi


def transport_images(h: LieAlgebra, phi) -> list:
    """Generator images of the induced isomorphism onto the transported DGA.

    Entry m is the degree-1 image in h* of the m-th generator of the source
    algebra, suitable for check_dga_morphism against dga_from_O(h, build_O).
    """
    n = h.dim
    psi = _psi_matrix(phi, n)
    masks = [1 << j for j in range(n)]
    return [from_coords(h.space, masks, psi[m]) for m in range(n)]


def dga_from_O(h: LieAlgebra, O) -> DGAlgebra:
    """DGA on h* with bracket transported through O and the C-E differential.

    Raises Incompatible when O is singular or the compatibility identity
    d[a.b] = [da.b] + [a.db] fails on a generator pair.
    """
    n = h.dim
    Oinv = invert(O)
    if Oinv is None:
        raise Incompatible("O is singular")
    gen_masks = [1 << m for m in range(n)]
    brk = {}
    for i, j in combinations(range(n), 2):
        u = _column(Oinv, i)
        v = _column(Oinv, j)
        w = h.bracket(u, v)
        img = [sum((O[m][k] * w[k] for k in range(n)), ZERO) for m in range(n)]
        mv = from_coords(h.space, gen_masks, img)
        if mv:
            brk[(i, j)] = mv
    dga = DGAlgebra(h.space, tuple(h.d1), brk)
    try:
        validate(dga)
    except AxiomViolation as bad:
        raise Incompatible(str(bad))
    return dga


def check_dga_morphism(src: DGAlgebra, dst: DGAlgebra, images) -> bool:
    """Exact check that a degree-1 map extends to a DGA homomorphism.

    images[k] is the degree-1 image of generator k of src in dst.  The
    wedge extension intertwines the differentials and brackets iff the
    identities hold on generators and generator pairs.
    """
    n = src.space.dim
    f = lambda mv: substitute(mv, images, dst.space)
    for k in range(n):
        if f(src.d1[k]) != dst.d(images[k]):
            return False
    for i, j in combinations(range(n), 2):
        if f(src.bracket1(i, j)) != schouten_extend(dst, images[i], images[j]):
            return False
    return True
