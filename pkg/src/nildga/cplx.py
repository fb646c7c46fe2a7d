"""Nilpotent complex structures on six-dimensional nilpotent algebras.

Structure equations are always of the shape

    dw1 = 0,  dw2 = epsilon w1^wb1,
    dw3 = rho w1^w2 + A w1^wb1 + B w1^wb2 + C w2^wb1 + D w2^wb2,

with Gaussian-rational constants and D*epsilon = 0.  The module computes the
profile (n, Delta1, Delta2, d_span, rank X, ...), reduces presentations,
transforms them by admissible basis changes, realifies to a real Lie algebra
under w^k = e^{2k-1} + i e^{2k}, and identifies the underlying algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exterior import (
    BasisSpace,
    LinearMap,
    Multivector,
    Subspace,
    coords,
    from_coords,
    masks_of_degree,
    mat_mul,
    substitute,
    wedge,
    wedge_all,
)
from .lie import LieAlgebra, NotNilpotent, ce_d, change_basis, classify, dual_sequence
from .scalars import GaussianRational, I, ONE, ZERO, format_scalar, parse_scalar


class ProfileNotInTable(ValueError):
    pass


class NotIntegrable(ValueError):
    pass


def _s(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return GaussianRational(Fraction(x), Fraction(0))


@dataclass(frozen=True)
class ComplexStructureEq:
    epsilon: GaussianRational
    rho: GaussianRational
    A: GaussianRational
    B: GaussianRational
    C: GaussianRational
    D: GaussianRational

    def __post_init__(self):
        for f in ("epsilon", "rho", "A", "B", "C", "D"):
            object.__setattr__(self, f, _s(getattr(self, f)))
        if self.D * self.epsilon != ZERO:
            raise ValueError("D*epsilon must vanish (integrability)")
        if self.epsilon != ZERO and self._dw3_zero():
            raise ValueError(
                "epsilon != 0 with dw3 = 0 is excluded "
                "(equivalent to epsilon = 0, dw3 = w1^wb1)"
            )

    def _dw3_zero(self):
        return not any((self.rho, self.A, self.B, self.C, self.D))

    def constants(self):
        return (self.epsilon, self.rho, self.A, self.B, self.C, self.D)

    def to_json(self):
        return {
            "epsilon": format_scalar(self.epsilon),
            "rho": format_scalar(self.rho),
            "A": format_scalar(self.A),
            "B": format_scalar(self.B),
            "C": format_scalar(self.C),
            "D": format_scalar(self.D),
        }

    @classmethod
    def from_json(cls, obj):
        return cls(*(obj[k] for k in ("epsilon", "rho", "A", "B", "C", "D")))


def eq_c(epsilon=0, rho=0, A=0, B=0, C=0, D=0) -> ComplexStructureEq:
    return ComplexStructureEq(epsilon, rho, A, B, C, D)


@dataclass(frozen=True)
class InvariantProfile:
    n: tuple
    Delta1: GaussianRational
    Delta2: Fraction
    d_span: int
    rankX: int
    absB2: Fraction
    absC2: Fraction
    sign_disc: int
    abelian: bool

    @property
    def disc(self) -> Fraction:
        return self.Delta1.abs2() - self.Delta2 * self.Delta2

    def to_json(self):
        return {
            "n": list(self.n),
            "Delta1": format_scalar(self.Delta1),
            "Delta2": str(self.Delta2),
            "d_span": self.d_span,
            "rankX": self.rankX,
            "absB2": str(self.absB2),
            "absC2": str(self.absC2),
            "sign_disc": self.sign_disc,
            "abelian": self.abelian,
        }


# -- the complexified algebra on (w1,w2,w3,wb1,wb2,wb3) ------------------------

CSPACE = BasisSpace(6, ("w1", "w2", "w3", "wb1", "wb2", "wb3"))


def conj_form(mv: Multivector) -> Multivector:
    """Conjugation on the w-basis: w_k <-> wb_k, coefficients conjugated."""
    imgs = [Multivector.mono(CSPACE, ((i + 3) % 6,)) for i in range(6)]
    flipped = Multivector(CSPACE, {m: c.conj() for m, c in mv.coeffs.items()})
    return substitute(flipped, imgs, CSPACE)


def complex_algebra(eq: ComplexStructureEq) -> LieAlgebra:
    dw2 = Multivector.mono(CSPACE, (0, 3), eq.epsilon)
    dw3 = (
        Multivector.mono(CSPACE, (0, 1), eq.rho)
        + Multivector.mono(CSPACE, (0, 3), eq.A)
        + Multivector.mono(CSPACE, (0, 4), eq.B)
        + Multivector.mono(CSPACE, (1, 3), eq.C)
        + Multivector.mono(CSPACE, (1, 4), eq.D)
    )
    zero = Multivector.zero(CSPACE)
    d1 = [zero, dw2, dw3, zero, conj_form(dw2), conj_form(dw3)]
    return LieAlgebra(CSPACE, d1, field="Qi")


def realify(eq: ComplexStructureEq) -> LieAlgebra:
    """Real algebra of the structure under w^k = e^{2k-1} + i e^{2k}."""
    gc = complex_algebra(eq)
    esp = BasisSpace(6)
    imgs = []
    for k in range(3):
        re = Multivector.mono(esp, (2 * k,))
        im = Multivector.mono(esp, (2 * k + 1,))
        imgs.append(re + I * im)
    for k in range(3):
        re = Multivector.mono(esp, (2 * k,))
        im = Multivector.mono(esp, (2 * k + 1,))
        imgs.append(re - I * im)
    half = GaussianRational(Fraction(1, 2), Fraction(0))
    mihalf = GaussianRational(Fraction(0), Fraction(-1, 2))
    d1 = []
    for k in range(3):
        dw, dwb = gc.d1[k], gc.d1[k + 3]
        d_odd = substitute((dw + dwb) * half, imgs, esp)
        d_even = substitute((dw - dwb) * mihalf, imgs, esp)
        for mv in (d_odd, d_even):
            if any(c.im != 0 for c in mv.coeffs.values()):
                raise AssertionError("realification produced complex coefficients")
        d1.extend([d_odd, d_even])
    return LieAlgebra(esp, d1, field="Q")


# -- invariants -----------------------------------------------------------------

_W2_MONOS = [
    (0, 1),  # w1 w2
    (0, 3),  # w1 wb1
    (0, 4),  # w1 wb2
    (1, 3),  # w2 wb1
    (1, 4),  # w2 wb2
    (3, 4),  # wb1 wb2
]


def _dw3_rows(eq):
    e, r, A, B, C, D = eq.constants()
    return [
        [r, A, B, C, D, ZERO],
        [ZERO, -A.conj(), -C.conj(), -B.conj(), -D.conj(), r.conj()],
    ]


def invariants(eq: ComplexStructureEq) -> InvariantProfile:
    e, r, A, B, C, D = eq.constants()
    delta1 = A * D - B * C
    delta2 = Fraction(1, 2) * (
        B.abs2() + C.abs2() - 2 * (A * D.conj()).re - r.abs2()
    )
    d_span = LinearMap(_dw3_rows(eq)).rank()
    rank_x = LinearMap([[A, B], [C, D]]).rank()
    dual = dual_sequence(realify(eq))
    n = (dual[0], dual[1] if len(dual) > 1 else dual[0])
    disc = delta1.abs2() - delta2 * delta2
    return InvariantProfile(
        n=n,
        Delta1=delta1,
        Delta2=delta2,
        d_span=d_span,
        rankX=rank_x,
        absB2=B.abs2(),
        absC2=C.abs2(),
        sign_disc=(disc > 0) - (disc < 0),
        abelian=(r == ZERO),
    )


def is_abelian(eq: ComplexStructureEq) -> bool:
    return eq.rho == ZERO


# -- reduction -------------------------------------------------------------------


def reduce(eq: ComplexStructureEq) -> ComplexStructureEq:
    """Equivalent presentation with epsilon in {0,1}; A = D = 0 when epsilon = 1;
    rho rescaled to 1 when nonzero.  Delta values change only by admissible scalings."""
    e, r, A, B, C, D = eq.constants()
    if e != ZERO:
        if r == ZERO and B == ZERO and C == ZERO:
            # dw3 = A w1^wb1 with A != 0: swap w2 and w3 roles; the structure is
            # the standard epsilon = 0, dw3 = w1^wb1 one
            return ComplexStructureEq(ZERO, ZERO, ONE, ZERO, ZERO, ZERO)
        if e != ONE:
            # w2 -> w2/e
            r, B, C, D = r * e, B * e.conj(), C * e, D * e.abs2()
            e = ONE
        if A != ZERO:
            # w3 -> w3 - A w2
            A = ZERO
    if r not in (ZERO, ONE):
        A, B, C, D = A / r, B / r, C / r, D / r
        r = ONE
    return ComplexStructureEq(e, r, A, B, C, D)


# -- admissible basis change -----------------------------------------------------


@dataclass(frozen=True)
class BasisChange:
    """Matrix of eq shape: rows k, columns j, entry s^j_k; th^j = sum_k s^j_k w^k.
    Bottom row must be (0, 0, s33)."""

    matrix: tuple

    def __post_init__(self):
        m = tuple(tuple(_s(c) for c in row) for row in self.matrix)
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("need a 3x3 matrix")
        if m[2][0] != ZERO or m[2][1] != ZERO:
            raise ValueError("th1, th2 may not involve w3")
        object.__setattr__(self, "matrix", m)
        if self.delta() == ZERO:
            raise ValueError("basis change is singular")

    def s(self, j, k):
        return self.matrix[k - 1][j - 1]

    def delta_prime(self):
        return self.s(1, 1) * self.s(2, 2) - self.s(1, 2) * self.s(2, 1)

    def delta(self):
        return self.s(3, 3) * self.delta_prime()


def transform(eq: ComplexStructureEq, sigma: BasisChange) -> ComplexStructureEq:
    """Structure equations in the th basis, th^j = sum_k s^j_k w^k."""
    if eq.epsilon != ZERO and sigma.s(1, 2) != ZERO:
        raise ValueError("sigma incompatible: epsilon*s^1_2 != 0")
    gc = complex_algebra(eq)
    p = [[ZERO] * 6 for _ in range(6)]
    for j in range(3):
        for k in range(3):
            p[j][k] = sigma.s(j + 1, k + 1)
            p[j + 3][k + 3] = sigma.s(j + 1, k + 1).conj()
    gt = change_basis(gc, p)
    return _extract_eq(gt)


def _extract_eq(gc: LieAlgebra) -> ComplexStructureEq:
    """Read (epsilon, rho, A, B, C, D) off a w-basis complex algebra."""
    two = masks_of_degree(6, 2)

    def pick(mv, allowed):
        out = {}
        for mask, c in mv.coeffs.items():
            pair = tuple(i for i in range(6) if mask & (1 << i))
            if pair not in allowed:
                raise ValueError(f"unexpected term {pair} in structure equations")
            out[pair] = c
        return out

    if not gc.d1[0].is_zero() or not gc.d1[3].is_zero():
        raise ValueError("dw1 must vanish")
    t2 = pick(gc.d1[1], {(0, 3)})
    t3 = pick(gc.d1[2], {(0, 1), (0, 3), (0, 4), (1, 3), (1, 4)})
    eq = ComplexStructureEq(
        t2.get((0, 3), ZERO),
        t3.get((0, 1), ZERO),
        t3.get((0, 3), ZERO),
        t3.get((0, 4), ZERO),
        t3.get((1, 3), ZERO),
        t3.get((1, 4), ZERO),
    )
    # conjugate halves must agree with the extracted constants
    ref = complex_algebra(eq)
    if any(coords(gc.d1[i], two) != coords(ref.d1[i], two) for i in range(6)):
        raise ValueError("structure equations are not conjugation-consistent")
    return eq


# -- Table 1 identification --------------------------------------------------------

# per-name column constraints: (eps, rho, d) with None meaning "any";
# eps/rho entries are booleans "is nonzero"
_ROW_CHECK = {
    "h1": (False, False, 0),
    "h8": (False, False, 1),
    "h3": (False, False, 1),
    "h6": (False, True, 2),
    "h4": (False, None, 2),
    "h2": (False, None, 2),
    "h5": (False, None, 2),
    "h9": (True, False, 1),
    "h7": (True, True, 2),
    "h10": (True, True, 2),
    "h11": (True, True, 2),
    "h12": (True, True, 2),
    "h16": (True, True, 2),
    "h13": (True, True, 2),
    "h14": (True, True, 2),
    "h15": (True, None, 2),
}


def identify_underlying(eq: ComplexStructureEq) -> str:
    """Name of the real algebra underlying the structure, per the invariant table."""
    red = reduce(eq)
    prof = invariants(red)
    n = prof.n
    s = prof.sign_disc
    z1 = prof.Delta1 == ZERO
    name = None
    if n == (6, 6):
        name = "h1"
    elif n == (5, 6):
        name = "h8" if z1 else "h3"
    elif n == (4, 6):
        if s > 0:
            name = "h2"
        elif s < 0:
            name = "h5"
        else:
            name = "h6" if z1 else "h4"
    elif n == (4, 5):
        name = "h9"
    elif n == (3, 6):
        name = "h7"
    elif n == (3, 5):
        if s > 0:
            name = "h12"
        elif s == 0:
            name = "h10" if z1 else "h11"
    elif n == (3, 4):
        if s < 0:
            name = "h15"
        elif s > 0:
            name = "h13"
        else:
            name = "h16" if z1 else "h14"
    if name is None:
        raise ProfileNotInTable(f"no table row matches n={n}, sign_disc={s}")
    eps_nz, rho_nz, d = _ROW_CHECK[name]
    if eps_nz is not None and (red.epsilon != ZERO) != eps_nz:
        raise ProfileNotInTable(f"{name}: epsilon column violated")
    if rho_nz is not None and (red.rho != ZERO) != rho_nz:
        raise ProfileNotInTable(f"{name}: rho column violated")
    if d is not None and prof.d_span != d:
        raise ProfileNotInTable(f"{name}: d column violated ({prof.d_span})")
    return name


# -- coframe predicates and adapted bases -------------------------------------------


def _cforms(g, ws):
    """(1,0)-coframe + conjugates as multivectors over g's space."""
    conj = [
        Multivector(g.space, {m: c.conj() for m, c in w.coeffs.items()}) for w in ws
    ]
    return list(ws), conj


def is_integrable_basis(g: LieAlgebra, ws) -> bool:
    """0 = d(w1 ^ ... ^ wp) for every p."""
    for p in range(1, len(ws) + 1):
        if not ce_d(g, wedge_all(ws[:p])).is_zero():
            return False
    return True


def is_nilpotent_basis(g: LieAlgebra, ws) -> bool:
    """dw^p in Lambda^2<w1..w^{p-1}, wb1..wb^{p-1}> for every p."""
    ws, conj = _cforms(g, ws)
    two = masks_of_degree(g.dim, 2)
    for p in range(len(ws)):
        gens = ws[:p] + conj[:p]
        span = Subspace(len(two))
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                span.add(coords(wedge(gens[i], gens[j]), two))
        if not span.contains(coords(ce_d(g, ws[p]), two)):
            return False
    return True


def is_abelian_basis(g: LieAlgebra, ws) -> bool:
    """0 = d(wb1 ^ ... ^ wb^{p-1} ^ w^p) for every p."""
    ws, conj = _cforms(g, ws)
    for p in range(len(ws)):
        if not ce_d(g, wedge_all(conj[:p] + [ws[p]])).is_zero():
            return False
    return True


def standard_J(dim=6):
    """J e_{2k-1} = e_{2k}: the matrix matching w^k = e^{2k-1} + i e^{2k}."""
    m = [[ZERO] * dim for _ in range(dim)]
    for k in range(dim // 2):
        m[2 * k + 1][2 * k] = ONE
        m[2 * k][2 * k + 1] = -ONE
    return m


def _nijenhuis_ok(g, j):
    n = g.dim
    cols = [[j[i][k] for i in range(n)] for k in range(n)]  # J e_k
    for a in range(n):
        for b in range(a + 1, n):
            ea = [ONE if i == a else ZERO for i in range(n)]
            eb = [ONE if i == b else ZERO for i in range(n)]
            ja, jb = cols[a], cols[b]
            t1 = g.bracket(ja, jb)
            t2 = _apply(j, g.bracket(ja, eb))
            t3 = _apply(j, g.bracket(ea, jb))
            t4 = g.bracket(ea, eb)
            if any(t1[i] - t2[i] - t3[i] - t4[i] for i in range(n)):
                return False
    return True


def _apply(m, v):
    return [sum((m[i][k] * v[k] for k in range(len(v))), ZERO) for i in range(len(v))]


def find_adapted_basis(g: LieAlgebra, j):
    """Filtration-adapted (1,0)-coframe for the almost complex structure j.

    j is a dim x dim matrix acting on vectors.  Raises NotIntegrable when the
    Nijenhuis tensor is nonzero, NotNilpotent when the ascending recursion
    stalls below full rank.
    """
    n = g.dim
    j = [[_s(c) for c in row] for row in j]
    j2 = mat_mul(j, j)
    if any(j2[a][b] != (-ONE if a == b else ZERO) for a in range(n) for b in range(n)):
        raise ValueError("j^2 != -1")
    if not _nijenhuis_ok(g, j):
        raise NotIntegrable("Nijenhuis tensor does not vanish")
    # (1,0)-forms: rows a with a(Jx) = i a(x), i.e. kernel of (J^T - i)
    jt_minus_i = [
        [j[b][a] - (I if a == b else ZERO) for b in range(n)] for a in range(n)
    ]
    v10 = LinearMap(jt_minus_i).kernel()
    two = masks_of_degree(n, 2)
    cur = Subspace(n)
    flag = []  # rows of the filtration, adapted
    while True:
        span2 = Subspace(len(two))
        forms = [from_coords(g.space, [1 << i for i in range(n)], row) for row in cur.rows]
        gens = forms + [
            Multivector(g.space, {m: c.conj() for m, c in f.coeffs.items()})
            for f in forms
        ]
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                span2.add(coords(wedge(gens[a], gens[b]), two))
        rows = []
        for vec in v10:
            f = from_coords(g.space, [1 << i for i in range(n)], vec)
            rows.append(span2.quotient_coords(coords(ce_d(g, f), two)))
        width = len(rows[0]) if rows and rows[0] else 0
        if width:
            mat = LinearMap([[rows[t][r] for t in range(len(v10))] for r in range(width)])
            ker = mat.kernel()
        else:
            ker = [[ONE if t == s else ZERO for t in range(len(v10))] for s in range(len(v10))]
        nxt = Subspace(n)
        for combo in ker:
            vec = [
                sum((combo[t] * v10[t][i] for t in range(len(v10))), ZERO)
                for i in range(n)
            ]
            nxt.add(vec)
        if nxt.dim == cur.dim:
            raise NotNilpotent(
                f"adapted filtration stalls at dim {cur.dim} < {n // 2}"
            )
        for row in nxt.rows:
            if Subspace.from_vectors(n, flag + [row]).dim == len(flag) + 1:
                flag.append(row)
        cur = nxt
        if cur.dim == n // 2:
            return [from_coords(g.space, [1 << i for i in range(n)], r) for r in flag]


def coframe_to_eq(g: LieAlgebra, ws) -> ComplexStructureEq:
    """Extract eq-shape constants from an adapted coframe on g."""
    n = g.dim
    two = masks_of_degree(n, 2)
    ws, conj = _cforms(g, ws)
    gens = ws + conj
    cols = []
    pairs = [(a, b) for a in range(6) for b in range(a + 1, 6)]
    for a, b in pairs:
        cols.append(coords(wedge(gens[a], gens[b]), two))
    m = LinearMap([[cols[c][r] for c in range(len(cols))] for r in range(len(two))])
    d1 = []
    for k in range(6):
        target = coords(ce_d(g, gens[k]), two)
        sol = m.solve(target)
        if sol is None:
            raise ValueError("coframe does not span: cannot express differentials")
        mv = Multivector.zero(CSPACE)
        for (a, b), c in zip(pairs, sol):
            if c:
                mv = mv + Multivector.mono(CSPACE, (a, b), c)
        d1.append(mv)
    return _extract_eq(LieAlgebra(CSPACE, d1, field="Qi"))
