"""Entwining structures and what they generate.

A right-right entwining (A, C, psi) is an algebra, a coalgebra, and a map
psi : C (x) A -> A (x) C satisfying four compatibility laws.  From a
verified entwining we build the coring A (x) C, the smash ring on
Hom(C, A) with the twisted multiplication, the isomorphism between the
smash ring and the left dual of the coring, and the category equivalence
between entwined modules and smash-ring modules, all checked exhaustively
on basis elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import (
    DimensionMismatch,
    Matrix,
    PresentationError,
    columns_of,
    kernel,
    kron,
    solve_linear,
    sparse_equal,
    sparse_render,
)
from . import report
from .report import Report
from .structures import (
    ModulePresentation,
    StructurePresentation,
    algebra_morphism_report,
    coalgebra_morphism_report,
    make_structure,
    verify_structure,
)


@dataclass(frozen=True)
class EntwiningPresentation:
    """(A, C, psi) with psi a matrix C (x) A -> A (x) C in the tensor basis."""

    algebra: StructurePresentation
    coalgebra: StructurePresentation
    psi: Matrix

    def __post_init__(self):
        na, nc = self.algebra.dim, self.coalgebra.dim
        if (self.psi.rows, self.psi.cols) != (na * nc, nc * na):
            raise DimensionMismatch(f"psi must be {na * nc}x{nc * na}")
        if self.algebra.field != self.coalgebra.field or self.psi.field != self.algebra.field:
            raise PresentationError("entwining components disagree on the field")

    @property
    def field(self):
        return self.algebra.field


def flip_entwining(a: StructurePresentation, c: StructurePresentation) -> EntwiningPresentation:
    """psi(c (x) a) = a (x) c, the trivial entwining."""
    from .exactlin import swap_matrix

    return EntwiningPresentation(a, c, swap_matrix(a.field, c.dim, a.dim))


def verify_entwining(e: EntwiningPresentation) -> Report:
    """The four entwining laws, exhaustively on basis pairs.

    Components must already be verified; this checks only the interaction
    of psi with multiplication, unit, comultiplication and counit.
    """
    a, c, psi = e.algebra, e.coalgebra, e.psi
    na, nc = a.dim, c.dim
    ida = Matrix.identity(e.field, na)
    idc = Matrix.identity(e.field, nc)
    checks = [
        ("psi-multiplicativity",
         psi @ kron(idc, a.mul),
         kron(a.mul, idc) @ kron(ida, psi) @ kron(psi, ida),
         (nc, na, na)),
        ("psi-unitality", psi @ kron(idc, a.unit), kron(a.unit, idc), (nc,)),
        ("psi-comultiplicativity",
         kron(ida, c.comul) @ psi,
         kron(psi, idc) @ kron(idc, psi) @ kron(c.comul, ida),
         (nc, na)),
        ("psi-counitality", kron(ida, c.counit) @ psi, kron(c.counit, ida), (nc, na)),
    ]
    return report.first_failure("verify_entwining", checks)


def verify_entwining_morphism(e: EntwiningPresentation, f: EntwiningPresentation,
                              gamma: Matrix, delta: Matrix) -> Report:
    """(gamma, delta) intertwines psi with Psi; component morphisms checked first."""
    rep = algebra_morphism_report(e.algebra, f.algebra, gamma)
    if not rep.passed:
        return report.fail("verify_entwining_morphism", f"gamma[{rep.axiom}]",
                           witness=rep.witness, lhs=rep.lhs, rhs=rep.rhs)
    rep = coalgebra_morphism_report(e.coalgebra, f.coalgebra, delta)
    if not rep.passed:
        return report.fail("verify_entwining_morphism", f"delta[{rep.axiom}]",
                           witness=rep.witness, lhs=rep.lhs, rhs=rep.rhs)
    lhs = kron(gamma, delta) @ e.psi
    rhs = f.psi @ kron(delta, gamma)
    bad = report.compare("verify_entwining_morphism", "intertwining", lhs, rhs,
                         (e.coalgebra.dim, e.algebra.dim))
    return bad if bad is not None else report.ok("verify_entwining_morphism")


# ---------------------------------------------------------------------------
# the coring A (x) C


@dataclass(frozen=True)
class CoringPresentation:
    """The comonoid A (x) C in A-bimodules, written on the plain tensor space.

    The comultiplication is stored as a map into (A (x) C) (x) (A (x) C);
    equalities that only hold over A are checked modulo the balancing
    subspace spanned by (x.a) (x) y - x (x) (a.y).
    """

    entwining: EntwiningPresentation
    dim: int
    left_action: Matrix   # A (x) V -> V
    right_action: Matrix  # V (x) A -> V
    comul: Matrix         # V -> V (x) V
    counit: Matrix        # V -> A

    @property
    def field(self):
        return self.entwining.field


def build_coring(e: EntwiningPresentation) -> CoringPresentation:
    """Assemble and verify the coring carried by an entwining."""
    a, c, psi = e.algebra, e.coalgebra, e.psi
    na, nc = a.dim, c.dim
    f = e.field
    ida = Matrix.identity(f, na)
    idc = Matrix.identity(f, nc)
    n = na * nc
    idv = Matrix.identity(f, n)
    left = kron(a.mul, idc)                      # a (a~ (x) c) = a a~ (x) c
    right = kron(a.mul, idc) @ kron(ida, psi)    # (a~ (x) c) a through psi
    comul = kron(idv, kron(a.unit, idc)) @ kron(ida, c.comul)
    counit = kron(ida, c.counit)
    coring = CoringPresentation(e, n, left, right, comul, counit)
    rep = verify_coring(coring)
    if not rep.passed:
        raise report.CheckError(rep)
    return coring


def _combine(cols, vec: dict, field) -> dict:
    """Linear combination sum vec[j] * cols[j], all sparse."""
    add, mul, is_zero = field.add, field.mul, field.is_zero
    out: dict = {}
    zero = field.zero()
    for j, v in vec.items():
        for i, w in cols[j].items():
            s = add(out.get(i, zero), mul(v, w))
            if is_zero(s):
                out.pop(i, None)
            else:
                out[i] = s
    return out


def _expect_sparse(op, axiom, witness, lhs: dict, rhs: dict, field):
    if not sparse_equal(lhs, rhs, field):
        raise report.CheckError(report.fail(
            op, axiom, witness=witness,
            lhs=sparse_render(lhs, field), rhs=sparse_render(rhs, field)))


def verify_coring(coring: CoringPresentation) -> Report:
    """Bimodule laws, coassociativity, counit laws and balanced bilinearity.

    Everything is evaluated on basis elements with sparse columns, so the
    check scales past the point where the iterated tensor matrices would.
    Right linearity of the comultiplication only holds modulo the
    balancing relations (x.a) (x) y - x (x) (a.y); it is certified by
    exhibiting the explicit combination of relations that closes the gap.
    """
    e = coring.entwining
    a = e.algebra
    f = coring.field
    n, na, nc = coring.dim, a.dim, e.coalgebra.dim
    op = "verify_coring"
    la = columns_of(coring.left_action)     # column (j, t) = j * n + t
    ra = columns_of(coring.right_action)    # column (t, j) = t * na + j
    dl = columns_of(coring.comul)
    eps = columns_of(coring.counit)         # dicts over A
    amul = columns_of(a.mul)
    aunit = {i: v for i, v in enumerate(a.unit.col(0)) if not f.is_zero(v)}
    comul_c = columns_of(e.coalgebra.comul)
    psi = columns_of(e.psi)
    unit_vec = aunit
    try:
        for j1 in range(na):
            for j2 in range(na):
                prod = amul[j1 * na + j2]
                for t in range(n):
                    lhs = _combine(la[j1 * n:(j1 + 1) * n], la[j2 * n + t], f)
                    rhs = _combine([la[x * n + t] for x in range(na)], prod, f)
                    _expect_sparse(op, "left-action-associativity", (j1, j2, t), lhs, rhs, f)
                    lhs = {}
                    for x, v in ra[t * na + j1].items():
                        for i, w in ra[x * na + j2].items():
                            s = f.add(lhs.get(i, f.zero()), f.mul(v, w))
                            if f.is_zero(s):
                                lhs.pop(i, None)
                            else:
                                lhs[i] = s
                    rhs = _combine([ra[t * na + x] for x in range(na)], prod, f)
                    _expect_sparse(op, "right-action-associativity", (t, j1, j2), lhs, rhs, f)
        for t in range(n):
            lhs = _combine([la[j * n + t] for j in range(na)], aunit, f)
            _expect_sparse(op, "left-action-unit", (t,), lhs, {t: f.one()}, f)
            lhs = _combine(ra[t * na:(t + 1) * na], aunit, f)
            _expect_sparse(op, "right-action-unit", (t,), lhs, {t: f.one()}, f)
        for j1 in range(na):
            for t in range(n):
                for j2 in range(na):
                    lhs = _combine(ra, {x * na + j2: v for x, v in la[j1 * n + t].items()}, f)
                    rhs = _combine(la[j1 * n:(j1 + 1) * n], ra[t * na + j2], f)
                    _expect_sparse(op, "bimodule-compatibility", (j1, t, j2), lhs, rhs, f)
        for t in range(n):
            base = dl[t]
            lhs: dict = {}
            rhs: dict = {}
            for pq, v in base.items():
                p, q = divmod(pq, n)
                for rs, w in dl[p].items():
                    lhs[rs * n + q] = f.add(lhs.get(rs * n + q, f.zero()), f.mul(v, w))
                for rs, w in dl[q].items():
                    rhs[p * n * n + rs] = f.add(rhs.get(p * n * n + rs, f.zero()), f.mul(v, w))
            _expect_sparse(op, "coassociativity", (t,), lhs, rhs, f)
            lhs = {}
            for pq, v in base.items():
                p, q = divmod(pq, n)
                for aidx, w in eps[p].items():
                    for i, u in la[aidx * n + q].items():
                        key = i
                        lhs[key] = f.add(lhs.get(key, f.zero()), f.mul(v, f.mul(w, u)))
            _expect_sparse(op, "left-counit", (t,), {k: v for k, v in lhs.items() if not f.is_zero(v)},
                           {t: f.one()}, f)
            lhs = {}
            for pq, v in base.items():
                p, q = divmod(pq, n)
                for aidx, w in eps[q].items():
                    for i, u in ra[p * na + aidx].items():
                        lhs[i] = f.add(lhs.get(i, f.zero()), f.mul(v, f.mul(w, u)))
            _expect_sparse(op, "right-counit", (t,), {k: v for k, v in lhs.items() if not f.is_zero(v)},
                           {t: f.one()}, f)
        for j in range(na):
            for t in range(n):
                lhs = _combine(dl, la[j * n + t], f)
                rhs: dict = {}
                for pq, v in dl[t].items():
                    p, q = divmod(pq, n)
                    for y, w in la[j * n + p].items():
                        key = y * n + q
                        rhs[key] = f.add(rhs.get(key, f.zero()), f.mul(v, w))
                _expect_sparse(op, "comul-left-linear", (j, t),
                               lhs, {k: v for k, v in rhs.items() if not f.is_zero(v)}, f)
                lhs = _combine(eps, la[j * n + t], f)
                rhs = _combine([amul[j * na + x] for x in range(na)], eps[t], f)
                _expect_sparse(op, "counit-left-linear", (j, t), lhs, rhs, f)
                lhs = _combine(eps, ra[t * na + j], f)
                rhs = _combine([amul[x * na + j] for x in range(na)], eps[t], f)
                _expect_sparse(op, "counit-right-linear", (t, j), lhs, rhs, f)
        # comul(x.b) - comul(x).b must be a combination of balancing relations
        # (y.a) (x) z - y (x) (a.z); the combination is written down explicitly.
        for t in range(n):
            ia, ic = divmod(t, nc)
            for j in range(na):
                diff = _combine(dl, ra[t * na + j], f)
                for pq, v in dl[t].items():
                    p, q = divmod(pq, n)
                    for y, w in ra[q * na + j].items():
                        key = p * n + y
                        s = f.sub(diff.get(key, f.zero()), f.mul(v, w))
                        if f.is_zero(s):
                            diff.pop(key, None)
                        else:
                            diff[key] = s
                cert: dict = {}

                def _acc(key, val):
                    s = f.add(cert.get(key, f.zero()), val)
                    if f.is_zero(s):
                        cert.pop(key, None)
                    else:
                        cert[key] = s

                for c1c2, v in comul_c[ic].items():
                    c1, c2 = divmod(c1c2, nc)
                    y = ia * nc + c1
                    for bc, w in psi[c2 * na + j].items():
                        bprime, c2prime = divmod(bc, nc)
                        coeff = f.mul(v, w)
                        for u, uv in unit_vec.items():
                            z = u * nc + c2prime
                            for y2, w2 in ra[y * na + bprime].items():
                                _acc(y2 * n + z, f.mul(coeff, f.mul(uv, w2)))
                            for z2, w3 in la[bprime * n + z].items():
                                _acc(y * n + z2, f.neg(f.mul(coeff, f.mul(uv, w3))))
                _expect_sparse(op, "comul-right-linear-mod-balancing", (t, j), diff, cert, f)
    except report.CheckError as exc:
        return exc.report
    return report.ok(op)


# ---------------------------------------------------------------------------
# the smash ring on Hom(C, A)


@dataclass(frozen=True)
class SmashRing:
    """Hom(C, A) with the psi-twisted opposite multiplication.

    Basis index idx(x, u) = x * dim_C + u is the map sending c_u to a_x;
    a vector of coefficients is the same thing as an A-valued matrix on C,
    so elements convert to and from dim_A x dim_C matrices by reshaping.
    """

    entwining: EntwiningPresentation
    dim: int
    mul: Matrix           # S (x) S -> S structure constants
    unit: Matrix          # column in S coordinates
    left_action: Matrix   # A (x) S -> S
    right_action: Matrix  # S (x) A -> S

    @property
    def field(self):
        return self.entwining.field

    def as_map(self, v: Matrix) -> Matrix:
        """S-coordinates column -> matrix C -> A."""
        a, c = self.entwining.algebra, self.entwining.coalgebra
        return Matrix(self.field, a.dim, c.dim, v.col(0))

    def from_map(self, m: Matrix) -> Matrix:
        a, c = self.entwining.algebra, self.entwining.coalgebra
        if (m.rows, m.cols) != (a.dim, c.dim):
            raise DimensionMismatch(f"expected {a.dim}x{c.dim} map")
        return Matrix.column(self.field, m.data)

    def as_algebra(self) -> StructurePresentation:
        labels = tuple(f"E{x}_{u}" for x in range(self.entwining.algebra.dim)
                       for u in range(self.entwining.coalgebra.dim))
        return make_structure("algebra", self.field, self.dim, labels,
                              mul=self.mul, unit=self.unit)


def smash_product_map(e: EntwiningPresentation, f: Matrix, g: Matrix) -> Matrix:
    """(f . g)(c) = sum f(c_2)_psi g(c_1^psi), for f, g : C -> A."""
    a, c = e.algebra, e.coalgebra
    ida = Matrix.identity(e.field, a.dim)
    idc = Matrix.identity(e.field, c.dim)
    return a.mul @ kron(ida, g) @ e.psi @ kron(idc, f) @ c.comul


def build_smash(e: EntwiningPresentation) -> SmashRing:
    """Assemble the twisted ring on Hom(C, A) and verify it exhaustively."""
    a, c = e.algebra, e.coalgebra
    na, nc = a.dim, c.dim
    f = e.field
    n = na * nc
    ida = Matrix.identity(f, na)
    idc = Matrix.identity(f, nc)
    units = [Matrix(f, na, nc, [f.one() if t == s else f.zero() for t in range(n)]) for s in range(n)]
    # (f.g) = mul . (id (x) g) . psi . (id (x) f) . comul; the part up to g
    # depends on f alone, so it is hoisted out of the pair loop
    right_parts = [e.psi @ kron(idc, units[s]) @ c.comul for s in range(n)]
    left_parts = [a.mul @ kron(ida, units[s]) for s in range(n)]
    mul_cols = []
    for s1 in range(n):
        rp = right_parts[s1]
        for s2 in range(n):
            mul_cols.append((left_parts[s2] @ rp).vec())
    mul = Matrix.from_rows(f, mul_cols).transpose()
    unit = Matrix.column(f, (a.unit @ c.counit).vec())
    lact_cols = []
    for j in range(na):
        psi_aj = e.psi @ kron(idc, Matrix.basis_column(f, na, j))
        for s in range(n):
            lact_cols.append((left_parts[s] @ psi_aj).vec())
    lact = Matrix.from_rows(f, lact_cols).transpose()
    ract_cols = []
    for s in range(n):
        for j in range(na):
            aj = Matrix.basis_column(f, na, j)
            ract_cols.append((a.mul @ kron(ida, aj) @ units[s]).vec())
    ract = Matrix.from_rows(f, ract_cols).transpose()
    smash = SmashRing(e, n, mul, unit, lact, ract)
    rep = verify_smash(smash)
    if not rep.passed:
        raise report.CheckError(rep)
    return smash


def verify_smash(s: SmashRing) -> Report:
    """Associativity, unit laws, and the A-ring axioms, on all basis tuples."""
    f = s.field
    n = s.dim
    a = s.entwining.algebra
    na = a.dim
    op = "verify_smash"
    mul = columns_of(s.mul)        # column (r, t) = r * n + t
    la = columns_of(s.left_action)   # column (j, t) = j * n + t
    ra = columns_of(s.right_action)  # column (t, j) = t * na + j
    amul = columns_of(a.mul)
    unit = {i: v for i, v in enumerate(s.unit.col(0)) if not f.is_zero(v)}
    aunit = {i: v for i, v in enumerate(a.unit.col(0)) if not f.is_zero(v)}

    def smul(vec, t):
        return _combine([mul[x * n + t] for x in range(n)], vec, f)

    def smul_right(r, vec):
        return _combine(mul[r * n:(r + 1) * n], vec, f)

    try:
        for r in range(n):
            for t in range(n):
                prod = mul[r * n + t]
                for u in range(n):
                    _expect_sparse(op, "associativity", (r, t, u),
                                   smul(prod, u), smul_right(r, mul[t * n + u]), f)
        for t in range(n):
            _expect_sparse(op, "left-unit", (t,), smul(unit, t), {t: f.one()}, f)
            _expect_sparse(op, "right-unit", (t,), smul_right(t, unit), {t: f.one()}, f)
            _expect_sparse(op, "left-action-unit", (t,),
                           _combine([la[j * n + t] for j in range(na)], aunit, f), {t: f.one()}, f)
            _expect_sparse(op, "right-action-unit", (t,),
                           _combine(ra[t * na:(t + 1) * na], aunit, f), {t: f.one()}, f)
        for j1 in range(na):
            for j2 in range(na):
                prod = amul[j1 * na + j2]
                for t in range(n):
                    lhs = _combine(la[j1 * n:(j1 + 1) * n], la[j2 * n + t], f)
                    rhs = _combine([la[x * n + t] for x in range(na)], prod, f)
                    _expect_sparse(op, "left-action-module", (j1, j2, t), lhs, rhs, f)
                    lhs = _combine(ra, {x * na + j2: v for x, v in ra[t * na + j1].items()}, f)
                    rhs = _combine(ra[t * na:(t + 1) * na], prod, f)
                    _expect_sparse(op, "right-action-module", (t, j1, j2), lhs, rhs, f)
        for j1 in range(na):
            for t in range(n):
                for j2 in range(na):
                    lhs = _combine(ra, {x * na + j2: v for x, v in la[j1 * n + t].items()}, f)
                    rhs = _combine(la[j1 * n:(j1 + 1) * n], ra[t * na + j2], f)
                    _expect_sparse(op, "bimodule-compatibility", (j1, t, j2), lhs, rhs, f)
        for j in range(na):
            for r in range(n):
                for t in range(n):
                    lhs = smul(la[j * n + r], t)
                    rhs = _combine(la[j * n:(j + 1) * n], mul[r * n + t], f)
                    _expect_sparse(op, "mul-left-linear", (j, r, t), lhs, rhs, f)
                    lhs = _combine(ra, {x * na + j: v for x, v in mul[r * n + t].items()}, f)
                    rhs = smul_right(r, ra[t * na + j])
                    _expect_sparse(op, "mul-right-linear", (r, t, j), lhs, rhs, f)
                    lhs = smul(ra[r * na + j], t)
                    rhs = smul_right(r, la[j * n + t])
                    _expect_sparse(op, "mul-balanced", (r, j, t), lhs, rhs, f)
        for j in range(na):
            lhs = _combine(la[j * n:(j + 1) * n], unit, f)
            rhs = _combine(ra, {x * na + j: v for x, v in unit.items()}, f)
            _expect_sparse(op, "unit-central", (j,), lhs, rhs, f)
    except report.CheckError as exc:
        return exc.report
    return report.ok(op)


# ---------------------------------------------------------------------------
# the smash ring as the left dual of the coring


@dataclass(frozen=True)
class NuIso:
    """The mutually inverse maps between the smash ring and Hom_{A-}(coring, A).

    nu sends f to a (x) c -> a f(c); elements of the left dual are stored
    as full matrices A (x) C -> A, and nu/nu_inv are the matrices of the
    two linear maps on flattened coordinates.
    """

    smash: SmashRing
    coring: CoringPresentation
    nu: Matrix
    nu_inv: Matrix
    left_dual_basis: tuple[Matrix, ...]


def nu_map(e: EntwiningPresentation, f: Matrix) -> Matrix:
    """nu(f) : a (x) c -> a f(c) as a dim_A x (dim_A * dim_C) matrix."""
    a = e.algebra
    return a.mul @ kron(Matrix.identity(e.field, a.dim), f)


def nu_inv_map(e: EntwiningPresentation, h: Matrix) -> Matrix:
    """nu^{-1}(h) : c -> h(1_A (x) c)."""
    a, c = e.algebra, e.coalgebra
    return h @ kron(a.unit, Matrix.identity(e.field, c.dim))


def left_star_product(coring: CoringPresentation, f: Matrix, g: Matrix) -> Matrix:
    """(f *_l g)(x) = sum g(x_1 f(x_2)) on the left dual of the coring.

    The comultiplication's second leg always has the form 1 (x) c_2, so
    (id (x) f) . comul factors through f(1 (x) -); that keeps the
    intermediate spaces no bigger than V (x) A.
    """
    e = coring.entwining
    a, c = e.algebra, e.coalgebra
    fld = coring.field
    ida = Matrix.identity(fld, a.dim)
    idc = Matrix.identity(fld, c.dim)
    f_res = f @ kron(a.unit, idc)           # c -> f(1 (x) c)
    spread = kron(ida, kron(idc, f_res) @ c.comul)   # x -> sum x_1 (x) f(x_2)
    return g @ coring.right_action @ spread


def nu_iso(e: EntwiningPresentation) -> NuIso:
    """Build nu and its inverse and verify every claimed identity.

    Checks: nu inverts on both sides, its image consists of left A-linear
    maps (any left A-linear h equals nu(nu_inv(h)) pointwise, since
    h(a (x) c) = a.h(1 (x) c), so the image is the whole left dual), it
    takes the smash multiplication to the *_l product, preserves units,
    and is A-bilinear.  Raises CheckError if anything fails.
    """
    smash = build_smash(e)
    coring = build_coring(e)
    a = e.algebra
    na = a.dim
    f = e.field
    n = smash.dim
    ida = Matrix.identity(f, na)
    nu_images = [nu_map(e, smash.as_map(Matrix.basis_column(f, n, s))) for s in range(n)]
    nu = Matrix.from_rows(f, [h.vec() for h in nu_images]).transpose()
    nu_inv_cols = []
    for t in range(na * n):
        h = Matrix(f, na, n, [f.one() if i == t else f.zero() for i in range(na * n)])
        nu_inv_cols.append(nu_inv_map(e, h).vec())
    nu_inv = Matrix.from_rows(f, nu_inv_cols).transpose()
    idn = Matrix.identity(f, n)
    bad = report.compare("nu_iso", "nu-inv-nu", nu_inv @ nu, idn, (n,))
    if bad is not None:
        raise report.CheckError(bad)
    for s, img in enumerate(nu_images):
        diff = img @ coring.left_action - a.mul @ kron(ida, img)
        if not diff.is_zero():
            raise report.CheckError(report.fail("nu_iso", "nu-image-left-linear", witness=(s,)))
        back = nu_map(e, nu_inv_map(e, img))
        if back != img:
            raise report.CheckError(report.fail("nu_iso", "nu-nu-inv", witness=(s,)))
    # multiplicativity into *_l and unit preservation
    mul_cols = columns_of(smash.mul)
    for s1 in range(n):
        for s2 in range(n):
            prod_vec = mul_cols[s1 * n + s2]
            lhs = None
            for x, v in sorted(prod_vec.items()):
                term = nu_images[x].scale(v)
                lhs = term if lhs is None else lhs + term
            if lhs is None:
                lhs = Matrix.zeros(f, na, na * e.coalgebra.dim)
            rhs = left_star_product(coring, nu_images[s1], nu_images[s2])
            if lhs != rhs:
                raise report.CheckError(report.fail("nu_iso", "nu-multiplicative", witness=(s1, s2)))
    if nu_map(e, smash.as_map(smash.unit)) != coring.counit:
        raise report.CheckError(report.fail("nu_iso", "nu-unit"))
    # A-bilinearity: nu(a f) = a nu(f) and nu(f a) = nu(f) a on the left dual
    for j in range(na):
        aj = Matrix.basis_column(f, na, j)
        for s in range(n):
            fs = Matrix.basis_column(f, n, s)
            af = smash.as_map(smash.left_action @ kron(aj, fs))
            lhs = nu_map(e, af)
            rhs = nu_images[s] @ coring.right_action @ kron(idn, aj)
            if lhs != rhs:
                raise report.CheckError(report.fail("nu_iso", "nu-left-linear", witness=(j, s)))
            fa = smash.as_map(smash.right_action @ kron(fs, aj))
            lhs = nu_map(e, fa)
            rhs = a.mul @ kron(nu_images[s], aj)
            if lhs != rhs:
                raise report.CheckError(report.fail("nu_iso", "nu-right-linear", witness=(s, j)))
    return NuIso(smash, coring, nu, nu_inv, tuple(nu_images))


# ---------------------------------------------------------------------------
# entwined modules


@dataclass(frozen=True)
class EntwinedModulePresentation:
    """A right A-module and right C-comodule tied together by psi."""

    entwining: EntwiningPresentation
    dim: int
    action: Matrix    # M (x) A -> M
    coaction: Matrix  # M -> M (x) C

    def __post_init__(self):
        na, nc = self.entwining.algebra.dim, self.entwining.coalgebra.dim
        if (self.action.rows, self.action.cols) != (self.dim, self.dim * na):
            raise DimensionMismatch("action must be dim x (dim * dim_A)")
        if (self.coaction.rows, self.coaction.cols) != (self.dim * nc, self.dim):
            raise DimensionMismatch("coaction must be (dim * dim_C) x dim")

    def as_module(self) -> ModulePresentation:
        return ModulePresentation(self.dim, self.entwining.algebra, self.action, "right",
                                  self.entwining.coalgebra, self.coaction, "right")


def verify_entwined_module(e: EntwiningPresentation, m: EntwinedModulePresentation) -> Report:
    """Module and comodule laws, then the psi-compatibility on basis pairs."""
    rep = verify_structure("module", m.as_module())
    if not rep.passed:
        return report.fail("verify_entwined_module", f"action[{rep.axiom}]",
                           witness=rep.witness, lhs=rep.lhs, rhs=rep.rhs)
    rep = verify_structure("comodule", m.as_module())
    if not rep.passed:
        return report.fail("verify_entwined_module", f"coaction[{rep.axiom}]",
                           witness=rep.witness, lhs=rep.lhs, rhs=rep.rhs)
    na, nc = e.algebra.dim, e.coalgebra.dim
    f = e.field
    idm = Matrix.identity(f, m.dim)
    ida = Matrix.identity(f, na)
    idc = Matrix.identity(f, nc)
    lhs = m.coaction @ m.action
    rhs = kron(m.action, idc) @ kron(idm, e.psi) @ kron(m.coaction, ida)
    bad = report.compare("verify_entwined_module", "psi-compatibility", lhs, rhs, (m.dim, na))
    return bad if bad is not None else report.ok("verify_entwined_module")


def entwined_to_smash_module(e: EntwiningPresentation, m: EntwinedModulePresentation,
                             smash: SmashRing | None = None) -> ModulePresentation:
    """m . f = sum m_0 f(m_1), the smash-ring action carried by an entwined module."""
    smash = smash or build_smash(e)
    f = e.field
    nc = e.coalgebra.dim
    idm = Matrix.identity(f, m.dim)
    cols = []
    for i in range(m.dim):
        mi = Matrix.basis_column(f, m.dim, i)
        for s in range(smash.dim):
            fmat = smash.as_map(Matrix.basis_column(f, smash.dim, s))
            v = m.action @ kron(idm, fmat) @ m.coaction @ mi
            cols.append(v.col(0))
    action = Matrix.from_rows(f, cols).transpose()
    return ModulePresentation(m.dim, smash.as_algebra(), action, "right")


def smash_unit_embedding(e: EntwiningPresentation, smash: SmashRing) -> Matrix:
    """The ring map A -> S, a -> a . 1_S (equal to 1_S . a)."""
    f = e.field
    na = e.algebra.dim
    cols = []
    for j in range(na):
        aj = Matrix.basis_column(f, na, j)
        cols.append((smash.left_action @ kron(aj, smash.unit)).col(0))
    return Matrix.from_rows(f, cols).transpose()


def smash_module_to_entwined(e: EntwiningPresentation, m: ModulePresentation,
                             smash: SmashRing | None = None) -> EntwinedModulePresentation:
    """Recover the entwined structure of a smash-ring module.

    The A-action restricts along a -> a . 1_S; the coaction is the unique
    solution of alpha(rho(m)) through the canonical injection
    M (x) C -> Hom(S, M), m (x) c -> (f -> m f(c)).
    """
    smash = smash or build_smash(e)
    if m.algebra is None or m.action_side != "right" or m.algebra.dim != smash.dim:
        raise PresentationError("expected a right module over the smash ring")
    f = e.field
    na, nc = e.algebra.dim, e.coalgebra.dim
    n, ns = m.dim, smash.dim
    emb = smash_unit_embedding(e, smash)
    # restricted A-action
    act_cols = []
    for i in range(n):
        mi = Matrix.basis_column(f, n, i)
        for j in range(na):
            s_img = emb @ Matrix.basis_column(f, na, j)
            act_cols.append((m.action @ kron(mi, s_img)).col(0))
    action = Matrix.from_rows(f, act_cols).transpose()
    # alpha : M (x) C -> Hom(S, M), m (x) c -> (f -> m f(c)), coordinates (r, s)
    zero = f.zero()
    cols = []
    for k in range(n):
        for u in range(nc):
            col = [zero] * (n * ns)
            for s in range(ns):
                x, su = divmod(s, nc)
                if su != u:
                    continue
                for r in range(n):
                    col[r * ns + s] = action[r, k * na + x]
            cols.append(col)
    alpha_m = Matrix.from_rows(f, cols).transpose()
    if kernel(alpha_m).dim != 0:
        raise PresentationError("alpha map is not injective; cannot recover a coaction")
    rho_cols = []
    for k in range(n):
        col = [zero] * (n * ns)
        for s in range(ns):
            for r in range(n):
                col[r * ns + s] = m.action[r, k * ns + s]
        rho_cols.append(col)
    rho = Matrix.from_rows(f, rho_cols).transpose()
    sol = solve_linear(alpha_m, rho)
    if sol is None:
        raise PresentationError("module is not rational over the smash ring")
    coaction = sol.particular
    out = EntwinedModulePresentation(e, n, action, coaction)
    rep = verify_entwined_module(e, out)
    if not rep.passed:
        raise report.CheckError(rep)
    return out


def entwined_smash_roundtrip(e: EntwiningPresentation, m, direction: str):
    """Cross the category equivalence once: 'to_smash' or 'to_entwined'."""
    if direction == "to_smash":
        return entwined_to_smash_module(e, m)
    if direction == "to_entwined":
        return smash_module_to_entwined(e, m)
    raise PresentationError(f"unknown direction {direction!r}")


# ---------------------------------------------------------------------------
# morphisms of entwined modules


def hom_entwined(e: EntwiningPresentation, m: EntwinedModulePresentation,
                 n: EntwinedModulePresentation, f: Matrix) -> Report:
    """Is f : M -> N both A-linear and C-colinear?"""
    if (f.rows, f.cols) != (n.dim, m.dim):
        raise DimensionMismatch(f"morphism must be {n.dim}x{m.dim}")
    na, nc = e.algebra.dim, e.coalgebra.dim
    ida = Matrix.identity(e.field, na)
    idc = Matrix.identity(e.field, nc)
    checks = [
        ("a-linearity", f @ m.action, n.action @ kron(f, ida), (m.dim, na)),
        ("c-colinearity", n.coaction @ f, kron(f, idc) @ m.coaction, (m.dim,)),
    ]
    return report.first_failure("hom_entwined", checks)


def hom_entwined_basis(e: EntwiningPresentation, m: EntwinedModulePresentation,
                       n: EntwinedModulePresentation) -> tuple[Matrix, ...]:
    """Canonical basis of Hom_A^C(M, N), by solving the joint linear system."""
    na, nc = e.algebra.dim, e.coalgebra.dim
    f = e.field
    ida = Matrix.identity(f, na)
    idc = Matrix.identity(f, nc)
    cols = []
    for t in range(n.dim * m.dim):
        unit = Matrix(f, n.dim, m.dim, [f.one() if i == t else f.zero() for i in range(n.dim * m.dim)])
        lin = unit @ m.action - n.action @ kron(unit, ida)
        colin = n.coaction @ unit - kron(unit, idc) @ m.coaction
        cols.append(lin.vec() + colin.vec())
    system = Matrix.from_rows(f, cols).transpose()
    sols = kernel(system)
    return tuple(Matrix(f, n.dim, m.dim, sols.basis.row(i)) for i in range(sols.dim))
