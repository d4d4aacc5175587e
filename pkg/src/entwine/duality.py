"""Dual entwining structures and dual entwined modules.

Given a verified entwining (A, C, psi), a subalgebra of C* containing the
counit and a subcoalgebra of A* that psi* maps into each other induce a
dual entwining on the chosen subobjects.  In finite dimension the full
duals always work; proper subobjects are accepted but must pass the
closure check, and a failure is reported with the witness pair rather
than silently patched.

The module-level functors send an entwined module M to the rational part
of M* over the dual data and back; the two directions are mutually
adjoint, which adjunction_check verifies literally on computed Hom bases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import Matrix, PresentationError, Subspace, kron, solve_linear
from . import report
from .report import ClosureViolation, Report
from .structures import (
    ModulePresentation,
    PairingPresentation,
    StructurePresentation,
    coaction_to_dual_action,
    dual_action_on_dual,
    make_structure,
    rational_submodule,
    require_alpha,
    verify_measuring_pairing,
    verify_structure,
)
from .entwining import (
    EntwinedModulePresentation,
    EntwiningPresentation,
    hom_entwined,
    hom_entwined_basis,
    verify_entwined_module,
    verify_entwining,
    verify_entwining_morphism,
)


def _coords_in_rows(basis: Matrix, row: tuple) -> Matrix | None:
    """Coefficients over the given basis rows, or None if outside their span."""
    target = Matrix.column(basis.field, row)
    sol = solve_linear(basis.transpose(), target)
    return None if sol is None else sol.particular


def restrict_dual_algebra(c: StructurePresentation, basis: Matrix) -> StructurePresentation:
    """The subalgebra of the convolution algebra C* spanned by the given rows.

    Requires the counit (the unit of C*) in the span and closure under
    convolution; the structure constants come back in the given basis.
    """
    k = basis.rows
    f = basis.field
    if basis.cols != c.dim:
        raise PresentationError("basis rows must be functionals on C")
    unit_coords = _coords_in_rows(basis, c.counit.row(0))
    if unit_coords is None:
        raise PresentationError("subalgebra of C* must contain the counit")
    mul_cols = []
    for i in range(k):
        for j in range(k):
            prod = kron(basis.row_matrix(i), basis.row_matrix(j)) @ c.comul
            coords = _coords_in_rows(basis, prod.row(0))
            if coords is None:
                raise PresentationError(f"not closed under convolution at basis pair ({i}, {j})")
            mul_cols.append(coords.col(0))
    mul = Matrix.from_rows(f, mul_cols).transpose()
    return make_structure("algebra", f, k, tuple(f"u{i}" for i in range(k)),
                          mul=mul, unit=unit_coords)


def restrict_dual_coalgebra(a: StructurePresentation, basis: Matrix) -> StructurePresentation:
    """The subcoalgebra of A* spanned by the given rows (closure checked)."""
    k = basis.rows
    f = basis.field
    if basis.cols != a.dim:
        raise PresentationError("basis rows must be functionals on A")
    pair_basis = kron(basis, basis)
    comul_cols = []
    for i in range(k):
        cop = basis.row_matrix(i) @ a.mul
        coords = _coords_in_rows(pair_basis, cop.row(0))
        if coords is None:
            raise PresentationError(f"not a subcoalgebra of the dual at basis row {i}")
        comul_cols.append(coords.col(0))
    comul = Matrix.from_rows(f, comul_cols).transpose()
    counit = Matrix(f, 1, k, [ (basis.row_matrix(i) @ a.unit)[0, 0] for i in range(k) ])
    return make_structure("coalgebra", f, k, tuple(f"v{i}" for i in range(k)),
                          comul=comul, counit=counit)


@dataclass(frozen=True)
class DualDatum:
    """A dual entwining: the chosen subobjects, the induced map, and the
    verified entwining they form."""

    source: EntwiningPresentation
    atil_basis: Matrix   # rows: functionals on C spanning the dual algebra
    ctil_basis: Matrix   # rows: functionals on A spanning the dual coalgebra
    atil: StructurePresentation
    ctil: StructurePresentation
    phi: Matrix
    dual: EntwiningPresentation

    def pairing_a_ctil(self) -> PairingPresentation:
        """<a, f~> = f~(a), the measuring pairing of A against the dual coalgebra."""
        return PairingPresentation(self.source.algebra, self.ctil, self.ctil_basis.transpose())

    def pairing_atil_c(self) -> PairingPresentation:
        """<g~, c> = g~(c), the pairing of the dual algebra against C."""
        return PairingPresentation(self.atil, self.source.coalgebra, self.atil_basis)


def dual_entwining(e: EntwiningPresentation, atil_basis: Matrix | None = None,
                   ctil_basis: Matrix | None = None) -> DualDatum:
    """Construct and verify the dual entwining on (A~, C~).

    Defaults to the full duals A~ = C*, C~ = A*, which always close in
    finite dimension.  For proper subobjects the closure of psi* is
    tested on every basis pair and a violation raises ClosureViolation
    with the witness pair.
    """
    a, c, psi = e.algebra, e.coalgebra, e.psi
    f = e.field
    if atil_basis is None:
        atil_basis = Matrix.identity(f, c.dim)
    if ctil_basis is None:
        ctil_basis = Matrix.identity(f, a.dim)
    atil = restrict_dual_algebra(c, atil_basis)
    ctil = restrict_dual_coalgebra(a, ctil_basis)
    target = kron(atil_basis, ctil_basis)
    phi_cols = []
    for i in range(ctil.dim):
        for j in range(atil.dim):
            row = kron(ctil_basis.row_matrix(i), atil_basis.row_matrix(j)) @ psi
            coords = _coords_in_rows(target, row.row(0))
            if coords is None:
                raise ClosureViolation(report.fail(
                    "dual_entwining", "closure-violated", witness=(i, j),
                    lhs=row.render(), rhs="span(A~ (x) C~)"))
            phi_cols.append(coords.col(0))
    phi = Matrix.from_rows(f, phi_cols).transpose()
    dual = EntwiningPresentation(atil, ctil, phi)
    for rep in (verify_structure(None, atil), verify_structure(None, ctil),
                verify_measuring_pairing(PairingPresentation(a, ctil, ctil_basis.transpose())),
                verify_measuring_pairing(PairingPresentation(atil, c, atil_basis)),
                verify_entwining(dual)):
        if not rep.passed:
            raise report.CheckError(rep)
    return DualDatum(e, atil_basis, ctil_basis, atil, ctil, phi, dual)


def double_dual_comparison(e: EntwiningPresentation) -> Report:
    """Compare the double dual against the original under evaluation bases.

    The result is reported, never asserted: agreement is not part of the
    construction's contract.
    """
    dd = dual_entwining(dual_entwining(e).dual)
    agrees = dd.dual.psi == e.psi
    return report.ok("double_dual_comparison", agrees=agrees)


# ---------------------------------------------------------------------------
# dual modules


@dataclass(frozen=True)
class DualModule:
    """A rational part of a dual space, as an entwined module.

    basis rows live in the coordinates of the dual of the source module;
    the module structure is written in those basis coordinates.
    """

    source_dim: int
    basis: Matrix
    module: EntwinedModulePresentation

    @property
    def dim(self) -> int:
        return self.basis.rows


def _functional_action(cstar_action: Matrix, basis: Matrix, mdim: int) -> Matrix:
    """Restrict a left C*-action to the span of the given functionals."""
    f = basis.field
    k = basis.rows
    cols = []
    for j in range(k):
        gj = basis.row_matrix(j).transpose()
        for i in range(mdim):
            cols.append((cstar_action @ kron(gj, Matrix.basis_column(f, mdim, i))).col(0))
    return Matrix.from_rows(f, cols).transpose()


def _restrict_right_action(action: Matrix, w: Subspace, adim: int, op: str) -> Matrix:
    """Rewrite a right action on the ambient space in subspace coordinates."""
    f = action.field
    k = w.dim
    cols = [[] for _ in range(k * adim)]
    out = []
    for t in range(k):
        wt = w.basis.row_matrix(t).transpose()
        for j in range(adim):
            v = action @ kron(wt, Matrix.basis_column(f, adim, j))
            coords = w.coordinates(v)
            if coords is None:
                raise report.CheckError(report.fail(op, "action-leaves-subspace", witness=(t, j)))
            out.append((t, j, coords))
    data = [f.zero()] * (k * k * adim)
    for t, j, coords in out:
        for s in range(k):
            data[s * (k * adim) + (t * adim + j)] = coords[s, 0]
    return Matrix(f, k, k * adim, data)


def dual_module_r(d: DualDatum, m: EntwinedModulePresentation) -> DualModule:
    """The rational part of M* as an entwined module over the dual data.

    M* carries the left A-action (a.h)(m) = h(m a) and the right action of
    the dual algebra through the coaction of M; the rational part over the
    (A, C~) pairing picks up the dual-coalgebra coaction, and the result
    is verified over (A~, C~, phi).
    """
    e = d.source
    if m.entwining != e:
        raise PresentationError("module does not live over the source entwining")
    pairing = d.pairing_a_ctil()
    require_alpha(pairing, "(A, C~) pairing")
    na, nc = e.algebra.dim, e.coalgebra.dim
    lact = dual_action_on_dual(m.action, m.dim, na, "right")
    cstar_on_m = coaction_to_dual_action(m.coaction, m.dim, nc, "right")
    atil_on_m = _functional_action(cstar_on_m, d.atil_basis, m.dim)
    ract_mstar = dual_action_on_dual(atil_on_m, m.dim, d.atil.dim, "left")
    rat = rational_submodule(pairing, ModulePresentation(m.dim, e.algebra, lact, "left"))
    ract = _restrict_right_action(ract_mstar, rat.subspace, d.atil.dim, "dual_module_r")
    out = EntwinedModulePresentation(d.dual, rat.dim, ract, rat.coaction)
    rep = verify_entwined_module(d.dual, out)
    if not rep.passed:
        raise report.CheckError(rep)
    return DualModule(m.dim, rat.subspace.basis, out)


def dual_module_upper_r(d: DualDatum, k: EntwinedModulePresentation) -> DualModule:
    """The mirror functor, from modules over the dual data back to (A, C, psi)."""
    e = d.source
    if k.entwining != d.dual:
        raise PresentationError("module does not live over the dual entwining")
    pairing = d.pairing_atil_c()
    require_alpha(pairing, "(A~, C) pairing")
    na = e.algebra.dim
    katil = d.atil.dim
    lact = dual_action_on_dual(k.action, k.dim, katil, "right")
    # left A-action on K through the dual-coalgebra coaction
    f = e.field
    cols = []
    for j in range(na):
        for i in range(k.dim):
            col = [f.zero()] * k.dim
            for s in range(k.dim):
                acc = f.zero()
                for t in range(d.ctil.dim):
                    acc = f.add(acc, f.mul(k.coaction[s * d.ctil.dim + t, i],
                                           d.ctil_basis[t, j]))
                col[s] = acc
            cols.append(col)
    a_on_k = Matrix.from_rows(f, cols).transpose()
    ract_kstar = dual_action_on_dual(a_on_k, k.dim, na, "left")
    rat = rational_submodule(pairing, ModulePresentation(k.dim, d.atil, lact, "left"))
    ract = _restrict_right_action(ract_kstar, rat.subspace, na, "dual_module_upper_r")
    out = EntwinedModulePresentation(e, rat.dim, ract, rat.coaction)
    rep = verify_entwined_module(e, out)
    if not rep.passed:
        raise report.CheckError(rep)
    return DualModule(k.dim, rat.subspace.basis, out)


# ---------------------------------------------------------------------------
# the adjunction


def _express_in_rows(basis: Matrix, m: Matrix, op: str, what: str) -> Matrix:
    sol = solve_linear(basis.transpose(), m)
    if sol is None:
        raise report.CheckError(report.fail(op, f"{what}-outside-subspace"))
    return sol.particular


def adjunction_check(d: DualDatum, m: EntwinedModulePresentation,
                     k: EntwinedModulePresentation) -> Report:
    """Verify the two Hom-space bijections are mutually inverse, exactly.

    Hom(M, K^r) and Hom(K, M_r) are computed as joint kernels; the maps
    f -> f* . lambda_K and g -> g* . lambda_M are applied to every basis
    element, checked to land in the opposite Hom space, and composed both
    ways back to the identity.
    """
    mr = dual_module_r(d, m)
    kr = dual_module_upper_r(d, k)
    hom_mkr = hom_entwined_basis(d.source, m, kr.module)
    hom_kmr = hom_entwined_basis(d.dual, k, mr.module)
    if len(hom_mkr) != len(hom_kmr):
        return report.fail("adjunction_check", "hom-dimension-mismatch",
                           dim_hom_m_kr=len(hom_mkr), dim_hom_k_mr=len(hom_kmr))
    lam_m = mr.basis   # lambda_M : M -> (M_r)*, evaluation
    lam_k = kr.basis
    # evaluation lands in the double duals
    mrr = dual_module_upper_r(d, mr.module)
    krr = dual_module_r(d, kr.module)
    for j in range(lam_m.cols):
        if not Subspace.from_matrix_rows(mrr.basis).contains(lam_m.col_matrix(j)):
            return report.fail("adjunction_check", "lambda_M-outside-double-dual", witness=(j,))
    for j in range(lam_k.cols):
        if not Subspace.from_matrix_rows(krr.basis).contains(lam_k.col_matrix(j)):
            return report.fail("adjunction_check", "lambda_K-outside-double-dual", witness=(j,))

    def fwd(fmat: Matrix) -> Matrix:
        raw = fmat.transpose() @ lam_k
        return _express_in_rows(mr.basis, raw, "adjunction_check", "Lambda-image")

    def bwd(gmat: Matrix) -> Matrix:
        raw = gmat.transpose() @ lam_m
        return _express_in_rows(kr.basis, raw, "adjunction_check", "Gamma-image")

    for idx, fmat in enumerate(hom_mkr):
        g = fwd(fmat)
        rep = hom_entwined(d.dual, k, mr.module, g)
        if not rep.passed:
            return report.fail("adjunction_check", f"Lambda-image-not-morphism[{rep.axiom}]",
                               witness=(idx,))
        back = bwd(g)
        if back != fmat:
            return report.fail("adjunction_check", "Gamma-Lambda-not-identity", witness=(idx,),
                               lhs=back.render(), rhs=fmat.render())
    for idx, gmat in enumerate(hom_kmr):
        fmat = bwd(gmat)
        rep = hom_entwined(d.source, m, kr.module, fmat)
        if not rep.passed:
            return report.fail("adjunction_check", f"Gamma-image-not-morphism[{rep.axiom}]",
                               witness=(idx,))
        back = fwd(fmat)
        if back != gmat:
            return report.fail("adjunction_check", "Lambda-Gamma-not-identity", witness=(idx,),
                               lhs=back.render(), rhs=gmat.render())
    return report.ok("adjunction_check", hom_dim=len(hom_mkr))


def dual_morphism_r(d: DualDatum, f: Matrix, source: DualModule, target: DualModule) -> Matrix:
    """The dual of a morphism f : M -> N, as a map N_r -> M_r in basis coordinates."""
    raw = target.basis @ f  # rows: the functionals h . f on M
    return _express_in_rows(source.basis, raw.transpose(), "dual_morphism_r", "image")


def dual_entwining_morphism(d_e: DualDatum, d_f: DualDatum,
                            gamma: Matrix, delta: Matrix) -> Report:
    """Transpose a morphism of entwinings to a morphism of the dual entwinings.

    (gamma, delta) : source(d_e) -> source(d_f) must be a verified
    morphism whose transposes respect the chosen subobjects; the induced
    pair is then checked as a morphism dual(d_f) -> dual(d_e).
    """
    rep = verify_entwining_morphism(d_e.source, d_f.source, gamma, delta)
    if not rep.passed:
        return rep
    f = d_e.source.field
    # delta* : B~ -> A~ on the chosen bases
    cols = []
    for i in range(d_f.atil.dim):
        row = d_f.atil_basis.row_matrix(i) @ delta
        coords = _coords_in_rows(d_e.atil_basis, row.row(0))
        if coords is None:
            return report.fail("dual_entwining_morphism", "delta-transpose-inclusion", witness=(i,))
        cols.append(coords.col(0))
    delta_star = Matrix.from_rows(f, cols).transpose()
    cols = []
    for i in range(d_f.ctil.dim):
        row = d_f.ctil_basis.row_matrix(i) @ gamma
        coords = _coords_in_rows(d_e.ctil_basis, row.row(0))
        if coords is None:
            return report.fail("dual_entwining_morphism", "gamma-transpose-inclusion", witness=(i,))
        cols.append(coords.col(0))
    gamma_star = Matrix.from_rows(f, cols).transpose()
    return verify_entwining_morphism(d_f.dual, d_e.dual, delta_star, gamma_star)
