"""The verification harness: run every applicable structural check on one
instance and assemble a deterministic report.

Checks whose hypotheses fail are still evaluated but reported as
observations, never as verifications; finite-group-only checks are skipped
(with the reason) on presentations of unknown finiteness; resource-cap
overruns skip the single affected check.
"""

from __future__ import annotations

from . import magnus
from .groupalg import (AModule, ExtComplex, FreeResolution, ext_induced,
                       aug_power_chain, free_resolution,
                       graded_dims_from_group, long_exact_sequence,
                       subquotient_module)
from .instances import BuiltInstance, InstanceSpec, build_instance
from .invariants import (Representation, h1_fox,
                         invariants_direct, invariants_filtration,
                         lambda_power, order_lowering,
                         representation_hom_space, restriction_check)
from .linalg import matrix_from_columns
from .magnus import MemoryCapExceeded
from .report import (CheckResult, Report, STATUS_OBSERVATION, STATUS_SKIPPED,
                     STATUS_VERIFIED, STATUS_VIOLATED, matrix_json)

_NOT_FINITE = "needs an enumerated finite group; presentation finiteness is unknown"


class _Context:
    """Shared computations for one instance."""

    def __init__(self, built: BuiltInstance):
        self.built = built
        self.spec = built.spec
        self.field = built.field
        self.rep = built.rep
        self.q_max = built.spec.limits.q_max
        self.p_max = built.spec.limits.p_max
        self.filtration = invariants_filtration(self.rep, self.q_max)
        self.tables: dict = {}
        self._chain = None
        self._modules: dict = {}
        self._resolutions: dict = {}
        self._trivial = None
        self._graded = None

    # finite-group machinery -------------------------------------------

    @property
    def group(self):
        return self.built.group

    def chain(self):
        if self._chain is None:
            self._chain = aug_power_chain(self.group, self.field, self.q_max + 2)
        return self._chain

    def layer_module(self, j: int):
        """A / I^j as a module, with its quotient map (j >= 1)."""
        if j not in self._modules:
            chain = self.chain()
            regular = AModule.regular(self.group, self.field)
            self._modules[j] = subquotient_module(regular, chain[0], chain[j])
        return self._modules[j]

    def resolution(self, j: int) -> FreeResolution:
        if j not in self._resolutions:
            module, _ = self.layer_module(j)
            self._resolutions[j] = free_resolution(
                self.group, self.field, module, self.p_max + 2)
        return self._resolutions[j]

    def trivial_data(self):
        """(trivial module R, its resolution), cached."""
        if self._trivial is None:
            triv = AModule.trivial(self.group, self.field, 1)
            res = free_resolution(self.group, self.field, triv, self.p_max + 2)
            self._trivial = (triv, res)
        return self._trivial

    def h1_trivial_dim(self) -> int:
        """dim H^1 of the group with trivial field coefficients."""
        if self.built.is_finite_group:
            triv, res = self.trivial_data()
            return ExtComplex(res, triv).group(1).dim
        rep_r = Representation.trivial(self.field, 1,
                                       presentation=self.built.presentation)
        return h1_fox(rep_r).dim

    def h1_module_dim(self) -> int:
        """dim H^1 of the group acting on the instance module."""
        if self.built.is_finite_group:
            _, res = self.trivial_data()
            return ExtComplex(res, self.rep.amodule).group(1).dim
        return h1_fox(self.rep).dim

    def graded_algebra_dims(self):
        """N(q) for q = 0..q_max (finite: ideal chain; else truncated
        tensor algebra)."""
        if self._graded is None:
            if self.built.is_finite_group:
                self._graded = graded_dims_from_group(
                    self.group, self.field, self.q_max)
            else:
                trunc = max(self.q_max, self.spec.limits.trunc or 0)
                values = magnus.graded_dims(
                    self.built.presentation, self.field, trunc,
                    self.spec.limits.memory_cap)
                self._graded = list(values)[:self.q_max + 1]
        return self._graded


def _guard(fn):
    """Run one check body; resource caps skip, internal failures violate."""
    def wrapper(ctx: _Context) -> CheckResult:
        try:
            return fn(ctx)
        except MemoryCapExceeded as exc:
            return CheckResult(fn.check_id, fn.statement, STATUS_SKIPPED,
                               details=f"resource cap: {exc}")
        except RuntimeError as exc:
            return CheckResult(fn.check_id, fn.statement, STATUS_VIOLATED,
                               details=f"internal theorem-check failure: {exc}")
    wrapper.check_id = fn.check_id
    wrapper.statement = fn.statement
    return wrapper


def _check(check_id: str, statement: str):
    def deco(fn):
        fn.check_id = check_id
        fn.statement = statement
        return _guard(fn)
    return deco


@_check("filtration_wellformed",
        "Invariant layers are nested, stable under the group, and once two "
        "consecutive layers agree the filtration is constant.")
def _check_filtration(ctx: _Context) -> CheckResult:
    dims = ctx.filtration.dims()
    # constructing the filtration already asserted the invariants
    stabilized = None
    for k in range(1, len(dims)):
        if dims[k] == dims[k - 1]:
            stabilized = k - 1
            break
    details = f"dims {dims}"
    if stabilized is not None:
        details += f", stabilizes at level {stabilized}"
    return CheckResult(_check_filtration.check_id, _check_filtration.statement,
                       STATUS_VERIFIED, details=details)


@_check("filtration_oracle_equality",
        "The recursive kernel filtration equals the annihilator filtration "
        "computed directly from augmentation-ideal power bases.")
def _check_oracle(ctx: _Context) -> CheckResult:
    if not ctx.built.is_finite_group:
        return CheckResult(_check_oracle.check_id, _check_oracle.statement,
                           STATUS_SKIPPED, details=_NOT_FINITE)
    for q in range(ctx.q_max + 1):
        direct = invariants_direct(ctx.rep, q)
        if direct != ctx.filtration.spaces[q]:
            return CheckResult(
                _check_oracle.check_id, _check_oracle.statement,
                STATUS_VIOLATED,
                details=f"bases differ at q={q}: direct dim {direct.dim}, "
                        f"recursive dim {ctx.filtration.spaces[q].dim}")
    return CheckResult(_check_oracle.check_id, _check_oracle.statement,
                       STATUS_VERIFIED,
                       details=f"identical canonical bases for q <= {ctx.q_max}")


@_check("order_lowering_injective",
        "Each graded order-lowering map (class of v to the classes of "
        "(s-1)v) is injective, and is additive across every relator.")
def _check_order_lowering(ctx: _Context) -> CheckResult:
    mats = {}
    for q in range(1, ctx.q_max + 1):
        ol = order_lowering(ctx.rep, ctx.filtration, q)
        mats[str(q)] = matrix_json(ctx.field, ol.matrix)
        if not ol.injective:
            return CheckResult(
                _check_order_lowering.check_id, _check_order_lowering.statement,
                STATUS_VIOLATED, details=f"not injective at q={q}")
        if not ol.relator_consistent:
            return CheckResult(
                _check_order_lowering.check_id, _check_order_lowering.statement,
                STATUS_VIOLATED,
                details=f"relator additivity fails at q={q}: {ol.relator_defects}")
    ctx.tables["order_lowering_matrices"] = mats
    return CheckResult(_check_order_lowering.check_id,
                       _check_order_lowering.statement, STATUS_VERIFIED,
                       details=f"injective for 1 <= q <= {ctx.q_max}")


@_check("hom_vanishing_collapse",
        "If the group has no nonzero homomorphism to the field and no first "
        "cohomology with trivial coefficients, the filtration is constant "
        "at the fixed space.")
def _check_prop_b(ctx: _Context) -> CheckResult:
    hom_dim = representation_hom_space(ctx.rep).dim
    h1_dim = ctx.h1_trivial_dim()
    ctx.tables["hom_dim"] = hom_dim
    ctx.tables["h1_trivial_dim"] = h1_dim
    hyp = "Hom(G, R) = 0 and H^1(G, R) = 0"
    holds = hom_dim == 0 and h1_dim == 0
    dims = ctx.filtration.dims()
    collapsed = all(d == dims[0] for d in dims)
    details = f"hom_dim={hom_dim}, h1_dim={h1_dim}, filtration dims {dims}"
    if holds:
        status = STATUS_VERIFIED if collapsed else STATUS_VIOLATED
    else:
        status = STATUS_OBSERVATION
        details += f"; collapse {'held' if collapsed else 'did not hold'} anyway"
    return CheckResult(_check_prop_b.check_id, _check_prop_b.statement, status,
                       details=details, hypothesis=hyp, hypothesis_holds=holds)


@_check("tensor_power_embedding",
        "Iterated order-lowering embeds the level-q graded piece into the "
        "q-th tensor power of Hom(G, R) tensored with the fixed space.")
def _check_prop_c(ctx: _Context) -> CheckResult:
    h = representation_hom_space(ctx.rep).dim
    fixed = ctx.filtration.spaces[0].dim
    mats = {}
    for q in range(1, ctx.q_max + 1):
        lp = lambda_power(ctx.rep, q, ctx.filtration)
        mats[str(q)] = matrix_json(ctx.field, lp.matrix)
        if not lp.injective:
            return CheckResult(
                _check_prop_c.check_id, _check_prop_c.statement,
                STATUS_VIOLATED, details=f"not injective at q={q}")
        bound = (h ** q) * fixed
        if ctx.filtration.graded(q).dim > bound:
            return CheckResult(
                _check_prop_c.check_id, _check_prop_c.statement,
                STATUS_VIOLATED,
                details=f"dim {ctx.filtration.graded(q).dim} exceeds "
                        f"hom^{q} * fixed = {bound} at q={q}")
    ctx.tables["tensor_power_matrices"] = mats
    return CheckResult(_check_prop_c.check_id, _check_prop_c.statement,
                       STATUS_VERIFIED,
                       details=f"injective for 1 <= q <= {ctx.q_max}, "
                               f"hom_dim={h}, fixed_dim={fixed}")


@_check("graded_piece_bound",
        "The level-q graded piece has dimension at most N(q) times the "
        "fixed-space dimension, with equality whenever H^1 of the module "
        "vanishes.")
def _check_bound(ctx: _Context) -> CheckResult:
    cid, stmt = _check_bound.check_id, _check_bound.statement
    try:
        n_values = ctx.graded_algebra_dims()
    except MemoryCapExceeded as exc:
        return CheckResult(cid, stmt, STATUS_SKIPPED,
                           details=f"resource cap: {exc}")
    ctx.tables["graded_algebra_dims"] = list(n_values)
    fixed = ctx.filtration.spaces[0].dim
    h1 = ctx.h1_module_dim()
    ctx.tables["h1_module_dim"] = h1
    hyp = "H^1(G, V) = 0"
    holds = h1 == 0
    graded = ctx.filtration.graded_dims()
    rows = []
    equal = True
    for q in range(1, ctx.q_max + 1):
        lhs = graded[q]
        rhs = n_values[q] * fixed
        rows.append(f"q={q}: {lhs} <= {rhs}")
        if lhs > rhs:
            return CheckResult(cid, stmt, STATUS_VIOLATED,
                               details=f"bound fails at q={q}: {lhs} > {rhs}",
                               hypothesis=hyp, hypothesis_holds=holds)
        if lhs != rhs:
            equal = False
    details = "; ".join(rows)
    if holds:
        if equal:
            return CheckResult(cid, stmt, STATUS_VERIFIED,
                               details=details + "; equality as required",
                               hypothesis=hyp, hypothesis_holds=True)
        return CheckResult(cid, stmt, STATUS_VIOLATED,
                           details=details + "; equality required but missed",
                           hypothesis=hyp, hypothesis_holds=True)
    return CheckResult(cid, stmt, STATUS_OBSERVATION,
                       details=details +
                       f"; bound holds, equality {'held' if equal else 'not held'} "
                       "without its hypothesis",
                       hypothesis=hyp, hypothesis_holds=False)


@_check("module_hom_matches_filtration",
        "Module homomorphisms out of the layer quotient A/I^(q+1) "
        "biject with the level-q invariants (dimension check).")
def _check_ext0(ctx: _Context) -> CheckResult:
    cid, stmt = _check_ext0.check_id, _check_ext0.statement
    if not ctx.built.is_finite_group:
        return CheckResult(cid, stmt, STATUS_SKIPPED, details=_NOT_FINITE)
    V = ctx.rep.amodule
    dims = []
    for q in range(ctx.q_max + 1):
        ext0 = ExtComplex(ctx.resolution(q + 1), V).group(0).dim
        dims.append(ext0)
        if ext0 != ctx.filtration.spaces[q].dim:
            return CheckResult(cid, stmt, STATUS_VIOLATED,
                               details=f"q={q}: Ext^0 dim {ext0} != filtration "
                                       f"dim {ctx.filtration.spaces[q].dim}")
    return CheckResult(cid, stmt, STATUS_VERIFIED,
                       details=f"dims {dims} match the filtration")


@_check("layer_long_exact_sequence",
        "The three-term extension of an augmentation layer induces a long "
        "exact sequence (image equals kernel at every node), and the layer "
        "term contributes N(q) copies of ordinary cohomology.")
def _check_les(ctx: _Context) -> CheckResult:
    cid, stmt = _check_les.check_id, _check_les.statement
    if not ctx.built.is_finite_group:
        return CheckResult(cid, stmt, STATUS_SKIPPED, details=_NOT_FINITE)
    V = ctx.rep.amodule
    table = {}
    for q in range(1, ctx.q_max + 1):
        les = long_exact_sequence(ctx.group, ctx.field, q, V, ctx.p_max)
        table[str(q)] = {
            "node_dims": les.node_dims(),
            "exact": les.all_exact,
            "layer_dims": list(les.sub_dims_actual),
            "layer_dims_expected": list(les.sub_dims_expected),
        }
        if not les.all_exact:
            bad = [f"{n.label}^{n.p}" for n in les.nodes if not n.exact]
            return CheckResult(cid, stmt, STATUS_VIOLATED,
                               details=f"q={q}: exactness fails at {bad}")
        if not les.sub_dims_ok:
            return CheckResult(cid, stmt, STATUS_VIOLATED,
                               details=f"q={q}: layer dims {les.sub_dims_actual} "
                                       f"!= {les.sub_dims_expected}")
    ctx.tables["long_exact_sequences"] = table
    return CheckResult(cid, stmt, STATUS_VERIFIED,
                       details=f"exact at every node for q <= {ctx.q_max}, "
                               f"p <= {ctx.p_max}")


@_check("acyclic_coefficients_vanish",
        "For each degree p with vanishing ordinary cohomology, the higher "
        "layer cohomology in that degree vanishes for every level q.")
def _check_acyclic(ctx: _Context) -> CheckResult:
    cid, stmt = _check_acyclic.check_id, _check_acyclic.statement
    if not ctx.built.is_finite_group:
        return CheckResult(cid, stmt, STATUS_SKIPPED, details=_NOT_FINITE)
    V = ctx.rep.amodule
    _, triv_res = ctx.trivial_data()
    ordinary = [ExtComplex(triv_res, V).group(p).dim
                for p in range(ctx.p_max + 1)]
    ctx.tables["ordinary_cohomology_dims"] = ordinary
    hyp = "H^p(G, V) = 0 for the tested p"
    applicable = [p for p in range(1, ctx.p_max + 1) if ordinary[p] == 0]
    if not applicable:
        return CheckResult(cid, stmt, STATUS_SKIPPED,
                           details="no degree p <= p_max has vanishing "
                                   "ordinary cohomology",
                           hypothesis=hyp, hypothesis_holds=False)
    for q in range(1, ctx.q_max + 1):
        cx = ExtComplex(ctx.resolution(q + 1), V)
        for p in applicable:
            d = cx.group(p).dim
            if d != 0:
                return CheckResult(cid, stmt, STATUS_VIOLATED,
                                   details=f"H_{q}^{p} has dim {d} despite "
                                           f"H^{p} = 0",
                                   hypothesis=hyp, hypothesis_holds=True)
    return CheckResult(cid, stmt, STATUS_VERIFIED,
                       details=f"vanishing for p in {applicable}, q <= {ctx.q_max}",
                       hypothesis=hyp, hypothesis_holds=True)


@_check("graded_dual_dimension",
        "The dual of the q-th graded piece of the augmentation filtration "
        "has the dimension of first cohomology of A/I^q with trivial "
        "coefficients: N(q) = dim Ext^1(A/I^q, R).")
def _check_duality(ctx: _Context) -> CheckResult:
    cid, stmt = _check_duality.check_id, _check_duality.statement
    if not ctx.built.is_finite_group:
        return CheckResult(cid, stmt, STATUS_SKIPPED, details=_NOT_FINITE)
    triv, _ = ctx.trivial_data()
    n_values = ctx.graded_algebra_dims()
    pairs = []
    for q in range(1, ctx.q_max + 1):
        ext1 = ExtComplex(ctx.resolution(q), triv).group(1).dim
        pairs.append((n_values[q], ext1))
        if n_values[q] != ext1:
            return CheckResult(cid, stmt, STATUS_VIOLATED,
                               details=f"q={q}: N(q)={n_values[q]} but "
                                       f"dim Ext^1(A/I^q, R)={ext1}")
    return CheckResult(cid, stmt, STATUS_VERIFIED,
                       details="; ".join(f"q={q + 1}: {a}={b}"
                                         for q, (a, b) in enumerate(pairs)))


@_check("h1_layer_map_zero",
        "The map on first cohomology with trivial coefficients induced by "
        "the layer surjection A/I^(q+1) ->> A/I^q is the zero map.")
def _check_lemma25(ctx: _Context) -> CheckResult:
    cid, stmt = _check_lemma25.check_id, _check_lemma25.statement
    if not ctx.built.is_finite_group:
        return CheckResult(cid, stmt, STATUS_SKIPPED, details=_NOT_FINITE)
    triv, _ = ctx.trivial_data()
    table = {}
    for q in range(1, ctx.q_max + 1):
        mid_mod, mid_qm = ctx.layer_module(q + 1)
        top_mod, top_qm = ctx.layer_module(q)
        pi = matrix_from_columns(
            ctx.field, [top_qm.project(rep) for rep in mid_qm.coset_reps],
            top_mod.dim)
        ind = ext_induced(ctx.group, ctx.field, pi, mid_mod, top_mod, triv, 1,
                          src_res=ctx.resolution(q + 1),
                          dst_res=ctx.resolution(q))
        table[str(q)] = {
            "domain_dim": ind.domain.dim,
            "codomain_dim": ind.codomain.dim,
            "matrix": matrix_json(ctx.field, ind.matrix),
        }
        if not ind.matrix.is_zero():
            return CheckResult(cid, stmt, STATUS_VIOLATED,
                               details=f"nonzero induced matrix at q={q}")
    ctx.tables["h1_layer_maps"] = table
    return CheckResult(cid, stmt, STATUS_VERIFIED,
                       details=f"zero matrix for 1 <= q <= {ctx.q_max}")


@_check("restriction_graded_injective",
        "Restriction to the given subgroup keeps every invariant layer and "
        "is injective on each graded piece (finite index and torsion-free "
        "coefficients are the standing hypotheses; the index is not "
        "verified here).")
def _check_restriction(ctx: _Context) -> CheckResult:
    cid, stmt = _check_restriction.check_id, _check_restriction.statement
    if ctx.spec.subgroup is None:
        return CheckResult(cid, stmt, STATUS_SKIPPED,
                           details="no subgroup block in the instance")
    rr = restriction_check(ctx.rep, list(ctx.spec.subgroup), ctx.q_max)
    ctx.tables["restriction"] = {
        "group_filtration_dims": rr.group_dims,
        "subgroup_filtration_dims": rr.subgroup_dims,
        "graded_injective": rr.graded_injective,
    }
    hyp = ("characteristic 0 (torsion-free coefficients); finite index "
           "asserted by the caller, not verified")
    char0 = ctx.field.p is None
    if not rr.all_contained:
        return CheckResult(cid, stmt, STATUS_VIOLATED,
                           details="group layers escape the subgroup layers "
                                   "(containment must hold unconditionally)",
                           hypothesis=hyp, hypothesis_holds=char0)
    detail = (f"group dims {rr.group_dims}, subgroup dims {rr.subgroup_dims}, "
              f"graded maps injective: {rr.graded_injective}")
    if char0:
        status = STATUS_VERIFIED if rr.all_injective else STATUS_VIOLATED
        return CheckResult(cid, stmt, status, details=detail,
                           hypothesis=hyp, hypothesis_holds=True)
    return CheckResult(cid, stmt, STATUS_OBSERVATION,
                       details=detail + "; characteristic p, no claim made",
                       hypothesis=hyp, hypothesis_holds=False)


_CHECKS = (
    _check_filtration,
    _check_oracle,
    _check_order_lowering,
    _check_prop_b,
    _check_prop_c,
    _check_bound,
    _check_ext0,
    _check_les,
    _check_acyclic,
    _check_duality,
    _check_lemma25,
    _check_restriction,
)


def run_checks(spec: InstanceSpec) -> Report:
    """Every applicable check, in a fixed order, on one instance."""
    built = build_instance(spec)
    ctx = _Context(built)
    ctx.tables["filtration_dims"] = ctx.filtration.dims()
    ctx.tables["graded_piece_dims"] = ctx.filtration.graded_dims()
    ctx.tables["fixed_space_dim"] = ctx.filtration.spaces[0].dim
    if built.is_finite_group:
        ctx.tables["group_order"] = built.group.size
        ctx.tables["ideal_power_dims"] = [
            s.dim for s in ctx.chain()[:ctx.q_max + 2]]
        V = ctx.rep.amodule
        ext_table = []
        for q in range(ctx.q_max + 1):
            cx = ExtComplex(ctx.resolution(q + 1), V)
            ext_table.append([cx.group(p).dim for p in range(ctx.p_max + 1)])
        ctx.tables["ext_dims"] = ext_table
    results = [check(ctx) for check in _CHECKS]
    return Report(spec.name, spec.to_dict(), ctx.tables, results)
