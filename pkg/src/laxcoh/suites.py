"""Named verification suites behind the CLI and the acceptance run.

Each suite takes a validated InstanceConfig and returns a Report whose
entries are deterministic given (config, seed).  Sampled checks draw from
a seeded shuffle of the full index grid, truncated to the sample budget;
budget None means the package default.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .chevalley import (
    lift_basis,
    normalize,
    normalized_coboundary_check,
    root_system,
    uniqueness_driver,
    verify_recursions,
)
from .cocycle import (
    Gamma1,
    Gamma2,
    LinearFunctional,
    central_extension_bracket,
    check_cocycle_identity,
    connection_independence_witness,
    extend_to_dg_defects,
    gl_cross_vanishing,
    invariance_defect,
    materialize,
    nonbound_witness,
    psi_form,
    weak_point_regularity,
)
from .config import InstanceConfig
from .connection import (
    build_connection,
    covariant_derivative,
    d1g_bracket,
    distinct_connection,
    kn_function,
    kn_vector_field,
    vf_apply,
    vf_bracket,
)
from .laxalg import (
    Flavor,
    GradedBasis,
    LaxClosureError,
    MembershipError,
    NonGenericError,
    TyurinData,
    check_membership,
    decompose,
    grading_constants,
    solve_constrained_space,
    split_gl,
)
from .matfun import Cycle
from .report import Report
from .scalars import ONE, ZERO, Scalar

__all__ = ["run_suite", "SUITES", "build_context"]

SUITES = ("grading", "action", "cocycle", "invariance", "locality",
          "normalization", "uniqueness", "all")

DEFAULT_SAMPLES = 60


class Context:
    """Shared constructions for one instance: basis, connection, cocycles.

    The graded basis and connection are built on first use so that suites
    which only need the raw constraint systems (the grading checks) can
    report degeneracies instead of aborting.
    """

    def __init__(self, config: InstanceConfig):
        self.config = config
        self.tyurin = config.tyurin
        self.flavor = config.flavor
        self.sphere = config.tyurin.sphere
        self.cycle = config.cycle
        self.rng = random.Random(config.seed)
        self._basis = None
        self._omega = None

    @property
    def basis(self) -> GradedBasis:
        if self._basis is None:
            lo, hi = self.config.degree_window
            self._basis = GradedBasis(
                self.tyurin,
                (2 * lo - 2, 2 * hi + self.config.pole_budget + 2))
        return self._basis

    @property
    def omega(self):
        if self._omega is None:
            self._omega = build_connection(self.tyurin,
                                           self.config.pole_budget)
        return self._omega

    def elements(self):
        lo, hi = self.config.degree_window
        return [(m, r, el) for m in range(lo, hi + 1)
                for r, el in enumerate(self.basis.elements(m))]

    def sample(self, grid: List, budget: Optional[int]):
        budget = DEFAULT_SAMPLES if budget is None else budget
        grid = list(grid)
        self.rng.shuffle(grid)
        return grid[:budget] if budget < len(grid) else grid

    def sample_product(self, parts: List[List], budget: Optional[int]):
        """Seeded draw of tuples from a product grid without building it."""
        budget = DEFAULT_SAMPLES if budget is None else budget
        total = 1
        for p in parts:
            total *= len(p)
        if total <= max(4 * budget, 2000):
            grid = [()]
            for p in parts:
                grid = [g + (x,) for g in grid for x in p]
            return self.sample(grid, budget)
        seen = set()
        out = []
        while len(out) < budget:
            key = tuple(self.rng.randrange(len(p)) for p in parts)
            if key in seen:
                continue
            seen.add(key)
            out.append(tuple(p[i] for p, i in zip(parts, key)))
        return out


def build_context(config: InstanceConfig) -> Context:
    return Context(config)


def run_suite(name: str, config: InstanceConfig,
              samples: Optional[int] = None,
              omega_prime=None,
              ctx: Optional[Context] = None) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}")
    ctx = ctx if ctx is not None else Context(config)
    report = Report(name, config.as_dict())
    if name in ("grading", "all"):
        _suite_grading(ctx, report)
    if name in ("action", "all"):
        _suite_action(ctx, report, samples)
    if name in ("cocycle", "all"):
        _suite_cocycle(ctx, report, samples)
    if name in ("invariance", "all"):
        _suite_invariance(ctx, report, samples, omega_prime)
    if name in ("locality", "all"):
        _suite_locality(ctx, report)
    if name in ("normalization", "all"):
        _suite_normalization(ctx, report)
    if name in ("uniqueness", "all"):
        _suite_uniqueness(ctx, report)
    return report


# ---------------------------------------------------------------------------


def _suite_grading(ctx: Context, report: Report):
    lo, hi = ctx.config.degree_window
    d = ctx.flavor.dim
    dims_ok, uniq_ok = True, True
    dim_detail = []
    for m in range(lo, hi + 1):
        _, ns = solve_constrained_space(ctx.tyurin, m, -m)
        if len(ns) != d:
            dims_ok = False
            dim_detail.append(f"dim g_{m} = {len(ns)}")
        _, gap = solve_constrained_space(ctx.tyurin, m + 1, -m)
        if gap:
            uniq_ok = False
            dim_detail.append(f"gap at degree {m} has dim {len(gap)}")
    report.add("grading/dimension",
               "every homogeneous subspace in the window has dim(g)",
               dims_ok, "; ".join(dim_detail) or f"dim = {d} throughout")
    report.add("grading/leading-uniqueness",
               "the element with a prescribed leading term is unique",
               uniq_ok, "; ".join(dim_detail) or "all gap spaces are zero")
    ok = True
    detail = []
    for m in range(lo, hi):
        for k in range(m + 1, hi + 1):
            _, inter = solve_constrained_space(ctx.tyurin, k, -m)
            if inter:
                ok = False
                detail.append(f"g_{m} meets g_{k}")
    report.add("grading/directness",
               "distinct homogeneous subspaces intersect trivially",
               ok, "; ".join(detail) or "pairwise intersections are zero")
    probe = (max(lo, -2), min(hi, 2))
    try:
        m_const = grading_constants(ctx.basis, probe)
        report.add("grading/band",
                   "brackets land in the degree band [m+k, m+k+M] with the "
                   "lifted finite-dimensional bracket as leading component",
                   True, f"M = {m_const} on probe window {probe}")
        if ctx.sphere.k == 0:
            report.add("grading/loop-constant",
                       "without weak points the algebra is graded (M = 0)",
                       m_const == 0, f"M = {m_const}")
    except (LaxClosureError, NonGenericError) as exc:
        report.add("grading/band", "bracket degree band", False, str(exc))
    return report


def _vf_range(ctx: Context):
    lo, hi = ctx.config.degree_window
    return [kn_vector_field(k, ctx.sphere) for k in range(lo, hi + 1)]


def _suite_action(ctx: Context, report: Report, samples):
    els = ctx.elements()
    vfs = _vf_range(ctx)
    sphere = ctx.sphere
    omega = ctx.omega

    fails = []
    count = 0
    for e in vfs:
        for (m, r, el) in els:
            try:
                covariant_derivative(e, el, omega)
                count += 1
            except LaxClosureError as exc:
                fails.append(f"e_{e.index} on X[{m},{r}]: {exc}")
    report.add("action/certified",
               "every covariant derivative stays in the algebra (the weak "
               "point pole cancellations hold)",
               not fails, "; ".join(fails[:3]) or f"{count} derivatives")

    gpow = list(range(-2, 3))
    ok = True
    for e, j, (m, r, el) in ctx.sample_product([vfs, gpow, els], samples):
        g = kn_function(j, sphere).value
        lhs = covariant_derivative(e, el.mul_function(g), omega).value
        rhs = el.value.scale(vf_apply(e, g)) \
            + covariant_derivative(e, el, omega).value.scale(g)
        if lhs != rhs:
            ok = False
    report.add("action/leibniz",
               "nabla_e(g L) = (e.g) L + g nabla_e L exactly", ok)

    ok = True
    for e, j, (m, r, el) in ctx.sample_product([vfs, gpow, els], samples):
        g = kn_function(j, sphere).value
        ge = type(e)(None, g * e.value)
        lhs = covariant_derivative(ge, el, omega).value
        rhs = covariant_derivative(e, el, omega).value.scale(g)
        if lhs != rhs:
            ok = False
    report.add("action/function-linearity",
               "nabla_{g e} L = g nabla_e L exactly", ok)

    ok = True
    for e, f, (m, r, el) in ctx.sample_product([vfs, vfs, els], samples):
        lhs = covariant_derivative(vf_bracket(e, f), el, omega).value
        rhs = covariant_derivative(
            e, covariant_derivative(f, el, omega), omega).value \
            - covariant_derivative(
                f, covariant_derivative(e, el, omega), omega).value
        if lhs != rhs:
            ok = False
    report.add("action/vf-compat",
               "nabla_{[e,f]} = [nabla_e, nabla_f] exactly", ok)

    ok = True
    for e, (m1, r1, a), (m2, r2, b) in ctx.sample_product(
            [vfs, els, els], samples):
        br = a.value.commutator(b.value)
        lhs = (br.derivative()
               + omega.value.commutator(br)).scale(e.value)
        rhs = covariant_derivative(e, a, omega).value.commutator(b.value) \
            + a.value.commutator(covariant_derivative(e, b, omega).value)
        if lhs != rhs:
            ok = False
    report.add("action/derivation",
               "nabla_e[L, L'] = [nabla_e L, L'] + [L, nabla_e L'] exactly",
               ok)

    ok = True
    for e, j, (m, r, el) in ctx.sample_product([vfs, gpow, els], samples):
        h = kn_function(j, sphere).value
        lhs = covariant_derivative(e, el.mul_function(h), omega).value \
            - covariant_derivative(e, el, omega).value.scale(h)
        if lhs != el.value.scale(vf_apply(e, h)):
            ok = False
    report.add("action/d1-module",
               "e.(h.L) - h.(e.L) = (e.h).L: the degree-one operator "
               "algebra acts", ok)

    ok = True
    leadok = True
    band = 0
    for e in vfs:
        k = e.index
        for (m, r, el) in els:
            nd = covariant_derivative(e, el, omega)
            if nd.value.is_zero():
                continue
            comps = decompose(nd, ctx.basis)
            degs = sorted(comps)
            if degs[0] < k + m:
                ok = False
            band = max(band, degs[-1] - (k + m))
            want = ctx.basis.elements(k + m)[r].value.scale(Scalar(m))
            got = comps.get(k + m)
            gotv = got.value if got is not None else want.scale(ZERO)
            if gotv != want:
                leadok = False
    report.add("action/almost-graded",
               "nabla_{e_k} g_m lands in degrees >= k+m with bounded top",
               ok, f"module band M = {band}")
    report.add("action/leading-coefficient",
               "the degree-(k+m) component of nabla_{e_k} X_m is m X_{k+m}",
               leadok)

    ok = True
    for e, f, (m, r, el) in ctx.sample_product([vfs, vfs, els], samples):
        x = (el, _zero_vf(ctx))
        y = (ZERO_LAX(ctx), e)
        z = (ZERO_LAX(ctx), f)
        j1 = d1g_bracket(d1g_bracket(x, y, omega), z, omega)
        j2 = d1g_bracket(d1g_bracket(y, z, omega), x, omega)
        j3 = d1g_bracket(d1g_bracket(z, x, omega), y, omega)
        law = j1[0].value + j2[0].value + j3[0].value
        vfp = j1[1].value + j2[1].value + j3[1].value
        if not (law.is_zero() and vfp.is_zero()):
            ok = False
    report.add("action/semidirect-jacobi",
               "mixed Jacobi identity of the semidirect sum holds exactly",
               ok)

    if ctx.flavor.kind == "gl":
        # the scalar and traceless parts are separately preserved by the
        # action defined by the ambient connection
        ok = True
        t_s = TyurinData(ctx.sphere, ctx.tyurin.alphas,
                         Flavor("s", ctx.flavor.n))
        t_sl = TyurinData(ctx.sphere, ctx.tyurin.alphas,
                          Flavor("sl", ctx.flavor.n))
        for e, j, (m, r, el) in ctx.sample_product(
                [vfs, gpow, els], min(12, samples or 12)):
            for part, sub in zip(split_gl(el), (t_s, t_sl)):
                val = (part.value.derivative()
                       + omega.value.commutator(part.value)).scale(e.value)
                try:
                    check_membership(val, sub)
                except MembershipError:
                    ok = False
        report.add("action/gl-splitting",
                   "the scalar/traceless decomposition is preserved by "
                   "every covariant derivative", ok)


def _zero_vf(ctx: Context):
    from .connection import KNVectorField
    from .ratfun import RatFun
    return KNVectorField(None, RatFun.zero(ctx.sphere))


def ZERO_LAX(ctx: Context):
    from .laxalg import check_membership
    from .matfun import MatRatFun
    return check_membership(
        MatRatFun.zero(ctx.sphere, ctx.flavor.size), ctx.tyurin)


def _suite_cocycle(ctx: Context, report: Report, samples):
    els = ctx.elements()
    cycles = [("configured", ctx.cycle),
              ("separating", Cycle.separating(ctx.sphere))]
    if ctx.sphere.k >= 1:
        cycles.append(("subcycle", Cycle(True, [0])))
    for cname, cyc in cycles:
        g1 = Gamma1(ctx.omega, cyc)
        g2 = Gamma2(cyc)
        for gname, coc in (("gamma1", g1), ("gamma2", g2)):
            ok = True
            for (m1, r1, a), (m2, r2, b) in ctx.sample_product(
                    [els, els], samples):
                if coc.value(a, b) != -coc.value(b, a):
                    ok = False
            report.add(f"cocycle/antisymmetry-{gname}-{cname}",
                       "the bilinear form is antisymmetric", ok)
            ok = True
            for (m1, r1, a), (m2, r2, b), (m3, r3, c) in ctx.sample_product(
                    [els, els, els], samples):
                if not check_cocycle_identity(coc, a, b, c).is_zero():
                    ok = False
            report.add(f"cocycle/identity-{gname}-{cname}",
                       "the 2-cocycle condition holds exactly", ok)
    g1 = Gamma1(ctx.omega, Cycle.separating(ctx.sphere))
    g2 = Gamma2(Cycle.separating(ctx.sphere))
    lo, hi = ctx.config.degree_window
    probe = (max(lo, -3), min(hi, 3))
    report.add("cocycle/weak-regularity-gamma1",
               "the trace-pairing integrand has no residue at any weak point",
               weak_point_regularity(g1, ctx.basis, probe))
    report.add("cocycle/weak-regularity-gamma2",
               "the product-of-traces integrand has no residue at any weak "
               "point", weak_point_regularity(g2, ctx.basis, probe))
    # central extension bracket: Jacobi defect equals the cocycle defect
    br = central_extension_bracket(g1)
    ok = True
    for (m1, r1, a), (m2, r2, b), (m3, r3, c) in ctx.sample_product(
            [els, els, els], min(10, samples or 10)):
        from .laxalg import check_membership
        j1 = br(br((a, ZERO), (b, ZERO)), (c, ZERO))
        j2 = br(br((b, ZERO), (c, ZERO)), (a, ZERO))
        j3 = br(br((c, ZERO), (a, ZERO)), (b, ZERO))
        base = j1[0].value + j2[0].value + j3[0].value
        central = j1[1] + j2[1] + j3[1]
        if not base.is_zero():
            ok = False
        if central != check_cocycle_identity(g1, a, b, c):
            ok = False
        if not central.is_zero():
            ok = False
    report.add("cocycle/extension-jacobi",
               "the centrally extended bracket satisfies Jacobi exactly "
               "(equivalently the cocycle condition)", ok)


def _suite_invariance(ctx: Context, report: Report, samples, omega_prime):
    els = ctx.elements()
    vfs = _vf_range(ctx)
    cyc = Cycle.separating(ctx.sphere)
    g1 = Gamma1(ctx.omega, cyc)
    g2 = Gamma2(cyc)
    ok = True
    for e, (m1, r1, a), (m2, r2, b) in ctx.sample_product(
            [vfs, els, els], samples):
        if not invariance_defect(g1, e, a, b, ctx.omega).is_zero():
            ok = False
    report.add("invariance/gamma1-self",
               "gamma1 is invariant under the action defined by its own "
               "connection", ok)
    ok = True
    for e, (m1, r1, a), (m2, r2, b) in ctx.sample_product(
            [vfs, els, els], samples):
        if not invariance_defect(g2, e, a, b, ctx.omega).is_zero():
            ok = False
    report.add("invariance/gamma2",
               "gamma2 is invariant under the vector-field action", ok)
    if ctx.flavor.is_simple:
        om2 = omega_prime if omega_prime is not None else \
            distinct_connection(ctx.omega, ctx.config.pole_budget)
        found = False
        for e, (m1, r1, a), (m2, r2, b) in ctx.sample_product(
                [vfs, els, els], 4 * (samples or DEFAULT_SAMPLES)):
            if not invariance_defect(g1, e, a, b, om2).is_zero():
                found = True
                break
        report.add("invariance/gamma1-mismatch",
                   "with a different action connection some invariance "
                   "defect is nonzero", found,
                   None if found else "all sampled defects vanished")
    sample = ctx.sample_product([vfs, els, els], min(20, samples or 20))
    defects = extend_to_dg_defects(
        g1, ctx.omega, [(e, a, b) for e, (_, _, a), (_, _, b) in sample])
    ok = all(mixed == inv for mixed, inv in defects)
    okz = all(mixed.is_zero() for mixed, _ in defects)
    report.add("invariance/semidirect-extension",
               "the zero-extension is a cocycle for the semidirect sum "
               "exactly where the invariance defect vanishes", ok and okz)


def _suite_locality(ctx: Context, report: Report):
    lo, hi = ctx.config.degree_window
    cyc = Cycle.separating(ctx.sphere)
    g1 = Gamma1(ctx.omega, cyc)
    t1 = materialize(g1, ctx.basis, (lo, hi))
    b1 = t1.level_bounds()
    report.add("locality/gamma1-upper",
               "the trace-pairing cocycle over a separating cycle vanishes "
               "above level zero and hits level zero",
               b1 is not None and b1[1] == 0,
               f"empirical (R, S) = {b1}")
    report.add("locality/gamma1-lower",
               "the lower level bound is finite on the window",
               b1 is not None and b1[0] >= 2 * lo,
               f"R = {b1[0] if b1 else None}")
    g2 = Gamma2(cyc)
    t2 = materialize(g2, ctx.basis, (lo, hi))
    if ctx.flavor.kind in ("gl", "s"):
        n = ctx.flavor.n
        ok = t2.level_bounds() == (0, 0)
        # against the scalar elements the values are n^2 m delta_{n+m,0}
        from .laxalg import check_membership
        from .matfun import MatRatFun
        from .linalg import ExactMatrix
        for a in range(lo, hi + 1):
            for b in range(lo, hi + 1):
                ea = check_membership(MatRatFun.monomial(
                    ctx.sphere, ExactMatrix.identity(n), a), ctx.tyurin)
                eb = check_membership(MatRatFun.monomial(
                    ctx.sphere, ExactMatrix.identity(n), b), ctx.tyurin)
                want = Scalar(n * n * b) if a + b == 0 else ZERO
                if g2.value(ea, eb) != want:
                    ok = False
        report.add("locality/gamma2-scalar-values",
                   "gamma2 on scalar elements equals n^2 m delta_{n+m,0}",
                   ok, f"empirical bounds {t2.level_bounds()}")
    else:
        report.add("locality/gamma2-traceless",
                   "gamma2 vanishes identically on a traceless flavor",
                   t2.is_zero())
    if ctx.sphere.k >= 1:
        g1s = Gamma1(ctx.omega, Cycle(False, [0]))
        ts = materialize(g1s, ctx.basis, (max(lo, -2), min(hi, 2)))
        report.add("locality/single-weak-cycle",
                   "a cycle around one weak point integrates the regular "
                   "integrand to zero", ts.is_zero())
    if ctx.flavor.kind == "gl":
        ok = gl_cross_vanishing(g1, ctx.tyurin, (max(lo, -2), min(hi, 2)))
        ok2 = gl_cross_vanishing(g2, ctx.tyurin, (max(lo, -2), min(hi, 2)))
        report.add("locality/gl-cross-vanishing",
                   "bounded cocycles vanish between the scalar and "
                   "traceless parts", ok and ok2)
        indep = (not t1.is_zero()) and (not t2.is_zero()) and \
            _tables_independent(t1, t2)
        report.add("locality/gl-two-dimensional",
                   "the two geometric cocycles are linearly independent on "
                   "the window", indep)


def _tables_independent(t1, t2) -> bool:
    # dependent iff t1 = c t2 for some scalar c (both nonzero here)
    for key, v in t2.entries.items():
        w = t1.value(*key)
        c = w / v
        return not (t1 - t2.scale(c)).is_zero()
    return True


def _suite_normalization(ctx: Context, report: Report):
    if not ctx.flavor.is_simple:
        report.add("normalization/not-applicable",
                   "normalization machinery needs a simple flavor", True,
                   "skipped")
        return
    rs = root_system(ctx.flavor)
    report.add("normalization/chevalley-relations",
               "the exact root data satisfies the full bracket table", True,
               f"{len(rs.roots)} roots, {len(rs.simple)} simple")
    lo, hi = ctx.config.degree_window
    span = max(hi, -lo, 3)
    cb = lift_basis(rs, ctx.tyurin, (-2 * span - 2, 2 * span + 2))
    report.add("normalization/lifted-relations",
               "the degree-indexed lifts satisfy the leading bracket "
               "relations", True)
    cyc = Cycle.separating(ctx.sphere)
    g1 = Gamma1(ctx.omega, cyc)
    table, _ = normalize(g1, cb, 1, (-span, span))
    rep = verify_recursions(table, cb)
    for key, bad in rep.items():
        report.add(f"normalization/{key}",
                   "recursion law of the normalized cocycle", not bad,
                   f"{len(bad)} violations" if bad else None)
    rng = random.Random(ctx.config.seed + 1)
    vals = {}
    for m in range(-2, 3):
        for r in range(ctx.flavor.dim):
            if rng.random() < 0.5:
                vals[(m, r)] = Scalar(rng.randint(-5, 5))
    phi = LinearFunctional(cb.graded, vals)
    cut = max(3, hi) + 1
    ok = normalized_coboundary_check(phi, cb, cut, (-span, span))
    report.add("normalization/coboundary-vanishes",
               "a normalized coboundary is identically zero on the window",
               ok)


def _suite_uniqueness(ctx: Context, report: Report):
    if not ctx.flavor.is_simple:
        report.add("uniqueness/not-applicable",
                   "uniqueness machinery needs a simple flavor", True,
                   "skipped")
        return
    rs = root_system(ctx.flavor)
    lo, hi = ctx.config.degree_window
    span = max(hi, -lo, 3)
    cb = lift_basis(rs, ctx.tyurin, (-2 * span - 2, 2 * span + 2))
    cyc = Cycle.separating(ctx.sphere)
    g1 = Gamma1(ctx.omega, cyc)
    win = (-span, span)
    c, mis = uniqueness_driver(5 * g1, g1, cb, 1, win)
    report.add("uniqueness/scalar-multiple",
               "a scalar multiple normalizes to the same table scaled",
               c == Scalar(5), f"c = {c}" if c is not None else str(mis))
    rng = random.Random(ctx.config.seed + 2)
    ok = True
    details = []
    for trial in range(3):
        vals = {}
        for m in range(-2, 3):
            for r in range(ctx.flavor.dim):
                if rng.random() < 0.5:
                    vals[(m, r)] = Scalar(rng.randint(-4, 4))
        phi = LinearFunctional(cb.graded, vals)
        cut = max(3, hi) + 1
        c, mis = uniqueness_driver(g1 + phi.coboundary(), g1, cb, cut, win)
        details.append(str(c))
        if c != ONE:
            ok = False
    report.add("uniqueness/coboundary-shift",
               "adding a coboundary does not change the normalized table",
               ok, "c = " + ", ".join(details))
    om2 = distinct_connection(ctx.omega, ctx.config.pole_budget)
    g1p = Gamma1(om2, cyc)
    c, mis = uniqueness_driver(g1p, g1, cb, 1, win)
    report.add("uniqueness/connection-change",
               "changing the connection does not change the class",
               c == ONE, f"c = {c}" if c is not None else str(mis))
    phi, verified = connection_independence_witness(
        ctx.omega, om2, cyc, ctx.basis,
        (max(lo, -3), min(hi, 3)))
    report.add("uniqueness/connection-coboundary-witness",
               "the difference of the two geometric cocycles is exactly the "
               "coboundary of the pairing against their difference form",
               verified)
    bracket_zero, value = nonbound_witness(g1, ctx.basis)
    report.add("uniqueness/nonbound-witness",
               "a commuting pair with nonzero cocycle value rules out "
               "coboundaries", bracket_zero and not value.is_zero(),
               f"value = {value}")
    tab, _ = normalize(g1, cb, 1, win)
    psi = psi_form(tab, cb.graded)
    cpsi = psi.proportionality_to_trace()
    report.add("uniqueness/psi-trace-form",
               "the level-zero form of the normalized cocycle is an exact "
               "multiple of the trace form",
               psi.is_symmetric() and psi.is_ad_invariant()
               and cpsi is not None,
               f"psi = ({cpsi}) * trace form")
