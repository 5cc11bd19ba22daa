"""Geometric 2-cocycles, coboundaries, tables and their verification.

The two geometric cocycles are contour integrals of trace forms,

    gamma1(L, L') = (1/2 pi i) oint_C tr(L . nabla L'),
    gamma2(L, L') = (1/2 pi i) oint_C tr(L) . tr(nabla L'),

evaluated here as exact residue sums over the points the cycle encloses.
gamma2 does not feel the connection at all (the commutator is traceless);
for gamma1 the evaluator also computes the rewritten integrand
tr(L dL' - W [L,L'] dz) and insists the two agree, as an internal
cross-check of the residue machinery.

Everything a verdict depends on is materialized as an exact table over a
declared degree window; equality of cocycles always means entry-for-entry
equality of such tables, and every report says which window it covers.
Orientation is fixed once: residues at P+ count positively.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .connection import ConnectionForm, KNVectorField, covariant_derivative
from .laxalg import (
    Flavor,
    GradedBasis,
    LaxElement,
    TyurinData,
    decompose,
)
from .linalg import ExactMatrix, commutator
from .matfun import Cycle, MatRatFun, integrate_cycle
from .ratfun import RatFun
from .scalars import ONE, ZERO, Scalar

__all__ = [
    "Cocycle",
    "Gamma1",
    "Gamma2",
    "CoboundaryCocycle",
    "LinearCombinationCocycle",
    "TableCocycle",
    "CocycleTable",
    "LinearFunctional",
    "PsiForm",
    "materialize",
    "check_cocycle_identity",
    "invariance_defect",
    "central_extension_bracket",
    "locality_bounds",
    "weak_point_regularity",
    "connection_independence_witness",
    "extend_to_dg_defects",
    "psi_form",
    "level_law_report",
    "nonbound_witness",
    "gl_cross_vanishing",
    "default_cartan_element",
]


def _trace_product(a: MatRatFun, b: MatRatFun) -> RatFun:
    """tr(a b) without forming the full product."""
    acc = RatFun.zero(a.sphere)
    for i in range(a.size):
        for j in range(a.size):
            x, y = a[i, j], b[j, i]
            if not (x.is_zero() or y.is_zero()):
                acc = acc + x * y
    return acc


class Cocycle:
    """Bilinear form on the Lax algebra, evaluated exactly."""

    def value(self, a: LaxElement, b: LaxElement) -> Scalar:
        raise NotImplementedError

    def __mul__(self, c) -> "Cocycle":
        return LinearCombinationCocycle([(Scalar(c) if not isinstance(c, Scalar) else c, self)])

    __rmul__ = __mul__

    def __add__(self, other: "Cocycle") -> "Cocycle":
        return LinearCombinationCocycle([(ONE, self), (ONE, other)])

    def __sub__(self, other: "Cocycle") -> "Cocycle":
        return LinearCombinationCocycle([(ONE, self), (-ONE, other)])


class Gamma1(Cocycle):
    """The trace-pairing cocycle against the covariant derivative."""

    def __init__(self, omega: ConnectionForm, cycle: Cycle,
                 cross_check: bool = True):
        self.omega = omega
        self.cycle = cycle
        self.cross_check = cross_check
        self._nabla_cache: Dict[int, MatRatFun] = {}
        self._keep = []

    def nabla(self, b: LaxElement) -> MatRatFun:
        """dL/dz + [W, L] for the second slot (coefficient of the 1-form)."""
        key = id(b)
        got = self._nabla_cache.get(key)
        if got is None:
            got = b.value.derivative() + self.omega.value.commutator(b.value)
            self._nabla_cache[key] = got
            self._keep.append(b)
        return got

    def integrand(self, a: LaxElement, b: LaxElement) -> RatFun:
        return _trace_product(a.value, self.nabla(b))

    def value(self, a: LaxElement, b: LaxElement) -> Scalar:
        form = self.integrand(a, b)
        out = integrate_cycle(form, self.cycle)
        if self.cross_check:
            rewritten = _trace_product(a.value, b.value.derivative()) \
                - _trace_product(self.omega.value,
                                 a.value.commutator(b.value))
            alt = integrate_cycle(rewritten, self.cycle)
            if alt != out:
                raise ArithmeticError(
                    "gamma1 evaluations disagree between the defining and "
                    "rewritten integrands")
        return out


class Gamma2(Cocycle):
    """The product-of-traces cocycle; independent of the connection."""

    def __init__(self, cycle: Cycle):
        self.cycle = cycle

    def integrand(self, a: LaxElement, b: LaxElement) -> RatFun:
        return a.value.trace() * b.value.trace().derivative()

    def value(self, a: LaxElement, b: LaxElement) -> Scalar:
        return integrate_cycle(self.integrand(a, b), self.cycle)


class LinearFunctional:
    """Linear form given by its values on graded basis elements.

    Values outside the window are zero.  Evaluation on an arbitrary element
    decomposes it over the stored basis.
    """

    def __init__(self, basis: GradedBasis,
                 values: Dict[Tuple[int, int], Scalar]):
        self.basis = basis
        self.values = {k: v for k, v in values.items() if v}

    @staticmethod
    def zero(basis: GradedBasis) -> "LinearFunctional":
        return LinearFunctional(basis, {})

    def __call__(self, el) -> Scalar:
        val = el.value if isinstance(el, LaxElement) else el
        if val.is_zero():
            return ZERO
        comps = decompose(val, self.basis)
        acc = ZERO
        for m, comp in comps.items():
            lead = comp.value.coeff_at(Scalar(0), m)
            coords = self.basis.coords(lead)
            for r, c in enumerate(coords):
                if c:
                    v = self.values.get((m, r))
                    if v:
                        acc = acc + c * v
        return acc

    def coboundary(self) -> "CoboundaryCocycle":
        return CoboundaryCocycle(self)


class CoboundaryCocycle(Cocycle):
    """delta phi: (L, L') -> phi([L, L'])."""

    def __init__(self, phi: LinearFunctional):
        self.phi = phi

    def value(self, a: LaxElement, b: LaxElement) -> Scalar:
        return self.phi(a.value.commutator(b.value))


class LinearCombinationCocycle(Cocycle):
    def __init__(self, terms: Sequence[Tuple[Scalar, Cocycle]]):
        self.terms = list(terms)

    def value(self, a: LaxElement, b: LaxElement) -> Scalar:
        acc = ZERO
        for c, coc in self.terms:
            if c:
                acc = acc + c * coc.value(a, b)
        return acc


class CocycleTable:
    """Sparse exact table of cocycle values on graded basis pairs.

    Entries are keyed by (n, r, m, s); antisymmetry is stored explicitly.
    All verdicts about equality of cocycles are scoped to the declared
    degree window.
    """

    def __init__(self, window: Tuple[int, int],
                 entries: Dict[Tuple[int, int, int, int], Scalar]):
        self.window = window
        self.entries = {k: v for k, v in entries.items() if v}

    def value(self, n: int, r: int, m: int, s: int) -> Scalar:
        return self.entries.get((n, r, m, s), ZERO)

    def scale(self, c: Scalar) -> "CocycleTable":
        return CocycleTable(self.window,
                            {k: c * v for k, v in self.entries.items()})

    def __sub__(self, other: "CocycleTable") -> "CocycleTable":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) - v
        return CocycleTable(self.window, out)

    def __eq__(self, other):
        if not isinstance(other, CocycleTable):
            return NotImplemented
        return self.window == other.window and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def level_bounds(self) -> Optional[Tuple[int, int]]:
        """(R, S): tightest empirical level bounds, or None when empty."""
        if not self.entries:
            return None
        levels = [n + m for (n, _, m, _) in self.entries]
        return min(levels), max(levels)

    def check_antisymmetry(self) -> bool:
        for (n, r, m, s), v in self.entries.items():
            if self.value(m, s, n, r) != -v:
                return False
        return True

    def first_difference(self, other: "CocycleTable"):
        keys = sorted(set(self.entries) | set(other.entries))
        for k in keys:
            if self.value(*k) != other.value(*k):
                return k, self.value(*k), other.value(*k)
        return None

    def as_dict(self):
        ordered = sorted(self.entries)
        return {
            "window": list(self.window),
            "entries": [
                {"n": n, "r": r, "m": m, "s": s,
                 "value": str(self.entries[(n, r, m, s)])}
                for (n, r, m, s) in ordered
            ],
        }


class TableCocycle(Cocycle):
    """Cocycle backed by a materialized table (zero outside the window)."""

    def __init__(self, table: CocycleTable, basis: GradedBasis):
        self.table = table
        self.basis = basis

    def value(self, a: LaxElement, b: LaxElement) -> Scalar:
        acc = ZERO
        ca = _basis_coords(a, self.basis)
        cb = _basis_coords(b, self.basis)
        for (n, r), x in ca:
            for (m, s), y in cb:
                v = self.table.value(n, r, m, s)
                if v:
                    acc = acc + x * y * v
        return acc


def _basis_coords(el: LaxElement, basis: GradedBasis):
    out = []
    for m, comp in decompose(el, basis).items():
        lead = comp.value.coeff_at(Scalar(0), m)
        for r, c in enumerate(basis.coords(lead)):
            if c:
                out.append(((m, r), c))
    return out


def materialize(coc: Cocycle, basis: GradedBasis,
                degrees: Tuple[int, int]) -> CocycleTable:
    """Exact table of the cocycle over all basis pairs in the degree range."""
    lo, hi = degrees
    idx = [(m, r, el) for m in range(lo, hi + 1)
           for r, el in enumerate(basis.elements(m))]
    entries: Dict[Tuple[int, int, int, int], Scalar] = {}
    for i, (n, r, a) in enumerate(idx):
        for (m, s, b) in idx[i:]:
            v = coc.value(a, b)
            if v:
                entries[(n, r, m, s)] = v
                entries[(m, s, n, r)] = -v
                if (n, r) == (m, s):
                    raise ArithmeticError(
                        "antisymmetry violated on the diagonal")
    return CocycleTable(degrees, entries)


def check_cocycle_identity(coc: Cocycle, a: LaxElement, b: LaxElement,
                           c: LaxElement) -> Scalar:
    """Defect of the 2-cocycle condition on a triple (0 when it holds)."""
    from .laxalg import check_membership
    t = a.tyurin
    ab = check_membership(a.value.commutator(b.value), t)
    bc = check_membership(b.value.commutator(c.value), t)
    ca = check_membership(c.value.commutator(a.value), t)
    return coc.value(ab, c) + coc.value(bc, a) + coc.value(ca, b)


def invariance_defect(coc: Cocycle, e: KNVectorField, a: LaxElement,
                      b: LaxElement, omega_prime: ConnectionForm) -> Scalar:
    """gamma(nabla_e L, L') + gamma(L, nabla_e L'), exact."""
    na = covariant_derivative(e, a, omega_prime)
    nb = covariant_derivative(e, b, omega_prime)
    return coc.value(na, b) + coc.value(a, nb)


def central_extension_bracket(coc: Cocycle):
    """The bracket of the one-dimensional central extension.

    Elements are pairs (L, c); the added central generator is (0, 1).
    Returns a function of two pairs.
    """
    from .laxalg import check_membership

    def br(x: Tuple[LaxElement, Scalar], y: Tuple[LaxElement, Scalar]):
        l1, _ = x
        l2, _ = y
        base = check_membership(l1.value.commutator(l2.value), l1.tyurin)
        return (base, coc.value(l1, l2))

    return br


def locality_bounds(table: CocycleTable):
    return table.level_bounds()


def weak_point_regularity(coc, basis: GradedBasis,
                          degrees: Tuple[int, int]) -> bool:
    """Exact vanishing of the integrand residues at every weak point,
    for all basis pairs in the degree range.

    This is what makes the cycle class irrelevant for separating cycles:
    only the residues at P+ and P- survive.
    """
    lo, hi = degrees
    els = [el for m in range(lo, hi + 1) for el in basis.elements(m)]
    gammas = basis.tyurin.sphere.weak_points
    for a in els:
        for b in els:
            form = coc.integrand(a, b)
            for g in gammas:
                if not form.residue_at(g).is_zero():
                    return False
    return True


def connection_independence_witness(
        omega: ConnectionForm, omega2: ConnectionForm, cycle: Cycle,
        basis: GradedBasis, degrees: Tuple[int, int]):
    """The linear form whose coboundary is gamma1(omega) - gamma1(omega2).

    Returns (functional, verified) where the functional phi has values
    phi(L) = -(1/2 pi i) oint tr((omega - omega2) L) on the basis window
    and `verified` states that the coboundary matches the difference of
    the two cocycles entry-for-entry on the window.
    """
    theta = omega.value - omega2.value
    lo, hi = degrees
    values = {}
    for m in range(lo, hi + 1):
        for r, el in enumerate(basis.elements(m)):
            v = -integrate_cycle(_trace_product(theta, el.value), cycle)
            if v:
                values[(m, r)] = v
    phi = LinearFunctional(basis, values)
    g1a = Gamma1(omega, cycle, cross_check=False)
    g1b = Gamma1(omega2, cycle, cross_check=False)
    idx = [(m, r, el) for m in range(lo, hi + 1)
           for r, el in enumerate(basis.elements(m))]
    verified = True
    for i, (n, r, a) in enumerate(idx):
        for (m, s, b) in idx[i:]:
            diff = g1a.value(a, b) - g1b.value(a, b)
            via_phi = -integrate_cycle(
                _trace_product(theta, a.value.commutator(b.value)), cycle)
            if diff != via_phi:
                verified = False
    return phi, verified


def extend_to_dg_defects(coc: Cocycle, omega: ConnectionForm,
                         samples) -> List[Tuple[Scalar, Scalar]]:
    """Mixed cocycle condition for the zero-extension to the semidirect sum.

    For each sample (e, L, L') returns (mixed-condition defect,
    invariance defect); the two must agree identically: the extension is a
    cocycle for the big algebra exactly when the small cocycle is
    invariant under the vector-field action.
    """
    from .connection import d1g_bracket
    out = []
    for (e, a, b) in samples:
        lhs1, _ = d1g_bracket((b, _zero_vf(e)), (_zero_lax(a), e), omega)
        lhs2, _ = d1g_bracket((_zero_lax(a), e), (a, _zero_vf(e)), omega)
        mixed = coc.value(lhs1, a) + coc.value(lhs2, b)
        inv = invariance_defect(coc, e, a, b, omega)
        out.append((mixed, inv))
    return out


def _zero_vf(e: KNVectorField) -> KNVectorField:
    return KNVectorField(None, RatFun.zero(e.value.sphere))


def _zero_lax(el: LaxElement) -> LaxElement:
    from .laxalg import check_membership
    return check_membership(
        MatRatFun.zero(el.value.sphere, el.value.size), el.tyurin)


class PsiForm:
    """The symmetric invariant form read off a level-zero-bounded cocycle."""

    def __init__(self, matrix: ExactMatrix, basis: GradedBasis):
        self.matrix = matrix
        self.basis = basis

    def is_symmetric(self) -> bool:
        return self.matrix == self.matrix.transpose()

    def is_ad_invariant(self) -> bool:
        """psi([X,Y], Z) == psi(X, [Y,Z]) over all basis triples."""
        bas = self.basis.leading
        d = len(bas)
        coords = [[self.basis.coords(commutator(bas[i], bas[j]))
                   for j in range(d)] for i in range(d)]

        def psi_coords(cs, k):
            return sum((c * self.matrix[t, k] for t, c in enumerate(cs) if c),
                       ZERO)

        for i in range(d):
            for j in range(d):
                for k in range(d):
                    lhs = psi_coords(coords[i][j], k)
                    rhs = sum(
                        (c * self.matrix[i, t]
                         for t, c in enumerate(coords[j][k]) if c), ZERO)
                    if lhs != rhs:
                        return False
        return True

    def trace_form(self) -> ExactMatrix:
        bas = self.basis.leading
        return ExactMatrix([[(x * y).trace() for y in bas] for x in bas])

    def proportionality_to_trace(self) -> Optional[Scalar]:
        """The exact constant c with psi = c * trace form, or None."""
        t = self.trace_form()
        c = None
        for i in range(t.rows):
            for j in range(t.cols):
                if t[i, j]:
                    c = self.matrix[i, j] / t[i, j]
                    break
            if c is not None:
                break
        if c is None:
            return None
        ok = all(
            self.matrix[i, j] == c * t[i, j]
            for i in range(t.rows) for j in range(t.cols)
        )
        return c if ok else None


def psi_form(source, basis: GradedBasis) -> PsiForm:
    """psi(X, Y) := gamma(X~_1, Y~_{-1}) over the leading basis.

    `source` is a Cocycle or CocycleTable; positive levels must vanish on
    the window (checked when a table is given), which makes psi
    independent of the chosen lifts.
    """
    if isinstance(source, CocycleTable):
        lb = source.level_bounds()
        if lb is not None and lb[1] > 0:
            raise ValueError("cocycle not bounded by level zero on the window")
        d = basis.flavor.dim
        mat = ExactMatrix([[source.value(1, r, -1, s) for s in range(d)]
                           for r in range(d)])
        return PsiForm(mat, basis)
    plus = basis.elements(1)
    minus = basis.elements(-1)
    # lift independence needs vanishing above level zero: probe it
    for a in basis.elements(2):
        for b in minus:
            if source.value(a, b):
                raise ValueError(
                    "cocycle not bounded by level zero on the window")
    for a in plus:
        for b in basis.elements(0):
            if source.value(a, b):
                raise ValueError(
                    "cocycle not bounded by level zero on the window")
    mat = ExactMatrix([[source.value(a, b) for b in minus] for a in plus])
    return PsiForm(mat, basis)


def level_law_report(table: CocycleTable, basis: GradedBasis):
    """The level laws of an invariant cocycle bounded from above.

    Returns dict of named boolean verdicts:
      - bounded-by-zero:   no nonzero value at positive level
      - degree-zero-partner: gamma(L_m, L_0) = 0 for m >= 0
      - level-zero-scaling:  gamma(L_n, L_{-n}) = n gamma(L_1, L_{-1})
      - level-zero-symmetry: gamma(L_1^r, L_{-1}^s) = gamma(L_1^s, L_{-1}^r)
    """
    lo, hi = table.window
    d = basis.flavor.dim
    out = {}
    lb = table.level_bounds()
    out["bounded-by-zero"] = lb is None or lb[1] <= 0
    ok = True
    for m in range(0, hi + 1):
        for r in range(d):
            for s in range(d):
                if table.value(m, r, 0, s):
                    ok = False
    out["degree-zero-partner"] = ok
    ok = True
    for n in range(lo, hi + 1):
        if not (lo <= -n <= hi):
            continue
        for r in range(d):
            for s in range(d):
                if table.value(n, r, -n, s) != \
                        Scalar(n) * table.value(1, r, -1, s):
                    ok = False
    out["level-zero-scaling"] = ok
    ok = True
    for r in range(d):
        for s in range(d):
            if table.value(1, r, -1, s) != table.value(1, s, -1, r):
                ok = False
    out["level-zero-symmetry"] = ok
    return out


def default_cartan_element(flavor: Flavor) -> ExactMatrix:
    """A diagonalizable element with nonzero trace-form square, used for
    the non-coboundary witness."""
    n, sz = flavor.n, flavor.size
    if flavor.kind in ("gl",):
        return ExactMatrix.unit(n, 0, 0)
    if flavor.kind == "sl":
        return ExactMatrix.unit(n, 0, 0) - ExactMatrix.unit(n, 1, 1)
    if flavor.kind == "s":
        return ExactMatrix.identity(n)
    if flavor.kind == "so":
        m = ExactMatrix.unit(n, 0, 1) - ExactMatrix.unit(n, 1, 0)
        return m.scale(Scalar(0, -1))
    return ExactMatrix.unit(sz, 0, 0) - ExactMatrix.unit(sz, n, n)


def nonbound_witness(coc: Cocycle, basis: GradedBasis,
                     h: Optional[ExactMatrix] = None):
    """The pair that separates the geometric cocycle from all coboundaries.

    Builds H_(n) = H_0 A_n, returns (bracket_is_zero, value); any
    coboundary vanishes on the pair since the bracket does, so a nonzero
    value certifies the cocycle class is nontrivial.  A zero value makes
    the witness inconclusive.
    """
    flavor = basis.flavor
    if h is None:
        h = default_cartan_element(flavor)
    if (h * h).trace().is_zero():
        raise ValueError("witness element must have nonzero trace square")
    h0 = basis.element_for_leading(h, 0)
    sphere = basis.tyurin.sphere
    h_minus = h0.mul_function(RatFun.monomial(sphere, -1))
    h_plus = h0.mul_function(RatFun.monomial(sphere, 1))
    bracket_zero = h_minus.value.commutator(h_plus.value).is_zero()
    value = coc.value(h_minus, h_plus)
    return bracket_zero, value


def gl_cross_vanishing(coc: Cocycle, tyurin_gl: TyurinData,
                       degrees: Tuple[int, int]) -> bool:
    """gamma(scalar part, traceless part) = 0 on all window pairs."""
    from .laxalg import check_membership
    if tyurin_gl.flavor.kind != "gl":
        raise ValueError("needs the gl flavor")
    n = tyurin_gl.flavor.n
    sphere = tyurin_gl.sphere
    lo, hi = degrees
    scalars = [
        check_membership(
            MatRatFun.monomial(sphere, ExactMatrix.identity(n), m),
            tyurin_gl)
        for m in range(lo, hi + 1)
    ]
    t_sl = TyurinData(sphere, tyurin_gl.alphas, Flavor("sl", n))
    sl_basis = GradedBasis(t_sl, degrees)
    traceless = [
        check_membership(el.value, tyurin_gl)
        for m in range(lo, hi + 1) for el in sl_basis.elements(m)
    ]
    for x in scalars:
        for y in traceless:
            if coc.value(x, y):
                return False
    return True
