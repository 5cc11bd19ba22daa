"""Function and vector-field algebras at genus zero, connection forms, and
the covariant-derivative action on the Lax algebra.

At genus zero with two marked points the standard degree-indexed objects
are exact monomials: A_m = z^m and e_k = z^{k+1} d/dz, and all structure
relations close without correction terms.

A connection form omega = W(z) dz is holomorphic at 0, may have poles at
infinity (bounded by the pole budget) and has prescribed simple poles at
the active weak points: the residue has the same rank-one shape as for
algebra elements but with the pairing normalized to 1 instead of 0.  The
covariant derivative in direction e is e.(d/dz + [W, .]); certifying its
output at the weak points is the pole-cancellation content of the action
theorems.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .linalg import ExactMatrix, InfeasibleError, solve_affine
from .laxalg import (
    Flavor,
    LaxClosureError,
    LaxElement,
    MembershipError,
    TyurinData,
    _conj_unit,
    _eigenvalue,
    _first_nonzero_index,
    check_membership,
    residue_beta_vectors,
    residue_space_basis,
)
from .matfun import MatRatFun
from .ratfun import MarkedSphere, Poly, RatFun
from .scalars import ONE, ZERO, Scalar

__all__ = [
    "KNFunction",
    "KNVectorField",
    "kn_function",
    "kn_vector_field",
    "vf_bracket",
    "vf_apply",
    "ConnectionForm",
    "ConnectionFormError",
    "build_connection",
    "distinct_connection",
    "check_connection",
    "covariant_derivative",
    "d1_bracket",
    "d1g_bracket",
]


class KNFunction:
    """Degree-indexed basis function of the two-point function algebra:
    A_m = z^m exactly at genus zero."""

    __slots__ = ("index", "value")

    def __init__(self, index: int, value: RatFun):
        self.index = index
        self.value = value

    def __repr__(self):
        return f"A_{self.index}"


class KNVectorField:
    """Degree-indexed vector field e_k = z^{k+1} d/dz; `value` stores the
    coefficient function."""

    __slots__ = ("index", "value")

    def __init__(self, index: Optional[int], value: RatFun):
        self.index = index
        self.value = value

    def __repr__(self):
        return f"e_{self.index}" if self.index is not None else "e(.)"


def kn_function(m: int, sphere: MarkedSphere) -> KNFunction:
    return KNFunction(m, RatFun.monomial(sphere, m))


def kn_vector_field(k: int, sphere: MarkedSphere) -> KNVectorField:
    return KNVectorField(k, RatFun.monomial(sphere, k + 1))


def vf_bracket(e: KNVectorField, f: KNVectorField) -> KNVectorField:
    """[e, f] as vector fields; coefficient e f' - f e'."""
    coeff = e.value * f.value.derivative() - f.value * e.value.derivative()
    idx = None
    if e.index is not None and f.index is not None:
        idx = e.index + f.index
    return KNVectorField(idx, coeff)


def vf_apply(e: KNVectorField, g: RatFun) -> RatFun:
    """The derivation e . g = coeff(e) * dg/dz."""
    return e.value * g.derivative()


class ConnectionForm:
    """A certified connection form; `value` is the coefficient W of W dz."""

    __slots__ = ("value", "tyurin", "witnesses", "order2")

    def __init__(self, value: MatRatFun, tyurin: TyurinData,
                 witnesses: Dict[int, Tuple[ExactMatrix, Scalar,
                                            Optional[Scalar]]],
                 order2: bool = False):
        self.value = value
        self.tyurin = tyurin
        self.witnesses = witnesses
        self.order2 = order2

    def __eq__(self, other):
        return (isinstance(other, ConnectionForm)
                and self.value == other.value)

    def __repr__(self):
        return f"ConnectionForm(on {self.tyurin.flavor!r})"


class ConnectionFormError(ValueError):
    pass


def _connection_flavor_kind(flavor: Flavor) -> str:
    # sl and s have no flavor-valued connection of their own: the ambient
    # gl-type conditions are used (the residue has trace 1, so it cannot
    # be traceless); so/sp connections take values in their own algebra.
    return flavor.kind if flavor.kind in ("so", "sp") else "gl"


def check_connection(w: MatRatFun, tyurin: TyurinData,
                     order2: bool = False) -> ConnectionForm:
    """Certify a matrix function as an admissible connection coefficient."""
    flavor = tyurin.flavor
    if w.sphere != tyurin.sphere:
        raise ConnectionFormError("connection lives on a different sphere")
    kind = _connection_flavor_kind(flavor)
    if w.ord_at(Scalar(0)) < 0:
        raise ConnectionFormError("connection must be holomorphic at 0")
    if kind == "so" and not (w + w.transpose()).is_zero():
        raise ConnectionFormError("so connection must be skew-symmetric")
    if kind == "sp":
        sig = MatRatFun.from_constant(w.sphere, flavor.sigma)
        if not (w.transpose() * sig + sig * w).is_zero():
            raise ConnectionFormError("sp connection must be symplectic-valued")
    p_allowed = 2 if (kind == "sp" and order2) else 1
    witnesses = {}
    for s, g in enumerate(tyurin.sphere.weak_points):
        active = tyurin.alpha_active(s)
        o = w.ord_at(g)
        if not active:
            if o < 0:
                raise ConnectionFormError(
                    f"connection must be regular at inactive point {s}")
            continue
        if o < -p_allowed:
            raise ConnectionFormError(f"pole too deep at weak point {s}")
        alpha = tyurin.alphas[s]
        jet = w.jet_at(g, 2 - o)
        zero = ExactMatrix.zero(w.size)
        coeff = {k: (jet.coeff(k) if k >= o else None) or zero
                 for k in range(-p_allowed, 2)}
        if kind == "gl":
            r = coeff[-1]
            i0 = _first_nonzero_index(alpha)
            inv = alpha[i0, 0].inverse()
            beta = ExactMatrix.column(
                [inv * r[i0, j] for j in range(r.cols)])
            if r != alpha * beta.transpose():
                raise ConnectionFormError(f"residue shape at point {s}")
            if (beta.transpose() * alpha)[0, 0] != ONE:
                raise ConnectionFormError(f"normalization != 1 at point {s}")
            kappa = _eigenvalue(s, coeff[0], alpha)
            witnesses[s] = (beta, kappa, None)
        elif kind == "so":
            r = coeff[-1]
            u = _conj_unit(alpha)
            beta = -(r * u)
            if r != alpha * beta.transpose() - beta * alpha.transpose():
                raise ConnectionFormError(f"residue shape at point {s}")
            if (beta.transpose() * alpha)[0, 0] != ONE:
                raise ConnectionFormError(f"normalization != 1 at point {s}")
            kappa = _eigenvalue(s, coeff[0], alpha)
            witnesses[s] = (beta, kappa, None)
        else:  # sp
            sig = flavor.sigma
            nu = None
            if order2:
                q = coeff[-2]
                base = alpha * alpha.transpose() * sig
                nu = ZERO
                if not q.is_zero():
                    found = [(i, j) for i in range(base.rows)
                             for j in range(base.cols) if base[i, j]]
                    i0, j0 = found[0]
                    nu = q[i0, j0] / base[i0, j0]
                if q != base.scale(nu):
                    raise ConnectionFormError(f"order-2 shape at point {s}")
            r = coeff[-1]
            rt = r * (-sig)
            u = _conj_unit(alpha)
            tau = (u.transpose() * rt * u)[0, 0] / Scalar(2)
            beta = rt * u - alpha.scale(tau)
            if rt != alpha * beta.transpose() + beta * alpha.transpose():
                raise ConnectionFormError(f"residue shape at point {s}")
            if (beta.transpose() * sig * alpha)[0, 0] != ONE:
                raise ConnectionFormError(f"normalization != 1 at point {s}")
            kappa = _eigenvalue(s, coeff[0], alpha)
            d1 = (alpha.transpose() * sig * coeff[1] * alpha)[0, 0]
            if not d1.is_zero():
                raise ConnectionFormError(f"order-1 condition at point {s}")
            witnesses[s] = (beta, kappa, nu)
    return ConnectionForm(w, tyurin, witnesses, order2)


class _OmegaAnsatz:
    """Ansatz W = N(z) / prod_s (z - gamma_s)^p with deg N <= pK + budget;
    holomorphic at 0 by construction."""

    def __init__(self, tyurin: TyurinData, budget: int, p: int):
        self.tyurin = tyurin
        self.sphere = tyurin.sphere
        self.n = tyurin.flavor.size
        self.p = p
        self.hi = p * self.sphere.k + budget
        self.ncoeff = self.hi + 1
        self.n_entry = self.n * self.n * self.ncoeff
        self.kind = _connection_flavor_kind(tyurin.flavor)
        self.aux_offsets: Dict[int, Dict[str, Tuple[int, int]]] = {}
        off = self.n_entry
        for s in range(self.sphere.k):
            if not tyurin.alpha_active(s):
                continue
            blocks = {}
            if self.kind == "sp" and p == 2:
                blocks["nu"] = (off, 1)
                off += 1
            nres = len(self._betas(s))
            blocks["res"] = (off, nres)
            off += nres
            blocks["kappa"] = (off, 1)
            off += 1
            self.aux_offsets[s] = blocks
        self.total = off
        self._jets = []
        for g in self.sphere.weak_points:
            jets = []
            for t in range(self.ncoeff):
                f = RatFun(self.sphere, Poly.monomial(t), 0,
                           (p,) * self.sphere.k)
                jets.append({o: f.coeff_at(g, o) for o in range(-p, 2)})
            self._jets.append(jets)

    def _betas(self, s: int) -> List[ExactMatrix]:
        fl = Flavor(self.kind, self.tyurin.flavor.n)
        return residue_beta_vectors(fl, self.tyurin.alphas[s],
                                    homogeneous=False)

    def _res_basis(self, s: int) -> List[ExactMatrix]:
        fl = Flavor(self.kind, self.tyurin.flavor.n)
        return residue_space_basis(fl, self.tyurin.alphas[s],
                                   homogeneous=False)

    def index(self, i, j, t):
        return (i * self.n + j) * self.ncoeff + t

    def system(self) -> Tuple[List[List[Scalar]], List[Scalar]]:
        rows: List[List[Scalar]] = []
        rhs: List[Scalar] = []
        n, U = self.n, self.total
        fl = self.tyurin.flavor

        def new_row():
            return [ZERO] * U

        # flavor-valued conditions on the coefficient matrices
        for t in range(self.ncoeff):
            if self.kind == "so":
                for i in range(n):
                    for j in range(i, n):
                        row = new_row()
                        row[self.index(i, j, t)] = row[self.index(i, j, t)] + ONE
                        row[self.index(j, i, t)] = row[self.index(j, i, t)] + ONE
                        rows.append(row)
                        rhs.append(ZERO)
            elif self.kind == "sp":
                sig = fl.sigma
                for i in range(n):
                    for j in range(n):
                        row = new_row()
                        for k in range(n):
                            if sig[k, j]:
                                idx = self.index(k, i, t)
                                row[idx] = row[idx] + sig[k, j]
                            if sig[i, k]:
                                idx = self.index(k, j, t)
                                row[idx] = row[idx] + sig[i, k]
                        rows.append(row)
                        rhs.append(ZERO)

        for s in range(self.sphere.k):
            jets = self._jets[s]

            def jet_row(i, j, o, row):
                for t in range(self.ncoeff):
                    c = jets[t][o]
                    if c:
                        idx = self.index(i, j, t)
                        row[idx] = row[idx] + c

            if not self.tyurin.alpha_active(s):
                orders = [-2, -1] if self.p == 2 else [-1]
                for o in orders:
                    for i in range(n):
                        for j in range(n):
                            row = new_row()
                            jet_row(i, j, o, row)
                            rows.append(row)
                            rhs.append(ZERO)
                continue
            alpha = self.tyurin.alphas[s]
            blocks = self.aux_offsets[s]
            if self.kind == "sp" and self.p == 2:
                base = alpha * alpha.transpose() * fl.sigma
                off, _ = blocks["nu"]
                for i in range(n):
                    for j in range(n):
                        row = new_row()
                        jet_row(i, j, -2, row)
                        row[off] = -base[i, j]
                        rows.append(row)
                        rhs.append(ZERO)
            res_basis = self._res_basis(s)
            betas = self._betas(s)
            off, cnt = blocks["res"]
            for i in range(n):
                for j in range(n):
                    row = new_row()
                    jet_row(i, j, -1, row)
                    for k, b in enumerate(res_basis):
                        row[off + k] = -b[i, j]
                    rows.append(row)
                    rhs.append(ZERO)
            # pairing normalization = 1
            row = new_row()
            for k, b in enumerate(betas):
                if self.kind == "sp":
                    pair = (b.transpose() * fl.sigma * alpha)[0, 0]
                else:
                    pair = (b.transpose() * alpha)[0, 0]
                row[off + k] = pair
            rows.append(row)
            rhs.append(ONE)
            koff, _ = blocks["kappa"]
            for i in range(n):
                row = new_row()
                for j in range(n):
                    if alpha[j, 0]:
                        for t in range(self.ncoeff):
                            c = jets[t][0]
                            if c:
                                idx = self.index(i, j, t)
                                row[idx] = row[idx] + c * alpha[j, 0]
                row[koff] = -alpha[i, 0]
                rows.append(row)
                rhs.append(ZERO)
            if self.kind == "sp":
                lal = alpha.transpose() * fl.sigma
                row = new_row()
                for i in range(n):
                    if not lal[0, i]:
                        continue
                    for j in range(n):
                        if alpha[j, 0]:
                            for t in range(self.ncoeff):
                                c = jets[t][1]
                                if c:
                                    idx = self.index(i, j, t)
                                    row[idx] = row[idx] + lal[0, i] * c * alpha[j, 0]
                rows.append(row)
                rhs.append(ZERO)
        return rows, rhs

    def to_matfun(self, vec: ExactMatrix) -> MatRatFun:
        entries = []
        for i in range(self.n):
            r = []
            for j in range(self.n):
                coeffs = [vec[self.index(i, j, t), 0]
                          for t in range(self.ncoeff)]
                r.append(RatFun(self.sphere, Poly(coeffs), 0,
                                (self.p,) * self.sphere.k))
            entries.append(r)
        return MatRatFun(self.sphere, entries)


def build_connection(tyurin: TyurinData, pole_budget: int = 1,
                     order2: bool = False, variant: int = 0) -> ConnectionForm:
    """Construct an admissible connection form.

    Solves the affine constraint system on the rational ansatz and returns
    the canonical solution (free variables zero); `variant` > 0 adds the
    corresponding kernel direction, giving a different admissible form.
    If every Tyurin vector vanishes the zero form is returned.
    """
    if pole_budget < 0:
        raise ConnectionFormError("pole budget must be >= 0")
    sphere = tyurin.sphere
    n = tyurin.flavor.size
    if all(not tyurin.alpha_active(s) for s in range(sphere.k)):
        # without active weak points any flavor-valued form holomorphic at
        # 0 is admissible; the canonical choice is zero, variants pick a
        # constant from the connection flavor's basis
        w = MatRatFun.zero(sphere, n)
        if variant:
            fl = Flavor(_connection_flavor_kind(tyurin.flavor),
                        tyurin.flavor.n)
            bas = fl.leading_basis()
            w = MatRatFun.from_constant(sphere,
                                        bas[(variant - 1) % len(bas)])
        return check_connection(w, tyurin, order2)
    p = 2 if (order2 and _connection_flavor_kind(tyurin.flavor) == "sp") else 1
    ans = _OmegaAnsatz(tyurin, pole_budget, p)
    rows, rhs = ans.system()
    try:
        sol, kernel = solve_affine(
            ExactMatrix(rows), ExactMatrix.column(rhs))
    except InfeasibleError:
        from .linalg import rref
        _, piv = rref(ExactMatrix(rows))
        raise ConnectionFormError(
            f"no connection with pole budget {pole_budget}: system of rank "
            f"{len(piv)} in {ans.total} unknowns is inconsistent; raise the "
            f"budget")
    if variant:
        if not kernel:
            raise ConnectionFormError(
                "no kernel directions: cannot produce a distinct variant at "
                "this pole budget")
        sol = sol + kernel[(variant - 1) % len(kernel)]
    return check_connection(ans.to_matfun(sol), tyurin, order2)


def distinct_connection(omega: ConnectionForm,
                        pole_budget: int = 1) -> ConnectionForm:
    """An admissible connection different from the given one."""
    for variant in (1, 2, 3):
        try:
            cand = build_connection(omega.tyurin, pole_budget, omega.order2,
                                    variant)
        except ConnectionFormError:
            break
        if cand.value != omega.value:
            return cand
    cand = build_connection(omega.tyurin, pole_budget + 1, omega.order2)
    if cand.value == omega.value:
        cand = build_connection(omega.tyurin, pole_budget + 1, omega.order2,
                                variant=1)
    if cand.value == omega.value:
        raise ConnectionFormError("could not construct a distinct connection")
    return cand


def covariant_derivative(e: KNVectorField, el: LaxElement,
                         omega: ConnectionForm) -> LaxElement:
    """nabla_e L = e.(dL/dz + [W, L]), re-certified.

    Certification failure would contradict the closure of the action and
    is reported as an internal error.
    """
    if omega.tyurin != el.tyurin:
        raise ValueError("connection and element over different data")
    val = (el.value.derivative() + omega.value.commutator(el.value)).scale(
        e.value)
    try:
        return check_membership(val, el.tyurin)
    except MembershipError as exc:
        raise LaxClosureError(
            f"covariant derivative left the algebra: {exc}") from exc


def d1_bracket(a: Tuple[RatFun, KNVectorField],
               b: Tuple[RatFun, KNVectorField]):
    """Bracket of the degree-<=1 differential-operator algebra on pairs
    (function, vector field): [(g,e),(h,f)] = (e.h - f.g, [e,f])."""
    g, e = a
    h, f = b
    return (vf_apply(e, h) - vf_apply(f, g), vf_bracket(e, f))


def d1g_bracket(a: Tuple[LaxElement, KNVectorField],
                b: Tuple[LaxElement, KNVectorField],
                omega: ConnectionForm):
    """Bracket of the semidirect sum of the Lax algebra with the vector
    fields: [(L,e),(L',f)] = ([L,L'] + nabla_e L' - nabla_f L, [e,f])."""
    l1, e = a
    l2, f = b
    val = l1.value.commutator(l2.value) \
        + covariant_derivative(e, l2, omega).value \
        - covariant_derivative(f, l1, omega).value
    return (check_membership(val, l1.tyurin), vf_bracket(e, f))
