"""Lax operator algebras on the marked sphere.

An element is a matrix-valued rational function with poles only at 0,
infinity, and the weak points gamma_s, where the Laurent coefficients obey
the rank-one constraints attached to the Tyurin vectors alpha_s.  Each of
the five flavors (gl, sl, s, so, sp) has its own constraint shape; sp allows
double poles at the weak points, the rest simple poles.

The homogeneous subspace of degree m consists of the elements of order at
least m at 0 and at least -m at infinity.  For marked data in generic
position each such subspace has dimension dim(g) and carries a canonical
basis indexed by prescribed leading matrices; everything downstream
(brackets, degree decompositions, cocycle tables) is built on those bases.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import (
    ExactMatrix,
    InfeasibleError,
    commutator,
    nullspace,
    rref,
    solve_affine,
)
from .matfun import MatRatFun
from .ratfun import MarkedSphere, Poly, RatFun
from .scalars import ONE, ZERO, Scalar

__all__ = [
    "Flavor",
    "TyurinData",
    "ConstraintCertificate",
    "LaxElement",
    "GradedBasis",
    "MembershipError",
    "NonGenericError",
    "WindowExceededError",
    "LaxClosureError",
    "check_membership",
    "bracket",
    "build_homogeneous_space",
    "homogeneous_space_raw",
    "element_for_leading",
    "decompose",
    "grading_constants",
    "weak_perfect_decompose",
    "split_gl",
]


class MembershipError(ValueError):
    """A matrix function violates a membership constraint.

    Carries the index of the offending weak point (or None for global
    conditions) and the name of the first failed constraint.
    """

    def __init__(self, constraint: str, point_index: Optional[int] = None,
                 detail: str = ""):
        self.constraint = constraint
        self.point_index = point_index
        where = f" at weak point {point_index}" if point_index is not None else ""
        super().__init__(f"membership violation ({constraint}{where}) {detail}")


class NonGenericError(ValueError):
    """Tyurin data not in generic position for the requested construction."""


class WindowExceededError(ValueError):
    """A degree decomposition ran past the available basis window."""


class LaxClosureError(RuntimeError):
    """Internal inconsistency: an operation that must stay in the algebra
    produced something that fails re-certification."""


# ---------------------------------------------------------------------------
# flavors
# ---------------------------------------------------------------------------


_KINDS = ("gl", "sl", "s", "so", "sp")


class Flavor:
    """One of the matrix algebras gl(n), sl(n), s(n), so(n), sp(2n)."""

    __slots__ = ("kind", "n")

    def __init__(self, kind: str, n: int):
        if kind not in _KINDS:
            raise ValueError(f"unknown flavor kind {kind!r}")
        if n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("Flavor is immutable")

    @property
    def size(self) -> int:
        """Matrix size (2n for sp, n otherwise)."""
        return 2 * self.n if self.kind == "sp" else self.n

    @property
    def dim(self) -> int:
        n = self.n
        return {
            "gl": n * n,
            "sl": n * n - 1,
            "s": 1,
            "so": n * (n - 1) // 2,
            "sp": n * (2 * n + 1),
        }[self.kind]

    @property
    def weak_pole_order(self) -> int:
        return 2 if self.kind == "sp" else 1

    @property
    def is_simple(self) -> bool:
        return self.kind in ("sl", "so", "sp")

    @property
    def sigma(self) -> ExactMatrix:
        """The fixed symplectic form [[0, I], [-I, 0]] (sp only)."""
        if self.kind != "sp":
            raise ValueError("sigma is only defined for sp")
        n, s = self.n, self.size
        rows = [[ZERO] * s for _ in range(s)]
        for i in range(n):
            rows[i][n + i] = ONE
            rows[n + i][i] = -ONE
        return ExactMatrix(rows)

    def contains_matrix(self, x: ExactMatrix) -> bool:
        """Exact test for membership in the finite-dimensional algebra."""
        if x.rows != self.size or x.cols != self.size:
            return False
        if self.kind == "gl":
            return True
        if self.kind == "sl":
            return x.trace().is_zero()
        if self.kind == "s":
            c = x[0, 0]
            return all(
                (x[i, j] == (c if i == j else ZERO))
                for i in range(x.rows) for j in range(x.cols)
            )
        if self.kind == "so":
            return (x + x.transpose()).is_zero()
        sig = self.sigma
        return (x.transpose() * sig + sig * x).is_zero()

    def leading_basis(self) -> List[ExactMatrix]:
        """Canonical basis of the finite-dimensional algebra.

        gl: elementary matrices row-major; sl: off-diagonal elementary
        matrices then the diagonal differences; so: E_ij - E_ji for i < j;
        sp: block basis (A entries, then symmetric B, then symmetric C);
        s: the identity.
        """
        n, sz = self.n, self.size
        out: List[ExactMatrix] = []
        if self.kind == "gl":
            for i in range(n):
                for j in range(n):
                    out.append(ExactMatrix.unit(n, i, j))
        elif self.kind == "sl":
            for i in range(n):
                for j in range(n):
                    if i != j:
                        out.append(ExactMatrix.unit(n, i, j))
            for i in range(n - 1):
                out.append(
                    ExactMatrix.unit(n, i, i)
                    - ExactMatrix.unit(n, i + 1, i + 1)
                )
        elif self.kind == "s":
            out.append(ExactMatrix.identity(n))
        elif self.kind == "so":
            for i in range(n):
                for j in range(i + 1, n):
                    out.append(
                        ExactMatrix.unit(n, i, j) - ExactMatrix.unit(n, j, i)
                    )
        else:  # sp
            for i in range(n):
                for j in range(n):
                    out.append(
                        ExactMatrix.unit(sz, i, j)
                        - ExactMatrix.unit(sz, n + j, n + i)
                    )
            for i in range(n):
                for j in range(i, n):
                    m = ExactMatrix.unit(sz, i, n + j)
                    if i != j:
                        m = m + ExactMatrix.unit(sz, j, n + i)
                    out.append(m)
            for i in range(n):
                for j in range(i, n):
                    m = ExactMatrix.unit(sz, n + i, j)
                    if i != j:
                        m = m + ExactMatrix.unit(sz, n + j, i)
                    out.append(m)
        return out

    def __eq__(self, other):
        return (isinstance(other, Flavor) and self.kind == other.kind
                and self.n == other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        return f"{self.kind}({self.size})"


class TyurinData:
    """Weak points gamma_s with their Tyurin vectors alpha_s."""

    __slots__ = ("sphere", "alphas", "flavor")

    def __init__(self, sphere: MarkedSphere, alphas: Sequence[ExactMatrix],
                 flavor: Flavor):
        alphas = tuple(alphas)
        if len(alphas) != sphere.k:
            raise ValueError("one alpha per weak point required")
        for a in alphas:
            if a.cols != 1 or a.rows != flavor.size:
                raise ValueError("alpha must be a column of the flavor size")
        if flavor.kind == "so":
            for s, a in enumerate(alphas):
                dot = (a.transpose() * a)[0, 0]
                if not dot.is_zero():
                    raise ValueError(
                        f"so flavor requires isotropic alpha, point {s}"
                    )
        object.__setattr__(self, "sphere", sphere)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "flavor", flavor)

    def __setattr__(self, name, value):
        raise AttributeError("TyurinData is immutable")

    def alpha_active(self, s: int) -> bool:
        return not self.alphas[s].is_zero()

    def __eq__(self, other):
        return (isinstance(other, TyurinData) and self.sphere == other.sphere
                and self.alphas == other.alphas and self.flavor == other.flavor)

    def __hash__(self):
        return hash((self.sphere, self.alphas, self.flavor))


class ConstraintCertificate:
    """Witness data (beta_s, kappa_s, and nu_s for sp) per active weak point."""

    __slots__ = ("witnesses",)

    def __init__(self, witnesses: Dict[int, Tuple[ExactMatrix, Scalar,
                                                  Optional[Scalar]]]):
        object.__setattr__(self, "witnesses", dict(witnesses))

    def __setattr__(self, name, value):
        raise AttributeError("ConstraintCertificate is immutable")

    def beta(self, s: int) -> ExactMatrix:
        return self.witnesses[s][0]

    def kappa(self, s: int) -> Scalar:
        return self.witnesses[s][1]

    def nu(self, s: int) -> Optional[Scalar]:
        return self.witnesses[s][2]

    def __repr__(self):
        return f"ConstraintCertificate({sorted(self.witnesses)})"


class LaxElement:
    """A certified member of the Lax operator algebra."""

    __slots__ = ("value", "flavor", "tyurin", "certificate", "label")

    def __init__(self, value: MatRatFun, tyurin: TyurinData,
                 certificate: ConstraintCertificate, label: str = ""):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "flavor", tyurin.flavor)
        object.__setattr__(self, "tyurin", tyurin)
        object.__setattr__(self, "certificate", certificate)
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("LaxElement is immutable")

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __add__(self, other: "LaxElement") -> "LaxElement":
        self._compat(other)
        return check_membership(self.value + other.value, self.tyurin)

    def __sub__(self, other: "LaxElement") -> "LaxElement":
        self._compat(other)
        return check_membership(self.value - other.value, self.tyurin)

    def __neg__(self) -> "LaxElement":
        return LaxElement(-self.value, self.tyurin, self.certificate,
                          self.label and f"-{self.label}")

    def scale(self, c: Scalar) -> "LaxElement":
        return check_membership(self.value.scale(c), self.tyurin)

    def mul_function(self, f: RatFun) -> "LaxElement":
        """Multiply by a function holomorphic outside 0 and infinity."""
        if f.weak_pows != (0,) * f.sphere.k:
            raise ValueError("multiplier must be holomorphic at weak points")
        return check_membership(self.value.scale(f), self.tyurin)

    def ord_at(self, point):
        return self.value.ord_at(point)

    def _compat(self, other: "LaxElement"):
        if self.tyurin != other.tyurin:
            raise ValueError("elements over different Tyurin data")

    def __repr__(self):
        lab = f" {self.label}" if self.label else ""
        return f"LaxElement({self.flavor!r}{lab})"


# ---------------------------------------------------------------------------
# membership checking
# ---------------------------------------------------------------------------


def _first_nonzero_index(col: ExactMatrix) -> int:
    for i in range(col.rows):
        if col[i, 0]:
            return i
    raise ValueError("zero vector")


def _conj_unit(alpha: ExactMatrix) -> ExactMatrix:
    """u with u^t alpha = 1, built from the componentwise conjugate."""
    c = alpha.conj()
    norm = (c.transpose() * alpha)[0, 0]
    return c.scale(norm.inverse())


def _check_global(m: MatRatFun, flavor: Flavor):
    if flavor.kind == "sl":
        if not m.trace().is_zero():
            raise MembershipError("global linear condition", None,
                                  "trace not identically zero")
    elif flavor.kind == "s":
        diag = m[0, 0]
        for i in range(m.size):
            for j in range(m.size):
                want = diag if i == j else RatFun.zero(m.sphere)
                if m[i, j] != want:
                    raise MembershipError("global linear condition", None,
                                          "not a scalar matrix function")
    elif flavor.kind == "so":
        if not (m + m.transpose()).is_zero():
            raise MembershipError("global linear condition", None,
                                  "not skew-symmetric")
    elif flavor.kind == "sp":
        sig = MatRatFun.from_constant(m.sphere, flavor.sigma)
        if not (m.transpose() * sig + sig * m).is_zero():
            raise MembershipError("global linear condition", None,
                                  "symplectic identity fails")


def check_membership(m: MatRatFun, tyurin: TyurinData) -> LaxElement:
    """Certify a matrix function as a member of the Lax algebra.

    Returns the certified element; raises MembershipError naming the first
    failed constraint and the offending weak point.
    """
    flavor = tyurin.flavor
    if m.sphere != tyurin.sphere:
        raise ValueError("matrix function lives on a different sphere")
    if m.size != flavor.size:
        raise MembershipError("global linear condition", None, "wrong size")
    _check_global(m, flavor)
    p = flavor.weak_pole_order
    witnesses: Dict[int, Tuple[ExactMatrix, Scalar, Optional[Scalar]]] = {}
    for s, g in enumerate(tyurin.sphere.weak_points):
        active = tyurin.alpha_active(s) and flavor.kind != "s"
        o = m.ord_at(g)
        if not active:
            if o < 0:
                raise MembershipError("pole order", s,
                                      "must be holomorphic here")
            continue
        if o < -p:
            raise MembershipError("pole order", s, f"order {o} < -{p}")
        alpha = tyurin.alphas[s]
        jet = m.jet_at(g, 2 - o)
        zero = ExactMatrix.zero(m.size)
        coeff = {
            k: (jet.coeff(k) if k >= o else None) or zero
            for k in range(-p, 2)
        }
        if flavor.kind in ("gl", "sl"):
            witnesses[s] = _certify_gl_point(s, alpha, coeff)
        elif flavor.kind == "so":
            witnesses[s] = _certify_so_point(s, alpha, coeff)
        else:
            witnesses[s] = _certify_sp_point(s, alpha, coeff, flavor.sigma)
    return LaxElement(m, tyurin, ConstraintCertificate(witnesses))


def _certify_gl_point(s, alpha, coeff):
    r = coeff[-1]
    i0 = _first_nonzero_index(alpha)
    inv = alpha[i0, 0].inverse()
    beta = ExactMatrix.column([inv * r[i0, j] for j in range(r.cols)])
    if r != alpha * beta.transpose():
        raise MembershipError("residue shape", s)
    if not (beta.transpose() * alpha)[0, 0].is_zero():
        raise MembershipError("trace", s, "beta^t alpha != 0")
    kappa = _eigenvalue(s, coeff[0], alpha)
    return beta, kappa, None


def _certify_so_point(s, alpha, coeff):
    r = coeff[-1]
    u = _conj_unit(alpha)
    beta = -(r * u)
    if r != alpha * beta.transpose() - beta * alpha.transpose():
        raise MembershipError("residue shape", s)
    if not (beta.transpose() * alpha)[0, 0].is_zero():
        raise MembershipError("trace", s, "beta^t alpha != 0")
    kappa = _eigenvalue(s, coeff[0], alpha)
    return beta, kappa, None


def _certify_sp_point(s, alpha, coeff, sigma):
    q = coeff[-2]
    base = alpha * alpha.transpose() * sigma
    nu = ZERO
    if not q.is_zero():
        i0 = j0 = None
        for i in range(base.rows):
            for j in range(base.cols):
                if base[i, j]:
                    i0, j0 = i, j
                    break
            if i0 is not None:
                break
        nu = q[i0, j0] / base[i0, j0]
    if q != base.scale(nu):
        raise MembershipError("residue shape", s, "order -2 coefficient")
    r = coeff[-1]
    rt = r * (-sigma)  # sigma^{-1} = -sigma for the standard form
    u = _conj_unit(alpha)
    tau = (u.transpose() * rt * u)[0, 0] / Scalar(2)
    beta = rt * u - alpha.scale(tau)
    if rt != (alpha * beta.transpose() + beta * alpha.transpose()):
        raise MembershipError("residue shape", s, "order -1 coefficient")
    if not (beta.transpose() * sigma * alpha)[0, 0].is_zero():
        raise MembershipError("trace", s, "beta^t sigma alpha != 0")
    kappa = _eigenvalue(s, coeff[0], alpha)
    d1 = (alpha.transpose() * sigma * coeff[1] * alpha)[0, 0]
    if not d1.is_zero():
        raise MembershipError("order-1 condition", s)
    return beta, kappa, nu


def _eigenvalue(s, c0, alpha) -> Scalar:
    v = c0 * alpha
    i0 = _first_nonzero_index(alpha)
    kappa = v[i0, 0] / alpha[i0, 0]
    if v != alpha.scale(kappa):
        raise MembershipError("eigenvector", s)
    return kappa


def bracket(a: LaxElement, b: LaxElement) -> LaxElement:
    """Pointwise matrix commutator, re-certified.

    Closure is a theorem, so a certification failure here signals an
    internal inconsistency rather than bad user input.
    """
    a._compat(b)
    val = a.value.commutator(b.value)
    try:
        return check_membership(val, a.tyurin)
    except MembershipError as exc:  # pragma: no cover - should not happen
        raise LaxClosureError(f"bracket left the algebra: {exc}") from exc


def split_gl(el: LaxElement) -> Tuple[LaxElement, LaxElement]:
    """Split a gl element into its scalar and traceless parts, re-certified
    for their own flavors."""
    if el.flavor.kind != "gl":
        raise ValueError("split_gl requires the gl flavor")
    n = el.flavor.n
    tr = el.value.trace().scale(Scalar(1) / Scalar(n))
    scal = MatRatFun(el.value.sphere, [
        [tr if i == j else RatFun.zero(el.value.sphere) for j in range(n)]
        for i in range(n)
    ])
    rest = el.value - scal
    t_s = TyurinData(el.tyurin.sphere, el.tyurin.alphas, Flavor("s", n))
    t_sl = TyurinData(el.tyurin.sphere, el.tyurin.alphas, Flavor("sl", n))
    return check_membership(scal, t_s), check_membership(rest, t_sl)


# ---------------------------------------------------------------------------
# linear constraint systems for homogeneous subspaces
# ---------------------------------------------------------------------------


def _row_nullspace(rows: List[ExactMatrix]) -> List[ExactMatrix]:
    """Nullspace of the matrix whose rows are the given column vectors,
    i.e. the vectors x with row^t x = 0 for every row."""
    mat = ExactMatrix([[v[i, 0] for i in range(v.rows)] for v in rows])
    return nullspace(mat)


def _complement_mod(vectors: List[ExactMatrix],
                    mod: List[ExactMatrix]) -> List[ExactMatrix]:
    """Subset of `vectors` completing `mod` to an independent family."""
    kept: List[ExactMatrix] = []
    rows = [[m[i, 0] for i in range(m.rows)] for m in mod]
    rank = len(rref(ExactMatrix(rows))[1]) if rows else 0
    for v in vectors:
        cand = rows + [[v[i, 0] for i in range(v.rows)]]
        new_rank = len(rref(ExactMatrix(cand))[1])
        if new_rank > rank:
            kept.append(v)
            rows = cand
            rank = new_rank
    return kept


def residue_space_basis(flavor: Flavor, alpha: ExactMatrix,
                        homogeneous: bool = True) -> List[ExactMatrix]:
    """Basis of the allowed residue space at a weak point with vector alpha.

    With ``homogeneous`` the pairing constraint (beta^t alpha = 0 and its
    sp analogue) is built in, matching algebra elements; without it the
    full beta range is used, as needed for connection forms.
    """
    if flavor.kind in ("gl", "sl"):
        if homogeneous:
            betas = _row_nullspace([alpha])
        else:
            betas = [ExactMatrix.column(
                [ONE if i == k else ZERO for i in range(alpha.rows)])
                for k in range(alpha.rows)]
        return [alpha * b.transpose() for b in betas]
    if flavor.kind == "so":
        if homogeneous:
            betas = _complement_mod(_row_nullspace([alpha]), [alpha])
        else:
            full = [ExactMatrix.column(
                [ONE if i == k else ZERO for i in range(alpha.rows)])
                for k in range(alpha.rows)]
            betas = _complement_mod(full, [alpha])
        return [alpha * b.transpose() - b * alpha.transpose() for b in betas]
    if flavor.kind == "sp":
        sig = flavor.sigma
        if homogeneous:
            betas = _row_nullspace([sig * alpha])
        else:
            betas = [ExactMatrix.column(
                [ONE if i == k else ZERO for i in range(alpha.rows)])
                for k in range(alpha.rows)]
        return [(alpha * b.transpose() + b * alpha.transpose()) * sig
                for b in betas]
    raise ValueError("no residue space for this flavor")


def residue_beta_vectors(flavor: Flavor, alpha: ExactMatrix,
                         homogeneous: bool = True) -> List[ExactMatrix]:
    """The beta vectors whose images give residue_space_basis, in order."""
    if flavor.kind in ("gl", "sl"):
        if homogeneous:
            return _row_nullspace([alpha])
        return [ExactMatrix.column(
            [ONE if i == k else ZERO for i in range(alpha.rows)])
            for k in range(alpha.rows)]
    if flavor.kind == "so":
        if homogeneous:
            return _complement_mod(_row_nullspace([alpha]), [alpha])
        full = [ExactMatrix.column(
            [ONE if i == k else ZERO for i in range(alpha.rows)])
            for k in range(alpha.rows)]
        return _complement_mod(full, [alpha])
    if flavor.kind == "sp":
        if homogeneous:
            return _row_nullspace([flavor.sigma * alpha])
        return [ExactMatrix.column(
            [ONE if i == k else ZERO for i in range(alpha.rows)])
            for k in range(alpha.rows)]
    raise ValueError("no beta vectors for this flavor")


class _Ansatz:
    """Polynomial ansatz for the space {ord_0 >= d, ord_oo >= e, Tyurin}.

    Entries are N(z) / (z^a prod_s (z - gamma_s)^p) with numerator degrees
    lo..hi; the layout of the unknown vector is entry-major, coefficient
    within entry, auxiliaries (per-point residue coordinates, kappa, nu)
    appended at the end.
    """

    def __init__(self, tyurin: TyurinData, ord0_min: int, ordinf_min: int):
        flavor = tyurin.flavor
        self.tyurin = tyurin
        self.flavor = flavor
        self.sphere = tyurin.sphere
        self.n = flavor.size
        self.p = flavor.weak_pole_order
        self.a = max(0, -ord0_min)
        self.lo = max(ord0_min, 0)
        self.hi = self.a + self.p * self.sphere.k - ordinf_min
        self.ncoeff = max(0, self.hi - self.lo + 1)
        self.n_entry_unknowns = self.n * self.n * self.ncoeff
        # per weak point: list of (kind, count) auxiliary blocks
        self.aux_offsets: Dict[int, Dict[str, Tuple[int, int]]] = {}
        off = self.n_entry_unknowns
        for s in range(self.sphere.k):
            if not tyurin.alpha_active(s) or flavor.kind == "s":
                continue
            blocks: Dict[str, Tuple[int, int]] = {}
            if flavor.kind == "sp":
                blocks["nu"] = (off, 1)
                off += 1
            nres = len(residue_beta_vectors(flavor, tyurin.alphas[s]))
            blocks["res"] = (off, nres)
            off += nres
            blocks["kappa"] = (off, 1)
            off += 1
            self.aux_offsets[s] = blocks
        self.total_unknowns = off
        # jets of the scalar ansatz basis functions at each weak point
        self._point_jets: List[List[Dict[int, Scalar]]] = []
        for g in self.sphere.weak_points:
            jets = []
            for t in range(self.lo, self.hi + 1):
                f = RatFun(self.sphere, Poly.monomial(t), self.a,
                           (self.p,) * self.sphere.k)
                jets.append({o: f.coeff_at(g, o) for o in range(-self.p, 2)})
            self._point_jets.append(jets)
        # leading normalization: coefficient of z^{ord0_min} of the t=lo
        # basis function
        s0 = ONE
        for g in self.sphere.weak_points:
            for _ in range(self.p):
                s0 = s0 * (-g)
        self.lead_scale = s0.inverse()

    def index(self, i: int, j: int, t: int) -> int:
        return (i * self.n + j) * self.ncoeff + (t - self.lo)

    def rows(self) -> List[List[Scalar]]:
        """All constraint rows (global flavor conditions, then per-point)."""
        rows: List[List[Scalar]] = []
        U = self.total_unknowns
        fl = self.flavor

        def new_row():
            return [ZERO] * U

        # global flavor conditions per numerator coefficient
        for t in range(self.lo, self.hi + 1):
            if fl.kind == "sl":
                row = new_row()
                for i in range(self.n):
                    row[self.index(i, i, t)] = ONE
                rows.append(row)
            elif fl.kind == "so":
                for i in range(self.n):
                    for j in range(i, self.n):
                        row = new_row()
                        row[self.index(i, j, t)] = row[self.index(i, j, t)] + ONE
                        row[self.index(j, i, t)] = row[self.index(j, i, t)] + ONE
                        rows.append(row)
            elif fl.kind == "sp":
                sig = fl.sigma
                for i in range(self.n):
                    for j in range(self.n):
                        row = new_row()
                        for k in range(self.n):
                            if sig[k, j]:
                                idx = self.index(k, i, t)
                                row[idx] = row[idx] + sig[k, j]
                            if sig[i, k]:
                                idx = self.index(k, j, t)
                                row[idx] = row[idx] + sig[i, k]
                        rows.append(row)
            elif fl.kind == "s":
                for i in range(self.n):
                    for j in range(self.n):
                        if i == 0 and j == 0:
                            continue
                        row = new_row()
                        row[self.index(i, j, t)] = ONE
                        if i == j:
                            row[self.index(0, 0, t)] = -ONE
                        rows.append(row)

        # weak point conditions
        for s in range(self.sphere.k):
            jets = self._point_jets[s]
            active = self.tyurin.alpha_active(s) and fl.kind != "s"
            if not active:
                for o in ([-2, -1] if self.p == 2 else [-1]):
                    for i in range(self.n):
                        for j in range(self.n):
                            row = new_row()
                            for t in range(self.lo, self.hi + 1):
                                c = jets[t - self.lo][o]
                                if c:
                                    row[self.index(i, j, t)] = c
                            rows.append(row)
                continue
            alpha = self.tyurin.alphas[s]
            blocks = self.aux_offsets[s]

            def jet_row(i, j, o, row):
                for t in range(self.lo, self.hi + 1):
                    c = jets[t - self.lo][o]
                    if c:
                        idx = self.index(i, j, t)
                        row[idx] = row[idx] + c

            if fl.kind == "sp":
                base = alpha * alpha.transpose() * fl.sigma
                off, _ = blocks["nu"]
                for i in range(self.n):
                    for j in range(self.n):
                        row = new_row()
                        jet_row(i, j, -2, row)
                        row[off] = -base[i, j]
                        rows.append(row)
            res_basis = residue_space_basis(fl, alpha)
            off, cnt = blocks["res"]
            for i in range(self.n):
                for j in range(self.n):
                    row = new_row()
                    jet_row(i, j, -1, row)
                    for k, b in enumerate(res_basis):
                        row[off + k] = -b[i, j]
                    rows.append(row)
            koff, _ = blocks["kappa"]
            for i in range(self.n):
                row = new_row()
                for j in range(self.n):
                    if alpha[j, 0]:
                        for t in range(self.lo, self.hi + 1):
                            c = jets[t - self.lo][0]
                            if c:
                                idx = self.index(i, j, t)
                                row[idx] = row[idx] + c * alpha[j, 0]
                row[koff] = -alpha[i, 0]
                rows.append(row)
            if fl.kind == "sp":
                lal = alpha.transpose() * fl.sigma  # row vector (1 x n)
                row = new_row()
                for i in range(self.n):
                    if not lal[0, i]:
                        continue
                    for j in range(self.n):
                        if alpha[j, 0]:
                            for t in range(self.lo, self.hi + 1):
                                c = jets[t - self.lo][1]
                                if c:
                                    idx = self.index(i, j, t)
                                    row[idx] = row[idx] + lal[0, i] * c * alpha[j, 0]
                rows.append(row)
        return rows

    def to_matfun(self, vec: ExactMatrix) -> MatRatFun:
        entries = []
        for i in range(self.n):
            r = []
            for j in range(self.n):
                coeffs = [ZERO] * self.lo + [
                    vec[self.index(i, j, t), 0]
                    for t in range(self.lo, self.hi + 1)
                ]
                r.append(RatFun(self.sphere, Poly(coeffs), self.a,
                                (self.p,) * self.sphere.k))
            entries.append(r)
        return MatRatFun(self.sphere, entries)

    def leading_matrix(self, vec: ExactMatrix) -> ExactMatrix:
        """Coefficient of z^{ord0_min} at 0 of the represented function."""
        return ExactMatrix([
            [self.lead_scale * vec[self.index(i, j, self.lo), 0]
             for j in range(self.n)]
            for i in range(self.n)
        ])


def solve_constrained_space(tyurin: TyurinData, ord0_min: int,
                            ordinf_min: int) -> Tuple[_Ansatz, List[ExactMatrix]]:
    """Exact basis of {L : ord_0 >= ord0_min, ord_oo >= ordinf_min, Tyurin}."""
    ans = _Ansatz(tyurin, ord0_min, ordinf_min)
    if ans.ncoeff <= 0:
        return ans, []
    rows = ans.rows()
    if not rows:
        mat = ExactMatrix.zero(1, ans.total_unknowns)
    else:
        mat = ExactMatrix(rows)
    return ans, nullspace(mat)


def build_homogeneous_space(m: int, tyurin: TyurinData) -> List[LaxElement]:
    """Canonical basis of the degree-m homogeneous subspace.

    Basis elements carry the flavor's canonical leading matrices; dimension
    different from dim(g) raises NonGenericError.
    """
    basis = GradedBasis(tyurin, (m, m))
    return basis.elements(m)


def homogeneous_space_raw(m: int, tyurin: TyurinData) -> List[LaxElement]:
    """Certified rref-canonical basis of the degree-m subspace.

    Unlike build_homogeneous_space this makes no genericity demands: it
    returns whatever the constraint system yields, so degenerate data can
    still be inspected (and its members certified).
    """
    ans, null = solve_constrained_space(tyurin, m, -m)
    return [check_membership(ans.to_matfun(v), tyurin) for v in null]


class GradedBasis:
    """Degree-indexed exact basis X_m^r with prescribed leading matrices.

    Construction is lazy per degree and cached.  The leading matrices
    default to the flavor's canonical basis; a different basis of the
    finite-dimensional algebra (e.g. a Chevalley basis) may be supplied.
    """

    def __init__(self, tyurin: TyurinData,
                 window: Tuple[int, int],
                 leading: Optional[List[ExactMatrix]] = None):
        self.tyurin = tyurin
        self.flavor = tyurin.flavor
        self.window = window
        self.leading = leading if leading is not None \
            else self.flavor.leading_basis()
        if len(self.leading) != self.flavor.dim:
            raise ValueError("leading basis has wrong cardinality")
        self._coord_cache = None
        self._spaces: Dict[int, List[LaxElement]] = {}

    # coordinates of a matrix in the chosen leading basis
    def coords(self, x: ExactMatrix) -> List[Scalar]:
        if self._coord_cache is None:
            cols = [b.flat() for b in self.leading]
            mat = ExactMatrix(list(zip(*cols)))
            self._coord_cache = mat
        try:
            sol, ker = solve_affine(self._coord_cache,
                                    ExactMatrix.column(x.flat()))
        except InfeasibleError:
            raise MembershipError(
                "global linear condition", None,
                "leading matrix outside the finite-dimensional algebra")
        return [sol[i, 0] for i in range(sol.rows)]

    def elements(self, m: int) -> List[LaxElement]:
        if m < self.window[0] or m > self.window[1]:
            raise WindowExceededError(
                f"degree {m} outside basis window {self.window}")
        if m in self._spaces:
            return self._spaces[m]
        ans, null = solve_constrained_space(self.tyurin, m, -m)
        d = self.flavor.dim
        if len(null) != d:
            raise NonGenericError(
                f"dim of degree-{m} space is {len(null)}, expected {d}")
        lead_coords = [self.coords(ans.leading_matrix(v)) for v in null]
        mat = ExactMatrix(list(zip(*lead_coords)))
        red, pivots = rref(ExactMatrix(
            [list(row) + [ONE if i == j else ZERO for j in range(d)]
             for i, row in enumerate(mat.entries())]))
        if pivots != list(range(d)):
            raise NonGenericError(
                f"leading matrices of degree-{m} space are dependent")
        inv = ExactMatrix([[red[i, d + j] for j in range(d)]
                           for i in range(d)])
        out = []
        for r in range(d):
            vec = None
            for k in range(d):
                c = inv[k, r]
                if not c:
                    continue
                term = null[k].scale(c)
                vec = term if vec is None else vec + term
            el = check_membership(ans.to_matfun(vec), self.tyurin)
            out.append(LaxElement(el.value, self.tyurin, el.certificate,
                                  label=f"X[{m},{r}]"))
        self._spaces[m] = out
        return out

    def element(self, m: int, r: int) -> LaxElement:
        return self.elements(m)[r]

    def element_for_leading(self, x: ExactMatrix, m: int) -> LaxElement:
        """The unique element of degree m with leading coefficient x at 0."""
        coords = self.coords(x)
        els = self.elements(m)
        val = MatRatFun.zero(self.tyurin.sphere, self.flavor.size)
        for c, el in zip(coords, els):
            if c:
                val = val + el.value.scale(c)
        return check_membership(val, self.tyurin)

    def all_elements(self, lo: Optional[int] = None,
                     hi: Optional[int] = None):
        lo = self.window[0] if lo is None else lo
        hi = self.window[1] if hi is None else hi
        for m in range(lo, hi + 1):
            for r, el in enumerate(self.elements(m)):
                yield m, r, el


def element_for_leading(x: ExactMatrix, m: int,
                        tyurin: TyurinData) -> LaxElement:
    """Standalone entry point; verifies uniqueness of the solution."""
    basis = GradedBasis(tyurin, (m, m))
    el = basis.element_for_leading(x, m)
    _, extra = solve_constrained_space(tyurin, m + 1, -m)
    if extra:
        raise NonGenericError(
            "degree space contains an element with vanishing leading term")
    return el


def decompose(el, basis: GradedBasis) -> Dict[int, LaxElement]:
    """Exact finite decomposition into homogeneous components.

    Accepts a LaxElement or a bare MatRatFun.  Peels leading coefficients
    at 0; raises WindowExceededError when a component degree would fall
    outside the basis window.
    """
    out: Dict[int, LaxElement] = {}
    rest = el.value if isinstance(el, LaxElement) else el
    while not rest.is_zero():
        h = rest.ord_at(Scalar(0))
        if h < basis.window[0] or h > basis.window[1]:
            raise WindowExceededError(
                f"component degree {h} outside window {basis.window}")
        lead = rest.coeff_at(Scalar(0), h)
        comp = basis.element_for_leading(lead, h)
        out[h] = comp
        rest = rest - comp.value
        if not rest.is_zero() and rest.ord_at(Scalar(0)) <= h:
            raise LaxClosureError("peeling failed to raise the order")
    return out


def grading_constants(basis: GradedBasis, probe: Tuple[int, int]) -> int:
    """Measure the almost-grading constant over the probe degree range.

    Decomposes every bracket of basis elements with degrees in the probe
    range, checks the band [m+k, m+k+M] and the leading-term law (the
    degree-(m+k) component is the lift of the finite-dimensional bracket),
    and returns the smallest such M.
    """
    m_best = 0
    lo, hi = probe
    for m in range(lo, hi + 1):
        for k in range(m, hi + 1):
            for r, x in enumerate(basis.elements(m)):
                for s, y in enumerate(basis.elements(k)):
                    if m == k and s < r:
                        continue
                    br = x.value.commutator(y.value)
                    if br.is_zero():
                        continue
                    comps = decompose(br, basis)
                    degs = sorted(comps)
                    if degs[0] < m + k:
                        raise LaxClosureError(
                            "bracket component below the degree sum")
                    xy = commutator(basis.leading[r], basis.leading[s])
                    expected = basis.element_for_leading(xy, m + k)
                    got = comps.get(m + k)
                    got_val = got.value if got is not None else \
                        MatRatFun.zero(basis.tyurin.sphere, basis.flavor.size)
                    if got_val != expected.value:
                        raise LaxClosureError(
                            "leading component differs from the lifted bracket")
                    m_best = max(m_best, degs[-1] - (m + k))
    return m_best


def weak_perfect_decompose(y: LaxElement, m: int, basis: GradedBasis):
    """Write y as a sum of brackets modulo the filtration step F_m.

    Only defined for the simple flavors; returns (pairs, remainder) with
    remainder of order at least m at 0.
    """
    flavor = y.flavor
    if not flavor.is_simple:
        raise ValueError("weak perfectness needs a simple flavor")
    d = flavor.dim
    bas = basis.leading
    # matrix of the map (C_1, ..., C_d) -> sum_i [B_i, C_i], onto g since
    # the simple algebra is perfect
    cols = []
    for bi in bas:
        for cj in bas:
            cols.append(commutator(bi, cj).flat())
    mat = ExactMatrix(list(zip(*cols)))
    pairs: List[Tuple[LaxElement, LaxElement]] = []
    rest = y.value
    while not rest.is_zero() and rest.ord_at(Scalar(0)) < m:
        k = rest.ord_at(Scalar(0))
        if k < basis.window[0]:
            raise WindowExceededError("leading degree below basis window")
        x = rest.coeff_at(Scalar(0), k)
        sol, _ = solve_affine(mat, ExactMatrix.column(x.flat()))
        new_val = rest
        for i in range(d):
            ci = ExactMatrix.zero(flavor.size)
            nonzero = False
            for j in range(d):
                c = sol[i * d + j, 0]
                if c:
                    ci = ci + bas[j].scale(c)
                    nonzero = True
            if not nonzero:
                continue
            left = basis.element_for_leading(bas[i], 0)
            right = basis.element_for_leading(ci, k)
            pairs.append((left, right))
            new_val = new_val - left.value.commutator(right.value)
        if not new_val.is_zero() and new_val.ord_at(Scalar(0)) <= k:
            raise LaxClosureError("perfectness step failed to raise order")
        rest = new_val
    remainder = check_membership(rest, y.tyurin)
    return pairs, remainder
