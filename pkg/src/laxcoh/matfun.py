"""Matrix-valued rational functions, Laurent jets, residues and cycles.

A MatRatFun is a square grid of RatFun entries over one shared MarkedSphere.
Together with the jet/residue machinery this is the global model of a Lax
operator on the sphere.  A 1-form g(z) dz is represented by its coefficient
g; residues and cycle integrals interpret the argument that way (with the
substitution z = 1/w, dz = -dw/w^2 at infinity).

Cycles are encoded by the set of finite marked points they enclose, with
counterclockwise orientation; on the sphere the integral of one of our forms
only depends on the enclosed residues, so nothing is lost.  A cycle never
encloses infinity.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Union

from .linalg import ExactMatrix, SizeMismatchError
from .ratfun import INFINITY, ORD_INF, MarkedSphere, RatFun
from .scalars import ZERO, Scalar

__all__ = [
    "MatRatFun",
    "LaurentJet",
    "Cycle",
    "integrate_cycle",
    "residue_theorem_check",
]

Point = Union[Scalar, str]


class LaurentJet:
    """Truncated Laurent expansion in the local coordinate of a point.

    ``coeffs[k]`` is the coefficient of order ``lead_order + k``; orders from
    ``truncation_order`` on are unknown.  The zero jet has empty coefficient
    storage and answers zero at every order.
    """

    __slots__ = ("point", "lead_order", "coeffs", "truncation_order")

    def __init__(self, point, lead_order: int, coeffs: Sequence,
                 truncation_order: Optional[int] = None):
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "lead_order", lead_order)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(
            self, "truncation_order",
            truncation_order if truncation_order is not None
            else lead_order + len(coeffs),
        )

    def __setattr__(self, name, value):
        raise AttributeError("LaurentJet is immutable")

    @property
    def is_exactly_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, order: int):
        if order >= self.truncation_order:
            raise ValueError(
                f"order {order} beyond jet truncation {self.truncation_order}"
            )
        if not self.coeffs or order < self.lead_order:
            return None  # caller substitutes its zero of the right shape
        return self.coeffs[order - self.lead_order]

    def __repr__(self):
        return (f"LaurentJet(point={self.point}, lead={self.lead_order}, "
                f"terms={len(self.coeffs)})")


class MatRatFun:
    """Square matrix of RatFun entries over one shared MarkedSphere."""

    __slots__ = ("sphere", "size", "_e")

    def __init__(self, sphere: MarkedSphere, entries: Sequence[Sequence[RatFun]]):
        e = tuple(tuple(row) for row in entries)
        n = len(e)
        for row in e:
            if len(row) != n:
                raise SizeMismatchError("MatRatFun must be square")
            for f in row:
                if f.sphere != sphere:
                    raise ValueError("entry on a different sphere")
        object.__setattr__(self, "sphere", sphere)
        object.__setattr__(self, "size", n)
        object.__setattr__(self, "_e", e)

    def __setattr__(self, name, value):
        raise AttributeError("MatRatFun is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(sphere: MarkedSphere, n: int) -> "MatRatFun":
        z = RatFun.zero(sphere)
        return MatRatFun(sphere, [[z] * n for _ in range(n)])

    @staticmethod
    def from_constant(sphere: MarkedSphere, m: ExactMatrix) -> "MatRatFun":
        return MatRatFun(sphere, [
            [RatFun.const(sphere, m[i, j]) for j in range(m.cols)]
            for i in range(m.rows)
        ])

    @staticmethod
    def monomial(sphere: MarkedSphere, m: ExactMatrix, k: int) -> "MatRatFun":
        """m * z^k."""
        return MatRatFun(sphere, [
            [RatFun.monomial(sphere, k, m[i, j]) for j in range(m.cols)]
            for i in range(m.rows)
        ])

    # -- access ---------------------------------------------------------------

    def __getitem__(self, ij) -> RatFun:
        i, j = ij
        return self._e[i][j]

    def entries(self):
        return self._e

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self._e for f in row)

    def __eq__(self, other):
        if not isinstance(other, MatRatFun):
            return NotImplemented
        return self.sphere == other.sphere and self._e == other._e

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: "MatRatFun") -> "MatRatFun":
        self._compat(other)
        return MatRatFun(self.sphere, [
            [a + b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self._e, other._e)
        ])

    def __sub__(self, other: "MatRatFun") -> "MatRatFun":
        self._compat(other)
        return MatRatFun(self.sphere, [
            [a - b for a, b in zip(r1, r2)]
            for r1, r2 in zip(self._e, other._e)
        ])

    def __neg__(self) -> "MatRatFun":
        return MatRatFun(self.sphere, [[-a for a in row] for row in self._e])

    def __mul__(self, other: "MatRatFun") -> "MatRatFun":
        self._compat(other)
        cols = list(zip(*other._e))
        out = []
        for row in self._e:
            orow = []
            for col in cols:
                acc = RatFun.zero(self.sphere)
                for a, b in zip(row, col):
                    if not (a.is_zero() or b.is_zero()):
                        acc = acc + a * b
                orow.append(acc)
            out.append(orow)
        return MatRatFun(self.sphere, out)

    def scale(self, c) -> "MatRatFun":
        if isinstance(c, RatFun):
            return MatRatFun(self.sphere,
                             [[c * a for a in row] for row in self._e])
        return MatRatFun(self.sphere,
                         [[a.scale(c) for a in row] for row in self._e])

    def commutator(self, other: "MatRatFun") -> "MatRatFun":
        return self * other - other * self

    def transpose(self) -> "MatRatFun":
        return MatRatFun(self.sphere, list(zip(*self._e)))

    def trace(self) -> RatFun:
        acc = RatFun.zero(self.sphere)
        for i in range(self.size):
            acc = acc + self._e[i][i]
        return acc

    def derivative(self) -> "MatRatFun":
        return MatRatFun(self.sphere,
                         [[a.derivative() for a in row] for row in self._e])

    def mul_constant(self, m: ExactMatrix, left: bool = False) -> "MatRatFun":
        """Product with a constant matrix (right by default)."""
        const = MatRatFun.from_constant(self.sphere, m)
        return const * self if left else self * const

    def eval(self, x: Scalar) -> ExactMatrix:
        return ExactMatrix([[f.eval(x) for f in row] for row in self._e])

    # -- local analysis --------------------------------------------------------

    def ord_at(self, point: Point):
        """Minimum over entries of the exact order at the point."""
        orders = [f.ord_at(point) for row in self._e for f in row]
        return min(orders) if orders else ORD_INF

    def jet_at(self, point: Point, window: int) -> LaurentJet:
        """Matrix Laurent jet: ``window`` coefficient matrices from the
        exact leading order of the whole matrix."""
        lead = self.ord_at(point)
        if lead == ORD_INF:
            return LaurentJet(point, 0, (), 0)
        n = self.size
        grids = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                f = self._e[i][j]
                if f.is_zero():
                    grids[i][j] = (0, [])
                    continue
                fl = f.ord_at(point)
                needed = window - (fl - lead)
                grids[i][j] = f.jet_at(point, needed) if needed > 0 else (fl, [])
        coeffs = []
        for k in range(window):
            order = lead + k
            mat = []
            for i in range(n):
                row = []
                for j in range(n):
                    fl, cs = grids[i][j]
                    idx = order - fl
                    row.append(cs[idx] if 0 <= idx < len(cs) else ZERO)
                mat.append(row)
            coeffs.append(ExactMatrix(mat))
        return LaurentJet(point, lead, coeffs)

    def coeff_at(self, point: Point, order: int) -> ExactMatrix:
        return ExactMatrix([
            [f.coeff_at(point, order) for f in row] for row in self._e
        ])

    def residue_at(self, point: Point) -> ExactMatrix:
        """Entrywise residue of self * dz."""
        return ExactMatrix([
            [f.residue_at(point) for f in row] for row in self._e
        ])

    def _compat(self, other: "MatRatFun"):
        if self.sphere != other.sphere or self.size != other.size:
            raise SizeMismatchError("incompatible MatRatFun operands")

    def __repr__(self):
        return f"MatRatFun({self.size}x{self.size} on {self.sphere!r})"


class Cycle:
    """A cycle encoded by the finite marked points it encloses.

    ``enclosed`` contains "P+" and/or weak-point labels "g0", "g1", ...
    (indices into the sphere's weak points).  Infinity is never enclosed.
    """

    __slots__ = ("enclose_zero", "weak_indices")

    def __init__(self, enclose_zero: bool, weak_indices: Sequence[int] = ()):
        object.__setattr__(self, "enclose_zero", enclose_zero)
        object.__setattr__(self, "weak_indices", frozenset(weak_indices))

    def __setattr__(self, name, value):
        raise AttributeError("Cycle is immutable")

    @staticmethod
    def separating(sphere: MarkedSphere) -> "Cycle":
        """The separating cycle: encloses P+ and every weak point."""
        return Cycle(True, range(sphere.k))

    @staticmethod
    def around_origin() -> "Cycle":
        return Cycle(True, ())

    @staticmethod
    def from_labels(labels: Sequence[str], sphere: MarkedSphere) -> "Cycle":
        zero = False
        weak = []
        for lab in labels:
            if lab in ("P+", "0"):
                zero = True
            elif lab.startswith("g"):
                idx = int(lab[1:])
                if not 0 <= idx < sphere.k:
                    raise ValueError(f"no weak point {lab}")
                weak.append(idx)
            else:
                raise ValueError(f"unknown cycle label {lab!r}")
        return Cycle(zero, weak)

    def labels(self) -> List[str]:
        out = ["P+"] if self.enclose_zero else []
        out.extend(f"g{s}" for s in sorted(self.weak_indices))
        return out

    def __eq__(self, other):
        return (isinstance(other, Cycle)
                and self.enclose_zero == other.enclose_zero
                and self.weak_indices == other.weak_indices)

    def __hash__(self):
        return hash((self.enclose_zero, self.weak_indices))

    def __repr__(self):
        return f"Cycle({'+'.join(self.labels()) or 'empty'})"


def integrate_cycle(form: RatFun, cycle: Cycle) -> Scalar:
    """(1/2 pi i) * contour integral of form * dz = sum of enclosed residues."""
    total = ZERO
    if cycle.enclose_zero:
        total = total + form.residue_at(Scalar(0))
    for s in cycle.weak_indices:
        total = total + form.residue_at(form.sphere.weak_points[s])
    return total


def residue_theorem_check(form: RatFun) -> bool:
    """True iff the residues of form * dz over all points sum to zero.

    Holds identically for well-formed RatFun forms; used as an internal
    consistency oracle for the residue machinery.
    """
    total = form.residue_at(Scalar(0))
    for g in form.sphere.weak_points:
        total = total + form.residue_at(g)
    total = total + form.residue_at(INFINITY)
    return total.is_zero()
