"""Rational functions on the sphere with poles at 0, infinity and weak points.

Coordinates are fixed once and for all: z at P+ = 0, w = 1/z at P- = infinity,
and z - gamma_s at the weak point gamma_s.  A RatFun is stored in the canceled
canonical form

    numerator(z) / ( z^a * prod_s (z - gamma_s)^{e_s} ),   a, e_s >= 0,

where the numerator polynomial shares no root with the declared denominator
factors.  Poles can therefore occur only at 0, infinity and the weak points,
which is exactly the function class the Lax constructions live in.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

__all__ = ["MarkedSphere", "Poly", "RatFun", "INFINITY", "ORD_INF"]

INFINITY = "oo"

# order of the zero function at any point
ORD_INF = float("inf")


class MarkedSphere:
    """The sphere with P+ = 0, P- = infinity and pairwise distinct weak
    points gamma_s, none of which hits a marked point."""

    __slots__ = ("weak_points",)

    def __init__(self, weak_points: Sequence[Scalar] = ()):
        pts = tuple(
            p if isinstance(p, Scalar) else Scalar(p) for p in weak_points
        )
        for i, p in enumerate(pts):
            if p.is_zero():
                raise ValueError("weak point coincides with 0")
            if any(p == q for q in pts[:i]):
                raise ValueError(f"duplicate weak point {p}")
        object.__setattr__(self, "weak_points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("MarkedSphere is immutable")

    @property
    def k(self) -> int:
        return len(self.weak_points)

    def __eq__(self, other):
        return (
            isinstance(other, MarkedSphere)
            and self.weak_points == other.weak_points
        )

    def __hash__(self):
        return hash(self.weak_points)

    def __repr__(self):
        return f"MarkedSphere({', '.join(str(p) for p in self.weak_points)})"


class Poly:
    """Dense polynomial over Scalar; coeffs[k] is the z^k coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar] = ()):
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(x: Scalar) -> "Poly":
        return Poly((x,))

    @staticmethod
    def monomial(k: int, c: Scalar = ONE) -> "Poly":
        return Poly((ZERO,) * k + (c,))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def ord(self) -> int:
        """Order of vanishing at 0 (ORD_INF for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return ORD_INF

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _P_ZERO
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = out[i + j] + ai * bj
        return Poly(out)

    def scale(self, c: Scalar) -> "Poly":
        if not c:
            return _P_ZERO
        return Poly([c * a for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by z^k (k >= 0)."""
        if self.is_zero():
            return self
        return Poly((ZERO,) * k + self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(
            [Scalar(k) * c for k, c in enumerate(self.coeffs)][1:]
        )

    def eval(self, x: Scalar) -> Scalar:
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def div_linear(self, c: Scalar) -> "Poly":
        """Exact division by (z - c); requires self(c) == 0."""
        out: List[Scalar] = []
        acc = ZERO
        for a in reversed(self.coeffs):
            acc = acc * c + a
            out.append(acc)
        rem = out.pop()
        if rem:
            raise ValueError("polynomial not divisible by the linear factor")
        out.reverse()
        return Poly(out)

    def taylor_at(self, c: Scalar) -> "Poly":
        """Coefficients of p(c + u) as a polynomial in u."""
        if not c:
            return self
        coeffs = list(self.coeffs)
        n = len(coeffs)
        out = []
        for _ in range(n):
            acc = ZERO
            for k in range(n - 1, -1, -1):
                acc = acc * c + coeffs[k]
                coeffs[k] = acc  # synthetic division, remainder collects
            out.append(coeffs[0])
            coeffs = coeffs[1:]
            n -= 1
        return Poly(out)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = [
            f"({c})*z^{k}" for k, c in enumerate(self.coeffs) if c
        ]
        return "Poly(" + " + ".join(terms) + ")"


_P_ZERO = Poly(())
_P_ONE = Poly((ONE,))


def _series_inverse(coeffs: List[Scalar], n: int) -> List[Scalar]:
    """First n coefficients of 1/sum(coeffs[k] u^k); coeffs[0] != 0."""
    inv0 = coeffs[0].inverse()
    out = [inv0]
    for k in range(1, n):
        acc = ZERO
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            acc = acc + coeffs[j] * out[k - j]
        out.append(-inv0 * acc)
    return out


class RatFun:
    """Rational function in canceled canonical form on a MarkedSphere."""

    __slots__ = ("sphere", "num", "z_pow", "weak_pows")

    def __init__(self, sphere: MarkedSphere, num: Poly, z_pow: int = 0,
                 weak_pows: Optional[Sequence[int]] = None, *,
                 canceled: bool = False):
        wp = tuple(weak_pows) if weak_pows is not None else (0,) * sphere.k
        if len(wp) != sphere.k:
            raise ValueError("weak_pows length mismatch")
        if z_pow < 0 or any(e < 0 for e in wp):
            raise ValueError("denominator exponents must be >= 0")
        if not canceled:
            num, z_pow, wp = _cancel(sphere, num, z_pow, wp)
        object.__setattr__(self, "sphere", sphere)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "z_pow", z_pow)
        object.__setattr__(self, "weak_pows", wp)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(sphere: MarkedSphere) -> "RatFun":
        return RatFun(sphere, _P_ZERO, 0, (0,) * sphere.k, canceled=True)

    @staticmethod
    def const(sphere: MarkedSphere, c: Scalar) -> "RatFun":
        return RatFun(sphere, Poly.const(c))

    @staticmethod
    def monomial(sphere: MarkedSphere, m: int, c: Scalar = ONE) -> "RatFun":
        """c * z^m for any integer m."""
        if not c:
            return RatFun.zero(sphere)
        if m >= 0:
            return RatFun(sphere, Poly.monomial(m, c), 0, None, canceled=True)
        return RatFun(sphere, Poly.const(c), -m, None, canceled=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "RatFun"):
        if self.sphere != other.sphere:
            raise ValueError("RatFun arguments live on different spheres")

    def __add__(self, other: "RatFun") -> "RatFun":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if (self.z_pow == other.z_pow
                and self.weak_pows == other.weak_pows):
            return RatFun(self.sphere, self.num + other.num,
                          self.z_pow, self.weak_pows)
        a = max(self.z_pow, other.z_pow)
        wp = tuple(
            max(e, f) for e, f in zip(self.weak_pows, other.weak_pows)
        )
        n1 = self.num.shift(a - self.z_pow) * _weak_product(
            self.sphere, [e - f for e, f in zip(wp, self.weak_pows)]
        )
        n2 = other.num.shift(a - other.z_pow) * _weak_product(
            self.sphere, [e - f for e, f in zip(wp, other.weak_pows)]
        )
        return RatFun(self.sphere, n1 + n2, a, wp)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-other)

    def __neg__(self) -> "RatFun":
        return RatFun(self.sphere, -self.num, self.z_pow, self.weak_pows,
                      canceled=True)

    def __mul__(self, other: "RatFun") -> "RatFun":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return RatFun.zero(self.sphere)
        return RatFun(
            self.sphere,
            self.num * other.num,
            self.z_pow + other.z_pow,
            tuple(e + f for e, f in zip(self.weak_pows, other.weak_pows)),
        )

    def scale(self, c: Scalar) -> "RatFun":
        if not c:
            return RatFun.zero(self.sphere)
        return RatFun(self.sphere, self.num.scale(c), self.z_pow,
                      self.weak_pows, canceled=True)

    def derivative(self) -> "RatFun":
        """Exact d/dz; satisfies the Leibniz rule."""
        if self.is_zero():
            return self
        gammas = self.sphere.weak_points
        wfull = _weak_product(self.sphere, [1] * self.sphere.k)
        # d/dz [ N / (z^a prod (z-g)^e) ]
        #   = [N' z prod(z-g) - N (a prod(z-g) + z sum_s e_s prod_{t!=s})]
        #     / (z^{a+1} prod (z-g)^{e+1})
        n = self.num.derivative().shift(1) * wfull
        corr = wfull.scale(Scalar(self.z_pow))
        for s, e in enumerate(self.weak_pows):
            if e:
                part = _P_ONE
                for t, g in enumerate(gammas):
                    if t != s:
                        part = part * Poly((-g, ONE))
                corr = corr + part.scale(Scalar(e)).shift(1)
        n = n - self.num * corr
        return RatFun(
            self.sphere, n, self.z_pow + 1,
            tuple(e + 1 for e in self.weak_pows),
        )

    def eval(self, x: Scalar) -> Scalar:
        """Value at a finite point that is not a pole."""
        den = ONE
        for _ in range(self.z_pow):
            den = den * x
        for e, g in zip(self.weak_pows, self.sphere.weak_points):
            for _ in range(e):
                den = den * (x - g)
        if den.is_zero():
            raise ZeroDivisionError(f"pole at {x}")
        return self.num.eval(x) / den

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            return NotImplemented
        return (self.sphere == other.sphere and self.num == other.num
                and self.z_pow == other.z_pow
                and self.weak_pows == other.weak_pows)

    def __hash__(self):
        return hash((self.num, self.z_pow, self.weak_pows))

    def __repr__(self):
        if self.is_zero():
            return "RatFun(0)"
        den = []
        if self.z_pow:
            den.append(f"z^{self.z_pow}")
        for e, g in zip(self.weak_pows, self.sphere.weak_points):
            if e:
                den.append(f"(z-{g})^{e}")
        s = repr(self.num)
        return f"RatFun({s} / {'*'.join(den)})" if den else f"RatFun({s})"

    # -- local analysis ----------------------------------------------------

    def ord_at(self, point):
        """Exact order at 0, a weak point, or INFINITY (+inf for 0)."""
        if self.is_zero():
            return ORD_INF
        if point == INFINITY:
            return (self.z_pow + sum(self.weak_pows)) - self.num.degree
        point = point if isinstance(point, Scalar) else Scalar(point)
        if point.is_zero():
            return self.num.ord() - self.z_pow
        for s, g in enumerate(self.sphere.weak_points):
            if g == point:
                mult = 0
                p = self.num
                while not p.is_zero() and p.eval(g).is_zero():
                    p = p.div_linear(g)
                    mult += 1
                return mult - self.weak_pows[s]
        # any other finite point: no pole by construction
        mult = 0
        p = self.num
        while not p.is_zero() and p.eval(point).is_zero():
            p = p.div_linear(point)
            mult += 1
        return mult

    def jet_at(self, point, window: int) -> Tuple[int, List[Scalar]]:
        """(lead_order, coefficients) of the local expansion.

        Returns ``window`` coefficients starting at the exact leading order,
        in the local coordinate z at 0, z - gamma at a weak point, w = 1/z
        at infinity.  The zero function yields (0, [0]*window).
        """
        if window < 1:
            raise ValueError("window must be >= 1")
        if self.is_zero():
            return 0, [ZERO] * window
        if point == INFINITY:
            return self._jet_at_infinity(window)
        point = point if isinstance(point, Scalar) else Scalar(point)
        num_local = self.num.taylor_at(point)
        k = 0  # local denominator exponent at this point
        unit = _P_ONE
        if point.is_zero():
            k = self.z_pow
        elif self.z_pow:
            unit = unit * _poly_pow(Poly((point, ONE)), self.z_pow)
        for s, g in enumerate(self.sphere.weak_points):
            e = self.weak_pows[s]
            if not e:
                continue
            if g == point:
                k = e
            else:
                unit = unit * _poly_pow(Poly((point - g, ONE)), e)
        lead_num = num_local.ord()
        need = window
        inv = _series_inverse(list(unit.coeffs), need)
        # multiply num_local (starting at its lead) with inv, keep `window`
        nl = num_local.coeffs[lead_num:]
        out = [ZERO] * window
        for i, a in enumerate(nl[:window]):
            if not a:
                continue
            for j in range(window - i):
                if inv[j]:
                    out[i + j] = out[i + j] + a * inv[j]
        return lead_num - k, out

    def _jet_at_infinity(self, window: int) -> Tuple[int, List[Scalar]]:
        d = self.num.degree
        e_total = sum(self.weak_pows)
        lead = self.z_pow + e_total - d
        # f(1/w) = w^lead * (reversed numerator)(w) / prod (1 - g w)^{e}
        rev = list(reversed(self.num.coeffs))
        den = _P_ONE
        for e, g in zip(self.weak_pows, self.sphere.weak_points):
            if e:
                den = den * _poly_pow(Poly((ONE, -g)), e)
        inv = _series_inverse(list(den.coeffs), window)
        out = [ZERO] * window
        for i, a in enumerate(rev[:window]):
            if not a:
                continue
            for j in range(window - i):
                if inv[j]:
                    out[i + j] = out[i + j] + a * inv[j]
        return lead, out

    def coeff_at(self, point, order: int) -> Scalar:
        """Single Laurent coefficient at the given order."""
        if self.is_zero():
            return ZERO
        lead, coeffs = self.jet_at(point, max(1, order - self._lead(point) + 1))
        if order < lead:
            return ZERO
        idx = order - lead
        return coeffs[idx] if idx < len(coeffs) else ZERO

    def _lead(self, point) -> int:
        o = self.ord_at(point)
        return 0 if o == ORD_INF else o

    def residue_at(self, point) -> Scalar:
        """Residue of the 1-form self * dz at the point.

        At infinity the substitution z = 1/w, dz = -dw/w^2 is applied.
        """
        if self.is_zero():
            return ZERO
        if point == INFINITY:
            # res = -(coefficient of w^1 in f(1/w))
            return -self.coeff_at(INFINITY, 1)
        return self.coeff_at(point, -1)

    def residues_all(self):
        """Residues of self * dz at 0, each weak point, and infinity."""
        out = {"0": self.residue_at(Scalar(0))}
        for s, g in enumerate(self.sphere.weak_points):
            out[f"g{s}"] = self.residue_at(g)
        out[INFINITY] = self.residue_at(INFINITY)
        return out


def _poly_pow(p: Poly, e: int) -> Poly:
    out = _P_ONE
    for _ in range(e):
        out = out * p
    return out


def _weak_product(sphere: MarkedSphere, exps: Sequence[int]) -> Poly:
    out = _P_ONE
    for g, e in zip(sphere.weak_points, exps):
        if e:
            out = out * _poly_pow(Poly((-g, ONE)), e)
    return out


def _cancel(sphere, num: Poly, z_pow: int, weak_pows: Tuple[int, ...]):
    if num.is_zero():
        return num, 0, (0,) * sphere.k
    o = num.ord()
    if z_pow and o:
        drop = min(z_pow, o)
        num = Poly(num.coeffs[drop:])
        z_pow -= drop
    wp = list(weak_pows)
    for s, g in enumerate(sphere.weak_points):
        while wp[s] and num.eval(g).is_zero():
            num = num.div_linear(g)
            wp[s] -= 1
    return num, z_pow, tuple(wp)
