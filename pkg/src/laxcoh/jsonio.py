"""JSON encodings for the exact objects.

Scalars travel as strings (never floats); rational functions carry their
numerator coefficients and factored denominator exponents; everything
round-trips through the parsers here.
"""

from __future__ import annotations

from typing import Dict, List

from .connection import ConnectionForm
from .laxalg import GradedBasis, LaxElement
from .matfun import MatRatFun
from .ratfun import MarkedSphere, Poly, RatFun
from .scalars import parse_scalar

__all__ = [
    "sphere_to_json", "sphere_from_json",
    "ratfun_to_json", "ratfun_from_json",
    "matratfun_to_json", "matratfun_from_json",
    "basis_to_json",
    "connection_to_json",
    "certificate_to_json",
    "root_system_to_json",
    "functional_to_json",
]


def sphere_to_json(sphere: MarkedSphere) -> Dict:
    return {"weak_points": [str(g) for g in sphere.weak_points]}


def sphere_from_json(data: Dict) -> MarkedSphere:
    return MarkedSphere([parse_scalar(s) for s in data["weak_points"]])


def ratfun_to_json(f: RatFun) -> Dict:
    return {
        "num": [str(c) for c in f.num.coeffs],
        "den": {"z_pow": f.z_pow, "weak_pows": list(f.weak_pows)},
    }


def ratfun_from_json(data: Dict, sphere: MarkedSphere) -> RatFun:
    num = Poly([parse_scalar(c) for c in data["num"]])
    den = data["den"]
    return RatFun(sphere, num, int(den["z_pow"]),
                  tuple(int(e) for e in den["weak_pows"]))


def matratfun_to_json(m: MatRatFun) -> Dict:
    return {
        "size": m.size,
        "entries": [[ratfun_to_json(m[i, j]) for j in range(m.size)]
                    for i in range(m.size)],
    }


def matratfun_from_json(data: Dict, sphere: MarkedSphere) -> MatRatFun:
    return MatRatFun(sphere, [
        [ratfun_from_json(cell, sphere) for cell in row]
        for row in data["entries"]
    ])


def certificate_to_json(el: LaxElement) -> List[Dict]:
    out = []
    for s in sorted(el.certificate.witnesses):
        beta, kappa, nu = el.certificate.witnesses[s]
        entry = {
            "point": s,
            "beta": [str(beta[i, 0]) for i in range(beta.rows)],
            "kappa": str(kappa),
        }
        if nu is not None:
            entry["nu"] = str(nu)
        out.append(entry)
    return out


def basis_to_json(basis: GradedBasis, degrees) -> List[Dict]:
    lo, hi = degrees
    out = []
    for m in range(lo, hi + 1):
        for r, el in enumerate(basis.elements(m)):
            out.append({
                "degree": m,
                "leading_index": r,
                "matratfun": matratfun_to_json(el.value),
                "certificate": certificate_to_json(el),
            })
    return out


def root_system_to_json(rs) -> Dict:
    """Root labels, matrices and the pairing table of a root system."""
    def lab(a):
        return ",".join(str(x) for x in a)

    def mat(m):
        return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]

    return {
        "rank": rs.rank,
        "roots": [
            {
                "label": lab(a),
                "positive": a in rs.positive,
                "simple": a in rs.simple,
                "root_vector": mat(rs.E[a]),
                "coroot": mat(rs.H[a]),
            }
            for a in rs.roots
        ],
        "pairing": {
            lab(a): {lab(b): str(rs.pairing(a, b)) for b in rs.roots}
            for a in rs.roots
        },
        "killing_trace_ratio": str(rs.killing_trace_ratio()),
    }


def functional_to_json(phi) -> List[Dict]:
    """Values of a linear form on graded basis elements."""
    return [
        {"degree": m, "index": r, "value": str(v)}
        for (m, r), v in sorted(phi.values.items())
    ]


def connection_to_json(omega: ConnectionForm) -> Dict:
    witnesses = []
    for s in sorted(omega.witnesses):
        beta, kappa, nu = omega.witnesses[s]
        entry = {
            "point": s,
            "beta": [str(beta[i, 0]) for i in range(beta.rows)],
            "kappa": str(kappa),
        }
        if nu is not None:
            entry["nu"] = str(nu)
        witnesses.append(entry)
    return {
        "matratfun": matratfun_to_json(omega.value),
        "witnesses": witnesses,
        "order2": omega.order2,
    }
