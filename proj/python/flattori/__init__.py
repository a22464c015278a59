"""Exact spectra, reduction and isospectrality certificates for flat tori.

Matrices are nested sequences of ints, Fractions or "p/q" strings.
Rational results come back as Fraction.
"""

import json
from fractions import Fraction

from . import _core
from ._core import DomainError, run_symphony

__all__ = [
    "DomainError",
    "absolute_pairing",
    "catalog",
    "certify_isospectral",
    "codewords",
    "construction_a",
    "integral_equivalence",
    "is_minkowski_reduced",
    "lattice_congruent",
    "level",
    "min_set",
    "poisson_check",
    "representation_numbers",
    "run_symphony",
    "same_weight_distribution",
    "schiemann_reduce",
    "successive_minima",
    "sturm_cutoff",
]


def _rat(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _mat(m):
    return [[_rat(v) for v in row] for row in m]


def _form(q):
    m = _mat(q)
    return json.dumps({"dim": len(m), "Q": m})


def _basis(a):
    m = _mat(a)
    return json.dumps({"dim": len(m), "A": m})


def _frac(s):
    return Fraction(s)


def _frac_mat(m):
    return [[_frac(v) for v in row] for row in m]


def representation_numbers(q, tmax, domain="full"):
    """{t: #{x in domain : x^T Q x = t}} for t <= tmax."""
    s = json.loads(_core.representation_numbers(_form(q), _rat(tmax), domain))
    return {_frac(t): m for t, m in s}


def is_minkowski_reduced(q):
    return _core.is_minkowski_reduced(_form(q))


def successive_minima(q):
    return [(_frac(v), [int(c) for c in x]) for v, x in json.loads(_core.successive_minima(_form(q)))]


def schiemann_reduce(q):
    """Reduced coordinates (q11, q22, q33, q12, q13, q23) of a ternary form."""
    return tuple(_frac(v) for v in json.loads(_core.schiemann_reduce(_form(q))))


def integral_equivalence(q1, q2):
    """Unimodular B with B^T Q1 B = Q2, or None."""
    w = _core.integral_equivalence(_form(q1), _form(q2))
    if w is None:
        return None
    return [[int(v) for v in row] for row in json.loads(w)]


def lattice_congruent(a1, a2):
    return _core.lattice_congruent(_basis(a1), _basis(a2))


def certify_isospectral(q1, q2):
    c = json.loads(_core.certify_isospectral(_form(q1), _form(q2)))
    for k in ("scale", "level", "cutoff", "checked_to"):
        if k in c:
            c[k] = int(c[k])
    if "mismatch" in c:
        c["mismatch"]["value"] = _frac(c["mismatch"]["value"])
    return c


def level(q):
    return int(_core.level(_form(q)))


def sturm_cutoff(dim, n):
    return int(_core.sturm_cutoff(dim, str(n)))


def codewords(q, gens):
    return [tuple(c) for c in _core.codewords(q, [list(g) for g in gens])]


def construction_a(q, gens):
    return _frac_mat(json.loads(_core.construction_a(q, [list(g) for g in gens]))["A"])


def same_weight_distribution(q, gens1, gens2):
    return _core.same_weight_distribution(q, [list(g) for g in gens1], [list(g) for g in gens2])


def absolute_pairing(q, gens1, gens2):
    p = _core.absolute_pairing(q, [list(g) for g in gens1], [list(g) for g in gens2])
    if p is None:
        return None
    return [(tuple(a), tuple(b)) for a, b in p]


def catalog(name):
    """Named lattice, form or code (pair). Matrices are returned as Fractions."""
    e = json.loads(_core.catalog(name))

    def conv(p):
        if isinstance(p, list):
            return [conv(x) for x in p]
        if "Q" in p:
            return _frac_mat(p["Q"])
        if "A" in p:
            return _frac_mat(p["A"])
        return p

    return e["kind"], conv(e["payload"])


def min_set(lambda_, removed=()):
    """MIN of the primitive vectors outside the given Lambda and the removed set."""
    return [tuple(x) for x in _core.min_set(lambda_, [list(x) for x in removed])]


def poisson_check(a, t, radius=None):
    """(lhs, rhs, rel_err) of the heat-trace Poisson identity."""
    if radius is None:
        radius = (160.0 * t) ** 0.5 + 2.0
    return _core.poisson_check(_basis(a), float(t), float(radius))
