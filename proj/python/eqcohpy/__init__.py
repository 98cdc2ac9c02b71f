"""Exact RO(C_n)-graded Bredon cohomology for odd squarefree n.

Thin wrapper over the C++ engine: report functions return the parsed JSON
documents that the command line tool emits, the rest return plain values.
"""

import json

try:
    from . import _eqcoh
except ImportError:  # build-tree layout, module sits next to the package
    import _eqcoh

bredon_homology = _eqcoh.bredon_homology
bredon_cohomology = _eqcoh.bredon_cohomology
sphere_mackey = _eqcoh.sphere_mackey
fixed_dims = _eqcoh.fixed_dims
m_alpha = _eqcoh.m_alpha


def cohomology(n, alphas, coeff="Z", oracle=False):
    if isinstance(alphas, str):
        alphas = [alphas]
    return json.loads(_eqcoh.cohomology_report(n, coeff, list(alphas), oracle))


def ring_mul(n, lhs, rhs, scale=1):
    return json.loads(_eqcoh.ring_mul_report(n, lhs, rhs, scale))


def oracle(n, max_factors=2, coeff="Z", random_gradings=0, seed=12345):
    return json.loads(_eqcoh.oracle_report(n, max_factors, coeff, random_gradings, seed))


def freeness_cp(n, m):
    return json.loads(_eqcoh.freeness_cp_report(n, m))


def freeness_grassmann(n, l, m):
    return json.loads(_eqcoh.freeness_grassmann_report(n, l, m))


__all__ = [
    "bredon_homology",
    "bredon_cohomology",
    "sphere_mackey",
    "fixed_dims",
    "m_alpha",
    "cohomology",
    "ring_mul",
    "oracle",
    "freeness_cp",
    "freeness_grassmann",
]
