"""Seeded random data used by the verification suites.

All generators take an explicit random.Random so runs are reproducible from
a string seed; nothing here depends on hash randomization or global state.
The invariant-form generators apply the group averaging operator, so every
produced coefficient family is exactly invariant, not approximately so.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .polyform import Polynomial, PolyForm, group_average
from . import cochain as _cochain


def random_polynomial(rng: random.Random, nvars: int, max_deg: int, nterms: int = 2) -> Polynomial:
    coeffs = {}
    for _ in range(nterms):
        deg = rng.randint(0, max_deg)
        exps = [0] * nvars
        for _ in range(deg):
            exps[rng.randrange(nvars)] += 1
        c = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
        coeffs[tuple(exps)] = coeffs.get(tuple(exps), Fraction(0)) + c
    return Polynomial(nvars, coeffs)


def random_form(rng: random.Random, nvars: int, q: int, max_deg: int) -> PolyForm:
    """Random homogeneous q-form with small rational coefficients."""
    if q > nvars:
        return PolyForm.zero(nvars)
    keys = list(combinations(range(nvars), q))
    terms = {}
    for key in rng.sample(keys, k=min(len(keys), rng.randint(1, 2))):
        terms[key] = random_polynomial(rng, nvars, max_deg)
    return PolyForm(nvars, terms)


def random_invariant_form(rng: random.Random, chart, max_deg: int, q: int | None = None) -> PolyForm:
    """Group-averaged random form on a chart; may be zero for unlucky draws."""
    if q is None:
        q = rng.randint(0, chart.dim)
    for _ in range(4):
        form = group_average(chart.group, random_form(rng, chart.dim, q, max_deg))
        if not form.is_zero():
            return form
    # fall back to the invariant constant function in degree 0
    if q == 0:
        return PolyForm.const_function(chart.dim, 1)
    return PolyForm.zero(chart.dim)


def random_cochain(rng: random.Random, atlas, p: int, max_deg: int, q: int | None = None,
                   density: float = 0.7):
    """Random invariant cochain supported on strings of length p + 1."""
    data = {}
    strings = atlas.canonical_strings(p + 1)
    for s in strings:
        if rng.random() > density:
            continue
        chart = atlas.chart(_union(s))
        form = random_invariant_form(rng, chart, max_deg, q)
        if not form.is_zero():
            data[s] = form
    return _cochain.Cochain(atlas, data)


def random_int_cochain(rng: random.Random, atlas, p: int, density: float = 0.7):
    data = {}
    for s in atlas.canonical_strings(p + 1):
        if rng.random() > density:
            continue
        v = rng.randint(-3, 3)
        if v:
            data[s] = v
    return _cochain.IntCochain(atlas, data)


def global_form_basis(atlas, max_deg: int, q: int, small: bool = False):
    """Cached kernel of the degree-zero string differential on q-forms."""
    cache = atlas.__dict__.setdefault("_global_form_cache", {})
    key = (q, max_deg, small)
    if key not in cache:
        from .homology import GlobalFormSystem

        cache[key] = GlobalFormSystem(atlas, q, max_deg, small=small)
    return cache[key]


def random_global_form(rng: random.Random, atlas, max_deg: int, q: int | None = None):
    """Random exact element of the kernel of the degree-zero differential.

    Sampled as a small rational combination of a kernel basis of the
    bounded-degree linear system, so the result is global by construction
    rather than by approximation.
    """
    if q is None:
        q = rng.randint(0, atlas.dim)
    system = global_form_basis(atlas, max_deg, q)
    vec = [Fraction(0)] * system.total
    for kv in system.kernel:
        c = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2]))
        if c:
            vec = [a + c * b for a, b in zip(vec, kv)]
    return system.cochain_from_vector(vec)


def random_spark(rng: random.Random, atlas, max_deg: int = 2):
    """Global function family plus integer constants on single strings.

    The differential of such a cochain is the exterior derivative of the
    global part minus the integral mismatch of the constants, so the spark
    equation holds by construction.
    """
    g = random_global_form(rng, atlas, max_deg, q=0)
    ints = random_int_cochain(rng, atlas, 0)
    return g + _cochain.inject_int(ints)


def _union(string):
    out = string[0]
    for e in string[1:]:
        out = out.union(e)
    return out
