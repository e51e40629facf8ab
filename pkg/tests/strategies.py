"""Hypothesis strategies for small rings, forms and extension inputs."""

from __future__ import annotations

from hypothesis import strategies as st

from freeext.duality import annihilator, ideal_product, perp
from freeext.extension import ExtensionInput
from freeext.ring import DualPoly, Poly, RingSpec

NAMES = ("x", "y", "z")


def ring(nvars: int) -> RingSpec:
    return RingSpec(NAMES[:nvars])


rings = st.integers(1, 3).map(ring)


@st.composite
def forms(draw, spec: RingSpec, degree: int, max_terms: int = 3, cls=DualPoly):
    mons = spec.monomials(degree)
    k = draw(st.integers(1, min(max_terms, len(mons))))
    idx = draw(st.lists(st.integers(0, len(mons) - 1), min_size=k, max_size=k, unique=True))
    coeffs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=k, max_size=k))
    return cls(spec, {mons[i]: c for i, c in zip(idx, coeffs)})


def polys(spec, degree, max_terms=3):
    return forms(spec, degree, max_terms, cls=Poly)


@st.composite
def admissible(draw, fb: DualPoly, degree: int):
    """A random element of {G : (I_B)^2 o G = 0} in the given degree, possibly zero."""
    IB = annihilator(fb)
    basis = perp(ideal_product(IB, IB, degree), degree) if degree > 0 else []
    if not basis:
        return DualPoly(fb.spec, {})
    coeffs = draw(st.lists(st.integers(-2, 2), min_size=len(basis), max_size=len(basis)))
    out = DualPoly(fb.spec, {})
    for c, G in zip(coeffs, basis):
        if c:
            out = out + G.scale(c)
    return out


@st.composite
def g_form(draw, fb: DualPoly, degree: int):
    kind = draw(st.sampled_from(["zero", "random", "random", "random", "admissible", "admissible"]))
    if kind == "zero":
        return DualPoly(fb.spec, {})
    if kind == "random":
        return draw(forms(fb.spec, degree, max_terms=4))
    return draw(admissible(fb, degree))


@st.composite
def corollary_inputs(draw, max_degree: int = 4):
    """T^[n-1] F_B + G with deg F_B <= max_degree, at most three variables."""
    R = draw(rings)
    jb = draw(st.integers(1, max_degree))
    fb = draw(forms(R, jb))
    n = draw(st.integers(2, 3))
    G = draw(g_form(fb, jb + n - 1))
    return ExtensionInput(n, fb, [DualPoly(R, {})] * (n - 2) + [G])


@st.composite
def extension_inputs(draw, max_n: int = 4, max_total: int = 5):
    """General inputs: n <= max_n, deg F = j_B + n - 1 <= max_total."""
    R = draw(rings)
    n = draw(st.integers(1, max_n))
    jb = draw(st.integers(1, max(1, max_total - (n - 1))))
    fb = draw(forms(R, jb))
    gs = [draw(g_form(fb, jb + i)) for i in range(1, n)]
    return ExtensionInput(n, fb, gs)
