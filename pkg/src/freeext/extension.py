"""Free extensions C of A = k[t]/(t^n) with fiber B = R/Ann(F_B).

The dual generator of C is written as

    F = T^[n-1] G_0 + T^[n-2] G_1 + ... + G_{n-1},   G_0 = F_B,

with every G_i in the dual ring of R.  This module assembles and splits such
forms, computes the nested colon ideals, and runs every freeness certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ArtinianAlgebra, from_dual_generator, tensor_hilbert
from .duality import (
    DerivateModule,
    GradedIdeal,
    annihilator,
    colon,
    contraction_matrix,
    derivates,
    ideal_contract,
    ideal_product,
    perp,
)
from .linalg import Matrix, solve
from .ring import DualPoly, Poly, RingSpec, contract, embed, t_power


class DegreeMismatchError(ValueError):
    pass


class ShapeError(ValueError):
    """Input does not have the shape a certificate requires."""


class InconsistentCertificates(AssertionError):
    """Two certificates disagree in a way the theory forbids: a bug."""


@dataclass
class ExtensionInput:
    """n, F_B and G_1..G_{n-1} over the dual ring of R, plus the weight of t."""

    n: int
    fb: DualPoly
    gs: list[DualPoly] = field(default_factory=list)
    t_weight: int = 1
    t_name: str = "t"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.t_weight < 1:
            raise ValueError("t weight must be positive")
        R = self.fb.spec
        if R.has_t:
            raise ValueError("F_B must live in the dual ring of R (no t-variable)")
        gs = list(self.gs)
        if len(gs) > self.n - 1:
            raise ValueError(f"{len(gs)} forms G_i given but n - 1 = {self.n - 1}")
        gs += [DualPoly(R, {})] * (self.n - 1 - len(gs))
        self.gs = gs
        jb = self.fb.weighted_degree()
        if jb is None:
            raise DegreeMismatchError("F_B must be a nonzero homogeneous form")
        for i, G in enumerate(gs, start=1):
            if G.spec != R:
                raise DegreeMismatchError(f"G_{i} is over {G.spec}, expected {R}")
            if G.is_zero():
                continue
            want = jb + i * self.t_weight
            if G.weighted_degree() != want:
                raise DegreeMismatchError(
                    f"G_{i} = {G} has degree {G.weighted_degree()}, expected j_B + {i}*w(t) = {want}"
                )

    @property
    def R(self) -> RingSpec:
        return self.fb.spec

    @property
    def S(self) -> RingSpec:
        return self.R.with_t(self.t_weight, self.t_name)

    @property
    def j_b(self) -> int:
        return self.fb.weighted_degree()

    def G(self, i: int) -> DualPoly:
        return self.fb if i == 0 else self.gs[i - 1]

    def forms(self) -> list[DualPoly]:
        return [self.fb] + self.gs

    def corollary_shape(self) -> bool:
        return self.n >= 2 and all(G.is_zero() for G in self.gs[:-1])


def assemble_F(inp: ExtensionInput) -> DualPoly:
    S = inp.S
    F = DualPoly(S, {})
    for i, G in enumerate(inp.forms()):
        if G:
            F = F + t_power(S, inp.n - 1 - i) * embed(G, S)
    return F


def expand_in_T(F: DualPoly, t_name: str | None = None) -> ExtensionInput:
    """Split a form over Q_S by powers of T; n - 1 is the top divided power of T."""
    S = F.spec
    if F.weighted_degree() is None:
        raise ValueError("F must be a nonzero homogeneous form")
    parts = F.t_coefficients()
    n = 1 + max(parts)
    R = S.base()
    zero = DualPoly(R, {})
    forms = [parts.get(n - 1 - i, zero) for i in range(n)]
    return ExtensionInput(n, forms[0], forms[1:], S.t_weight, t_name or S.names[-1])


def a_hilbert(n: int, w: int = 1) -> list[int]:
    """Hilbert function of k[t]/(t^n) with deg t = w."""
    H = [0] * ((n - 1) * w + 1)
    for k in range(n):
        H[k * w] = 1
    return H


def nested_ideals(inp: ExtensionInput) -> list[GradedIdeal]:
    """I_0 = Ann(F_B) and I_i = (I_{i-1} : Ann(G_i)); Ann(0) = R leaves I_i = I_{i-1}."""
    I = annihilator(inp.fb)
    chain = [I]
    for G in inp.gs:
        if not G.is_zero():
            I = colon(I, annihilator(G).generator_polys())
        chain.append(I)
    return chain


def _contained(I: GradedIdeal, G: DualPoly, module: DerivateModule) -> bool:
    return module.contains_all(ideal_contract(I, G))


@dataclass
class Check:
    index: int
    holds: bool
    vacuous: bool = False

    def to_json(self):
        return {"i": self.index, "holds": self.holds, "vacuous": self.vacuous}


def check_sufficient(inp: ExtensionInput, chain: list[GradedIdeal] | None = None) -> list[Check]:
    """I_i o G_{n-1-i} inside R o F_B for i = 0..n-1 (the last one always holds)."""
    chain = chain or nested_ideals(inp)
    module = derivates(inp.fb)
    out = []
    for i in range(inp.n):
        if i == inp.n - 1:
            out.append(Check(i, True, vacuous=True))
            continue
        out.append(Check(i, _contained(chain[i], inp.G(inp.n - 1 - i), module)))
    return out


def check_necessary(inp: ExtensionInput) -> list[Check]:
    """I_0 o G_i inside R o G_0 + ... + R o G_{i-1} for i = 1..n-1."""
    I0 = annihilator(inp.fb)
    out = []
    for i in range(1, inp.n):
        G = inp.G(i)
        if G.is_zero():
            out.append(Check(i, True, vacuous=True))
            continue
        module = derivates(*[inp.G(j) for j in range(i)])
        out.append(Check(i, _contained(I0, G, module)))
    return out


def square_kills(I: GradedIdeal, G: DualPoly) -> bool:
    """Whether I^2 o G = 0."""
    if G.is_zero():
        return True
    e = G.weighted_degree()
    I2 = ideal_product(I, I, e)
    return all(not contract(f, G) for f in I2.basis(e))


def square_within(I: GradedIdeal, G: DualPoly, fb: DualPoly) -> bool:
    """Whether I^2 o G lies in R o F_B (weaker than I^2 o G = 0)."""
    if G.is_zero():
        return True
    I2 = ideal_product(I, I, G.weighted_degree())
    return _contained(I2, G, derivates(fb))


def check_corollary(inp: ExtensionInput) -> bool:
    """For F = T^[n-1] F_B + G: free iff (I_B)^2 o G = 0."""
    if not inp.corollary_shape():
        raise ShapeError("corollary shape not matched: need n >= 2 and G_1 = ... = G_{n-2} = 0")
    return square_kills(annihilator(inp.fb), inp.G(inp.n - 1))


@dataclass
class Lift:
    generator: Poly
    witness: Poly | None
    parts: list[Poly] | None = None

    @property
    def lifts(self) -> bool:
        return self.witness is not None

    def to_json(self):
        return {"generator": str(self.generator), "witness": None if self.witness is None else str(self.witness)}


def lift_element(inp: ExtensionInput, g: Poly, F: DualPoly | None = None) -> Lift:
    """Look for g_0..g_{n-2} with t^{n-1} g_0 + ... + t g_{n-2} + g in Ann(F).

    Writing f o F by powers of T gives, for m = 0..n-2,
        sum_{k=0}^{n-1-m} g_{k+m} o G_k = 0,
    a linear system in the coefficients of the g_i (deg g_i = deg g - (n-1-i) w(t)).
    """
    R, S = inp.R, inp.S
    k = R.field
    n, w = inp.n, inp.t_weight
    F = F if F is not None else assemble_F(inp)
    D = g.weighted_degree()
    if D is None:
        raise ValueError("lifting needs a homogeneous element")
    deg = {i: D - (n - 1 - i) * w for i in range(n - 1)}
    unknowns = [i for i in range(n - 1) if deg[i] >= 0]
    offset, pos = {}, 0
    for i in unknowns:
        offset[i] = pos
        pos += R.dim(deg[i])
    rows, rhs = [], []
    for m in range(n - 1):
        e = inp.j_b + (n - 1 - m) * w - D
        if e < 0:
            continue
        block = [[k.zero] * pos for _ in range(R.dim(e))]
        for kk in range(n - 1 - m):
            i = kk + m
            G = inp.G(kk)
            if i not in offset or G.is_zero():
                continue
            M = contraction_matrix(G, deg[i], e)
            for r, mrow in enumerate(M.rows):
                block[r][offset[i] : offset[i] + len(mrow)] = mrow
        target = contract(g, inp.G(n - 1 - m)).to_vector(e)
        rows.extend(block)
        rhs.extend(-c for c in target)
    if rows:
        x = solve(Matrix(k, rows, pos), rhs)
        if x is None:
            return Lift(g, None)
    else:
        x = [k.zero] * pos
    parts = []
    for i in range(n - 1):
        if i in offset:
            vec = x[offset[i] : offset[i] + R.dim(deg[i])]
            parts.append(Poly.from_vector(R, deg[i], vec))
        else:
            parts.append(R.zero())
    parts.append(g)
    f = S.zero()
    for i, gi in enumerate(parts):
        if gi:
            f = f + embed(gi, S) * S.var(S.t_index) ** (n - 1 - i)
    if contract(f, F):
        raise InconsistentCertificates(f"lift {f} of {g} does not annihilate F")
    return Lift(g, f, parts)


def lifting_test(inp: ExtensionInput, chain: list[GradedIdeal] | None = None) -> list[Lift]:
    """Lift every minimal generator of Ann(F_B); C is free over A iff all of them lift."""
    F = assemble_F(inp)
    IB = annihilator(inp.fb)
    lifts = [lift_element(inp, g, F) for g in IB.generator_polys()]
    if chain is not None:
        n = inp.n
        for lift in lifts:
            if lift.parts is None:
                continue
            for i, gi in enumerate(lift.parts[:-1]):
                if gi and not chain[n - 1 - i].contains(gi):
                    raise InconsistentCertificates(f"lift component g_{i} = {gi} is not in I_{n - 1 - i}")
    return lifts


@dataclass
class DimensionTest:
    c: int
    a: int
    b: int

    @property
    def equal(self) -> bool:
        return self.c == self.a * self.b

    def to_json(self):
        return {"C": self.c, "A": self.a, "B": self.b, "AB": self.a * self.b, "equal": self.equal}


def dimension_test(inp: ExtensionInput, C: ArtinianAlgebra | None = None, B: ArtinianAlgebra | None = None) -> DimensionTest:
    C = C or from_dual_generator(assemble_F(inp))
    B = B or from_dual_generator(inp.fb)
    return DimensionTest(C.length, inp.n, B.length)


@dataclass
class FreeExtReport:
    inp: ExtensionInput
    F: DualPoly
    hilbert_a: list[int]
    hilbert_b: list[int]
    hilbert_c: list[int]
    ann_f: GradedIdeal
    chain: list[GradedIdeal]
    sufficient: list[Check]
    necessary: list[Check]
    corollary: bool | None
    lifting: list[Lift]
    dimension: DimensionTest

    @property
    def free(self) -> bool:
        return all(l.lifts for l in self.lifting)

    @property
    def sufficient_holds(self) -> bool:
        return all(c.holds for c in self.sufficient)

    @property
    def necessary_holds(self) -> bool:
        return all(c.holds for c in self.necessary)

    @property
    def tensor(self) -> list[int]:
        return tensor_hilbert(self.hilbert_a, self.hilbert_b)

    def to_dict(self) -> dict:
        inp = self.inp
        return {
            "n": inp.n,
            "weights": list(inp.S.weights),
            "F": str(self.F),
            "F_B": str(inp.fb),
            "G": [str(G) for G in inp.gs],
            "ann": [str(g) for g in self.ann_f.generator_polys()],
            "hilbert": {"A": self.hilbert_a, "B": self.hilbert_b, "C": self.hilbert_c, "tensor": self.tensor},
            "certificates": {
                "sufficient": [c.to_json() for c in self.sufficient],
                "necessary": [c.to_json() for c in self.necessary],
                "corollary": self.corollary,
                "lifting": [l.to_json() for l in self.lifting],
                "dimension": self.dimension.to_json(),
            },
            "free": self.free,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def full_report(inp: ExtensionInput) -> FreeExtReport:
    F = assemble_F(inp)
    C = from_dual_generator(F)
    B = from_dual_generator(inp.fb)
    chain = nested_ideals(inp)
    suff = check_sufficient(inp, chain)
    nec = check_necessary(inp)
    lifts = lifting_test(inp, chain)
    dim = dimension_test(inp, C, B)
    cor = check_corollary(inp) if inp.corollary_shape() else None
    rep = FreeExtReport(
        inp, F, a_hilbert(inp.n, inp.t_weight), B.hilbert, C.hilbert, C.ideal, chain, suff, nec, cor, lifts, dim
    )
    free = rep.free
    if rep.sufficient_holds and not free:
        raise InconsistentCertificates("sufficient conditions hold but a generator fails to lift")
    if free and not rep.necessary_holds:
        raise InconsistentCertificates("free extension violates the necessary condition")
    if free != dim.equal:
        raise InconsistentCertificates(f"lifting says free={free} but |C|={dim.c}, |A||B|={dim.a * dim.b}")
    if cor is not None and cor != free:
        raise InconsistentCertificates(f"corollary test says {cor}, lifting says {free}")
    return rep


def pbi_dual_generator(theta: DualPoly, hs: Sequence[Poly], k: int, t_weight: int = 1, t_name: str = "t") -> DualPoly:
    """F = theta T^[k] + (h_1 o theta) T^[k+1] + ... + (h_d o theta) T^[k+d]."""
    R = theta.spec
    if theta.weighted_degree() is None:
        raise ValueError("theta must be a nonzero homogeneous form")
    S = R.with_t(t_weight, t_name)
    F = t_power(S, k) * embed(theta, S)
    for i, h in enumerate(hs, start=1):
        if h.is_zero():
            continue
        if h.weighted_degree() != i * t_weight:
            raise DegreeMismatchError(f"h_{i} = {h} must be homogeneous of degree {i * t_weight}")
        F = F + t_power(S, k + i) * embed(contract(h, theta), S)
    return F


def admissible_G_dimension(fb: DualPoly, degree: int | None = None) -> int:
    """dim of {G in Q_e : (I_B)^2 o G = 0}, e = j_B + 1 unless given."""
    jb = fb.weighted_degree()
    if jb is None:
        raise ValueError("F_B must be a nonzero homogeneous form")
    e = jb + 1 if degree is None else degree
    IB = annihilator(fb)
    I2 = ideal_product(IB, IB, e)
    return len(perp(I2, e)) if I2.dim(e) < fb.spec.dim(e) else 0
