"""Explicit families: symmetric functions, Vandermonde forms, coinvariant extensions.

Nothing here runs invariant-theory algorithms; the generators and dual forms are
written down directly and the kernel machinery checks the claimed structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .exactfield import QQ, FieldSpec
from .extension import ExtensionInput, expand_in_T
from .ring import DualPoly, Poly, RingSpec


def _vars(spec: RingSpec, names: Sequence[str] | None) -> list[int]:
    if names is None:
        return list(range(spec.nvars))
    return [spec.lookup(n) for n in names]


def elementary_symmetric(spec: RingSpec, i: int, names: Sequence[str] | None = None) -> Poly:
    """e_i of the chosen variables (all of them by default)."""
    idx = _vars(spec, names)
    if not 1 <= i <= len(idx):
        raise ValueError(f"e_{i} needs 1 <= i <= {len(idx)}")
    out = spec.zero()
    for sub in combinations(idx, i):
        e = [0] * spec.nvars
        for v in sub:
            e[v] = 1
        out = out + Poly(spec, {tuple(e): 1})
    return out


def powered_elementary(spec: RingSpec, i: int, m: int, names: Sequence[str] | None = None) -> Poly:
    """e_i evaluated at the m-th powers of the chosen variables."""
    idx = _vars(spec, names)
    if not 1 <= i <= len(idx):
        raise ValueError(f"e_{i} needs 1 <= i <= {len(idx)}")
    out = spec.zero()
    for sub in combinations(idx, i):
        e = [0] * spec.nvars
        for v in sub:
            e[v] = m
        out = out + Poly(spec, {tuple(e): 1})
    return out


def formal_mul(P: DualPoly, Q: DualPoly) -> DualPoly:
    """Product adding divided-power exponents with coefficient one: X^[a] X^[b] -> X^[a+b].

    This is the product used when the coinvariant dual forms are written as
    products of simpler forms; it differs from the divided-power product by a
    factor on each monomial.
    """
    P._check(Q)
    out: dict = {}
    for e1, c1 in P.terms.items():
        for e2, c2 in Q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return DualPoly._raw(P.spec, out)


def vandermonde_dual(n: int, field: FieldSpec = QQ, t_last: bool = False) -> DualPoly:
    """prod_{i<j} (X_i - X_j) with the divided-power product.

    With ``t_last`` the last variable is the t-variable, so the form lives over Q_S.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    names = [f"x{i}" for i in range(1, n + 1)]
    if t_last:
        names[-1] = "t"
    spec = RingSpec(tuple(names), (), field, t_last)
    F = DualPoly(spec, {(0,) * n: 1})
    for i in range(n):
        for j in range(i + 1, n):
            F = F * (spec.dual_var(i) - spec.dual_var(j))
    return F


def symmetric_group_case(n: int, field: FieldSpec = QQ) -> ExtensionInput:
    """Coinvariants of S_n over those of S_{n-1}: the Vandermonde split by powers of T = X_n."""
    return expand_in_T(vandermonde_dual(n, field, t_last=True))


def reflection_case(m: int, p: int, q: int, n: int, field: FieldSpec = QQ) -> ExtensionInput:
    """Coinvariants of G(m, p, n) over those of G(m, q, n), p | q | m, p < q.

    With u = m/q the fiber has dual generator
        F_B = prod_{i<j} (X_i^[m] - X_j^[m]) * (X_1 ... X_n)^[u - 1],
    t = (x_1 ... x_n)^u has weight n u, and
        F = sum_k T^[s-1-k] (X_1 ... X_n)^[k u] * F_B,   s = q / p,
    all products formal (exponents add).
    """
    if not (q % p == 0 and m % q == 0 and p < q):
        raise ValueError("need p | q | m and p < q")
    if n < 2:
        raise ValueError("need n >= 2")
    u, s = m // q, q // p
    names = ("x", "y", "z") if n <= 3 else tuple(f"x{i}" for i in range(1, n + 1))
    spec = RingSpec(names[:n], (), field)

    def diag(a):
        return DualPoly(spec, {(a,) * n: 1})

    fb = diag(u - 1)
    for i in range(n):
        for j in range(i + 1, n):
            fb = formal_mul(fb, spec.dual_var(i, m) - spec.dual_var(j, m))
    gs = [formal_mul(diag(k * u), fb) for k in range(1, s)]
    return ExtensionInput(s, fb, gs, t_weight=n * u)


@dataclass
class CoinvariantCase:
    name: str
    inp: ExtensionInput
    ideal_c: list[Poly] = field(default_factory=list)
    ideal_b: list[Poly] = field(default_factory=list)


def coinvariant_case(family: str, *params: int, field: FieldSpec = QQ) -> CoinvariantCase:
    """``coinvariant_case("S", n)`` or ``coinvariant_case("G", m, p, q, n)``.

    Alongside the extension input this returns the generators of the two
    coinvariant ideals: ``ideal_c`` in S = R[t] (with t tied to its invariant)
    and ``ideal_b`` in R.
    """
    if family.upper() in ("S", "SN"):
        (n,) = params
        if not 2 <= n <= 5:
            raise ValueError("S_n cases are limited to 2 <= n <= 5")
        inp = symmetric_group_case(n, field)
        ic = [elementary_symmetric(inp.S, i) for i in range(1, n + 1)]
        ib = [elementary_symmetric(inp.R, i) for i in range(1, n)]
        return CoinvariantCase(f"S{n}/S{n - 1}", inp, ic, ib)
    if family.upper() == "G":
        m, p, q, n = params
        if m * n > 12:
            raise ValueError("G(m,p,n) cases are limited to m*n <= 12")
        inp = reflection_case(m, p, q, n, field)
        R, S = inp.R, inp.S
        prod = Poly(R, {(1,) * n: 1})
        ib = [powered_elementary(R, i, m) for i in range(1, n)] + [prod ** (m // q)]
        ic = [powered_elementary(S, i, m, R.names) for i in range(1, n)]
        prod_s = Poly(S, {(1,) * n + (0,): 1})
        ic += [prod_s ** (m // p), S.var(S.t_index) - prod_s ** (m // q)]
        return CoinvariantCase(f"G({m},{p},{n})/G({m},{q},{n})", inp, ic, ib)
    raise ValueError(f"unknown family {family!r}")
