"""Inverse systems: annihilators, derivate modules, perps and colon ideals.

Everything is done one graded piece at a time.  The basic fact used throughout
is that for a monomial m and dual monomial M of equal degree, m o M is 1 when
the exponents agree and 0 otherwise, so R_d and Q_d are dual through the
coordinate dot product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .exactfield import check_characteristic
from .linalg import Matrix, Subspace, kernel_basis
from .ring import DualPoly, Poly, RingSpec, contract


class DegreeBoundError(ValueError):
    """A graded piece above the stored bound was requested."""


@dataclass
class GradedIdeal:
    """Homogeneous ideal stored degree by degree.

    ``pieces[d]`` is the subspace I_d of R_d for ``0 <= d <= bound``.  If
    ``full_from`` is set then I_d = R_d for every d >= full_from, which answers
    questions above the bound without storage.
    """

    spec: RingSpec
    bound: int
    pieces: dict[int, Subspace]
    full_from: int | None = None
    _gens: list | None = field(default=None, repr=False, compare=False)

    def piece(self, d: int) -> Subspace:
        if d < 0:
            return Subspace(self.spec.field, 0)
        if self.full_from is not None and d >= self.full_from:
            return Subspace.full(self.spec.field, self.spec.dim(d))
        if d in self.pieces:
            return self.pieces[d]
        raise DegreeBoundError(f"degree {d} is above the bound {self.bound}")

    def dim(self, d: int) -> int:
        return self.piece(d).dim

    def basis(self, d: int) -> list[Poly]:
        return [Poly.from_vector(self.spec, d, row) for row in self.piece(d).rows]

    @property
    def saturated(self) -> bool:
        return self.full_from is not None

    @property
    def socle_degree(self) -> int | None:
        """Largest d with I_d != R_d (None when unknown)."""
        if self.full_from is None:
            return None
        for d in range(self.full_from - 1, -1, -1):
            if self.dim(d) < self.spec.dim(d):
                return d
        return -1

    def top(self) -> int:
        """Degree up to which every generator is guaranteed to have appeared."""
        if self.full_from is None:
            return self.bound
        return max(self.bound, self.full_from + max(self.spec.weights, default=1) - 1)

    def contains(self, f: Poly) -> bool:
        if f.spec != self.spec:
            raise ValueError("polynomial from another ring")
        return all(
            self.piece(d).contains(part.to_vector(d))
            for d, part in f.homogeneous_components().items()
        )

    def is_unit(self) -> bool:
        return self.dim(0) == 1

    def generators(self) -> list[tuple[int, Poly]]:
        if self._gens is None:
            self._gens = minimal_generators(self)
        return self._gens

    def generator_polys(self) -> list[Poly]:
        return [g for _, g in self.generators()]

    def __eq__(self, other):
        if not isinstance(other, GradedIdeal) or other.spec != self.spec:
            return NotImplemented
        hi = max(self.top(), other.top())
        return all(self.piece(d) == other.piece(d) for d in range(hi + 1))

    def __le__(self, other: "GradedIdeal") -> bool:
        hi = max(self.top(), other.top())
        return all(self.piece(d) <= other.piece(d) for d in range(hi + 1))

    def is_ideal(self) -> bool:
        """Check R_1 I_d in I_{d+w} for every variable, up to the bound."""
        for d in range(self.bound + 1):
            for row in self.piece(d).rows:
                f = Poly.from_vector(self.spec, d, row)
                for i in range(self.spec.nvars):
                    g = f * self.spec.var(i)
                    e = d + self.spec.weights[i]
                    try:
                        target = self.piece(e)
                    except DegreeBoundError:
                        continue
                    if not target.contains(g.to_vector(e)):
                        return False
        return True

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generator_polys())
        return f"({gens})"


def unit_ideal(spec: RingSpec) -> GradedIdeal:
    return GradedIdeal(spec, 0, {}, full_from=0)


def contraction_matrix(F: DualPoly, d: int, e: int) -> Matrix:
    """Matrix of R_d -> Q_e, g |-> g o F (F homogeneous of degree d + e)."""
    spec = F.spec
    rows_idx = spec.index(e)
    mons = spec.monomials(d)
    k = spec.field
    M = Matrix.zeros(k, len(rows_idx), len(mons))
    if e < 0:
        return M
    for col, m in enumerate(mons):
        for eF, c in F.terms.items():
            r = tuple(b - a for a, b in zip(m, eF))
            if min(r, default=0) >= 0:
                i = rows_idx.get(r)
                if i is not None:
                    M.rows[i][col] = M.rows[i][col] + c
    return M


def _require_homogeneous(F: DualPoly) -> int:
    j = F.weighted_degree()
    if j is None:
        raise ValueError(f"dual form is zero or not homogeneous: {F}")
    return j


def annihilator(F: DualPoly, bound: int | None = None) -> GradedIdeal:
    """Ann_R(F) as a graded ideal; Ann_d is the kernel of R_d -> Q_{deg F - d}.

    Results are cached per (F, bound); treat the returned ideal as read-only.
    """
    if F.is_zero():
        return unit_ideal(F.spec)
    j = _require_homogeneous(F)
    check_characteristic(F.spec.field, j)
    return _annihilator_cached(F, bound)


@lru_cache(maxsize=256)
def _annihilator_cached(F: DualPoly, bound: int | None) -> GradedIdeal:
    return annihilator_of_set([F], bound)


def annihilator_of_set(forms: Sequence[DualPoly], bound: int | None = None) -> GradedIdeal:
    """Ann_R(F_1, ..., F_k): degree-wise intersection of the kernels."""
    forms = [F for F in forms if not F.is_zero()]
    if not forms:
        raise ValueError("annihilator of the zero module is the unit ideal; pass a nonzero form")
    spec = forms[0].spec
    degs = [_require_homogeneous(F) for F in forms]
    top = max(degs)
    if bound is None:
        bound = top + 1
    pieces = {}
    k = spec.field
    for d in range(min(bound, top) + 1):
        rows = []
        for F, j in zip(forms, degs):
            if d <= j:
                rows.extend(contraction_matrix(F, d, j - d).rows)
        n = spec.dim(d)
        ker = kernel_basis(Matrix(k, rows, n)) if rows else Subspace.full(k, n).rows
        pieces[d] = Subspace(k, n, ker)
    for d in range(top + 1, bound + 1):
        pieces[d] = Subspace.full(k, spec.dim(d))
    return GradedIdeal(spec, bound, pieces, full_from=top + 1)


@dataclass
class DerivateModule:
    """The R-submodule of Q generated by some dual forms, stored per dual degree."""

    spec: RingSpec
    pieces: dict[int, Subspace]

    def piece(self, e: int) -> Subspace:
        if e in self.pieces:
            return self.pieces[e]
        return Subspace(self.spec.field, max(self.spec.dim(e), 0))

    def dims(self) -> list[int]:
        if not self.pieces:
            return []
        return [self.piece(e).dim for e in range(max(self.pieces) + 1)]

    def basis(self, e: int) -> list[DualPoly]:
        return [DualPoly.from_vector(self.spec, e, r) for r in self.piece(e).rows]

    def contains(self, H: DualPoly) -> bool:
        return all(
            self.piece(e).contains(part.to_vector(e))
            for e, part in H.homogeneous_components().items()
        )

    def contains_all(self, forms: Iterable[DualPoly]) -> bool:
        return all(self.contains(H) for H in forms)

    @property
    def length(self) -> int:
        return sum(self.dims())


def derivates(*forms: DualPoly) -> DerivateModule:
    """R o F_1 + ... + R o F_k, basis of each dual degree."""
    forms = [F for F in forms if not F.is_zero()]
    if not forms:
        raise ValueError("need at least one nonzero form")
    spec = forms[0].spec
    pieces: dict[int, Subspace] = {}
    vecs: dict[int, list] = {}
    for F in forms:
        j = _require_homogeneous(F)
        for e in range(j + 1):
            M = contraction_matrix(F, j - e, e)
            vecs.setdefault(e, []).extend(M.transpose().rows)
    for e, vs in vecs.items():
        pieces[e] = Subspace(spec.field, spec.dim(e), vs)
    return DerivateModule(spec, pieces)


def perp(I: GradedIdeal, e: int) -> list[DualPoly]:
    """Basis of (I_e)^perp in Q_e, i.e. all G of degree e with I o G = 0."""
    try:
        piece = I.piece(e)
    except DegreeBoundError:
        raise
    return [DualPoly.from_vector(I.spec, e, v) for v in piece.orthogonal()] if piece.dim < piece.n else []


def colon(I: GradedIdeal, J_gens: Sequence[Poly], bound: int | None = None) -> GradedIdeal:
    """(I : J) for J generated by homogeneous ``J_gens``.

    f in (I:J)_d iff f g in I_{d + deg g} for every generator g, and f g lies in
    I_e iff f o (g o H) = 0 for every H spanning (I_e)^perp.
    """
    spec = I.spec
    k = spec.field
    gens = [g for g in J_gens if not g.is_zero()]
    if not gens:
        return unit_ideal(spec)
    gdeg = []
    for g in gens:
        dg = g.weighted_degree()
        if dg is None:
            raise ValueError(f"colon needs homogeneous generators, got {g}")
        gdeg.append(dg)
    if bound is None:
        bound = I.bound
    pieces = {}
    for d in range(bound + 1):
        n = spec.dim(d)
        rows = []
        for g, dg in zip(gens, gdeg):
            for H in perp(I, d + dg):
                rows.append(contract(g, H).to_vector(d))
        pieces[d] = Subspace(k, n, kernel_basis(Matrix(k, rows, n))) if rows else Subspace.full(k, n)
    full = I.full_from
    if full is None:
        # I_d = R_d on a stretch of max-weight consecutive degrees forces it above
        full = _detect_full(spec, pieces, bound)
    return GradedIdeal(spec, bound, pieces, full_from=full)


def _detect_full(spec: RingSpec, pieces: dict[int, Subspace], bound: int) -> int | None:
    w = max(spec.weights, default=1)
    run = 0
    for d in range(bound + 1):
        if pieces[d].is_full():
            run += 1
            if run >= w:
                return d - w + 1
        else:
            run = 0
    return None


def ideal_from_generators(spec: RingSpec, gens: Sequence[Poly], bound: int) -> GradedIdeal:
    """Ideal generated by homogeneous ``gens``, truncated at ``bound``."""
    k = spec.field
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.spec != spec:
            raise ValueError("generator from another ring")
    degs = []
    for g in gens:
        dg = g.weighted_degree()
        if dg is None:
            raise ValueError(f"generator {g} is not homogeneous")
        degs.append(dg)
    pieces = {}
    for d in range(bound + 1):
        vecs = []
        for g, dg in zip(gens, degs):
            if dg <= d:
                for m in spec.monomials(d - dg):
                    mono = Poly._raw(spec, {m: k.one})
                    vecs.append((mono * g).to_vector(d))
        pieces[d] = Subspace(k, spec.dim(d), vecs)
    return GradedIdeal(spec, bound, pieces, full_from=_detect_full(spec, pieces, bound))


def ideal_product(I: GradedIdeal, J: GradedIdeal, bound: int) -> GradedIdeal:
    gens = [f * g for f in I.generator_polys() for g in J.generator_polys()]
    return ideal_from_generators(I.spec, gens, bound)


def ideal_sum(I: GradedIdeal, J: GradedIdeal, bound: int) -> GradedIdeal:
    return ideal_from_generators(I.spec, I.generator_polys() + J.generator_polys(), bound)


def minimal_generators(I: GradedIdeal) -> list[tuple[int, Poly]]:
    """Degree by degree, a complement of sum_i x_i I_{d - w_i} inside I_d."""
    spec = I.spec
    out: list[tuple[int, Poly]] = []
    for d in range(I.top() + 1):
        target = I.piece(d)
        if target.dim == 0:
            continue
        lower = Subspace(spec.field, spec.dim(d))
        for i, w in enumerate(spec.weights):
            if d - w < 0:
                continue
            x = spec.var(i)
            for row in I.piece(d - w).rows:
                lower.add((Poly.from_vector(spec, d - w, row) * x).to_vector(d))
        if lower.dim == target.dim:
            continue
        for row in target.rows:
            if lower.add(row):
                out.append((d, Poly.from_vector(spec, d, row)))
    return out


def ideal_contract(I: GradedIdeal, G: DualPoly) -> list[DualPoly]:
    """Spanning set of I o G (nonzero contractions of basis elements)."""
    if G.is_zero():
        return []
    j = _require_homogeneous(G)
    out = []
    for d in range(j + 1):
        for f in I.basis(d):
            h = contract(f, G)
            if h:
                out.append(h)
    return out


def contraction_within(I: GradedIdeal, G: DualPoly, module: DerivateModule) -> bool:
    """Whether I o G is contained in ``module``."""
    return module.contains_all(ideal_contract(I, G))


def in_derivates(G: DualPoly, F: DualPoly) -> bool:
    """G in R o F, equivalently R o G contained in R o F."""
    if G.is_zero():
        return True
    return derivates(F).contains(G)


def is_subspace_of_derivates(forms: Iterable[DualPoly], F: DualPoly) -> bool:
    """Every listed dual form lies in R o F (so does the module they generate)."""
    module = derivates(F)
    return all(module.contains(H) for H in forms if not H.is_zero())
