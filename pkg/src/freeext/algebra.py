"""Graded Artinian quotients A = R/I and their numerical invariants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .duality import DegreeBoundError, GradedIdeal, annihilator
from .linalg import Matrix, kernel_basis, rank
from .ring import DualPoly, Poly, RingSpec


class NotArtinianError(ValueError):
    """The ideal does not contain a power of the maximal ideal within the bound."""


def trim(H: Sequence[int]) -> list[int]:
    H = list(H)
    while H and H[-1] == 0:
        H.pop()
    return H


def tensor_hilbert(HA: Sequence[int], HB: Sequence[int]) -> list[int]:
    """Hilbert function of a tensor product: the convolution of the two."""
    if not HA or not HB:
        return []
    out = [0] * (len(HA) + len(HB) - 1)
    for i, a in enumerate(HA):
        if a:
            for j, b in enumerate(HB):
                out[i + j] += a * b
    return trim(out)


def is_symmetric(H: Sequence[int]) -> bool:
    H = trim(H)
    return H == H[::-1]


@dataclass
class ArtinianAlgebra:
    """R/I with monomial coset bases (the non-pivot monomials of each I_d)."""

    spec: RingSpec
    ideal: GradedIdeal
    socle_degree: int
    basis: dict[int, list[tuple]]

    @property
    def hilbert(self) -> list[int]:
        return [len(self.basis[d]) for d in range(self.socle_degree + 1)]

    @property
    def length(self) -> int:
        return sum(self.hilbert)

    def __len__(self):
        return self.length

    def dim(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def basis_polys(self, d: int) -> list[Poly]:
        k = self.spec.field
        return [Poly._raw(self.spec, {m: k.one}) for m in self.basis.get(d, ())]

    def degree_offsets(self) -> dict[int, int]:
        out, pos = {}, 0
        for d in range(self.socle_degree + 1):
            out[d] = pos
            pos += self.dim(d)
        return out

    # reduction

    def coords(self, f: Poly, d: int) -> list:
        """Coordinates in A_d of the degree-d part of f."""
        if d > self.socle_degree or d < 0:
            return []
        return self.ideal.piece(d).complement_coords(f.to_vector(d))

    def normal_form(self, f: Poly) -> Poly:
        out = {}
        for d, part in f.homogeneous_components().items():
            for m, c in zip(self.basis.get(d, ()), self.coords(part, d)):
                if c:
                    out[m] = c
        return Poly._raw(self.spec, out)

    def is_zero(self, f: Poly) -> bool:
        return self.ideal.contains(f)

    def vector(self, f: Poly) -> list:
        """Coordinates of f on the full basis, degree by degree."""
        out = []
        for d in range(self.socle_degree + 1):
            part = Poly._raw(self.spec, {e: c for e, c in f.terms.items() if self.spec.degree(e) == d})
            out.extend(self.coords(part, d))
        return out

    # operators

    def block_map(self, ell: Poly, i: int, k: int = 1) -> Matrix:
        """Matrix of multiplication by ell^k from A_i to A_{i + k deg ell} (ell homogeneous)."""
        w = ell.weighted_degree()
        if w is None:
            raise ValueError("block maps need a homogeneous element")
        e = i + k * w
        f = ell ** k
        cols = [self.coords(m * f, e) for m in self.basis_polys(i)]
        nrows = self.dim(e)
        if not cols:
            return Matrix.zeros(self.spec.field, nrows, 0)
        return Matrix(self.spec.field, cols, nrows).transpose() if nrows else Matrix.zeros(self.spec.field, 0, len(cols))

    def multiplication_matrix(self, ell: Poly) -> Matrix:
        """Matrix of multiplication by ell on the whole algebra."""
        cols = [self.vector(m * ell) for d in range(self.socle_degree + 1) for m in self.basis_polys(d)]
        n = self.length
        return Matrix(self.spec.field, cols, n).transpose()

    # socle and duality

    def socle(self) -> dict[int, list[Poly]]:
        """Per-degree basis of (0 : m_A)."""
        out = {}
        k = self.spec.field
        for d in range(self.socle_degree + 1):
            n = self.dim(d)
            if n == 0:
                continue
            rows = []
            for i in range(self.spec.nvars):
                M = self.block_map(self.spec.var(i), d)
                rows.extend(M.rows)
            ker = kernel_basis(Matrix(k, rows, n)) if rows else [[k.one if a == b else k.zero for a in range(n)] for b in range(n)]
            if ker:
                mons = self.basis_polys(d)
                out[d] = [sum((m.scale(c) for m, c in zip(mons, v) if c), self.spec.zero()) for v in ker]
        return out

    @property
    def type(self) -> int:
        return sum(len(v) for v in self.socle().values())

    def is_gorenstein(self) -> bool:
        return self.type == 1

    def pairing_ranks(self) -> list[int]:
        """Rank of A_i x A_{j-i} -> A_j for each i (needs dim A_j = 1 to be meaningful)."""
        j = self.socle_degree
        k = self.spec.field
        out = []
        for i in range(j + 1):
            left, right = self.basis_polys(i), self.basis_polys(j - i)
            if not left or not right:
                out.append(0)
                continue
            rows = []
            for a in left:
                row = []
                for b in right:
                    v = self.coords(a * b, j)
                    row.append(v[0] if v else k.zero)
                rows.append(row)
            out.append(rank(Matrix(k, rows, len(right))))
        return out

    def is_poincare_duality(self) -> bool:
        if self.dim(self.socle_degree) != 1:
            return False
        return all(r == self.dim(i) for i, r in enumerate(self.pairing_ranks()))

    def is_compressed(self) -> bool:
        return hilbert_is_compressed(self.spec, self.hilbert)

    def report(self) -> dict:
        return {
            "hilbert": self.hilbert,
            "length": self.length,
            "socle_degree": self.socle_degree,
            "type": self.type,
            "gorenstein": self.is_gorenstein(),
            "compressed": self.is_compressed() if self.is_gorenstein() else False,
        }


def hilbert_is_compressed(spec: RingSpec, H: Sequence[int]) -> bool:
    """dim A_i = min(r_i, r_{j-i}) for every i, with r the Hilbert function of R."""
    H = trim(H)
    j = len(H) - 1
    return all(h == min(spec.dim(i), spec.dim(j - i)) for i, h in enumerate(H))


def quotient(I: GradedIdeal) -> ArtinianAlgebra:
    if I.full_from is None:
        raise NotArtinianError(f"ideal is not m-primary within degree bound {I.bound}")
    basis = {}
    top = -1
    for d in range(I.full_from):
        try:
            piece = I.piece(d)
        except DegreeBoundError:
            raise NotArtinianError(f"degree {d} missing below saturation") from None
        mons = I.spec.monomials(d)
        basis[d] = [mons[c] for c in piece.nonpivots()]
        if basis[d]:
            top = d
    if top < 0:
        raise NotArtinianError("quotient by the unit ideal is zero")
    basis = {d: b for d, b in basis.items() if d <= top}
    return ArtinianAlgebra(I.spec, I, top, basis)


def from_dual_generator(F: DualPoly) -> ArtinianAlgebra:
    return quotient(annihilator(F))
