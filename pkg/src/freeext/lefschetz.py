"""Jordan types of multiplication maps and the strong Lefschetz property."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ArtinianAlgebra
from .linalg import Matrix, ParamMatrix, generic_rank, rank
from .ring import Poly


def conjugate(parts: Sequence[int]) -> list[int]:
    """Transpose of the Young diagram of the (sorted) sequence."""
    lam = sorted((p for p in parts if p > 0), reverse=True)
    if not lam:
        return []
    return [sum(1 for p in lam if p >= k) for k in range(1, lam[0] + 1)]


def partition_from_ranks(ranks: Sequence[int]) -> list[int]:
    """Jordan type of a nilpotent map from ranks r_0 = dim, r_1, r_2, ... of its powers.

    The number of blocks of size >= k is r_{k-1} - r_k.
    """
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    out = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        out.extend([k] * exact)
    return out


def _power_ranks(M: Matrix) -> list[int]:
    n = M.nrows
    ranks = [n]
    P = M
    while ranks[-1]:
        r = rank(P)
        if r == ranks[-1]:
            raise ValueError("multiplication map is not nilpotent")
        ranks.append(r)
        P = P @ M
    return ranks


def jordan_type(A: ArtinianAlgebra, ell: Poly) -> list[int]:
    """Block sizes of multiplication by ell (any element of the maximal ideal)."""
    if ell.spec != A.spec:
        raise ValueError("element from another ring")
    if ell.constant_term():
        raise ValueError(f"{ell} has a nonzero constant term; it must lie in the maximal ideal")
    if A.is_zero(ell):
        return [1] * A.length
    return partition_from_ranks(_power_ranks(A.multiplication_matrix(ell)))


def has_sljt(A: ArtinianAlgebra, ell: Poly) -> bool:
    """ell has strong Lefschetz Jordan type: P_ell equals the conjugate of H(A)."""
    return jordan_type(A, ell) == conjugate(A.hilbert)


def _graded_ranks(A: ArtinianAlgebra, block_rank) -> list[int]:
    j = A.socle_degree
    ranks = [A.length]
    for k in range(1, j + 1):
        ranks.append(sum(block_rank(i, k) for i in range(j + 1 - k)))
    ranks.append(0)
    while len(ranks) > 1 and ranks[-1] == 0 and ranks[-2] == 0:
        ranks.pop()
    return ranks


@dataclass
class SLResult:
    holds: bool
    certificate: str
    target: list[int]
    jordan_type: list[int]
    witness: Poly | None = None
    ranks: list[int] = field(default_factory=list)

    def to_json(self):
        return {
            "strong_lefschetz": self.holds,
            "certificate": self.certificate,
            "hilbert_conjugate": self.target,
            "jordan_type": self.jordan_type,
            "witness": None if self.witness is None else str(self.witness),
        }


def is_strong_lefschetz(A: ArtinianAlgebra, samples: int = 8, seed: int | None = 0, height: int = 50) -> SLResult:
    """Decide SL for linear forms in the weight-one variables.

    A sampled form whose Jordan type is H(A)^v certifies "yes".  Otherwise the
    blocks where sampling fell short are ranked over k(c_1..c_m) with the
    generic form c_1 x_1 + ... + c_m x_m, which certifies "no".
    """
    spec = A.spec
    target = conjugate(A.hilbert)
    linear = [i for i, w in enumerate(spec.weights) if w == 1]
    if not linear or A.dim(1) == 0:
        return SLResult(False, "vacuous", target, [])
    rng = random.Random(seed)
    j = A.socle_degree
    H = A.hilbert
    cap = {(i, k): min(H[i], H[i + k]) for k in range(1, j + 1) for i in range(j + 1 - k)}
    best: dict[tuple[int, int], int] = {}
    best_type: list[int] = []
    for _ in range(samples):
        coeffs = [rng.randint(-height, height) for _ in linear]
        ell = spec.zero()
        for c, i in zip(coeffs, linear):
            ell = ell + spec.var(i).scale(c)
        if not ell:
            continue
        found = {}

        def block(i, k):
            r = rank(A.block_map(ell, i, k)) if H[i] and H[i + k] else 0
            found[i, k] = r
            return r

        P = partition_from_ranks(_graded_ranks(A, block))
        for key, r in found.items():
            best[key] = max(best.get(key, 0), r)
        if P == target:
            return SLResult(True, "witness", target, P, witness=ell)
        best_type = P
    if spec.field.p:
        return SLResult(False, "sampled", target, best_type)
    maps = {}

    def generic_block(i, k):
        if best.get((i, k), 0) == cap[i, k]:
            return cap[i, k]
        if not H[i] or not H[i + k]:
            return 0
        for s in range(i, i + k):
            if s not in maps:
                maps[s] = ParamMatrix.from_linear([A.block_map(spec.var(v), s) for v in linear])
        M = maps[i]
        for s in range(i + 1, i + k):
            M = maps[s] @ M
        return generic_rank(M)

    ranks = _graded_ranks(A, generic_block)
    P = partition_from_ranks(ranks)
    if P == target:
        # the generic form is SL, so sampling just missed; keep drawing until a witness shows up
        for _ in range(200):
            coeffs = [rng.randint(-10 * height, 10 * height) for _ in linear]
            ell = spec.zero()
            for c, i in zip(coeffs, linear):
                ell = ell + spec.var(i).scale(c)
            if ell and jordan_type(A, ell) == target:
                return SLResult(True, "witness", target, target, witness=ell, ranks=ranks)
        return SLResult(True, "generic-rank", target, P, ranks=ranks)
    return SLResult(False, "generic-rank", target, P, ranks=ranks)
