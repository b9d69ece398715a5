"""Homology: Betti numbers, harmonic bases, and homologous-cycle tests.

The k-th homology is ker B_k modulo im B_{k+1}.  Over the reals the
Betti number reduces to a rank count, computed here from singular
values; over the integers the free rank and torsion come from Smith
normal forms.  Harmonic representatives are the kernel of the Hodge
Laplacian, whose dimension matches the real Betti number.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CellComplex, ChainVector
from .errors import BadDimension, NotACycle, ShapeMismatch
from .hodge import dense_boundary, hodge_laplacian, zero_threshold, _fix_sign
from .snf import smith_normal_form

RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class HomologySummary:
    """Per-dimension Betti numbers plus integer torsion factors."""

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    coefficients: str

    def to_json(self) -> dict:
        return {
            "coefficients": self.coefficients,
            "betti": list(self.betti),
            "torsion": [list(t) for t in self.torsion],
        }


def _real_rank(matrix: np.ndarray) -> int:
    if matrix.size == 0:
        return 0
    singular = np.linalg.svd(matrix, compute_uv=False)
    return int(np.sum(singular > zero_threshold(singular)))


def betti_numbers(cc: CellComplex, coefficients: str = "real") -> HomologySummary:
    """Betti numbers over the reals or the integers.

    The real path uses numerical ranks: beta_k = |C_k| - rank B_k -
    rank B_{k+1}.  The integer path uses exact Smith normal forms and
    additionally reports the torsion invariant factors (> 1) of each
    homology group.
    """
    if coefficients not in ("real", "integer"):
        raise ValueError(f"coefficients must be real or integer, got {coefficients!r}")
    betti = []
    torsion = []
    if coefficients == "real":
        ranks = [_real_rank(dense_boundary(cc, k)) for k in range(cc.dim + 2)]
        for k in range(cc.dim + 1):
            betti.append(cc.n_cells(k) - ranks[k] - ranks[k + 1])
            torsion.append(())
    else:
        snfs = [None] + [smith_normal_form(cc.boundary(k)) for k in range(1, cc.dim + 1)]
        for k in range(cc.dim + 1):
            rank_down = snfs[k].rank if k >= 1 else 0
            up = snfs[k + 1] if k + 1 <= cc.dim else None
            rank_up = up.rank if up else 0
            betti.append(cc.n_cells(k) - rank_down - rank_up)
            torsion.append(
                tuple(d for d in (up.diagonal[: up.rank] if up else ()) if d > 1)
            )
    return HomologySummary(tuple(betti), tuple(torsion), coefficients)


def harmonic_basis(cc: CellComplex, k: int) -> list[ChainVector]:
    """Orthonormal kernel basis of L_k; its size is the k-th Betti number."""
    lap = hodge_laplacian(cc, k)
    evals, vecs = np.linalg.eigh(lap)
    cut = zero_threshold(evals)
    return [
        ChainVector(k, _fix_sign(vec))
        for lam, vec in zip(evals, vecs.T)
        if abs(lam) <= cut
    ]


def _as_cycle(cc: CellComplex, chain: ChainVector, name: str) -> np.ndarray:
    values = chain.values
    if len(values) != cc.n_cells(chain.dim):
        raise ShapeMismatch(f"{name} has {len(values)} values for {cc.n_cells(chain.dim)} cells")
    if chain.dim >= 1:
        scale = np.max(np.abs(values))
        boundary = dense_boundary(cc, chain.dim) @ values
        if scale > 0 and np.max(np.abs(boundary)) / scale > RESIDUAL_TOL:
            raise NotACycle(f"{name} is not in the kernel of B_{chain.dim}")
    return values


def homologous(
    cc: CellComplex, a: ChainVector, b: ChainVector
) -> tuple[bool, ChainVector | None]:
    """Whether two cycles differ by a boundary, with a witness when they do.

    Returns (True, w) with B_{k+1} w = b - a (the boundary carrying the
    first cycle onto the second) when the difference lies in the image of
    B_{k+1}, judged by a least-squares residual below tolerance after
    normalising the difference to unit max-abs; else (False, None).
    """
    if a.dim != b.dim:
        raise BadDimension(f"chains have dimensions {a.dim} and {b.dim}")
    k = a.dim
    va = _as_cycle(cc, a, "first chain")
    vb = _as_cycle(cc, b, "second chain")
    diff = vb - va
    up = dense_boundary(cc, k + 1)
    scale = float(np.max(np.abs(diff)))
    if scale == 0.0:
        return True, ChainVector(k + 1, np.zeros(up.shape[1]))
    if up.shape[1] == 0:
        return False, None
    witness, *_ = np.linalg.lstsq(up, diff, rcond=None)
    residual = np.max(np.abs(up @ witness - diff)) / scale
    if residual > RESIDUAL_TOL:
        return False, None
    return True, ChainVector(k + 1, witness)
