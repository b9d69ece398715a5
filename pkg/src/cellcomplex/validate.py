"""Regularity validation for cell complexes.

Dimension 1 requires every edge column of B_1 to have exactly one +1 and
one -1.  Dimension 2 additionally requires every B_2 column to trace one
simple oriented cycle.  The general n-dimensional conditions work per
cell: on the closure of each cell, the restricted chain complex must
have vanishing integer homology above degree 0 (acyclicity) and integer
0-homology Z (connectedness).  Both are decided exactly through Smith
normal forms: equality of a kernel and an image lattice reduces to a
rank identity plus all invariant factors being 1.

Validators report failures instead of raising; each failure carries a
condition id from {B1-columns, cell-acyclic, cell-connected, B2-cycle}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CellComplex,
    CellRef,
    closure_indices,
    oriented_cycle,
    subcomplex,
)
from .errors import BadDimension, NotACycleColumn
from .snf import SnfResult, smith_normal_form

__all__ = [
    "Failure",
    "ValidationReport",
    "closure",
    "smith_normal_form",
    "SnfResult",
    "validate_dim1",
    "validate_dim2",
    "validate_nd",
]


@dataclass(frozen=True)
class Failure:
    condition: str
    cell: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    failures: tuple[Failure, ...]

    @classmethod
    def from_failures(cls, failures: list[Failure]) -> "ValidationReport":
        return cls(not failures, tuple(failures))

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "failures": [
                {"condition": f.condition, "cell": f.cell, "detail": f.detail}
                for f in self.failures
            ],
        }


def _b1_column_failures(cc: CellComplex) -> list[Failure]:
    failures = []
    for j, column in enumerate(cc.boundary(1).columns()):
        signs = sorted(s for _, s in column)
        if signs != [-1, 1]:
            failures.append(
                Failure(
                    "B1-columns",
                    f"1-cell {cc.cells[1][j]}",
                    f"column has signs {signs}, expected one -1 and one +1",
                )
            )
    return failures


def validate_dim1(cc: CellComplex) -> ValidationReport:
    """Check the dimension-1 condition on every column of B_1."""
    if cc.dim < 1:
        raise BadDimension("dimension-1 validation needs at least one edge layer")
    return ValidationReport.from_failures(_b1_column_failures(cc))


def validate_dim2(cc: CellComplex) -> ValidationReport:
    """Check that every B_2 column is one simple oriented cycle."""
    if cc.dim != 2:
        raise BadDimension("dimension-2 validation needs a 2-dimensional complex")
    failures = []
    b1, b2 = cc.boundary(1), cc.boundary(2)
    for j, column in enumerate(b2.columns()):
        cell = f"2-cell {cc.cells[2][j]}"
        try:
            _, reason = oriented_cycle(b1, column)
        except NotACycleColumn as exc:
            reason = str(exc)
        if reason is not None:
            failures.append(Failure("B2-cycle", cell, reason))
    return ValidationReport.from_failures(failures)


def closure(cc: CellComplex, cell: CellRef) -> CellComplex:
    """Smallest sub-complex containing the cell and its iterated boundary."""
    return subcomplex(cc, closure_indices(cc, cell))


def _all_unit_factors(snf: SnfResult) -> bool:
    return all(d == 1 for d in snf.diagonal[: snf.rank])


def _cell_failures(cc: CellComplex, k: int, index: int) -> list[Failure]:
    cell = f"{k}-cell {cc.cells[k][index]}"
    layers = closure_indices(cc, CellRef(k, index))
    hats = [
        cc.boundary(l).restrict(layers[l - 1], layers[l]) for l in range(1, k + 1)
    ]
    snfs = [smith_normal_form(b) for b in hats]
    failures = []
    # Acyclicity: the top column is injective and, over Z, the kernel of
    # each lower map equals the image of the one above it.
    if snfs[k - 1].rank != 1:
        failures.append(Failure("cell-acyclic", cell, "boundary column is zero"))
    for l in range(2, k + 1):
        kernel_rank = hats[l - 2].cols - snfs[l - 2].rank
        if kernel_rank != snfs[l - 1].rank or not _all_unit_factors(snfs[l - 1]):
            failures.append(
                Failure(
                    "cell-acyclic",
                    cell,
                    f"ker B_{l - 1} != im B_{l} on the closure "
                    f"(kernel rank {kernel_rank}, image rank {snfs[l - 1].rank}, "
                    f"factors {snfs[l - 1].diagonal[: snfs[l - 1].rank]})",
                )
            )
    cokernel_rank = hats[0].rows - snfs[0].rank
    if cokernel_rank != 1 or not _all_unit_factors(snfs[0]):
        failures.append(
            Failure(
                "cell-connected",
                cell,
                f"integer cokernel of B_1 on the closure has rank {cokernel_rank} "
                f"with factors {snfs[0].diagonal[: snfs[0].rank]}, expected Z",
            )
        )
    return failures


def validate_nd(cc: CellComplex) -> ValidationReport:
    """Check the full per-cell regularity conditions in any dimension."""
    failures: list[Failure] = []
    if cc.dim >= 1:
        failures.extend(_b1_column_failures(cc))
    for k in range(1, cc.dim + 1):
        for index in range(cc.n_cells(k)):
            failures.extend(_cell_failures(cc, k, index))
    return ValidationReport.from_failures(failures)
