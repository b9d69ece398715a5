"""Persistent homology of Vietoris-Rips filtrations.

Simplices enter at their diameter; the boundary matrix in filtration
order is reduced column by column over Z/2 and each pivot pair (i, j)
becomes a bar born at the diameter of simplex i and dying at that of
simplex j.  Unpaired cycle creators give infinite bars.  Zero-length
bars are dropped from the default output.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .builders import DEFAULT_SIMPLEX_CAP, PointCloud, rips_simplices


@dataclass(frozen=True)
class FiltrationStep:
    birth: float
    dim: int
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Filtration:
    """Simplices ordered by (birth, dimension, vertex tuple)."""

    steps: tuple[FiltrationStep, ...]

    def __post_init__(self):
        order = {}
        for position, step in enumerate(self.steps):
            if step.vertices != tuple(sorted(step.vertices)):
                raise ValueError(f"simplex {step.vertices} is not sorted")
            if len(step.vertices) != step.dim + 1:
                raise ValueError(f"simplex {step.vertices} disagrees with dim {step.dim}")
            if step.dim >= 1:
                for face in itertools.combinations(step.vertices, step.dim):
                    if face not in order:
                        raise ValueError(
                            f"face {face} of {step.vertices} missing or out of order"
                        )
            order[step.vertices] = position
        keys = [(s.birth, s.dim, s.vertices) for s in self.steps]
        if keys != sorted(keys):
            raise ValueError("filtration is not sorted by (birth, dim, vertices)")


def vr_filtration(
    pc: PointCloud,
    max_eps: float,
    max_dim: int,
    cap: int = DEFAULT_SIMPLEX_CAP,
) -> Filtration:
    """Rips filtration up to scale max_eps; births are simplex diameters."""
    simplices = rips_simplices(pc, max_eps, max_dim, cap)
    steps = sorted(
        (FiltrationStep(diameter, len(vertices) - 1, vertices) for vertices, diameter in simplices),
        key=lambda s: (s.birth, s.dim, s.vertices),
    )
    return Filtration(tuple(steps))


@dataclass(frozen=True)
class PersistenceBar:
    dim: int
    birth: float
    death: float

    def __post_init__(self):
        if self.death < self.birth:
            raise ValueError("bars cannot die before they are born")

    @property
    def infinite(self) -> bool:
        return math.isinf(self.death)


@dataclass(frozen=True)
class PersistenceDiagram:
    bars: tuple[PersistenceBar, ...]

    def in_dim(self, dim: int) -> list[PersistenceBar]:
        return [bar for bar in self.bars if bar.dim == dim]

    def alive_at(self, eps: float, dim: int) -> int:
        """Bars alive at scale eps: born at or before it, not yet dead."""
        return sum(1 for b in self.in_dim(dim) if b.birth <= eps < b.death)


def persistence(filtration: Filtration, keep_zero_bars: bool = False) -> PersistenceDiagram:
    """Standard Z/2 column reduction of the filtration boundary matrix."""
    steps = filtration.steps
    position = {step.vertices: i for i, step in enumerate(steps)}
    columns: list[set[int]] = []
    for step in steps:
        if step.dim == 0:
            columns.append(set())
        else:
            columns.append(
                {position[face] for face in itertools.combinations(step.vertices, step.dim)}
            )
    low_owner: dict[int, int] = {}
    pairs: list[tuple[int, int]] = []
    for j, column in enumerate(columns):
        while column:
            low = max(column)
            owner = low_owner.get(low)
            if owner is None:
                break
            column ^= columns[owner]
        if column:
            low_owner[max(column)] = j
            pairs.append((max(column), j))
    bars = []
    for i, j in pairs:
        bar = PersistenceBar(steps[i].dim, steps[i].birth, steps[j].birth)
        if keep_zero_bars or bar.death > bar.birth:
            bars.append(bar)
    for i, column in enumerate(columns):
        if not column and i not in low_owner:
            bars.append(PersistenceBar(steps[i].dim, steps[i].birth, math.inf))
    bars.sort(key=lambda b: (b.dim, b.birth, b.death))
    return PersistenceDiagram(tuple(bars))
