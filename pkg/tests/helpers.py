"""Shared fixtures and independent oracles for the test suite.

The rank oracle does exact row reduction over the rationals, fully
independent of the numpy SVD path and of the Smith normal form code.
The complex zoo produces small randomized builder outputs for the
property suites.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np

import cellcomplex as cx

TOY_EDGES = [(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]
TOY_TRIANGLE = (0, 3, 4)
TOY_SQUARE = (0, 1, 2, 3)

TOY_B1 = np.array(
    [
        [-1, -1, -1, 0, 0, 0],
        [1, 0, 0, -1, 0, 0],
        [0, 0, 0, 1, -1, 0],
        [0, 1, 0, 0, 1, -1],
        [0, 0, 1, 0, 0, 1],
    ]
)
TOY_B2 = np.array(
    [
        [0, 1],
        [1, -1],
        [-1, 0],
        [0, 1],
        [0, 1],
        [1, 0],
    ]
)


def toy() -> cx.CellComplex:
    return cx.from_tuples(range(5), TOY_EDGES, [TOY_TRIANGLE, TOY_SQUARE])


def toy_minus_triangle() -> cx.CellComplex:
    return cx.from_tuples(range(5), TOY_EDGES, [TOY_SQUARE])


def toy_graph() -> cx.CellComplex:
    return cx.from_tuples(range(5), TOY_EDGES)


def k2_paper() -> cx.CellComplex:
    """Single-edge complex with B1 = (1, -1)^T."""
    b1 = cx.BoundaryMatrix(2, 1, ((0, 0, 1), (1, 0, -1)))
    return cx.from_boundary_matrices([["u", "v"], ["e"]], [b1])


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def rank_over_q(matrix) -> int:
    """Exact matrix rank by Gauss elimination over the rationals."""
    array = np.asarray(matrix)
    if array.size == 0:
        return 0
    rows = [[Fraction(int(v)) for v in row] for row in array.tolist()]
    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [v / inv for v in rows[rank]]
        for i in range(n_rows):
            if i != rank and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def betti_oracle(cc: cx.CellComplex) -> tuple[int, ...]:
    """Betti numbers from the rational rank oracle."""
    ranks = [0] * (cc.dim + 2)
    for k in range(1, cc.dim + 1):
        ranks[k] = rank_over_q(cc.boundary(k).to_dense())
    return tuple(cc.n_cells(k) - ranks[k] - ranks[k + 1] for k in range(cc.dim + 1))


def int_det(matrix: list[list[int]]) -> int:
    """Determinant by cofactor expansion; fine for the tiny oracle inputs."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        if matrix[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        total += (-1) ** j * matrix[0][j] * int_det(minor)
    return total


def minors_gcd(matrix, k: int) -> int:
    """gcd of all k x k minors (0 when every minor vanishes)."""
    array = [[int(v) for v in row] for row in np.asarray(matrix).tolist()]
    n_rows, n_cols = len(array), len(array[0])
    result = 0
    for rows in itertools.combinations(range(n_rows), k):
        for cols in itertools.combinations(range(n_cols), k):
            minor = [[array[i][j] for j in cols] for i in rows]
            result = math.gcd(result, abs(int_det(minor)))
    return result


# ---------------------------------------------------------------------------
# Randomized generators
# ---------------------------------------------------------------------------


def random_connected_graph(
    rng: random.Random, n_min: int = 3, n_max: int = 7, extra_min: int = 0
) -> cx.CellComplex:
    """Connected simple graph as a 1-complex, random spanning tree plus extras."""
    n = rng.randint(n_min, n_max)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    used = {frozenset(e) for e in edges}
    candidates = [
        (a, b)
        for a, b in itertools.combinations(range(n), 2)
        if frozenset((a, b)) not in used
    ]
    rng.shuffle(candidates)
    n_extra = min(len(candidates), rng.randint(extra_min, 3))
    edges += candidates[:n_extra]
    return cx.from_tuples(range(n), edges)


def random_cloud(rng: random.Random, n_min: int = 2, n_max: int = 8) -> cx.PointCloud:
    n = rng.randint(n_min, n_max)
    return cx.PointCloud([[rng.uniform(0, 2), rng.uniform(0, 2)] for _ in range(n)])


def random_factor(rng: random.Random) -> cx.CellComplex:
    """Small complex suitable as a product factor."""
    choice = rng.randrange(5)
    if choice == 0:
        return cx.from_tuples(["p"])
    if choice == 1:
        return cx.cubical([rng.randint(2, 4)])
    if choice == 2:
        return cx.from_tuples(range(3), [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)])
    if choice == 3:
        n = rng.randint(3, 5)
        edges = [(i, (i + 1) % n) for i in range(n)]
        return cx.from_tuples(range(n), edges, [tuple(range(n))])
    return toy()


def random_builder_complex(rng: random.Random) -> cx.CellComplex:
    """One small output drawn across the builder family."""
    kind = rng.randrange(6)
    if kind == 0:
        return cx.vietoris_rips(random_cloud(rng), rng.uniform(0.3, 2.5), 2)
    if kind == 1:
        sizes = [rng.randint(1, 4) for _ in range(rng.randint(1, 2))]
        return cx.cubical(sizes)
    if kind == 2:
        return cx.product(random_factor(rng), random_factor(rng))
    if kind == 3:
        return cx.spanning_tree_lifting(random_connected_graph(rng))
    if kind == 4:
        return cx.chordless_cycle_lifting(random_connected_graph(rng))
    simplices = set()
    n = rng.randint(3, 6)
    for _ in range(rng.randint(2, 5)):
        size = rng.randint(1, 3)
        simplices.add(tuple(sorted(rng.sample(range(n), size))))
    simplices.update((v,) for v in range(n))
    return cx.from_simplicial(range(n), simplices, auto_close=True)


def random_two_complex(rng: random.Random) -> cx.CellComplex:
    """Constructible 2-complex whose 2-cells may violate the cycle condition.

    Columns are integer combinations of fundamental cycles (so exactness
    always holds), zero columns, or go with a corrupted B1 column; the
    mix exercises agreement between the elementary and per-cell
    validators.
    """
    while True:
        graph = random_connected_graph(rng, n_min=4, extra_min=1)
        lifted = cx.spanning_tree_lifting(graph)
        if lifted.dim == 2:
            break
    n_edges = graph.n_cells(1)
    basis = []
    for j in range(lifted.n_cells(2)):
        vec = [0] * n_edges
        for i, s in lifted.boundary(2).column(j):
            vec[i] = s
        basis.append(vec)
    b1 = graph.boundary(1)
    if rng.random() < 0.1:
        # One corrupted B1 entry plus a zero B2 column keeps exactness.
        i, j, s = rng.choice(b1.entries)
        entries = tuple(
            (ei, ej, -es if (ei, ej) == (i, j) else es) for ei, ej, es in b1.entries
        )
        bad_b1 = cx.BoundaryMatrix(b1.rows, b1.cols, entries)
        b2 = cx.BoundaryMatrix(n_edges, 1, ())
        return cx.CellComplex(
            2, (*graph.cells, ("f0",)), (bad_b1, b2)
        )
    columns = []
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.15:
            columns.append([])
            continue
        for _ in range(12):
            count = rng.randint(1, min(3, len(basis)))
            combo = [0] * n_edges
            for vec in rng.sample(basis, count):
                sign = rng.choice((-1, 1))
                combo = [a + sign * b for a, b in zip(combo, vec)]
            if any(combo) and all(abs(v) <= 1 for v in combo):
                columns.append([(i, v) for i, v in enumerate(combo) if v])
                break
        else:
            columns.append([(i, v) for i, v in enumerate(basis[0]) if v])
    entries = tuple(
        (i, col, s) for col, column in enumerate(columns) for i, s in column
    )
    b2 = cx.BoundaryMatrix(n_edges, len(columns), entries)
    labels = tuple(f"f{c}" for c in range(len(columns)))
    return cx.from_boundary_matrices(
        [list(graph.cells[0]), list(graph.cells[1]), list(labels)], [b1, b2]
    )


def random_weights(rng: random.Random, cc: cx.CellComplex) -> cx.WeightSet:
    return cx.WeightSet(
        tuple(
            np.array([math.exp(rng.uniform(-1.5, 1.5)) for _ in range(cc.n_cells(k))])
            for k in range(cc.dim + 1)
        )
    )


def exactness_holds(cc: cx.CellComplex) -> bool:
    """Direct integer check of B_{k-1} @ B_k = 0, independent of core."""
    for k in range(2, cc.dim + 1):
        a = cc.boundary(k - 1).to_dense().astype(object)
        b = cc.boundary(k).to_dense().astype(object)
        if np.any(a @ b != 0):
            return False
    return True
