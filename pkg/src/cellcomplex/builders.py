"""Constructing complexes from higher-level inputs.

Simplicial complexes and Vietoris-Rips point clouds, products of
complexes (and cubical grids as iterated products of path graphs), and
three ways of attaching 2-cells to a graph: inner windows of a planar
embedding, fundamental cycles of a BFS spanning tree, and chordless
cycles.  Liftings that find no cycles return the 1-complex unchanged.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import networkx as nx
import numpy as np

from .core import (
    BoundaryMatrix,
    CellComplex,
    _edge_endpoints,
    _rotate_min_first,
    from_boundary_matrices,
    from_tuples,
    oriented_cycle,
)
from .errors import (
    BadDimension,
    CapExceeded,
    Disconnected,
    DuplicateLabel,
    EdgesCross,
    NotACycleColumn,
    NotDownwardClosed,
    NotSimple,
    TooManySimplices,
    UncoveredVertex,
    UnknownVertex,
)

DEFAULT_SIMPLEX_CAP = 10**6
DEFAULT_CYCLE_CAP = 10**5


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Finite point cloud in R^d."""

    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("point cloud must be a nonempty (n, d) array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def distances(self) -> np.ndarray:
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.sqrt(np.sum(diff**2, axis=-1))


# ---------------------------------------------------------------------------
# Simplicial complexes and Vietoris-Rips
# ---------------------------------------------------------------------------


def from_simplicial(
    vertices: Sequence,
    simplices: Sequence,
    auto_close: bool = False,
) -> CellComplex:
    """Complex from a simplex set; k-simplices become k-cells.

    The simplex set must be downward closed and cover every vertex
    (``auto_close=True`` adds missing faces instead of failing).  Cells
    of each dimension are ordered lexicographically by sorted vertex
    tuple; the face omitting position i gets boundary sign (-1)^i.
    """
    vlabels = [str(v) for v in vertices]
    if len(set(vlabels)) != len(vlabels):
        raise DuplicateLabel("duplicate vertex label")
    vindex = {label: i for i, label in enumerate(vlabels)}
    simplex_set: set[tuple[int, ...]] = set()
    for simplex in simplices:
        ids = set()
        for v in simplex:
            label = str(v)
            if label not in vindex:
                raise UnknownVertex(f"simplex {tuple(simplex)} uses unknown vertex {label!r}")
            ids.add(vindex[label])
        if not ids:
            raise ValueError("empty simplex")
        simplex_set.add(tuple(sorted(ids)))
    if auto_close:
        closure = set()
        for simplex in simplex_set:
            for size in range(1, len(simplex) + 1):
                closure.update(itertools.combinations(simplex, size))
        simplex_set = closure
    else:
        for simplex in simplex_set:
            if len(simplex) == 1:
                continue
            for face in itertools.combinations(simplex, len(simplex) - 1):
                if face not in simplex_set:
                    raise NotDownwardClosed(
                        f"simplex {simplex} present without its face {face}"
                    )
    covered = {i for simplex in simplex_set for i in simplex}
    missing = sorted(set(range(len(vlabels))) - covered)
    if missing:
        raise UncoveredVertex(f"vertex {vlabels[missing[0]]!r} lies in no simplex")

    dim = max(len(s) for s in simplex_set) - 1
    by_dim: list[list[tuple[int, ...]]] = [
        sorted(s for s in simplex_set if len(s) == k + 1) for k in range(dim + 1)
    ]
    index_of = [
        {simplex: i for i, simplex in enumerate(layer)} for layer in by_dim
    ]
    cells = [[("-".join(vlabels[i] for i in s)) if k else vlabels[s[0]] for s in layer]
             for k, layer in enumerate(by_dim)]
    mats = []
    for k in range(1, dim + 1):
        entries = []
        for col, simplex in enumerate(by_dim[k]):
            for i in range(len(simplex)):
                face = simplex[:i] + simplex[i + 1 :]
                entries.append((index_of[k - 1][face], col, (-1) ** i))
        mats.append(BoundaryMatrix(len(by_dim[k - 1]), len(by_dim[k]), tuple(entries)))
    return from_boundary_matrices(cells, mats)


def rips_simplices(
    pc: PointCloud, eps: float, max_dim: int, cap: int = DEFAULT_SIMPLEX_CAP
) -> list[tuple[tuple[int, ...], float]]:
    """All Rips simplices up to max_dim with their birth diameters.

    A subset of points is a simplex when its pairwise distances all stay
    within eps; its diameter (0 for vertices) is the largest pairwise
    distance.  Output is sorted by (dimension, vertex tuple).
    """
    if eps < 0:
        raise ValueError("eps must be non-negative")
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    dist = pc.distances()
    n = len(pc)
    out: list[tuple[tuple[int, ...], float]] = [((i,), 0.0) for i in range(n)]
    level: list[tuple[int, ...]] = [(i,) for i in range(n)]
    neighbours = [
        sorted(j for j in range(n) if j != i and dist[i, j] <= eps) for i in range(n)
    ]
    for _ in range(max_dim):
        nxt: list[tuple[int, ...]] = []
        for simplex in level:
            last = simplex[-1]
            for j in neighbours[last]:
                if j <= last:
                    continue
                if all(dist[i, j] <= eps for i in simplex[:-1]):
                    bigger = simplex + (j,)
                    nxt.append(bigger)
                    diameter = max(dist[a, b] for a, b in itertools.combinations(bigger, 2))
                    out.append((bigger, diameter))
                    if len(out) > cap:
                        raise TooManySimplices(
                            f"more than {cap} simplices at eps={eps}; raise the cap"
                        )
        level = nxt
        if not level:
            break
    out.sort(key=lambda item: (len(item[0]), item[0]))
    return out


def vietoris_rips(
    pc: PointCloud,
    eps: float,
    max_dim: int,
    max_simplices: int = DEFAULT_SIMPLEX_CAP,
) -> CellComplex:
    """Vietoris-Rips complex of a point cloud at scale eps."""
    simplices = [s for s, _ in rips_simplices(pc, eps, max_dim, max_simplices)]
    return from_simplicial([str(i) for i in range(len(pc))], simplices)


# ---------------------------------------------------------------------------
# Products and cubical complexes
# ---------------------------------------------------------------------------


def _product_blocks(a: CellComplex, b: CellComplex, total: int) -> list[tuple[int, int]]:
    """(first-factor dim, block offset) pairs for one product dimension."""
    blocks = []
    offset = 0
    for k in range(max(0, total - b.dim), min(total, a.dim) + 1):
        blocks.append((k, offset))
        offset += a.n_cells(k) * b.n_cells(total - k)
    return blocks


def product(a: CellComplex, b: CellComplex) -> CellComplex:
    """Product complex: cells are pairs, dimensions add.

    Cells of dimension d are ordered by (first-factor dimension, index in
    a, index in b).  The boundary of a pair applies each factor's
    boundary in turn; the second-factor blocks carry the alternating
    sign (-1)^(k+1), k the first-factor dimension, which keeps
    consecutive boundary maps composing to zero.
    """
    dim = a.dim + b.dim
    cells = []
    for total in range(dim + 1):
        layer = []
        for k, _ in _product_blocks(a, b, total):
            kb = total - k
            layer.extend(
                f"({la},{lb})" for la in a.cells[k] for lb in b.cells[kb]
            )
        cells.append(layer)
    mats = []
    for total in range(1, dim + 1):
        row_offset = dict(_product_blocks(a, b, total - 1))
        entries = []
        col_base = 0
        for k, _ in _product_blocks(a, b, total):
            kb = total - k
            na, nb = a.n_cells(k), b.n_cells(kb)
            for i in range(na):
                cols_a = a.boundary(k).column(i) if k >= 1 else []
                for j in range(nb):
                    col = col_base + i * nb + j
                    for r, s in cols_a:
                        row = row_offset[k - 1] + r * nb + j
                        entries.append((row, col, s))
                    if kb >= 1:
                        sign = (-1) ** (k + 1)
                        nb_down = b.n_cells(kb - 1)
                        for r, s in b.boundary(kb).column(j):
                            row = row_offset[k] + i * nb_down + r
                            entries.append((row, col, sign * s))
            col_base += na * nb
        mats.append(BoundaryMatrix(len(cells[total - 1]), len(cells[total]), tuple(entries)))
    return from_boundary_matrices(cells, mats)


def path_complex(n: int) -> CellComplex:
    """Path graph P_n as a complex: n vertices, n-1 edges (i, i+1)."""
    if n < 1:
        raise ValueError("path needs at least one vertex")
    return from_tuples(range(n), [(i, i + 1) for i in range(n - 1)])


def cubical(sizes: Sequence[int]) -> CellComplex:
    """Cubical lattice complex: iterated product of path graphs."""
    if not sizes:
        raise ValueError("cubical needs at least one size")
    if any(n < 1 for n in sizes):
        raise ValueError("cubical sizes must be positive")
    return reduce(product, (path_complex(n) for n in sizes))


# ---------------------------------------------------------------------------
# Graph liftings
# ---------------------------------------------------------------------------


def _cross(o, p, q) -> float:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _segments_conflict(p1, p2, q1, q2, eps: float) -> bool:
    """True when two segments without shared endpoints touch at all."""
    d1 = _cross(q1, q2, p1)
    d2 = _cross(q1, q2, p2)
    d3 = _cross(p1, p2, q1)
    d4 = _cross(p1, p2, q2)
    if ((d1 > eps and d2 < -eps) or (d1 < -eps and d2 > eps)) and (
        (d3 > eps and d4 < -eps) or (d3 < -eps and d4 > eps)
    ):
        return True

    def on_segment(a, b, c) -> bool:
        if abs(_cross(a, b, c)) > eps:
            return False
        return (
            min(a[0], b[0]) - eps <= c[0] <= max(a[0], b[0]) + eps
            and min(a[1], b[1]) - eps <= c[1] <= max(a[1], b[1]) + eps
        )

    return (
        on_segment(q1, q2, p1)
        or on_segment(q1, q2, p2)
        or on_segment(p1, p2, q1)
        or on_segment(p1, p2, q2)
    )


@dataclass(frozen=True, eq=False)
class PlanarEmbedding:
    """Straight-line plane drawing: vertex coordinates plus an edge list.

    Edges may only meet at shared endpoints; violations raise EdgesCross
    at construction.
    """

    points: np.ndarray = field(repr=False)
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a nonempty (n, 2) array")
        if not np.all(np.isfinite(pts)):
            raise ValueError("coordinates must be finite")
        object.__setattr__(self, "points", pts)
        n = len(pts)
        labels = self.labels or tuple(str(i) for i in range(n))
        if len(labels) != n or len(set(labels)) != n:
            raise DuplicateLabel("need one unique label per vertex")
        object.__setattr__(self, "labels", tuple(labels))
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        scale = max(1.0, float(np.max(np.abs(pts))))
        eps = 1e-12 * scale * scale
        seen_pairs = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertex(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise EdgesCross(f"edge ({u}, {v}) is a self-loop")
            pair = frozenset((u, v))
            if pair in seen_pairs:
                raise EdgesCross(f"edge ({u}, {v}) drawn twice")
            seen_pairs.add(pair)
        for i in range(n):
            for j in range(i + 1, n):
                if np.allclose(pts[i], pts[j], atol=eps):
                    raise EdgesCross(f"vertices {i} and {j} share coordinates")
        for (u1, v1), (u2, v2) in itertools.combinations(edges, 2):
            if {u1, v1} & {u2, v2}:
                continue
            if _segments_conflict(pts[u1], pts[v1], pts[u2], pts[v2], eps):
                raise EdgesCross(f"edges ({u1}, {v1}) and ({u2}, {v2}) intersect")
        for w in range(n):
            for u, v in edges:
                if w in (u, v):
                    continue
                d = _cross(pts[u], pts[v], pts[w])
                if abs(d) <= eps and (
                    min(pts[u][0], pts[v][0]) - eps <= pts[w][0] <= max(pts[u][0], pts[v][0]) + eps
                    and min(pts[u][1], pts[v][1]) - eps <= pts[w][1] <= max(pts[u][1], pts[v][1]) + eps
                ):
                    raise EdgesCross(f"vertex {w} lies on edge ({u}, {v})")


def _check_connected(n: int, adjacency: dict[int, list[int]]) -> None:
    if n == 0:
        return
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adjacency.get(u, []):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != n:
        raise Disconnected("underlying graph is not connected")


def window_lifting(emb: PlanarEmbedding) -> CellComplex:
    """Attach every inner window of a plane drawing as a 2-cell.

    Faces are traced through the rotation system induced by the
    coordinates; the unique face of negative signed area (the outer one)
    is dropped and each remaining window becomes a counterclockwise
    2-cell.  Doubled bridge traversals cancel out of window boundaries.
    """
    pts = emb.points
    n = len(pts)
    adjacency: dict[int, list[int]] = {i: [] for i in range(n)}
    edge_index: dict[tuple[int, int], int] = {}
    for idx, (u, v) in enumerate(emb.edges):
        adjacency[u].append(v)
        adjacency[v].append(u)
        edge_index[(u, v)] = idx
    _check_connected(n, adjacency)
    order = {
        u: sorted(
            adjacency[u],
            key=lambda w: np.arctan2(pts[w][1] - pts[u][1], pts[w][0] - pts[u][0]),
        )
        for u in range(n)
    }

    remaining = {(u, v) for u, v in emb.edges} | {(v, u) for u, v in emb.edges}
    faces: list[list[tuple[int, int]]] = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        walk = [start]
        remaining.discard(start)
        while True:
            u, v = walk[-1]
            ring = order[v]
            w = ring[(ring.index(u) - 1) % len(ring)]
            nxt = (v, w)
            if nxt == start:
                break
            walk.append(nxt)
            remaining.discard(nxt)
        faces.append(walk)

    def signed_area(walk: list[tuple[int, int]]) -> float:
        return 0.5 * sum(
            pts[u][0] * pts[v][1] - pts[v][0] * pts[u][1] for u, v in walk
        )

    base = from_tuples(emb.labels, [(emb.labels[u], emb.labels[v]) for u, v in emb.edges])
    if len(faces) <= 1:
        return base
    areas = [signed_area(walk) for walk in faces]
    negatives = [i for i, area in enumerate(areas) if area < 0]
    if len(negatives) != 1:
        raise EdgesCross(
            f"face traversal found {len(negatives)} outer faces; drawing is not plane"
        )
    outer = negatives[0]

    b1 = base.boundary(1)
    windows: list[tuple[tuple[int, ...], list[tuple[int, int]]]] = []
    for fi, walk in enumerate(faces):
        if fi == outer:
            continue
        net: dict[int, int] = {}
        for u, v in walk:
            if (u, v) in edge_index:
                idx, sign = edge_index[(u, v)], 1
            else:
                idx, sign = edge_index[(v, u)], -1
            net[idx] = net.get(idx, 0) + sign
        entries = [(idx, sign) for idx, sign in sorted(net.items()) if sign]
        cycle, reason = oriented_cycle(b1, entries)
        if reason is not None:
            raise NotACycleColumn(f"window boundary is not a simple cycle: {reason}")
        windows.append((_rotate_min_first(cycle), entries))
    windows.sort(key=lambda item: item[0])

    face_labels = ["-".join(emb.labels[i] for i in cyc) for cyc, _ in windows]
    b2_entries = tuple(
        (idx, col, sign)
        for col, (_, entries) in enumerate(windows)
        for idx, sign in entries
    )
    b2 = BoundaryMatrix(b1.cols, len(windows), b2_entries)
    return from_boundary_matrices(
        [list(base.cells[0]), list(base.cells[1]), face_labels], [b1, b2]
    )


def _underlying_graph(cc: CellComplex) -> list[tuple[int, int]]:
    if cc.dim != 1:
        raise BadDimension("lifting expects a 1-dimensional complex")
    b1 = cc.boundary(1)
    return [_edge_endpoints(b1, j) for j in range(b1.cols)]


def _cycle_cells(
    cc: CellComplex, columns: list[list[tuple[int, int]]], canonical: bool
) -> CellComplex:
    """Attach 2-cells given as signed edge columns to a 1-complex."""
    if not columns:
        return cc
    b1 = cc.boundary(1)
    labels: list[str] = []
    entries: list[tuple[int, int, int]] = []
    for col, signed_edges in enumerate(columns):
        cycle, reason = oriented_cycle(b1, signed_edges)
        if reason is not None:
            raise NotACycleColumn(f"lifted cycle is invalid: {reason}")
        if canonical and len(cycle) >= 3 and cycle[1] > cycle[-1]:
            signed_edges = [(j, -s) for j, s in signed_edges]
            cycle = [cycle[0]] + cycle[:0:-1]
        label = "-".join(cc.cells[0][i] for i in _rotate_min_first(cycle))
        while label in labels:
            label += "+"
        labels.append(label)
        entries.extend((j, col, s) for j, s in signed_edges)
    b2 = BoundaryMatrix(b1.cols, len(columns), tuple(entries))
    return from_boundary_matrices(
        [list(cc.cells[0]), list(cc.cells[1]), labels], [b1, b2]
    )


def spanning_tree_lifting(cc: CellComplex, root: str | int | None = None) -> CellComplex:
    """Fill the fundamental cycles of a BFS spanning tree with 2-cells.

    Each non-tree edge closes exactly one cycle through the tree,
    oriented along the non-tree edge and then canonicalised; the number
    of 2-cells is |edges| - |vertices| + 1.
    """
    pairs = _underlying_graph(cc)
    n = cc.n_cells(0)
    if root is None:
        root_index = 0
    elif isinstance(root, int):
        root_index = root
    else:
        root_index = cc.index_of(0, str(root))
    adjacency: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for j, (t, h) in enumerate(pairs):
        adjacency[t].append((j, h))
        adjacency[h].append((j, t))
    parent: dict[int, tuple[int, int]] = {}
    seen = {root_index}
    queue = [root_index]
    tree_edges: set[int] = set()
    while queue:
        u = queue.pop(0)
        for j, v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                parent[v] = (j, u)
                tree_edges.add(j)
                queue.append(v)
    if len(seen) != n:
        raise Disconnected("spanning tree lifting needs a connected graph")

    def root_path(v: int) -> list[int]:
        path = [v]
        while path[-1] != root_index:
            path.append(parent[path[-1]][1])
        return path

    def tree_edge_between(a: int, b: int) -> int:
        if a in parent and parent[a][1] == b:
            return parent[a][0]
        return parent[b][0]

    columns: list[list[tuple[int, int]]] = []
    for j, (tail, head) in enumerate(pairs):
        if j in tree_edges:
            continue
        up, down = root_path(head), root_path(tail)
        up_set = set(up)
        common = next(v for v in down if v in up_set)
        # Tree path head -> lca -> tail; the lca appears once.
        walk = up[: up.index(common) + 1] + down[: down.index(common)][::-1]
        signed: dict[int, int] = {j: 1}
        for a, b in zip(walk, walk[1:]):
            edge = tree_edge_between(a, b)
            signed[edge] = 1 if pairs[edge] == (a, b) else -1
        columns.append(sorted(signed.items()))
    return _cycle_cells(cc, columns, canonical=True)


def chordless_cycle_lifting(
    cc: CellComplex, max_cells: int = DEFAULT_CYCLE_CAP
) -> CellComplex:
    """Attach every chordless (induced) cycle of a simple graph as a 2-cell.

    Output cells are sorted by canonical vertex tuple.  The number of
    chordless cycles can grow exponentially, so enumeration stops with
    an error once max_cells is exceeded.
    """
    pairs = _underlying_graph(cc)
    if len({frozenset(p) for p in pairs}) != len(pairs):
        raise NotSimple("chordless cycle lifting needs a simple underlying graph")
    graph = nx.Graph()
    graph.add_nodes_from(range(cc.n_cells(0)))
    graph.add_edges_from(pairs)
    edge_index = {frozenset(p): j for j, p in enumerate(pairs)}
    cycles: list[tuple[int, ...]] = []
    for cycle in nx.chordless_cycles(graph):
        if len(cycle) < 3:
            continue
        rotated = _rotate_min_first(list(cycle))
        if rotated[1] > rotated[-1]:
            rotated = (rotated[0],) + tuple(reversed(rotated[1:]))
        cycles.append(rotated)
        if len(cycles) > max_cells:
            raise CapExceeded(max_cells)
    cycles.sort()
    columns = []
    for cycle in cycles:
        signed = []
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            j = edge_index[frozenset((a, b))]
            signed.append((j, 1 if pairs[j] == (a, b) else -1))
        columns.append(sorted(signed))
    return _cycle_cells(cc, columns, canonical=False)
