"""Command-line entry point.

One binary with subcommands, JSON/CSV output on stdout, and a stable
exit-code contract: 0 on success, 1 on validation or data errors, 2 on
usage errors.  Numeric output is printed with 12 significant digits and
is byte-identical across runs for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import builders, core, homology, hodge, io, persist, validate
from .core import ChainVector
from .errors import CellComplexError


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _load_points(path: str) -> builders.PointCloud:
    return builders.PointCloud(np.loadtxt(path, delimiter=",", ndmin=2))


def _load_chain(path: str) -> ChainVector:
    with open(path) as fh:
        return io.chain_from_json(json.load(fh))


def _load_weights(path: str | None) -> hodge.WeightSet | None:
    if path is None:
        return None
    with open(path) as fh:
        return hodge.WeightSet(tuple(io.weights_from_json(json.load(fh))))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccx", description="Cell complex toolkit: build, validate, analyse."
    )
    parser.add_argument("--output", choices=("json", "csv"), default=None,
                        help="override the command's default output format")
    parser.add_argument("--tolerance", type=_positive_float, default=1e-8,
                        help="numeric tolerance for reports (default 1e-8)")
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized helpers")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check regularity conditions")
    p.add_argument("file")
    p.add_argument("--nd", action="store_true", help="run the per-cell n-d conditions")

    p = sub.add_parser("betti", help="Betti numbers")
    p.add_argument("file")
    p.add_argument("--integer", action="store_true", help="exact integer homology")

    p = sub.add_parser("decompose", help="gradient/curl/harmonic split of a chain")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--weights")

    p = sub.add_parser("spectrum", help="Hodge Laplacian eigenvalues with tags")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--weights")

    p = sub.add_parser("filter", help="apply a spectral filter to a chain")
    p.add_argument("file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--signal", required=True)
    p.add_argument("--filter", required=True, dest="descriptor",
                   metavar="DESC", help="identity | lowpass | heat:t=T | poly:c0,c1,...")
    p.add_argument("--weights")

    p = sub.add_parser("build", help="build a complex")
    build_sub = p.add_subparsers(dest="builder", required=True)
    b = build_sub.add_parser("vr", help="Vietoris-Rips complex of a point cloud")
    b.add_argument("points", help="csv file, one comma-separated point per row")
    b.add_argument("--eps", type=float, required=True)
    b.add_argument("--maxdim", type=int, required=True)
    b = build_sub.add_parser("cubical", help="cubical lattice complex")
    b.add_argument("sizes", type=int, nargs="+")

    p = sub.add_parser("product", help="product of two complexes")
    p.add_argument("a")
    p.add_argument("b")

    p = sub.add_parser("lift", help="attach 2-cells to a graph")
    lift_sub = p.add_subparsers(dest="lifting", required=True)
    l = lift_sub.add_parser("window", help="inner windows of a planar embedding")
    l.add_argument("graph")
    l.add_argument("--coords", required=True,
                   help="csv of x,y rows aligned with the vertex order")
    l = lift_sub.add_parser("tree", help="fundamental cycles of a BFS spanning tree")
    l.add_argument("graph")
    l.add_argument("--root", default=None)
    l = lift_sub.add_parser("chordless", help="all chordless cycles")
    l.add_argument("graph")
    l.add_argument("--max-cells", type=int, default=builders.DEFAULT_CYCLE_CAP)

    p = sub.add_parser("persist", help="persistence diagram of a Rips filtration")
    p.add_argument("points")
    p.add_argument("--max-eps", type=float, required=True)
    p.add_argument("--max-dim", type=int, required=True)
    p.add_argument("--keep-zero-bars", action="store_true")
    return parser


def _emit_complex(cc) -> int:
    sys.stdout.write(io.dumps(io.complex_to_json(cc)))
    return 0


def _run_validate(args) -> int:
    cc = io.load_complex(args.file)
    report = validate.validate_nd(cc) if args.nd else _basic_report(cc)
    sys.stdout.write(io.dumps(report.to_json()))
    return 0 if report.valid else 1


def _basic_report(cc) -> validate.ValidationReport:
    if cc.dim == 0:
        return validate.ValidationReport(True, ())
    if cc.dim == 1:
        return validate.validate_dim1(cc)
    if cc.dim == 2:
        dim1 = validate.validate_dim1(cc)
        dim2 = validate.validate_dim2(cc)
        return validate.ValidationReport.from_failures(
            list(dim1.failures) + list(dim2.failures)
        )
    return validate.validate_nd(cc)


def _run_betti(args, output: str | None) -> int:
    cc = io.load_complex(args.file)
    summary = homology.betti_numbers(cc, "integer" if args.integer else "real")
    if output == "csv":
        sys.stdout.write(",".join(str(b) for b in summary.betti) + "\n")
    else:
        sys.stdout.write(io.dumps(summary.to_json()))
    return 0


def _run_spectrum(args, output: str | None) -> int:
    cc = io.load_complex(args.file)
    basis = hodge.spectral_basis(cc, args.dim, _load_weights(args.weights))
    if output == "json":
        doc = {
            "eigenvalues": [io.round_sig(v) for v in basis.eigenvalues],
            "tags": list(basis.tags),
        }
        sys.stdout.write(io.dumps(doc))
    else:
        for lam, tag in zip(basis.eigenvalues, basis.tags):
            sys.stdout.write(f"{_fmt(lam)},{tag}\n")
    return 0


def _run_persist(args, output: str | None) -> int:
    cloud = _load_points(args.points)
    filtration = persist.vr_filtration(cloud, args.max_eps, args.max_dim)
    diagram = persist.persistence(filtration, keep_zero_bars=args.keep_zero_bars)
    if output == "json":
        doc = {
            "bars": [
                {
                    "dim": bar.dim,
                    "birth": io.round_sig(bar.birth),
                    "death": "inf" if bar.infinite else io.round_sig(bar.death),
                }
                for bar in diagram.bars
            ]
        }
        sys.stdout.write(io.dumps(doc))
    else:
        for bar in diagram.bars:
            death = "inf" if bar.infinite else _fmt(bar.death)
            sys.stdout.write(f"{bar.dim},{_fmt(bar.birth)},{death}\n")
    return 0


def _dispatch(args) -> int:
    if args.command == "validate":
        return _run_validate(args)
    if args.command == "betti":
        return _run_betti(args, args.output)
    if args.command == "decompose":
        cc = io.load_complex(args.file)
        split = hodge.hodge_decompose(
            cc, args.dim, _load_chain(args.signal), _load_weights(args.weights)
        )
        doc = {
            "gradient": io.chain_to_json(split.gradient),
            "curl": io.chain_to_json(split.curl),
            "harmonic": io.chain_to_json(split.harmonic),
        }
        sys.stdout.write(io.dumps(doc))
        return 0
    if args.command == "spectrum":
        return _run_spectrum(args, args.output)
    if args.command == "filter":
        cc = io.load_complex(args.file)
        filtered = hodge.spectral_filter(
            cc, args.dim, _load_chain(args.signal), args.descriptor,
            _load_weights(args.weights),
        )
        sys.stdout.write(io.dumps(io.chain_to_json(filtered)))
        return 0
    if args.command == "build":
        if args.builder == "vr":
            cloud = _load_points(args.points)
            return _emit_complex(builders.vietoris_rips(cloud, args.eps, args.maxdim))
        return _emit_complex(builders.cubical(args.sizes))
    if args.command == "product":
        return _emit_complex(
            builders.product(io.load_complex(args.a), io.load_complex(args.b))
        )
    if args.command == "lift":
        cc = io.load_complex(args.graph)
        if args.lifting == "window":
            coords = np.loadtxt(args.coords, delimiter=",", ndmin=2)
            pairs = tuple(
                core._edge_endpoints(cc.boundary(1), j) for j in range(cc.n_cells(1))
            )
            emb = builders.PlanarEmbedding(coords, pairs, tuple(cc.cells[0]))
            return _emit_complex(builders.window_lifting(emb))
        if args.lifting == "tree":
            return _emit_complex(builders.spanning_tree_lifting(cc, args.root))
        return _emit_complex(builders.chordless_cycle_lifting(cc, args.max_cells))
    if args.command == "persist":
        return _run_persist(args, args.output)
    raise AssertionError(f"unhandled command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except CellComplexError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
