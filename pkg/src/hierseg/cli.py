"""Command-line front end.

Grammar::

    hierseg <subcommand> [--alpha A] [--omega W] [--n N]
            [--min-area K] [--filter-range W] [--zones] [--max] [--log]
            -i INPUT -o OUTPUT

Exit codes: 0 success, 2 I/O failure, 64 usage error.  Outputs are
deterministic: identical inputs and flags give byte-identical files.
Label and map rasters are written as 16-bit PGM unless the output path
ends in .png; label commands also write a ``<output>.json`` sidecar.
``HIERSEG_THREADS`` caps internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .alphatree import (
    area_filter,
    build_alpha_tree,
    constrained_cc,
    export_dendrogram,
    omega_cc,
)
from .degree import alpha_n_partition
from .graph import build_pixel_graph
from .partition import Partition, alpha_cc_partition, flat_zones
from .raster import RasterFormatError, read_image, write_raster
from .saliency import range_filter_saliency, render_khalimsky, saliency_from_tree
from .separation import (
    max_separation_flatzones,
    max_separation_pixels,
    min_separation_flatzones,
    min_separation_pixels,
    transition_mask,
)

EXIT_OK = 0
EXIT_IO = 2
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _build_parser() -> _Parser:
    p = _Parser(prog="hierseg", description="Hierarchical image segmentation tools")
    sub = p.add_subparsers(dest="command", required=True)

    def io_args(sp):
        sp.add_argument("-i", "--input", required=True, help="input raster (PGM or PNG)")
        sp.add_argument("-o", "--output", required=True, help="output file")

    sp = sub.add_parser("flatzones", help="label maximal iso-intensity zones")
    io_args(sp)

    sp = sub.add_parser("alphacc", help="label quasi-flat zones at a step threshold")
    sp.add_argument("--alpha", type=_nonneg, required=True)
    io_args(sp)

    sp = sub.add_parser("constrained", help="label components under step and range constraints")
    sp.add_argument("--alpha", type=_nonneg, required=True)
    sp.add_argument("--omega", type=_nonneg, required=True)
    io_args(sp)

    sp = sub.add_parser("omegacc", help="label components under the range constraint only")
    sp.add_argument("--omega", type=_nonneg, required=True)
    io_args(sp)

    sp = sub.add_parser("alphan", help="label degree-constrained components")
    sp.add_argument("--alpha", type=_nonneg, required=True)
    sp.add_argument("--n", type=_positive, required=True)
    io_args(sp)

    sp = sub.add_parser("tree", help="write the hierarchy as a JSON dendrogram")
    io_args(sp)

    sp = sub.add_parser("saliency", help="render the hierarchy contours as a doubled raster")
    sp.add_argument("--filter-range", type=_nonneg, default=None, metavar="W",
                    help="flood the contours with the component intensity range")
    sp.add_argument("--min-area", type=_positive, default=None, metavar="K",
                    help="filter out hierarchy nodes smaller than K pixels")
    sp.add_argument("--log", action="store_true", help="logarithmic tone mapping (display only)")
    io_args(sp)

    sp = sub.add_parser("separation", help="write a separation-value map")
    sp.add_argument("--zones", action="store_true", help="per flat zone instead of per pixel")
    sp.add_argument("--max", action="store_true", help="largest instead of smallest separation")
    io_args(sp)

    sp = sub.add_parser("transition", help="write the binary transition-pixel mask")
    io_args(sp)

    return p


def _apply_thread_cap() -> None:
    raw = os.environ.get("HIERSEG_THREADS")
    if not raw:
        return
    try:
        cap = max(1, int(raw))
    except ValueError:
        return
    try:
        import numba

        numba.set_num_threads(min(cap, numba.config.NUMBA_NUM_THREADS))
    except Exception:
        pass


def _write_labels(args, part: Partition, width: int, height: int, params: dict) -> None:
    labels = part.labels
    encoding = "canonical"
    if labels.size and labels.max() > 65535:
        # canonical ids no longer fit 16 bits: fall back to their rank order
        _, labels = np.unique(labels, return_inverse=True)
        encoding = "rank"
    write_raster(args.output, width, height, labels, maxval=65535)
    sidecar = {
        "component_count": part.component_count,
        "parameters": dict(params, label_encoding=encoding),
    }
    with open(args.output + ".json", "w", encoding="utf-8") as fh:
        json.dump(sidecar, fh, sort_keys=True, indent=2)
        fh.write("\n")


def _tone_map_log(values: np.ndarray) -> np.ndarray:
    top = int(values.max()) if values.size else 0
    if top == 0:
        return values
    scaled = np.round(65535.0 * np.log1p(values.astype(np.float64)) / math.log1p(top))
    return scaled.astype(np.int64)


def _run(args) -> int:
    image = read_image(args.input)

    if args.command == "flatzones":
        part = flat_zones(image)
        _write_labels(args, part, image.width, image.height, {})
    elif args.command == "alphacc":
        part = alpha_cc_partition(build_pixel_graph(image), args.alpha)
        _write_labels(args, part, image.width, image.height, {"alpha": args.alpha})
    elif args.command == "constrained":
        tree = build_alpha_tree(build_pixel_graph(image))
        part = constrained_cc(tree, args.alpha, args.omega)
        _write_labels(args, part, image.width, image.height, {"alpha": args.alpha, "omega": args.omega})
    elif args.command == "omegacc":
        tree = build_alpha_tree(build_pixel_graph(image))
        part = omega_cc(tree, args.omega)
        _write_labels(args, part, image.width, image.height, {"omega": args.omega})
    elif args.command == "alphan":
        part = alpha_n_partition(image, args.alpha, args.n)
        _write_labels(args, part, image.width, image.height, {"alpha": args.alpha, "n": args.n})
    elif args.command == "tree":
        tree = build_alpha_tree(build_pixel_graph(image))
        doc = export_dendrogram(tree)
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=2)
            fh.write("\n")
    elif args.command == "saliency":
        graph = build_pixel_graph(image)
        tree = build_alpha_tree(graph)
        if args.min_area is not None:
            tree = area_filter(tree, args.min_area)
        smap = saliency_from_tree(tree, graph)
        if args.filter_range is not None:
            smap = range_filter_saliency(smap, image.values, args.filter_range)
        kh = render_khalimsky(smap, image.width, image.height)
        vals = _tone_map_log(kh.values) if args.log else kh.values
        if vals.size and vals.max() > 65535:
            raise RasterFormatError("saliency exceeds the 16-bit output range")
        write_raster(args.output, kh.width, kh.height, vals, maxval=65535)
    elif args.command == "separation":
        if args.zones:
            smap = max_separation_flatzones(image) if args.max else min_separation_flatzones(image)
        else:
            smap = max_separation_pixels(image) if args.max else min_separation_pixels(image)
        write_raster(args.output, smap.width, smap.height, smap.values, maxval=65535)
    elif args.command == "transition":
        smap = transition_mask(image)
        write_raster(args.output, smap.width, smap.height, smap.values, maxval=65535)
    else:  # unreachable behind argparse
        raise _UsageError(f"unknown command {args.command!r}")
    return EXIT_OK


def main(argv=None) -> int:
    _apply_thread_cap()
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"hierseg: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _run(args)
    except (OSError, RasterFormatError) as exc:
        print(f"hierseg: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
