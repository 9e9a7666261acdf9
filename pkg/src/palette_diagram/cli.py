"""Command-line entry point: data file in, palette diagram SVG out."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

from . import data, embedding, geodesic, render
from .errors import PaletteError


@dataclass(frozen=True)
class RunConfig:
    input_path: str
    output_path: str
    mode: str = "circular"
    k: int = geodesic.DEFAULT_K
    eta: float = embedding.SgdParams.eta
    epochs: int = embedding.SgdParams.epochs
    seed: int = embedding.SgdParams.seed
    restarts: int = embedding.SgdParams.restarts
    has_header: bool = False
    normalize_rows: bool = False
    rescale_max: Optional[float] = geodesic.DEFAULT_RESCALE_MAX


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palette-diagram",
        description="Order a collection of categorical datasets and draw it as a palette diagram.",
    )
    parser.add_argument("--input", required=True, help="CSV or .json data file")
    parser.add_argument("--output", required=True, help="SVG file to write")
    parser.add_argument("--mode", choices=("circular", "linear"), default="circular")
    parser.add_argument("--n-neighbors", type=_positive_int, default=geodesic.DEFAULT_K,
                        help="k for the k-NN graph (clamped to N-1)")
    parser.add_argument("--eta", type=_positive_float, default=embedding.SgdParams.eta,
                        help="learning rate of the angular optimizer")
    parser.add_argument("--epochs", type=_positive_int, default=embedding.SgdParams.epochs)
    parser.add_argument("--seed", type=int, default=embedding.SgdParams.seed)
    parser.add_argument("--restarts", type=_positive_int, default=embedding.SgdParams.restarts)
    parser.add_argument("--header", action="store_true", help="first CSV row holds category names")
    parser.add_argument("--normalize-rows", action="store_true", help="scale every row to sum 1")
    parser.add_argument("--no-rescale", action="store_true",
                        help="keep raw geodesic distances instead of scaling them to max 2")
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    """Parse flags; on bad usage argparse prints help and exits with status 2."""
    ns = build_parser().parse_args(argv)
    return RunConfig(
        input_path=ns.input,
        output_path=ns.output,
        mode=ns.mode,
        k=ns.n_neighbors,
        eta=ns.eta,
        epochs=ns.epochs,
        seed=ns.seed,
        restarts=ns.restarts,
        has_header=ns.header,
        normalize_rows=ns.normalize_rows,
        rescale_max=None if ns.no_rescale else geodesic.DEFAULT_RESCALE_MAX,
    )


def compute(m: data.DataMatrix, c: RunConfig):
    """Numeric part of the pipeline; returns the (possibly normalized) data, the ordering and the stdout report."""
    if c.normalize_rows:
        m = data.normalize_rows(m)
    d = geodesic.pairwise_distances(m)
    if m.n >= 2:
        g = geodesic.build_knn_graph(d, min(c.k, m.n - 1))
        g = geodesic.ensure_connected(g, d)
        d = geodesic.all_pairs_geodesic(g)
    if c.rescale_max is not None:
        if d.max() > 0:
            d = geodesic.rescale_distances(d, c.rescale_max)
        else:
            warnings.warn("all datasets coincide; distances left unscaled", RuntimeWarning)

    if c.mode == "linear":
        result = embedding.isomap_ordering(d)
        report = {"mode": "linear", "order": result.permutation.tolist()}
    else:
        params = embedding.SgdParams(eta=c.eta, epochs=c.epochs, seed=c.seed, restarts=c.restarts)
        result = embedding.optimize_angles(d, params)
        report = {
            "mode": "circular",
            "order": embedding.circular_order(result).tolist(),
            "final_stress": result.final_stress,
        }
    return m, result, report


def run_pipeline(c: RunConfig) -> int:
    try:
        m = data.load(c.input_path, has_header=c.has_header)
        m, result, report = compute(m, c)
        if c.mode == "linear":
            doc = render.render_linear(m, result)
        else:
            doc = render.render_circular(m, result)
        doc.write(c.output_path)
    except FileNotFoundError as exc:
        print(f"FileNotFoundError: {exc.filename}: no such file", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc.filename or c.output_path}: {exc.strerror}", file=sys.stderr)
        return 1
    except PaletteError as exc:
        print(f"{type(exc).__name__}: {c.input_path}: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(report))
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = _show_warning
        return run_pipeline(config)


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
