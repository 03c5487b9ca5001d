"""Command-line front end: ``rtlnp {extract,feature-image,query,benchmark}``.

Errors end the process with a nonzero status and one stderr line of the
form ``rtlnp: error[<category>]: <message>``.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .descriptor import feature_image
from .geometry import RtlnpParams
from .imaging import ImageError, load_grayscale, save_pgm
from .lbp import lbp_feature_image
from .metrics import RECALL_DENOMINATORS, EvaluationRun, evaluate
from .retrieval import (DatasetError, Descriptor, GalleryIndex, IndexFormatError,
                        build_index, rank_feature)

EXIT_CODES = {"usage": 2, "dataset": 3, "image": 4, "params": 5, "index": 6, "io": 7}


class CliError(Exception):
    def __init__(self, category, message):
        super().__init__(message)
        self.category = category


def _descriptor(args) -> Descriptor:
    if args.descriptor == "lbp":
        return Descriptor("lbp")
    try:
        return Descriptor("rtlnp", RtlnpParams(args.rin, args.rout, args.theta))
    except (TypeError, ValueError) as exc:
        raise CliError("params", str(exc)) from None


def _build(args, descriptor):
    t0 = time.perf_counter()
    index = build_index(args.dataset, descriptor, workers=args.workers)
    elapsed = time.perf_counter() - t0
    return index, elapsed


def cmd_extract(args) -> int:
    index, elapsed = _build(args, _descriptor(args))
    out = Path(args.out)
    index.save(out)
    print(f"indexed {len(index)} images into {out} in {elapsed:.2f} s")
    return 0


def cmd_feature_image(args) -> int:
    desc = _descriptor(args)
    image = load_grayscale(args.image)
    try:
        if desc.name == "lbp":
            feat = lbp_feature_image(image)
        else:
            feat = feature_image(image, desc.params, workers=args.workers)
    except ValueError as exc:
        raise CliError("image", f"{args.image}: {exc}") from None
    save_pgm(feat.to_gray(), args.out)
    print(f"wrote {feat.width}x{feat.height} feature image to {args.out}")
    return 0


def cmd_query(args) -> int:
    index = GalleryIndex.load(args.index)
    image = load_grayscale(args.image)
    try:
        hist = index.descriptor.histogram(image, workers=args.workers)
    except ValueError as exc:
        raise CliError("image", f"{args.image}: {exc}") from None
    ranked = rank_feature(hist.normalized(), index)
    top = min(args.top, len(ranked))
    print("rank\tdistance\tclass\tpath")
    for pos in range(top):
        e = index.entries[ranked.ids[pos]]
        print(f"{pos + 1}\t{ranked.distances[pos]:.6f}\t{e.class_label}\t{e.path}")
    return 0


def cmd_benchmark(args) -> int:
    if args.index:
        index = GalleryIndex.load(args.index)
        built = False
    elif args.dataset:
        index, elapsed = _build(args, _descriptor(args))
        built = True
    else:
        raise CliError("usage", "benchmark needs a dataset directory or --index")
    if len(index) < 2:
        raise CliError("dataset", "benchmark needs at least two images")

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if built:
        index.save(out / "index.json")
        print(f"indexed {len(index)} images in {elapsed:.2f} s")

    gallery = len(index) - 1
    lambda_max = min(args.lambda_max, gallery)
    cmc_max = min(args.cmc_max_rank, gallery)
    run = EvaluationRun.from_index(index, workers=args.workers)
    report = evaluate(run, lambda_max, cmc_max, args.recall_denominator,
                      descriptor_name=index.descriptor.name,
                      params=index.descriptor.params_dict())
    if lambda_max < args.lambda_max:
        report.notices.append(f"lambda-max capped at gallery size {gallery}")
    if cmc_max < args.cmc_max_rank:
        report.notices.append(f"cmc-max-rank capped at gallery size {gallery}")
    (out / "report.json").write_text(report.to_json(), encoding="utf-8")
    (out / "report.csv").write_text(report.to_csv(), encoding="utf-8")

    for notice in report.notices:
        print(f"notice: {notice}", file=sys.stderr)
    anmrr = "skipped" if report.anmrr is None else f"{report.anmrr:.4f}"
    print(f"{index.descriptor.name}: ARP={report.arp:.4f} ARR={report.arr:.4f} "
          f"F={report.f_score:.4f} ANMRR={anmrr} "
          f"recognition={report.recognition_rate:.2f}%")
    print(f"reports written to {out}")
    return 0


def _add_descriptor_flags(p):
    p.add_argument("--descriptor", choices=("rtlnp", "lbp"), default="rtlnp")
    p.add_argument("--rin", type=int, default=3, help="inner radius (default 3)")
    p.add_argument("--rout", type=int, default=6, help="outer radius (default 6)")
    p.add_argument("--theta", type=int, default=36,
                   help="sector width in degrees (default 36)")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rtlnp", description="RTLNP texture descriptor and face retrieval benchmark")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=_positive, default=1,
                        help="threads for extraction and ranking (results do not depend on it)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", parents=[common], help="build a gallery index from root/<class>/<image>")
    p.add_argument("dataset")
    p.add_argument("--out", required=True, help="index file to write")
    _add_descriptor_flags(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("feature-image", parents=[common], help="export a code image as PGM")
    p.add_argument("image")
    p.add_argument("--out", required=True)
    _add_descriptor_flags(p)
    p.set_defaults(func=cmd_feature_image)

    p = sub.add_parser("query", parents=[common], help="rank an index against one image")
    p.add_argument("image")
    p.add_argument("--index", required=True)
    p.add_argument("--top", type=_positive, default=10)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("benchmark", parents=[common], help="leave-one-out evaluation with reports")
    p.add_argument("dataset", nargs="?")
    p.add_argument("--index", help="use an existing index instead of a dataset")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--lambda-max", type=_positive, default=10)
    p.add_argument("--cmc-max-rank", type=_positive, default=10)
    p.add_argument("--recall-denominator", choices=RECALL_DENOMINATORS, default="literal")
    _add_descriptor_flags(p)
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        category, message = exc.category, str(exc)
    except DatasetError as exc:
        category, message = "dataset", str(exc)
    except ImageError as exc:
        category, message = "image", str(exc)
    except IndexFormatError as exc:
        category, message = "index", str(exc)
    except OSError as exc:
        category, message = "io", str(exc)
    print(f"rtlnp: error[{category}]: {' '.join(message.split())}", file=sys.stderr)
    return EXIT_CODES[category]


if __name__ == "__main__":
    sys.exit(main())
