"""Command-line entry point: embed, extract, psnr, magic and bench."""

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import METHODS, BenchConfig, render_reference_table, render_table, run_bench
from .errors import StegoError
from .image_io import load_pgm, save_pgm
from .magic_square import build_magic
from .metrics import psnr
from .stego import embed, extract, make_plan, parse_ec


def _ec(text):
    try:
        return parse_ec(text)
    except StegoError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _hex_key(text):
    try:
        return bytes.fromhex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid hex key {text!r}") from exc


def _csv_list(text):
    return [item.strip() for item in text.split(",") if item.strip()]


def _add_key_args(parser):
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--key", help="secret key as text (UTF-8 bytes)")
    group.add_argument("--key-hex", type=_hex_key, help="secret key as hex bytes, e.g. 55aa")
    parser.add_argument("--ec", type=_ec, default=parse_ec(1), help="embedding capacity in bits per pixel, 0 < ec <= 2 (default 1)")
    parser.add_argument("--raw", action="store_true", help="no 32-bit length header")


def _key(args) -> bytes:
    return args.key.encode("utf-8") if args.key is not None else args.key_hex


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="magiclsb", description="Magic-square LSB steganography for grayscale PGM images.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("embed", help="hide a message in a cover image")
    p.add_argument("--cover", required=True, type=Path)
    msg = p.add_mutually_exclusive_group(required=True)
    msg.add_argument("--message", help="message text (UTF-8)")
    msg.add_argument("--message-file", type=Path)
    _add_key_args(p)
    p.add_argument("--out", required=True, type=Path, help="stego PGM to write")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("extract", help="recover a message from a stego image")
    p.add_argument("--stego", required=True, type=Path)
    _add_key_args(p)
    p.add_argument("--length-bits", type=int, help="payload length in bits (required with --raw)")
    dest = p.add_mutually_exclusive_group(required=True)
    dest.add_argument("--out", type=Path)
    dest.add_argument("--stdout", action="store_true")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("psnr", help="MSE and PSNR between two images")
    p.add_argument("--a", required=True, type=Path)
    p.add_argument("--b", required=True, type=Path)
    p.set_defaults(func=cmd_psnr)

    p = sub.add_parser("magic", help="print the magic square of a given order")
    p.add_argument("--order", required=True, type=int)
    p.set_defaults(func=cmd_magic)

    p = sub.add_parser("bench", help="PSNR versus embedding capacity")
    p.add_argument("--covers", required=True, type=_csv_list,
                   help="comma-separated PGM files, directories or synthetic:<kind>:<n>[:<param>] specs")
    p.add_argument("--ec", type=_csv_list, default=["0.5", "1", "1.5"])
    p.add_argument("--seed", type=lambda s: int(s, 0), default=42)
    p.add_argument("--methods", type=_csv_list, default=list(METHODS))
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    p.add_argument("--paper-reference-columns", action="store_true",
                   help="append the published values as a separate, non-computed table")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def cmd_embed(args) -> int:
    cover = load_pgm(args.cover)
    message = args.message.encode("utf-8") if args.message is not None else args.message_file.read_bytes()
    h, w = cover.shape
    plan = make_plan(w, h, args.ec, "raw" if args.raw else "headered", 8 * len(message))
    result = embed(cover, message, _key(args), plan)
    save_pgm(args.out, result.stego)
    print(f"slots_used={result.slots_used} changed_pixels={result.changed_pixels} {psnr(cover, result.stego)}")
    return 0


def cmd_extract(args) -> int:
    if args.raw and args.length_bits is None:
        args.parser.error("--raw requires --length-bits")
    if args.length_bits is not None and args.length_bits < 0:
        args.parser.error("--length-bits must be non-negative")
    stego = load_pgm(args.stego)
    h, w = stego.shape
    payload_bits = args.length_bits if args.raw else 0
    plan = make_plan(w, h, args.ec, "raw" if args.raw else "headered", payload_bits)
    message = extract(stego, _key(args), plan)
    if args.stdout:
        sys.stdout.buffer.write(message)
        sys.stdout.flush()
    else:
        args.out.write_bytes(message)
    return 0


def cmd_psnr(args) -> int:
    print(psnr(load_pgm(args.a), load_pgm(args.b)))
    return 0


def cmd_magic(args) -> int:
    for row in build_magic(args.order).rows():
        print(" ".join(map(str, row)))
    return 0


def cmd_bench(args) -> int:
    config = BenchConfig(
        covers=args.covers,
        ecs=args.ec,
        seed=args.seed,
        methods=args.methods,
        format=args.format,
        paper_reference=args.paper_reference_columns,
    )
    text = render_table(run_bench(config, jobs=args.jobs), config.format)
    if config.paper_reference:
        reference = render_reference_table(config.ecs, config.format)
        if reference:
            text += "\n" + reference
    sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.parser = parser
    try:
        return args.func(args)
    except (StegoError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
