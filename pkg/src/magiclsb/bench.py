"""PSNR-versus-capacity benchmark for sequential LSB and M-LSB.

Every (cover, ec) cell draws a fresh uniform payload from SplitMix64 with

    cell_seed = seed ^ (cover_index * 0x100000001) ^ ec_index   (mod 2**64)

and both methods embed that same payload raw (no PBSA, no header). For a
uniform payload the expected MSE is ``0.5*f0 + 2*f1`` where ``f0``/``f1``
are the fractions of pixels whose bit-plane 0/1 is substituted, which
gives the analytic PSNR attached to each row.
"""

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import EmptyInput, NonSquareImage
from .image_io import SYNTH_KINDS, load_pgm, synth_image
from .metrics import C_MAX, mse as mean_squared_error
from .prng import MASK64, prng_next, splitmix64_bits
from .stego import embed_stream, lsb_sequential_embed, make_plan, parse_ec

__all__ = [
    "METHODS",
    "BenchConfig",
    "BenchRow",
    "prng_next",
    "cell_seed",
    "analytic_psnr",
    "resolve_covers",
    "run_bench",
    "average_rows",
    "render_table",
    "render_reference_table",
    "PAPER_REFERENCE",
]

METHODS = ("seq-lsb", "m-lsb")
FORMATS = ("csv", "markdown")
COLUMNS = ("cover", "method", "ec", "mse", "psnr_db", "analytic_psnr_db")
# decorrelates default noise covers from the payload streams of the same seed
NOISE_SALT = 0xA5A5A5A5A5A5A5A5


@dataclass(frozen=True)
class BenchConfig:
    covers: tuple
    ecs: tuple = (Fraction(1, 2), Fraction(1), Fraction(3, 2))
    seed: int = 42
    methods: tuple = METHODS
    format: str = "csv"
    paper_reference: bool = False

    def __post_init__(self):
        if not self.covers:
            raise EmptyInput("at least one cover is required")
        if not self.ecs:
            raise EmptyInput("at least one embedding capacity is required")
        object.__setattr__(self, "covers", tuple(self.covers))
        object.__setattr__(self, "ecs", tuple(parse_ec(ec) for ec in self.ecs))
        object.__setattr__(self, "methods", tuple(self.methods))
        unknown = set(self.methods) - set(METHODS)
        if unknown or not self.methods:
            raise ValueError(f"methods must be a non-empty subset of {METHODS}, got {self.methods}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")


@dataclass(frozen=True)
class BenchRow:
    cover: str
    method: str
    ec: Fraction
    psnr_db: float
    mse: float
    analytic_psnr_db: float


def cell_seed(seed: int, cover_index: int, ec_index: int) -> int:
    return (seed ^ (cover_index * 0x100000001) ^ ec_index) & MASK64


def analytic_psnr(pixels: int, slots: int) -> float:
    f0 = min(slots, pixels) / pixels
    f1 = max(slots - pixels, 0) / pixels
    expected = 0.5 * f0 + 2.0 * f1
    return math.inf if expected == 0 else 10 * math.log10(C_MAX ** 2 / expected)


def _synthetic(spec: str, index: int, seed: int):
    parts = spec.split(":")
    if len(parts) not in (3, 4) or parts[1] not in SYNTH_KINDS:
        raise ValueError(f"bad synthetic cover spec {spec!r}; expected synthetic:<kind>:<n>[:<param>]")
    kind, n = parts[1], int(parts[2])
    if len(parts) == 4:
        param = int(parts[3], 0)
    elif kind == "noise":
        param = (seed ^ NOISE_SALT ^ index) & MASK64
    else:
        param = 0
    return f"{kind}{n}:{param}", synth_image(kind, n, param)


def resolve_covers(specs, seed: int = 0) -> list:
    """Expand cover specs into ``(name, image)`` pairs in a fixed order.

    A spec is ``synthetic:<kind>:<n>[:<param>]``, a PGM file, or a
    directory whose ``*.pgm`` files are taken in name order.
    """
    covers = []
    for spec in specs:
        if spec.startswith("synthetic:"):
            covers.append(_synthetic(spec, len(covers), seed))
            continue
        path = Path(spec)
        files = sorted(path.glob("*.pgm")) if path.is_dir() else [path]
        if not files:
            raise EmptyInput(f"no .pgm files found in {path}")
        covers.extend((f.stem, load_pgm(f)) for f in files)
    return covers


def _run_cell(name, cover, ec, methods, seed):
    h, w = cover.shape
    if h != w:
        raise NonSquareImage(f"cover {name} is {w}x{h}; benchmark covers must be square")
    plan = make_plan(w, h, ec, "raw", 0)
    payload = splitmix64_bits(seed, plan.total_slots)
    expected = analytic_psnr(cover.size, plan.total_slots)
    rows = {}
    for method in methods:
        if method == "m-lsb":
            stego = embed_stream(cover, payload, plan).stego
        else:
            stego = lsb_sequential_embed(cover, payload, ec)
        err = mean_squared_error(cover, stego)
        db = math.inf if err == 0 else 10 * math.log10(C_MAX ** 2 / err)
        rows[method] = BenchRow(name, method, ec, db, err, expected)
    return rows


def run_bench(config: BenchConfig, jobs: int = 1) -> list:
    """Run every cell; rows come back grouped by ec, then method, then cover."""
    covers = resolve_covers(config.covers, config.seed)
    cells = [
        (ci, ei, name, cover, ec)
        for ei, ec in enumerate(config.ecs)
        for ci, (name, cover) in enumerate(covers)
    ]

    def work(cell):
        ci, ei, name, cover, ec = cell
        return _run_cell(name, cover, ec, config.methods, cell_seed(config.seed, ci, ei))

    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(work, cells))
    else:
        results = [work(cell) for cell in cells]

    by_cell = {(ci, ei): res for (ci, ei, *_), res in zip(cells, results)}
    rows = []
    for ei in range(len(config.ecs)):
        for method in config.methods:
            rows.extend(by_cell[ci, ei][method] for ci in range(len(covers)))
    return rows


def average_rows(rows) -> list:
    """One ``Average`` row per (ec, method), in first-appearance order."""
    groups = {}
    for row in rows:
        groups.setdefault((row.ec, row.method), []).append(row)
    out = []
    for (ec, method), members in groups.items():
        avg_mse = sum(r.mse for r in members) / len(members)
        out.append(
            BenchRow(
                "Average",
                method,
                ec,
                sum(r.psnr_db for r in members) / len(members),
                avg_mse,
                sum(r.analytic_psnr_db for r in members) / len(members),
            )
        )
    return out


def _fmt_ec(ec: Fraction) -> str:
    as_float = float(ec)
    return format(as_float, "g") if Fraction(str(as_float)) == ec else str(ec)


def _fmt_db(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.4f}"


def _cells(row: BenchRow) -> list:
    return [row.cover, row.method, _fmt_ec(row.ec), f"{row.mse:.6f}", _fmt_db(row.psnr_db), _fmt_db(row.analytic_psnr_db)]


def _render(header, body, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
        return buf.getvalue()
    if fmt != "markdown":
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    widths = [max(len(str(r[i])) for r in [header, *body]) for i in range(len(header))]

    def line(cells):
        return "| " + " | ".join(str(c).ljust(w) for c, w in zip(cells, widths)) + " |"

    sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
    return "\n".join([line(header), sep, *(line(r) for r in body)]) + "\n"


def render_table(rows, fmt: str = "csv") -> str:
    """Render rows with an ``Average`` line after each (ec, method) group."""
    rows = list(rows)
    if not rows:
        raise EmptyInput("no benchmark rows to render")
    averages = {(r.ec, r.method): r for r in average_rows(rows)}
    body = []
    for i, row in enumerate(rows):
        body.append(_cells(row))
        nxt = rows[i + 1] if i + 1 < len(rows) else None
        if nxt is None or (nxt.ec, nxt.method) != (row.ec, row.method):
            # groups are contiguous in run_bench output
            body.append(_cells(averages[row.ec, row.method]))
    return _render(COLUMNS, body, fmt)


# Published PSNR (dB) per test image, keyed by ec then method.
_IMAGES = ("Lena", "Baboon", "Barbara", "Airplane", "House", "Lake", "Boat", "Average")
_PAPER_ROWS = {
    Fraction(1, 2): {
        "LSB": (53.88, 53.88, 53.89, 53.91, 53.91, 53.90, 53.90, 53.89),
        "Li (2011)": (42.37, 31.42, 41.04, 45.97, 44.92, 36.62, 37.82, 40.02),
        "Peng (2012)": (40.98, 30.31, 38.81, 44.17, 43.05, 31.18, 36.90, 37.91),
        "Yang (2014)": (42.41, 32.01, 41.78, 46.03, 45.25, 37.15, 37.81, 40.34),
        "Proposed": (53.91, 53.89, 53.87, 53.88, 53.92, 53.90, 53.88, 53.89),
    },
    Fraction(1): {
        "LSB": (51.13, 51.14, 51.15, 51.12, 51.12, 51.13, 51.16, 51.1403),
        "Li (2011)": (34.59, 23.81, 32.32, 37.76, 34.89, 29.78, 30.68, 31.97),
        "Peng (2012)": (32.96, 22.35, 30.23, 35.96, 33.45, 29.14, 29.32, 30.48),
        "Yang (2014)": (35.39, 24.32, 33.49, 38.51, 36.90, 31.20, 31.20, 33.00),
        "Proposed": (51.13, 51.15, 51.10, 51.15, 51.15, 51.14, 51.13, 51.1415),
    },
    Fraction(3, 2): {
        "LSB": (44.56, 44.58, 44.54, 44.58, 44.53, 44.56, 44.59, 44.56),
        "Li (2011)": (29.57, 23.81, 25.00, 32.08, 28.76, 29.78, 25.12, 27.73),
        "Peng (2012)": (27.31, 22.35, 24.11, 29.96, 26.09, 29.14, 23.44, 26.05),
        "Yang (2014)": (30.20, 24.32, 27.49, 32.90, 30.54, 31.20, 25.80, 28.92),
        "Proposed": (44.58, 44.59, 44.54, 44.60, 44.56, 44.58, 44.61, 44.58),
    },
}
PAPER_REFERENCE = {
    ec: {method: dict(zip(_IMAGES, values)) for method, values in table.items()}
    for ec, table in _PAPER_ROWS.items()
}
_NOTES = {
    Fraction(1, 2): "published; payload unspecified, not reproducible (uniform payload gives 54.15)",
    Fraction(1): "published; reproduced by the computed rows",
    Fraction(3, 2): "published; layering unspecified, not reproducible (two-plane layering gives 46.37)",
}


def render_reference_table(ecs, fmt: str = "csv") -> str:
    """Static published values for the requested ecs; nothing here is computed."""
    body = []
    for ec in ecs:
        ec = parse_ec(ec)
        for method, per_image in PAPER_REFERENCE.get(ec, {}).items():
            if method in ("LSB", "Proposed"):
                note = _NOTES[ec]
            else:
                note = "reference, not computed"
            body.extend([image, method, _fmt_ec(ec), f"{value:g}", note] for image, value in per_image.items())
    if not body:
        return ""
    return _render(("image", "method", "ec", "paper_psnr_db", "note"), body, fmt)
