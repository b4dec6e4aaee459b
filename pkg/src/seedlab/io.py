"""Graymap/PNG frames and CSV connectivity reports."""
from __future__ import annotations

import csv
import struct
import zlib
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .connectivity import ConnectivityRecord, LabelField
from .raster import EscapeField

CSV_COLUMNS = (
    "step",
    "seed_re",
    "seed_im",
    "member_pixels",
    "component_count",
    "largest_fraction",
    "disconnectivity",
    "empty",
)


def image_bytes(obj) -> np.ndarray:
    """uint8 image: members 0, escaped pixels 64 + (iterations mod 192).

    A :class:`LabelField` or bare boolean mask has no iteration counts, so its
    non-members are drawn at 255.
    """
    if isinstance(obj, EscapeField):
        img = (64 + obj.iterations % 192).astype(np.uint8)
        img[obj.mask] = 0
        return img
    mask = obj.mask() if isinstance(obj, LabelField) else np.asarray(obj, dtype=bool)
    return np.where(mask, 0, 255).astype(np.uint8)


def _pgm(img: np.ndarray) -> bytes:
    rows, cols = img.shape
    return b"P5\n%d %d\n255\n" % (cols, rows) + np.ascontiguousarray(img).tobytes()


def _png(img: np.ndarray) -> bytes:
    rows, cols = img.shape
    raw = b"".join(b"\x00" + img[r].tobytes() for r in range(rows))

    def chunk(tag, data):
        return struct.pack(">I", len(data)) + tag + data + struct.pack(">I", zlib.crc32(tag + data))

    return (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", struct.pack(">IIBBBBB", cols, rows, 8, 0, 0, 0, 0))
        + chunk(b"IDAT", zlib.compress(raw, 9))
        + chunk(b"IEND", b"")
    )


def write_image(obj, path, fmt: str | None = None) -> Path:
    """Write *obj* (EscapeField, LabelField or mask) as P5 graymap or PNG.

    The format follows *fmt*, else the file suffix (``.png`` or anything else
    meaning graymap).
    """
    path = Path(path)
    fmt = (fmt or ("png" if path.suffix.lower() == ".png" else "pgm")).lower()
    img = image_bytes(obj)
    if fmt == "pgm":
        data = _pgm(img)
    elif fmt == "png":
        data = _png(img)
    else:
        raise ValueError(f"unknown image format {fmt!r}")
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_pgm(path) -> np.ndarray:
    data = Path(path).read_bytes()
    # header: magic, width, height, maxval separated by whitespace, then one whitespace byte
    fields = []
    pos = 0
    while len(fields) < 4:
        while data[pos : pos + 1].isspace():
            pos += 1
        if data[pos : pos + 1] == b"#":
            pos = data.index(b"\n", pos) + 1
            continue
        end = pos
        while not data[end : end + 1].isspace():
            end += 1
        fields.append(data[pos:end])
        pos = end
    if fields[0] != b"P5" or int(fields[3]) != 255:
        raise ValueError(f"{path}: not an 8-bit P5 graymap")
    cols, rows = int(fields[1]), int(fields[2])
    pixels = np.frombuffer(data, dtype=np.uint8, count=rows * cols, offset=pos + 1)
    return pixels.reshape(rows, cols)


def _num(x: float) -> str:
    return repr(float(x) + 0.0)


def record_row(step: int, rec: ConnectivityRecord) -> list[str]:
    return [
        str(step),
        _num(rec.seed.real),
        _num(rec.seed.imag),
        str(rec.member_pixels),
        str(rec.component_count),
        _num(rec.largest_fraction),
        _num(rec.disconnectivity),
        "true" if rec.empty else "false",
    ]


def write_records_csv(path, records: Sequence[ConnectivityRecord], comment: str | None = None) -> Path:
    """CSV with one row per record. *comment* goes on a leading ``#`` line."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            if comment:
                fh.write("# " + comment.replace("\n", " ") + "\n")
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for k, rec in enumerate(records):
                writer.writerow(record_row(k, rec))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def read_records_csv(path) -> list[ConnectivityRecord]:
    with Path(path).open(newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(lines)
    missing = set(CSV_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"{path}: missing columns {sorted(missing)}")
    return [
        ConnectivityRecord(
            seed=complex(float(row["seed_re"]), float(row["seed_im"])),
            component_count=int(row["component_count"]),
            member_pixels=int(row["member_pixels"]),
            largest_fraction=float(row["largest_fraction"]),
            disconnectivity=float(row["disconnectivity"]),
            empty=row["empty"] == "true",
        )
        for row in reader
    ]


def data_rows(path) -> Iterable[str]:
    """CSV lines without ``#`` metadata lines."""
    return [line for line in Path(path).read_text().splitlines() if not line.startswith("#")]
