"""Field files, norm reports and configuration files.

Binary field layout (little-endian): ``int32 dim``, ``int32 N``,
``float64 L``, then ``N^dim`` complex samples as interleaved ``re, im``
float64 pairs in C order.  The CSV layout has a first row ``dim,N,L``
followed by one ``re,im`` row per sample.
"""
from __future__ import annotations

import configparser
import csv
import json
import struct
from pathlib import Path

import numpy as np

from .field import GridSpec, SampledField

__all__ = [
    "write_field",
    "read_field",
    "write_field_binary",
    "read_field_binary",
    "write_field_csv",
    "read_field_csv",
    "norm_row",
    "write_norm_rows",
    "read_config",
]

_HEADER = struct.Struct("<iid")


def write_field_binary(f: SampledField, path) -> None:
    g = f.grid
    data = np.empty(f.values.size * 2, dtype="<f8")
    flat = f.values.ravel()
    data[0::2] = flat.real
    data[1::2] = flat.imag
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(g.dim, g.n, g.period))
        fh.write(data.tobytes())


def read_field_binary(path) -> SampledField:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated header")
    dim, n, period = _HEADER.unpack_from(raw)
    grid = GridSpec(dim, n, period)
    data = np.frombuffer(raw, dtype="<f8", offset=_HEADER.size)
    if data.size != 2 * n ** dim:
        raise ValueError(f"{path}: expected {n ** dim} samples, found {data.size / 2:g}")
    return SampledField(grid, (data[0::2] + 1j * data[1::2]).reshape(grid.shape))


def write_field_csv(f: SampledField, path) -> None:
    g = f.grid
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow([g.dim, g.n, repr(float(g.period))])
        for z in f.values.ravel():
            wr.writerow([repr(float(z.real)), repr(float(z.imag))])


def read_field_csv(path) -> SampledField:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) != 3:
        raise ValueError(f"{path}: first row must be dim,N,L")
    dim, n, period = int(rows[0][0]), int(rows[0][1]), float(rows[0][2])
    grid = GridSpec(dim, n, period)
    body = np.array(rows[1:], dtype=float)
    if body.shape != (n ** dim, 2):
        raise ValueError(f"{path}: expected {n ** dim} rows of re,im, found {body.shape}")
    return SampledField(grid, (body[:, 0] + 1j * body[:, 1]).reshape(grid.shape))


def write_field(f: SampledField, path) -> None:
    (write_field_csv if str(path).endswith(".csv") else write_field_binary)(f, path)


def read_field(path) -> SampledField:
    return (read_field_csv if str(path).endswith(".csv") else read_field_binary)(path)


def norm_row(function_id: str, norm_name: str, value: float, grid: GridSpec,
             params: dict | None = None) -> dict:
    return {"function_id": function_id, "norm_name": norm_name, "value": float(value),
            "grid": {"dim": grid.dim, "n": grid.n, "period": grid.period},
            "params": dict(params or {})}


def write_norm_rows(rows, path=None) -> str:
    text = json.dumps(list(rows), indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def read_config(path, section: str) -> dict[str, str]:
    """Key-value pairs from ``[section]`` of an INI file (``[paraprod]`` is read first)."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise FileNotFoundError(path)
    out: dict[str, str] = {}
    for name in ("paraprod", section):
        if cp.has_section(name):
            out.update({k.replace("-", "_"): v for k, v in cp.items(name)})
    return out
