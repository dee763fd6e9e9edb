"""File formats: dataset CSV, system/model JSON, diagnostic CSVs.

All floats are written with ``repr`` (shortest round-trip form), so
identical inputs always produce byte-identical files.
"""

import csv
import json

import numpy as np

from .acquisition import HarmonicDataset
from .simulate import TimeSignal
from .systems import QuadraticSystem

DATASET_HEADER = ["omega", "re_H1", "im_H1", "re_H2", "im_H2", "re_H3", "im_H3"]


def _fmt(x):
    return repr(float(x))


def write_dataset_csv(path, ds):
    """Harmonic dataset as CSV; absent levels become empty fields."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(DATASET_HEADER)
        for i, w in enumerate(ds.points):
            row = [_fmt(w)]
            for m in (1, 2, 3):
                v = ds.level(m)
                if v is None:
                    row += ["", ""]
                else:
                    row += [_fmt(v[i].real), _fmt(v[i].imag)]
            writer.writerow(row)


def read_dataset_csv(path, provenance="direct"):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != DATASET_HEADER:
            raise ValueError(f"unexpected dataset header {header!r}")
        rows = [row for row in reader if row]
    points = np.array([float(r[0]) for r in rows])
    data = {}
    for m in (1, 2, 3):
        re_col, im_col = 2 * m - 1, 2 * m
        if all(r[re_col] != "" for r in rows):
            data[f"h{m}"] = np.array([float(r[re_col]) + 1j * float(r[im_col])
                                      for r in rows])
    return HarmonicDataset(points=points, provenance=provenance, **data)


def _matrix_rows(M):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return [[float(x) for x in row] for row in M]


def write_system_json(path, sys):
    """Full system file: n plus row-major E, A, Q, B, C."""
    doc = {
        "n": sys.n,
        "E": _matrix_rows(sys.E),
        "A": _matrix_rows(sys.A),
        "Q": _matrix_rows(sys.Q),
        "B": [float(x) for x in sys.B],
        "C": [float(x) for x in sys.C],
        "symmetric": sys.symmetric,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_system_json(path):
    with open(path) as fh:
        doc = json.load(fh)
    return QuadraticSystem(np.array(doc["E"]), np.array(doc["A"]),
                           np.array(doc["Q"]), np.array(doc["B"]),
                           np.array(doc["C"]),
                           symmetric=doc.get("symmetric", False))


def write_model_json(path, rom):
    """Learned reduced model: dimensions and row-major A, B, C, Q."""
    doc = {
        "r": rom.n,
        "A": _matrix_rows(rom.A),
        "B": [float(x) for x in rom.B],
        "C": [float(x) for x in rom.C],
        "Q": _matrix_rows(rom.Q),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_model_json(path):
    with open(path) as fh:
        doc = json.load(fh)
    r = int(doc["r"])
    return QuadraticSystem(np.eye(r), np.array(doc["A"]), np.array(doc["Q"]),
                           np.array(doc["B"]), np.array(doc["C"]))


def write_singular_values_csv(path, sigma):
    """Columns index, sigma, sigma_normalized (decay-plot data)."""
    sigma = np.asarray(sigma, dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "sigma", "sigma_normalized"])
        for i, s in enumerate(sigma):
            writer.writerow([i + 1, _fmt(s), _fmt(s / sigma[0])])


def write_trace_csv(path, trace):
    """Columns q, deviation (convergence-plot data)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["q", "deviation"])
        for i, d in enumerate(np.asarray(trace, dtype=float)):
            writer.writerow([i, _fmt(d)])


def write_trajectory_csv(path, signal):
    """Columns t, re_y (plus im_y for complex-valued signals)."""
    values = np.asarray(signal.values)
    is_complex = np.iscomplexobj(values) and np.abs(values.imag).max() > 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "re_y", "im_y"] if is_complex else ["t", "re_y"])
        for t, y in zip(signal.times, values):
            row = [_fmt(t), _fmt(y.real)]
            if is_complex:
                row.append(_fmt(y.imag))
            writer.writerow(row)


def read_trajectory_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [row for row in reader if row]
    t = np.array([float(r[0]) for r in rows])
    if len(header) == 3:
        values = np.array([float(r[1]) + 1j * float(r[2]) for r in rows])
    else:
        values = np.array([float(r[1]) for r in rows])
    return TimeSignal(t0=t[0], dt=t[1] - t[0], values=values)
