"""CSV and report files.

All numbers are written with 17 significant digits, which round-trips every
IEEE double exactly.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .errors import InputError
from .series import MIN_LENGTH, ComplexSeries, QuaternionSeries

INPUT_HEADER = ("t", "z_r", "z_i")
POLAR_HEADER = ("t", "a", "b", "c", "d", "f_Br", "f_Bi")
EXTENDED_HEADER = ("phi_A", "f_A", "alpha", "beta", "gamma")
TRUTH_HEADER = ("t", "s_r", "s_i", "s_j", "s_k", "a", "b", "c", "d", "f_Br", "f_Bi", "phi_A", "f_A")
GRID_RTOL = 1e-9


def fmt(x) -> str:
    return format(float(x), ".17g")


def write_table(path, header, columns):
    columns = [np.asarray(c, dtype=float) for c in columns]
    n = columns[0].size
    with open(path, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in range(n):
            f.write(",".join(fmt(c[row]) for c in columns) + "\n")


def read_table(path, header) -> dict:
    """Read a CSV with exactly the given header into a dict of float arrays."""
    header = tuple(header)
    with open(path) as f:
        lines = f.read().splitlines()
    if not lines:
        raise InputError(f"{path}: empty file, expected header {','.join(header)}")
    found = tuple(x.strip() for x in lines[0].split(","))
    if found != header:
        raise InputError(f"{path}: header {','.join(found)!r} does not match expected {','.join(header)!r}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != len(header):
            raise InputError(f"{path}: line {lineno}: expected {len(header)} fields, got {len(fields)}")
        try:
            rows.append([float(x) for x in fields])
        except ValueError:
            raise InputError(f"{path}: line {lineno}: malformed number in {line!r}") from None
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    return {name: data[:, k] for k, name in enumerate(header)}


def _grid(t, path, fs=None):
    if t.size < MIN_LENGTH:
        raise InputError(f"{path}: series too short ({t.size} samples, need at least {MIN_LENGTH})")
    steps = np.diff(t)
    step0 = steps[0]
    if not step0 > 0:
        raise InputError(f"{path}: line 3: time must increase")
    off = np.abs(steps - step0) > GRID_RTOL * abs(step0)
    if np.any(off):
        k = int(np.flatnonzero(off)[0])
        # row k+1 (0-based data row) is the offender; +2 for header and 1-based lines
        raise InputError(f"{path}: line {k + 3}: non-uniform sampling (step {steps[k]!r} vs {step0!r})")
    dt = (t[-1] - t[0]) / (t.size - 1)
    if fs is not None:
        if abs(dt * fs - 1.0) > GRID_RTOL:
            raise InputError(f"{path}: time column spacing {dt!r} disagrees with fs = {fs!r}")
        dt = 1.0 / fs
    return float(t[0]), float(dt)


def read_csv(path, fs=None) -> ComplexSeries:
    """Read ``t,z_r,z_i`` into a :class:`ComplexSeries`."""
    cols = read_table(path, INPUT_HEADER)
    t0, dt = _grid(cols["t"], path, fs)
    return ComplexSeries(cols["z_r"] + 1j * cols["z_i"], dt, t0)


def write_complex_csv(path, z: ComplexSeries):
    write_table(path, INPUT_HEADER, [z.t, z.real, z.imag])


def write_csv(path, polar, freq, extended=False):
    """Write the polar decomposition as ``t,a,b,c,d,f_Br,f_Bi`` (+ extended columns)."""
    cols = [polar.t, polar.a, polar.b, polar.c, polar.d, freq.f_Br, freq.f_Bi]
    header = POLAR_HEADER
    if extended:
        f_A = freq.f_A if freq.f_A is not None else np.full(polar.t.size, np.nan)
        cols += [polar.phi_A, f_A, polar.alpha, polar.beta, polar.gamma]
        header = POLAR_HEADER + EXTENDED_HEADER
    write_table(path, header, cols)


def read_polar_csv(path, extended=False) -> dict:
    return read_table(path, POLAR_HEADER + EXTENDED_HEADER if extended else POLAR_HEADER)


def write_truth_csv(path, truth):
    q = truth.s.values
    write_table(
        path,
        TRUTH_HEADER,
        [truth.t, q[:, 0], q[:, 1], q[:, 2], q[:, 3], truth.A.real, truth.A.imag,
         truth.B.real, truth.B.imag, truth.f_B.real, truth.f_B.imag, truth.phi_A, truth.f_A],
    )


def read_truth_csv(path):
    from .models import GroundTruth

    cols = read_table(path, TRUTH_HEADER)
    t0, dt = _grid(cols["t"], path)
    s = QuaternionSeries(np.stack([cols["s_r"], cols["s_i"], cols["s_j"], cols["s_k"]], axis=1), dt, t0)
    return GroundTruth(
        s=s,
        A=cols["a"] + 1j * cols["b"],
        B=cols["c"] + 1j * cols["d"],
        f_B=cols["f_Br"] + 1j * cols["f_Bi"],
        phi_A=cols["phi_A"],
        f_A=cols["f_A"],
    )


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt(v)
    if isinstance(v, (tuple, list)):
        return ",".join(_value(x) for x in v)
    return str(v)


def flatten(d, prefix="") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "."))
        else:
            out[key] = v
    return out


def write_report(path, report: dict, json_path=None):
    """One ``key = value`` line per metric; optional JSON twin."""
    flat = flatten(report)
    with open(path, "w", newline="\n") as f:
        for key, value in flat.items():
            f.write(f"{key} = {_value(value)}\n")
    if json_path is not None:
        with open(json_path, "w", newline="\n") as f:
            json.dump(_jsonable(report), f, indent=2, sort_keys=False)
            f.write("\n")


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def read_report(path) -> dict:
    out = {}
    with open(path) as f:
        for line in f:
            if " = " in line:
                k, v = line.rstrip("\n").split(" = ", 1)
                out[k] = v
    return out


def write_plot_data(directory, polar, freq, z=None, truth=None):
    """Per-panel CSVs: envelope (real, imag), phase (real, imag), frequency (real, imag).

    Each panel holds the recovered curve, the curve without sign recovery or
    unwrapping where that applies, and the ideal curve when ground truth is
    given.  Returns the list of files written.
    """
    os.makedirs(directory, exist_ok=True)
    t = polar.t
    breve_A = polar.envelope_ambiguous
    breve_B = polar.phase_folded
    panels = []

    def panel(name, header, cols):
        path = os.path.join(directory, name)
        write_table(path, header, cols)
        panels.append(path)

    for part, label, zpart in (("real", "a", "z_r"), ("imag", "b", "z_i")):
        pick = np.real if part == "real" else np.imag
        header = ["t"]
        cols = [t]
        if z is not None:
            header.append(zpart)
            cols.append(pick(z.values))
        header += [f"{label}_recovered", f"{label}_ambiguous"]
        cols += [pick(polar.envelope), pick(breve_A)]
        if truth is not None:
            header.append(f"{label}_ideal")
            cols.append(pick(truth.A))
        panel(f"panel_{'a' if part == 'real' else 'b'}_envelope_{part}.csv", header, cols)

    for part, label, tag in (("real", "c", "c"), ("imag", "d", "d")):
        pick = np.real if part == "real" else np.imag
        header = ["t", f"{label}_unwrapped", f"{label}_folded"]
        cols = [t, pick(polar.phase), pick(breve_B)]
        if truth is not None:
            header.append(f"{label}_ideal")
            cols.append(pick(truth.B))
        panel(f"panel_{tag}_phase_{part}.csv", header, cols)

    for part, label, tag in (("real", "f_Br", "e"), ("imag", "f_Bi", "f")):
        pick = np.real if part == "real" else np.imag
        header = ["t", f"{label}_estimated"]
        cols = [t, pick(freq.f_B)]
        if truth is not None:
            header += [f"{label}_ideal", f"D{label}"]
            cols += [pick(truth.f_B), np.abs(pick(truth.f_B) - pick(freq.f_B))]
        panel(f"panel_{tag}_frequency_{part}.csv", header, cols)
    return panels
