"""CSV emission and loading for snapshots, diagnostics series and stability maps.

Every float is written with 17 significant digits so that a write/read
round trip is bitwise exact and identical runs give identical files.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..errors import ConfigurationError, ShearWavesError

SURFACE_COLUMNS = ("x", "eta", "xi")
ENVELOPE_COLUMNS = ("x", "re_u", "im_u", "abs_u")
SERIES_COLUMNS = ("t", "l2_rel_err", "H_full", "H_reduced", "I", "M", "max_eta")
STABILITY_COLUMNS = ("gamma", "lambda", "Gamma", "sigma_over_omega0")


class HarnessIOError(ShearWavesError, OSError):
    """File-system failure, reported with the offending path."""


def fmt(value) -> str:
    """Deterministic text form of a real number."""
    return format(float(value), ".17g")


def _write_rows(path, header, rows) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            for row in rows:
                w.writerow([fmt(v) for v in row])
    except OSError as exc:
        raise HarnessIOError(f"{path}: {exc.strerror or exc}") from exc
    return path


def _read_rows(path, header) -> np.ndarray:
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            r = csv.reader(fh)
            got = tuple(next(r, ()))
            if got != tuple(header):
                raise ConfigurationError(f"{path}: expected columns {','.join(header)}, got {','.join(got)}", key="columns")
            data = [[float(v) for v in row] for row in r if row]
    except OSError as exc:
        raise HarnessIOError(f"{path}: {exc.strerror or exc}") from exc
    return np.asarray(data, dtype=float).reshape(-1, len(header))


def write_surface_snapshot(path, x, eta, xi) -> Path:
    """Columns ``x,eta,xi``."""
    return _write_rows(path, SURFACE_COLUMNS, zip(x, eta, xi))


def read_surface_snapshot(path):
    """Return ``(x, eta, xi)`` arrays."""
    d = _read_rows(path, SURFACE_COLUMNS)
    return d[:, 0], d[:, 1], d[:, 2]


def write_envelope_snapshot(path, x, u) -> Path:
    """Columns ``x,re_u,im_u,abs_u``."""
    u = np.asarray(u, dtype=complex)
    return _write_rows(path, ENVELOPE_COLUMNS, zip(x, u.real, u.imag, np.abs(u)))


def read_envelope_snapshot(path):
    """Return ``(x, u)`` with complex ``u``."""
    d = _read_rows(path, ENVELOPE_COLUMNS)
    return d[:, 0], d[:, 1] + 1j * d[:, 2]


def write_series(path, records) -> Path:
    """Columns ``t,l2_rel_err,H_full,H_reduced,I,M,max_eta`` from diagnostics records."""
    rows = (
        (r.time, r.l2_rel_err, r.H_full, r.H_reduced, r.I_momentum, r.M_action, r.max_eta)
        for r in records
    )
    return _write_rows(path, SERIES_COLUMNS, rows)


def read_series(path) -> dict:
    """Return a dict of column arrays keyed by the series column names."""
    d = _read_rows(path, SERIES_COLUMNS)
    return {name: d[:, i] for i, name in enumerate(SERIES_COLUMNS)}


def write_stability_map(path, rows) -> Path:
    """Columns ``gamma,lambda,Gamma,sigma_over_omega0``."""
    return _write_rows(path, STABILITY_COLUMNS, rows)


def read_stability_map(path) -> dict:
    d = _read_rows(path, STABILITY_COLUMNS)
    return {name: d[:, i] for i, name in enumerate(STABILITY_COLUMNS)}
