"""Persistence: the echelon basis cache and report serialization.

Basis files are plain text. The first line is ``w p m N dim``, followed by
``dim`` lines of ``N`` decimal residues. File names carry a format version.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import threading
from pathlib import Path

import numpy as np

from .series import Modulus

CACHE_ENV = "THETACYCLES_CACHE_DIR"
FORMAT_VERSION = 1


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_basis(weight: int, mod: Modulus, N: int, matrix: np.ndarray) -> str:
    lines = [f"{weight} {mod.p} {mod.m} {N} {matrix.shape[0]}"]
    lines.extend(" ".join(str(int(c)) for c in row) for row in matrix)
    return "\n".join(lines) + "\n"


def parse_basis(text: str):
    lines = text.strip("\n").split("\n")
    w, p, m, N, dim = (int(t) for t in lines[0].split())
    rows = [[int(t) for t in line.split()] for line in lines[1: dim + 1]]
    if len(rows) != dim or any(len(r) != N for r in rows):
        raise ValueError("malformed basis table")
    matrix = np.array(rows, dtype=np.int64).reshape(dim, N)
    return w, Modulus(p, m), N, matrix


class BasisCache:
    """Echelon bases keyed by (weight, p, m, N), in memory and optionally on disk.

    Reads may run concurrently; builds and writes are serialized by a lock.
    """

    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory else None
        self._memory: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def path_for(self, weight: int, mod: Modulus, N: int) -> Path:
        return self.directory / f"basis-v{FORMAT_VERSION}-w{weight}-p{mod.p}-m{mod.m}-N{N}.txt"

    def get(self, weight: int, mod: Modulus, N: int, build):
        from .forms import EchelonBasis

        key = (weight, mod.p, mod.m, N)
        found = self._memory.get(key)
        if found is not None:
            self.hits += 1
            return found
        with self._lock:
            found = self._memory.get(key)
            if found is not None:
                self.hits += 1
                return found
            basis = None
            if self.directory is not None:
                path = self.path_for(weight, mod, N)
                if path.exists():
                    w, mod2, N2, matrix = parse_basis(path.read_text())
                    if (w, mod2, N2) == (weight, mod, N):
                        matrix.setflags(write=False)
                        basis = EchelonBasis(weight, mod, N, matrix)
                        self.hits += 1
            if basis is None:
                self.misses += 1
                basis = build(weight, mod, N)
                if self.directory is not None:
                    atomic_write_text(self.path_for(weight, mod, N),
                                      format_basis(weight, mod, N, basis.matrix))
            self._memory[key] = basis
            return basis


_default: BasisCache | None = None
_default_lock = threading.Lock()


def default_cache() -> BasisCache:
    global _default
    with _default_lock:
        if _default is None:
            _default = BasisCache(os.environ.get(CACHE_ENV) or None)
        return _default


def set_default_cache(cache: BasisCache) -> None:
    global _default
    with _default_lock:
        _default = cache


# ------------------------------------------------------------ reports

CSV_COLUMNS = ("i", "n", "i_prime", "weight_filt", "factor_filt",
               "classification", "exceptional", "status")


def _csv_value(v):
    if v is None:
        return "zero"
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def report_to_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.records:
        writer.writerow([_csv_value(getattr(r, c)) for c in CSV_COLUMNS])
    return buf.getvalue()


def records_from_csv(text: str) -> list[dict]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = {}
        for key, val in row.items():
            if key in ("classification", "status"):
                rec[key] = val
            elif key == "exceptional":
                rec[key] = val == "true"
            else:
                rec[key] = None if val == "zero" else int(val)
        out.append(rec)
    return out


def report_to_dict(report) -> dict:
    return {
        "p": report.modulus.p,
        "m": report.modulus.m,
        "k": report.k,
        "form": report.form,
        "i_max": report.i_max,
        "precision": report.precision,
        "ordinary": report.ordinary,
        "exceptional_indices": list(report.exceptional_indices),
        "coverage": report.coverage,
        "records": [r.as_dict() for r in report.records],
    }


def report_to_json(report) -> str:
    return json.dumps(report_to_dict(report), indent=1, sort_keys=False) + "\n"


def records_from_json(text: str) -> list[dict]:
    data = json.loads(text)
    return [{c: rec[c] for c in CSV_COLUMNS} for rec in data["records"]]
