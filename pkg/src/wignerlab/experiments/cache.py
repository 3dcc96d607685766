"""On-disk spectrum cache keyed by a provenance hash.

Eigensolves dominate experiment runtime, so spectra are cached per
(ensemble, n, masterSeed, trial). Files are self-checking CSVs written
with an atomic replace; a corrupt entry is reported, never silently
reused, and only deleted by an explicit prune.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from ..ensembles import EnsembleSpec
from ..errors import CacheCorruptionError
from ..hashing import document_hash
from ..spectral import Spectrum, spectrum_from_csv, spectrum_to_csv

STATUS_VERIFIED = "verified"
STATUS_CORRUPT = "corrupt"


def spectrum_key(ensemble: EnsembleSpec, n: int, master_seed: int, trial: int) -> str:
    return document_hash(
        {
            "ensemble": ensemble.to_json(),
            "n": n,
            "masterSeed": master_seed,
            "trial": trial,
        }
    )


@dataclass(frozen=True)
class CacheEntry:
    key: str
    path: Path
    status: str


class SpectrumCache:
    """Flat directory of <key>.csv spectrum files."""

    def __init__(self, root) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, key: str) -> Path:
        return self.root / f"{key}.csv"

    def get(self, key: str) -> Spectrum | None:
        """Cached spectrum, or None on a miss or a failed verification."""
        path = self.path_for(key)
        if not path.exists():
            return None
        try:
            return spectrum_from_csv(path, expect_key=key)
        except CacheCorruptionError:
            return None
        except OSError:
            return None

    def put(self, key: str, spectrum: Spectrum) -> Path:
        """Write an entry with atomic replacement (single-writer safe)."""
        path = self.path_for(key)
        fd, tmp_name = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        os.close(fd)
        try:
            spectrum_to_csv(spectrum, tmp_name, key)
            os.replace(tmp_name, path)
        finally:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
        return path

    def entries(self) -> list[CacheEntry]:
        found = []
        for path in sorted(self.root.glob("*.csv")):
            key = path.stem
            try:
                spectrum_from_csv(path, expect_key=key)
                status = STATUS_VERIFIED
            except (CacheCorruptionError, OSError):
                status = STATUS_CORRUPT
            found.append(CacheEntry(key=key, path=path, status=status))
        return found

    def prune(self) -> int:
        """Delete corrupt entries only; returns the number removed."""
        removed = 0
        for entry in self.entries():
            if entry.status == STATUS_CORRUPT:
                entry.path.unlink()
                removed += 1
        return removed
