"""Report plumbing: provenance headers, deterministic serialization, atomic writes.

Reports never embed timestamps; identical configuration and inputs therefore
produce byte-identical files.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Mapping, Sequence

from . import __version__

ARTIFACT = f"identlim {__version__}"


def sha256_of_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def provenance(config: Mapping, inputs: Mapping[str, str | Path] | None = None) -> dict:
    """Header identifying the artifact, the run configuration, and input hashes."""
    resolved = {}
    for name, path in (inputs or {}).items():
        resolved[name] = {"path": str(path), "sha256": sha256_of_file(path)}
    return {"artifact": ARTIFACT, "config": dict(config), "inputs": resolved}


def dump_json(document: Mapping) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a temp file in the target directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def csv_text(fieldnames: Sequence[str], rows: Sequence[Mapping], header: dict | None = None) -> str:
    """CSV body with an optional single provenance comment line on top."""
    buf = io.StringIO()
    if header is not None:
        compact = json.dumps(header, sort_keys=True, separators=(",", ":"))
        buf.write(f"# {compact}\n")
    writer = csv.DictWriter(buf, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
