"""Ingestion and normalization of model/dataset ecosystem records.

Reads a CSV of released assets (models, datasets, anything else), normalizes
dates to month precision, parses parameter counts from free-text size fields,
classifies access / modality / region, imputes missing model sizes, and
produces monthly cumulative series.

Every skipped or defaulted field is recorded as a warning, so
``rows == records + skipped`` always holds.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, replace
from datetime import date
from pathlib import Path

from .languages import SchemaError

ACCESS_CLASSES = ("open", "closed_or_restricted", "unknown")
MODALITIES = ("text", "vision", "multimodal", "audio", "other", "unknown")
REGIONS = ("north_america", "europe", "asia", "other")

REQUIRED_COLUMNS = ("name", "type", "organization", "created_date", "access", "size", "modality")

_DATE_MIN = date(1990, 1, 1)
_DATE_MAX = date(2100, 1, 1)

_SCALES = {"k": 1e3, "m": 1e6, "b": 1e9, "t": 1e12}
_PARAM_RE = re.compile(r"(\d+(?:\.\d+)?)\s*([kKmMbBtT])\b")

_CLOSED_WORDS = {"closed", "restricted", "limited", "api", "closed_or_restricted", "proprietary"}
_TEXT_CUES = {"text", "language", "code", "nlp"}
_VISION_CUES = {"image", "images", "vision", "video", "visual"}
_AUDIO_CUES = {"speech", "audio", "voice", "music"}


@dataclass(frozen=True)
class AssetRecord:
    """One normalized row of the ecosystem CSV."""

    name: str
    asset_type: str  # model | dataset | other
    organization: str
    created: date  # month precision, day pinned to 1
    access: str  # open | closed_or_restricted | unknown
    raw_size: str
    params: float | None
    modality: str
    region: str

    def __post_init__(self) -> None:
        if self.params is not None and self.params <= 0:
            raise ValueError(f"params must be positive, got {self.params}")
        if not _DATE_MIN <= self.created <= _DATE_MAX:
            raise ValueError(f"created date {self.created} outside plausible range")


@dataclass(frozen=True)
class Snapshot:
    """All records from one ingest, partitioned by asset type."""

    models: tuple[AssetRecord, ...]
    datasets: tuple[AssetRecord, ...]
    others: tuple[AssetRecord, ...]
    ingest_warnings: tuple[str, ...]
    skipped_rows: int
    snapshot_label: str
    imputed_count: int = 0

    @property
    def records(self) -> tuple[AssetRecord, ...]:
        return self.models + self.datasets + self.others


@dataclass(frozen=True)
class CumulativeSeries:
    """Monthly cumulative counts; all series are nondecreasing along the grid."""

    grid: tuple[date, ...]
    closed: tuple[int, ...]
    open: tuple[int, ...]
    unknown: tuple[int, ...]
    datasets: tuple[int, ...]
    params_total: tuple[float, ...]
    strict_access: bool

    def at(self, t: date) -> int:
        """Index of the grid point for month ``t``."""
        key = date(t.year, t.month, 1)
        try:
            return self.grid.index(key)
        except ValueError:
            raise KeyError(f"{key} is not on the grid") from None


def parse_month(text: str) -> tuple[date | None, str | None]:
    """Normalize a date string to month precision.

    Returns (date, warning): full and year-month dates parse cleanly,
    year-only dates default to January with a warning, anything else yields
    (None, reason).
    """
    raw = (text or "").strip()
    m = re.fullmatch(r"(\d{4})-(\d{2})(?:-(\d{2}))?", raw)
    if m:
        year, month = int(m.group(1)), int(m.group(2))
        if not 1 <= month <= 12:
            return None, f"month out of range in {raw!r}"
        parsed = date(year, month, 1)
    elif re.fullmatch(r"\d{4}", raw):
        parsed = date(int(raw), 1, 1)
        if not _DATE_MIN <= parsed <= _DATE_MAX:
            return None, f"year {raw!r} outside plausible range"
        return parsed, f"year-only date {raw!r} defaulted to January"
    else:
        return None, f"unparseable date {raw!r}"
    if not _DATE_MIN <= parsed <= _DATE_MAX:
        return None, f"date {raw!r} outside plausible range"
    return parsed, None


def parse_param_count(text: str) -> float | None:
    """Extract a parameter count like '175B parameters' or '540b'; None if absent."""
    if not text:
        return None
    m = _PARAM_RE.search(text)
    if not m:
        return None
    value = float(m.group(1)) * _SCALES[m.group(2).lower()]
    return value if value > 0 else None


def classify_access(raw: str) -> str:
    token = (raw or "").strip().lower()
    if token == "open":
        return "open"
    if token in _CLOSED_WORDS:
        return "closed_or_restricted"
    return "unknown"


def classify_modality(raw: str) -> str:
    """Keyword rules: two distinct cue groups mean multimodal, one means that
    class, an explicit 'other' stays other, no cue at all is unknown."""
    tokens = set(re.findall(r"[a-z]+", (raw or "").lower()))
    if "multimodal" in tokens:
        return "multimodal"
    cues = [
        ("text", bool(tokens & _TEXT_CUES)),
        ("vision", bool(tokens & _VISION_CUES)),
        ("audio", bool(tokens & _AUDIO_CUES)),
    ]
    hits = [name for name, hit in cues if hit]
    if len(hits) >= 2:
        return "multimodal"
    if len(hits) == 1:
        return hits[0]
    if "other" in tokens:
        return "other"
    return "unknown"


def classify_region(organization: str, region_map: dict[str, str] | None) -> str:
    """Explicit organization lookup; anything unmapped lands in 'other'."""
    if not region_map:
        return "other"
    return region_map.get(organization, "other")


def load_region_map(path: str | Path) -> dict[str, str]:
    """Region map document: array of {organization, region}."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"region map is not valid JSON: {exc}") from exc
    if not isinstance(payload, list):
        raise SchemaError("region map must be an array of {organization, region}")
    mapping: dict[str, str] = {}
    for i, entry in enumerate(payload):
        if not isinstance(entry, dict) or "organization" not in entry or "region" not in entry:
            raise SchemaError(f"region map entry {i} must have organization and region")
        region = entry["region"]
        if region not in REGIONS:
            raise SchemaError(f"region map entry {i}: unknown region {region!r}")
        mapping[entry["organization"]] = region
    return mapping


def _classify_type(raw: str) -> str:
    token = (raw or "").strip().lower()
    if token == "model":
        return "model"
    if token == "dataset":
        return "dataset"
    return "other"


def ingest_csv(
    path: str | Path,
    region_map: dict[str, str] | None = None,
    *,
    label: str | None = None,
    columns: dict[str, str] | None = None,
) -> Snapshot:
    """Read and normalize an asset CSV.

    ``columns`` optionally maps the canonical column names
    (name, type, organization, created_date, access, size, modality) to the
    file's actual headers. Rows with unusable dates are skipped with a
    warning; every other anomaly is warned but kept.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    colmap = {c: c for c in REQUIRED_COLUMNS}
    if columns:
        colmap.update(columns)
    models: list[AssetRecord] = []
    datasets: list[AssetRecord] = []
    others: list[AssetRecord] = []
    warnings: list[str] = []
    skipped = 0
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: no header row")
        missing = [colmap[c] for c in REQUIRED_COLUMNS if colmap[c] not in reader.fieldnames]
        if missing:
            raise SchemaError(f"{path}: missing mandatory columns {missing}")
        for line_no, row in enumerate(reader, start=2):
            name = (row.get(colmap["name"]) or "").strip()
            created, date_warning = parse_month(row.get(colmap["created_date"]) or "")
            if created is None:
                warnings.append(f"row {line_no} ({name or 'unnamed'}): skipped, {date_warning}")
                skipped += 1
                continue
            if date_warning:
                warnings.append(f"row {line_no} ({name}): {date_warning}")
            asset_type = _classify_type(row.get(colmap["type"]) or "")
            access = classify_access(row.get(colmap["access"]) or "")
            if asset_type == "model" and access == "unknown":
                warnings.append(f"row {line_no} ({name}): access defaulted to unknown")
            raw_size = (row.get(colmap["size"]) or "").strip()
            params = parse_param_count(raw_size) if asset_type == "model" else None
            record = AssetRecord(
                name=name,
                asset_type=asset_type,
                organization=(row.get(colmap["organization"]) or "").strip(),
                created=created,
                access=access,
                raw_size=raw_size,
                params=params,
                modality=classify_modality(row.get(colmap["modality"]) or ""),
                region=classify_region((row.get(colmap["organization"]) or "").strip(), region_map),
            )
            {"model": models, "dataset": datasets, "other": others}[asset_type].append(record)
    return Snapshot(
        models=tuple(models),
        datasets=tuple(datasets),
        others=tuple(others),
        ingest_warnings=tuple(warnings),
        skipped_rows=skipped,
        snapshot_label=label or path.name,
    )


def impute_params(snapshot: Snapshot) -> Snapshot:
    """Give every model without a parsed size the mean of the known sizes.

    Fatal when no model size is known at all (the mean is undefined).
    """
    known = [m.params for m in snapshot.models if m.params is not None]
    missing = [m for m in snapshot.models if m.params is None]
    if not missing:
        return snapshot
    if not known:
        raise ValueError("cannot impute: no model has a known parameter count")
    mean = sum(known) / len(known)
    models = tuple(
        replace(m, params=mean) if m.params is None else m for m in snapshot.models
    )
    warning = f"imputed {len(missing)} missing model sizes with mean {mean:.6g}"
    return replace(
        snapshot,
        models=models,
        imputed_count=len(missing),
        ingest_warnings=snapshot.ingest_warnings + (warning,),
    )


def _next_month(t: date) -> date:
    return date(t.year + 1, 1, 1) if t.month == 12 else date(t.year, t.month + 1, 1)


def month_grid(start: date, end: date) -> tuple[date, ...]:
    if start > end:
        raise ValueError("grid start after end")
    grid = []
    t = date(start.year, start.month, 1)
    stop = date(end.year, end.month, 1)
    while t <= stop:
        grid.append(t)
        t = _next_month(t)
    return tuple(grid)


def cumulative_series(
    snapshot: Snapshot,
    grid_start: date | None = None,
    grid_end: date | None = None,
    *,
    strict_access: bool = True,
) -> CumulativeSeries:
    """Monthly cumulative counts of closed models, open models, datasets, and
    total parameters.

    In strict mode (the default) unknown-access models are folded into the
    closed/restricted count so that closed + open partitions all models; the
    non-strict mode tracks them separately.
    """
    dated = [r.created for r in snapshot.models + snapshot.datasets]
    if grid_start is None:
        grid_start = min(dated) if dated else date(2018, 1, 1)
    if grid_end is None:
        grid_end = max(dated) if dated else grid_start
    grid = month_grid(grid_start, grid_end)
    closed, open_, unknown, n_datasets, params = [], [], [], [], []
    for t in grid:
        c = o = u = 0
        p = 0.0
        for m in snapshot.models:
            if m.created > t:
                continue
            if m.access == "open":
                o += 1
            elif m.access == "closed_or_restricted":
                c += 1
            elif strict_access:
                c += 1
            else:
                u += 1
            if m.params is not None:
                p += m.params
        d = sum(1 for r in snapshot.datasets if r.created <= t)
        closed.append(c)
        open_.append(o)
        unknown.append(u)
        n_datasets.append(d)
        params.append(p)
    return CumulativeSeries(
        grid=grid,
        closed=tuple(closed),
        open=tuple(open_),
        unknown=tuple(unknown),
        datasets=tuple(n_datasets),
        params_total=tuple(params),
        strict_access=strict_access,
    )


def snapshot_to_json(snapshot: Snapshot) -> str:
    """Serialize a normalized snapshot (cache format; ingest -> serialize ->
    load round-trips to an identical value)."""

    def rec(r: AssetRecord) -> dict:
        return {
            "name": r.name,
            "asset_type": r.asset_type,
            "organization": r.organization,
            "created": r.created.isoformat(),
            "access": r.access,
            "raw_size": r.raw_size,
            "params": r.params,
            "modality": r.modality,
            "region": r.region,
        }

    payload = {
        "snapshot_label": snapshot.snapshot_label,
        "records": [rec(r) for r in snapshot.records],
        "ingest_warnings": list(snapshot.ingest_warnings),
        "skipped_rows": snapshot.skipped_rows,
        "imputed_count": snapshot.imputed_count,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def snapshot_from_json(text: str) -> Snapshot:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"snapshot cache is not valid JSON: {exc}") from exc
    buckets: dict[str, list[AssetRecord]] = {"model": [], "dataset": [], "other": []}
    for r in payload["records"]:
        record = AssetRecord(
            name=r["name"],
            asset_type=r["asset_type"],
            organization=r["organization"],
            created=date.fromisoformat(r["created"]),
            access=r["access"],
            raw_size=r["raw_size"],
            params=r["params"],
            modality=r["modality"],
            region=r["region"],
        )
        buckets[record.asset_type].append(record)
    return Snapshot(
        models=tuple(buckets["model"]),
        datasets=tuple(buckets["dataset"]),
        others=tuple(buckets["other"]),
        ingest_warnings=tuple(payload["ingest_warnings"]),
        skipped_rows=payload["skipped_rows"],
        snapshot_label=payload["snapshot_label"],
        imputed_count=payload["imputed_count"],
    )


def bundled_data_path(filename: str) -> Path:
    """Path of a data file shipped inside the package."""
    return Path(__file__).parent / "data" / filename


def load_bundled_snapshot(region_map: dict[str, str] | None = None) -> Snapshot:
    """The snapshot shipped with the package (January 2025 vintage).

    The bundled CSV is a synthetic reconstruction calibrated to published
    aggregate statistics of the public model/dataset ecosystem; it is meant
    for demos and reproducible tests, not as a source of per-model facts.
    """
    if region_map is None:
        region_map = load_region_map(bundled_data_path("region_map.json"))
    return ingest_csv(
        bundled_data_path("ecosystem_2025.csv"), region_map, label="bundled-2025-01"
    )
