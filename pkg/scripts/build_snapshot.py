#!/usr/bin/env python3
"""Generate the bundled ecosystem snapshot (synthetic, calibrated).

The real upstream catalog cannot be redistributed here, so the bundled CSV is
a deterministic synthetic reconstruction calibrated to published aggregate
statistics of the public model/dataset ecosystem as of January 2025:

* 359 models and 112 datasets in total;
* cumulative parameter count ~1.3e10 at 2019-01 and ~2.2e13 at 2025-01
  (after mean imputation of missing sizes);
* exponential growth of the candidate-origin bounds N_k1/N_k2/N_k3 over
  2019-01..2025-01 with rates near 1.39 / 1.95 / 2.51 per year;
* text modality dominant, multimodal fastest-growing, North America leading
  early with Asia closing the gap.

Individual rows (names, organizations, exact dates, sizes) are fabricated;
only the aggregates above are meaningful. Running this script rewrites
src/identlim/data/ecosystem_2025.csv and region_map.json, then re-verifies
the calibration through the package's own ingest/fit pipeline.
"""

from __future__ import annotations

import csv
import json
import math
import random
from datetime import date
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "identlim" / "data"

START = date(2018, 6, 1)
END = date(2025, 1, 1)

# Cumulative trajectory targets (value at END, growth rate per year).
OPEN_END, OPEN_RATE = 265, 0.87
CLOSED_END, CLOSED_RATE = 94, 0.62
DATASET_END, DATASET_RATE = 112, 0.57

PARAMS_TARGET_2025 = 2.2e13
EARLY_SIZES = [1.1e10, 1.5e9, 4.0e8]  # models dated <= 2019-01
MISSING_SIZE_FRACTION = 0.30

ORGS = {
    "north_america": [
        "Aurora AI",
        "Cascadia Labs",
        "Foundry Research",
        "Beacon Intelligence",
        "Redwood Compute",
        "Meridian Systems",
        "Great Lakes AI",
    ],
    "europe": ["Alpine Dynamics", "Nordlys AI", "Hanseatic Research", "Loire Institute", "Iberia Cognition"],
    "asia": ["Pacific Lattice", "Han River AI", "Monsoon Labs", "Taihang Intelligence", "Sakura Cognition", "Deccan AI"],
    "other": ["Austral Research", "Andes Compute", "Sahara Insight"],
}

FAMILY_WORDS = [
    "borealis", "quill", "ledger", "matterhorn", "tide", "harrier", "lantern",
    "poppy", "cobble", "saffron", "kestrel", "umber", "brook", "garnet",
    "lyric", "onyx", "pavo", "raku", "senna", "talus", "verve", "willow",
]


def months(start: date, end: date) -> list[date]:
    out, t = [], start
    while t <= end:
        out.append(t)
        t = date(t.year + 1, 1, 1) if t.month == 12 else date(t.year, t.month + 1, 1)
    return out


def years_until_end(t: date) -> float:
    return (END.year - t.year) + (END.month - t.month) / 12.0


def cumulative_target(t: date, end_value: float, rate: float) -> int:
    return round(end_value * math.exp(-rate * years_until_end(t)))


def monthly_counts(end_value: float, rate: float) -> dict[date, int]:
    counts, released = {}, 0
    for t in months(START, END):
        target = cumulative_target(t, end_value, rate)
        counts[t] = max(0, target - released)
        released += counts[t]
    return counts


def year_fraction(t: date) -> float:
    return t.year + (t.month - 1) / 12.0


def region_for(rng: random.Random, t: date) -> str:
    progress = (year_fraction(t) - 2018.5) / 6.5  # 0 at start, ~1 at end
    p_asia = 0.08 + 0.30 * progress
    p_europe = 0.17
    p_other = 0.06
    r = rng.random()
    if r < p_asia:
        return "asia"
    if r < p_asia + p_europe:
        return "europe"
    if r < p_asia + p_europe + p_other:
        return "other"
    return "north_america"


def modality_for(rng: random.Random, t: date) -> str:
    progress = max(0.0, (year_fraction(t) - 2021.4) / 3.6)
    p_multi = 0.30 * progress
    p_vision = 0.13
    p_audio = 0.06
    p_odd = 0.04
    r = rng.random()
    if r < p_multi:
        return rng.choice(["text; image", "multimodal", "image, text"])
    if r < p_multi + p_vision:
        return rng.choice(["image", "vision", "video"])
    if r < p_multi + p_vision + p_audio:
        return rng.choice(["speech", "audio"])
    if r < p_multi + p_vision + p_audio + p_odd:
        return rng.choice(["other", ""])
    return rng.choice(["text", "text", "text", "language", "code"])


def raw_size_value(rng: random.Random, t: date) -> float:
    """Provisional parameter count; rescaled later to hit the 2025 total."""
    progress = (year_fraction(t) - 2018.5) / 6.5
    low = 8.2 + 1.3 * progress
    high = 9.6 + 2.6 * progress
    return 10 ** rng.uniform(low, high)


def format_size(value: float) -> str:
    for scale, suffix in ((1e12, "T"), (1e9, "B"), (1e6, "M"), (1e3, "K")):
        if value >= scale:
            quantity = value / scale
            text = f"{quantity:.0f}" if quantity >= 10 else f"{quantity:.1f}"
            return f"{text}{suffix} parameters"
    return f"{value:.0f} parameters"


def parse_back(text: str) -> float:
    quantity, suffix = text.split(" ")[0][:-1], text.split(" ")[0][-1]
    return float(quantity) * {"K": 1e3, "M": 1e6, "B": 1e9, "T": 1e12}[suffix]


def build() -> None:
    rng = random.Random(20250115)
    org_region = {org: region for region, orgs in ORGS.items() for org in orgs}
    org_pool = list(org_region)
    family_of_org = {
        org: FAMILY_WORDS[i % len(FAMILY_WORDS)] for i, org in enumerate(sorted(org_pool))
    }
    serial_of_org: dict[str, int] = {}

    open_counts = monthly_counts(OPEN_END, OPEN_RATE)
    closed_counts = monthly_counts(CLOSED_END, CLOSED_RATE)
    dataset_counts = monthly_counts(DATASET_END, DATASET_RATE)

    models: list[dict] = []
    for t in months(START, END):
        for access_label, count in (("open", open_counts[t]), ("closed", closed_counts[t])):
            for _ in range(count):
                region = region_for(rng, t)
                org = rng.choice(ORGS[region])
                serial_of_org[org] = serial_of_org.get(org, 0) + 1
                name = f"{family_of_org[org]}-{serial_of_org[org]}"
                if access_label == "closed":
                    access = rng.choice(["closed", "limited", "api"])
                else:
                    access = "open"
                models.append(
                    {
                        "name": name,
                        "type": "model",
                        "organization": org,
                        "created_date": f"{t.year}-{t.month:02d}",
                        "access": access,
                        "size_value": raw_size_value(rng, t),
                        "modality": modality_for(rng, t),
                        "t": t,
                    }
                )

    # Fixed early sizes: the first rows by date carry the known small models.
    models.sort(key=lambda m: (m["t"], m["name"]))
    early = [m for m in models if m["t"] <= date(2019, 1, 1)]
    if len(early) != len(EARLY_SIZES):
        raise SystemExit(
            f"calibration drift: expected {len(EARLY_SIZES)} models up to 2019-01, got {len(early)}"
        )
    for m, size in zip(early, EARLY_SIZES):
        m["size_value"] = size
        m["size_known"] = True

    late = [m for m in models if m["t"] > date(2019, 1, 1)]
    for m in late:
        m["size_known"] = rng.random() >= MISSING_SIZE_FRACTION

    # Rescale late known sizes so the post-imputation 2025 total hits target:
    # total = (S_early + g * S_late) * (1 + missing / known).
    n_known = sum(1 for m in models if m["size_known"])
    n_missing = len(models) - n_known
    s_early = sum(m["size_value"] for m in early)
    s_late = sum(m["size_value"] for m in late if m["size_known"])
    gamma = (PARAMS_TARGET_2025 / (1 + n_missing / n_known) - s_early) / s_late
    for m in late:
        if m["size_known"]:
            m["size_value"] *= gamma

    rows: list[dict] = []
    for m in models:
        size_text = format_size(m["size_value"]) if m["size_known"] else rng.choice(["", "unknown"])
        rows.append(
            {
                "name": m["name"],
                "type": "model",
                "organization": m["organization"],
                "created_date": m["created_date"],
                "access": m["access"],
                "size": size_text,
                "modality": m["modality"],
                "_t": m["t"],
            }
        )

    dataset_serial = 0
    for t in months(START, END):
        for _ in range(dataset_counts[t]):
            dataset_serial += 1
            region = region_for(rng, t)
            org = rng.choice(ORGS[region])
            # A couple of January releases carry year-only dates to exercise
            # the defaulting path without moving any counts.
            if t.month == 1 and dataset_serial % 17 == 0:
                created = str(t.year)
            else:
                created = f"{t.year}-{t.month:02d}"
            rows.append(
                {
                    "name": f"corpus-{dataset_serial:03d}",
                    "type": "dataset",
                    "organization": org,
                    "created_date": created,
                    "access": "open",
                    "size": rng.choice(["", "2.1TB", "480GB", "90M examples"]),
                    "modality": rng.choice(["text", "text", "text; image", "image"]),
                    "_t": t,
                }
            )

    # A few non-model, non-dataset assets plus one malformed row: ingestion
    # texture, excluded from every analytic count.
    rows.append(
        {
            "name": "helpdesk-suite",
            "type": "application",
            "organization": "Aurora AI",
            "created_date": "2022-03",
            "access": "closed",
            "size": "",
            "modality": "text",
            "_t": date(2022, 3, 1),
        }
    )
    rows.append(
        {
            "name": "studio-canvas",
            "type": "application",
            "organization": "Sakura Cognition",
            "created_date": "2023-11",
            "access": "open",
            "size": "",
            "modality": "image",
            "_t": date(2023, 11, 1),
        }
    )
    rows.append(
        {
            "name": "legacy-entry",
            "type": "application",
            "organization": "Foundry Research",
            "created_date": "early beta",
            "access": "open",
            "size": "",
            "modality": "",
            "_t": END,
        }
    )

    rows.sort(key=lambda r: (r["_t"], r["type"], r["name"]))
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    csv_path = DATA_DIR / "ecosystem_2025.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["name", "type", "organization", "created_date", "access", "size", "modality"]
        )
        writer.writeheader()
        for row in rows:
            writer.writerow({k: v for k, v in row.items() if k != "_t"})

    region_path = DATA_DIR / "region_map.json"
    region_entries = [
        {"organization": org, "region": region}
        for region, orgs in ORGS.items()
        for org in orgs
    ]
    region_entries.sort(key=lambda e: e["organization"])
    region_path.write_text(json.dumps(region_entries, indent=2) + "\n", encoding="utf-8")

    verify(csv_path)


def verify(csv_path: Path) -> None:
    from identlim.ecosystem import cumulative_series, impute_params, load_bundled_snapshot
    from identlim.growth import fit_exponential, n_series, slice_series

    snap = load_bundled_snapshot()
    print(f"models={len(snap.models)} datasets={len(snap.datasets)} others={len(snap.others)}")
    print(f"warnings={len(snap.ingest_warnings)} skipped={snap.skipped_rows}")
    imputed = impute_params(snap)
    series = cumulative_series(imputed)
    for year in (2019, 2025):
        idx = series.at(date(year, 1, 1))
        print(f"params@{year}-01 = {series.params_total[idx]:.4g}")
    w0, w1 = date(2019, 1, 1), date(2025, 1, 1)
    for k in (1, 2, 3):
        fit = fit_exponential(n_series(series, k), w0, w1)
        print(
            f"k={k}: b={fit.b:.3f} tau={fit.tau:.3f} r2={fit.r2:.3f} "
            f"n_end={n_series(series, k)[-1].n}"
        )
    slices = slice_series(snap, "modality", k=1)
    for label, points in sorted(slices.items()):
        usable = [p for p in points if p.n > 0]
        if len(usable) < 3:
            print(f"slice {label}: too few points")
            continue
        fit = fit_exponential(points, date(2021, 7, 1), w1)
        print(f"slice {label}: b={fit.b:.3f} (n_end={points[-1].n})")


if __name__ == "__main__":
    build()
