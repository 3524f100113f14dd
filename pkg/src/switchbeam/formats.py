"""Stable on-disk formats: schedule documents, JSON emission, fixture CSVs.

All numbers are written with 15 significant digits and a ``.`` decimal point
regardless of locale, so identical inputs always produce identical bytes.
Inline CLI runs canonicalize their schedules through this representation,
which makes them byte-for-byte reproducible from a saved schedule file.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .array_model import ArrayConfig, ArraySchedule, ElementSchedule, PulseTrain


def format_float(x: float) -> str:
    """Render a float with 15 significant digits."""
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(float(x), ".15g")


def dump_json(obj, indent: int = 0) -> str:
    """Serialize dicts/lists/scalars to JSON with 15-significant-digit floats."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}"{k}": {dump_json(v, indent + 2)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            return "[]"
        items = [f"{inner}{dump_json(v, indent + 2)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def write_csv(header: list[str], rows: list[list]) -> str:
    """Render a CSV document with deterministic float formatting."""
    def cell(v) -> str:
        if v is None:
            return ""
        if isinstance(v, str):
            return v
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return str(int(v))
        return format_float(float(v))

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def schedule_to_doc(schedule: ArraySchedule, theta_deg: float | None = None) -> dict:
    """Schedule document: config, duty ratio, and normalized train timings."""
    cfg = schedule.config
    if theta_deg is None:
        theta_deg = math.degrees(schedule.steer_angle)
    return {
        "config": {
            "elements": cfg.n_elements,
            "spacing_wavelengths": cfg.element_spacing / cfg.wavelength,
            "f0_hz": cfg.carrier_freq,
            "fp_hz": cfg.pulse_freq,
            "paths": cfg.path_count,
        },
        "alpha": schedule.duty_ratio,
        "theta_deg": theta_deg,
        "elements": [
            {
                "index": element.element_index,
                "paths": [
                    {
                        "phase_deg": math.degrees(phase),
                        "onset_pos_norm": train.onset_pos_norm,
                        "onset_neg_norm": train.onset_neg_norm,
                        "width_norm": train.width_norm,
                    }
                    for phase, train in element.paths
                ],
            }
            for element in schedule.elements
        ],
    }


def schedule_from_doc(doc: dict) -> ArraySchedule:
    """Rebuild an ArraySchedule from its document form."""
    try:
        c = doc["config"]
        config = ArrayConfig(
            n_elements=int(c["elements"]),
            element_spacing=float(c["spacing_wavelengths"]) * _wavelength(float(c["f0_hz"])),
            carrier_freq=float(c["f0_hz"]),
            pulse_freq=float(c["fp_hz"]),
            path_count=int(c["paths"]),
        )
        period = config.period
        elements = []
        for e in doc["elements"]:
            paths = tuple(
                (
                    math.radians(float(p["phase_deg"])),
                    PulseTrain(
                        period,
                        float(p["width_norm"]),
                        float(p["onset_pos_norm"]),
                        float(p["onset_neg_norm"]),
                    ),
                )
                for p in e["paths"]
            )
            elements.append(ElementSchedule(int(e["index"]), paths))
        return ArraySchedule(
            config=config,
            duty_ratio=float(doc["alpha"]),
            steer_angle=math.radians(float(doc["theta_deg"])),
            elements=tuple(elements),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed schedule document: {exc}") from exc


def canonical_schedule(schedule: ArraySchedule, theta_deg: float | None = None) -> ArraySchedule:
    """Round-trip a schedule through its document form.

    Pins every number to the 15-significant-digit file representation so an
    inline run and a ``--schedule`` run produce identical output bytes.
    """
    return schedule_from_doc(json.loads(dump_json(schedule_to_doc(schedule, theta_deg))))


def _wavelength(f0: float) -> float:
    from .array_model import C_VACUUM

    return C_VACUUM / f0


def read_constellation_csv(text: str) -> list[complex]:
    """Parse ``i,q`` rows (an optional header line is skipped)."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if lineno == 1 and any(not _is_number(p) for p in parts):
            continue
        if len(parts) != 2:
            raise ValueError(f"constellation line {lineno}: expected two columns, got {len(parts)}")
        if not all(_is_number(p) for p in parts):
            raise ValueError(f"constellation line {lineno}: non-numeric value")
        points.append(complex(float(parts[0]), float(parts[1])))
    if not points:
        raise ValueError("constellation file holds no points")
    return points


def read_fixture_csv(text: str) -> dict[str, list[tuple[float, float]]]:
    """Parse a reference-curve CSV: ten_log_alpha, <value>, series_label.

    The value column is ``efficiency_percent`` for efficiency fixtures; the
    back-off fixture carries ``pbo_db`` in the same position.
    """
    series: dict[str, list[tuple[float, float]]] = {}
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("fixture file is empty")
    header = [h.strip() for h in lines[0].split(",")]
    if len(header) != 3 or header[0] != "ten_log_alpha" or header[2] != "series_label":
        raise ValueError("fixture header must be ten_log_alpha,<value>,series_label")
    for lineno, raw in enumerate(lines[1:], start=2):
        parts = [p.strip() for p in raw.split(",")]
        if len(parts) != 3 or not _is_number(parts[0]) or not _is_number(parts[1]):
            raise ValueError(f"fixture line {lineno}: malformed row")
        series.setdefault(parts[2], []).append((float(parts[0]), float(parts[1])))
    return series


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True
