"""
Export helpers - CSV and JSON payloads

Payloads are rendered to text so the same bytes go to a file or to stdout.
CSV files open with "# key=value" comment lines (unit first, then
provenance), followed by a header row and data rows formatted with "%g"
at a fixed number of significant digits.
"""

import csv
import io
import json
from typing import Any, Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from utils.models import JamSweepRow, RegionPolytope

UNIT = "bits per channel use"


def format_number(x: float, digits: int = 12) -> str:
    # normalize -0 so a reproduced run is byte-identical
    return f"{float(x) + 0.0:.{digits}g}"


def csv_text(
    columns: Sequence[str],
    rows: Iterable[Sequence[float]],
    header_kv: Optional[Dict[str, Any]] = None,
    digits: int = 12,
) -> str:
    """Render rows as CSV with the unit and provenance comment header."""
    buf = io.StringIO()
    buf.write(f"# unit={UNIT}\n")
    for k, v in (header_kv or {}).items():
        buf.write(f"# {k}={v}\n")

    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(x, digits) for x in row])
    return buf.getvalue()


def region_csv(region: RegionPolytope, header_kv: Optional[Dict[str, Any]] = None, digits: int = 12) -> str:
    return csv_text(("r1", "r2"), ((v.r_1, v.r_2) for v in region.vertices), header_kv, digits)


def jam_sweep_csv(rows: List[JamSweepRow], header_kv: Optional[Dict[str, Any]] = None, digits: int = 12) -> str:
    return csv_text(("p2", "rate_1"), ((r.p_2, r.rate) for r in rows), header_kv, digits)


def json_text(payload: Any) -> str:
    """Pretty JSON with sorted keys; pydantic models are dumped in JSON mode first."""
    if isinstance(payload, BaseModel):
        payload = payload.model_dump(mode="json")
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def read_csv_rows(text: str) -> List[List[float]]:
    """Parse data rows back from csv_text output, skipping comments and the header."""
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    return [[float(x) for x in row] for row in csv.reader(lines[1:])]
