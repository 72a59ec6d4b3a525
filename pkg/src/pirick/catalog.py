"""Property catalog: one CSV row per module instance in a corpus.

The header is versioned and the column order is fixed; re-running over an
unchanged corpus yields a byte-identical file.  Rows are sorted
lexicographically by instance name.  A module whose analysis fails is
recorded as a row with `error` in every property column, and the run
continues.
"""

from __future__ import annotations

import pathlib

from .caps import Caps, DEFAULT_CAPS
from .errors import PirickError
from .io import load_dir
from .properties import PROPERTY_ORDER, analyze

CATALOG_VERSION = "pirick catalog v1"

HEADER_COLUMNS = (("name", "module_order", "end_order", "generators")
                  + PROPERTY_ORDER
                  + ("max_witness_n", "idempotent_count"))


def catalog_rows(instances, caps: Caps = DEFAULT_CAPS) -> list:
    """Build catalog rows (lists of strings) for the module instances."""
    rows = []
    modules = sorted((i for i in instances if i.kind == "module"),
                     key=lambda i: i.name)
    for inst in modules:
        try:
            report = analyze(inst.module, caps, name=inst.name)
        except PirickError:
            rows.append([inst.name, str(inst.module.order), "error", "error"]
                        + ["error"] * len(PROPERTY_ORDER) + ["error", "error"])
            continue
        row = [report.name, str(report.module_order),
               "" if report.end_order is None else str(report.end_order),
               str(report.generators)]
        row.extend(report.statuses[p] for p in PROPERTY_ORDER)
        row.append("" if report.max_witness_n is None
                   else str(report.max_witness_n))
        row.append("" if report.idempotent_count is None
                   else str(report.idempotent_count))
        rows.append(row)
    return rows


def render_catalog(rows) -> str:
    lines = [f"# {CATALOG_VERSION}", ",".join(HEADER_COLUMNS)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def write_catalog(directory, out_path, caps: Caps = DEFAULT_CAPS) -> int:
    """Catalog every module file under a directory; returns the row count."""
    instances = load_dir(directory, caps)
    rows = catalog_rows(instances, caps)
    pathlib.Path(out_path).write_text(render_catalog(rows), encoding="utf-8")
    return len(rows)
