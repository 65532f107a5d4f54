"""Named link catalog: bundled CSV plus ingestion of user tables."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .diagram import Diagram, PDError, parse_pd

COLUMNS = ("id", "components", "pd", "note")


class CatalogError(ValueError):
    """Schema, parse or duplicate-id problem in a catalog source."""


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    pd: str
    components: int
    note: str = ""

    def diagram(self) -> Diagram:
        d = parse_pd(self.pd)
        if not d.crossings and not d.free_loops:
            # bare "PD[]" stands for the crossingless unlink of the declared size
            d = parse_pd(self.pd, free_loops=self.components)
        return d

    def to_json(self) -> dict:
        return {"id": self.id, "components": self.components, "pd": self.pd, "note": self.note}


def _validate(entry: CatalogEntry, where: str) -> CatalogEntry:
    try:
        d = entry.diagram()
    except PDError as exc:
        raise CatalogError(f"{where}: id {entry.id!r}: {exc}") from None
    if d.n_components != entry.components:
        raise CatalogError(
            f"{where}: id {entry.id!r} declares {entry.components} components, "
            f"PD code has {d.n_components}"
        )
    return entry


class Catalog:
    def __init__(self, entries: Iterable[CatalogEntry] = ()):
        self._entries: dict[str, CatalogEntry] = {}
        for e in entries:
            self.add(e)

    def add(self, entry: CatalogEntry, where: str = "") -> None:
        if entry.id in self._entries:
            prefix = f"{where}: " if where else ""
            raise CatalogError(f"{prefix}duplicate id {entry.id!r}")
        self._entries[entry.id] = entry

    def __getitem__(self, key: str) -> CatalogEntry:
        try:
            return self._entries[key]
        except KeyError:
            raise KeyError(f"unknown link id {key!r}") from None

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    @property
    def ids(self) -> list[str]:
        return list(self._entries)

    def diagram(self, key: str) -> Diagram:
        return self[key].diagram()

    def merged(self, other: Catalog) -> Catalog:
        """Entries of ``other`` replace same-id entries of this catalog."""
        out = Catalog(e for e in self if e.id not in other)
        for e in other:
            out.add(e)
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for e in self:
            w.writerow([e.id, e.components, e.pd, e.note])
        return buf.getvalue()


def _parse_csv(text: str, source: str) -> Catalog:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return Catalog()
    missing = {"id", "components", "pd"} - set(reader.fieldnames)
    if missing:
        raise CatalogError(f"{source}: missing columns {sorted(missing)}")
    cat = Catalog()
    for row in reader:
        where = f"{source}:{reader.line_num}"
        if not any((v or "").strip() for v in row.values()):
            continue
        try:
            comps = int(row["components"])
        except (TypeError, ValueError):
            raise CatalogError(f"{where}: components must be an integer") from None
        entry = CatalogEntry(row["id"].strip(), row["pd"].strip(), comps, (row.get("note") or "").strip())
        if not entry.id:
            raise CatalogError(f"{where}: empty id")
        cat.add(_validate(entry, where), where)
    return cat


def _parse_json(text: str, source: str) -> Catalog:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{source}:{exc.lineno}: malformed JSON ({exc.msg})") from None
    if isinstance(obj, dict):
        obj = obj.get("entries", [])
    if not isinstance(obj, list):
        raise CatalogError(f"{source}: expected a list of entries")
    cat = Catalog()
    for k, item in enumerate(obj, 1):
        where = f"{source}: entry {k}"
        if isinstance(item, str):
            item = {"pd": item}
        if not isinstance(item, dict) or "pd" not in item:
            raise CatalogError(f"{where}: needs a 'pd' field")
        pd = item["pd"] if isinstance(item["pd"], str) else json.dumps(item["pd"])
        ident = str(item.get("id") or f"link{k}")
        comps = item.get("components")
        if comps is None:
            try:
                comps = CatalogEntry(ident, pd, 0).diagram().n_components
            except PDError as exc:
                raise CatalogError(f"{where}: {exc}") from None
        entry = CatalogEntry(ident, pd, int(comps), str(item.get("note", "")))
        cat.add(_validate(entry, where), where)
    return cat


def _parse_raw(text: str, source: str) -> Catalog:
    cat = Catalog()
    k = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        k += 1
        where = f"{source}:{lineno}"
        try:
            d = parse_pd(line)
        except PDError as exc:
            raise CatalogError(f"{where}: {exc}") from None
        cat.add(CatalogEntry(f"link{k}", line, d.n_components, f"{source} line {lineno}"), where)
    return cat


def parse_catalog(text: str, source: str = "<catalog>", fmt: str | None = None) -> Catalog:
    if fmt is None:
        lines = [ln.strip() for ln in text.splitlines()]
        stripped = next((ln for ln in lines if ln and not ln.startswith("#")), "")
        if not stripped:
            return Catalog()
        if stripped[0] in "[{":
            fmt = "json"
        elif stripped.startswith("PD"):
            fmt = "raw"
        else:
            fmt = "csv"
    if fmt == "json":
        return _parse_json(text, source)
    if fmt == "raw":
        return _parse_raw(text, source)
    if fmt == "csv":
        return _parse_csv(text, source)
    raise CatalogError(f"unknown catalog format {fmt!r}")


def ingest(path: str | Path) -> Catalog:
    """Read a CSV, JSON or raw PD-per-line catalog file."""
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise CatalogError(f"cannot read {p}: {exc.strerror}") from None
    fmt = {".csv": "csv", ".json": "json"}.get(p.suffix.lower())
    return parse_catalog(text, p.name, fmt if text.strip() else None)


def bundled() -> Catalog:
    text = resources.files("skein_f").joinpath("data/catalog.csv").read_text()
    return parse_catalog(text, "catalog.csv", "csv")


def load(path: str | Path | None = None) -> Catalog:
    """Bundled catalog, optionally extended (and overridden) by a user file."""
    base = bundled()
    return base.merged(ingest(path)) if path else base
