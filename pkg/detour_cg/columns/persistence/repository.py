import json
from pathlib import Path
from typing import List, Sequence

from detour_cg.columns.domain.entities import Column, ColumnKind
from detour_cg.columns.domain.service import IColumnRepository


class JsonLinesColumnRepository(IColumnRepository):
    """One JSON object per column, in pool order"""

    def dump(self, columns: Sequence[Column], path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as handle:
            for column_id, column in enumerate(columns):
                record = {
                    "id": column_id,
                    "kind": column.kind.value,
                    "cost": column.cost,
                    "covers": sorted(column.covers),
                    "visit_order": list(column.visit_order),
                    "facility": column.facility,
                    "open_cost": column.open_cost,
                }
                handle.write(json.dumps(record) + "\n")
        return path

    def load(self, path: Path) -> List[Column]:
        columns = []
        for line in path.read_text().splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            columns.append(
                Column(
                    kind=ColumnKind(record["kind"]),
                    covers=frozenset(record["covers"]),
                    cost=record["cost"],
                    visit_order=tuple(record["visit_order"]),
                    facility=record["facility"],
                    open_cost=record["open_cost"],
                )
            )
        return columns
