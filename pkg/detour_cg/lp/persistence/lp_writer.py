from pathlib import Path

from detour_cg.lp.domain.entities import LpModel, Sense
from detour_cg.lp.domain.service import ILpWriter


def _terms(pairs) -> str:
    parts = []
    for var, coef in pairs:
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        parts.append(f"{sign} {abs(coef):.12g} {var}")
    text = " ".join(parts) or "0"
    return text[2:] if text.startswith("+ ") else text


class CplexLpWriter(ILpWriter):
    """Writes models in CPLEX LP text format for cross-checking elsewhere"""

    def write(self, model: LpModel, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(model))
        return path

    @staticmethod
    def to_text(model: LpModel) -> str:
        lines = [f"\\ {model.name}", "Minimize"]
        lines.append(
            " obj: " + _terms((v.name, v.objective) for v in model.variables.values())
        )
        lines.append("Subject To")
        operator = {Sense.LE: "<=", Sense.GE: ">=", Sense.EQ: "="}
        for row in model.rows.values():
            lines.append(
                f" {row.name}: {_terms(row.coefficients)} {operator[row.sense]} {row.rhs:.12g}"
            )
        bounded = [v for v in model.variables.values() if v.upper is not None]
        if bounded:
            lines.append("Bounds")
            lines.extend(f" 0 <= {v.name} <= {v.upper:.12g}" for v in bounded)
        lines.append("End")
        return "\n".join(lines) + "\n"
