from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from detour_cg.columns.domain import Column


@dataclass(eq=False)
class Label:
    """Partial path from the start depot ending at `node`.

    `visited` is an item bitmask (elementarity); `cost` is the running reduced
    cost excluding the final arc into the end depot.
    """
    __slots__ = ("node", "load", "visited", "cost", "parent", "alive")

    node: int
    load: int
    visited: int
    cost: float
    parent: Optional["Label"]
    alive: bool

    def path(self) -> Tuple[int, ...]:
        nodes = []
        label = self
        while label is not None:
            nodes.append(label.node)
            label = label.parent
        return tuple(reversed(nodes))


@dataclass
class PricingResult:
    """Best column found (None means the empty route/assignment) and its reduced cost"""
    column: Optional[Column]
    reduced_cost: float
    labels_expanded: int = 0
    block_minima: Dict[int, float] = field(default_factory=dict)
