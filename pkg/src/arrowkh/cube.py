"""The bifurcation cube: every smoothing state plus classified edges."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .knotio import VirtualLinkDiagram
from .statesum import DEFAULT_SIDES, DiagramPorts, SideTable, StateResolution

__all__ = [
    "EdgeKind",
    "CubeEdge",
    "BifurcationCube",
    "CubeSizeError",
    "build_cube",
    "classify_edge",
    "state_labels",
    "DEFAULT_STATE_LIMIT",
]

DEFAULT_STATE_LIMIT = 20


class CubeSizeError(ValueError):
    pass


class EdgeKind(str, Enum):
    MERGE21 = "Merge21"
    SPLIT12 = "Split12"
    SINGLE11 = "Single11"


@dataclass(frozen=True)
class CubeEdge:
    source: int
    target: int
    crossing: int  # index 0..n-1
    kind: EdgeKind
    source_loops: tuple[int, ...]  # loops touching the crossing before the flip
    target_loops: tuple[int, ...]
    # untouched loops: source loop index -> target loop index
    loop_map: tuple[tuple[int, int], ...]


class BifurcationCube:
    def __init__(self, d: VirtualLinkDiagram, sides: SideTable = DEFAULT_SIDES,
                 limit: int = DEFAULT_STATE_LIMIT):
        if d.n > limit:
            raise CubeSizeError(f"{d.n} crossings exceeds the cube limit of {limit}")
        self.diagram = d
        self.sides = sides
        self.ports = DiagramPorts(d)
        self.n = self.ports.n
        self.states: list[StateResolution] = [self.ports.resolve(s, sides) for s in range(1 << self.n)]
        self._arc_loop = [self._arc_index(st) for st in self.states]
        self._edges: dict[tuple[int, int], CubeEdge] = {}
        for s in range(1 << self.n):
            for k in range(self.n):
                if not (s >> k) & 1:
                    self._edges[(s, k)] = self._make_edge(s, k)

    @staticmethod
    def _arc_index(st: StateResolution) -> list[int]:
        out: dict[int, int] = {}
        for li, loop in enumerate(st.loops):
            for a in loop.arcs:
                out[a] = li
        return [out[a] for a in range(len(out))]

    def _incident(self, sel: int, k: int) -> tuple[int, ...]:
        arc_loop = self._arc_loop[sel]
        found = []
        for port in range(4 * k, 4 * k + 4):
            li = arc_loop[self.ports.port_arc[port]]
            if li not in found:
                found.append(li)
        return tuple(sorted(found))

    def _make_edge(self, s: int, k: int) -> CubeEdge:
        t = s | (1 << k)
        src, tgt = self._incident(s, k), self._incident(t, k)
        if len(src) == 2 and len(tgt) == 1:
            kind = EdgeKind.MERGE21
        elif len(src) == 1 and len(tgt) == 2:
            kind = EdgeKind.SPLIT12
        elif len(src) == 1 and len(tgt) == 1:
            kind = EdgeKind.SINGLE11
        else:  # pragma: no cover - impossible for a single resmoothing
            raise AssertionError(f"bad bifurcation {src} -> {tgt}")
        by_arcs = {loop.arcs: li for li, loop in enumerate(self.states[t].loops) if loop.arcs}
        free_t = [li for li, loop in enumerate(self.states[t].loops) if not loop.arcs]
        free_s = [li for li, loop in enumerate(self.states[s].loops) if not loop.arcs]
        mapping = []
        for li, loop in enumerate(self.states[s].loops):
            if li in src or not loop.arcs:
                continue
            mapping.append((li, by_arcs[loop.arcs]))
        mapping.extend(zip(free_s, free_t))
        return CubeEdge(s, t, k, kind, src, tgt, tuple(sorted(mapping)))

    def edge(self, state: int, crossing: int) -> CubeEdge:
        return self._edges[(state, crossing)]

    @property
    def edges(self) -> list[CubeEdge]:
        return list(self._edges.values())

    def out_edges(self, state: int) -> list[CubeEdge]:
        return [self._edges[(state, k)] for k in range(self.n) if not (state >> k) & 1]

    def has_single11(self) -> bool:
        return any(e.kind is EdgeKind.SINGLE11 for e in self._edges.values())

    def dump(self) -> str:
        """One line per state (selector word, arrow multiset), one per edge."""
        lines = []
        for st in self.states:
            word = format(st.selector, f"0{self.n}b")[::-1] if self.n else "-"
            lines.append(f"state {word} arrows={sorted(st.arrow_numbers)}")
        for e in self._edges.values():
            lines.append(f"edge {e.source}->{e.target} crossing={self.ports.crossing_ids[e.crossing]} {e.kind.value}")
        return "\n".join(lines)


def build_cube(d: VirtualLinkDiagram, sides: SideTable = DEFAULT_SIDES,
               limit: int = DEFAULT_STATE_LIMIT) -> BifurcationCube:
    return BifurcationCube(d, sides, limit)


def classify_edge(cube: BifurcationCube, state: int, crossing: int) -> EdgeKind:
    """Kind of the edge flipping ``crossing`` (an id) from A to B in ``state``."""
    k = cube.ports.index[crossing]
    if (state >> k) & 1:
        raise ValueError(f"crossing {crossing} is already B-smoothed in state {state}")
    return cube.edge(state, k).kind


def state_labels(cube: BifurcationCube, state: int) -> tuple[int, ...]:
    """Sorted multiset of nonzero arrow numbers of a state."""
    return tuple(sorted(a for a in cube.states[state].arrow_numbers if a))
