"""Atom data of a diagram and the bounds it controls.

The atom glues a disc onto every loop of the all-A and all-B states along
the 4-valent shadow, so ``chi = gamma_A + gamma_B - n``.  Its genus feeds
the span bound ``4n - 4g`` and the thickness bound ``2 + g``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .cube import BifurcationCube, build_cube
from .homology import BettiTable, thickness
from .khovanov import GradingSystem, build_complex
from .knotio import VirtualLinkDiagram, shadow_connected
from .poly import a_span
from .statesum import DiagramPorts, arrow_polynomial, bracket_polynomial

__all__ = [
    "AtomInfo",
    "Verdict",
    "BoundReport",
    "atom_characteristics",
    "faces_orientable",
    "virtual_crossing_lower_bound",
    "span_bound_check",
    "thickness_bound_check",
    "minimality_certificate",
]


@dataclass(frozen=True)
class AtomInfo:
    n: int
    euler_characteristic: int
    orientable: bool
    connected: bool
    genus: int | None  # None when undefined
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "euler_characteristic": self.euler_characteristic,
            "orientable": self.orientable,
            "connected": self.connected,
            "genus": self.genus,
            "reason": self.reason,
        }


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    MINIMAL = "Minimal"
    INCONCLUSIVE = "Inconclusive"
    NOT_APPLICABLE = "Not-Applicable"


@dataclass
class BoundReport:
    name: str
    verdict: Verdict
    values: dict = field(default_factory=dict)
    reason: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "verdict": self.verdict.value, "values": self.values, "reason": self.reason}

    def render(self) -> str:
        vals = " ".join(f"{k}={v}" for k, v in self.values.items())
        tail = f" ({self.reason})" if self.reason else ""
        return f"{self.name}: {self.verdict.value} {vals}{tail}".rstrip()


def _directed_loops(ports: DiagramPorts, selector: int) -> list[dict[int, int]]:
    """Loops of a state as maps arc -> +1/-1 (traversed with or against it)."""
    oriented = [ports.is_oriented(k, selector) for k in range(ports.n)]
    seen = [False] * ports.n_arcs
    loops = []
    for start in range(ports.n_arcs):
        if seen[start]:
            continue
        dirs: dict[int, int] = {}
        arc, forward = start, True
        while arc not in dirs:
            seen[arc] = True
            dirs[arc] = 1 if forward else -1
            port = ports.arc_head[arc] if forward else ports.arc_tail[arc]
            q = ports.partner(port, oriented[port // 4])
            arc = ports.port_arc[q]
            forward = q == ports.arc_tail[arc]
        loops.append(dirs)
    return loops


def faces_orientable(d: VirtualLinkDiagram) -> bool:
    """Orientability by trying to orient every face of the atom coherently.

    Faces are the loops of the all-A and all-B states; each arc of the
    shadow borders one face of each kind, and a coherent orientation must
    run the two faces along the arc in opposite directions.
    """
    ports = DiagramPorts(d)
    if ports.n == 0:
        return True
    a_loops = _directed_loops(ports, 0)
    b_loops = _directed_loops(ports, (1 << ports.n) - 1)
    faces = a_loops + b_loops
    # constraint graph: parity edge between the A-face and B-face of each arc
    owner: dict[int, list[tuple[int, int]]] = {}
    for f, dirs in enumerate(faces):
        for arc, s in dirs.items():
            owner.setdefault(arc, []).append((f, s))
    adj: dict[int, list[tuple[int, int]]] = {f: [] for f in range(len(faces))}
    for (fa, sa), (fb, sb) in owner.values():
        # eps_a * sa == -(eps_b * sb)  <=>  eps_b = -sa * sb * eps_a
        rel = -sa * sb
        adj[fa].append((fb, rel))
        adj[fb].append((fa, rel))
    eps: dict[int, int] = {}
    for root in adj:
        if root in eps:
            continue
        eps[root] = 1
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for g, rel in adj[f]:
                want = rel * eps[f]
                if g not in eps:
                    eps[g] = want
                    queue.append(g)
                elif eps[g] != want:
                    return False
    return True


def atom_characteristics(d: VirtualLinkDiagram, cube: BifurcationCube | None = None) -> AtomInfo:
    cube = cube or build_cube(d)
    n = cube.n
    gamma_a = cube.states[0].gamma
    gamma_b = cube.states[-1].gamma
    chi = gamma_a + gamma_b - n
    orientable = not cube.has_single11()
    connected = shadow_connected(d)
    genus = None
    reason = ""
    if not connected:
        reason = "shadow is not connected"
    elif not orientable:
        reason = "atom is non-orientable"
    else:
        genus = (2 - chi) // 2
    return AtomInfo(n, chi, orientable, connected, genus, reason)


def virtual_crossing_lower_bound(t: BettiTable) -> int:
    """Largest total arrow count over the multiple gradings that survive."""
    if t.system is not GradingSystem.FULL:
        raise ValueError("the virtual crossing bound reads full-system homology")
    return max((sum(abs(k) for k in key.multi) for key, v in t.entries.items() if v), default=0)


def _not_applicable(name: str, atom: AtomInfo) -> BoundReport:
    return BoundReport(name, Verdict.NOT_APPLICABLE,
                       {"n": atom.n, "chi": atom.euler_characteristic}, atom.reason)


def span_bound_check(d: VirtualLinkDiagram, atom: AtomInfo | None = None) -> BoundReport:
    atom = atom or atom_characteristics(d)
    if atom.genus is None:
        return _not_applicable("span", atom)
    span = a_span(arrow_polynomial(d))
    bracket_span = a_span(bracket_polynomial(d))
    bound = 4 * atom.n - 4 * atom.genus
    values = {"span": span, "bracket_span": bracket_span, "bound": bound, "tight": span == bound}
    return BoundReport("span", Verdict.HOLDS if span <= bound else Verdict.FAILS, values)


def thickness_bound_check(d: VirtualLinkDiagram, t: BettiTable | None = None,
                          atom: AtomInfo | None = None) -> BoundReport:
    """Thickness of the full-system homology with the extra gradings forgotten."""
    atom = atom or atom_characteristics(d)
    if atom.genus is None:
        return _not_applicable("thickness", atom)
    if t is None:
        from .homology import betti_table

        t = betti_table(build_complex(d, GradingSystem.FULL))
    th = thickness(t)
    bound = 2 + atom.genus
    values = {"thickness": th, "bound": bound, "tight": th == bound}
    return BoundReport("thickness", Verdict.HOLDS if th <= bound else Verdict.FAILS, values)


def minimality_certificate(d: VirtualLinkDiagram, t: BettiTable | None = None,
                           atom: AtomInfo | None = None) -> BoundReport:
    """Minimal when both the span and the thickness bounds are equalities."""
    atom = atom or atom_characteristics(d)
    if atom.genus is None:
        return _not_applicable("minimality", atom)
    span = span_bound_check(d, atom)
    thick = thickness_bound_check(d, t, atom)
    values = {"span": span.values["span"], "span_bound": span.values["bound"],
              "thickness": thick.values["thickness"], "thickness_bound": thick.values["bound"]}
    failing = []
    for label, got, bound in (("span", span.values["span"], span.values["bound"]),
                              ("thickness", thick.values["thickness"], thick.values["bound"])):
        if got != bound:
            failing.append(f"{label} {got} {'<' if got < bound else '>'} {bound}")
    if failing:
        return BoundReport("minimality", Verdict.INCONCLUSIVE, values, "; ".join(failing))
    return BoundReport("minimality", Verdict.MINIMAL, values)
