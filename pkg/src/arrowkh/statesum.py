"""Bracket states with cusps, arrow numbers and the arrow polynomial.

Each crossing has four ports: over-in, over-out, under-in, under-out.  A
smoothing pairs ports.  The oriented smoothing (A at a positive crossing,
B at a negative one) pairs over-in/under-out and under-in/over-out; the
disoriented smoothing pairs the two ``in`` ports and the two ``out`` ports
and leaves a cusp at each pair.  A loop's cusps form a cyclic word over
``{L, R}`` recording on which side of the direction of travel the cusp's
inside lies; adjacent equal letters cancel and the arrow number is half
the length of what remains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .knotio import VirtualLinkDiagram, writhe
from .poly import D, ArrowMonomial, ArrowPolynomial, LaurentPoly

__all__ = [
    "SideTable",
    "DEFAULT_SIDES",
    "Loop",
    "StateResolution",
    "DiagramPorts",
    "resolve_state",
    "arrow_number",
    "reduce_cusp_word",
    "arrow_polynomial",
    "normalized_arrow_polynomial",
    "bracket_polynomial",
    "flat_specialization",
]

IN, OUT = "in", "out"


class SideTable:
    """Cusp side lookup ``(sign, role, entered_over) -> 'L' | 'R'``.

    ``role`` is ``"in"`` for the cusp joining the two incoming ports and
    ``"out"`` for the outgoing pair; ``entered_over`` says whether the loop
    arrives at the cusp along the over strand.  Encoded as an 8-letter
    string in the order (+,in,O) (+,in,U) (+,out,O) (+,out,U) (-,in,O)
    (-,in,U) (-,out,O) (-,out,U).
    """

    KEYS = tuple(
        (sign, role, over)
        for sign in (1, -1)
        for role in (IN, OUT)
        for over in (True, False)
    )

    def __init__(self, code: str):
        code = code.upper()
        if len(code) != 8 or set(code) - {"L", "R"}:
            raise ValueError(f"side table must be 8 letters over L/R, got {code!r}")
        self.code = code
        self._table = dict(zip(self.KEYS, code))

    def side(self, sign: int, role: str, entered_over: bool) -> str:
        return self._table[(sign, role, entered_over)]

    def reflected(self) -> "SideTable":
        return SideTable(self.code.translate(str.maketrans("LR", "RL")))

    def canonical(self) -> str:
        """Representative of the table up to global L<->R reflection."""
        return min(self.code, self.reflected().code)

    def __eq__(self, other):
        return isinstance(other, SideTable) and self.code == other.code

    def __hash__(self):
        return hash(self.code)

    def __repr__(self):
        return f"SideTable({self.code!r})"

    @classmethod
    def all_tables(cls) -> list["SideTable"]:
        return [cls(format(k, "08b").replace("0", "L").replace("1", "R")) for k in range(256)]


# Selected by calibration (see arrowkh.calibration); unique up to reflection.
DEFAULT_SIDES = SideTable("RLRLLRLR")


def reduce_cusp_word(word: str) -> str:
    """Cancel adjacent equal letters, cyclically, until none remain."""
    stack: list[str] = []
    for ch in word:
        if stack and stack[-1] == ch:
            stack.pop()
        else:
            stack.append(ch)
    # the linear reduct alternates; peel matching ends for the cyclic closure
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and stack[lo] == stack[hi - 1]:
        lo += 1
        hi -= 1
    return "".join(stack[lo:hi])


def arrow_number(word: str) -> int:
    if len(word) % 2:
        raise ValueError(f"cusp word {word!r} has odd length")
    return len(reduce_cusp_word(word)) // 2


@dataclass(frozen=True)
class Loop:
    cusps: str
    arrow: int
    arcs: frozenset[int]
    crossings: frozenset[int]


@dataclass(frozen=True)
class StateResolution:
    selector: int
    loops: tuple[Loop, ...]
    alpha: int
    beta: int

    @property
    def gamma(self) -> int:
        return len(self.loops)

    @property
    def arrow_numbers(self) -> tuple[int, ...]:
        return tuple(l.arrow for l in self.loops)

    def arrow_monomial(self) -> ArrowMonomial:
        return ArrowMonomial.from_labels(self.arrow_numbers)


class DiagramPorts:
    """Port/arc bookkeeping for a diagram, reused across all its states.

    Crossings are indexed 0..n-1 in the diagram's id order; bit ``k`` of a
    selector word is crossing ``k`` and 1 means the B-smoothing.
    """

    def __init__(self, d: VirtualLinkDiagram):
        self.diagram = d
        self.crossing_ids = d.crossings
        index = {c: k for k, c in enumerate(self.crossing_ids)}
        self.index = index
        self.n = len(self.crossing_ids)
        signs = d.signs()
        self.signs = [signs[c] for c in self.crossing_ids]
        # port id = 4*k + 2*(0 over | 1 under) + (0 in | 1 out)
        self.arc_tail: list[int] = []
        self.arc_head: list[int] = []
        self.port_arc = [0] * (4 * self.n)
        for comp in d.components:
            m = len(comp)
            for k in range(m):
                p, q = comp[k], comp[(k + 1) % m]
                tail = self.port(index[p.crossing], p.over, OUT)
                head = self.port(index[q.crossing], q.over, IN)
                a = len(self.arc_tail)
                self.arc_tail.append(tail)
                self.arc_head.append(head)
                self.port_arc[tail] = a
                self.port_arc[head] = a
        self.n_arcs = len(self.arc_tail)
        self.free_loops = d.zero_crossing_unknots

    @staticmethod
    def port(k: int, over: bool, end: str) -> int:
        return 4 * k + (0 if over else 2) + (0 if end == IN else 1)

    def is_oriented(self, k: int, selector: int) -> bool:
        b = (selector >> k) & 1
        return (self.signs[k] > 0) == (b == 0)

    def partner(self, port: int, oriented: bool) -> int:
        k, rest = divmod(port, 4)
        strand, end = divmod(rest, 2)
        if oriented:
            return 4 * k + 2 * (1 - strand) + (1 - end)
        return 4 * k + 2 * (1 - strand) + end

    def trace(self, selector: int, sides: SideTable = DEFAULT_SIDES) -> list[Loop]:
        """Trace every loop of the state; crossing-free circles come last."""
        seen = [False] * self.n_arcs
        loops = []
        oriented = [self.is_oriented(k, selector) for k in range(self.n)]
        for start in range(self.n_arcs):
            if seen[start]:
                continue
            arcs = []
            crossings = set()
            word = []
            arc, forward = start, True
            while True:
                seen[arc] = True
                arcs.append(arc)
                port = self.arc_head[arc] if forward else self.arc_tail[arc]
                k = port // 4
                crossings.add(k)
                q = self.partner(port, oriented[k])
                if not oriented[k]:
                    entered_over = (port % 4) < 2
                    role = IN if port % 2 == 0 else OUT
                    word.append(sides.side(self.signs[k], role, entered_over))
                arc = self.port_arc[q]
                forward = q == self.arc_tail[arc]
                if arc == start:
                    break
            cusps = "".join(word)
            loops.append(Loop(cusps, arrow_number(cusps), frozenset(arcs), frozenset(crossings)))
        for _ in range(self.free_loops):
            loops.append(Loop("", 0, frozenset(), frozenset()))
        return loops

    def resolve(self, selector: int, sides: SideTable = DEFAULT_SIDES) -> StateResolution:
        beta = bin(selector).count("1")
        return StateResolution(selector, tuple(self.trace(selector, sides)), self.n - beta, beta)


def resolve_state(d: VirtualLinkDiagram, selector: int | Mapping[int, str],
                  sides: SideTable = DEFAULT_SIDES) -> StateResolution:
    """Resolve one state; ``selector`` is a bit word or a map crossing id -> 'A'/'B'."""
    ports = DiagramPorts(d)
    if not isinstance(selector, int):
        word = 0
        for c, choice in selector.items():
            if choice == "B":
                word |= 1 << ports.index[c]
        selector = word
    if selector >> ports.n:
        raise ValueError("selector has bits beyond the crossing count")
    return ports.resolve(selector, sides)


def arrow_polynomial(d: VirtualLinkDiagram, sides: SideTable = DEFAULT_SIDES) -> ArrowPolynomial:
    """Sum over all states of A^(alpha-beta) d^(gamma-1) prod K_n(loop)."""
    ports = DiagramPorts(d)
    n = ports.n
    # collect integer counts per (alpha-beta, gamma, monomial) before expanding
    tally: dict[tuple[int, int, ArrowMonomial], int] = {}
    for sel in range(1 << n):
        loops = ports.trace(sel, sides)
        beta = bin(sel).count("1")
        key = (n - 2 * beta, len(loops), ArrowMonomial.from_labels(l.arrow for l in loops))
        tally[key] = tally.get(key, 0) + 1
    d_powers: dict[int, LaurentPoly] = {}
    terms: dict[ArrowMonomial, LaurentPoly] = {}
    for (shift, gamma, mono), count in tally.items():
        if gamma not in d_powers:
            d_powers[gamma] = D ** (gamma - 1)
        term = LaurentPoly.monomial(shift, count) * d_powers[gamma]
        terms[mono] = terms[mono] + term if mono in terms else term
    return ArrowPolynomial(terms)


def normalized_arrow_polynomial(d: VirtualLinkDiagram, sides: SideTable = DEFAULT_SIDES) -> ArrowPolynomial:
    w = writhe(d)
    return arrow_polynomial(d, sides) * (LaurentPoly.monomial(-3 * w, (-1) ** w))


def bracket_polynomial(d: VirtualLinkDiagram) -> LaurentPoly:
    """Plain bracket by union-find loop counting; never looks at cusps."""
    comps = d.components
    ids = d.crossings
    index = {c: k for k, c in enumerate(ids)}
    sign = d.signs()
    n = len(ids)
    # node ids: (k, over, end) flattened; arcs join out-node to next in-node
    arc_pairs = []
    for comp in comps:
        m = len(comp)
        for k in range(m):
            p, q = comp[k], comp[(k + 1) % m]
            arc_pairs.append(((index[p.crossing], p.over, 1), (index[q.crossing], q.over, 0)))
    counts: dict[tuple[int, int], int] = {}
    for sel in range(1 << n):
        parent: dict = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for x, y in arc_pairs:
            union(x, y)
        for k, c in enumerate(ids):
            b_smoothed = (sel >> k) & 1
            parallel = (sign[c] > 0) != bool(b_smoothed)
            if parallel:
                union((k, True, 0), (k, False, 1))
                union((k, False, 0), (k, True, 1))
            else:
                union((k, True, 0), (k, False, 0))
                union((k, True, 1), (k, False, 1))
        loops = len({find(x) for x in list(parent)}) + d.zero_crossing_unknots
        beta = bin(sel).count("1")
        key = (n - 2 * beta, loops)
        counts[key] = counts.get(key, 0) + 1
    total = LaurentPoly()
    for (shift, loops), cnt in counts.items():
        total = total + LaurentPoly.monomial(shift, cnt) * D ** (loops - 1)
    return total


def flat_specialization(d: VirtualLinkDiagram, sides: SideTable = DEFAULT_SIDES) -> ArrowPolynomial:
    """The arrow polynomial at A = 1 (so the loop value becomes -2)."""
    from .poly import specialize

    return specialize(arrow_polynomial(d, sides), "A=1")
