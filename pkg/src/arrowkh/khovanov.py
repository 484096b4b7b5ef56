"""Khovanov-type chain complexes over F2 on enhanced states.

An enhanced state is a pair ``(selector, mask)``: bit ``l`` of ``mask`` is
1 when loop ``l`` carries ``X`` and 0 when it carries ``1``.  The
differential is the usual m/Delta cube differential with the 1->1 edges
set to zero; ``dprime`` keeps only the entries that preserve the chosen
grading system:

* ``plain``  -- (i, j)
* ``dotted`` -- (i, j, g), g = #X - #1 over loops of odd arrow number
* ``full``   -- (i, j, multi, vect)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .cube import BifurcationCube, CubeEdge, EdgeKind, build_cube
from .knotio import VirtualLinkDiagram

__all__ = [
    "GradingSystem",
    "GradingVector",
    "ChainComplex",
    "ComplexSizeError",
    "edge_map",
    "build_complex",
    "verify_d_squared",
    "dprime_complement_check",
    "DEFAULT_COMPLEX_LIMIT",
    "vector_slot",
]

DEFAULT_COMPLEX_LIMIT = 14

ONE, X = 0, 1


class ComplexSizeError(ValueError):
    pass


class GradingSystem(str, Enum):
    PLAIN = "plain"
    DOTTED = "dotted"
    FULL = "full"


def vector_slot(p: int) -> int:
    """Slot k with p = 2^(k-1) * odd; p must be positive."""
    return (p & -p).bit_length()


@dataclass(frozen=True)
class GradingVector:
    i: int
    j: int
    g: int
    multi: tuple[int, ...]
    vect: tuple[tuple[int, int], ...]  # sparse (slot, value), zero slots dropped

    def key(self, system: GradingSystem) -> tuple:
        if system is GradingSystem.PLAIN:
            return (self.j,)
        if system is GradingSystem.DOTTED:
            return (self.j, self.g)
        return (self.j, self.multi, self.vect)

    def vect_dict(self) -> dict[int, int]:
        return dict(self.vect)


def edge_map(kind: EdgeKind, labels: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Local map on the labels at the flipped site, as a list of F2 summands.

    Merge21 takes two labels to one via m, Split12 one to two via Delta and
    Single11 is zero.
    """
    if kind is EdgeKind.MERGE21:
        a, b = labels
        if a == X and b == X:
            return []
        return [(a | b,)]
    if kind is EdgeKind.SPLIT12:
        (a,) = labels
        if a == X:
            return [(X, X)]
        return [(ONE, X), (X, ONE)]
    return []


class _StateInfo:
    __slots__ = ("gamma", "odd_mask", "slots", "multi", "i")

    def __init__(self, st, i):
        arrows = st.arrow_numbers
        self.gamma = len(arrows)
        self.i = i
        self.odd_mask = sum(1 << l for l, p in enumerate(arrows) if p % 2)
        self.slots = [(l, vector_slot(p)) for l, p in enumerate(arrows) if p]
        self.multi = tuple(sorted(p for p in arrows if p))


class ChainComplex:
    """Bases per homological degree, with the full and projected differentials.

    ``bases[i]`` lists generators ``(selector, mask)`` in lexicographic
    order; ``d[i]`` and ``dprime[i]`` hold one bit-packed row per generator
    of degree ``i`` over the generators of degree ``i + 1``.
    """

    def __init__(self, cube: BifurcationCube, system: GradingSystem | str = GradingSystem.FULL):
        self.cube = cube
        self.system = GradingSystem(system)
        n = cube.n
        self.n = n
        self._info = [_StateInfo(st, bin(s).count("1")) for s, st in enumerate(cube.states)]
        self.bases: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n + 1)}
        for s in range(1 << n):
            info = self._info[s]
            self.bases[info.i].extend((s, m) for m in range(1 << info.gamma))
        for i in self.bases:
            self.bases[i].sort()
        self.index = {i: {g: k for k, g in enumerate(b)} for i, b in self.bases.items()}
        self._grading_cache: dict[tuple[int, int], GradingVector] = {}
        self.d: dict[int, list[int]] = {}
        self.dprime: dict[int, list[int]] = {}
        self._build()

    # -- gradings -------------------------------------------------------
    def grading(self, gen: tuple[int, int]) -> GradingVector:
        cached = self._grading_cache.get(gen)
        if cached is not None:
            return cached
        s, mask = gen
        info = self._info[s]
        xs = bin(mask).count("1")
        j = info.i + info.gamma - 2 * xs
        odd_x = bin(mask & info.odd_mask).count("1")
        g = 2 * odd_x - bin(info.odd_mask).count("1")
        vect: dict[int, int] = {}
        for l, slot in info.slots:
            vect[slot] = vect.get(slot, 0) + (1 if (mask >> l) & 1 else -1)
        gv = GradingVector(info.i, j, g, info.multi, tuple(sorted((k, v) for k, v in vect.items() if v)))
        self._grading_cache[gen] = gv
        return gv

    def key(self, gen: tuple[int, int]) -> tuple:
        return self.grading(gen).key(self.system)

    # -- differential ---------------------------------------------------
    @staticmethod
    def image(edge: CubeEdge, mask: int) -> list[int]:
        """Target masks of one generator across one cube edge."""
        if edge.kind is EdgeKind.SINGLE11:
            return []
        base = 0
        for ls, lt in edge.loop_map:
            if (mask >> ls) & 1:
                base |= 1 << lt
        src = tuple((mask >> l) & 1 for l in edge.source_loops)
        out = []
        for labels in edge_map(edge.kind, src):
            m = base
            for lt, lab in zip(edge.target_loops, labels):
                if lab:
                    m |= 1 << lt
            out.append(m)
        return out

    def _build(self):
        for i in range(self.n + 1):
            rows, prows = [], []
            tindex = self.index.get(i + 1, {})
            for gen in self.bases[i]:
                s, mask = gen
                key = self.key(gen)
                row = prow = 0
                for edge in self.cube.out_edges(s):
                    for tm in self.image(edge, mask):
                        tgen = (edge.target, tm)
                        bit = 1 << tindex[tgen]
                        row ^= bit
                        if self.key(tgen) == key:
                            prow ^= bit
                rows.append(row)
                prows.append(prow)
            self.d[i] = rows
            self.dprime[i] = prows

    def rank_of_d(self, i: int) -> int:
        from .homology import f2_rank

        return f2_rank(self.d.get(i, []))

    def size(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def dump(self, projected: bool = True) -> str:
        """Per degree: nonzero (row, col) entries, with basis legends."""
        mats = self.dprime if projected else self.d
        lines = []
        for i in range(self.n + 1):
            lines.append(f"# degree {i} -> {i + 1}")
            for k, gen in enumerate(self.bases[i]):
                lines.append(f"basis {i}:{k} state={gen[0]} labels={gen[1]}")
            for r, row in enumerate(mats[i]):
                lines += [f"entry {r} {c}" for c in _bits(row)]
        return "\n".join(lines)


def build_complex(cube: BifurcationCube | VirtualLinkDiagram, system: GradingSystem | str = "full",
                  limit: int = DEFAULT_COMPLEX_LIMIT) -> ChainComplex:
    if isinstance(cube, VirtualLinkDiagram):
        if cube.n > limit:
            raise ComplexSizeError(f"{cube.n} crossings exceeds the complex limit of {limit}")
        cube = build_cube(cube)
    if cube.n > limit:
        raise ComplexSizeError(f"{cube.n} crossings exceeds the complex limit of {limit}")
    return ChainComplex(cube, system)


def _compose(first: list[int], second: list[int]) -> list[int]:
    out = []
    for row in first:
        acc = 0
        for k in _bits(row):
            acc ^= second[k]
        out.append(acc)
    return out


def _bits(row: int):
    """Indices of the set bits of ``row``, lowest first."""
    while row:
        low = row & -row
        yield low.bit_length() - 1
        row ^= low


@dataclass
class SquareReport:
    plain_ok: bool
    projected_ok: bool
    first_offense: str | None = None

    @property
    def ok(self) -> bool:
        return self.plain_ok and self.projected_ok


def _first_nonzero(c: ChainComplex, mats: dict[int, list[int]], label: str) -> str | None:
    for i in range(c.n - 1):
        comp = _compose(mats[i], mats[i + 1])
        for r, row in enumerate(comp):
            if row:
                col = (row & -row).bit_length() - 1
                s, _ = c.bases[i][r]
                t, _ = c.bases[i + 2][col]
                flipped = [c.cube.ports.crossing_ids[k] for k in range(c.n) if ((s ^ t) >> k) & 1]
                return f"{label}: degree {i}, generator {c.bases[i][r]} -> {c.bases[i + 2][col]}, face on crossings {flipped}"
    return None


def verify_d_squared(c: ChainComplex) -> SquareReport:
    plain = _first_nonzero(c, c.d, "d^2")
    proj = _first_nonzero(c, c.dprime, f"(d')^2 [{c.system.value}]")
    return SquareReport(plain is None, proj is None, plain or proj)


@dataclass
class ComplementReport:
    ok: bool
    entries: int
    first_offense: str | None = None


def dprime_complement_check(c: ChainComplex) -> ComplementReport:
    """Check what d'' = d - d' does to the extra gradings.

    Dotted: each entry strictly raises g.  Full: each entry changes multi
    or raises exactly one vector slot by exactly 2.  Plain: d'' must vanish.
    """
    count = 0
    for i in range(c.n):
        for r, (row, prow) in enumerate(zip(c.d[i], c.dprime[i])):
            for k in _bits(row ^ prow):
                count += 1
                src = c.grading(c.bases[i][r])
                tgt = c.grading(c.bases[i + 1][k])
                if not _complement_entry_ok(c.system, src, tgt):
                    return ComplementReport(False, count, f"degree {i}: {src} -> {tgt}")
    return ComplementReport(True, count)


def _complement_entry_ok(system: GradingSystem, src: GradingVector, tgt: GradingVector) -> bool:
    if system is GradingSystem.PLAIN:
        return False
    if system is GradingSystem.DOTTED:
        return tgt.g > src.g
    if src.multi != tgt.multi:
        return True
    a, b = src.vect_dict(), tgt.vect_dict()
    diff = {k: b.get(k, 0) - a.get(k, 0) for k in set(a) | set(b)}
    diff = {k: v for k, v in diff.items() if v}
    return len(diff) == 1 and next(iter(diff.values())) == 2
