"""Reidemeister moves on signed Gauss codes.

Positions are *gaps*: ``(component, k)`` is the gap after passage ``k`` of
that component (the last gap wraps to the front).  A component index equal
to ``len(d.components) + u`` addresses the ``u``-th crossing-free circle,
whose only gap is ``k = 0``.

Inserted crossings get fresh ids ``n+1, n+2``; removals compact ids while
keeping their relative order, so a move followed by its inverse returns
the identical diagram.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .knotio import Passage, VirtualLinkDiagram

__all__ = [
    "MoveError",
    "MoveStep",
    "MoveTrace",
    "apply_r1",
    "remove_r1",
    "apply_r2",
    "remove_r2",
    "apply_r3",
    "r1_sites",
    "r2_sites",
    "r3_sites",
    "gaps",
    "random_equivalent",
    "replay",
]


class MoveError(ValueError):
    pass


Gap = tuple[int, int]


def gaps(d: VirtualLinkDiagram) -> list[Gap]:
    out = [(ci, k) for ci, comp in enumerate(d.components) for k in range(len(comp))]
    out += [(len(d.components) + u, 0) for u in range(d.zero_crossing_unknots)]
    return out


def _check_gap(d: VirtualLinkDiagram, gap: Gap):
    ci, k = gap
    nc = len(d.components)
    if 0 <= ci < nc and 0 <= k < len(d.components[ci]):
        return
    if nc <= ci < nc + d.zero_crossing_unknots and k == 0:
        return
    raise MoveError(f"invalid gap {gap}")


def _insert(d: VirtualLinkDiagram, blocks: Sequence[tuple[Gap, Sequence[Passage]]]) -> VirtualLinkDiagram:
    """Insert passage blocks at gaps; blocks at one gap go in the given order."""
    comps = [list(c) for c in d.components]
    nc = len(comps)
    new_from_unknot: dict[int, list[Passage]] = {}
    # group by gap, apply right-to-left inside each component so indices stay valid
    by_comp: dict[int, list[tuple[int, int, Sequence[Passage]]]] = {}
    for order, (gap, ps) in enumerate(blocks):
        _check_gap(d, gap)
        ci, k = gap
        if ci >= nc:
            new_from_unknot.setdefault(ci - nc, []).extend(ps)
        else:
            by_comp.setdefault(ci, []).append((k, order, ps))
    for ci, items in by_comp.items():
        merged: dict[int, list[Passage]] = {}
        for k, _, ps in sorted(items, key=lambda t: t[1]):
            merged.setdefault(k, []).extend(ps)
        for k in sorted(merged, reverse=True):
            comps[ci][k + 1:k + 1] = merged[k]
    used = sorted(new_from_unknot)
    for u in used:
        comps.append(new_from_unknot[u])
    return VirtualLinkDiagram(tuple(tuple(c) for c in comps), d.zero_crossing_unknots - len(used))


def _delete(d: VirtualLinkDiagram, crossings: set[int]) -> VirtualLinkDiagram:
    comps = []
    freed = 0
    for comp in d.components:
        kept = tuple(p for p in comp if p.crossing not in crossings)
        if kept:
            comps.append(kept)
        else:
            freed += 1
    return VirtualLinkDiagram(tuple(comps), d.zero_crossing_unknots + freed).compacted()


def _adjacent(d: VirtualLinkDiagram, first: tuple[int, int], second: tuple[int, int]) -> bool:
    """True iff ``second`` directly follows ``first`` on the same component."""
    (c1, k1), (c2, k2) = first, second
    if c1 != c2:
        return False
    m = len(d.components[c1])
    return (k1 + 1) % m == k2


def apply_r1(d: VirtualLinkDiagram, gap: Gap, sign: int = 1, over_first: bool = True) -> VirtualLinkDiagram:
    """Insert a kink: a new crossing whose two passages are consecutive."""
    if sign not in (1, -1):
        raise MoveError("sign must be +1 or -1")
    k = d.n + 1
    ps = [Passage(k, True, sign), Passage(k, False, sign)]
    if not over_first:
        ps.reverse()
    return _insert(d, [(gap, ps)])


def r1_sites(d: VirtualLinkDiagram) -> list[int]:
    """Crossings removable by an inverse first move."""
    loc = d.locate()
    out = []
    for c in d.crossings:
        o, u = loc[(c, True)], loc[(c, False)]
        if _adjacent(d, o, u) or _adjacent(d, u, o):
            out.append(c)
    return out


def remove_r1(d: VirtualLinkDiagram, crossing: int) -> VirtualLinkDiagram:
    if crossing not in r1_sites(d):
        raise MoveError(f"crossing {crossing} is not a kink")
    return _delete(d, {crossing})


def apply_r2(d: VirtualLinkDiagram, over_gap: Gap, under_gap: Gap, same_direction: bool = True,
             sign: int = 1) -> VirtualLinkDiagram:
    """Push the strand at ``over_gap`` over the strand at ``under_gap``.

    Creates crossings ``a`` (sign ``sign``) and ``b`` (sign ``-sign``) met in
    order a, b along the over strand; the under strand meets them in the
    same order when ``same_direction`` and reversed otherwise.  When both
    gaps coincide the over block comes first along the arc.
    """
    if sign not in (1, -1):
        raise MoveError("sign must be +1 or -1")
    a, b = d.n + 1, d.n + 2
    over = [Passage(a, True, sign), Passage(b, True, -sign)]
    under = [Passage(a, False, sign), Passage(b, False, -sign)]
    if not same_direction:
        under.reverse()
    return _insert(d, [(over_gap, over), (under_gap, under)])


def r2_sites(d: VirtualLinkDiagram) -> list[tuple[int, int]]:
    """Pairs ``(a, b)`` removable by an inverse second move."""
    loc = d.locate()
    signs = d.signs()
    out = []
    cs = d.crossings
    for i, a in enumerate(cs):
        for b in cs[i + 1:]:
            if signs[a] != -signs[b]:
                continue
            oa, ob, ua, ub = loc[(a, True)], loc[(b, True)], loc[(a, False)], loc[(b, False)]
            over_ok = _adjacent(d, oa, ob) or _adjacent(d, ob, oa)
            under_ok = _adjacent(d, ua, ub) or _adjacent(d, ub, ua)
            if over_ok and under_ok:
                out.append((a, b))
    return out


def remove_r2(d: VirtualLinkDiagram, a: int, b: int) -> VirtualLinkDiagram:
    pair = (min(a, b), max(a, b))
    if pair not in r2_sites(d):
        raise MoveError(f"crossings {a}, {b} do not form a removable bigon")
    return _delete(d, {a, b})


def _pair_order(d: VirtualLinkDiagram, p: tuple[int, int], q: tuple[int, int]) -> int | None:
    """+1 if q follows p, -1 if p follows q, None if not adjacent.

    Components with only two passages are rejected: both readings would be
    adjacent and the strand order is ambiguous.
    """
    if p[0] != q[0] or len(d.components[p[0]]) < 3:
        return None
    if _adjacent(d, p, q):
        return 1
    if _adjacent(d, q, p):
        return -1
    return None


def _r3_roles(d: VirtualLinkDiagram, site: Sequence[int]):
    """Find (a, b, c) = (top-mid, top-bottom, mid-bottom) making ``site`` a triangle."""
    loc = d.locate()
    signs = d.signs()
    x, y, z = site
    for a, b, c in ((x, y, z), (x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)):
        top = _pair_order(d, loc[(a, True)], loc[(b, True)])
        mid = _pair_order(d, loc[(a, False)], loc[(c, True)])
        bot = _pair_order(d, loc[(b, False)], loc[(c, False)])
        if None in (top, mid, bot):
            continue
        # realizability: s_a s_b = +1 iff mid and bottom orders agree,
        # s_a s_c = +1 iff top and bottom orders agree
        if signs[a] * signs[b] != mid * bot or signs[a] * signs[c] != top * bot:
            continue
        return a, b, c, loc
    return None


def r3_sites(d: VirtualLinkDiagram) -> list[tuple[int, int, int]]:
    cs = d.crossings
    loc = d.locate()
    out = []
    # candidate triples share strands pairwise; prune with a neighbour map
    neighbours: dict[int, set[int]] = {c: set() for c in cs}
    for comp in d.components:
        m = len(comp)
        if m < 3:
            continue
        for k in range(m):
            p, q = comp[k].crossing, comp[(k + 1) % m].crossing
            if p != q:
                neighbours[p].add(q)
                neighbours[q].add(p)
    for x in cs:
        for y in neighbours[x]:
            if y <= x:
                continue
            for z in neighbours[x] & neighbours[y]:
                if z <= y:
                    continue
                if _r3_roles(d, (x, y, z)) is not None:
                    out.append((x, y, z))
    del loc
    return out


def apply_r3(d: VirtualLinkDiagram, site: Sequence[int]) -> VirtualLinkDiagram:
    """Slide the top strand across the opposite crossing of a triangle."""
    if len(set(site)) != 3 or any(c not in d.crossings for c in site):
        raise MoveError(f"invalid third-move site {tuple(site)}")
    found = _r3_roles(d, site)
    if found is None:
        raise MoveError(f"crossings {tuple(site)} do not form a third-move triangle")
    a, b, c, loc = found
    comps = [list(comp) for comp in d.components]
    for p, q in (((a, True), (b, True)), ((a, False), (c, True)), ((b, False), (c, False))):
        (ci, i), (cj, j) = loc[p], loc[q]
        comps[ci][i], comps[cj][j] = comps[cj][j], comps[ci][i]
    return VirtualLinkDiagram(tuple(tuple(x) for x in comps), d.zero_crossing_unknots)


@dataclass(frozen=True)
class MoveStep:
    kind: str  # R1+ R1- R2+ R2- R3
    site: tuple
    params: tuple = ()

    def __str__(self):
        site = " ".join(_fmt(s) for s in self.site)
        params = " ".join(_fmt(p) for p in self.params)
        return f"{self.kind} {site}" + (f" | {params}" if params else "")

    @classmethod
    def parse(cls, line: str) -> "MoveStep":
        head, _, params = line.partition("|")
        kind, *site = head.split()
        return cls(kind, tuple(_unfmt(s) for s in site), tuple(_unfmt(p) for p in params.split()))


def _fmt(x) -> str:
    if isinstance(x, tuple):
        return ":".join(str(v) for v in x)
    if isinstance(x, bool):
        return "T" if x else "F"
    return str(x)


def _unfmt(s: str):
    if ":" in s:
        return tuple(int(v) for v in s.split(":"))
    if s in ("T", "F"):
        return s == "T"
    return int(s)


@dataclass
class MoveTrace:
    steps: list[MoveStep] = field(default_factory=list)

    def dumps(self) -> str:
        return "\n".join(str(s) for s in self.steps)

    @classmethod
    def loads(cls, text: str) -> "MoveTrace":
        return cls([MoveStep.parse(line) for line in text.splitlines() if line.strip()])

    def __len__(self):
        return len(self.steps)


def apply_step(d: VirtualLinkDiagram, step: MoveStep) -> VirtualLinkDiagram:
    if step.kind == "R1+":
        (gap,), (sign, over_first) = step.site, step.params
        return apply_r1(d, gap, sign, over_first)
    if step.kind == "R1-":
        return remove_r1(d, step.site[0])
    if step.kind == "R2+":
        (og, ug), (same, sign) = step.site, step.params
        return apply_r2(d, og, ug, same, sign)
    if step.kind == "R2-":
        return remove_r2(d, *step.site)
    if step.kind == "R3":
        return apply_r3(d, step.site)
    raise MoveError(f"unknown move kind {step.kind!r}")


def replay(d: VirtualLinkDiagram, trace: MoveTrace) -> VirtualLinkDiagram:
    for step in trace.steps:
        d = apply_step(d, step)
    return d


def random_equivalent(d: VirtualLinkDiagram, move_count: int, seed: int = 0,
                      max_crossings: int | None = None,
                      kinds: Sequence[str] = ("r1", "r2", "r3")) -> tuple[VirtualLinkDiagram, MoveTrace]:
    """Random walk of ``move_count`` moves; deterministic for a fixed seed.

    Insertions are allowed only while the crossing count stays within
    ``max_crossings`` (default: start + 4), so walks stay size-bounded.
    Available third moves are always taken when drawn, and drawn twice as
    often as the other kinds.
    """
    rng = random.Random(seed)
    cap = d.n + 4 if max_crossings is None else max_crossings
    kinds = {k.lower() for k in kinds}
    trace = MoveTrace()
    for _ in range(move_count):
        options: list[tuple[str, object]] = []
        gs = gaps(d)
        if "r3" in kinds:
            for site in r3_sites(d):
                options += [("R3", site)] * 2
        if "r1" in kinds:
            options += [("R1-", c) for c in r1_sites(d)]
            if d.n + 1 <= cap and gs:
                options.append(("R1+", None))
        if "r2" in kinds:
            options += [("R2-", s) for s in r2_sites(d)]
            if d.n + 2 <= cap and gs:
                options += [("R2+", None)] * 2
        if not options:
            break
        kind, site = options[rng.randrange(len(options))]
        if kind == "R1+":
            step = MoveStep(kind, (gs[rng.randrange(len(gs))],), (rng.choice((1, -1)), rng.random() < 0.5))
        elif kind == "R2+":
            og, ug = gs[rng.randrange(len(gs))], gs[rng.randrange(len(gs))]
            step = MoveStep(kind, (og, ug), (rng.random() < 0.5, rng.choice((1, -1))))
        elif kind == "R1-":
            step = MoveStep(kind, (site,))
        else:
            step = MoveStep(kind, tuple(site))
        d = apply_step(d, step)
        trace.steps.append(step)
    return d, trace
