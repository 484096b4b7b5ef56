"""Bundled example diagrams and generators for test corpora."""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

from .knotio import Passage, VirtualLinkDiagram, parse_gauss_code

__all__ = [
    "CorpusEntry",
    "braid_closure",
    "bundled",
    "bundled_names",
    "random_code",
    "corpus",
    "classical_corpus",
]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    diagram: VirtualLinkDiagram
    classical: bool


def braid_closure(word: Sequence[int], strands: int | None = None) -> VirtualLinkDiagram:
    """Closure of a braid word; ``+i`` is sigma_i, ``-i`` its inverse.

    In sigma_i the strand at position i passes over the one at i+1 and the
    crossing is positive.  Closures are planar, so these diagrams are
    classical by construction.
    """
    k = strands if strands is not None else max([abs(g) for g in word] + [0]) + 1
    # passages seen at each strand position, per crossing, in time order
    events: list[list[tuple[int, Passage]]] = [[] for _ in range(k)]
    perm = list(range(k))  # perm[pos] = strand currently at pos
    for t, g in enumerate(word, start=1):
        i = abs(g) - 1
        if not 0 <= i < k - 1:
            raise ValueError(f"generator {g} out of range for {k} strands")
        sign = 1 if g > 0 else -1
        left, right = perm[i], perm[i + 1]
        left_over = g > 0
        events[left].append((t, Passage(t, left_over, sign)))
        events[right].append((t, Passage(t, not left_over, sign)))
        perm[i], perm[i + 1] = right, left
    # follow strands through the closure: a strand ending at pos p continues as strand starting at p
    end_pos = {s: p for p, s in enumerate(perm)}
    comps = []
    unknots = 0
    seen = set()
    for s0 in range(k):
        if s0 in seen:
            continue
        comp: list[Passage] = []
        s = s0
        while s not in seen:
            seen.add(s)
            comp.extend(p for _, p in events[s])
            s = end_pos[s]
        if comp:
            comps.append(tuple(comp))
        else:
            unknots += 1
    return VirtualLinkDiagram(tuple(comps), unknots).normalized()


# bundled name -> classical?  Codes live in arrowkh/data/<name>.gc; the
# figure-eight and Hopf link files are braid_closure([1,-2,1,-2]) and
# braid_closure([1,1]).
_BUNDLED = {
    "unknot": True,
    "unknot-kink": True,
    "unknot-negkink": True,
    "unknot-twokinks": True,
    "trefoil": True,
    "figure-eight": True,
    "hopf": True,
    "unlink2": True,
    "vtrefoil": False,
    "kishino": False,
    "vhopf": False,
}


def bundled(name: str) -> VirtualLinkDiagram:
    """A bundled diagram by name, read from the ``<name>.gc`` package data."""
    if name not in _BUNDLED:
        raise KeyError(f"unknown corpus diagram {name!r}; have {sorted(_BUNDLED)}")
    text = resources.files("arrowkh.data").joinpath(f"{name}.gc").read_text()
    return parse_gauss_code(text)


def bundled_names() -> list[str]:
    return list(_BUNDLED)


def random_code(crossings: int, seed: int, components: int = 1) -> VirtualLinkDiagram:
    """A random signed Gauss code: random chord placement, roles and signs."""
    rng = random.Random(seed)
    slots = [c for c in range(1, crossings + 1) for _ in range(2)]
    rng.shuffle(slots)
    comps: list[list[int]] = [[] for _ in range(components)]
    if components > 1 and len(slots) >= components:
        cuts = sorted(rng.sample(range(1, len(slots)), components - 1))
        bounds = [0] + cuts + [len(slots)]
        comps = [slots[bounds[i]:bounds[i + 1]] for i in range(components)]
    else:
        comps = [slots]
    over_first = {c: rng.random() < 0.5 for c in range(1, crossings + 1)}
    sign = {c: rng.choice((1, -1)) for c in range(1, crossings + 1)}
    seen: set[int] = set()
    out = []
    for comp in comps:
        ps = []
        for c in comp:
            first = c not in seen
            seen.add(c)
            ps.append(Passage(c, over_first[c] == first, sign[c]))
        out.append(tuple(ps))
    return VirtualLinkDiagram(tuple(out), 0).normalized()


def classical_corpus() -> list[CorpusEntry]:
    """Classical diagrams: bundled ones plus a few extra braid closures."""
    out = [e for e in corpus(random_count=0) if e.classical]
    for word in ([1, 1, 1, 1, 1], [1, -2, 1, 2], [1, 2, 1, 2], [-1, -1, 2, -1, 2], [1, 1, 2, -1, 2]):
        name = "braid(" + ",".join(map(str, word)) + ")"
        out.append(CorpusEntry(name, braid_closure(word), True))
    return out


def corpus(random_count: int = 4, random_crossings: Sequence[int] = (3, 4, 5), seed: int = 0) -> list[CorpusEntry]:
    """Bundled diagrams followed by seeded random virtual codes."""
    out = [CorpusEntry(name, bundled(name), classical) for name, classical in _BUNDLED.items()]
    rng = random.Random(seed)
    for i in range(random_count):
        n = random_crossings[i % len(random_crossings)]
        s = rng.randrange(2**32)
        comps = 1 if i % 3 else 2
        out.append(CorpusEntry(f"random-{n}x{comps}-{s}", random_code(n, s, comps), False))
    return out
