"""Signed Gauss codes for virtual links: parsing, validation, serialization.

Text grammar, one component per line (``#`` starts a comment)::

    component := "(" ")" | passage+
    passage   := ("O" | "U") digits ("+" | "-")

so ``O1+ O2+ U1+ U2+`` is the virtual trefoil and ``()`` an unknotted
crossing-free circle.  Virtual crossings are not represented.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Passage",
    "VirtualLinkDiagram",
    "ValidationReport",
    "GaussCodeError",
    "GaussCodeSyntaxError",
    "InvalidDiagramError",
    "parse_gauss_code",
    "validate",
    "writhe",
    "shadow_connected",
    "serialize",
    "from_json",
]


class GaussCodeError(ValueError):
    pass


class GaussCodeSyntaxError(GaussCodeError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvalidDiagramError(GaussCodeError):
    def __init__(self, report: "ValidationReport"):
        msgs = "; ".join(f"{code}: {msg}" for code, msg, _ in report.issues)
        super().__init__(msgs)
        self.report = report


@dataclass(frozen=True, order=True)
class Passage:
    crossing: int
    over: bool
    sign: int

    @property
    def role(self) -> str:
        return "O" if self.over else "U"

    def __str__(self):
        return f"{self.role}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class VirtualLinkDiagram:
    """A virtual link as a signed Gauss code.

    ``components`` holds the cyclic passage sequence of every component that
    meets at least one classical crossing; ``zero_crossing_unknots`` counts
    the crossing-free circles.
    """

    components: tuple[tuple[Passage, ...], ...]
    zero_crossing_unknots: int = 0

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        object.__setattr__(self, "components", comps)

    @property
    def crossings(self) -> list[int]:
        seen: dict[int, None] = {}
        for comp in self.components:
            for p in comp:
                seen.setdefault(p.crossing, None)
        return sorted(seen)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def component_count(self) -> int:
        return len(self.components) + self.zero_crossing_unknots

    def passages(self) -> Iterator[tuple[int, int, Passage]]:
        """Yield ``(component, index, passage)`` in code order."""
        for ci, comp in enumerate(self.components):
            for k, p in enumerate(comp):
                yield ci, k, p

    def sign(self, crossing: int) -> int:
        for _, _, p in self.passages():
            if p.crossing == crossing:
                return p.sign
        raise KeyError(crossing)

    def signs(self) -> dict[int, int]:
        return {p.crossing: p.sign for _, _, p in self.passages()}

    def locate(self) -> dict[tuple[int, bool], tuple[int, int]]:
        """Map ``(crossing, over)`` to its ``(component, index)`` position."""
        return {(p.crossing, p.over): (ci, k) for ci, k, p in self.passages()}

    def relabeled(self, mapping: dict[int, int]) -> "VirtualLinkDiagram":
        comps = tuple(
            tuple(Passage(mapping[p.crossing], p.over, p.sign) for p in comp)
            for comp in self.components
        )
        return VirtualLinkDiagram(comps, self.zero_crossing_unknots)

    def normalized(self) -> "VirtualLinkDiagram":
        """Renumber crossings 1..n in order of first appearance."""
        mapping: dict[int, int] = {}
        for _, _, p in self.passages():
            if p.crossing not in mapping:
                mapping[p.crossing] = len(mapping) + 1
        return self.relabeled(mapping)

    def compacted(self) -> "VirtualLinkDiagram":
        """Renumber to 1..n keeping the relative order of existing ids."""
        mapping = {c: i + 1 for i, c in enumerate(self.crossings)}
        return self.relabeled(mapping)

    def mirror(self) -> "VirtualLinkDiagram":
        """Flip every crossing (over <-> under, sign -> -sign)."""
        comps = tuple(
            tuple(Passage(p.crossing, not p.over, -p.sign) for p in comp)
            for comp in self.components
        )
        return VirtualLinkDiagram(comps, self.zero_crossing_unknots)

    def __str__(self):
        return serialize(self)


@dataclass
class ValidationReport:
    issues: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, code: str, message: str, location: str = ""):
        self.issues.append((code, message, location))


def validate(d: VirtualLinkDiagram) -> ValidationReport:
    report = ValidationReport()
    if not d.components and d.zero_crossing_unknots == 0:
        report.add("empty", "diagram has no components")
    if d.zero_crossing_unknots < 0:
        report.add("negative-unknots", "negative crossing-free component count")
    seen: dict[int, list[tuple[Passage, str]]] = {}
    for ci, comp in enumerate(d.components):
        if not comp:
            report.add("empty-component", "component without passages", f"component {ci}")
        for k, p in enumerate(comp):
            if p.crossing < 1:
                report.add("bad-id", f"crossing id {p.crossing} is not positive", f"component {ci}, passage {k}")
            if p.sign not in (1, -1):
                report.add("bad-sign", f"crossing {p.crossing} has sign {p.sign}", f"component {ci}, passage {k}")
            seen.setdefault(p.crossing, []).append((p, f"component {ci}, passage {k}"))
    for c, ps in sorted(seen.items()):
        if len(ps) != 2:
            report.add("count", f"crossing {c} appears {len(ps)} time(s), expected 2", ps[0][1])
            continue
        (p, loc), (q, _) = ps
        if p.over == q.over:
            role = "Over" if p.over else "Under"
            report.add("roles", f"crossing {c} has two {role} passages", loc)
        if p.sign != q.sign:
            report.add("signs", f"crossing {c} has disagreeing signs", loc)
    return report


_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss_code(text: str) -> VirtualLinkDiagram:
    """Parse the line-oriented text format into a normalized diagram."""
    components: list[tuple[Passage, ...]] = []
    unknots = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.replace(" ", "") == "()":
            unknots += 1
            continue
        passages = []
        for m in re.finditer(r"\S+", line):
            tok = m.group(0)
            tm = _TOKEN.fullmatch(tok)
            if tm is None:
                raise GaussCodeSyntaxError(f"bad passage {tok!r}", lineno, m.start() + 1)
            role, num, sgn = tm.groups()
            passages.append(Passage(int(num), role == "O", 1 if sgn == "+" else -1))
        components.append(tuple(passages))
    d = VirtualLinkDiagram(tuple(components), unknots)
    report = validate(d)
    if not report.ok:
        raise InvalidDiagramError(report)
    return d.normalized()


def writhe(d: VirtualLinkDiagram) -> int:
    return sum(d.signs().values())


def shadow_connected(d: VirtualLinkDiagram) -> bool:
    """True iff the crossing graph is connected and no component is crossing-free."""
    if d.zero_crossing_unknots or not d.components or d.n == 0:
        return False
    parent = {c: c for c in d.crossings}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for comp in d.components:
        for k in range(len(comp)):
            a, b = find(comp[k].crossing), find(comp[(k + 1) % len(comp)].crossing)
            parent[a] = b
    return len({find(c) for c in d.crossings}) == 1


def serialize(d: VirtualLinkDiagram, format: str = "text") -> str:
    if format == "text":
        lines = [" ".join(str(p) for p in comp) for comp in d.components]
        lines += ["()"] * d.zero_crossing_unknots
        return "\n".join(lines)
    if format == "json":
        return json.dumps(to_dict(d), sort_keys=True)
    raise ValueError(f"unknown format {format!r}")


def to_dict(d: VirtualLinkDiagram) -> dict:
    return {
        "components": [
            [{"crossing": p.crossing, "role": p.role, "sign": p.sign} for p in comp]
            for comp in d.components
        ],
        "zero_crossing_unknots": d.zero_crossing_unknots,
    }


def from_json(text: str) -> VirtualLinkDiagram:
    data = json.loads(text)
    try:
        comps = tuple(
            tuple(Passage(int(p["crossing"]), p["role"] == "O", int(p["sign"])) for p in comp)
            for comp in data["components"]
        )
        unknots = int(data.get("zero_crossing_unknots", 0))
    except (KeyError, TypeError) as exc:
        raise GaussCodeError(f"malformed diagram object: {exc}") from exc
    d = VirtualLinkDiagram(comps, unknots)
    report = validate(d)
    if not report.ok:
        raise InvalidDiagramError(report)
    return d.normalized()


def load(path_or_text: str) -> VirtualLinkDiagram:
    """Parse text or JSON, sniffing the format from the first character."""
    if path_or_text.lstrip().startswith("{"):
        return from_json(path_or_text)
    return parse_gauss_code(path_or_text)


def from_passages(components: Iterable[Sequence[tuple[str, int, int]]], unknots: int = 0) -> VirtualLinkDiagram:
    """Build a diagram from ``(role, crossing, sign)`` triples (no normalization)."""
    comps = tuple(tuple(Passage(c, r == "O", s) for r, c, s in comp) for comp in components)
    return VirtualLinkDiagram(comps, unknots)
