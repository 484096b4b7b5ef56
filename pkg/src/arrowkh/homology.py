"""F2 homology of the projected complexes: ranks, Betti tables, Euler data."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .khovanov import ChainComplex, GradingSystem
from .knotio import VirtualLinkDiagram
from .poly import A, ArrowMonomial, ArrowPolynomial, LaurentPoly

__all__ = [
    "f2_rank",
    "BettiKey",
    "BettiTable",
    "HomologyError",
    "betti_table",
    "euler_reconstruct",
    "euler_from_betti",
    "thickness",
]


class HomologyError(ValueError):
    pass


def f2_rank(rows: Iterable[int]) -> int:
    """Rank over F2 of a matrix given as bit-packed integer rows."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            top = row.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = row
                rank += 1
                break
            row ^= p
    return rank


@dataclass(frozen=True, order=True)
class BettiKey:
    i: int
    j: int
    g: int = 0
    multi: tuple[int, ...] = ()
    vect: tuple[tuple[int, int], ...] = ()

    def plain(self) -> tuple[int, int]:
        return (self.i, self.j)

    def render_multi(self) -> str:
        return "{" + ",".join(map(str, self.multi)) + "}"

    def render_vect(self) -> str:
        if not self.vect:
            return "0"
        return ",".join(f"{k}:{v:+d}" for k, v in self.vect)


@dataclass
class BettiTable:
    system: GradingSystem
    entries: dict[BettiKey, int] = field(default_factory=dict)
    normalized: bool = False
    n_plus: int = 0
    n_minus: int = 0

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.system == other.system and self.entries == other.entries and self.normalized == other.normalized

    def total(self) -> int:
        return sum(self.entries.values())

    def project(self) -> dict[tuple[int, int], int]:
        """Forget every grading except (i, j)."""
        out: dict[tuple[int, int], int] = defaultdict(int)
        for k, v in self.entries.items():
            out[k.plain()] += v
        return dict(out)

    def rows(self) -> list[tuple[BettiKey, int]]:
        return sorted(self.entries.items())

    def header(self) -> list[str]:
        cols = ["i", "j"]
        if self.system is GradingSystem.DOTTED:
            cols.append("g")
        if self.system is GradingSystem.FULL:
            cols += ["multi", "vect"]
        return cols + ["dim"]

    def row_cells(self, key: BettiKey, dim: int) -> list[str]:
        cells = [str(key.i), str(key.j)]
        if self.system is GradingSystem.DOTTED:
            cells.append(str(key.g))
        if self.system is GradingSystem.FULL:
            cells += [key.render_multi(), key.render_vect()]
        return cells + [str(dim)]

    def render(self, sep: str = "\t") -> str:
        lines = [sep.join(self.header())]
        lines += [sep.join(self.row_cells(k, v)) for k, v in self.rows()]
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "system": self.system.value,
            "normalized": self.normalized,
            "shift": {"n_plus": self.n_plus, "n_minus": self.n_minus},
            "entries": [
                {"i": k.i, "j": k.j, "g": k.g, "multi": list(k.multi),
                 "vect": {str(s): v for s, v in k.vect}, "dim": d}
                for k, d in self.rows()
            ],
        }


def _bucket_key(c: ChainComplex, gen) -> BettiKey:
    gv = c.grading(gen)
    if c.system is GradingSystem.PLAIN:
        return BettiKey(gv.i, gv.j)
    if c.system is GradingSystem.DOTTED:
        return BettiKey(gv.i, gv.j, gv.g)
    return BettiKey(gv.i, gv.j, 0, gv.multi, gv.vect)


def _signs(c: ChainComplex) -> tuple[int, int]:
    signs = c.cube.ports.signs
    return sum(1 for s in signs if s > 0), sum(1 for s in signs if s < 0)


def betti_table(c: ChainComplex, normalized: bool = False) -> BettiTable:
    """Homology of (C, d') bucket by bucket.

    The projected differential never mixes buckets, so the rank of d' on
    one bucket is the rank of the rows whose source lies in it.
    """
    dims: dict[BettiKey, int] = defaultdict(int)
    rows: dict[BettiKey, list[int]] = defaultdict(list)
    for i in range(c.n + 1):
        for gen, row in zip(c.bases[i], c.dprime[i]):
            key = _bucket_key(c, gen)
            dims[key] += 1
            if row:
                rows[key].append(row)
    ranks = {key: f2_rank(r) for key, r in rows.items()}
    n_plus, n_minus = _signs(c)
    table = BettiTable(c.system, normalized=normalized, n_plus=n_plus, n_minus=n_minus)
    for key, dim in dims.items():
        prev = BettiKey(key.i - 1, key.j, key.g, key.multi, key.vect)
        b = dim - ranks.get(key, 0) - ranks.get(prev, 0)
        if b < 0:
            raise HomologyError(f"negative Betti number at {key}; the complex is ill-formed")
        if b:
            if normalized:
                key = BettiKey(key.i - n_minus, key.j + n_plus - 2 * n_minus, key.g, key.multi, key.vect)
            table.entries[key] = b
    return table


def _q_power(e: int) -> LaurentPoly:
    """q^e evaluated at q = -A^-2."""
    return LaurentPoly({-2 * e: -1 if e % 2 else 1})


def _euler(counts: dict[tuple[int, int, tuple[int, ...]], int], n: int) -> ArrowPolynomial:
    out = ArrowPolynomial()
    scale = A ** n
    for (i, j, multi), dim in counts.items():
        coeff = _q_power(j) * scale * ((-1) ** i * dim)
        out = out + ArrowPolynomial({ArrowMonomial.from_labels(multi): coeff})
    return out


def euler_reconstruct(c: ChainComplex, d: VirtualLinkDiagram | None = None) -> ArrowPolynomial:
    """Graded Euler characteristic of the unnormalized Full complex.

    Chain dimensions are summed with sign (-1)^i, weighted q^j times the
    product of K_p over the multiple grading, then q = -A^-2 and the result
    is scaled by A^n.  It equals d times the arrow polynomial.
    """
    if c.system is not GradingSystem.FULL:
        raise HomologyError("Euler reconstruction needs the full grading system")
    counts: dict[tuple[int, int, tuple[int, ...]], int] = defaultdict(int)
    for i in range(c.n + 1):
        for gen in c.bases[i]:
            gv = c.grading(gen)
            counts[(gv.i, gv.j, gv.multi)] += 1
    return _euler(counts, c.n)


def euler_from_betti(t: BettiTable, n: int) -> ArrowPolynomial:
    """The same Euler characteristic read off an unnormalized Full table."""
    if t.system is not GradingSystem.FULL or t.normalized:
        raise HomologyError("need an unnormalized full table")
    counts: dict[tuple[int, int, tuple[int, ...]], int] = defaultdict(int)
    for k, v in t.entries.items():
        counts[(k.i, k.j, k.multi)] += v
    return _euler(counts, n)


def thickness(t: BettiTable | dict[tuple[int, int], int]) -> int:
    """Number of slope-two diagonals between the extreme occupied ones."""
    cells = t.project() if isinstance(t, BettiTable) else t
    diags = {j - 2 * i for (i, j), v in cells.items() if v}
    if not diags:
        raise HomologyError("empty homology has no thickness")
    return (max(diags) - min(diags)) // 2 + 1
