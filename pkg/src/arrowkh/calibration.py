"""Select the cusp side table by exhaustive calibration.

Every one of the 256 tables ``(sign, role, entry strand) -> L/R`` is
scored against three requirements:

* classical diagrams (braid closures) have arrow number 0 on every loop;
* the bundled Kishino code reproduces ``1 + A^4 + A^-4 - d^2 K1^2 + 2 K2``;
* the unnormalized arrow polynomial survives seeded R2/R3 walks.

A table and its global L<->R reflection always score the same, so the
selection is expected to be unique up to that reflection.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import bundled, classical_corpus
from .moves import random_equivalent
from .poly import D, ArrowPolynomial, LaurentPoly
from .statesum import DEFAULT_SIDES, DiagramPorts, SideTable, arrow_polynomial

__all__ = ["KISHINO_ARROW", "CalibrationResult", "calibrate", "self_test", "CalibrationError"]

KISHINO_ARROW = (
    ArrowPolynomial.from_laurent(LaurentPoly({0: 1, 4: 1, -4: 1}))
    - ArrowPolynomial.k(1, 2) * (D * D)
    + ArrowPolynomial.k(2) * 2
)


class CalibrationError(RuntimeError):
    pass


@dataclass
class CalibrationResult:
    flags: dict[str, tuple[bool, bool, bool]] = field(default_factory=dict)

    @property
    def survivors(self) -> list[str]:
        return sorted(code for code, f in self.flags.items() if all(f))

    @property
    def unique_up_to_reflection(self) -> bool:
        return len({SideTable(c).canonical() for c in self.survivors}) == 1

    def summary(self) -> str:
        lines = [f"tables tested: {len(self.flags)}",
                 f"survivors: {', '.join(self.survivors) or 'none'}",
                 f"unique up to reflection: {self.unique_up_to_reflection}"]
        return "\n".join(lines)


def _walk_corpus(walks: int, moves: int):
    seeds = [bundled("vtrefoil"), bundled("trefoil"), bundled("kishino"), bundled("vhopf")]
    out = []
    for d in seeds:
        for s in range(walks):
            e, _ = random_equivalent(d, moves, seed=s, kinds=("r2", "r3"))
            out.append((d, e))
    return out


def calibrate(walks: int = 6, moves: int = 8) -> CalibrationResult:
    classical = [e.diagram for e in classical_corpus()]
    kishino = bundled("kishino")
    pairs = _walk_corpus(walks, moves)
    result = CalibrationResult()
    for table in SideTable.all_tables():
        flat_ok = all(
            all(loop.arrow == 0 for loop in ports.trace(sel, table))
            for ports in map(DiagramPorts, classical)
            for sel in range(1 << ports.n)
        )
        kishino_ok = flat_ok and arrow_polynomial(kishino, table) == KISHINO_ARROW
        moves_ok = all(arrow_polynomial(d, table) == arrow_polynomial(e, table) for d, e in pairs)
        result.flags[table.code] = (flat_ok, kishino_ok, moves_ok)
    return result


def self_test(result: CalibrationResult | None = None) -> CalibrationResult:
    """Raise unless calibration picks DEFAULT_SIDES uniquely up to reflection."""
    result = result or calibrate()
    if not result.unique_up_to_reflection:
        raise CalibrationError("side table not unique up to reflection:\n" + result.summary())
    if DEFAULT_SIDES.canonical() != SideTable(result.survivors[0]).canonical():
        raise CalibrationError(f"calibration selected {result.survivors}, built-in is {DEFAULT_SIDES.code}")
    return result
