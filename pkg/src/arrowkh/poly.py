"""Exact Laurent polynomials in A and arrow polynomials over them.

Both types are immutable, hashable and kept in canonical form (no zero
coefficients stored), so ``==`` is mathematical equality.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Iterator, Mapping

__all__ = [
    "LaurentPoly",
    "ArrowMonomial",
    "ArrowPolynomial",
    "A",
    "D",
    "laurent_add",
    "laurent_mul",
    "arrow_mul",
    "specialize",
    "a_span",
]


class LaurentPoly:
    """Integer Laurent polynomial in ``A``: a map exponent -> nonzero coefficient."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        clean = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    clean[int(e)] = int(c)
        self._coeffs = dict(sorted(clean.items()))
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def is_zero(self) -> bool:
        return not self._coeffs

    def min_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return next(iter(self._coeffs))

    def max_degree(self) -> int:
        if not self._coeffs:
            raise ValueError("zero polynomial has no degree")
        return next(reversed(self._coeffs))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._coeffs.items()))
        return self._hash

    def __bool__(self):
        return bool(self._coeffs)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._coeffs.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out: dict[int, int] = defaultdict(int)
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                out[e1 + e2] += c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            # only monomials are units
            if len(self._coeffs) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self._coeffs.items()
            if c not in (1, -1):
                raise ValueError("negative power of a non-unit monomial")
            return LaurentPoly({e * k: c ** (-k)})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def evaluate(self, a):
        """Evaluate at a numeric (or any ring) value of A."""
        return sum(c * a ** e for e, c in self._coeffs.items())

    def at_one(self) -> int:
        return sum(self._coeffs.values())

    def __repr__(self):
        return f"LaurentPoly({self._coeffs!r})"

    def __str__(self):
        return _render_laurent(self)


def _render_laurent(p: LaurentPoly) -> str:
    if not p._coeffs:
        return "0"
    parts = []
    # descending degree, e.g. "A^4+2+A^-4"
    for e, c in sorted(p._coeffs.items(), reverse=True):
        if e == 0:
            body = str(abs(c))
        else:
            mono = "A" if e == 1 else f"A^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


A = LaurentPoly.monomial(1)
# loop value -A^2 - A^-2
D = LaurentPoly({2: -1, -2: -1})


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


class ArrowMonomial:
    """Monomial in the variables K_1, K_2, ...; empty means 1."""

    __slots__ = ("_exps",)

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict[int, int] = defaultdict(int)
        for n, p in items:
            if n < 1:
                raise ValueError(f"K index must be positive, got {n}")
            acc[int(n)] += int(p)
        if any(p < 0 for p in acc.values()):
            raise ValueError("negative K power")
        self._exps = tuple(sorted((n, p) for n, p in acc.items() if p))

    @classmethod
    def from_labels(cls, labels: Iterable[int]) -> "ArrowMonomial":
        """Product of K_n over the nonzero labels (zeros contribute 1)."""
        return cls([(n, 1) for n in labels if n])

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self._exps)

    def degree(self) -> int:
        return sum(p for _, p in self._exps)

    def index_sum(self) -> int:
        return sum(n * p for n, p in self._exps)

    def __mul__(self, other: "ArrowMonomial") -> "ArrowMonomial":
        return ArrowMonomial(list(self._exps) + list(other._exps))

    def __eq__(self, other):
        return isinstance(other, ArrowMonomial) and self._exps == other._exps

    def __hash__(self):
        return hash(self._exps)

    def __lt__(self, other: "ArrowMonomial"):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return self._exps

    def __bool__(self):
        return bool(self._exps)

    def __repr__(self):
        return f"ArrowMonomial({dict(self._exps)!r})"

    def __str__(self):
        if not self._exps:
            return "1"
        return "*".join(f"K{n}" if p == 1 else f"K{n}^{p}" for n, p in self._exps)


class ArrowPolynomial:
    """Finite sum of ArrowMonomial terms with LaurentPoly coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[ArrowMonomial, LaurentPoly] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if isinstance(c, int):
                    c = LaurentPoly.const(c)
                if c:
                    clean[m] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = None

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "ArrowPolynomial":
        return cls({ArrowMonomial(): p})

    @classmethod
    def const(cls, c: int) -> "ArrowPolynomial":
        return cls.from_laurent(LaurentPoly.const(c))

    @classmethod
    def k(cls, n: int, power: int = 1) -> "ArrowPolynomial":
        return cls({ArrowMonomial({n: power}): LaurentPoly.const(1)})

    @property
    def terms(self) -> dict[ArrowMonomial, LaurentPoly]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[ArrowMonomial]:
        return iter(self._terms)

    def coefficient(self, m: ArrowMonomial) -> LaurentPoly:
        return self._terms.get(m, LaurentPoly())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = _lift(other)
        if not isinstance(other, ArrowPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __neg__(self):
        return ArrowPolynomial({m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out[m] + c if m in out else c
        return ArrowPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_lift(other))

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[ArrowMonomial, LaurentPoly] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                c = c1 * c2
                out[m] = out[m] + c if m in out else c
        return ArrowPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1 or next(iter(self._terms)):
                raise ValueError("negative power needs a pure Laurent unit")
            return ArrowPolynomial.from_laurent(next(iter(self._terms.values())) ** k)
        result = ArrowPolynomial.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __repr__(self):
        return f"ArrowPolynomial({self._terms!r})"

    def __str__(self):
        return render(self)

    def to_dict(self) -> list[dict]:
        """Structured form: a list of {monomial, coefficients} records."""
        return [
            {
                "monomial": {str(n): p for n, p in m.exponents.items()},
                "coefficients": {str(e): c for e, c in coeff.items()},
            }
            for m, coeff in self._terms.items()
        ]


def _lift(x):
    if isinstance(x, ArrowPolynomial):
        return x
    if isinstance(x, int):
        return ArrowPolynomial.const(x)
    if isinstance(x, LaurentPoly):
        return ArrowPolynomial.from_laurent(x)
    return NotImplemented


def render(p: ArrowPolynomial) -> str:
    """Text form, e.g. ``1 + A^4 + A^-4 - (A^4+2+A^-4)*K1^2 + 2*K2``."""
    if not p._terms:
        return "0"
    chunks = []
    for m, c in p._terms.items():
        if not m:
            # constant term: spell out each A-power separately
            for e, a in sorted(c.items(), key=lambda ea: (abs(ea[0]), -ea[0])):
                chunks.append(_signed(a, None if e == 0 else ("A" if e == 1 else f"A^{e}")))
            continue
        mono = str(m)
        if len(c.coeffs) == 1:
            (e, a), = c.items()
            if e == 0:
                chunks.append(_signed(a, mono))
            else:
                amono = "A" if e == 1 else f"A^{e}"
                chunks.append(_signed(a, f"{amono}*{mono}"))
        else:
            lead = c.coeffs[c.max_degree()]
            inner = -c if lead < 0 else c
            chunks.append(("-" if lead < 0 else "+", f"({inner})*{mono}"))
    head_sign, head = chunks[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in chunks[1:]:
        out += f" {sign} {body}"
    return out


def _signed(coeff: int, mono: str | None):
    sign = "-" if coeff < 0 else "+"
    a = abs(coeff)
    if mono is None:
        return sign, str(a)
    return sign, mono if a == 1 else f"{a}*{mono}"


def arrow_mul(a: ArrowPolynomial, b: ArrowPolynomial) -> ArrowPolynomial:
    return a * b


def specialize(p: ArrowPolynomial, assignment: str):
    """Substitute either every ``K_n -> 1`` (``"K=1"``) or ``A -> 1`` (``"A=1"``).

    ``K=1`` returns a LaurentPoly (the bracket); ``A=1`` returns an
    ArrowPolynomial with integer coefficients.
    """
    if assignment == "K=1":
        total = LaurentPoly()
        for c in p._terms.values():
            total = total + c
        return total
    if assignment == "A=1":
        return ArrowPolynomial({m: LaurentPoly.const(c.at_one()) for m, c in p._terms.items()})
    raise ValueError(f"unknown assignment {assignment!r}; use 'K=1' or 'A=1'")


def a_span(p: ArrowPolynomial | LaurentPoly) -> int:
    """Max minus min A-exponent over every coefficient."""
    coeffs = [p] if isinstance(p, LaurentPoly) else list(p._terms.values())
    coeffs = [c for c in coeffs if c]
    if not coeffs:
        raise ValueError("span of the zero polynomial is undefined")
    return max(c.max_degree() for c in coeffs) - min(c.min_degree() for c in coeffs)
