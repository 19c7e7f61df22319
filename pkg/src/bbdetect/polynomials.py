"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial maps exponent tuples to nonzero ``Fraction`` coefficients;
the zero polynomial is the empty map.  All arithmetic is exact, so tests
for "this combination is identically zero" are decidable with no
tolerance.  Values are immutable by convention and hashable through a
canonical lex-sorted key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple, Union

from .terms import Ring, Term, check_exponent_vector, mul

CoeffLike = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class Polynomial:
    """An immutable sparse polynomial over the rationals."""

    __slots__ = ("_coeffs", "_key")

    def __init__(self, coeffs: Union[Mapping[Term, CoeffLike], Iterable[Tuple[Term, CoeffLike]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Dict[Term, Fraction] = {}
        arity = None
        for t, c in items:
            t = tuple(t)
            if arity is None:
                arity = len(t)
            elif len(t) != arity:
                raise ValueError("mixed term arities in one polynomial")
            c = Fraction(c)
            if not c:
                continue
            prev = acc.get(t)
            c = c if prev is None else prev + c
            if c:
                acc[t] = c
            else:
                del acc[t]
        self._coeffs = acc
        self._key = None

    @classmethod
    def _raw(cls, coeffs: Dict[Term, Fraction]) -> "Polynomial":
        """Wrap an already-canonical dict without copying (internal use)."""
        self = cls.__new__(cls)
        self._coeffs = coeffs
        self._key = None
        return self

    @classmethod
    def single(cls, t: Term, c: CoeffLike = 1) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({tuple(t): c}) if c else cls._raw({})

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @property
    def coeffs(self) -> Dict[Term, Fraction]:
        """The underlying term -> coefficient map.  Treat as read-only."""
        return self._coeffs

    @property
    def arity(self) -> int | None:
        """Number of variables, or None for the zero polynomial."""
        for t in self._coeffs:
            return len(t)
        return None

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def support(self) -> FrozenSet[Term]:
        return frozenset(self._coeffs)

    def coefficient_of(self, t: Term) -> Fraction:
        return self._coeffs.get(tuple(t), _ZERO)

    def add(self, other: "Polynomial") -> "Polynomial":
        a, b = self._coeffs, other._coeffs
        if not a:
            return other
        if not b:
            return self
        if self.arity != other.arity:
            raise ValueError("cannot add polynomials of different arities")
        out = dict(a)
        for t, c in b.items():
            v = out.get(t, _ZERO) + c
            if v:
                out[t] = v
            else:
                del out[t]
        return Polynomial._raw(out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return self.add(other)

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({t: -c for t, c in self._coeffs.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self.add(-other)

    def scale(self, c: CoeffLike) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial.zero()
        return Polynomial._raw({t: v * c for t, v in self._coeffs.items()})

    def term_mul(self, t: Term) -> "Polynomial":
        """Multiply by a single term; the support shifts, coefficients stay."""
        t = tuple(t)
        if self.arity is not None and len(t) != self.arity:
            raise ValueError("term arity does not match polynomial")
        return Polynomial._raw({mul(s, t): c for s, c in self._coeffs.items()})

    def normalize_at(self, b: Term) -> "Polynomial":
        """Scale so the coefficient of b becomes exactly 1."""
        b = tuple(b)
        c = self._coeffs.get(b)
        if c is None:
            raise ValueError("term is not in the support")
        return self if c == _ONE else self.scale(1 / c)

    def evaluate(self, point: Sequence[CoeffLike]) -> Fraction:
        """Exact evaluation at a rational point (one value per variable)."""
        vals = [Fraction(v) for v in point]
        if self.arity is not None and len(vals) != self.arity:
            raise ValueError("point arity does not match polynomial")
        total = _ZERO
        for t, c in self._coeffs.items():
            term_val = c
            for e, v in zip(t, vals):
                if e:
                    term_val *= v**e
            total += term_val
        return total

    def _canonical(self) -> Tuple[Tuple[Term, Fraction], ...]:
        if self._key is None:
            self._key = tuple(sorted(self._coeffs.items()))
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Polynomial(0)"
        parts = ", ".join(f"{t}: {c}" for t, c in self._canonical())
        return f"Polynomial({{{parts}}})"


def format_polynomial(f: Polynomial, ring: Ring | None = None) -> str:
    """Render like ``x1^2*x2 - 2*x2 + 1/3`` with terms in lex order."""
    from .terms import format_term

    if f.is_zero():
        return "0"
    pieces = []
    for t, c in sorted(f.coeffs.items(), key=lambda it: (-sum(it[0]), it[0])):
        mono = format_term(t, ring)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = (first_sign if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


@dataclass(frozen=True)
class PolySystem:
    """An ordered list of nonzero polynomials over one ring.

    Order is significant: certificates index into ``polys``.
    """

    ring: Ring
    polys: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "polys", tuple(self.polys))
        n = self.ring.n_vars
        for idx, p in enumerate(self.polys):
            if p.is_zero():
                raise ValueError(f"polynomial {idx} is zero")
            if p.arity != n:
                raise ValueError(f"polynomial {idx} has arity {p.arity}, ring has {n}")

    def __len__(self) -> int:
        return len(self.polys)

    def support(self) -> FrozenSet[Term]:
        out = set()
        for p in self.polys:
            out.update(p.coeffs)
        return frozenset(out)


def system_support(system: PolySystem) -> FrozenSet[Term]:
    return system.support()


def _poly_to_json(p: Polynomial) -> list:
    return [
        [c.numerator, c.denominator, list(t)]
        for t, c in sorted(p.coeffs.items())
    ]


def _poly_from_json(obj: list, n_vars: int) -> Polynomial:
    pairs = []
    for entry in obj:
        if not isinstance(entry, list) or len(entry) != 3:
            raise ValueError("polynomial entry must be [num, den, exponents]")
        num, den, exps = entry
        t = check_exponent_vector(exps, n_vars)
        pairs.append((t, Fraction(num, den)))
    return Polynomial(pairs)


def system_to_json_obj(system: PolySystem) -> dict:
    return {
        "vars": list(system.ring.var_names),
        "polys": [_poly_to_json(p) for p in system.polys],
    }


def system_from_json_obj(obj: dict) -> PolySystem:
    if not isinstance(obj, dict) or "vars" not in obj or "polys" not in obj:
        raise ValueError("system JSON must contain 'vars' and 'polys'")
    ring = Ring(tuple(obj["vars"]))
    polys = tuple(_poly_from_json(p, ring.n_vars) for p in obj["polys"])
    return PolySystem(ring, polys)


def dump_system(system: PolySystem, extra: dict | None = None) -> str:
    obj = system_to_json_obj(system)
    if extra:
        obj.update(extra)
    return json.dumps(obj, sort_keys=True)


def load_system(text: str) -> PolySystem:
    return system_from_json_obj(json.loads(text))
