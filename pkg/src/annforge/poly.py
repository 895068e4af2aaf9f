"""Canonical sparse multivariate polynomials over an exact field.

Variables are nonnegative integer ids; display names live in a Namespace and
only matter at the text boundary (parsing/printing).  Terms are kept in a
dict keyed by Monomial; the canonical order is graded lexicographic with
lower variable ids more significant.  Printing always emits terms in
descending canonical order, so serialize -> parse -> serialize is a fixed
point.

Text grammar (whitespace-insensitive): signed terms ``c*v1^e1*...*vk^ek``
with rational ``c`` written ``a`` or ``a/b``, e.g. ``x1^2 - x2^2 + 1/2*x3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import MissingAssignmentError, ParseError
from .fields import Field, FieldValue, check_same_field


@dataclass(frozen=True)
class Monomial:
    """Product of variable powers; ``exps`` is a sorted tuple of (var, exp)
    pairs with strictly positive exponents.  The empty tuple is 1."""

    exps: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def of(mapping: Mapping[int, int]) -> "Monomial":
        items = tuple(sorted((v, e) for v, e in mapping.items() if e != 0))
        for v, e in items:
            if e < 0 or v < 0:
                raise ValueError(f"bad exponent entry ({v}, {e})")
        return Monomial(items)

    @cached_property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @cached_property
    def sort_key(self) -> tuple:
        # Graded lex, variable 0 most significant: compare degree first,
        # then (-var, exp) pairs so that a larger key means a larger monomial.
        return (self.degree, tuple((-v, e) for v, e in self.exps))

    def degree_in(self, var: int) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    def variables(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.exps)

    def mul(self, other: "Monomial") -> "Monomial":
        merged = dict(self.exps)
        for v, e in other.exps:
            merged[v] = merged.get(v, 0) + e
        return Monomial(tuple(sorted(merged.items())))

    def divides(self, other: "Monomial") -> bool:
        it = dict(other.exps)
        return all(it.get(v, 0) >= e for v, e in self.exps)

    def divide(self, other: "Monomial") -> "Monomial":
        """self / other; caller must ensure other.divides(self)."""
        merged = dict(self.exps)
        for v, e in other.exps:
            merged[v] = merged[v] - e
        return Monomial(tuple(sorted((v, e) for v, e in merged.items() if e != 0)))

    def without(self, var: int) -> "Monomial":
        return Monomial(tuple((v, e) for v, e in self.exps if v != var))

    def rename(self, mapping: Mapping[int, int]) -> "Monomial":
        return Monomial(tuple(sorted((mapping.get(v, v), e) for v, e in self.exps)))


MONOMIAL_ONE = Monomial()


class Polynomial:
    """Immutable-by-convention sparse polynomial; zero coefficients never
    stored, so dict equality is canonical equality."""

    __slots__ = ("field", "_terms")

    def __init__(self, field: Field, terms: Mapping[Monomial, FieldValue] | None = None):
        self.field = field
        clean: dict[Monomial, FieldValue] = {}
        if terms:
            for mono, coeff in terms.items():
                c = field.normalize(coeff)
                if not field.is_zero(c):
                    clean[mono] = c
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(field: Field) -> "Polynomial":
        return Polynomial(field)

    @staticmethod
    def constant(field: Field, value) -> "Polynomial":
        return Polynomial(field, {MONOMIAL_ONE: field.normalize(value)})

    @staticmethod
    def variable(field: Field, var: int) -> "Polynomial":
        return Polynomial(field, {Monomial.of({var: 1}): field.one})

    @staticmethod
    def monomial(field: Field, coeff, exps: Mapping[int, int]) -> "Polynomial":
        return Polynomial(field, {Monomial.of(exps): field.normalize(coeff)})

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> Iterator[tuple[Monomial, FieldValue]]:
        """Terms in descending canonical (graded-lex) order."""
        for mono in sorted(self._terms, key=lambda m: m.sort_key, reverse=True):
            yield mono, self._terms[mono]

    def iter_terms(self) -> Iterator[tuple[Monomial, FieldValue]]:
        """Terms in arbitrary order (no sorting cost)."""
        return iter(self._terms.items())

    def term_count(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self._terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((m.degree_in(var) for m in self._terms), default=0)

    def variables(self) -> set[int]:
        out: set[int] = set()
        for mono in self._terms:
            out.update(mono.variables())
        return out

    def lead_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=lambda m: m.sort_key)

    def lead_coefficient(self) -> FieldValue:
        return self._terms[self.lead_monomial()]

    def constant_term(self) -> FieldValue:
        return self._terms.get(MONOMIAL_ONE, self.field.zero)

    def coefficient(self, mono: Monomial) -> FieldValue:
        return self._terms.get(mono, self.field.zero)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self._terms == other._terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        check_same_field(self.field, other.field)
        f = self.field
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            c = f.add(out.get(mono, f.zero), coeff)
            if f.is_zero(c):
                out.pop(mono, None)
            else:
                out[mono] = c
        return self._wrap(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return self._wrap({m: f.neg(c) for m, c in self._terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        check_same_field(self.field, other.field)
        f = self.field
        out: dict[Monomial, FieldValue] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = ma.mul(mb)
                c = f.add(out.get(mono, f.zero), f.mul(ca, cb))
                if f.is_zero(c):
                    out.pop(mono, None)
                else:
                    out[mono] = c
        return self._wrap(out)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        f = self.field
        c = f.normalize(c)
        if f.is_zero(c):
            return Polynomial.zero(f)
        return self._wrap({m: f.mul(v, c) for m, v in self._terms.items()})

    def _wrap(self, terms: dict[Monomial, FieldValue]) -> "Polynomial":
        p = Polynomial.__new__(Polynomial)
        p.field = self.field
        p._terms = terms
        return p

    # -- evaluation / substitution -------------------------------------------

    def evaluate(self, point: Sequence[FieldValue] | Mapping[int, FieldValue]) -> FieldValue:
        """Exact value at a point; every variable in the support must be
        assigned."""
        f = self.field
        get = point.get if isinstance(point, Mapping) else None
        acc = f.zero
        for mono, coeff in self._terms.items():
            val = coeff
            for v, e in mono.exps:
                if get is not None:
                    a = get(v)
                    if a is None:
                        raise MissingAssignmentError(f"no value for variable id {v}")
                else:
                    if v >= len(point):
                        raise MissingAssignmentError(f"no value for variable id {v}")
                    a = point[v]
                val = f.mul(val, f.pow(f.normalize(a), e))
            acc = f.add(acc, val)
        return acc

    def compose(self, subst: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution var -> subst[var]; every variable in the
        support must be covered.  Powers of the substituted polynomials are
        memoized across terms."""
        f = self.field
        for v in self.variables():
            if v not in subst:
                raise MissingAssignmentError(f"no substitution for variable id {v}")
        powers: dict[int, list[Polynomial]] = {}

        def power(v: int, e: int) -> Polynomial:
            cache = powers.setdefault(v, [Polynomial.constant(f, 1)])
            while len(cache) <= e:
                cache.append(cache[-1] * subst[v])
            return cache[e]

        acc = Polynomial.zero(f)
        for mono, coeff in self._terms.items():
            term = Polynomial.constant(f, coeff)
            for v, e in mono.exps:
                term = term * power(v, e)
            acc = acc + term
        return acc

    def substitute(self, partial: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Like compose, but variables absent from ``partial`` stay themselves."""
        subst = dict(partial)
        for v in self.variables():
            if v not in subst:
                subst[v] = Polynomial.variable(self.field, v)
        return self.compose(subst)

    def rename_variables(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Injective variable relabeling (ids absent from mapping unchanged)."""
        return self._wrap({m.rename(mapping): c for m, c in self._terms.items()})

    # -- calculus / views ----------------------------------------------------

    def partial_derivative(self, var: int) -> "Polynomial":
        f = self.field
        out: dict[Monomial, FieldValue] = {}
        for mono, coeff in self._terms.items():
            e = mono.degree_in(var)
            if e == 0:
                continue
            lowered = dict(mono.exps)
            if e == 1:
                lowered.pop(var)
            else:
                lowered[var] = e - 1
            m = Monomial(tuple(sorted(lowered.items())))
            c = f.add(out.get(m, f.zero), f.mul(coeff, f.normalize(e)))
            if f.is_zero(c):
                out.pop(m, None)
            else:
                out[m] = c
        return self._wrap(out)

    def coefficient_in(self, var: int, k: int) -> "Polynomial":
        """The polynomial q_k with p = sum_k q_k * var^k (var removed)."""
        out = {m.without(var): c for m, c in self._terms.items() if m.degree_in(var) == k}
        return self._wrap(out)

    def coefficients_in(self, var: int) -> list["Polynomial"]:
        """Dense-in-one-variable view [q_0, ..., q_d]; storage stays sparse."""
        d = self.degree_in(var)
        buckets: list[dict[Monomial, FieldValue]] = [{} for _ in range(d + 1)]
        for m, c in self._terms.items():
            buckets[m.degree_in(var)][m.without(var)] = c
        return [self._wrap(b) for b in buckets]

    # -- division ------------------------------------------------------------

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial | None":
        """Quotient q with self = q * divisor, or None when not divisible.

        Single-divisor division under graded-lex: if at any step the leading
        term of the remainder is not divisible by the divisor's leading term,
        the remainder is provably nonzero and we stop.
        """
        check_same_field(self.field, divisor.field)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        lead_m = divisor.lead_monomial()
        lead_c = divisor.lead_coefficient()
        rem = self
        quot: dict[Monomial, FieldValue] = {}
        while not rem.is_zero():
            rm = rem.lead_monomial()
            if not lead_m.divides(rm):
                return None
            qm = rm.divide(lead_m)
            qc = f.div(rem._terms[rm], lead_c)
            quot[qm] = qc
            rem = rem - divisor * Polynomial(f, {qm: qc})
        return Polynomial(f, quot)


# -- namespaces and the text grammar ----------------------------------------

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*|\d+/\d+|\d+|\^|\*|\+|-)")


class Namespace:
    """Bidirectional map between variable ids and display names."""

    def __init__(self, names: Iterable[str]):
        self.names = list(names)
        self._ids = {n: i for i, n in enumerate(self.names)}
        if len(self._ids) != len(self.names):
            raise ValueError("duplicate variable names")
        for n in self.names:
            if not _NAME_RE.fullmatch(n):
                raise ValueError(f"invalid variable name {n!r}")

    def __len__(self) -> int:
        return len(self.names)

    def id(self, name: str) -> int:
        if name not in self._ids:
            raise ParseError(f"unknown variable {name!r}")
        return self._ids[name]

    def name(self, var: int) -> str:
        if var >= len(self.names):
            raise KeyError(f"variable id {var} outside namespace")
        return self.names[var]

    def extended(self, extra: Iterable[str]) -> "Namespace":
        return Namespace(self.names + list(extra))

    @staticmethod
    def indexed(prefix: str, count: int, start: int = 1) -> "Namespace":
        return Namespace(f"{prefix}{i}" for i in range(start, start + count))

    @staticmethod
    def seed(n: int, s: int) -> "Namespace":
        """x1..xn, y1..ys: the seed variables of a local encoding."""
        return Namespace([f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, s + 1)])

    @staticmethod
    def outputs(m: int) -> "Namespace":
        """z1..zm: the output-side variables annihilators live on."""
        return Namespace.indexed("z", m)

    @staticmethod
    def inferred(texts: Iterable[str]) -> "Namespace":
        """Collect identifiers from polynomial texts, natural-sorted
        (alphabetic prefix, then numeric suffix as an integer)."""
        seen = set()
        for text in texts:
            seen.update(_NAME_RE.findall(text))

        def key(name: str):
            m = re.fullmatch(r"([A-Za-z_]+?)(\d*)", name)
            prefix, digits = (m.group(1), m.group(2)) if m else (name, "")
            return (prefix, int(digits) if digits else -1, name)

        return Namespace(sorted(seen, key=key))


def parse_polynomial(text: str, field: Field, ns: Namespace) -> Polynomial:
    """Parse the term grammar; raises ParseError with position context."""
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad character at position {pos} in {text!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial text")

    result = Polynomial.zero(field)
    i = 0
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise ParseError(f"dangling sign in {text!r}")
        coeff = field.one if sign == 1 else field.neg(field.one)
        exps: dict[int, int] = {}
        saw_factor = False
        while True:
            tok = tokens[i]
            if tok[0].isdigit():
                coeff = field.mul(coeff, field.parse_value(tok))
            else:
                var = ns.id(tok)
                exp = 1
                if i + 2 < len(tokens) and tokens[i + 1] == "^":
                    if not tokens[i + 2].isdigit():
                        raise ParseError(f"bad exponent after {tok} in {text!r}")
                    exp = int(tokens[i + 2])
                    i += 2
                elif i + 1 < len(tokens) and tokens[i + 1] == "^":
                    raise ParseError(f"dangling ^ in {text!r}")
                exps[var] = exps.get(var, 0) + exp
            saw_factor = True
            i += 1
            if i < len(tokens) and tokens[i] == "*":
                i += 1
                if i >= len(tokens):
                    raise ParseError(f"dangling * in {text!r}")
                continue
            break
        if not saw_factor:
            raise ParseError(f"empty term in {text!r}")
        result = result + Polynomial.monomial(field, coeff, exps)
    return result


def format_polynomial(p: Polynomial, ns: Namespace | None = None) -> str:
    """Canonical text: descending graded-lex terms, exact round trip."""
    if p.is_zero():
        return "0"
    f = p.field
    parts: list[str] = []
    for idx, (mono, coeff) in enumerate(p.terms()):
        neg = f.format_value(coeff).startswith("-")
        mag = f.neg(coeff) if neg else coeff
        factors = []
        mag_text = f.format_value(mag)
        if mag_text != "1" or not mono.exps:
            factors.append(mag_text)
        for v, e in mono.exps:
            name = ns.name(v) if ns is not None else f"v{v + 1}"
            factors.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(factors)
        if idx == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
