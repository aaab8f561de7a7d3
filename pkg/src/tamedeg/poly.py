"""Exact multivariate polynomials over Q with weighted gradings.

A polynomial is a finite map from exponent tuples to nonzero rational
coefficients; the zero polynomial is the empty map, so representations are
canonical and equality is decidable.  Degrees take values in Z^k under a
vector of positive weights (one group element per variable), with the zero
polynomial at minus infinity.  On top of the ring operations this module
computes leading forms, formal partials, degrees of wedge products of
differentials, Jacobian determinants and power dependence of pairs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import BudgetExceededError, DomainError
from .ordgroup import (
    NEG_INF,
    DegreeValue,
    GroupElem,
    coerce_weight_vector,
)

Monomial = tuple[int, ...]


class Budget:
    """Caps on intermediate size during polynomial composition.

    term_cap bounds the number of stored terms of any single result;
    op_cap bounds the total number of coefficient multiplications across
    the lifetime of the budget.
    """

    __slots__ = ("term_cap", "op_cap", "ops_used")

    def __init__(self, term_cap: int = 200_000, op_cap: Optional[int] = None):
        self.term_cap = term_cap
        self.op_cap = op_cap
        self.ops_used = 0

    def charge(self, terms: int, ops: int) -> None:
        self.ops_used += ops
        if terms > self.term_cap:
            raise BudgetExceededError(
                f"term budget exceeded: {terms} > {self.term_cap}"
            )
        if self.op_cap is not None and self.ops_used > self.op_cap:
            raise BudgetExceededError(
                f"operation budget exceeded: {self.ops_used} > {self.op_cap}"
            )


class Polynomial:
    """Canonical sparse polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise DomainError("polynomials need at least one variable")
        self.nvars = nvars
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in dict(terms).items():
                mono = tuple(mono)
                if len(mono) != nvars:
                    raise DomainError(
                        f"exponent tuple {mono} does not match {nvars} variables"
                    )
                if any(e < 0 for e in mono):
                    raise DomainError(f"negative exponent in {mono}")
                c = Fraction(coeff)
                if c != 0:
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int = 3) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, value, nvars: int = 3) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, index: int, nvars: int = 3) -> "Polynomial":
        if not 0 <= index < nvars:
            raise DomainError(f"variable index {index} out of range for n={nvars}")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff=1, nvars: Optional[int] = None) -> "Polynomial":
        exponents = tuple(exponents)
        return cls(nvars or len(exponents), {exponents: Fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise DomainError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DomainError("variable counts differ")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono, 0) + coeff
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.nvars)
            return Polynomial(
                self.nvars, {m: c * other for m, c in self.terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        return power(self, exponent)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def total_degree(self) -> DegreeValue:
        if not self.terms:
            return NEG_INF
        return GroupElem((max(sum(m) for m in self.terms),))

    def total_degree_int(self) -> int:
        """Total degree as a plain int; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def fingerprint(self) -> tuple:
        return (self.nvars, tuple(sorted(self.terms.items())))

    def render(self) -> str:
        return render(self)

    def __repr__(self):
        return f"<poly {render(self)}>"


def multiply(f: Polynomial, g: Polynomial, budget: Optional[Budget] = None) -> Polynomial:
    if f.nvars != g.nvars:
        raise DomainError("variable counts differ")
    if f.is_zero or g.is_zero:
        return Polynomial.zero(f.nvars)
    acc: dict[Monomial, Fraction] = {}
    g_items = list(g.terms.items())
    for ma, ca in f.terms.items():
        for mb, cb in g_items:
            key = tuple(x + y for x, y in zip(ma, mb))
            prev = acc.get(key)
            acc[key] = ca * cb if prev is None else prev + ca * cb
        if budget is not None:
            budget.charge(len(acc), len(g_items))
    return Polynomial(f.nvars, acc)


def power(f: Polynomial, exponent: int, budget: Optional[Budget] = None) -> Polynomial:
    if not isinstance(exponent, int) or exponent < 0:
        raise DomainError("exponent must be a nonnegative integer")
    result = Polynomial.constant(1, f.nvars)
    base = f
    e = exponent
    while e:
        if e & 1:
            result = multiply(result, base, budget)
        e >>= 1
        if e:
            base = multiply(base, base, budget)
    return result


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def substitute(
    f: Polynomial,
    replacements: Sequence[Polynomial],
    budget: Optional[Budget] = None,
) -> Polynomial:
    """Evaluate f at the given polynomials, one per variable of f."""
    if len(replacements) != f.nvars:
        raise DomainError(
            f"need {f.nvars} replacement polynomials, got {len(replacements)}"
        )
    if not replacements:
        raise DomainError("need at least one replacement")
    m = replacements[0].nvars
    for r in replacements:
        if r.nvars != m:
            raise DomainError("replacements must share one variable count")
    if f.is_zero:
        return Polynomial.zero(m)
    max_exp = [0] * f.nvars
    for mono in f.terms:
        for i, e in enumerate(mono):
            if e > max_exp[i]:
                max_exp[i] = e
    powers: list[list[Polynomial]] = []
    for i, r in enumerate(replacements):
        row = [Polynomial.constant(1, m)]
        for _ in range(max_exp[i]):
            row.append(multiply(row[-1], r, budget))
        powers.append(row)
    acc: dict[Monomial, Fraction] = {}
    for mono, coeff in f.terms.items():
        term = Polynomial.constant(coeff, m)
        for i, e in enumerate(mono):
            if e:
                term = multiply(term, powers[i][e], budget)
        for key, c in term.terms.items():
            prev = acc.get(key)
            total = c if prev is None else prev + c
            if total:
                acc[key] = total
            else:
                acc.pop(key, None)
        if budget is not None:
            budget.charge(len(acc), 0)
    return Polynomial(m, acc)


def degree_w(f: Polynomial, weights=None) -> DegreeValue:
    """Maximal weighted degree over the terms of f; NEG_INF for zero."""
    ws = coerce_weight_vector(weights, f.nvars)
    if f.is_zero:
        return NEG_INF
    if all(w.rank == 1 for w in ws):
        ints = [w.coords[0] for w in ws]
        return GroupElem(
            (max(sum(e * w for e, w in zip(mono, ints)) for mono in f.terms),)
        )
    best: Optional[GroupElem] = None
    for mono in f.terms:
        val = GroupElem.zero(ws[0].rank)
        for e, w in zip(mono, ws):
            if e:
                val = val + e * w
        if best is None or val > best:
            best = val
    return best


def leading_form(f: Polynomial, weights=None) -> Polynomial:
    """Sum of the terms of maximal weighted degree; zero for zero input."""
    ws = coerce_weight_vector(weights, f.nvars)
    if f.is_zero:
        return Polynomial.zero(f.nvars)
    scored: list[tuple[GroupElem, Monomial]] = []
    for mono in f.terms:
        val = GroupElem.zero(ws[0].rank)
        for e, w in zip(mono, ws):
            if e:
                val = val + e * w
        scored.append((val, mono))
    top = max(val for val, _ in scored)
    return Polynomial(
        f.nvars, {mono: f.terms[mono] for val, mono in scored if val == top}
    )


def partial(f: Polynomial, index: int) -> Polynomial:
    """Formal partial derivative with respect to variable index (0-based)."""
    if not 0 <= index < f.nvars:
        raise DomainError(f"variable index {index} out of range for n={f.nvars}")
    out: dict[Monomial, Fraction] = {}
    for mono, coeff in f.terms.items():
        e = mono[index]
        if e:
            key = mono[:index] + (e - 1,) + mono[index + 1 :]
            out[key] = out.get(key, Fraction(0)) + coeff * e
    return Polynomial(f.nvars, out)


def wedge2_degree(f: Polynomial, g: Polynomial, weights=None) -> DegreeValue:
    """Weighted degree of df ^ dg: the maximum over variable pairs i < j of
    deg_w of the antisymmetrized minor times x_i*x_j.  NEG_INF exactly when
    every minor vanishes (f and g algebraically dependent)."""
    if f.nvars != g.nvars:
        raise DomainError("variable counts differ")
    n = f.nvars
    ws = coerce_weight_vector(weights, n)
    df = [partial(f, i) for i in range(n)]
    dg = [partial(g, i) for i in range(n)]
    best: DegreeValue = NEG_INF
    for i in range(n):
        for j in range(i + 1, n):
            minor = df[i] * dg[j] - df[j] * dg[i]
            if minor.is_zero:
                continue
            cand = degree_w(minor, ws) + ws[i] + ws[j]
            if best is NEG_INF or cand > best:
                best = cand
    return best


def jacobian_matrix(components: Sequence[Polynomial]) -> list[list[Polynomial]]:
    n = len(components)
    for c in components:
        if c.nvars != n:
            raise DomainError("need as many variables as components")
    return [[partial(c, j) for j in range(n)] for c in components]


def _det(matrix: list[list[Polynomial]]) -> Polynomial:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    if n == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    nvars = matrix[0][0].nvars
    out = Polynomial.zero(nvars)
    for j, entry in enumerate(matrix[0]):
        if entry.is_zero:
            continue
        minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
        cofactor = entry * _det(minor)
        out = out + (cofactor if j % 2 == 0 else -cofactor)
    return out


def jacobian_det(components: Sequence[Polynomial]) -> Polynomial:
    """Determinant of the matrix of partials of the components."""
    return _det(jacobian_matrix(components))


def wedge3_degree(
    f1: Polynomial, f2: Polynomial, f3: Polynomial, weights=None
) -> DegreeValue:
    """Weighted degree of df1 ^ df2 ^ df3 in three variables: degree of the
    Jacobian determinant times x1*x2*x3, NEG_INF for vanishing Jacobian."""
    if not (f1.nvars == f2.nvars == f3.nvars == 3):
        raise DomainError("wedge3_degree needs three trivariate polynomials")
    ws = coerce_weight_vector(weights, 3)
    jac = jacobian_det([f1, f2, f3])
    if jac.is_zero:
        return NEG_INF
    return degree_w(jac, ws) + ws[0] + ws[1] + ws[2]


def power_dependence(
    h1: Polynomial, h2: Polynomial
) -> Optional[tuple[int, Fraction]]:
    """(l, c) with h1 == c * h2**l for a positive integer l and nonzero
    rational c, or None.  The only candidate l is the total-degree ratio."""
    if h1.is_zero or h2.is_zero:
        raise DomainError("power_dependence needs nonzero polynomials")
    if h1.nvars != h2.nvars:
        raise DomainError("variable counts differ")
    deg1 = h1.total_degree_int()
    deg2 = h2.total_degree_int()
    if deg2 == 0:
        if deg1 != 0:
            return None
        c = h1.constant_value() / h2.constant_value()
        return (1, c)
    if deg1 == 0 or deg1 % deg2 != 0:
        return None
    l = deg1 // deg2
    p = power(h2, l)
    mono = next(iter(p.terms))
    if mono not in h1.terms:
        return None
    c = h1.terms[mono] / p.terms[mono]
    if c == 0:
        return None
    return (l, c) if h1 == c * p else None


def _render_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _render_monomial(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 0:
            continue
        parts.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
    return "*".join(parts)


def render(f: Polynomial) -> str:
    """Canonical text form, terms in graded lexicographic order (descending).

    Round-trips through the expression parser.
    """
    if f.is_zero:
        return "0"
    ordered = sorted(f.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    pieces = []
    for idx, (mono, coeff) in enumerate(ordered):
        mono_str = _render_monomial(mono)
        mag = _render_coeff(abs(coeff))
        if not mono_str:
            body = mag
        elif abs(coeff) == 1:
            body = mono_str
        else:
            body = f"{mag}*{mono_str}"
        if idx == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(pieces)
