"""Elementary automorphisms, tame words and multidegrees.

A tame word is a sequence of elementary steps; realizing it folds the steps
left to right into an endomorphism, each step rewriting one component as
scale * component + shift(components).  Realization is the only bridge from
words to polynomial maps, and every constructive witness produced here is
verified after the fact by recomputing its multidegree and Jacobian rather
than trusted from its construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ConstructionError, DomainError
from .ordgroup import (
    NEG_INF,
    DegreeValue,
    GroupElem,
    is_prime,
    multiple_of,
    semigroup_member,
)
from .poly import (
    Budget,
    Polynomial,
    degree_w,
    jacobian_det,
    substitute,
)

DEFAULT_TERM_BUDGET = 200_000


@dataclass(frozen=True)
class ElementaryAut:
    """x_target -> scale * x_target + shift, other variables fixed.

    The shift must not involve the target variable and the scale must be
    nonzero; indices are 0-based.
    """

    target: int
    scale: Fraction
    shift: Polynomial

    def __post_init__(self):
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale == 0:
            raise DomainError("elementary step needs a nonzero scale")
        n = self.shift.nvars
        if not 0 <= self.target < n:
            raise DomainError(f"target {self.target} out of range for n={n}")
        for mono in self.shift.terms:
            if mono[self.target] != 0:
                raise DomainError("shift must not involve the target variable")

    @property
    def nvars(self) -> int:
        return self.shift.nvars

    def inverse(self) -> "ElementaryAut":
        inv = 1 / self.scale
        return ElementaryAut(self.target, inv, self.shift * -inv)

    def components(self) -> tuple[Polynomial, ...]:
        n = self.nvars
        comps = [Polynomial.variable(i, n) for i in range(n)]
        comps[self.target] = comps[self.target] * self.scale + self.shift
        return tuple(comps)

    def render(self) -> str:
        head = f"x{self.target + 1} <- "
        if self.scale == 1:
            head += f"x{self.target + 1}"
        else:
            head += f"{self.scale}*x{self.target + 1}"
        if not self.shift.is_zero:
            text = self.shift.render()
            head += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
        return head


@dataclass(frozen=True)
class TameWord:
    """Sequence of elementary steps, composed left to right."""

    steps: tuple[ElementaryAut, ...]
    nvars: int = 3

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        for s in self.steps:
            if s.nvars != self.nvars:
                raise DomainError("all steps must use the same variable count")

    def __len__(self) -> int:
        return len(self.steps)

    def __add__(self, other: "TameWord") -> "TameWord":
        if other.nvars != self.nvars:
            raise DomainError("variable counts differ")
        return TameWord(self.steps + other.steps, self.nvars)

    def inverse(self) -> "TameWord":
        return TameWord(tuple(s.inverse() for s in reversed(self.steps)), self.nvars)

    def render(self) -> str:
        if not self.steps:
            return "(identity)"
        return "; ".join(s.render() for s in self.steps)


@dataclass(frozen=True)
class Endo:
    """Polynomial endomorphism given by its components."""

    components: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        n = len(self.components)
        for c in self.components:
            if c.nvars != n:
                raise DomainError("each component must use n variables")

    @property
    def nvars(self) -> int:
        return len(self.components)

    @classmethod
    def identity(cls, nvars: int = 3) -> "Endo":
        return cls(tuple(Polynomial.variable(i, nvars) for i in range(nvars)))

    def fingerprint(self) -> tuple:
        return tuple(c.fingerprint() for c in self.components)

    def render(self) -> str:
        return "(" + ", ".join(c.render() for c in self.components) + ")"


def shear(target: int, shift: Polynomial, scale=1) -> ElementaryAut:
    return ElementaryAut(target, Fraction(scale), shift)


def compose(first: Endo, second: Endo, budget: Optional[Budget] = None) -> Endo:
    """Substitute the first map's components into the second map's."""
    if first.nvars != second.nvars:
        raise DomainError("variable counts differ")
    return Endo(
        tuple(substitute(g, first.components, budget) for g in second.components)
    )


def realize(word: TameWord, budget: Optional[Budget] = None) -> Endo:
    """Fold the word into an endomorphism, left to right.

    Each step rewrites its target component to
    scale * component + shift(current components).  Aborts with
    BudgetExceededError if an intermediate outgrows the budget
    (default cap 200000 terms).
    """
    if budget is None:
        budget = Budget(DEFAULT_TERM_BUDGET)
    comps = list(Endo.identity(word.nvars).components)
    for step in word.steps:
        shifted = substitute(step.shift, comps, budget)
        comps[step.target] = comps[step.target] * step.scale + shifted
        budget.charge(len(comps[step.target].terms), 0)
    return Endo(tuple(comps))


def invert(word: TameWord) -> TameWord:
    return word.inverse()


def mdeg_w(endo: Endo, weights=None) -> tuple[DegreeValue, ...]:
    """Componentwise weighted degrees; None weights mean total degree."""
    return tuple(degree_w(c, weights) for c in endo.components)


def deg_w_total(endo: Endo, weights=None) -> DegreeValue:
    degs = mdeg_w(endo, weights)
    total = None
    for d in degs:
        if d is NEG_INF:
            return NEG_INF
        total = d if total is None else total + d
    return total


def mdeg(endo: Endo) -> tuple[int, ...]:
    """Total-degree multidegree as plain ints (zero components excluded)."""
    out = []
    for d in mdeg_w(endo):
        if d is NEG_INF:
            raise DomainError("zero component has no total degree")
        out.append(d.coords[0])
    return tuple(out)


def _verify_realization(
    word: TameWord, expected: Sequence[int], budget: Optional[Budget] = None
) -> Endo:
    endo = realize(word, budget)
    got = mdeg(endo)
    if got != tuple(expected):
        raise ConstructionError(
            f"witness realizes multidegree {got}, expected {tuple(expected)}"
        )
    jac = jacobian_det(endo.components)
    if not jac.is_constant or jac.is_zero:
        raise ConstructionError("witness Jacobian is not a nonzero constant")
    return endo


def semigroup_witness(
    d1: int, d2: int, d3: int, budget: Optional[Budget] = None
) -> Optional[TameWord]:
    """Tame word with total-degree multidegree (d1, d2, d3), built when
    d3 = a*d1 + b*d2 has a nonnegative solution or d1 divides d2.

    Two shear templates cover the cases:
      (i)  d3 = a*d1 + b*d2: components (x1+x3^d1, x2+x3^d2, x3+f1^a*f2^b);
      (ii) d2 = m*d1: components (x1+x2^d1, x2+f1^m, x3+x1^d3).
    The realized multidegree and constant Jacobian are re-verified and a
    mismatch raises ConstructionError.  Returns None when neither
    membership holds.
    """
    if not (1 <= d1 <= d2 <= d3):
        raise DomainError("degrees must satisfy 1 <= d1 <= d2 <= d3")
    n = 3
    x = [GroupElem((v,)) for v in (d1, d2, d3)]
    member = semigroup_member(x[2], x[0], x[1])
    if member is not None:
        a, b = member
        word = TameWord(
            (
                shear(0, Polynomial.monomial((0, 0, d1))),
                shear(1, Polynomial.monomial((0, 0, d2))),
                shear(2, Polynomial.monomial((a, b, 0))),
            ),
            n,
        )
    elif d2 % d1 == 0:
        m = d2 // d1
        word = TameWord(
            (
                shear(2, Polynomial.monomial((d3, 0, 0))),
                shear(0, Polynomial.monomial((0, d1, 0))),
                shear(1, Polynomial.monomial((m, 0, 0))),
            ),
            n,
        )
    else:
        return None
    _verify_realization(word, (d1, d2, d3), budget)
    return word


def intro_family(
    primes: Sequence[int], budget: Optional[Budget] = None
) -> tuple[tuple[int, ...], TameWord]:
    """Degrees and a verified tame word for the staircase family built from
    strictly increasing primes p_1 < ... < p_{n-1} (n = len + 1 >= 3):

      d_i = p_i^i * p_{i+1} * ... * p_{n-1}   for i < n,
      d_n = (d_{n-1} - 1) * d_{n-2} + 1,

    realized by shearing each x_i by x_n^{d_i} and then x_n by
    x_{n-2}^{d_{n-1}} - x_{n-1}^{d_{n-2}}.  No degree is a nonnegative
    combination of the earlier ones.
    """
    primes = tuple(primes)
    if len(primes) < 2:
        raise DomainError("need at least two primes (n >= 3)")
    for p in primes:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
    if any(a >= b for a, b in zip(primes, primes[1:])):
        raise DomainError("primes must be strictly increasing")
    n = len(primes) + 1
    degrees = []
    for i in range(1, n):
        d = primes[i - 1] ** i
        for p in primes[i:]:
            d *= p
        degrees.append(d)
    degrees.append((degrees[-1] - 1) * degrees[-2] + 1)
    degrees = tuple(degrees)

    def mono(var: int, exp: int) -> Polynomial:
        e = [0] * n
        e[var] = exp
        return Polynomial.monomial(e)

    steps = [shear(i, mono(n - 1, degrees[i])) for i in range(n - 1)]
    steps.append(
        shear(n - 1, mono(n - 3, degrees[n - 2]) - mono(n - 2, degrees[n - 3]))
    )
    word = TameWord(tuple(steps), n)
    _verify_realization(word, degrees, budget)
    g1 = GroupElem((degrees[0],))
    if multiple_of(GroupElem((degrees[1],)), g1) is not None:
        raise ConstructionError("second degree is a multiple of the first")
    if semigroup_member(GroupElem((degrees[2],)), g1, GroupElem((degrees[1],))):
        raise ConstructionError("third degree lies in the semigroup of the first two")
    return degrees, word


def nagata() -> Endo:
    """The classical candidate wild map in three variables; constant Jacobian
    and total multidegree (5, 3, 1)."""
    x1, x2, x3 = (Polynomial.variable(i, 3) for i in range(3))
    q = x2 * x2 + x1 * x3
    return Endo(
        (
            x1 - 2 * x2 * q - x3 * q * q,
            x2 + x3 * q,
            x3,
        )
    )


def scaling_word(index: int, factor, nvars: int = 3) -> TameWord:
    return TameWord(
        (ElementaryAut(index, Fraction(factor), Polynomial.zero(nvars)),), nvars
    )


def transposition_word(i: int, j: int, nvars: int = 3) -> TameWord:
    """Swap of x_i and x_j expanded into three unit shears and one scaling."""
    if i == j:
        return TameWord((), nvars)
    xi = Polynomial.variable(i, nvars)
    xj = Polynomial.variable(j, nvars)
    return TameWord(
        (
            shear(i, xj),
            shear(j, -xi),
            shear(i, xj),
            ElementaryAut(j, Fraction(-1), Polynomial.zero(nvars)),
        ),
        nvars,
    )


def permutation_word(perm: Sequence[int], nvars: int = 3) -> TameWord:
    """Expand a permutation of the variables into transposition words."""
    if sorted(perm) != list(range(nvars)):
        raise DomainError(f"{perm} is not a permutation of 0..{nvars - 1}")
    current = list(range(nvars))
    word = TameWord((), nvars)
    for pos in range(nvars):
        want = perm[pos]
        at = current.index(want)
        if at != pos:
            word = word + transposition_word(pos, at, nvars)
            current[pos], current[at] = current[at], current[pos]
    return word
