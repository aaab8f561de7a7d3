"""Exclusion criteria for multidegrees of tame automorphisms.

The decision surface is three-valued.  A triple of positive degrees is

  * Realizable when a verified tame witness with that exact multidegree is
    constructed,
  * Excluded when a chain of certified conditions rules it out as a tame
    multidegree (the chain is recorded in a Certificate), or
  * Unknown otherwise; no completeness is claimed.

Condition names follow the classical labels embedded in reports: K1..K5 and
A1..A3, B1..B2 for the weighted criteria, a1..a2, b1..b2, c for the
total-degree criteria, and 1..2 for the independent-weights criterion.

The quantity Delta(d, e) (minimal wedge degree over tame maps with two
prescribed component degrees) is never computed exactly; every use is
replaced by a certified lower bound, which keeps Excluded verdicts sound
because Delta only ever appears on the large side of a strict inequality.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence, Union

from .automorphisms import (
    Endo,
    TameWord,
    mdeg,
    permutation_word,
    realize,
    semigroup_witness,
)
from .errors import ConstructionError, DomainError, HypothesisViolation
from .ordgroup import (
    GroupElem,
    NEG_INF,
    Weight,
    as_group_elem,
    dependent_pair,
    gcd_lcm,
    is_prime,
    multiple_of,
    rank_profile,
    semigroup_member,
    w_star,
)
from .poly import jacobian_det, wedge2_degree, degree_w


class Theorem(str, Enum):
    TOTAL_DEGREE = "TotalDegree"
    MAIN_WEIGHTED = "MainWeighted"
    INDEPENDENT_WEIGHTS = "IndependentWeights"
    F_SPECIFIC = "FSpecific"


@dataclass(frozen=True)
class Clause:
    left: str
    relation: str
    right: str
    holds: bool

    def describe(self) -> str:
        mark = "yes" if self.holds else "NO"
        right = f" {self.right}" if self.right else ""
        return f"{self.left} {self.relation}{right} [{mark}]"


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    clauses: tuple[Clause, ...]

    def describe(self) -> str:
        mark = "+" if self.holds else "x"
        return f"{self.name} {mark} ({'; '.join(c.describe() for c in self.clauses)})"


@dataclass(frozen=True)
class DeltaBoundUse:
    weight: tuple
    pair: tuple
    bound: GroupElem

    def describe(self) -> str:
        d, e = self.pair
        return f"Delta({_render_coords(d)},{_render_coords(e)})>={self.bound.render()}"


def _render_coords(coords: tuple) -> str:
    if len(coords) == 1:
        return str(coords[0])
    return "[" + ",".join(str(c) for c in coords) + "]"


@dataclass(frozen=True)
class Certificate:
    theorem: Theorem
    conditions: tuple[Condition, ...]
    delta_bounds_used: tuple[DeltaBoundUse, ...] = ()

    def rows(self) -> list[tuple[str, str, str, str, bool]]:
        return [
            (cond.name, cl.left, cl.relation, cl.right, cl.holds)
            for cond in self.conditions
            for cl in cond.clauses
        ]

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "conditions": [
                {
                    "name": c.name,
                    "holds": c.holds,
                    "clauses": [
                        {
                            "left": cl.left,
                            "relation": cl.relation,
                            "right": cl.right,
                            "holds": cl.holds,
                        }
                        for cl in c.clauses
                    ],
                }
                for c in self.conditions
            ],
            "delta_bounds_used": [
                {
                    "weight": [list(w) for w in u.weight],
                    "pair": [list(p) for p in u.pair],
                    "bound": list(u.bound.coords),
                }
                for u in self.delta_bounds_used
            ],
        }


@dataclass(frozen=True)
class Excluded:
    certificate: Certificate

    kind = "excluded"


@dataclass(frozen=True)
class Realizable:
    witness: TameWord
    multidegree: tuple[int, ...]

    kind = "realizable"


@dataclass(frozen=True)
class Unknown:
    reasons: tuple[str, ...]

    kind = "unknown"


ClassificationResult = Union[Excluded, Realizable, Unknown]


def make_realizable(word: TameWord, expected: Sequence[int]) -> Realizable:
    """Verdict constructor: re-realizes the word and insists the total-degree
    multidegree matches the query exactly."""
    got = mdeg(realize(word))
    if got != tuple(expected):
        raise ConstructionError(
            f"witness realizes {got}, verdict claims {tuple(expected)}"
        )
    return Realizable(word, tuple(expected))


class DeltaBoundRegistry:
    """Certified lower bounds for Delta(d, e), keyed by weight and unordered
    degree pair.  Entries only ever assert 'Delta >= bound'; the built-in
    registry carries the single classical entry Delta(4, 6) >= 4 for unit
    weights on Z."""

    def __init__(self, entries: Optional[dict] = None):
        self._entries: dict = dict(entries or {})

    @staticmethod
    def _weight_key(w: Weight) -> tuple:
        return tuple(sorted(c.coords for c in w.components))

    @staticmethod
    def _pair_key(d: GroupElem, e: GroupElem) -> tuple:
        return tuple(sorted((d.coords, e.coords)))

    @classmethod
    def empty(cls) -> "DeltaBoundRegistry":
        return cls()

    @classmethod
    def builtin(cls) -> "DeltaBoundRegistry":
        reg = cls()
        return reg.with_entry(
            Weight.of(1, 1, 1), as_group_elem(4), as_group_elem(6), as_group_elem(4)
        )

    def with_entry(
        self, w: Weight, d: GroupElem, e: GroupElem, bound: GroupElem
    ) -> "DeltaBoundRegistry":
        if not bound.is_positive:
            raise DomainError("registry bounds must be positive")
        entries = dict(self._entries)
        entries[(self._weight_key(w), self._pair_key(d, e))] = bound
        return DeltaBoundRegistry(entries)

    def lookup(self, w: Weight, d: GroupElem, e: GroupElem) -> Optional[GroupElem]:
        return self._entries.get((self._weight_key(w), self._pair_key(d, e)))

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other):
        return (
            isinstance(other, DeltaBoundRegistry) and self._entries == other._entries
        )

    def entries(self) -> list[tuple[tuple, tuple, GroupElem]]:
        return sorted(
            (wk, pk, bound) for (wk, pk), bound in self._entries.items()
        )

    def fingerprint(self) -> str:
        payload = json.dumps(
            [[list(map(list, wk)), list(map(list, pk)), list(b.coords)]
             for wk, pk, b in self.entries()],
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def to_lines(self) -> list[str]:
        out = []
        for wk, pk, bound in self.entries():
            ws = ",".join(_render_coords(c) for c in wk)
            ps = ",".join(_render_coords(c) for c in pk)
            out.append(f"{ws} ; {ps} ; {_render_coords(bound.coords)}")
        return out

    @classmethod
    def from_lines(cls, lines) -> "DeltaBoundRegistry":
        from .parse import parse_vector_list

        reg = cls()
        for lineno, raw in enumerate(lines, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(";")]
            if len(parts) != 3:
                raise DomainError(
                    f"registry line {lineno}: expected 'W1,W2,W3 ; D,E ; BOUND'"
                )
            ws = parse_vector_list(parts[0])
            ds = parse_vector_list(parts[1])
            bs = parse_vector_list(parts[2])
            if len(ws) != 3 or len(ds) != 2 or len(bs) != 1:
                raise DomainError(
                    f"registry line {lineno}: need 3 weights, 2 degrees, 1 bound"
                )
            reg = reg.with_entry(Weight.of(*ws), ds[0], ds[1], bs[0])
        return reg


def builtin_registry() -> DeltaBoundRegistry:
    return DeltaBoundRegistry.builtin()


@dataclass
class _DeltaTracker:
    """Collects which registry entries actually produced a selected bound."""

    uses: list = field(default_factory=list)

    def record(self, w: Weight, d: GroupElem, e: GroupElem, bound: GroupElem) -> None:
        entry = DeltaBoundUse(
            weight=tuple(c.coords for c in w.components),
            pair=tuple(sorted((d.coords, e.coords))),
            bound=bound,
        )
        if entry not in self.uses:
            self.uses.append(entry)


def delta_lower_bound(
    d: GroupElem,
    e: GroupElem,
    w: Weight,
    registry: Optional[DeltaBoundRegistry] = None,
    _tracker: Optional[_DeltaTracker] = None,
) -> GroupElem:
    """Largest certified lower bound for Delta(d, e) under the weight w.

    Candidates: the star invariant of w when neither degree is a multiple
    of the other and at least one lies outside the weight set; any registry
    entry for (w, {d, e}); and the unconditional floor min_{i<j}(w_i + w_j)
    coming from the x_i*x_j factor every wedge term carries.
    """
    if registry is None:
        registry = builtin_registry()
    if not (d.is_positive and e.is_positive):
        raise DomainError("degrees must be positive")
    ws = w.components
    best = min(ws[0] + ws[1], ws[0] + ws[2], ws[1] + ws[2])
    if multiple_of(d, e) is None and multiple_of(e, d) is None:
        if d not in ws or e not in ws:
            star = w_star(ws)
            if star > best:
                best = star
    reg = registry.lookup(w, d, e)
    if reg is not None and reg > best:
        best = reg
        if _tracker is not None:
            _tracker.record(w, d, e, reg)
    return best


def _odd_scalar_multiplier(d1: GroupElem, d3: GroupElem) -> Optional[int]:
    """Odd s >= 3 with s*d1 == 2*d3, or None; decided exactly through
    divisibility of 2*d3 by d1 and parity of the quotient."""
    s = multiple_of(2 * d3, d1)
    if s is not None and s % 2 == 1 and s >= 3:
        return s
    return None


def _fmt(v) -> str:
    if isinstance(v, GroupElem):
        return v.render()
    return str(v)


def _cmp_clause(label_l: str, val_l, rel: str, label_r: str, val_r, holds: bool) -> Clause:
    return Clause(
        left=f"{label_l} = {_fmt(val_l)}",
        relation=rel,
        right=f"{label_r} = {_fmt(val_r)}" if label_r else _fmt(val_r),
        holds=holds,
    )


class ConditionReport:
    """Ordered set of named condition evaluations."""

    def __init__(self):
        self._conditions: dict[str, Condition] = {}

    def put(self, name: str, holds: bool, clauses: Sequence[Clause]) -> Condition:
        cond = Condition(name, holds, tuple(clauses))
        self._conditions[name] = cond
        return cond

    def __getitem__(self, name: str) -> Condition:
        return self._conditions[name]

    def __contains__(self, name: str) -> bool:
        return name in self._conditions

    def holds(self, name: str) -> bool:
        return self._conditions[name].holds

    def conditions(self) -> tuple[Condition, ...]:
        return tuple(self._conditions.values())

    def failed_names(self) -> tuple[str, ...]:
        return tuple(n for n, c in self._conditions.items() if not c.holds)


def check_total_abc(d1: int, d2: int, d3: int) -> ConditionReport:
    """Evaluate the total-degree exclusion conditions a1, a2, b1, b2, c for a
    sorted positive triple, with the witnessing quantities recorded."""
    if not (0 < d1 <= d2 <= d3):
        raise DomainError("degrees must satisfy 0 < d1 <= d2 <= d3")
    from math import gcd, lcm

    rep = ConditionReport()
    g1, g3 = as_group_elem(d1), as_group_elem(d3)
    s = _odd_scalar_multiplier(g1, g3)
    c1 = _cmp_clause("3*d2", 3 * d2, "!=", "2*d3", 2 * d3, 3 * d2 != 2 * d3)
    c2 = Clause(
        left="odd s >= 3 with s*d1 = 2*d3",
        relation="exists" if s is not None else "none",
        right=f"s = {s}" if s is not None else "",
        holds=s is None,
    )
    rep.put("a1", c1.holds and c2.holds, (c1, c2))
    rep.put(
        "a2",
        d1 + d2 <= d3 + 2,
        (_cmp_clause("d1+d2", d1 + d2, "<=", "d3+2", d3 + 2, d1 + d2 <= d3 + 2),),
    )
    g = gcd(d1, d2)
    b1a = _cmp_clause("gcd(d1,d2)", g, "<=", "", 3, g <= 3)
    b1b = Clause(
        left=f"gcd(d1,d2) = {g}",
        relation="divides",
        right=f"d3 = {d3}",
        holds=d3 % g == 0,
    )
    rep.put("b1", b1a.holds and b1b.holds, (b1a, b1b))
    l = lcm(d1, d2)
    rep.put(
        "b2",
        d1 + d2 + d3 <= l + 2,
        (
            _cmp_clause(
                "d1+d2+d3", d1 + d2 + d3, "<=", "lcm(d1,d2)+2", l + 2,
                d1 + d2 + d3 <= l + 2,
            ),
        ),
    )
    divides = d2 % d1 == 0
    member = semigroup_member(g3, g1, as_group_elem(d2))
    cc1 = Clause(
        left=f"d1 = {d1}",
        relation="does not divide",
        right=f"d2 = {d2}" + (f" (d2 = {d2 // d1}*d1)" if divides else ""),
        holds=not divides,
    )
    cc2 = Clause(
        left=f"d3 = {d3}",
        relation="not in",
        right="<d1,d2>" + (f" (d3 = {member[0]}*d1 + {member[1]}*d2)" if member else ""),
        holds=member is None,
    )
    rep.put("c", cc1.holds and cc2.holds, (cc1, cc2))
    return rep


def _abc_combined(rep: ConditionReport) -> tuple[bool, bool, bool]:
    a = rep.holds("a1") or rep.holds("a2")
    b = rep.holds("b1") or rep.holds("b2")
    return a, b, rep.holds("c")


def check_weighted_conditions(
    d1: GroupElem,
    d2: GroupElem,
    d3: GroupElem,
    w: Weight,
    registry: Optional[DeltaBoundRegistry] = None,
    _tracker: Optional[_DeltaTracker] = None,
) -> ConditionReport:
    """Evaluate K1..K5, A1..A3, B1..B2 for strictly ascending positive
    degrees.  Every Delta occurrence is replaced by delta_lower_bound, so a
    reported 'holds' is sound and a failed report only means 'not
    certified'."""
    if registry is None:
        registry = builtin_registry()
    if not (d1 < d2 < d3):
        raise DomainError("degrees must be strictly ascending")
    for d in (d1, d2, d3):
        if not d.is_positive:
            raise DomainError("degrees must be positive")
    if _tracker is None:
        _tracker = _DeltaTracker()
    rep = ConditionReport()
    total = d1 + d2 + d3
    wtotal = w.total
    star = w_star(w.components)

    rep.put(
        "K1",
        total > wtotal,
        (
            _cmp_clause("d1", d1, "<", "d2", d2, True),
            _cmp_clause("d2", d2, "<", "d3", d3, True),
            _cmp_clause("d1+d2+d3", total, ">", "|w|", wtotal, total > wtotal),
        ),
    )

    m12 = multiple_of(d2, d1)
    member = semigroup_member(d3, d1, d2)
    k2a = Clause(
        left=f"d2 = {_fmt(d2)}",
        relation="not in",
        right="N*d1" + (f" (d2 = {m12}*d1)" if m12 is not None else ""),
        holds=m12 is None,
    )
    k2b = Clause(
        left=f"d3 = {_fmt(d3)}",
        relation="not in",
        right="<d1,d2>"
        + (f" (d3 = {member[0]}*d1 + {member[1]}*d2)" if member else ""),
        holds=member is None,
    )
    rep.put("K2", k2a.holds and k2b.holds, (k2a, k2b))

    def delta(a: GroupElem, b: GroupElem) -> GroupElem:
        return delta_lower_bound(a, b, w, registry, _tracker)

    # K3 / A2 share the 3*d2 = 2*d3 ratio test.
    ratio32 = 3 * d2 == 2 * d3
    k3_first = _cmp_clause("3*d2", 3 * d2, "!=", "2*d3", 2 * d3, not ratio32)
    if ratio32:
        bound = delta(d2, d3)
        k3_second = _cmp_clause(
            "d1+d2", d1 + d2, "<", "d3+Delta_lb(d2,d3)", d3 + bound,
            d1 + d2 < d3 + bound,
        )
        rep.put("K3", k3_second.holds, (k3_first, k3_second))
        a2_bound = max(bound, star)
        a2_second = _cmp_clause(
            "d1+d2", d1 + d2, "<", "d3+max(Delta_lb(d2,d3),|w|*)", d3 + a2_bound,
            d1 + d2 < d3 + a2_bound,
        )
        rep.put("A2", a2_second.holds, (k3_first, a2_second))
    else:
        rep.put("K3", True, (k3_first,))
        rep.put(
            "A2",
            False,
            (
                Clause(
                    left=f"3*d2 = {_fmt(3 * d2)}",
                    relation="=",
                    right=f"2*d3 = {_fmt(2 * d3)}",
                    holds=False,
                ),
            ),
        )

    # K4 / A3 share the odd multiplier test.
    s = _odd_scalar_multiplier(d1, d3)
    k4_first = Clause(
        left="odd s >= 3 with s*d1 = 2*d3",
        relation="exists" if s is not None else "none",
        right=f"s = {s}" if s is not None else "",
        holds=s is None,
    )
    if s is not None:
        bound = delta(d1, d3)
        k4_second = _cmp_clause(
            "d1+d2", d1 + d2, "<", "d3+Delta_lb(d1,d3)", d3 + bound,
            d1 + d2 < d3 + bound,
        )
        rep.put("K4", k4_second.holds, (k4_first, k4_second))
        a3_bound = max(bound, star)
        a3_second = _cmp_clause(
            "d1+d2", d1 + d2, "<", "d3+max(Delta_lb(d1,d3),|w|*)", d3 + a3_bound,
            d1 + d2 < d3 + a3_bound,
        )
        a3_first = Clause(
            left="odd s >= 3 with s*d1 = 2*d3",
            relation="exists",
            right=f"s = {s}",
            holds=True,
        )
        rep.put("A3", a3_second.holds, (a3_first, a3_second))
    else:
        rep.put("K4", True, (k4_first,))
        rep.put(
            "A3",
            False,
            (
                Clause(
                    left="odd s >= 3 with s*d1 = 2*d3",
                    relation="none",
                    right="",
                    holds=False,
                ),
            ),
        )

    rep.put("A1", not ratio32 and s is None, (k3_first, k4_first))

    ratio43 = 4 * d1 == 3 * d2
    k5_first = _cmp_clause("4*d1", 4 * d1, "!=", "3*d2", 3 * d2, not ratio43)
    if ratio43:
        g, _ = gcd_lcm(d1, d2)
        bound = delta(2 * d1, d2)
        k5_second = _cmp_clause(
            "d3", d3, "<", "5*gcd(d1,d2)+Delta_lb(2*d1,d2)", 5 * g + bound,
            d3 < 5 * g + bound,
        )
        rep.put("K5", k5_second.holds, (k5_first, k5_second))
    else:
        rep.put("K5", True, (k5_first,))

    pair = dependent_pair(d1, d2)
    if pair is None:
        indep = Clause(
            left="d1, d2",
            relation="linearly independent over Z ((B) holds)",
            right="",
            holds=True,
        )
        rep.put("B1", True, (indep,))
        rep.put("B2", True, (indep,))
    else:
        g, l = gcd_lcm(d1, d2)
        m3 = multiple_of(d3, g)
        b1a = _cmp_clause("gcd(d1,d2)", g, "<=", "|w|*", star, g <= star)
        b1b = Clause(
            left=f"d3 = {_fmt(d3)}",
            relation="in" if m3 is not None else "not in",
            right="N*gcd(d1,d2)" + (f" (d3 = {m3}*gcd)" if m3 is not None else ""),
            holds=m3 is not None,
        )
        rep.put("B1", b1a.holds and b1b.holds, (b1a, b1b))
        rep.put(
            "B2",
            total < l + star,
            (
                _cmp_clause(
                    "d1+d2+d3", total, "<", "lcm(d1,d2)+|w|*", l + star,
                    total < l + star,
                ),
            ),
        )
    return rep


def _weighted_fires(rep: ConditionReport) -> bool:
    a = rep.holds("A1") or rep.holds("A2") or rep.holds("A3")
    b = rep.holds("B1") or rep.holds("B2")
    return rep.holds("K1") and rep.holds("K2") and a and b


def _independent_weights_report(
    d1: GroupElem, d2: GroupElem, d3: GroupElem
) -> ConditionReport:
    rep = ConditionReport()
    profile = rank_profile(d1, d2, d3)
    clauses1 = (
        Clause("d1, d2", "linearly independent", "", not profile.pair_12_dependent),
        Clause("d1, d3", "linearly independent", "", not profile.pair_13_dependent),
        Clause("d2, d3", "linearly independent", "", not profile.pair_23_dependent),
        Clause("d1, d2, d3", "linearly dependent", "", profile.triple_dependent),
    )
    rep.put(
        "1",
        profile.pairwise_independent and profile.triple_dependent,
        clauses1,
    )
    clauses2 = []
    holds2 = True
    for name, d, e1, e2 in (
        ("d1", d1, d2, d3),
        ("d2", d2, d3, d1),
        ("d3", d3, d1, d2),
    ):
        member = semigroup_member(d, e1, e2)
        ok = member is None
        holds2 = holds2 and ok
        clauses2.append(
            Clause(
                left=f"{name} = {_fmt(d)}",
                relation="not in",
                right="<other two>"
                + (f" ({member[0]}, {member[1]})" if member else ""),
                holds=ok,
            )
        )
    rep.put("2", holds2, tuple(clauses2))
    return rep


def _weights_independent(w: Weight) -> bool:
    from .ordgroup import _matrix_rank

    return _matrix_rank([c.coords for c in w.components]) == 3


def classify_weighted(
    degrees: Sequence,
    weight,
    registry: Optional[DeltaBoundRegistry] = None,
) -> ClassificationResult:
    """Three-valued verdict for a weighted degree triple.

    Excluded fires through the independent-weights criterion (weights
    Z-independent, degrees pairwise independent but jointly dependent and
    mutually outside each other's two-generator semigroups) or through the
    certified chain K1, K2, A, B.  Weighted verdicts are never Realizable:
    constructive witnesses exist only for total degree; the search harness
    reports weighted realizations separately.
    """
    if registry is None:
        registry = builtin_registry()
    ds = [as_group_elem(d) for d in degrees]
    if len(ds) != 3:
        raise DomainError("expected a degree triple")
    w = weight if isinstance(weight, Weight) else Weight.of(*weight)
    for d in ds:
        if d.rank != w.rank:
            raise DomainError("degrees and weights must share one rank")
        if not d.is_positive:
            raise DomainError("degrees must be positive")
    reasons: list[str] = []
    if _weights_independent(w):
        rep = _independent_weights_report(*ds)
        if rep.holds("1") and rep.holds("2"):
            return Excluded(
                Certificate(Theorem.INDEPENDENT_WEIGHTS, rep.conditions())
            )
        reasons.extend(rep.failed_names())
    d1, d2, d3 = sorted(ds)
    if d1 < d2 < d3:
        tracker = _DeltaTracker()
        rep = check_weighted_conditions(d1, d2, d3, w, registry, tracker)
        if _weighted_fires(rep):
            return Excluded(
                Certificate(
                    Theorem.MAIN_WEIGHTED, rep.conditions(), tuple(tracker.uses)
                )
            )
        reasons.extend(
            n for n in rep.failed_names() if n not in reasons
        )
    else:
        reasons.append("K1")
    return Unknown(tuple(reasons))


def _matching_permutation(asked: tuple[int, int, int]) -> tuple[int, ...]:
    """Indices into the sorted triple so that position i carries asked[i];
    equal degrees are consumed left to right."""
    ordered = sorted(asked)
    taken = [False, False, False]
    perm = []
    for value in asked:
        for j, v in enumerate(ordered):
            if v == value and not taken[j]:
                taken[j] = True
                perm.append(j)
                break
    return tuple(perm)


def classify_total(
    d1: int,
    d2: int,
    d3: int,
    registry: Optional[DeltaBoundRegistry] = None,
) -> ClassificationResult:
    """Three-valued verdict for a total-degree triple (any input order; the
    verdict concerns the sorted triple, and multidegree sets are closed
    under permutation).

    Order of attack: construct a verified witness; else certify exclusion
    through a1/a2, b1/b2, c; else run the weighted criteria at unit weights
    with the registry, which settles cases such as (4, 5, 6); else Unknown.
    """
    if registry is None:
        registry = builtin_registry()
    if min(d1, d2, d3) < 1:
        raise DomainError("degrees must be positive")
    asked = (d1, d2, d3)
    t1, t2, t3 = sorted(asked)
    word = semigroup_witness(t1, t2, t3)
    if word is not None:
        if asked != (t1, t2, t3):
            word = word + permutation_word(_matching_permutation(asked), 3)
        return make_realizable(word, asked)
    rep = check_total_abc(t1, t2, t3)
    a, b, c = _abc_combined(rep)
    if a and b and c:
        return Excluded(Certificate(Theorem.TOTAL_DEGREE, rep.conditions()))
    weighted = classify_weighted((t1, t2, t3), Weight.of(1, 1, 1), registry)
    if isinstance(weighted, Excluded):
        return weighted
    reasons = list(rep.failed_names())
    for name in weighted.reasons:
        if name not in reasons:
            reasons.append(name)
    return Unknown(tuple(reasons))


def certify_wild(
    endo: Endo,
    weight,
    registry: Optional[DeltaBoundRegistry] = None,
    assume_automorphism: bool = False,
) -> Union[Certificate, Unknown]:
    """Wildness certificate for a specific automorphism, or Unknown.

    The caller is responsible for the input being a genuine automorphism; a
    constant nonzero Jacobian is checked as a necessary screen unless
    assume_automorphism is set (the search harness sets it for maps it
    realized from tame words itself).  The certificate chain is K1..K4,
    then, for a Z-dependent pair of smallest degrees, K5 together with the
    strict inequality

        d1 + d2 + d3 < lcm(d1, d2) + deg_w df1 ^ df2

    evaluated with the exact engine-computed wedge degree of the two
    components of smallest degree; for an independent pair K1..K4 alone
    certify the triple impossible.
    """
    if registry is None:
        registry = builtin_registry()
    if endo.nvars != 3:
        raise DomainError("wildness certification works in three variables")
    w = weight if isinstance(weight, Weight) else Weight.of(*weight)
    if not assume_automorphism:
        jac = jacobian_det(endo.components)
        if jac.is_zero or not jac.is_constant:
            raise DomainError("rejected input: Jacobian is not a nonzero constant")
    scored = []
    for comp in endo.components:
        deg = degree_w(comp, w.components)
        if deg is NEG_INF:
            return Unknown(("K1",))
        scored.append((deg, comp))
    scored.sort(key=lambda t: t[0].coords)
    (d1, f1), (d2, f2), (d3, _) = scored
    if not (d1 < d2 < d3):
        return Unknown(("K1",))
    tracker = _DeltaTracker()
    rep = check_weighted_conditions(d1, d2, d3, w, registry, tracker)
    k_names = ("K1", "K2", "K3", "K4")
    if not all(rep.holds(n) for n in k_names):
        return Unknown(tuple(n for n in k_names if not rep.holds(n)))
    conditions = [rep[n] for n in k_names]
    if dependent_pair(d1, d2) is not None:
        if not rep.holds("K5"):
            return Unknown(("K5",))
        conditions.append(rep["K5"])
        _, l = gcd_lcm(d1, d2)
        wedge = wedge2_degree(f1, f2, w.components)
        total = d1 + d2 + d3
        ok = wedge is not NEG_INF and total < l + wedge
        clause = Clause(
            left=f"d1+d2+d3 = {_fmt(total)}",
            relation="<",
            right=f"lcm(d1,d2)+deg_w(df1^df2) = "
            + (_fmt(l + wedge) if wedge is not NEG_INF else "lcm+(-inf)"),
            holds=ok,
        )
        conditions.append(Condition("prop:main", ok, (clause,)))
        if not ok:
            return Unknown(("prop:main",))
    else:
        conditions.append(
            Condition(
                "1",
                True,
                (Clause("d1, d2", "linearly independent over Z", "", True),),
            )
        )
    return Certificate(Theorem.F_SPECIFIC, tuple(conditions), tuple(tracker.uses))


@dataclass(frozen=True)
class LemmaAReport:
    """Arithmetic screens, any of which certifies condition (a) for a sorted
    triple satisfying (c): the reduced degrees d_i' = d_i / gcd(d1,d2,d3)
    drive parity and congruence tests, plus primality of d3 and two gap
    inequalities."""

    conditions: tuple[Condition, ...]
    c_holds: bool

    def holds(self, name: str) -> bool:
        for c in self.conditions:
            if c.name == name:
                return c.holds
        raise KeyError(name)

    @property
    def any_condition(self) -> bool:
        return any(c.holds for c in self.conditions)

    @property
    def implies_a(self) -> bool:
        return self.c_holds and self.any_condition


def lemma_a_conditions(d1: int, d2: int, d3: int) -> LemmaAReport:
    if not (0 < d1 <= d2 <= d3):
        raise DomainError("degrees must satisfy 0 < d1 <= d2 <= d3")
    from math import gcd

    g = gcd(gcd(d1, d2), d3)
    r1, r2, r3 = d1 // g, d2 // g, d3 // g
    odd1, odd2, odd3 = r1 % 2 == 1, r2 % 2 == 1, r3 % 2 == 1
    conds = []

    def put(name, holds, text):
        conds.append(Condition(name, holds, (Clause(text, "", "", holds),)))

    put("1", odd1 and (odd2 or r3 % 3 != 0),
        f"d1'={r1} odd and (d2'={r2} odd or d3'={r3} not divisible by 3)")
    put("2", d1 != 2 * gcd(d1, d3) and odd2,
        f"d1={d1} != 2*gcd(d1,d3)={2 * gcd(d1, d3)} and d2'={r2} odd")
    put("3", r1 % 4 == 0 and odd2 and odd3,
        f"d1'={r1} divisible by 4 and d2'={r2}, d3'={r3} odd")
    put("4", is_prime(d3), f"d3={d3} prime")
    put("5", d3 - d2 >= d1 - 2, f"d3-d2={d3 - d2} >= d1-2={d1 - 2}")
    put("6", odd1 and (3 * d2 != 2 * d3 or 2 * d1 <= d2 + 5),
        f"d1'={r1} odd and (3*d2={3 * d2} != 2*d3={2 * d3} or 2*d1={2 * d1} <= d2+5={d2 + 5})")
    c = check_total_abc(d1, d2, d3).holds("c")
    return LemmaAReport(tuple(conds), c)


def _hyp(cond: bool, name: str):
    if not cond:
        raise HypothesisViolation(name)


def _corollary_karas_zygadlo(args):
    d1, d2, d3 = args
    _hyp(3 <= d1 <= d2 <= d3, "3 <= d1 <= d2 <= d3")
    _hyp(d1 % 2 == 1 and d2 % 2 == 1, "d1 and d2 odd")
    from math import gcd

    _hyp(gcd(d1, d2) == 1, "gcd(d1,d2) = 1")
    return (d1, d2, d3), None


def _corollary_karas_three(args):
    d2, d3 = args
    _hyp(3 <= d2 <= d3, "3 <= d2 <= d3")
    return (3, d2, d3), None


def _corollary_sun_chen(args):
    d1, d2, d3 = args
    _hyp(3 <= d1 <= d2 <= d3, "3 <= d1 <= d2 <= d3")
    _hyp(is_prime(d1), "d1 prime")
    from math import gcd

    g = gcd(d2, d3)
    _hyp(
        d2 // g != 2 or d3 // g != 3 or d2 >= 2 * d1 - 5,
        "d2/gcd(d2,d3) != 2 or d3/gcd(d2,d3) != 3 or d2 >= 2*d1-5",
    )
    return (d1, d2, d3), None


def _corollary_karas_four(args):
    d2, d3 = args
    _hyp(5 <= d2 <= d3, "5 <= d2 <= d3")
    _hyp(d2 % 2 == 1, "d2 odd")
    if d3 % 2 == 0:
        _hyp(d3 - d2 != 1, "d3 - d2 != 1 when d3 even")
    return (4, d2, d3), None


def _corollary_li_du_mid_prime(args):
    d1, d2, d3 = args
    _hyp(3 <= d1 <= d2 <= d3, "3 <= d1 <= d2 <= d3")
    _hyp(is_prime(d2), "d2 prime")
    from math import gcd

    _hyp(d1 // gcd(d1, d3) != 2, "d1/gcd(d1,d3) != 2")
    return (d1, d2, d3), None


def _corollary_li_du_top_prime(args):
    d1, d2, d3 = args
    _hyp(3 <= d1 <= d2 <= d3, "3 <= d1 <= d2 <= d3")
    from math import gcd

    _hyp(gcd(d1, d2) == 1, "gcd(d1,d2) = 1")
    _hyp(is_prime(d3), "d3 prime")
    return (d1, d2, d3), None


def _corollary_progression(args):
    a, d = args
    _hyp(a >= 3, "a >= 3")
    _hyp(d >= 1, "d >= 1")
    _hyp(
        not ((4 * d) % a == 0 and (4 * d // a) % 2 == 1),
        "4d != t*a for any odd t >= 1",
    )
    return (a, a + d, a + 2 * d), None


def _corollary_progression_ext(args):
    l, t = args
    _hyp(l >= 1, "l >= 1")
    _hyp(t >= 1 and t % 2 == 1, "t odd >= 1")
    _hyp((t - 4) * l + 2 >= 0, "(t-4)*l + 2 >= 0")
    a, d = 4 * l, t * l
    _hyp(a >= 3, "a >= 3")
    return (a, a + d, a + 2 * d), None


def _corollary_two_three(args):
    (d,) = args
    _hyp(d >= 5 and d not in (6, 8), "d >= 5 and d not in {6, 8}")
    return (d, 2 * (d - 2), 3 * (d - 2)), None


def _corollary_kanehira(args):
    d1, d2, d3, w1, w2, w3 = args
    _hyp(3 <= d1 < d2 <= d3, "3 <= d1 < d2 <= d3")
    _hyp(d1 % 2 == 1 and d2 % 2 == 1, "d1 and d2 odd")
    from math import gcd

    _hyp(gcd(d1, d2) == 1, "gcd(d1,d2) = 1")
    _hyp(min(w1, w2, w3) >= 1, "positive weights")
    _hyp(d1 + d2 + d3 > w1 + w2 + w3, "deg_w F > |w|")
    return (d1, d2, d3), Weight.of(w1, w2, w3)


_COROLLARIES: dict[str, tuple[int, Callable]] = {
    "karas-zygadlo": (3, _corollary_karas_zygadlo),
    "karas-three": (2, _corollary_karas_three),
    "sun-chen": (3, _corollary_sun_chen),
    "karas-four": (2, _corollary_karas_four),
    "li-du-mid-prime": (3, _corollary_li_du_mid_prime),
    "li-du-top-prime": (3, _corollary_li_du_top_prime),
    "progression": (2, _corollary_progression),
    "progression-ext": (2, _corollary_progression_ext),
    "two-three": (1, _corollary_two_three),
    "kanehira": (6, _corollary_kanehira),
}


def corollary_names() -> tuple[str, ...]:
    return tuple(_COROLLARIES)


def corollary_inputs(name: str, args: Sequence[int]) -> tuple[tuple[int, ...], Optional[Weight]]:
    """Validate the named corollary's hypotheses and return the degree triple
    (and weight, for the weighted corollary) it classifies."""
    if name not in _COROLLARIES:
        raise DomainError(
            f"unknown corollary {name!r}; known: {', '.join(sorted(_COROLLARIES))}"
        )
    arity, builder = _COROLLARIES[name]
    args = [int(a) for a in args]
    if len(args) != arity:
        raise DomainError(f"corollary {name} takes {arity} integers")
    return builder(args)


def corollary_suite(
    name: str,
    args: Sequence[int],
    registry: Optional[DeltaBoundRegistry] = None,
) -> ClassificationResult:
    """Verdict for a named corollary instance, always computed through
    classify_total / classify_weighted, never a separate code path."""
    if registry is None:
        registry = builtin_registry()
    triple, weight = corollary_inputs(name, args)
    if weight is not None:
        return classify_weighted(triple, weight, registry)
    return classify_total(*triple, registry=registry)
