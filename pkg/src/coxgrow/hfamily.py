"""H-polynomials of cusped Coxeter polyhedra with angles pi/m, m <= 6.

For each angle family the reciprocal growth function factors as

    1 / f_P(t) = (t - 1) * H(t) / [cyclotomic base]

This module holds the closed forms of ``H`` in terms of the polyhedron's
counts, extracts ``H`` from a computed growth function, replays the
coefficient-sign arguments that make the growth rate a Perron number, and
samples count vectors satisfying the polyhedral identities.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .coxeter import CoxeterMatrix, classify_subset, solomon_series
from .polyarith import (
    ONE,
    T_MINUS_1,
    IntPolynomial,
    NotDivisibleError,
    RationalFunction,
    bracket,
    bracket_product,
    exact_divide,
    rational_sum,
)
from .polyhedron import CountVector, check_lemma2
from .roots import prop1_applies


class FamilyError(ValueError):
    pass


class ParityError(ArithmeticError):
    """A half-integer closed-form coefficient did not come out integral."""


class SamplerExhausted(RuntimeError):
    pass


class HFamily(Enum):
    H2 = ("H2", (2,), (2, 2, 2))
    H23 = ("H23", (2, 3), (2, 2, 3, 4))
    H236 = ("H236", (2, 3, 6), (2, 2, 4, 6))
    H25 = ("H25", (2, 5), (2, 2, 2, 5))
    H2356 = ("H2356", (2, 3, 5, 6), (2, 4, 6, 10))
    H23456 = ("H23456", (2, 3, 4, 5, 6), (2, 4, 6, 10))

    def __init__(self, tag, angles, base):
        self.tag = tag
        self.angles = frozenset(angles)
        self.base_degrees = base

    @property
    def cyclotomic_base(self) -> IntPolynomial:
        return bracket_product(self.base_degrees)

    @classmethod
    def from_tag(cls, tag: str) -> HFamily:
        for fam in cls:
            if fam.tag.lower() == tag.strip().lower():
                return fam
        raise FamilyError(f"unknown family {tag!r}; expected one of {[f.tag for f in cls]}")


# smallest covering family first
_FAMILY_ORDER = (HFamily.H2, HFamily.H23, HFamily.H25, HFamily.H236, HFamily.H2356, HFamily.H23456)


def detect_family(counts: CountVector) -> HFamily:
    big = sorted(m for m in counts.e_m if m >= 7)
    if big:
        raise FamilyError(f"pi/{big[0]}-edges present: only angles pi/m with m <= 6 are covered")
    angles = set(counts.e_m) | {2}
    for fam in _FAMILY_ORDER:
        if angles <= fam.angles:
            return fam
    raise FamilyError(f"no family covers angle set {sorted(angles)}")  # pragma: no cover


# --- closed forms ---------------------------------------------------------------
# Coefficient lists, highest degree first, exactly as printed.  Each entry is a
# linear form in the count symbols; ``v2222`` is the (2,2,2,2) cusp count,
# ``v236`` the (2,3,6) vertex count, and so on.

_CLOSED_FORMS: dict[HFamily, tuple[str, ...]] = {
    HFamily.H2: (
        "v2222 - 1",
        "f - 4",
        "-1",
    ),
    HFamily.H23: (
        "v2222 + v333 - 1",
        "v2222 + 2v333 + f - 5",
        "2v2222 + 1/2v223 + v233 + 5/2v333 + f - 7",
        "v2222 + v233 + 2v333 + 2f - 10",
        "v2222 + 1/2v223 + v233 + 3/2v333 + f - 7",
        "f - 5",
        "-1",
    ),
    HFamily.H236: (
        "v2222 + v236 + v333 - 1",
        "v2222 + 2v236 + 2v333 + f - 5",
        "2v2222 + 1/2v223 + 1/2v226 + v233 + 3v236 + 5/2v333 + f - 7",
        "2v2222 + 1/2v226 + v233 + 7/2v236 + 3v333 + 2f - 11",
        "2v2222 + 1/2v223 + v226 + v233 + 7/2v236 + 7/2v333 + 2f - 12",
        "2v2222 + 1/2v223 + v226 + v233 + 5/2v236 + 5/2v333 + 2f - 12",
        "v2222 + 1/2v226 + v233 + 3/2v236 + 2v333 + 2f - 11",
        "v2222 + 1/2v223 + 1/2v226 + v233 + v236 + 3/2v333 + f - 7",
        "f - 5",
        "-1",
    ),
    HFamily.H25: (
        "v2222 - 1",
        "v2222 + f - 5",
        "v2222 + f - 5",
        "v2222 + f - 5",
        "v2222 + f - 5",
        "f - 5",
        "-1",
    ),
    HFamily.H2356: (
        "v2222 + v236 + v333 - 1",
        "v2222 + 2v236 + 2v333 + f - 5",
        "3v2222 + 1/2v223 + 1/2v225 + 1/2v226 + v233 + v235 + 4v236 + 7/2v333 + f - 8",
        "3v2222 + 1/2v225 + 1/2v226 + v233 + 3/2v235 + 11/2v236 + 5v333 + 3f - 16",
        "5v2222 + v223 + 3/2v225 + 3/2v226 + 2v233 + 7/2v235 + 15/2v236 + 7v333 + 3f - 20",
        "5v2222 + 1/2v223 + v225 + 3/2v226 + 2v233 + 9/2v235 + 8v236 + 15/2v333 + 5f - 28",
        "6v2222 + v223 + 2v225 + 2v226 + 3v233 + 6v235 + 9v236 + 9v333 + 5f - 31",
        "6v2222 + v223 + 3/2v225 + 2v226 + 3v233 + 13/2v235 + 9v236 + 9v333 + 6f - 35",
        "6v2222 + v223 + 2v225 + 2v226 + 3v233 + 7v235 + 9v236 + 9v333 + 6f - 36",
        "6v2222 + v223 + 2v225 + 2v226 + 3v233 + 7v235 + 9v236 + 9v333 + 6f - 36",
        "5v2222 + v223 + 3/2v225 + 2v226 + 3v233 + 13/2v235 + 8v236 + 8v333 + 6f - 35",
        "5v2222 + v223 + 2v225 + 2v226 + 3v233 + 6v235 + 7v236 + 7v333 + 5f - 31",
        "3v2222 + 1/2v223 + v225 + 3/2v226 + 2v233 + 9/2v235 + 5v236 + 11/2v333 + 5f - 28",
        "3v2222 + v223 + 3/2v225 + 3/2v226 + 2v233 + 7/2v235 + 7/2v236 + 4v333 + 3f - 20",
        "v2222 + 1/2v225 + 1/2v226 + v233 + 3/2v235 + 3/2v236 + 2v333 + 3f - 16",
        "v2222 + 1/2v223 + 1/2v225 + 1/2v226 + v233 + v235 + v236 + 3/2v333 + f - 8",
        "f - 5",
        "-1",
    ),
}

# Printed difference H_{2,3,4,5,6} - H_{2,3,5,6}, highest degree (17) first,
# reproduced with its subscripts and trailing constant as printed.
PRINTED_DIFFERENCE: tuple[str, ...] = (
    "v224",
    "1/2v224 + 1/2v234 + 5/2v244",
    "v224 + 3/2v234 + 9/2v244",
    "2v224 + 3v234 + 13/2v244",
    "5/2v224 + 9/2v234 + 17/2v244",
    "7/2v224 + 6v234 + 21/2v244",
    "4v224 + 7v234 + 23/2v244",
    "9/2v244 + 15/2v234 + 12v244",
    "9/2v224 + 15/2v234 + 12v244",
    "9/2v244 + 15/2v234 + 12v244",
    "9/2v224 + 15/2v234 + 11v244",
    "4v224 + 7v234 + 19/2v244",
    "7/2v244 + 6v234 + 15/2v244",
    "5/2v224 + 9/2v234 + 11/2v244",
    "2v224 + 3v234 + 7/2v244",
    "v224 + 3/2v234 + 3/2v244",
    "1/2v224 + 1/2v234 + 1/2v244",
    "-1",
)

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*([a-z]\w*)?")


@lru_cache(maxsize=None)
def parse_linear_form(text: str) -> tuple[tuple[str, Fraction], ...]:
    """``"2v2222 + 1/2v223 + f - 7"`` -> ((symbol or "1", coefficient), ...)."""
    s = text.replace(" ", "")
    terms: dict[str, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError(f"cannot parse linear form {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        sym = m.group(3) or "1"
        terms[sym] = terms.get(sym, Fraction(0)) + sign * coef
        pos = m.end()
    return tuple(terms.items())


def _value_doubled(form: str, symbols: dict[str, int]) -> int:
    """Twice the value of a linear form, computed in integers."""
    total = 0
    for sym, coef in parse_linear_form(form):
        x = 1 if sym == "1" else symbols.get(sym, 0)
        two_c = 2 * coef
        if two_c.denominator != 1:
            raise ValueError(f"coefficient {coef} is not a multiple of 1/2")
        total += int(two_c) * x
    return total


def _count_symbols(counts: CountVector) -> dict[str, int]:
    out = {"f": counts.f, "e": counts.e, "v": counts.v, "v2222": counts.v2222}
    for m, c in counts.e_m.items():
        out[f"e{m}"] = c
    for k, c in counts.v_abc.items():
        out["v" + "".join(map(str, k))] = c
    return out


def form_values(forms, counts: CountVector) -> list[Fraction]:
    """Exact values of the forms, ascending by degree (no parity requirement)."""
    symbols = _count_symbols(counts)
    return [Fraction(_value_doubled(f, symbols), 2) for f in reversed(forms)]


def evaluate_forms(forms, counts: CountVector) -> IntPolynomial:
    """Polynomial whose coefficients (highest first) are the given forms."""
    symbols = _count_symbols(counts)
    coeffs = []
    for form in reversed(forms):
        twice = _value_doubled(form, symbols)
        if twice % 2:
            raise ParityError(f"{form!r} evaluates to {twice}/2 for these counts")
        coeffs.append(twice // 2)
    return IntPolynomial(coeffs)


def closed_form_text(family: HFamily) -> tuple[str, ...]:
    if family not in _CLOSED_FORMS:
        raise FamilyError(f"no closed form is available for {family.tag}")
    return _CLOSED_FORMS[family]


def h_closed_form(family: HFamily, counts: CountVector) -> IntPolynomial:
    """The family's closed-form H with the counts substituted."""
    forms = closed_form_text(family)
    if family is HFamily.H25 and counts.em(5) != 1:
        raise FamilyError(f"the H25 closed form assumes exactly one pi/5-edge, got e5 = {counts.em(5)}")
    return evaluate_forms(forms, counts)


# --- growth from counts -----------------------------------------------------------

@lru_cache(maxsize=None)
def _triple_growth(orders: tuple[int, int, int]) -> IntPolynomial | None:
    a, b, c = orders
    matrix = CoxeterMatrix.from_pairs(3, {(0, 1): a, (1, 2): b, (0, 2): c})
    labels = classify_subset(matrix, (0, 1, 2))
    return None if labels is None else solomon_series(labels)


def reciprocal_growth_from_counts(counts: CountVector) -> RationalFunction:
    """``1/f_P(t)`` assembled from the counts alone.

    Finite parabolics of a 3-dimensional Coxeter polyhedron are the empty
    set, single facets, edges and finite vertices; each ``1/f_T(1/t)`` is
    ``t^deg / f_T(t)`` because growth polynomials of finite groups are
    palindromic.
    """
    terms = [(1, RationalFunction(ONE)), (-1, RationalFunction(IntPolynomial.monomial(1, counts.f), bracket(2)))]
    for m, c in counts.e_m.items():
        terms.append((1, RationalFunction(IntPolynomial.monomial(m, c), bracket_product((2, m)))))
    for k, c in counts.v_abc.items():
        g = _triple_growth(k)
        if g is not None:
            terms.append((-1, RationalFunction(IntPolynomial.monomial(g.degree, c), g)))
    return rational_sum(terms)


def growth_from_counts(counts: CountVector) -> RationalFunction:
    return reciprocal_growth_from_counts(counts).inverse()


def extract_h(growth: RationalFunction, family: HFamily) -> IntPolynomial:
    """``H = base * (1/f_P) / (t - 1)``, exactly, or :class:`NotDivisibleError`."""
    inv_num, inv_den = growth.den, growth.num  # 1/f_P
    return exact_divide(family.cyclotomic_base * inv_num, T_MINUS_1 * inv_den)


def h_from_counts(family: HFamily, counts: CountVector) -> IntPolynomial:
    return extract_h(growth_from_counts(counts), family)


# --- H_{2,3,4,5,6} - H_{2,3,5,6} ---------------------------------------------------

@dataclass
class DifferenceLine:
    degree: int
    derived: Fraction
    printed: Fraction
    printed_text: str

    @property
    def agrees(self) -> bool:
        return self.derived == self.printed

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "derived": str(self.derived),
            "printed": str(self.printed),
            "printed_text": self.printed_text,
            "agrees": self.agrees,
        }


@dataclass
class DifferenceReport:
    difference: tuple[Fraction, ...]  # ascending coefficients
    lines: list[DifferenceLine]
    nonnegative: bool
    vanishes: bool
    no_quarter_content: bool

    @property
    def zero_iff_no_quarter(self) -> bool:
        return self.vanishes == self.no_quarter_content

    @property
    def disagreements(self) -> list[int]:
        return [ln.degree for ln in self.lines if not ln.agrees]

    def to_json(self) -> dict:
        return {
            "difference": [str(c) for c in self.difference],
            "nonnegative": self.nonnegative,
            "vanishes": self.vanishes,
            "no_pi4_vertices": self.no_quarter_content,
            "zero_iff_no_pi4_vertices": self.zero_iff_no_quarter,
            "lines": [ln.to_json() for ln in self.lines],
            "disagreeing_degrees": self.disagreements,
        }


def printed_difference_value(degree: int, counts: CountVector) -> Fraction:
    form = PRINTED_DIFFERENCE[17 - degree]
    return Fraction(_value_doubled(form, _count_symbols(counts)), 2)


def h2356_without_quarter(counts: CountVector) -> list[Fraction]:
    """The H2356 closed form read as a form in the vertex counts.

    The closed form trades vertex tallies for ``f`` through Euler's formula
    on a polyhedron without pi/4 vertices.  Here that trade is undone, so
    ``f`` is replaced by the facet count those identities give once the
    (2,2,4), (2,3,4) and (2,4,4) vertices are left out.  The result may be
    half-integral, so it is kept over the rationals.
    """
    quarter = counts.vt(2, 2, 4) + counts.vt(2, 3, 4) + counts.vt(2, 4, 4)
    symbols = _count_symbols(counts)
    twice_f = 2 * counts.f - quarter
    out = []
    for form in reversed(_CLOSED_FORMS[HFamily.H2356]):
        total = Fraction(0)
        for sym, coef in parse_linear_form(form):
            if sym == "f":
                total += coef * Fraction(twice_f, 2)
            else:
                total += coef * (1 if sym == "1" else symbols.get(sym, 0))
        out.append(total)
    return out


def difference_identity(counts: CountVector) -> DifferenceReport:
    """Derived ``H_{2,3,4,5,6} - H_{2,3,5,6}`` against the printed identity."""
    full = h_from_counts(HFamily.H23456, counts)
    partial = h2356_without_quarter(counts)
    diff = tuple(full[k] - partial[k] for k in range(18))
    lines = []
    for k in range(17, -1, -1):
        lines.append(DifferenceLine(k, diff[k], printed_difference_value(k, counts), PRINTED_DIFFERENCE[17 - k]))
    quarter = counts.vt(2, 2, 4) + counts.vt(2, 3, 4) + counts.vt(2, 4, 4)
    return DifferenceReport(
        difference=diff,
        lines=lines,
        nonnegative=all(a >= 0 for a in diff[1:]) and diff[0] == 0,
        vanishes=not any(diff),
        no_quarter_content=quarter == 0,
    )


# --- coefficient-sign replay -------------------------------------------------------

def _strict_indices(family: HFamily, counts: CountVector) -> tuple[int, ...]:
    """Coefficients the sign arguments show to be strictly positive."""
    if family is HFamily.H23:
        return (3, 5)
    if family is HFamily.H236:
        return (7, 8)
    if family is HFamily.H25:
        return (2, 3, 4, 5)
    if family is HFamily.H2356:
        return (15,)
    if family is HFamily.H23456 and counts.em(5) >= 1:
        return (15,)  # inherited from H2356 through the nonnegative difference
    return ()


def family_preconditions(family: HFamily, counts: CountVector) -> list[str]:
    """Reasons the sign argument does not apply (empty list: it applies)."""
    problems = []
    lemma = check_lemma2(counts, noncompact=True)
    if not lemma.passed:
        problems.append(f"count identities fail: {', '.join(lemma.failures)}")
    if counts.f < 5:
        problems.append(f"f = {counts.f} < 5")
    if any(m >= 7 for m in counts.e_m):
        problems.append("pi/m-edges with m >= 7 present")
    extra = set(counts.e_m) - family.angles
    if extra:
        problems.append(f"angles pi/{sorted(extra)} fall outside family {family.tag}")
    e = counts.em
    if family is HFamily.H23 and e(3) < 1:
        problems.append("H23 needs at least one pi/3-edge")
    if family is HFamily.H236 and e(6) < 1:
        problems.append("H236 needs at least one pi/6-edge")
    if family is HFamily.H2356 and (e(5) < 1 or (e(3) < 1 and e(6) < 1)):
        problems.append("H2356 needs a pi/5-edge and a pi/3- or pi/6-edge")
    if family is HFamily.H25 and e(5) != 1:
        problems.append("H25 needs exactly one pi/5-edge")
    if family is HFamily.H23456 and e(4) < 1:
        problems.append("H23456 needs at least one pi/4-edge")
    return problems


@dataclass
class CoefficientRow:
    index: int
    origin: str
    value: int
    required: str

    @property
    def ok(self) -> bool:
        if self.required == "= -1":
            return self.value == -1
        if self.required == "> 0":
            return self.value > 0
        return self.value >= 0

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "origin": self.origin,
            "value": self.value,
            "required": self.required,
            "verdict": "pass" if self.ok else "fail",
        }


@dataclass
class NonnegativityReport:
    family: HFamily
    counts: CountVector
    preconditions_failed: list[str]
    h: IntPolynomial | None = None
    rows: list[CoefficientRow] = field(default_factory=list)
    closed_form_agrees: bool | None = None
    prop1: bool = False
    linear_case: bool = False

    @property
    def applicable(self) -> bool:
        return not self.preconditions_failed

    @property
    def coefficients_ok(self) -> bool:
        return self.applicable and all(r.ok for r in self.rows)

    @property
    def passed(self) -> bool:
        return self.coefficients_ok and (self.prop1 or self.linear_case) and self.closed_form_agrees is not False

    def to_json(self) -> dict:
        return {
            "family": self.family.tag,
            "applicable": self.applicable,
            "preconditions_failed": self.preconditions_failed,
            "h": None if self.h is None else str(self.h),
            "closed_form_agrees": self.closed_form_agrees,
            "coefficients": [r.to_json() for r in self.rows],
            "prop1_applies": self.prop1,
            "linear_case": self.linear_case,
            "passed": self.passed,
        }


def nonnegativity_check(family: HFamily, counts: CountVector) -> NonnegativityReport:
    """Replay the coefficient-sign claims for one count vector.

    ``H`` is taken from the counts via Steinberg's formula (the ground truth);
    where a closed form exists it is evaluated too and must agree.
    """
    problems = family_preconditions(family, counts)
    report = NonnegativityReport(family, counts, problems)
    if problems:
        return report
    h = h_from_counts(family, counts)
    report.h = h
    forms = _CLOSED_FORMS.get(family)
    if forms is not None:
        report.closed_form_agrees = h_closed_form(family, counts) == h
    strict = set(_strict_indices(family, counts))
    for k in range(h.degree + 1):
        if forms is not None and len(forms) - 1 - k >= 0:
            origin = forms[len(forms) - 1 - k]
        else:
            origin = "Steinberg (no closed form)"
        required = "= -1" if k == 0 else ("> 0" if k in strict else ">= 0")
        report.rows.append(CoefficientRow(k, origin, h[k], required))
    report.prop1 = prop1_applies(h)
    # one cusp, no other source of higher terms: H = a1*t - 1
    report.linear_case = h.degree == 1 and h[0] == -1 and h[1] >= 1
    return report


# --- sampler ------------------------------------------------------------------------

_FAMILY_TYPES = {
    HFamily.H2: ((2, 2, 2),),
    HFamily.H23: ((2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3)),
    HFamily.H236: ((2, 2, 2), (2, 2, 3), (2, 2, 6), (2, 3, 3), (2, 3, 6), (3, 3, 3)),
    HFamily.H25: ((2, 2, 2), (2, 2, 5)),
    HFamily.H2356: ((2, 2, 2), (2, 2, 3), (2, 2, 5), (2, 2, 6), (2, 3, 3), (2, 3, 5), (2, 3, 6), (3, 3, 3)),
    HFamily.H23456: (
        (2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 2, 6),
        (2, 3, 3), (2, 3, 4), (2, 3, 5), (2, 3, 6), (2, 4, 4), (3, 3, 3),
    ),
}

COUNT_CAP = 40


def counts_from_vertices(v2222: int, v_abc: dict[tuple[int, int, int], int]) -> CountVector:
    """Fill in e_m, e, v and f from vertex tallies by double counting and Euler."""
    twice: dict[int, int] = {2: 4 * v2222}
    for k, c in v_abc.items():
        for m in k:
            twice[m] = twice.get(m, 0) + c
    if any(x % 2 for x in twice.values()):
        raise ValueError("edge double count is odd")
    e_m = {m: x // 2 for m, x in twice.items()}
    e = sum(e_m.values())
    v = v2222 + sum(v_abc.values())
    return CountVector(f=2 - v + e, e=e, v=v, e_m=e_m, v2222=v2222, v_abc=v_abc)


def sample_admissible_counts(family: HFamily, seed: int, n: int, max_attempts: int = 200_000) -> list[CountVector]:
    """``n`` count vectors meeting the identities and the family's preconditions.

    Vertex tallies are drawn at random (mostly small, sometimes zero); edge
    counts and ``f`` follow, and anything off-family, over the cap or failing
    a precondition is rejected.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    types = _FAMILY_TYPES[family]
    out: list[CountVector] = []
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > max_attempts:
            raise SamplerExhausted(
                f"{family.tag}: found {len(out)} of {n} samples in {max_attempts} attempts"
            )
        hi = rng.choice((3, 6, 12))
        v2222 = rng.randint(0, hi) if rng.random() < 0.7 else 0
        v_abc = {}
        for k in types:
            if rng.random() < 0.55:
                v_abc[k] = rng.randint(1, hi)
        if family is HFamily.H25:
            v_abc[(2, 2, 5)] = 2
        try:
            c = counts_from_vertices(v2222, v_abc)
        except ValueError:
            continue
        if c.f < 5 or max([c.f, c.e, c.v, *c.e_m.values()]) > COUNT_CAP:
            continue
        if family_preconditions(family, c):
            continue
        if detect_family(c) is not family:
            continue
        out.append(c)
    return out


def support_gcd(p: IntPolynomial) -> int:
    g = 0
    for k in range(1, p.degree + 1):
        if p[k]:
            g = gcd(g, k)
    return g
