"""Coxeter matrices, finite-type recognition, Solomon and Steinberg formulas.

Infinite orders are stored as ``None``.  Finite irreducible components are
recognised by matching the labelled Coxeter graph against the classification
(A, B, D, E6-8, F4, H3, H4, I2); no Gram determinants are evaluated here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .polyarith import (
    ONE,
    IntPolynomial,
    RationalFunction,
    bracket_product,
    rational_sum,
    reciprocal_substitution,
)

INF = None


class CoxeterMatrixError(ValueError):
    pass


def _order_from_json(x, where: str):
    if x == "inf" or x == 0 or x is None:
        return INF
    if isinstance(x, bool) or not isinstance(x, int):
        raise CoxeterMatrixError(f"{where}: order must be an integer >= 1, 'inf' or 0, got {x!r}")
    if x < 1:
        raise CoxeterMatrixError(f"{where}: negative order {x}")
    return x


@dataclass(frozen=True)
class CoxeterMatrix:
    orders: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        n = len(self.orders)
        for i, row in enumerate(self.orders):
            if len(row) != n:
                raise CoxeterMatrixError(f"orders row {i} has length {len(row)}, expected {n}")
            if row[i] != 1:
                raise CoxeterMatrixError(f"orders[{i}][{i}] must be 1, got {row[i]!r}")
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.orders[i][j], self.orders[j][i]
                if a != b:
                    raise CoxeterMatrixError(f"orders not symmetric at ({i},{j}): {a!r} != {b!r}")
                if a is not INF and a < 2:
                    raise CoxeterMatrixError(f"orders[{i}][{j}] = {a}; off-diagonal orders must be >= 2 or inf")

    @property
    def rank(self) -> int:
        return len(self.orders)

    def m(self, i: int, j: int) -> int | None:
        return self.orders[i][j]

    def is_edge(self, i: int, j: int) -> bool:
        """Coxeter-graph edge: m_ij >= 3 or infinite."""
        m = self.orders[i][j]
        return m is INF or m >= 3

    @classmethod
    def from_pairs(cls, rank: int, pairs: dict, default: int | None = 2) -> CoxeterMatrix:
        """Build from ``{(i, j): m}``; unspecified pairs get ``default``."""
        rows = [[1 if i == j else default for j in range(rank)] for i in range(rank)]
        for (i, j), m in pairs.items():
            rows[i][j] = rows[j][i] = m
        return cls(tuple(tuple(r) for r in rows))

    def to_document(self) -> dict:
        return {
            "rank": self.rank,
            "orders": [["inf" if m is INF else m for m in row] for row in self.orders],
        }


def parse_coxeter_matrix(document) -> CoxeterMatrix:
    """Parse ``{"rank": n, "orders": ...}`` (dict or JSON text).

    ``orders`` is either the full symmetric matrix or the strict upper
    triangle (row i holding the ``n - i - 1`` entries right of the diagonal).
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise CoxeterMatrixError(f"malformed document: {exc}") from None
    if not isinstance(document, dict):
        raise CoxeterMatrixError("document must be an object with 'rank' and 'orders'")
    if "rank" not in document or "orders" not in document:
        raise CoxeterMatrixError("document needs fields 'rank' and 'orders'")
    n = document["rank"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise CoxeterMatrixError(f"rank: expected a nonnegative integer, got {n!r}")
    rows = document["orders"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise CoxeterMatrixError("orders: expected a list of rows")
    if len(rows) == n and all(len(r) == n for r in rows):
        full = [[_order_from_json(x, f"orders[{i}][{j}]") if i != j else x for j, x in enumerate(r)]
                for i, r in enumerate(rows)]
        for i in range(n):
            if full[i][i] != 1:
                raise CoxeterMatrixError(f"orders[{i}][{i}] must be 1, got {full[i][i]!r}")
    elif len(rows) in (n - 1, n) and all(len(r) == n - i - 1 for i, r in enumerate(rows)):
        full = [[1] * n for _ in range(n)]
        for i, r in enumerate(rows):
            for k, x in enumerate(r):
                j = i + 1 + k
                full[i][j] = full[j][i] = _order_from_json(x, f"orders[{i}][{k}]")
    else:
        raise CoxeterMatrixError("orders: neither a full rank x rank matrix nor a strict upper triangle")
    return CoxeterMatrix(tuple(tuple(r) for r in full))


# --- classification ----------------------------------------------------------

FAMILIES = ("A", "B", "D", "E6", "E7", "E8", "F4", "H3", "H4", "I2")


@dataclass(frozen=True, order=True)
class FiniteTypeLabel:
    family: str
    parameter: int | None = None

    def __post_init__(self):
        f, p = self.family, self.parameter
        if f not in FAMILIES:
            raise ValueError(f"unknown family {f!r}")
        if f == "A" and (p is None or p < 1):
            raise ValueError("A_n needs n >= 1")
        if f == "B" and (p is None or p < 2):
            raise ValueError("B_n needs n >= 2")
        if f == "D" and (p is None or p < 4):
            raise ValueError("D_n needs n >= 4")
        if f == "I2" and (p is None or p < 5):
            raise ValueError("I2(m) needs m >= 5; use A2 / B2 for m = 3, 4")
        if f in ("E6", "E7", "E8", "F4", "H3", "H4") and p is not None:
            raise ValueError(f"{f} takes no parameter")

    @property
    def rank(self) -> int:
        if self.family in ("A", "B", "D"):
            return self.parameter
        if self.family == "I2":
            return 2
        return int(self.family[1])

    def __str__(self):
        if self.family in ("A", "B", "D"):
            return f"{self.family}{self.parameter}"
        if self.family == "I2":
            return f"I2({self.parameter})"
        return self.family


def parse_label(text: str) -> FiniteTypeLabel:
    """``A3``, ``B2``, ``D4``, ``E8``, ``H3``, ``I2(7)`` (or ``I2_7``)."""
    s = text.strip().replace(" ", "")
    if s.upper().startswith("I2"):
        rest = s[2:].strip("()_")
        if not rest.isdigit():
            raise ValueError(f"bad I2 label {text!r}")
        m = int(rest)
        return canonical_dihedral(m)
    if s.upper() in ("E6", "E7", "E8", "F4", "H3", "H4"):
        return FiniteTypeLabel(s.upper())
    if len(s) >= 2 and s[0].upper() in "ABD" and s[1:].isdigit():
        return FiniteTypeLabel(s[0].upper(), int(s[1:]))
    raise ValueError(f"unrecognised type label {text!r}")


def canonical_dihedral(m: int) -> FiniteTypeLabel:
    if m == 2:
        raise ValueError("I2(2) is reducible (A1 x A1)")
    if m == 3:
        return FiniteTypeLabel("A", 2)
    if m == 4:
        return FiniteTypeLabel("B", 2)
    return FiniteTypeLabel("I2", m)


def connected_components(matrix: CoxeterMatrix, subset: Iterable[int]) -> list[tuple[int, ...]]:
    """Components of the Coxeter graph induced on ``subset`` (sorted)."""
    remaining = sorted(set(subset))
    seen: set[int] = set()
    out = []
    for s in remaining:
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in remaining:
                if y not in seen and matrix.is_edge(x, y):
                    seen.add(y)
                    stack.append(y)
        out.append(tuple(sorted(comp)))
    return out


def classify_component(matrix: CoxeterMatrix, subset: Sequence[int]) -> FiniteTypeLabel | None:
    """Finite type of a connected induced diagram, or ``None`` if infinite."""
    nodes = sorted(set(subset))
    if not nodes:
        raise ValueError("empty subset")
    if len(connected_components(matrix, nodes)) != 1:
        raise ValueError(f"subset {nodes} is not connected; split it into components first")
    n = len(nodes)
    if n == 1:
        return FiniteTypeLabel("A", 1)
    adj: dict[int, dict[int, int]] = {x: {} for x in nodes}
    for x, y in combinations(nodes, 2):
        if matrix.is_edge(x, y):
            m = matrix.m(x, y)
            if m is INF:
                return None
            adj[x][y] = m
            adj[y][x] = m
    n_edges = sum(len(v) for v in adj.values()) // 2
    if n_edges != n - 1:
        return None  # contains a cycle
    if n == 2:
        (m,) = adj[nodes[0]].values()
        return canonical_dihedral(m)
    degrees = {x: len(adj[x]) for x in nodes}
    labels = [m for x in nodes for y, m in adj[x].items() if x < y]
    big = [m for m in labels if m > 3]
    if max(degrees.values()) > 3:
        return None
    branch = [x for x in nodes if degrees[x] == 3]
    if branch:
        if len(branch) > 1 or big:
            return None
        c = branch[0]
        arms = []
        for start in adj[c]:
            length, prev, cur = 1, c, start
            while degrees[cur] == 2:
                nxt = next(y for y in adj[cur] if y != prev)
                prev, cur = cur, nxt
                length += 1
            arms.append(length)
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return FiniteTypeLabel("D", n)
        return {(1, 2, 2): FiniteTypeLabel("E6"),
                (1, 2, 3): FiniteTypeLabel("E7"),
                (1, 2, 4): FiniteTypeLabel("E8")}.get(tuple(arms))
    # a path: walk it from one end
    end = next(x for x in nodes if degrees[x] == 1)
    path_labels, prev, cur = [], None, end
    while True:
        nxt = [y for y in adj[cur] if y != prev]
        if not nxt:
            break
        path_labels.append(adj[cur][nxt[0]])
        prev, cur = cur, nxt[0]
    if not big:
        return FiniteTypeLabel("A", n)
    if len(big) > 1:
        return None
    m = big[0]
    pos = path_labels.index(m)
    at_end = pos in (0, len(path_labels) - 1)
    if m == 4:
        if at_end:
            return FiniteTypeLabel("B", n)
        if n == 4:
            return FiniteTypeLabel("F4")
        return None
    if m == 5 and at_end:
        if n == 3:
            return FiniteTypeLabel("H3")
        if n == 4:
            return FiniteTypeLabel("H4")
    return None


def classify_subset(matrix: CoxeterMatrix, subset: Sequence[int]) -> tuple[FiniteTypeLabel, ...] | None:
    """Component labels of ``W_T`` (sorted), or ``None`` when ``W_T`` is infinite."""
    labels = []
    for comp in connected_components(matrix, subset):
        lab = classify_component(matrix, comp)
        if lab is None:
            return None
        labels.append(lab)
    return tuple(sorted(labels))


_EXCEPTIONAL_EXPONENTS = {
    "E6": (1, 4, 5, 7, 8, 11),
    "E7": (1, 5, 7, 9, 11, 13, 17),
    "E8": (1, 7, 11, 13, 17, 19, 23, 29),
    "F4": (1, 5, 7, 11),
    "H3": (1, 5, 9),
    "H4": (1, 11, 19, 29),
}


def exponents(label: FiniteTypeLabel) -> tuple[int, ...]:
    f, n = label.family, label.parameter
    if f == "A":
        return tuple(range(1, n + 1))
    if f == "B":
        return tuple(range(1, 2 * n, 2))
    if f == "D":
        return tuple(sorted(tuple(range(1, 2 * n - 2, 2)) + (n - 1,)))
    if f == "I2":
        return (1, n - 1)
    return _EXCEPTIONAL_EXPONENTS[f]


def group_order(label: FiniteTypeLabel) -> int:
    out = 1
    for e in exponents(label):
        out *= e + 1
    return out


def solomon_series(labels: Iterable[FiniteTypeLabel]) -> IntPolynomial:
    """Growth polynomial of a finite Coxeter group given its component types."""
    degrees = [e + 1 for lab in labels for e in exponents(lab)]
    return bracket_product(sorted(degrees))


def standard_matrix(label: FiniteTypeLabel) -> CoxeterMatrix:
    """Coxeter matrix of the standard diagram for ``label``.

    Paths are numbered left to right; the special label sits on the last
    edge for B and H, the middle edge for F4; D and E branch at node
    ``n-3`` (D) or node 2 (E, Bourbaki-style arm lengths 1, 2, n-4).
    """
    f, n = label.family, label.rank
    pairs = {}
    if f in ("A", "B", "H3", "H4", "F4", "I2"):
        for i in range(n - 1):
            pairs[(i, i + 1)] = 3
        if f == "B" or f in ("H3", "H4"):
            pairs[(n - 2, n - 1)] = 4 if f == "B" else 5
        elif f == "F4":
            pairs[(1, 2)] = 4
        elif f == "I2":
            pairs[(0, 1)] = label.parameter
    elif f == "D":
        for i in range(n - 2):
            pairs[(i, i + 1)] = 3
        pairs[(n - 3, n - 1)] = 3
    else:  # E6, E7, E8: chain 0-1-...-(n-2) with node n-1 hanging off node 2
        for i in range(n - 2):
            pairs[(i, i + 1)] = 3
        pairs[(2, n - 1)] = 3
    return CoxeterMatrix.from_pairs(n, pairs)


# --- parabolic subgroups and Steinberg --------------------------------------

@dataclass(frozen=True)
class ParabolicEntry:
    subset: tuple[int, ...]
    labels: tuple[FiniteTypeLabel, ...]
    growth: IntPolynomial


@dataclass(frozen=True)
class ParabolicCatalog:
    rank: int
    entries: tuple[ParabolicEntry, ...] = field(default_factory=tuple)

    @property
    def subsets(self) -> list[tuple[int, ...]]:
        return [e.subset for e in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def finite_parabolic_subsets(matrix: CoxeterMatrix) -> ParabolicCatalog:
    """All ``T`` with ``W_T`` finite, depth-first with pruning at infinite ``T``.

    A finite ``W_T`` has only finite parabolic subgroups, so no superset of
    an infinite subset can be finite; the search never extends one.
    """
    n = matrix.rank
    found: list[ParabolicEntry] = []

    def visit(subset: tuple[int, ...]):
        labels = classify_subset(matrix, subset) if subset else ()
        if labels is None:
            return
        found.append(ParabolicEntry(subset, labels, solomon_series(labels)))
        start = subset[-1] + 1 if subset else 0
        for s in range(start, n):
            # adding s: only pairs with finite m can stay finite
            if all(matrix.m(s, x) is not INF for x in subset):
                visit(subset + (s,))

    visit(())
    found.sort(key=lambda e: e.subset)
    return ParabolicCatalog(n, tuple(found))


class SteinbergError(ArithmeticError):
    pass


def steinberg_sum(catalog: ParabolicCatalog) -> RationalFunction:
    """``sum_T (-1)^|T| / f_T(t)``, which equals ``1 / f_S(1/t)``."""
    return rational_sum(((-1) ** len(e.subset), RationalFunction(ONE, e.growth)) for e in catalog)


def steinberg_growth(matrix: CoxeterMatrix) -> RationalFunction:
    """Growth function ``f_S(t)`` of an arbitrary Coxeter system."""
    total = steinberg_sum(finite_parabolic_subsets(matrix))
    if total.is_zero:
        raise SteinbergError("alternating parabolic sum vanished identically")
    return reciprocal_substitution(total.inverse())
