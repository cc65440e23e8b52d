"""Combinatorial Coxeter polyhedra: schemes, vertex types, Euler-type counts.

A scheme is the face lattice data the growth computation needs: facet names,
labelled edges (pairs of adjacent facets with their order ``m``, angle pi/m)
and vertices as cyclic tuples of incident facets.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .coxeter import INF, CoxeterMatrix


class PolyhedronError(ValueError):
    """Structural problem with a polyhedron document."""


class VertexTypeError(ValueError):
    """A vertex violates the spherical/Euclidean link condition."""


@dataclass(frozen=True)
class PolyhedronScheme:
    facets: tuple[str, ...]
    edges: Mapping[frozenset, int]
    vertices: tuple[tuple[str, ...], ...]
    noncompact: bool | None = None

    def __post_init__(self):
        _validate(self)

    def order(self, a: str, b: str) -> int | None:
        return self.edges.get(frozenset((a, b)))

    def vertex_orders(self, vertex: tuple[str, ...]) -> tuple[int, ...]:
        k = len(vertex)
        return tuple(self.edges[frozenset((vertex[i], vertex[(i + 1) % k]))] for i in range(k))


def _validate(s: PolyhedronScheme) -> None:
    names = set(s.facets)
    if len(names) != len(s.facets):
        dup = [n for n, c in Counter(s.facets).items() if c > 1]
        raise PolyhedronError(f"facets: duplicate names {dup}")
    for pair, m in s.edges.items():
        for x in pair:
            if x not in names:
                raise PolyhedronError(f"edges: unknown facet {x!r}")
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise PolyhedronError(f"edges: order of {sorted(pair)} must be an integer >= 2, got {m!r}")
    endpoints: Counter = Counter()
    for vx in s.vertices:
        if len(vx) not in (3, 4):
            raise PolyhedronError(f"vertices: {list(vx)} has {len(vx)} facets; only 3 or 4 are allowed")
        for x in vx:
            if x not in names:
                raise PolyhedronError(f"vertices: unknown facet {x!r} in {list(vx)}")
        if len(set(vx)) != len(vx):
            raise PolyhedronError(f"vertices: repeated facet in {list(vx)}")
        k = len(vx)
        for i in range(k):
            pair = frozenset((vx[i], vx[(i + 1) % k]))
            if pair not in s.edges:
                raise PolyhedronError(
                    f"vertices: consecutive facets {vx[i]!r}, {vx[(i + 1) % k]!r} of {list(vx)} share no edge"
                )
            endpoints[pair] += 1
    for pair in s.edges:
        if endpoints[pair] != 2:
            raise PolyhedronError(
                f"edges: edge {sorted(pair)} has {endpoints[pair]} endpoints among the vertices, expected 2"
            )


def parse_polyhedron(document) -> PolyhedronScheme:
    """Build a validated scheme from a JSON document (text or parsed dict)."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise PolyhedronError(f"malformed document: {exc}") from None
    if not isinstance(document, dict):
        raise PolyhedronError("document must be a JSON object")
    for key in ("facets", "edges", "vertices"):
        if key not in document:
            raise PolyhedronError(f"{key}: missing field")
    facets = document["facets"]
    if not isinstance(facets, list) or not all(isinstance(x, str) for x in facets):
        raise PolyhedronError("facets: expected a list of names")
    edges: dict[frozenset, int] = {}
    for k, item in enumerate(document["edges"]):
        if not isinstance(item, dict) or "facets" not in item or "m" not in item:
            raise PolyhedronError(f"edges[{k}]: expected {{'facets': [a, b], 'm': order}}")
        pair = item["facets"]
        if not isinstance(pair, list) or len(pair) != 2 or pair[0] == pair[1]:
            raise PolyhedronError(f"edges[{k}].facets: need two distinct facet names")
        key = frozenset(pair)
        if key in edges:
            raise PolyhedronError(f"edges[{k}]: duplicate edge {sorted(pair)}")
        edges[key] = item["m"]
    vertices = document["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, list) for v in vertices):
        raise PolyhedronError("vertices: expected a list of facet lists")
    noncompact = document.get("noncompact")
    if noncompact is not None and not isinstance(noncompact, bool):
        raise PolyhedronError("noncompact: expected true or false")
    return PolyhedronScheme(tuple(facets), edges, tuple(tuple(v) for v in vertices), noncompact)


def load_polyhedron(path) -> PolyhedronScheme:
    with open(path, encoding="utf-8") as fh:
        return parse_polyhedron(fh.read())


# --- vertex types -------------------------------------------------------------

CUSP_2222 = "Cusp2222"
EUCLIDEAN_CUSP = "EuclideanCusp"
FINITE_VERTEX = "FiniteVertex"


@dataclass(frozen=True)
class VertexType:
    kind: str
    orders: tuple[int, ...]

    @property
    def is_cusp(self) -> bool:
        return self.kind != FINITE_VERTEX


def classify_orders(orders) -> VertexType:
    """Vertex type from the cyclic edge orders around it."""
    orders = tuple(orders)
    if len(orders) == 4:
        if all(a == 2 for a in orders):
            return VertexType(CUSP_2222, (2, 2, 2, 2))
        raise VertexTypeError(f"4-valent vertex with orders {orders}: all four must be 2")
    if len(orders) != 3:
        raise VertexTypeError(f"{len(orders)} facets at a vertex; at most 4 are possible")
    a = tuple(sorted(orders))
    total = sum(Fraction(1, x) for x in a)
    if total > 1:
        return VertexType(FINITE_VERTEX, a)
    if total == 1:
        return VertexType(EUCLIDEAN_CUSP, a)
    raise VertexTypeError(f"vertex of type {a}: 1/{a[0]}+1/{a[1]}+1/{a[2]} = {total} < 1")


def vertex_type(scheme: PolyhedronScheme, vertex) -> VertexType:
    vertex = tuple(vertex)
    if vertex not in scheme.vertices:
        # accept any rotation/reflection of a listed vertex
        k = len(vertex)
        variants = {vertex[i:] + vertex[:i] for i in range(k)}
        variants |= {tuple(reversed(v)) for v in variants}
        if not variants & set(scheme.vertices):
            raise PolyhedronError(f"{list(vertex)} is not a vertex of the scheme")
    try:
        return classify_orders(scheme.vertex_orders(vertex))
    except VertexTypeError as exc:
        raise VertexTypeError(f"vertex {list(vertex)}: {exc}") from None


# --- counts ------------------------------------------------------------------

@dataclass(frozen=True)
class CountVector:
    """The tallies f, e, v, e_m, v_{2,2,2,2}, v_{a1,a2,a3} of a polyhedron."""

    f: int
    e: int
    v: int
    e_m: Mapping[int, int] = field(default_factory=dict)
    v2222: int = 0
    v_abc: Mapping[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        # canonical storage: drop zero entries, sort keys
        object.__setattr__(self, "e_m", {m: c for m, c in sorted(self.e_m.items()) if c})
        object.__setattr__(
            self, "v_abc", {tuple(sorted(k)): c for k, c in sorted(self.v_abc.items()) if c}
        )

    def em(self, m: int) -> int:
        return self.e_m.get(m, 0)

    def vt(self, a: int, b: int, c: int) -> int:
        return self.v_abc.get(tuple(sorted((a, b, c))), 0)

    def cusps(self) -> int:
        return self.v2222 + sum(c for k, c in self.v_abc.items() if sum(Fraction(1, x) for x in k) == 1)

    def symbols(self) -> dict[str, int]:
        """Flat name -> value map (``f``, ``e3``, ``v2222``, ``v236``, ...)."""
        out = {"f": self.f, "e": self.e, "v": self.v, "v2222": self.v2222}
        for m, c in self.e_m.items():
            out[f"e{m}"] = c
        for k, c in self.v_abc.items():
            out["v" + "".join(str(x) for x in k) if max(k) < 10 else "v" + "_".join(map(str, k))] = c
        return out

    def replace(self, **changes) -> CountVector:
        data = dict(f=self.f, e=self.e, v=self.v, e_m=dict(self.e_m), v2222=self.v2222, v_abc=dict(self.v_abc))
        data.update(changes)
        return CountVector(**data)

    def to_json(self) -> dict:
        return {
            "f": self.f,
            "e": self.e,
            "v": self.v,
            "e_m": {str(m): c for m, c in self.e_m.items()},
            "v2222": self.v2222,
            "v_abc": {",".join(map(str, k)): c for k, c in self.v_abc.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> CountVector:
        return cls(
            f=data["f"],
            e=data["e"],
            v=data["v"],
            e_m={int(m): c for m, c in data.get("e_m", {}).items()},
            v2222=data.get("v2222", 0),
            v_abc={tuple(int(x) for x in k.split(",")): c for k, c in data.get("v_abc", {}).items()},
        )


def count_vector(scheme: PolyhedronScheme) -> CountVector:
    e_m = Counter(scheme.edges.values())
    v2222 = 0
    v_abc: Counter = Counter()
    for vx in scheme.vertices:
        vt = vertex_type(scheme, vx)
        if vt.kind == CUSP_2222:
            v2222 += 1
        else:
            v_abc[vt.orders] += 1
    return CountVector(
        f=len(scheme.facets),
        e=len(scheme.edges),
        v=len(scheme.vertices),
        e_m=dict(e_m),
        v2222=v2222,
        v_abc=dict(v_abc),
    )


# --- Euler-type identities ----------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    label: str
    statement: str
    lhs: int
    rhs: int
    relation: str = "=="

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs if self.relation == "==" else self.lhs >= self.rhs

    def to_json(self) -> dict:
        return {
            "identity": self.label,
            "statement": self.statement,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relation": self.relation,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class Lemma2Report:
    checks: tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.label for c in self.checks if not c.passed]

    def __getitem__(self, label: str) -> IdentityCheck:
        for c in self.checks:
            if c.label == label:
                return c
        raise KeyError(label)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_json() for c in self.checks]}


def check_lemma2(counts: CountVector, noncompact: bool = True) -> Lemma2Report:
    """Evaluate the Euler, partition and edge double-count identities.

    With ``noncompact`` the inequality demanding at least one cusp is added.
    """
    c = counts
    vt = c.vt
    ns = sorted({m for m in c.e_m if m >= 7} | {max(k) for k in c.v_abc if k[:2] == (2, 2) and k[2] >= 7})
    sum_22n_ge3 = sum(cnt for k, cnt in c.v_abc.items() if k[:2] == (2, 2) and k[2] >= 3)
    checks = [
        IdentityCheck("euler", "v - e + f = 2", c.v - c.e + c.f, 2),
        IdentityCheck("vertex_partition", "v = v2222 + sum of all v_{a1,a2,a3}", c.v, c.v2222 + sum(c.v_abc.values())),
        IdentityCheck("edge_partition", "e = sum_n e_n", c.e, sum(c.e_m.values())),
        IdentityCheck(
            "e2_double_count",
            "2e2 = 4v2222 + 3v222 + 2sum_{n>=3} v22n + v233 + v234 + v235 + v236 + v244",
            2 * c.em(2),
            4 * c.v2222 + 3 * vt(2, 2, 2) + 2 * sum_22n_ge3
            + vt(2, 3, 3) + vt(2, 3, 4) + vt(2, 3, 5) + vt(2, 3, 6) + vt(2, 4, 4),
        ),
        IdentityCheck(
            "e3_double_count",
            "2e3 = 3v333 + 2v233 + v223 + v234 + v235 + v236",
            2 * c.em(3),
            3 * vt(3, 3, 3) + 2 * vt(2, 3, 3) + vt(2, 2, 3) + vt(2, 3, 4) + vt(2, 3, 5) + vt(2, 3, 6),
        ),
        IdentityCheck("e4_double_count", "2e4 = 2v244 + v224 + v234", 2 * c.em(4), 2 * vt(2, 4, 4) + vt(2, 2, 4) + vt(2, 3, 4)),
        IdentityCheck("e5_double_count", "2e5 = v225 + v235", 2 * c.em(5), vt(2, 2, 5) + vt(2, 3, 5)),
        IdentityCheck("e6_double_count", "2e6 = v226 + v236", 2 * c.em(6), vt(2, 2, 6) + vt(2, 3, 6)),
    ]
    for n in ns:
        checks.append(IdentityCheck(f"e{n}_double_count", f"2e{n} = v22{n}", 2 * c.em(n), vt(2, 2, n)))
    if noncompact:
        checks.append(
            IdentityCheck(
                "cusp_present",
                "v2222 + v236 + v244 + v333 >= 1",
                c.v2222 + vt(2, 3, 6) + vt(2, 4, 4) + vt(3, 3, 3),
                1,
                ">=",
            )
        )
    return Lemma2Report(tuple(checks))


def to_coxeter_matrix(scheme: PolyhedronScheme) -> CoxeterMatrix:
    """One reflection per facet; adjacent facets get their edge order, others infinity."""
    idx = {name: i for i, name in enumerate(scheme.facets)}
    n = len(scheme.facets)
    rows = [[1 if i == j else INF for j in range(n)] for i in range(n)]
    for pair, m in scheme.edges.items():
        a, b = sorted(idx[x] for x in pair)
        rows[a][b] = rows[b][a] = m
    return CoxeterMatrix(tuple(tuple(r) for r in rows))
