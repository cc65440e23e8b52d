"""Regenerate the bundled polyhedron fixtures in src/coxgrow/fixtures/.

The fixtures are combinatorial schemes built to satisfy the polyhedral count
identities; none is claimed to be geometrically realisable except the ideal
right-angled octahedron and the (3,3,6) simplex.
"""

import itertools
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "coxgrow" / "fixtures"


def doc(facets, edges, vertices, noncompact, note):
    return {
        "description": note,
        "facets": facets,
        "edges": [{"facets": list(p), "m": m} for p, m in edges],
        "vertices": [list(v) for v in vertices],
        "noncompact": noncompact,
    }


def octahedron():
    signs = list(itertools.product("+-", repeat=3))
    name = lambda s: "F" + "".join(s)
    facets = [name(s) for s in signs]
    edges = []
    for a, b in itertools.combinations(signs, 2):
        if sum(x != y for x, y in zip(a, b)) == 1:
            edges.append(((name(a), name(b)), 2))
    vertices = []
    for axis in range(3):
        for sgn in "+-":
            others = [i for i in range(3) if i != axis]
            ring = [("+", "+"), ("+", "-"), ("-", "-"), ("-", "+")]
            vx = []
            for r in ring:
                s = [None] * 3
                s[axis] = sgn
                s[others[0]], s[others[1]] = r
                vx.append(name(s))
            vertices.append(vx)
    return doc(facets, edges, vertices, True, "ideal right-angled octahedron: 8 facets, six (2,2,2,2) cusps")


def elongated_pyramid(b, note, noncompact=True):
    """Square pyramid on a cube: apex and the four middle vertices are 4-valent
    (all right angles); bottom edges B-S_i carry the orders b_1..b_4."""
    T = [f"T{i}" for i in range(1, 5)]
    S = [f"S{i}" for i in range(1, 5)]
    facets = ["B"] + S + T
    edges = []
    for i in range(4):
        j = (i + 1) % 4
        edges.append(((T[i], T[j]), 2))
        edges.append(((T[i], S[i]), 2))
        edges.append(((S[i], S[j]), 2))
        edges.append((("B", S[i]), b[i]))
    vertices = [T[:]]
    for i in range(4):
        j = (i + 1) % 4
        vertices.append([T[i], T[j], S[j], S[i]])
        vertices.append(["B", S[i], S[j]])
    return doc(facets, edges, vertices, noncompact, note)


def cube(orders, note, noncompact):
    facets = ["U", "D", "N", "E", "S", "W"]
    vertices = [
        ["U", "N", "E"], ["U", "E", "S"], ["U", "S", "W"], ["U", "W", "N"],
        ["D", "E", "N"], ["D", "S", "E"], ["D", "W", "S"], ["D", "N", "W"],
    ]
    pairs = set()
    for v in vertices:
        for i in range(3):
            pairs.add(frozenset((v[i], v[(i + 1) % 3])))
    edges = []
    for p in sorted(pairs, key=sorted):
        a, b = sorted(p, key=facets.index)
        edges.append(((a, b), orders.get(a + b, orders.get(b + a, 2))))
    return doc(facets, edges, vertices, noncompact, note)


def simplex_336():
    facets = ["F1", "F2", "F3", "F4"]
    m = {("F1", "F2"): 3, ("F2", "F3"): 3, ("F3", "F4"): 6}
    edges = [((a, b), m.get((a, b), 2)) for a, b in itertools.combinations(facets, 2)]
    vertices = [[x for x in facets if x != omit] for omit in facets]
    return doc(facets, edges, vertices, True, "Coxeter simplex [3,3,6]: one (2,3,6) cusp")


FIXTURES = {
    "octahedron": octahedron(),
    "h2_elongated": elongated_pyramid((2, 2, 2, 2), "all right angles; five (2,2,2,2) cusps"),
    "h23_elongated": elongated_pyramid((3, 3, 2, 2), "pi/2 and pi/3 angles; (2,2,2,2) cusps"),
    "h23_cube333": cube({"UN": 3, "UE": 3, "NE": 3}, "cube with a single (3,3,3) cusp", True),
    "h236_elongated": elongated_pyramid((3, 6, 2, 2), "pi/2, pi/3, pi/6 angles; one (2,3,6) cusp"),
    "h25_elongated": elongated_pyramid((5, 2, 2, 2), "pi/2 angles and a single pi/5 edge"),
    "h2356_elongated": elongated_pyramid((5, 3, 2, 2), "one pi/5 and one pi/3 edge"),
    "h23456_elongated": elongated_pyramid((4, 3, 5, 2), "pi/3, pi/4, pi/5 edges"),
    "h23456_244": elongated_pyramid((4, 4, 2, 2), "two pi/4 edges meeting at a (2,4,4) cusp"),
    "simplex_336": simplex_336(),
    "m7_elongated": elongated_pyramid((7, 2, 2, 2), "a pi/7 edge: outside the m <= 6 families"),
    "bad_237": elongated_pyramid((3, 7, 2, 2), "contains a (2,3,7) vertex, not a Coxeter polyhedron"),
    "cube_compact": cube({}, "right-angled cube, no cusps (compact control)", False),
}


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    for name, d in FIXTURES.items():
        (OUT / f"{name}.json").write_text(json.dumps(d, indent=1) + "\n")
        print("wrote", name)
