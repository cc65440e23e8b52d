import itertools
import random

import pytest

from coxgrow.coxeter import (
    INF,
    CoxeterMatrix,
    CoxeterMatrixError,
    FiniteTypeLabel,
    classify_component,
    classify_subset,
    exponents,
    finite_parabolic_subsets,
    group_order,
    parse_coxeter_matrix,
    parse_label,
    solomon_series,
    standard_matrix,
    steinberg_growth,
)
from coxgrow.polyarith import ONE, IntPolynomial, RationalFunction, bracket_product, taylor_coefficients
from coxgrow.polyhedron import to_coxeter_matrix

from conftest import VALID_FIXTURES, load
from oracles import gram_positive_definite, infinite_dihedral_counts, tits_word_counts

L = parse_label


# --- parsing ----------------------------------------------------------------------------

def test_parse_infinite_dihedral():
    for inf in ("inf", 0):
        m = parse_coxeter_matrix({"rank": 2, "orders": [[inf]]})
        assert m.m(0, 1) is INF


def test_parse_b3_both_layouts():
    upper = parse_coxeter_matrix({"rank": 3, "orders": [[3, 2], [4]]})
    full = parse_coxeter_matrix('{"rank": 3, "orders": [[1,3,2],[3,1,4],[2,4,1]]}')
    assert upper == full
    assert classify_subset(full, (0, 1, 2)) == (L("B3"),)


@pytest.mark.parametrize(
    "doc",
    [
        {"rank": 2, "orders": [[1]]},
        {"rank": 2, "orders": [[1, 3], [4, 1]]},
        {"rank": 2, "orders": [[2, 3], [3, 1]]},
        {"rank": 2},
        "{not json",
        {"rank": 2, "orders": [["x"]]},
    ],
)
def test_parse_rejects(doc):
    with pytest.raises(CoxeterMatrixError):
        parse_coxeter_matrix(doc)


# --- labels and classification ---------------------------------------------------------------

def test_label_canonicalisation():
    assert L("I2(3)") == L("A2")
    assert L("I2(4)") == L("B2")
    assert str(L("I2_7")) == "I2(7)"
    with pytest.raises(ValueError):
        FiniteTypeLabel("D", 3)


def test_classify_examples():
    one = CoxeterMatrix.from_pairs(1, {})
    assert classify_component(one, (0,)) == L("A1")
    m6 = CoxeterMatrix.from_pairs(2, {(0, 1): 6})
    assert classify_component(m6, (0, 1)) == L("I2(6)")
    tri = CoxeterMatrix.from_pairs(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3})
    assert classify_component(tri, (0, 1, 2)) is None
    assert not gram_positive_definite(tri)


def test_classify_rejects_disconnected():
    m = CoxeterMatrix.from_pairs(3, {(0, 1): 3})
    with pytest.raises(ValueError):
        classify_component(m, (0, 2))


@pytest.mark.parametrize(
    "text", ["A1", "A4", "B2", "B5", "D4", "D6", "E6", "E7", "E8", "F4", "H3", "H4", "I2(5)", "I2(9)"]
)
def test_standard_matrix_classifies_back(text):
    lab = L(text)
    m = standard_matrix(lab)
    assert classify_subset(m, tuple(range(m.rank))) == (lab,)
    assert gram_positive_definite(m)


def _connected(n, pairs):
    adj = {i: set() for i in range(n)}
    for (i, j), m in pairs.items():
        if m != 2:
            adj[i].add(j)
            adj[j].add(i)
    seen, stack = {0}, [0]
    while stack:
        for k in adj[stack.pop()] - seen:
            seen.add(k)
            stack.append(k)
    return len(seen) == n


LABELS = (2, 3, 4, 5, 6, INF)


def _check_against_gram(n, pairs):
    m = CoxeterMatrix.from_pairs(n, pairs)
    finite = classify_component(m, tuple(range(n))) is not None
    assert finite == gram_positive_definite(m), pairs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_classification_matches_gram_exhaustive(n):
    keys = list(itertools.combinations(range(n), 2))
    checked = 0
    for values in itertools.product(LABELS, repeat=len(keys)):
        pairs = dict(zip(keys, values))
        if _connected(n, pairs):
            _check_against_gram(n, pairs)
            checked += 1
    assert checked > 0


def test_classification_matches_gram_rank5_sample():
    rng = random.Random(5)
    keys = list(itertools.combinations(range(5), 2))
    checked = 0
    while checked < 4000:
        # bias towards sparse diagrams, where the finite ones live
        pairs = {k: (rng.choice(LABELS[1:]) if rng.random() < 0.3 else 2) for k in keys}
        if _connected(5, pairs):
            _check_against_gram(5, pairs)
            checked += 1
    # every tree-shaped rank-5 diagram with labels 3 and 4
    for edges in itertools.combinations(keys, 4):
        for labels in itertools.product((3, 4), repeat=4):
            pairs = dict(zip(edges, labels))
            if _connected(5, pairs):
                _check_against_gram(5, pairs)


# --- exponents and Solomon ----------------------------------------------------------------------

def test_exponents_examples():
    assert exponents(L("H3")) == (1, 5, 9)
    assert exponents(L("A1")) == (1,)
    assert exponents(L("E8")) == (1, 7, 11, 13, 17, 19, 23, 29)


@pytest.mark.parametrize(
    "text, order",
    [("A3", 24), ("B3", 48), ("D4", 192), ("E6", 51840), ("E7", 2903040), ("E8", 696729600),
     ("F4", 1152), ("H3", 120), ("H4", 14400), ("I2(7)", 14)],
)
def test_group_orders(text, order):
    assert group_order(L(text)) == order
    assert solomon_series([L(text)])(1) == order


def test_solomon_examples():
    assert solomon_series([L("A2")]) == bracket_product([2, 3])
    assert solomon_series([]) == ONE
    assert solomon_series([L("A1"), L("A1")]) == IntPolynomial((1, 2, 1))


def test_solomon_palindromic():
    for text in ("A4", "B3", "D5", "F4", "H3", "E6"):
        c = solomon_series([L(text)]).coeffs
        assert c == c[::-1]


# --- parabolic subsets ----------------------------------------------------------------------------

def test_parabolic_examples():
    inf = CoxeterMatrix.from_pairs(2, {(0, 1): INF})
    assert finite_parabolic_subsets(inf).subsets == [(), (0,), (1,)]
    a2 = standard_matrix(L("A2"))
    assert len(finite_parabolic_subsets(a2)) == 4


def _brute_force_finite_subsets(matrix):
    out = []
    for k in range(matrix.rank + 1):
        for subset in itertools.combinations(range(matrix.rank), k):
            if not subset:
                out.append(subset)
                continue
            sub = CoxeterMatrix(tuple(tuple(matrix.m(i, j) if i != j else 1 for j in subset) for i in subset))
            if gram_positive_definite(sub):
                out.append(subset)
    return sorted(out)


@pytest.mark.parametrize("name", ["octahedron", "cube_compact", "simplex_336", "h23_elongated", "h2356_elongated"])
def test_parabolic_subsets_match_brute_force(name):
    m = to_coxeter_matrix(load(name))
    assert finite_parabolic_subsets(m).subsets == _brute_force_finite_subsets(m)


def test_octahedron_parabolic_count():
    # empty set, 8 facets, 12 adjacent pairs; the facet adjacency graph has no triangles
    assert len(finite_parabolic_subsets(to_coxeter_matrix(load("octahedron")))) == 21


@pytest.mark.parametrize("name", VALID_FIXTURES)
def test_parabolic_catalog_downward_closed(name):
    cat = finite_parabolic_subsets(to_coxeter_matrix(load(name)))
    subsets = set(cat.subsets)
    assert () in subsets
    assert next(e for e in cat if e.subset == ()).growth == ONE
    for s in subsets:
        for k in range(len(s)):
            assert s[:k] + s[k + 1:] in subsets


# --- Steinberg -----------------------------------------------------------------------------------

def test_steinberg_infinite_dihedral():
    g = steinberg_growth(CoxeterMatrix.from_pairs(2, {(0, 1): INF}))
    assert g == RationalFunction(IntPolynomial((1, 1)), IntPolynomial((1, -1)))
    assert taylor_coefficients(g, 7) == infinite_dihedral_counts(6)


def test_steinberg_a2():
    assert steinberg_growth(standard_matrix(L("A2"))) == RationalFunction(bracket_product([2, 3]), ONE)


def test_steinberg_octahedron():
    g = steinberg_growth(to_coxeter_matrix(load("octahedron")))
    assert g == RationalFunction(bracket_product([2, 2, 2]), IntPolynomial((-1, 1)) * IntPolynomial((-1, 4, 5)))


@pytest.mark.parametrize(
    "text", ["A1", "A2", "A3", "A4", "B2", "B3", "D4", "H3", *(f"I2({m})" for m in range(5, 9))]
)
def test_steinberg_equals_solomon_on_finite(text):
    lab = L(text)
    g = steinberg_growth(standard_matrix(lab))
    assert g.den == ONE
    assert g.num == solomon_series([lab])
    assert g.num(1) == group_order(lab)


# word counts from an integral reflection representation, frozen after a BFS run
TITS_COUNTS = {
    "octahedron": [1, 8, 44, 224, 1124, 5624],
    "cube_compact": [1, 6, 18, 38, 66, 102, 146],
    "h2_elongated": [1, 9, 56, 324, 1852, 10564],
    "h23_elongated": [1, 9, 58, 351, 2101, 12553],
    "h23_cube333": [1, 6, 21, 61, 165, 435, 1137],
}


@pytest.mark.parametrize("name", sorted(TITS_COUNTS))
def test_steinberg_series_matches_word_counts(name):
    g = steinberg_growth(to_coxeter_matrix(load(name)))
    assert taylor_coefficients(g, len(TITS_COUNTS[name])) == TITS_COUNTS[name]


def test_tits_oracle_reproduces_frozen_counts():
    # a smaller live replay keeps the frozen table honest
    for name in ("octahedron", "cube_compact"):
        m = to_coxeter_matrix(load(name))
        assert tits_word_counts(m, 4) == TITS_COUNTS[name][:5]


@pytest.mark.parametrize("name", VALID_FIXTURES)
def test_series_nonnegative(name):
    coeffs = taylor_coefficients(steinberg_growth(to_coxeter_matrix(load(name))), 30)
    assert all(c >= 0 for c in coeffs)
