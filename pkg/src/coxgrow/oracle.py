"""Breadth-first word-length counts in concrete models of small Coxeter groups.

This is the independent check on Solomon's formula: the groups are built as
(signed) permutation groups, never from exponent tables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .coxeter import CoxeterMatrix, FiniteTypeLabel, standard_matrix
from .polyarith import IntPolynomial

DEFAULT_ELEMENT_CAP = 200_000

Perm = tuple[int, ...]


class UnsupportedModelError(ValueError):
    pass


class ElementCapExceeded(RuntimeError):
    pass


def _compose(p: Perm, q: Perm) -> Perm:
    """Signed permutations in one-line notation on symbols 1..n: (p*q)(i) = p(q(i))."""
    out = []
    for x in q:
        y = p[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def _element_order(p: Perm) -> int:
    ident = tuple(range(1, len(p) + 1))
    k, cur = 1, p
    while cur != ident:
        cur = _compose(p, cur)
        k += 1
    return k


def _transposition(n: int, i: int) -> Perm:
    img = list(range(1, n + 1))
    img[i], img[i + 1] = img[i + 1], img[i]
    return tuple(img)


@dataclass(frozen=True)
class ConcreteGroupModel:
    label: FiniteTypeLabel
    generators: tuple[Perm, ...]
    matrix: CoxeterMatrix

    @property
    def degree(self) -> int:
        return len(self.generators[0])

    def identity(self) -> Perm:
        return tuple(range(1, self.degree + 1))


def build_model(label: FiniteTypeLabel) -> ConcreteGroupModel:
    """Faithful model with generators wired like :func:`standard_matrix`."""
    f, n = label.family, label.parameter
    if f == "A":
        if n > 5:
            raise UnsupportedModelError("A_n models are limited to n <= 5")
        gens = [_transposition(n + 1, i) for i in range(n)]
    elif f == "B":
        if n > 4:
            raise UnsupportedModelError("B_n models are limited to n <= 4")
        gens = [_transposition(n, i) for i in range(n - 1)]
        flip = list(range(1, n + 1))
        flip[-1] = -n
        gens.append(tuple(flip))
    elif f == "D":
        if n != 4:
            raise UnsupportedModelError("only D4 has a model")
        gens = [_transposition(n, i) for i in range(n - 1)]
        # x_{n-1} -> -x_n, x_n -> -x_{n-1}; commutes with the last transposition
        last = list(range(1, n + 1))
        last[n - 2], last[n - 1] = -n, -(n - 1)
        gens.append(tuple(last))
    elif f == "I2":
        m = n
        if m > 12:
            raise UnsupportedModelError("I2(m) models are limited to m <= 12")
        gens = [_dihedral_reflection(m, 0), _dihedral_reflection(m, 1)]
    else:
        raise UnsupportedModelError(
            f"no permutation model for {label}; exceptional types are checked by order only"
        )
    matrix = standard_matrix(label)
    gens = tuple(gens)
    _verify_orders(gens, matrix, label)
    return ConcreteGroupModel(label, gens, matrix)


def _dihedral_reflection(m: int, shift: int) -> Perm:
    # reflection of the m-gon with vertices 0..m-1: k -> shift - k (mod m), stored 1-based
    return tuple(((shift - k) % m) + 1 for k in range(m))


def _verify_orders(gens, matrix: CoxeterMatrix, label) -> None:
    for i, g in enumerate(gens):
        if _element_order(g) != 2:
            raise AssertionError(f"{label}: generator {i} is not an involution")
        for j in range(i + 1, len(gens)):
            got = _element_order(_compose(g, gens[j]))
            if got != matrix.m(i, j):
                raise AssertionError(f"{label}: (s{i} s{j}) has order {got}, expected {matrix.m(i, j)}")


def bfs_growth(model: ConcreteGroupModel, cap: int = DEFAULT_ELEMENT_CAP) -> IntPolynomial:
    """Count elements by Cayley-graph distance from the identity."""
    start = model.identity()
    dist = {start: 0}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        d = dist[g]
        for s in model.generators:
            h = _compose(g, s)
            if h not in dist:
                if len(dist) >= cap:
                    raise ElementCapExceeded(f"more than {cap} elements; model is too large or infinite")
                dist[h] = d + 1
                queue.append(h)
    counts = [0] * (max(dist.values()) + 1)
    for d in dist.values():
        counts[d] += 1
    return IntPolynomial(counts)
