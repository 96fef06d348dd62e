"""Explicit circulant matrices and the combinatorial deciders.

PQ equivalence (B = PAQ), permutation similarity (M2 = P M1 P^-1) and
PP^-1 equivalence are all decided as isomorphism of small weighted graphs:
colour refinement on the disjoint union of both graphs, then
individualisation of one vertex at a time with backtracking.  Every positive
answer is re-checked by exact matrix multiplication.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .residue import ResidueSet
from .verdict import EquivalenceVerdict

DEFAULT_BUDGET = 10**7


def default_budget() -> int:
    env = os.environ.get("CIRCEQ_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


class _Matrix:
    def __init__(self, data) -> None:
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"need a square matrix, got shape {arr.shape}")
        arr.setflags(write=False)
        self.data = arr

    @property
    def order(self) -> int:
        return self.data.shape[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Matrix) and np.array_equal(self.data, other.data)

    def __hash__(self) -> int:
        return hash(self.data.tobytes())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.data.tolist()})"

    def to_json_obj(self) -> list[list[int]]:
        return self.data.tolist()

    def is_circulant(self) -> bool:
        n = self.order
        top = self.data[0]
        return all(np.array_equal(self.data[i], np.roll(top, i)) for i in range(1, n))

    @property
    def T(self):
        return type(self)(self.data.T)


class BinaryMatrix(_Matrix):
    def __init__(self, data) -> None:
        super().__init__(data)
        if not np.isin(self.data, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")


class IntMatrix(_Matrix):
    pass


@dataclass(frozen=True)
class Permutation:
    """Bijection i -> images[i]; as a matrix, P e_i = e_{images[i]}."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images must be a bijection on 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def order(self) -> int:
        return len(self.images)

    def matrix(self) -> np.ndarray:
        n = self.order
        P = np.zeros((n, n), dtype=np.int64)
        P[list(self.images), list(range(n))] = 1
        return P

    def inverse(self) -> "Permutation":
        inv = [0] * self.order
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def to_json_obj(self) -> list[int]:
        return list(self.images)


def circulant_from(S: ResidueSet) -> BinaryMatrix:
    """Entry (i, j) is 1 iff j - i mod n lies in S."""
    n = S.modulus
    top = np.zeros(n, dtype=np.int64)
    top[list(S.elements)] = 1
    return BinaryMatrix([np.roll(top, i) for i in range(n)])


def autocorrelation_matrix(A: _Matrix) -> IntMatrix:
    return IntMatrix(A.data @ A.data.T)


class BudgetExceeded(Exception):
    pass


class _Graph:
    """Directed weighted graph on 0..n-1 with vertex colours."""

    def __init__(self, colors: Sequence[int], arcs: Iterable[tuple[int, int, int]], symmetric: bool) -> None:
        self.n = len(colors)
        self.colors = list(colors)
        self.symmetric = symmetric
        self.out: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        self.inn: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        self.weight: dict[tuple[int, int], int] = {}
        for u, v, w in arcs:
            self.out[u].append((v, w))
            self.inn[v].append((u, w))
            self.weight[(u, v)] = w

    def signatures(self, col: list[int]) -> list[tuple]:
        out, inn = self.out, self.inn
        if self.symmetric:
            return [(col[v], tuple(sorted((w, col[u]) for u, w in out[v]))) for v in range(self.n)]
        return [
            (col[v], tuple(sorted((w, col[u]) for u, w in out[v])), tuple(sorted((w, col[u]) for u, w in inn[v])))
            for v in range(self.n)
        ]


def _refine(G: _Graph, H: _Graph, cG: list[int], cH: list[int]):
    """Joint colour refinement; None when the colour class sizes disagree."""
    ncol = len(set(cG))
    while True:
        sG = G.signatures(cG)
        sH = H.signatures(cH)
        names = {s: i for i, s in enumerate(sorted(set(sG) | set(sH)))}
        cG = [names[s] for s in sG]
        cH = [names[s] for s in sH]
        if Counter(cG) != Counter(cH):
            return None
        if len(names) == ncol:
            return cG, cH
        ncol = len(names)


class _Search:
    def __init__(self, G: _Graph, H: _Graph, budget: int, transitive: frozenset[int] = frozenset()) -> None:
        self.G, self.H = G, H
        self.budget = budget
        self.nodes = 0
        # vertices of H forming a single Aut(H)-orbit; the first individualised
        # vertex may then be sent to one fixed member of it
        self.transitive = transitive

    def run(self) -> list[int] | None:
        if self.G.n != self.H.n or len(self.G.weight) != len(self.H.weight):
            return None
        if Counter(self.G.colors) != Counter(self.H.colors):
            return None
        return self._search(list(self.G.colors), list(self.H.colors), first=True)

    def _search(self, cG: list[int], cH: list[int], first: bool) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded
        refined = _refine(self.G, self.H, cG, cH)
        if refined is None:
            return None
        cG, cH = refined
        sizes = Counter(cG)
        open_cells = [c for c, s in sizes.items() if s > 1]
        if not open_cells:
            pos = {c: w for w, c in enumerate(cH)}
            f = [pos[c] for c in cG]
            return f if self._is_iso(f) else None
        cell = min(open_cells, key=lambda c: (sizes[c], c))
        v = min(i for i, c in enumerate(cG) if c == cell)
        cands = [w for w, c in enumerate(cH) if c == cell]
        if first and self.transitive and set(cands) <= self.transitive:
            cands = cands[:1]
        mark = -1
        for w in cands:
            nG = list(cG)
            nH = list(cH)
            nG[v] = mark
            nH[w] = mark
            f = self._search(nG, nH, first=False)
            if f is not None:
                return f
        return None

    def _is_iso(self, f: list[int]) -> bool:
        G, H = self.G, self.H
        if any(G.colors[v] != H.colors[f[v]] for v in range(G.n)):
            return False
        hw = H.weight
        return all(hw.get((f[u], f[v])) == w for (u, v), w in G.weight.items())


def _decide(relation: str, G: _Graph, H: _Graph, budget: int | None, transitive: frozenset[int], make_witness, check):
    search = _Search(G, H, default_budget() if budget is None else budget, transitive)
    try:
        f = search.run()
    except BudgetExceeded:
        return EquivalenceVerdict.unknown(relation, search.nodes)
    if f is None:
        return EquivalenceVerdict.no(relation, search.nodes)
    return EquivalenceVerdict.yes(relation, make_witness(f), check, search.nodes)


def _bipartite(M: np.ndarray) -> _Graph:
    n = M.shape[0]
    arcs = [(i, n + j, 1) for i, j in zip(*np.nonzero(M))]
    return _Graph([0] * n + [1] * n, arcs, symmetric=False)


def _weighted(M: np.ndarray, symmetric: bool) -> _Graph:
    n = M.shape[0]
    arcs = [(int(i), int(j), int(M[i, j])) for i, j in zip(*np.nonzero(M)) if i != j]
    return _Graph([int(M[i, i]) for i in range(n)], arcs, symmetric)


def _check_orders(A: _Matrix, B: _Matrix) -> None:
    if A.order != B.order:
        raise ValueError(f"order mismatch: {A.order} vs {B.order}")


def _pq_once(A: _Matrix, B: _Matrix, budget: int | None) -> EquivalenceVerdict:
    n = A.order
    rows = frozenset(range(n)) if B.is_circulant() else frozenset()

    def witness(f: list[int]) -> tuple[Permutation, Permutation]:
        P = Permutation(tuple(f[:n]))
        col = Permutation(tuple(f[v] - n for v in range(n, 2 * n)))
        return P, col.inverse()

    def check(w) -> bool:
        P, Q = w
        return np.array_equal(P.matrix() @ A.data @ Q.matrix(), B.data)

    return _decide("pq", _bipartite(A.data), _bipartite(B.data), budget, rows, witness, check)


def pq_equivalent(A: BinaryMatrix, B: BinaryMatrix, budget: int | None = None, allow_transpose: bool = False) -> EquivalenceVerdict:
    """Decide B = P A Q for permutation matrices P, Q; witness is (P, Q).

    With ``allow_transpose`` the pair also counts as equivalent when
    B^T = P A Q; the witness then refers to B^T.
    """
    _check_orders(A, B)
    verdict = _pq_once(A, B, budget)
    if allow_transpose and not verdict.equivalent:
        alt = _pq_once(A, B.T, budget)
        if alt.equivalent or verdict.status == alt.status:
            return alt
        return EquivalenceVerdict.unknown("pq", verdict.nodes + alt.nodes)
    return verdict


def _conjugacy(relation: str, M1: _Matrix, M2: _Matrix, budget: int | None, symmetric: bool) -> EquivalenceVerdict:
    _check_orders(M1, M2)
    n = M1.order
    allv = frozenset(range(n)) if M2.is_circulant() else frozenset()

    def check(P: Permutation) -> bool:
        Pm = P.matrix()
        return np.array_equal(Pm @ M1.data @ Pm.T, M2.data)

    G = _weighted(M1.data, symmetric)
    H = _weighted(M2.data, symmetric)
    return _decide(relation, G, H, budget, allv, lambda f: Permutation(tuple(f)), check)


def perm_similar(M1: IntMatrix, M2: IntMatrix, budget: int | None = None) -> EquivalenceVerdict:
    """Decide M2 = P M1 P^-1 for symmetric integer matrices."""
    for M in (M1, M2):
        if not np.array_equal(M.data, M.data.T):
            raise ValueError("perm_similar expects symmetric matrices")
    return _conjugacy("permsim", M1, M2, budget, symmetric=True)


def ppinv_equivalent(A: BinaryMatrix, B: BinaryMatrix, budget: int | None = None) -> EquivalenceVerdict:
    """Decide B = P A P^-1 (isomorphism of the directed graphs)."""
    return _conjugacy("ppinv", A, B, budget, symmetric=False)


def dot_profile_invariant(A: _Matrix, targets: Iterable[int]) -> tuple[tuple[int, ...], ...]:
    """Row-overlap profile, invariant under row and column permutations.

    For each row r: add up the rows whose dot product with r lies in
    ``targets`` (r itself included when its own weight qualifies), multiply
    componentwise by r, and keep the sorted entries.  The result is the
    sorted multiset of those per-row multisets.
    """
    M = A.data
    targets = set(targets)
    dots = M @ M.T
    profiles = []
    for r in range(M.shape[0]):
        chosen = [j for j in range(M.shape[0]) if int(dots[r, j]) in targets]
        total = M[chosen].sum(axis=0) if chosen else np.zeros(M.shape[1], dtype=np.int64)
        profiles.append(tuple(sorted(int(x) for x in M[r] * total)))
    return tuple(sorted(profiles))


def dot_histogram(A: _Matrix, row: int = 0) -> Counter:
    """Dot products of one row against every row (itself included)."""
    M = A.data
    return Counter(int(x) for x in M @ M[row])
