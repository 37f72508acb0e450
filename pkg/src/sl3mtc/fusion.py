"""Fusion rules of C(sl3, k) and the lattice of fusion subcategories.

Products are computed by Kac-Walton folding: every weight mu of the diagram of
gamma is shifted by lambda, folded into the alcove with the rho-shifted affine
action, and contributes sign * mult(mu) to the folded target.
"""

from __future__ import annotations

import threading
from functools import lru_cache

import numpy as np

from .alcove import (
    THETA,
    ZERO,
    Weight,
    affine_fold,
    alcove_weights,
    check_level,
    weight_diagram,
)

DENSE_LIMIT = 12


def dual(w) -> Weight:
    return Weight(w[1], w[0])


def _require_alcove(k: int, *ws) -> None:
    for w in ws:
        if not Weight(*w).is_dominant(k):
            raise ValueError("weight outside alcove")


def fusion_product(lam, gamma, k: int) -> dict[Weight, int]:
    """Decomposition of lam (x) gamma as {summand: multiplicity}."""
    check_level(k)
    _require_alcove(k, lam, gamma)
    return dict(_fusion_product(Weight(*lam), Weight(*gamma), k))


@lru_cache(maxsize=65536)
def _fusion_product(lam: Weight, gamma: Weight, k: int) -> tuple[tuple[Weight, int], ...]:
    # fold the smaller diagram; the product is commutative
    if (gamma.m1 + gamma.m2) > (lam.m1 + lam.m2):
        lam, gamma = gamma, lam
    acc: dict[Weight, int] = {}
    for mu, mult in weight_diagram(gamma).items():
        res = affine_fold(lam + mu, k)
        if res.target is not None:
            acc[res.target] = acc.get(res.target, 0) + res.sign * mult
    out = []
    for w in sorted(acc):
        n = acc[w]
        if n < 0:
            raise ArithmeticError(f"negative fusion coefficient at {w}")
        if n:
            out.append((w, n))
    return tuple(out)


def fusion_coeff(lam, gamma, eta, k: int) -> int:
    _require_alcove(k, lam, gamma, eta)
    return fusion_product(lam, gamma, k).get(Weight(*eta), 0)


def corner_tensor(corner, lam, k: int) -> Weight:
    """Closed-form product of a corner weight with lam."""
    _require_alcove(k, lam)
    m1, m2 = lam
    if tuple(corner) == (0, k):
        return Weight(m2, k - m1 - m2)
    if tuple(corner) == (k, 0):
        return Weight(k - m1 - m2, m1)
    raise ValueError("not a corner weight")


class FusionTable:
    """All fusion coefficients N_{a b}^c at one level.

    Products are computed lazily and cached; ``array`` materialises the dense
    (n, n, n) integer array for levels up to DENSE_LIMIT.
    """

    def __init__(self, k: int):
        check_level(k)
        self.level = k
        self.index = alcove_weights(k)
        self.labels = list(self.index.weights)
        self.unit = ZERO
        self._array = None
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.labels)

    def dual(self, a) -> Weight:
        return dual(a)

    def product(self, a, b) -> dict[Weight, int]:
        return fusion_product(a, b, self.level)

    def coeff(self, a, b, c) -> int:
        return self.product(a, b).get(Weight(*c), 0)

    @property
    def array(self) -> np.ndarray:
        with self._lock:
            if self._array is None:
                if self.level > DENSE_LIMIT:
                    raise ValueError(f"dense table only built for levels <= {DENSE_LIMIT}")
                n = len(self.labels)
                arr = np.zeros((n, n, n), dtype=np.int64)
                for i, a in enumerate(self.labels):
                    for j in range(i, n):
                        b = self.labels[j]
                        for c, mult in self.product(a, b).items():
                            ci = self.index.index(c)
                            arr[i, j, ci] = mult
                            arr[j, i, ci] = mult
                arr.setflags(write=False)
                self._array = arr
            return self._array

    def matrix(self, a) -> np.ndarray:
        """Left multiplication matrix: M[b, c] = N_{a b}^c."""
        if self.level <= DENSE_LIMIT:
            return self.array[self.index.index(a)]
        n = len(self.labels)
        M = np.zeros((n, n), dtype=np.int64)
        for j, b in enumerate(self.labels):
            for c, mult in self.product(a, b).items():
                M[j, self.index.index(c)] = mult
        return M

    def items(self):
        """Nonzero coefficients as (a, b, c, n) in label order."""
        for a in self.labels:
            for b in self.labels:
                for c, n in self.product(a, b).items():
                    yield a, b, c, n


def _sparse_axioms(table: FusionTable, samples: int, seed: int) -> dict[str, bool]:
    labels = table.labels
    rng = np.random.default_rng(seed)
    unit_ok = all(table.product(table.unit, b) == {b: 1} for b in labels)
    comm_ok = dual_ok = assoc_ok = True
    for i, j, l in rng.integers(0, len(labels), size=(samples, 3)):
        a, b, c = labels[i], labels[j], labels[l]
        ab = table.product(a, b)
        comm_ok &= ab == table.product(b, a)
        dual_ok &= ab.get(table.unit, 0) == (b == table.dual(a))
        left, right = {}, {}
        for x, n in ab.items():
            for y, m in table.product(x, c).items():
                left[y] = left.get(y, 0) + n * m
        for x, n in table.product(b, c).items():
            for y, m in table.product(a, x).items():
                right[y] = right.get(y, 0) + n * m
        assoc_ok &= left == right
    return {"unit": unit_ok, "commutative": comm_ok, "duality": dual_ok, "associative": assoc_ok}


@lru_cache(maxsize=32)
def fusion_table(k: int) -> FusionTable:
    table = FusionTable(k)
    if k <= DENSE_LIMIT:
        table.array  # noqa: B018 - build eagerly
    return table


def check_table_axioms(table: FusionTable, samples: int | None = None, seed: int = 0) -> dict[str, bool]:
    """Unit, commutativity, duality and associativity on the dense array.

    Associativity is exhaustive when ``samples`` is None, otherwise checked on
    that many random (a, b) pairs against every c.  Above the dense limit the
    sparse products are used and every axiom is sampled.
    """
    if table.level > DENSE_LIMIT:
        return _sparse_axioms(table, samples or 200, seed)
    N = table.array
    n = len(table.labels)
    u = table.index.index(table.unit)
    duals = np.array([table.index.index(table.dual(a)) for a in table.labels])
    unit_ok = np.array_equal(N[u], np.eye(n, dtype=np.int64))
    comm_ok = np.array_equal(N, N.transpose(1, 0, 2))
    dual_ok = np.array_equal(N[:, :, u], (np.arange(n)[None, :] == duals[:, None]).astype(np.int64))
    # N_a N_b == sum_s N_ab^s N_s  (matrices M_a[b, c] = N_ab^c)
    if samples is None:
        lhs = np.einsum("abs,scr->abcr", N, N)
        rhs = np.einsum("bcs,asr->abcr", N, N)
        assoc_ok = np.array_equal(lhs, rhs)
    else:
        rng = np.random.default_rng(seed)
        assoc_ok = True
        for a, b in rng.integers(0, n, size=(samples, 2)):
            if not np.array_equal(N[a] @ N[b], np.einsum("s,scr->cr", N[b, a], N)):
                assoc_ok = False
                break
    return {
        "unit": bool(unit_ok),
        "commutative": bool(comm_ok),
        "duality": bool(dual_ok),
        "associative": bool(assoc_ok),
    }


# -- fusion subcategories -----------------------------------------------------

def subcategory_closure(generators, table) -> frozenset:
    """Smallest set of labels containing the generators and the unit, closed
    under duals and under taking summands of products.

    ``table`` is any object with ``unit``, ``dual(a)`` and ``product(a, b)``.
    Closing under multiplication by generators and their duals suffices: every
    summand of a product of two words is a summand of the concatenated word.
    """
    gens = set(generators)
    gens |= {table.dual(g) for g in gens}
    found = {table.unit} | gens
    frontier = list(found)
    while frontier:
        x = frontier.pop()
        for g in gens:
            for c in table.product(x, g):
                if c not in found:
                    found.add(c)
                    frontier.append(c)
    return frozenset(found)


def enumerate_fusion_subcategories(table) -> list[frozenset]:
    """Every fusion subcategory, as joins of singly generated closures."""
    labels = list(table.labels)
    order = {a: i for i, a in enumerate(labels)}
    singles = {subcategory_closure([a], table) for a in labels}
    subs = set(singles) | {frozenset([table.unit])}
    changed = True
    while changed:
        changed = False
        current = list(subs)
        for i, s in enumerate(current):
            for t in current[i + 1:]:
                if s <= t or t <= s:
                    continue
                j = subcategory_closure(s | t, table)
                if j not in subs:
                    subs.add(j)
                    changed = True
    return sorted(subs, key=lambda s: (len(s), sorted(order[a] for a in s)))


def is_simple_category(table) -> bool:
    subs = enumerate_fusion_subcategories(table)
    return len(subs) == 2 or (len(subs) == 1 and len(table.labels) == 1)


def fusion_subcategories(k: int) -> list[frozenset]:
    return enumerate_fusion_subcategories(FusionTable(k))


def adjoint_closure(k: int) -> frozenset:
    """Subcategory generated by the adjoint weight theta."""
    return subcategory_closure([THETA], FusionTable(k))
