"""Weight combinatorics for sl3 at level k.

Weights are pairs (m1, m2) in the fundamental-weight basis.  Simple roots are
alpha1 = (2, -1) and alpha2 = (-1, 2); the highest root is theta = (1, 1) and
rho = (1, 1).  Three times the invariant form is integral:

    3 <x, y> = 2 x1 y1 + x1 y2 + x2 y1 + 2 x2 y2

which is what the Freudenthal recursion below works with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple


class Weight(NamedTuple):
    m1: int
    m2: int

    def __add__(self, other):  # type: ignore[override]
        return Weight(self.m1 + other[0], self.m2 + other[1])

    def __sub__(self, other):
        return Weight(self.m1 - other[0], self.m2 - other[1])

    def __neg__(self):
        return Weight(-self.m1, -self.m2)

    def scale(self, c: int) -> "Weight":
        return Weight(c * self.m1, c * self.m2)

    def is_dominant(self, k: int | None = None) -> bool:
        if self.m1 < 0 or self.m2 < 0:
            return False
        return k is None or self.m1 + self.m2 <= k


ZERO = Weight(0, 0)
RHO = Weight(1, 1)
THETA = Weight(1, 1)
ALPHA1 = Weight(2, -1)
ALPHA2 = Weight(-1, 2)
POSITIVE_ROOTS = (ALPHA1, ALPHA2, THETA)


def form3(x, y) -> int:
    """Three times the invariant bilinear form."""
    return 2 * x[0] * y[0] + x[0] * y[1] + x[1] * y[0] + 2 * x[1] * y[1]


def to_alpha(x) -> tuple[int, int] | None:
    """Coordinates of x in the simple-root basis, or None if x is not in the root lattice."""
    a, b = 2 * x[0] + x[1], x[0] + 2 * x[1]
    if a % 3 or b % 3:
        return None
    return a // 3, b // 3


def from_alpha(c1: int, c2: int) -> Weight:
    return Weight(2 * c1 - c2, -c1 + 2 * c2)


def check_level(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError("invalid level")


@dataclass(frozen=True)
class AlcoveSet:
    level: int
    weights: tuple[Weight, ...]
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.weights)})

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, w) -> bool:
        return tuple(w) in self._index

    def index(self, w) -> int:
        try:
            return self._index[Weight(*w)]
        except KeyError:
            raise ValueError("weight outside alcove") from None


@lru_cache(maxsize=None)
def alcove_weights(k: int) -> AlcoveSet:
    """Dominant weights with m1 + m2 <= k, ordered lexicographically."""
    check_level(k)
    ws = tuple(Weight(a, b) for a in range(k + 1) for b in range(k + 1 - a))
    return AlcoveSet(k, ws)


def root_lattice_weights(k: int) -> list[Weight]:
    return [w for w in alcove_weights(k) if (w.m1 - w.m2) % 3 == 0]


def corner_weights(k: int) -> list[Weight]:
    check_level(k)
    return [ZERO, Weight(k, 0), Weight(0, k)]


# -- classical Weyl group -----------------------------------------------------

def reflect_simple(x, i: int) -> Weight:
    """Linear reflection s_i (i = 1, 2) on a weight."""
    m1, m2 = x
    if i == 1:
        return Weight(-m1, m1 + m2)
    return Weight(m1 + m2, -m2)


@lru_cache(maxsize=None)
def weyl_group() -> tuple[tuple[tuple[int, ...], int], ...]:
    """The six elements as (reduced word, sign)."""
    words = [((), 1), ((1,), -1), ((2,), -1), ((1, 2), 1), ((2, 1), 1), ((1, 2, 1), -1)]
    return tuple(words)


def weyl_act(word: tuple[int, ...], x) -> Weight:
    x = Weight(*x)
    for i in reversed(word):
        x = reflect_simple(x, i)
    return x


def dominant_conjugate(x) -> Weight:
    x = Weight(*x)
    while not (x.m1 >= 0 and x.m2 >= 0):
        x = reflect_simple(x, 1 if x.m1 < 0 else 2)
    return x


# -- affine folding -----------------------------------------------------------

@dataclass(frozen=True)
class FoldResult:
    target: Weight | None
    sign: int
    word: tuple[int, ...] = ()


def affine_reflect(x, i: int, k: int) -> Weight:
    """rho-shifted reflection tau_i; i = 1, 2 simple walls, i = 0 the affine wall."""
    a, b = x[0] + 1, x[1] + 1
    K = k + 3
    if i == 1:
        a, b = -a, a + b
    elif i == 2:
        a, b = a + b, -b
    else:
        a, b = K - b, K - a
    return Weight(a - 1, b - 1)


def affine_fold(x, k: int) -> FoldResult:
    """Fold x into the level-k alcove under the shifted affine Weyl action.

    Returns the dominant image with sign (-1)^(number of reflections), or a
    null target when the orbit meets a wall.
    """
    check_level(k)
    x = Weight(*x)
    K = k + 3
    sign = 1
    word = []
    limit = 4 * (abs(x.m1) + abs(x.m2) + K) + 8
    while True:
        a, b = x.m1 + 1, x.m2 + 1
        if a > 0 and b > 0 and a + b < K:
            return FoldResult(x, sign, tuple(word))
        if a == 0 or b == 0 or a + b == K:
            return FoldResult(None, sign, tuple(word))
        i = 1 if a < 0 else 2 if b < 0 else 0
        x = affine_reflect(x, i, k)
        word.append(i)
        sign = -sign
        if len(word) > limit:
            raise RuntimeError("affine folding did not terminate")


# -- weight multiplicities ----------------------------------------------------

def _in_diagram(hw: Weight, mu: Weight) -> bool:
    c = to_alpha(hw - dominant_conjugate(mu))
    return c is not None and c[0] >= 0 and c[1] >= 0


@lru_cache(maxsize=256)
def weight_diagram(hw: tuple[int, int]) -> dict[Weight, int]:
    """All weights of the irreducible module with highest weight hw, with multiplicities.

    Freudenthal's recursion, processed in order of depth below hw.
    """
    hw = Weight(*hw)
    if not hw.is_dominant():
        raise ValueError("highest weight must be dominant")
    n = hw.m1 + hw.m2
    layers: dict[int, list[Weight]] = {}
    for n1 in range(n + 1):
        for n2 in range(n + 1):
            mu = hw - ALPHA1.scale(n1) - ALPHA2.scale(n2)
            if _in_diagram(hw, mu):
                layers.setdefault(n1 + n2, []).append(mu)
    top = form3(hw + RHO, hw + RHO)
    mult: dict[Weight, int] = {}
    for depth in sorted(layers):
        for mu in layers[depth]:
            if depth == 0:
                mult[mu] = 1
                continue
            acc = 0
            for alpha in POSITIVE_ROOTS:
                nu = mu + alpha
                while nu in mult:
                    acc += form3(nu, alpha) * mult[nu]
                    nu = nu + alpha
            denom = top - form3(mu + RHO, mu + RHO)
            value, rem = divmod(2 * acc, denom)
            if rem:
                raise ArithmeticError(f"Freudenthal recursion not integral at {mu}")
            if value:
                mult[mu] = value
    return mult


def weight_multiplicity(gamma, mu) -> int:
    return weight_diagram(tuple(gamma)).get(Weight(*mu), 0)


def kostant_partition(c1: int, c2: int) -> int:
    """Number of ways to write c1*alpha1 + c2*alpha2 as a sum of positive roots."""
    if c1 < 0 or c2 < 0:
        return 0
    count = 0
    for both in range(min(c1, c2) + 1):
        # the remaining alpha1 and alpha2 counts are then forced
        if c1 - both >= 0 and c2 - both >= 0:
            count += 1
    return count


def kostant_multiplicity(gamma, mu) -> int:
    """Weight multiplicity from Kostant's alternating sum over the Weyl group."""
    shifted = Weight(*gamma) + RHO
    target = Weight(*mu) + RHO
    total = 0
    for word, sign in weyl_group():
        c = to_alpha(weyl_act(word, shifted) - target)
        if c is not None:
            total += sign * kostant_partition(*c)
    return total


def weyl_dimension(hw) -> int:
    m1, m2 = hw
    return (m1 + 1) * (m2 + 1) * (m1 + m2 + 2) // 2
