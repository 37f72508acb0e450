"""Twists, dimensions, S-matrices and central charges.

All exact data for C(sl3, k) lives in Q(zeta_M) with M = 6(k+3), which holds
q = exp(pi i/(k+3)), every twist and omega = exp(2 pi i/3).  The S-matrix kept
here is the unnormalised one, s~, from the balancing formula

    s~_{ab} = theta_a^-1 theta_b^-1 sum_c N_{a* b}^c theta_c dim(c)

so the exact layer never needs a square root.  The normalised S = s~/sqrt(D)
only appears in the float helpers, and with T = diag(theta) it satisfies

    (S T)^3 = xi * S^2,   S^2 = charge conjugation,

where xi is the multiplicative central charge.  That is the pinned
convention reported by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np

from .alcove import Weight, check_level, corner_weights
from .cyclo import Cyclo, root_of_unity, root_of_unity_exponent, to_complex
from .fusion import FusionTable, dual, enumerate_fusion_subcategories, fusion_table

MODULAR_RELATION = "(S T)^3 = xi * S^2 with S = s~/sqrt(D), T = diag(theta), S^2 = charge conjugation"


def conductor(k: int) -> int:
    return 6 * (k + 3)


def twist_exponent(lam) -> int:
    m1, m2 = lam
    return m1 * m1 + 3 * m1 + m1 * m2 + 3 * m2 + m2 * m2


def twist(lam, k: int) -> Cyclo:
    """exp(2 pi i E / 3(k+3)) with E = m1^2 + 3 m1 + m1 m2 + 3 m2 + m2^2."""
    check_level(k)
    if not Weight(*lam).is_dominant(k):
        raise ValueError("weight outside alcove")
    return root_of_unity(conductor(k), 2 * twist_exponent(lam))


@lru_cache(maxsize=None)
def _q_denominator_inverse(k: int) -> Cyclo:
    q = root_of_unity(conductor(k), 3)
    return (q - q ** -1).inverse()


def quantum_integer(n: int, k: int) -> Cyclo:
    """[n] = (q^n - q^-n)/(q - q^-1) with q = exp(pi i/(k+3))."""
    M = conductor(k)
    return (root_of_unity(M, 3 * n) - root_of_unity(M, -3 * n)) * _q_denominator_inverse(k)


def qdim(lam, k: int) -> Cyclo:
    """Quantum Weyl dimension [m1+1][m2+1][m1+m2+2]/[2]."""
    check_level(k)
    m1, m2 = lam
    if not Weight(m1, m2).is_dominant(k):
        raise ValueError("weight outside alcove")
    return (
        quantum_integer(m1 + 1, k)
        * quantum_integer(m2 + 1, k)
        * quantum_integer(m1 + m2 + 2, k)
        / quantum_integer(2, k)
    )


def qdim_sine(lam, k: int) -> float:
    """Float dimension from the product-of-sines form."""
    m1, m2 = lam
    s = lambda n: np.sin(n * np.pi / (k + 3))  # noqa: E731
    return float(s(m1 + 1) * s(m2 + 1) * s(m1 + m2 + 2) / (s(2) * s(1) ** 2))


# -- generic modular data -----------------------------------------------------

@dataclass
class ModularData:
    """Simple objects with twists, dimensions and the unnormalised S-matrix."""

    level: int
    labels: list
    twists: list[Cyclo]
    dims: list[Cyclo]
    smatrix: list[list[Cyclo]]
    global_dim: Cyclo
    charge: Cyclo
    fusion: Any = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {a: i for i, a in enumerate(self.labels)}

    def index(self, a) -> int:
        return self._index[a]

    def s(self, a, b) -> Cyclo:
        return self.smatrix[self._index[a]][self._index[b]]

    def dim(self, a) -> Cyclo:
        return self.dims[self._index[a]]

    def twist(self, a) -> Cyclo:
        return self.twists[self._index[a]]

    # float views
    def dims_float(self) -> np.ndarray:
        return np.array([to_complex(d).real for d in self.dims])

    def t_diag(self) -> np.ndarray:
        return np.array([to_complex(t) for t in self.twists])

    def s_tilde_float(self) -> np.ndarray:
        return np.array([[to_complex(x) for x in row] for row in self.smatrix])

    def s_normalized(self) -> np.ndarray:
        return self.s_tilde_float() / np.sqrt(to_complex(self.global_dim).real)


def balancing_smatrix(labels, dual_of, product, twists, dims) -> list[list[Cyclo]]:
    """s~_{ab} = theta_a^-1 theta_b^-1 sum_c N_{a* b}^c theta_c dim(c)."""
    index = {a: i for i, a in enumerate(labels)}
    td = [t * d for t, d in zip(twists, dims)]
    inv = [t.conjugate() if t * t.conjugate() == 1 else t.inverse() for t in twists]
    n = len(labels)
    S: list[list[Cyclo | None]] = [[None] * n for _ in range(n)]
    for i, a in enumerate(labels):
        ad = dual_of(a)
        for j in range(i, n):
            b = labels[j]
            acc = Cyclo.zero(td[0].n)
            for c, mult in product(ad, b).items():
                acc = acc + td[index[c]] * mult
            val = acc * (inv[i] * inv[j])
            S[i][j] = val
            S[j][i] = val
    return S  # type: ignore[return-value]


def gauss_sum_charge(twists, dims) -> tuple[Cyclo, Fraction]:
    """Multiplicative central charge tau+/|tau+| and r with xi = exp(2 pi i r).

    xi^2 = (tau+)^2 / D is computed exactly and identified as a root of unity;
    the float value of tau+ only selects between the two square roots.
    """
    tau = sum((d * d * t for d, t in zip(dims, twists)), Cyclo.zero(twists[0].n))
    if tau.is_zero():
        raise ZeroDivisionError("degenerate Gauss sum")
    D = sum((d * d for d in dims), Cyclo.zero(dims[0].n))
    sq = root_of_unity_exponent(tau * tau / D)
    if sq is None:
        raise ArithmeticError("Gauss sum is not a root of unity times sqrt(D)")
    approx = to_complex(tau)
    approx /= abs(approx)
    candidates = [sq / 2, (sq / 2 + Fraction(1, 2)) % 1]
    r = min(candidates, key=lambda c: abs(approx - np.exp(2j * np.pi * float(c))))
    return root_of_unity(r.denominator, r.numerator), r


def charge_fraction_closed_form(dim_g: int, h_dual: int, k: int) -> Fraction:
    """r with exp(2 pi i r) = exp(2 pi i/8 * k dim g/(k + h_dual)), reduced mod 1."""
    if dim_g < 1 or h_dual < 1 or k < 1:
        raise ValueError("inputs must be positive")
    return Fraction(k * dim_g, 8 * (k + h_dual)) % 1


def central_charge_closed_form(dim_g: int, h_dual: int, k: int) -> Cyclo:
    r = charge_fraction_closed_form(dim_g, h_dual, k)
    return root_of_unity(r.denominator, r.numerator)


@lru_cache(maxsize=32)
def modular_data(k: int) -> ModularData:
    """Full modular data of C(sl3, k)."""
    check_level(k)
    table = fusion_table(k)
    labels = table.labels
    twists = [twist(w, k) for w in labels]
    dims = [qdim(w, k) for w in labels]
    smat = balancing_smatrix(labels, dual, table.product, twists, dims)
    D = sum((d * d for d in dims), Cyclo.zero(conductor(k)))
    xi, _ = gauss_sum_charge(twists, dims)
    return ModularData(k, labels, twists, dims, smat, D, xi, fusion=table)


# -- checks on modular data ---------------------------------------------------

def verlinde_coefficients(S: np.ndarray) -> np.ndarray:
    """N_ab^c = sum_x S_ax S_bx conj(S_cx) / S_0x for normalised S (unit first)."""
    if abs(np.linalg.det(S)) < 1e-12:
        raise ValueError("degenerate S-matrix")
    return np.einsum("ax,bx,cx->abc", S, S, S.conj() / S[0][None, :])


def verlinde_check(md: ModularData, table=None) -> tuple[bool, float]:
    """Compare Verlinde-recomputed coefficients with a fusion table.

    Returns (all rounded values agree, largest pre-rounding deviation).
    """
    table = table if table is not None else md.fusion
    S = md.s_normalized()
    N = verlinde_coefficients(S)
    n = len(md.labels)
    expected = np.zeros((n, n, n), dtype=np.int64)
    for i, a in enumerate(md.labels):
        for j, b in enumerate(md.labels):
            for c, mult in table.product(a, b).items():
                expected[i, j, md.index(c)] = mult
    dev = float(np.abs(N - expected).max())
    rounded = np.rint(N.real).astype(np.int64)
    return bool(np.array_equal(rounded, expected) and np.abs(N.imag).max() < 0.5), dev


def modular_relation_deviation(md: ModularData, twists: np.ndarray | None = None) -> dict[str, float]:
    """Deviations from (ST)^3 = xi S^2, S S* = 1 and S^2 = charge conjugation."""
    S = md.s_normalized()
    T = np.diag(md.t_diag() if twists is None else twists)
    xi = to_complex(md.charge)
    n = len(md.labels)
    C = np.zeros((n, n))
    dual_of = md.fusion.dual if md.fusion is not None else (lambda a: a)
    for i, a in enumerate(md.labels):
        C[i, md.index(dual_of(a))] = 1
    return {
        "unitarity": float(np.abs(S @ S.conj().T - np.eye(n)).max()),
        "st_cubed": float(np.abs(np.linalg.matrix_power(S @ T, 3) - xi * S @ S).max()),
        "s_squared": float(np.abs(S @ S - C).max()),
    }


def fp_dimension_deviation(md: ModularData, table: FusionTable) -> float:
    """Largest |FP eigenvalue of N_a - dim(a)| over all simples."""
    dims = md.dims_float()
    worst = 0.0
    for i, a in enumerate(md.labels):
        ev = np.linalg.eigvals(table.matrix(a).astype(float))
        worst = max(worst, abs(float(np.max(ev.real)) - dims[i]))
    return worst


def centralizes(a, b, md: ModularData) -> bool:
    """s~_ab == dim(a) dim(b), exactly."""
    return md.s(a, b) == md.dim(a) * md.dim(b)


def centralizer(subset, md: ModularData) -> list:
    subset = list(subset)
    return [b for b in md.labels if all(centralizes(a, b, md) for a in subset)]


# -- Mueger decomposition along the pointed part ------------------------------

class _RestrictedFusion:
    def __init__(self, table, labels):
        self.labels = list(labels)
        self.unit = table.unit
        self._table = table
        keep = set(self.labels)
        self._keep = keep

    def dual(self, a):
        return self._table.dual(a)

    def product(self, a, b):
        out = self._table.product(a, b)
        if not set(out) <= self._keep:
            raise ValueError("subset is not closed under fusion")
        return out


def muger_decompose(k: int) -> dict:
    """Split C(sl3, k) along its pointed part and report each factor.

    Factor charges come from the exact Gauss sum of the pointed part and the
    quotient of the closed-form total charge by it.
    """
    check_level(k)
    md = modular_data(k)
    table = md.fusion
    one = Cyclo.one(conductor(k))
    pointed = [a for a in md.labels if md.dim(a) == one]
    cent = centralizer(pointed, md)
    total_r = charge_fraction_closed_form(8, 3, k)
    report: dict = {
        "level": k,
        "pointed": [list(a) for a in pointed],
        "pointed_twists": {str(list(a)): md.twist(a).to_json() for a in pointed},
        "centralizer": [list(a) for a in cent],
        "centralizer_size": len(cent),
        "total_charge": str(total_r * 2 % 2),
    }
    if k % 3 == 0:
        report["factorizable"] = False
        report["note"] = "corners are transparent, category is not factorizable this way"
        return report
    pt_twists = [md.twist(a) for a in pointed]
    pt_dims = [md.dim(a) for a in pointed]
    _, pt_r = gauss_sum_charge(pt_twists, pt_dims)
    cent_r = (total_r - pt_r) % 1
    pointed_sub = _RestrictedFusion(table, pointed)
    cent_sub = _RestrictedFusion(table, cent) if len(cent) > 1 else None
    report.update(
        {
            "factorizable": True,
            "pointed_size": len(pointed),
            "pointed_charge": str(pt_r * 2 % 2),
            "centralizer_charge": str(cent_r * 2 % 2),
            "pointed_prime": len(enumerate_fusion_subcategories(pointed_sub)) == 2,
            "centralizer_prime": (
                None if cent_sub is None else len(enumerate_fusion_subcategories(cent_sub)) == 2
            ),
        }
    )
    return report


def pointed_charge_fraction(k: int) -> Fraction:
    """Exact Gauss-sum charge of the corner subcategory (requires 3 not dividing k)."""
    if k % 3 == 0:
        raise ValueError("pointed part is degenerate when 3 divides k")
    pts = corner_weights(k)
    _, r = gauss_sum_charge([twist(a, k) for a in pts], [qdim(a, k) for a in pts])
    return r


def centralizer_charge_fraction(k: int) -> Fraction:
    """Charge of the centralizer of the pointed part, as a quotient of charges."""
    return (charge_fraction_closed_form(8, 3, k) - pointed_charge_fraction(k)) % 1
