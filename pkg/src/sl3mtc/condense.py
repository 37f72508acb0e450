"""Type-D condensation of C(sl3, 3m) by A = (0,0) + (3m,0) + (0,3m).

Local modules come in two kinds.  Every size-3 orbit of the rotation
sigma(m1, m2) = (k - m1 - m2, m1) inside the root-lattice weights gives one
free simple F(lambda); the fixed point nu = (m, m) splits into three
stationary simples X1, X2, X3 of dimension dim(nu)/3.  Labels are Y1, Y2, ...
for free orbits (ordered by the level m1 + m2 of the lexicographically least
orbit element, then by that element) and X1..X3 for the stationary ones.

Products among free simples follow from F(a) (x)_A F(b) = F(a (x) b).
Products involving the X_i are only pinned down at k = 3 and k = 6, where
they are solved for from the aggregate data plus the fusion-ring axioms.
Elsewhere they are exposed in aggregate form: the "X" slot counts copies of
the object X1 + X2 + X3 = F(nu).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .alcove import THETA, ZERO, Weight, alcove_weights, root_lattice_weights
from .cyclo import Cyclo, to_complex
from .fusion import FusionTable, dual, fusion_coeff, fusion_product, is_simple_category, subcategory_closure
from .modular import (
    ModularData,
    balancing_smatrix,
    conductor,
    gauss_sum_charge,
    modular_data,
    modular_relation_deviation,
    qdim,
    qdim_sine,
    twist,
    verlinde_coefficients,
)

AGGREGATE = "X"
STATIONARY = ("X1", "X2", "X3")


def _check_type_d(k: int) -> int:
    if k < 3 or k % 3:
        raise ValueError("no Type-D algebra at this level")
    return k // 3


def rotate(lam, k: int) -> Weight:
    """Fusion with the corner (k, 0): a 120 degree rotation of the alcove."""
    m1, m2 = lam
    return Weight(k - m1 - m2, m1)


def rotation_orbit(lam, k: int) -> tuple[Weight, ...]:
    lam = Weight(*lam)
    if not lam.is_dominant(k):
        raise ValueError("weight outside alcove")
    orbit = {lam, rotate(lam, k), rotate(rotate(lam, k), k)}
    return tuple(sorted(orbit))


@dataclass(frozen=True)
class CondensedSimple:
    label: str
    kind: str  # "free" or "stationary"
    orbit: tuple[Weight, ...]
    index: int = 0  # 1..3 for stationary simples

    @property
    def representative(self) -> Weight:
        return self.orbit[0]


@lru_cache(maxsize=None)
def condensed_simples(k: int) -> tuple[CondensedSimple, ...]:
    m = _check_type_d(k)
    nu = Weight(m, m)
    orbits = set()
    for w in root_lattice_weights(k):
        if w != nu:
            orbits.add(rotation_orbit(w, k))
    for orb in orbits:
        if len(orb) != 3:
            raise ArithmeticError(f"unexpected rotation orbit {orb}")
    ordered = sorted(orbits, key=lambda o: (o[0].m1 + o[0].m2, o[0]))
    out = [CondensedSimple(f"Y{i + 1}", "free", orb) for i, orb in enumerate(ordered)]
    out += [CondensedSimple(lab, "stationary", (nu,), i + 1) for i, lab in enumerate(STATIONARY)]
    return tuple(out)


def _free_by_weight(k: int) -> dict[Weight, CondensedSimple]:
    table = {}
    for s in condensed_simples(k):
        if s.kind == "free":
            for w in s.orbit:
                table[w] = s
    return table


def condensed_dims(k: int) -> dict[str, Cyclo]:
    out = {}
    for s in condensed_simples(k):
        d = qdim(s.representative, k)
        out[s.label] = d if s.kind == "free" else d / 3
    return out


def condensed_twists(k: int) -> dict[str, Cyclo]:
    return {s.label: twist(s.representative, k) for s in condensed_simples(k)}


def stationary_dim(m: int) -> tuple[Cyclo, float]:
    """dim(m, m)/3 at level 3m, exactly and as a float."""
    if m < 1:
        raise ValueError("m must be positive")
    d = qdim((m, m), 3 * m) / 3
    return d, to_complex(d).real


def stationary_dim_closed_form(m: int) -> float:
    x = math.pi / (3 * (m + 1))
    return math.sqrt(3) / (8 * math.sin(2 * x) * math.sin(x) ** 2)


def stationary_dim_lower_bound(m: int) -> float:
    return 27 * math.sqrt(3) * (m + 1) ** 3 / (16 * math.pi**3)


# -- fusion -------------------------------------------------------------------

def _label_of(a, k: int) -> CondensedSimple:
    for s in condensed_simples(k):
        if a == s or a == s.label:
            return s
    raise ValueError(f"unknown condensed simple {a!r}")


def free_fusion(a, b, k: int) -> dict[str, int]:
    """F(a) (x)_A F(b) with the stationary part aggregated under "X"."""
    sa, sb = _label_of(a, k), _label_of(b, k)
    if sa.kind != "free" or sb.kind != "free":
        raise ValueError("free_fusion takes two free simples")
    return _expand(fusion_product(sa.representative, sb.representative, k), k)


def _expand(decomp: dict, k: int) -> dict[str, int]:
    m = k // 3
    nu = Weight(m, m)
    free = _free_by_weight(k)
    out: dict[str, int] = {}
    for w, mult in decomp.items():
        if w == nu:
            out[AGGREGATE] = out.get(AGGREGATE, 0) + mult
        elif w in free:
            lab = free[w].label
            out[lab] = out.get(lab, 0) + mult
        else:
            raise AssertionError(f"non-local summand {w} in a product of local objects")
    return out


def aggregate_product(a, b, k: int) -> dict[str, int]:
    """F(a) (x)_A F(b) in aggregate form, reading any stationary factor as F(nu).

    A stationary factor X_i is replaced by X1 + X2 + X3, so the result is the
    sum of the products over the three stationary labels.
    """
    sa, sb = _label_of(a, k), _label_of(b, k)
    out = _expand(fusion_product(sa.representative, sb.representative, k), k)
    return out


def aggregate_dim_check(a, b, k: int) -> float:
    """|sum of dims in free_fusion(a, b) - dim(a) dim(b)| as a float."""
    d = {s.label: qdim_sine(s.representative, k) for s in condensed_simples(k) if s.kind == "free"}
    d[AGGREGATE] = qdim_sine((k // 3, k // 3), k)
    sa, sb = _label_of(a, k), _label_of(b, k)
    total = sum(mult * d[lab] for lab, mult in free_fusion(sa, sb, k).items())
    return abs(total - d[sa.label] * d[sb.label])


class ResolvedFusion:
    """Complete fusion ring of the condensed category at k = 3 or k = 6."""

    def __init__(self, k: int, labels: list[str], N: np.ndarray, duals: dict[str, str], solutions: int):
        self.level = k
        self.labels = labels
        self.unit = labels[0]
        self.array = N
        self._duals = duals
        self._index = {a: i for i, a in enumerate(labels)}
        self.ring_candidates = solutions

    def dual(self, a: str) -> str:
        return self._duals[a]

    def product(self, a: str, b: str) -> dict[str, int]:
        row = self.array[self._index[a], self._index[b]]
        return {self.labels[c]: int(n) for c, n in enumerate(row) if n}

    def matrix(self, a: str) -> np.ndarray:
        return self.array[self._index[a]]

    def collapse(self, a: str, b: str) -> dict[str, int]:
        """Product with stationary summands merged under "X", each X_i counted once."""
        out: dict[str, int] = {}
        for c, n in self.product(a, b).items():
            key = AGGREGATE if c in STATIONARY else c
            out[key] = out.get(key, 0) + n
        return out


def _compositions(total: int, parts: int):
    for cut in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for c in cut + (total + parts - 1,):
            out.append(c - prev - 1)
            prev = c
        yield tuple(out)


def _ring_axioms_hold(N: np.ndarray, duals: list[int], dims: np.ndarray) -> bool:
    n = len(duals)
    if not np.array_equal(N[0], np.eye(n, dtype=N.dtype)):
        return False
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        return False
    dual_col = (np.arange(n)[None, :] == np.array(duals)[:, None]).astype(N.dtype)
    if not np.array_equal(N[:, :, 0], dual_col):
        return False
    # N_ab^c == N_{a* c}^b
    for a in range(n):
        if not np.array_equal(N[a], N[duals[a]].T):
            return False
    if np.abs(N @ dims - np.outer(dims, dims)).max() > 1e-9:
        return False
    lhs = np.einsum("abs,scr->abcr", N, N)
    rhs = np.einsum("bcs,asr->abcr", N, N)
    return bool(np.array_equal(lhs, rhs))


@lru_cache(maxsize=None)
def _ring_solutions(k: int):
    """All fusion rings extending the aggregate data at k = 3 or 6.

    Unknowns are N_{Y X_i}^{X_j} and N_{X_r X_s}^{X_t}.  The corner action
    permutes X1 -> X2 -> X3 and fixes each Y, so these only depend on index
    differences mod 3; every X_i is self-dual.  Candidates must reproduce the
    aggregate data from the parent category and satisfy unit, duality,
    Frobenius reciprocity, dimension and associativity constraints.
    """
    m = k // 3
    nu = Weight(m, m)
    simples = condensed_simples(k)
    free = [s for s in simples if s.kind == "free"]
    labels = [s.label for s in simples]
    nf = len(free)
    n = len(labels)
    xi = {lab: nf + i for i, lab in enumerate(STATIONARY)}
    by_weight = _free_by_weight(k)
    duals = {}
    for s in free:
        duals[s.label] = by_weight[dual(s.representative)].label
    for lab in STATIONARY:
        duals[lab] = lab
    dual_idx = [labels.index(duals[lab]) for lab in labels]
    dims = np.array([to_complex(condensed_dims(k)[lab]).real for lab in labels])

    base = np.zeros((n, n, n), dtype=np.int64)
    for i, a in enumerate(free):
        for j, b in enumerate(free):
            for c, mult in free_fusion(a, b, k).items():
                if c == AGGREGATE:
                    for x in STATIONARY:
                        base[i, j, xi[x]] += mult
                else:
                    base[i, j, labels.index(c)] += mult
    # N_{Y_a X}^{Y_b} = N_{Y_a* Y_b}^{X} (Frobenius reciprocity)
    for i, a in enumerate(free):
        for j, b in enumerate(free):
            c = base[dual_idx[i], j, xi["X1"]]
            for x in STATIONARY:
                base[i, xi[x], j] = c
                base[xi[x], i, j] = c

    n_free_nu = [fusion_coeff(s.representative, nu, nu, k) for s in free]
    n_nu_nu = fusion_coeff(nu, nu, nu, k)
    solutions = []
    u_choices = [list(_compositions(t, 3)) for t in n_free_nu]
    v_choices = list(_compositions(n_nu_nu, 9))
    for us in itertools.product(*u_choices):
        for v in v_choices:
            N = base.copy()
            for a, u in enumerate(us):
                for r in range(3):
                    for d in range(3):
                        s_ = (r + d) % 3
                        N[a, nf + r, nf + s_] = u[d]
                        N[nf + r, a, nf + s_] = u[d]
                        # N_{X_r X_s}^{Y_a} = N_{Y_a X_r}^{X_s}
                        N[nf + r, nf + s_, a] = u[d]
            for r in range(3):
                for d1 in range(3):
                    for d2 in range(3):
                        N[nf + r, nf + (r + d1) % 3, nf + (r + d2) % 3] = v[3 * d1 + d2]
            if _ring_axioms_hold(N, dual_idx, dims):
                solutions.append(N)
    return labels, duals, solutions


def _verlinde_consistent(k: int, labels, duals, N) -> bool:
    table = ResolvedFusion(k, labels, N, duals, 0)
    d, t = condensed_dims(k), condensed_twists(k)
    S = balancing_smatrix(labels, table.dual, table.product, [t[a] for a in labels], [d[a] for a in labels])
    Sf = np.array([[to_complex(x) for x in row] for row in S])
    Sf = Sf / np.sqrt(np.sum(np.abs(Sf[0]) ** 2))
    try:
        V = verlinde_coefficients(Sf)
    except ValueError:
        return False
    return bool(np.abs(V - N).max() < 1e-9)


@lru_cache(maxsize=None)
def resolved_fusion_table(k: int) -> ResolvedFusion:
    """Complete condensed fusion ring at k = 3 or 6.

    Ring axioms alone leave several candidates at k = 6; the inherited twists
    then single one out, since only one candidate is reproduced by the
    Verlinde formula applied to its own balancing S-matrix.
    """
    if k not in (3, 6):
        raise ValueError("resolution not determined at this level")
    labels, duals, candidates = _ring_solutions(k)
    survivors = [N for N in candidates if _verlinde_consistent(k, labels, duals, N)]
    if len(survivors) != 1:
        raise ArithmeticError(f"expected one consistent resolution, found {len(survivors)}")
    N = survivors[0]
    N.setflags(write=False)
    return ResolvedFusion(k, labels, N, duals, len(candidates))


# -- modular data of the condensed category ------------------------------------

@lru_cache(maxsize=None)
def condensed_modular(k: int) -> ModularData:
    table = resolved_fusion_table(k)
    dims = [condensed_dims(k)[lab] for lab in table.labels]
    twists = [condensed_twists(k)[lab] for lab in table.labels]
    smat = balancing_smatrix(table.labels, table.dual, table.product, twists, dims)
    D = sum((d * d for d in dims), Cyclo.zero(conductor(k)))
    xi, _ = gauss_sum_charge(twists, dims)
    return ModularData(k, list(table.labels), twists, dims, smat, D, xi, fusion=table)


def _all_condensed(k: int) -> tuple[list[Cyclo], list[Cyclo]]:
    d, t = condensed_dims(k), condensed_twists(k)
    labels = [s.label for s in condensed_simples(k)]
    return [d[a] for a in labels], [t[a] for a in labels]


def condensed_global_dim(k: int) -> Cyclo:
    dims, _ = _all_condensed(k)
    return sum((x * x for x in dims), Cyclo.zero(conductor(k)))


def condensed_charge(k: int):
    """Gauss-sum charge of the condensed category (aggregate data suffices)."""
    dims, twists = _all_condensed(k)
    return gauss_sum_charge(twists, dims)


def reference_k6_matrices() -> tuple[np.ndarray, np.ndarray]:
    """Level-6 closed forms: s~ in terms of zeta and epsilon, and the T diagonal
    (1, w, w^2, eta, eta, eta) with w = exp(2 pi i/3), eta = exp(2 pi i/9)."""
    zeta = max(r.real for r in np.roots([1, -3, -6, -1]) if abs(r.imag) < 1e-12)
    eps = max(r.real for r in np.roots([1, -3, 0, 1]) if abs(r.imag) < 1e-12)
    z1 = zeta + 1
    e = eps
    S = np.array(
        [
            [1, z1, zeta, e, e, e],
            [z1, zeta, -1, -e, -e, -e],
            [zeta, -1, -z1, e, e, e],
            [e, -e, e, 2 * e, -e, -e],
            [e, -e, e, -e, 2 * e, -e],
            [e, -e, e, -e, -e, 2 * e],
        ]
    )
    w = np.exp(2j * np.pi / 3)
    eta = np.exp(2j * np.pi / 9)
    T = np.array([1, w, w * w, eta, eta, eta])
    return S, T


def compare_k6_reference(tol: float = 1e-9) -> dict:
    """Compare computed level-6 condensed data with the closed forms.

    The T comparison is reported entry by entry: each entry is classed as
    equal, equal after conjugation, or neither, and a global-conjugation
    match is reported separately.
    """
    md = condensed_modular(6)
    S_ref, T_ref = reference_k6_matrices()
    S = md.s_tilde_float()
    T = md.t_diag()
    exact = np.abs(T - T_ref) < tol
    conj = np.abs(T - T_ref.conj()) < tol
    entries = []
    for lab, e, c in zip(md.labels, exact, conj):
        entries.append({"label": lab, "status": "equal" if e else "conjugate" if c else "different"})
    mismatched = [x["label"] for x in entries if x["status"] != "equal"]
    conj_md = ModularData(
        6, md.labels, md.twists, md.dims, md.smatrix, md.global_dim, md.charge.conjugate(), md.fusion
    )
    relation = {
        "computed_T": modular_relation_deviation(md)["st_cubed"],
        "displayed_T": modular_relation_deviation(md, twists=T_ref)["st_cubed"],
        "conjugated_displayed_T": modular_relation_deviation(conj_md, twists=T_ref.conj())["st_cubed"],
    }
    return {
        "s_max_deviation": float(np.abs(S - S_ref).max()),
        "s_match": bool(np.abs(S - S_ref).max() < tol),
        "first_row": [float(x.real) for x in S[0]],
        "t_entries": entries,
        "t_exact_match": bool(exact.all()),
        "t_global_conjugate_match": bool(conj.all()),
        "t_entrywise_up_to_conjugation": bool((exact | conj).all()),
        "t_flagged": mismatched,
        "modular_relation": relation,
    }


# -- branching and the modular invariant --------------------------------------

def branching_matrix(k: int) -> tuple[np.ndarray, list[Weight], list[str]]:
    """b[lambda, M] = multiplicity of lambda in the underlying object of M."""
    m = _check_type_d(k)
    rows = list(alcove_weights(k).weights)
    simples = condensed_simples(k)
    cols = [s.label for s in simples]
    b = np.zeros((len(rows), len(cols)), dtype=np.int64)
    ridx = {w: i for i, w in enumerate(rows)}
    for j, s in enumerate(simples):
        for w in s.orbit:
            b[ridx[w], j] += 1
    assert b[:, -1].sum() == 1 and b[ridx[Weight(m, m)], -1] == 1
    return b, rows, cols


def modular_invariant(k: int, exact: bool = True) -> tuple[np.ndarray, dict]:
    """Z = b b^T with commutation checks against S and T of C(sl3, k)."""
    b, rows, _ = branching_matrix(k)
    Z = b @ b.T
    md = modular_data(k)
    n = len(rows)
    report: dict = {
        "level": k,
        "z00": int(Z[0, 0]),
        "nonnegative_integer": bool((Z >= 0).all() and np.issubdtype(Z.dtype, np.integer)),
        "symmetric": bool(np.array_equal(Z, Z.T)),
    }
    S = md.s_normalized()
    T = np.diag(md.t_diag())
    report["zs_float_deviation"] = float(np.abs(Z @ S - S @ Z).max())
    report["zt_float_deviation"] = float(np.abs(Z @ T - T @ Z).max())
    report["zs_float"] = report["zs_float_deviation"] < 1e-9
    report["zt_float"] = report["zt_float_deviation"] < 1e-9
    if exact:
        nz = [[(j, int(Z[i, j])) for j in range(n) if Z[i, j]] for i in range(n)]
        zs_ok = True
        for i in range(n):
            for j in range(n):
                left = sum((md.smatrix[l][j] * z for l, z in nz[i]), Cyclo.zero(conductor(k)))
                right = sum((md.smatrix[i][l] * z for l, z in nz[j]), Cyclo.zero(conductor(k)))
                if left != right:
                    zs_ok = False
                    break
            if not zs_ok:
                break
        zt_ok = all(md.twists[i] == md.twists[j] for i in range(n) for j, _ in nz[i])
        report["zs_exact"] = zs_ok
        report["zt_exact"] = zt_ok
    report["passed"] = bool(
        report["z00"] == 1
        and report["nonnegative_integer"]
        and report["zs_float"]
        and report["zt_float"]
        and report.get("zs_exact", True)
        and report.get("zt_exact", True)
    )
    return Z, report


# -- simplicity certificate ---------------------------------------------------

def simplicity_certificate(m: int) -> dict:
    """Checks behind simplicity of the level-3m condensed category.

    (i)   N_{nu nu}^nu = m + 1 for nu = (m, m);
    (ii)  dim X > m + 3 for m >= 3 (so X (x) X* = 1 + nX is impossible), the
          resolved table for m = 2, and m = 1 is pointed Z/2 x Z/2;
    (iii) N_{lambda, lambda*}^theta > 0 for every free representative lambda != 0;
    (iv)  the closure of theta is the whole root-lattice part of the alcove.
    """
    if m < 1:
        raise ValueError("m must be positive")
    k = 3 * m
    nu = Weight(m, m)
    checks: dict = {}

    n_nu = fusion_coeff(nu, nu, nu, k)
    checks["n_nu_nu_nu"] = {"value": n_nu, "expected": m + 1, "passed": n_nu == m + 1}

    dim_x = qdim_sine(nu, k) / 3
    closed = stationary_dim_closed_form(m)
    if m >= 3:
        margin = dim_x - (m + 3)
        checks["dimension_bound"] = {
            "dim_x": dim_x,
            "closed_form": closed,
            "lower_bound": stationary_dim_lower_bound(m),
            "bound": m + 3,
            "margin": margin,
            "passed": margin > 0 and abs(dim_x - closed) < 1e-9,
        }
    elif m == 2:
        simple = is_simple_category(resolved_fusion_table(6))
        checks["dimension_bound"] = {
            "dim_x": dim_x,
            "closed_form": closed,
            "bound": m + 3,
            "method": "resolved fusion table",
            "resolved_table_simple": simple,
            "passed": simple,
        }
    else:
        simple = is_simple_category(resolved_fusion_table(3))
        checks["dimension_bound"] = {
            "dim_x": dim_x,
            "closed_form": closed,
            "method": "resolved fusion table",
            "resolved_table_simple": simple,
            "note": "not simple (pointed Z/2xZ/2)",
            "passed": not simple,
        }

    failures = []
    for s in condensed_simples(k):
        if s.kind == "free" and s.representative != ZERO:
            # N_{lam, lam*}^theta = N_{lam, theta}^lam since theta is self-dual
            if fusion_coeff(s.representative, THETA, s.representative, k) <= 0:
                failures.append(list(s.representative))
    checks["adjoint_in_dual_square"] = {"failures": failures, "passed": not failures}

    closure = subcategory_closure([THETA], FusionTable(k))
    r0 = set(root_lattice_weights(k))
    checks["adjoint_generates_root_lattice"] = {
        "closure_size": len(closure),
        "root_lattice_size": len(r0),
        "passed": set(closure) == r0,
    }

    rest_ok = all(checks[c]["passed"] for c in ("adjoint_in_dual_square", "adjoint_generates_root_lattice"))
    if m == 1:
        verdict = "not simple" if checks["dimension_bound"]["passed"] and rest_ok else "failed"
    elif m == 2:
        verdict = "simple" if checks["dimension_bound"]["passed"] and rest_ok else "failed"
    else:
        verdict = "certified simple" if checks["dimension_bound"]["passed"] and rest_ok else "failed"
    return {"m": m, "checks": checks, "verdict": verdict}
