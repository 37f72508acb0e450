"""Acceptance checks, one function per criterion, plus supplementary sweeps.

Each check returns a :class:`CheckResult` whose ``details`` are plain JSON
values (exact quantities as strings), so a report is byte-for-byte
reproducible.  ``flagged`` lists expected discrepancies that the check
reports without failing.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from .alcove import Weight, alcove_weights, corner_weights, root_lattice_weights
from .condense import (
    STATIONARY,
    compare_k6_reference,
    condensed_charge,
    condensed_global_dim,
    condensed_modular,
    modular_invariant,
    resolved_fusion_table,
    simplicity_certificate,
)
from .cyclo import Cyclo, root_of_unity, to_complex
from .fusion import check_table_axioms, fusion_coeff, fusion_product, fusion_subcategories, fusion_table
from .modular import (
    MODULAR_RELATION,
    centralizer,
    centralizer_charge_fraction,
    charge_fraction_closed_form,
    conductor,
    fp_dimension_deviation,
    gauss_sum_charge,
    modular_data,
    modular_relation_deviation,
    qdim,
    twist,
    verlinde_check,
)
from .witt import check_inequality_chain, lambda_formula, lambda_invariant, run_full_ledger

DEFAULT_MAX_LEVEL = 8
DEFAULT_MAX_M = 10


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    flagged: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" (flagged: {', '.join(self.flagged)})" if self.flagged else ""
        return f"criterion {self.number:2d} {status}  {self.title}{extra}"


def _z3_index(w: Weight) -> int:
    return {(0, 0): 0, (1, 0): 1, (0, 1): 2}[tuple(w)]


def check_level_one_fusion() -> CheckResult:
    table = fusion_table(1)
    wrong = []
    for a in table.labels:
        for b in table.labels:
            want = {c: 1 for c in table.labels if _z3_index(c) == (_z3_index(a) + _z3_index(b)) % 3}
            if table.product(a, b) != want:
                wrong.append([list(a), list(b)])
    k2 = fusion_product((1, 0), (0, 1), 2)
    k2_ok = k2 == {Weight(0, 0): 1, Weight(1, 1): 1}
    axioms = check_table_axioms(fusion_table(2))
    return CheckResult(
        1,
        "level 1 fusion is the Z/3 group law; level 2 table is a fusion ring",
        not wrong and k2_ok and all(axioms.values()),
        {"z3_mismatches": wrong, "level2_sample": k2_ok, "level2_axioms": axioms},
    )


def check_central_multiplicity(max_m: int = 8) -> CheckResult:
    values = {}
    for m in range(1, max_m + 1):
        nu = (m, m)
        values[str(m)] = fusion_coeff(nu, nu, nu, 3 * m)
    ok = all(values[str(m)] == m + 1 for m in range(1, max_m + 1))
    return CheckResult(2, f"N_(m,m)(m,m)^(m,m) = m+1 for m = 1..{max_m}", ok, {"values": values})


def check_corner_twists(max_level: int = 24) -> CheckResult:
    bad = []
    for k in range(1, max_level + 1):
        want = root_of_unity(3, k % 3)
        if twist((0, k), k) != want or twist((k, 0), k) != want:
            bad.append(k)
    return CheckResult(3, f"corner twists equal exp(2 pi i k/3) for k = 1..{max_level}", not bad, {"failures": bad})


def check_corner_centralizer(levels=range(2, 9)) -> CheckResult:
    bad = []
    for k in levels:
        md = modular_data(k)
        cent = centralizer(corner_weights(k), md)
        if sorted(cent) != sorted(root_lattice_weights(k)):
            bad.append(k)
    return CheckResult(
        4,
        f"centralizer of the corners is the root-lattice part, k = {levels[0]}..{levels[-1]}",
        not bad,
        {"failures": bad},
    )


def check_subcategory_count(levels=range(2, 7)) -> CheckResult:
    counts = {str(k): len(fusion_subcategories(k)) for k in [1, *levels]}
    ok = counts["1"] == 2 and all(counts[str(k)] == 4 for k in levels)
    return CheckResult(5, "4 fusion subcategories for k = 2..6, 2 at k = 1", ok, {"counts": counts})


def _gauss_fraction(k: int) -> Fraction:
    labels = alcove_weights(k).weights
    _, r = gauss_sum_charge([twist(w, k) for w in labels], [qdim(w, k) for w in labels])
    return r


def check_charges(max_level: int = 12, max_m: int = 8) -> CheckResult:
    mismatches = []
    for k in range(1, max_level + 1):
        closed = charge_fraction_closed_form(8, 3, k)
        if closed != Fraction(k, k + 3) % 1 or _gauss_fraction(k) != closed:
            mismatches.append(k)
    level2 = _gauss_fraction(2) == Fraction(2, 5)
    fam = []
    for m in range(1, max_m + 1):
        if 2 * centralizer_charge_fraction(3 * m + 1) % 2 != lambda_formula(1, m) % 2:
            fam.append(["1", m])
        if 2 * centralizer_charge_fraction(3 * m + 2) % 2 != lambda_formula(2, m) % 2:
            fam.append(["2", m])
    table = {
        "lambda1(1)": (lambda_invariant(1, 1), Fraction(9, 14)),
        "lambda1(2)": (lambda_invariant(1, 2), Fraction(9, 10)),
        "lambda2(0)": (lambda_invariant(2, 0), Fraction(-7, 10)),
        "lambda2(2)": (lambda_invariant(2, 2), Fraction(-1, 22)),
        "lambda3(2)": (lambda_invariant(3, 2), Fraction(4, 3)),
    }
    table_ok = all(a == b for a, b in table.values())
    # the tabulated values must also be the charges of the actual categories
    realized = {
        "lambda1(1)": 2 * centralizer_charge_fraction(4),
        "lambda1(2)": 2 * centralizer_charge_fraction(7),
        "lambda2(0)": 2 * centralizer_charge_fraction(2),
        "lambda2(2)": 2 * centralizer_charge_fraction(8),
        "lambda3(2)": 2 * condensed_charge(6)[1],
    }
    realized_ok = all((realized[key] - table[key][1]) % 2 == 0 for key in table)
    ok = not mismatches and level2 and not fam and table_ok and realized_ok
    return CheckResult(
        6,
        f"Gauss-sum charges match the closed form (k <= {max_level}) and the family exponents",
        ok,
        {
            "level_mismatches": mismatches,
            "level2_exp_4pi_i_over_5": level2,
            "family_mismatches": fam,
            "table": {key: str(v[0]) for key, v in table.items()},
            "table_realized": realized_ok,
        },
    )


def check_condensation_k3() -> CheckResult:
    md = condensed_modular(3)
    table = resolved_fusion_table(3)
    one = Cyclo.one(conductor(3))
    dims_ok = len(md.labels) == 4 and all(d == one for d in md.dims)
    # Z/2 x Z/2: every simple squares to the unit and X_i X_j = X_k
    group_ok = all(table.product(a, a) == {"Y1": 1} for a in table.labels)
    for i, a in enumerate(STATIONARY):
        for j, b in enumerate(STATIONARY):
            if i != j:
                (c,) = set(STATIONARY) - {a, b}
                group_ok &= table.product(a, b) == {c: 1}
    twists_ok = [t == Cyclo.from_rational(s, conductor(3)) for t, s in zip(md.twists, (1, -1, -1, -1))]
    D = md.global_dim
    D_ok = D == Cyclo.from_rational(4, conductor(3)) and modular_data(3).global_dim / 9 == D
    return CheckResult(
        7,
        "level 3 condensation is pointed Z/2 x Z/2 with twists (1,-1,-1,-1), global dim 4",
        dims_ok and group_ok and all(twists_ok) and D_ok,
        {"dims_one": dims_ok, "klein_four": group_ok, "twists": all(twists_ok), "global_dim_4": D_ok},
    )


K6_EXPECTED = {
    ("X1", "X1"): {"Y1": 1, "Y3": 1, "X1": 1},
    ("X1", "X2"): {"Y2": 1, "X3": 1},
    ("Y2", "X1"): {"Y2": 1, "Y3": 1, "X2": 1, "X3": 1},
    ("Y3", "X1"): {"Y2": 1, "Y3": 1, "X1": 1},
    ("Y2", "Y2"): {"Y1": 1, "Y2": 2, "Y3": 2, "X1": 1, "X2": 1, "X3": 1},
    ("Y2", "Y3"): {"Y2": 2, "Y3": 1, "X1": 1, "X2": 1, "X3": 1},
    ("Y3", "Y3"): {"Y1": 1, "Y2": 1, "Y3": 1, "X1": 1, "X2": 1, "X3": 1},
}


def _k6_rule(a: str, b: str) -> dict[str, int] | None:
    """Expected product for any pair, obtained by relabelling the X indices."""
    xs = list(STATIONARY)
    for (p, q), prod in K6_EXPECTED.items():
        for shift in range(3):
            for flip in (False, True):
                def mp(lab, shift=shift, flip=flip):
                    if lab not in xs:
                        return lab
                    i = xs.index(lab)
                    return xs[((-i if flip else i) + shift) % 3]

                if (mp(p), mp(q)) in ((a, b), (b, a)):
                    return {mp(c): n for c, n in prod.items()}
    return None


def check_condensation_k6() -> CheckResult:
    table = resolved_fusion_table(6)
    bad = []
    for a in table.labels:
        for b in table.labels:
            want = _k6_rule(a, b)
            if want is not None and table.product(a, b) != want:
                bad.append(f"{a}*{b}")
    md = condensed_modular(6)
    verlinde_ok, verlinde_dev = verlinde_check(md, table)
    ref = compare_k6_reference()
    zeta = ref["first_row"][2]
    eps = ref["first_row"][3]
    cubic_ok = abs(zeta**3 - 3 * zeta**2 - 6 * zeta - 1) < 1e-9 and abs(eps**3 - 3 * eps**2 + 1) < 1e-9
    # the T display agrees entry by entry up to conjugation, but not by one global conjugation
    t_ok = ref["t_entrywise_up_to_conjugation"]
    flagged = []
    if not ref["t_global_conjugate_match"]:
        flagged.append("T: entries " + ",".join(ref["t_flagged"]) + " conjugated; no global conjugation reconciles")
    ok = not bad and verlinde_ok and ref["s_match"] and cubic_ok and t_ok
    return CheckResult(
        8,
        "level 6 condensation: resolved table, S-matrix, Verlinde",
        ok,
        {
            "table_mismatches": bad,
            "ring_candidates": table.ring_candidates,
            "s_max_deviation": f"{ref['s_max_deviation']:.3e}",
            "first_row": [round(x, 12) for x in ref["first_row"]],
            "cubic_roots": cubic_ok,
            "verlinde": verlinde_ok,
            "verlinde_below_1e-9": verlinde_dev < 1e-9,
            "t_entries": ref["t_entries"],
            "t_global_conjugate_match": ref["t_global_conjugate_match"],
            "st_cubed_with_displayed_T_below_1e-9": ref["modular_relation"]["displayed_T"] < 1e-9,
            "st_cubed_with_computed_T_below_1e-9": ref["modular_relation"]["computed_T"] < 1e-9,
        },
        flagged,
    )


def check_simplicity(max_m: int = 20) -> CheckResult:
    verdicts = {}
    margins = {}
    for m in range(1, max_m + 1):
        cert = simplicity_certificate(m)
        verdicts[str(m)] = cert["verdict"]
        if m >= 3:
            margins[str(m)] = round(cert["checks"]["dimension_bound"]["margin"], 9)
    ok = verdicts.get("1") == "not simple" and verdicts.get("2") == "simple"
    ok = ok and all(verdicts[str(m)] == "certified simple" for m in range(3, max_m + 1))
    ok = ok and all(v > 0 for v in margins.values())
    return CheckResult(9, f"simplicity certificates for m = 1..{max_m}", ok, {"verdicts": verdicts, "margins": margins})


def check_modular_invariant(levels=(3, 6, 9, 12)) -> CheckResult:
    reports = {}
    for k in levels:
        _, rep = modular_invariant(k)
        reports[str(k)] = {key: rep[key] for key in ("z00", "nonnegative_integer", "zs_exact", "zt_exact", "passed")}
        reports[str(k)]["zs_float_below_1e-9"] = rep["zs_float"]
        reports[str(k)]["zt_float_below_1e-9"] = rep["zt_float"]
    ok = all(r["passed"] for r in reports.values())
    return CheckResult(10, "Z = b b^T commutes with S and T at k = " + ",".join(map(str, levels)), ok, reports)


def check_verlinde(max_level: int = 6) -> CheckResult:
    out = {}
    for k in range(1, max_level + 1):
        ok, dev = verlinde_check(modular_data(k))
        out[str(k)] = {"agree": ok, "below_1e-6": dev < 1e-6}
    ok = all(v["agree"] and v["below_1e-6"] for v in out.values())
    return CheckResult(11, f"Verlinde formula reproduces the folding table for k <= {max_level}", ok, out)


def check_witt_pattern() -> CheckResult:
    ledger = run_full_ledger()
    flagged = {r["name"]: r["residue"] for r in ledger["relations"] if r["verdict"] == "FLAGGED"}
    ok = ledger["pattern_matches"] and flagged == {"sl3-5-order-2": "1/2", "sl3-4-sl3-1-sl2-12": "1"}
    return CheckResult(
        12,
        "Witt ledger matches the shipped verdict pattern",
        ok,
        {"relations": ledger["relations"], "mismatches": ledger["mismatches"]},
        [f"{name} residue {res}" for name, res in flagged.items()],
    )


def check_chain(lo: int = 3, hi: int = 50) -> CheckResult:
    rng = range(lo, hi + 1)
    rep = check_inequality_chain(rng, rng, rng)
    return CheckResult(13, f"inequality chain holds for admissible r, s, t in {lo}..{hi}", rep["holds"], rep)


# -- supplementary sweeps -------------------------------------------------------

def sweep_levels(max_level: int) -> dict:
    """Ring axioms, modular relations and Frobenius-Perron dims for k <= max_level."""
    out = {}
    for k in range(1, max_level + 1):
        table = fusion_table(k)
        axioms = check_table_axioms(table, samples=None if k <= 6 else 200)
        md = modular_data(k)
        dev = modular_relation_deviation(md)
        fp = fp_dimension_deviation(md, table)
        out[str(k)] = {
            "axioms": all(axioms.values()),
            "modular_relation_below_1e-9": all(v < 1e-9 for v in dev.values()),
            "fp_dims_below_1e-9": fp < 1e-9,
        }
    return out


def sweep_condensed(max_m: int) -> dict:
    """Global dimension and charge of the condensed categories for k = 3m <= 3 max_m."""
    out = {}
    for m in range(1, max_m + 1):
        k = 3 * m
        dims = [qdim(w, k) for w in alcove_weights(k)]
        parent_D = sum((to_complex(d).real ** 2 for d in dims))
        cD = to_complex(condensed_global_dim(k)).real
        c_r = condensed_charge(k)[1]
        out[str(m)] = {
            "global_dim_ratio_9": abs(parent_D / cD - 9) < 1e-9,
            "charge_preserved": c_r == charge_fraction_closed_form(8, 3, k),
        }
    return out


CRITERIA = (
    check_level_one_fusion,
    check_central_multiplicity,
    check_corner_twists,
    check_corner_centralizer,
    check_subcategory_count,
    check_charges,
    check_condensation_k3,
    check_condensation_k6,
    check_simplicity,
    check_modular_invariant,
    check_verlinde,
    check_witt_pattern,
    check_chain,
)


def run_all(max_level: int = DEFAULT_MAX_LEVEL, max_m: int = DEFAULT_MAX_M) -> dict:
    """Run all criteria and sweeps.

    Criteria always cover their stated ranges; ``max_level`` and ``max_m``
    can only extend them.  They also bound the level sweep and the
    condensed-category sweep.
    """
    results = [
        check_level_one_fusion(),
        check_central_multiplicity(max(8, max_m)),
        check_corner_twists(max(24, max_level)),
        check_corner_centralizer(range(2, max(8, max_level) + 1)),
        check_subcategory_count(),
        check_charges(max(12, max_level)),
        check_condensation_k3(),
        check_condensation_k6(),
        check_simplicity(max(20, max_m)),
        check_modular_invariant(),
        check_verlinde(6),
        check_witt_pattern(),
        check_chain(),
    ]
    sweeps = {"levels": sweep_levels(max_level), "condensed": sweep_condensed(min(max_m, 4))}
    sweeps_ok = all(all(v.values()) for group in sweeps.values() for v in group.values())
    return {
        "tool_version": __version__,
        "parameters": {"max_level": max_level, "max_m": max_m},
        "conventions": {
            "modular_relation": MODULAR_RELATION,
            "t_conjugation": "twists computed from weights, never conjugated; displayed level 6 T compared entrywise",
        },
        "criteria": [asdict(r) for r in results],
        "lines": [r.line() for r in results],
        "sweeps": sweeps,
        "passed": all(r.passed for r in results) and sweeps_ok,
    }

