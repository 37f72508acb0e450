"""Central-charge ledger for Witt classes.

Every entry carries an exponent lam with xi = exp(lam * pi i), kept as an
exact rational in [0, 2).  Products add exponents and reversal negates them,
so a relation prod [C_i]^{a_i} = prod [D_j]^{b_j} can only hold if
sum a_i lam(C_i) - sum b_j lam(D_j) vanishes mod 2.  That is a necessary
condition only; a zero residue never proves a relation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .alcove import root_lattice_weights
from .cyclo import root_of_unity
from .fusion import dual
from .modular import charge_fraction_closed_form, gauss_sum_charge, pointed_charge_fraction

# (dim g, dual Coxeter number)
LIE_DATA = {
    "E6": (78, 12),
    "E7": (133, 18),
    "E8": (248, 30),
}


def lie_data(g: str) -> tuple[int, int]:
    m = re.fullmatch(r"sl(\d+)", g)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise ValueError(f"unknown Lie algebra {g!r}")
        return n * n - 1, n
    if g in LIE_DATA:
        return LIE_DATA[g]
    raise ValueError(f"unknown Lie algebra {g!r}")


def _mod2(x: Fraction) -> Fraction:
    return Fraction(x) % 2


@dataclass(frozen=True)
class WittEntry:
    label: str
    charge_exponent: Fraction
    provenance: str  # closed-form | gauss-sum | quotient
    simple_count: int | None = None
    self_dual: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "charge_exponent", _mod2(self.charge_exponent))


def _closed(g: str, k: int) -> Fraction:
    d, h = lie_data(g)
    return 2 * charge_fraction_closed_form(d, h, k)


def _metric_group_exponent(n: int, r: Fraction) -> Fraction:
    """Charge exponent of C(Z/n, q) with q(l) = exp(2 pi i r l^2)."""
    N = r.denominator
    twists = [root_of_unity(N, (r.numerator * l * l) % N) for l in range(n)]
    dims = [root_of_unity(N, 0)] * n
    _, frac = gauss_sum_charge(twists, dims)
    return 2 * frac


def _sl3_pt_data(k: int) -> tuple[int, bool]:
    r0 = root_lattice_weights(k)
    return len(r0), all(dual(w) == w for w in r0)


def _sl3_condensed_data(k: int) -> tuple[int, bool]:
    from .condense import condensed_simples

    simples = condensed_simples(k)
    free = [s for s in simples if s.kind == "free"]
    self_dual = all(dual(s.representative) in s.orbit for s in free)
    return len(simples), self_dual


_PATTERNS = [
    (re.compile(r"C\(sl3,(\d+)\)'_pt"), "sl3_centralizer"),
    (re.compile(r"C\(sl3,(\d+)\)_pt"), "sl3_pointed"),
    (re.compile(r"C\(sl3,(\d+)\)_A\^0"), "sl3_condensed"),
    (re.compile(r"C\(sl2,(\d+)\)'_pt"), "sl2_centralizer"),
    (re.compile(r"C\(Z/(\d+),q=(-?\d+(?:/\d+)?)\)"), "metric_group"),
    (re.compile(r"C\(([A-Za-z]+\d+),(\d+)\)"), "lie"),
]


@lru_cache(maxsize=None)
def resolve(label: str) -> WittEntry:
    """Turn a ledger label into an entry with its charge exponent."""
    label = label.replace(" ", "")
    if label == "Vec":
        return WittEntry(label, Fraction(0), "closed-form", 1, True)
    for pattern, kind in _PATTERNS:
        m = pattern.fullmatch(label)
        if not m:
            continue
        if kind == "lie":
            g, k = m.group(1), int(m.group(2))
            if k < 1:
                break
            return WittEntry(label, _closed(g, k), "closed-form")
        if kind == "metric_group":
            n, r = int(m.group(1)), Fraction(m.group(2))
            if n < 1:
                break
            return WittEntry(label, _metric_group_exponent(n, r), "gauss-sum", n, None)
        k = int(m.group(1))
        if k < 1:
            break
        if kind == "sl3_pointed":
            if k % 3 == 0:
                raise ValueError(f"{label}: pointed part is degenerate when 3 divides k")
            return WittEntry(label, 2 * pointed_charge_fraction(k), "gauss-sum", 3, False)
        if kind == "sl3_centralizer":
            if k % 3 == 0:
                raise ValueError(f"{label}: no Mueger factorization when 3 divides k")
            count, sd = _sl3_pt_data(k)
            lam = _closed("sl3", k) - 2 * pointed_charge_fraction(k)
            return WittEntry(label, lam, "quotient", count, sd)
        if kind == "sl3_condensed":
            if k % 3:
                raise ValueError(f"{label}: no Type-D algebra at this level")
            count, sd = _sl3_condensed_data(k)
            # condensation by a connected etale algebra preserves the charge
            return WittEntry(label, _closed("sl3", k), "closed-form", count, sd)
        if kind == "sl2_centralizer":
            if k % 2 == 0:
                raise ValueError(f"{label}: only odd levels factor off their pointed part")
            pt = _metric_group_exponent(2, Fraction(k, 4))
            return WittEntry(label, _closed("sl2", k) - pt, "quotient", (k + 1) // 2, True)
    raise ValueError(f"unresolvable label {label!r}")


# -- lambda families ------------------------------------------------------------

FAMILY_EXCLUSIONS = {1: {0}, 2: {1}, 3: {0, 1, 3, 7}}


def is_admissible(family: int, m: int) -> bool:
    if family not in FAMILY_EXCLUSIONS:
        raise ValueError("family must be 1, 2 or 3")
    return m >= 0 and m not in FAMILY_EXCLUSIONS[family]


def lambda_invariant(family: int, m: int) -> Fraction:
    """Charge exponent of the m-th member of a representative family.

    1: C(sl3, 3m+1)'_pt, 2: C(sl3, 3m+2)'_pt, 3: C(sl3, 3m)_A^0.
    """
    if not is_admissible(family, m):
        excl = sorted(FAMILY_EXCLUSIONS.get(family, ()))
        raise ValueError(f"family {family} requires m >= 0 and m not in {excl}; got m={m}")
    return lambda_formula(family, m)


def lambda_formula(family: int, m: int) -> Fraction:
    """The closed form behind lambda_invariant, without the admissibility gate."""
    if family == 1:
        return Fraction(9 * m, 6 * m + 8)
    if family == 2:
        return Fraction(3 * m - 7, 6 * m + 10)
    return Fraction(2 * m, m + 1)


def family_label(family: int, m: int) -> str:
    return {1: f"C(sl3,{3 * m + 1})'_pt", 2: f"C(sl3,{3 * m + 2})'_pt", 3: f"C(sl3,{3 * m})_A^0"}[family]


def lambda_table(max_m: int = 2) -> dict[int, dict[int, str]]:
    out: dict[int, dict[int, str]] = {}
    for m in range(max_m + 1):
        out[m] = {}
        for fam in (1, 2, 3):
            out[m][fam] = str(lambda_invariant(fam, m)) if is_admissible(fam, m) else "n/a"
    return out


def check_inequality_chain(r_range=range(3, 51), s_range=range(3, 51), t_range=range(3, 51)) -> dict:
    """2 > lam3(r) >= 3/2 > lam1(s) > 1 > 1/2 > lam2(t) > 0 over admissible inputs.

    The chain splits into independent bounds per family, so each range is
    scanned once.
    """
    half, three_halves = Fraction(1, 2), Fraction(3, 2)
    failures = []
    skipped = []
    for fam, rng, ok in (
        (3, r_range, lambda x: three_halves <= x < 2),
        (1, s_range, lambda x: 1 < x < three_halves),
        (2, t_range, lambda x: 0 < x < half),
    ):
        for m in rng:
            if m < 3:
                raise ValueError("chain inputs must be at least 3")
            if not is_admissible(fam, m):
                skipped.append((fam, m))
                continue
            lam = lambda_invariant(fam, m)
            if not ok(lam):
                failures.append({"family": fam, "m": m, "value": str(lam)})
    return {
        "holds": not failures,
        "failures": failures,
        "skipped": [{"family": f, "m": m} for f, m in skipped],
        "checked": sum(len(list(r)) for r in (r_range, s_range, t_range)) - len(skipped),
    }


# -- relations --------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """prod lhs[label]^power = prod rhs[label]^power in the Witt group."""

    name: str
    lhs: tuple[tuple[str, int], ...]
    rhs: tuple[tuple[str, int], ...]
    source: str
    note: str = ""

    def text(self) -> str:
        def side(terms):
            if not terms:
                return "[Vec]"
            parts = []
            for lab, p in terms:
                parts.append(f"[{lab}]" + ("" if p == 1 else f"^{p}"))
            return "".join(parts)

        return f"{side(self.lhs)} = {side(self.rhs)}"


@dataclass
class Ledger:
    relations: dict[str, Relation] = field(default_factory=dict)

    def register(self, rel: Relation) -> None:
        for lab, _ in rel.lhs + rel.rhs:
            resolve(lab)
        if rel.name in self.relations:
            raise ValueError(f"relation {rel.name!r} already registered")
        self.relations[rel.name] = rel


def residue(rel: Relation) -> Fraction:
    total = Fraction(0)
    for lab, p in rel.lhs:
        total += p * resolve(lab).charge_exponent
    for lab, p in rel.rhs:
        total -= p * resolve(lab).charge_exponent
    return total % 2


def check_relation(rel: Relation) -> dict:
    res = residue(rel)
    return {
        "relation": rel.text(),
        "name": rel.name,
        "source": rel.source,
        "residue": str(res),
        "verdict": "consistent" if res == 0 else "FLAGGED",
    }


def _rel(name, lhs, rhs, source, note=""):
    return Relation(name, tuple(lhs), tuple(rhs), source, note)


SL3 = "C(sl3,{})".format
SL2 = "C(sl2,{})".format

MAIN_RELATIONS = (
    _rel("sl3-1-order-4", [(SL3(1), 4)], [], "order relation: level 1 has order 4"),
    _rel("sl3-3-order-2", [(SL3(3), 2)], [], "order relation: level 3 has order 2"),
    _rel("sl3-5-order-2", [(SL3(5), 2)], [], "order relation: level 5 has order 2"),
    _rel("sl3-1-cubed", [(SL3(1), 3)], [(SL3(9), 1)], "order relation: level 1 cubed is level 9"),
    _rel("sl3-21-order-8", [(SL3(21), 8)], [], "order relation: level 21 has order 8"),
    _rel("ising-sl3-3", [(SL3(3), 1)], [(SL2(2), 8)], "Ising subgroup"),
    _rel("ising-sl2-6", [(SL3(3), 1), (SL2(2), 11)], [(SL2(6), 2)], "Ising subgroup, shifted"),
    _rel("sl3-21-sl2-1", [(SL3(21), 1), (SL2(1), 1)], [], "E7 level 1 embedding"),
    _rel("sl3-2-sl2-28", [(SL3(2), 1), (SL2(28), 1)], [(SL3(9), 1)], "pointed factor at level 2"),
    _rel("sl2-4-sl3-1", [(SL2(4), 1)], [(SL3(1), 1)], "sl2 level 4 embedding"),
    _rel("sl2-4-cubed", [(SL2(4), 3)], [(SL3(9), 1)], "sl2 level 4 embedding, cubed"),
    _rel("sl3-6-sl2-16", [(SL3(6), 1), (SL2(16), 1)], [], "E8 level 1 embedding"),
    _rel("sl3-4-sl3-1-sl2-12", [(SL3(4), 1), (SL3(1), 1)], [(SL2(12), 1)], "rank 5 coincidence"),
)

SUPPLEMENTARY_RELATIONS = (
    _rel(
        "sl3-4-sl3-1-inverse",
        [(SL3(4), 1), (SL3(1), -1)],
        [(SL2(12), 1)],
        "variant",
        "the product with the inverse class passes; reported only as a variant",
    ),
    _rel("sl3-9-E6-1", [(SL3(9), 1)], [("C(E6,1)", 1)], "conformal embedding"),
    _rel("E6-1-pointed", [("C(E6,1)", 1)], [(SL3(2) + "_pt", 1)], "pointed identification"),
    _rel("sl3-21-E7-1", [(SL3(21), 1)], [("C(E7,1)", 1)], "conformal embedding"),
    _rel("E7-1-sl2-1-rev", [("C(E7,1)", 1)], [(SL2(1), -1)], "pointed identification"),
    _rel(
        "sl3-5-sl5-1",
        [(SL3(5), 1)],
        [("C(sl5,1)", 1)],
        "conformal embedding as named",
        "the embedding of sl3 level 5 lands in sl6 level 1, which has 6 simples",
    ),
    _rel("sl3-5-sl6-1", [(SL3(5), 1)], [("C(sl6,1)", 1)], "conformal embedding, corrected rank"),
    _rel("sl5-1-metric", [("C(sl5,1)", 1)], [("C(Z/5,q=2/5)", 1)], "sl_n level 1 is pointed"),
    _rel("sl6-1-metric", [("C(sl6,1)", 1)], [("C(Z/6,q=5/12)", 1)], "sl_n level 1 is pointed"),
)


def default_ledger(include_supplementary: bool = False) -> Ledger:
    ledger = Ledger()
    for rel in MAIN_RELATIONS:
        ledger.register(rel)
    if include_supplementary:
        for rel in SUPPLEMENTARY_RELATIONS:
            ledger.register(rel)
    return ledger


def expected_pattern() -> dict[str, dict[str, str]]:
    text = resources.files("sl3mtc").joinpath("data/witt_expected.json").read_text(encoding="utf-8")
    return json.loads(text)


def self_dual_representatives(max_m: int) -> list[str]:
    """Family members (m <= max_m) with more than one simple, all self-dual.

    Members excluded from the families for being isotropic are scanned too,
    since self-duality is used to tell representatives apart.
    """
    out = []
    for fam in (1, 2, 3):
        for m in range(max_m + 1):
            if fam == 3 and m == 0:
                continue
            entry = resolve(family_label(fam, m))
            if entry.simple_count > 1 and entry.self_dual:
                out.append(entry.label)
    return out


def run_full_ledger(max_m: int = 10) -> dict:
    """Check every registered relation and compare with the shipped pattern."""
    main = [check_relation(s) for s in MAIN_RELATIONS]
    supplementary = [check_relation(s) for s in SUPPLEMENTARY_RELATIONS]
    for row, rel in zip(supplementary, SUPPLEMENTARY_RELATIONS):
        if rel.note:
            row["note"] = rel.note
    expected = expected_pattern()
    mismatches = []
    for row in main:
        want = expected.get(row["name"])
        if want is None or want["verdict"] != row["verdict"] or want["residue"] != row["residue"]:
            mismatches.append(row["name"])
    if set(expected) != {r["name"] for r in main}:
        mismatches.append("relation set differs from expected pattern")
    families = {}
    for fam in (1, 2, 3):
        families[str(fam)] = [
            {"m": m, "label": family_label(fam, m), "lambda": str(lambda_invariant(fam, m))}
            for m in range(max_m + 1)
            if is_admissible(fam, m)
        ]
    return {
        "relations": main,
        "supplementary": supplementary,
        "pattern_matches": not mismatches,
        "mismatches": mismatches,
        "flagged": [r["name"] for r in main if r["verdict"] == "FLAGGED"],
        "lambda_table": {str(m): {str(f): v for f, v in row.items()} for m, row in lambda_table(2).items()},
        "families": families,
        "inequality_chain": check_inequality_chain(),
        "self_dual": self_dual_representatives(min(max_m, 10)),
    }
