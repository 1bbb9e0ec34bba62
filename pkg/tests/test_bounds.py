"""Frozen oracles for the sandwich bound reports.

Every expected value is hand-derived in a comment from the primitive
invariants (frozen in their own test files); nothing below recomputes
an expectation through the module under test.
"""

import json
from fractions import Fraction

import pytest

from ramlock.bounds import (
    Caps,
    abstract_bounds,
    exact_structure_cases,
    ordinary_bounds,
    ozeki_tower,
    product_aggregate,
    supersingular_bounds,
)
from ramlock.elliptic import WeierstrassCurve
from ramlock.errors import (
    ConsistencyError,
    FieldMismatch,
    InconsistentInput,
    NotOrdinary,
    NotSupersingular,
    OrderViolation,
    TorsionHypothesisFails,
)
from ramlock.galmod import AbGroupStructure, FiniteGaloisModule
from ramlock.unitsymbols import NotFound


# ---------------------------------------------------------------------------
# abstract sandwich (user-supplied g, N, Mur)


def test_abstract_split_case():
    # N = Mur = 1 splits the sandwich: exact (Z/3)^2
    r = abstract_bounds(2, 1, 1, p=3)
    assert r.lower.divisors == (3, 3)
    assert r.upper.divisors == (3, 3)
    assert r.exact is not None and r.exact.divisors == (3, 3)
    assert r.case == "split_sandwich"
    assert "user_supplied_bounds" in r.caveats


def test_abstract_trivial():
    r = abstract_bounds(1, 0, 0, p=5)
    assert r.lower.is_trivial() and r.upper.is_trivial()
    assert r.exact is not None and r.exact.is_trivial()


def test_abstract_sandwich_open():
    # N < Mur leaves the middle undetermined
    r = abstract_bounds(1, 1, 2, p=5)
    assert r.lower.divisors == (5,)
    assert r.upper.divisors == (25,)
    assert r.exact is None and r.case is None


def test_abstract_rejects_bad_input():
    with pytest.raises(OrderViolation):
        abstract_bounds(1, 2, 1, p=5)
    with pytest.raises(InconsistentInput):
        abstract_bounds(0, 1, 1, p=5)
    with pytest.raises(InconsistentInput):
        abstract_bounds(1, -1, 0, p=5)


def test_abstract_json_shape():
    r = abstract_bounds(2, 1, 1, p=3)
    d = r.to_json_dict()
    assert set(d) == {"field", "curve", "invariants", "bounds", "caveats"}
    assert set(d["invariants"]) == {"M", "Mur", "N", "Nhat", "e0", "t0", "R"}
    assert d["bounds"]["lower"] == [3, 3]
    assert d["bounds"]["exact"] == [3, 3]
    assert d["invariants"]["N"] == 1
    assert d["invariants"]["Mur"] == 1
    assert d["invariants"]["t0"] is None
    # round-trips through the serializer
    assert json.loads(json.dumps(d)) == d


# ---------------------------------------------------------------------------
# ordinary reports


def test_ordinary_low_ramification_q5(e5_q5, q5):
    # e = 1 < p - 1 = 4 forces Mur = 0 and everything trivial
    r = ordinary_bounds(e5_q5, q5)
    assert (r.N, r.Nhat, r.M, r.Mur) == (0, 0, 0, 0)
    assert r.e0 == Fraction(1, 4)
    assert r.lower.is_trivial() and r.upper.is_trivial()
    assert r.exact is not None and r.exact.is_trivial()
    assert r.case == "low_ramification"
    d = r.to_json_dict()
    assert d["invariants"]["e0"] == "1/4"
    assert d["invariants"]["t0"] is None
    assert d["bounds"]["case"] == "low_ramification"


def test_ordinary_unramified_host(e5_unram4, unram4_5):
    # unramified base change keeps e = 1 < 4: still the trivial report
    r = ordinary_bounds(e5_unram4, unram4_5)
    assert (r.N, r.Nhat, r.M, r.Mur) == (0, 0, 0, 0)
    assert r.exact is not None and r.exact.is_trivial()
    assert r.case == "low_ramification"


def test_ordinary_torsion_tower(e5_tower, tower16_ord):
    # over Q_5(zeta_5) . unram4: N = Nhat = M = Mur = 1, so the sandwich
    # pinches and the refined upper agrees: exact Z/5
    r = ordinary_bounds(e5_tower, tower16_ord)
    assert (r.N, r.Nhat, r.M, r.Mur) == (1, 1, 1, 1)
    assert r.lower.divisors == (5,)
    assert r.upper.divisors == (5,)
    assert r.exact is not None and r.exact.divisors == (5,)
    assert r.case == "formal_torsion_match"
    assert r.upper.surjects_onto(r.lower)
    assert r.e0 == Fraction(1)
    assert r.to_json_dict()["invariants"]["e0"] == "1/1"


def test_ordinary_twisted_formal_part(e5_q5, kz5):
    # over Q_5(zeta_5) alone the formal 5-torsion is mu_5 twisted by
    # the unramified quartic character carried by the unit root, so it
    # is not rational: N = Nhat = 0 even though mu_5 is in the field,
    # and the refined upper bound min(Mur, Nhat) collapses to 0
    E = e5_q5.base_change(kz5)
    r = ordinary_bounds(E, kz5)
    assert (r.N, r.Nhat, r.M, r.Mur) == (0, 0, 1, 1)
    assert r.lower.is_trivial() and r.upper.is_trivial()
    assert r.exact is not None and r.exact.is_trivial()
    assert r.case == "formal_torsion_match"


def test_ordinary_rejects_supersingular(e3_tower, tower16_ss):
    with pytest.raises(NotOrdinary):
        ordinary_bounds(e3_tower, tower16_ss)


def test_ordinary_rejects_foreign_field(e5_q5, kz5):
    with pytest.raises(FieldMismatch):
        ordinary_bounds(e5_q5, kz5)


# ---------------------------------------------------------------------------
# supersingular reports


def test_supersingular_q3_hypothesis(e3_q3, q3):
    # E[3] is not rational over Q_3 (kernel valuations are 1/8)
    with pytest.raises(TorsionHypothesisFails):
        supersingular_bounds(e3_q3, q3)


def test_supersingular_rejects_ordinary(e5_tower, tower16_ord):
    with pytest.raises(NotSupersingular):
        supersingular_bounds(e5_tower, tower16_ord)


def test_supersingular_tower_sandwich(e3_tower, tower16_ss):
    # N = 1, M = Mur = 1, R = (2, 2): lower (Z/3)^2, upper (Z/27)^2
    r = supersingular_bounds(e3_tower, tower16_ss)
    assert r.N == 1
    assert (r.M, r.Mur) == (1, 1)
    assert (r.r_leq, r.r_strict) == (2, 2)
    assert r.lower.divisors == (3, 3)
    assert r.upper.divisors == (27, 27)
    assert r.exact is None
    assert r.t0 == 1
    assert r.e0 == Fraction(4)
    # the generator witness at m = M = 1: the deepest zeta sits at
    # filtration level 4, above min(3, 9) = 3, so the search reports
    # the blocking inequality; the climb to m = 2 needs k(zeta_9) of
    # degree 48 which the default degree cap refuses
    assert isinstance(r.witness, NotFound)
    assert r.witness.level == 4
    assert r.witness.bound == 3
    assert r.witness_m == 1
    assert "witness_climb_capped" in r.caveats
    assert "r_definition_discrepancy" not in r.caveats
    d = r.to_json_dict()
    assert d["invariants"]["t0"] == 1
    assert d["invariants"]["R"] == {"leq": 2, "strict": 2}
    assert d["bounds"]["lower"] == [3, 3]
    assert d["bounds"]["upper"] == [27, 27]
    assert d["bounds"]["exact"] is None


# ---------------------------------------------------------------------------
# exact structure cases (theorem-level refinements)


def _diag_module():
    # semisimple: two invariant lines with distinct unit eigenvalues
    return FiniteGaloisModule(5, 1, (1, 1), ([[3, 0], [0, 2]],))


def _unipotent_module(level):
    return FiniteGaloisModule(5, level, (level, level),
                              ([[1, 1], [0, 1]],))


def test_exact_case_semisimple(e5_tower, tower16_ord):
    ec = exact_structure_cases(e5_tower, tower16_ord, (_diag_module(), None))
    assert ec.structure is not None and ec.structure.divisors == (5,)
    assert ec.case == "semisimple_level"
    assert ec.failed is None


def test_exact_case_nonsemisimple_pinned(e5_tower, tower16_ord):
    # case (ii): M = Mur = 1, the residue curve has its full 5-torsion
    # over F_625 (order 640), and the inertia restriction at level
    # N + 1 = 2 is supplied non-semisimple
    rho = (_unipotent_module(1), _unipotent_module(2))
    ec = exact_structure_cases(e5_tower, tower16_ord, rho)
    assert ec.structure is not None and ec.structure.divisors == (5,)
    assert ec.case == "nonsemisimple_pinned"
    assert ec.failed is None


def test_exact_case_neither(e5_tower, tower16_ord):
    # non-semisimple at level Nhat but the inertia hypothesis is
    # explicitly disclaimed: no case applies and the reason is named
    ec = exact_structure_cases(
        e5_tower, tower16_ord, (_unipotent_module(1), None),
        flags={"inertia_nonsemisimple": False})
    assert ec.structure is None and ec.case is None
    assert ec.failed == "inertia_nonsemisimple"


def test_exact_case_unverifiable_inertia(e5_tower, tower16_ord):
    # no module and no flag for the inertia hypothesis: not computable
    ec = exact_structure_cases(e5_tower, tower16_ord,
                               (_unipotent_module(1), None))
    assert ec.structure is None
    assert ec.failed == "inertia_nonsemisimple"


def test_exact_case_contradictions(e5_tower, tower16_ord):
    rho = (_unipotent_module(1), _unipotent_module(2))
    # claimed M != Mur contradicts the computed invariants
    with pytest.raises(InconsistentInput):
        exact_structure_cases(e5_tower, tower16_ord, rho,
                              flags={"mur_equal": False})
    # claimed missing residue torsion contradicts the 640-point count
    with pytest.raises(InconsistentInput):
        exact_structure_cases(e5_tower, tower16_ord, rho,
                              flags={"residue_torsion": False})
    # supplied inertia module is semisimple but the flag claims not
    with pytest.raises(InconsistentInput):
        exact_structure_cases(
            e5_tower, tower16_ord,
            (_unipotent_module(1), _diag_module()),
            flags={"inertia_nonsemisimple": True})


def test_exact_case_requires_ordinary(e3_tower, tower16_ss):
    with pytest.raises(NotOrdinary):
        exact_structure_cases(e3_tower, tower16_ss, (_diag_module(), None))


# ---------------------------------------------------------------------------
# the cyclotomic gap tower


def test_ozeki_rows_q5(e5_q5, q5):
    # k_1 = Q_5(zeta_5): M = 1; the etale 5-torsion needs the
    # unramified quartic which a totally ramified tower never adds,
    # so N = 0 at every level.  k_2 = Q_5(zeta_25): degree 20, M = 2.
    res = ozeki_tower(e5_q5, q5, 2, cap=24)
    assert res.rows == [(1, 1, 0, 1), (2, 2, 0, 2)]
    assert res.capped is None


def test_ozeki_empty(e5_q5, q5):
    res = ozeki_tower(e5_q5, q5, 0)
    assert res.rows == [] and res.capped is None


def test_ozeki_cap_partial(e5_q5, q5):
    # default degree cap 16 refuses Q_5(zeta_25) of degree 20
    res = ozeki_tower(e5_q5, q5, 2)
    assert res.rows == [(1, 1, 0, 1)]
    assert res.capped == 2


# ---------------------------------------------------------------------------
# products


def test_product_single(e3_tower, tower16_ss):
    r = supersingular_bounds(e3_tower, tower16_ss)
    pr = product_aggregate([r])
    assert pr.lower.divisors == r.lower.divisors
    assert pr.upper.divisors == r.upper.divisors
    assert set(r.caveats) <= set(pr.caveats)


def test_product_double(e3_tower, tower16_ss):
    r = supersingular_bounds(e3_tower, tower16_ss)
    pr = product_aggregate([r, r])
    assert pr.lower.divisors == (3, 3, 3, 3)
    assert pr.upper.divisors == (27, 27, 27, 27)
    assert pr.g == 2


def test_product_mixed_kinds(e3_tower, tower16_ss):
    # an ordinary model over the same supersingular-tower field:
    # y^2 = x^3 + x^2 - 1 has trace 1 over F_3 (unit mod 3)
    E = WeierstrassCurve(tower16_ss, [0, 1, 0, 0, -1])
    assert E.reduction_type().kind == "GoodOrdinary"
    r1 = supersingular_bounds(e3_tower, tower16_ss)
    r2 = ordinary_bounds(E, tower16_ss)
    pr = product_aggregate([r1, r2])
    assert pr.lower.divisors == tuple(
        sorted(r1.lower.divisors + r2.lower.divisors))
    assert pr.upper.divisors == tuple(
        sorted(r1.upper.divisors + r2.upper.divisors))


def test_product_needs_matching_fields(e3_tower, tower16_ss,
                                        e5_tower, tower16_ord):
    r1 = supersingular_bounds(e3_tower, tower16_ss)
    r2 = ordinary_bounds(e5_tower, tower16_ord)
    with pytest.raises(FieldMismatch):
        product_aggregate([r1, r2])
    with pytest.raises(InconsistentInput):
        product_aggregate([])


def test_product_commutes(e3_tower, tower16_ss):
    E = WeierstrassCurve(tower16_ss, [0, 1, 0, 0, -1])
    r1 = supersingular_bounds(e3_tower, tower16_ss)
    r2 = ordinary_bounds(E, tower16_ss)
    a = product_aggregate([r1, r2])
    b = product_aggregate([r2, r1])
    assert a.lower.divisors == b.lower.divisors
    assert a.upper.divisors == b.upper.divisors


# ---------------------------------------------------------------------------
# report-level invariants


def test_sandwich_order_enforced():
    # a lower that the upper cannot surject onto is rejected
    from ramlock.bounds import BoundReport
    with pytest.raises(ConsistencyError):
        BoundReport(
            field_info={"p": 5, "e": 1, "f": 1, "degree": 1},
            curve_info={"a": None, "kind": None, "g": 1},
            p=5, e_k=1, f=1, e0=None, t0=None,
            r_leq=None, r_strict=None, M=None, Mur=None,
            kind=None, N=None, Nhat=None, g=1,
            lower=AbGroupStructure((25,)),
            upper=AbGroupStructure((5,)),
            exact=None, case=None, caveats=())


def test_exact_between_bounds_enforced():
    from ramlock.bounds import BoundReport
    with pytest.raises(ConsistencyError):
        BoundReport(
            field_info={"p": 5, "e": 1, "f": 1, "degree": 1},
            curve_info={"a": None, "kind": None, "g": 1},
            p=5, e_k=1, f=1, e0=None, t0=None,
            r_leq=None, r_strict=None, M=None, Mur=None,
            kind=None, N=None, Nhat=None, g=1,
            lower=AbGroupStructure((5,)),
            upper=AbGroupStructure((25,)),
            exact=AbGroupStructure((125,)), case="bogus", caveats=())


def test_report_json_deterministic(e5_q5, q5):
    d1 = ordinary_bounds(e5_q5, q5).to_json_dict()
    d2 = ordinary_bounds(e5_q5, q5).to_json_dict()
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_caps_defaults():
    c = Caps()
    assert c.nmax >= 1 and c.m_cap >= 1
