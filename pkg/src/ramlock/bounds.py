"""Sandwich reports for the ramified abelianized kernel.

Each report carries a lower and an upper bound on the finite part as
abstract abelian group structures, together with the field and curve
invariants that produced them.  When the two bounds meet, or a
semisimplicity refinement applies, the exact structure is recorded.
Reports serialize to a stable JSON dictionary and aggregate over
products of curves sharing a base field.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CapReached,
    ConsistencyError,
    DegreeCapExceeded,
    FieldMismatch,
    InconsistentInput,
    NotGoodReduction,
    NotOrdinary,
    NotSupersingular,
    OrderViolation,
    TorsionHypothesisFails,
)
from .galmod import AbGroupStructure, FiniteGaloisModule, semisimplicity_check
from .localfield import make_field
from .towers import (
    cyclotomic_extend,
    e0 as tame_e0,
    invariant_M,
    invariant_Mur,
    invariant_R,
)
from .unitsymbols import SymbolWitnesses, symbol_generators_mod_p


@dataclass(frozen=True)
class Caps:
    """Search and precision budgets shared by the report builders."""

    nmax: int = 3          # torsion / formal level search ceiling
    m_cap: int = 4         # root-of-unity level ceiling
    series_cap: int = None  # formal group series degree (None: p^2 + 6)
    degree_cap: int = None  # extension degree budget (None: tower default)
    count_bound: int = 10**4  # residue fields larger than this refuse to count


def _powers(p, n, g):
    return AbGroupStructure(tuple(p**n for _ in range(g)))


@dataclass(frozen=True)
class BoundReport:
    """A lower/upper sandwich with the invariants behind it.

    The constructor enforces the sandwich: upper must surject onto
    lower, and any exact structure must sit in between.
    """

    field_info: dict
    curve_info: dict
    p: int
    e_k: int
    f: int
    e0: Fraction
    t0: int
    r_leq: int
    r_strict: int
    M: int
    Mur: int
    kind: str
    N: int
    Nhat: int
    g: int
    lower: AbGroupStructure
    upper: AbGroupStructure
    exact: AbGroupStructure
    case: str
    caveats: tuple
    witness: object = None
    witness_m: int = None

    def __post_init__(self):
        if not self.upper.surjects_onto(self.lower):
            raise ConsistencyError(
                f"upper bound {self.upper} does not dominate lower "
                f"bound {self.lower}")
        if self.exact is not None:
            if not (self.upper.surjects_onto(self.exact)
                    and self.exact.surjects_onto(self.lower)):
                raise ConsistencyError(
                    f"exact structure {self.exact} is outside the "
                    f"sandwich [{self.lower}, {self.upper}]")
        object.__setattr__(self, "caveats", tuple(sorted(set(self.caveats))))

    def to_json_dict(self):
        e0s = None
        if self.e0 is not None:
            fr = Fraction(self.e0)
            e0s = f"{fr.numerator}/{fr.denominator}"
        rr = None
        if self.r_leq is not None:
            rr = {"leq": self.r_leq, "strict": self.r_strict}
        return {
            "field": dict(self.field_info),
            "curve": dict(self.curve_info),
            "invariants": {
                "M": self.M,
                "Mur": self.Mur,
                "N": self.N,
                "Nhat": self.Nhat,
                "e0": e0s,
                "t0": self.t0,
                "R": rr,
            },
            "bounds": {
                "lower": list(self.lower.divisors),
                "upper": list(self.upper.divisors),
                "exact": (None if self.exact is None
                          else list(self.exact.divisors)),
                "case": self.case,
            },
            "caveats": list(self.caveats),
        }


@dataclass(frozen=True)
class ExactCase:
    """Outcome of the semisimplicity refinement.

    structure/case are set together; failed names the first hypothesis
    that could not be established when no case applies.
    """

    structure: AbGroupStructure
    case: str
    failed: str


@dataclass(frozen=True)
class OzekiResult:
    """Rows (m, M(k_m), N(k_m), gap) along k(mu_{p^m}); capped is the
    first level the degree budget refused, None if none was."""

    rows: list
    capped: int


def _field_dict(k):
    return {"p": k.p, "e": k.e, "f": k.f, "degree": k.n}


def _curve_dict(E, kind):
    a = None if E.a_int is None else list(E.a_int)
    return {"a": a, "kind": kind, "g": 1}


def _field_invariants(k, caps):
    caveats = []
    try:
        M = invariant_M(k, m_cap=caps.m_cap)
    except CapReached:
        M = caps.m_cap
        caveats.append("roots_of_unity_at_cap")
    try:
        Mur = invariant_Mur(k, m_cap=caps.m_cap, cap=caps.degree_cap)
    except CapReached:
        Mur = caps.m_cap
        caveats.append("roots_of_unity_at_cap")
    rl, rs = invariant_R(k)
    return M, Mur, tame_e0(k), rl, rs, caveats


def _reduction(E, k, caps):
    if k is not E.host:
        raise FieldMismatch("report field is not the curve's host field")
    rd = E.reduction_type(caps.count_bound)
    if rd.kind == "NotGood":
        raise NotGoodReduction("the model does not have good reduction")
    return rd


def _torsion_levels(E, caps, caveats):
    try:
        N = E.torsion_level_N(caps.nmax)
    except CapReached:
        N = caps.nmax
        caveats.append("torsion_level_at_cap")
    return N


def ordinary_bounds(E, k, caps=None):
    """Sandwich report for a curve with good ordinary reduction.

    Lower bound Z/p^N from rational p-power torsion; upper bound the
    divisibility-min of Z/p^Mur and the formal-level refinement
    Z/p^Nhat.  Exact cases: e < p - 1 forces everything trivial, and
    N = Nhat pinches the sandwich at Z/p^N.
    """
    caps = caps or Caps()
    rd = _reduction(E, k, caps)
    if rd.kind != "GoodOrdinary":
        raise NotOrdinary("ordinary reduction required")
    p = k.p
    M, Mur, e0v, rl, rs, caveats = _field_invariants(k, caps)
    N = _torsion_levels(E, caps, caveats)
    try:
        Nh = E.nhat(caps.nmax, cap=caps.series_cap)
    except CapReached:
        Nh = caps.nmax
        caveats.append("formal_level_at_cap")
    if not (N <= M <= Mur and N <= Nh <= Mur):
        raise ConsistencyError(
            f"invariants out of order: N={N} Nhat={Nh} M={M} Mur={Mur}")
    lower = _powers(p, N, 1)
    upper = _powers(p, min(Mur, Nh), 1)
    exact = None
    case = None
    if k.e < p - 1:
        # mu_p is ramified of degree p - 1 over Q_p, so it cannot land
        # in any unramified extension of k: everything collapses
        if (M, Mur, N, Nh) != (0, 0, 0, 0):
            raise ConsistencyError(
                "e < p - 1 is incompatible with nonzero levels")
        exact = AbGroupStructure.trivial()
        case = "low_ramification"
    elif N == Nh:
        exact = _powers(p, N, 1)
        case = "formal_torsion_match"
    return BoundReport(
        field_info=_field_dict(k), curve_info=_curve_dict(E, rd.kind),
        p=p, e_k=k.e, f=k.f, e0=e0v, t0=None,
        r_leq=rl, r_strict=rs, M=M, Mur=Mur,
        kind=rd.kind, N=N, Nhat=Nh, g=1,
        lower=lower, upper=upper, exact=exact, case=case,
        caveats=tuple(caveats))


def supersingular_bounds(E, k, caps=None):
    """Sandwich report for good supersingular reduction with E[p]
    rational.

    Lower bound (Z/p^N)^2; upper bound (Z/p^(Mur + r))^2 with r the
    filtration radius r_leq.  The report also records the symbol
    generator witness obtained by climbing k(mu_{p^m}) for
    M <= m <= M + r, stopping early when generators appear.
    """
    caps = caps or Caps()
    rd = _reduction(E, k, caps)
    if rd.kind != "GoodSupersingular":
        raise NotSupersingular("supersingular reduction required")
    p = k.p
    M, Mur, e0v, rl, rs, caveats = _field_invariants(k, caps)
    if rl != rs:
        caveats.append("r_definition_discrepancy")
    N = _torsion_levels(E, caps, caveats)
    if N < 1:
        raise TorsionHypothesisFails(
            "the p-torsion of the curve is not rational over the base")
    if not (N <= M <= Mur):
        raise ConsistencyError(
            f"invariants out of order: N={N} M={M} Mur={Mur}")
    lower = _powers(p, N, 2)
    upper = _powers(p, Mur + rl, 2)
    t0data = E.t0(cap=caps.series_cap)
    t0val = t0data.value
    if not t0data.rational:
        caveats.append("t0_not_rational")
    witness = None
    witness_m = None
    if t0data.rational:
        for m in range(M, M + rl + 1):
            try:
                km = (k if m == M
                      else cyclotomic_extend(k, m, cap=caps.degree_cap).field)
            except DegreeCapExceeded:
                caveats.append("witness_climb_capped")
                break
            if km is k:
                dec = t0data.decomposition
            else:
                tm = E.base_change(km).t0(cap=caps.series_cap)
                if not tm.rational:
                    caveats.append("t0_not_rational")
                    break
                dec = tm.decomposition
            witness = symbol_generators_mod_p(km, decomposition=dec)
            witness_m = m
            if isinstance(witness, SymbolWitnesses):
                break
    exact = None
    case = None
    if lower.divisors == upper.divisors:
        exact = lower
        case = "pinched_sandwich"
    return BoundReport(
        field_info=_field_dict(k), curve_info=_curve_dict(E, rd.kind),
        p=p, e_k=k.e, f=k.f, e0=e0v, t0=t0val,
        r_leq=rl, r_strict=rs, M=M, Mur=Mur,
        kind=rd.kind, N=N, Nhat=None, g=1,
        lower=lower, upper=upper, exact=exact, case=case,
        caveats=tuple(caveats), witness=witness, witness_m=witness_m)


def _residue_full_torsion(E, M, rd):
    """Ebar[p^M] rational over the residue field.

    Ordinary reduction makes the geometric p-power torsion of the
    residue curve cyclic, so containment is equivalent to p^M dividing
    the rational point count.
    """
    if M == 0:
        return True
    return rd.point_count % E.host.p**M == 0


def exact_structure_cases(E, k, rho, flags=None, caps=None):
    """Semisimplicity refinement of the ordinary sandwich.

    rho is (module at level Nhat, module at level N + 1 restricted to
    inertia or None).  Semisimple level-Nhat action pins the finite
    part to Z/p^Nhat.  Otherwise three hypotheses are needed: M = Mur,
    full residue torsion at level M, and non-semisimple inertia at
    level N + 1; together they force Nhat = M and pin Z/p^N.  The two
    field-side hypotheses are always recomputed; user flags that
    contradict a computed or supplied value raise InconsistentInput.
    """
    caps = caps or Caps()
    rd = _reduction(E, k, caps)
    if rd.kind != "GoodOrdinary":
        raise NotOrdinary("the refinement applies to ordinary reduction")
    if isinstance(rho, FiniteGaloisModule):
        rho = (rho, None)
    m_nhat, m_n1 = rho
    p = k.p
    flags = dict(flags or {})
    M, Mur, _, _, _, _ = _field_invariants(k, caps)
    N = _torsion_levels(E, caps, [])
    try:
        Nh = E.nhat(caps.nmax, cap=caps.series_cap)
    except CapReached:
        raise InconsistentInput(
            "formal level exceeded the search cap; the level-Nhat "
            "module cannot be validated")
    if Nh == 0:
        # the finite part injects into a trivial group
        return ExactCase(AbGroupStructure.trivial(), "semisimple_level",
                         None)
    if m_nhat.p != p or m_nhat.level != Nh:
        raise InconsistentInput(
            f"first module must live at level Nhat={Nh} over p={p}")
    if semisimplicity_check(m_nhat):
        return ExactCase(AbGroupStructure.cyclic(p**Nh),
                         "semisimple_level", None)
    # non-semisimple branch: verify the three hypotheses
    mur_equal = (M == Mur)
    if "mur_equal" in flags and bool(flags["mur_equal"]) != mur_equal:
        raise InconsistentInput(
            f"flag mur_equal={flags['mur_equal']} contradicts computed "
            f"M={M}, Mur={Mur}")
    res_tors = _residue_full_torsion(E, M, rd)
    if ("residue_torsion" in flags
            and bool(flags["residue_torsion"]) != res_tors):
        raise InconsistentInput(
            f"flag residue_torsion={flags['residue_torsion']} contradicts "
            f"the residue point count {rd.point_count}")
    if m_n1 is not None:
        if m_n1.p != p or m_n1.level != N + 1:
            raise InconsistentInput(
                f"inertia module must live at level N+1={N + 1} over p={p}")
        inertia_nonss = not semisimplicity_check(m_n1)
        if ("inertia_nonsemisimple" in flags
                and bool(flags["inertia_nonsemisimple"]) != inertia_nonss):
            raise InconsistentInput(
                "flag inertia_nonsemisimple contradicts the supplied "
                "inertia module")
    elif "inertia_nonsemisimple" in flags:
        inertia_nonss = bool(flags["inertia_nonsemisimple"])
    else:
        inertia_nonss = None
    if not mur_equal:
        return ExactCase(None, None, "mur_equal")
    if not res_tors:
        return ExactCase(None, None, "residue_torsion")
    if not inertia_nonss:
        return ExactCase(None, None, "inertia_nonsemisimple")
    if Nh != M:
        raise InconsistentInput(
            "the non-semisimple hypotheses hold but the computed levels "
            f"give Nhat={Nh} != M={M}; the supplied modules cannot "
            "describe this curve")
    return ExactCase(AbGroupStructure.cyclic(p**N),
                     "nonsemisimple_pinned", None)


def ozeki_tower(E, k, m_max, cap=None):
    """Gap rows (m, M(k_m), N(k_m), M - N) along k_m = k(mu_{p^m}).

    Stops at the first level the degree budget refuses and reports it
    in capped; completed rows always satisfy M(k_m) >= m.

    Tower steps keep the pi-digit count, so deep levels divide the
    absolute precision by their ramification; the walk therefore
    rebuilds the base presentation at a boosted precision, which is
    lossless for bases built from exact integer data.
    """
    if k is not E.host:
        raise FieldMismatch("tower base is not the curve's host field")
    if not isinstance(m_max, int) or m_max < 0:
        raise InconsistentInput("m_max must be a nonnegative integer")
    rd = E.reduction_type()
    if rd.kind == "NotGood":
        raise NotGoodReduction("the model does not have good reduction")
    p = k.p
    base = k
    if m_max:
        ell_last = (p - 1) * p ** (m_max - 1)
        need = k.prec + 8 * k.e * ell_last
        if need > k.prec:
            base = make_field(p, [list(v) for v in k.eis], f=k.f,
                              prec=need, unram=k.unram, cap=cap)
    rows = []
    capped = None
    for m in range(1, m_max + 1):
        try:
            km = cyclotomic_extend(base, m, cap=cap).field
        except DegreeCapExceeded:
            capped = m
            break
        try:
            Mv = invariant_M(km, m_cap=m_max + 1)
        except CapReached:
            Mv = m_max + 1
        if Mv < m:
            raise ConsistencyError(
                f"mu_{{p^{m}}} must lie in k(mu_{{p^{m}}})")
        Em = E.base_change(km)
        try:
            # N <= M always, so a search capped at M pins N = M exactly
            Nv = Em.torsion_level_N(Mv)
        except CapReached:
            Nv = Mv
        rows.append((m, Mv, Nv, Mv - Nv))
    return OzekiResult(rows, capped)


def product_aggregate(reports):
    """Direct-sum aggregation of reports over one base field.

    Divisor lists concatenate (then renormalize), caveats union, and
    the exact structure survives only when every factor had one.
    """
    reports = list(reports)
    if not reports:
        raise InconsistentInput("nothing to aggregate")
    first = reports[0]
    for r in reports[1:]:
        if r.field_info != first.field_info:
            raise FieldMismatch(
                "aggregation requires a common base field")
    low = []
    up = []
    ex = []
    caveats = set()
    g = 0
    have_exact = True
    for r in reports:
        low.extend(r.lower.divisors)
        up.extend(r.upper.divisors)
        if r.exact is None:
            have_exact = False
        else:
            ex.extend(r.exact.divisors)
        caveats.update(r.caveats)
        g += r.g
    exact = AbGroupStructure(tuple(ex)) if have_exact else None
    return BoundReport(
        field_info=dict(first.field_info),
        curve_info={"a": None, "kind": "product", "g": g},
        p=first.p, e_k=first.e_k, f=first.f, e0=first.e0, t0=None,
        r_leq=first.r_leq, r_strict=first.r_strict,
        M=first.M, Mur=first.Mur,
        kind="product", N=None, Nhat=None, g=g,
        lower=AbGroupStructure(tuple(low)),
        upper=AbGroupStructure(tuple(up)),
        exact=exact, case=("product" if exact is not None else None),
        caveats=tuple(caveats))


def abstract_bounds(g, N, Mur, p):
    """Sandwich from user-supplied levels alone: (Z/p^N)^g up to
    (Z/p^Mur)^g, exact when they agree."""
    for name, v in (("g", g), ("N", N), ("Mur", Mur), ("p", p)):
        if not isinstance(v, int):
            raise InconsistentInput(f"{name} must be an integer")
    if g < 1:
        raise InconsistentInput("at least one factor is required")
    if N < 0 or Mur < 0:
        raise InconsistentInput("levels must be nonnegative")
    if p < 3 or p % 2 == 0:
        raise InconsistentInput("p must be an odd prime")
    if N > Mur:
        raise OrderViolation(f"N={N} exceeds Mur={Mur}")
    lower = _powers(p, N, g)
    upper = _powers(p, Mur, g)
    exact = None
    case = None
    if N == Mur:
        exact = lower
        case = "split_sandwich"
    return BoundReport(
        field_info={"p": p, "e": None, "f": None, "degree": None},
        curve_info={"a": None, "kind": None, "g": g},
        p=p, e_k=None, f=None, e0=None, t0=None,
        r_leq=None, r_strict=None, M=None, Mur=Mur,
        kind=None, N=N, Nhat=None, g=g,
        lower=lower, upper=upper, exact=exact, case=case,
        caveats=("user_supplied_bounds",))
