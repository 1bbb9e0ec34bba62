"""Batch command-line surface.

Subcommands
-----------
invariants     field invariants (M, Mur, e0, R) plus curve levels
bounds         sandwich reports (ordinary / supersingular / abstract)
hilbert-table  the mod-p pairing matrix and filtration order grid
coinv          seeded rank-1 coinvariant tables, three routes compared
ozeki          cyclotomic tower gap rows
selftest       oracle suites at desk scale

Descriptors are TOML files: a field needs p and eis (low-to-high
Eisenstein coefficients; entries may be length-f arrays) with optional
f / unram / prec; a curve is a = [a1, a2, a3, a4, a6], integers.

Exit codes: 0 success, 1 invalid input, 2 domain failure (a theorem
hypothesis or a cap blocks the computation).  Cap hits that a report
can absorb as caveats only fail under --strict.  The environment
variable RAMLOCK_DEGREE_CAP overrides the extension degree budget.
All sampling is driven by --seed (default 0) and reports embed it.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

import tomli

from .bounds import (
    Caps,
    _field_invariants,
    abstract_bounds,
    ordinary_bounds,
    ozeki_tower,
    supersingular_bounds,
)
from .elliptic import WeierstrassCurve
from .errors import (
    CapReached,
    ConsistencyError,
    InvalidInput,
    NotGoodReduction,
    RamlockError,
    exit_code_for,
)
from .galmod import (
    AbGroupStructure,
    coinvariants,
    coinvariants_exhaustive,
    connected_image_tower,
    rank1_coinvariant_level,
    rank1_module,
)
from .localfield import DEFAULT_PREC, make_field
from .unitsymbols import (
    export_pairing_table,
    filtration_pairing_order,
    hilbert_symbol,
    kummer_root_level,
)


class SelfTestFailure(InvalidInput):
    code = "SelfTestFailure"


@dataclass(frozen=True)
class JobConfig:
    command: str
    field: str = None
    curve: str = None
    nmax: int = 3
    mcap: int = 4
    prec: int = None
    json_out: bool = False
    seed: int = 0
    strict: bool = False
    mmax: int = 2
    suite: str = None
    inject_fault: bool = False
    abstract: tuple = None

    def __post_init__(self):
        if self.nmax < 0:
            raise InvalidInput("nmax must be nonnegative")
        if self.mcap < 1 or self.mmax < 0:
            raise InvalidInput("caps must be positive")
        if self.prec is not None and self.prec < 1:
            raise InvalidInput("prec must be positive")


def _caps(cfg):
    return Caps(nmax=cfg.nmax, m_cap=cfg.mcap)


# ---------------------------------------------------------------------------
# descriptor loading


def _read_toml(path):
    try:
        with open(path, "rb") as fh:
            return tomli.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}")
    except tomli.TOMLDecodeError as exc:
        raise InvalidInput(f"{path}: {exc}")


def _load_field(cfg):
    if not cfg.field:
        raise InvalidInput("this command needs --field")
    data = _read_toml(cfg.field)
    if "p" not in data or "eis" not in data:
        raise InvalidInput("field descriptor needs p and eis")
    kwargs = {}
    if "f" in data:
        kwargs["f"] = data["f"]
    if "unram" in data:
        kwargs["unram"] = data["unram"]
    prec = cfg.prec if cfg.prec is not None else data.get("prec", DEFAULT_PREC)
    return make_field(data["p"], data["eis"], prec=prec, **kwargs)


def _load_curve(path, k):
    data = _read_toml(path)
    a = data.get("a")
    if (not isinstance(a, list) or len(a) != 5
            or not all(isinstance(c, int) for c in a)):
        raise InvalidInput(
            "curve descriptor needs a = [a1, a2, a3, a4, a6], integers")
    return WeierstrassCurve(k, a)


# ---------------------------------------------------------------------------
# emission


def _emit(cfg, payload, lines):
    if cfg.json_out:
        env = {"command": cfg.command, "seed": cfg.seed}
        env.update(payload)
        print(json.dumps(env, sort_keys=True, indent=2))
    else:
        for ln in lines:
            print(ln)


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, dict):
        return f"({v['leq']},{v['strict']})"
    return str(v)


def _strict_caps(cfg, caveats):
    if not cfg.strict:
        return
    hits = [c for c in caveats
            if c.endswith("_at_cap") or c.endswith("_capped")]
    if hits:
        raise CapReached(0, f"strict mode refuses capped report: {hits[0]}")


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(cfg):
    k = _load_field(cfg)
    caps = _caps(cfg)
    M, Mur, e0v, rl, rs, caveats = _field_invariants(k, caps)
    field_block = {"p": k.p, "e": k.e, "f": k.f, "degree": k.n}
    curve_block = None
    N = Nh = t0v = None
    if cfg.curve:
        E = _load_curve(cfg.curve, k)
        rd = E.reduction_type(caps.count_bound)
        curve_block = {"a": None if E.a_int is None else list(E.a_int),
                       "kind": rd.kind, "g": 1}
        if rd.kind != "NotGood":
            try:
                N = E.torsion_level_N(caps.nmax)
            except CapReached:
                N = caps.nmax
                caveats.append("torsion_level_at_cap")
            try:
                Nh = E.nhat(caps.nmax, cap=caps.series_cap)
            except CapReached:
                Nh = caps.nmax
                caveats.append("formal_level_at_cap")
            if rd.kind == "GoodSupersingular":
                td = E.t0(cap=caps.series_cap)
                t0v = td.value
                if not td.rational:
                    caveats.append("t0_not_rational")
    caveats = sorted(set(caveats))
    _strict_caps(cfg, caveats)
    fr = Fraction(e0v)
    inv = {
        "M": M,
        "Mur": Mur,
        "N": N,
        "Nhat": Nh,
        "e0": f"{fr.numerator}/{fr.denominator}",
        "t0": t0v,
        "R": {"leq": rl, "strict": rs},
    }
    lines = [f"field: p={k.p} e={k.e} f={k.f} degree={k.n}"]
    if curve_block:
        lines.append(
            f"curve: a={curve_block['a']} kind={curve_block['kind']}")
    lines += [f"{name:<5}= {_fmt(inv[name])}"
              for name in ("M", "Mur", "N", "Nhat", "e0", "t0", "R")]
    lines.append(f"caveats: {', '.join(caveats) or '-'}")
    _emit(cfg, {"field": field_block, "curve": curve_block,
                "invariants": inv, "caveats": caveats}, lines)
    return 0


def _parse_abstract(tokens):
    vals = {}
    for tok in tokens:
        if "=" not in tok:
            raise InvalidInput(f"--abstract expects key=value, got {tok!r}")
        key, _, raw = tok.partition("=")
        try:
            vals[key] = int(raw)
        except ValueError:
            raise InvalidInput(f"--abstract value for {key} must be an int")
    if set(vals) != {"g", "N", "Mur"}:
        raise InvalidInput("--abstract needs exactly g=, N=, Mur=")
    return vals


def _report_lines(rep):
    d = rep.to_json_dict()
    fb = d["field"]
    lines = [
        "field: p={p} e={e} f={f} degree={degree}".format(**{
            key: _fmt(v) for key, v in fb.items()}),
        f"curve: a={_fmt(d['curve']['a'])} kind={_fmt(d['curve']['kind'])} "
        f"g={d['curve']['g']}",
        "invariants: " + " ".join(
            f"{name}={_fmt(v)}" for name, v in d["invariants"].items()),
        f"lower: {rep.lower}",
        f"upper: {rep.upper}",
        "exact: " + ("-" if rep.exact is None else str(rep.exact))
        + (f" ({rep.case})" if rep.case else ""),
        f"caveats: {', '.join(rep.caveats) or '-'}",
    ]
    return lines


def cmd_bounds(cfg):
    k = _load_field(cfg)
    caps = _caps(cfg)
    if cfg.abstract:
        vals = _parse_abstract(cfg.abstract)
        rep = abstract_bounds(vals["g"], vals["N"], vals["Mur"], p=k.p)
    else:
        if not cfg.curve:
            raise InvalidInput("bounds needs --curve (or --abstract)")
        E = _load_curve(cfg.curve, k)
        rd = E.reduction_type(caps.count_bound)
        if rd.kind == "GoodOrdinary":
            rep = ordinary_bounds(E, k, caps)
        elif rd.kind == "GoodSupersingular":
            rep = supersingular_bounds(E, k, caps)
        else:
            raise NotGoodReduction("bound reports need good reduction")
    _strict_caps(cfg, rep.caveats)
    _emit(cfg, {"report": rep.to_json_dict()}, _report_lines(rep))
    return 0


def cmd_hilbert_table(cfg):
    k = _load_field(cfg)
    exp = export_pairing_table(k)
    p = k.p
    pe0 = p * k.e // (p - 1)
    orders = []
    for i in range(1, pe0 + 1):
        for j in range(1, pe0 + 1):
            if i % p == 0 and j % p == 0:
                continue
            orders.append([i, j, filtration_pairing_order(k, i, j)])
    lines = [f"field: p={p} e={k.e} f={k.f}  pe0={pe0}",
             "pairing order of (U^i, U^j) classes:"]
    lines += [f"  i={i} j={j}: {o}" for i, j, o in orders]
    _emit(cfg, {"pe0": pe0, "orders": orders, "export": exp}, lines)
    return 0


def _rand_unit(rng, p, n):
    while True:
        c = rng.randrange(1, p**n)
        if c % p:
            return c


def cmd_coinv(cfg):
    k = _load_field(cfg)
    p = k.p
    rng = random.Random(cfg.seed)
    rows = []
    for n in range(1, cfg.nmax + 1):
        for _ in range(6):
            vals = tuple(_rand_unit(rng, p, n)
                         for _ in range(rng.randrange(1, 3)))
            lvl = rank1_coinvariant_level(p, n, vals)
            mod = rank1_module(p, n, vals)
            want = AbGroupStructure.cyclic(p**lvl)
            snf = coinvariants(mod)
            exh, _ = coinvariants_exhaustive(mod)
            if snf != want or exh != want:
                raise ConsistencyError(
                    f"coinvariant routes disagree at n={n}, values={vals}")
            rows.append({"n": n, "values": list(vals), "level": lvl})
    lines = ["rank-1 coinvariants (closed form = SNF = exhaustive):"]
    lines += [f"  n={r['n']} values={r['values']} -> Z/p^{r['level']}"
              for r in rows]
    _emit(cfg, {"rows": rows}, lines)
    return 0


def cmd_ozeki(cfg):
    k = _load_field(cfg)
    if not cfg.curve:
        raise InvalidInput("ozeki needs --curve")
    E = _load_curve(cfg.curve, k)
    res = ozeki_tower(E, k, cfg.mmax)
    if cfg.strict and res.capped is not None:
        raise CapReached(
            res.capped,
            f"tower level {res.capped} exceeds the degree cap")
    lines = ["m  M  N  gap"]
    lines += [f"{m}  {M}  {N}  {gap}" for m, M, N, gap in res.rows]
    if res.capped is not None:
        lines.append(f"(degree cap refused level {res.capped})")
    _emit(cfg, {"rows": [list(r) for r in res.rows],
                "capped": res.capped}, lines)
    return 0


# ---------------------------------------------------------------------------
# selftest suites


def _suite_hilbert(rng, inject):
    k = make_field(3, [3, 3, 1])
    p = 3
    checks = 0

    def sample():
        spec = (rng.randrange(0, 2), rng.randrange(1, 3),
                rng.randrange(0, 3), rng.randrange(0, 3))
        a, c0, c1, c2 = spec
        x = k.from_int(c0) + k.pi() * c1 + k.pi()**2 * c2
        if a:
            x = x * k.pi()
        return spec, x

    for _ in range(10):
        sx, x = sample()
        sy, y = sample()
        sz, z = sample()
        if (hilbert_symbol(k, x * y, z) - hilbert_symbol(k, x, z)
                - hilbert_symbol(k, y, z)) % p:
            raise SelfTestFailure(
                "suite hilbert: bilinearity; counterexample: "
                + json.dumps({"x": sx, "y": sy, "z": sz}))
        checks += 1
        if (hilbert_symbol(k, x, y) + hilbert_symbol(k, y, x)) % p:
            raise SelfTestFailure(
                "suite hilbert: antisymmetry; counterexample: "
                + json.dumps({"x": sx, "y": sy}))
        checks += 1
        want = 1 if inject else 0
        got = hilbert_symbol(k, x, x * k.from_int(-1))
        if got != want:
            raise SelfTestFailure(
                "suite hilbert: (x, -x) vanishing; counterexample: "
                + json.dumps({"x": sx, "expected": want, "got": got}))
        checks += 1
    for i in range(1, 4):
        for j in range(1, 4):
            if i % p == 0 and j % p == 0:
                continue
            filtration_pairing_order(k, i, j)   # self-checking
            checks += 1
    for i in (1, 2):
        c = rng.randrange(1, 3)
        _, lvl = kummer_root_level(k, 1 + k.pi()**i * c)
        if lvl != i:
            raise SelfTestFailure(
                "suite hilbert: kummer level; counterexample: "
                + json.dumps({"i": i, "c": c, "got": lvl}))
        checks += 1
    return checks


def _suite_coinv(rng, inject):
    p = 3
    checks = 0
    for n in range(1, 4):
        for _ in range(8):
            vals = tuple(_rand_unit(rng, p, n)
                         for _ in range(rng.randrange(1, 3)))
            lvl = rank1_coinvariant_level(p, n, vals)
            if inject:
                lvl = min(n, lvl + 1)
            mod = rank1_module(p, n, vals)
            want = AbGroupStructure.cyclic(p**lvl)
            snf = coinvariants(mod)
            exh, _ = coinvariants_exhaustive(mod)
            if snf != want or exh != want:
                raise SelfTestFailure(
                    "suite coinv: rank-1 routes; counterexample: "
                    + json.dumps({"n": n, "values": list(vals),
                                  "closed_form_level": lvl}))
            checks += 1
    for N in range(0, 3):
        b = p**N * _rand_unit(rng, p, 2)
        tower = connected_image_tower(p, [1, 2, 3, 4], N, b)
        if not tower.stabilized or tower.stabilized_at > N + 1:
            raise SelfTestFailure(
                "suite coinv: image tower stabilization; counterexample: "
                + json.dumps({"N": N, "b": b,
                              "stabilized_at": tower.stabilized_at}))
        checks += 1
    return checks


def _suite_formal(rng, inject):
    checks = 0
    q3 = make_field(3, [-3, 1])
    q5 = make_field(5, [-5, 1])
    E3 = WeierstrassCurve(q3, [0, 0, 0, 1, 0])
    E5 = WeierstrassCurve(q5, [0, 0, 0, -1, 0])
    want3 = 3 if inject else 9
    if E3.formal_group().lowest_unit_degree != want3:
        raise SelfTestFailure(
            "suite formal: supersingular [p](t) profile; counterexample: "
            + json.dumps({"a": [0, 0, 0, 1, 0], "expected": want3,
                          "got": E3.formal_group().lowest_unit_degree}))
    checks += 1
    if E5.formal_group().lowest_unit_degree != 5:
        raise SelfTestFailure(
            "suite formal: ordinary [p](t) profile; counterexample: "
            + json.dumps({"a": [0, 0, 0, -1, 0]}))
    checks += 1
    if E3.reduction_type().kind != "GoodSupersingular":
        raise SelfTestFailure("suite formal: reduction kind over p=3")
    checks += 1
    if E5.reduction_type().kind != "GoodOrdinary":
        raise SelfTestFailure("suite formal: reduction kind over p=5")
    checks += 1
    ker, img, pts = E5.connected_etale_counts()
    if ker * img != pts:
        raise SelfTestFailure(
            "suite formal: connected-etale counts; counterexample: "
            + json.dumps({"kernel": ker, "image": img, "points": pts}))
    checks += 1
    return checks


_SUITES = {
    "hilbert": _suite_hilbert,
    "coinv": _suite_coinv,
    "formal": _suite_formal,
}


def cmd_selftest(cfg):
    if cfg.suite is not None and cfg.suite not in _SUITES:
        raise InvalidInput(
            f"unknown suite {cfg.suite!r}; available: "
            + ", ".join(sorted(_SUITES)))
    names = sorted(_SUITES) if cfg.suite is None else [cfg.suite]
    results = {}
    for name in names:
        rng = random.Random(f"{cfg.seed}:{name}")
        results[name] = _SUITES[name](rng, cfg.inject_fault)
    lines = [f"suite {name}: {results[name]} checks" for name in names]
    lines.append(f"all suites passed (seed {cfg.seed})")
    _emit(cfg, {"suites": results, "ok": True}, lines)
    return 0


# ---------------------------------------------------------------------------
# entry point

_DISPATCH = {
    "invariants": cmd_invariants,
    "bounds": cmd_bounds,
    "hilbert-table": cmd_hilbert_table,
    "coinv": cmd_coinv,
    "ozeki": cmd_ozeki,
    "selftest": cmd_selftest,
}


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="ramlock",
        description="invariant and bound reports for p-adic fields and "
                    "good-reduction curves")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, field_required=True):
        sp.add_argument("--field", required=field_required,
                        help="field descriptor TOML")
        sp.add_argument("--curve", help="curve descriptor TOML")
        sp.add_argument("--nmax", type=int, default=3,
                        help="torsion/formal level search ceiling")
        sp.add_argument("--mcap", type=int, default=4,
                        help="root-of-unity level ceiling")
        sp.add_argument("--prec", type=int,
                        help="override the field's pi-digit precision")
        sp.add_argument("--json", action="store_true", dest="json_out")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--strict", action="store_true",
                        help="fail (exit 2) instead of absorbing cap hits")

    common(sub.add_parser("invariants", help="field and curve invariants"))
    bnd = sub.add_parser("bounds", help="sandwich bound report")
    common(bnd)
    bnd.add_argument("--abstract", nargs=3, metavar=("g=G", "N=N", "Mur=M"),
                     help="user-supplied levels instead of a curve")
    common(sub.add_parser("hilbert-table", help="pairing matrix and orders"))
    common(sub.add_parser("coinv", help="seeded coinvariant tables"))
    oz = sub.add_parser("ozeki", help="cyclotomic tower gap rows")
    common(oz)
    oz.add_argument("--mmax", type=int, default=2,
                    help="deepest cyclotomic level")
    st = sub.add_parser("selftest", help="oracle suites at desk scale")
    common(st, field_required=False)
    st.add_argument("--suite", help="run a single suite")
    st.add_argument("--inject-fault", action="store_true",
                    dest="inject_fault",
                    help="test flag: corrupt one expectation")
    return ap


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        cfg = JobConfig(
            command=args.command,
            field=getattr(args, "field", None),
            curve=getattr(args, "curve", None),
            nmax=args.nmax,
            mcap=args.mcap,
            prec=args.prec,
            json_out=args.json_out,
            seed=args.seed,
            strict=args.strict,
            mmax=getattr(args, "mmax", 2),
            suite=getattr(args, "suite", None),
            inject_fault=getattr(args, "inject_fault", False),
            abstract=(tuple(args.abstract)
                      if getattr(args, "abstract", None) else None),
        )
        return _DISPATCH[cfg.command](cfg)
    except RamlockError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
