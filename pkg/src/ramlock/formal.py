"""Formal group of a Weierstrass model, as truncated power series.

One-variable series are coefficient lists indexed by degree; the group
law is a dict keyed by exponent pairs holding only nonzero terms up to a
total-degree cap.  Coefficients are plain ints reduced mod p**K when the
model has rational integer coefficients (the common case, and the series
then do not depend on the host field at all, so towers reuse them), or
Elt instances otherwise.  The ops adapter hides the difference so the
series code is written once.
"""

from .errors import ConsistencyError


class IntOps:
    """Coefficient arithmetic for ints mod p**K."""

    kind = "int"

    def __init__(self, p, K):
        self.p = p
        self.K = K
        self.mod = p**K

    def czero(self):
        return 0

    def cone(self):
        return 1

    def cfrom_int(self, n):
        return n % self.mod

    def cadd(self, a, b):
        return (a + b) % self.mod

    def csub(self, a, b):
        return (a - b) % self.mod

    def cneg(self, a):
        return -a % self.mod

    def cmul(self, a, b):
        return a * b % self.mod

    def cinv(self, a):
        return pow(a, -1, self.mod)

    def cscale(self, n, a):
        return n * a % self.mod

    def cis_zero(self, a):
        return a == 0

    def cis_one(self, a):
        return a == 1

    def cis_same(self, a, b):
        return a == b

    def cis_unit(self, a):
        return a % self.p != 0


class EltOps:
    """Coefficient arithmetic for host-field elements."""

    kind = "elt"

    def __init__(self, host):
        self.host = host
        self._zero = host.zero()
        self._one = host.one()

    def czero(self):
        return self._zero

    def cone(self):
        return self._one

    def cfrom_int(self, n):
        return self.host.from_int(n)

    def cadd(self, a, b):
        return a + b

    def csub(self, a, b):
        return a - b

    def cneg(self, a):
        return -a

    def cmul(self, a, b):
        return a * b

    def cinv(self, a):
        return a.inv()

    def cscale(self, n, a):
        return a * n

    def cis_zero(self, a):
        return a.is_zero()

    def cis_one(self, a):
        return a.same(1)

    def cis_same(self, a, b):
        return a.same(b)

    def cis_unit(self, a):
        return (not a.is_zero()) and a.val() == 0


# ---------------------------------------------------------------------------
# one-variable series


def series_zero(cap, ops):
    return [ops.czero()] * (cap + 1)


def series_add(f, g, ops):
    return [ops.cadd(a, b) for a, b in zip(f, g)]


def series_sub(f, g, ops):
    return [ops.csub(a, b) for a, b in zip(f, g)]


def series_scale(c, f, ops):
    return [ops.cmul(c, a) for a in f]


def series_shift(f, d, cap, ops):
    return [ops.czero()] * d + f[: cap + 1 - d]


def series_mul(f, g, cap, ops):
    out = [ops.czero()] * (cap + 1)
    for i, a in enumerate(f):
        if i > cap:
            break
        if ops.cis_zero(a):
            continue
        top = cap - i
        for j, b in enumerate(g):
            if j > top:
                break
            if not ops.cis_zero(b):
                out[i + j] = ops.cadd(out[i + j], ops.cmul(a, b))
    return out


def series_compose(f, g, cap, ops):
    """f(g(t)) truncated at degree cap; needs g(0) = 0."""
    if not ops.cis_zero(g[0]):
        raise ConsistencyError("composition needs a series without "
                               "constant term")
    out = series_zero(cap, ops)
    for c in reversed(f):
        out = series_mul(out, g, cap, ops)
        out[0] = ops.cadd(out[0], c)
    return out


def series_deriv(f, ops):
    out = [ops.cscale(i, c) for i, c in enumerate(f)][1:]
    out.append(ops.czero())
    return out


def series_inv_unit(f, cap, ops):
    """1/f for a series with unit constant term."""
    c0inv = ops.cinv(f[0])
    out = series_zero(cap, ops)
    out[0] = c0inv
    for n in range(1, cap + 1):
        acc = ops.czero()
        for i in range(1, min(n, len(f) - 1) + 1):
            if not ops.cis_zero(f[i]):
                acc = ops.cadd(acc, ops.cmul(f[i], out[n - i]))
        out[n] = ops.cneg(ops.cmul(c0inv, acc))
    return out


# ---------------------------------------------------------------------------
# two-variable series (dicts keyed by exponent pairs)


def _bclean(F, ops):
    return {k: v for k, v in F.items() if not ops.cis_zero(v)}


def _badd(F, G, ops):
    out = dict(F)
    for k, v in G.items():
        out[k] = ops.cadd(out[k], v) if k in out else v
    return _bclean(out, ops)


def _bsub(F, G, ops):
    out = dict(F)
    for k, v in G.items():
        out[k] = ops.csub(out[k], v) if k in out else ops.cneg(v)
    return _bclean(out, ops)


def _bscale(c, F, ops):
    return _bclean({k: ops.cmul(c, v) for k, v in F.items()}, ops)


def _bmul(F, G, cap, ops):
    out = {}
    for (i1, j1), a in F.items():
        for (i2, j2), b in G.items():
            i, j = i1 + i2, j1 + j2
            if i + j > cap:
                continue
            c = ops.cmul(a, b)
            key = (i, j)
            out[key] = ops.cadd(out[key], c) if key in out else c
    return _bclean(out, ops)


def _binv_unit(F, cap, ops):
    """1/F for a two-variable series with unit constant term, by Newton
    doubling: v <- v (2 - F v)."""
    two = ops.cfrom_int(2)
    v = {(0, 0): ops.cinv(F[(0, 0)])}
    good = 1
    while good <= cap:
        fv = _bmul(F, v, cap, ops)
        corr = _bsub({(0, 0): two}, fv, ops)
        v = _bmul(v, corr, cap, ops)
        good *= 2
    return v


def _bcompose_uni(f, Z, cap, ops):
    """f(Z) for univariate f and two-variable Z with Z(0,0) = 0."""
    if (0, 0) in Z:
        raise ConsistencyError("substitution needs a series without "
                               "constant term")
    out = {}
    for c in reversed(f):
        out = _bmul(out, Z, cap, ops)
        if not ops.cis_zero(c):
            key = (0, 0)
            out[key] = ops.cadd(out.get(key, ops.czero()), c)
            if ops.cis_zero(out[key]):
                del out[key]
    return out


def _bsubs_uni(F, s, cap, ops):
    """F(s(t), t) as a one-variable series; s(0) = 0 required."""
    by_i = {}
    for (i, j), c in F.items():
        by_i.setdefault(i, {})[j] = c
    out = series_zero(cap, ops)
    cur = series_zero(cap, ops)
    cur[0] = ops.cone()
    deg = 0
    for i in sorted(by_i):
        while deg < i:
            cur = series_mul(cur, s, cap, ops)
            deg += 1
        inner = series_zero(cap, ops)
        for j, c in by_i[i].items():
            if j <= cap:
                inner[j] = c
        out = series_add(out, series_mul(cur, inner, cap, ops), ops)
    return out


# ---------------------------------------------------------------------------
# the group law


def _w_series(a, cap, ops):
    """w(t) = t^3(1 + ...) solving w = t^3 + a1 t w + a2 t^2 w + a3 w^2
    + a4 t w^2 + a6 w^3, to degree cap.  Each pass pins one more degree."""
    a1, a2, a3, a4, a6 = a
    t3 = series_zero(cap, ops)
    if cap >= 3:
        t3[3] = ops.cone()
    w = list(t3)
    use1 = not ops.cis_zero(a1)
    use2 = not ops.cis_zero(a2)
    use3 = not ops.cis_zero(a3)
    use4 = not ops.cis_zero(a4)
    use6 = not ops.cis_zero(a6)
    for _ in range(max(cap - 2, 0)):
        w2 = series_mul(w, w, cap, ops) if (use3 or use4 or use6) else None
        new = list(t3)
        if use1:
            new = series_add(new, series_scale(
                a1, series_shift(w, 1, cap, ops), ops), ops)
        if use2:
            new = series_add(new, series_scale(
                a2, series_shift(w, 2, cap, ops), ops), ops)
        if use3:
            new = series_add(new, series_scale(a3, w2, ops), ops)
        if use4:
            new = series_add(new, series_scale(
                a4, series_shift(w2, 1, cap, ops), ops), ops)
        if use6:
            w3 = series_mul(w2, w, cap, ops)
            new = series_add(new, series_scale(a6, w3, ops), ops)
        if new == w:
            break
        w = new
    return w


def _group_law(a, cap, ops):
    """The addition law F(X, Y) and companions, all to total degree cap.

    Returns (F, w, iota) with w taken to degree cap + 3 (the logarithm
    needs the extra terms) and iota the inversion series i(z) with
    F(z, i(z)) = 0.
    """
    a1, a2, a3, a4, a6 = a
    wdeg = cap + 3
    w = _w_series(a, wdeg, ops)

    # lambda(X, Y) = sum_m w_m sum_{i+j=m-1} X^i Y^j (slope of the chord)
    lam = {}
    for m in range(3, cap + 2):
        c = w[m]
        if ops.cis_zero(c):
            continue
        for i in range(0, m):
            lam[(i, m - 1 - i)] = c
    # nu(X, Y) = w(X) - lambda X (intercept)
    nu = {}
    for i in range(3, cap + 1):
        if not ops.cis_zero(w[i]):
            nu[(i, 0)] = w[i]
    lam_x = {(i + 1, j): c for (i, j), c in lam.items() if i + 1 + j <= cap}
    nu = _bsub(nu, lam_x, ops)

    need_l2 = not (ops.cis_zero(a3) and ops.cis_zero(a4)
                   and ops.cis_zero(a6))
    lam2 = _bmul(lam, lam, cap, ops) if need_l2 else None

    den = {(0, 0): ops.cone()}
    if not ops.cis_zero(a2):
        den = _badd(den, _bscale(a2, lam, ops), ops)
    if not ops.cis_zero(a4):
        den = _badd(den, _bscale(a4, lam2, ops), ops)
    if not ops.cis_zero(a6):
        lam3 = _bmul(lam2, lam, cap, ops)
        den = _badd(den, _bscale(a6, lam3, ops), ops)

    num = {}
    if not ops.cis_zero(a1):
        num = _badd(num, _bscale(a1, lam, ops), ops)
    if not ops.cis_zero(a3):
        num = _badd(num, _bscale(a3, lam2, ops), ops)
    if not ops.cis_zero(a2):
        num = _bsub(num, _bscale(a2, nu, ops), ops)
    if not ops.cis_zero(a4):
        lamnu = _bmul(lam, nu, cap, ops)
        num = _bsub(num, _bscale(ops.cfrom_int(2),
                                 _bscale(a4, lamnu, ops), ops), ops)
    if not ops.cis_zero(a6):
        lam2nu = _bmul(lam2, nu, cap, ops)
        num = _bsub(num, _bscale(ops.cfrom_int(3),
                                 _bscale(a6, lam2nu, ops), ops), ops)

    # z-coordinate of the third collinear point
    z3 = {(1, 0): ops.cneg(ops.cone()), (0, 1): ops.cneg(ops.cone())}
    if num:
        if den != {(0, 0): ops.cone()}:
            num = _bmul(num, _binv_unit(den, cap, ops), cap, ops)
        z3 = _badd(z3, num, ops)

    # inversion: i(z) = -z / (1 - a1 z - a3 w(z))
    g = series_zero(cap, ops)
    g[0] = ops.cone()
    if not ops.cis_zero(a1):
        g[1] = ops.cneg(a1)
    if not ops.cis_zero(a3):
        g = series_sub(g, series_scale(a3, w[: cap + 1], ops), ops)
    iota = series_shift(series_inv_unit(g, cap, ops), 1, cap, ops)
    iota = [ops.cneg(c) for c in iota]

    if ops.cis_zero(a1) and ops.cis_zero(a3):
        # i(z) = -z, so F is just the negated chord point
        F = {k: ops.cneg(v) for k, v in z3.items()}
    else:
        F = _bcompose_uni(iota, z3, cap, ops)

    # internal sanity: F(X, 0) = X and symmetry are structural facts
    for (i, j), c in F.items():
        if j == 0 and not (i == 1 and ops.cis_one(c)):
            raise ConsistencyError("group law fails F(X, 0) = X")
        mate = F.get((j, i))
        if mate is None or not ops.cis_same(mate, c):
            raise ConsistencyError("group law is not symmetric")
    return F, w, iota


class FormalGroupData:
    """The group law of one model together with its derived series.

    mult(m) is the multiplication-by-m series (any integer m), pn(n) the
    n-fold composite of mult(p), omega the normalized invariant
    differential coefficients, and lowest_unit_degree the degree of the
    first unit coefficient of mult(p): p for ordinary reduction, p^2 for
    supersingular.
    """

    def __init__(self, p, ops, cap, a):
        self.p = p
        self.ops = ops
        self.cap = cap
        self.ring = ops.kind
        self.a = a
        self.F, self.w, self.iota = _group_law(a, cap, ops)
        ident = series_zero(cap, ops)
        ident[1] = ops.cone()
        self._mult = {0: series_zero(cap, ops), 1: ident}
        self._pn = {}
        self._omega = None
        self._log_elts = {}
        pm = self.mult(p)
        if not ops.cis_same(pm[1], ops.cfrom_int(p)):
            raise ConsistencyError("multiplication by p does not start "
                                   "with p t")
        self.pmul = pm
        d = None
        for i in range(1, cap + 1):
            if ops.cis_unit(pm[i]):
                d = i
                break
        if d not in (p, p * p):
            raise ConsistencyError(
                f"first unit coefficient of [p](t) sits at degree {d}, "
                "expected p or p^2; the model cannot have good reduction")
        self.lowest_unit_degree = d

    def mult(self, m):
        if m not in self._mult:
            if m < 0:
                s = series_compose(self.iota, self.mult(-m), self.cap,
                                   self.ops)
            else:
                s = _bsubs_uni(self.F, self.mult(m - 1), self.cap, self.ops)
            self._mult[m] = s
        return self._mult[m]

    def pn(self, n):
        if n < 1:
            raise ConsistencyError("pn needs n >= 1")
        if n not in self._pn:
            if n == 1:
                self._pn[1] = self.pmul
            else:
                self._pn[n] = series_compose(self.pmul, self.pn(n - 1),
                                             self.cap, self.ops)
        return self._pn[n]

    @property
    def omega(self):
        """Coefficients of the invariant differential, omega(0) = 1."""
        if self._omega is None:
            ops, cap = self.ops, self.cap
            a1, a3 = self.a[0], self.a[2]
            W = self.w[3: cap + 4]
            A = series_inv_unit(W, cap, ops)
            NN = [ops.cscale(i - 2, A[i]) for i in range(cap + 1)]
            DD = [ops.cscale(-2, A[i]) for i in range(cap + 1)]
            if not ops.cis_zero(a1):
                for i in range(cap, 0, -1):
                    DD[i] = ops.cadd(DD[i], ops.cmul(a1, A[i - 1]))
            if not ops.cis_zero(a3):
                DD[3] = ops.cadd(DD[3], a3)
            om = series_mul(NN, series_inv_unit(DD, cap, ops), cap, ops)
            if not ops.cis_one(om[0]):
                raise ConsistencyError("invariant differential is not "
                                       "normalized")
            self._omega = om
        return self._omega

    # -- evaluation at field elements ----------------------------------------

    def eval_series(self, coeffs, z):
        """Horner evaluation of a coefficient list at an element of
        positive valuation; the truncation tail has valuation at least
        (cap + 1) v(z)."""
        acc = z.field.zero()
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def eval_F(self, z1, z2):
        mi = max(i for i, _ in self.F)
        mj = max(j for _, j in self.F)
        p1 = [z1.field.one()]
        for _ in range(mi):
            p1.append(p1[-1] * z1)
        p2 = [z2.field.one()]
        for _ in range(mj):
            p2.append(p2[-1] * z2)
        acc = z1.field.zero()
        for (i, j), c in self.F.items():
            acc = acc + p1[i] * p2[j] * c
        return acc

    def eval_log(self, z):
        """The formal logarithm at z (valuation must be large enough for
        the p-power denominators to converge; callers stay at v(z) >= 1)."""
        field = z.field
        key = field.key() if hasattr(field, "key") else id(field)
        if key not in self._log_elts:
            om = self.omega
            coeffs = [field.zero()]
            for i in range(1, self.cap + 1):
                c = om[i - 1]
                if self.ring == "int":
                    c = field.from_int(c)
                coeffs.append(c / field.from_int(i))
            self._log_elts[key] = coeffs
        return self.eval_series(self._log_elts[key], z)


_LAW_CACHE = {}


def formal_group_data(p, a, cap, host=None, int_modexp=None):
    """Build (or fetch) the formal group data for coefficients a.

    Integer coefficient lists run in the int coefficient ring mod
    p**int_modexp and are cached across hosts (the series are
    host-independent); Elt coefficients run in their own field.
    """
    if all(isinstance(c, int) for c in a):
        K = int_modexp if int_modexp is not None else 64
        key = (p, tuple(a), cap, K)
        if key not in _LAW_CACHE:
            _LAW_CACHE[key] = FormalGroupData(p, IntOps(p, K), cap,
                                              tuple(c % p**K for c in a))
        return _LAW_CACHE[key]
    if host is None:
        host = a[0].field if hasattr(a[0], "field") else None
        for c in a:
            if hasattr(c, "field"):
                host = c.field
                break
    ops = EltOps(host)
    aa = tuple(c if hasattr(c, "field") else host.from_int(c) for c in a)
    return FormalGroupData(p, ops, cap, aa)
