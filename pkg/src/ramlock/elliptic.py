"""Weierstrass models over the local fields.

Reduction data comes from exhaustive residue point counts with a
division-polynomial cross-check, torsion levels from rational root
finding in division polynomial fibers, and the formal-group side
([p]-kernel levels, the supersingular valuation t0, CM kernel
comparison, etale kernel lifts with their quotient models) from the
truncated series in formal.py.  Everything is decided inside the given
field; no Galois closure is ever constructed.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    CapReached,
    CapTooSmall,
    ConsistencyError,
    FieldMismatch,
    HypothesisViolated,
    InconsistentInput,
    ModelNotMinimal,
    NotCM,
    NotExact,
    NotGoodReduction,
    NotSplit,
    NotSupersingular,
    ResidueFieldTooLarge,
    VeluUnsupported,
)
from .formal import EltOps, formal_group_data, series_compose, series_mul
from .localfield import Elt
from .roots import roots

COUNT_BOUND = 10**4


# ---------------------------------------------------------------------------
# small polynomial rings (exact, no truncation)


class _ZRing:
    zero = 0
    one = 1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def scale(n, a):
        return n * a

    @staticmethod
    def from_int(n):
        return n

    @staticmethod
    def is_zero(a):
        return a == 0


class _EltRing:
    def __init__(self, host):
        self.host = host
        self.zero = host.zero()
        self.one = host.one()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def scale(self, n, a):
        return a * n

    def from_int(self, n):
        return self.host.from_int(n)

    @staticmethod
    def is_zero(a):
        return a.is_zero()


class _FqRing:
    def __init__(self, fq):
        self.fq = fq
        self.zero = fq.zero
        self.one = fq.one

    def add(self, a, b):
        return self.fq.add(a, b)

    def sub(self, a, b):
        return self.fq.sub(a, b)

    def mul(self, a, b):
        return self.fq.mul(a, b)

    def scale(self, n, a):
        return self.fq.scale(n % self.fq.p, a)

    def from_int(self, n):
        return self.fq.from_int(n)

    def is_zero(self, a):
        return self.fq.is_zero(a)


def _pmul(f, g, ring):
    out = [ring.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if ring.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return out


def _psub(f, g, ring):
    n = max(len(f), len(g))
    f = list(f) + [ring.zero] * (n - len(f))
    g = list(g) + [ring.zero] * (n - len(g))
    return [ring.sub(a, b) for a, b in zip(f, g)]


def _pstrip(f, ring):
    while len(f) > 1 and ring.is_zero(f[-1]):
        f = f[:-1]
    return f


def _division_polys(b, ring, upto):
    """x-only division polynomials f_n with psi_n = f_n psi_2^(n even).

    b = (b2, b4, b6, b8).  S(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 = psi_2^2.
    """
    b2, b4, b6, b8 = b
    f = {
        0: [ring.zero],
        1: [ring.one],
        2: [ring.one],
        3: [b8, ring.scale(3, b6), ring.scale(3, b4), b2, ring.from_int(3)],
        4: [ring.sub(ring.mul(b4, b8), ring.mul(b6, b6)),
            ring.sub(ring.mul(b2, b8), ring.mul(b4, b6)),
            ring.scale(10, b8), ring.scale(10, b6), ring.scale(5, b4),
            b2, ring.from_int(2)],
    }
    S = [b6, ring.scale(2, b4), b2, ring.from_int(4)]
    S2 = _pmul(S, S, ring)
    for n in range(5, upto + 1):
        if n % 2:
            m = (n - 1) // 2
            cube = lambda g: _pmul(g, _pmul(g, g, ring), ring)
            t1 = _pmul(f[m + 2], cube(f[m]), ring)
            t2 = _pmul(f[m - 1], cube(f[m + 1]), ring)
            if m % 2 == 0:
                f[n] = _psub(_pmul(S2, t1, ring), t2, ring)
            else:
                f[n] = _psub(t1, _pmul(S2, t2, ring), ring)
        else:
            m = n // 2
            t1 = _pmul(f[m + 2], _pmul(f[m - 1], f[m - 1], ring), ring)
            t2 = _pmul(f[m - 2], _pmul(f[m + 1], f[m + 1], ring), ring)
            f[n] = _pmul(f[m], _psub(t1, t2, ring), ring)
    return {n: _pstrip(fn, ring) for n, fn in f.items()}, S


# ---------------------------------------------------------------------------
# affine point arithmetic, over the field and over the residue field


def point_neg(E, P):
    if P is None:
        return None
    a1, _, a3, _, _ = E.a
    x, y = P
    return (x, -y - a1 * x - a3)


def point_add(E, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    a1, a2, a3, a4, _ = E.a
    x1, y1 = P
    x2, y2 = Q
    dx = x2 - x1
    if dx.is_zero():
        if (y2 - y1).is_zero():
            den = 2 * y1 + a1 * x1 + a3
            if den.is_zero():
                return None
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
        else:
            return None
    else:
        lam = (y2 - y1) / dx
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return (x3, y3)


def point_mul(E, n, P):
    if n < 0:
        return point_mul(E, -n, point_neg(E, P))
    R = None
    B = P
    while n:
        if n & 1:
            R = point_add(E, R, B)
        B = point_add(E, B, B)
        n >>= 1
    return R


def fq_point_neg(E, P):
    if P is None:
        return None
    fq = E.host.fq
    a1, _, a3, _, _ = E.residue_coeffs()
    x, y = P
    return (x, fq.sub(fq.neg(y), fq.add(fq.mul(a1, x), a3)))


def fq_point_add(E, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    fq = E.host.fq
    a1, a2, a3, a4, _ = E.residue_coeffs()
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 == y2:
            den = fq.add(fq.scale(2, y1), fq.add(fq.mul(a1, x1), a3))
            if fq.is_zero(den):
                return None
            num = fq.sub(
                fq.add(fq.scale(3, fq.mul(x1, x1)),
                       fq.add(fq.scale(2, fq.mul(a2, x1)), a4)),
                fq.mul(a1, y1))
            lam = fq.mul(num, fq.inv(den))
        else:
            return None
    else:
        lam = fq.mul(fq.sub(y2, y1), fq.inv(fq.sub(x2, x1)))
    nu = fq.sub(y1, fq.mul(lam, x1))
    x3 = fq.sub(fq.sub(fq.sub(fq.add(fq.mul(lam, lam), fq.mul(a1, lam)),
                              a2), x1), x2)
    y3 = fq.neg(fq.add(fq.mul(fq.add(lam, a1), x3), fq.add(nu, a3)))
    return (x3, y3)


def fq_point_mul(E, n, P):
    if n < 0:
        return fq_point_mul(E, -n, fq_point_neg(E, P))
    R = None
    B = P
    while n:
        if n & 1:
            R = fq_point_add(E, R, B)
        B = fq_point_add(E, B, B)
        n >>= 1
    return R


# ---------------------------------------------------------------------------
# Newton polygon of a coefficient list (positive-slope part)


def _coeff_pi_val(c, host):
    if isinstance(c, int):
        if c == 0:
            return None
        v = 0
        while c % host.p == 0:
            c //= host.p
            v += 1
        return v * host.e
    return None if c.is_zero() else c.val()


def _positive_root_slopes(vals):
    """Root valuations (slope, width) of the positive part of the Newton
    polygon of a coefficient list whose pi-valuations are given (None for
    coefficients that vanish)."""
    pts = [(i, v) for i, v in enumerate(vals) if v is not None]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y1 - y2, x2 - x1)
        if s > 0:
            out.append((s, x2 - x1))
    return sorted(out)


# ---------------------------------------------------------------------------
# result records


@dataclass(frozen=True)
class ReductionData:
    kind: str
    point_count: object
    trace: object


@dataclass(frozen=True)
class T0Data:
    value: object
    rational: bool
    slopes: list
    decomposition: object


@dataclass(frozen=True)
class IsogenyKernelData:
    points: list
    quotient: object
    image_x: object


# ---------------------------------------------------------------------------
# the curve


class WeierstrassCurve:
    """An integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2
    + a4 x + a6 over a field from localfield.

    Coefficients may be ints (exact, and the formal group series are
    then shared across base changes) or Elt instances of the host.
    """

    def __init__(self, host, a):
        if len(a) != 5:
            raise InconsistentInput("a model takes [a1, a2, a3, a4, a6]")
        self.host = host
        coerced = []
        all_int = True
        for c in a:
            if isinstance(c, int):
                coerced.append(host.from_int(c))
            elif isinstance(c, Elt):
                if c.field is not host:
                    raise FieldMismatch("coefficient from a different field")
                coerced.append(c)
                all_int = False
            else:
                raise InconsistentInput("coefficients must be ints or "
                                        "field elements")
        self.a = tuple(coerced)
        self.a_int = tuple(int(c) for c in a) if all_int else None
        for c in self.a:
            if c.val_lower_bound() < 0:
                raise InconsistentInput("non-integral coefficient; clear "
                                        "denominators by rescaling first")
        a1, a2, a3, a4, a6 = self.a
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = (a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4
                   + a2 * a3 * a3 - a4 * a4)
        self.c4 = self.b2 * self.b2 - 24 * self.b4
        self.c6 = -(self.b2 ** 3) + 36 * self.b2 * self.b4 - 216 * self.b6
        self.delta = (-self.b2 * self.b2 * self.b8 - 8 * self.b4 ** 3
                      - 27 * self.b6 * self.b6
                      + 9 * self.b2 * self.b4 * self.b6)
        if self.a_int is not None:
            i1, i2, i3, i4, i6 = self.a_int
            ib2 = i1 * i1 + 4 * i2
            ib4 = 2 * i4 + i1 * i3
            ib6 = i3 * i3 + 4 * i6
            ib8 = i1 * i1 * i6 + 4 * i2 * i6 - i1 * i3 * i4 + i2 * i3 * i3 \
                - i4 * i4
            self._b_int = (ib2, ib4, ib6, ib8)
            self._delta_int = (-ib2 * ib2 * ib8 - 8 * ib4 ** 3
                               - 27 * ib6 * ib6 + 9 * ib2 * ib4 * ib6)
            if self._delta_int == 0:
                raise NotExact("the discriminant vanishes: singular model")
        else:
            self._b_int = None
            self._delta_int = None
            if self.delta.is_zero():
                raise NotExact("the discriminant vanishes at working "
                               "precision")
        self._abar = None
        self._red = None
        self._fg = {}
        self._fp_cache = None
        self._ppts = None
        self._basis = None
        self._tors_gens = {}

    def __repr__(self):
        tag = list(self.a_int) if self.a_int is not None else "elt coeffs"
        return f"<curve {tag} over degree-{self.host.n} field>"

    # -- residue data --------------------------------------------------------

    def residue_coeffs(self):
        if self._abar is None:
            fq = self.host.fq
            out = []
            for c in self.a:
                if c.is_zero() or c.val() >= 1:
                    out.append(fq.zero)
                else:
                    out.append(c.residue())
            self._abar = tuple(out)
        return self._abar

    def _delta_pi_val(self):
        if self._delta_int is not None:
            d, v = self._delta_int, 0
            while d % self.host.p == 0:
                d //= self.host.p
                v += 1
            return v * self.host.e
        return self.delta.val()

    # -- reduction type --------------------------------------------------------

    def reduction_type(self, count_bound=COUNT_BOUND):
        """Classify the reduction by an exhaustive residue point count,
        with a division-polynomial second route that is required to
        agree."""
        if self._red is not None:
            return self._red
        vdel = self._delta_pi_val()
        if vdel >= 12:
            raise ModelNotMinimal(
                f"v(Delta) = {vdel} >= 12: the model is a pi-rescaling; "
                "substitute x = pi^2 x', y = pi^3 y' and retry")
        if vdel > 0:
            self._red = ReductionData("NotGood", None, None)
            return self._red
        fq = self.host.fq
        q = fq.q
        if q > count_bound:
            raise ResidueFieldTooLarge(
                f"residue field of size {q} exceeds the counting bound "
                f"{count_bound}")
        ab = self.residue_coeffs()
        ring = _FqRing(fq)
        rb2 = fq.add(fq.mul(ab[0], ab[0]), fq.scale(4, ab[1]))
        rb4 = fq.add(fq.scale(2, ab[3]), fq.mul(ab[0], ab[2]))
        rb6 = fq.add(fq.mul(ab[2], ab[2]), fq.scale(4, ab[4]))
        # complete the square: points over x are solutions of u^2 = h(x)
        h = [rb6, fq.scale(2, rb4), rb2, fq.from_int(4)]
        half = (q - 1) // 2
        count = 1
        for x in fq.elements():
            hv = fq.zero
            for c in reversed(h):
                hv = fq.add(fq.mul(hv, x), c)
            if fq.is_zero(hv):
                count += 1
            elif fq.pow(hv, half) == fq.one:
                count += 2
        trace = q + 1 - count
        if trace * trace > 4 * q:
            raise ConsistencyError("exhaustive count violates the Hasse "
                                   "bound")
        ss_trace = trace % self.host.p == 0
        rb8 = fq.sub(
            fq.add(fq.add(fq.mul(fq.mul(ab[0], ab[0]), ab[4]),
                          fq.scale(4, fq.mul(ab[1], ab[4]))),
                   fq.mul(ab[1], fq.mul(ab[2], ab[2]))),
            fq.add(fq.mul(ab[0], fq.mul(ab[2], ab[3])),
                   fq.mul(ab[3], ab[3])))
        ss_dual = self._ss_by_division_poly(ring, (rb2, rb4, rb6, rb8))
        if ss_trace != ss_dual:
            raise ConsistencyError("trace and division-polynomial "
                                   "supersingularity tests disagree")
        kind = "GoodSupersingular" if ss_trace else "GoodOrdinary"
        self._red = ReductionData(kind, count, trace)
        return self._red

    def _ss_by_division_poly(self, ring, rb):
        """Second supersingularity route: the reduced p-division
        polynomial is constant iff there is no geometric p-torsion; for
        the ordinary case its roots (the kernel x-coordinates) must show
        up over F_{q^{p-1}}, where Frobenius acts on the etale part
        through a scalar of order dividing p - 1."""
        p = self.host.p
        fq = self.host.fq
        f, _ = _division_polys(rb, ring, p)
        fbar = f[p]
        if len(fbar) - 1 == 0:
            if ring.is_zero(fbar[0]):
                raise ConsistencyError("reduced division polynomial is "
                                       "identically zero")
            return True
        xq = _fq_xpow_mod(fq, fq.q ** (p - 1), fbar)
        lin = [fq.zero, fq.one]
        g = _fq_polygcd(fq, fbar, _fq_polysub(fq, xq, lin))
        if len(g) - 1 == 0:
            raise ConsistencyError("ordinary kernel x-coordinates missing "
                                   "over the expected residue extension")
        return False

    # -- division polynomials --------------------------------------------------

    def _ring(self):
        return _ZRing() if self.a_int is not None else _EltRing(self.host)

    def _fpolys(self, upto):
        if self._fp_cache is None or self._fp_cache[0] < upto:
            ring = self._ring()
            if self.a_int is not None:
                b = self._b_int
            else:
                b = (self.b2, self.b4, self.b6, self.b8)
            f, S = _division_polys(b, ring, upto)
            self._fp_cache = (upto, f, S)
        return self._fp_cache[1], self._fp_cache[2]

    def division_x_poly(self, n):
        """The x-only n-division polynomial f_n (exact coefficients)."""
        f, _ = self._fpolys(max(n, 4))
        return list(f[n])

    def s_poly(self):
        """S(x) = 4x^3 + b2 x^2 + 2 b4 x + b6: the square of psi_2."""
        _, S = self._fpolys(4)
        return list(S)

    def _phi_poly(self):
        p = self.host.p
        ring = self._ring()
        f, S = self._fpolys(p + 2)
        fp2 = _pmul(f[p], f[p], ring)
        t = _pmul(S, _pmul(f[p + 1], f[p - 1], ring), ring)
        poly = _pstrip(_psub([ring.zero] + fp2, t, ring), ring)
        if len(poly) - 1 != p * p:
            raise ConsistencyError("x-coordinate multiplication polynomial "
                                   "has the wrong degree")
        return poly

    # -- rational torsion --------------------------------------------------------

    def _require_good(self):
        rd = self.reduction_type()
        if rd.kind == "NotGood":
            raise NotGoodReduction("the model does not have good reduction")
        return rd

    def _sqrt(self, d):
        if d.val() % 2:
            return None
        rs = roots(self.host, [d * (-1), 0, 1])
        return rs[0] if rs else None

    def _eval_rational(self, poly, x):
        acc = self.host.zero()
        for c in reversed(poly):
            acc = acc * x + c
        return acc

    def _y_pair(self, x):
        """Both y-coordinates over a given x, or None when not rational."""
        a1, _, a3, _, _ = self.a
        Sx = self._eval_rational(self.s_poly(), x)
        s = self._sqrt(Sx)
        if s is None:
            return None
        t = a1 * x + a3
        return ((s - t) / 2, (-s - t) / 2)

    def _p_torsion_points(self):
        """All affine k-rational points of E[p], cached."""
        if self._ppts is None:
            self._require_good()
            p = self.host.p
            xs = roots(self.host, self.division_x_poly(p))
            pts = []
            for x in xs:
                pair = self._y_pair(x)
                if pair is not None:
                    pts.append((x, pair[0]))
                    pts.append((x, pair[1]))
            if 1 + len(pts) not in (1, p, p * p):
                raise ConsistencyError("rational p-torsion does not form "
                                       "a subgroup order")
            self._ppts = pts
        return self._ppts

    def _p_basis(self):
        """Two independent generators of a full rational E[p]."""
        if self._basis is None:
            p = self.host.p
            pts = self._p_torsion_points()
            if len(pts) != p * p - 1:
                raise ConsistencyError("basis requested without full "
                                       "rational p-torsion")
            P1 = pts[0]
            xs = []
            R = P1
            for _ in range(1, p):
                xs.append(R[0])
                R = point_add(self, R, P1)
            P2 = None
            for Q in pts:
                if all(not (Q[0] - xm).is_zero() for xm in xs):
                    P2 = Q
                    break
            if P2 is None:
                raise ConsistencyError("no independent second p-torsion "
                                       "generator found")
            self._basis = (P1, P2)
        return self._basis

    def _fiber_point(self, P):
        """A rational R with [p] R = P, or None.

        The fiber x-coordinates are the roots of phi_p - x(P) psi_p^2,
        which has degree p^2; candidates are confirmed by an actual
        multiplication so that preimages of -P are not miscounted.
        """
        p = self.host.p
        ring = self._ring()
        fp = self.division_x_poly(p)
        fp2 = _pmul(fp, fp, ring)
        phi = self._phi_poly()
        xP = P[0]
        coeffs = []
        for i in range(p * p + 1):
            c = phi[i] if i < len(phi) else ring.zero
            d = fp2[i] if i < len(fp2) else ring.zero
            base = self.host.from_int(c) if isinstance(c, int) else c
            dd = self.host.from_int(d) if isinstance(d, int) else d
            coeffs.append(base - xP * dd)
        for x in roots(self.host, coeffs):
            pair = self._y_pair(x)
            if pair is None:
                continue
            for y in pair:
                R = (x, y)
                T = point_mul(self, p, R)
                if T is not None and (T[0] - P[0]).is_zero() \
                        and (T[1] - P[1]).is_zero():
                    return R
        return None

    def torsion_level_N(self, nmax):
        """The largest n <= nmax with E[p^n] entirely k-rational.

        Level 1 is decided by the p-division polynomial plus square
        tests; higher levels lift a basis through fibers of the
        multiplication-by-p map (a rational preimage of each basis
        vector forces the whole of E[p^(n+1)] to be rational, since the
        two preimages generate it over E[p^n]).  Raises CapReached when
        the level reaches nmax, since the true value might be larger.
        """
        self._require_good()
        if nmax < 0:
            raise InconsistentInput("nmax must be nonnegative")
        if nmax == 0:
            return 0
        p = self.host.p
        pts = self._p_torsion_points()
        if 1 + len(pts) != p * p:
            return 0
        gens = list(self._p_basis())
        self._tors_gens[1] = gens
        level = 1
        while level < nmax:
            nxt = []
            for P in gens:
                R = self._fiber_point(P)
                if R is None:
                    break
                nxt.append(R)
            if len(nxt) < 2:
                return level
            level += 1
            gens = nxt
            self._tors_gens[level] = gens
        raise CapReached(nmax, f"E[p^{nmax}] is rational; the true level "
                               "may exceed the cap")

    # -- formal group ----------------------------------------------------------

    def formal_group(self, cap=None):
        """Formal group data at the given series cap (default p^2 + 6).

        The cap must exceed p^2 so that the height of [p](t) is visible;
        the height is cross-checked against the reduction type.
        """
        rd = self._require_good()
        p = self.host.p
        if cap is None:
            cap = p * p + 6
        if cap < p * p + 1:
            raise CapTooSmall(
                f"series cap {cap} cannot show the [p] height; need at "
                f"least p^2 + 1 = {p * p + 1}")
        if cap not in self._fg:
            if self.a_int is not None:
                fg = formal_group_data(p, self.a_int, cap,
                                       int_modexp=self.host.cprec0)
            else:
                fg = formal_group_data(p, self.a, cap, host=self.host)
            expected = p if rd.kind == "GoodOrdinary" else p * p
            if fg.lowest_unit_degree != expected:
                raise ConsistencyError(
                    "multiplication series height disagrees with the "
                    "reduction classification")
            self._fg[cap] = fg
        return self._fg[cap]

    def _kernel_roots(self, fg, n):
        """Rational roots of [p^n](t)/t of positive valuation.

        Tail domination: the positive part of the Newton polygon is
        fixed by the coefficients up to the first unit one (degree at
        most p^2 <= cap), and the guard below keeps the truncation tail
        too deep to shadow or forge a rational root.
        """
        pm = fg.pn(n)
        rs = roots(self.host, list(pm[1:]), min_val=1)
        if rs:
            vals = [r.val() for r in rs]
            wdeg = fg.lowest_unit_degree
            if (fg.cap + 1) * min(vals) <= (wdeg + 1) * max(vals):
                raise CapTooSmall(
                    "kernel roots too shallow for the series cap; the "
                    "truncation tail could interfere; raise the cap")
        return rs

    def _formal_fiber(self, fg, r):
        """A rational s of positive valuation with [p](s) = r, or None."""
        pm = fg.pmul
        coeffs = [r * (-1)] + list(pm[1:])
        rs = roots(self.host, coeffs, min_val=1)
        if not rs:
            return None
        vals = [s.val() for s in rs]
        if (fg.cap + 1) * min(vals) <= (fg.lowest_unit_degree + 1) * \
                (max(vals) + r.val()):
            raise CapTooSmall("fiber roots too shallow for the series cap")
        return rs[0]

    def nhat(self, nmax, cap=None):
        """The largest n <= nmax with the full [p^n]-kernel rational.

        Mirrors torsion_level_N inside the formal group: level 1 counts
        the rational kernel roots, higher levels solve [p](t) = r for
        each generator (rationality of one preimage per generator is
        enough, as the preimages regenerate the next kernel level).
        """
        rd = self._require_good()
        if nmax < 0:
            raise InconsistentInput("nmax must be nonnegative")
        if nmax == 0:
            return 0
        p = self.host.p
        fg = self.formal_group(cap)
        h = 1 if rd.kind == "GoodOrdinary" else 2
        kp = self._kernel_roots(fg, 1)
        if 1 + len(kp) not in (1, p, p * p):
            raise ConsistencyError("rational kernel points do not form a "
                                   "subgroup order")
        if len(kp) != p**h - 1:
            return 0
        if h == 1:
            gens = [kp[0]]
        else:
            r1 = kp[0]
            mset = [r1]
            for m in range(2, p):
                mset.append(fg.eval_series(fg.mult(m), r1))
            r2 = None
            for r in kp:
                if all(not (r - s).is_zero() for s in mset):
                    r2 = r
                    break
            if r2 is None:
                raise ConsistencyError("no independent second kernel root")
            gens = [r1, r2]
        level = 1
        while level < nmax:
            nxt = []
            for r in gens:
                s = self._formal_fiber(fg, r)
                if s is None:
                    break
                nxt.append(s)
            if len(nxt) < len(gens):
                return level
            level += 1
            gens = nxt
        raise CapReached(nmax, f"the [p^{nmax}]-kernel is rational; the "
                               "true level may exceed the cap")

    def t0(self, cap=None):
        """Largest valuation in the [p]-kernel of a supersingular model.

        When all p^2 - 1 nonzero kernel points are rational the result
        carries the integer t0 and the level pair (p t0, p(e0 - t0));
        otherwise rational is False and only the kernel valuations (as
        exact fractions, with multiplicities) are reported.
        """
        rd = self._require_good()
        if rd.kind != "GoodSupersingular":
            raise NotSupersingular("t0 is defined through the "
                                   "supersingular kernel filtration")
        p = self.host.p
        fg = self.formal_group(cap)
        kp = self._kernel_roots(fg, 1)
        if len(kp) == p * p - 1:
            vals = sorted(r.val() for r in kp)
            groups = []
            for v in vals:
                if groups and groups[-1][0] == Fraction(v):
                    groups[-1] = (groups[-1][0], groups[-1][1] + 1)
                else:
                    groups.append((Fraction(v), 1))
            t0v = vals[-1]
            if self.host.e % (p - 1):
                raise ConsistencyError("full rational kernel forces "
                                       "(p - 1) | e")
            e0i = self.host.e // (p - 1)
            if not t0v < p * e0i:
                raise ConsistencyError("kernel valuation exceeds the "
                                       "filtration boundary")
            return T0Data(t0v, True, groups,
                          (p * t0v, p * (e0i - t0v)))
        pm = fg.pmul
        prefix = pm[1: fg.lowest_unit_degree + 1]
        vals = [_coeff_pi_val(c, self.host) for c in prefix]
        slopes = _positive_root_slopes(vals)
        return T0Data(None, False, slopes, None)

    # -- complex multiplication ---------------------------------------------------

    def cm_kernel_check(self, eta, n):
        """Check ker(eta^n) = (kernel of [p^n] in the formal group) for
        eta = a + b z, z a root of x^2 + 1 (models y^2 = x^3 + a4 x) or
        of x^2 + x + 1 (models y^2 = x^3 + a6), with eta of norm p.

        The root is fixed by requiring [eta](t) to reduce to Frobenius
        mod p (first unit coefficient at degree p); the kernels are then
        compared level by level through the positive Newton polygon
        parts and the rational root counts.
        """
        a, b = eta
        if not (isinstance(a, int) and isinstance(b, int)):
            raise InconsistentInput("eta must be an integer pair")
        z1, z2, z3, z4, z6 = [c.is_zero() for c in self.a]
        disc4 = z1 and z2 and z3 and z6 and not z4
        disc3 = z1 and z2 and z3 and z4 and not z6
        if not (disc4 or disc3):
            raise NotCM("the model is not of the form y^2 = x^3 + a4 x "
                        "or y^2 = x^3 + a6")
        p = self.host.p
        if disc4 and p % 4 != 1:
            raise NotSplit(f"p = {p} is not split in the Gaussian order")
        if disc3 and p % 3 != 1:
            raise NotSplit(f"p = {p} is not split in the Eisenstein order")
        nrm = a * a + b * b if disc4 else a * a - a * b + b * b
        if nrm != p:
            raise InconsistentInput(f"eta has norm {nrm}, not p = {p}")
        if n < 0:
            raise InconsistentInput("n must be nonnegative")
        if n == 0:
            return True
        rd = self._require_good()
        if rd.kind != "GoodOrdinary":
            raise ConsistencyError("a split CM model must be ordinary")
        fg = self.formal_group()
        autpoly = [1, 0, 1] if disc4 else [1, 1, 1]
        zs = roots(self.host, autpoly)
        if not zs:
            raise ConsistencyError("split case lost its automorphism root")
        chosen = None
        for z in zs:
            es = self._eta_series(fg, a, b, z)
            d = None
            for i in range(1, fg.cap + 1):
                c = es[i]
                if not c.is_zero() and c.val() == 0:
                    d = i
                    break
            if d == p:
                chosen = es
                break
        if chosen is None:
            raise ConsistencyError("no automorphism choice makes eta "
                                   "reduce to Frobenius")
        eo = EltOps(self.host)
        cur = chosen
        for m in range(1, n + 1):
            if not self._kernel_profiles_match(cur, fg.pn(m), p**m):
                return False
            if m < n:
                cur = series_compose(chosen, cur, fg.cap, eo)
        return True

    def _eta_series(self, fg, a, b, z):
        """[a + b z](t) = F([a](t), [b](z t)) over the host field."""
        host = self.host
        eo = EltOps(host)
        cap = fg.cap

        def lift(s):
            return [host.from_int(c) if isinstance(c, int) else c
                    for c in s]

        sa = lift(fg.mult(a))
        zp = [host.one()]
        for _ in range(cap):
            zp.append(zp[-1] * z)
        sb = [c * zp[i] for i, c in enumerate(lift(fg.mult(b)))]
        mj = max(j for _, j in fg.F)
        pows_b = [None] * (mj + 1)
        one = [host.zero()] * (cap + 1)
        one[0] = host.one()
        pows_b[0] = one
        for j in range(1, mj + 1):
            pows_b[j] = series_mul(pows_b[j - 1], sb, cap, eo)
        by_i = {}
        for (i, j), c in fg.F.items():
            by_i.setdefault(i, []).append((j, c))
        out = [host.zero()] * (cap + 1)
        pa = one
        for i in range(max(by_i) + 1):
            if i:
                pa = series_mul(pa, sa, cap, eo)
            if i not in by_i:
                continue
            inner = [host.zero()] * (cap + 1)
            for j, c in by_i[i]:
                cc = host.from_int(c) if isinstance(c, int) else c
                base = pows_b[j]
                for d in range(j, cap + 1):
                    if not base[d].is_zero():
                        inner[d] = inner[d] + base[d] * cc
            contrib = series_mul(pa, inner, cap, eo)
            for d in range(cap + 1):
                out[d] = out[d] + contrib[d]
        return out

    def _kernel_profiles_match(self, es, target, prefix):
        """Same positive Newton polygon part and the same number of
        rational positive-valuation roots."""
        host = self.host
        v1 = [_coeff_pi_val(c, host) for c in es[1: prefix + 1]]
        v2 = [_coeff_pi_val(c, host) for c in target[1: prefix + 1]]
        if _positive_root_slopes(v1) != _positive_root_slopes(v2):
            return False
        r1 = roots(host, list(es[1:]), min_val=1)
        r2 = roots(host, list(target[1:]), min_val=1)
        return len(r1) == len(r2)

    # -- etale kernel lifts and quotients ---------------------------------------

    def isogeny_kernel_data(self, N, want_quotient=True):
        """The etale-lift kernel H_N (a cyclic order-p^N subgroup meeting
        the formal group trivially) as a point list, with its quotient
        model by the classical isogeny formulas when N = 1.

        The subgroup is the span of a torsion point whose reduction has
        exact order p^N; which complement of the connected part this
        picks is a choice, fixed deterministically by the generator
        search order.
        """
        if N < 0:
            raise InconsistentInput("N must be nonnegative")
        if N == 0:
            return IsogenyKernelData([None], self, None)
        if N >= 2 and want_quotient:
            raise VeluUnsupported("quotient models are produced for "
                                  "N = 1 only")
        rd = self._require_good()
        if rd.kind != "GoodOrdinary":
            raise HypothesisViolated("an etale kernel lift needs ordinary "
                                     "reduction")
        p = self.host.p
        try:
            lvl = self.torsion_level_N(N)
        except CapReached:
            lvl = N
        if lvl < N:
            raise HypothesisViolated(
                f"E[p^{N}] is not rational over the base (level {lvl})")
        G1, G2 = self._tors_gens[N]
        pN = p**N
        T = None
        for u in range(pN):
            for v in range(pN):
                if u % p == 0 and v % p == 0:
                    continue
                cand = point_add(self, point_mul(self, u, G1),
                                 point_mul(self, v, G2))
                red = self._reduce_point(cand)
                if red is None:
                    continue
                if fq_point_mul(self, pN // p, red) is not None:
                    T = cand
                    break
            if T is not None:
                break
        if T is None:
            raise ConsistencyError("no etale generator found despite "
                                   "ordinary reduction")
        points = [None]
        R = None
        for _ in range(1, pN):
            R = point_add(self, R, T)
            points.append(R)
        if N >= 2:
            return IsogenyKernelData(points, None, None)
        a1, a2, a3, a4, a6 = self.a
        # one representative per {Q, -Q} pair (the summands are even in Q,
        # and p is odd so the kernel has no 2-torsion)
        half = points[1: 1 + (pN - 1) // 2]
        vs, us = [], []
        vsum = self.host.zero()
        wsum = self.host.zero()
        for Q in half:
            xQ, yQ = Q
            if xQ.val_lower_bound() < 0:
                raise ConsistencyError("etale kernel point is not integral")
            gx = 3 * xQ * xQ + 2 * a2 * xQ + a4 - a1 * yQ
            gy = -2 * yQ - a1 * xQ - a3
            vQ = 2 * gx - a1 * gy
            uQ = gy * gy
            vs.append(vQ)
            us.append(uQ)
            vsum = vsum + vQ
            wsum = wsum + uQ + xQ * vQ
        quotient = WeierstrassCurve(
            self.host,
            [a1, a2, a3, a4 - 5 * vsum, a6 - self.b2 * vsum - 7 * wsum])
        if quotient.delta.val() != 0:
            raise ConsistencyError("the etale quotient lost good reduction")
        fg = self.formal_group()
        kr = self._kernel_roots(fg, 1)
        if not kr:
            raise ConsistencyError("full E[p] should put the connected "
                                   "kernel inside the field")
        z0 = kr[0]
        wz = fg.eval_series(list(fg.w[: fg.cap + 1]), z0)
        x0 = z0 / wz
        y0 = -(wz.inv())
        image_x = x0
        for Q, vQ, uQ in zip(half, vs, us):
            dx = x0 - Q[0]
            image_x = image_x + vQ / dx + uQ / (dx * dx)
        check = quotient._eval_rational(quotient.division_x_poly(p),
                                        image_x)
        if not check.is_zero():
            raise ConsistencyError("dual kernel generator image is not "
                                   "p-torsion on the quotient")
        _ = y0
        return IsogenyKernelData(points, quotient, image_x)

    def _reduce_point(self, P):
        if P is None:
            return None
        x, y = P
        if x.val_lower_bound() < 0:
            if y.val_lower_bound() >= 0:
                raise ConsistencyError("point with polar x but integral y")
            return None
        fq = self.host.fq

        def res(c):
            if c.is_zero() or c.val() >= 1:
                return fq.zero
            return c.residue()

        return (res(x), res(y))

    # -- connected-etale counts ----------------------------------------------------

    def connected_etale_counts(self):
        """(#formal kernel points, #reduced image of the rational
        p-torsion, #rational p-torsion), all as group orders.

        The three counts are computed through independent routes; their
        multiplicativity is a theorem the suite checks, not something
        enforced here.
        """
        self._require_good()
        fg = self.formal_group()
        hat = 1 + len(self._kernel_roots(fg, 1))
        pts = self._p_torsion_points()
        tor = 1 + len(pts)
        residues = set()
        for P in pts:
            r = self._reduce_point(P)
            if r is not None:
                residues.add(r)
        return (hat, 1 + len(residues), tor)

    # -- base change -----------------------------------------------------------

    def base_change(self, L):
        """The same integer model over another field with the same p."""
        if self.a_int is None:
            raise InconsistentInput(
                "base change needs rational integer coefficients; "
                "construct the model over the target field directly")
        if L.p != self.host.p:
            raise FieldMismatch("base change must stay over the same p")
        return WeierstrassCurve(L, list(self.a_int))


# ---------------------------------------------------------------------------
# residue field polynomial helpers (for the dual supersingularity route)


def _fq_polysub(fq, f, g):
    n = max(len(f), len(g))
    f = list(f) + [fq.zero] * (n - len(f))
    g = list(g) + [fq.zero] * (n - len(g))
    out = [fq.sub(a, b) for a, b in zip(f, g)]
    while len(out) > 1 and fq.is_zero(out[-1]):
        out.pop()
    return out


def _fq_polymod(fq, f, g):
    f = list(f)
    dg = len(g) - 1
    inv_lead = fq.inv(g[-1])
    while len(f) - 1 >= dg and len(f) > 1:
        c = fq.mul(f[-1], inv_lead)
        off = len(f) - 1 - dg
        for i in range(dg + 1):
            f[off + i] = fq.sub(f[off + i], fq.mul(c, g[i]))
        while len(f) > 1 and fq.is_zero(f[-1]):
            f.pop()
        if len(f) - 1 < dg:
            break
    return f


def _fq_polymulmod(fq, f, g, m):
    out = [fq.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if fq.is_zero(a):
            continue
        for j, b in enumerate(g):
            out[i + j] = fq.add(out[i + j], fq.mul(a, b))
    return _fq_polymod(fq, out, m)


def _fq_xpow_mod(fq, n, m):
    """x^n mod m by binary powering."""
    result = [fq.one]
    base = [fq.zero, fq.one]
    base = _fq_polymod(fq, base, m)
    while n:
        if n & 1:
            result = _fq_polymulmod(fq, result, base, m)
        base = _fq_polymulmod(fq, base, base, m)
        n >>= 1
    return result


def _fq_polygcd(fq, f, g):
    while len(g) > 1 or not fq.is_zero(g[0]):
        f, g = g, _fq_polymod(fq, f, g)
    return f
