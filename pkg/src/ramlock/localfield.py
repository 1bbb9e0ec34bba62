"""p-adic fields presented as an Eisenstein step over an unramified base.

A field k of residue characteristic p (odd) and degree ef over Q_p is given
by a monic irreducible polynomial g of degree f over F_p, which fixes the
coefficient ring W = Z_q with q = p^f, and a monic Eisenstein polynomial of
degree e over W whose root x is the uniformizer.  Elements are stored as

    pi^shift * sum_{i<e} c_i x^i,   c_i in W known modulo p^cprec.

Valuations are exact whenever the element is nonzero at working precision:
the candidate valuations e*v_p(c_i) + i are pairwise distinct mod e, so the
minimum is attained by a single term and cancellation is impossible.  The
absolute pi-adic precision of an element is shift + e*cprec.  Operations
that would need to consume the last coefficient digit raise
PrecisionExhausted rather than return silently wrong answers; callers can
retry with a larger prec.

Only the p-power part of a valuation is ever stripped from the coefficients
(an exact integer division), so normalization never loses absolute
precision.  Unit parts for residues and digit probes are produced on demand
by multiplying with a power of x and dividing by the matching power of p,
using the exact relation x^e = -p * R with R the Eisenstein cofactor.
"""

import os
from functools import lru_cache

from .arith import is_prime, vp_int
from .errors import (
    DegreeCapExceeded,
    EvenPrime,
    FieldMismatch,
    NonEisenstein,
    NotAUnit,
    PrecisionExhausted,
    ReducibleUnramPoly,
    ResidueFieldTooLarge,
)

DEFAULT_PREC = 40
DEFAULT_DEGREE_CAP = 16
DEFAULT_F_CAP = 4
GUARD_PI_DIGITS = 16


def degree_cap():
    raw = os.environ.get("RAMLOCK_DEGREE_CAP")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    return int(raw)


# ---------------------------------------------------------------------------
# residue field F_q = F_p[y]/(g)

class Fq:
    """Arithmetic in F_q; elements are f-tuples of ints in [0, p)."""

    def __init__(self, p, gbar):
        self.p = p
        self.gbar = tuple(c % p for c in gbar)
        self.f = len(gbar) - 1
        self.q = p**self.f
        self.zero = (0,) * self.f
        self.one = tuple([1] + [0] * (self.f - 1)) if self.f else ()

    def from_int(self, n):
        return tuple([n % self.p] + [0] * (self.f - 1))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def scale(self, c, a):
        return tuple(c * x % self.p for x in a)

    def mul(self, a, b):
        p, f = self.p, self.f
        prod = [0] * (2 * f - 1) if f > 1 else [a[0] * b[0]]
        if f > 1:
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
        # reduce modulo the monic gbar
        for d in range(len(prod) - 1, f - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(f):
                    prod[d - f + i] -= c * self.gbar[i]
            prod[d] = 0
        return tuple(prod[i] % p for i in range(f))

    def pow(self, a, n):
        n %= (self.q - 1) if any(a) else 1
        out = self.one
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inv(self, a):
        if not any(a):
            raise NotAUnit("inverse of zero in the residue field")
        return self.pow(a, self.q - 2)

    def is_zero(self, a):
        return not any(a)

    def elements(self):
        from itertools import product
        for tup in product(range(self.p), repeat=self.f):
            yield tup

    def frob(self, a):
        return self.pow(a, self.p)


# ---------------------------------------------------------------------------
# canonical unramified polynomials

def _polydiv_rem_modp(num, den, p):
    # remainder of num by monic den over F_p; both low-to-high coefficient lists
    num = [c % p for c in num]
    dd = len(den) - 1
    for d in range(len(num) - 1, dd - 1, -1):
        c = num[d] % p
        if c:
            for i in range(dd + 1):
                num[d - dd + i] = (num[d - dd + i] - c * den[i]) % p
    return num[:dd]


def is_irreducible_mod_p(coeffs, p):
    """Monic polynomial (low-to-high) irreducible over F_p, by trial division."""
    f = len(coeffs) - 1
    if f < 1 or coeffs[-1] % p != 1:
        return False
    if f == 1:
        return True
    # no roots
    for a in range(p):
        if sum(c * a**i for i, c in enumerate(coeffs)) % p == 0:
            return False
    if f <= 3:
        return True
    # no irreducible quadratic divisors (f = 4 is the largest we serve)
    for a0 in range(p):
        for a1 in range(p):
            den = [a0, a1, 1]
            if not is_irreducible_mod_p(den, p):
                continue
            if not any(_polydiv_rem_modp(list(coeffs), den, p)):
                return False
    return True


@lru_cache(maxsize=None)
def canonical_unram_poly(p, f):
    """The degree-f monic irreducible over F_p whose coefficient vector is
    smallest when read as a base-p integer a_0 + a_1 p + ...; for f = 1 this
    is the polynomial y itself."""
    if f == 1:
        return (0, 1)
    for a in range(p**f):
        coeffs = []
        t = a
        for _ in range(f):
            coeffs.append(t % p)
            t //= p
        coeffs.append(1)
        if is_irreducible_mod_p(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found; unreachable")


# ---------------------------------------------------------------------------
# the field

class FieldK:
    """Two-step presentation of a finite extension of Q_p, p odd."""

    def __init__(self, p, unram, eis, prec, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("use make_field(...)")
        self.p = p
        self.unram = unram                      # tuple of f+1 ints, monic
        self.f = len(unram) - 1
        self.eis = eis                          # tuple of e+1 f-tuples
        self.e = len(eis) - 1
        self.n = self.e * self.f
        self.q = p**self.f
        self.prec = prec
        self.cprec0 = (prec + GUARD_PI_DIGITS + self.e - 1) // self.e + 2
        self.fq = Fq(p, unram)
        # exact Eisenstein cofactor R = sum (a_i / p) x^i, i < e, so that
        # x^e = -p * R; its constant term is a unit by Eisenstein-ness
        self.R_coeffs = tuple(tuple(c // p for c in self.eis[i])
                              for i in range(self.e))
        self._neg_Rinv_res = None               # residue of -(R^{-1}), cached

    # -- element constructors ------------------------------------------------

    def _mk(self, shift, coeffs, cprec):
        if cprec < 1:
            raise PrecisionExhausted(
                "coefficient precision exhausted; rebuild the field with a "
                "larger prec")
        pm = self.p**cprec
        cc = tuple(tuple(c % pm for c in vec) for vec in coeffs)
        return Elt(self, shift, cc, cprec)

    def zero(self, cprec=None):
        cp = self.cprec0 if cprec is None else cprec
        return self._mk(0, ((0,) * self.f,) * self.e, cp)

    def one(self):
        return self.from_int(1)

    def from_int(self, a):
        vec = [a] + [0] * (self.f - 1)
        coeffs = [tuple(vec)] + [(0,) * self.f] * (self.e - 1)
        return self._mk(0, coeffs, self.cprec0)

    def pi(self):
        if self.e == 1:
            # x = p * (-R), with R a unit constant
            return self.from_int(-self.R_coeffs[0][0] * self.p)
        coeffs = [(0,) * self.f, self.fq_lift_vec((1,) + (0,) * (self.f - 1))]
        coeffs += [(0,) * self.f] * (self.e - 2)
        return self._mk(0, coeffs, self.cprec0)

    def gen_u(self):
        """The coefficient-ring generator y as a field element."""
        vec = tuple([0, 1] + [0] * (self.f - 2)) if self.f > 1 else (1,)
        coeffs = [vec] + [(0,) * self.f] * (self.e - 1)
        return self._mk(0, coeffs, self.cprec0)

    def fq_lift_vec(self, d):
        return tuple(int(x) for x in d)

    def lift_fq(self, d):
        """Naive lift of an F_q element to a unit (or zero) of the field."""
        coeffs = [self.fq_lift_vec(d)] + [(0,) * self.f] * (self.e - 1)
        return self._mk(0, coeffs, self.cprec0)

    def from_coeffs(self, coeffs, shift=0, cprec=None):
        cp = self.cprec0 if cprec is None else cprec
        cc = []
        for vec in coeffs:
            if isinstance(vec, int):
                cc.append(tuple([vec] + [0] * (self.f - 1)))
            else:
                vec = list(vec) + [0] * (self.f - len(vec))
                cc.append(tuple(vec))
        while len(cc) < self.e:
            cc.append((0,) * self.f)
        return self._mk(shift, cc, cp)

    # -- W = Z_q arithmetic on f-tuples ---------------------------------------

    def _wmul(self, a, b, pm):
        f = self.f
        if f == 1:
            return ((a[0] * b[0]) % pm,)
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for d in range(2 * f - 2, f - 1, -1):
            c = prod[d]
            if c:
                for i in range(f):
                    prod[d - f + i] -= c * self.unram[i]
                prod[d] = 0
        return tuple(prod[i] % pm for i in range(f))

    def _wvec_vp(self, vec, cprec):
        v = None
        for c in vec:
            if c:
                w = vp_int(c, self.p)
                if w < cprec and (v is None or w < v):
                    v = w
        return v

    # -- polynomial (length e over W) helpers ---------------------------------

    def _polymul(self, A, B, pm):
        e, f = self.e, self.f
        if e == 1:
            return [self._wmul(A[0], B[0], pm)]
        prod = [(0,) * f for _ in range(2 * e - 1)]
        for i, ai in enumerate(A):
            if any(ai):
                for j, bj in enumerate(B):
                    if any(bj):
                        t = self._wmul(ai, bj, pm)
                        prod[i + j] = tuple(
                            (x + y) % pm for x, y in zip(prod[i + j], t))
        return self._polyred(prod, pm)

    def _polyred(self, prod, pm):
        # reduce modulo the monic Eisenstein polynomial
        e, f = self.e, self.f
        prod = [list(v) for v in prod]
        for d in range(len(prod) - 1, e - 1, -1):
            lead = prod[d]
            if any(lead):
                lv = tuple(c % pm for c in lead)
                for i in range(e):
                    ei = self.eis[i]
                    if any(ei):
                        t = self._wmul(lv, tuple(c % pm for c in ei), pm)
                        tgt = prod[d - e + i]
                        for j in range(f):
                            tgt[j] = (tgt[j] - t[j]) % pm
            prod[d] = [0] * f
        return [tuple(c % pm for c in v) for v in prod[:e]]

    def _xmul(self, A, k, pm):
        # multiply by x^k with reduction; k >= 0.  Whole multiples of e go
        # through the exact relation x^e = -p R, so the cost is logarithmic
        # in k instead of linear.
        e, f = self.e, self.f
        cur = [tuple(v) for v in A]
        q, r = divmod(k, e)
        if q and e > 1:
            scale = pow(-self.p, q, pm)
            cur = [tuple(scale * c % pm for c in vec) for vec in cur]
            base = [tuple(c % pm for c in vec) for vec in self.R_coeffs]
            while q:
                if q & 1:
                    cur = self._polymul(cur, base, pm)
                q >>= 1
                if q:
                    base = self._polymul(base, base, pm)
        elif q:
            # e == 1: x itself is -p * R0 with R0 a unit integer
            scale = pow(-self.p * self.R_coeffs[0][0], q, pm)
            cur = [tuple(scale * c % pm for c in vec) for vec in cur]
        for _ in range(r):
            shifted = [(0,) * f] + cur
            cur = self._polyred(shifted, pm)
        return cur

    # -- residues and units ----------------------------------------------------

    def neg_Rinv_residue(self):
        """Residue of -(R^{-1}) = residue of x^e / p's unit cofactor inverse."""
        if self._neg_Rinv_res is None:
            r0 = tuple(c % self.p for c in self.R_coeffs[0])
            self._neg_Rinv_res = self.fq.neg(self.fq.inv(r0))
        return self._neg_Rinv_res

    def key(self):
        return (self.p, self.unram, self.eis, self.prec)

    def __repr__(self):
        return (f"FieldK(p={self.p}, f={self.f}, e={self.e}, "
                f"prec={self.prec})")


_FIELD_TOKEN = object()


def _normalize_eis(p, f, eis):
    out = []
    for c in eis:
        if isinstance(c, int):
            out.append(tuple([c] + [0] * (f - 1)))
        else:
            vec = list(c)
            if len(vec) > f:
                raise NonEisenstein("coefficient vector longer than f")
            vec += [0] * (f - len(vec))
            out.append(tuple(int(x) for x in vec))
    return tuple(out)


@lru_cache(maxsize=None)
def _make_field_cached(p, unram, eis, prec, cap):
    if p == 2:
        raise EvenPrime("p = 2 is out of scope")
    if not is_prime(p):
        raise EvenPrime(f"p = {p} is not an odd prime")
    f = len(unram) - 1
    if f < 1 or unram[-1] != 1:
        raise ReducibleUnramPoly("unramified polynomial must be monic")
    if f > DEFAULT_F_CAP:
        raise ResidueFieldTooLarge(
            f"residue degree {f} exceeds the supported cap {DEFAULT_F_CAP}")
    if not is_irreducible_mod_p(tuple(c % p for c in unram), p):
        raise ReducibleUnramPoly(
            "unramified polynomial is reducible modulo p")
    e = len(eis) - 1
    if e < 1:
        raise NonEisenstein("Eisenstein polynomial must have degree >= 1")
    if e * f > cap:
        raise DegreeCapExceeded(
            f"degree {e * f} exceeds the cap {cap}; raise it explicitly "
            "or via RAMLOCK_DEGREE_CAP")
    lead = eis[-1]
    if lead[0] != 1 or any(c != 0 for c in lead[1:]):
        raise NonEisenstein("Eisenstein polynomial must be monic")
    for i in range(e):
        if any(c % p != 0 for c in eis[i]):
            raise NonEisenstein(
                f"coefficient of x^{i} is not divisible by p")
    if all((c // p) % p == 0 for c in eis[0]):
        raise NonEisenstein(
            "constant coefficient has p-valuation >= 2")
    if prec < 1:
        raise PrecisionExhausted("prec must be >= 1")
    return FieldK(p, unram, eis, prec, _token=_FIELD_TOKEN)


def make_field(p, eis, f=1, prec=DEFAULT_PREC, unram=None, cap=None):
    """Construct (with caching) the field defined by an Eisenstein step.

    eis: list of e+1 coefficients, low-to-high; each entry an int or a
    length-<=f list of ints giving a W-element in the basis 1, y, ..
    unram: optional monic integer polynomial of degree f; defaults to the
    canonical irreducible for (p, f).
    """
    if unram is None:
        unram = canonical_unram_poly(p, f)
    else:
        unram = tuple(int(c) for c in unram)
        f = len(unram) - 1
    eis_n = _normalize_eis(p, f, eis)
    if cap is None:
        cap = degree_cap()
    return _make_field_cached(p, unram, eis_n, prec, cap)


def make_unramified_field(p, f, prec=DEFAULT_PREC, cap=None):
    """Q_q: trivial Eisenstein step x - p over the canonical W."""
    return make_field(p, [-p, 1], f=f, prec=prec, cap=cap)


# ---------------------------------------------------------------------------
# elements

class Elt:
    __slots__ = ("field", "shift", "coeffs", "cprec", "_val", "_vpmin")

    def __init__(self, field, shift, coeffs, cprec):
        self.field = field
        self.shift = shift
        self.coeffs = coeffs
        self.cprec = cprec
        self._val = -1                      # lazy; None means zero-to-prec
        self._vpmin = -1

    # -- precision bookkeeping -------------------------------------------------

    @property
    def abs_prec(self):
        """Absolute pi-adic precision: the element is known mod pi^abs_prec."""
        return self.shift + self.field.e * self.cprec

    def _poly_val(self):
        if self._val == -1:
            best = None
            e = self.field.e
            for i, vec in enumerate(self.coeffs):
                w = self.field._wvec_vp(vec, self.cprec)
                if w is not None:
                    cand = e * w + i
                    if best is None or cand < best:
                        best = cand
            self._val = best
        return self._val

    def min_coeff_vp(self):
        """Smallest p-valuation among the coefficients (cprec if all vanish)."""
        if self._vpmin == -1:
            best = self.cprec
            for vec in self.coeffs:
                w = self.field._wvec_vp(vec, self.cprec)
                if w is not None and w < best:
                    best = w
            self._vpmin = best
        return self._vpmin

    def is_zero(self):
        """Zero at working precision (true value has val >= abs_prec).

        An element whose claimed precision has been fully consumed cannot
        certify anything; asking raises instead of answering vacuously.
        """
        if self._poly_val() is None:
            if self.abs_prec < 1:
                raise PrecisionExhausted(
                    "zero test at nonpositive precision "
                    f"O(pi^{self.abs_prec}) is vacuous")
            return True
        return False

    def val(self):
        pv = self._poly_val()
        if pv is None:
            raise PrecisionExhausted(
                f"element is zero to precision O(pi^{self.abs_prec}); "
                "its valuation is not determined")
        return self.shift + pv

    def val_lower_bound(self):
        pv = self._poly_val()
        return self.abs_prec if pv is None else self.shift + pv

    # -- ring structure ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Elt):
            if other.field is not self.field:
                raise FieldMismatch("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _aligned(self, other):
        # rewrite both at the smaller shift; lowering a shift by d
        # multiplies the coefficient error by x^d, which carries at least
        # d//e extra powers of p, so the moved operand's precision improves
        s = min(self.shift, other.shift)
        da = self.shift - s
        db = other.shift - s
        cp = min(self.cprec + da // self.field.e,
                 other.cprec + db // self.field.e)
        pm = self.field.p**cp
        a = tuple(tuple(c % pm for c in vec) for vec in self.coeffs) \
            if da == 0 else tuple(self.field._xmul(self.coeffs, da, pm))
        b = tuple(tuple(c % pm for c in vec) for vec in other.coeffs) \
            if db == 0 else tuple(self.field._xmul(other.coeffs, db, pm))
        return s, a, b, cp

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        s, a, b, cp = self._aligned(other)
        pm = self.field.p**cp
        coeffs = tuple(tuple((x + y) % pm for x, y in zip(u, v))
                       for u, v in zip(a, b))
        return self.field._mk(s, coeffs, cp)

    __radd__ = __add__

    def __neg__(self):
        pm = self.field.p**self.cprec
        return self.field._mk(
            self.shift,
            tuple(tuple(-x % pm for x in vec) for vec in self.coeffs),
            self.cprec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        # error(a*b) = a*err_b + b*err_a + err_a*err_b, so each operand's
        # coefficient valuation boosts the other's precision contribution
        cp = min(self.cprec + other.min_coeff_vp(),
                 other.cprec + self.min_coeff_vp())
        pm = self.field.p**cp
        coeffs = tuple(self.field._polymul(
            [tuple(v) for v in self.coeffs],
            [tuple(v) for v in other.coeffs], pm))
        return self.field._mk(self.shift + other.shift, coeffs, cp)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if n < 0:
            return self.inv()**(-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- units, inverses, residues -----------------------------------------------

    def _strip(self):
        """Return (v, m, U): self = pi^v * (p/x^e)^(-m)-adjusted unit, where
        self * x^k = pi^shift * p^m * U with U of valuation 0 and k = the
        x-power used.  Raises if zero to precision."""
        v = self.val()
        pv = v - self.shift
        k = (-pv) % self.field.e
        m = (pv + k) // self.field.e
        cp = self.cprec
        pm = self.field.p**cp
        D = self.field._xmul(self.coeffs, k, pm) if k else \
            [tuple(vv) for vv in self.coeffs]
        if m:
            cp2 = cp - m
            if cp2 < 1:
                raise PrecisionExhausted(
                    "stripping the valuation would consume all coefficient "
                    "digits; rebuild the field with a larger prec")
            pdiv = self.field.p**m
            U = []
            for vec in D:
                assert all(c % pdiv == 0 for c in vec)
                U.append(tuple((c // pdiv) % self.field.p**cp2 for c in vec))
        else:
            cp2 = cp
            U = [tuple(vv) for vv in D]
        return v, k, m, U, cp2

    def unit_part(self):
        """(v, u) with self = pi^v * u and u a unit (shift 0, val 0)."""
        v, k, m, U, cp2 = self._strip()
        u = self.field._mk(0, U, cp2)
        if m:
            # self = pi^(shift) * p^m * U / x^k and p = -x^e / R
            negRinv = _neg_R_inv(self.field, cp2)
            u = u * negRinv**m
        assert u.val() == 0
        return v, u

    def inv(self):
        v, k, m, U, cp2 = self._strip()
        Uinv = _unit_poly_inv(self.field, U, cp2)
        out = self.field._mk(k - self.shift - self.field.e * m, Uinv, cp2)
        if m:
            negR = _neg_R(self.field, cp2)
            out = out * negR**m
        return out

    def residue(self):
        """Image in F_q for a valuation-0 element."""
        if self.val() != 0:
            raise NotAUnit(f"valuation {self.val()} element has no residue")
        v, k, m, U, cp2 = self._strip()
        p = self.field.p
        r = tuple(c % p for c in U[0])
        if m:
            r = self.field.fq.mul(
                r, self.field.fq.pow(self.field.neg_Rinv_residue(), m))
        return r

    # -- comparisons ----------------------------------------------------------------

    def same(self, other, digits=None):
        """Equality to precision: v(self - other) >= digits (default: all
        shared digits)."""
        other = self._coerce(other)
        d = self - other
        if d.is_zero():
            return True
        if digits is None:
            return False
        return d.val() >= digits

    def __repr__(self):
        pv = self._poly_val()
        if pv is None:
            return f"<O(pi^{self.abs_prec})>"
        return (f"<val {self.shift + pv} elt + O(pi^{self.abs_prec})>")


def _neg_R(field, cprec):
    """-R as an element, where x^e = -p R; a unit with exact coefficients."""
    pm = field.p**cprec
    coeffs = tuple(tuple(-c % pm for c in vec) for vec in field.R_coeffs)
    return field._mk(0, coeffs, cprec)


def _neg_R_inv(field, cprec):
    negR = _neg_R(field, cprec)
    return negR.inv()


def _unit_poly_inv(field, U, cprec):
    """Newton inversion of a valuation-0 polynomial; returns coefficient rows."""
    p = field.p
    pm = p**cprec
    r0 = tuple(c % p for c in U[0])
    w = [field.fq_lift_vec(field.fq.inv(r0))] + \
        [(0,) * field.f] * (field.e - 1)
    # quadratic convergence in the pi-adic metric; e*cprec digits needed
    need = field.e * cprec
    got = 1
    while got < need:
        Uw = field._polymul(U, w, pm)
        # w <- w * (2 - U w)
        two_minus = [tuple(-c % pm for c in vec) for vec in Uw]
        two_minus[0] = tuple(((2 if j == 0 else 0) - Uw[0][j]) % pm
                             for j in range(field.f))
        w = field._polymul(w, two_minus, pm)
        got *= 2
    # sanity: U * w == 1 at full precision
    chk = field._polymul(U, w, pm)
    assert all(c % pm == 0 for c in chk[0][1:]) and \
        (chk[0][0] - 1) % pm == 0 and \
        all(all(c % pm == 0 for c in vec) for vec in chk[1:]), \
        "unit inversion failed"
    return [tuple(v) for v in w]
