"""Root finding for polynomials over a p-adic field.

The engine walks the Newton polygon: only segments of integer slope can
carry roots in the field itself, and each such slope s is handled by the
exact substitution z = pi^s w (a pure shift in the lazy representation, so
it costs no precision).  After stripping content, the residue polynomial
over F_q is solved by brute force; simple residue roots lift by Newton
iteration, multiple ones are re-centered by w = rho + pi*w' and recursed.

Absence of roots is certified: a polygon with no integer slope, or a
residue polynomial with no usable roots, proves there is no root in the
field.  When the recursion cannot separate roots within the working
precision a PrecisionExhausted escape is raised instead of guessing.

Coefficients that are zero at working precision are treated as exactly
zero.  Callers supply polynomials whose coefficients are either exact or
carry comfortable headroom, which every use in this package does.
"""

from fractions import Fraction

from .errors import PrecisionExhausted
from .localfield import Elt

_MAX_RECENTER = 64


def coerce_poly(field, coeffs):
    out = []
    for c in coeffs:
        if isinstance(c, Elt):
            if c.field is not field:
                raise ValueError("coefficient from a different field")
            out.append(c)
        elif isinstance(c, int):
            out.append(field.from_int(c))
        elif isinstance(c, Fraction):
            out.append(field.from_int(c.numerator) /
                       field.from_int(c.denominator))
        else:
            raise TypeError(f"bad coefficient {c!r}")
    while out and out[-1].is_zero():
        out.pop()
    return out


def peval(coeffs, z):
    """Horner evaluation; coeffs low-to-high over z's field."""
    acc = z.field.zero()
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def pderiv(coeffs):
    return [i * c for i, c in enumerate(coeffs)][1:]


def _shifted(c, d):
    # multiply by pi^d without touching coefficients
    return c.field._mk(c.shift + d, c.coeffs, c.cprec)


def _lower_hull(points):
    # points sorted by x; returns hull vertices, leftmost to rightmost
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop if the middle point lies on or above the new chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def _fq_poly_eval(fq, cs, a):
    acc = fq.zero
    for c in reversed(cs):
        acc = fq.add(fq.mul(acc, a), c)
    return acc


def newton_slopes(h):
    """Integer slopes of the lower Newton polygon with their widths.

    h is a nonempty list of field elements with nonzero lead; returns a
    list of (valuation, width) pairs for segments of integer slope, where
    valuation is the common valuation of the roots the segment carries.
    """
    points = [(i, c.val()) for i, c in enumerate(h) if not c.is_zero()]
    hull = _lower_hull(points)
    out = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        num, den = y1 - y2, x2 - x1
        if num % den == 0:
            out.append((num // den, den))
    return out


def roots(field, coeffs, min_val=None, _depth=0):
    """All distinct roots of the polynomial in the field.

    min_val restricts to roots of valuation >= min_val (None: no bound).
    A multiple root is reported once.  Returns [] only when the absence of
    roots is certified at working precision.
    """
    if _depth > _MAX_RECENTER:
        raise PrecisionExhausted(
            "root search did not separate within the recursion budget; "
            "rebuild the field with a larger prec")
    h = coerce_poly(field, coeffs)
    if len(h) <= 1:
        return []
    found = []
    # roots at zero: low coefficients that vanish
    t = 0
    while t < len(h) - 1 and h[t].is_zero():
        t += 1
    if t:
        found.append(field.zero())
        h = h[t:]
        if len(h) <= 1:
            return found

    for s, width in newton_slopes(h):
        if min_val is not None and s < min_val:
            continue
        g = [_shifted(c, s * i) for i, c in enumerate(h)]
        m = min(c.val() for c in g if not c.is_zero())
        g = [_shifted(c, -m) for c in g]
        fq = field.fq
        res = [fq.zero if c.is_zero() or c.val() > 0 else c.residue()
               for c in g]
        dres = [fq.scale(i, c) for i, c in enumerate(res)][1:]
        for rho_bar in fq.elements():
            if not any(rho_bar):
                continue
            if not fq.is_zero(_fq_poly_eval(fq, res, rho_bar)):
                continue
            rho = field.lift_fq(rho_bar)
            if not fq.is_zero(_fq_poly_eval(fq, dres, rho_bar)):
                w = _newton_lift(g, rho)
                found.append(_shifted(w, s))
            else:
                shifted_g = _taylor_shift(g, rho)
                inner = [_shifted(c, i) for i, c in enumerate(shifted_g)]
                for wp in roots(field, inner, min_val=0, _depth=_depth + 1):
                    w = rho + _shifted(wp, 1)
                    found.append(_shifted(w, s))
    for r in found:
        res = peval(h if t == 0 else coerce_poly(field, coeffs), r)
        assert res.is_zero(), "root verification failed"
    return found


def has_root(field, coeffs, min_val=None):
    return bool(roots(field, coeffs, min_val=min_val))


def _renorm(z):
    # rewrite with shift = val; iterates otherwise drift into huge
    # negative shifts with p-divisible coefficients, and the precision
    # bookkeeping then grinds on astronomically large moduli
    if z._poly_val() is None or z.shift == z.val():
        return z
    v, u = z.unit_part()
    return z.field._mk(u.shift + v, u.coeffs, u.cprec)


def _newton_lift(g, w):
    """Quadratically convergent lift of a simple residue root."""
    dg = pderiv(g)
    for _ in range(80):
        val = peval(g, w)
        if val.is_zero():
            return w
        step = val / peval(dg, w)
        w = _renorm(w - step)
    raise PrecisionExhausted("Newton iteration failed to converge")


def _taylor_shift(g, rho):
    """Coefficients of g(rho + X) by repeated synthetic division."""
    b = list(g)
    out = []
    for _ in range(len(g)):
        # divide b by (X - rho); remainder is the next Taylor coefficient
        q = []
        r = b[-1]
        for c in reversed(b[:-1]):
            q.append(r)
            r = r * rho + c
        out.append(r)
        b = list(reversed(q))
        if not b:
            break
    return out
