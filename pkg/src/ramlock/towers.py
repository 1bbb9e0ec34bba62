"""Prime-degree extension steps and field-level invariants.

Every extension this module builds is a chain of radical steps x^ell - a
with ell prime, which keeps each step decidable: the polynomial either has
a root in the base (certified by the root engine) or is irreducible.  A
ramified step is presented absolutely by the characteristic polynomial of
multiplication by a chosen uniformizer pi_L on B = k[T]/(T^ell - a), taken
as a matrix over W and fed to the division-free Berkowitz algorithm.  The
coefficients come out modulo a comfortable power of p; lifting them to
centered integers defines the same field by Krasner's lemma, and the
construction re-checks itself by evaluating both defining relations inside
the new field.  Unramified steps move to the canonical polynomial for the
larger residue field and transport coefficients through a root of the old
one found there.

The unit-filtration reduction (unit_class_reduce) walks a unit down the
jumps of U^i modulo p-th powers, absorbing every killable digit into an
explicit p-th power cofactor.  Digits at levels divisible by p below
p*e/(p-1) are killed by residue p-th roots; at the boundary level the
obstruction is the additive map b -> b^p + c b with c the residue of
p / pi^e; above it everything dies.  What survives is a certified jump
level, which is exactly what the climb to the unramified bound M^ur needs.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import invmod, is_prime, vp_int
from .errors import (
    CapReached,
    ConsistencyError,
    DegreeCapExceeded,
    FieldMismatch,
    InconsistentInput,
    NotAUnit,
    NotExact,
    PrecisionExhausted,
    ResidueFieldTooLarge,
)
from .localfield import (
    DEFAULT_F_CAP,
    Elt,
    canonical_unram_poly,
    degree_cap,
    make_field,
    make_unramified_field,
)
from .roots import coerce_poly, has_root, peval, roots


class NoIntegralSolution(ValueError):
    """The linear system is consistent only with p in the denominator."""


@dataclass(frozen=True)
class Extension:
    """A tower step (or composite of steps) over a base field.

    embed maps base elements into field, gen is the element the step was
    asked to adjoin, and steps records (kind, degree) pairs in order.  The
    trivial extension (field is base) appears when the requested element
    was already present.
    """

    base: object
    field: object
    embed: object
    gen: object
    steps: tuple

    @property
    def degree(self):
        return self.field.n // self.base.n


def _identity_extension(k, gen=None):
    return Extension(base=k, field=k, embed=lambda z: z, gen=gen, steps=())


def _compose(e1, e2):
    assert e2.base is e1.field, "extension chain mismatch"
    return Extension(
        base=e1.base, field=e2.field,
        embed=lambda z, _a=e1.embed, _b=e2.embed: _b(_a(z)),
        gen=e2.gen, steps=e1.steps + e2.steps)


# ---------------------------------------------------------------------------
# linear algebra mod p^N

def solve_padic(A, b, p, N):
    """Solve A x = b mod p^N by valuation-pivoted elimination.

    A is a square integer matrix (list of rows), b an integer vector.
    Returns (x, loss): the solution is exact mod p^{N-loss}, where loss is
    the largest pivot valuation divided out during back-substitution.
    Raises ValueError when A is singular at this precision and
    NoIntegralSolution when b needs a denominator.
    """
    n = len(A)
    pm = p**N
    M = [[A[i][j] % pm for j in range(n)] + [b[i] % pm] for i in range(n)]
    piv = [0] * n
    for col in range(n):
        best, bw = None, None
        for r in range(col, n):
            c = M[r][col]
            if c:
                w = vp_int(c, p)
                if bw is None or w < bw:
                    best, bw = r, w
                    if w == 0:
                        break
        if best is None:
            raise ValueError("matrix is singular at this precision")
        M[col], M[best] = M[best], M[col]
        piv[col] = bw
        pw = p**bw
        u = invmod(M[col][col] // pw, pm)
        M[col] = [u * c % pm for c in M[col]]
        for r in range(col + 1, n):
            c = M[r][col]
            if c:
                fac = c // pw  # exact: the pivot had minimal valuation
                M[r] = [(M[r][j] - fac * M[col][j]) % pm
                        for j in range(n + 1)]
    x = [0] * n
    loss = 0
    for col in range(n - 1, -1, -1):
        rhs = (M[col][n] - sum(M[col][j] * x[j]
                               for j in range(col + 1, n))) % pm
        pw = p**piv[col]
        if rhs % pw:
            raise NoIntegralSolution(
                "right-hand side is not in the column lattice")
        x[col] = (rhs // pw) % (pm // pw)
        loss = max(loss, piv[col])
    return x, loss


def berkowitz_charpoly(k, M, pm):
    """Characteristic polynomial of a matrix over W = Z_q, division-free.

    M is square with f-tuple entries (W-elements mod pm).  Returns the
    n+1 coefficients of det(X I - M) from the leading 1 down to the
    constant term.  Samuelson-Berkowitz runs in O(n^4) ring products with
    no divisions, so it is valid verbatim modulo p^N.
    """
    f = k.f
    one = tuple([1] + [0] * (f - 1))
    zero = (0,) * f

    def wadd(a, b):
        return tuple((x + y) % pm for x, y in zip(a, b))

    def wneg(a):
        return tuple(-x % pm for x in a)

    n = len(M)
    C = [one]
    for r in range(1, n + 1):
        a_rr = M[r - 1][r - 1]
        S = [M[i][r - 1] for i in range(r - 1)]
        Rrow = [M[r - 1][j] for j in range(r - 1)]
        v = [one, wneg(a_rr)]
        cur = S
        for t in range(r - 1):
            acc = zero
            for j in range(r - 1):
                acc = wadd(acc, k._wmul(Rrow[j], cur[j], pm))
            v.append(wneg(acc))
            if t < r - 2:
                cur = [
                    _wdot(k, M[i][:r - 1], cur, pm) for i in range(r - 1)]
        newC = []
        for i in range(r + 1):
            acc = zero
            for j in range(len(C)):
                d = i - j
                if 0 <= d <= r:
                    acc = wadd(acc, k._wmul(v[d], C[j], pm))
            newC.append(acc)
        C = newC
    return C


def _wdot(k, row, vec, pm):
    acc = (0,) * k.f
    for a, b in zip(row, vec):
        t = k._wmul(a, b, pm)
        acc = tuple((x + y) % pm for x, y in zip(acc, t))
    return acc


def _centered(c, pm):
    c %= pm
    return c if c <= pm // 2 else c - pm


def _pi_shifted(c, d):
    # multiply by pi^d = x^d without touching coefficients
    return c.field._mk(c.shift + d, c.coeffs, c.cprec)


def _canon(z):
    """Re-express z with shift = val and unit coefficient content.

    Arithmetic (Newton lifts especially) can leave elements with a large
    negative shift compensated by p-divisible coefficients; coordinate
    extraction and embeddings handle such representations badly, so they
    canonicalize first.  Zero-at-precision elements pass through.
    """
    if z._poly_val() is None:
        return z
    v = z.val()
    if z.shift == v:
        return z
    vv, u = z.unit_part()
    return _pi_shifted(u, vv)


def _wcoords(z):
    """Exact W-coordinates of an integral element over the basis {x^i}.

    Returns (rows, digits): e f-tuples valid mod p^digits.  The element
    must have val >= 0; a representation with negative shift is folded
    through x^{-e} = (-pR)^{-1}, whose p-division is exact for integral
    values and raises ConsistencyError otherwise.
    """
    z = _canon(z)
    k = z.field
    s, cp = z.shift, z.cprec
    pm = k.p**cp
    if s >= 0:
        return k._xmul(z.coeffs, s, pm), cp
    m = -s
    g = -(-m // k.e)
    rows = k._xmul(z.coeffs, g * k.e - m, pm)
    negR = k._mk(0, tuple(tuple(-c % pm for c in vec)
                          for vec in k.R_coeffs), cp)
    u = negR**(-g)
    assert u.shift == 0
    digits = min(cp, u.cprec) - g
    if digits < 1:
        raise PrecisionExhausted(
            "coordinate extraction consumed all digits; rebuild the field "
            "with a larger prec")
    pm2 = k.p**min(cp, u.cprec)
    rows = k._polymul([tuple(v) for v in rows],
                      [tuple(v) for v in u.coeffs], pm2)
    pg = k.p**g
    pmd = k.p**digits
    out = []
    for vec in rows:
        if any(c % pg for c in vec):
            raise ConsistencyError(
                "coordinates of a non-integral element were requested")
        out.append(tuple((c // pg) % pmd for c in vec))
    return out, digits


def _bmul(h_a, u, v):
    """Product in B = k[T]/(T^ell - h_a); u, v are length-ell Elt lists."""
    ell = len(u)
    k = h_a.field
    prod = [None] * (2 * ell - 1)
    for i, x in enumerate(u):
        for j, y in enumerate(v):
            t = x * y
            prod[i + j] = t if prod[i + j] is None else prod[i + j] + t
    out = list(prod[:ell])
    for d in range(ell, 2 * ell - 1):
        c = prod[d]
        if c is not None:
            out[d - ell] = c * h_a if out[d - ell] is None \
                else out[d - ell] + c * h_a
    return [c if c is not None else k.zero() for c in out]


def _root_sort_key(r):
    try:
        v = r.val()
    except PrecisionExhausted:
        return (1 << 60,)
    _, u = r.unit_part()
    pm = u.field.p**min(u.cprec, 6)
    return (v,) + tuple(c % pm for vec in u.coeffs for c in vec)


def _min_root(rs):
    return min(rs, key=_root_sort_key)


# ---------------------------------------------------------------------------
# the ramified step: absolute presentation from a uniformizer of B

def _field_from_uniformizer(k, h_a, ell, piL_vec, cap):
    """Present the field B = k[T]/(T^ell - h_a) by an absolute Eisenstein
    polynomial: the characteristic polynomial of multiplication by the
    supplied uniformizer pi_L (given as a T-power basis vector).

    Returns (L, embed, gen) with embed the inclusion of k and gen the image
    of T.  Raises NotExact when the char poly fails to be Eisenstein, which
    means pi_L was not actually a uniformizer of a totally ramified step.
    """
    p, e, f = k.p, k.e, k.f
    n = e * ell
    eff_cap = degree_cap() if cap is None else cap
    if n * f > eff_cap:
        raise DegreeCapExceeded(
            f"tower step reaches degree {n * f}, beyond the cap {eff_cap}")
    piL_vec = [c if isinstance(c, Elt) else k.zero() for c in piL_vec]

    # multiplication by pi_L on the T-power basis: column j is pi_L * T^j
    cols = []
    for j in range(ell):
        col = [k.zero() for _ in range(ell)]
        for i2, z in enumerate(piL_vec):
            m = i2 + j
            if m < ell:
                col[m] = col[m] + z
            else:
                col[m - ell] = col[m - ell] + z * h_a
        cols.append(col)

    # a power of p that makes every entry integral
    minval = 0
    for col in cols:
        for z in col:
            try:
                minval = min(minval, z.val())
            except PrecisionExhausted:
                continue  # zero entry
    t = 0 if minval >= 0 else (-minval + e - 1) // e

    digits = None
    Wmat = [[None] * n for _ in range(n)]
    for j in range(ell):
        for m in range(ell):
            z = cols[j][m]
            if t:
                z = z * p**t
            for i in range(e):
                rows, dg = _wcoords(_pi_shifted(z, i) if i else z)
                digits = dg if digits is None else min(digits, dg)
                for i2 in range(e):
                    Wmat[m * e + i2][j * e + i] = rows[i2]
    pm = p**digits
    Wmat = [[tuple(c % pm for c in cell) for cell in row] for row in Wmat]

    C = berkowitz_charpoly(k, Wmat, pm)
    # char(p^-t M) has coefficient of X^{n-idx} equal to C[idx] / p^{t*idx}
    avail = digits - t * n
    if avail < 8:
        raise PrecisionExhausted(
            "tower step ran out of coefficient digits; rebuild the base "
            "field with a larger prec")
    pma = p**avail
    eis = [None] * (n + 1)
    for idx in range(n + 1):
        div = p**(t * idx)
        vec = []
        for c in C[idx]:
            c %= pm
            if c % div:
                raise ConsistencyError(
                    "characteristic polynomial rescale is not integral")
            vec.append(_centered((c // div) % pma, pma))
        eis[n - idx] = tuple(vec)
    if eis[n] != tuple([1] + [0] * (f - 1)):
        raise ConsistencyError("characteristic polynomial is not monic")
    for degi in range(n):
        if any(c % p for c in eis[degi]):
            raise NotExact(
                "tower step did not produce an Eisenstein polynomial; the "
                "chosen pi_L is not a uniformizer")
    if all((c // p) % p == 0 for c in eis[0]):
        raise NotExact("tower step: constant term has p-valuation >= 2")
    L = make_field(p, eis, f=f, prec=k.prec, unram=k.unram, cap=cap)

    # change of basis: columns are the W-coordinates of pi_L^j inside B.
    # Those coordinates can have denominators (pi_L = T^c pi^d with d < 0),
    # so the whole linear system is scaled by one power p^s that clears
    # them; scaling both sides leaves the solution untouched.
    pw = [k.one()] + [k.zero()] * (ell - 1)
    pw_all = []
    minv = 0
    for j in range(n):
        if j:
            pw = _bmul(h_a, pw, piL_vec)
        pw_all.append(list(pw))
        for z in pw:
            if z._poly_val() is not None:
                minv = min(minv, z.val())
    s = 0 if minv >= 0 else (-minv + e - 1) // e
    coords = []
    soldigits = digits
    for j in range(n):
        cj = []
        for m in range(ell):
            z = pw_all[j][m]
            if s:
                z = z * p**s
            rows, dg = _wcoords(z)
            soldigits = min(soldigits, dg)
            cj.extend(rows)
        coords.append(cj)
    pmS = p**soldigits
    ybas = [tuple(1 if idx == b else 0 for idx in range(f))
            for b in range(f)]
    A = [[0] * (n * f) for _ in range(n * f)]
    for j in range(n):
        for b in range(f):
            ci = j * f + b
            for blk in range(n):
                w = k._wmul(coords[j][blk], ybas[b], pmS)
                for comp in range(f):
                    A[blk * f + comp][ci] = w[comp]

    def bvec_flat(vec_elts):
        flat = [0] * (n * f)
        for m, z in enumerate(vec_elts):
            if s:
                z = z * p**s
            rows, dg = _wcoords(z)
            for i2 in range(e):
                for comp in range(f):
                    flat[(m * e + i2) * f + comp] = rows[i2][comp]
        return flat

    def solve_elt(target_flat):
        for extra in range(12):
            scaled = [c * p**extra for c in target_flat]
            try:
                sol, loss = solve_padic(A, scaled, p, soldigits)
            except NoIntegralSolution:
                continue
            except ValueError as exc:
                raise ConsistencyError(
                    f"change of basis is singular: {exc}") from exc
            cpe = min(L.cprec0, soldigits - loss)
            out = L.from_coeffs(
                [tuple(sol[j * f + b] for b in range(f)) for j in range(n)],
                cprec=cpe)
            if extra:
                out = out * L.from_int(p**extra).inv()
            return out
        raise PrecisionExhausted(
            "element coordinates need more denominator digits than "
            "available")

    X = solve_elt(bvec_flat([k.pi()] + [k.zero()] * (ell - 1)))
    gen = solve_elt(bvec_flat(
        [k.zero(), k.one()] + [k.zero()] * (ell - 2)))

    def embed(z, _L=L, _X=X, _k=k):
        if isinstance(z, int):
            return _L.from_int(z)
        if not isinstance(z, Elt) or z.field is not _k:
            raise FieldMismatch("embedding expects an element of the base")
        z = _canon(z)
        acc = None
        for vec in reversed(z.coeffs):
            c = _L.from_coeffs([tuple(vec)], cprec=z.cprec)
            acc = c if acc is None else acc * _X + c
        if z.shift:
            acc = acc * _X**z.shift
        return acc

    # the construction proves itself: the old defining relation must hold
    # at X, and gen must satisfy the radical relation
    if X.val() != ell:
        raise ConsistencyError("embedded uniformizer has the wrong valuation")
    old_eis = [L.from_coeffs([tuple(vec)]) for vec in k.eis]
    if not peval(old_eis, X).is_zero():
        raise ConsistencyError(
            "embedded uniformizer does not satisfy the old Eisenstein "
            "relation")
    if not (gen**ell - embed(h_a)).is_zero():
        raise ConsistencyError("adjoined root does not satisfy its radical")
    return L, embed, gen


# ---------------------------------------------------------------------------
# unramified steps

def unramified_extend(k, d, cap=None):
    """The unramified extension of k of residue degree d >= 2.

    The new coefficient field W' uses the canonical polynomial for
    (p, f*d); the old W embeds through a root of its polynomial found in
    W', and the Eisenstein coefficients are transported along.
    """
    assert d >= 2
    p = k.p
    f2 = k.f * d
    if f2 > DEFAULT_F_CAP:
        raise ResidueFieldTooLarge(
            f"residue degree {f2} exceeds the supported cap {DEFAULT_F_CAP}")
    if k.e * f2 > (degree_cap() if cap is None else cap):
        raise DegreeCapExceeded(
            f"unramified step reaches degree {k.e * f2}, beyond the cap")
    kq = make_unramified_field(p, f2, prec=k.prec, cap=cap)
    rs = roots(kq, [int(c) for c in k.unram])
    if not rs:
        raise ConsistencyError(
            "old residue polynomial has no root in the larger unramified "
            "field")
    r = _min_root(rs)
    rrows, digits = _wcoords(r)
    rt = rrows[0]
    pmD = p**digits
    rpow = [tuple([1] + [0] * (f2 - 1))]
    for _ in range(k.f - 1):
        rpow.append(kq._wmul(rpow[-1], rt, pmD))

    def wmap(vec, pm):
        acc = (0,) * f2
        for cj, rj in zip(vec, rpow):
            if cj:
                acc = tuple((x + cj * y) % pm for x, y in zip(acc, rj))
        return acc

    eis2 = [tuple(_centered(c, pmD) for c in wmap(vec, pmD))
            for vec in k.eis]
    unram2 = canonical_unram_poly(p, f2)
    L = make_field(p, eis2, f=f2, prec=k.prec, unram=unram2, cap=cap)

    def embed(z, _L=L, _k=k):
        if isinstance(z, int):
            return _L.from_int(z)
        if not isinstance(z, Elt) or z.field is not _k:
            raise FieldMismatch("embedding expects an element of the base")
        z = _canon(z)
        cp = min(z.cprec, digits)
        pm = p**cp
        return _L._mk(z.shift,
                      tuple(wmap(vec, pm) for vec in z.coeffs), cp)

    return Extension(base=k, field=L, embed=embed, gen=L.gen_u(),
                     steps=(("unramified", d),))


# ---------------------------------------------------------------------------
# the master radical step

def radical_extend(k, a, ell, cap=None):
    """k(a^{1/ell}) for prime ell, as an Extension.

    Root-first: if x^ell - a already has a root the extension is trivial.
    Otherwise the polynomial is irreducible (prime degree radical) and the
    step is classified: ell coprime to v(a) gives a totally ramified step
    presented through a uniformizer T^c pi^d; for unit radicands the
    unramified candidate is tested by an actual root search, and the wild
    ramified case runs through the unit filtration to find a uniformizer
    of the form (T - 1)^c pi^d.
    """
    cs = coerce_poly(k, [a])
    if not cs:
        raise NotAUnit("cannot take a radical of zero")
    a = _canon(cs[0])
    if not is_prime(ell):
        raise InconsistentInput(f"radical degree {ell} is not prime")
    p = k.p
    poly = [-a] + [0] * (ell - 1) + [1]
    rs = roots(k, poly)
    if rs:
        return _identity_extension(k, gen=_min_root(rs))
    v = a.val()
    if v % ell:
        c = invmod(v % ell, ell)
        d = (1 - c * v) // ell
        piL = [k.zero()] * ell
        piL[c] = k.pi()**d
        L, embed, gen = _field_from_uniformizer(k, a, ell, piL, cap)
        return Extension(base=k, field=L, embed=embed, gen=gen,
                         steps=(("ramified", ell),))

    # ell | v: split off the pi-power and adjoin the ell-th root of a unit
    u = a * k.pi()**(-v) if v else a
    probe = None
    if k.f * ell <= DEFAULT_F_CAP:
        try:
            probe = unramified_extend(k, ell, cap=cap)
        except DegreeCapExceeded:
            probe = None
    if probe is not None:
        upoly = [-probe.embed(u)] + [0] * (ell - 1) + [1]
        rs2 = roots(probe.field, upoly)
        if rs2:
            root_u = _min_root(rs2)
            gen = root_u * probe.embed(k.pi())**(v // ell) if v else root_u
            if not (gen**ell - probe.embed(a)).is_zero():
                raise ConsistencyError("unramified radical root is wrong")
            return Extension(base=k, field=probe.field, embed=probe.embed,
                             gen=gen, steps=probe.steps)
        if ell != p:
            raise ConsistencyError(
                "tame unit radical found no root in the unramified step")
    elif ell != p:
        raise ResidueFieldTooLarge(
            f"tame radical step needs residue degree {k.f * ell}, beyond "
            f"the cap {DEFAULT_F_CAP}")

    # wild ramified unit radical: normalize the class and read off a
    # uniformizer from its jump level
    lvl, anorm, cof = unit_class_reduce(k, u)
    if lvl is None:
        raise ConsistencyError(
            "unit has a trivial p-th power class but the root engine found "
            "no root")
    if lvl * (p - 1) == p * k.e:
        if probe is not None:
            raise ConsistencyError(
                "class sits at the top jump but the unramified step has no "
                "root")
        raise ResidueFieldTooLarge(
            f"step is unramified of residue degree {k.f * ell}, beyond the "
            f"cap {DEFAULT_F_CAP}")
    c = invmod(lvl % p, p)
    d = (1 - c * lvl) // p
    tm1 = [-k.one(), k.one()] + [k.zero()] * (p - 2)
    piL = tm1
    for _ in range(c - 1):
        piL = _bmul(anorm, piL, tm1)
    if d:
        pid = k.pi()**d
        piL = [z * pid for z in piL]
    L, embed, gen_a = _field_from_uniformizer(k, anorm, p, piL, cap)
    gen = gen_a * embed(cof)
    if v:
        gen = gen * embed(k.pi())**(v // ell)
    if not (gen**ell - embed(a)).is_zero():
        raise ConsistencyError("wild radical root is wrong")
    return Extension(base=k, field=L, embed=embed, gen=gen,
                     steps=(("ramified", ell),))


# ---------------------------------------------------------------------------
# cyclotomic towers

def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _phi_p(p):
    return [1] * p


def cyclotomic_extend(k, m, cap=None):
    """k(mu_{p^m}) as an Extension whose gen is a primitive p^m-th root.

    zeta_p is reached through the radical chain for eta with
    eta^{p-1} = -p (the compositum k(eta) equals k(zeta_p) since all roots
    of X^{p-1} + p differ by (p-1)-th roots of unity already in Q_p); the
    higher levels are p-th root steps.  Step ramifications are recorded in
    steps, and the base embedding in embed.
    """
    if m < 0:
        raise InconsistentInput("m must be nonnegative")
    p = k.p
    ext = _identity_extension(k, gen=k.one())
    if m == 0:
        return ext
    if not has_root(k, _phi_p(p)):
        target = k.from_int(-p)
        for ellq in _prime_factors(p - 1):
            step = radical_extend(ext.field, target, ellq, cap=cap)
            target = step.gen
            ext = _compose(ext, step)
    zs = roots(ext.field, _phi_p(p))
    if not zs:
        raise ConsistencyError("the eta chain did not produce zeta_p")
    z = _min_root(zs)
    level = 1
    while level < m:
        step = radical_extend(ext.field, z, p, cap=cap)
        z = step.gen
        ext = _compose(ext, step)
        level += 1
    if not (z**(p**m) - 1).is_zero():
        raise ConsistencyError("constructed root of unity has wrong order")
    if (z**(p**(m - 1)) - 1).is_zero():
        raise ConsistencyError("constructed root of unity is imprimitive")
    return Extension(base=k, field=ext.field, embed=ext.embed, gen=z,
                     steps=ext.steps)


# ---------------------------------------------------------------------------
# unit filtration

def _solve_additive(fq, p, c, d):
    # b with b^p + c*b = d, by brute force over F_q (q is tiny here)
    for b in fq.elements():
        bp = b
        for _ in range(p - 1):
            bp = fq.mul(bp, b)
        if fq.add(bp, fq.mul(c, b)) == d:
            return b
    return None


def unit_class_reduce(k, u):
    """Greedy reduction of a unit against p-th power classes.

    Returns (level, anorm, cof) with u = anorm * cof**p exactly.  level is
    the jump position of the class of u in the unit filtration modulo
    (k^x)^p: an integer i coprime to p below p*e/(p-1), or that boundary
    value itself, or None when the class is trivial (certified: every
    remaining digit is absorbable).  anorm is the normalized witness
    1 + (digit) pi^level.
    """
    cs = coerce_poly(k, [u])
    if not cs:
        raise NotAUnit("zero has no unit class")
    u = _canon(cs[0])
    if u.val() != 0:
        raise NotAUnit(f"element of valuation {u.val()} is not a unit")
    p, e = k.p, k.e
    cof = k.one()
    anorm = u
    # absorb the residue digit: r = s^p with s = r^(q/p)
    r = anorm.residue()
    s = k.fq.pow(r, k.q // p)
    slift = k.lift_fq(s)
    anorm = anorm / slift**p
    cof = cof * slift
    while True:
        w = anorm - 1
        vb = w.val_lower_bound()
        if vb * (p - 1) > p * e:
            return None, anorm, cof
        i = w.val()
        digit = (w * k.pi()**(-i)).residue()
        if i * (p - 1) == p * e:
            # boundary: killable iff the digit is hit by b -> b^p + c b,
            # where c is the residue of p * pi^{-e}
            c = k.neg_Rinv_residue()
            b = _solve_additive(k.fq, p, c, digit)
            if b is None:
                return i, anorm, cof
            tstep = 1 + k.lift_fq(b) * k.pi()**(e // (p - 1))
        elif i % p == 0:
            b = k.fq.pow(digit, k.q // p)
            tstep = 1 + k.lift_fq(b) * k.pi()**(i // p)
        else:
            return i, anorm, cof
        anorm = anorm / tstep**p
        cof = cof * tstep


# ---------------------------------------------------------------------------
# invariants

def e0(k):
    """e/(p-1): the valuation of zeta_p - 1 in pi-units, exact."""
    return Fraction(k.e, k.p - 1)


def invariant_R(k):
    """(r_leq, r_strict): least r with e <= (p-1)p^r resp. e < (p-1)p^r."""
    r1 = 0
    while k.e > (k.p - 1) * k.p**r1:
        r1 += 1
    r2 = 0
    while k.e >= (k.p - 1) * k.p**r2:
        r2 += 1
    return r1, r2


def _zetas_in_field(k, cap):
    out = []
    rs = roots(k, _phi_p(k.p))
    if not rs:
        return out
    out.append(_min_root(rs))
    while len(out) < cap:
        poly = [-out[-1]] + [0] * (k.p - 1) + [1]
        rs = roots(k, poly)
        if not rs:
            break
        out.append(_min_root(rs))
    return out


def invariant_M(k, m_cap=4):
    """Largest m <= m_cap with mu_{p^m} inside k.

    Raises CapReached (carrying m_cap) when mu_{p^m_cap} is present, since
    the true value might then be larger.
    """
    zs = _zetas_in_field(k, m_cap)
    if len(zs) == m_cap:
        raise CapReached(m_cap, f"mu_{{p^{m_cap}}} is in the field; the "
                                "true M may exceed the cap")
    return len(zs)


def invariant_Mur(k, m_cap=4, cap=None, probe=4):
    """Largest m <= m_cap with mu_{p^m} inside the maximal unramified
    extension of k.

    Climb: starting from M, the next cyclotomic step is unramified exactly
    when the class of zeta_{p^M} sits at the boundary jump p*e/(p-1) of
    the unit filtration; in that case pass to the unramified extension of
    degree p, where the next root of unity must appear, and repeat.  When
    M = 0 the field has no mu_p at all, and zeta_p is searched in
    unramified extensions of degree d dividing probe (buildable within the
    residue cap); if absent there, M^ur = 0.
    """
    p = k.p
    cur = k
    zs = _zetas_in_field(cur, m_cap)
    if len(zs) == m_cap:
        raise CapReached(m_cap, "root-of-unity level hit the cap")
    M = len(zs)
    if M == 0:
        landed = None
        for d in range(2, probe + 1):
            if probe % d:
                continue
            if cur.f * d > DEFAULT_F_CAP:
                continue
            try:
                ext = unramified_extend(cur, d, cap=cap)
            except DegreeCapExceeded:
                continue
            if has_root(ext.field, _phi_p(p)):
                landed = ext.field
                break
        if landed is None:
            return 0
        cur = landed
        zs = _zetas_in_field(cur, m_cap)
        if len(zs) == m_cap:
            raise CapReached(m_cap, "root-of-unity level hit the cap")
        M = len(zs)
        assert M >= 1
    while True:
        lvl, _, _ = unit_class_reduce(cur, zs[-1])
        if lvl is None:
            raise ConsistencyError(
                "a primitive root of unity has trivial p-th power class")
        if lvl * (p - 1) != p * cur.e:
            return M
        ext = unramified_extend(cur, p, cap=cap)
        cur = ext.field
        zs = _zetas_in_field(cur, m_cap)
        if len(zs) == m_cap:
            raise CapReached(m_cap, "root-of-unity level hit the cap")
        if len(zs) != M + 1:
            raise ConsistencyError(
                "unramified step did not raise the root-of-unity level by "
                "exactly one")
        M = len(zs)
