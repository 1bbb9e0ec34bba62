"""Multiplicative structure of a p-adic field modulo p-th powers.

K^x/(K^x)^p is an F_p-space of dimension [K:Q_p] + 1 + delta, where
delta = 1 exactly when mu_p sits inside K.  A basis adapted to the unit
filtration U^i = 1 + pi^i O: the uniformizer class, one class
1 + y^b pi^i per residue digit at each jump i (i coprime to p, below
pe0 = p e/(p-1)), and, when delta = 1, a boundary class 1 + d0 pi^{pe0}
with d0 outside the image of b -> b^p + c b (c the residue of p pi^{-e}).
Coordinates fall out of the same greedy digit absorption that decides
unit classes, so they are exact and class-true by construction.

The Hilbert pairing on this space is resolved through norm subgroups:
for each basis radicand g the norms from k(g^{1/p}) span a
codimension-one subspace, computed by pushing a spanning set of
B = k[T]/(T^p - g) through determinant norms.  Each norm subgroup pins
its column functional only up to a scalar, so the scalars are made
coherent by also computing the functional of combination radicands
g_0 g_b; bilinearity then forces the whole matrix to agree with the true
pairing up to one global unit multiple.  Every invariant exposed here
(vanishing, pairing orders, generator searches) is insensitive to that
global scale.
"""

import math
from dataclasses import dataclass

from .arith import invmod
from .errors import (
    BothDivisible,
    ConsistencyError,
    HypothesisViolated,
    InconsistentInput,
    NoPthRoots,
    NotAUnit,
    PrecisionExhausted,
)
from .localfield import make_field
from .roots import coerce_poly, has_root
from .towers import (
    _bmul,
    _canon,
    _solve_additive,
    _zetas_in_field,
    radical_extend,
    unit_class_reduce,
)

TOP = math.inf

_SPACES = {}
_PAIRINGS = {}


def _wp_image(fq, p, c):
    # image of the additive map b -> b^p + c b over F_q; b^p by an
    # explicit multiplication chain (safe at b = 0)
    out = set()
    for b in fq.elements():
        bp = b
        for _ in range(p - 1):
            bp = fq.mul(bp, b)
        out.add(fq.add(bp, fq.mul(c, b)))
    return out


class MulModPSpace:
    """Basis and coordinates for K^x/(K^x)^p.

    Attributes: host, dim, delta, basis (representatives, uniformizer
    first), jumps (the coprime filtration jumps), boundary (p e/(p-1)
    when integral, else None), filtration_levels (level -> tuple of
    one-hot coordinate vectors spanning the image of U^level).
    """

    def __init__(self, k, delta_hint=None):
        p, e, f, q = k.p, k.e, k.f, k.q
        self.host = k
        self._c = k.neg_Rinv_residue()
        self._d0 = None
        if (p * e) % (p - 1):
            self.boundary = None
            self.delta = 0
        else:
            self.boundary = p * e // (p - 1)
            im = _wp_image(k.fq, p, self._c)
            if len(im) == q:
                self.delta = 0
            else:
                self.delta = 1
                self._d0 = next(d for d in k.fq.elements() if d not in im)
        # dual route: mu_p membership straight from the root engine, or
        # from a space already built for the same field at another
        # working precision (root searches get expensive there)
        want = delta_hint if delta_hint is not None else \
            (1 if has_root(k, [1] * p) else 0)
        if self.delta != want:
            raise ConsistencyError(
                "p-th roots of unity disagree with the cokernel of "
                "b -> b^p + c b")
        basis = [k.pi()]
        levels = [None]
        index = {}
        jumps = []
        i = 1
        while i * (p - 1) < p * e:
            if i % p:
                jumps.append(i)
                for b in range(f):
                    digit = tuple(1 if t == b else 0 for t in range(f))
                    index[(i, b)] = len(basis)
                    basis.append(1 + k.lift_fq(digit) * k.pi()**i)
                    levels.append(i)
            i += 1
        if len(jumps) != e:
            raise ConsistencyError(
                "expected exactly e coprime jumps below the boundary, "
                "got %d" % len(jumps))
        if self.delta:
            index[(self.boundary, None)] = len(basis)
            basis.append(1 + k.lift_fq(self._d0) * k.pi()**self.boundary)
            levels.append(self.boundary)
        self.basis = tuple(basis)
        self.jumps = tuple(jumps)
        self.dim = len(basis)
        self._levels = tuple(levels)
        self._index = index
        if self.dim != k.n + 1 + self.delta:
            raise ConsistencyError(
                "basis size disagrees with [K:Q_p] + 1 + delta")
        top = (self.boundary if self.boundary is not None
               else jumps[-1]) + 1
        table = {}
        for lvl in range(1, top + 1):
            vecs = []
            for idx in range(1, self.dim):
                if self._levels[idx] >= lvl:
                    vecs.append(tuple(1 if t == idx else 0
                                      for t in range(self.dim)))
            table[lvl] = tuple(vecs)
        self.filtration_levels = table

    def _split_boundary(self, digit):
        # digit = t d0 + (b^p + c b) uniquely: the image of the additive
        # map has index p^delta with d0 spanning the cokernel
        k = self.host
        for t in range(k.p if self.delta else 1):
            rem = digit if t == 0 else k.fq.sub(
                digit, k.fq.scale(t, self._d0))
            b = _solve_additive(k.fq, k.p, self._c, rem)
            if b is not None:
                return t, b
        raise ConsistencyError("boundary digit escaped its coset split")

    def coords(self, x):
        """Exact F_p coordinates of the class of x over the basis."""
        k = self.host
        cs = coerce_poly(k, [x])
        if not cs:
            raise NotAUnit("zero has no class modulo p-th powers")
        u = _canon(cs[0])
        p, e, q = k.p, k.e, k.q
        vec = [0] * self.dim
        v = u.val()
        vec[0] = v % p
        if v:
            u = u * k.pi()**(-v)
        r = u.residue()
        s = k.fq.pow(r, q // p)
        u = u / k.lift_fq(s)**p
        for _ in range(4 * p * e + 64):
            w = u - 1
            vb = w.val_lower_bound()
            if vb * (p - 1) > p * e:
                return tuple(vec)
            i = w.val()
            digit = (w * k.pi()**(-i)).residue()
            if self.boundary is not None and i == self.boundary:
                t, b = self._split_boundary(digit)
                if t:
                    idx = self._index[(i, None)]
                    vec[idx] = t
                    u = u / self.basis[idx]**t
                u = u / (1 + k.lift_fq(b) * k.pi()**(e // (p - 1)))**p
            elif i * (p - 1) > p * e:
                # above the boundary the p-term absorbs any digit:
                # (1 + b pi^{i-e})^p = 1 + (p pi^{-e}) b pi^i + higher
                b = k.fq.mul(digit, k.fq.inv(self._c))
                u = u / (1 + k.lift_fq(b) * k.pi()**(i - e))**p
            elif i % p == 0:
                b = k.fq.pow(digit, q // p)
                u = u / (1 + k.lift_fq(b) * k.pi()**(i // p))**p
            else:
                for b in range(k.f):
                    c = digit[b] % p
                    if c:
                        idx = self._index[(i, b)]
                        vec[idx] = c
                        u = u / self.basis[idx]**c
        raise ConsistencyError("digit absorption failed to terminate")

    def is_pth_power(self, x):
        return not any(self.coords(x))


def build_space(k):
    """The mod-p multiplicative space of k, cached per field."""
    S = _SPACES.get(k.key())
    if S is None:
        S = MulModPSpace(k)
        _SPACES[k.key()] = S
    return S


def filtration_level(S, x):
    """Largest i with the class of x in the image of U^i, or TOP.

    x must be a unit; on a basis decomposition this is the least level
    carrying a nonzero coordinate, TOP (infinity) for p-th powers.
    """
    cs = coerce_poly(S.host, [x])
    if not cs:
        raise NotAUnit("zero has no filtration level")
    u = _canon(cs[0])
    if u.val() != 0:
        raise NotAUnit("filtration levels are defined for units only")
    c = S.coords(u)
    lv = [S._levels[i] for i in range(1, S.dim) if c[i]]
    return min(lv) if lv else TOP


# ---------------------------------------------------------------------------
# F_p linear algebra on coordinate vectors

def _rref(rows, p):
    """Reduced row echelon form mod p; returns (rows, pivot columns)."""
    red = []
    piv = []
    for row in rows:
        r = [c % p for c in row]
        for q, pc in zip(red, piv):
            if r[pc]:
                m = r[pc]
                r = [(a - m * b) % p for a, b in zip(r, q)]
        nz = next((j for j, c in enumerate(r) if c), None)
        if nz is None:
            continue
        inv = invmod(r[nz], p)
        r = [c * inv % p for c in r]
        for t in range(len(red)):
            if red[t][nz]:
                m = red[t][nz]
                red[t] = [(a - m * b) % p for a, b in zip(red[t], r)]
        red.append(r)
        piv.append(nz)
    order = sorted(range(len(piv)), key=lambda t: piv[t])
    return [tuple(red[t]) for t in order], [piv[t] for t in order]


def span_contains(rows, vec, p):
    """Whether vec lies in the F_p row span of rows."""
    red, piv = _rref(rows, p)
    r = [c % p for c in vec]
    for q, pc in zip(red, piv):
        if r[pc]:
            m = r[pc]
            r = [(a - m * b) % p for a, b in zip(r, q)]
    return not any(r)


def _functional(rows, dim, p):
    # the dual vector killing a codimension-one span, unique up to scale,
    # normalized so its first nonzero entry is 1
    red, piv = _rref(rows, p)
    free = [t for t in range(dim) if t not in piv]
    if len(free) != 1:
        raise ConsistencyError("norm span is not codimension one")
    c = free[0]
    h = [0] * dim
    h[c] = 1
    for row, pc in zip(red, piv):
        h[pc] = (-row[c]) % p
    nz = next(j for j, a in enumerate(h) if a)
    inv = invmod(h[nz], p)
    return tuple(a * inv % p for a in h)


# ---------------------------------------------------------------------------
# norms out of Kummer steps, without building the extension field

def _sum_elts(terms):
    it = iter(terms)
    acc = next(it)
    for t in it:
        acc = acc + t
    return acc


def _charpoly_elts(k, M):
    """det(X I - M) for a square matrix of field elements, division-free.

    Berkowitz once more: no pivoting means no zero tests, so tracked
    precision degrades exactly as for plain products.  Returns the n + 1
    coefficients from the leading 1 down to the constant term.
    """
    n = len(M)
    C = [k.one()]
    for r in range(1, n + 1):
        Rrow = [M[r - 1][j] for j in range(r - 1)]
        v = [k.one(), -M[r - 1][r - 1]]
        cur = [M[i][r - 1] for i in range(r - 1)]
        for t in range(r - 1):
            v.append(-_sum_elts(Rrow[j] * cur[j] for j in range(r - 1)))
            if t < r - 2:
                cur = [_sum_elts(M[i][j] * cur[j] for j in range(r - 1))
                       for i in range(r - 1)]
        C = [_sum_elts(v[i - j] * C[j] for j in range(len(C))
                       if 0 <= i - j <= r)
             for i in range(r + 1)]
    return C


def _det_elt(k, M):
    C = _charpoly_elts(k, M)
    return C[-1] if len(M) % 2 == 0 else -C[-1]


def _norm_in_b(k, x, vec):
    """Norm to k of the element of B = k[T]/(T^p - x) with T-coordinates
    vec, as the determinant of multiplication by vec on the T-basis."""
    p = k.p
    cols = []
    for j in range(p):
        ej = [k.one() if t == j else k.zero() for t in range(p)]
        cols.append(_bmul(x, list(vec), ej))
    M = [[cols[j][i] for j in range(p)] for i in range(p)]
    return _det_elt(k, M)


def _shadow_lift(khi, z):
    # same field at a higher working precision; the canonical digits of z
    # are carried over as exact, which is legitimate whenever only the
    # class of z modulo p-th powers matters (the truncation error is
    # 1 + O(pi^large), a p-th power)
    z = _canon(z)
    return khi.from_coeffs([tuple(vec) for vec in z.coeffs], shift=z.shift)


def _norm_span_rows(S, x):
    """RREF rows spanning the norm classes of k(x^{1/p})/k, or None when
    that Kummer step is unramified.

    A uniformizer of L is written inside B directly: T^c pi^d when the
    valuation of x is coprime to p, else (T - 1)^{c'} pi^{d'} against the
    normalized unit radicand (the root of 1 + d pi^lvl sits at level lvl,
    so c' lvl + d' p = 1 works).  The spanning set is pi_L together with
    1 + y^b pi_L^i for every level i up to the boundary of L; the
    redundancy at collapsing levels is harmless, only the span matters.

    The long product chains shed a little precision at every step, so the
    whole computation runs in a shadow copy of the field with enough head
    room; the radicand crosses over by its canonical digits, which is
    class-true.
    """
    k = S.host
    p, e, f = k.p, k.e, k.f
    cs = coerce_poly(k, [x])
    if not cs:
        raise NotAUnit("cannot take norms from a radical of zero")
    x = _canon(cs[0])
    if S.is_pth_power(x):
        raise InconsistentInput(
            "the radicand is a p-th power, so there is no Kummer step")
    top = (p * p * e) // (p - 1)
    khi = make_field(k.p, list(k.eis), f=k.f, prec=k.prec + 6 * top,
                     unram=k.unram)
    Shi = _SPACES.get(khi.key())
    if Shi is None:
        Shi = MulModPSpace(khi, delta_hint=S.delta)
        _SPACES[khi.key()] = Shi
    v = x.val()
    if v % p:
        c = invmod(v % p, p)
        d = (1 - c * v) // p
        h_a = _shadow_lift(khi, x)
        piL = [khi.zero() for _ in range(p)]
        piL[c] = khi.pi()**d
    else:
        u = x * k.pi()**(-v) if v else x
        lvl, anorm, _ = unit_class_reduce(k, u)
        if lvl is None:
            raise ConsistencyError("nontrivial class reduced to nothing")
        if lvl * (p - 1) == p * e:
            return None
        c2 = invmod(lvl, p)
        d2 = (1 - c2 * lvl) // p
        h_a = _shadow_lift(khi, anorm)
        tm1 = [-khi.one(), khi.one()] + [khi.zero() for _ in range(p - 2)]
        piL = tm1
        for _ in range(c2 - 1):
            piL = _bmul(h_a, piL, tm1)
        if d2:
            pw = khi.pi()**d2
            piL = [z * pw for z in piL]
    # Powers of pi_L in the T-basis drift into deeply non-integral
    # representations, so norms are not taken there.  Instead: the
    # characteristic polynomial chi of multiplication by pi_L is
    # Eisenstein over O_k (pi_L generates B, so chi is its minimal
    # polynomial), and B = k[X]/chi; every further norm is a determinant
    # of I + theta Comp(chi)^i, whose entries stay integral.
    M = []
    for j in range(p):
        ej = [khi.one() if t == j else khi.zero() for t in range(p)]
        M.append(_bmul(h_a, piL, ej))
    M = [[M[j][t] for j in range(p)] for t in range(p)]
    C = _charpoly_elts(khi, M)
    if C[-1].val() != 1:
        raise ConsistencyError(
            "uniformizer charpoly has constant term of valuation %s"
            % C[-1].val())
    for c in C[1:-1]:
        if c.val_lower_bound() < 1:
            raise ConsistencyError(
                "uniformizer charpoly is not Eisenstein at precision")
    comp = [[khi.zero() for _ in range(p)] for _ in range(p)]
    for j in range(p - 1):
        comp[j + 1][j] = khi.one()
    for t in range(p):
        comp[t][p - 1] = -C[p - t]
    rows = [Shi.coords(-C[-1])]
    th = [khi.lift_fq(tuple(1 if t == b else 0 for t in range(f)))
          for b in range(f)]
    cur = comp
    for i in range(1, top + 1):
        if i > 1:
            cur = [[_sum_elts(cur[r][t] * comp[t][c] for t in range(p))
                    for c in range(p)] for r in range(p)]
        for b in range(f):
            G = [[(khi.one() if r == c else khi.zero())
                  + th[b] * cur[r][c] for c in range(p)] for r in range(p)]
            rows.append(Shi.coords(_det_elt(khi, G)))
    red, _ = _rref(rows, p)
    if len(red) != S.dim - 1:
        raise ConsistencyError(
            "norm classes span rank %d, expected codimension one"
            % len(red))
    return tuple(red)


def norm_classes_mod_p(k, x):
    """RREF basis of the norm classes of k(x^{1/p}) inside the space.

    Unramified steps short-circuit: their norm group is <pi^p> U_k, so
    the span is exactly the unit coordinates.
    """
    S = build_space(k)
    if S.delta == 0:
        raise NoPthRoots("norm-class computations need mu_p in the field")
    rows = _norm_span_rows(S, x)
    if rows is None:
        return tuple(tuple(1 if t == idx else 0 for t in range(S.dim))
                     for idx in range(1, S.dim))
    return rows


# ---------------------------------------------------------------------------
# the pairing matrix

def _pairing_matrix(k):
    """D x D symbol matrix over F_p, a global scalar away from the true
    Hilbert pairing.

    Column b is the norm functional of basis radicand g_b, which the
    nullspace only determines up to scale.  The functional of the
    combination radicand g_0 g_b equals alpha raw_0 + beta raw_b for
    nonzero alpha, beta, and bilinearity of the true symbol forces the
    relative scale lambda_b = beta / alpha.  Rescaling every column this
    way leaves one global unit multiple, which cancels out of every
    question asked of the matrix.  Alternation and antisymmetry are
    asserted at the end, not assumed.
    """
    got = _PAIRINGS.get(k.key())
    if got is not None:
        return got
    S = build_space(k)
    if S.delta == 0:
        raise NoPthRoots("the Hilbert pairing needs mu_p in the field")
    D, p = S.dim, k.p
    raws = [_functional(norm_classes_mod_p(k, g), D, p) for g in S.basis]
    cols = [raws[0]]
    for b in range(1, D):
        raw_c = _functional(
            norm_classes_mod_p(k, S.basis[0] * S.basis[b]), D, p)
        ab = None
        for alpha in range(1, p):
            for beta in range(1, p):
                if all((alpha * u0 + beta * ub - uc) % p == 0
                       for u0, ub, uc in zip(raws[0], raws[b], raw_c)):
                    ab = (alpha, beta)
                    break
            if ab:
                break
        if ab is None:
            raise ConsistencyError(
                "combination radicand functional left the plane of its "
                "factors")
        lam = ab[1] * invmod(ab[0], p) % p
        cols.append(tuple(a * lam % p for a in raws[b]))
    H = tuple(tuple(cols[b][a] for b in range(D)) for a in range(D))
    for a in range(D):
        if H[a][a] % p:
            raise ConsistencyError("pairing matrix has a nonzero diagonal")
        for b in range(D):
            if (H[a][b] + H[b][a]) % p:
                raise ConsistencyError("pairing matrix is not alternating")
    _PAIRINGS[k.key()] = H
    return H


def hilbert_symbol(k, x, y):
    """The mod-p Hilbert symbol (x, y), up to one fixed unit scalar.

    Vanishing is exact: (x, y) = 0 iff x is a norm from k(y^{1/p}).  The
    global scalar depends only on the field (it is the free scale of the
    uniformizer column), so bilinearity, antisymmetry, Steinberg and all
    order questions are unaffected by it.
    """
    S = build_space(k)
    if S.delta == 0:
        raise NoPthRoots("the Hilbert pairing needs mu_p in the field")
    H = _pairing_matrix(k)
    cx = S.coords(x)
    cy = S.coords(y)
    out = 0
    for a in range(S.dim):
        if cx[a]:
            for b in range(S.dim):
                if cy[b]:
                    out += cx[a] * H[a][b] * cy[b]
    return out % k.p


def filtration_pairing_order(k, i, j):
    """Order of the image of (U^i, U^j) under the symbol: p or 1.

    Exhausts the pairings of filtration basis classes, then cross-checks
    the closed form: order p exactly when i + j <= pe0.
    """
    if i < 1 or j < 1:
        raise InconsistentInput("filtration levels start at 1")
    S = build_space(k)
    if S.delta == 0:
        raise NoPthRoots("the Hilbert pairing needs mu_p in the field")
    p = k.p
    if i % p == 0 and j % p == 0:
        raise BothDivisible(
            "both levels divisible by p: no jump generates either side")
    H = _pairing_matrix(k)
    gi = [t for t in range(1, S.dim) if S._levels[t] >= i]
    gj = [t for t in range(1, S.dim) if S._levels[t] >= j]
    hit = any(H[a][b] % p for a in gi for b in gj)
    order = p if hit else 1
    want = p if i + j <= S.boundary else 1
    if order != want:
        raise ConsistencyError(
            "pairing exhaust disagrees with the i + j <= pe0 rule at "
            "(%d, %d)" % (i, j))
    return order


# ---------------------------------------------------------------------------
# Kummer levels and generator witnesses

def kummer_root_level(k, x, cap=None):
    """(L, level): L = k(x^{1/p}) and the filtration level of the chosen
    root upstairs.

    Requires mu_p in k and a unit radicand whose class sits at a coprime
    level strictly below the boundary; such radicands keep their level
    (the root of 1 + d pi^i lands at level i of L, which is totally
    ramified of degree p).
    """
    S = build_space(k)
    if S.delta == 0:
        raise NoPthRoots("Kummer steps need mu_p in the base")
    cs = coerce_poly(k, [x])
    if not cs:
        raise HypothesisViolated("zero is not a Kummer radicand")
    u = _canon(cs[0])
    if u.val() != 0:
        raise HypothesisViolated("the radicand must be a unit")
    i = filtration_level(S, u)
    if i is TOP:
        raise HypothesisViolated("the radicand is already a p-th power")
    if i % k.p == 0 or i >= S.boundary:
        raise HypothesisViolated(
            "level %s is not a coprime level below the boundary" % i)
    # deep steps can exhaust the base working precision (the basis solve
    # inside the tower construction scales by p^t); retry against the
    # same field rebuilt with more digits, moving the radicand by its
    # canonical digits (class-true, so the level is unchanged)
    ext = None
    last = None
    for boost in range(4):
        kk = k if boost == 0 else make_field(
            k.p, list(k.eis), f=k.f, prec=k.prec * 4**boost, unram=k.unram)
        try:
            ext = radical_extend(kk, u if boost == 0 else
                                 _shadow_lift(kk, u), k.p, cap=cap)
            break
        except PrecisionExhausted as err:
            last = err
    if ext is None:
        raise last
    L = ext.field
    if L.e != k.p * k.e or L.f != k.f:
        raise ConsistencyError("Kummer step did not ramify as predicted")
    SL = build_space(L)
    lvl = filtration_level(SL, ext.gen)
    if lvl is TOP:
        raise ConsistencyError("the Kummer root is a p-th power upstairs")
    return L, lvl


@dataclass(frozen=True)
class SymbolWitnesses:
    u_prime: object
    u: object
    partner: object
    level: int
    symbols: tuple


@dataclass(frozen=True)
class NotFound:
    level: int
    bound: int
    detail: str = ""


def symbol_generators_mod_p(k, decomposition):
    """Witnesses pairing both sides of a boundary decomposition against
    the deepest p-power root of unity.

    decomposition = (a, b) splits the boundary, typically as
    (p t0, p (e0 - t0)).  With zeta the deepest zeta_{p^M} in k, at level
    i: when i <= min(a, b) both U^a and U^b pair nontrivially with zeta
    and basis witnesses are returned; otherwise NotFound carries the
    blocking inequality (level vs bound).
    """
    S = build_space(k)
    if S.delta == 0:
        raise NoPthRoots("symbol generators need mu_p in the field")
    a, b = decomposition
    if a < 1 or b < 1:
        raise HypothesisViolated(
            "both decomposition levels must be positive")
    zs = _zetas_in_field(k, 4)
    if not zs:
        raise ConsistencyError("delta = 1 but no zeta_p was found")
    zeta = zs[-1]
    i = filtration_level(S, zeta)
    if i is TOP:
        raise ConsistencyError(
            "a deepest root of unity cannot be a p-th power")
    bound = min(a, b)
    if i > bound:
        return NotFound(level=i, bound=bound,
                        detail="the partner level exceeds the smaller "
                               "decomposition level")

    def find(lev):
        for idx in range(1, S.dim):
            if S._levels[idx] >= lev and \
                    hilbert_symbol(k, S.basis[idx], zeta) != 0:
                return S.basis[idx]
        return None

    up = find(a)
    uu = find(b)
    if up is None or uu is None:
        if i + a <= S.boundary and i + b <= S.boundary:
            raise ConsistencyError(
                "the level inequality holds but no pairing witness was "
                "found")
        return NotFound(level=i, bound=bound,
                        detail="pairing against the partner dies beyond "
                               "the boundary")
    return SymbolWitnesses(
        u_prime=up, u=uu, partner=zeta, level=i,
        symbols=(hilbert_symbol(k, up, zeta), hilbert_symbol(k, uu, zeta)))


# ---------------------------------------------------------------------------
# export

def export_pairing_table(k):
    """JSON-ready pairing table: the field presentation, the zeta_p the
    calibration refers to, and the D x D matrix over F_p."""
    S = build_space(k)
    H = _pairing_matrix(k)
    zs = _zetas_in_field(k, 1)
    if not zs:
        raise NoPthRoots("no pairing table without mu_p")
    z = _canon(zs[0])
    return {
        "field": {
            "p": k.p,
            "f": k.f,
            "unram": list(k.unram),
            "eis": [list(vec) for vec in k.eis],
            "prec": k.prec,
        },
        "zeta_choice": {
            "shift": z.shift,
            "coeffs": [list(vec) for vec in z.coeffs],
            "cprec": z.cprec,
        },
        "table": [list(row) for row in H],
    }
