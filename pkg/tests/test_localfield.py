"""Field construction, exact valuations, and precision-erosion behavior."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramlock.errors import (
    DegreeCapExceeded,
    EvenPrime,
    FieldMismatch,
    NonEisenstein,
    NotAUnit,
    PrecisionExhausted,
    ReducibleUnramPoly,
    ResidueFieldTooLarge,
)
from ramlock.localfield import (
    canonical_unram_poly,
    is_irreducible_mod_p,
    make_field,
    make_unramified_field,
)


def zeta3_field():
    # x^2 + 3x + 3 is the minimal polynomial of zeta_3 - 1 over Q_3
    return make_field(3, [3, 3, 1])


class TestConstruction:
    def test_rejects_two(self):
        with pytest.raises(EvenPrime):
            make_field(2, [2, 1])

    def test_rejects_non_eisenstein(self):
        with pytest.raises(NonEisenstein):
            make_field(3, [1, 3, 1])          # constant term is a unit
        with pytest.raises(NonEisenstein):
            make_field(3, [9, 3, 1])          # v(constant) = 2
        with pytest.raises(NonEisenstein):
            make_field(3, [3, 1, 1])          # middle term not divisible
        with pytest.raises(NonEisenstein):
            make_field(3, [3, 3, 2])          # not monic

    def test_rejects_reducible_unram(self):
        with pytest.raises(ReducibleUnramPoly):
            make_field(3, [-3, 1], unram=[1, 2, 1])     # (y+1)^2 mod 3

    def test_degree_cap(self):
        with pytest.raises(DegreeCapExceeded):
            make_field(3, [3] + [0] * 16 + [1], cap=16)
        make_field(3, [3] + [0] * 16 + [1], cap=17)

    def test_residue_cap(self):
        with pytest.raises(ResidueFieldTooLarge):
            make_unramified_field(3, 5)

    def test_caching_returns_same_object(self):
        assert zeta3_field() is zeta3_field()

    def test_canonical_unram_frozen(self):
        # derived by listing monic polynomials in base-p coefficient order
        # and trial-dividing by low-degree factors
        assert canonical_unram_poly(3, 1) == (0, 1)
        assert canonical_unram_poly(3, 2) == (1, 0, 1)
        assert canonical_unram_poly(5, 2) == (2, 0, 1)
        assert canonical_unram_poly(7, 2) == (1, 0, 1)
        assert canonical_unram_poly(3, 3) == (1, 2, 0, 1)
        assert canonical_unram_poly(3, 4) == (2, 1, 0, 0, 1)

    def test_irreducibility_oracle(self):
        assert is_irreducible_mod_p((1, 0, 1), 3)        # y^2 + 1
        assert not is_irreducible_mod_p((1, 2, 1), 3)    # (y+1)^2
        assert not is_irreducible_mod_p((1, 0, 0, 0, 1), 3)   # y^4+1 splits
        assert is_irreducible_mod_p((2, 1, 0, 0, 1), 3)


class TestValuation:
    def test_basics(self):
        k = zeta3_field()
        pi = k.pi()
        assert pi.val() == 1
        assert k.from_int(3).val() == 2
        assert k.from_int(3**7 * 2).val() == 14
        assert k.one().val() == 0

    def test_eisenstein_relation(self):
        k = zeta3_field()
        pi = k.pi()
        assert (pi * pi + 3 * pi + 3).is_zero()
        # pi^2 + 3 = -3 pi has valuation 3
        assert (pi * pi + 3).val() == 3

    def test_exact_zero_has_no_valuation(self):
        k = zeta3_field()
        with pytest.raises(PrecisionExhausted):
            k.zero().val()
        assert k.zero().is_zero()

    def test_val_additive(self):
        k = zeta3_field()
        pi = k.pi()
        a = pi**3 * (1 + pi)
        b = k.from_int(6)
        assert (a * b).val() == a.val() + b.val()

    def test_unramified(self):
        K = make_unramified_field(3, 2)
        y = K.gen_u()
        assert (y * y + 1).is_zero()     # exact: W = Z_3[y]/(y^2+1)
        assert y.val() == 0
        assert K.from_int(3).val() == 1
        assert y.residue() == (0, 1)


class TestInversion:
    def test_unit_roundtrip(self):
        k = zeta3_field()
        pi = k.pi()
        for z in (1 + pi, k.from_int(-2), 1 + 3 * pi, k.gen_u() + pi**3):
            assert (z * z.inv() - 1).is_zero()

    def test_nonunit_roundtrip(self):
        k = zeta3_field()
        pi = k.pi()
        for z in (pi, k.from_int(3), pi**3 * 2, pi * 5 + 9):
            zi = z.inv()
            assert (z * zi - 1).is_zero()
            assert zi.val() == -z.val()

    def test_pi_inverse_shift(self):
        k = zeta3_field()
        ip = k.pi().inv()
        assert ip.val() == -1
        w = ip + k.pi()
        assert w.val() == -1
        assert (w * k.pi() - 1 - k.pi()**2).is_zero()

    def test_zero_inverse_raises(self):
        with pytest.raises(PrecisionExhausted):
            zeta3_field().zero().inv()

    @given(st.integers(0, 3**6 - 1), st.integers(0, 3**6 - 1),
           st.integers(0, 2))
    @settings(max_examples=60, deadline=None)
    def test_random_roundtrip(self, a, b, s):
        k = zeta3_field()
        z = k.from_coeffs([a, b], shift=s)
        if z.is_zero():
            return
        assert (z * z.inv() - 1).is_zero()


class TestUnitPart:
    def test_recompose(self):
        k = zeta3_field()
        pi = k.pi()
        z = pi**5 * (1 + pi)
        v, u = z.unit_part()
        assert v == 5 and u.val() == 0
        assert (z - pi**5 * u).is_zero()

    def test_p_power(self):
        k = zeta3_field()
        z = k.from_int(9)
        v, u = z.unit_part()
        assert v == 4
        assert (z - k.pi()**4 * u).is_zero()

    def test_residues(self):
        k = zeta3_field()
        assert (1 + k.pi()).residue() == (1,)
        assert k.from_int(-2).residue() == (1,)
        assert k.from_int(2).residue() == (2,)
        with pytest.raises(NotAUnit):
            k.pi().residue()

    @given(st.integers(1, 3**5), st.integers(0, 3**5), st.integers(0, 7))
    @settings(max_examples=50, deadline=None)
    def test_unit_part_property(self, a, b, v):
        k = zeta3_field()
        z = k.from_coeffs([a, b]) * k.pi()**v
        if z.is_zero():
            return
        vv, u = z.unit_part()
        assert u.val() == 0
        assert (z - k.pi()**vv * u).is_zero()


class TestPrecision:
    def test_deep_zero_detection(self):
        k = make_field(3, [3, 3, 1], prec=4)
        # cprec is small; a deep p-power is zero to precision
        deep = k.from_int(3**k.cprec0)
        assert deep.is_zero()
        with pytest.raises(PrecisionExhausted):
            deep.val()

    def test_strip_exhaustion(self):
        k = make_field(3, [3, 3, 1], prec=1)
        # odd valuation 2*cprec0 - 1 needs cprec0 p-digits to strip
        z = k.pi() * k.from_int(3**(k.cprec0 - 1))
        with pytest.raises(PrecisionExhausted):
            z.inv()

    def test_mul_tracks_min_cprec(self):
        k = zeta3_field()
        z = k.from_int(9).inv()            # costs one coefficient digit
        w = z * k.one()
        assert w.cprec == z.cprec


class TestFieldMismatch:
    def test_cross_field_ops(self):
        a = zeta3_field().pi()
        b = make_field(5, [5, 5, 1]).pi()
        with pytest.raises(FieldMismatch):
            _ = a + b


class TestRingAxioms:
    @given(st.tuples(st.integers(0, 80), st.integers(0, 80)),
           st.tuples(st.integers(0, 80), st.integers(0, 80)),
           st.tuples(st.integers(0, 80), st.integers(0, 80)))
    @settings(max_examples=40, deadline=None)
    def test_distributive(self, ta, tb, tc):
        k = zeta3_field()
        a = k.from_coeffs(list(ta))
        b = k.from_coeffs(list(tb))
        c = k.from_coeffs(list(tc))
        assert (a * (b + c) - (a * b + a * c)).is_zero()
        assert (a * b - b * a).is_zero()
        assert ((a + b) + c - (a + (b + c))).is_zero()
