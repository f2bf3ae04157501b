import json
import math
import pickle
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omegamonoids.errors import IncomparableKinds
from omegamonoids.exact import (
    PHI,
    LogLin,
    QuadSurd,
    add,
    compare,
    div,
    floor,
    from_json,
    log2,
    mul,
    parse,
    scalar_mul,
    sign,
    sqrt,
    to_decimal,
    to_json,
)

from .oracles import hp, iv_loglin, power_less

F = Fraction


# ------------------------------------------------------------------ construction


def test_canonical_forms():
    assert QuadSurd(3, 0, 5) == F(3) and type(QuadSurd(3, 0, 5)) is Fraction
    assert QuadSurd(1, 1, 9) == F(4)
    assert QuadSurd(0, 1, 8) == QuadSurd(0, 2, 2)
    assert LogLin(1, {}) == F(1) and type(LogLin(1, {})) is Fraction
    assert LogLin(0, {2: 3, 3: 1}) == LogLin(3, {3: 1})
    assert log2(12) == LogLin(2, {3: 1})
    assert log2(F(9, 8)) == LogLin(-3, {3: 2})
    assert log2(1) == 0
    assert sqrt(F(5, 4)) == QuadSurd(0, F(1, 2), 5)


def test_loglin_rejects_composite_keys():
    with pytest.raises(ValueError):
        LogLin(0, {9: 1})


def test_values_are_immutable():
    with pytest.raises(AttributeError):
        PHI.a = F(0)
    with pytest.raises(AttributeError):
        log2(3).q0 = F(1)


def test_pickle_round_trip():
    for x in (PHI, log2(15), LogLin(F(1, 3), {5: F(-2, 7)})):
        assert pickle.loads(pickle.dumps(x)) == x


# ------------------------------------------------------------------- comparison


def test_compare_log2_3_against_8_5():
    # log2(3) < 8/5  iff  3**5 < 2**8
    assert power_less(3, 5, 2, 8)
    assert compare(log2(3), F(8, 5)) == -1


def test_compare_reflexive():
    assert compare(PHI, PHI) == 0


def test_compare_twelve_log2_3_above_nineteen():
    assert float(hp(lambda m: 12 * m.log(3, 2))) == pytest.approx(19.01955, abs=1e-5)
    assert compare(scalar_mul(12, log2(3)), 19) == 1


def test_cross_kind_comparison_is_rejected():
    with pytest.raises(IncomparableKinds):
        compare(PHI, log2(3))
    with pytest.raises(IncomparableKinds):
        add(PHI, log2(3))
    with pytest.raises(IncomparableKinds):
        add(sqrt(2), sqrt(3))
    assert PHI != log2(3)


def test_operators_mix_with_fraction():
    assert F(1) < PHI < F(2)
    assert sorted([F(2), PHI, F(1)]) == [F(1), PHI, F(2)]
    assert PHI + 1 == QuadSurd(F(3, 2), F(1, 2), 5)
    assert 1 - PHI == QuadSurd(F(1, 2), F(-1, 2), 5)
    assert 2 * log2(3) == log2(9)


# ------------------------------------------------------------------- arithmetic


def test_add_and_scale():
    assert add(log2(3), log2(3)) == LogLin(0, {3: 2})
    assert add(PHI, 1) == QuadSurd(F(3, 2), F(1, 2), 5)
    twelve_log5 = scalar_mul(12, log2(5))
    assert twelve_log5 == LogLin(0, {5: 12})
    assert float(hp(lambda m: 12 * m.log(5, 2))) == pytest.approx(27.86314, abs=1e-5)
    assert compare(twelve_log5, 28) == -1


def test_golden_identities():
    assert mul(PHI, PHI) == add(PHI, 1)
    assert div(1, PHI) == add(PHI, -1)
    # (phi) / (3 phi / 2) = 2/3
    assert div(PHI, scalar_mul(F(3, 2), PHI)) == F(2, 3)


def test_division_outside_the_representations():
    with pytest.raises(IncomparableKinds):
        div(1, log2(3))
    with pytest.raises(IncomparableKinds):
        div(log2(3), log2(5))
    assert div(log2(9), log2(3)) == 2


# ------------------------------------------------------------------------ floor


def test_floor_phi():
    assert floor(PHI) == 1


def test_floor_twelve_log2_3_plus_offset():
    # 19 <= 12 log2 3 + 3/5 < 20  iff  2**92 <= 3**60 < 2**97
    assert not power_less(3, 60, 2, 92) and power_less(3, 60, 2, 97)
    assert floor(add(scalar_mul(12, log2(3)), F(3, 5))) == 19


def test_floor_thirteenth_harmonic_is_not_nearest_rounding():
    # 45 <= 12 log2 13 + 3/5 < 46  iff  2**222 <= 13**60 < 2**227
    assert not power_less(13, 60, 2, 222) and power_less(13, 60, 2, 227)
    assert round(float(hp(lambda m: 12 * m.log(13, 2)))) == 44
    assert floor(add(scalar_mul(12, log2(13)), F(3, 5))) == 45


def test_floor_of_negative_and_large_values():
    assert floor(-PHI) == -2
    assert floor(scalar_mul(-1, log2(3))) == -2
    big = scalar_mul(10**30, log2(3))
    expected = int(hp(lambda m: m.floor(10**30 * m.log(3, 2)), dps=80))
    assert floor(big) == expected


# --------------------------------------------------------------------- decimals


@pytest.mark.parametrize(
    "x, digits, expected",
    [
        (PHI, 4, "1.6180"),
        (F(0), 4, "0.0000"),
        (F(1, 8), 2, "0.13"),  # half-up
        (F(-1, 8), 2, "-0.12"),
        (F(7), 1, "7.0"),
    ],
)
def test_to_decimal(x, digits, expected):
    assert to_decimal(x, digits) == expected


def test_to_decimal_log2_3():
    assert mpmath.nstr(hp(lambda m: m.log(3, 2)), 6) == "1.58496"
    assert to_decimal(log2(3), 5) == "1.58496"


def test_to_decimal_many_digits_uses_interval_path():
    expected = mpmath.nstr(hp(lambda m: m.log(3, 2), dps=60), 41)
    assert to_decimal(log2(3), 40) == expected


# ---------------------------------------------------------------- serialization


@pytest.mark.parametrize(
    "x",
    [F(3, 5), F(-7), PHI, QuadSurd(F(-2, 3), F(5, 7), 13), log2(15), LogLin(F(10**40 + 1, 3), {7: F(-1, 10**25)})],
)
def test_json_round_trip(x):
    obj = json.loads(json.dumps(to_json(x)))
    assert from_json(obj) == x
    assert all(isinstance(v, str) for v in _scalar_leaves(obj) if not isinstance(v, dict))


def _scalar_leaves(obj):
    for k, v in obj.items():
        if k == "kind":
            continue
        if isinstance(v, dict):
            yield from _scalar_leaves(v)
        else:
            yield v


@pytest.mark.parametrize(
    "text, value",
    [
        ("phi", PHI),
        ("(1+sqrt(5))/2", PHI),
        ("3*phi/2", scalar_mul(F(3, 2), PHI)),
        ("12*log2(3)+3/5", add(scalar_mul(12, log2(3)), F(3, 5))),
        ("-3+2*log2(3)", log2(F(9, 8))),
        ("log2(9/8)", log2(F(9, 8))),
        ("17/8", F(17, 8)),
    ],
)
def test_parse(text, value):
    assert parse(text) == value


def test_str_round_trips_through_parse():
    for x in (PHI, -PHI, add(PHI, -1), log2(F(3, 2)), LogLin(F(-1, 2), {3: F(2, 3), 5: -1}), F(-4, 9)):
        assert parse(str(x)) == x


def test_parse_errors():
    for bad in ("", "phi +", "log2(phi)", "foo", "1/"):
        with pytest.raises(ValueError):
            parse(bad)


# ---------------------------------------------------------------- properties

small_q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
rationals = small_q
surds = st.builds(QuadSurd, small_q, small_q, st.just(5))
loglins = st.builds(
    LogLin,
    small_q,
    st.dictionaries(st.sampled_from([3, 5, 7, 11, 13]), st.fractions(min_value=-6, max_value=6, max_denominator=6), max_size=3),
)


@pytest.mark.parametrize("kind", [rationals, surds, loglins], ids=["rat", "quad", "loglin"])
def test_trichotomy_and_transitivity(kind):
    @settings(max_examples=1000, deadline=None)
    @given(kind, kind, kind)
    def check(x, y, z):
        cxy = compare(x, y)
        assert cxy == -compare(y, x)
        assert (cxy == 0) == (x == y)
        if cxy <= 0 and compare(y, z) <= 0:
            assert compare(x, z) <= 0

    check()


@pytest.mark.parametrize("kind", [rationals, surds, loglins], ids=["rat", "quad", "loglin"])
def test_translation_invariance(kind):
    @settings(max_examples=300, deadline=None)
    @given(kind, kind, kind)
    def check(x, y, z):
        assert compare(add(x, z), add(y, z)) == compare(x, y)

    check()


@pytest.mark.parametrize("kind", [rationals, surds, loglins], ids=["rat", "quad", "loglin"])
def test_floor_brackets(kind):
    @settings(max_examples=300, deadline=None)
    @given(kind)
    def check(x):
        k = floor(x)
        assert compare(k, x) <= 0 < compare(k + 1, x)

    check()


@settings(max_examples=1000, deadline=None)
@given(loglins)
def test_loglin_sign_agrees_with_interval_evaluation(x):
    if not isinstance(x, LogLin):
        return
    v = iv_loglin(x.q0, dict(x.terms), dps=200)
    if v.a > 0:
        assert sign(x) == 1
    elif v.b < 0:
        assert sign(x) == -1


@settings(max_examples=300, deadline=None)
@given(st.one_of(rationals, surds, loglins))
def test_canonicalization_is_idempotent(x):
    again = from_json(to_json(x))
    assert again == x and hash(again) == hash(x) and type(again) is type(x)
    if isinstance(x, QuadSurd):
        assert QuadSurd(x.a, x.b, x.d) == x
    if isinstance(x, LogLin):
        assert LogLin(x.q0, dict(x.terms)) == x


def test_interval_sign_for_huge_coefficients():
    # 3**(10**9) vs 2**(1584962500 * ...) is far beyond the integer path
    x = add(scalar_mul(10**9, log2(3)), -1584962500)
    assert sign(x) == (1 if hp(lambda m: 10**9 * m.log(3, 2) - 1584962500, dps=40) > 0 else -1)
    assert math.isclose(float(x), float(hp(lambda m: 10**9 * m.log(3, 2) - 1584962500, dps=40)), rel_tol=1e-9)
