import random
from dataclasses import replace
from fractions import Fraction

import pytest

from linepack.chartab import (
    CharacterTable,
    GaussianScaled,
    linear_characters,
    nonlinear_characters,
)


# ---------------------------------------------------------------------------
# GaussianScaled scalar type
# ---------------------------------------------------------------------------

def test_gaussian_scaled_canonical_form():
    assert GaussianScaled.make(4, 0) == GaussianScaled(1, 0, 2)
    assert GaussianScaled.make(6, 2) == GaussianScaled(3, 1, 1)
    assert GaussianScaled.make(0, 0, 7) == GaussianScaled(0, 0, 0)
    assert GaussianScaled.make(3, 0, -4).as_fraction_pair() == (Fraction(3, 16), Fraction(0))


def test_gaussian_scaled_arithmetic():
    one = GaussianScaled.ONE
    i = GaussianScaled.make(0, 1)
    assert i * i == -one
    assert (one + one) == GaussianScaled(1, 0, 1)
    a = GaussianScaled.make(3, -2, -1)
    b = GaussianScaled.make(-1, 5, 2)
    ar, ai = a.as_fraction_pair()
    br, bi = b.as_fraction_pair()
    pr, pi = (a * b).as_fraction_pair()
    assert pr == ar * br - ai * bi and pi == ar * bi + ai * br
    sr, si = (a + b).as_fraction_pair()
    assert sr == ar + br and si == ai + bi
    assert a.conjugate().as_fraction_pair() == (ar, -ai)
    assert a.abs_sq() == ar * ar + ai * ai


def test_gaussian_scaled_int_export():
    assert GaussianScaled.make(1, -1, 3).as_gaussian_int() == (8, -8)
    with pytest.raises(ValueError):
        GaussianScaled.make(1, 0, -2).as_gaussian_int()


# ---------------------------------------------------------------------------
# linear characters
# ---------------------------------------------------------------------------

def value_at(group, table, char_idx, g):
    ci = int(group.class_of_element[group.index(g)])
    return table.characters[char_idx].values[ci]


def test_trivial_character(table3, group3):
    for ci in range(len(table3.classes)):
        assert table3.characters[0].values[ci] == GaussianScaled.ONE
    assert table3.characters[0].label == "lin[0]"


def test_linear_characters_multiplicative(table3, group3):
    rng = random.Random(11)
    q = group3.field.order
    for c in range(q):
        idx = table3.character_index("linear", c)
        for _ in range(125):
            a = (rng.randrange(q), rng.randrange(q))
            b = (rng.randrange(q), rng.randrange(q))
            lhs = value_at(group3, table3, idx, group3.mul(a, b))
            rhs = value_at(group3, table3, idx, a) * value_at(group3, table3, idx, b)
            assert lhs == rhs


def test_linear_characters_trivial_on_commutator(group3):
    lin = linear_characters(group3)
    comm = set(group3.commutator_subgroup)
    for ch in lin:
        for g in comm:
            ci = int(group3.class_of_element[group3.index(g)])
            assert ch.values[ci] == GaussianScaled.ONE


def test_linear_characters_pairwise_orthogonal(group3):
    lin = linear_characters(group3)
    sizes = [c.size for c in group3.conjugacy_classes]
    for i, a in enumerate(lin):
        for j, b in enumerate(lin):
            total = GaussianScaled.ZERO
            for ci, w in enumerate(sizes):
                term = a.values[ci] * b.values[ci].conjugate()
                total = total + term * GaussianScaled.make(w)
            want = GaussianScaled.make(group3.order) if i == j else GaussianScaled.ZERO
            assert total == want


# ---------------------------------------------------------------------------
# nonlinear characters
# ---------------------------------------------------------------------------

def test_nonlinear_values_n3(table3, group3):
    k = group3.field.k
    for gamma in group3.field.nonzero_elements():
        idx = table3.character_index("nonlinear", gamma, +1)
        assert value_at(group3, table3, idx, (0, 0)) == GaussianScaled.make(1 << k)
        for g in group3.elements():
            if g[0] not in (0, gamma):
                assert value_at(group3, table3, idx, g).is_zero()
    idx1 = table3.character_index("nonlinear", 1, +1)
    assert value_at(group3, table3, idx1, (1, 0)) == GaussianScaled.make(0, 2)


def test_minus_family_is_conjugate(table3):
    for gamma in table3.group.field.nonzero_elements():
        ip = table3.character_index("nonlinear", gamma, +1)
        im = table3.character_index("nonlinear", gamma, -1)
        for vp, vm in zip(table3.characters[ip].values, table3.characters[im].values):
            assert vm == vp.conjugate()


def test_values_constant_on_classes_member_level(table3, group3):
    # recompute every nonlinear value directly at every member of every class
    field = group3.field
    k = field.k
    for gamma in field.nonzero_elements():
        idx = table3.character_index("nonlinear", gamma, +1)
        for ci, cls in enumerate(group3.conjugacy_classes):
            for (x, y) in cls.members:
                if x not in (0, gamma):
                    want = GaussianScaled.ZERO
                else:
                    sign = 1 - 2 * field.hyperplane_quotient(gamma, y)
                    if x == 0:
                        want = GaussianScaled.make(sign, 0, k)
                    else:
                        want = GaussianScaled.make(0, sign, k)
                assert table3.characters[idx].values[ci] == want


def test_rep_trace_cross_check_has_teeth(group3, rep3):
    # the "-" values are NOT the twisted traces, so the construction-time
    # cross-check would reject a sign mix-up
    plus, minus = nonlinear_characters(group3, rep3, cross_check=True)
    mismatches = 0
    for pch, mch in zip(plus, minus):
        for ci, cls in enumerate(group3.conjugacy_classes):
            tr = rep3.rep_twisted(pch.parameter, cls.representative).trace()
            assert tr == pch.values[ci].as_gaussian_int()
            if tr != mch.values[ci].as_gaussian_int():
                mismatches += 1
    assert mismatches > 0


# ---------------------------------------------------------------------------
# assembled table
# ---------------------------------------------------------------------------

def test_table_census_n3(table3):
    assert len(table3.characters) == 22
    degs = sorted(table3.degrees)
    assert degs == [1] * 8 + [2] * 14
    assert sum(d * d for d in table3.degrees) == 64
    assert len(table3.d_set) == 7


def test_table_census_n5(table5):
    assert len(table5.characters) == 94
    assert sorted(set(table5.degrees)) == [1, 4]
    assert sum(d * d for d in table5.degrees) == 1024
    assert len(table5.d_set) == 31


def test_orthogonality_is_verified(table3, table5):
    table3.verify()
    table5.verify()


def test_verify_detects_broken_value(table3, group3):
    chars = list(table3.characters)
    bad_vals = list(chars[3].values)
    bad_vals[1] = -bad_vals[1]
    chars[3] = replace(chars[3], values=tuple(bad_vals))
    broken = CharacterTable(group3, table3.classes, tuple(chars), table3.d_set)
    with pytest.raises(AssertionError):
        broken.verify()


def test_identity_column_sums_to_order(table3):
    total = sum(d * d for d in table3.degrees)
    assert total == table3.group.order


def test_central_column_sum_over_d_set(table3, table5):
    # summing the hyperdifference family over a nontrivial central element
    # gives -2^k
    for table in (table3, table5):
        group = table.group
        k = group.field.k
        for y in group.field.nonzero_elements():
            ci = int(group.class_of_element[group.index((0, y))])
            total = table.d_set_sum(ci)
            assert total == GaussianScaled.make(-1, 0, k)


def test_flat_d_set_sums(table3, table5):
    # unweighted: squared modulus 2^(2k) on every nonidentity class;
    # degree-weighted: m (N - m) / (N - 1)
    for table in (table3, table5):
        group = table.group
        k = group.field.k
        m = sum(table.characters[j].degree ** 2 for j in table.d_set)
        n = group.order
        weighted_expect = Fraction(m * (n - m), n - 1)
        for ci in range(1, len(table.classes)):
            assert table.d_set_sum(ci).abs_sq() == Fraction(1 << (2 * k))
            assert table.d_set_sum(ci, weighted=True).abs_sq() == weighted_expect


def test_row_norms(table3):
    for ch in table3.characters:
        total = Fraction(0)
        for ci, w in enumerate(table3.class_sizes):
            total += w * ch.values[ci].abs_sq()
        assert total == table3.group.order


def test_conjugate_duality(table3):
    dual = table3.conjugate_index
    for i, ch in enumerate(table3.characters):
        j = dual[i]
        other = table3.characters[j]
        if ch.kind == "linear":
            assert i == j
        else:
            assert other.parameter == ch.parameter and other.sign == -ch.sign
        assert dual[j] == i


def test_json_export_shape(table3):
    js = table3.to_json_dict()
    assert js["order"] == 64
    assert len(js["classes"]) == 22
    assert len(js["characters"]) == 22
    assert len(js["d_set"]) == 7
    assert all(set(v) == {"re", "im", "log2"}
               for v in js["characters"][0]["values"])
