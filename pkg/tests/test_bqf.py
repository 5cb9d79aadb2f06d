import itertools
import random
from math import gcd, isqrt

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from mti.bqf import (
    QuadForm,
    apply_transform,
    bqf_to_matrix,
    class_count_with_trace,
    classes_with_trace,
    hyperbolic_classes_below,
    is_reduced,
    matrix_to_bqf,
    reduce_indefinite,
    reduce_with_transform,
    reduced_forms_of_disc,
    reduction_cycle,
)
from mti.sl2 import SL2_S, SL2_T, Sl2Matrix


def test_matrix_to_bqf_examples():
    assert matrix_to_bqf(Sl2Matrix(2, 1, 1, 1)) == QuadForm(1, 1, -1)
    q = matrix_to_bqf(Sl2Matrix(10, 3, 3, 1))
    assert q == QuadForm(3, 9, -3) and q.discriminant == 117 == 11 * 11 - 4
    assert matrix_to_bqf(Sl2Matrix(27, 1, -1, 0)) == QuadForm(1, 27, 1)
    with pytest.raises(ValueError):
        matrix_to_bqf(Sl2Matrix(1, 1, 0, 1))


def test_bqf_to_matrix_examples():
    assert bqf_to_matrix(QuadForm(1, 1, -1), 3) == Sl2Matrix(1, -1, -1, 2)
    assert bqf_to_matrix(QuadForm(1, 1, -1), -3) == Sl2Matrix(-2, -1, -1, -1)
    m = bqf_to_matrix(QuadForm(3, 9, -3), 11)
    assert m == Sl2Matrix(1, -3, -3, 10)
    # round trip lands in the same reduction cycle
    cyc = {f.as_tuple() for f in reduction_cycle(reduce_indefinite(QuadForm(3, 9, -3)))}
    assert reduce_indefinite(matrix_to_bqf(m)).as_tuple() in cyc
    with pytest.raises(ValueError):
        bqf_to_matrix(QuadForm(1, 1, -1), 4)


def test_reduce_examples():
    assert is_reduced(QuadForm(1, 1, -1))
    assert reduce_indefinite(QuadForm(1, 1, -1)) == QuadForm(1, 1, -1)
    red, g = reduce_with_transform(QuadForm(1, 27, 1))
    assert is_reduced(red)
    assert apply_transform(QuadForm(1, 27, 1), g) == red
    assert is_reduced(QuadForm(-1, 1, 1))
    with pytest.raises(ValueError):
        reduce_indefinite(QuadForm(1, 0, -1))  # square discriminant
    with pytest.raises(ValueError):
        reduce_indefinite(QuadForm(1, 1, 1))  # negative discriminant


def test_reduction_cycle_disc5():
    cyc = reduction_cycle(QuadForm(1, 1, -1))
    assert {f.as_tuple() for f in cyc} == {(1, 1, -1), (-1, 1, 1)}
    assert len(cyc) == 2
    # there are exactly two reduced forms of disc 5, forming one cycle
    assert sorted(f.as_tuple() for f in reduced_forms_of_disc(5)) == [(-1, 1, 1), (1, 1, -1)]
    with pytest.raises(ValueError):
        reduction_cycle(QuadForm(1, 27, 1))


def test_disc12_two_cycles():
    # four reduced forms; the exhaustive scan shows they form TWO cycles
    # ((1,2,-2) represents 1 while (-1,2,2) does not, so the classes differ)
    forms = sorted(f.as_tuple() for f in reduced_forms_of_disc(12))
    assert forms == [(-2, 2, 1), (-1, 2, 2), (1, 2, -2), (2, 2, -1)]
    assert class_count_with_trace(4) == 2
    assert class_count_with_trace(3) == 1
    assert class_count_with_trace(-3) == 1


def test_cycle_properties_small_traces():
    for t in range(3, 21):
        members_seen = set()
        for rep in classes_with_trace(t):
            cyc = reduction_cycle(rep.form)
            assert len(cyc) % 2 == 0
            # leading coefficients alternate in sign around the cycle
            signs = [1 if f.m > 0 else -1 for f in cyc]
            assert all(signs[i] != signs[(i + 1) % len(cyc)] for i in range(len(cyc)))
            assert all(is_reduced(f) for f in cyc)
            tuples = {f.as_tuple() for f in cyc}
            assert not (tuples & members_seen), "cycles must be disjoint"
            members_seen |= tuples
        # every reduced form of the discriminant is accounted for
        assert members_seen == {f.as_tuple() for f in reduced_forms_of_disc(t * t - 4)}


def test_rho_returns_to_start():
    for t in (3, 4, 11, 17):
        for rep in classes_with_trace(t):
            cyc = reduction_cycle(rep.form)
            assert cyc[0] == rep.form


def test_class_rep_round_trip():
    for t in (3, -3, 4, -4, 11, -11, 20):
        for rep in classes_with_trace(t):
            assert rep.matrix.trace == t
            assert rep.form.discriminant == t * t - 4
            cyc = {f.as_tuple() for f in reduction_cycle(rep.form)}
            assert reduce_indefinite(matrix_to_bqf(rep.matrix)).as_tuple() in cyc
            assert rep.primitive_content == rep.form.content


def test_trace11_contains_imprimitive_class():
    reps = classes_with_trace(11)
    q = reduce_indefinite(matrix_to_bqf(Sl2Matrix(10, 3, 3, 1)))
    hits = [
        r
        for r in reps
        if q.as_tuple() in {f.as_tuple() for f in reduction_cycle(r.form)}
    ]
    assert len(hits) == 1
    assert hits[0].primitive_content == 3


def test_counts_symmetric_in_sign():
    for t in range(3, 30):
        assert len(classes_with_trace(t)) == len(classes_with_trace(-t))


def test_hyperbolic_classes_below():
    reps = list(hyperbolic_classes_below(5))
    assert len(reps) == 6  # one cycle at disc 5, two at disc 12, both signs
    assert [r.trace for r in reps] == [3, -3, 4, 4, -4, -4]
    small = list(hyperbolic_classes_below(4))
    assert len(small) == 2
    assert all(abs(r.trace) == 3 and r.matrix.a * r.matrix.d - r.matrix.b * r.matrix.c == 1 for r in small)
    with pytest.raises(ValueError):
        list(hyperbolic_classes_below(3))


def _all_sl2_with_trace(t, bound):
    out = []
    for a in range(-bound, bound + 1):
        d = t - a
        if abs(d) > bound:
            continue
        n = a * d - 1  # = b*c
        if n == 0:
            continue  # bc = 0 with ad = 1 forces trace +-2, excluded here
        for b in range(-bound, bound + 1):
            if b != 0 and n % b == 0 and abs(n // b) <= bound:
                out.append(Sl2Matrix(a, b, n // b, d))
    return out


def test_completeness_small_trace():
    for t in range(3, 21):
        cycles = [
            {f.as_tuple() for f in reduction_cycle(rep.form)}
            for rep in classes_with_trace(t)
        ]
        for m in _all_sl2_with_trace(t, 30):
            red = reduce_indefinite(matrix_to_bqf(m)).as_tuple()
            hits = sum(1 for c in cycles if red in c)
            assert hits == 1, f"{m} landed in {hits} cycles"


def _random_sl2(rng, length=6):
    m = Sl2Matrix(1, 0, 0, 1)
    for _ in range(rng.randint(1, length)):
        m = m * rng.choice([SL2_T, SL2_T.inverse(), SL2_S])
    return m


def test_equivariance_shared_cycle():
    rng = random.Random(2024)
    done = 0
    while done < 100:
        a = _random_sl2(rng)
        if abs(a.trace) <= 2:
            continue
        g = _random_sl2(rng)
        b = a.conjugate_by(g)
        ca = {f.as_tuple() for f in reduction_cycle(reduce_indefinite(matrix_to_bqf(a)))}
        cb = reduce_indefinite(matrix_to_bqf(b)).as_tuple()
        assert cb in ca
        done += 1


@st.composite
def indefinite_forms(draw):
    m = draw(st.integers(-40, 40))
    l = draw(st.integers(-40, 40))
    k = draw(st.integers(-40, 40))
    assume(m != 0 and k != 0)
    d = l * l - 4 * m * k
    assume(d > 0)
    r = isqrt(d)
    assume(r * r != d)
    return QuadForm(m, l, k)


@settings(max_examples=300, deadline=None)
@given(indefinite_forms())
def test_reduce_random_forms(f):
    red, g = reduce_with_transform(f)
    assert is_reduced(red)
    assert red.discriminant == f.discriminant
    assert apply_transform(f, g) == red
    assert g.a * g.d - g.b * g.c == 1
    # content is an equivalence invariant
    assert red.content == f.content


def test_content_constant_on_cycles():
    for t in (11, 18):
        for rep in classes_with_trace(t):
            contents = {f.content for f in reduction_cycle(rep.form)}
            assert contents == {rep.primitive_content}


def test_large_disc_cycles_close_and_stay_reduced():
    for t in (1499, 1500):
        reps = classes_with_trace(t)
        assert reps, t
        total = 0
        for rep in reps:
            cyc = reduction_cycle(rep.form)
            assert all(is_reduced(f) for f in cyc)
            total += len(cyc)
        assert total == len(reduced_forms_of_disc(t * t - 4))
