import random
from fractions import Fraction

import pytest

from partabel.freeproduct import P, Q, Signature, commutator, idempotent
from partabel.quotient import (
    ClosureFailure, IdealSpan, chart_in_field, closure_certificate,
    make_relation, reduction_coefficients, sigma_check,
    spanning_monomials_rank, stabilization_scan, standard_generator_rank,
    verify_reduction_identity,
)
from partabel.scalars import FunctionField, PrimeField, QQ, random_prime

SIG = Signature(3, 3)
GENERIC_CHART = (Fraction(2), Fraction(3), Fraction(7))


def primes_pair(seed=1):
    rng = random.Random(seed)
    p1 = random_prime(rng)
    while True:
        p2 = random_prime(rng)
        if p2 != p1:
            return p1, p2


def test_make_relation_examples():
    rel = make_relation(QQ, point=(Fraction(1), Fraction(0), Fraction(0), Fraction(0)))
    p1 = idempotent(SIG, QQ, P, 1)
    q1 = idempotent(SIG, QQ, Q, 1)
    assert rel.element == commutator(p1, q1)
    assert rel.element.degree() == 2

    rel2 = make_relation(QQ, point=(Fraction(1), Fraction(0), Fraction(0), Fraction(-1)))
    p2 = idempotent(SIG, QQ, P, 2)
    q2 = idempotent(SIG, QQ, Q, 2)
    assert rel2.element == commutator(p1, q1) - commutator(p2, q2)

    F = FunctionField(("y1", "y2", "y3"))
    y1, y2, y3 = F.gens()
    relx = make_relation(F, chart=(y1, y2, y3))
    pf = {i: idempotent(SIG, F, P, i) for i in (1, 2)}
    qf = {j: idempotent(SIG, F, Q, j) for j in (1, 2)}
    expected = (commutator(pf[1], qf[1]) + commutator(pf[1], qf[2]).scale(y1)
                + commutator(pf[2], qf[1]).scale(y2) + commutator(pf[2], qf[2]).scale(y3))
    assert relx.element == expected

    with pytest.raises(ValueError):
        make_relation(QQ, point=(Fraction(0),) * 4)


def test_point_canonicalization_scale_invariance():
    rel1 = make_relation(QQ, point=tuple(Fraction(c) for c in (2, 4, 6, 14)))
    rel2 = make_relation(QQ, point=tuple(Fraction(c) for c in (1, 2, 3, 7)))
    assert rel1.point == rel2.point


def test_standard_generator_rank_42_over_rationals_and_primes():
    rel = make_relation(QQ, chart=GENERIC_CHART)
    r = standard_generator_rank(rel, include_diagonal_conjugates=True)
    assert r["length_le_3"] == 13
    assert r["length_4"] == 40
    assert r["rank"] == 42
    assert r["rank_with_diagonal_conjugates"] == 42
    assert r["degree4_bound"] == 19
    for p in primes_pair():
        gf = PrimeField(p)
        relp = make_relation(gf, chart=chart_in_field(gf, GENERIC_CHART))
        rp = standard_generator_rank(relp)
        assert rp["rank"] == 42 and rp["degree4_bound"] == 19


def test_ideal_span_single_commutator_point():
    rel = make_relation(QQ, point=(Fraction(1), Fraction(0), Fraction(0), Fraction(0)))
    span = IdealSpan(rel)
    span.extend_to_window(2)
    assert span.counted_rank(2) == 1


def test_ideal_span_generic_window4_slack0():
    rel = make_relation(QQ, chart=GENERIC_CHART)
    span = IdealSpan(rel)
    span.extend_to_window(4)  # degree 4 target at slack 0
    assert span.counted_rank(4) >= 42
    assert span.bound(4) <= 19


def test_bound_monotone_in_slack():
    gf = PrimeField(primes_pair(7)[0])
    rel = make_relation(gf, chart=chart_in_field(gf, GENERIC_CHART))
    bounds = []
    span = IdealSpan(rel)
    for window in (4, 5, 6, 7):
        span.extend_to_window(window)
        bounds.append(span.bound(4))
    assert all(b1 >= b2 for b1, b2 in zip(bounds, bounds[1:]))


def test_provenance_rows_reexpand_exactly():
    rel = make_relation(QQ, chart=GENERIC_CHART)
    span = IdealSpan(rel, track_provenance=True)
    span.extend_to_window(4)
    assert span.verify_provenance()


def test_closure_certificate_generic():
    rel = make_relation(QQ, chart=GENERIC_CHART)
    cert, span = closure_certificate(rel)
    assert cert.dimension_bound == 18
    assert not cert.is_commutative()
    assert cert.associativity_spot_check(100)
    assert cert.idempotent_split_dims() == (6, 6, 6)
    listed = spanning_monomials_rank(cert, span)
    assert listed == {"listed": 19, "rank": 18, "dependencies": 1}


def test_closure_certificate_quadric_point():
    x = tuple(Fraction(c) for c in (1, 2, 2, 4))
    rel = make_relation(QQ, point=x)
    assert rel.on_quadric()
    cert, _ = closure_certificate(rel)
    assert cert.dimension_bound == 9
    assert cert.is_commutative()
    assert cert.associativity_spot_check(50)


def test_scan_generic_reaches_18():
    for p in primes_pair(3):
        gf = PrimeField(p)
        rel = make_relation(gf, chart=chart_in_field(gf, GENERIC_CHART))
        rep = stabilization_scan(rel, 2, 8)
        assert rep.stabilized_at == 4
        assert rep.certificate.dimension_bound == 18
        assert all(rep.per_degree[n]["certified_bound"] == 18 for n in range(4, 9))


def test_scan_quadric_reaches_9():
    gf = PrimeField(primes_pair(5)[0])
    rel = make_relation(gf, point=tuple(gf.from_int(c) for c in (1, 2, 2, 4)))
    rep = stabilization_scan(rel, 2, 8)
    assert rep.certificate is not None
    assert rep.certificate.dimension_bound == 9


def test_scan_known_infinite_point_grows():
    gf = PrimeField(primes_pair(11)[0])
    rel = make_relation(gf, point=(gf.one, gf.zero, gf.zero, gf.neg(gf.one)))
    rep = stabilization_scan(rel, 2, 8, slack=2, window_cap=9)
    assert rep.stabilized_at is None
    bounds = [rep.per_degree[n]["quotient_bound"] for n in range(4, 9)]
    assert all(b2 > b1 for b1, b2 in zip(bounds, bounds[1:]))
    assert "evidence" in rep.note


def test_reduction_coefficients_examples():
    rel = make_relation(QQ, chart=GENERIC_CHART)
    table = reduction_coefficients(rel)
    assert table.alpha[(2, 1, 1, 1)] == 1
    assert table.tails_pq[(2, 1, 1, 1)] == {}
    assert table.beta[(2, 1, 1, 1)] == 1
    assert table.tails_qp[(2, 1, 1, 1)] == {}
    assert table.alpha_beta_product() == Fraction(17, 20)
    assert table.alpha_beta_product() != 1


def test_reduction_identities_reduce_to_zero_in_span():
    rel = make_relation(QQ, chart=GENERIC_CHART)
    table = reduction_coefficients(rel)
    span = IdealSpan(rel)
    span.extend_to_window(6)
    for i in (1, 2):
        for j in (1, 2):
            for k in (1, 2):
                for l in (1, 2):
                    assert verify_reduction_identity(rel, span, table, i, j, k, l, "pq")
                    assert verify_reduction_identity(rel, span, table, i, j, k, l, "qp")


def test_alpha_beta_product_not_one_across_specializations():
    rng = random.Random(19)
    from partabel.pipeline import sample_generic_points
    pts = sample_generic_points(77, 5)
    for x in pts:
        rel = make_relation(QQ, point=x)
        table = reduction_coefficients(rel)
        assert table.alpha_beta_product() != 1


def test_sigma_identities_exact():
    rep = sigma_check()
    assert rep["all"]
    assert rep["sigma1_of_y2"] == "(1)/(y2)"
    assert rep["sigma2_of_y3"] == "y1 - y3"


def test_certificate_digest_deterministic():
    rel = make_relation(QQ, chart=GENERIC_CHART)
    c1, _ = closure_certificate(rel)
    c2, _ = closure_certificate(make_relation(QQ, chart=GENERIC_CHART))
    assert c1.structure_digest() == c2.structure_digest()
    assert [w for w in c1.basis] == [w for w in c2.basis]


def test_closure_failure_signals_instead_of_crashing():
    gf = PrimeField(primes_pair(13)[0])
    rel = make_relation(gf, point=(gf.one, gf.zero, gf.zero, gf.neg(gf.one)))
    with pytest.raises(ClosureFailure) as err:
        closure_certificate(rel, n_max=5, slack=1)
    assert "increase" in str(err.value)
