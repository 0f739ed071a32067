"""Periodicity detection, windows, and the window-level consistency checkers.

Numeric oracles are frozen from hand calculations on truncated polynomial
rings and their connected sums.
"""

import numpy as np
import pytest

from periodica import corpus, fplin
from periodica import periodicity as P
from periodica.algebra import Element
from periodica.periodicity import (ClosureViolation, DegreeBoundViolated,
                                   PeriodicityCertificate, SearchCapExceeded,
                                   WellDefinednessFailure, WindowRefusal)


def build(text):
    return corpus.build(corpus.parse_spec(text))


def window_of(fx):
    rep = P.minimum_period(fx.algebra)
    return P.subquotient(fx.algebra, rep.certificate, action=fx.action)


def test_direct_certificate_on_complex_projective():
    alg = build("ComplexProj(4)@2").algebra
    out = P.induces_periodicity(alg, Element(2, (1,)))
    assert isinstance(out, PeriodicityCertificate)
    assert out.mode == "direct" and out.k == 2
    assert P.verify_certificate(alg, out)


def test_refusal_names_first_failure():
    alg = build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2").algebra
    out = P.induces_periodicity(alg, Element(2, (1, 0)))
    assert isinstance(out, WindowRefusal)
    assert out.failed_degree == 2 and out.failed_condition == "surjectivity"


def test_degree_bound_guard():
    alg = build("QuatProj(3)@2").algebra
    with pytest.raises(DegreeBoundViolated):
        P.induces_periodicity(alg, Element(4, (1,)))


def test_minimum_period_oracles():
    cases = {
        "ComplexProj(4)@2": (2, (2, 4, 6), True),
        "ConnectedSum(ComplexProj(4),ComplexProj(4))@2": (2, (2, 4, 6), True),
        "QuatProj(3)@2": (4, (4,), False),
        "Sphere(8)@2": (1, (1, 2, 3, 4, 5, 6, 7), True),
        "ComplexProj(4)@3": (2, (2, 4, 6), True),
        "QuatProj(3)@3": (4, (4,), False),
    }
    for text, (period, all_periods, checked) in cases.items():
        rep = P.minimum_period(build(text).algebra)
        assert rep.period == period, text
        assert rep.all_periods == all_periods, text
        assert rep.divisibility_checked == checked, text
        assert rep.inconclusive == ()


def test_no_period_on_sphere_product():
    rep = P.minimum_period(build("Product(Sphere(3),Sphere(3))@2").algebra)
    assert rep.period is None and rep.all_periods == ()
    assert rep.inconclusive == ()


def test_window_mode_certificate():
    alg = build("QuatProj(3)@2").algebra
    cert = P.minimum_period(alg).certificate
    assert cert.mode == "window" and cert.k == 4
    assert P.verify_certificate(alg, cert)
    assert P.window_gap(alg, 4) == ()
    assert P.window_gap(alg, 8) != ()
    assert P.window_gap(alg, 9) != ()


def test_truncation_degree_two_never_periodic():
    for text in ("TruncatedPoly(2,2)@2", "TruncatedPoly(4,2)@3"):
        rep = P.minimum_period(build(text).algebra)
        assert rep.period is None, text


def test_subquotient_window_dims():
    w = window_of(build("ComplexProj(4)@2"))
    assert w.window_dims() == (0, 1, 0, 1, 0, 1, 0)
    assert w.total_dim == 3
    w = window_of(build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2"))
    assert w.window_dims() == (0, 2, 0, 2, 0, 2, 0)
    assert w.total_dim == 6
    w = window_of(build("QuatProj(3)@2"))
    assert w.window_dims() == (0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0)
    assert w.certificate.mode == "window"


def test_subquotient_shifts_are_bijections():
    for text in ("ComplexProj(4)@2", "ConnectedSum(ComplexProj(4),ComplexProj(4))@2",
                 "QuatProj(4)@2", "ComplexProj(4)@3"):
        w = window_of(build(text))
        for i, m in w.shifts.items():
            assert m.shape[0] == m.shape[1] == w.dim(i)
            if w.dim(i):
                assert fplin.rank(m, w.p) == w.dim(i), (text, i)


def test_subquotient_round_trips():
    rng = np.random.default_rng(3)
    w = window_of(build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2"))
    for i in range(1, w.n - w.k):
        d = w.dim(i)
        if d == 0:
            continue
        for _ in range(4):
            v = rng.integers(0, w.p, size=d)
            assert np.array_equal(w.to_window(i, w.embed(i, v)), v % w.p)
            assert np.array_equal(w.unshift(i, w.shift(i, v)), v % w.p)


def test_forged_certificate_rejected():
    alg = build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2").algebra
    forged = PeriodicityCertificate(2, Element(2, (1, 0)), "direct")
    assert not P.verify_certificate(alg, forged)
    with pytest.raises(WellDefinednessFailure):
        P.subquotient(alg, forged)


def test_element_induces_uses_products_above_the_bound():
    alg = build("ComplexProj(4)@2").algebra
    # k = 4: beyond the direct bound, y^2 is a product of direct inducers
    assert P.element_induces(alg, 4, np.array([1], dtype=np.int64))
    cs = build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2").algebra
    assert P.element_induces(cs, 2, np.array([1, 1], dtype=np.int64))
    assert not P.element_induces(cs, 2, np.array([1, 0], dtype=np.int64))


def test_irreducibility_reports():
    w = window_of(build("ComplexProj(4)@2"))
    rep = P.is_irreducible(w, Element(2, (1,)))
    assert rep.irreducible and rep.witness is None

    w = window_of(build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2"))
    rep = P.is_irreducible(w, Element(2, (1, 1)))
    assert not rep.irreducible
    assert rep.witness == (Element(2, (0, 1)), Element(2, (1, 0)))

    w = window_of(build("QuatProj(3)@2"))
    rep = P.is_irreducible(w, Element(4, (1,)))
    assert not rep.irreducible
    assert rep.witness == (Element(4, (0,)), Element(4, (1,)))


def test_irreducibility_cap():
    w = window_of(build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2"))
    with pytest.raises(SearchCapExceeded):
        P.is_irreducible(w, Element(2, (1, 1)), cap=1)


def test_nonperiodic_subspace():
    w = window_of(build("ComplexProj(4)@2"))
    out = P.nonperiodic_subspace(w, 2)
    assert isinstance(out, fplin.Subspace) and out.dim == 0

    w = window_of(build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2"))
    out = P.nonperiodic_subspace(w, 2)
    assert isinstance(out, ClosureViolation)
    assert out.left == Element(2, (0, 1))
    assert out.right == Element(2, (1, 0))
    assert out.total == Element(2, (1, 1))


def test_inducing_power_index():
    w = window_of(build("ComplexProj(4)@2"))
    assert P.inducing_power_index(w, Element(2, (1,))).value == 0
    assert P.inducing_power_index(w, Element(2, (0,))).value is None
    w = window_of(build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2"))
    assert not P.inducing_power_index(w, Element(2, (1, 0))).defined


def test_power_index_additivity():
    w = window_of(build("ComplexProj(4)@2"))
    rep = P.check_power_index_additivity(w, Element(2, (1,)), Element(2, (1,)))
    assert rep.consistent
    assert rep.product_value == 0 and rep.left_value == 0 and rep.right_value == 0


def test_products_factors_biconditional():
    w = window_of(build("ComplexProj(4)@2"))
    rep = P.check_products_factors(w, Element(2, (1,)), Element(2, (1,)))
    assert rep.consistent and rep.product_induces


def test_steenrod_preimage():
    w = window_of(build("ComplexProj(4)@2"))
    rep = P.check_steenrod_preimage(w, Element(2, (1,)), 2)
    assert rep.consistent


def test_minimum_period_form_oracles():
    assert P.check_minimum_period_form(2, 2, 8).description == "2 = 2^1"
    assert P.check_minimum_period_form(2, 4, 16).conformant
    assert not P.check_minimum_period_form(2, 6, 20).conformant
    assert P.check_minimum_period_form(3, 2, 12).lam == 1
    assert P.check_minimum_period_form(3, 4, 20).lam == 2
    v = P.check_minimum_period_form(3, 12, 40)
    assert v.conformant and v.lam == 2 and v.alpha == 1
    assert not P.check_minimum_period_form(3, 10, 40).conformant
    # lam must divide p - 1 only when the degree bound holds
    assert P.check_minimum_period_form(5, 6, 20).conformant
    assert not P.check_minimum_period_form(5, 6, 50).conformant
    assert not P.check_minimum_period_form(5, 3, 20).conformant
    v = P.check_minimum_period_form(5, 6, 20, irreducible=True, window_dim=1)
    assert not v.conformant  # the one-dimensional window also forces lam | p-1


def test_combine_periods():
    import math
    for k in range(1, 17):
        v = P.combine_periods(k, True, True)
        assert v.hypothesis_met and v.period == math.gcd(4, k)
    for flags in ((False, True), (True, False), (False, False)):
        v = P.combine_periods(8, *flags)
        assert not v.hypothesis_met and v.period is None and v.missing


def test_found_certificates_verify():
    rng = np.random.default_rng(17)
    texts = ["ComplexProj(4)@2", "ComplexProj(5)@2", "QuatProj(4)@2",
             "ConnectedSum(ComplexProj(5),ComplexProj(5))@2", "ComplexProj(4)@3"]
    for text in texts:
        alg = build(text).algebra
        rep = P.minimum_period(alg)
        for k in rep.all_periods:
            out = P.find_inducing_element(alg, k)
            assert isinstance(out, PeriodicityCertificate)
            assert P.verify_certificate(alg, out), (text, k)
        # sharded search agrees with the plain one on the minimum degree
        k = rep.period
        parts = [P.find_inducing_element(alg, k, shard_index=i, shard_count=3)
                 for i in range(3)]
        hits = [c for c in parts if isinstance(c, PeriodicityCertificate)]
        assert min(c.element.coeffs for c in hits) == rep.certificate.element.coeffs


def test_search_verdicts():
    alg = build("Product(Sphere(3),Sphere(3))@2").algebra
    out = P.find_inducing_element(alg, 3)
    assert out.status == "exhausted"
    # a tiny cap forces sampling, which cannot prove absence
    cs = build("ConnectedSum(ComplexProj(4),ComplexProj(4))@2").algebra
    out = P.find_inducing_element(cs, 2, cap=1, samples=0)
    assert out.status == "inconclusive"
