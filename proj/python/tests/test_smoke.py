import math
from fractions import Fraction

import pytest

import gvforge as gf

Q42 = 1 << 42


def entropy_q(q, d):
    return d * math.log(q - 1, q) - d * math.log(d, q) - (1 - d) * math.log(1 - d, q)


def test_gv_and_plotkin_match_closed_forms():
    for q in (2, 3, 16, 1024):
        for d in (Fraction(1, 10), Fraction(1, 4), Fraction(2, 5)):
            gv = gf.gv_bound(q, d)
            assert gv.lower <= gv.upper
            assert float(gv) == pytest.approx(1 - entropy_q(q, float(d)), rel=1e-12)
            assert float(gf.plotkin_bound(q, d)) == pytest.approx(1 - float(d) * q / (q - 1), rel=1e-12)
    assert float(gf.gv_bound(2, "0.5")) == 0.0
    assert float(gf.gv_bound(Q42, 0.5)) == pytest.approx(0.4761905, abs=1e-7)


def test_domain_errors_are_value_errors():
    with pytest.raises(ValueError):
        gf.gv_bound(1, "0.5")
    with pytest.raises(gf.DomainError):
        gf.gv_bound(16, "1.5")
    with pytest.raises(gf.ArgumentError):
        gf.make_field(-12)


def test_fields_and_symbols():
    f = gf.make_field(-19399380)
    assert f.imaginary
    assert f.prime_divisors == [2, 3, 5, 7, 11, 13, 17, 19]
    t = gf.tower(f)
    assert t["d2"] == 7 and t["status"] == "pass"
    assert float(t["threshold"]) == pytest.approx(2 + 2 * math.sqrt(2))
    assert gf.tower(gf.make_field(-4))["status"] == "fail"
    assert gf.splitting_type(gf.make_field(-4), 5) == "split"
    assert gf.splitting_type(gf.make_field(-4), 7) == "inert"
    assert gf.splitting_type(gf.make_field(-4), 2) == "ramified"
    assert gf.kronecker(-4, 7) == -1
    big = 10**40 + 1
    assert gf.kronecker(big, 3) == gf.kronecker(big % 3, 3)


def test_code_round_trip():
    code = gf.build_code(-4, 9, 13, 1, seed=3)
    assert code.n == 3
    assert len(code.codewords) >= code.M_bound == 5
    v = code.verify()
    assert v["ok"] and v["d"] >= v["d_bound"] == 3
    again = gf.read_code(code.to_text())
    assert again.codewords == code.codewords
    assert again.to_text() == code.to_text()
    with pytest.raises(gf.ParseError):
        gf.read_code("# lenstra q=13\n1 2\n")


def test_certificate_at_2_pow_42():
    cert = gf.certify(Q42)
    assert cert["overall"] == "pass"
    w = cert["witness"]
    assert (w["ell"], w["k"], w["p_ell"], w["Nq"]) == (128, 3841, 719, 23690)
    assert all(c["status"] == "pass" for c in cert["checks"])
    assert gf.certify(1_000_003)["overall"] == "fail"
    with pytest.raises(gf.CapacityError):
        gf.certify(Q42, sieve_limit=1000)


def test_schedule_search_and_scan():
    assert gf.theorem2_threshold() == math.ceil(math.exp(29))
    s = gf.theorem2_schedule(gf.theorem2_threshold())
    assert (s["ell"], s["k"]) == (125, 3657)
    res = gf.search(Q42, Fraction(1, 2))
    assert res["beats_gv"] and res["witness"]["certified"]
    assert gf.search(100, "0.5")["witness"] is None
    scan = gf.final_inequality_scan(125, 2000)
    assert scan["holds"] and scan["argmin"] == 125
    assert gf.final_inequality_margin(10).negative()
    csv = gf.bounds_csv(64, "0.1:0.9:0.1").splitlines()
    assert csv[0] == "q,delta,gv,plotkin,nfc,r,ell,k" and len(csv) == 10
    value, log_value = gf.primorial_D(3)
    assert value == 4 * 2 * 3 * 5 and float(log_value) == pytest.approx(math.log(120))
