import pytest
import sympy

import primorials as pm


def test_sieve_and_words():
    assert pm.sieve(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert pm.first_n_primes(5) == [2, 3, 5, 7, 11]
    assert pm.is_prime_word(2**61 - 1)
    assert not pm.is_prime_word(2047)
    with pytest.raises(ValueError):
        pm.sieve(1)


def test_primorials():
    assert pm.primorial(4) == 210
    assert pm.candidates(6) == (30029, 30031)
    assert pm.primorial(30) == sympy.primorial(30)
    with pytest.raises(ValueError):
        pm.candidates(0)


@pytest.mark.parametrize("n", [3, 5, 7, 29, 31, 211, 2311, 30029])
def test_classify_primes(n):
    r = pm.classify(n)
    assert r["verdict"] == "certified-prime"
    ok, reason = pm.verify_certificate(r["certificate"])
    assert ok and reason == "none"


def test_classify_composites():
    assert pm.classify(30031)["evidence"] == "factor=59"
    assert pm.classify(209)["evidence"] == "factor=11"
    assert pm.classify(1)["verdict"] == "not-prime-trivial"
    assert pm.classify(2**127 - 1, proof_bit_cap=0)["verdict"] == "probable-prime"


def test_certificate_tamper():
    text = pm.classify(211)["certificate"]
    bad = text.replace("2:2", "2:4")
    ok, reason = pm.verify_certificate(bad)
    assert not ok and reason != "none"
    assert pm.verify_certificate("nonsense")[0] is False


def test_next_prime():
    assert pm.next_prime_above(31) == (37, "certified-prime")
    assert pm.next_prime_above(2311)[0] == 2333
    big = 2**100
    value, verdict = pm.next_prime_above(big)
    assert value == sympy.nextprime(big) and verdict == "probable-prime"
    assert issubclass(pm.SearchCapExceeded, pm.ResourceError)
    with pytest.raises(pm.SearchCapExceeded):
        pm.next_prime_above(1327, search_cap=16)


def test_scan_matches_sympy():
    rows = pm.scan(20, threads=1)
    for row in rows:
        minus, plus = pm.candidates(row["n"])
        prime = ("certified-prime", "probable-prime")
        assert (row["plus"]["verdict"] in prime) == sympy.isprime(plus)
        assert (row["minus"]["verdict"] in prime) == (minus > 1 and sympy.isprime(minus))


def test_disjointness():
    r = pm.check_disjointness(100)
    assert r["outcome"] == "pass" and r["shared_values"] == 0
