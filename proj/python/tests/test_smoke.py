import pytest

import designforge as df


def test_szekeres_q11_parameters():
    fam = df.construct("szekeres", q=11)
    assert fam["group"]["moduli"] == [5]
    report = df.verify(fam)
    assert report["ok"]
    assert report["mu"] == 1
    assert report["block_sizes"] == [2, 2]


def test_gr4_example_blocks_in_z7_z2_z2():
    fam = df.construct("gr4-ddf", n=3)
    d1 = {tuple(x) for x in fam["blocks"][0]}
    assert (1, 0, 1) in d1 and (6, 1, 1) in d1 and len(d1) == 12
    report = df.verify(fam)
    assert (report["lambda"], report["mu"]) == (8, 10)


def test_corrupted_family_fails_with_witness():
    fam = df.construct("szekeres", q=19)
    fam["blocks"][0][0] = [0] if fam["blocks"][0][0] != [0] else [3]
    report = df.verify(fam)
    assert not report["ok"]
    assert "witness" in report


def test_bad_prime_power_raises():
    with pytest.raises(df.DesignError, match="not a prime power"):
        df.construct("prop22", q=6, e=2)


def test_skew_and_symmetric_hadamard():
    skew = df.skew_hadamard(7)
    assert len(skew) == 8 and df.is_hadamard(skew) and df.is_skew(skew)
    fam = df.construct("gr4-ddf", n=3)
    m = df.symmetric_hadamard(fam, df.sylvester(3))
    assert len(m) == 64 and df.is_hadamard(m) and df.is_symmetric(m)
    assert all(c["ok"] for c in df.claim_tests(fam, df.sylvester(3)))


def test_fingerprint_of_sylvester():
    fp = df.fingerprint(df.sylvester(3))
    assert fp["order"] == 8
    assert sum(fp["four_profile"].values()) == 70


def test_search_z6_finds_four():
    spec = {"group": {"moduli": [6]}, "forbidden": [[0], [3]], "m": 4}
    out = df.search(spec)
    assert out["complete"]
    assert len(out["certificates"]) == 4
    for cert in out["certificates"]:
        assert df.verify(cert)["ok"]
        assert df.check_thm41_preconditions(cert, 4)["ok"]
