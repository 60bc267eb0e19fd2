import pytest

from csf.coefficients import CaseTag, coefficient_c, pad3
from csf.injections import (
    FINGERPRINTS_CASE2,
    FINGERPRINTS_CASE3,
    BounceMismatch,
    CaseMismatch,
    PreconditionViolated,
    Tag,
    match_coefficient,
    phi_bounce2,
    phi_case1,
    phi_case2,
    phi_case3,
    phi_case4,
    sigma21_tilde,
    sigma32_tilde,
    tag_of_subcase,
    tilde_set,
)
from csf.order import enumerate_hessenberg, make_hessenberg
from csf.symfunc import partitions
from csf.tableaux import count_d, enumerate_tableaux, shape, sigma_move

from oracles import naive_is_tableau

EIGHT = make_hessenberg((2, 3, 5, 6, 7, 8, 8, 8))


# ---------------------------------------------------------------- tilde sets

def test_tilde_set_with_non_partition_source():
    f = make_hessenberg((2, 4, 5, 6, 6, 6))
    ts = tilde_set(f, (3, 3, 0), (2, 3, 1))
    assert ts.members == enumerate_tableaux(f, (3, 3, 0))


def test_tilde_set_subtracts_image():
    f = make_hessenberg((1, 3, 4, 4))
    (U,) = enumerate_tableaux(f, (2, 1, 1))
    ts = tilde_set(f, (3, 1, 0), (2, 1, 1))
    assert sigma_move(U, 3, 1) not in ts.members
    assert len(ts.members) == count_d(f, (3, 1)) - 1 == 4


def test_tilde_set_beyond_bounce_is_empty():
    f = make_hessenberg((2, 3, 4, 4))
    assert tilde_set(f, (2, 1, 1), (1, 1, 2)).members == ()


# ---------------------------------------------------------------- reduced maps

def test_sigma21_example():
    f = make_hessenberg((2, 4, 5, 6, 6, 6))
    res = sigma21_tilde(f, ((1, 2, 3), (4, 5, 6)))
    assert res.output == ((1, 2, 3, 6), (4, 5)) and res.subcase == "<1>"


def test_sigma21_rejects_removed_image():
    f = make_hessenberg((2, 4, 5, 6, 6, 6))
    with pytest.raises(PreconditionViolated):
        sigma21_tilde(f, ((1, 3, 2), (4, 5, 6)))  # not an f-tableau


def _reduced_domain(f, shp, removed_width=1):
    return [S for S in enumerate_tableaux(f, shp) if not _in_image(f, S, removed_width)]


def _in_image(f, S, width):
    from csf.tableaux import in_sigma_image

    return in_sigma_image(f, S, 3, 1, width)


def test_sigma21_sweep_on_eight():
    # reduced shapes (m+k, m) with m >= 3 on the labels of the example function
    for shp in [(5, 3), (4, 4)]:
        outs = []
        for S in _reduced_domain(EIGHT, shp):
            res = sigma21_tilde(EIGHT, S)
            assert shape(res.output) == (shp[0] + 1, shp[1] - 1)
            assert naive_is_tableau(EIGHT, res.output)
            outs.append(res.output)
        assert len(set(outs)) == len(outs)


def test_sigma32_sweep_on_eight():
    for shp in [(6, 1, 1), (5, 2, 1)]:
        outs = []
        for S in _reduced_domain(EIGHT, shp):
            res = sigma32_tilde(EIGHT, S)
            assert shape(res.output) == (shp[0], shp[1] + 1)
            assert naive_is_tableau(EIGHT, res.output)
            outs.append(res.output)
            if res.subcase == "(1)":
                assert res.output == (S[0], S[1] + S[2])
        assert len(set(outs)) == len(outs)


def test_case2_example():
    f = make_hessenberg((2, 3, 4, 5, 5))
    res = phi_case2(f, ((1, 2, 4), (3,), (5,)))
    assert res.output == ((1, 2, 4), (3, 5)) and res.subcase == "(1-1)"


def test_case3_example():
    f = make_hessenberg((1, 3, 4, 4))
    res = phi_case3(f, ((1, 2), (3, 4)))
    assert res.output == ((1, 2, 4), (3,)) and res.subcase == "<1-1>"
    assert not naive_is_tableau(f, ((1, 2), (3,), (4,)))


def test_case4_example():
    f = make_hessenberg((1, 2, 3))
    first, second = phi_case4(f, ((1,), (2,), (3,)))
    assert first == ((1, 2), (3,)) and second == ((1, 3), (2,))
    assert set(enumerate_tableaux(f, (2, 1))) == {first, second}
    with pytest.raises(CaseMismatch):
        phi_case4(f, ((1, 2), (3,)))


def test_bounce2_example():
    f = make_hessenberg((2, 3, 4, 4))
    assert phi_bounce2(f, ((1, 2), (3, 4))) == ((1, 2, 4), (3,))
    with pytest.raises(BounceMismatch):
        phi_bounce2(make_hessenberg((1, 2, 3)), ((1, 2), (3,)))


def test_tags():
    assert tag_of_subcase("<1>") == Tag(1)
    assert tag_of_subcase("<2-3>") == Tag(2, 3)
    assert str(tag_of_subcase("<2-inf>")) == "+2(inf)"


def test_phi_case1_rejects_other_cases():
    with pytest.raises(CaseMismatch):
        phi_case1(make_hessenberg((1, 3, 4, 4)), (3, 1))


# ---------------------------------------------------------------- worked traces

def test_case3_trace():
    rec = match_coefficient(make_hessenberg((1, 3, 4, 4)), (3, 1))
    assert rec.case == CaseTag.III and rec.residual_count == 3
    pairs = {(tr.input, tr.output) for tr in rec.traces()}
    assert (((1, 2), (3, 4)), ((1, 2, 4), (3,))) in pairs


def test_case4_trace_is_perfect():
    rec = match_coefficient(make_hessenberg((1, 2, 3)), (2, 1))
    assert rec.case == CaseTag.IV and rec.residual_count == 0 and rec.ok


def test_case1_trace_contains_first_map_example():
    rec = match_coefficient(make_hessenberg((2, 4, 5, 6, 6, 6)), (4, 2))
    assert rec.case == CaseTag.I and rec.ok
    phi1 = {(tr.input, tr.output) for tr in rec.traces() if tr.map == "phi1"}
    assert (((1, 2, 3), (4, 5, 6)), ((1, 2, 3, 6), (4, 5))) in phi1


def test_equal_first_parts_leave_first_map_empty():
    for f in enumerate_hessenberg(6, 3):
        rec = match_coefficient(f, (3, 3))
        assert not [tr for tr in rec.traces() if tr.map == "phi1"]


def test_bounce2_trace():
    rec = match_coefficient(make_hessenberg((2, 3, 4, 4)), (2, 2))
    assert rec.scope == "bounce 2" and rec.ok and rec.residual_count == 2


# ---------------------------------------------------------------- independent audit

def audit(f, mu):
    """Re-derive the cancellation from the raw pairings, trusting none of the record's checks."""
    rec = match_coefficient(f, mu)
    used = set()
    for tr, src, tgt, _ in rec.pairings:
        assert rec.signs[src] == -rec.signs[tgt], (tr, src, tgt)
        assert tr.input in rec.sets[src]
        assert tr.output is not None and naive_is_tableau(f, tr.output)
        assert tuple(len(r) for r in tr.output) == tuple(p for p in tgt[1] if p)
        assert tr.output in rec.sets[tgt]
        for end in ((src, tr.input), (tgt, tr.output)):
            assert end not in used, f"{end} used twice"
            used.add(end)
    negatives = {(key, T) for key, ts in rec.sets.items() if rec.signs[key] < 0 for T in ts}
    assert negatives <= used
    positives_left = sum(
        1 for key, ts in rec.sets.items() if rec.signs[key] > 0 for T in ts if (key, T) not in used
    )
    c = coefficient_c(f, mu)
    assert positives_left == c == rec.residual_count >= 0
    return rec


@pytest.mark.parametrize("n", range(3, 8))
def test_every_pairing_is_a_valid_cancellation(n):
    for f in enumerate_hessenberg(n):
        if f.bounce not in (2, 3):
            continue
        for mu in partitions(n, max_len=3):
            rec = audit(f, mu)
            assert rec.ok, [c.to_json() for c in rec.counterexamples]


@pytest.mark.parametrize("n", range(4, 8))
def test_fingerprints_separate_subcases(n):
    from csf.injections import _fp_case2, _fp_case3

    for f in enumerate_hessenberg(n, 3):
        for mu in partitions(n, max_len=3):
            rec = match_coefficient(f, mu)
            if rec.case not in (CaseTag.II, CaseTag.III):
                continue
            probe, table = (_fp_case2, FINGERPRINTS_CASE2) if rec.case == CaseTag.II else (_fp_case3, FINGERPRINTS_CASE3)
            width = pad3(mu)[2]
            for tr in rec.traces():
                if tr.map != "phi":
                    continue
                U = tuple(r[width:] for r in tr.output)
                values = probe(f, U)
                for other, expected in table.items():
                    matches = all(values[k] == v for k, v in expected.items())
                    assert matches == (other == tr.subcase), (f, mu, tr, other)


def test_case4_inequality():
    for n in range(3, 8):
        for f in enumerate_hessenberg(n, 3):
            for mu in partitions(n, max_len=3):
                m1, m2, m3 = pad3(mu)
                if m1 == m2 + 1 == m3 + 2:
                    assert 2 * count_d(f, (m1 - 1, m2, m3 + 1)) <= count_d(f, mu)


def test_bounce2_closed_form():
    for n in range(2, 8):
        for f in enumerate_hessenberg(n, 2):
            for mu in partitions(n, max_len=2):
                m1, m2 = pad3(mu)[:2]
                expected = count_d(f, (m1, m2)) - count_d(f, (m1 - 1, m2 + 1))
                assert coefficient_c(f, mu) == expected >= 0


def test_trace_json_shape():
    data = match_coefficient(make_hessenberg((1, 3, 4, 4)), (3, 1)).to_json()
    assert set(data) >= {"f", "mu", "case", "pairings", "residual_positive", "checks"}
    assert {"map", "subcase", "input", "output"} <= set(data["pairings"][0])
