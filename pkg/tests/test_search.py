"""Bitset survivor engine, configuration search, bad-set audits, APs, thresholds."""

import math
import random
from itertools import combinations

import mpmath
import numpy as np
import pytest

from sumset_ramsey import (
    Configuration,
    DomainError,
    NoConfiguration,
    bad_set,
    bad_set_growth,
    custom_coloring,
    exhaustive_search,
    gowers_threshold,
    greedy_search,
    longest_ap,
    parse_poly,
    power_2coloring,
    survivor_set,
    triple_2coloring,
    verify_config,
    window,
)
from sumset_ramsey.errors import EmptySet

LIN = (parse_poly("n"), parse_poly("2 n"))
PAR = (parse_poly("n"), parse_poly("3 n"))


def _parity_coloring():
    # even -> 1, odd -> 2
    return custom_coloring("periodic", pattern="21")


def _mask_to_set(mask):
    out = set()
    z = 0
    while mask:
        if mask & 1:
            out.add(z)
        mask >>= 1
        z += 1
    return out


def test_verify_config_fixed():
    const = custom_coloring("periodic", pattern="1")
    cfg = Configuration(B=(1, 2), C=(1, 3), polys=LIN, color=1)
    assert verify_config(const, cfg) == 1

    parity = _parity_coloring()
    cfg = Configuration(B=(2, 4), C=(2, 4, 6), polys=PAR, color=1)
    assert verify_config(parity, cfg) == 1

    cfg = Configuration(B=(5,), C=(1,), polys=LIN, color=1)
    assert verify_config(power_2coloring(1, 2), cfg) == 1


def test_verify_config_rejects_mixed():
    parity = _parity_coloring()
    cfg = Configuration(B=(2, 3), C=(2,), polys=PAR, color=1)
    assert verify_config(parity, cfg) is None


def test_survivor_set_fixed():
    evens = custom_coloring("periodic", pattern="21")
    w = window(evens, 20)
    got = _mask_to_set(survivor_set(w, LIN, (2,), 1))
    assert got == set(range(2, 17, 2))

    anyw = window(power_2coloring(1, 2), 30)
    assert _mask_to_set(survivor_set(anyw, LIN, (), 1)) == set(range(1, 31))

    single = custom_coloring("explicit", values=tuple(2 if z == 10 else 1 for z in range(1, 21)), palette=2)
    w = window(single, 20)
    got = _mask_to_set(survivor_set(w, (parse_poly("n"),), (3,), 2))
    assert got == {7}


def test_survivor_set_against_nested_loop():
    rng = random.Random(12001)
    for _ in range(50):
        n = rng.randint(30, 200)
        k = rng.randint(2, 3)
        c = custom_coloring("random", seed=rng.randint(0, 10**6), k=k)
        w = window(c, n)
        polys = tuple(
            parse_poly(t)
            for t in rng.sample(["n", "2 n", "3 n", "n^2", "n^2 + n"], rng.randint(2, 3))
        )
        cmax = rng.randint(1, 4)
        C = sorted(rng.sample(range(1, 13), cmax))
        color = rng.randint(1, k)
        got = _mask_to_set(survivor_set(w, polys, C, color))
        want = set()
        for b in range(1, n + 1):
            ok = True
            for cc in C:
                for P in polys:
                    z = b + P(cc)
                    if z > n or c.color(z) != color:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                want.add(b)
        assert got == want


def test_greedy_search_fixed():
    parity = _parity_coloring()
    cfg = greedy_search(window(parity, 50), PAR, r=2, maxC=10)
    assert len(cfg.C) >= 5
    assert verify_config(parity, cfg) == cfg.color
    assert len(cfg.B) == 2

    const = custom_coloring("periodic", pattern="1")
    cfg = greedy_search(window(const, 20), LIN, r=2, maxC=3)
    assert len(cfg.C) == 3
    assert verify_config(const, cfg) == 1

    alt = custom_coloring("periodic", pattern="12")
    cfg = greedy_search(window(alt, 60), LIN, r=1, maxC=2)
    assert len(cfg.C) == 2
    assert verify_config(alt, cfg) == cfg.color


def test_greedy_search_no_configuration():
    # colors 1 and 2 alternate; n and n+1 can never both be color 1 with C={1}
    alt = custom_coloring("periodic", pattern="12")
    with pytest.raises(NoConfiguration):
        greedy_search(window(alt, 6), (parse_poly("n"), parse_poly("2 n")), r=7, maxC=2)


def test_greedy_results_verify():
    rng = random.Random(318)
    for _ in range(30):
        n = rng.randint(40, 150)
        k = rng.randint(2, 3)
        c = custom_coloring("random", seed=rng.randint(0, 10**6), k=k)
        w = window(c, n)
        polys = tuple(parse_poly(t) for t in rng.sample(["n", "2 n", "3 n"], 2))
        try:
            cfg = greedy_search(w, polys, r=rng.randint(1, 3), maxC=4)
        except NoConfiguration:
            continue
        assert verify_config(c, cfg) == cfg.color
        assert list(cfg.B) == sorted(set(cfg.B))
        assert list(cfg.C) == sorted(set(cfg.C))


def test_exhaustive_search_fixed():
    const = custom_coloring("periodic", pattern="1")
    cfg = exhaustive_search(window(const, 10), LIN, r=2, sizeC=2)
    assert cfg is not None
    assert verify_config(const, cfg) == 1

    alt = custom_coloring("periodic", pattern="12")
    got = exhaustive_search(window(alt, 30), LIN, r=2, sizeC=2)
    if got is not None:
        assert verify_config(alt, got) == got.color


def _oracle_best(c, n, polys, r, sizeC):
    # nested-loop enumeration over all C of the given size; best survivor count
    best = None
    cand = [cc for cc in range(1, n + 1) if max(P(cc) for P in polys) < n]
    for C in combinations(cand, sizeC):
        for color in range(1, c.palette + 1):
            surv = []
            for b in range(1, n + 1):
                if all(b + P(cc) <= n and c.color(b + P(cc)) == color for cc in C for P in polys):
                    surv.append(b)
            if len(surv) >= r:
                key = (len(surv), -color)
                if best is None or key > best[0]:
                    best = (key, C, color, len(surv))
    return best


def test_exhaustive_matches_oracle():
    rng = random.Random(7007)
    for _ in range(50):
        n = rng.randint(15, 40)
        c = custom_coloring("random", seed=rng.randint(0, 10**6), k=2)
        polys = tuple(parse_poly(t) for t in rng.sample(["n", "2 n", "n^2"], 2))
        r = rng.randint(1, 2)
        sizeC = rng.randint(1, 2)
        want = _oracle_best(c, n, polys, r, sizeC)
        got = exhaustive_search(window(c, n), polys, r=r, sizeC=sizeC)
        if want is None:
            assert got is None
        else:
            assert got is not None
            assert verify_config(c, got) == got.color
            assert got.survivors == want[3]


def test_greedy_never_beats_exhaustive():
    rng = random.Random(888)
    for _ in range(20):
        n = rng.randint(15, 40)
        c = custom_coloring("random", seed=rng.randint(0, 10**6), k=2)
        w = window(c, n)
        polys = LIN
        r = rng.randint(1, 2)
        try:
            g = greedy_search(w, polys, r=r, maxC=2)
        except NoConfiguration:
            continue
        if len(g.C) >= 2:
            assert exhaustive_search(w, polys, r=r, sizeC=2) is not None
        else:
            # greedy stopped at |C|=1: exhaustive may still find a pair, but
            # greedy at sizeC=1 must be realizable too
            assert exhaustive_search(w, polys, r=r, sizeC=1) is not None


def test_bad_set_fixed():
    const = custom_coloring("periodic", pattern="1")
    S, rep = bad_set(const, 3, LIN, 1, 100)
    assert list(S) == list(range(1, 101))
    assert rep.count == 100
    assert rep.max_element == 100
    assert not rep.stabilized

    S, rep = bad_set(const, 3, LIN, 2, 100)
    assert len(S) == 0
    assert rep.count == 0
    assert rep.max_element is None
    assert rep.stabilized


def test_bad_set_triple_stabilizes():
    c = triple_2coloring(1, 2, 3)
    polys = (parse_poly("n"), parse_poly("2 n"), parse_poly("3 n"))
    S, rep = bad_set(c, 1, polys, 1, 10**4)
    assert rep.stabilized
    assert rep.count == len(S)
    # frozen from a direct enumeration of m with all of 1+m, 1+2m, 1+3m color 1
    want = [m for m in range(1, 10**4 + 1)
            if all(c.color(1 + t * m) == 1 for t in (1, 2, 3))]
    assert list(S) == want
    assert rep.count > 0
    assert rep.max_element == want[-1]
    assert rep.max_element <= 5000


def test_bad_set_matches_enumeration():
    rng = random.Random(606)
    for _ in range(25):
        k = rng.randint(2, 3)
        c = custom_coloring("random", seed=rng.randint(0, 10**6), k=k)
        n = rng.randint(1, 30)
        color = rng.randint(1, k)
        M = rng.randint(10, 400)
        polys = tuple(parse_poly(t) for t in rng.sample(["n", "2 n", "n^2"], 2))
        S, rep = bad_set(c, n, polys, color, M)
        want = [m for m in range(1, M + 1)
                if all(c.color(n + P(m)) == color for P in polys)]
        assert list(S) == want
        assert rep.count == len(want)
        assert rep.max_element == (want[-1] if want else None)
        assert rep.stabilized == (not any(m > M // 2 for m in want))
        assert rep.horizon == M
        assert rep.n == n and rep.color == color


def test_bad_sets_partition_agreements():
    # for a 2-coloring and two polys, the per-color bad sets partition the
    # set of m where both polynomial images share a color
    rng = random.Random(41)
    for _ in range(10):
        c = custom_coloring("random", seed=rng.randint(0, 10**6), k=2)
        n = rng.randint(1, 20)
        M = 300
        s1, _ = bad_set(c, n, LIN, 1, M)
        s2, _ = bad_set(c, n, LIN, 2, M)
        union = set(s1.tolist()) | set(s2.tolist())
        assert not (set(s1.tolist()) & set(s2.tolist()))
        want = {m for m in range(1, M + 1) if c.color(n + m) == c.color(n + 2 * m)}
        assert union == want


def test_bad_set_growth_matches_bad_set():
    c = custom_coloring("random", seed=17, k=2)
    horizons = [50, 100, 200, 400]
    rows = bad_set_growth(c, 5, LIN, 1, horizons)
    assert [row[0] for row in rows] == horizons
    for M, count, max_el in rows:
        _, rep = bad_set(c, 5, LIN, 1, M)
        assert count == rep.count
        assert max_el == rep.max_element


def test_longest_ap_fixed():
    # {1,3,5,7,9} is a 5-term progression inside the set
    assert longest_ap({1, 2, 3, 5, 7, 9}) == (1, 2, 5)
    assert longest_ap({4}) == (4, 0, 1)
    assert longest_ap({2, 4, 6, 8}) == (2, 2, 4)


def test_longest_ap_empty():
    with pytest.raises(EmptySet):
        longest_ap(())


def _ap_brute_force(S):
    pts = sorted(S)
    if len(pts) == 1:
        return (pts[0], 0, 1)
    sset = set(pts)
    best = (pts[0], 0, 1)

    def better(cand):
        # longer wins; then smaller difference; then smaller start
        return (cand[2], -cand[1], -cand[0]) > (best[2], -best[1], -best[0])

    for s in pts:
        for t in pts:
            if t <= s:
                continue
            d = t - s
            length = 2
            while s + length * d in sset:
                length += 1
            cand = (s, d, length)
            if better(cand):
                best = cand
    return best


def test_longest_ap_matches_brute_force():
    rng = random.Random(73)
    for _ in range(100):
        size = rng.randint(1, 50)
        S = set(rng.sample(range(1, 300), size))
        assert longest_ap(S) == _ap_brute_force(S)


def test_gowers_threshold_fixed():
    # the correction for k=3 is 2^-4096 * lnlnln N: the reference must be
    # evaluated above 4096 bits or the subtraction is invisible
    with mpmath.workprec(4200):
        got = gowers_threshold(3, 10**6)
        ln_n = mpmath.log(10**6)
        assert got < ln_n
        diff = ln_n - got
        want = mpmath.ldexp(mpmath.log(mpmath.log(mpmath.log(10**6))), -(2**12))
        assert diff > 0
        assert abs(diff - want) / want < mpmath.mpf("1e-15")


def test_gowers_threshold_monotone():
    # increasing in k at fixed N; corrections shrink as 2^-2^(k+9) so the
    # comparisons ride on the stored high-precision mantissas
    prev = gowers_threshold(1, 10**6)
    for k in range(2, 8):
        cur = gowers_threshold(k, 10**6)
        assert cur > prev
        prev = cur
    # increasing in N at fixed k, and below ln N
    ns = [16, 100, 10**4, 10**8, 10**12]
    vals = [gowers_threshold(2, n) for n in ns]
    with mpmath.workprec(4200):
        for n, v in zip(ns, vals):
            assert v < mpmath.log(n)
    for lo, hi in zip(vals, vals[1:]):
        assert hi > lo


def test_gowers_threshold_domain():
    with pytest.raises(DomainError):
        gowers_threshold(1, 10)
    with pytest.raises(DomainError):
        gowers_threshold(1, 15)
    # e^e = 15.15...; 16 is inside the regime
    assert gowers_threshold(1, 16) > 0


def test_configuration_json_shape():
    const = custom_coloring("periodic", pattern="1")
    cfg = greedy_search(window(const, 20), LIN, r=2, maxC=3)
    doc = cfg.to_json(20)
    assert doc["B"] == list(cfg.B)
    assert doc["C"] == list(cfg.C)
    assert doc["polys"] == ["n", "2n"]
    assert doc["color"] == cfg.color
    assert doc["N"] == 20
    assert doc["strategy"] == "greedy"
