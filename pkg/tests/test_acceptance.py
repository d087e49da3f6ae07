"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line with its measurements and
time budget, then asserts. Run with ``pytest tests/test_acceptance.py -s``
to see the lines without the verbose listing.
"""
import itertools
import time

import pytest

from cotilt import (
    CharacteristicSequence,
    dedekind_like,
    enumerate_compatible_families,
    enumerate_sequences,
    families_equivalent,
    glue_family,
    localization_family,
    sequences_equal,
    synthetic,
    validate_sequence,
)
from cotilt.charseq import MAX_ENUM_LENGTH, count_sequences, enumerate_level_masks
from cotilt.coloc import PackedKernel
from cotilt.sampling import DEFAULT_SEED, make_rng, random_family, random_sequence
from cotilt.spectrum import ZERO, IntegerPrime
from cotilt.zhomology import oracle
from brute import brute_sequences, heights, lower_masks
from posets import as_ring, posets_of_size


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, elapsed, budget):
        within = budget is None or elapsed <= budget
        verdict = "PASS" if ok and within else "FAIL"
        limit = f" / {budget}s" if budget else ""
        with capsys.disabled():
            print(f"\n[acceptance {number}] {verdict}: {title}: {detail} ({elapsed:.1f}s{limit})")
        assert ok, detail
        assert within, f"took {elapsed:.1f}s, budget {budget}s"
    return emit


def _sweep_line(res):
    return f"{res.checked} checks, {len(res.failures)} failures"


def test_1_round_trips_on_all_small_spectra(report):
    t = time.perf_counter()
    spectra = seqs = fams = 0
    bad = []
    for k in range(1, 9):
        for downs in posets_of_size(k):
            R = as_ring(downs)
            spectra += 1
            for n in (1, 2, 3):
                K = PackedKernel(R, n)
                packed = list(K.sequences())
                for s in packed:
                    if K.glue(K.localize(s)) != s:
                        bad.append((downs, n, "glue(localize(P))"))
                glued = set()
                for f in K.families():
                    g = K.glue(f)
                    glued.add(g)
                    if K.localize(g) != f:
                        bad.append((downs, n, "localize(glue(F))"))
                if glued != set(packed):
                    bad.append((downs, n, "gluing is not a bijection"))
                seqs += len(packed)
                fams += len(glued)
    # object-level path on the smaller spectra, same statement
    objects = 0
    for k in range(1, 5):
        for downs in posets_of_size(k):
            R = as_ring(downs)
            for n in (1, 2, 3):
                for s in enumerate_sequences(R, n):
                    objects += 1
                    if not sequences_equal(glue_family(localization_family(s)), s):
                        bad.append((downs, n, "object glue(localize(P))"))
                for f in enumerate_compatible_families(R, n):
                    objects += 1
                    if not families_equivalent(localization_family(glue_family(f)), f):
                        bad.append((downs, n, "object localize(glue(F))"))
    detail = (f"{spectra} spectra, {seqs} sequences, {fams} families, "
              f"{objects} object-level checks, {len(bad)} failures")
    report(1, "round-trip bijection on spectra with <= 8 nodes", not bad, detail,
           time.perf_counter() - t, 120)


def test_2_random_round_trips_over_z(report):
    t = time.perf_counter()
    rng = make_rng(DEFAULT_SEED)
    failures = 0
    for _ in range(1000):
        n = rng.randint(1, 3)
        seq = random_sequence(rng, n)
        failures += not sequences_equal(glue_family(localization_family(seq)), seq)
        fam = random_family(rng, n)
        failures += not families_equivalent(localization_family(glue_family(fam)), fam)
    report(2, f"1000 random sequences and families over Z (seed {DEFAULT_SEED})", failures == 0,
           f"{failures} failures", time.perf_counter() - t, 10)


def test_3_dedekind_like_counts(report):
    t = time.perf_counter()
    rows = []
    ok = True
    for k in range(1, 5):
        R = dedekind_like(k)
        for n in (1, 2, 3):
            fast = count_sequences(R, n)
            listed = list(enumerate_level_masks(R, n))
            brute = brute_sequences(R, n)
            ok &= fast == len(listed) == len(brute) == 2 ** k and listed == brute
            rows.append(fast)
    report(3, "2^k sequences on the k-maximal Dedekind-like spectrum", ok,
           f"counts {rows}", time.perf_counter() - t, 30)


@pytest.mark.parametrize("part", ["a", "b"])
def test_4_cartanei_sweep(report, part):
    t = time.perf_counter()
    res = oracle.sweep_cartanei(part, max_order=32, primes=(2, 3), degrees=(1, 2))
    report(4, f"localization Ext identity ({part}) over groups of order <= 32", res.ok,
           _sweep_line(res), time.perf_counter() - t, 60)


def test_5_dual_colocalization(report):
    t = time.perf_counter()
    res = oracle.sweep_dual_coloc(max_order=64, primes=(2, 3, 5))
    report(5, "colocalized dual equals dual of localization, |N| <= 64", res.ok,
           _sweep_line(res), time.perf_counter() - t, 30)


def test_6_membership_duality(report):
    t = time.perf_counter()
    res = oracle.sweep_membership_duality(max_factor=16, max_rank=2, max_length=3,
                                          primes=(2, 3, 5, 7, 11), lengths=(1, 2, 3))
    report(6, "tilting(N, P) == cotilting(N*, P) without index shift", res.ok,
           _sweep_line(res), time.perf_counter() - t, 60)


def test_7_bass_numbers_of_z(report):
    t = time.perf_counter()
    res = oracle.sweep_bass((2, 3, 5, 7))
    exact = [(oracle.bass_number_oracle(IntegerPrime(p), 0), oracle.bass_number_oracle(IntegerPrime(p), 1))
             for p in (2, 3, 5, 7)]
    zero = oracle.bass_number_oracle(ZERO, 0)
    ok = res.ok and all(mu == (0, 1) for mu in exact) and zero == 1
    report(7, "Bass numbers of Z match the hard-wired data", ok,
           f"{_sweep_line(res)}, mu_0/mu_1 at (2),(3),(5),(7) = {exact}, mu_0((0)) = {zero}",
           time.perf_counter() - t, None)


def _diamond(middle):
    nodes = ["b"] + [f"x{j}" for j in range(middle)] + ["t"]
    order = [("b", x) for x in nodes[1:-1]] + [(x, "t") for x in nodes[1:-1]]
    return synthetic(nodes, order, gorenstein_heights=True)


def _stacked_diamond():
    nodes = ["b", "x1", "x2", "c", "y1", "y2", "t"]
    order = [("b", "x1"), ("b", "x2"), ("x1", "c"), ("x2", "c"),
             ("c", "y1"), ("c", "y2"), ("y1", "t"), ("y2", "t")]
    return synthetic(nodes, order, gorenstein_heights=True)


def _chain(k):
    nodes = [f"c{j}" for j in range(k)]
    return synthetic(nodes, list(zip(nodes, nodes[1:])), gorenstein_heights=True)


def test_8_gorenstein_height_rule(report):
    t = time.perf_counter()
    rings = [_chain(k) for k in range(1, 9)] + [_diamond(m) for m in range(1, 7)] + [_stacked_diamond()]
    enumerated = tuples = 0
    bad = []
    for R in rings:
        sp = R.spectrum
        k = len(sp.nodes)
        pairs = [(sp.index[a], sp.index[b]) for a, b in sp.order]
        h = heights(k, pairs)
        upto = [sum(1 << v for v in range(k) if h[v] <= i) for i in range(k + 3)]
        # every enumerated sequence contains all primes of height <= i at level i
        for n in range(1, min(k + 1, MAX_ENUM_LENGTH) + 1):
            for levels in enumerate_level_masks(R, n):
                enumerated += 1
                if any(upto[i] & ~s for i, s in enumerate(levels)):
                    bad.append((str(R), levels))
        # the validator accepts exactly the nested lower-set tuples obeying the rule
        lowers = lower_masks(k, pairs)
        for n in (1, 2, 3):
            for levels in itertools.product(lowers, repeat=n):
                tuples += 1
                nested = all(not (levels[i] & ~levels[i + 1]) for i in range(n - 1))
                rule = all(not (upto[i] & ~s) for i, s in enumerate(levels))
                seq = CharacteristicSequence(R, tuple(R.from_mask(s) for s in levels))
                if validate_sequence(seq).ok != (nested and rule):
                    bad.append((str(R), levels))
    report(8, "height rule on chains and diamonds with <= 8 nodes", not bad,
           f"{len(rings)} spectra, {enumerated} enumerated sequences, {tuples} tuples validated, "
           f"{len(bad)} failures", time.perf_counter() - t, 30)


def test_9_colocalization_oracle(report):
    t = time.perf_counter()
    res = oracle.sweep_colocalization(max_order=256, primes=(2, 3, 5))
    report(9, "p-primary part equals the stabilized inverse limit, |M| <= 256", res.ok,
           _sweep_line(res), time.perf_counter() - t, 30)
