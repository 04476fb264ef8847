"""Exit criteria for the whole package, one test per criterion.

Each test records a PASS/FAIL line that the terminal summary prints.
"""

import time
from functools import lru_cache
from itertools import product as cartesian


from absorder.absolute import build_absolute_order, claw, claw_product, expected_rank_polynomial
from absorder.factorization import bumps, embed_claw_product, factorize, phi, tier_tuples
from absorder.groups import (
    Family, GroupId, absolute_length, bfs_lengths, elements, identity, reflections,
)
from absorder.poset import (
    export_dot, is_spanning_subposet, is_strictly_log_concave, is_unimodal, longest_chain,
    product, rank_sequence,
)
from absorder.sperner import (
    is_k_sperner, k_largest_ranks_sum, max_k_family, max_k_family_exhaustive,
    non_sperner_fixture, validate_certificate,
)

from _posets import random_posets
from conftest import ACCEPTANCE


def groups(family, lo, hi):
    return [GroupId(family, n) for n in range(lo, hi + 1)]


RANK_GROUPS = groups(Family.A, 1, 6) + groups(Family.B, 1, 5) + groups(Family.I2, 3, 12)
CHECK_GROUPS = groups(Family.A, 1, 5) + groups(Family.B, 1, 4)
SPERNER_GROUPS = CHECK_GROUPS + groups(Family.I2, 3, 12)


def record(number, title, passed, detail=""):
    ACCEPTANCE[number] = (title, passed, detail)
    print(f"[{'PASS' if passed else 'FAIL'}] {number}. {title}: {detail}")
    assert passed, f"criterion {number} failed: {detail}"


@lru_cache(maxsize=None)
def absolute_order(g):
    return build_absolute_order(g)


@lru_cache(maxsize=None)
def group_certificates():
    """Every (group, k) certificate of criterion 5, with the time taken per group."""
    out, times = {}, {}
    for g in SPERNER_GROUPS:
        p = absolute_order(g)
        t0 = time.perf_counter()
        out[g] = [max_k_family(p, k) for k in range(1, p.top_rank + 2)]
        times[g] = time.perf_counter() - t0
    return out, times


def small_claw_products():
    posets = [claw(k) for k in range(2, 9)]
    for count in (2, 3):
        for ks in cartesian(range(2, 6), repeat=count):
            if list(ks) != sorted(ks):
                continue
            p = claw(ks[0])
            for k in ks[1:]:
                p = product(p, claw(k))
            if len(p) <= 22:
                posets.append(p)
    return posets


@lru_cache(maxsize=None)
def oracle_runs():
    """(poset, certificate, exhaustive size) over the criterion-6 corpus."""
    corpus = random_posets(250, seed=2024) + small_claw_products()
    runs = []
    for p in corpus:
        for k in range(1, longest_chain(p) + 1):
            runs.append((p, max_k_family(p, k), max_k_family_exhaustive(p, k)))
    return corpus, runs


def test_01_rank_sequence_identity():
    t0 = time.perf_counter()
    bad = [str(g) for g in RANK_GROUPS
           if rank_sequence(absolute_order(g)) != expected_rank_polynomial(g)]
    elapsed = time.perf_counter() - t0
    record(1, "rank sequences equal prod(1 + (d_i - 1) q)", not bad and elapsed < 30,
           f"{len(RANK_GROUPS)} groups, mismatches={bad}, {elapsed:.1f}s (limit 30s)")


def test_02_reflection_counts():
    bad = [str(g) for g in groups(Family.A, 1, 6) if len(set(reflections(g))) != g.parameter * (g.parameter + 1) // 2]
    bad += [str(g) for g in groups(Family.B, 1, 5) if len(set(reflections(g))) != g.parameter ** 2]
    record(2, "|T| = n(n+1)/2 for A_n, n^2 for B_n", not bad, f"A1..A6, B1..B5, mismatches={bad}")


def test_03_factorization_suite():
    t0 = time.perf_counter()
    failures = []
    checked = 0
    for g in CHECK_GROUPS:
        e = identity(g)
        p = absolute_order(g)
        covers = {(p.labels[x], p.labels[y]) for x, y in p.covers}
        for w in elements(g):
            f = factorize(w)
            if phi(f) != w:
                failures.append(f"{g}: phi(factorize({w})) != w")
            if sum(r != e for r in f) != absolute_length(w):
                failures.append(f"{g}: length of {w}")
        for f in tier_tuples(g):
            w = phi(f)
            if factorize(w) != f:
                failures.append(f"{g}: factorize(phi(f)) != f for {w}")
            for bumped in bumps(f):
                checked += 1
                if (w, phi(bumped)) not in covers:
                    failures.append(f"{g}: bump of {w} is not a cover")
    elapsed = time.perf_counter() - t0
    record(3, "unique factorization, length formula, cover transport",
           not failures and elapsed < 60,
           f"A1..A5, B1..B4, {checked} bumps, failures={failures[:3]}, {elapsed:.1f}s (limit 60s)")


def test_04_spanning_subposet_embedding():
    bad = []
    for g in SPERNER_GROUPS:
        image, _ = embed_claw_product(g)
        if not is_spanning_subposet(image, absolute_order(g)):
            bad.append(str(g))
    a2 = GroupId(Family.A, 2)
    cp_dot = export_dot(claw_product(a2))
    abs_dot = export_dot(absolute_order(a2))
    nodes = [sum("[label=" in line for line in d.splitlines()) for d in (cp_dot, abs_dot)]
    edges = [d.count("->") for d in (cp_dot, abs_dot)]
    figure_ok = nodes == [6, 6] and edges == [7, 9]
    record(4, "claw product embeds as a spanning subposet", not bad and figure_ok,
           f"A1..A5, B1..B4, I2(3..12) failures={bad}; A2 DOT nodes={nodes} edges={edges}")


def test_05_strong_sperner():
    certs, times = group_certificates()
    bad = []
    for g, cs in certs.items():
        p = absolute_order(g)
        for cert in cs:
            if cert.size != k_largest_ranks_sum(p, cert.k):
                bad.append((str(g), cert.k, cert.size))
    a4 = [c.size for c in certs[GroupId(Family.A, 4)]]
    a5_time = times[GroupId(Family.A, 5)]
    record(5, "max k-family equals sum of k largest ranks", not bad and a4 == [50, 85, 109, 119, 120]
           and a5_time < 120,
           f"{sum(map(len, certs.values()))} (group, k) pairs, failures={bad}, A4={a4}, "
           f"A5 all k in {a5_time:.1f}s (limit 120s)")


def test_06_flow_matches_exhaustive():
    corpus, runs = oracle_runs()
    random_count = 250
    bad = [(len(p), cert.k, cert.size, exact) for p, cert, exact in runs if cert.size != exact]
    assert all(len(p) <= 22 for p in corpus)
    record(6, "min-cost flow equals exhaustive oracle", not bad and random_count >= 200,
           f"{random_count} random posets + {len(corpus) - random_count} claws/claw products, "
           f"{len(runs)} (poset, k) pairs, mismatches={bad[:3]}")


def test_07_certificate_soundness():
    certs, _ = group_certificates()
    _, runs = oracle_runs()
    pairs = [(absolute_order(g), c) for g, cs in certs.items() for c in cs]
    pairs += [(p, c) for p, c, _ in runs]
    fixture = non_sperner_fixture()
    pairs += [(fixture, max_k_family(fixture, k)) for k in (1, 2)]
    failures = []
    for p, cert in pairs:
        try:
            validate_certificate(p, cert)
        except AssertionError as exc:
            failures.append(str(exc))
    record(7, "every certificate passes the independent validator", not failures,
           f"{len(pairs) - len(failures)}/{len(pairs)} valid")


def test_08_negative_control():
    p = non_sperner_fixture()
    cert = max_k_family(p, 1)
    record(8, "non-Sperner fixture is rejected", not is_k_sperner(p, 1) and cert.size == 4,
           f"max antichain {cert.size} vs largest rank {k_largest_ranks_sum(p, 1)}")


def test_09_log_concavity():
    bad = []
    for g in RANK_GROUPS:
        seq = rank_sequence(absolute_order(g))
        if not (is_strictly_log_concave(seq) and is_unimodal(seq)):
            bad.append(str(g))
    record(9, "rank sequences strictly log-concave and unimodal", not bad,
           f"{len(RANK_GROUPS)} groups, failures={bad}")


def test_10_closed_form_vs_bfs():
    bad = []
    total = 0
    for g in CHECK_GROUPS:
        for w, d in bfs_lengths(g).items():
            total += 1
            if absolute_length(w) != d:
                bad.append(f"{g}: {w}")
    record(10, "closed-form reflection length equals BFS distance", not bad,
           f"{total} elements over A1..A5, B1..B4, mismatches={bad[:3]}")
