"""End-to-end acceptance checks for the whole construction and verification
stack.  One test per guarantee; each either reproduces a frozen reference
value exactly or drives a property over a seeded randomized corpus.
"""

import os
import random
from itertools import combinations

from slnc import linalg
from slnc.construct import (
    alg2_increment_level,
    alg3_fixed_dimension,
    build_fixed_pair,
    family_fixed_rate,
    generate_base_code,
    region_family,
)
from slnc.cli import main
from slnc.errors import FieldTooSmall
from slnc.randgen import BruteCuts, random_code_instance, random_network
from slnc.secure import (
    check_lemma3_equivalence,
    check_secure_exhaustive,
    check_secure_subspace,
    classify_wiretap_sets,
    gamma_hyperplane,
)

C3_KERNELS = {
    "e1": (0, 1, 1), "e2": (1, 0, 1), "e3": (1, 0, 2), "e4": (0, 1, 2),
    "e5": (1, 0, 1), "e6": (1, 0, 1), "e7": (1, 0, 2), "e8": (1, 0, 2),
    "e9": (0, 0, 1), "e10": (0, 0, 1), "e11": (0, 0, 1),
}
C2_KERNELS = {e: f[:2] for e, f in C3_KERNELS.items()}

A1 = [("e1",), ("e2",), ("e3",), ("e4",), ("e9",)]
A2 = [
    ("e1", "e2"), ("e1", "e3"), ("e1", "e4"), ("e1", "e9"),
    ("e2", "e3"), ("e2", "e4"), ("e3", "e4"), ("e4", "e9"),
]

CORPUS_SEED = 20260815
CORPUS_SIZE = 200


def corpus():
    rng = random.Random(CORPUS_SEED)
    for _ in range(CORPUS_SIZE):
        yield random_code_instance(rng)


def deployed_code(net, base, Q):
    return base.transform(linalg.invert(net.field, Q))


def test_01_reference_code_global_kernels(c3, c2):
    """The two stored reference codes carry exactly the frozen kernels."""
    assert c3.global_kernels == C3_KERNELS
    assert c2.global_kernels == C2_KERNELS


def test_02_primary_sets_of_reference_network(fig2):
    assert fig2.enumerate_primary_sets(1) == A1
    assert fig2.enumerate_primary_sets(2) == A2


def test_03_level_increment_trace_values(fig2, c2, c3):
    """Classification under the reference 2x2 mix finds the four known
    entangled pairs with the known forbidden scalars, and the reference
    3x3 mix passes the verifier at rate 1, level 2."""
    Q2 = [[1, 1], [1, 0]]
    cls = classify_wiretap_sets(fig2, c2, linalg.columns(Q2)[:1], 2)
    assert cls.entangled_sets() == [
        ("e1", "e2"), ("e1", "e3"), ("e2", "e4"), ("e3", "e4")
    ]
    hps = [gamma_hyperplane(cert, c3.global_kernels, fig2.field) for cert in cls.entangled]
    lams = {hp.edge_ids: hp.lam for hp in hps}
    assert lams == {
        ("e1", "e2"): 2, ("e1", "e3"): 3, ("e2", "e4"): 3, ("e3", "e4"): 4
    }
    forbidden = {c for c in range(5) if any(hp.contains(fig2.field, (c,)) for hp in hps)}
    assert set(range(5)) - forbidden == {0, 1}
    Q3 = linalg.mat_from_cols([(1, 1, 1), (1, 0, 0), (0, 0, 1)])
    assert check_secure_subspace(fig2, c3, Q3, 1, 2).overall
    # and the increment itself accepts the same inputs
    spec, _ = alg2_increment_level(fig2, c2, c3, Q2, 1, 1)
    assert check_secure_subspace(fig2, c3, spec.Q, 1, 2).overall


def test_04_one_matrix_covers_every_split(fig2, c3):
    """The reference shared 3x3 mix is secure at every (rate, level) split
    of dimension 3, and the fixed-dimension builder reproduces it."""
    Q3 = linalg.mat_from_cols([(1, 1, 0), (0, 1, 0), (0, 0, 1)])
    for r in range(4):
        assert check_secure_subspace(fig2, c3, Q3, 3 - r, r).overall
    specs = alg3_fixed_dimension(fig2, c3, 3)
    assert [(s.rate, s.level) for s in specs] == [(3, 0), (2, 1), (1, 2), (0, 3)]
    for s in specs:
        assert s.Q == Q3


def test_05_subspace_verifier_matches_exhaustive_oracle():
    """Over the seeded corpus the algebraic verdict and the brute-force
    distribution-counting verdict never disagree."""
    checked = 0
    for net, base, Q, rate, level in corpus():
        sub = check_secure_subspace(net, base, Q, rate, level)
        exh = check_secure_exhaustive(net, deployed_code(net, base, Q), rate, level)
        assert sub.overall == exh.overall, (net.field.q, base.n, rate, level)
        checked += 1
    assert checked == CORPUS_SIZE


def test_06_primary_sets_decide_all_subsets():
    """Security over the primary sets of size `level` settles security over
    every edge subset of size at most `level`, on the same corpus."""
    mi_checked = 0
    checked = 0
    for net, base, Q, rate, level in corpus():
        assert check_lemma3_equivalence(net, base, Q, rate, level)
        if mi_checked < 40 and net.field.q ** base.n <= 400 and len(net.edges) <= 10:
            primary = check_secure_subspace(net, base, Q, rate, level).overall
            full = check_secure_exhaustive(
                net, deployed_code(net, base, Q), rate, level, scope="all"
            )
            assert full.overall == primary
            mi_checked += 1
        checked += 1
    assert checked == CORPUS_SIZE and mi_checked == 40


def test_07_increment_succeeds_when_field_beats_entangled_count():
    """Whenever q exceeds the number of entangled sets at the next level,
    the increment runs to completion and its output verifies."""
    rng = random.Random(7)
    hits = 0
    for _ in range(4000):
        if hits == 25:
            break
        net = random_network(rng)
        if net.c_min < 2:
            continue
        n = rng.randint(1, net.c_min - 1)
        try:
            c_np1 = generate_base_code(net, n + 1)
        except FieldTooSmall:
            continue
        c_n = c_np1.truncate(n)
        rate = rng.randint(0, n)
        try:
            spec = build_fixed_pair(net, c_n, rate, n - rate)
        except FieldTooSmall:
            continue
        cls = classify_wiretap_sets(net, c_n, spec.b_columns(), n - rate + 1)
        if net.field.q <= len(cls.entangled):
            continue
        out, _ = alg2_increment_level(net, c_n, c_np1, spec.Q, rate, n - rate)
        assert check_secure_subspace(net, c_np1, out.Q, rate, n - rate + 1).overall
        hits += 1
    assert hits == 25


def test_08_fixed_dimension_succeeds_when_field_beats_cut_counts():
    """Whenever q exceeds both the sink count and the largest primary-set
    count below the chosen dimension, the shared-matrix builder emits all
    n+1 splits and every one verifies."""
    rng = random.Random(8)
    hits = 0
    for _ in range(4000):
        if hits == 10:
            break
        net = random_network(rng)
        if net.c_min < 1:
            continue
        n = rng.randint(1, net.c_min)
        counts = [len(net.enumerate_primary_sets(r)) for r in range(1, n)]
        bound = max([len(net.sinks)] + counts)
        if net.field.q <= bound:
            continue
        base = generate_base_code(net, n)
        specs = alg3_fixed_dimension(net, base, n)
        assert [(s.rate, s.level) for s in specs] == [(n - r, r) for r in range(n + 1)]
        for s in specs:
            assert check_secure_subspace(net, s.base, s.Q, s.rate, s.level).overall
        hits += 1
    assert hits == 10


def test_09_region_families_share_intermediate_kernels(fig2_q11):
    """Both whole-region builders cover all ten feasible pairs and never
    reprogram an intermediate node between members."""
    top = generate_base_code(fig2_q11)
    want = sorted((w, r) for w in range(4) for r in range(4 - w))
    for tag in ("construction-2", "construction-3"):
        fam = region_family(fig2_q11, top, tag)
        assert fam.sorted_pairs() == want
        assert fam.is_local_encoding_preserving()
        for m in fam.members.values():
            assert check_secure_subspace(fig2_q11, m.base, m.Q, m.rate, m.level).overall


def test_10_fixed_rate_family_survives_exhaustive_oracle(fig2, c3):
    """The rate-1 family on the reference network verifies algebraically and
    under full input enumeration against every tappable subset."""
    fam = family_fixed_rate(fig2, c3, 1)
    assert fam.pairs() == [(1, 0), (1, 1), (1, 2)]
    assert fam.is_local_encoding_preserving()
    for m in fam.members:
        assert check_secure_subspace(fig2, m.base, m.Q, m.rate, m.level).overall
        assert check_secure_exhaustive(fig2, m.deployed(), m.rate, m.level, scope="all").overall


def test_11_primary_cut_matches_brute_force(fig2):
    nets = [fig2]
    rng = random.Random(11)
    nets.extend(random_network(rng) for _ in range(50))
    for net in nets:
        brute = BruteCuts(net, max_size=3)
        for A in net.all_edge_subsets_upto(3):
            assert net.primary_min_cut(A) == brute.primary_min_cut(A)


def test_12_region_construction_is_deterministic(tmp_path, capsys):
    net_file = os.path.join(os.path.dirname(__file__), "data", "fig2_q11.net")
    dirs = [tmp_path / "first", tmp_path / "second"]
    for d in dirs:
        assert main(["code", "construct", net_file, "--mode", "region-c3",
                     "--out", str(d)]) == 0
    capsys.readouterr()
    names = sorted(os.listdir(dirs[0]))
    assert names == sorted(os.listdir(dirs[1]))
    assert "region.png" in names and "manifest" in names
    for name in names:
        with open(dirs[0] / name, "rb") as fa, open(dirs[1] / name, "rb") as fb:
            assert fa.read() == fb.read(), name
