"""End-to-end acceptance checks.

Each ``criterion_*`` function returns ``(ok, detail)``.  Under pytest every
check prints a ``criterion N: PASS|FAIL`` line; running this file directly
prints the same lines without pytest.
"""

import contextlib
import io
import itertools
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest  # noqa: E402

from cutdiagrams import corpus  # noqa: E402
from cutdiagrams.chen import ChenMap, canonical_network, network_longitude, rewrite_network, road_network  # noqa: E402
from cutdiagrams.cli import main as cli_main  # noqa: E402
from cutdiagrams.concordance import (  # noqa: E402
    REDUCED,
    STRICT,
    build_slice,
    build_sv_trace,
    build_trace,
    verify,
)
from cutdiagrams.core import linking_matrix, region_count  # noqa: E402
from cutdiagrams.group import FreeWord  # noqa: E402
from cutdiagrams.magnus import (  # noqa: E402
    expand,
    in_lcs,
    longitude_series,
    milnor_table,
    reduced_milnor_table,
    table_from_longitudes,
)
from cutdiagrams.moves import KIND_ORDER, SELF_VIRTUAL, apply_move, parse_move, random_walk_trace  # noqa: E402

from certgen import random_certificate  # noqa: E402
from oracles import basic_commutators, commutator_letters, free_reduce, magnus, milnor_oracle  # noqa: E402
from strategies import random_diagram  # noqa: E402

FUZZ_DIAGRAMS = 200
FUZZ_STEPS = 30


def fuzz_corpus():
    return [random_diagram(random.Random(seed), max_components=3, max_points=8) for seed in range(FUZZ_DIAGRAMS)]


def cli(*argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(list(argv))
    return code, buf.getvalue()


def oracle_table(d, q):
    rows = [[(cp.sign, tuple(cp.label)) for cp in d.points(i)] for i in range(1, d.n + 1)]
    return milnor_oracle(list(d.skeleton.components), rows, q)


def criterion_1():
    hopf = corpus.load("hopf")
    t = milnor_table(hopf, 2)
    got = {s: t[s] for s in t.entries}
    expected = {(1, 1): (0, 0), (1, 2): (1, 0), (2, 1): (1, 0), (2, 2): (0, 0)}
    oracle = oracle_table(hopf, 2)
    agree = all(oracle.get(s, 0) == v for s, (v, _) in got.items())
    return got == expected and agree, f"table {got}"


def criterion_2():
    trefoil = corpus.load("trefoil")
    t = milnor_table(trefoil, 4)
    vanish = all((v % m if m else v) == 0 for v, m in t.entries.values())
    report = verify(build_slice(trefoil))
    return vanish and report.accepted, f"entries vanish: {vanish}; slice: {report.summary()}"


def criterion_3():
    wh = corpus.load("whitehead")
    t = milnor_table(wh, 4)
    oracle = oracle_table(wh, 4)
    ok_oracle = oracle.get((1, 1, 2, 2), 0) == t.value((1, 1, 2, 2))
    ok_values = t[(1, 2)] == (0, 0) and abs(t.value((1, 1, 2, 2))) == 1 and t.modulus((1, 1, 2, 2)) == 0
    reduced_zero = reduced_milnor_table(wh, 4).nonzero() == []
    strict_code, strict_out = cli("compare", "whitehead", "unlink2", "--maxlen", "4")
    red_code, red_out = cli("compare", "whitehead", "unlink2", "--reduced")
    ok_cli = strict_code == 3 and strict_out.startswith("DIFFER") and red_code == 0 and red_out.startswith("EQUAL")
    ok = ok_oracle and ok_values and reduced_zero and ok_cli
    return ok, f"mu(1122)={t.value((1, 1, 2, 2))}; strict: {strict_out.strip()}; reduced: {red_out.strip()}"


def criterion_4():
    bor = corpus.load("borromean")
    m = linking_matrix(bor)
    lk_zero = all(m[i, j] == 0 for i in range(3) for j in range(3) if i != j)
    t = milnor_table(bor, 3)
    oracle = oracle_table(bor, 3)
    mu = t.value((1, 2, 3))
    return lk_zero and abs(mu) == 1 and oracle[(1, 2, 3)] == mu and t.modulus((1, 2, 3)) == 0, f"mu(123)={mu}"


def criterion_5():
    failures = 0
    for seed, d in enumerate(fuzz_corpus()):
        ref = milnor_table(d, 4)
        final, _ = random_walk_trace(d, FUZZ_STEPS, seed)
        after = milnor_table(final, 4)
        if any(after[s] != v for s, v in ref.entries.items()):
            failures += 1
    return failures == 0, f"{FUZZ_DIAGRAMS} diagrams x {FUZZ_STEPS} moves, {failures} failures"


def criterion_6():
    failures, strict_changes = 0, 0
    for seed, d in enumerate(fuzz_corpus()):
        final, _ = random_walk_trace(d, FUZZ_STEPS, seed, SELF_VIRTUAL)
        if not reduced_milnor_table(final, 3).agrees_with(reduced_milnor_table(d, 3)):
            failures += 1
        if not milnor_table(final, 3).agrees_with(milnor_table(d, 3)):
            strict_changes += 1
    wh = corpus.load("whitehead")
    end = wh
    for text in corpus.WHITEHEAD_TO_UNLINK:
        end = apply_move(end, parse_move(text))
    whitehead_changes = not milnor_table(end, 4).agrees_with(milnor_table(wh, 4))
    whitehead_reduced_same = reduced_milnor_table(end, 4).agrees_with(reduced_milnor_table(wh, 4))
    ok = failures == 0 and whitehead_changes and whitehead_reduced_same
    return ok, (
        f"{failures} reduced failures; {strict_changes} corpus walks change strict tables; "
        f"whitehead -> unlink changes strict table: {whitehead_changes}"
    )


def criterion_7():
    rng = random.Random(2024)
    bad = 0
    for trial in range(200):
        q = (2, 3, 4)[trial % 3]
        n = rng.choice((2, 3)) if q < 4 else 2
        basis = basic_commutators(n, q)
        picks = rng.sample(range(len(basis)), rng.randint(1, min(3, len(basis))))
        rng.shuffle(picks)
        letters = []
        for t in picks:
            e = rng.choice((-2, -1, 1, 2))
            c = commutator_letters(basis[t])
            letters += (c if e > 0 else [(g, -s) for g, s in reversed(c)]) * abs(e)
        w = FreeWord(letters)
        top = {k: v for k, v in magnus(free_reduce(letters), q + 1).items() if len(k) == q}
        expect_deeper = not top  # oracle: the degree-q part vanishes only on collapse
        if not in_lcs(w, q, n) or in_lcs(w, q + 1, n) != expect_deeper:
            bad += 1
    return bad == 0, f"200 products, {bad} mismatches"


def _rewritten_table(d, net, q):
    canon = canonical_network(d)
    eta = ChenMap(d, net)
    longs = [
        expand(rewrite_network(d, net, canon, q, eta(q, network_longitude(d, net, i))), q, d.n)
        for i in range(1, d.n + 1)
    ]
    return table_from_longitudes(d, q, longs)


def criterion_8():
    rng = random.Random(8)
    problems = []
    for name in corpus.names():
        d = corpus.load(name)
        for q in (2, 3, 4):
            low, high = longitude_series(d, q), longitude_series(d, q + 1)
            for j in range(d.n):
                for k in range(1, q):
                    for seq in itertools.product(range(1, d.n + 1), repeat=k):
                        if low[j].coefficient(seq) != high[j].coefficient(seq):
                            problems.append(f"{name} unstable at q={q}")
        for _ in range(5):
            bases = {i: rng.randrange(region_count(d, i)) for i in range(1, d.n + 1)}
            net = road_network(d, bases)
            if not _rewritten_table(d, net, 4).agrees_with(milnor_table(d, 4)):
                problems.append(f"{name} network {bases}")
    for seed in range(40):
        d = random_diagram(random.Random(seed), max_components=3, max_points=7, kinds=("interval",))
        bases = {i: rng.randrange(region_count(d, i)) for i in range(1, d.n + 1)}
        rewritten = _rewritten_table(d, road_network(d, bases), 4)
        if rewritten.entries != milnor_table(d, 4).entries:
            problems.append(f"interval seed {seed} not exact")
    return not problems, "; ".join(problems[:3]) or "stable; network-independent"


def _boundaries_agree(report, initial, mode):
    table = milnor_table if mode == STRICT else reduced_milnor_table
    return table(report.final, 4).agrees_with(table(initial, 4))


def criterion_9():
    unsound, counts = 0, {STRICT: 0, REDUCED: 0}
    built = [build_slice(corpus.load(n)) for n in corpus.names()]
    built += [corpus.load_certificate(n) for n in corpus.certificate_names()]
    for seed, d in enumerate(fuzz_corpus()[:60]):
        built.append(build_trace(d, random_walk_trace(d, 8, seed)[1]))
        built.append(build_sv_trace(d, random_walk_trace(d, 8, seed, KIND_ORDER)[1]))
    for c in built:
        r = verify(c)
        if r:
            counts[c.mode] += 1
            unsound += not _boundaries_agree(r, c.initial, c.mode)
    builder_total = dict(counts)
    rng = random.Random(99)
    random_counts = {STRICT: 0, REDUCED: 0}
    for mode in (STRICT, REDUCED):
        tries = 0
        while random_counts[mode] < 100 and tries < 5000:
            tries += 1
            d = random_diagram(rng, max_components=3, max_points=5)
            c = random_certificate(d, rng, rng.randint(1, 8), mode)
            r = verify(c)
            if r:
                random_counts[mode] += 1
                unsound += not _boundaries_agree(r, d, mode)
    ok = unsound == 0 and min(random_counts.values()) >= 100
    return ok, f"builders {builder_total}, random {random_counts}, {unsound} unsound"


def criterion_10():
    r = verify(build_slice(corpus.load("hopf")))
    return not r.accepted, r.summary()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_criterion(number):
    start = time.perf_counter()
    ok, detail = CRITERIA[number - 1]()
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - start:.1f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
