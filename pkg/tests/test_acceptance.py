"""End-to-end acceptance run: one test and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import itertools
import sys
import time

import pytest

from semiring_lab.catalog import catalog, parse_spec
from semiring_lab.congruences import all_congruences, chi, congruences_by_partitions
from semiring_lab.core import (
    classify,
    matrix_semiring,
    quotient_by_congruence,
    regular_semimodule,
    semimodule_direct_sum,
)
from semiring_lab.enumeration import (
    are_isomorphic,
    enumerate_commutative_monoids,
    enumerate_semirings,
    naive_monoid_count,
    naive_semiring_count,
)
from semiring_lab.lattices import (
    endomorphism_semiring,
    enumerate_distributive_lattices,
    m3,
    n5,
    theorem59_condition2,
    theorem59_condition3,
)
from semiring_lab.projectivity import (
    colimit,
    cyclic_quotients,
    full_c_diagram,
    inclusion_legs,
    is_cp,
    is_projective,
    prop42_witness,
    splitting_idempotent,
)
from semiring_lab.simpleness import is_congruence_simple, is_ideal_simple
from semiring_lab.suites import run_suite

MINUTE = 60.0


def _report(capsys, number, ok, elapsed, limit, detail=""):
    within = elapsed <= limit
    line = f"criterion {number}: {'PASS' if ok and within else 'FAIL'} ({elapsed:.1f}s, limit {limit:.0f}s) {detail}".rstrip()
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, detail
    assert within, f"took {elapsed:.1f}s, limit {limit:.0f}s"


def _universe(order=3):
    return [S for n in range(1, order + 1) for S in enumerate_semirings(n)]


def _brute_cp(S):
    """CP by filtering all partitions and looking for a splitting element with plain loops."""
    R = regular_semimodule(S)
    n = S.size
    for theta in congruences_by_partitions(R, "semimodule"):
        lab = theta.block_of
        if not any(
            all(lab[S.mul[e, x]] == lab[x] for x in range(n))
            and all(S.mul[e, x] == S.mul[e, y] for x in range(n) for y in range(n) if lab[x] == lab[y])
            for e in range(n)
        ):
            return False
    return True


# ---------------------------------------------------------------------------


def criterion_1():
    expected = {"B": True, "MatB 2": True, "B3": True, "B31": True, "Ext Z2": True, "Z4": False, "Ext Z4": False}
    bad, slowest = [], 0.0
    for spec, want in expected.items():
        t0 = time.perf_counter()
        got = is_cp(parse_spec(spec)).is_cp
        slowest = max(slowest, time.perf_counter() - t0)
        if got != want or slowest > MINUTE:
            bad.append(spec)
    t0 = time.perf_counter()
    w = prop42_witness(parse_spec("B"), 3, materialize=True)
    matrix_time = time.perf_counter() - t0
    no_split = w.splitting is None and splitting_idempotent(w.matrix_semiring, w.theta) is None
    ok = not bad and no_split and matrix_time < 5 * MINUTE
    return ok, f"mismatches={bad} slowest_check={slowest:.1f}s matrix_witness={matrix_time:.1f}s no_splitting={no_split}"


def criterion_2():
    lattices = enumerate_distributive_lattices(4)
    disc_23, disc_13, with_end = [], [], 0
    for M in lattices:
        c2, c3 = theorem59_condition2(M), theorem59_condition3(M)
        if c2 != c3:
            disc_23.append(M.name)
        if M.size <= 6:
            with_end += 1
            if is_cp(endomorphism_semiring(M)).is_cp != c3:
                disc_13.append(M.name)
    ok = not disc_23 and not disc_13 and len(lattices) == 24
    return ok, f"lattices={len(lattices)} end_checked={with_end} discrepancies(2,3)={disc_23} (1,3)={disc_13}"


def criterion_3():
    out, ok = [], True
    for L in (m3(), n5()):
        t0 = time.perf_counter()
        E = endomorphism_semiring(L)
        v = is_cp(E).is_cp
        dt = time.perf_counter() - t0
        ok &= (not v) and dt < 10 * MINUTE
        out.append(f"End({L.name}) |E|={E.size} cp={v} {dt:.1f}s")
    return ok, "; ".join(out)


def criterion_4():
    U = _universe(3)
    bad = []
    for S in U:
        rep = classify(S)
        c = _brute_cp(S)
        if c != is_cp(S).is_cp:
            bad.append(("cp oracle", S.name))
        if rep.gelfand_right and c != bool(rep.finite_boolean_algebra):
            bad.append(("Gelfand", S.name))
        if rep.anti_bounded:
            one, two = is_congruence_simple(S), is_ideal_simple(S)
            is_b = S.size == 2 and are_isomorphic(S, parse_spec("B")) is not None
            simple_ring = bool(rep.ring) and S.size > 1 and two
            if not (one == two == (simple_ring or is_b)):
                bad.append(("anti-bounded simpleness", S.name))
        if (c and is_ideal_simple(S)) != (c and is_congruence_simple(S)):
            bad.append(("simple CP", S.name))
    # the subtractive structure claim needs the Peirce recogniser, which the suite runs
    subtractive = run_suite("thm-4.10")
    extra = [s for s in ("thm-4.9", "thm-4.17", "cor-5.12") if not run_suite(s).passed]
    ok = not bad and subtractive.passed and not extra
    return ok, f"universe={len(U)} counterexamples={bad} subtractive_suite={subtractive.counts()} failing_suites={extra}"


def _semimodule_iso(A, B):
    if A.size != B.size:
        return False
    return are_isomorphic(A, B) is not None


def criterion_5():
    B = parse_spec("B")
    RB = regular_semimodule(B)
    corpus = [(f"regular {spec}", regular_semimodule(S)) for spec, S in catalog()]
    for spec in ("B3", "B31"):
        corpus += [(f"{spec}/{q.congruence.blocks()}", q.quotient) for q in cyclic_quotients(parse_spec(spec))]
    corpus += [("B^2", semimodule_direct_sum([RB, RB])), ("B^3", semimodule_direct_sum([RB, RB, RB]))]
    failures = []
    for name, M in corpus:
        C = colimit(full_c_diagram(M))
        u = C.mediating_map(M, inclusion_legs(C.diagram, M))
        if not _semimodule_iso(C.module, M) or u is None or len(set(u.tolist())) != M.size:
            failures.append(name)
    return len(corpus) >= 20 and not failures, f"corpus={len(corpus)} failures={failures}"


def criterion_6():
    notes, ok = [], True
    for spec in ("B", "B3"):
        S = parse_spec(spec)
        T = matrix_semiring(S, 2)
        cs = all_congruences(S, "semiring").congruences
        lifted = [chi(t, 2, T) for t in cs]
        target = all_congruences(T, "semiring")
        bijective = len(set(lifted)) == len(cs) == len(target) and all(L in target for L in lifted)
        order = all(a.refines(b) == la.refines(lb) for (a, la), (b, lb) in itertools.product(zip(cs, lifted), repeat=2))
        quotients = True
        for t, lt in zip(cs, lifted):
            Q, _ = quotient_by_congruence(T, lt)
            St, _ = quotient_by_congruence(S, t)
            quotients &= are_isomorphic(Q, matrix_semiring(St, 2)) is not None
        ok &= bijective and order and quotients
        notes.append(f"{spec}: |Cong|={len(cs)} bijective={bijective} monotone={order} quotients={quotients}")
    return ok, "; ".join(notes)


def criterion_7():
    ids = ("prop-3.5", "cor-3.6", "prop-5.1", "prop-3.10")
    reports = {i: run_suite(i) for i in ids}
    ok = all(r.passed for r in reports.values())
    return ok, " ".join(f"{i}={r.counts()}" for i, r in reports.items())


def criterion_8():
    rep = run_suite("conj-6.1")
    item = rep.items[0]
    return rep.passed, f"{item.description}; counterexamples={item.witness['counterexamples']}"


def criterion_9():
    counts = {
        n: (len(enumerate_commutative_monoids(n)), naive_monoid_count(n), len(enumerate_semirings(n)), naive_semiring_count(n))
        for n in (1, 2, 3)
    }
    counts_ok = all(a == b and c == d for a, b, c, d in counts.values())
    small = [S for _, S in catalog() if S.size <= 5] + _universe(3)
    cong_bad = []
    for S in small:
        for X, kind in ((S, "semiring"), (regular_semimodule(S), "semimodule")):
            fast = sorted(c.key for c in all_congruences(X, kind))
            slow = sorted(c.key for c in congruences_by_partitions(X, kind))
            if fast != slow:
                cong_bad.append((S.name, kind))
    split_bad, checked = [], 0
    for spec, S in catalog():
        if S.size > 16:
            continue
        for q in cyclic_quotients(S):
            checked += 1
            if is_projective(q.quotient) != (splitting_idempotent(S, q.congruence) is not None):
                split_bad.append((spec, q.congruence.blocks()))
    ok = counts_ok and not cong_bad and not split_bad
    return ok, f"counts={counts} congruence_mismatches={cong_bad} cyclic_checked={checked} projectivity_mismatches={split_bad}"


CRITERIA = {
    1: (criterion_1, 7 * MINUTE),
    2: (criterion_2, 15 * MINUTE),
    3: (criterion_3, 20 * MINUTE),
    4: (criterion_4, 10 * MINUTE),
    5: (criterion_5, 5 * MINUTE),
    6: (criterion_6, 10 * MINUTE),
    7: (criterion_7, 10 * MINUTE),
    8: (criterion_8, 10 * MINUTE),
    9: (criterion_9, 10 * MINUTE),
}


def _run(number, capsys=None):
    fn, limit = CRITERIA[number]
    t0 = time.perf_counter()
    ok, detail = fn()
    _report(capsys, number, ok, time.perf_counter() - t0, limit, detail)


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    _run(number, capsys)


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        try:
            _run(k)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
