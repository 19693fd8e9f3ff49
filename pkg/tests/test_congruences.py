import itertools

import numpy as np
import pytest
from conftest import POOL, relabelled
from hypothesis import given
from hypothesis import strategies as st

from semiring_lab.catalog import parse_spec
from semiring_lab.congruences import (
    Congruence,
    all_congruences,
    bourne_congruence,
    chi,
    congruences_by_partitions,
    diamond_congruence,
    generated_congruence,
    is_congruence,
    iter_congruences,
    principal_congruence,
    theta_plus,
)
from semiring_lab.core import (
    ElementSubset,
    distinguished_subset,
    matrix_semiring,
    quotient_by_congruence,
    regular_semimodule,
)
from semiring_lab.enumeration import are_isomorphic
from semiring_lab.errors import CongruenceLimitExceeded, NotASubsemimodule

TINY = [S for S in POOL if S.size <= 5]
tiny = st.sampled_from(TINY)


def brute_is_congruence(X, lab, kind):
    """Loop check of compatibility with + and the relevant multiplications."""
    n = X.size
    act = X.mul if kind == "semiring" or not hasattr(X, "action") else X.action
    ring_size = act.shape[1]
    for a, b in itertools.product(range(n), repeat=2):
        if lab[a] != lab[b]:
            continue
        for c in range(n):
            if lab[X.add[a, c]] != lab[X.add[b, c]]:
                return False
        for s in range(ring_size):
            if lab[act[a, s]] != lab[act[b, s]]:
                return False
            if kind == "semiring" and lab[X.mul[s, a]] != lab[X.mul[s, b]]:
                return False
    return True


def keys(cs):
    return sorted(tuple(int(x) for x in c.block_of) for c in cs)


class TestExamples:
    def test_b3_semiring_congruences(self, B3):
        cs = all_congruences(B3, "semiring")
        assert [c.blocks() for c in cs] == [[[0], [1], [2]], [[0], [1, 2]], [[0, 1, 2]]]

    def test_b3_semimodule_congruences(self, B3):
        # {0,1} cannot be a block: acting by 2 separates 0 from 1
        cs = all_congruences(regular_semimodule(B3), "semimodule")
        assert [c.blocks() for c in cs] == [[[0], [1], [2]], [[0], [1, 2]], [[0, 1, 2]]]

    def test_z4_congruences(self, Z4):
        cs = all_congruences(regular_semimodule(Z4), "semimodule")
        assert sorted(c.num_blocks for c in cs) == [1, 2, 4]

    def test_b_principal(self, B):
        assert principal_congruence(B, 0, 1).is_universal()

    def test_generated_is_closed(self, B31):
        theta = generated_congruence(B31, [(1, 2)], "semiring")
        assert theta.blocks() == [[0], [1, 2]]
        assert is_congruence(theta)

    def test_cap(self):
        M = regular_semimodule(parse_spec("Bool 3"))
        with pytest.raises(CongruenceLimitExceeded) as exc:
            list(iter_congruences(M, "semimodule", cap=3))
        assert exc.value.cap == 3


class TestAgainstPartitions:
    @pytest.mark.parametrize("idx", range(len(TINY)))
    def test_all_congruences_match_partition_filter(self, idx):
        S = TINY[idx]
        for X, kind in ((S, "semiring"), (regular_semimodule(S), "semimodule")):
            fast = all_congruences(X, kind)
            slow = congruences_by_partitions(X, kind)
            assert keys(fast) == keys(slow)

    @given(tiny, st.data())
    def test_partition_filter_matches_brute_loops(self, S, data):
        for theta in congruences_by_partitions(S, "semiring"):
            assert brute_is_congruence(S, theta.block_of, "semiring")
        n = S.size
        lab = data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
        theta = Congruence(S, np.array(lab), "semiring")
        assert is_congruence(theta) == brute_is_congruence(S, theta.block_of, "semiring")

    @given(tiny, st.data())
    def test_generated_is_least(self, S, data):
        n = S.size
        pairs = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3))
        theta = generated_congruence(S, pairs, "semiring")
        containing = [c for c in congruences_by_partitions(S, "semiring") if all(c.related(a, b) for a, b in pairs)]
        assert all(theta.refines(c) for c in containing)
        assert theta in containing


class TestLatticeStructure:
    @given(st.sampled_from(POOL))
    def test_joins_stay_inside(self, S):
        cs = all_congruences(S, "semiring")
        assert Congruence.diagonal(S, "semiring") in cs and Congruence.universal(S, "semiring") in cs
        for a, b in itertools.combinations(cs.congruences[:8], 2):
            j = a.join(b)
            assert j in cs
            assert a.refines(j) and b.refines(j)

    @given(relabelled())
    def test_count_is_label_invariant(self, triple):
        S, T, _ = triple
        assert len(all_congruences(S, "semiring")) == len(all_congruences(T, "semiring"))
        assert len(all_congruences(regular_semimodule(S))) == len(all_congruences(regular_semimodule(T)))


class TestDistinguished:
    def test_bourne_needs_subsemimodule(self, B31):
        with pytest.raises(NotASubsemimodule):
            bourne_congruence(regular_semimodule(B31), ElementSubset.of(B31, [0, 1]))

    def test_bourne_of_whole_is_universal(self, B3):
        full = ElementSubset.of(B3, range(3))
        assert bourne_congruence(B3, full).is_universal()
        assert bourne_congruence(B3, ElementSubset.of(B3, [0])).is_diagonal()

    @given(st.sampled_from(POOL))
    def test_bourne_brute(self, S):
        K = distinguished_subset(S, "Iplus")
        theta = bourne_congruence(regular_semimodule(S), K)
        k = K.elements()
        for a, b in itertools.product(range(S.size), repeat=2):
            direct = any(S.add[a, l1] == S.add[b, l2] for l1 in k for l2 in k)
            assert theta.related(a, b) == direct

    @given(st.sampled_from(POOL))
    def test_diamond_quotient_is_idempotent(self, S):
        Q, _ = quotient_by_congruence(S, diamond_congruence(S))
        assert (np.diagonal(Q.add) == np.arange(Q.size)).all()

    def test_diamond_of_ring_is_universal(self, Z4):
        assert diamond_congruence(Z4).is_universal()

    def test_diamond_examples(self, B31, B):
        theta = diamond_congruence(B31)
        assert theta.blocks() == [[0], [1, 2]]
        Q, _ = quotient_by_congruence(B31, theta)
        assert are_isomorphic(Q, B) is not None
        assert diamond_congruence(B).is_diagonal()

    def test_bourne_examples(self, B3, Z4):
        assert bourne_congruence(B3, ElementSubset.of(B3, [0, 2])).is_universal()
        assert bourne_congruence(Z4, ElementSubset.of(Z4, [0, 2])).blocks() == [[0, 2], [1, 3]]

    def test_theta_plus(self, B31, B3, Z4):
        # 0 + 2 = 2 = 2 + 0 and 1 + 2 = 2 + 0, so everything collapses onto 2
        assert theta_plus(B3).is_universal()
        assert theta_plus(B31).is_universal()
        # in a ring the only additive idempotent is 0
        assert theta_plus(Z4).is_diagonal()
        assert theta_plus(parse_spec("Ext Z2")).is_universal()


class TestMatrixLift:
    def test_chi_quotient(self, B3, B):
        M2B3 = matrix_semiring(B3, 2)
        theta = Congruence.from_blocks(B3, [[0], [1, 2]], "semiring")
        Q, _ = quotient_by_congruence(M2B3, chi(theta, 2, M2B3))
        assert are_isomorphic(Q, matrix_semiring(B, 2)) is not None

    def test_chi_entrywise(self, B3):
        theta = Congruence.from_blocks(B3, [[0], [1, 2]], "semiring")
        Theta = chi(theta, 2)
        # 0..80 encode 2x2 matrices in base 3, row major
        for a, b in [(1, 2), (2 * 27 + 1, 2 * 27 + 2), (2 * 27, 1 * 27), (0, 1)]:
            da = [(a // 3 ** (3 - k)) % 3 for k in range(4)]
            db = [(b // 3 ** (3 - k)) % 3 for k in range(4)]
            expect = all(theta.related(x, y) for x, y in zip(da, db))
            assert Theta.related(a, b) == expect
