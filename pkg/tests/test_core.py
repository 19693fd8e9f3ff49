import itertools

import numpy as np
import pytest
from conftest import POOL, relabelled, small_semirings
from hypothesis import given
from hypothesis import strategies as st

from semiring_lab.catalog import ext, parse_spec, zmod
from semiring_lab.congruences import Congruence, all_congruences
from semiring_lab.core import (
    FiniteSemiring,
    classify,
    corner_semiring,
    direct_sum,
    distinguished_subset,
    is_two_sided_ideal,
    matrix_semiring,
    opposite,
    quotient_by_congruence,
    regular_semimodule,
    semiring_violation,
    subsemimodules,
    subsemimodules_by_subsets,
    trivial_semiring,
    validate_semimodule,
    validate_semiring,
)
from semiring_lab.enumeration import are_isomorphic
from semiring_lab.errors import (
    AxiomViolation,
    KindMismatch,
    NotIdempotent,
    ShapeError,
    SizeCapExceeded,
    ZeroIdempotent,
)
from semiring_lab.projectivity import peirce_decompositions

B_ADD = [[0, 1], [1, 1]]
B_MUL = [[0, 0], [0, 1]]


def brute_laws(add, mul, zero, one):
    """Plain-loop check of every semiring law."""
    n = len(add)
    r = range(n)
    for a, b, c in itertools.product(r, r, r):
        if add[add[a][b]][c] != add[a][add[b][c]] or mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            return False
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] or mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
            return False
    for a, b in itertools.product(r, r):
        if add[a][b] != add[b][a]:
            return False
    for a in r:
        if add[zero][a] != a or mul[one][a] != a or mul[a][one] != a or mul[zero][a] != zero or mul[a][zero] != zero:
            return False
    return n == 1 or zero != one


class TestValidation:
    def test_boolean_semifield_valid(self):
        S = validate_semiring(2, B_ADD, B_MUL, 0, 1)
        assert S.size == 2 and S.zero == 0 and S.one == 1

    def test_trivial_semiring_valid(self):
        S = validate_semiring(1, [[0]], [[0]], 0, 0)
        assert S.size == 1

    def test_broken_unit_law(self):
        with pytest.raises(AxiomViolation) as exc:
            validate_semiring(2, B_ADD, [[0, 0], [0, 0]], 0, 1)
        assert exc.value.axiom == "identity"

    def test_broken_distributivity_names_law_and_triple(self):
        S = parse_spec("B3")
        mul = S.mul.copy()
        mul[2, 2] = 1  # 2*(1+2) = 2*2 = 1 but 2*1 + 2*2 = 2 + 1 = 2
        with pytest.raises(AxiomViolation) as exc:
            validate_semiring(3, S.add, mul, 0, 1)
        assert exc.value.axiom in ("mul_assoc", "left_distrib", "right_distrib")
        assert len(exc.value.witness) == 3

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            validate_semiring(2, [[0, 1]], B_MUL, 0, 1)
        with pytest.raises(ShapeError):
            validate_semiring(2, [[0, 1], [1, 2]], B_MUL, 0, 1)
        with pytest.raises(ShapeError):
            validate_semiring(2, B_ADD, B_MUL, 0, 5)

    def test_zero_equal_one_rejected(self):
        with pytest.raises(AxiomViolation):
            validate_semiring(2, [[0, 1], [1, 1]], [[0, 0], [0, 0]], 0, 0)

    @given(st.integers(0, 3**9 - 1))
    def test_validator_agrees_with_brute_force(self, code):
        # random 3-element multiplications on the max monoid, checked two ways
        mul = np.array([(code // 3**k) % 3 for k in range(9)]).reshape(3, 3)
        add = np.maximum.outer(np.arange(3), np.arange(3))
        for one in (1, 2):
            ok = brute_laws(add.tolist(), mul.tolist(), 0, one)
            assert (semiring_violation(add, mul, 0, one) is None) == ok

    def test_semimodule_examples(self, B, B3):
        M = validate_semimodule(B, 2, B_ADD, 0, [[0, 0], [0, 1]])
        assert M.size == 2
        # {0,2} inside B3 with the inherited action, relabelled 0,1
        N = validate_semimodule(B3, 2, [[0, 1], [1, 1]], 0, [[0, 0, 0], [0, 1, 1]])
        assert N.size == 2
        with pytest.raises(AxiomViolation) as exc:
            validate_semimodule(B, 2, B_ADD, 0, [[0, 0], [0, 0]])
        assert exc.value.axiom == "unit"

    def test_semimodule_action_range(self, B):
        with pytest.raises(ShapeError):
            validate_semimodule(B, 2, B_ADD, 0, [[0, 0], [0, 7]])


class TestConstructions:
    def test_regular_semimodule(self, B, B3):
        assert regular_semimodule(B).size == 2
        assert regular_semimodule(B3).size == 3
        assert np.array_equal(regular_semimodule(B3).action, B3.mul)
        assert regular_semimodule(trivial_semiring()).size == 1

    def test_catalog_tables(self, B3, B31):
        assert B3.size == 3
        assert np.array_equal(B3.add, np.maximum.outer(np.arange(3), np.arange(3)))
        assert B3.mul[1, 2] == 2 and B3.mul[2, 2] == 2
        a = np.arange(3)
        assert np.array_equal(B31.add, np.minimum(2, a[:, None] + a[None, :]))
        assert np.array_equal(B31.mul, np.minimum(2, a[:, None] * a[None, :]))

    def test_ext_z2(self):
        E = parse_spec("Ext Z2")
        assert E.size == 4
        inf = 3
        assert all(E.add[x, inf] == inf for x in range(4))
        assert E.mul[0, inf] == 0 and E.mul[inf, 0] == 0

    def test_matrix_sizes(self, B):
        assert matrix_semiring(B, 2).size == 16
        assert are_isomorphic(matrix_semiring(B, 1), B) is not None
        assert matrix_semiring(B, 3).size == 512

    def test_matrix_multiplication_brute_force(self):
        S = parse_spec("B31")
        T = matrix_semiring(S, 2)
        rng = np.random.default_rng(0)
        q = S.size
        for a, b in rng.integers(0, T.size, size=(30, 2)):
            A = [(a // q ** (3 - k)) % q for k in range(4)]
            Bm = [(b // q ** (3 - k)) % q for k in range(4)]
            C = []
            for i in range(2):
                for j in range(2):
                    acc = 0
                    for k in range(2):
                        acc = S.add[acc, S.mul[A[2 * i + k], Bm[2 * k + j]]]
                    C.append(int(acc))
            code = sum(c * q ** (3 - k) for k, c in enumerate(C))
            assert T.mul[a, b] == code

    def test_matrix_cap(self, B):
        with pytest.raises(SizeCapExceeded):
            matrix_semiring(B, 4, cap=4096)

    def test_direct_sum(self, B):
        S = direct_sum(B, B)
        assert S.size == 4
        assert classify(S).finite_boolean_algebra
        T = direct_sum(parse_spec("Z2"), B)
        assert distinguished_subset(T, "V").elements() == [0, 2]  # (x, 0)
        assert are_isomorphic(direct_sum(trivial_semiring(), parse_spec("B3")), parse_spec("B3")) is not None

    def test_corner(self, M2B, B):
        assert M2B.same_tables(corner_semiring(M2B, M2B.one)) or corner_semiring(M2B, M2B.one).size == 16
        E11 = 8  # row-major [[1,0],[0,0]]
        brute = sorted({int(M2B.mul[M2B.mul[E11, s], E11]) for s in range(16)})
        C = corner_semiring(M2B, E11)
        assert C.size == len(brute) == 2
        assert are_isomorphic(C, B) is not None
        with pytest.raises(NotIdempotent):
            corner_semiring(parse_spec("Z4"), 2)
        with pytest.raises(ZeroIdempotent):
            corner_semiring(B, 0)

    def test_opposite(self, M2B):
        S = parse_spec("B3")
        assert opposite(S).same_tables(S)
        assert opposite(opposite(M2B)).same_tables(M2B)
        assert np.array_equal(opposite(M2B).mul, M2B.mul.T)


class TestQuotients:
    def test_b3_quotient(self, B3, B):
        theta = Congruence.from_blocks(B3, [[0], [1, 2]], "semiring")
        Q, proj = quotient_by_congruence(B3, theta)
        assert Q.size == 2 and are_isomorphic(Q, B) is not None
        assert list(proj) == [0, 1, 1]

    @given(small_semirings)
    def test_round_trip(self, S):
        Q, _ = quotient_by_congruence(S, Congruence.diagonal(S, "semiring"))
        assert are_isomorphic(Q, S) is not None
        U, _ = quotient_by_congruence(S, Congruence.universal(S, "semiring"))
        assert U.size == 1

    def test_kind_mismatch(self, B3):
        theta = Congruence.diagonal(regular_semimodule(B3), "semimodule")
        with pytest.raises(KindMismatch):
            quotient_by_congruence(B3, theta)

    @given(small_semirings, st.data())
    def test_quotients_satisfy_axioms(self, S, data):
        cs = all_congruences(S, "semiring").congruences
        theta = data.draw(st.sampled_from(cs))
        Q, _ = quotient_by_congruence(S, theta)
        assert semiring_violation(Q.add, Q.mul, Q.zero, Q.one) is None


class TestSubsets:
    def test_examples(self, B31, B3):
        assert distinguished_subset(B31, "Iplus").elements() == [0, 2]
        assert distinguished_subset(zmod(4), "V").elements() == [0, 1, 2, 3]
        assert distinguished_subset(B3, "Itimes").elements() == [0, 1, 2]
        with pytest.raises(KindMismatch):
            distinguished_subset(regular_semimodule(B3), "Itimes")

    @given(small_semirings)
    def test_distinguished_subsets_are_ideals(self, S):
        for which in ("Iplus", "Z", "V"):
            K = distinguished_subset(S, which)
            assert is_two_sided_ideal(S, K.members), which

    @given(small_semirings)
    def test_subsemimodules_match_subset_scan(self, S):
        M = regular_semimodule(S)
        fast = sorted(tuple(K.elements()) for K in subsemimodules(M))
        slow = sorted(tuple(K.elements()) for K in subsemimodules_by_subsets(M))
        assert fast == slow


class TestClassify:
    def test_b3_gelfand_counterexample(self, B3):
        rep = classify(B3)
        assert not rep.gelfand_right
        s = rep.witnesses["gelfand_right"]
        a = B3.add[B3.one, s]
        assert not (B3.mul[a, :] == B3.one).any()

    def test_b3_anti_bounded(self, B3):
        rep = classify(B3)
        assert rep.anti_bounded
        assert rep.witnesses["anti_bounded"]["V"] == [0]
        assert rep.witnesses["anti_bounded"]["one_plus"] == [1, 2]

    def test_b31_not_right_subtractive(self, B31):
        rep = classify(B31)
        assert not rep.right_subtractive
        w = rep.witnesses["right_subtractive"]
        K = w["K"]
        m, m2 = w["m"], w["m_prime"]
        assert K == [0, 2]
        assert m in K and B31.add[m, m2] in K and m2 not in K

    def test_ext_z2_zeroic(self):
        assert classify(parse_spec("Ext Z2")).zeroic

    def test_pi_regularity_witness(self):
        for S in POOL:
            rep = classify(S)
            if rep.additively_pi_regular:
                n, y = rep.witnesses["additively_pi_regular"]["n"], rep.witnesses["additively_pi_regular"]["y"]
                n1 = S.zero
                for _ in range(n):
                    n1 = S.add[n1, S.one]
                assert S.add[S.add[n1, y], n1] == n1

    @given(small_semirings)
    def test_rings_are_not_zerosumfree(self, S):
        rep = classify(S)
        if rep.ring and S.size > 1:
            assert not rep.zerosumfree

    @given(small_semirings)
    def test_true_flags_have_witnesses(self, S):
        rep = classify(S)
        for name, value in rep.flags.items():
            assert rep.witnesses[name] is not None or name in ("right_subtractive", "left_subtractive")

    def test_boolean_algebra_flag(self):
        assert classify(parse_spec("Bool 3")).finite_boolean_algebra
        assert classify(parse_spec("B")).finite_boolean_algebra
        assert not classify(parse_spec("B3")).finite_boolean_algebra
        assert not classify(parse_spec("Z2")).finite_boolean_algebra

    @pytest.mark.parametrize("spec", ["Z2", "Z3", "Z4", "Z6", "GF4", "Mat Z2 2", "Sum Z2 Z3"])
    def test_ext_is_anti_bounded_and_zerosumfree(self, spec):
        rep = classify(ext(parse_spec(spec)))
        assert rep.anti_bounded and rep.zerosumfree


class TestPeirce:
    @given(small_semirings)
    def test_peirce_pairs_split(self, S):
        for e, f in peirce_decompositions(S):
            Ce = corner_semiring(S, e, allow_zero=True)
            Cf = corner_semiring(S, f, allow_zero=True)
            assert are_isomorphic(direct_sum(Ce, Cf), S) is not None

    @given(relabelled())
    def test_relabelled_copies_stay_valid(self, triple):
        S, T, _ = triple
        assert semiring_violation(T.add, T.mul, T.zero, T.one) is None
        assert classify(S).flags == classify(T).flags


def test_semiring_rejects_nonsquare_labels():
    with pytest.raises(ShapeError):
        FiniteSemiring(B_ADD, B_MUL, 0, 1, labels=["a"])
