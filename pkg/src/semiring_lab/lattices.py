"""Finite lattices as join-semilattice modules over the Boolean semifield.

Covers distributivity (with an M3/N5 sublattice witness), join-congruences,
the chain T(M) of elements comparable to everything, the two lattice-side
conditions for End(M) to be CP, endomorphism semirings, down-set lattices of
posets and the decomposition of modules over finite Boolean algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .catalog import boolean_semifield
from .config import get_config
from .congruences import all_congruences
from .core import (
    FiniteSemimodule,
    FiniteSemiring,
    classify,
    quotient_by_congruence,
)
from .errors import (
    BadParams,
    NotALattice,
    NotAPoset,
    NotBooleanBase,
    NotComparable,
    NotDistributive,
    SearchBudgetExceeded,
    SizeCapExceeded,
    Unbounded,
)


class FiniteLattice:
    kind = "lattice"

    def __init__(self, leq, join, meet, bottom, top, labels=None, name=""):
        self.leq = np.array(leq, dtype=bool)
        self.join = np.array(join, dtype=np.int32)
        self.meet = np.array(meet, dtype=np.int32)
        for a in (self.leq, self.join, self.meet):
            a.setflags(write=False)
        self.size = len(self.leq)
        self.bottom = int(bottom)
        self.top = int(top)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(self.size))
        self.name = name

    def __repr__(self):
        return f"<FiniteLattice {self.name or '?'} size={self.size}>"

    def __len__(self):
        return self.size

    def as_semimodule(self) -> FiniteSemimodule:
        B = boolean_semifield()
        action = np.stack([np.full(self.size, self.bottom), np.arange(self.size)], axis=1)
        return FiniteSemimodule(B, self.join, self.bottom, action, self.labels, name=self.name)

    # treated as its join monoid by generic code
    @property
    def add(self):
        return self.join

    @property
    def zero(self):
        return self.bottom


def validate_lattice(leq, labels=None, name="") -> FiniteLattice:
    leq = np.array(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1] or leq.shape[0] == 0:
        raise NotAPoset("order table must be a nonempty square table")
    n = len(leq)
    if not np.diagonal(leq).all():
        raise NotAPoset(f"not reflexive at {int(np.flatnonzero(~np.diagonal(leq))[0])}")
    anti = leq & leq.T & ~np.eye(n, dtype=bool)
    if anti.any():
        raise NotAPoset(f"not antisymmetric at {tuple(int(v) for v in np.argwhere(anti)[0])}")
    li = leq.astype(np.int32)
    trans = ((li @ li) > 0) & ~leq
    if trans.any():
        raise NotAPoset(f"not transitive at {tuple(int(v) for v in np.argwhere(trans)[0])}")
    bottoms = np.flatnonzero(leq.all(axis=1))
    tops = np.flatnonzero(leq.all(axis=0))
    if not len(bottoms) or not len(tops):
        raise Unbounded("the order has no least or no greatest element")
    join = _bound_table(leq, "join")
    meet = _bound_table(leq.T, "meet")
    return FiniteLattice(leq, join, meet, bottoms[0], tops[0], labels, name)


def _bound_table(leq, which):
    """Least upper bounds with respect to ``leq`` (pass ``leq.T`` for meets)."""
    ub = leq[:, None, :] & leq[None, :, :]  # ub[a, b, x]: a <= x and b <= x
    # x is least among ub[a,b] when x <= every other upper bound
    not_below = (~leq).astype(np.int32)  # not_below[x, y]: not x <= y
    misses = ub.astype(np.int32) @ not_below.T  # [a,b,x] = #{y in ub : not x <= y}
    least = ub & (misses == 0)
    has = least.any(axis=2)
    if not has.all():
        a, b = np.argwhere(~has)[0]
        raise NotALattice((int(a), int(b)), which)
    return least.argmax(axis=2)


def lattice_from_join(add, zero, labels=None, name="") -> FiniteLattice:
    """Lattice of a finite join-semilattice with bottom (meets come from the order)."""
    add = np.asarray(add)
    leq = add == np.arange(len(add))[None, :]
    return validate_lattice(leq, labels, name)


def lattice_from_semimodule(M) -> FiniteLattice:
    if not (np.diagonal(M.add) == np.arange(M.size)).all():
        raise BadParams("addition is not idempotent, so there is no join order")
    return lattice_from_join(M.add, M.zero, M.labels, M.name)


def chain(n: int) -> FiniteLattice:
    x = np.arange(n)
    return validate_lattice(x[:, None] <= x[None, :], name=f"C{n}")


def m3() -> FiniteLattice:
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    return validate_lattice(leq, ["0", "a", "b", "c", "1"], "M3")


def n5() -> FiniteLattice:
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    leq[2, 3] = True  # b < c
    return validate_lattice(leq, ["0", "a", "b", "c", "1"], "N5")


def boolean_lattice(k: int) -> FiniteLattice:
    """Subsets of a k-set ordered by inclusion, listed by (size, members)."""
    return downset_lattice(np.eye(k, dtype=bool), name=f"Bool{k}")


def named_lattice(name: str) -> FiniteLattice:
    if name == "M3":
        return m3()
    if name == "N5":
        return n5()
    if name == "B2":
        return boolean_lattice(2)
    if name.startswith("Bool") and name[4:].isdigit():
        return boolean_lattice(int(name[4:]))
    if name.startswith("C") and name[1:].isdigit():
        return chain(int(name[1:]))
    raise BadParams(f"unknown lattice {name!r}")


# ---------------------------------------------------------------------------
# distributivity


def distributivity_failure(L: FiniteLattice):
    """First ``(x, y, z)`` with ``x ^ (y v z) != (x ^ y) v (x ^ z)``, or None."""
    lhs = L.meet[:, L.join]  # [x, y, z]
    rhs = L.join[L.meet[:, :, None], L.meet[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def forbidden_sublattice(L: FiniteLattice):
    """An M3 or N5 sublattice as ``(kind, [bottom, a, b, c, top])``, or None."""
    n = L.size
    leq, J, M = L.leq, L.join, L.meet
    for b, c in itertools.product(range(n), repeat=2):
        if b == c or not leq[b, c]:
            continue
        for a in range(n):
            if leq[a, c] or leq[c, a] or leq[a, b] or leq[b, a]:
                continue
            if J[a, b] == J[a, c] and M[a, b] == M[a, c]:
                return "N5", [int(M[a, b]), a, b, c, int(J[a, b])]
    for a, b, c in itertools.combinations(range(n), 3):
        if leq[a, b] or leq[b, a] or leq[a, c] or leq[c, a] or leq[b, c] or leq[c, b]:
            continue
        if J[a, b] == J[a, c] == J[b, c] and M[a, b] == M[a, c] == M[b, c]:
            return "M3", [int(M[a, b]), a, b, c, int(J[a, b])]
    return None


def is_distributive(L: FiniteLattice):
    """``(True, None)`` or ``(False, (kind, five elements))``."""
    if distributivity_failure(L) is None:
        return True, None
    return False, forbidden_sublattice(L)


# ---------------------------------------------------------------------------
# congruences, T(M) and intervals


def lattice_congruences(L: FiniteLattice, cap=None):
    return all_congruences(L.as_semimodule(), "semimodule", cap)


def quotient_lattice(L: FiniteLattice, theta) -> FiniteLattice:
    Q, _ = quotient_by_congruence(L.as_semimodule(), theta)
    return lattice_from_join(Q.add, Q.zero, Q.labels)


@dataclass
class TChain:
    lattice: FiniteLattice
    members: list


def t_chain(L: FiniteLattice) -> TChain:
    comparable = (L.leq | L.leq.T).all(axis=1)
    members = [int(m) for m in np.flatnonzero(comparable)]
    members.sort(key=lambda m: int(L.leq[:, m].sum()))
    return TChain(L, members)


def interval(L: FiniteLattice, a, b) -> FiniteLattice:
    if not L.leq[a, b]:
        raise NotComparable(f"{L.labels[a]} is not below {L.labels[b]}")
    els = np.flatnonzero(L.leq[a, :] & L.leq[:, b])
    pos = np.full(L.size, -1)
    pos[els] = np.arange(len(els))
    return FiniteLattice(
        L.leq[np.ix_(els, els)],
        pos[L.join[np.ix_(els, els)]],
        pos[L.meet[np.ix_(els, els)]],
        pos[a],
        pos[b],
        [L.labels[x] for x in els],
    )


def is_simple_interval(L: FiniteLattice, a, b) -> bool:
    return interval(L, a, b).size == 2


def _is_b2(I: FiniteLattice) -> bool:
    if I.size != 4:
        return False
    atoms = [x for x in range(4) if x not in (I.bottom, I.top)]
    a, b = atoms
    return not I.leq[a, b] and not I.leq[b, a] and I.join[a, b] == I.top


def theorem59_condition3(L: FiniteLattice) -> bool:
    """Each gap between consecutive T-chain elements is a two-element or a B^2 interval."""
    if distributivity_failure(L) is not None:
        raise NotDistributive(L.name or "lattice")
    return condition3_failure(L) is None


def condition3_failure(L: FiniteLattice):
    T = t_chain(L).members
    for t, u in zip(T, T[1:]):
        I = interval(L, t, u)
        if I.size != 2 and not _is_b2(I):
            return (t, u, I.size)
    return None


def condition2_failure(L: FiniteLattice, cap=None):
    """First join-congruence whose quotient lattice is not distributive, or None."""
    for theta in lattice_congruences(L, cap):
        Q = quotient_lattice(L, theta)
        if distributivity_failure(Q) is not None:
            return theta
    return None


def theorem59_condition2(L: FiniteLattice, cap=None) -> bool:
    return condition2_failure(L, cap) is None


# ---------------------------------------------------------------------------
# endomorphisms


def join_irreducibles(L: FiniteLattice) -> list[int]:
    out = []
    for j in range(L.size):
        if j == L.bottom:
            continue
        below = np.flatnonzero(L.leq[:, j])
        below = below[below != j]
        # j is join-irreducible iff the elements strictly below have a join strictly below j
        acc = L.bottom
        for x in below:
            acc = L.join[acc, x]
        if acc != j:
            out.append(j)
    return out


def _monotone_assignments(L: FiniteLattice, J: list[int]):
    """All order-preserving maps J -> L, as lists aligned with J."""
    out = []
    assign = [0] * len(J)

    def rec(i):
        if i == len(J):
            out.append(list(assign))
            return
        for v in range(L.size):
            if all(L.leq[assign[k], v] for k in range(i) if L.leq[J[k], J[i]]) and all(
                L.leq[v, assign[k]] for k in range(i) if L.leq[J[i], J[k]]
            ):
                assign[i] = v
                rec(i + 1)

    rec(0)
    return out


def endomorphism_maps(L: FiniteLattice) -> np.ndarray:
    """Join- and bottom-preserving self-maps, as rows in lexicographic order."""
    J = sorted(join_irreducibles(L), key=lambda j: (int(L.leq[:, j].sum()), j))
    below = [[k for k, j in enumerate(J) if L.leq[j, x]] for x in range(L.size)]
    maps = []
    cap = get_config().size_cap
    for assign in _monotone_assignments(L, J):
        f = np.empty(L.size, dtype=np.int64)
        for x in range(L.size):
            acc = L.bottom
            for k in below[x]:
                acc = L.join[acc, assign[k]]
            f[x] = acc
        if (f[L.join] == L.join[np.ix_(f, f)]).all():
            maps.append(f)
            if len(maps) > cap:
                raise SizeCapExceeded(f"End({L.name})", len(maps), cap)
    maps = np.array(maps, dtype=np.int64).reshape(-1, L.size)
    order = np.lexsort(maps.T[::-1])
    return maps[order]


def _row_index(maps: np.ndarray, rows: np.ndarray) -> np.ndarray:
    n = maps.shape[1]
    base = max(2, int(maps.max()) + 1)
    if base**n < 2**62:
        w = base ** np.arange(n - 1, -1, -1, dtype=np.int64)
        keys = maps @ w
        return np.searchsorted(keys, rows @ w)
    lookup = {tuple(r): i for i, r in enumerate(maps.tolist())}
    return np.array([lookup[tuple(r)] for r in rows.reshape(-1, n).tolist()]).reshape(rows.shape[:-1])


def semiring_from_maps(maps: np.ndarray, join, zero_map_value, name="") -> FiniteSemiring:
    """Pointwise-join addition and composition ``(f g)(x) = f(g(x))``."""
    N, n = maps.shape
    add = np.empty((N, N), dtype=np.int64)
    mul = np.empty((N, N), dtype=np.int64)
    chunk = max(1, 1_000_000 // max(1, N * n))
    for lo in range(0, N, chunk):
        F = maps[lo : lo + chunk]
        add[lo : lo + chunk] = _row_index(maps, join[F[:, None, :], maps[None, :, :]])
        mul[lo : lo + chunk] = _row_index(maps, F[:, maps])
    zero = int(np.flatnonzero((maps == zero_map_value).all(axis=1))[0])
    one = int(np.flatnonzero((maps == np.arange(n)).all(axis=1))[0])
    labels = ["[" + ",".join(str(int(v)) for v in m) + "]" for m in maps]
    S = FiniteSemiring(add, mul, zero, one, labels, name=name)
    S.maps = maps
    return S


def endomorphism_semiring(L: FiniteLattice) -> FiniteSemiring:
    maps = endomorphism_maps(L)
    S = semiring_from_maps(maps, L.join, L.bottom, name=f"End({L.name})" if L.name else "End")
    S.lattice = L
    return S


def e_ab(L: FiniteLattice, a, b, End: FiniteSemiring | None = None):
    """Index in End(L) of the map sending x to bottom if x <= a and to b otherwise."""
    End = End if End is not None else endomorphism_semiring(L)
    f = np.where(L.leq[:, a], L.bottom, b)
    if not (f[L.join] == L.join[np.ix_(f, f)]).all():
        raise BadParams("e_ab does not preserve joins")  # cannot happen for a lattice
    hit = np.flatnonzero((End.maps == f).all(axis=1))
    return int(hit[0])


def semimodule_endomorphisms(M: FiniteSemimodule, budget=None) -> np.ndarray:
    """All endomorphisms of a semimodule, from images of a generating set."""
    from .projectivity import _all_vectors, greedy_generators

    S = M.ring
    gens = greedy_generators(M)
    g = len(gens)
    budget = get_config().search_budget if budget is None else budget
    if M.size**g > budget:
        raise SearchBudgetExceeded(M.size**g, budget)
    free = _all_vectors(S, g)
    pi = np.full(len(free), M.zero)
    for i, m in enumerate(gens):
        pi = M.add[pi, M.action[m, free[:, i]]]
    out = []
    for images in itertools.product(range(M.size), repeat=g):
        val = np.full(len(free), M.zero)
        for i, y in enumerate(images):
            val = M.add[val, M.action[y, free[:, i]]]
        f = np.full(M.size, -1)
        f[pi] = val
        if (f[pi] != val).any():
            continue
        if (f[M.add] == M.add[np.ix_(f, f)]).all() and (f[M.action] == M.action[f, :]).all():
            out.append(f)
    maps = np.unique(np.array(out, dtype=np.int64), axis=0)
    return maps


def semimodule_endomorphism_semiring(M: FiniteSemimodule) -> FiniteSemiring:
    maps = semimodule_endomorphisms(M)
    return semiring_from_maps(maps, M.add, M.zero, name=f"End({M.name})")


# ---------------------------------------------------------------------------
# posets and down-set lattices


def is_poset(leq) -> bool:
    leq = np.asarray(leq, dtype=bool)
    n = len(leq)
    li = leq.astype(np.int32)
    return bool(
        np.diagonal(leq).all()
        and not (leq & leq.T & ~np.eye(n, dtype=bool)).any()
        and not (((li @ li) > 0) & ~leq).any()
    )


def downset_lattice(P, name="") -> FiniteLattice:
    """Down-sets of a poset ordered by inclusion, listed by (size, members)."""
    P = np.asarray(P, dtype=bool)
    k = len(P)
    if k and not is_poset(P):
        raise NotAPoset("input is not a partial order")
    sets = []
    for bits in range(1 << k):
        members = [i for i in range(k) if bits >> i & 1]
        if all(bits >> j & 1 for i in members for j in range(k) if P[j, i]):
            sets.append((len(members), members, bits))
    sets.sort()
    masks = [b for _, _, b in sets]
    leq = np.array([[(a & ~b) == 0 for b in masks] for a in masks], dtype=bool)
    labels = ["{" + ",".join(str(i) for i in m) + "}" for _, m, _ in sets]
    return validate_lattice(leq, labels, name)


def _canonical_poset(P):
    k = len(P)
    best = None
    for perm in itertools.permutations(range(k)):
        p = list(perm)
        key = P[np.ix_(p, p)].tobytes()
        if best is None or key < best:
            best = key
    return best


def enumerate_posets(k: int) -> list[np.ndarray]:
    """Posets on k points up to isomorphism (each as a naturally labelled order table)."""
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    seen, out = set(), []
    for bits in range(1 << len(pairs)):
        P = np.eye(k, dtype=bool)
        for t, (i, j) in enumerate(pairs):
            if bits >> t & 1:
                P[i, j] = True
        if not is_poset(P):
            continue
        key = _canonical_poset(P)
        if key not in seen:
            seen.add(key)
            out.append(P)
    return out


def enumerate_distributive_lattices(max_poset_size=None, include_trivial=False) -> list[FiniteLattice]:
    """Down-set lattices of all posets with 1..max_poset_size points, one per isomorphism class."""
    max_poset_size = get_config().poset_size if max_poset_size is None else max_poset_size
    out = []
    if include_trivial:
        out.append(downset_lattice(np.zeros((0, 0), dtype=bool), name="C1"))
    for k in range(1, max_poset_size + 1):
        for i, P in enumerate(enumerate_posets(k)):
            out.append(downset_lattice(P, name=f"D{k}.{i}"))
    return out


def enumerate_lattices(max_size: int) -> list[FiniteLattice]:
    """All lattices with 1..max_size elements up to isomorphism (bounds around a poset)."""
    out = [validate_lattice([[True]], name="L1")]
    for inner in range(0, max_size - 1):
        for i, P in enumerate(enumerate_posets(inner)):
            n = inner + 2
            leq = np.zeros((n, n), dtype=bool)
            leq[0, :] = True
            leq[:, n - 1] = True
            leq[1 : n - 1, 1 : n - 1] = P
            try:
                out.append(validate_lattice(leq, name=f"L{n}.{i}"))
            except NotALattice:
                continue
    return out


# ---------------------------------------------------------------------------
# modules over finite Boolean algebras


def boolean_atoms(B: FiniteSemiring) -> list[int]:
    leq = B.add == np.arange(B.size)[None, :]
    return [
        int(a)
        for a in range(B.size)
        if a != B.zero and all(x in (B.zero, a) for x in np.flatnonzero(leq[:, a]))
    ]


def theorem510_decomposition(M: FiniteSemimodule):
    """Atoms of ``B/Ann(M)`` with the lattices ``M a``, as ``(atom, lattice)`` pairs.

    Atoms of the quotient are represented by the atoms of B that do not
    annihilate M.
    """
    B = M.ring
    if not classify(B).finite_boolean_algebra:
        raise NotBooleanBase(f"{B.name or 'base'} is not a finite Boolean algebra")
    out = []
    for a in boolean_atoms(B):
        img = np.unique(M.action[:, a])
        if len(img) == 1 and img[0] == M.zero:
            continue  # a lies in the annihilator
        mask = np.zeros(M.size, dtype=bool)
        mask[img] = True
        els = np.flatnonzero(mask)
        pos = np.full(M.size, -1)
        pos[els] = np.arange(len(els))
        add = pos[M.add[np.ix_(els, els)]]
        if (add < 0).any():
            raise BadParams("M a is not closed under addition")
        L = lattice_from_join(add, pos[M.zero], [M.labels[x] for x in els], name=f"M{B.labels[a]}")
        out.append((a, L))
    return out


def annihilator(M: FiniteSemimodule) -> list[int]:
    return [int(b) for b in range(M.ring.size) if (M.action[:, b] == M.zero).all()]
