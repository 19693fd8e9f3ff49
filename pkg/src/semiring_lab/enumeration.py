"""Isomorphism testing, canonical forms and small-structure enumeration.

Isomorphisms always fix zero, and fix one for semirings. Both the
backtracking isomorphism search and the canonical form only move elements
within classes of equal invariants, which is exact because every invariant
used here is preserved by isomorphisms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .config import get_config
from .core import FiniteSemimodule, FiniteSemiring, semiring_violation
from .errors import SizeCapExceeded


def _orbit_shape(op, x):
    """(index, period) of the sequence x, x*x, x*x*x, ... under a binary op."""
    seen = {}
    cur, k = x, 0
    while cur not in seen:
        seen[cur] = k
        cur = int(op[cur, x])
        k += 1
    return seen[cur], k - seen[cur]


def _kind(X):
    if isinstance(X, FiniteSemiring):
        return "semiring"
    if isinstance(X, FiniteSemimodule):
        return "semimodule"
    return "lattice" if getattr(X, "kind", None) == "lattice" else "monoid"


def _tables(X):
    """Binary tables and fixed constants that an isomorphism must respect."""
    k = _kind(X)
    if k == "semiring":
        return [X.add, X.mul], [X.zero, X.one], None
    if k == "semimodule":
        return [X.add], [X.zero], X.action
    if k == "lattice":
        return [X.join], [X.bottom], None
    return [X.add], [X.zero], None


def invariants(X) -> list[tuple]:
    """Per-element isomorphism invariants."""
    tables, consts, action = _tables(X)
    n = X.size
    idx = np.arange(n)
    cols = []
    for T in tables:
        cols.append(np.diagonal(T) == idx)
        cols.append((T == idx[:, None]).sum(axis=1))  # x*y = x
        cols.append((T == idx[None, :]).sum(axis=1))  # x*y = y
        cols.append((T == consts[0]).sum(axis=1))
        cols.append((T.T == consts[0]).sum(axis=1))
        orb = [_orbit_shape(T, x) for x in range(n)]
        cols.append(np.array([o[0] for o in orb]))
        cols.append(np.array([o[1] for o in orb]))
        cols.append((T == T.T).sum(axis=1))
    if action is not None:
        # the ring is fixed, so which scalars kill x or fix x is invariant
        cols.append(_row_codes(action == consts[0]))
        cols.append(_row_codes(action == idx[:, None]))
    tag = [-1] * n
    for i, c in enumerate(consts):
        if tag[c] == -1:
            tag[c] = i
    return [(tag[x],) + tuple(int(c[x]) for c in cols) for x in range(n)]


def _row_codes(mask):
    # rank of each boolean row among the distinct rows
    _, codes = np.unique(mask, axis=0, return_inverse=True)
    return codes.ravel()


def _check_iso(A, B, f) -> bool:
    f = np.asarray(f)
    ta, ca, aa = _tables(A)
    tb, cb, ab = _tables(B)
    if any(f[x] != y for x, y in zip(ca, cb)):
        return False
    for T, U in zip(ta, tb):
        if not np.array_equal(f[T], U[np.ix_(f, f)]):
            return False
    if aa is not None and not np.array_equal(f[aa], ab[f, :]):
        return False
    return len(np.unique(f)) == A.size


def are_isomorphic(A, B):
    """A witness bijection (numpy array, ``f[a] = b``) or None."""
    if _kind(A) != _kind(B) or A.size != B.size:
        return None
    if _kind(A) == "semimodule" and A.ring.size != B.ring.size:
        return None
    ta, ca, aa = _tables(A)
    tb, cb, ab = _tables(B)
    if _kind(A) == "semimodule" and not (np.array_equal(A.ring.add, B.ring.add) and np.array_equal(A.ring.mul, B.ring.mul)):
        return None
    ia, ib = invariants(A), invariants(B)
    if sorted(ia) != sorted(ib):
        return None
    n = A.size
    cands = [[y for y in range(n) if ib[y] == ia[x]] for x in range(n)]
    f = [-1] * n
    g = [-1] * n
    ring_n = A.ring.size if aa is not None else 0

    def assign(x, y, trail):
        stack = [(x, y)]
        while stack:
            x, y = stack.pop()
            if f[x] != -1:
                if f[x] != y:
                    return False
                continue
            if g[y] != -1 or ia[x] != ib[y]:
                return False
            f[x], g[y] = y, x
            trail.append(x)
            for z in list(trail):
                w = f[z]
                for T, U in zip(ta, tb):
                    stack.append((int(T[x, z]), int(U[y, w])))
                    stack.append((int(T[z, x]), int(U[w, y])))
            for s in range(ring_n):
                stack.append((int(aa[x, s]), int(ab[y, s])))
        return True

    def undo(trail, mark):
        while len(trail) > mark:
            x = trail.pop()
            g[f[x]] = -1
            f[x] = -1

    trail: list[int] = []
    for x, y in zip(ca, cb):
        if not assign(x, y, trail):
            return None

    def rec():
        free = [x for x in range(n) if f[x] == -1]
        if not free:
            return True
        x = min(free, key=lambda v: (len(cands[v]), v))
        for y in cands[x]:
            if g[y] != -1:
                continue
            mark = len(trail)
            if assign(x, y, trail) and rec():
                return True
            undo(trail, mark)
        return False

    if not rec():
        return None
    out = np.array(f)
    if not _check_iso(A, B, out):
        raise AssertionError("isomorphism search produced a non-isomorphism")
    return out


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True)
class CanonicalForm:
    kind: str
    size: int
    data: bytes


def _cells(X):
    inv = invariants(X)
    keys = sorted(set(inv))
    return [[x for x in range(X.size) if inv[x] == k] for k in keys]


def canonical_form(X, budget=None) -> CanonicalForm:
    """Lexicographically least flattened tables over invariant-respecting relabelings."""
    budget = get_config().search_budget if budget is None else budget
    cells = _cells(X)
    count = math.prod(math.factorial(len(c)) for c in cells)
    if count > budget:
        raise SizeCapExceeded("canonical form relabelings", count, budget)
    tables, _, action = _tables(X)
    n = X.size
    best = None
    # new label i is given to old element p[i]
    cell_perms = [list(itertools.permutations(c)) for c in cells]
    perms = np.array([sum(map(list, choice), []) for choice in itertools.product(*cell_perms)], dtype=np.int64)
    for lo in range(0, len(perms), 4096):
        P = perms[lo : lo + 4096]
        inv = np.empty_like(P)
        inv[np.arange(len(P))[:, None], P] = np.arange(n)[None, :]
        parts = []
        for T in tables:
            rel = T[P[:, :, None], P[:, None, :]]  # old results
            parts.append(np.take_along_axis(inv, rel.reshape(len(P), -1), axis=1))
        if action is not None:
            rel = action[P]  # (k, n, s)
            parts.append(np.take_along_axis(inv, rel.reshape(len(P), -1), axis=1))
        flat = np.concatenate(parts, axis=1)
        order = np.lexsort(flat.T[::-1])
        cand = flat[order[0]]
        if best is None or tuple(cand) < tuple(best):
            best = cand
    return CanonicalForm(_kind(X), n, np.asarray(best, dtype=np.int16).tobytes())


# ---------------------------------------------------------------------------
# commutative monoids


@dataclass(eq=False)
class Monoid:
    """A commutative monoid table with identity 0 (used as an enumeration record)."""

    add: np.ndarray
    kind = "monoid"

    @property
    def size(self):
        return len(self.add)

    @property
    def zero(self):
        return 0


def _partial_assoc_ok(T):
    """No violated associativity among fully defined triples of a partial table (-1 = unset)."""
    n = len(T)
    ab = T[:, :, None].repeat(n, 2)  # a+b
    bc = T[None, :, :].repeat(n, 0)  # b+c
    defined = (ab >= 0) & (bc >= 0)
    lhs = np.where(defined, T[np.clip(ab, 0, None), np.arange(n)[None, None, :]], -1)
    rhs = np.where(defined, T[np.arange(n)[:, None, None], np.clip(bc, 0, None)], -1)
    both = (lhs >= 0) & (rhs >= 0)
    return not (both & (lhs != rhs)).any()


def _monoid_tables(n):
    if n == 1:
        yield np.zeros((1, 1), dtype=np.int64)
        return
    T = -np.ones((n, n), dtype=np.int64)
    T[0, :] = np.arange(n)
    T[:, 0] = np.arange(n)
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]

    def rec(k):
        if k == len(cells):
            yield T.copy()
            return
        i, j = cells[k]
        for v in range(n):
            T[i, j] = T[j, i] = v
            if _partial_assoc_ok(T):
                yield from rec(k + 1)
        T[i, j] = T[j, i] = -1

    yield from rec(0)


def enumerate_commutative_monoids(n: int, cap=None) -> list[Monoid]:
    cap = get_config().monoid_order if cap is None else cap
    if n > cap:
        raise SizeCapExceeded("commutative monoid order", n, cap)
    seen, out = {}, []
    for T in _monoid_tables(n):
        M = Monoid(T)
        key = canonical_form(M)
        if key not in seen:
            seen[key] = M
            out.append((key.data, M))
    out.sort(key=lambda p: p[0])
    return [M for _, M in out]


def _orbit_min(tables, n, fixed):
    """Least relabelled table bytes over all permutations fixing ``fixed`` points."""
    movable = [x for x in range(n) if x not in fixed]
    best = None
    for perm in itertools.permutations(movable):
        p = np.arange(n)
        p[movable] = perm  # old element x gets new label p[x]
        parts = []
        for T in tables:
            R = np.empty_like(T)
            R[np.ix_(p, p)] = p[T]
            parts.append(R.ravel())
        key = np.concatenate(parts).tobytes()
        if best is None or key < best:
            best = key
    return best


def naive_monoid_count(n: int) -> int:
    """Count classes by generating every table with identity 0 and merging permutation orbits."""
    if n == 1:
        return 1
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    classes = set()
    for values in itertools.product(range(n), repeat=len(cells)):
        T = np.empty((n, n), dtype=np.int64)
        T[0, :] = np.arange(n)
        T[:, 0] = np.arange(n)
        for (i, j), v in zip(cells, values):
            T[i, j] = T[j, i] = v
        # associativity: (a+b)+c == a+(b+c)
        lhs = T[T[:, :, None], np.arange(n)[None, None, :]]
        rhs = T[np.arange(n)[:, None, None], T[None, :, :]]
        if (lhs == rhs).all():
            classes.add(_orbit_min([T], n, {0}))
    return len(classes)


# ---------------------------------------------------------------------------
# semirings


def _partial_semiring_ok(A, M):
    """Check associativity of M and both distributive laws where M is defined (-1 = unset)."""
    n = len(A)
    ar = np.arange(n)
    # associativity
    ab = M[:, :, None].repeat(n, 2)
    bc = M[None, :, :].repeat(n, 0)
    lhs = np.where(ab >= 0, M[np.clip(ab, 0, None), ar[None, None, :]], -1)
    rhs = np.where(bc >= 0, M[ar[:, None, None], np.clip(bc, 0, None)], -1)
    if ((lhs >= 0) & (rhs >= 0) & (lhs != rhs)).any():
        return False
    # a(b+c) = ab + ac
    l1 = M[ar[:, None, None], A[None, :, :]]
    mb = M[:, :, None].repeat(n, 2)
    mc = M[:, None, :].repeat(n, 1)
    r1 = np.where((mb >= 0) & (mc >= 0), A[np.clip(mb, 0, None), np.clip(mc, 0, None)], -1)
    if ((l1 >= 0) & (r1 >= 0) & (l1 != r1)).any():
        return False
    # (b+c)a = ba + ca
    l2 = M[A[:, :, None], ar[None, None, :]]  # [b, c, a]
    ba = M[:, None, :].repeat(n, 1)  # [b, c, a] -> M[b, a]
    ca = M[None, :, :].repeat(n, 0)  # [b, c, a] -> M[c, a]
    r2 = np.where((ba >= 0) & (ca >= 0), A[np.clip(ba, 0, None), np.clip(ca, 0, None)], -1)
    if ((l2 >= 0) & (r2 >= 0) & (l2 != r2)).any():
        return False
    return True


def _mul_tables(A, u):
    """All multiplications on the additive monoid A with 0 absorbing and unit u."""
    n = len(A)
    M = -np.ones((n, n), dtype=np.int64)
    M[0, :] = 0
    M[:, 0] = 0
    M[u, :] = np.arange(n)
    M[:, u] = np.arange(n)
    M[0, u] = M[u, 0] = 0
    others = [x for x in range(1, n) if x != u]
    cells = [(i, j) for i in others for j in others]
    if not _partial_semiring_ok(A, M):
        return

    def rec(k):
        if k == len(cells):
            yield M.copy()
            return
        i, j = cells[k]
        for v in range(n):
            M[i, j] = v
            if _partial_semiring_ok(A, M):
                yield from rec(k + 1)
        M[i, j] = -1

    yield from rec(0)


def enumerate_semirings(n: int, cap=None) -> list[FiniteSemiring]:
    """Semirings of order n up to isomorphism, ordered by canonical form."""
    cap = get_config().semiring_order if cap is None else cap
    if n > cap:
        raise SizeCapExceeded("semiring order", n, cap)
    if n == 1:
        return [FiniteSemiring([[0]], [[0]], 0, 0, name="S1.0")]
    seen = {}
    for mon in enumerate_commutative_monoids(n, cap=max(n, get_config().monoid_order)):
        A = mon.add
        for u in range(1, n):
            for M in _mul_tables(A, u):
                if semiring_violation(A, M, 0, u) is not None:
                    continue
                S = FiniteSemiring(A, M, 0, u)
                key = canonical_form(S)
                if key not in seen:
                    seen[key] = S
    out = sorted(seen.items(), key=lambda kv: kv[0].data)
    return [FiniteSemiring(S.add, S.mul, S.zero, S.one, name=f"S{n}.{i}") for i, (_, S) in enumerate(out)]


def naive_semiring_count(n: int) -> int:
    """Generate every (add, mul) pair with 0 at index 0, filter the axioms, merge orbits."""
    if n == 1:
        return 1
    add_cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    classes = set()
    for avals in itertools.product(range(n), repeat=len(add_cells)):
        A = np.empty((n, n), dtype=np.int64)
        A[0, :] = np.arange(n)
        A[:, 0] = np.arange(n)
        for (i, j), v in zip(add_cells, avals):
            A[i, j] = A[j, i] = v
        for u in range(1, n):
            free = [(i, j) for i in range(1, n) for j in range(1, n) if i != u and j != u]
            for mvals in itertools.product(range(n), repeat=len(free)):
                M = np.zeros((n, n), dtype=np.int64)
                M[u, :] = np.arange(n)
                M[:, u] = np.arange(n)
                M[0, :] = 0
                M[:, 0] = 0
                for (i, j), v in zip(free, mvals):
                    M[i, j] = v
                if semiring_violation(A, M, 0, u) is None:
                    classes.add(_semiring_orbit_min(A, M, u, n))
    return len(classes)


def _semiring_orbit_min(A, M, u, n):
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = np.concatenate([[0], perm])
        RA = np.empty_like(A)
        RM = np.empty_like(M)
        RA[np.ix_(p, p)] = p[A]
        RM[np.ix_(p, p)] = p[M]
        key = bytes([int(p[u])]) + RA.tobytes() + RM.tobytes()
        if best is None or key < best:
            best = key
    return best
