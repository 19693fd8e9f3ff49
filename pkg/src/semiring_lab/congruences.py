"""Congruences on finite semirings and semimodules.

A congruence is stored as ``block_of``: each element maps to the smallest
element of its block. Generation uses the closed form of unary polynomials:
on a right semimodule they are ``x -> x*s + c``, on a semiring
``x -> s*x*t + c``, so the congruence generated by a set of pairs is the
equivalence closure of their images under those maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .config import get_config
from .core import (
    ElementSubset,
    FiniteSemiring,
    is_subsemimodule,
    matrix_entries,
    encode_matrices,
    regular_semimodule,
    distinguished_subset,
)
from .errors import CongruenceLimitExceeded, InternalError, KindMismatch, NotASubsemimodule


def canonical_blocks(labels) -> np.ndarray:
    """Relabel any partition vector so each block id is its smallest member."""
    labels = np.asarray(labels)
    n = len(labels)
    _, comp = np.unique(labels, return_inverse=True)
    first = np.full(comp.max() + 1 if n else 0, n, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(n))
    out = first[comp].astype(np.int32)
    out.setflags(write=False)
    return out


def _components(n, xs, ys) -> np.ndarray:
    if len(xs) == 0:
        return np.arange(n)
    g = coo_matrix((np.ones(len(xs), dtype=np.int8), (xs, ys)), shape=(n, n))
    return connected_components(g, directed=False)[1]


def _kind_of(X, kind):
    if kind is None:
        kind = "semiring" if isinstance(X, FiniteSemiring) else "semimodule"
    if kind not in ("semiring", "semimodule"):
        raise KindMismatch(f"unknown congruence kind {kind!r}")
    if kind == "semiring" and not isinstance(X, FiniteSemiring):
        raise KindMismatch("semiring congruences live on semirings")
    return kind


def _action(X):
    """Right action table of X viewed as a right module over its ring (or itself)."""
    return X.mul if isinstance(X, FiniteSemiring) else X.action


@dataclass(frozen=True, eq=False)
class Congruence:
    parent: object
    block_of: np.ndarray
    kind: str = "semimodule"

    def __post_init__(self):
        object.__setattr__(self, "block_of", canonical_blocks(self.block_of))

    @classmethod
    def diagonal(cls, X, kind=None):
        return cls(X, np.arange(X.size), _kind_of(X, kind))

    @classmethod
    def universal(cls, X, kind=None):
        return cls(X, np.zeros(X.size, dtype=int), _kind_of(X, kind))

    @classmethod
    def from_blocks(cls, X, blocks, kind=None):
        lab = np.full(X.size, -1)
        for i, b in enumerate(blocks):
            lab[list(b)] = i
        if (lab < 0).any():
            raise ValueError("blocks do not cover the carrier")
        return cls(X, lab, _kind_of(X, kind))

    @property
    def key(self) -> bytes:
        return self.block_of.tobytes()

    def __eq__(self, other):
        return isinstance(other, Congruence) and self.kind == other.kind and np.array_equal(self.block_of, other.block_of)

    def __hash__(self):
        return hash((self.kind, self.key))

    def __repr__(self):
        return f"Congruence({self.blocks()})"

    @property
    def num_blocks(self) -> int:
        return int(len(np.unique(self.block_of)))

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, b in enumerate(self.block_of):
            out.setdefault(int(b), []).append(x)
        return [out[k] for k in sorted(out)]

    def related(self, a, b) -> bool:
        return self.block_of[a] == self.block_of[b]

    def is_diagonal(self) -> bool:
        return bool((self.block_of == np.arange(len(self.block_of))).all())

    def is_universal(self) -> bool:
        return bool((self.block_of == 0).all())

    def refines(self, other) -> bool:
        """True when every block of self lies inside a block of other."""
        return bool((other.block_of == other.block_of[self.block_of]).all())

    def join(self, other) -> "Congruence":
        n = len(self.block_of)
        idx = np.arange(n)
        xs = np.concatenate([idx, idx])
        ys = np.concatenate([self.block_of, other.block_of])
        return Congruence(self.parent, _components(n, xs, ys), self.kind)

    def to_dict(self):
        return {"blocks": self.blocks()}


def unary_maps(X, kind=None) -> np.ndarray:
    """Basic translations as rows of a (k, n) array, deduplicated."""
    kind = _kind_of(X, kind)
    rows = [X.add, _action(X).T]
    if kind == "semiring":
        rows.append(X.mul)
    return np.unique(np.concatenate(rows, axis=0), axis=0)


def compatibility_violation(theta: Congruence, X=None, kind=None):
    """First ``(x, map_row)`` where theta fails to be compatible, or None."""
    X = X or theta.parent
    kind = kind or theta.kind
    U = unary_maps(X, kind)
    b = theta.block_of
    bad = np.argwhere(b[U] != b[U[:, b]])
    if len(bad):
        return int(bad[0][1]), int(bad[0][0])
    return None


def is_congruence(theta: Congruence, X=None, kind=None) -> bool:
    return compatibility_violation(theta, X, kind) is None


def _closure_labels(X, kind, xs, ys):
    """Block labels of the congruence generated by the pairs ``(xs[i], ys[i])``."""
    n = X.size
    xs = np.asarray(xs, dtype=np.int64).ravel()
    ys = np.asarray(ys, dtype=np.int64).ravel()
    keep = xs != ys
    xs, ys = xs[keep], ys[keep]
    if not len(xs):
        return np.arange(n)
    act = _action(X)
    # multiplicative images: (a s, b s) or (s a t, s b t)
    if kind == "semimodule":
        u, v = act[xs, :], act[ys, :]
    else:
        u = X.mul[X.mul[:, xs].T, :]  # (pairs, s, t) = s*a*t
        v = X.mul[X.mul[:, ys].T, :]
    lab = _components(n, u.ravel(), v.ravel())
    # a spanning set of that equivalence, then additive translates
    first = _first_of_label(lab)
    span = np.flatnonzero(np.arange(n) != first)
    if not len(span):
        return lab
    roots = first[span]
    tx = X.add[:, span]
    ty = X.add[:, roots]
    return _components(n, tx.ravel(), ty.ravel())


def _first_of_label(lab):
    n = len(lab)
    first = np.full(lab.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, lab, np.arange(n))
    return first[lab]


def generated_congruence(X, pairs: Iterable[tuple[int, int]], kind=None) -> Congruence:
    kind = _kind_of(X, kind)
    pairs = list(pairs)
    for a, b in pairs:
        if not (0 <= a < X.size and 0 <= b < X.size):
            raise IndexError(f"pair {(a, b)} out of range")
    if not pairs:
        return Congruence.diagonal(X, kind)
    arr = np.array(pairs, dtype=np.int64)
    return Congruence(X, _closure_labels(X, kind, arr[:, 0], arr[:, 1]), kind)


def principal_congruence(X, a, b, kind=None) -> Congruence:
    return generated_congruence(X, [(a, b)], kind)


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class CongruenceSet:
    parent: object
    congruences: list = field(default_factory=list)
    complete: bool = True

    def __len__(self):
        return len(self.congruences)

    def __iter__(self):
        return iter(self.congruences)

    def __contains__(self, theta):
        return any(theta == c for c in self.congruences)


def sort_key(theta: Congruence):
    return (-theta.num_blocks, tuple(int(x) for x in theta.block_of))


def additively_idempotent(X) -> bool:
    return bool((np.diagonal(X.add) == np.arange(X.size)).all())


def covering_pairs(X) -> np.ndarray:
    """Pairs ``(a, c)`` with c covering a in the order ``a <= c iff a + c = c``."""
    n = X.size
    leq = X.add == np.arange(n)[None, :]
    strict = leq & ~np.eye(n, dtype=bool)
    s = strict.astype(np.int32)
    between = (s @ s) > 0
    return np.argwhere(strict & ~between)


def generating_pairs(X) -> np.ndarray:
    """Pairs whose principal congruences generate all congruences under joins.

    With idempotent addition, ``Cg(a,b) = Cg(a,a+b) v Cg(b,a+b)`` and
    ``Cg(a,c)`` for ``a < c`` is the join along any maximal chain, so covering
    pairs suffice.
    """
    if additively_idempotent(X):
        return covering_pairs(X)
    n = X.size
    a, b = np.triu_indices(n, k=1)
    return np.stack([a, b], axis=1)


def principal_congruences(X, kind=None) -> list[Congruence]:
    """Distinct principal congruences of the generating pairs, in pair order."""
    kind = _kind_of(X, kind)
    seen, out = set(), []
    for a, b in generating_pairs(X):
        theta = principal_congruence(X, int(a), int(b), kind)
        if theta.key not in seen:
            seen.add(theta.key)
            out.append(theta)
    return out


def iter_congruences(X, kind=None, cap=None) -> Iterator[Congruence]:
    """Every congruence exactly once: diagonal, principal ones, then joins (breadth first)."""
    kind = _kind_of(X, kind)
    cap = get_config().congruence_cap if cap is None else cap
    diag = Congruence.diagonal(X, kind)
    seen = {diag.key}
    yield diag
    gens = [g for g in principal_congruences(X, kind) if g.key not in seen]
    frontier = []
    for g in gens:
        seen.add(g.key)
        if len(seen) > cap:
            raise CongruenceLimitExceeded(cap)
        frontier.append(g)
        yield g
    while frontier:
        nxt = []
        for theta in frontier:
            for g in gens:
                if g.refines(theta):
                    continue
                j = theta.join(g)
                if j.key in seen:
                    continue
                seen.add(j.key)
                if len(seen) > cap:
                    raise CongruenceLimitExceeded(cap)
                nxt.append(j)
                yield j
        frontier = nxt


def all_congruences(X, kind=None, cap=None) -> CongruenceSet:
    kind = _kind_of(X, kind)
    found = list(iter_congruences(X, kind, cap))
    for theta in found:
        if not is_congruence(theta, X, kind):
            raise InternalError(f"generated relation {theta.blocks()} is not compatible")
    found.sort(key=sort_key)
    return CongruenceSet(X, found, complete=True)


def congruences_by_partitions(X, kind=None) -> list[Congruence]:
    """Reference enumeration: filter every set partition of the carrier."""
    kind = _kind_of(X, kind)
    n = X.size
    out = []

    def rec(i, lab, nb):
        if i == n:
            theta = Congruence(X, np.array(lab), kind)
            if is_congruence(theta, X, kind):
                out.append(theta)
            return
        for b in range(nb + 1):
            lab.append(b)
            rec(i + 1, lab, max(nb, b + 1))
            lab.pop()

    rec(0, [], 0)
    out.sort(key=sort_key)
    return out


# ---------------------------------------------------------------------------
# distinguished congruences


def bourne_congruence(M, K: ElementSubset) -> Congruence:
    """``m ~ m'`` iff ``m + l = m' + l'`` for some l, l' in K."""
    M = regular_semimodule(M) if isinstance(M, FiniteSemiring) else M
    bad = is_subsemimodule(M, K.members)
    if bad is not None:
        raise NotASubsemimodule(*bad)
    n = M.size
    kel = np.flatnonzero(K.members)
    reach = np.zeros((n, n), dtype=np.int32)
    rows = np.repeat(np.arange(n), len(kel))
    reach[rows, M.add[:, kel].ravel()] = 1
    direct = (reach @ reach.T) > 0
    lab = _components(n, *np.nonzero(direct))
    if not np.array_equal(direct, lab[:, None] == lab[None, :]):
        raise InternalError("Bourne relation of a subsemimodule was not transitive")
    return Congruence(M, lab, "semimodule")


def _multiples_matrix(S):
    """``D[a, t]`` true iff ``t = n a`` for some n in 1..|S|."""
    n = S.size
    D = np.zeros((n, n), dtype=bool)
    cur = np.arange(n)
    for _ in range(n):
        D[np.arange(n), cur] = True
        cur = S.add[cur, np.arange(n)]
    return D


def diamond_congruence(S: FiniteSemiring) -> Congruence:
    """``a ~ b`` iff ``n a = b + x`` and ``n' b = a + x'`` for some n, n' >= 1 and x, x'."""
    n = S.size
    D = _multiples_matrix(S).astype(np.int32)
    U = np.zeros((n, n), dtype=np.int32)
    U[np.repeat(np.arange(n), n), S.add.ravel()] = 1
    half = (D @ U.T) > 0  # half[a, b]: some multiple of a lies above b
    rel = half & half.T
    lab = _components(n, *np.nonzero(rel))
    theta = Congruence(S, lab, "semiring")
    if not np.array_equal(rel, lab[:, None] == lab[None, :]):
        raise InternalError("diamond relation was not transitive")
    if not is_congruence(theta):
        raise InternalError("diamond relation is not a semiring congruence")
    return theta


def theta_plus(S: FiniteSemiring) -> Congruence:
    """Bourne congruence of the additive idempotents, as a semiring congruence."""
    b = bourne_congruence(regular_semimodule(S), distinguished_subset(S, "Iplus"))
    theta = Congruence(S, b.block_of, "semiring")
    if not is_congruence(theta):
        raise InternalError("theta_plus is not a semiring congruence")
    return theta


def chi(theta: Congruence, n: int, T: FiniteSemiring | None = None) -> Congruence:
    """Entrywise lift of a congruence on S to the n x n matrices over S."""
    from .core import matrix_semiring

    S = theta.parent
    T = T if T is not None else matrix_semiring(S, n)
    mats = matrix_entries(S, n)
    lifted = np.asarray(theta.block_of)[mats]
    lab = encode_matrices(lifted, S.size)
    Theta = Congruence(T, lab, "semiring")
    if not is_congruence(Theta):
        raise InternalError("entrywise lift is not a congruence")
    return Theta
