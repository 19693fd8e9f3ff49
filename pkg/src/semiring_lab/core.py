"""Finite semirings and semimodules given by Cayley tables.

Elements are dense indices ``0..size-1``. Every structure stores its tables as
read-only numpy arrays; constructors in this module trust tables they build
themselves, while :func:`validate_semiring` / :func:`validate_semimodule` are
the checked entry points for outside data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .config import get_config
from .errors import (
    AxiomViolation,
    BadParams,
    KindMismatch,
    NotIdempotent,
    ShapeError,
    SizeCapExceeded,
    ZeroIdempotent,
)

INDEX = np.int32


def _frozen(table) -> np.ndarray:
    arr = np.array(table, dtype=INDEX)
    arr.setflags(write=False)
    return arr


def _labels(labels, size):
    if labels is None:
        return tuple(str(i) for i in range(size))
    labels = tuple(str(x) for x in labels)
    if len(labels) != size:
        raise ShapeError(f"{len(labels)} labels for {size} elements")
    return labels


class FiniteSemiring:
    """A semiring ``(S, +, *, 0, 1)`` on ``range(size)``."""

    kind = "semiring"

    def __init__(self, add, mul, zero, one, labels=None, name=""):
        self.add = _frozen(add)
        self.mul = _frozen(mul)
        self.size = int(self.add.shape[0])
        self.zero = int(zero)
        self.one = int(one)
        self.labels = _labels(labels, self.size)
        self.name = name

    def __repr__(self):
        return f"<FiniteSemiring {self.name or '?'} size={self.size}>"

    def __len__(self):
        return self.size

    def same_tables(self, other) -> bool:
        return (
            isinstance(other, FiniteSemiring)
            and self.size == other.size
            and self.zero == other.zero
            and self.one == other.one
            and np.array_equal(self.add, other.add)
            and np.array_equal(self.mul, other.mul)
        )

    def with_name(self, name):
        return FiniteSemiring(self.add, self.mul, self.zero, self.one, self.labels, name)


class FiniteSemimodule:
    """A right semimodule: commutative monoid ``(M, +, 0)`` with ``action[m, s] = m*s``."""

    kind = "semimodule"

    def __init__(self, ring: FiniteSemiring, add, zero, action, labels=None, name=""):
        self.ring = ring
        self.add = _frozen(add)
        self.action = _frozen(action)
        self.size = int(self.add.shape[0])
        self.zero = int(zero)
        self.labels = _labels(labels, self.size)
        self.name = name

    def __repr__(self):
        return f"<FiniteSemimodule {self.name or '?'} size={self.size} over {self.ring.name or '?'}>"

    def __len__(self):
        return self.size


@dataclass(frozen=True, eq=False)
class SemimoduleHom:
    source: FiniteSemimodule
    target: FiniteSemimodule
    map: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "map", _frozen(self.map))

    def __call__(self, x):
        return int(self.map[x])

    def violation(self):
        """First failing hom law as ``(law, witness)``, or None."""
        f, src, tgt = self.map, self.source, self.target
        if f[src.zero] != tgt.zero:
            return ("zero", (src.zero,))
        bad = np.argwhere(f[src.add] != tgt.add[np.ix_(f, f)])
        if len(bad):
            return ("additive", tuple(int(v) for v in bad[0]))
        bad = np.argwhere(f[src.action] != tgt.action[f, :])
        if len(bad):
            return ("equivariant", tuple(int(v) for v in bad[0]))
        return None

    def is_hom(self) -> bool:
        return self.violation() is None

    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.target.size

    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.source.size


@dataclass(frozen=True, eq=False)
class ElementSubset:
    parent: object
    members: np.ndarray

    def __post_init__(self):
        arr = np.array(self.members, dtype=bool)
        arr.setflags(write=False)
        object.__setattr__(self, "members", arr)

    @classmethod
    def of(cls, parent, elements: Iterable[int]):
        mask = np.zeros(parent.size, dtype=bool)
        mask[list(elements)] = True
        return cls(parent, mask)

    def elements(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.members)]

    def __contains__(self, x):
        return bool(self.members[x])

    def __len__(self):
        return int(self.members.sum())

    def __eq__(self, other):
        return isinstance(other, ElementSubset) and np.array_equal(self.members, other.members)

    def __hash__(self):
        return hash(self.members.tobytes())

    def __repr__(self):
        return f"ElementSubset({self.elements()})"


# ---------------------------------------------------------------------------
# validation


def _as_table(raw, rows, cols, what):
    try:
        arr = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise ShapeError(f"{what}: not a rectangular integer table") from exc
    if arr.shape != (rows, cols):
        raise ShapeError(f"{what}: expected shape {(rows, cols)}, got {arr.shape}")
    # every table (action included) takes values in the carrier
    if arr.size and (arr.min() < 0 or arr.max() >= rows):
        raise ShapeError(f"{what}: entry out of range")
    return arr


def _check_index(x, n, what):
    if not isinstance(x, (int, np.integer)) or not 0 <= int(x) < n:
        raise ShapeError(f"{what} must be an element index below {n}")


def _first(mask):
    hit = np.argwhere(mask)
    return tuple(int(v) for v in hit[0]) if len(hit) else None


def _monoid_violation(add, zero, prefix=""):
    n = add.shape[0]
    idx = np.arange(n)
    w = _first(add[zero] != idx)
    if w is None:
        w = _first(add[:, zero] != idx)
    if w is not None:
        return prefix + "identity", (w[0],)
    w = _first(add != add.T)
    if w is not None:
        return prefix + "comm", w
    return _assoc_violation(add, prefix + "assoc")


def _assoc_violation(op, name):
    for a in range(op.shape[0]):
        w = _first(op[op[a]] != op[a][op])
        if w is not None:
            return name, (a, *w)
    return None


def semiring_violation(add, mul, zero, one):
    """First failing semiring law as ``(name, witness)`` or None."""
    n = add.shape[0]
    idx = np.arange(n)
    bad = _monoid_violation(add, zero, "add_")
    if bad:
        return bad
    w = _first(mul[one] != idx)
    if w is None:
        w = _first(mul[:, one] != idx)
    if w is not None:
        return "identity", (one, w[0])
    bad = _assoc_violation(mul, "mul_assoc")
    if bad:
        return bad
    for a in range(n):
        w = _first(mul[a][add] != add[np.ix_(mul[a], mul[a])])
        if w is not None:
            return "left_distrib", (a, *w)
        w = _first(mul[:, a][add] != add[np.ix_(mul[:, a], mul[:, a])])
        if w is not None:
            return "right_distrib", (a, *w)
    w = _first(mul[zero] != zero)
    if w is None:
        w = _first(mul[:, zero] != zero)
    if w is not None:
        return "zero_absorb", (zero, w[0])
    if n > 1 and zero == one:
        return "zero_ne_one", (zero,)
    return None


def validate_semiring(size, add, mul, zero, one, labels=None, name="") -> FiniteSemiring:
    if not isinstance(size, (int, np.integer)) or size < 1:
        raise ShapeError("size must be a positive integer")
    add = _as_table(add, size, size, "add")
    mul = _as_table(mul, size, size, "mul")
    _check_index(zero, size, "zero")
    _check_index(one, size, "one")
    bad = semiring_violation(add, mul, int(zero), int(one))
    if bad:
        raise AxiomViolation(*bad)
    return FiniteSemiring(add, mul, zero, one, labels, name)


def semimodule_violation(ring: FiniteSemiring, add, zero, action):
    n_m = add.shape[0]
    bad = _monoid_violation(add, zero, "add_")
    if bad:
        return bad
    rm, ra = ring.mul, ring.add
    for m in range(n_m):
        row = action[m]
        w = _first(row[rm] != action[row])
        if w is not None:
            return "action_assoc", (m, *w)
        w = _first(action[add[m]] != add[row[None, :], action])
        if w is not None:
            return "module_distrib", (m, *w)
        w = _first(row[ra] != add[np.ix_(row, row)])
        if w is not None:
            return "scalar_distrib", (m, *w)
    w = _first(action[:, ring.one] != np.arange(n_m))
    if w is not None:
        return "unit", (w[0], ring.one)
    w = _first(action[zero] != zero)
    if w is not None:
        return "zero_action", (zero, w[0])
    w = _first(action[:, ring.zero] != zero)
    if w is not None:
        return "action_zero", (w[0], ring.zero)
    return None


def validate_semimodule(ring: FiniteSemiring, size, add, zero, action, labels=None, name=""):
    if not isinstance(size, (int, np.integer)) or size < 1:
        raise ShapeError("size must be a positive integer")
    add = _as_table(add, size, size, "add")
    action = _as_table(action, size, ring.size, "action")
    _check_index(zero, size, "zero")
    bad = semimodule_violation(ring, add, int(zero), action)
    if bad:
        raise AxiomViolation(*bad)
    return FiniteSemimodule(ring, add, zero, action, labels, name)


# ---------------------------------------------------------------------------
# constructions


def regular_semimodule(S: FiniteSemiring) -> FiniteSemimodule:
    return FiniteSemimodule(S, S.add, S.zero, S.mul, S.labels, name=f"{S.name}_{S.name}" if S.name else "")


def trivial_semiring() -> FiniteSemiring:
    return FiniteSemiring([[0]], [[0]], 0, 0, ["0"], name="0")


def opposite(S: FiniteSemiring) -> FiniteSemiring:
    """Same addition, multiplication ``a *op b = b * a``."""
    name = S.name[:-3] if S.name.endswith("^op") else (f"{S.name}^op" if S.name else "")
    return FiniteSemiring(S.add, S.mul.T, S.zero, S.one, S.labels, name)


def _cap(what, size, cap=None):
    cap = get_config().size_cap if cap is None else cap
    if size > cap:
        raise SizeCapExceeded(what, size, cap)


def _fold(add, terms):
    acc = terms[0]
    for t in terms[1:]:
        acc = add[acc, t]
    return acc


def matrix_entries(S: FiniteSemiring, n: int) -> np.ndarray:
    """All n x n matrices over S, row-major lexicographic, shape ``(|S|**(n*n), n, n)``."""
    q, k = S.size, n * n
    idx = np.arange(q**k, dtype=np.int64)
    digits = np.empty((q**k, k), dtype=INDEX)
    for p in range(k):
        digits[:, p] = (idx // q ** (k - 1 - p)) % q
    return digits.reshape(-1, n, n)


def encode_matrices(entries: np.ndarray, q: int) -> np.ndarray:
    """Inverse of :func:`matrix_entries` for a stack of matrices."""
    flat = entries.reshape(entries.shape[0], -1).astype(np.int64)
    k = flat.shape[1]
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return flat @ weights


def matmul_entries(S: FiniteSemiring, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Entrywise semiring matrix product of broadcast-compatible stacks ``A @ B``."""
    n = A.shape[-1]
    out = None
    for k in range(n):
        term = S.mul[A[..., :, k][..., :, None], B[..., k, :][..., None, :]]
        out = term if out is None else S.add[out, term]
    return out


def matrix_semiring(S: FiniteSemiring, n: int, cap=None) -> FiniteSemiring:
    if n < 1:
        raise BadParams("matrix size must be positive")
    size = S.size ** (n * n)
    _cap(f"M_{n}({S.name})", size, cap)
    mats = matrix_entries(S, n)
    q = S.size
    add = np.empty((size, size), dtype=INDEX)
    mul = np.empty((size, size), dtype=INDEX)
    chunk = max(1, 2_000_000 // (size * n * n))
    for lo in range(0, size, chunk):
        A = mats[lo : lo + chunk, None]
        add[lo : lo + chunk] = encode_matrices(
            S.add[A, mats[None]].reshape(-1, n, n), q
        ).reshape(-1, size)
        mul[lo : lo + chunk] = encode_matrices(
            matmul_entries(S, A, mats[None]).reshape(-1, n, n), q
        ).reshape(-1, size)
    zero_m = np.full((1, n, n), S.zero, dtype=INDEX)
    one_m = zero_m.copy()
    one_m[0, np.arange(n), np.arange(n)] = S.one
    zero = int(encode_matrices(zero_m, q)[0])
    one = int(encode_matrices(one_m, q)[0])
    labels = None
    if size <= 4096:
        labels = [
            "[" + ";".join(",".join(S.labels[x] for x in row) for row in m) + "]" for m in mats
        ]
    return FiniteSemiring(add, mul, zero, one, labels, name=f"M{n}({S.name})")


def direct_sum(S1: FiniteSemiring, S2: FiniteSemiring, cap=None) -> FiniteSemiring:
    n1, n2 = S1.size, S2.size
    _cap(f"{S1.name}+{S2.name}", n1 * n2, cap)

    def combine(t1, t2):
        return (t1[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(n1 * n2, n1 * n2)

    labels = [f"({a},{b})" for a in S1.labels for b in S2.labels]
    return FiniteSemiring(
        combine(S1.add, S2.add),
        combine(S1.mul, S2.mul),
        S1.zero * n2 + S2.zero,
        S1.one * n2 + S2.one,
        labels,
        name=f"({S1.name}+{S2.name})",
    )


def subsemiring_on(S: FiniteSemiring, elements: Sequence[int], one: int, name="") -> FiniteSemiring:
    """Restrict S to ``elements`` (closed under + and *), with a possibly different unit."""
    elements = [int(x) for x in elements]
    pos = np.full(S.size, -1, dtype=INDEX)
    pos[elements] = np.arange(len(elements))
    sub = np.array(elements)
    add = pos[S.add[np.ix_(sub, sub)]]
    mul = pos[S.mul[np.ix_(sub, sub)]]
    if (add < 0).any() or (mul < 0).any():
        raise BadParams("element set is not closed under the operations")
    return FiniteSemiring(
        add, mul, pos[S.zero], pos[one], [S.labels[x] for x in elements], name=name
    )


def corner_elements(S: FiniteSemiring, e: int) -> list[int]:
    return sorted({int(x) for x in S.mul[S.mul[e, :], e]})


def corner_semiring(S: FiniteSemiring, e: int, allow_zero=False) -> FiniteSemiring:
    """The corner ``eSe`` with unit ``e``."""
    if S.mul[e, e] != e:
        raise NotIdempotent(f"{S.labels[e]} is not multiplicatively idempotent")
    if e == S.zero and S.size > 1:
        if not allow_zero:
            raise ZeroIdempotent("the corner at 0 is the zero semiring")
        return trivial_semiring()
    return subsemiring_on(S, corner_elements(S, e), e, name=f"{S.labels[e]}{S.name}{S.labels[e]}")


def semimodule_direct_sum(modules: Sequence[FiniteSemimodule], cap=None) -> FiniteSemimodule:
    """Direct sum over a common ring; carrier in lexicographic order (first factor slowest)."""
    ring = modules[0].ring
    sizes = [M.size for M in modules]
    total = int(np.prod(sizes, dtype=np.int64))
    _cap("direct sum", total, cap)
    digits = np.array(np.unravel_index(np.arange(total), sizes)).T  # (total, k)
    add_parts = [M.add[np.ix_(digits[:, i], digits[:, i])] for i, M in enumerate(modules)]
    act_parts = [M.action[digits[:, i], :] for i, M in enumerate(modules)]
    add = np.ravel_multi_index(add_parts, sizes)
    action = np.ravel_multi_index(act_parts, sizes)
    zero = int(np.ravel_multi_index([M.zero for M in modules], sizes))
    return FiniteSemimodule(ring, add, zero, action, name="+".join(M.name for M in modules))


def injection(total: FiniteSemimodule, modules, i) -> np.ndarray:
    """Coordinate injection of the i-th summand into :func:`semimodule_direct_sum`."""
    sizes = [M.size for M in modules]
    coords = [np.full(modules[i].size, M.zero) for M in modules]
    coords[i] = np.arange(modules[i].size)
    return np.ravel_multi_index(coords, sizes)


def product_semimodule(M1: FiniteSemimodule, M2: FiniteSemimodule, ring=None) -> FiniteSemimodule:
    """``M1 x M2`` over ``S1 + S2`` acting componentwise."""
    ring = ring or direct_sum(M1.ring, M2.ring)
    n1, n2 = M1.size, M2.size
    s2 = M2.ring.size
    add = (M1.add[:, None, :, None] * n2 + M2.add[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    # action[(m1,m2), (s1,s2)] = (m1 s1, m2 s2)
    act = M1.action[:, None, :, None] * n2 + M2.action[None, :, None, :]
    action = act.reshape(n1 * n2, M1.ring.size * s2)
    labels = [f"({a},{b})" for a in M1.labels for b in M2.labels]
    return FiniteSemimodule(ring, add, M1.zero * n2 + M2.zero, action, labels, f"{M1.name}x{M2.name}")


def quotient_by_congruence(X, theta):
    """Quotient of a semiring or semimodule by a congruence.

    Returns ``(quotient, projection)``. Quotient elements are the blocks in
    ascending order of their smallest member. For semimodules the projection
    is a :class:`SemimoduleHom`; for semirings it is the index map.
    """
    if X.size != len(theta.block_of):
        raise KindMismatch("congruence lives on a carrier of a different size")
    if isinstance(X, FiniteSemiring) and theta.kind != "semiring":
        raise KindMismatch("a semiring quotient needs a semiring congruence")
    block = np.asarray(theta.block_of)
    reps = np.unique(block)
    pos = np.full(X.size, -1, dtype=INDEX)
    pos[reps] = np.arange(len(reps))
    proj = pos[block]
    labels = [X.labels[r] for r in reps]
    if isinstance(X, FiniteSemiring):
        Q = FiniteSemiring(
            proj[X.add[np.ix_(reps, reps)]],
            proj[X.mul[np.ix_(reps, reps)]],
            proj[X.zero],
            proj[X.one],
            labels,
            name=f"{X.name}/~",
        )
        return Q, proj
    Q = FiniteSemimodule(
        X.ring,
        proj[X.add[np.ix_(reps, reps)]],
        proj[X.zero],
        proj[X.action[reps, :]],
        labels,
        name=f"{X.name}/~",
    )
    return Q, SemimoduleHom(X, Q, proj)


# ---------------------------------------------------------------------------
# subsets


def as_module(X) -> FiniteSemimodule:
    return regular_semimodule(X) if isinstance(X, FiniteSemiring) else X


def distinguished_subset(X, which: str) -> ElementSubset:
    """``Iplus`` (additive idempotents), ``Z``, ``V`` (additively invertible) or ``Itimes``."""
    add = X.add
    if which == "Iplus":
        mask = np.diagonal(add) == np.arange(X.size)
    elif which == "Z":
        mask = (add == np.arange(X.size)[None, :]).any(axis=1)
    elif which == "V":
        mask = (add == X.zero).any(axis=1)
    elif which == "Itimes":
        if not isinstance(X, FiniteSemiring):
            raise KindMismatch("Itimes is defined on semirings only")
        mask = np.diagonal(X.mul) == np.arange(X.size)
    else:
        raise BadParams(f"unknown subset {which!r}")
    return ElementSubset(X, mask)


def is_subsemimodule(M: FiniteSemimodule, mask) -> tuple[str, tuple] | None:
    """None when ``mask`` is a subsemimodule of M, else ``(reason, witness)``."""
    mask = np.asarray(mask, dtype=bool)
    if not mask[M.zero]:
        return ("zero", (M.zero,))
    els = np.flatnonzero(mask)
    sums = M.add[np.ix_(els, els)]
    bad = np.argwhere(~mask[sums])
    if len(bad):
        return ("add", (int(els[bad[0][0]]), int(els[bad[0][1]])))
    bad = np.argwhere(~mask[M.action[els]])
    if len(bad):
        return ("action", (int(els[bad[0][0]]), int(bad[0][1])))
    return None


def is_two_sided_ideal(S: FiniteSemiring, mask) -> bool:
    mask = np.asarray(mask, dtype=bool)
    if is_subsemimodule(regular_semimodule(S), mask) is not None:
        return False
    return bool(mask[S.mul[:, mask]].all())


def _bits(mask) -> int:
    return int(sum(1 << int(i) for i in np.flatnonzero(mask)))


def _mask(bits: int, n: int) -> np.ndarray:
    return np.array([(bits >> i) & 1 for i in range(n)], dtype=bool)


def generated_subsemimodule(M: FiniteSemimodule, gens: Iterable[int]) -> np.ndarray:
    """Smallest subsemimodule containing ``gens`` (boolean mask)."""
    mask = np.zeros(M.size, dtype=bool)
    mask[M.zero] = True
    for g in gens:
        mask[M.action[g]] = True
    while True:
        els = np.flatnonzero(mask)
        new = mask.copy()
        new[M.add[np.ix_(els, els)].ravel()] = True
        if new.sum() == mask.sum():
            return mask
        mask = new


def subsemimodules(M: FiniteSemimodule) -> list[ElementSubset]:
    """All subsemimodules, sorted by (size, members).

    Every subsemimodule is the sum of the cyclic subsemimodules ``mS`` of its
    elements, so closing the cyclic ones under pairwise sums is exhaustive.
    """
    n = M.size
    cyclic = {}
    for m in range(n):
        c = np.zeros(n, dtype=bool)
        c[M.action[m]] = True
        c[M.zero] = True
        cyclic.setdefault(_bits(c), c)
    zero = np.zeros(n, dtype=bool)
    zero[M.zero] = True
    seen = {_bits(zero): zero}
    frontier = [zero]
    gens = list(cyclic.values())
    while frontier:
        nxt = []
        for K in frontier:
            kel = np.flatnonzero(K)
            for C in gens:
                if (C <= K).all():
                    continue
                s = np.zeros(n, dtype=bool)
                s[M.add[np.ix_(kel, np.flatnonzero(C))].ravel()] = True
                b = _bits(s)
                if b not in seen:
                    seen[b] = s
                    nxt.append(s)
        frontier = nxt
    found = [ElementSubset(M, m) for m in seen.values()]
    found.sort(key=lambda K: (len(K), K.elements()))
    return found


def subsemimodules_by_subsets(M: FiniteSemimodule) -> list[ElementSubset]:
    """Reference enumeration: test every subset containing zero."""
    n = M.size
    others = [i for i in range(n) if i != M.zero]
    found = []
    for bits in range(1 << len(others)):
        mask = np.zeros(n, dtype=bool)
        mask[M.zero] = True
        for j, x in enumerate(others):
            if bits >> j & 1:
                mask[x] = True
        if is_subsemimodule(M, mask) is None:
            found.append(ElementSubset(M, mask))
    found.sort(key=lambda K: (len(K), K.elements()))
    return found


def subtractive_violation(M: FiniteSemimodule, K: ElementSubset):
    """``(m, m')`` with ``m`` and ``m+m'`` in K but ``m'`` not in K, or None."""
    mask = K.members
    els = np.flatnonzero(mask)
    hits = np.argwhere(mask[M.add[els, :]] & ~mask[None, :])
    if len(hits):
        return int(els[hits[0][0]]), int(hits[0][1])
    return None


# ---------------------------------------------------------------------------
# properties

FLAGS = (
    "zeroic",
    "zerosumfree",
    "additively_idempotent",
    "additively_pi_regular",
    "gelfand_right",
    "gelfand_left",
    "anti_bounded",
    "entire",
    "ring",
    "finite_boolean_algebra",
    "right_subtractive",
    "left_subtractive",
)


@dataclass
class PropertyReport:
    flags: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def __getattr__(self, name):
        if name in FLAGS:
            return self.flags[name]
        raise AttributeError(name)

    def to_dict(self):
        return {name: {"value": self.flags[name], "witness": _jsonable(self.witnesses[name])} for name in FLAGS}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


def multiples(add, x, upto):
    """``[1x, 2x, ..., upto*x]``."""
    out = [int(x)]
    for _ in range(upto - 1):
        out.append(int(add[out[-1], x]))
    return out


def pi_regularity_witness(S: FiniteSemiring):
    """``(n, y)`` with ``n1 = n1 + y + n1`` and n in ``1..|S|``, or None."""
    for n, n1 in enumerate(multiples(S.add, S.one, S.size), start=1):
        lhs = S.add[S.add[n1, :], n1]
        hit = np.flatnonzero(lhs == n1)
        if len(hit):
            return n, int(hit[0])
    return None


def _right_inverse(S, a):
    hit = np.flatnonzero(S.mul[a, :] == S.one)
    return int(hit[0]) if len(hit) else None


def _gelfand(S: FiniteSemiring):
    wit = {}
    for s in range(S.size):
        a = int(S.add[S.one, s])
        t = _right_inverse(S, a)
        if t is None:
            return False, s
        wit[s] = t
    return True, wit


def _boolean_algebra(S: FiniteSemiring):
    n = S.size
    idx = np.arange(n)
    if (np.diagonal(S.add) != idx).any():
        return False, ("additive idempotence", int(np.flatnonzero(np.diagonal(S.add) != idx)[0]))
    w = _first(S.mul != S.mul.T)
    if w:
        return False, ("commutative", w)
    if (np.diagonal(S.mul) != idx).any():
        return False, ("multiplicative idempotence", int(np.flatnonzero(np.diagonal(S.mul) != idx)[0]))
    w = _first(S.add[idx[:, None], S.mul] != idx[:, None])
    if w:
        return False, ("absorption a+ab=a", w)
    w = _first(S.mul[idx[:, None], S.add] != idx[:, None])
    if w:
        return False, ("absorption a(a+b)=a", w)
    # a lattice whose meet distributes over join (semiring law) is distributive;
    # it remains to find complements
    comp = {}
    for a in range(n):
        hit = np.flatnonzero((S.add[a] == S.one) & (S.mul[a] == S.zero))
        if not len(hit):
            return False, ("complement", a)
        comp[a] = int(hit[0])
    return True, comp


def right_subtractive_witness(S: FiniteSemiring):
    """None if every right ideal is subtractive, else ``(K, m, m')``."""
    M = regular_semimodule(S)
    for K in subsemimodules(M):
        w = subtractive_violation(M, K)
        if w is not None:
            return K.elements(), w[0], w[1]
    return None


def classify(S: FiniteSemiring) -> PropertyReport:
    n = S.size
    add, mul = S.add, S.mul
    idx = np.arange(n)
    flags, wit = {}, {}

    zmask = (add == idx[None, :]).any(axis=1)
    flags["zeroic"] = bool(zmask.all())
    if flags["zeroic"]:
        wit["zeroic"] = {z: int(np.flatnonzero(add[z] == idx)[0]) for z in range(n)}
    else:
        wit["zeroic"] = int(np.flatnonzero(~zmask)[0])

    pairs = np.argwhere((add == S.zero) & (idx[:, None] != S.zero))
    flags["zerosumfree"] = not len(pairs)
    wit["zerosumfree"] = None if flags["zerosumfree"] else tuple(int(v) for v in pairs[0])
    if flags["zerosumfree"]:
        wit["zerosumfree"] = "V(S) = {0}"

    diag = np.diagonal(add)
    flags["additively_idempotent"] = bool((diag == idx).all())
    wit["additively_idempotent"] = (
        "x+x=x for all x" if flags["additively_idempotent"] else int(np.flatnonzero(diag != idx)[0])
    )

    pi = pi_regularity_witness(S)
    flags["additively_pi_regular"] = pi is not None
    wit["additively_pi_regular"] = {"n": pi[0], "y": pi[1]} if pi else S.one

    for side, T in (("gelfand_right", S), ("gelfand_left", opposite(S))):
        ok, w = _gelfand(T)
        flags[side], wit[side] = ok, w

    vmask = (add == S.zero).any(axis=1)
    ones = np.zeros(n, dtype=bool)
    ones[add[S.one]] = True
    covered = vmask | ones
    flags["anti_bounded"] = bool(covered.all())
    wit["anti_bounded"] = (
        {"V": [int(x) for x in np.flatnonzero(vmask)], "one_plus": [int(x) for x in np.flatnonzero(ones)]}
        if flags["anti_bounded"]
        else int(np.flatnonzero(~covered)[0])
    )

    zd = np.argwhere((mul == S.zero) & (idx[:, None] != S.zero) & (idx[None, :] != S.zero))
    flags["entire"] = not len(zd)
    wit["entire"] = "no zero divisors" if flags["entire"] else tuple(int(v) for v in zd[0])

    flags["ring"] = bool(vmask.all())
    wit["ring"] = (
        {x: int(np.flatnonzero(add[x] == S.zero)[0]) for x in range(n)}
        if flags["ring"]
        else int(np.flatnonzero(~vmask)[0])
    )

    ok, w = _boolean_algebra(S)
    flags["finite_boolean_algebra"], wit["finite_boolean_algebra"] = ok, w

    for side, T in (("right_subtractive", S), ("left_subtractive", opposite(S))):
        w = right_subtractive_witness(T)
        flags[side] = w is None
        wit[side] = "all one-sided ideals subtractive" if w is None else {"K": w[0], "m": w[1], "m_prime": w[2]}

    return PropertyReport(flags, wit)
