"""Projectivity of cyclic semimodules and the CP decision.

A cyclic right module ``S/theta`` is projective exactly when the projection
``S -> S/theta`` splits, and a splitting is ``[x] -> e*x`` for an element e
that is constant on blocks after left multiplication and sends every x back
into its own block. Checking all e is a vectorised O(n^2) scan.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .config import get_config
from .congruences import (
    Congruence,
    _closure_labels,
    all_congruences,
    iter_congruences,
    sort_key,
)
from .core import (
    FiniteSemimodule,
    FiniteSemiring,
    SemimoduleHom,
    corner_semiring,
    direct_sum,
    encode_matrices,
    generated_subsemimodule,
    matmul_entries,
    matrix_entries,
    matrix_semiring,
    opposite,
    quotient_by_congruence,
    regular_semimodule,
    semimodule_direct_sum,
)
from .errors import (
    BadParams,
    InternalError,
    PreconditionFailed,
    SearchBudgetExceeded,
    SizeCapExceeded,
)

__all__ = [
    "CyclicQuotient",
    "Diagram",
    "CpVerdict",
    "cyclic_quotients",
    "splitting_idempotent",
    "splitting_candidates",
    "is_cp",
    "opposite",
    "prop42_witness",
    "full_c_diagram",
    "colimit",
    "is_projective",
    "peirce_decompositions",
    "infinite_element",
]


@dataclass(eq=False)
class CyclicQuotient:
    ring: FiniteSemiring
    congruence: Congruence
    quotient: FiniteSemimodule
    projection: SemimoduleHom


def cyclic_quotients(S: FiniteSemiring, cap=None) -> list[CyclicQuotient]:
    R = regular_semimodule(S)
    out = []
    for theta in all_congruences(R, "semimodule", cap):
        Q, proj = quotient_by_congruence(R, theta)
        out.append(CyclicQuotient(S, theta, Q, proj))
    return out


def splitting_candidates(S: FiniteSemiring, theta: Congruence) -> np.ndarray:
    """Boolean mask of all e giving a splitting of ``S -> S/theta``."""
    b = np.asarray(theta.block_of)
    well_defined = (S.mul == S.mul[:, b]).all(axis=1)
    section = (b[S.mul] == b[None, :]).all(axis=1)
    return well_defined & section


def splitting_idempotent(S: FiniteSemiring, theta: Congruence):
    """Least e splitting the projection onto ``S/theta``, or None."""
    hit = np.flatnonzero(splitting_candidates(S, theta))
    if not len(hit):
        return None
    e = int(hit[0])
    b = theta.block_of
    if S.mul[e, e] != e or b[e] != b[S.one]:
        raise InternalError(f"splitting element {e} is not an idempotent in the block of 1")
    return e


@dataclass
class CpVerdict:
    is_cp: bool
    witness: Congruence | None = None
    splittings: list = field(default_factory=list)  # (Congruence, e)
    side: str = "right"

    def __bool__(self):
        return self.is_cp

    def to_dict(self):
        return {
            "is_cp": self.is_cp,
            "witness_blocks": self.witness.blocks() if self.witness is not None else None,
            "splittings": [{"blocks": t.blocks(), "e": int(e)} for t, e in self.splittings],
        }


def is_cp(S: FiniteSemiring, exhaustive=False, side="right", cap=None) -> CpVerdict:
    """Decide whether every cyclic right (or left) module over S is projective.

    Stops at the first unsplittable congruence unless ``exhaustive``; splittings
    are listed in congruence order (most blocks first).
    """
    if side == "left":
        S = opposite(S)
    elif side != "right":
        raise BadParams(f"side must be right or left, got {side!r}")
    R = regular_semimodule(S)
    splittings, witness = [], None
    for theta in iter_congruences(R, "semimodule", cap):
        e = splitting_idempotent(S, theta)
        if e is None:
            if witness is None or sort_key(theta) < sort_key(witness):
                witness = theta
            if not exhaustive:
                break
        else:
            splittings.append((theta, e))
    splittings.sort(key=lambda p: sort_key(p[0]))
    return CpVerdict(witness is None, witness, splittings, side)


# ---------------------------------------------------------------------------
# the all-ones-off-diagonal matrix


@dataclass
class MatrixKernelWitness:
    """Kernel of ``X -> A X`` on n x n matrices, with the splitting search result.

    ``theta`` is the congruence on the materialised matrix semiring when that
    fits the size cap, otherwise None. ``splitting`` is the least splitting
    matrix (entries) or None.
    """

    semiring: FiniteSemiring
    n: int
    A: np.ndarray
    theta: Congruence | None
    splitting: np.ndarray | None
    matrix_semiring: FiniteSemiring | None = None

    def __iter__(self):
        return iter((self.theta, self.splitting))


def _all_vectors(S, n):
    q = S.size
    idx = np.arange(q**n)
    return np.stack([(idx // q ** (n - 1 - p)) % q for p in range(n)], axis=1)


def _matvec(S, A, V):
    """``A v`` for a stack of matrices A (k,n,n) and vectors V (m,n) -> (k,m,n)."""
    out = None
    for j in range(A.shape[-1]):
        term = S.mul[A[:, None, :, j], V[None, :, None, j]]
        out = term if out is None else S.add[out, term]
    return out


def prop42_witness(S: FiniteSemiring, n: int, materialize=None) -> MatrixKernelWitness:
    """Search a splitting for ``A T`` where A has 0 on the diagonal and 1 elsewhere.

    Works on column vectors: ``E`` splits ``ker(X -> AX)`` iff ``A E = A`` and
    ``A v = A w`` implies ``E v = E w`` for all vectors v, w. This avoids
    building the whole matrix semiring; with ``materialize`` (default: when
    the matrix semiring fits the size cap) the congruence is also built on it.
    """
    if n < 3:
        raise BadParams("the matrix witness needs n >= 3")
    if not (np.diagonal(S.add) == np.arange(S.size)).all():
        raise PreconditionFailed("S must be additively idempotent")
    if (S.add == S.zero).any(axis=1).all():
        raise PreconditionFailed("S must not be a ring")
    cfg = get_config()
    total = S.size ** (n * n)
    if total > cfg.search_budget:
        raise SizeCapExceeded(f"M_{n}({S.name}) search", total, cfg.search_budget)
    A = np.full((n, n), S.one, dtype=np.int32)
    A[np.arange(n), np.arange(n)] = S.zero
    V = _all_vectors(S, n)
    q = S.size
    w = q ** np.arange(n - 1, -1, -1)
    key = _matvec(S, A[None], V)[0] @ w  # class of each vector under v -> Av
    splitting = None
    chunk = max(1, 400_000 // (len(V) * n))
    for lo in range(0, total, chunk):
        idx = np.arange(lo, min(total, lo + chunk))
        E = np.stack([(idx // q ** (n * n - 1 - p)) % q for p in range(n * n)], axis=1).reshape(-1, n, n)
        AE = matmul_entries(S, A[None], E)
        ok = (AE == A[None]).all(axis=(1, 2))
        if not ok.any():
            continue
        Ev = _matvec(S, E[ok], V) @ w  # (k, m)
        # constant on classes of key: compare with the value at a class representative
        _, first = np.unique(key, return_index=True)
        rep = first[np.searchsorted(np.unique(key), key)]
        good = (Ev == Ev[:, rep]).all(axis=1)
        if good.any():
            splitting = E[ok][np.flatnonzero(good)[0]]
            break
    if materialize is None:
        materialize = total <= cfg.size_cap
    theta, T = None, None
    if materialize:
        T = matrix_semiring(S, n)
        mats = matrix_entries(S, n)
        AX = matmul_entries(S, A[None], mats)
        theta = Congruence(T, encode_matrices(AX, q), "semimodule")
    return MatrixKernelWitness(S, n, A, theta, splitting, T)


# ---------------------------------------------------------------------------
# diagrams and colimits


@dataclass(eq=False)
class Diagram:
    """Nodes are semimodules over one ring; edges ``(src, tgt, map)``.

    ``sums`` holds optional additive relations ``(node, x, [(node_i, x_i), ...])``
    requiring ``iota_node(x) = sum_i iota_node_i(x_i)`` in any cocone.
    """

    nodes: list
    edges: list
    sums: list = field(default_factory=list)
    points: list = field(default_factory=list)  # for c-diagrams: ambient element per node

    def __post_init__(self):
        for k, (s, t, h) in enumerate(self.edges):
            h = np.asarray(h)
            if len(h) != self.nodes[s].size or (len(h) and h.max() >= self.nodes[t].size):
                raise BadParams(f"edge {k} does not match its nodes")
            if not SemimoduleHom(self.nodes[s], self.nodes[t], h).is_hom():
                raise BadParams(f"edge {k} is not a homomorphism")


def _submodule(M: FiniteSemimodule, mask, name=""):
    els = np.flatnonzero(mask)
    pos = np.full(M.size, -1)
    pos[els] = np.arange(len(els))
    sub = FiniteSemimodule(
        M.ring,
        pos[M.add[np.ix_(els, els)]],
        pos[M.zero],
        pos[M.action[els]],
        [M.labels[x] for x in els],
        name=name,
    )
    return sub, els, pos


def full_c_diagram(M: FiniteSemimodule) -> Diagram:
    """One node ``mS`` per element m; an edge ``nS -> mS`` for each ``n = m s``.

    That edge sends ``n t`` to ``m (s t)``, i.e. it is the inclusion. The
    diagram also records, for every m and m', that the generator of
    ``(m+m')S`` is the sum of the generators of ``mS`` and ``m'S``.
    """
    nodes, carriers, positions = [], [], []
    for m in range(M.size):
        mask = np.zeros(M.size, dtype=bool)
        mask[M.action[m]] = True
        node, els, pos = _submodule(M, mask, name=f"{M.labels[m]}S")
        nodes.append(node)
        carriers.append(els)
        positions.append(pos)
    seen, edges = set(), []
    for m in range(M.size):
        for s in range(M.ring.size):
            n = int(M.action[m, s])
            h = positions[m][carriers[n]]
            key = (n, m, h.tobytes())
            if key in seen:
                continue
            seen.add(key)
            edges.append((n, m, h))
    sums = []
    for m in range(M.size):
        for m2 in range(m, M.size):
            k = int(M.add[m, m2])
            sums.append((k, int(positions[k][k]), [(m, int(positions[m][m])), (m2, int(positions[m2][m2]))]))
    return Diagram(nodes, edges, sums, points=list(range(M.size)))


@dataclass(eq=False)
class ColimitResult:
    module: FiniteSemimodule
    cocone: list  # per node: index map into module
    roots: list
    diagram: Diagram

    def mediating_map(self, target: FiniteSemimodule, legs):
        """The unique hom ``u`` with ``u o cocone[k] = legs[k]``, or None if legs is not a cocone factoring."""
        D = self.diagram
        for s, t, h in D.edges:
            if not np.array_equal(np.asarray(legs[t])[h], np.asarray(legs[s])):
                return None
        u = np.full(self.module.size, -1)
        for k, leg in enumerate(legs):
            img = self.cocone[k]
            for x in range(len(leg)):
                q = img[x]
                if u[q] == -1:
                    u[q] = leg[x]
                elif u[q] != leg[x]:
                    return None
        # close under sums: every colimit element is a sum of root images
        changed = True
        while changed and (u < 0).any():
            changed = False
            known = np.flatnonzero(u >= 0)
            for a in known:
                for b in known:
                    c = self.module.add[a, b]
                    if u[c] == -1:
                        u[c] = target.add[u[a], u[b]]
                        changed = True
        if (u < 0).any():
            raise InternalError("colimit element not reached from the cocone")
        hom = SemimoduleHom(self.module, target, u)
        return u if hom.is_hom() else None


def _path_maps(D: Diagram):
    """For every node a root node and a composite hom from it to the root."""
    k = len(D.nodes)
    out_edges = [[] for _ in range(k)]
    for s, t, h in D.edges:
        if s != t:
            out_edges[s].append((t, np.asarray(h)))
    # strongly connected components via reachability
    reach = np.eye(k, dtype=bool)
    for s, t, _ in D.edges:
        reach[s, t] = True
    for j in range(k):
        reach |= reach[:, [j]] & reach[[j], :]
    sink = [all(reach[t, i] for t, _ in out_edges[i]) for i in range(k)]
    roots = []
    root_of = {}
    for i in range(k):
        if sink[i]:
            scc = [j for j in range(k) if reach[i, j] and reach[j, i]]
            r = min(scc)
            if r not in roots:
                roots.append(r)
            root_of[i] = r
    roots.sort()
    maps = {}
    for i in range(k):
        # BFS towards a root
        prev = {i: None}
        queue = deque([i])
        target = None
        while queue:
            x = queue.popleft()
            if x in roots:
                target = x
                break
            for t, h in out_edges[x]:
                if t not in prev:
                    prev[t] = (x, h)
                    queue.append(t)
        if target is None:
            raise InternalError("node reaches no sink component")
        path = []
        y = target
        while prev[y] is not None:
            x, h = prev[y]
            path.append(h)
            y = x
        f = np.arange(D.nodes[i].size)
        for h in reversed(path):
            f = h[f]
        maps[i] = (target, f)
    return roots, maps


def colimit(D: Diagram, additive=True, cap=None) -> ColimitResult:
    """Colimit of a finite diagram of semimodules.

    Every cocone is determined by its legs on one node per terminal strongly
    connected component (the roots), so the colimit is the direct sum of the
    roots modulo the relations imposed by all edges (and, with ``additive``,
    by the diagram's additive relations).
    """
    roots, maps = _path_maps(D)
    root_nodes = [D.nodes[r] for r in roots]
    total = semimodule_direct_sum(root_nodes, cap=cap)
    sizes = [N.size for N in root_nodes]
    rpos = {r: i for i, r in enumerate(roots)}

    def phi(node):
        target, f = maps[node]
        coords = [np.full(len(f), N.zero) for N in root_nodes]
        coords[rpos[target]] = f
        return np.ravel_multi_index(coords, sizes)

    phis = [phi(i) for i in range(len(D.nodes))]
    xs, ys = [], []
    for s, t, h in D.edges:
        xs.append(phis[t][np.asarray(h)])
        ys.append(phis[s])
    if additive:
        for node, x, terms in D.sums:
            acc = total.zero
            for j, y in terms:
                acc = total.add[acc, phis[j][y]]
            xs.append([phis[node][x]])
            ys.append([acc])
    if xs:
        lab = _closure_labels(total, "semimodule", np.concatenate(xs), np.concatenate(ys))
    else:
        lab = np.arange(total.size)
    theta = Congruence(total, lab, "semimodule")
    Q, proj = quotient_by_congruence(total, theta)
    cocone = [proj.map[p] for p in phis]
    return ColimitResult(Q, cocone, roots, D)


def inclusion_legs(D: Diagram, M: FiniteSemimodule):
    """Legs of the tautological cocone of a c-diagram into its ambient module."""
    legs = []
    for m, node in zip(D.points, D.nodes):
        carrier = np.unique(M.action[m])
        legs.append(carrier)
    return legs


# ---------------------------------------------------------------------------
# general projectivity


def greedy_generators(M: FiniteSemimodule) -> list[int]:
    gens: list[int] = []
    cur = generated_subsemimodule(M, gens)
    while not cur.all():
        best, best_size = None, -1
        for m in range(M.size):
            if cur[m]:
                continue
            size = int(generated_subsemimodule(M, gens + [m]).sum())
            if size > best_size:
                best, best_size = m, size
        gens.append(best)
        cur = generated_subsemimodule(M, gens)
    return gens


def is_projective(M: FiniteSemimodule, generators=None, budget=None) -> bool:
    """Whether the surjection ``S^g -> M`` from a generating set splits."""
    S = M.ring
    gens = list(generators) if generators is not None else greedy_generators(M)
    if not generated_subsemimodule(M, gens).all():
        raise BadParams("generators do not generate the module")
    budget = get_config().search_budget if budget is None else budget
    g = len(gens)
    if g == 0:
        return True  # zero module
    q = S.size
    free = _all_vectors(S, g)  # (q^g, g)
    pi = np.full(len(free), M.zero)
    for i, m in enumerate(gens):
        pi = M.add[pi, M.action[m, free[:, i]]]
    # candidate images of each generator: preimages under pi
    cands = [np.flatnonzero(pi == m) for m in gens]
    needed = int(np.prod([len(c) for c in cands], dtype=object))
    if needed > budget:
        raise SearchBudgetExceeded(needed, budget)
    weights = q ** np.arange(g - 1, -1, -1)
    order = np.argsort(pi, kind="stable")
    _, first = np.unique(pi[order], return_index=True)
    rep_of_class = order[first][np.searchsorted(np.unique(pi), pi)]
    for choice in itertools.product(*cands):
        # sigma(w) = sum_i v_i w_i computed coordinatewise in S^g
        sig = np.full((len(free), g), S.zero)
        for i, v in enumerate(choice):
            vi = free[v]  # coordinates of v_i
            sig = S.add[sig, S.mul[vi[None, :], free[:, [i]]]]
        code = sig @ weights
        if (code == code[rep_of_class]).all():
            return True
    return False


# ---------------------------------------------------------------------------
# Peirce pairs and special elements


def central_idempotents(S: FiniteSemiring) -> list[int]:
    idem = np.diagonal(S.mul) == np.arange(S.size)
    central = (S.mul == S.mul.T).all(axis=1)
    return [int(e) for e in np.flatnonzero(idem & central)]


def _peirce_iso(S, e, f):
    Ce = corner_semiring(S, e, allow_zero=True)
    Cf = corner_semiring(S, f, allow_zero=True)
    T = direct_sum(Ce, Cf)
    ce = np.full(S.size, -1)
    cf = np.full(S.size, -1)
    if e != S.zero:
        els = sorted({int(x) for x in S.mul[S.mul[e, :], e]})
        ce[els] = np.arange(len(els))
    else:
        ce[S.zero] = 0
    if f != S.zero:
        els = sorted({int(x) for x in S.mul[S.mul[f, :], f]})
        cf[els] = np.arange(len(els))
    else:
        cf[S.zero] = 0
    phi = ce[S.mul[:, e]] * Cf.size + cf[S.mul[:, f]]
    if len(np.unique(phi)) != S.size or T.size != S.size:
        return None
    if not (np.array_equal(phi[S.add], T.add[np.ix_(phi, phi)]) and np.array_equal(phi[S.mul], T.mul[np.ix_(phi, phi)])):
        return None
    return phi


def peirce_decompositions(S: FiniteSemiring) -> list[tuple[int, int]]:
    """Complementary central idempotent pairs ``(e, f)``: ``e+f = 1``, ``ef = 0``.

    Each unordered pair appears once; the trivial pair ``(1, 0)`` comes first.
    Every pair is checked to give ``S = eSe (+) fSf`` via ``x -> (xe, xf)``.
    """
    cs = central_idempotents(S)
    out = []
    for i, e in enumerate(cs):
        for f in cs[i:]:
            if S.add[e, f] != S.one or S.mul[e, f] != S.zero:
                continue
            if _peirce_iso(S, e, f) is None:
                raise InternalError(f"Peirce pair {(e, f)} does not split S")
            pair = (e, f) if e == S.one or (f != S.one and e > f) else (f, e)
            out.append(pair)
    out.sort(key=lambda p: (p != (S.one, S.zero), p))
    return out


def infinite_element(S):
    """The element w with ``x + w = w`` for all x, if any."""
    hit = np.flatnonzero((S.add == np.arange(S.size)[None, :]).all(axis=0))
    return int(hit[0]) if len(hit) else None
