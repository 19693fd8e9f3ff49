"""Ideals and the three simpleness predicates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .congruences import iter_congruences
from .core import ElementSubset, FiniteSemiring, opposite, regular_semimodule, subsemimodules
from .errors import BadParams

SUBSET_SCAN_LIMIT = 12


@dataclass
class IdealSet:
    parent: FiniteSemiring
    side: str
    ideals: list

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __contains__(self, K):
        return any(K == I for I in self.ideals)


def _closed(S, mask, side):
    if not mask[S.zero]:
        return False
    els = np.flatnonzero(mask)
    if not mask[S.add[np.ix_(els, els)]].all():
        return False
    if side in ("right", "two_sided") and not mask[S.mul[els, :]].all():
        return False
    if side in ("left", "two_sided") and not mask[S.mul[:, els]].all():
        return False
    return True


def _by_subsets(S, side):
    n = S.size
    others = [x for x in range(n) if x != S.zero]
    out = []
    for bits in range(1 << len(others)):
        mask = np.zeros(n, dtype=bool)
        mask[S.zero] = True
        for j, x in enumerate(others):
            if bits >> j & 1:
                mask[x] = True
        if _closed(S, mask, side):
            out.append(ElementSubset(S, mask))
    return out


def _principal_two_sided(S, a):
    mask = np.zeros(S.size, dtype=bool)
    mask[S.mul[S.mul[:, a], :].ravel()] = True  # S a S
    mask[S.zero] = True
    while True:
        els = np.flatnonzero(mask)
        new = mask.copy()
        new[S.add[np.ix_(els, els)].ravel()] = True
        if new.sum() == mask.sum():
            return mask
        mask = new


def _by_sums(S):
    """Two-sided ideals as sums of principal ones ``SaS`` (every ideal is such a sum)."""
    n = S.size
    gens = {}
    for a in range(n):
        m = _principal_two_sided(S, a)
        gens.setdefault(m.tobytes(), m)
    zero = np.zeros(n, dtype=bool)
    zero[S.zero] = True
    seen = {zero.tobytes(): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for K in frontier:
            kel = np.flatnonzero(K)
            for C in gens.values():
                if (C <= K).all():
                    continue
                s = np.zeros(n, dtype=bool)
                s[S.add[np.ix_(kel, np.flatnonzero(C))].ravel()] = True
                if s.tobytes() not in seen:
                    seen[s.tobytes()] = s
                    nxt.append(s)
        frontier = nxt
    return [ElementSubset(S, m) for m in seen.values()]


def ideals(S: FiniteSemiring, side="two_sided", method=None) -> IdealSet:
    """All ideals on the given side, sorted by (size, members).

    ``method`` is ``"subsets"`` (scan every subset) or ``"generated"``;
    by default subsets are scanned up to 12 elements.
    """
    if side not in ("right", "left", "two_sided"):
        raise BadParams(f"unknown side {side!r}")
    if method is None:
        method = "subsets" if S.size <= SUBSET_SCAN_LIMIT else "generated"
    if method == "subsets":
        found = _by_subsets(S, side)
    elif method == "generated":
        if side == "right":
            found = subsemimodules(regular_semimodule(S))
        elif side == "left":
            found = [ElementSubset(S, K.members) for K in subsemimodules(regular_semimodule(opposite(S)))]
        else:
            found = _by_sums(S)
        found = [ElementSubset(S, K.members) for K in found]
    else:
        raise BadParams(f"unknown method {method!r}")
    found.sort(key=lambda K: (len(K), K.elements()))
    return IdealSet(S, side, found)


def is_ideal_simple(S: FiniteSemiring) -> bool:
    # the one-element semiring is not counted as simple
    if S.size == 1:
        return False
    return len(ideals(S, "two_sided")) == 2


def is_congruence_simple(S: FiniteSemiring, cap=None) -> bool:
    if S.size == 1:
        return False
    count = 0
    for _ in iter_congruences(S, "semiring", cap):
        count += 1
        if count > 2:
            return False
    return count == 2


def is_simple(S: FiniteSemiring, cap=None) -> bool:
    return is_ideal_simple(S) and is_congruence_simple(S, cap)


def is_semisimple_ring(S: FiniteSemiring) -> bool:
    """A finite ring in which every right ideal is ``eS`` for an idempotent e."""
    if not (S.add == S.zero).any(axis=1).all():
        return False  # some element has no additive inverse
    idem = [e for e in range(S.size) if S.mul[e, e] == e]
    principal = {tuple(np.unique(S.mul[e, :]).tolist()) for e in idem}
    return all(tuple(I.elements()) in principal for I in ideals(S, "right"))
