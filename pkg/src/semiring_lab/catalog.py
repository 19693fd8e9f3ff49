"""Named semirings.

``construct(id, *params)`` builds one catalog object; ``parse_spec`` reads the
short textual form used on the command line, e.g. ``"Ext Z4"``, ``"MatB 2"``,
``"Sum Z2 B"`` or ``"Mat B3 2"``.
"""

from __future__ import annotations

import itertools

import numpy as np

from .core import FiniteSemiring, direct_sum, matrix_semiring, trivial_semiring
from .errors import BadParams


def boolean_semifield() -> FiniteSemiring:
    return FiniteSemiring([[0, 1], [1, 1]], [[0, 0], [0, 1]], 0, 1, ["0", "1"], name="B")


def b3() -> FiniteSemiring:
    """Chain 0 < 1 < 2, x+y = max, xy = 0 if either is 0 else max."""
    x = np.arange(3)
    add = np.maximum.outer(x, x)
    mul = np.where((x[:, None] == 0) | (x[None, :] == 0), 0, add)
    return FiniteSemiring(add, mul, 0, 1, ["0", "1", "2"], name="B3")


def b31() -> FiniteSemiring:
    """Naturals truncated at 2."""
    x = np.arange(3)
    add = np.minimum(2, x[:, None] + x[None, :])
    mul = np.minimum(2, x[:, None] * x[None, :])
    return FiniteSemiring(add, mul, 0, 1, ["0", "1", "2"], name="B31")


def zmod(n: int) -> FiniteSemiring:
    if n < 1:
        raise BadParams("Z n needs n >= 1")
    if n == 1:
        return trivial_semiring().with_name("Z1")
    x = np.arange(n)
    return FiniteSemiring(
        (x[:, None] + x[None, :]) % n, (x[:, None] * x[None, :]) % n, 0, 1, name=f"Z{n}"
    )


def boolean_algebra(k: int) -> FiniteSemiring:
    """``B^k`` with lexicographic tuple order."""
    if k < 1:
        raise BadParams("Bool k needs k >= 1")
    S = boolean_semifield()
    for _ in range(k - 1):
        S = direct_sum(S, boolean_semifield())
    labels = ["".join(t) for t in itertools.product("01", repeat=k)]
    return FiniteSemiring(S.add, S.mul, S.zero, S.one, labels, name=f"B^{k}")


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


def galois_field(q: int) -> FiniteSemiring:
    """GF(q) for a prime power q; element i encodes the polynomial with base-p digits of i."""
    pk = _prime_power(q) if q >= 2 else None
    if pk is None:
        raise BadParams(f"GF needs a prime power, got {q}")
    p, k = pk
    digits = np.array([[(i // p**j) % p for j in range(k)] for i in range(q)])

    def polymul_mod(a, b, modulus):
        prod = np.zeros(2 * k - 1, dtype=np.int64)
        for i in range(k):
            prod[i : i + k] += a[i] * b
        prod %= p
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                prod[d - k : d + 1] = (prod[d - k : d + 1] - c * modulus) % p
        return prod[:k]

    def encode(v):
        return int(sum(int(c) * p**j for j, c in enumerate(v)))

    modulus = None
    if k == 1:
        modulus = np.array([0, 1])
    else:
        # first monic degree-k modulus whose quotient ring has no zero divisors
        for tail in itertools.product(range(p), repeat=k):
            cand = np.array(list(tail) + [1])
            ok = True
            for a in range(1, q):
                for b in range(1, q):
                    if not polymul_mod(digits[a], digits[b], cand).any():
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                modulus = cand
                break
    add = np.array([[encode((digits[a] + digits[b]) % p) for b in range(q)] for a in range(q)])
    if k == 1:
        x = np.arange(q)
        mul = (x[:, None] * x[None, :]) % q
    else:
        mul = np.array([[encode(polymul_mod(digits[a], digits[b], modulus)) for b in range(q)] for a in range(q)])
    return FiniteSemiring(add, mul, 0, 1, name=f"GF{q}")


def ext(R: FiniteSemiring) -> FiniteSemiring:
    """``R`` plus a new additive identity 0 and an absorbing-for-addition element inf.

    Element order: new 0, the ring unit, the other ring elements in ring order, inf.
    """
    if not (R.add == R.zero).any(axis=1).all():
        raise BadParams("Ext needs a ring (every element additively invertible)")
    if R.size < 2:
        raise BadParams("Ext needs a nonzero ring")
    ring_order = [R.one] + [r for r in range(R.size) if r != R.one]
    n = R.size + 2
    pos = np.empty(R.size, dtype=int)
    pos[ring_order] = np.arange(1, R.size + 1)
    zero, inf = 0, n - 1
    add = np.empty((n, n), dtype=int)
    mul = np.empty((n, n), dtype=int)
    r_idx = np.array(ring_order)
    add[1:-1, 1:-1] = pos[R.add[np.ix_(r_idx, r_idx)]]
    mul[1:-1, 1:-1] = pos[R.mul[np.ix_(r_idx, r_idx)]]
    add[zero, :] = np.arange(n)
    add[:, zero] = np.arange(n)
    add[inf, :] = inf
    add[:, inf] = inf
    mul[inf, :] = inf
    mul[:, inf] = inf
    mul[zero, :] = zero
    mul[:, zero] = zero
    labels = ["0"] + [f"r:{R.labels[r]}" for r in ring_order] + ["inf"]
    return FiniteSemiring(add, mul, zero, 1, labels, name=f"Ext({R.name})")


def _end_of(lattice_name):
    from . import lattices

    return lattices.endomorphism_semiring(lattices.named_lattice(lattice_name))


def construct(catalog_id: str, *params) -> FiniteSemiring:
    cid = catalog_id
    if cid == "B":
        return boolean_semifield()
    if cid == "B3":
        return b3()
    if cid == "B31":
        return b31()
    if cid == "Z":
        return zmod(int(params[0]))
    if cid.startswith("Z") and cid[1:].isdigit():
        return zmod(int(cid[1:]))
    if cid == "Bool":
        return boolean_algebra(int(params[0]))
    if cid == "GF":
        return galois_field(int(params[0]))
    if cid.startswith("GF") and cid[2:].isdigit():
        return galois_field(int(cid[2:]))
    if cid == "Ext":
        R = params[0] if isinstance(params[0], FiniteSemiring) else parse_spec(str(params[0]))
        return ext(R)
    if cid == "MatB":
        return matrix_semiring(boolean_semifield(), int(params[0]))
    if cid == "Mat":
        S = params[0] if isinstance(params[0], FiniteSemiring) else parse_spec(str(params[0]))
        return matrix_semiring(S, int(params[1]))
    if cid == "Sum":
        parts = [p if isinstance(p, FiniteSemiring) else parse_spec(str(p)) for p in params]
        if len(parts) < 2:
            raise BadParams("Sum needs two summands")
        out = parts[0]
        for p in parts[1:]:
            out = direct_sum(out, p)
        return out
    if cid == "End":
        return _end_of(str(params[0]))
    if cid == "Trivial":
        return trivial_semiring()
    raise BadParams(f"unknown catalog id {catalog_id!r}")


# arity of each id in the textual form; semiring-valued arguments are nested terms
_ARITY = {
    "B": (),
    "B3": (),
    "B31": (),
    "Trivial": (),
    "Z": ("int",),
    "Bool": ("int",),
    "GF": ("int",),
    "Ext": ("ring",),
    "MatB": ("int",),
    "Mat": ("ring", "int"),
    "Sum": ("ring", "ring"),
    "End": ("word",),
}


def _parse(tokens, i):
    if i >= len(tokens):
        raise BadParams("unexpected end of catalog spec")
    head = tokens[i]
    i += 1
    if (head.startswith("Z") and head[1:].isdigit()) or (head.startswith("GF") and head[2:].isdigit()):
        return construct(head), i
    if head not in _ARITY:
        raise BadParams(f"unknown catalog id {head!r}")
    args = []
    for kind in _ARITY[head]:
        if kind == "ring":
            arg, i = _parse(tokens, i)
        else:
            if i >= len(tokens):
                raise BadParams(f"{head} is missing a parameter")
            arg = tokens[i]
            i += 1
            if kind == "int":
                try:
                    arg = int(arg)
                except ValueError as exc:
                    raise BadParams(f"{head} expects an integer, got {arg!r}") from exc
        args.append(arg)
    return construct(head, *args), i


def parse_spec(text: str) -> FiniteSemiring:
    tokens = text.replace("(", " ").replace(")", " ").replace(",", " ").split()
    S, i = _parse(tokens, 0)
    if i != len(tokens):
        raise BadParams(f"trailing tokens in catalog spec: {tokens[i:]}")
    return S.with_name(" ".join(tokens)) if not S.name else S


CATALOG_SPECS = (
    "B",
    "B3",
    "B31",
    "Z2",
    "Z3",
    "Z4",
    "Z6",
    "GF4",
    "Bool 2",
    "Bool 3",
    "Ext Z2",
    "Ext Z3",
    "Ext Z4",
    "MatB 2",
    "Mat Z2 2",
    "Sum Z2 B",
    "Sum B B3",
    "Sum Z3 B31",
    "End C3",
    "End C4",
)


def catalog(specs=CATALOG_SPECS) -> list[tuple[str, FiniteSemiring]]:
    """The standard named corpus as ``(spec, semiring)`` pairs."""
    return [(s, parse_spec(s)) for s in specs]
