"""Fixture builders: truncated polynomial models, products and connected sums.

Every build returns a validated algebra, an optional verified Steenrod
action, and an expectation record derived from the family shape alone so
the main algorithms can be tested against independent ground truth.
"""

import math
import re
from dataclasses import dataclass

import numpy as np

from . import fplin
from .algebra import GradedAlgebra, verify_poincare_duality
from .steenrod import SteenrodAction, operation_shift, verify_action

DEFAULT_TOP_BOUND = 64

ATOM_FAMILIES = ("Sphere", "ComplexProj", "QuatProj", "TruncatedPoly")
FAMILIES = ATOM_FAMILIES + ("Product", "ConnectedSum")


class SizeBound(ValueError):
    """Requested fixture exceeds the configured top-degree bound."""


@dataclass(frozen=True)
class FixtureSpec:
    family: str
    args: tuple
    p: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    def _body(self) -> str:
        inner = ",".join(a._body() if isinstance(a, FixtureSpec) else str(a)
                         for a in self.args)
        return f"{self.family}({inner})"

    def __str__(self) -> str:
        return f"{self._body()}@{self.p}"


@dataclass(frozen=True)
class Expectation:
    """Ground truth a fixture family promises; None fields are not asserted."""
    periodic: bool | None
    min_period: int | None
    irreducible: bool | None
    summand_count: int | None


@dataclass(frozen=True)
class Fixture:
    spec: FixtureSpec
    algebra: GradedAlgebra
    action: SteenrodAction | None
    expectation: Expectation


def sphere(n: int, p: int = 2) -> FixtureSpec:
    return FixtureSpec("Sphere", (n,), p)


def complex_proj(m: int, p: int = 2) -> FixtureSpec:
    return FixtureSpec("ComplexProj", (m,), p)


def quat_proj(m: int, p: int = 2) -> FixtureSpec:
    return FixtureSpec("QuatProj", (m,), p)


def truncated_poly(g: int, t: int, p: int = 2) -> FixtureSpec:
    return FixtureSpec("TruncatedPoly", (g, t), p)


def product(a: FixtureSpec, b: FixtureSpec) -> FixtureSpec:
    if a.p != b.p:
        raise ValueError("product factors must share the prime")
    return FixtureSpec("Product", (a, b), a.p)


def connected_sum(a: FixtureSpec, b: FixtureSpec) -> FixtureSpec:
    if a.p != b.p:
        raise ValueError("connected summands must share the prime")
    return FixtureSpec("ConnectedSum", (a, b), a.p)


_TOKEN = re.compile(r"\s*([A-Za-z]+|\d+|[(),@])")


def parse_spec(text: str, default_p: int = 2) -> FixtureSpec:
    """Parse strings like "ConnectedSum(ComplexProj(4),ComplexProj(4))@2"."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"bad spec syntax at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take(expect=None):
        nonlocal idx
        if idx >= len(tokens):
            raise ValueError("spec ended early")
        tok = tokens[idx]
        if expect is not None and tok != expect:
            raise ValueError(f"expected {expect!r}, got {tok!r}")
        idx += 1
        return tok

    def node():
        name = take()
        if name not in FAMILIES:
            raise ValueError(f"unknown family {name!r}")
        take("(")
        args = []
        while True:
            tok = peek()
            if tok == ")" or tok is None:
                break
            args.append(int(take()) if tok.isdigit() else node())
            if peek() == ",":
                take(",")
        take(")")
        return name, tuple(args)

    tree = node()
    p = default_p
    if peek() == "@":
        take("@")
        p = int(take())
    if idx != len(tokens):
        raise ValueError(f"trailing spec tokens {tokens[idx:]!r}")

    def stamp(t):
        name, args = t
        return FixtureSpec(name, tuple(stamp(a) if isinstance(a, tuple) else a
                                       for a in args), p)

    return stamp(tree)


def _atom_shape(spec: FixtureSpec) -> tuple[int, int]:
    """(generator degree, truncation exponent) of an atomic family."""
    if spec.family == "Sphere":
        (n,) = spec.args
        return int(n), 1
    if spec.family == "ComplexProj":
        (m,) = spec.args
        return 2, int(m)
    if spec.family == "QuatProj":
        (m,) = spec.args
        return 4, int(m)
    (g, t) = spec.args
    return int(g), int(t)


def top_degree_of(spec: FixtureSpec) -> int:
    if spec.family == "Product":
        return top_degree_of(spec.args[0]) + top_degree_of(spec.args[1])
    if spec.family == "ConnectedSum":
        left = top_degree_of(spec.args[0])
        right = top_degree_of(spec.args[1])
        if left != right:
            raise ValueError("connected summands must share the top degree")
        return left
    g, t = _atom_shape(spec)
    return g * t


def _with_units(dims, mult):
    """Add the multiplication rows forced by the degree-0 unit."""
    for j, d in enumerate(dims):
        if d == 0:
            continue
        eye = np.eye(d, dtype=np.int64)
        mult.setdefault((0, j), eye)
        if j:
            mult.setdefault((j, 0), eye)
    return mult


def _build_truncated(p: int, g: int, t: int):
    """Single-generator truncated algebra with its power-operation rules."""
    if g < 1 or t < 1:
        raise ValueError("need generator degree >= 1 and truncation >= 1")
    if p != 2 and g % 2 and t > 1:
        raise ValueError("an odd-degree generator squares to zero at odd primes")
    n = g * t
    dims = [1 if i % g == 0 and i // g <= t else 0 for i in range(n + 1)]
    mult = {}
    for a in range(1, t + 1):
        for b in range(1, t + 1 - a):
            mult[(g * a, g * b)] = np.array([[1]], dtype=np.int64)
    labels = {g * m: (f"y^{m}" if m > 1 else "y",) for m in range(1, t + 1)}
    labels[0] = ("1",)
    alg = GradedAlgebra(p, n, dims, _with_units(dims, mult), labels)
    maps = {}
    if p == 2:
        for m in range(1, t + 1):
            for s in range(1, t + 1 - m):
                c = math.comb(m, s) % 2
                if c:
                    maps[(g * s, g * m)] = np.array([[c]], dtype=np.int64)
    elif g % 2 == 0:
        w = g // 2
        if (p - 1) % w and t > 1:
            return alg, None
        for m in range(1, t + 1):
            s = 1
            while True:
                e = s * (p - 1)
                if g * m + 2 * e > n:
                    break
                if e % w == 0:
                    m2 = m + e // w
                    c = math.comb(w * m, s) % p
                    if m2 <= t and c:
                        maps[(s, g * m)] = np.array([[c]], dtype=np.int64)
                s += 1
    return alg, SteenrodAction(alg, maps)


def _kunneth_slots(A: GradedAlgebra, B: GradedAlgebra):
    """Per-degree list of (left degree, left index, right index) basis slots."""
    n = A.n + B.n
    slots = {k: [] for k in range(n + 1)}
    for i in range(A.n + 1):
        for ai in range(A.dim(i)):
            for j in range(B.n + 1):
                for bj in range(B.dim(j)):
                    slots[i + j].append((i, ai, bj))
    for k in slots:
        slots[k].sort()
    return slots


def _build_product(A: GradedAlgebra, actA, B: GradedAlgebra, actB):
    p = A.p
    n = A.n + B.n
    slots = _kunneth_slots(A, B)
    index = {k: {s: t for t, s in enumerate(slots[k])} for k in slots}
    dims = [len(slots[k]) for k in range(n + 1)]
    mult = {}
    for k in range(n + 1):
        for l in range(n + 1 - k):
            dk, dl, dt = dims[k], dims[l], dims[k + l]
            if dk == 0 or dl == 0 or dt == 0:
                continue
            table = np.zeros((dt, dk * dl), dtype=np.int64)
            for u, (i1, a1, b1) in enumerate(slots[k]):
                for v, (i2, a2, b2) in enumerate(slots[l]):
                    sign = p - 1 if ((k - i1) * i2) % 2 else 1
                    if i1 + i2 > A.n or (k - i1) + (l - i2) > B.n:
                        continue
                    va = A.cup(i1, A.basis_element(i1, a1), i2, A.basis_element(i2, a2))
                    vb = B.cup(k - i1, B.basis_element(k - i1, b1),
                               l - i2, B.basis_element(l - i2, b2))
                    for ta in range(va.shape[0]):
                        if va[ta] == 0:
                            continue
                        for tb in range(vb.shape[0]):
                            if vb[tb] == 0:
                                continue
                            row = index[k + l][(i1 + i2, ta, tb)]
                            table[row, u * dl + v] = (
                                table[row, u * dl + v] + sign * va[ta] * vb[tb]) % p
            if table.any():
                mult[(k, l)] = table
    alg = GradedAlgebra(p, n, dims, mult)
    if actA is None or actB is None:
        return alg, None
    maps = {}
    for k in range(1, n + 1):
        if dims[k] == 0:
            continue
        s = 1
        while k + operation_shift(p, s) <= n:
            t = k + operation_shift(p, s)
            table = np.zeros((dims[t], dims[k]), dtype=np.int64)
            for u, (i, ai, bi) in enumerate(slots[k]):
                j = k - i
                for h in range(s + 1):
                    ta = i + operation_shift(p, h)
                    tb = j + operation_shift(p, s - h)
                    if ta > A.n or tb > B.n:
                        continue
                    va = actA.apply(h, i, A.basis_element(i, ai))
                    vb = actB.apply(s - h, j, B.basis_element(j, bi))
                    for xa in range(va.shape[0]):
                        if va[xa] == 0:
                            continue
                        for xb in range(vb.shape[0]):
                            if vb[xb] == 0:
                                continue
                            row = index[t][(ta, xa, xb)]
                            table[row, u] = (table[row, u] + va[xa] * vb[xb]) % p
            if table.any():
                maps[(s, k)] = table
            s += 1
    return alg, SteenrodAction(alg, maps)


def _build_connected_sum(A: GradedAlgebra, actA, B: GradedAlgebra, actB):
    p = A.p
    n = A.n
    if B.n != n or n < 2:
        raise ValueError("connected summands must share a top degree >= 2")
    if A.dim(0) != 1 or B.dim(0) != 1 or A.dim(n) != 1 or B.dim(n) != 1:
        raise ValueError("connected summands need one-dimensional ends")
    dims = [1] + [A.dim(i) + B.dim(i) for i in range(1, n)] + [1]

    def block(i, side_vec, side):
        out = np.zeros(dims[i], dtype=np.int64)
        if i == 0 or i == n:
            return side_vec.copy()
        off = 0 if side == 0 else A.dim(i)
        out[off:off + side_vec.shape[0]] = side_vec
        return out

    mult = {}
    for i in range(1, n):
        for j in range(1, n + 1 - i):
            dt = dims[i + j] if i + j <= n else 0
            if dims[i] == 0 or dims[j] == 0 or dt == 0:
                continue
            table = np.zeros((dt, dims[i] * dims[j]), dtype=np.int64)
            for side, alg in ((0, A), (1, B)):
                offi = 0 if side == 0 else A.dim(i)
                offj = 0 if side == 0 else A.dim(j)
                for a in range(alg.dim(i)):
                    for b in range(alg.dim(j)):
                        v = alg.cup(i, alg.basis_element(i, a), j, alg.basis_element(j, b))
                        col = (offi + a) * dims[j] + (offj + b)
                        table[:, col] = block(i + j, v, side)
            if table.any():
                mult[(i, j)] = table
    alg = GradedAlgebra(p, n, dims, _with_units(dims, mult))
    if actA is None or actB is None:
        return alg, None
    maps = {}
    for side, src, act in ((0, A, actA), (1, B, actB)):
        for (s, j), m in act.maps.items():
            if j == 0 or j >= n:
                continue
            t = j + operation_shift(p, s)
            table = maps.setdefault((s, j), np.zeros((dims[t], dims[j]), dtype=np.int64))
            offj = 0 if side == 0 else A.dim(j)
            for b in range(src.dim(j)):
                table[:, offj + b] = block(t, m[:, b], side)
    maps = {key: m for key, m in maps.items() if m.any()}
    return alg, SteenrodAction(alg, maps)


def _atom_expectation(g: int, t: int) -> Expectation:
    if t == 1:
        if g >= 2:
            return Expectation(True, 1, True, 0)
        return Expectation(False, None, None, None)
    if t == 2:
        return Expectation(False, None, None, None)
    if t == 3:
        return Expectation(True, g, None, None)
    return Expectation(True, g, True, 1)


def _leaves(spec: FixtureSpec):
    if spec.family == "ConnectedSum":
        return _leaves(spec.args[0]) + _leaves(spec.args[1])
    return (spec,)


def _expectation(spec: FixtureSpec) -> Expectation:
    if spec.family == "Product":
        a, b = spec.args
        if a.family == "Sphere" and b.family == "Sphere":
            return Expectation(False, None, None, None)
        return Expectation(None, None, None, None)
    if spec.family == "ConnectedSum":
        leaves = _leaves(spec)
        if len(set(leaves)) != 1:
            return Expectation(None, None, None, None)
        leaf = _expectation(leaves[0])
        if leaf.periodic is False:
            return leaf
        if leaf.periodic is None or leaf.min_period is None:
            return Expectation(None, None, None, None)
        count = None
        if leaf.summand_count is not None:
            count = leaf.summand_count * len(leaves)
        irr = None
        if count is not None:
            irr = leaf.irreducible if count <= 1 else False
        return Expectation(True, leaf.min_period, irr, count)
    return _atom_expectation(*_atom_shape(spec))


def build(spec: FixtureSpec, bound: int = DEFAULT_TOP_BOUND) -> Fixture:
    """Build, validate and package a fixture with its expectation record."""
    top = top_degree_of(spec)
    if top > bound:
        raise SizeBound(f"top degree {top} exceeds the bound {bound}")

    def rec(node):
        if node.family == "Product":
            la, aa = rec(node.args[0])
            lb, ab = rec(node.args[1])
            return _build_product(la, aa, lb, ab)
        if node.family == "ConnectedSum":
            la, aa = rec(node.args[0])
            lb, ab = rec(node.args[1])
            return _build_connected_sum(la, aa, lb, ab)
        g, t = _atom_shape(node)
        return _build_truncated(node.p, g, t)

    alg, act = rec(spec)
    alg.validate()
    if not verify_poincare_duality(alg):
        raise AssertionError(f"fixture {spec} fails the duality pairing check")
    if act is not None:
        verify_action(alg, act)
    return Fixture(spec, alg, act, _expectation(spec))
