"""Power operations on graded algebras over GF(p).

For p = 2 the operations are the squares Sq^s raising degree by s; for
odd p the reduced powers P^s raising degree by 2s(p-1).  An action
stores one matrix per (s, source degree); missing maps are zero and
s = 0 is the identity.  Also: the mod-2 relation calculus on formal
monomials (rewriting to admissible form) and the expression of a
non-2-power Sq^k through compositions led by Sq^(2^i).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import fplin
from .algebra import GradedAlgebra


class ActionDefect(ValueError):
    """A stored action violates one of the operation axioms."""


class IsPowerOfTwo(ValueError):
    """Sq^k is indecomposable for k a power of two."""


class InducedActionFailure(RuntimeError):
    """The ambient action does not descend to the periodic subquotient."""


def operation_shift(p: int, s: int) -> int:
    """Degree raised by the s-th operation."""
    return s if p == 2 else 2 * s * (p - 1)


class SteenrodAction:
    def __init__(self, alg: GradedAlgebra, maps):
        self.alg = alg
        self.p = alg.p
        self.maps: dict[tuple[int, int], np.ndarray] = {}
        for (s, j), m in maps.items():
            if s < 1:
                raise ValueError("store only operations with s >= 1; s = 0 is implied")
            t = j + operation_shift(self.p, s)
            if t > alg.n:
                continue
            arr = fplin.as_matrix(m, self.p)
            want = (alg.dim(t), alg.dim(j))
            if arr.shape != want:
                raise ValueError(f"operation ({s}, {j}) has shape {arr.shape}, expected {want}")
            if arr.size and arr.any():
                arr.setflags(write=False)
                self.maps[(s, j)] = arr

    def target_degree(self, s: int, j: int) -> int:
        return j + operation_shift(self.p, s)

    def op_matrix(self, s: int, j: int) -> np.ndarray:
        if s == 0:
            return np.eye(self.alg.dim(j), dtype=np.int64)
        m = self.maps.get((s, j))
        if m is None:
            return np.zeros((self.alg.dim(self.target_degree(s, j)), self.alg.dim(j)), dtype=np.int64)
        return m

    def apply(self, s: int, j: int, vec) -> np.ndarray:
        v = fplin.as_vector(vec, self.p)
        return (self.op_matrix(s, j) @ v) % self.p

    def to_dict(self) -> dict:
        return {"maps": {f"{s},{j}": m.tolist() for (s, j), m in sorted(self.maps.items())}}

    @classmethod
    def from_dict(cls, alg: GradedAlgebra, data: dict) -> "SteenrodAction":
        maps = {}
        for key, m in data.get("maps", {}).items():
            s, j = (int(v) for v in key.split(","))
            maps[(s, j)] = m
        return cls(alg, maps)


def element_power(alg: GradedAlgebra, degree: int, vec, e: int) -> tuple[int, np.ndarray]:
    """e-th multiplicative power; zero above the top degree."""
    if e < 1:
        raise ValueError("need e >= 1")
    d, v = degree, fplin.as_vector(vec, alg.p)
    for _ in range(e - 1):
        v = alg.cup(degree, vec, d, v)
        d += degree
        if d > alg.n:
            return d, np.zeros(0, dtype=np.int64)
    return d, v


def verify_action(alg: GradedAlgebra, act: SteenrodAction) -> None:
    """Check instability, the top-power axiom and the Cartan formula."""
    if act.alg is not alg and act.alg.to_dict() != alg.to_dict():
        raise ActionDefect("action was built over a different algebra")
    p, n = alg.p, alg.n
    for (s, j), m in act.maps.items():
        unstable = s > j if p == 2 else 2 * s > j
        if unstable and m.any():
            raise ActionDefect(f"operation ({s}, {j}) must vanish above the degree")
    for j in range(1, n + 1):
        if alg.dim(j) == 0:
            continue
        s = j if p == 2 else (j // 2 if j % 2 == 0 else None)
        if s is None or s == 0:
            continue
        t = act.target_degree(s, j)
        if t > n:
            continue
        got = act.op_matrix(s, j)
        want = np.zeros((alg.dim(t), alg.dim(j)), dtype=np.int64)
        for b in range(alg.dim(j)):
            deg, v = element_power(alg, j, alg.basis_element(j, b), 2 if p == 2 else p)
            if deg == t and v.size:
                want[:, b] = v
        if not np.array_equal(got, want):
            raise ActionDefect(f"top operation on degree {j} is not the {'square' if p == 2 else 'p-th power'}")
    for i in range(n + 1):
        for j in range(i, n + 1 - i):
            if alg.dim(i) == 0 or alg.dim(j) == 0:
                continue
            s = 1
            while i + j + operation_shift(p, s) <= n:
                t = i + j + operation_shift(p, s)
                lhs = (act.op_matrix(s, i + j) @ alg.mult_map(i, j)) % p
                rhs = np.zeros_like(lhs)
                for h in range(s + 1):
                    ti = act.target_degree(h, i)
                    tj = act.target_degree(s - h, j)
                    if ti > n or tj > n:
                        continue
                    piece = np.einsum(
                        "tuv,ua,vb->tab",
                        alg.mult3(ti, tj),
                        act.op_matrix(h, i),
                        act.op_matrix(s - h, j),
                    ).reshape(alg.dim(t), alg.dim(i) * alg.dim(j))
                    rhs = (rhs + piece) % p
                if not np.array_equal(lhs, rhs):
                    raise ActionDefect(f"Cartan formula fails for s={s} on degrees ({i}, {j})")
                s += 1


def binom_odd(n: int, k: int) -> bool:
    """True iff C(n, k) is odd."""
    return 0 <= k <= n and (k & (n - k)) == 0


def is_admissible(mono: tuple[int, ...]) -> bool:
    return all(mono[t] >= 2 * mono[t + 1] for t in range(len(mono) - 1))


@lru_cache(maxsize=None)
def _normal_form_mono(mono: tuple[int, ...]) -> frozenset:
    for t in range(len(mono) - 1):
        a, b = mono[t], mono[t + 1]
        if a < 2 * b:
            out: set = set()
            for j in range(a // 2 + 1):
                if not binom_odd(b - 1 - j, a - 2 * j):
                    continue
                mid = (a + b - j,) if j == 0 else (a + b - j, j)
                out ^= _normal_form_mono(mono[:t] + mid + mono[t + 2 :])
            return frozenset(out)
    return frozenset({mono})


def adem_normal_form(monos) -> frozenset:
    """Mod-2 sum of monomials rewritten to admissible form."""
    out: set = set()
    for mono in monos:
        mono = tuple(int(i) for i in mono)
        if any(i < 1 for i in mono):
            raise ValueError("monomial entries must be >= 1")
        out ^= _normal_form_mono(mono)
    return frozenset(out)


def evaluate_monomial(act: SteenrodAction, mono, j: int, vec) -> tuple[int, np.ndarray]:
    """Apply a composite operation, rightmost factor first."""
    d, v = j, fplin.as_vector(vec, act.p)
    for s in reversed(tuple(mono)):
        v = act.apply(s, d, v)
        d = act.target_degree(s, d)
        if d > act.alg.n:
            return d, np.zeros(0, dtype=np.int64)
    return d, v


def evaluate_sum(act: SteenrodAction, monos, j: int, vec) -> tuple[int, np.ndarray]:
    """Apply a formal sum of composites of equal total degree shift."""
    monos = [tuple(m) for m in monos]
    if not monos:
        raise ValueError("empty sum has no well-defined target degree")
    shifts = {sum(m) for m in monos}
    if len(shifts) != 1:
        raise ValueError("mixed total degrees in one sum")
    t = j + operation_shift(act.p, sum(monos[0]))
    if t > act.alg.n:
        return t, np.zeros(0, dtype=np.int64)
    out = np.zeros(act.alg.dim(t), dtype=np.int64)
    for mono in monos:
        d, v = evaluate_monomial(act, mono, j, vec)
        if d == t and v.size:
            out = (out + v) % act.p
    return t, out


def _xor_into(target: set, mono: tuple) -> None:
    if mono in target:
        target.remove(mono)
    else:
        target.add(mono)


@lru_cache(maxsize=None)
def decompose_sq(k: int) -> dict:
    """Write Sq^k as a sum of composites Sq^(2^i) . Q_i, for k not a power of 2.

    Returns {2^i: tuple of admissible monomials of Q_i}.  The identity is
    re-checked through the admissible normal form before returning.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    if k & (k - 1) == 0:
        raise IsPowerOfTwo(f"Sq^{k} is indecomposable")
    for a in range(1, k):
        b = k - a
        if a < 2 * b and binom_odd(b - 1, a):
            break
    else:
        raise AssertionError("unreachable: a splitting pair always exists")
    terms: set = {(a, b)}
    for j in range(1, a // 2 + 1):
        if binom_odd(b - 1 - j, a - 2 * j):
            _xor_into(terms, (k - j, j))
    by_lead: dict[int, set] = {}
    for mono in terms:
        lead, tail = mono[0], mono[1:]
        if lead & (lead - 1) == 0:
            group = by_lead.setdefault(lead, set())
            _xor_into(group, tail)
        else:
            for pw, q_monos in decompose_sq(lead).items():
                group = by_lead.setdefault(pw, set())
                for q in q_monos:
                    _xor_into(group, q + tail)
    result = {}
    check: set = set()
    for pw in sorted(by_lead):
        q = adem_normal_form(by_lead[pw])
        if not q:
            continue
        result[pw] = tuple(sorted(q))
        for mono in q:
            check ^= {(pw,) + mono}
    assert adem_normal_form(check) == frozenset({(k,)})
    return result


def induced_action_on_window(window, act: SteenrodAction) -> SteenrodAction:
    """Restrict a parent action to a window subquotient.

    Needs p * k <= n - 1 for the certificate degree k.  Checks that every
    operation kills the degree-1 kernel, that operation images of window
    representatives stay inside the window spaces, and that operations
    applied to the inducing element stay multiples of it; failures raise
    InducedActionFailure since they contradict a verified certificate.
    """
    parent = window.parent
    p, n, k = window.p, window.n, window.k
    if p * k > n - 1:
        raise InducedActionFailure(f"need p*k <= n-1, got {p * k} > {n - 1}")
    xv = window.certificate.element.as_vector() % p
    s = 1
    while True:
        t = k + operation_shift(p, s)
        if t > n - 1:
            break
        v = act.apply(s, k, xv)
        img = fplin.image(parent.cup_matrix(k, xv, t - k), p)
        if not img.contains(v):
            raise InducedActionFailure(
                f"operation {s} of the inducing element is not one of its multiples in degree {t}")
        s += 1
    for u in window.degree1_kernel.basis:
        s = 1
        while True:
            t = 1 + operation_shift(p, s)
            if t > n - 1:
                break
            if act.apply(s, 1, u).any():
                raise InducedActionFailure(
                    f"a degree-1 kernel class survives operation {s}")
            s += 1
    maps = {}
    for j in range(1, n):
        dj = window.dim(j)
        if dj == 0:
            continue
        s = 1
        while True:
            t = j + operation_shift(p, s)
            if t > n - 1:
                break
            table = np.zeros((window.dim(t), dj), dtype=np.int64)
            for b in range(dj):
                v = act.apply(s, j, window.embed(j, window.basis_element(j, b)))
                try:
                    table[:, b] = window.to_window(t, v)
                except ValueError:
                    raise InducedActionFailure(
                        f"operation ({s}, {j}) leaves the window at degree {t}")
            if table.any():
                maps[(s, j)] = table
            s += 1
    return SteenrodAction(window, maps)


def verify_induced_action(window, parent_action: SteenrodAction,
                          induced: SteenrodAction) -> None:
    """Re-derive the window action and check the axioms over window products."""
    rebuilt = induced_action_on_window(window, parent_action)
    if rebuilt.to_dict() != induced.to_dict():
        raise ActionDefect("stored window action differs from the re-derived one")
    verify_action(window, induced)
