"""Splitting a collapsed window into irreducibly periodic summands.

The degree-k slice of a window is a commutative ring: multiply two
elements, then shift the product back down.  Each ring element acts on the
whole window by a degree-preserving operator (cup, then unshift), and the
certified element acts as the identity.  Decomposition hunts for a two-part
splitting of the acting element whose parts both fail to act invertibly,
separates the window along kernels of Frobenius powers, and repeats until
every summand is irreducible.  Every step lands in a replayable trace.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import fplin
from .algebra import Element
from .fplin import OrderCapExceeded, Subspace
from .periodicity import (DEFAULT_SEARCH_CAP, SearchCapExceeded,
                          SubquotientAlgebra)


class OverlapMismatch(RuntimeError):
    """The two defining formulas for the action disagree on an overlap degree."""


class VerificationFailure(RuntimeError):
    """An internal re-check failed; valid inputs must never trigger this."""


@dataclass(eq=False)
class MultOperator:
    """Degree-preserving action of a degree-k window element.

    blocks[u] is the square matrix on window degree u sending v to the
    unshift of (element cup v).
    """
    element: Element
    blocks: dict


def _vector_of(window, a, expected_degree=None):
    if isinstance(a, Element):
        if expected_degree is not None and a.degree != expected_degree:
            raise ValueError(f"element has degree {a.degree}, need {expected_degree}")
        return a.as_vector()
    return fplin.as_vector(a, window.p)


def multiplication_operator(window: SubquotientAlgebra, a) -> MultOperator:
    """Assemble the degree-preserving operator of a degree-k element.

    Low degrees unshift after cupping, high degrees cup after unshifting;
    the overlap 1+k..n-1-k must agree under both readings.
    """
    k, n, p = window.k, window.n, window.p
    if 3 * k > n - 1:
        raise ValueError("the action needs 3k <= n-1")
    av = _vector_of(window, a, k)
    blocks = {}
    for u in range(1, n):
        low = high = None
        if u <= n - 1 - k:
            low = (window.shift_invs[u] @ window.cup_matrix(k, av, u)) % p
        if u >= 1 + k:
            high = (window.cup_matrix(k, av, u - k) @ window.shift_invs[u - k]) % p
        if low is not None and high is not None and not np.array_equal(low, high):
            raise OverlapMismatch(f"action formulas disagree in degree {u}")
        blocks[u] = low if low is not None else high
    return MultOperator(Element.of(k, av), blocks)


def ring_product(window: SubquotientAlgebra, a, b) -> np.ndarray:
    """Product of two degree-k window elements, shifted back to degree k."""
    k = window.k
    av = _vector_of(window, a, k)
    bv = _vector_of(window, b, k)
    return window.unshift(k, window.cup(k, av, k, bv))


def ring_power(window: SubquotientAlgebra, a, e: int) -> np.ndarray:
    if e < 1:
        raise ValueError("exponent must be positive")
    base = _vector_of(window, a, window.k)
    result = None
    while e:
        if e & 1:
            result = base.copy() if result is None else ring_product(window, result, base)
        e >>= 1
        if e:
            base = ring_product(window, base, base)
    return result


def check_ring_homomorphism(window: SubquotientAlgebra, a, b) -> bool:
    """Composition of actions matches the action of the ring product, and
    evaluating an action on the certified element recovers the acting
    element (so distinct elements act distinctly)."""
    k = window.k
    av = _vector_of(window, a, k)
    bv = _vector_of(window, b, k)
    op_a = multiplication_operator(window, av)
    op_b = multiplication_operator(window, bv)
    op_ab = multiplication_operator(window, ring_product(window, av, bv))
    for u in range(1, window.n):
        composed = (op_a.blocks[u] @ op_b.blocks[u]) % window.p
        if not np.array_equal(composed, op_ab.blocks[u]):
            return False
    xv = window.to_window(k, window.certificate.element.as_vector())
    for v, op in ((av, op_a), (bv, op_b)):
        if not np.array_equal((op.blocks[k] @ xv) % window.p, v):
            return False
    return True


def _sub_in_ambient(space: Subspace, rows: np.ndarray, p: int) -> Subspace:
    """Lift rows given in space coordinates back to ambient coordinates."""
    if rows.shape[0] == 0:
        return Subspace.zero(p, space.ambient)
    return Subspace.from_vectors((rows @ space.basis) % p, p, space.ambient)


def _acts_invertibly(window, op: MultOperator, spaces: dict) -> bool:
    for u, space in spaces.items():
        if space.dim == 0:
            continue
        try:
            m = fplin.restricted_matrix(op.blocks[u], space, space)
        except ValueError:
            return False
        if fplin.rank(m, window.p) < space.dim:
            return False
    return True


def _splitting_witness(window, element: Element, spaces: dict, cap: int, memo: dict):
    """Lex-first pair (a, b) with a + b = element, neither acting invertibly."""
    k, p = window.k, window.p
    d = window.dim(k)
    if p ** d > cap:
        raise SearchCapExceeded(f"{p ** d} splitting candidates exceed the cap {cap}")
    xv = element.as_vector()

    def bad(v):
        key = tuple(int(t) for t in v)
        op = memo.get(key)
        if op is None:
            op = memo[key] = multiplication_operator(window, v)
        return not _acts_invertibly(window, op, spaces)

    for a in fplin.enumerate_vectors(d, p):
        b = (xv - a) % p
        if bad(a) and bad(b):
            return Element.of(k, a), Element.of(k, b)
    return None


def _family_order(window, op: MultOperator, spaces: dict) -> int:
    order = 1
    for u, space in spaces.items():
        if space.dim == 0:
            continue
        m = fplin.restricted_matrix(op.blocks[u], space, space)
        order = math.lcm(order, fplin.operator_order(m, window.p))
    return order


@dataclass(eq=False)
class Summand:
    element: Element
    spaces: dict

    def degree_dims(self) -> dict:
        return {u: s.dim for u, s in sorted(self.spaces.items())}

    def to_dict(self) -> dict:
        return {
            "element": {"degree": self.element.degree,
                        "coeffs": list(self.element.coeffs)},
            "spaces": {str(u): s.basis.tolist() for u, s in sorted(self.spaces.items())},
        }


@dataclass(eq=False)
class SplitRecord:
    split_element: Element
    witness: tuple
    prime_power_exponent: int
    frobenius_pair: tuple
    orders: tuple
    replacements: tuple
    part_dims: tuple

    def to_dict(self) -> dict:
        def elt(e):
            return {"degree": e.degree, "coeffs": list(e.coeffs)}
        return {
            "split_element": elt(self.split_element),
            "witness": [elt(e) for e in self.witness],
            "prime_power_exponent": self.prime_power_exponent,
            "frobenius_pair": [elt(e) for e in self.frobenius_pair],
            "orders": list(self.orders),
            "replacements": [elt(e) for e in self.replacements],
            "part_dims": [list(row) for row in self.part_dims],
        }


@dataclass(eq=False)
class DecompositionResult:
    summands: list
    trace: list

    @property
    def summand_count(self) -> int:
        return len(self.summands)

    def to_dict(self) -> dict:
        return {
            "summand_count": self.summand_count,
            "summands": [s.to_dict() for s in self.summands],
            "trace": [r.to_dict() for r in self.trace],
        }


def _recheck_working_list(window, summands) -> None:
    """The working-list invariants: degreewise direct sum, each element acting
    as the identity on its own entry and as zero on every other."""
    p = window.p
    for u in range(1, window.n):
        parts = [s.spaces[u] for s in summands]
        ambient = Subspace.full(p, window.dim(u))
        if not fplin.direct_sum_check(parts, ambient, full=True):
            raise VerificationFailure(f"working list is not a direct sum in degree {u}")
    for i, s in enumerate(summands):
        op = multiplication_operator(window, s.element)
        for u in range(1, window.n):
            own = s.spaces[u]
            if own.dim:
                m = fplin.restricted_matrix(op.blocks[u], own, own)
                if not np.array_equal(m, np.eye(own.dim, dtype=np.int64)):
                    raise VerificationFailure(
                        f"entry {i} does not act as the identity in degree {u}")
            for j, other in enumerate(summands):
                if j == i or other.spaces[u].dim == 0:
                    continue
                if ((op.blocks[u] @ other.spaces[u].basis.T) % p).any():
                    raise VerificationFailure(
                        f"entry {i} does not annihilate entry {j} in degree {u}")


def decompose(window: SubquotientAlgebra, cap: int = DEFAULT_SEARCH_CAP) -> DecompositionResult:
    """Split the window into irreducibly periodic summands.

    Needs a direct certificate.  Returns one inducing element per summand
    plus the trace of every split; the result is re-verified internally
    after each pass, so a returned decomposition always satisfies the
    direct-sum, action and irreducibility conclusions.
    """
    cert = window.certificate
    k, n, p = window.k, window.n, window.p
    if cert.mode != "direct" or 3 * k > n - 1:
        raise ValueError("decomposition needs a direct certificate with 3k <= n-1")
    total = window.total_dim
    if total == 0:
        return DecompositionResult([], [])
    exponent = 0
    while p ** exponent < total:
        exponent += 1
    xv = window.to_window(k, cert.element.as_vector())
    full = {u: Subspace.full(p, window.dim(u)) for u in range(1, n)}
    summands = [Summand(Element.of(k, xv), full)]
    trace = []
    memo = {}
    _recheck_working_list(window, summands)
    for _ in range(total + 1):
        hit = None
        for idx, s in enumerate(summands):
            w = _splitting_witness(window, s.element, s.spaces, cap, memo)
            if w is not None:
                hit = (idx, w)
                break
        if hit is None:
            break
        idx, (a, b) = hit
        s = summands[idx]
        frob_a = ring_power(window, a.as_vector(), p ** exponent)
        frob_b = ring_power(window, b.as_vector(), p ** exponent)
        op_a = multiplication_operator(window, frob_a)
        op_b = multiplication_operator(window, frob_b)
        ker_a, ker_b, middle, dims = {}, {}, {}, []
        for u in range(1, n):
            space = s.spaces[u]
            ra = fplin.restricted_matrix(op_a.blocks[u], space, space)
            rb = fplin.restricted_matrix(op_b.blocks[u], space, space)
            ka = _sub_in_ambient(space, fplin.kernel(ra, p).basis, p)
            kac = _sub_in_ambient(space, fplin.image(ra, p).basis, p)
            kb = _sub_in_ambient(space, fplin.kernel(rb, p).basis, p)
            kbc = _sub_in_ambient(space, fplin.image(rb, p).basis, p)
            if not ka.is_subspace_of(kbc):
                raise VerificationFailure(
                    f"kernel of one part escapes the complement of the other in degree {u}")
            c = kac.intersection(kbc)
            if ka.dim + c.dim + kb.dim != space.dim or not fplin.direct_sum_check(
                    [ka, c, kb], space):
                raise VerificationFailure(f"kernel split is not a direct sum in degree {u}")
            ker_a[u], ker_b[u], middle[u] = ka, kb, c
            dims.append((u, ka.dim, c.dim, kb.dim))
        order_a = _family_order(window, op_a, middle)
        order_b = _family_order(window, op_b, middle)
        head = ring_power(window, frob_a, order_a)
        tail = ring_power(window, frob_b, order_b)
        tail = (tail - ring_product(window, head, tail)) % p
        xi = s.element.as_vector()
        repl_a = ring_product(window, ring_product(window, xi, head), xi)
        repl_b = ring_product(window, ring_product(window, xi, tail), xi)
        first = Summand(Element.of(k, repl_a),
                        {u: middle[u].sum(ker_b[u]) for u in range(1, n)})
        second = Summand(Element.of(k, repl_b), ker_a)
        summands[idx:idx + 1] = [first, second]
        trace.append(SplitRecord(
            split_element=s.element,
            witness=(a, b),
            prime_power_exponent=exponent,
            frobenius_pair=(Element.of(k, frob_a), Element.of(k, frob_b)),
            orders=(order_a, order_b),
            replacements=(first.element, second.element),
            part_dims=tuple(dims),
        ))
        if len(summands) > window.dim(k):
            raise VerificationFailure("more summands than the degree-k dimension")
        _recheck_working_list(window, summands)
    else:
        raise VerificationFailure("splitting loop failed to terminate")
    result = DecompositionResult(summands, trace)
    report = verify_decomposition(window, result, cap)
    if not report.ok:
        raise VerificationFailure("; ".join(report.violations))
    return result


@dataclass(frozen=True)
class DecompositionReport:
    ok: bool
    violations: tuple


def verify_decomposition(window: SubquotientAlgebra, result: DecompositionResult,
                         cap: int = DEFAULT_SEARCH_CAP) -> DecompositionReport:
    """Re-check a decomposition from scratch: degreewise direct sum, each
    element inducing on its own summand and annihilating the rest, and no
    summand splitting further.  Violations come back as report data."""
    k, n, p = window.k, window.n, window.p
    violations = []
    summands = result.summands
    if not summands:
        if window.total_dim:
            violations.append("empty decomposition of a nonzero window")
        return DecompositionReport(not violations, tuple(violations))
    for u in range(1, n):
        parts = []
        for i, s in enumerate(summands):
            space = s.spaces.get(u)
            if space is None or space.ambient != window.dim(u):
                violations.append(f"summand {i} carries no subspace of degree {u}")
                return DecompositionReport(False, tuple(violations))
            parts.append(space)
        if not fplin.direct_sum_check(parts, Subspace.full(p, window.dim(u)), full=True):
            violations.append(f"summands do not direct-sum to degree {u}")
    for i, s in enumerate(summands):
        if s.element.degree != k:
            violations.append(f"summand {i} element has degree {s.element.degree}")
            continue
        xiv = s.element.as_vector()
        for u in range(1, n):
            cupm = window.cup_matrix(k, xiv, u)
            for j, other in enumerate(summands):
                if j != i and other.spaces[u].dim and (
                        (cupm @ other.spaces[u].basis.T) % p).any():
                    violations.append(
                        f"summand {i} element does not annihilate summand {j} in degree {u}")
            if u <= n - 1 - k and s.spaces[u].dim:
                target = s.spaces[u + k]
                if s.spaces[u].dim != target.dim:
                    violations.append(
                        f"summand {i} degrees {u} and {u + k} have unequal dimension")
                    continue
                try:
                    m = fplin.restricted_matrix(cupm, s.spaces[u], target)
                except ValueError:
                    violations.append(
                        f"summand {i} is not stable under its element at degree {u}")
                    continue
                if fplin.rank(m, p) < target.dim:
                    violations.append(
                        f"summand {i} element is not bijective at degree {u}")
    memo = {}
    for i, s in enumerate(summands):
        if s.element.degree != k:
            continue
        try:
            w = _splitting_witness(window, s.element, s.spaces, cap, memo)
        except (ValueError, OverlapMismatch):
            violations.append(f"summand {i} does not support the degree-k action")
            continue
        if w is not None:
            violations.append(f"summand {i} splits further at {w[0].coeffs}/{w[1].coeffs}")
    return DecompositionReport(not violations, tuple(violations))
