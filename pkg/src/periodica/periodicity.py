"""Multiplicative periodicity: window tests, certificates and subquotients.

An element x of degree k makes an algebra with top degree n periodic when
cupping with x is surjective from degree i for 1 <= i < n-1-k and injective
for 1 < i <= n-1-k.  Certificates come in three modes: "direct" (the window
test with 3k <= n-1), "product" (a product of direct inducers), and "window"
(a bare window pass, accepted only when every degree the window conditions
never touch vanishes).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import fplin, steenrod
from .algebra import Element, GradedAlgebra

DEFAULT_SEARCH_CAP = 2**20
DEFAULT_SAMPLE_COUNT = 10_000


class DegreeBoundViolated(ValueError):
    """Direct window test requested for an element with 3*degree > n-1."""


class WellDefinednessFailure(RuntimeError):
    """Subquotient construction met data that contradicts its certificate."""


class SearchCapExceeded(RuntimeError):
    """An exhaustive enumeration would pass the configured cap."""


class HypothesisNotMet(RuntimeError):
    """A checked statement's hypotheses fail on the given input."""


@dataclass(frozen=True)
class PeriodicityCertificate:
    k: int
    element: Element
    mode: str
    factors: tuple[Element, ...] = ()


@dataclass(frozen=True)
class WindowRefusal:
    k: int
    element: Element
    failed_degree: int
    failed_condition: str


@dataclass(frozen=True)
class SearchVerdict:
    k: int
    status: str
    reason: str


@dataclass(frozen=True)
class MinimumPeriodReport:
    period: int | None
    certificate: PeriodicityCertificate | None
    all_periods: tuple[int, ...]
    inconclusive: tuple[int, ...]
    divisibility_checked: bool


def _window_failure(alg, k, xv):
    """First violated window condition for cupping with xv, or None.

    Returns (source degree, "surjectivity" | "injectivity").
    """
    p = alg.p
    top = alg.n - 1 - k
    for i in range(1, top + 1):
        if alg.dim(i) == 0 and alg.dim(i + k) == 0:
            continue
        r = fplin.rank(alg.cup_matrix(k, xv, i), p)
        if i < top and r < alg.dim(i + k):
            return i, "surjectivity"
        if i > 1 and r < alg.dim(i):
            return i, "injectivity"
    return None


def window_gap(alg, k: int) -> tuple[int, ...]:
    """Degrees with nonzero dimension that no window condition for k touches."""
    n = alg.n
    covered = set()
    covered.update(range(1, n - 1 - k))
    covered.update(range(1 + k, n - 1))
    covered.update(range(2, n - k))
    covered.update(range(2 + k, n))
    return tuple(i for i in range(1, n) if i not in covered and alg.dim(i) > 0)


def induces_periodicity(alg, x: Element):
    """Direct window test; a certificate or a refusal naming the first failure."""
    k = x.degree
    n = alg.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"degree {k} outside 1..{n - 1}")
    if 3 * k > n - 1:
        raise DegreeBoundViolated(f"direct test needs 3k <= n-1, got 3*{k} > {n - 1}")
    xv = fplin.as_vector(x.as_vector(), alg.p)
    if xv.shape[0] != alg.dim(k):
        raise ValueError("element length does not match its degree")
    fail = _window_failure(alg, k, xv)
    if fail is not None:
        return WindowRefusal(k, x, fail[0], fail[1])
    return PeriodicityCertificate(k, x, "direct")


def verify_certificate(alg, cert: PeriodicityCertificate) -> bool:
    """Re-run the checks that justify a certificate; True iff all still hold."""
    n = alg.n
    k = cert.k
    if not 1 <= k <= n - 1 or cert.element.degree != k:
        return False
    xv = cert.element.as_vector() % alg.p
    if xv.shape[0] != alg.dim(k):
        return False
    if cert.mode == "direct":
        return 3 * k <= n - 1 and _window_failure(alg, k, xv) is None
    if cert.mode == "window":
        return _window_failure(alg, k, xv) is None and not window_gap(alg, k)
    if cert.mode == "product":
        if not cert.factors:
            return False
        deg, acc = 0, None
        for f in cert.factors:
            fv = f.as_vector() % alg.p
            if 3 * f.degree > n - 1 or fv.shape[0] != alg.dim(f.degree):
                return False
            if _window_failure(alg, f.degree, fv) is not None:
                return False
            if acc is None:
                deg, acc = f.degree, fv
            else:
                if deg + f.degree > n - 1:
                    return False
                acc = alg.cup(deg, acc, f.degree, fv)
                deg += f.degree
        return deg == k and np.array_equal(acc, xv)
    return False


def _direct_inducers_by_degree(alg, max_degree: int, cap: int):
    """Exhaustive direct inducers in each degree d <= max_degree with 3d <= n-1."""
    out = {}
    for d in range(1, max_degree + 1):
        if 3 * d > alg.n - 1:
            break
        size = alg.p ** alg.dim(d)
        if size > cap:
            raise SearchCapExceeded(f"degree {d} has {size} candidates, cap {cap}")
        out[d] = [v for v in fplin.enumerate_vectors(alg.dim(d), alg.p)
                  if _window_failure(alg, d, v) is None]
    return out


def _product_span(alg, k: int, cap: int):
    """Degree-k products of direct inducers, keyed by vector with factor lists.

    First factorization in (degree, prefix, factor) lexicographic order wins,
    so the result is deterministic.
    """
    max_degree = min((alg.n - 1) // 3, k - 1)
    inducers = _direct_inducers_by_degree(alg, max_degree, cap)
    reach: dict[int, dict[tuple, tuple[Element, ...]]] = {}
    for d, vs in inducers.items():
        reach[d] = {}
        for v in vs:
            reach[d].setdefault(tuple(int(c) for c in v), (Element.of(d, v),))
    stored = sum(len(m) for m in reach.values())
    for d in range(2, k + 1):
        grown = reach.setdefault(d, {})
        for b in sorted(inducers):
            a = d - b
            if a < 1 or a not in reach or a == d:
                continue
            for ta in sorted(reach[a]):
                fa = reach[a][ta]
                for vb in inducers[b]:
                    w = alg.cup(a, np.array(ta, dtype=np.int64), b, vb)
                    tw = tuple(int(c) for c in w)
                    if tw not in grown:
                        grown[tw] = fa + (Element.of(b, vb),)
                        stored += 1
                        if stored > cap:
                            raise SearchCapExceeded(
                                f"product search stored over {cap} vectors")
    return reach.get(k, {})


def _sample_search(alg, k, samples, seed):
    rng = np.random.default_rng(seed)
    dk = alg.dim(k)
    for _ in range(samples):
        v = rng.integers(0, alg.p, size=dk).astype(np.int64)
        if _window_failure(alg, k, v) is None:
            return v
    return None


def find_inducing_element(alg, k: int, cap: int = DEFAULT_SEARCH_CAP,
                          samples: int = DEFAULT_SAMPLE_COUNT, seed: int = 0,
                          shard_index: int = 0, shard_count: int = 1):
    """Search degree k for an inducing element.

    Returns a PeriodicityCertificate or a SearchVerdict with status
    "exhausted" (provably none) or "inconclusive" (capped search found
    nothing).  Exhaustive scans visit vectors in lexicographic order;
    shard_index/shard_count split that enumeration so independent calls can
    cover disjoint slices and the lexicographically least hit is canonical.
    """
    n = alg.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"degree {k} outside 1..{n - 1}")
    if shard_count < 1 or not 0 <= shard_index < shard_count:
        raise ValueError("bad shard parameters")
    dk = alg.dim(k)
    space = alg.p ** dk
    if 3 * k <= n - 1:
        if space <= cap:
            for idx, v in enumerate(fplin.enumerate_vectors(dk, alg.p)):
                if idx % shard_count != shard_index:
                    continue
                if _window_failure(alg, k, v) is None:
                    return PeriodicityCertificate(k, Element.of(k, v), "direct")
            return SearchVerdict(
                k, "exhausted",
                f"all {space} degree-{k} candidates fail the window conditions")
        try:
            span = _product_span(alg, k, cap)
        except SearchCapExceeded:
            span = {}
        if span:
            t = sorted(span)[0]
            return PeriodicityCertificate(
                k, Element.of(k, np.array(t, dtype=np.int64)), "product", span[t])
        found = _sample_search(alg, k, samples, seed)
        if found is not None:
            return PeriodicityCertificate(k, Element.of(k, found), "direct")
        return SearchVerdict(
            k, "inconclusive",
            f"{space} candidates exceed cap {cap}; products and {samples} samples found nothing")
    # 3k > n-1: only product certificates or a gap-free window pass remain.
    complete = True
    try:
        span = _product_span(alg, k, cap)
    except SearchCapExceeded:
        span, complete = {}, False
    if span:
        t = sorted(span)[0]
        return PeriodicityCertificate(
            k, Element.of(k, np.array(t, dtype=np.int64)), "product", span[t])
    gap = window_gap(alg, k)
    if gap:
        if complete:
            return SearchVerdict(
                k, "exhausted",
                f"no product of inducers reaches degree {k} and degrees {gap} escape the window")
        return SearchVerdict(k, "inconclusive", "product search passed the cap")
    if space <= cap:
        for idx, v in enumerate(fplin.enumerate_vectors(dk, alg.p)):
            if idx % shard_count != shard_index:
                continue
            if _window_failure(alg, k, v) is None:
                return PeriodicityCertificate(k, Element.of(k, v), "window")
        return SearchVerdict(
            k, "exhausted",
            f"all {space} degree-{k} candidates fail the window conditions")
    found = _sample_search(alg, k, samples, seed)
    if found is not None:
        return PeriodicityCertificate(k, Element.of(k, found), "window")
    return SearchVerdict(
        k, "inconclusive",
        f"{space} candidates exceed cap {cap}; {samples} samples found nothing")


def minimum_period(alg, cap: int = DEFAULT_SEARCH_CAP,
                   samples: int = DEFAULT_SAMPLE_COUNT, seed: int = 0) -> MinimumPeriodReport:
    """Scan every degree for inducing elements and report the least period.

    All degrees 1..n-1 are scanned so the report also carries every other
    period found; when 3 * period <= n - 2 each of those must be a multiple
    of the minimum, and this is asserted.
    """
    n = alg.n
    period, certificate = None, None
    periods, inconclusive = [], []
    for k in range(1, n):
        out = find_inducing_element(alg, k, cap=cap, samples=samples, seed=seed)
        if isinstance(out, PeriodicityCertificate):
            periods.append(k)
            if period is None:
                period, certificate = k, out
        elif out.status == "inconclusive":
            inconclusive.append(k)
    checked = period is not None and 3 * period <= n - 2
    if checked:
        for k in periods:
            assert k % period == 0, f"period {k} is not a multiple of the minimum {period}"
    return MinimumPeriodReport(period, certificate, tuple(periods),
                               tuple(inconclusive), checked)


class SubquotientAlgebra:
    """Degrees 1..n-1 of a parent algebra, collapsed along an inducing element.

    Window degree 1 is the coordinate section complementing the kernel of
    multiplication by the element, degree n-1 is the image of that
    multiplication from degree n-1-k, and every other window degree is the
    full parent degree.  Products and shift maps are stored in window
    coordinates; cupping with the element is a recorded bijection from each
    window degree i <= n-k-1 onto window degree i+k.
    """

    def __init__(self, parent, certificate, spaces, shifts, mult, degree1_kernel):
        self.parent = parent
        self.certificate = certificate
        self.p = parent.p
        self.n = parent.n
        self.k = certificate.k
        self.spaces = spaces
        self.shifts = shifts
        self.shift_invs = {i: fplin.mat_inv(m, self.p) for i, m in shifts.items()}
        self.mult = mult
        self.degree1_kernel = degree1_kernel
        self.action = None
        if parent.dim(1):
            stacked = np.vstack([spaces[1].basis, degree1_kernel.basis])
            self._deg1_proj = fplin.mat_inv(stacked.T, self.p)[:spaces[1].dim]
        else:
            self._deg1_proj = np.zeros((0, 0), dtype=np.int64)

    def dim(self, i: int) -> int:
        if 1 <= i <= self.n - 1:
            return self.spaces[i].dim
        return 0

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.spaces.values())

    def mult_map(self, i: int, j: int) -> np.ndarray:
        m = self.mult.get((i, j))
        if m is None:
            return np.zeros((self.dim(i + j), self.dim(i) * self.dim(j)), dtype=np.int64)
        return m

    def mult3(self, i: int, j: int) -> np.ndarray:
        return self.mult_map(i, j).reshape(self.dim(i + j), self.dim(i), self.dim(j))

    def cup(self, i: int, a, j: int, b) -> np.ndarray:
        av = fplin.as_vector(a, self.p)
        bv = fplin.as_vector(b, self.p)
        if av.shape[0] != self.dim(i) or bv.shape[0] != self.dim(j):
            raise ValueError("vector length does not match window dimension")
        if i + j > self.n:
            return np.zeros(0, dtype=np.int64)
        return np.einsum("tab,a,b->t", self.mult3(i, j), av, bv) % self.p

    def cup_matrix(self, i: int, x, j: int) -> np.ndarray:
        xv = fplin.as_vector(x, self.p)
        if xv.shape[0] != self.dim(i):
            raise ValueError("vector length does not match window dimension")
        if i + j > self.n:
            return np.zeros((0, self.dim(j)), dtype=np.int64)
        return np.einsum("tab,a->tb", self.mult3(i, j), xv) % self.p

    def basis_element(self, i: int, t: int) -> np.ndarray:
        v = np.zeros(self.dim(i), dtype=np.int64)
        v[t] = 1
        return v

    def element(self, degree: int, coeffs) -> Element:
        v = fplin.as_vector(coeffs, self.p)
        if v.shape[0] != self.dim(degree):
            raise ValueError(f"window degree {degree} has dimension {self.dim(degree)}")
        return Element.of(degree, v)

    def embed(self, i: int, vec) -> np.ndarray:
        """Parent coordinates of a window vector."""
        v = fplin.as_vector(vec, self.p)
        return (v @ self.spaces[i].basis) % self.p

    def to_window(self, i: int, vec) -> np.ndarray:
        """Window coordinates of a parent vector.

        Degree 1 projects along the kernel; elsewhere the vector must lie in
        the window space (ValueError otherwise).
        """
        v = fplin.as_vector(vec, self.p)
        if i == 1 and self.n - 1 != 1:
            return (self._deg1_proj @ v) % self.p
        return self.spaces[i].coords_of(v)

    def shift(self, i: int, vec) -> np.ndarray:
        return (self.shifts[i] @ fplin.as_vector(vec, self.p)) % self.p

    def unshift(self, i: int, vec) -> np.ndarray:
        """Preimage in window degree i of a window degree-(i+k) vector."""
        return (self.shift_invs[i] @ fplin.as_vector(vec, self.p)) % self.p

    def window_dims(self) -> tuple[int, ...]:
        return tuple(self.dim(i) for i in range(1, self.n))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "k": self.k,
            "dims": list(self.window_dims()),
            "spaces": {i: s.basis.tolist() for i, s in sorted(self.spaces.items())},
            "shifts": {i: m.tolist() for i, m in sorted(self.shifts.items())},
            "mult": {f"{i},{j}": m.tolist() for (i, j), m in sorted(self.mult.items())},
        }

    def __repr__(self) -> str:
        return (f"SubquotientAlgebra(p={self.p}, n={self.n}, k={self.k}, "
                f"dims={list(self.window_dims())})")


def subquotient(alg, cert: PeriodicityCertificate, action=None) -> SubquotientAlgebra:
    """Build the window subquotient for a certified inducing element.

    Re-verifies the certificate, checks the two well-definedness cases
    (degree-1 kernel classes multiply to zero inside the window; products
    landing in degree n-1 lie in the image of the inducing element), checks
    every shift map is bijective, and attaches the induced Steenrod action
    when one is supplied and p*k <= n-1.
    """
    if not verify_certificate(alg, cert):
        raise WellDefinednessFailure("certificate does not re-verify on this algebra")
    n, p, k = alg.n, alg.p, cert.k
    xv = cert.element.as_vector() % p
    ker1 = fplin.kernel(alg.cup_matrix(k, xv, 1), p)
    spaces = {}
    for i in range(1, n):
        if i == n - 1:
            spaces[i] = fplin.image(alg.cup_matrix(k, xv, n - 1 - k), p)
        elif i == 1:
            spaces[i] = ker1.coordinate_complement()
        else:
            spaces[i] = fplin.Subspace.full(p, alg.dim(i))
    for u in ker1.basis:
        for j in range(1, n - 1):
            for b in range(alg.dim(j)):
                prod = alg.cup(1, u, j, alg.basis_element(j, b))
                if prod.size and prod.any():
                    raise WellDefinednessFailure(
                        f"a degree-1 kernel class has a nonzero product into degree {1 + j}")
    top = spaces.get(n - 1)
    for i in range(1, n - 1):
        j = n - 1 - i
        if j < i:
            break
        for a in range(spaces[i].dim):
            for b in range(spaces[j].dim):
                v = alg.cup(i, spaces[i].basis[a], j, spaces[j].basis[b])
                if not top.contains(v):
                    raise WellDefinednessFailure(
                        "a product in the top window degree escapes the image "
                        "of the inducing element")
    shifts = {}
    for i in range(1, n - k):
        src, tgt = spaces[i], spaces[i + k]
        if src.dim != tgt.dim:
            raise WellDefinednessFailure(
                f"window dimensions differ across the shift at degree {i}")
        try:
            m = fplin.restricted_matrix(alg.cup_matrix(k, xv, i), src, tgt)
        except ValueError as exc:
            raise WellDefinednessFailure(
                f"multiplication image escapes the window at degree {i}: {exc}")
        try:
            fplin.mat_inv(m, p)
        except fplin.NotInvertible:
            raise WellDefinednessFailure(f"shift map at degree {i} is not bijective")
        shifts[i] = m
    mult = {}
    for i in range(1, n - 1):
        for j in range(1, n - i):
            di, dj, dt = spaces[i].dim, spaces[j].dim, spaces[i + j].dim
            if di == 0 or dj == 0 or dt == 0:
                continue
            table = np.zeros((dt, di * dj), dtype=np.int64)
            for a in range(di):
                for b in range(dj):
                    v = alg.cup(i, spaces[i].basis[a], j, spaces[j].basis[b])
                    table[:, a * dj + b] = spaces[i + j].coords_of(v)
            if table.any():
                mult[(i, j)] = table
    window = SubquotientAlgebra(alg, cert, spaces, shifts, mult, ker1)
    if action is not None and p * k <= n - 1:
        window.action = steenrod.induced_action_on_window(window, action)
    return window


def element_induces(alg, k: int, vec, cap: int = DEFAULT_SEARCH_CAP) -> bool:
    """Membership test for the set of degree-k inducing elements.

    The direct window test when 3k <= n-1; otherwise membership in the set
    of degree-k products of lower-degree direct inducers.
    """
    v = fplin.as_vector(vec, alg.p)
    if 3 * k <= alg.n - 1:
        return _window_failure(alg, k, v) is None
    span = _product_span(alg, k, cap)
    return tuple(int(c) for c in v) in span


@dataclass(frozen=True)
class IrreducibilityReport:
    irreducible: bool
    witness: tuple[Element, Element] | None


def is_irreducible(window, x: Element, cap: int = DEFAULT_SEARCH_CAP) -> IrreducibilityReport:
    """True when every splitting x = a + b keeps an inducing summand.

    Exhausts all decompositions of x inside the window's degree-k space; on
    failure the witness pair is the lexicographically first counterexample.
    """
    k = x.degree
    dk = window.dim(k)
    if window.p ** dk > cap:
        raise SearchCapExceeded(f"{window.p ** dk} decompositions exceed cap {cap}")
    xv = x.as_vector() % window.p
    memo: dict[tuple, bool] = {}

    def induces(v):
        t = tuple(int(c) for c in v)
        if t not in memo:
            memo[t] = element_induces(window, k, v, cap)
        return memo[t]

    for a in fplin.enumerate_vectors(dk, window.p):
        b = (xv - a) % window.p
        if not induces(a) and not induces(b):
            return IrreducibilityReport(False, (Element.of(k, a), Element.of(k, b)))
    return IrreducibilityReport(True, None)


@dataclass(frozen=True)
class ClosureViolation:
    left: Element
    right: Element
    total: Element


def nonperiodic_subspace(window, k: int, cap: int = DEFAULT_SEARCH_CAP):
    """The set of degree-k non-inducing vectors, as a Subspace when it is one.

    Returns a ClosureViolation naming the first pair whose sum escapes the
    set otherwise.
    """
    p = window.p
    dk = window.dim(k)
    if p ** dk > cap:
        raise SearchCapExceeded(f"{p ** dk} candidates exceed cap {cap}")
    bad = [v for v in fplin.enumerate_vectors(dk, p)
           if not element_induces(window, k, v, cap)]
    if len(bad) <= 1:
        return fplin.Subspace.zero(p, dk)
    keys = {tuple(int(c) for c in v) for v in bad}
    for a in bad:
        for b in bad:
            s = (a + b) % p
            if tuple(int(c) for c in s) not in keys:
                return ClosureViolation(Element.of(k, a), Element.of(k, b),
                                        Element.of(k, s))
    space = fplin.Subspace.from_vectors(bad, p, dk)
    assert p ** space.dim == len(bad)
    return space


@dataclass(frozen=True)
class PowerIndexReport:
    element: Element
    value: int | None

    @property
    def defined(self) -> bool:
        return self.value is not None


def inducing_power_index(window, y: Element, cap: int = DEFAULT_SEARCH_CAP) -> PowerIndexReport:
    """Least s for which the s-th Steenrod power of y induces periodicity.

    Scans s = 0, 1, ... while the image degree stays inside the window;
    undefined (value None) when no power in range induces.
    """
    act = window.action
    if act is None:
        raise ValueError("window has no attached Steenrod structure")
    s = 0
    while True:
        t = y.degree + steenrod.operation_shift(window.p, s)
        if t > window.n - 1:
            return PowerIndexReport(y, None)
        img = act.apply(s, y.degree, y.as_vector())
        if element_induces(window, t, img, cap):
            return PowerIndexReport(y, s)
        s += 1


@dataclass(frozen=True)
class AdditivityReport:
    product: Element
    product_value: int | None
    left_value: int | None
    right_value: int | None
    hypotheses: tuple[str, ...]
    consistent: bool


def check_power_index_additivity(window, y: Element, z: Element,
                                 cap: int = DEFAULT_SEARCH_CAP) -> AdditivityReport:
    """Check that power indices add along the product yz.

    Applies when the index of yz is defined, or when both factor indices are
    defined and the shifted factor degrees still fit in the window; raises
    HypothesisNotMet otherwise.
    """
    p, n = window.p, window.n
    if y.degree + z.degree > n - 1:
        raise HypothesisNotMet("the product degree leaves the window")
    xv = window.cup(y.degree, y.as_vector(), z.degree, z.as_vector())
    x = Element.of(y.degree + z.degree, xv)
    ix = inducing_power_index(window, x, cap)
    iy = inducing_power_index(window, y, cap)
    iz = inducing_power_index(window, z, cap)
    hyps = []
    if ix.value is not None:
        hyps.append("product-index-defined")
    if iy.value is not None and iz.value is not None:
        shifted = (y.degree + steenrod.operation_shift(p, iy.value)
                   + z.degree + steenrod.operation_shift(p, iz.value))
        if shifted <= n - 1:
            hyps.append("factor-indices-defined")
    if not hyps:
        raise HypothesisNotMet("no degree hypothesis holds for this pair")
    consistent = (ix.value is not None and iy.value is not None
                  and iz.value is not None and ix.value == iy.value + iz.value)
    return AdditivityReport(x, ix.value, iy.value, iz.value, tuple(hyps), consistent)


@dataclass(frozen=True)
class ProductsFactorsReport:
    product_induces: bool
    left_induces: bool
    right_induces: bool
    consistent: bool


def check_products_factors(window, y: Element, z: Element,
                           cap: int = DEFAULT_SEARCH_CAP) -> ProductsFactorsReport:
    """Check that yz induces periodicity exactly when y and z both do."""
    if y.degree + z.degree > window.n - 1:
        raise ValueError("the product degree leaves the window")
    pv = window.cup(y.degree, y.as_vector(), z.degree, z.as_vector())
    pi = element_induces(window, y.degree + z.degree, pv, cap)
    yi = element_induces(window, y.degree, y.as_vector(), cap)
    zi = element_induces(window, z.degree, z.as_vector(), cap)
    return ProductsFactorsReport(pi, yi, zi, pi == (yi and zi))


@dataclass(frozen=True)
class PreimageReport:
    operation: int
    image_induces: bool
    element_induces: bool
    consistent: bool


def check_steenrod_preimage(window, y: Element, s: int,
                            cap: int = DEFAULT_SEARCH_CAP) -> PreimageReport:
    """At p = 2: if the s-th square of y induces periodicity then y must too."""
    if window.p != 2:
        raise ValueError("the preimage check is implemented for p = 2 only")
    act = window.action
    if act is None:
        raise ValueError("window has no attached Steenrod structure")
    t = y.degree + s
    img_ind = (t <= window.n - 1
               and element_induces(window, t, act.apply(s, y.degree, y.as_vector()), cap))
    y_ind = element_induces(window, y.degree, y.as_vector(), cap)
    return PreimageReport(s, img_ind, y_ind, (not img_ind) or y_ind)


@dataclass(frozen=True)
class FormVerdict:
    conformant: bool
    p: int
    k: int
    lam: int | None
    alpha: int | None
    conditions: tuple[str, ...]
    description: str


def check_minimum_period_form(p: int, k: int, n: int, irreducible: bool = False,
                              window_dim: int | None = None) -> FormVerdict:
    """Arithmetic form a minimum period must take.

    p = 2: a power of 2.  Odd p: 1, or 2*lam*p^alpha; the extra requirement
    that lam divides p-1 is asserted when 2(p-1)k <= n-1 holds or, for an
    irreducible window, when its degree-k dimension is 1 (at p = 3 both
    readings agree since lam <= 2).
    """
    if k < 1:
        raise ValueError("periods are positive")
    if p == 2:
        a = k.bit_length() - 1
        if (1 << a) == k:
            return FormVerdict(True, p, k, None, a, (), f"{k} = 2^{a}")
        return FormVerdict(False, p, k, None, None, (), f"{k} is not a power of 2")
    if k == 1:
        return FormVerdict(True, p, k, None, None, (), "trivial period 1")
    alpha, m = 0, k
    while m % p == 0:
        m //= p
        alpha += 1
    conditions = []
    if 2 * (p - 1) * k <= n - 1:
        conditions.append("degree-bound")
    if irreducible and window_dim == 1:
        conditions.append("one-dimensional-window")
    base = f"2*lam*{p}^{alpha} with lam <= {p - 1}"
    if m % 2:
        return FormVerdict(False, p, k, None, None, tuple(conditions),
                           f"{k} does not have the form {base}")
    lam = m // 2
    ok = 1 <= lam <= p - 1
    if ok and (p == 3 or conditions):
        ok = (p - 1) % lam == 0
    desc = f"{k} = 2*{lam}*{p}^{alpha}" if ok else f"{k} does not have the form {base}"
    return FormVerdict(ok, p, k, lam if ok else None, alpha if ok else None,
                       tuple(conditions), desc)


@dataclass(frozen=True)
class CombinedPeriodVerdict:
    period: int | None
    hypothesis_met: bool
    missing: tuple[str, ...]


def combine_periods(k: int, h1_vanishes_mod2: bool, h1_vanishes_mod3: bool) -> CombinedPeriodVerdict:
    """Rational period gcd(4, k) implied by an integral period k.

    Needs the degree-1 groups mod 2 and mod 3 to vanish; without both flags
    the verdict records the missing hypotheses instead of a period.
    """
    missing = []
    if not h1_vanishes_mod2:
        missing.append("degree-1 group mod 2 must vanish")
    if not h1_vanishes_mod3:
        missing.append("degree-1 group mod 3 must vanish")
    if missing:
        return CombinedPeriodVerdict(None, False, tuple(missing))
    return CombinedPeriodVerdict(math.gcd(4, k), True, ())
