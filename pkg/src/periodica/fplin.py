"""Exact linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries reduced mod p, applied to
1-D coordinate vectors as ``(M @ v) % p``.  Subspaces are stored as
row-reduced bases, so equal subspaces compare equal.  Polynomials are
tuples of coefficients, lowest degree first, with no trailing zeros.
"""

from __future__ import annotations

import itertools

import numpy as np


class NotInvertible(ValueError):
    pass


class NotSemisimple(ValueError):
    pass


class OrderCapExceeded(RuntimeError):
    pass


def as_vector(data, p: int) -> np.ndarray:
    v = np.asarray(data, dtype=np.int64) % p
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    return v


def as_matrix(data, p: int) -> np.ndarray:
    m = np.asarray(data, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    return m


def rref(mat, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Row-reduce mod p.  Returns (nonzero rows, pivot columns)."""
    m = np.array(mat, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    nrows, ncols = m.shape
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], tuple(pivots)


def rank(mat, p: int) -> int:
    return len(rref(mat, p)[1])


def solve(mat, vec, p: int) -> np.ndarray | None:
    """One solution x of ``mat @ x = vec`` mod p, or None."""
    a = as_matrix(mat, p)
    b = as_vector(vec, p)
    if a.shape[0] != b.shape[0]:
        raise ValueError("shape mismatch")
    n = a.shape[1]
    red, pivots = rref(np.hstack([a, b.reshape(-1, 1)]), p)
    if n in pivots:
        return None
    x = np.zeros(n, dtype=np.int64)
    for t, c in enumerate(pivots):
        x[c] = red[t, n]
    return x


class Subspace:
    """Subspace of GF(p)^ambient with a canonical row-reduced basis.

    Two Subspace objects are equal iff they are the same subspace of the
    same ambient space.
    """

    __slots__ = ("p", "ambient", "basis", "pivots")

    def __init__(self, p: int, ambient: int, basis: np.ndarray, pivots: tuple[int, ...]):
        # Invariant: basis is in reduced row echelon form with the given pivots.
        self.p = p
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots
        basis.setflags(write=False)

    @classmethod
    def from_vectors(cls, vectors, p: int, ambient: int | None = None) -> "Subspace":
        rows = [as_vector(v, p) for v in vectors]
        if ambient is None:
            if not rows:
                raise ValueError("ambient dimension required for an empty span")
            ambient = rows[0].shape[0]
        for v in rows:
            if v.shape[0] != ambient:
                raise ValueError("mixed vector lengths")
        if not rows:
            return cls.zero(p, ambient)
        red, pivots = rref(np.array(rows, dtype=np.int64), p)
        return cls(p, ambient, red, pivots)

    @classmethod
    def zero(cls, p: int, ambient: int) -> "Subspace":
        return cls(p, ambient, np.zeros((0, ambient), dtype=np.int64), ())

    @classmethod
    def full(cls, p: int, ambient: int) -> "Subspace":
        return cls(p, ambient, np.eye(ambient, dtype=np.int64), tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, vec) -> bool:
        v = as_vector(vec, self.p)
        if v.shape[0] != self.ambient:
            raise ValueError("ambient mismatch")
        if self.dim == 0:
            return not v.any()
        c = v[list(self.pivots)]
        return np.array_equal((c @ self.basis) % self.p, v)

    def coords_of(self, vec) -> np.ndarray:
        """Coordinates w.r.t. the canonical basis; ValueError if not contained."""
        v = as_vector(vec, self.p)
        if v.shape[0] != self.ambient:
            raise ValueError("ambient mismatch")
        c = v[list(self.pivots)] if self.dim else np.zeros(0, dtype=np.int64)
        if not np.array_equal((c @ self.basis) % self.p if self.dim else np.zeros(self.ambient, dtype=np.int64), v):
            raise ValueError("vector not in subspace")
        return c

    def _zassenhaus(self, other: "Subspace") -> tuple["Subspace", "Subspace"]:
        if (self.p, self.ambient) != (other.p, other.ambient):
            raise ValueError("mismatched ambient spaces")
        d = self.ambient
        top = np.hstack([self.basis, self.basis])
        bot = np.hstack([other.basis, np.zeros_like(other.basis)])
        red, pivots = rref(np.vstack([top, bot]), self.p)
        sum_rows = [red[t, :d] for t, c in enumerate(pivots) if c < d]
        int_rows = [red[t, d:] for t, c in enumerate(pivots) if c >= d]
        return (
            Subspace.from_vectors(sum_rows, self.p, d),
            Subspace.from_vectors(int_rows, self.p, d),
        )

    def sum(self, other: "Subspace") -> "Subspace":
        return self._zassenhaus(other)[0]

    def intersection(self, other: "Subspace") -> "Subspace":
        return self._zassenhaus(other)[1]

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def coordinate_complement(self) -> "Subspace":
        """Span of the standard basis vectors at non-pivot coordinates.

        Always a direct complement of this subspace in GF(p)^ambient.
        """
        free = [j for j in range(self.ambient) if j not in self.pivots]
        rows = np.zeros((len(free), self.ambient), dtype=np.int64)
        for t, j in enumerate(free):
            rows[t, j] = 1
        return Subspace(self.p, self.ambient, rows, tuple(free))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient == other.ambient
            and self.pivots == other.pivots
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.ambient, self.pivots, self.basis.tobytes()))

    def __repr__(self) -> str:
        return f"Subspace(p={self.p}, ambient={self.ambient}, dim={self.dim})"


def kernel(mat, p: int) -> Subspace:
    """Kernel of mat as a subspace of the source GF(p)^ncols."""
    m = as_matrix(mat, p)
    red, pivots = rref(m, p)
    n = m.shape[1]
    free = [j for j in range(n) if j not in pivots]
    rows = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for t, c in enumerate(pivots):
            v[c] = (-red[t, f]) % p
        rows.append(v)
    return Subspace.from_vectors(rows, p, n)


def image(mat, p: int) -> Subspace:
    """Column space of mat as a subspace of the target GF(p)^nrows."""
    m = as_matrix(mat, p)
    red, pivots = rref(m.T, p)
    return Subspace(p, m.shape[0], red, pivots)


def mat_mul(a, b, p: int) -> np.ndarray:
    return (as_matrix(a, p) @ as_matrix(b, p)) % p


def mat_pow(mat, e: int, p: int) -> np.ndarray:
    m = as_matrix(mat, p)
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("mat_pow expects a square matrix")
    if e < 0:
        raise ValueError("negative exponent")
    out = np.eye(d, dtype=np.int64)
    base = m
    while e:
        if e & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        e >>= 1
    return out


def mat_inv(mat, p: int) -> np.ndarray:
    m = as_matrix(mat, p)
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("mat_inv expects a square matrix")
    red, pivots = rref(np.hstack([m, np.eye(d, dtype=np.int64)]), p)
    if pivots != tuple(range(d)):
        raise NotInvertible("matrix is singular")
    return red[:, d:]


def _poly_norm(coeffs, p: int) -> tuple[int, ...]:
    c = [int(x) % p for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_monic(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple((x * inv) % p for x in a)


def _poly_mul(a, b, p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return _poly_norm(out, p)


def _poly_divmod(a, b, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = [int(x) % p for x in a]
    db = len(b) - 1
    lead_inv = pow(b[-1], -1, p)
    if len(a) - 1 < db:
        return (), _poly_norm(a, p)
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = (a[i] * lead_inv) % p
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _poly_norm(q, p), _poly_norm(a, p)


def _poly_gcd(a, b, p: int) -> tuple[int, ...]:
    a, b = _poly_norm(a, p), _poly_norm(b, p)
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    return _poly_monic(a, p)


def _poly_lcm(a, b, p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    g = _poly_gcd(a, b, p)
    q, r = _poly_divmod(_poly_mul(a, b, p), g, p)
    assert not r
    return _poly_monic(q, p)


def _poly_deriv(a, p: int) -> tuple[int, ...]:
    return _poly_norm([(i * a[i]) % p for i in range(1, len(a))], p)


def poly_eval_matrix(coeffs, mat, p: int) -> np.ndarray:
    """Evaluate a polynomial (low coefficients first) at a square matrix."""
    m = as_matrix(mat, p)
    d = m.shape[0]
    out = np.zeros((d, d), dtype=np.int64)
    power = np.eye(d, dtype=np.int64)
    for c in coeffs:
        if c % p:
            out = (out + (c % p) * power) % p
        power = (power @ m) % p
    return out


def minimal_polynomial(mat, p: int) -> tuple[int, ...]:
    """Monic minimal polynomial, coefficients lowest degree first."""
    m = as_matrix(mat, p)
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("minimal_polynomial expects a square matrix")
    result = (1,)
    for i in range(d):
        if len(result) == d + 1:
            break
        v = np.zeros(d, dtype=np.int64)
        v[i] = 1
        krylov = [v]
        w = (m @ v) % p
        while True:
            a = np.array(krylov, dtype=np.int64)
            c = solve(a.T, w, p)
            if c is not None:
                local = _poly_norm([(-int(x)) % p for x in c] + [1], p)
                break
            krylov.append(w)
            w = (m @ w) % p
        result = _poly_lcm(result, local, p)
    return result


def is_semisimple(mat, p: int) -> bool:
    """True iff the minimal polynomial of mat is squarefree mod p."""
    mp = minimal_polynomial(mat, p)
    der = _poly_deriv(mp, p)
    if not der:
        return len(mp) == 1
    return len(_poly_gcd(mp, der, p)) == 1


def semisimple_power(mat, p: int) -> tuple[np.ndarray, int]:
    """Smallest l with p^l >= dim, and mat**(p^l), which is semisimple."""
    m = as_matrix(mat, p)
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("semisimple_power expects a square matrix")
    l = 0
    while p**l < d:
        l += 1
    g = mat_pow(m, p**l, p)
    assert is_semisimple(g, p)
    return g, l


def operator_order(mat, p: int, cap: int = 10**6) -> int:
    """Multiplicative order of an invertible matrix mod p."""
    m = as_matrix(mat, p)
    d = m.shape[0]
    if m.shape != (d, d):
        raise ValueError("operator_order expects a square matrix")
    if d == 0:
        return 1
    if rank(m, p) != d:
        raise NotInvertible("singular matrix has no multiplicative order")
    ident = np.eye(d, dtype=np.int64)
    cur = m
    r = 1
    while not np.array_equal(cur, ident):
        cur = (cur @ m) % p
        r += 1
        if r > cap:
            raise OrderCapExceeded(f"order exceeds cap {cap}")
    return r


def invariant_complement_of_kernel(mat, p: int) -> Subspace:
    """For semisimple mat, the image is an invariant complement of the kernel."""
    m = as_matrix(mat, p)
    if not is_semisimple(m, p):
        raise NotSemisimple("kernel of a non-semisimple operator may admit no invariant complement")
    ker = kernel(m, p)
    img = image(m, p)
    assert ker.dim + img.dim == m.shape[1]
    assert ker.intersection(img).dim == 0
    return img


def restricted_matrix(op, source: Subspace, target: Subspace) -> np.ndarray:
    """Matrix of op : source -> target in the canonical bases.

    Raises ValueError if op does not map source into target.
    """
    if source.p != target.p:
        raise ValueError("mismatched primes")
    p = source.p
    m = as_matrix(op, p)
    if m.shape != (target.ambient, source.ambient):
        raise ValueError("operator shape does not match the given spaces")
    out = np.zeros((target.dim, source.dim), dtype=np.int64)
    for j in range(source.dim):
        out[:, j] = target.coords_of((m @ source.basis[j]) % p)
    return out


def direct_sum_check(parts: list[Subspace], ambient: Subspace, full: bool = False) -> bool:
    """True iff the parts are independent subspaces of ambient.

    With full=True also require that they span all of ambient.
    """
    span = Subspace.zero(ambient.p, ambient.ambient)
    total = 0
    for part in parts:
        if not part.is_subspace_of(ambient):
            return False
        span = span.sum(part)
        total += part.dim
    if total != span.dim:
        return False
    if full and span != ambient:
        return False
    return True


def enumerate_vectors(dim: int, p: int):
    """All vectors of GF(p)^dim in lexicographic order, first coordinate most significant."""
    for tup in itertools.product(range(p), repeat=dim):
        yield np.array(tup, dtype=np.int64)
