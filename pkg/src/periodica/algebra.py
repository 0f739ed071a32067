"""Finite-dimensional graded-commutative algebras over GF(p).

A GradedAlgebra stores one multiplication matrix per degree pair (i, j):
shape (dim(i+j), dim(i) * dim(j)), column a * dim(j) + b holding the
product of the a-th degree-i and b-th degree-j basis vectors.  Degrees
outside 0..top_degree are zero.  Missing tables are zero maps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fplin


class AlgebraDefect(ValueError):
    """The multiplication tables violate a ring axiom."""


class DegreeOverflow(ValueError):
    """A product was requested above the top degree in strict mode."""


@dataclass(frozen=True)
class Element:
    """Homogeneous element: degree plus coordinates in the degree basis."""

    degree: int
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, degree: int, vec) -> "Element":
        return cls(degree, tuple(int(c) for c in np.asarray(vec, dtype=np.int64)))

    def as_vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)


class GradedAlgebra:
    def __init__(self, p: int, top_degree: int, dims, mult, labels=None):
        if p < 2 or top_degree < 0:
            raise ValueError("need a prime p >= 2 and top_degree >= 0")
        self.p = p
        self.n = top_degree
        if isinstance(dims, dict):
            self.dims = tuple(int(dims.get(i, 0)) for i in range(top_degree + 1))
        else:
            dims = list(dims)
            if len(dims) != top_degree + 1:
                raise ValueError("dims must cover degrees 0..top_degree")
            self.dims = tuple(int(d) for d in dims)
        if any(d < 0 for d in self.dims):
            raise ValueError("negative dimension")
        self.mult: dict[tuple[int, int], np.ndarray] = {}
        for (i, j), m in mult.items():
            if i < 0 or j < 0 or i + j > top_degree:
                raise ValueError(f"multiplication table for out-of-range degrees ({i}, {j})")
            arr = fplin.as_matrix(m, p)
            want = (self.dim(i + j), self.dim(i) * self.dim(j))
            if arr.shape != want:
                raise ValueError(f"table ({i}, {j}) has shape {arr.shape}, expected {want}")
            if arr.size and arr.any():
                arr.setflags(write=False)
                self.mult[(i, j)] = arr
        self.labels: dict[int, tuple[str, ...]] = {}
        if labels:
            for i, names in labels.items():
                i = int(i)
                if len(names) != self.dim(i):
                    raise ValueError(f"labels for degree {i} do not match dim {self.dim(i)}")
                self.labels[i] = tuple(str(s) for s in names)

    def dim(self, i: int) -> int:
        if 0 <= i <= self.n:
            return self.dims[i]
        return 0

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def mult_map(self, i: int, j: int) -> np.ndarray:
        """Multiplication table (i, j), zero-filled when absent."""
        m = self.mult.get((i, j))
        if m is None:
            return np.zeros((self.dim(i + j), self.dim(i) * self.dim(j)), dtype=np.int64)
        return m

    def mult3(self, i: int, j: int) -> np.ndarray:
        """Table (i, j) reshaped to (dim(i+j), dim(i), dim(j))."""
        return self.mult_map(i, j).reshape(self.dim(i + j), self.dim(i), self.dim(j))

    def cup(self, i: int, a, j: int, b, strict: bool = False) -> np.ndarray:
        """Product of a (degree i) and b (degree j), a vector in degree i + j."""
        if i + j > self.n:
            if strict:
                raise DegreeOverflow(f"degree {i}+{j} exceeds top degree {self.n}")
            return np.zeros(0, dtype=np.int64)
        av = fplin.as_vector(a, self.p)
        bv = fplin.as_vector(b, self.p)
        if av.shape[0] != self.dim(i) or bv.shape[0] != self.dim(j):
            raise ValueError("vector length does not match degree dimension")
        return np.einsum("tab,a,b->t", self.mult3(i, j), av, bv) % self.p

    def cup_matrix(self, i: int, x, j: int) -> np.ndarray:
        """Matrix of w -> x . w from degree j to degree i + j."""
        xv = fplin.as_vector(x, self.p)
        if xv.shape[0] != self.dim(i):
            raise ValueError("vector length does not match degree dimension")
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
            raise ValueError(f"degree {degree} has dimension {self.dim(degree)}, got {v.shape[0]}")
        return Element.of(degree, v)

    def label(self, i: int, t: int) -> str:
        if i in self.labels:
            return self.labels[i][t]
        return f"e{i}_{t}"

    def format_element(self, el: Element) -> str:
        terms = []
        for t, c in enumerate(el.coeffs):
            if c % self.p == 0:
                continue
            c = c % self.p
            name = self.label(el.degree, t)
            terms.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(terms) if terms else "0"

    def validate(self) -> None:
        """Check unit, graded commutativity and associativity; raise AlgebraDefect."""
        p, n = self.p, self.n
        if self.dim(0) != 1:
            raise AlgebraDefect(f"degree 0 must be one-dimensional, got {self.dim(0)}")
        one = self.basis_element(0, 0)
        for j in range(n + 1):
            if self.dim(j) == 0:
                continue
            if not np.array_equal(self.cup_matrix(0, one, j), np.eye(self.dim(j), dtype=np.int64)):
                raise AlgebraDefect(f"unit fails on the left in degree {j}")
            right = np.einsum("tab,b->ta", self.mult3(j, 0), one) % p
            if not np.array_equal(right, np.eye(self.dim(j), dtype=np.int64)):
                raise AlgebraDefect(f"unit fails on the right in degree {j}")
        for i in range(n + 1):
            for j in range(i, n + 1 - i):
                if self.dim(i) == 0 or self.dim(j) == 0:
                    continue
                sign = p - 1 if (i % 2 and j % 2 and p != 2) else 1
                m_ij = self.mult3(i, j)
                m_ji = self.mult3(j, i)
                if not np.array_equal((sign * m_ji.transpose(0, 2, 1)) % p, m_ij):
                    raise AlgebraDefect(f"graded commutativity fails for degrees ({i}, {j})")
        for i in range(n + 1):
            for j in range(n + 1 - i):
                for k in range(n + 1 - i - j):
                    if self.dim(i) == 0 or self.dim(j) == 0 or self.dim(k) == 0:
                        continue
                    left = np.einsum("tuk,uij->tijk", self.mult3(i + j, k), self.mult3(i, j)) % p
                    right = np.einsum("tiv,vjk->tijk", self.mult3(i, j + k), self.mult3(j, k)) % p
                    if not np.array_equal(left, right):
                        raise AlgebraDefect(f"associativity fails for degrees ({i}, {j}, {k})")

    def pairing_matrix(self, i: int) -> np.ndarray:
        """Pairing H^i x H^(n-i) -> H^n as a dim(i) x dim(n-i) matrix (dim(n) must be 1)."""
        if self.dim(self.n) != 1:
            raise AlgebraDefect("top degree is not one-dimensional")
        return self.mult_map(i, self.n - i).reshape(self.dim(i), self.dim(self.n - i))

    def to_dict(self) -> dict:
        out = {
            "p": self.p,
            "top_degree": self.n,
            "dims": list(self.dims),
            "mult": {f"{i},{j}": m.tolist() for (i, j), m in sorted(self.mult.items())},
        }
        if self.labels:
            out["labels"] = {str(i): list(names) for i, names in sorted(self.labels.items())}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "GradedAlgebra":
        mult = {}
        for key, m in data.get("mult", {}).items():
            i, j = (int(s) for s in key.split(","))
            mult[(i, j)] = m
        labels = {int(k): v for k, v in data.get("labels", {}).items()} or None
        return cls(int(data["p"]), int(data["top_degree"]), data["dims"], mult, labels)

    def __repr__(self) -> str:
        return f"GradedAlgebra(p={self.p}, top_degree={self.n}, dims={list(self.dims)})"


def verify_poincare_duality(alg: GradedAlgebra) -> bool:
    """True iff dim H^0 = dim H^n = 1 and every degree pairing is perfect."""
    if alg.dim(0) != 1 or alg.dim(alg.n) != 1:
        return False
    for i in range(alg.n + 1):
        if alg.dim(i) != alg.dim(alg.n - i):
            return False
        pm = alg.pairing_matrix(i)
        if fplin.rank(pm, alg.p) != alg.dim(i):
            return False
    return True
