"""Exact oracles for the GF(p) linear algebra layer.

Small cases are checked against full enumeration of the vector space;
larger cases against structural invariants (rank-nullity, conjugation).
"""

import itertools

import numpy as np
import pytest

from periodica import fplin
from periodica.fplin import Subspace


def poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def irreducible_polys(p, max_deg=3):
    """Monic irreducibles of degree <= 3 (degree 2 and 3: no roots suffices)."""
    out = []
    for deg in range(1, max_deg + 1):
        for tail in itertools.product(range(p), repeat=deg):
            poly = tuple(tail) + (1,)
            if deg == 1 or all(poly_eval(poly, a, p) for a in range(p)):
                out.append(poly)
    return out


def companion(poly, p):
    d = len(poly) - 1
    m = np.zeros((d, d), dtype=np.int64)
    for i in range(1, d):
        m[i, i - 1] = 1
    for i in range(d):
        m[i, d - 1] = (-poly[i]) % p
    return m


def random_invertible(rng, d, p):
    while True:
        m = rng.integers(0, p, size=(d, d))
        if fplin.rank(m, p) == d:
            return m % p


def random_semisimple(rng, d, p):
    """Conjugated direct sum of companion blocks of distinct irreducibles."""
    while True:
        pool = irreducible_polys(p)
        rng.shuffle(pool)
        blocks = []
        left = d
        for poly in pool:
            deg = len(poly) - 1
            if deg <= left:
                blocks.append(companion(poly, p))
                left -= deg
            if left == 0:
                break
        if left == 0:
            break
    m = np.zeros((d, d), dtype=np.int64)
    at = 0
    for b in blocks:
        k = b.shape[0]
        m[at : at + k, at : at + k] = b
        at += k
    t = random_invertible(rng, d, p)
    return (t @ m @ fplin.mat_inv(t, p)) % p


def brute_kernel_vectors(m, p):
    return [v for v in fplin.enumerate_vectors(m.shape[1], p) if not ((m @ v) % p).any()]


def brute_image_vectors(m, p):
    return {tuple((m @ v) % p) for v in fplin.enumerate_vectors(m.shape[1], p)}


def test_rref_canonical():
    rng = np.random.default_rng(11)
    for p in (2, 3, 5):
        for _ in range(30):
            m = rng.integers(0, p, size=(rng.integers(1, 5), rng.integers(1, 5))) % p
            red, pivots = fplin.rref(m, p)
            assert red.shape[0] == len(pivots)
            again, pivots2 = fplin.rref(red, p)
            assert np.array_equal(again, red) and pivots2 == pivots
            # row spaces agree
            s1 = Subspace.from_vectors(list(m), p, m.shape[1])
            s2 = Subspace.from_vectors(list(red), p, m.shape[1]) if red.shape[0] else Subspace.zero(p, m.shape[1])
            assert s1 == s2
            for t, c in enumerate(pivots):
                col = red[:, c]
                assert col[t] == 1 and np.count_nonzero(col) == 1


def test_solve_consistent_and_inconsistent():
    rng = np.random.default_rng(12)
    for p in (2, 5):
        for _ in range(40):
            a = rng.integers(0, p, size=(rng.integers(1, 5), rng.integers(1, 5)))
            x0 = rng.integers(0, p, size=a.shape[1])
            b = (a @ x0) % p
            x = fplin.solve(a, b, p)
            assert x is not None
            assert np.array_equal((a @ x) % p, b)
    # no solution: e1 outside the column space
    a = np.array([[1, 1], [1, 1], [0, 0]])
    assert fplin.solve(a, np.array([1, 0, 0]), 2) is None


def test_kernel_image_against_enumeration():
    rng = np.random.default_rng(13)
    for p in (2, 3):
        for _ in range(25):
            m = rng.integers(0, p, size=(rng.integers(0, 4), rng.integers(0, 4)))
            ker = fplin.kernel(m, p)
            img = fplin.image(m, p)
            kv = brute_kernel_vectors(m, p)
            iv = brute_image_vectors(m, p)
            assert p**ker.dim == len(kv)
            assert all(ker.contains(v) for v in kv)
            assert p**img.dim == len(iv)
            assert all(img.contains(np.array(v)) for v in iv)
            assert ker.dim + img.dim == m.shape[1]


def test_rank_nullity_larger():
    rng = np.random.default_rng(14)
    for p in (2, 7):
        for _ in range(20):
            m = rng.integers(0, p, size=(rng.integers(1, 9), rng.integers(1, 9)))
            assert fplin.kernel(m, p).dim + fplin.rank(m, p) == m.shape[1]
            assert fplin.image(m, p).dim == fplin.rank(m, p)


def test_subspace_membership_and_coords():
    rng = np.random.default_rng(15)
    for p in (2, 3, 5):
        for _ in range(25):
            d = int(rng.integers(1, 6))
            k = int(rng.integers(0, d + 1))
            vs = [rng.integers(0, p, size=d) for _ in range(k)]
            s = Subspace.from_vectors(vs, p, d)
            for _ in range(5):
                c = rng.integers(0, p, size=s.dim)
                v = (c @ s.basis) % p if s.dim else np.zeros(d, dtype=np.int64)
                assert s.contains(v)
                got = s.coords_of(v)
                assert np.array_equal((got @ s.basis) % p if s.dim else v, v)
            if s.dim < d:
                outside = s.coordinate_complement().basis[0]
                assert not s.contains(outside)
                with pytest.raises(ValueError):
                    s.coords_of(outside)


def test_sum_intersection_against_enumeration():
    rng = np.random.default_rng(16)
    for p in (2, 3):
        for _ in range(20):
            d = int(rng.integers(1, 5))
            u = Subspace.from_vectors([rng.integers(0, p, size=d) for _ in range(rng.integers(0, 3))], p, d)
            w = Subspace.from_vectors([rng.integers(0, p, size=d) for _ in range(rng.integers(0, 3))], p, d)
            both = u.intersection(w)
            tot = u.sum(w)
            n_both = sum(1 for v in fplin.enumerate_vectors(d, p) if u.contains(v) and w.contains(v))
            assert p**both.dim == n_both
            for row in both.basis:
                assert u.contains(row) and w.contains(row)
            # dim formula and spanning
            assert tot.dim == u.dim + w.dim - both.dim
            for row in np.vstack([u.basis, w.basis]) if u.dim + w.dim else []:
                assert tot.contains(row)


def test_coordinate_complement_is_direct():
    rng = np.random.default_rng(17)
    for p in (2, 5):
        for _ in range(25):
            d = int(rng.integers(1, 7))
            s = Subspace.from_vectors([rng.integers(0, p, size=d) for _ in range(rng.integers(0, d + 1))], p, d)
            c = s.coordinate_complement()
            assert s.dim + c.dim == d
            assert s.intersection(c).dim == 0
            assert s.sum(c) == Subspace.full(p, d)


def test_minimal_polynomial_of_companion_blocks():
    for p in (2, 3, 5):
        for poly in irreducible_polys(p):
            m = companion(poly, p)
            assert fplin.minimal_polynomial(m, p) == poly
    # nilpotent Jordan block: t^3
    j = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert fplin.minimal_polynomial(j, 2) == (0, 0, 0, 1)
    assert fplin.minimal_polynomial(np.eye(4, dtype=np.int64), 3) == (2, 1)
    assert fplin.minimal_polynomial(np.zeros((0, 0), dtype=np.int64), 2) == (1,)


def test_minimal_polynomial_brute_minimality():
    rng = np.random.default_rng(18)
    for p in (2, 3):
        for _ in range(15):
            d = int(rng.integers(1, 4))
            m = rng.integers(0, p, size=(d, d))
            mp = fplin.minimal_polynomial(m, p)
            assert mp[-1] == 1
            assert not fplin.poly_eval_matrix(mp, m, p).any()
            # no annihilating monic polynomial of lower degree
            for deg in range(1, len(mp) - 1):
                for tail in itertools.product(range(p), repeat=deg):
                    cand = tuple(tail) + (1,)
                    assert fplin.poly_eval_matrix(cand, m, p).any()


def test_is_semisimple_known_and_random():
    rng = np.random.default_rng(19)
    assert fplin.is_semisimple(np.eye(3, dtype=np.int64), 2)
    assert not fplin.is_semisimple(np.array([[1, 1], [0, 1]]), 2)
    assert not fplin.is_semisimple(np.array([[0, 1], [0, 0]]), 5)
    for p in (2, 3):
        for _ in range(15):
            d = int(rng.integers(1, 7))
            s = random_semisimple(rng, d, p)
            assert fplin.is_semisimple(s, p)
    # conjugation does not change the answer
    j = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    t = random_invertible(np.random.default_rng(20), 3, 5)
    assert not fplin.is_semisimple((t @ j @ fplin.mat_inv(t, 5)) % 5, 5)


def test_semisimple_power():
    rng = np.random.default_rng(21)
    for p in (2, 3):
        for _ in range(20):
            d = int(rng.integers(1, 6))
            m = rng.integers(0, p, size=(d, d))
            g, l = fplin.semisimple_power(m, p)
            assert p**l >= d and (l == 0 or p ** (l - 1) < d)
            assert np.array_equal(g, fplin.mat_pow(m, p**l, p))
            assert fplin.is_semisimple(g, p)


def test_operator_order():
    assert fplin.operator_order(np.zeros((0, 0), dtype=np.int64), 3) == 1
    assert fplin.operator_order(np.eye(4, dtype=np.int64), 2) == 1
    cyc = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert fplin.operator_order(cyc, 2) == 3
    assert fplin.operator_order(2 * np.eye(1, dtype=np.int64), 5) == 4
    with pytest.raises(fplin.NotInvertible):
        fplin.operator_order(np.zeros((2, 2), dtype=np.int64), 2)
    with pytest.raises(fplin.OrderCapExceeded):
        fplin.operator_order(3 * np.eye(1, dtype=np.int64), 7, cap=2)
    rng = np.random.default_rng(22)
    for p in (2, 3):
        for _ in range(10):
            m = random_semisimple(rng, int(rng.integers(1, 5)), p)
            if fplin.rank(m, p) < m.shape[0]:
                continue
            r = fplin.operator_order(m, p)
            assert np.array_equal(fplin.mat_pow(m, r, p), np.eye(m.shape[0], dtype=np.int64))
            for q in range(1, r):
                assert not np.array_equal(fplin.mat_pow(m, q, p), np.eye(m.shape[0], dtype=np.int64))


def test_invariant_complement_contract():
    rng = np.random.default_rng(23)
    for p in (2, 3):
        for _ in range(20):
            d = int(rng.integers(1, 6))
            m = random_semisimple(rng, d, p)
            comp = fplin.invariant_complement_of_kernel(m, p)
            ker = fplin.kernel(m, p)
            assert comp.dim + ker.dim == d
            assert comp.intersection(ker).dim == 0
            for row in comp.basis:
                assert comp.contains((m @ row) % p)


def test_invariant_complement_refuses_jordan_block():
    # span(e1) = kernel; any line complementing it maps onto e1's line, never into itself
    j = np.array([[0, 1], [0, 0]])
    for v in fplin.enumerate_vectors(2, 2):
        if v[1] == 0:
            continue
        line = Subspace.from_vectors([v], 2, 2)
        assert not line.contains((j @ v) % 2)
    with pytest.raises(fplin.NotSemisimple):
        fplin.invariant_complement_of_kernel(j, 2)


def test_direct_sum_check():
    rng = np.random.default_rng(24)
    for p in (2, 3):
        for _ in range(20):
            d = int(rng.integers(2, 7))
            t = random_invertible(rng, d, p)
            cut1 = int(rng.integers(1, d))
            cut2 = int(rng.integers(cut1, d + 1))
            parts = [
                Subspace.from_vectors(list(t[:cut1]), p, d),
                Subspace.from_vectors(list(t[cut1:cut2]), p, d) if cut2 > cut1 else Subspace.zero(p, d),
                Subspace.from_vectors(list(t[cut2:]), p, d) if cut2 < d else Subspace.zero(p, d),
            ]
            full_space = Subspace.full(p, d)
            assert fplin.direct_sum_check(parts, full_space, full=True)
            assert fplin.direct_sum_check(parts[:2], full_space)
            # repeating a nonzero part breaks independence
            big = max(parts, key=lambda s: s.dim)
            assert not fplin.direct_sum_check([big, big], full_space)
    # not contained in ambient
    amb = Subspace.from_vectors([np.array([1, 0])], 2, 2)
    out = Subspace.from_vectors([np.array([0, 1])], 2, 2)
    assert not fplin.direct_sum_check([out], amb)


def test_restricted_matrix():
    rng = np.random.default_rng(25)
    for p in (2, 5):
        for _ in range(20):
            ds = int(rng.integers(1, 5))
            dt = int(rng.integers(1, 5))
            op = rng.integers(0, p, size=(dt, ds))
            source = Subspace.from_vectors([rng.integers(0, p, size=ds) for _ in range(rng.integers(1, ds + 1))], p, ds)
            target = fplin.image(op, p)
            r = fplin.restricted_matrix(op, source, target)
            assert r.shape == (target.dim, source.dim)
            for _ in range(4):
                c = rng.integers(0, p, size=source.dim)
                v = (c @ source.basis) % p if source.dim else np.zeros(ds, dtype=np.int64)
                w = (op @ v) % p
                assert np.array_equal((r @ c) % p if source.dim else np.zeros(target.dim, dtype=np.int64), target.coords_of(w))
    tiny = Subspace.from_vectors([np.array([1, 0])], 2, 2)
    with pytest.raises(ValueError):
        fplin.restricted_matrix(np.eye(2, dtype=np.int64), Subspace.full(2, 2), tiny)


def test_mat_inv_and_pow():
    rng = np.random.default_rng(26)
    for p in (2, 3, 5):
        for _ in range(15):
            d = int(rng.integers(1, 6))
            m = random_invertible(rng, d, p)
            inv = fplin.mat_inv(m, p)
            assert np.array_equal((m @ inv) % p, np.eye(d, dtype=np.int64))
            e = int(rng.integers(0, 9))
            ref = np.eye(d, dtype=np.int64)
            for _ in range(e):
                ref = (ref @ m) % p
            assert np.array_equal(fplin.mat_pow(m, e, p), ref)
    with pytest.raises(fplin.NotInvertible):
        fplin.mat_inv(np.array([[1, 1], [1, 1]]), 2)


def test_enumerate_vectors_order():
    got = [tuple(v) for v in fplin.enumerate_vectors(2, 3)]
    assert got == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]
    assert len(list(fplin.enumerate_vectors(0, 5))) == 1
    assert len(list(fplin.enumerate_vectors(3, 2))) == 8
