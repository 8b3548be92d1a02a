"""Brute-force reference computations, independent of the package's linear algebra.

Everything here enumerates; keep inputs tiny.
"""

import itertools
import math

import numpy as np


def vectors(n, p):
    for c in itertools.product(range(p), repeat=n):
        yield np.array(c, dtype=np.int64)


def count_log(count, p):
    d = round(math.log(count, p)) if count > 1 else 0
    assert p ** d == count, "solution set is not a subspace"
    return d


def kernel_dim(m, p):
    m = np.asarray(m, dtype=np.int64)
    hits = sum(1 for v in vectors(m.shape[1], p) if not (m @ v % p).any())
    return count_log(hits, p)


def rank(m, p):
    return np.asarray(m).shape[1] - kernel_dim(m, p)


def solutions(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    return [v for v in vectors(a.shape[1], p) if np.array_equal(a @ v % p, b % p)]


def hom_dim(src_mats, dst_mats, p, limit=1 << 16):
    """Dimension of the space of matrices ``f`` with ``f a = b f`` for paired actions."""
    if not src_mats:
        raise ValueError("need at least one action matrix")
    dm, dn = src_mats[0].shape[0], dst_mats[0].shape[0]
    if p ** (dm * dn) > limit:
        raise ValueError("too large to enumerate")
    hits = 0
    for c in itertools.product(range(p), repeat=dm * dn):
        f = np.array(c, dtype=np.int64).reshape(dn, dm)
        if all(np.array_equal(f @ a % p, b @ f % p) for a, b in zip(src_mats, dst_mats)):
            hits += 1
    return count_log(hits, p)
