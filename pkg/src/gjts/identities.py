"""Verification of the defining identities and of weak commutativity.

Exhaustive checks run over basis tuples, which is complete because every
checked expression is multilinear. Sampled checks evaluate the identities on
random integer vectors drawn from a seeded generator.

Two exact evaluation routes exist. Rational systems go through an integer
tensor route (numpy ``int64`` when a magnitude bound proves it cannot overflow,
Python integers otherwise). Any system can use the generic route, which works
directly on :class:`~gjts.scalar.Scalar` sparse vectors. Both report the same
witness for the same input, which the test-suite cross-checks.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from itertools import product as cartesian
from math import lcm

import numpy as np

from .scalar import ZERO, Scalar
from .triple import TripleSystem

__all__ = [
    "IdentityReport",
    "GJTS_1_1",
    "GJTS_1_2",
    "WEAK_COMM_1_41",
    "EXHAUSTIVE_MAX_DIM",
    "DEFAULT_SAMPLES",
    "check_identity_1_1",
    "check_identity_1_2",
    "check_weak_commutativity",
    "weak_commutativity_residual",
    "unpolarized_weak_residual",
    "worker_count",
]

GJTS_1_1 = "GJTS_1_1"
GJTS_1_2 = "GJTS_1_2"
WEAK_COMM_1_41 = "WEAK_COMM_1_41"

EXHAUSTIVE_MAX_DIM = 16
DEFAULT_SAMPLES = 10_000
SAMPLE_HEIGHT = 2
_INT64_LIMIT = 2**62

_ARITY = {GJTS_1_1: 5, GJTS_1_2: 5, WEAK_COMM_1_41: 3}


@dataclass
class IdentityReport:
    identity_id: str
    mode: str
    passed: bool
    witness: dict | None = None
    checked: int = 0
    seed: int | None = None
    count: int | None = None
    backend: str = ""

    def __post_init__(self) -> None:
        if not self.passed and self.witness is None:
            raise ValueError("a failed report needs a witness")

    def to_json(self) -> dict:
        out = {
            "identity": self.identity_id,
            "mode": self.mode,
            "passed": self.passed,
            "checked": self.checked,
            "witness": None,
        }
        if self.mode == "sampled":
            out["seed"] = self.seed
            out["count"] = self.count
        if self.witness is not None:
            w = dict(self.witness)
            w["residual"] = [x.to_json() for x in w["residual"]]
            if "vectors" in w:
                w["vectors"] = [[str(x) for x in v] for v in w["vectors"]]
            out["witness"] = w
        return out


def worker_count() -> int:
    """Worker cap from ``PEIRCE_THREADS`` (default 1)."""
    raw = os.environ.get("PEIRCE_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"PEIRCE_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ValueError(f"PEIRCE_THREADS must be a positive integer, got {raw!r}")
    return n


# -- generic Scalar route ----------------------------------------------------


def _lin_sparse(*terms):
    out: dict = {}
    for coeff, vec in terms:
        for l, v in vec.items():
            out[l] = out.get(l, ZERO) + coeff * v
    return {l: v for l, v in out.items() if v}


def _expr_1_1(s: TripleSystem, a, b, c, d, f):
    p = s.product_sparse
    return _lin_sparse(
        (1, p(a, b, p(c, d, f))),
        (-1, p(p(a, b, c), d, f)),
        (1, p(c, p(b, a, d), f)),
        (-1, p(c, d, p(a, b, f))),
    )


def _bracket_1_2(s: TripleSystem, a, b, c, u, v):
    p = s.product_sparse
    avb = p(a, v, b)
    return _lin_sparse(
        (1, p(avb, u, c)),
        (-1, p(c, u, avb)),
        (-1, p(c, v, p(a, u, b))),
        (-1, p(a, p(v, c, u), b)),
    )


def _expr_1_2(s: TripleSystem, a, b, c, u, v):
    return _lin_sparse((1, _bracket_1_2(s, a, b, c, u, v)), (-1, _bracket_1_2(s, b, a, c, u, v)))


def _expr_141(s: TripleSystem, u, x, y):
    p = s.product_sparse
    yyy, uyy, yuy, yyu = p(y, y, y), p(u, y, y), p(y, u, y), p(y, y, u)
    return _lin_sparse(
        (1, p(u, x, yyy)),
        (1, p(y, x, uyy)),
        (1, p(y, x, yuy)),
        (1, p(y, x, yyu)),
        (-1, p(yyy, x, u)),
        (-1, p(uyy, x, y)),
        (-1, p(yuy, x, y)),
        (-1, p(yyu, x, y)),
    )


def _expr_full_polarization(s: TripleSystem, x, ys):
    p = s.product_sparse
    terms = []
    for y1, y2, y3, y4 in permutations(ys):
        terms.append((1, p(y1, x, p(y2, y3, y4))))
        terms.append((-1, p(p(y1, y2, y3), x, y4)))
    return _lin_sparse(*terms)


def weak_commutativity_residual(s: TripleSystem, u, x, y):
    """Residual of the once-polarized weak commutativity identity on vectors."""
    return s._dense(_expr_141(s, _sp(u), _sp(x), _sp(y)))


def unpolarized_weak_residual(s: TripleSystem, x, y):
    """``(y x (y y y)) - ((y y y) x y)``."""
    p = s.product_sparse
    xs, ys = _sp(x), _sp(y)
    yyy = p(ys, ys, ys)
    return s._dense(_lin_sparse((1, p(ys, xs, yyy)), (-1, p(yyy, xs, ys))))


def _sp(v):
    return {i: x for i, x in enumerate(v) if x}


def _unit(i: int):
    return {i: Scalar(1)}


def _generic_exhaustive(s: TripleSystem, identity: str):
    n = s.dim
    units = [_unit(i) for i in range(n)]
    checked = 0
    if identity == WEAK_COMM_1_41:
        for x in range(n):
            for ys in combinations_with_replacement(range(n), 4):
                checked += 1
                r = _expr_full_polarization(s, units[x], [units[y] for y in ys])
                if r:
                    return checked, (x, *ys), s._dense(r)
        return checked, None, None
    expr = _expr_1_1 if identity == GJTS_1_1 else _expr_1_2
    for idx in cartesian(range(n), repeat=5):
        checked += 1
        r = expr(s, *(units[i] for i in idx))
        if r:
            return checked, idx, s._dense(r)
    return checked, None, None


def _sample_vectors(dim: int, identity: str, seed: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(-SAMPLE_HEIGHT, SAMPLE_HEIGHT + 1, size=(count, _ARITY[identity], dim), dtype=np.int64)


def _generic_sampled(s: TripleSystem, identity: str, samples: np.ndarray):
    expr = {GJTS_1_1: _expr_1_1, GJTS_1_2: _expr_1_2, WEAK_COMM_1_41: _expr_141}[identity]
    for t, vecs in enumerate(samples):
        args = [{i: Scalar(int(x)) for i, x in enumerate(v) if x} for v in vecs]
        r = expr(s, *args)
        if r:
            return t, s._dense(r)
    return None, None


# -- integer tensor route ------------------------------------------------------


class _IntTensor:
    """Structure constants scaled to integers: ``table = scale * constants``."""

    def __init__(self, s: TripleSystem) -> None:
        if not s.is_rational():
            raise ValueError("integer route needs rational structure constants")
        n = s.dim
        sparse = s.sparse_constants()
        dens = [v.denominator for vec in sparse.values() for v in vec.values()]
        self.scale = lcm(*dens) if dens else 1
        entries = [
            (i, j, k, l, int(v.to_fraction() * self.scale))
            for (i, j, k), vec in sparse.items()
            for l, v in vec.items()
        ]
        self.n = n
        self.max_abs = max((abs(e[4]) for e in entries), default=0)
        self.entries = entries

    def dtype_for(self, bound: int):
        return np.int64 if bound < _INT64_LIMIT else object

    def dense(self, dtype) -> np.ndarray:
        n = self.n
        c = np.zeros((n, n, n, n), dtype=dtype)
        for i, j, k, l, v in self.entries:
            c[i, j, k, l] = v
        return c

    def coo(self, dtype):
        """Entries sorted by output index, with segment starts for a reduceat."""
        ent = sorted(self.entries, key=lambda e: e[3])
        arr = np.array([e[:4] for e in ent], dtype=np.int64).reshape(-1, 4)
        vals = np.array([e[4] for e in ent], dtype=dtype)
        outs, starts = np.unique(arr[:, 3], return_index=True)
        return arr[:, 0], arr[:, 1], arr[:, 2], vals, outs, starts


def _chunk_1_1(c: np.ndarray, a: int) -> np.ndarray:
    ca, c_a = c[a], c[:, a]
    return (
        np.einsum("cdfm,bmo->bcdfo", c, ca)
        - np.einsum("bcm,mdfo->bcdfo", ca, c)
        + np.einsum("bdm,cmfo->bcdfo", c_a, c)
        - np.einsum("bfm,cdmo->bcdfo", ca, c)
    )


def _chunk_1_2(c: np.ndarray, a0: int) -> np.ndarray:
    ca = c[a0]
    cb = c[:, :, a0]
    first = (
        np.einsum("vbm,muco->bcuvo", ca, c)
        - np.einsum("vbm,cumo->bcuvo", ca, c)
        - np.einsum("ubm,cvmo->bcuvo", ca, c)
        - np.einsum("vcum,mbo->bcuvo", c, ca)
    )
    second = (
        np.einsum("avm,muco->acuvo", cb, c)
        - np.einsum("avm,cumo->acuvo", cb, c)
        - np.einsum("aum,cvmo->acuvo", cb, c)
        - np.einsum("vcum,amo->acuvo", c, cb)
    )
    return first - second


def _chunk_weak(c: np.ndarray, x: int) -> np.ndarray:
    cx = c[:, x]
    g = np.einsum("pqrm,smo->spqro", c, cx) - np.einsum("pqrm,mso->pqrso", c, cx)
    total = np.zeros_like(g)
    for perm in permutations(range(4)):
        total = total + g.transpose(*perm, 4)
    return total


_CHUNKS = {GJTS_1_1: _chunk_1_1, GJTS_1_2: _chunk_1_2, WEAK_COMM_1_41: _chunk_weak}


def _int_exhaustive(s: TripleSystem, identity: str, workers: int):
    it = _IntTensor(s)
    n = it.n
    terms = 48 if identity == WEAK_COMM_1_41 else 8
    dtype = it.dtype_for(terms * n * it.max_abs**2)
    c = it.dense(dtype)
    fn = _CHUNKS[identity]

    def run(first: int):
        chunk = fn(c, first)
        hits = np.argwhere(np.any(chunk != 0, axis=-1))
        if len(hits) == 0:
            return None
        rest = tuple(int(t) for t in hits[0])
        return (first, *rest), chunk[rest]

    per_chunk = n**5 // n if identity != WEAK_COMM_1_41 else _multisets(n)
    checked = 0
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for start in range(0, n, workers):
            firsts = list(range(start, min(n, start + workers)))
            results = list(pool.map(run, firsts))
            for first, res in zip(firsts, results):
                checked += per_chunk
                if res is not None:
                    idx, resid = res
                    return checked, idx, _descale(resid, it.scale**2)
    return checked, None, None


def _multisets(n: int) -> int:
    return (n + 3) * (n + 2) * (n + 1) * n // 24


def _descale(values, scale: int):
    return tuple(Scalar(Fraction(int(v), scale)) for v in values)


def _int_sampled(s: TripleSystem, identity: str, samples: np.ndarray, batch: int = 1000):
    it = _IntTensor(s)
    n = it.n
    h = SAMPLE_HEIGHT
    inner = it.max_abs * (n * h) ** 3
    bound = 8 * it.max_abs * (n * h) ** 2 * n * inner
    dtype = it.dtype_for(bound)
    I, J, K, V, outs, starts = it.coo(dtype)

    def prod(x, y, z):
        out = np.zeros((x.shape[0], n), dtype=dtype)
        if len(V):
            w = V[None, :] * x[:, I] * y[:, J] * z[:, K]
            out[:, outs] = np.add.reduceat(w, starts, axis=1)
        return out

    for start in range(0, len(samples), batch):
        block = samples[start:start + batch].astype(dtype)
        vs = [block[:, t, :] for t in range(block.shape[1])]
        if identity == GJTS_1_1:
            a, b, cc, d, f = vs
            r = prod(a, b, prod(cc, d, f)) - prod(prod(a, b, cc), d, f) + prod(cc, prod(b, a, d), f) - prod(cc, d, prod(a, b, f))
        elif identity == GJTS_1_2:
            a, b, cc, u, v = vs

            def bracket(a, b):
                avb = prod(a, v, b)
                return prod(avb, u, cc) - prod(cc, u, avb) - prod(cc, v, prod(a, u, b)) - prod(a, prod(v, cc, u), b)

            r = bracket(a, b) - bracket(b, a)
        else:
            u, x, y = vs
            yyy, uyy, yuy, yyu = prod(y, y, y), prod(u, y, y), prod(y, u, y), prod(y, y, u)
            r = (
                prod(u, x, yyy) + prod(y, x, uyy) + prod(y, x, yuy) + prod(y, x, yyu)
                - prod(yyy, x, u) - prod(uyy, x, y) - prod(yuy, x, y) - prod(yyu, x, y)
            )
        bad = np.flatnonzero(np.any(r != 0, axis=1))
        if len(bad):
            t = int(bad[0])
            return start + t, _descale(r[t], it.scale**2)
    return None, None


# -- public checks -------------------------------------------------------------


def _check(s: TripleSystem, identity: str, mode: str | None, seed: int, count: int, backend: str | None) -> IdentityReport:
    if mode is None:
        mode = "exhaustive" if s.dim <= EXHAUSTIVE_MAX_DIM else "sampled"
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown mode {mode!r}")
    if backend is None:
        backend = "integer" if s.is_rational() else "generic"
    if backend == "integer" and not s.is_rational():
        raise ValueError("integer backend needs rational structure constants")
    if backend not in ("integer", "generic"):
        raise ValueError(f"unknown backend {backend!r}")

    if mode == "exhaustive":
        if backend == "integer":
            checked, idx, resid = _int_exhaustive(s, identity, worker_count())
        else:
            checked, idx, resid = _generic_exhaustive(s, identity)
        witness = None if idx is None else {"indices": list(idx), "residual": resid}
        return IdentityReport(identity, mode, witness is None, witness, checked, backend=backend)

    if count < 1:
        raise ValueError("sample count must be positive")
    samples = _sample_vectors(s.dim, identity, seed, count)
    if backend == "integer":
        t, resid = _int_sampled(s, identity, samples)
    else:
        t, resid = _generic_sampled(s, identity, samples)
    witness = None
    if t is not None:
        vectors = [[Scalar(int(x)) for x in v] for v in samples[t]]
        witness = {"sample": t, "vectors": vectors, "residual": resid}
    checked = count if t is None else t + 1
    return IdentityReport(identity, mode, witness is None, witness, checked, seed, count, backend)


def check_identity_1_1(s: TripleSystem, mode: str | None = None, seed: int = 0, count: int = DEFAULT_SAMPLES, backend: str | None = None) -> IdentityReport:
    """``(ab(cdf)) = ((abc)df) - (c(bad)f) + (cd(abf))`` over quintuples ``(a, b, c, d, f)``."""
    return _check(s, GJTS_1_1, mode, seed, count, backend)


def check_identity_1_2(s: TripleSystem, mode: str | None = None, seed: int = 0, count: int = DEFAULT_SAMPLES, backend: str | None = None) -> IdentityReport:
    """Alternation in ``a, b`` of ``((avb)uc) - (cu(avb)) - (cv(aub)) - (a(vcu)b)``.

    Tuples are ordered ``(a, b, c, u, v)``.
    """
    return _check(s, GJTS_1_2, mode, seed, count, backend)


def check_weak_commutativity(s: TripleSystem, mode: str | None = None, seed: int = 0, count: int = DEFAULT_SAMPLES, backend: str | None = None) -> IdentityReport:
    """Weak commutativity ``(yx(yyy)) = ((yyy)xy)``.

    The quartic identity is linearized before checking. Exhaustive mode uses
    the full linearization in ``x, y1..y4``, with ``y1 <= .. <= y4`` since it is
    symmetric in the ``y``. Sampled mode evaluates the once-polarized form in
    random vectors ``(u, x, y)``.
    """
    return _check(s, WEAK_COMM_1_41, mode, seed, count, backend)
