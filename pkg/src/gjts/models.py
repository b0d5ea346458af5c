"""Concrete triple systems built from matrix spaces, with canonical tripotents.

Coordinates are row-major matrix entries; for spaces of matrix pairs the first
matrix comes first. Each builder returns ``(system, tripotent, descriptor)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .labels import (
    LABEL_ORDER,
    U00,
    U01,
    U11M,
    U11P,
    U13M,
    U13P,
    U_32_32,
    U_HALF_2,
    U_HALF_HALF,
    U_MHALF_0,
)
from .linalg import Vector
from .scalar import ONE, ZERO, Scalar
from .triple import TripleSystem, from_product_oracle

__all__ = [
    "ModelDescriptor",
    "build_akn_ank",
    "build_ann_ann",
    "build_dnk",
    "build_structurable_matrix",
    "build_model",
    "ParameterError",
    "MODEL_REGISTRY",
    "LABEL_ORDER",
]


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ModelDescriptor:
    name: str
    params: dict
    expected_components: dict = field(default_factory=dict)
    weakly_commutative: bool = False

    def expected_dims(self) -> dict:
        """Expected dimension for every label, zeros included."""
        return {lab: self.expected_components.get(lab, 0) for lab in LABEL_ORDER}

    @property
    def total_dim(self) -> int:
        return sum(self.expected_components.values())


# -- sparse matrices as {(row, col): Scalar} ---------------------------------


def _mul(a: dict, b: dict) -> dict:
    by_row: dict = {}
    for (k, j), v in b.items():
        by_row.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), u in a.items():
        for j, v in by_row.get(k, ()):
            out[(i, j)] = out.get((i, j), ZERO) + u * v
    return out


def _t(a: dict) -> dict:
    return {(j, i): v for (i, j), v in a.items()}


def _lin(*terms: tuple[int, dict]) -> dict:
    out: dict = {}
    for coeff, m in terms:
        for key, v in m.items():
            out[key] = out.get(key, ZERO) + coeff * v
    return out


class _MatrixSpace:
    """Coordinate layout of a direct sum of matrix blocks."""

    def __init__(self, shapes: list[tuple[int, int]]) -> None:
        self.shapes = shapes
        self.offsets = []
        off = 0
        for r, c in shapes:
            self.offsets.append(off)
            off += r * c
        self.dim = off

    def split(self, v: Vector) -> list[dict]:
        blocks = [dict() for _ in self.shapes]
        # locate block by offset; vectors are mostly sparse
        for idx, x in enumerate(v):
            if not x:
                continue
            b = self._block_of(idx)
            local = idx - self.offsets[b]
            cols = self.shapes[b][1]
            blocks[b][(local // cols, local % cols)] = x
        return blocks

    def _block_of(self, idx: int) -> int:
        for b in range(len(self.shapes) - 1, -1, -1):
            if idx >= self.offsets[b]:
                return b
        raise IndexError(idx)

    def unit(self, idx: int) -> list[dict]:
        b = self._block_of(idx)
        local = idx - self.offsets[b]
        cols = self.shapes[b][1]
        blocks = [dict() for _ in self.shapes]
        blocks[b][(local // cols, local % cols)] = ONE
        return blocks

    def flat(self, blocks: list[dict]) -> dict:
        out = {}
        for b, m in enumerate(blocks):
            cols = self.shapes[b][1]
            for (i, j), x in m.items():
                if x:
                    out[self.offsets[b] + i * cols + j] = x
        return out

    def join(self, blocks: list[dict]) -> Vector:
        out = [ZERO] * self.dim
        for b, m in enumerate(blocks):
            cols = self.shapes[b][1]
            for (i, j), x in m.items():
                if x:
                    out[self.offsets[b] + i * cols + j] = x
        return tuple(out)


class _BlockProduct:
    """Trilinear map given on block decompositions, with a basis-triple shortcut."""

    def __init__(self, space: _MatrixSpace, core) -> None:
        self.space = space
        self.core = core
        self._units = [space.unit(i) for i in range(space.dim)]

    def __call__(self, x: Vector, y: Vector, z: Vector) -> Vector:
        sp = self.space
        return sp.join(self.core(sp.split(x), sp.split(y), sp.split(z)))

    def on_basis(self, i: int, j: int, k: int) -> dict:
        u = self._units
        return self.space.flat(self.core(u[i], u[j], u[k]))


def _sym(k: int) -> int:
    return k * (k + 1) // 2


def _skew(k: int) -> int:
    return k * (k - 1) // 2


# -- pairs of rectangular matrices -------------------------------------------


def _pair_core(xb, yb, zb):
    a1, a2 = xb
    b1, b2 = yb
    c1, c2 = zb
    b1t, b2t = _t(b1), _t(b2)
    first = _lin(
        (1, _mul(_mul(a1, b1t), c1)),
        (1, _mul(_mul(c1, b1t), a1)),
        (-1, _mul(_mul(c1, a2), b2t)),
    )
    second = _lin(
        (1, _mul(_mul(a2, b2t), c2)),
        (1, _mul(_mul(c2, b2t), a2)),
        (-1, _mul(_mul(b1t, a1), c2)),
    )
    return [first, second]


@lru_cache(maxsize=None)
def build_akn_ank(k: int, n: int):
    """Pairs (A1, A2) of k-by-n and n-by-k matrices with the pair product.

    The tripotent has identity blocks in the leading k-by-k corners.
    """
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    space = _MatrixSpace([(k, n), (n, k)])
    system = from_product_oracle(space.dim, _BlockProduct(space, _pair_core), f"A{k}{n}-A{n}{k}")
    e1 = {(i, i): ONE for i in range(k)}
    e2 = {(i, i): ONE for i in range(k)}
    e = space.join([e1, e2])
    comps = {
        U11P: _sym(k) + k * (n - k),
        U11M: _skew(k) + k * (n - k),
        U13P: _sym(k),
        U13M: _skew(k),
    }
    desc = ModelDescriptor(f"A{k}{n}-A{n}{k}", {"k": k, "n": n}, {l: d for l, d in comps.items() if d}, False)
    return system, e, desc


@lru_cache(maxsize=None)
def build_ann_ann(l: int):
    """Square pairs of order n = 3l with the tripotent whose ten components are all nonzero."""
    if l < 1:
        raise ParameterError(f"need l >= 1, got {l}")
    n = 3 * l
    space = _MatrixSpace([(n, n), (n, n)])
    system = from_product_oracle(space.dim, _BlockProduct(space, _pair_core), f"A{n}{n}-A{n}{n}")
    half = ONE / Scalar(0, 1)  # 1/sqrt2
    e1, e2 = {}, {}
    for i in range(l):
        e1[(i, i)] = half
        e1[(l + i, l + i)] = ONE
        e2[(l + i, l + i)] = ONE
        e2[(2 * l + i, 2 * l + i)] = half
    e = space.join([e1, e2])
    comps = {
        U00: l * l,
        U_HALF_HALF: 4 * l * l,
        U11P: 3 * _sym(l),
        U11M: 3 * _skew(l),
        U_32_32: 2 * l * l,
        U_MHALF_0: 2 * l * l,
        U01: 3 * l * l,
        U_HALF_2: 2 * l * l,
        U13P: _sym(l),
        U13M: _skew(l),
    }
    desc = ModelDescriptor(f"A{n}{n}-A{n}{n}", {"l": l}, {k: d for k, d in comps.items() if d}, False)
    return system, e, desc


# -- rectangular matrices with XY^TZ + ZY^TX - YX^TZ --------------------------


@lru_cache(maxsize=None)
def build_dnk(n: int, k: int, l: int):
    if not (n >= k >= l >= 1):
        raise ParameterError(f"need n >= k >= l >= 1, got n={n}, k={k}, l={l}")
    space = _MatrixSpace([(n, k)])

    def core(xb, yb, zb):
        (a,), (b,), (c,) = xb, yb, zb
        bt = _t(b)
        return [_lin(
            (1, _mul(_mul(a, bt), c)),
            (1, _mul(_mul(c, bt), a)),
            (-1, _mul(_mul(b, _t(a)), c)),
        )]

    system = from_product_oracle(space.dim, _BlockProduct(space, core), f"D{n}{k}")
    e = space.join([{(i, i): ONE for i in range(l)}])
    comps = {
        U00: (n - l) * (k - l),
        U11P: _sym(l),
        U11M: (n - l) * l,
        U01: l * (k - l),
        U13M: _skew(l),
    }
    desc = ModelDescriptor(f"D{n}{k}", {"n": n, "k": k, "l": l}, {c: d for c, d in comps.items() if d}, True)
    return system, e, desc


# -- m-by-m matrices as a structurable algebra with transpose -----------------


@lru_cache(maxsize=None)
def build_structurable_matrix(m: int):
    """Full matrix algebra with transpose, product ``(x y* z) = xy^Tz + zy^Tx - zx^Ty``."""
    if m < 1:
        raise ParameterError(f"need m >= 1, got {m}")
    space = _MatrixSpace([(m, m)])

    def core(xb, yb, zb):
        (a,), (b,), (c,) = xb, yb, zb
        bt = _t(b)
        return [_lin(
            (1, _mul(_mul(a, bt), c)),
            (1, _mul(_mul(c, bt), a)),
            (-1, _mul(_mul(c, _t(a)), b)),
        )]

    system = from_product_oracle(space.dim, _BlockProduct(space, core), f"M{m}(transpose)")
    e = space.join([{(i, i): ONE for i in range(m)}])
    comps = {U11P: _sym(m), U13M: _skew(m)}
    # weakly commutative: U13+ vanishes and the identity checks out exhaustively for m <= 4
    desc = ModelDescriptor(f"M{m}", {"m": m}, {c: d for c, d in comps.items() if d}, True)
    return system, e, desc


MODEL_REGISTRY = {
    "akn": (build_akn_ank, ("k", "n")),
    "ann": (build_ann_ann, ("l",)),
    "dnk": (build_dnk, ("n", "k", "l")),
    "structurable": (build_structurable_matrix, ("m",)),
}


def build_model(name: str, params):
    """Build a registered model from a name and a sequence of integer parameters."""
    try:
        builder, names = MODEL_REGISTRY[name]
    except KeyError:
        raise ParameterError(f"unknown model {name!r}; choose from {', '.join(MODEL_REGISTRY)}") from None
    params = list(params)
    if len(params) != len(names):
        raise ParameterError(f"model {name!r} takes parameters {','.join(names)}")
    return builder(*params)
