"""Triple systems given by structure constants.

``constants[(i, j, k)]`` is the coordinate vector of ``(e_i e_j e_k)``; missing
keys stand for the zero vector. Internally every product is kept as a sparse
``{l: Scalar}`` map so block-sparse models stay cheap.
"""

from __future__ import annotations

import json
from itertools import product as cartesian
from typing import Callable, Mapping

from .linalg import DimensionMismatch, Matrix, Vector, inverse, unit_vector
from .scalar import ZERO, Scalar

__all__ = ["TripleSystem", "from_product_oracle", "SCHEMA_VERSION"]

SCHEMA_VERSION = "1"

Sparse = dict  # dict[int, Scalar]


class TripleSystem:
    def __init__(self, dim: int, constants: Mapping[tuple[int, int, int], Vector | Mapping[int, Scalar]], label: str = "") -> None:
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.label = label
        table: dict[tuple[int, int, int], Sparse] = {}
        for key, value in constants.items():
            i, j, k = key
            if not all(0 <= t < dim for t in key):
                raise IndexError(f"index triple {key} out of range for dimension {dim}")
            if isinstance(value, Mapping):
                sparse = {l: v for l, v in value.items() if v}
                if any(not 0 <= l < dim for l in sparse):
                    raise IndexError(f"output index out of range in {key}")
            else:
                if len(value) != dim:
                    raise DimensionMismatch(f"constant {key} has length {len(value)}, expected {dim}")
                sparse = {l: v for l, v in enumerate(value) if v}
            if sparse:
                table[(i, j, k)] = sparse
        self._table = table

    # -- access --------------------------------------------------------------

    @property
    def constants(self) -> dict[tuple[int, int, int], Vector]:
        return {key: self._dense(s) for key, s in self._table.items()}

    def sparse_constants(self) -> dict[tuple[int, int, int], Sparse]:
        return self._table

    def constant(self, i: int, j: int, k: int) -> Vector:
        return self._dense(self._table.get((i, j, k), {}))

    def nnz(self) -> int:
        return sum(len(s) for s in self._table.values())

    def is_rational(self) -> bool:
        return all(v.is_rational() for s in self._table.values() for v in s.values())

    def _dense(self, s: Sparse) -> Vector:
        out = [ZERO] * self.dim
        for l, v in s.items():
            out[l] = v
        return tuple(out)

    # -- product -------------------------------------------------------------

    def product_sparse(self, x: Sparse, y: Sparse, z: Sparse) -> Sparse:
        out: Sparse = {}
        table = self._table
        for i, xi in x.items():
            for j, yj in y.items():
                xy = xi * yj
                for k, zk in z.items():
                    c = table.get((i, j, k))
                    if c is None:
                        continue
                    w = xy * zk
                    for l, v in c.items():
                        out[l] = out.get(l, ZERO) + w * v
        return {l: v for l, v in out.items() if v}

    def product(self, x: Vector, y: Vector, z: Vector) -> Vector:
        for v in (x, y, z):
            if len(v) != self.dim:
                raise DimensionMismatch(f"vector of length {len(v)} in a {self.dim}-dimensional system")
        return self._dense(self.product_sparse(to_sparse(x), to_sparse(y), to_sparse(z)))

    def operator(self, slot: int, fixed: tuple[Vector, Vector]) -> Matrix:
        """Matrix of the linear map obtained by fixing two arguments.

        ``slot`` is the free position (0, 1 or 2); ``fixed`` holds the other two
        arguments in order.
        """
        a, b = (to_sparse(v) for v in fixed)
        cols = []
        for t in range(self.dim):
            basis = {t: Scalar(1)}
            args = [a, b]
            args.insert(slot, basis)
            cols.append(self._dense(self.product_sparse(*args)))
        return Matrix.from_columns(cols)

    # -- transformations -----------------------------------------------------

    def transform(self, basis: Matrix, label: str | None = None) -> TripleSystem:
        """The same product written in the basis given by the columns of ``basis``."""
        n = self.dim
        if basis.shape != (n, n):
            raise DimensionMismatch("basis matrix must be square of the system dimension")
        cols = [to_sparse(basis.column(j)) for j in range(n)]
        inv = inverse(basis)
        constants = {}
        for i, j, k in cartesian(range(n), repeat=3):
            p = self.product_sparse(cols[i], cols[j], cols[k])
            if p:
                constants[(i, j, k)] = inv.apply(self._dense(p))
        return TripleSystem(n, constants, self.label if label is None else label)

    def perturbed(self, key: tuple[int, int, int], out_index: int, delta=1) -> TripleSystem:
        """Copy with one structure constant shifted by ``delta``."""
        table = {k: dict(v) for k, v in self._table.items()}
        entry = table.setdefault(tuple(key), {})
        entry[out_index] = entry.get(out_index, ZERO) + delta
        return TripleSystem(self.dim, table, f"{self.label} (perturbed)")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TripleSystem):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __repr__(self) -> str:
        return f"TripleSystem(dim={self.dim}, label={self.label!r}, nnz={self.nnz()})"

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        entries = []
        for (i, j, k) in sorted(self._table):
            entries.append({"i": i, "j": j, "k": k, "value": [x.to_json() for x in self.constant(i, j, k)]})
        return {"schema": SCHEMA_VERSION, "dim": self.dim, "label": self.label, "constants": entries}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> TripleSystem:
        if not isinstance(data, Mapping):
            raise ValueError("system JSON must be an object")
        for key in ("dim", "constants"):
            if key not in data:
                raise ValueError(f"system JSON is missing field {key!r}")
        dim = data["dim"]
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ValueError("field 'dim' must be a positive integer")
        constants = {}
        for n, entry in enumerate(data["constants"]):
            try:
                key = (entry["i"], entry["j"], entry["k"])
                value = tuple(Scalar.from_json(x) for x in entry["value"])
            except (KeyError, TypeError) as exc:
                raise ValueError(f"constants[{n}]: malformed entry ({exc})") from None
            except ValueError as exc:
                raise ValueError(f"constants[{n}].value: {exc}") from None
            if not all(isinstance(t, int) and not isinstance(t, bool) for t in key):
                raise ValueError(f"constants[{n}]: indices must be integers")
            if len(value) != dim:
                raise ValueError(f"constants[{n}].value: length {len(value)}, expected {dim}")
            if key in constants:
                raise ValueError(f"constants[{n}]: duplicate index triple {key}")
            constants[key] = value
        try:
            return cls(dim, constants, str(data.get("label", "")))
        except IndexError as exc:
            raise ValueError(str(exc)) from None


def to_sparse(v: Vector) -> Sparse:
    return {i: x for i, x in enumerate(v) if x}


def from_product_oracle(dim: int, trilinear_fn: Callable[[Vector, Vector, Vector], Vector], label: str = "") -> TripleSystem:
    """Tabulate a trilinear map on all basis triples.

    If ``trilinear_fn`` has an ``on_basis(i, j, k)`` method returning a sparse
    ``{l: Scalar}`` map, that shortcut is used instead of dense evaluation.
    """
    on_basis = getattr(trilinear_fn, "on_basis", None)
    if on_basis is not None:
        table = {}
        for key in cartesian(range(dim), repeat=3):
            value = on_basis(*key)
            if value:
                table[key] = value
        return TripleSystem(dim, table, label)
    basis = [unit_vector(dim, i) for i in range(dim)]
    constants = {}
    for i, j, k in cartesian(range(dim), repeat=3):
        value = tuple(trilinear_fn(basis[i], basis[j], basis[k]))
        if len(value) != dim:
            raise DimensionMismatch(f"product returned length {len(value)}, expected {dim}")
        if any(value):
            constants[(i, j, k)] = value
    return TripleSystem(dim, constants, label)


def zero_system(dim: int, label: str = "zero") -> TripleSystem:
    return TripleSystem(dim, {}, label)

