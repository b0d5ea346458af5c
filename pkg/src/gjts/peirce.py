"""Operators attached to a tripotent and the ten-component Peirce decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field

from .labels import (
    EIGEN_PAIRS,
    LABEL_ORDER,
    U11M,
    U11P,
    U13M,
    U13P,
    U_32_32,
    U_HALF_2,
    WEAK_VANISHING,
    ComponentLabel,
)
from .linalg import (
    DirectSumReport,
    Matrix,
    Subspace,
    Vector,
    assert_direct_sum,
    image,
    kernel,
    sub,
)
from .scalar import SQRT3
from .triple import TripleSystem

__all__ = [
    "NotATripotent",
    "DecompositionError",
    "TripotentContext",
    "RelationResult",
    "PeirceDecomposition",
    "ClassifyReport",
    "make_context",
    "check_operator_relations",
    "peirce_decompose",
    "classify",
    "BASE_RELATIONS",
    "WEAK_RELATIONS",
    "check_invariants",
    "relation_residual",
]


class NotATripotent(ValueError):
    def __init__(self, residual: Vector) -> None:
        self.residual = residual
        super().__init__(f"(eee) - e is nonzero in {sum(1 for x in residual if x)} coordinates")


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class TripotentContext:
    system: TripleSystem
    e: Vector
    L: Matrix
    R: Matrix
    Q: Matrix


def make_context(s: TripleSystem, e: Vector) -> TripotentContext:
    e = tuple(e)
    if len(e) != s.dim:
        raise ValueError(f"tripotent has length {len(e)}, system dimension is {s.dim}")
    residual = sub(s.product(e, e, e), e)
    if any(residual):
        raise NotATripotent(residual)
    L = s.operator(2, (e, e))
    R = s.operator(0, (e, e))
    Q = s.operator(1, (e, e))
    return TripotentContext(s, e, L, R, Q)


# -- operator relations --------------------------------------------------------

BASE_RELATIONS = ("1.4", "1.5", "1.6", "1.7", "1.8", "1.8'")
WEAK_RELATIONS = ("1.42", "1.43")


@dataclass(frozen=True)
class RelationResult:
    name: str
    formula: str
    holds: bool
    residual_nonzeros: int
    needs_weak_commutativity: bool


def _relation_matrices(ctx: TripotentContext) -> dict[str, tuple[str, Matrix]]:
    L, R, Q = ctx.L, ctx.R, ctx.Q
    I = Matrix.identity(L.rows)
    R_L = R - L
    R_2L_1 = R - 2 * L - I
    return {
        "1.4": ("R^2 - Q^2 + LR - R = 0", R @ R - Q @ Q + L @ R - R),
        "1.5": ("RQ - QR + LQ - Q = 0", R @ Q - Q @ R + L @ Q - Q),
        "1.6": ("LR = RL", L @ R - R @ L),
        "1.7": ("LQ + QL - 2Q = 0", L @ Q + Q @ L - 2 * Q),
        "1.8": ("(R - 2L - 1)(R - L) = 0", R_2L_1 @ R_L),
        "1.8'": ("(R - L)(R - 2L - 1) = 0", R_L @ R_2L_1),
        "1.42": ("(R - L)(R + Q + L - 1) = 0", R_L @ (R + Q + L - I)),
        "1.43": ("(R - L)Q = -3(R - L)L", R_L @ Q + 3 * (R_L @ L)),
    }


def check_operator_relations(ctx: TripotentContext) -> dict[str, RelationResult]:
    """Evaluate every operator relation as an exact matrix identity."""
    out = {}
    for name, (formula, m) in _relation_matrices(ctx).items():
        nz = m.nonzero_count()
        out[name] = RelationResult(name, formula, nz == 0, nz, name in WEAK_RELATIONS)
    return out


def relation_residual(ctx: TripotentContext, name: str) -> Matrix:
    return _relation_matrices(ctx)[name][1]


# -- decomposition -------------------------------------------------------------


def _restricted_kernel(space: Subspace, op: Matrix) -> Subspace:
    """Vectors of ``space`` killed by ``op``."""
    if space.dim == 0:
        return space
    B = space.basis_matrix()
    coeffs = kernel(op @ B)
    return Subspace.span([B.apply(c) for c in coeffs.basis], space.ambient_dim)


@dataclass(frozen=True)
class PeirceDecomposition:
    context: TripotentContext
    components: dict = field(default_factory=dict)  # ComponentLabel -> Subspace
    tau_matrix: Matrix | None = None
    tau_inverse: Matrix | None = None
    direct_sum: DirectSumReport | None = None

    def dims(self) -> dict:
        return {lab: self.components[lab].dim for lab in LABEL_ORDER}

    def nonzero(self) -> list[ComponentLabel]:
        return [lab for lab in LABEL_ORDER if self.components[lab].dim]

    def __getitem__(self, label) -> Subspace:
        return self.components[ComponentLabel(*label)]


def peirce_decompose(ctx: TripotentContext) -> PeirceDecomposition:
    """Split the space into the ten Peirce components of the tripotent.

    Raises :class:`DecompositionError` when the components do not fill the
    space or ``Q`` acts outside the allowed pattern; both mean the input is not
    a tripotent of a system satisfying the defining identities.
    """
    L, R, Q = ctx.L, ctx.R, ctx.Q
    n = L.rows

    eigen = {}
    by_lambda = {}
    for lam, mu in EIGEN_PAIRS:
        if lam not in by_lambda:
            by_lambda[lam] = kernel(L.shift(lam))
        eigen[(lam, mu)] = _restricted_kernel(by_lambda[lam], R.shift(mu))

    comps: dict = {}
    for lab in LABEL_ORDER:
        base = eigen[(lab.lam, lab.mu)]
        if lab.sign is None:
            comps[lab] = base
        else:
            q = lab.mu if lab.sign == "+" else -lab.mu
            comps[lab] = _restricted_kernel(base, Q.shift(q))

    report = assert_direct_sum([comps[lab] for lab in LABEL_ORDER], n)
    if not report.ok:
        raise DecompositionError(report.message)

    for lab in LABEL_ORDER:
        if lab.sign is None and lab not in (U_32_32, U_HALF_2):
            for v in comps[lab].basis:
                if any(Q.apply(v)):
                    raise DecompositionError(f"Q does not vanish on {lab.name}")

    src, dst = comps[U_32_32], comps[U_HALF_2]
    if src.dim != dst.dim:
        raise DecompositionError(f"dim {U_32_32.name} = {src.dim} but dim {U_HALF_2.name} = {dst.dim}")
    tau = tau_inv = None
    if src.dim:
        inv_sqrt3 = SQRT3.inverse()
        try:
            tau = Matrix.from_columns([dst.coordinates(tuple(inv_sqrt3 * x for x in Q.apply(v))) for v in src.basis])
            tau_inv = Matrix.from_columns([src.coordinates(tuple(inv_sqrt3 * x for x in Q.apply(v))) for v in dst.basis])
        except ValueError:
            raise DecompositionError("Q does not exchange the 3/2 and 1/2,2 components") from None
        ident = Matrix.identity(src.dim)
        if tau_inv @ tau != ident or tau @ tau_inv != ident:
            raise DecompositionError("the correspondence Q/sqrt3 is not an involution on the pair")
    else:
        tau = tau_inv = Matrix.zeros(0, 0)
    return PeirceDecomposition(ctx, comps, tau, tau_inv, report)


# -- classification --------------------------------------------------------------


@dataclass(frozen=True)
class ClassifyReport:
    nonzero: list
    weakly_commutative: bool
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def classify(d: PeirceDecomposition, weakly_commutative: bool) -> ClassifyReport:
    """List the nonzero components; for weakly commutative systems flag any of
    the four components that must vanish but do not."""
    nonzero = [(lab, d.components[lab].dim) for lab in d.nonzero()]
    violations = []
    if weakly_commutative:
        violations = [lab for lab in WEAK_VANISHING if d.components[lab].dim]
    return ClassifyReport(nonzero, weakly_commutative, violations)


# -- invariant helpers used by reports and tests --------------------------------


def q_square_factor(label: ComponentLabel) -> int | None:
    """The scalar by which Q^2 acts on a component, if Q preserves it."""
    if label in (U11P, U11M):
        return 1
    if label in (U13P, U13M):
        return 9
    if label in (U_32_32, U_HALF_2):
        return 3
    return 0


def minus_one_eigenspace(ctx: TripotentContext) -> Subspace:
    return kernel(ctx.L.shift(-1))


def split_images(ctx: TripotentContext) -> dict[str, tuple[Subspace, Subspace]]:
    """``(image, kernel)`` pairs for ``R - 2L - 1`` into ``R = L`` and ``R - L`` into ``R = 2L + 1``."""
    I = Matrix.identity(ctx.L.rows)
    A = ctx.R - 2 * ctx.L - I
    B = ctx.R - ctx.L
    return {"R=L": (image(A), kernel(B)), "R=2L+1": (image(B), kernel(A))}



def check_invariants(d: PeirceDecomposition) -> dict[str, bool]:
    """Exact checks of the structural facts every decomposition must satisfy."""
    ctx = d.context
    L, R, Q = ctx.L, ctx.R, ctx.Q
    n = L.rows
    eigen = True
    q_action = True
    for lab in LABEL_ORDER:
        comp = d.components[lab]
        Lm, Rm = L.shift(lab.lam), R.shift(lab.mu)
        f = q_square_factor(lab)
        Q2 = (Q @ Q).shift(f)
        for v in comp.basis:
            if any(Lm.apply(v)) or any(Rm.apply(v)):
                eigen = False
            if any(Q2.apply(v)):
                q_action = False
            if lab.sign is not None:
                q = lab.mu if lab.sign == "+" else -lab.mu
                if any(Q.shift(q).apply(v)):
                    q_action = False
            elif f == 0 and any(Q.apply(v)):
                q_action = False
    tau_ok = (d.tau_inverse @ d.tau_matrix).is_identity() if d.tau_matrix.rows else True
    splits = split_images(ctx)
    split_ok = all(img.dim == ker.dim and all(ker.contains(v) for v in img.basis) for img, ker in splits.values())
    return {
        "eigenvalues": eigen,
        "q_action": q_action,
        "no_minus_one": minus_one_eigenspace(ctx).dim == 0,
        "tau_bijection": tau_ok and d.components[U_32_32].dim == d.components[U_HALF_2].dim,
        "direct_sum": d.direct_sum.ok and d.direct_sum.rank == n,
        "image_kernel_split": split_ok,
    }
