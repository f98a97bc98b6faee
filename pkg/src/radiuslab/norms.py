"""Pluggable matrix norms with the metadata the inequality checkers need.

A NormSpec bundles an evaluator with declared properties (self-adjoint,
algebra/submultiplicative, weakly unitarily invariant) and, where known in
closed form, the supremum of the norm over the unitary group per dimension.
Flags are declarations, not runtime branches: `validate_norm` audits each
declared flag on seeded random matrices and a flag failure is a test
failure.  The unitary supremum is a closed-form constant rather than an
online optimization because sampling the unitary group can only produce
lower bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .matcore import adjoint, frobenius_norm, singular_values, spectral_norm, spectral_norm_many
from .ensembles import EnsembleSpec, generate


@dataclass(frozen=True)
class NormSpec:
    """A norm on square complex matrices plus its declared properties.

    evaluate must be pure; evaluate_many, when given, must agree with
    evaluate on every slice of a stacked input (it exists so optimizers can
    batch their grid stages).  unitary_sup maps a dimension to
    sup { N(U) : U unitary } or is None when no closed form is known.
    `even` declares N(-A) == N(A), which lets the radius optimizers halve
    their search period; it is never assumed for norms that do not set it.
    """

    id: str
    evaluate: Callable[[np.ndarray], float]
    self_adjoint: bool
    algebra: bool
    weakly_unitarily_invariant: bool
    unitary_sup: Optional[Callable[[int], float]] = None
    evaluate_many: Optional[Callable[[np.ndarray], np.ndarray]] = None
    even: bool = False


class UnknownNormId(ValueError):
    """A norm id string is not understood by the registry."""


def operator_norm_spec() -> NormSpec:
    """The usual operator norm: largest singular value."""
    return NormSpec(
        id="op",
        evaluate=spectral_norm,
        self_adjoint=True,
        algebra=True,
        weakly_unitarily_invariant=True,
        unitary_sup=lambda n: 1.0,
        evaluate_many=spectral_norm_many,
        even=True,
    )


def schatten_norm_spec(p: float) -> NormSpec:
    """Schatten p-norm (sum of singular values to the p), p >= 1 or inf.

    p = 2 is the Frobenius / Hilbert-Schmidt norm; p = inf collapses to the
    operator norm.  sup over unitaries is n^(1/p) since every unitary has
    all singular values equal to 1.
    """
    if not (p >= 1.0):
        raise ValueError(f"Schatten norms need p >= 1, got {p}")
    if math.isinf(p):
        spec = operator_norm_spec()
        return replace(spec, id="schatten:inf")

    if p == 2.0:
        def evaluate(a) -> float:
            return frobenius_norm(a)

        def evaluate_many(stack):
            arr = np.asarray(stack, dtype=np.complex128)
            return np.sqrt(np.sum(np.abs(arr) ** 2, axis=(-2, -1)))
    else:
        def evaluate(a) -> float:
            sv = singular_values(a)
            return float(np.sum(sv ** p) ** (1.0 / p))

        def evaluate_many(stack):
            arr = np.asarray(stack, dtype=np.complex128)
            gram = np.matmul(np.conj(np.swapaxes(arr, -2, -1)), arr)
            lam = np.maximum(np.linalg.eigvalsh(gram), 0.0)
            return np.sum(lam ** (p / 2.0), axis=-1) ** (1.0 / p)

    return NormSpec(
        id=f"schatten:{p:g}",
        evaluate=evaluate,
        self_adjoint=True,
        algebra=True,
        weakly_unitarily_invariant=True,
        unitary_sup=lambda n: float(n) ** (1.0 / p),
        evaluate_many=evaluate_many,
        even=True,
    )


def frobenius_norm_spec() -> NormSpec:
    return schatten_norm_spec(2.0)


def numerical_radius_norm_spec(*, grid: int = 720, refine_tol: float = 1e-10,
                               top_brackets: int = 5) -> NormSpec:
    """The numerical radius w as a norm.

    Self-adjoint and weakly unitarily invariant, but NOT an algebra norm:
    w(TS) <= w(T) w(S) fails in general (nilpotent pairs witness it), only
    the factor-4 chain holds.  w(U) = 1 for every unitary U (unitaries are
    normal), so the unitary supremum is 1.
    """
    def evaluate(a) -> float:
        from .radius import numerical_radius

        return numerical_radius(a, grid=grid, refine_tol=refine_tol,
                                top_brackets=top_brackets).value

    return NormSpec(
        id="wnum",
        evaluate=evaluate,
        self_adjoint=True,
        algebra=False,
        weakly_unitarily_invariant=True,
        unitary_sup=lambda n: 1.0,
        even=True,
    )


def omega_norm_spec(*, grid_s: int = 96, grid_psi: int = 192,
                    refine_tol: float = 1e-9, top_cells: int = 5) -> NormSpec:
    """The Omega norm: sup of ||zeta T + eta T*|| over the coefficient ball.

    Self-adjoint and weakly unitarily invariant (conjugation commutes with
    the coefficient combination); not declared an algebra norm.  Every
    unitary attains Omega(U) = sqrt(2): choosing zeta = 1/sqrt(2),
    eta = conj(mu)/sqrt(2) for an eigenvalue mu of U*^2 puts the combination
    at modulus sqrt(2) on the corresponding eigenvector.
    """
    def evaluate(a) -> float:
        from .radius import omega_norm

        return omega_norm(a, grid_s=grid_s, grid_psi=grid_psi,
                          refine_tol=refine_tol, top_cells=top_cells).value

    return NormSpec(
        id="omega",
        evaluate=evaluate,
        self_adjoint=True,
        algebra=False,
        weakly_unitarily_invariant=True,
        unitary_sup=lambda n: math.sqrt(2.0),
        even=True,
    )


def registry() -> dict[str, NormSpec]:
    """The norms shipped with the CLI, keyed by id."""
    specs = [
        operator_norm_spec(),
        schatten_norm_spec(1.0),
        schatten_norm_spec(2.0),
        numerical_radius_norm_spec(),
        omega_norm_spec(),
    ]
    return {spec.id: spec for spec in specs}


def parse_norm_id(text: str) -> NormSpec:
    """Resolve a norm id: 'op', 'schatten:p' (p decimal or 'inf'), 'wnum',
    'omega'."""
    if text == "op":
        return operator_norm_spec()
    if text == "wnum":
        return numerical_radius_norm_spec()
    if text == "omega":
        return omega_norm_spec()
    if text.startswith("schatten:"):
        arg = text.split(":", 1)[1]
        if arg == "inf":
            return schatten_norm_spec(math.inf)
        try:
            p = float(arg)
        except ValueError:
            raise UnknownNormId(f"norm id {text!r}: p is not a number") from None
        if not (p >= 1.0):
            raise UnknownNormId(f"norm id {text!r}: Schatten p must be >= 1")
        return schatten_norm_spec(p)
    raise UnknownNormId(
        f"norm id {text!r} not understood (known: op, schatten:p, wnum, omega)"
    )


@dataclass(frozen=True)
class AxiomAudit:
    """Worst violation observed for one axiom or declared flag."""

    name: str
    worst: float
    tolerance: float
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class NormValidation:
    """validate_norm output: per-axiom audits plus any submultiplicativity
    witness found for norms that do not claim the algebra property."""

    norm_id: str
    dim: int
    trials: int
    seed: int
    audits: tuple[AxiomAudit, ...] = field(default_factory=tuple)
    algebra_witness: str = ""
    passed: bool = True


_E12 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)


def validate_norm(spec: NormSpec, dim: int, trials: int, seed: int) -> NormValidation:
    """Audit the norm axioms and every declared flag on seeded matrices.

    Tolerances (relative to max(1, scale of the quantities involved)):
    zero and homogeneity and self-adjointness 1e-12, triangle and algebra
    and weak unitary invariance 1e-10.  For norms with algebra=False a
    witness search additionally tries to exhibit a submultiplicativity
    violation (the nilpotent pair E12, E21 plus the random pairs); finding
    one confirms the flag and is reported, not failed.
    """
    N = spec.evaluate
    worst = {
        "zero": 0.0, "homogeneity": 0.0, "triangle": 0.0,
        "self_adjoint": 0.0, "algebra": 0.0, "weak_unitary_invariance": 0.0,
    }
    witness = {key: "" for key in worst}

    def note(key: str, violation: float, label: str) -> None:
        if violation > worst[key]:
            worst[key] = violation
            witness[key] = label

    note("zero", abs(N(np.zeros((dim, dim), dtype=np.complex128))), "zero matrix")

    algebra_witness = ""
    if not spec.algebra and dim >= 2:
        a = np.zeros((dim, dim), dtype=np.complex128)
        a[:2, :2] = _E12
        b = adjoint(a)
        gap = N(a @ b) - N(a) * N(b)
        if gap > 1e-8:
            algebra_witness = f"nilpotent pair E12/E21 (gap {gap:.6g})"

    for t in range(trials):
        s = seed + t
        a = generate(EnsembleSpec("ginibre", dim, s))
        b = generate(EnsembleSpec("ginibre", dim, s + 0x10000000))
        u = generate(EnsembleSpec("haar_unitary", dim, s + 0x20000000))
        na, nb = N(a), N(b)

        c = complex(generate(EnsembleSpec("ginibre", 1, s + 0x30000000))[0, 0])
        note("homogeneity", abs(N(c * a) - abs(c) * na) / max(1.0, abs(c) * na),
             f"seed {s}")
        note("triangle", (N(a + b) - (na + nb)) / max(1.0, na + nb), f"seed {s}")
        if spec.self_adjoint:
            note("self_adjoint", abs(N(adjoint(a)) - na) / max(1.0, na), f"seed {s}")
        if spec.algebra:
            note("algebra", (N(a @ b) - na * nb) / max(1.0, na * nb), f"seed {s}")
        elif not algebra_witness:
            gap = N(a @ b) - na * nb
            if gap > 1e-8 * max(1.0, na * nb):
                algebra_witness = f"seed {s} (gap {gap:.6g})"
        if spec.weakly_unitarily_invariant:
            note("weak_unitary_invariance",
                 abs(N(adjoint(u) @ a @ u) - na) / max(1.0, na), f"seed {s}")

    tolerances = {
        "zero": 1e-12, "homogeneity": 1e-12, "triangle": 1e-10,
        "self_adjoint": 1e-12, "algebra": 1e-10, "weak_unitary_invariance": 1e-10,
    }
    applicable = ["zero", "homogeneity", "triangle"]
    if spec.self_adjoint:
        applicable.append("self_adjoint")
    if spec.algebra:
        applicable.append("algebra")
    if spec.weakly_unitarily_invariant:
        applicable.append("weak_unitary_invariance")
    audits = tuple(
        AxiomAudit(name=key, worst=worst[key], tolerance=tolerances[key],
                   passed=worst[key] <= tolerances[key], witness=witness[key])
        for key in applicable
    )
    return NormValidation(
        norm_id=spec.id, dim=dim, trials=trials, seed=seed, audits=audits,
        algebra_witness=algebra_witness,
        passed=all(a.passed for a in audits),
    )
