"""One checkable predicate per radius/norm inequality, plus a suite runner.

Every check computes both sides of its inequality (or chain of
inequalities) on concrete matrices and returns an InequalityReport.  The
report normalizes by max(1, scale), where scale is the largest norm
appearing in the check, so that optimizer error never produces false
violations and so that `holds` is invariant under rescaling the inputs of
a homogeneous check.  For chains, the binding (smallest-slack) comparison
becomes the headline lhs/rhs and every individual slack lands in `terms`.

Checks whose hypotheses fail (missing norm flags, inputs outside the unit
ball, a pair that does not commute) raise a CheckInapplicable subclass;
the suite runner turns those into "inapplicable" records, never passes.

The sup/inf over a rotation angle that several bounds need reuses the same
grid + golden-section machinery as the radius optimizers, keeping error
budgets uniform across the package.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .matcore import (
    adjoint,
    as_matrix,
    cayley_unitary,
    frobenius_norm,
    hermitian_defect,
    im_part,
    re_part,
    spectral_norm,
)
from .ensembles import (
    PAIR_KINDS,
    EnsembleSpec,
    ensemble_id,
    generate,
    generate_pair,
)
from .norms import NormSpec, registry
from .radius import (
    generalized_radius,
    maximize_on_circle,
    minimize_on_circle,
    numerical_radius,
    omega_norm,
    omega_radius_slow,
)

_SQRT2 = math.sqrt(2.0)
_TWO_PI = 2.0 * math.pi


class CheckInapplicable(Exception):
    """The check's hypotheses do not hold for these inputs; not a failure."""


class RequiresAlgebraNorm(CheckInapplicable):
    """The bound is only proved for submultiplicative norms."""


class RequiresFlags(CheckInapplicable):
    """The norm lacks a declared property (or unitary supremum) the bound needs."""


class RequiresContraction(CheckInapplicable):
    """An input must lie in the operator-norm unit ball."""


class RequiresCommutation(CheckInapplicable):
    """The pair neither commutes nor anticommutes within tolerance."""


class RequiresStructure(CheckInapplicable):
    """A structural hypothesis (normality, T^2 = 0, self-adjointness) fails."""


@dataclass(frozen=True)
class CheckOpts:
    """Optimizer settings shared by the checks."""

    grid: int = 720
    refine_tol: float = 1e-10
    top_brackets: int = 5
    omega_grid_s: int = 96
    omega_grid_psi: int = 192
    omega_refine_tol: float = 1e-9
    omega_top_cells: int = 5


DEFAULT_OPTS = CheckOpts()
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class SupOverPhi:
    """An extremum over the rotation angle: value, maximizer, and the grid /
    refinement settings that produced it."""

    value: float
    argmax_phi: float
    grid: int
    refine_tol: float


@dataclass(frozen=True)
class InequalityReport:
    """One checked inequality instance.

    lhs, rhs and slack are normalized by max(1, scale); slack == rhs - lhs
    and holds == (slack >= -tolerance), exactly.  `terms` carries every
    intermediate (raw values, per-link slacks, the scale) and is a pure
    function of the inputs and options.
    """

    name: str
    paper_tag: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    tolerance: float
    terms: dict
    input_digest: str


def _digest(arrays: Sequence[np.ndarray], extra: str = "") -> str:
    h = hashlib.sha256()
    for a in arrays:
        arr = np.ascontiguousarray(np.asarray(a, dtype=np.complex128))
        h.update(repr(arr.shape).encode())
        h.update(arr.tobytes())
    h.update(extra.encode())
    return h.hexdigest()[:16]


def _report(name: str, tag: str, comparisons, scale: float, tol: float,
            terms: dict, digest: str) -> InequalityReport:
    """Assemble a report from raw (label, lhs, rhs) comparisons."""
    denom = max(1.0, float(scale))
    best = None
    out_terms = {k: float(v) for k, v in terms.items()}
    raw_min = math.inf
    for label, lhs, rhs in comparisons:
        lhs_n, rhs_n = float(lhs) / denom, float(rhs) / denom
        s = rhs_n - lhs_n
        out_terms[f"slack[{label}]"] = s
        raw_min = min(raw_min, float(rhs) - float(lhs))
        if best is None or s < best[0]:
            best = (s, lhs_n, rhs_n)
    slack, lhs_n, rhs_n = best
    out_terms["scale"] = float(scale)
    out_terms["raw_slack_min"] = raw_min
    return InequalityReport(
        name=name, paper_tag=tag,
        lhs=lhs_n, rhs=rhs_n, slack=slack,
        holds=bool(slack >= -tol), tolerance=float(tol),
        terms=out_terms, input_digest=digest,
    )


def _w(arr, opts: CheckOpts) -> float:
    return numerical_radius(arr, grid=opts.grid, refine_tol=opts.refine_tol,
                            top_brackets=opts.top_brackets).value


def _wn(arr, norm: NormSpec, opts: CheckOpts) -> float:
    return generalized_radius(arr, norm, grid=opts.grid, refine_tol=opts.refine_tol,
                              top_brackets=opts.top_brackets).value


def _omega(arr, opts: CheckOpts) -> float:
    return omega_norm(arr, grid_s=opts.omega_grid_s, grid_psi=opts.omega_grid_psi,
                      refine_tol=opts.omega_refine_tol,
                      top_cells=opts.omega_top_cells).value


def _cartesian_frames(arr, norm: NormSpec):
    """Batched evaluators of N(Re(e^{i phi} T)) and N(Im(e^{i phi} T))."""
    re, im = re_part(arr), im_part(arr)

    def parts(phi: float):
        c, s = math.cos(phi), math.sin(phi)
        return c * re - s * im, s * re + c * im

    def parts_many(phis):
        c, s = np.cos(phis), np.sin(phis)
        res = c[:, None, None] * re - s[:, None, None] * im
        ims = s[:, None, None] * re + c[:, None, None] * im
        return res, ims

    return re, im, parts, parts_many


def check_basic_bounds(T, *, opts: CheckOpts = DEFAULT_OPTS,
                       tol: float = DEFAULT_TOL) -> InequalityReport:
    """||T||/2 <= w(T) <= ||T||, the two-sided norm equivalence.

    The left side is sharp on square-zero inputs, the right side on normal
    ones.
    """
    arr = as_matrix(T, square=True)
    w = _w(arr, opts)
    nrm = spectral_norm(arr)
    comparisons = [("lower", 0.5 * nrm, w), ("upper", w, nrm)]
    terms = {"w": w, "operator_norm": nrm}
    return _report("basic", "radius-norm-equivalence", comparisons, nrm, tol,
                   terms, _digest([arr]))


def check_kittaneh(T, *, opts: CheckOpts = DEFAULT_OPTS,
                   tol: float = DEFAULT_TOL) -> InequalityReport:
    """Kittaneh's refinement w(T) <= sqrt(||T T* + T* T||) / sqrt(2)."""
    arr = as_matrix(T, square=True)
    w = _w(arr, opts)
    bound = math.sqrt(spectral_norm(arr @ adjoint(arr) + adjoint(arr) @ arr)) / _SQRT2
    terms = {"w": w, "bound": bound}
    return _report("kittaneh", "kittaneh-sqrt-refinement", [("upper", w, bound)],
                   max(w, bound), tol, terms, _digest([arr]))


def check_dragomir(T, *, opts: CheckOpts = DEFAULT_OPTS,
                   tol: float = DEFAULT_TOL) -> InequalityReport:
    """Dragomir's Buzano-based refinement
    w(T) <= sqrt(||T||^2 + w(T^2)) / sqrt(2)."""
    arr = as_matrix(T, square=True)
    w = _w(arr, opts)
    w_sq = _w(arr @ arr, opts)
    bound = math.sqrt(spectral_norm(arr) ** 2 + w_sq) / _SQRT2
    terms = {"w": w, "w_of_square": w_sq, "bound": bound}
    return _report("dragomir", "dragomir-buzano-refinement", [("upper", w, bound)],
                   max(w, bound), tol, terms, _digest([arr]))


def check_inf_upper(T, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                    tol: float = DEFAULT_TOL) -> InequalityReport:
    """The Cauchy-Schwarz upper bound
    w_N(T) <= inf_phi sqrt(N^2(Re(e^{i phi}T)) + N^2(Im(e^{i phi}T))),
    reported together with its coarsenings at phi = 0:
    inf <= sqrt(N^2(Re T) + N^2(Im T)) <= N(Re T) + N(Im T)."""
    arr = as_matrix(T, square=True)
    w_n = _wn(arr, norm, opts)
    re, im, parts, parts_many = _cartesian_frames(arr, norm)

    def h(phi: float) -> float:
        a, b = parts(phi)
        return math.hypot(norm.evaluate(a), norm.evaluate(b))

    h_many = None
    if norm.evaluate_many is not None:
        def h_many(phis):
            res, ims = parts_many(phis)
            return np.hypot(np.asarray(norm.evaluate_many(res), dtype=float),
                            np.asarray(norm.evaluate_many(ims), dtype=float))

    period = math.pi if norm.even else _TWO_PI
    points = max(8, opts.grid // 2 if norm.even else opts.grid)
    phi, inf_v, _, _ = minimize_on_circle(h, period, points, opts.refine_tol,
                                          opts.top_brackets, h_many)
    extremum = SupOverPhi(value=float(inf_v), argmax_phi=float(phi % _TWO_PI),
                          grid=points, refine_tol=opts.refine_tol)
    n_re, n_im = norm.evaluate(re), norm.evaluate(im)
    mid1 = math.hypot(n_re, n_im)
    mid2 = n_re + n_im
    comparisons = [("main", w_n, extremum.value), ("inf-vs-phi0", extremum.value, mid1),
                   ("quadratic-vs-sum", mid1, mid2)]
    terms = {"w_N": w_n, "inf": extremum.value, "inf_argmin_phi": extremum.argmax_phi,
             "re_norm": n_re, "im_norm": n_im, "sqrt_sum_sq": mid1, "sum": mid2}
    return _report("inf-upper", "cauchy-schwarz-inf-upper", comparisons,
                   max(w_n, mid2), tol, terms, _digest([arr], norm.id))


def check_lower_bound(T, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                      tol: float = DEFAULT_TOL) -> InequalityReport:
    """The algebra-norm lower bound
    N(TT* + T*T)/4 + sup_phi |N^2(Re(e^{i phi}T)) - N^2(Im(e^{i phi}T))|/2
    <= w_N(T)^2, together with the weaker N(TT* + T*T)/4 <= w_N(T)^2."""
    if not norm.algebra:
        raise RequiresAlgebraNorm(f"norm {norm.id!r} does not declare the algebra flag")
    arr = as_matrix(T, square=True)
    w_n = _wn(arr, norm, opts)
    _, _, parts, parts_many = _cartesian_frames(arr, norm)

    def d(phi: float) -> float:
        a, b = parts(phi)
        return abs(norm.evaluate(a) ** 2 - norm.evaluate(b) ** 2)

    d_many = None
    if norm.evaluate_many is not None:
        def d_many(phis):
            res, ims = parts_many(phis)
            na = np.asarray(norm.evaluate_many(res), dtype=float)
            nb = np.asarray(norm.evaluate_many(ims), dtype=float)
            return np.abs(na ** 2 - nb ** 2)

    period = math.pi if norm.even else _TWO_PI
    points = max(8, opts.grid // 2 if norm.even else opts.grid)
    phi, sup_v, _, _ = maximize_on_circle(d, period, points, opts.refine_tol,
                                          opts.top_brackets, d_many)
    extremum = SupOverPhi(value=float(sup_v), argmax_phi=float(phi % _TWO_PI),
                          grid=points, refine_tol=opts.refine_tol)
    quarter = norm.evaluate(arr @ adjoint(arr) + adjoint(arr) @ arr) / 4.0
    lhs = quarter + 0.5 * extremum.value
    rhs = w_n ** 2
    comparisons = [("refined", lhs, rhs), ("quarter-only", quarter, rhs)]
    terms = {"w_N": w_n, "quarter_term": quarter, "sup_difference": extremum.value,
             "sup_argmax_phi": extremum.argmax_phi}
    return _report("lower-bound", "algebra-lower-bound", comparisons,
                   max(lhs, rhs), tol, terms, _digest([arr], norm.id))


def _require_flags(norm: NormSpec, *, self_adjoint=False, algebra=False,
                   unitary_invariant=False, unitary_sup=False) -> None:
    missing = []
    if self_adjoint and not norm.self_adjoint:
        missing.append("self_adjoint")
    if algebra and not norm.algebra:
        missing.append("algebra")
    if unitary_invariant and not norm.weakly_unitarily_invariant:
        missing.append("weakly_unitarily_invariant")
    if unitary_sup and norm.unitary_sup is None:
        missing.append("unitary_sup")
    if missing:
        raise RequiresFlags(f"norm {norm.id!r} lacks: {', '.join(missing)}")


def check_norm_chain(T, S, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                     tol: float = DEFAULT_TOL) -> InequalityReport:
    """For a self-adjoint algebra norm, the four-link product chain
    w_N(TS) <= N(TS) <= N(T) N(S) <= 2 N(T) w_N(S) <= 4 w_N(T) w_N(S)."""
    _require_flags(norm, self_adjoint=True, algebra=True)
    t = as_matrix(T, square=True)
    s = as_matrix(S, square=True)
    ts = t @ s
    w_ts = _wn(ts, norm, opts)
    n_ts = norm.evaluate(ts)
    n_t, n_s = norm.evaluate(t), norm.evaluate(s)
    w_s = _wn(s, norm, opts)
    w_t = _wn(t, norm, opts)
    vals = [w_ts, n_ts, n_t * n_s, 2.0 * n_t * w_s, 4.0 * w_t * w_s]
    labels = ["radius-vs-norm", "submultiplicative", "half-bound", "quarter-bound"]
    comparisons = [(labels[i], vals[i], vals[i + 1]) for i in range(4)]
    terms = {"w_N_TS": w_ts, "N_TS": n_ts, "N_T": n_t, "N_S": n_s,
             "w_N_T": w_t, "w_N_S": w_s}
    return _report("norm-chain", "norm-radius-product-chain", comparisons,
                   max(vals), tol, terms, _digest([t, s], norm.id))


def check_commutator(T, S, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                     tol: float = DEFAULT_TOL) -> InequalityReport:
    """For an algebra norm, w_N(TS +/- ST*) <= w_N(S) (N(T) + N(T*));
    for a self-adjoint algebra norm also <= 2 w_N(S) N(T)."""
    if not norm.algebra:
        raise RequiresAlgebraNorm(f"norm {norm.id!r} does not declare the algebra flag")
    t = as_matrix(T, square=True)
    s = as_matrix(S, square=True)
    if t.shape != s.shape:
        raise ValueError("T and S must have the same shape")
    w_s = _wn(s, norm, opts)
    rhs = w_s * (norm.evaluate(t) + norm.evaluate(adjoint(t)))
    lhs_plus = _wn(t @ s + s @ adjoint(t), norm, opts)
    lhs_minus = _wn(t @ s - s @ adjoint(t), norm, opts)
    comparisons = [("plus", lhs_plus, rhs), ("minus", lhs_minus, rhs)]
    terms = {"w_N_S": w_s, "rhs": rhs, "lhs_plus": lhs_plus, "lhs_minus": lhs_minus}
    if norm.self_adjoint:
        rhs_sa = 2.0 * w_s * norm.evaluate(t)
        comparisons += [("plus-self-adjoint", lhs_plus, rhs_sa),
                        ("minus-self-adjoint", lhs_minus, rhs_sa)]
        terms["rhs_self_adjoint"] = rhs_sa
    return _report("commutator", "commutator-product-bound", comparisons,
                   max(lhs_plus, lhs_minus, rhs), tol, terms,
                   _digest([t, s], norm.id))


def _require_hermitian_contraction(arr, what: str) -> np.ndarray:
    scale = max(1.0, frobenius_norm(arr))
    if hermitian_defect(arr) > 1e-8 * scale:
        raise RequiresStructure(f"{what} is not Hermitian within tolerance")
    h = (arr + adjoint(arr)) / 2
    top = spectral_norm(h)
    if top > 1.0 + 1e-9:
        raise RequiresContraction(f"{what} has spectral norm {top:.12g} > 1")
    return h


def check_unitary_commutator(T, S, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                             tol: float = DEFAULT_TOL) -> InequalityReport:
    """For Hermitian contractions T, S and a weakly unitarily invariant
    self-adjoint algebra norm,
    w_N(TS +/- ST) <= min{w_N(T), w_N(S)} * 2 sup_U N(U).

    The unit ball is the operator-norm one: the Cayley completion
    U = S + i (I - S^2)^(1/2) behind the bound needs the spectrum of S
    inside [-1, 1].  The completion itself is exercised here and
    Re(U) == S is verified as part of the report.
    """
    _require_flags(norm, self_adjoint=True, algebra=True,
                   unitary_invariant=True, unitary_sup=True)
    t = _require_hermitian_contraction(as_matrix(T, square=True), "T")
    s = _require_hermitian_contraction(as_matrix(S, square=True), "S")
    if t.shape != s.shape:
        raise ValueError("T and S must have the same shape")
    n = t.shape[0]
    u = cayley_unitary(s)
    cayley_defect = float(np.linalg.norm(re_part(u) - s, "fro"))
    w_t = _wn(t, norm, opts)
    w_s = _wn(s, norm, opts)
    rhs = min(w_t, w_s) * 2.0 * float(norm.unitary_sup(n))
    lhs_plus = _wn(t @ s + s @ t, norm, opts)
    lhs_minus = _wn(t @ s - s @ t, norm, opts)
    comparisons = [("plus", lhs_plus, rhs), ("minus", lhs_minus, rhs),
                   ("cayley-real-part", cayley_defect, 1e-10)]
    terms = {"w_N_T": w_t, "w_N_S": w_s, "rhs": rhs, "lhs_plus": lhs_plus,
             "lhs_minus": lhs_minus, "cayley_defect": cayley_defect,
             "unitary_sup": float(norm.unitary_sup(n))}
    return _report("unitary-commutator", "unitary-commutator-bound", comparisons,
                   max(lhs_plus, lhs_minus, rhs), tol, terms,
                   _digest([t, s], norm.id))


def check_self_commutator(T, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                          tol: float = DEFAULT_TOL) -> InequalityReport:
    """For T in the operator-norm unit ball and a weakly unitarily invariant
    self-adjoint algebra norm, w_N(TT* - T*T) <= 4 N(T) sup_U N(U)."""
    _require_flags(norm, self_adjoint=True, algebra=True,
                   unitary_invariant=True, unitary_sup=True)
    arr = as_matrix(T, square=True)
    top = spectral_norm(arr)
    if top > 1.0 + 1e-9:
        raise RequiresContraction(f"T has spectral norm {top:.12g} > 1")
    n = arr.shape[0]
    lhs = _wn(arr @ adjoint(arr) - adjoint(arr) @ arr, norm, opts)
    rhs = 4.0 * norm.evaluate(arr) * float(norm.unitary_sup(n))
    terms = {"lhs": lhs, "rhs": rhs, "N_T": norm.evaluate(arr)}
    return _report("self-commutator", "self-commutator-bound",
                   [("upper", lhs, rhs)], max(lhs, rhs), tol, terms,
                   _digest([arr], norm.id))


def check_product(T, S, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                  tol: float = DEFAULT_TOL) -> InequalityReport:
    """The product refinement for a self-adjoint algebra norm:
    w_N(TS) <= min over the four +/- variants of
    { N(T) w_N(S) + w_N(TS +/- ST*)/2, N(S) w_N(T) + w_N(TS +/- S*T)/2 }
    <= 2 min{N(T) w_N(S), N(S) w_N(T)} <= 4 w_N(T) w_N(S)."""
    _require_flags(norm, self_adjoint=True, algebra=True)
    t = as_matrix(T, square=True)
    s = as_matrix(S, square=True)
    if t.shape != s.shape:
        raise ValueError("T and S must have the same shape")
    ts = t @ s
    w_ts = _wn(ts, norm, opts)
    n_t, n_s = norm.evaluate(t), norm.evaluate(s)
    w_t, w_s = _wn(t, norm, opts), _wn(s, norm, opts)
    b1_plus = n_t * w_s + 0.5 * _wn(ts + s @ adjoint(t), norm, opts)
    b1_minus = n_t * w_s + 0.5 * _wn(ts - s @ adjoint(t), norm, opts)
    b2_plus = n_s * w_t + 0.5 * _wn(ts + adjoint(s) @ t, norm, opts)
    b2_minus = n_s * w_t + 0.5 * _wn(ts - adjoint(s) @ t, norm, opts)
    level1 = min(b1_plus, b1_minus, b2_plus, b2_minus)
    level2 = 2.0 * min(n_t * w_s, n_s * w_t)
    level3 = 4.0 * w_t * w_s
    comparisons = [("refined", w_ts, level1), ("doubled", level1, level2),
                   ("quadrupled", level2, level3)]
    terms = {"w_N_TS": w_ts, "branch1_plus": b1_plus, "branch1_minus": b1_minus,
             "branch2_plus": b2_plus, "branch2_minus": b2_minus,
             "level2": level2, "level3": level3, "N_T": n_t, "N_S": n_s,
             "w_N_T": w_t, "w_N_S": w_s}
    return _report("product", "product-radius-refinement", comparisons,
                   max(w_ts, level3), tol, terms, _digest([t, s], norm.id))


def check_commuting_product(T, S, norm: NormSpec, *, opts: CheckOpts = DEFAULT_OPTS,
                            tol: float = DEFAULT_TOL) -> InequalityReport:
    """For Hermitian T, S with TS = +/- ST and a self-adjoint algebra norm,
    w_N(TS) <= min{N(T) w_N(S), N(S) w_N(T)}."""
    _require_flags(norm, self_adjoint=True, algebra=True)
    t = as_matrix(T, square=True)
    s = as_matrix(S, square=True)
    if t.shape != s.shape:
        raise ValueError("T and S must have the same shape")
    for arr, what in ((t, "T"), (s, "S")):
        if hermitian_defect(arr) > 1e-8 * max(1.0, frobenius_norm(arr)):
            raise RequiresStructure(f"{what} is not Hermitian within tolerance")
    pair_scale = max(frobenius_norm(t) * frobenius_norm(s), 1e-300)
    ts, st = t @ s, s @ t
    comm = float(np.linalg.norm(ts - st, "fro")) / pair_scale
    anti = float(np.linalg.norm(ts + st, "fro")) / pair_scale
    if comm <= 1e-10:
        mode = 1.0
    elif anti <= 1e-10:
        mode = -1.0
    else:
        raise RequiresCommutation(
            f"pair neither commutes nor anticommutes (residuals {comm:.3e}, {anti:.3e})"
        )
    lhs = _wn(ts, norm, opts)
    rhs = min(norm.evaluate(t) * _wn(s, norm, opts),
              norm.evaluate(s) * _wn(t, norm, opts))
    terms = {"lhs": lhs, "rhs": rhs, "mode": mode,
             "commutation_residual": min(comm, anti)}
    return _report("commuting-product", "commuting-product-bound",
                   [("upper", lhs, rhs)], max(lhs, rhs), tol, terms,
                   _digest([t, s], norm.id))


def _omega_branches(arr, opts: CheckOpts):
    b1 = math.sqrt(spectral_norm(arr @ adjoint(arr) + adjoint(arr) @ arr))
    b2 = math.sqrt(spectral_norm(arr) ** 2 + _w(arr @ arr, opts))
    return b1, b2


def check_omega_upper(T, *, opts: CheckOpts = DEFAULT_OPTS,
                      tol: float = DEFAULT_TOL) -> InequalityReport:
    """Omega(T) <= min{ sqrt(||TT* + T*T||), sqrt(||T||^2 + w(T^2)) }."""
    arr = as_matrix(T, square=True)
    om = _omega(arr, opts)
    b1, b2 = _omega_branches(arr, opts)
    terms = {"omega": om, "branch_gram": b1, "branch_square": b2}
    return _report("omega-upper", "omega-upper-refinement",
                   [("upper", om, min(b1, b2))], max(om, b1, b2), tol, terms,
                   _digest([arr]))


def check_omega_chain(T, *, opts: CheckOpts = DEFAULT_OPTS,
                      tol: float = DEFAULT_TOL) -> InequalityReport:
    """w(T) <= Omega(T)/sqrt(2) <= min{...}/sqrt(2), refining both the
    Kittaneh and the Dragomir bound, plus the numeric identity
    w_Omega(T) = sqrt(2) w(T) verified through the slow generalized-radius
    path with Omega as the plugged-in norm."""
    arr = as_matrix(T, square=True)
    w = _w(arr, opts)
    om = _omega(arr, opts)
    b1, b2 = _omega_branches(arr, opts)
    half = _SQRT2 / 2.0
    slow = omega_radius_slow(arr)
    agreement = abs(_SQRT2 * w - slow)
    budget = 1e-7 * max(1.0, w)
    comparisons = [("w-vs-omega", w, half * om),
                   ("omega-vs-min", half * om, half * min(b1, b2)),
                   ("radius-identity", agreement, budget)]
    terms = {"w": w, "omega": om, "branch_gram": b1, "branch_square": b2,
             "w_omega_slow": slow, "identity_residual": agreement}
    return _report("omega-chain", "omega-radius-chain", comparisons,
                   max(w, half * om, half * min(b1, b2)), tol, terms,
                   _digest([arr]))


def check_omega_equality(T, *, opts: CheckOpts = DEFAULT_OPTS,
                         tol: float = DEFAULT_TOL,
                         equality_tol: float = 1e-7) -> InequalityReport:
    """The equivalence: w_Omega(T) = Omega(T)/2 holds iff
    Omega(T) = 2 sqrt(2) ||Re(e^{i theta} T)|| for every theta.

    Both conditions are evaluated at `equality_tol` (relative to Omega);
    the check passes iff they agree.  Inputs within 1e-4 of the first
    equality are flagged in terms["near_equality"] for later study, since
    no nonzero finite-dimensional example is known.
    """
    arr = as_matrix(T, square=True)
    om = _omega(arr, opts)
    w = _w(arr, opts)
    w_om = _SQRT2 * w
    re, im = re_part(arr), im_part(arr)
    thetas = np.arange(720) * (_TWO_PI / 720)
    stack = (np.cos(thetas)[:, None, None] * re
             - np.sin(thetas)[:, None, None] * im)
    norms_grid = np.abs(np.linalg.eigvalsh(stack)).max(axis=-1)
    max_dev = float(np.abs(om - 2.0 * _SQRT2 * norms_grid).max())
    if om == 0.0:
        cond_i = cond_ii = True
        residual_i = 0.0
    else:
        residual_i = abs(w_om - om / 2.0)
        cond_i = residual_i <= equality_tol * om
        cond_ii = max_dev <= equality_tol * om
    delta = abs(int(cond_i) - int(cond_ii))
    near = 1.0 if (om > 0.0 and residual_i <= 1e-4 * om) else 0.0
    terms = {"omega": om, "w_omega": w_om, "residual_halving": residual_i,
             "max_theta_deviation": max_dev, "cond_halving": float(cond_i),
             "cond_flat": float(cond_ii), "near_equality": near}
    return _report("omega-equality", "omega-half-radius-equivalence",
                   [("equivalence", float(delta), 0.0)], 1.0, tol, terms,
                   _digest([arr]))


_SPECIAL_KINDS = ("normal", "square_zero", "self_adjoint")


def check_special_forms(T, kind: str, *, opts: CheckOpts = DEFAULT_OPTS,
                        tol: float = DEFAULT_TOL,
                        form_tol: float = 1e-7) -> InequalityReport:
    """Closed forms on structured inputs: normal -> Omega = sqrt(2) ||T||
    and w_Omega = Omega; square-zero -> Omega = ||T|| and
    w_Omega = Omega / sqrt(2); self-adjoint -> Omega = sqrt(2) ||T||.

    The structural hypothesis is verified numerically first; a failure is
    inapplicability, not a violation.
    """
    if kind not in _SPECIAL_KINDS:
        raise ValueError(f"kind must be one of {_SPECIAL_KINDS}, got {kind!r}")
    arr = as_matrix(T, square=True)
    fro = frobenius_norm(arr)
    if kind == "normal":
        residual = float(np.linalg.norm(
            arr @ adjoint(arr) - adjoint(arr) @ arr, "fro"))
        if residual > 1e-8 * max(1.0, fro ** 2):
            raise RequiresStructure(f"normality residual {residual:.3e} too large")
    elif kind == "square_zero":
        residual = float(np.linalg.norm(arr @ arr, "fro"))
        if residual > 1e-8 * max(1.0, fro ** 2):
            raise RequiresStructure(f"T^2 residual {residual:.3e} too large")
    else:
        residual = hermitian_defect(arr)
        if residual > 1e-8 * max(1.0, fro):
            raise RequiresStructure(f"hermiticity defect {residual:.3e} too large")
    om = _omega(arr, opts)
    w = _w(arr, opts)
    nrm = spectral_norm(arr)
    comparisons = []
    terms = {"omega": om, "w": w, "operator_norm": nrm,
             "structural_residual": residual}
    if kind in ("normal", "self_adjoint"):
        ref = _SQRT2 * nrm
        comparisons.append(("omega-form", abs(om - ref), form_tol * max(1.0, ref)))
        terms["omega_reference"] = ref
    else:
        comparisons.append(("omega-form", abs(om - nrm), form_tol * max(1.0, nrm)))
        terms["omega_reference"] = nrm
    if kind == "normal":
        comparisons.append(("radius-form", abs(_SQRT2 * w - om),
                            form_tol * max(1.0, om)))
    elif kind == "square_zero":
        comparisons.append(("radius-form", abs(_SQRT2 * w - om / _SQRT2),
                            form_tol * max(1.0, om)))
    return _report("special-forms", "omega-closed-forms", comparisons,
                   max(om, _SQRT2 * nrm), tol, terms, _digest([arr], kind))


def check_hs_pair(T, S, *, opts: CheckOpts = DEFAULT_OPTS,
                  tol: float = DEFAULT_TOL) -> InequalityReport:
    """The Hilbert-Schmidt (Frobenius) trace bounds:

    (i)  ||TT* + T*T||_F + sup_phi |tr((e^{i phi}T)^2 + (e^{-i phi}T*)^2)|
         <= 2 (||T||_F^2 + |tr(T^2)|), and
    (ii) ||TS||_F^2 + |tr((TS)^2)|
         <= 4 min{||T||_F^2 (||S||_F^2 + |tr S^2|),
                  ||S||_F^2 (||T||_F^2 + |tr T^2|)}.

    The phi-supremum in (i) is computed both by grid + golden-section
    refinement and by its closed form 2 |tr(T^2)| (the objective is
    |2 Re(e^{2 i phi} tr T^2)|); the two must agree to 1e-10 relative.
    """
    t = as_matrix(T, square=True)
    s = as_matrix(S, square=True)
    if t.shape != s.shape:
        raise ValueError("T and S must have the same shape")
    tr_t2 = complex(np.einsum("ij,ji->", t, t))
    tr_t2_adj = complex(np.einsum("ij,ji->", adjoint(t), adjoint(t)))

    def q(phi: float) -> float:
        return abs(np.exp(2j * phi) * tr_t2 + np.exp(-2j * phi) * tr_t2_adj)

    def q_many(phis):
        ph = np.exp(2j * phis)
        return np.abs(ph * tr_t2 + np.conj(ph) * tr_t2_adj)

    points = max(8, opts.grid // 2)
    phi, sup_v, _, _ = maximize_on_circle(q, math.pi, points, opts.refine_tol,
                                          opts.top_brackets, q_many)
    extremum = SupOverPhi(value=float(sup_v), argmax_phi=float(phi % _TWO_PI),
                          grid=points, refine_tol=opts.refine_tol)
    sup_grid = extremum.value
    closed = 2.0 * abs(tr_t2)
    lhs_i = frobenius_norm(t @ adjoint(t) + adjoint(t) @ t) + sup_grid
    rhs_i = 2.0 * (frobenius_norm(t) ** 2 + abs(tr_t2))
    ts = t @ s
    tr_ts2 = complex(np.einsum("ij,ji->", ts, ts))
    tr_s2 = complex(np.einsum("ij,ji->", s, s))
    lhs_ii = frobenius_norm(ts) ** 2 + abs(tr_ts2)
    rhs_ii = 4.0 * min(
        frobenius_norm(t) ** 2 * (frobenius_norm(s) ** 2 + abs(tr_s2)),
        frobenius_norm(s) ** 2 * (frobenius_norm(t) ** 2 + abs(tr_t2)),
    )
    comparisons = [("part-i", lhs_i, rhs_i), ("part-ii", lhs_ii, rhs_ii),
                   ("phi-sup-agreement", abs(sup_grid - closed),
                    1e-10 * max(1.0, closed))]
    terms = {"lhs_i": lhs_i, "rhs_i": rhs_i, "lhs_ii": lhs_ii, "rhs_ii": rhs_ii,
             "phi_sup_grid": sup_grid, "phi_sup_closed": closed,
             "sup_argmax_phi": extremum.argmax_phi}
    return _report("hs-pair", "hilbert-schmidt-trace-bounds", comparisons,
                   max(lhs_i, rhs_i, lhs_ii, rhs_ii), tol, terms,
                   _digest([t, s]))


# ---------------------------------------------------------------------------
# Suite runner


@dataclass(frozen=True)
class GoldenCase:
    """A fixed input with a hand-checkable outcome, run once per suite."""

    label: str
    matrices: tuple
    norm_id: Optional[str] = None
    kind: Optional[str] = None


@dataclass(frozen=True)
class CheckDef:
    """A named check: its runner, the ensembles and norms it applies to,
    and its golden witnesses."""

    name: str
    tag: str
    runner: Callable
    kinds: tuple
    norm_ids: tuple = ()
    pair: bool = False
    adapter: Optional[str] = None
    golden: tuple = ()


_E12 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
_E21 = _E12.T.copy()
_WORKED_2X2 = np.array([[1.0, 1.0], [0.0, 0.0]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)
_SIGN_DIAG = np.diag([1.0, -1.0]).astype(np.complex128)
_PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_NORMAL_DIAG = np.diag([1j, 2.0 + 0j])
_COMM_A = np.diag([2.0, 1.0]).astype(np.complex128)
_COMM_B = np.diag([3.0, 1.0]).astype(np.complex128)
_ZERO2 = np.zeros((2, 2), dtype=np.complex128)

_SINGLE_KINDS = ("ginibre", "hermitian", "normal", "haar_unitary",
                 "square_zero", "hermitian_contraction")


def _to_unit_ball(arr):
    return arr / max(1.0, spectral_norm(arr) * (1.0 + 1e-12))


def default_checks() -> tuple:
    """The registered checks with their applicable ensembles, norm sweeps
    and golden witnesses."""
    return (
        CheckDef(
            name="basic", tag="radius-norm-equivalence",
            runner=check_basic_bounds, kinds=_SINGLE_KINDS,
            golden=(GoldenCase("worked-2x2", (_WORKED_2X2,)),
                    GoldenCase("square-zero-e12", (_E12,))),
        ),
        CheckDef(
            name="kittaneh", tag="kittaneh-sqrt-refinement",
            runner=check_kittaneh, kinds=_SINGLE_KINDS,
            golden=(GoldenCase("square-zero-e12", (_E12,)),
                    GoldenCase("identity", (_I2,))),
        ),
        CheckDef(
            name="dragomir", tag="dragomir-buzano-refinement",
            runner=check_dragomir, kinds=_SINGLE_KINDS,
            golden=(GoldenCase("square-zero-e12", (_E12,)),
                    GoldenCase("identity", (_I2,))),
        ),
        CheckDef(
            name="inf-upper", tag="cauchy-schwarz-inf-upper",
            runner=check_inf_upper,
            kinds=("ginibre", "hermitian", "normal", "square_zero"),
            norm_ids=("op", "schatten:2", "schatten:1"),
            golden=(GoldenCase("worked-2x2-op", (_WORKED_2X2,), norm_id="op"),),
        ),
        CheckDef(
            name="lower-bound", tag="algebra-lower-bound",
            runner=check_lower_bound,
            kinds=("ginibre", "hermitian", "normal", "square_zero"),
            norm_ids=("op", "schatten:2"),
            golden=(GoldenCase("square-zero-e12-op", (_E12,), norm_id="op"),
                    GoldenCase("identity-op", (_I2,), norm_id="op")),
        ),
        CheckDef(
            name="norm-chain", tag="norm-radius-product-chain",
            runner=check_norm_chain, kinds=("ginibre", "normal"),
            norm_ids=("op", "schatten:2"), pair=True,
            golden=(GoldenCase("identity-pair-op", (_I2, _I2), norm_id="op"),),
        ),
        CheckDef(
            name="commutator", tag="commutator-product-bound",
            runner=check_commutator, kinds=("ginibre",),
            norm_ids=("op", "schatten:2"), pair=True,
            golden=(GoldenCase("nilpotent-pair-op", (_E12, _E21), norm_id="op"),),
        ),
        CheckDef(
            name="unitary-commutator", tag="unitary-commutator-bound",
            runner=check_unitary_commutator, kinds=("hermitian_contraction",),
            norm_ids=("op", "schatten:2"), pair=True,
            golden=(GoldenCase("sign-diagonal-op", (_SIGN_DIAG, _SIGN_DIAG),
                               norm_id="op"),),
        ),
        CheckDef(
            name="self-commutator", tag="self-commutator-bound",
            runner=check_self_commutator,
            kinds=("ginibre", "haar_unitary", "hermitian_contraction"),
            norm_ids=("op", "schatten:2"), adapter="contraction",
            golden=(GoldenCase("square-zero-e12-op", (_E12,), norm_id="op"),),
        ),
        CheckDef(
            name="product", tag="product-radius-refinement",
            runner=check_product, kinds=("ginibre",),
            norm_ids=("op", "schatten:2"), pair=True,
            golden=(GoldenCase("identity-pair-op", (_I2, _I2), norm_id="op"),),
        ),
        CheckDef(
            name="commuting-product", tag="commuting-product-bound",
            runner=check_commuting_product,
            kinds=("commuting_hermitian_pair", "anticommuting_hermitian_pair"),
            norm_ids=("op", "schatten:1", "schatten:2"), pair=True,
            golden=(GoldenCase("commuting-diagonals-op", (_COMM_A, _COMM_B),
                               norm_id="op"),
                    GoldenCase("pauli-xz-op", (_PAULI_X, _SIGN_DIAG),
                               norm_id="op")),
        ),
        CheckDef(
            name="omega-upper", tag="omega-upper-refinement",
            runner=check_omega_upper, kinds=("ginibre", "normal", "square_zero"),
            golden=(GoldenCase("square-zero-e12", (_E12,)),
                    GoldenCase("identity", (_I2,))),
        ),
        CheckDef(
            name="omega-chain", tag="omega-radius-chain",
            runner=check_omega_chain, kinds=("ginibre", "normal", "square_zero"),
            golden=(GoldenCase("worked-2x2", (_WORKED_2X2,)),),
        ),
        CheckDef(
            name="omega-equality", tag="omega-half-radius-equivalence",
            runner=check_omega_equality, kinds=("ginibre", "square_zero"),
            golden=(GoldenCase("square-zero-e12", (_E12,)),
                    GoldenCase("zero", (_ZERO2,))),
        ),
        CheckDef(
            name="special-forms", tag="omega-closed-forms",
            runner=check_special_forms,
            kinds=("normal", "square_zero", "hermitian"),
            golden=(GoldenCase("normal-diag", (_NORMAL_DIAG,), kind="normal"),
                    GoldenCase("square-zero-e12", (_E12,), kind="square_zero"),
                    GoldenCase("pauli-x", (_PAULI_X,), kind="self_adjoint")),
        ),
        CheckDef(
            name="hs-pair", tag="hilbert-schmidt-trace-bounds",
            runner=check_hs_pair, kinds=("ginibre",), pair=True,
            golden=(GoldenCase("e12-pair", (_E12, _E12)),
                    GoldenCase("identity-pair", (_I2, _I2))),
        ),
    )


DEFAULT_CHECK_NAMES = tuple(defn.name for defn in default_checks())

_SPECIAL_KIND_MAP = {"normal": "normal", "square_zero": "square_zero",
                     "hermitian": "self_adjoint"}


@dataclass(frozen=True)
class SuiteRecord:
    """One (check, ensemble, trial) evaluation in flat, serializable form."""

    name: str
    paper_tag: str
    ensemble: str
    trial: int
    seed: int
    status: str  # ok | violation | inapplicable | error
    lhs: float
    rhs: float
    slack: float
    holds: bool
    tolerance: float
    scale: float
    input_digest: str
    note: str = ""


@dataclass(frozen=True)
class SuiteAggregate:
    name: str
    records: int
    min_slack: float
    failures: int
    inapplicable: int
    errors: int


@dataclass(frozen=True)
class SuiteReport:
    records: tuple
    aggregates: tuple
    failures: int
    errors: int
    near_equality: tuple


def _record_from_report(defn: CheckDef, norm_id, ensemble: str, trial: int,
                        seed: int, report: InequalityReport) -> SuiteRecord:
    name = defn.name if norm_id is None else f"{defn.name}[{norm_id}]"
    return SuiteRecord(
        name=name, paper_tag=report.paper_tag, ensemble=ensemble, trial=trial,
        seed=seed, status="ok" if report.holds else "violation",
        lhs=report.lhs, rhs=report.rhs, slack=report.slack, holds=report.holds,
        tolerance=report.tolerance, scale=report.terms.get("scale", 1.0),
        input_digest=report.input_digest,
    )


def _run_one(defn: CheckDef, matrices, norm: Optional[NormSpec],
             kind: Optional[str], opts: CheckOpts, tol: float) -> InequalityReport:
    args = list(matrices)
    if defn.runner is check_special_forms:
        return defn.runner(args[0], kind, opts=opts, tol=tol)
    if norm is not None:
        args.append(norm)
    return defn.runner(*args, opts=opts, tol=tol)


def run_suite(ensembles: Sequence[EnsembleSpec], checks=None, trials: int = 100,
              tol: float = DEFAULT_TOL, opts: CheckOpts = DEFAULT_OPTS,
              include_golden: bool = False) -> SuiteReport:
    """Run the selected checks over every applicable ensemble.

    Trial i of an ensemble uses seed `spec.seed + i`, so reports are pure
    functions of (ensembles, checks, trials, tol, opts) and aggregation is
    order-independent.  Hypothesis failures become "inapplicable" records;
    unexpected exceptions become "error" records (the first error per
    (check, ensemble) carries the message) and never abort other cells.
    With include_golden, every check's golden witness cases additionally
    run once each under the pseudo-ensemble "golden" (the CLI default).
    """
    if trials < 0:
        raise ValueError("trials must be >= 0")
    available = {defn.name: defn for defn in default_checks()}
    if checks is None:
        selected = [available[name] for name in DEFAULT_CHECK_NAMES]
    else:
        selected = []
        for item in checks:
            if isinstance(item, CheckDef):
                selected.append(item)
            elif item in available:
                selected.append(available[item])
            else:
                raise ValueError(f"unknown check {item!r} "
                                 f"(known: {', '.join(DEFAULT_CHECK_NAMES)})")
    norm_specs = registry()
    records = []
    near = []
    for defn in selected:
        norm_ids = defn.norm_ids if defn.norm_ids else (None,)
        if include_golden:
            for idx, case in enumerate(defn.golden):
                norm = norm_specs[case.norm_id] if case.norm_id else None
                label = defn.name if case.norm_id is None else f"{defn.name}[{case.norm_id}]"
                try:
                    report = _run_one(defn, case.matrices, norm, case.kind, opts, tol)
                    rec = _record_from_report(defn, case.norm_id, "golden", idx, 0, report)
                    rec = replace(rec, note=case.label)
                    if report.terms.get("near_equality"):
                        near.append(f"{label} golden:{case.label}")
                except CheckInapplicable as exc:
                    rec = SuiteRecord(name=label, paper_tag=defn.tag,
                                      ensemble="golden", trial=idx, seed=0,
                                      status="inapplicable", lhs=math.nan,
                                      rhs=math.nan, slack=math.nan, holds=False,
                                      tolerance=tol, scale=math.nan,
                                      input_digest="", note=str(exc))
                records.append(rec)
        for spec in ensembles:
            if spec.kind not in defn.kinds:
                continue
            ens_name = ensemble_id(spec.kind, spec.dim)
            kind_arg = _SPECIAL_KIND_MAP.get(spec.kind)
            first_error = {}
            for trial in range(trials):
                seed = spec.seed + trial
                trial_spec = EnsembleSpec(spec.kind, spec.dim, seed, spec.scale)
                try:
                    if defn.pair and spec.kind not in PAIR_KINDS:
                        drawn = generate_pair(trial_spec)
                    else:
                        drawn = generate(trial_spec)
                    matrices = list(drawn) if isinstance(drawn, tuple) else [drawn]
                    if defn.adapter == "contraction":
                        matrices = [_to_unit_ball(m) for m in matrices]
                except Exception as exc:  # generation failure is a hard error
                    for norm_id in norm_ids:
                        label = defn.name if norm_id is None else f"{defn.name}[{norm_id}]"
                        records.append(SuiteRecord(
                            name=label, paper_tag=defn.tag, ensemble=ens_name,
                            trial=trial, seed=seed, status="error", lhs=math.nan,
                            rhs=math.nan, slack=math.nan, holds=False,
                            tolerance=tol, scale=math.nan, input_digest="",
                            note=f"generation failed: {exc}"))
                    continue
                for norm_id in norm_ids:
                    label = defn.name if norm_id is None else f"{defn.name}[{norm_id}]"
                    norm = norm_specs[norm_id] if norm_id else None
                    try:
                        report = _run_one(defn, matrices, norm, kind_arg, opts, tol)
                        rec = _record_from_report(defn, norm_id, ens_name, trial,
                                                  seed, report)
                        if report.terms.get("near_equality"):
                            near.append(f"{label} {ens_name} trial {trial} "
                                        f"seed {seed} digest {report.input_digest}")
                    except CheckInapplicable as exc:
                        rec = SuiteRecord(
                            name=label, paper_tag=defn.tag, ensemble=ens_name,
                            trial=trial, seed=seed, status="inapplicable",
                            lhs=math.nan, rhs=math.nan, slack=math.nan,
                            holds=False, tolerance=tol, scale=math.nan,
                            input_digest="", note=str(exc))
                    except Exception as exc:
                        key = (defn.name, ens_name)
                        note = f"{type(exc).__name__}: {exc}"
                        if key not in first_error:
                            first_error[key] = note
                        rec = SuiteRecord(
                            name=label, paper_tag=defn.tag, ensemble=ens_name,
                            trial=trial, seed=seed, status="error", lhs=math.nan,
                            rhs=math.nan, slack=math.nan, holds=False,
                            tolerance=tol, scale=math.nan, input_digest="",
                            note=note)
                    records.append(rec)
    records.sort(key=lambda r: (r.name, r.ensemble, r.trial))
    by_name = {}
    for rec in records:
        by_name.setdefault(rec.name, []).append(rec)
    aggregates = []
    failures = 0
    errors = 0
    for name in sorted(by_name):
        group = by_name[name]
        slacks = [r.slack for r in group if r.status in ("ok", "violation")]
        fail = sum(1 for r in group if r.status == "violation")
        errs = sum(1 for r in group if r.status == "error")
        inap = sum(1 for r in group if r.status == "inapplicable")
        failures += fail
        errors += errs
        aggregates.append(SuiteAggregate(
            name=name, records=len(group),
            min_slack=min(slacks) if slacks else math.nan,
            failures=fail, inapplicable=inap, errors=errs))
    return SuiteReport(records=tuple(records), aggregates=tuple(aggregates),
                       failures=failures, errors=errors, near_equality=tuple(near))
