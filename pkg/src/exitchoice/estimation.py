"""Maximum-likelihood estimation of the multinomial-logit model.

The log-likelihood is globally concave in the coefficients (linear utilities),
so a Newton-Raphson iteration with a step-halving line search converges from
any start; a quasi-Newton (BFGS) direction is kept as a fallback for the rare
case where the Hessian solve fails.  Standard errors come from the inverse of
the negative Hessian at the optimum (classical MLE covariance), z-values are
estimate/SE and p-values are two-sided standard-normal tails.

Derivative notes: the per-observation score is computed from attribute
differences against the chosen alternative, so an attribute that never varies
within a choice set contributes an exactly zero gradient component.  The
Hessian uses the same differences, which keeps it exactly symmetric.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import ChoiceObservation, ModelSpec, as_params

#: Iteration is aborted with a SeparationWarning once any |beta_j| passes this.
SEPARATION_THRESHOLD = 50.0


class NotIdentifiedError(RuntimeError):
    """Raised when the information matrix is singular at the optimum, i.e.
    some coefficient is not identified by the data."""


class SeparationWarning(UserWarning):
    """Issued when estimates diverge, indicating perfect separation."""


@dataclass(frozen=True)
class ModelFit:
    """Estimation output: estimates, covariance and convergence diagnostics."""

    spec: ModelSpec
    estimates: np.ndarray
    vcov: np.ndarray
    log_likelihood: float
    converged: bool
    iterations: int
    gradient_norm: float
    n_obs: int


@dataclass(frozen=True)
class InferenceRow:
    """One row of an inference table: estimate, SE, z-value, p-value."""

    name: str
    estimate: float
    std_error: float
    z_value: float
    p_value: float


def two_sided_p(z: float) -> float:
    """Two-sided standard-normal tail probability, 2*(1 - Phi(|z|))."""
    return math.erfc(abs(z) / math.sqrt(2.0))


# ---------------------------------------------------------------------------
# Data compilation: observation lists -> padded arrays
# ---------------------------------------------------------------------------

class _Compiled:
    """Design rows, availability mask and chosen indices as dense arrays.

    Choice sets may differ in size; shorter ones are padded with zero rows
    masked out of every probability and derivative computation.
    """

    __slots__ = ("X", "avail", "chosen", "n_obs", "n_params")

    def __init__(self, data: Sequence[ChoiceObservation], spec: ModelSpec):
        if not data:
            raise ValueError("no observations: the dataset is empty")
        n, k = len(data), spec.n_params
        j_max = max(obs.scenario.n_alternatives for obs in data)
        X = np.zeros((n, j_max, k))
        avail = np.zeros((n, j_max), dtype=bool)
        chosen = np.zeros(n, dtype=int)
        cache: dict = {}
        for i, obs in enumerate(data):
            key = (obs.scenario, obs.first_choice)
            rows = cache.get(key)
            if rows is None:
                rows = spec.design_matrix(obs.scenario, obs.first_choice)
                cache[key] = rows
            j = rows.shape[0]
            X[i, :j] = rows
            avail[i, :j] = True
            chosen[i] = obs.chosen
        self.X, self.avail, self.chosen = X, avail, chosen
        self.n_obs, self.n_params = n, k

    def probabilities(self, beta: np.ndarray) -> np.ndarray:
        """Choice probabilities per observation, zero on padded slots."""
        v = np.einsum("njk,k->nj", self.X, beta)
        v = np.where(self.avail, v, -np.inf)
        m = v.max(axis=1, keepdims=True)
        e = np.exp(v - m)
        return e / e.sum(axis=1, keepdims=True)

    def log_likelihood(self, beta: np.ndarray) -> float:
        v = np.einsum("njk,k->nj", self.X, beta)
        v_masked = np.where(self.avail, v, -np.inf)
        m = v_masked.max(axis=1)
        lse = np.log(np.exp(v_masked - m[:, None]).sum(axis=1)) + m
        v_chosen = np.take_along_axis(v, self.chosen[:, None], axis=1)[:, 0]
        return float(np.sum(v_chosen - lse))

    def score_hessian(self, beta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Analytic gradient and Hessian of the log-likelihood.

        Uses rows differenced against the chosen alternative: the score is
        sum_n sum_i P_ni (x_chosen - x_i) and the Hessian is the negated
        probability-weighted covariance of the same differences.
        """
        p = self.probabilities(beta)
        x_chosen = np.take_along_axis(
            self.X, self.chosen[:, None, None], axis=1)
        diff = x_chosen - self.X            # zero on padded slots times p=0
        grad = np.einsum("nj,njk->k", p, diff)
        dbar = np.einsum("nj,njk->nk", p, diff)
        hess = -(np.einsum("nj,njk,njl->kl", p, diff, diff)
                 - np.einsum("nk,nl->kl", dbar, dbar))
        hess = (hess + hess.T) / 2.0        # contraction order leaves ~ulp skew
        return grad, hess


def log_likelihood(data: Sequence[ChoiceObservation], spec: ModelSpec,
                   params) -> float:
    """Log-likelihood sum_n ln P_n,chosen(n); always <= 0."""
    beta = as_params(spec, params)
    return _Compiled(data, spec).log_likelihood(beta)


def gradient(data: Sequence[ChoiceObservation], spec: ModelSpec,
             params) -> np.ndarray:
    """Analytic score vector of the log-likelihood, length K."""
    beta = as_params(spec, params)
    return _Compiled(data, spec).score_hessian(beta)[0]


def hessian(data: Sequence[ChoiceObservation], spec: ModelSpec,
            params) -> np.ndarray:
    """Analytic Hessian of the log-likelihood, K x K.

    Symmetric and negative semidefinite everywhere: the MNL log-likelihood
    with linear utilities is globally concave.
    """
    beta = as_params(spec, params)
    return _Compiled(data, spec).score_hessian(beta)[1]


def _non_identified_names(neg_hess: np.ndarray, spec: ModelSpec) -> list[str]:
    """Coefficients loading on (near-)null eigenvectors of the information."""
    eigval, eigvec = np.linalg.eigh(neg_hess)
    cutoff = max(eigval.max(), 0.0) * 1e-10
    names = spec.coef_names()
    flagged: list[str] = []
    for j in range(eigval.size):
        if eigval[j] <= cutoff:
            weights = np.abs(eigvec[:, j])
            for i in np.nonzero(weights > 0.1 * weights.max())[0]:
                if names[i] not in flagged:
                    flagged.append(names[i])
    return flagged


def fit_mnl(data: Sequence[ChoiceObservation], spec: ModelSpec,
            init=None, tol: float = 1e-6, max_iter: int = 100) -> ModelFit:
    """Maximize the MNL log-likelihood by Newton-Raphson.

    Parameters
    ----------
    data : sequence of ChoiceObservation
    spec : ModelSpec
    init : array-like, optional
        Starting coefficients; defaults to zeros (global concavity makes the
        start immaterial to the optimum reached).
    tol : float
        Convergence tolerance on the gradient infinity-norm.
    max_iter : int
        Iteration cap; a fit that hits it is returned with converged=False.

    Returns
    -------
    ModelFit
        With ``vcov`` equal to the inverse negative Hessian at the optimum.
        The accepted log-likelihood never decreases across iterations
        (step-halving line search).

    Raises
    ------
    NotIdentifiedError
        If the negative Hessian is singular at the converged optimum; the
        message names the offending coefficients.

    Warns
    -----
    SeparationWarning
        If any coefficient's magnitude exceeds ``SEPARATION_THRESHOLD``
        during iteration (perfect separation makes the MLE diverge); the
        fit is returned unconverged.
    """
    if tol <= 0:
        raise ValueError("tol must be > 0")
    compiled = _Compiled(data, spec)
    k = spec.n_params
    beta = np.zeros(k) if init is None else as_params(spec, init).copy()

    ll = compiled.log_likelihood(beta)
    grad, hess = compiled.score_hessian(beta)
    b_inv = np.eye(k)                     # quasi-Newton fallback state
    iterations = 0
    converged = bool(np.max(np.abs(grad)) <= tol)

    while not converged and iterations < max_iter:
        iterations += 1
        try:
            direction = np.linalg.solve(-hess, grad)
        except np.linalg.LinAlgError:
            direction = b_inv @ grad      # secant (BFGS) fallback direction
        if grad @ direction <= 0.0:       # guard: keep an ascent direction
            direction = b_inv @ grad

        # Step-halving line search: never accept a lower log-likelihood.
        step, ll_new = 1.0, -np.inf
        for _ in range(40):
            ll_new = compiled.log_likelihood(beta + step * direction)
            if ll_new >= ll:
                break
            step *= 0.5
        else:
            break                         # numerical floor, no usable step

        beta_new = beta + step * direction
        grad_new, hess_new = compiled.score_hessian(beta_new)

        # BFGS update of the inverse negative-Hessian approximation.
        s = beta_new - beta
        y = grad - grad_new               # change in -gradient of -LL
        sy = s @ y
        if sy > 1e-12:
            rho = 1.0 / sy
            v = np.eye(k) - rho * np.outer(s, y)
            b_inv = v @ b_inv @ v.T + rho * np.outer(s, s)

        beta, ll, grad, hess = beta_new, ll_new, grad_new, hess_new

        if np.max(np.abs(beta)) > SEPARATION_THRESHOLD:
            warnings.warn(
                "estimates diverged (|beta| > "
                f"{SEPARATION_THRESHOLD:g}); data may be perfectly separated",
                SeparationWarning)
            break
        converged = bool(np.max(np.abs(grad)) <= tol)

    gradient_norm = float(np.max(np.abs(grad)))
    converged = gradient_norm <= tol
    try:
        vcov = np.linalg.inv(-hess)
        vcov = (vcov + vcov.T) / 2.0
        if not np.all(np.isfinite(vcov)):
            raise np.linalg.LinAlgError
    except np.linalg.LinAlgError:
        if converged:
            bad = _non_identified_names(-hess, spec)
            raise NotIdentifiedError(
                "singular Hessian at the optimum; coefficient(s) not "
                f"identified by the data: {', '.join(bad) or 'unknown'}")
        vcov = np.full((k, k), np.nan)

    return ModelFit(spec=spec, estimates=beta, vcov=vcov,
                    log_likelihood=ll, converged=converged,
                    iterations=iterations, gradient_norm=gradient_norm,
                    n_obs=compiled.n_obs)


def inference_table(fit: ModelFit) -> list[InferenceRow]:
    """Per-coefficient estimates, standard errors, z- and p-values.

    Requires a converged fit with a valid covariance; a negative variance on
    the diagonal signals failed convergence and raises.
    """
    if not fit.converged:
        raise ValueError("inference table requires a converged fit")
    variances = np.diag(fit.vcov)
    if np.any(variances < 0) or not np.all(np.isfinite(variances)):
        raise ValueError(
            "invalid variance on the covariance diagonal; the fit did not "
            "reach a proper optimum")
    rows = []
    for name, est, var in zip(fit.spec.coef_names(), fit.estimates, variances):
        se = math.sqrt(var)
        if se == 0:
            raise ValueError(f"zero standard error for {name}")
        z = float(est) / se
        rows.append(InferenceRow(name=name, estimate=float(est),
                                 std_error=se, z_value=z,
                                 p_value=two_sided_p(z)))
    return rows
