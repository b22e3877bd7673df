"""Correlation geometry: the correlation matrix and its derived views.

A correlation coefficient is read here as the cosine of the angle
between two centered data vectors.  That one identity drives the whole
module: the correlation matrix is a Gram matrix of unit vectors, the
angle matrix is its elementwise arc cosine in degrees, and the
determination matrix (squared correlation) gives the fraction of
variance either variable explains of the other.

Statistical significance uses the exact two-tailed test for a Pearson
coefficient: with t = r * sqrt((n - 2) / (1 - r^2)) following a
Student-t law with df = n - 2 under the null, the two-tailed p-value
2 * (1 - F(|t|)) collapses algebraically to I_x(df/2, 1/2) evaluated at
x = 1 - r^2, where I is the regularized incomplete beta function.  The
module evaluates that closed form directly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError
from .ingest import StandardizedMatrix
from .kernels import betainc_reg

__all__ = [
    "CorrelationMatrix",
    "DerivedMatrices",
    "correlation",
    "correlation_matrix",
    "significance",
    "significance_matrix",
    "student_t_cdf",
    "angle_deg",
    "angle_matrix",
    "determination_matrix",
    "derived_matrices",
    "load_correlation_json",
]


@dataclass(eq=False)
class CorrelationMatrix:
    """Symmetric correlation matrix with variable names and sample size."""

    r: np.ndarray
    n_obs: int
    names: list[str]

    @property
    def n(self) -> int:
        return self.r.shape[0]


@dataclass(eq=False)
class DerivedMatrices:
    """Elementwise companions of a correlation matrix.

    ``p_values`` holds two-tailed significance levels (diagonal fixed
    at 0), ``angles_deg`` the inter-variable angles in degrees, and
    ``determination`` the squared correlations as fractions in [0, 1].
    """

    names: list[str]
    n_obs: int
    p_values: np.ndarray
    angles_deg: np.ndarray
    determination: np.ndarray


def correlation(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson correlation of two columns, as a centered cosine.

    Both vectors are centered on their means; the coefficient is then
    the cosine of the angle between them, which makes it independent of
    the standardization divisor and invariant under positive scaling.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.shape[0] != y.shape[0]:
        raise ValueError("corrstats: correlation needs two equal-length 1-D columns")
    if x.shape[0] < 3:
        raise DataError("corrstats: correlation needs at least 3 observations")
    xc = x - x.mean()
    yc = y - y.mean()
    nx = math.sqrt(float(xc @ xc))
    ny = math.sqrt(float(yc @ yc))
    if nx == 0.0 or ny == 0.0:
        raise DataError("corrstats: correlation undefined for a constant column")
    r = float(xc @ yc) / (nx * ny)
    return min(1.0, max(-1.0, r))


def correlation_matrix(z: StandardizedMatrix) -> CorrelationMatrix:
    """Correlation matrix of a standardized data set.

    Only the strict upper triangle is computed; the lower triangle is
    mirrored from it so symmetry holds exactly, and the diagonal is
    exactly 1.
    """
    zc = z.values - z.values.mean(axis=0)
    norms = np.sqrt(np.sum(zc * zc, axis=0))
    if np.any(norms == 0.0):
        j = int(np.argmin(norms))
        raise DataError(f"corrstats: column {z.column_names[j]!r} has zero variance")
    n = z.n_cols
    r = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            rij = float(zc[:, i] @ zc[:, j]) / (norms[i] * norms[j])
            rij = min(1.0, max(-1.0, rij))
            r[i, j] = rij
            r[j, i] = rij
    return CorrelationMatrix(r=r, n_obs=z.n_rows, names=list(z.column_names))


def significance(r: float, n_obs: int) -> float:
    """Two-tailed p-value for a Pearson coefficient from n_obs observations.

    Evaluates I_{1 - r^2}(df/2, 1/2) with df = n_obs - 2, the closed
    form of 2 * (1 - F(|t|)) for the associated t statistic.  Returns
    1.0 at r = 0 and 0.0 at |r| = 1.
    """
    if n_obs < 3:
        raise DataError("corrstats: significance needs at least 3 observations")
    if abs(r) > 1.0 + 1e-12:
        raise ValueError(f"corrstats: correlation {r} outside [-1, 1]")
    r = min(1.0, max(-1.0, r))
    x = max(0.0, 1.0 - r * r)
    return betainc_reg((n_obs - 2) / 2.0, 0.5, x)


def student_t_cdf(t: float, df: float) -> float:
    """Cumulative distribution function of Student's t with df degrees.

    Expressed through the regularized incomplete beta function:
    for t >= 0, F(t) = 1 - I_x(df/2, 1/2) / 2 with x = df / (df + t^2),
    and F(-t) = 1 - F(t) by symmetry.
    """
    if df <= 0:
        raise ValueError("corrstats: degrees of freedom must be positive")
    x = df / (df + t * t)
    half_tail = 0.5 * betainc_reg(df / 2.0, 0.5, x)
    return half_tail if t < 0 else 1.0 - half_tail


def angle_deg(r: float) -> float:
    """Angle in degrees between two variables with correlation r.

    The argument is clamped to [-1, 1] so rounding at the extremes
    cannot push arccos out of its domain.
    """
    return math.degrees(math.acos(min(1.0, max(-1.0, r))))


def significance_matrix(c: CorrelationMatrix) -> np.ndarray:
    """Matrix of two-tailed p-values; the diagonal is 0 by convention."""
    n = c.n
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            p = significance(float(c.r[i, j]), c.n_obs)
            out[i, j] = out[j, i] = p
    return out


def angle_matrix(c: CorrelationMatrix) -> np.ndarray:
    """Matrix of inter-variable angles in degrees (diagonal 0)."""
    n = c.n
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            out[i, j] = angle_deg(float(c.r[i, j]))
    return out


def determination_matrix(c: CorrelationMatrix) -> np.ndarray:
    """Matrix of determination coefficients r^2, in [0, 1] (diagonal 1)."""
    return c.r * c.r


def derived_matrices(c: CorrelationMatrix) -> DerivedMatrices:
    """Compute significance, angle, and determination matrices together."""
    return DerivedMatrices(
        names=list(c.names),
        n_obs=c.n_obs,
        p_values=significance_matrix(c),
        angles_deg=angle_matrix(c),
        determination=determination_matrix(c),
    )


def load_correlation_json(path: str | Path) -> CorrelationMatrix:
    """Load a correlation matrix from a JSON document.

    Expected shape: ``{"names": [...], "n_obs": N, "r": [[...], ...]}``
    with a square, symmetric matrix, unit diagonal, and entries in
    [-1, 1].  Symmetry and the diagonal are checked to 1e-12 and then
    snapped exact, so downstream code can rely on them.
    """
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DataError(f"corrstats: cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"corrstats: {path} is not valid JSON: {exc}") from exc

    if not isinstance(doc, dict):
        raise DataError(f"corrstats: {path} must hold a JSON object")
    missing = {"names", "n_obs", "r"} - set(doc)
    if missing:
        raise DataError(f"corrstats: {path} is missing keys: {sorted(missing)}")

    names = doc["names"]
    if (
        not isinstance(names, list)
        or len(names) < 2
        or not all(isinstance(s, str) and s for s in names)
    ):
        raise DataError("corrstats: 'names' must list at least 2 non-empty strings")
    if len(set(names)) != len(names):
        raise DataError("corrstats: duplicate variable names")

    n_obs = doc["n_obs"]
    if not isinstance(n_obs, int) or isinstance(n_obs, bool) or n_obs < 3:
        raise DataError("corrstats: 'n_obs' must be an integer >= 3")

    n = len(names)
    try:
        r = np.array(doc["r"], dtype=np.float64)
    except (TypeError, ValueError):
        raise DataError("corrstats: 'r' must be a numeric matrix") from None
    if r.shape != (n, n):
        raise DataError(f"corrstats: 'r' must be {n}x{n} to match 'names', got {r.shape}")
    if not np.all(np.isfinite(r)):
        raise DataError("corrstats: 'r' contains non-finite entries")
    if np.max(np.abs(r - r.T)) > 1e-12:
        raise DataError("corrstats: 'r' is not symmetric")
    if np.max(np.abs(np.diag(r) - 1.0)) > 1e-12:
        raise DataError("corrstats: 'r' diagonal must be 1")
    if np.max(np.abs(r)) > 1.0 + 1e-12:
        raise DataError("corrstats: 'r' entries must lie in [-1, 1]")

    r = np.clip(r, -1.0, 1.0)
    r = np.triu(r, 1) + np.triu(r, 1).T + np.eye(n)
    return CorrelationMatrix(r=r, n_obs=n_obs, names=list(names))
