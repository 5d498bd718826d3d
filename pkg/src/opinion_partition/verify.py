"""Numerical checks of the structural properties of an influence system.

Each check returns a :class:`Check` so callers (the ``verify`` command and
the test-suite) can report pass/fail per property.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import chain_period, markov_classify
from .spectral import InfluenceSystem, SpectralDecomposition

TOL = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    detail: str = ""


def single_zero_eigenvalue(dec: SpectralDecomposition, tol: float = TOL) -> Check:
    lam = dec.eigenvalues
    zeros = int(np.sum(np.abs(lam) <= tol))
    rest = lam[np.abs(lam) > tol]
    ok = zeros == 1 and bool(np.all(rest > tol))
    gap = float(rest.min()) if rest.size else float("nan")
    return Check("one_zero_eigenvalue", ok, gap, f"{zeros} zero eigenvalue(s), next {gap:.3e}")


def real_spectrum(system: InfluenceSystem, tol: float = TOL) -> Check:
    """Eigenvalues of abar from a general nonsymmetric solver have no imaginary part."""
    imag = float(np.max(np.abs(np.linalg.eigvals(system.abar).imag)))
    return Check("real_spectrum", imag <= tol, imag, f"max |Im| = {imag:.3e}")


def diagonalizable(system: InfluenceSystem, dec: SpectralDecomposition, tol: float = TOL) -> Check:
    u = dec.right_vectors
    recon = u @ np.diag(dec.abar_eigenvalues) @ np.linalg.inv(u)
    err = float(np.max(np.abs(recon - system.abar)))
    return Check("diagonalizable", err <= tol, err, f"reconstruction error {err:.3e}")


def aperiodicity_matches_period(system: InfluenceSystem) -> Check:
    by_eig = markov_classify(system)["aperiodic"]
    period = chain_period(system.abar.T)
    ok = by_eig == (period == 1)
    return Check(
        "aperiodic_iff_no_minus_one", ok, float(period),
        f"eigenvalue test aperiodic={by_eig}, combinatorial period={period}",
    )


def biorthonormal(dec: SpectralDecomposition, tol: float = TOL) -> Check:
    err = float(np.max(np.abs(dec.left_vectors.T @ dec.right_vectors - np.eye(dec.n))))
    return Check("biorthonormal", err <= tol, err, f"max |V'U - I| = {err:.3e}")


def row_stochastic(system: InfluenceSystem, tol: float = 1e-12) -> Check:
    err = float(np.max(np.abs(system.abar.sum(axis=1) - 1.0)))
    return Check("row_stochastic", err <= tol, err, f"max row-sum error {err:.3e}")


def similarity(system: InfluenceSystem, tol: float = 1e-10) -> Check:
    p = system.p_diag
    err = float(np.max(np.abs(p[:, None] * system.abar / p[None, :] - system.s_matrix)))
    return Check("similarity", err <= tol, err, f"max |P abar P^-1 - S| = {err:.3e}")


def run_all(system: InfluenceSystem, dec: SpectralDecomposition) -> list[Check]:
    return [
        single_zero_eigenvalue(dec),
        real_spectrum(system),
        diagonalizable(system, dec),
        aperiodicity_matches_period(system),
        biorthonormal(dec),
        row_stochastic(system),
        similarity(system),
    ]
