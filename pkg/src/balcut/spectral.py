"""Deterministic spectral certificates.

``lambda2_normalized`` computes the second-smallest eigenvalue of the
normalized Laplacian with a deflated Lanczos iteration (fixed start vector,
full reorthogonalization), so runs are reproducible.  By Cheeger's
inequality ``Phi(G) >= lambda2 / 2``, and since ``Psi_G(S) >= Phi_G(S)``
for every cut, the same value lower-bounds graph sparsity.  Tests verify
the iteration against a dense eigensolver.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .graph import MultiGraph, is_connected


def adjacency_matrix(g: MultiGraph) -> sp.csr_matrix:
    """Sparse adjacency with parallel-edge multiplicities; loops count twice."""
    rows, cols, vals = [], [], []
    for u, v in g.edges:
        if u == v:
            rows.append(u)
            cols.append(u)
            vals.append(2.0)
        else:
            rows.extend((u, v))
            cols.extend((v, u))
            vals.extend((1.0, 1.0))
    return sp.csr_matrix(
        (np.array(vals), (np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64))),
        shape=(g.n, g.n),
    )


def _start_vector(n: int) -> np.ndarray:
    # Fixed, seedless, full-support start vector.
    idx = np.arange(n, dtype=np.float64)
    return np.cos(0.7 * idx + 0.3) + 1e-3 * (idx % 7)


def lambda2_normalized(g: MultiGraph, tol: float = 1e-10, max_iter: int = 400) -> float:
    """Second-smallest eigenvalue of I - D^{-1/2} A D^{-1/2}.

    Returns 0.0 for disconnected graphs (lambda2 is genuinely 0 there) and
    for graphs with fewer than two vertices.
    """
    n = g.n
    if n < 2 or g.m == 0 or not is_connected(g):
        return 0.0
    deg = np.array(g.degrees(), dtype=np.float64)
    a = adjacency_matrix(g)
    dinv = 1.0 / np.sqrt(deg)

    def matvec(x: np.ndarray) -> np.ndarray:
        return x - dinv * (a @ (dinv * x))

    # Exact kernel vector of the normalized Laplacian: D^{1/2} 1.
    v1 = np.sqrt(deg)
    v1 /= np.linalg.norm(v1)

    q = _start_vector(n)
    q -= v1 * (v1 @ q)
    q /= np.linalg.norm(q)

    from scipy.linalg import eigh_tridiagonal

    steps = min(max_iter, n - 1)
    basis = np.empty((steps + 1, n))
    basis[0] = q
    alphas: list[float] = []
    betas: list[float] = []
    theta = None
    for k in range(steps):
        w = matvec(basis[k])
        alpha = float(basis[k] @ w)
        alphas.append(alpha)
        w -= alpha * basis[k]
        if k > 0:
            w -= betas[-1] * basis[k - 1]
        # Full reorthogonalization (also re-deflates the kernel vector).
        w -= v1 * (v1 @ w)
        w -= basis[: k + 1].T @ (basis[: k + 1] @ w)
        beta = float(np.linalg.norm(w))
        last = beta < 1e-14 or k == steps - 1
        if last or k % 8 == 7:
            if k == 0:
                evals = np.array([alphas[0]])
                evecs = np.array([[1.0]])
            else:
                evals, evecs = eigh_tridiagonal(
                    np.array(alphas), np.array(betas),
                    select="i", select_range=(0, 0),
                )
            new_theta = float(evals[0])
            residual = beta * abs(float(evecs[-1, 0]))
            if last or residual < tol:
                return max(new_theta, 0.0)
            theta = new_theta
        betas.append(beta)
        basis[k + 1] = w / beta
    return max(theta if theta is not None else 0.0, 0.0)


def cheeger_floor(g: MultiGraph) -> float:
    """lambda2/2: a conductance (hence sparsity) lower bound for every cut."""
    return lambda2_normalized(g) / 2.0
