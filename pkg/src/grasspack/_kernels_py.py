"""Pure numpy implementations of the optimizer's inner-loop kernels.

Used when the compiled ``_ckernels`` extension is not available; the two
must agree to rounding.  Generators are stacked as ``Y`` with shape
``(N, n, m)`` and orthonormal rows per block.
"""

import numpy as np


def chordal_sq_matrix(Y):
    """N x N matrix of n - ||Y_i Y_j^T||_F^2 (zero diagonal)."""
    N, n, _ = Y.shape
    M = np.einsum("ian,jbn->ijab", Y, Y)
    D = n - np.einsum("ijab,ijab->ij", M, M)
    np.fill_diagonal(D, 0.0)
    return D


def softmin_chordal(Y, beta):
    """Softmin of pairwise d_c^2 and its gradient with respect to ``Y``.

    Returns ``(value, grad, dmin)`` where value = -(1/beta) log sum_{i<j}
    exp(-beta d_ij^2) and dmin is the true minimum.
    """
    N, n, _ = Y.shape
    M = np.einsum("ian,jbn->ijab", Y, Y)
    D = n - np.einsum("ijab,ijab->ij", M, M)
    iu, ju = np.triu_indices(N, 1)
    d = D[iu, ju]
    dmin = d.min()
    e = np.exp(-beta * (d - dmin))
    total = e.sum()
    value = dmin - np.log(total) / beta
    W = np.zeros((N, N))
    W[iu, ju] = e / total
    W += W.T
    # d(d_ij^2)/dY_i = -2 (Y_i Y_j^T) Y_j
    grad = -2.0 * np.einsum("ij,ijab,jbn->ian", W, M, Y)
    return value, grad, dmin


def project_tangent(Y, G):
    """Remove the component of G that only rotates rows inside each span."""
    return G - (G @ Y.transpose(0, 2, 1)) @ Y


def orthonormalize_rows(Y):
    """Modified Gram-Schmidt on the rows of each block."""
    Q = np.array(Y, dtype=float, copy=True)
    n = Q.shape[1]
    for a in range(n):
        for b in range(a):
            proj = np.sum(Q[:, a, :] * Q[:, b, :], axis=1)
            Q[:, a, :] -= proj[:, None] * Q[:, b, :]
        norm = np.sqrt(np.sum(Q[:, a, :] * Q[:, a, :], axis=1))
        Q[:, a, :] /= norm[:, None]
    return Q
