"""Reference computations used only by the tests.

Each routine takes a different route from the library: explicit index
loops instead of tensor reshapes, numpy's LAPACK eigensolvers instead of the
Jacobi solver, and the amplitude hyperdeterminant instead of the residual
tangle.
"""
import itertools

import numpy as np

SY = np.array([[0, -1j], [1j, 0]])


def bits(index, n):
    return [(index >> (n - 1 - k)) & 1 for k in range(n)]


def branch_sum_partial_trace(psi, n, keep):
    """Reduced density matrix by summing over every traced-out branch."""
    keep = sorted(keep)
    traced = [q for q in range(n) if q not in keep]
    dk = 2 ** len(keep)
    out = np.zeros((dk, dk), dtype=complex)

    def full_index(kept_bits, traced_bits):
        b = [0] * n
        for q, v in zip(keep, kept_bits):
            b[q] = v
        for q, v in zip(traced, traced_bits):
            b[q] = v
        return int("".join(map(str, b)), 2)

    for i, j in itertools.product(range(dk), repeat=2):
        bi, bj = bits(i, len(keep)), bits(j, len(keep))
        for tb in itertools.product((0, 1), repeat=len(traced)):
            out[i, j] += psi[full_index(bi, tb)] * np.conj(psi[full_index(bj, tb)])
    return out


def hyperdet_tangle(psi):
    """3-tangle as ``4 |d1 - 2 d2 + 4 d3|`` on the eight amplitudes."""
    a = {format(k, "03b"): psi[k] for k in range(8)}
    d1 = (a["000"] ** 2 * a["111"] ** 2 + a["001"] ** 2 * a["110"] ** 2
          + a["010"] ** 2 * a["101"] ** 2 + a["100"] ** 2 * a["011"] ** 2)
    d2 = (a["000"] * a["111"] * a["011"] * a["100"]
          + a["000"] * a["111"] * a["101"] * a["010"]
          + a["000"] * a["111"] * a["110"] * a["001"]
          + a["011"] * a["100"] * a["101"] * a["010"]
          + a["011"] * a["100"] * a["110"] * a["001"]
          + a["101"] * a["010"] * a["110"] * a["001"])
    d3 = (a["000"] * a["110"] * a["101"] * a["011"]
          + a["111"] * a["001"] * a["010"] * a["100"])
    return 4 * abs(d1 - 2 * d2 + 4 * d3)


def wootters_lapack(rho):
    """Concurrence from the non-Hermitian eigenproblem of ``rho rho~``."""
    yy = np.kron(SY, SY)
    r = rho @ yy @ rho.conj() @ yy
    ev = np.sort(np.sqrt(np.clip(np.linalg.eigvals(r).real, 0, None)))[::-1]
    return max(0.0, ev[0] - ev[1] - ev[2] - ev[3])


def w_class_pair_concurrence(a, b):
    """For ``a|100> + b|010> + c|001>`` the pair concurrence is ``2|ab|``."""
    return 2 * abs(a * b)


def haar_state(rng, dim):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def haar_unitary(rng, dim):
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / abs(d))


def apply_by_loops(u, target, psi, n):
    """Single-qubit gate by iterating over index pairs."""
    out = np.zeros_like(psi)
    for idx in range(2 ** n):
        b = bits(idx, n)
        for new in (0, 1):
            nb = list(b)
            nb[target] = new
            out[int("".join(map(str, nb)), 2)] += u[new, b[target]] * psi[idx]
    return out
