"""Mixed-state machinery: minor-extraction matrices, Lambda spectra, the
closed-form concurrence lower bound, its entanglement conversion, the
rows-2=3 example class at N = 3, and PPT checking.

For each canonical index quadruple (i, p, j, q) there is a sparse symmetric
N^2 x N^2 matrix S whose quadratic form on a state vector extracts twice one
2x2 minor of the coefficient matrix.  The four singular values of
``sqrt(rho) @ S @ conj(sqrt(rho))`` (the Lambda spectrum; the rank never
exceeds four) control how small the decomposition average of that minor can
be made, and combining all canonical indices yields a closed-form lower
bound on the decomposition-averaged generalized concurrence D.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadIndex,
    BadShape,
    BadTrace,
    DimensionMismatch,
    NotFormA,
    NotHermitian,
    NotPSD,
    NumericalInconsistency,
    OutOfRange,
    RankViolation,
    UnsupportedFamily,
)
from .linalg import hermitian_eig, sqrt_psd
from .linalg import takagi as takagi_factor
from .purestate import PureState, from_coefficients, generalized_concurrence_D
from .spectra import eof_from_spectrum, eof_of_d

DENSITY_TOL = 1e-10
RANK_EPS = 1e-12
RANK_VIOLATION_TOL = 1e-8
THREADS_ENV = "QCONC_THREADS"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density operator on the N x N bipartite Hilbert space.

    ``matrix`` is N^2 x N^2, Hermitian, positive semidefinite and unit
    trace; basis ordering follows the PureState vectorization (row-major
    over coefficient-matrix indices).
    """

    dim: int
    matrix: np.ndarray


@dataclass(frozen=True)
class SIndex:
    """Canonical index quadruple (i, p, j, q) with i < j, p < q, 1-based."""

    i: int
    p: int
    j: int
    q: int

    def __post_init__(self):
        if min(self.i, self.p, self.j, self.q) < 1:
            raise BadIndex(f"indices must be >= 1, got {self}")
        if not (self.i < self.j and self.p < self.q):
            raise BadIndex(f"canonical form needs i < j and p < q, got {self}")

    @classmethod
    def canonical(cls, i: int, p: int, j: int, q: int) -> "SIndex":
        """Canonicalize any ordered quadruple with i != j and p != q.

        The four orderings (i,p,j,q), (j,q,i,p), (i,q,j,p), (j,p,i,q) select
        the same minor up to sign; exactly one has both pairs increasing.
        """
        if i == j or p == q:
            raise BadIndex(f"need i != j and p != q, got {(i, p, j, q)}")
        if i > j:
            i, p, j, q = j, q, i, p
        if p > q:
            p, q = q, p
        return cls(i, p, j, q)

    def astuple(self) -> tuple[int, int, int, int]:
        return self.i, self.p, self.j, self.q


@dataclass(frozen=True)
class LambdaSpectrum:
    """Top four singular values (descending) of sqrt(rho) S conj(sqrt(rho))."""

    values: tuple[float, float, float, float]

    def deficit(self, clamp: bool = True) -> float:
        """Lambda1 - Lambda2 - Lambda3 - Lambda4, clamped at 0 by default."""
        v = self.values
        d = v[0] - v[1] - v[2] - v[3]
        return max(0.0, d) if clamp else d


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Weighted pure-state ensemble {(p_a, psi_a)} realizing a density matrix."""

    members: tuple[tuple[float, PureState], ...]

    def density(self) -> np.ndarray:
        dim = self.members[0][1].dim
        rho = np.zeros((dim * dim, dim * dim), dtype=complex)
        for p, psi in self.members:
            z = psi.vector()
            rho += p * np.outer(z, z.conj())
        return rho

    def weights(self) -> np.ndarray:
        return np.array([p for p, _ in self.members])


def validate_density(M, N: int, tol: float = DENSITY_TOL) -> DensityMatrix:
    """Validate an N^2 x N^2 array as a density matrix.

    Raises
    ------
    BadShape, NotHermitian, NotPSD, BadTrace
        For the respective violated property (PSD allows eigenvalues down
        to ``-tol``; Hermiticity is relative to the Frobenius norm).
    """
    A = np.asarray(M, dtype=complex)
    if N < 2:
        raise BadShape(f"factor dimension must be >= 2, got {N}")
    if A.shape != (N * N, N * N):
        raise BadShape(f"expected shape {(N * N, N * N)}, got {A.shape}")
    scale = max(np.linalg.norm(A), 1.0)
    if np.linalg.norm(A - A.conj().T) > tol * scale:
        raise NotHermitian("density matrix is not Hermitian within tolerance")
    H = 0.5 * (A + A.conj().T)
    w = np.linalg.eigvalsh(H)
    if w[0] < -tol:
        raise NotPSD(f"minimum eigenvalue {w[0]:.3e} below {-tol}")
    tr = float(np.trace(H).real)
    if abs(tr - 1.0) > tol:
        raise BadTrace(f"trace {tr!r} differs from 1 by more than {tol}")
    return DensityMatrix(N, H)


def pure_density(psi: PureState) -> DensityMatrix:
    """Rank-one density matrix of a pure state."""
    z = psi.vector()
    z = z / np.linalg.norm(z)
    return DensityMatrix(psi.dim, np.outer(z, z.conj()))


def mix_pure_states(weights, states) -> DensityMatrix:
    """Convex mixture of pure states; weights are normalized to sum 1."""
    w = np.asarray(weights, dtype=float)
    if w.size != len(states) or np.any(w < 0.0):
        raise OutOfRange("weights must be nonnegative and match the state count")
    w = w / math.fsum(w.tolist())
    dim = states[0].dim
    rho = np.zeros((dim * dim, dim * dim), dtype=complex)
    for wk, psi in zip(w, states):
        z = psi.vector()
        z = z / np.linalg.norm(z)
        rho += wk * np.outer(z, z.conj())
    return DensityMatrix(dim, 0.5 * (rho + rho.conj().T))


def eigen_vectors_subnormalized(rho: DensityMatrix) -> list[np.ndarray]:
    """Orthogonal eigenvectors scaled so that <v_k|v_k> = eigenvalue.

    Only eigenvalues above 1e-12 contribute; the outer-product sum of the
    returned vectors reconstructs rho within 1e-9.
    """
    w, V = hermitian_eig(rho.matrix)
    out = []
    for k in range(w.size):
        if w[k] > RANK_EPS:
            out.append(np.sqrt(w[k]) * V[:, k])
    return out


def canonical_indices(N: int) -> list[SIndex]:
    """All canonical quadruples for factor dimension N, lexicographic."""
    return [
        SIndex(i, p, j, q)
        for i in range(1, N + 1)
        for j in range(i + 1, N + 1)
        for p in range(1, N + 1)
        for q in range(p + 1, N + 1)
    ]


def s_matrix_raw(i: int, p: int, j: int, q: int, N: int) -> np.ndarray:
    """Minor-extraction matrix for an ordered quadruple, no canonicalization.

    Entries +1 at (p + N(i-1), q + N(j-1)) and its transpose position, -1 at
    (q + N(i-1), p + N(j-1)) and its transpose position (1-based).  Swapping
    p and q (or i and j) negates the matrix; i = j or p = q gives zero.
    """
    for idx in (i, p, j, q):
        if not (1 <= idx <= N):
            raise BadIndex(f"index {idx} outside 1..{N}")
    S = np.zeros((N * N, N * N))
    r1, c1 = N * (i - 1) + p - 1, N * (j - 1) + q - 1
    r2, c2 = N * (i - 1) + q - 1, N * (j - 1) + p - 1
    S[r1, c1] += 1.0
    S[c1, r1] += 1.0
    S[r2, c2] -= 1.0
    S[c2, r2] -= 1.0
    return S


def s_matrix(idx: SIndex, N: int) -> np.ndarray:
    """Minor-extraction matrix for a canonical index quadruple.

    The quadratic form satisfies  <psi| S |psi*> = 2 (a_ip a_jq - a_iq a_jp)*
    for any state with coefficient matrix a.
    """
    return s_matrix_raw(*idx.astuple(), N)


def d_ipjq_pure(psi: PureState, idx: SIndex) -> float:
    """|<psi| S |psi*>| for one canonical index, equal to 2 |minor|.

    Both evaluation routes (the matrix quadratic form and the direct 2x2
    minor of the coefficient matrix) are computed and cross-checked to
    1e-12.
    """
    i, p, j, q = idx.astuple()
    if max(j, q) > psi.dim:
        raise BadIndex(f"index {idx} outside 1..{psi.dim}")
    A = psi.coeffs
    minor = 2.0 * abs(A[i - 1, p - 1] * A[j - 1, q - 1] - A[i - 1, q - 1] * A[j - 1, p - 1])
    z = psi.vector()
    form = abs(np.vdot(z, s_matrix(idx, psi.dim) @ z.conj()))
    if abs(minor - form) > 1e-12:
        raise NumericalInconsistency(
            f"minor form {minor!r} and matrix form {form!r} disagree at {idx}"
        )
    return float(form)


def _lambda_values(R: np.ndarray, S: np.ndarray) -> np.ndarray:
    """All singular values of R S conj(R) for a precomputed Hermitian root R."""
    return np.linalg.svd(R @ S @ R.conj(), compute_uv=False)


def lambda_spectrum(rho: DensityMatrix, idx: SIndex) -> LambdaSpectrum:
    """Top four singular values of sqrt(rho) S conj(sqrt(rho)), descending.

    These coincide with the eigenvalues of
    sqrt( sqrt(rho) S rho* S sqrt(rho) ).  The matrix has rank at most four
    because S has only four nonzero rows; a fifth singular value at or above
    1e-8 signals numerical corruption.

    Raises
    ------
    RankViolation
        If the fifth singular value is >= 1e-8.
    BadIndex
        If the quadruple does not fit the density's dimension.
    """
    N = rho.dim
    if max(idx.j, idx.q) > N:
        raise BadIndex(f"index {idx} outside 1..{N}")
    sv = _lambda_values(sqrt_psd(rho.matrix), s_matrix(idx, N))
    if sv.size > 4 and sv[4] >= RANK_VIOLATION_TOL:
        raise RankViolation(f"fifth singular value {sv[4]:.3e} at index {idx}")
    return LambdaSpectrum(tuple(float(x) for x in sv[:4]))


def tau_matrix(rho: DensityMatrix, idx: SIndex) -> np.ndarray:
    """Complex symmetric matrix tau_kl = <v_k| S |v_l*> over eigenvectors.

    The v_k are the subnormalized eigenvectors of rho; tau's singular
    values equal the Lambda spectrum (padded with zeros).
    """
    vecs = eigen_vectors_subnormalized(rho)
    S = s_matrix(idx, rho.dim)
    V = np.column_stack(vecs)
    tau = V.conj().T @ S @ V.conj()
    return 0.5 * (tau + tau.T)


def optimal_index_decomposition(rho: DensityMatrix, idx: SIndex) -> Decomposition:
    """Decomposition making <w_k| S |w_l*> diagonal with entries Lambda_k.

    Takagi-factorizing tau gives a unitary U with U tau U^T diagonal; the
    ensemble |w_k> = sum_l conj(U_kl) |v_l> then realizes rho and carries the
    Lambda spectrum on its diagonal quadratic forms.
    """
    vecs = eigen_vectors_subnormalized(rho)
    V = np.column_stack(vecs)
    S = s_matrix(idx, rho.dim)
    tau = V.conj().T @ S @ V.conj()
    U, _ = takagi_factor(0.5 * (tau + tau.T))
    W = U.conj() @ V.T
    members = []
    for k in range(W.shape[0]):
        p = float(np.vdot(W[k], W[k]).real)
        if p <= 1e-14:
            continue
        A = (W[k] / np.sqrt(p)).reshape(rho.dim, rho.dim)
        members.append((p, from_coefficients(A, renormalize=True)))
    total = math.fsum(p for p, _ in members)
    members = [(p / total, psi) for p, psi in members]
    return Decomposition(tuple(members))


def _max_workers(n_tasks: int) -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        cap = int(raw)
    except ValueError:
        cap = 1
    return max(1, min(cap, n_tasks))


def d_lower_bound(rho: DensityMatrix, m: int, n: int, clamp: bool = True) -> float:
    """Closed-form lower bound on the decomposition-averaged concurrence D.

    Evaluates (mn/4) sqrt( sum over ordered quadruples of deficit^2 ) where
    deficit = Lambda1 - Lambda2 - Lambda3 - Lambda4 per index.  The four
    order-equivalent quadruples share one Lambda spectrum and quadruples
    with i = j or p = q vanish, so the sum runs over canonical indices with
    weight 4.  With ``clamp`` (the default) each deficit is floored at 0,
    which reproduces the established closed form at N = 2; disabling it
    evaluates the literal signed expression.

    Terms are accumulated with compensated summation in canonical index
    order, so the result does not depend on the evaluation schedule (the
    per-index spectra may be computed in parallel, capped by the
    QCONC_THREADS environment variable).
    """
    if m < 1 or n < 2:
        raise OutOfRange(f"need m >= 1 and n >= 2, got m={m} n={n}")
    N = rho.dim
    R = sqrt_psd(rho.matrix)
    indices = canonical_indices(N)

    def term(idx: SIndex) -> float:
        sv = _lambda_values(R, s_matrix(idx, N))
        if sv.size > 4 and sv[4] >= RANK_VIOLATION_TOL:
            raise RankViolation(f"fifth singular value {sv[4]:.3e} at index {idx}")
        d = sv[0] - sv[1] - sv[2] - sv[3]
        if clamp:
            d = max(0.0, d)
        return 4.0 * d * d

    workers = _max_workers(len(indices))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            terms = list(pool.map(term, indices))
    else:
        terms = [term(idx) for idx in indices]
    return float(m * n / 4.0) * math.sqrt(math.fsum(terms))


def eof_lower_bound(rho: DensityMatrix, m: int, n: int) -> float:
    """Entanglement-of-formation bound E(D) from the clamped D bound.

    n = 2 maps D through the two-eigenvalue curve ``eof_of_d``.  n = 3
    inverts D on the arithmetic-progression family (bisection on the free
    parameter, tolerance 1e-12) and evaluates the spectrum entropy there.
    A clamped bound of 0 gives 0.

    Raises
    ------
    UnsupportedFamily
        For n outside {2, 3}.
    OutOfRange
        If D exceeds the family's maximum beyond roundoff.
    """
    if n not in (2, 3):
        raise UnsupportedFamily(f"no spectrum family for n = {n}")
    d = d_lower_bound(rho, m, n, clamp=True)
    if d <= 0.0:
        return 0.0
    if n == 2:
        if d > 1.0 + 1e-9:
            raise OutOfRange(f"bound {d!r} exceeds the two-eigenvalue maximum 1")
        return eof_of_d(min(d, 1.0), m)

    dmax = 1.0 / math.sqrt(3.0 * m)
    if d > dmax * (1.0 + 1e-9):
        raise OutOfRange(f"bound {d!r} exceeds the arithmetic-family maximum {dmax!r}")
    d = min(d, dmax)
    half = 1.0 / (3.0 * m)

    def curve(v: float) -> float:
        return math.sqrt(max(1.0 - 9.0 * m * m * v * v, 0.0)) / math.sqrt(3.0 * m)

    lo, hi = 0.0, half * (1.0 - 1e-15)
    # curve is strictly decreasing in v on [0, 1/(3m))
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if curve(mid) > d:
            lo = mid
        else:
            hi = mid
    v = 0.5 * (lo + hi)
    values = (half - v, half, half + v)
    return eof_from_spectrum(values, m)


def ppt_check(rho: DensityMatrix) -> tuple[bool, float]:
    """Partial transpose on the second factor and its minimum eigenvalue.

    A negative eigenvalue below -1e-10 certifies entanglement; a
    nonnegative spectrum (is_ppt true) is necessary but not sufficient for
    separability.
    """
    N = rho.dim
    arr = rho.matrix.reshape(N, N, N, N)
    pt = arr.transpose(0, 3, 2, 1).reshape(N * N, N * N)
    w = np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))
    min_eig = float(w[0])
    return min_eig >= -1e-10, min_eig


def form_a_check(rho: DensityMatrix, tol: float = 1e-9) -> bool:
    """Whether rho is supported on N = 3 states with equal rows 2 and 3.

    Every eigenvector with eigenvalue above 1e-12, read as a 3 x 3
    coefficient matrix, must have identical second and third rows within
    ``tol``; equivalently the support lies in the corresponding
    6-dimensional subspace.
    """
    if rho.dim != 3:
        raise DimensionMismatch(f"the rows-2=3 class lives at N = 3, got N = {rho.dim}")
    for v in eigen_vectors_subnormalized(rho):
        A = (v / np.linalg.norm(v)).reshape(3, 3)
        if np.linalg.norm(A[1] - A[2]) > tol:
            return False
    return True


FORM_A_INDICES = (SIndex(1, 1, 2, 2), SIndex(1, 1, 2, 3), SIndex(1, 2, 2, 3))


def example_3x3_bound(rho: DensityMatrix, clamp: bool = True) -> float:
    """Three-term bound sqrt(2) sqrt(sum of squared deficits) on the rows-2=3 class.

    Only the three canonical indices with row pair (1, 2) contribute
    independently on this class: the row-(1,3) spectra duplicate them and
    the row-(2,3) spectra vanish, collapsing the full canonical sum of
    ``d_lower_bound(rho, 1, 2)`` to this expression.  Both must agree to
    1e-10.

    Raises
    ------
    NotFormA
        If the support condition fails.
    """
    if rho.dim != 3 or not form_a_check(rho):
        raise NotFormA("density is not supported on the rows-2=3 subspace")
    R = sqrt_psd(rho.matrix)
    terms = []
    for idx in FORM_A_INDICES:
        sv = _lambda_values(R, s_matrix(idx, 3))
        d = sv[0] - sv[1] - sv[2] - sv[3]
        if clamp:
            d = max(0.0, d)
        terms.append(d * d)
    return float(math.sqrt(2.0) * math.sqrt(math.fsum(terms)))
