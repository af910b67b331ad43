import numpy as np

from qconc import DensityMatrix, generator, mix_pure_states, random_pure

CRITERION_LINES = []


def record_criterion(num, label, ok, elapsed, budget):
    """Collect one acceptance line; echoed after the run summary."""
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {num}: {label} ({elapsed:.1f}s of {budget:.0f}s budget)"
    CRITERION_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)


def random_density(dim, rank, seed, *key):
    """Random rank-limited density matrix as a mixture of pure states."""
    states = [random_pure(dim, generator(seed, *key, k)) for k in range(rank)]
    if rank == 1:
        weights = [1.0]
    else:
        rng = generator(seed, *key, rank)
        weights = rng.dirichlet(np.ones(rank)).tolist()
    return mix_pure_states(weights, states)


def random_separable_density(dim, terms, seed, *key):
    """Convex mixture of product states; PPT by construction."""
    def local_vector(rng):
        z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        return z / np.linalg.norm(z)

    mats = []
    weights = []
    rng = generator(seed, *key)
    for _ in range(terms):
        vec = np.kron(local_vector(rng), local_vector(rng))
        mats.append(np.outer(vec, vec.conj()))
        weights.append(rng.random())
    total = sum(weights)
    out = sum((w / total) * m for w, m in zip(weights, mats))
    return DensityMatrix(dim=dim, matrix=out)
