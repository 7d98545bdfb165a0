"""Path entropies: operator entropy, measure entropy, Markov rate.

A multiindex ``j = (j_0..j_N)`` over the blocks of a partition selects
the alternating product ``pi_{X_{j_N}} U ... U pi_{X_{j_0}}`` (rightmost
factor acts first).  The operator entropy at horizon N sums
``-v log v`` over the squared partition norms v of these products; the
measure entropy of a map F does the same with the masses of the
itinerary sets ``F^(-N)(X_{j_N}) cap ... cap X_{j_0}``, computed by
direct preimage intersections, never through matrices.

Natural logarithm throughout; ``0 log 0 = 0`` by explicit branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapExceeded
from .operators import Endomorphism, OperatorMatrix, projector, unitarity_defect
from .spaces import Partition

__all__ = [
    "DEFAULT_TERM_CAP",
    "EntropyReport",
    "path_operator",
    "path_mass_table",
    "path_mass_total",
    "quantum_entropy_at",
    "quantum_entropy_rate",
    "quantum_entropy_closed",
    "ks_entropy_at",
    "ks_path_measure_table",
    "markov_entropy_rate",
]

DEFAULT_TERM_CAP = 10**6

UNITARITY_TOL = 1e-8


def _check_term_cap(num_blocks: int, n: int, term_cap: int) -> int:
    total = num_blocks ** (n + 1)
    if total > term_cap:
        raise CapExceeded(
            f"enumeration needs {total} multiindex terms "
            f"({num_blocks} blocks, horizon {n}); cap is {term_cap}"
        )
    return total


def _check_inputs(u: OperatorMatrix, chi: Partition) -> None:
    if chi.size != u.space.size:
        raise ValueError("partition does not match the operator's space")


def path_operator(u: OperatorMatrix, chi: Partition, digits: Sequence[int]) -> OperatorMatrix:
    """Alternating projector/operator product selected by a multiindex.

    ``digits = (j_0..j_N)`` yields ``pi_{X_{j_N}} U ... U pi_{X_{j_0}}``
    with N copies of U; a single digit gives the bare block projector.
    """
    _check_inputs(u, chi)
    digits = [int(d) for d in digits]
    if not digits:
        raise ValueError("multiindex must have at least one digit")
    for d in digits:
        if d < 0 or d >= len(chi.blocks):
            raise ValueError(f"digit {d} out of range for a partition with {len(chi.blocks)} blocks")
    projs = [projector(u.space, b).entries for b in chi.blocks]
    acc = projs[digits[0]]
    for d in digits[1:]:
        acc = projs[d] @ (u.entries @ acc)
    return OperatorMatrix(u.space, acc)


def _iter_path_masses(u: OperatorMatrix, chi: Partition, n: int):
    """Yield ``(digits, squared partition norm)`` over all multiindices.

    Depth-first with shared prefix products; exact zero prefixes are
    pruned (all their completions have mass 0, contributing nothing).
    """
    space = u.space
    projs = [projector(space, b).entries for b in chi.blocks]
    num_blocks = len(projs)
    row_w = space.weights

    def mass(matrix: np.ndarray) -> float:
        return float(np.sum(row_w * np.sum(np.abs(matrix) ** 2, axis=1)))

    stack: list[tuple[tuple[int, ...], np.ndarray]] = [
        ((b,), projs[b]) for b in range(num_blocks - 1, -1, -1)
    ]
    while stack:
        digits, prefix = stack.pop()
        if not prefix.any():
            continue
        if len(digits) == n + 1:
            yield digits, mass(prefix)
            continue
        step = u.entries @ prefix
        for b in range(num_blocks - 1, -1, -1):
            stack.append((digits + (b,), projs[b] @ step))


def path_mass_table(u: OperatorMatrix, chi: Partition, n: int,
                    term_cap: int = DEFAULT_TERM_CAP) -> dict[tuple[int, ...], float]:
    """All path masses at horizon n, keyed by multiindex (pruned zeros omitted)."""
    _check_inputs(u, chi)
    _check_term_cap(len(chi.blocks), n, term_cap)
    return dict(_iter_path_masses(u, chi, n))


def path_mass_total(u: OperatorMatrix, chi: Partition, n: int,
                    term_cap: int = DEFAULT_TERM_CAP) -> float:
    """Sum of all path masses at horizon n.

    For a unitary this equals 1 at every partition and every horizon:
    summing a block digit over its atoms and then over blocks restores
    the full orthonormality relation, so all cross terms cancel.  The
    enumeration is exposed so the identity is checked, not assumed.
    """
    _check_inputs(u, chi)
    _check_term_cap(len(chi.blocks), n, term_cap)
    return float(sum(v for _, v in _iter_path_masses(u, chi, n)))


def quantum_entropy_at(u: OperatorMatrix, chi: Partition, n: int,
                       term_cap: int = DEFAULT_TERM_CAP) -> float:
    """Operator path entropy ``-sum_j v_j log v_j`` at horizon n (N copies of U)."""
    _check_inputs(u, chi)
    if n < 0:
        raise ValueError("horizon must be nonnegative")
    _check_term_cap(len(chi.blocks), n, term_cap)
    acc = 0.0
    for _, v in _iter_path_masses(u, chi, n):
        if v > 0.0:
            acc -= v * math.log(v)
    return acc


@dataclass(frozen=True)
class EntropyReport:
    """Per-horizon entropy values and the derived rate estimates.

    ``lengths[i]`` is the path length (number of digits) of ``values[i]``;
    ``rates`` divides by the path length; ``differences`` are the
    successive increments, reported instead of an extrapolated limit.
    ``closed_form`` carries the single-step rate formula when the
    operator admits it (unitary on a uniform space), else None.
    """

    lengths: tuple[int, ...]
    values: tuple[float, ...]
    rates: tuple[float, ...]
    differences: tuple[float, ...]
    closed_form: float | None

    def to_dict(self, log_base: str = "e") -> dict:
        conv = 1.0 if log_base == "e" else 1.0 / math.log(2.0)
        return {
            "lengths": list(self.lengths),
            "values": [v * conv for v in self.values],
            "rates": [r * conv for r in self.rates],
            "differences": [d * conv for d in self.differences],
            "closed_form": None if self.closed_form is None else self.closed_form * conv,
            "unit": "nats" if log_base == "e" else "bits",
        }


def quantum_entropy_rate(u: OperatorMatrix, chi: Partition, n_max: int,
                         term_cap: int = DEFAULT_TERM_CAP) -> EntropyReport:
    """Entropy values for horizons 0..n_max with rates and differences.

    No extrapolation is performed: the successive differences are the
    rate estimate, and convergence is left for the caller to judge.
    """
    _check_inputs(u, chi)
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    _check_term_cap(len(chi.blocks), n_max, term_cap)
    values = [quantum_entropy_at(u, chi, n, term_cap) for n in range(n_max + 1)]
    lengths = [n + 1 for n in range(n_max + 1)]
    rates = [v / length for v, length in zip(values, lengths)]
    diffs = [values[i + 1] - values[i] for i in range(n_max)]
    try:
        closed = quantum_entropy_closed(u)
    except ValueError:
        closed = None
    return EntropyReport(tuple(lengths), tuple(values), tuple(rates), tuple(diffs), closed)


def quantum_entropy_closed(u: OperatorMatrix) -> float:
    """Single-step entropy rate of a unitary on a uniform space.

    ``-(1/J) sum_{a,b} |U_ab|^2 log |U_ab|^2`` with the 0 log 0 = 0
    convention.  Requires a uniform space and unitarity within 1e-8.
    """
    if not u.space.is_uniform():
        raise ValueError("closed entropy formula requires a uniform space")
    defect = unitarity_defect(u)
    if defect > UNITARITY_TOL:
        raise ValueError(f"operator is not unitary (defect {defect:.3e} > {UNITARITY_TOL:g})")
    p = np.abs(u.entries) ** 2
    nz = p > 0.0
    return float(-np.sum(p[nz] * np.log(p[nz])) / u.space.size)


def _block_masks(chi: Partition) -> np.ndarray:
    masks = np.zeros((len(chi.blocks), chi.size), dtype=bool)
    for b, block in enumerate(chi.blocks):
        masks[b, list(block)] = True
    return masks


def _iter_itinerary_masses(endo: Endomorphism, chi: Partition, n: int):
    """Yield ``(digits, measure)`` of nonempty itinerary sets.

    The set for digits (j_0..j_N) is the intersection of the n-step
    preimages ``F^(-n)(X_{j_n})``; empty intersections are pruned.
    """
    space = endo.space
    masks = _block_masks(chi)
    num_blocks = masks.shape[0]
    # preimages[s][b] is the mask of the s-step preimage of block b
    preimages = []
    table_s = np.arange(space.size)
    for _ in range(n + 1):
        preimages.append(masks[:, table_s])
        table_s = endo.table[table_s]

    stack: list[tuple[tuple[int, ...], np.ndarray]] = [
        ((b,), preimages[0][b]) for b in range(num_blocks - 1, -1, -1)
    ]
    while stack:
        digits, current = stack.pop()
        if not current.any():
            continue
        if len(digits) == n + 1:
            yield digits, float(space.weights[current].sum())
            continue
        depth = len(digits)
        for b in range(num_blocks - 1, -1, -1):
            stack.append((digits + (b,), current & preimages[depth][b]))


def ks_entropy_at(endo: Endomorphism, chi: Partition, n: int,
                  term_cap: int = DEFAULT_TERM_CAP) -> float:
    """Measure entropy of the itinerary sets of F at horizon n."""
    if chi.size != endo.space.size:
        raise ValueError("partition does not match the endomorphism's space")
    if n < 0:
        raise ValueError("horizon must be nonnegative")
    _check_term_cap(len(chi.blocks), n, term_cap)
    acc = 0.0
    for _, v in _iter_itinerary_masses(endo, chi, n):
        if v > 0.0:
            acc -= v * math.log(v)
    return acc


def ks_path_measure_table(endo: Endomorphism, chi: Partition, n: int,
                          term_cap: int = DEFAULT_TERM_CAP) -> dict[tuple[int, ...], float]:
    """Itinerary-set measures keyed by multiindex (empty sets omitted)."""
    if chi.size != endo.space.size:
        raise ValueError("partition does not match the endomorphism's space")
    _check_term_cap(len(chi.blocks), n, term_cap)
    return dict(_iter_itinerary_masses(endo, chi, n))


def markov_entropy_rate(p, nu) -> float:
    """Entropy rate ``-sum_{j,k} nu_j P_jk log P_jk`` of a Markov chain.

    ``p`` must be row-stochastic within 1e-10 and ``nu`` a probability
    vector; ``nu`` is used as given (typically a stationary distribution).
    """
    pm = np.asarray(p, dtype=float)
    if pm.ndim != 2 or pm.shape[0] != pm.shape[1]:
        raise ValueError("transition matrix must be square")
    if np.any(pm < -1e-12):
        raise ValueError("transition matrix has a negative entry")
    row_dev = np.max(np.abs(pm.sum(axis=1) - 1.0))
    if row_dev > 1e-10:
        raise ValueError(f"rows must sum to 1 within 1e-10; worst deviation {row_dev:.3e}")
    nv = np.asarray(nu, dtype=float)
    if nv.shape != (pm.shape[0],):
        raise ValueError("distribution length does not match the matrix")
    if np.any(nv < -1e-12) or abs(float(nv.sum()) - 1.0) > 1e-9:
        raise ValueError("nu must be a probability distribution")
    pm = np.clip(pm, 0.0, None)
    nz = pm > 0.0
    terms = np.zeros_like(pm)
    terms[nz] = pm[nz] * np.log(pm[nz])
    return float(-np.sum(nv * terms.sum(axis=1)))
