"""Index bookkeeping: symmetric-power Euler characteristics and stratum degrees.

The degrees d_lambda are the unknowns of a triangular linear system built
from 0-1 matrix counts.  Solving it once per (genus, n) lets any
characteristic-cycle series be checked against the Euler characteristics
of the symmetric powers, degree by degree.
"""

from __future__ import annotations

from functools import lru_cache

from .combinat import compositions, conjugate, count_m, gen_binomial, partitions
from .errors import ArgumentError, ConsistencyError
from .geometry import sheaf_euler_characteristic
from .series import CycleSeries
from .sheaves import SheafDescriptor, s_tame

__all__ = [
    "chi_sym_powers",
    "index_matrix",
    "infer_degrees",
    "verify_series_index",
    "index_check",
]


def chi_sym_powers(chi: int, max_degree: int) -> list[int]:
    """Euler characteristics of the symmetric powers of a space with the given chi.

    These are the coefficients of (1-t)^(-chi):

    >>> chi_sym_powers(2, 4)
    [1, 2, 3, 4, 5]
    >>> chi_sym_powers(-2, 4)
    [1, -2, 1, 0, 0]
    """
    if not isinstance(chi, int) or isinstance(chi, bool):
        raise ArgumentError(f"chi must be an integer, got {chi!r}")
    if not isinstance(max_degree, int) or isinstance(max_degree, bool) or max_degree < 0:
        raise ArgumentError(f"max_degree must be a nonnegative integer, got {max_degree!r}")
    out = []
    for n in range(max_degree + 1):
        sign = -1 if n % 2 else 1
        out.append(sign * gen_binomial(-chi, n))
    return out


def index_matrix(n: int) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    """Partitions of ``n`` (largest part first) and the matrix of 0-1 matrix counts.

    Entry (i, j) counts 0-1 matrices with row sums conjugate to the i-th
    partition and column sums the j-th partition.  The result is upper
    triangular with unit diagonal, which is re-verified on every call.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ArgumentError(f"n must be a nonnegative integer, got {n!r}")
    lams = list(partitions(n))
    matrix = [[count_m(conjugate(lams[i]), lams[j]) for j in range(len(lams))] for i in range(len(lams))]
    for i in range(len(lams)):
        if matrix[i][i] != 1:
            raise ConsistencyError(f"diagonal entry for {lams[i]} is {matrix[i][i]}, expected 1")
        for j in range(i):
            if matrix[i][j] != 0:
                raise ConsistencyError(
                    f"entry ({lams[i]}, {lams[j]}) below the diagonal is {matrix[i][j]}"
                )
    return lams, matrix


def _chi_product(chi_values: list[int], parts: tuple[int, ...], n: int) -> int:
    sign = -1 if n % 2 else 1
    out = sign
    for p in parts:
        out *= chi_values[p]
    return out


@lru_cache(maxsize=None)
def _infer_degrees_cached(genus: int, n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    chi_values = chi_sym_powers(2 - 2 * genus, n)
    lams, matrix = index_matrix(n)
    y: list[int] = []
    for j, mu in enumerate(lams):
        val = _chi_product(chi_values, mu, n)
        for i in range(j):
            val -= matrix[i][j] * y[i]
        y.append(val)
    degrees = {conjugate(lams[i]): y[i] for i in range(len(lams))}
    # the defining relations hold for every composition, not only the
    # sorted ones; re-check the full overdetermined system
    for mu in compositions(n):
        lhs = sum(count_m(lam, mu) * degrees[lam] for lam in lams)
        rhs = _chi_product(chi_values, mu, n)
        if lhs != rhs:
            raise ConsistencyError(
                f"degree relations fail at genus {genus} for column sums {mu}: {lhs} != {rhs}"
            )
    return tuple(sorted(degrees.items()))


def infer_degrees(genus: int, n: int) -> dict[tuple[int, ...], int]:
    """Stratum degree d_lambda for every partition of ``n`` on a genus-g curve.

    Solved by forward substitution from the triangular count matrix, then
    re-verified against the relations for all compositions of ``n``.

    >>> infer_degrees(0, 1)
    {(1,): -2}
    >>> infer_degrees(2, 2)
    {(1, 1): 1, (2,): 2}
    """
    if not isinstance(genus, int) or isinstance(genus, bool) or genus < 0:
        raise ArgumentError(f"genus must be a nonnegative integer, got {genus!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ArgumentError(f"n must be a nonnegative integer, got {n!r}")
    return dict(_infer_degrees_cached(genus, n))


def verify_series_index(series: CycleSeries, chi_values: list[int], genus: int) -> bool:
    """Check a cycle series against prescribed Euler characteristics.

    In each degree the series coefficient is paired with the stratum
    degrees: every term tau[delta; e] contributes its coefficient times
    d_{lambda(e)}, and the total must equal the prescribed value.  Raises
    ConsistencyError at the first failing degree, returns True otherwise.
    """
    if len(chi_values) < series.max_degree + 1:
        raise ArgumentError(
            f"need {series.max_degree + 1} chi values, got {len(chi_values)}"
        )
    for n in range(series.max_degree + 1):
        total = 0
        for basis, coeff in series.coefficient(n).terms():
            lam = basis.e.to_partition()
            total += coeff * infer_degrees(genus, basis.e.weight)[lam]
        if total != chi_values[n]:
            raise ConsistencyError(
                f"index mismatch at degree {n}: cycle side {total}, expected {chi_values[n]}"
            )
    return True


def index_check(genus: int, sheaf: SheafDescriptor, max_degree: int) -> bool:
    """End-to-end index test for a tame sheaf on a genus-g curve.

    Builds the characteristic-cycle series, the Euler characteristics of
    the symmetric powers of the sheaf, and confirms they agree through
    the stratum degrees.
    """
    series = s_tame(sheaf.rank, sheaf.drops, max_degree)
    chi = sheaf_euler_characteristic(genus, sheaf)
    return verify_series_index(series, chi_sym_powers(chi, max_degree), genus)
