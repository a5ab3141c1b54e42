"""Integer-arithmetic substrate: Mobius function, Mertens function, zero set.

Everything downstream consumes Mobius values mu(a) and their prefix sums
M(n) = sum_{a<=n} mu(a), so both are sieved eagerly into one immutable
table.  A smallest-prime-factor (SPF) linear sieve is used: O(limit) time,
and the SPF array doubles as a factorization oracle for tests.

Memory cost per entry: 1 byte (mu, int8) + 4 bytes (SPF, int32) + 4 bytes
(Mertens, int32), about 9 bytes/entry, plus transient Python lists during
construction.  The default hard cap of 10**8 entries keeps a careless call
from exhausting memory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RejectedInputError

DEFAULT_LIMIT_CAP = 10**8


@dataclass(frozen=True)
class MoebiusTable:
    """Sieved Mobius values and Mertens partial sums up to ``limit``.

    Attributes:
        limit: Largest index covered (inclusive).
        mu: int8 array of length limit+1; mu[n] is the Mobius function at n
            for 1 <= n <= limit.  Index 0 is unused and set to 0.
        mertens: int32 array of length limit+1; mertens[n] = sum_{a<=n} mu[a].
        spf: int32 array of length limit+1; smallest prime factor of n
            (spf[1] = 1).  Kept for factorization-based checks.

    The table is immutable after construction and safe to share across
    concurrent readers.
    """

    limit: int
    mu: np.ndarray
    mertens: np.ndarray
    spf: np.ndarray


def moebius_sieve(limit: int, *, max_limit: int = DEFAULT_LIMIT_CAP) -> MoebiusTable:
    """Sieve mu(n) and M(n) for all n <= limit with a linear SPF sieve.

    Args:
        limit: Inclusive upper bound, at least 1.
        max_limit: Hard cap; requests above it are rejected rather than
            attempted (fail fast instead of exhausting memory).

    Returns:
        A fully populated MoebiusTable.

    Raises:
        RejectedInputError: If limit < 1 or limit > max_limit.
    """
    if not isinstance(limit, (int, np.integer)) or isinstance(limit, bool):
        raise RejectedInputError(f"limit must be an integer, got {limit!r}")
    limit = int(limit)
    if limit < 1:
        raise RejectedInputError(f"limit must be >= 1, got {limit}")
    if limit > max_limit:
        raise RejectedInputError(
            f"limit {limit} exceeds configured maximum {max_limit}"
        )

    # Plain Python lists in the hot loop: scalar indexing on ndarrays is
    # several times slower than on lists.
    mu = [0] * (limit + 1)
    spf = [0] * (limit + 1)
    primes: list[int] = []
    mu[1] = 1
    spf[1] = 1
    for i in range(2, limit + 1):
        si = spf[i]
        if si == 0:
            spf[i] = si = i
            primes.append(i)
            mu[i] = -1
        mi = mu[i]
        for p in primes:
            ip = i * p
            if p > si or ip > limit:
                break
            spf[ip] = p
            # p == spf(i) means p^2 | ip; otherwise ip gains one new prime.
            mu[ip] = 0 if p == si else -mi

    mu_arr = np.array(mu, dtype=np.int8)
    mertens = np.cumsum(mu_arr, dtype=np.int64)
    if limit < 2**31:
        mertens = mertens.astype(np.int32)  # |M(n)| <= n, always fits
    spf_arr = np.array(spf, dtype=np.int32)
    mu_arr.setflags(write=False)
    mertens.setflags(write=False)
    spf_arr.setflags(write=False)
    return MoebiusTable(limit=limit, mu=mu_arr, mertens=mertens, spf=spf_arr)


def mertens(table: MoebiusTable, n: int) -> int:
    """Return M(n) = sum_{a<=n} mu(a) from the sieved prefix sums.

    Raises:
        RejectedInputError: If n is outside [1, table.limit].
    """
    n = int(n)
    if n < 1 or n > table.limit:
        raise RejectedInputError(
            f"n={n} out of range [1, {table.limit}] for this table"
        )
    return int(table.mertens[n])


def mertens_zeros(table: MoebiusTable) -> np.ndarray:
    """All n <= limit with M(n) = 0, strictly increasing.

    The zero set indexes the subsequences of the natural approximation
    along which convergence has been conjectured; which of those matter
    is left to the caller.
    """
    zeros = np.flatnonzero(table.mertens[1:] == 0) + 1
    return zeros.astype(np.int64)


def factorize(table: MoebiusTable, n: int) -> list[int]:
    """Prime factorization (with multiplicity) read off the SPF array."""
    n = int(n)
    if n < 1 or n > table.limit:
        raise RejectedInputError(
            f"n={n} out of range [1, {table.limit}] for this table"
        )
    out: list[int] = []
    while n > 1:
        p = int(table.spf[n])
        out.append(p)
        n //= p
    return out
