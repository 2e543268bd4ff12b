"""The Adams E2-term for MSU at odd primes and the generator arithmetic.

E2 = F_p[q_0, q_1, ...] ⊗ PH with q_t in (s, t) = (1, 2p^t - 1) and the
primitive generator Y_n in (0, 2n), n >= 2, n != p^t - 1.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .cobar import (BigradedDims, DEFAULT_SIZE_LIMIT, bigraded_monomial_dims, class_Q,
                    compare_dims, cotor_dims, expected_q_image, quotient_chain_map)
from .comodules import exceptional_index
from .fp import check_odd_prime, partitions_min2


def e2_generators(p: int, t_max: int) -> list[tuple[int, int]]:
    """Generator bidegrees (s, t) of the polynomial E2 model up to internal degree t_max."""
    check_odd_prime(p)
    gens = []
    k = 0
    while 2 * p ** k - 1 <= t_max:
        gens.append((1, 2 * p ** k - 1))
        k += 1
    gens.extend((0, 2 * n) for n in range(2, t_max // 2 + 1) if exceptional_index(n, p) is None)
    return gens


def e2_model_dims(p: int, s_max: int, tms_max: int) -> BigradedDims:
    """Monomial counts of the model for s <= s_max and t - s <= tms_max, keyed by (s, t)."""
    t_max = s_max + tms_max
    full = bigraded_monomial_dims(e2_generators(p, t_max), s_max, t_max)
    entries = {(s, t): d for (s, t), d in full.items() if 0 <= t - s <= tms_max}
    return BigradedDims(entries, {"p": p, "model": "F_p[q_0, q_1, ...] ⊗ PH",
                                  "s_max": s_max, "tms_max": tms_max})


def e2_direct_vs_model(p: int, s_max: int, t_max: int,
                       size_limit: int = DEFAULT_SIZE_LIMIT) -> dict:
    """Cobar Cotor over the full dual algebra with H_*(MSU) coefficients against the model."""
    direct = cotor_dims("full", "MSU", s_max, t_max, p, size_limit)
    model_full = bigraded_monomial_dims(e2_generators(p, t_max), s_max, t_max)
    model = BigradedDims(model_full, {"p": p})
    report = compare_dims(direct, model)
    report["odd_t_minus_s_zero"] = all(
        direct[s, t] == 0 for (s, t) in direct.entries if (t - s) % 2)
    report.update({"p": p, "s_max": s_max, "t_max": t_max})
    return report


def odd_vanishing(p: int, s_max: int, tms_max: int, dims: BigradedDims | None = None) -> bool:
    """True iff every entry with t - s odd is zero (model dims unless ``dims`` is given)."""
    if dims is None:
        dims = e2_model_dims(p, s_max, tms_max)
    return all(d == 0 for (s, t), d in dims.entries.items() if (t - s) % 2)


def column_dims(p: int, n: int, s_max: int) -> list[int]:
    """dim E2^{s, s+2n} for s = 0..s_max."""
    dims = e2_model_dims(p, s_max, 2 * n)
    return [dims[s, s + 2 * n] for s in range(s_max + 1)]


def pi_rank(n: int, primes: tuple[int, ...] = (3, 5)) -> int:
    """Rank of pi_{2n}(MSU) ⊗ Z[1/2]: partitions of n into parts >= 2.

    Also checks that the E2 column t - s = 2n at each prime is nondecreasing
    in s and settles on that count from s = n on.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    rank = partitions_min2(n)
    for p in primes:
        col = column_dims(p, n, n + 2)
        if any(a > b for a, b in zip(col, col[1:])) or any(c != rank for c in col[n:]):
            raise AssertionError(f"E2 column 2n={2 * n} at p={p} is {col}, expected rank {rank}")
    return rank


def prime_power_base(m: int) -> int | None:
    """p if m = p^t for a prime p and t >= 1, else None."""
    if m < 2:
        return None
    q = 2
    while q * q <= m:
        if m % q == 0:
            break
        q += 1
    else:
        return m
    while m % q == 0:
        m //= q
    return q if m == 1 else None


def lam(n: int) -> int:
    """p if n + 1 is a positive power of the prime p, else 1."""
    if n < 1:
        raise ValueError("lambda is defined for n >= 1")
    base = prime_power_base(n + 1)
    return base if base is not None else 1


def odd_part(m: int) -> int:
    while m and m % 2 == 0:
        m //= 2
    return m


@dataclass
class GeneratorReport:
    n: int
    lambda_n: int
    lambda_nm1: int
    sn_odd_part: int
    square: dict
    sign: str = "+-"

    def to_json(self) -> dict:
        return asdict(self)


def sn_report(n: int) -> GeneratorReport:
    """Milnor genus of the polynomial generator y_n (up to sign and powers of 2)."""
    if n < 2:
        raise ValueError("sn_report needs n >= 2")
    ln, lm = lam(n), lam(n - 1)
    # y_n -> lambda_{n-1} x_n -> lambda_n X_n  versus  y_n -> lambda_n Y_n -> lambda_{n-1} X_n
    square = {"top": lm, "left": ln, "right": ln, "bottom": lm}
    if square["top"] * square["right"] != square["left"] * square["bottom"]:
        raise AssertionError(f"coefficient square does not commute at n={n}")
    return GeneratorReport(n, ln, lm, odd_part(ln * lm), square)


def expected_sn_odd_part(n: int) -> int:
    """Odd prime p when n = p^t or n = p^t - 1, else 1."""
    for m in (n, n + 1):
        base = prime_power_base(m)
        if base is not None and base != 2:
            return base
    return 1


def q_image_check(t: int, p: int, comodule: str = "APrime_tensor_PH") -> bool:
    """Whether the Lambda[tau_0] projection of class_Q(t) is [tau_0]·conj(xi_t)."""
    check_odd_prime(p)
    return quotient_chain_map(class_Q(t, p, comodule)) == expected_q_image(t, p, comodule)

