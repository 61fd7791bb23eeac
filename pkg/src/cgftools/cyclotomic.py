"""Number-theoretic helpers and cyclotomic polynomials."""
from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from functools import lru_cache

from .polyring import IntPoly, poly_divexact, poly_mul

__all__ = [
    "NTProfile",
    "factorize",
    "divisors",
    "euler_phi",
    "mobius",
    "jordan",
    "nt_profile",
    "cyclo",
    "q_int",
    "cyclo_rational",
    "indices_with_totient_at_most",
    "is_prime",
    "is_prime_power",
]


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as ``((p, e), ...)`` by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n):
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def euler_phi(n: int) -> int:
    r = n
    for p, _ in factorize(n):
        r = r // p * (p - 1)
    return r


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def jordan(d: int, n: int) -> int:
    """Jordan totient ``J_d(n) = n^d prod_{p | n} (1 - p^-d)``."""
    r = n**d
    for p, _ in factorize(n):
        r = r // p**d * (p**d - 1)
    return r


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factorize(n)) == 1


@dataclass(frozen=True)
class NTProfile:
    n: int
    euler_phi: int
    mobius: int
    jordan: dict[int, int] = field(default_factory=dict)


def nt_profile(n: int, max_d: int = 1) -> NTProfile:
    if n < 1:
        raise ValueError("n must be positive")
    return NTProfile(
        n=n,
        euler_phi=euler_phi(n),
        mobius=mobius(n),
        jordan={d: jordan(d, n) for d in range(1, max_d + 1)},
    )


_cache: dict[int, IntPoly] = {}
_cache_lock = threading.Lock()
_disk_loaded = False
CACHE_ENV = "CGFTOOLS_CACHE_DIR"


def _load_disk_cache() -> None:
    global _disk_loaded
    _disk_loaded = True
    root = os.environ.get(CACHE_ENV)
    if not root:
        return
    path = os.path.join(root, "cyclotomic.json")
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return
    for k, v in data.items():
        _cache.setdefault(int(k), IntPoly(v))


def save_cache() -> str | None:
    """Dump the in-memory cyclotomic cache to ``$CGFTOOLS_CACHE_DIR``."""
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    path = os.path.join(root, "cyclotomic.json")
    with _cache_lock:
        data = {str(k): list(v.coeffs) for k, v in sorted(_cache.items())}
    with open(path, "w") as fh:
        json.dump(data, fh)
    return path


def cyclo(n: int) -> IntPoly:
    """The cyclotomic polynomial ``Phi_n``, built as ``(q^n - 1) / prod_{d | n, d < n} Phi_d``."""
    if n < 1:
        raise ValueError("n must be positive")
    hit = _cache.get(n)
    if hit is not None:
        return hit
    with _cache_lock:
        if not _disk_loaded:
            _load_disk_cache()
            hit = _cache.get(n)
            if hit is not None:
                return hit
    denom = IntPoly((1,))
    for d in divisors(n)[:-1]:
        denom = poly_mul(denom, cyclo(d))
    num = IntPoly([-1] + [0] * (n - 1) + [1])
    phi = poly_divexact(num, denom)
    with _cache_lock:
        _cache.setdefault(n, phi)
    return _cache[n]


def q_int(n: int) -> IntPoly:
    """``[n]_q = 1 + q + ... + q^(n-1)``."""
    if n < 1:
        raise ValueError("n must be positive")
    return IntPoly((1,) * n)


def cyclo_rational(n: int) -> tuple[list[int], list[int]]:
    """Numerator and denominator q-integer multisets with ``Phi_n = prod [d]^mu(n/d)``."""
    if n < 2:
        raise ValueError("Phi_1 has no q-integer quotient form")
    num, den = [], []
    for d in divisors(n):
        m = mobius(n // d)
        if m == 1:
            num.append(d)
        elif m == -1:
            den.append(d)
    return sorted(num, reverse=True), sorted(den, reverse=True)


def indices_with_totient_at_most(bound: int) -> list[int]:
    """All ``n >= 1`` with ``phi(n) <= bound``; uses ``phi(n) >= sqrt(n/2)``."""
    return [n for n in range(1, 2 * bound * bound + 3) if euler_phi(n) <= bound]
