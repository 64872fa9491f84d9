import math
from fractions import Fraction
from typing import Optional, Tuple, Union

from config import settings

Real = Union[int, float, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for x in range(3, math.isqrt(n) + 1, 2):
        if n % x == 0:
            return False
    return True


def next_prime(x: Real, cap: Optional[int] = None) -> int:
    """Smallest prime p >= x, found by trial division."""
    cap = cap or settings.NEXT_PRIME_CAP
    n = max(2, math.ceil(x))
    while n <= cap:
        if is_prime(n):
            return n
        n += 1
    raise ValueError(f"No prime >= {x} below the search cap {cap}")


def next_odd_prime(x: Real, cap: Optional[int] = None) -> int:
    p = next_prime(x, cap)
    return 3 if p == 2 else p


def prime_power_decomposition(q: int) -> Optional[Tuple[int, int]]:
    """(p, m) with q = p**m and p prime, or None."""
    if q < 2:
        return None
    p = next((d for d in range(2, math.isqrt(q) + 1) if q % d == 0), q)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


def is_odd_prime_power(q: int) -> bool:
    decomposition = prime_power_decomposition(q)
    return decomposition is not None and decomposition[0] != 2


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def legendre(a: int, p: int) -> int:
    """Quadratic character of a modulo an odd prime p: 0, 1 or -1."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def exact_sqrt(n: int) -> Union[int, float]:
    """Integer root when n is a perfect square, float otherwise."""
    r = math.isqrt(n)
    return r if r * r == n else math.sqrt(n)


def exact_cbrt(n: int) -> Union[int, float]:
    r = round(n ** (1.0 / 3.0))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** 3 == n:
            return c
    return n ** (1.0 / 3.0)


def two_adic_split(n: int) -> Tuple[int, int]:
    """(a, m) with n = 2**a * m and m odd."""
    a = 0
    while n % 2 == 0 and n > 0:
        n //= 2
        a += 1
    return a, n
