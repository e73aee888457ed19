"""Classical arithmetic functions on positive integers."""

from __future__ import annotations

import math


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def classical_mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def classical_ramanujan(n: int, alpha: int) -> int:
    """R_n(alpha) = mu(n/d) phi(n) / phi(n/d) with d = gcd(n, alpha)."""
    if n < 1:
        raise ValueError("Ramanujan sum needs n >= 1")
    m = n // math.gcd(n, alpha)
    num = classical_mobius(m) * euler_phi(n)
    q, r = divmod(num, euler_phi(m))
    assert r == 0
    return q
