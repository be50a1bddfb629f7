"""Exact integer and rational helpers: roots, factorization, dense polynomials.

Polynomials are lists of coefficients, highest degree first, so that
``[a0, a1, ..., ad]`` reads the same way as a binary form ``a0 X^d + ... + ad Y^d``.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


# ---------------------------------------------------------------------------
# roots

def integer_nth_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None."""
    if n < 0:
        raise DomainError("negative radicand")
    if n < 2:
        return n
    if k == 1:
        return n
    if k == 2:
        r = math.isqrt(n)
    else:
        # float seed, then integer Newton
        r = int(round(math.exp(math.log(n) / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k + 1)
        r = max(r, 1)
        while True:
            s = ((k - 1) * r + n // r ** (k - 1)) // k
            if s >= r:
                break
            r = s
        while r ** k > n:
            r -= 1
        while (r + 1) ** k <= n:
            r += 1
    return r if r ** k == n else None


def rational_nth_roots(x, k: int) -> list[Fraction]:
    """All rational solutions u of u**k == x, sorted."""
    x = as_fraction(x)
    if k < 1:
        raise DomainError("root index must be positive")
    if x == 0:
        return [Fraction(0)]
    if x < 0 and k % 2 == 0:
        return []
    p = integer_nth_root(abs(x.numerator), k)
    q = integer_nth_root(x.denominator, k)
    if p is None or q is None:
        return []
    r = Fraction(p, q)
    if k % 2 == 0:
        return [-r, r]
    return [r if x > 0 else -r]


# ---------------------------------------------------------------------------
# primality and factorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_LIMIT = 10 ** 6


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    n = _TRIAL_LIMIT
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i in range(n + 1) if sieve[i])


def is_probable_prime(n: int) -> bool:
    # deterministic below 3.3e24 with these bases
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a nonzero integer (sign dropped)."""
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor zero")
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    rng = random.Random(n)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        f = _pollard_brent(m, rng)
        stack.extend((f, m // f))
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p ** i for d in divs for i in range(e + 1)]
    return sorted(divs)


def is_k_free(x, k: int) -> bool:
    """True iff no prime power p**k divides numerator*denominator of x."""
    x = as_fraction(x)
    if x == 0:
        raise DomainError("k-freeness is undefined for 0")
    if k < 2:
        raise DomainError("k must be at least 2")
    for part in (x.numerator, x.denominator):
        if abs(part) == 1:
            continue
        if any(e >= k for e in factorize(part).values()):
            return False
    return True


# ---------------------------------------------------------------------------
# binomials

@lru_cache(maxsize=None)
def _pascal_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _pascal_row(n - 1)
    return (1,) + tuple(prev[i] + prev[i + 1] for i in range(n - 1)) + (1,)


def binom(n: int, k: int) -> int:
    """Binomial coefficient from Pascal's rule; zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return _pascal_row(n)[k]


# ---------------------------------------------------------------------------
# dense polynomials (highest degree first)

def poly_trim(p):
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return list(p[i:])


def poly_add(p, q):
    n = max(len(p), len(q))
    p = [0] * (n - len(p)) + list(p)
    q = [0] * (n - len(q)) + list(q)
    return [a + b for a, b in zip(p, q)]


def poly_scale(p, c):
    return [c * a for a in p]


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def poly_pow(p, n: int):
    out = [1]
    base = list(p)
    while n:
        if n & 1:
            out = poly_mul(out, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return out


def poly_eval(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def poly_deriv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [0]


def poly_divmod(p, q):
    q = poly_trim(q)
    if q == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    p = [Fraction(c) for c in poly_trim(p)]
    if len(p) < len(q):
        return [Fraction(0)], p
    quot = []
    rem = list(p)
    lead = Fraction(q[0])
    while len(rem) >= len(q):
        c = rem[0] / lead
        quot.append(c)
        for i in range(len(q)):
            rem[i] -= c * q[i]
        rem.pop(0)
    return quot, poly_trim(rem) if rem else [Fraction(0)]


def poly_gcd(p, q):
    """Monic gcd over Q."""
    a, b = poly_trim(p), poly_trim(q)
    while b != [0]:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a == [0]:
        return a
    return [Fraction(c) / a[0] for c in a]


def poly_shift_binomial(c0, c1, n: int):
    """Coefficients of (c0*z + c1)**n, highest degree first."""
    return [binom(n, k) * c0 ** (n - k) * c1 ** k for k in range(n + 1)]


def lagrange_interpolate(xs, ys):
    """Exact interpolating polynomial through (xs, ys)."""
    result = [Fraction(0)]
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = poly_mul(basis, [1, -xj])
                denom *= xi - xj
        result = poly_add(result, poly_scale(basis, Fraction(yi) / denom))
    return poly_trim(result)


def rational_roots(p) -> list[Fraction]:
    """Rational roots of a polynomial with rational coefficients (rational root test)."""
    p = poly_trim([as_fraction(c) for c in p])
    if p == [0]:
        raise DomainError("zero polynomial")
    roots = []
    while len(p) > 1 and p[-1] == 0:
        roots.append(Fraction(0))
        p = p[:-1]
    if len(p) == 1:
        return sorted(set(roots))
    den = math.lcm(*(c.denominator for c in p))
    ip = [int(c * den) for c in p]
    g = math.gcd(*ip)
    ip = [c // g for c in ip]
    for num in divisors(ip[-1]):
        for dd in divisors(ip[0]):
            if math.gcd(num, dd) != 1:
                continue
            for cand in (Fraction(num, dd), Fraction(-num, dd)):
                if poly_eval(ip, cand) == 0:
                    roots.append(cand)
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# exact determinants

def det_bareiss(m) -> int:
    """Fraction-free Gaussian elimination on a square integer matrix."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[-1][-1]


def det_fraction(m) -> Fraction:
    rows = [[as_fraction(x) for x in row] for row in m]
    den = 1
    for row in rows:
        den *= math.lcm(*(x.denominator for x in row)) if row else 1
    scaled = []
    for row in rows:
        l = math.lcm(*(x.denominator for x in row)) if row else 1
        scaled.append([int(x * l) for x in row])
    return Fraction(det_bareiss(scaled), den)


def solve_linear(a, b) -> list[Fraction]:
    """Solve a square system exactly by Gauss-Jordan elimination."""
    n = len(a)
    m = [[as_fraction(x) for x in row] + [as_fraction(bi)] for row, bi in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise DomainError("singular linear system")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n] for row in m]


def sylvester(p, q):
    """Sylvester matrix for formal degrees len(p)-1 and len(q)-1."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(p) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(q) + [0] * (size - n - 1 - i))
    return rows
