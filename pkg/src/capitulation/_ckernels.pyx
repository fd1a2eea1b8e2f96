# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled class-number kernels; same algorithms as ``_kernels_py``."""

from libc.math cimport M_PI, log, sin, sqrt
from libc.stdlib cimport calloc, free, malloc, qsort


cdef long long _isqrt(long long n):
    cdef long long r = <long long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef long long _gcd(long long a, long long b):
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef long long _mod(long long a, long long m):
    cdef long long r = a % m
    return r + m if r < 0 else r


cdef int _jacobi(long long a, long long n):
    cdef int result = 1
    cdef long long t
    a = _mod(a, n)
    while a:
        while (a & 1) == 0:
            a >>= 1
            t = n & 7
            if t == 3 or t == 5:
                result = -result
        t = a
        a = n
        n = t
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a = a % n
    return result if n == 1 else 0


cdef int _kronecker_prime(long long D, long long q):
    cdef long long r
    if q == 2:
        if (D & 1) == 0:
            return 0
        r = _mod(D, 8)
        return 1 if (r == 1 or r == 7) else -1
    return _jacobi(D, q)


def count_reduced_forms(long long D):
    """Number of primitive reduced positive definite forms of discriminant D < 0."""
    if D >= 0 or _mod(D, 4) > 1:
        raise ValueError(f"bad negative discriminant {D}")
    cdef long long h = 0
    cdef long long bmax = _isqrt((-D) // 3)
    cdef long long b = D & 1
    cdef long long a, N, c
    while b <= bmax:
        N = (b * b - D) // 4
        a = b if b > 0 else 1
        while a * a <= N:
            if N % a == 0:
                c = N // a
                if _gcd(_gcd(a, b), c) == 1:
                    if b == 0 or a == b or a == c:
                        h += 1
                    else:
                        h += 2
            a += 1
        b += 2
    return h


cdef signed char* _character_table(long long D, long long n) except NULL:
    # chi_D(a) for 0 <= a < n by a linear sieve; caller frees
    cdef signed char* chi = <signed char*>calloc(n + 1, sizeof(signed char))
    cdef char* composite = <char*>calloc(n + 1, sizeof(char))
    cdef long long* primes = <long long*>malloc((n + 1) * sizeof(long long))
    cdef long long nprimes = 0, i, j, q, iq
    if chi == NULL or composite == NULL or primes == NULL:
        free(chi)
        free(composite)
        free(primes)
        raise MemoryError()
    if n > 1:
        chi[1] = 1
    for i in range(2, n):
        if not composite[i]:
            primes[nprimes] = i
            nprimes += 1
            chi[i] = _kronecker_prime(D, i)
        for j in range(nprimes):
            q = primes[j]
            iq = i * q
            if iq >= n:
                break
            composite[iq] = 1
            chi[iq] = chi[i] * chi[q]
            if i % q == 0:
                break
    free(composite)
    free(primes)
    return chi


def character_table(long long D, long long n):
    """chi_D(a) for 0 <= a < n as a Python list."""
    cdef signed char* chi = _character_table(D, n)
    try:
        return [chi[a] for a in range(n)]
    finally:
        free(chi)


def class_number_analytic(long long D):
    """Dirichlet's class number formula for the Kronecker character of D < 0.

    For D < -4 the half-range form h = sum_{a<|D|/2} chi(a) / (2 - chi(2))
    is used; D = -3, -4 use h = -(w / 2|D|) sum_{a<|D|} chi(a) a.
    """
    if D >= 0 or _mod(D, 4) > 1:
        raise ValueError(f"bad negative discriminant {D}")
    cdef long long n = -D, i, s = 0, w, num, den
    cdef signed char* chi
    if D < -4:
        chi = _character_table(D, (n + 1) // 2)
        try:
            for i in range(1, (n + 1) // 2):
                s += chi[i]
            den = 2 - chi[2]
        finally:
            free(chi)
        if s % den:
            raise ArithmeticError(f"character sum for {D} is not divisible: {s}/{den}")
        return s // den
    chi = _character_table(D, n)
    try:
        for i in range(1, n):
            s += chi[i] * i
    finally:
        free(chi)
    w = 6 if D == -3 else 4
    num = -w * s
    den = 2 * n
    if num % den:
        raise ArithmeticError(f"character sum for {D} is not divisible: {num}/{den}")
    return num // den


def real_log_sin_sum(long long D):
    """sum_{0<a<D} chi_D(a) log sin(pi a / D) for a discriminant D > 0.

    chi_D is even for D > 0, so the sum is twice the sum over a < D/2.
    """
    if D <= 0 or _mod(D, 4) > 1:
        raise ValueError(f"bad positive discriminant {D}")
    cdef long long half = (D + 1) // 2
    cdef signed char* chi = _character_table(D, half)
    cdef double total = 0.0
    cdef long long a
    try:
        for a in range(1, half):
            if chi[a]:
                total += chi[a] * log(sin(M_PI * a / D))
    finally:
        free(chi)
    return 2 * total


cdef int _cmp_ll(const void* x, const void* y) noexcept nogil:
    cdef long long u = (<long long*>x)[0]
    cdef long long v = (<long long*>y)[0]
    return (u > v) - (u < v)


cdef long long _find(long long* keys, long long n, long long key):
    cdef long long lo = 0, hi = n - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if keys[mid] == key:
            return mid
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


cdef long long _collect(long long D, long long s, long long* keys, long long width):
    # Writes keys of reduced forms when keys != NULL; returns the count.
    cdef long long count = 0, b, N, d, A, C, t, k, other
    b = 2 - (D & 1)
    while b <= s:
        N = (D - b * b) // 4
        d = 1
        while d * d <= N:
            if N % d == 0:
                for k in range(2):
                    if k == 0:
                        A = d
                    else:
                        A = N // d
                        if A == d:
                            break
                    if (2 * A + b) * (2 * A + b) <= D:
                        continue
                    t = 2 * A - b
                    if t > 0 and t * t >= D:
                        continue
                    C = N // A
                    if _gcd(_gcd(A, b), C) != 1:
                        continue
                    if keys != NULL:
                        keys[count] = (A + s + 1) * width + b
                        keys[count + 1] = (-A + s + 1) * width + b
                    count += 2
            d += 1
        b += 2
    return count


def count_form_cycles(long long D):
    """Number of rho-cycles of reduced indefinite forms, i.e. the narrow class number."""
    cdef long long s = _isqrt(D)
    if D <= 0 or s * s == D or _mod(D, 4) > 1:
        raise ValueError(f"bad positive non-square discriminant {D}")
    cdef long long width = s + 2
    cdef long long n = _collect(D, s, NULL, width)
    cdef long long* keys = <long long*>malloc((n + 1) * sizeof(long long))
    cdef char* seen = <char*>calloc(n + 1, sizeof(char))
    if keys == NULL or seen == NULL:
        free(keys)
        free(seen)
        raise MemoryError()
    cdef long long cycles = 0, i, idx, a, b, c, r, m, na, start
    try:
        _collect(D, s, keys, width)
        qsort(keys, n, sizeof(long long), _cmp_ll)
        for i in range(n):
            if seen[i]:
                continue
            cycles += 1
            seen[i] = 1
            start = i
            a = keys[i] // width - s - 1
            b = keys[i] % width
            c = (b * b - D) // (4 * a)
            while True:
                m = 2 * (c if c > 0 else -c)
                r = s - (s + b) % m
                na = c
                c = (r * r - D) // (4 * c)
                a = na
                b = r
                idx = _find(keys, n, (a + s + 1) * width + b)
                if idx < 0:
                    raise ArithmeticError(f"rho left the reduced set for D={D}")
                if idx == start:
                    break
                if seen[idx]:
                    raise ArithmeticError(f"rho cycles overlap for D={D}")
                seen[idx] = 1
    finally:
        free(keys)
        free(seen)
    return cycles
