"""Package-independent brute force used to freeze expected values."""


def quotient_ok(c, m, d, N, add=False):
    return all((c * n + (c if add else 0)) // m == n // d for n in range(N + 1))


def remainder_ok(c, m, d, N, add=False):
    for n in range(N + 1):
        p = c * n + (c if add else 0)
        if p // m != n // d or (p % m) * d // m != n % d:
            return False
    return True


def passing_pairs(d, N, m_max, add=False, remainder=False):
    check = remainder_ok if remainder else quotient_ok
    return {(c, m) for m in range(1, m_max + 1) for c in range(0, m if remainder else 2 * m)
            if check(c, m, d, N, add)}
