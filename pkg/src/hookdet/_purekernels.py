"""Pure-Python hot kernels.

Monomials are flat tuples ``(code0, exp0, code1, exp1, ...)`` with strictly
increasing variable codes; term maps are ``dict[monomial, int]``. The compiled
twin in ``_speedups.pyx`` implements the same functions with the same
signatures and must return identical results.
"""

from hookdet.errors import ExplosionGuard

BACKEND = "python"


def mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ca, cb = a[i], b[j]
        if ca < cb:
            out.append(ca)
            out.append(a[i + 1])
            i += 2
        elif cb < ca:
            out.append(cb)
            out.append(b[j + 1])
            j += 2
        else:
            out.append(ca)
            out.append(a[i + 1] + b[j + 1])
            i += 2
            j += 2
    if i < na:
        out.extend(a[i:])
    if j < nb:
        out.extend(b[j:])
    return tuple(out)


def add_terms(a, b, scale=1):
    """Return ``a + scale * b`` with zero coefficients removed."""
    out = dict(a)
    get = out.get
    for m, c in b.items():
        v = get(m, 0) + scale * c
        if v:
            out[m] = v
        elif m in out:
            del out[m]
    return out


def addmul_into(acc, a, b, scale=1):
    """In place ``acc += scale * a * b``. Zero coefficients may remain in acc."""
    get = acc.get
    for ma, ca in a.items():
        ca = ca * scale
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            acc[m] = get(m, 0) + ca * cb


def mul_terms(a, b):
    if len(a) < len(b):
        a, b = b, a
    acc = {}
    addmul_into(acc, a, b)
    return {m: c for m, c in acc.items() if c}


def strip_zeros(terms):
    return {m: c for m, c in terms.items() if c}


def bareiss_det(rows):
    """Fraction-free Gaussian elimination on a square list of int lists."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pivot * ri[j] - f * rk[j]) // prev
            ri[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def vd_search(masks, max_nodes):
    """Enumerate vertex-disjoint path systems by backtracking.

    ``masks[i][j]`` lists the vertex bitmasks of the paths from source i to
    sink j, in the caller's path order. Returns ``(sigma, choice)`` tuples:
    source i uses path ``choice[i]`` of ``masks[i][sigma[i]]``. Raises
    ExplosionGuard once more than ``max_nodes`` partial placements are tried.
    """
    n = len(masks)
    out = []
    if n == 0:
        return [((), ())]
    sigma = [0] * n
    choice = [0] * n
    used_sinks = [False] * n
    nodes = 0

    def place(i, occupied):
        nonlocal nodes
        row = masks[i]
        for j in range(n):
            if used_sinks[j]:
                continue
            for p, mask in enumerate(row[j]):
                nodes += 1
                if nodes > max_nodes:
                    raise ExplosionGuard(
                        f"vertex-disjoint search exceeded {max_nodes} candidates")
                if mask & occupied:
                    continue
                sigma[i] = j
                choice[i] = p
                if i + 1 == n:
                    out.append((tuple(sigma), tuple(choice)))
                else:
                    used_sinks[j] = True
                    place(i + 1, occupied | mask)
                    used_sinks[j] = False

    place(0, 0)
    return out


def eval_terms(terms, values):
    """Evaluate a term map at ``{var_code: int}``; KeyError(code) if unassigned."""
    total = 0
    for m, c in terms.items():
        for t in range(0, len(m), 2):
            v = values[m[t]]
            e = m[t + 1]
            c *= v if e == 1 else v ** e
        total += c
    return total
