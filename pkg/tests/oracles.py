"""Independent slow oracles used to cross-check the production paths.

Everything here works on Fel objects with plain Python loops and stays
deliberately naive: rank by textbook elimination on lists, and
irreducibility by trial division over all monic divisors.
"""

from itertools import product

from eamod.gf import poly, poly_deg, poly_divmod, poly_trim


def slow_rank(rows):
    """Row-reduce a list of lists of Fel; returns the rank."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def slow_matmul(a_rows, b_rows):
    ctx = a_rows[0][0].ctx
    n, inner, m = len(a_rows), len(b_rows), len(b_rows[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ctx.zero()
            for t in range(inner):
                acc = acc + a_rows[i][t] * b_rows[t][j]
            row.append(acc)
        out.append(row)
    return out


def brute_irreducible(f):
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    f = poly_trim(f)
    ctx = f[0].ctx
    n = poly_deg(f)
    if n == 1:
        return True
    els = list(ctx.elements())
    for d in range(1, n // 2 + 1):
        for coeffs in product(els, repeat=d):
            divisor = poly(ctx, list(coeffs) + [ctx.one()])
            if not poly_divmod(f, divisor)[1]:
                return False
    return True
