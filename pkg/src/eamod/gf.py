"""Exact arithmetic in prime fields F_p and extensions F_{p^m}.

A FieldCtx fixes (p, m, irr) where irr is a monic irreducible of degree m
over F_p; every element, polynomial and matrix in the package is
interpreted relative to one such context.  Elements are coefficient
vectors in ascending powers of the generator w (a root of irr).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class NonPrime(ValueError):
    """Raised when a field modulus is not prime."""


class DegreeOutOfRange(ValueError):
    """Raised when an extension degree falls outside 1..8."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FieldCtx:
    """A finite field F_{p^m} with a fixed monic irreducible of degree m.

    For m = 1 the stored polynomial is the placeholder x and arithmetic
    reduces mod p only.  Instances are immutable and safe to share.
    """

    __slots__ = ("p", "m", "irr", "_red", "_red_np")

    def __init__(self, p: int, m: int, irr: Sequence[int]):
        self.p = int(p)
        self.m = int(m)
        self.irr = tuple(int(c) % p for c in irr)
        if len(self.irr) != m + 1 or self.irr[-1] != 1:
            raise ValueError("irr must be monic of degree m (ascending coefficients)")
        # rows d = 0..2m-2: coefficients of x^d reduced mod irr
        red = []
        for d in range(self.m):
            row = [0] * self.m
            row[d] = 1
            red.append(tuple(row))
        for d in range(self.m, 2 * self.m - 1):
            prev = red[d - 1]
            shifted = [0] + list(prev[: self.m - 1])
            top = prev[self.m - 1]
            row = [(shifted[t] - top * self.irr[t]) % self.p for t in range(self.m)]
            red.append(tuple(row))
        self._red = tuple(red)
        self._red_np = np.array(red, dtype=np.int64)

    @property
    def q(self) -> int:
        return self.p ** self.m

    # -- coefficient-tuple arithmetic (internal workhorses) --

    def czero(self):
        return (0,) * self.m

    def cone(self):
        return (1,) + (0,) * (self.m - 1)

    def cadd(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def csub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def cneg(self, a):
        return tuple((-x) % self.p for x in a)

    def cmul(self, a, b):
        m, p = self.m, self.p
        if m == 1:
            return ((a[0] * b[0]) % p,)
        conv = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    conv[i + j] += x * y
        out = [0] * m
        for d, c in enumerate(conv):
            if c:
                row = self._red[d]
                for t in range(m):
                    out[t] += c * row[t]
        return tuple(v % p for v in out)

    def cinv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero field element")
        if self.m == 1:
            return (pow(a[0], self.p - 2, self.p),)
        # extended Euclid in F_p[x] against irr
        r0, r1 = list(self.irr), list(a)
        t0, t1 = [0], [1]
        while any(r1):
            q, r = _fp_divmod(r0, r1, self.p)
            r0, r1 = r1, r
            t0, t1 = t1, _fp_sub(t0, _fp_mul(q, t1, self.p), self.p)
        lead = _fp_trim(r0)[-1]
        s = pow(lead, self.p - 2, self.p)
        t0 = [(c * s) % self.p for c in t0]
        t0 = (t0 + [0] * self.m)[: self.m]
        return tuple(t0)

    def cpow(self, a, e: int):
        if e < 0:
            return self.cpow(self.cinv(a), -e)
        out = self.cone()
        base = a
        while e:
            if e & 1:
                out = self.cmul(out, base)
            base = self.cmul(base, base)
            e >>= 1
        return out

    def code(self, coeffs) -> int:
        """Pack coefficients into an integer 0..q-1 (a_0 least significant)."""
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def from_code(self, v: int):
        out = []
        for _ in range(self.m):
            out.append(v % self.p)
            v //= self.p
        return tuple(out)

    # -- Fel construction and iteration --

    def el(self, value) -> "Fel":
        """Coerce an int (reduced mod p, constant coefficient) or a coefficient
        iterable into a field element."""
        if isinstance(value, Fel):
            if value.ctx != self:
                raise ValueError("element from a different field context")
            return value
        if isinstance(value, int):
            return Fel(self, (value % self.p,) + (0,) * (self.m - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return Fel(self, coeffs)

    def zero(self) -> "Fel":
        return Fel(self, self.czero())

    def one(self) -> "Fel":
        return Fel(self, self.cone())

    def gen(self) -> "Fel":
        """The generator w (a root of irr); for m = 1 returns 1."""
        if self.m == 1:
            return self.one()
        return Fel(self, (0, 1) + (0,) * (self.m - 2))

    def elements(self) -> Iterable["Fel"]:
        for v in range(self.q):
            yield Fel(self, self.from_code(v))

    def reduction_planes(self) -> np.ndarray:
        """(2m-1, m) int64 array: row d holds x^d mod irr."""
        return self._red_np

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "irr": list(self.irr)}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldCtx":
        ctx = cls(int(d["p"]), int(d["m"]), d["irr"])
        if not is_prime(ctx.p):
            raise NonPrime(f"{ctx.p} is not prime")
        return ctx

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.m == other.m
            and self.irr == other.irr
        )

    def __hash__(self):
        return hash((self.p, self.m, self.irr))

    def __repr__(self):
        if self.m == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.m}(irr={list(self.irr)})"


class Fel:
    """An element of a FieldCtx: m residues mod p, ascending powers of w."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, Fel):
            if other.ctx != self.ctx:
                raise ValueError("mixed field contexts")
            return other
        if isinstance(other, int):
            return self.ctx.el(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fel(self.ctx, self.ctx.cadd(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fel(self.ctx, self.ctx.csub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fel(self.ctx, self.ctx.csub(o.coeffs, self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fel(self.ctx, self.ctx.cmul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return Fel(self.ctx, self.ctx.cneg(self.coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Fel(self.ctx, self.ctx.cmul(self.coeffs, self.ctx.cinv(o.coeffs)))

    def __pow__(self, e: int):
        return Fel(self.ctx, self.ctx.cpow(self.coeffs, e))

    def inverse(self) -> "Fel":
        return Fel(self.ctx, self.ctx.cinv(self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ctx.el(other)
        return (
            isinstance(other, Fel)
            and other.ctx == self.ctx
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.m, self.coeffs))

    def __repr__(self):
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("w" if c == 1 else f"{c}w")
            else:
                terms.append(f"w^{i}" if c == 1 else f"{c}w^{i}")
        return "+".join(terms) if terms else "0"


# -- prime-subfield polynomial helpers on bare int lists (used by cinv) --


def _fp_trim(a):
    i = len(a) - 1
    while i >= 0 and a[i] == 0:
        i -= 1
    return a[: i + 1]


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    return _fp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    a = _fp_trim(list(a))
    b = _fp_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        c = (r[-1] * inv_lead) % p
        d = len(r) - len(b)
        q[d] = c
        for i in range(len(b)):
            r[d + i] = (r[d + i] - c * b[i]) % p
        r = _fp_trim(r)
    return q, r


# -- polynomials over a FieldCtx, as trimmed tuples of Fel (ascending) --


def poly(ctx: FieldCtx, coeffs) -> tuple:
    """Build a trimmed polynomial from ints/Fels, ascending powers."""
    return poly_trim(tuple(ctx.el(c) for c in coeffs))


def poly_trim(f) -> tuple:
    i = len(f) - 1
    while i >= 0 and not f[i]:
        i -= 1
    return tuple(f[: i + 1])


def poly_deg(f) -> int:
    return len(f) - 1


def poly_x(ctx: FieldCtx) -> tuple:
    return (ctx.zero(), ctx.one())


def poly_add(f, g) -> tuple:
    n = max(len(f), len(g))
    ctx = (f or g)[0].ctx
    z = ctx.zero()
    return poly_trim(tuple((f[i] if i < len(f) else z) + (g[i] if i < len(g) else z) for i in range(n)))


def poly_sub(f, g) -> tuple:
    n = max(len(f), len(g))
    ctx = (f or g)[0].ctx
    z = ctx.zero()
    return poly_trim(tuple((f[i] if i < len(f) else z) - (g[i] if i < len(g) else z) for i in range(n)))


def poly_scale(f, s: Fel) -> tuple:
    return poly_trim(tuple(c * s for c in f))


def poly_mul(f, g) -> tuple:
    if not f or not g:
        return ()
    ctx = f[0].ctx
    out = [ctx.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = out[i + j] + a * b
    return poly_trim(tuple(out))


def poly_divmod(f, g) -> tuple:
    g = poly_trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    ctx = g[0].ctx
    inv_lead = g[-1].inverse()
    r = list(poly_trim(f))
    q = [ctx.zero()] * max(len(r) - len(g) + 1, 0)
    while len(r) >= len(g) and r:
        c = r[-1] * inv_lead
        d = len(r) - len(g)
        q[d] = c
        for i in range(len(g)):
            r[d + i] = r[d + i] - c * g[i]
        r = list(poly_trim(r))
    return poly_trim(tuple(q)), poly_trim(tuple(r))


def poly_mod(f, g) -> tuple:
    return poly_divmod(f, g)[1]


def poly_gcd(f, g) -> tuple:
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_mod(f, g)
    return poly_monic(f) if f else ()


def poly_monic(f) -> tuple:
    f = poly_trim(f)
    if not f:
        return ()
    return poly_scale(f, f[-1].inverse())


def poly_pow_mod(f, e: int, mod) -> tuple:
    ctx = mod[0].ctx
    out = (ctx.one(),)
    base = poly_mod(f, mod)
    while e:
        if e & 1:
            out = poly_mod(poly_mul(out, base), mod)
        base = poly_mod(poly_mul(base, base), mod)
        e >>= 1
    return out


def poly_eval(f, x: Fel) -> Fel:
    acc = x.ctx.zero()
    for c in reversed(f):
        acc = acc * x + c
    return acc


def poly_derivative(f) -> tuple:
    if len(f) <= 1:
        return ()
    return poly_trim(tuple(f[i] * i for i in range(1, len(f))))


def poly_key(f) -> tuple:
    """Canonical sort key: (degree, coefficient codes ascending powers)."""
    ctx = f[0].ctx
    return (poly_deg(f), tuple(ctx.code(c.coeffs) for c in f))


# -- field construction --


def field_create(p: int, m: int) -> FieldCtx:
    """Build F_{p^m} with the lexicographically least monic irreducible.

    Coefficient sequences (a_{m-1}, ..., a_0) are ordered as base-p
    integers, so the result is deterministic across runs and platforms.
    For m = 1 the stored polynomial is the placeholder x.
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if m < 1 or m > 8:
        raise DegreeOutOfRange(f"extension degree {m} outside 1..8")
    if m == 1:
        return FieldCtx(p, 1, (0, 1))
    prime = FieldCtx(p, 1, (0, 1))
    for t in range(p ** m):
        digits = []
        v = t
        for _ in range(m):
            digits.append(v % p)
            v //= p
        # digits[0] = a_0 (least significant of t)
        cand = poly(prime, digits + [1])
        if poly_is_irreducible(cand):
            return FieldCtx(p, m, [c.coeffs[0] for c in cand])
    raise RuntimeError("no irreducible polynomial found")  # unreachable


def poly_is_irreducible(f) -> bool:
    """Irreducibility over the coefficients' field, by gcd with x^{q^d} - x.

    A monic f of degree n is reducible iff it shares a factor with
    x^{q^d} - x for some d <= n/2.
    """
    f = poly_monic(f)
    n = poly_deg(f)
    if n < 1:
        raise ValueError("degree must be >= 1")
    if n == 1:
        return True
    ctx = f[0].ctx
    h = poly_mod(poly_x(ctx), f)
    for _ in range(n // 2):
        h = poly_pow_mod(h, ctx.q, f)
        g = poly_gcd(f, poly_sub(h, poly_x(ctx)))
        if poly_deg(g) != 0:
            return False
    return True


# -- factorization: square-free, distinct-degree, Cantor-Zassenhaus --


def _pth_root(f):
    """Write f = v(x)^p and return v; valid when f' = 0."""
    ctx = f[0].ctx
    root_exp = ctx.p ** (ctx.m - 1)
    coeffs = []
    for j in range(0, poly_deg(f) + 1, ctx.p):
        coeffs.append(f[j] ** root_exp)
    return poly_trim(tuple(coeffs))


def _squarefree_parts(f):
    """Decompose monic f into [(g_i, e_i)] with g_i squarefree, pairwise coprime."""
    ctx = f[0].ctx
    out = []
    df = poly_derivative(f)
    if not df:
        for g, e in _squarefree_parts(_pth_root(f)):
            out.append((g, e * ctx.p))
        return out
    c = poly_gcd(f, df)
    w = poly_divmod(f, c)[0]
    i = 1
    while poly_deg(w) > 0:
        y = poly_gcd(w, c)
        fac = poly_divmod(w, y)[0]
        if poly_deg(fac) > 0:
            out.append((fac, i))
        w = y
        c = poly_divmod(c, y)[0]
        i += 1
    if poly_deg(c) > 0:
        for g, e in _squarefree_parts(_pth_root(c)):
            out.append((g, e * ctx.p))
    return out


def _distinct_degree(f):
    """Split squarefree monic f into [(product of factors of degree d, d)]."""
    ctx = f[0].ctx
    out = []
    h = poly_mod(poly_x(ctx), f)
    d = 0
    while poly_deg(f) > 2 * d:
        d += 1
        h = poly_pow_mod(h, ctx.q, f)
        g = poly_gcd(f, poly_sub(h, poly_x(ctx)))
        if poly_deg(g) > 0:
            out.append((g, d))
            f = poly_divmod(f, g)[0]
            h = poly_mod(h, f)
    if poly_deg(f) > 0:
        out.append((f, poly_deg(f)))
    return out


def _random_poly(ctx, deg, stream):
    coeffs = [ctx.el(ctx.from_code(stream.below(ctx.q))) for _ in range(deg + 1)]
    return poly_trim(tuple(coeffs))


def _equal_degree(f, d, stream):
    """Cantor-Zassenhaus split of squarefree f whose factors all have degree d."""
    n = poly_deg(f)
    if n == d:
        return [f]
    ctx = f[0].ctx
    q = ctx.q
    one = (ctx.one(),)
    while True:
        r = _random_poly(ctx, n - 1, stream)
        if poly_deg(r) < 1:
            continue
        g = poly_gcd(f, r)
        if 0 < poly_deg(g) < n:
            split = g
        elif q % 2 == 1:
            s = poly_pow_mod(r, (q ** d - 1) // 2, f)
            split = poly_gcd(f, poly_sub(s, one))
        else:
            t = poly_mod(r, f)
            acc = t
            for _ in range(d * ctx.m - 1):
                t = poly_pow_mod(t, 2, f)
                acc = poly_add(acc, t)
            split = poly_gcd(f, acc)
        if 0 < poly_deg(split) < n:
            rest = poly_divmod(f, split)[0]
            return _equal_degree(split, d, stream) + _equal_degree(rest, d, stream)


def poly_factor(f, seed: int) -> list:
    """Factor f into monic irreducibles with multiplicities.

    Returns [(factor, multiplicity)] sorted by degree then coefficient
    sequence; the product of factor^multiplicity times the leading unit
    re-multiplies to f.  Equal-degree splitting is randomized but fully
    determined by the seed.
    """
    from .stream import CounterStream

    f = poly_trim(f)
    if poly_deg(f) < 1:
        raise ValueError("degree must be >= 1")
    stream = CounterStream(seed)
    f = poly_monic(f)
    found = {}
    for g, e in _squarefree_parts(f):
        for h, d in _distinct_degree(g):
            for irr_f in _equal_degree(h, d, stream):
                key = poly_key(irr_f)
                if key in found:
                    found[key] = (irr_f, found[key][1] + e)
                else:
                    found[key] = (irr_f, e)
    return [found[k] for k in sorted(found)]
