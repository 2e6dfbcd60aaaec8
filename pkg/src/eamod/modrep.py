"""Modules over group algebras of elementary abelian p-groups.

An EAModule is k pairwise-commuting nilpotent generator matrices
X_1..X_k (the images of g_i - 1) over one FieldCtx, with X_i^p = 0.
This module hosts all module-level constructions: sums, tensors,
duals, exterior powers, restriction, induction, linear-variety
modules, the exact projectivity test, endomorphism (commutant) bases
and the randomized Fitting decomposition.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

from .gf import Fel, FieldCtx, poly_factor, poly_trim
from .linalg import MatF, JordanType, NotNilpotent, canonical_nilpotent, jordan_type_nilpotent
from .stream import CounterStream


class NonCommuting(ValueError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"generators {i} and {j} do not commute")


class ZeroPoint(ValueError):
    """Raised when a nonzero point is required."""


class MismatchedContext(ValueError):
    """Raised when combining modules over different (p, k, field)."""


class DependentGenerators(ValueError):
    """Raised when subgroup/embedding vectors are linearly dependent."""


@dataclass(frozen=True)
class Point:
    """A point of affine k-space over a FieldCtx (tuple of Fel)."""

    coords: tuple

    @classmethod
    def of(cls, field: FieldCtx, values) -> "Point":
        return cls(tuple(field.el(v) for v in values))

    @property
    def k(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_normalized(self) -> bool:
        for c in self.coords:
            if c:
                return c == 1
        return False

    def normalize(self) -> "Point":
        """Projective normalization: scale so the first nonzero coord is 1."""
        for c in self.coords:
            if c:
                inv = c.inverse()
                return Point(tuple(x * inv for x in self.coords))
        raise ZeroPoint("cannot normalize the zero point")

    def codes(self) -> tuple:
        return tuple(c.ctx.code(c.coeffs) for c in self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


class EAModule:
    """A module over F E, E elementary abelian of rank k."""

    __slots__ = ("p", "k", "n", "field", "gens")

    def __init__(self, p: int, k: int, field: FieldCtx, gens, dim: int = None):
        gens = tuple(gens)
        if len(gens) != k:
            raise ValueError(f"expected {k} generators, got {len(gens)}")
        if gens:
            n = gens[0].rows
            if dim is not None and dim != n:
                raise ValueError("explicit dim contradicts generator size")
        else:
            n = dim or 0
        for g in gens:
            if g.ctx != field:
                raise MismatchedContext("generator over a different field context")
            if g.rows != n or g.cols != n:
                raise ValueError("generators must be square of equal size")
        if field.p != p:
            raise MismatchedContext("field characteristic differs from module prime")
        self.p = p
        self.k = k
        self.n = n
        self.field = field
        self.gens = gens

    def group_matrices(self):
        """u_i = 1 + X_i, derived on demand."""
        eye = MatF.identity(self.field, self.n)
        return [eye + g for g in self.gens]

    def __repr__(self):
        return f"EAModule(p={self.p}, k={self.k}, dim={self.n} over {self.field})"

    def __eq__(self, other):
        return (
            isinstance(other, EAModule)
            and self.p == other.p
            and self.k == other.k
            and self.field == other.field
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.p, self.k, self.field, self.gens))

    # -- serialization (eamod-v1) --

    def to_dict(self) -> dict:
        return {
            "format": "eamod-v1",
            "p": self.p,
            "k": self.k,
            "dim": self.n,
            "field": self.field.to_dict(),
            "generators": [
                [[list(map(int, g.data[i, j])) for j in range(self.n)] for i in range(self.n)]
                for g in self.gens
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EAModule":
        if d.get("format") != "eamod-v1":
            raise ValueError(f"unsupported module format {d.get('format')!r}")
        field = FieldCtx.from_dict(d["field"])
        p, k, n = int(d["p"]), int(d["k"]), int(d["dim"])
        if field.p != p:
            raise ValueError("field characteristic does not match module prime")
        if field.m >= 2:
            from .gf import poly, poly_is_irreducible

            prime = FieldCtx(p, 1, (0, 1))
            if not poly_is_irreducible(poly(prime, field.irr)):
                raise ValueError("stored field polynomial is reducible")
        gens = []
        raw = d["generators"]
        if len(raw) != k:
            raise ValueError("generator count does not match rank")
        for g in raw:
            arr = np.array(g, dtype=np.int64)
            if arr.shape != (n, n, field.m):
                raise ValueError("generator has wrong shape")
            if arr.min(initial=0) < 0 or arr.max(initial=0) >= p:
                raise ValueError("generator entries out of range")
            gens.append(MatF(field, arr))
        mod = cls(p, k, field, gens)
        validate(mod)
        return mod

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh, sort_keys=True, separators=(",", ":"))
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "EAModule":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def load_module(path) -> EAModule:
    return EAModule.load(path)


def validate(module: EAModule) -> EAModule:
    """Check pairwise commutation and X_i^p = 0; returns the module."""
    for i, g in enumerate(module.gens):
        if not g.mat_pow(module.p).is_zero():
            raise NotNilpotent(f"generator {i + 1} is not nilpotent of order <= p")
    for i in range(module.k):
        for j in range(i + 1, module.k):
            if module.gens[i] @ module.gens[j] != module.gens[j] @ module.gens[i]:
                raise NonCommuting(i + 1, j + 1)
    return module


def _as_point(module: EAModule, alpha) -> Point:
    pt = alpha if isinstance(alpha, Point) else Point.of(module.field, alpha)
    if pt.k != module.k:
        raise ValueError(f"point has {pt.k} coordinates, module rank is {module.k}")
    for c in pt.coords:
        if c.ctx != module.field:
            raise MismatchedContext("point coordinates over a different field")
    return pt


def x_alpha(module: EAModule, alpha) -> MatF:
    """The matrix of alpha_1 X_1 + ... + alpha_k X_k."""
    pt = _as_point(module, alpha)
    if pt.is_zero():
        raise ZeroPoint("x_alpha requires a nonzero point")
    acc = MatF.zeros(module.field, module.n, module.n)
    for c, g in zip(pt.coords, module.gens):
        if c:
            acc = acc + g.scale(c)
    return acc


def point_jordan_type(module: EAModule, alpha) -> JordanType:
    """Jordan type of the nilpotent x_alpha action at a nonzero point."""
    return jordan_type_nilpotent(x_alpha(module, alpha), module.p)


def is_free_at(module: EAModule, alpha) -> bool:
    """Whether the restriction to the cyclic shifted subgroup at alpha is free.

    Exact criterion: rank(X_alpha^{p-1}) = dim/p, equivalently the Jordan
    type is [p]^{dim/p}; always false when p does not divide dim.
    """
    pt = _as_point(module, alpha)
    if pt.is_zero():
        raise ZeroPoint("freeness is tested at nonzero points")
    if module.n % module.p != 0:
        return False
    if module.n == 0:
        return True
    xa = x_alpha(module, pt)
    return xa.mat_pow(module.p - 1).rank() == module.n // module.p


def variety_contains(module: EAModule, alpha) -> bool:
    """Rank-variety membership; the zero point always belongs."""
    pt = alpha if isinstance(alpha, Point) else Point.of(module.field, alpha)
    if pt.is_zero():
        return True
    return not is_free_at(module, pt)


# -- constructions --


def trivial_module(p: int, k: int, field: FieldCtx) -> EAModule:
    if k == 0:
        return EAModule(p, 0, field, [], dim=1)
    return EAModule(p, k, field, [MatF.zeros(field, 1, 1) for _ in range(k)])


def lift_to_extension(module: EAModule, ext: FieldCtx) -> EAModule:
    """Re-interpret a prime-field module over an extension of the same p.

    Generator entries embed as constant coefficients; general subfield
    embeddings are out of scope (rebuild the module over the larger
    field instead).
    """
    if module.field == ext:
        return module
    if module.field.m != 1 or ext.p != module.p:
        raise MismatchedContext(
            "can only lift a prime-field module into an extension of the same p"
        )
    gens = []
    for g in module.gens:
        d = np.zeros((module.n, module.n, ext.m), dtype=np.int64)
        d[:, :, 0] = g.data[:, :, 0]
        gens.append(MatF(ext, d))
    return EAModule(module.p, module.k, ext, gens)


def zero_module(p: int, k: int, field: FieldCtx) -> EAModule:
    return EAModule(p, k, field, [MatF.zeros(field, 0, 0) for _ in range(k)])


def direct_sum(m1: EAModule, m2: EAModule) -> EAModule:
    _check_pair(m1, m2)
    gens = [MatF.block_diag([a, b]) for a, b in zip(m1.gens, m2.gens)]
    return EAModule(m1.p, m1.k, m1.field, gens)


def tensor(m1: EAModule, m2: EAModule) -> EAModule:
    """Tensor product with the diagonal group action: X = u (x) u - 1."""
    _check_pair(m1, m2)
    eye = MatF.identity(m1.field, m1.n * m2.n)
    gens = []
    for u1, u2 in zip(m1.group_matrices(), m2.group_matrices()):
        gens.append(u1.kron(u2) - eye)
    return EAModule(m1.p, m1.k, m1.field, gens)


def dual(module: EAModule) -> EAModule:
    """Dual module: g acts by transpose of g^{-1}, so X* = (u^{-1})^T - 1."""
    eye = MatF.identity(module.field, module.n)
    gens = []
    for x in module.gens:
        # (1 + X)^{-1} = sum_{j<p} (-X)^j, a finite geometric series
        inv = eye
        term = eye
        for _ in range(module.p - 1):
            term = -(term @ x)
            inv = inv + term
        gens.append(inv.transpose() - eye)
    return EAModule(module.p, module.k, module.field, gens)


def wedge(module: EAModule, r: int) -> EAModule:
    """r-th exterior power, acting through the group matrices.

    The basis is the lexicographic list of r-subsets; generators are the
    r-th compound of u_i minus the identity.
    """
    from .linalg import compound_matrix

    if not 0 <= r <= module.n:
        raise ValueError(f"wedge degree {r} outside 0..{module.n}")
    if r == 0:
        return trivial_module(module.p, module.k, module.field)
    dim = math.comb(module.n, r)
    eye = MatF.identity(module.field, dim)
    gens = [compound_matrix(u, r) - eye for u in module.group_matrices()]
    return EAModule(module.p, module.k, module.field, gens)


def wedge_jordan(jt: JordanType, r: int, p: int) -> JordanType:
    """Exterior power of a Jordan type, computed by the matrix oracle.

    Builds the canonical nilpotent of the given type over F_p, wedges the
    corresponding one-generator module and reads off the type.
    """
    if r > jt.total:
        raise ValueError("wedge degree exceeds total dimension")
    from .gf import field_create

    ctx = field_create(p, 1)
    nil = canonical_nilpotent(ctx, jt)
    mod = EAModule(p, 1, ctx, [nil])
    wedged = wedge(mod, r)
    if wedged.n == 0:
        return JordanType(p, (0,) * p)
    return point_jordan_type(wedged, [1])


def _check_pair(m1: EAModule, m2: EAModule) -> None:
    if m1.p != m2.p or m1.k != m2.k or m1.field != m2.field:
        raise MismatchedContext("modules disagree in (p, k, field)")


def _fp_matrix(field_p: FieldCtx, vectors) -> MatF:
    return MatF.from_rows(field_p, [[int(c) % field_p.p for c in v] for v in vectors])


def restrict_to_subgroup(module: EAModule, subgroup) -> EAModule:
    """Restrict to the subgroup generated by prod_i g_i^{w_ji}.

    subgroup is a list of s exponent vectors over F_p (entries 0..p-1),
    linearly independent over F_p.  The result has rank s with
    generators prod_i u_i^{w_ji} - 1.
    """
    rows = [tuple(int(c) % module.p for c in w) for w in subgroup]
    s = len(rows)
    if any(len(w) != module.k for w in rows):
        raise ValueError("exponent vectors must have length k")
    prime = FieldCtx(module.p, 1, (0, 1))
    if s == 0 or _fp_matrix(prime, rows).rank() != s:
        raise DependentGenerators("subgroup exponent vectors are dependent")
    eye = MatF.identity(module.field, module.n)
    us = module.group_matrices()
    gens = []
    for w in rows:
        acc = eye
        for i, e in enumerate(w):
            if e:
                acc = acc @ us[i].mat_pow(e)
        gens.append(acc - eye)
    return EAModule(module.p, s, module.field, gens)


def induce(module: EAModule, embed, ambient_rank: int = None) -> EAModule:
    """Induce from the rank-s subgroup E' cut out by the embed vectors.

    embed lists s independent exponent vectors of length k over F_p; the
    module must have rank s (its generators correspond to the embed
    vectors in order).  The construction realizes E = E' x E'' with E''
    spanned by standard vectors completing embed in echelon fashion, and
    the induced module as F[E''] tensor M.  For the trivial subgroup
    pass embed = [] together with ambient_rank = k.
    """
    rows = [tuple(int(c) % module.p for c in w) for w in embed]
    s = len(rows)
    if s != module.k:
        raise ValueError("module rank must match the number of embed vectors")
    if rows:
        k = len(rows[0])
        if ambient_rank is not None and ambient_rank != k:
            raise ValueError("ambient_rank contradicts the embed vector length")
    elif ambient_rank is None:
        raise ValueError("induction from the trivial subgroup needs ambient_rank")
    else:
        k = ambient_rank
    if any(len(w) != k for w in rows):
        raise ValueError("embed vectors must share one length")
    p = module.p
    prime = FieldCtx(p, 1, (0, 1))
    if s:
        _, pivots = _fp_matrix(prime, rows).rref()
        if len(pivots) != s:
            raise DependentGenerators("embed vectors are dependent over F_p")
    else:
        pivots = []
    complement = [j for j in range(k) if j not in set(pivots)]
    t = len(complement)

    # solve e_i = sum a_j w_j + sum b_j e_{c_j} over F_p for every i
    cols = [list(w) for w in rows] + [
        [1 if r == c else 0 for r in range(k)] for c in complement
    ]
    basis_mat = MatF.from_rows(prime, [[cols[j][r] for j in range(k)] for r in range(k)])
    binv = basis_mat.inv()
    decomp = []
    for i in range(k):
        e_i = MatF.from_rows(prime, [[1] if r == i else [0] for r in range(k)])
        coeff = binv @ e_i
        vals = [int(coeff.data[j, 0, 0]) for j in range(k)]
        decomp.append((vals[:s], vals[s:]))

    grid = list(product(range(p), repeat=t))
    index = {v: i for i, v in enumerate(grid)}
    us = module.group_matrices()
    eye_big = MatF.identity(module.field, (p ** t) * module.n)
    gens = []
    for i in range(k):
        a_vec, b_vec = decomp[i]
        perm = np.zeros((p ** t, p ** t, module.field.m), dtype=np.int64)
        for v in grid:
            target = tuple((v[j] + b_vec[j]) % p for j in range(t))
            perm[index[target], index[v], 0] = 1
        perm_mat = MatF(module.field, perm)
        f_part = MatF.identity(module.field, module.n)
        for j, e in enumerate(a_vec):
            if e:
                f_part = f_part @ us[j].mat_pow(e)
        gens.append(perm_mat.kron(f_part) - eye_big)
    return EAModule(p, k, module.field, gens)


def linear_variety_module(p: int, k: int, field: FieldCtx, span_vectors) -> EAModule:
    """A module of dimension p^{k-r} whose rank variety is the given span.

    span_vectors lists r vectors over the field, independent over the
    field; they become the first rows of a coordinate change C, and the
    module is the truncated polynomial algebra in the remaining k - r
    coordinates with X_i acting through the substitution.
    """
    if field.p != p:
        raise MismatchedContext("field characteristic differs from p")
    rows = [Point.of(field, v).coords for v in span_vectors]
    r = len(rows)
    if any(len(v) != k for v in rows):
        raise ValueError("span vectors must have length k")
    if r > 0:
        wmat = MatF.from_rows(field, [list(v) for v in rows])
        _, pivots = wmat.rref()
        if len(pivots) != r:
            raise DependentGenerators("span vectors are dependent over the field")
    else:
        pivots = []
    complement = [j for j in range(k) if j not in set(pivots)]
    c_rows = [list(v) for v in rows] + [
        [1 if j == c else 0 for j in range(k)] for c in complement
    ]
    c_mat = MatF.from_rows(field, c_rows)
    c_inv = c_mat.inv()

    t = k - r
    dim = p ** t
    grid = list(product(range(p), repeat=t))
    index = {v: i for i, v in enumerate(grid)}
    mults = []
    for ell in range(t):
        d = np.zeros((dim, dim, field.m), dtype=np.int64)
        for v in grid:
            if v[ell] < p - 1:
                target = tuple(v[j] + (1 if j == ell else 0) for j in range(t))
                d[index[target], index[v], 0] = 1
        mults.append(MatF(field, d))
    gens = []
    for i in range(k):
        acc = MatF.zeros(field, dim, dim)
        for ell in range(r, k):
            coeff = c_inv.get(i, ell)
            if coeff:
                acc = acc + mults[ell - r].scale(coeff)
        gens.append(acc)
    return EAModule(p, k, field, gens)


def regular_module(p: int, k: int, field: FieldCtx) -> EAModule:
    """The group algebra F E as a module over itself (dimension p^k)."""
    return linear_variety_module(p, k, field, [])


def projective_test(module: EAModule):
    """(is_projective, free_summands) via the socle-rank criterion.

    free_summands is the rank of z = X_1^{p-1} ... X_k^{p-1}, the sum of
    all group elements; the module is free iff that accounts for the
    whole dimension.
    """
    if module.n == 0:
        return True, 0
    z = MatF.identity(module.field, module.n)
    for x in module.gens:
        z = z @ x.mat_pow(module.p - 1)
        if z.is_zero():
            break
    free = z.rank()
    return free * module.p ** module.k == module.n, free


def endomorphism_basis(module: EAModule):
    """Basis of the commutant {Y : Y X_i = X_i Y for all i}.

    The first basis element is always the identity matrix.
    """
    n = module.n
    field = module.field
    if n == 0:
        return []
    m = field.m
    blocks = []
    eye = np.zeros((n, n, m), dtype=np.int64)
    eye[np.arange(n), np.arange(n), 0] = 1
    for x in module.gens:
        xd = x.data
        # row-major vec: vec(Y X) = (I kron X^T) vec(Y), vec(X Y) = (X kron I) vec(Y)
        left = np.zeros((n * n, n * n, m), dtype=np.int64)
        for a in range(m):
            left[:, :, a] = np.kron(eye[:, :, 0], xd[:, :, a].T) - np.kron(
                xd[:, :, a], eye[:, :, 0]
            )
        blocks.append(left % field.p)
    system = MatF(field, np.concatenate(blocks, axis=0))
    kernel = system.kernel_array()
    basis = [MatF(field, vec.reshape(n, n, m).copy()) for vec in kernel]
    # exchange one vector for the identity, which always commutes
    ident = MatF.identity(field, n)
    coords = _coords_in_span(field, kernel, ident.data.reshape(n * n, m))
    swap = next(i for i, c in enumerate(coords) if any(c))
    basis[swap] = ident
    return basis


def _coords_in_span(field: FieldCtx, span_rows: np.ndarray, target: np.ndarray):
    """Coordinates of target in the row span; raises if not in the span."""
    count = span_rows.shape[0]
    cols = span_rows.shape[1]
    aug = np.concatenate(
        [span_rows.transpose(1, 0, 2), target.reshape(cols, 1, target.shape[-1])], axis=1
    )
    solved, pivots = MatF(field, aug).rref()
    if count in pivots:
        raise ValueError("target not in span")
    coeffs = [field.czero()] * count
    for row, col in enumerate(pivots):
        coeffs[col] = tuple(int(v) for v in solved.data[row, count])
    return coeffs


@dataclass
class FittingResult:
    summands: list
    status: str  # "decomposed" or "no_split_found"
    trials: int

    @property
    def decomposed(self) -> bool:
        return self.status == "decomposed"


def _minimal_polynomial(theta: MatF):
    """Monic minimal polynomial of a square matrix over its field."""
    field = theta.ctx
    n = theta.rows
    vecs = [MatF.identity(field, n).data.reshape(n * n, field.m)]
    power = MatF.identity(field, n)
    for _ in range(n):
        power = power @ theta
        vecs.append(power.data.reshape(n * n, field.m))
        stacked = np.stack(vecs, axis=0)
        mat = MatF(field, stacked.transpose(1, 0, 2).copy())
        null = mat.kernel_array()
        if null.shape[0]:
            coeffs = [Fel(field, tuple(int(c) for c in null[0, j])) for j in range(len(vecs))]
            poly = poly_trim(tuple(coeffs))
            lead_inv = poly[-1].inverse()
            return tuple(c * lead_inv for c in poly)
    raise AssertionError("minimal polynomial not found within n steps")


def _poly_at_matrix(coeffs, mat: MatF) -> MatF:
    acc = MatF.zeros(mat.ctx, mat.rows, mat.cols)
    for c in reversed(coeffs):
        acc = acc @ mat
        if c:
            acc = acc + MatF.identity(mat.ctx, mat.rows).scale(c)
    return acc


def _poly_power(factor, e: int):
    from .gf import poly_mul

    out = (factor[0].ctx.one(),)
    for _ in range(e):
        out = poly_mul(out, factor)
    return out


def _try_split(module: EAModule, trials: int, stream: CounterStream):
    if module.n <= 1:
        return None
    basis = endomorphism_basis(module)
    if len(basis) <= 1:
        return None
    field = module.field
    q = field.q
    for _ in range(trials):
        theta = MatF.zeros(field, module.n, module.n)
        for b in basis:
            c = field.el(field.from_code(stream.below(q)))
            if c:
                theta = theta + b.scale(c)
        minpoly = _minimal_polynomial(theta)
        if len(minpoly) <= 2:
            continue
        factors = poly_factor(minpoly, seed=stream.next_u64())
        if len(factors) < 2:
            continue
        f_poly = _poly_power(factors[0][0], factors[0][1])
        g_poly = (field.one(),)
        from .gf import poly_mul

        for fac, e in factors[1:]:
            g_poly = poly_mul(g_poly, _poly_power(fac, e))
        ker_f = _poly_at_matrix(f_poly, theta).kernel_array()
        ker_g = _poly_at_matrix(g_poly, theta).kernel_array()
        da, db = ker_f.shape[0], ker_g.shape[0]
        assert da + db == module.n and da > 0 and db > 0
        cols = np.concatenate([ker_f, ker_g], axis=0).transpose(1, 0, 2)
        basis_change = MatF(field, cols.copy())
        inv = basis_change.inv()
        gens_a, gens_b = [], []
        for x in module.gens:
            conj = inv @ x @ basis_change
            assert not conj.data[da:, :da].any() and not conj.data[:da, da:].any()
            gens_a.append(MatF(field, conj.data[:da, :da].copy()))
            gens_b.append(MatF(field, conj.data[da:, da:].copy()))
        part_a = EAModule(module.p, module.k, field, gens_a)
        part_b = EAModule(module.p, module.k, field, gens_b)
        return part_a, part_b
    return None


def fitting_decompose(module: EAModule, trials: int, seed: int) -> FittingResult:
    """Split into direct summands via random commutant elements.

    Draws up to `trials` random endomorphisms per remaining piece from a
    counter-based stream keyed by seed, splits along coprime factors of
    their minimal polynomials and recurses.  NoSplitFound is evidence,
    not proof, of indecomposability.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    stream = CounterStream(seed)
    pending = [module]
    final = []
    while pending:
        piece = pending.pop(0)
        split = _try_split(piece, trials, stream)
        if split is None:
            final.append(piece)
        else:
            pending = [split[0], split[1]] + pending
    status = "decomposed" if len(final) > 1 else "no_split_found"
    return FittingResult(final, status, trials)
