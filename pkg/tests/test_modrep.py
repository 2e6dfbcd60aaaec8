import json
import math

import pytest

from eamod.gf import field_create
from eamod.linalg import JordanType, MatF, NotNilpotent
from eamod import modrep as mr
from eamod.modrep import (
    DependentGenerators,
    EAModule,
    MismatchedContext,
    NonCommuting,
    Point,
    ZeroPoint,
)
from eamod.stream import CounterStream

F3 = field_create(3, 1)
F9 = field_create(3, 2)


def benson(field, lam, mu):
    x1 = MatF.from_rows(field, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
    x2 = MatF.from_rows(field, [[0, 0, 0], [lam, 0, 0], [mu, lam, 0]])
    return EAModule(3, 2, field, [x1, x2])


def test_validate_accepts_benson():
    for lam in range(3):
        for mu in range(3):
            mr.validate(benson(F3, lam, mu))


def test_validate_rejects_noncommuting():
    j2 = MatF.from_rows(F3, [[0, 0], [1, 0]])
    with pytest.raises(NonCommuting) as err:
        mr.validate(EAModule(3, 2, F3, [j2, j2.transpose()]))
    assert (err.value.i, err.value.j) == (1, 2)


def test_validate_rejects_nonnilpotent():
    bad = MatF.identity(F3, 2)
    with pytest.raises(NotNilpotent):
        mr.validate(EAModule(3, 1, F3, [bad]))


def test_validate_zero_module():
    mod = mr.zero_module(3, 2, F3)
    mr.validate(mod)
    assert mod.n == 0
    assert mr.projective_test(mod) == (True, 0)
    assert not mr.variety_contains(mod, [1, 0])
    assert mr.variety_contains(mod, [0, 0])


def test_x_alpha_unit_vector_and_shape():
    mod = benson(F3, 2, 1)
    assert mr.x_alpha(mod, [1, 0]) == mod.gens[0]
    # displayed form: subdiagonal a1 + a2*lam, corner a2*mu
    a1, a2 = F3.el(1), F3.el(2)
    xa = mr.x_alpha(mod, [a1, a2])
    sub = a1 + a2 * F3.el(2)
    assert xa.get(1, 0) == sub and xa.get(2, 1) == sub
    assert xa.get(2, 0) == a2 * F3.el(1)
    assert xa.get(0, 0) == F3.zero() and xa.get(0, 1) == F3.zero()


def test_x_alpha_zero_point_rejected():
    with pytest.raises(ZeroPoint):
        mr.x_alpha(benson(F3, 0, 0), [0, 0])


def test_point_jordan_type_trivial_module():
    triv = mr.trivial_module(3, 2, F3)
    assert mr.point_jordan_type(triv, [1, 2]) == JordanType.from_blocks(3, [1])


def test_is_free_examples():
    triv = mr.trivial_module(3, 2, F3)
    assert not mr.is_free_at(triv, [1, 0])  # dim 1 not divisible by 3
    reg = mr.regular_module(3, 2, F3)
    assert mr.is_free_at(reg, [1, 0])
    assert not mr.variety_contains(reg, [1, 0])
    assert mr.variety_contains(reg, [0, 0])


def test_variety_of_benson_is_line():
    # line through (-lam, 1)
    for lam in range(3):
        mod = benson(F3, lam, 1)
        assert mr.variety_contains(mod, [(-lam) % 3, 1])
        for a in range(3):
            for b in range(3):
                if (a, b) == (0, 0):
                    continue
                on_line = (a + b * lam) % 3 == 0
                assert mr.variety_contains(mod, [a, b]) == on_line


def test_direct_sum_and_tensor_dims():
    m1 = benson(F3, 0, 1)
    m2 = mr.trivial_module(3, 2, F3)
    assert mr.direct_sum(m1, m2).n == 4
    assert mr.tensor(m1, m1).n == 9


def test_tensor_unit():
    mod = benson(F3, 1, 2)
    unit = mr.trivial_module(3, 2, F3)
    assert all(a == b for a, b in zip(mr.tensor(unit, mod).gens, mod.gens))


def test_context_mismatch():
    with pytest.raises(MismatchedContext):
        mr.direct_sum(benson(F3, 0, 1), benson(F9, 0, 1))


def test_dual_preserves_freeness_and_maximal_types():
    # Freeness at a point survives dualizing at every point; the full
    # Jordan type survives wherever the point attains the free type.
    # (Type equality can fail at degenerate points: benson(w+2, 0) at
    # (2w+1, 1) has X_alpha = 0 but the dual generators retain a
    # square term of rank 1.)
    stream = CounterStream(4242)
    for trial in range(50):
        lam = F9.el(F9.from_code(stream.below(9)))
        mu = F9.el(F9.from_code(stream.below(9)))
        mod = benson(F9, lam, mu)
        if trial % 2:
            mod = mr.tensor(mod, mod)
        dual_mod = mr.dual(mod)
        mr.validate(dual_mod)
        coords = [F9.el(F9.from_code(stream.below(9))) for _ in range(2)]
        if not any(coords):
            coords[0] = F9.one()
        assert mr.is_free_at(dual_mod, coords) == mr.is_free_at(mod, coords)
        if mr.is_free_at(mod, coords):
            assert mr.point_jordan_type(dual_mod, coords) == mr.point_jordan_type(mod, coords)


def test_dual_type_mismatch_at_degenerate_point():
    w = F9.gen()
    mod = benson(F9, w + 2, 0)
    dual_mod = mr.dual(mod)
    alpha = [2 * w + 1, F9.one()]
    assert mr.x_alpha(mod, alpha).is_zero()
    assert mr.point_jordan_type(mod, alpha) == JordanType.from_blocks(3, [1, 1, 1])
    assert mr.point_jordan_type(dual_mod, alpha) == JordanType.from_blocks(3, [2, 1])


def test_wedge_dimensions_and_unit():
    mod = benson(F3, 0, 1)
    assert mr.wedge(mod, 0).n == 1
    assert mr.wedge(mod, 2).n == 3
    assert mr.wedge(mod, 3).n == 1
    for w in (mr.wedge(mod, 2), mr.wedge(mod, 3)):
        mr.validate(w)


def test_wedge_jordan_examples():
    assert mr.wedge_jordan(JordanType.from_blocks(3, [2, 2]), 2, 3) == JordanType.from_blocks(
        3, [3, 1, 1, 1]
    )
    assert mr.wedge_jordan(JordanType.from_blocks(3, [1]), 1, 3) == JordanType.from_blocks(3, [1])
    # wedge of a free type at r = p-1 stays free
    free = JordanType.from_blocks(3, [3, 3])
    result = mr.wedge_jordan(free, 2, 3)
    assert result.is_free()
    assert result.total == math.comb(6, 2)


def test_restrict_examples():
    mod = benson(F3, 0, 1)
    res = mr.restrict_to_subgroup(mod, [[0, 1]])
    assert res.k == 1
    assert mr.point_jordan_type(res, [1]) == JordanType.from_blocks(3, [2, 1])
    full = mr.restrict_to_subgroup(mod, [[1, 0], [0, 1]])
    assert all(a == b for a, b in zip(full.gens, mod.gens))
    reg = mr.regular_module(3, 2, F3)
    line = mr.restrict_to_subgroup(reg, [[1, 1]])
    assert mr.point_jordan_type(line, [1]) == JordanType.from_blocks(3, [3, 3, 3])
    with pytest.raises(DependentGenerators):
        mr.restrict_to_subgroup(mod, [[1, 1], [2, 2]])


def test_induce_diagonal_line():
    ind = mr.induce(mr.trivial_module(3, 1, F3), [[1, 1]])
    mr.validate(ind)
    assert ind.n == 3
    for a in range(3):
        for b in range(3):
            if (a, b) == (0, 0):
                continue
            assert mr.variety_contains(ind, [a, b]) == (a == b)


def test_induce_full_rank_is_identity_functor():
    ind = mr.induce(mr.trivial_module(3, 2, F3), [[1, 0], [0, 1]])
    assert ind.n == 1
    assert all(g.is_zero() for g in ind.gens)


def test_induce_from_trivial_subgroup_is_regular():
    ind = mr.induce(mr.trivial_module(3, 0, F3), [], ambient_rank=2)
    assert ind.n == 9
    assert mr.projective_test(ind) == (True, 1)


def test_induce_dependent_vectors():
    with pytest.raises(DependentGenerators):
        mr.induce(mr.trivial_module(3, 2, F3), [[1, 1], [2, 2]])


def test_induced_variety_inside_embed_span():
    # rank-1 subgroup of E_3: variety of the induced module stays in the span
    ind = mr.induce(mr.trivial_module(3, 1, F3), [[1, 2, 0]])
    for a in range(3):
        for b in range(3):
            for c in range(3):
                if (a, b, c) == (0, 0, 0):
                    continue
                if mr.variety_contains(ind, [a, b, c]):
                    in_span = any(
                        (a, b, c) == ((t * 1) % 3, (t * 2) % 3, 0) for t in range(1, 3)
                    )
                    assert in_span


def test_induced_nontrivial_variety_inside_embed_span_extension():
    # non-trivial source module, sweep over F_9: variety stays in the
    # field-span of the embed vector
    j2 = EAModule(3, 1, F9, [MatF.from_rows(F9, [[0, 0], [1, 0]])])
    ind = mr.induce(j2, [[1, 2]])
    mr.validate(ind)
    assert ind.n == 6
    span = set()
    for t in F9.elements():
        if t:
            span.add(Point((t * 1, t * 2)).normalize().codes())
    els = list(F9.elements())
    for a in els:
        for b in els:
            pt = Point((a, b))
            if pt.is_zero():
                continue
            if mr.variety_contains(ind, pt):
                assert pt.normalize().codes() in span


def test_linear_variety_module_examples():
    mod = mr.linear_variety_module(3, 2, F3, [[1, 1]])
    assert mod.n == 3
    pts = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]
    assert {pt for pt in pts if mr.variety_contains(mod, pt)} == {(1, 1), (2, 2)}
    full = mr.linear_variety_module(3, 2, F3, [[1, 0], [0, 1]])
    assert full.n == 1
    assert all(mr.variety_contains(full, pt) for pt in pts)
    reg = mr.linear_variety_module(3, 2, F3, [])
    assert reg.n == 9
    assert not any(mr.variety_contains(reg, pt) for pt in pts)
    with pytest.raises(DependentGenerators):
        mr.linear_variety_module(3, 2, F3, [[1, 1], [2, 2]])


def test_projective_test_examples():
    reg = mr.regular_module(3, 2, F3)
    assert mr.projective_test(reg) == (True, 1)
    both = mr.direct_sum(reg, reg)
    assert mr.projective_test(both) == (True, 2)


def test_endomorphism_basis_examples():
    triv = mr.trivial_module(3, 1, F3)
    basis = mr.endomorphism_basis(triv)
    assert len(basis) == 1 and basis[0] == MatF.identity(F3, 1)
    j2 = EAModule(3, 1, F3, [MatF.from_rows(F3, [[0, 0], [1, 0]])])
    assert len(mr.endomorphism_basis(j2)) == 2
    ff = mr.direct_sum(triv, triv)
    basis4 = mr.endomorphism_basis(ff)
    assert len(basis4) == 4
    assert any(b == MatF.identity(F3, 2) for b in basis4)
    # every basis element commutes with every generator
    for mod in (j2, ff):
        for b in mr.endomorphism_basis(mod):
            for x in mod.gens:
                assert b @ x == x @ b


def test_fitting_decompose_splits_j1_plus_j2():
    j2 = EAModule(3, 1, F3, [MatF.from_rows(F3, [[0, 0], [1, 0]])])
    mod = mr.direct_sum(mr.trivial_module(3, 1, F3), j2)
    result = mr.fitting_decompose(mod, trials=20, seed=7)
    assert result.status == "decomposed"
    assert sorted(s.n for s in result.summands) == [1, 2]
    for s in result.summands:
        mr.validate(s)


def test_fitting_summands_recombine_pointwise():
    mod = mr.direct_sum(benson(F3, 0, 1), mr.trivial_module(3, 2, F3))
    result = mr.fitting_decompose(mod, trials=30, seed=3)
    assert sum(s.n for s in result.summands) == mod.n
    recombined = result.summands[0]
    for s in result.summands[1:]:
        recombined = mr.direct_sum(recombined, s)
    for a in range(3):
        for b in range(3):
            if (a, b) == (0, 0):
                continue
            assert mr.point_jordan_type(recombined, [a, b]) == mr.point_jordan_type(mod, [a, b])


def test_fitting_deterministic():
    mod = mr.direct_sum(benson(F3, 0, 1), benson(F3, 1, 1))
    r1 = mr.fitting_decompose(mod, trials=25, seed=5)
    r2 = mr.fitting_decompose(mod, trials=25, seed=5)
    assert [s.gens for s in r1.summands] == [s.gens for s in r2.summands]


def test_module_file_roundtrip(tmp_path):
    mod = benson(F9, F9.gen(), 1)
    path = tmp_path / "mod.json"
    mod.save(path)
    loaded = EAModule.load(path)
    assert loaded == mod
    raw = json.loads(path.read_text())
    assert raw["format"] == "eamod-v1"
    assert raw["field"] == {"p": 3, "m": 2, "irr": [1, 0, 1]}


def test_module_file_rejects_bad_data(tmp_path):
    mod = benson(F3, 0, 1)
    good = mod.to_dict()
    bad_format = dict(good, format="other")
    with pytest.raises(ValueError):
        EAModule.from_dict(bad_format)
    tampered = json.loads(json.dumps(good))
    tampered["generators"][0][0][1] = [1]  # breaks commutation with X_2
    tampered["generators"][1][1][0] = [1]
    with pytest.raises((NonCommuting, NotNilpotent, ValueError)):
        EAModule.from_dict(tampered)
    out_of_range = json.loads(json.dumps(good))
    out_of_range["generators"][0][1][0] = [5]
    with pytest.raises(ValueError):
        EAModule.from_dict(out_of_range)


def test_lift_to_extension():
    mod = benson(F3, 1, 1)
    lifted = mr.lift_to_extension(mod, F9)
    assert lifted.field == F9 and lifted.n == mod.n
    assert mr.point_jordan_type(lifted, [1, 1]) == mr.point_jordan_type(mod, [1, 1])
    with pytest.raises(MismatchedContext):
        mr.lift_to_extension(lifted, field_create(3, 4))
