import pytest

from sl3mtc.alcove import (
    RHO,
    Weight,
    affine_fold,
    affine_reflect,
    alcove_weights,
    corner_weights,
    dominant_conjugate,
    kostant_multiplicity,
    root_lattice_weights,
    weight_diagram,
    weight_multiplicity,
    weyl_dimension,
    weyl_group,
    weyl_act,
)


@pytest.mark.parametrize("k", range(1, 13))
def test_alcove_size_and_shape(k):
    ws = alcove_weights(k)
    assert len(ws) == (k + 1) * (k + 2) // 2
    assert ws.weights[0] == (0, 0)
    assert (k, 0) in ws and (0, k) in ws
    assert list(ws.weights) == sorted(ws.weights)


def test_alcove_rejects_bad_level():
    with pytest.raises(ValueError, match="invalid level"):
        alcove_weights(0)
    with pytest.raises(ValueError, match="weight outside alcove"):
        alcove_weights(2).index((2, 1))


@pytest.mark.parametrize("k", range(1, 10))
def test_root_lattice_part(k):
    r0 = root_lattice_weights(k)
    brute = [(a, b) for a in range(k + 1) for b in range(k + 1 - a) if (a - b) % 3 == 0]
    assert sorted(r0) == sorted(brute)
    assert corner_weights(k) == [(0, 0), (k, 0), (0, k)]


@pytest.mark.parametrize("hw", [(a, b) for a in range(5) for b in range(5)])
def test_freudenthal_matches_kostant(hw):
    diagram = weight_diagram(hw)
    for mu, m in diagram.items():
        assert m == kostant_multiplicity(hw, mu)
    # a few weights just outside the diagram
    for mu in [(hw[0] + 1, hw[1]), (hw[0], hw[1] + 1), (hw[0] + 3, hw[1])]:
        assert weight_multiplicity(hw, mu) == 0 == kostant_multiplicity(hw, mu)


@pytest.mark.parametrize("hw", [(a, b) for a in range(7) for b in range(7)])
def test_diagram_dimension(hw):
    assert sum(weight_diagram(hw).values()) == weyl_dimension(hw)


@pytest.mark.parametrize("m", range(1, 9))
def test_zero_weight_of_central_diagram(m):
    assert weight_multiplicity((m, m), (0, 0)) == m + 1


def test_weyl_group_is_a_group_of_order_six():
    images = {weyl_act(w, (3, 1)) for w, _ in weyl_group()}
    assert len(images) == 6
    assert all(dominant_conjugate(x) == (3, 1) for x in images)


@pytest.mark.parametrize("k", [1, 2, 5])
@pytest.mark.parametrize("i", [0, 1, 2])
def test_affine_reflections_are_involutions(k, i):
    for x in [(3, -2), (0, 0), (k + 2, 1), (-4, 7)]:
        assert affine_reflect(affine_reflect(x, i, k), i, k) == x


@pytest.mark.parametrize("k", [1, 2, 3, 4, 7])
def test_fold_fixes_alcove_and_kills_walls(k):
    for w in alcove_weights(k):
        res = affine_fold(w, k)
        assert res.target == w and res.sign == 1
    for x in [(-1, 0), (0, -1), (k + 1, 0), (2, k - 1)]:
        assert affine_fold(x, k).target is None


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_fold_lands_in_alcove_with_consistent_sign(k):
    for a in range(-8, 12):
        for b in range(-8, 12):
            res = affine_fold((a, b), k)
            assert res.sign in (1, -1)
            if res.target is not None:
                assert res.target.is_dominant(k)
                assert len(res.word) % 2 == (0 if res.sign == 1 else 1)
                assert affine_fold(res.target, k).target == res.target


def test_specific_wall_folds():
    assert affine_fold((2, 0), 1).target is None
    assert affine_fold((2, -1), 2).target is None


def test_weight_arithmetic():
    assert Weight(1, 2) + (3, 4) == (4, 6)
    assert -Weight(1, -2) == (-1, 2)
    assert RHO.scale(3) == (3, 3)
