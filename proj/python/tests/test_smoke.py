from fractions import Fraction

import pytest

import evlab

EXAMPLE = [8, 3, 4, 1, 2, 1, 2, 1, 8, 4]


def test_functionals():
    assert evlab.f1(EXAMPLE) == 162
    assert evlab.f2(EXAMPLE) == Fraction(2169)
    assert evlab.g_rect(EXAMPLE) == {"K": 5, "X": 24, "Y": 4, "g": 96}
    assert evlab.rho2([2, 3]) == 13
    assert evlab.phi("01", 1.0) == pytest.approx(0.5)
    assert all(evlab.audit(EXAMPLE).values())


def test_configuration_forms():
    s = evlab.Configuration("0010011")
    assert s.blocks == [2, 1, 2, 2]
    assert evlab.Configuration([1, 1]) == evlab.Configuration("01")
    assert evlab.Configuration().is_ground()
    with pytest.raises(ValueError):
        evlab.Configuration("8,x,4,1")


def test_exact_law_sums_to_one():
    for s in evlab.enumerate_configurations(6):
        law = evlab.step_distribution(s, "2/7", "3/5")
        assert sum(prob for _, prob in law) == 1


def test_drift_spot_values():
    assert evlab.drift([1, 1], "4/7", 0, "phi1") == Fraction(-2, 63)
    assert evlab.drift([1, 1], 0, "1/2", "f1") == Fraction(1, 6)
    assert evlab.drift(EXAMPLE, 1, "1/3", "f2") == 0


def test_tau_deterministic():
    a = evlab.tau_samples([1, 1], 0.0, 1.0, cap=1000, replicas=50, seed=3)
    b = evlab.tau_samples([1, 1], 0.0, 1.0, cap=1000, replicas=50, seed=3, threads=2)
    assert a == b
    assert all(t is not None and t >= 1 for t in a)


def test_colouring_and_render():
    assert evlab.initial_chi(EXAMPLE) == 28
    svg = evlab.render_svg(EXAMPLE, highlight_rect=True)
    assert "area f1 = 162" in svg and "largest-rectangle" in svg
