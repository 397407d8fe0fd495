import csv
import io
import math

import numpy as np
import pytest

from bellnogo import quantum
from bellnogo.errors import DimensionMismatch, InvalidCorrespondence, NotHermitian
from bellnogo.nogo import (
    CLASSICAL_MODEL_EXISTS,
    NO_CLASSICAL_MODEL,
    SCAN_COLUMNS,
    CorrespondenceRecord,
    angle_scan,
    check_anticorrelation,
    check_range_postulate,
    scan_csv,
    theorem4_pipeline,
    vn_additivity_counterexample,
)
from bellnogo.probspace import RandomVariable, SignVariable, bell_functional, covariation, make_space
from bellnogo.realizability import brute_force_oracle, sign_assignments, triple_closed_form

PI = math.pi


def test_range_postulate():
    assert check_range_postulate(RandomVariable([1, -1, 1]), quantum.sigma_theta(0.7).matrix)
    assert not check_range_postulate(RandomVariable([0, 1]), quantum.pauli("z"))
    assert not check_range_postulate(RandomVariable([0.9, -0.9]), quantum.pauli("z"))
    # a variable that only ever takes +1 misses half the spectrum
    assert not check_range_postulate(RandomVariable([1, 1]), quantum.pauli("z"))
    with pytest.raises(NotHermitian):
        check_range_postulate(RandomVariable([1, -1]), np.array([[0, 1], [0, 0]]))


def test_anticorrelation():
    assert check_anticorrelation(make_space([0.3, 0.7]), SignVariable([1, -1]), SignVariable([-1, 1]))
    assert not check_anticorrelation(make_space([0.3, 0.7]), SignVariable([1, -1]), SignVariable([1, -1]))
    # disagreement only on a null atom
    assert check_anticorrelation(make_space([0.0, 1.0]), SignVariable([1, -1]), SignVariable([1, 1]))
    with pytest.raises(DimensionMismatch):
        check_anticorrelation(make_space([1.0]), SignVariable([1, -1]), SignVariable([1, 1]))


def test_vn_counterexample():
    r = vn_additivity_counterexample()
    assert r.operator_sum_spectrum == pytest.approx([-math.sqrt(2), math.sqrt(2)], abs=1e-10)
    assert r.eigenvalue_sums == [-2, 0, 2]
    assert r.disjoint


def test_correspondence_record():
    sz = quantum.pauli("z")
    rec = CorrespondenceRecord(
        variables={"xi": SignVariable([1, -1]), "eta": SignVariable([-1, 1]), "zeta": RandomVariable([0.5, 2])},
        observables={"sz": sz, "sx": quantum.pauli("x")},
        pairs=(("xi", "sz"), ("eta", "sz"), ("zeta", "sx")),
        spaces={"P": make_space([0.5, 0.5])},
        states={"psi": quantum.singlet_density()},
        statistical_pairs=(("P", "psi"),),
    )
    assert rec.image_of("xi") == "sz"
    assert rec.preimage("sz") == ["xi", "eta"]
    assert not rec.is_injective()
    assert rec.contains_observable(sz)
    assert not rec.contains_observable(quantum.sigma_theta(0.3).matrix)
    assert rec.contains_state(quantum.singlet_density())
    assert rec.state_preimage("psi") == ["P"]
    assert rec.range_violations() == [("zeta", "sx")]
    with pytest.raises(InvalidCorrespondence):
        CorrespondenceRecord({"xi": SignVariable([1])}, {"sz": sz}, (("xi", "sz"), ("xi", "sz")))
    with pytest.raises(InvalidCorrespondence):
        CorrespondenceRecord({"xi": SignVariable([1])}, {"sz": sz}, (("xi", "nope"),))


def test_pipeline_violating_angles():
    v = theorem4_pipeline(0, 2 * PI / 3, PI / 3)
    assert v.conclusion == NO_CLASSICAL_MODEL
    assert v.quantum_report.lhs == pytest.approx(1.0, abs=1e-12)
    assert v.quantum_report.rhs == pytest.approx(0.5, abs=1e-12)
    t = v.classical_targets
    assert (t["c12"], t["c32"], t["c13"]) == pytest.approx((-0.5, 0.5, 0.5), abs=1e-12)
    assert not brute_force_oracle(v.problem).feasible
    assert v.violation_margin == pytest.approx(0.5, abs=1e-12)


def witness_model(verdict):
    """Load a feasible witness as an 8-atom space with coordinate sign variables."""
    space = make_space(verdict.classical_outcome.witness)
    s = sign_assignments(3)
    return space, [SignVariable(s[:, k]) for k in range(3)]


def test_pipeline_feasible_examples():
    v = theorem4_pipeline(0, 0, 0)
    assert v.conclusion == CLASSICAL_MODEL_EXISTS
    space, (x1, x2, x3) = witness_model(v)
    for u, w in ((x1, x2), (x2, x3), (x1, x3)):
        assert covariation(space, u, w) == pytest.approx(1, abs=1e-9)

    v = theorem4_pipeline(0, PI / 2, PI)
    assert v.conclusion == CLASSICAL_MODEL_EXISTS
    t = v.classical_targets
    assert (t["c12"], t["c32"], t["c13"]) == pytest.approx((0, 0, -1), abs=1e-12)
    assert triple_closed_form(t["c12"], t["c13"], t["c32"])
    space, (x1, x2, x3) = witness_model(v)
    assert covariation(space, x1, x3) == pytest.approx(-1, abs=1e-9)
    assert bell_functional(space, x1, x2, x3).holds


@pytest.mark.parametrize("phi", [0.1, 1.0, 2.5, -4.0])
def test_rotation_invariance(phi):
    angles = (0.3, 1.9, 2.2)
    base = theorem4_pipeline(*angles).classical_targets
    rotated = theorem4_pipeline(*(a + phi for a in angles)).classical_targets
    for k in base:
        assert rotated[k] == pytest.approx(base[k], abs=1e-12)


def test_angle_scan_soundness_and_witnesses():
    rows = angle_scan(12)
    assert len(rows) == 144
    assert [r[:2] for r in rows] == sorted(r[:2] for r in rows)
    for r in rows:
        if r.margin > 1e-9:
            assert r.verdict == "Infeasible"
    by_angle = {(round(r.theta2, 9), round(r.theta3, 9)): r for r in rows}
    row = by_angle[(round(2 * PI / 3, 9), round(PI / 3, 9))]
    assert row.margin == pytest.approx(0.5, abs=1e-12) and row.verdict == "Infeasible"
    row = by_angle[(round(PI / 2, 9), round(PI, 9))]
    assert row.margin <= 0 and row.verdict == "Feasible"


def test_angle_scan_feasible_witnesses_reload():
    grid = [2 * PI * k / 8 for k in range(8)]
    for t2 in grid:
        for t3 in grid:
            v = theorem4_pipeline(0, t2, t3)
            if v.conclusion != CLASSICAL_MODEL_EXISTS:
                continue
            space, (x1, x2, x3) = witness_model(v)
            t = v.classical_targets
            assert covariation(space, x1, x2) == pytest.approx(t["c12"], abs=1e-9)
            assert covariation(space, x3, x2) == pytest.approx(t["c32"], abs=1e-9)
            assert covariation(space, x1, x3) == pytest.approx(t["c13"], abs=1e-9)
            assert bell_functional(space, x1, x2, x3).holds


def test_angle_scan_rejects_small_grid():
    with pytest.raises(ValueError):
        angle_scan(1)


def test_scan_csv():
    text = scan_csv(angle_scan(3))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == SCAN_COLUMNS == ["theta2", "theta3", "quantum_lhs", "quantum_rhs", "margin", "verdict"]
    assert len(rows) == 10 and all(len(r) == 6 for r in rows)
    assert rows[4][0] == "2.09439510239"
