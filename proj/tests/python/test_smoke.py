import math

import pytest

import ordcomp


def heaviside():
    n = 1001
    h = 2.0 / 1002
    values = [1.0 if i >= 500 else 0.0 for i in range(n)]
    mask = [i != 500 for i in range(n)]
    return ordcomp.GridFunction([-1.0 + h / 2], [1.0 - h / 2], [n], values, values, mask)


def test_heaviside_completion():
    f = heaviside()
    c = ordcomp.graph_completion(f)
    assert len(c) == 1001
    assert (c.lo[500], c.hi[500]) == (0.0, 1.0)
    assert all(c.lo[i] == c.hi[i] for i in range(1001) if i != 500)
    assert ordcomp.is_h_continuous(c)
    again = ordcomp.graph_completion(c, c.mask)
    assert again.lo == c.lo and again.hi == c.hi
    report = ordcomp.discontinuity_report(c, [0.5, 2.0])
    assert report["gamma_nodes"] == [500]
    assert report["levels"][0]["nodes"] == [500]
    assert report["levels"][1]["nodes"] == []


def test_sparse_mask_is_rejected():
    with pytest.raises(ordcomp.NotDense):
        ordcomp.GridFunction([0.0], [1.0], [4], [0.0] * 4, [0.0] * 4, [True, False, False, True])


def test_macneille_reference_sizes():
    assert len(ordcomp.macneille_complete(ordcomp.Poset.antichain(2))) == 4
    assert len(ordcomp.macneille_complete(ordcomp.Poset.chain(3))) == 3
    assert len(ordcomp.macneille_complete(ordcomp.Poset.antichain(0))) == 1
    bowtie = ordcomp.Poset.from_relations(["a", "b", "c", "d"], [(0, 2), (0, 3), (1, 2), (1, 3)])
    lattice = ordcomp.macneille_complete(bowtie)
    assert len(lattice) == 7
    assert ordcomp.is_complete_lattice(bowtie) is False
    assert ordcomp.preserves_bounds(bowtie, lattice)
    assert lattice.to_dot().startswith("digraph")


def test_solvability():
    y = ordcomp.Poset.chain(3)
    assert ordcomp.solvable(["p"], y, [1], ["c0", "c1"])
    assert not ordcomp.solvable([], y, [], ["c0", "c1"])


def test_solve_and_verify_cos():
    problem = ordcomp.Problem([0.0], [2 * math.pi], 1, "xi_1", "cos(x)")
    for side in (ordcomp.Side.lower, ordcomp.Side.upper):
        sol = ordcomp.solve(problem, 0.1, side)
        audit = ordcomp.verify(problem, sol, 1000)
        assert audit.passed and audit.violation_count == 0
        if side == ordcomp.Side.lower:
            assert -0.1 <= audit.min_residual and audit.max_residual <= 0.0
        else:
            assert 0.0 <= audit.min_residual and audit.max_residual <= 0.1
        assert sol.to_text().count("box ") == sol.box_count


def test_condition_gate():
    points = [[0.1 * (i + 1)] for i in range(9)]
    zero = ordcomp.Problem([0.0], [1.0], 1, "xi_1^2", "0")
    one = ordcomp.Problem([0.0], [1.0], 1, "xi_1^2", "1")
    assert not any(ordcomp.check_condition_23(zero, points))
    assert all(ordcomp.check_condition_23(one, points))


def test_refine_rows():
    problem = ordcomp.Problem.from_text(
        "dimension = 1\norder = 1\nlower = 0\nupper = 3\nF = xi_0 + xi_1^3\nf = sin(x)\n")
    rows = ordcomp.refine(problem, 0.4, 3)
    assert len(rows) == 6
    for row in rows:
        assert row["sup_abs_residual"] <= row["eps"]
        assert row["residual_h_continuous"]


def test_parse_error_position():
    with pytest.raises(ordcomp.ParseError, match="line 5, column 11"):
        ordcomp.Problem.from_text("dimension = 1\norder = 1\nlower = 0\nupper = 1\nF = xi_1 + \nf = 1\n")
