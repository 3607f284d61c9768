import random

import pytest

from multigerm import (
    BranchGerm,
    Ideal,
    PresentationMatrix,
    UnsupportedBranch,
    VariableRing,
    block_diagonal,
    branch_presentation,
    detect_form,
    equals,
    fitting_ideal,
    mult_matrix_presentation,
)
from multigerm.presentation import MultiGerm, NotMonic, minors
from multigerm.ideal import is_subset

import reference_data as ref

T4 = VariableRing(("T", "X", "Y", "Z"))


def test_detect_form(big):
    b1, b2 = big.branches
    assert detect_form(b2).kind == "graph"
    form = detect_form(b1)
    assert (form.kind, form.fiber, form.monic, form.degree) == ("weierstrass", "y", 2, 3)
    S1 = VariableRing(("x",))
    P2 = VariableRing(("X", "Y"))
    assert detect_form(BranchGerm(S1, P2, [S1("x^2"), S1("x^3")])).kind == "weierstrass"


def test_corank_two_is_rejected():
    S = VariableRing(("u", "v"))
    P = VariableRing(("X", "Y", "Z"))
    b = BranchGerm(S, P, [S("u^2"), S("u*v"), S("v^2")], "cone")
    assert detect_form(b).kind == "unsupported"
    with pytest.raises(UnsupportedBranch, match="cone"):
        branch_presentation(b)


def test_graph_presentation(big):
    lam = branch_presentation(big.branches[1])
    assert lam.q == 1
    assert equals(Ideal(T4, [lam.entries[0][0]]), Ideal.parse(T4, ["T - Z"]))
    S = VariableRing(("x",))
    P = VariableRing(("X", "Y"))
    assert str(branch_presentation(BranchGerm(S, P, [S("x"), S("0")])).entries[0][0]) == "Y"


def test_weierstrass_presentation_matches_fitting_ideals(big):
    lam = branch_presentation(big.branches[0])
    assert lam.q == 3
    reference = PresentationMatrix.parse(T4, ref.LAMBDA_1)
    for k in range(4):
        assert equals(fitting_ideal(lam, k), fitting_ideal(reference, k))


def test_determinant_pulls_back_to_zero(big):
    for b in big.branches:
        det = branch_presentation(b).det()
        assert not det.subs(b.as_images(), b.source).terms


def test_block_diagonal(big):
    X, Y, Z = (PresentationMatrix(T4, ((T4.gen(v),),)) for v in "XYZ")
    D = block_diagonal([X, Y, Z])
    assert D.q == 3 and str(D.entries[1][1]) == "Y" and not D.entries[0][1].terms
    assert block_diagonal([X]) == X
    lam1, lam2 = (branch_presentation(b) for b in big.branches)
    lam = block_diagonal([lam1, lam2])
    assert lam.q == 4 and lam.entries[3][3] == lam2.entries[0][0]


def test_fitting_ideal_examples():
    D = PresentationMatrix.parse(VariableRing(("X", "Y", "Z")), [["X", "0", "0"], ["0", "Y", "0"], ["0", "0", "Z"]])
    R = D.ring
    assert equals(fitting_ideal(D, 2), Ideal.parse(R, ["X", "Y", "Z"]))
    assert equals(fitting_ideal(D, 1), Ideal.parse(R, ["X*Y", "X*Z", "Y*Z"]))
    assert fitting_ideal(D, 3).is_unit()
    with pytest.raises(ValueError):
        fitting_ideal(D, -1)


def test_mult_matrix_first_column():
    R = VariableRing(("t", "x", "w", "y"))
    M = mult_matrix_presentation(R("y^5 + x*y - t"), R("y^3 + t*y - w"), "y")
    assert [str(M.entries[i][0]) for i in range(5)] == ["-w", "t", "0", "1", "0"]
    Id = mult_matrix_presentation(R("y^5 + x*y - t"), R.one(), "y")
    assert all(Id.entries[i][j] == (R.without(["y"]).one() if i == j else R.without(["y"]).zero()) for i in range(5) for j in range(5))
    with pytest.raises(NotMonic):
        mult_matrix_presentation(R("t*y^2 + x"), R.one(), "y")


def _random_unimodular(n, rng):
    """Product of elementary matrices with small integer entries."""
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        c = rng.randint(-3, 3)
        if i != j:
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
    return M


def _mul(A, lam):
    R = lam.ring
    n = lam.q
    rows = []
    for i in range(n):
        rows.append(tuple(sum((A[i][k] * lam.entries[k][j] for k in range(n)), R.zero()) for j in range(n)))
    return PresentationMatrix(R, tuple(rows))


def _transpose(lam):
    return PresentationMatrix(lam.ring, tuple(zip(*lam.entries)))


def all_reference_matrices(big):
    S1 = big.branches[0].source
    S2 = big.branches[1].source
    return [
        PresentationMatrix.parse(T4, ref.LAMBDA_1),
        PresentationMatrix.parse(T4, ref.LAMBDA_2),
        block_diagonal([PresentationMatrix.parse(T4, ref.LAMBDA_1), PresentationMatrix.parse(T4, ref.LAMBDA_2)]),
        PresentationMatrix.parse(S1, ref.XI_1),
        PresentationMatrix.parse(S1, ref.XI_2),
        PresentationMatrix.parse(S2, ref.XI_TILDE),
    ]


def test_fitting_invariance_under_row_and_column_operations(big):
    rng = random.Random(3)
    for lam in all_reference_matrices(big):
        P, Q = _random_unimodular(lam.q, rng), _random_unimodular(lam.q, rng)
        moved = _transpose(_mul(Q, _transpose(_mul(P, lam))))
        for k in range(lam.q + 1):
            assert equals(fitting_ideal(lam, k), fitting_ideal(moved, k))


def test_fitting_invariance_under_stabilization(big):
    for lam in all_reference_matrices(big):
        bigger = block_diagonal([lam, PresentationMatrix(lam.ring, ((lam.ring.one(),),))])
        for k in range(lam.q + 1):
            assert equals(fitting_ideal(lam, k), fitting_ideal(bigger, k))


def test_fitting_chain(big):
    for lam in all_reference_matrices(big):
        for k in range(lam.q):
            assert is_subset(fitting_ideal(lam, k), fitting_ideal(lam, k + 1))


def test_minors_of_rectangular_matrix():
    R = VariableRing(("X", "Y", "T"))
    M = [[R(e) for e in row] for row in ref.M_CURVE]
    assert len(minors(M, 2, R)) == 3
    assert minors(M, 3, R) == []
    assert minors(M, 0, R) == [R.one()]


def test_multigerm_checks(big):
    with pytest.raises(ValueError):
        MultiGerm(T4, [])
    assert big.r == 2 and big.n == 3


def test_printing():
    R = VariableRing(("x",))
    assert str(PresentationMatrix(R, ())) == "[ ]"
    assert PresentationMatrix.parse(R, [["x", "1"], ["0", "x^2"]]).to_lists() == [["x", "1"], ["0", "x^2"]]
