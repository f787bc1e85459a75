import pytest

from trimser.exact import binom
from trimser.linalg import D, KAPPA, equal, image, is_direct, plus, subspace
from trimser.spaces import (
    H,
    J,
    J_VIA_CHAR,
    P,
    PMINUS,
    QMINUS,
    S,
    SMINUS,
    SpaceKind,
    appendix_b_dim,
    closed_form_dim,
    dX,
    dim_formula,
    generate_space,
    h_linear,
    kappaX,
)

GRID = [(n, k, r) for n in (1, 2, 3) for k in range(n + 1) for r in range(0, 6)] + [
    (4, k, r) for k in range(5) for r in range(0, 3)
]

BASIC = [H, P, PMINUS, J, J_VIA_CHAR, h_linear(0), h_linear(1), h_linear(2), h_linear(3)]
NEEDS_R1 = [S, SMINUS, dX(S), kappaX(S), dX(SMINUS)]
WRAPPED = [dX(H), dX(P), dX(J), kappaX(H), kappaX(P), kappaX(J)]


@pytest.mark.parametrize("n,k,r", GRID)
def test_basis_size_matches_formula(n, k, r):
    kinds = BASIC + WRAPPED + (NEEDS_R1 if r >= 1 else [])
    for kind in kinds:
        assert generate_space(kind, n, k, r).dim == dim_formula(kind, n, k, r), str(kind)


@pytest.mark.parametrize("n,k,r", [c for c in GRID if c[2] >= 1])
def test_j_definition_equals_characterisation(n, k, r):
    assert generate_space(J, n, k, r) == generate_space(J_VIA_CHAR, n, k, r)


@pytest.mark.parametrize("n,k,r", [c for c in GRID if c[2] >= 1])
def test_sminus_routes_agree(n, k, r):
    assert generate_space(SMINUS, n, k, r) == generate_space(SMINUS, n, k, r, route="decomposition")


def test_generate_examples():
    assert generate_space(SMINUS, 2, 1, 2).dim == 10
    for n in (1, 2, 3):
        for r in range(1, 5):
            assert equal(generate_space(SMINUS, n, 0, r), generate_space(S, n, 0, r))
    for r in range(1, 7):
        assert generate_space(J, 2, 1, r).dim == 0


def test_generate_errors():
    with pytest.raises(ValueError):
        generate_space(SMINUS, 2, 3, 1)
    with pytest.raises(ValueError):
        generate_space(SMINUS, 2, -1, 1)
    with pytest.raises(ValueError):
        generate_space(QMINUS, 3, 2, 1)
    with pytest.raises(ValueError):
        generate_space(P, 2, 1, 1, route="decomposition")


def test_dim_formula_examples():
    assert dim_formula(SMINUS, 3, 1, 2) == 36
    assert dim_formula(SMINUS, 4, 2, 3) == 216
    assert dim_formula(J, 2, 0, 2) == 2
    r = 2
    assert dim_formula(J, 2, 0, r) == 4 + 4 * (r - 1) + binom(r - 2, 2) - binom(r + 2, 2)
    assert dim_formula(QMINUS, 3, 2, 1) == 6


def test_j_closed_forms_on_square_and_cube():
    for r in range(1, 30):
        assert dim_formula(J, 2, 0, r) == 4 + 4 * (r - 1) + binom(r - 2, 2) - binom(r + 2, 2)
        assert dim_formula(J, 2, 1, r) == 0
        assert dim_formula(J, 3, 0, r) == (4 if r == 1 else 10 if r == 2 else 3 * (r + 1))
        assert dim_formula(J, 3, 1, r) == (2 if r == 1 else 3 * r)
        assert dim_formula(J, 3, 2, r) == 0


def test_closed_form_examples():
    assert closed_form_dim(2, 1, 1) == 4
    assert closed_form_dim(2, 1, 3) == 17
    assert closed_form_dim(3, 1, 2) == 36
    assert appendix_b_dim is closed_form_dim
    with pytest.raises(ValueError):
        closed_form_dim(4, 1, 1)


def test_closed_form_agrees_with_general_formula():
    for n in (2, 3):
        for k in range(n + 1):
            for r in range(1, 51):
                assert closed_form_dim(n, k, r) == dim_formula(SMINUS, n, k, r), (n, k, r)


def test_cubic_closed_form_for_one_forms_on_cube():
    for r in range(3, 40):
        assert 2 * dim_formula(SMINUS, 3, 1, r) == r**3 + 5 * r**2 + 18 * r + 6


@pytest.mark.parametrize("n,k,r", [(n, k, r) for n in (1, 2, 3) for k in range(n + 1) for r in range(1, 5)])
def test_degree_property_of_serendipity(n, k, r):
    delta = 1 if k == 0 else 0
    for f in generate_space(S, n, k, r).basis:
        for (alpha, sigma), _ in f.items():
            deg = sum(alpha)
            lin = sum(1 for i, a in enumerate(alpha) if a == 1 and i not in sigma)
            assert deg <= r + n - k - delta
            assert deg - lin <= r + 1 - delta


@pytest.mark.parametrize("n,k,r", [(n, k, r) for n in (1, 2, 3) for k in range(1, n + 1) for r in range(1, 5)])
def test_kappa_containment(n, k, r):
    assert subspace(image(generate_space(S, n, k, r - 1), KAPPA), generate_space(S, n, k - 1, r))


@pytest.mark.parametrize("n,k,r", [(n, k, r) for n in (1, 2, 3) for k in range(n + 1) for r in range(0, 5)])
def test_homogeneous_splitting(n, k, r):
    parts = []
    if k < n and r >= 1:
        parts.append(image(generate_space(H, n, k + 1, r - 1), KAPPA))
    if k > 0:
        parts.append(image(generate_space(H, n, k - 1, r + 1), D))
    h = generate_space(H, n, k, r)
    if parts:
        assert plus(*parts) == h and is_direct(*parts)
    else:
        assert h.dim == (1 if r == 0 else 0)


@pytest.mark.parametrize("n,k,r", [(n, k, r) for n in (1, 2, 3) for k in range(n + 1) for r in range(1, 5)])
def test_lemma_identities(n, k, r):
    sm = generate_space(SMINUS, n, k, r)
    if k == n:
        assert sm == generate_space(S, n, n, r - 1)
    ds = generate_space(dX(S), n, k, r + 1)
    assert plus(sm, ds) == generate_space(S, n, k, r)


@pytest.mark.parametrize(
    "text",
    ["H", "P", "Pminus", "J", "J_via_char", "S", "Sminus", "Qminus_dim_only", "H_linear:2", "d(J)", "kappa(d(S))"],
)
def test_space_kind_text_round_trip(text):
    assert str(SpaceKind.parse(text)) == text


def test_space_kind_validation():
    assert SpaceKind.parse("Jchar") == J_VIA_CHAR
    with pytest.raises(ValueError):
        SpaceKind.parse("Serendipity")
    with pytest.raises(ValueError):
        SpaceKind("H_linear")
    with pytest.raises(ValueError):
        SpaceKind("dX")


def test_four_cube_dimensions_beyond_the_table():
    extra = {0: (681, 941, 1271), 1: (2272, 3202, 4396), 2: (2846, 4092, 5711), 3: (1584, 2325, 3300)}
    for k, dims in extra.items():
        assert tuple(dim_formula(SMINUS, 4, k, r) for r in (8, 9, 10)) == dims
