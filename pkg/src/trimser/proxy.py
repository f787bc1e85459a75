"""Vector proxies in two and three dimensions.

Scalar and vector polynomial fields are converted to forms with the flat
operator; the classical AC rectangle pair and the CF square and cube
families are then compared with the trimmed serendipity spaces by
echelon-basis equality.

Coordinates are ``x, y, z`` = axes 0, 1, 2.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from trimser.exact import enumerate_multi_indices
from trimser.forms import PolyForm, partial, render, wedge
from trimser.linalg import FormSpace, first_outside, image, is_direct, plus, span
from trimser.linalg import D
from trimser.properties import FAIL, PASS, PropertyReport
from trimser.spaces import j_space, p_space, sminus_space


@dataclass(frozen=True)
class VectorField:
    components: tuple[PolyForm, ...]

    def __post_init__(self) -> None:
        n = len(self.components)
        if n not in (2, 3):
            raise ValueError("vector fields have 2 or 3 components")
        if any(c.n != n or c.k != 0 for c in self.components):
            raise ValueError("components must be polynomials (0-forms) in the same n variables")

    @property
    def n(self) -> int:
        return len(self.components)

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, p: PolyForm) -> VectorField:
        """Multiply every component by the polynomial ``p``."""
        return VectorField(tuple(wedge(p, c) for c in self.components))


def poly(n: int, terms: dict[tuple[int, ...], object]) -> PolyForm:
    """Polynomial from ``{exponents: coefficient}``."""
    return PolyForm(n, 0, {(alpha, ()): c for alpha, c in terms.items()})


def _dx(n: int, *axes: int) -> PolyForm:
    return PolyForm(n, len(axes), [(((0,) * n, axes), 1)])


def flat(v: VectorField, k: int) -> PolyForm:
    """Vector field to a 1-form (n = 2, 3) or a 2-form (n = 3)."""
    n, c = v.n, v.components
    if k == 1:
        return sum((wedge(c[i], _dx(n, i)) for i in range(1, n)), wedge(c[0], _dx(n, 0)))
    if (n, k) == (3, 2):
        return wedge(c[0], _dx(3, 1, 2)) - wedge(c[1], _dx(3, 0, 2)) + wedge(c[2], _dx(3, 0, 1))
    raise ValueError(f"no vector proxy for {k}-forms on R^{n}")


def flat_scalar(w: PolyForm, k: int) -> PolyForm:
    """Scalar field to a 0-form or to a volume form."""
    if w.k != 0:
        raise ValueError("expected a polynomial")
    if k == 0:
        return w
    if k == w.n:
        return wedge(w, _dx(w.n, *range(w.n)))
    raise ValueError(f"a scalar is a 0-form or an {w.n}-form, not a {k}-form")


def _coefficient(omega: PolyForm, sigma: tuple[int, ...]) -> PolyForm:
    return PolyForm._raw(omega.n, 0, {(alpha, ()): c for (alpha, s), c in omega.items() if s == sigma})


def sharp(omega: PolyForm) -> VectorField | PolyForm:
    """Inverse of the flat operators."""
    n, k = omega.n, omega.k
    if k == 0:
        return omega
    if k == n:
        return _coefficient(omega, tuple(range(n)))
    if k == 1 and n in (2, 3):
        return VectorField(tuple(_coefficient(omega, (i,)) for i in range(n)))
    if (n, k) == (3, 2):
        return VectorField((_coefficient(omega, (1, 2)), -_coefficient(omega, (0, 2)), _coefficient(omega, (0, 1))))
    raise ValueError(f"no vector proxy for {k}-forms on R^{n}")


def rot(v: VectorField) -> VectorField:
    """Clockwise quarter turn: (v1, v2) -> (v2, -v1)."""
    if v.n != 2:
        raise ValueError("rot is defined on the plane")
    a, b = v.components
    return VectorField((b, -a))


def grad(w: PolyForm) -> VectorField:
    return VectorField(tuple(partial(w, i) for i in range(w.n)))


def div(v: VectorField) -> PolyForm:
    out = partial(v.components[0], 0)
    for i in range(1, v.n):
        out = out + partial(v.components[i], i)
    return out


def curl2d(w: PolyForm) -> VectorField:
    if w.n != 2:
        raise ValueError("curl2d takes a scalar on the plane")
    return rot(grad(w))


def curl3d(v: VectorField) -> VectorField:
    if v.n != 3:
        raise ValueError("curl3d takes a field in space")
    a, b, c = v.components
    return VectorField((partial(c, 1) - partial(b, 2), partial(a, 2) - partial(c, 0), partial(b, 0) - partial(a, 1)))


def position(n: int) -> VectorField:
    return VectorField(tuple(PolyForm.coordinate(n, i) for i in range(n)))


def cross(u: VectorField, v: VectorField) -> VectorField:
    a1, a2, a3 = u.components
    b1, b2, b3 = v.components
    return VectorField(
        (
            wedge(a2, b3) - wedge(a3, b2),
            wedge(a3, b1) - wedge(a1, b3),
            wedge(a1, b2) - wedge(a2, b1),
        )
    )


# --- polynomial families ----------------------------------------------------


def homogeneous_in(n: int, axes: Sequence[int], r: int) -> list[PolyForm]:
    """Monomials of degree ``r`` in the listed variables only."""
    out = []
    for sub in enumerate_multi_indices(len(axes), r):
        alpha = [0] * n
        for a, e in zip(axes, sub):
            alpha[a] = e
        out.append(poly(n, {tuple(alpha): 1}))
    return out


def polynomials(n: int, r: int) -> list[PolyForm]:
    return [p for j in range(r + 1) for p in homogeneous_in(n, range(n), j)]


def vector_polynomials(n: int, r: int) -> list[VectorField]:
    zero = PolyForm.zero(n, 0)
    out = []
    for i in range(n):
        for p in polynomials(n, r):
            out.append(VectorField(tuple(p if j == i else zero for j in range(n))))
    return out


def homogeneous_vectors(n: int, r: int) -> list[VectorField]:
    zero = PolyForm.zero(n, 0)
    return [
        VectorField(tuple(p if j == i else zero for j in range(n)))
        for i in range(n)
        for p in homogeneous_in(n, range(n), r)
    ]


def _x(n: int, i: int) -> PolyForm:
    return PolyForm.coordinate(n, i)


# --- AC pair on the square ---------------------------------------------------


def ac_supplement(r: int) -> tuple[VectorField, VectorField]:
    """The two supplemental fields, as 2D curls of their stream functions."""
    if r < 1:
        raise ValueError("r must be at least 1")
    w1 = poly(2, {(r - 1, 1): 1, (r + 1, 1): -1})  # x^(r-1) (1 - x^2) y
    w2 = poly(2, {(1, r - 1): 1, (1, r + 1): -1})  # x y^(r-1) (1 - y^2)
    return curl2d(w1), curl2d(w2)


def build_AC_pair(r: int) -> tuple[FormSpace, FormSpace, int]:
    """Rotated-and-flattened velocity space, pressure space as 2-forms, and the generator count."""
    gens = list(vector_polynomials(2, r))
    gens += [position(2).scale(p) for p in homogeneous_in(2, (0, 1), r)]
    gens += list(ac_supplement(r))
    v = span([flat(rot(g), 1) for g in gens], 2, 1)
    w = span([flat_scalar(p, 2) for p in polynomials(2, r)], 2, 2)
    return v, w, len(gens)


def sigma_hat_in_expected(r: int) -> bool:
    """Both rotated supplemental fields lie in d J_{r+1} 0-forms + P_r 1-forms."""
    target = plus(image(j_space(2, 0, r + 1), D), p_space(2, 1, r))
    return all(target.contains(flat(rot(s), 1)) for s in ac_supplement(r))


# --- CF families on the square and cube --------------------------------------


def delta_h(n: int, r: int) -> list[PolyForm]:
    """Spanning polynomials of the scalar supplement at degree ``r`` (one above the family's index)."""
    if n == 2:
        return [poly(2, {(1, r): 1}), poly(2, {(r, 1): 1})]
    out = []
    for i in range(3):
        others = [a for a in range(3) if a != i]
        out += [wedge(_x(3, i), q) for q in homogeneous_in(3, others, r)]
    for i in range(3):
        alpha = [1, 1, 1]
        alpha[i] = r
        out.append(poly(3, {tuple(alpha): 1}))
    return out


def delta_e(r: int) -> list[VectorField]:
    """x p(y,z) (y grad z - z grad y) with p of degree r, and its cyclic shifts."""
    out = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        rotation = VectorField(
            tuple(_x(3, j) if a == k else -_x(3, k) if a == j else PolyForm.zero(3, 0) for a in range(3))
        )
        for p in homogeneous_in(3, (j, k), r):
            out.append(rotation.scale(wedge(_x(3, i), p)))
    return out


def build_CF_parts(n: int, r: int, k: int) -> list[FormSpace]:
    """Each displayed summand of the CF space, flattened to k-forms."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if n == 2:
        if k == 0:
            return [span(polynomials(2, r + 1), 2, 0), span(delta_h(2, r + 1), 2, 0)]
        if k == 1:
            return [
                span([flat(v, 1) for v in vector_polynomials(2, r)], 2, 1),
                span([flat(rot(position(2).scale(p)), 1) for p in homogeneous_in(2, (0, 1), r)], 2, 1),
                span([flat(grad(h), 1) for h in delta_h(2, r + 1)], 2, 1),
            ]
        if k == 2:
            return [span([flat_scalar(p, 2) for p in polynomials(2, r)], 2, 2)]
    if n == 3:
        if k == 0:
            return [span(polynomials(3, r + 1), 3, 0), span(delta_h(3, r + 1), 3, 0)]
        if k == 1:
            return [
                span([flat(v, 1) for v in vector_polynomials(3, r)], 3, 1),
                span([flat(cross(position(3), q), 1) for q in homogeneous_vectors(3, r)], 3, 1),
                span([flat(grad(h), 1) for h in delta_h(3, r + 1)], 3, 1),
                span([flat(e, 1) for e in delta_e(r)], 3, 1),
            ]
        if k == 2:
            return [
                span([flat(v, 2) for v in vector_polynomials(3, r)], 3, 2),
                span([flat(position(3).scale(p), 2) for p in homogeneous_in(3, (0, 1, 2), r)], 3, 2),
                span([flat(curl3d(e), 2) for e in delta_e(r)], 3, 2),
            ]
        if k == 3:
            return [span([flat_scalar(p, 3) for p in polynomials(3, r)], 3, 3)]
    raise ValueError(f"no CF space for n={n}, k={k}")


def build_CF_space(n: int, r: int, k: int) -> FormSpace:
    return plus(*build_CF_parts(n, r, k))


# --- equivalence checks -------------------------------------------------------


def _compare(a: FormSpace, b: FormSpace) -> str | None:
    w = first_outside(a, b)
    if w is None:
        w = first_outside(b, a)
    return None if w is None else render(w)


def check_prop_AC(r: int) -> PropertyReport:
    v, w, count = build_AC_pair(r)
    sv, sw = sminus_space(2, 1, r + 1), sminus_space(2, 2, r + 1)
    detail = f"dim V {v.dim} from {count} generators, dim W {w.dim}; Sminus_{r + 1} dims {sv.dim}, {sw.dim}"
    witness = _compare(v, sv) or _compare(w, sw)
    if witness is None and count != v.dim:
        witness = f"generators not independent: {count} vs {v.dim}"
    if witness is None and not sigma_hat_in_expected(r):
        witness = "a supplemental field falls outside d J + P"
    return PropertyReport("proxy_AC", 2, None, r, PASS if witness is None else FAIL, detail, witness)


def check_prop_CF(n: int, r: int) -> PropertyReport:
    dims, witness = [], None
    for k in range(n + 1):
        parts = build_CF_parts(n, r, k)
        total = plus(*parts)
        dims.append(str(total.dim))
        if witness is None:
            witness = _compare(total, sminus_space(n, k, r + 1))
            if witness is None and not is_direct(*parts):
                witness = f"summands for k={k} overlap"
    detail = f"dims {','.join(dims)}"
    return PropertyReport("proxy_CF", n, None, r, PASS if witness is None else FAIL, detail, witness)
