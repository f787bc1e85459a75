"""Faces of the cube [-1, 1]^n, moment degrees of freedom, and unisolvence.

A degree of freedom on a d-face f is ``u -> integral over f of tr_f(u) ^ q``
with ``q`` drawn from a basis of polynomial (d-k)-forms of degree
r - 2(d-k) - 1 plus the derivatives of homogeneous (d-k-1)-forms of degree
r - 2(d-k) + 1.  Faces are oriented by increasing free-axis order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from trimser.exact import binom
from trimser.forms import PolyForm, render, trace, wedge
from trimser.linalg import D, FormSpace, image, kernel, rank
from trimser.spaces import DH, P, dim_formula, h_space, monomials, sminus_space


@dataclass(frozen=True)
class Face:
    n: int
    pinned: tuple[tuple[int, int], ...]
    free_axes: tuple[int, ...]

    def __post_init__(self) -> None:
        axes = [a for a, _ in self.pinned]
        if sorted(axes + list(self.free_axes)) != list(range(self.n)):
            raise ValueError("pinned and free axes must partition the coordinates")
        if any(v not in (-1, 1) for _, v in self.pinned):
            raise ValueError("pinned coordinates take the values -1 or +1")

    @property
    def dim(self) -> int:
        return len(self.free_axes)

    def label(self) -> str:
        if not self.pinned:
            return "interior"
        return ",".join(f"x{a + 1}={v:+d}" for a, v in self.pinned)


def faces(n: int, d: int) -> list[Face]:
    """All d-faces, ordered by free axes, then by pinned signs with -1 first."""
    if not 0 <= d <= n:
        raise ValueError(f"face dimension {d} outside [0, {n}]")
    out = []
    for free in itertools.combinations(range(n), d):
        fixed = [a for a in range(n) if a not in free]
        for signs in itertools.product((-1, 1), repeat=len(fixed)):
            out.append(Face(n, tuple(zip(fixed, signs)), free))
    return out


def trace_to_face(u: PolyForm, face: Face) -> PolyForm:
    """Pull ``u`` back to ``face``; the result is written in the face's free coordinates."""
    if u.n != face.n:
        raise ValueError("form and face live in different dimensions")
    # Highest axis first so lower axis labels are still valid after each relabel.
    for axis, value in sorted(face.pinned, reverse=True):
        u = trace(u, axis, value)
    return u


def _line_integral(a: int) -> Fraction:
    return Fraction(0) if a % 2 else Fraction(2, a + 1)


def integrate_over_face(omega: PolyForm, face: Face) -> Fraction:
    if omega.n != face.dim or omega.k != face.dim:
        raise ValueError(f"need a {face.dim}-form on R^{face.dim} to integrate over this face")
    total = Fraction(0)
    for (alpha, _), c in omega.items():
        v = c
        for a in alpha:
            v *= _line_integral(a)
            if not v:
                break
        total += v
    return total


@dataclass(frozen=True)
class DofFunctional:
    face: Face
    weight: PolyForm
    part: str  # "P" or "dH"

    def describe(self) -> str:
        return f"{self.face.label()} [{self.part}] {render(self.weight)}"


def _weight_degrees(d: int, k: int, r: int) -> tuple[int, int]:
    return r - 2 * (d - k) - 1, r - 2 * (d - k) + 1


def weight_basis(d: int, k: int, r: int) -> tuple[list[PolyForm], list[PolyForm]]:
    """Canonical weight bases (P-part, dH-part) on a d-face for k-forms of order r."""
    p_deg, h_deg = _weight_degrees(d, k, r)
    p_part = [m for j in range(p_deg + 1) for m in monomials(d, d - k, j)]
    if d - k - 1 < 0 or h_deg < 0:
        return p_part, []
    return p_part, list(image(h_space(d, d - k - 1, h_deg), D).basis)


def face_dims(n: int, k: int, r: int) -> range:
    return range(k, min(n, r // 2 + k) + 1)


def dof_functionals(n: int, k: int, r: int) -> list[DofFunctional]:
    _check(n, k, r)
    out = []
    for d in face_dims(n, k, r):
        p_part, h_part = weight_basis(d, k, r)
        for face in faces(n, d):
            out.extend(DofFunctional(face, q, "P") for q in p_part)
            out.extend(DofFunctional(face, q, "dH") for q in h_part)
    return out


def dof_count(n: int, k: int, r: int) -> int:
    _check(n, k, r)
    total = 0
    for d in face_dims(n, k, r):
        per_face = binom(r - d + 2 * k - 1, r - d + k - 1) * binom(r - d + k - 1, d - k) + binom(
            r - d + 2 * k, k
        ) * binom(r - d + k - 1, d - k - 1)
        total += 2 ** (n - d) * binom(n, d) * per_face
    return total


def interior_dof_count(n: int, k: int, r: int) -> int:
    """Number of functionals attached to the cube itself, counted from the weight bases."""
    _check(n, k, r)
    if n not in face_dims(n, k, r):
        return 0
    p_part, h_part = weight_basis(n, k, r)
    return len(p_part) + len(h_part)


def apply_dof(phi: DofFunctional, u: PolyForm) -> Fraction:
    return integrate_over_face(wedge(trace_to_face(u, phi.face), phi.weight), phi.face)


def dof_matrix(functionals: list[DofFunctional], basis: list[PolyForm]) -> list[list[Fraction]]:
    return [[apply_dof(phi, b) for b in basis] for phi in functionals]


@dataclass(frozen=True)
class UnisolvenceReport:
    n: int
    k: int
    r: int
    rows: int
    cols: int
    rank: int
    vanishing_trace_dim: int
    interior_rank: int

    @property
    def square(self) -> bool:
        return self.rows == self.cols

    @property
    def unisolvent(self) -> bool:
        return self.square and self.rank == self.cols

    @property
    def lemma_holds(self) -> bool:
        # Interior functionals alone must separate forms with vanishing boundary trace.
        return self.interior_rank == self.vanishing_trace_dim


def _facet_traces(u: PolyForm) -> list[PolyForm]:
    return [trace(u, axis, value) for axis in range(u.n) for value in (-1, 1)]


def unisolvence_check(n: int, k: int, r: int) -> UnisolvenceReport:
    _check(n, k, r)
    basis = list(sminus_space(n, k, r).basis)
    functionals = dof_functionals(n, k, r)
    full_rank = rank(dof_matrix(functionals, basis)) if basis and functionals else 0
    bubbles = kernel(sminus_space(n, k, r), _facet_traces)
    interior = [phi for phi in functionals if phi.face.dim == n]
    inner_rank = rank(dof_matrix(interior, list(bubbles.basis))) if interior and bubbles.dim else 0
    return UnisolvenceReport(n, k, r, len(functionals), len(basis), full_rank, bubbles.dim, inner_rank)


def minimality_identity(n: int, k: int, r: int) -> bool:
    """Interior DOF count equals dim P_{r-2(n-k)-1} (n-k)-forms + dim dH_{r-2(n-k)+1} (n-k-1)-forms."""
    _check(n, k, r)
    p_deg, h_deg = _weight_degrees(n, k, r)
    expected = dim_formula(P, n, n - k, p_deg) if p_deg >= 0 else 0
    if n - k >= 1:
        expected += dim_formula(DH, n, n - k, h_deg)
    return interior_dof_count(n, k, r) == expected


def _check(n: int, k: int, r: int) -> None:
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= k <= n:
        raise ValueError(f"form order k={k} outside [0, {n}]")
    if r < 1:
        raise ValueError("r must be at least 1")
