"""Exact linear algebra over Q for matrices and for spaces of polynomial forms.

Two independent elimination routes live here.  :func:`rref` works on dense
matrices with fraction-free integer row operations and normalises at the end.
:class:`FormSpace` keeps a sparse basis in fully reduced row-echelon form
keyed by form monomials, updated incrementally as vectors are added.  Since
the reduced echelon form of a space is unique, two FormSpaces are equal iff
their basis lists are equal.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from trimser.exact import Scalar, as_rational
from trimser.forms import Key, PolyForm, coordinate_order, exterior_derivative, koszul, trace

QMatrix = list[list[Fraction]]


# --- dense matrices ---------------------------------------------------------


def _row_to_ints(row: Sequence[Scalar]) -> list[int]:
    fr = [as_rational(x) for x in row]
    lcm = 1
    for x in fr:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in fr]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = math.gcd(g, x)
        if g == 1:
            return row
    return [x // g for x in row] if g > 1 else row


def rref(matrix: Sequence[Sequence[Scalar]]) -> tuple[QMatrix, int]:
    """Reduced row-echelon form and rank.

    Rows are cleared to integers and kept primitive during Gauss-Jordan
    elimination; pivots are divided out only at the end.
    """
    rows = [_row_to_ints(r) for r in matrix]
    if not rows:
        return [], 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    pivot_row = 0
    pivots: list[int] = []
    for col in range(ncols):
        sel = next((i for i in range(pivot_row, len(rows)) if rows[i][col]), None)
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        p = rows[pivot_row]
        pv = p[col]
        for i in range(len(rows)):
            if i == pivot_row or not rows[i][col]:
                continue
            f = rows[i][col]
            rows[i] = _primitive([pv * a - f * b for a, b in zip(rows[i], p)])
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    out: QMatrix = []
    for i, row in enumerate(rows):
        if i < len(pivots):
            pv = row[pivots[i]]
            out.append([Fraction(x, pv) for x in row])
        else:
            out.append([Fraction(0)] * ncols)
    return out, len(pivots)


def rank(matrix: Sequence[Sequence[Scalar]]) -> int:
    return rref(matrix)[1]


def nullspace(matrix: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    if not matrix:
        if ncols is None:
            raise ValueError("column count needed for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    reduced, rk = rref(matrix)
    ncols = len(reduced[0])
    pivots = []
    for row in reduced[:rk]:
        pivots.append(next(j for j, x in enumerate(row) if x))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


# --- sparse echelon basis ---------------------------------------------------


class Echelon:
    """Incrementally maintained reduced row-echelon basis of sparse vectors.

    Vectors are dicts from hashable coordinates to Fractions.  ``order`` maps a
    coordinate to a sortable key; the pivot of a row is its smallest coordinate.
    """

    def __init__(self, order: Callable[[Any], Any] = lambda c: c):
        self.order = order
        self.rows: dict[Hashable, dict[Hashable, Fraction]] = {}

    def reduce(self, vec: dict[Hashable, Fraction]) -> dict[Hashable, Fraction]:
        out = dict(vec)
        rows = self.rows
        # Rows are zero on each other's pivots, so one pass suffices.
        for p in [c for c in out if c in rows]:
            f = out.get(p)
            if not f:
                continue
            for c, v in rows[p].items():
                w = out.get(c, 0) - f * v
                if w:
                    out[c] = w
                else:
                    out.pop(c, None)
        return out

    def add(self, vec: dict[Hashable, Fraction]) -> bool:
        """Insert ``vec``; return False if it was already in the span."""
        w = self.reduce(vec)
        if not w:
            return False
        p = min(w, key=self.order)
        inv = Fraction(1) / w[p]
        w = {c: v * inv for c, v in w.items()}
        for row in self.rows.values():
            f = row.get(p)
            if f:
                for c, v in w.items():
                    x = row.get(c, 0) - f * v
                    if x:
                        row[c] = x
                    else:
                        del row[c]
        self.rows[p] = w
        return True

    def __contains__(self, vec: dict[Hashable, Fraction]) -> bool:
        return not self.reduce(vec)

    def __len__(self) -> int:
        return len(self.rows)

    def ordered_rows(self) -> list[dict[Hashable, Fraction]]:
        return [self.rows[p] for p in sorted(self.rows, key=self.order)]


# --- form spaces ------------------------------------------------------------


class FormSpace:
    """A finite-dimensional space of k-forms on R^n held as a canonical RREF basis."""

    __slots__ = ("n", "k", "_ech", "_basis")

    def __init__(self, n: int, k: int, forms: Iterable[PolyForm] = ()):
        self.n = n
        self.k = k
        self._ech = Echelon(coordinate_order)
        self._basis: tuple[PolyForm, ...] | None = None
        for f in forms:
            self._check(f)
            if f:
                self._ech.add(f._terms)

    def _check(self, f: PolyForm) -> None:
        if f.n != self.n or f.k != self.k:
            raise ValueError(f"{f.k}-form on R^{f.n} does not belong to a space of {self.k}-forms on R^{self.n}")

    @property
    def basis(self) -> tuple[PolyForm, ...]:
        if self._basis is None:
            self._basis = tuple(PolyForm._raw(self.n, self.k, dict(r)) for r in self._ech.ordered_rows())
        return self._basis

    @property
    def dim(self) -> int:
        return len(self._ech)

    def __len__(self) -> int:
        return self.dim

    def __iter__(self):
        return iter(self.basis)

    def contains(self, omega: PolyForm) -> bool:
        self._check(omega)
        return not self._ech.reduce(omega._terms)

    __contains__ = contains

    def residual(self, omega: PolyForm) -> PolyForm:
        """Component of ``omega`` left after elimination against the basis."""
        self._check(omega)
        return PolyForm._raw(self.n, self.k, self._ech.reduce(omega._terms))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormSpace):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.basis))

    def __add__(self, other: FormSpace) -> FormSpace:
        return plus(self, other)

    def __repr__(self) -> str:
        return f"FormSpace(n={self.n}, k={self.k}, dim={self.dim})"


def span(forms: Iterable[PolyForm], n: int | None = None, k: int | None = None) -> FormSpace:
    forms = list(forms)
    if n is None or k is None:
        if not forms:
            raise ValueError("span of no forms needs explicit n and k")
        n, k = forms[0].n, forms[0].k
    return FormSpace(n, k, forms)


def _same_shape(*spaces: FormSpace) -> None:
    a = spaces[0]
    for b in spaces[1:]:
        if (a.n, a.k) != (b.n, b.k):
            raise ValueError(f"space of {a.k}-forms on R^{a.n} vs {b.k}-forms on R^{b.n}")


def contains(space: FormSpace, omega: PolyForm) -> bool:
    return space.contains(omega)


def first_outside(a: FormSpace, b: FormSpace) -> PolyForm | None:
    """A basis element of ``a`` not in ``b``, or None when ``a`` is a subspace of ``b``."""
    _same_shape(a, b)
    return next((f for f in a.basis if not b.contains(f)), None)


def subspace(a: FormSpace, b: FormSpace) -> bool:
    return first_outside(a, b) is None


def equal(a: FormSpace, b: FormSpace) -> bool:
    _same_shape(a, b)
    return a == b


def plus(*spaces: FormSpace) -> FormSpace:
    _same_shape(*spaces)
    out = FormSpace(spaces[0].n, spaces[0].k)
    for s in spaces:
        for row in s._ech.rows.values():
            out._ech.add(row)
    return out


def is_direct(*spaces: FormSpace) -> bool:
    return plus(*spaces).dim == sum(s.dim for s in spaces)


def _kernel_combinations(vectors: Sequence[dict[Hashable, Fraction]]) -> list[dict[int, Fraction]]:
    """Coefficient vectors c with sum_i c_i * vectors[i] == 0, as a basis."""
    index: dict[Hashable, int] = {}
    for v in vectors:
        for c in v:
            if c not in index:
                index[c] = len(index)
    m = len(index)
    ech = Echelon()
    for i, v in enumerate(vectors):
        row: dict[Hashable, Fraction] = {index[c]: x for c, x in v.items()}
        row[m + i] = Fraction(1)
        ech.add(row)
    return [{c - m: x for c, x in row.items()} for p, row in sorted(ech.rows.items()) if p >= m]


def intersect(a: FormSpace, b: FormSpace) -> FormSpace:
    _same_shape(a, b)
    vectors = [f._terms for f in a.basis] + [(-g)._terms for g in b.basis]
    out = FormSpace(a.n, a.k)
    for combo in _kernel_combinations(vectors):
        acc: dict[Key, Fraction] = {}
        for i, c in combo.items():
            if i < a.dim:
                for key, v in a.basis[i].items():
                    acc[key] = acc.get(key, 0) + c * v
        out._ech.add({key: v for key, v in acc.items() if v})
    return out


# --- linear operators on forms -----------------------------------------------


@dataclass(frozen=True)
class _D:
    def __call__(self, omega: PolyForm) -> PolyForm:
        return exterior_derivative(omega)

    def target(self, n: int, k: int) -> tuple[int, int]:
        return n, k + 1


@dataclass(frozen=True)
class _Kappa:
    def __call__(self, omega: PolyForm) -> PolyForm:
        return koszul(omega)

    def target(self, n: int, k: int) -> tuple[int, int]:
        return n, k - 1


@dataclass(frozen=True)
class Trace:
    """Trace onto the hyperplane ``x_axis = value`` (0-based axis)."""

    axis: int
    value: Fraction

    def __call__(self, omega: PolyForm) -> PolyForm:
        return trace(omega, self.axis, self.value)

    def target(self, n: int, k: int) -> tuple[int, int]:
        return n - 1, min(k, n)


D = _D()
KAPPA = _Kappa()


def image(space: FormSpace, op: Callable[[PolyForm], PolyForm]) -> FormSpace:
    n, k = op.target(space.n, space.k)
    return FormSpace(n, k, (op(f) for f in space.basis))


def kernel(space: FormSpace, op: Callable[[PolyForm], Any]) -> FormSpace:
    """Subspace of ``space`` annihilated by ``op``.

    ``op`` may return a PolyForm or a sequence of PolyForms (a stacked map,
    e.g. traces onto several faces); the result only needs to be zero.
    """
    vectors = []
    for f in space.basis:
        out = op(f)
        parts = [out] if isinstance(out, PolyForm) else list(out)
        vec: dict[Hashable, Fraction] = {}
        for j, part in enumerate(parts):
            for key, v in part.items():
                vec[(j, key)] = v
        vectors.append(vec)
    result = FormSpace(space.n, space.k)
    for combo in _kernel_combinations(vectors):
        acc: dict[Key, Fraction] = {}
        for i, c in combo.items():
            for key, v in space.basis[i].items():
                acc[key] = acc.get(key, 0) + c * v
        result._ech.add({key: v for key, v in acc.items() if v})
    return result
