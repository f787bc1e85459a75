"""Polynomial differential forms on R^n with exact rational coefficients.

A form is a sparse map ``(alpha, sigma) -> coefficient`` where ``alpha`` is an
exponent tuple and ``sigma`` a strictly increasing tuple of 0-based axes.
Signs from reordering wedge factors are folded into the coefficient at
construction, so two forms are equal exactly when their term maps are.

Axes are 0-based in code; :func:`render` prints them 1-based (``x1``, ``dx1``).
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from types import MappingProxyType

from trimser.exact import IndexSet, MultiIndex, Scalar, as_rational

Key = tuple[MultiIndex, IndexSet]


def sort_with_sign(seq: Iterable[int]) -> tuple[IndexSet, int] | None:
    """Sort ``seq`` returning the permutation sign, or None on a repeated index."""
    items = list(seq)
    if len(set(items)) != len(items):
        return None
    inversions = sum(1 for i in range(len(items)) for j in range(i + 1, len(items)) if items[i] > items[j])
    return tuple(sorted(items)), (-1 if inversions % 2 else 1)


def coordinate_order(key: Key) -> tuple:
    """Total order on form monomials: lexicographic in alpha (largest exponents first), then sigma."""
    alpha, sigma = key
    return tuple(-a for a in alpha), sigma


class PolyForm:
    """An immutable polynomial k-form on R^n.

    ``k`` may be ``-1`` or ``n + 1`` only for the zero form; those arise as
    the Koszul image of a 0-form and the derivative of an n-form.
    """

    __slots__ = ("n", "k", "_terms", "_hash")

    def __init__(self, n: int, k: int, terms: Mapping[Key, Scalar] | Iterable[tuple[Key, Scalar]] = ()):
        if n < 0:
            raise ValueError("ambient dimension must be non-negative")
        if k < -1 or k > n + 1:
            raise ValueError(f"form order {k} impossible on R^{n}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, Fraction] = {}
        for (alpha, sigma), c in items:
            alpha = tuple(alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for n={n}")
            if any(i < 0 or i >= n for i in sigma):
                raise ValueError(f"index set {tuple(sigma)} out of range for n={n}")
            if len(sigma) != k:
                raise ValueError(f"index set {tuple(sigma)} does not have {k} entries")
            sorted_sigma = sort_with_sign(sigma)
            if sorted_sigma is None:
                continue
            sig, sign = sorted_sigma
            key = (alpha, sig)
            acc[key] = acc.get(key, Fraction(0)) + sign * as_rational(c)
        self.n = n
        self.k = k
        self._terms = {key: c for key, c in acc.items() if c}
        self._hash: int | None = None

    @classmethod
    def _raw(cls, n: int, k: int, terms: dict[Key, Fraction]) -> PolyForm:
        # Trusted constructor: keys canonical, no zero coefficients.
        obj = cls.__new__(cls)
        obj.n = n
        obj.k = k
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int, k: int) -> PolyForm:
        return cls._raw(n, k, {})

    @classmethod
    def monomial(cls, alpha: Iterable[int], sigma: Iterable[int] = (), coeff: Scalar = 1) -> PolyForm:
        alpha = tuple(alpha)
        sigma = tuple(sigma)
        return cls(len(alpha), len(sigma), [((alpha, sigma), coeff)])

    @classmethod
    def constant(cls, n: int, c: Scalar = 1) -> PolyForm:
        return cls(n, 0, [(((0,) * n, ()), c)])

    @classmethod
    def coordinate(cls, n: int, i: int) -> PolyForm:
        """The 0-form ``x_i``."""
        alpha = [0] * n
        alpha[i] = 1
        return cls(n, 0, [((tuple(alpha), ()), 1)])

    @classmethod
    def volume(cls, n: int, c: Scalar = 1) -> PolyForm:
        return cls(n, n, [(((0,) * n, tuple(range(n))), c)])

    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Key, Fraction]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[Key, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: coordinate_order(kv[0]))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> set[int]:
        return {sum(alpha) for alpha, _ in self._terms}

    def degree(self) -> int:
        """Largest polynomial degree among the terms; -1 for the zero form."""
        return max(self.degrees(), default=-1)

    def min_degree(self) -> int:
        return min(self.degrees(), default=-1)

    def _check_compatible(self, other: PolyForm) -> None:
        if self.n != other.n or self.k != other.k:
            raise ValueError(f"cannot combine a {self.k}-form on R^{self.n} with a {other.k}-form on R^{other.n}")

    def __add__(self, other: PolyForm) -> PolyForm:
        if not isinstance(other, PolyForm):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return PolyForm._raw(self.n, self.k, out)

    def __neg__(self) -> PolyForm:
        return PolyForm._raw(self.n, self.k, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other: PolyForm) -> PolyForm:
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c: Scalar) -> PolyForm:
        if isinstance(c, PolyForm):
            return NotImplemented
        c = as_rational(c)
        if not c:
            return PolyForm.zero(self.n, self.k)
        return PolyForm._raw(self.n, self.k, {key: v * c for key, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self.n == other.n and self.k == other.k and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.k, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"PolyForm(n={self.n}, k={self.k}, {render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def _insert_sign(i: int, sigma: IndexSet) -> int:
    """Sign of moving ``dx_i`` from the front into sorted position within ``sigma``."""
    before = sum(1 for s in sigma if s < i)
    return -1 if before % 2 else 1


def exterior_derivative(omega: PolyForm) -> PolyForm:
    n, k = omega.n, omega.k
    if k < 0 or k >= n:
        return PolyForm.zero(n, k + 1)
    out: dict[Key, Fraction] = {}
    for (alpha, sigma), c in omega.items():
        for i in range(n):
            a = alpha[i]
            if a == 0 or i in sigma:
                continue
            new_alpha = alpha[:i] + (a - 1,) + alpha[i + 1 :]
            new_sigma = tuple(sorted(sigma + (i,)))
            key = (new_alpha, new_sigma)
            v = out.get(key, 0) + _insert_sign(i, sigma) * a * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return PolyForm._raw(n, k + 1, out)


def koszul(omega: PolyForm) -> PolyForm:
    """Contraction with the position field; raises polynomial degree by one."""
    n, k = omega.n, omega.k
    if k <= 0:
        return PolyForm.zero(n, k - 1)
    out: dict[Key, Fraction] = {}
    for (alpha, sigma), c in omega.items():
        for j, i in enumerate(sigma):
            new_alpha = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1 :]
            key = (new_alpha, sigma[:j] + sigma[j + 1 :])
            v = out.get(key, 0) + (c if j % 2 == 0 else -c)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return PolyForm._raw(n, k - 1, out)


def wedge(omega: PolyForm, eta: PolyForm) -> PolyForm:
    if omega.n != eta.n:
        raise ValueError("wedge of forms on different ambient spaces")
    n, k = omega.n, omega.k + eta.k
    if k > n or omega.k < 0 or eta.k < 0:
        return PolyForm.zero(n, min(k, n + 1))
    out: dict[Key, Fraction] = {}
    for (a1, s1), c1 in omega.items():
        for (a2, s2), c2 in eta.items():
            if set(s1) & set(s2):
                continue
            inversions = sum(1 for x in s1 for y in s2 if x > y)
            key = (tuple(p + q for p, q in zip(a1, a2)), tuple(sorted(s1 + s2)))
            prod = c1 * c2
            v = out.get(key, 0) + (-prod if inversions % 2 else prod)
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return PolyForm._raw(n, k, out)


def trace(omega: PolyForm, axis: int, value: Scalar) -> PolyForm:
    """Pull ``omega`` back to the hyperplane ``x_axis = value``.

    The result lives on R^(n-1): axes above ``axis`` shift down by one.
    """
    n, k = omega.n, omega.k
    if not 0 <= axis < n:
        raise ValueError(f"axis {axis} out of range for n={n}")
    value = as_rational(value)
    k_out = min(k, n)
    out: dict[Key, Fraction] = {}
    for (alpha, sigma), c in omega.items():
        if axis in sigma:
            continue
        coeff = c * value ** alpha[axis]
        if not coeff:
            continue
        key = (alpha[:axis] + alpha[axis + 1 :], tuple(s - 1 if s > axis else s for s in sigma))
        v = out.get(key, 0) + coeff
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return PolyForm._raw(n - 1, k_out, out)


def linear_degree(alpha: MultiIndex, sigma: IndexSet) -> int:
    """Number of axes outside ``sigma`` whose exponent is exactly one."""
    return sum(1 for i, a in enumerate(alpha) if a == 1 and i not in sigma)


def ldeg(omega: PolyForm) -> int:
    if not omega:
        raise ValueError("linear degree of the zero form is undefined")
    return min(linear_degree(alpha, sigma) for alpha, sigma in omega._terms)


def homogeneous_component(omega: PolyForm, r: int) -> PolyForm:
    return PolyForm._raw(omega.n, omega.k, {key: c for key, c in omega.items() if sum(key[0]) == r})


def partial(omega: PolyForm, i: int) -> PolyForm:
    """Coefficient-wise partial derivative in ``x_i``."""
    out: dict[Key, Fraction] = {}
    for (alpha, sigma), c in omega.items():
        a = alpha[i]
        if a:
            out[(alpha[:i] + (a - 1,) + alpha[i + 1 :], sigma)] = a * c
    return PolyForm._raw(omega.n, omega.k, out)


def evaluate(omega: PolyForm, point: Iterable[Scalar]) -> dict[IndexSet, Fraction]:
    """Coefficient of each ``dx_sigma`` at ``point``."""
    pt = [as_rational(x) for x in point]
    out: dict[IndexSet, Fraction] = {}
    for (alpha, sigma), c in omega.items():
        v = c
        for x, a in zip(pt, alpha):
            v *= x**a
        out[sigma] = out.get(sigma, 0) + v
    return {s: v for s, v in out.items() if v}


def _fmt_coeff(c: Fraction) -> str:
    return f"({c.numerator})" if c.denominator == 1 else f"({c.numerator}/{c.denominator})"


def render_term(key: Key, c: Fraction) -> str:
    alpha, sigma = key
    parts = [_fmt_coeff(c)]
    for i, a in enumerate(alpha):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a > 1:
            parts.append(f"x{i + 1}^{a}")
    if sigma:
        parts.append("^".join(f"dx{i + 1}" for i in sigma))
    return " ".join(parts)


def render(omega: PolyForm) -> str:
    """Canonical text, e.g. ``(3/2) x1^2 x3 dx1^dx4 + (-1) x2``; ``0`` for the zero form."""
    if not omega:
        return "0"
    return " + ".join(render_term(key, c) for key, c in omega.sorted_items())


_TERM = re.compile(r"\((-?\d+)(?:/(\d+))?\)((?:\s+x\d+(?:\^\d+)?)*)((?:\s+dx\d+(?:\^dx\d+)*)?)$")


def parse(text: str, n: int, k: int) -> PolyForm:
    """Inverse of :func:`render` for forms on R^n of order k."""
    text = text.strip()
    if text == "0":
        return PolyForm.zero(n, k)
    terms = []
    for chunk in text.split(" + "):
        m = _TERM.match(chunk.strip())
        if m is None:
            raise ValueError(f"cannot parse term {chunk!r}")
        num, den, mono, wedge_part = m.groups()
        c = Fraction(int(num), int(den or 1))
        alpha = [0] * n
        for factor in mono.split():
            var, _, e = factor.partition("^")
            alpha[int(var[1:]) - 1] += int(e or 1)
        sigma = tuple(int(t[2:]) - 1 for t in wedge_part.strip().split("^")) if wedge_part.strip() else ()
        terms.append(((tuple(alpha), sigma), c))
    return PolyForm(n, k, terms)
