"""Constructors for every polynomial form space family, and their dimensions.

Spaces are built by exact spans of explicit generators; dimensions come from
closed-form binomial expressions.  The two routes are independent and the
test-suite checks them against each other.

Notation used in names: ``H`` homogeneous forms, ``P`` full polynomial forms,
``Pminus`` trimmed polynomial forms, ``J`` the Koszul images of monomials
with large linear degree, ``S`` serendipity forms, ``Sminus`` trimmed
serendipity forms.  ``dX(inner)`` at ``(n, k, r)`` is ``d`` applied to
``inner`` at ``(n, k-1, r)``; ``kappaX(inner)`` at ``(n, k, r)`` is the Koszul
image of ``inner`` at ``(n, k+1, r)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from trimser.exact import binom, enumerate_index_sets, enumerate_multi_indices
from trimser.forms import PolyForm, koszul, linear_degree
from trimser.linalg import D, KAPPA, FormSpace, image, plus

_TAGS = ("H", "H_linear", "P", "Pminus", "J", "J_via_char", "S", "Sminus", "dX", "kappaX", "Qminus_dim_only")


@dataclass(frozen=True)
class SpaceKind:
    tag: str
    ell: int | None = None
    inner: SpaceKind | None = None

    def __post_init__(self) -> None:
        if self.tag not in _TAGS:
            raise ValueError(f"unknown space kind {self.tag!r}")
        if (self.tag == "H_linear") != (self.ell is not None):
            raise ValueError("H_linear carries ell and only H_linear does")
        if self.tag == "H_linear" and self.ell < 0:
            raise ValueError("ell must be non-negative")
        if (self.tag in ("dX", "kappaX")) != (self.inner is not None):
            raise ValueError("dX/kappaX wrap exactly one inner kind")

    def __str__(self) -> str:
        if self.tag == "H_linear":
            return f"H_linear:{self.ell}"
        if self.inner is not None:
            return f"{'d' if self.tag == 'dX' else 'kappa'}({self.inner})"
        return self.tag

    @classmethod
    def parse(cls, text: str) -> SpaceKind:
        """Inverse of ``str``: ``Sminus``, ``H_linear:2``, ``d(J)``, ``kappa(S)`` ..."""
        text = text.strip()
        aliases = {"Jchar": "J_via_char", "Qminus": "Qminus_dim_only"}
        if text.startswith("H_linear:"):
            return cls("H_linear", ell=int(text.split(":", 1)[1]))
        for prefix, tag in (("d(", "dX"), ("kappa(", "kappaX")):
            if text.startswith(prefix) and text.endswith(")"):
                return cls(tag, inner=cls.parse(text[len(prefix) : -1]))
        return cls(aliases.get(text, text))


H = SpaceKind("H")
P = SpaceKind("P")
PMINUS = SpaceKind("Pminus")
J = SpaceKind("J")
J_VIA_CHAR = SpaceKind("J_via_char")
S = SpaceKind("S")
SMINUS = SpaceKind("Sminus")
QMINUS = SpaceKind("Qminus_dim_only")


def h_linear(ell: int) -> SpaceKind:
    return SpaceKind("H_linear", ell=ell)


def dX(inner: SpaceKind) -> SpaceKind:
    return SpaceKind("dX", inner=inner)


def kappaX(inner: SpaceKind) -> SpaceKind:
    return SpaceKind("kappaX", inner=inner)


DH = dX(H)


# --- generators -------------------------------------------------------------


def monomials(n: int, k: int, r: int) -> list[PolyForm]:
    """Form monomials of exact degree ``r`` and order ``k`` on R^n."""
    if r < 0 or not 0 <= k <= n:
        return []
    return [
        PolyForm._raw(n, k, {(alpha, sigma): Fraction(1)})
        for alpha in enumerate_multi_indices(n, r)
        for sigma in enumerate_index_sets(n, k)
    ]


def _zero(n: int, k: int) -> FormSpace:
    return FormSpace(n, k)


@lru_cache(maxsize=None)
def h_space(n: int, k: int, r: int) -> FormSpace:
    return FormSpace(n, k, monomials(n, k, r))


@lru_cache(maxsize=None)
def h_linear_space(n: int, k: int, r: int, ell: int) -> FormSpace:
    """Homogeneous degree-r forms all of whose monomials have linear degree >= ell."""
    gens = [m for m in monomials(n, k, r) if linear_degree(*next(iter(m._terms))) >= ell]
    return FormSpace(n, k, gens)


@lru_cache(maxsize=None)
def p_space(n: int, k: int, r: int) -> FormSpace:
    return FormSpace(n, k, [m for j in range(r + 1) for m in monomials(n, k, j)])


@lru_cache(maxsize=None)
def pminus_space(n: int, k: int, r: int) -> FormSpace:
    if r < 1 or not 0 <= k <= n:
        return _zero(n, k)
    return plus(p_space(n, k, r - 1), image(h_space(n, k + 1, r - 1), KAPPA))


@lru_cache(maxsize=None)
def j_space(n: int, k: int, r: int) -> FormSpace:
    """Sum over ell >= 1 of the Koszul image of H_{r+ell-1, ell} (k+1)-forms.

    Linear degree of a (k+1)-form is at most n-k-1, so the sum stops there.
    """
    if not 0 <= k <= n:
        return _zero(n, k)
    parts = [image(h_linear_space(n, k + 1, r + ell - 1, ell), KAPPA) for ell in range(1, n - k)]
    return plus(_zero(n, k), *parts)


@lru_cache(maxsize=None)
def j_char_space(n: int, k: int, r: int) -> FormSpace:
    """Span of kappa(m) over (k+1)-form monomials with deg m >= r and deg m - ldeg m <= r - 1."""
    if not 0 <= k <= n:
        return _zero(n, k)
    gens = []
    # ldeg m <= n-k-1 bounds the degree from above.
    for deg in range(max(r, 0), r + n - k - 1):
        for m in monomials(n, k + 1, deg):
            alpha, sigma = next(iter(m._terms))
            if deg - linear_degree(alpha, sigma) <= r - 1:
                gens.append(koszul(m))
    return FormSpace(n, k, gens)


@lru_cache(maxsize=None)
def s_space(n: int, k: int, r: int) -> FormSpace:
    if not 0 <= k <= n:
        return _zero(n, k)
    return plus(p_space(n, k, r), j_space(n, k, r), image(j_space(n, k - 1, r + 1), D))


@lru_cache(maxsize=None)
def sminus_space(n: int, k: int, r: int) -> FormSpace:
    """Trimmed serendipity forms: S_{r-1} k-forms plus kappa of S_{r-1} (k+1)-forms."""
    if not 0 <= k <= n:
        return _zero(n, k)
    return plus(s_space(n, k, r - 1), image(s_space(n, k + 1, r - 1), KAPPA))


@lru_cache(maxsize=None)
def sminus_decomposed(n: int, k: int, r: int) -> FormSpace:
    """Same space rebuilt as Pminus_r + J_r + d J_r (k-1)-forms."""
    if not 0 <= k <= n:
        return _zero(n, k)
    return plus(pminus_space(n, k, r), j_space(n, k, r), image(j_space(n, k - 1, r), D))


def _build(kind: SpaceKind, n: int, k: int, r: int) -> FormSpace:
    tag = kind.tag
    if tag == "H":
        return h_space(n, k, r)
    if tag == "H_linear":
        return h_linear_space(n, k, r, kind.ell)
    if tag == "P":
        return p_space(n, k, r)
    if tag == "Pminus":
        return pminus_space(n, k, r)
    if tag == "J":
        return j_space(n, k, r)
    if tag == "J_via_char":
        return j_char_space(n, k, r)
    if tag == "S":
        return s_space(n, k, r)
    if tag == "Sminus":
        return sminus_space(n, k, r)
    if tag == "dX":
        if k - 1 < 0:
            return _zero(n, k)
        return image(_build(kind.inner, n, k - 1, r), D)
    if tag == "kappaX":
        if k + 1 > n:
            return _zero(n, k)
        return image(_build(kind.inner, n, k + 1, r), KAPPA)
    raise ValueError(f"{kind} has no basis construction")


def generate_space(kind: SpaceKind, n: int, k: int, r: int, route: str = "definition") -> FormSpace:
    """Build ``kind`` on R^n as an echelonised FormSpace.

    ``route="decomposition"`` builds Sminus from its direct-sum pieces
    instead of from its definition; both must give the same space.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= k <= n:
        raise ValueError(f"form order k={k} outside [0, {n}]")
    if kind.tag == "Qminus_dim_only":
        raise ValueError("Qminus_dim_only is a dimension-only kind")
    if route == "decomposition":
        if kind != SMINUS:
            raise ValueError("the decomposition route exists only for Sminus")
        return sminus_decomposed(n, k, r)
    if route != "definition":
        raise ValueError(f"unknown route {route!r}")
    return _build(kind, n, k, r)


# --- closed-form dimensions -------------------------------------------------


def dim_h(n: int, k: int, r: int) -> int:
    if r < 0 or not 0 <= k <= n:
        return 0
    return binom(n + r - 1, r) * binom(n, k)


def dim_p(n: int, k: int, r: int) -> int:
    if r < 0 or not 0 <= k <= n:
        return 0
    return binom(r + n, r + k) * binom(r + k, k)


def dim_pminus(n: int, k: int, r: int) -> int:
    if r < 1 or not 0 <= k <= n:
        return 0
    return binom(r + n, r + k) * binom(r + k - 1, k)


def dim_kappa_h(n: int, k: int, r: int) -> int:
    """Dimension of kappa applied to homogeneous degree-r k-forms (equal to that of d H_{r+1} (k-1)-forms)."""
    if r < 0 or not 1 <= k <= n:
        return 0
    return binom(n + r, n - k) * binom(r + k - 1, k - 1)


def dim_s(n: int, k: int, r: int) -> int:
    """Serendipity dimension as a sum over face dimensions."""
    if r < 0 or not 0 <= k <= n:
        return 0
    top = min(n, r // 2 + k)
    return sum(2 ** (n - d) * binom(n, d) * binom(r - d + 2 * k, d) * binom(d, k) for d in range(k, top + 1))


def _f(n: int, k: int, r: int) -> int:
    # dim J_r k-forms + dim J_{r+1} (k-1)-forms
    return dim_s(n, k, r) - sum(binom(n + j - 1, j) * binom(n, k) for j in range(r + 1))


def dim_j(n: int, k: int, r: int) -> int:
    """Alternating telescoped sum of the pairwise J counts."""
    if not 0 <= k <= n or r < 1:
        return 0
    return sum((-1) ** i * _f(n, k - i, r + i) for i in range(k + 1))


def dim_sminus(n: int, k: int, r: int) -> int:
    if r < 1 or not 0 <= k <= n:
        return 0
    return dim_pminus(n, k, r) + dim_j(n, k, r) + dim_j(n, k - 1, r)


def dim_qminus(n: int, k: int, r: int) -> int:
    if r < 1 or not 0 <= k <= n:
        return 0
    return binom(n, k) * r**k * (r + 1) ** (n - k)


def dim_h_linear(n: int, k: int, r: int, ell: int) -> int:
    """Count monomials of degree r, order k and linear degree >= ell.

    For a fixed sigma, choose which j of the n-k outer axes carry exponent
    exactly one; the other outer axes avoid exponent one and the sigma axes
    are unrestricted.  The remaining degree is split by coefficient extraction.
    """
    if r < 0 or not 0 <= k <= n:
        return 0
    m = n - k
    # series for one outer axis whose exponent != 1: 1 + x^2 + x^3 + ...
    no_one = [1, 0] + [1] * (r - 1) if r >= 1 else [1]
    free = [1] * (r + 1)

    def power(series: list[int], e: int) -> list[int]:
        acc = [1] + [0] * r
        for _ in range(e):
            acc = [sum(acc[i] * series[t - i] for i in range(t + 1) if t - i < len(series)) for t in range(r + 1)]
        return acc

    total = 0
    for j in range(max(ell, 0), m + 1):
        if j > r:
            break
        series = power(no_one, m - j)
        fs = power(free, k)
        rest = r - j
        ways = sum(series[a] * fs[rest - a] for a in range(rest + 1))
        total += binom(m, j) * ways
    return binom(n, k) * total


def _dim_image(inner: SpaceKind, op: str, n: int, k: int, r: int) -> int:
    tag = inner.tag
    if op == "d":
        src = k - 1
        if src < 0:
            return 0
        if tag == "H":
            return dim_kappa_h(n, k, r - 1)
        if tag == "P":
            return sum(dim_kappa_h(n, k, j - 1) for j in range(1, r + 1))
        if tag in ("J", "J_via_char"):
            return dim_j(n, src, r)
        if tag == "S":
            return sum(dim_kappa_h(n, k, j) for j in range(r)) + dim_j(n, src, r)
        if tag == "Sminus":
            # exact complex: rank of d equals dim minus rank of the incoming map
            return sum((-1) ** i * dim_sminus(n, src - i, r) for i in range(src + 1)) - (-1) ** src
    else:
        src = k + 1
        if src > n:
            return 0
        if tag == "H":
            return dim_kappa_h(n, src, r)
        if tag == "P":
            return sum(dim_kappa_h(n, src, j) for j in range(r + 1))
        if tag in ("J", "J_via_char"):
            return 0
        if tag == "S":
            return sum(dim_kappa_h(n, src, j) for j in range(r + 1)) + dim_j(n, k, r + 1)
    raise ValueError(f"no dimension formula for {op} applied to {inner}")


def dim_formula(kind: SpaceKind, n: int, k: int, r: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= k <= n:
        raise ValueError(f"form order k={k} outside [0, {n}]")
    tag = kind.tag
    if tag == "H":
        return dim_h(n, k, r)
    if tag == "H_linear":
        return dim_h_linear(n, k, r, kind.ell)
    if tag == "P":
        return dim_p(n, k, r)
    if tag == "Pminus":
        return dim_pminus(n, k, r)
    if tag in ("J", "J_via_char"):
        return dim_j(n, k, r)
    if tag == "S":
        return dim_s(n, k, r)
    if tag == "Sminus":
        return dim_sminus(n, k, r)
    if tag == "Qminus_dim_only":
        return dim_qminus(n, k, r)
    if tag == "dX":
        return _dim_image(kind.inner, "d", n, k, r)
    return _dim_image(kind.inner, "kappa", n, k, r)


def closed_form_dim(n: int, k: int, r: int) -> int:
    """Piecewise closed forms in r for the trimmed serendipity dimension, n in {2, 3}."""
    if n not in (2, 3):
        raise ValueError("closed forms exist only for n = 2 and n = 3")
    if not 0 <= k <= n:
        raise ValueError(f"form order k={k} outside [0, {n}]")
    if r < 1:
        raise ValueError("r must be at least 1")
    if n == 2:
        if k == 0:
            return 4 + 4 * (r - 1) + binom(r - 2, 2)
        if k == 1:
            return 4 if r == 1 else r * r + 2 * r + 2
        return binom(r + 1, 2)
    j0 = 4 if r == 1 else 10 if r == 2 else 3 * (r + 1)
    j1 = 2 if r == 1 else 3 * r
    if k == 0:
        return binom(r + 3, 3) + j0
    if k == 1:
        if r <= 2:
            return (12, 36)[r - 1]
        twice = r**3 + 5 * r * r + 18 * r + 6
        return twice // 2
    if k == 2:
        return (r + 3) * binom(r + 1, 2) + j1
    return binom(r + 2, 3)


appendix_b_dim = closed_form_dim  # name kept for the published interface
