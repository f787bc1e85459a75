"""Structural claims about the serendipity families, checked by exact elimination.

Every check returns a :class:`PropertyReport`.  A failing report names the
claim that broke and carries a witness: a basis form lying outside the space
that should contain it, or the pair of dimensions that disagree.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from trimser.forms import PolyForm, linear_degree, render
from trimser.linalg import D, KAPPA, FormSpace, Trace, first_outside, image, is_direct, plus
from trimser.spaces import (
    h_space,
    j_space,
    p_space,
    pminus_space,
    s_space,
    sminus_decomposed,
    sminus_space,
)

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class PropertyReport:
    property: str
    n: int
    k: int | None
    r: int
    verdict: str
    detail: str
    witness: str | None = None

    def __post_init__(self) -> None:
        if self.verdict == FAIL and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def record(self) -> dict:
        detail = self.detail if self.witness is None else f"{self.detail}; witness: {self.witness}"
        return {"property": self.property, "n": self.n, "k": self.k, "r": self.r, "verdict": self.verdict, "detail": detail}


class _Claims:
    """Collects subspace/equality/dimension claims, remembering the first failure."""

    def __init__(self) -> None:
        self.notes: list[str] = []
        self.failure: tuple[str, str] | None = None

    def _fail(self, label: str, witness: str) -> None:
        if self.failure is None:
            self.failure = (label, witness)

    def subset(self, label: str, a: FormSpace, b: FormSpace) -> None:
        w = first_outside(a, b)
        if w is not None:
            self._fail(f"{label} (subset)", render(w))

    def equal(self, label: str, a: FormSpace, b: FormSpace) -> None:
        w = first_outside(a, b)
        if w is None:
            w = first_outside(b, a)
        if w is not None:
            self._fail(f"{label} (equality)", render(w))

    def direct(self, label: str, *parts: FormSpace) -> None:
        if not is_direct(*parts):
            total = plus(*parts).dim
            self._fail(f"{label} (direct sum)", f"dim of sum {total} < {' + '.join(str(p.dim) for p in parts)}")

    def holds(self, label: str, ok: bool, witness: str) -> None:
        if not ok:
            self._fail(label, witness)

    def report(self, name: str, n: int, k: int | None, r: int) -> PropertyReport:
        detail = "; ".join(self.notes)
        if self.failure is None:
            return PropertyReport(name, n, k, r, PASS, detail)
        label, witness = self.failure
        return PropertyReport(name, n, k, r, FAIL, f"{label} failed" + (f"; {detail}" if detail else ""), witness)


def check_inclusion(n: int, k: int, r: int) -> PropertyReport:
    """S_r inside Sminus_{r+1} inside S_{r+1}; the second inclusion is strict exactly when k > 0."""
    c = _Claims()
    s_lo, mid, s_hi = s_space(n, k, r), sminus_space(n, k, r + 1), s_space(n, k, r + 1)
    c.subset(f"S_{r} in Sminus_{r + 1}", s_lo, mid)
    c.subset(f"Sminus_{r + 1} in S_{r + 1}", mid, s_hi)
    if k == 0:
        c.holds("Sminus equals S for 0-forms", mid.dim == s_hi.dim, f"dims {mid.dim} vs {s_hi.dim}")
    else:
        c.holds("strict inclusion for k > 0", mid.dim < s_hi.dim, f"dims {mid.dim} vs {s_hi.dim}")
    c.notes.append(f"dims {s_lo.dim} <= {mid.dim} <= {s_hi.dim}")
    return c.report("inclusion", n, k, r)


def check_subcomplex(n: int, k: int, r: int) -> PropertyReport:
    """d Sminus_r k-forms lands in Sminus_r (k+1)-forms, and even in S_{r-1} (k+1)-forms."""
    c = _Claims()
    if k < n:
        dv = image(sminus_space(n, k, r), D)
        c.subset("d Sminus_r in Sminus_r", dv, sminus_space(n, k + 1, r))
        c.subset("d Sminus_r in S_{r-1}", dv, s_space(n, k + 1, r - 1))
        c.notes.append(f"dim d-image {dv.dim}")
    else:
        c.notes.append("d of an n-form is zero")
    return c.report("subcomplex", n, k, r)


FAMILIES: dict[str, Callable[[int, int, int], FormSpace]] = {
    "Sminus": sminus_space,
    "S_descending": lambda n, k, r: s_space(n, k, r - k),
    "P_descending": lambda n, k, r: p_space(n, k, r - k),
    "Pminus": pminus_space,
}


def check_exactness(n: int, r: int, family: str = "Sminus") -> PropertyReport:
    """Rank accounting for 0 -> R -> V^0 -> ... -> V^n -> 0.

    At each position the kernel of d must have the dimension of the incoming
    image; at position 0 the incoming image is the constants.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    build = FAMILIES[family]
    spaces = [build(n, k, r) for k in range(n + 1)]
    ranks = []
    c = _Claims()
    for k, v in enumerate(spaces):
        dv = image(v, D)
        ranks.append(dv.dim)
        if k < n:
            c.subset(f"d V^{k} in V^{k + 1}", dv, spaces[k + 1])
    for k, v in enumerate(spaces):
        incoming = 1 if k == 0 else ranks[k - 1]
        kernel_dim = v.dim - ranks[k]
        c.holds(f"exact at position {k}", kernel_dim == incoming, f"kernel dim {kernel_dim} vs image dim {incoming}")
    c.notes.append("dims " + ",".join(str(v.dim) for v in spaces))
    c.notes.append("ranks " + ",".join(str(x) for x in ranks))
    return c.report(f"exactness[{family}]", n, None, r)


def check_trace(n: int, k: int, r: int) -> PropertyReport:
    """The trace of Sminus_r on each of the 2n facets lies in Sminus_r of the facet."""
    c = _Claims()
    space = sminus_space(n, k, r)
    target = sminus_space(n - 1, k, r) if k <= n - 1 else FormSpace(n - 1, k)
    for axis in range(n):
        for value in (-1, 1):
            c.subset(f"trace to x{axis + 1}={value:+d}", image(space, Trace(axis, value)), target)
    c.notes.append(f"{2 * n} facets, facet space dim {target.dim}")
    return c.report("trace", n, k, r)


def check_decompositions(n: int, k: int, r: int) -> PropertyReport:
    """Sminus_r = Pminus_r + J_r + d J_r and S_r = P_r + J_r + d J_{r+1}, both direct."""
    c = _Claims()
    pm, jk, dj = pminus_space(n, k, r), j_space(n, k, r), image(j_space(n, k - 1, r), D)
    c.equal("Sminus_r = Pminus_r + J_r + d J_r", sminus_space(n, k, r), plus(pm, jk, dj))
    c.direct("Pminus_r + J_r + d J_r", pm, jk, dj)
    pr, dj1 = p_space(n, k, r), image(j_space(n, k - 1, r + 1), D)
    c.equal("S_r = P_r + J_r + d J_{r+1}", s_space(n, k, r), plus(pr, jk, dj1))
    c.direct("P_r + J_r + d J_{r+1}", pr, jk, dj1)
    c.equal("definition and decomposition routes", sminus_space(n, k, r), sminus_decomposed(n, k, r))
    c.notes.append(f"{pm.dim} + {jk.dim} + {dj.dim} = {sminus_space(n, k, r).dim}")
    c.notes.append(f"{pr.dim} + {jk.dim} + {dj1.dim} = {s_space(n, k, r).dim}")
    return c.report("decomposition", n, k, r)


def check_J_identities(n: int, k: int, r: int) -> PropertyReport:
    c = _Claims()
    jr, jr1 = j_space(n, k, r), j_space(n, k, r + 1)
    c.subset("J_r in P_{r+1} + J_{r+1}", jr, plus(p_space(n, k, r + 1), jr1))
    kp = image(p_space(n, k + 1, r), KAPPA) if k < n else FormSpace(n, k)
    c.subset("J_r in kappa P_r + J_{r+1}", jr, plus(kp, jr1))
    c.equal("kappa d J_r = J_r", image(image(jr, D), KAPPA), jr)
    dk = image(image(jr, KAPPA), D)
    c.holds("d kappa J_r = 0", dk.dim == 0, render(dk.basis[0]) if dk.dim else "")
    c.notes.append(f"dim J_r {jr.dim}")
    return c.report("J_identities", n, k, r)


def check_lemma_identities(n: int, k: int, r: int) -> PropertyReport:
    """Sminus equals S on 0-forms, S_{r-1} on n-forms, and Sminus_r + d S_{r+1} = S_r."""
    c = _Claims()
    sm = sminus_space(n, k, r)
    if k == 0:
        c.equal("Sminus_r = S_r on 0-forms", sm, s_space(n, 0, r))
    if k == n:
        c.equal("Sminus_r = S_{r-1} on n-forms", sm, s_space(n, n, r - 1))
    ds = image(s_space(n, k - 1, r + 1), D) if k > 0 else FormSpace(n, k)
    c.equal("Sminus_r + d S_{r+1} = S_r", plus(sm, ds), s_space(n, k, r))
    return c.report("lemma_identities", n, k, r)


def _degree_ok(n: int, k: int, r: int, key) -> bool:
    alpha, sigma = key
    deg = sum(alpha)
    delta = 1 if k == 0 else 0
    return deg <= r + n - k - delta and deg - linear_degree(alpha, sigma) <= r + 1 - delta


def check_serendipity_structure(n: int, k: int, r: int) -> PropertyReport:
    """Degree property of S_r, kappa S_{r-1} in S_r, and H_r = kappa H_{r-1} + d H_{r+1}."""
    c = _Claims()
    s = s_space(n, k, r)
    bad = next((key for f in s.basis for key, _ in f.items() if not _degree_ok(n, k, r, key)), None)
    c.holds("degree property", bad is None, "" if bad is None else render(PolyForm._raw(n, k, {bad: 1})))
    if k > 0:
        c.subset("kappa S_{r-1} in S_r", image(s_space(n, k, r - 1), KAPPA), s_space(n, k - 1, r))
    kh = image(h_space(n, k + 1, r - 1), KAPPA) if k < n and r >= 1 else FormSpace(n, k)
    dh = image(h_space(n, k - 1, r + 1), D) if k > 0 else FormSpace(n, k)
    c.equal("H_r = kappa H_{r-1} + d H_{r+1}", plus(kh, dh), h_space(n, k, r))
    c.direct("kappa H_{r-1} + d H_{r+1}", kh, dh)
    return c.report("serendipity_structure", n, k, r)
