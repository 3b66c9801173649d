"""Affine permutations for GL(n) and the permissibility cross-check.

The dictionary sends t_lambda * u to the periodic bijection
i -> u(i) + n * lambda_u(i) on the integers (window recorded on 1..n),
which makes the translation by (1,0,..,0) the window (n+1, 2, .., n).
Permissibility is the vertex-wise convex hull condition over the standard
chain vertices (1^j, 0^(n-j)); for minuscule coweights it is decided by
pure coordinate checks, and the permissible set must coincide with the
image of the admissible set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .admissible import adm
from .affine_weyl import AffineWeylElement
from .linalg import Vec, mat_vec
from .root_datum import RootDatum, dominant_rep


class PermError(ValueError):
    """Invalid affine permutation input."""


class NotMinusculeGLError(PermError):
    """Permissibility is only decided here for minuscule coweights."""


@dataclass(frozen=True)
class AffinePermutation:
    """Window (p(1), .., p(n)) of a bijection with p(i + n) = p(i) + n."""

    window: tuple[int, ...]

    def __post_init__(self):
        n = len(self.window)
        if n == 0:
            raise PermError("empty window")
        if sorted(x % n for x in self.window) != list(range(n)):
            raise PermError(f"window {self.window} is not a permutation of residues mod {n}")
        if sum(self.window) % n != sum(range(1, n + 1)) % n:
            raise PermError(f"window {self.window} has a non-integral shift")

    @property
    def n(self) -> int:
        return len(self.window)

    @property
    def shift(self) -> int:
        n = self.n
        return (sum(self.window) - n * (n + 1) // 2) // n

    def __call__(self, i: int) -> int:
        n = self.n
        q, r = divmod(i - 1, n)
        return self.window[r] + q * n


def compose(p: AffinePermutation, q: AffinePermutation) -> AffinePermutation:
    if p.n != q.n:
        raise PermError("period mismatch")
    return AffinePermutation(tuple(p(q(i)) for i in range(1, p.n + 1)))


def _require_gl(rd: RootDatum, n: int) -> None:
    if rd.type_label != f"GL{n}" or rd.rank != n:
        raise PermError(f"datum {rd.type_label} is not the GL{n} preset")


def to_affine_perm(w: AffineWeylElement, rd: RootDatum, n: int) -> AffinePermutation:
    """w = t_lambda * u goes to i -> u(i) + n * lambda_u(i)."""
    _require_gl(rd, n)
    lam = w.translation
    window = []
    for i in range(1, n + 1):
        e_i = tuple(1 if k == i - 1 else 0 for k in range(n))
        img = mat_vec(w.finite, e_i)
        ui = img.index(1) + 1
        window.append(ui + n * lam[ui - 1])
    return AffinePermutation(tuple(window))


def from_affine_perm(p: AffinePermutation, rd: RootDatum) -> AffineWeylElement:
    n = p.n
    _require_gl(rd, n)
    lam = [0] * n
    mat = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        r = (p.window[i - 1] - 1) % n
        lam[r] = (p.window[i - 1] - 1 - r) // n
        mat[r][i - 1] = 1
    return AffineWeylElement(tuple(lam), tuple(tuple(row) for row in mat))


def inversion_count(p: AffinePermutation) -> int:
    """Affine inversions: pairs i in 1..n, j > i with p(i) > p(j)."""
    n = p.n
    spread = (max(p.window) - min(p.window)) // n + 2
    total = 0
    for i in range(1, n + 1):
        for j in range(i + 1, i + 1 + n * spread):
            if p(i) > p(j):
                total += 1
    return total


def _standard_vertices(n: int) -> list[Vec]:
    return [tuple(1 if k < j else 0 for k in range(n)) for j in range(n)]


def _check_minuscule_gl(mu: Sequence[int], rd: RootDatum, n: int) -> int:
    mu_dom, _ = dominant_rep(tuple(mu), rd)
    r = sum(mu_dom)
    if mu_dom != tuple(1 if k < r else 0 for k in range(n)):
        raise NotMinusculeGLError(
            f"mu = {tuple(mu)} is not minuscule of shape (1^r, 0^(n-r)); "
            "permissibility beyond minuscule coweights can differ from admissibility "
            "and is refused"
        )
    return r


def is_permissible(p: AffinePermutation, mu: Sequence[int], rd: RootDatum) -> bool:
    """Kottwitz class of mu plus the coordinate condition at each vertex."""
    n = p.n
    r = _check_minuscule_gl(mu, rd, n)
    if p.shift != r:
        return False
    w = from_affine_perm(p, rd)
    for vertex in _standard_vertices(n):
        moved = tuple(a + b for a, b in zip(w.translation, mat_vec(w.finite, vertex)))
        diff = tuple(a - b for a, b in zip(moved, vertex))
        if any(x not in (0, 1) for x in diff) or sum(diff) != r:
            return False
    return True


def perm_set(n: int, mu: Sequence[int], rd: RootDatum) -> tuple[AffinePermutation, ...]:
    """All permissible affine permutations, by direct enumeration.

    The vertex condition at the origin pins the translation part to a 0/1
    vector with coordinate sum r, so the candidate space is finite and
    independent of the admissible-set machinery.
    """
    r = _check_minuscule_gl(mu, rd, n)
    out = []
    for ones in itertools.combinations(range(n), r):
        lam = tuple(1 if k in ones else 0 for k in range(n))
        for perm in itertools.permutations(range(1, n + 1)):
            window = tuple(perm[i] + n * lam[perm[i] - 1] for i in range(n))
            p = AffinePermutation(window)
            if is_permissible(p, mu, rd):
                out.append(p)
    return tuple(sorted(out, key=lambda q: q.window))


@dataclass(frozen=True)
class PermCheckReport:
    equal: bool
    adm_size: int
    perm_size: int
    only_in_adm: tuple[tuple[int, ...], ...]
    only_in_perm: tuple[tuple[int, ...], ...]


def adm_eq_perm_check(n: int, mu: Sequence[int], rd: RootDatum) -> PermCheckReport:
    """Compare the admissible image with the permissible set, windowwise."""
    adm_windows = {to_affine_perm(w, rd, n).window for w in adm(tuple(mu), rd).elements}
    perm_windows = {p.window for p in perm_set(n, mu, rd)}
    only_adm = tuple(sorted(adm_windows - perm_windows))
    only_perm = tuple(sorted(perm_windows - adm_windows))
    return PermCheckReport(
        equal=not only_adm and not only_perm,
        adm_size=len(adm_windows),
        perm_size=len(perm_windows),
        only_in_adm=only_adm,
        only_in_perm=only_perm,
    )


def chain_rotation(rd: RootDatum, n: int) -> AffineWeylElement:
    """The length-zero element rotating the standard chain: i -> i + 1."""
    _require_gl(rd, n)
    window = tuple(range(2, n + 2))
    return from_affine_perm(AffinePermutation(window), rd)
