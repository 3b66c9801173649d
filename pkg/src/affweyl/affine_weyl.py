"""The extended affine Weyl group X_*(T) x W_0 with exact combinatorics.

Elements are pairs (translation, finite part); the finite part is stored
as an integer matrix acting on the cocharacter lattice.  Length is the
closed Iwahori-Matsumoto count over the positive roots, reduced words are
taken greedily with respect to the fixed base alcove (the alcove in the
dominant chamber with a vertex at the origin), and the length-zero
subgroup keeps track of the fundamental group.

>>> from affweyl.root_datum import build_root_datum
>>> rd = build_root_datum({"preset": "GL", "n": 2})
>>> w = translation_element((1, 0), rd)
>>> length(rd, w)
1
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .linalg import (
    Mat,
    Vec,
    identity_matrix,
    mat_inverse,
    mat_mul,
    mat_vec,
    solve_rational,
    vec_mat,
)
from .root_datum import (
    RootDatum,
    fundamental_group,
    pairing,
)


class AffineWeylError(ValueError):
    """Invalid operation on affine Weyl elements."""


@dataclass(frozen=True)
class AffineWeylElement:
    """Element t_lambda * u with u a finite Weyl matrix on X_*(T)."""

    translation: Vec
    finite: Mat

    def rank(self) -> int:
        return len(self.translation)


def identity_element(rd: RootDatum) -> AffineWeylElement:
    return AffineWeylElement((0,) * rd.rank, identity_matrix(rd.rank))


def translation_element(lam: Sequence[int], rd: RootDatum) -> AffineWeylElement:
    if len(lam) != rd.rank:
        raise AffineWeylError("translation has the wrong rank")
    return AffineWeylElement(tuple(int(x) for x in lam), identity_matrix(rd.rank))


def mul(a: AffineWeylElement, b: AffineWeylElement) -> AffineWeylElement:
    if a.rank() != b.rank():
        raise AffineWeylError("rank mismatch in multiplication")
    trans = tuple(x + y for x, y in zip(a.translation, mat_vec(a.finite, b.translation)))
    return AffineWeylElement(trans, mat_mul(a.finite, b.finite))


def mul_all(elements: Iterable[AffineWeylElement], rd: RootDatum) -> AffineWeylElement:
    out = identity_element(rd)
    for el in elements:
        out = mul(out, el)
    return out


@lru_cache(maxsize=None)
def _cached_inverse(m: Mat) -> Mat:
    return mat_inverse(m)


def inv(a: AffineWeylElement) -> AffineWeylElement:
    m_inv = _cached_inverse(a.finite)
    return AffineWeylElement(tuple(-x for x in mat_vec(m_inv, a.translation)), m_inv)


def is_translation(w: AffineWeylElement, rd: RootDatum) -> bool:
    return w.finite == identity_matrix(rd.rank)


def reflection_matrix(root: Vec, coroot: Vec) -> Mat:
    n = len(root)
    return tuple(
        tuple((1 if i == j else 0) - coroot[i] * root[j] for j in range(n)) for i in range(n)
    )


def finite_reflection(rd: RootDatum, i: int) -> AffineWeylElement:
    """The simple reflection s_i as a group element."""
    return AffineWeylElement(
        (0,) * rd.rank, reflection_matrix(rd.simple_roots[i], rd.simple_coroots[i])
    )


@lru_cache(maxsize=None)
def _positive_root_set(rd: RootDatum) -> frozenset[Vec]:
    return frozenset(rd.positive_roots)


def _is_positive_root(rd: RootDatum, covector: Vec) -> bool:
    if covector in _positive_root_set(rd):
        return True
    if tuple(-x for x in covector) in _positive_root_set(rd):
        return False
    raise AffineWeylError("covector is not a root of the datum")


@lru_cache(maxsize=None)
def _highest_roots(rd: RootDatum) -> tuple[tuple[Vec, Vec], ...]:
    """Highest (root, coroot) pair of each irreducible component."""
    out = []
    for comp in rd.components():
        best = None
        best_height = None
        for root, coroot in zip(rd.positive_roots, rd.positive_coroots):
            coeffs = _simple_coefficients(rd, root)
            support = {i for i, c in enumerate(coeffs) if c}
            if not support <= set(comp):
                continue
            h = sum(coeffs)
            if best_height is None or h > best_height:
                best, best_height = (root, coroot), h
        assert best is not None
        out.append(best)
    return tuple(out)


@lru_cache(maxsize=None)
def _simple_root_coefficient_cache(rd: RootDatum) -> dict[Vec, tuple[int, ...]]:
    out = {}
    for root in rd.positive_roots:
        coeffs = solve_rational(rd.simple_roots, root)
        assert coeffs is not None and all(c.denominator == 1 for c in coeffs)
        out[root] = tuple(int(c) for c in coeffs)
    return out


def _simple_coefficients(rd: RootDatum, root: Vec) -> tuple[int, ...]:
    return _simple_root_coefficient_cache(rd)[root]


@lru_cache(maxsize=None)
def iwahori_generators(rd: RootDatum) -> tuple[AffineWeylElement, ...]:
    """The affine simple reflections, one affine node per component first.

    For an irreducible datum the list is (s0, s1, .., sr) with s0 the
    reflection in the wall <x, theta> = 1 and s1..sr the finite simple
    reflections.
    """
    affine = []
    for root, coroot in _highest_roots(rd):
        refl = reflection_matrix(root, coroot)
        affine.append(AffineWeylElement(coroot, refl))
    finite = [finite_reflection(rd, i) for i in range(rd.semisimple_rank)]
    return tuple(affine) + tuple(finite)


def generator_name(rd: RootDatum, index: int) -> str:
    return f"s{index}"


@lru_cache(maxsize=None)
def length(rd: RootDatum, w: AffineWeylElement) -> int:
    """Iwahori-Matsumoto length l(t_lambda u).

    Sum over positive roots a of |<lambda, a>| when u^-1(a) stays positive
    and of |<lambda, a> - 1| when it turns negative.
    """
    lam = w.translation
    total = 0
    for root in rd.positive_roots:
        pulled = vec_mat(root, w.finite)
        c = pairing(lam, root)
        if _is_positive_root(rd, pulled):
            total += abs(c)
        else:
            total += abs(c - 1)
    return total


@lru_cache(maxsize=None)
def reduced_word(rd: RootDatum, w: AffineWeylElement) -> tuple[tuple[int, ...], AffineWeylElement]:
    """Greedy reduced word and the length-zero remainder.

    Returns (letters, omega) with w equal to the product of the listed
    generators times omega, len(letters) == length(w) and length(omega) == 0.
    """
    gens = iwahori_generators(rd)
    letters: list[int] = []
    cur = w
    cur_len = length(rd, cur)
    while cur_len > 0:
        for i, s in enumerate(gens):
            nxt = mul(s, cur)
            if length(rd, nxt) < cur_len:
                letters.append(i)
                cur = nxt
                cur_len -= 1
                break
        else:
            raise AffineWeylError("no descent found; length function is inconsistent")
    return tuple(letters), cur


def omega_part(rd: RootDatum, w: AffineWeylElement) -> AffineWeylElement:
    return reduced_word(rd, w)[1]


def rebuild_from_word(rd: RootDatum, letters: Sequence[int], omega: AffineWeylElement) -> AffineWeylElement:
    gens = iwahori_generators(rd)
    return mul(mul_all((gens[i] for i in letters), rd), omega)


@lru_cache(maxsize=None)
def kottwitz(rd: RootDatum, w: AffineWeylElement) -> Vec:
    """Class of the translation part in pi_1 = X_*(T) / coroot lattice."""
    return fundamental_group(rd).project(w.translation)


def omega_rep(rd: RootDatum, lam: Sequence[int]) -> AffineWeylElement:
    """The unique length-zero element whose Kottwitz class is that of lam."""
    return omega_part(rd, translation_element(lam, rd))


@lru_cache(maxsize=None)
def _bruhat_leq_wa(rd: RootDatum, v: AffineWeylElement, w: AffineWeylElement) -> bool:
    if v == w:
        return True
    lv = length(rd, v)
    lw = length(rd, w)
    if lv >= lw:
        return False
    gens = iwahori_generators(rd)
    for s in gens:
        sw = mul(s, w)
        if length(rd, sw) < lw:
            sv = mul(s, v)
            if length(rd, sv) < lv:
                return _bruhat_leq_wa(rd, sv, sw)
            return _bruhat_leq_wa(rd, v, sw)
    raise AffineWeylError("no descent found for a positive-length element")


def bruhat_leq(rd: RootDatum, v: AffineWeylElement, w: AffineWeylElement) -> bool:
    """Bruhat order, with elements comparable only in one Omega coset."""
    ov = omega_part(rd, v)
    ow = omega_part(rd, w)
    if ov != ow:
        return False
    om_inv = inv(ov)
    return _bruhat_leq_wa(rd, mul(v, om_inv), mul(w, om_inv))


def bruhat_leq_subword_oracle(rd: RootDatum, v: AffineWeylElement, w: AffineWeylElement) -> bool:
    """Independent Bruhat test by exhausting subwords of one reduced word.

    Exponential in length(w); meant for cross-checking at small length.
    """
    ov = omega_part(rd, v)
    ow = omega_part(rd, w)
    if ov != ow:
        return False
    letters, _ = reduced_word(rd, mul(w, inv(ow)))
    gens = iwahori_generators(rd)
    target = mul(v, inv(ov))
    n = len(letters)
    for mask in range(1 << n):
        prod = identity_element(rd)
        for k in range(n):
            if mask & (1 << k):
                prod = mul(prod, gens[letters[k]])
        if prod == target:
            return True
    return False


# ---------------------------------------------------------------------------
# Frobenius actions


@dataclass(frozen=True)
class SigmaAction:
    """Finite-order automorphism of the based datum, acting on W."""

    matrix: Mat
    matrix_inv: Mat
    order: int

    def is_identity(self) -> bool:
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(len(self.matrix))
            for j in range(len(self.matrix))
        )


def make_sigma(rd: RootDatum, matrix: Sequence[Sequence[int]]) -> SigmaAction:
    """Validate a lattice automorphism as a diagram automorphism.

    The matrix must permute the simple coroots, act compatibly on the
    simple roots, and have finite order; this is exactly the condition for
    the induced map on W to preserve the base alcove and permute the
    affine simple reflections.
    """
    m = tuple(tuple(int(x) for x in row) for row in matrix)
    if len(m) != rd.rank or any(len(row) != rd.rank for row in m):
        raise AffineWeylError("automorphism matrix has the wrong shape")
    m_inv = mat_inverse(m)
    perm = []
    for i, coroot in enumerate(rd.simple_coroots):
        image = mat_vec(m, coroot)
        try:
            j = rd.simple_coroots.index(image)
        except ValueError as exc:
            raise AffineWeylError(
                f"automorphism does not permute the simple coroots (image of coroot {i})"
            ) from exc
        if vec_mat(rd.simple_roots[j], m) != rd.simple_roots[i]:
            raise AffineWeylError(
                f"automorphism is not compatible with the pairing at simple root {i}"
            )
        perm.append(j)
    if sorted(perm) != list(range(rd.semisimple_rank)):
        raise AffineWeylError("automorphism does not permute the simple coroots bijectively")
    power = m
    order = 1
    while power != identity_matrix(rd.rank):
        power = mat_mul(power, m)
        order += 1
        if order > 2520:
            raise AffineWeylError("automorphism does not have small finite order")
    return SigmaAction(m, m_inv, order)


def sigma_identity(rd: RootDatum) -> SigmaAction:
    return SigmaAction(identity_matrix(rd.rank), identity_matrix(rd.rank), 1)


def sigma_from_name(rd: RootDatum, name: str) -> SigmaAction:
    """Named actions: "id" everywhere, "flip" for the type A presets."""
    if name == "id":
        return sigma_identity(rd)
    if name == "flip":
        label = rd.type_label
        n = rd.rank
        if label.startswith("GL"):
            m = [[0] * n for _ in range(n)]
            for j in range(n):
                m[n - 1 - j][j] = -1
            return make_sigma(rd, m)
        if label.startswith("SL") or label.startswith("PGL"):
            m = [[0] * n for _ in range(n)]
            for j in range(n):
                m[n - 1 - j][j] = 1
            return make_sigma(rd, m)
        raise AffineWeylError(f"no diagram flip is defined for {label}")
    raise AffineWeylError(f"unknown sigma name {name!r}")


def sigma_apply(sigma: SigmaAction, w: AffineWeylElement) -> AffineWeylElement:
    return AffineWeylElement(
        mat_vec(sigma.matrix, w.translation),
        mat_mul(sigma.matrix, mat_mul(w.finite, sigma.matrix_inv)),
    )


def sigma_apply_cochar(sigma: SigmaAction, lam: Sequence[int]) -> Vec:
    return mat_vec(sigma.matrix, tuple(lam))


@lru_cache(maxsize=None)
def sigma_generator_permutation(rd: RootDatum, sigma: SigmaAction) -> tuple[int, ...]:
    """How sigma permutes the affine simple reflections."""
    gens = iwahori_generators(rd)
    perm = []
    for s in gens:
        image = sigma_apply(sigma, s)
        try:
            perm.append(gens.index(image))
        except ValueError as exc:
            raise AffineWeylError("sigma does not permute the affine simple reflections") from exc
    return tuple(perm)


# ---------------------------------------------------------------------------
# Parahoric levels and double cosets


@dataclass(frozen=True)
class ParahoricLevel:
    """A subset K of the affine simple reflections with W_K finite."""

    generators: tuple[int, ...]

    @staticmethod
    def iwahori() -> "ParahoricLevel":
        return ParahoricLevel(())


def make_level(rd: RootDatum, indices: Iterable[int], sigma: Optional[SigmaAction] = None) -> ParahoricLevel:
    idx = tuple(sorted(set(int(i) for i in indices)))
    n_gens = len(iwahori_generators(rd))
    for i in idx:
        if not 0 <= i < n_gens:
            raise AffineWeylError(f"generator index {i} out of range")
    n_comps = len(rd.components())
    for c, comp in enumerate(rd.components()):
        node_set = {c} | {n_comps + i for i in comp}
        if node_set <= set(idx):
            raise AffineWeylError(
                "level contains every node of an affine component; W_K would be infinite"
            )
    if sigma is not None:
        perm = sigma_generator_permutation(rd, sigma)
        if {perm[i] for i in idx} != set(idx):
            raise AffineWeylError("level is not sigma-stable")
    return ParahoricLevel(idx)


def double_coset_rep(rd: RootDatum, w: AffineWeylElement, level: ParahoricLevel) -> AffineWeylElement:
    """Minimal-length element of W_K w W_K, by greedy two-sided descent."""
    gens = iwahori_generators(rd)
    cur = w
    cur_len = length(rd, cur)
    changed = True
    while changed:
        changed = False
        for i in level.generators:
            left = mul(gens[i], cur)
            if length(rd, left) < cur_len:
                cur, cur_len = left, cur_len - 1
                changed = True
                continue
            right = mul(cur, gens[i])
            if length(rd, right) < cur_len:
                cur, cur_len = right, cur_len - 1
                changed = True
    return cur


@lru_cache(maxsize=None)
def finite_parahoric_subgroup(rd: RootDatum, level: ParahoricLevel) -> frozenset[AffineWeylElement]:
    """All of W_K; the level must be finite, which make_level guarantees."""
    gens = [iwahori_generators(rd)[i] for i in level.generators]
    seen = {identity_element(rd)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                cand = mul(w, g)
                if cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
        if len(seen) > 100000:
            raise AffineWeylError("parahoric subgroup is unexpectedly large")
    return frozenset(seen)


def element_sort_key(rd: RootDatum, w: AffineWeylElement):
    """Deterministic ordering: length, then translation, then finite part."""
    return (length(rd, w), w.translation, w.finite)
