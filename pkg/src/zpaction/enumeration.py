"""Enumeration of admissible subgroups K <= H = Z_p^n with H/K = Z_p^m.

A subgroup K is admissible when no distinguished generator a_1, ...,
a_{n+1} of H lies in K; these subgroups parametrize the Z_p^m actions of
signature (0; p^{n+1}).  Each K is the kernel of a surjection
theta : Z_p^n -> Z_p^m, and theta is determined by K up to left GL_m
action, which the reduced row-echelon form quotients out.  The rref of
theta is therefore a canonical key: equality of keys is equality of
subgroups.

Admissibility in matrix terms: all n columns of theta are nonzero and so
is the implied image of a_{n+1}, i.e. minus the column sum.

Two independent enumeration routes are kept deliberately separate:
``enumerate_actions`` walks rank-m rref matrices directly by pivot-column
pattern (vectorized, no deduplication needed), while
``brute_force_oracle`` canonicalizes every m x n matrix over F_p and
deduplicates.  They must agree wherever both are feasible.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .fpalgebra import (
    FpMatrix,
    PrimeModulus,
    is_rref,
    kernel_basis,
    mat_inverse,
    mat_mul,
    pivot_columns,
    rref,
)
from .hgroup import Permutation, generator_vector, perm_to_matrix

DEFAULT_CANDIDATE_CAP = 10**9
ORACLE_CANDIDATE_CAP = 10**7
_CHUNK = 1 << 20


class ScaleCapError(RuntimeError):
    """Estimated work exceeds the configured cap."""

    def __init__(self, message: str, estimate: int):
        super().__init__(f"{message} (estimated candidates: {estimate})")
        self.estimate = estimate


class AdmissibilityError(ValueError):
    """A subgroup fails the defining constraints of the parameter space."""


@dataclass(frozen=True, order=True)
class ActionParams:
    """Parameters (p, n, m) of a Z_p^m action of signature (0; p^{n+1})."""

    modulus: PrimeModulus
    n: int
    m: int

    def __init__(self, p: int | PrimeModulus, n: int, m: int):
        modulus = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "m", int(m))
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 1 <= self.m <= self.n:
            raise ValueError(f"m must satisfy 1 <= m <= n, got m={self.m}, n={self.n}")
        if (self.n - 1) * (modulus.p - 1) <= 2:
            raise ValueError(
                f"non-hyperbolic parameters: (n-1)(p-1) = {(self.n - 1) * (modulus.p - 1)} <= 2"
            )

    @property
    def p(self) -> int:
        return self.modulus.p


@dataclass(frozen=True)
class SubgroupKey:
    """Canonical representative of an admissible subgroup K <= Z_p^n.

    ``theta`` is the m x n quotient matrix in rref; its kernel is K.
    Instances are validated on construction, totally ordered by their
    row-major digits, and safe to use as dictionary keys.
    """

    params: ActionParams
    theta: FpMatrix

    def __post_init__(self) -> None:
        params, theta = self.params, self.theta
        if theta.modulus != params.modulus:
            raise AdmissibilityError("theta modulus differs from params")
        if theta.rows != params.m or theta.cols != params.n:
            raise AdmissibilityError(
                f"theta must be {params.m}x{params.n}, got {theta.rows}x{theta.cols}"
            )
        if not is_rref(theta):
            raise AdmissibilityError("theta is not in reduced row-echelon form")
        if len(pivot_columns(theta)) != params.m:
            raise AdmissibilityError(f"theta has rank < m = {params.m}")
        p = params.p
        for j in range(params.n):
            if all(row[j] == 0 for row in theta.entries):
                raise AdmissibilityError(f"generator a_{j + 1} lies in the subgroup")
        if all(sum(row) % p == 0 for row in theta.entries):
            raise AdmissibilityError(f"generator a_{params.n + 1} lies in the subgroup")

    @cached_property
    def digits(self) -> tuple[int, ...]:
        return self.theta.flat()

    def digit_string(self) -> str:
        return ";".join(",".join(str(e) for e in row) for row in self.theta.entries)

    def __lt__(self, other: "SubgroupKey") -> bool:
        return self.digits < other.digits

    def __le__(self, other: "SubgroupKey") -> bool:
        return self.digits <= other.digits

    @cached_property
    def images(self) -> tuple[tuple[int, ...], ...]:
        """Images of a_1, ..., a_{n+1} in Z_p^m (columns plus minus-the-sum)."""
        p = self.params.p
        cols = [self.theta.column(j) for j in range(self.params.n)]
        last = tuple((-sum(c[i] for c in cols)) % p for i in range(self.params.m))
        return tuple(cols) + (last,)

    def kernel(self) -> FpMatrix:
        """A canonical basis of K itself, as rows of an (n-m) x n matrix."""
        return kernel_basis(self.theta)

    def __str__(self) -> str:
        return f"SubgroupKey(p={self.params.p}, n={self.params.n}, m={self.params.m}, {self.digit_string()})"


def key_from_digit_string(params: ActionParams, text: str) -> SubgroupKey:
    rows = tuple(tuple(int(tok) for tok in row.split(",")) for row in text.split(";"))
    return SubgroupKey(params, FpMatrix(params.modulus, rows, params.n))


def key_from_theta(params: ActionParams, rows) -> SubgroupKey:
    """Canonicalize an arbitrary rank-m quotient matrix into a key."""
    reduced, rank = rref(FpMatrix(params.modulus, tuple(tuple(r) for r in rows), params.n))
    if rank != params.m:
        raise AdmissibilityError(f"quotient matrix has rank {rank}, expected {params.m}")
    return SubgroupKey(params, reduced)


def key_from_generators(params: ActionParams, words) -> SubgroupKey:
    """Key of the subgroup generated by exponent words over a_1..a_{n+1}.

    Each word is a length-(n+1) exponent sequence; a_{n+1} exponents are
    folded in through its vector -(e_1 + ... + e_n).  The words must span
    a subgroup of rank exactly n - m.
    """
    n, m = params.n, params.m
    vectors = []
    for word in words:
        exps = tuple(word)
        if len(exps) != n + 1:
            raise ValueError(f"generator word must have {n + 1} exponents, got {len(exps)}")
        vec = [0] * n
        for j, e in enumerate(exps, start=1):
            if e % params.p == 0:
                continue
            gen = generator_vector(j, n, params.modulus)
            for k in range(n):
                vec[k] = (vec[k] + e * gen.entries[k]) % params.p
        vectors.append(tuple(vec))
    span = FpMatrix(params.modulus, tuple(vectors), n)
    _, rank = rref(span)
    if rank != n - m:
        raise AdmissibilityError(
            f"generators span a subgroup of rank {rank}, expected n - m = {n - m}"
        )
    theta = kernel_basis(span)
    key = SubgroupKey(params, theta)
    return key


_PAREN_RE = re.compile(r"^K\((\d+)(?:,(\d+))?\)$")
_INDEXED_RE = re.compile(r"^K([34])\((\d+)\)$")
_PLAIN_RE = re.compile(r"^K([1256])$")
_BAR_RE = re.compile(r"^Kbar([1-4])$")


def _word(n: int, entries) -> tuple[int, ...]:
    w = [0] * (n + 1)
    for idx, e in entries:
        w[idx - 1] = e
    return tuple(w)


def key_from_named(params: ActionParams, name: str, family: str | None = None) -> SubgroupKey:
    """Resolve a named subgroup such as ``K(0,4)``, ``K(2)``, ``K3(1)`` or ``Kbar2``.

    Families:
      * ``n3`` (default when n == 3): K(r,s) = <a1^r a2^s a3^-1> and
        K(l) = <a1^l a2^-1>.
      * ``d3`` (n == 5, threefold symmetry): K(r,s) = <a1 a2 a3,
        a1^r a2^s a4^-1, a1^-s a2^(r-s) a5^-1> and K(l) = <a1 a2 a3,
        a1^l a2^-1, a4^l a6^-1>.
      * ``k4`` (n == 5, Klein-four symmetry): K(r,s) = <a1^r a2^s a3^-1,
        a3 a5^-1, a4 a6^-1>, the fixed groups K1, K2, K5, K6, the
        one-parameter groups K3(r), K4(r), and Kbar1..Kbar4 at p = 2.
    """
    if family is None:
        if params.n == 3:
            family = "n3"
        else:
            raise ValueError(f"family required to resolve {name!r} at n={params.n}")
    text = re.sub(r"\s+", "", name)
    n, p = params.n, params.p
    word = lambda entries: _word(n, entries)

    if family == "n3":
        match = _PAREN_RE.match(text)
        if n != 3 or not match:
            raise ValueError(f"{name!r} is not an n=3 family name")
        first, second = match.groups()
        if second is not None:
            r, s = int(first), int(second)
            if (r % p, s % p) in ((0, 0), (p - 1, p - 1)):
                raise AdmissibilityError(f"K({r},{s}) is not admissible at p={p}")
            return key_from_generators(params, [word([(1, r), (2, s), (3, -1)])])
        l = int(first)
        if l % p == 0:
            raise AdmissibilityError(f"K({l}) requires l nonzero mod p")
        return key_from_generators(params, [word([(1, l), (2, -1)])])

    if family == "d3":
        match = _PAREN_RE.match(text)
        if n != 5 or not match:
            raise ValueError(f"{name!r} is not a d3 family name")
        first, second = match.groups()
        base = word([(1, 1), (2, 1), (3, 1)])
        if second is not None:
            r, s = int(first), int(second)
            return key_from_generators(
                params,
                [base, word([(1, r), (2, s), (4, -1)]), word([(1, -s), (2, r - s), (5, -1)])],
            )
        l = int(first)
        return key_from_generators(
            params, [base, word([(1, l), (2, -1)]), word([(4, l), (6, -1)])]
        )

    if family == "k4":
        if n != 5:
            raise ValueError(f"{name!r} is not a k4 family name")
        if match := _BAR_RE.match(text):
            if p != 2:
                raise ValueError(f"{name!r} only exists at p=2")
            words = {
                1: [word([(1, 1), (2, 1)]), word([(3, 1), (4, 1)]), word([(3, 1), (5, 1)])],
                2: [word([(1, 1), (2, 1)]), word([(3, 1), (4, 1)]), word([(1, 1), (3, 1), (5, 1)])],
                3: [word([(1, 1), (2, 1)]), word([(3, 1), (5, 1)]), word([(1, 1), (3, 1), (4, 1)])],
                4: [word([(1, 1), (2, 1)]), word([(4, 1), (5, 1)]), word([(1, 1), (3, 1), (4, 1)])],
            }[int(match.group(1))]
            return key_from_generators(params, words)
        if match := _PLAIN_RE.match(text):
            words = {
                1: [word([(1, 1), (2, -1)]), word([(3, 1), (4, -1)]), word([(5, 1), (6, -1)])],
                2: [word([(1, 1), (2, -1)]), word([(3, 1), (6, -1)]), word([(4, 1), (5, -1)])],
                5: [word([(1, 1), (2, -1)]), word([(3, 1), (5, -1)]), word([(4, 1), (6, -1)])],
                6: [word([(1, 1), (2, 1)]), word([(3, 1), (5, -1)]), word([(4, 1), (6, -1)])],
            }[int(match.group(1))]
            return key_from_generators(params, words)
        if match := _INDEXED_RE.match(text):
            idx, r = int(match.group(1)), int(match.group(2))
            if idx == 3:
                words = [word([(1, r), (3, -1), (4, 1)]), word([(1, 1), (2, 1)]), word([(3, 1), (6, 1)])]
            else:
                words = [word([(1, r), (3, -1), (6, 1)]), word([(1, 1), (2, 1)]), word([(3, 1), (4, 1)])]
            return key_from_generators(params, words)
        if match := _PAREN_RE.match(text):
            first, second = match.groups()
            if second is None:
                raise ValueError(f"{name!r} is not a k4 family name")
            r, s = int(first), int(second)
            if (2 * (r + s) + 1) % p != 0:
                raise AdmissibilityError(f"K({r},{s}) is not in the k4 family at p={p}")
            return key_from_generators(
                params,
                [word([(1, r), (2, s), (3, -1)]), word([(3, 1), (5, -1)]), word([(4, 1), (6, -1)])],
            )
        raise ValueError(f"unrecognized subgroup name: {name!r}")

    raise ValueError(f"unknown family {family!r}")


def name_of_key(key: SubgroupKey) -> str | None:
    """The n=3 family name of a key (K(r,s) or K(l)), when it has one."""
    if key.params.n != 3 or key.params.m != 2:
        return None
    pres = classify_type(key)
    if isinstance(pres, Type1Presentation):
        return f"K({pres.r[0]},{pres.s[0]})"
    if isinstance(pres, Type2Presentation):
        return f"K({pres.l[0]})"
    return None


# ---------------------------------------------------------------------------
# enumeration


def candidate_estimate(params: ActionParams) -> int:
    return math.comb(params.n, params.m) * params.p ** (params.m * (params.n - params.m))


def _dtype_for(p: int):
    return np.uint8 if p < 256 else np.uint16


@lru_cache(maxsize=6)
def _theta_table_cached(params: ActionParams) -> np.ndarray:
    """All admissible rref quotient matrices as an (N, m, n) array, sorted.

    Walks pivot-column combinations in lexicographic order and free
    entries in odometer order; each emitted matrix is already canonical,
    so no deduplication is needed.  A final lexicographic sort is applied
    as a safety net.
    """
    p, n, m = params.p, params.n, params.m
    dtype = _dtype_for(p)
    blocks = []
    for pivots in itertools.combinations(range(n), m):
        free = [
            (i, j)
            for i in range(m)
            for j in range(n)
            if j not in pivots and j > pivots[i]
        ]
        total = p ** len(free)
        for start in range(0, total, _CHUNK):
            count = min(_CHUNK, total - start)
            codes = np.arange(start, start + count, dtype=np.int64)
            mats = np.zeros((count, m, n), dtype=dtype)
            for i in range(m):
                mats[:, i, pivots[i]] = 1
            for i, j in reversed(free):
                codes, digit = np.divmod(codes, p)
                mats[:, i, j] = digit.astype(dtype)
            columns_ok = (mats != 0).any(axis=1).all(axis=1)
            implied = (-mats.sum(axis=2, dtype=np.int64)) % p
            implied_ok = (implied != 0).any(axis=1)
            keep = mats[columns_ok & implied_ok]
            if len(keep):
                blocks.append(keep)
    if blocks:
        table = np.concatenate(blocks)
    else:
        table = np.zeros((0, m, n), dtype=dtype)
    flat = table.reshape(len(table), m * n)
    order = np.lexsort(flat[:, ::-1].T)
    table = np.ascontiguousarray(table[order])
    table.setflags(write=False)
    return table


def theta_table(params: ActionParams, max_candidates: int = DEFAULT_CANDIDATE_CAP) -> np.ndarray:
    """Array-level enumeration of the parameter space (internal fast path)."""
    estimate = candidate_estimate(params)
    if estimate > max_candidates:
        raise ScaleCapError(
            f"enumeration at (p={params.p}, n={params.n}, m={params.m}) exceeds the cap",
            estimate,
        )
    return _theta_table_cached(params)


def _key_from_row(params: ActionParams, row: np.ndarray) -> SubgroupKey:
    entries = tuple(tuple(int(e) for e in r) for r in row)
    return SubgroupKey(params, FpMatrix(params.modulus, entries, params.n))


def enumerate_actions(
    params: ActionParams, max_candidates: int = DEFAULT_CANDIDATE_CAP
) -> list[SubgroupKey]:
    """All admissible subgroups at (p, n, m), sorted by canonical key."""
    table = theta_table(params, max_candidates)
    return [_key_from_row(params, row) for row in table]


def brute_force_oracle(
    params: ActionParams, max_candidates: int = ORACLE_CANDIDATE_CAP
) -> list[SubgroupKey]:
    """Independent verification path: canonicalize every m x n matrix.

    Iterates all p^(mn) matrices, keeps those of rank m whose n+1
    generator images are all nonzero, canonicalizes by rref and
    deduplicates.  Must equal ``enumerate_actions`` as a sorted list.
    """
    p, n, m = params.p, params.n, params.m
    estimate = p ** (m * n)
    if estimate > max_candidates:
        raise ScaleCapError("brute-force oracle exceeds the cap", estimate)
    seen: set[tuple[tuple[int, ...], ...]] = set()
    keys = []
    for flat in itertools.product(range(p), repeat=m * n):
        rows = tuple(flat[i * n : (i + 1) * n] for i in range(m))
        if any(all(row[j] == 0 for row in rows) for j in range(n)):
            continue
        if all(sum(row) % p == 0 for row in rows):
            continue
        reduced, rank = rref(FpMatrix(params.modulus, rows, n))
        if rank != m:
            continue
        if reduced.entries in seen:
            continue
        seen.add(reduced.entries)
        keys.append(SubgroupKey(params, reduced))
    keys.sort()
    return keys


# ---------------------------------------------------------------------------
# canonical presentations


@dataclass(frozen=True)
class Type1Presentation:
    """m=2 form with independent first two images.

    K = <a1^{r_j} a2^{s_j} a_j^{-1} : j = 3..n>, parameters indexed by
    j = 3..n; the images of a_{n+1} are forced by the column congruences.
    """

    params: ActionParams
    r: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.params.p
        if len(self.r) != self.params.n - 2 or len(self.s) != self.params.n - 2:
            raise ValueError("presentation length must be n - 2")
        if any((rj % p, sj % p) == (0, 0) for rj, sj in zip(self.r, self.s)):
            raise AdmissibilityError("some (r_j, s_j) is (0, 0)")
        if (1 + sum(self.r)) % p == 0 and (1 + sum(self.s)) % p == 0:
            raise AdmissibilityError("the forced image of a_{n+1} vanishes")

    @property
    def forced_r(self) -> int:
        return (-(1 + sum(self.r))) % self.params.p

    @property
    def forced_s(self) -> int:
        return (-(1 + sum(self.s))) % self.params.p


@dataclass(frozen=True)
class Type2Presentation:
    """m=2 form with an initial run of t images inside <theta(a_1)>.

    K = <a1^{l_j} a_j^{-1} : j = 2..t> + <a1^{r_j} a_{t+1}^{s_j} a_j^{-1} :
    j = t+2..n>; l parameters are indexed by j = 2..t and r, s by
    j = t+2..n.
    """

    params: ActionParams
    t: int
    l: tuple[int, ...]
    r: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self) -> None:
        p, n = self.params.p, self.params.n
        if not 2 <= self.t <= n - 1:
            raise ValueError(f"t must lie in 2..n-1, got {self.t}")
        if len(self.l) != self.t - 1:
            raise ValueError("l must have t - 1 entries")
        if len(self.r) != n - self.t - 1 or len(self.s) != n - self.t - 1:
            raise ValueError("r, s must have n - t - 1 entries")
        if any(lj % p == 0 for lj in self.l):
            raise AdmissibilityError("some l_j vanishes")
        if any((rj % p, sj % p) == (0, 0) for rj, sj in zip(self.r, self.s)):
            raise AdmissibilityError("some (r_j, s_j) is (0, 0)")
        if (1 + sum(self.l) + sum(self.r)) % p == 0 and (1 + sum(self.s)) % p == 0:
            raise AdmissibilityError("the forced image of a_{n+1} vanishes")

    @property
    def forced_r(self) -> int:
        return (-(1 + sum(self.l) + sum(self.r))) % self.params.p

    @property
    def forced_s(self) -> int:
        return (-(1 + sum(self.s))) % self.params.p


@dataclass(frozen=True)
class GeneralPresentation:
    """Any-m form: a relabeling sigma plus the coordinate table.

    ``table`` holds the coordinates of the images of a_{m+1}, ...,
    a_{n+1} of the relabeled subgroup, in the basis given by the images of
    a_1, ..., a_m.  Row constraints: no row vanishes, and each column sums
    with 1 to zero mod p (the product of all generators is trivial).
    The choice of sigma (lexicographically least that makes the first m
    images a generating set) is this package's convention.
    """

    params: ActionParams
    sigma: Permutation
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        p, n, m = self.params.p, self.params.n, self.params.m
        if self.sigma.degree != n + 1:
            raise ValueError("sigma degree must be n + 1")
        if len(self.table) != n + 1 - m or any(len(row) != m for row in self.table):
            raise ValueError("table must be (n+1-m) rows of m coordinates")
        if any(all(e % p == 0 for e in row) for row in self.table):
            raise AdmissibilityError("some relabeled generator image vanishes")
        for i in range(m):
            if (1 + sum(row[i] for row in self.table)) % p != 0:
                raise AdmissibilityError(f"column {i + 1} violates the trivial-product congruence")


TypePresentation = Type1Presentation | Type2Presentation | GeneralPresentation


def transform_key(key: SubgroupKey, sigma: Permutation) -> SubgroupKey:
    """Key of the relabeled subgroup Phi_sigma(K): rref(theta M_sigma^{-1})."""
    params = key.params
    m_inv = perm_to_matrix(sigma.inverse(), params.modulus, params.n).matrix
    return key_from_theta(params, mat_mul(key.theta, m_inv).entries)


def _span_coefficient(base: tuple[int, ...], vec: tuple[int, ...], modulus: PrimeModulus) -> int | None:
    """c with vec = c * base, or None; base must be nonzero."""
    p = modulus.p
    k = next(i for i, e in enumerate(base) if e)
    c = (vec[k] * modulus.inv(base[k])) % p
    if all((c * b - v) % p == 0 for b, v in zip(base, vec)):
        return c
    return None


def classify_type(key: SubgroupKey) -> TypePresentation:
    """Canonical presentation of a key: the two m=2 forms, else the general form."""
    if key.params.m != 2:
        return general_presentation(key)
    params = key.params
    p, n = params.p, params.n
    modulus = params.modulus
    images = key.images
    phi1 = images[0]
    t = 1
    while t < n and _span_coefficient(phi1, images[t], modulus) is not None:
        t += 1
    basis_index = t  # images[basis_index] = theta(a_{t+1}), independent of phi1
    phi2 = images[basis_index]
    basis = FpMatrix(modulus, (phi1, phi2))
    binv = mat_inverse(basis)

    def coords(vec):
        # theta(a_j) = r phi1 + s phi2  <=>  (r, s) = vec . basis^{-1}
        return tuple(sum(vec[i] * binv.entries[i][k] for i in range(2)) % p for k in range(2))

    if t == 1:
        rs = [coords(images[j - 1]) for j in range(3, n + 1)]
        return Type1Presentation(params, tuple(r for r, _ in rs), tuple(s for _, s in rs))
    ls = tuple(_span_coefficient(phi1, images[j - 1], modulus) for j in range(2, t + 1))
    rs = [coords(images[j - 1]) for j in range(t + 2, n + 1)]
    return Type2Presentation(
        params, t, tuple(ls), tuple(r for r, _ in rs), tuple(s for _, s in rs)
    )


def general_presentation(key: SubgroupKey) -> GeneralPresentation:
    """Any-m canonical form, relabeling by the least permutation that works."""
    params = key.params
    p, n, m = params.p, params.n, params.m
    modulus = params.modulus
    images = key.images
    sigma = None
    for candidate in itertools.permutations(range(1, n + 2)):
        perm = Permutation(candidate)
        inv = perm.inverse()
        chosen = [images[inv(i) - 1] for i in range(1, m + 1)]
        _, rank = rref(FpMatrix(modulus, tuple(chosen), m))
        if rank == m:
            sigma = perm
            break
    assert sigma is not None  # the images span Z_p^m, so some relabeling works
    moved = transform_key(key, sigma)
    images2 = moved.images
    basis = FpMatrix(modulus, tuple(images2[:m]))
    binv = mat_inverse(basis)
    table = []
    for j in range(m + 1, n + 2):
        vec = images2[j - 1]
        row = tuple(sum(vec[i] * binv.entries[i][k] for i in range(m)) % p for k in range(m))
        table.append(row)
    return GeneralPresentation(params, sigma, tuple(table))


def key_from_presentation(pres: TypePresentation) -> SubgroupKey:
    """Rebuild the subgroup key a presentation came from (round trip)."""
    params = pres.params
    n = params.n
    zero = [0] * (n + 1)

    def word(entries):
        w = list(zero)
        for idx, e in entries:
            w[idx - 1] = e
        return tuple(w)

    if isinstance(pres, Type1Presentation):
        words = [
            word([(1, rj), (2, sj), (j, -1)])
            for j, (rj, sj) in enumerate(zip(pres.r, pres.s), start=3)
        ]
        return key_from_generators(params, words)
    if isinstance(pres, Type2Presentation):
        words = [word([(1, lj), (j, -1)]) for j, lj in enumerate(pres.l, start=2)]
        words += [
            word([(1, rj), (pres.t + 1, sj), (j, -1)])
            for j, (rj, sj) in enumerate(zip(pres.r, pres.s), start=pres.t + 2)
        ]
        return key_from_generators(params, words)
    if isinstance(pres, GeneralPresentation):
        m = params.m
        words = []
        for j, row in zip(range(m + 1, n + 1), pres.table):
            words.append(word([(i + 1, e) for i, e in enumerate(row)] + [(j, -1)]))
        moved = key_from_generators(params, words)
        return transform_key(moved, pres.sigma.inverse())
    raise TypeError(f"not a presentation: {pres!r}")
