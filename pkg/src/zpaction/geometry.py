"""Curve models, genus arithmetic and Jacobian genus bookkeeping.

A subgroup key K at m = 2 describes a surface S that is the fiber product
of two cyclic p-covers of the sphere sharing the x coordinate; the
exponent tables of those covers are read off the type presentation.  For
every subgroup L of the deck group N = Z_p^m, the quotient S/L is again a
cyclic-type cover whose genus follows from Riemann-Hurwitz; at m = 2 the
p+1 one-dimensional L give the genus decomposition of the Jacobian of S,
whose dimensions must add up to the genus of S exactly.

Marked points: the branch point at infinity is carried as point index 1
with an exponent slot like any other; rendering omits its factor, and the
sum-to-zero exponent invariant encodes its branching implicitly.  That
keeps the arithmetic uniform with no special cases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .enumeration import (
    ActionParams,
    SubgroupKey,
    Type1Presentation,
    Type2Presentation,
    classify_type,
)
from .fpalgebra import (
    FpMatrix,
    PrimeModulus,
    pivot_columns,
    rref,
    row_space_coordinates,
)


@dataclass(frozen=True)
class MarkedPoints:
    """Display labels for the n+1 marked points; index 1 is infinity."""

    n: int
    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != self.n + 1:
            raise ValueError(f"need {self.n + 1} labels, got {len(self.labels)}")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("marked-point labels must be pairwise distinct")

    @staticmethod
    def standard(n: int) -> "MarkedPoints":
        return MarkedPoints(n, ("inf", "0", "1") + tuple(f"q{j}" for j in range(4, n + 2)))

    @staticmethod
    def with_lambda(n: int = 3) -> "MarkedPoints":
        """The one-dimensional family labels: a single modulus called lambda."""
        if n != 3:
            raise ValueError("the single-lambda label set is the n=3 configuration")
        return MarkedPoints(3, ("inf", "0", "1", "λ"))

    @staticmethod
    def threefold(n: int = 5) -> "MarkedPoints":
        """Marked points in threefold-symmetric position."""
        if n != 5:
            raise ValueError("the threefold configuration is the n=5 case")
        return MarkedPoints(5, ("inf", "0", "1", "λ", "1/(1-λ)", "(λ-1)/λ"))

    @staticmethod
    def fourgroup(n: int = 5) -> "MarkedPoints":
        """Marked points in Klein-four-symmetric position."""
        if n != 5:
            raise ValueError("the Klein-four configuration is the n=5 case")
        return MarkedPoints(5, ("inf", "0", "1", "λ", "-1", "-λ"))


_PRESETS = {
    "standard": MarkedPoints.standard,
    "lambda": lambda n: MarkedPoints.with_lambda(n),
    "d3": lambda n: MarkedPoints.threefold(n),
    "k4": lambda n: MarkedPoints.fourgroup(n),
}


def points_preset(name: str, n: int) -> MarkedPoints:
    try:
        return _PRESETS[name](n)
    except KeyError:
        raise ValueError(f"unknown label preset {name!r}") from None


@dataclass(frozen=True)
class CurveModel:
    """A cyclic p-cover y^p = prod (x - q_j)^{e_j} over the marked points.

    ``exponents`` has one slot per marked point including infinity; their
    sum is 0 mod p (the slots of unbranched points are 0).
    """

    modulus: PrimeModulus
    points: MarkedPoints
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.modulus.p
        object.__setattr__(self, "exponents", tuple(int(e) % p for e in self.exponents))
        if len(self.exponents) != self.points.n + 1:
            raise ValueError("one exponent per marked point required")
        if sum(self.exponents) % p != 0:
            raise ValueError("cyclic-cover exponents must sum to 0 mod p")

    @property
    def p(self) -> int:
        return self.modulus.p


@dataclass(frozen=True)
class FiberProductModel:
    """Two cyclic p-covers sharing the x coordinate; their fiber product is S."""

    first: CurveModel
    second: CurveModel

    def __post_init__(self) -> None:
        if self.first.modulus != self.second.modulus or self.first.points != self.second.points:
            raise ValueError("fiber factors must share modulus and marked points")


def total_genus(k: int, n: int, m: int) -> int:
    """Genus of the Z_k^m action of signature (0; k^{n+1}).

    Valid for any k >= 2 (composite included) in the hyperbolic range;
    the value 1 + k^{m-1}((n-1)(k-1) - 2)/2 must be an integer and that
    is asserted.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if not 1 <= m <= n:
        raise ValueError(f"m must satisfy 1 <= m <= n, got m={m}, n={n}")
    if (n - 1) * (k - 1) <= 2:
        raise ValueError("non-hyperbolic parameters")
    numerator = k ** (m - 1) * ((n - 1) * (k - 1) - 2)
    if numerator % 2:
        raise ValueError(f"genus formula is non-integral at (k,n,m)=({k},{n},{m})")
    return 1 + numerator // 2


def subspace(modulus: PrimeModulus, vectors) -> FpMatrix:
    """Canonical (rref) basis matrix of the span of ``vectors`` in Z_p^m."""
    rows = tuple(tuple(v) for v in vectors)
    width = len(rows[0]) if rows else 0
    reduced, rank = rref(FpMatrix(modulus, rows, width))
    return FpMatrix(modulus, reduced.entries[:rank], width)


def line(modulus: PrimeModulus, vector) -> FpMatrix:
    sub = subspace(modulus, [vector])
    if sub.rows != 1:
        raise ValueError("a line needs one nonzero spanning vector")
    return sub


def lines_of_plane(modulus: PrimeModulus) -> list[FpMatrix]:
    """The p+1 one-dimensional subspaces of Z_p^2, sorted by generator."""
    p = modulus.p
    gens = [(0, 1)] + [(1, c) for c in range(p)]
    return [line(modulus, g) for g in sorted(gens)]


def hyperplanes(modulus: PrimeModulus, m: int) -> list[FpMatrix]:
    """All (m-1)-dimensional subspaces of Z_p^m, via normalized functionals."""
    from .fpalgebra import kernel_basis

    p = modulus.p
    out = []
    seen = set()
    for code in range(p**m):
        vec = []
        c = code
        for _ in range(m):
            c, d = divmod(c, p)
            vec.append(d)
        first = next((e for e in vec if e), None)
        if first != 1:  # normalized functionals only: leading coefficient 1
            continue
        functional = FpMatrix(modulus, (tuple(vec),), m)
        ker = kernel_basis(functional)
        if ker.entries not in seen:
            seen.add(ker.entries)
            out.append(ker)
    return out


def _membership_mask(key: SubgroupKey, sub: FpMatrix) -> list[bool]:
    reduced, _ = rref(sub)
    return [row_space_coordinates(reduced, img) is not None for img in key.images]


def quotient_genus(key: SubgroupKey, sub: FpMatrix) -> int:
    """Genus of S/L for a proper subgroup L <= Z_p^m, by Riemann-Hurwitz.

    The cover S/L -> sphere has deck order d = p^(m - dim L); over a
    marked point whose image lies outside L there are d/p points of
    multiplicity p, all other points are unramified.  The result must be
    a nonnegative integer; a violation signals an internal inconsistency.
    """
    params = key.params
    p, m = params.p, params.m
    if sub.cols != m or sub.modulus != params.modulus:
        raise ValueError("subspace does not live in the quotient Z_p^m")
    reduced, rank = rref(sub)
    if rank >= m:
        raise ValueError("L must be a proper subgroup of Z_p^m")
    branched = sum(1 for inside in _membership_mask(key, reduced) if not inside)
    deck = p ** (m - rank)
    genus = 1 - deck + Fraction(branched * deck * (p - 1), 2 * p)
    if genus.denominator != 1 or genus < 0:
        raise ArithmeticError(
            f"quotient genus came out as {genus} for key {key} and L of rank {rank}"
        )
    return int(genus)


def pgonal_model(key: SubgroupKey, sub: FpMatrix, points: MarkedPoints | None = None) -> CurveModel:
    """Exponent table of the cyclic p-cover S/L -> sphere, for a line L.

    Exponents are discrete logs of the marked-point images in the cyclic
    quotient (Z_p^2)/L, with the generator scaled so that the first
    nonzero exponent among the finite points equals 1.  The exponents sum
    to 0 mod p with the infinity slot included.
    """
    params = key.params
    if params.m != 2:
        raise ValueError("per-line models are defined for m = 2")
    p = params.p
    modulus = params.modulus
    reduced, rank = rref(sub)
    if rank != 1 or sub.cols != 2:
        raise ValueError("L must be a line in Z_p^2")
    a, b = reduced.entries[0]
    functional = (b % p, (-a) % p)  # kernel of the functional is exactly L
    exps = [
        (functional[0] * img[0] + functional[1] * img[1]) % p for img in key.images
    ]
    lead = next((e for e in exps[1:] if e), None)
    assert lead is not None  # rank 2 forces a branched finite point
    scale = modulus.inv(lead)
    exps = [(scale * e) % p for e in exps]
    pts = points if points is not None else MarkedPoints.standard(params.n)
    return CurveModel(modulus, pts, tuple(exps))


def fiber_product_model(key: SubgroupKey, points: MarkedPoints | None = None) -> FiberProductModel:
    """The two-equation algebraic model of S, read off the type presentation.

    Type 1 (independent first two images): y1^p = x prod (x-q_j)^{s_j},
    y2^p = prod (x-q_j)^{r_j} over j = 3..n+1, with the last exponents
    forced by s_{n+1} = -(1 + s_3 + ... + s_n) and r_{n+1} = -(1 + r_3 +
    ... + r_n) mod p.  Type 2 shifts the leading factor of y1 to
    q_{t+1} and gives y2 the l_j exponents over q_2..q_t.
    """
    params = key.params
    if params.m != 2:
        raise ValueError("fiber product models are defined for m = 2")
    p, n = params.p, params.n
    pres = classify_type(key)
    y1 = [0] * (n + 1)
    y2 = [0] * (n + 1)
    if isinstance(pres, Type1Presentation):
        y1[1] = 1
        for j, (rj, sj) in enumerate(zip(pres.r, pres.s), start=3):
            y1[j - 1] = sj
            y2[j - 1] = rj
        y1[n] = pres.forced_s
        y2[n] = pres.forced_r
        y2[0] = (-(sum(pres.r) + pres.forced_r)) % p  # infinity slot, always 1
    elif isinstance(pres, Type2Presentation):
        t = pres.t
        y1[t] = 1  # the factor (x - q_{t+1})
        for j, lj in enumerate(pres.l, start=2):
            y2[j - 1] = lj
        for j, (rj, sj) in enumerate(zip(pres.r, pres.s), start=t + 2):
            y1[j - 1] = sj
            y2[j - 1] = rj
        y1[n] = pres.forced_s
        y2[n] = pres.forced_r
        y2[0] = (-(sum(pres.l) + sum(pres.r) + pres.forced_r)) % p
    else:
        raise ValueError("fiber product models need the m = 2 presentation")
    pts = points if points is not None else MarkedPoints.standard(n)
    modulus = params.modulus
    return FiberProductModel(
        CurveModel(modulus, pts, tuple(y1)), CurveModel(modulus, pts, tuple(y2))
    )


@dataclass(frozen=True)
class JacobianLine:
    """One cyclic subgroup L of the deck group with its quotient data."""

    line: FpMatrix
    genus: int
    fixed_points: int
    model: CurveModel


@dataclass(frozen=True)
class JacobianReport:
    """Genus decomposition of the Jacobian of S over the p+1 lines of Z_p^2.

    The line genera sum to the genus of S and the fixed-point counts sum
    to (n+1) p; both identities are enforced at construction.
    """

    key: SubgroupKey
    lines: tuple[JacobianLine, ...]
    total: int

    def __post_init__(self) -> None:
        if self.genus_sum != self.total:
            raise ArithmeticError(
                f"line genera sum to {self.genus_sum}, expected the genus {self.total}"
            )
        params = self.key.params
        expected = (params.n + 1) * params.p
        if self.fixed_sum != expected:
            raise ArithmeticError(
                f"fixed-point counts sum to {self.fixed_sum}, expected {expected}"
            )

    @property
    def genus_sum(self) -> int:
        return sum(entry.genus for entry in self.lines)

    @property
    def fixed_sum(self) -> int:
        return sum(entry.fixed_points for entry in self.lines)

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(entry.genus for entry in self.lines)


def jacobian_decomposition(key: SubgroupKey, points: MarkedPoints | None = None) -> JacobianReport:
    """Per-line quotient genera, fixed-point counts and models at m = 2."""
    params = key.params
    if params.m != 2:
        raise ValueError("the line decomposition is defined for m = 2")
    p = params.p
    entries = []
    for ln in lines_of_plane(params.modulus):
        genus = quotient_genus(key, ln)
        inside = sum(1 for flag in _membership_mask(key, ln) if flag)
        fixed = p * inside
        model = pgonal_model(key, ln, points)
        entries.append(JacobianLine(ln, genus, fixed, model))
    total = total_genus(p, params.n, params.m)
    return JacobianReport(key, tuple(entries), total)


@dataclass(frozen=True)
class ConjectureProbe:
    """Hyperplane genus sum versus the genus of S; evidence, not proof."""

    genus_sum: int
    total: int

    @property
    def equal(self) -> bool:
        return self.genus_sum == self.total


def conjecture_probe(key: SubgroupKey) -> ConjectureProbe:
    """Sum quotient genera over all index-p subgroups L of Z_p^m.

    At m = 2 equality with the genus of S is a theorem and always holds;
    for m >= 3 the probe only reports both sides.
    """
    params = key.params
    if params.m < 2:
        raise ValueError("the probe needs m >= 2")
    total = total_genus(params.p, params.n, params.m)
    sum_genus = sum(quotient_genus(key, h) for h in hyperplanes(params.modulus, params.m))
    return ConjectureProbe(sum_genus, total)


# ---------------------------------------------------------------------------
# rendering


def _render_curve(model: CurveModel, name: str = "y") -> str:
    factors = []
    for label, e in zip(model.points.labels, model.exponents):
        if label == model.points.labels[0] or e == 0:
            continue  # infinity is implicit; unbranched points are omitted
        base = "x" if label == "0" else f"(x - {label})"
        factors.append(base if e == 1 else f"{base}^{e}")
    product = "*".join(factors) if factors else "1"
    return f"{name}^{model.p} = {product}"


def render_model(model: CurveModel | FiberProductModel, format: str = "text") -> str:
    """Deterministic text or JSON rendering of a curve or fiber product."""
    if format == "text":
        if isinstance(model, CurveModel):
            return _render_curve(model)
        return _render_curve(model.first, "y1") + " ; " + _render_curve(model.second, "y2")
    if format == "json":
        if isinstance(model, CurveModel):
            doc = {
                "p": model.p,
                "points": list(model.points.labels),
                "exponents": list(model.exponents),
            }
        else:
            doc = {
                "p": model.first.p,
                "points": list(model.first.points.labels),
                "y1": list(model.first.exponents),
                "y2": list(model.second.exponents),
            }
        return json.dumps(doc, ensure_ascii=False)
    raise ValueError(f"unknown render format {format!r}")
