"""Orbit and invariance computations on the subgroup parameter space.

The relabeling group S_{n+1} acts on admissible subgroups by
``(sigma, K) -> Phi_sigma(K)``; on canonical keys this is
``rref(theta . M_sigma^{-1})``.  Orbits under the full group count
topologically inequivalent actions; orbits of an invariant set under the
normalizer of a permutation subgroup Q count inequivalent triples (the
action together with its extra automorphisms).

Two counting routes are kept independent: explicit orbit closure and the
Burnside average of fixed-point counts over the whole group.  Both are
exposed; they must agree.

Hot paths note.  Keys fixed by a relabeling are detected without
re-echelonizing: theta' = theta M^{-1} has the same row space as theta
iff theta' equals A theta for A = theta' restricted to theta's pivot
columns.  That check vectorizes over the whole enumeration table, which
is what makes exhaustive n = 5 runs cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .enumeration import (
    ActionParams,
    ScaleCapError,
    SubgroupKey,
    key_from_theta,
    theta_table,
    transform_key,
)
from .fpalgebra import _rref_in_place
from .hgroup import (
    PermGroup,
    Permutation,
    close_group,
    normalizer_in_symmetric,
    perm_to_matrix,
)

# Exhaustive triples runs are capped near the p = 17, n = 5 scale; beyond
# that the predicted families are the intended route.
TRIPLES_CANDIDATE_CAP = 250_000_000


class ActionOutsideSetError(ValueError):
    """The group action maps a key outside the supplied key set."""


def act(sigma: Permutation, key: SubgroupKey) -> SubgroupKey:
    """The key of Phi_sigma(K); always admissible again."""
    return transform_key(key, sigma)


@lru_cache(maxsize=256)
def _inverse_action_entries(sigma: Permutation, params: ActionParams) -> tuple[tuple[int, ...], ...]:
    return perm_to_matrix(sigma.inverse(), params.modulus, params.n).matrix.entries


def _act_entries(
    entries: tuple[tuple[int, ...], ...], minv: tuple[tuple[int, ...], ...], params: ActionParams
) -> tuple[tuple[int, ...], ...]:
    """Raw-tuple action: rref(entries . minv).  Internal fast path."""
    p = params.p
    n = params.n
    cols = [tuple(minv[i][j] for i in range(n)) for j in range(n)]
    rows = [
        [sum(x * y for x, y in zip(row, col)) % p for col in cols]
        for row in entries
    ]
    _rref_in_place(rows, n, p, params.modulus.inverse_table)
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class OrbitReport:
    """A partition of a key set into orbits, with canonical representatives."""

    params: ActionParams
    group: PermGroup
    orbits: tuple[tuple[SubgroupKey, tuple[SubgroupKey, ...]], ...]

    @property
    def count(self) -> int:
        return len(self.orbits)

    @property
    def representatives(self) -> tuple[SubgroupKey, ...]:
        return tuple(rep for rep, _ in self.orbits)

    def orbit_of(self, key: SubgroupKey) -> int:
        """Index of the orbit containing ``key``; raises KeyError if absent."""
        for i, (_, members) in enumerate(self.orbits):
            if key in members:
                return i
        raise KeyError(key)


def _common_params(keys) -> ActionParams:
    params = {k.params for k in keys}
    if len(params) != 1:
        raise ValueError("keys must share a single parameter set")
    return params.pop()


def orbit_partition(keys, group: PermGroup) -> OrbitReport:
    """Partition ``keys`` into orbits under the generators of ``group``.

    Deterministic: orbit representatives are the lexicographically least
    members, orbits are sorted by representative.  Raises
    ActionOutsideSetError if a generator maps a key out of the set.
    """
    keys = sorted(set(keys))
    if not keys:
        raise ValueError("cannot partition an empty key set without parameters")
    params = _common_params(keys)
    if group.degree != params.n + 1:
        raise ValueError(f"group degree {group.degree} != n+1 = {params.n + 1}")
    minvs = [_inverse_action_entries(g, params) for g in group.generators]
    universe = {k.theta.entries: k for k in keys}
    unvisited = dict(universe)
    orbits = []
    for seed_entries in [k.theta.entries for k in keys]:
        if seed_entries not in unvisited:
            continue
        frontier = [seed_entries]
        members = {seed_entries}
        del unvisited[seed_entries]
        while frontier:
            nxt = []
            for entries in frontier:
                for minv in minvs:
                    moved = _act_entries(entries, minv, params)
                    if moved in members:
                        continue
                    if moved not in universe:
                        raise ActionOutsideSetError(
                            "the action maps a key outside the supplied set; "
                            "the set is not closed under the group"
                        )
                    members.add(moved)
                    del unvisited[moved]
                    nxt.append(moved)
            frontier = nxt
        orbit_keys = tuple(sorted(universe[e] for e in members))
        orbits.append((orbit_keys[0], orbit_keys))
    orbits.sort(key=lambda pair: pair[0])
    return OrbitReport(params, group, tuple(orbits))


def count_orbits_burnside(keys, group: PermGroup) -> int:
    """(1/|G|) sum over G of #fixed keys; must equal the partition count."""
    keys = sorted(set(keys))
    if not keys:
        return 0
    params = _common_params(keys)
    if group.degree != params.n + 1:
        raise ValueError(f"group degree {group.degree} != n+1 = {params.n + 1}")
    table = _keys_to_array(keys, params)
    total = 0
    for sigma in group.elements:
        total += int(_fixed_mask(table, sigma, params).sum())
    if total % group.order != 0:
        raise ArithmeticError("Burnside sum is not divisible by the group order")
    return total // group.order


def invariant_set(keys, group: PermGroup) -> list[SubgroupKey]:
    """Keys fixed by every generator of ``group`` (hence by all of it)."""
    keys = sorted(set(keys))
    if not keys:
        return []
    params = _common_params(keys)
    minvs = [_inverse_action_entries(g, params) for g in group.generators]
    out = []
    for key in keys:
        entries = key.theta.entries
        if all(_act_entries(entries, minv, params) == entries for minv in minvs):
            out.append(key)
    return out


# ---------------------------------------------------------------------------
# vectorized internals over enumeration tables


def _keys_to_array(keys, params: ActionParams) -> np.ndarray:
    arr = np.array([k.theta.entries for k in keys], dtype=np.int64)
    return arr.reshape(len(keys), params.m, params.n)


def _action_matrix_int(sigma: Permutation, params: ActionParams) -> np.ndarray:
    return np.array(_inverse_action_entries(sigma, params), dtype=np.int64)


def _fixed_mask(table: np.ndarray, sigma: Permutation, params: ActionParams) -> np.ndarray:
    """Boolean mask of keys fixed by sigma, no echelonization needed."""
    p = params.p
    minv = _action_matrix_int(sigma, params)
    n_keys = len(table)
    mask = np.empty(n_keys, dtype=bool)
    chunk = 1 << 20
    for start in range(0, n_keys, chunk):
        block = np.asarray(table[start : start + chunk], dtype=np.int64)
        moved = np.matmul(block, minv) % p
        pivots = (block != 0).argmax(axis=2)  # first nonzero column per row (rref)
        m = params.m
        idx = np.broadcast_to(pivots[:, None, :], (len(block), m, m))
        coeff = np.take_along_axis(moved, idx, axis=2)
        rebuilt = np.matmul(coeff, block) % p
        mask[start : start + len(block)] = (rebuilt == moved).all(axis=(1, 2))
    return mask


def _invariant_mask(table: np.ndarray, group: PermGroup, params: ActionParams) -> np.ndarray:
    mask = np.ones(len(table), dtype=bool)
    for g in group.generators:
        mask &= _fixed_mask(table, g, params)
    return mask


def burnside_count_full(params: ActionParams, group: PermGroup) -> int:
    """Burnside orbit count over the whole parameter space (array path)."""
    table = theta_table(params)
    total = sum(int(_fixed_mask(table, sigma, params).sum()) for sigma in group.elements)
    if total % group.order != 0:
        raise ArithmeticError("Burnside sum is not divisible by the group order")
    return total // group.order


def invariant_keys_full(
    params: ActionParams, group: PermGroup, max_candidates: int = TRIPLES_CANDIDATE_CAP
) -> list[SubgroupKey]:
    """All keys in the parameter space fixed by ``group`` (array path)."""
    table = theta_table(params, max_candidates)
    mask = _invariant_mask(table, group, params)
    from .enumeration import _key_from_row

    return [_key_from_row(params, row) for row in table[mask]]


# ---------------------------------------------------------------------------
# triples


@dataclass(frozen=True)
class TriplesReport:
    """Classification of triples: invariant set, normalizer, orbit report."""

    params: ActionParams
    group: PermGroup
    normalizer: PermGroup
    mode: str
    invariant: tuple[SubgroupKey, ...]
    report: OrbitReport

    @property
    def count(self) -> int:
        return self.report.count


def classify_triples(
    params: ActionParams,
    group: PermGroup,
    mode: str = "exhaustive",
    max_candidates: int = TRIPLES_CANDIDATE_CAP,
) -> TriplesReport:
    """Count topological classes of actions admitting the symmetry ``group``.

    ``exhaustive`` enumerates the whole parameter space and filters the
    invariant subgroups; ``predicted`` instantiates the matching
    closed-form family (and re-verifies every member's invariance).  The
    classes are the orbits of the invariant set under the normalizer of
    ``group`` inside S_{n+1}.
    """
    if group.degree != params.n + 1:
        raise ValueError(f"group degree {group.degree} != n+1 = {params.n + 1}")
    normalizer = normalizer_in_symmetric(group)
    if mode == "exhaustive":
        invariant = invariant_keys_full(params, group, max_candidates)
    elif mode == "predicted":
        from .predictions import family_for_group, predicted_invariant_set

        case = family_for_group(params.n, group)
        invariant = predicted_invariant_set(case, params.p)
        minvs = [_inverse_action_entries(g, params) for g in group.generators]
        for key in invariant:
            entries = key.theta.entries
            if any(_act_entries(entries, minv, params) != entries for minv in minvs):
                raise AssertionError(f"predicted member {key} is not invariant")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if invariant:
        report = orbit_partition(invariant, normalizer)
    else:
        report = OrbitReport(params, normalizer, ())
    return TriplesReport(params, group, normalizer, mode, tuple(sorted(invariant)), report)
