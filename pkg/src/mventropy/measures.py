"""Invariant measures of multivalued maps and the strong invariance check.

A probability measure is invariant when the mass of the large preimage of
every measurable set dominates the mass of the set.  On finite carriers the
definition is decided two independent ways: brute force over all subsets, and
a max-flow transport feasibility test (mass moved from each point into its
value set); the two must agree everywhere.

The strong invariance condition upgrades the inequality to equality and adds
an intersection-compatibility equality; it is checked exactly over a declared
finite family of sets that must be closed under intersection.  The check also
evaluates the equivalent reformulation with inequalities reversed, using the
two always-valid dominations (invariance, and the containment of the preimage
of an intersection in the intersection of preimages).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .carriers import FiniteRelation, PLMultiMap
from .intervals import ONE, ZERO, IntervalSet, as_fraction
from .partitions import FiniteMeasure, IntervalMeasure
from . import solvers


class FamilyNotClosedError(ValueError):
    """The declared set family is not closed under intersection."""


# ---------------------------------------------------------------------------
# invariance on finite carriers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvarianceResult:
    ok: bool
    method: str
    witness: Optional[int] = None  # subset mask violating the inequality

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "invariant": self.ok,
            "method": self.method,
            "witness": None if self.witness is None else _mask_literal(self.witness),
        }


def _mask_literal(mask: int) -> str:
    return "{" + ",".join(str(i) for i in _bits(mask)) + "}"


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _preimage_table(phi: FiniteRelation) -> list[int]:
    n = phi.space.n
    table = [0] * (1 << n)
    for a in range(1, 1 << n):
        low = a & -a
        rest = a ^ low
        if rest:
            table[a] = table[low] | table[rest]
        else:
            x_bit = low
            out = 0
            for i, m in enumerate(phi.masks):
                if m & x_bit:
                    out |= 1 << i
            table[a] = out
    return table


def _mass_table(weights: Sequence[int], n: int) -> list[int]:
    table = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        table[mask] = table[mask ^ low] + weights[low.bit_length() - 1]
    return table


def verify_invariance_bruteforce(
    mu: FiniteMeasure, phi: FiniteRelation
) -> InvarianceResult:
    """Check the preimage-domination inequality over all 2^n subsets; the
    witness is the first violating subset in numeric order."""
    n = phi.space.n
    if n > 20:
        raise ValueError("brute force capped at 20 points")
    w, _ = mu.scaled()
    pre = _preimage_table(phi)
    mass = _mass_table(w, n)
    for a in range(1, 1 << n):
        if mass[pre[a]] < mass[a]:
            return InvarianceResult(ok=False, method="bruteforce", witness=a)
    return InvarianceResult(ok=True, method="bruteforce")


def verify_invariance_flow(
    mu: FiniteMeasure, phi: FiniteRelation
) -> InvarianceResult:
    """Transport feasibility: mass w(x) leaves x along arcs into phi(x) and
    must reassemble the same distribution (max-flow decision, no subset scan)."""
    w, _ = mu.scaled()
    feasible = solvers.transport_feasible(w, phi.masks, w)
    return InvarianceResult(ok=feasible, method="flow")


def find_invariant_measure(phi: FiniteRelation) -> FiniteMeasure:
    """Stationary distribution of the uniform-branch kernel on the value
    sets: the equal-weight mixture of the stationary distributions of all
    terminal strongly connected classes.  Always invariant."""
    pi = solvers.stationary_mixture(phi.masks)
    return FiniteMeasure(pi)


def invariance_report(
    mu: FiniteMeasure, phi: FiniteRelation, method: str = "flow"
) -> dict:
    if method == "flow":
        res = verify_invariance_flow(mu, phi)
    elif method == "bruteforce":
        res = verify_invariance_bruteforce(mu, phi)
    else:
        raise ValueError(f"unknown method {method!r}")
    return res.to_json()


# ---------------------------------------------------------------------------
# strong invariance (equality + intersection compatibility)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StrongInvarianceReport:
    equality_ok: bool
    le_ok: bool
    invariance_ok: bool
    containment_ok: bool
    equivalence_ok: bool
    witness: Optional[tuple] = None
    family_size: int = 0
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.equality_ok

    def to_json(self) -> dict:
        return {
            "strong_invariance": self.equality_ok,
            "le_form": self.le_ok,
            "invariant_premise": self.invariance_ok,
            "containment_premise": self.containment_ok,
            "forms_equivalent": self.equivalence_ok,
            "witness": None if self.witness is None else [str(w) for w in self.witness],
            "family_size": self.family_size,
            "pairs_checked": self.pairs_checked,
        }


def strong_invariance_report(
    mu, phi, family: Optional[Sequence] = None
) -> StrongInvarianceReport:
    """Exact sweep of both strong-invariance equalities and their reversed
    (<=) forms over family x family.  One pass computes every verdict."""
    if isinstance(phi, FiniteRelation):
        return _strong_invariance_finite(mu, phi, family)
    return _strong_invariance_interval(mu, phi, family)


def verify_strong_invariance(
    mu, phi, family: Optional[Sequence] = None
) -> StrongInvarianceReport:
    return strong_invariance_report(mu, phi, family)


def equivalent_forms_check(
    mu, phi, family: Optional[Sequence] = None
) -> StrongInvarianceReport:
    """Equivalence of the equality form and the <= form.  The reduction rests
    on invariance; a non-invariant measure is reported distinctly via
    ``invariance_ok=False`` (and ``equivalence_ok`` then only records the raw
    pointwise comparison)."""
    return strong_invariance_report(mu, phi, family)


def _strong_invariance_finite(
    mu: FiniteMeasure, phi: FiniteRelation, family: Optional[Sequence[int]]
) -> StrongInvarianceReport:
    n = phi.space.n
    if family is None:
        if n > 12:
            raise ValueError("default all-subsets family capped at 12 points")
        family = list(range(1, 1 << n))
    else:
        family = list(family)
        universe = (1 << n) - 1
        for a in family:
            if not isinstance(a, int) or a == 0 or a & ~universe:
                raise ValueError(f"bad family member {a!r}")
    fam_set = set(family)
    w, _ = mu.scaled()
    pre = _preimage_table(phi)
    mass = _mass_table(w, n)

    equality_ok = le_ok = invariance_ok = containment_ok = equivalence_ok = True
    witness = None

    for a in family:
        ma, mpa = mass[a], mass[pre[a]]
        if mpa < ma:
            invariance_ok = False
        eq = mpa == ma
        le = mpa <= ma
        if not eq:
            equality_ok = False
            if witness is None:
                witness = (_mask_literal(a),)
        if not le:
            le_ok = False
        if eq != (le and mpa >= ma):
            equivalence_ok = False

    pairs = 0
    for i, a in enumerate(family):
        pre_a = pre[a]
        for b in family[i:]:
            pairs += 1
            c = a & b
            if c and c not in fam_set:
                raise FamilyNotClosedError(
                    f"intersection {_mask_literal(c)} missing from the family"
                )
            m_int = mass[pre_a & pre[b]]
            m_c = mass[pre[c]] if c else 0
            if m_int < m_c:
                containment_ok = False
            eq = m_int == m_c
            le = m_int <= m_c
            if not eq:
                equality_ok = False
                if witness is None:
                    witness = (_mask_literal(a), _mask_literal(b))
            if not le:
                le_ok = False
            if eq != (le and m_int >= m_c):
                equivalence_ok = False

    return StrongInvarianceReport(
        equality_ok=equality_ok,
        le_ok=le_ok,
        invariance_ok=invariance_ok,
        containment_ok=containment_ok,
        equivalence_ok=equivalence_ok,
        witness=witness,
        family_size=len(family),
        pairs_checked=pairs,
    )


# -- interval carrier --------------------------------------------------------


def interval_algebra_family(grid_den: int) -> list[IntervalSet]:
    """All single intervals (every flag combination) plus all singletons with
    endpoints on the grid k/grid_den; closed under nonempty intersection."""
    pts = [Fraction(k, grid_den) for k in range(grid_den + 1)]
    fam: list[IntervalSet] = []
    for i, a in enumerate(pts):
        fam.append(IntervalSet.point(a))
        for b in pts[i + 1 :]:
            for lc in (True, False):
                for hc in (True, False):
                    fam.append(IntervalSet.interval(a, b, lc, hc))
    return fam


def _scaled_keys(s: IntervalSet, denom: int) -> tuple:
    """Pieces as integer boundary keys ((lo*denom, lo_eps), (hi*denom, hi_eps));
    requires every endpoint denominator to divide denom."""
    out = []
    for lo, lc, hi, hc in s.raw_pieces:
        ln = lo * denom
        hn = hi * denom
        if ln.denominator != 1 or hn.denominator != 1:
            raise ValueError("denominator does not clear the endpoints")
        out.append(((int(ln), 0 if lc else 1), (int(hn), 0 if hc else -1)))
    return tuple(out)


def _keys_intersect(a: tuple, b: tuple) -> tuple:
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = a[i][0] if a[i][0] >= b[j][0] else b[j][0]
        hi = a[i][1] if a[i][1] <= b[j][1] else b[j][1]
        if lo <= hi:
            out.append((lo, hi))
        if a[i][1] <= b[j][1]:
            i += 1
        else:
            j += 1
    return tuple(out)


def _keys_length(a: tuple) -> int:
    return sum(hi[0] - lo[0] for lo, hi in a)


def _strong_invariance_interval(
    mu: IntervalMeasure, phi: PLMultiMap, family: Optional[Sequence[IntervalSet]]
) -> StrongInvarianceReport:
    if family is None:
        raise ValueError("the interval carrier needs an explicit set family")
    family = list(family)

    fast = mu.is_lebesgue
    if fast:
        denom = 1
        for s in family:
            for v in s.boundary_values():
                denom = denom * v.denominator // math.gcd(denom, v.denominator)
        pres = [phi.large_preimage(s) for s in family]
        for p in pres:
            for v in p.boundary_values():
                denom = denom * v.denominator // math.gcd(denom, v.denominator)
        keys = [_scaled_keys(s, denom) for s in family]
        pre_keys = [_scaled_keys(p, denom) for p in pres]
        masses = [_keys_length(k) for k in keys]
        pre_masses = [_keys_length(k) for k in pre_keys]
        index = {k: i for i, k in enumerate(keys)}
        intersect = _keys_intersect
        length = _keys_length
    else:
        pres = [phi.large_preimage(s) for s in family]
        keys = family
        pre_keys = pres
        masses = [mu.mass(s) for s in family]
        pre_masses = [mu.mass(p) for p in pres]
        index = {k: i for i, k in enumerate(family)}

        def intersect(a, b):
            return a.intersect(b)

        def length(s):
            return mu.mass(s)

    equality_ok = le_ok = invariance_ok = containment_ok = equivalence_ok = True
    witness = None

    for i, s in enumerate(family):
        ma, mpa = masses[i], pre_masses[i]
        if mpa < ma:
            invariance_ok = False
        eq = mpa == ma
        le = mpa <= ma
        if not eq:
            equality_ok = False
            if witness is None:
                witness = (family[i],)
        if not le:
            le_ok = False
        if eq != (le and mpa >= ma):
            equivalence_ok = False

    empty_key = () if fast else IntervalSet.empty()
    pairs = 0
    m = len(family)
    for i in range(m):
        ki = keys[i]
        pi_keys = pre_keys[i]
        for j in range(i, m):
            pairs += 1
            c = intersect(ki, keys[j])
            if c == empty_key:
                m_c = 0
            else:
                ci = index.get(c)
                if ci is None:
                    raise FamilyNotClosedError(
                        "family is not closed under intersection"
                    )
                m_c = pre_masses[ci]
            m_int = length(intersect(pi_keys, pre_keys[j]))
            if m_int < m_c:
                containment_ok = False
            eq = m_int == m_c
            le = m_int <= m_c
            if not eq:
                equality_ok = False
                if witness is None:
                    witness = (family[i], family[j])
            if not le:
                le_ok = False
            if eq != (le and m_int >= m_c):
                equivalence_ok = False

    return StrongInvarianceReport(
        equality_ok=equality_ok,
        le_ok=le_ok,
        invariance_ok=invariance_ok,
        containment_ok=containment_ok,
        equivalence_ok=equivalence_ok,
        witness=witness,
        family_size=m,
        pairs_checked=pairs,
    )
