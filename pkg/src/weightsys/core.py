"""Weight data of circle actions with isolated fixed points.

A circle acting on a compact 2n-manifold fixes, in the cases treated here,
a finite set of points.  The action linearizes at each fixed point p into
n nonzero integer *weights*; the multiset of weights at every fixed point
is the combinatorial shadow of the action and is all this package works
with.  No geometry is stored: a system is literally "n, plus one weight
multiset per labeled point".

Conventions fixed once, here:

* lambda_count returns the plain number of negative weights at a point.
  (The Morse-theoretic index of the moment map is twice that; every
  relation in the other modules is stated in un-doubled form.)
* Canonical form: weights sorted ascending inside a point, points sorted
  by (lambda_count, weight sequence), and a whole system is identified
  with its image under reversing the circle direction (global negation)
  by keeping the lexicographically smaller of the two.  Canonical keys
  are what the search layer dedups on.

Weights are ordinary Python ints, so arbitrary precision comes for free;
products of weights grow fast with n and must never wrap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "WeightMultiset",
    "FixedPoint",
    "FixedPointSystem",
    "CanonicalKey",
    "lambda_count",
    "largest_weight",
    "reverse_action",
    "canonicalize",
    "effectivity_gcd",
]


@dataclass(frozen=True, order=True)
class WeightMultiset:
    """Multiset of nonzero integers, stored as an ascending tuple."""

    weights: tuple[int, ...]

    def __post_init__(self):
        ws = tuple(sorted(int(w) for w in self.weights))
        if 0 in ws:
            raise ValueError("weight 0 is not allowed")
        object.__setattr__(self, "weights", ws)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __contains__(self, value) -> bool:
        return value in self.weights

    def count(self, value: int) -> int:
        """Multiplicity of one value."""
        return self.weights.count(value)

    def negate(self) -> WeightMultiset:
        return WeightMultiset(tuple(-w for w in self.weights))


@dataclass(frozen=True)
class FixedPoint:
    """One labeled fixed point and its weight multiset."""

    label: str
    weights: WeightMultiset


@dataclass(frozen=True)
class FixedPointSystem:
    """Half-dimension n plus the ordered list of fixed points.

    Every point must carry exactly n weights and labels must be distinct.
    Point order is whatever the caller chose; canonicalize() is the one
    place that imposes an order.
    """

    n: int
    points: tuple[FixedPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if self.n < 1:
            raise ValueError("half-dimension n must be >= 1")
        if not self.points:
            raise ValueError("a system needs at least one fixed point")
        labels = [p.label for p in self.points]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate point labels: %r" % (labels,))
        for p in self.points:
            if len(p.weights) != self.n:
                raise ValueError(
                    "point %r has %d weights, expected n=%d"
                    % (p.label, len(p.weights), self.n)
                )

    @classmethod
    def from_weights(cls, n, weight_lists, labels=None) -> FixedPointSystem:
        """Build a system from bare weight iterables, labeling p, q, r, ..."""
        weight_lists = [tuple(ws) for ws in weight_lists]
        if labels is None:
            labels = default_labels(len(weight_lists))
        pts = tuple(
            FixedPoint(lab, WeightMultiset(ws))
            for lab, ws in zip(labels, weight_lists)
        )
        return cls(n, pts)

    def all_weights(self):
        """Every weight of every point, one flat iteration."""
        for p in self.points:
            yield from p.weights

    def point_by_label(self, label: str) -> FixedPoint:
        for p in self.points:
            if p.label == label:
                return p
        raise KeyError(label)


def default_labels(count: int) -> tuple[str, ...]:
    if count <= 3:
        return ("p", "q", "r")[:count]
    return tuple("p%d" % i for i in range(1, count + 1))


@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Normal form of a system: reversal-reduced, relabel-free.

    points holds the weight tuples sorted by (negative count, sequence);
    of the system and its reversal, the lexicographically smaller tuple
    of tuples is kept.  Two systems get equal keys exactly when they
    differ by point relabeling/permutation and/or reversing the action.
    """

    n: int
    points: tuple[tuple[int, ...], ...]

    def system(self) -> FixedPointSystem:
        """The representative FixedPointSystem, labeled p, q, r, ..."""
        return FixedPointSystem.from_weights(self.n, self.points)


def lambda_count(ms: WeightMultiset) -> int:
    """Number of negative weights, with multiplicity (un-doubled index)."""
    return sum(1 for w in ms if w < 0)


def largest_weight(system: FixedPointSystem) -> int:
    """Maximum weight value over all points; requires one positive weight."""
    top = max(system.all_weights())
    if top <= 0:
        raise ValueError("system has no positive weight")
    return top


def reverse_action(system: FixedPointSystem) -> FixedPointSystem:
    """Negate every weight (run the circle the other way); labels stay."""
    return FixedPointSystem(
        system.n,
        tuple(FixedPoint(p.label, p.weights.negate()) for p in system.points),
    )


def _sorted_point_tuples(system: FixedPointSystem) -> tuple[tuple[int, ...], ...]:
    rows = [p.weights.weights for p in system.points]
    rows.sort(key=lambda ws: (sum(1 for w in ws if w < 0), ws))
    return tuple(rows)


def canonicalize(system) -> CanonicalKey:
    """Canonical key of a system (idempotent; accepts a key unchanged)."""
    if isinstance(system, CanonicalKey):
        return system
    forward = _sorted_point_tuples(system)
    backward = _sorted_point_tuples(reverse_action(system))
    return CanonicalKey(system.n, min(forward, backward))


def effectivity_gcd(system: FixedPointSystem) -> int:
    """gcd of |weights| over the whole system; 1 iff the action is effective.

    Dividing every weight by this gcd models quotienting out the subgroup
    that acts trivially.
    """
    values = [abs(w) for w in system.all_weights()]
    if not values:
        raise ValueError("no weight data")
    return math.gcd(*values)
