"""Amenability certificates: Reiter ratios, Folner search, exact obstructions.

The Reiter ratio of a nonnegative summable function f is

    sum over s in S u S^-1 of ||s.f - f||_1 / ||f||_1,

an exact rational; indicator functions of finite sets recover the usual
symmetric-difference Folner quotient. A certificate stores the witness set
together with the per-generator differences so it can be revalidated
independently. The non-amenable side is backed by `isoperimetric_min`, a
brute-force enumeration of every nonempty subset of a ball, and the
finite-group side by an exact rational rank computation showing that the
all-ones vector never lies in the span of translation differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .functions import FinSuppFn, frac_str
from .groups import Element, FiniteGroup, FreeAbelianGroup, GroupSpec


def indicator(group: GroupSpec, members: Iterable[Element]) -> FinSuppFn:
    return FinSuppFn(group, ((g, 1) for g in members))


def generator_differences(group: GroupSpec, f: FinSuppFn) -> dict[str, Fraction]:
    """||s.f - f||_1 for every generator and inverse, keyed by letter label."""
    return {label: (f.translate(s) - f).l1_norm() for label, s in group.letters()}


def reiter_ratio(group: GroupSpec, f: FinSuppFn) -> Fraction:
    """Normalized generator-difference ratio of a nonnegative, nonzero f."""
    if f.group != group:
        raise ValueError("function is defined over a different group")
    if f.is_zero:
        raise ValueError("the Reiter ratio of the zero function is undefined")
    if any(c < 0 for _, c in f.items()):
        raise ValueError("the Reiter ratio requires a nonnegative function")
    total = sum(generator_differences(group, f).values(), Fraction(0))
    return total / f.l1_norm()


@dataclass
class FolnerCertificate:
    """A finite set whose generator translates move at most `ratio` of it."""

    group: GroupSpec
    strategy: str
    parameter: int
    members: tuple[Element, ...]
    differences: dict[str, int]
    ratio: Fraction

    def to_json(self) -> dict:
        return {
            "type": "folner-certificate",
            "group": self.group.to_dict(),
            "group-hash": self.group.spec_hash(),
            "strategy": self.strategy,
            "parameter": self.parameter,
            "set-size": len(self.members),
            "set": [self.group.elem_to_json(g) for g in self.members],
            "generator-differences": {k: v for k, v in self.differences.items()},
            "ratio": frac_str(self.ratio),
        }


@dataclass
class FolnerFailure:
    """Exhausted search: the best ratio seen at each parameter value."""

    group: GroupSpec
    strategy: str
    eps: Fraction
    max_parameter: int
    attempts: list[dict] = field(default_factory=list)

    @property
    def best_ratio(self) -> Fraction:
        return min(a["_ratio"] for a in self.attempts)

    def to_json(self) -> dict:
        return {
            "type": "folner-failure",
            "group": self.group.to_dict(),
            "group-hash": self.group.spec_hash(),
            "strategy": self.strategy,
            "eps": frac_str(self.eps),
            "max-parameter": self.max_parameter,
            "attempts": [
                {"parameter": a["parameter"], "set-size": a["set-size"], "ratio": frac_str(a["_ratio"])}
                for a in self.attempts
            ],
            "best-ratio": frac_str(self.best_ratio),
        }


def folner_certificate_from_set(
    group: GroupSpec, members: Sequence[Element], strategy: str = "explicit", parameter: int = 0
) -> FolnerCertificate:
    """Build (or revalidate) a certificate directly from a candidate set."""
    members = tuple(dict.fromkeys(group.check(g) for g in members))
    if not members:
        raise ValueError("a Folner certificate needs a nonempty set")
    f = indicator(group, members)
    diffs = generator_differences(group, f)
    ratio = sum(diffs.values(), Fraction(0)) / len(members)
    return FolnerCertificate(
        group=group,
        strategy=strategy,
        parameter=parameter,
        members=tuple(sorted(members, key=group.sort_key)),
        differences={k: int(v) for k, v in diffs.items()},
        ratio=ratio,
    )


def _box(group: FreeAbelianGroup, side: int) -> list[tuple[int, ...]]:
    coords = [()]
    for _ in range(group.rank):
        coords = [c + (x,) for c in coords for x in range(side)]
    return coords


def folner_search(
    group: GroupSpec, eps: Fraction, strategy: str = "balls", max_radius: int = 10
) -> FolnerCertificate | FolnerFailure:
    """Scan balls (any family) or boxes (free-abelian) for ratio <= eps.

    Failure is a value, not an error: the report lists the ratio reached at
    every parameter tried, so the caller sees how the search degenerated.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if strategy not in ("balls", "boxes"):
        raise ValueError(f"unknown search strategy {strategy!r}")
    if strategy == "boxes" and not isinstance(group, FreeAbelianGroup):
        raise ValueError("the box strategy only applies to free-abelian groups")
    if max_radius < (1 if strategy == "boxes" else 0):
        raise ValueError("max_radius leaves no candidate sets to try")

    failure = FolnerFailure(group=group, strategy=strategy, eps=eps, max_parameter=max_radius)
    if strategy == "balls":
        candidates = ((r, group.ball(r)) for r in range(max_radius + 1))
    else:
        candidates = ((n, _box(group, n)) for n in range(1, max_radius + 1))
    for parameter, members in candidates:
        cert = folner_certificate_from_set(group, members, strategy=strategy, parameter=parameter)
        if cert.ratio <= eps:
            return cert
        failure.attempts.append(
            {"parameter": parameter, "set-size": len(cert.members), "_ratio": cert.ratio}
        )
    return failure


def isoperimetric_min(group: GroupSpec, radius: int) -> Fraction:
    """Minimum Reiter ratio over every nonempty subset of ball(radius).

    Brute force over 2^|ball| - 1 subsets with bitmask tables; the guard
    keeps the enumeration at desk scale.
    """
    ratio, _ = isoperimetric_argmin(group, radius)
    return ratio


def isoperimetric_argmin(group: GroupSpec, radius: int) -> tuple[Fraction, tuple[Element, ...]]:
    ball = group.ball(radius)
    n = len(ball)
    if n > 18:
        raise ValueError(f"ball has {n} elements; subset enumeration is capped at 18")
    index = {g: i for i, g in enumerate(ball)}
    letters = [s for _, s in group.letters()]
    # images[s][i] = bit of s * ball[i], or 0 when the image leaves the ball
    # (an element outside the ball can never lie in a candidate subset).
    images = []
    for s in letters:
        bits = []
        for g in ball:
            j = index.get(group.mul(s, g))
            bits.append(0 if j is None else 1 << j)
        images.append(bits)
    # shifted[s][mask] = bitmask of the in-ball part of s * mask, built by
    # peeling the lowest bit so each entry costs O(1).
    shifted = []
    for bits in images:
        table = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            table[mask] = table[mask ^ low] | bits[low.bit_length() - 1]
        shifted.append(table)
    best_num, best_den, best_mask = None, None, 0
    n_letters = len(letters)
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        lost = 0
        for table in shifted:
            lost += size - bin(table[mask] & mask).count("1")
        num = 2 * lost  # sum over letters of |sF symmetric-difference F|
        if best_num is None or num * best_den < best_num * size:
            best_num, best_den, best_mask = num, size, mask
    members = tuple(ball[i] for i in range(n) if (best_mask >> i) & 1)
    return Fraction(best_num, best_den), members


@dataclass
class FiniteH0Report:
    """Exact check that the all-ones vector avoids the translation-difference span."""

    group: GroupSpec
    order: int
    span_dimension: int
    one_in_span: bool
    residual_l1: Fraction

    def to_json(self) -> dict:
        return {
            "type": "finite-h0-report",
            "group-hash": self.group.spec_hash(),
            "order": self.order,
            "span-dimension": self.span_dimension,
            "one-in-span": self.one_in_span,
            "residual-l1": frac_str(self.residual_l1),
        }


def finite_h0(group: FiniteGroup) -> FiniteH0Report:
    """Membership of the all-ones vector in span{g.v - v} by exact elimination.

    Rows g.delta_h - delta_h are inserted into a reduced pivot basis one at
    a time; the rank caps at n - 1 because every row has coefficient sum
    zero, so insertion stops early once that rank is reached.
    """
    if not isinstance(group, FiniteGroup):
        raise ValueError("the exact span check requires a finite group")
    n = group.order
    pivots: dict[int, list[Fraction]] = {}

    def reduce(vec: list[Fraction]) -> list[Fraction]:
        for col, row in pivots.items():
            if vec[col]:
                c = vec[col]
                vec = [x - c * y for x, y in zip(vec, row)]
        return vec

    for g in range(n):
        if len(pivots) == n - 1:
            break
        for h in range(n):
            gh = group.mul(g, h)
            if gh == h:
                continue
            vec = [Fraction(0)] * n
            vec[gh] += 1
            vec[h] -= 1
            vec = reduce(vec)
            lead = next((i for i, x in enumerate(vec) if x), None)
            if lead is not None:
                inv = vec[lead]
                pivots[lead] = [x / inv for x in vec]
                if len(pivots) == n - 1:
                    break

    residual = reduce([Fraction(1)] * n)
    residual_l1 = sum((abs(x) for x in residual), Fraction(0))
    return FiniteH0Report(
        group=group,
        order=n,
        span_dimension=len(pivots),
        one_in_span=residual_l1 == 0,
        residual_l1=residual_l1,
    )
