"""Coefficient modules: summable and bounded functions on a group.

The summable side is `FinSuppFn`: an exact finitely supported map from
group elements to rationals (Dirac deltas, slices of summable chains,
values of bounded cochains). The bounded side is `BoundedFn`: an
evaluation oracle with structured variants -- a constant, a finitely
supported part, a constant plus a finitely supported part, and the
tree-flow indicator used by the free-group witness. Bounded functions are
never truncated to vectors; pairings only ever evaluate them at the
finitely many points of a summable support, so every number in the
pipeline stays an exact rational.

Translation is the left action (g.f)(h) = f(g^-1 h) throughout.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .groups import Element, FiniteGroup, FreeGroup, GroupSpec

Rational = Union[Fraction, int]


def frac(x: Rational) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def frac_str(q: Rational) -> str:
    q = frac(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational {s!r}") from exc


class FinSuppFn:
    """Finitely supported exact-rational function on a group.

    Stored as a dict with no zero coefficients and canonical element keys;
    instances are treated as immutable values.
    """

    __slots__ = ("group", "_coeffs")

    def __init__(self, group: GroupSpec, coeffs: Mapping[Element, Rational] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[Element, Fraction] = {}
        for g, c in items:
            g = group.check(g)
            c = frac(c)
            if c:
                clean[g] = clean.get(g, Fraction(0)) + c
                if not clean[g]:
                    del clean[g]
        self.group = group
        self._coeffs = clean

    @classmethod
    def _raw(cls, group: GroupSpec, coeffs: dict) -> "FinSuppFn":
        obj = object.__new__(cls)
        obj.group = group
        obj._coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, group: GroupSpec) -> "FinSuppFn":
        return cls._raw(group, {})

    def evaluate(self, g: Element) -> Fraction:
        return self._coeffs.get(g, Fraction(0))

    __call__ = evaluate

    def items(self):
        return self._coeffs.items()

    def support(self) -> tuple[Element, ...]:
        return tuple(sorted(self._coeffs, key=self.group.sort_key))

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def l1_norm(self) -> Fraction:
        return sum((abs(c) for c in self._coeffs.values()), Fraction(0))

    def coeff_sum(self) -> Fraction:
        return sum(self._coeffs.values(), Fraction(0))

    def translate(self, g: Element) -> "FinSuppFn":
        mul = self.group.mul
        return FinSuppFn._raw(self.group, {mul(g, k): c for k, c in self._coeffs.items()})

    def __add__(self, other: "FinSuppFn") -> "FinSuppFn":
        if not isinstance(other, FinSuppFn):
            return NotImplemented
        if self.group != other.group:
            raise ValueError("cannot add functions over different groups")
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            s = out.get(k, Fraction(0)) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FinSuppFn._raw(self.group, out)

    def __neg__(self) -> "FinSuppFn":
        return FinSuppFn._raw(self.group, {k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other: "FinSuppFn") -> "FinSuppFn":
        return self + (-other)

    def __mul__(self, scalar: Rational) -> "FinSuppFn":
        c = frac(scalar)
        if not c:
            return FinSuppFn.zero(self.group)
        return FinSuppFn._raw(self.group, {k: c * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinSuppFn)
            and self.group == other.group
            and self._coeffs == other._coeffs
        )

    def __repr__(self) -> str:
        terms = ", ".join(
            f"{self.group.elem_to_str(g)}: {c}" for g, c in sorted(
                self._coeffs.items(), key=lambda kv: self.group.sort_key(kv[0])
            )
        )
        return f"FinSuppFn({{{terms}}})"

    def to_pairs(self) -> list:
        return [
            [self.group.elem_to_json(g), frac_str(c)]
            for g, c in sorted(self._coeffs.items(), key=lambda kv: self.group.sort_key(kv[0]))
        ]

    @classmethod
    def from_pairs(cls, group: GroupSpec, pairs: Iterable) -> "FinSuppFn":
        return cls(group, ((group.elem_from_json(e), parse_frac(c)) for e, c in pairs))


def delta(group: GroupSpec, g: Element) -> FinSuppFn:
    """Dirac delta at g: coefficient 1 at g, zero elsewhere."""
    return FinSuppFn(group, {g: 1})


# -- bounded functions ------------------------------------------------------


class BoundedFn:
    """Bounded function given as an exact evaluation oracle.

    Structured variants (Constant, Finite, ConstPlusFinite, TreeFlow) carry
    enough shape for serialization and decidable quotient equality; sums and
    translates of tree flows fall back to generic wrappers that still
    evaluate exactly.
    """

    group: GroupSpec

    def evaluate(self, g: Element) -> Fraction:
        raise NotImplementedError

    def __call__(self, g: Element) -> Fraction:
        return self.evaluate(g)

    @property
    def sup_bound(self) -> Fraction:
        """A declared upper bound for |evaluate(g)| over the whole group."""
        raise NotImplementedError

    def translate(self, g: Element) -> "BoundedFn":
        if g == self.group.identity:
            return self
        return Translated(g, self)

    @property
    def is_zero(self) -> bool:
        """Structural zero test; False does not prove the function nonzero."""
        return False

    def __add__(self, other: "BoundedFn") -> "BoundedFn":
        if not isinstance(other, BoundedFn):
            return NotImplemented
        if self.group != other.group:
            raise ValueError("cannot add bounded functions over different groups")
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        folded = _fold_add(self, other)
        if folded is not None:
            return folded
        return Combination.of(self.group, [(Fraction(1), self), (Fraction(1), other)])

    def __sub__(self, other: "BoundedFn") -> "BoundedFn":
        return self + (-other)

    def __neg__(self) -> "BoundedFn":
        return self.scale(-1)

    def scale(self, c: Rational) -> "BoundedFn":
        c = frac(c)
        if not c:
            return Constant(self.group, 0)
        if c == 1:
            return self
        return Combination.of(self.group, [(c, self)])

    def __mul__(self, scalar: Rational) -> "BoundedFn":
        return self.scale(scalar)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        raise ValueError(f"{type(self).__name__} has no serialized form")


class Constant(BoundedFn):
    __slots__ = ("group", "value")

    def __init__(self, group: GroupSpec, value: Rational):
        self.group = group
        self.value = frac(value)

    def evaluate(self, g):
        return self.value

    @property
    def sup_bound(self):
        return abs(self.value)

    def translate(self, g):
        return self

    @property
    def is_zero(self):
        return not self.value

    def scale(self, c):
        return Constant(self.group, frac(c) * self.value)

    def __eq__(self, other):
        return isinstance(other, Constant) and self.group == other.group and self.value == other.value

    def __repr__(self):
        return f"Constant({self.value})"

    def to_json(self):
        return {"constant": frac_str(self.value)}


class Finite(BoundedFn):
    """A finitely supported function regarded as a bounded one."""

    __slots__ = ("group", "fn")

    def __init__(self, fn: FinSuppFn):
        self.group = fn.group
        self.fn = fn

    def evaluate(self, g):
        return self.fn.evaluate(g)

    @property
    def sup_bound(self):
        return max((abs(c) for _, c in self.fn.items()), default=Fraction(0))

    def translate(self, g):
        return Finite(self.fn.translate(g))

    @property
    def is_zero(self):
        return self.fn.is_zero

    def scale(self, c):
        c = frac(c)
        if not c:
            return Constant(self.group, 0)
        return Finite(self.fn * c)

    def __eq__(self, other):
        return isinstance(other, Finite) and self.fn == other.fn

    def __repr__(self):
        return f"Finite({self.fn!r})"

    def to_json(self):
        return {"finite": self.fn.to_pairs()}


class ConstPlusFinite(BoundedFn):
    __slots__ = ("group", "const", "fn")

    def __init__(self, group: GroupSpec, const: Rational, fn: FinSuppFn):
        self.group = group
        self.const = frac(const)
        self.fn = fn

    def evaluate(self, g):
        return self.const + self.fn.evaluate(g)

    @property
    def sup_bound(self):
        return abs(self.const) + max((abs(c) for _, c in self.fn.items()), default=Fraction(0))

    def translate(self, g):
        return bounded_const_plus_finite(self.group, self.const, self.fn.translate(g))

    @property
    def is_zero(self):
        return not self.const and self.fn.is_zero

    def scale(self, c):
        c = frac(c)
        return bounded_const_plus_finite(self.group, c * self.const, self.fn * c)

    def __eq__(self, other):
        return (
            isinstance(other, ConstPlusFinite)
            and self.group == other.group
            and self.const == other.const
            and self.fn == other.fn
        )

    def __repr__(self):
        return f"ConstPlusFinite({self.const}, {self.fn!r})"

    def to_json(self):
        return {"constant-plus-finite": {"constant": frac_str(self.const), "finite": self.fn.to_pairs()}}


class TreeFlow(BoundedFn):
    """Indicator that a fixed edge at the identity starts the geodesic to gp.

    Defined over a free group with a boundary point p given by an
    eventually-constant generator ray. evaluate(g) is 1 exactly when the
    first letter of the reduced infinite word g * ray^infinity equals the
    edge letter, else 0.
    """

    __slots__ = ("group", "edge", "ray")

    def __init__(self, group: FreeGroup, edge: int, ray: int):
        if not isinstance(group, FreeGroup):
            raise ValueError("tree flows are only defined over free groups")
        if edge == 0 or abs(edge) > group.rank:
            raise ValueError(f"edge letter {edge} out of range")
        if not 1 <= ray <= group.rank:
            raise ValueError(f"ray letter {ray} must be a positive generator index")
        self.group = group
        self.edge = edge
        self.ray = ray

    def evaluate(self, g):
        return Fraction(1) if ray_first_letter(g, self.ray) == self.edge else Fraction(0)

    @property
    def sup_bound(self):
        return Fraction(1)

    def __eq__(self, other):
        return (
            isinstance(other, TreeFlow)
            and self.group == other.group
            and self.edge == other.edge
            and self.ray == other.ray
        )

    def __repr__(self):
        labs = self.group.gen_labels
        edge = labs[abs(self.edge) - 1] + ("" if self.edge > 0 else "^-1")
        return f"TreeFlow(edge={edge}, ray={labs[self.ray - 1]})"

    def to_json(self):
        labs = self.group.gen_labels
        return {
            "tree-flow": {
                "edge": labs[abs(self.edge) - 1] + ("" if self.edge > 0 else "^-1"),
                "ray": labs[self.ray - 1],
            }
        }


def ray_first_letter(word: tuple[int, ...], ray: int) -> int:
    """First letter of the reduced infinite word `word * ray^infinity`.

    Only the maximal trailing run of ray^-1 letters can cancel into the
    ray, so strip it; if nothing remains the word heads straight down the
    ray, otherwise the leading letter is unchanged.
    """
    i = len(word)
    while i and word[i - 1] == -ray:
        i -= 1
    return word[0] if i else ray


class Translated(BoundedFn):
    """Left translate of an arbitrary bounded function."""

    __slots__ = ("group", "shift", "_shift_inv", "inner")

    def __init__(self, shift: Element, inner: BoundedFn):
        self.group = inner.group
        if isinstance(inner, Translated):
            shift = self.group.mul(shift, inner.shift)
            inner = inner.inner
        self.shift = shift
        self._shift_inv = self.group.inv(shift)
        self.inner = inner

    def evaluate(self, g):
        return self.inner.evaluate(self.group.mul(self._shift_inv, g))

    @property
    def sup_bound(self):
        return self.inner.sup_bound

    def translate(self, g):
        total = self.group.mul(g, self.shift)
        if total == self.group.identity:
            return self.inner
        return Translated(total, self.inner)

    def __eq__(self, other):
        return (
            isinstance(other, Translated)
            and self.shift == other.shift
            and self.inner == other.inner
        )

    def __repr__(self):
        return f"Translated({self.group.elem_to_str(self.shift)}, {self.inner!r})"


class Combination(BoundedFn):
    """Exact rational linear combination of bounded functions."""

    __slots__ = ("group", "terms")

    def __init__(self, group: GroupSpec, terms: tuple):
        self.group = group
        self.terms = terms

    @classmethod
    def of(cls, group: GroupSpec, terms: Iterable) -> BoundedFn:
        flat: list[tuple[Fraction, BoundedFn]] = []
        for c, f in terms:
            c = frac(c)
            if not c or f.is_zero:
                continue
            if isinstance(f, Combination):
                flat.extend((c * ci, fi) for ci, fi in f.terms)
            else:
                flat.append((c, f))
        if not flat:
            return Constant(group, 0)
        if len(flat) == 1 and flat[0][0] == 1:
            return flat[0][1]
        return cls(group, tuple(flat))

    def evaluate(self, g):
        return sum((c * f.evaluate(g) for c, f in self.terms), Fraction(0))

    @property
    def sup_bound(self):
        return sum((abs(c) * f.sup_bound for c, f in self.terms), Fraction(0))

    def translate(self, g):
        return Combination.of(self.group, [(c, f.translate(g)) for c, f in self.terms])

    def scale(self, c):
        return Combination.of(self.group, [(frac(c) * ci, fi) for ci, fi in self.terms])

    def __eq__(self, other):
        return isinstance(other, Combination) and self.terms == other.terms

    def __repr__(self):
        return f"Combination({self.terms!r})"


def bounded_const_plus_finite(group: GroupSpec, const: Rational, fn: FinSuppFn) -> BoundedFn:
    """Normalized constructor: collapses to Constant or Finite when possible."""
    const = frac(const)
    if fn.is_zero:
        return Constant(group, const)
    if not const:
        return Finite(fn)
    return ConstPlusFinite(group, const, fn)


def _fold_add(u: BoundedFn, v: BoundedFn) -> BoundedFn | None:
    """Structured sum when both operands decompose as constant + finite."""
    parts = []
    for f in (u, v):
        if isinstance(f, Constant):
            parts.append((f.value, FinSuppFn.zero(f.group)))
        elif isinstance(f, Finite):
            parts.append((Fraction(0), f.fn))
        elif isinstance(f, ConstPlusFinite):
            parts.append((f.const, f.fn))
        else:
            return None
    (c1, f1), (c2, f2) = parts
    return bounded_const_plus_finite(u.group, c1 + c2, f1 + f2)


def bounded_from_json(group: GroupSpec, data: dict) -> BoundedFn:
    if not isinstance(data, dict) or len(data) != 1:
        raise ValueError(f"malformed bounded-function value {data!r}")
    (kind, payload), = data.items()
    if kind == "constant":
        return Constant(group, parse_frac(payload))
    if kind == "finite":
        return Finite(FinSuppFn.from_pairs(group, payload))
    if kind == "constant-plus-finite":
        return bounded_const_plus_finite(
            group, parse_frac(payload["constant"]), FinSuppFn.from_pairs(group, payload["finite"])
        )
    if kind == "tree-flow":
        if not isinstance(group, FreeGroup):
            raise ValueError("tree-flow values require a free group")
        edge_word = group.elem_from_str(payload["edge"])
        ray_word = group.elem_from_str(payload["ray"])
        if len(edge_word) != 1 or len(ray_word) != 1 or ray_word[0] < 0:
            raise ValueError("tree-flow edge/ray must be single letters (ray positive)")
        return TreeFlow(group, edge_word[0], ray_word[0])
    raise ValueError(f"unknown bounded-function kind {kind!r}")


# -- quotient (mod constants) representatives --------------------------------


class QuotientRep:
    """A bounded function regarded as a representative modulo constants."""

    __slots__ = ("rep",)

    def __init__(self, rep: BoundedFn):
        self.rep = rep

    @property
    def group(self) -> GroupSpec:
        return self.rep.group

    def same_class(self, other: "QuotientRep") -> bool:
        """Exact equality in the quotient; decidable for structured variants."""
        return is_constant_fn(self.rep - other.rep)

    def __repr__(self):
        return f"QuotientRep({self.rep!r})"


def is_constant_fn(v: BoundedFn) -> bool:
    """Whether v is a constant function on its group.

    Structured variants are decided symbolically; over a finite group any
    variant is decided by exhaustive evaluation. Raises for oracle-backed
    variants over infinite groups.
    """
    group = v.group
    if v.is_zero or isinstance(v, Constant):
        return True
    if isinstance(group, FiniteGroup):
        vals = {v.evaluate(g) for g in range(group.order)}
        return len(vals) == 1
    if isinstance(v, Finite):
        return v.fn.is_zero
    if isinstance(v, ConstPlusFinite):
        return v.fn.is_zero
    raise ValueError("constant test is undecidable for oracle-backed variants over infinite groups")


# -- translation action and evaluation pairing -------------------------------


def translate(g: Element, f: FinSuppFn | BoundedFn) -> FinSuppFn | BoundedFn:
    """Left translation (g.f)(h) = f(g^-1 h) for either coefficient kind."""
    return f.translate(g)


def pair_eval(phi: FinSuppFn, v: FinSuppFn | BoundedFn | QuotientRep) -> Fraction:
    """Evaluation pairing <phi, v> = sum_g phi(g) v(g) over supp(phi).

    When v is a quotient representative the summable side must have
    coefficient sum zero, which makes the value independent of the chosen
    representative.
    """
    if isinstance(v, QuotientRep):
        if phi.coeff_sum():
            raise ValueError("pairing against a quotient representative needs a zero-sum function")
        v = v.rep
    if phi.group != v.group:
        raise ValueError("pairing requires functions over the same group")
    return sum((c * v.evaluate(g) for g, c in phi.items()), Fraction(0))
