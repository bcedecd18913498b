"""Chain and cochain complexes at truncation scale.

Four complexes share this module:

* summable equivariant chains ("l1" kind, `FinSuppFn` values) and bounded
  equivariant chains ("linf" kind, `BoundedFn` values), both stored by
  their slice on {e} x G^m with finite support, with the insertion-sum
  boundary operator;
* bounded cochains with summable-function values, stored either as a
  finite slice map or as an evaluation rule (the coboundary of almost any
  cochain has infinite slice support, so cochains must be lazy), with the
  face-deletion coboundary;
* uniformly finite chains: plain finitely supported functions on tuples
  with a support-diameter bound, with the face-deletion boundary;
* the inflation isomorphism between uniformly finite chains and bounded
  equivariant chains, in both directions.

An equivariant degree-m chain is recovered from its slice by
c(g0,...,gm) = g0 . slice(g0^-1 g1, ..., g0^-1 gm).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .groups import GroupSpec
from .functions import (
    BoundedFn,
    Constant,
    ConstPlusFinite,
    Finite,
    FinSuppFn,
    Rational,
    bounded_from_json,
    delta,
    frac,
    frac_str,
    parse_frac,
)

KIND_L1 = "l1"
KIND_LINF = "linf"

DUAL_QUOTIENT = "quotient-dual"  # functionals on bounded functions mod constants
DUAL_FULL = "full-dual"          # functionals on all bounded functions
DUAL_SCALAR = "scalar"           # scalar coefficients, embedded via delta at e


def _tuple_key(group: GroupSpec, key, length: int) -> tuple:
    key = tuple(key)
    if len(key) != length:
        raise ValueError(f"expected a {length}-tuple slice key, got {key!r}")
    return tuple(group.check(g) for g in key)


def _key_sort(group: GroupSpec, key: tuple):
    return tuple(group.sort_key(g) for g in key)


class EquivariantChain:
    """Equivariant chain stored by its finitely supported slice on {e} x G^m."""

    __slots__ = ("group", "degree", "kind", "slice")

    def __init__(self, group: GroupSpec, degree: int, kind: str, entries: Mapping | Iterable = ()):
        if degree < 0:
            raise ValueError("chain degree must be >= 0")
        if kind not in (KIND_L1, KIND_LINF):
            raise ValueError(f"unknown chain kind {kind!r}")
        items = entries.items() if isinstance(entries, Mapping) else entries
        slice_map: dict[tuple, object] = {}
        for key, value in items:
            key = _tuple_key(group, key, degree)
            if kind == KIND_L1:
                if not isinstance(value, FinSuppFn):
                    raise ValueError("l1 chains take FinSuppFn values")
            else:
                if not isinstance(value, BoundedFn):
                    raise ValueError("linf chains take BoundedFn values")
            if value.group != group:
                raise ValueError("chain value over the wrong group")
            if value.is_zero:
                continue
            if key in slice_map:
                raise ValueError(f"duplicate slice key {key!r}")
            slice_map[key] = value
        self.group = group
        self.degree = degree
        self.kind = kind
        self.slice = slice_map

    @classmethod
    def _raw(cls, group, degree, kind, slice_map):
        obj = object.__new__(cls)
        obj.group = group
        obj.degree = degree
        obj.kind = kind
        obj.slice = slice_map
        return obj

    def zero_value(self):
        if self.kind == KIND_L1:
            return FinSuppFn.zero(self.group)
        return Constant(self.group, 0)

    def slice_value(self, key):
        key = _tuple_key(self.group, key, self.degree)
        return self.slice.get(key, self.zero_value())

    def evaluate(self, point):
        """Value of the full equivariant chain at a (degree+1)-tuple."""
        point = _tuple_key(self.group, point, self.degree + 1)
        g0 = point[0]
        g0i = self.group.inv(g0)
        key = tuple(self.group.mul(g0i, g) for g in point[1:])
        return self.slice.get(key, self.zero_value()).translate(g0)

    @property
    def is_zero(self) -> bool:
        return not self.slice

    def support_keys(self) -> list[tuple]:
        return sorted(self.slice, key=lambda k: _key_sort(self.group, k))

    def support_radius(self) -> int:
        """Largest word length appearing in a slice key (0 for degree 0)."""
        e = self.group.identity
        radius = 0
        for key in self.slice:
            for g in key:
                radius = max(radius, self.group.dist(e, g))
        return radius

    def boundary(self) -> "EquivariantChain":
        """Insertion-sum boundary, pushed forward through the slice support.

        Summing insertions of every group element against a finitely
        supported equivariant chain reduces to one face per stored key:
        insertion at the front contributes through the orbit representative
        (translate by the inverse of the first key entry), insertions
        elsewhere delete one key coordinate with an alternating sign.
        """
        if self.degree == 0:
            raise ValueError("boundary of a degree-0 chain is undefined")
        group = self.group
        out: dict[tuple, object] = {}

        def acc(key, value):
            if key in out:
                out[key] = out[key] + value
            else:
                out[key] = value

        for key, value in self.slice.items():
            g1i = group.inv(key[0])
            front_key = tuple(group.mul(g1i, g) for g in key[1:])
            acc(front_key, value.translate(g1i))
            sign = -1
            for i in range(self.degree):
                acc(key[:i] + key[i + 1 :], value if sign > 0 else -value)
                sign = -sign
        out = {k: v for k, v in out.items() if not v.is_zero}
        return EquivariantChain._raw(group, self.degree - 1, self.kind, out)

    def __add__(self, other: "EquivariantChain") -> "EquivariantChain":
        if not isinstance(other, EquivariantChain):
            return NotImplemented
        if (self.group, self.degree, self.kind) != (other.group, other.degree, other.kind):
            raise ValueError("cannot add chains of different shape")
        out = dict(self.slice)
        for key, value in other.slice.items():
            merged = out[key] + value if key in out else value
            if merged.is_zero:
                out.pop(key, None)
            else:
                out[key] = merged
        return EquivariantChain._raw(self.group, self.degree, self.kind, out)

    def __neg__(self):
        return EquivariantChain._raw(
            self.group, self.degree, self.kind, {k: -v for k, v in self.slice.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar: Rational):
        c = frac(scalar)
        if not c:
            return EquivariantChain._raw(self.group, self.degree, self.kind, {})
        return EquivariantChain._raw(
            self.group, self.degree, self.kind, {k: v * c for k, v in self.slice.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantChain)
            and self.group == other.group
            and self.degree == other.degree
            and self.kind == other.kind
            and self.slice == other.slice
        )

    def __repr__(self):
        return f"EquivariantChain(degree={self.degree}, kind={self.kind}, entries={len(self.slice)})"

    def to_json(self) -> dict:
        entries = []
        for key in self.support_keys():
            value = self.slice[key]
            value_json = {"l1": value.to_pairs()} if self.kind == KIND_L1 else value.to_json()
            entries.append([[self.group.elem_to_json(g) for g in key], value_json])
        return {
            "group": self.group.to_dict(),
            "degree": self.degree,
            "kind": self.kind,
            "entries": entries,
        }

    @classmethod
    def from_json(cls, data: dict, group: GroupSpec | None = None) -> "EquivariantChain":
        from .groups import group_from_dict

        group = group or group_from_dict(data["group"])
        kind = data["kind"]
        entries = []
        for key_json, value_json in data["entries"]:
            key = tuple(group.elem_from_json(g) for g in key_json)
            if kind == KIND_L1:
                if set(value_json) != {"l1"}:
                    raise ValueError(f"malformed l1 chain value {value_json!r}")
                value = FinSuppFn.from_pairs(group, value_json["l1"])
            else:
                value = bounded_from_json(group, value_json)
            entries.append((key, value))
        return cls(group, int(data["degree"]), kind, entries)


class BoundedCochain:
    """Equivariant bounded cochain with summable-function values.

    Values are reported through `value_at(key)` for the slice key
    (g1,...,gm), i.e. the cochain evaluated at (e,g1,...,gm). A cochain is
    backed either by a finite map (serializable) or by an evaluation rule;
    coboundaries are always rule-backed. Quotient-dual cochains must
    produce zero-sum values, which is enforced on every access.
    """

    __slots__ = ("group", "degree", "dual", "label", "_entries", "_rule")

    def __init__(self, group, degree, dual, *, entries=None, rule=None, label=None):
        if degree < 0:
            raise ValueError("cochain degree must be >= 0")
        if dual not in (DUAL_QUOTIENT, DUAL_FULL, DUAL_SCALAR):
            raise ValueError(f"unknown dual flag {dual!r}")
        if (entries is None) == (rule is None):
            raise ValueError("exactly one of entries/rule must be given")
        self.group = group
        self.degree = degree
        self.dual = dual
        self.label = label
        self._rule = rule
        if entries is not None:
            items = entries.items() if isinstance(entries, Mapping) else entries
            clean = {}
            for key, value in items:
                key = _tuple_key(group, key, degree)
                if not isinstance(value, FinSuppFn) or value.group != group:
                    raise ValueError("cochain values must be FinSuppFn over the same group")
                if value.is_zero:
                    continue
                if key in clean:
                    raise ValueError(f"duplicate cochain key {key!r}")
                self._check_value(value)
                clean[key] = value
            self._entries = clean
        else:
            self._entries = None

    @classmethod
    def from_map(cls, group, degree, entries, dual=DUAL_FULL, label=None):
        return cls(group, degree, dual, entries=entries, label=label)

    @classmethod
    def from_rule(cls, group, degree, rule: Callable[[tuple], FinSuppFn], dual=DUAL_FULL, label=None):
        return cls(group, degree, dual, rule=rule, label=label)

    @property
    def is_map_backed(self) -> bool:
        return self._entries is not None

    def _check_value(self, value: FinSuppFn) -> None:
        if self.dual == DUAL_QUOTIENT and value.coeff_sum():
            raise ValueError("quotient-dual cochain produced a value with nonzero coefficient sum")

    def value_at(self, key) -> FinSuppFn:
        key = _tuple_key(self.group, key, self.degree)
        if self._entries is not None:
            return self._entries.get(key, FinSuppFn.zero(self.group))
        value = self._rule(key)
        self._check_value(value)
        return value

    def with_dual(self, dual: str) -> "BoundedCochain":
        """Same values reinterpreted in another dual; validation still applies."""
        if self._entries is not None:
            return BoundedCochain(self.group, self.degree, dual, entries=self._entries, label=self.label)
        return BoundedCochain(self.group, self.degree, dual, rule=self._rule, label=self.label)

    def __add__(self, other: "BoundedCochain") -> "BoundedCochain":
        if not isinstance(other, BoundedCochain):
            return NotImplemented
        if (self.group, self.degree, self.dual) != (other.group, other.degree, other.dual):
            raise ValueError("cannot add cochains of different shape")
        return BoundedCochain.from_rule(
            self.group,
            self.degree,
            lambda key: self.value_at(key) + other.value_at(key),
            dual=self.dual,
        )

    def coboundary(self) -> "BoundedCochain":
        """Face-deletion coboundary; the result is rule-backed."""
        group = self.group
        m = self.degree

        def rule(key: tuple) -> FinSuppFn:
            h1i = group.inv(key[0])
            rest = tuple(group.mul(h1i, g) for g in key[1:])
            acc = self.value_at(rest).translate(key[0])
            sign = -1
            for i in range(m + 1):
                term = self.value_at(key[:i] + key[i + 1 :])
                acc = acc + (-term if sign < 0 else term)
                sign = -sign
            return acc

        label = f"coboundary({self.label})" if self.label else None
        return BoundedCochain.from_rule(group, m + 1, rule, dual=self.dual, label=label)

    def equal_on(self, other: "BoundedCochain", keys: Iterable) -> bool:
        """Exact value equality over an explicit finite family of keys."""
        if (self.group, self.degree) != (other.group, other.degree):
            return False
        return all(self.value_at(k) == other.value_at(k) for k in keys)

    def __repr__(self):
        backing = "map" if self.is_map_backed else "rule"
        return f"BoundedCochain(degree={self.degree}, dual={self.dual}, backing={backing})"

    def to_json(self) -> dict:
        if self._entries is None:
            raise ValueError("only map-backed cochains have a serialized form")
        entries = []
        for key in sorted(self._entries, key=lambda k: _key_sort(self.group, k)):
            entries.append(
                [[self.group.elem_to_json(g) for g in key], self._entries[key].to_pairs()]
            )
        out = {
            "group": self.group.to_dict(),
            "degree": self.degree,
            "dual": self.dual,
            "entries": entries,
        }
        if self.label:
            out["label"] = self.label
        return out

    @classmethod
    def from_json(cls, data: dict, group: GroupSpec | None = None) -> "BoundedCochain":
        from .groups import group_from_dict

        group = group or group_from_dict(data["group"])
        entries = [
            (tuple(group.elem_from_json(g) for g in key_json), FinSuppFn.from_pairs(group, pairs))
            for key_json, pairs in data["entries"]
        ]
        return cls.from_map(
            group, int(data["degree"]), entries, dual=data.get("dual", DUAL_FULL), label=data.get("label")
        )


class UfChain:
    """Bounded chain with controlled support: finitely supported tuples
    of diameter at most `diameter_bound` in the word metric."""

    __slots__ = ("group", "degree", "coeffs", "diameter_bound")

    def __init__(self, group, degree, coeffs: Mapping | Iterable = (), diameter_bound: int | None = None):
        if degree < 0:
            raise ValueError("chain degree must be >= 0")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        clean: dict[tuple, Fraction] = {}
        for key, c in items:
            key = _tuple_key(group, key, degree + 1)
            c = frac(c)
            if not c:
                continue
            clean[key] = clean.get(key, Fraction(0)) + c
            if not clean[key]:
                del clean[key]
        realized = 0
        for key in clean:
            for i, a in enumerate(key):
                for b in key[i + 1 :]:
                    realized = max(realized, group.dist(a, b))
        if diameter_bound is None:
            diameter_bound = realized
        elif realized > diameter_bound:
            raise ValueError(
                f"support diameter {realized} exceeds the declared bound {diameter_bound}"
            )
        self.group = group
        self.degree = degree
        self.coeffs = clean
        self.diameter_bound = diameter_bound

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def boundary(self) -> "UfChain":
        if self.degree == 0:
            raise ValueError("boundary of a degree-0 chain is undefined")
        out: dict[tuple, Fraction] = {}
        for key, c in self.coeffs.items():
            sign = 1
            for i in range(self.degree + 1):
                face = key[:i] + key[i + 1 :]
                s = out.get(face, Fraction(0)) + (c if sign > 0 else -c)
                if s:
                    out[face] = s
                else:
                    out.pop(face, None)
                sign = -sign
        return UfChain(self.group, self.degree - 1, out, diameter_bound=self.diameter_bound)

    def support_keys(self) -> list[tuple]:
        return sorted(self.coeffs, key=lambda k: _key_sort(self.group, k))

    def __add__(self, other: "UfChain") -> "UfChain":
        if not isinstance(other, UfChain):
            return NotImplemented
        if (self.group, self.degree) != (other.group, other.degree):
            raise ValueError("cannot add chains of different shape")
        merged = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = merged.get(key, Fraction(0)) + c
            if s:
                merged[key] = s
            else:
                merged.pop(key, None)
        return UfChain(
            self.group,
            self.degree,
            merged,
            diameter_bound=max(self.diameter_bound, other.diameter_bound),
        )

    def __neg__(self):
        return UfChain(
            self.group,
            self.degree,
            {k: -c for k, c in self.coeffs.items()},
            diameter_bound=self.diameter_bound,
        )

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        # The diameter bound is metadata, not part of the chain's identity.
        return (
            isinstance(other, UfChain)
            and self.group == other.group
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"UfChain(degree={self.degree}, entries={len(self.coeffs)}, K={self.diameter_bound})"

    def to_json(self) -> dict:
        return {
            "group": self.group.to_dict(),
            "degree": self.degree,
            "diameter-bound": self.diameter_bound,
            "entries": [
                [[self.group.elem_to_json(g) for g in key], frac_str(self.coeffs[key])]
                for key in self.support_keys()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, group: GroupSpec | None = None) -> "UfChain":
        from .groups import group_from_dict

        group = group or group_from_dict(data["group"])
        coeffs = [
            (tuple(group.elem_from_json(g) for g in key_json), parse_frac(c))
            for key_json, c in data["entries"]
        ]
        return cls(group, int(data["degree"]), coeffs, diameter_bound=data.get("diameter-bound"))


# -- complex-level operations -------------------------------------------------


def l1_boundary(c: EquivariantChain) -> EquivariantChain:
    return c.boundary()


def bar_coboundary(phi: BoundedCochain) -> BoundedCochain:
    return phi.coboundary()


def uf_boundary(phi: UfChain) -> UfChain:
    return phi.boundary()


def inflate(phi: UfChain) -> EquivariantChain:
    """Equivariant bounded chain with slice values g -> phi(g^-1 . tuple).

    Each supported tuple t lands in the orbit of (e, t0^-1 t1, ...); its
    coefficient appears in that slice value as a delta at t0^-1.
    """
    group = phi.group
    builders: dict[tuple, dict] = {}
    for key, c in phi.coeffs.items():
        t0i = group.inv(key[0])
        orbit_key = tuple(group.mul(t0i, g) for g in key[1:])
        builders.setdefault(orbit_key, {})[t0i] = c
    entries = {
        key: Finite(FinSuppFn(group, coeffs)) for key, coeffs in builders.items()
    }
    return EquivariantChain(group, phi.degree, KIND_LINF, entries)


def deflate(chain: EquivariantChain) -> UfChain:
    """Inverse of `inflate`; requires finite-type slice values."""
    if chain.kind != KIND_LINF:
        raise ValueError("deflate expects a bounded-coefficient chain")
    group = chain.group
    coeffs: dict[tuple, Fraction] = {}
    for key, value in chain.slice.items():
        if isinstance(value, Finite):
            fn = value.fn
        elif isinstance(value, ConstPlusFinite) and not value.const:
            fn = value.fn
        elif value.is_zero:
            continue
        else:
            raise ValueError(f"cannot deflate a chain with value {value!r} (not of finite type)")
        for h, c in fn.items():
            hi = group.inv(h)
            tup = (hi,) + tuple(group.mul(hi, g) for g in key)
            coeffs[tup] = c
    return UfChain(group, chain.degree, coeffs)


def johnson_cocycle(group: GroupSpec) -> BoundedCochain:
    """Degree-1 quotient-dual cocycle whose slice value at (g) is delta_g - delta_e."""
    e = group.identity

    def rule(key: tuple) -> FinSuppFn:
        return delta(group, key[0]) - delta(group, e)

    return BoundedCochain.from_rule(group, 1, rule, dual=DUAL_QUOTIENT, label="johnson-cocycle")


def fundamental_cycle(group: GroupSpec) -> EquivariantChain:
    """Degree-0 bounded chain with slice value the constant function 1."""
    return EquivariantChain(group, 0, KIND_LINF, {(): Constant(group, 1)})


def one_lift_cochain(group: GroupSpec) -> BoundedCochain:
    """Degree-0 full-dual cochain sending g to delta_g (slice value delta_e).

    This is the lift of the constant-one scalar cochain through evaluation
    functionals; its coboundary has the same values as the degree-1
    quotient-dual cocycle above.
    """
    return BoundedCochain.from_map(
        group, 0, {(): delta(group, group.identity)}, dual=DUAL_FULL, label="one-lift"
    )


def one_cochain(group: GroupSpec) -> BoundedCochain:
    """The constant-one scalar cochain, represented through its canonical lift."""
    return BoundedCochain.from_map(
        group, 0, {(): delta(group, group.identity)}, dual=DUAL_SCALAR, label="one"
    )


def one_l1_cycle(group: GroupSpec) -> EquivariantChain:
    """Degree-0 summable chain with scalar value 1, embedded as delta_e."""
    return EquivariantChain(group, 0, KIND_L1, {(): delta(group, group.identity)})


def connecting_lift_check(group: GroupSpec, radius: int = 3) -> bool:
    """Coboundary of the delta lift equals the quotient-dual cocycle on ball slices."""
    lifted = one_lift_cochain(group).coboundary()
    target = johnson_cocycle(group)
    keys = [(g,) for g in group.ball(radius)]
    return lifted.equal_on(target, keys)
