"""Finitely generated groups with exact normal forms.

Three families are supported: free groups (reduced words over signed
generator indices), free-abelian groups (integer exponent vectors) and
finite groups given by a full multiplication table that is validated on
construction. Elements are plain hashable values -- tuples for the two
infinite families, table indices for the finite one -- and every group
operation lives on the group object, so values can be used directly as
dictionary keys in the function and chain modules.

Ball enumeration is breadth-first with a canonical within-level order;
the order is part of the contract because certificates serialize support
sets and must be byte-for-byte reproducible.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
from typing import Sequence, Union

Element = Union[tuple, int]  # reduced word / exponent vector / table index

_LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
_TOKEN_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def _check_labels(labels: Sequence[str], count: int) -> tuple[str, ...]:
    labels = tuple(labels)
    if len(labels) != count:
        raise ValueError(f"expected {count} generator labels, got {len(labels)}")
    if len(set(labels)) != len(labels):
        raise ValueError("generator labels must be distinct")
    for lab in labels:
        if not _LABEL_RE.match(lab):
            raise ValueError(f"invalid generator label {lab!r}")
        if lab == "e":
            raise ValueError("label 'e' is reserved for the identity")
    return labels


def _default_labels(rank: int) -> tuple[str, ...]:
    if rank <= 26:
        return tuple(chr(ord("a") + i) for i in range(rank))
    return tuple(f"x{i}" for i in range(rank))


class GroupSpec:
    """Base class: a finitely generated group with a fixed generating set."""

    family = "?"

    def __init__(self) -> None:
        # BFS cache grown on demand; levels[r] holds the sphere of radius r,
        # sorted by sort_key. The lock keeps concurrent ball() calls from
        # appending the same level twice; everything else is immutable.
        self._levels: list[tuple[Element, ...]] = [(self.identity,)]
        self._seen: set[Element] = {self.identity}
        self._saturated = False
        self._ball_cache: dict[int, tuple[Element, ...]] = {}
        self._lock = threading.Lock()

    # -- core operations, provided by each family ------------------------

    @property
    def identity(self) -> Element:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def check(self, a: Element) -> Element:
        """Validate that `a` is a canonical element of this group."""
        raise NotImplementedError

    def letters(self) -> tuple[tuple[str, Element], ...]:
        """Generators and their inverses as (label, element), deduplicated."""
        raise NotImplementedError

    def sort_key(self, a: Element):
        raise NotImplementedError

    def dist(self, a: Element, b: Element) -> int:
        """Word metric d(a, b) with respect to the generating set."""
        raise NotImplementedError

    def elem_to_json(self, a: Element):
        raise NotImplementedError

    def elem_from_json(self, data) -> Element:
        raise NotImplementedError

    def elem_to_str(self, a: Element) -> str:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    # -- shared machinery -------------------------------------------------

    def _grow_levels(self, radius: int) -> None:
        with self._lock:
            gens = [el for _, el in self.letters()]
            while len(self._levels) <= radius and not self._saturated:
                frontier = self._levels[-1]
                nxt = set()
                for x in frontier:
                    for s in gens:
                        y = self.mul(x, s)
                        if y not in self._seen:
                            nxt.add(y)
                if not nxt:
                    self._saturated = True
                    break
                self._seen.update(nxt)
                self._levels.append(tuple(sorted(nxt, key=self.sort_key)))

    def ball(self, radius: int) -> tuple[Element, ...]:
        """All elements at word distance <= radius from e, canonically ordered."""
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        cached = self._ball_cache.get(radius)
        if cached is not None:
            return cached
        self._grow_levels(radius)
        out: list[Element] = []
        for level in self._levels[: radius + 1]:
            out.extend(level)
        result = tuple(out)
        self._ball_cache[radius] = result
        return result

    def sphere(self, radius: int) -> tuple[Element, ...]:
        self._grow_levels(radius)
        if radius >= len(self._levels):
            return ()
        return self._levels[radius]

    def spec_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, GroupSpec) and self.to_dict() == other.to_dict()

    def __hash__(self) -> int:
        return hash(json.dumps(self.to_dict(), sort_keys=True))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.to_dict()}>"


class FreeGroup(GroupSpec):
    """Free group; elements are reduced words of signed 1-based letters.

    Letter +k stands for generator k-1, letter -k for its inverse. Words
    never contain an adjacent cancelling pair, so equality of elements is
    equality of tuples.
    """

    family = "free"

    def __init__(self, rank: int, labels: Sequence[str] | None = None) -> None:
        if rank < 1:
            raise ValueError("free group rank must be >= 1")
        self.rank = rank
        self.gen_labels = _check_labels(labels or _default_labels(rank), rank)
        self._label_index = {lab: i for i, lab in enumerate(self.gen_labels)}
        super().__init__()

    @property
    def identity(self) -> tuple[int, ...]:
        return ()

    def gen(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.rank:
            raise ValueError(f"generator index {i} out of range")
        return (i + 1,)

    def mul(self, a, b):
        word = list(a)
        for letter in b:
            if word and word[-1] == -letter:
                word.pop()
            else:
                word.append(letter)
        return tuple(word)

    def inv(self, a):
        return tuple(-letter for letter in reversed(a))

    def check(self, a):
        if not isinstance(a, tuple):
            raise ValueError(f"free-group element must be a tuple, got {a!r}")
        for i, letter in enumerate(a):
            if not isinstance(letter, int) or letter == 0 or abs(letter) > self.rank:
                raise ValueError(f"invalid letter {letter!r} in word {a!r}")
            if i and a[i - 1] == -letter:
                raise ValueError(f"word {a!r} is not reduced")
        return a

    def letters(self):
        out = []
        for i, lab in enumerate(self.gen_labels):
            out.append((lab, (i + 1,)))
            out.append((lab + "^-1", (-(i + 1),)))
        return tuple(out)

    @staticmethod
    def _letter_rank(letter: int) -> int:
        # a < a^-1 < b < b^-1 < ...
        return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)

    def sort_key(self, a):
        return (len(a), tuple(self._letter_rank(x) for x in a))

    def dist(self, a, b):
        return len(self.mul(self.inv(a), b))

    def elem_to_str(self, a) -> str:
        if not a:
            return "e"
        parts = []
        i = 0
        while i < len(a):
            j = i
            while j < len(a) and a[j] == a[i]:
                j += 1
            lab = self.gen_labels[abs(a[i]) - 1]
            exp = (j - i) if a[i] > 0 else -(j - i)
            parts.append(lab if exp == 1 else f"{lab}^{exp}")
            i = j
        return "*".join(parts)

    def elem_from_str(self, s: str):
        s = s.strip()
        if s in ("e", ""):
            return ()
        letters: list[int] = []
        for token in s.split("*"):
            m = _TOKEN_RE.match(token.strip())
            if not m:
                raise ValueError(f"cannot parse word token {token!r}")
            lab, exp_s = m.group(1), m.group(2)
            if lab not in self._label_index:
                raise ValueError(f"unknown generator {lab!r}")
            exp = int(exp_s) if exp_s is not None else 1
            letter = self._label_index[lab] + 1
            letters.extend([letter if exp > 0 else -letter] * abs(exp))
        return self.mul((), tuple(letters))

    def elem_to_json(self, a):
        return self.elem_to_str(a)

    def elem_from_json(self, data):
        if not isinstance(data, str):
            raise ValueError(f"free-group element must serialize as a string, got {data!r}")
        return self.elem_from_str(data)

    def to_dict(self):
        return {"family": "free", "rank": self.rank, "generators": list(self.gen_labels)}


class FreeAbelianGroup(GroupSpec):
    """Free-abelian group Z^d; elements are integer exponent vectors."""

    family = "free-abelian"

    def __init__(self, rank: int, labels: Sequence[str] | None = None) -> None:
        if rank < 1:
            raise ValueError("free-abelian rank must be >= 1")
        self.rank = rank
        self.gen_labels = _check_labels(labels or _default_labels(rank), rank)
        super().__init__()

    @property
    def identity(self):
        return (0,) * self.rank

    def gen(self, i: int):
        if not 0 <= i < self.rank:
            raise ValueError(f"generator index {i} out of range")
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inv(self, a):
        return tuple(-x for x in a)

    def check(self, a):
        if not isinstance(a, tuple) or len(a) != self.rank:
            raise ValueError(f"expected an integer vector of length {self.rank}, got {a!r}")
        for x in a:
            if not isinstance(x, int):
                raise ValueError(f"non-integer coordinate in {a!r}")
        return a

    def letters(self):
        out = []
        for i, lab in enumerate(self.gen_labels):
            out.append((lab, self.gen(i)))
            out.append((lab + "^-1", self.inv(self.gen(i))))
        return tuple(out)

    def sort_key(self, a):
        return (sum(abs(x) for x in a), a)

    def dist(self, a, b):
        return sum(abs(y - x) for x, y in zip(a, b))

    def elem_to_str(self, a) -> str:
        return "(" + ",".join(str(x) for x in a) + ")"

    def elem_to_json(self, a):
        return list(a)

    def elem_from_json(self, data):
        if not isinstance(data, list):
            raise ValueError(f"free-abelian element must serialize as a list, got {data!r}")
        return self.check(tuple(int(x) for x in data))

    def to_dict(self):
        return {
            "family": "free-abelian",
            "rank": self.rank,
            "generators": list(self.gen_labels),
        }


class FiniteGroup(GroupSpec):
    """Finite group given by a full multiplication table.

    The table is validated eagerly: closure, associativity, a two-sided
    identity and two-sided inverses. Declared generators (element indices)
    must generate the whole group; they default to all non-identity
    elements.
    """

    family = "finite"

    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[int] | None = None) -> None:
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self._validate_table()
        if generators is None:
            generators = tuple(i for i in range(self.order) if i != self._identity)
        self.gens = tuple(int(g) for g in generators)
        for g in self.gens:
            if not 0 <= g < self.order:
                raise ValueError(f"generator index {g} out of range")
            if g == self._identity:
                raise ValueError("identity cannot be a declared generator")
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("declared generators must be distinct")
        self.gen_labels = tuple(f"g{i}" for i in self.gens)
        super().__init__()
        self._distances = self._bfs_distances()

    def _validate_table(self) -> None:
        n = self.order
        if n == 0:
            raise ValueError("empty multiplication table")
        for row in self.table:
            if len(row) != n:
                raise ValueError("multiplication table must be square")
            for x in row:
                if not isinstance(x, int) or not 0 <= x < n:
                    raise ValueError(f"table entry {x!r} out of range")
        ident = None
        full = tuple(range(n))
        for i in range(n):
            if self.table[i] == full and all(self.table[j][i] == j for j in range(n)):
                ident = i
                break
        if ident is None:
            raise ValueError("table has no two-sided identity")
        self._identity = ident
        self._inverses = [-1] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == ident and self.table[j][i] == ident:
                    self._inverses[i] = j
                    break
            if self._inverses[i] < 0:
                raise ValueError(f"element {i} has no two-sided inverse")
        for i in range(n):
            row_i = self.table[i]
            for j in range(n):
                left = self.table[row_i[j]]
                row_j = self.table[j]
                if left != tuple(row_i[row_j[k]] for k in range(n)):
                    raise ValueError(f"table is not associative at ({i},{j})")

    def _bfs_distances(self) -> list[int]:
        dist = [-1] * self.order
        dist[self._identity] = 0
        frontier = [self._identity]
        gens = {g for g in self.gens} | {self._inverses[g] for g in self.gens}
        d = 0
        while frontier:
            d += 1
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if dist[y] < 0:
                        dist[y] = d
                        nxt.append(y)
            frontier = nxt
        if any(v < 0 for v in dist):
            raise ValueError("declared generators do not generate the group")
        return dist

    @property
    def identity(self) -> int:
        return self._identity

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inverses[a]

    def check(self, a):
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValueError(f"finite-group element must be an index 0..{self.order - 1}, got {a!r}")
        return a

    def letters(self):
        out = []
        seen = set()
        for g, lab in zip(self.gens, self.gen_labels):
            if g not in seen:
                out.append((lab, g))
                seen.add(g)
            gi = self._inverses[g]
            if gi not in seen:
                out.append((lab + "^-1", gi))
                seen.add(gi)
        return tuple(out)

    def sort_key(self, a):
        return (self._distances[a], a)

    def dist(self, a, b):
        return self._distances[self.table[self._inverses[a]][b]]

    def elem_to_str(self, a) -> str:
        return str(a)

    def elem_to_json(self, a):
        return a

    def elem_from_json(self, data):
        if isinstance(data, bool) or not isinstance(data, int):
            raise ValueError(f"finite-group element must serialize as an index, got {data!r}")
        return self.check(data)

    def to_dict(self):
        return {
            "family": "finite",
            "table": [list(row) for row in self.table],
            "generators": list(self.gens),
        }


# -- constructors ---------------------------------------------------------


def free_group(rank: int, labels: Sequence[str] | None = None) -> FreeGroup:
    return FreeGroup(rank, labels)


def free_abelian_group(rank: int, labels: Sequence[str] | None = None) -> FreeAbelianGroup:
    return FreeAbelianGroup(rank, labels)


def finite_group(table: Sequence[Sequence[int]], generators: Sequence[int] | None = None) -> FiniteGroup:
    return FiniteGroup(table, generators)


def cyclic_table(n: int) -> list[list[int]]:
    """Multiplication table of Z/n under addition mod n."""
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(cyclic_table(n), generators=(1,) if n > 1 else ())


def group_from_dict(data: dict) -> GroupSpec:
    """Rebuild a group from its canonical dictionary form."""
    if not isinstance(data, dict) or "family" not in data:
        raise ValueError("group spec must be an object with a 'family' field")
    family = data["family"]
    if family in ("free", "free-abelian") and "rank" not in data:
        raise ValueError(f"{family} group spec requires a 'rank'")
    if family == "free":
        return FreeGroup(int(data["rank"]), data.get("generators"))
    if family == "free-abelian":
        return FreeAbelianGroup(int(data["rank"]), data.get("generators"))
    if family == "finite":
        if "table" not in data:
            raise ValueError("finite group spec requires a 'table'")
        return FiniteGroup(data["table"], data.get("generators"))
    raise ValueError(f"unknown group family {family!r}")


def load_group(path: str) -> GroupSpec:
    with open(path) as fh:
        return group_from_dict(json.load(fh))
