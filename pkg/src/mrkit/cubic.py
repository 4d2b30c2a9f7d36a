"""Finite cubic implication algebras stored as explicit operation tables.

The carrier of an algebra is ``range(size)``.  Order, join and the
reflection operation are explicit tables, so a structure can be checked,
serialized and replayed without trusting any derived code path.  Algebras
are immutable after construction; all operations are pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

from .errors import (
    DeltaUndefined,
    InvalidAlgebra,
    MalformedTable,
    NoSuchPair,
    NotClosed,
)

UNDEFINED = -1


@dataclass(frozen=True)
class ElementRef:
    """Address of a carrier element of a named algebra."""

    algebra_id: str
    index: int

    def resolve(self, algebra: "CubicAlgebra") -> int:
        if self.algebra_id != algebra.algebra_id:
            raise ValueError(
                f"reference into {self.algebra_id!r} used with {algebra.algebra_id!r}"
            )
        if not 0 <= self.index < algebra.size:
            raise IndexError(f"element index {self.index} out of range")
        return self.index


def as_index(algebra: "CubicAlgebra", x) -> int:
    """Coerce an int or ElementRef to a checked carrier index."""
    if isinstance(x, ElementRef):
        return x.resolve(algebra)
    i = int(x)
    if not 0 <= i < algebra.size:
        raise IndexError(f"element index {i} out of range")
    return i


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of a model check: empty violation list means all laws hold."""

    violations: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def first(self):
        return self.violations[0] if self.violations else None

    def ids(self) -> tuple[str, ...]:
        return tuple(sorted({axiom_id for axiom_id, _ in self.violations}))


class _Witnesses:
    """Collects violations respecting the first/all witness policy."""

    def __init__(self, policy: str):
        if policy not in ("first", "all"):
            raise ValueError(f"unknown witness policy {policy!r}")
        self.policy = policy
        self.items: list[tuple[str, tuple[int, ...]]] = []

    def add(self, axiom_id: str, witness: tuple[int, ...]) -> bool:
        """Record a violation; returns True when scanning should stop."""
        self.items.append((axiom_id, witness))
        return self.policy == "first"

    @property
    def stop(self) -> bool:
        return self.policy == "first" and bool(self.items)

    def report(self) -> AxiomReport:
        return AxiomReport(tuple(self.items))


@dataclass(frozen=True)
class CubicAlgebra:
    """Finite join semilattice with top and a partial reflection table.

    ``leq_table[x][y]`` is 1 iff x <= y.  ``delta_table[x][y]`` is the
    reflection of y through x, defined exactly when y <= x (``UNDEFINED``
    elsewhere).  Well-formedness (partial order, table shapes, reflection
    domain, unique maximum) is enforced on every construction; the cubic
    axioms themselves are enforced by :func:`CubicAlgebra.from_tables`
    unless it is asked for a raw structure for the model checker.
    """

    size: int
    leq_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    delta_table: tuple[tuple[int, ...], ...]
    one: int
    # labels and name take part in equality: caches key on algebras, and
    # two same-table algebras with different labels are different views
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        self._validate_tables()

    # -- construction ---------------------------------------------------

    @classmethod
    def from_tables(cls, leq, join, delta, one, *, labels=None, name="",
                    strict=True) -> "CubicAlgebra":
        """Build an algebra from tables, checking the cubic axioms by default.

        With ``strict=False`` only well-formedness is enforced, which is the
        entry point for feeding deliberately broken structures to the
        checkers.
        """
        tidy = lambda t: tuple(tuple(int(v) for v in row) for row in t)
        algebra = cls(
            size=len(leq),
            leq_table=tidy(leq),
            join_table=tidy(join),
            delta_table=tidy(delta),
            one=int(one),
            labels=tuple(labels) if labels is not None else None,
            name=name,
        )
        if strict:
            report = check_cubic_axioms(algebra)
            if not report.passed:
                raise InvalidAlgebra(
                    f"cubic axioms fail: {report.first()}", report=report
                )
        return algebra

    def _validate_tables(self):
        n = self.size
        if n <= 0:
            raise MalformedTable("carrier must be nonempty")
        for tab, label in ((self.leq_table, "leq"), (self.join_table, "join"),
                           (self.delta_table, "delta")):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise MalformedTable(f"{label} table is not {n}x{n}")
        if not 0 <= self.one < n:
            raise MalformedTable("top index out of range")
        if self.labels is not None and len(self.labels) != n:
            raise MalformedTable("labels length mismatch")
        for x in range(n):
            if not self.leq_table[x][x]:
                raise MalformedTable(f"order not reflexive at {x}")
            if not self.leq_table[x][self.one]:
                raise MalformedTable(f"{self.one} is not a maximum (misses {x})")
            for y in range(n):
                if not 0 <= self.join_table[x][y] < n:
                    raise MalformedTable(f"join({x},{y}) out of range")
                d = self.delta_table[x][y]
                if self.leq_table[y][x]:
                    if not 0 <= d < n:
                        raise MalformedTable(f"delta({x},{y}) must be defined")
                elif d != UNDEFINED:
                    raise MalformedTable(f"delta({x},{y}) defined off-domain")
                if self.leq_table[x][y] and self.leq_table[y][x] and x != y:
                    raise MalformedTable(f"order not antisymmetric at ({x},{y})")
        up = self._up
        for x in range(n):
            for y in range(n):
                if self.leq_table[x][y] and up[y] & ~up[x]:
                    raise MalformedTable(f"order not transitive through ({x},{y})")

    # -- cached order structure -----------------------------------------

    @cached_property
    def _up(self) -> tuple[int, ...]:
        masks = []
        for x in range(self.size):
            m = 0
            row = self.leq_table[x]
            for y in range(self.size):
                if row[y]:
                    m |= 1 << y
            masks.append(m)
        return tuple(masks)

    @cached_property
    def _down(self) -> tuple[int, ...]:
        masks = [0] * self.size
        for x in range(self.size):
            for y in range(self.size):
                if self.leq_table[y][x]:
                    masks[x] |= 1 << y
        return tuple(masks)

    @cached_property
    def _meet_table(self) -> tuple[tuple[int, ...], ...]:
        down = self._down
        rows = []
        for x in range(self.size):
            row = []
            for y in range(self.size):
                row.append(_glb(down[x] & down[y], down))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def minimal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if self._down[x] == 1 << x)

    # -- element operations ----------------------------------------------

    def elements(self) -> range:
        return range(self.size)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.leq_table[x][y])

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def meet(self, x: int, y: int) -> int | None:
        """Order-theoretic greatest lower bound, or None when it fails."""
        z = self._meet_table[x][y]
        return None if z == UNDEFINED else z

    def delta(self, x: int, y: int) -> int:
        """Reflection of y through x; defined exactly when y <= x."""
        if not self.leq_table[y][x]:
            raise DeltaUndefined(f"delta({x},{y}) needs {y} <= {x}")
        return self.delta_table[x][y]

    def implies(self, x: int, y: int) -> int:
        j = self.join_table[x][y]
        return self.join_table[self.delta_table[self.one][self.delta_table[j][y]]][y]

    def caret(self, x: int, y: int) -> int | None:
        """Signed meet: the meet of x with y reflected through x v y."""
        return self.meet(x, self.delta_table[self.join_table[x][y]][y])

    def star(self, x: int, y: int) -> int:
        """Signed join: x joined with y reflected through x v y."""
        return self.join_table[x][self.delta_table[self.join_table[x][y]][y]]

    def preceq(self, x: int, y: int) -> bool:
        return bool(self.leq_table[self.delta_table[self.join_table[x][y]][x]][y])

    def sim(self, x: int, y: int) -> bool:
        return self.delta_table[self.join_table[x][y]][x] == y

    # -- presentation ------------------------------------------------------

    @property
    def algebra_id(self) -> str:
        return self.name or f"cubic{self.size}"

    def ref(self, index: int) -> ElementRef:
        if not 0 <= index < self.size:
            raise IndexError(f"element index {index} out of range")
        return ElementRef(self.algebra_id, index)

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def up_set(self, x: int) -> frozenset[int]:
        return frozenset(_bits(self._up[x]))

    def down_set(self, x: int) -> frozenset[int]:
        return frozenset(_bits(self._down[x]))

    def __repr__(self):
        tag = self.name or "?"
        return f"CubicAlgebra({tag}, size={self.size})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _glb(lower: int, down: tuple[int, ...]) -> int:
    """Greatest element of a lower-bound set, or UNDEFINED."""
    m = lower
    while m:
        low = m & -m
        z = low.bit_length() - 1
        if lower & ~down[z] == 0:
            return z
        m ^= low
    return UNDEFINED


def _lub(upper: int, up: tuple[int, ...]) -> int:
    m = upper
    while m:
        low = m & -m
        z = low.bit_length() - 1
        if upper & ~up[z] == 0:
            return z
        m ^= low
    return UNDEFINED


# -- spec-level operation surface (accepts ints or ElementRefs) -----------

def join(algebra: CubicAlgebra, x, y) -> int:
    return algebra.join(as_index(algebra, x), as_index(algebra, y))


def meet(algebra: CubicAlgebra, x, y) -> int | None:
    return algebra.meet(as_index(algebra, x), as_index(algebra, y))


def delta(algebra: CubicAlgebra, x, y) -> int:
    return algebra.delta(as_index(algebra, x), as_index(algebra, y))


def implies(algebra: CubicAlgebra, x, y) -> int:
    return algebra.implies(as_index(algebra, x), as_index(algebra, y))


def caret(algebra: CubicAlgebra, x, y) -> int | None:
    return algebra.caret(as_index(algebra, x), as_index(algebra, y))


def star(algebra: CubicAlgebra, x, y) -> int:
    return algebra.star(as_index(algebra, x), as_index(algebra, y))


def preceq(algebra: CubicAlgebra, x, y) -> bool:
    return algebra.preceq(as_index(algebra, x), as_index(algebra, y))


def sim(algebra: CubicAlgebra, x, y) -> bool:
    return algebra.sim(as_index(algebra, x), as_index(algebra, y))


# -- model checking --------------------------------------------------------

def check_cubic_axioms(algebra: CubicAlgebra,
                       witness_policy: str = "first") -> AxiomReport:
    """Exhaustively check the join-semilattice law and the cubic axioms.

    Axiom ids in the report:

    * ``join-lub`` - the join table is the least upper bound of the order
    * ``a`` - for x <= y: delta(y,x) v x = y
    * ``b`` - for x <= y <= z: delta(z, delta(y,x)) = delta(delta(z,y), delta(z,x))
    * ``c`` - for x <= y: delta(y, delta(y,x)) = x
    * ``d`` - for x <= y <= z: delta(z,x) <= delta(z,y)
    * ``e`` - (x -> y) -> y = x v y
    * ``f`` - x -> (y -> z) = y -> (x -> z)

    A witness is the tuple of quantified elements, scanned in ascending
    index order, so the first witness is deterministic.
    """
    n = algebra.size
    leq = algebra.leq_table
    jn = algebra.join_table
    dl = algebra.delta_table
    one = algebra.one
    up = algebra._up
    out = _Witnesses(witness_policy)

    def d(x, y):
        # guarded reflection: None when outside the order domain
        return dl[x][y] if leq[y][x] else None

    def imp(x, y):
        t = d(jn[x][y], y)
        if t is None:
            return None
        t = d(one, t)
        if t is None:
            return None
        return jn[t][y]

    for x in range(n):
        for y in range(n):
            if jn[x][y] != _lub(up[x] & up[y], up):
                if out.add("join-lub", (x, y)):
                    return out.report()

    for x in range(n):
        for y in range(n):
            if not leq[x][y]:
                continue
            if jn[dl[y][x]][x] != y:
                if out.add("a", (x, y)):
                    return out.report()
            t = d(y, dl[y][x])
            if t is None or t != x:
                if out.add("c", (x, y)):
                    return out.report()

    for x in range(n):
        for y in range(n):
            if not leq[x][y]:
                continue
            for z in range(n):
                if not leq[y][z]:
                    continue
                lhs = d(z, dl[y][x])
                r = d(z, x)
                s = d(z, y)
                rhs = d(s, r) if (r is not None and s is not None) else None
                if lhs is None or rhs is None or lhs != rhs:
                    if out.add("b", (x, y, z)):
                        return out.report()
                if r is None or s is None or not leq[r][s]:
                    if out.add("d", (x, y, z)):
                        return out.report()

    for x in range(n):
        for y in range(n):
            t = imp(x, y)
            u = imp(t, y) if t is not None else None
            if u is None or u != jn[x][y]:
                if out.add("e", (x, y)):
                    return out.report()

    for x in range(n):
        for y in range(n):
            for z in range(n):
                yz = imp(y, z)
                xz = imp(x, z)
                lhs = imp(x, yz) if yz is not None else None
                rhs = imp(y, xz) if xz is not None else None
                if lhs is None or rhs is None or lhs != rhs:
                    if out.add("f", (x, y, z)):
                        return out.report()

    return out.report()


def check_mr_axiom(algebra: CubicAlgebra,
                   witness_policy: str = "first") -> AxiomReport:
    """Check the meet-existence axiom: for a,b < x,
    delta(x,a) v b < x iff the meet of a and b does not exist.

    Witnesses are (x, a, b) triples; the algebra is assumed to already
    pass :func:`check_cubic_axioms`.
    """
    n = algebra.size
    leq = algebra.leq_table
    jn = algebra.join_table
    dl = algebra.delta_table
    out = _Witnesses(witness_policy)
    for x in range(n):
        for a in range(n):
            if a == x or not leq[a][x]:
                continue
            for b in range(n):
                if b == x or not leq[b][x]:
                    continue
                strictly_below = jn[dl[x][a]][b] != x
                if strictly_below != (algebra.meet(a, b) is None):
                    if out.add("mr", (x, a, b)):
                        return out.report()
    return out.report()


def caret_total(algebra: CubicAlgebra) -> bool:
    """Whether the signed meet is defined on every pair."""
    return all(
        algebra.caret(x, y) is not None
        for x in range(algebra.size)
        for y in range(algebra.size)
    )


def replay_witness(algebra: CubicAlgebra, axiom_id: str,
                   witness: tuple[int, ...]) -> bool:
    """Re-run one axiom instance; True means the witness really violates it."""
    if axiom_id == "mr":
        report = check_mr_axiom(algebra, witness_policy="all")
    else:
        report = check_cubic_axioms(algebra, witness_policy="all")
    return (axiom_id, tuple(witness)) in report.violations


# -- subalgebras -----------------------------------------------------------

class Subalgebra:
    """A join- and reflection-closed subset reindexed as its own algebra."""

    def __init__(self, parent: CubicAlgebra, members, *, name: str = ""):
        members = tuple(sorted(set(members)))
        if not members:
            raise NotClosed("subalgebra must be nonempty")
        if parent.one not in members:
            raise NotClosed("subalgebra must contain the top element")
        index = {m: i for i, m in enumerate(members)}
        for x in members:
            for y in members:
                j = parent.join(x, y)
                if j not in index:
                    raise NotClosed("not closed under join", witness=(x, y))
                if parent.leq(y, x) and parent.delta(x, y) not in index:
                    raise NotClosed("not closed under delta", witness=(x, y))
        n = len(members)
        leq = [[1 if parent.leq(members[i], members[j]) else 0 for j in range(n)]
               for i in range(n)]
        jn = [[index[parent.join(members[i], members[j])] for j in range(n)]
              for i in range(n)]
        dl = [[index[parent.delta(members[i], members[j])]
               if parent.leq(members[j], members[i]) else UNDEFINED
               for j in range(n)] for i in range(n)]
        labels = tuple(parent.label(m) for m in members)
        self.parent = parent
        self.members = members
        self.index = index
        self.algebra = CubicAlgebra(
            size=n, leq_table=tuple(map(tuple, leq)),
            join_table=tuple(map(tuple, jn)), delta_table=tuple(map(tuple, dl)),
            one=index[parent.one], labels=labels,
            name=name or f"{parent.algebra_id}|{len(members)}",
        )

    def to_parent(self, i: int) -> int:
        return self.members[i]

    def to_sub(self, x: int) -> int:
        return self.index[x]

    def __repr__(self):
        return f"Subalgebra({self.parent.algebra_id}, |members|={len(self.members)})"


def induced_subalgebra(parent: CubicAlgebra, members, *, name: str = "") -> Subalgebra:
    return Subalgebra(parent, members, name=name)


def is_upward_closed(algebra: CubicAlgebra, members) -> bool:
    members = set(members)
    return all(algebra.up_set(x) <= members for x in members)


# -- localization -----------------------------------------------------------

@dataclass(frozen=True)
class Localization:
    """The part of an algebra reachable above a point by reflections.

    ``members`` is both the set of reflections of elements above ``a`` and
    the set of elements that dominate ``a`` in the reflection order; the
    coordinate maps ``k_map``/``l_map`` place each member inside the
    interval above ``a`` and are jointly injective onto the pairs
    p >= q >= a.
    """

    base: CubicAlgebra
    a: int
    members: tuple[int, ...]
    k_map: dict
    l_map: dict

    @property
    def point(self) -> ElementRef:
        return self.base.ref(self.a)

    @cached_property
    def subalgebra(self) -> Subalgebra:
        return Subalgebra(self.base, self.members,
                          name=f"{self.base.algebra_id}@{self.a}")


@lru_cache(maxsize=None)
def localize(algebra: CubicAlgebra, a) -> Localization:
    """Compute the localization at ``a`` and verify all its laws."""
    a = as_index(algebra, a)
    via_delta = set()
    for x in algebra.elements():
        if not algebra.leq(a, x):
            continue
        for y in algebra.elements():
            if algebra.leq(x, y):
                via_delta.add(algebra.delta(y, x))
    via_rel = {x for x in algebra.elements() if algebra.preceq(a, x)}
    if via_delta != via_rel:
        raise InvalidAlgebra(
            f"localization routes disagree at {a}: "
            f"{sorted(via_delta ^ via_rel)}"
        )
    members = tuple(sorted(via_delta))
    one = algebra.one
    k_map, l_map = {}, {}
    for y in members:
        k_map[y] = algebra.implies(algebra.join(algebra.delta(one, y), a), a)
        l_map[y] = algebra.join(y, a)
    seen = {}
    for y in members:
        k, l = k_map[y], l_map[y]
        if not (algebra.leq(a, k) and algebra.leq(k, l)):
            raise InvalidAlgebra(f"coordinate maps out of order at {y}")
        if (l, k) in seen:
            raise InvalidAlgebra(f"coordinate maps collide: {seen[(l, k)]}, {y}")
        seen[(l, k)] = y
    expected_pairs = {
        (p, q)
        for p in algebra.elements() if algebra.leq(a, p)
        for q in algebra.elements() if algebra.leq(a, q) and algebra.leq(q, p)
    }
    if set(seen) != expected_pairs:
        raise InvalidAlgebra(f"coordinate maps miss pairs at {a}")
    loc = Localization(base=algebra, a=a, members=members,
                       k_map=k_map, l_map=l_map)
    sub = loc.subalgebra.algebra
    if not check_mr_axiom(sub).passed:
        raise InvalidAlgebra(f"localization at {a} is not an MR-algebra")
    minimal = set(sub.minimal_elements)
    for x in sub.elements():
        if x not in minimal and not any(sub.leq(m, x) for m in minimal):
            raise InvalidAlgebra(f"localization at {a} is not atomic")
    return loc


def from_pair(loc: Localization, p, q) -> int:
    """The unique member with outer coordinate p and inner coordinate q."""
    algebra = loc.base
    p = as_index(algebra, p)
    q = as_index(algebra, q)
    if not (algebra.leq(loc.a, q) and algebra.leq(q, p)):
        raise NoSuchPair(f"need {p} >= {q} >= {loc.a}")
    for y in loc.members:
        if loc.l_map[y] == p and loc.k_map[y] == q:
            return y
    raise NoSuchPair(f"no member with coordinates ({p},{q})")


# -- serialization -----------------------------------------------------------

def to_json_dict(algebra: CubicAlgebra) -> dict:
    data = {
        "carrier": algebra.size,
        "one": algebra.one,
        "leq": [list(row) for row in algebra.leq_table],
        "join": [list(row) for row in algebra.join_table],
        "delta": [list(row) for row in algebra.delta_table],
    }
    if algebra.labels is not None:
        data["labels"] = list(algebra.labels)
    if algebra.name:
        data["name"] = algebra.name
    return data


def from_json_dict(data: dict, *, strict: bool = True) -> CubicAlgebra:
    try:
        n = int(data["carrier"])
        leq = data["leq"]
        jn = data["join"]
        dl = data["delta"]
        one = int(data["one"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedTable(f"bad algebra document: {exc}") from exc
    labels = data.get("labels")
    name = data.get("name", "")
    if len(leq) != n:
        raise MalformedTable("carrier size does not match tables")
    return CubicAlgebra.from_tables(leq, jn, dl, one, labels=labels,
                                    name=name, strict=strict)


def canonical_json(data) -> str:
    """Deterministic byte-for-byte serialization used by the CLI."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True) + "\n"
