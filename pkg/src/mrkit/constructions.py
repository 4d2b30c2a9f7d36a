"""Builders for the concrete algebras the toolkit studies.

Everything here produces immutable structures with deterministic element
numbering: Boolean algebra elements are atom bitmasks in ascending order,
pair carriers are sorted lexicographically by coordinate index, and cube
faces follow the per-coordinate sign-code order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache, cached_property

from . import config
from .cubic import (
    UNDEFINED,
    CubicAlgebra,
    _glb,
    _lub,
    as_index,
)
from .errors import (
    CapExceeded,
    CaretUndefined,
    InvalidAlgebra,
    MalformedTable,
    NotAFilter,
    NotAPresentation,
    NotClosed,
)

_ATOM_NAMES = "pqrstuvw"


def _atom_name(i: int, n: int) -> str:
    if n <= len(_ATOM_NAMES):
        return _ATOM_NAMES[i]
    return f"a{i}"


@dataclass(frozen=True)
class BooleanAlgebra:
    """Powerset algebra on ``atom_count`` atoms, elements as bitmasks."""

    atom_count: int
    name: str = ""

    def __post_init__(self):
        if not 0 <= self.atom_count <= config.MAX_ATOMS:
            raise CapExceeded(f"atom count {self.atom_count} exceeds cap")

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def one(self) -> int:
        return self.size - 1

    @property
    def zero(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.size)

    def atoms(self) -> tuple[int, ...]:
        return tuple(1 << i for i in range(self.atom_count))

    def leq(self, x: int, y: int) -> bool:
        return x & ~y == 0

    def join(self, x: int, y: int) -> int:
        return x | y

    def meet(self, x: int, y: int) -> int:
        return x & y

    def complement(self, x: int) -> int:
        return self.one & ~x

    def implies(self, x: int, y: int) -> int:
        return self.complement(x) | y

    def label(self, x: int) -> str:
        if x == self.one:
            return "1"
        if x == 0:
            return "0"
        names = [_atom_name(i, self.atom_count)
                 for i in range(self.atom_count) if x >> i & 1]
        return "|".join(names)

    @property
    def algebra_id(self) -> str:
        return self.name or f"B{self.atom_count}"

    def __repr__(self):
        return f"BooleanAlgebra({self.algebra_id})"


def boolean_algebra(n: int, *, name: str = "") -> BooleanAlgebra:
    """Powerset algebra of n atoms (guarded by the atom cap)."""
    return BooleanAlgebra(atom_count=n, name=name or f"B{n}")


@dataclass(frozen=True)
class ImplicationAlgebra:
    """Finite implication algebra given by order, join and implication tables.

    Meets are partial and order-theoretic.  Construction always validates:
    the order must be a bounded-above partial order, the join table its
    least upper bound, and the implication table must satisfy

    * (x -> y) -> y = x v y
    * x -> (y -> z) = y -> (x -> z)
    * x -> x = 1
    * x v y = 1  iff  x -> y = y
    """

    size: int
    leq_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]
    implies_table: tuple[tuple[int, ...], ...]
    one: int
    # like the cubic tables, labels and name are part of identity so that
    # value-level caches never conflate differently-labelled views
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        self._validate()

    def _validate(self):
        n = self.size
        for tab, label in ((self.leq_table, "leq"), (self.join_table, "join"),
                           (self.implies_table, "implies")):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise MalformedTable(f"{label} table is not {n}x{n}")
        leq, jn, imp = self.leq_table, self.join_table, self.implies_table
        for x in range(n):
            if not leq[x][x] or not leq[x][self.one]:
                raise MalformedTable("order not reflexive or top not maximal")
            for y in range(n):
                if leq[x][y] and leq[y][x] and x != y:
                    raise MalformedTable(f"order not antisymmetric at ({x},{y})")
                for z in range(n):
                    if leq[x][y] and leq[y][z] and not leq[x][z]:
                        raise MalformedTable(f"order not transitive at ({x},{y},{z})")
        up = self._up
        for x in range(n):
            for y in range(n):
                if jn[x][y] != _lub(up[x] & up[y], up):
                    raise InvalidAlgebra(f"join({x},{y}) is not the least upper bound")
                if imp[imp[x][y]][y] != jn[x][y]:
                    raise InvalidAlgebra(f"(x->y)->y = x v y fails at ({x},{y})")
                if (jn[x][y] == self.one) != (imp[x][y] == y):
                    raise InvalidAlgebra(f"x v y = 1 iff x->y = y fails at ({x},{y})")
            if imp[x][x] != self.one:
                raise InvalidAlgebra(f"x->x = 1 fails at {x}")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if imp[x][imp[y][z]] != imp[y][imp[x][z]]:
                        raise InvalidAlgebra(f"exchange law fails at ({x},{y},{z})")

    @cached_property
    def _up(self) -> tuple[int, ...]:
        masks = []
        for x in range(self.size):
            m = 0
            for y in range(self.size):
                if self.leq_table[x][y]:
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

    def elements(self) -> range:
        return range(self.size)

    def leq(self, x: int, y: int) -> bool:
        return bool(self.leq_table[x][y])

    def join(self, x: int, y: int) -> int:
        return self.join_table[x][y]

    def implies(self, x: int, y: int) -> int:
        return self.implies_table[x][y]

    def meet(self, x: int, y: int) -> int | None:
        z = _glb(self._down[x] & self._down[y], self._down)
        return None if z == UNDEFINED else z

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    @property
    def algebra_id(self) -> str:
        return self.name or f"impl{self.size}"

    def __repr__(self):
        return f"ImplicationAlgebra({self.algebra_id}, size={self.size})"


def is_lattice(algebra) -> bool:
    """True when every pair of elements has a greatest lower bound."""
    return all(
        algebra.meet(x, y) is not None
        for x in algebra.elements()
        for y in algebra.elements()
    )


def implication_subalgebra(base, subset, *, name: str = "") -> ImplicationAlgebra:
    """The implication algebra induced on a join/implication-closed subset.

    ``base`` may be a Boolean algebra or another implication algebra; the
    subset must contain the top.  Meets are re-derived from the restricted
    order, so they may be strictly more partial than in ``base``.
    """
    members = tuple(sorted(set(subset)))
    if base.one not in members:
        raise NotClosed("subset must contain the top element")
    index = {m: i for i, m in enumerate(members)}
    for x in members:
        for y in members:
            if base.join(x, y) not in index:
                raise NotClosed("subset not closed under join", witness=(x, y))
            if base.implies(x, y) not in index:
                raise NotClosed("subset not closed under implication",
                                witness=(x, y))
    n = len(members)
    leq = tuple(tuple(1 if base.leq(members[i], members[j]) else 0
                      for j in range(n)) for i in range(n))
    jn = tuple(tuple(index[base.join(members[i], members[j])]
                     for j in range(n)) for i in range(n))
    imp = tuple(tuple(index[base.implies(members[i], members[j])]
                      for j in range(n)) for i in range(n))
    labels = tuple(base.label(m) for m in members)
    return ImplicationAlgebra(
        size=n, leq_table=leq, join_table=jn, implies_table=imp,
        one=index[base.one], labels=labels,
        name=name or f"{base.algebra_id}|{n}",
    )


# -- the pair construction ---------------------------------------------------

@dataclass(frozen=True)
class PairElement:
    """A complementary pair of implication-algebra elements."""

    first: int
    second: int


@cache
def pair_carrier(algebra) -> tuple[PairElement, ...]:
    """All pairs (a, b) with a v b = 1 whose meet exists, in lex order."""
    pairs = []
    for a in algebra.elements():
        for b in algebra.elements():
            if algebra.join(a, b) == algebra.one and algebra.meet(a, b) is not None:
                pairs.append(PairElement(a, b))
    return tuple(pairs)


@cache
def pair_index(algebra) -> dict:
    return {(p.first, p.second): i for i, p in enumerate(pair_carrier(algebra))}


@cache
def build_I(algebra, strict: bool = True) -> CubicAlgebra:
    """The cubic algebra of complementary pairs over an implication algebra.

    Order and join are coordinatewise; the reflection of (c, d) through
    (a, b) is (a ^ (b -> d), b ^ (a -> c)) with ^ the partial meet.
    """
    carrier = pair_carrier(algebra)
    n = len(carrier)
    idx = pair_index(algebra)
    leq = [[0] * n for _ in range(n)]
    jn = [[0] * n for _ in range(n)]
    dl = [[UNDEFINED] * n for _ in range(n)]
    for i, p in enumerate(carrier):
        for j, q in enumerate(carrier):
            if algebra.leq(p.first, q.first) and algebra.leq(p.second, q.second):
                leq[i][j] = 1
            jn[i][j] = idx[(algebra.join(p.first, q.first),
                            algebra.join(p.second, q.second))]
    for i, p in enumerate(carrier):
        for j, q in enumerate(carrier):
            if not leq[j][i]:
                continue
            a, b = p.first, p.second
            c, d = q.first, q.second
            u = algebra.meet(a, algebra.implies(b, d))
            v = algebra.meet(b, algebra.implies(a, c))
            if u is None or v is None or (u, v) not in idx:
                raise InvalidAlgebra(
                    f"pair reflection undefined at ({i},{j}); defect in base"
                )
            dl[i][j] = idx[(u, v)]
    labels = tuple(f"<{algebra.label(p.first)},{algebra.label(p.second)}>"
                   for p in carrier)
    return CubicAlgebra.from_tables(
        leq, jn, dl, idx[(algebra.one, algebra.one)],
        labels=labels, name=f"I({algebra.algebra_id})", strict=strict,
    )


def embed_e(algebra, a) -> PairElement:
    """The natural embedding a -> (1, a) into the pair construction."""
    return PairElement(algebra.one, a)


def embed_e_index(algebra, a) -> int:
    return pair_index(algebra)[(algebra.one, a)]


# -- cube face posets ---------------------------------------------------------

_PLUS, _MINUS, _SPAN = 1, 2, 3


@cache
def _face_codes(n: int) -> tuple[tuple[int, ...], ...]:
    # lexicographic in the per-coordinate code order +, -, *
    return tuple(itertools.product((_PLUS, _MINUS, _SPAN), repeat=n))


def _face_encode(code: tuple[int, ...]) -> int:
    word = 0
    for i, c in enumerate(code):
        word |= c << (2 * i)
    return word


def face_poset(n: int, *, strict: bool = True) -> CubicAlgebra:
    """The face algebra of the n-cube on sign vectors over {+, -, *}.

    A face is below another when its vertex set is contained in it
    (bitwise: its two-bit code is a submask); join is bitwise or; the
    reflection through a face flips the signs of the coordinates that
    face spans.
    """
    if 3 ** n > config.max_carrier():
        raise CapExceeded(f"face poset of dimension {n} exceeds the carrier cap")
    codes = _face_codes(n)
    words = [_face_encode(c) for c in codes]
    index = {w: i for i, w in enumerate(words)}
    low = sum(_PLUS << (2 * i) for i in range(n))
    high = sum(_MINUS << (2 * i) for i in range(n))
    size = len(codes)
    leq = [[0] * size for _ in range(size)]
    jn = [[0] * size for _ in range(size)]
    dl = [[UNDEFINED] * size for _ in range(size)]
    for i, f in enumerate(words):
        for j, g in enumerate(words):
            if f | g == g:
                leq[i][j] = 1
            jn[i][j] = index[f | g]
    for i, g in enumerate(words):
        span = (g & low) & ((g & high) >> 1)
        span_mask = span | (span << 1)
        for j, f in enumerate(words):
            if not leq[j][i]:
                continue
            flipped = ((f & low) << 1) | ((f & high) >> 1)
            dl[i][j] = index[(flipped & span_mask) | (f & ~span_mask)]
    sign = {_PLUS: "+", _MINUS: "-", _SPAN: "*"}
    labels = tuple("".join(sign[c] for c in code) for code in codes) \
        if n else ("()",)
    return CubicAlgebra.from_tables(
        leq, jn, dl, index[_face_encode(tuple([_SPAN] * n))],
        labels=labels, name=f"face{n}", strict=strict,
    )


def face_interval_isomorphism(n: int) -> tuple[int, ...]:
    """The coordinate map face_poset(n) -> build_I(boolean_algebra(n)).

    A sign vector goes to the pair (complement of its plus-set, union of
    its plus- and span-sets).
    """
    base = boolean_algebra(n)
    idx = pair_index(base)
    out = []
    for code in _face_codes(n):
        lo = sum(1 << i for i, c in enumerate(code) if c == _PLUS)
        hi = sum(1 << i for i, c in enumerate(code) if c != _MINUS)
        out.append(idx[(base.complement(lo), hi)])
    return tuple(out)


# -- filter algebras -----------------------------------------------------------

def filter_algebra(base, members, *, name: str = "") -> CubicAlgebra:
    """The pair algebra over a filter of a Boolean algebra.

    The filter (given as a member set) must be upward closed, meet closed
    and contain the top; the result is the pair construction over the
    induced implication algebra, and embeds upward-closed into the pair
    algebra of ``base``.
    """
    members = frozenset(_member_indices(members))
    if not members or base.one not in members:
        raise NotAFilter("filter must contain the top element")
    for x in members:
        for y in base.elements():
            if base.leq(x, y) and y not in members:
                raise NotAFilter(f"not upward closed at ({x},{y})")
        for y in members:
            m = base.meet(x, y)
            if m is not None and m not in members:
                raise NotAFilter(f"not closed under meets at ({x},{y})")
    impl = implication_subalgebra(base, members,
                                  name=name or f"{base.algebra_id}^")
    return build_I(impl)


def _member_indices(members):
    # accept a Filter object or any iterable of indices
    inner = getattr(members, "members", members)
    return (int(x) for x in inner)


# -- presentations ---------------------------------------------------------------

def presentation_check(algebra: CubicAlgebra, points) -> bool:
    """Whether every element lies in the localization at some given point."""
    points = [as_index(algebra, p) for p in points]
    return all(
        any(algebra.preceq(a, x) for a in points)
        for x in algebra.elements()
    )


def gfilter_from_presentation(algebra: CubicAlgebra, seq):
    """Generating filter obtained by signed-meet descent along a sequence.

    Folds the sequence with the caret, takes the up-closure of the chain,
    and checks that the resulting filter generates the whole algebra.
    """
    from .filters import Filter, is_gfilter, up_filter

    seq = [as_index(algebra, a) for a in seq]
    if not seq:
        raise NotAPresentation("empty sequence")
    b = seq[0]
    chain = [b]
    for a in seq[1:]:
        nxt = algebra.caret(b, a)
        if nxt is None:
            raise CaretUndefined(f"caret({b},{a}) undefined; algebra not MR?")
        b = nxt
        chain.append(b)
    members = set()
    for c in chain:
        members |= algebra.up_set(c)
    filt = Filter(algebra, frozenset(members))
    if not is_gfilter(filt):
        raise NotAPresentation(
            f"sequence {seq} does not generate the whole algebra"
        )
    assert filt.members == up_filter(algebra, b).members
    return filt
