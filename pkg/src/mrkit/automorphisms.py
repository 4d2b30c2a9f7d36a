"""Automorphism groups and the inner-automorphism machinery.

Automorphism search backtracks over images of the minimal elements and
propagates forced values through joins and reflections, so the group of
a 27-element face algebra is enumerated instantly.  Everything downstream
(filter automorphisms, presentations, fixed/antifixed sets, recovery from
Boolean filters) is formula-driven with construction-time verification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import config
from .constructions import ImplicationAlgebra, build_I, pair_index
from .cubic import (
    CubicAlgebra,
    Localization,
    Subalgebra,
    as_index,
    localize,
)
from .errors import (
    CapExceeded,
    InvalidAlgebra,
    NoDecomposition,
    NotBoolean,
    NotGFilter,
    NotInner,
    NotSim,
    SplitFailure,
)
from .filters import (
    Filter,
    all_filters,
    boolean_filter_sum,
    impl_elem,
    improper_filter,
    is_F_boolean,
    is_gfilter,
)
from .functors import (
    CubicHom,
    ImplicationHom,
    check_hom,
    check_impl_hom,
    functor_C_hom,
    functor_I_hom,
    iota,
    quotient_C,
)


# -- group elements -----------------------------------------------------------

@dataclass(frozen=True)
class Automorphism:
    """A permutation of a carrier; validity is the caller's obligation
    and is established by the search or an explicit check."""

    algebra: CubicAlgebra
    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(self.algebra.size)):
            raise ValueError("not a permutation of the carrier")

    def __call__(self, x: int) -> int:
        return self.perm[x]

    @classmethod
    def identity(cls, algebra: CubicAlgebra) -> "Automorphism":
        return cls(algebra, tuple(range(algebra.size)))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.perm))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other."""
        if other.algebra != self.algebra:
            raise ValueError("automorphisms of different algebras")
        return Automorphism(self.algebra,
                            tuple(self.perm[v] for v in other.perm))

    def inverse(self) -> "Automorphism":
        inv = [0] * len(self.perm)
        for i, v in enumerate(self.perm):
            inv[v] = i
        return Automorphism(self.algebra, tuple(inv))

    def as_hom(self) -> CubicHom:
        return CubicHom(self.algebra, self.algebra, self.perm)

    def __repr__(self):
        return f"Automorphism({self.algebra.algebra_id}, {self.perm})"


def is_automorphism(algebra: CubicAlgebra, perm) -> bool:
    hom = CubicHom(algebra, algebra, tuple(perm))
    return hom.is_bijective() and check_hom(hom).passed


# -- generic backtracking isomorphism search -----------------------------------

class _Struct:
    """Order plus operation tables prepared for the search."""

    __slots__ = ("n", "up", "down", "totals", "partials", "consts", "sigs")

    def __init__(self, n, up, down, totals, partials, consts):
        self.n = n
        self.up = up
        self.down = down
        self.totals = totals
        self.partials = partials
        self.consts = consts
        pop = [bin(d).count("1") for d in down]
        self.sigs = []
        for x in range(n):
            below = tuple(sorted(pop[y] for y in range(n) if down[x] >> y & 1))
            above = tuple(sorted(pop[y] for y in range(n) if up[x] >> y & 1))
            self.sigs.append((pop[x], bin(up[x]).count("1"), below, above))


def _cubic_struct(a: CubicAlgebra) -> _Struct:
    return _Struct(a.size, a._up, a._down, (a.join_table,), (a.delta_table,),
                   (a.one,))


def _impl_struct(a) -> _Struct:
    # works for any implication-algebra-like object (tables or bit ops)
    n = a.size
    up = tuple(sum(1 << y for y in range(n) if a.leq(x, y)) for x in range(n))
    down = tuple(sum(1 << y for y in range(n) if a.leq(y, x)) for x in range(n))
    jn = tuple(tuple(a.join(x, y) for y in range(n)) for x in range(n))
    imp = tuple(tuple(a.implies(x, y) for y in range(n)) for x in range(n))
    return _Struct(n, up, down, (jn, imp), (), (a.one,))


def _search(src: _Struct, dst: _Struct, limit: int | None = None) -> list[tuple[int, ...]]:
    """All structure isomorphisms src -> dst (up to ``limit``), sorted."""
    n = src.n
    if n != dst.n or sorted(src.sigs) != sorted(dst.sigs):
        return []
    candidates = [[v for v in range(n) if dst.sigs[v] == src.sigs[x]]
                  for x in range(n)]
    if any(not c for c in candidates):
        return []
    mapping = [-1] * n
    used = [False] * n
    assigned: list[int] = []
    results: list[tuple[int, ...]] = []

    def propagate(x, v) -> bool:
        queue = [(x, v)]
        while queue:
            a, b = queue.pop()
            if mapping[a] != -1:
                if mapping[a] != b:
                    return False
                continue
            if used[b] or dst.sigs[b] != src.sigs[a]:
                return False
            for c in assigned:
                w = mapping[c]
                if (src.up[a] >> c & 1) != (dst.up[b] >> w & 1):
                    return False
                if (src.up[c] >> a & 1) != (dst.up[w] >> b & 1):
                    return False
            mapping[a] = b
            used[b] = True
            assigned.append(a)
            for c in list(assigned):
                w = mapping[c]
                for ts, td in zip(src.totals, dst.totals):
                    queue.append((ts[a][c], td[b][w]))
                    queue.append((ts[c][a], td[w][b]))
                for ps, pd in zip(src.partials, dst.partials):
                    for (r, rv) in ((ps[a][c], pd[b][w]), (ps[c][a], pd[w][b])):
                        if (r == -1) != (rv == -1):
                            return False
                        if r != -1:
                            queue.append((r, rv))
        return True

    def undo(depth):
        while len(assigned) > depth:
            a = assigned.pop()
            used[mapping[a]] = False
            mapping[a] = -1

    minimals = [x for x in range(n) if src.down[x] == 1 << x]
    branch_order = minimals + [x for x in range(n) if x not in set(minimals)]

    depth0 = len(assigned)
    for cs, cd in zip(src.consts, dst.consts):
        if not propagate(cs, cd):
            undo(depth0)
            return []

    def search() -> bool:
        x = next((t for t in branch_order if mapping[t] == -1), None)
        if x is None:
            results.append(tuple(mapping))
            return limit is not None and len(results) >= limit
        for v in candidates[x]:
            if used[v]:
                continue
            depth = len(assigned)
            if propagate(x, v):
                if search():
                    return True
            undo(depth)
        return False

    search()
    verified = [m for m in results if _verify_map(src, dst, m)]
    verified.sort()
    return verified


def _verify_map(src: _Struct, dst: _Struct, m: tuple[int, ...]) -> bool:
    n = src.n
    for x in range(n):
        for y in range(n):
            if (src.up[x] >> y & 1) != (dst.up[m[x]] >> m[y] & 1):
                return False
            for ts, td in zip(src.totals, dst.totals):
                if m[ts[x][y]] != td[m[x]][m[y]]:
                    return False
            for ps, pd in zip(src.partials, dst.partials):
                r, rv = ps[x][y], pd[m[x]][m[y]]
                if (r == -1) != (rv == -1) or (r != -1 and m[r] != rv):
                    return False
    return all(m[c] == d for c, d in zip(src.consts, dst.consts))


@lru_cache(maxsize=None)
def enumerate_aut(algebra: CubicAlgebra) -> tuple[Automorphism, ...]:
    """The full automorphism group, sorted by permutation array."""
    if algebra.size > config.max_carrier():
        raise CapExceeded(f"carrier {algebra.size} exceeds the search cap")
    struct = _cubic_struct(algebra)
    perms = _search(struct, struct)
    return tuple(Automorphism(algebra, p) for p in perms)


def find_isomorphism(a: CubicAlgebra, b: CubicAlgebra) -> tuple[int, ...] | None:
    """An isomorphism between two cubic algebras, or None."""
    if max(a.size, b.size) > config.max_carrier():
        raise CapExceeded("carrier exceeds the search cap")
    found = _search(_cubic_struct(a), _cubic_struct(b), limit=1)
    return found[0] if found else None


@lru_cache(maxsize=None)
def enumerate_impl_aut(algebra) -> tuple[ImplicationHom, ...]:
    if algebra.size > config.max_carrier():
        raise CapExceeded(f"carrier {algebra.size} exceeds the search cap")
    struct = _impl_struct(algebra)
    return tuple(ImplicationHom(algebra, algebra, p)
                 for p in _search(struct, struct))


def find_impl_isomorphism(a, b) -> tuple[int, ...] | None:
    found = _search(_impl_struct(a), _impl_struct(b), limit=1)
    return found[0] if found else None


# -- inner automorphisms --------------------------------------------------------

def is_inner(algebra: CubicAlgebra, phi: Automorphism) -> bool:
    """Inner means the collapse of the map is the identity: every element
    is reflection-equivalent to its image."""
    return all(algebra.sim(x, phi.perm[x]) for x in algebra.elements())


@lru_cache(maxsize=None)
def inner_group(algebra: CubicAlgebra) -> tuple[Automorphism, ...]:
    """The inner automorphisms, verified to be an abelian normal
    2-torsion subgroup."""
    auts = enumerate_aut(algebra)
    inner = tuple(phi for phi in auts if is_inner(algebra, phi))
    perms = {phi.perm for phi in inner}
    ident = Automorphism.identity(algebra)
    if ident.perm not in perms:
        raise InvalidAlgebra("inner automorphisms miss the identity")
    for phi in inner:
        if phi.compose(phi).perm != ident.perm:
            raise InvalidAlgebra("inner automorphism is not an involution")
        for psi in inner:
            if phi.compose(psi).perm not in perms:
                raise InvalidAlgebra("inner automorphisms not closed")
            if phi.compose(psi).perm != psi.compose(phi).perm:
                raise InvalidAlgebra("inner automorphisms not commutative")
        for psi in auts:
            conj = psi.compose(phi).compose(psi.inverse())
            if conj.perm not in perms:
                raise InvalidAlgebra("inner automorphisms not normal")
    return inner


# -- filter coordinates -----------------------------------------------------------

@dataclass(frozen=True)
class GFilterPair:
    """Two generating filters of the same algebra, both with unique
    coordinate decompositions (the kind a filter automorphism can exist
    between)."""

    f: Filter
    g: Filter

    def __post_init__(self):
        if self.f.carrier != self.g.carrier:
            raise ValueError("filters live in different algebras")
        for filt in (self.f, self.g):
            if not is_gfilter(filt):
                raise NotGFilter(f"{sorted(filt.members)} does not generate")
            if not has_unique_coordinates(filt.carrier, filt):
                raise NotGFilter(
                    f"{sorted(filt.members)} has non-unique coordinates"
                )


@lru_cache(maxsize=None)
def alpha_beta_table(algebra: CubicAlgebra, filt: Filter) -> dict:
    """For each element the unique filter pair (alpha, beta) whose
    reflection gives it back."""
    table = {}
    members = sorted(filt.members)
    for x in algebra.elements():
        found = [(a, b) for a in members for b in members
                 if algebra.leq(b, a) and algebra.delta(a, b) == x]
        if len(found) != 1:
            raise NoDecomposition(
                f"element {x} has {len(found)} filter decompositions; "
                "filter is not generating" if not found else
                f"element {x} has {len(found)} filter decompositions"
            )
        table[x] = found[0]
    return table


def alpha_beta(algebra: CubicAlgebra, filt: Filter, x) -> tuple[int, int]:
    return alpha_beta_table(algebra, filt)[as_index(algebra, x)]


def has_unique_coordinates(algebra: CubicAlgebra, filt: Filter) -> bool:
    """Whether every element decomposes uniquely over the filter.

    Generating alone does not guarantee this (the improper filter
    generates but decomposes nothing uniquely); the filters the
    automorphism theory quantifies over are the ones passing this test.
    """
    try:
        alpha_beta_table(algebra, filt)
    except NoDecomposition:
        return False
    return True


@lru_cache(maxsize=None)
def coordinate_gfilters(algebra: CubicAlgebra) -> tuple[Filter, ...]:
    """Generating filters whose coordinate map is a bijection."""
    return tuple(f for f in all_filters(algebra)
                 if has_unique_coordinates(algebra, f))


def filter_automorphism(pair: GFilterPair) -> Automorphism:
    """The unique automorphism carrying one generating filter to the other.

    Built pointwise from the filter coordinates, then verified: it is an
    automorphism, maps f onto g, fixes every filter element up to
    equivalence, and is an involution.
    """
    algebra = pair.f.carrier
    tf = alpha_beta_table(algebra, pair.f)
    tg = alpha_beta_table(algebra, pair.g)
    beta_g = {x: tg[x][1] for x in algebra.elements()}
    perm = []
    for x in algebra.elements():
        af, bf = tf[x]
        perm.append(algebra.delta(beta_g[af], beta_g[bf]))
    phi = Automorphism(algebra, tuple(perm))
    if not is_automorphism(algebra, phi.perm):
        raise InvalidAlgebra("filter automorphism formula broke")
    if {phi.perm[x] for x in pair.f.members} != set(pair.g.members):
        raise InvalidAlgebra("filter automorphism misses the target filter")
    if not all(algebra.sim(x, phi.perm[x]) for x in pair.f.members):
        raise InvalidAlgebra("filter automorphism moves a filter class")
    if not phi.compose(phi).is_identity():
        raise InvalidAlgebra("filter automorphism is not an involution")
    return phi


# -- presentations over a generating filter ----------------------------------------

@lru_cache(maxsize=None)
def filter_implication_algebra(algebra: CubicAlgebra,
                               filt: Filter) -> tuple[ImplicationAlgebra, tuple[int, ...]]:
    """The implication algebra induced on a filter (with its member list)."""
    members = tuple(sorted(filt.members))
    index = {m: i for i, m in enumerate(members)}
    n = len(members)
    for x in members:
        for y in members:
            if algebra.implies(x, y) not in index:
                raise InvalidAlgebra("filter not closed under implication")
    leq = tuple(tuple(1 if algebra.leq(members[i], members[j]) else 0
                      for j in range(n)) for i in range(n))
    jn = tuple(tuple(index[algebra.join(members[i], members[j])]
                     for j in range(n)) for i in range(n))
    imp = tuple(tuple(index[algebra.implies(members[i], members[j])]
                      for j in range(n)) for i in range(n))
    impl = ImplicationAlgebra(
        size=n, leq_table=leq, join_table=jn, implies_table=imp,
        one=index[algebra.one],
        labels=tuple(algebra.label(m) for m in members),
        name=f"{algebra.algebra_id}^F{n}",
    )
    return impl, members


@dataclass(frozen=True)
class FPresentation:
    """Coordinates of an algebra over one of its generating filters."""

    algebra: CubicAlgebra
    filter: Filter
    impl: ImplicationAlgebra
    members: tuple[int, ...]
    hom: CubicHom

    @property
    def target(self) -> CubicAlgebra:
        return self.hom.target

    def inverse_hom(self) -> CubicHom:
        inv = [0] * len(self.hom.map)
        for i, v in enumerate(self.hom.map):
            inv[v] = i
        return CubicHom(self.target, self.algebra, tuple(inv))


@lru_cache(maxsize=None)
def f_presentation(algebra: CubicAlgebra, filt: Filter) -> FPresentation:
    """The isomorphism onto the pair algebra of a generating filter.

    x goes to the pair of joins of x and its mirror with the inner filter
    coordinate of x; on the filter itself this is the natural embedding.
    """
    if not is_gfilter(filt):
        raise NotGFilter("presentation needs a generating filter")
    impl, members = filter_implication_algebra(algebra, filt)
    index = {m: i for i, m in enumerate(members)}
    target = build_I(impl)
    idx = pair_index(impl)
    table = alpha_beta_table(algebra, filt)
    one = algebra.one
    out = []
    for x in algebra.elements():
        beta = table[x][1]
        first = algebra.join(algebra.delta(one, x), beta)
        second = algebra.join(x, beta)
        out.append(idx[(index[first], index[second])])
    hom = CubicHom(algebra, target, tuple(out))
    if not (hom.is_bijective() and check_hom(hom).passed):
        raise InvalidAlgebra("filter presentation is not an isomorphism")
    for x in filt.members:
        if hom.map[x] != idx[(impl.one, index[x])]:
            raise InvalidAlgebra("presentation disagrees with the embedding")
    return FPresentation(algebra=algebra, filter=filt, impl=impl,
                         members=members, hom=hom)


def Xi(algebra: CubicAlgebra, filt: Filter, alpha: ImplicationHom) -> ImplicationHom:
    """Transport an automorphism of the collapse to the filter.

    Conjugates through the filter presentation and the canonical
    collapse isomorphism of its pair algebra.
    """
    q = quotient_C(algebra)
    if alpha.source != q.algebra or alpha.target != q.algebra:
        raise ValueError("alpha must be an automorphism of the collapse")
    pres = f_presentation(algebra, filt)
    emb = iota(pres.impl)
    emb_inv = {c: x for x, c in enumerate(emb.map)}
    c_phi = functor_C_hom(pres.hom)
    c_phi_inv = functor_C_hom(pres.inverse_hom())
    out = tuple(
        emb_inv[c_phi.map[alpha.map[c_phi_inv.map[emb.map[t]]]]]
        for t in pres.impl.elements()
    )
    chi = ImplicationHom(pres.impl, pres.impl, out)
    if not (chi.is_bijective() and check_impl_hom(chi).passed):
        raise InvalidAlgebra("transported map is not an automorphism")
    return chi


def extend_base_automorphism(algebra: CubicAlgebra, filt: Filter,
                             chi: ImplicationHom) -> Automorphism:
    """Extend an automorphism of a generating filter to the whole algebra
    by conjugating its pair-algebra lift through the presentation."""
    pres = f_presentation(algebra, filt)
    lifted = functor_I_hom(chi)
    whole = pres.inverse_hom().compose(lifted).compose(pres.hom)
    return Automorphism(algebra, whole.map)


def factor_automorphism(algebra: CubicAlgebra, filt: Filter,
                        phi: Automorphism) -> tuple[Filter, ImplicationHom]:
    """Split an automorphism into a filter automorphism and a base part.

    Returns the image filter and the transported collapse action; the
    factorization is re-verified before returning.
    """
    image = Filter(algebra, frozenset(phi.perm[x] for x in filt.members))
    chi = Xi(algebra, filt, functor_C_hom(phi.as_hom()))
    rebuilt = filter_automorphism(GFilterPair(filt, image)).compose(
        extend_base_automorphism(algebra, filt, chi))
    if rebuilt.perm != phi.perm:
        raise InvalidAlgebra("factorization failed to rebuild the automorphism")
    return image, chi


# -- fixed and antifixed sets ------------------------------------------------------

@lru_cache(maxsize=None)
def fixed_set(algebra: CubicAlgebra, phi: Automorphism) -> frozenset:
    """Fixed points of an inner automorphism: an upward-closed MR-subalgebra."""
    if not is_inner(algebra, phi):
        raise NotInner("fixed-set analysis needs an inner automorphism")
    fixed = frozenset(x for x in algebra.elements() if phi.perm[x] == x)
    for x in fixed:
        for y in algebra.up_set(x):
            if y not in fixed:
                raise InvalidAlgebra("fixed set is not upward closed")
    sub = Subalgebra(algebra, fixed)
    from .cubic import check_mr_axiom
    if not check_mr_axiom(sub.algebra).passed:
        raise InvalidAlgebra("fixed set is not an MR-subalgebra")
    for x in algebra.elements():
        if algebra.join(x, phi.perm[x]) not in fixed:
            raise InvalidAlgebra("join with the image escapes the fixed set")
    return fixed


@lru_cache(maxsize=None)
def d_set(algebra: CubicAlgebra, phi: Automorphism) -> frozenset:
    """The mirror side of an inner automorphism, read off the collapse."""
    if not is_inner(algebra, phi):
        raise NotInner("mirror-set analysis needs an inner automorphism")
    q = quotient_C(algebra)
    fixed = fixed_set(algebra, phi)
    fixed_classes = Filter(q.algebra, frozenset(q.eta[x] for x in fixed))
    complement = impl_elem(fixed_classes, improper_filter(q.algebra))
    members = frozenset(x for x in algebra.elements()
                        if q.eta[x] in complement.members)
    one = algebra.one
    for z in members:
        if algebra.delta(one, z) not in members:
            raise InvalidAlgebra("mirror set is not reflection closed")
        if phi.perm[z] != algebra.delta(one, z):
            raise InvalidAlgebra("inner automorphism is not the mirror there")
    for x in algebra.elements():
        if algebra.join(algebra.delta(one, x), phi.perm[x]) not in members:
            raise InvalidAlgebra("mirror join escapes the mirror set")
    return members


def decompose(algebra: CubicAlgebra, phi: Automorphism, z,
              verify: bool = True) -> tuple[int, int]:
    """Split z into its fixed and mirror components.

    With ``verify`` the uniqueness of the split is confirmed by scanning
    the full component product.
    """
    z = as_index(algebra, z)
    if not is_inner(algebra, phi):
        raise NotInner("decomposition needs an inner automorphism")
    one = algebra.one
    z0 = algebra.join(z, phi.perm[z])
    z1 = algebra.join(z, algebra.delta(one, phi.perm[z]))
    fixed = fixed_set(algebra, phi)
    mirror = d_set(algebra, phi)
    if z0 not in fixed or z1 not in mirror or algebra.meet(z0, z1) != z:
        raise InvalidAlgebra(f"decomposition formulas failed at {z}")
    if verify:
        hits = [(a, b) for a in fixed for b in mirror
                if algebra.meet(a, b) == z]
        if hits != [(z0, z1)] and set(hits) != {(z0, z1)}:
            raise InvalidAlgebra(f"decomposition of {z} is not unique: {hits}")
    return z0, z1


def recover(algebra: CubicAlgebra, phi: Automorphism, z) -> int:
    """Rebuild the image of z from its split: fixed part meet mirrored part."""
    z = as_index(algebra, z)
    z0, z1 = decompose(algebra, phi, z, verify=False)
    value = algebra.meet(z0, algebra.delta(algebra.one, z1))
    if value != phi.perm[z]:
        raise InvalidAlgebra(f"recovery disagrees with the automorphism at {z}")
    return value


# -- recovery from Boolean filters ----------------------------------------------

def phi_from_boolean_filter(algebra: CubicAlgebra, filt: Filter) -> Automorphism:
    """The inner automorphism whose fixed classes are the given filter.

    The filter must be Boolean relative to the whole collapse; every
    element then splits uniquely over the preimages of the filter and its
    complement, and the map meets the fixed part with the mirrored
    complement part.
    """
    q = quotient_C(algebra)
    if filt.carrier != q.algebra:
        raise ValueError("filter must live in the collapse of the algebra")
    whole = improper_filter(q.algebra)
    if not is_F_boolean(filt, whole):
        raise NotBoolean("filter is not Boolean in the collapse")
    complement = impl_elem(filt, whole)
    s1 = frozenset(x for x in algebra.elements() if q.eta[x] in filt.members)
    s2 = frozenset(x for x in algebra.elements()
                   if q.eta[x] in complement.members)
    one = algebra.one
    if s1 & s2 != {one}:
        raise SplitFailure("component sets overlap beyond the top",
                           witness=tuple(sorted((s1 & s2) - {one})))
    perm = []
    for x in algebra.elements():
        hits = [(u, v) for u in s1 for v in s2 if algebra.meet(u, v) == x]
        if len(hits) != 1:
            raise SplitFailure(f"element {x} has {len(hits)} splits",
                               witness=(x,))
        u, v = hits[0]
        value = algebra.meet(u, algebra.delta(one, v))
        if value is None:
            raise SplitFailure(f"mirrored meet missing at {x}", witness=(x,))
        perm.append(value)
    phi = Automorphism(algebra, tuple(perm))
    if not is_automorphism(algebra, phi.perm):
        raise InvalidAlgebra("recovered map is not an automorphism")
    if not is_inner(algebra, phi):
        raise InvalidAlgebra("recovered map is not inner")
    if fixed_set(algebra, phi) != s1:
        raise InvalidAlgebra("recovered map fixes the wrong set")
    return phi


@dataclass(frozen=True)
class IntervalTranslation:
    """Translation between the intervals above two equivalent elements,
    with its extension to the whole localization."""

    algebra: CubicAlgebra
    a: int
    b: int
    localization: Localization
    interval_map: dict
    extension: dict

    def sub_automorphism(self) -> Automorphism:
        sub = self.localization.subalgebra
        perm = tuple(sub.to_sub(self.extension[sub.to_parent(i)])
                     for i in range(sub.algebra.size))
        return Automorphism(sub.algebra, perm)


def f_ab(algebra: CubicAlgebra, a, b) -> IntervalTranslation:
    """Map the interval above a onto the interval above b (for equivalent
    a, b) and extend it to an inner automorphism of the localization."""
    a = as_index(algebra, a)
    b = as_index(algebra, b)
    if not algebra.sim(a, b):
        raise NotSim(f"{a} and {b} are not reflection equivalent")
    one = algebra.one
    interval_a = sorted(algebra.up_set(a))
    interval_b = set(algebra.up_set(b))

    def base_map(w):
        value = algebra.meet(algebra.join(w, b),
                             algebra.join(algebra.delta(one, w), b))
        if value is None:
            raise InvalidAlgebra(f"interval translation undefined at {w}")
        return value

    interval_map = {w: base_map(w) for w in interval_a}
    if set(interval_map.values()) != interval_b:
        raise InvalidAlgebra("interval translation is not onto")
    if len(set(interval_map.values())) != len(interval_a):
        raise InvalidAlgebra("interval translation is not injective")

    loc = localize(algebra, a)
    extension = {}
    for z in loc.members:
        t = algebra.implies(algebra.join(algebra.delta(one, z), a), a)
        mirrored = algebra.delta(one, algebra.implies(base_map(t), b))
        value = algebra.meet(base_map(algebra.join(z, a)), mirrored)
        if value is None:
            raise InvalidAlgebra(f"extension undefined at {z}")
        extension[z] = value
    result = IntervalTranslation(algebra=algebra, a=a, b=b, localization=loc,
                                 interval_map=interval_map, extension=extension)
    sub_phi = result.sub_automorphism()
    if not is_automorphism(sub_phi.algebra, sub_phi.perm):
        raise InvalidAlgebra("extension is not an automorphism")
    if not is_inner(sub_phi.algebra, sub_phi):
        raise InvalidAlgebra("extension is not inner on the localization")
    return result


# -- the filter side of the inner group --------------------------------------------

def omega(algebra: CubicAlgebra) -> tuple[tuple[Automorphism, Filter], ...]:
    """The bijection between inner automorphisms and Boolean filters of
    the collapse, verified to be a group isomorphism for the filter sum."""
    if algebra.size > config.max_carrier():
        raise CapExceeded(f"carrier {algebra.size} exceeds the search cap")
    q = quotient_C(algebra)
    whole = improper_filter(q.algebra)
    boolean = [f for f in all_filters(q.algebra) if is_F_boolean(f, whole)]
    pairs = []
    for phi in inner_group(algebra):
        image = Filter(q.algebra,
                       frozenset(q.eta[x] for x in fixed_set(algebra, phi)))
        pairs.append((phi, image))
    values = [f.members for _, f in pairs]
    if len(set(values)) != len(values):
        raise InvalidAlgebra("filter images collide")
    if {f.members for _, f in pairs} != {f.members for f in boolean}:
        raise InvalidAlgebra("filter images miss a Boolean filter")
    for phi1, f1 in pairs:
        for phi2, f2 in pairs:
            composed = phi1.compose(phi2)
            image = next(f for p, f in pairs if p.perm == composed.perm)
            if boolean_filter_sum(f1, f2, q.algebra).members != image.members:
                raise InvalidAlgebra("filter sum disagrees with composition")
    return tuple(pairs)


# -- localization closure ------------------------------------------------------------

@dataclass(frozen=True)
class LocalClosure:
    """An upward-closed MR-subalgebra containing a seed set and closed
    under a group of automorphisms."""

    subalgebra: Subalgebra
    seeds: tuple[int, ...]
    generators: tuple[Automorphism, ...]


def generated_group(algebra: CubicAlgebra, autos) -> tuple[Automorphism, ...]:
    perms = {Automorphism.identity(algebra).perm}
    perms |= {phi.perm for phi in autos}
    while True:
        new = {tuple(p[v] for v in r) for p in perms for r in perms}
        inv = set()
        for p in perms:
            q = [0] * len(p)
            for i, v in enumerate(p):
                q[v] = i
            inv.add(tuple(q))
        new |= inv
        if new <= perms:
            break
        perms |= new
    return tuple(Automorphism(algebra, p) for p in sorted(perms))


def localize_closure(algebra: CubicAlgebra, seeds, autos) -> LocalClosure:
    """Alternate signed-meet closure and orbit closure from a seed set,
    then take everything above the result in the reflection order.

    The result is verified upward closed, MR, containing the seeds, and
    preserved by the generated group.
    """
    seeds = tuple(sorted({as_index(algebra, x) for x in seeds}))
    group = generated_group(algebra, tuple(autos))
    z = set(seeds) or {algebra.one}
    while True:
        carets = set(z)
        while True:
            new = set()
            for x in carets:
                for y in carets:
                    value = algebra.caret(x, y)
                    if value is not None:
                        new.add(value)
            if new <= carets:
                break
            carets |= new
        orbit = {phi.perm[y] for phi in group for y in carets}
        grown = carets | orbit
        if grown <= z:
            break
        z |= grown
    members = sorted(x for x in algebra.elements()
                     if any(algebra.preceq(t, x) for t in z))
    sub = Subalgebra(algebra, members)
    from .constructions import presentation_check
    from .cubic import check_mr_axiom
    if not all(x in set(members) for x in seeds):
        raise InvalidAlgebra("closure lost a seed element")
    if not all(set(algebra.up_set(x)) <= set(members) for x in members):
        raise InvalidAlgebra("closure is not upward closed")
    if not check_mr_axiom(sub.algebra).passed:
        raise InvalidAlgebra("closure is not an MR-subalgebra")
    if not presentation_check(sub.algebra, [sub.to_sub(t) for t in sorted(z)]):
        raise InvalidAlgebra("closure is not presented by its core")
    for phi in group:
        if {phi.perm[x] for x in members} != set(members):
            raise InvalidAlgebra("closure is not preserved by the group")
        perm = tuple(sub.to_sub(phi.perm[sub.to_parent(i)])
                     for i in range(sub.algebra.size))
        if not is_automorphism(sub.algebra, perm):
            raise InvalidAlgebra("restriction is not an automorphism")
    return LocalClosure(subalgebra=sub, seeds=seeds,
                        generators=tuple(autos))
