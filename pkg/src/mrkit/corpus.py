"""Canonical instances and the seeded random corpus.

Fixed repo-wide: B1, B2 (atoms p, q), B3; C1, C2, C3 are their pair
algebras; N5 is the pair algebra of the three-element implication
algebra inside B2; FA1/FA2 are pair algebras of principal Boolean
filters.  Random implication algebras are closures of seeded subsets
of B3, fully determined by the seed.
"""

from __future__ import annotations

import random
from functools import cache

from .constructions import (
    BooleanAlgebra,
    ImplicationAlgebra,
    boolean_algebra,
    build_I,
    filter_algebra,
    implication_subalgebra,
)
from .cubic import CubicAlgebra


@cache
def b1() -> BooleanAlgebra:
    return boolean_algebra(1)


@cache
def b2() -> BooleanAlgebra:
    return boolean_algebra(2)


@cache
def b3() -> BooleanAlgebra:
    return boolean_algebra(3)


@cache
def b4() -> BooleanAlgebra:
    return boolean_algebra(4)


@cache
def i3() -> ImplicationAlgebra:
    # atoms and top of B2; p ^ q has no lower bound inside, so not a lattice
    return implication_subalgebra(b2(), {1, 2, 3}, name="I3")


@cache
def c1() -> CubicAlgebra:
    return build_I(b1())


@cache
def c2() -> CubicAlgebra:
    return build_I(b2())


@cache
def c3() -> CubicAlgebra:
    return build_I(b3())


@cache
def n5() -> CubicAlgebra:
    return build_I(i3())


@cache
def fa1() -> CubicAlgebra:
    # pair algebra of the principal filter at atom p of B2
    base = b2()
    return filter_algebra(base, {x for x in base.elements() if base.leq(1, x)},
                          name="F[p,1]B2")


@cache
def fa2() -> CubicAlgebra:
    # pair algebra of the principal filter at atom p of B3; this is the
    # finite ultrafilter device: B3 = B2 x 2 and the filter is B2 x {1}
    base = b3()
    return filter_algebra(base, {x for x in base.elements() if base.leq(1, x)},
                          name="F[p,1]B3")


def element_by_label(algebra, label: str) -> int:
    if algebra.labels is None:
        raise ValueError("algebra has no labels")
    return algebra.labels.index(label)


def mr_corpus() -> list[tuple[str, CubicAlgebra]]:
    """The MR-algebras every group/filter claim runs over."""
    return [("C1", c1()), ("C2", c2()), ("C3", c3()),
            ("FA1", fa1()), ("FA2", fa2())]


def cubic_corpus() -> list[tuple[str, CubicAlgebra]]:
    """All cubic instances, including the non-MR witness N5."""
    return mr_corpus() + [("N5", n5())]


NAMED_BASES = {
    "B1": b1, "B2": b2, "B3": b3, "B4": b4, "I3": i3,
}


def seeded_implication_algebras(seed: int, count: int,
                                max_size: int = 8) -> list[ImplicationAlgebra]:
    """Deterministic random implication subalgebras of B3.

    Subsets of B3 are sampled and closed under join and implication;
    closures larger than ``max_size`` are rejected and resampled.
    """
    rng = random.Random(seed)
    base = b3()
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 10000:
            raise RuntimeError("seeded sampling failed to converge")
        seed_set = {base.one}
        for x in base.elements():
            if rng.random() < 0.4:
                seed_set.add(x)
        closure = set(seed_set)
        while True:
            new = set()
            for x in closure:
                for y in closure:
                    new.add(base.join(x, y))
                    new.add(base.implies(x, y))
            if new <= closure:
                break
            closure |= new
        if len(closure) > max_size:
            continue
        out.append(implication_subalgebra(
            base, closure, name=f"R{seed}.{len(out)}"))
    return out
