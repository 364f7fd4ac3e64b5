"""
Quantum hyper-Pfaffians.

A Pfaffian shape (k, m, n) has generators b_I, I = I_1 x ... x I_m with each
I_t a k-subset of [1, kn]; the generator index is the concatenation of the
m sorted blocks. Sums run over block-sorted arrangements: sequences of n
disjoint increasing k-blocks covering the available values, weighted by
the inversion count of their concatenation.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

from cache import cache
from errors import DomainError
from algebra.hyperalg import HyperAlgebra, hyperdet_fixed, minor_xi
from algebra.ncalg import (
    GenId,
    NCPoly,
    PolyBuilder,
    RelationSet,
    complement,
    ell_subset,
    inv_blocks,
    inversions,
    subsets,
)
from algebra.qseries import RationalFn, neg_q_pow, q_pow, qbinom, qfact

logger = logging.getLogger(__name__)

PF_NAME = "b"


@dataclass(frozen=True)
class PfShape:
    """Block size k, axis-group count m, block count n."""
    k: int
    m: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1 or self.n < 0:
            raise DomainError(f"invalid Pfaffian shape k={self.k}, m={self.m}, n={self.n}")

    @property
    def size(self) -> int:
        return self.k * self.n

    @property
    def arity(self) -> int:
        return self.k * self.m

    def universe(self) -> tuple[int, ...]:
        return tuple(range(1, self.size + 1))

    def gen(self, index: "BlockIndex", component: int = 0) -> GenId:
        if len(index.blocks) != self.m or any(len(b) != self.k for b in index.blocks):
            raise DomainError(f"{index} does not fit shape {self}")
        if any(not 1 <= x <= self.size for b in index.blocks for x in b):
            raise DomainError(f"{index} outside [1, {self.size}]")
        return GenId(component, PF_NAME, index.flat)

    def block_indices(self) -> list["BlockIndex"]:
        return [BlockIndex(blocks) for blocks in itertools.product(subsets(self.universe(), self.k), repeat=self.m)]

    def generators(self, component: int = 0) -> list[GenId]:
        return [GenId(component, PF_NAME, I.flat) for I in self.block_indices()]

    def __str__(self) -> str:
        return f"(k={self.k}, m={self.m}, n={self.n})"


@dataclass(frozen=True)
class BlockIndex:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(b) for b in self.blocks)
        if any(any(y <= x for x, y in zip(b, b[1:])) for b in blocks):
            raise DomainError(f"blocks must be strictly increasing: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for b in self.blocks for x in b)

    @classmethod
    def from_flat(cls, flat: Sequence[int], k: int) -> "BlockIndex":
        flat = tuple(flat)
        if k < 1 or len(flat) % k:
            raise DomainError(f"index of length {len(flat)} does not split into blocks of {k}")
        return cls(tuple(flat[i:i + k] for i in range(0, len(flat), k)))


@lru_cache(maxsize=None)
def block_arrangements(values: tuple[int, ...], k: int,
                       minima_increasing: bool = False) -> tuple[tuple[tuple[tuple[int, ...], ...], int], ...]:
    """
    All block-sorted arrangements of ``values`` into blocks of size k.

    Returns (blocks, l) pairs with l the inversion count of the
    concatenated blocks. With ``minima_increasing`` only arrangements
    whose block minima increase are kept.
    """
    if len(values) % k:
        raise DomainError(f"{len(values)} values do not split into blocks of {k}")
    out = []

    def extend(rest: tuple[int, ...], acc: list[tuple[int, ...]]):
        if not rest:
            blocks = tuple(acc)
            out.append((blocks, inversions(x for b in blocks for x in b)))
            return
        for block in itertools.combinations(rest, k):
            if minima_increasing and block[0] != rest[0]:
                continue
            extend(tuple(x for x in rest if x not in block), acc + [block])

    extend(tuple(sorted(values)), [])
    return tuple(out)


Entry = Callable[[BlockIndex], NCPoly]


def _pf_expand(k: int, sets: Sequence[tuple[int, ...]], constrain_first: bool,
               entry: Optional[Entry] = None, component: int = 0) -> NCPoly:
    """
    sum over m-tuples of arrangements of (-q)^{sum l} prod_i entry(block_i).

    Without ``entry`` the product is the word of b generators.
    """
    per_axis = [block_arrangements(tuple(sets[0]), k, constrain_first)]
    per_axis += [block_arrangements(tuple(s), k) for s in sets[1:]]
    builder = PolyBuilder()
    for combo in itertools.product(*per_axis):
        exponent = sum(length for _, length in combo)
        n = len(combo[0][0])
        indices = [BlockIndex(tuple(arr[i] for arr, _ in combo)) for i in range(n)]
        if entry is None:
            word = tuple(GenId(component, PF_NAME, I.flat) for I in indices)
            builder.add_term(word, neg_q_pow(exponent), canonical=True)
        else:
            prod = NCPoly.one()
            for I in indices:
                prod = prod * entry(I)
                if not prod:
                    break
            builder.add_poly(prod, neg_q_pow(exponent))
    return builder.build()


def _check_sets(shape: PfShape, sets: Optional[Sequence[Sequence[int]]]) -> list[tuple[int, ...]]:
    if sets is None:
        return [shape.universe()] * shape.m
    sets = [tuple(sorted(s)) for s in sets]
    if len(sets) != shape.m or any(len(s) != shape.size for s in sets):
        raise DomainError(f"need {shape.m} index sets of size {shape.size}")
    return sets


def hypf_relations(shape: PfShape, sign: str = "consistent", component: int = 0) -> RelationSet:
    """
    c sum (-q)^{inv(I,J)} b_I b_J - sum (-q)^{inv(J,I)} b_J b_I over every K.

    K = K_1 x ... x K_m with |K_t| = 2k; splittings I_t |_| J_t = K_t with
    |I_t| = k and min(I_1) < min(J_1). ``sign="consistent"`` takes
    c = q^{k^2}; ``"displayed"`` takes c = (-q)^{k^2}.
    """
    if sign not in ("consistent", "displayed"):
        raise DomainError(f"unknown sign convention {sign!r}")
    k = shape.k
    if shape.size < 2 * k:
        raise DomainError(f"no 2k-subsets of [1, {shape.size}] for k={k}")

    def build() -> RelationSet:
        c = q_pow(k * k) if sign == "consistent" else neg_q_pow(k * k)
        polys = []
        for K in itertools.product(subsets(shape.universe(), 2 * k), repeat=shape.m):
            builder = PolyBuilder()
            choices = [[I for I in itertools.combinations(Kt, k)] for Kt in K]
            for I in itertools.product(*choices):
                J = tuple(complement(It, Kt) for It, Kt in zip(I, K))
                if I[0][0] > J[0][0]:
                    continue
                bI = GenId(component, PF_NAME, BlockIndex(I).flat)
                bJ = GenId(component, PF_NAME, BlockIndex(J).flat)
                builder.add_term((bI, bJ), c * neg_q_pow(inv_blocks(I, J)), canonical=True)
                builder.add_term((bJ, bI), -neg_q_pow(inv_blocks(J, I)), canonical=True)
            polys.append(builder.build())
        rels = RelationSet.from_polys(polys, f"hyPf{shape}", {PF_NAME: k})
        logger.debug(f"hypf_relations{shape}: {len(rels)} relations")
        return rels

    return cache.get_or_build(build, "hypf_relations", shape, sign, component)


def pf_prime(shape: PfShape, sets: Optional[Sequence[Sequence[int]]] = None,
             component: int = 0, entry: Optional[Entry] = None) -> NCPoly:
    """Sum with the first-axis block minima increasing."""
    sets = _check_sets(shape, sets)
    if entry is not None:
        return _pf_expand(shape.k, sets, True, entry, component)
    return cache.get_or_build(
        lambda: _pf_expand(shape.k, sets, True, None, component), "pf_prime", shape, tuple(sets), component
    )


def pf_full(shape: PfShape, sets: Optional[Sequence[Sequence[int]]] = None,
            component: int = 0, entry: Optional[Entry] = None) -> NCPoly:
    """(1/[n]_{q^{k^2}}!) times the sum over all m-tuples of arrangements."""
    sets = _check_sets(shape, sets)
    norm = RationalFn(1, qfact(shape.n, shape.k * shape.k))
    if entry is not None:
        return _pf_expand(shape.k, sets, False, entry, component).scale(norm)
    raw = cache.get_or_build(
        lambda: _pf_expand(shape.k, sets, False, None, component), "pf_sum", shape, tuple(sets), component
    )
    return raw.scale(norm)


def pf_volume_sum(shape: PfShape, component: int = 0) -> NCPoly:
    """The unnormalized sum, [n]_{q^{k^2}}! * pf_full."""
    return _pf_expand(shape.k, _check_sets(shape, None), False, None, component)


def pf_recursive(shape: PfShape, component: int = 0) -> NCPoly:
    """
    Expansion along the block holding the smallest free first-axis index.

    Exponents use ranks inside the sets still available at each level,
    which at the top level are the absolute indices.
    """
    k, m = shape.k, shape.m

    def expand(avail: tuple[tuple[int, ...], ...]) -> NCPoly:
        if not avail[0]:
            return NCPoly.one()
        builder = PolyBuilder()
        first = avail[0][0]
        choices = [[I for I in itertools.combinations(avail[0], k) if I[0] == first]]
        choices += [list(itertools.combinations(a, k)) for a in avail[1:]]
        for I in itertools.product(*choices):
            exponent = sum(ell_subset(a.index(x) + 1 for x in It) for It, a in zip(I, avail))
            rest = tuple(complement(It, a) for It, a in zip(I, avail))
            head = NCPoly.of(GenId(component, PF_NAME, BlockIndex(I).flat))
            builder.add_poly(head * expand(rest), neg_q_pow(exponent))
        return builder.build()

    return cache.get_or_build(lambda: expand((shape.universe(),) * m), "pf_recursive", shape, component)


def pf_lemma_sum(shape: PfShape, component: int = 0) -> NCPoly:
    """sum over all I of (-q)^{sum l(I_t)} b_I pf_prime(complement of I)."""
    k, m = shape.k, shape.m
    universe = shape.universe()
    rest_shape = PfShape(k, m, shape.n - 1)
    builder = PolyBuilder()
    for I in itertools.product(subsets(universe, k), repeat=m):
        exponent = sum(ell_subset(It) for It in I)
        rest = [complement(It, universe) for It in I]
        head = NCPoly.of(GenId(component, PF_NAME, BlockIndex(I).flat))
        builder.add_poly(head * pf_prime(rest_shape, rest, component), neg_q_pow(exponent))
    return builder.build()


def pf_laplace_poly(shape: PfShape, t: int, placement: str = "divide", component: int = 0) -> NCPoly:
    """
    Pf(B) - c * sum_I (-q)^{inv(I, I^c)} Pf(B_I) Pf(B_{I^c}).

    I ranges over I_1 x ... x I_m with |I_t| = kt. ``placement="multiply"``
    takes c = qbinom(n, t) in base q^{k^2}, ``"divide"`` its inverse.
    """
    if not 0 <= t <= shape.n:
        raise DomainError(f"t={t} outside [0, {shape.n}]")
    if placement not in ("multiply", "divide"):
        raise DomainError(f"unknown placement {placement!r}")
    k, m = shape.k, shape.m
    universe = shape.universe()
    left, right = PfShape(k, m, t), PfShape(k, m, shape.n - t)
    builder = PolyBuilder()
    for I in itertools.product(subsets(universe, k * t), repeat=m):
        Ic = [complement(It, universe) for It in I]
        exponent = inv_blocks(I, tuple(Ic))
        term = pf_full(left, I, component) * pf_full(right, Ic, component)
        builder.add_poly(term, neg_q_pow(exponent))
    binom = qbinom(shape.n, t, k * k)
    c = binom if placement == "multiply" else binom.inverse()
    return pf_full(shape, None, component) - builder.build().scale(c)


def compose_constant(kprime: int, p: int, n: int) -> RationalFn:
    """[pn]_{q^{k'^2}}! / (([p]_{q^{k'^2}}!)^n [n]_{q^{k^2}}!)."""
    k = p * kprime
    base = kprime * kprime
    return RationalFn(qfact(p * n, base), qfact(p, base) ** n * qfact(n, k * k))


def pf_compose_poly(kprime: int, p: int, m: int, n: int, component: int = 0) -> NCPoly:
    """
    Outer Pf^[k,m] of the inner Pfaffians Pf^[k',m](B_J), minus the constant
    times Pf^[k',m](B), with k = p k'.
    """
    if kprime < 1 or p < 1:
        raise DomainError(f"need k' >= 1 and p >= 1 (got k'={kprime}, p={p})")
    k = p * kprime
    base = PfShape(kprime, m, p * n)
    inner = PfShape(kprime, m, p)
    outer = PfShape(k, m, n)
    entry = lambda J: pf_full(inner, J.blocks, component)
    composed = pf_full(outer, None, component, entry=entry)
    return composed - pf_full(base, None, component).scale(compose_constant(kprime, p, n))


# -- bridges to hyperdeterminants ----------------------------------------------------------

def _bridge_algebra(alg: HyperAlgebra, k: int) -> int:
    if not alg.shape.is_cubical():
        raise DomainError(f"need a cubical hypermatrix, got {alg.shape}")
    size = alg.shape.n
    if size % k:
        raise DomainError(f"axis size {size} is not a multiple of k={k}")
    if alg.shape.m < 2:
        raise DomainError("the bridge needs at least two axes")
    return size // k


def bridge_c_entries(alg: HyperAlgebra, k: int, b_component: int = 1,
                     b_values: Optional[dict[GenId, NCPoly]] = None) -> dict[BlockIndex, NCPoly]:
    """
    c_I = sum_J b_J xi(J, I_1, ..., I_{m-1}) over k-subsets J.

    ``b_values`` replaces the b generators (e.g. the canonical symplectic
    choice); otherwise b_J stays a generator in ``b_component``.
    """
    n = _bridge_algebra(alg, k)
    if b_values is None and b_component == alg.component:
        raise DomainError("B must live in a different tensor component")
    universe = tuple(range(1, k * n + 1))
    out = {}
    for I in itertools.product(subsets(universe, k), repeat=alg.shape.m - 1):
        builder = PolyBuilder()
        for J in subsets(universe, k):
            b = GenId(b_component, PF_NAME, J)
            coeff = b_values.get(b, NCPoly.zero()) if b_values is not None else NCPoly.of(b)
            if coeff:
                builder.add_poly(coeff * minor_xi(alg, J, *I))
        out[BlockIndex(I)] = builder.build()
    return out


def canonical_symplectic_b(n: int, component: int = 1) -> dict[GenId, NCPoly]:
    """b_{2i-1, 2i} = 1, every other b_J = 0, for the (2, 1, n) shape."""
    shape = PfShape(2, 1, n)
    ones = {(2 * i - 1, 2 * i) for i in range(1, n + 1)}
    return {
        g: NCPoly.one() if g.index in ones else NCPoly.zero()
        for g in shape.generators(component)
    }


def pf_det_bridge_poly(alg: HyperAlgebra, k: int, b_component: int = 1) -> NCPoly:
    """Pf^[k,m-1](C) - Det_q(A) Pf^[k,1](B)."""
    n = _bridge_algebra(alg, k)
    entries = bridge_c_entries(alg, k, b_component)
    outer = PfShape(k, alg.shape.m - 1, n)
    lhs = pf_full(outer, None, alg.component, entry=entries.__getitem__)
    return lhs - hyperdet_fixed(alg, 1) * pf_full(PfShape(k, 1, n), None, b_component)


def det_as_pf_corollary_poly(alg: HyperAlgebra) -> NCPoly:
    """Det_q(A) - Pf^[2,m-1](C) with the canonical symplectic B."""
    n = _bridge_algebra(alg, 2)
    entries = bridge_c_entries(alg, 2, b_values=canonical_symplectic_b(n))
    outer = PfShape(2, alg.shape.m - 1, n)
    return hyperdet_fixed(alg, 1) - pf_full(outer, None, alg.component, entry=entries.__getitem__)


def det_pf_constant(k: int, n: int, form: str = "derived") -> RationalFn:
    """
    Constant c with Det_q(A) = c Pf^[k,m](xi_J).

    ``"derived"``: ([k]_{q^2}!)^n [n]_{q^{k^2}}! / [kn]_{q^2}!.
    ``"displayed"``: ([n]_{q^2}!)^{n-1} ([k]_q!)^n [n]_{q^{k^2}}! / (([n]_q!)^{n-1} [kn]_q!).
    """
    if form == "derived":
        return RationalFn(qfact(k, 2) ** n * qfact(n, k * k), qfact(k * n, 2))
    if form == "displayed":
        return RationalFn(
            qfact(n, 2) ** (n - 1) * qfact(k, 1) ** n * qfact(n, k * k),
            qfact(n, 1) ** (n - 1) * qfact(k * n, 1),
        )
    raise DomainError(f"unknown constant form {form!r}")


def det_as_pf_poly(k: int, m: int, n: int, form: str = "derived") -> NCPoly:
    """Det_q(A) - c Pf^[k,m](b_J) with b_J = xi(J_1, ..., J_m), A of size kn."""
    if k < 1 or m < 1 or n < 1:
        raise DomainError(f"invalid sizes k={k}, m={m}, n={n}")
    alg = HyperAlgebra.cube(k * n, m)
    entry = lambda J: minor_xi(alg, *J.blocks)
    pf = pf_full(PfShape(k, m, n), None, alg.component, entry=entry)
    return hyperdet_fixed(alg, 1) - pf.scale(det_pf_constant(k, n, form))
