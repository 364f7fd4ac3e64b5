"""
Quantum hypermatrix algebras and their hyperdeterminants.

The algebra of shape n_1 x ... x n_m is generated by a_{i_1...i_m} subject
to the quadratic relations read off from the quantum exterior algebra:
for each axis k, the row vectors omega_i^{(k)} = sum a^{(k)}_{i alpha} x_alpha
must anticommute up to -q and square to zero.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from cache import cache
from errors import DomainError
from algebra.ncalg import (
    GenId,
    NCPoly,
    PolyBuilder,
    RelationSet,
    complement,
    ell_subset,
    inv_pair,
    inversions,
    permutations_with_length,
    shuffle_perm,
    subsets,
)
from algebra.qmatrix import QMatrixContext
from algebra.qseries import RationalFn, neg_q_pow, q_pow, qfact, v_pow

logger = logging.getLogger(__name__)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class HyperShape:
    """Per-axis dimensions (n_1, ..., n_m)."""
    dims: tuple[int, ...]

    def __post_init__(self):
        if not self.dims or any(d < 1 for d in self.dims):
            raise DomainError(f"invalid hypermatrix shape {self.dims}")

    @classmethod
    def cube(cls, n: int, m: int) -> "HyperShape":
        return cls((n,) * m)

    @property
    def m(self) -> int:
        return len(self.dims)

    def is_cubical(self) -> bool:
        return len(set(self.dims)) == 1

    @property
    def n(self) -> int:
        if not self.is_cubical():
            raise DomainError(f"shape {self.dims} is not cubical")
        return self.dims[0]

    def indices(self) -> Iterable[tuple[int, ...]]:
        return itertools.product(*(range(1, d + 1) for d in self.dims))

    def check_axis(self, k: int) -> None:
        if not 1 <= k <= self.m:
            raise DomainError(f"axis {k} outside [1, {self.m}]")

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


class HyperAlgebra:
    """Generators a_{i_1..i_m} of one shape in one tensor component."""

    def __init__(self, shape: HyperShape, component: int = 0, name: str = "a"):
        self.shape = shape
        self.component = component
        self.name = name

    @classmethod
    def cube(cls, n: int, m: int, component: int = 0, name: str = "a") -> "HyperAlgebra":
        return cls(HyperShape.cube(n, m), component, name)

    def gen(self, *index: int) -> GenId:
        if len(index) != self.shape.m or any(not 1 <= i <= d for i, d in zip(index, self.shape.dims)):
            raise DomainError(f"index {index} outside shape {self.shape}")
        return GenId(self.component, self.name, tuple(index))

    def a(self, *index: int) -> NCPoly:
        return NCPoly.of(self.gen(*index))

    def generators(self) -> list[GenId]:
        return [GenId(self.component, self.name, idx) for idx in self.shape.indices()]

    def owns(self, g: GenId) -> bool:
        return g.component == self.component and g.name == self.name and len(g.index) == self.shape.m

    def key(self) -> tuple:
        return (self.shape.dims, self.component, self.name)

    def __repr__(self) -> str:
        return f"HyperAlgebra({self.shape}, component={self.component}, name={self.name!r})"


# -- realignment -------------------------------------------------------------------

def realign_index(shape: HyperShape, k: int, index: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Multi-index -> (row i, column tuple alpha) of the k-th realignment."""
    shape.check_axis(k)
    index = tuple(index)
    if len(index) != shape.m or any(not 1 <= i <= d for i, d in zip(index, shape.dims)):
        raise DomainError(f"index {index} outside shape {shape}")
    return index[k - 1], index[: k - 1] + index[k:]


def unrealign_index(shape: HyperShape, k: int, i: int, alpha: Sequence[int]) -> tuple[int, ...]:
    shape.check_axis(k)
    alpha = tuple(alpha)
    index = alpha[: k - 1] + (i,) + alpha[k - 1:]
    if len(index) != shape.m or any(not 1 <= x <= d for x, d in zip(index, shape.dims)):
        raise DomainError(f"row {i}, column {alpha} outside shape {shape}")
    return index


def _realigned(alg: HyperAlgebra, k: int) -> Callable[[int, tuple[int, ...]], NCPoly]:
    return lambda i, alpha: NCPoly.of(alg.gen(*unrealign_index(alg.shape, k, i, alpha)))


def _splits(J: Sequence[tuple[int, int]]) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """All componentwise alpha |_| beta = J with inv(alpha, beta)."""
    out = []
    for bits in itertools.product((0, 1), repeat=len(J)):
        alpha = tuple(pair[b] for pair, b in zip(J, bits))
        beta = tuple(pair[1 - b] for pair, b in zip(J, bits))
        out.append((alpha, beta, inv_pair(alpha, beta)))
    return out


def _two_subset_products(dims: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    return list(itertools.product(*(subsets(range(1, d + 1), 2) for d in dims)))


def rea1_instance(alg: HyperAlgebra, k: int, i: int, J: Sequence[tuple[int, int]]) -> NCPoly:
    a = _realigned(alg, k)
    builder = PolyBuilder()
    for alpha, beta, inv in _splits(J):
        builder.add_poly(a(i, alpha) * a(i, beta), neg_q_pow(inv))
    return builder.build()


def rea2_instance(alg: HyperAlgebra, k: int, i: int, j: int, J: Sequence[tuple[int, int]]) -> NCPoly:
    a = _realigned(alg, k)
    q = q_pow(1)
    builder = PolyBuilder()
    for alpha, beta, inv in _splits(J):
        c = neg_q_pow(inv)
        builder.add_poly(a(j, alpha) * a(i, beta), c)
        builder.add_poly(a(i, alpha) * a(j, beta), c * q)
    return builder.build()


def axis_relations(alg: HyperAlgebra, k: int) -> list[NCPoly]:
    """Instances of both relation families for the k-th realignment."""
    alg.shape.check_axis(k)
    dims = alg.shape.dims
    if alg.shape.m < 2:
        return []
    others = [d for t, d in enumerate(dims, start=1) if t != k]
    polys = []
    for J in _two_subset_products(others):
        for i in range(1, dims[k - 1] + 1):
            polys.append(rea1_instance(alg, k, i, J))
        for i, j in subsets(range(1, dims[k - 1] + 1), 2):
            polys.append(rea2_instance(alg, k, i, j, J))
    return polys


def relations(alg: HyperAlgebra) -> RelationSet:
    """The quadratic relations of every axis realignment, deduplicated up to scalars."""
    def build() -> RelationSet:
        polys = [p for k in range(1, alg.shape.m + 1) for p in axis_relations(alg, k)]
        rels = RelationSet.from_polys(polys, f"A[{alg.shape}]")
        logger.debug(f"relations({alg}): {len(rels)} after dedup of {len(polys)}")
        return rels

    return cache.get_or_build(build, "relations", *alg.key())


def rea3_instance(alg: HyperAlgebra, s: int, K: Sequence[tuple[int, int]]) -> NCPoly:
    """Axis-s 2-minor of the 2 x ... x 2 sub-cube K."""
    i, j = K[s - 1]
    J = tuple(K[: s - 1]) + tuple(K[s:])
    a = _realigned(alg, s)
    builder = PolyBuilder()
    for alpha, beta, inv in _splits(J):
        builder.add_poly(a(i, alpha) * a(j, beta), neg_q_pow(inv))
    return builder.build()


def derived_relations_rea3(alg: HyperAlgebra) -> list[NCPoly]:
    """
    Differences of sub-cube 2-minors taken along two axes.

    For every sub-cube K = K_1 x ... x K_m with |K_t| = 2 and axes s < t,
    the element rea3(s, K) - rea3(t, K). Zero differences are dropped.
    """
    out = []
    m = alg.shape.m
    for K in _two_subset_products(alg.shape.dims):
        minors = {s: rea3_instance(alg, s, K) for s in range(1, m + 1)}
        for s, t in itertools.combinations(range(1, m + 1), 2):
            diff = minors[s] - minors[t]
            if diff:
                out.append(diff)
    return out


# -- hyperdeterminants ----------------------------------------------------------------

def _require_cubical(alg: HyperAlgebra) -> int:
    if not alg.shape.is_cubical():
        raise DomainError(f"hyperdeterminants need a cubical shape, got {alg.shape}")
    return alg.shape.n


def hyperdet_fixed(alg: HyperAlgebra, k: int = 1) -> NCPoly:
    """
    Det_q with axis k fixed to the identity.

    sum over (sigma_t)_{t != k} of (-q)^{sum l(sigma_t)} prod_j a_{sigma_1(j),...,j,...,sigma_m(j)}
    """
    n = _require_cubical(alg)
    alg.shape.check_axis(k)

    def build() -> NCPoly:
        m = alg.shape.m
        perms = permutations_with_length(n)
        builder = PolyBuilder()
        for combo in itertools.product(perms, repeat=m - 1):
            exponent = sum(length for _, length in combo)
            sigmas = [s for s, _ in combo]
            sigmas.insert(k - 1, tuple(range(1, n + 1)))
            word = tuple(
                GenId(alg.component, alg.name, tuple(sigma[j] for sigma in sigmas)) for j in range(n)
            )
            builder.add_term(word, neg_q_pow(exponent), canonical=True)
        return builder.build()

    return cache.get_or_build(build, "hyperdet_fixed", *alg.key(), k)


def hyperdet_unnormalized(alg: HyperAlgebra) -> NCPoly:
    """sum over all m-tuples of (-q)^{sum l} prod_i a_{sigma_1(i),...,sigma_m(i)}."""
    n = _require_cubical(alg)

    def build() -> NCPoly:
        perms = permutations_with_length(n)
        builder = PolyBuilder()
        for combo in itertools.product(perms, repeat=alg.shape.m):
            exponent = sum(length for _, length in combo)
            word = tuple(
                GenId(alg.component, alg.name, tuple(sigma[j] for sigma, _ in combo)) for j in range(n)
            )
            builder.add_term(word, neg_q_pow(exponent), canonical=True)
        return builder.build()

    return cache.get_or_build(build, "hyperdet_unnormalized", *alg.key())


def hyperdet_normalized(alg: HyperAlgebra) -> NCPoly:
    """The full sum divided by [n]_{q^2}!."""
    n = _require_cubical(alg)
    return hyperdet_unnormalized(alg).scale(RationalFn(1, qfact(n, 2)))


def cayley_classical(values: Mapping[tuple[int, ...], Number] | Callable[[tuple[int, ...]], Number],
                     n: int, axes: int, signed_axes: str = "all") -> Fraction:
    """
    Cayley's first hyperdeterminant of a numeric n^axes array.

    (1/n!) sum over sigma in S_n^axes of sign * prod_i a_{sigma_1(i),...}.
    ``signed_axes="all"`` signs every permutation; ``"first-half"`` signs
    only the first axes/2 of them.
    """
    if axes % 2:
        raise DomainError(f"Cayley's hyperdeterminant needs an even number of axes (got {axes})")
    if signed_axes not in ("all", "first-half"):
        raise DomainError(f"unknown sign convention {signed_axes!r}")
    lookup = values if callable(values) else values.__getitem__
    signed = axes if signed_axes == "all" else axes // 2
    perms = permutations_with_length(n)
    total = Fraction(0)
    for combo in itertools.product(perms, repeat=axes):
        sign = -1 if sum(length for _, length in combo[:signed]) % 2 else 1
        prod = Fraction(sign)
        for i in range(n):
            prod *= Fraction(lookup(tuple(sigma[i] for sigma, _ in combo)))
            if not prod:
                break
        total += prod
    factorial = 1
    for i in range(2, n + 1):
        factorial *= i
    return total / factorial


def circ_classical(B: Sequence[Sequence[Number]], values: Mapping[tuple[int, ...], Number],
                   n: int, axes: int, k: int, side: str = "left") -> dict[tuple[int, ...], Fraction]:
    """(B o_k A)_i = sum_j b_{i_k j} a_{..j..} (left) or sum_j a_{..j..} b_{j i_k} (right)."""
    out = {}
    for index in itertools.product(range(1, n + 1), repeat=axes):
        total = Fraction(0)
        for j in range(1, n + 1):
            moved = index[: k - 1] + (j,) + index[k:]
            b = B[index[k - 1] - 1][j - 1] if side == "left" else B[j - 1][index[k - 1] - 1]
            total += Fraction(b) * Fraction(values[moved])
        out[index] = total
    return out


def contract_classical(A: Mapping[tuple[int, ...], Number], axes_a: int, k: int,
                       B: Mapping[tuple[int, ...], Number], axes_b: int, l: int,
                       n: int) -> dict[tuple[int, ...], Fraction]:
    """A_k o_l B: sum over the shared index; A's remaining axes first, then B's."""
    out = {}
    for ia in itertools.product(range(1, n + 1), repeat=axes_a - 1):
        for ib in itertools.product(range(1, n + 1), repeat=axes_b - 1):
            total = Fraction(0)
            for j in range(1, n + 1):
                a_idx = ia[: k - 1] + (j,) + ia[k - 1:]
                b_idx = ib[: l - 1] + (j,) + ib[l - 1:]
                total += Fraction(A[a_idx]) * Fraction(B[b_idx])
            out[ia + ib] = total
    return out


# -- minors, Laplace and Pluecker builders ---------------------------------------------

def minor_xi(alg: HyperAlgebra, *I: Sequence[int]) -> NCPoly:
    """
    r-minor hyperdeterminant on the sub-hypermatrix I_1 x ... x I_m.

    The first axis is taken in increasing order; every other axis is
    permuted by a bijection of positions [1, r] onto I_t.
    """
    if len(I) != alg.shape.m:
        raise DomainError(f"need {alg.shape.m} index sets, got {len(I)}")
    sets = [tuple(sorted(s)) for s in I]
    r = len(sets[0])
    if any(len(s) != r for s in sets):
        raise DomainError(f"index sets of different sizes: {sets}")
    for s, d in zip(sets, alg.shape.dims):
        if len(set(s)) != len(s) or any(not 1 <= x <= d for x in s):
            raise DomainError(f"index set {s} is not a subset of [1, {d}]")
    if r == 0:
        return NCPoly.one()

    def build() -> NCPoly:
        perms = permutations_with_length(r)
        builder = PolyBuilder()
        for combo in itertools.product(perms, repeat=alg.shape.m - 1):
            exponent = sum(length for _, length in combo)
            word = tuple(
                GenId(alg.component, alg.name,
                      (sets[0][i],) + tuple(s[sigma[i] - 1] for s, (sigma, _) in zip(sets[1:], combo)))
                for i in range(r)
            )
            builder.add_term(word, neg_q_pow(exponent), canonical=True)
        return builder.build()

    return cache.get_or_build(build, "minor_xi", *alg.key(), tuple(sets))


def laplace_row_poly(alg: HyperAlgebra, rows: Sequence[int]) -> NCPoly:
    """Row-permuted fixed-axis sum minus its claimed value (0 on repeats)."""
    n = _require_cubical(alg)
    rows = tuple(rows)
    if len(rows) != n or any(not 1 <= j <= n for j in rows):
        raise DomainError(f"need {n} row indices in [1, {n}], got {rows}")
    perms = permutations_with_length(n)
    builder = PolyBuilder()
    for combo in itertools.product(perms, repeat=alg.shape.m - 1):
        exponent = sum(length for _, length in combo)
        word = tuple(
            GenId(alg.component, alg.name, (rows[i],) + tuple(sigma[i] for sigma, _ in combo))
            for i in range(n)
        )
        builder.add_term(word, neg_q_pow(exponent), canonical=True)
    lhs = builder.build()
    if len(set(rows)) < n:
        return lhs
    return lhs - hyperdet_fixed(alg, 1).scale(neg_q_pow(inversions(rows)))


def laplace_minor_poly(alg: HyperAlgebra, r: int, I1: Sequence[int]) -> NCPoly:
    """Det minus the r-minor Laplace expansion along the first-axis set I1."""
    n = _require_cubical(alg)
    I1 = tuple(sorted(I1))
    if len(I1) != r or not 0 <= r <= n or any(not 1 <= x <= n for x in I1):
        raise DomainError(f"I1={I1} is not an {r}-subset of [1, {n}]")
    universe = range(1, n + 1)
    I1c = complement(I1, universe)
    builder = PolyBuilder()
    for rest in itertools.product(subsets(universe, r), repeat=alg.shape.m - 1):
        exponent = sum(ell_subset(S) for S in rest) - ell_subset(I1)
        comp = [complement(S, universe) for S in rest]
        term = minor_xi(alg, I1, *rest) * minor_xi(alg, I1c, *comp)
        builder.add_poly(term, neg_q_pow(exponent))
    return hyperdet_fixed(alg, 1) - builder.build()


PLUECKER_VARIANTS = ("thp1_a", "thp1_b", "thp3")


def pluecker_poly(alg: HyperAlgebra, variant: str, r: int) -> NCPoly:
    """
    Quadratic minor identities on a (2n)^m hypermatrix.

    With I = [1, n], I' = [n+1, 2n] and K_t ranging over n-subsets of
    [1, 2n] (t >= 2) with K_2 containing [1, r]:

      thp1_a: sum (-q)^{sum l(sigma_K)} xi(I, K) xi(I, K')
      thp1_b: sum (-q)^{-sum l(sigma_K)} xi(I, K') xi(I, K)
      thp3:   sum (-q)^{sum l} xi(I', K) xi(I, K')
              - (-q)^{n^2 - 2nr} sum (-q)^{sum (n^2 - l)} xi(I, K') xi(I', K)

    where K' is the complement and sigma_K the shuffle of K.
    """
    N = _require_cubical(alg)
    if variant not in PLUECKER_VARIANTS:
        raise DomainError(f"unknown variant {variant!r}; expected one of {PLUECKER_VARIANTS}")
    if N % 2:
        raise DomainError(f"first axis range must be even (got {N})")
    n = N // 2
    if not 1 <= r < n:
        raise DomainError(f"need 1 <= r < n (got r={r}, n={n})")
    if alg.shape.m < 2:
        raise DomainError("Pluecker identities need at least two axes")

    universe = range(1, N + 1)
    I, Ip = tuple(range(1, n + 1)), tuple(range(n + 1, N + 1))
    head = set(range(1, r + 1))
    choices = [
        [K for K in subsets(universe, n) if t > 0 or head <= set(K)]
        for t in range(alg.shape.m - 1)
    ]
    first = PolyBuilder()
    second = PolyBuilder()
    for K in itertools.product(*choices):
        Kc = tuple(complement(S, universe) for S in K)
        ell = sum(shuffle_perm(S, N).length for S in K)
        if variant == "thp1_a":
            first.add_poly(minor_xi(alg, I, *K) * minor_xi(alg, I, *Kc), neg_q_pow(ell))
        elif variant == "thp1_b":
            first.add_poly(minor_xi(alg, I, *Kc) * minor_xi(alg, I, *K), neg_q_pow(-ell))
        else:
            first.add_poly(minor_xi(alg, Ip, *K) * minor_xi(alg, I, *Kc), neg_q_pow(ell))
            co_ell = (alg.shape.m - 1) * n * n - ell
            second.add_poly(minor_xi(alg, I, *Kc) * minor_xi(alg, Ip, *K), neg_q_pow(co_ell))
    if variant != "thp3":
        return first.build()
    return first.build() - second.build().scale(neg_q_pow(n * n - 2 * n * r))


# -- maps into tensor products ------------------------------------------------------------

def phi_contexts(n: int, m: int) -> list[QMatrixContext]:
    return [QMatrixContext(n, c) for c in range(m)]


def phi_map(p: NCPoly, alg: HyperAlgebra) -> NCPoly:
    """a_{i_1..i_2m} -> a_{i_1 i_2} (x) ... (x) a_{i_{2m-1} i_2m}, components 0..m-1."""
    if alg.shape.m % 2:
        raise DomainError(f"phi needs an even number of axes (got {alg.shape.m})")
    _require_cubical(alg)
    m = alg.shape.m // 2
    images = {
        g: NCPoly.of(*(GenId(t, "a", (g.index[2 * t], g.index[2 * t + 1])) for t in range(m)))
        for g in alg.generators()
    }
    return p.substitute(images)


def delta_targets(alg: HyperAlgebra, split: int) -> tuple[HyperAlgebra, HyperAlgebra]:
    n = _require_cubical(alg)
    total = alg.shape.m
    if not 1 <= split < total:
        raise DomainError(f"split {split} must lie in [1, {total - 1}]")
    return (HyperAlgebra.cube(n, split + 1, component=0),
            HyperAlgebra.cube(n, total - split + 1, component=1))


def delta_split(p: NCPoly, alg: HyperAlgebra, split: int) -> NCPoly:
    """a_{alpha beta} -> sum_j a_{alpha j} (x) a_{j beta} with |alpha| = split."""
    left, right = delta_targets(alg, split)
    n = alg.shape.n
    images = {}
    for g in alg.generators():
        alpha, beta = g.index[:split], g.index[split:]
        images[g] = sum(
            (NCPoly.of(left.gen(*alpha, j), right.gen(j, *beta)) for j in range(1, n + 1)),
            NCPoly.zero(),
        )
    return p.substitute(images)


def coaction_targets(alg: HyperAlgebra, side: str) -> tuple[QMatrixContext, HyperAlgebra]:
    """(Mat_q context, relabeled hyper algebra); left puts Mat_q in component 0."""
    n = _require_cubical(alg)
    if side == "left":
        return QMatrixContext(n, 0), HyperAlgebra(alg.shape, 1, alg.name)
    if side == "right":
        return QMatrixContext(n, 1), HyperAlgebra(alg.shape, 0, alg.name)
    raise DomainError(f"side must be 'left' or 'right', got {side!r}")


def coaction(p: NCPoly, alg: HyperAlgebra, side: str, k: int = 1) -> NCPoly:
    """
    Left: a^{(k)}_{i alpha} -> sum_j g_{ij} (x) a^{(k)}_{j alpha}.
    Right: a^{(k)}_{i alpha} -> sum_j a^{(k)}_{j alpha} (x) g_{ji}.
    """
    alg.shape.check_axis(k)
    ctx, target = coaction_targets(alg, side)
    n = alg.shape.n
    images = {}
    for g in alg.generators():
        i, alpha = realign_index(alg.shape, k, g.index)
        terms = []
        for j in range(1, n + 1):
            moved = target.gen(*unrealign_index(alg.shape, k, j, alpha))
            if side == "left":
                terms.append(NCPoly.of(ctx.gen(i, j), moved))
            else:
                terms.append(NCPoly.of(moved, ctx.gen(j, i)))
        images[g] = sum(terms, NCPoly.zero())
    return p.substitute(images)


# -- U_q(gl_n) actions --------------------------------------------------------------------

@dataclass(frozen=True)
class WeightVector:
    """lambda = sum coords[i] eps_{i+1}, coordinates in (1/2)Z."""
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coords)
        if any((2 * c).denominator != 1 for c in coords):
            raise DomainError(f"weights must be half-integers: {self.coords}")
        object.__setattr__(self, "coords", coords)

    def pair(self, i: int) -> Fraction:
        return self.coords[i - 1]

    def total(self) -> Fraction:
        return sum(self.coords, Fraction(0))


UqGenerator = Union[tuple[str, int], WeightVector]


def _k_exponent(k: int, i: int) -> int:
    """v-exponent of K = q^{-(eps_k - eps_{k+1})/2} on the basis index i."""
    return -((1 if i == k else 0) - (1 if i == k + 1 else 0))


def uq_action(x: UqGenerator, side: str, p: NCPoly, alg: HyperAlgebra,
              twist: tuple[int, int] = (1, 1)) -> NCPoly:
    """
    Action of e_k, f_k or q^lambda on the hyper algebra.

    The left action moves the LAST index, the right action the FIRST.
    Products use Delta(x) = x (x) K^{s1} + K^{s2} (x) x with
    ``twist = (s1, s2)``; the displayed convention is (1, 1).

    Args:
        x: ("e", k), ("f", k) or a WeightVector
        side: "left" or "right"
    """
    if side not in ("left", "right"):
        raise DomainError(f"side must be 'left' or 'right', got {side!r}")
    n = _require_cubical(alg)
    pos = -1 if side == "left" else 0

    if isinstance(x, WeightVector):
        if len(x.coords) != n:
            raise DomainError(f"weight of length {len(x.coords)} for n={n}")
        builder = PolyBuilder()
        for word, c in p.items():
            e = sum(int(2 * x.pair(g.index[pos])) for g in word if alg.owns(g))
            builder.add_term(word, c * v_pow(e), canonical=True)
        return builder.build()

    kind, k = x
    if kind not in ("e", "f") or not 1 <= k <= n - 1:
        raise DomainError(f"unknown generator {x!r} for n={n}")
    s1, s2 = twist
    lowering = (kind == "e") == (side == "left")

    def move(g: GenId) -> Optional[GenId]:
        i = g.index[pos]
        if lowering:
            if i != k + 1:
                return None
            new = k
        else:
            if i != k:
                return None
            new = k + 1
        index = list(g.index)
        index[pos] = new
        return GenId(g.component, g.name, tuple(index))

    builder = PolyBuilder()
    for word, c in p.items():
        owned = [alg.owns(g) for g in word]
        exps = [_k_exponent(k, g.index[pos]) if own else 0 for g, own in zip(word, owned)]
        for p_idx, g in enumerate(word):
            if not owned[p_idx]:
                continue
            target = move(g)
            if target is None:
                continue
            e = s2 * sum(exps[:p_idx]) + s1 * sum(exps[p_idx + 1:])
            new_word = word[:p_idx] + (target,) + word[p_idx + 1:]
            builder.add_term(new_word, c * v_pow(e), canonical=True)
    return builder.build()


# -- circle products -------------------------------------------------------------------------

def circ_product(B: Union[QMatrixContext, Sequence[Sequence[Number]]], alg: HyperAlgebra,
                 k: int) -> dict[GenId, NCPoly]:
    """
    Entries of B o_k A: a_{..i_k..} -> sum_j b_{i_k j} a_{..j..}.

    B is either a Mat_q context (its letters must live in another
    component) or a numeric n_k x n_k matrix. The result maps each
    generator of ``alg`` to its entry, ready for ``NCPoly.substitute``.
    """
    alg.shape.check_axis(k)
    size = alg.shape.dims[k - 1]
    if isinstance(B, QMatrixContext):
        if B.n != size:
            raise DomainError(f"Mat_q({B.n}) cannot act on an axis of size {size}")
        if B.component == alg.component:
            raise DomainError("B must live in a different tensor component")
        entry = lambda i, j: NCPoly.of(B.gen(i, j))
    else:
        if len(B) != size or any(len(row) != size for row in B):
            raise DomainError(f"B must be {size} x {size}")
        entry = lambda i, j: NCPoly.scalar(Fraction(B[i - 1][j - 1]))
    out = {}
    for g in alg.generators():
        i = g.index[k - 1]
        terms = []
        for j in range(1, size + 1):
            moved = g.index[: k - 1] + (j,) + g.index[k:]
            terms.append(entry(i, j) * NCPoly.of(alg.gen(*moved)))
        out[g] = sum(terms, NCPoly.zero())
    return out
