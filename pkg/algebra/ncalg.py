"""
Free noncommutative polynomials over Q(v) in indexed generators.

Generators carry a tensor component. Letters of different components
commute with factor 1, which is modeled structurally: words are kept
stably sorted by component, so the order inside a component is the
noncommutative order and equal tensors have equal words.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from operator import attrgetter
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Union

from errors import DomainError
from algebra.qseries import LaurentV, RationalFn, ONE, ZERO, eval_at, to_rational

GEN_NAMES = ("a", "b", "c", "x")


class GenId(NamedTuple):
    """Indexed generator; tuple order is (component, name, index)."""
    component: int
    name: str
    index: tuple[int, ...]


Word = tuple[GenId, ...]
Coeff = Union[RationalFn, LaurentV, int, Fraction]

_component = attrgetter("component")


def gen(name: str, *index: int, component: int = 0) -> GenId:
    if name not in GEN_NAMES:
        raise DomainError(f"generator name must be one of {GEN_NAMES}, got {name!r}")
    return GenId(component, name, tuple(index))


def canon_word(letters: Iterable[GenId]) -> Word:
    """Stable sort by component only."""
    word = tuple(letters)
    if len(word) < 2:
        return word
    first = word[0].component
    if all(g.component == first for g in word):
        return word
    return tuple(sorted(word, key=_component))


def _concat(w1: Word, w2: Word) -> Word:
    if not w1:
        return w2
    if not w2:
        return w1
    if w1[-1].component <= w2[0].component:
        return w1 + w2
    return tuple(sorted(w1 + w2, key=_component))


def as_coeff(c: Coeff) -> RationalFn:
    value = to_rational(c)
    if value is None:
        raise DomainError(f"cannot use {type(c).__name__} as a coefficient")
    return value


def word_key(word: Word) -> tuple:
    """Deterministic term order: degree first, then word order."""
    return (len(word), word)


class NCPoly:
    """Sparse linear combination of canonical words (immutable)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Coeff] | Iterable[tuple[Word, Coeff]] | None = None):
        acc: dict[Word, RationalFn] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for word, c in items:
            w = canon_word(word)
            c = as_coeff(c)
            if w in acc:
                acc[w] = acc[w] + c
            else:
                acc[w] = c
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict[Word, RationalFn]) -> "NCPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._trusted({})

    @classmethod
    def scalar(cls, c: Coeff) -> "NCPoly":
        c = as_coeff(c)
        return cls._trusted({(): c} if c else {})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls.scalar(1)

    @classmethod
    def of(cls, *letters: GenId, coeff: Coeff = 1) -> "NCPoly":
        """Single term coeff * letters[0] ... letters[-1]."""
        return cls({tuple(letters): coeff})

    # -- inspection -------------------------------------------------------

    def items(self) -> Iterator[tuple[Word, RationalFn]]:
        return iter(self._terms.items())

    def sorted_terms(self) -> list[tuple[Word, RationalFn]]:
        return sorted(self._terms.items(), key=lambda item: word_key(item[0]))

    def words(self) -> list[Word]:
        return list(self._terms)

    def coeff(self, word: Iterable[GenId]) -> RationalFn:
        return self._terms.get(canon_word(word), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def homogeneous_components(self) -> dict[int, "NCPoly"]:
        parts: dict[int, dict[Word, RationalFn]] = {}
        for w, c in self._terms.items():
            parts.setdefault(len(w), {})[w] = c
        return {d: NCPoly._trusted(t) for d, t in sorted(parts.items())}

    def generators(self) -> set[GenId]:
        return {g for w in self._terms for g in w}

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            try:
                other = NCPoly.scalar(other)
            except DomainError:
                return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return NCPoly._trusted(out)

    __radd__ = __add__

    def __neg__(self) -> "NCPoly":
        return NCPoly._trusted({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, NCPoly):
            try:
                other = NCPoly.scalar(other)
            except DomainError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return NCPoly.scalar(other) - self

    def scale(self, c: Coeff) -> "NCPoly":
        c = as_coeff(c)
        if not c:
            return NCPoly.zero()
        if c.is_one():
            return self
        return NCPoly._trusted({w: x * c for w, x in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            try:
                return self.scale(other)
            except DomainError:
                return NotImplemented
        builder = PolyBuilder()
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                builder.add_term(_concat(w1, w2), c1 * c2, canonical=True)
        return builder.build()

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except DomainError:
            return NotImplemented

    def __truediv__(self, c: Coeff) -> "NCPoly":
        return self.scale(as_coeff(1) / as_coeff(c))

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise DomainError("negative power of a polynomial")
        result = NCPoly.one()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            try:
                other = NCPoly.scalar(other)
            except DomainError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def monic(self) -> "NCPoly":
        """Scale so that the coefficient of the smallest word is 1."""
        if not self._terms:
            return self
        lead = self._terms[min(self._terms, key=word_key)]
        return self.scale(lead.inverse())

    # -- substitution -----------------------------------------------------

    def map_letters(self, fn: Callable[[GenId], GenId]) -> "NCPoly":
        """Rename every letter; the result is re-canonicalized."""
        return NCPoly((tuple(fn(g) for g in w), c) for w, c in self._terms.items())

    def substitute(self, images: Mapping[GenId, "NCPoly"]) -> "NCPoly":
        """Algebra map sending each letter in ``images`` to its image."""
        builder = PolyBuilder()
        cache: dict[GenId, NCPoly] = {}
        for w, c in self._terms.items():
            value = NCPoly.scalar(c)
            for g in w:
                image = cache.get(g)
                if image is None:
                    image = images.get(g)
                    if image is None:
                        image = NCPoly._trusted({(g,): ONE})
                    cache[g] = image
                value = value * image
                if value.is_zero():
                    break
            builder.add_poly(value)
        return builder.build()

    def __repr__(self) -> str:
        from algebra.render import poly_to_text

        return f"NCPoly({poly_to_text(self)!r})"

    def __str__(self) -> str:
        from algebra.render import poly_to_text

        return poly_to_text(self)


class PolyBuilder:
    """Mutable accumulator for large sums of terms."""

    __slots__ = ("_acc",)

    def __init__(self):
        self._acc: dict[Word, RationalFn] = {}

    def add_term(self, word: Iterable[GenId], coeff: Coeff, canonical: bool = False) -> None:
        w = tuple(word) if canonical else canon_word(word)
        c = coeff if isinstance(coeff, RationalFn) else as_coeff(coeff)
        if not c:
            return
        if w in self._acc:
            self._acc[w] = self._acc[w] + c
        else:
            self._acc[w] = c

    def add_poly(self, p: NCPoly, coeff: Coeff = 1) -> None:
        c = as_coeff(coeff)
        for w, x in p.items():
            self.add_term(w, x * c if not c.is_one() else x, canonical=True)

    def build(self) -> NCPoly:
        return NCPoly._trusted({w: c for w, c in self._acc.items() if c})


# -- permutations -------------------------------------------------------------

def inversions(seq: Iterable[int]) -> int:
    """Number of pairs i < j with seq[i] > seq[j]."""
    s = tuple(seq)
    return sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])


@dataclass(frozen=True)
class Perm:
    """Permutation of [1, n] in one-line notation."""
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise DomainError(f"not a permutation of [1, {len(self.images)}]: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def all(cls, n: int) -> list["Perm"]:
        return [cls(p) for p in itertools.permutations(range(1, n + 1))]

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @cached_property
    def length(self) -> int:
        return inversions(self.images)

    def compose(self, other: "Perm") -> "Perm":
        """self o other, i.e. i -> self(other(i))."""
        if other.n != self.n:
            raise DomainError("composing permutations of different sizes")
        return Perm(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> "Perm":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def reversed_word(self) -> "Perm":
        return Perm(tuple(reversed(self.images)))


def permutations_with_length(n: int) -> list[tuple[tuple[int, ...], int]]:
    """All permutations of [1, n] in one-line form with their inversion counts."""
    return [(p, inversions(p)) for p in itertools.permutations(range(1, n + 1))]


# -- subset combinatorics -----------------------------------------------------

def inv_pair(alpha: tuple[int, ...], beta: tuple[int, ...]) -> int:
    """#{s : alpha_s > beta_s}."""
    if len(alpha) != len(beta):
        raise DomainError(f"arity mismatch: {alpha} vs {beta}")
    return sum(1 for a, b in zip(alpha, beta) if a > b)


def cross(S: Iterable[int], T: Iterable[int]) -> int:
    """#{(s, t) in S x T : s > t}."""
    T = tuple(T)
    return sum(1 for s in S for t in T if s > t)


def inv_blocks(I: tuple[tuple[int, ...], ...], J: tuple[tuple[int, ...], ...]) -> int:
    """Sum over axes of cross(I_t, J_t)."""
    if len(I) != len(J):
        raise DomainError(f"axis count mismatch: {len(I)} vs {len(J)}")
    return sum(cross(a, b) for a, b in zip(I, J))


def ell_subset(J: Iterable[int]) -> int:
    """sum(J) - |J|(|J|+1)/2: inversions of listing J before its complement."""
    J = tuple(J)
    return sum(J) - len(J) * (len(J) + 1) // 2


def shuffle_perm(K: Iterable[int], size: int) -> Perm:
    """K ascending, then the complement of K in [1, size] ascending."""
    K = sorted(K)
    if len(set(K)) != len(K) or any(not 1 <= x <= size for x in K):
        raise DomainError(f"{K} is not a subset of [1, {size}]")
    rest = [x for x in range(1, size + 1) if x not in K]
    return Perm(tuple(K + rest))


def subsets(values: Iterable[int], r: int) -> list[tuple[int, ...]]:
    """Sorted r-subsets in lexicographic order."""
    return list(itertools.combinations(sorted(values), r))


def complement(S: Iterable[int], universe: Iterable[int]) -> tuple[int, ...]:
    S = set(S)
    return tuple(x for x in sorted(universe) if x not in S)


# -- actions and specialization ----------------------------------------------

def act_axis_perm(tau: Perm, p: NCPoly) -> NCPoly:
    """tau . a_{i_1..i_m} = a_{i_{tau^-1(1)}, ..., i_{tau^-1(m)}}."""
    inv = tau.inverse()

    def move(g: GenId) -> GenId:
        if len(g.index) != tau.n:
            raise DomainError(f"generator {g} has arity {len(g.index)}, permutation acts on {tau.n}")
        return GenId(g.component, g.name, tuple(g.index[inv(t) - 1] for t in range(1, tau.n + 1)))

    return p.map_letters(move)


def specialize_commutative(p: NCPoly, assignment: Mapping[GenId, Union[int, Fraction]],
                           q0: Union[int, Fraction]) -> Fraction:
    """Substitute commuting rational values and evaluate coefficients at q0."""
    missing = p.generators() - set(assignment)
    if missing:
        raise DomainError(f"no value assigned to generators {sorted(missing)}")
    total = Fraction(0)
    for w, c in p.items():
        value = Fraction(1)
        for g in w:
            value *= Fraction(assignment[g])
            if value == 0:
                break
        if value:
            total += eval_at(c, q0) * value
    return total


# -- relation sets -------------------------------------------------------------

@dataclass(frozen=True)
class RelationSet:
    """
    Homogeneous quadratic relations, deduplicated up to scalar multiples.

    ``block_widths`` maps a generator name to the number of index
    positions that are pooled when grading words (1 when absent).
    """
    relations: tuple[NCPoly, ...]
    label: str = ""
    block_widths: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_polys(cls, polys: Iterable[NCPoly], label: str = "",
                   block_widths: Mapping[str, int] | None = None) -> "RelationSet":
        seen: set[NCPoly] = set()
        kept = []
        for p in polys:
            if p.is_zero():
                continue
            if not p.is_homogeneous() or p.degree != 2:
                raise DomainError(f"relations must be homogeneous of degree 2: {p}")
            key = p.monic()
            if key in seen:
                continue
            seen.add(key)
            kept.append(p)
        return cls(tuple(kept), label, tuple(sorted((block_widths or {}).items())))

    def __iter__(self):
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def union(self, *others: "RelationSet") -> "RelationSet":
        widths = dict(self.block_widths)
        polys = list(self.relations)
        labels = [self.label] if self.label else []
        for other in others:
            widths.update(other.block_widths)
            polys.extend(other.relations)
            if other.label:
                labels.append(other.label)
        return RelationSet.from_polys(polys, " + ".join(labels), widths)

    def widths(self) -> dict[str, int]:
        return dict(self.block_widths)

    def alphabet(self) -> set[GenId]:
        return {g for r in self.relations for g in r.generators()}

    def monic_set(self) -> set[NCPoly]:
        return {r.monic() for r in self.relations}
