"""
Bounded-degree ideal membership for homogeneous quadratic relations.

The degree-d slice of the two-sided ideal generated by degree-2 relations
is spanned by the products u.r.v with |u| + |v| = d - 2. The element is
reduced against an incrementally built echelon form of that span, either
over Q(v) (exact) or at random rational points v0 (specialized, q0 = v0^2).
"""

import heapq
import logging
import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

from config import settings
from errors import DomainError, PoleError
from models import MembershipReport, Mode, SpanDims, Verdict
from algebra.ncalg import GenId, NCPoly, RelationSet, Word, canon_word, word_key
from algebra.qseries import RationalFn, eval_at_v

logger = logging.getLogger(__name__)

Scalar = Union[RationalFn, Fraction]
Row = dict[Word, Scalar]
Grade = tuple[tuple[tuple, int], ...]


@dataclass
class MembershipQuery:
    """A homogeneous element and the relations whose ideal it is tested against."""
    element: NCPoly
    relations: RelationSet
    alphabet: frozenset[GenId] = frozenset()
    mode: Optional[Mode] = None
    samples: int = field(default_factory=lambda: settings.samples)
    seed: int = field(default_factory=lambda: settings.seed)
    max_dim: int = field(default_factory=lambda: settings.max_dim)
    max_rows: int = field(default_factory=lambda: settings.max_rows)
    threads: int = field(default_factory=lambda: settings.threads)

    def __post_init__(self):
        if not self.element.is_homogeneous():
            raise DomainError("membership needs a homogeneous element")
        if self.samples < 1:
            raise DomainError(f"samples must be >= 1 (got {self.samples})")

    def full_alphabet(self) -> list[GenId]:
        letters = set(self.alphabet) | self.relations.alphabet() | self.element.generators()
        return sorted(letters)

    def resolved_mode(self) -> Mode:
        if self.mode is not None:
            return Mode(self.mode)
        if settings.prefers_exact(self.element.degree, len(self.full_alphabet())):
            return Mode.EXACT
        return Mode.SPECIALIZE


class _Inconclusive(Exception):
    pass


# -- grading ----------------------------------------------------------------------

class _Grading:
    """Letter grades: per-position values pooled by block width, or per-name degree."""

    def __init__(self, relations: RelationSet):
        self.widths = relations.widths()
        self.fine = True
        self._memo: dict[GenId, tuple] = {}
        if not all(self._is_homogeneous(r) for r in relations):
            self.fine = False
            self._memo.clear()
        self.label = "multigraded" if self.fine else "component-degree"

    def letter(self, g: GenId) -> tuple:
        if g not in self._memo:
            if self.fine:
                w = self.widths.get(g.name, 1)
                self._memo[g] = tuple(sorted((g.component, g.name, pos // w, x) for pos, x in enumerate(g.index)))
            else:
                self._memo[g] = ((g.component, g.name),)
        return self._memo[g]

    def word(self, word: Word) -> Counter:
        out = Counter()
        for g in word:
            out.update(self.letter(g))
        return out

    def _is_homogeneous(self, p: NCPoly) -> bool:
        grades = {_freeze(self.word(w)) for w in p.words()}
        return len(grades) <= 1


def _freeze(c: Counter) -> Grade:
    return tuple(sorted((k, v) for k, v in c.items() if v))


def _subtract(a: Counter, b: Counter) -> Optional[Counter]:
    out = Counter(a)
    for key, count in b.items():
        if out[key] < count:
            return None
        out[key] -= count
    return Counter({k: v for k, v in out.items() if v})


def _words_with_grade(letters: list[tuple[GenId, tuple]], target: Counter, length: int) -> Iterator[Word]:
    """Every word of the given length whose letter grades add up to ``target``."""
    remaining = dict(target)
    needs = [(g, tuple(Counter(grade).items())) for g, grade in letters]

    def extend(prefix: list[GenId], left: int):
        if left == 0:
            if not any(remaining.values()):
                yield tuple(prefix)
            return
        for g, needed in needs:
            if any(remaining.get(key, 0) < count for key, count in needed):
                continue
            for key, count in needed:
                remaining[key] -= count
            prefix.append(g)
            yield from extend(prefix, left - 1)
            prefix.pop()
            for key, count in needed:
                remaining[key] += count

    yield from extend([], length)


# -- span rows --------------------------------------------------------------------

def _rows_for_relation(rel: NCPoly, rel_grade: Counter, target: Counter, degree: int,
                       letters: list[tuple[GenId, tuple]]) -> list[Row]:
    rest = _subtract(target, rel_grade)
    if rest is None:
        return []
    out = []
    rel_terms = list(rel.items())
    for w in _words_with_grade(letters, rest, degree - 2):
        for s in range(len(w) + 1):
            u, v = w[:s], w[s:]
            row: Row = {}
            for rw, c in rel_terms:
                key = canon_word(u + rw + v)
                value = row[key] + c if key in row else c
                if value:
                    row[key] = value
                else:
                    row.pop(key, None)
            if row:
                out.append(row)
    return out


def _span_rows(query: MembershipQuery, grading: _Grading, target: Counter, degree: int) -> list[Row]:
    letters = [(g, grading.letter(g)) for g in query.full_alphabet()]
    rels = [(r, grading.word(r.words()[0])) for r in query.relations]
    job = lambda item: _rows_for_relation(item[0], item[1], target, degree, letters)
    if query.threads > 1:
        with ThreadPoolExecutor(max_workers=query.threads) as pool:
            batches = list(pool.map(job, rels))
    else:
        batches = [job(item) for item in rels]
    seen = set()
    rows = []
    for batch in batches:
        for row in batch:
            key = frozenset(row.items())
            if key in seen:
                continue
            seen.add(key)
            rows.append(row)
            if len(rows) > query.max_rows:
                raise _Inconclusive(f"span rows exceed the limit of {query.max_rows}")
    return rows


# -- elimination ------------------------------------------------------------------

class Echelon:
    """
    Incremental sparse echelon form with unit pivots.

    A row is reduced by the pivot rows in insertion order; a pivot row
    only holds pivot columns of rows inserted after it, so the heap walk
    terminates. New pivots go to the column seen least often so far.
    """

    def __init__(self, inverse: Callable[[Scalar], Scalar]):
        self._inverse = inverse
        self.rows: list[Row] = []
        self.pivots: list[Word] = []
        self.pivot_of: dict[Word, int] = {}
        self.col_count: Counter = Counter()

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: Row) -> Row:
        row = dict(row)
        heap = [self.pivot_of[c] for c in row if c in self.pivot_of]
        heapq.heapify(heap)
        queued = set(heap)
        while heap:
            idx = heapq.heappop(heap)
            col = self.pivots[idx]
            factor = row.get(col)
            if not factor:
                continue
            for c, x in self.rows[idx].items():
                current = row.get(c)
                value = -(factor * x) if current is None else current - factor * x
                if value:
                    row[c] = value
                    j = self.pivot_of.get(c)
                    if j is not None and j not in queued:
                        queued.add(j)
                        heapq.heappush(heap, j)
                else:
                    row.pop(c, None)
        return row

    def add(self, row: Row) -> bool:
        """Insert a row; False when it was already in the span."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        pivot = min(reduced, key=lambda c: (self.col_count[c], word_key(c)))
        scale = self._inverse(reduced[pivot])
        normalized = {c: x * scale for c, x in reduced.items()}
        self.pivot_of[pivot] = len(self.rows)
        self.pivots.append(pivot)
        self.rows.append(normalized)
        self.col_count.update(normalized.keys())
        return True


def _exact_inverse(x: RationalFn) -> RationalFn:
    return x.inverse()


def _fraction_inverse(x: Fraction) -> Fraction:
    return 1 / x


def _specialize_row(row: Row, v0: Fraction, memo: dict) -> Row:
    out = {}
    for w, c in row.items():
        if c not in memo:
            memo[c] = eval_at_v(c, v0)
        value = memo[c]
        if value:
            out[w] = value
    return out


def _sample_points(rng: random.Random) -> Iterator[Fraction]:
    while True:
        v0 = Fraction(rng.randint(2, 97), rng.choice((1, 2, 3, 5, 7, 11)))
        if v0 != 1:
            yield v0


# -- driver -----------------------------------------------------------------------

def _graded_pieces(element: NCPoly, grading: _Grading) -> dict[Grade, tuple[Counter, Row]]:
    pieces: dict[Grade, tuple[Counter, Row]] = {}
    for w, c in element.items():
        grade = grading.word(w)
        key = _freeze(grade)
        if key not in pieces:
            pieces[key] = (grade, {})
        pieces[key][1][w] = c
    return pieces


def ideal_membership(query: MembershipQuery) -> MembershipReport:
    """
    Decide whether ``query.element`` lies in the ideal of ``query.relations``.

    Exact mode reduces over Q(v); specialize mode repeats the reduction at
    ``query.samples`` random points and reports the first nonzero residual
    as a witness. Exceeding ``max_dim`` or ``max_rows`` gives an
    inconclusive report, never a verdict.
    """
    started = time.perf_counter()
    mode = query.resolved_mode()
    element = query.element
    degree = element.degree if element else 0
    grading = _Grading(query.relations)
    dims = SpanDims(element_terms=len(element))

    def report(verdict: Verdict, **kwargs) -> MembershipReport:
        millis = int((time.perf_counter() - started) * 1000)
        result = MembershipReport(verdict=verdict, mode=mode, degree=degree, grading=grading.label,
                                  dims=dims, seed=query.seed, millis=millis, **kwargs)
        logger.info(f"membership: {verdict.value} ({mode.value}, degree {degree}, "
                    f"{dims.span_rows} rows, rank {dims.rank}, {millis} ms)")
        return result

    if element.is_zero():
        return report(Verdict.MEMBER_EXACT if mode == Mode.EXACT else Verdict.MEMBER_SPECIALIZED,
                      reason="element is zero")

    pieces = _graded_pieces(element, grading)
    logger.debug(f"membership: {len(pieces)} graded pieces, alphabet {len(query.full_alphabet())}")
    try:
        span: list[tuple[Row, list[Row]]] = []
        columns: set[Word] = set()
        for grade, piece in pieces.values():
            rows = _span_rows(query, grading, grade, degree) if degree >= 2 else []
            for row in rows:
                columns.update(row)
            columns.update(piece)
            if len(columns) > query.max_dim:
                raise _Inconclusive(f"basis dimension exceeds the limit of {query.max_dim}")
            dims.span_rows += len(rows)
            if dims.span_rows > query.max_rows:
                raise _Inconclusive(f"span rows exceed the limit of {query.max_rows}")
            span.append((piece, rows))
        dims.basis_words = len(columns)
    except _Inconclusive as exc:
        return report(Verdict.INCONCLUSIVE, reason=str(exc))

    if mode == Mode.EXACT:
        residual_terms = 0
        for piece, rows in span:
            echelon = Echelon(_exact_inverse)
            for row in rows:
                echelon.add(row)
            dims.rank += echelon.rank
            residual_terms += len(echelon.reduce(piece))
        if residual_terms:
            return report(Verdict.NONMEMBER, reason=f"residual with {residual_terms} terms over Q(q)")
        return report(Verdict.MEMBER_EXACT)

    rng = random.Random(query.seed)
    points = _sample_points(rng)
    used: list[str] = []
    attempts = 0
    while len(used) < query.samples:
        attempts += 1
        if attempts > 20 * query.samples:
            return report(Verdict.INCONCLUSIVE, q0=used, reason="no admissible specialization point found")
        v0 = next(points)
        q0 = v0 * v0
        memo: dict = {}
        try:
            rank, nonzero = 0, False
            for piece, rows in span:
                echelon = Echelon(_fraction_inverse)
                for row in rows:
                    echelon.add(_specialize_row(row, v0, memo))
                rank += echelon.rank
                if echelon.reduce(_specialize_row(piece, v0, memo)):
                    nonzero = True
                    break
        except PoleError:
            logger.debug(f"membership: skipping q0={q0}, a denominator vanishes")
            continue
        used.append(str(q0))
        dims.rank = max(dims.rank, rank)
        if nonzero:
            return report(Verdict.NONMEMBER, q0=used, witness=str(q0),
                          reason=f"nonzero residual at q0={q0}")
    return report(Verdict.MEMBER_SPECIALIZED, q0=used)


def is_member(element: NCPoly, relations: RelationSet, **kwargs) -> MembershipReport:
    """Convenience wrapper building the query from keyword limits."""
    return ideal_membership(MembershipQuery(element, relations, **kwargs))
