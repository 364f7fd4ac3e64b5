"""
Quantum exterior algebra with noncommutative coefficients.

An ExtElem is a finite sum of tensors x_{S_1} (x) ... (x) x_{S_t}, each S a
strictly increasing subset, with NCPoly coefficients. Slots multiply by
x_S ^ x_T = (-q)^{cross(S,T)} x_{S u T} (zero when S and T meet); the
coefficients commute with the x's and are multiplied left to right.
"""

import itertools
import logging
from typing import Iterable, Mapping, Sequence

from errors import DomainError
from algebra.ncalg import NCPoly, PolyBuilder, cross
from algebra.qseries import neg_q_pow

logger = logging.getLogger(__name__)

ExtMono = tuple[tuple[int, ...], ...]


class ExtElem:
    """Element of A (x) Lambda^{(x)t} (immutable)."""

    __slots__ = ("caps", "_terms")

    def __init__(self, caps: Sequence[int], terms: Mapping[ExtMono, NCPoly] | None = None):
        self.caps = tuple(caps)
        clean = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(tuple(s) for s in mono)
            if len(mono) != len(self.caps):
                raise DomainError(f"monomial {mono} does not have {len(self.caps)} slots")
            for slot, cap in zip(mono, self.caps):
                if any(b <= a for a, b in zip(slot, slot[1:])) or any(not 1 <= x <= cap for x in slot):
                    raise DomainError(f"slot {slot} is not an increasing subset of [1, {cap}]")
            if coeff:
                clean[mono] = coeff
        self._terms = clean

    @classmethod
    def _trusted(cls, caps: tuple[int, ...], terms: dict[ExtMono, NCPoly]) -> "ExtElem":
        obj = cls.__new__(cls)
        obj.caps = caps
        obj._terms = terms
        return obj

    @classmethod
    def basis(cls, caps: Sequence[int], *slots: Iterable[int], coeff: NCPoly | None = None) -> "ExtElem":
        """coeff * x_{slots[0]} (x) ... ; slots are sorted, not reordered with signs."""
        mono = tuple(tuple(sorted(s)) for s in slots)
        return cls(caps, {mono: coeff if coeff is not None else NCPoly.one()})

    def items(self):
        return self._terms.items()

    def monomials(self) -> list[ExtMono]:
        return sorted(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtElem):
            return NotImplemented
        return self.caps == other.caps and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.caps, frozenset(self._terms.items())))

    def __add__(self, other: "ExtElem") -> "ExtElem":
        _check_compatible(self, other)
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out[mono] + c if mono in out else c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return ExtElem._trusted(self.caps, out)

    def __neg__(self) -> "ExtElem":
        return ExtElem._trusted(self.caps, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "ExtElem") -> "ExtElem":
        return self + (-other)

    def scale(self, c) -> "ExtElem":
        out = {m: x.scale(c) for m, x in self._terms.items()}
        return ExtElem._trusted(self.caps, {m: x for m, x in out.items() if x})

    def __xor__(self, other: "ExtElem") -> "ExtElem":
        return wedge(self, other)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono in self.monomials():
            slots = "⊗".join("x{" + ",".join(str(i) for i in s) + "}" for s in mono)
            parts.append(f"({self._terms[mono]})*{slots}")
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"ExtElem({self.to_text()!r})"


def _check_compatible(e1: ExtElem, e2: ExtElem) -> None:
    if e1.caps != e2.caps:
        raise DomainError(f"slot arity or capacity mismatch: {e1.caps} vs {e2.caps}")


def wedge(e1: ExtElem, e2: ExtElem) -> ExtElem:
    """Slotwise quantum wedge product."""
    _check_compatible(e1, e2)
    acc: dict[ExtMono, PolyBuilder] = {}
    for m1, c1 in e1.items():
        for m2, c2 in e2.items():
            exponent = 0
            for S, T in zip(m1, m2):
                if not set(S).isdisjoint(T):
                    break
                exponent += cross(S, T)
            else:
                mono = tuple(tuple(sorted(S + T)) for S, T in zip(m1, m2))
                acc.setdefault(mono, PolyBuilder()).add_poly(c1 * c2, neg_q_pow(exponent))
    terms = {}
    for mono, builder in acc.items():
        value = builder.build()
        if value:
            terms[mono] = value
    return ExtElem._trusted(e1.caps, terms)


def wedge_all(elems: Sequence[ExtElem]) -> ExtElem:
    """Left-associated wedge of a nonempty sequence."""
    if not elems:
        raise DomainError("empty wedge product")
    result = elems[0]
    for e in elems[1:]:
        result = wedge(result, e)
    return result


def wedge_power(e: ExtElem, n: int) -> ExtElem:
    """Left-associated n-fold wedge power."""
    if n < 1:
        raise DomainError(f"wedge_power needs n >= 1 (got {n})")
    return wedge_all([e] * n)


def coeff_of(e: ExtElem, mono: Iterable[Iterable[int]]) -> NCPoly:
    mono = tuple(tuple(s) for s in mono)
    if len(mono) != len(e.caps):
        raise DomainError(f"monomial {mono} does not have {len(e.caps)} slots")
    for slot, cap in zip(mono, e.caps):
        if any(not 1 <= x <= cap for x in slot):
            raise DomainError(f"slot {slot} outside [1, {cap}]")
    return e._terms.get(mono, NCPoly.zero())


def top_mono(caps: Sequence[int]) -> ExtMono:
    return tuple(tuple(range(1, c + 1)) for c in caps)


def truncate(e: ExtElem, slot: int, allowed: Iterable[int]) -> ExtElem:
    """Keep only the monomials whose ``slot`` (0-based) lies inside ``allowed``."""
    allowed = set(allowed)
    return ExtElem._trusted(e.caps, {m: c for m, c in e.items() if set(m[slot]) <= allowed})


# -- hypermatrix vectors ----------------------------------------------------------

def _axis_ranges(dims: Sequence[int], k: int) -> list[range]:
    return [range(1, d + 1) for t, d in enumerate(dims, start=1) if t != k]


def omega_vector(alg, k: int) -> list[ExtElem]:
    """
    omega_i = sum over alpha of a^{(k)}_{i alpha} x_alpha, i in [1, n_k].

    Args:
        alg: a HyperAlgebra (uses ``shape.dims`` and ``gen``)
        k: axis, 1-based

    Returns:
        One ExtElem per row i, with m-1 slots of degree 1.
    """
    dims = alg.shape.dims
    if not 1 <= k <= len(dims):
        raise DomainError(f"axis {k} outside [1, {len(dims)}]")
    caps = tuple(d for t, d in enumerate(dims, start=1) if t != k)
    rows = []
    for i in range(1, dims[k - 1] + 1):
        terms = {}
        for alpha in itertools.product(*_axis_ranges(dims, k)):
            index = alpha[: k - 1] + (i,) + alpha[k - 1:]
            terms[tuple((a,) for a in alpha)] = NCPoly.of(alg.gen(*index))
        rows.append(ExtElem._trusted(caps, terms))
    logger.debug(f"omega_vector: axis {k}, {len(rows)} rows over slots {caps}")
    return rows


def eta_vector(alg, k: int) -> list[ExtElem]:
    """eta_i = x_i (x) omega_i, with the axis-k slot first."""
    dims = alg.shape.dims
    omegas = omega_vector(alg, k)
    caps = (dims[k - 1],) + omegas[0].caps if omegas else (dims[k - 1],)
    return [
        ExtElem._trusted(caps, {((i,),) + mono: c for mono, c in omega.items()})
        for i, omega in enumerate(omegas, start=1)
    ]


def big_omega(alg, k: int) -> ExtElem:
    """Omega_k = sum of the eta_i."""
    etas = eta_vector(alg, k)
    result = etas[0]
    for e in etas[1:]:
        result = result + e
    return result
