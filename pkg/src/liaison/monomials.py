"""Exact arithmetic on monomials and monomial ideals.

Monomials are exponent vectors; ideals are stored by their minimal
generating set, kept in descending degree-lexicographic order so that
serialized output is byte-stable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class IdealError(ValueError):
    """Raised for operations undefined on the zero or unit ideal."""


class NotBorelFixedError(ValueError):
    """Raised when an operation requires a Borel-fixed input."""


@dataclass(frozen=True, order=True)
class Monomial:
    """A monomial given by its exponent vector."""

    exps: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exps):
            raise ValueError(f"negative exponent in {self.exps}")

    @property
    def n(self) -> int:
        return len(self.exps)

    @property
    def degree(self) -> int:
        return sum(self.exps)

    @property
    def is_unit(self) -> bool:
        return self.degree == 0

    def deglex_key(self) -> tuple:
        # Larger key = larger monomial in degree-lex order.
        return (self.degree, self.exps)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(tuple(a - b for a, b in zip(self.exps, other.exps)))

    def gcd(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(min(a, b) for a, b in zip(self.exps, other.exps)))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exps, other.exps)))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.exps) if e > 0)

    @property
    def is_pure_power(self) -> bool:
        return len(self.support) <= 1 and self.degree > 0

    def __str__(self) -> str:
        if self.is_unit:
            return "1"
        parts = []
        for i, e in enumerate(self.exps):
            if e == 1:
                parts.append(f"x{i + 1}")
            elif e > 1:
                parts.append(f"x{i + 1}^{e}")
        return "*".join(parts)


def variable(n: int, i: int, power: int = 1) -> Monomial:
    """The monomial x_{i+1}^power in n variables (0-based index i)."""
    exps = [0] * n
    exps[i] = power
    return Monomial(tuple(exps))


def unit_monomial(n: int) -> Monomial:
    return Monomial((0,) * n)


@lru_cache(maxsize=None)
def monomials_of_degree(n: int, d: int) -> tuple[Monomial, ...]:
    """All degree-d monomials in n variables, descending degree-lex."""
    if n == 0:
        return (Monomial(()),) if d == 0 else ()
    exps = []
    for bars in itertools.combinations(range(d + n - 1), n - 1):
        prev = -1
        vec = []
        for b in bars:
            vec.append(b - prev - 1)
            prev = b
        vec.append(d + n - 1 - prev - 1)
        exps.append(tuple(vec))
    exps.sort(reverse=True)
    return tuple(Monomial(e) for e in exps)


def _minimal_gens(gens: Iterable[Monomial]) -> list[Monomial]:
    gens = sorted(set(gens), key=lambda m: (m.degree, m.exps))
    out: list[Monomial] = []
    for g in gens:
        if not any(h.divides(g) for h in out):
            out.append(g)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal by its minimal generating set.

    The zero ideal has an empty generator tuple; the unit ideal is
    generated by the unit monomial.  Construct via ``from_gens`` so the
    stored generators are always divisibility-minimal and sorted.
    """

    n: int
    gens: tuple[Monomial, ...]

    @classmethod
    def from_gens(cls, n: int, gens: Iterable[Monomial]) -> "MonomialIdeal":
        gens = list(gens)
        for g in gens:
            if g.n != n:
                raise ValueError(f"generator {g} not in {n} variables")
        minimal = _minimal_gens(gens)
        minimal.sort(key=Monomial.deglex_key, reverse=True)
        return cls(n, tuple(minimal))

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, (unit_monomial(n),))

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return any(g.is_unit for g in self.gens)

    @property
    def is_proper(self) -> bool:
        return not self.is_unit

    @property
    def max_gen_degree(self) -> int:
        return max((g.degree for g in self.gens), default=0)

    def initial_degree(self) -> int:
        """Least degree of a nonzero element (= least generator degree)."""
        if self.is_zero:
            raise IdealError("zero ideal has no initial degree")
        return min(g.degree for g in self.gens)

    def contains(self, m: Monomial) -> bool:
        if m.n != self.n:
            raise ValueError("ambient mismatch")
        return any(g.divides(m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def colon(self, m: Monomial) -> "MonomialIdeal":
        if m.n != self.n:
            raise ValueError("ambient mismatch")
        return MonomialIdeal.from_gens(self.n, (g / g.gcd(m) for g in self.gens))

    def plus(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.n != self.n:
            raise ValueError("ambient mismatch")
        return MonomialIdeal.from_gens(self.n, self.gens + other.gens)

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.n != self.n:
            raise ValueError("ambient mismatch")
        return MonomialIdeal.from_gens(
            self.n, (g.lcm(h) for g in self.gens for h in other.gens)
        )

    def times_monomial(self, m: Monomial) -> "MonomialIdeal":
        return MonomialIdeal.from_gens(self.n, (g * m for g in self.gens))

    def restrict(self, variables: Sequence[int]) -> "MonomialIdeal":
        """Intersection with the coordinate subring on the given variables.

        Keeps exactly the minimal generators supported inside ``variables``
        and re-indexes them into a len(variables)-dimensional ambient.
        """
        variables = tuple(sorted(variables))
        keep = [g for g in self.gens if set(g.support) <= set(variables)]
        reindexed = [Monomial(tuple(g.exps[v] for v in variables)) for g in keep]
        return MonomialIdeal.from_gens(len(variables), reindexed)

    def extend_front(self, extra: int) -> "MonomialIdeal":
        """View this ideal inside extra + n variables, as x_{extra+1},...."""
        return MonomialIdeal.from_gens(
            self.n + extra, (Monomial((0,) * extra + g.exps) for g in self.gens)
        )

    def to_json(self) -> dict:
        return {
            "schema": "ideal/1",
            "n": self.n,
            "gens": [list(g.exps) for g in self.gens],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MonomialIdeal":
        return cls.from_gens(data["n"], (Monomial(tuple(e)) for e in data["gens"]))

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"


def minimalize(n: int, gens: Iterable[Monomial]) -> MonomialIdeal:
    """The ideal with divisibility-minimal generators for the given set."""
    return MonomialIdeal.from_gens(n, gens)


def standard_monomials(J: MonomialIdeal, d: int) -> tuple[Monomial, ...]:
    """Degree-d monomials outside J, descending degree-lex."""
    return tuple(m for m in monomials_of_degree(J.n, d) if not J.contains(m))


def is_artinian(J: MonomialIdeal) -> bool:
    """True iff J contains a pure power of every ambient variable."""
    if J.is_unit:
        return True
    return all(
        any(g.support == (i,) for g in J.gens) for i in range(J.n)
    )


def borel_moves(m: Monomial) -> Iterator[Monomial]:
    """All monomials (x_j / x_i) * m with j < i and x_i dividing m."""
    for i in m.support:
        for j in range(i):
            exps = list(m.exps)
            exps[i] -= 1
            exps[j] += 1
            yield Monomial(tuple(exps))


def is_borel_fixed(J: MonomialIdeal) -> bool:
    """Exchange test on minimal generators (implies it for the whole ideal)."""
    return all(J.contains(m) for g in J.gens for m in borel_moves(g))


def lex_segment_violation(J: MonomialIdeal) -> Monomial | None:
    """First degree-lex gap witness, or None if J is a lex-segment ideal.

    Only degrees up to the maximal generator degree need checking:
    shadows of lex segments are again lex segments.
    """
    for d in range(1, J.max_gen_degree + 1):
        seen_outside = None
        for m in monomials_of_degree(J.n, d):
            if J.contains(m):
                if seen_outside is not None:
                    return seen_outside
            elif seen_outside is None:
                seen_outside = m
    return None


def is_lex_segment(J: MonomialIdeal) -> bool:
    return lex_segment_violation(J) is None


@dataclass(frozen=True)
class IrreducibleComponent:
    """A pure-power ideal (x_{i1}^{b1}, ..., x_{ik}^{bk})."""

    n: int
    powers: tuple[tuple[int, int], ...]  # (variable index, exponent), sorted

    @property
    def height(self) -> int:
        return len(self.powers)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.powers)

    def contains(self, m: Monomial) -> bool:
        return any(m.exps[i] >= b for i, b in self.powers)

    def contains_component(self, other: "IrreducibleComponent") -> bool:
        # (x_i^c : i in A') subset of (x_i^b : i in A) iff every pure power
        # generator of the smaller lies in the larger.
        mine = dict(self.powers)
        return all(i in mine and c >= mine[i] for i, c in other.powers)

    def as_ideal(self) -> MonomialIdeal:
        return MonomialIdeal.from_gens(
            self.n, (variable(self.n, i, b) for i, b in self.powers)
        )


def irreducible_decomposition(J: MonomialIdeal) -> tuple[IrreducibleComponent, ...]:
    """Irredundant irreducible decomposition by recursive splitting.

    Splits on the degree-lex-largest non-pure-power generator, separating
    the pure power of its lowest involved variable.
    """
    if J.is_zero or J.is_unit:
        raise IdealError("decomposition requires a proper nonzero ideal")
    n = J.n

    cache: dict[tuple[Monomial, ...], frozenset] = {}

    def split(gens: tuple[Monomial, ...]) -> frozenset:
        if gens in cache:
            return cache[gens]
        mixed = [g for g in gens if len(g.support) > 1]
        if not mixed:
            comp = IrreducibleComponent(
                n, tuple(sorted((g.support[0], g.exps[g.support[0]]) for g in gens))
            )
            result = frozenset([comp])
        else:
            g = max(mixed, key=Monomial.deglex_key)
            i = g.support[0]
            u = variable(n, i, g.exps[i])
            v = g / u
            rest = tuple(h for h in gens if h != g)
            left = MonomialIdeal.from_gens(n, rest + (u,)).gens
            right = MonomialIdeal.from_gens(n, rest + (v,)).gens
            result = split(left) | split(right)
        cache[gens] = result
        return result

    comps = list(split(J.gens))
    # Drop any component that contains a strictly smaller one.
    irredundant = [
        c
        for c in comps
        if not any(o != c and c.contains_component(o) for o in comps)
    ]
    irredundant.sort(key=lambda c: (c.height, c.powers))
    return tuple(irredundant)


def minimal_primes(J: MonomialIdeal) -> tuple[frozenset[int], ...]:
    """Minimal primes as variable sets: minimal hitting sets of the
    generator supports."""
    if J.is_zero or J.is_unit:
        raise IdealError("minimal primes require a proper nonzero ideal")
    supports = sorted({frozenset(g.support) for g in J.gens}, key=len)
    found: set[frozenset[int]] = set()

    def rec(idx: int, chosen: frozenset[int]) -> None:
        while idx < len(supports) and supports[idx] & chosen:
            idx += 1
        if idx == len(supports):
            found.add(chosen)
            return
        for v in sorted(supports[idx]):
            rec(idx + 1, chosen | {v})

    rec(0, frozenset())
    minimal = tuple(
        sorted(
            (h for h in found if not any(o < h for o in found)),
            key=lambda h: (len(h), sorted(h)),
        )
    )
    return minimal


def height(J: MonomialIdeal) -> int:
    return min(len(p) for p in minimal_primes(J))


def saturate(J: MonomialIdeal, m: Monomial) -> MonomialIdeal:
    """J : m^infinity (stabilizes once the colon power dominates every
    generator exponent)."""
    power = m
    big = J.max_gen_degree + 1
    power = Monomial(tuple(e * big for e in m.exps))
    return J.colon(power)


def is_equidimensional(J: MonomialIdeal) -> bool:
    """True iff every component of the irredundant primary decomposition
    has the same height: the minimal primes share one height and there is
    no embedded component (J equals the intersection of its minimal
    primary components)."""
    primes = minimal_primes(J)
    if len({len(p) for p in primes}) != 1:
        return False
    n = J.n
    intersection = None
    for prime in primes:
        outside = Monomial(
            tuple(1 if i not in prime else 0 for i in range(n))
        )
        component = saturate(J, outside) if not outside.is_unit else J
        intersection = (
            component if intersection is None else intersection.intersect(component)
        )
    return intersection == J


@dataclass(frozen=True)
class ConePresentation:
    """Witness that J is a cone over an Artinian Borel-fixed ideal."""

    c: int
    artinian_part: MonomialIdeal  # Borel-fixed Artinian ideal in c variables


def is_cm_borel(J: MonomialIdeal) -> tuple[bool, ConePresentation | None]:
    """Cohen-Macaulay test for Borel-fixed ideals.

    With c = height(J): true iff J contains a pure power of x_c and no
    minimal generator involves x_{c+1},...,x_n.  On success returns the
    cone presentation over the Artinian part in c variables.
    """
    if not is_borel_fixed(J):
        raise NotBorelFixedError(f"{J} is not Borel-fixed")
    c = height(J)
    has_power = any(g.support == (c - 1,) for g in J.gens)
    tail_free = all(max(g.support) <= c - 1 for g in J.gens)
    if not (has_power and tail_free):
        return False, None
    artinian_part = J.restrict(range(c))
    return True, ConePresentation(c, artinian_part)


def borel_closure(n: int, monos: Iterable[Monomial]) -> frozenset[Monomial]:
    """Smallest Borel-move-closed set of monomials containing the input."""
    closed: set[Monomial] = set()
    stack = list(monos)
    while stack:
        m = stack.pop()
        if m in closed:
            continue
        closed.add(m)
        stack.extend(borel_moves(m))
    return frozenset(closed)


def _borel_closed_supersets(
    monos: tuple[Monomial, ...], forced: frozenset[Monomial]
) -> Iterator[frozenset[Monomial]]:
    """All Borel-closed subsets of ``monos`` (one fixed degree, descending
    degree-lex) that contain ``forced``."""
    parents: list[list[int]] = []
    index = {m: k for k, m in enumerate(monos)}
    for m in monos:
        parents.append([index[p] for p in set(borel_moves(m))])

    choice = [False] * len(monos)

    def rec(k: int) -> Iterator[frozenset[Monomial]]:
        if k == len(monos):
            yield frozenset(m for m, c in zip(monos, choice) if c)
            return
        can_include = all(choice[p] for p in parents[k])
        must_include = monos[k] in forced
        if can_include:
            choice[k] = True
            yield from rec(k + 1)
        if not must_include:
            choice[k] = False
            yield from rec(k + 1)
        choice[k] = False

    if any(m not in index for m in forced):
        return
    yield from rec(0)


def enumerate_borel_ideals(n: int, maxdeg: int) -> Iterator[MonomialIdeal]:
    """All nonzero Borel-fixed ideals in n variables whose minimal
    generators have degree at most maxdeg."""

    def shadow(monos: frozenset[Monomial]) -> frozenset[Monomial]:
        return frozenset(m * variable(n, i) for m in monos for i in range(n))

    def rec(d: int, prev: frozenset[Monomial], gens: list[Monomial]) -> Iterator[MonomialIdeal]:
        if d > maxdeg:
            if gens:
                yield MonomialIdeal.from_gens(n, gens)
            return
        monos = monomials_of_degree(n, d)
        forced = shadow(prev)
        for chosen in _borel_closed_supersets(monos, forced):
            new_gens = sorted(chosen - forced, key=Monomial.deglex_key, reverse=True)
            yield from rec(d + 1, chosen, gens + new_gens)

    yield from rec(1, frozenset(), [])
