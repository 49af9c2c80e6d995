"""Lifting matrices, the bar operator m -> prod L_{j,i}, lifted ideals as
factor lists, and the explicit point model for one-new-variable liftings
of Artinian ideals."""
from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass, field

from .monomials import Monomial, MonomialIdeal, is_artinian, standard_monomials
from .oracle import DEFAULT_PRIME, FALLBACK_PRIME, expand, rank_mod_p

import numpy as np


class MatrixError(ValueError):
    """Malformed or insufficient lifting matrix."""


@dataclass(frozen=True)
class LinearForm:
    """A linear form as an integer coefficient vector over the ambient
    variables (the x's followed by the u's)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if all(c == 0 for c in self.coeffs):
            raise ValueError("zero linear form")

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*v{i + 1}" if c != 1 else f"v{i + 1}")
        return " + ".join(parts)


@dataclass(frozen=True)
class LiftingMatrix:
    """Rows of linear forms; row j supplies the factors replacing powers
    of the j-th source variable.

    ambient_n x-variables plus t u-variables; kind is "bf" for the
    integer-shift pseudo-lifting matrix, "t-lift" for a proper t-lifting
    (entries confined to K[x_j, u_1..u_t]).
    """

    rows: tuple[tuple[LinearForm, ...], ...]
    ambient_n: int
    t: int
    kind: str
    seed: int | None = None

    @property
    def N(self) -> int:
        return self.ambient_n + self.t

    @property
    def n_source(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return min(len(r) for r in self.rows)

    def drop_first_row(self) -> "LiftingMatrix":
        return LiftingMatrix(self.rows[1:], self.ambient_n, self.t, self.kind, self.seed)

    def to_json(self) -> dict:
        if self.kind == "bf":
            kind = "bf"
        else:
            kind = {"t": self.t, "seed": self.seed}
        return {
            "schema": "matrix/1",
            "kind": kind,
            "ambient_n": self.ambient_n,
            "t": self.t,
            "rows": [[list(f.coeffs) for f in row] for row in self.rows],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LiftingMatrix":
        kind = "bf" if data["kind"] == "bf" else "t-lift"
        seed = None if kind == "bf" else data["kind"].get("seed")
        return cls(
            tuple(
                tuple(LinearForm(tuple(c)) for c in row) for row in data["rows"]
            ),
            data["ambient_n"],
            data["t"],
            kind,
            seed,
        )

    def content_hash(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _unit_vec(N: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * N
    v[i] = scale
    return v


def default_matrix(n: int, style: str, seed: int = 0, ncols: int = 8,
                   t: int = 1) -> LiftingMatrix:
    """Standard matrices.

    style "bf": ambient n, no new variables; row for x_j (j >= 2) has
    entries x_j + (i-1)*x_1, and row 1 carries the x_1-multiples i*x_1
    whose columns are consumed only by x_1-powers.

    style "t-lift": ambient n plus t new variables u; row j has entries
    x_j + sum_k c_{j,i,k} u_k with coefficient vectors drawn
    deterministically from the seed, distinct within each row.
    """
    if style == "bf":
        rows = []
        for j in range(n):
            row = []
            for i in range(ncols):
                coeffs = [0] * n
                if j == 0:
                    coeffs[0] = i + 1
                else:
                    coeffs[j] = 1
                    coeffs[0] = i
                row.append(LinearForm(tuple(coeffs)))
            rows.append(tuple(row))
        return LiftingMatrix(tuple(rows), n, 0, "bf")
    if style == "t-lift":
        rng = random.Random(seed)
        N = n + t
        rows = []
        for j in range(n):
            seen = set()
            row = []
            for _ in range(ncols):
                while True:
                    cs = tuple(rng.randrange(1, 3000) for _ in range(t))
                    if cs not in seen:
                        seen.add(cs)
                        break
                coeffs = [0] * N
                coeffs[j] = 1
                for k, c in enumerate(cs):
                    coeffs[n + k] = c
                row.append(LinearForm(tuple(coeffs)))
            rows.append(tuple(row))
        return LiftingMatrix(tuple(rows), n, t, "t-lift", seed)
    raise ValueError(f"unknown style {style!r}")


@dataclass
class ValidationReport:
    ok: bool
    used_cols: tuple[int, ...]
    proportional_pairs: list  # (row, col, col) entries proportional in a row
    dependent_selections: list  # tuples of (row, col) choices with a rank drop
    exhaustive: bool
    selections_checked: int
    prime: int

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "used_cols": list(self.used_cols),
            "proportional_pairs": self.proportional_pairs,
            "dependent_selections": [list(map(list, s)) for s in self.dependent_selections],
            "exhaustive": self.exhaustive,
            "selections_checked": self.selections_checked,
            "prime": self.prime,
        }


def _proportional(a: LinearForm, b: LinearForm) -> bool:
    n = len(a.coeffs)
    for i in range(n):
        for j in range(i + 1, n):
            if a.coeffs[i] * b.coeffs[j] != a.coeffs[j] * b.coeffs[i]:
                return False
    return True


SELECTION_LIMIT = 10**6
SELECTION_SAMPLES = 10_000


def validate_matrix(A: LiftingMatrix, J: MonomialIdeal,
                    prime: int = DEFAULT_PRIME, seed: int = 0,
                    _retry: bool = True) -> ValidationReport:
    """Check the genericity conditions a "sufficiently general" matrix of
    linear forms is assumed to satisfy.

    (a) for t-lifting matrices, entries within each row are pairwise
        non-proportional over the used columns (distinct point slices);
    (b) every selection of one used entry per row is linearly independent
        (exhaustive up to 10^6 selections, seeded sampling beyond), which
        makes the row products cut out a codimension-n complete
        intersection.

    A failure at the working prime is retried at a larger prime before
    being reported, so that accidental mod-p collisions never condemn a
    valid matrix.
    """
    if J.n != A.n_source:
        raise MatrixError(
            f"ideal in {J.n} variables vs matrix with {A.n_source} rows"
        )
    used = tuple(
        max((g.exps[j] for g in J.gens), default=0) for j in range(A.n_source)
    )
    for j, u in enumerate(used):
        if u > len(A.rows[j]):
            raise MatrixError(f"row {j + 1} has {len(A.rows[j])} columns, needs {u}")

    proportional_pairs = []
    if A.kind == "t-lift":
        for j, u in enumerate(used):
            for c1, c2 in itertools.combinations(range(u), 2):
                if _proportional(A.rows[j][c1], A.rows[j][c2]):
                    proportional_pairs.append((j, c1, c2))

    active = [j for j, u in enumerate(used) if u > 0]
    total = 1
    for j in active:
        total *= used[j]
    exhaustive = total <= SELECTION_LIMIT

    def selections():
        if exhaustive:
            for combo in itertools.product(*[range(used[j]) for j in active]):
                yield tuple(zip(active, combo))
        else:
            rng = random.Random(seed)
            for _ in range(SELECTION_SAMPLES):
                yield tuple((j, rng.randrange(used[j])) for j in active)

    dependent = []
    checked = 0
    for sel in selections():
        if not sel:
            break
        checked += 1
        M = np.array([A.rows[j][c].coeffs for j, c in sel], dtype=np.int64)
        if rank_mod_p(M, prime) < len(sel):
            dependent.append(sel)
            if len(dependent) >= 20:
                break

    ok = not proportional_pairs and not dependent
    if not ok and _retry and prime != FALLBACK_PRIME:
        retry = validate_matrix(A, J, prime=FALLBACK_PRIME, seed=seed, _retry=False)
        if retry.ok:
            return retry
    return ValidationReport(
        ok, used, proportional_pairs, dependent, exhaustive, checked, prime
    )


@dataclass(frozen=True)
class LiftedGenerator:
    """bar(m): factor references (row, column) into a lifting matrix, with
    exactly a_j factors from row j taken from columns 1..a_j."""

    source: Monomial
    factors: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return len(self.factors)


def bar(m: Monomial, A: LiftingMatrix) -> LiftedGenerator:
    """Lift a monomial to its factor list (the empty product for 1)."""
    if m.n != A.n_source:
        raise MatrixError("ambient mismatch")
    factors = []
    for j, a in enumerate(m.exps):
        if a > len(A.rows[j]):
            raise MatrixError(
                f"row {j + 1} has {len(A.rows[j])} columns, needs {a}"
            )
        factors.extend((j, i) for i in range(a))
    return LiftedGenerator(m, tuple(factors))


@dataclass(frozen=True)
class LiftedIdeal:
    source: MonomialIdeal
    matrix: LiftingMatrix
    generators: tuple[LiftedGenerator, ...]

    @property
    def N(self) -> int:
        return self.matrix.N

    def polynomials(self, p: int | None = DEFAULT_PRIME) -> list:
        return [expand(g, self.matrix, p) for g in self.generators]

    def to_json(self) -> dict:
        return {
            "schema": "lifted/1",
            "source": self.source.to_json(),
            "matrix": self.matrix.to_json(),
            "matrix_hash": self.matrix.content_hash(),
            "generators": [
                {"source": list(g.source.exps), "factors": [list(f) for f in g.factors]}
                for g in self.generators
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LiftedIdeal":
        matrix = LiftingMatrix.from_json(data["matrix"])
        if matrix.content_hash() != data["matrix_hash"]:
            raise MatrixError("matrix hash mismatch: tampered lifted ideal")
        return cls(
            MonomialIdeal.from_json(data["source"]),
            matrix,
            tuple(
                LiftedGenerator(
                    Monomial(tuple(g["source"])),
                    tuple(tuple(f) for f in g["factors"]),
                )
                for g in data["generators"]
            ),
        )


def lift_ideal(J: MonomialIdeal, A: LiftingMatrix,
               prime: int = DEFAULT_PRIME) -> LiftedIdeal:
    """One lifted generator per minimal generator of J; the matrix must
    pass validation first."""
    report = validate_matrix(A, J, prime=prime)
    if not report.ok:
        raise MatrixError(f"matrix failed validation: {report.to_json()}")
    return LiftedIdeal(J, A, tuple(bar(g, A) for g in J.gens))


@dataclass(frozen=True)
class PointConfiguration:
    """Distinct points (affine u=1 chart coordinates mod p), one per
    standard monomial of the source ideal."""

    prime: int
    points: tuple[tuple[int, ...], ...]
    labels: tuple[tuple[int, ...], ...]  # standard monomial exponents

    def __len__(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "schema": "points/1",
            "prime": self.prime,
            "points": [list(pt) for pt in self.points],
            "labels": [list(lb) for lb in self.labels],
        }


def point_model(J: MonomialIdeal, A: LiftingMatrix,
                prime: int = DEFAULT_PRIME) -> PointConfiguration:
    """Explicit zero-scheme of a 1-lifting of an Artinian ideal.

    The point for a standard monomial x^c solves L_{j, c_j + 1} = 0 for
    every j on the chart u = 1.  Verifies that the points are pairwise
    distinct and that every lifted generator vanishes on every point.
    """
    if not is_artinian(J):
        raise ValueError("point model requires an Artinian source ideal")
    if A.kind != "t-lift" or A.t != 1:
        raise MatrixError("point model requires a t-lifting matrix with t = 1")
    n = J.n
    std = []
    d = 0
    while True:
        layer = standard_monomials(J, d)
        if not layer:
            break
        std.extend(layer)
        d += 1

    lifted = lift_ideal(J, A, prime=prime)
    points = []
    for m in std:
        coords = []
        for j in range(n):
            form = A.rows[j][m.exps[j]]
            xc = form.coeffs[j] % prime
            uc = form.coeffs[n] % prime
            if xc == 0:
                raise MatrixError(f"singular slice for {m} in row {j + 1}")
            coords.append((-uc * pow(xc, prime - 2, prime)) % prime)
        coords.append(1)
        points.append(tuple(coords))

    if len(set(points)) != len(points):
        raise MatrixError("point model produced coincident points")

    for g in lifted.generators:
        for pt in points:
            value = 1
            for r, c in g.factors:
                form = A.rows[r][c]
                value = (value * sum(
                    fc * pc for fc, pc in zip(form.coeffs, pt)
                )) % prime
            if value != 0:
                raise MatrixError(
                    f"lifted generator of {g.source} does not vanish at {pt}"
                )
    return PointConfiguration(prime, tuple(points), tuple(m.exps for m in std))


@dataclass(frozen=True)
class LayeredLift:
    """The layer form of a lifted ideal: bar-lifts of the x_1-layers by
    the row-deleted matrix, scaled by prefix products of row-1 entries,
    plus the full row-1 product."""

    matrix: LiftingMatrix  # the full matrix; layers use rows 2..n
    alpha: int
    layer_lifts: tuple[LiftedIdeal, ...]  # lift of I_j by A', j = 0..alpha-1

    def polynomial_generators(self, p: int | None = DEFAULT_PRIME) -> list:
        from .oracle import expand_product, poly_mul

        N = self.matrix.N
        out = []
        prefix = {(0,) * N: 1}
        for j, lifted in enumerate(self.layer_lifts):
            for g in lifted.generators:
                out.append(poly_mul(prefix, expand(g, lifted.matrix, p), p))
            prefix = poly_mul(
                prefix,
                expand_product([self.matrix.rows[0][j]], N, p),
                p,
            )
        # prefix now holds L_{1,1} ... L_{1,alpha}
        out.append(prefix)
        return out


def lifted_layer_formula(J: MonomialIdeal, A: LiftingMatrix,
                         prime: int = DEFAULT_PRIME) -> LayeredLift:
    """Right-hand side of the layer identity
    I = bar I_0 + L_{1,1} bar I_1 + ... + (L_{1,1} ... L_{1,alpha})."""
    from .layers import decompose

    D = decompose(J)
    if not D.layers[D.alpha].is_unit:
        raise ValueError("layer formula requires I_alpha = (1) "
                         "(Artinian or Borel-fixed source)")
    Aprime = A.drop_first_row()
    lifts = tuple(
        lift_ideal(D.layers[j], Aprime, prime=prime) for j in range(D.alpha)
    )
    if D.alpha > len(A.rows[0]):
        raise MatrixError("row 1 too short for the prefix products")
    return LayeredLift(A, D.alpha, lifts)
