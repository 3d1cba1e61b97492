"""Finite and affine root systems with exact rational reflection calculus.

Coordinate conventions, fixed once for the whole library:

* functionals on the ambient euclidean space (roots, gradients of affine
  functions) are written in the basis of simple roots;
* points and translation vectors are written in the basis of fundamental
  coweights, so that the canonical pairing of a functional against a point
  is the plain dot product of coordinate vectors;
* the scalar product of functionals is given by the Gram matrix, normalised
  so that long roots have squared length 2, except in type BC where the
  convention is |alpha|^2 = 1, |2 alpha|^2 = 4 for the doubled roots.

Simple reflections of an affinised system are labelled 0..n with label 0
reserved for the extra affine root a0 = 1 - theta; a finite system used as a
Coxeter system keeps labels 1..n.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .linalg import Mat, Vec, dot, mat_inv, mat_vec, vec_scale, vec_sub


class IllegalType(ValueError):
    """Raised for (type, rank) pairs outside the finite-type classification."""


class NotIrreducible(ValueError):
    """Raised when an operation requires an irreducible root system."""


class ConstantFunction(ValueError):
    """Raised when a reflection or coroot is requested for a constant function."""


_LEGAL_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
    "BC": lambda n: n >= 1,
}

_MAX_RANK = 8


def _ambient_simple_roots(type_label: str, rank: int):
    """Simple roots in an ambient orthonormal basis, plus the scaling of the
    standard dot product that realises the documented Gram normalisation and
    any extra seed roots needed to enumerate non-reduced systems."""
    F = Fraction
    n = rank

    def e(i, dim, c=1):
        v = [F(0)] * dim
        v[i] = F(c)
        return v

    def e_diff(i, j, dim):
        v = [F(0)] * dim
        v[i] = F(1)
        v[j] = F(-1)
        return v

    if type_label == "A":
        simples = [e_diff(i, i + 1, n + 1) for i in range(n)]
        return simples, F(1), []
    if type_label == "B":
        simples = [e_diff(i, i + 1, n) for i in range(n - 1)] + [e(n - 1, n)]
        return simples, F(1), []
    if type_label == "C":
        simples = [e_diff(i, i + 1, n) for i in range(n - 1)] + [e(n - 1, n, 2)]
        return simples, F(1, 2), []
    if type_label == "D":
        simples = [e_diff(i, i + 1, n) for i in range(n - 1)]
        last = [F(0)] * n
        last[n - 2] = F(1)
        last[n - 1] = F(1)
        simples.append(last)
        return simples, F(1), []
    if type_label == "E":
        # Bourbaki E8 realisation, truncated to E6/E7 by dropping trailing nodes.
        a1 = [F(1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(-1, 2), F(1, 2)]
        a2 = [F(1), F(1)] + [F(0)] * 6
        simples8 = [a1, a2] + [e_diff(i - 2, i - 3, 8) for i in range(3, 9)]
        return simples8[:n], F(1), []
    if type_label == "F":
        simples = [
            [F(0), F(1), F(-1), F(0)],
            [F(0), F(0), F(1), F(-1)],
            [F(0), F(0), F(0), F(1)],
            [F(1, 2), F(-1, 2), F(-1, 2), F(-1, 2)],
        ]
        return simples, F(1), []
    if type_label == "G":
        simples = [[F(1), F(-1), F(0)], [F(-2), F(1), F(1)]]
        return simples, F(1, 3), []
    if type_label == "BC":
        simples = [e_diff(i, i + 1, n) for i in range(n - 1)] + [e(n - 1, n)]
        seed = e(n - 1, n, 2)  # the doubled root 2*e_n, not a Weyl image of a simple
        return simples, F(1), [seed]
    raise IllegalType(f"unknown type label {type_label!r}")


@dataclass(frozen=True)
class FiniteRootSystem:
    """Exact root data of an irreducible finite root system, reduced or not."""

    type_label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    gram_matrix: Mat  # scalar products of simple roots
    roots: tuple[tuple[int, ...], ...]  # all roots, simple-root coordinates
    weight_lattice_basis: tuple[Vec, ...]  # fundamental weights, root coordinates
    root_lattice_basis: tuple[Vec, ...]
    gram_coweight: Mat = field(repr=False)  # scalar products of points (coweight basis)

    # -- pairings ---------------------------------------------------------

    def pair(self, functional: Vec, point: Vec) -> Fraction:
        """Canonical pairing of a functional against a point of E."""
        return dot(tuple(map(Fraction, functional)), point)

    def inner(self, f: Vec, g: Vec) -> Fraction:
        """Scalar product of two functionals (gradient coordinates)."""
        return dot(mat_vec(self.gram_matrix, tuple(map(Fraction, g))), tuple(map(Fraction, f)))

    def point_inner(self, x: Vec, y: Vec) -> Fraction:
        """Scalar product of two points/translations of E."""
        return dot(mat_vec(self.gram_coweight, y), x)

    def coroot_vector(self, root: Vec) -> Vec:
        """The coroot of a functional, as a translation vector of E."""
        norm = self.inner(root, root)
        if norm == 0:
            raise ConstantFunction("zero functional has no coroot")
        t = self.functional_to_vector(root)
        return vec_scale(Fraction(2) / norm, t)

    def functional_to_vector(self, f: Vec) -> Vec:
        """Image of a functional under the Gram identification V* -> V: the
        j-th coweight coordinate is the scalar product against alpha_j."""
        out = [Fraction(0)] * self.rank
        for i, c in enumerate(f):
            if c:
                for j in range(self.rank):
                    out[j] += Fraction(c) * self.gram_matrix[i][j]
        return tuple(out)

    # -- root-set queries -------------------------------------------------

    def is_root(self, coords) -> bool:
        return tuple(coords) in self._root_set

    @property
    def _root_set(self):
        return frozenset(self.roots)

    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r for r in self.roots if self.is_positive(r))

    @staticmethod
    def is_positive(root) -> bool:
        return any(c > 0 for c in root)

    def in_two_q_r(self, root) -> bool:
        return all(c % 2 == 0 for c in root)

    def highest_root(self) -> tuple[int, ...]:
        return max(self.positive_roots(), key=lambda r: (sum(r), r))

    def simple_reflection_matrix(self, i: int) -> Mat:
        """Matrix of s_{alpha_i} on V* in the simple-root basis (0-based i)."""
        n = self.rank
        rows = []
        for k in range(n):
            row = []
            for j in range(n):
                v = Fraction(1 if k == j else 0)
                if k == i:
                    v -= self.cartan_matrix[j][i]
                row.append(v)
            rows.append(tuple(row))
        return tuple(rows)

    def reflect_root(self, root, by) -> tuple[int, ...]:
        """s_by(root) for two roots, in simple-root coordinates."""
        c = 2 * self.inner(by, root) / self.inner(by, by)
        return tuple(int(a - c * b) for a, b in zip(root, by))

    def weyl_group_order_bound(self) -> int:
        return {"A": 1, "B": 2, "C": 2, "D": 2, "E": 8, "F": 4, "G": 2, "BC": 2}[
            self.type_label
        ]


def build_finite(type_label: str, rank: int) -> FiniteRootSystem:
    """Construct the full root data for a legal (type, rank) pair."""
    if type_label not in _LEGAL_RANKS or not _LEGAL_RANKS[type_label](rank):
        raise IllegalType(f"illegal pair ({type_label!r}, {rank})")
    if rank > _MAX_RANK:
        raise IllegalType(f"rank {rank} exceeds the supported cap {_MAX_RANK}")
    return _build_finite_cached(type_label, rank)


@lru_cache(maxsize=None)
def _build_finite_cached(type_label: str, rank: int) -> FiniteRootSystem:
    ambient, scale, seeds = _ambient_simple_roots(type_label, rank)
    n = rank

    def prod(u, v):
        return scale * dot(tuple(u), tuple(v))

    # cartan[i][j] = <alpha_i, alpha_j-check>
    cartan = tuple(
        tuple(int(2 * prod(ambient[i], ambient[j]) / prod(ambient[j], ambient[j])) for j in range(n))
        for i in range(n)
    )
    gram = tuple(tuple(prod(ambient[i], ambient[j]) for j in range(n)) for i in range(n))
    if not linalg.is_positive_definite(gram):
        raise IllegalType(f"Gram matrix of ({type_label}, {rank}) is not positive definite")

    # Enumerate R by closing the simple roots (plus non-reduced seeds) under
    # the simple reflections, in simple-root coordinates.
    def reflect(coords, i):
        # s_i(beta) = beta - <beta, alpha_i-check> alpha_i
        shift = sum(coords[j] * cartan[j][i] for j in range(n))
        out = list(coords)
        out[i] -= shift
        return tuple(out)

    basis_coords = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seed_coords = list(basis_coords)
    for s in seeds:
        sol = linalg.solve_affine(
            linalg.transpose(linalg.mat(ambient)), tuple(map(Fraction, s))
        )
        assert sol is not None and all(c.denominator == 1 for c in sol)
        seed_coords.append(tuple(int(c) for c in sol))
    roots = set()
    frontier = list(seed_coords)
    while frontier:
        r = frontier.pop()
        if r in roots:
            continue
        roots.add(r)
        neg = tuple(-c for c in r)
        if neg not in roots:
            frontier.append(neg)
        for i in range(n):
            img = reflect(r, i)
            if img not in roots:
                frontier.append(img)

    inv_cartan = mat_inv(linalg.mat(cartan))
    # fundamental weight i in root coordinates is row i of the inverse Cartan
    weights = tuple(tuple(inv_cartan[i][j] for j in range(n)) for i in range(n))
    # Gram of points in the coweight basis is the inverse functional Gram.
    gram_coweight = mat_inv(gram)

    return FiniteRootSystem(
        type_label=type_label,
        rank=rank,
        cartan_matrix=cartan,
        gram_matrix=gram,
        roots=tuple(sorted(roots)),
        weight_lattice_basis=weights,
        root_lattice_basis=tuple(linalg.identity(n)),
        gram_coweight=gram_coweight,
    )


# ---------------------------------------------------------------------------
# Affine functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineFunction:
    """An affine function on E: a gradient functional plus a constant."""

    system: FiniteRootSystem = field(compare=False)
    gradient: Vec
    constant: Fraction

    def __post_init__(self):
        object.__setattr__(self, "gradient", tuple(Fraction(c) for c in self.gradient))
        object.__setattr__(self, "constant", Fraction(self.constant))

    def __call__(self, point: Vec) -> Fraction:
        return self.system.pair(self.gradient, point) + self.constant

    def is_constant(self) -> bool:
        return all(c == 0 for c in self.gradient)

    def scale(self, c) -> "AffineFunction":
        c = Fraction(c)
        return AffineFunction(self.system, vec_scale(c, self.gradient), c * self.constant)

    def add(self, other: "AffineFunction") -> "AffineFunction":
        return AffineFunction(
            self.system,
            tuple(a + b for a, b in zip(self.gradient, other.gradient)),
            self.constant + other.constant,
        )


def pairing(f: AffineFunction, g: AffineFunction) -> Fraction:
    """Scalar product of two affine functions: constants are ignored."""
    return f.system.inner(f.gradient, g.gradient)


def coroot(f: AffineFunction) -> AffineFunction:
    """f -> 2f / |f|^2."""
    norm = pairing(f, f)
    if norm == 0:
        raise ConstantFunction("coroot of a constant function")
    return f.scale(Fraction(2) / norm)


def reflect_point(f: AffineFunction, x: Vec) -> Vec:
    """Reflection of a point of E across the zero locus of f."""
    if f.is_constant():
        raise ConstantFunction("cannot reflect across a constant function")
    corovec = f.system.coroot_vector(f.gradient)
    return vec_sub(tuple(map(Fraction, x)), vec_scale(f(tuple(map(Fraction, x))), corovec))


def reflect_fn(f: AffineFunction, g: AffineFunction) -> AffineFunction:
    """s_f(g) = g - <f_check, g> f."""
    if f.is_constant():
        raise ConstantFunction("cannot reflect across a constant function")
    c = pairing(coroot(f), g)
    return g.add(f.scale(-c))


# ---------------------------------------------------------------------------
# Affine roots and affinisation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineRoot:
    """An affine root: a finite root direction plus an integer level."""

    system: FiniteRootSystem = field(compare=False)
    direction: tuple[int, ...] = ()
    level: int = 0

    def __post_init__(self):
        d = tuple(int(c) for c in self.direction)
        object.__setattr__(self, "direction", d)
        object.__setattr__(self, "level", int(self.level))
        if not self.system.is_root(d):
            raise ValueError(f"{d} is not a root of the finite system")
        if self.system.in_two_q_r(d) and self.level % 2 == 0:
            raise ValueError(
                f"root {d} lies in 2Q_R; only odd levels are affine roots "
                f"(got level {self.level})"
            )

    def as_function(self) -> AffineFunction:
        return AffineFunction(self.system, self.direction, Fraction(self.level))

    def negate(self) -> "AffineRoot":
        return AffineRoot(self.system, tuple(-c for c in self.direction), -self.level)

    def is_positive(self) -> bool:
        """Positivity on the fundamental alcove: level >= 1, or level 0 with
        a positive direction."""
        if self.level != 0:
            return self.level > 0
        return FiniteRootSystem.is_positive(self.direction)

    def __repr__(self):
        return f"AffineRoot({self.direction}, {self.level:+d})"


@dataclass(frozen=True)
class AffineRootSystem:
    """Either the affinisation of a finite system, or the finite system itself
    packaged as a (spherical) Coxeter system with level-0 roots only."""

    finite_base: FiniteRootSystem
    affine: bool
    simples: tuple[AffineRoot, ...]  # aligned with `labels`
    labels: tuple[int, ...]
    theta: tuple[int, ...]
    alcove_interior_point: Vec

    @property
    def rank(self) -> int:
        return self.finite_base.rank

    def contains(self, direction, level: int) -> bool:
        direction = tuple(int(c) for c in direction)
        if not self.finite_base.is_root(direction):
            return False
        if not self.affine:
            return level == 0
        if self.finite_base.in_two_q_r(direction):
            return level % 2 == 1
        return True

    def root(self, direction, level: int = 0) -> AffineRoot:
        if not self.contains(direction, level):
            raise ValueError(f"({tuple(direction)}, {level}) is not in this affine root system")
        return AffineRoot(self.finite_base, tuple(direction), level)

    def simple_by_label(self, label: int) -> AffineRoot:
        return self.simples[self.labels.index(label)]

    def a0(self) -> AffineRoot:
        if not self.affine:
            raise NotIrreducible("finite-mode system has no affine simple root")
        return self.simple_by_label(0)

    def alcove_vertices(self) -> dict[int, Vec]:
        """Vertices of the fundamental alcove keyed by the label of the wall
        they avoid.  Finite mode: the chamber cone has the origin as its only
        vertex plus one ray point per label."""
        n = self.rank
        out: dict[int, Vec] = {}
        if self.affine:
            out[0] = linalg.zero_vec(n)
            for i in range(1, n + 1):
                coeff = Fraction(self.theta[i - 1])
                v = [Fraction(0)] * n
                v[i - 1] = 1 / coeff
                out[i] = tuple(v)
        else:
            for i in range(1, n + 1):
                v = [Fraction(0)] * n
                v[i - 1] = Fraction(1)
                out[i] = tuple(v)
        return out

    def facet_interior_point(self, wall_labels: frozenset[int]) -> Vec:
        """A rational relative-interior point of the face of the fundamental
        alcove on which exactly the given simple walls vanish."""
        wall_labels = frozenset(wall_labels)
        if not wall_labels <= set(self.labels):
            raise ValueError(f"unknown wall labels {sorted(wall_labels - set(self.labels))}")
        if wall_labels == set(self.labels):
            raise ValueError("the facet type must be a proper subset of the walls")
        if self.affine:
            verts = self.alcove_vertices()
            chosen = [verts[l] for l in self.labels if l not in wall_labels]
            k = len(chosen)
            acc = [Fraction(0)] * self.rank
            for v in chosen:
                for i, c in enumerate(v):
                    acc[i] += c
            return tuple(c / k for c in acc)
        point = [Fraction(0)] * self.rank
        for l in self.labels:
            if l not in wall_labels:
                point[l - 1] = Fraction(1)
        return tuple(point)


def affinize(finite: FiniteRootSystem) -> AffineRootSystem:
    """The affinisation: level-shifted copies of R with the parity twist for
    roots in 2Q_R, based by Delta_0 together with a0 = 1 - theta."""
    _check_irreducible(finite)
    n = finite.rank
    theta = finite.highest_root()
    simples = [AffineRoot(finite, tuple(-c for c in theta), 1)]
    labels = [0]
    for i in range(n):
        coords = tuple(1 if j == i else 0 for j in range(n))
        simples.append(AffineRoot(finite, coords, 0))
        labels.append(i + 1)
    height = sum(theta)
    t = Fraction(1, height + 1)
    interior = tuple(t for _ in range(n))
    sys = AffineRootSystem(
        finite_base=finite,
        affine=True,
        simples=tuple(simples),
        labels=tuple(labels),
        theta=theta,
        alcove_interior_point=interior,
    )
    assert all(a.as_function()(interior) > 0 for a in sys.simples)
    return sys


def finite_coxeter(finite: FiniteRootSystem) -> AffineRootSystem:
    """Package a finite root system as a Coxeter system on its chamber."""
    _check_irreducible(finite)
    n = finite.rank
    simples = tuple(
        AffineRoot(finite, tuple(1 if j == i else 0 for j in range(n)), 0) for i in range(n)
    )
    interior = tuple(Fraction(1) for _ in range(n))
    return AffineRootSystem(
        finite_base=finite,
        affine=False,
        simples=simples,
        labels=tuple(range(1, n + 1)),
        theta=finite.highest_root(),
        alcove_interior_point=interior,
    )


def _check_irreducible(finite: FiniteRootSystem) -> None:
    n = finite.rank
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if j not in seen and finite.cartan_matrix[i][j] != 0:
                seen.add(j)
                frontier.append(j)
    if len(seen) != n:
        raise NotIrreducible(f"({finite.type_label}, {n}) Cartan diagram is disconnected")


# ---------------------------------------------------------------------------
# JSON round-trip for root data
# ---------------------------------------------------------------------------


def root_data_to_json(finite: FiniteRootSystem) -> dict:
    return {
        "type": finite.type_label,
        "rank": finite.rank,
        "cartan": [list(row) for row in finite.cartan_matrix],
        "gram": [[_frac_str(e) for e in row] for row in finite.gram_matrix],
    }


def root_data_from_json(data: dict) -> FiniteRootSystem:
    finite = build_finite(data["type"], int(data["rank"]))
    cartan = tuple(tuple(int(e) for e in row) for row in data["cartan"])
    gram = tuple(tuple(_parse_frac(e) for e in row) for row in data["gram"])
    if cartan != finite.cartan_matrix:
        raise ValueError("Cartan matrix does not match the stated type")
    if gram != finite.gram_matrix:
        raise ValueError("Gram matrix does not match the documented normalisation")
    return finite


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _parse_frac(s) -> Fraction:
    return Fraction(s)
