"""The Coxeter complex of an affine (or spherical) root system.

A facet is a coset y W_J with y a minimal-length representative and J a
proper subset of the simple-wall labels; it carries an exact geometric
realisation: a rational interior point and the affine span cut out by the
J-walls of the defining alcove.  On top of facets the module computes point
stabilizers, the grading point x = theta-tilde / m, relative positions with
the good/bad dichotomy, orbit sets and the fixed subcomplex of a parabolic.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .linalg import Vec, dot, mat_vec
from .root_system import AffineFunction, AffineRoot, AffineRootSystem
from .weyl import (
    ExtAffineWeylElement,
    act_on_affine_root,
    canonical_reflection_key,
    double_coset_min_rep,
    enumerate_ball,
    length,
    min_coset_rep,
)
from .relative import (
    NotAdmissible,
    ParabolicSubset,
    in_relative_group,
    is_admissible,
    relative_ball,
    relative_system,
)


class TypeNotContained(ValueError):
    pass


class TypesDiffer(ValueError):
    pass


class BallTooSmall(RuntimeError):
    pass


@dataclass(frozen=True)
class Facet:
    """The coset rep * W_J, rep minimal in its right W_J-coset."""

    ambient: AffineRootSystem = field(compare=False)
    rep: ExtAffineWeylElement = None
    type_labels: frozenset[int] = frozenset()

    def __repr__(self):
        return f"Facet(type={sorted(self.type_labels)}, rep_len={length(self.rep)})"


def facet(ambient: AffineRootSystem, y: ExtAffineWeylElement, labels) -> Facet:
    labels = frozenset(int(l) for l in labels)
    if not labels <= set(ambient.labels):
        raise TypeNotContained(f"unknown labels {sorted(labels - set(ambient.labels))}")
    if labels == set(ambient.labels):
        raise TypeNotContained("a facet type must be a proper subset of the walls")
    return Facet(ambient, min_coset_rep(y, labels, "right"), labels)


def facet_type(f: Facet) -> frozenset[int]:
    return f.type_labels


def boundary(f: Facet, coarser_labels) -> Facet:
    coarser = frozenset(int(l) for l in coarser_labels)
    if not f.type_labels <= coarser:
        raise TypeNotContained(
            f"{sorted(coarser)} does not contain the type {sorted(f.type_labels)}"
        )
    return facet(f.ambient, f.rep, coarser)


def act(w: ExtAffineWeylElement, f: Facet) -> Facet:
    return facet(f.ambient, w * f.rep, f.type_labels)


def interior_point(f: Facet) -> Vec:
    return f.rep.act_point(f.ambient.facet_interior_point(f.type_labels))


def wall_functions(f: Facet) -> tuple[AffineFunction, ...]:
    """The affine roots (as functions) vanishing on f among the walls of its
    defining alcove: the rep-images of the J-labelled simple roots."""
    out = []
    for l in sorted(f.type_labels):
        a = act_on_affine_root(f.rep, f.ambient.simple_by_label(l))
        out.append(a.as_function())
    return tuple(out)


@dataclass(frozen=True)
class AffineSpan:
    """An affine subspace of E: a rational base point, a basis of the
    direction space, and the full set of affine-root hyperplanes through it
    (canonical keys), which pins the subspace down exactly."""

    base: Vec
    directions: tuple[Vec, ...]
    vanishing_roots: frozenset[AffineRoot] = field(compare=False)

    def __eq__(self, other):
        return (
            isinstance(other, AffineSpan)
            and self.vanishing_roots == other.vanishing_roots
            and len(self.directions) == len(other.directions)
        )

    def __hash__(self):
        return hash((frozenset(self.vanishing_roots), len(self.directions)))

    def dim(self) -> int:
        return len(self.directions)


def span(f: Facet) -> AffineSpan:
    ambient = f.ambient
    base = interior_point(f)
    grads = tuple(fn.gradient for fn in wall_functions(f))
    if grads:
        directions = linalg.nullspace(grads)
    else:
        directions = tuple(linalg.identity(ambient.rank))
    vanishing = set()
    finite = ambient.finite_base
    for root in finite.roots:
        if not finite.is_positive(root):
            continue
        rf = tuple(map(Fraction, root))
        if any(dot(rf, d) != 0 for d in directions):
            continue
        level = -finite.pair(rf, base)
        if level.denominator != 1 or not ambient.contains(root, int(level)):
            continue
        vanishing.add(canonical_reflection_key(AffineRoot(finite, root, int(level))))
    return AffineSpan(base, directions, frozenset(vanishing))


def project_point(ambient: AffineRootSystem, x: Vec, sp: AffineSpan) -> Vec:
    """Orthogonal projection of x onto the subspace, for the point form."""
    x = tuple(Fraction(c) for c in x)
    if not sp.directions:
        return sp.base
    gram = ambient.finite_base.gram_coweight
    diff = linalg.vec_sub(x, sp.base)
    rows = []
    rhs = []
    for d in sp.directions:
        gd = mat_vec(gram, d)
        rows.append(tuple(dot(gd, e) for e in sp.directions))
        rhs.append(dot(gd, diff))
    coeffs = linalg.solve_affine(tuple(rows), tuple(rhs))
    assert coeffs is not None
    out = sp.base
    for c, d in zip(coeffs, sp.directions):
        out = linalg.vec_add(out, linalg.vec_scale(c, d))
    return out


def facet_stabilizer_reflections(f: Facet) -> frozenset[AffineRoot]:
    """Reflection set of Stab(f) = rep W_J rep^{-1}, as canonical keys."""
    p = ParabolicSubset(f.ambient, f.type_labels)
    return frozenset(
        canonical_reflection_key(act_on_affine_root(f.rep, t)) for t in p.reflections()
    )


# ---------------------------------------------------------------------------
# Point stabilizers and the grading point
# ---------------------------------------------------------------------------


def stabilizer_of_point(ambient: AffineRootSystem, x: Vec) -> tuple[AffineRoot, ...]:
    """All affine roots vanishing at x (canonical keys); their reflections
    generate Stab_W(x)."""
    x = tuple(Fraction(c) for c in x)
    finite = ambient.finite_base
    out = []
    for root in finite.roots:
        if not finite.is_positive(root):
            continue
        level = -finite.pair(tuple(map(Fraction, root)), x)
        if level.denominator != 1 or not ambient.contains(root, int(level)):
            continue
        out.append(canonical_reflection_key(AffineRoot(finite, root, int(level))))
    return tuple(sorted(out, key=lambda a: (a.direction, a.level)))


def stabilizer_group(ambient: AffineRootSystem, x: Vec) -> frozenset[ExtAffineWeylElement]:
    gens = [
        ExtAffineWeylElement.reflection(ambient, a) for a in stabilizer_of_point(ambient, x)
    ]
    group = {ExtAffineWeylElement.identity(ambient)}
    frontier = list(group)
    while frontier:
        g = frontier.pop()
        for s in gens:
            h = s * g
            if h not in group:
                group.add(h)
                frontier.append(h)
    return frozenset(group)


@dataclass(frozen=True)
class GradingPoint:
    """x = theta_tilde / m with its stabilizer data."""

    ambient: AffineRootSystem = field(compare=False)
    theta_tilde: Vec = ()
    m: int = 1

    def __post_init__(self):
        object.__setattr__(
            self, "theta_tilde", tuple(Fraction(c) for c in self.theta_tilde)
        )
        if self.m <= 0:
            raise ValueError("m must be a positive integer")

    @property
    def x(self) -> Vec:
        return tuple(c / self.m for c in self.theta_tilde)

    def stabilizer_roots(self) -> tuple[AffineRoot, ...]:
        return stabilizer_of_point(self.ambient, self.x)

    def stabilizer(self) -> frozenset[ExtAffineWeylElement]:
        return stabilizer_group(self.ambient, self.x)


# ---------------------------------------------------------------------------
# Relative position
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelativePosition:
    double_coset: ExtAffineWeylElement
    good: bool
    relative_element: ExtAffineWeylElement | None = None


def act_relative(w: ExtAffineWeylElement, f: Facet) -> Facet:
    """The base-point-transported left action of the relative group on
    facets: w is conjugated into the copy of the Coxeter system based at the
    alcove of f before acting, which amounts to yW_J -> y w^{-1} W_J."""
    return facet(f.ambient, f.rep * w.inverse(), f.type_labels)


def relative_position(f: Facet, g: Facet) -> RelativePosition:
    """The W_I-double coset of the pair, its good/bad classification by span
    comparison, and for good pairs the unique relative-group element in the
    coset W_I (rep_f^-1 rep_g), which moves g onto f under act_relative."""
    if f.type_labels != g.type_labels:
        raise TypesDiffer(
            f"types {sorted(f.type_labels)} and {sorted(g.type_labels)} differ"
        )
    labels = f.type_labels
    base = f.rep.inverse() * g.rep
    w = double_coset_min_rep(base, labels, labels)
    good = span(f) == span(g)
    rel_elt = None
    if good:
        ambient = f.ambient
        matches = []
        for u in ParabolicSubset(ambient, labels).elements():
            cand = u * base
            if in_relative_group(ambient, cand, labels):
                matches.append(cand)
        assert len(matches) == 1, "good pair without a unique relative element"
        rel_elt = matches[0]
        assert act_relative(rel_elt, g) == f
    return RelativePosition(w, good, rel_elt)


# ---------------------------------------------------------------------------
# Enumeration, orbit sets, fixed subcomplex
# ---------------------------------------------------------------------------


def facets_in_ball(
    ambient: AffineRootSystem, radius: int, types=None
) -> frozenset[Facet]:
    """All facets with a representative in the length ball; `types` restricts
    the facet types, default all proper subsets of the walls."""
    if types is None:
        all_labels = list(ambient.labels)
        types = []
        for mask in range(2 ** len(all_labels) - 1):
            types.append(
                frozenset(l for k, l in enumerate(all_labels) if mask >> k & 1)
            )
    out = set()
    for y in enumerate_ball(ambient, radius):
        for t in types:
            out.add(facet(ambient, y, t))
    return frozenset(out)


def xi_orbit(
    point: GradingPoint, nu0: Facet, radius: int
) -> tuple[frozenset[Facet], bool]:
    """The orbit Xi = W_x . (E-alcoves of span(nu0)) intersected with the
    enumeration ball; the flag reports whether the ball saw every E-alcove
    candidate strictly inside (no representative at the boundary length)."""
    target = span(nu0)
    alcoves = {
        f
        for f in facets_in_ball(point.ambient, radius, types=[nu0.type_labels])
        if span(f) == target
    }
    orbit = set()
    for w in point.stabilizer():
        for f in alcoves:
            orbit.add(act(w, f))
    complete = all(length(f.rep) < radius for f in orbit)
    return frozenset(orbit), complete


@dataclass(frozen=True)
class FixedChambersReport:
    chambers: tuple[Facet, ...]
    action: dict = field(compare=False)  # (generator label, facet) -> facet or None
    single_free_orbit: bool = False
    ball_complete: bool = False
    boundary_excluded: tuple[Facet, ...] = ()


def fixed_chambers(ambient: AffineRootSystem, sigma, radius: int) -> FixedChambersReport:
    """Chambers of the fixed subcomplex: facets in the ball whose stabilizer
    equals W_Sigma, with the relative-group action table on them."""
    sigma = frozenset(int(l) for l in sigma)
    ok, cert = is_admissible(ambient, sigma)
    if not ok:
        raise NotAdmissible(f"{sorted(sigma)} is not admissible: {cert}")
    t_sigma = ParabolicSubset(ambient, sigma).reflections()
    k = len(sigma)
    candidate_types = [
        t
        for t in _subsets_of_size(list(ambient.labels), k)
        if t != frozenset(ambient.labels) and ParabolicSubset(ambient, t).is_finite()
    ]
    found = set()
    for f in facets_in_ball(ambient, radius, types=candidate_types):
        if facet_stabilizer_reflections(f) == t_sigma:
            found.add(f)
    for f in found:
        assert f.type_labels == sigma, "fixed chamber of unexpected type"

    rel = relative_system(ambient, sigma)
    interior = {f for f in found if length(f.rep) < radius}
    boundary_cut = tuple(sorted(found - interior, key=lambda f: length(f.rep)))
    action = {}
    closed = True
    for f in interior:
        for l, st in rel.simples.items():
            image = act(st, f)
            if image in found:
                action[(l, f)] = image
            else:
                action[(l, f)] = None
                closed = False
    if not interior:
        raise BallTooSmall("no fixed chamber lies strictly inside the ball")

    # simple transitivity: the found set is exactly the distinct translates of
    # the base chamber under the relative ball, with no repeats off-identity
    base = facet(ambient, ExtAffineWeylElement.identity(ambient), sigma)
    single_free = base in found
    if single_free:
        seen = {}
        for g, d in relative_ball(rel, radius).items():
            image = act(g, base)
            if image in found:
                if image in seen and seen[image] != g:
                    single_free = False
                    break
                seen[image] = g
        else:
            single_free = single_free and set(seen) >= interior
    chambers = tuple(
        sorted(found, key=lambda f: (length(f.rep), f.rep.mu, f.rep.matrix))
    )
    return FixedChambersReport(
        chambers=chambers,
        action=action,
        single_free_orbit=single_free,
        ball_complete=closed,
        boundary_excluded=boundary_cut,
    )


def _subsets_of_size(items, k):
    from itertools import combinations

    return [frozenset(c) for c in combinations(items, k)]
