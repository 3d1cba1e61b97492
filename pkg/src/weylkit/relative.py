"""Relative Coxeter groups: admissible parabolic subsets, the subgroup of
minimal-length normalizer representatives, its simple system and length.

A parabolic subset is a set of simple-wall labels.  The relative simple
reflections are the elements w0^{Sigma+s} * w0^Sigma for s ranging over the
labels whose enlarged parabolic stays finite.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .root_system import AffineRoot, AffineRootSystem
from .weyl import (
    ExtAffineWeylElement,
    act_on_affine_root,
    canonical_reflection_key,
    coxeter_order,
    has_left_descent,
    length,
    min_coset_rep,
    reflection_root_of,
    reflections_T,
)


class NotFinite(ValueError):
    pass


class NotAdmissible(ValueError):
    pass


class NotInRelativeGroup(ValueError):
    pass


class NotANormalizerElement(ValueError):
    pass


class ParabolicSubset:
    """A subset of the simple walls with cached finiteness data."""

    def __init__(self, ambient: AffineRootSystem, sigma):
        sigma = frozenset(int(l) for l in sigma)
        unknown = sigma - set(ambient.labels)
        if unknown:
            raise ValueError(f"unknown simple labels {sorted(unknown)}")
        self.ambient = ambient
        self.sigma = sigma
        self._longest = None
        self._reflections = None

    def __eq__(self, other):
        return isinstance(other, ParabolicSubset) and self.sigma == other.sigma

    def __hash__(self):
        return hash(self.sigma)

    def __repr__(self):
        return f"ParabolicSubset({sorted(self.sigma)})"

    def is_finite(self) -> bool:
        """W_Sigma is finite exactly when the wall gradients are linearly
        independent, in which case the group fixes a point of E."""
        grads = [
            tuple(map(Fraction, self.ambient.simple_by_label(l).direction))
            for l in sorted(self.sigma)
        ]
        return linalg.rank(tuple(grads)) == len(grads)

    def longest_element(self) -> ExtAffineWeylElement:
        if not self.is_finite():
            raise NotFinite(f"W_Sigma is infinite for Sigma = {sorted(self.sigma)}")
        if self._longest is None:
            g = ExtAffineWeylElement.identity(self.ambient)
            progress = True
            while progress:
                progress = False
                for l in sorted(self.sigma):
                    a = self.ambient.simple_by_label(l)
                    if act_on_affine_root(g, a).is_positive():
                        g = g * ExtAffineWeylElement.simple(self.ambient, l)
                        progress = True
                        break
            self._longest = g
        return self._longest

    def reflections(self) -> frozenset[AffineRoot]:
        """T_Sigma, as canonical reflection keys: exactly T(w0^Sigma)."""
        if self._reflections is None:
            if not self.sigma:
                self._reflections = frozenset()
            else:
                self._reflections = reflections_T(self.longest_element())
        return self._reflections

    def contains_reflection(self, g: ExtAffineWeylElement) -> bool:
        return reflection_root_of(g) in self.reflections()

    def elements(self) -> frozenset[ExtAffineWeylElement]:
        out = {ExtAffineWeylElement.identity(self.ambient)}
        frontier = list(out)
        while frontier:
            g = frontier.pop()
            for l in self.sigma:
                h = g * ExtAffineWeylElement.simple(self.ambient, l)
                if h not in out:
                    out.add(h)
                    frontier.append(h)
        return frozenset(out)


def is_parabolic_finite(ambient: AffineRootSystem, sigma) -> bool:
    return ParabolicSubset(ambient, sigma).is_finite()


def longest_element(ambient: AffineRootSystem, sigma) -> ExtAffineWeylElement:
    return ParabolicSubset(ambient, sigma).longest_element()


def is_admissible(ambient: AffineRootSystem, sigma) -> tuple[bool, list[frozenset[int]]]:
    """Check the two normalisation hypotheses; on failure the certificate
    lists every enlarged subset whose longest element moves W_Sigma."""
    base = ParabolicSubset(ambient, sigma)
    if not base.is_finite():
        return False, [base.sigma]
    violations = []
    others = sorted(set(ambient.labels) - base.sigma)
    for k in range(len(others) + 1):
        for extra in combinations(others, k):
            big = ParabolicSubset(ambient, base.sigma | set(extra))
            if not big.is_finite():
                continue
            w0 = big.longest_element()
            w0inv = w0.inverse()
            for l in sorted(base.sigma):
                s = ExtAffineWeylElement.simple(ambient, l)
                if not base.contains_reflection(w0 * s * w0inv):
                    violations.append(big.sigma)
                    break
    return not violations, violations


@dataclass(frozen=True)
class RelativeCoxeterSystem:
    ambient: AffineRootSystem = field(compare=False)
    base: ParabolicSubset = field(compare=False)
    sigma_complement: tuple[int, ...] = ()
    simples: dict = field(compare=False, default=None)  # label -> s-tilde element
    coxeter_matrix: dict = field(compare=False, default=None)  # (s,t) -> order or None
    order_cap: int = 12
    degenerate_single_complement: bool = False

    def simple_labels(self):
        return tuple(sorted(self.simples))

    def generator(self, label: int) -> ExtAffineWeylElement:
        return self.simples[label]


def relative_system(
    ambient: AffineRootSystem, sigma, order_cap: int = 12
) -> RelativeCoxeterSystem:
    ok, cert = is_admissible(ambient, sigma)
    if not ok:
        raise NotAdmissible(
            f"Sigma = {sorted(sigma)} is not admissible; violating supersets: "
            f"{[sorted(c) for c in cert]}"
        )
    base = ParabolicSubset(ambient, sigma)
    w0_sigma = base.longest_element()
    complement = []
    simples = {}
    for l in sorted(set(ambient.labels) - base.sigma):
        enlarged = ParabolicSubset(ambient, base.sigma | {l})
        if not enlarged.is_finite():
            continue
        complement.append(l)
        simples[l] = enlarged.longest_element() * w0_sigma
    cox = {}
    labels = sorted(simples)
    for s in labels:
        cox[(s, s)] = 1
    for s, t in combinations(labels, 2):
        order = coxeter_order(simples[s], simples[t], cap=order_cap)
        cox[(s, t)] = order
        cox[(t, s)] = order
    return RelativeCoxeterSystem(
        ambient=ambient,
        base=base,
        sigma_complement=tuple(complement),
        simples=simples,
        coxeter_matrix=cox,
        order_cap=order_cap,
        degenerate_single_complement=(len(set(ambient.labels) - base.sigma) == 1),
    )


def in_relative_group(ambient: AffineRootSystem, g: ExtAffineWeylElement, sigma) -> bool:
    """Membership in W-tilde: minimal in its W_Sigma-coset and normalising."""
    base = ParabolicSubset(ambient, sigma)
    if reflections_T(g) & base.reflections():
        return False
    ginv = g.inverse()
    for l in sorted(base.sigma):
        s = ExtAffineWeylElement.simple(ambient, l)
        try:
            if not base.contains_reflection(g * s * ginv):
                return False
        except Exception:
            return False
    return True


def relative_descents(rel: RelativeCoxeterSystem, g: ExtAffineWeylElement) -> list[int]:
    """Labels s whose relative simple reflection shortens g on the left,
    by the length-subtraction criterion."""
    lg = length(g)
    out = []
    for l, st in sorted(rel.simples.items()):
        if length(st * g) == lg - length(st):
            out.append(l)
    return out


def relative_length(rel: RelativeCoxeterSystem, g: ExtAffineWeylElement) -> int:
    if not in_relative_group(rel.ambient, g, rel.base.sigma):
        raise NotInRelativeGroup(f"element is not in the relative group of {rel.base}")
    count = 0
    while not g.is_identity():
        ds = relative_descents(rel, g)
        if not ds:
            raise NotInRelativeGroup(
                "no relative descent found; element is outside the relative group"
            )
        g = rel.simples[ds[0]] * g
        count += 1
    return count


def relative_reduced_word(rel: RelativeCoxeterSystem, g: ExtAffineWeylElement) -> tuple[int, ...]:
    letters = []
    while not g.is_identity():
        ds = relative_descents(rel, g)
        if not ds:
            raise NotInRelativeGroup("element has no relative reduced word")
        letters.append(ds[0])
        g = rel.simples[ds[0]] * g
    return tuple(letters)


def relative_ball(rel: RelativeCoxeterSystem, radius: int) -> dict[ExtAffineWeylElement, int]:
    """Elements of W-tilde with relative length <= radius."""
    e = ExtAffineWeylElement.identity(rel.ambient)
    ball = {e: 0}
    frontier = [e]
    for dist in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for st in rel.simples.values():
                h = st * g
                if h not in ball:
                    ball[h] = dist
                    nxt.append(h)
        frontier = nxt
    return ball


# ---------------------------------------------------------------------------
# Normalizer sets and the chain decomposition
# ---------------------------------------------------------------------------


def normalizer_pairs(
    ambient: AffineRootSystem, sigma, sigma_prime, radius: int, ball=None
) -> list[ExtAffineWeylElement]:
    """Elements of N(Sigma, Sigma') found in the length ball."""
    from .weyl import enumerate_ball

    left = ParabolicSubset(ambient, sigma)
    right = ParabolicSubset(ambient, sigma_prime)
    if ball is None:
        ball = enumerate_ball(ambient, radius)
    out = []
    for y in ball:
        if _is_normalizer_pair(ambient, y, left, right):
            out.append(y)
    return sorted(out, key=lambda y: (length(y), y.mu, y.matrix))


def _is_normalizer_pair(ambient, y, left: ParabolicSubset, right: ParabolicSubset) -> bool:
    if min_coset_rep(y, left.sigma, "right") != y:
        return False
    if min_coset_rep(y, right.sigma, "left") != y:
        return False
    yinv = y.inverse()
    for l in sorted(left.sigma):
        s = ExtAffineWeylElement.simple(ambient, l)
        if not right.contains_reflection(y * s * yinv):
            return False
    for l in sorted(right.sigma):
        s = ExtAffineWeylElement.simple(ambient, l)
        if not left.contains_reflection(yinv * s * y):
            return False
    return True


@dataclass(frozen=True)
class ElementaryMove:
    sigma_from: frozenset[int]
    sigma_to: frozenset[int]
    s: int
    element: ExtAffineWeylElement = field(compare=False)


def _conjugate_labels(ambient, z: ExtAffineWeylElement, labels) -> frozenset[int]:
    """Image of a set of simple labels under Int_z, which must send simples
    to simples."""
    out = set()
    zinv = z.inverse()
    for l in labels:
        s = ExtAffineWeylElement.simple(ambient, l)
        key = reflection_root_of(z * s * zinv)
        for cand, lab in zip(ambient.simples, ambient.labels):
            if canonical_reflection_key(cand) == key:
                out.add(lab)
                break
        else:
            raise NotANormalizerElement("conjugation does not preserve the simple system")
    return frozenset(out)


def lien_decompose(
    ambient: AffineRootSystem, y: ExtAffineWeylElement, sigma, sigma_prime
) -> list[ElementaryMove]:
    """Split y in N(Sigma, Sigma') into elementary w0*w0 moves whose lengths
    add up to l(y), following the descent-peeling induction."""
    left = ParabolicSubset(ambient, sigma)
    right = ParabolicSubset(ambient, sigma_prime)
    if not (left.is_finite() and right.is_finite()):
        raise NotANormalizerElement("both parabolic subgroups must be finite")
    if not _is_normalizer_pair(ambient, y, left, right):
        raise NotANormalizerElement(
            f"element is not in N({sorted(left.sigma)}, {sorted(right.sigma)})"
        )
    moves = _lien_recurse(ambient, y, left.sigma, right.sigma)
    total = ExtAffineWeylElement.identity(ambient)
    for mv in moves:
        total = mv.element * total
    assert total == y
    assert sum(length(mv.element) for mv in moves) == length(y)
    return moves


def _lien_recurse(ambient, y, sigma, sigma_prime) -> list[ElementaryMove]:
    if y.is_identity():
        assert sigma == sigma_prime
        return []
    s = next(l for l in sorted(ambient.labels) if has_left_descent(y, l))
    assert s not in sigma_prime
    enlarged = ParabolicSubset(ambient, set(sigma_prime) | {s})
    z = enlarged.longest_element() * ParabolicSubset(ambient, sigma_prime).longest_element()
    sigma_second = _conjugate_labels(ambient, z, sigma_prime)
    rest = z * y
    moves = _lien_recurse(ambient, rest, sigma, sigma_second)
    zinv = z.inverse()
    s_q = None
    for cand in sorted(set(ambient.labels) - sigma_second):
        cand_parab = ParabolicSubset(ambient, sigma_second | {cand})
        if not cand_parab.is_finite():
            continue
        w = cand_parab.longest_element() * ParabolicSubset(ambient, sigma_second).longest_element()
        if w == zinv:
            s_q = cand
            break
    assert s_q is not None, "inverse move is not of the w0*w0 form"
    moves.append(ElementaryMove(frozenset(sigma_second), frozenset(sigma_prime), s_q, zinv))
    return moves
