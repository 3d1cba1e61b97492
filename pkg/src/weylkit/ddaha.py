"""The degenerate double affine Hecke algebra of an affine root system.

Elements live in the vector space CW tensor C[E] in the normal form
"group letters left, polynomials right"; multiplication pushes polynomials
to the right through group letters with the cross relation

    s_a f - s_a(f) s_a = h_a (f - s_a(f)) / a,      h_a = (d / 2m) c_a,

where the division is exact polynomial division.  The module also provides
relation verification, truncated standard modules and orbit/stabilizer
search for category-O weight analysis.
"""

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import DivisionNotExact, Poly, divide_linear, weyl_action
from .root_system import AffineRootSystem
from .weyl import (
    ExtAffineWeylElement,
    coxeter_order,
    enumerate_ball,
    length,
    reduced_word,
)


class InvalidParameters(ValueError):
    pass


class TriangularityViolated(RuntimeError):
    pass


class NotInGroupSupport(ValueError):
    """An element's group part left the subgroup generated by the simples."""


@dataclass(frozen=True)
class HeckeParameters:
    """Grading integers (m, d) and the orbit-invariant family c."""

    m: int
    d: int
    c: tuple = ()  # sorted (label, value) pairs
    unsafe: bool = False

    @staticmethod
    def make(m: int, d: int, c: dict, unsafe: bool = False) -> "HeckeParameters":
        return HeckeParameters(
            m, d, tuple(sorted((int(l), Fraction(v)) for l, v in c.items())), unsafe
        )

    def c_map(self) -> dict:
        return dict(self.c)

    def h(self, label: int) -> Fraction:
        return Fraction(self.d, 2 * self.m) * self.c_map()[label]


@dataclass(frozen=True)
class DdahaAlgebra:
    ambient: AffineRootSystem = field(compare=False)
    params: HeckeParameters = None

    @property
    def nvars(self) -> int:
        return self.ambient.rank

    # -- element constructors --------------------------------------------

    def zero(self) -> "DdahaElement":
        return DdahaElement(self, frozenset())

    def one(self) -> "DdahaElement":
        return self.group(ExtAffineWeylElement.identity(self.ambient))

    def group(self, g: ExtAffineWeylElement) -> "DdahaElement":
        return self.element({g: Poly.const(self.nvars, 1)})

    def generator(self, label: int) -> "DdahaElement":
        return self.group(ExtAffineWeylElement.simple(self.ambient, label))

    def polynomial(self, f: Poly) -> "DdahaElement":
        return self.element({ExtAffineWeylElement.identity(self.ambient): f})

    def element(self, mapping: dict) -> "DdahaElement":
        return DdahaElement(
            self, frozenset((g, f) for g, f in mapping.items() if not f.is_zero())
        )

    def coordinate(self, i: int) -> "DdahaElement":
        return self.polynomial(Poly.variable(self.nvars, i))

    # -- internals --------------------------------------------------------

    def wall_poly(self, label: int) -> Poly:
        a = self.ambient.simple_by_label(label)
        return Poly.affine(tuple(map(Fraction, a.direction)), Fraction(a.level))

    def _word(self, g: ExtAffineWeylElement) -> tuple[int, ...]:
        rw = reduced_word(g)
        if not rw.pi.is_identity():
            raise NotInGroupSupport(
                "group part has a nontrivial length-0 component"
            )
        return rw.letters


def build_algebra(ambient: AffineRootSystem, params: HeckeParameters) -> DdahaAlgebra:
    if params.m <= 0 or params.d == 0:
        raise InvalidParameters("need m > 0 and d != 0")
    c = params.c_map()
    if set(c) != set(ambient.labels):
        raise InvalidParameters(
            f"parameter labels {sorted(c)} do not match the walls {list(ambient.labels)}"
        )
    for l, v in c.items():
        if not params.unsafe:
            if v.denominator != 1 or v < 2:
                raise InvalidParameters(
                    f"c_{l} = {v} must be an integer >= 2 (or pass unsafe=True)"
                )
    # invariance over conjugation orbits: s and t are conjugate inside their
    # dihedral subgroup exactly when the order of st is odd
    labels = sorted(ambient.labels)
    for i, s in enumerate(labels):
        for t in labels[i + 1 :]:
            order = coxeter_order(
                ExtAffineWeylElement.simple(ambient, s),
                ExtAffineWeylElement.simple(ambient, t),
                cap=12,
            )
            if order is not None and order % 2 == 1 and c[s] != c[t]:
                raise InvalidParameters(
                    f"c_{s} = {c[s]} and c_{t} = {c[t]} differ on one conjugation orbit"
                )
    return DdahaAlgebra(ambient, params)


@dataclass(frozen=True)
class DdahaElement:
    """Normal form: a finitely supported map g -> nonzero polynomial."""

    algebra: DdahaAlgebra = field(compare=False)
    terms: frozenset = frozenset()  # pairs (group element, Poly)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def support_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(length(g) for g, _ in self.terms))

    def max_degree(self) -> int:
        return max((f.degree() for _, f in self.terms), default=-1)

    def __add__(self, other: "DdahaElement") -> "DdahaElement":
        out = self.as_dict()
        for g, f in other.terms:
            out[g] = out.get(g, Poly.zero(self.algebra.nvars)) + f
        return self.algebra.element(out)

    def __sub__(self, other: "DdahaElement") -> "DdahaElement":
        return self + other.scale(-1)

    def scale(self, c) -> "DdahaElement":
        return self.algebra.element({g: f.scale(c) for g, f in self.terms})

    def __mul__(self, other: "DdahaElement") -> "DdahaElement":
        return multiply(self, other)


def cross_multiply(algebra: DdahaAlgebra, label: int, f: Poly) -> DdahaElement:
    """The normal form of f * s_label:
    s tensor s_a(f)  +  e tensor h_a (f - s_a(f)) / a."""
    s = ExtAffineWeylElement.simple(algebra.ambient, label)
    sf = weyl_action(s, f)
    try:
        demazure = divide_linear(f - sf, algebra.wall_poly(label))
    except DivisionNotExact as exc:
        raise DivisionNotExact(
            f"f - s_a(f) not divisible by the wall at label {label}: {exc}"
        ) from exc
    e = ExtAffineWeylElement.identity(algebra.ambient)
    return algebra.element({s: sf, e: demazure.scale(algebra.params.h(label))})


def _push(algebra: DdahaAlgebra, f: Poly, letters: tuple[int, ...]) -> dict:
    """Normal form of f * s_{l1} * ... * s_{lq} as a map g -> Poly."""
    if f.is_zero():
        return {}
    if not letters:
        return {ExtAffineWeylElement.identity(algebra.ambient): f}
    l, rest = letters[0], letters[1:]
    crossed = cross_multiply(algebra, l, f)
    s = ExtAffineWeylElement.simple(algebra.ambient, l)
    out = {}
    for g, p in crossed.terms:
        for w, q in _push(algebra, p, rest).items():
            key = g * w
            out[key] = out.get(key, Poly.zero(algebra.nvars)) + q
    return out


def multiply(x: DdahaElement, y: DdahaElement) -> DdahaElement:
    algebra = x.algebra
    out = {}
    for g, f in x.terms:
        for w, q in y.terms:
            pushed = _push(algebra, f, algebra._word(w))
            for u, p in pushed.items():
                key = g * u
                out[key] = out.get(key, Poly.zero(algebra.nvars)) + p * q
    return algebra.element(out)


# ---------------------------------------------------------------------------
# Relation verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelationReport:
    squares_ok: bool
    braid_ok: bool
    cross_ok: bool
    failures: tuple = ()

    def ok(self) -> bool:
        return self.squares_ok and self.braid_ok and self.cross_ok


def random_polynomial(
    rng: random.Random, nvars: int, degree: int = 2, support: int = 3
) -> Poly:
    out = Poly.zero(nvars)
    for _ in range(rng.randrange(1, support + 1)):
        exps = [0] * nvars
        for _ in range(rng.randrange(degree + 1)):
            exps[rng.randrange(nvars)] += 1
        coeff = Fraction(rng.randrange(-5, 6), rng.randrange(1, 4))
        out = out + Poly(nvars, frozenset({(tuple(exps), coeff)} if coeff else set()))
    return out


def verify_relations(
    algebra: DdahaAlgebra, seed: int = 0, n_random: int = 20
) -> RelationReport:
    rng = random.Random(seed)
    failures = []
    labels = sorted(algebra.ambient.labels)
    one = algebra.one()
    squares_ok = True
    for l in labels:
        s = algebra.generator(l)
        if multiply(s, s) != one:
            squares_ok = False
            failures.append(("square", l))
    braid_ok = True
    for i, s in enumerate(labels):
        for t in labels[i + 1 :]:
            order = coxeter_order(
                ExtAffineWeylElement.simple(algebra.ambient, s),
                ExtAffineWeylElement.simple(algebra.ambient, t),
                cap=12,
            )
            if order is None:
                continue
            lhs = rhs = one
            for k in range(order):
                lhs = multiply(lhs, algebra.generator(s if k % 2 == 0 else t))
                rhs = multiply(rhs, algebra.generator(t if k % 2 == 0 else s))
            if lhs != rhs:
                braid_ok = False
                failures.append(("braid", s, t))
    cross_ok = True
    for l in labels:
        s_elt = ExtAffineWeylElement.simple(algebra.ambient, l)
        for _ in range(n_random):
            f = random_polynomial(rng, algebra.nvars, degree=3)
            sf = weyl_action(s_elt, f)
            lhs = multiply(algebra.generator(l), algebra.polynomial(f)) - multiply(
                algebra.polynomial(sf), algebra.generator(l)
            )
            demazure = divide_linear(f - sf, algebra.wall_poly(l))
            rhs = algebra.polynomial(demazure.scale(algebra.params.h(l)))
            if lhs != rhs:
                cross_ok = False
                failures.append(("cross", l, f))
    return RelationReport(squares_ok, braid_ok, cross_ok, tuple(failures))


# ---------------------------------------------------------------------------
# Standard modules and weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StandardModule:
    """The induced module with highest weight lam0, truncated to basis
    vectors g with l(g) <= depth."""

    algebra: DdahaAlgebra = field(compare=False)
    lam0: tuple = ()
    depth: int = 0
    basis: tuple = ()  # group elements, sorted by (length, mu, matrix)

    def weight_of(self, g: ExtAffineWeylElement) -> tuple:
        return g.act_point(self.lam0)

    def weights(self) -> tuple:
        return tuple(self.weight_of(g) for g in self.basis)

    def weight_multiplicities(self) -> dict:
        out = {}
        for w in self.weights():
            out[w] = out.get(w, 0) + 1
        return out

    def action_matrix(self, f: Poly):
        """Matrix of the polynomial f on the truncation, columns indexed by
        the basis order; triangularity over length is asserted."""
        n = len(self.basis)
        index = {g: i for i, g in enumerate(self.basis)}
        cols = []
        for g in self.basis:
            pushed = _push(self.algebra, f, self.algebra._word(g))
            col = [Fraction(0)] * n
            for u, p in pushed.items():
                value = p.evaluate(self.lam0)
                if value == 0:
                    continue
                if u != g and length(u) >= length(g):
                    raise TriangularityViolated(
                        f"length {length(u)} term above diagonal of length {length(g)}"
                    )
                col[index[u]] += value
            diag = f.evaluate(self.weight_of(g))
            assert col[index[g]] == diag, "diagonal entry is not f at the weight"
            cols.append(col)
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def standard_module(algebra: DdahaAlgebra, lam0, depth: int) -> StandardModule:
    lam0 = tuple(Fraction(c) for c in lam0)
    ball = enumerate_ball(algebra.ambient, depth)
    basis = tuple(sorted(ball, key=lambda g: (length(g), g.mu, g.matrix)))
    return StandardModule(algebra, lam0, depth, basis)


def orbit(ambient: AffineRootSystem, lam0, radius: int) -> tuple[frozenset, bool]:
    """W-orbit points of lam0 seen in the length ball, with a ball-complete
    flag (True when the ball boundary added no new point)."""
    lam0 = tuple(Fraction(c) for c in lam0)
    ball = enumerate_ball(ambient, radius)
    pts = {g.act_point(lam0) for g in ball}
    inner = {g.act_point(lam0) for g, l in ball.items() if l < radius}
    return frozenset(pts), pts == inner


def stabilizer(ambient: AffineRootSystem, lam0, radius: int) -> frozenset:
    lam0 = tuple(Fraction(c) for c in lam0)
    return frozenset(
        g for g in enumerate_ball(ambient, radius) if g.act_point(lam0) == lam0
    )


# ---------------------------------------------------------------------------
# Element literals
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(s\d+|x\d+|\^|\*|\+|-|\(|\)|\d+|/)")


class LiteralSyntaxError(ValueError):
    pass


def parse_element(algebra: DdahaAlgebra, text: str) -> DdahaElement:
    """Parse the literal grammar `s1*s0*x1^2 + (3/2)*s1`: sums of products of
    generators s<k>, coordinates x<k> with optional integer powers, and exact
    rational literals (parenthesized when fractional, `-` allowed)."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise LiteralSyntaxError(f"cannot tokenize at: {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    state = {"i": 0}

    def peek():
        return tokens[state["i"]] if state["i"] < len(tokens) else None

    def take(expected=None):
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise LiteralSyntaxError(f"expected {expected!r}, got {tok!r}")
        state["i"] += 1
        return tok

    def parse_rational() -> Fraction:
        sign = 1
        if peek() == "-":
            take()
            sign = -1
        num = int(take())
        if peek() == "/":
            take()
            den = int(take())
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    def parse_factor() -> DdahaElement:
        tok = peek()
        if tok is None:
            raise LiteralSyntaxError("unexpected end of input")
        if tok.startswith("s") and tok != "s":
            take()
            label = int(tok[1:])
            if label not in algebra.ambient.labels:
                raise LiteralSyntaxError(f"unknown generator {tok}")
            return algebra.generator(label)
        if tok.startswith("x"):
            take()
            i = int(tok[1:]) - 1
            if not 0 <= i < algebra.nvars:
                raise LiteralSyntaxError(f"unknown coordinate {tok}")
            power = 1
            if peek() == "^":
                take()
                power = int(take())
            out = algebra.one()
            for _ in range(power):
                out = multiply(out, algebra.coordinate(i))
            return out
        if tok == "(":
            take()
            value = parse_rational()
            take(")")
            return algebra.polynomial(Poly.const(algebra.nvars, value))
        if tok.isdigit():
            take()
            return algebra.polynomial(Poly.const(algebra.nvars, int(tok)))
        raise LiteralSyntaxError(f"unexpected token {tok!r}")

    def parse_term() -> DdahaElement:
        out = parse_factor()
        while peek() == "*":
            take()
            out = multiply(out, parse_factor())
        return out

    def parse_sum() -> DdahaElement:
        negate = False
        if peek() == "-":
            take()
            negate = True
        out = parse_term()
        if negate:
            out = out.scale(-1)
        while peek() in ("+", "-"):
            op = take()
            nxt = parse_term()
            out = out + (nxt.scale(-1) if op == "-" else nxt)
        return out

    out = parse_sum()
    if peek() is not None:
        raise LiteralSyntaxError(f"trailing tokens from {peek()!r}")
    return out


def format_element(x: DdahaElement) -> str:
    """Deterministic normal-form printer emitting the literal grammar."""
    if x.is_zero():
        return "0"
    algebra = x.algebra
    items = []
    for g, f in x.terms:
        word = algebra._word(g)
        for exps, coeff in sorted(f.terms, key=lambda t: (sum(t[0]), t[0])):
            items.append((length(g), word, sum(exps), exps, coeff))
    items.sort(key=lambda it: (it[0], it[1], it[2], it[3]))
    chunks = []
    for k, (_, word, _, exps, coeff) in enumerate(items):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        factors = [f"s{l}" for l in word]
        if mag != 1 or (not factors and not any(exps)):
            factors.append(str(mag) if mag.denominator == 1 else f"({mag})")
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e > 1:
                factors.append(f"x{i + 1}^{e}")
        body = "*".join(factors)
        if k == 0:
            chunks.append(body if sign == "+" else f"-{body}")
        else:
            chunks.append(f" {sign} {body}")
    return "".join(chunks)
