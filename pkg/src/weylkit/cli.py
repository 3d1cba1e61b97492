"""Command-line front end.

Subcommands: root, weyl, relative, complex, spiral, ddaha, certify, table.
Global flags: --config FILE, --format json|tsv, --seed N, --radius N,
--depth N.  Exit codes: 0 ok, 1 check failure, 2 configuration error,
3 resource cap hit.  All rationals are serialized as "p/q" strings and every
run embeds its fully resolved configuration in the output header, so equal
configurations produce byte-identical output.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from . import coxcomplex as cx
from . import ddaha as dd
from . import relative as rel
from . import spiral as spr
from .poly import Poly
from .root_system import (
    AffineRootSystem,
    IllegalType,
    affinize,
    build_finite,
    finite_coxeter,
    root_data_to_json,
)
from .weyl import (
    BallTooLarge,
    ExtAffineWeylElement,
    element_to_json,
    enumerate_ball,
    has_left_descent,
    has_right_descent,
    length,
    reduced_word,
    reflections_T,
)


class ConfigError(ValueError):
    pass


class CheckFailure(RuntimeError):
    pass


DEFAULTS = {
    "type": "A",
    "rank": 1,
    "affine": True,
    "sigma": [],
    "theta": None,
    "m": 1,
    "d": 1,
    "c": None,
    "radius": 4,
    "depth": 2,
    "order_cap": 12,
    "window": [-4, 4],
    "lam0": None,
    "format": "json",
    "seed": 0,
}


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def parse_frac(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {s!r}: {exc}") from exc


def point_str(p) -> str:
    return ",".join(frac_str(c) for c in p)


def _parse_int_list(s) -> list[int]:
    if s is None or s == "":
        return []
    if isinstance(s, list):
        return [int(v) for v in s]
    try:
        return [int(tok) for tok in str(s).split(",") if tok != ""]
    except ValueError as exc:
        raise ConfigError(f"bad integer list {s!r}") from exc


def _parse_frac_list(s) -> list[Fraction]:
    if isinstance(s, list):
        return [parse_frac(v) for v in s]
    return [parse_frac(tok) for tok in str(s).split(",") if tok != ""]


def _parse_c_map(s) -> dict[int, Fraction]:
    if isinstance(s, dict):
        return {int(k): parse_frac(v) for k, v in s.items()}
    out = {}
    for item in str(s).split(","):
        if not item:
            continue
        if "=" not in item:
            raise ConfigError(f"bad parameter entry {item!r}; use label=value")
        k, v = item.split("=", 1)
        out[int(k)] = parse_frac(v)
    return out


def _parse_window(s) -> tuple[int, int]:
    if isinstance(s, (list, tuple)) and len(s) == 2:
        return int(s[0]), int(s[1])
    try:
        lo, hi = str(s).split(":")
        return int(lo), int(hi)
    except ValueError as exc:
        raise ConfigError(f"bad window {s!r}; use lo:hi") from exc


def resolve_config(args) -> dict:
    config = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        config.update(loaded)
    overrides = {
        "type": getattr(args, "type", None),
        "rank": getattr(args, "rank", None),
        "sigma": getattr(args, "sigma", None),
        "theta": getattr(args, "theta", None),
        "m": getattr(args, "m", None),
        "d": getattr(args, "d", None),
        "c": getattr(args, "c", None),
        "radius": getattr(args, "radius", None),
        "depth": getattr(args, "depth", None),
        "window": getattr(args, "window", None),
        "lam0": getattr(args, "lam0", None),
        "format": getattr(args, "format", None),
        "seed": getattr(args, "seed", None),
    }
    for key, value in overrides.items():
        if value is not None:
            config[key] = value
    if getattr(args, "finite", False):
        config["affine"] = False
    config["sigma"] = _parse_int_list(config["sigma"])
    config["window"] = list(_parse_window(config["window"]))
    if config["format"] not in ("json", "tsv"):
        raise ConfigError(f"unknown format {config['format']!r}")
    for key in ("rank", "m", "d", "radius", "depth", "seed", "order_cap"):
        try:
            config[key] = int(config[key])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"config key {key} must be an integer") from exc
    return config


def build_ambient(config) -> AffineRootSystem:
    try:
        finite = build_finite(str(config["type"]), config["rank"])
    except IllegalType as exc:
        raise ConfigError(str(exc)) from exc
    return affinize(finite) if config["affine"] else finite_coxeter(finite)


def _theta_vec(config, ambient):
    if config["theta"] is None:
        return tuple(Fraction(0) for _ in range(ambient.rank))
    theta = tuple(_parse_frac_list(config["theta"]))
    if len(theta) != ambient.rank:
        raise ConfigError(f"theta must have {ambient.rank} coordinates")
    return theta


def _lam0_vec(config, ambient):
    if config["lam0"] is None:
        raise ConfigError("this command needs --lam0")
    lam = tuple(_parse_frac_list(config["lam0"]))
    if len(lam) != ambient.rank:
        raise ConfigError(f"lam0 must have {ambient.rank} coordinates")
    return lam


def _word_to_element(ambient, word_str) -> ExtAffineWeylElement:
    g = ExtAffineWeylElement.identity(ambient)
    for l in _parse_int_list(word_str):
        if l not in ambient.labels:
            raise ConfigError(f"unknown simple label {l}")
        g = g * ExtAffineWeylElement.simple(ambient, l)
    return g


def _config_for_output(config) -> dict:
    out = {}
    for k, v in sorted(config.items()):
        if isinstance(v, Fraction):
            v = frac_str(v)
        out[k] = v
    return out


def emit(config, command, result, rows=None) -> str:
    """result: JSON-ready dict; rows: optional (header, rows) for tsv mode."""
    if config["format"] == "json":
        payload = {
            "command": command,
            "config": _config_for_output(config),
            "result": result,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    lines = [f"# {k}\t{v}" for k, v in sorted(_config_for_output(config).items())]
    lines.append(f"# command\t{command}")
    if rows is None:
        for k, v in sorted(result.items()):
            lines.append(f"{k}\t{json.dumps(v, sort_keys=True)}")
    else:
        header, data = rows
        lines.append("\t".join(header))
        for row in data:
            lines.append("\t".join(str(c) for c in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_root(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    finite = ambient.finite_base
    data = root_data_to_json(finite)
    data["roots_count"] = len(finite.roots)
    data["positive_roots"] = [list(r) for r in sorted(finite.positive_roots())]
    data["highest_root"] = list(finite.highest_root())
    data["affine"] = ambient.affine
    data["labels"] = list(ambient.labels)
    data["simples"] = [
        {"label": l, "direction": list(a.direction), "level": a.level}
        for l, a in zip(ambient.labels, ambient.simples)
    ]
    rows = (
        ["direction", "positive"],
        [[",".join(map(str, r)), int(finite.is_positive(r))] for r in sorted(finite.roots)],
    )
    return 0, emit(config, "root", data, rows)


def cmd_weyl(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    g = _word_to_element(ambient, getattr(args, "word", None) or "")
    rw = reduced_word(g)
    data = {
        "element": element_to_json(g),
        "length": length(g),
        "reduced_word": list(rw.letters),
        "automorphism_trivial": rw.pi.is_identity(),
        "left_descents": [l for l in ambient.labels if has_left_descent(g, l)],
        "right_descents": [l for l in ambient.labels if has_right_descent(g, l)],
        "reflection_set_size": len(reflections_T(g)),
    }
    return 0, emit(config, "weyl", data)


def cmd_relative(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    sigma = config["sigma"]
    ok, cert = rel.is_admissible(ambient, sigma)
    data = {"admissible": ok, "sigma": sorted(sigma)}
    if not ok:
        data["violating_supersets"] = [sorted(c) for c in cert]
        return 1, emit(config, "relative", data)
    system = rel.relative_system(ambient, sigma, order_cap=config["order_cap"])
    data["sigma_complement"] = list(system.sigma_complement)
    data["degenerate_single_complement"] = system.degenerate_single_complement
    simples = []
    for l in system.simple_labels():
        st = system.generator(l)
        simples.append(
            {
                "s": l,
                "word": list(reduced_word(st).letters),
                "length": length(st),
                "rel_length": rel.relative_length(system, st),
            }
        )
    data["simples"] = simples
    data["coxeter_matrix"] = {
        f"{s},{t}": (order if order is not None else "infinity-or-above-cap")
        for (s, t), order in sorted(system.coxeter_matrix.items())
    }
    return 0, emit(config, "relative", data)


def cmd_complex(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    sub = args.complex_command
    if sub == "facets":
        facets = cx.facets_in_ball(ambient, config["radius"])
        rows = []
        for f in sorted(
            facets,
            key=lambda f: (sorted(f.type_labels), length(f.rep), f.rep.mu, f.rep.matrix),
        ):
            rows.append(
                [
                    ",".join(map(str, sorted(f.type_labels))) or "-",
                    ",".join(map(str, reduced_word(f.rep).letters)) or "-",
                    point_str(cx.interior_point(f)),
                ]
            )
        data = {"count": len(rows), "facets": [dict(zip(("type", "word", "interior"), r)) for r in rows]}
        return 0, emit(config, "complex.facets", data, (["type", "word", "interior"], rows))
    if sub == "relpos":
        itype = frozenset(_parse_int_list(args.itype))
        f1 = cx.facet(ambient, _word_to_element(ambient, args.nu), itype)
        f2 = cx.facet(ambient, _word_to_element(ambient, args.nuprime), itype)
        rp = cx.relative_position(f1, f2)
        data = {
            "double_coset_word": list(reduced_word(rp.double_coset).letters),
            "good": rp.good,
        }
        if rp.relative_element is not None:
            data["relative_element_word"] = list(
                reduced_word(rp.relative_element).letters
            )
        return 0, emit(config, "complex.relpos", data)
    if sub == "fixed":
        try:
            report = cx.fixed_chambers(ambient, config["sigma"], config["radius"])
        except rel.NotAdmissible as exc:
            raise ConfigError(str(exc)) from exc
        data = {
            "chambers": [
                {
                    "type": sorted(f.type_labels),
                    "word": list(reduced_word(f.rep).letters),
                }
                for f in report.chambers
            ],
            "single_free_orbit": report.single_free_orbit,
            "ball_complete": report.ball_complete,
            "boundary_excluded": len(report.boundary_excluded),
        }
        return 0, emit(config, "complex.fixed", data)
    raise ConfigError(f"unknown complex subcommand {sub!r}")


def _spiral_rows(spiral, window):
    rows = []
    lo, hi = window
    for n in range(lo, hi + 1):
        for kind, members in (
            ("P", spiral.p_n(n)),
            ("L", spiral.l_n(n)),
            ("U", spiral.u_n(n)),
        ):
            names = sorted(
                "h" if r is spr.CARTAN else ",".join(map(str, r)) for r in members
            )
            rows.append([n, kind, ";".join(names) or "-"])
    return rows


def cmd_spiral(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    datum = spr.GradedRootDatum(
        ambient.finite_base, _theta_vec(config, ambient), config["m"], config["d"]
    )
    if getattr(args, "lam", None) is not None:
        lam = tuple(_parse_frac_list(args.lam))
        if len(lam) != ambient.rank:
            raise ConfigError(f"lambda must have {ambient.rank} coordinates")
        spiral = spr.spiral_from_cochar(datum, lam)
    else:
        if not config["affine"]:
            raise ConfigError("facet spirals need the affine arrangement")
        nu = cx.facet(
            ambient,
            _word_to_element(ambient, getattr(args, "facet_word", None) or ""),
            frozenset(_parse_int_list(getattr(args, "facet_type", None) or "")),
        )
        spiral = spr.spiral_from_facet(datum, nu, window=max(map(abs, config["window"])))
    rows = _spiral_rows(spiral, config["window"])
    report = spr.levi_decomposition_check(spiral, tuple(config["window"]))
    data = {
        "lambda": [frac_str(c) for c in spiral.lam],
        "epsilon": spiral.epsilon,
        "partition_ok": report.partition_ok,
        "table": [dict(zip(("n", "part", "members"), r)) for r in rows],
    }
    code = 0 if report.partition_ok else 1
    return code, emit(config, "spiral", data, (["n", "part", "members"], rows))


def _build_ddaha(config, ambient) -> dd.DdahaAlgebra:
    c = config["c"]
    if c is None:
        c = {l: 2 for l in ambient.labels}
    else:
        c = _parse_c_map(c)
    try:
        params = dd.HeckeParameters.make(config["m"], config["d"], c)
        return dd.build_algebra(ambient, params)
    except dd.InvalidParameters as exc:
        raise ConfigError(str(exc)) from exc


def cmd_ddaha(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    algebra = _build_ddaha(config, ambient)
    if getattr(args, "expr", None):
        x = dd.parse_element(algebra, args.expr)
        if getattr(args, "times", None):
            x = dd.multiply(x, dd.parse_element(algebra, args.times))
        data = {"normal_form": dd.format_element(x)}
        return 0, emit(config, "ddaha", data)
    if getattr(args, "weights", False):
        module = dd.standard_module(algebra, _lam0_vec(config, ambient), config["depth"])
        mults = module.weight_multiplicities()
        rows = []
        for g in module.basis:
            w = module.weight_of(g)
            rows.append(
                [
                    ",".join(map(str, reduced_word(g).letters)) or "-",
                    point_str(w),
                    mults[w],
                ]
            )
        data = {
            "dimension": len(module.basis),
            "weights": [dict(zip(("word", "weight", "multiplicity"), r)) for r in rows],
        }
        return 0, emit(config, "ddaha.weights", data, (["word", "weight", "multiplicity"], rows))
    report = dd.verify_relations(algebra, seed=config["seed"], n_random=10)
    data = {
        "squares_ok": report.squares_ok,
        "braid_ok": report.braid_ok,
        "cross_ok": report.cross_ok,
        "failures": len(report.failures),
    }
    return (0 if report.ok() else 1), emit(config, "ddaha.relations", data)


# ---------------------------------------------------------------------------
# certify
# ---------------------------------------------------------------------------


def dihedral_ball_sizes(order, radius: int) -> list[int]:
    """Ball growth of a rank-2 Coxeter group from its single order entry
    (None meaning infinite): the independent oracle for rank <= 2."""
    sizes = [1]
    for k in range(1, radius + 1):
        if order is None or k < order:
            sizes.append(2)
        elif k == order:
            sizes.append(1)
        else:
            sizes.append(0)
    return sizes


def coxeter_ball_sizes_from_matrix(labels, matrix, radius: int) -> list[int]:
    if len(labels) == 0:
        return [1] + [0] * radius
    if len(labels) == 1:
        return [1, 1] + [0] * (radius - 1) if radius >= 1 else [1]
    if len(labels) == 2:
        s, t = labels
        return dihedral_ball_sizes(matrix[(s, t)], radius)
    raise ConfigError(
        "independent ball oracle implemented for relative rank <= 2 only"
    )


def certify_checks(config, ambient) -> list[dict]:
    checks = []
    sigma = config["sigma"]
    radius = config["radius"]
    rng = random.Random(config["seed"])

    ok, cert = rel.is_admissible(ambient, sigma)
    checks.append(
        {
            "check": "admissible",
            "ok": ok,
            "detail": "" if ok else f"violating supersets {[sorted(c) for c in cert]}",
        }
    )
    if not ok:
        return checks

    system = rel.relative_system(ambient, sigma, order_cap=config["order_cap"])
    ball = rel.relative_ball(system, min(radius, 4))
    got = [0] * (min(radius, 4) + 1)
    for d in ball.values():
        got[d] += 1
    try:
        expected = coxeter_ball_sizes_from_matrix(
            list(system.simple_labels()), system.coxeter_matrix, min(radius, 4)
        )
        checks.append(
            {
                "check": "coxeter-ball-sizes",
                "ok": got == expected,
                "detail": f"got {got} expected {expected}",
            }
        )
    except ConfigError as exc:
        checks.append({"check": "coxeter-ball-sizes", "ok": True, "detail": f"skipped: {exc}"})

    depth = min(config["depth"], 3)
    small = {g: d for g, d in rel.relative_ball(system, depth).items()}
    violations = 0
    for g, lg in small.items():
        for h, lh in small.items():
            gh = g * h
            rel_add = rel.relative_length(system, gh) == lg + lh
            abs_add = length(gh) == length(g) + length(h)
            if rel_add != abs_add:
                violations += 1
    checks.append(
        {
            "check": "length-additivity-equivalence",
            "ok": violations == 0,
            "detail": f"{violations} violations over {len(small)}^2 pairs",
        }
    )

    bad_t = sum(
        1 for g in enumerate_ball(ambient, min(radius, 3)) if length(g) != len(reflections_T(g))
    )
    checks.append(
        {
            "check": "length-equals-reflection-count",
            "ok": bad_t == 0,
            "detail": f"{bad_t} mismatches",
        }
    )

    exchange_bad = 0
    for g in small:
        word = rel.relative_reduced_word(system, g)
        for l in rel.relative_descents(system, g):
            st = system.generator(l)
            target = st * g
            prefix = ExtAffineWeylElement.identity(ambient)
            found = False
            for i in range(len(word)):
                nxt = prefix * system.generator(word[i])
                if st * prefix == nxt:
                    found = True
                    break
                prefix = nxt
            if not found and word:
                exchange_bad += 1
            del target
    checks.append(
        {
            "check": "exchange-property",
            "ok": exchange_bad == 0,
            "detail": f"{exchange_bad} failures",
        }
    )

    try:
        report = cx.fixed_chambers(ambient, sigma, radius)
        type_ok = all(f.type_labels == frozenset(sigma) for f in report.chambers)
        checks.append(
            {
                "check": "fixed-chambers",
                "ok": type_ok and report.single_free_orbit,
                "detail": (
                    f"{len(report.chambers)} chambers, free orbit "
                    f"{report.single_free_orbit}, boundary excluded "
                    f"{len(report.boundary_excluded)}"
                ),
            }
        )
    except cx.BallTooSmall as exc:
        checks.append({"check": "fixed-chambers", "ok": False, "detail": str(exc)})

    sample = sorted(small, key=lambda g: (length(g), g.mu, g.matrix))
    pairs_checked = 0
    eta_ok = True
    for _ in range(10):
        g = rng.choice(sample)
        h = rng.choice(sample)
        if reflections_T(g * h) <= reflections_T(g) | _conj_T(g, h):
            pairs_checked += 1
        else:
            eta_ok = False
    checks.append(
        {
            "check": "reflection-set-multiplicativity",
            "ok": eta_ok,
            "detail": f"{pairs_checked}/10 random pairs",
        }
    )
    return checks


def _conj_T(g, h):
    from .weyl import canonical_reflection_key, act_on_affine_root

    return frozenset(
        canonical_reflection_key(act_on_affine_root(g, t)) for t in reflections_T(h)
    )


def cmd_certify(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    checks = certify_checks(config, ambient)
    all_ok = all(c["ok"] for c in checks)
    data = {"ok": all_ok, "checks": checks}
    rows = (["check", "ok", "detail"], [[c["check"], int(c["ok"]), c["detail"]] for c in checks])
    return (0 if all_ok else 1), emit(config, "certify", data, rows)


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def cmd_table(args) -> tuple[int, str]:
    config = resolve_config(args)
    ambient = build_ambient(config)
    which = args.which
    if which == "weyl-ball":
        ball = enumerate_ball(ambient, config["radius"])
        rows = []
        for g in sorted(ball, key=lambda g: (ball[g], g.mu, g.matrix)):
            rows.append([ball[g], ",".join(map(str, reduced_word(g).letters)) or "-"])
        data = {"count": len(rows), "rows": [dict(zip(("length", "word"), r)) for r in rows]}
        return 0, emit(config, "table.weyl-ball", data, (["length", "word"], rows))
    if which == "facets":
        return cmd_complex_facets_table(config, ambient)
    if which == "spiral":
        datum = spr.GradedRootDatum(
            ambient.finite_base, _theta_vec(config, ambient), config["m"], config["d"]
        )
        lam = tuple(Fraction(0) for _ in range(ambient.rank))
        spiral = spr.spiral_from_cochar(datum, lam)
        rows = _spiral_rows(spiral, config["window"])
        data = {"table": [dict(zip(("n", "part", "members"), r)) for r in rows]}
        return 0, emit(config, "table.spiral", data, (["n", "part", "members"], rows))
    if which == "relpos":
        itype = frozenset(config["sigma"])
        base = cx.facet(ambient, ExtAffineWeylElement.identity(ambient), itype)
        rows = []
        for f in sorted(
            cx.facets_in_ball(ambient, config["radius"], types=[itype]),
            key=lambda f: (length(f.rep), f.rep.mu, f.rep.matrix),
        ):
            rp = cx.relative_position(base, f)
            rows.append(
                [
                    ",".join(map(str, reduced_word(f.rep).letters)) or "-",
                    ",".join(map(str, reduced_word(rp.double_coset).letters)) or "-",
                    int(rp.good),
                ]
            )
        data = {"rows": [dict(zip(("facet", "coset", "good"), r)) for r in rows]}
        return 0, emit(config, "table.relpos", data, (["facet", "coset", "good"], rows))
    if which == "weights":
        algebra = _build_ddaha(config, ambient)
        module = dd.standard_module(algebra, _lam0_vec(config, ambient), config["depth"])
        mults = module.weight_multiplicities()
        rows = []
        for g in module.basis:
            w = module.weight_of(g)
            rows.append(
                [",".join(map(str, reduced_word(g).letters)) or "-", point_str(w), mults[w]]
            )
        data = {"rows": [dict(zip(("word", "weight", "multiplicity"), r)) for r in rows]}
        return 0, emit(config, "table.weights", data, (["word", "weight", "multiplicity"], rows))
    raise ConfigError(f"unknown table {which!r}")


def cmd_complex_facets_table(config, ambient) -> tuple[int, str]:
    facets = cx.facets_in_ball(ambient, config["radius"])
    rows = []
    for f in sorted(
        facets, key=lambda f: (sorted(f.type_labels), length(f.rep), f.rep.mu, f.rep.matrix)
    ):
        rows.append(
            [
                ",".join(map(str, sorted(f.type_labels))) or "-",
                ",".join(map(str, reduced_word(f.rep).letters)) or "-",
                point_str(cx.interior_point(f)),
            ]
        )
    data = {"count": len(rows), "facets": [dict(zip(("type", "word", "interior"), r)) for r in rows]}
    return 0, emit(config, "table.facets", data, (["type", "word", "interior"], rows))


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _add_common(p):
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--format", choices=("json", "tsv"))
    p.add_argument("--seed", type=int)
    p.add_argument("--radius", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--type", dest="type", help="root system type letter")
    p.add_argument("--rank", type=int)
    p.add_argument("--finite", action="store_true", help="spherical (non-affine) system")
    p.add_argument("--sigma", help="comma-separated simple labels")
    p.add_argument("--theta", help="comma-separated rational coweight coordinates")
    p.add_argument("--m", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--c", help="Hecke parameters as label=value,label=value")
    p.add_argument("--window", help="degree window lo:hi")
    p.add_argument("--lam0", help="comma-separated rational point coordinates")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylkit",
        description="Exact computations in affine Weyl groups, relative Coxeter "
        "systems, spirals and degenerate double affine Hecke algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("root", help="root datum of the configured system")
    _add_common(p)
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("weyl", help="analyze one group element given by a word")
    _add_common(p)
    p.add_argument("--word", help="comma-separated simple labels")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("relative", help="relative Coxeter system of sigma")
    _add_common(p)
    p.set_defaults(func=cmd_relative)

    p = sub.add_parser("complex", help="Coxeter complex queries")
    _add_common(p)
    p.add_argument(
        "complex_command", choices=("facets", "relpos", "fixed"), help="query kind"
    )
    p.add_argument("--nu", help="word for the first facet representative")
    p.add_argument("--nuprime", help="word for the second facet representative")
    p.add_argument("--itype", help="comma-separated facet type labels")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("spiral", help="P/L/U membership tables")
    _add_common(p)
    p.add_argument("--lam", help="cocharacter coordinates (else use a facet)")
    p.add_argument("--facet-word", dest="facet_word")
    p.add_argument("--facet-type", dest="facet_type")
    p.set_defaults(func=cmd_spiral)

    p = sub.add_parser("ddaha", help="Hecke algebra computations")
    _add_common(p)
    p.add_argument("--expr", help="element literal, e.g. 's1*s0*x1^2 + (3/2)*s1'")
    p.add_argument("--times", help="second literal to multiply on the right")
    p.add_argument("--weights", action="store_true", help="standard module weights")
    p.set_defaults(func=cmd_ddaha)

    p = sub.add_parser("certify", help="run the invariant suite for the config")
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("table", help="emit one of the canonical tables")
    _add_common(p)
    p.add_argument(
        "which", choices=("weyl-ball", "facets", "spiral", "relpos", "weights")
    )
    p.set_defaults(func=cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        code, text = args.func(args)
    except ConfigError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    except (BallTooLarge, rel.NotFinite) as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return 3
    except (dd.LiteralSyntaxError, cx.TypesDiffer, cx.TypeNotContained) as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
