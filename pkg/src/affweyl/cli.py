"""Command line interface.

Commands: describe, adm, newton, components-bound, stembridge, perm-check,
poset, oracle-suite.  Output is byte-deterministic for identical inputs;
tables, TSV and DOT carry a header comment with the group, mu, sigma,
level and tool version, JSON carries the same data in a "meta" object.
Exit codes: 0 success, 1 domain precondition failure, 2 usage or config
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__, oracles
from .admissible import adm, kr_poset
from .affine_weyl import (
    AffineWeylError,
    ParahoricLevel,
    kottwitz,
    length,
    make_level,
    sigma_from_name,
)
from .gln_perm import PermError, adm_eq_perm_check
from .notation import format_element
from .root_datum import RootDatumError, build_root_datum, dominant_rep, fundamental_group
from .stembridge import ChainPreconditionError, stembridge_chain
from .straight_newton import (
    b_set,
    components_bound_report,
    straight_classes,
)


class ConfigError(Exception):
    """Bad command line or config file; maps to exit code 2."""


def _parse_group(text: str):
    for preset in ("GSp", "PGL", "GL", "SL"):
        if text.startswith(preset) and text[len(preset):].isdigit():
            return {"preset": preset, "n": int(text[len(preset):])}
    raise ConfigError(f"cannot parse group {text!r}; expected e.g. GL3, GSp4, PGL3")


def _parse_vector(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse coordinate list {text!r}") from exc


def _parse_level(rd, text: Optional[str], sigma):
    if not text:
        return ParahoricLevel.iwahori()
    indices = []
    for item in text.split(","):
        item = item.strip()
        if item.startswith("s"):
            item = item[1:]
        if not item.isdigit():
            raise ConfigError(f"cannot parse level generator {item!r}")
        indices.append(int(item))
    try:
        return make_level(rd, indices, sigma)
    except AffineWeylError as exc:
        raise ConfigError(str(exc)) from exc


def _build_context(args):
    spec = None
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
        spec = config.get("group")
        if isinstance(spec, str):
            spec = _parse_group(spec)
        # config values take precedence over flags
        for key in ("mu", "sigma", "level", "format"):
            if key in config:
                setattr(args, key, config[key])
    if spec is None:
        if not getattr(args, "group", None):
            raise ConfigError("no group given; use --group or --config")
        spec = _parse_group(args.group)
    try:
        rd = build_root_datum(spec)
    except RootDatumError as exc:
        raise ConfigError(f"invalid group spec: {exc}") from exc
    sigma_name = getattr(args, "sigma", None) or "id"
    try:
        sigma = sigma_from_name(rd, sigma_name)
    except AffineWeylError as exc:
        raise ConfigError(str(exc)) from exc
    level = _parse_level(rd, getattr(args, "level", None), sigma)
    return rd, sigma, level


def _meta_line(args, rd) -> str:
    mu = getattr(args, "mu", None) or ""
    sigma = getattr(args, "sigma", None) or "id"
    level = getattr(args, "level", None) or ""
    return (
        f"# group={rd.type_label} mu={mu} sigma={sigma} level={level} "
        f"tool=affweyl/{__version__}"
    )


def _meta_obj(args, rd) -> dict:
    return {
        "group": rd.type_label,
        "mu": getattr(args, "mu", None) or "",
        "sigma": getattr(args, "sigma", None) or "id",
        "level": getattr(args, "level", None) or "",
        "tool": f"affweyl/{__version__}",
    }


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_to_table(header, rows, meta: str) -> str:
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(header)]
    lines = [meta]
    lines.append("  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip())
    for r in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _rows_to_tsv(header, rows, meta: str) -> str:
    lines = [meta, "\t".join(str(h) for h in header)]
    lines += ["\t".join(str(c) for c in r) for r in rows]
    return "\n".join(lines) + "\n"


def _fmt_kappa(kappa) -> str:
    return ",".join(str(x) for x in kappa) if kappa else "0"


def cmd_describe(args) -> int:
    rd, sigma, level = _build_context(args)
    if args.format == "dot":
        raise ConfigError("describe has no poset; dot output is not available")
    pi1 = fundamental_group(rd)
    rows = [
        ("label", rd.type_label),
        ("rank", rd.rank),
        ("semisimple_rank", rd.semisimple_rank),
        ("positive_roots", len(rd.positive_roots)),
        ("cartan", ";".join(",".join(str(x) for x in row) for row in rd.cartan_matrix)),
        ("pi1", pi1.describe()),
        ("sigma_order", sigma.order),
    ]
    if args.format == "json":
        payload = {"meta": _meta_obj(args, rd), "describe": {k: str(v) for k, v in rows}}
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    elif args.format == "tsv":
        _emit(_rows_to_tsv(("field", "value"), rows, _meta_line(args, rd)), args.out)
    else:
        _emit(_rows_to_table(("field", "value"), rows, _meta_line(args, rd)), args.out)
    return 0


def _adm_rows(rd, mu, level):
    from .admissible import adm_K

    if level.generators:
        elements = adm_K(mu, rd, level)
    else:
        elements = adm(mu, rd).elements
    return [
        (format_element(rd, w), length(rd, w), _fmt_kappa(kottwitz(rd, w)))
        for w in elements
    ]


def cmd_adm(args) -> int:
    rd, sigma, level = _build_context(args)
    if not args.mu:
        raise ConfigError("adm needs --mu")
    mu = dominant_rep(_parse_vector(args.mu), rd)[0]
    if args.poset or args.format == "dot":
        return _emit_poset(args, rd, mu, level)
    rows = _adm_rows(rd, mu, level)
    header = ("element", "length", "kappa")
    if args.format == "json":
        payload = {
            "meta": _meta_obj(args, rd),
            "elements": [dict(zip(header, r)) for r in rows],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    elif args.format == "table":
        _emit(_rows_to_table(header, rows, _meta_line(args, rd)), args.out)
    else:
        _emit(_rows_to_tsv(header, rows, _meta_line(args, rd)), args.out)
    return 0


def _emit_poset(args, rd, mu, level) -> int:
    poset = kr_poset(mu, rd, level)
    lines = [_meta_line(args, rd), "digraph kr_poset {", "  rankdir=BT;"]
    for i, node in enumerate(poset.nodes):
        lines.append(f'  n{i} [label="{format_element(rd, node)} (l={poset.ranks[i]})"];')
    for a, b in poset.edges:
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_poset(args) -> int:
    args.poset = True
    return cmd_adm(args)


def _newton_rows(rd, mu, sigma):
    classes = straight_classes(mu, rd, sigma)
    points = b_set(mu, rd, sigma)
    from .root_datum import dominance_leq

    basic = next(
        p for p in points
        if all(dominance_leq(p.nu, q.nu, rd, integral=False) for q in points)
    )
    rows = []
    for i, cls in enumerate(classes):
        rows.append(
            (
                f"b{i}",
                format_element(rd, cls.representative),
                ",".join(str(x) for x in cls.newton.nu),
                cls.newton.denominator,
                _fmt_kappa(cls.newton.kappa),
                len(cls.members),
                "basic" if cls.newton == basic else "",
            )
        )
    return classes, rows


def cmd_newton(args) -> int:
    rd, sigma, level = _build_context(args)
    if not args.mu:
        raise ConfigError("newton needs --mu")
    mu = dominant_rep(_parse_vector(args.mu), rd)[0]
    classes, rows = _newton_rows(rd, mu, sigma)
    if args.poset or args.format == "dot":
        lines = [_meta_line(args, rd), "digraph newton_poset {", "  rankdir=BT;"]
        from .root_datum import dominance_leq

        pts = [c.newton for c in classes]
        for i, p in enumerate(pts):
            lines.append(f'  n{i} [label="{",".join(str(x) for x in p.nu)}"];')
        for i, p in enumerate(pts):
            for j, q in enumerate(pts):
                if i != j and dominance_leq(p.nu, q.nu, rd, integral=False):
                    if not any(
                        k != i and k != j
                        and dominance_leq(p.nu, pts[k].nu, rd, integral=False)
                        and dominance_leq(pts[k].nu, q.nu, rd, integral=False)
                        for k in range(len(pts))
                    ):
                        lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    header = ("id", "representative", "nu", "denominator", "kappa", "members", "basic")
    if args.format == "json":
        payload = {
            "meta": _meta_obj(args, rd),
            "classes": [dict(zip(header, r)) for r in rows],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    elif args.format == "tsv":
        _emit(_rows_to_tsv(header, rows, _meta_line(args, rd)), args.out)
    else:
        _emit(_rows_to_table(header, rows, _meta_line(args, rd)), args.out)
    return 0


def cmd_components_bound(args) -> int:
    rd, sigma, level = _build_context(args)
    if not args.mu:
        raise ConfigError("components-bound needs --mu")
    mu = dominant_rep(_parse_vector(args.mu), rd)[0]
    classes, rows = _newton_rows(rd, mu, sigma)
    target = None
    if args.b == "basic":
        target = next(c for c, r in zip(classes, rows) if r[6] == "basic")
    else:
        for c, r in zip(classes, rows):
            if r[0] == args.b:
                target = c
    if target is None:
        raise ConfigError(f"unknown class id {args.b!r}; see the newton table")
    report = components_bound_report(mu, target.newton, rd, sigma)
    payload = {
        "meta": _meta_obj(args, rd),
        "mu": list(report.mu),
        "b": {
            "nu": [str(x) for x in report.b.nu],
            "denominator": report.b.denominator,
            "kappa": list(report.b.kappa),
        },
        "witnesses": [
            {
                "element": format_element(rd, w.element),
                "levi": {
                    "label": w.levi.type_label,
                    "positive_roots": len(w.levi.positive_roots),
                    "pi1": fundamental_group(w.levi).describe(),
                },
                "lambda_w": list(w.lambda_w),
                "lift_chain": [list(c) for c in w.lift_chain],
                "central_in_levi": w.central_in_levi,
                "pi1_sigma_invariants": w.pi1_sigma.describe() if w.pi1_sigma else None,
                "marker": w.marker,
            }
            for w in report.witnesses
        ],
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def cmd_stembridge(args) -> int:
    rd, sigma, level = _build_context(args)
    if args.format == "dot":
        raise ConfigError("stembridge has no poset; dot output is not available")
    if not args.mu or not args.lam:
        raise ConfigError("stembridge needs --mu and --lambda")
    mu = _parse_vector(args.mu)
    lam = _parse_vector(args.lam)
    chain = stembridge_chain(lam, mu, rd)
    payload = {
        "meta": _meta_obj(args, rd),
        "start": list(chain.start),
        "end": list(chain.end),
        "steps": [list(s) for s in chain.steps],
        "intermediates": [list(v) for v in chain.intermediates],
    }
    if args.format == "json":
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = [_meta_line(args, rd)]
        lines.append(f"chain from {args.mu} down to {args.lam}: {len(chain.steps)} steps")
        for s, v in zip(chain.steps, chain.intermediates):
            lines.append(f"  -{list(s)} -> {list(v)}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_perm_check(args) -> int:
    if not args.n or not args.mu:
        raise ConfigError("perm-check needs --n and --mu")
    rd = build_root_datum({"preset": "GL", "n": args.n})
    mu = _parse_vector(args.mu)
    report = adm_eq_perm_check(args.n, mu, rd)
    rows = [
        ("equal", report.equal),
        ("adm_size", report.adm_size),
        ("perm_size", report.perm_size),
        ("only_in_adm", list(report.only_in_adm)),
        ("only_in_perm", list(report.only_in_perm)),
    ]
    if args.format == "json":
        payload = {"meta": _meta_obj(args, rd), "report": {k: v if isinstance(v, (bool, int)) else [list(x) for x in v] for k, v in rows}}
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _emit(_rows_to_table(("field", "value"), [(k, v) for k, v in rows], _meta_line(args, rd)), args.out)
    return 0 if report.equal else 1


def cmd_oracle_suite(args) -> int:
    results = oracles.run_oracle_suite(args.scope)
    if args.scope and not results:
        raise ConfigError(
            f"unknown scope {args.scope!r}; available: {', '.join(oracles.available_scopes())}"
        )
    lines = []
    ok = True
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        ok = ok and res.passed
        lines.append(f"{status} [{res.scope}] {res.name}: {res.detail}")
    lines.append(f"{'OK' if ok else 'FAILED'}: {sum(r.passed for r in results)}/{len(results)} oracles passed")
    _emit("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="affweyl",
        description="Exact affine Weyl group combinatorics for split reductive groups.",
    )
    parser.add_argument("--version", action="version", version=f"affweyl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mu=True):
        p.add_argument("--group", help="preset group, e.g. GL3, GSp4, SL3, PGL3")
        p.add_argument("--config", help="JSON config file overriding flags")
        if mu:
            p.add_argument("--mu", help="cocharacter coordinates, e.g. 1,0,0")
        p.add_argument("--sigma", default=None, help="id (default) or flip")
        p.add_argument("--level", default=None, help="parahoric generators, e.g. s1,s2")
        p.add_argument("--format", default="table", choices=("table", "tsv", "json", "dot"))
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("describe", help="summarize a group datum")
    common(p, mu=False)
    p.set_defaults(fn=cmd_describe)

    p = sub.add_parser("adm", help="enumerate the admissible set")
    common(p)
    p.add_argument("--poset", action="store_true", help="emit the closure poset as DOT")
    p.set_defaults(fn=cmd_adm)

    p = sub.add_parser("poset", help="closure poset of the admissible set as DOT")
    common(p)
    p.set_defaults(fn=cmd_poset, poset=True)

    p = sub.add_parser("newton", help="straight classes and Newton points")
    common(p)
    p.add_argument("--poset", action="store_true", help="emit the dominance poset as DOT")
    p.set_defaults(fn=cmd_newton)

    p = sub.add_parser("components-bound", help="component-bound index data as JSON")
    common(p)
    p.add_argument("--b", required=True, help="class id from the newton table, or 'basic'")
    p.set_defaults(fn=cmd_components_bound)

    p = sub.add_parser("stembridge", help="dominance chain between two dominant cocharacters")
    common(p)
    p.add_argument("--lambda", dest="lam", help="target cocharacter coordinates")
    p.set_defaults(fn=cmd_stembridge)

    p = sub.add_parser("perm-check", help="admissible vs permissible for GL(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--format", default="table", choices=("table", "tsv", "json"))
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_perm_check)

    p = sub.add_parser("oracle-suite", help="run the derived-value oracle suite")
    p.add_argument("--scope", default=None, help="restrict to one scope")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_oracle_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2
    except (ChainPreconditionError, PermError, AffineWeylError, RootDatumError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
