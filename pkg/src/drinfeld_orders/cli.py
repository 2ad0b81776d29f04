"""Command-line entry point.

Two commands over a JSON problem description:

    analyze CONFIG [--format json|text] [--candidate-bound N]
    check-module CONFIG --name NAME

Exit codes: 0 success, 2 config error, 3 validation of the isogeny-class
data failed, 4 internal inconsistency, 5 candidate bound exceeded.

Config format: polynomials are ascending coefficient arrays; coefficients
are integers (reduced into F_p) or, for extension fields, arrays of
base-field coefficients.  See the README for the full schema.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .cubic import WeilCubic
from .errors import (
    BadConstantTermError,
    CandidateBoundExceededError,
    Char2UnsupportedError,
    Char3UnsupportedError,
    ConfigError,
    DomainError,
    DrinfeldOrdersError,
    InternalInconsistencyError,
    NotWeilAtVError,
    ReducibleError,
)
from .factor import make_extension_field
from .gf import ExtensionField, FiniteField, PrimeField
from .orders import (
    DEFAULT_CANDIDATE_BOUND,
    ClassAnalysis,
    OrderHNF,
    analyze_weil_class,
    frobenius_order_hnf,
)
from .poly import Poly
from .skew import (
    DrinfeldModule,
    SkewRing,
    identify_endo_ring,
    survey_candidates,
    verify_weil_action,
)

ENV_CANDIDATE_BOUND = "DRINFELD_ORDERS_CANDIDATE_BOUND"

VERDICT_TEXT = "necessary conditions passed"


@dataclass
class ModuleSpec:
    name: str
    phi_t_coeffs: list


@dataclass
class ProblemConfig:
    field: FiniteField
    pv: Poly
    m: int
    a1: Poly
    a2: Poly
    mu: object
    l_modulus: Optional[Poly]
    modules: list
    candidate_bound: Optional[int]
    output_format: Optional[str]

    def weil(self) -> WeilCubic:
        return WeilCubic(
            field=self.field, a1=self.a1, a2=self.a2, mu=self.mu, pv=self.pv, m=self.m
        )


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def _parse_elem(F: FiniteField, obj, where: str):
    if isinstance(obj, bool):
        raise ConfigError(f"{where}: booleans are not field elements")
    if isinstance(obj, int):
        return F.from_int(obj)
    if isinstance(obj, list):
        if isinstance(F, PrimeField):
            _require(len(obj) <= 1, f"{where}: prime-field element array too long")
            return F.from_int(obj[0] if obj else 0)
        _require(isinstance(F, ExtensionField), f"{where}: unexpected field kind")
        _require(len(obj) <= F.e, f"{where}: element array longer than the degree")
        coeffs = [_parse_elem(F.base, o, where) for o in obj]
        coeffs += [F.base.zero] * (F.e - len(coeffs))
        return tuple(coeffs)
    raise ConfigError(f"{where}: expected an integer or an array")


def _parse_poly(F: FiniteField, obj, where: str) -> Poly:
    _require(isinstance(obj, list), f"{where}: expected a coefficient array")
    return Poly(F, (_parse_elem(F, o, where) for o in obj))


def load_config(path: str) -> ProblemConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    _require(isinstance(raw, dict), "top level must be an object")

    fld = raw.get("field")
    _require(isinstance(fld, dict), "'field' object is required")
    p = fld.get("p")
    _require(isinstance(p, int) and p >= 2, "'field.p' must be a prime integer")
    e = fld.get("e", 1)
    _require(isinstance(e, int) and e >= 1, "'field.e' must be a positive integer")
    try:
        base = PrimeField(p)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    if e == 1:
        F: FiniteField = base
    else:
        mod = fld.get("modulus")
        _require(
            isinstance(mod, list) and len(mod) == e + 1,
            "'field.modulus' must list e+1 coefficients when e > 1",
        )
        try:
            F = make_extension_field(base, _parse_poly(base, mod, "field.modulus"))
        except DomainError as exc:
            raise ConfigError(f"field.modulus: {exc}") from exc

    pv = _parse_poly(F, raw.get("pv"), "pv")
    m = raw.get("m")
    _require(isinstance(m, int) and m >= 1, "'m' must be a positive integer")

    weil = raw.get("weil")
    _require(isinstance(weil, dict), "'weil' object is required")
    a1 = _parse_poly(F, weil.get("a1"), "weil.a1")
    a2 = _parse_poly(F, weil.get("a2"), "weil.a2")
    _require("mu" in weil, "'weil.mu' is required")
    mu = _parse_elem(F, weil["mu"], "weil.mu")

    l_modulus = None
    if raw.get("L") is not None:
        l_modulus = _parse_poly(F, raw["L"], "L")

    modules = []
    if raw.get("modules") is not None:
        _require(isinstance(raw["modules"], list), "'modules' must be an array")
        _require(l_modulus is not None, "'modules' requires 'L'")
        _require(
            l_modulus.degree == m * pv.degree,
            "the degree of L must equal m * deg(pv)",
        )
        seen = set()
        for entry in raw["modules"]:
            _require(isinstance(entry, dict), "module entries must be objects")
            name = entry.get("name")
            _require(isinstance(name, str) and name, "module entries need a 'name'")
            _require(name not in seen, f"duplicate module name '{name}'")
            seen.add(name)
            _require(
                isinstance(entry.get("phi_T"), list),
                f"module '{name}' needs a 'phi_T' coefficient array",
            )
            modules.append(ModuleSpec(name=name, phi_t_coeffs=entry["phi_T"]))

    options = raw.get("options", {})
    _require(isinstance(options, dict), "'options' must be an object")
    bound = options.get("candidate_bound")
    _require(
        bound is None or (isinstance(bound, int) and bound >= 1),
        "'options.candidate_bound' must be a positive integer",
    )
    fmt = options.get("output_format")
    _require(
        fmt in (None, "json", "text"),
        "'options.output_format' must be 'json' or 'text'",
    )
    return ProblemConfig(
        field=F,
        pv=pv,
        m=m,
        a1=a1,
        a2=a2,
        mu=mu,
        l_modulus=l_modulus,
        modules=modules,
        candidate_bound=bound,
        output_format=fmt,
    )


def build_drinfeld_module(cfg: ProblemConfig, spec: ModuleSpec) -> DrinfeldModule:
    try:
        ext = make_extension_field(cfg.field, cfg.l_modulus)
    except DomainError as exc:
        raise ConfigError(f"L: {exc}") from exc
    ring = SkewRing(ext)
    coeffs = [
        _parse_elem(ext, c, f"module '{spec.name}' phi_T") for c in spec.phi_t_coeffs
    ]
    return DrinfeldModule(ring, ring.poly(coeffs))


# -- report assembly ---------------------------------------------------------


def _elem_json(c):
    return c if isinstance(c, int) else [_elem_json(x) for x in c]


def _elem_str(c) -> str:
    return str(c) if isinstance(c, int) else "(" + ",".join(_elem_str(x) for x in c) + ")"


def _poly_json(f: Poly):
    return [_elem_json(c) for c in f.coeffs]


def _order_json(order: OrderHNF, labels) -> dict:
    return {
        "a": _poly_json(order.a),
        "a_str": order.a.to_str(),
        "b": _poly_json(order.b),
        "b_str": order.b.to_str(),
        "c": _poly_json(order.c),
        "c_str": order.c.to_str(),
        "label": labels(order),
    }


def _label_fn(analysis: ClassAnalysis):
    maximal = OrderHNF(
        a=Poly.one(analysis.weil.field),
        b=Poly.zero(analysis.weil.field),
        c=Poly.one(analysis.weil.field),
    )
    frob = frobenius_order_hnf(analysis.sf, analysis.mo)

    def labels(order: OrderHNF) -> str:
        tags = []
        if order == maximal:
            tags.append("O_max")
        if order == frob:
            tags.append("A[pi]")
        return "=".join(tags)

    return labels


def build_report(cfg: ProblemConfig, analysis: ClassAnalysis, identifications) -> dict:
    labels = _label_fn(analysis)
    sf, mo = analysis.sf, analysis.mo
    orders = []
    for rep in analysis.orders:
        entry = _order_json(rep.order, labels)
        entry.update(
            {
                "is_closed": rep.is_closed,
                "contains_pi": rep.contains_pi,
                "v_maximal": rep.v_maximal,
                "conductor_norm": _poly_json(rep.conductor_norm),
                "conductor_norm_str": rep.conductor_norm.to_str(),
                "disc": _poly_json(rep.disc),
                "disc_str": rep.disc.to_str(),
            }
        )
        orders.append(entry)
    ident_json = []
    for ident in identifications:
        entry = {"module": ident["module"], "in_class": ident["in_class"]}
        if ident["in_class"]:
            entry["order"] = _order_json(ident["order"], labels)
            entry["survey"] = [
                {
                    "order": _order_json(row.order, labels),
                    "generators": list(row.generator_verdicts),
                }
                for row in ident["survey"]
            ]
        ident_json.append(entry)
    return {
        "inputs": {
            "p": cfg.field.p,
            "e": cfg.field.degree,
            "q": cfg.field.q,
            "pv": _poly_json(cfg.pv),
            "pv_str": cfg.pv.to_str(),
            "m": cfg.m,
            "a1": _poly_json(cfg.a1),
            "a2": _poly_json(cfg.a2),
            "mu": _elem_json(cfg.mu),
        },
        "verdict": VERDICT_TEXT,
        "local": {
            "height": analysis.local.height,
            "etale_degree": analysis.local.etale_degree,
            "supersingular": analysis.local.supersingular,
            "pv_divides_a2": analysis.local.pv_divides_a2,
            "residue_pattern": [list(t) for t in analysis.local.residue_pattern],
        },
        "standard_form": {
            "b1": _poly_json(sf.b1),
            "b2": _poly_json(sf.b2),
            "g": _poly_json(sf.g),
            "g_str": sf.g.to_str(),
            "c1": _poly_json(sf.c1),
            "c1_str": sf.c1.to_str(),
            "c2": _poly_json(sf.c2),
            "c2_str": sf.c2.to_str(),
        },
        "disc_m0": _poly_json(mo.disc_m0),
        "disc_m0_str": mo.disc_m0.to_str(),
        "delta": _poly_json(mo.delta),
        "delta_str": mo.delta.to_str(),
        "index": _poly_json(mo.index),
        "index_str": mo.index.to_str(),
        "alpha2": _poly_json(mo.alpha2),
        "alpha2_str": mo.alpha2.to_str(),
        "beta2": _poly_json(mo.beta2),
        "beta2_str": mo.beta2.to_str(),
        "candidate_count": len(analysis.candidates),
        "orders": orders,
        "identifications": ident_json,
    }


def _order_brief(order: OrderHNF, labels) -> str:
    tag = labels(order)
    triple = f"({order.a.to_str()},{order.b.to_str()},{order.c.to_str()})"
    return f"{tag}{triple}" if tag else triple


def render_text(report: dict, analysis: ClassAnalysis) -> str:
    labels = _label_fn(analysis)
    lines = []
    inp = report["inputs"]
    lines.append("== isogeny class ==")
    lines.append(
        f"q = {inp['q']}, pv = {inp['pv_str']}, m = {inp['m']}"
    )
    lines.append(
        "M(x) = x^3 + (%s)*x^2 + (%s)*x + (%s)*(%s)^%d"
        % (
            analysis.weil.a1.to_str(),
            analysis.weil.a2.to_str(),
            _elem_str(analysis.weil.mu),
            inp["pv_str"],
            inp["m"],
        )
    )
    lines.append(f"verdict: {report['verdict']}")
    loc = report["local"]
    pattern = " * ".join(
        f"(deg {d})^{m}" if m > 1 else f"(deg {d})" for d, m in loc["residue_pattern"]
    )
    lines.append(
        f"height h = {loc['height']} (etale degree {loc['etale_degree']}), "
        f"supersingular: {'yes' if loc['supersingular'] else 'no'}"
    )
    lines.append(f"M mod pv factor degrees: {pattern}")
    lines.append("")
    lines.append("== maximal order ==")
    sf = report["standard_form"]
    lines.append(f"standard form: c1 = {sf['c1_str']}, c2 = {sf['c2_str']}, g = {sf['g_str']}")
    lines.append(f"disc(M0) = {report['disc_m0_str']}")
    lines.append(f"Delta    = {report['delta_str']}")
    lines.append(f"index I  = {report['index_str']}")
    lines.append(f"alpha2 = {report['alpha2_str']}, beta2 = {report['beta2_str']}")
    lines.append("")
    lines.append(f"== endomorphism rings ({len(report['orders'])}) ==")
    for i, entry in enumerate(report["orders"], 1):
        tag = f"  [{entry['label']}]" if entry["label"] else ""
        lines.append(
            f"#{i} (a={entry['a_str']}, b={entry['b_str']}, c={entry['c_str']})"
            f"{tag}  conductor norm = {entry['conductor_norm_str']}, "
            f"disc = {entry['disc_str']}"
        )
    if report["identifications"]:
        lines.append("")
        lines.append("== module identifications ==")
        for ident in report["identifications"]:
            if not ident["in_class"]:
                lines.append(f"{ident['module']}: in class: no")
                continue
            order = ident["order"]
            brief = (
                f"{order['label']}({order['a_str']},{order['b_str']},{order['c_str']})"
                if order["label"]
                else f"({order['a_str']},{order['b_str']},{order['c_str']})"
            )
            lines.append(f"{ident['module']}: in class: yes; End = {brief}")
    return "\n".join(lines) + "\n"


def resolve_candidate_bound(cfg: ProblemConfig, flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(ENV_CANDIDATE_BOUND)
    if env is not None:
        try:
            value = int(env)
        except ValueError as exc:
            raise ConfigError(f"{ENV_CANDIDATE_BOUND} must be an integer") from exc
        if value < 1:
            raise ConfigError(f"{ENV_CANDIDATE_BOUND} must be positive")
        return value
    if cfg.candidate_bound is not None:
        return cfg.candidate_bound
    return DEFAULT_CANDIDATE_BOUND


def cmd_analyze(args) -> int:
    cfg = load_config(args.config)
    bound = resolve_candidate_bound(cfg, args.candidate_bound)
    analysis = analyze_weil_class(cfg.weil(), candidate_bound=bound)
    identifications = []
    for spec in cfg.modules:
        try:
            module = build_drinfeld_module(cfg, spec)
        except DomainError:
            identifications.append({"module": spec.name, "in_class": False})
            continue
        if not verify_weil_action(module, analysis.weil):
            identifications.append({"module": spec.name, "in_class": False})
            continue
        candidates = [rep.order for rep in analysis.orders]
        end_order = identify_endo_ring(
            module, candidates, analysis.weil, analysis.sf, analysis.mo
        )
        survey = survey_candidates(
            module, candidates, analysis.weil, analysis.sf, analysis.mo
        )
        identifications.append(
            {
                "module": spec.name,
                "in_class": True,
                "order": end_order,
                "survey": survey,
            }
        )
    report = build_report(cfg, analysis, identifications)
    fmt = args.format or cfg.output_format or "text"
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        sys.stdout.write(render_text(report, analysis))
    return 0


def cmd_check_module(args) -> int:
    cfg = load_config(args.config)
    spec = next((s for s in cfg.modules if s.name == args.name), None)
    if spec is None:
        raise ConfigError(f"module '{args.name}' not found in config")
    bound = resolve_candidate_bound(cfg, None)
    analysis = analyze_weil_class(cfg.weil(), candidate_bound=bound)
    try:
        module = build_drinfeld_module(cfg, spec)
    except DomainError:
        print("in class: no (rank mismatch)")
        return 0
    if not verify_weil_action(module, analysis.weil):
        print("in class: no")
        return 0
    candidates = [rep.order for rep in analysis.orders]
    end_order = identify_endo_ring(
        module, candidates, analysis.weil, analysis.sf, analysis.mo
    )
    labels = _label_fn(analysis)
    print(f"in class: yes; End = {_order_brief(end_order, labels)}")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="drinfeld-orders",
        description=(
            "Decide which orders of the cubic Frobenius field occur as "
            "endomorphism rings in an isogeny class of rank-3 Drinfeld "
            "modules, and identify the endomorphism ring of given modules."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_analyze = sub.add_parser("analyze", help="run the full pipeline on a config")
    p_analyze.add_argument("config", help="path to a JSON problem description")
    p_analyze.add_argument("--format", choices=("json", "text"), default=None)
    p_analyze.add_argument("--candidate-bound", type=int, default=None)
    p_analyze.set_defaults(func=cmd_analyze)
    p_check = sub.add_parser(
        "check-module", help="verify one module and identify its endomorphism ring"
    )
    p_check.add_argument("config", help="path to a JSON problem description")
    p_check.add_argument("--name", required=True, help="module name from the config")
    p_check.set_defaults(func=cmd_check_module)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # reader went away (e.g. piped into head); suppress the shutdown noise
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return 0
    except ConfigError as exc:
        print(f"config: {exc}", file=sys.stderr)
        return 2
    except (
        ReducibleError,
        BadConstantTermError,
        NotWeilAtVError,
        Char2UnsupportedError,
        Char3UnsupportedError,
    ) as exc:
        print(f"weil-validation: {exc}", file=sys.stderr)
        return 3
    except CandidateBoundExceededError as exc:
        print(f"enumeration: {exc}", file=sys.stderr)
        return 5
    except InternalInconsistencyError as exc:
        print(f"internal-inconsistency: {exc}", file=sys.stderr)
        return 4
    except DrinfeldOrdersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
