"""Command-line batch driver.

Every command reads a scenario (file and/or flags), runs its items, and
writes one deterministic JSON report.  Exit codes: 0 success, 2 bad
configuration, 3 failed invariant.
"""
from __future__ import annotations

import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import click

from . import __version__
from .errors import ConfigurationError, HochpirError, InvariantViolation, ParseError
from .exactla import SparseMatrix, fmt
from .scenario import Scenario, load_scenario, parse_scenario

CONVENTIONS = {
    "engine": f"hochpir {__version__}",
    "arithmetic": "exact rationals, printed p/q",
    "sign_rule": "Koszul: swapping homogeneous a, b costs (-1)^(|a||b|)",
    "differential_degree": -1,
    "twisted_differential": "D(m(x)B) = dm(x)B + (-1)^|m| m(x)dB + sum (-1)^|m'| m'(x)y(c).B over the coaction",
    "delta_normalization": "coaction term coefficient 1, y = twisting image of the coalgebra factor",
    "lie_basis": "super-Lyndon: standard bracketings of Lyndon words plus squares of odd ones",
    "word_order": "length, then lexicographic in generator index",
    "pbw": "symmetrisation (1/k!) sum over orderings with Koszul signs; Hodge degree = symmetric length",
    "free_group_action": "right action, Psi^* splits slots by iterated coproduct, antipode on inverse letters",
    "abelianization": "A[j][i] = signed count of x_j in Psi(x_i); gr action h_a -> sum_i A[a][i] h_i",
    "suspension_classes": "a class of homology degree p sits in cohomological degree -p",
    "class_pairing": "(h, h^v) = 1 on matching basis classes",
}

EXIT_CONFIG, EXIT_INVARIANT = 2, 3


# -- output ---------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def dumps(report) -> str:
    return json.dumps(_jsonable(report), sort_keys=True, indent=2) + "\n"


def emit(report, out):
    text = dumps(report)
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def matrix_json(M: SparseMatrix) -> dict:
    ri = {k: i for i, k in enumerate(M.row_keys)}
    ci = {k: i for i, k in enumerate(M.col_keys)}
    entries = sorted([ri[r], ci[c], fmt(x)] for c, col in M.columns.items() for r, x in col.items())
    return {"shape": list(M.shape), "entries": entries}


# -- scenario assembly ----------------------------------------------------

_COEFF_RX = re.compile(r"^([A-Za-z_]+)(?::(.*))?$")


def parse_coeffs(text: str) -> dict:
    """``dual_numbers``, ``bead:N=3``, ``bead:N=2,degrees=2;4`` or a .json path."""
    text = text.strip()
    if text.endswith(".json"):
        return {"file": text}
    m = _COEFF_RX.match(text)
    if not m:
        raise ParseError(f"bad coefficient reference {text!r}")
    params = {}
    if m.group(2):
        for item in m.group(2).split(","):
            if "=" not in item:
                raise ParseError(f"bad coefficient parameter {item!r}")
            k, v = item.split("=", 1)
            vals = [int(x) for x in v.split(";")] if ";" in v else int(v)
            params[k.strip()] = vals
    return {"builder": m.group(1), "params": params}


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise ParseError(f"bad integer list {text!r}") from None


_REP_RX = re.compile(r"^U(I{1,2})(\d+)$")


def rep_selector(rep: str) -> dict:
    """UI<N>: cokernel slot, xi-total N; UII<N>: kernel slot, xi-total N (dual numbers)."""
    m = _REP_RX.match(rep.strip())
    if not m:
        raise ParseError(f"bad representation name {rep!r}; expected UI<N> or UII<N>")
    N = int(m.group(2))
    if m.group(1) == "I":
        return {"degree": N, "color": [N]}
    return {"degree": N + 2, "color": [N + 1]}


def build_scenario(scenario_path, overrides: dict) -> tuple[Scenario, Path | None]:
    if scenario_path:
        sc, base = load_scenario(scenario_path)
        raw = sc.model_dump(mode="json", exclude_defaults=True)
        raw["version"] = sc.version
    else:
        raw, base = {"version": 1}, None
    for k, v in overrides.items():
        if v is None or v == () or v == []:
            continue
        raw[k] = v
    return parse_scenario(raw), base


def coefficient_system(sc: Scenario, base):
    if sc.coefficients is None:
        raise ConfigurationError("scenario has no coefficient system")
    return sc.coefficients.build(base)


def make_complex(sc: Scenario, cs):
    from .hochschild.complexes import (SuspensionSignature, cobar_complex, gr_complex,
                                       suspension_complex, wedge_complex)
    if sc.complex == "suspension":
        if not sc.signature:
            raise ConfigurationError("suspension complex needs a signature")
        return suspension_complex(SuspensionSignature(tuple(tuple(c) for c in sc.signature)), cs)
    if sc.n is None:
        raise ConfigurationError(f"{sc.complex} complex needs n")
    return {"wedge": wedge_complex, "cobar": cobar_complex, "gr": gr_complex}[sc.complex](sc.n, cs)


def all_selectors(sc: Scenario):
    return [s for item in sc.selectors for s in item.selectors()]


def header(command: str, sc: Scenario) -> dict:
    return {"command": command, "conventions": CONVENTIONS,
            "scenario": sc.model_dump(mode="json", exclude_defaults=True)}


# -- parallel item execution -----------------------------------------------

_WORKER: dict = {}


def _init_worker(kind, sc_json, base):
    sc = parse_scenario(sc_json)
    _WORKER["ctx"] = _CONTEXTS[kind](sc, Path(base) if base else None)
    _WORKER["kind"] = kind


def _run_worker(i):
    ctx = _WORKER["ctx"]
    return _ITEMS[_WORKER["kind"]](ctx, ctx.items[i])


def run_items(kind: str, sc: Scenario, base, jobs: int):
    ctx = _CONTEXTS[kind](sc, base)
    if jobs <= 1 or len(ctx.items) <= 1:
        return ctx, [_ITEMS[kind](ctx, it) for it in ctx.items]
    sc_json = sc.model_dump(mode="json")
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                             initargs=(kind, sc_json, str(base) if base else None)) as ex:
        return ctx, list(ex.map(_run_worker, range(len(ctx.items))))


@dataclass
class _Ctx:
    sc: Scenario
    cs: object
    cx: object
    items: list


def _homology_ctx(sc, base):
    cs = coefficient_system(sc, base)
    return _Ctx(sc, cs, make_complex(sc, cs), all_selectors(sc))


def _homology_item(ctx, sel):
    from .hochschild.complexes import build_slice, homology, slice_to_json
    sl = build_slice(ctx.cx, sel)
    hom = homology(sl)
    out = slice_to_json(sl, hom)
    if not ctx.sc.representatives:
        out["homology"].pop("representatives")
    return out


def _action_ctx(sc, base):
    cs = coefficient_system(sc, base)
    if sc.complex not in ("wedge", "cobar"):
        raise ConfigurationError("the free-group action runs on wedge or cobar complexes")
    return _Ctx(sc, cs, make_complex(sc, cs), all_selectors(sc))


def _action_item(ctx, sel):
    from .autf import (action_matrix, chain_map_defect, gl_factoring_test, hodge_filtration_check,
                       induced_on_homology, inner_triviality_check, parse_endo, parse_word)
    from .hochschild.complexes import build_slice, homology
    sc, cx = ctx.sc, ctx.cx
    n = cx.n
    sl = build_slice(cx, sel)
    hom = homology(sl)
    out = {"selector": sel.to_json(), "basis": [cx.key_name(k) for k in sl.basis],
           "homology_dim": hom.dim, "endos": [], "pairs": [], "inner": []}
    for text in sc.endos:
        psi = parse_endo(text, n)
        rec = {"endo": text, "parsed": str(psi),
               "chain_matrix": matrix_json(action_matrix(psi, sl)),
               "homology_matrix": matrix_json(induced_on_homology(psi, hom)),
               "chain_map": chain_map_defect(psi, sl).is_zero()}
        if sc.filtration and cx.kind == "wedge":
            rec["filtration"] = hodge_filtration_check(psi, sl).to_json()
        out["endos"].append(rec)
    for a, b in sc.pairs:
        v = gl_factoring_test((parse_endo(a, n), parse_endo(b, n)), hom)
        rec = {"pair": [a, b], **v.to_json(cx),
               "matrices": [matrix_json(M) for M in v.matrices]}
        out["pairs"].append(rec)
    for w in sc.inner:
        rep = inner_triviality_check(parse_word(w, n), sl, hom)
        out["inner"].append({"word": w, **rep.to_json()})
    return out


def _induced_ctx(sc, base):
    from .susmap import parse_map
    cs = coefficient_system(sc, base)
    if not sc.map:
        raise ConfigurationError("induced-map needs a map")
    return _Ctx(sc, cs, parse_map(sc.map), all_selectors(sc))


def _induced_item(ctx, sel):
    from .hochschild.complexes import SliceSelector
    from .susmap import InducedMap, pinch_agreement, target_selector, verify_chain_map
    rho = ctx.cx
    F = InducedMap(rho, ctx.cs)
    src = F.src.basis(sel)
    tgt = F.tgt.basis(target_selector(sel))
    M = F.matrix(src, tgt)
    by_hodge: dict = {}
    for k in src:
        h = F.src.hodge(k)
        by_hodge.setdefault(h, [0, 0])
        by_hodge[h][0] += 1
        by_hodge[h][1] += bool(M.columns.get(k))
    out = {"selector": sel.to_json(), "source_basis": [F.src.key_name(k) for k in src],
           "target_basis": [F.tgt.key_name(k) for k in tgt], "matrix": matrix_json(M),
           "source_hodge_columns": {str(h): {"columns": c, "nonzero": z} for h, (c, z) in sorted(by_hodge.items())},
           "exact_hodge_range": None if rho.W is None else [0, rho.W]}
    if ctx.sc.verify:
        out["chain_map"] = verify_chain_map(rho, ctx.cs, sel).to_json()
    if ctx.sc.compare == "star":
        if not rho.name.startswith("pinch"):
            raise ConfigurationError("--compare star needs a pinch map")
        hm = rho.W if sel.hodge_max is None else min(sel.hodge_max, rho.W)
        csel = SliceSelector(sel.degree, sel.color, sel.hodge, hm, sel.hodge_multi)
        out["compare_star"] = {"hodge_max": hm, **pinch_agreement(rho.W, ctx.cs, csel)}
    return out


_CONTEXTS = {"homology": _homology_ctx, "action": _action_ctx, "induced": _induced_ctx}
_ITEMS = {"homology": _homology_item, "action": _action_item, "induced": _induced_item}


# -- commands -------------------------------------------------------------

def common(f):
    f = click.option("--seed", type=int, default=None, help="Seed for randomized suites.")(f)
    f = click.option("--jobs", type=int, default=1, show_default=True, help="Parallel scenario items.")(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here.")(f)
    f = click.option("--scenario", type=click.Path(exists=True, dir_okay=False), default=None,
                     help="Scenario JSON file.")(f)
    return f


def slice_options(f):
    f = click.option("--coeffs", default=None, help="Builder ref (dual_numbers, bead:N=3) or a .json file.")(f)
    f = click.option("--n", "n", type=int, default=None, help="Number of circles.")(f)
    f = click.option("--complex", "complex_", type=click.Choice(["wedge", "cobar", "gr", "suspension"]),
                     default=None)(f)
    f = click.option("--degree", default=None, help="Homological degree, list 'a,b' or range 'a..b'.")(f)
    f = click.option("--color", default=None, help="Color multidegree, e.g. 3 or 1,1.")(f)
    f = click.option("--hodge", type=int, default=None)(f)
    f = click.option("--hodge-max", type=int, default=None)(f)
    return f


def _selector_override(degree, color, hodge, hodge_max):
    if degree is None:
        if color is not None or hodge is not None or hodge_max is not None:
            raise ConfigurationError("--color/--hodge need --degree")
        return None
    if ".." in degree:
        a, b = degree.split("..", 1)
        try:
            d = {"start": int(a), "stop": int(b)}
        except ValueError:
            raise ParseError(f"bad degree range {degree!r}") from None
    else:
        d = parse_int_list(degree)
        d = d[0] if len(d) == 1 else d
    want = {"degree": d}
    if color is not None:
        want["color"] = parse_int_list(color)
    if hodge is not None:
        want["hodge"] = hodge
    if hodge_max is not None:
        want["hodge_max"] = hodge_max
    return [want]


def _base_overrides(coeffs, n, complex_, degree, color, hodge, hodge_max):
    return {"coefficients": parse_coeffs(coeffs) if coeffs else None, "n": n, "complex": complex_,
            "selectors": _selector_override(degree, color, hodge, hodge_max)}


@click.group()
@click.version_option(__version__, prog_name="hochpir")
def cli():
    """Higher Hochschild homology of wedges of circles and suspensions."""


@cli.command()
@common
@slice_options
@click.option("--euler-color", "euler_colors", multiple=True, help="Color for an Euler characteristic.")
@click.option("--csv", "csv_path", default=None, type=click.Path(dir_okay=False), help="Also write a dims table.")
def homology(scenario, out, jobs, seed, coeffs, n, complex_, degree, color, hodge, hodge_max, euler_colors, csv_path):
    """Homology of selected slices."""
    from .hochschild.complexes import euler_characteristic
    ov = _base_overrides(coeffs, n, complex_, degree, color, hodge, hodge_max)
    ov["euler_colors"] = [parse_int_list(c) for c in euler_colors] or None
    ov["csv"] = csv_path
    sc, base = build_scenario(scenario, ov)
    ctx, results = run_items("homology", sc, base, jobs)
    report = header("homology", sc)
    report["slices"] = results
    if sc.euler_colors:
        chi = euler_characteristic(ctx.cx, [tuple(c) for c in sc.euler_colors])
        report["euler_characteristics"] = [{"color": list(c), "chi": v} for c, v in chi.items()]
    if sc.csv:
        _write_csv(sc.csv, ["degree", "color", "hodge", "hodge_max", "chain_dim", "homology_dim"],
                   [[r["selector"]["degree"], ",".join(map(str, r["selector"].get("color", []))),
                     r["selector"].get("hodge", ""), r["selector"].get("hodge_max", ""),
                     len(r["basis"]), r["homology"]["dim"]] for r in results])
    emit(report, out)


def _write_csv(path, head, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(head)
    w.writerows(rows)
    Path(path).write_text(buf.getvalue())


def _action_overrides(coeffs, n, complex_, degree, color, hodge, hodge_max, endo, pair, rep, inner, filtration):
    ov = _base_overrides(coeffs, n, complex_, degree, color, hodge, hodge_max)
    if rep:
        if ov["selectors"]:
            raise ConfigurationError("give either --rep or --degree, not both")
        ov["selectors"] = [rep_selector(rep)]
        if ov["coefficients"] is None:
            ov["coefficients"] = {"builder": "dual_numbers", "params": {}}
        if ov["n"] is None:
            ov["n"] = 3
    ov["endos"] = list(endo) or None
    pairs = []
    for p in pair:
        parts = [x.strip() for x in p.split(",")] if "->" not in p else [x.strip() for x in p.split("|")]
        if len(parts) != 2:
            raise ParseError(f"--pair needs two endomorphisms, got {p!r}")
        pairs.append(parts)
    ov["pairs"] = pairs or None
    ov["inner"] = list(inner) or None
    ov["filtration"] = True if filtration else None
    return ov


def action_options(f):
    f = click.option("--endo", multiple=True, help="Endomorphism: Nielsen name or 'x1->x1 x2, ...'.")(f)
    f = click.option("--pair", multiple=True, help="Two endomorphisms 'E12,E1b2b' (use '|' around assignments).")(f)
    f = click.option("--rep", default=None, help="Dual-number representation UI<N> or UII<N>.")(f)
    f = click.option("--inner", multiple=True, help="Conjugating word for the inner-triviality check.")(f)
    f = click.option("--filtration", is_flag=True, help="Also check Hodge filtration compatibility.")(f)
    return f


@cli.command()
@common
@slice_options
@action_options
def action(scenario, out, jobs, seed, coeffs, n, complex_, degree, color, hodge, hodge_max,
           endo, pair, rep, inner, filtration):
    """End(F_n) action matrices, filtration reports and factoring verdicts."""
    ov = _action_overrides(coeffs, n, complex_, degree, color, hodge, hodge_max, endo, pair, rep, inner, filtration)
    sc, base = build_scenario(scenario, ov)
    _, results = run_items("action", sc, base, jobs)
    report = header("action", sc)
    report["slices"] = results
    emit(report, out)


@cli.command("factor-test")
@common
@slice_options
@action_options
def factor_test(scenario, out, jobs, seed, coeffs, n, complex_, degree, color, hodge, hodge_max,
                endo, pair, rep, inner, filtration):
    """GL(n, Z) factoring test on pairs with equal abelianization."""
    ov = _action_overrides(coeffs, n, complex_, degree, color, hodge, hodge_max, endo, pair, rep, inner, filtration)
    sc, base = build_scenario(scenario, ov)
    if not sc.pairs:
        raise ConfigurationError("factor-test needs at least one --pair")
    _, results = run_items("action", sc, base, jobs)
    report = header("factor-test", sc)
    report["verdicts"] = [{"selector": r["selector"], "pairs": r["pairs"]} for r in results]
    emit(report, out)


@cli.command()
@common
@click.option("--partition", "partitions", multiple=True, help="Partition of N, e.g. 2,1.")
@click.option("--n", "n", type=int, default=None)
@click.option("--window", default=None, help="Homological degrees to report, e.g. 3,4.")
@click.option("--shuffle-seed", type=int, default=None, help="Permute basis order before reducing.")
@click.option("--csv", "csv_path", default=None, type=click.Path(dir_okay=False))
def bead(scenario, out, jobs, seed, partitions, n, window, shuffle_seed, csv_path):
    """Isotypic (bead) homology tables; flagged CONJECTURAL."""
    from .reptheory import bead_table, parse_partition
    ov = {"partitions": list(partitions) or None, "n": n,
          "window": parse_int_list(window) if window else None, "shuffle_seed": shuffle_seed, "csv": csv_path}
    sc, base = build_scenario(scenario, ov)
    if sc.n is None or not sc.partitions:
        raise ConfigurationError("bead needs --n and at least one --partition")
    tables = [bead_table(parse_partition(p), sc.n, sc.window, sc.shuffle_seed, sc.bead_degrees).to_json()
              for p in sc.partitions]
    report = header("bead", sc)
    report["tables"] = tables
    if sc.csv:
        _write_csv(sc.csv, ["partition", "n", "degree", "slot", "total_dim", "isotypic_dim", "dim_U"],
                   [[",".join(map(str, t["partition"])), t["n"], r["degree"], r["slot"], r["total_dim"],
                     r["isotypic_dim"], r["dim_U"]] for t in tables for r in t["rows"]])
    emit(report, out)


@cli.command("induced-map")
@common
@slice_options
@click.option("--map", "map_text", default=None, help="Builtin (pinch(W), slide(W), hopf) or 'y -> 1/2*[x,x]'.")
@click.option("--compare", type=click.Choice(["star"]), default=None)
@click.option("--no-verify", is_flag=True, help="Skip the chain-map check.")
def induced_map(scenario, out, jobs, seed, coeffs, n, complex_, degree, color, hodge, hodge_max,
                map_text, compare, no_verify):
    """Map of Hodge-split complexes induced by a map of suspensions."""
    from .susmap import parse_map
    ov = _base_overrides(coeffs, n, complex_, degree, color, hodge, hodge_max)
    ov["map"] = map_text
    ov["compare"] = compare
    if no_verify:
        ov["verify"] = False
    sc, base = build_scenario(scenario, ov)
    if sc.coefficients is None:
        sc = sc.model_copy(update={"coefficients": parse_scenario(
            {"version": 1, "coefficients": {"builder": "dual_numbers"}}).coefficients})
    rho = parse_map(sc.map or "")
    ctx, results = run_items("induced", sc, base, jobs)
    report = header("induced-map", sc)
    report["map"] = rho.to_json()
    report["slices"] = results
    emit(report, out)


@cli.command("euler-projectors")
@common
@click.option("--coeffs", default=None)
@click.option("--m-max", type=int, default=None)
@click.option("--color", "colors", multiple=True, help="Color of the window (repeatable).")
def euler_projectors(scenario, out, jobs, seed, coeffs, m_max, colors):
    """Hodge projectors on one circle from power maps x1 -> x1^r."""
    from .hochschild.complexes import gr_complex, wedge_complex
    from .hochschild.hodge import power_map_projectors
    ov = {"coefficients": parse_coeffs(coeffs) if coeffs else None, "m_max": m_max,
          "colors": [parse_int_list(c) for c in colors] or None, "n": 1}
    sc, base = build_scenario(scenario, ov)
    if sc.m_max is None or not sc.colors:
        raise ConfigurationError("euler-projectors needs --m-max and at least one --color")
    if sc.coefficients is None:
        sc = sc.model_copy(update={"coefficients": parse_scenario(
            {"version": 1, "coefficients": {"builder": "dual_numbers"}}).coefficients})
    cs = coefficient_system(sc, base)
    cx = wedge_complex(1, cs)
    gr = gr_complex(1, cs)
    keys = sorted({k for c in sc.colors for k in cx.keys_of_color(tuple(c))})
    res = power_map_projectors(cx, keys, sc.m_max)
    report = header("euler-projectors", sc)
    report.update(projector_report(res, gr, sc.colors))
    emit(report, out)


def projector_report(res, gr, colors) -> dict:
    from .exactla import rank
    P = res.projectors
    ms = sorted(P)
    ident = SparseMatrix(res.keys, res.keys, {k: {k: Fraction(1)} for k in res.keys})
    total = SparseMatrix(res.keys, res.keys, {})
    from .hochschild.hodge import _axpy_mat
    for m in ms:
        total = _axpy_mat(total, 1, P[m])
    gr_keys = [k for c in colors for k in gr.keys_of_color(tuple(c))]
    pbw_dims = {m: sum(1 for k in gr_keys if gr.hodge(k) == m) for m in ms}
    return {
        "window_dim": len(res.keys),
        "powers": res.powers,
        "check_power": res.check_power,
        "idempotent": all(P[m] @ P[m] == P[m] for m in ms),
        "orthogonal": all((P[a] @ P[b]).is_zero() for a in ms for b in ms if a != b),
        "complete": total == ident,
        "ranks": {str(m): rank(P[m]) for m in ms},
        "pbw_hodge_dims": {str(m): pbw_dims[m] for m in ms},
    }


@cli.command("validate-coeffs")
@common
@click.option("--coeffs", default=None)
def validate_coeffs(scenario, out, jobs, seed, coeffs):
    """Check the axioms of a coefficient system."""
    from .coeffs import describe_table, validate
    sc, base = build_scenario(scenario, {"coefficients": parse_coeffs(coeffs) if coeffs else None})
    cs = coefficient_system(sc, base)
    rep = validate(cs)
    report = header("validate-coeffs", sc)
    report["system"] = {**cs.describe(), **describe_table(cs)}
    report["validation"] = rep.to_json()
    emit(report, out)
    if not rep.passed:
        raise _InvariantExit(rep.failure)


class _InvariantExit(Exception):
    pass


def main(argv=None):
    try:
        rv = cli.main(args=argv, prog_name="hochpir", standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_CONFIG)
    except ConfigurationError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except InvariantViolation as exc:
        click.echo(f"invariant violation: {exc}", err=True)
        sys.exit(EXIT_INVARIANT)
    except _InvariantExit as exc:
        click.echo(f"invariant violation: {exc}", err=True)
        sys.exit(EXIT_INVARIANT)
    except HochpirError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    sys.exit(rv if isinstance(rv, int) else 0)


if __name__ == "__main__":
    main()
