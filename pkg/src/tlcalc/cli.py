"""Command-line front end.

    tlcalc --mode root:16 --n 12 bratteli
    tlcalc --mode generic --n 4 --p 1 gram --format json
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import __version__
from .analysis import (
    ExcludedCase,
    composition_series,
    hom_dim,
    projective_verify,
    radical_structure,
    standard_presentation,
)
from .central import action_on_standard, build_Cn, c_eigen, fn_element, is_central, scalar_of
from .linalg import rank
from .numerology import bratteli_table, hom_dim_expected, in_range
from .scalar import ArithmeticMode, ModeUnsupported, f_eigen, render_scalar
from .stdmod import enumerate_links, gram, gram_det, gram_det_poly
from .tower import (
    ExceptionalCase,
    fn_on_induced,
    induced_basis,
    induced_matrices,
    induction_sequence,
    render_elem,
)

COMMANDS = ("bratteli", "gram", "central", "induce", "hom", "projective", "decompose")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# emitters


def emit_json(obj) -> str:
    """Canonical JSON text; parsing and re-emitting gives the same bytes."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def emit_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _matrix_strings(mat) -> list[list[str]]:
    return [[render_scalar(x) for x in row] for row in mat]


def _beta_poly_str(coeffs) -> str:
    terms = []
    for k, c in reversed(list(enumerate(coeffs))):
        if not c:
            continue
        mono = "" if k == 0 else ("beta" if k == 1 else f"beta^{k}")
        if mono and abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}" + (f"*{mono}" if mono else "")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return out + "".join(s + b for s, b in terms[1:])


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _p_values(n: int, p: int | None) -> list[int]:
    if p is None:
        return list(range(n // 2 + 1))
    if not in_range(n, p):
        raise UsageError(f"p={p} is out of range for n={n}")
    return [p]


def _header(cfg) -> dict:
    return {"command": cfg.command, "mode": cfg.mode.spec(), "ell": cfg.mode.ell, "n": cfg.n}


# ---------------------------------------------------------------------------
# commands: each returns (json-ready dict, csv table, ascii text)


def cmd_bratteli(cfg):
    rows = bratteli_table(cfg.n, cfg.mode.ell)
    data = _header(cfg)
    data["rows"] = [r.as_dict() for r in rows]
    table = [
        [r.n, c.p, c.dimV, c.dimR, c.dimL, int(c.critical), c.orbit_id]
        for r in rows
        for c in r.cells
    ]
    header = ["n", "p", "dimV", "dimR", "dimL", "critical", "orbit"]
    text = "\n".join(
        bratteli_ascii(rows, key, cfg.mode.ell) for key in ("dimV", "dimR", "dimL")
    )
    return data, (header, table), text


def bratteli_ascii(rows, key: str, ell: int | None) -> str:
    """A triangular table with (n,p) in column n-2p; critical columns carry '|'."""
    width = max([len(str(getattr(c, key))) for r in rows for c in r.cells] + [1])
    ncols = max(r.n for r in rows) + 1
    lines = [key]
    for r in rows:
        cells = [""] * ncols
        for c in r.cells:
            cells[r.n - 2 * c.p] = str(getattr(c, key))
        if ell is not None:
            for j in range(ncols):
                if not cells[j] and (j + 1) % ell == 0 and j < r.n:
                    cells[j] = "|"
        lines.append(f"{r.n:>3} " + " ".join(x.rjust(width) for x in cells).rstrip())
    return "\n".join(lines) + "\n"


def _gram_cell(args):
    n, p, mode = args
    states = list(enumerate_links(n, p))
    g = gram(n, p, mode)
    return {
        "p": p,
        "states": states,
        "matrix": _matrix_strings(g),
        "det": render_scalar(gram_det(n, p, mode)),
        "det_beta": _beta_poly_str([int(c) for c in gram_det_poly(n, p).coeffs()]),
        "rank": rank(g, mode),
        "radical_dim": len(states) - rank(g, mode),
    }


def cmd_gram(cfg):
    cells = _pmap(_gram_cell, [(cfg.n, p, cfg.mode) for p in _p_values(cfg.n, cfg.p)], cfg.jobs)
    data = _header(cfg)
    data["gram"] = cells
    table = []
    for c in cells:
        for s, row in zip(c["states"], c["matrix"]):
            table.append([c["p"], s] + row)
    width = max((len(c["states"]) for c in cells), default=0)
    header = ["p", "state"] + [f"c{j}" for j in range(width)]
    parts = []
    for c in cells:
        parts.append(f"G({cfg.n},{c['p']})  states: {' '.join(c['states'])}")
        w = max(len(x) for row in c["matrix"] for x in row)
        for row in c["matrix"]:
            parts.append("  [" + " ".join(x.rjust(w) for x in row) + "]")
        parts.append(f"  det = {c['det']}   (in beta: {c['det_beta']})")
        parts.append(f"  radical dimension = {c['radical_dim']}")
    return data, (header, table), "\n".join(parts) + "\n"


def cmd_central(cfg):
    n, mode = cfg.n, cfg.mode
    F = fn_element(n, mode)
    C = build_Cn(n, mode)  # needs q; raises ModeUnsupported for beta modes
    eig = []
    for p in _p_values(n, cfg.p):
        f_on = scalar_of(action_on_standard(F, n, p))
        c_on = scalar_of(action_on_standard(C, n, p))
        eig.append(
            {
                "p": p,
                "f_expected": render_scalar(f_eigen(mode, n, p)),
                "f_computed": None if f_on is None else render_scalar(f_on),
                "c_expected": render_scalar(c_eigen(mode, n, p)),
                "c_computed": None if c_on is None else render_scalar(c_on),
            }
        )
    data = _header(cfg)
    data["F"] = [[d.serialize(), render_scalar(c)] for d, c in sorted(F.terms.items())]
    data["C"] = [[d.serialize(), render_scalar(c)] for d, c in sorted(C.terms.items())]
    data["F_central"] = is_central(F)
    data["C_central"] = is_central(C)
    data["eigenvalues"] = eig
    header = ["p", "f_expected", "f_computed", "c_expected", "c_computed"]
    table = [[e[k] for k in header] for e in eig]
    lines = [f"F_{n}: {len(F.terms)} diagrams, central: {data['F_central']}"]
    lines += [f"  {d}  {c}" for d, c in data["F"]]
    lines.append(f"C_{n}: {len(C.terms)} diagrams, central: {data['C_central']}")
    lines += [f"  {d}  {c}" for d, c in data["C"]]
    lines.append("eigenvalues on V(n,p):")
    for e in eig:
        lines.append(f"  p={e['p']}  F: {e['f_computed']}  C: {e['c_computed']}")
    return data, (header, table), "\n".join(lines) + "\n"


def _induce_cell(args):
    n, p, mode = args
    basis = induced_basis(n, p, mode)
    cell = {
        "p": p,
        "basis": [render_elem(e, n) for e in basis],
        "generators": [_matrix_strings(m) for m in induced_matrices(n, p, mode)],
        "F": _matrix_strings(fn_on_induced(n, p, mode)),
    }
    try:
        seq = induction_sequence(n, p, mode)
        cell["sequence"] = {
            "sub": list(seq.sub),
            "quotient": list(seq.quotient),
            "splits": seq.splits,
            "verified": seq.verified,
        }
    except ExceptionalCase as exc:
        cell["sequence"] = {"exceptional": str(exc)}
    return cell


def cmd_induce(cfg):
    cells = _pmap(_induce_cell, [(cfg.n, p, cfg.mode) for p in _p_values(cfg.n, cfg.p)], cfg.jobs)
    data = _header(cfg)
    data["induced"] = cells
    header = ["p", "index", "basis"]
    table = [[c["p"], i, b] for c in cells for i, b in enumerate(c["basis"])]
    lines = []
    for c in cells:
        lines.append(f"Ind V({cfg.n},{c['p']}), dimension {len(c['basis'])}")
        for i, b in enumerate(c["basis"]):
            lines.append(f"  {i}: {b}")
        lines.append(f"  F_{cfg.n + 1}:")
        w = max(len(x) for row in c["F"] for x in row)
        for row in c["F"]:
            lines.append("    [" + " ".join(x.rjust(w) for x in row) + "]")
        lines.append(f"  sequence: {json.dumps(c['sequence'], ensure_ascii=False)}")
    return data, (header, table), "\n".join(lines) + "\n"


def _hom_cell(args):
    n, p, p2, mode = args
    got = hom_dim(standard_presentation(n, p, mode), standard_presentation(n, p2, mode))
    want = hom_dim_expected(n, p, p2, mode.ell, mode.beta_is_zero)
    return {"p": p, "p2": p2, "dim": got, "expected": want}


def cmd_hom(cfg):
    n = cfg.n
    items = [(n, p, p2, cfg.mode) for p in _p_values(n, cfg.p) for p2 in range(n // 2 + 1)]
    cells = _pmap(_hom_cell, items, cfg.jobs)
    data = _header(cfg)
    data["hom"] = cells
    header = ["p", "p2", "dim", "expected"]
    table = [[c[k] for k in header] for c in cells]
    lines = [f"dim Hom(V({n},p), V({n},p')) for p' = 0..{n // 2}"]
    for p in _p_values(n, cfg.p):
        row = [c for c in cells if c["p"] == p]
        marks = " ".join(str(c["dim"]) + ("" if c["dim"] == c["expected"] else "!") for c in row)
        lines.append(f"  p={p}: {marks}")
    return data, (header, table), "\n".join(lines) + "\n"


def _projective_cell(args):
    n, p, mode = args
    try:
        rep = projective_verify(n, p, mode)
    except ExcludedCase as exc:
        return {"p": p, "excluded": str(exc)}
    return {
        "p": p,
        "kind": rep.kind,
        "dim": rep.dim,
        "expected": rep.dim_expected,
        "submodule": rep.top,
        "hom_dim": rep.hom_dim,
        "injective": rep.injective,
        "ok": rep.ok,
    }


def cmd_projective(cfg):
    cells = _pmap(_projective_cell, [(cfg.n, p, cfg.mode) for p in _p_values(cfg.n, cfg.p)], cfg.jobs)
    data = _header(cfg)
    data["projective"] = cells
    header = ["p", "kind", "dim", "expected", "submodule", "ok"]
    table = [[c.get(k, "") for k in header] for c in cells]
    lines = []
    for c in cells:
        if "excluded" in c:
            lines.append(f"P({cfg.n},{c['p']}): {c['excluded']}")
        else:
            lines.append(
                f"P({cfg.n},{c['p']}): {c['kind']}, dim {c['dim']} (expected {c['expected']}),"
                f" contains V({cfg.n},{c['submodule']}): {c['injective']}"
            )
    return data, (header, table), "\n".join(lines) + "\n"


def _decompose_cell(args):
    n, p, mode = args
    rad = radical_structure(n, p, mode)
    return {
        "p": p,
        "factors": [list(f) for f in composition_series(n, p, mode)],
        "radical_dim": rad.dim,
        "radical_partner": rad.partner,
        "verified": rad.verified,
    }


def cmd_decompose(cfg):
    cells = _pmap(_decompose_cell, [(cfg.n, p, cfg.mode) for p in _p_values(cfg.n, cfg.p)], cfg.jobs)
    data = _header(cfg)
    data["decompose"] = cells
    header = ["p", "factors", "radical_dim", "radical_partner", "verified"]
    table = [
        [c["p"], " ".join(f"L({a},{b})" for a, b in c["factors"]), c["radical_dim"], c["radical_partner"], c["verified"]]
        for c in cells
    ]
    lines = []
    for c in cells:
        fac = ", ".join(f"L({a},{b})" for a, b in c["factors"]) or "none"
        lines.append(f"V({cfg.n},{c['p']}): factors {fac}; radical dim {c['radical_dim']}")
    return data, (header, table), "\n".join(lines) + "\n"


HANDLERS = {
    "bratteli": cmd_bratteli,
    "gram": cmd_gram,
    "central": cmd_central,
    "induce": cmd_induce,
    "hom": cmd_hom,
    "projective": cmd_projective,
    "decompose": cmd_decompose,
}


# ---------------------------------------------------------------------------
# argument handling


DEFAULTS = {"mode": "generic", "n": None, "p": None, "format": "ascii", "out": None, "jobs": 1}


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    # subcommand copies use SUPPRESS so flags work before or after the command
    def d(name):
        return argparse.SUPPRESS if suppress else DEFAULTS[name]

    parser.add_argument("--mode", default=d("mode"), help="generic | root:M | beta:a/b")
    parser.add_argument("--n", type=int, default=d("n"))
    parser.add_argument("--p", type=int, default=d("p"))
    parser.add_argument("--format", choices=("ascii", "json", "csv"), default=d("format"))
    parser.add_argument("--out", default=d("out"), help="write here instead of stdout")
    parser.add_argument("--jobs", type=int, default=d("jobs"), help="worker processes over p")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlcalc", description="Exact Temperley-Lieb computations.")
    parser.add_argument("--version", action="version", version=__version__)
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        _add_common(sp, suppress=True)
    return parser


def parse_config(argv=None) -> argparse.Namespace:
    parser = build_parser()
    cfg = parser.parse_args(argv)
    try:
        cfg.mode = ArithmeticMode.parse(cfg.mode)
    except ValueError as exc:
        parser.error(f"bad --mode: {exc}")
    if cfg.n is None:
        parser.error("--n is required")
    if cfg.n < 1:
        parser.error("--n must be at least 1")
    if cfg.jobs < 1:
        parser.error("--jobs must be at least 1")
    if cfg.command == "induce" and cfg.p is not None and not in_range(cfg.n, cfg.p):
        parser.error(f"p={cfg.p} is out of range for n={cfg.n}")
    return cfg


def render(cfg, data, table, text) -> str:
    if cfg.format == "json":
        return emit_json(data)
    if cfg.format == "csv":
        return emit_csv(*table)
    return text


def main(argv=None) -> int:
    cfg = parse_config(argv)
    try:
        data, table, text = HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"tlcalc: error: {exc}", file=sys.stderr)
        return 2
    except ModeUnsupported as exc:
        print(f"tlcalc: {cfg.command} is not available in mode {cfg.mode.spec()}: {exc}", file=sys.stderr)
        return 3
    out = render(cfg, data, table, text)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
