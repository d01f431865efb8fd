"""Command-line front end.

    morita homology --space cp:2 --max-degree 5
    morita ext --space rp:2 --field fp:2 --max-degree 2
    morita hh --file X.json --max-degree 4 --oracle
    morita s1-hom --lambda 1
    morita check --space cp:3 --max-degree 4
    morita spaces

Exit status: 0 on success, 1 if a ``check`` fails, 2 on any input or
validation error (reported as a single line on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .chain import ChainComplex, HomologyTable
from .cw import BUILTINS, CWComplex, CWError, builtin_space, cellular_model, cw_from_dict
from .dga import AlgebraError, FreeDGA, algebra_homology
from .fields import QQ, Field
from .hochschild import bar_cochain_oracle, bar_oracle, hh_cohomology_small, hh_small
from .modules import (MonodromyPair, RepresentationError, bar_ext_oracle, derived_hom,
                      monodromy_hom, semifree_resolution, trivial_module)
from .ncpoly import ParseError

COMMANDS = ("build", "homology", "ext", "hh", "s1-hom", "check", "spaces")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    space: str | None = None
    file: str | None = None
    field: str | None = None
    max_degree: int = 4
    word_bound: int | None = None
    oracle: bool = False
    format: str = "tsv"
    lam: str = "1"
    cohomology: bool = False


def parse_cw_file(text: str, field: Field | None = None) -> CWComplex:
    """Parse a CW-complex JSON document; errors name the line or the offending field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise CWError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if field is not None and isinstance(doc, dict):
        doc = {**doc, "field": field.tag}
    X = cw_from_dict(doc)
    cellular_model(X)  # surfaces attaching-map errors together with the cell id
    return X


def _field(cfg: RunConfig) -> Field | None:
    if cfg.field is None:
        return None
    try:
        return Field.parse(cfg.field)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _space(cfg: RunConfig) -> CWComplex:
    if (cfg.space is None) == (cfg.file is None):
        raise UsageError("give exactly one of --space and --file")
    F = _field(cfg)
    if cfg.space is not None:
        return builtin_space(cfg.space, field=F or QQ)
    try:
        with open(cfg.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {cfg.file}: {e.strerror}") from None
    return parse_cw_file(text, F)


def _emit(table: HomologyTable, fmt: str) -> str:
    return table.to_json() if fmt == "json" else table.to_tsv()


def _compare(mine: HomologyTable, other: HomologyTable) -> HomologyTable:
    agree = mine.dims == other.dims
    mine.notes = {**mine.notes, "oracle": other.title, "oracle_agrees": agree,
                  "oracle_dims": {str(n): d for n, d in sorted(other.dims.items())}}
    if not agree:
        raise AlgebraError(f"oracle disagrees: {mine.as_tuple()} vs {other.as_tuple()}")
    return mine


def _need_bound(A: FreeDGA, cfg: RunConfig):
    if cfg.word_bound is None and A.has_degree_zero():
        raise UsageError("this space has 1-cells, so its algebra has degree-0 generators: "
                         "pass --word-bound")


def _homology(A: FreeDGA, cfg: RunConfig) -> str:
    if cfg.oracle:
        raise UsageError("homology has no oracle; use check")
    _need_bound(A, cfg)
    return _emit(algebra_homology(A, cfg.max_degree, cfg.word_bound), cfg.format)


def _ext(A: FreeDGA, cfg: RunConfig) -> str:
    k = trivial_module(A)
    h = derived_hom(A, k, k, cfg.max_degree)
    if cfg.oracle:
        h = _compare(h, bar_ext_oracle(A, cfg.max_degree))
    return _emit(h, cfg.format)


def _hh(A: FreeDGA, cfg: RunConfig) -> str:
    _need_bound(A, cfg)
    if cfg.cohomology:
        h = hh_cohomology_small(A, cfg.max_degree, cfg.word_bound)
        if cfg.oracle:
            h = _compare(h, bar_cochain_oracle(A, cfg.max_degree))
    else:
        h = hh_small(A, cfg.max_degree, cfg.word_bound)
        if cfg.oracle:
            h = _compare(h, bar_oracle(A, cfg.max_degree))
    return _emit(h, cfg.format)


def _s1_hom(cfg: RunConfig) -> str:
    if cfg.space or cfg.file:
        raise UsageError("s1-hom works over S^1 and takes no space")
    F = _field(cfg) or QQ
    try:
        lam = F(Fraction(cfg.lam))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --lambda {cfg.lam!r}") from None
    k = ChainComplex({0: 1}, None, F)
    h = monodromy_hom(MonodromyPair(k, [[F.one]]), MonodromyPair(k, [[lam]]))
    return _emit(h, cfg.format)


def _check(A: FreeDGA, cfg: RunConfig) -> tuple[str, bool]:
    """Structural checks on the algebra; with ``--oracle`` the bar oracles are compared too."""
    rows = []
    bound = cfg.word_bound
    if bound is None and A.has_degree_zero():
        bound = 4
    ok_d2 = True
    for n in range(2, cfg.max_degree + 2):
        for w in A.basis_words(n, bound):
            if A.differential(A.differential(_word(A, w))):
                ok_d2 = False
    rows.append(("d_squared_zero", ok_d2, ""))
    cone, alg = semifree_resolution(A).exactness_certificate(min(cfg.max_degree, 3), bound)
    ok = cone.dims == alg.dims
    rows.append(("resolution_exact", ok, f"cone {cone.as_tuple()} algebra {alg.as_tuple()} "
                                         f"{cone.stability_flag}"))
    if cfg.oracle and not A.has_degree_zero():
        k = trivial_module(A)
        e1, e2 = derived_hom(A, k, k, cfg.max_degree), bar_ext_oracle(A, cfg.max_degree)
        rows.append(("ext_oracle", e1.dims == e2.dims, str(e1.as_tuple())))
        h1, h2 = hh_small(A, cfg.max_degree), bar_oracle(A, cfg.max_degree)
        rows.append(("hh_oracle", h1.dims == h2.dims, str(h1.as_tuple())))
    good = all(r[1] for r in rows)
    if cfg.format == "json":
        doc = {name: {"ok": passed, "detail": detail} for name, passed, detail in rows}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = "".join(f"{name}\t{'ok' if passed else 'FAIL'}\t{detail}\n"
                       for name, passed, detail in rows)
    return text, good


def _word(A: FreeDGA, w: tuple):
    p = A.one()
    for g in w:
        p = A.multiply(p, A.gen(g))
    return p


def _spaces(cfg: RunConfig) -> str:
    rows = sorted((name, pname or "-") for name, (pname, _) in BUILTINS.items())
    if cfg.format == "json":
        return json.dumps(dict(rows), sort_keys=True, indent=2) + "\n"
    return "".join(f"{name}\t{pname}\n" for name, pname in rows)


def execute(cfg: RunConfig) -> tuple[str, int]:
    """Run one command; returns (output text, exit code)."""
    if cfg.command not in COMMANDS:
        raise UsageError(f"unknown command {cfg.command!r}")
    if cfg.format not in ("tsv", "json"):
        raise UsageError("--format must be tsv or json")
    if cfg.max_degree < 0:
        raise UsageError("--max-degree must be >= 0")
    if cfg.word_bound is not None and cfg.word_bound < 0:
        raise UsageError("--word-bound must be >= 0")
    if cfg.command == "spaces":
        return _spaces(cfg), 0
    if cfg.command == "s1-hom":
        return _s1_hom(cfg), 0
    X = _space(cfg)
    A = cellular_model(X)
    if cfg.command == "build":
        return f"# {X.name} over {X.field}\n{A.describe()}\n", 0
    if cfg.command == "homology":
        return _homology(A, cfg), 0
    if cfg.command == "ext":
        return _ext(A, cfg), 0
    if cfg.command == "hh":
        return _hh(A, cfg), 0
    text, good = _check(A, cfg)
    return text, 0 if good else 1


def run(cfg: RunConfig) -> str:
    return execute(cfg)[0]


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="morita", description="Loop-space models of finite CW complexes.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--space", help="builtin space, e.g. sphere:3, cp:2, rp:2, torus")
    ap.add_argument("--file", help="CW-complex JSON document")
    ap.add_argument("--field", help="q (default) or fp:<prime>")
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--word-bound", type=int)
    ap.add_argument("--oracle", action="store_true", help="cross-check with the bar-complex oracle")
    ap.add_argument("--format", choices=("tsv", "json"), default="tsv")
    ap.add_argument("--lambda", dest="lam", default="1", help="monodromy eigenvalue (s1-hom)")
    ap.add_argument("--cohomology", action="store_true", help="hh: Hochschild cohomology")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        text, code = execute(cfg)
    except (UsageError, CWError, AlgebraError, RepresentationError, ParseError, ValueError) as e:
        msg = " ".join(str(e).split())
        print(f"morita: error: {msg}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
