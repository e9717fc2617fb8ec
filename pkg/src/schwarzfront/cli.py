"""Command-line pipeline for building and exporting front surfaces.

Subcommands:
  surface         build a mesh over selected tiles and export OBJ/PLY
  singular-locus  trace the singular curve and write a classification table
  selfcheck       run the acceptance battery and print the report
  tiles           list enumerable group elements for a case
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import singular as sg
from .equation import (TAG_DIHEDRAL, TAG_FUCHSIAN_INF, TAG_ICOSAHEDRAL,
                       TAG_OCTAHEDRAL, TAG_TETRAHEDRAL, eval_q,
                       eval_q_derivatives)
from .mesh import JobConfig, build_mesh, export_mesh, _exponents
from .tiling import tile_parameter_domain

_CASE_ALIASES = {"tetra": TAG_TETRAHEDRAL, "octa": TAG_OCTAHEDRAL,
                 "icosa": TAG_ICOSAHEDRAL, "fuchsian": TAG_FUCHSIAN_INF,
                 TAG_TETRAHEDRAL: TAG_TETRAHEDRAL,
                 TAG_OCTAHEDRAL: TAG_OCTAHEDRAL,
                 TAG_ICOSAHEDRAL: TAG_ICOSAHEDRAL,
                 TAG_FUCHSIAN_INF: TAG_FUCHSIAN_INF}


def parse_case(text: str):
    """'dihedral:n' | 'tetra' | 'octa' | 'icosa' | 'fuchsian' -> (tag, n)."""
    text = text.strip().lower()
    if text.startswith("dihedral"):
        parts = text.split(":")
        if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
            raise argparse.ArgumentTypeError(
                "dihedral case must be written dihedral:n with n >= 1")
        return TAG_DIHEDRAL, int(parts[1])
    if text in _CASE_ALIASES:
        return _CASE_ALIASES[text], None
    raise argparse.ArgumentTypeError(
        f"unknown case {text!r}; expected dihedral:n, tetra, octa, "
        f"icosa or fuchsian")


def read_config(path: str) -> dict:
    """Flat key=value file; blank lines and # comments ignored."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = line.split("=", 1)
            out[key.strip()] = val.strip()
    return out


def _build_parser():
    p = argparse.ArgumentParser(
        prog="schwarzfront",
        description="Flat-front images of the hypergeometric Schwarz map "
                    "in hyperbolic 3-space")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--case", default=None,
                        help="dihedral:n | tetra | octa | icosa | fuchsian")
        sp.add_argument("--config", default=None,
                        help="key=value config file; flags override it")
        sp.add_argument("--out", default=None, help="output path")

    s = sub.add_parser("surface", help="build and export a surface mesh")
    common(s)
    s.add_argument("--tiles", type=int, default=None,
                   help="number of tiles (default: all enumerable)")
    s.add_argument("--words", default=None,
                   help="comma-separated tile words, e.g. ',21,31'")
    s.add_argument("--resolution", type=int, default=None)
    s.add_argument("--chart", choices=("ball", "uhs"), default=None)
    s.add_argument("--format", dest="fmt", choices=("obj", "ply"),
                   default=None)
    s.add_argument("--tol-ramification-margin", type=float, default=None)
    s.add_argument("--tol-boundary-margin", type=float, default=None)
    s.add_argument("--no-singular", action="store_true",
                   help="skip the singular-curve overlay")

    g = sub.add_parser("singular-locus",
                       help="trace the singular curve, classify, export")
    common(g)
    g.add_argument("--tol-classify", type=float, default=None)

    c = sub.add_parser("selfcheck", help="run the acceptance battery")
    c.add_argument("--quick", action="store_true",
                   help="smaller grids for the slow checks")
    c.add_argument("--out", default=None,
                   help="write the report here as well as stdout")

    t = sub.add_parser("tiles", help="list group elements for a case")
    common(t)
    t.add_argument("--tiles", type=int, default=None,
                   help="stop after this many elements")
    return p


def _merged(args, key, cfg_file, default, cast=str):
    cli_val = getattr(args, key, None)
    if cli_val is not None:
        return cli_val
    if cfg_file and key in cfg_file:
        return cast(cfg_file[key])
    return default


def _job_config(args) -> JobConfig:
    cfg_file = read_config(args.config) if args.config else {}
    case_text = _merged(args, "case", cfg_file, None)
    if case_text is None:
        raise SystemExit("error: --case is required (or put case= in "
                         "the config file)")
    tag, n = parse_case(case_text)
    words = _merged(args, "words", cfg_file, None)
    if isinstance(words, str):
        words = [w.strip() for w in words.split(",")]
    kwargs = dict(
        case=tag, n=n or 3,
        tiles=_merged(args, "tiles", cfg_file, None, int),
        words=words,
        resolution=_merged(args, "resolution", cfg_file, 16, int),
        chart=_merged(args, "chart", cfg_file, "ball"),
        fmt=_merged(args, "fmt", cfg_file, "obj"),
        out=_merged(args, "out", cfg_file, None) or "front.obj",
    )
    rm = _merged(args, "tol_ramification_margin", cfg_file, None, float)
    bm = _merged(args, "tol_boundary_margin", cfg_file, None, float)
    if rm is not None:
        kwargs["ramification_margin"] = rm
    if bm is not None:
        kwargs["boundary_margin"] = bm
    if getattr(args, "no_singular", False):
        kwargs["with_singular"] = False
    return JobConfig(**kwargs)


def cmd_surface(args) -> int:
    cfg = _job_config(args)
    mesh = build_mesh(cfg)
    path = export_mesh(mesh, cfg.out, cfg.fmt)
    print(f"wrote {path}: {len(mesh.vertices)} vertices, "
          f"{len(mesh.triangles)} triangles, "
          f"{len(mesh.polylines)} polylines, {len(mesh.markers)} markers")
    return 0


def cmd_singular_locus(args) -> int:
    cfg_file = read_config(args.config) if args.config else {}
    case_text = _merged(args, "case", cfg_file, None)
    if case_text is None:
        raise SystemExit("error: --case is required")
    tag, n = parse_case(case_text)
    e = _exponents(tag, n or 3)
    tol = _merged(args, "tol_classify", cfg_file, 1e-8, float)
    curve = sg.trace_singular_curve(e)
    if not len(curve.samples):
        print("no singular curve found in the default search box")
        return 1
    rows = ["x_re\tx_im\tclass\t|q|\tRe(Q3Rb2)\tIm(Q3Rb2)"]
    for x in curve.samples:
        spc = sg.classify_point(e, x, tol=tol)
        rows.append(f"{x.real:.12g}\t{x.imag:.12g}\t{spc.cls}\t"
                    f"{spc.abs_q:.12g}\t{spc.QRbar2.real:.12g}\t"
                    f"{spc.QRbar2.imag:.12g}")
    text = "\n".join(rows) + "\n"
    out = _merged(args, "out", cfg_file, None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
        print(f"wrote {out}: {len(curve.samples)} samples, "
              f"closed={curve.closed}")
    else:
        sys.stdout.write(text)
    for spc in sg.find_swallowtails(e, curve):
        print(f"swallowtail at x = {spc.x.real:.12g} "
              f"{spc.x.imag:+.12g}i")
    return 0


def cmd_selfcheck(args) -> int:
    from . import selfcheck as sc
    results = sc.run_all(quick=args.quick)
    text = sc.report(results)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0 if all(r.passed for r in results) else 1


def cmd_tiles(args) -> int:
    cfg_file = read_config(args.config) if args.config else {}
    case_text = _merged(args, "case", cfg_file, None)
    if case_text is None:
        raise SystemExit("error: --case is required")
    tag, n = parse_case(case_text)
    ts = tile_parameter_domain(tag, n, max_count=args.tiles)
    print(f"{len(ts.elements)} elements (complete={ts.complete})")
    for g, word in ts.elements:
        label = word if word else "(identity)"
        m = g.matrix
        print(f"{label}\t[[{m[0, 0]:.6g}, {m[0, 1]:.6g}], "
              f"[{m[1, 0]:.6g}, {m[1, 1]:.6g}]]")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"surface": cmd_surface,
                "singular-locus": cmd_singular_locus,
                "selfcheck": cmd_selfcheck,
                "tiles": cmd_tiles}
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
