"""Command-line front end: ``tfpm <subcommand> [options]``.

Exit status: 0 on success, 1 when a verification fails (or a fiber exceeds
the cap), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import acceptance, exact, fiber, holes, markov, model, notation, tfp

log = logging.getLogger("tfpmarkov")

FORMATS = ("4ti2", "tensor", "tableau")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    model: str
    format: str
    maxdeg: int | None
    cap: int
    out: Path
    expensive: bool
    threads: int | None
    trace: bool
    args: argparse.Namespace

    def __post_init__(self):
        if self.maxdeg is not None and self.maxdeg < 1:
            raise UsageError("--maxdeg must be at least 1")
        if self.cap < 1:
            raise UsageError("--cap must be at least 1")


# -- helpers --------------------------------------------------------------------------

def load_design(spec: str) -> model.DesignMatrix:
    if spec.startswith("file:"):
        path = Path(spec[5:])
        if not path.exists():
            raise UsageError(f"no such model file: {path}")
        facets = []
        for line in path.read_text().splitlines():
            line = line.split("#")[0].strip()
            if line:
                facets.append(tuple(int(x) for x in line.replace(",", " ").split()))
        if not facets:
            raise UsageError(f"{path} lists no facets")
        return model.design_matrix(model.build_complex(facets))
    try:
        return model.named_design(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def model_tag(spec: str) -> str:
    if spec.startswith("file:"):
        return Path(spec[5:]).stem
    return spec.replace(":", "").replace("-", "").replace(",", "")


def format_moves(moves, fmt: str) -> str:
    ms = moves if isinstance(moves, markov.MoveSet) else markov.MoveSet(moves)
    if fmt == "4ti2":
        return exact.format_matrix(ms.array().tolist(), ms.dim)
    if fmt == "tensor":
        return "".join(notation.format_tensor(m.vector) + "\n" for m in ms)
    return "".join(str(notation.to_tableau(m.vector)) + "\n" for m in ms)


def write_moves(cfg: RunConfig, stem: str, moves) -> Path:
    ext = {"4ti2": ".mar", "tensor": ".tensor", "tableau": ".tableau"}[cfg.format]
    path = cfg.out / (stem + ext)
    path.write_text(format_moves(moves, cfg.format))
    return path


def parse_move(text: str, k: int) -> np.ndarray:
    text = text.strip()
    if text.startswith("["):
        v = notation.from_tableau(notation.parse_tableau(text), k)
    else:
        v = np.array([int(x) for x in text.replace(",", " ").split()], dtype=np.int64)
    if len(v) != 1 << k:
        raise UsageError(f"expected {1 << k} entries, got {len(v)}")
    return v


# -- subcommands ---------------------------------------------------------------------

def cmd_model(cfg: RunConfig) -> int:
    B = load_design(cfg.model)
    path = cfg.out / f"{model_tag(cfg.model)}.mat"
    exact.write_matrix(path, B.matrix.tolist(), B.matrix.shape[1])
    print(f"{B.matrix.shape[0]}x{B.matrix.shape[1]} design matrix, rank {exact.rank(B.matrix.tolist())} -> {path}")
    return 0


def cmd_kernel(cfg: RunConfig) -> int:
    B = load_design(cfg.model)
    K = exact.kernel_lattice(B.matrix, B.matrix.shape[1])
    path = cfg.out / f"{model_tag(cfg.model)}.lat"
    exact.write_matrix(path, K.matrix(), B.matrix.shape[1])
    print(f"kernel lattice of rank {K.rank} -> {path}")
    return 0


def cmd_markov(cfg: RunConfig) -> int:
    B = load_design(cfg.model)
    t0 = time.time()
    G = markov.markov_basis(B, minimal=not cfg.args.no_minimize, trace=cfg.trace)
    path = write_moves(cfg, model_tag(cfg.model), G)
    print(f"{len(G)} moves, degrees {markov.degree_stats(G)} ({time.time() - t0:.1f}s) -> {path}")
    return 0


def cmd_holes(cfg: RunConfig) -> int:
    B = load_design(cfg.model)
    ctx = holes.HoleContext(B)
    hs = holes.fundamental_holes(B, ctx)
    lines = [f"fundamental holes: {len(hs)}"]
    for k, h in enumerate(hs):
        lines.append(f"h{k + 1} = {' '.join(map(str, h.vector))}")
        lines.append(f"    {holes.summary(h.vector, B)}")
    lines.append("identities:")
    k = len(B.states.arities)
    seen = set()
    for h in hs:
        for name, cert in h.witness_identities:
            if name in seen:
                continue
            seen.add(name)
            cols = [notation.row_string(i, k)
                    for i, c in enumerate(cert) for _ in range(c)]
            ok = np.array_equal(B.matrix @ np.array(cert), _hole_sum(hs, name))
            lines.append(f"  {name} = B*[{' '.join(cols)}]  {'verified' if ok else 'FAILED'}")
    status = 0
    if hs:
        fams = holes.hole_families(B, ctx)
        lines.append("families:")
        for j, f in enumerate(fams):
            dirs = " ".join(notation.row_string(i, k) for i in f.directions)
            lines.append(f"  family {j + 1}: base h{j + 1}, directions [{dirs}]")
            lines.append(f"    functional {' '.join(map(str, f.separating_functional))}")
        bound = cfg.maxdeg or 3
        rep = holes.verify_separation(B, fams, bound=bound, ctx=ctx)
        lines.append(f"structure check up to |lambda| <= {bound}: {'passed' if rep.passed else 'FAILED'}")
        for name, ok, detail in rep.checks:
            lines.append(f"  [{'ok' if ok else 'FAIL'}] {name} {detail}".rstrip())
        status = 0 if rep.passed else 1
    text = "\n".join(lines) + "\n"
    (cfg.out / f"{model_tag(cfg.model)}.holes").write_text(text)
    print(text, end="")
    return status


def _hole_sum(hs, name: str) -> np.ndarray:
    a, b = name.split("+")
    return np.asarray(hs[int(a[1:]) - 1].vector) + np.asarray(hs[int(b[1:]) - 1].vector)


def cmd_pf_basis(cfg: RunConfig) -> int:
    sys_ = tfp.projected_fiber_system()
    pf = tfp.pf_markov_basis(sys_)
    exact.write_matrix(cfg.out / "pf_system.mat", sys_.D_prime.tolist(), 4)
    path = write_moves(cfg, "pf_basis", pf)
    print("inequalities D' u >= c' in u = (y000, y001, y010, y100):")
    for row in sys_.D_prime:
        print("  " + " ".join(f"{x:3d}" for x in row))
    print(f"{len(pf)} moves, degrees {markov.degree_stats(pf)}, "
          f"shape classes {[len(o) for o in tfp.pf_orbit_decomposition()]} -> {path}")
    for m in pf:
        print("  " + notation.format_cube(m.vector).replace("\n", " | "))
    return 0


def cmd_lift(cfg: RunConfig) -> int:
    g = parse_move(cfg.args.g, 3)
    try:
        L = tfp.lifts(g)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    tag = "".join({1: "p", -1: "m", 0: "0"}[int(x)] if abs(x) <= 1 else str(int(x)) for x in g)
    path = write_moves(cfg, f"lifts_{tag}", [l.vector for l in L])
    print(f"{len(L)} lifts of {notation.to_tableau(g)} -> {path}")
    for l in L:
        print(f"  deg {l.degree}: {notation.to_tableau(l.vector)}")
    return 0


def cmd_assemble(cfg: RunConfig) -> int:
    N = cfg.args.N
    asm = tfp.assemble_markov_basis(N, maxdeg=cfg.maxdeg)
    path = write_moves(cfg, f"k3n{N}", asm.basis)
    print(f"K_{{3,{N}}}: {len(asm.quadratics)} swaps, {len(asm.glues)} glues, {len(asm.kernel)} kernel lifts; "
          f"minimal: {len(asm.basis)} moves, degrees {markov.degree_stats(asm.basis)} -> {path}")
    if cfg.trace and N >= 2:
        Q = tfp.quadratic_moves(N)
        for m in asm.constant_kernel:
            if m.degree != 6:
                continue
            tr = tfp.reduce_by_quadratics(m.vector, Q)
            print(f"reduction of {notation.to_tableau(m.vector)} in {tr.steps} steps:")
            for s in tr.states:
                rows = [notation.row_string(i, 3 + N) for i in np.flatnonzero(s) for _ in range(s[i])]
                print("  [" + "; ".join(rows) + "]")
            break
    return 0


def _assembled(cfg: RunConfig, N: int) -> markov.MoveSet:
    path = cfg.out / f"k3n{N}.mar"
    if path.exists():
        return markov.read_moves(path)
    return tfp.assemble_markov_basis(N).basis


def cmd_verify(cfg: RunConfig) -> int:
    N = cfg.args.N
    B = model.named_design(f"k3n:{N}")
    G = _assembled(cfg, N)
    maxdeg = cfg.maxdeg or 4
    rep = fiber.markov_degree_check(B, G.array(), maxdeg, cfg.cap)
    counts = ", ".join(f"{d}:{c}" for d, c in rep.fibers_checked.items())
    if rep.passed:
        print(f"connected: all fibers of degree <= {maxdeg} ({counts}) [{rep.seconds:.1f}s]")
        return 0
    print(f"DISCONNECTED at degree {rep.failed_degree}: margin {rep.witness_margin.tolist()}")
    for t in rep.witness:
        print("  " + " ".join(map(str, t.tolist())))
    return 1


def cmd_degrees(cfg: RunConfig) -> int:
    N = cfg.args.N
    B = model.named_design(f"k3n:{N}")
    maxdeg = cfg.maxdeg or 8
    if N >= 3 and not cfg.expensive:
        raise UsageError("N >= 3 needs --expensive")
    if N >= 3 and not cfg.args.own:
        for line in acceptance.n3_degree(cfg.cap) if N == 3 else ():
            print(line)
        return 0
    G = markov.markov_basis(B, trace=cfg.trace)
    d, reps = fiber.essential_degree(B, G.array(), maxdeg, cfg.cap)
    print(d)
    return 0 if d else 1


def cmd_repro(cfg: RunConfig) -> int:
    from . import report
    only = set(cfg.args.only) if cfg.args.only else None
    results = acceptance.run_all(expensive=cfg.expensive, only=only)
    for r in results:
        print(r.line())
    table = report.write_table(cfg.out / "repro.tsv", results)
    figs = report.write_figures(cfg.out)
    print(table, end="")
    print("files: " + ", ".join(str(p) for p in [cfg.out / "repro.tsv", *figs]))
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {
    "model": cmd_model, "kernel": cmd_kernel, "markov": cmd_markov, "holes": cmd_holes,
    "pf-basis": cmd_pf_basis, "lift": cmd_lift, "assemble": cmd_assemble, "verify": cmd_verify,
    "degrees": cmd_degrees, "repro": cmd_repro,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", default="k4tilde", help="k3n:N, three-star, k4tilde or file:PATH (facet per line)")
    common.add_argument("--format", choices=FORMATS, default="4ti2")
    common.add_argument("--maxdeg", type=int)
    common.add_argument("--cap", type=int, default=fiber.DEFAULT_CAP, help="largest fiber to enumerate")
    common.add_argument("--expensive", action="store_true", help="allow runs that take hours")
    common.add_argument("--out", type=Path, default=None, help="output directory (default $TFPM_OUT or ./tfpm-out)")
    common.add_argument("--threads", type=int)
    common.add_argument("--trace", action="store_true")
    p = argparse.ArgumentParser(prog="tfpm", description="Markov bases of K_{3,N} by toric fiber products")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("model", "kernel", "holes", "pf-basis"):
        sub.add_parser(name, parents=[common])
    sub.add_parser("markov", parents=[common]).add_argument("--no-minimize", action="store_true")
    sub.add_parser("lift", parents=[common]).add_argument("g", help="8 entries or a tableau like '[000; 110] - [010; 100]'")
    for name in ("assemble", "verify"):
        sub.add_parser(name, parents=[common]).add_argument("N", type=int)
    d = sub.add_parser("degrees", parents=[common])
    d.add_argument("N", type=int)
    d.add_argument("--own", action="store_true", help="for N >= 3, run the full completion")
    sub.add_parser("repro", parents=[common]).add_argument("--only", type=int, nargs="*")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.trace else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        if getattr(args, "N", 1) < 1:
            raise UsageError("N must be at least 1")
        out = args.out or Path(os.environ.get("TFPM_OUT", "tfpm-out"))
        out.mkdir(parents=True, exist_ok=True)
        if args.threads:
            import numba
            numba.set_num_threads(min(args.threads, numba.config.NUMBA_NUM_THREADS))
        cfg = RunConfig(args.command, args.model, args.format, args.maxdeg, args.cap, out,
                        args.expensive, args.threads, args.trace, args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"tfpm: {exc}", file=sys.stderr)
        return 2
    except fiber.CapExceeded as exc:
        print(f"tfpm: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"tfpm: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
