"""Command-line front end: ``hookharm <verb> [flags]``.

Exit status is 0 on success, 2 when a verification is refuted and 1 on
usage or internal errors.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import cache, conjectures, harmonics, macdonald, paths
from .partitions import Diagram, Hook, hooks_of
from .symfunc import (SymFunc, TensorSF, render, render_tensor, symfunc_to_json,
                      tensor_to_json)

EXIT_OK, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _hook_arg(text: str) -> Hook:
    try:
        a, b = (int(x) for x in text.split(","))
        return Hook(a, b)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--hook expects a,b with a, b >= 0 ({e})")


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _cells_arg(text: str) -> Diagram:
    try:
        return Diagram(tuple(int(v) for v in c.split(",")) for c in text.split(";") if c.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--latex", action="store_true", help="TeX notation in text output")
    common.add_argument("--cache-dir", default=None,
                        help=f"disk cache directory (default: ${cache.ENV_VAR})")
    common.add_argument("--extended", action="store_true",
                        help="allow the expensive sizes (n=5 modules beyond k=2, n>=6)")
    common.add_argument("--seed", type=int, default=20240601)
    common.add_argument("--jobs", type=int, default=1)

    p = _Parser(prog="hookharm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    def sized(sp, sets=False):
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--hook", type=_hook_arg, default=None, help="a,b (default: every hook of size n)")
        if sets:
            sp.add_argument("--sets", type=int, default=2, help="number k of variable sets")

    sized(verb("nabla", "nabla of the hook Schur function s-hat"))
    sized(verb("shuffle", "LLT side of the hook shuffle formula"))
    sp = verb("llt", "vertical-strip LLT polynomial of a Dyck path")
    sp.add_argument("--path", type=_int_list, required=True, help="gamma, e.g. 2,1,0")
    sp.add_argument("--var", default="q")
    sized(verb("module", "graded dimensions of M_(a|b)"), sets=True)
    sp = verb("frobenius", "graded Frobenius characteristic of M_(a|b)")
    sized(sp, sets=True)
    sp.add_argument("--check-basis", action="store_true",
                    help="recompute the characteristic in a random basis (uses --seed)")
    sized(verb("s-rho", "Frobenius characteristic of S_(a|b)"), sets=True)
    sp = verb("garsia-haiman", "bigraded Frobenius characteristic of a diagram module")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--shape", type=_int_list)
    g.add_argument("--cells", type=_cells_arg, help="k,l;k,l;...")
    sp = verb("verify", "run a conjecture check")
    sp.add_argument("--conjecture", required=True, choices=conjectures.CONJECTURES)
    sized(sp)
    sp.add_argument("--d", type=int, default=None, help="length for the sigma check")
    sp.add_argument("--inject-fault", action="store_true",
                    help="perturb one multiplicity of each module first (test hook)")
    sp.add_argument("--log", default=None, help="write verdicts as JSON to this file")
    sized(verb("reconstruct", "rebuild the alternant of S_(a|b) from nabla data"))
    sized(verb("t-rho", "S_rho at 1 + q, expanded in elementary functions"))
    sp = verb("cache", "inspect or clear the disk cache")
    sp.add_argument("--clear", action="store_true")
    return p


# helpers ---------------------------------------------------------------------------------

def _hooks(args) -> list:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.hook is None:
        return hooks_of(args.n)
    if args.hook.n != args.n:
        raise UsageError(f"hook {args.hook} has size {args.hook.n}, not {args.n}")
    return [args.hook]


def _gate(args, n: int, k: int | None = None):
    big = n >= 6 or (n == 5 and k is not None and k > 2)
    if big and not args.extended:
        raise UsageError(f"n={n}" + (f", k={k}" if k else "") + " needs --extended")


def _emit(args, rows: list):
    """rows: list of (label, value) with value a SymFunc, TensorSF, dict or str."""
    if args.format == "json":
        out = []
        for label, v in rows:
            out.append({"label": label, "value": _json_value(v)})
        print(json.dumps(out if len(out) != 1 else out[0], indent=1, sort_keys=True))
        return
    for label, v in rows:
        print(f"{label} = {_text_value(v, args.latex)}")


def _json_value(v):
    if isinstance(v, TensorSF):
        return {"kind": "tensor", "inner": v.inner, "terms": tensor_to_json(v)}
    if isinstance(v, SymFunc):
        return {"kind": "symfunc", **symfunc_to_json(v)}
    return v


def _text_value(v, latex):
    if isinstance(v, TensorSF):
        return render_tensor(v, latex)
    if isinstance(v, SymFunc):
        return render(v, latex)
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _name(kind, h: Hook) -> str:
    return f"{kind}({h.a}|{h.b})"


# verbs -----------------------------------------------------------------------------------

def cmd_nabla(args):
    rows = []
    for h in _hooks(args):
        _gate(args, h.n)
        rows.append((_name("nabla", h), macdonald.nabla_shat_hook(h.a, h.b)))
    _emit(args, rows)
    return EXIT_OK


def cmd_shuffle(args):
    rows = []
    for h in _hooks(args):
        _gate(args, h.n)
        rows.append((_name("shuffle", h), paths.shuffle_rhs(h.n, h.a)))
    _emit(args, rows)
    return EXIT_OK


def cmd_llt(args):
    g = paths.DyckPath(args.path)
    _emit(args, [(f"LLT[{g}]", paths.llt(g, args.var))])
    return EXIT_OK


def cmd_module(args):
    rows = []
    for h in _hooks(args):
        _gate(args, h.n, args.sets)
        gb = harmonics.module_M(h.n, h.a, h.b, args.sets)
        dims = {",".join(map(str, d)): m for d, m in gb.dims().items()}
        rows.append((_name("dim M", h), {"total": gb.dim(), "graded": dims}))
    _emit(args, rows)
    return EXIT_OK


def cmd_frobenius(args):
    rows = []
    for h in _hooks(args):
        _gate(args, h.n, args.sets)
        F = harmonics.module_frobenius(h.n, h.a, h.b, args.sets)
        rows.append((_name("Frob M", h), F))
        if args.check_basis:
            gb = harmonics.module_M(h.n, h.a, h.b, args.sets)
            G = harmonics.frobenius_in_basis(gb, random.Random(args.seed))
            rows.append((_name("basis-independent", h), "yes" if G == F else "NO"))
            if G != F:
                _emit(args, rows)
                return EXIT_REFUTED
    _emit(args, rows)
    return EXIT_OK


def cmd_s_rho(args):
    rows = []
    for h in _hooks(args):
        _gate(args, h.n, args.sets)
        rows.append((_name("S", h), harmonics.s_rho(h.n, h.a, h.b, args.sets)))
    _emit(args, rows)
    return EXIT_OK


def cmd_garsia_haiman(args):
    d = Diagram.ferrers(args.shape) if args.shape else args.cells
    if len(d) >= 6 and not args.extended:
        raise UsageError(f"{len(d)} cells needs --extended")
    _emit(args, [("GH", harmonics.garsia_haiman(d))])
    return EXIT_OK


def _run_one(job):
    name, n, a, d, cache_dir = job
    if cache_dir:
        cache.set_cache_dir(cache_dir)
    return conjectures.run(name, n, a, d)


def _needs_extended(name: str, n: int) -> bool:
    module_side = name not in ("t0", "skew-symbolic")
    if name == "modules":
        return n >= 6
    if name == "reconstruct":
        return n >= 5
    return n >= 5 if module_side else n >= 7


def cmd_verify(args):
    hs = _hooks(args)
    if _needs_extended(args.conjecture, args.n) and not args.extended:
        raise UsageError(f"{args.conjecture} at n={args.n} needs --extended")
    single = args.hook.a if args.hook is not None else None
    verdicts = []
    if args.inject_fault:
        with _faults(args.conjecture, args.n, hs):
            verdicts = conjectures.run(args.conjecture, args.n, single, args.d)
    elif args.jobs > 1 and single is None and args.conjecture not in ("modules", "t0", "skew",
                                                                       "skew-symbolic", "observed"):
        jobs = [(args.conjecture, args.n, h.a, args.d, _cache_dir(args)) for h in hs]
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            for vs in ex.map(_run_one, jobs):
                verdicts.extend(vs)
    else:
        verdicts = conjectures.run(args.conjecture, args.n, single, args.d)
    if args.log:
        conjectures.write_log(verdicts, args.log)
    if args.format == "json":
        print(json.dumps([v.to_json() for v in verdicts], indent=1, sort_keys=True))
    else:
        for v in verdicts:
            print(v.line())
    return EXIT_REFUTED if any(v.status == conjectures.REFUTED for v in verdicts) else EXIT_OK


class _faults:
    """One default perturbation per hook of size n: on the nabla values for the
    checks that never read modules, on the modules otherwise."""

    def __init__(self, name, n, hs):
        self.items = []
        for h in hs:
            if name == "reconstruct":
                if h.a < 1:
                    continue
                delta = conjectures.default_fault(n, h.a, inner=(1,) * n)
            elif name == "sigma":
                delta = conjectures.default_fault(n, h.a, outer_len=max(n - 2, 0))
            else:
                delta = conjectures.default_fault(n, h.a)
            if name in ("t0", "skew-symbolic"):
                key = ("N", h.a, h.b)
            else:
                key = ("S", n, h.a, h.b)
            self.items.append(conjectures.inject_fault(*key, delta=delta))

    def __enter__(self):
        for it in self.items:
            it.__enter__()

    def __exit__(self, *exc):
        for it in reversed(self.items):
            it.__exit__(*exc)


def cmd_reconstruct(args):
    rows = []
    status = EXIT_OK
    for h in _hooks(args):
        if h.a < 1:
            raise UsageError("reconstruction needs a >= 1")
        compare = h.n <= 4 or (args.extended and h.n == 5)
        A, v = conjectures.reconstruct_alternant(h.n, h.a, compare=compare)
        rows.append((_name("A", h), A))
        rows.append((_name("check", h), v.status))
        if v.status == conjectures.REFUTED:
            status = EXIT_REFUTED
    _emit(args, rows)
    return status


def cmd_t_rho(args):
    rows = []
    for h in _hooks(args):
        _gate(args, h.n, conjectures.full_k(h.n))
        rows.append((_name("T", h), conjectures.t_rho(h.n, h.a)))
    _emit(args, rows)
    return EXIT_OK


def cmd_cache(args):
    c = cache.active_cache()
    if c is None:
        raise UsageError(f"no cache directory (use --cache-dir or ${cache.ENV_VAR})")
    if args.clear:
        _emit(args, [("removed", c.clear())])
    else:
        _emit(args, [("cache", {"directory": str(c.dir), "entries": len(c.entries()),
                                "code_version": cache.code_version()})])
    return EXIT_OK


VERBS = {
    "nabla": cmd_nabla, "shuffle": cmd_shuffle, "llt": cmd_llt, "module": cmd_module,
    "frobenius": cmd_frobenius, "s-rho": cmd_s_rho, "garsia-haiman": cmd_garsia_haiman,
    "verify": cmd_verify, "reconstruct": cmd_reconstruct, "t-rho": cmd_t_rho, "cache": cmd_cache,
}


def _cache_dir(args):
    return args.cache_dir or os.environ.get(cache.ENV_VAR)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        if args.cache_dir:
            cache.set_cache_dir(args.cache_dir)
        return VERBS[args.verb](args)
    except UsageError as e:
        print(f"hookharm: error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as e:  # noqa: BLE001 - reported as an internal error
        print(f"hookharm: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
