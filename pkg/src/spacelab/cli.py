"""Command line entry point.

Every subcommand prints its primary result to stdout (a bare number for
counts, JSON or CSV for everything else) and, when ``--out`` is given,
writes the same data as files next to a ``manifest.json`` recording the
tool version, spec digests, and resolved parameters.  Identical
invocations produce byte-identical outputs except for the manifest's
isolated timestamp field.

Exit codes: 0 success, 2 validation error (including usage errors),
3 search budget exhausted.  Errors are emitted as JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import corpus as corpus_mod
from . import detect, dynamics, experiments, language, reports
from .errors import BudgetError, SpacelabError, SpecError, ValidationError
from .psets import PSetSpec, build_pset, density_report, parse_spec

ENV_BUDGET = "SPACELAB_BUDGET"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _print_error("usage", message)
        raise SystemExit(2)


def _print_error(kind: str, message: str, **extra) -> None:
    payload = {"error": {"type": kind, "message": message, **extra}}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)


def _load_spec(text: str) -> PSetSpec:
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as err:
            raise SpecError(f"inline spec is not valid JSON: {err}") from None
    else:
        if not os.path.exists(text):
            raise ValidationError(f"spec file not found: {text}")
        with open(text, "r", encoding="utf-8") as fh:
            try:
                obj = json.load(fh)
            except json.JSONDecodeError as err:
                raise SpecError(f"spec file is not valid JSON: {err}") from None
    spec = parse_spec(obj)
    spec.validate()
    return spec


def _int_list(text: str, what: str) -> list:
    try:
        values = [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise ValidationError(f"{what} must be comma-separated integers") from None
    if not values:
        raise ValidationError(f"{what} must be nonempty")
    return values


def _resolve_budget(value: Optional[int]) -> int:
    if value is not None:
        if value < 1:
            raise ValidationError("budget must be positive")
        return value
    env = os.environ.get(ENV_BUDGET)
    if env is not None:
        try:
            parsed = int(env)
        except ValueError:
            raise ValidationError(
                f"{ENV_BUDGET} must be an integer, got {env!r}") from None
        if parsed < 1:
            raise ValidationError(f"{ENV_BUDGET} must be positive")
        return parsed
    return language.DEFAULT_BUDGET


def _emit(args, stdout_text: str, files: dict, params: dict,
          digests: dict) -> None:
    if stdout_text:
        print(stdout_text, end="" if stdout_text.endswith("\n") else "\n")
    out_dir = getattr(args, "out", None)
    if out_dir:
        for name, text in files.items():
            reports.write_text(os.path.join(out_dir, name), text)
        manifest = reports.build_manifest(params, digests)
        reports.write_text(os.path.join(out_dir, "manifest.json"),
                           reports.json_text(manifest))


def _json_out(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _cmd_pset_density(args) -> int:
    spec = _load_spec(args.spec)
    view = build_pset(spec, args.horizon)
    grid = _int_list(args.window_grid, "--window-grid")
    report = density_report(view, grid, n0=args.n0)
    payload = reports.density_json(report)
    files = {
        "density.json": reports.json_text(payload),
        "prefix.csv": reports.density_prefix_csv(report),
        "banach.csv": reports.density_banach_csv(report),
    }
    if args.plot and args.out:
        xs = [n for n, _ in report.prefix_densities]
        ys = [float(d) for _, d in report.prefix_densities]
        files["density.svg"] = reports.svg_line_plot(
            [("prefix", xs, ys)], "prefix density", "n", "density")
    params = {"command": "pset density", "horizon": args.horizon,
              "n0": report.n0, "window_grid": grid}
    _emit(args, _json_out(payload), files, params, {"spec": view.spec_digest})
    return 0


def _witness_stdout(args, witness, view, kind: str, params: dict) -> int:
    if witness is None:
        payload = {"kind": kind, "result": "none", **params}
        _emit(args, _json_out(payload),
              {"witness.json": reports.json_text(payload)},
              {"command": f"detect {args.detect_cmd}", **params},
              {"spec": view.spec_digest})
        return 0
    obj = witness.to_json()
    text = _json_out(obj)
    if args.verify:
        echoed = detect.witness_from_json(json.loads(text))
        if not detect.verify_witness(echoed, view):
            raise ValidationError("witness failed re-verification")
        text += "\nverified"
    _emit(args, text, {"witness.json": reports.json_text(obj)},
          {"command": f"detect {args.detect_cmd}", **params},
          {"spec": view.spec_digest})
    return 0


def _cmd_detect_search(args) -> int:
    spec = _load_spec(args.spec)
    horizon = args.horizon if args.horizon else args.bound
    view = build_pset(spec, horizon)
    budget = _resolve_budget(args.budget)
    finders = {"delta": detect.find_delta_chain,
               "ip": detect.find_ip_generator,
               "ipip": detect.find_ip_ip_generator}
    witness = finders[args.detect_cmd](view, args.depth, args.bound,
                                       budget=budget)
    params = {"depth": args.depth, "bound": args.bound, "budget": budget,
              "horizon": horizon}
    kinds = {"delta": "delta_chain", "ip": "ip_generator",
             "ipip": "ip_ip_generator"}
    return _witness_stdout(args, witness, view, kinds[args.detect_cmd], params)


def _cmd_detect_syndetic(args) -> int:
    view = build_pset(_load_spec(args.spec), args.horizon)
    report = detect.syndetic_gap(view)
    if report is None:
        payload = {"result": "none", "reason": "set empty on horizon"}
    else:
        payload = {"interior_gap": report.interior_gap,
                   "censored_tail": report.censored_tail}
    _emit(args, _json_out(payload), {"syndetic.json": reports.json_text(payload)},
          {"command": "detect syndetic", "horizon": args.horizon},
          {"spec": view.spec_digest})
    return 0


def _cmd_detect_thick(args) -> int:
    view = build_pset(_load_spec(args.spec), args.horizon)
    payload = {"run": detect.thick_run(view)}
    _emit(args, _json_out(payload), {"thick.json": reports.json_text(payload)},
          {"command": "detect thick", "horizon": args.horizon},
          {"spec": view.spec_digest})
    return 0


def _cmd_detect_intersect(args) -> int:
    e_view = build_pset(_load_spec(args.spec), args.horizon)
    a_view = build_pset(_load_spec(args.other), args.horizon)
    witness = detect.intersective_refute(e_view, a_view)
    if witness is None:
        payload = {"kind": "intersective_hit", "result": "none",
                   "horizon": args.horizon}
        _emit(args, _json_out(payload),
              {"witness.json": reports.json_text(payload)},
              {"command": "detect intersect", "horizon": args.horizon},
              {"spec": e_view.spec_digest, "other": a_view.spec_digest})
        return 0
    obj = witness.to_json()
    text = _json_out(obj)
    if args.verify:
        echoed = detect.witness_from_json(json.loads(text))
        if not detect.verify_witness(echoed, e_view):
            raise ValidationError("witness failed re-verification")
        text += "\nverified"
    _emit(args, text, {"witness.json": reports.json_text(obj)},
          {"command": "detect intersect", "horizon": args.horizon},
          {"spec": e_view.spec_digest, "other": a_view.spec_digest})
    return 0


def _cmd_lang_count(args) -> int:
    horizon = args.horizon if args.horizon else max(args.n, 1)
    view = build_pset(_load_spec(args.spec), horizon)
    budget = _resolve_budget(args.budget)
    count = language.count_words(view, args.n, mode=args.mode, budget=budget)
    payload = {"n": args.n, "mode": args.mode, "count": count}
    _emit(args, str(count), {"count.json": reports.json_text(payload)},
          {"command": "lang count", "n": args.n, "mode": args.mode,
           "horizon": horizon, "budget": budget},
          {"spec": view.spec_digest})
    return 0


def _cmd_lang_entropy(args) -> int:
    grid = _int_list(args.n_grid, "--n-grid")
    horizon = args.horizon if args.horizon else max(grid)
    view = build_pset(_load_spec(args.spec), horizon)
    budget = _resolve_budget(args.budget)
    profile = language.entropy_profile(view, grid, mode=args.mode,
                                       budget=budget)
    csv = reports.profile_csv(profile)
    files = {"profile.csv": csv}
    if args.plot and args.out:
        xs = [r.n for r in profile.rows]
        files["profile.svg"] = reports.svg_line_plot(
            [("h_n", xs, [r.entropy for r in profile.rows]),
             ("omega/n", xs, [float(r.omega_over_n) for r in profile.rows])],
            "entropy profile", "n", "value")
    _emit(args, csv, files,
          {"command": "lang entropy", "n_grid": grid, "mode": args.mode,
           "horizon": horizon, "budget": budget},
          {"spec": view.spec_digest})
    return 0


def _cmd_lang_maxones(args) -> int:
    horizon = args.horizon if args.horizon else max(args.n, 1)
    view = build_pset(_load_spec(args.spec), horizon)
    budget = _resolve_budget(args.budget)
    omega, config = language.max_ones(view, args.n, budget=budget)
    payload = {"n": args.n, "omega": omega, "ones": list(config.ones),
               "word": config.word()}
    _emit(args, _json_out(payload), {"maxones.json": reports.json_text(payload)},
          {"command": "lang maxones", "n": args.n, "horizon": horizon,
           "budget": budget},
          {"spec": view.spec_digest})
    return 0


def _cmd_lang_greedy(args) -> int:
    view = build_pset(_load_spec(args.spec), args.horizon)
    config = language.greedy_point(view, args.horizon)
    payload = {"horizon": args.horizon, "ones": list(config.ones),
               "word": config.word()}
    _emit(args, _json_out(payload), {"greedy.json": reports.json_text(payload)},
          {"command": "lang greedy", "horizon": args.horizon},
          {"spec": view.spec_digest})
    return 0


def _cmd_lang_transitive(args) -> int:
    horizon = (args.horizon if args.horizon
               else 2 * args.word_len + args.gap_cap)
    view = build_pset(_load_spec(args.spec), horizon)
    report = language.transitive_gap_check(view, args.word_len, args.gap_cap)
    payload = {"word_len_cap": report.word_len_cap,
               "gap_cap": report.gap_cap,
               "total_pairs": report.total_pairs,
               "joinable_pairs": report.joinable_pairs,
               "least_failing": (list(report.least_failing)
                                 if report.least_failing else None)}
    _emit(args, _json_out(payload),
          {"transitive.json": reports.json_text(payload)},
          {"command": "lang transitive", "word_len": args.word_len,
           "gap_cap": args.gap_cap, "horizon": horizon},
          {"spec": view.spec_digest})
    return 0


def _cmd_dyn_fstat(args) -> int:
    view = build_pset(_load_spec(args.spec), args.horizon)
    budget = _resolve_budget(args.budget)
    x = dynamics.make_point(view, args.x, args.horizon, seed=args.seed,
                            budget=budget)
    y = dynamics.make_point(view, args.y, args.horizon, seed=args.seed,
                            budget=budget)
    grid = _int_list(args.n_grid, "--n-grid")
    report = dynamics.f_statistic(x, y, args.l, grid)
    csv = reports.fstat_csv(report)
    files = {"fstat.csv": csv}
    if args.plot and args.out:
        xs = [n for n, _ in report.values]
        files["fstat.svg"] = reports.svg_line_plot(
            [("F_n", xs, [float(f) for _, f in report.values])],
            "F statistic", "n", "F_n")
    _emit(args, csv, files,
          {"command": "dyn fstat", "l": args.l, "n_grid": grid,
           "x": args.x, "y": args.y, "horizon": args.horizon,
           "budget": budget},
          {"spec": view.spec_digest})
    return 0


def _cmd_dyn_proximal(args) -> int:
    view = build_pset(_load_spec(args.spec), args.horizon)
    budget = _resolve_budget(args.budget)
    x = dynamics.make_point(view, args.x, args.horizon, seed=args.seed,
                            budget=budget)
    y = dynamics.make_point(view, args.y, args.horizon, seed=args.seed,
                            budget=budget)
    m = dynamics.proximal_probe(x, y, args.block)
    payload = {"block": args.block, "m": m, "x": x.label, "y": y.label}
    _emit(args, _json_out(payload),
          {"proximal.json": reports.json_text(payload)},
          {"command": "dyn proximal", "block": args.block, "x": args.x,
           "y": args.y, "horizon": args.horizon, "budget": budget},
          {"spec": view.spec_digest})
    return 0


def _cmd_dyn_periodic(args) -> int:
    view = build_pset(_load_spec(args.spec), args.horizon)
    result = dynamics.periodic_point_check(view, args.k, args.horizon)
    if result.point is None:
        payload = {"k": args.k, "point": None,
                   "failing_multiple": result.failing_multiple}
    else:
        payload = {"k": args.k, "point": result.point.config.word(),
                   "admissible": result.point.admissible}
    _emit(args, _json_out(payload),
          {"periodic.json": reports.json_text(payload)},
          {"command": "dyn periodic", "k": args.k, "horizon": args.horizon},
          {"spec": view.spec_digest})
    return 0


def _experiment_files(report, plot: bool) -> dict:
    files = {f"{report.experiment}.json": reports.json_text(report.to_json())}
    table = report.observations.get("table")
    if table:
        files[f"{report.experiment}.csv"] = reports.csv_text(
            table["columns"], table["rows"])
        if plot and "h_n" in table["columns"] and "n" in table["columns"]:
            n_idx = table["columns"].index("n")
            h_idx = table["columns"].index("h_n")
            xs = [float(row[n_idx]) for row in table["rows"]]
            ys = [float(row[h_idx]) for row in table["rows"]]
            files[f"{report.experiment}.svg"] = reports.svg_line_plot(
                [("h_n", xs, ys)], report.experiment, "n", "h_n")
    return files


def _parse_param(text: str):
    if "=" not in text:
        raise ValidationError(f"--param expects KEY=VALUE, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def _cmd_exp_run(args) -> int:
    budget = _resolve_budget(args.budget)
    overrides = dict(_parse_param(p) for p in args.param or [])
    report = experiments.run_experiment(args.experiment_id,
                                        overrides or None, budget=budget)
    files = _experiment_files(report, args.plot)
    _emit(args, _json_out(report.to_json()), files,
          {"command": "exp run", "experiment": args.experiment_id,
           "budget": budget, "overrides": overrides},
          {})
    return 0


def _cmd_corpus_run_all(args) -> int:
    budget = _resolve_budget(args.budget)
    all_reports = experiments.run_all(budget=budget)
    files = {}
    verdicts = {}
    for report in all_reports:
        files.update(_experiment_files(report, args.plot))
        verdicts[report.experiment] = report.verdict
    index = {"corpus_version": corpus_mod.CORPUS_VERSION,
             "verdicts": verdicts}
    files["index.json"] = reports.json_text(index)
    digests = {name: spec.digest() for name, spec in corpus_mod.iter_corpus()}
    _emit(args, _json_out(index), files,
          {"command": "corpus run-all", "budget": budget,
           "experiments": list(experiments.EXPERIMENT_IDS)},
          digests)
    return 0


def _add_out(parser, plot: bool = False) -> None:
    parser.add_argument("--out", help="directory for output files")
    if plot:
        parser.add_argument("--plot", action="store_true",
                            help="also write SVG plots (requires --out)")


def _add_spec(parser) -> None:
    parser.add_argument("--spec", required=True,
                        help="path to a spec JSON file, or inline JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spacelab",
                     description="spacing shift laboratory")
    top = parser.add_subparsers(dest="group", required=True)

    pset = top.add_parser("pset", help="set construction and densities")
    pset_sub = pset.add_subparsers(dest="pset_cmd", required=True)
    dens = pset_sub.add_parser("density", help="exact density report")
    _add_spec(dens)
    dens.add_argument("--horizon", type=int, required=True)
    dens.add_argument("--n0", type=int, default=None,
                      help="tail cutoff for lower/upper estimates")
    dens.add_argument("--window-grid", required=True,
                      help="comma-separated window lengths")
    _add_out(dens, plot=True)
    dens.set_defaults(func=_cmd_pset_density)

    det = top.add_parser("detect", help="structure witness searches")
    det_sub = det.add_subparsers(dest="detect_cmd", required=True)
    for name, help_text in (("delta", "difference chain"),
                            ("ip", "IP generator"),
                            ("ipip", "IP-IP generator")):
        sub = det_sub.add_parser(name, help=help_text)
        _add_spec(sub)
        sub.add_argument("--depth", type=int, required=True)
        sub.add_argument("--bound", type=int, required=True)
        sub.add_argument("--horizon", type=int, default=None,
                         help="view horizon; defaults to the bound")
        sub.add_argument("--budget", type=int, default=None)
        sub.add_argument("--verify", action="store_true",
                         help="re-check the emitted witness")
        _add_out(sub)
        sub.set_defaults(func=_cmd_detect_search)
    for name, func in (("syndetic", _cmd_detect_syndetic),
                       ("thick", _cmd_detect_thick)):
        sub = det_sub.add_parser(name)
        _add_spec(sub)
        sub.add_argument("--horizon", type=int, required=True)
        _add_out(sub)
        sub.set_defaults(func=func)
    inter = det_sub.add_parser("intersect", help="E vs A-A hit search")
    _add_spec(inter)
    inter.add_argument("--other", required=True,
                       help="spec for the set A (path or inline JSON)")
    inter.add_argument("--horizon", type=int, required=True)
    inter.add_argument("--verify", action="store_true")
    _add_out(inter)
    inter.set_defaults(func=_cmd_detect_intersect)

    lang = top.add_parser("lang", help="language enumeration")
    lang_sub = lang.add_subparsers(dest="lang_cmd", required=True)
    count = lang_sub.add_parser("count", help="exact word count")
    _add_spec(count)
    count.add_argument("--n", type=int, required=True)
    count.add_argument("--mode", choices=("naive", "optimized"),
                       default="optimized")
    count.add_argument("--horizon", type=int, default=None)
    count.add_argument("--budget", type=int, default=None)
    _add_out(count)
    count.set_defaults(func=_cmd_lang_count)
    entropy = lang_sub.add_parser("entropy", help="entropy profile CSV")
    _add_spec(entropy)
    entropy.add_argument("--n-grid", required=True)
    entropy.add_argument("--mode", choices=("naive", "optimized"),
                         default="optimized")
    entropy.add_argument("--horizon", type=int, default=None)
    entropy.add_argument("--budget", type=int, default=None)
    _add_out(entropy, plot=True)
    entropy.set_defaults(func=_cmd_lang_entropy)
    maxones = lang_sub.add_parser("maxones", help="max ones and witness")
    _add_spec(maxones)
    maxones.add_argument("--n", type=int, required=True)
    maxones.add_argument("--horizon", type=int, default=None)
    maxones.add_argument("--budget", type=int, default=None)
    _add_out(maxones)
    maxones.set_defaults(func=_cmd_lang_maxones)
    greedy = lang_sub.add_parser("greedy", help="greedy point")
    _add_spec(greedy)
    greedy.add_argument("--horizon", type=int, required=True)
    _add_out(greedy)
    greedy.set_defaults(func=_cmd_lang_greedy)
    trans = lang_sub.add_parser("transitive", help="zero-gap joinability")
    _add_spec(trans)
    trans.add_argument("--word-len", type=int, required=True)
    trans.add_argument("--gap-cap", type=int, required=True)
    trans.add_argument("--horizon", type=int, default=None)
    _add_out(trans)
    trans.set_defaults(func=_cmd_lang_transitive)

    dyn = top.add_parser("dyn", help="orbit probes")
    dyn_sub = dyn.add_subparsers(dest="dyn_cmd", required=True)
    fstat = dyn_sub.add_parser("fstat", help="agreement statistic")
    _add_spec(fstat)
    fstat.add_argument("--horizon", type=int, required=True)
    fstat.add_argument("--x", required=True, help="point generator name")
    fstat.add_argument("--y", required=True, help="point generator name")
    fstat.add_argument("--l", type=int, default=0)
    fstat.add_argument("--n-grid", required=True)
    fstat.add_argument("--seed", type=int, default=None)
    fstat.add_argument("--budget", type=int, default=None)
    _add_out(fstat, plot=True)
    fstat.set_defaults(func=_cmd_dyn_fstat)
    prox = dyn_sub.add_parser("proximal", help="agreement window probe")
    _add_spec(prox)
    prox.add_argument("--horizon", type=int, required=True)
    prox.add_argument("--x", required=True)
    prox.add_argument("--y", required=True)
    prox.add_argument("--block", type=int, required=True)
    prox.add_argument("--seed", type=int, default=None)
    prox.add_argument("--budget", type=int, default=None)
    _add_out(prox)
    prox.set_defaults(func=_cmd_dyn_proximal)
    peri = dyn_sub.add_parser("periodic", help="period-k point check")
    _add_spec(peri)
    peri.add_argument("--k", type=int, required=True)
    peri.add_argument("--horizon", type=int, required=True)
    _add_out(peri)
    peri.set_defaults(func=_cmd_dyn_periodic)

    exp = top.add_parser("exp", help="named experiments")
    exp_sub = exp.add_subparsers(dest="exp_cmd", required=True)
    run = exp_sub.add_parser("run", help="run one experiment")
    run.add_argument("experiment_id",
                     choices=sorted(experiments.EXPERIMENT_IDS))
    run.add_argument("--budget", type=int, default=None)
    run.add_argument("--param", action="append",
                     help="override one parameter, KEY=VALUE (JSON value)")
    _add_out(run, plot=True)
    run.set_defaults(func=_cmd_exp_run)

    corp = top.add_parser("corpus", help="shipped corpus operations")
    corp_sub = corp.add_subparsers(dest="corpus_cmd", required=True)
    run_all = corp_sub.add_parser("run-all",
                                  help="run every experiment on the corpus")
    run_all.add_argument("--out", required=True,
                         help="report directory")
    run_all.add_argument("--plot", action="store_true")
    run_all.add_argument("--budget", type=int, default=None)
    run_all.set_defaults(func=_cmd_corpus_run_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0)
    try:
        return args.func(args)
    except BudgetError as err:
        _print_error("budget", str(err), nodes=err.nodes)
        return 3
    except SpecError as err:
        _print_error("spec", str(err), path=err.path)
        return 2
    except ValidationError as err:
        _print_error("validation", str(err))
        return 2
    except SpacelabError as err:
        _print_error("error", str(err))
        return 2


if __name__ == "__main__":
    sys.exit(main())
