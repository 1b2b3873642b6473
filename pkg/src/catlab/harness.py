"""Experiment orchestration: JSON configs, sweeps, deterministic CSV output.

A config names one experiment kind and its parameters; running it expands
the swept axis into independent points, computes each point, and merges the
rows in config order, so the emitted CSVs are byte-identical across runs
and worker counts.  Every CSV starts with a `# config:` comment echoing the
normalized config, then a header row; floats are written with 15
significant digits and LF line endings.  A JSON summary records the config,
the artifact version, the output files, per-point errors and the wall time.

Plot emission writes one gnuplot script per result set, referencing only
the emitted CSVs (plus small derived numeric tables where a string-keyed
CSV cannot be plotted directly); no plotting library is ever imported.
"""

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import classical, histories, numerics
from ._version import __version__
from .errors import BudgetExceeded, CatlabError, ConfigInvalid
from .multiparticle import (MAX_DENSE_DIM, MultiParams, multiparticle_histories,
                            two_packet_state, gaussian_packet, product_state,
                            von_neumann_run)
from .quantum import CatParams, build_cat_unitary, build_projectors

KINDS = ("classical", "single-cat-entropy", "sector-matrix", "mass-sweep",
         "kappa-sweep", "von-neumann", "partial-entropy", "combined-limit")

DEFAULT_WORD_BUDGET = histories.WORD_BUDGET
DEFAULT_MEMORY_MB = 8192


def _fmt(x):
    """One float as text: 15 significant digits, '.' decimal separator."""
    return f"{float(x):.15g}"


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return _fmt(x)


def _expand_range(value, name):
    """An axis value: a number, a list, or a string "lo..hi" (inclusive)."""
    if isinstance(value, bool):
        raise ConfigInvalid(f"{name} must be numeric, not boolean")
    if isinstance(value, (int, float)):
        return [value]
    if isinstance(value, str):
        parts = value.split("..")
        if len(parts) != 2:
            raise ConfigInvalid(f"{name}: range strings look like 'lo..hi'")
        try:
            lo, hi = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigInvalid(f"{name}: range bounds must be integers")
        if hi < lo:
            raise ConfigInvalid(f"{name}: empty range {value!r}")
        return list(range(lo, hi + 1))
    if isinstance(value, list) and value:
        return list(value)
    raise ConfigInvalid(f"{name} must be a number, a nonempty list or 'lo..hi'")


def _require(params, key, kind):
    if key not in params:
        raise ConfigInvalid(f"kind {kind!r} requires parameter {key!r}")
    return params[key]


def _int_param(params, key, kind, default=None):
    if key not in params:
        if default is None:
            raise ConfigInvalid(f"kind {kind!r} requires parameter {key!r}")
        return default
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise ConfigInvalid(f"{key} must be an integer")
    return int(v)


def _sector_param(params):
    sec = params.get("sector")
    if sec is None:
        return None
    if (not isinstance(sec, (list, tuple)) or len(sec) != 2
            or any(isinstance(s, bool) or not isinstance(s, int) for s in sec)):
        raise ConfigInvalid("sector must be a pair of symbol integers")
    return (int(sec[0]), int(sec[1]))


def _kappa_values(params, q_values, kind):
    """Kappa axis: a number, a list, or {"scale": c} meaning c * 2^q."""
    kappa = _require(params, "kappa", kind)
    if isinstance(kappa, dict):
        if set(kappa) != {"scale"}:
            raise ConfigInvalid("kappa rule must be {'scale': coefficient}")
        c = float(kappa["scale"])
        return [c * 2 ** q for q in q_values]
    values = _expand_range(kappa, "kappa")
    return [float(v) for v in values]


@dataclass(frozen=True)
class ExperimentConfig:
    """One declarative experiment: kind, parameters, output prefix, budgets."""

    kind: str
    parameters: dict
    prefix: str
    word_budget: int = DEFAULT_WORD_BUDGET
    memory_mb: int = DEFAULT_MEMORY_MB
    workers: int = 1

    @classmethod
    def from_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ConfigInvalid("config must be a JSON object")
        unknown = set(doc) - {"kind", "parameters", "prefix", "budget", "workers"}
        if unknown:
            raise ConfigInvalid(f"unknown config fields: {sorted(unknown)}")
        kind = doc.get("kind")
        if kind not in KINDS:
            raise ConfigInvalid(f"kind must be one of {', '.join(KINDS)}")
        params = doc.get("parameters")
        if not isinstance(params, dict):
            raise ConfigInvalid("parameters must be an object")
        budget = doc.get("budget", {})
        if not isinstance(budget, dict) or set(budget) - {"words", "memory_mb"}:
            raise ConfigInvalid("budget takes only 'words' and 'memory_mb'")
        workers = doc.get("workers", 1)
        if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
            raise ConfigInvalid("workers must be a positive integer")
        return cls(kind=kind, parameters=dict(params),
                   prefix=str(doc.get("prefix", kind)),
                   word_budget=int(budget.get("words", DEFAULT_WORD_BUDGET)),
                   memory_mb=int(budget.get("memory_mb", DEFAULT_MEMORY_MB)),
                   workers=workers)

    @classmethod
    def from_file(cls, path):
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigInvalid(f"invalid JSON in {path}: {exc}")
        return cls.from_dict(doc)

    def echo(self):
        """Normalized one-line form embedded in every output file."""
        doc = {"kind": self.kind, "prefix": self.prefix,
               "parameters": self.parameters,
               "budget": {"words": self.word_budget, "memory_mb": self.memory_mb}}
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    @property
    def memory_budget(self):
        return self.memory_mb << 20


@dataclass
class ResultSet:
    """What one run produced: files, per-point failures, provenance."""

    config: ExperimentConfig
    out_dir: str
    outputs: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    version: str = __version__
    timestamp: str = ""
    wall_time_s: float = 0.0

    def summary_path(self):
        return os.path.join(self.out_dir, f"{self.config.prefix}_summary.json")


# ---------------------------------------------------------------------------
# Point expansion and validation (no computation happens here)
# ---------------------------------------------------------------------------

def _validate_classical(cfg):
    par = cfg.parameters
    p = _int_param(par, "p", cfg.kind)
    grid = _int_param(par, "grid", cfg.kind, classical.DEFAULT_GRID)
    points = []
    for n in _expand_range(_require(par, "n", cfg.kind), "n"):
        n = int(n)
        if n < 1:
            raise ConfigInvalid("word length n must be >= 1")
        if p < 1:
            raise ConfigInvalid("partition exponent p must be >= 1")
        points.append({"p": p, "n": n, "grid": grid})
    return points


def _validate_single_entropy(cfg):
    par = cfg.parameters
    p = _int_param(par, "p", cfg.kind)
    grid = _int_param(par, "grid", cfg.kind, classical.DEFAULT_GRID)
    n_values = [int(n) for n in _expand_range(_require(par, "n", cfg.kind), "n")]
    points = []
    for q in _expand_range(_require(par, "q", cfg.kind), "q"):
        try:
            CatParams(int(q), p)
        except ValueError as exc:
            raise ConfigInvalid(str(exc))
        points.append({"q": int(q), "p": p, "n_values": n_values, "grid": grid})
    return points


def _validate_sector_matrix(cfg):
    par = cfg.parameters
    q = _int_param(par, "q", cfg.kind)
    p = _int_param(par, "p", cfg.kind)
    n = _int_param(par, "n", cfg.kind)
    grid = _int_param(par, "grid", cfg.kind, classical.DEFAULT_GRID)
    sector = _sector_param(par)
    if sector is None:
        raise ConfigInvalid("sector-matrix requires a sector")
    try:
        CatParams(q, p)
    except ValueError as exc:
        raise ConfigInvalid(str(exc))
    if not all(0 <= s < 2 ** p for s in sector):
        raise ConfigInvalid("sector symbols outside the alphabet")
    if (2 ** p) ** max(n - 2, 0) > cfg.word_budget:
        raise ConfigInvalid("sector word count exceeds the word budget")
    return [{"q": q, "p": p, "n": n, "grid": grid, "sector": sector}]


def _validate_mass_sweep(cfg):
    par = cfg.parameters
    p = _int_param(par, "p", cfg.kind)
    n = _int_param(par, "n", cfg.kind)
    grid = _int_param(par, "grid", cfg.kind, classical.DEFAULT_GRID)
    sector = _sector_param(par)
    points = []
    for q in _expand_range(_require(par, "q", cfg.kind), "q"):
        try:
            CatParams(int(q), p)
        except ValueError as exc:
            raise ConfigInvalid(str(exc))
        points.append({"q": int(q), "p": p, "n": n, "grid": grid,
                       "sector": sector})
    return points


def _multi_params(point):
    try:
        return MultiParams(q=point["q"], r=point["r"], n_small=point["i"],
                           kappa=point["kappa"], p=point.get("p"))
    except ValueError as exc:
        raise ConfigInvalid(str(exc))


def _validate_kappa_sweep(cfg):
    par = cfg.parameters
    base = {"q": _int_param(par, "q", cfg.kind),
            "r": _int_param(par, "r", cfg.kind),
            "i": _int_param(par, "i", cfg.kind),
            "p": _int_param(par, "p", cfg.kind),
            "n": _int_param(par, "n", cfg.kind),
            "grid": _int_param(par, "grid", cfg.kind, classical.DEFAULT_GRID),
            "sector": _sector_param(par)}
    points = []
    for kappa in _kappa_values(par, [base["q"]] * 1, cfg.kind):
        point = dict(base, kappa=float(kappa))
        mp = _multi_params(point)
        if mp.dim > MAX_DENSE_DIM:
            raise ConfigInvalid(f"dense dimension {mp.dim} exceeds {MAX_DENSE_DIM}")
        points.append(point)
    return points


def _validate_von_neumann(cfg):
    par = cfg.parameters
    point = {"q": _int_param(par, "q", cfg.kind),
             "r": _int_param(par, "r", cfg.kind),
             "i": _int_param(par, "i", cfg.kind),
             "kappa": float(_require(par, "kappa", cfg.kind)),
             "steps": _int_param(par, "steps", cfg.kind),
             "cat_kick": bool(par.get("cat_kick", True)),
             "centers": par.get("centers", [0.25, 0.75]),
             "momentum": par.get("momentum"),
             "width": par.get("width"),
             "snapshots": [int(t) for t in par.get("snapshots", [])]}
    if point["steps"] < 0:
        raise ConfigInvalid("steps must be >= 0")
    if not isinstance(point["centers"], list) or not point["centers"]:
        raise ConfigInvalid("centers must be a nonempty list of positions")
    if any(t < 0 or t > point["steps"] for t in point["snapshots"]):
        raise ConfigInvalid("snapshot times must lie in 0..steps")
    mp = _multi_params(dict(point, p=None))
    if mp.dim > MAX_DENSE_DIM:
        raise ConfigInvalid(f"dense dimension {mp.dim} exceeds {MAX_DENSE_DIM}")
    return [point]


def _validate_partial_entropy(cfg):
    par = cfg.parameters
    q = _int_param(par, "q", cfg.kind)
    p = _int_param(par, "p", cfg.kind)
    n = _int_param(par, "n", cfg.kind)
    grid = _int_param(par, "grid", cfg.kind, classical.DEFAULT_GRID)
    sector = _sector_param(par)
    try:
        CatParams(q, p)
    except ValueError as exc:
        raise ConfigInvalid(str(exc))
    words = (2 ** p) ** (max(n - 2, 0) if sector else n)
    if words > cfg.word_budget:
        raise ConfigInvalid("word count exceeds the word budget")
    return [{"q": q, "p": p, "n": n, "grid": grid, "sector": sector}]


def _validate_combined_limit(cfg):
    par = cfg.parameters
    r = _int_param(par, "r", cfg.kind)
    i = _int_param(par, "i", cfg.kind)
    p = _int_param(par, "p", cfg.kind)
    n = _int_param(par, "n", cfg.kind)
    grid = _int_param(par, "grid", cfg.kind, classical.DEFAULT_GRID)
    q_values = [int(q) for q in _expand_range(_require(par, "q", cfg.kind), "q")]
    kappas = _kappa_values(par, q_values, cfg.kind)
    if len(kappas) == 1:
        kappas = kappas * len(q_values)
    if len(kappas) != len(q_values):
        raise ConfigInvalid("kappa list length must match the q axis")
    points = []
    for q, kappa in zip(q_values, kappas):
        point = {"q": q, "r": r, "i": i, "p": p, "n": n, "grid": grid,
                 "kappa": float(kappa)}
        mp = _multi_params(point)
        if mp.dim > MAX_DENSE_DIM:
            raise ConfigInvalid(f"dense dimension {mp.dim} exceeds {MAX_DENSE_DIM}")
        points.append(point)
    return points


_VALIDATORS = {
    "classical": _validate_classical,
    "single-cat-entropy": _validate_single_entropy,
    "sector-matrix": _validate_sector_matrix,
    "mass-sweep": _validate_mass_sweep,
    "kappa-sweep": _validate_kappa_sweep,
    "von-neumann": _validate_von_neumann,
    "partial-entropy": _validate_partial_entropy,
    "combined-limit": _validate_combined_limit,
}


def validate(cfg):
    """Expand a config into sweep points, rejecting it before any compute.

    Raises ConfigInvalid with a reason; returns the point list on success.
    """
    return _VALIDATORS[cfg.kind](cfg)


# ---------------------------------------------------------------------------
# Point computation (pure functions of one point dict; picklable)
# ---------------------------------------------------------------------------

def _word_budgets(point):
    return {"word_budget": point["_words"], "memory_budget": point["_memory"]}


def _compute_classical(point):
    table = classical.word_measures(point["p"], point["n"], grid=point["grid"])
    s_cl = classical.classical_entropy(table)
    return {"entropy": [(point["p"], point["n"], point["grid"], s_cl)]}


def _compute_single_entropy(point):
    q, p = point["q"], point["p"]
    par = CatParams(q, p)
    u = build_cat_unitary(par)
    proj = build_projectors(par)
    budgets = _word_budgets(point)
    n_max = max(point["n_values"])
    wanted = set(point["n_values"])
    bound = 2 * q * np.log(2.0)
    rows = []
    use_omega = par.dim ** 2 <= histories.OMEGA_MAX_DIM2
    omegas = {}
    if use_omega:
        for om in histories.omega_sequence(u, proj, n_max):
            if om.n in wanted:
                omegas[om.n] = om
    for n in point["n_values"]:
        table = classical.word_measures(p, n, grid=point["grid"])
        s_cl = classical.classical_entropy(table)
        s_diag = None
        if proj.n_cells ** n <= budgets["word_budget"]:
            d = histories.decoherence_matrix(u, proj, n, **budgets)
            rec = histories.entropies(d, table)
            s_af, s_diag = rec.s_af, rec.s_diag
        elif use_omega:
            s_af = numerics.spectral_entropy(omegas[n].spectrum())
        else:
            raise BudgetExceeded(
                f"n={n}: neither the word tree nor the second-moment "
                f"recursion fits the budget")
        rows.append((q, p, n, s_af, s_diag, s_cl, bound))
    return {"entropy": rows}


def _compute_sector_matrix(point):
    par = CatParams(point["q"], point["p"])
    u = build_cat_unitary(par)
    proj = build_projectors(par)
    d = histories.decoherence_matrix(u, proj, point["n"],
                                     sector=tuple(point["sector"]),
                                     **_word_budgets(point))
    table = classical.word_measures(point["p"], point["n"], grid=point["grid"])
    mu = table.sector_probs(*point["sector"])
    matrix_rows = []
    for a in range(d.entries.shape[0]):
        wa = classical.word_string(d.word(a))
        for b in range(d.entries.shape[1]):
            z = d.entries[a, b]
            matrix_rows.append((wa, classical.word_string(d.word(b)),
                                z.real, z.imag, abs(z)))
    measure_rows = [(classical.word_string(d.word(a)), mu[a])
                    for a in range(d.entries.shape[0])]
    return {"matrix": matrix_rows, "measures": measure_rows}


def _compute_mass_sweep(point):
    par = CatParams(point["q"], point["p"])
    u = build_cat_unitary(par)
    proj = build_projectors(par)
    sector = point["sector"]
    table = classical.word_measures(point["p"], point["n"], grid=point["grid"])
    d = histories.decoherence_matrix(u, proj, point["n"],
                                     sector=None if sector is None else tuple(sector),
                                     **_word_budgets(point))
    rec = histories.entropies(d, table)
    return {"scaling": [(point["q"], par.dim, rec.offdiag, rec.d_symb,
                         rec.s_af, rec.s_diag, rec.s_cl)]}


def _compute_kappa_sweep(point):
    mp = _multi_params(point)
    sector = point["sector"]
    budgets = _word_budgets(point)
    table = classical.word_measures(point["p"], point["n"], grid=point["grid"])
    full = multiparticle_histories(mp, point["n"], **budgets)
    rec = histories.entropies(full, table)
    if sector is None:
        return {"sweep": [(point["kappa"], rec.offdiag, rec.d_symb, 1.0,
                           rec.s_af, rec.s_diag, rec.s_cl)]}
    sec = multiparticle_histories(mp, point["n"], sector=tuple(sector), **budgets)
    sec_rec = histories.entropies(sec, table)
    sector_prob = sec.trace()
    return {"sweep": [(point["kappa"], sec_rec.offdiag, sec_rec.d_symb,
                       sector_prob, rec.s_af, rec.s_diag, rec.s_cl)]}


def _compute_von_neumann(point):
    mp = MultiParams(q=point["q"], r=point["r"], n_small=point["i"],
                     kappa=point["kappa"])
    centers = point["centers"]
    width = point["width"]
    momentum = point["momentum"]
    if len(centers) == 1:
        big = gaussian_packet(mp.big_dim, center=centers[0], width=width,
                              momentum=momentum)
    else:
        big = two_packet_state(mp.big_dim, centers=tuple(centers), width=width,
                               momentum=momentum)
    initial = product_state(mp, big)
    run_rec = von_neumann_run(mp, point["steps"], initial=initial,
                              cat_kick=point["cat_kick"],
                              snapshot_times=tuple(point["snapshots"]))
    series = {"entropy": [(int(t), s) for t, s in
                          zip(run_rec.times, run_rec.entropy)]}
    for t in point["snapshots"]:
        rho = run_rec.snapshots[t]
        rows = []
        for a in range(rho.shape[0]):
            for b in range(rho.shape[1]):
                rows.append((a, b, abs(rho[a, b])))
        series[f"snapshot{t}"] = rows
    return series


def _compute_partial_entropy(point):
    par = CatParams(point["q"], point["p"])
    u = build_cat_unitary(par)
    proj = build_projectors(par)
    sector = point["sector"]
    d = histories.decoherence_matrix(u, proj, point["n"],
                                     sector=None if sector is None else tuple(sector),
                                     **_word_budgets(point))
    table = classical.word_measures(point["p"], point["n"], grid=point["grid"])
    profiles = histories.partial_entropy_profile(d, table)
    rows = []
    for source in ("eigen", "diag", "classical"):
        for i, v in enumerate(profiles[source]):
            rows.append((source, i, v))
    return {"profile": rows}


def _compute_combined_limit(point):
    q, p, n = point["q"], point["p"], point["n"]
    budgets = _word_budgets(point)
    table = classical.word_measures(p, n, grid=point["grid"])
    s_cl = classical.classical_entropy(table)
    par = CatParams(q, p)
    d_single = histories.decoherence_matrix(build_cat_unitary(par),
                                            build_projectors(par), n, **budgets)
    s_single = numerics.spectral_entropy(d_single.spectrum())
    mp = _multi_params(point)
    d_multi = multiparticle_histories(mp, n, **budgets)
    s_multi = numerics.spectral_entropy(d_multi.spectrum())
    return {"limit": [(q, point["kappa"], s_cl, s_single, s_multi,
                       abs(s_single - s_cl), abs(s_multi - s_cl))]}


_COMPUTERS = {
    "classical": _compute_classical,
    "single-cat-entropy": _compute_single_entropy,
    "sector-matrix": _compute_sector_matrix,
    "mass-sweep": _compute_mass_sweep,
    "kappa-sweep": _compute_kappa_sweep,
    "von-neumann": _compute_von_neumann,
    "partial-entropy": _compute_partial_entropy,
    "combined-limit": _compute_combined_limit,
}

_HEADERS = {
    "entropy": {"classical": "p,n,grid,S_cl",
                "single-cat-entropy": "q,p,n,S_af,S_diag,S_cl,bound",
                "von-neumann": "t,S_vn"},
    "matrix": "theta,sigma,re,im,abs",
    "measures": "word,measure",
    "scaling": "q,dim,offdiag,d_symb,S_af,S_diag,S_cl",
    "sweep": "kappa,offdiag,d_symb,sector_prob,S_af,S_diag,S_cl",
    "profile": "source,i,value",
    "limit": "q,kappa,S_cl,S_af_single,S_af_multi,gap_single,gap_multi",
}


def _header_for(kind, series):
    if series.startswith("snapshot"):
        return "j0p,j0,abs"
    h = _HEADERS[series]
    return h[kind] if isinstance(h, dict) else h


def _run_point(kind, point):
    return _COMPUTERS[kind](point)


def _point_job(args):
    """Worker entry: returns (index, series dict or None, error or None)."""
    index, kind, point = args
    try:
        return index, _run_point(kind, point), None
    except CatlabError as exc:
        return index, None, f"{type(exc).__name__}: {exc}"
    except ValueError as exc:
        return index, None, f"invariant violation: {exc}"


def _atomic_write(path, text):
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run(cfg, out_dir=".", workers=None):
    """Execute one experiment config and write its CSVs and JSON summary.

    Sweep points run independently (in processes when workers > 1) and
    their rows are merged in config order, so output bytes do not depend
    on the worker count.  A failing point is recorded in the summary and
    the run continues; the caller decides the exit status from `errors`.
    """
    t0 = time.time()
    points = validate(cfg)
    for point in points:
        point["_words"] = cfg.word_budget
        point["_memory"] = cfg.memory_budget
    os.makedirs(out_dir, exist_ok=True)
    rs = ResultSet(config=cfg, out_dir=out_dir,
                   timestamp=time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime()))

    jobs = [(i, cfg.kind, point) for i, point in enumerate(points)]
    n_workers = cfg.workers if workers is None else workers
    results = {}
    if n_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            for index, series, error in pool.map(_point_job, jobs):
                results[index] = (series, error)
    else:
        for job in jobs:
            index, series, error = _point_job(job)
            results[index] = (series, error)

    merged = {}
    for index in range(len(points)):
        series, error = results[index]
        if error is not None:
            point = {k: v for k, v in points[index].items()
                     if not k.startswith("_")}
            rs.errors.append({"point": point, "error": error})
            continue
        for name, rows in series.items():
            merged.setdefault(name, []).extend(rows)

    echo = cfg.echo()
    for name in sorted(merged):
        path = os.path.join(out_dir, f"{cfg.prefix}_{name}.csv")
        lines = [f"# config: {echo}", _header_for(cfg.kind, name)]
        for row in merged[name]:
            lines.append(",".join(_cell(x) for x in row))
        _atomic_write(path, "\n".join(lines) + "\n")
        rs.outputs.append(path)

    rs.wall_time_s = time.time() - t0
    summary = {"config": json.loads(echo), "version": rs.version,
               "timestamp": rs.timestamp, "wall_time_s": rs.wall_time_s,
               "outputs": [os.path.basename(p) for p in rs.outputs],
               "errors": rs.errors}
    _atomic_write(rs.summary_path(), json.dumps(summary, indent=2) + "\n")
    return rs


# ---------------------------------------------------------------------------
# Plot-data emission (gnuplot scripts; derived numeric tables where needed)
# ---------------------------------------------------------------------------

_GP_PRELUDE = """set datafile separator ','
set key autotitle columnhead
set key top left
set grid
"""


def _csv_name(rs, series):
    return f"{rs.config.prefix}_{series}.csv"


def _plot_lines(rs):
    kind = rs.config.kind
    prefix = rs.config.prefix
    lines = [_GP_PRELUDE]
    if kind == "classical":
        lines += [f"set xlabel 'n'; set ylabel 'S_cl'",
                  f"plot '{_csv_name(rs, 'entropy')}' using 'n':'S_cl' "
                  f"with linespoints title 'classical entropy'"]
    elif kind == "single-cat-entropy":
        qs = sorted({row["q"] for row in _rows_meta(rs)})
        plots = ", ".join(
            f"'{_csv_name(rs, 'entropy')}' using "
            f"(column('q')=={q} ? column('n') : 1/0):'S_af' "
            f"with linespoints title 'q={q}'" for q in qs)
        bound = (f"'{_csv_name(rs, 'entropy')}' using "
                 f"'n':(column('q')=={max(qs)} ? column('bound') : 1/0) "
                 f"with lines dashtype 2 title 'bound'")
        lines += ["set xlabel 'n'; set ylabel 'entropy (nats)'",
                  f"plot {plots}, {bound}"]
    elif kind == "sector-matrix":
        lines += ["set xlabel 'theta index'; set ylabel 'sigma index'",
                  "set view map",
                  f"splot '{prefix}_plotdata_grid.csv' using 1:2:3 "
                  f"with points pointtype 5 pointsize 3 palette "
                  f"title '|D| by word pair'",
                  "pause -1",
                  "set xlabel 'word index'; set ylabel 'weight'",
                  f"plot '{prefix}_plotdata_diag.csv' using 1:2 with boxes "
                  f"title 'quantum diagonal', '' using 1:3 with points "
                  f"pointtype 7 title 'classical measure'"]
    elif kind == "mass-sweep":
        lines += ["set logscale xy", "set xlabel 'dim'; set ylabel 'mass'",
                  f"plot '{_csv_name(rs, 'scaling')}' using 'dim':'offdiag' "
                  f"with linespoints title 'offdiag mass', "
                  f"'' using 'dim':'d_symb' with linespoints "
                  f"title 'symbolic distance'"]
    elif kind == "kappa-sweep":
        lines += ["set xlabel 'kappa'; set ylabel 'value'",
                  f"plot '{_csv_name(rs, 'sweep')}' using 'kappa':'offdiag' "
                  f"with linespoints title 'offdiag mass', "
                  f"'' using 'kappa':'d_symb' with linespoints "
                  f"title 'symbolic distance', "
                  f"'' using 'kappa':'S_af' with linespoints title 'S_AF', "
                  f"'' using 'kappa':'S_diag' with linespoints "
                  f"title 'S_diag', "
                  f"'' using 'kappa':'S_cl' with lines dashtype 2 "
                  f"title 'S_cl'"]
    elif kind == "von-neumann":
        lines += ["set xlabel 't'; set ylabel 'S_vn'",
                  f"plot '{_csv_name(rs, 'entropy')}' using 't':'S_vn' "
                  f"with linespoints title 'entanglement entropy'"]
        for path in rs.outputs:
            name = os.path.basename(path)
            if "_snapshot" in name:
                lines += ["pause -1", "set view map",
                          "set xlabel 'j0'; set ylabel 'j0p'",
                          f"splot '{name}' using 'j0':'j0p':'abs' "
                          f"with points pointtype 5 palette "
                          f"title '{name}'"]
    elif kind == "partial-entropy":
        plots = ", ".join(
            f"'{_csv_name(rs, 'profile')}' using "
            f"(strcol('source') eq '{s}' ? column('i') : 1/0):'value' "
            f"with linespoints title '{s}'"
            for s in ("eigen", "diag", "classical"))
        lines += ["set xlabel 'contributions kept'; set ylabel 'S_i'",
                  f"plot {plots}"]
    elif kind == "combined-limit":
        lines += ["set xlabel 'q'; set ylabel '|S - S_cl|'",
                  f"plot '{_csv_name(rs, 'limit')}' using 'q':'gap_single' "
                  f"with linespoints title 'single particle', "
                  f"'' using 'q':'gap_multi' with linespoints "
                  f"title 'multiparticle'"]
    return lines


def _rows_meta(rs):
    points = validate(rs.config)
    return points


def emit_plot_data(rs):
    """Write one gnuplot script (plus derived numeric tables) per result set.

    Scripts reference only files inside the result directory; string-keyed
    CSVs get a small numeric companion table so gnuplot can address them.
    """
    out = []
    if rs.config.kind == "sector-matrix":
        out += _emit_sector_tables(rs)
    script = os.path.join(rs.out_dir, f"{rs.config.prefix}_plot.gp")
    _atomic_write(script, "\n".join(_plot_lines(rs)) + "\n")
    out.append(script)
    return out


def _emit_sector_tables(rs):
    matrix_path = os.path.join(rs.out_dir, _csv_name(rs, "matrix"))
    measures_path = os.path.join(rs.out_dir, _csv_name(rs, "measures"))
    words = []
    mu = {}
    with open(measures_path) as fh:
        for line in fh:
            if line.startswith("#") or line.startswith("word"):
                continue
            w, m = line.strip().split(",")
            words.append(w)
            mu[w] = m
    index = {w: i for i, w in enumerate(words)}
    grid_rows = []
    diag = {}
    with open(matrix_path) as fh:
        for line in fh:
            if line.startswith("#") or line.startswith("theta"):
                continue
            theta, sigma, _, _, mod = line.strip().split(",")
            grid_rows.append(f"{index[theta]},{index[sigma]},{mod}")
            if theta == sigma:
                diag[theta] = mod
    echo = rs.config.echo()
    grid = os.path.join(rs.out_dir, f"{rs.config.prefix}_plotdata_grid.csv")
    _atomic_write(grid, "\n".join(
        [f"# config: {echo}", "theta_index,sigma_index,abs"] + grid_rows) + "\n")
    diag_path = os.path.join(rs.out_dir, f"{rs.config.prefix}_plotdata_diag.csv")
    diag_rows = [f"{index[w]},{diag[w]},{mu[w]}" for w in words]
    _atomic_write(diag_path, "\n".join(
        [f"# config: {echo}", "word_index,abs_diag,measure"] + diag_rows) + "\n")
    return [grid, diag_path]
