"""Sweep orchestration: grids of (p, h, n, r, m), per-case checks, reports."""
import configparser
import itertools
import json
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, config
from .cyclic_model import (
    check_inclusion, check_projection, check_reducibility, check_thm_final, decompose,
)
from .directions import all_additive_tables, check_dir_theorem, direction_trichotomy
from .duality import check_d2, check_pesi
from .errors import BudgetExceeded, FieldTooLarge, HypothesisViolated, LinsetError
from .examples_bounds import check_size_bounds
from .field_tower import is_prime, make_tower
from .fq_linalg import Subspace, all_subspaces, gaussian_binomial, random_fqd_subspace, random_subspace
from .io import format_subspace
from .linalg import rref
from .linset_core import (
    check_tangenti, check_thm_main, check_thm_main1, field_of_linearity_by_closure, linear_set,
)
from .verification import VerificationOutcome

CHECKS = ("thm_main1", "thm_main", "d2", "pesi", "directions_a", "directions_b",
          "trichotomy", "tangenti", "cyclic_inclusion", "cyclic_projection", "thm_final",
          "reducibility", "size_bounds")


@dataclass
class SweepConfig:
    p: tuple = (2,)
    h: tuple = (1,)
    n: tuple = (2,)
    r: tuple = (2,)
    m: tuple = (2,)
    mode: str = "exhaustive"
    samples: int = 100
    seed: int = 0
    max_field: int = config.DEFAULT_TABLE_LIMIT
    max_subspaces: int = config.DEFAULT_SUBSPACE_LIMIT
    case_seconds: float = 60.0
    checks: tuple = CHECKS
    min_weight: int = 1
    enrich: float = 0.0
    reducibility_samples: int = 10
    workers: int = 1
    timings: bool = False

    def validate(self):
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0.0 <= self.enrich <= 1.0:
            raise ValueError("enrich must lie in [0, 1]")
        if self.mode == "random" and self.seed is None:
            raise ValueError("random mode needs a seed")
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}")
        for p in self.p:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        return self

    def grid(self):
        for p, h, n, r in itertools.product(self.p, self.h, self.n, self.r):
            for m in self.m:
                if 0 <= m <= r * n:
                    yield (p, h, n, r, m)


def _parse_range(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def load_config(path, **overrides):
    """Read an INI sweep config; keyword overrides win over the file."""
    cp = configparser.ConfigParser()
    with open(path) as fh:
        cp.read_file(fh)
    sw = cp["sweep"] if cp.has_section("sweep") else {}
    bud = cp["budget"] if cp.has_section("budget") else {}
    kw = {}
    for key in ("p", "h", "n", "r", "m"):
        if key in sw:
            kw[key] = _parse_range(sw[key])
    if "enrich" in sw:
        kw["enrich"] = float(sw["enrich"])
    if "mode" in sw:
        kw["mode"] = sw["mode"].strip()
    for key in ("samples", "seed", "min_weight", "reducibility_samples", "workers"):
        if key in sw:
            kw[key] = int(sw[key])
    if "checks" in sw:
        kw["checks"] = tuple(c.strip() for c in sw["checks"].split(",") if c.strip())
    if "timings" in sw:
        kw["timings"] = sw["timings"].strip().lower() in ("1", "true", "yes")
    for key in ("max_field", "max_subspaces"):
        if key in bud:
            kw[key] = int(bud[key])
    if "case_seconds" in bud:
        kw["case_seconds"] = float(bud["case_seconds"])
    kw.update({k: v for k, v in overrides.items() if v is not None})
    return SweepConfig(**kw).validate()


# -- per-case dispatch ------------------------------------------------------

def _fqn_subspaces(T, r, limit):
    out = []
    for s in range(r + 1):
        if gaussian_binomial(r, s, T.order) > limit:
            raise BudgetExceeded("too many F_{q^n}-subspaces for the pesi check")
        out.extend(all_subspaces(T, r, s, limit=limit, e=T.n))
    return out


class CaseRunner:
    """Runs the enabled checks on one subspace, sharing L_U and the decomposition."""

    def __init__(self, cfg, T, r, seed):
        self.cfg = cfg
        self.T = T
        self.r = r
        self.seed = seed
        self._fqn = None

    def fqn_subspaces(self):
        if self._fqn is None:
            self._fqn = _fqn_subspaces(self.T, self.r, self.cfg.max_subspaces)
        return self._fqn

    def run(self, U, name, LU, cache):
        T, n, m = self.T, self.T.n, U.fq_dim
        if name == "thm_main1":
            if m == 0 or m % n:
                return None
            return check_thm_main1(U, LU)
        if name == "thm_main":
            return check_thm_main(U, LU)
        if name == "d2":
            if m % n:
                return None
            return check_d2(U)
        if name == "pesi":
            for R in self.fqn_subspaces():
                o = check_pesi(U, R)
                if not o.ok:
                    return o
            return VerificationOutcome("pesi", "pass", details={"pairs": len(self.fqn_subspaces())})
        if name == "directions_a":
            return check_dir_theorem(U, "a") if m and m % n == 0 else None
        if name == "directions_b":
            if T.q < n:
                return VerificationOutcome("directions_b", "hypothesis_unmet")
            return check_dir_theorem(U, "b")
        if name == "tangenti":
            if self.r <= 2 or m == 0 or m > n * (self.r - 2):
                return None
            for P in LU.weights:
                o = check_tangenti(U, P, LU)
                if not o.ok:
                    return o
            return VerificationOutcome("tangenti", "pass", details={"points": len(LU)})
        if name in ("cyclic_inclusion", "cyclic_projection", "thm_final", "reducibility"):
            if m == 0 or m > (self.r - 1) * n:
                return None
            if "dec" not in cache:
                cache["dec"] = decompose(U)
            dec = cache["dec"]
            if name == "cyclic_inclusion":
                return check_inclusion(dec)
            if name == "cyclic_projection":
                return check_projection(dec)
            if name == "thm_final":
                return check_thm_final(U, dec, LU)
            return check_reducibility(U, self.cfg.reducibility_samples, self.seed, dec, LU)
        if name == "size_bounds":
            return check_size_bounds(U, LU) if m else None
        raise ValueError(name)


def minimize_witness(U, check):
    """Greedily drop basis rows while ``check`` still fails."""
    rows = list(U.basis)
    changed = True
    while changed and len(rows) > 1:
        changed = False
        for i in range(len(rows)):
            trial = rows[:i] + rows[i + 1:]
            b, piv = rref(trial, U.field, U.ncoords)
            V = Subspace(U.tower, U.r, U.e, b, piv)
            try:
                failing = check(V).status == "fail"
            except (LinsetError, ValueError):
                failing = False
            if failing:
                rows = list(b)
                changed = True
                break
    b, piv = rref(rows, U.field, U.ncoords)
    return Subspace(U.tower, U.r, U.e, b, piv)


def _witness_check(runner, name):
    def check(V):
        LV = linear_set(V)
        out = runner.run(V, name, LV, {})
        return out or VerificationOutcome(name, "vacuous")
    return check


def _point_seed(cfg, point):
    return int(np.random.SeedSequence([cfg.seed or 0, *point]).generate_state(1)[0])


def _cases(cfg, T, r, m, seed):
    if cfg.mode == "exhaustive":
        yield from all_subspaces(T, r, m, limit=cfg.max_subspaces)
    else:
        # enriched draws are F_{q^d}-subspaces (d > 1), where weights >= 2 live
        ds = [d for d in T.divisors if d > 1 and m % d == 0]
        rng = np.random.default_rng(seed)
        for _ in range(cfg.samples):
            if ds and rng.random() < cfg.enrich:
                d = ds[int(rng.integers(0, len(ds)))]
                yield random_fqd_subspace(T, r, d, m // d, rng).as_fq()
            else:
                yield random_subspace(T, r, m, rng)


def run_point(cfg, point):
    """All cases of one grid point; returns a partial report."""
    p, h, n, r, m = point
    part = {"point": list(point), "cases": 0, "checks": defaultdict(Counter), "witnesses": [],
            "skipped": [], "d_mismatch": 0, "d_records": Counter(), "branches": Counter(),
            "slow_cases": 0, "literal_final_fails": 0, "seconds": 0.0}
    start = time.perf_counter()
    try:
        if p**(h * n) > cfg.max_field:
            raise FieldTooLarge(f"field of size {p**(h * n)} above max_field")
        T = make_tower(p, h, n)
        part["tower"] = T.spec.serialize()
        seed = _point_seed(cfg, point)
        runner = CaseRunner(cfg, T, r, seed)
        names = [c for c in cfg.checks if c != "trichotomy"]
        for U in _cases(cfg, T, r, m, seed):
            t0 = time.perf_counter()
            LU = linear_set(U)
            if cfg.min_weight > 1 and (not len(LU) or LU.min_weight() < cfg.min_weight):
                continue
            part["cases"] += 1
            cache = {}
            for name in names:
                try:
                    out = runner.run(U, name, LU, cache)
                except HypothesisViolated:
                    out = VerificationOutcome(name, "hypothesis_unmet")
                if out is None:
                    part["checks"][name]["skipped"] += 1
                    continue
                part["checks"][name][out.status] += 1
                if name == "thm_final" and "literal_holds" in out.details:
                    part["branches"][out.details["branch"]] += 1
                    if not out.details["literal_holds"]:
                        part["literal_final_fails"] += 1
                if out.status == "fail":
                    small = minimize_witness(U, _witness_check(runner, name))
                    part["witnesses"].append({"check": name, "witness": format_subspace(small),
                                              "original": out.witness})
            if "dec" in cache and len(LU) and LU.min_weight() >= 2 and T.n <= T.q:
                d_cyc = cache["dec"].d
                d_clo = field_of_linearity_by_closure(U, LU).degree
                part["d_records"][f"{d_cyc}/{d_clo}"] += 1
                part["d_mismatch"] += d_cyc != d_clo
            if time.perf_counter() - t0 > cfg.case_seconds:
                part["slow_cases"] += 1
    except (BudgetExceeded, FieldTooLarge) as exc:
        part["skipped"].append({"point": list(point), "reason": str(exc)})
    part["seconds"] = time.perf_counter() - start
    return part


def _run_trichotomy(cfg, p, h, counts, rep):
    """Classify every additive map on F_{p^h}."""
    Q = p**h
    if Q > cfg.max_field or Q**h > cfg.max_subspaces:
        rep.skipped.append({"point": [p, h], "reason": "trichotomy table count above budget"})
        return
    F = make_tower(p, 1, h)
    for table in all_additive_tables(F):
        res = direction_trichotomy(F, table)
        counts[res.status] += 1
        if res.status == "fail":
            rep.witnesses.append({"check": "trichotomy", "witness": json.dumps(table)})


@dataclass
class Report:
    config: dict
    version: str = __version__
    towers: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    cases: int = 0
    points: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    cyclic_d: dict = field(default_factory=dict)
    thm_final_branches: dict = field(default_factory=dict)
    thm_final_literal_fails: int = 0
    slow_cases: int = 0
    timings: dict = None

    @property
    def failures(self):
        return sum(c.get("fail", 0) for c in self.checks.values())

    @property
    def ok(self):
        return self.failures == 0

    def to_dict(self):
        d = asdict(self)
        if d["timings"] is None:
            del d["timings"]
        d["failures"] = self.failures
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self):
        cols = ("pass", "fail", "vacuous", "hypothesis_unmet", "skipped")
        lines = ["check," + ",".join(cols)]
        for name in sorted(self.checks):
            c = self.checks[name]
            lines.append(name + "," + ",".join(str(c.get(k, 0)) for k in cols))
        return "\n".join(lines) + "\n"


def run_sweep(cfg):
    cfg.validate()
    points = list(cfg.grid())
    if cfg.workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(cfg.workers) as ex:
            parts = list(ex.map(run_point, [cfg] * len(points), points))
    else:
        parts = [run_point(cfg, pt) for pt in points]
    cdict = asdict(cfg)
    cdict = {k: list(v) if isinstance(v, tuple) else v for k, v in cdict.items()}
    rep = Report(config=cdict)
    checks = defaultdict(Counter)
    d_records = Counter()
    branches = Counter()
    mismatch = 0
    timings = {}
    for part in sorted(parts, key=lambda x: x["point"]):
        if "tower" in part:
            rep.towers[" ".join(map(str, part["point"][:3]))] = part["tower"]
        rep.cases += part["cases"]
        rep.points.append({"point": part["point"], "cases": part["cases"]})
        for name, cnt in part["checks"].items():
            checks[name].update(cnt)
        rep.witnesses.extend(part["witnesses"])
        rep.skipped.extend(part["skipped"])
        d_records.update(part["d_records"])
        branches.update(part["branches"])
        mismatch += part["d_mismatch"]
        rep.slow_cases += part["slow_cases"]
        rep.thm_final_literal_fails += part["literal_final_fails"]
        timings[" ".join(map(str, part["point"]))] = round(part["seconds"], 3)
    if "trichotomy" in cfg.checks:
        for p, h, n in sorted({pt[:3] for pt in points}):
            _run_trichotomy(cfg, p, h * n, checks["trichotomy"], rep)
    rep.checks = {k: dict(sorted(v.items())) for k, v in sorted(checks.items())}
    rep.cyclic_d = {"records": dict(sorted(d_records.items())), "mismatches": mismatch}
    rep.thm_final_branches = dict(sorted((str(k), v) for k, v in branches.items()))
    if cfg.timings:
        rep.timings = timings
    return rep
