"""Batch experiments: generate instances, run the algorithms, check every claim.

Every experiment returns a :class:`RunReport` whose records are a pure
function of the configuration, so two runs with the same seed serialize to
identical bytes.  Wall-clock time is kept on the report object but never
serialized with it.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .claims import A_CHECKS, B_CHECKS, check_learn_all, check_learn_sat
from .clauses import word_key, words_upto
from .dimacs import random_unique_formula, random_unsat_formula
from .field import build_field, solve_vandermonde, poly_eval
from .learner import InternalConsistencyError, learn_all, learn_sat_traced
from .recovery import (
    NoAssignmentFound,
    brute_force_unique_assignment,
    choose_m,
    harness_instance,
    recover_assignment,
)
from .transforms import (
    BoundedClause,
    BoundedCNF,
    BoundedDNF,
    decode_tuple,
    encode_tuple,
    lift_sparse_set,
    negate_dbtt,
    transform_cnf,
)
from .clauses import formula_satisfied
from .world import Poly, SparseWorld, TargetLanguage, WorldError, generate_world, load_world

COMMANDS = ("learn", "transform", "recover", "selftest")
MAX_N = 12
MAX_K = 3
MAX_VARS = 8
DESK_FIELD_DEGREES = (2, 6)
MAX_WORD_LEN = 12  # q(n_max) cap for generated worlds
MAX_CENSUS = 6  # p(q(n_max)) cap for generated worlds
HARNESS_S_SIZE = 2
HARNESS_WORD_LEN = 48


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str = "selftest"
    seed: int = 42
    worlds: int = 50
    k: int = 2
    n_max: int = 6
    density: str = "1"
    formulas: int = 100
    vars: int = 6
    m: Optional[int] = None
    out: Optional[str] = None
    jobs: int = 1
    figures: bool = False
    verbosity: int = 0

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.worlds < 0 or self.formulas < 0:
            raise ConfigError("counts must be nonnegative")
        if not 1 <= self.k <= MAX_K:
            raise ConfigError(f"--k must lie in 1..{MAX_K}")
        if not 0 <= self.n_max <= MAX_N:
            raise ConfigError(f"--n-max must lie in 0..{MAX_N}")
        try:
            d = Fraction(self.density)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad density {self.density!r}") from exc
        if not 0 <= d <= 1:
            raise ConfigError("--density must lie in [0, 1]")
        if not 1 <= self.vars <= MAX_VARS:
            raise ConfigError(f"--vars must lie in 1..{MAX_VARS}")
        if self.m is not None:
            if self.m not in DESK_FIELD_DEGREES:
                raise ConfigError(f"--m must be one of {DESK_FIELD_DEGREES}")
            p = HARNESS_S_SIZE
            if (1 << self.m) < self.vars * p:
                raise ConfigError(
                    f"--m {self.m} is too small: 2^{self.m} / p = {Fraction(1 << self.m, p)} < n = {self.vars}"
                )
        if self.jobs < 1:
            raise ConfigError("--jobs must be >= 1")

    def public(self) -> dict:
        d = asdict(self)
        for key in ("out", "jobs", "figures", "verbosity"):
            d.pop(key)
        return d


@dataclass
class RunReport:
    command: str
    config: dict
    records: List[dict] = field(default_factory=list)
    wall_time: float = field(default=0.0, compare=False)
    timings: Dict[str, float] = field(default_factory=dict, compare=False)
    details: Dict[str, list] = field(default_factory=dict, compare=False)

    def failures(self) -> Dict[str, int]:
        """Claim name -> number of records where it failed."""
        out: Dict[str, int] = {}
        for r in self.records:
            for name, ok in r.get("checks", {}).items():
                if not ok:
                    out[name] = out.get(name, 0) + 1
        return dict(sorted(out.items()))

    @property
    def ok(self) -> bool:
        return not self.failures()

    def summary(self) -> dict:
        names = sorted({n for r in self.records for n in r.get("checks", {})})
        return {
            "records": len(self.records),
            "checks": names,
            "failures": self.failures(),
            "passed": self.ok,
        }

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "records": self.records,
            "summary": self.summary(),
        }


def _map(fn: Callable, items: Sequence, jobs: int) -> List:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


# -- learn ----------------------------------------------------------------------


Q_CHOICES = (Poly.of(0, 1), Poly.of(1, 1), Poly.of(2, 1), Poly.of(0, 2), Poly.of(1, 2))
P_CHOICES = tuple(Poly.of(c) for c in range(2, 7)) + (Poly.of(2, 1), Poly.of(3, 1), Poly.of(2, 0, 1))


def world_params(seed: int, index: int, k: int, n_max: int) -> dict:
    """Desk-scale polynomials for one world: q(n_max) <= 12 and p(q(n_max)) <= 6."""
    rng = random.Random(f"params:{seed}:{index}")
    qs = [q for q in Q_CHOICES if q(n_max) <= max(MAX_WORD_LEN, n_max)]
    q = rng.choice(qs)
    ps = [p for p in P_CHOICES if p(q(n_max)) <= MAX_CENSUS] or [Poly.of(2)]
    p = rng.choice(ps)
    density = rng.choice(("1", "1", "3/4", "1/2"))
    return {"seed": rng.getrandbits(31), "k": k, "n_max": n_max, "p": p, "q": q, "density": density}


def _driver_lhs_words(world: SparseWorld) -> List[str]:
    words = {c.lhs for x in words_upto(world.n_max) for c in world.reduction(x)}
    return sorted(words, key=word_key)


def run_world(job: Tuple[int, dict]) -> dict:
    """Generate one world and check every learner claim on it."""
    index, params = job
    world = generate_world(params["seed"], params["k"], params["n_max"], params["p"], params["q"], Fraction(params["density"]))
    return check_world(index, world, density=params["density"])


def check_world(index: int, world: SparseWorld, density: str = "") -> dict:
    record = {
        "world": index,
        "seed": world.seed,
        "k": world.k,
        "n_max": world.n_max,
        "p": str(world.p),
        "q": str(world.q),
        "density": density,
        "census": len(world.S),
    }
    checks = {name: True for name in A_CHECKS + B_CHECKS}
    try:
        world.validate()
        checks["world invariants"] = True
    except WorldError:
        checks["world invariants"] = False
    T = TargetLanguage(world)
    n = world.n_max
    record["members"] = sum(1 for x in words_upto(n) if x in T)
    runs = []
    try:
        for z in _driver_lhs_words(world):
            runs.append(learn_sat_traced(world, T, n, z))
        L = learn_all(world, T, n)
        runs.extend(L.sat_runs)
        checks.update(check_learn_all(L, world, T))
        record["forecast_size"] = len(L)
        record["b1"] = [[i, len(ps), world.p(world.q(i))] for i, ps in sorted(L.passes.items())]
    except InternalConsistencyError as exc:
        checks["internal consistency"] = False
        record["error"] = str(exc)
    for st in runs:
        for name, ok in check_learn_sat(st, world, T).items():
            checks[name] = checks[name] and ok
    checks.setdefault("internal consistency", True)
    record["sat_runs"] = len(runs)
    record["passes"] = [st.pass_count for st in runs]
    record["packs"] = sum(1 for st in runs for rec in st.trace if rec.packed)
    record["max_pass_count"] = max((st.pass_count for st in runs), default=0)
    record["checks"] = checks
    return record


def learn_jobs(seed: int, worlds: int, k_max: int, n_values: Sequence[int]) -> List[Tuple[int, dict]]:
    ks = itertools.cycle(range(1, k_max + 1))
    ns = itertools.cycle(n_values)
    return [(i, world_params(seed, i, next(ks), next(ns))) for i in range(worlds)]


def run_learn(cfg: ExperimentConfig, scenarios: Sequence[str] = ()) -> RunReport:
    """Run the learner over generated worlds, plus any scenario files given.

    A scenario file that breaks a world invariant raises :class:`WorldError`
    at load time.
    """
    cfg.validate()
    start = time.perf_counter()
    jobs = learn_jobs(cfg.seed, cfg.worlds, cfg.k, [cfg.n_max])
    for _, params in jobs:
        params["density"] = cfg.density
    records = _map(run_world, jobs, cfg.jobs)
    for path in scenarios:
        records.append(check_world(len(records), load_world(path), density="file"))
    for r in records:
        r.pop("passes", None)
    return RunReport("learn", cfg.public(), records, time.perf_counter() - start)


# -- transform ------------------------------------------------------------------


def _random_word(rng: random.Random, max_len: int) -> str:
    length = rng.randint(0, max_len)
    return format(rng.getrandbits(length), f"0{length}b") if length else ""


def _random_group(rng: random.Random, pool: Sequence[str], k: int) -> BoundedClause:
    size = rng.randint(0, k)
    words = rng.sample(list(pool), min(size, len(pool)))
    neg, pos = set(), set()
    for w in words:
        (neg if rng.random() < 0.5 else pos).add(w)
    return BoundedClause(frozenset(neg), frozenset(pos))


def _subsets(words: Sequence[str], rng: random.Random, limit: int = 8, samples: int = 32):
    words = list(words)
    if len(words) <= limit:
        for mask in range(1 << len(words)):
            yield {w for i, w in enumerate(words) if mask >> i & 1}
    else:
        for _ in range(samples):
            yield {w for w in words if rng.random() < 0.5}


def run_transform_instance(job: Tuple[int, int, int]) -> dict:
    index, seed, k_max = job
    rng = random.Random(f"transform:{seed}:{index}")
    k = rng.randint(1, k_max)
    pool = sorted({_random_word(rng, 6) for _ in range(rng.randint(1, 8))}, key=word_key)
    cnf = BoundedCNF(tuple(_random_group(rng, pool, k) for _ in range(rng.randint(0, 6))), k)
    dnf = BoundedDNF(tuple(_random_group(rng, pool, k) for _ in range(rng.randint(0, 4))), k)
    ah = transform_cnf(cnf)
    neg_ah = transform_cnf(negate_dbtt(dnf))
    cap = 6
    preserve = pointwise = negation = True
    for S in _subsets(pool, rng):
        lifted = lift_sparse_set(S, k, cap)
        preserve &= cnf.satisfied(S) == formula_satisfied(ah, lifted)
        for w in pool:
            pointwise &= (w in S) == (encode_tuple([w], k) in lifted)
        for g in cnf.conjuncts:
            vs = sorted(g.negatives, key=word_key)
            pointwise &= any(v not in S for v in vs) == (encode_tuple(vs, k) not in lifted)
        negation &= negate_dbtt(dnf).satisfied(S) != dnf.satisfied(S)
        negation &= formula_satisfied(neg_ah, lifted) != dnf.satisfied(S)
    roundtrip = all(
        decode_tuple(encode_tuple(t, k)) == tuple(t)
        for i in range(k + 1)
        for t in itertools.product(pool[:4], repeat=i)
    )
    arity = all(c.arity <= k for c in ah)
    return {
        "instance": index,
        "k": k,
        "words": len(pool),
        "conjuncts": len(cnf.conjuncts),
        "disjuncts": len(dnf.disjuncts),
        "checks": {
            "T preservation": preserve,
            "T pointwise": pointwise,
            "T negation": negation,
            "T roundtrip": roundtrip,
            "T arity": arity,
        },
    }


def run_transform(cfg: ExperimentConfig) -> RunReport:
    cfg.validate()
    start = time.perf_counter()
    jobs = [(i, cfg.seed, cfg.k) for i in range(cfg.formulas)]
    records = _map(run_transform_instance, jobs, cfg.jobs)
    return RunReport("transform", cfg.public(), records, time.perf_counter() - start)


# -- recover --------------------------------------------------------------------


def field_axiom_suite(seed: int, random_triples: int = 10_000) -> dict:
    """Exhaustive GF(4) axioms; randomized GF(64) axioms plus the group order."""
    checks = {}
    f4 = build_field(2)
    els = list(f4.elements())
    ok = all(f4.mul(a, b) == f4.mul(b, a) and f4.add(a, b) == f4.add(b, a) for a in els for b in els)
    ok &= all(f4.add(a, a) == 0 and f4.mul(a, 1) == a and f4.add(a, 0) == a for a in els)
    ok &= all(f4.mul(a, f4.inv(a)) == 1 for a in els if a)
    ok &= all(f4.mul(f4.add(a, b), f4.add(a, b)) == f4.add(f4.mul(a, a), f4.mul(b, b)) for a in els for b in els)
    for a, b, c in itertools.product(els, repeat=3):
        ok &= f4.mul(f4.mul(a, b), c) == f4.mul(a, f4.mul(b, c))
        ok &= f4.add(f4.add(a, b), c) == f4.add(a, f4.add(b, c))
        ok &= f4.mul(a, f4.add(b, c)) == f4.add(f4.mul(a, b), f4.mul(a, c))
    checks["F GF(4) axioms"] = ok

    f64 = build_field(6)
    rng = random.Random(f"field:{seed}")
    ok = True
    for _ in range(random_triples):
        a, b, c = (rng.randrange(64) for _ in range(3))
        ok &= f64.mul(f64.mul(a, b), c) == f64.mul(a, f64.mul(b, c))
        ok &= f64.add(f64.add(a, b), c) == f64.add(a, f64.add(b, c))
        ok &= f64.mul(a, f64.add(b, c)) == f64.add(f64.mul(a, b), f64.mul(a, c))
        ok &= f64.mul(a, b) == f64.mul(b, a)
        ok &= f64.mul(f64.add(a, b), f64.add(a, b)) == f64.add(f64.mul(a, a), f64.mul(b, b))
        if a:
            ok &= f64.mul(a, f64.inv(a)) == 1
    checks["F GF(64) axioms"] = ok
    checks["F GF(64) group order"] = all(f64.pow(a, 63) == 1 for a in range(1, 64))

    ok = True
    for n, m in ((1, 2), (2, 2), (3, 6), (6, 6)):
        ctx = build_field(m)
        for _ in range(50):
            us = rng.sample(range(ctx.order), n)
            coeffs = [rng.randrange(ctx.order) for _ in range(n)]
            vs = [poly_eval(ctx, coeffs, u) for u in us]
            ok &= solve_vandermonde(ctx, us, vs) == coeffs
    checks["F Vandermonde round trip"] = ok
    return {"suite": "field", "checks": checks}


def harness_set(seed: int, index: int) -> List[str]:
    rng = random.Random(f"harness-S:{seed}:{index}")
    S = set()
    while len(S) < HARNESS_S_SIZE:
        S.add(_random_word(rng, HARNESS_WORD_LEN - 8))
    return sorted(S, key=word_key)


def run_recover_instance(job: Tuple[int, int, int, Optional[int], bool]) -> dict:
    index, seed, n_vars, m, unsat = job
    rng = random.Random(f"recover:{seed}:{index}")
    phi = random_unsat_formula(rng, n_vars) if unsat else random_unique_formula(rng, n_vars)
    S = harness_set(seed, index)
    inst = harness_instance(phi, seed + index, S, HARNESS_WORD_LEN)
    expected = brute_force_unique_assignment(phi)
    chosen_m = m if m is not None else choose_m(phi.n_vars, inst.n_prime, inst.p)
    record = {"formula": index, "n": n_vars, "m": chosen_m, "clauses": len(phi.clauses), "unique": expected is not None}
    try:
        got = recover_assignment(inst, m)
        record["outcome"] = "recovered"
        agree = expected is not None and tuple(got) == expected
        satisfies = phi.evaluate(got)
    except NoAssignmentFound as exc:
        record["outcome"] = type(exc).__name__
        agree = expected is None
        satisfies = True
    record["checks"] = {"R agreement": agree, "R satisfies": satisfies}
    return record


def recover_jobs(seed: int, formulas: int, max_vars: int, m: Optional[int], unsat_every: int = 0):
    jobs = []
    for i in range(formulas):
        n = 1 + i % max_vars
        unsat = bool(unsat_every) and i % unsat_every == unsat_every - 1
        jobs.append((i, seed, n, m, unsat))
    return jobs


def run_recover(cfg: ExperimentConfig) -> RunReport:
    cfg.validate()
    start = time.perf_counter()
    records = [field_axiom_suite(cfg.seed)]
    records += _map(run_recover_instance, recover_jobs(cfg.seed, cfg.formulas, cfg.vars, cfg.m, unsat_every=10), cfg.jobs)
    return RunReport("recover", cfg.public(), records, time.perf_counter() - start)


# -- selftest -------------------------------------------------------------------

SELFTEST_WORLDS = 210
SELFTEST_N_VALUES = (3, 4, 5, 6, 7, 8)
SELFTEST_TRANSFORMS = 500
SELFTEST_FORMULAS = 100
SELFTEST_VARS = 6
DETERMINISM_SAMPLE = 12


def _criterion(number: int, name: str, cases: int, checks: Dict[str, bool], **extra) -> dict:
    rec = {"criterion": number, "name": name, "cases": cases, "checks": checks}
    rec.update(extra)
    return rec


def _all(records: Iterable[dict], names: Iterable[str]) -> Dict[str, bool]:
    records = list(records)
    return {n: all(r["checks"].get(n, False) for r in records) for n in names}


def run_selftest(cfg: ExperimentConfig) -> RunReport:
    cfg.validate()
    start = time.perf_counter()
    seed = cfg.seed
    timings = {}

    t = time.perf_counter()
    wjobs = learn_jobs(seed, SELFTEST_WORLDS, 3, SELFTEST_N_VALUES)
    worlds = _map(run_world, wjobs, cfg.jobs)
    timings["learn"] = time.perf_counter() - t
    a_names = [n for n in A_CHECKS if n != "A3 weight"] + ["world invariants", "internal consistency"]
    c1 = _criterion(
        1, "Claim A suite", len(worlds), _all(worlds, a_names),
        sat_runs=sum(w["sat_runs"] for w in worlds),
        packs=sum(w["packs"] for w in worlds),
        k_values=sorted({w["k"] for w in worlds}),
        max_n=max(w["n_max"] for w in worlds),
    )
    c1["checks"]["coverage >= 200 worlds"] = len(worlds) >= 200
    c2 = _criterion(2, "Weight monotonicity", sum(w["sat_runs"] for w in worlds), _all(worlds, ["A3 weight"]))
    c3 = _criterion(3, "Claim B suite", len(worlds), _all(worlds, B_CHECKS))

    t = time.perf_counter()
    tjobs = [(i, seed, 3) for i in range(SELFTEST_TRANSFORMS)]
    trans = _map(run_transform_instance, tjobs, cfg.jobs)
    timings["transform"] = time.perf_counter() - t
    c4 = _criterion(4, "Transform suite", len(trans), _all(trans, trans[0]["checks"]))

    t = time.perf_counter()
    fld = field_axiom_suite(seed)
    c5 = _criterion(5, "Field suite", 1, fld["checks"])
    rjobs = recover_jobs(seed, SELFTEST_FORMULAS, SELFTEST_VARS, None)
    rec = _map(run_recover_instance, rjobs, cfg.jobs)
    timings["recover"] = time.perf_counter() - t
    recovered = sum(1 for r in rec if r["outcome"] == "recovered" and r["checks"]["R agreement"])
    c6 = _criterion(
        6, "Recovery suite", len(rec), _all(rec, ["R agreement", "R satisfies"]),
        recovered=recovered, m_values=sorted({r["m"] for r in rec}),
    )
    c6["checks"]["R 100/100"] = recovered == SELFTEST_FORMULAS

    again_w = [run_world(j) for j in wjobs[:DETERMINISM_SAMPLE]]
    again_r = [run_recover_instance(j) for j in rjobs[:DETERMINISM_SAMPLE]]
    c7 = _criterion(
        7, "Determinism", 2 * DETERMINISM_SAMPLE,
        {"D rerun identical": again_w == worlds[:DETERMINISM_SAMPLE] and again_r == rec[:DETERMINISM_SAMPLE]},
    )
    details = {"worlds": worlds, "transforms": trans, "recoveries": rec}
    return RunReport("selftest", cfg.public(), [c1, c2, c3, c4, c5, c6, c7], time.perf_counter() - start, timings, details)


RUNNERS = {"learn": run_learn, "transform": run_transform, "recover": run_recover, "selftest": run_selftest}


def run(cfg: ExperimentConfig, scenarios: Sequence[str] = ()) -> RunReport:
    if cfg.command == "learn":
        return run_learn(cfg, scenarios)
    return RUNNERS[cfg.command](cfg)
