"""Finite-horizon inequality suites over a fixed zoo of example sets.

The inequalities being probed hold for limits (or limits of sups); at
finite scale each is checked with a slack.  Every check records the
numbers it compared so a failure can be read directly.

* ``chain``: lower r-densities <= lower log density <= upper log density
  <= upper r-densities, with r-densities ordered in r.  Lower and upper
  values are the min and max over the tail of a horizon grid.  Densities
  are normalized by the same sum over all of ``[1, n]``, which has the
  same limit as the textbook normalization and much less finite-n bias.
* ``thm25``: ``ud_r(A) >= 1 - (1 - ud(A))**r`` on periodic sets.
* ``prop31``: Banach density of the ``log2`` image at window length L
  against the log Banach density at multiplier ``2**L``.
* ``prop36``: Banach density of the ``A**r`` image against the r-Banach
  density, both at window length n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .density import (banach_sup_estimate, default_candidates, horizon_grid, log_density_at,
                      r_density_at)
from .families import (gen_factorial_blocks, gen_mth_power_blocks, gen_periodic, gen_pow2_blocks,
                       gen_remark26_blocks, gen_sparse_blocks, gen_squared_seq, gen_squarefree)
from .intset import IntegerSet
from .io import RunConfig
from .transforms import ceil_log2, ceil_root, log_image, power_image


@dataclass
class CheckResult:
    suite: str
    subject: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.suite:7s} {self.subject}: {self.detail}"


@dataclass
class Tolerances:
    chain: float = 0.02
    thm25: float = 0.01
    prop: float = 0.05

    @classmethod
    def from_config(cls, cfg: RunConfig) -> "Tolerances":
        # one knob scales all three; the defaults correspond to tolerance=0.02
        t = cfg.tolerance
        return cls(chain=t, thm25=t / 2, prop=t * 5 / 2)


# -- chain -------------------------------------------------------------------

@dataclass(frozen=True)
class ChainCase:
    name: str
    build: Callable[[], IntegerSet]
    horizons: tuple  # the tail of the grid over which min/max are taken


def chain_cases() -> list[ChainCase]:
    return [
        ChainCase("periodic {0,1 mod 3}", lambda: gen_periodic(3, [0, 1], 2 ** 20),
                  tuple(horizon_grid(2 ** 17, 2, 4))),
        ChainCase("pow2-blocks delta=2/5", lambda: gen_pow2_blocks(Fraction(2, 5), 2 ** 260),
                  tuple(horizon_grid(2 ** 224, Fraction(5, 4), 100))),
        ChainCase("factorial-blocks", lambda: gen_factorial_blocks(10 ** 200),
                  tuple(horizon_grid(10 ** 150, Fraction(3, 2), 120))),
        ChainCase("remark26-blocks", lambda: gen_remark26_blocks(2 ** 1100),
                  tuple(horizon_grid(2 ** 300, 2, 780))),
    ]


CHAIN_EXPONENTS = (Fraction(1, 3), Fraction(1, 2), Fraction(1))


def chain_values(A: IntegerSet, horizons, exponents=CHAIN_EXPONENTS) -> dict:
    """``{"ld": {r: min}, "ud": {r: max}, "lld": min, "uld": max}`` over ``horizons``."""
    ld, ud = {}, {}
    for r in exponents:
        vals = [r_density_at(A, n, r, normalization="relative").value for n in horizons]
        ld[r] = min(v.lo for v in vals)
        ud[r] = max(v.hi for v in vals)
    logs = [log_density_at(A, n, normalization="relative").value for n in horizons]
    return {"ld": ld, "ud": ud, "lld": min(v.lo for v in logs), "uld": max(v.hi for v in logs)}


def chain_holds(vals: dict, tol: float) -> list[str]:
    """Violated links of the chain, as readable strings (empty when it holds)."""
    tol = Fraction(tol)
    rs = sorted(vals["ld"])
    bad = []
    for r, s in zip(rs, rs[1:]):
        if vals["ld"][s] > vals["ld"][r] + tol:
            bad.append(f"ld_{s} > ld_{r}")
        if vals["ud"][r] > vals["ud"][s] + tol:
            bad.append(f"ud_{r} > ud_{s}")
    for r in rs:
        if vals["ld"][r] > vals["lld"] + tol:
            bad.append(f"ld_{r} > lld")
        if vals["uld"] > vals["ud"][r] + tol:
            bad.append(f"uld > ud_{r}")
    if vals["lld"] > vals["uld"] + tol:
        bad.append("lld > uld")
    return bad


def run_chain(tol: Tolerances) -> list[CheckResult]:
    out = []
    for case in chain_cases():
        vals = chain_values(case.build(), case.horizons)
        bad = chain_holds(vals, tol.chain)
        shown = " ".join([f"ld_{r}={float(v):.4f}" for r, v in vals["ld"].items()]
                         + [f"lld={float(vals['lld']):.4f}", f"uld={float(vals['uld']):.4f}"]
                         + [f"ud_{r}={float(v):.4f}" for r, v in vals["ud"].items()])
        out.append(CheckResult("chain", case.name, not bad,
                               shown + ("" if not bad else "; violated: " + ", ".join(bad))))
    return out


# -- r-density lower bound on periodic sets ---------------------------------

THM25_SETS = ((3, (0,)), (2, (1,)), (3, (0, 1)))
THM25_EXPONENTS = (Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(3, 4), Fraction(1))
THM25_HORIZONS = (10 ** 4, 10 ** 5, 10 ** 6)


def run_thm25(tol: Tolerances) -> list[CheckResult]:
    out = []
    for modulus, residues in THM25_SETS:
        alpha = Fraction(len(residues), modulus)
        A = gen_periodic(modulus, residues, max(THM25_HORIZONS))
        for r in THM25_EXPONENTS:
            bound = 1 - (1 - float(alpha)) ** float(r)
            for n in THM25_HORIZONS:
                v = r_density_at(A, n, r).value
                ok = float(v.hi) >= bound - tol.thm25
                out.append(CheckResult(
                    "thm25", f"alpha={alpha} r={r} n={n}", ok,
                    f"density hi={float(v.hi):.5f} vs bound {bound:.5f}"))
    return out


# -- transfer under log and power maps -------------------------------------

def transform_zoo() -> list[tuple[str, IntegerSet]]:
    return [
        ("factorial-blocks", gen_factorial_blocks(10 ** 30)),
        ("pow2-blocks 2/5", gen_pow2_blocks(Fraction(2, 5), 2 ** 64)),
        ("sparse-blocks j=2", gen_sparse_blocks(2, 10 ** 40)),
        ("squared-seq 1/2,1", gen_squared_seq(2, Fraction(1, 2), 1, 2 ** 64)),
        ("remark26-blocks", gen_remark26_blocks(2 ** 64)),
        ("mth-power-blocks 2,1/5", gen_mth_power_blocks(2, Fraction(1, 5), 10 ** 6)),
        ("squarefree", gen_squarefree(2 * 10 ** 4)),
    ]


PROP31_LENGTHS = (4, 8, 16, 32)
PROP36_SCALES = (16, 256, 4096)
PROP36_EXPONENTS = (Fraction(1, 2), Fraction(1, 3))


def run_prop31(tol: Tolerances) -> list[CheckResult]:
    out = []
    for name, A in transform_zoo():
        img = log_image(A)
        cands = default_candidates(A)
        img_cands = sorted(set(default_candidates(img)) | {ceil_log2(k) for k in cands})
        for L in PROP31_LENGTHS:
            src, k = banach_sup_estimate(A, 2 ** L, None, cands)
            dst, k2 = banach_sup_estimate(img, L, 1, img_cands)
            ok = dst.value.lo >= src.value.hi - Fraction(tol.prop)
            out.append(CheckResult(
                "prop31", f"{name} L={L}", ok,
                f"BD(log A)={float(dst.value.lo):.4f} (k={k2}) vs lBD(A)={float(src.value.hi):.4f}"))
    return out


def run_prop36(tol: Tolerances) -> list[CheckResult]:
    out = []
    for name, A in transform_zoo():
        cands = default_candidates(A)
        for r in PROP36_EXPONENTS:
            img = power_image(A, r.numerator, r.denominator)
            img_cands = sorted(set(default_candidates(img))
                               | {ceil_root(k, r.numerator, r.denominator) for k in cands})
            for n in PROP36_SCALES:
                src, _ = banach_sup_estimate(A, n, r, cands)
                dst, k2 = banach_sup_estimate(img, n, 1, img_cands)
                ok = dst.value.lo >= src.value.hi - Fraction(tol.prop)
                out.append(CheckResult(
                    "prop36", f"{name} r={r} n={n}", ok,
                    f"BD(A^r)={float(dst.value.lo):.4f} (k={k2}) vs BD_r(A)={float(src.value.hi):.4f}"))
    return out


SUITES = {"chain": run_chain, "thm25": run_thm25, "prop31": run_prop31, "prop36": run_prop36}


def run_suite(name: str, cfg: Optional[RunConfig] = None) -> list[CheckResult]:
    tol = Tolerances.from_config(cfg or RunConfig())
    if name == "all":
        return [res for fn in SUITES.values() for res in fn(tol)]
    try:
        return SUITES[name](tol)
    except KeyError:
        raise ValueError(f"unknown suite {name!r}") from None
