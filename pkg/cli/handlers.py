"""
Handlers dos subcomandos da CLI.
"""
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, TextIO, Tuple

import mpmath as mp
import pandas as pd

from config import GOLDEN_DIR, MP_DPS, RESIDUE_DIR, SERIES_DIR
from core.errors import InsufficientTermsError
from core.exact_count import (
    Series,
    combine_residue_files,
    enumerate_exact,
    generate_primes,
    read_series,
    write_series,
)
from core.analysis import (
    biased_exponent_scan,
    da_batch,
    m1_lambda,
    m2_ratio_of_ratios,
    p1_subdominant,
    p2_triple_fit,
    pade_table,
    parity_adjusted_ratios,
    predict_coefficients,
    ratio_estimators,
    ratio_series,
    scan_crossing,
)
from core.oracle import dfs_count
from core.problems import get_problem
from core.tm_engine import audited_sweep, sweep
from cli.messages import CliMessages
from cli.run_config import RunConfig
from utils.logger import logger

Row = Dict[str, object]
Summary = Dict[str, object]

# (problema, L) verificados pelo selftest; pequenos o bastante para o DFS
SELFTEST_CASES: Tuple[Tuple[str, int], ...] = (
    ("sq-saw-crossing", 3),
    ("sq-saw-spanning", 2),
    ("sq-sap-crossing", 3),
    ("hex-rhombus-saw", 3),
    ("hex-rhombus-span", 2),
    ("hex-rhombus-sap", 3),
    ("hex-triangle-saw", 4),
    ("hex-triangle-saw-top", 3),
    ("hex-triangle-sap", 4),
    ("hex-triangle-sap-top", 3),
    ("hex-square-saw", 3),
)


def _cell(value) -> object:
    if value is None:
        return ""
    if isinstance(value, (mp.mpf, mp.mpc)):
        return mp.nstr(value, 15)
    if isinstance(value, float):
        return repr(value)
    return value


@contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        yield handle


def write_csv(path: Optional[str], config: RunConfig, rows: Sequence[Row], summary: Summary) -> None:
    """Cabeçalho `# config:`, uma linha por L ou aproximante e o bloco `# summary`."""
    columns: List[str] = []
    for row in rows:
        columns += [k for k in row if k not in columns]
    with _output(path) as handle:
        for line in config.header_lines():
            handle.write(line + "\n")
        if columns:
            table = pd.DataFrame([[_cell(row.get(k)) for k in columns] for row in rows], columns=columns)
            table.to_csv(handle, index=False, lineterminator="\n")
        handle.write("# summary\n")
        for key, value in summary.items():
            handle.write(f"# {key}: {_cell(value)}\n")


class CliHandlers:
    """Executa um RunConfig já validado."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.messages = CliMessages()
        self.analyses: Dict[str, Callable[[Series], Tuple[List[Row], Summary]]] = {
            "m1": self._m1,
            "m2": self._m2,
            "p1": self._p1,
            "p2": self._p2,
            "p3": self._p3,
            "ratio": self._ratio,
            "pade": self._pade,
            "da": self._da,
            "bda-scan": self._bda_scan,
            "predict-check": self._predict_check,
        }

    def run(self) -> int:
        command = self.config.command.replace("-", "_")
        return getattr(self, f"cmd_{command}")()

    # ------------------------------------------------------------ enumeração

    def cmd_enumerate(self) -> int:
        cfg = self.config
        primes = generate_primes(cfg.primes) if cfg.primes else None
        series = enumerate_exact(
            cfg.problem,
            cfg.L_max,
            primes=primes,
            workers=cfg.workers,
            verify=cfg.verify,
            L_min=cfg.L_min,
            residue_dir=RESIDUE_DIR,
            config=cfg.to_dict(),
        )
        out = cfg.out or str(Path(SERIES_DIR) / f"{cfg.problem}.series")
        write_series(series, out)
        print(self.messages.enumerated(cfg.problem, cfg.L_max, out))
        return 0

    def cmd_combine(self) -> int:
        cfg = self.config
        series = combine_residue_files(cfg.residues)
        series.config = cfg.to_dict()
        out = cfg.out or str(Path(SERIES_DIR) / f"{series.problem}.series")
        write_series(series, out)
        print(self.messages.combined(series.problem, len(series), out))
        return 0

    def cmd_extend(self) -> int:
        cfg = self.config
        series = read_series(cfg.series)
        prediction = predict_coefficients(series, cfg.terms, cfg.cutoff, order=cfg.order)
        if not prediction.coefficients:
            print(self.messages.nothing_predicted(prediction.diagnostic))
            return 0
        extended = series.exact()
        for entry in prediction.entries():
            extended.add(entry)
        extended.config = cfg.to_dict()
        out = cfg.out or cfg.series
        write_series(extended, out)
        print(self.messages.extended(series.problem, len(prediction.coefficients), out))
        return 0

    # --------------------------------------------------------------- análise

    def cmd_analyze(self) -> int:
        cfg = self.config
        series = read_series(cfg.series)
        logger.info(f"🔄 Análise {cfg.method} de {series.problem} ({len(series)} termos)")
        rows, summary = self.analyses[cfg.method](series)
        write_csv(cfg.out, cfg, rows, summary)
        if cfg.out:
            print(self.messages.analyzed(cfg.method, cfg.out))
        return 0

    def _size_exponent(self, series: Series) -> int:
        return get_problem(series.problem).size_exponent

    def _powers(self) -> Dict[str, Tuple[int, ...]]:
        """--fit-powers, quando dado; senão cada método usa o seu padrão."""
        return {"fit_powers": self.config.fit_powers} if self.config.fit_powers else {}

    def _m1(self, series: Series) -> Tuple[List[Row], Summary]:
        fit = m1_lambda(series.capped(self.config.ratio_cap), self._size_exponent(series), **self._powers())
        rows = [{"L": L, "lambda_L": fit.raw[L], "extrapolated": fit.estimates.get(L)} for L in sorted(fit.raw)]
        return rows, {"lambda": fit.lam, **fit.extras, **fit.spec()}

    def _m2(self, series: Series) -> Tuple[List[Row], Summary]:
        fit = m2_ratio_of_ratios(
            series.capped(self.config.m2_cap), size_exponent=self._size_exponent(series), **self._powers()
        )
        rows = [{"L": L, "ratio_of_ratios": fit.raw[L], "c0": fit.estimates.get(L)} for L in sorted(fit.raw)]
        return rows, {"lambda": fit.lam, "c0": fit.extras["c0"], **fit.spec()}

    def _p3(self, series: Series) -> Tuple[List[Row], Summary]:
        if series.problem == "hex-square-saw":
            parity = parity_adjusted_ratios(series.capped(self.config.m2_cap), **self._powers())
            rows = [
                {"L": L, "r_star": parity.r_star.get(L), "c_star": parity.c_star.get(L),
                 "c_star_averaged": parity.averaged.get(L)}
                for L in sorted(parity.r_star)
            ]
            summary: Summary = {"method": "parity"}
            if parity.fit is not None:
                summary.update({"lambda": parity.fit.lam, **parity.fit.extras, **parity.fit.spec()})
            return rows, summary
        fit = m2_ratio_of_ratios(
            series.capped(self.config.m2_cap), size_exponent=self._size_exponent(series), **self._powers()
        )
        c2 = fit.extras.get("c2_sequence", {})
        rows = [{"L": L, "c2": c2[L], "g_L": -c2[L] / fit.estimates[L]} for L in sorted(c2)]
        return rows, {"g": fit.g, "c2": fit.extras.get("c2"), "lambda": fit.lam, **fit.spec()}

    def _p1(self, series: Series) -> Tuple[List[Row], Summary]:
        cfg = self.config
        fit = p1_subdominant(
            series.capped(cfg.ratio_cap), cfg.lam, cfg.g, self._size_exponent(series), **self._powers()
        )
        rows = [{"L": L, "alpha_L": fit.raw.get(L), "amplitude_L": fit.estimates.get(L)} for L in sorted(fit.estimates)]
        return rows, {
            "lambda": fit.lam, "g": fit.g, "alpha": fit.extras["alpha"],
            "amplitude": fit.extras["amplitude"], "b": fit.b, "c": fit.c, **fit.spec(),
        }

    def _p2(self, series: Series) -> Tuple[List[Row], Summary]:
        triples = p2_triple_fit(series.capped(self.config.ratio_cap), self.config.lam, self._size_exponent(series))
        rows = [
            {"L": t.L, "b_log_lambda": t.b_log_lambda, "c_log_lambda": t.c_log_lambda, "g": t.g}
            for t in triples
        ]
        last = triples[-1]
        return rows, {"lambda": self.config.lam, "b_log_lambda": last.b_log_lambda,
                      "c_log_lambda": last.c_log_lambda, "g": last.g}

    def _ratio(self, series: Series) -> Tuple[List[Row], Summary]:
        cfg = self.config
        est = ratio_estimators(series.capped(cfg.ratio_cap), z_c=cfg.z_c, gamma=cfg.gamma)
        rows = est.rows()
        return rows, {"terms": len(series), "z_c": cfg.z_c, "gamma": cfg.gamma}

    def _growth(self, series: Series, z) -> Optional[mp.mpf]:
        """A série de razões tem raio 1/λ^{2p}."""
        if z is None:
            return None
        with mp.workdps(MP_DPS):
            return mp.power(mp.mpf(z), mp.mpf(-1) / (2 * self._size_exponent(series)))

    def _pade(self, series: Series) -> Tuple[List[Row], Summary]:
        ratios = [r for _, r in ratio_series(series.exact())]
        pairs = self.config.pade_pairs or tuple(
            (m, n) for n in range(1, len(ratios)) for m in range(1, len(ratios))
            if len(ratios) - 3 <= m + n + 1 <= len(ratios) and abs(m - n) <= 2
        )
        rows = []
        for approximant in pade_table(ratios, pairs):
            rows.append({
                "m": approximant.m, "n": approximant.n, "root": approximant.root,
                "lambda": self._growth(series, approximant.root),
            })
        growth = [r["lambda"] for r in rows if r["lambda"] is not None]
        return rows, {"approximants": len(rows), "lambda_last": growth[-1] if growth else None}

    def _da(self, series: Series) -> Tuple[List[Row], Summary]:
        ratios = [r for _, r in ratio_series(series.exact())]
        batch = da_batch(ratios, self.config.order)
        rows = [
            {"degrees": " ".join(map(str, e.degrees)), "K": e.K, "z_c": e.z, "exponent": e.exponent,
             "lambda": self._growth(series, e.z)}
            for e in batch.estimates
        ]
        return rows, {
            "approximants": batch.count, "rejected": batch.rejected,
            "z_c": batch.z_mean, "z_c_stderr": batch.z_std,
            "exponent": batch.exponent_mean, "exponent_stderr": batch.exponent_std,
            "lambda": self._growth(series, batch.z_mean),
        }

    def _bda_scan(self, series: Series) -> Tuple[List[Row], Summary]:
        cfg = self.config
        p = self._size_exponent(series)
        ratios = [r for _, r in ratio_series(series.exact())]
        # ẑ = 1/λ̂^{2p}: a grade é dada em λ e o viés usa λ^p
        points = biased_exponent_scan(ratios, [lam ** p for lam in cfg.lambda_grid], cfg.trim, cfg.order)
        rows = []
        for lam, point in zip(cfg.lambda_grid, points):
            rows.append({"lambda": lam, "mean_exponent": point.mean, "stderr": point.stderr,
                         "approximants": point.count, "reliable": point.reliable})
        crossing = scan_crossing(points)
        return rows, {"crossing_lambda": crossing ** (1.0 / p) if crossing else None, "trim": cfg.trim}

    def _predict_check(self, series: Series) -> Tuple[List[Row], Summary]:
        cfg = self.config
        exact = series.exact()
        if len(exact) <= cfg.holdout + 3:
            raise InsufficientTermsError(f"Série curta demais para reter {cfg.holdout} termos")
        kept = Series(exact.problem, exact.entries[: len(exact) - cfg.holdout])
        withheld = exact.entries[len(exact) - cfg.holdout:]
        prediction = predict_coefficients(kept, cfg.holdout, cfg.cutoff, order=cfg.order)
        rows, covered = [], 0
        with mp.workdps(MP_DPS):
            for term, truth in zip(prediction.coefficients, withheld):
                error = abs(term.value - mp.mpf(truth.value))
                inside = error <= term.stderr
                covered += inside
                rows.append({
                    "L": term.L, "predicted": term.value, "stderr": term.stderr,
                    "exact": truth.value, "relative_error": error / mp.mpf(truth.value),
                    "within_stderr": inside,
                })
        return rows, {"predicted": len(rows), "within_stderr": covered,
                      "approximants": prediction.approximants, "diagnostic": prediction.diagnostic}

    # --------------------------------------------------------------- selftest

    def cmd_selftest(self) -> int:
        p = generate_primes(1)[0]
        passed = total = 0
        for problem, L in SELFTEST_CASES:
            total += 1
            ok, detail = self._check(problem, L, p)
            passed += ok
            print(self.messages.selftest_row(f"{problem} L={L}", ok, detail))
        print(self.messages.selftest_summary(passed, total))
        return 0 if passed == total else 1

    def _check(self, problem: str, L: int, p: int) -> Tuple[bool, str]:
        try:
            fast = sweep(problem, L, p, workers=self.config.workers)
            audited = audited_sweep(problem, L, p)
            brute = dfs_count(problem, L)
            golden_path = Path(GOLDEN_DIR) / f"{problem}.series"
            golden = read_series(golden_path).value_at(L) if golden_path.exists() else brute
        except Exception as e:
            logger.error(f"❌ selftest {problem} L={L}: {e}", exc_info=True)
            return False, str(e)[:80]
        ok = fast == audited == brute % p and golden == brute
        return ok, f"tm={fast} dfs={brute} golden={golden}"

