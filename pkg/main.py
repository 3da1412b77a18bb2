"""
Travessia: enumeração exata de caminhos e polígonos autoevitantes que
atravessam domínios finitos das redes quadrada e hexagonal.

Este programa usa:
- Matriz de transferência sobre a linha de fronteira
- Hash perfeito por caminhos de Motzkin
- Contagem modular com reconstrução pelo teorema chinês do resto
- Análise de séries (razões, ajustes, Padé, aproximantes diferenciais)
"""
import argparse
import sys
from typing import List, Optional, Sequence

from config import PREDICTION_CUTOFF, PREDICTION_ORDER, TRIM_FRACTION, WORKERS
from core.errors import (
    InsufficientPrimesError,
    InsufficientTermsError,
    MemoryBudgetError,
    SearchBudgetError,
    SeriesFormatError,
    UnknownProblemError,
    WidthLimitError,
)
from core.problems import PROBLEMS
from cli import CliHandlers, CliMessages, RunConfig
from cli.run_config import METHODS
from utils.logger import logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN_PROBLEM = 3
EXIT_SERIES_FORMAT = 4
EXIT_INSUFFICIENT_TERMS = 5
EXIT_RESOURCES = 6
EXIT_INTERRUPTED = 130

# a ordem importa: SeriesFormatError e InsufficientTermsError são ValueError
EXIT_CODES = (
    (UnknownProblemError, EXIT_UNKNOWN_PROBLEM),
    (SeriesFormatError, EXIT_SERIES_FORMAT),
    (InsufficientTermsError, EXIT_INSUFFICIENT_TERMS),
    (InsufficientPrimesError, EXIT_RESOURCES),
    (MemoryBudgetError, EXIT_RESOURCES),
    (WidthLimitError, EXIT_RESOURCES),
    (SearchBudgetError, EXIT_RESOURCES),
)


def _ints(text: str) -> List[int]:
    return [int(v) for v in text.replace(",", " ").split()]


def _floats(text: str) -> List[float]:
    return [float(v) for v in text.replace(",", " ").split()]


def _pairs(text: str) -> List[tuple]:
    """"13/13,12/10" → [(13, 13), (12, 10)]."""
    out = []
    for item in text.replace(",", " ").split():
        m, _, n = item.partition("/")
        out.append((int(m), int(n)))
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="travessia", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    enum = sub.add_parser("enumerate", help="contagens exatas por matriz de transferência")
    enum.add_argument("--problem", required=True, help=f"um de: {', '.join(sorted(PROBLEMS))}")
    enum.add_argument("--lmax", type=int, required=True, dest="L_max")
    enum.add_argument("--lmin", type=int, default=1, dest="L_min")
    enum.add_argument("--primes", type=int, default=None, help="quantidade de primos (padrão: a cota)")
    enum.add_argument("--workers", type=int, default=WORKERS)
    enum.add_argument("--verify", action="store_true", help="confere cada L com um primo extra")
    enum.add_argument("--out")

    comb = sub.add_parser("combine", help="reconstrói por CRT arquivos de resíduos")
    comb.add_argument("--residues", nargs="+", required=True)
    comb.add_argument("--out")

    ext = sub.add_parser("extend", help="anexa coeficientes previstos a uma série")
    ext.add_argument("--series", required=True)
    ext.add_argument("--terms", type=int, default=1)
    ext.add_argument("--cutoff", type=float, default=PREDICTION_CUTOFF)
    ext.add_argument("--order", type=int, default=PREDICTION_ORDER, help="ordem M dos aproximantes diferenciais")
    ext.add_argument("--out")

    ana = sub.add_parser("analyze", help="estimativas assintóticas em CSV")
    ana.add_argument("--series", required=True)
    ana.add_argument("--method", required=True, choices=METHODS)
    ana.add_argument("--lambda", type=float, dest="lam")
    ana.add_argument("--g", type=float, default=0.0)
    ana.add_argument("--zc", type=float, dest="z_c")
    ana.add_argument("--gamma", type=float)
    ana.add_argument("--fit-powers", type=_ints, help="potências de 1/L do ajuste; padrão por método")
    ana.add_argument("--order", type=int, default=PREDICTION_ORDER, help="ordem M dos aproximantes diferenciais")
    ana.add_argument("--pade", type=_pairs, default=[], dest="pade_pairs", help='pares "m/n,m/n"')
    ana.add_argument("--lambda-grid", type=_floats, default=[])
    ana.add_argument("--trim", type=float, default=TRIM_FRACTION)
    ana.add_argument("--m2-cap", type=int, default=None)
    ana.add_argument("--ratio-cap", type=int, default=None)
    ana.add_argument("--holdout", type=int, default=1)
    ana.add_argument("--cutoff", type=float, default=PREDICTION_CUTOFF)
    ana.add_argument("--out")

    test = sub.add_parser("selftest", help="confere a varredura contra a busca exaustiva e as tabelas")
    test.add_argument("--workers", type=int, default=WORKERS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if v is not None}
    for key in ("fit_powers", "lambda_grid", "residues"):
        if key in values:
            values[key] = tuple(values[key])
    if "pade_pairs" in values:
        values["pade_pairs"] = tuple(tuple(p) for p in values["pade_pairs"])
    return RunConfig(**values).validate()


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Executa um subcomando e devolve o código de saída."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    messages = CliMessages()
    try:
        config = config_from_args(args)
    except UnknownProblemError as e:
        print(messages.error_message("UnknownProblemError", str(e)), file=sys.stderr)
        return EXIT_UNKNOWN_PROBLEM
    except (TypeError, ValueError) as e:
        print(messages.error_message("Uso", str(e)), file=sys.stderr)
        return EXIT_USAGE
    try:
        return CliHandlers(config).run()
    except Exception as e:
        for kind, code in EXIT_CODES:
            if isinstance(e, kind):
                print(messages.error_message(kind.__name__, str(e)), file=sys.stderr)
                return code
        logger.error(f"❌ Erro fatal: {e}", exc_info=True)
        print(messages.error_message("Erro", str(e)), file=sys.stderr)
        return EXIT_FAILURE


def main():
    """Função principal."""
    print(CliMessages.banner(), file=sys.stderr)
    try:
        code = dispatch()
    except KeyboardInterrupt:
        print(CliMessages.farewell(), file=sys.stderr)
        code = EXIT_INTERRUPTED
    sys.exit(code)


if __name__ == "__main__":
    main()
