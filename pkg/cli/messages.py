"""
Templates de mensagens da linha de comando.
"""
from config import MEMORY_BUDGET_MB, WORKERS


class CliMessages:
    """Mensagens padronizadas da CLI."""

    @staticmethod
    def banner() -> str:
        return (
            f"\n{'=' * 60}\n"
            f"🧭 TRAVESSIA: enumeração exata de caminhos e polígonos\n"
            f"{'=' * 60}\n"
            f"🧵 Threads padrão: {WORKERS}\n"
            f"💾 Orçamento de memória: {MEMORY_BUDGET_MB} MB"
        )

    @staticmethod
    def enumerated(problem: str, L_max: int, path: str) -> str:
        return f"✅ {problem}: L até {L_max} gravado em {path}"

    @staticmethod
    def combined(problem: str, count: int, path: str) -> str:
        return f"🔗 {problem}: {count} termos reconstruídos em {path}"

    @staticmethod
    def extended(problem: str, count: int, path: str) -> str:
        return f"🔮 {problem}: {count} termos previstos anexados em {path}"

    @staticmethod
    def nothing_predicted(diagnostic: str) -> str:
        return f"⚠️ Nenhum termo previsto: {diagnostic}"

    @staticmethod
    def analyzed(method: str, path: str) -> str:
        return f"📊 Análise {method} gravada em {path}"

    @staticmethod
    def selftest_row(name: str, ok: bool, detail: str = "") -> str:
        mark = "✅" if ok else "❌"
        return f"{mark} {name:<40} {detail}"

    @staticmethod
    def selftest_summary(passed: int, total: int) -> str:
        return f"\n🧪 {passed}/{total} verificações passaram"

    @staticmethod
    def error_message(kind: str, error: str) -> str:
        return f"❌ {kind}: {error[:300]}"

    @staticmethod
    def farewell() -> str:
        return "\n👋 Execução interrompida."
