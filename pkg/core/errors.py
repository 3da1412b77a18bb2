"""
Exceções do domínio de enumeração e análise.

Cada classe herda do builtin mais próximo, para que chamadores genéricos
continuem capturando ValueError, KeyError etc.
"""


class WidthLimitError(ValueError):
    """Fronteira mais larga do que cabe em uma palavra de 64 bits."""


class MalformedSignatureError(ValueError):
    """Assinatura com perfil de altura inválido ou arco sem par."""


class CountOverflowError(OverflowError):
    """Contagem excedeu 64 bits; use precisão arbitrária."""


class UnknownProblemError(KeyError):
    """Identificador de problema fora do registro."""


class SeriesFormatError(ValueError):
    """Arquivo de série ou de resíduos malformado."""


class InsufficientTermsError(ValueError):
    """Série curta demais para o método pedido."""


class InsufficientPrimesError(ArithmeticError):
    """O produto dos primos não cobre a contagem exata."""


class MemoryBudgetError(MemoryError):
    """Vetor de contagens maior que o orçamento de memória."""


class SearchBudgetError(RuntimeError):
    """A busca exaustiva excedeu o número máximo de passos."""


class InPlaceViolationError(AssertionError):
    """Contagem lida depois de escrita dentro do mesmo movimento."""


class DefectiveApproximantError(ArithmeticError):
    """Sistema linear singular ou aproximante com singularidade espúria."""
