# pst_errors.py - Hierarchia wyjątków biblioteki PST

"""
Wszystkie wyjątki biblioteki dziedziczą po PstError i niosą kod wyjścia,
którego używa CLI. Funkcje biblioteczne tylko zgłaszają wyjątki; tłumaczenie
na kody wyjścia odbywa się wyłącznie w warstwie CLI.
"""

from typing import Optional

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_NO_SOLUTION = 3
EXIT_TOO_LARGE = 4
EXIT_VERIFICATION_FAILED = 5
EXIT_CERTIFICATION_FAILED = 6


class PstError(Exception):
    """Bazowy wyjątek biblioteki"""

    exit_code = 1


# ============================================================================
# Błędy danych wejściowych (exit 2)
# ============================================================================

class PstInputError(PstError):
    """Niepoprawne dane wejściowe"""

    exit_code = EXIT_INPUT_ERROR


class DuplicateLabel(PstInputError):
    pass


class DuplicateEdge(PstInputError):
    pass


class SelfLoop(PstInputError):
    pass


class UnknownEndpoint(PstInputError):
    pass


class InvalidVertex(PstInputError):
    pass


class EdgeNotInHost(PstInputError):
    pass


class WeightedCoupling(PstInputError):
    pass


class InvalidBoundary(PstInputError):
    pass


class EmptyGraph(PstInputError):
    pass


class InvalidTime(PstInputError):
    pass


class InvalidRound(PstInputError):
    pass


class RoutingInputError(PstInputError):
    """Naruszenie niezmienników Net / RoutingProblem"""


class ConfigError(PstInputError):
    pass


class TooManyQubits(PstInputError):
    pass


class DimensionMismatch(PstInputError):
    pass


class MalformedDocument(PstInputError):
    """Błędny dokument JSON; komunikat wskazuje linię albo ścieżkę pola"""

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.field = field
        self.line = line
        location = []
        if line is not None:
            location.append(f"linia {line}")
        if field:
            location.append(f"pole {field}")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


# ============================================================================
# Błędy numeryczne i wyszukiwania
# ============================================================================

class ConvergenceFailure(PstError):
    pass


class TokenCollision(PstError):
    def __init__(self, round_index: int, position: int, tokens):
        self.round_index = round_index
        self.position = position
        self.tokens = tuple(tokens)
        super().__init__(
            f"Kolizja tokenów {self.tokens} w wierzchołku {position} po rundzie {round_index}"
        )


class AmplitudeLoss(PstError):
    def __init__(self, round_index: int, token, magnitude: float):
        self.round_index = round_index
        self.token = token
        self.magnitude = magnitude
        super().__init__(
            f"Utrata amplitudy: token {token}, runda {round_index}, |a| = {magnitude:.6f}"
        )


class Disconnected(PstError):
    pass


class SearchExhausted(PstError):
    pass


# ============================================================================
# Wyniki poleceń
# ============================================================================

class NoSolution(PstError):
    exit_code = EXIT_NO_SOLUTION


class InstanceTooLarge(PstError):
    exit_code = EXIT_TOO_LARGE
