class UltralevelsError(Exception):
    pass


class DomainError(UltralevelsError, ValueError):
    """Argument outside the domain of an operation or map."""


class NoSuchWitness(UltralevelsError, ValueError):
    pass


class FIPViolation(UltralevelsError):
    """Some intersection of generators has no member up to the checked bound."""

    def __init__(self, gens, bound):
        self.gens = tuple(gens)
        self.bound = bound
        shown = ", ".join(str(g) for g in self.gens)
        super().__init__(f"empty intersection on [1, {bound}]: {shown}")


class DisjointnessUnsatisfiable(UltralevelsError):
    pass


class UnknownSuite(UltralevelsError, KeyError):
    pass


class ParseError(UltralevelsError, ValueError):
    pass
