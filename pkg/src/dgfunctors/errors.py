class InvariantError(ValueError):
    """A value violates a structural invariant (d^2 = 0, naturality, ...)."""

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class AxiomError(ValueError):
    """An enriched-category axiom fails where a construction requires it."""
