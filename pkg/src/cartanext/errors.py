"""Exception hierarchy shared across the package."""


class CartanextError(Exception):
    """Base class for all package errors."""


class InputError(CartanextError):
    """Bad arguments: wrong shapes, unsupported families, out-of-range ranks."""


class DependentBasisError(InputError):
    """A proposed basis is linearly dependent."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"dependent basis: element {index} lies in the span of the previous ones")


class ClosureError(InputError):
    """A proposed basis is not closed under the commutator."""

    def __init__(self, i, j):
        self.pair = (i, j)
        super().__init__(f"not closed under bracket: [basis[{i}], basis[{j}]] escapes the span")


class StructuralError(CartanextError):
    """A structural obstruction, e.g. mismatched module dimensions."""


class InternalCheckError(CartanextError):
    """An internal consistency assertion failed; indicates a construction bug."""
