"""Exception hierarchy.

``InvalidInput`` covers data that cannot be interpreted at all (unknown
labels, malformed permutations, schema problems).  ``PreconditionFailed``
and ``InconsistentInstance`` are mathematical negatives: the data is
well-formed but a hypothesis of a construction does not hold.
"""


class TrianguliftError(Exception):
    pass


class InvalidInput(TrianguliftError, ValueError):
    pass


class PreconditionFailed(TrianguliftError):
    def __init__(self, condition, detail=""):
        self.condition = condition
        self.detail = detail
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class InconsistentInstance(TrianguliftError):
    pass


class EnumerationLimit(TrianguliftError):
    pass
