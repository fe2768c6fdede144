"""Exception types shared across the package."""


class VBShadowError(Exception):
    pass


class DimensionMismatch(VBShadowError):
    pass


class ConstraintViolation(VBShadowError):
    pass


class AxiomViolation(VBShadowError):
    """An axiom fails; ``axiom`` names it and ``witness`` is the first failing tuple (1-indexed)."""

    def __init__(self, axiom, witness=None, detail=""):
        self.axiom = axiom
        self.witness = witness
        msg = f"axiom {axiom!r} fails"
        if witness is not None:
            msg += f" at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class RelationViolation(VBShadowError):
    def __init__(self, generator, witness):
        self.generator = generator
        self.witness = witness
        super().__init__(f"module relation {generator!r} fails at {witness}")


class NonUnit(VBShadowError):
    def __init__(self, name, index, value, q):
        self.name = name
        self.index = index
        super().__init__(f"{name}{index} = {value} is not a unit mod {q}")


class ParseError(VBShadowError):
    pass


class MalformedCode(ParseError):
    pass


class EdgeMultiplicity(MalformedCode):
    def __init__(self, edge, detail=""):
        self.edge = edge
        super().__init__(f"edge {edge} has bad multiplicity" + (f": {detail}" if detail else ""))


class OrientationConflict(MalformedCode):
    def __init__(self, node, detail=""):
        self.node = node
        super().__init__(f"orientation conflict at node {node}" + (f": {detail}" if detail else ""))


class NonPlanar(VBShadowError):
    pass


class InternalInconsistency(VBShadowError):
    pass


class SizeGuard(VBShadowError):
    pass
