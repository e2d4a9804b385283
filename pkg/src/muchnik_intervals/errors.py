"""Exception types shared across the package."""


class MuchnikError(Exception):
    """Base class for all errors raised by this package."""


class CycleDetected(MuchnikError):
    def __init__(self, a, b):
        super().__init__(f"relation is not antisymmetric: {a} < {b} < {a}")
        self.pair = (a, b)


class IndexOutOfRange(MuchnikError):
    pass


class SizeBound(MuchnikError):
    pass


class NotALattice(MuchnikError):
    def __init__(self, pair, kind):
        super().__init__(f"elements {pair[0]} and {pair[1]} have no {kind}")
        self.pair = pair
        self.kind = kind


class NotDistributive(MuchnikError):
    def __init__(self, triple=None):
        msg = "lattice is not distributive"
        if triple is not None:
            a, b, c = triple
            msg += f" ({a} ^ ({b} v {c}) != ({a} ^ {b}) v ({a} ^ {c}))"
        super().__init__(msg)
        self.triple = triple


class NotComparable(MuchnikError):
    pass


class InvalidConfiguration(MuchnikError):
    pass


class NotInitialSegment(MuchnikError):
    """Raised with the bowtie that blocks an upper-semilattice completion."""

    def __init__(self, witness, labels=None):
        x0, x1, y0, y1 = (labels[k] if labels else k for k in witness.as_tuple())
        super().__init__(
            f"poset is not an initial segment of an upper semilattice: "
            f"{x0} and {x1} have minimal upper bounds {y0} and {y1}"
        )
        self.witness = witness
        self.labels = labels


class ParseError(MuchnikError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
