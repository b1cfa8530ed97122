from dataclasses import dataclass, field


@dataclass(frozen=True, order=True)
class LawResult:
    """
    The outcome of checking one law (or one golden value) on some instances.

    Note: `frozen` means the instances are immutable.
    Note: `order` means the instances can be sorted, which keeps reports stable regardless of check order.
    """

    suite: str = field()  # e.g. "conceptlogic"
    name: str = field()  # e.g. "isomorphism: D(¬X) = ¬D(X)"
    passed: bool = field()

    # Note: For a failure, this holds a witness (the first instance on which the law failed);
    #       for a success, a short summary such as the number of instances checked.
    detail: str = field(default="")
