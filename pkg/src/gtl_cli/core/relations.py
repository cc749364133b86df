"""Convexity, confluence and seriality checks for relations between posets."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Sequence, TypeVar

T = TypeVar("T", bound=Hashable)

Order = Callable[[T, T], bool]

# Order in which verdicts list the structural checks
STRUCTURAL_CHECKS = (
    "image-convex",
    "preimage-convex",
    "forth-down",
    "forth-up",
    "back-down",
    "back-up",
    "serial",
)


def _convex(groups: dict[T, set[T]], universe: Sequence[T], leq: Order) -> bool:
    for members in groups.values():
        for y in universe:
            if y in members:
                continue
            if any(leq(lo, y) and leq(y, hi) for lo in members for hi in members):
                return False
    return True


def structural_checks(
    sources: Sequence[T],
    targets: Sequence[T],
    pairs: Iterable[tuple[T, T]],
    leq_source: Order,
    leq_target: Order,
) -> dict[str, bool]:
    """
    Run the order-theoretic checks on a relation.

    Args:
        sources: Elements of the source poset
        targets: Elements of the target poset
        pairs: The relation
        leq_source: Order of the source poset
        leq_target: Order of the target poset

    Returns:
        Mapping from each name in STRUCTURAL_CHECKS to its outcome
    """
    pairs = list(pairs)
    image: dict[T, set[T]] = {x: set() for x in sources}
    preimage: dict[T, set[T]] = {y: set() for y in targets}
    for x, y in pairs:
        image[x].add(y)
        preimage[y].add(x)

    forth_down = all(
        any(leq_target(y, y2) for y in image[x])
        for x2, y2 in pairs
        for x in sources
        if leq_source(x, x2)
    )
    forth_up = all(
        any(leq_target(y, y2) for y2 in image[x2])
        for x, y in pairs
        for x2 in sources
        if leq_source(x, x2)
    )
    back_down = all(
        any(leq_source(x, x2) for x in preimage[y])
        for x2, y2 in pairs
        for y in targets
        if leq_target(y, y2)
    )
    back_up = all(
        any(leq_source(x, x2) for x2 in preimage[y2])
        for x, y in pairs
        for y2 in targets
        if leq_target(y, y2)
    )
    return {
        "image-convex": _convex(image, targets, leq_target),
        "preimage-convex": _convex(preimage, sources, leq_source),
        "forth-down": forth_down,
        "forth-up": forth_up,
        "back-down": back_down,
        "back-up": back_up,
        "serial": all(image[x] for x in sources),
    }


def index_order(a: int, b: int) -> bool:
    """Order of a chain whose elements are its indices."""
    return a <= b
