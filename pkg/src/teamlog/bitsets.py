"""Integer-bitmask helpers.

Teams inside a :class:`~teamlog.model.TeamSpace` are encoded as Python ints whose
bit ``i`` is set iff the ``i``-th canonical assignment belongs to the team.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """Every submask of ``mask`` in increasing numeric order, starting with 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def supermasks(mask: int, full: int) -> Iterator[int]:
    """Every ``m`` with ``mask ⊆ m ⊆ full``, in increasing numeric order."""
    rest = full & ~mask
    for extra in submasks(rest):
        yield mask | extra


def nonempty_submasks(mask: int) -> list[int]:
    return [s for s in submasks(mask) if s]


def maximal(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal members of ``masks``, sorted increasingly."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda v: (-popcount(v), v)):
        if not any(m != k and m & ~k == 0 for k in kept):
            kept.append(m)
    return sorted(kept)


def minimal(masks: Iterable[int]) -> list[int]:
    """Inclusion-minimal members of ``masks``, sorted increasingly."""
    kept: list[int] = []
    for m in sorted(set(masks), key=lambda v: (popcount(v), v)):
        if not any(m != k and k & ~m == 0 for k in kept):
            kept.append(m)
    return sorted(kept)
