"""The preferred structure on worlds: falsification profiles and the strict
partial order they induce.

A world's profile is one bitmask per tolerance layer (bit i set iff the world
falsifies conditional i of that layer). One world precedes another iff, at the
highest layer where their profiles differ, its falsified set is a strict
subset of the other's.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence

from .logic import BeliefBase, World
from .tolerance import InconsistentBeliefBaseError, TolerancePartition, tolerance_partition

# Above this many worlds the full relation is not materialized; comparisons
# are still served per query.
MATRIX_WORLD_LIMIT = 1 << 14


class Comparison(Enum):
    STRICTLY_LESS = "strictly-less"
    STRICTLY_GREATER = "strictly-greater"
    EQUAL_PROFILE = "equal-profile"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class XiProfile:
    """Falsified conditionals per tolerance layer, plus their union."""

    per_layer: tuple
    total: frozenset


def _compare_profiles(p: tuple, q: tuple) -> Comparison:
    # Scan from the top layer down; the first differing layer decides.
    for j in range(len(p) - 1, -1, -1):
        a, b = p[j], q[j]
        if a == b:
            continue
        if a & ~b == 0:
            return Comparison.STRICTLY_LESS
        if b & ~a == 0:
            return Comparison.STRICTLY_GREATER
        return Comparison.INCOMPARABLE
    return Comparison.EQUAL_PROFILE


class PreferredStructure:
    """Queryable strict partial order on the worlds of a belief base.

    `dominators[w]` is the bitmask of worlds strictly below w and
    `dominated[w]` the bitmask of worlds strictly above w (materialized only
    up to MATRIX_WORLD_LIMIT worlds).
    """

    def __init__(
        self,
        base: BeliefBase,
        indices: Optional[Sequence[int]] = None,
        partition: Optional[TolerancePartition] = None,
    ):
        if partition is None:
            partition = tolerance_partition(base, indices)
            if partition is None:
                raise InconsistentBeliefBaseError("belief base is inconsistent")
        self.base = base
        self.signature = base.signature
        self.partition = partition
        self._layer_members = [sorted(layer) for layer in partition.layers]
        self._fals = [base[i].falsification_mask for i in base.indices()]
        n = self.signature.num_worlds
        self.materialized = n <= MATRIX_WORLD_LIMIT
        self._profiles: list | dict
        if self.materialized:
            self._profiles = [self._profile_bits(w) for w in range(n)]
            self._build_relation()
        else:
            self._profiles = {}

    def _profile_bits(self, w: int) -> tuple:
        prof = []
        for members in self._layer_members:
            xi = 0
            for i in members:
                if (self._fals[i] >> w) & 1:
                    xi |= 1 << i
            prof.append(xi)
        return tuple(prof)

    def profile_bits(self, w: int) -> tuple:
        if self.materialized:
            return self._profiles[w]
        prof = self._profiles.get(w)
        if prof is None:
            prof = self._profiles[w] = self._profile_bits(w)
        return prof

    def _build_relation(self):
        n = self.signature.num_worlds
        groups: dict = {}
        for w in range(n):
            groups.setdefault(self._profiles[w], 0)
            groups[self._profiles[w]] |= 1 << w
        items = list(groups.items())
        dom_by_prof = {p: 0 for p, _ in items}  # worlds strictly below any p-world
        up_by_prof = {p: 0 for p, _ in items}  # worlds strictly above any p-world
        for a in range(len(items)):
            pa, ma = items[a]
            for b in range(a + 1, len(items)):
                pb, mb = items[b]
                cmp = _compare_profiles(pa, pb)
                if cmp is Comparison.STRICTLY_LESS:
                    dom_by_prof[pb] |= ma
                    up_by_prof[pa] |= mb
                elif cmp is Comparison.STRICTLY_GREATER:
                    dom_by_prof[pa] |= mb
                    up_by_prof[pb] |= ma
        self.dominators = [dom_by_prof[self._profiles[w]] for w in range(n)]
        self.dominated = [up_by_prof[self._profiles[w]] for w in range(n)]

    # --- queries -------------------------------------------------------------

    def compare(self, w: int, w2: int) -> Comparison:
        return _compare_profiles(self.profile_bits(w), self.profile_bits(w2))

    def less(self, w: int, w2: int) -> bool:
        if self.materialized:
            return bool((self.dominators[w2] >> w) & 1)
        return self.compare(w, w2) is Comparison.STRICTLY_LESS

    def minimal_mask(self) -> int:
        """Bitmask of worlds with no world strictly below them."""
        mask = 0
        for w in range(self.signature.num_worlds):
            if self.dominators[w] == 0:
                mask |= 1 << w
        return mask

    def pairs(self) -> Iterator[tuple]:
        """All related pairs (w, w2) with w strictly below w2."""
        for w2 in range(self.signature.num_worlds):
            doms = self.dominators[w2]
            while doms:
                low = doms & -doms
                yield (low.bit_length() - 1, w2)
                doms ^= low

    def hasse_edges(self) -> set:
        """Transitive reduction: pairs (w, w2) with nothing strictly between."""
        edges = set()
        for w, w2 in self.pairs():
            if self.dominated[w] & self.dominators[w2] == 0:
                edges.add((w, w2))
        return edges

    def to_dot(self) -> str:
        """Hasse diagram; arrows point from a world to the more-preferred one."""
        sig = self.signature
        lines = ["digraph preferred_structure {"]
        for w in range(sig.num_worlds):
            lines.append(f'  w{w} [label="{sig.render_world(w)}"];')
        for lo, hi in sorted(self.hasse_edges()):
            lines.append(f"  w{hi} -> w{lo};")
        lines.append("}")
        return "\n".join(lines)


def xi_profile(
    base: BeliefBase, partition: TolerancePartition, world: World
) -> XiProfile:
    """Falsification profile of a world: per-layer and total falsified sets."""
    w = world.bits
    per_layer = []
    total = set()
    for layer in partition.layers:
        fals = frozenset(
            i for i in layer if (base[i].falsification_mask >> w) & 1
        )
        per_layer.append(fals)
        total |= fals
    return XiProfile(tuple(per_layer), frozenset(total))


def compare_worlds(ps: PreferredStructure, w: World, w2: World) -> Comparison:
    return ps.compare(w.bits, w2.bits)


def build_order(
    base: BeliefBase, indices: Optional[Sequence[int]] = None
) -> PreferredStructure:
    return PreferredStructure(base, indices=indices)
