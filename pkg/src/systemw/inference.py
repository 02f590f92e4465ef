"""Inference relations over a belief base: system W, system Z, p-entailment.

Every relation is invariant under logical equivalence, so the engines work on
model masks; `Formula` arguments are reduced to their masks at the boundary.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Sequence

from .logic import BeliefBase, Formula
from .preferred import PreferredStructure
from .tolerance import (
    InconsistentBeliefBaseError,
    _partition_pairs,
    tolerance_partition,
)

INF = float("inf")


class InferenceMode(Enum):
    W = "w"
    Z = "z"
    P = "p"


class Engine:
    """Answers entailment queries for one belief base under one mode.

    Mode-specific state (preferred structure, Z ranks, tolerance mask pairs)
    is computed once; queries are then cheap and may run concurrently.
    """

    def __init__(
        self,
        base: BeliefBase,
        mode: InferenceMode,
        indices: Optional[Sequence[int]] = None,
    ):
        self.base = base
        self.mode = mode
        self.full = base.signature.full_mask
        self._indices = list(base.indices()) if indices is None else list(indices)
        partition = tolerance_partition(base, self._indices)
        if partition is None:
            raise InconsistentBeliefBaseError("belief base is inconsistent")
        self.partition = partition
        if mode is InferenceMode.W:
            self._ps = PreferredStructure(base, partition=partition)
            self._dom_union_memo: dict = {0: 0}
        elif mode is InferenceMode.Z:
            self._kappa = self._z_ranks()
        else:
            self._pairs = [
                (base[i].verification_mask, base[i].falsification_mask)
                for i in self._indices
            ]

    def _z_ranks(self) -> list:
        n = self.base.signature.num_worlds
        kappa = [0] * n
        for j, layer in enumerate(self.partition.layers):
            for i in layer:
                fm = self.base[i].falsification_mask
                while fm:
                    low = fm & -fm
                    w = low.bit_length() - 1
                    if kappa[w] < j + 1:
                        kappa[w] = j + 1
                    fm ^= low
        return kappa

    @property
    def preferred_structure(self) -> PreferredStructure:
        if self.mode is not InferenceMode.W:
            raise ValueError("preferred structure is built for mode W only")
        return self._ps

    def _dom_union(self, mask: int) -> int:
        """Worlds strictly above some world of `mask`."""
        memo = self._dom_union_memo
        got = memo.get(mask)
        if got is None:
            low = mask & -mask
            got = memo[mask] = (
                self._dom_union(mask ^ low) | self._ps.dominated[low.bit_length() - 1]
            )
        return got

    def _min_kappa(self, mask: int):
        best = INF
        while mask:
            low = mask & -mask
            k = self._kappa[low.bit_length() - 1]
            if k < best:
                best = k
                if best == 0:
                    return 0
            mask ^= low
        return best

    def entails_masks(self, a: int, b: int) -> bool:
        full = self.full
        a &= full
        b &= full
        if a == 0:
            return True
        ab = a & b
        anb = a & ~b & full
        if self.mode is InferenceMode.W:
            return anb & ~self._dom_union(ab) & full == 0
        if self.mode is InferenceMode.Z:
            return self._min_kappa(ab) < self._min_kappa(anb)
        # p-entailment: the base extended with (!B|A) must be inconsistent.
        extended = self._pairs + [(anb, ab)]
        return _partition_pairs(extended, full) is None

    def entails(self, antecedent: Formula, consequent: Formula) -> bool:
        return self.entails_masks(antecedent.mask, consequent.mask)


def infer_w(base: BeliefBase, antecedent: Formula, consequent: Formula) -> bool:
    return Engine(base, InferenceMode.W).entails(antecedent, consequent)


def infer_z(base: BeliefBase, antecedent: Formula, consequent: Formula) -> bool:
    return Engine(base, InferenceMode.Z).entails(antecedent, consequent)


def infer_p(base: BeliefBase, antecedent: Formula, consequent: Formula) -> bool:
    return Engine(base, InferenceMode.P).entails(antecedent, consequent)


def infer(
    base: BeliefBase,
    mode: InferenceMode,
    antecedent: Formula,
    consequent: Formula,
) -> bool:
    return Engine(base, mode).entails(antecedent, consequent)
