"""Coalition structures: set partitions of the agent index set {1..I}.

The canonical form sorts each block ascending and orders blocks by their
smallest member, so structural equality identifies partitions uniquely. The
textual notation is "[1,2],[3],[4]" (1-based ids, no spaces); the parser also
accepts whitespace between tokens.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

MAX_AGENTS = 12  # Bell(12) = 4_213_597; enumeration above this is a mistake

_BLOCK_RE = re.compile(r"\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]")


@dataclass(frozen=True)
class CoalitionStructure:
    """A partition of {1..n} into disjoint nonempty coalitions (blocks)."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        canon = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        seen: set[int] = set()
        for block in canon:
            if not block:
                raise ValueError("blocks must be nonempty")
            for member in block:
                if not isinstance(member, int) or member < 1:
                    raise ValueError(f"agent ids must be positive integers, got {member!r}")
                if member in seen:
                    raise ValueError(f"agent {member} appears in more than one block")
                seen.add(member)
        n = len(seen)
        if seen != set(range(1, n + 1)):
            missing = sorted(set(range(1, max(seen) + 1)) - seen)
            raise ValueError(f"blocks must cover 1..{max(seen)}; missing agents {missing}")
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def singletons(cls, n: int) -> "CoalitionStructure":
        return cls(tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def grand(cls, n: int) -> "CoalitionStructure":
        return cls((tuple(range(1, n + 1)),))

    @classmethod
    def from_string(cls, text: str) -> "CoalitionStructure":
        """Parse the bracket notation, e.g. "[1,2],[3],[4]"."""
        stripped = re.sub(r"\s+", "", text)
        if not stripped:
            raise ValueError("empty partition string")
        matched = _BLOCK_RE.findall(stripped)
        rebuilt = ",".join("[" + re.sub(r"\s+", "", m) + "]" for m in matched)
        if rebuilt != stripped:
            raise ValueError(f"malformed partition notation: {text!r}")
        blocks = tuple(tuple(int(x) for x in m.split(",")) for m in matched)
        return cls(blocks)

    @property
    def n(self) -> int:
        """Number of agents covered."""
        return sum(len(b) for b in self.blocks)

    def block_of(self, agent_id: int) -> int:
        """Index (into ``blocks``) of the block containing the agent."""
        for k, block in enumerate(self.blocks):
            if agent_id in block:
                return k
        raise ValueError(f"agent {agent_id} not in partition {self}")

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __str__(self) -> str:
        return ",".join("[" + ",".join(str(i) for i in block) + "]" for block in self.blocks)


def all_partitions(n: int) -> list[CoalitionStructure]:
    """Every partition of {1..n} exactly once.

    Enumerated via restricted growth strings (element k joins an existing
    block or opens a new one), which yields a deterministic order; the count
    is the Bell number B_n.
    """
    if not 1 <= n <= MAX_AGENTS:
        raise ValueError(f"agent count must be in 1..{MAX_AGENTS}, got {n}")
    results: list[CoalitionStructure] = []

    def grow(k: int, blocks: list[list[int]]) -> None:
        if k > n:
            results.append(CoalitionStructure(tuple(tuple(b) for b in blocks)))
            return
        for block in blocks:
            block.append(k)
            grow(k + 1, blocks)
            block.pop()
        blocks.append([k])
        grow(k + 1, blocks)
        blocks.pop()

    grow(1, [])
    return results


def bell_number(n: int) -> int:
    """B_n via the binomial recurrence; used for size checks."""
    table = [1]
    for m in range(n):
        table.append(sum(math.comb(m, k) * table[k] for k in range(m + 1)))
    return table[n]


def gamma_structure(coalition, n: int) -> CoalitionStructure:
    """The structure where ``coalition`` stands together and everyone else
    remains a singleton."""
    members = tuple(sorted(set(coalition)))
    if not members:
        raise ValueError("coalition must be nonempty")
    if members[0] < 1 or members[-1] > n:
        raise ValueError(f"coalition {members} not within 1..{n}")
    blocks = [members] + [(i,) for i in range(1, n + 1) if i not in set(members)]
    return CoalitionStructure(tuple(blocks))


def merge_blocks(p: CoalitionStructure, i: int, j: int) -> CoalitionStructure:
    """Union blocks ``i`` and ``j`` (0-based indices) of ``p``."""
    if i == j:
        raise ValueError("cannot merge a block with itself")
    k = len(p.blocks)
    if not (0 <= i < k and 0 <= j < k):
        raise ValueError(f"block indices must be in 0..{k - 1}, got ({i}, {j})")
    merged = tuple(p.blocks[i] + p.blocks[j])
    rest = tuple(b for idx, b in enumerate(p.blocks) if idx not in (i, j))
    return CoalitionStructure(rest + (merged,))
