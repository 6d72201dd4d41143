"""Matroids on the ground set [n] = {1, ..., n}, presented by their bases.

A subset of [n] is externally a sorted tuple of 1-based ints and internally
an n-bit mask (bit k <-> element k+1).  Construction always verifies the
basis-exchange axiom, so a `Matroid` object is a certificate of validity.
Loops (elements in no basis) are allowed.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Mapping

from . import kernels

MAX_GROUND = 16  # the bitmask kernels assume this


class ExchangeError(ValueError):
    """Basis-exchange axiom failure; carries the first offending triple."""

    def __init__(self, a_subset, b_subset, element):
        self.a_subset = a_subset
        self.b_subset = b_subset
        self.element = element
        super().__init__(
            f"exchange axiom fails: no b in {set(b_subset)} - {set(a_subset)} "
            f"with {set(a_subset)} - {{{element}}} + b a basis"
        )


def mask_from_subset(subset: Iterable[int], n: int) -> int:
    mask = 0
    for e in subset:
        if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
            raise ValueError(f"element {e!r} outside ground set [1..{n}]")
        bit = 1 << (e - 1)
        if mask & bit:
            raise ValueError(f"repeated element {e} in subset")
        mask |= bit
    return mask


def subset_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        bit = mask & -mask
        mask ^= bit
        out.append(bit.bit_length())
    return tuple(out)


def iter_subset_masks(n: int, k: int):
    """Masks of all k-subsets of [n], in lexicographic subset order."""
    for combo in combinations(range(1, n + 1), k):
        mask = 0
        for e in combo:
            mask |= 1 << (e - 1)
        yield mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Matroid:
    """An exchange-validated matroid given by its list of bases."""

    __slots__ = ("n", "m", "_subsets", "_masks", "_mask_set", "_loops")

    def __init__(self, n: int, bases: Iterable[Iterable[int]]):
        if not 1 <= n <= MAX_GROUND:
            raise ValueError(f"ground set size must be in [1..{MAX_GROUND}]")
        masks = sorted({mask_from_subset(b, n) for b in bases})
        if not masks:
            raise ValueError("a matroid needs at least one basis")
        m = popcount(masks[0])
        if m == 0:
            raise ValueError("rank-0 matroids are not supported")
        for mk in masks:
            if popcount(mk) != m:
                raise ValueError("bases must all have the same size")
        subsets = sorted(subset_from_mask(mk) for mk in masks)
        ordered = [mask_from_subset(s, n) for s in subsets]
        bad = kernels.exchange_violation(ordered, n)
        if bad is not None:
            amask, bmask, elem = bad
            raise ExchangeError(subset_from_mask(amask), subset_from_mask(bmask), elem)
        self.n = n
        self.m = m
        self._subsets = tuple(subsets)
        self._masks = tuple(ordered)
        self._mask_set = frozenset(ordered)
        self._loops = None

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        return cls(n, bases)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Matroid":
        return cls(n, (subset_from_mask(mk) for mk in masks))

    @property
    def bases(self) -> tuple[tuple[int, ...], ...]:
        """Bases as sorted tuples, in lexicographic order (the canonical key)."""
        return self._subsets

    @property
    def basis_masks(self) -> tuple[int, ...]:
        return self._masks

    def is_basis(self, subset: Iterable[int]) -> bool:
        return mask_from_subset(subset, self.n) in self._mask_set

    def has_basis_mask(self, mask: int) -> bool:
        return mask in self._mask_set

    def loops(self) -> tuple[int, ...]:
        """Elements contained in no basis."""
        if self._loops is None:
            covered = 0
            for mk in self._masks:
                covered |= mk
            full = (1 << self.n) - 1
            self._loops = subset_from_mask(full & ~covered)
        return self._loops

    def fundamental_circuit_support(self, e: int, basis: Iterable[int]) -> tuple[int, ...]:
        """Support of the fundamental circuit of e over the basis B.

        Requires e outside B.  Equals {e} plus the b in B whose exchange
        B - b + e is again a basis; for a loop e this is just {e}.
        """
        bmask = mask_from_subset(basis, self.n)
        if bmask not in self._mask_set:
            raise ValueError(f"{tuple(basis)} is not a basis")
        if not 1 <= e <= self.n:
            raise ValueError(f"element {e} outside ground set")
        ebit = 1 << (e - 1)
        if bmask & ebit:
            raise ValueError(f"element {e} lies in the basis; no fundamental circuit")
        members = [e]
        rest = bmask
        while rest:
            bbit = rest & -rest
            rest ^= bbit
            if ((bmask ^ bbit) | ebit) in self._mask_set:
                members.append(bbit.bit_length())
        return tuple(sorted(members))

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self._subsets == other._subsets

    def __hash__(self):
        return hash((self.n, self._subsets))

    def __repr__(self):
        shown = ",".join("".join(map(str, s)) for s in self._subsets[:6])
        more = "..." if len(self._subsets) > 6 else ""
        return f"Matroid(n={self.n}, bases=[{shown}{more}])"

    def to_json(self) -> dict:
        return {"n": self.n, "bases": [list(b) for b in self._subsets]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Matroid":
        return cls(int(obj["n"]), obj["bases"])


def is_adjacent(a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff the equal-size subsets differ by exactly one exchange."""
    sa, sb = set(a), set(b)
    if len(sa) != len(sb):
        raise ValueError("subsets must have equal size")
    return len(sa - sb) == 1


def transversal(n: int, basis: Iterable[int], families: Mapping[int, Iterable[int]]) -> Matroid:
    """Principal transversal matroid rooted at ``basis``.

    ``families[j]`` (for j outside the basis) lists the basis elements that
    j may stand in for; absent keys mean the empty family, which makes j a
    loop.  A is a basis of the result iff the bipartite graph matching each
    element of A∩B to itself and each j in A\\B to its family admits a
    perfect matching.  B itself always qualifies.
    """
    bset = tuple(sorted(set(basis)))
    bmask = mask_from_subset(bset, n)
    m = len(bset)
    others = [e for e in range(1, n + 1) if not (bmask >> (e - 1)) & 1]
    slot_masks = []
    for j in others:
        fam = families.get(j, ())
        fmask = mask_from_subset(fam, n)
        if fmask & ~bmask:
            raise ValueError(f"family of {j} must lie inside the root basis")
        slot_masks.append(fmask)
    unknown = set(families) - set(others)
    if unknown:
        raise ValueError(f"families given for basis elements / strangers: {sorted(unknown)}")
    masks = kernels.transversal_basis_masks(n, m, bmask, others, slot_masks)
    return Matroid.from_masks(n, masks)
