"""Tropical Pluecker vectors (valuated matroids) and their circuits.

A tropical Pluecker vector of rank m on [n] assigns a scalar p_A to every
m-subset A, with the nonempty finite support closed under the three-term
exchange relations: for every (m-1)-subset S and (m+1)-subset T, the minimum
of p_{S+i} + p_{T-i} over i in T\\S is INF or achieved at least twice.

The valuated circuits live on the (m+1)-subsets S: (c_S)_i = p_{S-i} for
i in S and INF outside.  Two circuits with equal support differ by a global
additive shift, so `all_circuits` keeps one representative per support,
normalized so its least finite entry is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .matroid import (
    ExchangeError,
    Matroid,
    mask_from_subset,
    subset_from_mask,
)
from .semiring import (
    INF,
    Scalar,
    as_scalar,
    format_scalar,
    is_orthogonal,
    min_achieved_twice,
)


class NotValidatedError(RuntimeError):
    """Raised when an operation needs a vector that passed validation."""


@dataclass(frozen=True)
class ValuatedCircuit:
    """A valuated circuit: entry vector plus the (m+1)-set that generated it."""

    entries: tuple
    generator: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, x in enumerate(self.entries) if x is not INF)

    @property
    def support_mask(self) -> int:
        mask = 0
        for i, x in enumerate(self.entries):
            if x is not INF:
                mask |= 1 << i
        return mask

    def entry(self, element: int) -> Scalar:
        return self.entries[element - 1]

    def shifted(self, offset) -> "ValuatedCircuit":
        off = as_scalar(offset)
        return ValuatedCircuit(
            tuple(x if x is INF else x + off for x in self.entries), self.generator
        )

    def __repr__(self):
        body = ",".join(format_scalar(x) for x in self.entries)
        return f"ValuatedCircuit([{body}], from {self.generator})"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the three-term relation check plus the support exchange check."""

    n: int
    m: int
    relation_failures: tuple  # ((S, T), ...) as subset tuples
    support_ok: bool
    exchange_witness: tuple | None  # (A, B, element) subsets when support_ok is False

    @property
    def ok(self) -> bool:
        return not self.relation_failures and self.support_ok

    def summary(self) -> str:
        if self.ok:
            return "valid tropical Pluecker vector"
        lines = []
        for s, t in self.relation_failures:
            lines.append(f"relation fails at S={list(s)}, T={list(t)}")
        if not self.support_ok and self.exchange_witness:
            a, b, e = self.exchange_witness
            lines.append(f"support fails exchange at A={list(a)}, B={list(b)}, a={e}")
        return "; ".join(lines) if lines else "invalid"


class PlueckerVector:
    """Rank-m tropical Pluecker candidate on [n]; validate() certifies it."""

    __slots__ = ("n", "m", "_entries", "validated", "_matroid", "_circuits", "_supp_list")

    def __init__(self, n: int, m: int, entries: Mapping):
        if not 1 <= m <= n:
            raise ValueError("need 1 <= m <= n")
        self.n = n
        self.m = m
        table: dict[int, Fraction] = {}
        for key, raw in entries.items():
            mask = key if isinstance(key, int) else mask_from_subset(key, n)
            if not 0 < mask < (1 << n):
                raise ValueError(f"subset mask {mask} out of range")
            if len(subset_from_mask(mask)) != m:
                raise ValueError(f"subset {subset_from_mask(mask)} is not an m-set")
            if mask in table:
                raise ValueError(f"duplicate entry for subset {subset_from_mask(mask)}")
            val = as_scalar(raw)
            if val is INF:
                continue  # absent and explicit INF are the same thing
            table[mask] = Fraction(val)
        if not table:
            raise ValueError("empty support: at least one finite entry required")
        self._entries = table
        self.validated = False
        self._matroid = None
        self._circuits = None
        self._supp_list = sorted(table, key=subset_from_mask)

    # -- raw access ---------------------------------------------------------

    def entry_mask(self, mask: int) -> Scalar:
        return self._entries.get(mask, INF)

    def entry(self, subset: Iterable[int]) -> Scalar:
        return self.entry_mask(mask_from_subset(subset, self.n))

    def support_masks(self) -> list[int]:
        return list(self._supp_list)

    def support(self) -> list[tuple[int, ...]]:
        return [subset_from_mask(mk) for mk in self._supp_list]

    def _need_validated(self):
        if not self.validated:
            raise NotValidatedError("call validate() first (and it must succeed)")

    # -- validation ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        """Check all three-term relations and the support exchange axiom.

        On success the vector is flagged as validated and the underlying
        matroid is cached.  The report lists every failing (S, T) pair.
        """
        failures = []
        n, m = self.n, self.m
        elems = range(1, n + 1)
        for s_combo in combinations(elems, m - 1):
            smask = mask_from_subset(s_combo, n)
            for t_combo in combinations(elems, m + 1):
                tmask = mask_from_subset(t_combo, n)
                free = tmask & ~smask
                if popcount_small(free) < 2:
                    continue  # S inside T: both terms of each pair coincide
                terms = []
                any_finite = False
                rest = free
                while rest:
                    bit = rest & -rest
                    rest ^= bit
                    a = self._entries.get(smask | bit)
                    b = self._entries.get(tmask & ~bit)
                    if a is None or b is None:
                        terms.append(INF)
                    else:
                        terms.append(a + b)
                        any_finite = True
                if not any_finite:
                    continue
                if not min_achieved_twice(terms):
                    failures.append((s_combo, t_combo))
        support_ok = True
        witness = None
        matroid = None
        try:
            matroid = Matroid.from_masks(n, self._supp_list)
        except ExchangeError as exc:
            support_ok = False
            witness = (exc.a_subset, exc.b_subset, exc.element)
        report = ValidationReport(n, m, tuple(failures), support_ok, witness)
        if report.ok:
            self.validated = True
            self._matroid = matroid
        return report

    def underlying_matroid(self) -> Matroid:
        self._need_validated()
        if self._matroid is None:
            self._matroid = Matroid.from_masks(self.n, self._supp_list)
        return self._matroid

    # -- circuits -------------------------------------------------------------

    def circuit(self, gen: Iterable[int]) -> ValuatedCircuit | None:
        """Valuated circuit of an (m+1)-subset; None when all entries are INF."""
        self._need_validated()
        gen = tuple(sorted(set(gen)))
        if len(gen) != self.m + 1:
            raise ValueError(f"generator must have size m+1={self.m + 1}")
        gmask = mask_from_subset(gen, self.n)
        entries: list[Scalar] = [INF] * self.n
        finite = False
        for e in gen:
            val = self._entries.get(gmask & ~(1 << (e - 1)))
            if val is not None:
                entries[e - 1] = val
                finite = True
        if not finite:
            return None
        return ValuatedCircuit(tuple(entries), gen)

    def all_circuits(self) -> tuple[ValuatedCircuit, ...]:
        """One representative per circuit support, least finite entry 0."""
        self._need_validated()
        if self._circuits is None:
            seen: dict[int, ValuatedCircuit] = {}
            for gen in combinations(range(1, self.n + 1), self.m + 1):
                c = self.circuit(gen)
                if c is None:
                    continue
                key = c.support_mask
                if key in seen:
                    continue
                low = min(x for x in c.entries if x is not INF)
                seen[key] = c.shifted(-low)
            self._circuits = tuple(
                seen[k] for k in sorted(seen, key=subset_from_mask)
            )
        return self._circuits

    def fundamental_circuit(self, e: int, basis: Iterable[int]) -> ValuatedCircuit:
        """Circuit of B + e for a basis B of the underlying matroid, e outside B."""
        self._need_validated()
        bset = tuple(sorted(set(basis)))
        bmask = mask_from_subset(bset, self.n)
        if bmask not in self._entries:
            raise ValueError(f"{bset} is not in the support")
        if not 1 <= e <= self.n or (bmask >> (e - 1)) & 1:
            raise ValueError(f"element {e} must lie outside the basis")
        c = self.circuit(bset + (e,))
        assert c is not None  # p_B itself is finite
        return c

    # -- weights and local matroids -----------------------------------------

    def weight(self, point, basis: Iterable[int]) -> Fraction:
        """w(v, B) = -p_B + sum_{i in B} v_i, for B in the support."""
        self._need_validated()
        bmask = mask_from_subset(basis, self.n)
        val = self._entries.get(bmask)
        if val is None:
            raise ValueError(f"{subset_from_mask(bmask)} is not in the support")
        return self._weight_mask(self._as_point(point), bmask, val)

    def _as_point(self, point) -> tuple[Fraction, ...]:
        pt = tuple(point)
        if len(pt) != self.n:
            raise ValueError(f"point must have {self.n} coordinates")
        out = []
        for x in pt:
            v = as_scalar(x)
            if v is INF:
                raise ValueError("points must have finite coordinates")
            out.append(Fraction(v))
        return tuple(out)

    @staticmethod
    def _weight_mask(pt, bmask, pval) -> Fraction:
        total = -pval
        rest = bmask
        while rest:
            bit = rest & -rest
            rest ^= bit
            total += pt[bit.bit_length() - 1]
        return total

    def matroid_at(self, point) -> Matroid:
        """Matroid of maximum-weight support subsets at the point."""
        self._need_validated()
        pt = self._as_point(point)
        best = None
        winners: list[int] = []
        for mask in self._supp_list:
            w = self._weight_mask(pt, mask, self._entries[mask])
            if best is None or w > best:
                best = w
                winners = [mask]
            elif w == best:
                winners.append(mask)
        try:
            return Matroid.from_masks(self.n, winners)
        except ExchangeError as exc:  # pragma: no cover - would be a library bug
            raise AssertionError(
                f"max-weight bases of a validated vector must form a matroid: {exc}"
            ) from exc

    # -- membership -----------------------------------------------------------

    def contains_via_circuits(self, point) -> bool:
        """Membership test: the point is orthogonal to every valuated circuit."""
        self._need_validated()
        pt = self._as_point(point)
        return all(is_orthogonal(c.entries, pt) for c in self.all_circuits())

    def contains(self, point, cross_check: bool | None = None) -> bool:
        """Finite-part membership: the local matroid at the point is loopless.

        With ``cross_check`` (default: on under __debug__) the circuit route
        is evaluated too and any disagreement raises -- the two routes are
        independent implementations of the same predicate.
        """
        self._need_validated()
        pt = self._as_point(point)
        answer = not self.matroid_at(pt).loops()
        if cross_check is None:
            cross_check = __debug__
        if cross_check:
            other = self.contains_via_circuits(pt)
            if other != answer:
                raise AssertionError(
                    f"membership routes disagree at {pt}: loopless={answer}, circuits={other}"
                )
        return answer

    # -- circuit elimination ---------------------------------------------------

    def eliminate(self, d: ValuatedCircuit, e: ValuatedCircuit, a: int, b: int) -> ValuatedCircuit:
        """Valuated circuit elimination.

        Given circuits d, e with d_a < e_a and d_b = e_b != INF, returns a
        circuit f with f_b = INF, f_a = d_a and f >= min(d, e) coordinatewise.
        The search walks the stored representatives and shifts them.
        """
        self._need_validated()
        if not (1 <= a <= self.n and 1 <= b <= self.n):
            raise ValueError("indices out of range")
        da, ea = d.entry(a), e.entry(a)
        db, eb = d.entry(b), e.entry(b)
        if not da < ea:
            raise ValueError(f"need d_a < e_a, got {da} vs {ea}")
        if db is INF or db != eb:
            raise ValueError(f"need d_b = e_b finite, got {db} vs {eb}")
        lower = tuple(x if x <= y else y for x, y in zip(d.entries, e.entries))
        abit = 1 << (a - 1)
        bbit = 1 << (b - 1)
        for rep in self.all_circuits():
            smask = rep.support_mask
            if smask & bbit or not smask & abit:
                continue
            f = rep.shifted(da - rep.entry(a))
            if all(fx >= lx for fx, lx in zip(f.entries, lower)):
                return f
        raise RuntimeError(
            "no eliminating circuit found; the vector would not satisfy the "
            "valuated elimination property"
        )

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "entries": [
                {
                    "subset": list(subset_from_mask(mask)),
                    "value": format_scalar(self._entries[mask]),
                }
                for mask in self._supp_list
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "PlueckerVector":
        try:
            n = int(obj["n"])
            m = int(obj["m"])
            raw = obj["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"bad Pluecker JSON: {exc}") from exc
        entries: dict[int, Scalar] = {}
        for item in raw:
            try:
                subset = tuple(item["subset"])
                value = item["value"]
            except (KeyError, TypeError) as exc:
                raise ValueError(f"bad entry record {item!r}: {exc}") from exc
            mask = mask_from_subset(subset, n)
            if mask in entries:
                raise ValueError(f"duplicate entry for subset {sorted(subset)}")
            entries[mask] = as_scalar(value)
        return cls(n, m, entries)

    def __repr__(self):
        return f"PlueckerVector(n={self.n}, m={self.m}, |supp|={len(self._entries)})"


def popcount_small(mask: int) -> int:
    return bin(mask).count("1")
