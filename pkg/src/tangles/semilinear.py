"""Eventually periodic subsets of the naturals with exact set algebra.

A set is kept in a canonical form: a finite explicit part below a
threshold, plus one arithmetic progression per occupied residue class of
the minimal eventual period.  Canonicalisation makes structural equality
decide set equality, and a set is finite exactly when its progression
list is empty.  All decisions (membership, emptiness, finiteness,
inclusion) therefore reduce to computations below a finite bound.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from math import lcm

# Guard against period blow-up through long op chains; never hit in practice
# because canonicalisation keeps periods minimal.
_PERIOD_CAP = 1_000_000

_PROG_RE = re.compile(r"^(\d+)\+(\d+)t$")


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


@dataclass(frozen=True)
class SemilinearSet:
    """Canonical eventually periodic set of naturals.

    Do not call the constructor with raw data; use :meth:`make` (or the
    convenience builders), which canonicalise.
    """

    explicit: frozenset[int]
    progressions: tuple[tuple[int, int], ...]  # (offset, period), period >= 1

    # -- construction ----------------------------------------------------

    @classmethod
    def make(cls, explicit=(), progressions=()) -> "SemilinearSet":
        explicit = frozenset(int(x) for x in explicit)
        progs = tuple((int(a), int(d)) for a, d in progressions)
        if any(x < 0 for x in explicit):
            raise ValueError("negative element")
        if any(a < 0 or d < 1 for a, d in progs):
            raise ValueError("bad progression")

        def pred(x: int) -> bool:
            return x in explicit or any(x >= a and (x - a) % d == 0 for a, d in progs)

        t0 = max([0, *(x + 1 for x in explicit), *(a for a, _ in progs)])
        d0 = reduce(lcm, (d for _, d in progs), 1)
        return cls._canonical(pred, t0, d0)

    @classmethod
    def _canonical(cls, pred, t0: int, d0: int) -> "SemilinearSet":
        """Build the canonical form of a set that is d0-periodic from t0 on."""
        if d0 > _PERIOD_CAP:
            raise ValueError(f"period {d0} exceeds cap")
        window = [pred(t0 + i) for i in range(d0)]
        if not any(window):
            return cls(frozenset(x for x in range(t0) if pred(x)), ())
        # minimal eventual period: smallest divisor of d0 under which the
        # window is shift-invariant
        d = next(
            dd
            for dd in _divisors(d0)
            if all(window[i] == window[(i + dd) % d0] for i in range(d0))
        )
        # minimal threshold for that period
        t = t0
        while t > 0 and pred(t - 1) == pred(t - 1 + d):
            t -= 1
        expl = frozenset(x for x in range(t) if pred(x))
        progs = tuple((a, d) for a in range(t, t + d) if pred(a))
        return cls(expl, progs)

    @classmethod
    def empty(cls) -> "SemilinearSet":
        return cls(frozenset(), ())

    @classmethod
    def naturals(cls) -> "SemilinearSet":
        return cls(frozenset(), ((0, 1),))

    @classmethod
    def of(cls, *xs: int) -> "SemilinearSet":
        return cls.make(xs)

    @classmethod
    def from_(cls, a: int) -> "SemilinearSet":
        """All naturals >= a."""
        return cls.make((), ((a, 1),))

    @classmethod
    def progression(cls, a: int, d: int) -> "SemilinearSet":
        return cls.make((), ((a, d),))

    @classmethod
    def range_set(cls, lo: int, hi: int) -> "SemilinearSet":
        """Half-open range [lo, hi)."""
        return cls.make(range(lo, hi))

    # -- queries ---------------------------------------------------------

    def __contains__(self, x: int) -> bool:
        return x in self.explicit or any(
            x >= a and (x - a) % d == 0 for a, d in self.progressions
        )

    @property
    def is_finite(self) -> bool:
        return not self.progressions

    @property
    def is_empty(self) -> bool:
        return not self.explicit and not self.progressions

    @property
    def is_infinite(self) -> bool:
        return bool(self.progressions)

    @property
    def bound(self) -> int:
        """Membership at and beyond this value is purely periodic."""
        return max(
            [0, *(x + 1 for x in self.explicit), *(a + d for a, d in self.progressions)]
        )

    def min_value(self) -> int:
        if self.is_empty:
            raise ValueError("empty set has no minimum")
        cands = list(self.explicit) + [a for a, _ in self.progressions]
        return min(cands)

    def elements_below(self, n: int) -> list[int]:
        return [x for x in range(n) if x in self]

    def count_below(self, n: int) -> int:
        return sum(1 for x in range(n) if x in self)

    def first(self, k: int) -> list[int]:
        """The k smallest elements (fewer if the set is smaller)."""
        out = []
        x = 0
        limit = self.bound + k * max([1, *(d for _, d in self.progressions)])
        while len(out) < k and x <= limit:
            if x in self:
                out.append(x)
            x += 1
        return out

    # -- algebra ---------------------------------------------------------

    def _combine(self, other: "SemilinearSet", op) -> "SemilinearSet":
        t0 = max(self.bound, other.bound)
        d0 = lcm(
            reduce(lcm, (d for _, d in self.progressions), 1),
            reduce(lcm, (d for _, d in other.progressions), 1),
        )
        return SemilinearSet._canonical(lambda x: op(x in self, x in other), t0, d0)

    def union(self, other: "SemilinearSet") -> "SemilinearSet":
        return self._combine(other, lambda a, b: a or b)

    def intersection(self, other: "SemilinearSet") -> "SemilinearSet":
        return self._combine(other, lambda a, b: a and b)

    def difference(self, other: "SemilinearSet") -> "SemilinearSet":
        return self._combine(other, lambda a, b: a and not b)

    def complement(self) -> "SemilinearSet":
        d0 = reduce(lcm, (d for _, d in self.progressions), 1)
        return SemilinearSet._canonical(lambda x: x not in self, self.bound, d0)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def issubset(self, other: "SemilinearSet") -> bool:
        return self.difference(other).is_empty

    def isdisjoint(self, other: "SemilinearSet") -> bool:
        return self.intersection(other).is_empty

    # -- text form ---------------------------------------------------------

    def text(self) -> str:
        items = [str(x) for x in sorted(self.explicit)]
        items += [f"{a}+{d}t" for a, d in sorted(self.progressions)]
        return "{" + ",".join(items) + "}"

    @classmethod
    def parse(cls, s: str) -> "SemilinearSet":
        s = s.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise ValueError(f"bad semilinear text: {s!r}")
        body = s[1:-1].strip()
        explicit, progs = [], []
        if body:
            for item in body.split(","):
                item = item.strip()
                m = _PROG_RE.match(item)
                if m:
                    progs.append((int(m.group(1)), int(m.group(2))))
                else:
                    explicit.append(int(item))
        return cls.make(explicit, progs)

    def __repr__(self) -> str:
        return f"SemilinearSet({self.text()})"
