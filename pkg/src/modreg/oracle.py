"""Definition-level brute force on concrete finite abelian groups.

Nothing in this module trusts the descriptor-level classification rules: a
group is a set of coordinate tuples under componentwise modular addition, a
subgroup is an explicit element set, and "direct summand" means an explicit
complement.  Verdicts are produced by exhaustive search, and whenever a
search would exceed its configured cap the oracle raises ``CapacityError``
rather than guessing.

Two search routes exist for the virtual-regularity check:

* the lattice route enumerates every subgroup by closing cyclic seeds under
  pairwise joins and scans complementary-order subgroups for complements;
* the projection route, used on a full group instance, searches for a module
  projection onto each candidate cyclic subgroup <b>.  A subgroup is a
  direct summand exactly when such a projection exists (its kernel is a
  complement), so this route decides the same predicate while staying usable
  on groups whose subgroup lattice is far beyond the enumeration cap.

Both routes are exercised against each other in the test suite.
"""

import itertools
from math import gcd, prod

from .abgroups import FgAbGroup, PrimaryData, invariant_factors_from_primary
from .errors import CapacityError, DomainError
from .intarith import element_order, factorize

DEFAULT_ORDER_CAP = 360
DEFAULT_SUBGROUP_CAP = 50_000


class FiniteGroupInstance:
    """The direct product of Z_{m} over a list of moduli, each >= 2.

    Elements are coordinate tuples; internally they are packed into
    mixed-radix indices (index 0 is the identity, and index order is the
    lexicographic order of coordinate tuples).
    """

    __slots__ = ("moduli", "order", "_orders", "_table", "_lattices")

    def __init__(self, moduli=()):
        ms = tuple(int(m) for m in moduli)
        for m in ms:
            if m < 2:
                raise DomainError(f"modulus must be >= 2, got {m}")
        self.moduli = ms
        self.order = prod(ms)
        self._orders = None
        self._table = None
        self._lattices = {}

    def __eq__(self, other):
        return isinstance(other, FiniteGroupInstance) and self.moduli == other.moduli

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        return f"FiniteGroupInstance(moduli={self.moduli})"

    def encode(self, coords) -> int:
        cs = tuple(coords)
        if len(cs) != len(self.moduli):
            raise DomainError(
                f"expected {len(self.moduli)} coordinates, got {len(cs)}"
            )
        idx = 0
        for c, m in zip(cs, self.moduli):
            if not 0 <= c < m:
                raise DomainError(f"coordinate {c} out of range for modulus {m}")
            idx = idx * m + c
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        out = []
        for m in reversed(self.moduli):
            idx, r = divmod(idx, m)
            out.append(r)
        return tuple(reversed(out))

    def element_orders(self) -> list[int]:
        if self._orders is None:
            self._orders = [
                element_order(self.decode(i), self.moduli) for i in range(self.order)
            ]
        return self._orders

    def _addition_table(self) -> list[list[int]]:
        if self._table is None:
            coords = [self.decode(i) for i in range(self.order)]
            ms = self.moduli
            table = []
            for x in coords:
                row = []
                for y in coords:
                    row.append(self.encode(tuple((a + b) % m for a, b, m in zip(x, y, ms))))
                table.append(row)
            self._table = table
        return self._table

    def _cyclic_indices(self, idx: int) -> frozenset[int]:
        ms = self.moduli
        g = self.decode(idx)
        seen = {0}
        cur = g
        while True:
            code = self.encode(cur)
            if code in seen and code != 0:
                break
            if code == 0:
                break
            seen.add(code)
            cur = tuple((a + b) % m for a, b, m in zip(cur, g, ms))
        return frozenset(seen)


class Subgroup:
    """A subgroup of a ``FiniteGroupInstance``, stored as its element set."""

    __slots__ = ("parent", "indices")

    def __init__(self, parent: FiniteGroupInstance, indices: frozenset[int]):
        self.parent = parent
        self.indices = indices

    def __len__(self):
        return len(self.indices)

    def __eq__(self, other):
        return (
            isinstance(other, Subgroup)
            and self.parent == other.parent
            and self.indices == other.indices
        )

    def __hash__(self):
        return hash((self.parent.moduli, self.indices))

    def __repr__(self):
        return f"Subgroup(order={len(self.indices)} of {self.parent.moduli})"

    @property
    def element_tuples(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.parent.decode(i) for i in sorted(self.indices))

    def contains(self, coords) -> bool:
        return self.parent.encode(coords) in self.indices


def all_elements(group: FiniteGroupInstance, order_cap: int | None = None) -> list[tuple[int, ...]]:
    """All coordinate tuples, in index order.  Never truncates silently."""
    cap = DEFAULT_ORDER_CAP if order_cap is None else order_cap
    if group.order > cap:
        raise CapacityError(f"group order {group.order} exceeds order cap {cap}")
    return [group.decode(i) for i in range(group.order)]


def full_subgroup(group: FiniteGroupInstance, order_cap: int | None = None) -> Subgroup:
    """The whole group as a subgroup of itself, subject to the order cap."""
    cap = DEFAULT_ORDER_CAP if order_cap is None else order_cap
    if group.order > cap:
        raise CapacityError(f"group order {group.order} exceeds order cap {cap}")
    return Subgroup(group, frozenset(range(group.order)))


def trivial_subgroup(group: FiniteGroupInstance) -> Subgroup:
    return Subgroup(group, frozenset({0}))


def cyclic_subgroup(group: FiniteGroupInstance, generator) -> Subgroup:
    """The subgroup generated by one element (given as a coordinate tuple)."""
    return Subgroup(group, group._cyclic_indices(group.encode(generator)))


def subgroup_from_elements(group: FiniteGroupInstance, elements) -> Subgroup:
    """Validated constructor: checks identity membership and closure."""
    indices = frozenset(group.encode(e) for e in elements)
    if 0 not in indices:
        raise DomainError("subgroup must contain the identity")
    table = group._addition_table()
    for x in indices:
        for y in indices:
            if table[x][y] not in indices:
                raise DomainError("element set is not closed under addition")
    return Subgroup(group, indices)


def subgroups_of(region: Subgroup, subgroup_cap: int | None = None) -> tuple[Subgroup, ...]:
    """Every subgroup contained in ``region``, each exactly once.

    Seeds with the cyclic subgroups of ``region``'s elements and repeatedly
    joins discovered subgroups with seeds until a fixpoint; for abelian
    groups the join of S with <g> is the plain element-set sum.  Results are
    memoized on the parent instance and returned sorted by (order, elements).
    """
    cap = DEFAULT_SUBGROUP_CAP if subgroup_cap is None else subgroup_cap
    group = region.parent
    cached = group._lattices.get(region.indices)
    if cached is not None:
        if len(cached) > cap:
            raise CapacityError(
                f"subgroup count {len(cached)} exceeds cap {cap}"
            )
        return cached

    table = group._addition_table()
    seeds = {group._cyclic_indices(i) for i in region.indices if i != 0}
    seeds = sorted(seeds, key=lambda s: (len(s), sorted(s)))

    found: set[frozenset[int]] = {frozenset({0})}
    queue: list[frozenset[int]] = [frozenset({0})]
    while queue:
        current = queue.pop()
        for seed in seeds:
            if seed <= current:
                continue
            joined = frozenset(
                table[x][y] for x in current for y in seed
            )
            if joined not in found:
                if len(found) + 1 > cap:
                    raise CapacityError(
                        f"subgroup count exceeds cap {cap} while enumerating"
                    )
                found.add(joined)
                queue.append(joined)

    out = tuple(
        Subgroup(group, fs)
        for fs in sorted(found, key=lambda s: (len(s), sorted(s)))
    )
    group._lattices[region.indices] = out
    return out


def all_subgroups(
    group: FiniteGroupInstance,
    subgroup_cap: int | None = None,
    order_cap: int | None = None,
) -> list[Subgroup]:
    """All subgroups of the full group, subject to both caps."""
    return list(subgroups_of(full_subgroup(group, order_cap), subgroup_cap))


def _by_order(lattice) -> dict[int, list[Subgroup]]:
    out: dict[int, list[Subgroup]] = {}
    for sub in lattice:
        out.setdefault(len(sub), []).append(sub)
    return out


def is_internal_summand(
    part: Subgroup, region: Subgroup, subgroup_cap: int | None = None
) -> bool:
    """Does ``part`` have a complement inside ``region``?

    Scans the subgroups of ``region`` whose order is |region|/|part| for one
    meeting ``part`` trivially; for finite groups those two conditions force
    part + complement = region, because the sum then has full order.
    """
    if not part.indices <= region.indices:
        raise DomainError("part must be contained in the ambient subgroup")
    total = len(region)
    size = len(part)
    if total % size:
        return False
    need = total // size
    part_set = part.indices
    for candidate in _by_order(subgroups_of(region, subgroup_cap)).get(need, ()):
        if len(part_set & candidate.indices) == 1:
            return True
    return False


def subgroup_type(sub: Subgroup) -> FgAbGroup:
    """Isomorphism type of a subgroup, recovered from element-order counts.

    For each prime p, the count c_k of elements killed by p^k is p raised to
    sum(min(lambda_i, k)) where lambda is the exponent partition; the jumps
    v_p(c_k) - v_p(c_{k-1}) therefore give the conjugate partition, which
    determines the exponents exactly.  No generator hunting required.
    """
    size = len(sub)
    if size == 1:
        return FgAbGroup(0, ())
    orders = sub.parent.element_orders()
    local = [orders[i] for i in sub.indices]
    parts: dict[int, tuple[int, ...]] = {}
    for p in factorize(size).factors:
        counts = [1]
        while True:
            pk = p ** len(counts)
            c = sum(1 for o in local if pk % o == 0)
            if c == counts[-1]:
                break
            counts.append(c)
        jumps = []
        for prev, cur in zip(counts, counts[1:]):
            ratio = cur // prev
            e = 0
            while ratio % p == 0:
                ratio //= p
                e += 1
            jumps.append(e)
        exps = []
        for e in range(1, len(jumps) + 1):
            mult = jumps[e - 1] - (jumps[e] if e < len(jumps) else 0)
            exps.extend([e] * mult)
        if exps:
            parts[p] = tuple(exps)
    return invariant_factors_from_primary(PrimaryData(parts), 0)


def _cyclic_summand_by_projection(group: FiniteGroupInstance, d: int, orders) -> bool:
    """Is some cyclic subgroup of order d a direct summand of the full group?

    A projection onto <b> sends the i-th canonical generator to t_i * b with
    moduli[i] * t_i = 0 (mod d), and restricts to the identity on <b> exactly
    when sum(b_i * t_i) = 1 (mod d).  The search space is the product of the
    gcd(moduli[i], d) admissible values per coordinate.
    """
    if d == 1:
        return True
    choices = [range(0, d, d // gcd(m, d)) for m in group.moduli]
    for idx in range(group.order):
        if orders[idx] != d:
            continue
        b = group.decode(idx)
        for t in itertools.product(*choices):
            if sum(c * s for c, s in zip(b, t)) % d == 1:
                return True
    return False


def _cyclic_summand_in_lattice(lattice_by_order, total, d, orders) -> bool:
    if total % d:
        return False
    complements = lattice_by_order.get(total // d, ())
    for candidate in lattice_by_order.get(d, ()):
        if not any(orders[i] == d for i in candidate.indices):
            continue
        cset = candidate.indices
        for comp in complements:
            if len(cset & comp.indices) == 1:
                return True
    return False


def _vr_within(region: Subgroup, lattice) -> tuple[bool, tuple[int, ...] | None]:
    group = region.parent
    orders = group.element_orders()
    by_order = _by_order(lattice)
    total = len(region)
    memo: dict[int, bool] = {1: True}
    for idx in sorted(region.indices):
        d = orders[idx]
        if d not in memo:
            memo[d] = _cyclic_summand_in_lattice(by_order, total, d, orders)
        if not memo[d]:
            return False, group.decode(idx)
    return True, None


def oracle_virtually_regular(
    region: Subgroup,
    *,
    method: str = "auto",
    subgroup_cap: int | None = None,
) -> tuple[bool, tuple[int, ...] | None]:
    """Check that every cyclic subgroup matches some internal summand.

    Returns (verdict, witness) where the witness is the first element, in
    index order, whose cyclic subgroup is isomorphic to no direct summand.
    ``method`` selects the search route: "projection" (full groups only),
    "lattice", or "auto" (projection on a full group, lattice otherwise).
    """
    if method not in ("auto", "projection", "lattice"):
        raise DomainError(f"unknown method {method!r}")
    group = region.parent
    is_full = len(region) == group.order
    if method == "projection" and not is_full:
        raise DomainError("projection search needs the full group presentation")
    if method == "projection" or (method == "auto" and is_full):
        orders = group.element_orders()
        memo: dict[int, bool] = {1: True}
        for idx in range(group.order):
            d = orders[idx]
            if d not in memo:
                memo[d] = _cyclic_summand_by_projection(group, d, orders)
            if not memo[d]:
                return False, group.decode(idx)
        return True, None
    return _vr_within(region, subgroups_of(region, subgroup_cap))


def oracle_strongly_vr(region: Subgroup, subgroup_cap: int | None = None) -> bool:
    """Every subgroup must be isomorphic to some internal summand."""
    lattice = subgroups_of(region, subgroup_cap)
    by_order = _by_order(lattice)
    total = len(region)
    type_of = {sub: subgroup_type(sub).invariant_factors for sub in lattice}
    summand_types: set[tuple[int, ...]] = set()
    for sub in lattice:
        key = type_of[sub]
        if key in summand_types:
            continue
        sset = sub.indices
        for comp in by_order.get(total // len(sub), ()):
            if len(sset & comp.indices) == 1:
                summand_types.add(key)
                break
    return all(key in summand_types for key in type_of.values())


def oracle_completely_vr(region: Subgroup, subgroup_cap: int | None = None) -> bool:
    """Every subgroup, viewed as a group in its own right, must be VR."""
    lattice = subgroups_of(region, subgroup_cap)
    ok, _ = oracle_virtually_regular(region, subgroup_cap=subgroup_cap)
    if not ok:
        return False
    for sub in sorted(lattice, key=len):
        if len(sub) == len(region):
            continue
        inner = tuple(h for h in lattice if h.indices <= sub.indices)
        if not _vr_within(sub, inner)[0]:
            return False
    return True


def oracle_strongly_regular(region: Subgroup, subgroup_cap: int | None = None) -> bool:
    """Every cyclic subgroup must itself be a summand, no isomorphism slack."""
    lattice = subgroups_of(region, subgroup_cap)
    by_order = _by_order(lattice)
    total = len(region)
    group = region.parent
    seen: set[frozenset[int]] = set()
    for idx in sorted(region.indices):
        cyc = group._cyclic_indices(idx)
        if cyc in seen:
            continue
        seen.add(cyc)
        if total % len(cyc):
            return False
        if not any(
            len(cyc & comp.indices) == 1
            for comp in by_order.get(total // len(cyc), ())
        ):
            return False
    return True


def all_subgroups_are_summands(region: Subgroup, subgroup_cap: int | None = None) -> bool:
    """Literal complement search for every subgroup, not just cyclic ones."""
    lattice = subgroups_of(region, subgroup_cap)
    by_order = _by_order(lattice)
    total = len(region)
    for sub in lattice:
        sset = sub.indices
        if not any(
            len(sset & comp.indices) == 1
            for comp in by_order.get(total // len(sub), ())
        ):
            return False
    return True
