"""Exact binomial-ideal engine and the primality certification pipeline.

Everything runs over arbitrary-precision integers.  Monomials are exponent
tuples over a fixed, sorted variable ring; inside the Groebner core they
are packed into single big integers (one bit field per variable plus a
guard bit) so that divisibility, multiplication, and order comparison are
constant-count big-int operations.  The kernel of a vertex map is computed
as lattice-basis ideal -> saturation by every variable -> reduced Groebner
basis, and equality of reduced bases is the certificate for a Prime
verdict.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Sequence

from .classify import closed_path_certificate, find_l_configurations, find_ladders
from .grid import Polyomino, is_simple, vertices
from .ideals import (
    Binomial,
    Monomial,
    ToricMap,
    Var,
    check_containment,
    inner_minors,
    toric_map_ladder,
    toric_map_lconfig,
    toric_map_marked,
    vertex_var,
)
from .zigzag import ZigZagWalk, find_zigzag_walk, verify_zigzag

Mono = tuple[int, ...]
EngineBinomial = tuple[Mono, Mono]

_FIELD_BITS = 20
_FIELD_MAX = 1 << (_FIELD_BITS - 1)


class BudgetExhausted(Exception):
    """A Groebner computation hit its pair, degree, or time cap.

    Carries the partial state: pairs processed, the largest degree seen,
    and (when the main loop was already running) the basis size so far.
    """

    def __init__(self, reason: str, pairs: int, max_degree_seen: int):
        self.reason = reason
        self.pairs = pairs
        self.max_degree_seen = max_degree_seen
        self.basis_size: int | None = None
        super().__init__(f"{reason} (pairs={pairs}, max degree seen={max_degree_seen})")


class NotInSupportedClass(ValueError):
    """certify_primality only covers simple shapes and closed paths."""


class CounterexampleFound(RuntimeError):
    """A machine check contradicted a certified structural fact."""


@dataclass(frozen=True)
class Budget:
    """Caps for a single ideal computation; ``None`` means unlimited."""

    max_pairs: int | None = None
    max_degree: int | None = None
    max_seconds: float | None = None

    def start(self) -> "_BudgetClock":
        return _BudgetClock(self)


class _BudgetClock:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.pairs = 0
        self.max_degree_seen = 0
        self.t0 = time.monotonic()

    def tick_pair(self, degree: int) -> None:
        self.pairs += 1
        if degree > self.max_degree_seen:
            self.max_degree_seen = degree
        b = self.budget
        if b.max_pairs is not None and self.pairs > b.max_pairs:
            raise BudgetExhausted("pair cap", self.pairs, self.max_degree_seen)
        if b.max_degree is not None and degree > b.max_degree:
            raise BudgetExhausted("degree cap", self.pairs, self.max_degree_seen)
        if b.max_seconds is not None and self.pairs % 64 == 0:
            if time.monotonic() - self.t0 > b.max_seconds:
                raise BudgetExhausted("time cap", self.pairs, self.max_degree_seen)


UNLIMITED = Budget()


# ---------------------------------------------------------------------------
# Monomial orders and the packed representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """Total multiplicative well-order on exponent tuples.

    ``significance`` lists ring positions from most to least significant.
    """

    kind: str  # "degrevlex" | "lex"
    significance: tuple[int, ...]

    def key(self, m: Mono):
        mm = tuple(m[i] for i in self.significance)
        if self.kind == "lex":
            return mm
        return (sum(m), tuple(-e for e in reversed(mm)))

    @classmethod
    def degrevlex(cls, n: int) -> "MonomialOrder":
        return cls("degrevlex", tuple(range(n)))

    @classmethod
    def lex(cls, n: int) -> "MonomialOrder":
        return cls("lex", tuple(range(n)))

    @classmethod
    def degrevlex_cheapest(cls, n: int, cheapest: int) -> "MonomialOrder":
        sig = tuple(i for i in range(n) if i != cheapest) + (cheapest,)
        return cls("degrevlex", sig)


class _PackedRing:
    """Bit-field packing of exponent tuples aligned with a monomial order.

    For degrevlex the cheapest variable occupies the most significant
    field, so that (deg, packed) with the integer comparison *reversed*
    realizes the order; for lex the most significant variable sits on top
    and plain integer comparison realizes it.
    """

    __slots__ = ("n", "kind", "field_of", "var_of", "guards", "ones", "low")

    def __init__(self, order: MonomialOrder, n: int):
        self.n = n
        self.kind = order.kind
        sig = order.significance
        if order.kind == "degrevlex":
            field_of = {sig[k]: k for k in range(n)}
        else:
            field_of = {sig[k]: n - 1 - k for k in range(n)}
        self.field_of = tuple(field_of[i] for i in range(n))
        self.var_of = tuple(sorted(range(n), key=lambda i: self.field_of[i]))
        self.guards = sum(1 << (k * _FIELD_BITS + _FIELD_BITS - 1) for k in range(n))
        self.ones = sum(1 << (k * _FIELD_BITS) for k in range(n))
        self.low = (1 << _FIELD_BITS) - 1

    def pack(self, mono: Mono) -> int:
        packed = 0
        for i, e in enumerate(mono):
            if e:
                if e >= _FIELD_MAX:
                    raise OverflowError("exponent too large for the packed field")
                packed += e << (self.field_of[i] * _FIELD_BITS)
        return packed

    def unpack(self, packed: int) -> Mono:
        mono = [0] * self.n
        k = 0
        while packed:
            mono[self.var_of[k]] = packed & self.low
            packed >>= _FIELD_BITS
            k += 1
        return tuple(mono)

    def divides(self, a: int, b: int) -> bool:
        return ((b | self.guards) - a) & self.guards == self.guards

    def lcm(self, a: int, b: int) -> int:
        t = (a | self.guards) - b
        mask = (t & self.guards) >> (_FIELD_BITS - 1)
        smear = mask * self.low
        return b + (t & smear & ~self.guards)

    def nonzero_mask(self, a: int) -> int:
        return ((a | self.guards) - self.ones) & self.guards

    def coprime(self, a: int, b: int) -> bool:
        return self.nonzero_mask(a) & self.nonzero_mask(b) == 0

    def degree(self, packed: int) -> int:
        total = 0
        while packed:
            total += packed & self.low
            packed >>= _FIELD_BITS
        return total

    def greater(self, deg_a: int, a: int, deg_b: int, b: int) -> bool:
        if self.kind == "degrevlex":
            if deg_a != deg_b:
                return deg_a > deg_b
            return a < b
        return a > b


# Engine-internal binomial: (deg_lead, packed_lead, deg_tail, packed_tail).
_Packed = tuple[int, int, int, int]


def _pk_normalize(ring: _PackedRing, da: int, a: int, db: int, b: int) -> _Packed | None:
    if a == b:
        return None
    if ring.greater(da, a, db, b):
        return (da, a, db, b)
    return (db, b, da, a)


def _pk_head_reduce(ring: _PackedRing, f: _Packed, basis: list[_Packed]) -> _Packed | None:
    """Reduce until the lead is irreducible; None encodes zero."""
    dl, lead, dt, tail = f
    changed = True
    while changed:
        changed = False
        for g_dl, g_lead, g_dt, g_tail in basis:
            if g_dl <= dl and ring.divides(g_lead, lead):
                lead = lead - g_lead + g_tail
                dl = dl - g_dl + g_dt
                if lead == tail:
                    return None
                if ring.greater(dt, tail, dl, lead):
                    dl, lead, dt, tail = dt, tail, dl, lead
                changed = True
                break
    return (dl, lead, dt, tail)


def _pk_full_reduce(ring: _PackedRing, f: _Packed, basis: list[_Packed]) -> _Packed | None:
    reduced = _pk_head_reduce(ring, f, basis)
    if reduced is None:
        return None
    dl, lead, dt, tail = reduced
    changed = True
    while changed:
        changed = False
        for g_dl, g_lead, g_dt, g_tail in basis:
            if g_dl <= dt and ring.divides(g_lead, tail):
                tail = tail - g_lead + g_tail
                dt = dt - g_dl + g_dt
                if lead == tail:
                    return None
                changed = True
                break
    return (dl, lead, dt, tail)


def _pk_interreduce(ring: _PackedRing, basis: list[_Packed]) -> list[_Packed]:
    """Minimal generators with irreducible tails: the reduced basis."""
    ordered = sorted(set(basis), key=lambda g: (g[0], -g[1]) if ring.kind == "degrevlex" else (-g[1],))
    minimal: list[_Packed] = []
    for g in ordered:
        if any(h[0] <= g[0] and ring.divides(h[1], g[1]) for h in minimal):
            continue
        minimal.append(g)
    result: list[_Packed] = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        reduced = _pk_full_reduce(ring, g, others)
        if reduced is not None:
            result.append(reduced)
    result.sort(key=lambda g: (g[0], -g[1], g[2], -g[3]) if ring.kind == "degrevlex"
                else (-g[1], -g[3]))
    return result


def _gm_update(ring: _PackedRing, basis: list[_Packed], pairs: list[tuple[int, int, int]],
               cancelled: set[tuple[int, int]], k: int) -> None:
    """Gebauer-Moeller pair update for the new basis element at index k."""
    lm_k = basis[k][1]
    lcms = []
    for i in range(k):
        lcm_ik = ring.lcm(basis[i][1], lm_k)
        lcms.append((ring.degree(lcm_ik), lcm_ik, i))
    # Criterion M: drop candidates whose lcm is properly divisible by another
    # candidate's lcm; criterion F: keep one candidate per lcm value;
    # coprime criterion: drop a whole lcm class containing a coprime pair.
    lcms.sort()
    kept: list[tuple[int, int, int]] = []
    by_value: dict[int, list[int]] = {}
    for deg, value, i in lcms:
        if any(v != value and ring.divides(v, value) for v in by_value):
            continue
        by_value.setdefault(value, []).append(i)
    for value, members in sorted(by_value.items()):
        if any(ring.coprime(basis[i][1], lm_k) for i in members):
            continue
        i = min(members)
        heappush(pairs, (ring.degree(ring.lcm(basis[i][1], lm_k)), i, k))
    # Criterion B: cancel old pairs strictly refined by the new lead.
    for deg, i, j in pairs:
        if j == k or (i, j) in cancelled:
            continue
        lcm_ij = ring.lcm(basis[i][1], basis[j][1])
        if ring.divides(lm_k, lcm_ij):
            if ring.lcm(basis[i][1], lm_k) != lcm_ij and ring.lcm(basis[j][1], lm_k) != lcm_ij:
                cancelled.add((i, j))


def _pk_buchberger(ring: _PackedRing, gens: list[_Packed], clock: _BudgetClock) -> list[_Packed]:
    basis: list[_Packed] = []
    pairs: list[tuple[int, int, int]] = []
    cancelled: set[tuple[int, int]] = set()
    for g in gens:
        h = _pk_head_reduce(ring, g, basis)
        if h is None:
            continue
        basis.append(h)
        _gm_update(ring, basis, pairs, cancelled, len(basis) - 1)
    try:
        while pairs:
            degree, i, j = heappop(pairs)
            if (i, j) in cancelled:
                continue
            clock.tick_pair(degree)
            gi, gj = basis[i], basis[j]
            lcm = ring.lcm(gi[1], gj[1])
            s_plus = lcm - gi[1] + gi[3]
            s_minus = lcm - gj[1] + gj[3]
            d_plus = degree - gi[0] + gi[2]
            d_minus = degree - gj[0] + gj[2]
            s = _pk_normalize(ring, d_plus, s_plus, d_minus, s_minus)
            if s is None:
                continue
            h = _pk_head_reduce(ring, s, basis)
            if h is None:
                continue
            basis.append(h)
            _gm_update(ring, basis, pairs, cancelled, len(basis) - 1)
    except BudgetExhausted as exc:
        exc.basis_size = len(basis)
        raise
    return _pk_interreduce(ring, basis)


def buchberger_engine(gens: Iterable[EngineBinomial], order: MonomialOrder,
                      budget: Budget = UNLIMITED) -> list[EngineBinomial]:
    """Reduced Groebner basis of a binomial ideal over exponent tuples.

    Normal selection strategy (ascending lcm degree) with Gebauer-Moeller
    pair pruning.  Budget caps raise :class:`BudgetExhausted`.
    """
    gens = list(gens)
    if not gens:
        return []
    n = len(gens[0][0])
    ring = _PackedRing(order, n)
    clock = budget.start()
    packed = []
    for a, b in gens:
        pa, pb = ring.pack(a), ring.pack(b)
        norm = _pk_normalize(ring, sum(a), pa, sum(b), pb)
        if norm is not None:
            packed.append(norm)
    reduced = _pk_buchberger(ring, packed, clock)
    return [(ring.unpack(lead), ring.unpack(tail)) for _, lead, _, tail in reduced]


def saturate_engine(gens: Iterable[EngineBinomial], var_index: int, n: int,
                    budget: Budget = UNLIMITED) -> list[EngineBinomial]:
    """Generators of (ideal : x_i^infinity) for standard-graded binomials.

    With the saturating variable cheapest in degrevlex, a homogeneous
    reduced-basis element divisible by the variable is divisible as a
    whole, so stripping the variable's full power from every element
    generates the quotient.  Inputs must be homogeneous.
    """
    gens = list(gens)
    for lead, tail in gens:
        if sum(lead) != sum(tail):
            raise ValueError("saturation requires standard-graded binomials")
    order = MonomialOrder.degrevlex_cheapest(n, var_index)
    basis = buchberger_engine(gens, order, budget)
    divided: list[EngineBinomial] = []
    for lead, tail in basis:
        k = min(lead[var_index], tail[var_index])
        if k:
            lead = lead[:var_index] + (lead[var_index] - k,) + lead[var_index + 1:]
            tail = tail[:var_index] + (tail[var_index] - k,) + tail[var_index + 1:]
        divided.append((lead, tail))
    return divided


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of the integer null space of the matrix, via column reduction.

    Unimodular column operations (tracked in T) shear the matrix to column
    echelon form; the trailing columns of T then form a lattice basis of
    the kernel.  Exact arbitrary-precision arithmetic throughout.
    """
    m = len(rows)
    if m == 0:
        raise ValueError("matrix needs at least one row")
    n = len(rows[0])
    a = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in a):
        raise ValueError("ragged matrix")
    t = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    frontier = 0
    for r in range(m):
        pivot = None
        for j in range(frontier, n):
            if a[r][j] == 0:
                continue
            if pivot is None:
                pivot = j
                continue
            g, s, u = _xgcd(a[r][pivot], a[r][j])
            p_over, j_over = a[r][pivot] // g, a[r][j] // g
            for mat in (a, t):
                for row in mat:
                    vp, vj = row[pivot], row[j]
                    row[pivot] = s * vp + u * vj
                    row[j] = -j_over * vp + p_over * vj
        if pivot is None:
            continue
        if pivot != frontier:
            for mat in (a, t):
                for row in mat:
                    row[pivot], row[frontier] = row[frontier], row[pivot]
        if a[r][frontier] < 0:
            for mat in (a, t):
                for row in mat:
                    row[frontier] = -row[frontier]
        frontier += 1
    kernel = []
    for j in range(frontier, n):
        vec = tuple(t[i][j] for i in range(n))
        lead = next((x for x in vec if x != 0), 0)
        if lead < 0:
            vec = tuple(-x for x in vec)
        kernel.append(vec)
    kernel.sort()
    return kernel


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b == g > 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def lattice_ideal_engine(basis_vectors: Iterable[Sequence[int]]) -> list[EngineBinomial]:
    """One binomial x^{u+} - x^{u-} per lattice basis vector."""
    gens = []
    for vec in basis_vectors:
        if not any(vec):
            raise ValueError("zero vector has no binomial")
        plus = tuple(x if x > 0 else 0 for x in vec)
        minus = tuple(-x if x < 0 else 0 for x in vec)
        gens.append((plus, minus))
    return gens


def lattice_basis_ideal(basis_vectors: Iterable[Sequence[int]],
                        ring: tuple[Var, ...]) -> list[Binomial]:
    """Named-variable form of the lattice-basis binomials."""
    return _from_engine(lattice_ideal_engine(basis_vectors), tuple(ring))


# ---------------------------------------------------------------------------
# Named-variable layer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentMatrix:
    """Column r is the exponent vector of the image of vertex variable r."""

    row_variables: tuple[Var, ...]
    column_variables: tuple[Var, ...]
    entries: tuple[tuple[int, ...], ...]


def exponent_matrix(phi: ToricMap) -> ExponentMatrix:
    columns = tuple(vertex_var(v) for v in phi.domain())
    rows = phi.target_variables
    row_index = {v: i for i, v in enumerate(rows)}
    entries = [[0] * len(columns) for _ in rows]
    for col, (_, mono) in enumerate(phi.assignment):
        for tv, te in mono.exponents:
            entries[row_index[tv]][col] = te
    return ExponentMatrix(rows, columns, tuple(tuple(r) for r in entries))


def _to_engine(binomials: Iterable[Binomial], ring: tuple[Var, ...]) -> list[EngineBinomial]:
    index = {v: i for i, v in enumerate(ring)}
    out = []
    for b in binomials:
        plus = [0] * len(ring)
        minus = [0] * len(ring)
        for v, e in b.plus.exponents:
            plus[index[v]] = e
        for v, e in b.minus.exponents:
            minus[index[v]] = e
        out.append((tuple(plus), tuple(minus)))
    return out


def _from_engine(pairs: Iterable[EngineBinomial], ring: tuple[Var, ...]) -> list[Binomial]:
    out = []
    for lead, tail in pairs:
        plus = Monomial.from_dict({ring[i]: e for i, e in enumerate(lead) if e})
        minus = Monomial.from_dict({ring[i]: e for i, e in enumerate(tail) if e})
        out.append(Binomial(plus, minus))
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced basis over a named ring; generators sorted canonically."""

    ring: tuple[Var, ...]
    order_kind: str
    generators: tuple[Binomial, ...]
    reduced: bool = True

    def __len__(self) -> int:
        return len(self.generators)

    def to_json_dict(self) -> dict:
        from .ideals import format_var

        return {
            "order": self.order_kind,
            "reduced": self.reduced,
            "variables": [format_var(v) for v in self.ring],
            "generators": [
                {"plus": str(g.plus), "minus": str(g.minus)} for g in self.generators
            ],
        }


def buchberger(gens: Iterable[Binomial], ring: tuple[Var, ...],
               order: MonomialOrder | None = None,
               budget: Budget = UNLIMITED) -> GroebnerBasis:
    """Reduced Groebner basis of named binomials over the given ring."""
    ring = tuple(ring)
    if order is None:
        order = MonomialOrder.degrevlex(len(ring))
    reduced = buchberger_engine(_to_engine(gens, ring), order, budget)
    return GroebnerBasis(ring, order.kind, tuple(_from_engine(reduced, ring)))


def saturate(gens: Iterable[Binomial], var: Var, ring: tuple[Var, ...],
             budget: Budget = UNLIMITED) -> list[Binomial]:
    """Generators of (ideal : var^infinity), as a reduced basis; idempotent."""
    ring = tuple(ring)
    idx = ring.index(var)
    divided = saturate_engine(_to_engine(gens, ring), idx, len(ring), budget)
    order = MonomialOrder.degrevlex_cheapest(len(ring), idx)
    return _from_engine(buchberger_engine(divided, order, budget), ring)


def _toric_gb_engine(matrix: Sequence[Sequence[int]], n: int,
                     budget: Budget) -> list[EngineBinomial]:
    kernel = integer_kernel(matrix)
    if not kernel:
        return []
    gens = lattice_ideal_engine(kernel)
    for var_index in range(n):
        gens = saturate_engine(gens, var_index, n, budget)
    reduced = buchberger_engine(gens, MonomialOrder.degrevlex(n), budget)
    # Saturation sanity: a reduced basis of a monomial-saturated ideal has
    # coprime halves in every element.
    for lead, tail in reduced:
        if any(l and t for l, t in zip(lead, tail)):
            raise CounterexampleFound("saturation left a common monomial factor")
    return reduced


def toric_ideal_from_matrix(matrix: Sequence[Sequence[int]], ring: tuple[Var, ...],
                            budget: Budget = UNLIMITED) -> GroebnerBasis:
    """Reduced basis of the kernel ideal of a monomial map given by matrix."""
    reduced = _toric_gb_engine(matrix, len(ring), budget)
    # Kernel soundness: every generator must annihilate under the matrix.
    for lead, tail in reduced:
        for row in matrix:
            if sum(r * e for r, e in zip(row, lead)) != sum(r * e for r, e in zip(row, tail)):
                raise CounterexampleFound("basis element outside the map kernel")
    return GroebnerBasis(ring, "degrevlex", tuple(_from_engine(reduced, ring)))


def toric_ideal(phi: ToricMap, budget: Budget = UNLIMITED) -> GroebnerBasis:
    """Reduced basis of ker(phi) over the vertex variables, post-checked."""
    mat = exponent_matrix(phi)
    return toric_ideal_from_matrix(mat.entries, mat.column_variables, budget)


def ideal_equal(a: Iterable[Binomial], b: Iterable[Binomial], ring: tuple[Var, ...],
                budget: Budget = UNLIMITED) -> bool:
    """Compare reduced bases of two binomial ideals under one fixed order."""
    ga = buchberger(a, ring, budget=budget)
    gb = buchberger(b, ring, budget=budget)
    return ga.generators == gb.generators


def normal_form_monomial(mono: Mono, basis: Sequence[EngineBinomial],
                         order: MonomialOrder) -> Mono:
    """Irreducible rewrite of a single monomial modulo a binomial basis."""
    n = len(mono)
    ring = _PackedRing(order, n)
    packed_basis = [
        (sum(lead), ring.pack(lead), sum(tail), ring.pack(tail)) for lead, tail in basis
    ]
    current = ring.pack(mono)
    deg = sum(mono)
    changed = True
    while changed:
        changed = False
        for g_dl, g_lead, g_dt, g_tail in packed_basis:
            if g_dl <= deg and ring.divides(g_lead, current):
                current = current - g_lead + g_tail
                deg = deg - g_dl + g_dt
                changed = True
                break
    return ring.unpack(current)


def kernel_complete_up_to_degree(matrix: Sequence[Sequence[int]],
                                 gb: GroebnerBasis, degree: int) -> bool:
    """Brute-force oracle: map-equal monomial pairs must share normal forms.

    Enumerates every monomial of total degree <= ``degree``, groups them by
    image under the matrix, and checks that the reduced basis rewrites all
    members of a group to one normal form.
    """
    n = len(gb.ring)
    order = MonomialOrder.degrevlex(n)
    ring = _PackedRing(order, n)
    engine = [
        (sum(lead), ring.pack(lead), sum(tail), ring.pack(tail))
        for lead, tail in _to_engine(gb.generators, gb.ring)
    ]

    def normal_form(packed: int, deg: int) -> int:
        changed = True
        while changed:
            changed = False
            for g_dl, g_lead, g_dt, g_tail in engine:
                if g_dl <= deg and ring.divides(g_lead, packed):
                    packed = packed - g_lead + g_tail
                    deg = deg - g_dl + g_dt
                    changed = True
                    break
        return packed

    groups: dict[tuple[int, ...], int] = {}
    for total in range(degree + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            mono = [0] * n
            for i in combo:
                mono[i] += 1
            mono_t = tuple(mono)
            image = tuple(sum(r * e for r, e in zip(row, mono_t)) for row in matrix)
            nf = normal_form(ring.pack(mono_t), total)
            if image in groups:
                if groups[image] != nf:
                    return False
            else:
                groups[image] = nf
    return True


# ---------------------------------------------------------------------------
# Primality pipeline
# ---------------------------------------------------------------------------

PROOF_SIMPLE = "simple-toric"
PROOF_LCONFIG = "lconfig-toric"
PROOF_LADDER = "ladder-toric"
PROOF_MARKED = "marked-toric"

EQUALITY_FULL = "full"
EQUALITY_CONTAINMENT = "containment-only"


@dataclass(frozen=True)
class PrimalityVerdict:
    kind: str  # "prime" | "nonprime" | "inconclusive"
    proof: str | None = None
    equality: str | None = None
    witness: ZigZagWalk | None = None
    reason: str | None = None
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "proof": self.proof,
            "equality": self.equality,
            "witness": None if self.witness is None else {
                "intervals": [{"a": list(i.a), "b": list(i.b)} for i in self.witness.intervals],
                "v": [list(p) for p in self.witness.v],
                "z": [list(p) for p in self.witness.z],
                "u": [list(p) for p in self.witness.u],
            },
            "reason": self.reason,
            "notes": list(self.notes),
        }


def vertex_ring(p: Polyomino) -> tuple[Var, ...]:
    return tuple(vertex_var(v) for v in sorted(vertices(p)))


def attempt_equality(p: Polyomino, phi: ToricMap, budget: Budget) -> tuple[str, tuple[str, ...]]:
    """Full reduced-basis equality of generator ideal and map kernel.

    Returns the equality tag and notes; inequality is a counterexample and
    raises, budget exhaustion downgrades to containment-only.
    """
    ring = vertex_ring(p)
    try:
        gb_kernel = toric_ideal(phi, budget)
        gb_minors = buchberger(inner_minors(p), ring, budget=budget)
    except BudgetExhausted as exc:
        return EQUALITY_CONTAINMENT, (f"budget exhausted: {exc.reason}",)
    if gb_kernel.generators != gb_minors.generators:
        raise CounterexampleFound("generator ideal differs from map kernel")
    return EQUALITY_FULL, ()


def certify_primality(p: Polyomino, budget: Budget = UNLIMITED) -> PrimalityVerdict:
    """Decide primality of the inner-minor ideal for simple shapes and closed paths.

    Simple shapes are certified with the unmarked edge map.  For closed
    paths: a zig-zag walk witnesses NonPrime; otherwise an L-configuration
    or a ladder of three or more steps must exist and its marked map
    certifies Prime, with full basis equality attempted inside the budget.
    """
    if is_simple(p):
        phi = toric_map_marked(p, ())
        if not check_containment(p, phi):
            raise CounterexampleFound("edge map fails to kill an inner minor")
        equality, notes = attempt_equality(p, phi, budget)
        return PrimalityVerdict("prime", PROOF_SIMPLE, equality, notes=notes)
    cert = closed_path_certificate(p)
    if cert is None:
        raise NotInSupportedClass(
            "shape is neither simple nor a closed path; use the family pipeline"
        )
    witness = find_zigzag_walk(p)
    if witness is not None:
        if not verify_zigzag(p, witness):
            raise CounterexampleFound("zig-zag search returned an invalid witness")
        return PrimalityVerdict("nonprime", witness=witness)
    lconfigs = find_l_configurations(p)
    if lconfigs:
        phi = toric_map_lconfig(p, lconfigs[0])
        proof = PROOF_LCONFIG
    else:
        ladders = find_ladders(p, min_steps=3)
        if not ladders:
            raise CounterexampleFound(
                "closed path with no zig-zag walk, no L-configuration, no 3-step ladder"
            )
        phi = None
        for ladder in ladders:
            try:
                phi = toric_map_ladder(p, ladder)
                break
            except ValueError:
                continue
        if phi is None:
            raise CounterexampleFound("no ladder admits the reference arrangement")
        proof = PROOF_LADDER
    if not check_containment(p, phi):
        raise CounterexampleFound(f"{proof} map fails to kill an inner minor")
    equality, notes = attempt_equality(p, phi, budget)
    return PrimalityVerdict("prime", proof, equality, notes=notes)
