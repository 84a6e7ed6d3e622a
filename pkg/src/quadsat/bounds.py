"""Upper bounds on the length function l_q(3t+1, 3).

Integer recurrences run on Python ints (exact at any size); real-valued
bounds are plain floats with the natural logarithm throughout.  Each bound
has a region of q where it is proved; functions compute outside that region
when the formula makes sense and report validity separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .geometry import theta

V_THRESHOLD = 1516750
Q0 = 10**5
DELTA_THRESHOLD = 88274
KNOWN_Q_FLOOR = 14983
LAMBDA_STAR = 36 ** (1 / 3)
CBRT18 = 18 ** (1 / 3)
KNOWN_LIMIT = 1.5 * LAMBDA_STAR
KNOWN_OVER_D_LIMIT = 1.5 * 2 ** (1 / 3)
K_MAX = 20.339
BOUND_E_RANGE = (13, 7949)


class OutOfRegion(ValueError):
    """A bound was requested outside the q- or parameter-region where it is defined."""


def cbrt_qlnq(q: float) -> float:
    """The normalizer (q ln q)^(1/3)."""
    return (q * math.log(q)) ** (1 / 3)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def binom2(w: int) -> int:
    return w * (w - 1) // 2


# --- lower bound on S_w^min -------------------------------------------------

def s_w_min(w: int, q: int) -> int:
    """Guaranteed minimum number of candidates covering any uncovered point.

    The odd/even fallbacks (q^2-1)/4 and q^2/4 are exact integers.
    """
    if w < 3:
        raise ValueError("w must be >= 3")
    c = binom2(w)
    if 2 * c - 1 <= q:
        return c * (q - c)
    if q % 2:
        return (q * q - 1) // 4
    return q * q // 4


# --- Bound A -----------------------------------------------------------------

@dataclass(frozen=True)
class BoundA:
    q: int
    w: int
    n: int
    trajectory: tuple[int, ...]  # #U_w for w = 3, ..., w+1

    def uncovered_at(self, w: int) -> int:
        return self.trajectory[w - 3]

    @property
    def normalized(self) -> float:
        return self.n / cbrt_qlnq(self.q)


def bound_a(q: int) -> BoundA:
    """Exact integer recurrence #U_{w+1} = #U_w - ceil(S_w^min #U_w / (q^2+1-w))."""
    if q < 2:
        raise ValueError("q must be >= 2")
    U = q**3
    traj = [U]
    w = 3
    while True:
        denom = q * q + 1 - w
        if denom <= 0:
            raise ArithmeticError(f"recurrence ran past the quadric size at q={q}")
        dec = _ceil_div(s_w_min(w, q) * U, denom)
        if dec <= 0:
            raise ArithmeticError(f"recurrence stalled at q={q}, w={w}")
        U = max(U - dec, 0)
        traj.append(U)
        if U <= 1:
            return BoundA(q, w, w + 1, tuple(traj))
        w += 1


def product_form_trajectory(q: int, steps: int) -> list[float]:
    """Real relaxation #U_3 * prod(1 - S_j^min/(q^2+1-j)), j = 3..w."""
    out = [float(q**3)]
    val = float(q**3)
    for j in range(3, 3 + steps):
        val *= 1 - s_w_min(j, q) / (q * q + 1 - j)
        out.append(val)
    return out


# --- Bound B -----------------------------------------------------------------

def bound_b_lhs(w: int, q: float) -> float:
    return (w - 1) ** 3 - 0.3 * w**5 / q


@dataclass(frozen=True)
class BoundB:
    q: int
    w: int | None
    n: int | None
    valid: bool  # q >= q0

    @property
    def applicable(self) -> bool:
        return self.w is not None

    @property
    def normalized(self) -> float | None:
        return None if self.n is None else self.n / cbrt_qlnq(self.q)


def bound_b(q: int) -> BoundB:
    """Smallest w with (w-1)^3 - 0.3 w^5/q >= 18 q ln q while 2C(w,2)-1 <= q."""
    rhs = 18 * q * math.log(q)
    w = 3
    while 2 * binom2(w) - 1 <= q:
        if bound_b_lhs(w, q) >= rhs:
            return BoundB(q, w, w + 1, q >= Q0)
        w += 1
    return BoundB(q, None, None, q >= Q0)


def delta_q0(q: float) -> float:
    s = math.sqrt(q)
    return (s - 1) ** 3 - 0.3 * q * s - 18 * q * math.log(q)


def delta_q0_root(lo: int = 1000, hi: int = 10**7) -> int:
    """Smallest integer q in (lo, hi] with delta_q0(q) > 0, by bisection.

    delta_q0 changes sign once on this bracket.
    """
    if delta_q0(lo) > 0 or delta_q0(hi) <= 0:
        raise ValueError("bracket does not straddle the root")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if delta_q0(mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


# --- Bound C -----------------------------------------------------------------

def F_kq(k: float, q: float) -> float:
    """((k-18)/0.302)^3 / k^5 - ln^2(q)/q."""
    if k <= 18:
        raise OutOfRegion("F(k, q) needs k > 18")
    L = math.log(q)
    return ((k - 18) / 0.302) ** 3 / k**5 - L * L / q


@dataclass(frozen=True)
class WSolution:
    k: float
    ceil_w: int
    usable: bool  # ceil_w > V


def solve_W(k: float) -> WSolution:
    """Smallest integer q with F(k, q) >= 0 on the increasing branch q > e^2.

    Doubling bracket then integer bisection.  The root is reported even if it
    falls at or below V; ``usable`` says whether the bound applies.
    """
    if not 18 < k <= 45:
        raise OutOfRegion(f"k={k} outside (18, 45)")
    lo, hi = 8, 16  # F increases in q once ln q > 2
    while F_kq(k, hi) < 0:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if F_kq(k, mid) >= 0:
            hi = mid
        else:
            lo = mid
    return WSolution(k, hi, hi > V_THRESHOLD)


@dataclass(frozen=True)
class RealBound:
    q: float
    value: float
    normalized: float

    @property
    def ceil(self) -> int:
        return math.ceil(self.value)


def bound_c(k: float, q: float, check_region: bool = True) -> RealBound:
    if k <= 18:
        raise OutOfRegion("Bound C needs k > 18")
    if check_region:
        sol = solve_W(k)
        if not sol.usable:
            raise OutOfRegion(f"k={k}: root {sol.ceil_w} is not above V={V_THRESHOLD}")
        if q < sol.ceil_w:
            raise OutOfRegion(f"q={q} below ceil(W({k}))={sol.ceil_w}")
    val = (k * q * math.log(q)) ** (1 / 3) + 2
    return RealBound(q, val, k ** (1 / 3) + 2 / cbrt_qlnq(q))


# --- Bound D -----------------------------------------------------------------

def bound_d(q: float, eps: float) -> RealBound:
    """Asymptotic bound; no hard floor on q."""
    if eps <= 0:
        raise OutOfRegion("epsilon must be > 0")
    val = ((18 + eps) * q * math.log(q)) ** (1 / 3) + 2
    return RealBound(q, val, val / cbrt_qlnq(q))


def check_V(q: float, eps: float) -> bool:
    """0.302 x^5 >= 0.3 (x+1)^5 with x = ((18+eps) q ln q)^(1/3)."""
    if eps <= 0:
        raise OutOfRegion("epsilon must be > 0")
    x = ((18 + eps) * q * math.log(q)) ** (1 / 3)
    return 0.302 * x**5 >= 0.3 * (x + 1) ** 5


# --- Bound E -----------------------------------------------------------------

def bound_e_constant(q: int) -> float:
    lo, hi = BOUND_E_RANGE
    if not lo <= q <= hi:
        raise OutOfRegion(f"Bound E covers {lo} <= q <= {hi}")
    if q <= 4373:
        return 2.61
    if q <= 7723:
        return 2.65
    return 2.69


def bound_e(q: int) -> RealBound:
    c = bound_e_constant(q)
    return RealBound(q, c * cbrt_qlnq(q), c)


# --- the known bound ---------------------------------------------------------

def known_bound(q: float, lam: float = LAMBDA_STAR, check_region: bool = True) -> RealBound:
    """Omega_{lambda,3}(q) * (q ln q)^(1/3) + 6."""
    if lam <= 0:
        raise OutOfRegion("lambda must be > 0")
    if check_region and lam == LAMBDA_STAR and q < KNOWN_Q_FLOOR:
        raise OutOfRegion(f"known bound with lambda=36^(1/3) needs q >= {KNOWN_Q_FLOOR}")
    c = cbrt_qlnq(q)
    L = math.log(q)
    upsilon = lam * lam / 2 * (L * L / q) ** (1 / 3)
    beta = lam - 2 / c
    denom = beta * beta * (2 - 1 / q - upsilon)
    if denom <= 0:
        raise OutOfRegion(f"known bound undefined at q={q}")
    omega = lam + 36 / denom
    val = omega * c + 6
    return RealBound(q, val, val / c)


def ratio_knw_over_A(q: int) -> float:
    return known_bound(q).value / bound_a(q).n


# --- lifting to r = 3t+1 ------------------------------------------------------

def _check_r(r: int) -> int:
    if r < 4 or (r - 1) % 3:
        raise ValueError(f"r={r} is not of the form 3t+1 with t >= 1")
    return (r - 1) // 3


def _floor_qpow(q: int, e: int) -> int:
    # floor(q^e) for integer e; q >= 2 makes negative powers floor to 0
    return q**e if e >= 0 else 0


def delta_lift(r: int, q: int) -> int:
    """3 floor(q^((r-7)/3)) + 2 floor(q^((r-10)/3)) + [r == 13]."""
    t = _check_r(r)
    return 3 * _floor_qpow(q, t - 2) + 2 * _floor_qpow(q, t - 3) + (1 if r == 13 else 0)


def lift_length(n0, r: int, q: int):
    """n0 * q^((r-4)/3) + Delta(r, q); requires n0 < q.

    Exact for integer n0; real n0 (Bounds C, D) gives a real length.
    """
    t = _check_r(r)
    if not n0 < q:
        raise OutOfRegion(f"lift needs n0 < q (got n0={n0}, q={q})")
    return n0 * q ** (t - 1) + delta_lift(r, q)


def lifted_bound_c(k: float, r: int, q: int) -> float:
    t = _check_r(r)
    return k ** (1 / 3) * q ** ((r - 3) / 3) * math.log(q) ** (1 / 3) + 2 * q ** (t - 1) + delta_lift(r, q)


def lifted_bound_d(eps: float, r: int, q: int) -> float:
    t = _check_r(r)
    return (18 + eps) ** (1 / 3) * q ** ((r - 3) / 3) * math.log(q) ** (1 / 3) + 2 * q ** (t - 1) + delta_lift(r, q)


def known_lift(r: int, q: float) -> float:
    t = _check_r(r)
    return known_bound(q).value * q ** (t - 1) + 3 * theta(t - 1, int(q))


def lift_normalizer(r: int, q: float) -> float:
    """q^((r-3)/3) (ln q)^(1/3); equals (q ln q)^(1/3) at r = 4."""
    return q ** ((r - 3) / 3) * math.log(q) ** (1 / 3)


# --- per-q report ---------------------------------------------------------------

@dataclass
class BoundReport:
    q: int
    k: float = K_MAX
    eps: float = 1e-3
    values: dict = field(default_factory=dict)  # name -> (value, normalized, valid)

    def get(self, name):
        return self.values.get(name)


def report(q: int, k: float = K_MAX, eps: float = 1e-3, which=("A", "B", "C", "D", "E", "knw")) -> BoundReport:
    """Evaluate every requested bound at q; values outside their region are flagged."""
    rep = BoundReport(q, k, eps)
    norm = cbrt_qlnq(q)
    if "A" in which:
        a = bound_a(q)
        rep.values["A"] = (a.n, a.n / norm, True)
    if "B" in which:
        b = bound_b(q)
        if b.applicable:
            rep.values["B"] = (b.n, b.n / norm, b.valid)
    if "C" in which:
        sol = solve_W(k)
        c = bound_c(k, q, check_region=False)
        rep.values["C"] = (c.value, c.normalized, sol.usable and q >= sol.ceil_w)
    if "D" in which:
        d = bound_d(q, eps)
        rep.values["D"] = (d.value, d.normalized, True)
    if "E" in which:
        lo, hi = BOUND_E_RANGE
        if lo <= q <= hi:
            e = bound_e(q)
            rep.values["E"] = (e.value, e.normalized, True)
    if "knw" in which:
        try:
            kb = known_bound(q, check_region=False)
            rep.values["knw"] = (kb.value, kb.normalized, q >= KNOWN_Q_FLOOR)
        except OutOfRegion:
            pass
    return rep


TABLE1_K = (20.340, 20.339, 20.335, 20, 19.7, 19, 18.5, 18.1, 18.05, 18.01, 18.001, 18.0001)


@dataclass(frozen=True)
class Table1Row:
    k: float
    ceil_w: int
    usable: bool
    nc_norm: float | None
    nknw_norm: float | None
    ratio: float | None


def table1_row(k: float) -> Table1Row:
    sol = solve_W(k)
    if not sol.usable:
        return Table1Row(k, sol.ceil_w, False, None, None, None)
    q = sol.ceil_w
    c = bound_c(k, q, check_region=False)
    kb = known_bound(q)
    return Table1Row(k, q, True, c.normalized, kb.normalized, kb.value / c.value)


def table1(ks=TABLE1_K) -> list[Table1Row]:
    return [table1_row(k) for k in ks]
