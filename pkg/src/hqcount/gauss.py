"""Gauss sums, Jacobi sums, and division-free Gauss-sum products.

Gauss sums g(m) live in Q(zeta_N) with N = p(q-1); we pin the embedding
zeta_{q-1} = zeta_N^p and zeta_p = zeta_N^{q-1}.  Inverses are never
computed by field division: the reflection g(m)g(-m) = omega(-1)^m q
rewrites 1/g(m) with denominators confined to powers of q.

Balanced products (sum of the character exponents divisible by q-1) are
the workhorse of every closed formula downstream.  They are evaluated by
telescoping through Jacobi sums,

    g(a)g(b) = J(a, b) g(a+b),

which keeps all intermediates inside Z[zeta_{q-1}] -- short integer
vectors of length q-1 -- instead of the much larger Q(zeta_N).  The
Jacobi sums themselves come from the three-case evaluation (direct
summation in the generic case), so no floating point and no division
ever occurs.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .cyclo import CycloNum, root_of_unity
from .errors import BadDivisor
from .field import FieldTable

_EAGER_LIMIT = 512


def convolve_ring(u: list[int], v: list[int] | tuple[int, ...],
                  qq: int) -> list[int]:
    """Cyclic convolution in the group ring Z[Z_{qq}], sparse-aware."""
    out = [0] * qq
    unz = [(i, c) for i, c in enumerate(u) if c]
    vnz = [(i, c) for i, c in enumerate(v) if c]
    if len(vnz) < len(unz):
        unz, vnz = vnz, unz
    for i, ci in unz:
        for j, cj in vnz:
            k = i + j
            if k >= qq:
                k -= qq
            out[k] += ci * cj
    return out


def add_rotated(acc: list, vec: list[int], shift: int, weight=1) -> None:
    """acc += weight * zeta^shift * vec, in place."""
    qq = len(acc)
    shift %= qq
    for i, c in enumerate(vec):
        if c:
            k = i + shift
            if k >= qq:
                k -= qq
            acc[k] += weight * c
    return None


class GaussTable:
    """Memoized Gauss and Jacobi sums for one field and one psi_q.

    ``psi_scale`` rescales the additive character to x -> zeta_p^tr(cx);
    the default c = 1 is the fixed character of the package.  Memoization
    is lock-protected and, for small q, precomputed eagerly so the table
    can be shared by concurrent workers without first-access races.
    """

    def __init__(self, field: FieldTable, psi_scale: int = 1,
                 eager: bool | None = None):
        if psi_scale == 0:
            raise ValueError("psi_scale must be a nonzero element code")
        self.field = field
        self.psi_scale = psi_scale
        self.N = field.p * (field.q - 1)
        self._gauss: dict[int, CycloNum] = {}
        self._jac: dict[tuple[int, int], tuple[int, ...]] = {}
        self._lock = threading.RLock()
        if eager is None:
            eager = field.q <= _EAGER_LIMIT
        if eager:
            for m in range(field.q - 1):
                self.gauss_sum(m)

    def __repr__(self):
        return f"GaussTable(q={self.field.q}, N={self.N})"

    # -- Gauss sums in Q(zeta_N) -----------------------------------------

    def gauss_sum(self, m: int) -> CycloNum:
        """g(m) = sum over x != 0 of omega(x)^m psi_q(x)."""
        F = self.field
        qq = F.q - 1
        key = m % qq
        with self._lock:
            got = self._gauss.get(key)
        if got is not None:
            return got
        N = self.N
        coeffs = [0] * N
        for k in range(qq):
            x = F.exp_table[k]
            tr = F.trace_table[F.mul(self.psi_scale, x)]
            coeffs[(F.p * key * k + qq * tr) % N] += 1
        value = CycloNum(N, coeffs)
        with self._lock:
            self._gauss[key] = value
        return value

    def gauss_inverse(self, m: int) -> CycloNum:
        """1/g(m) via the reflection formula; exact, division-free."""
        F = self.field
        qq = F.q - 1
        if m % qq == 0:
            return CycloNum.const(self.N, -1)  # g(0) = -1 is self-inverse
        twist = root_of_unity(self.N, F.p * m * F.log_minus_one())
        return twist * self.gauss_sum(-m) / F.q

    def jacobi_sum(self, m: int, n: int) -> CycloNum:
        """J(m, n) = g(m) g(n) / g(m+n), computed via gauss_inverse."""
        return self.gauss_sum(m) * self.gauss_sum(n) * self.gauss_inverse(m + n)

    # -- the fast engine in Z[zeta_{q-1}] ----------------------------------

    def jacobi_vec(self, m: int, n: int) -> tuple[int, ...]:
        """J(m, n) by the three-case evaluation, in Z[zeta_{q-1}].

        Case split: -1 when m or n vanishes mod q-1; -omega(-1)^m q when
        n = -m (the sign comes from dividing by g(0) = -1); otherwise the
        direct sum over x != 0, 1 of omega(1-x)^m omega(x)^n.
        """
        F = self.field
        qq = F.q - 1
        m %= qq
        n %= qq
        key = (m, n) if m <= n else (n, m)
        with self._lock:
            got = self._jac.get(key)
        if got is not None:
            return got
        vec = [0] * qq
        if m == 0 or n == 0:
            vec[0] = -1
        elif (m + n) % qq == 0:
            vec[(m * F.log_minus_one()) % qq] = -F.q
        else:
            log = F.log_table
            one_minus = [F.sub(1, x) for x in range(F.q)]
            for x in range(2, F.q):
                vec[(m * log[one_minus[x]] + n * log[x]) % qq] += 1
        out = tuple(vec)
        with self._lock:
            self._jac[key] = out
        return out

    def balanced_product(self, exps: list[int]) -> list[int]:
        """Product of g(e) over e in exps, with sum(exps) = 0 mod q-1.

        The balance condition puts the value in Z[zeta_{q-1}]; the result
        is its length-(q-1) integer coefficient vector.
        """
        qq = self.field.q - 1
        if sum(exps) % qq:
            raise ValueError("exponents do not balance mod q-1")
        if not exps:
            vec = [0] * qq
            vec[0] = 1
            return vec
        if len(exps) == 1:
            vec = [0] * qq
            vec[0] = -1  # single factor is g(0)
            return vec
        acc: list[int] | None = None
        run = exps[0]
        for e in exps[1:]:
            jv = self.jacobi_vec(run, e)
            acc = list(jv) if acc is None else convolve_ring(acc, jv, qq)
            run += e
        return [-c for c in acc]


_TABLES: dict[tuple[FieldTable, int], GaussTable] = {}
_TABLES_LOCK = threading.Lock()


def table_for(field: FieldTable, psi_scale: int = 1) -> GaussTable:
    """Shared GaussTable for a field (tables for distinct q never interact)."""
    key = (field, psi_scale)
    with _TABLES_LOCK:
        got = _TABLES.get(key)
        if got is None:
            got = GaussTable(field, psi_scale)
            _TABLES[key] = got
        return got


def gauss_sum(table: GaussTable, m: int) -> CycloNum:
    return table.gauss_sum(m)


def gauss_inverse(table: GaussTable, m: int) -> CycloNum:
    return table.gauss_inverse(m)


def jacobi_sum(table: GaussTable, m: int, n: int) -> CycloNum:
    return table.jacobi_sum(m, n)


def hasse_davenport_defect(table: GaussTable, n_div: int, m: int) -> CycloNum:
    """g(Nm) minus the Hasse-Davenport product; zero when the relation holds.

    The quotient product is telescoped through Jacobi sums so that all
    intermediates stay in Q(zeta_{q-1}); only the final comparison with
    g(Nm) returns to Q(zeta_N).
    """
    F = table.field
    qq = F.q - 1
    if n_div < 1 or qq % n_div:
        raise BadDivisor(f"{n_div} does not divide q-1 = {qq}")
    c = qq // n_div
    lm1 = F.log_minus_one()

    # A_k tracks prod_{j<=k} g(m + j c)/g(j c) divided by g((k+1) m),
    # an element of q^{-k} Z[zeta_{q-1}].  A_0 = -1 comes from 1/g(0).
    acc = [0] * qq
    acc[0] = -1
    for k in range(1, n_div):
        acc = convolve_ring(acc, table.jacobi_vec(m + k * c, -k * c), qq)
        acc = convolve_ring(acc, table.jacobi_vec(k * m, m), qq)
        shift = (k * c * lm1) % qq
        if shift:
            rot = [0] * qq
            add_rotated(rot, acc, shift)
            acc = rot

    n_elt = F.element(n_div)
    shift = (n_div * m * F.log_table[n_elt]) % qq
    bracket = [0] * qq
    add_rotated(bracket, acc, shift)
    bracket[0] += F.q ** (n_div - 1)  # the "1 +" term, cleared of q powers

    lifted = CycloNum(qq, bracket).embed(table.N)
    return lifted * table.gauss_sum(n_div * m) / F.q ** (n_div - 1)


def stickelberger_sigma(p: int, f: int, r: int) -> int:
    """Digit-sum valuation exponent sigma(r) for g(r).

    Evaluated through the fractional-part form (p-1) sum_i {p^i r/(q-1)},
    which agrees with the base-p digit sum on 0 <= r < q-1 and extends it
    periodically.
    """
    qq = p**f - 1
    if qq == 1:
        return 0
    r %= qq
    total = Fraction(0)
    for i in range(1, f + 1):
        total += Fraction((pow(p, i, qq) * r) % qq, qq)
    total *= p - 1
    assert total.denominator == 1
    return int(total)
