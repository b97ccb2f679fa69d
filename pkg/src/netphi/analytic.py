"""Exact closed-form reconstruction of phi(g) = 0.5*ln[N(q)/D(q)], q = g^2.

For a symmetric unit template A without self-loops and isotropic noise, the
whole-system conditional covariance collapses to the noise covariance, so
exp(2*phi) is the product of the normalized diagonal entries of
(I - q A^2)^{-1}. Each diagonal entry is a rational function of q with
small degree; they are recovered one node at a time by exact rational
interpolation from samples at q = 1/p over ascending primes, with the
degree bound doubled until two consecutive reconstructions agree. The
per-node functions are multiplied together and gcd-reduced into the
canonical coprime pair with N(0) = D(0) = 1.

All arithmetic is over fractions.Fraction; the reconstruction is exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CriticalityError, NetphiError, ReconstructionError
from .netmodel import AdjacencyMatrix

Poly = tuple[Fraction, ...]  # coefficient sequence, ascending powers of q

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# polynomial arithmetic over exact rationals


def poly_trim(p) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(a, b) -> Poly:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return poly_trim(out)


def poly_eval(p, x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_scale(p, s: Fraction) -> Poly:
    return poly_trim([c * s for c in p])


def poly_divmod(a, b):
    a = list(a)
    b = poly_trim(b)
    if b == (ZERO,):
        raise ZeroDivisionError("polynomial division by zero")
    quot = [ZERO] * max(len(a) - len(b) + 1, 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            quot[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return poly_trim(quot), poly_trim(a)


def _int_primitive(p):
    """Primitive integer multiple of a rational polynomial (positive leading)."""
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, abs(c))
    if g == 0:
        return [0]
    ints = [c // g for c in ints]
    return [-c for c in ints] if ints[-1] < 0 else ints


_GCD_CHECK_PRIME = (1 << 61) - 1


def _coprime_mod_prime(a, b, p=_GCD_CHECK_PRIME):
    """True if the gcd of two integer polynomials is 1, certified mod p.

    The gcd degree can only drop when reducing mod p (given the leading
    coefficients survive), so a degree-0 modular gcd proves coprimality.
    """
    if a[-1] % p == 0 or b[-1] % p == 0:
        return False  # bad prime for these inputs, fall through to exact path
    a = [c % p for c in a]
    b = [c % p for c in b]
    while True:
        while len(b) > 1 and b[-1] == 0:
            b.pop()
        if b == [0]:
            return len(a) == 1
        inv = pow(b[-1], -1, p)
        for i in range(len(a) - len(b), -1, -1):
            c = a[i + len(b) - 1] * inv % p
            if c:
                for j, bj in enumerate(b):
                    a[i + j] = (a[i + j] - c * bj) % p
        del a[len(b) - 1 :]
        if not a:
            a = [0]
        a, b = b, a


def _int_prem(a, b):
    """Pseudo-remainder of integer polynomials (a scaled by powers of lc(b))."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and any(r):
        coef = r[-1]
        shift = len(r) - 1 - db
        r = [lb * c for c in r]
        for j, bj in enumerate(b):
            r[j + shift] -= coef * bj
        r.pop()
        while len(r) > 1 and r[-1] == 0:
            r.pop()
    return r if any(r) else [0]


def poly_gcd(a, b) -> Poly:
    """Monic gcd via a primitive pseudo-remainder sequence over integers.

    A modular degree check short-circuits the common coprime case, and
    content removal at every step keeps the integer coefficients from the
    blow-up a naive rational Euclidean algorithm suffers.
    """
    a, b = poly_trim(a), poly_trim(b)
    if a == (ZERO,) and b == (ZERO,):
        return (ZERO,)
    if a == (ZERO,):
        return poly_scale(b, 1 / b[-1])
    if b == (ZERO,):
        return poly_scale(a, 1 / a[-1])
    ia, ib = _int_primitive(a), _int_primitive(b)
    if len(ia) > 1 and len(ib) > 1 and _coprime_mod_prime(ia, ib):
        return (ONE,)
    if len(ia) < len(ib):
        ia, ib = ib, ia
    while ib != [0]:
        r = _int_prem(ia, ib)
        ia, ib = ib, _int_primitive([Fraction(c) for c in r]) if r != [0] else [0]
    g = tuple(Fraction(c) for c in ia)
    return poly_scale(g, 1 / g[-1])


def poly_derivative(p) -> Poly:
    if len(p) == 1:
        return (ZERO,)
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_squarefree(p) -> Poly:
    q, _ = poly_divmod(p, poly_gcd(p, poly_derivative(p)))
    return q


def poly_pow(p, k: int) -> Poly:
    out: Poly = (ONE,)
    for _ in range(k):
        out = poly_mul(out, p)
    return out


# ---------------------------------------------------------------------------
# exact linear algebra


def _exact_inverse_diag(M):
    """Diagonal of the inverse of a square Fraction matrix, or None if singular."""
    n = len(M)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n + i] for i in range(n)]


def _nullspace_vector(rows, ncols):
    """One nonzero nullspace vector of an exact rational matrix, or None."""
    mat = [list(r) for r in rows]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    vec = [ZERO] * ncols
    vec[fc] = ONE
    for r, pc in enumerate(pivots):
        vec[pc] = -mat[r][fc]
    return vec


# ---------------------------------------------------------------------------
# rational functions


@dataclass(frozen=True)
class RationalFunction:
    """Coprime numerator/denominator polynomials in q = g^2, constant terms 1."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.num[0] != 1 or self.den[0] != 1:
            raise NetphiError("rational function must be normalized to N(0)=D(0)=1")

    def to_json(self) -> str:
        return json.dumps(
            {
                "variable": "g^2",
                "num": [str(c) for c in self.num],
                "den": [str(c) for c in self.den],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "RationalFunction":
        obj = json.loads(text)
        if obj.get("variable") != "g^2":
            raise NetphiError(f"unsupported variable {obj.get('variable')!r}")
        return cls(
            num=tuple(Fraction(c) for c in obj["num"]),
            den=tuple(Fraction(c) for c in obj["den"]),
        )


def reduced(num, den) -> RationalFunction:
    """Canonical coprime form with both constant terms normalized to 1."""
    g = poly_gcd(num, den)
    if g != (ONE,):
        num, _ = poly_divmod(num, g)
        den, _ = poly_divmod(den, g)
    if num[0] == 0 or den[0] == 0:
        raise NetphiError("rational function has a pole or zero at q=0")
    return RationalFunction(poly_scale(num, 1 / num[0]), poly_scale(den, 1 / den[0]))


def _primes():
    n = 2
    while True:
        for d in range(2, int(n**0.5) + 1):
            if n % d == 0:
                break
        else:
            yield n
        n += 1


class _DiagSampler:
    """Exact diagonal of (I - q A^2)^{-1} at rational q, cached per q."""

    def __init__(self, template):
        W = template.weights
        if not np.all(W == np.round(W)):
            A2 = (W @ W).tolist()
            self.A2 = [[Fraction(x).limit_denominator(10**12) for x in row] for row in A2]
        else:
            Wi = [[int(x) for x in row] for row in W.tolist()]
            n = len(Wi)
            self.A2 = [
                [Fraction(sum(Wi[i][k] * Wi[k][j] for k in range(n))) for j in range(n)]
                for i in range(n)
            ]
        self.n = len(self.A2)
        self._cache = {}

    def diag(self, q: Fraction):
        if q not in self._cache:
            M = [
                [(ONE if i == j else ZERO) - q * self.A2[i][j] for j in range(self.n)]
                for i in range(self.n)
            ]
            self._cache[q] = _exact_inverse_diag(M)
        return self._cache[q]


def _reconstruct_node(sampler, k, deg_cap, sample_offset=0):
    """Exact rational reconstruction of node k's normalized variance in q."""

    def samples(count):
        out = []
        skipped = 0
        for p in _primes():
            q = Fraction(1, p)
            d = sampler.diag(q)
            if d is None:
                continue  # landed on a pole of the resolvent, resample
            if skipped < sample_offset:
                skipped += 1
                continue
            out.append((q, d[k]))
            if len(out) == count:
                return out
        raise ReconstructionError("ran out of sample points")  # pragma: no cover

    prev = None
    d = 2
    while d <= deg_cap:
        pts = samples(2 * d + 4)
        pts, checks = pts[: 2 * d + 1], pts[2 * d + 1 :]
        rows = []
        for q, r in pts:
            qp = [ONE]
            for _ in range(d):
                qp.append(qp[-1] * q)
            rows.append(qp + [-r * x for x in qp])
        vec = _nullspace_vector(rows, 2 * d + 2)
        if vec is not None:
            num = poly_trim(vec[: d + 1])
            den = poly_trim(vec[d + 1 :])
            if den != (ZERO,) and num != (ZERO,):
                try:
                    cand = reduced(num, den)
                except NetphiError:
                    cand = None
                if cand is not None and all(
                    poly_eval(cand.num, q) == r * poly_eval(cand.den, q)
                    for q, r in checks
                ):
                    if prev is not None and cand == prev:
                        return cand
                    prev = cand
        d *= 2
    raise ReconstructionError(
        f"rational reconstruction for node {k} exceeded degree cap {deg_cap}"
    )


def phi_rational(
    template: AdjacencyMatrix, sigma2: Fraction = ONE, sample_offset: int = 0
) -> RationalFunction:
    """Exact N/D with phi(g) = 0.5*ln[N(g^2)/D(g^2)] on the stable range.

    Requires a symmetric template without self-loops and isotropic noise;
    the noise variance cancels from the ratio and is accepted only for
    interface symmetry with the numeric path. ``sample_offset`` skips that
    many interpolation sample points, giving an independent reconstruction
    that must reproduce the same reduced coefficients.
    """
    if not template.symmetric:
        raise NetphiError("closed form requires a symmetric template")
    if template.has_self_loops:
        raise NetphiError("closed form requires a template without self-loops")
    if Fraction(sigma2) <= 0:
        raise NetphiError("noise variance must be positive")
    n = template.n
    if n == 1:
        # an isolated node never loses information to a partition
        return RationalFunction(num=(ONE,), den=(ONE,))
    sampler = _DiagSampler(template)
    deg_cap = n**2
    # Each node's normalized variance is cof_k(q)/det(I - q A^2), degree <= n
    # on both sides, so exact agreement at 2n+2 sample points certifies that
    # two nodes share the same function; reconstruct once per node class.
    signatures = []
    for p in _primes():
        q = Fraction(1, p)
        d = sampler.diag(q)
        if d is None:
            continue
        signatures.append(tuple(d))
        if len(signatures) == 2 * n + 2:
            break
    node_sig = {k: tuple(sig[k] for sig in signatures) for k in range(n)}
    classes: dict = {}
    for k in range(n):
        classes.setdefault(node_sig[k], []).append(k)
    # Multiply the per-node functions together, cancelling common factors one
    # small gcd at a time; per-node degrees stay <= n, which keeps every gcd
    # cheap compared with one reduction of the full product.
    num: Poly = (ONE,)
    den: Poly = (ONE,)
    for nodes in classes.values():
        f_k = _reconstruct_node(sampler, nodes[0], deg_cap, sample_offset)
        for _ in nodes:
            nk, dk = f_k.num, f_k.den
            g = poly_gcd(nk, den)
            if len(g) > 1:
                nk, _ = poly_divmod(nk, g)
                den, _ = poly_divmod(den, g)
            g = poly_gcd(num, dk)
            if len(g) > 1:
                num, _ = poly_divmod(num, g)
                dk, _ = poly_divmod(dk, g)
            num = poly_mul(num, nk)
            den = poly_mul(den, dk)
    if num[0] == 0 or den[0] == 0:
        raise ReconstructionError("combined closed form degenerate at q=0")
    return RationalFunction(poly_scale(num, 1 / num[0]), poly_scale(den, 1 / den[0]))


def evaluate(f: RationalFunction, g: Fraction):
    """Exact ratio N(g^2)/D(g^2) and phi = 0.5*ln(ratio) in nats."""
    q = Fraction(g) ** 2
    d = poly_eval(f.den, q)
    if d == 0:
        raise CriticalityError(f"g = {float(g):.9g} is a pole of the closed form")
    ratio = poly_eval(f.num, q) / d
    if ratio <= 0:
        raise CriticalityError(f"closed form not positive at g = {float(g):.9g}")
    phi_nats = 0.5 * (math.log(ratio.numerator) - math.log(ratio.denominator))
    return ratio, phi_nats


def denominator_poles(f: RationalFunction) -> np.ndarray:
    """Positive couplings g = sqrt(q) over the real roots of the denominator.

    Roots of the square-free part are isolated numerically, then polished by
    exact-sign bisection to 1e-10.
    """
    sf = poly_squarefree(f.den)
    if len(sf) < 2:
        return np.array([])
    approx = np.roots([float(c) for c in reversed(sf)])
    scale = max(1.0, float(np.max(np.abs(approx))))
    roots = []
    for z in approx:
        if abs(z.imag) > 1e-7 * scale or z.real <= 0:
            continue
        r = z.real
        root = _bisect_root(sf, r)
        if root is not None:
            roots.append(math.sqrt(root))
    roots.sort()
    out = []
    for r in roots:
        if not out or r > out[-1] * (1.0 + 1e-9):
            out.append(r)
    return np.array(out)


def _bisect_root(p, r, rtol=1e-12):
    """Refine a simple real root near r by exact-sign bisection."""
    half = max(1e-8 * r, 1e-13)
    for _ in range(20):
        lo = Fraction(r - half).limit_denominator(10**15)
        hi = Fraction(r + half).limit_denominator(10**15)
        slo, shi = poly_eval(p, lo), poly_eval(p, hi)
        if slo == 0:
            return float(lo)
        if shi == 0:
            return float(hi)
        if (slo > 0) != (shi > 0):
            break
        half *= 4.0
    else:
        return None
    while float(hi - lo) > rtol * r:
        mid = (lo + hi) / 2
        s = poly_eval(p, mid)
        if s == 0:
            return float(mid)
        if (s > 0) == (slo > 0):
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)
