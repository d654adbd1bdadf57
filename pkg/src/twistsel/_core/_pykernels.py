"""Pure-Python reference implementation of the hot kernels.

Three inner loops dominate the runtime of the test and acceptance suites:

* the exhaustive projective solubility scan mod p^k (oracle for the p-adic
  solubility decision procedure),
* enumeration of integral binary quartics with prescribed invariants inside a
  coefficient box,
* Monte Carlo sampling of random maximal isotropic subspaces over F_p.

twistsel._core._ckernels is a Cython mirror of this module; both use the same
splitmix64 generator and identical iteration order, so results are
byte-identical across backends.
"""

from math import isqrt

BACKEND = "python"

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class Rng:
    """splitmix64; the exact stream is part of the kernel contract."""

    __slots__ = ("state",)

    def __init__(self, seed):
        self.state = seed & _MASK

    def next_u64(self):
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randbelow(self, k):
        lim = ((1 << 64) // k) * k
        while True:
            r = self.next_u64()
            if r < lim:
                return r % k


def derive_seed(seed, block):
    """Per-block seed for parallel fan-out; aggregation is order-independent."""
    return (seed ^ ((block + 1) * _GAMMA)) & _MASK


# ---------------------------------------------------------------------------
# projective solubility scan mod p^k
# ---------------------------------------------------------------------------

def qp_scan(a, b, c, d, e, p, k):
    """Exhaustively scan P^1(Z/p^k) for liftable points of z^2 = g(x, y).

    Returns 1 if some residue class certifies a Q_p-solution (even valuation,
    square unit, valuation determined), 0 if every class is certified dead,
    -1 if undecided classes remain at this depth.

    A class (x0, y0) mod p^k determines g(x, y) mod p^k on all lifts, so a
    nonzero residue N with v = v_p(N) < k has its valuation, and its unit part
    mod p^{k-v}, pinned on the whole class.  For odd p one unit digit decides
    squareness; for p = 2 three digits (v <= k-3) are needed.
    """
    pk = p ** k
    a %= pk
    b %= pk
    c %= pk
    d %= pk
    e %= pk
    if p == 2:
        sq_unit = None
    else:
        sq_unit = bytearray(p)
        for r in range(1, p):
            sq_unit[r * r % p] = 1
    undecided = False

    def classify(n):
        # 1 soluble, 0 dead, -1 unknown
        if n == 0:
            return -1
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        if p == 2:
            if v > k - 3:
                return -1
            return 1 if (v % 2 == 0 and n % 8 == 1) else 0
        return 1 if (v % 2 == 0 and sq_unit[n % p]) else 0

    # chart (x, 1), x mod p^k
    for x in range(pk):
        n = ((((a * x + b) * x + c) * x + d) * x + e) % pk
        r = classify(n)
        if r == 1:
            return 1
        if r == -1:
            undecided = True
    # chart (1, y), y in p*Z_p, y mod p^k
    for y in range(0, pk, p):
        n = ((((e * y + d) * y + c) * y + b) * y + a) % pk
        r = classify(n)
        if r == 1:
            return 1
        if r == -1:
            undecided = True
    return -1 if undecided else 0


# ---------------------------------------------------------------------------
# bounded enumeration of quartics with prescribed invariants
# ---------------------------------------------------------------------------

def _isqrt_exact(n):
    if n < 0:
        return -1
    r = isqrt(n)
    return r if r * r == n else -1


def quartics_with_invariants(i_inv, j_inv, bound, cap=5_000_000):
    """All integral (a,b,c,d,e) with |coeff| <= bound and invariants (I, J).

    For a != 0 the invariant I determines e = (I - c^2 + 3bd)/(12a), and
    substituting into J leaves a quadratic in d, solved exactly.  The a = 0
    charts are handled directly.  Output is sorted; raises ResourceWarning via
    OverflowError... (handled by caller) if cap is exceeded.
    """
    out = []
    B = bound
    for a in range(-B, B + 1):
        if a == 0:
            continue
        aa324 = 324 * a * a
        for b in range(-B, B + 1):
            for c in range(-B, B + 1):
                c0 = (i_inv - c * c) * (72 * a * c - 27 * b * b) - 24 * a * c ** 3 - 12 * a * j_inv
                bq = 81 * b * (4 * a * c - b * b)
                disc = bq * bq + 4 * aa324 * c0
                s = _isqrt_exact(disc)
                if s < 0:
                    continue
                for sgn in ((s,) if s == 0 else (s, -s)):
                    num = bq + sgn
                    if num % (2 * aa324):
                        continue
                    d = num // (2 * aa324)
                    if abs(d) > B:
                        continue
                    en = i_inv - c * c + 3 * b * d
                    if en % (12 * a):
                        continue
                    e = en // (12 * a)
                    if abs(e) > B:
                        continue
                    if _inv_ok(a, b, c, d, e, i_inv, j_inv):
                        out.append((a, b, c, d, e))
                        if len(out) > cap:
                            raise MemoryError("enumeration cap exceeded")
    # a = 0, b != 0: d, e forced
    for b in range(-B, B + 1):
        if b == 0:
            continue
        for c in range(-B, B + 1):
            dn = c * c - i_inv
            if dn % (3 * b):
                continue
            d = dn // (3 * b)
            if abs(d) > B:
                continue
            en = 9 * b * c * d - 2 * c ** 3 - j_inv
            if en % (27 * b * b):
                continue
            e = en // (27 * b * b)
            if abs(e) > B:
                continue
            if _inv_ok(0, b, c, d, e, i_inv, j_inv):
                out.append((0, b, c, d, e))
    # a = b = 0: I = c^2, J = -2c^3, d and e free
    for c in range(-B, B + 1):
        if c * c == i_inv and -2 * c ** 3 == j_inv:
            for d in range(-B, B + 1):
                for e in range(-B, B + 1):
                    out.append((0, 0, c, d, e))
            if len(out) > cap:
                raise MemoryError("enumeration cap exceeded")
    out.sort()
    return out


def _inv_ok(a, b, c, d, e, i_inv, j_inv):
    ii = 12 * a * e - 3 * b * d + c * c
    if ii != i_inv:
        return False
    jj = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c ** 3
    return jj == j_inv


# ---------------------------------------------------------------------------
# F_p isotropic subspace sampling
# ---------------------------------------------------------------------------

def _digits(v, p, m):
    out = [0] * m
    for i in range(m):
        out[i] = v % p
        v //= p
    return out


def _encode(digs, p):
    v = 0
    for x in reversed(digs):
        v = v * p + x
    return v


def build_tables(p, n):
    """Q values, bilinear/addition tables, and the isotropic vector list.

    Vectors of F_p^{2n} are encoded as base-p integers; Q(x) = sum x_{2i}
    x_{2i+1} and B(u, v) = Q(u+v) - Q(u) - Q(v).  Shared by both backends.
    """
    from array import array

    m = 2 * n
    N = p ** m
    if N > 2048:
        raise MemoryError("isotropy tables limited to p^(2n) <= 2048")
    qvals = bytearray(N)
    for v in range(N):
        dg = _digits(v, p, m)
        qvals[v] = sum(dg[2 * i] * dg[2 * i + 1] for i in range(n)) % p
    bmat = bytearray(N * N)
    addvals = [0] * (N * N)
    for u in range(N):
        du = _digits(u, p, m)
        for v in range(N):
            dv = _digits(v, p, m)
            bmat[u * N + v] = sum(du[2 * i] * dv[2 * i + 1] + du[2 * i + 1] * dv[2 * i]
                                  for i in range(n)) % p
            addvals[u * N + v] = _encode([(x + y) % p for x, y in zip(du, dv)], p)
    addtab = array("i", addvals)
    iso = array("i", [v for v in range(1, N) if qvals[v] == 0])
    return N, qvals, bmat, addtab, iso


def _rref_rows(vectors, p, m):
    """Canonical reduced-row-echelon basis (tuple of digit-tuples -> encoded ints)."""
    rows = [_digits(v, p, m) for v in vectors]
    nrows = len(rows)
    piv = 0
    pivots = []
    for col in range(m - 1, -1, -1):  # leading coordinate = highest digit index
        sel = -1
        for r in range(piv, nrows):
            if rows[r][col]:
                sel = r
                break
        if sel < 0:
            continue
        rows[piv], rows[sel] = rows[sel], rows[piv]
        inv = pow(rows[piv][col], p - 2, p) if p > 2 else 1
        if inv != 1:
            rows[piv] = [(x * inv) % p for x in rows[piv]]
        for r in range(nrows):
            if r != piv and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[piv])]
        pivots.append(col)
        piv += 1
        if piv == nrows:
            break
    return tuple(sorted(_encode(r, p) for r in rows[:piv]))


def _sample_basis(rng, p, n, N, qvals, bmat, addtab, iso):
    """One uniform maximal isotropic, as a list of n encoded basis vectors.

    Extends an isotropic flag one vector at a time, choosing uniformly among
    the isotropic vectors outside the current span and orthogonal to it; the
    isometry group is transitive on isotropic flags, so candidate counts only
    depend on the step and the resulting subspace is uniform.
    """
    basis = []
    span = bytearray(N)
    span[0] = 1
    span_list = [0]
    for _ in range(n):
        cands = []
        for v in iso:
            if span[v]:
                continue
            ok = True
            for b in basis:
                if bmat[v * N + b]:
                    ok = False
                    break
            if ok:
                cands.append(v)
        chosen = cands[rng.randbelow(len(cands))]
        basis.append(chosen)
        new = []
        for s in span_list:
            acc = s
            for _ in range(p - 1):
                acc = addtab[acc * N + chosen]
                if not span[acc]:
                    span[acc] = 1
                    new.append(acc)
        span_list.extend(new)
    return basis


def _rank(vectors, p, m):
    rows = [_digits(v, p, m) for v in vectors]
    rank = 0
    for col in range(m - 1, -1, -1):
        sel = -1
        for r in range(rank, len(rows)):
            if rows[r][col]:
                sel = r
                break
        if sel < 0:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = pow(rows[rank][col], p - 2, p) if p > 2 else 1
        if inv != 1:
            rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def sample_pair_histogram(p, n, trials, seed, tables=None):
    """Sample Z uniform maximal isotropic; histogram of dim(W cap Z) and of Z.

    W is the standard Lagrangian span{e_0, e_2, ..., e_{2n-2}}.  Returns
    (r_counts, key_counts) where key_counts maps the canonical echelon key of
    Z to its frequency.
    """
    m = 2 * n
    N, qvals, bmat, addtab, iso = tables if tables is not None else build_tables(p, n)
    rng = Rng(seed)
    wbasis = [p ** (2 * i) for i in range(n)]
    r_counts = [0] * (n + 1)
    key_counts = {}
    for _ in range(trials):
        basis = _sample_basis(rng, p, n, N, qvals, bmat, addtab, iso)
        rank = _rank(wbasis + basis, p, m)
        r = 2 * n - rank
        r_counts[r] += 1
        key = _rref_rows(basis, p, m)
        key_counts[key] = key_counts.get(key, 0) + 1
    return r_counts, key_counts


def sample_triple_histogram(p, n, trials, seed, tables=None):
    """Sample (Z1, Z2) independent; histogram of dim(W cap Z1 cap Z2)."""
    N, qvals, bmat, addtab, iso = tables if tables is not None else build_tables(p, n)
    rng = Rng(seed)
    dim_counts = [0] * (n + 1)
    wvecs = _span_of([p ** (2 * i) for i in range(n)], p, N, addtab)
    for _ in range(trials):
        z1 = _sample_basis(rng, p, n, N, qvals, bmat, addtab, iso)
        z2 = _sample_basis(rng, p, n, N, qvals, bmat, addtab, iso)
        s1 = _span_set(z1, p, N, addtab)
        s2 = _span_set(z2, p, N, addtab)
        common = sum(1 for w in wvecs if w and s1[w] and s2[w])
        dim = 0
        size = common + 1
        while size > 1:
            size //= p
            dim += 1
        dim_counts[dim] += 1
    return dim_counts


def _span_set(basis, p, N, addtab):
    span = bytearray(N)
    span[0] = 1
    lst = [0]
    for v in basis:
        new = []
        for s in lst:
            acc = s
            for _ in range(p - 1):
                acc = addtab[acc * N + v]
                if not span[acc]:
                    span[acc] = 1
                    new.append(acc)
        lst.extend(new)
    return span


def _span_of(basis, p, N, addtab):
    span = _span_set(basis, p, N, addtab)
    return [v for v in range(N) if span[v]]
