"""The association scheme on k-subsets graded by intersection size.

W_i is the 0/1 matrix on k-subsets of {1..t} with W_i(X,Y) = 1 iff
|X and Y| = k-i; W_0 is the identity and the W_i sum to the all-ones
matrix.  The Gram matrix of the balanced transversal matrix decomposes
as sum_i a_i W_i where a_i counts the balanced cuts for which two fixed
k-subsets at distance i are both transversals, so its full spectrum
comes out in closed form.  Everything here is exact integer/rational
arithmetic; no floating point.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .combinat import binomial, colex_subsets
from .intersection import build_A
from .linalg import ExactMatrix


@dataclass
class SchemeMatrix:
    t: int
    k: int
    i: int
    matrix: ExactMatrix


def build_W(t: int, k: int, i: int) -> SchemeMatrix:
    """Scheme matrix W_i on the colex-ordered k-subsets of {1..t}."""
    if not 0 <= i <= k <= t:
        raise ValueError(f"need 0 <= i <= k <= t, got i={i} k={k} t={t}")
    subs = [frozenset(s) for s in colex_subsets(t, k)]
    want = k - i
    data = [
        [Fraction(int(len(x & y) == want)) for y in subs]
        for x in subs
    ]
    return SchemeMatrix(t, k, i, ExactMatrix(data))


def eigenvalue_p(t: int, k: int, i: int, j: int) -> int:
    """Closed-form eigenvalue of W_i on the j-th eigenspace."""
    if not (0 <= i <= k and 0 <= j <= k):
        raise ValueError(f"need 0 <= i,j <= k, got i={i} j={j} k={k}")
    return sum(
        (-1) ** (i - r)
        * binomial(k - r, i - r)
        * binomial(t - k + r - j, r)
        * binomial(k - j, r)
        for r in range(i + 1)
    )


def multiplicity(t: int, j: int) -> int:
    """Dimension of the j-th eigenspace: binomial(t,j) - binomial(t,j-1)."""
    if not 0 <= j <= t:
        raise ValueError(f"need 0 <= j <= t, got j={j} t={t}")
    return binomial(t, j) - binomial(t, j - 1)


def _check_balanced(t, k):
    if k < 2 or t % k != 0:
        raise ValueError(f"t={t} must be divisible by k={k} (k >= 2)")
    if t // k < 2:
        raise ValueError(f"need t/k >= 2, got t={t} k={k}")


def alpha(t: int, k: int, i: int) -> Fraction:
    """Number of balanced k-cuts of {1..t} for which two fixed k-subsets
    with intersection size k-i are both transversals."""
    _check_balanced(t, k)
    if not 0 <= i <= k:
        raise ValueError(f"need 0 <= i <= k, got i={i}")
    m = t // k
    num = math.factorial(i) * math.factorial(t - k - i)
    den = math.factorial(m - 1) ** (k - i) * math.factorial(m - 2) ** i
    return Fraction(num, den)


def alpha_star(t: int, k: int, i: int) -> Fraction:
    """alpha_i rescaled by (t/k-1)!^k / (t-2k)!, a polynomial in t.

    Computed from the factored closed form and cross-checked against the
    rescaled alpha_i; the two must agree exactly.
    """
    _check_balanced(t, k)
    if t < 2 * k:
        raise ValueError(f"need t >= 2k, got t={t} k={k}")
    m = t // k
    closed = Fraction(math.factorial(i) * (m - 1) ** i)
    for s in range(k + i, 2 * k):
        closed *= t - s
    rescaled = alpha(t, k, i) * Fraction(
        math.factorial(m - 1) ** k, math.factorial(t - 2 * k)
    )
    if closed != rescaled:
        raise ArithmeticError(
            f"normalized coefficient mismatch at t={t} k={k} i={i}: "
            f"{closed} vs {rescaled}"
        )
    return closed


@dataclass
class SchemeSpectrum:
    """Exact eigenvalues of the balanced Gram matrix, with multiplicities."""

    t: int
    k: int
    lambdas: list
    lambdas_star: list
    multiplicities: list
    coefficients: list

    def records(self):
        """JSON-friendly rows: one per eigenspace."""
        out = []
        for j in range(self.k + 1):
            out.append(
                {
                    "t": self.t,
                    "k": self.k,
                    "j": j,
                    "lambda": _fmt(self.lambdas[j]),
                    "lambda_star": _fmt(self.lambdas_star[j]),
                    "multiplicity": self.multiplicities[j],
                }
            )
        return out

    def implied_gram_rank(self):
        """binomial(t,k) minus the total multiplicity of zero eigenvalues."""
        dim = binomial(self.t, self.k)
        lost = sum(
            m for lam, m in zip(self.lambdas, self.multiplicities) if lam == 0
        )
        return dim - lost


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def gram_spectrum(t: int, k: int) -> SchemeSpectrum:
    """Spectrum of sum_i alpha_i W_i from the closed forms."""
    _check_balanced(t, k)
    if t < 2 * k:
        raise ValueError(f"need t >= 2k, got t={t} k={k}")
    alphas = [alpha(t, k, i) for i in range(k + 1)]
    alphas_star = [alpha_star(t, k, i) for i in range(k + 1)]
    lambdas = [
        sum(alphas[i] * eigenvalue_p(t, k, i, j) for i in range(k + 1))
        for j in range(k + 1)
    ]
    lambdas_star = [
        sum(alphas_star[i] * eigenvalue_p(t, k, i, j) for i in range(k + 1))
        for j in range(k + 1)
    ]
    mults = [multiplicity(t, j) for j in range(k + 1)]
    return SchemeSpectrum(t, k, lambdas, lambdas_star, mults, alphas)


def verify_gram_decomposition(t: int, k: int) -> bool:
    """Entrywise check that A^T A = sum_i alpha_i W_i for balanced block
    sizes.  Desk scale only: binomial(t,k) <= 300."""
    _check_balanced(t, k)
    if binomial(t, k) > 300:
        raise ValueError(f"binomial({t},{k}) too large for the explicit check")
    v = (t // k,) * k
    a = build_A(t, k, v)
    gram = a.transpose() @ a
    expected = None
    for i in range(k + 1):
        term = build_W(t, k, i).matrix.scaled(alpha(t, k, i))
        expected = term if expected is None else _add(expected, term)
    return gram == expected


def _add(m1: ExactMatrix, m2: ExactMatrix) -> ExactMatrix:
    return ExactMatrix(
        [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(m1.data, m2.data)]
    )


def leading_coefficient(j: int, k: int) -> int:
    """The alternating sum controlling the t^(2k-j) term of the rescaled
    eigenvalue: sum_s (-1)^s C(j,s) k^(j-s) (s+k-j)!/(k-j)!."""
    if not 0 <= j <= k:
        raise ValueError(f"need 0 <= j <= k, got j={j} k={k}")
    return sum(
        (-1) ** s * binomial(j, s) * k ** (j - s) * math.perm(s + k - j, s)
        for s in range(j + 1)
    )


def _good_at_every_point(f, hist, j, k):
    # good at i: some cyclic value window {f(i),..,f(i)+t} (t <= j-2) has
    # more than t+1 preimages
    for i in range(j):
        y = f[i]
        s = 0
        good = False
        for step in range(j - 1):
            s += hist[(y + step) % k]
            if s > step + 1:
                good = True
                break
        if not good:
            return False
    return True


def count_good_functions(j: int, k: int, threads: int = 1) -> int:
    """Count functions f: Z_j -> Z_k that are good everywhere, by brute
    force over all k^j functions.

    A function is good at i when some cyclic window of values starting at
    f(i) and of length at most j-1 has strictly more preimages than its
    length.  Enumeration is bounded to j <= k <= 8.
    """
    if not 1 <= j <= k <= 8:
        raise ValueError(f"need 1 <= j <= k <= 8, got j={j} k={k}")
    if k ** j > 10**7:
        raise ValueError(f"{k}^{j} functions is past the brute-force budget")
    if threads > 1:
        return _count_good_parallel(j, k, threads)
    count = 0
    for f in product(range(k), repeat=j):
        hist = [0] * k
        for x in f:
            hist[x] += 1
        if _good_at_every_point(f, hist, j, k):
            count += 1
    return count


def _count_good_chunk(args):
    j, k, first = args
    count = 0
    for rest in product(range(k), repeat=j - 1):
        f = (first,) + rest
        hist = [0] * k
        for x in f:
            hist[x] += 1
        if _good_at_every_point(f, hist, j, k):
            count += 1
    return count


def _count_good_parallel(j, k, threads):
    # split on the first value; counts add up deterministically
    from multiprocessing import Pool

    with Pool(min(threads, k)) as pool:
        parts = pool.map(_count_good_chunk, [(j, k, v) for v in range(k)])
    return sum(parts)
