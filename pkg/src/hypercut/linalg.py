"""Exact rational dense linear algebra: rank, solving, affine independence.

Every computation reduces rows to integer vectors (scaling a row by a
positive integer changes neither rank nor solution set) and maintains an
integer row-echelon basis incrementally, one row at a time.  That shape
fits the matrices built here, which have far more rows than columns.
Row updates run on numpy int64 vectors behind a sound overflow guard;
if a combination could exceed 64 bits the affected computation restarts
on arbitrary-precision Python integers, so results are exact in all
cases.  Processing order is fixed, hence all outputs are deterministic.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_GUARD = 1 << 62          # headroom below 2**63 for p*row - q*basis
_GCD_TRIGGER = 1 << 40    # normalize a row once entries pass this


class ExactMatrix:
    """Dense matrix of Fractions, immutable by convention."""

    __slots__ = ("data", "rows", "cols")

    def __init__(self, data):
        self.data = [[_as_fraction(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(r) != self.cols for r in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n):
        return cls([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    def entry(self, i, j):
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def transpose(self):
        return ExactMatrix([list(col) for col in zip(*self.data)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.cols} vs {other.rows}")
        bt = list(zip(*other.data))
        return ExactMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.data]
        )

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        )

    def scaled(self, c):
        c = _as_fraction(c)
        return ExactMatrix([[c * x for x in row] for row in self.data])

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.data == other.data

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot build an exact entry from {type(x).__name__}")


def _clear_row(row):
    """Integer row equal to a positive multiple of the given rational row."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [int(x * den) if isinstance(x, Fraction) else int(x) * den for x in row], den


def _iter_int_rows(m):
    """Yield (index, list-of-int row, scale) for any supported matrix form."""
    if isinstance(m, ExactMatrix):
        for i, row in enumerate(m.data):
            ints, den = _clear_row(row)
            yield i, ints, den
    elif isinstance(m, np.ndarray):
        if m.ndim != 2:
            raise ValueError("need a 2-d array")
        if not np.issubdtype(m.dtype, np.integer):
            raise TypeError("numpy matrices must have an integer dtype")
        mm = m.astype(np.int64, copy=False)
        for i in range(mm.shape[0]):
            yield i, mm[i], 1
    else:
        for i, row in enumerate(m):
            ints, den = _clear_row(list(row))
            yield i, ints, den


def _shape(m):
    if isinstance(m, ExactMatrix):
        return m.rows, m.cols
    if isinstance(m, np.ndarray):
        return m.shape[0], m.shape[1]
    rows = list(m)
    return len(rows), (len(rows[0]) if rows else 0)


class _Overflow(Exception):
    pass


class _RowBasisNumpy:
    """Incremental integer echelon basis on int64 vectors.

    Raises _Overflow before any update that could wrap; callers restart
    in the Python-integer engine.
    """

    def __init__(self, width):
        self.width = width
        self.pivots = {}       # col -> int64 row, gcd-reduced, positive lead
        self.maxabs = {}       # col -> exact max |entry|
        self.tags = {}         # col -> caller tag for the inserted row

    @property
    def rank(self):
        return len(self.pivots)

    def _normalize(self, r, nz):
        g = int(np.gcd.reduce(np.abs(r[nz])))
        if g > 1:
            r = r // g
        return r

    def reduce(self, row):
        """Reduce a row against the basis; returns the residue (int64)."""
        r = np.asarray(row, dtype=np.int64)
        rmax = int(np.abs(r).max(initial=0))
        while True:
            nz = np.nonzero(r)[0]
            if len(nz) == 0:
                return r
            c = int(nz[0])
            b = self.pivots.get(c)
            if b is None:
                return r
            p = int(b[c])
            q = int(r[c])
            if abs(p) * rmax + abs(q) * self.maxabs[c] >= _GUARD:
                raise _Overflow
            r = r - q * b if p == 1 else p * r - q * b
            rmax = int(np.abs(r).max(initial=0))
            if rmax > _GCD_TRIGGER:
                nz = np.nonzero(r)[0]
                if len(nz):
                    r = self._normalize(r, nz)
                    rmax = int(np.abs(r).max())

    def add(self, row, tag=None):
        """Insert a row; returns True iff it enlarged the basis."""
        r = self.reduce(row)
        nz = np.nonzero(r)[0]
        if len(nz) == 0:
            return False
        r = self._normalize(r, nz)
        c = int(nz[0])
        if r[c] < 0:
            r = -r
        self.pivots[c] = r
        self.maxabs[c] = int(np.abs(r).max())
        self.tags[c] = tag
        return True

    def contains(self, row):
        r = self.reduce(row)
        return not np.any(r)

    def int_rows(self):
        return {c: [int(x) for x in r] for c, r in self.pivots.items()}


class _RowBasisPython:
    """Same contract as _RowBasisNumpy on arbitrary-precision integers."""

    def __init__(self, width):
        self.width = width
        self.pivots = {}
        self.tags = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, row):
        r = [int(x) for x in row]
        while True:
            c = next((i for i, x in enumerate(r) if x), None)
            if c is None or c not in self.pivots:
                return r
            b = self.pivots[c]
            p = b[c]
            q = r[c]
            if p == 1:
                r = [x - q * y for x, y in zip(r, b)]
            else:
                r = [p * x - q * y for x, y in zip(r, b)]
            if max(map(abs, r)) > _GCD_TRIGGER:
                r = _gcd_normalize(r)

    def add(self, row, tag=None):
        r = self.reduce(row)
        c = next((i for i, x in enumerate(r) if x), None)
        if c is None:
            return False
        r = _gcd_normalize(r)
        if r[c] < 0:
            r = [-x for x in r]
        self.pivots[c] = r
        self.tags[c] = tag
        return True

    def contains(self, row):
        return not any(self.reduce(row))

    def int_rows(self):
        return dict(self.pivots)


def _gcd_normalize(r):
    g = 0
    for x in r:
        if x:
            g = math.gcd(g, abs(x))
            if g == 1:
                return r
    if g > 1:
        return [x // g for x in r]
    return r


def _echelon(rows, width, stop_rank=None, tagged=False):
    """Run the incremental echelon over (tag, int-row) pairs.

    Falls back to Python integers, restarting from scratch, the first
    time the int64 guard trips.  `rows` must be re-iterable (a list).
    """
    try:
        basis = _RowBasisNumpy(width)
        for tag, r in rows:
            basis.add(r, tag if tagged else None)
            if stop_rank is not None and basis.rank >= stop_rank:
                break
        return basis
    except (_Overflow, OverflowError):
        basis = _RowBasisPython(width)
        for tag, r in rows:
            basis.add(r, tag if tagged else None)
            if stop_rank is not None and basis.rank >= stop_rank:
                break
        return basis


def exact_rank(m) -> int:
    """Rank over the rationals, exact.

    Accepts an ExactMatrix, a 2-d integer numpy array, or a sequence of
    rows of ints/Fractions.
    """
    nrows, ncols = _shape(m)
    if nrows == 0 or ncols == 0:
        return 0
    rows = [(i, r) for i, r, _ in _iter_int_rows(m)]
    basis = _echelon(rows, ncols, stop_rank=ncols)
    return basis.rank


@dataclass
class SolutionSpace:
    """Exact solutions of M x = b: one particular solution plus a basis of
    the nullspace of M.  nullspace dimension = cols - system_rank."""

    particular: list
    nullspace_basis: list
    system_rank: int

    @property
    def nullity(self):
        return len(self.nullspace_basis)


@dataclass
class InfeasibilityWitness:
    """Certificate that M x = b has no solution: a rational row vector y
    with y M = 0 and y b = 1."""

    certificate: list


def solve_affine(m, b):
    """Solve M x = b exactly.

    Returns a SolutionSpace, or an InfeasibilityWitness whose certificate
    proves unsolvability.  Raises on dimension mismatch.
    """
    nrows, ncols = _shape(m)
    b = [_as_fraction(x) for x in b]
    if len(b) != nrows:
        raise ValueError(f"rhs length {len(b)} != rows {nrows}")
    scales = {}

    def aug_rows():
        for i, ints, den in _iter_int_rows(m):
            bi = b[i] * den
            extra = bi.denominator
            scales[i] = den * extra
            yield i, [x * extra for x in ints] + [int(bi * extra)]

    rows = list(aug_rows())
    basis = _echelon(rows, ncols + 1, tagged=True)
    if ncols in basis.pivots:
        contributing = sorted(basis.tags.values())
        return _extract_witness([rows[i] for i in contributing], ncols, scales, nrows)
    int_rows = basis.int_rows()
    piv_cols = sorted(int_rows)
    rref = _rref([[Fraction(x) for x in int_rows[c]] for c in piv_cols], piv_cols)
    particular = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        particular[c] = rref[i][ncols]
    piv_set = set(piv_cols)
    nullspace = []
    for free in range(ncols):
        if free in piv_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, c in enumerate(piv_cols):
            v[c] = -rref[i][free]
        nullspace.append(v)
    return SolutionSpace(particular, nullspace, len(piv_cols))


def _rref(rows, piv_cols):
    """Back-eliminate an echelon basis and normalize pivots to 1."""
    for i in range(len(rows) - 1, -1, -1):
        c = piv_cols[i]
        p = rows[i][c]
        rows[i] = [x / p for x in rows[i]]
        for i2 in range(i):
            f = rows[i2][c]
            if f:
                rows[i2] = [a - f * bb for a, bb in zip(rows[i2], rows[i])]
    return rows


def _extract_witness(rows, ncols, scales, nrows):
    """Re-run the elimination over the basis-forming rows, tracking row
    combinations, to certify infeasibility.

    A basis row is reduced only against earlier basis rows, so replaying
    just those rows (at most ncols+1 of them) reproduces the same basis,
    including the pivot in the right-hand-side column.
    """
    pivots = {}  # pivot col -> integer row
    combos = {}  # pivot col -> {original row index: Fraction}

    for idx, ints in rows:
        r = [int(x) for x in ints]
        combo = {idx: Fraction(1)}
        while True:
            c = next((i for i, x in enumerate(r) if x), None)
            if c is None:
                break
            if c not in pivots:
                g = 0
                for x in r:
                    g = math.gcd(g, abs(x))
                if g > 1:
                    r = [x // g for x in r]
                    combo = {i: f / g for i, f in combo.items()}
                if r[c] < 0:
                    r = [-x for x in r]
                    combo = {i: -f for i, f in combo.items()}
                pivots[c] = r
                combos[c] = combo
                break
            brow = pivots[c]
            bcombo = combos[c]
            p, q = brow[c], r[c]
            r = [p * x - q * y for x, y in zip(r, brow)]
            combo = {i: p * f for i, f in combo.items()}
            for i, f in bcombo.items():
                combo[i] = combo.get(i, Fraction(0)) - q * f
        if ncols in pivots:
            combo = combos[ncols]
            beta = Fraction(pivots[ncols][ncols])
            y = [Fraction(0)] * nrows
            for i, f in combo.items():
                y[i] = f * scales[i] / beta
            return InfeasibilityWitness(y)
    raise AssertionError("witness extraction reached the end without a pivot")


def affine_rank(vectors) -> int:
    """Largest number of affinely independent points among the vectors,
    computed as 1 + rank of the differences from the first point."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise ValueError("vectors have mixed lengths")
    base = [_as_fraction(x) for x in vectors[0]]
    diffs = [
        [_as_fraction(x) - y for x, y in zip(v, base)] for v in vectors[1:]
    ]
    if not diffs:
        return 1
    return 1 + exact_rank(diffs)


def in_affine_span(x, vectors) -> bool:
    """True iff x is an affine combination (weights summing to 1) of the
    given vectors, over the rationals."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return False
    x = [_as_fraction(v) for v in x]
    if len(x) != len(vectors[0]):
        raise ValueError("dimension mismatch")
    base = [_as_fraction(v) for v in vectors[0]]
    diffs = [
        [_as_fraction(a) - bb for a, bb in zip(v, base)] for v in vectors[1:]
    ]
    target = [a - bb for a, bb in zip(x, base)]
    width = len(x)
    rows = [(i, r) for i, (r, _) in enumerate(_clear_row(d) for d in diffs)]
    basis = _echelon(rows, width)
    target_int, _ = _clear_row(target)
    return basis.contains(target_int)


def write_matrix(m: ExactMatrix, path):
    """Text format: first line "rows cols", one row per line, entries as
    integers or "num/den"."""
    with open(path, "w") as fh:
        fh.write(f"{m.rows} {m.cols}\n")
        for row in m.data:
            fh.write(" ".join(_fmt(x) for x in row) + "\n")


def read_matrix(path) -> ExactMatrix:
    with open(path) as fh:
        header = fh.readline().split()
        rows, cols = int(header[0]), int(header[1])
        data = []
        for _ in range(rows):
            parts = fh.readline().split()
            if len(parts) != cols:
                raise ValueError("matrix file row width mismatch")
            data.append([Fraction(p) for p in parts])
    return ExactMatrix(data)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
