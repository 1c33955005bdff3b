"""Dense exact linear algebra over Q(q): RREF subspaces, solving, kernels.

All spaces here are small (weight-space blocks), so plain Gaussian
elimination with exact scalars is the right tool.  Subspace keeps a fully
reduced row echelon basis, which makes membership tests and containments
canonical and deterministic.
"""

from __future__ import annotations

from .qscalar import ONE, ZERO, RatQ


def zeros(n):
    return [ZERO] * n


def v_add(a, b):
    return [x + y for x, y in zip(a, b)]

def v_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def v_scale(a, c):
    return [x * c for x in a]


def v_is_zero(a):
    return all(x.is_zero for x in a)


def mat_vec(rows, v):
    return [sum((c * x for c, x in zip(row, v) if not c.is_zero), ZERO) for row in rows]


def mat_mul(a, b):
    n = len(b[0]) if b else 0
    bt = [[row[j] for row in b] for j in range(n)]
    return [[sum((x * y for x, y in zip(row, col) if not x.is_zero), ZERO) for col in bt] for row in a]


def mat_identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


class LinAlgError(ArithmeticError):
    pass


def mat_solve(a, b):
    """Solve a X = b for square invertible a; b is a list of rows."""
    n = len(a)
    m = len(b[0]) if b else 0
    aug = [list(a[i]) + list(b[i]) for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not aug[r][col].is_zero:
                piv = r
                break
        if piv is None:
            raise LinAlgError("singular matrix in mat_solve")
        if piv != col:
            aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n : n + m] for row in aug]


def mat_inverse(a):
    return mat_solve(a, mat_identity(len(a)))


class Subspace:
    """A subspace of K^n held as a reduced row echelon basis."""

    __slots__ = ("n", "rows", "pivots", "_track", "_comps", "_ngens")

    def __init__(self, n, track=False):
        self.n = n
        self.rows = []
        self.pivots = []
        self._track = track
        self._comps = [] if track else None
        self._ngens = 0

    @property
    def dim(self):
        return len(self.rows)

    def copy(self):
        s = Subspace(self.n, track=False)
        s.rows = [list(r) for r in self.rows]
        s.pivots = list(self.pivots)
        return s

    def _reduce(self, vec, combo=None):
        vec = list(vec)
        for k, p in enumerate(self.pivots):
            f = vec[p]
            if not f.is_zero:
                row = self.rows[k]
                for j in range(p, self.n):
                    c = row[j]
                    if not c.is_zero:
                        vec[j] = vec[j] - f * c
                if combo is not None:
                    for g, c in self._comps[k].items():
                        combo[g] = combo.get(g, ZERO) + f * c
        return vec

    def reduce(self, vec):
        """The canonical residual of vec modulo the subspace."""
        return self._reduce(vec)

    def contains(self, vec):
        return v_is_zero(self._reduce(vec))

    def contains_subspace(self, other: "Subspace"):
        return all(self.contains(r) for r in other.rows)

    def add(self, vec):
        """Insert vec; returns True when the dimension grew.

        In tracking mode returns (grew, combo): combo expresses a dependent
        vec over the previously inserted independent generators (by index).
        """
        combo = {} if self._track else None
        res = self._reduce(vec, combo)
        piv = None
        for j in range(self.n):
            if not res[j].is_zero:
                piv = j
                break
        if piv is None:
            if self._track:
                return False, combo
            return False
        inv = res[piv].inv()
        res = [x * inv for x in res]
        if self._track:
            gid = self._ngens
            newcomp = {gid: inv}
            for g, c in combo.items():
                newcomp[g] = -c * inv
            # vec = res_raw + sum combo*gen  =>  res_row = (vec - sum combo*gen)*inv
            # stored against generator ids; the new generator id is vec itself
        # eliminate the new pivot from existing rows
        for k in range(len(self.rows)):
            f = self.rows[k][piv]
            if not f.is_zero:
                row = self.rows[k]
                for j in range(piv, self.n):
                    c = res[j]
                    if not c.is_zero:
                        row[j] = row[j] - f * c
                if self._track:
                    comp = self._comps[k]
                    for g, c in newcomp.items():
                        comp[g] = comp.get(g, ZERO) - f * c
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < piv:
            pos += 1
        self.rows.insert(pos, res)
        self.pivots.insert(pos, piv)
        if self._track:
            self._comps.insert(pos, newcomp)
            self._ngens += 1
            return True, None
        return True

    def express_over_generators(self, vec):
        """Combination of vec over the inserted independent generators.

        Tracking mode only; returns {generator index: coefficient} or None
        when vec is outside the span.  Does not mutate the subspace.
        """
        combo = {}
        res = self._reduce(vec, combo)
        if not v_is_zero(res):
            return None
        return combo

    def express(self, vec):
        """Coefficients of vec over the RREF basis rows, or None."""
        coeffs = []
        vec = list(vec)
        for k, p in enumerate(self.pivots):
            f = vec[p]
            coeffs.append(f)
            if not f.is_zero:
                row = self.rows[k]
                for j in range(p, self.n):
                    c = row[j]
                    if not c.is_zero:
                        vec[j] = vec[j] - f * c
        if not v_is_zero(vec):
            return None
        return coeffs

    def annihilator(self) -> "Subspace":
        """The space of functionals (rows) vanishing on this subspace."""
        ann = Subspace(self.n)
        pivset = set(self.pivots)
        for f in range(self.n):
            if f in pivset:
                continue
            v = zeros(self.n)
            v[f] = ONE
            for k, p in enumerate(self.pivots):
                c = self.rows[k][f]
                if not c.is_zero:
                    v[p] = -c
            ann.add(v)
        return ann

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.n == other.n
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of K^{self.n})"


def span(vectors, n):
    s = Subspace(n)
    for v in vectors:
        s.add(v)
    return s


def kernel(rows, ncols):
    """Null space {x : A x = 0} of the matrix with the given rows."""
    rowspace = span(rows, ncols)
    return rowspace.annihilator()
