"""Symmetrizable Cartan data, weight/root lattices, bilinear pairings.

Weights are stored in fundamental-weight coordinates (the pairings with the
simple coroots), root-lattice vectors in simple-root coordinates.  The
bilinear form is <alpha_i, alpha_j> = d_i c_ij; <lambda, alpha_i> = d_i
lambda_i for a weight lambda.
"""

from __future__ import annotations

import ast
import hashlib

_PRESETS = {
    "A1": ([[2]], [1]),
    "A2": ([[2, -1], [-1, 2]], [1, 1]),
    "A3": ([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [1, 1, 1]),
    "B2": ([[2, -1], [-2, 2]], [2, 1]),
    "C2": ([[2, -2], [-1, 2]], [1, 2]),
    "G2": ([[2, -3], [-1, 2]], [1, 3]),
}


class CartanDataError(ValueError):
    pass


class Weight:
    """Element of the weight lattice P in fundamental-weight coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)

    def __add__(self, other):
        return Weight(a + b for a, b in zip(self.coords, other.coords, strict=True))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self.coords, other.coords, strict=True))

    def __neg__(self):
        return Weight(-a for a in self.coords)

    def __mul__(self, n: int):
        return Weight(n * a for a in self.coords)

    __rmul__ = __mul__

    @property
    def is_dominant(self):
        return all(a >= 0 for a in self.coords)

    @property
    def is_strictly_dominant(self):
        return all(a > 0 for a in self.coords)

    @property
    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __hash__(self):
        return hash(("wt", self.coords))

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return f"Weight{self.coords}"


class RootVec:
    """Element of the root lattice Q in simple-root coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(coords)

    def __add__(self, other):
        return RootVec(a + b for a, b in zip(self.coords, other.coords, strict=True))

    def __sub__(self, other):
        return RootVec(a - b for a, b in zip(self.coords, other.coords, strict=True))

    def __neg__(self):
        return RootVec(-a for a in self.coords)

    def __mul__(self, n: int):
        return RootVec(n * a for a in self.coords)

    __rmul__ = __mul__

    @property
    def height(self):
        return sum(self.coords)

    @property
    def is_nonneg(self):
        return all(a >= 0 for a in self.coords)

    @property
    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        return isinstance(other, RootVec) and self.coords == other.coords

    def __hash__(self):
        return hash(("rt", self.coords))

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return f"RootVec{self.coords}"


class CartanData:
    """A symmetrizable generalized Cartan matrix with fixed symmetrizers."""

    __slots__ = ("rank", "cartan", "sym", "key", "name")

    def __init__(self, cartan, sym, name=""):
        cartan = tuple(tuple(int(x) for x in row) for row in cartan)
        sym = tuple(int(x) for x in sym)
        r = len(cartan)
        if r == 0 or any(len(row) != r for row in cartan):
            raise CartanDataError("Cartan matrix must be square and nonempty")
        if len(sym) != r:
            raise CartanDataError("symmetrizer length must equal the rank")
        if any(d <= 0 for d in sym):
            raise CartanDataError("symmetrizers must be positive")
        for i in range(r):
            if cartan[i][i] != 2:
                raise CartanDataError(f"diagonal entry c[{i}][{i}] must be 2")
            for j in range(r):
                if i != j:
                    if cartan[i][j] > 0:
                        raise CartanDataError(f"off-diagonal entry c[{i}][{j}] must be <= 0")
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0):
                        raise CartanDataError(f"zero pattern asymmetric at ({i},{j})")
                    if sym[i] * cartan[i][j] != sym[j] * cartan[j][i]:
                        raise CartanDataError(
                            f"not symmetrizable at ({i},{j}): "
                            f"d_i c_ij = {sym[i] * cartan[i][j]} != d_j c_ji = {sym[j] * cartan[j][i]}"
                        )
        self.rank = r
        self.cartan = cartan
        self.sym = sym
        self.name = name
        blob = repr((cartan, sym)).encode()
        self.key = hashlib.sha256(blob).hexdigest()[:16]

    @staticmethod
    def preset(name: str) -> "CartanData":
        try:
            cartan, sym = _PRESETS[name.upper()]
        except KeyError:
            raise CartanDataError(f"unknown Cartan type {name!r}; known: {sorted(_PRESETS)}")
        return CartanData(cartan, sym, name=name.upper())

    @staticmethod
    def from_config(cfg: dict) -> "CartanData":
        if "type" in cfg:
            return CartanData.preset(str(cfg["type"]))
        if "cartan" in cfg:
            cartan = cfg["cartan"]
            if isinstance(cartan, str):
                cartan = ast.literal_eval(cartan)
            sym = cfg.get("sym")
            if isinstance(sym, str):
                sym = ast.literal_eval(sym)
            if sym is None:
                raise CartanDataError("config with explicit cartan matrix requires sym = [...]")
            return CartanData(cartan, sym)
        raise CartanDataError("config must give type = ... or cartan = [[...]]")

    # lattice elements ----------------------------------------------------

    def zero_weight(self) -> Weight:
        return Weight((0,) * self.rank)

    def fundamental(self, i: int) -> Weight:
        return Weight(tuple(1 if j == i else 0 for j in range(self.rank)))

    def rho(self) -> Weight:
        return Weight((1,) * self.rank)

    def alpha(self, i: int) -> RootVec:
        return RootVec(tuple(1 if j == i else 0 for j in range(self.rank)))

    def zero_root(self) -> RootVec:
        return RootVec((0,) * self.rank)

    # pairings -------------------------------------------------------------

    def root_to_weight(self, beta: RootVec) -> Weight:
        """Coordinates <beta, alpha_i^vee> = sum_j c_ij beta_j."""
        c = self.cartan
        return Weight(
            tuple(sum(c[i][j] * beta.coords[j] for j in range(self.rank)) for i in range(self.rank))
        )

    def pairing(self, lam: Weight, i: int) -> int:
        """<lambda, alpha_i^vee>, read off the stored coordinate."""
        return lam.coords[i]

    def form(self, beta: RootVec, gamma: RootVec) -> int:
        """Bilinear form on the root lattice, <alpha_i, alpha_j> = d_i c_ij."""
        if len(beta.coords) != self.rank or len(gamma.coords) != self.rank:
            raise CartanDataError("rank mismatch in form")
        total = 0
        for i in range(self.rank):
            bi = beta.coords[i]
            if bi:
                for j in range(self.rank):
                    total += bi * gamma.coords[j] * self.sym[i] * self.cartan[i][j]
        return total

    def pair_weight_root(self, lam: Weight, nu: RootVec) -> int:
        """Mixed pairing <lambda, nu> = sum_j nu_j d_j <lambda, alpha_j^vee>."""
        if len(lam.coords) != self.rank or len(nu.coords) != self.rank:
            raise CartanDataError("rank mismatch in mixed pairing")
        return sum(nu.coords[j] * self.sym[j] * lam.coords[j] for j in range(self.rank))

    def pair_weight_alpha(self, lam: Weight, i: int) -> int:
        """<lambda, alpha_i> = d_i <lambda, alpha_i^vee>."""
        return self.sym[i] * lam.coords[i]

    def weight_to_root(self, diff: Weight) -> RootVec:
        """Express a root-lattice element given in P-coordinates in Q-coordinates.

        Raises when diff is not in the root lattice.
        """
        from fractions import Fraction

        n = self.rank
        c = [[Fraction(self.cartan[i][j]) for j in range(n)] for i in range(n)]
        rhs = [Fraction(x) for x in diff.coords]
        for col in range(n):
            piv = next((r for r in range(col, n) if c[r][col] != 0), None)
            if piv is None:
                raise CartanDataError("degenerate Cartan matrix")
            c[col], c[piv] = c[piv], c[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            f = c[col][col]
            c[col] = [x / f for x in c[col]]
            rhs[col] /= f
            for r in range(n):
                if r != col and c[r][col] != 0:
                    f = c[r][col]
                    c[r] = [x - f * y for x, y in zip(c[r], c[col])]
                    rhs[r] -= f * rhs[col]
        if any(x.denominator != 1 for x in rhs):
            raise CartanDataError(f"{diff.coords} is not in the root lattice")
        return RootVec(tuple(int(x) for x in rhs))

    @property
    def is_finite_type(self) -> bool:
        """Positive definiteness of (d_i c_ij), by leading principal minors."""
        from fractions import Fraction

        b = [[Fraction(self.sym[i] * self.cartan[i][j]) for j in range(self.rank)] for i in range(self.rank)]
        # fraction-free enough at rank <= 8; plain Gaussian elimination
        for k in range(self.rank):
            if b[k][k] <= 0:
                return False
            for i in range(k + 1, self.rank):
                f = b[i][k] / b[k][k]
                for j in range(k, self.rank):
                    b[i][j] -= f * b[k][j]
        return True

    def __eq__(self, other):
        return isinstance(other, CartanData) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"CartanData({self.name or self.cartan})"
