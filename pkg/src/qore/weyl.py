"""Weyl group elements, reduced words, Bruhat order, inversion roots.

Elements are identified by their integer action matrix on the root lattice
(faithful for all symmetrizable types); the stored word is a canonical
reduced word recomputed by a descent walk, never trusted from input.
"""

from __future__ import annotations

from .rootdata import CartanData, RootVec, Weight


class WordError(ValueError):
    pass


def _id_mat(r):
    return tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))


def _col_neg(mat, j):
    """Is w(alpha_j) a negative root (all coordinates <= 0)?"""
    return all(row[j] <= 0 for row in mat)


def _mul_right_s(cd, mat, i):
    """Matrix of w s_i from the matrix of w: column_j -> col_j - c_ij col_i."""
    r = cd.rank
    c = cd.cartan
    cols = [[mat[k][j] for k in range(r)] for j in range(r)]
    new_cols = []
    for j in range(r):
        if j == i:
            new_cols.append([-x for x in cols[i]])
        else:
            cij = c[i][j]
            new_cols.append([cols[j][k] - cij * cols[i][k] for k in range(r)])
    return tuple(tuple(new_cols[j][k] for j in range(r)) for k in range(r))


class WeylElt:
    """A Weyl group element; equality and hashing go through the action matrix."""

    __slots__ = ("cd", "mat", "word")

    def __init__(self, cd: CartanData, mat, word):
        self.cd = cd
        self.mat = mat
        self.word = word

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.cd.key == other.cd.key and self.mat == other.mat

    def __hash__(self):
        return hash((self.cd.key, self.mat))

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        if self.cd.key != other.cd.key:
            raise WordError("elements of different Weyl groups")
        r = self.cd.rank
        a, b = self.mat, other.mat
        mat = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(r)) for j in range(r)) for i in range(r)
        )
        return WeylElt(self.cd, mat, _canonical_word(self.cd, mat))

    def inverse(self) -> "WeylElt":
        return from_word(self.cd, tuple(reversed(self.word)))

    def times_s(self, i: int) -> "WeylElt":
        mat = _mul_right_s(self.cd, self.mat, i)
        return WeylElt(self.cd, mat, _canonical_word(self.cd, mat))

    def has_right_descent(self, i: int) -> bool:
        """True iff l(w s_i) = l(w) - 1, i.e. w(alpha_i) < 0."""
        return _col_neg(self.mat, i)

    def act_root(self, beta: RootVec) -> RootVec:
        r = self.cd.rank
        return RootVec(
            tuple(sum(self.mat[i][j] * beta.coords[j] for j in range(r)) for i in range(r))
        )

    def act_weight(self, lam: Weight) -> Weight:
        """w(lambda) in fundamental-weight coordinates, via the descent word."""
        coords = list(lam.coords)
        c = self.cd.cartan
        r = self.cd.rank
        for i in reversed(self.word):
            li = coords[i]
            if li:
                for k in range(r):
                    coords[k] -= c[k][i] * li
        return Weight(coords)

    def word_str(self) -> str:
        return ",".join(str(i + 1) for i in self.word) if self.word else "e"

    def __repr__(self):
        return f"W[{self.word_str()}]"


def _canonical_word(cd, mat):
    """Reduced word by repeatedly stripping the smallest right descent."""
    r = cd.rank
    rev = []
    m = mat
    ident = _id_mat(r)
    while m != ident:
        for i in range(r):
            if _col_neg(m, i):
                rev.append(i)
                m = _mul_right_s(cd, m, i)
                break
        else:
            raise WordError("matrix is not a Weyl group element")
    return tuple(reversed(rev))


def identity(cd: CartanData) -> WeylElt:
    return WeylElt(cd, _id_mat(cd.rank), ())


def simple(cd: CartanData, i: int) -> WeylElt:
    if not 0 <= i < cd.rank:
        raise WordError(f"generator index {i} out of range")
    return WeylElt(cd, _mul_right_s(cd, _id_mat(cd.rank), i), (i,))


def from_word(cd: CartanData, word) -> WeylElt:
    """Canonical element of a (not necessarily reduced) word; 0-based indices."""
    m = _id_mat(cd.rank)
    for i in word:
        if not 0 <= i < cd.rank:
            raise WordError(f"generator index {i} out of range for rank {cd.rank}")
        m = _mul_right_s(cd, m, i)
    return WeylElt(cd, m, _canonical_word(cd, m))


def reduce_word(cd: CartanData, word) -> WeylElt:
    return from_word(cd, word)


def parse_word(cd: CartanData, text: str):
    """1-based comma-separated word text, 'e' or '' for the identity."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        letters = tuple(int(p) - 1 for p in text.split(","))
    except ValueError:
        raise WordError(f"cannot parse word {text!r}")
    for i in letters:
        if not 0 <= i < cd.rank:
            raise WordError(f"word letter {i + 1} out of range for rank {cd.rank}")
    return letters


def is_reduced(cd: CartanData, word) -> bool:
    return from_word(cd, word).length == len(word)


def bruhat_leq(u: WeylElt, w: WeylElt) -> bool:
    """Bruhat order via the lifting walk along w's canonical word."""
    if u.cd.key != w.cd.key:
        raise WordError("elements of different Weyl groups")
    if u.length > w.length:
        return False
    v = u
    for i in reversed(w.word):
        if v.has_right_descent(i):
            v = v.times_s(i)
    return v.is_identity


def lower_interval(w: WeylElt):
    """The set of u <= w, from subword products of the canonical word."""
    cd = w.cd
    elts = {identity(cd)}
    for i in w.word:
        elts |= {v.times_s(i) for v in elts}
    return elts


def inversion_roots(cd: CartanData, word):
    """The roots beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) of a reduced word."""
    if not is_reduced(cd, word):
        raise WordError(f"word {tuple(i + 1 for i in word)} is not reduced")
    out = []
    prefix = identity(cd)
    for i in word:
        out.append(prefix.act_root(cd.alpha(i)))
        prefix = prefix.times_s(i)
    return out


def longest_element(cd: CartanData) -> WeylElt:
    """w_0 by greedy ascent (finite type only)."""
    if not cd.is_finite_type:
        raise WordError("longest element requires finite type")
    w = identity(cd)
    changed = True
    while changed:
        changed = False
        for i in range(cd.rank):
            if not w.has_right_descent(i):
                w = w.times_s(i)
                changed = True
                break
    return w


def positive_roots(cd: CartanData):
    """All positive roots (finite type), as the inversion set of w_0."""
    return inversion_roots(cd, longest_element(cd).word)


def enumerate_group(cd: CartanData):
    """The full Weyl group (finite type), BFS closure of the generators."""
    if not cd.is_finite_type:
        raise WordError("group enumeration requires finite type")
    seen = {identity(cd)}
    frontier = [identity(cd)]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(cd.rank):
                x = v.times_s(i)
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        frontier = nxt
    return seen


def reduced_words(w: WeylElt):
    """All reduced words of w (use only at desk scale)."""
    if w.is_identity:
        return [()]
    out = []
    for i in range(w.cd.rank):
        if w.has_right_descent(i):
            for rw in reduced_words(w.times_s(i)):
                out.append(rw + (i,))
    return out
