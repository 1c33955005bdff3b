"""Irreducible highest-weight modules L(lambda) over Q(q).

Weight spaces are realized as the quotient of the F-word span of the highest
weight vector by the radical of the contravariant form.  The radical is
detected through the contravariance recursion <F_i x, y> = <x, E_i y>: going
down one height level, a combination of F_j-images of basis vectors is
radical exactly when all its E_i-images vanish, so each weight space is cut
out by a small tracked elimination instead of a word-pairing Gram matrix.
Basis vectors stay tagged by a generating F-word.  Dimensions are checked
against the Freudenthal multiplicity oracle for finite type.

The module-level braid operators act stringwise: on an i-string through an
E_i-highest vector u of i-weight N,

    T_i^{-1} F_i^{(j)} u = (-1)^j q_i^{-j(N-j+1)} F_i^{(N-j)} u,
    T_i     F_i^{(j)} u = (-1)^{N-j} q_i^{(N-j)(j+1)} F_i^{(N-j)} u,

so the inverse walk realizes extremal weight vectors as plain divided powers.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

from .linalg import Subspace, v_is_zero, zeros
from .qscalar import ONE, ZERO, RatQ, qbinom, qfact, qint
from .rootdata import CartanData, RootVec, Weight
from .uq import UqElement, _triple_dump, _triple_load
from .weyl import WeylElt, positive_roots


class ModuleError(ArithmeticError):
    pass


class DepthError(ModuleError):
    """An operation needed a weight space below the construction cutoff."""


class ModVector:
    __slots__ = ("mod", "weight", "coords")

    def __init__(self, mod, weight, coords):
        self.mod = mod
        self.weight = weight
        self.coords = coords

    @property
    def is_zero(self):
        return v_is_zero(self.coords)

    def __add__(self, other):
        if other.weight != self.weight:
            raise ModuleError("adding vectors of different weights")
        return ModVector(self.mod, self.weight, [a + b for a, b in zip(self.coords, other.coords)])

    def scale(self, c):
        return ModVector(self.mod, self.weight, [a * c for a in self.coords])

    def __repr__(self):
        return f"ModVector({self.weight}, {self.coords})"


class HWModule:
    """L(lambda); immutable once built."""

    __slots__ = (
        "cd",
        "highest",
        "depth",
        "tags",
        "levels",
        "fcols",
        "ecols",
        "_extremal",
        "_demazure",
    )

    def __init__(self, cd, highest, depth, tags, levels, fcols, ecols):
        self.cd = cd
        self.highest = highest
        self.depth = depth  # None = full module
        self.tags = tags  # weight -> tuple of F-word tags (the basis)
        self.levels = levels  # weight -> height below the highest weight
        self.fcols = fcols  # (i, source weight) -> list of target-coordinate columns
        self.ecols = ecols
        self._extremal = {}
        self._demazure = {}

    # -- basics --------------------------------------------------------------

    @property
    def is_full(self):
        return self.depth is None

    def has_weight(self, wt):
        return wt in self.tags

    def dim(self, wt):
        t = self.tags.get(wt)
        return len(t) if t else 0

    def total_dim(self):
        return sum(len(t) for t in self.tags.values())

    def weights(self):
        return sorted(self.tags, key=lambda w: (self.levels[w], w.coords))

    def zero_vector(self, wt):
        return ModVector(self, wt, zeros(self.dim(wt)))

    def hw_vector(self):
        return ModVector(self, self.highest, [ONE])

    # -- generator actions -----------------------------------------------------

    def apply_f(self, i, v: ModVector) -> ModVector:
        target = v.weight - self.cd.root_to_weight(self.cd.alpha(i))
        cols = self.fcols.get((i, v.weight))
        if cols is None:
            if (
                not self.is_full
                and not v.is_zero
                and v.weight in self.levels
                and self.levels[v.weight] + 1 > self.depth
            ):
                raise DepthError(
                    f"F-action crosses the construction cutoff towards weight {target.coords}"
                )
            return self.zero_vector(target)
        out = zeros(self.dim(target))
        for j, c in enumerate(v.coords):
            if not c.is_zero:
                col = cols[j]
                for t in range(len(out)):
                    x = col[t]
                    if not x.is_zero:
                        out[t] = out[t] + c * x
        return ModVector(self, target, out)

    def apply_e(self, i, v: ModVector) -> ModVector:
        target = v.weight + self.cd.root_to_weight(self.cd.alpha(i))
        cols = self.ecols.get((i, v.weight))
        if cols is None:
            return self.zero_vector(target)
        out = zeros(self.dim(target))
        for j, c in enumerate(v.coords):
            if not c.is_zero:
                col = cols[j]
                for t in range(len(out)):
                    x = col[t]
                    if not x.is_zero:
                        out[t] = out[t] + c * x
        return ModVector(self, target, out)

    def k_scalar(self, kvec, wt) -> RatQ:
        """K^{kvec} acts on the wt space as q^{<wt, sum k_i alpha_i>}."""
        return RatQ.q_power(self.cd.pair_weight_root(wt, RootVec(kvec)))

    def act(self, x: UqElement, v: ModVector) -> ModVector:
        """Action of a normal-form algebra element (one weight per output)."""
        by_weight = {}
        for (f, k, e), c in x.terms.items():
            cur = v
            for i in reversed(e):
                cur = self.apply_e(i, cur)
                if cur.is_zero:
                    break
            if cur.is_zero:
                continue
            scal = c * self.k_scalar(k, cur.weight)
            for i in reversed(f):
                cur = self.apply_f(i, cur)
                if cur.is_zero:
                    break
            if cur.is_zero:
                continue
            cur = cur.scale(scal)
            prev = by_weight.get(cur.weight)
            by_weight[cur.weight] = cur if prev is None else prev + cur
        if not by_weight:
            deg = x.degree()
            wt = v.weight + self.cd.root_to_weight(deg) if deg is not None else v.weight
            return self.zero_vector(wt)
        if len(by_weight) > 1:
            raise ModuleError("act() on a non-homogeneous element; split it first")
        return next(iter(by_weight.values()))

    # -- distinguished vectors ---------------------------------------------------

    def extremal_vector(self, u: WeylElt) -> ModVector:
        """b_{u lambda}: divided-power walk along a reduced word of u."""
        target = u.act_weight(self.highest)
        cached = self._extremal.get(target)
        if cached is not None:
            return cached
        v = self.hw_vector()
        for t in range(len(u.word) - 1, -1, -1):
            j = u.word[t]
            m = v.weight.coords[j]
            if m < 0:
                raise ModuleError("extremal walk hit a negative string length")
            for _ in range(m):
                v = self.apply_f(j, v)
            if v.is_zero:
                raise ModuleError("extremal walk vanished; module too shallow?")
            v = v.scale(qfact(m, self.cd.sym[j]).inv())
        self._extremal[target] = v
        return v

    def dual_functional(self, u: WeylElt):
        """The row xi_{u lambda} with <xi_{u lambda}, b_{u lambda}> = 1."""
        b = self.extremal_vector(u)
        if self.dim(b.weight) != 1:
            raise ModuleError(f"extremal weight space {b.weight.coords} is not one-dimensional")
        return b.weight, [b.coords[0].inv()]

    def pair(self, row, v: ModVector) -> RatQ:
        return sum((r * c for r, c in zip(row, v.coords) if not r.is_zero), ZERO)

    def demazure_span(self, u: WeylElt, side: str):
        """Weight-graded span of U^+ b_{u lambda} (plus) or U^- b_{u lambda} (minus)."""
        key = (u.act_weight(self.highest), side)
        cached = self._demazure.get(key)
        if cached is not None:
            return cached
        if side not in ("plus", "minus"):
            raise ValueError("side must be 'plus' or 'minus'")
        apply_gen = self.apply_e if side == "plus" else self.apply_f
        start = self.extremal_vector(u)
        spaces = {start.weight: Subspace(self.dim(start.weight))}
        spaces[start.weight].add(start.coords)
        queue = [start]
        while queue:
            v = queue.pop()
            for i in range(self.cd.rank):
                w = apply_gen(i, v)
                if w.is_zero:
                    continue
                sp = spaces.get(w.weight)
                if sp is None:
                    sp = Subspace(self.dim(w.weight))
                    spaces[w.weight] = sp
                if sp.add(w.coords):
                    queue.append(ModVector(self, w.weight, sp.rows[-1]))
        self._demazure[key] = spaces
        return spaces

    def demazure_subspace(self, u: WeylElt, side: str, wt) -> Subspace:
        sp = self.demazure_span(u, side).get(wt)
        return sp if sp is not None else Subspace(self.dim(wt))

    # -- module-level braid operators ----------------------------------------------

    def _string_decompose(self, i, v: ModVector):
        """v as a list of (m, u) with v = sum_m F_i^{(m)} u, E_i u = 0."""
        out = []
        work = v
        di = self.cd.sym[i]
        while not work.is_zero:
            chain = [work]
            while True:
                nxt = self.apply_e(i, chain[-1])
                if nxt.is_zero:
                    break
                chain.append(nxt)
            m = len(chain) - 1
            top = chain[-1].scale(qfact(m, di).inv())  # E_i^{(m)} work
            n_str = top.weight.coords[i]
            u = top.scale(qbinom(n_str, m, di).inv())
            out.append((m, u))
            sub = u
            for _ in range(m):
                sub = self.apply_f(i, sub)
            work = work + sub.scale(-qfact(m, di).inv())
        return out

    def braid_mod(self, i, sign, v: ModVector) -> ModVector:
        """Module-level braid operator, stringwise with the frozen scalars."""
        si_img = self.cd.root_to_weight(self.cd.alpha(i))
        target = v.weight - v.weight.coords[i] * si_img
        if v.is_zero:
            return self.zero_vector(target)
        di = self.cd.sym[i]
        out = self.zero_vector(target)
        for j, u in self._string_decompose(i, v):
            big_n = u.weight.coords[i]
            if sign > 0:
                coeff = RatQ.q_power(di * (big_n - j) * (j + 1))
                if (big_n - j) % 2:
                    coeff = -coeff
            else:
                coeff = RatQ.q_power(-di * j * (big_n - j + 1))
                if j % 2:
                    coeff = -coeff
            w = u
            for _ in range(big_n - j):
                w = self.apply_f(i, w)
            out = out + w.scale(coeff * qfact(big_n - j, di).inv())
        return out

    def braid_word(self, word, sign, v: ModVector) -> ModVector:
        """T_{i_1} ... T_{i_l} v, or its inverse when sign < 0."""
        if sign > 0:
            for i in reversed(word):
                v = self.braid_mod(i, 1, v)
        else:
            for i in word:
                v = self.braid_mod(i, -1, v)
        return v


# -- character oracles ------------------------------------------------------------


def _weight_form(cd: CartanData):
    """Exact bilinear form on P as a function, via the inverse Cartan matrix."""
    n = cd.rank
    c = [[Fraction(cd.cartan[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if c[r][col] != 0)
        c[col], c[piv] = c[piv], c[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        f = c[col][col]
        c[col] = [x / f for x in c[col]]
        inv[col] = [x / f for x in inv[col]]
        for r in range(n):
            if r != col and c[r][col] != 0:
                f = c[r][col]
                c[r] = [x - f * y for x, y in zip(c[r], c[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]

    def form(lam: Weight, mu: Weight):
        # mu = sum_j m_j alpha_j with m = C^{-1} mu; (lam, mu) = sum_j m_j d_j lam_j
        total = Fraction(0)
        for j in range(n):
            m_j = sum(inv[j][t] * mu.coords[t] for t in range(n))
            total += m_j * cd.sym[j] * lam.coords[j]
        return total

    return form


def freudenthal_multiplicities(cd: CartanData, lam: Weight):
    """Exact weight multiplicities of L(lambda), finite type."""
    if not cd.is_finite_type:
        raise ModuleError("multiplicity oracle requires finite type")
    if not lam.is_dominant:
        raise ModuleError("highest weight must be dominant")
    form = _weight_form(cd)
    rho = cd.rho()
    pos = [cd.root_to_weight(b) for b in positive_roots(cd)]
    lam_rho = form(lam + rho, lam + rho)
    mults = {lam: 1}
    frontier = [lam]
    alphas = [cd.root_to_weight(cd.alpha(i)) for i in range(cd.rank)]
    level = 0
    while frontier:
        level += 1
        children = sorted(
            {wt - a for wt in frontier for a in alphas}, key=lambda w: w.coords
        )
        frontier = []
        for mu in children:
            if mu in mults:
                continue
            total = Fraction(0)
            for a in pos:
                for k in range(1, level + 1):
                    up = Weight(tuple(mu.coords[t] + k * a.coords[t] for t in range(cd.rank)))
                    m_up = mults.get(up, 0)
                    if m_up:
                        total += 2 * m_up * form(up, a)
            if total == 0:
                continue
            denom = lam_rho - form(mu + rho, mu + rho)
            if denom == 0:
                raise ModuleError("multiplicity recursion degenerated")
            m = total / denom
            if m:
                assert m.denominator == 1 and m > 0
                mults[mu] = int(m)
                frontier.append(mu)
    return mults


def weyl_dim(cd: CartanData, lam: Weight) -> int:
    """Total dimension of L(lambda) by the dimension product formula."""
    form = _weight_form(cd)
    rho = cd.rho()
    num = Fraction(1)
    den = Fraction(1)
    for b in positive_roots(cd):
        a = cd.root_to_weight(b)
        num *= form(lam + rho, a)
        den *= form(rho, a)
    d = num / den
    assert d.denominator == 1
    return int(d)


# -- construction -------------------------------------------------------------------


def _build(cd: CartanData, lam: Weight, depth):
    alphas = [cd.root_to_weight(cd.alpha(i)) for i in range(cd.rank)]
    tags = {lam: ((),)}
    levels = {lam: 0}
    fcols = {}
    ecols = {}

    def apply_cols(cols, target_wt, vec):
        n = len(tags.get(target_wt, ()))
        out = zeros(n)
        if cols is None or n == 0:
            return out
        for j, c in enumerate(vec):
            if not c.is_zero:
                col = cols[j]
                for t in range(n):
                    x = col[t]
                    if not x.is_zero:
                        out[t] = out[t] + c * x
        return out

    def unit_vec(wt, idx):
        v = zeros(len(tags[wt]))
        v[idx] = ONE
        return v

    level_weights = [lam]
    h = 0
    while level_weights:
        h += 1
        if depth is not None and h > depth:
            break
        parents = level_weights
        children = sorted(
            {wt - alphas[j] for wt in parents for j in range(cd.rank)},
            key=lambda w: w.coords,
        )
        level_weights = []
        for mu in children:
            cands = [
                (j, vidx)
                for j in range(cd.rank)
                for vidx in range(len(tags.get(mu + alphas[j], ())))
            ]
            if not cands:
                continue
            eblocks = [(i, mu + alphas[i]) for i in range(cd.rank) if (mu + alphas[i]) in tags]
            offs = {}
            total = 0
            for i, wt in eblocks:
                offs[i] = total
                total += len(tags[wt])
            tracker = Subspace(total, track=True)
            basis_tags = []
            fcol_entries = {}
            e_images = []
            for j, vidx in cands:
                src = mu + alphas[j]
                img = zeros(total)
                for i, _wt in eblocks:
                    # E_i(F_j v) = F_j(E_i v) + delta_ij [<src, alpha_i^vee>]_{q_i} v
                    ev = apply_cols(ecols.get((i, src)), src + alphas[i], unit_vec(src, vidx))
                    piece = apply_cols(fcols.get((j, src + alphas[i])), src + alphas[i] - alphas[j], ev)
                    if i == j:
                        ci = qint(src.coords[i], cd.sym[i])
                        base = unit_vec(src, vidx)
                        piece = [a + ci * b for a, b in zip(piece, base)]
                    off = offs[i]
                    for t, x in enumerate(piece):
                        if not x.is_zero:
                            img[off + t] = img[off + t] + x
                grew, combo = tracker.add(img)
                src_tag = tags[src][vidx]
                if grew:
                    gid = len(basis_tags)
                    basis_tags.append((j,) + src_tag)
                    fcol_entries.setdefault((j, src), {})[vidx] = ("unit", gid)
                    e_images.append(img)
                else:
                    fcol_entries.setdefault((j, src), {})[vidx] = ("combo", combo)
            if not basis_tags:
                continue
            dim = len(basis_tags)
            tags[mu] = tuple(basis_tags)
            levels[mu] = h
            level_weights.append(mu)
            for j in range(cd.rank):
                src = mu + alphas[j]
                ent = fcol_entries.get((j, src))
                if ent is None:
                    continue
                cols = []
                for vidx in range(len(tags[src])):
                    kind, data = ent[vidx]
                    col = zeros(dim)
                    if kind == "unit":
                        col[data] = ONE
                    else:
                        for g, c in data.items():
                            col[g] = c
                    cols.append(col)
                fcols[(j, src)] = cols
            for i, wt in eblocks:
                off = offs[i]
                d_t = len(tags[wt])
                ecols[(i, mu)] = [
                    [e_images[gid][off + t] for t in range(d_t)] for gid in range(dim)
                ]
    mod = HWModule(cd, lam, depth, tags, levels, fcols, ecols)
    if depth is None:
        oracle = freudenthal_multiplicities(cd, lam)
        got = {wt: mod.dim(wt) for wt in mod.tags}
        if got != oracle:
            raise ModuleError(
                f"module dimensions disagree with the multiplicity oracle for {lam.coords}"
            )
    return mod


_MODULES = {}


def build_module(cd: CartanData, lam: Weight, depth=None, cache_dir=None) -> HWModule:
    """Construct (or load from cache) L(lambda) down to depth (None = full)."""
    if not lam.is_dominant:
        raise ModuleError(f"highest weight {lam.coords} is not dominant")
    if depth is None and not cd.is_finite_type:
        raise ModuleError("FULL module construction requires finite type")
    key = (cd.key, lam.coords, depth)
    mod = _MODULES.get(key)
    if mod is not None:
        return mod
    mod = _load_module(cd, lam, depth, cache_dir)
    if mod is None:
        mod = _build(cd, lam, depth)
        _store_module(mod, cache_dir)
    _MODULES[key] = mod
    return mod


def _module_path(cd, lam, depth, cache_dir):
    if not cache_dir:
        return None
    tag = "full" if depth is None else str(depth)
    name = f"mod_{cd.key}_{'_'.join(map(str, lam.coords))}_{tag}.json"
    return os.path.join(cache_dir, name)


def _wt_key(wt):
    return ",".join(map(str, wt.coords))


def _wt_parse(s):
    return Weight(tuple(int(x) for x in s.split(",")))


def _load_module(cd, lam, depth, cache_dir):
    path = _module_path(cd, lam, depth, cache_dir)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, ValueError):
        return None
    if data.get("v") != 1:
        return None
    tags = {_wt_parse(k): tuple(tuple(t) for t in v) for k, v in data["tags"].items()}
    levels = {_wt_parse(k): v for k, v in data["levels"].items()}

    def load_cols(blob):
        out = {}
        for k, cols in blob.items():
            i_s, wt_s = k.split(";")
            out[(int(i_s), _wt_parse(wt_s))] = [
                [RatQ(_triple_load(c)) for c in col] for col in cols
            ]
        return out

    return HWModule(cd, lam, depth, tags, levels, load_cols(data["fcols"]), load_cols(data["ecols"]))


def _store_module(mod: HWModule, cache_dir):
    path = _module_path(mod.cd, mod.highest, mod.depth, cache_dir)
    if not path:
        return
    os.makedirs(cache_dir, exist_ok=True)

    def dump_cols(cols):
        return {
            f"{i};{_wt_key(wt)}": [[_triple_dump(c.t) for c in col] for col in colset]
            for (i, wt), colset in sorted(cols.items(), key=lambda kv: (kv[0][0], kv[0][1].coords))
        }

    data = {
        "v": 1,
        "highest": list(mod.highest.coords),
        "depth": mod.depth,
        "tags": {
            _wt_key(wt): [list(t) for t in mod.tags[wt]]
            for wt in sorted(mod.tags, key=lambda w: w.coords)
        },
        "levels": {_wt_key(wt): mod.levels[wt] for wt in sorted(mod.levels, key=lambda w: w.coords)},
        "fcols": dump_cols(mod.fcols),
        "ecols": dump_cols(mod.ecols),
    }
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(data, fh)
    os.replace(tmp, path)
