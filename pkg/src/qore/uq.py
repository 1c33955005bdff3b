"""Normal-form engine for the quantized enveloping algebra.

Elements are finite sums of triangular monomials F-word * K-monomial * E-word
with scalar coefficients in Q(q).  Pure E- and F-words are kept in a canonical
per-degree word basis computed once per (Cartan data, degree) by linear
algebra on the quantum Serre relators placed in all positions; E-past-F
straightening uses the defining commutation relation, which strictly reduces
the number of (E, F) inversions and therefore terminates.

Braid-group automorphisms act through a frozen generator-image table; the
table is pinned by tests against conjugation by the module-level braid
operators (see qore.hwmod).
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile

from .linalg import Subspace
from .qscalar import ONE, ZERO, RatQ, qbinom, qfact, qint
from .rootdata import CartanData, RootVec
from .weyl import WordError, is_reduced


class EngineError(ArithmeticError):
    pass


def _word_content(word, rank):
    c = [0] * rank
    for i in word:
        c[i] += 1
    return tuple(c)


class UqElement:
    """Element of U_q(g) as a map from normal monomials to scalars."""

    __slots__ = ("cd", "terms")

    def __init__(self, cd, terms=None):
        self.cd = cd
        self.terms = terms if terms is not None else {}

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
        return UqElement(self.cd, out)

    def __sub__(self, other):
        return self + other.scale(RatQ.from_int(-1))

    def scale(self, c: RatQ):
        if c.is_zero:
            return UqElement(self.cd)
        return UqElement(self.cd, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, UqElement) and self.cd.key == other.cd.key and self.terms == other.terms

    def __hash__(self):
        return hash((self.cd.key, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    @property
    def is_f_only(self):
        return all(not e and not any(k) for (_f, k, e) in self.terms)

    @property
    def is_e_only(self):
        return all(not f and not any(k) for (f, k, _e) in self.terms)

    def degree(self):
        """Q-degree when homogeneous (deg E_i = -deg F_i = alpha_i); else None."""
        degs = set()
        r = self.cd.rank
        for (f, _k, e) in self.terms:
            cf = _word_content(f, r)
            ce = _word_content(e, r)
            degs.add(tuple(ce[i] - cf[i] for i in range(r)))
        if len(degs) != 1:
            return None
        return RootVec(next(iter(degs)))

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (f, k, e) in sorted(self.terms):
            c = self.terms[(f, k, e)]
            parts = []
            parts.extend(f"F{i + 1}" for i in f)
            parts.extend(
                f"K{i + 1}" + (f"^{k[i]}" if k[i] != 1 else "") for i in range(len(k)) if k[i]
            )
            parts.extend(f"E{i + 1}" for i in e)
            mono = " ".join(parts) if parts else "1"
            bits.append(f"({c}) {mono}")
        return " + ".join(bits)

    __repr__ = __str__


class SerreComponent:
    __slots__ = ("words", "basis", "red")

    def __init__(self, words, basis, red):
        self.words = words
        self.basis = basis
        self.red = red


class UqEngine:
    """Per-Cartan-data engine owning the normal-form caches."""

    def __init__(self, cd: CartanData, cache_dir=None):
        self.cd = cd
        self.cache_dir = cache_dir
        self._serre = {}
        self._ef = {}
        self._straight = {}
        self._braid = {}
        self._rootvec = {}

    # -- scalars -----------------------------------------------------------

    def q_i(self, i):
        return RatQ.q_power(self.cd.sym[i])

    def _form_kw(self, kvec, content):
        return self.cd.form(RootVec(kvec), RootVec(content))

    # -- elements ----------------------------------------------------------

    def zero(self):
        return UqElement(self.cd)

    def one(self):
        return self.monomial((), (0,) * self.cd.rank, ())

    def monomial(self, fword, kvec, eword, coeff=ONE):
        if coeff.is_zero:
            return UqElement(self.cd)
        return UqElement(self.cd, {(tuple(fword), tuple(kvec), tuple(eword)): coeff})

    def E(self, i):
        return self.monomial((), (0,) * self.cd.rank, (i,))

    def F(self, i):
        return self.monomial((i,), (0,) * self.cd.rank, ())

    def K(self, kvec):
        return self.monomial((), tuple(kvec), ())

    def K_i(self, i, exp=1):
        k = [0] * self.cd.rank
        k[i] = exp
        return self.K(k)

    # -- Serre normal form ---------------------------------------------------

    def serre(self, content) -> SerreComponent:
        comp = self._serre.get(content)
        if comp is not None:
            return comp
        comp = self._serre_load(content)
        if comp is None:
            comp = self._serre_compute(content)
            self._serre_store(content, comp)
        self._serre[content] = comp
        return comp

    def _serre_compute(self, content):
        r = self.cd.rank
        letters = []
        for i in range(r):
            letters.extend([i] * content[i])
        words = sorted(set(itertools.permutations(letters)))
        index = {w: k for k, w in enumerate(words)}
        n = len(words)
        space = Subspace(n)
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                m = 1 - self.cd.cartan[i][j]
                rel_content = [0] * r
                rel_content[i] = m
                rel_content[j] = 1
                rem = tuple(content[t] - rel_content[t] for t in range(r))
                if any(x < 0 for x in rem):
                    continue
                rel_terms = []
                for s in range(m + 1):
                    coeff = qbinom(m, s, self.cd.sym[i])
                    if s % 2:
                        coeff = -coeff
                    rel_terms.append(((i,) * (m - s) + (j,) + (i,) * s, coeff))
                rem_letters = []
                for t in range(r):
                    rem_letters.extend([t] * rem[t])
                for u in sorted(set(itertools.permutations(rem_letters))):
                    for cut in range(len(u) + 1):
                        left, right = u[:cut], u[cut:]
                        row = [ZERO] * n
                        for w_mid, coeff in rel_terms:
                            row[index[left + w_mid + right]] += coeff
                        space.add(row)
        pivots = set(space.pivots)
        basis = tuple(words[k] for k in range(n) if k not in pivots)
        basis_pos = {w: t for t, w in enumerate(basis)}
        red = {}
        for w in basis:
            red[w] = ((w, ONE),)
        for rowk, p in enumerate(space.pivots):
            row = space.rows[rowk]
            expansion = []
            for k in range(n):
                if k in pivots or row[k].is_zero:
                    continue
                expansion.append((words[k], -row[k]))
            red[words[p]] = tuple(expansion)
        assert len(red) == n
        _ = basis_pos
        return SerreComponent(tuple(words), basis, red)

    def _serre_path(self, content):
        if not self.cache_dir:
            return None
        name = f"serre_{self.cd.key}_{'_'.join(map(str, content))}.json"
        return os.path.join(self.cache_dir, name)

    def _serre_load(self, content):
        path = self._serre_path(content)
        if not path or not os.path.exists(path):
            return None
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return None
        if data.get("v") != 1:
            return None
        words = tuple(tuple(w) for w in data["words"])
        basis = tuple(tuple(w) for w in data["basis"])
        red = {}
        for ent in data["red"]:
            w = tuple(ent[0])
            red[w] = tuple((tuple(bw), RatQ(_triple_load(c))) for bw, c in ent[1])
        return SerreComponent(words, basis, red)

    def _serre_store(self, content, comp):
        path = self._serre_path(content)
        if not path:
            return
        os.makedirs(self.cache_dir, exist_ok=True)
        data = {
            "v": 1,
            "words": [list(w) for w in comp.words],
            "basis": [list(w) for w in comp.basis],
            "red": [
                [list(w), [[list(bw), _triple_dump(c.t)] for bw, c in exp]]
                for w, exp in sorted(comp.red.items())
            ],
        }
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(data, fh)
        os.replace(tmp, path)

    def reduce_word(self, word):
        """Normal form of a generator word: ((canonical word, coeff), ...)."""
        if len(word) <= 1:
            return ((tuple(word), ONE),)
        content = _word_content(word, self.cd.rank)
        return self.serre(content).red[tuple(word)]

    def basis_words(self, content):
        """Canonical word basis of the degree-`content` component of U^+ (or U^-)."""
        return self.serre(content).basis

    # -- straightening -------------------------------------------------------

    def _ef_move(self, i, fword):
        """E_i F_fword as raw terms (fword', kshift in {-1,0,+1} on i, has_e, coeff)."""
        key = (i, fword)
        out = self._ef.get(key)
        if out is not None:
            return out
        if not fword:
            out = (((), 0, True, ONE),)
        else:
            j, rest = fword[0], fword[1:]
            acc = []
            for f1, kd, has_e, c in self._ef_move(i, rest):
                acc.append(((j,) + f1, kd, has_e, c))
            if j == i:
                denom = (self.q_i(i) - self.q_i(i).inv()).inv()
                a = self._form_kw(_unit(self.cd.rank, i), _word_content(rest, self.cd.rank))
                acc.append((rest, 1, False, RatQ.q_power(-a) * denom))
                acc.append((rest, -1, False, -RatQ.q_power(a) * denom))
            out = tuple(acc)
        self._ef[key] = out
        return out

    def _estraighten(self, eword, fword):
        """E_eword F_fword in separated canonical form: {(f,k,e): coeff}."""
        key = (eword, fword)
        out = self._straight.get(key)
        if out is not None:
            return out
        r = self.cd.rank
        zk = (0,) * r
        if not eword or not fword:
            out = {(fword, zk, eword): ONE}
        else:
            last, rest = eword[-1], eword[:-1]
            acc = {}
            for f1raw, kd, has_e, c0 in self._ef_move(last, fword):
                e1 = (last,) if has_e else ()
                d1 = _unit_scaled(r, last, kd)
                for f1c, cf in self.reduce_word(f1raw):
                    c1 = c0 * cf
                    if rest:
                        for (f2, d2, e2), c2 in self._estraighten(rest, f1c).items():
                            scal = RatQ.q_power(-self._form_kw(d1, _word_content(e2, r)))
                            for e3, ce in self.reduce_word(e2 + e1):
                                keyt = (f2, _vadd(d2, d1), e3)
                                val = acc.get(keyt, ZERO) + c1 * c2 * scal * ce
                                if val.is_zero:
                                    acc.pop(keyt, None)
                                else:
                                    acc[keyt] = val
                    else:
                        keyt = (f1c, d1, e1)
                        val = acc.get(keyt, ZERO) + c1
                        if val.is_zero:
                            acc.pop(keyt, None)
                        else:
                            acc[keyt] = val
            out = acc
        self._straight[key] = out
        return out

    # -- multiplication ------------------------------------------------------

    def multiply(self, a: UqElement, b: UqElement) -> UqElement:
        if a.cd.key != self.cd.key or b.cd.key != self.cd.key:
            raise EngineError("elements from a different Cartan datum")
        r = self.cd.rank
        out = {}
        for (f1, k1, e1), c1 in a.terms.items():
            for (f2, k2, e2), c2 in b.terms.items():
                c12 = c1 * c2
                for (g, dt, h), ct in self._estraighten(e1, f2).items():
                    scal = ct * RatQ.q_power(
                        -self._form_kw(k1, _word_content(g, r)) - self._form_kw(k2, _word_content(h, r))
                    )
                    kv = _vadd(_vadd(k1, dt), k2)
                    for fc, cf in self.reduce_word(f1 + g):
                        for ec, ce in self.reduce_word(h + e2):
                            keyt = (fc, kv, ec)
                            val = out.get(keyt, ZERO) + c12 * scal * cf * ce
                            if val.is_zero:
                                out.pop(keyt, None)
                            else:
                                out[keyt] = val
        return UqElement(self.cd, out)

    def product(self, *elts):
        acc = self.one()
        for x in elts:
            acc = self.multiply(acc, x)
        return acc

    def power(self, a: UqElement, n: int) -> UqElement:
        acc = self.one()
        for _ in range(n):
            acc = self.multiply(acc, a)
        return acc

    # -- the anti-automorphism tau -------------------------------------------

    def tau(self, a: UqElement) -> UqElement:
        """tau fixes E_i and F_i, inverts K_i, and reverses products."""
        zk = (0,) * self.cd.rank
        out = self.zero()
        for (f, k, e), c in a.terms.items():
            # tau(F K E) = tau(E) tau(K) tau(F) = E_rev K^{-k} F_rev;
            # E_w K^{-k} = q^{<k, deg w>} K^{-k} E_w puts K left of E
            head = self.zero()
            for ec, ce in self.reduce_word(tuple(reversed(e))):
                scal = RatQ.q_power(self._form_kw(k, _word_content(ec, self.cd.rank)))
                head = head + self.monomial((), _vneg(k), ec, ce * scal)
            tail = self.zero()
            for fc, cf in self.reduce_word(tuple(reversed(f))):
                tail = tail + self.monomial(fc, zk, (), cf)
            out = out + self.multiply(head, tail).scale(c)
        return out

    # -- braid group automorphisms --------------------------------------------

    def braid_gen_image(self, i, sign, kind, j) -> UqElement:
        """Frozen table of T_i^{sign} on E_j / F_j (kind 'E'/'F')."""
        key = (i, sign, kind, j)
        out = self._braid.get(key)
        if out is not None:
            return out
        qi = self.q_i(i)
        if kind == "E" and i == j:
            out = self.monomial((i,), _unit(self.cd.rank, i), (), -ONE) if sign > 0 else self.monomial(
                (i,), _unit_scaled(self.cd.rank, i, -1), (), -(qi * qi)
            )
        elif kind == "F" and i == j:
            out = (
                self.monomial((), _unit_scaled(self.cd.rank, i, -1), (i,), -ONE)
                if sign > 0
                else self.monomial((), _unit(self.cd.rank, i), (i,), -(qi * qi).inv())
            )
        else:
            m = -self.cd.cartan[i][j]
            di = self.cd.sym[i]
            acc = self.zero()
            for s in range(m + 1):
                c = (qfact(m - s, di) * qfact(s, di)).inv()
                if s % 2:
                    c = -c
                if kind == "E":
                    c = c * RatQ.q_power(-di * s)
                    word = (i,) * (m - s) + (j,) + (i,) * s if sign > 0 else (i,) * s + (j,) + (i,) * (m - s)
                    for wc, cw in self.reduce_word(word):
                        acc = acc + self.monomial((), (0,) * self.cd.rank, wc, c * cw)
                else:
                    c = c * RatQ.q_power(di * s)
                    word = (i,) * s + (j,) + (i,) * (m - s) if sign > 0 else (i,) * (m - s) + (j,) + (i,) * s
                    for wc, cw in self.reduce_word(word):
                        acc = acc + self.monomial(wc, (0,) * self.cd.rank, (), c * cw)
            out = acc
        self._braid[key] = out
        return out

    def braid_T(self, i, sign, a: UqElement) -> UqElement:
        """The algebra automorphism T_i^{sign} applied to a."""
        from .weyl import simple

        smat = simple(self.cd, i).mat
        r = self.cd.rank
        out = self.zero()
        for (f, k, e), c in a.terms.items():
            piece = self.monomial((), (0,) * r, (), ONE)
            for t in f:
                piece = self.multiply(piece, self.braid_gen_image(i, sign, "F", t))
            if any(k):
                kimg = tuple(sum(smat[t][u] * k[u] for u in range(r)) for t in range(r))
                piece = self.multiply(piece, self.K(kimg))
            for t in e:
                piece = self.multiply(piece, self.braid_gen_image(i, sign, "E", t))
            out = out + piece.scale(c)
        return out

    def root_vector(self, word, k, sign_char) -> UqElement:
        """E_{beta_k} or F_{beta_k} for the k-th inversion root of a reduced word."""
        word = tuple(word)
        if not is_reduced(self.cd, word):
            raise WordError(f"word {tuple(i + 1 for i in word)} is not reduced")
        if not 1 <= k <= len(word):
            raise EngineError(f"root-vector position {k} out of range")
        key = (word, k, sign_char)
        out = self._rootvec.get(key)
        if out is not None:
            return out
        i_k = word[k - 1]
        elt = self.E(i_k) if sign_char == "E" else self.F(i_k)
        for t in range(k - 2, -1, -1):
            elt = self.braid_T(word[t], 1, elt)
        self._rootvec[key] = elt
        return elt


def _unit(r, i):
    return tuple(1 if t == i else 0 for t in range(r))


def _unit_scaled(r, i, s):
    return tuple(s if t == i else 0 for t in range(r))


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


def _triple_dump(t):
    return [t[0], list(t[1]), list(t[2])]


def _triple_load(d):
    return (d[0], tuple(d[1]), tuple(d[2]))


_ENGINES = {}


def get_engine(cd: CartanData, cache_dir=None) -> UqEngine:
    eng = _ENGINES.get(cd.key)
    if eng is None:
        eng = UqEngine(cd, cache_dir=cache_dir)
        _ENGINES[cd.key] = eng
    elif cache_dir and not eng.cache_dir:
        eng.cache_dir = cache_dir
    return eng


_ = qint  # re-exported convenience for callers doing Cartan-part arithmetic
