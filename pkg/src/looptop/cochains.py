"""Cochains on the reduced bar construction, in two flavours.

A Cochain assigns algebra elements to words (entries keyed by
(word, value index)); a DualCochain assigns functionals, keyed by
(word, test index) meaning the value of phi(word) on that basis element.
A to-A entry (w, a) sits in degree bar_degree(w) - |a|; a dual entry
(w, b) in degree bar_degree(w) + |b|.  Every cochain is homogeneous.

The coboundary lowers degree by one in both flavours and never lowers
word length, so truncating by a weight cutoff gives an honest subquotient
complex.  Coboundaries are computed entrywise: for a basis cochain all
output entries are enumerated directly from the model's transposed
structure maps (co_d, co_split, co_left_mul), which keeps the large
acceptance sweeps fast.
"""

import itertools

from .linalg import compose_columns, homology
from .bar import (HomologyPresentation, bar_degree, prefix_degrees,
                  words_by_degree, _min_letter_degree, word_str)


class GradingError(ValueError):
    """Entries of mixed total degree in one cochain."""


def _entry_degree_to_A(A, word, a):
    return bar_degree(A, word) - A.degrees[a]


def _entry_degree_dual(A, word, b):
    return bar_degree(A, word) + A.degrees[b]


class _Cochain:
    variant = None

    def __init__(self, A, entries, degree=None):
        clean = {}
        for (word, val), c in entries.items():
            if not c:
                continue
            n = self._entry_degree(A, word, val)
            if degree is None:
                degree = n
            elif n != degree:
                raise GradingError(
                    f"entry {word_str(A, word)}:{A.names[val]} has degree "
                    f"{n}, cochain has degree {degree}")
            clean[(word, val)] = c
        self.entries = clean
        self.degree = 0 if degree is None else degree

    def _entry_degree(self, A, word, val):
        raise NotImplementedError

    @property
    def is_zero(self):
        return not self.entries

    @property
    def weight_support(self):
        return max((len(w) for w, _ in self.entries), default=0)

    def scale(self, c):
        out = self.__class__.__new__(self.__class__)
        out.entries = {k: c * v for k, v in self.entries.items()} if c else {}
        out.degree = self.degree
        return out

    def add(self, other):
        if self.__class__ is not other.__class__:
            raise GradingError("cannot add cochains of different flavours")
        if self.entries and other.entries and self.degree != other.degree:
            raise GradingError(
                f"cannot add degrees {self.degree} and {other.degree}")
        entries = dict(self.entries)
        for k, v in other.entries.items():
            y = entries.get(k, 0) + v
            if y:
                entries[k] = y
            elif k in entries:
                del entries[k]
        out = self.__class__.__new__(self.__class__)
        out.entries = entries
        out.degree = self.degree if self.entries else other.degree
        return out

    def sub(self, other):
        return self.add(other.scale(-1))

    def restrict_weight(self, cutoff):
        out = self.__class__.__new__(self.__class__)
        out.entries = {k: v for k, v in self.entries.items()
                       if len(k[0]) <= cutoff}
        out.degree = self.degree
        return out

    def by_word(self):
        """Group entries as word -> {value index: coeff}."""
        out = {}
        for (w, val), c in self.entries.items():
            out.setdefault(w, {})[val] = c
        return out

    def __eq__(self, other):
        if self.__class__ is not other.__class__:
            return NotImplemented
        if self.entries != other.entries:
            return False
        return (not self.entries) or self.degree == other.degree

    def __hash__(self):
        return hash((self.__class__.__name__, self.degree,
                     frozenset(self.entries.items())))

    def __repr__(self):
        return (f"{self.__class__.__name__}(degree={self.degree}, "
                f"{len(self.entries)} entries)")


class Cochain(_Cochain):
    """Word -> algebra element assignments (the to-A flavour)."""

    variant = "to_A"

    def _entry_degree(self, A, word, val):
        return _entry_degree_to_A(A, word, val)

    def value(self, word):
        """The algebra chain assigned to one word."""
        out = {}
        for (w, a), c in self.entries.items():
            if w == word:
                out[a] = c
        return out


class DualCochain(_Cochain):
    """Word -> functional assignments (the dual flavour)."""

    variant = "to_dual"

    def _entry_degree(self, A, word, val):
        return _entry_degree_dual(A, word, val)

    def pair(self, word, chain):
        """Evaluate phi(word) on an algebra chain."""
        return sum((self.entries.get((word, b), 0) * c
                    for b, c in chain.items()), 0)

    def functional(self, word):
        out = {}
        for (w, b), c in self.entries.items():
            if w == word:
                out[b] = c
        return out


def unit_cochain(A):
    """The cup-product identity: the empty word maps to the unit."""
    return Cochain(A, {((), A.unit): 1})


def _acc(out, key, c):
    if not c:
        return
    y = out.get(key, 0) + c
    if y:
        out[key] = y
    elif key in out:
        del out[key]


def _co_preimages(A, v, cutoff):
    """Words w with v in the support of bar_d(w), with coefficients.

    Yields (w, mu) pairs where mu is the coefficient of v in bar_d(w);
    contributions are accumulated (a given w may reach v several ways).
    Substitution preimages replace one letter by a differential preimage;
    merge preimages split one letter by the transposed product.
    """
    eps = prefix_degrees(A, v)
    out = {}
    for idx, vi in enumerate(v):
        sign = -1 if eps[idx] % 2 == 0 else 1
        for ell, cd in A.co_d.get(vi, ()):
            if A.degrees[ell] < 1:
                continue
            w = v[:idx] + (ell,) + v[idx + 1:]
            _acc(out, w, sign * cd)
        if cutoff is not None and len(v) + 1 > cutoff:
            continue
        for l1, l2, cm in A.co_split.get(vi, ()):
            e = eps[idx] + A.degrees[l1] - 1
            sign2 = -1 if e % 2 == 0 else 1
            w = v[:idx] + (l1, l2) + v[idx + 1:]
            _acc(out, w, sign2 * cm)
    return out


def _delta_entry_dual(A, v, c_val, cutoff):
    """Coboundary of the dual basis cochain supported at (v, c_val)."""
    out = {}
    eps_v = bar_degree(A, v)
    # value-differential: phi(w)(db) picks up entries (v, b) with db -> c
    for b, cd in A.co_d.get(c_val, ()):
        _acc(out, (v, b), cd)
    # transposed bar boundary, sign (-1)^{|b|} with b = c_val
    s2 = -1 if A.degrees[c_val] % 2 else 1
    for w, mu in _co_preimages(A, v, cutoff).items():
        _acc(out, (w, c_val), s2 * mu)
    # prepend / append a letter, absorbing it into the test slot
    fits = cutoff is None or len(v) + 1 <= cutoff
    if fits:
        e_v = eps_v
        for ell in A.letters:
            for b, cm in A.co_left_mul.get((ell, c_val), ()):
                sb = A.degrees[b]
                # prepend: -(-1)^{|b|} phi(w[1:])(b w_1)
                s3 = 1 if sb % 2 else -1
                _acc(out, ((ell,) + v, b), s3 * cm)
                # append: +(-1)^{|b| + eps_{r-1}(|w_r|+1)} phi(w[:-1])(b w_r)
                e4 = sb + e_v * (A.degrees[ell] + 1)
                s4 = -1 if e4 % 2 else 1
                _acc(out, (v + (ell,), b), s4 * cm)
    return out


def _delta_entry_to_A(A, v, a, cutoff):
    """Coboundary of the to-A basis cochain supported at (v, a)."""
    out = {}
    sa = A.degrees[a]
    s1 = -1 if sa % 2 else 1
    # differential of the value
    for k, cd in A.d(a).items():
        _acc(out, (v, k), s1 * cd)
    # transposed bar boundary (total sign works out to (-1)^{|a|} mu)
    for w, mu in _co_preimages(A, v, cutoff).items():
        _acc(out, (w, a), s1 * mu)
    fits = cutoff is None or len(v) + 1 <= cutoff
    if fits:
        e_v = bar_degree(A, v)
        n = e_v - sa
        for ell in A.letters:
            dl = A.degrees[ell]
            # prepend: the first letter multiplies the value from the left
            s3 = -1 if (sa + dl + 1) % 2 else 1
            for k, cm in A.mul(ell, a).items():
                _acc(out, ((ell,) + v, k), s3 * cm)
            # append: the last letter multiplies from the right
            e4 = (dl + 1) * (n + 1)
            s4 = 1 if e4 % 2 else -1
            for k, cm in A.mul(a, ell).items():
                _acc(out, (v + (ell,), k), s4 * cm)
    return out


def delta_to_A(A, phi, weight_cutoff=None):
    """Coboundary of a to-A cochain; degree drops by one."""
    out = {}
    for (v, a), c in phi.entries.items():
        for key, y in _delta_entry_to_A(A, v, a, weight_cutoff).items():
            _acc(out, key, c * y)
    return Cochain(A, out, degree=phi.degree - 1)


def delta_to_dual(A, phi, weight_cutoff=None):
    """Coboundary of a dual cochain; degree drops by one."""
    out = {}
    for (v, b), c in phi.entries.items():
        for key, y in _delta_entry_dual(A, v, b, weight_cutoff).items():
            _acc(out, key, c * y)
    return DualCochain(A, out, degree=phi.degree - 1)


def cup(A, phi1, phi2, weight_cutoff=None):
    """Cup product of two to-A cochains by word concatenation.

    (phi1 ∪ phi2)(uv) = ±phi1(u) ∧ phi2(v) with the Koszul sign
    (-1)^{|phi1| (|phi2| + bar degree of v)}.
    """
    if phi1.variant != "to_A" or phi2.variant != "to_A":
        raise GradingError("cup is defined on to-A cochains")
    n1, n2 = phi1.degree, phi2.degree
    out = {}
    for (v1, a1), c1 in phi1.entries.items():
        for (v2, a2), c2 in phi2.entries.items():
            if weight_cutoff is not None and len(v1) + len(v2) > weight_cutoff:
                continue
            prod = A.mul(a1, a2)
            if not prod:
                continue
            e = n1 * (n2 + bar_degree(A, v2))
            sign = -1 if e % 2 else 1
            w = v1 + v2
            for k, cm in prod.items():
                _acc(out, (w, k), sign * c1 * c2 * cm)
    return Cochain(A, out, degree=n1 + n2)


def _max_needed_weight(A, variant, degree):
    """Largest weight a degree-n entry can have, or -1 if none exist."""
    m = _min_letter_degree(A)
    best = -1
    for q in sorted(set(A.degrees)):
        beta = degree + q if variant == "to_A" else degree - q
        if beta >= 0:
            best = max(best, beta // m)
    return best


def slice_complete(A, variant, degree, weight_cutoff):
    """Whether the cutoff provably captures every entry of this degree."""
    if not A.simply_connected:
        return False
    return weight_cutoff >= _max_needed_weight(A, variant, degree)


class ComplexSlice:
    """One degree of a weight-truncated cochain complex.

    delta_columns maps each basis key to its coboundary, a vector over
    degree - 1 keys within the same cutoff.
    """

    def __init__(self, variant, degree, weight_cutoff, basis,
                 delta_columns, complete):
        self.variant = variant
        self.degree = degree
        self.weight_cutoff = weight_cutoff
        self.basis = basis
        self.delta_columns = delta_columns
        self.complete = complete

    @property
    def dim(self):
        return len(self.basis)

    def __repr__(self):
        flag = "complete" if self.complete else "weight-truncated"
        return (f"ComplexSlice({self.variant}, degree={self.degree}, "
                f"weight<={self.weight_cutoff}, dim={self.dim}, {flag})")


def assemble_complex(A, variant, degree, weight_cutoff):
    """Build the degree slice: basis keys and coboundary columns."""
    if variant not in ("to_A", "to_dual"):
        raise ValueError(f"unknown variant {variant!r}")
    buckets = words_by_degree(A, weight_cutoff)
    basis = []
    for eps, words in buckets.items():
        q = eps - degree if variant == "to_A" else degree - eps
        values = A.basis_of_degree(q)
        if not values:
            continue
        for w in words:
            for val in values:
                basis.append((w, val))
    basis.sort(key=lambda key: (len(key[0]), key[0], key[1]))
    entry = _delta_entry_to_A if variant == "to_A" else _delta_entry_dual
    delta_columns = {key: entry(A, key[0], key[1], weight_cutoff)
                     for key in basis}
    return ComplexSlice(variant, degree, weight_cutoff, tuple(basis),
                        delta_columns,
                        slice_complete(A, variant, degree, weight_cutoff))


def hochschild_homology(A, variant, degree_range, weight_cutoff):
    """Homology per degree of the truncated complex (coboundary lowers
    degree, so boundaries in degree n arrive from degree n + 1)."""
    lo, hi = degree_range
    slices = {n: assemble_complex(A, variant, n, weight_cutoff)
              for n in range(lo, hi + 2)}
    out = {}
    for n in range(lo, hi + 1):
        sub = homology(slices[n + 1].delta_columns, slices[n].delta_columns)
        exact = slices[n].complete and slices[n + 1].complete
        out[n] = HomologyPresentation(n, sub, exact)
    return out


def delta_squared_zero(A, variant, degree_range, weight_cutoff):
    """Compose the coboundary with itself over a degree window.

    True when the composite vanishes on every truncated slice in the
    window (columns of degree n + 1 fed through columns of degree n).
    """
    lo, hi = degree_range
    slices = {n: assemble_complex(A, variant, n, weight_cutoff)
              for n in range(lo, hi + 2)}
    for n in range(lo, hi + 1):
        square = compose_columns(slices[n].delta_columns,
                                 slices[n + 1].delta_columns)
        if any(square.values()):
            return False
    return True


class LoopHomology:
    """Graded ring presentation of to-A cochain homology over a window."""

    def __init__(self, A, degree_range, weight_cutoff, presentations):
        self.A = A
        self.degree_range = degree_range
        self.weight_cutoff = weight_cutoff
        self.presentations = presentations
        self.betti = {n: p.betti for n, p in presentations.items()}
        self.exact = {n: p.exact for n, p in presentations.items()}
        self.representatives = {}
        self.class_names = {}
        for n, p in sorted(presentations.items()):
            reps = [Cochain(A, dict(v), degree=n) for v in p.representatives]
            self.representatives[n] = reps
            self.class_names[n] = [f"h{n}.{k}" for k in range(len(reps))]
        self.ring = {}
        self._fill_ring()

    def _fill_ring(self):
        lo, hi = self.degree_range
        for n1, reps1 in sorted(self.representatives.items()):
            for n2, reps2 in sorted(self.representatives.items()):
                if not lo <= n1 + n2 <= hi:
                    continue
                target = self.presentations[n1 + n2]
                for i1, r1 in enumerate(reps1):
                    for i2, r2 in enumerate(reps2):
                        prod = cup(self.A, r1, r2, self.weight_cutoff)
                        expr = target.express(prod.entries)
                        key = ((n1, i1), (n2, i2))
                        self.ring[key] = None if expr is None else {
                            (n1 + n2, k): c for k, c in expr.items()}

    def express(self, phi):
        """Locate a cocycle's class in the window, or None."""
        pres = self.presentations.get(phi.degree)
        if pres is None:
            return None
        expr = pres.express(phi.entries)
        if expr is None:
            return None
        return {(phi.degree, k): c for k, c in expr.items()}

    def class_cochain(self, degree, k):
        return self.representatives[degree][k]

    def product(self, key1, key2):
        return self.ring.get((key1, key2))

    def tsv(self):
        lines = ["degree\tbetti\tstatus\tclasses\tproducts"]
        lo, hi = self.degree_range
        for n in range(lo, hi + 1):
            names = self.class_names.get(n, [])
            prods = []
            for (k1, k2), expr in sorted(self.ring.items()):
                if k1[0] != n:
                    continue
                left = f"h{k1[0]}.{k1[1]}"
                right = f"h{k2[0]}.{k2[1]}"
                prods.append(f"{left}*{right}={_expr_str(expr)}")
            lines.append("\t".join([
                str(n), str(self.betti.get(n, 0)),
                "exact" if self.exact.get(n) else "weight-truncated",
                ",".join(names) if names else "-",
                ";".join(prods) if prods else "-"]))
        return "\n".join(lines) + "\n"


def _expr_str(expr):
    if expr is None:
        return "?"
    if not expr:
        return "0"
    parts = []
    for (n, k), c in sorted(expr.items()):
        parts.append(f"{c}*h{n}.{k}" if c != 1 else f"h{n}.{k}")
    return "+".join(parts)


def loop_homology(A, degree_range, weight_cutoff):
    """Loop-space style homology ring of a model over a degree window."""
    pres = hochschild_homology(A, "to_A", degree_range, weight_cutoff)
    return LoopHomology(A, degree_range, weight_cutoff, pres)


def _letter_words(A, max_len, min_len=1):
    for r in range(min_len, max_len + 1):
        yield from itertools.product(A.letters, repeat=r)


def _eval_to_A(A, phi, slots):
    """phi on a word whose slots are chains: multilinear expansion.

    slots is a tuple of dicts index -> coeff (single letters are unit
    chains); returns the value chain.
    """
    out = {}
    for combo in itertools.product(*[sorted(ch.items()) for ch in slots]):
        word = tuple(i for i, _ in combo)
        if any(A.degrees[i] < 1 for i in word):
            continue
        coeff = 1
        for _, c in combo:
            coeff *= c
        for a, cv in phi.value(word).items():
            _acc(out, a, coeff * cv)
    return out


def _eval_dual(A, phi, slots, test):
    """phi on a chain-slotted word, paired against a test chain."""
    total = 0
    for combo in itertools.product(*[sorted(ch.items()) for ch in slots]):
        word = tuple(i for i, _ in combo)
        if any(A.degrees[i] < 1 for i in word):
            continue
        coeff = 1
        for _, c in combo:
            coeff *= c
        total += coeff * phi.pair(word, test)
    return total


def normalization_violations(A, phi, max_len=None):
    """Witnesses against the unit-absorption equations.

    Three families relate inserting a degree-0 element f to absorbing it
    into a neighbouring letter (or the test slot, for duals) and to the
    word extended by df.  Empty base words are out of scope; equations are
    checked for base words up to the cochain's weight support.
    """
    if max_len is None:
        max_len = phi.weight_support
    zeros = [i for i, q in enumerate(A.degrees) if q == 0]
    dual = phi.variant == "to_dual"
    tests = ([{b: 1} for b in A.letters] if dual else [None])
    bad = []

    def unit_chains(word):
        return [{i: 1} for i in word]

    for word in _letter_words(A, max_len):
        r = len(word)
        for f in zeros:
            fch = {f: 1}
            df = A.d(f)
            for test in tests:
                # family 1: f strictly inside the word
                for i in range(1, r):
                    slots = unit_chains(word)
                    left = list(slots)
                    left[i - 1] = A.wedge(fch, {word[i - 1]: 1})
                    mid = list(slots)
                    mid[i] = A.wedge(fch, {word[i]: 1})
                    ins = slots[:i] + [df] + slots[i:]
                    if dual:
                        val = (-_eval_dual(A, phi, left, test)
                               + _eval_dual(A, phi, mid, test)
                               + _eval_dual(A, phi, ins, test))
                        if val:
                            bad.append(("interior", word, i, f, val))
                    else:
                        v = _neg(_eval_to_A(A, phi, left))
                        v = _add(v, _eval_to_A(A, phi, mid))
                        v = _add(v, _eval_to_A(A, phi, ins))
                        if v:
                            bad.append(("interior", word, i, f, v))
                # family 2: f at the front
                first = unit_chains(word)
                first[0] = A.wedge(fch, {word[0]: 1})
                front = [df] + unit_chains(word)
                if dual:
                    val = (-_eval_dual(A, phi, unit_chains(word),
                                       A.wedge(fch, test))
                           + _eval_dual(A, phi, first, test)
                           + _eval_dual(A, phi, front, test))
                    if val:
                        bad.append(("front", word, 0, f, val))
                else:
                    v = _neg(A.wedge(fch, _eval_to_A(A, phi,
                                                     unit_chains(word))))
                    v = _add(v, _eval_to_A(A, phi, first))
                    v = _add(v, _eval_to_A(A, phi, front))
                    if v:
                        bad.append(("front", word, 0, f, v))
                # family 3: f at the back
                last = unit_chains(word)
                last[-1] = A.wedge(fch, {word[-1]: 1})
                back = unit_chains(word) + [df]
                if dual:
                    val = (-_eval_dual(A, phi, last, test)
                           + _eval_dual(A, phi, unit_chains(word),
                                        A.wedge(fch, test))
                           + _eval_dual(A, phi, back, test))
                    if val:
                        bad.append(("back", word, r, f, val))
                else:
                    v = _neg(_eval_to_A(A, phi, last))
                    v = _add(v, A.wedge(_eval_to_A(A, phi,
                                                   unit_chains(word)), fch))
                    v = _add(v, _eval_to_A(A, phi, back))
                    if v:
                        bad.append(("back", word, r, f, v))
    return bad


def _neg(u):
    return {k: -v for k, v in u.items()}


def _add(u, v):
    out = dict(u)
    for k, c in v.items():
        _acc(out, k, c)
    return out


def normalization_check(A, phi, max_len=None):
    """True when every unit-absorption equation holds for this cochain."""
    return not normalization_violations(A, phi, max_len)
