"""Finite-dimensional graded algebra models.

A model is a graded vector space over ℚ with a fixed ordered basis, a
degree-+1 differential, structure constants for an associative product, a
unit, a top degree, and optionally an orientation functional on the top
slice.  Construction is verbatim (no axiom checking); validate_dga reports
every violated axiom with a witness.

Chains over a model are dicts mapping basis index -> nonzero coefficient,
the same sparse convention the linear algebra layer uses.
"""

from fractions import Fraction
import itertools

from .linalg import CompositionError, homology, column_rank, vec_combine


class ModelError(ValueError):
    """Base class for everything wrong with a model document."""


class ParseError(ModelError):
    pass


class UnknownNameError(ModelError):
    pass


class DegreeMismatchError(ModelError):
    pass


class OrientationError(ModelError):
    """Operation needs an orientation the model does not carry."""


def _coeff(x):
    """Parse a rational coefficient from a document value."""
    if isinstance(x, bool):
        raise ParseError(f"coefficient {x!r} is not a rational")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            c = Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {x!r}") from exc
        return c.numerator if c.denominator == 1 else c
    raise ParseError(f"coefficient {x!r} is not a rational")


class DGA:
    """A finite graded algebra with differential; immutable by contract.

    product maps (i, j) -> {k: coeff}; differential maps i -> {k: coeff}.
    Absent entries are zero.  The basis order is the serialization order
    and every downstream enumeration inherits it.
    """

    def __init__(self, names, degrees, unit, product, differential,
                 top_degree, orientation=None, commutative=True, label=""):
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.unit = unit
        self.product = {k: dict(v) for k, v in product.items() if v}
        self.differential = {k: dict(v) for k, v in differential.items() if v}
        self.top_degree = top_degree
        self.orientation = dict(orientation) if orientation else None
        self.commutative = commutative
        self.label = label or "dga"
        self._index = {n: i for i, n in enumerate(self.names)}
        self._cache = {}

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNameError(f"no basis element named {name!r}") from None

    def degree(self, i):
        return self.degrees[i]

    def mul(self, i, j):
        return self.product.get((i, j), {})

    def d(self, i):
        return self.differential.get(i, {})

    def wedge(self, u, v):
        """Product of two chains."""
        out = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mul(i, j).items():
                    y = out.get(k, 0) + a * b * c
                    if y:
                        out[k] = y
                    elif k in out:
                        del out[k]
        return out

    def d_chain(self, u):
        out = {}
        for i, a in u.items():
            for k, c in self.d(i).items():
                y = out.get(k, 0) + a * c
                if y:
                    out[k] = y
                elif k in out:
                    del out[k]
        return out

    def orient(self, u):
        """Orientation functional applied to a chain."""
        if self.orientation is None:
            raise OrientationError(f"model {self.label} has no orientation")
        return sum((self.orientation.get(i, 0) * c for i, c in u.items()), 0)

    @property
    def letters(self):
        """Positive-degree basis indices, in basis order (bar alphabet)."""
        if "letters" not in self._cache:
            self._cache["letters"] = tuple(
                i for i, q in enumerate(self.degrees) if q >= 1)
        return self._cache["letters"]

    @property
    def simply_connected(self):
        return all(q != 1 for q in self.degrees)

    @property
    def connected(self):
        zeros = [i for i, q in enumerate(self.degrees) if q == 0]
        return zeros == [self.unit]

    def basis_of_degree(self, q):
        if "by_degree" not in self._cache:
            by = {}
            for i, d in enumerate(self.degrees):
                by.setdefault(d, []).append(i)
            self._cache["by_degree"] = {d: tuple(v) for d, v in by.items()}
        return self._cache["by_degree"].get(q, ())

    @property
    def co_d(self):
        """Transposed differential: target index -> ((source, coeff), ...)."""
        if "co_d" not in self._cache:
            co = {}
            for i, img in self.differential.items():
                for k, c in img.items():
                    co.setdefault(k, []).append((i, c))
            self._cache["co_d"] = {k: tuple(v) for k, v in co.items()}
        return self._cache["co_d"]

    @property
    def co_split(self):
        """Product transposed over letter pairs: k -> ((i, j, coeff), ...)."""
        if "co_split" not in self._cache:
            letters = set(self.letters)
            co = {}
            for (i, j), img in self.product.items():
                if i in letters and j in letters:
                    for k, c in img.items():
                        co.setdefault(k, []).append((i, j, c))
            self._cache["co_split"] = {k: tuple(v) for k, v in co.items()}
        return self._cache["co_split"]

    @property
    def co_left_mul(self):
        """(j, k) -> ((i, coeff), ...) with (i·j) having coeff at k."""
        if "co_left_mul" not in self._cache:
            co = {}
            for (i, j), img in self.product.items():
                for k, c in img.items():
                    co.setdefault((j, k), []).append((i, c))
            self._cache["co_left_mul"] = {k: tuple(v) for k, v in co.items()}
        return self._cache["co_left_mul"]

    def __repr__(self):
        return f"DGA({self.label}, dim={self.dim}, top={self.top_degree})"


def build_dga(doc):
    """Build a model from a parsed document, verbatim (no axiom checks).

    The document is a dict with keys name, basis, unit, differential,
    products, top_degree, orientation (optional), commutative.  Grading of
    product and differential entries is enforced here; everything else is
    validate_dga's business.
    """
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object")
    try:
        basis = doc["basis"]
        unit_name = doc["unit"]
        top_degree = doc["top_degree"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(basis, list) or not basis:
        raise ParseError("basis must be a non-empty array")
    names, degrees = [], []
    for entry in basis:
        try:
            name, deg = entry["name"], entry["degree"]
        except (TypeError, KeyError):
            raise ParseError(f"bad basis entry {entry!r}") from None
        if not isinstance(name, str) or not isinstance(deg, int) or deg < 0:
            raise ParseError(f"bad basis entry {entry!r}")
        if name in names:
            raise ParseError(f"duplicate basis name {name!r}")
        names.append(name)
        degrees.append(deg)
    index = {n: i for i, n in enumerate(names)}

    def resolve(name):
        if name not in index:
            raise UnknownNameError(f"no basis element named {name!r}")
        return index[name]

    unit = resolve(unit_name)

    differential = {}
    for entry in doc.get("differential", []):
        src = resolve(entry["from"])
        img = {}
        for name, c in entry["to"].items():
            k = resolve(name)
            if degrees[k] != degrees[src] + 1:
                raise DegreeMismatchError(
                    f"d({names[src]}) hits {name} of degree {degrees[k]}, "
                    f"expected {degrees[src] + 1}")
            c = _coeff(c)
            if c:
                img[k] = c
        if img:
            differential[src] = img

    product = {}
    for entry in doc.get("products", []):
        i, j = resolve(entry["left"]), resolve(entry["right"])
        img = {}
        for name, c in entry["result"].items():
            k = resolve(name)
            if degrees[k] != degrees[i] + degrees[j]:
                raise DegreeMismatchError(
                    f"{names[i]}·{names[j]} hits {name} of degree "
                    f"{degrees[k]}, expected {degrees[i] + degrees[j]}")
            c = _coeff(c)
            if c:
                img[k] = c
        if img:
            product[(i, j)] = img

    orientation = None
    if doc.get("orientation"):
        orientation = {}
        for name, c in doc["orientation"].items():
            c = _coeff(c)
            if c:
                orientation[resolve(name)] = c

    if not isinstance(top_degree, int) or top_degree < 0:
        raise ParseError(f"bad top_degree {top_degree!r}")

    return DGA(names, degrees, unit, product, differential, top_degree,
               orientation=orientation,
               commutative=bool(doc.get("commutative", True)),
               label=str(doc.get("name", "dga")))


def dga_to_doc(A):
    """Serialize a model back to the document shape build_dga reads."""
    doc = {
        "name": A.label,
        "basis": [{"name": n, "degree": q}
                  for n, q in zip(A.names, A.degrees)],
        "unit": A.names[A.unit],
        "differential": [
            {"from": A.names[i],
             "to": {A.names[k]: str(Fraction(c)) for k, c in img.items()}}
            for i, img in sorted(A.differential.items())],
        "products": [
            {"left": A.names[i], "right": A.names[j],
             "result": {A.names[k]: str(Fraction(c)) for k, c in img.items()}}
            for (i, j), img in sorted(A.product.items())],
        "top_degree": A.top_degree,
        "commutative": A.commutative,
    }
    if A.orientation is not None:
        doc["orientation"] = {A.names[i]: str(Fraction(c))
                              for i, c in sorted(A.orientation.items())}
    return doc


class ValidationReport:
    """Outcome of validate_dga: passed iff violations is empty."""

    def __init__(self, violations):
        self.violations = list(violations)

    @property
    def passed(self):
        return not self.violations

    @property
    def rules(self):
        return sorted({rule for rule, _, _ in self.violations})

    def __repr__(self):
        state = "passed" if self.passed else f"{len(self.violations)} violations"
        return f"ValidationReport({state})"


def validate_dga(A):
    """Check every model axiom; collect (rule, witness, detail) triples."""
    bad = []
    names = A.names

    if len(set(names)) != len(names):
        dupes = sorted({n for n in names if names.count(n) > 1})
        bad.append(("basis/unique-names", tuple(dupes), "duplicate names"))

    zeros = [i for i, q in enumerate(A.degrees) if q == 0]
    if zeros != [A.unit]:
        bad.append(("basis/connected", tuple(names[i] for i in zeros),
                    "degree-0 slice must be spanned by the unit alone"))
    if A.degrees[A.unit] != 0:
        bad.append(("unit/degree", (names[A.unit],),
                    f"unit has degree {A.degrees[A.unit]}"))

    for i, img in sorted(A.differential.items()):
        for k in img:
            if A.degrees[k] != A.degrees[i] + 1:
                bad.append(("differential/grading", (names[i], names[k]),
                            f"{A.degrees[i]} -> {A.degrees[k]}"))
    for i in range(A.dim):
        dd = A.d_chain(A.d(i))
        if dd:
            bad.append(("differential/squares-to-zero", (names[i],),
                        _chain_str(A, dd)))

    for (i, j), img in sorted(A.product.items()):
        want = A.degrees[i] + A.degrees[j]
        for k in img:
            if A.degrees[k] != want:
                bad.append(("product/grading", (names[i], names[j], names[k]),
                            f"degree {A.degrees[k]}, expected {want}"))

    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.d_chain(A.mul(i, j))
            sign = -1 if A.degrees[i] % 2 else 1
            rhs = {}
            for k, c in A.d(i).items():
                rhs = vec_combine(rhs, 1, _scaled_mul(A, k, j, c), 1)
            for k, c in A.d(j).items():
                rhs = vec_combine(rhs, 1, _scaled_mul(A, i, k, sign * c), 1)
            diff = vec_combine(lhs, 1, rhs, -1)
            if diff:
                bad.append(("leibniz", (names[i], names[j]),
                            _chain_str(A, diff)))

    for i in range(A.dim):
        for j in range(A.dim):
            for k in range(A.dim):
                left = A.wedge(A.mul(i, j), {k: 1})
                right = A.wedge({i: 1}, A.mul(j, k))
                diff = vec_combine(left, 1, right, -1)
                if diff:
                    bad.append(("product/associativity",
                                (names[i], names[j], names[k]),
                                _chain_str(A, diff)))

    for i in range(A.dim):
        if A.mul(A.unit, i) != {i: 1} or A.mul(i, A.unit) != {i: 1}:
            bad.append(("unit/identity", (names[i],),
                        "unit does not act as identity"))

    if A.commutative:
        for i in range(A.dim):
            for j in range(i, A.dim):
                sign = -1 if (A.degrees[i] * A.degrees[j]) % 2 else 1
                diff = vec_combine(A.mul(i, j), 1, A.mul(j, i), -sign)
                if diff:
                    bad.append(("graded-commutativity", (names[i], names[j]),
                                _chain_str(A, diff)))

    if A.orientation is not None:
        for i, c in sorted(A.orientation.items()):
            if c and A.degrees[i] != A.top_degree:
                bad.append(("orientation/support", (names[i],),
                            f"degree {A.degrees[i]} != top {A.top_degree}"))
        for i in range(A.dim):
            if A.degrees[i] == A.top_degree - 1:
                val = A.orient(A.d(i))
                if val:
                    bad.append(("orientation/closed", (names[i],),
                                f"orientation(d{names[i]}) = {val}"))
        try:
            hom = dga_homology(A)
        except CompositionError:
            hom = {}  # d² != 0 was already reported above
        d = A.top_degree
        for q in sorted({q for q in hom} | {d - q for q in hom}):
            left = hom.get(q)
            right = hom.get(d - q)
            nl = left.betti if left else 0
            nr = right.betti if right else 0
            if nl == nr == 0:
                continue
            cols = {}
            for jj, rv in enumerate(right.representatives if right else []):
                col = {}
                for ii, lv in enumerate(left.representatives if left else []):
                    val = A.orient(A.wedge(lv, rv))
                    if val:
                        col[ii] = val
                cols[jj] = col
            if nl != nr or column_rank(cols) != nl:
                bad.append(("orientation/nondegenerate", (q,),
                            f"homology pairing degrees ({q},{d - q}) singular"))

    return ValidationReport(bad)


def _scaled_mul(A, i, j, c):
    return {k: c * v for k, v in A.mul(i, j).items()}


def _chain_str(A, u):
    parts = [f"{c}·{A.names[i]}" for i, c in sorted(u.items())]
    return " + ".join(parts) if parts else "0"


def dga_homology(A):
    """Homology of (A, d) per degree: degree -> SubquotientBasis."""
    top = max(A.degrees) if A.degrees else 0
    out = {}
    for q in range(top + 1):
        d_in = {i: A.d(i) for i in A.basis_of_degree(q - 1)}
        d_out = {i: A.d(i) for i in A.basis_of_degree(q)}
        out[q] = homology(d_in, d_out)
    return out


class PairingReport:
    """Orientation pairing matrices per degree plus non-degeneracy flags."""

    def __init__(self, matrices, homology_nondegenerate):
        self.matrices = matrices
        self.homology_nondegenerate = homology_nondegenerate

    @property
    def nondegenerate(self):
        return all(self.homology_nondegenerate.values())


def orientation_pairing(A):
    """Basis-level pairing matrices M_q[i][j] = orientation(b_i ∧ b_j)."""
    if A.orientation is None:
        raise OrientationError(f"model {A.label} has no orientation")
    d = A.top_degree
    matrices = {}
    for q in range(d + 1):
        rows = A.basis_of_degree(q)
        cols = A.basis_of_degree(d - q)
        matrices[q] = [[A.orient(A.mul(i, j)) for j in cols] for i in rows]

    hom = dga_homology(A)
    flags = {}
    for q in range(d + 1):
        left = hom.get(q)
        right = hom.get(d - q)
        nl = left.betti if left else 0
        nr = right.betti if right else 0
        if nl == nr == 0:
            flags[q] = True
            continue
        cols = {}
        for jj, rv in enumerate(right.representatives if right else []):
            col = {}
            for ii, lv in enumerate(left.representatives if left else []):
                val = A.orient(A.wedge(lv, rv))
                if val:
                    col[ii] = val
            cols[jj] = col
        flags[q] = (nl == nr and column_rank(cols) == nl)
    return PairingReport(matrices, flags)


def builtin_model(model_id, *params):
    """Look up a builtin model: sphere, complex_projective, surface, torus,
    acyclic_extension.  Accepts either ("sphere", 3) or the colon form
    "sphere:3"; acyclic_extension takes a base id, e.g.
    "acyclic_extension:surface:1".
    """
    if isinstance(model_id, str) and ":" in model_id and not params:
        family, rest = model_id.split(":", 1)
        if family == "acyclic_extension":
            return acyclic_extension(builtin_model(rest))
        try:
            params = tuple(int(p) for p in rest.split(":"))
        except ValueError:
            raise ModelError(f"invalid parameters in {model_id!r}") from None
        return builtin_model(family, *params)

    family = model_id
    if family == "acyclic_extension":
        if len(params) != 1 or not isinstance(params[0], DGA):
            raise ModelError(
                "acyclic_extension takes a base model or a base id string")
        return acyclic_extension(params[0])
    if len(params) != 1 or not isinstance(params[0], int):
        raise ModelError(f"{family} takes exactly one integer parameter")
    n = params[0]
    if family == "sphere":
        if n < 2:
            raise ModelError("sphere(n) needs n >= 2")
        return _sphere(n)
    if family == "complex_projective":
        if n < 1:
            raise ModelError("complex_projective(n) needs n >= 1")
        return _complex_projective(n)
    if family == "surface":
        if n < 1:
            raise ModelError("surface(g) needs g >= 1")
        return _surface(n)
    if family == "torus":
        if not 1 <= n <= 9:
            raise ModelError("torus(k) supported for 1 <= k <= 9")
        return _torus(n)
    raise ModelError(f"unknown builtin model {family!r}")


def _sphere(n):
    product = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return DGA(["1", "x"], [0, n], 0, product, {}, n,
               orientation={1: 1}, commutative=True, label=f"sphere({n})")


def _complex_projective(n):
    names = ["1"] + [("x" if k == 1 else f"x{k}") for k in range(1, n + 1)]
    degrees = [2 * k for k in range(n + 1)]
    product = {}
    for i in range(n + 1):
        for j in range(n + 1):
            if i + j <= n:
                product[(i, j)] = {i + j: 1}
    return DGA(names, degrees, 0, product, {}, 2 * n,
               orientation={n: 1}, commutative=True,
               label=f"complex_projective({n})")


def _surface(g):
    names = ["1"] + [f"a{i}" for i in range(1, g + 1)] \
        + [f"b{i}" for i in range(1, g + 1)] + ["w"]
    degrees = [0] + [1] * (2 * g) + [2]
    w = 2 * g + 1
    product = {(0, 0): {0: 1}}
    for i in range(1, w + 1):
        product[(0, i)] = {i: 1}
        product[(i, 0)] = {i: 1}
    for i in range(1, g + 1):
        product[(i, g + i)] = {w: 1}
        product[(g + i, i)] = {w: -1}
    return DGA(names, degrees, 0, product, {}, 2,
               orientation={w: 1}, commutative=True, label=f"surface({g})")


def _torus(k):
    subsets = []
    for r in range(k + 1):
        subsets.extend(itertools.combinations(range(1, k + 1), r))
    names = ["1" if not s else "x" + "".join(str(i) for i in s)
             for s in subsets]
    degrees = [len(s) for s in subsets]
    pos = {s: i for i, s in enumerate(subsets)}
    product = {}
    for si, s in enumerate(subsets):
        for ti, t in enumerate(subsets):
            if set(s) & set(t):
                continue
            inversions = sum(1 for a in s for b in t if a > b)
            sign = -1 if inversions % 2 else 1
            product[(si, ti)] = {pos[tuple(sorted(s + t))]: sign}
    return DGA(names, degrees, 0, product, {}, k,
               orientation={len(subsets) - 1: 1}, commutative=True,
               label=f"torus({k})")


def acyclic_extension(base):
    """Tensor the model with a contractible factor span(1, e, de).

    The factor has |e| = top_degree + 1, so the extension keeps the same
    homology (dimension-wise per degree) while enlarging the algebra;
    orientation extends by zero on the new elements.
    """
    t = base.top_degree
    n = base.dim
    names = list(base.names)
    degrees = list(base.degrees)
    for suffix, shift in (("e", t + 1), ("f", t + 2)):
        for i, bn in enumerate(base.names):
            names.append(suffix if i == base.unit else f"{bn}.{suffix}")
            degrees.append(base.degrees[i] + shift)

    # block b -> index of b⊗1, b⊗e, b⊗f
    def idx(i, block):
        return i + block * n

    product = {}
    for (i, j), img in base.product.items():
        for (bi, bj, bk, koszul_on) in (
                (0, 0, 0, None), (0, 1, 1, None), (0, 2, 2, None),
                (1, 0, 1, "right"), (2, 0, 2, "right")):
            entry = {}
            for k, c in img.items():
                sign = 1
                if koszul_on == "right":
                    # (a⊗u)(b⊗1) picks up (-1)^{|u||b|}
                    u_deg = t + 1 if bi == 1 else t + 2
                    if (u_deg * base.degrees[j]) % 2:
                        sign = -1
                entry[idx(k, bk)] = sign * c
            if entry:
                product[(idx(i, bi), idx(j, bj))] = entry

    differential = {}
    for i in range(n):
        img = {}
        for k, c in base.d(i).items():
            img[idx(k, 0)] = c
        if img:
            differential[idx(i, 0)] = img
    for i in range(n):
        img = {idx(k, 1): c for k, c in base.d(i).items()}
        sign = -1 if base.degrees[i] % 2 else 1
        img[idx(i, 2)] = img.get(idx(i, 2), 0) + sign
        differential[idx(i, 1)] = {k: c for k, c in img.items() if c}
        imgf = {idx(k, 2): c for k, c in base.d(i).items()}
        if imgf:
            differential[idx(i, 2)] = imgf

    orientation = None
    if base.orientation is not None:
        orientation = {idx(i, 0): c for i, c in base.orientation.items()}
    return DGA(names, degrees, base.unit, product, differential, t,
               orientation=orientation, commutative=base.commutative,
               label=f"acyclic_extension({base.label})")
