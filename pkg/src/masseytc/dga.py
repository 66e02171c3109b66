"""Finite differential graded algebras over Q with explicit tables.

A model is given by free graded-commutative generators with polynomial
differentials, truncated at a degree N: every product or differential that
would land strictly above N is literally zero.  That keeps the compiled
object a genuine finite DGA (d^2 = 0 and Leibniz hold degreewise because the
discarded terms all sit above N), at the price of junk cohomology classes
near the truncation edge; callers track the honest dimension of the space
separately via ``space_dim``.

Monomial conventions: generators are ordered by (degree, name); a monomial
is an exponent tuple over that order (odd generators square to zero); within
a degree, monomials are listed in descending lexicographic order of their
exponent tuples, so e.g. the degree-8 basis of a model with generators
a3, b3, z5 reads (a*z, b*z).  Signs are pure Koszul: reordering x past y
costs (-1)^{|x||y|}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .linalg import ONE, ZERO, SparseMatrix, zero_vec

Monomial = tuple  # exponent tuple over the canonical generator order
Polynomial = dict  # Monomial -> Fraction, no zero values


class PresentationError(ValueError):
    """A presentation violates its contract (degrees, homogeneity, d^2)."""


class Generator(NamedTuple):
    name: str
    degree: int


@dataclass(frozen=True)
class Presentation:
    """Free graded-commutative generators with polynomial differentials.

    ``differentials`` and ``aliases`` hold polynomials keyed by exponent
    tuples over the canonical generator order (sorted by degree then name);
    use :func:`normalize_presentation` / the DSL parser to build one.
    """

    name: str
    generators: tuple  # tuple[Generator, ...] in declaration order
    differentials: Mapping  # generator name -> Polynomial (canonical order)
    truncation: int
    space_dim: int
    simply_connected: bool = False
    aliases: tuple = ()  # tuple[(alias_name, Polynomial), ...]

    def canonical_generators(self) -> tuple:
        return tuple(sorted(self.generators, key=lambda g: (g.degree, g.name)))


# ---------------------------------------------------------------- monomials


def mono_degree(m: Monomial, degrees: Sequence[int]) -> int:
    return sum(e * d for e, d in zip(m, degrees))


def mono_mul(m1: Monomial, m2: Monomial, odd: Sequence[bool]):
    """Product of two canonical monomials: (sign, monomial) or None.

    None means an odd generator got squared.  The sign counts transpositions
    of odd factors of m2 moving left past odd factors of m1.
    """
    swaps = 0
    count_after = 0  # odd factors of m1 strictly to the right of the cursor
    for pos in range(len(m1) - 1, -1, -1):
        if odd[pos]:
            e1, e2 = m1[pos], m2[pos]
            if e1 and e2:
                return None
            if e2:
                swaps += count_after
            if e1:
                count_after += 1
    sign = -ONE if swaps % 2 else ONE
    return sign, tuple(a + b for a, b in zip(m1, m2))


def poly_add_scaled(target: Polynomial, src: Polynomial, c: Fraction) -> None:
    if not c:
        return
    for m, v in src.items():
        nv = target.get(m, ZERO) + c * v
        if nv:
            target[m] = nv
        else:
            target.pop(m, None)


def poly_mul(p: Polynomial, q: Polynomial, odd: Sequence[bool]) -> Polynomial:
    out: Polynomial = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            sm = mono_mul(m1, m2, odd)
            if sm is None:
                continue
            s, m = sm
            nv = out.get(m, ZERO) + s * c1 * c2
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
    return out


def mono_name(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------- the DGA


@dataclass(frozen=True)
class Cochain:
    degree: int
    coords: tuple  # tuple[Fraction, ...] over the basis of that degree

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scale(self, c) -> "Cochain":
        c = Fraction(c)
        return Cochain(self.degree, tuple(c * x for x in self.coords))

    def add(self, other: "Cochain") -> "Cochain":
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} != {other.degree}")
        return Cochain(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def sub(self, other: "Cochain") -> "Cochain":
        return self.add(other.scale(-1))


@dataclass(frozen=True)
class Violation:
    axiom: str       # "shape" | "d-squared" | "leibniz" | "associativity" | "unit" | "commutativity"
    location: tuple  # degrees/indices/names identifying the offending tuple
    message: str


@dataclass(frozen=True, eq=False)
class DGA:
    """A finite DGA given by basis names, multiplication table, differentials.

    ``mult`` maps (deg1, idx1, deg2, idx2) to a sparse vector
    ((idx, coeff), ...) in degree deg1+deg2; absent keys mean zero, and every
    pair whose degrees sum past the truncation is absent by construction.
    ``diff[k]`` is the matrix of d : C^k -> C^{k+1} (the top one has 0 rows).
    Instances are immutable; build them with :func:`compile_cdga`,
    :func:`tensor`, or directly from tables in tests.
    """

    name: str
    truncation: int
    basis: tuple  # tuple[tuple[str, ...], ...] indexed by degree 0..N
    mult: Mapping
    diff: tuple  # tuple[SparseMatrix, ...] indexed by degree 0..N
    graded_commutative: bool = True
    unital: bool = True
    simply_connected: bool = False
    space_dim: Optional[int] = None
    presentation: Optional[Presentation] = None
    monomials: Optional[tuple] = None  # per-degree Monomial tuples (compiled models)
    pairs: Optional[tuple] = None      # per-degree (p, i, j) tuples (tensor models)
    factors: Optional[tuple] = None    # (A, B) for tensor models

    def dim(self, k: int) -> int:
        if 0 <= k <= self.truncation:
            return len(self.basis[k])
        return 0

    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis)

    def zero_cochain(self, degree: int) -> Cochain:
        return Cochain(degree, zero_vec(self.dim(degree)))

    def cochain(self, degree: int, coords: Iterable) -> Cochain:
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != self.dim(degree):
            raise ValueError(
                f"degree {degree} has dimension {self.dim(degree)}, got {len(coords)} coordinates")
        return Cochain(degree, coords)

    def basis_cochain(self, degree: int, idx: int) -> Cochain:
        coords = [ZERO] * self.dim(degree)
        coords[idx] = ONE
        return Cochain(degree, tuple(coords))

    def unit(self) -> Cochain:
        if self.dim(0) != 1:
            raise ValueError("degree 0 is not one-dimensional")
        return Cochain(0, (ONE,))

    def mul(self, x: Cochain, y: Cochain) -> Cochain:
        """Product of two cochains; zero above the truncation degree."""
        deg = x.degree + y.degree
        n = self.dim(deg)
        if n == 0:
            return Cochain(deg, ())
        out = [ZERO] * n
        mult = self.mult
        for i1, c1 in enumerate(x.coords):
            if not c1:
                continue
            for i2, c2 in enumerate(y.coords):
                if not c2:
                    continue
                entry = mult.get((x.degree, i1, y.degree, i2))
                if entry:
                    cc = c1 * c2
                    for idx, s in entry:
                        out[idx] += cc * s
        return Cochain(deg, tuple(out))

    def d(self, x: Cochain) -> Cochain:
        k = x.degree
        if not (0 <= k <= self.truncation):
            return Cochain(k + 1, ())
        return Cochain(k + 1, self.diff[k].apply(x.coords))

    def cochain_from_poly(self, poly: Polynomial) -> Cochain:
        """Cochain of a homogeneous polynomial (compiled models only)."""
        if self.monomials is None:
            raise ValueError("not a compiled monomial model")
        if not poly:
            raise ValueError("zero polynomial has no degree; use zero_cochain")
        gens = self.presentation.canonical_generators()
        degrees = [g.degree for g in gens]
        degs = {mono_degree(m, degrees) for m in poly}
        if len(degs) > 1:
            raise ValueError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
        k = degs.pop()
        coords = [ZERO] * self.dim(k)
        if k <= self.truncation:
            index = {m: i for i, m in enumerate(self.monomials[k])}
            for m, c in poly.items():
                coords[index[m]] = c
        return Cochain(k, tuple(coords))

    def render(self, x: Cochain) -> str:
        """Human-readable form of a cochain over the named basis."""
        parts = []
        names = self.basis[x.degree] if 0 <= x.degree <= self.truncation else ()
        for name, c in zip(names, x.coords):
            if not c:
                continue
            if c == 1:
                parts.append(f"+ {name}" if parts else name)
            elif c == -1:
                parts.append(f"- {name}" if parts else f"-{name}")
            else:
                mag = abs(c)
                if parts:
                    parts.append(f"{'+' if c > 0 else '-'} {mag}*{name}")
                else:
                    parts.append(f"{c}*{name}" if c > 0 else f"-{mag}*{name}")
        return " ".join(parts) if parts else "0"

    # ---------------------------------------------------------- validation

    def validate(self) -> list:
        """Check every algebra/complex axiom exhaustively within truncation.

        Returns a list of :class:`Violation`; empty means the tables form a
        genuine (graded-commutative, unital) finite DGA.
        """
        out = []
        n = self.truncation
        if len(self.basis) != n + 1 or len(self.diff) != n + 1:
            out.append(Violation("shape", (), "basis/diff must cover degrees 0..N"))
            return out
        for k in range(n + 1):
            dk = self.diff[k]
            want_rows = self.dim(k + 1)
            if dk.cols != self.dim(k) or dk.rows != want_rows:
                out.append(Violation(
                    "shape", (k,),
                    f"d_{k} is {dk.rows}x{dk.cols}, expected {want_rows}x{self.dim(k)}"))
        for key, entry in self.mult.items():
            k1, i1, k2, i2 = key
            tdeg = k1 + k2
            if tdeg > n:
                out.append(Violation("shape", key, f"product stored above truncation {n}"))
                continue
            if not (0 <= i1 < self.dim(k1) and 0 <= i2 < self.dim(k2)):
                out.append(Violation("shape", key, "basis index out of range"))
                continue
            for idx, _ in entry:
                if not (0 <= idx < self.dim(tdeg)):
                    out.append(Violation(
                        "shape", key, f"product lands at index {idx} outside degree {tdeg}"))
        if out:
            return out

        for k in range(n):
            if not self.diff[k + 1].compose(self.diff[k]).is_zero():
                out.append(Violation(
                    "d-squared", (k,), f"d_{k + 1} o d_{k} is nonzero"))

        if self.unital:
            if self.dim(0) != 1:
                out.append(Violation("unit", (0,), f"degree 0 has dimension {self.dim(0)}"))
            else:
                one = self.unit()
                for k in range(n + 1):
                    for i in range(self.dim(k)):
                        e = self.basis_cochain(k, i)
                        if self.mul(one, e) != e or self.mul(e, one) != e:
                            out.append(Violation(
                                "unit", (k, self.basis[k][i]), "unit law fails"))

        for k1 in range(n + 1):
            for k2 in range(n + 1 - k1):
                lim = k1 + k2
                for i1 in range(self.dim(k1)):
                    x = self.basis_cochain(k1, i1)
                    dx = self.d(x)
                    sign = -ONE if k1 % 2 else ONE
                    for i2 in range(self.dim(k2)):
                        y = self.basis_cochain(k2, i2)
                        # Leibniz (only meaningful when the target survives truncation)
                        if lim + 1 <= n:
                            lhs = self.d(self.mul(x, y))
                            rhs = self.mul(dx, y).add(self.mul(x, self.d(y)).scale(sign))
                            if lhs != rhs:
                                out.append(Violation(
                                    "leibniz", (self.basis[k1][i1], self.basis[k2][i2]),
                                    f"d(x*y) != dx*y + (-1)^{k1} x*dy"))
                        if self.graded_commutative:
                            csign = -ONE if (k1 * k2) % 2 else ONE
                            if self.mul(x, y) != self.mul(y, x).scale(csign):
                                out.append(Violation(
                                    "commutativity",
                                    (self.basis[k1][i1], self.basis[k2][i2]),
                                    f"x*y != (-1)^({k1}*{k2}) y*x"))

        for k1 in range(n + 1):
            for i1 in range(self.dim(k1)):
                x = self.basis_cochain(k1, i1)
                for k2 in range(n + 1 - k1):
                    for i2 in range(self.dim(k2)):
                        y = self.basis_cochain(k2, i2)
                        xy = self.mul(x, y)
                        for k3 in range(n + 1 - k1 - k2):
                            for i3 in range(self.dim(k3)):
                                z = self.basis_cochain(k3, i3)
                                if self.mul(xy, z) != self.mul(x, self.mul(y, z)):
                                    out.append(Violation(
                                        "associativity",
                                        (self.basis[k1][i1], self.basis[k2][i2],
                                         self.basis[k3][i3]),
                                        "(x*y)*z != x*(y*z)"))
        return out


# ---------------------------------------------------------------- compile


def normalize_presentation(
    name: str,
    generators: Sequence[Generator],
    diff_terms: Mapping,
    truncation: int,
    space_dim: Optional[int] = None,
    simply_connected: bool = False,
    alias_terms: Sequence = (),
) -> Presentation:
    """Build a Presentation from symbolic term lists.

    ``diff_terms`` maps a generator name to a list of (coeff, [factor names]);
    ``alias_terms`` is a list of (alias, same term shape).  Terms are
    normalized into canonical-order monomials with Koszul signs, and
    homogeneity of each differential (degree |g|+1) is enforced here.
    """
    seen = set()
    for g in generators:
        if g.name in seen:
            raise PresentationError(f"duplicate generator {g.name}")
        seen.add(g.name)
        if g.degree < 1:
            raise PresentationError(f"generator {g.name} has degree {g.degree}; must be >= 1")
    if truncation < 1:
        raise PresentationError(f"truncation must be >= 1, got {truncation}")
    canon = tuple(sorted(generators, key=lambda g: (g.degree, g.name)))
    order = {g.name: i for i, g in enumerate(canon)}
    degrees = [g.degree for g in canon]
    odd = [g.degree % 2 == 1 for g in canon]

    def poly_of(terms, what: str) -> Polynomial:
        out: Polynomial = {}
        for coeff, factors in terms:
            m = tuple(0 for _ in canon)
            c = Fraction(coeff)
            ok = True
            for f in factors:
                if f not in order:
                    raise PresentationError(f"{what} references unknown generator {f}")
                fm = tuple(1 if i == order[f] else 0 for i in range(len(canon)))
                sm = mono_mul(m, fm, odd)
                if sm is None:
                    ok = False  # odd square: the term is zero
                    break
                s, m = sm
                c *= s
            if not ok or not c:
                continue
            nv = out.get(m, ZERO) + c
            if nv:
                out[m] = nv
            else:
                out.pop(m, None)
        return out

    diffs = {}
    for gname, terms in diff_terms.items():
        if gname not in order:
            raise PresentationError(f"differential given for unknown generator {gname}")
        p = poly_of(terms, f"d {gname}")
        gdeg = degrees[order[gname]]
        for m in p:
            mdeg = mono_degree(m, degrees)
            if mdeg != gdeg + 1:
                raise PresentationError(
                    f"d {gname} must be homogeneous of degree {gdeg + 1}, "
                    f"got a term of degree {mdeg}")
        diffs[gname] = p
    for g in canon:
        diffs.setdefault(g.name, {})

    aliases = []
    for aname, terms in alias_terms:
        p = poly_of(terms, f"alias {aname}")
        degs = {mono_degree(m, degrees) for m in p}
        if len(degs) > 1:
            raise PresentationError(
                f"alias {aname} is not homogeneous: degrees {sorted(degs)}")
        aliases.append((aname, p))

    return Presentation(
        name=name,
        generators=tuple(generators),
        differentials=diffs,
        truncation=truncation,
        space_dim=truncation if space_dim is None else space_dim,
        simply_connected=simply_connected,
        aliases=tuple(aliases),
    )


def compile_cdga(p: Presentation, check: bool = True) -> DGA:
    """Compile a free graded-commutative presentation into explicit tables.

    With ``check=True`` (the default) a presentation whose differential does
    not square to zero within the truncation raises PresentationError, and
    the compiled tables are re-validated.  ``check=False`` builds the tables
    regardless, which is how broken models get a proper violation listing.
    """
    n = p.truncation
    canon = p.canonical_generators()
    degrees = [g.degree for g in canon]
    odd = [g.degree % 2 == 1 for g in canon]
    names = [g.name for g in canon]

    by_degree: list = [[] for _ in range(n + 1)]

    def enum(pos: int, current: list, deg: int):
        if pos == len(canon):
            by_degree[deg].append(tuple(current))
            return
        gdeg = degrees[pos]
        cap = (n - deg) // gdeg
        if odd[pos]:
            cap = min(cap, 1)
        for e in range(cap + 1):
            current.append(e)
            enum(pos + 1, current, deg + e * gdeg)
            current.pop()

    enum(0, [], 0)
    monomials = tuple(tuple(sorted(ms, reverse=True)) for ms in by_degree)
    index = [{m: i for i, m in enumerate(ms)} for ms in monomials]
    basis = tuple(tuple(mono_name(m, names) for m in ms) for ms in monomials)

    mult = {}
    for k1 in range(n + 1):
        for k2 in range(n + 1 - k1):
            tdeg = k1 + k2
            for i1, m1 in enumerate(monomials[k1]):
                for i2, m2 in enumerate(monomials[k2]):
                    sm = mono_mul(m1, m2, odd)
                    if sm is None:
                        continue
                    s, m = sm
                    mult[(k1, i1, k2, i2)] = ((index[tdeg][m], s),)

    dgen = {names[i]: p.differentials.get(names[i], {}) for i in range(len(canon))}
    unit_mono = tuple(0 for _ in canon)
    memo: dict = {unit_mono: {}}

    def d_mono(m: Monomial) -> Polynomial:
        cached = memo.get(m)
        if cached is not None:
            return cached
        i = next(idx for idx, e in enumerate(m) if e)
        g_mono = tuple(1 if j == i else 0 for j in range(len(canon)))
        rest = tuple(e - 1 if j == i else e for j, e in enumerate(m))
        # d(g * rest) = dg * rest + (-1)^{|g|} g * d(rest)
        out: Polynomial = {}
        g_poly = {g_mono: ONE}
        poly_add_scaled(out, poly_mul(dgen[names[i]], {rest: ONE}, odd), ONE)
        sign = -ONE if degrees[i] % 2 else ONE
        poly_add_scaled(out, poly_mul(g_poly, d_mono(rest), odd), sign)
        memo[m] = out
        return out

    diff = []
    for k in range(n + 1):
        data = {}
        target = index[k + 1] if k + 1 <= n else {}
        for j, m in enumerate(monomials[k]):
            for tm, c in d_mono(m).items():
                if tm in target:
                    data[(target[tm], j)] = c
        rows = len(monomials[k + 1]) if k + 1 <= n else 0
        diff.append(SparseMatrix.from_dict(rows, len(monomials[k]), data))
    diff = tuple(diff)

    if check:
        for g in canon:
            dd: Polynomial = {}
            for m, c in dgen[g.name].items():
                poly_add_scaled(dd, d_mono(m), c)
            bad = {m: c for m, c in dd.items() if mono_degree(m, degrees) <= n}
            if bad:
                terms = " + ".join(
                    f"{c}*{mono_name(m, names)}" for m, c in sorted(bad.items(), reverse=True))
                raise PresentationError(f"d^2({g.name}) = {terms} != 0")

    out = DGA(
        name=p.name,
        truncation=n,
        basis=basis,
        mult=mult,
        diff=diff,
        graded_commutative=True,
        unital=True,
        simply_connected=p.simply_connected,
        space_dim=p.space_dim,
        presentation=p,
        monomials=monomials,
    )
    if check:
        violations = out.validate()
        if violations:
            raise PresentationError(
                f"compiled tables violate axioms: {violations[0].message}")
    return out


# ---------------------------------------------------------------- tensor


def tensor(a: DGA, b: DGA, check: bool = True) -> DGA:
    """Tensor product DGA with Koszul signs.

    (x (x) y) * (z (x) w) = (-1)^{|y||z|} xz (x) yw and
    d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy, truncated at N_a + N_b
    (every basis pair survives; truncation inside the factors propagates).
    """
    n = a.truncation + b.truncation
    pairs = []
    basis = []
    pair_index = []
    for deg in range(n + 1):
        ps = []
        names = []
        for p in range(deg + 1):
            q = deg - p
            for i in range(a.dim(p)):
                for j in range(b.dim(q)):
                    ps.append((p, i, j))
                    names.append(f"{a.basis[p][i]}(x){b.basis[q][j]}")
        pairs.append(tuple(ps))
        basis.append(tuple(names))
        pair_index.append({t: i for i, t in enumerate(ps)})

    mult = {}
    for n1 in range(n + 1):
        for n2 in range(n + 1 - n1):
            tdeg = n1 + n2
            tindex = pair_index[tdeg]
            for i1, (p1, a1, b1) in enumerate(pairs[n1]):
                q1 = n1 - p1
                for i2, (p2, a2, b2) in enumerate(pairs[n2]):
                    q2 = n2 - p2
                    left = a.mult.get((p1, a1, p2, a2))
                    if not left:
                        continue
                    right = b.mult.get((q1, b1, q2, b2))
                    if not right:
                        continue
                    sign = -ONE if (q1 * p2) % 2 else ONE
                    entry = []
                    for ia, ca in left:
                        for jb, cb in right:
                            entry.append((tindex[(p1 + p2, ia, jb)], sign * ca * cb))
                    entry.sort()
                    mult[(n1, i1, n2, i2)] = tuple(entry)

    diff = []
    for deg in range(n + 1):
        data = {}
        tindex = pair_index[deg + 1] if deg + 1 <= n else {}
        for col, (p, i, j) in enumerate(pairs[deg]):
            q = deg - p
            if p + 1 <= a.truncation:
                for r, c, v in a.diff[p].entries:
                    if c == i:
                        data[(tindex[(p + 1, r, j)], col)] = data.get(
                            (tindex[(p + 1, r, j)], col), ZERO) + v
            sign = -ONE if p % 2 else ONE
            if q + 1 <= b.truncation:
                for r, c, v in b.diff[q].entries:
                    if c == j:
                        key = (tindex[(p, i, r)], col)
                        data[key] = data.get(key, ZERO) + sign * v
        rows = len(pairs[deg + 1]) if deg + 1 <= n else 0
        diff.append(SparseMatrix.from_dict(rows, len(pairs[deg]), data))

    out = DGA(
        name=f"{a.name}(x){b.name}",
        truncation=n,
        basis=tuple(basis),
        mult=mult,
        diff=tuple(diff),
        graded_commutative=a.graded_commutative and b.graded_commutative,
        unital=a.unital and b.unital,
        simply_connected=a.simply_connected and b.simply_connected,
        space_dim=(a.space_dim or 0) + (b.space_dim or 0),
        pairs=tuple(pairs),
        factors=(a, b),
    )
    if check:
        violations = out.validate()
        if violations:
            raise ValueError(f"tensor product violates axioms: {violations[0].message}")
    return out


def tensor_cochain(t: DGA, x: Cochain, y: Cochain) -> Cochain:
    """The pure tensor x (x) y as a cochain of the tensor model ``t``."""
    if t.pairs is None:
        raise ValueError("not a tensor model")
    deg = x.degree + y.degree
    coords = [ZERO] * t.dim(deg)
    if deg <= t.truncation:
        idx = {tr: i for i, tr in enumerate(t.pairs[deg])}
        for i, cx in enumerate(x.coords):
            if not cx:
                continue
            for j, cy in enumerate(y.coords):
                if cy:
                    coords[idx[(x.degree, i, j)]] = cx * cy
    return Cochain(deg, tuple(coords))
