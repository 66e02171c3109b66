"""Certified bounds for LS-category and topological complexity.

Everything here is normalized ("cat of a point is 1, TC of a point is 1")
and computed inside a truncated model, so the lower bounds are honest
statements about the ring and the recorded certificates replay without any
reference to how they were found.

Lower bounds come from four weight rules on cohomology classes:

  R1  positive classes have category weight >= 1; zero-divisors of the
      self-tensor ring have TC weight >= 1,
  R2  weights add along cup products,
  R3  any class lying in a defined Massey triple product has category
      weight >= 2,
  R4  on an r-connected model (r >= 1), a class u of category weight >= k
      whose degree l satisfies k(r+1) <= l < (k+1)(r+1), in a degree where
      all cup products of positive classes vanish, transfers the weight to
      the zero-divisor 1 (x) u - u (x) 1:  TC weight >= k,

plus the Massey rule on the tensor ring: a defined nonzero triple
<alpha, beta, gamma> of zero-divisors forces

  TC >= wgt(beta) + min(wgt(alpha), wgt(gamma)) + 1 .

A nonzero product of weighted facts with total weight W certifies
cat >= W + 1 (or TC >= W + 1 on the tensor ring); cup-length and
zero-divisors cup-length are the all-weights-one special case.  Upper
bounds are dimensional: cat <= dim + 1 always, cat <= the James bound for
simply connected models, and TC <= 2 cat - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import CohClass, CohomologyRing, KunnethMap
from .linalg import ONE, SparseMatrix, Subspace, kernel
from .massey import massey_triple, scan_triples


def normalize_coords(coords) -> tuple:
    """Projective normalization: scale so the first nonzero entry is 1."""
    for c in coords:
        if c:
            inv = ONE / c
            return tuple(v * inv for v in coords)
    return tuple(coords)


def _normalize_class(cls: CohClass) -> CohClass:
    return CohClass(cls.degree, normalize_coords(cls.coords))


def _class_data(cls: CohClass) -> tuple:
    return (cls.degree, tuple(cls.coords))


@dataclass(frozen=True)
class WeightFact:
    """One weighted class with enough provenance to replay its rule.

    ``cls`` is stored projectively normalized; weights are invariant under
    nonzero scaling, so scalar multiples share one fact.  ``inputs`` is the
    rule-specific evidence: ("basis",), ("bar", base class data),
    ("massey", a, b, c), ("product", key, key) or ("transfer", key, k).
    """

    kind: str  # "cat" on the base ring, "tc" on the self-tensor ring
    cls: CohClass
    weight: int
    rule: str  # "R1" | "R2" | "R3" | "R4-transfer"
    inputs: tuple

    @property
    def key(self) -> tuple:
        return (self.kind, self.cls.degree, self.cls.coords)


def _add_fact(facts: dict, kind: str, cls: CohClass, weight: int,
              rule: str, inputs: tuple):
    nc = _normalize_class(cls)
    if nc.is_zero():
        return None
    fact = WeightFact(kind, nc, weight, rule, inputs)
    old = facts.get(fact.key)
    if old is None or weight > old.weight:
        facts[fact.key] = fact
    return fact.key


# ------------------------------------------------------------ zero-divisors


def bar(kmap: KunnethMap, cls: CohClass) -> CohClass:
    """The basic zero-divisor 1 (x) u - u (x) 1 of a self-tensor ring."""
    if kmap.ha is not kmap.hb:
        raise ValueError("zero-divisors need a self-tensor ring")
    one = kmap.ha.basis_class(0, 0)
    return kmap.cross(one, cls).sub(kmap.cross(cls, one))


def zero_divisor_ideal(kmap: KunnethMap) -> dict:
    """Kernel of the multiplication map per positive degree.

    Degrees above the base truncation have zero target, so everything up
    there is a zero-divisor; that is the honest answer for the truncated
    ring and the chain arithmetic below never leaves the tensor truncation.
    """
    ht, ha = kmap.ht, kmap.ha
    out = {}
    for ell in range(1, ht.truncation + 1):
        n = ht.dim(ell)
        if n == 0:
            continue
        cols = [kmap.diagonal_map(ht.basis_class(ell, i)).coords for i in range(n)]
        out[ell] = kernel(SparseMatrix.from_columns(ha.dim(ell), cols))
    return {ell: sub for ell, sub in out.items() if sub.dim}


def ideal_powers_length(ring: CohomologyRing, ideal: dict) -> int:
    """Largest k with (span of k-fold products of the ideal) nonzero."""
    degs = sorted(d for d, s in ideal.items() if s.dim)
    if not degs:
        return 0
    current = {d: ideal[d] for d in degs}
    k = 1
    while True:
        nxt = {}
        for d1, sub in sorted(current.items()):
            for d2 in degs:
                d = d1 + d2
                if d > ring.truncation:
                    continue
                prod = ring.product_span(d1, sub, d2, ideal[d2])
                if prod.dim:
                    acc = nxt.get(d)
                    nxt[d] = prod if acc is None else acc.add(prod)
        if not nxt:
            return k
        current = nxt
        k += 1


def _chain_search(ring: CohomologyRing, ideal: dict, k: int) -> tuple:
    """A k-tuple of ideal basis classes with nonzero product.

    The powers of an ideal are spanned by products of echelon basis
    vectors, so when the k-th power is nonzero a witness chain exists among
    them; the first one in the fixed search order is returned.
    """
    atoms = []
    for d in sorted(ideal):
        for v in ideal[d].basis_vectors():
            atoms.append(CohClass(d, v))
    if k == 0:
        return (), ring.basis_class(0, 0)
    if not atoms:
        raise ValueError("empty ideal has no witness chains")
    mind = min(a.degree for a in atoms)
    picked = []
    result = []

    def rec(start: int, cls, depth: int) -> bool:
        if depth == k:
            result.append(cls)
            return True
        for i in range(start, len(atoms)):
            a = atoms[i]
            deg = a.degree if cls is None else cls.degree + a.degree
            if deg + (k - depth - 1) * mind > ring.truncation:
                continue
            prod = a if cls is None else ring.cup(cls, a)
            if prod.is_zero():
                continue
            picked.append(a)
            if rec(i, prod, depth + 1):
                return True
            picked.pop()
        return False

    if not rec(0, None, 0):
        raise ValueError(f"no chain of length {k} although the ideal power is nonzero")
    return tuple(picked), result[0]


def cup_chain(ring: CohomologyRing) -> tuple:
    """(cup length, witness chain of classes, their product)."""
    ideal = {d: Subspace.full(ring.dim(d))
             for d in range(1, ring.truncation + 1) if ring.dim(d)}
    k = ideal_powers_length(ring, ideal)
    if k != ring.cup_length():
        raise AssertionError("cup-length disagreement between power computations")
    chain, prod = _chain_search(ring, ideal, k)
    return k, chain, prod


def zero_divisors_cup_length(kmap: KunnethMap) -> tuple:
    """(zcl, witness chain of zero-divisors, their product)."""
    ideal = zero_divisor_ideal(kmap)
    k = ideal_powers_length(kmap.ht, ideal)
    chain, prod = _chain_search(kmap.ht, ideal, k)
    return k, chain, prod


# ------------------------------------------------------------ weight rules


def transfer_weight(ring: CohomologyRing, kmap: KunnethMap,
                    fact: WeightFact, k: int) -> tuple:
    """Try to move a category weight onto the bar of its class (rule R4).

    Returns (fact, None) on success and (None, reason) when a hypothesis
    fails; the reason strings are stable enough to test against.
    """
    if fact.kind != "cat":
        return None, "only category-weight facts transfer"
    if k < 1:
        return None, "transfer needs k >= 1"
    if fact.weight < k:
        return None, f"fact has weight {fact.weight}, below the requested {k}"
    if not ring.dga.simply_connected:
        return None, "model is not declared simply connected"
    r = ring.connectivity()
    if r < 1:
        return None, "transfer needs connectivity at least 1"
    ell = fact.cls.degree
    lo, hi = k * (r + 1), (k + 1) * (r + 1)
    if not (lo <= ell < hi):
        return None, f"degree {ell} misses the window [{lo}, {hi}) for weight {k}"
    for i in range(1, ell):
        if not (ring.dim(i) and ring.dim(ell - i)):
            continue
        span = ring.product_span(i, Subspace.full(ring.dim(i)), ell - i)
        if span.dim:
            return None, (f"cup products H^{i} * H^{ell - i} are nonzero, "
                          f"so degree {ell} is not product-free")
    b = bar(kmap, fact.cls)
    if b.is_zero():
        return None, "bar of the class vanishes"
    return WeightFact("tc", _normalize_class(b), k, "R4-transfer",
                      ("transfer", fact.key, k)), None


def _r2_round(ring: CohomologyRing, facts: dict) -> None:
    # one round of pairwise products; longer chains are explored by the
    # weighted search, this just seeds composite facts (and Massey middles)
    base = [facts[key] for key in sorted(facts)]
    for i, f1 in enumerate(base):
        for f2 in base[i:]:
            deg = f1.cls.degree + f2.cls.degree
            if deg > ring.truncation:
                continue
            prod = ring.cup(f1.cls, f2.cls)
            if prod.is_zero():
                continue
            _add_fact(facts, f1.kind, prod, f1.weight + f2.weight,
                      "R2", ("product", f1.key, f2.key))


def cat_weight_facts(ring: CohomologyRing, massey_cap: int = None) -> dict:
    """Category-weight facts: R1 atoms, R3 Massey values, one R2 round."""
    facts = {}
    for k in range(1, ring.truncation + 1):
        for i in range(ring.dim(k)):
            _add_fact(facts, "cat", ring.basis_class(k, i), 1, "R1", ("basis",))
    for coset in scan_triples(ring, massey_cap):
        if coset.is_nonzero():
            _add_fact(facts, "cat", coset.value, 2, "R3",
                      ("massey", _class_data(coset.alpha),
                       _class_data(coset.beta), _class_data(coset.gamma)))
    _r2_round(ring, facts)
    return facts


def tc_weight_facts(ring: CohomologyRing, kmap: KunnethMap,
                    cat_facts: dict) -> dict:
    """TC-weight facts on the self-tensor ring: bars, transfers, R2 round."""
    facts = {}
    for k in range(1, ring.truncation + 1):
        for i in range(ring.dim(k)):
            e = ring.basis_class(k, i)
            _add_fact(facts, "tc", bar(kmap, e), 1, "R1", ("bar", _class_data(e)))
    for key in sorted(cat_facts):
        f = cat_facts[key]
        for k in range(f.weight, 0, -1):
            transferred, _ = transfer_weight(ring, kmap, f, k)
            if transferred is not None:
                _add_fact(facts, "tc", transferred.cls, transferred.weight,
                          transferred.rule, transferred.inputs)
                break
    _r2_round(kmap.ht, facts)
    return facts


def weighted_lower_bound(ring: CohomologyRing, facts: dict) -> tuple:
    """Heaviest nonzero product of weighted facts.

    Returns (best total weight, chain of fact keys, product class); the
    associated bound is best + 1.  The search allows repeated facts and
    walks atoms in ascending key order, so the outcome is deterministic.
    """
    atoms = [facts[key] for key in sorted(facts)]
    top = ring.top_nonzero_degree()
    best = [0, (), None]

    def rec(start: int, cls: CohClass, weight: int, chain: list) -> None:
        if weight > best[0]:
            best[0], best[1], best[2] = weight, tuple(chain), cls
        for i in range(start, len(atoms)):
            f = atoms[i]
            if cls.degree + f.cls.degree > top:
                continue
            prod = ring.cup(cls, f.cls)
            if prod.is_zero():
                continue
            chain.append(f.key)
            rec(i, prod, weight + f.weight, chain)
            chain.pop()

    for i, f in enumerate(atoms):
        if f.cls.degree > top:
            continue
        rec(i, f.cls, f.weight, [f.key])
    return best[0], best[1], best[2]


def rudyak_lower_bound(kmap: KunnethMap, facts: dict, best: int) -> tuple:
    """Massey rule on the tensor ring, scanning for strict improvements.

    Outer slots run over bar-type facts (plain bars and transferred ones),
    the middle slot over the whole pool, and a triple is only computed when
    wgt(beta) + min(wgt(alpha), wgt(gamma)) + 1 would beat the bound we
    already hold.  Returns (possibly improved bound, certificate or None).
    """
    ht = kmap.ht
    pool = [facts[key] for key in sorted(facts)]
    bars = [f for f in pool if f.inputs and f.inputs[0] in ("bar", "transfer")]
    cert = None
    for beta in pool:
        for ia, alpha in enumerate(bars):
            for gamma in bars[ia:]:  # mirrored triples agree up to sign
                potential = beta.weight + min(alpha.weight, gamma.weight) + 1
                if potential <= best:
                    continue
                target = alpha.cls.degree + beta.cls.degree + gamma.cls.degree - 1
                if target > ht.truncation:
                    continue
                coset = massey_triple(ht, alpha.cls, beta.cls, gamma.cls)
                if coset.is_nonzero():
                    best = potential
                    cert = {"rule": "massey-rudyak", "kind": "tc", "bound": best,
                            "alpha": alpha.key, "beta": beta.key,
                            "gamma": gamma.key}
    return best, cert


# ------------------------------------------------------------ upper bounds


def james_upper(space_dim: int, connectivity: int) -> int:
    """Largest integer strictly below (dim + 1)/(r + 1) + 1."""
    if connectivity < 1:
        raise ValueError("the James bound needs connectivity at least 1")
    q = Fraction(space_dim + 1, connectivity + 1) + 1
    floor = q.numerator // q.denominator
    return floor - 1 if q == floor else floor


# ------------------------------------------------------------------ ledger


@dataclass(frozen=True)
class BoundLedger:
    """Deterministic record of every bound with replayable certificates."""

    model: str
    space_dim: int
    connectivity: int
    dims: tuple
    tensor_dims: tuple
    massey_cap: int
    cup_length: int
    cup_witness: tuple  # ((degree, coords), ...)
    zcl: int
    zcl_witness: tuple
    cat_lower: int
    cat_upper: int
    tc_lower: int
    tc_upper: int
    cat_facts: tuple  # WeightFacts sorted by key
    tc_facts: tuple
    certificates: tuple  # rule dictionaries, see replay_ledger

    def to_dict(self) -> dict:
        """Pure JSON payload (Fractions become strings)."""
        return {
            "model": self.model,
            "space_dim": self.space_dim,
            "connectivity": self.connectivity,
            "dims": list(self.dims),
            "tensor_dims": list(self.tensor_dims),
            "massey_cap": self.massey_cap,
            "cup_length": self.cup_length,
            "cup_witness": _jsonify(self.cup_witness),
            "zcl": self.zcl,
            "zcl_witness": _jsonify(self.zcl_witness),
            "cat": [self.cat_lower, self.cat_upper],
            "tc": [self.tc_lower, self.tc_upper],
            "cat_facts": [_fact_dict(f) for f in self.cat_facts],
            "tc_facts": [_fact_dict(f) for f in self.tc_facts],
            "certificates": _jsonify(self.certificates),
        }


def _jsonify(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [_jsonify(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonify(v) for k, v in x.items()}
    return x


def _fact_dict(f: WeightFact) -> dict:
    return {"kind": f.kind, "degree": f.cls.degree,
            "coords": _jsonify(f.cls.coords), "weight": f.weight,
            "rule": f.rule, "inputs": _jsonify(f.inputs)}


LOWER_RULES = ("cup-chain", "zcl-chain", "weighted-product", "massey-rudyak")
UPPER_RULES = ("dimension", "james", "cat-product")


def build_ledger(ring: CohomologyRing, kmap: KunnethMap,
                 massey_cap: int = None) -> BoundLedger:
    """Compute all bounds for one model and record their certificates."""
    if kmap.ha is not ring or kmap.hb is not ring:
        raise ValueError("the Kunneth map must square the given ring")
    cap = ring.truncation if massey_cap is None else massey_cap
    space_dim = ring.dga.space_dim
    if space_dim is None:
        space_dim = ring.truncation
    conn = ring.connectivity()
    certs = []

    cl, cwit, _ = cup_chain(ring)
    certs.append({"rule": "cup-chain", "kind": "cat", "bound": cl + 1,
                  "chain": tuple(_class_data(c) for c in cwit)})
    cat_facts = cat_weight_facts(ring, cap)
    wcat, cat_chain, cat_prod = weighted_lower_bound(ring, cat_facts)
    if cat_chain:
        certs.append({"rule": "weighted-product", "kind": "cat",
                      "bound": wcat + 1, "factors": cat_chain,
                      "product": _class_data(cat_prod)})
    cat_lower = max(cl + 1, wcat + 1)

    cat_upper = space_dim + 1
    certs.append({"rule": "dimension", "kind": "cat", "bound": cat_upper})
    if ring.dga.simply_connected and conn >= 1:
        j = james_upper(space_dim, conn)
        certs.append({"rule": "james", "kind": "cat", "bound": j})
        cat_upper = min(cat_upper, j)

    zk, zwit, _ = zero_divisors_cup_length(kmap)
    certs.append({"rule": "zcl-chain", "kind": "tc", "bound": zk + 1,
                  "chain": tuple(_class_data(c) for c in zwit)})
    tc_facts = tc_weight_facts(ring, kmap, cat_facts)
    wtc, tc_chain, tc_prod = weighted_lower_bound(kmap.ht, tc_facts)
    if tc_chain:
        certs.append({"rule": "weighted-product", "kind": "tc",
                      "bound": wtc + 1, "factors": tc_chain,
                      "product": _class_data(tc_prod)})
    tc_lower = max(zk + 1, wtc + 1)
    tc_lower, rud_cert = rudyak_lower_bound(kmap, tc_facts, tc_lower)
    if rud_cert is not None:
        certs.append(rud_cert)

    tc_upper = 2 * cat_upper - 1
    certs.append({"rule": "cat-product", "kind": "tc", "bound": tc_upper,
                  "cat_upper": cat_upper})

    if cat_lower > cat_upper:
        raise ValueError(f"inconsistent category bounds [{cat_lower}, {cat_upper}]")
    if tc_lower > tc_upper:
        raise ValueError(f"inconsistent TC bounds [{tc_lower}, {tc_upper}]")

    return BoundLedger(
        model=ring.dga.name,
        space_dim=space_dim,
        connectivity=conn,
        dims=ring.dims(),
        tensor_dims=kmap.ht.dims(),
        massey_cap=cap,
        cup_length=cl,
        cup_witness=tuple(_class_data(c) for c in cwit),
        zcl=zk,
        zcl_witness=tuple(_class_data(c) for c in zwit),
        cat_lower=cat_lower,
        cat_upper=cat_upper,
        tc_lower=tc_lower,
        tc_upper=tc_upper,
        cat_facts=tuple(cat_facts[key] for key in sorted(cat_facts)),
        tc_facts=tuple(tc_facts[key] for key in sorted(tc_facts)),
        certificates=tuple(certs),
    )


def replay_ledger(ledger: BoundLedger, ring: CohomologyRing,
                  kmap: KunnethMap) -> bool:
    """Re-execute every fact and certificate; raise on any mismatch.

    This is the independent acceptance path for a ledger: nothing from the
    original search is trusted, each weight is rebuilt from its recorded
    rule and each certificate's product or triple is recomputed.
    """
    ht = kmap.ht
    fact_by_key = {}
    for f in ledger.cat_facts + ledger.tc_facts:
        fact_by_key[f.key] = f

    def ring_of(kind: str) -> CohomologyRing:
        return ring if kind == "cat" else ht

    verified = set()

    def fail(f, msg):
        raise ValueError(f"fact {f.key} failed replay: {msg}")

    def verify_fact(f: WeightFact) -> None:
        if f.key in verified:
            return
        rg = ring_of(f.kind)
        if f.cls.is_zero() or f.cls.degree < 1:
            fail(f, "class is zero or of degree 0")
        tag = f.inputs[0] if f.inputs else None
        if f.rule == "R1" and tag == "basis":
            if f.kind != "cat" or f.weight != 1:
                fail(f, "R1 basis facts are category weight 1")
        elif f.rule == "R1" and tag == "bar":
            deg, coords = f.inputs[1]
            b = bar(kmap, CohClass(deg, coords))
            if _normalize_class(b).coords != f.cls.coords or f.weight != 1:
                fail(f, "bar does not reproduce the recorded class at weight 1")
            if not kmap.diagonal_map(f.cls).is_zero():
                fail(f, "recorded class is not a zero-divisor")
        elif f.rule == "R3" and tag == "massey":
            classes = [CohClass(d, c) for d, c in f.inputs[1:]]
            coset = massey_triple(rg, *classes)
            if not coset.is_nonzero():
                fail(f, "Massey triple is not defined and nonzero")
            if _normalize_class(coset.value).coords != f.cls.coords:
                fail(f, "Massey value differs from the recorded class")
            if f.weight != 2:
                fail(f, "R3 facts carry weight exactly 2")
        elif f.rule == "R2" and tag == "product":
            f1 = fact_by_key.get(f.inputs[1])
            f2 = fact_by_key.get(f.inputs[2])
            if f1 is None or f2 is None:
                fail(f, "product inputs are not in the fact pool")
            verify_fact(f1)
            verify_fact(f2)
            prod = rg.cup(f1.cls, f2.cls)
            if _normalize_class(prod).coords != f.cls.coords:
                fail(f, "product differs from the recorded class")
            if f.weight != f1.weight + f2.weight:
                fail(f, "product weight is not the sum of its factors")
        elif f.rule == "R4-transfer" and tag == "transfer":
            base = fact_by_key.get(f.inputs[1])
            if base is None:
                fail(f, "transfer input is not in the fact pool")
            verify_fact(base)
            transferred, reason = transfer_weight(ring, kmap, base, f.inputs[2])
            if transferred is None:
                fail(f, f"transfer hypotheses fail on replay: {reason}")
            if transferred.cls.coords != f.cls.coords or transferred.weight != f.weight:
                fail(f, "transfer reproduces a different fact")
        else:
            fail(f, f"unknown rule/evidence combination {f.rule}/{tag}")
        verified.add(f.key)

    for f in ledger.cat_facts + ledger.tc_facts:
        verify_fact(f)

    def fold_chain(rg: CohomologyRing, chain) -> CohClass:
        out = rg.basis_class(0, 0)
        for deg, coords in chain:
            out = rg.cup(out, CohClass(deg, coords))
        return out

    lower = {"cat": [], "tc": []}
    upper = {"cat": [], "tc": []}
    for cert in ledger.certificates:
        rule, kind, bound = cert["rule"], cert["kind"], cert["bound"]
        if rule == "cup-chain":
            prod = fold_chain(ring, cert["chain"])
            if prod.is_zero() or bound != len(cert["chain"]) + 1:
                raise ValueError("cup-chain certificate failed replay")
            if len(cert["chain"]) != ledger.cup_length:
                raise ValueError("cup-chain length disagrees with the ledger")
        elif rule == "zcl-chain":
            for deg, coords in cert["chain"]:
                if not kmap.diagonal_map(CohClass(deg, coords)).is_zero():
                    raise ValueError("zcl-chain factor is not a zero-divisor")
            prod = fold_chain(ht, cert["chain"])
            if prod.is_zero() or bound != len(cert["chain"]) + 1:
                raise ValueError("zcl-chain certificate failed replay")
            if len(cert["chain"]) != ledger.zcl:
                raise ValueError("zcl-chain length disagrees with the ledger")
        elif rule == "weighted-product":
            facts = [fact_by_key[k] for k in cert["factors"]]
            rg = ring_of(kind)
            prod = fold_chain(rg, [_class_data(f.cls) for f in facts])
            if prod.is_zero():
                raise ValueError("weighted product vanished on replay")
            if _class_data(prod) != tuple(cert["product"]):
                raise ValueError("weighted product differs from the record")
            if bound != sum(f.weight for f in facts) + 1:
                raise ValueError("weighted bound does not match the weights")
        elif rule == "massey-rudyak":
            fa = fact_by_key[cert["alpha"]]
            fb = fact_by_key[cert["beta"]]
            fg = fact_by_key[cert["gamma"]]
            coset = massey_triple(ht, fa.cls, fb.cls, fg.cls)
            if not coset.is_nonzero():
                raise ValueError("Massey certificate triple vanished on replay")
            if bound != fb.weight + min(fa.weight, fg.weight) + 1:
                raise ValueError("Massey bound does not match the weights")
        elif rule == "dimension":
            if bound != ledger.space_dim + 1:
                raise ValueError("dimension certificate failed replay")
        elif rule == "james":
            if ring.connectivity() != ledger.connectivity:
                raise ValueError("connectivity changed under replay")
            if bound != james_upper(ledger.space_dim, ledger.connectivity):
                raise ValueError("James certificate failed replay")
        elif rule == "cat-product":
            if cert["cat_upper"] != ledger.cat_upper or bound != 2 * ledger.cat_upper - 1:
                raise ValueError("cat-product certificate failed replay")
        else:
            raise ValueError(f"unknown certificate rule {rule!r}")
        (lower if rule in LOWER_RULES else upper)[kind].append(bound)

    if max(lower["cat"]) != ledger.cat_lower or max(lower["tc"]) != ledger.tc_lower:
        raise ValueError("replayed lower bounds disagree with the ledger")
    if min(upper["cat"]) != ledger.cat_upper or min(upper["tc"]) != ledger.tc_upper:
        raise ValueError("replayed upper bounds disagree with the ledger")
    return True
