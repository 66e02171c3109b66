"""Deterministic reports: one payload shape, two renderings.

A payload always carries the same six top-level keys -- model, cohomology,
massey, zcl, weights, ledger -- with None for anything that was not
computed.  All leaves are JSON-native (rationals become strings), the JSON
rendering sorts keys, and nothing in a payload depends on the environment,
so equal inputs give byte-identical output.
"""

from __future__ import annotations

import json

from .bounds import BoundLedger, _fact_dict, _jsonify, zero_divisors_cup_length
from .cohomology import CohClass, CohomologyRing, KunnethMap
from .massey import MasseyCoset, scan_triples

PAYLOAD_KEYS = ("model", "cohomology", "massey", "zcl", "weights", "ledger")


def _class_json(cls: CohClass) -> list:
    return [cls.degree, _jsonify(tuple(cls.coords))]


def model_section(ring: CohomologyRing) -> dict:
    dga = ring.dga
    return {
        "name": dga.name,
        "truncation": dga.truncation,
        "space_dim": dga.space_dim,
        "simply_connected": dga.simply_connected,
        "total_dim": dga.total_dim(),
    }


def cohomology_section(ring: CohomologyRing) -> dict:
    classes = {}
    p = ring.dga.presentation
    if p is not None:
        for name in [a for a, _ in p.aliases] + [g.name for g in p.generators]:
            try:
                classes[name] = ring.named_class(name)
            except ValueError:
                continue  # generators with nonzero differential have no class
    return {
        "dims": list(ring.dims()),
        "connectivity": ring.connectivity(),
        "cup_length": ring.cup_length(),
        "top_degree": ring.top_nonzero_degree(),
        "basis": {str(k): [ring.class_name(k, i) for i in range(ring.dim(k))]
                  for k in range(ring.truncation + 1) if ring.dim(k)},
        "named_classes": {n: _class_json(c) for n, c in classes.items()},
        "ring_table": _ring_table(ring, classes),
    }


def _ring_table(ring: CohomologyRing, classes: dict) -> list:
    """Pairwise products of the named classes, flagging truncation losses.

    ``truncated`` marks pairs whose product degree falls outside the model
    window: the zero recorded there is forced by the truncation, not by the
    ring, so ``value`` is left as None rather than claiming a vanishing.
    """
    table = []
    for left in sorted(classes):
        for right in sorted(classes):
            prod, truncated = ring.cup_checked(classes[left], classes[right])
            table.append({
                "left": left,
                "right": right,
                "degree": classes[left].degree + classes[right].degree,
                "value": None if truncated else _class_json(prod),
                "truncated": truncated,
            })
    return table


def massey_entry(coset: MasseyCoset, label: str) -> dict:
    entry = {
        "label": label,
        "alpha": _class_json(coset.alpha),
        "beta": _class_json(coset.beta),
        "gamma": _class_json(coset.gamma),
        "defined": coset.defined,
        "obstruction": coset.obstruction,
        "value": None,
        "canonical": None,
        "indeterminacy_dim": None,
        "nonzero": None,
    }
    if coset.defined:
        entry["value"] = _class_json(coset.value)
        entry["canonical"] = _class_json(coset.canonical)
        entry["indeterminacy_dim"] = coset.indeterminacy.dim
        entry["nonzero"] = coset.is_nonzero()
    return entry


def massey_section(ring: CohomologyRing, max_degree: int = None) -> list:
    out = []
    for coset in scan_triples(ring, max_degree):
        label = "<{}, {}, {}>".format(
            ring.class_name(coset.alpha.degree, coset.alpha.coords.index(1)),
            ring.class_name(coset.beta.degree, coset.beta.coords.index(1)),
            ring.class_name(coset.gamma.degree, coset.gamma.coords.index(1)))
        out.append(massey_entry(coset, label))
    return out


def zcl_section(kmap: KunnethMap) -> dict:
    k, chain, prod = zero_divisors_cup_length(kmap)
    return {
        "zcl": k,
        "witness": [_class_json(c) for c in chain],
        "product": _class_json(prod),
    }


def weights_section(ledger: BoundLedger) -> dict:
    return {
        "cat": [_fact_dict(f) for f in ledger.cat_facts],
        "tc": [_fact_dict(f) for f in ledger.tc_facts],
    }


def ledger_section(ledger: BoundLedger) -> dict:
    full = ledger.to_dict()
    return {k: v for k, v in full.items() if k not in ("cat_facts", "tc_facts")}


def build_payload(ring: CohomologyRing, *, massey=None, zcl=None,
                  weights=None, ledger=None) -> dict:
    return {
        "model": model_section(ring),
        "cohomology": cohomology_section(ring),
        "massey": massey,
        "zcl": zcl,
        "weights": weights,
        "ledger": ledger,
    }


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


_LOWER = ("cup-chain", "zcl-chain", "weighted-product", "massey-rudyak")


def render_text(payload: dict) -> str:
    lines = []
    m = payload["model"]
    if m is not None:
        sc = "simply connected" if m["simply_connected"] else "not simply connected"
        sd = m["space_dim"] if m["space_dim"] is not None else "unknown"
        lines.append(f"model {m['name']}: truncation {m['truncation']}, "
                     f"space dimension {sd}, {sc}")
    h = payload["cohomology"]
    if h is not None:
        lines.append("H^* dimensions: " + " ".join(str(d) for d in h["dims"]))
        lines.append(f"connectivity {h['connectivity']}, "
                     f"cup length {h['cup_length']}, "
                     f"top degree {h['top_degree']}")
        if h["named_classes"]:
            names = ", ".join(f"{n} (degree {d[0]})"
                              for n, d in sorted(h["named_classes"].items()))
            lines.append("named classes: " + names)
            table = h["ring_table"]
            nz = [e for e in table if e["value"] is not None
                  and any(c != "0" for c in e["value"][1])]
            lines.append("nonzero named products: "
                         + (", ".join(f"{e['left']}*{e['right']}" for e in nz)
                            if nz else "none"))
            hidden = sum(1 for e in table if e["truncated"])
            if hidden:
                lines.append(f"  ({hidden} product(s) land above the "
                             "truncation; their vanishing is not certified)")
    if payload["massey"] is not None:
        lines.append(f"Massey triple products: {len(payload['massey'])}")
        for e in payload["massey"]:
            if not e["defined"]:
                lines.append(f"  {e['label']}: not defined ({e['obstruction']})")
            elif e["nonzero"]:
                lines.append(f"  {e['label']}: defined and nonzero in degree "
                             f"{e['value'][0]}, indeterminacy dimension "
                             f"{e['indeterminacy_dim']}")
            else:
                lines.append(f"  {e['label']}: defined, contains zero")
    z = payload["zcl"]
    if z is not None:
        lines.append(f"zero-divisors cup length {z['zcl']} "
                     f"(witness chain of {len(z['witness'])})")
    w = payload["weights"]
    if w is not None:
        for kind, title in (("cat", "category"), ("tc", "TC")):
            facts = w[kind]
            top = max((f["weight"] for f in facts), default=0)
            lines.append(f"{title} weight facts: {len(facts)} (max weight {top})")
    led = payload["ledger"]
    if led is not None:
        lines.append(f"cup length {led['cup_length']}, zcl {led['zcl']}")
        lines.append(f"cat lower {led['cat'][0]}, cat upper {led['cat'][1]}")
        lines.append(f"TC lower {led['tc'][0]}, TC upper {led['tc'][1]}")
        lines.append("certificates:")
        for c in led["certificates"]:
            lines.append(f"  {c['rule']} -> {c['kind']} "
                         f"{'>=' if c['rule'] in _LOWER else '<='} {c['bound']}")
    return "\n".join(lines) + "\n"
