"""
Bundled knots with their expected invariant values.

The manifest ``data/corpus.json`` lists, per knot, its input files, the
expected values with their unit groups and where each came from.  Inputs are
``.pres``, ``.braid`` and ``.rep`` files in the same directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .braid import VirtualBraid, parse_braid
from .errors import InputError
from .groupword import Representation, parse_representation
from .laurent import LaurentPoly, UnitGroup, equal_up_to_units, parse_poly
from .presentation import Presentation, delta_ell, parse_presentation

PROVENANCE = ("paper-given-input", "derived-input")


@dataclass(frozen=True)
class Expected:
    value: LaurentPoly
    units: UnitGroup
    source: str

    def matches(self, f: LaurentPoly) -> bool:
        return equal_up_to_units(f, self.value, self.units)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    title: str
    provenance: str
    presentations: Tuple[Presentation, ...] = ()
    braid: Optional[VirtualBraid] = None
    braid_provenance: Optional[str] = None
    representation: Optional[Representation] = None
    expected: Dict[str, Expected] = field(default_factory=dict)
    bounds: Dict[str, int] = field(default_factory=dict)
    single_component: Optional[bool] = None
    asymmetric: Optional[bool] = None
    paper_stated: Dict[str, LaurentPoly] = field(default_factory=dict)
    notes: str = ""

    @property
    def inputs(self) -> List[object]:
        return list(self.presentations) + ([self.braid] if self.braid else [])


def read_text(name: str) -> str:
    return resources.files(__package__).joinpath("data").joinpath(name).read_text()


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("#", 1)[0] for line in text.splitlines())


def load_braid_text(text: str) -> VirtualBraid:
    return parse_braid(_strip_comments(text))


def _entry(raw: dict) -> CorpusEntry:
    prov = raw["provenance"]
    if prov not in PROVENANCE:
        raise InputError(f"corpus entry {raw['name']}: bad provenance {prov!r}")
    expected = {}
    for key, e in raw.get("expected", {}).items():
        p = int(e.get("p", 0))
        expected[key] = Expected(parse_poly(e["value"], p), UnitGroup.from_string(e["units"]), e["source"])
    pres = tuple(parse_presentation(read_text(f), f.rsplit(".", 1)[0]) for f in raw.get("presentations", ()))
    braid = load_braid_text(read_text(raw["braid"])) if raw.get("braid") else None
    rep = parse_representation(read_text(raw["representation"])) if raw.get("representation") else None
    return CorpusEntry(
        name=raw["name"],
        title=raw.get("title", raw["name"]),
        provenance=prov,
        presentations=pres,
        braid=braid,
        braid_provenance=raw.get("braid_provenance", prov if braid else None),
        representation=rep,
        expected=expected,
        bounds=dict(raw.get("bounds", {})),
        single_component=raw.get("single_component"),
        asymmetric=raw.get("asymmetric"),
        paper_stated={k: parse_poly(v) for k, v in raw.get("paper_stated", {}).items()},
        notes=raw.get("notes", ""),
    )


@lru_cache(maxsize=1)
def entries() -> Tuple[CorpusEntry, ...]:
    data = json.loads(read_text("corpus.json"))
    return tuple(_entry(raw) for raw in data["entries"])


def names() -> List[str]:
    return [e.name for e in entries()]


def lookup(name: str) -> CorpusEntry:
    for e in entries():
        if e.name == name:
            return e
    raise InputError(f"unknown corpus entry {name!r}; known: {', '.join(names())}")


# replay


@dataclass(frozen=True)
class ReplayLine:
    entry: str
    check: str
    passed: bool
    detail: str = ""

    def to_text(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail else ""
        return f"{mark}  {self.entry:8s} {self.check}{tail}"


def replay(entry: CorpusEntry) -> List[ReplayLine]:
    """Recompute every expected value of an entry through the pipelines."""
    from . import invariants as inv
    from .repsearch import extend_by_definitions

    out: List[ReplayLine] = []

    def add(check: str, ok: bool, got: Optional[LaurentPoly] = None) -> None:
        out.append(ReplayLine(entry.name, check, bool(ok), "" if ok or got is None else f"got {got}"))

    ex = entry.expected
    results: Dict[str, inv.InvariantResult] = {}
    for pres in entry.presentations:
        label = pres.name or entry.name
        if "H" in ex:
            r = inv.h_poly(pres)
            results.setdefault("H", r)
            add(f"H [{label}]", ex["H"].matches(r.value), r.value)
            d0 = delta_ell(pres, 0).delta
            add(f"Delta0 [{label}]", ex["H"].matches(d0), d0)
        if "Delta1" in ex:
            d1 = delta_ell(pres, 1).delta
            add(f"Delta1 [{label}]", ex["Delta1"].matches(d1), d1)
        if "Hrho" in ex and entry.representation is not None:
            rho = extend_by_definitions(pres, entry.representation)
            r = inv.twisted_h(pres, rho)
            results.setdefault("Hrho", r)
            add(f"Hrho [{label}]", ex["Hrho"].matches(r.value), r.value)
        if entry.asymmetric is not None:
            rep = inv.classicality_report(pres, entry.single_component)
            d1 = rep.delta1
            asym = d1 is not None and not d1.is_zero() and not inv.is_symmetric(d1)
            add(f"Delta1 asymmetric [{label}]", asym == entry.asymmetric)
    if entry.braid is not None:
        b = entry.braid
        if "H" in ex:
            r = inv.h_poly(b)
            results.setdefault("H", r)
            add("H [braid]", ex["H"].matches(r.value), r.value)
        if "Hhat" in ex:
            r = inv.normalized_h(b)
            results["Hhat"] = r
            add("Hhat [braid]", ex["Hhat"].matches(r.value), r.value)
    if "G" in ex and "H" in results:
        g = inv.generalized_g(results["H"])
        add("G = H(s,t,1)", ex["G"].matches(g), g)
    for key, want in entry.bounds.items():
        r = results.get(key)
        if r is None:
            add(f"bound from {key}", False)
            continue
        got = inv.crossing_bounds(r).best
        out.append(ReplayLine(entry.name, f"v(K) >= {want} from {key}", got == want, "" if got == want else f"got {got}"))
    return out
