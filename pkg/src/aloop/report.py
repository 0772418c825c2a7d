"""Aggregate loop analysis into a JSON-native report."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

from .affine import (DEFAULT_BUDGET, check_factor_identities, circle_loop, find_affine_structure,
                     no_regular_ea2_in_mlt)
from .errors import AlgebraError
from .lie import algebra_from_loop, check_axioms, check_premedial, series
from .loops import (Check, LoopTable, associativity_witness, check_aaip, check_j_relations,
                    check_p_identities, is_automorphic, is_power_of_two, power_structure)
from .structure import derived_series, is_simple, minimal_normal_subloops, parity_decomposition

SCHEMA = 1


def plain(value: Any) -> Any:
    """Convert tuples, Checks and int-keyed dicts into JSON-native values."""
    if isinstance(value, Check):
        return {"ok": value.ok, "witness": plain(value.witness)}
    if isinstance(value, (tuple, list)):
        return [plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, frozenset):
        return sorted(plain(v) for v in value)
    return value


@dataclass
class AnalysisReport:
    fields: dict
    timings: dict | None = field(default=None)

    def to_dict(self) -> dict:
        return {"schema": SCHEMA, **self.fields, "timings": self.timings}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        data = json.loads(text)
        if data.pop("schema", None) != SCHEMA:
            raise ValueError("unsupported report schema")
        timings = data.pop("timings", None)
        return cls(data, timings)

    def to_text(self) -> str:
        return format_text(self.to_dict())


def format_text(d: dict) -> str:
    """Indented ``key: value`` lines; None prints as '-'."""
    return "".join(_text_lines(d, ""))


def _text_lines(d: dict, indent: str):
    for k, v in d.items():
        if isinstance(v, dict):
            yield f"{indent}{k}:\n"
            yield from _text_lines(v, indent + "  ")
        else:
            yield f"{indent}{k}: {_scalar(v)}\n"


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return json.dumps(v)
    return str(v)


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.spent: dict[str, float] = {}

    @contextmanager
    def __call__(self, name: str):
        start = time.perf_counter()
        yield
        if self.enabled:
            self.spent[name] = round(time.perf_counter() - start, 6)

    def result(self):
        return self.spent if self.enabled else None


def affine_section(Q: LoopTable, seed: int = 0, budget: int = DEFAULT_BUDGET,
                   prefer: str = "mlt") -> dict | None:
    """Affine coordinates and the circle-loop checks; None unless |Q| is a
    power of two."""
    if not is_power_of_two(Q.n):
        return None
    S = find_affine_structure(Q, seed, budget, prefer)
    if S is not None and S.inside_mlt:
        search = "found"
    elif S is not None and prefer == "labels":
        search = "skipped"
    else:
        absent = no_regular_ea2_in_mlt(Q)
        search = "proven-absent" if absent else "not-found" if absent is False else "unknown"
    if S is None:
        return {"found": False, "tier": None, "mlt_search": search, "basis_size": None,
                "basis": None, "attempts": None, "budget": budget, "prefer": prefer,
                "factor_identities": None, "circle": None}
    circ = circle_loop(Q, S)
    names = ("isomorphism", "linear_h", "inner_factorization", "inner_groups_equal", "h_commutation")
    return {
        "found": True,
        "tier": "mlt" if S.inside_mlt else "label-xor",
        "mlt_search": search,
        "basis_size": S.dim,
        "basis": list(S.basis),
        "attempts": S.attempts,
        "budget": budget,
        "prefer": prefer,
        "factor_identities": plain(check_factor_identities(Q, S)),
        "circle": {name: plain(getattr(circ, name)) for name in names},
        "_structure": S,
    }


def lie_section(Q: LoopTable, structure, seed: int = 0) -> dict:
    try:
        A = algebra_from_loop(Q, structure, seed)
    except AlgebraError as exc:
        return {"extracted": False, "error": str(exc), "dim": None, "lower_central": None,
                "jacobi": None, "premedial": None, "nilpotency_class": None}
    s = series(A)
    return {
        "extracted": True,
        "error": None,
        "dim": A.dim,
        "lower_central": list(s.lower_central),
        "jacobi": bool(check_axioms(A, seed).jacobi),
        "premedial": bool(check_premedial(A)),
        "nilpotency_class": s.nilpotency_class,
    }


def analyze(Q: LoopTable, seed: int = 0, timings: bool = False,
            budget: int = DEFAULT_BUDGET, prefer: str = "mlt") -> AnalysisReport:
    clock = _Clock(timings)
    f: dict[str, Any] = {"order": Q.n, "is_loop": True, "seed": seed}
    with clock("basic"):
        f["is_commutative"] = Q.commutative
        aw = associativity_witness(Q)
        f["is_associative"] = aw is None
        f["associativity_witness"] = plain(aw)
    with clock("automorphic"):
        auto = is_automorphic(Q)
        f["is_automorphic"] = auto.ok
        f["automorphic_witness"] = plain(auto.witness)
    with clock("powers"):
        ps = power_structure(Q)
        f["power_associative"] = ps.power_associative
        f["power_witness"] = plain(ps.witness)
        f["exponent"] = ps.exponent
        f["order_histogram"] = [[o, c] for o, c in ps.histogram().items()] if ps.orders else None
    with clock("identities"):
        has_inverse = Q.inverse is not None
        f["aaip"] = plain(check_aaip(Q)) if has_inverse else None
        f["p_identities"] = plain(check_p_identities(Q)) if has_inverse else None
        if has_inverse:
            j = check_j_relations(Q)
            f["j_relations"] = {"normalizes_mlt": plain(j.normalizes_mlt),
                                "centralizes_inn": plain(j.centralizes_inn),
                                "conj_identity": plain(j.conj_identity)}
        else:
            f["j_relations"] = None
    with clock("structure"):
        ds = derived_series(Q)
        f["solvable"] = ds.solvable
        f["derived_series"] = list(ds.sizes)
        f["simple"] = is_simple(Q)
        f["minimal_normal_sizes"] = [m.size for m in minimal_normal_subloops(Q)]
        if ps.power_associative:
            pd = parity_decomposition(Q)
            f["parity"] = {"sizes": [pd.odd.size, pd.even.size],
                           "direct_product": pd.is_internal_direct_product,
                           "witness": plain(pd.witness)}
        else:
            f["parity"] = None
    with clock("affine"):
        aff = affine_section(Q, seed, budget, prefer)
        structure = aff.pop("_structure", None) if aff else None
        f["affine"] = aff
    with clock("lie"):
        lie_ok = (structure is not None and Q.commutative and auto.ok
                  and ps.exponent is not None and ps.exponent <= 2)
        f["lie"] = lie_section(Q, structure, seed) if lie_ok else None
    return AnalysisReport(f, clock.result())
